//! The twelve ground-truth LTLf patterns and their bundled bench manifest.

use occlearn::words::Alphabet;

/// (family, formula) in the parser's grammar.
pub const PATTERNS: [(&str, &str); 12] = [
    ("absence", "G !a0"),
    ("absence", "G (a1 -> G !a0)"),
    ("absence", "F a1 -> (!a0 U a1)"),
    ("existence", "F a0"),
    ("existence", "G !a0 | F (a0 & F a1)"),
    ("existence", "G (a0 & (!a1 -> (!a1 U (a2 & !a1))))"),
    ("universality", "G a0"),
    ("universality", "G (a1 -> G a0)"),
    ("universality", "F a1 -> (a0 U a1)"),
    ("disjunction", "F a2 | (F a0 | F a1)"),
    ("disjunction", "(G !a0 | F (a0 & F a1)) | (G !a3 | F (a2 & F a3))"),
    (
        "disjunction",
        "G (a0 & (!a1 -> (!a1 U (a2 & !a1)))) | G (a3 & (!a4 -> (!a4 U (a5 & !a4))))",
    ),
];

/// The smallest alphabet a0..ak covering every atom of `formula`.
pub fn pattern_alphabet(formula: &str) -> Alphabet {
    let mut max = 1;
    let bytes = formula.as_bytes();
    for (i, _) in formula.match_indices('a') {
        let digits: String = formula[i + 1..].chars().take_while(char::is_ascii_digit).collect();
        let standalone = i == 0 || !bytes[i - 1].is_ascii_alphanumeric();
        if standalone {
            if let Ok(k) = digits.parse::<usize>() {
                max = max.max(k);
            }
        }
    }
    Alphabet::new((0..=max).map(|k| format!("a{k}"))).expect("distinct names")
}

pub const BUNDLED_MANIFEST: &str = include_str!("../manifests/patterns.manifest");

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifest::{Manifest, Source};
    use occlearn::ltlf::LtlfFormula;

    #[test]
    fn patterns_parse_over_their_alphabets() {
        for (_, p) in PATTERNS {
            let sigma = pattern_alphabet(p);
            LtlfFormula::parse(&sigma, p).unwrap();
        }
        assert_eq!(pattern_alphabet("G !a0").len(), 2);
        assert_eq!(pattern_alphabet(PATTERNS[11].1).len(), 6);
    }

    #[test]
    fn bundled_manifest_lists_all_patterns() {
        let m = Manifest::parse(BUNDLED_MANIFEST, std::path::Path::new(".")).unwrap();
        let formulas: Vec<String> = m
            .instances
            .iter()
            .filter_map(|i| match &i.source {
                Source::Formula(f) => Some(f.clone()),
                _ => None,
            })
            .collect();
        assert_eq!(formulas, PATTERNS.iter().map(|(_, p)| p.to_string()).collect::<Vec<_>>());
    }
}
