//! Brute-force minimality checks by exhaustive enumeration of small models.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::dfa::Dfa;
use crate::ltlf::{LtlfFormula, Op};
use crate::words::{Alphabet, Sample};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail(String),
    /// The instance is too large to enumerate.
    Skipped,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail(_) => "fail",
            Verdict::Skipped => "skipped",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Fail(why) => write!(f, "fail: {why}"),
            v => f.write_str(v.label()),
        }
    }
}

/// Number of complete DFAs with exactly `n` states over `k` symbols.
pub fn dfa_count(n: usize, k: usize) -> u128 {
    (n as u128).saturating_pow((n * k) as u32).saturating_mul(1u128 << n.min(127))
}

/// Every complete DFA with exactly `n` states, state 0 initial.
pub fn dfas_with_states(alphabet: &Alphabet, n: usize) -> impl Iterator<Item = Dfa> + '_ {
    let k = alphabet.len();
    let cells = n * k;
    let mut delta = vec![0usize; cells];
    let mut finals = 0u64;
    let mut done = n == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let dfa = Dfa::new(
            alphabet.clone(),
            delta.chunks(k).map(<[usize]>::to_vec).collect(),
            (0..n).map(|q| finals >> q & 1 == 1).collect(),
        )
        .expect("valid table");
        // odometer over final sets, then over transition cells
        finals += 1;
        if finals == 1 << n {
            finals = 0;
            let mut i = 0;
            loop {
                if i == cells {
                    done = true;
                    break;
                }
                delta[i] += 1;
                if delta[i] < n {
                    break;
                }
                delta[i] = 0;
                i += 1;
            }
        }
        Some(dfa)
    })
}

/// Checks that `candidate` accepts the sample, has at most `n` states, and
/// that no DFA with at most `n` states accepting the sample has a strictly
/// smaller language. Skipped when more than `budget` automata would be enumerated.
pub fn check_dfa_minimal(sample: &Sample, candidate: &Dfa, n: usize, budget: u128) -> Verdict {
    if candidate.trim().num_states() > n {
        return Verdict::Fail(format!("{} states exceed the bound {n}", candidate.trim().num_states()));
    }
    if let Some(w) = sample.positives().iter().find(|w| !candidate.accepts(w)) {
        return Verdict::Fail(format!("rejects positive word {}", sample.alphabet().render(w)));
    }
    let k = sample.alphabet().len();
    let total = (1..=n).fold(0u128, |acc, s| acc.saturating_add(dfa_count(s, k)));
    if total > budget {
        return Verdict::Skipped;
    }
    for s in 1..=n {
        for b in dfas_with_states(sample.alphabet(), s) {
            if sample.positives().iter().all(|w| b.accepts(w)) && b.is_strict_subset(candidate).unwrap() {
                return Verdict::Fail(format!("a {s}-state DFA has a strictly smaller language"));
            }
        }
    }
    Verdict::Pass
}

/// Every distinct formula with at most `max_size` nodes built from the atoms
/// and `operators`.
pub fn formulas_up_to(alphabet: &Alphabet, operators: &[Op], max_size: usize) -> Vec<LtlfFormula> {
    let mut all: Vec<LtlfFormula> = Vec::new();
    let mut seen: HashSet<LtlfFormula> = HashSet::new();
    if max_size == 0 {
        return all;
    }
    for a in alphabet.ids() {
        let f = LtlfFormula::atom(alphabet, a);
        seen.insert(f.clone());
        all.push(f);
    }
    let mut frontier = 0;
    while frontier < all.len() {
        let end = all.len();
        let mut fresh = Vec::new();
        for i in 0..end {
            for &op in operators {
                let mut push = |f: LtlfFormula| {
                    if f.size() <= max_size && seen.insert(f.clone()) {
                        fresh.push(f);
                    }
                };
                match op.arity() {
                    1 if i >= frontier => push(LtlfFormula::combine(op, &all[i], None).unwrap()),
                    2 => {
                        // pairs with at least one member from the last round
                        let js = if i >= frontier { 0..end } else { frontier..end };
                        for j in js {
                            if all[i].size() < max_size {
                                push(LtlfFormula::combine(op, &all[i], Some(&all[j])).unwrap());
                            }
                        }
                    }
                    _ => {}
                }
            }
        }
        frontier = end;
        all.extend(fresh);
    }
    all
}

/// Checks that `candidate` is satisfied by every positive word, has at most
/// `n` nodes, and that no formula with at most `min(n, max_size)` nodes
/// satisfied by the sample strictly implies it. With `horizon`, only
/// separations witnessed by a word of at most that length count.
pub fn check_ltlf_minimal(
    sample: &Sample,
    candidate: &LtlfFormula,
    n: usize,
    max_size: usize,
    operators: &[Op],
    horizon: Option<usize>,
) -> Verdict {
    if candidate.size() > n {
        return Verdict::Fail(format!("size {} exceeds the bound {n}", candidate.size()));
    }
    if let Some(w) = sample.positives().iter().find(|w| !candidate.satisfies(w).unwrap_or(false)) {
        return Verdict::Fail(format!("positive word {} is not satisfied", sample.alphabet().render(w)));
    }
    let cand = candidate.to_dfa();
    for f in formulas_up_to(sample.alphabet(), operators, n.min(max_size)) {
        if !sample.positives().iter().all(|w| f.satisfies(w).unwrap()) {
            continue;
        }
        let fd = f.to_dfa();
        if !fd.is_subset(&cand).unwrap() {
            continue;
        }
        if let Some(w) = cand.shortest_separating_word(&fd).unwrap() {
            if horizon.is_none_or(|k| w.len() <= k) {
                return Verdict::Fail(format!("{f} strictly implies {candidate}"));
            }
        }
    }
    Verdict::Pass
}
