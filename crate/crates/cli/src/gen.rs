//! Sample generators: random DFAs, formulas, and synthetic UAV traces.

use std::collections::BTreeSet;

use anyhow::{bail, Context, Result};
use occlearn::dfa::{random_dfa, sample_positive_words, Dfa};
use occlearn::ltlf::LtlfFormula;
use occlearn::words::{Alphabet, Sample, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A generated sample, with a note when fewer words than requested exist.
#[derive(Clone, Debug)]
pub struct Generated {
    pub sample: Sample,
    pub warning: Option<String>,
}

fn shortfall(got: usize, wanted: usize) -> Option<String> {
    (got < wanted).then(|| format!("only {got} distinct words exist in the length range; emitting all of them instead of {wanted}"))
}

pub fn from_dfa(dfa: &Dfa, count: usize, min_len: usize, max_len: usize, seed: u64) -> Result<Generated> {
    let words = sample_positive_words(dfa, count, min_len, max_len, seed)
        .with_context(|| format!("the automaton accepts no word of length {min_len}..={max_len}"))?;
    let warning = shortfall(words.len(), count);
    Ok(Generated {
        sample: Sample::new(dfa.alphabet().clone(), words)?,
        warning,
    })
}

/// Draws from a fresh random DFA with `states` states; returns the target too.
pub fn from_random_dfa(
    states: usize,
    alphabet: &Alphabet,
    count: usize,
    min_len: usize,
    max_len: usize,
    seed: u64,
) -> Result<(Dfa, Generated)> {
    if states == 0 {
        bail!("a random DFA needs at least one state");
    }
    // redraw targets whose language misses the length range entirely
    for attempt in 0..64u64 {
        let target = random_dfa(states, alphabet, seed.wrapping_add(attempt.wrapping_mul(0x9e37_79b9)));
        if target.accepted_words(min_len, max_len, 1).is_empty() {
            continue;
        }
        let generated = from_dfa(&target, count, min_len, max_len, seed)?;
        return Ok((target, generated));
    }
    bail!("no random {states}-state DFA with words of length {min_len}..={max_len} found")
}

/// Uniform words filtered by the formula; topped up from its automaton when
/// rejection sampling runs dry.
pub fn from_formula(formula: &LtlfFormula, count: usize, min_len: usize, max_len: usize, seed: u64) -> Result<Generated> {
    let min_len = min_len.max(1);
    if min_len > max_len {
        bail!("empty length range {min_len}..={max_len}");
    }
    let sigma = formula.alphabet();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut words: BTreeSet<Word> = BTreeSet::new();
    for _ in 0..count.saturating_mul(100) {
        if words.len() >= count {
            break;
        }
        let len = rng.gen_range(min_len..=max_len);
        let w = Word::new((0..len).map(|_| rng.gen_range(0..sigma.len())).collect());
        if formula.satisfies(&w)? {
            words.insert(w);
        }
    }
    if words.len() < count {
        let dfa = formula.to_dfa();
        let extra = sample_positive_words(&dfa, count, min_len, max_len, seed)
            .with_context(|| format!("`{formula}` is unsatisfiable within lengths {min_len}..={max_len}"))?;
        for w in extra {
            if words.len() >= count {
                break;
            }
            words.insert(w);
        }
    }
    let warning = shortfall(words.len(), count);
    Ok(Generated {
        sample: Sample::new(sigma.clone(), words)?,
        warning,
    })
}

/// Feature names of the synthetic UAV traces.
pub const UAV_FEATURES: [(&str, &str); 4] = [
    ("x0", "low battery"),
    ("x1", "glide"),
    ("x2", "change yaw angle"),
    ("x3", "change roll angle"),
];

pub fn uav_alphabet() -> Alphabet {
    Alphabet::new(UAV_FEATURES.iter().map(|(n, _)| *n)).expect("distinct names")
}

/// Synthetic flight logs: one dominant feature per time step.
///
/// Cluster 0 glides for the whole flight or never; cluster 1 stops turning
/// once the battery runs low; cluster 2 alternates yaw and roll manoeuvres.
/// This stands in for real telemetry and is not derived from any dataset.
pub fn uav_traces(cluster: usize, count: usize, min_len: usize, max_len: usize, seed: u64) -> Result<Generated> {
    let min_len = min_len.max(1);
    if min_len > max_len {
        bail!("empty length range {min_len}..={max_len}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (cluster as u64) << 32);
    let mut words = BTreeSet::new();
    for _ in 0..count.saturating_mul(20) {
        if words.len() >= count {
            break;
        }
        let len = rng.gen_range(min_len..=max_len);
        let w = match cluster % 3 {
            0 => {
                if rng.gen_bool(0.3) {
                    vec![1; len]
                } else {
                    (0..len).map(|_| [0, 2, 3][rng.gen_range(0..3)]).collect()
                }
            }
            1 => {
                let low = rng.gen_range(0..=len);
                (0..len)
                    .map(|t| if t < low { rng.gen_range(1..4) } else { [0, 1][rng.gen_range(0..2)] })
                    .collect()
            }
            _ => {
                let mut cur = rng.gen_range(2..4);
                (0..len)
                    .map(|_| {
                        if rng.gen_bool(0.2) {
                            1
                        } else {
                            cur = 5 - cur;
                            cur
                        }
                    })
                    .collect()
            }
        };
        words.insert(Word::new(w));
    }
    let warning = shortfall(words.len(), count);
    Ok(Generated {
        sample: Sample::new(uav_alphabet(), words)?,
        warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a01() -> Alphabet {
        Alphabet::from_list("a0,a1").unwrap()
    }

    #[test]
    fn formula_words_satisfy_it() {
        let f = LtlfFormula::parse(&a01(), "F a0").unwrap();
        let g = from_formula(&f, 30, 3, 6, 1).unwrap();
        assert_eq!(g.sample.len(), 30);
        assert!(g.warning.is_none());
        assert!(g.sample.positives().iter().all(|w| w.symbols().contains(&0)));
    }

    #[test]
    fn scarce_formula_warns() {
        let f = LtlfFormula::parse(&a01(), "G !a0").unwrap();
        let g = from_formula(&f, 100, 10, 10, 0).unwrap();
        assert_eq!(g.sample.len(), 1);
        assert!(g.warning.is_some());
        assert_eq!(g.sample.positives().iter().next().unwrap().symbols(), &[1; 10]);
    }

    #[test]
    fn unsatisfiable_formula_errors() {
        let f = LtlfFormula::parse(&a01(), "G a0 & F a1").unwrap();
        assert!(from_formula(&f, 5, 1, 4, 0).is_err());
    }

    #[test]
    fn random_dfa_words_are_accepted() {
        let ab = Alphabet::from_list("a,b").unwrap();
        let (target, g) = from_random_dfa(5, &ab, 20, 1, 10, 3).unwrap();
        assert!(g.sample.positives().iter().all(|w| target.accepts(w)));
        assert_eq!(g.sample.len(), 20);
    }

    #[test]
    fn uav_clusters_follow_their_rules() {
        let glide = LtlfFormula::parse(&uav_alphabet(), "F x1 -> G x1").unwrap();
        let g = uav_traces(0, 40, 4, 8, 9).unwrap();
        assert!(g.sample.positives().iter().all(|w| glide.satisfies(w).unwrap()));
        let calm = LtlfFormula::parse(&uav_alphabet(), "G (x0 -> G (x0 | x1))").unwrap();
        let g = uav_traces(1, 40, 4, 8, 9).unwrap();
        assert!(g.sample.positives().iter().all(|w| calm.satisfies(w).unwrap()));
    }
}
