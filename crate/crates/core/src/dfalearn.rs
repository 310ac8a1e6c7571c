//! SAT encodings for DFA identification and the three DFA learners.
//!
//! Hypothesis states are numbered `0..m` with `0` initial. Every encoder
//! adds clauses to a caller-owned [`CnfProblem`] and returns the variables
//! it allocated, so tests can inspect models.

use std::collections::{BTreeSet, HashMap};

use crate::dfa::Dfa;
use crate::learn::{LearnConfig, LearnError, Learned, Session, Step, Termination};
use crate::sat::{CnfProblem, Lit, Model, Var};
use crate::words::{prefixes, shortest_not_covered, Alphabet, Sample, Word};

/// Transition and final-state variables of an `m`-state candidate.
#[derive(Clone, Debug)]
pub struct DfaVars {
    m: usize,
    k: usize,
    d: Vec<Var>,
    f: Vec<Var>,
}

impl DfaVars {
    pub fn size(&self) -> usize {
        self.m
    }

    /// `d[p,a,q]`: the candidate moves from `p` to `q` on `a`.
    pub fn d(&self, p: usize, a: usize, q: usize) -> Var {
        self.d[(p * self.k + a) * self.m + q]
    }

    /// `f[q]`: `q` is final.
    pub fn f(&self, q: usize) -> Var {
        self.f[q]
    }

    pub fn decode(&self, model: &Model, alphabet: &Alphabet) -> Dfa {
        let delta = (0..self.m)
            .map(|p| {
                (0..self.k)
                    .map(|a| (0..self.m).find(|&q| model.value(self.d(p, a, q))).expect("exactly one successor"))
                    .collect()
            })
            .collect();
        let finals = (0..self.m).map(|q| model.value(self.f(q))).collect();
        Dfa::new(alphabet.clone(), delta, finals).expect("decoded table is complete")
    }
}

/// Determinism and completeness: exactly one successor per `(p, a)`.
pub fn encode_structure(cnf: &mut CnfProblem, m: usize, alphabet: &Alphabet) -> DfaVars {
    assert!(m >= 1);
    let k = alphabet.len();
    let mut d = Vec::with_capacity(m * k * m);
    for p in 0..m {
        for a in 0..k {
            let row: Vec<Var> = (0..m).map(|q| cnf.fresh(format!("d[{},{},{}]", p + 1, a, q + 1))).collect();
            cnf.exactly_one(&row).expect("m >= 1");
            d.extend(row);
        }
    }
    let f = (0..m).map(|q| cnf.fresh(format!("f[{}]", q + 1))).collect();
    DfaVars { m, k, d, f }
}

/// Run-tracking variables `x[u,q]` over the prefixes of `accept ∪ reject`,
/// with every word of `accept` accepted and every word of `reject` rejected.
pub fn encode_runs(cnf: &mut CnfProblem, vars: &DfaVars, accept: &[Word], reject: &[Word]) -> HashMap<Word, Vec<Var>> {
    let mut x: HashMap<Word, Vec<Var>> = HashMap::new();
    if accept.is_empty() && reject.is_empty() {
        return x;
    }
    let m = vars.m;
    let prefs: BTreeSet<Word> = prefixes(accept.iter().chain(reject));
    let mut sorted: Vec<&Word> = prefs.iter().collect();
    sorted.sort_by(|a, b| a.shortlex_cmp(b));
    for (idx, u) in sorted.iter().enumerate() {
        let row: Vec<Var> = (0..m).map(|q| cnf.fresh(format!("x[#{idx},{}]", q + 1))).collect();
        if u.is_empty() {
            cnf.add_clause([row[0].pos()]);
            for v in &row[1..] {
                cnf.add_clause([v.neg()]);
            }
        } else {
            let parent = &x[&u.prefix(u.len() - 1)];
            let a = u.symbols()[u.len() - 1];
            for p in 0..m {
                for q in 0..m {
                    cnf.add_clause([parent[p].neg(), vars.d(p, a, q).neg(), row[q].pos()]);
                }
            }
        }
        x.insert((*u).clone(), row);
    }
    for (words, final_lit) in [(accept, true), (reject, false)] {
        for w in words {
            for q in 0..m {
                cnf.add_clause([x[w][q].neg(), vars.f(q).lit(final_lit)]);
            }
        }
    }
    x
}

pub fn encode_positive(cnf: &mut CnfProblem, vars: &DfaVars, words: &[Word]) -> HashMap<Word, Vec<Var>> {
    encode_runs(cnf, vars, words, &[])
}

pub fn encode_negative(cnf: &mut CnfProblem, vars: &DfaVars, words: &[Word]) -> HashMap<Word, Vec<Var>> {
    encode_runs(cnf, vars, &[], words)
}

/// `y[p,p′]` over states of `a` × candidate states, forcing `L(candidate) ⊆ L(a)`.
pub fn encode_subset(cnf: &mut CnfProblem, vars: &DfaVars, a: &Dfa) -> Vec<Vec<Var>> {
    let m = vars.m;
    let y: Vec<Vec<Var>> = (0..a.num_states())
        .map(|p| (0..m).map(|q| cnf.fresh(format!("y[{},{}]", p + 1, q + 1))).collect())
        .collect();
    cnf.add_clause([y[0][0].pos()]);
    for p in 0..a.num_states() {
        for p2 in 0..m {
            for s in a.alphabet().ids() {
                let next = a.next(p, s);
                for q2 in 0..m {
                    cnf.add_clause([y[p][p2].neg(), vars.d(p2, s, q2).neg(), y[next][q2].pos()]);
                }
            }
            if !a.is_final(p) {
                cnf.add_clause([y[p][p2].neg(), vars.f(p2).neg()]);
            }
        }
    }
    y
}

/// Variables of the bounded synchronized run used by [`encode_strictness`].
pub struct StrictVars {
    /// `z[i][p][q′]`
    pub z: Vec<Vec<Vec<Var>>>,
    /// Selector for "the run stops at step `i` in final `p` of `a`, non-final `q′`".
    pub e: Vec<(usize, usize, usize, Var)>,
}

/// Forces some word of length at most `m²` into `L(a) ∖ L(candidate)`.
///
/// `z[i,p,q′]` picks exactly one state pair per step `i ∈ 0..=m²`,
/// consecutive pairs must be linked by a common symbol, and a selected
/// step must pair a final state of `a` with a non-final candidate state.
pub fn encode_strictness(cnf: &mut CnfProblem, vars: &DfaVars, a: &Dfa) -> StrictVars {
    let m = vars.m;
    let n = a.num_states();
    let horizon = m * m;
    let z: Vec<Vec<Vec<Var>>> = (0..=horizon)
        .map(|i| {
            (0..n)
                .map(|p| (0..m).map(|q| cnf.fresh(format!("z[{i},{},{}]", p + 1, q + 1))).collect())
                .collect()
        })
        .collect();
    cnf.add_clause([z[0][0][0].pos()]);
    for layer in &z {
        let all: Vec<Var> = layer.iter().flatten().copied().collect();
        cnf.exactly_one(&all).expect("nonempty");
    }
    for i in 0..horizon {
        for p in 0..n {
            for q in 0..n {
                let symbols: Vec<usize> = a.alphabet().ids().filter(|&s| a.next(p, s) == q).collect();
                for p2 in 0..m {
                    for q2 in 0..m {
                        let mut clause = vec![z[i][p][p2].neg(), z[i + 1][q][q2].neg()];
                        clause.extend(symbols.iter().map(|&s| vars.d(p2, s, q2).pos()));
                        cnf.add_clause(clause);
                    }
                }
            }
        }
    }
    let mut e = Vec::new();
    for (i, layer) in z.iter().enumerate() {
        for p in a.finals() {
            for (q2, &zv) in layer[p].iter().enumerate() {
                let sel = cnf.fresh(format!("e[{i},{},{}]", p + 1, q2 + 1));
                cnf.add_clause([sel.neg(), zv.pos()]);
                cnf.add_clause([sel.neg(), vars.f(q2).neg()]);
                e.push((i, p, q2, sel));
            }
        }
    }
    cnf.add_clause(e.iter().map(|t| t.3.pos()));
    StrictVars { z, e }
}

/// Rules out each listed candidate assignment, looking only at the states
/// reachable in it. Blocked automata keep the raw numbering they were decoded with.
pub fn encode_blocking(cnf: &mut CnfProblem, vars: &DfaVars, blocked: &[Dfa]) {
    for b in blocked {
        assert!(b.num_states() <= vars.m, "blocked automaton larger than the candidate");
        let reach = b.reachable();
        let mut clause: Vec<Lit> = Vec::new();
        for p in (0..b.num_states()).filter(|&p| reach[p]) {
            for s in b.alphabet().ids() {
                clause.push(vars.d(p, s, b.next(p, s)).neg());
            }
            clause.push(vars.f(p).lit(!b.is_final(p)));
        }
        cnf.add_clause(clause);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DfaAlgorithm {
    /// Subset and strictness constraints against the hypothesis.
    Symbolic,
    /// Negative words and blocked candidates only.
    CounterexampleGuided,
    /// Strictness constraint plus negative words.
    SemiSymbolic,
}

pub fn learn_sym_dfa(sample: &Sample, cfg: &LearnConfig) -> Result<Learned<Dfa>, LearnError> {
    learn_dfa(sample, cfg, DfaAlgorithm::Symbolic)
}

pub fn learn_ceg_dfa(sample: &Sample, cfg: &LearnConfig) -> Result<Learned<Dfa>, LearnError> {
    learn_dfa(sample, cfg, DfaAlgorithm::CounterexampleGuided)
}

pub fn learn_ssym_dfa(sample: &Sample, cfg: &LearnConfig) -> Result<Learned<Dfa>, LearnError> {
    learn_dfa(sample, cfg, DfaAlgorithm::SemiSymbolic)
}

/// Searches sizes `1..=n` for a DFA accepting the sample whose language is
/// minimal among all such DFAs of at most `n` states.
pub fn learn_dfa(sample: &Sample, cfg: &LearnConfig, algo: DfaAlgorithm) -> Result<Learned<Dfa>, LearnError> {
    use DfaAlgorithm::*;
    let mut session = Session::new(cfg)?;
    let sigma = sample.alphabet();
    let positives = sample.shortlex();
    let mut hyp = Dfa::universal(sigma);
    let mut used: Vec<Word> = Vec::new();
    let mut negatives: Vec<Word> = Vec::new();
    let mut blocked: Vec<Dfa> = Vec::new();
    let mut m = 1;
    let termination = loop {
        if m > cfg.size_bound {
            break Termination::Minimal;
        }
        let mut cnf = CnfProblem::new();
        let vars = encode_structure(&mut cnf, m, sigma);
        encode_runs(&mut cnf, &vars, &used, &negatives);
        match algo {
            Symbolic => {
                encode_subset(&mut cnf, &vars, &hyp);
                encode_strictness(&mut cnf, &vars, &hyp);
            }
            SemiSymbolic => {
                encode_strictness(&mut cnf, &vars, &hyp);
            }
            CounterexampleGuided => encode_blocking(&mut cnf, &vars, &blocked),
        }
        let model = match session.solve(&cnf)? {
            Step::Sat(model) => model,
            Step::Unsat => {
                m += 1;
                continue;
            }
            Step::OutOfTime => break Termination::Timeout,
        };
        let cand = vars.decode(&model, sigma);
        session.dump_hypothesis(&cand.to_dot())?;
        session.check(
            || used.iter().all(|w| cand.accepts(w)) && negatives.iter().all(|w| !cand.accepts(w)),
            || "candidate disagrees with the working sample".into(),
        )?;
        if algo == Symbolic {
            session.check(|| cand.is_subset(&hyp).unwrap(), || "candidate is not a subset of the hypothesis".into())?;
        }
        if algo != CounterexampleGuided {
            session.check(
                || hyp.shortest_separating_word(&cand).unwrap().is_some_and(|w| w.len() <= m * m),
                || "no short word separates the hypothesis from the candidate".into(),
            )?;
        }

        if let Some(w) = shortest_not_covered(&positives, |w| cand.accepts(w)) {
            used.push(w);
            session.stats.positives_used += 1;
            continue;
        }
        let subset = algo == Symbolic || cand.is_subset(&hyp).expect("same alphabet");
        let accept = if !subset {
            // the candidate accepts a word outside the hypothesis; rule it out
            negatives.push(cand.shortest_separating_word(&hyp).unwrap().expect("not a subset"));
            session.stats.counterexamples += 1;
            false
        } else if let Some(w) = hyp.shortest_separating_word(&cand).unwrap() {
            if algo != Symbolic {
                negatives.push(w);
                session.stats.counterexamples += 1;
            }
            true
        } else {
            blocked.push(cand.clone());
            session.stats.discarded += 1;
            false
        };
        if accept {
            session.check(
                || cand.is_strict_subset(&hyp).unwrap(),
                || "hypothesis chain is not strictly decreasing".into(),
            )?;
            hyp = cand.trim();
            session.stats.hypotheses += 1;
        }
    };
    let size = hyp.num_states();
    Ok(session.finish(hyp, size, termination))
}
