//! SAT encodings for LTLf formula identification and the two LTLf learners.
//!
//! A candidate of size `m` is a DAG of nodes `0..m` (root `m - 1`). Node `i`
//! carries one label and, when `i > 0`, one left and one right child among
//! `0..i`; only operators of matching arity read them.

use std::ops::Not;

use crate::dfa::Dfa;
use crate::learn::{LearnConfig, LearnError, Learned, Session, Step, Termination};
use crate::ltlf::{FormulaError, LtlfFormula, Node, Op};
use crate::sat::{CnfProblem, Lit, Model, Var};
use crate::words::{shortest_not_covered, Alphabet, Sample, Word};

/// Label and child variables of a size-`m` candidate.
#[derive(Clone, Debug)]
pub struct LtlfVars {
    m: usize,
    labels: Vec<Op>,
    x: Vec<Vec<Var>>,
    l: Vec<Vec<Var>>,
    r: Vec<Vec<Var>>,
}

impl LtlfVars {
    pub fn size(&self) -> usize {
        self.m
    }

    /// Atoms first, then the configured operators.
    pub fn labels(&self) -> &[Op] {
        &self.labels
    }

    /// `x[i,λ]` with `λ = labels()[label]`.
    pub fn x(&self, i: usize, label: usize) -> Var {
        self.x[i][label]
    }

    pub fn l(&self, i: usize, j: usize) -> Var {
        self.l[i][j]
    }

    pub fn r(&self, i: usize, j: usize) -> Var {
        self.r[i][j]
    }

    /// The raw node table of a model, unreachable nodes and duplicates included.
    pub fn decode_layout(&self, model: &Model) -> Vec<Node> {
        (0..self.m)
            .map(|i| {
                let li = (0..self.labels.len()).find(|&li| model.value(self.x[i][li])).expect("one label");
                let op = self.labels[li];
                let pick = |vs: &[Var]| vs.iter().position(|&v| model.value(v));
                Node {
                    op,
                    left: if op.arity() >= 1 { pick(&self.l[i]) } else { None },
                    right: if op.arity() == 2 { pick(&self.r[i]) } else { None },
                }
            })
            .collect()
    }

    pub fn decode(&self, model: &Model, alphabet: &Alphabet) -> LtlfFormula {
        LtlfFormula::from_layout(alphabet, &self.decode_layout(model), self.m - 1)
    }

    fn label_index(&self, op: Op) -> Option<usize> {
        self.labels.iter().position(|&l| l == op)
    }
}

/// One label per node, one left and one right child per non-leaf-position
/// node, and an atom at node 0.
pub fn encode_syntax(cnf: &mut CnfProblem, m: usize, alphabet: &Alphabet, operators: &[Op]) -> LtlfVars {
    assert!(m >= 1);
    let labels: Vec<Op> = alphabet.ids().map(Op::Atom).chain(operators.iter().copied()).collect();
    let mut x = Vec::new();
    let mut l = Vec::new();
    let mut r = Vec::new();
    for i in 0..m {
        let row: Vec<Var> = labels.iter().map(|op| cnf.fresh(format!("x[{},{op:?}]", i + 1))).collect();
        cnf.exactly_one(&row).expect("nonempty label set");
        x.push(row);
        let ls: Vec<Var> = (0..i).map(|j| cnf.fresh(format!("l[{},{}]", i + 1, j + 1))).collect();
        let rs: Vec<Var> = (0..i).map(|j| cnf.fresh(format!("r[{},{}]", i + 1, j + 1))).collect();
        if i > 0 {
            cnf.exactly_one(&ls).expect("i > 0");
            cnf.exactly_one(&rs).expect("i > 0");
        }
        l.push(ls);
        r.push(rs);
    }
    cnf.add_clause(alphabet.ids().map(|a| x[0][a].pos()));
    LtlfVars { m, labels, x, l, r }
}

#[derive(Clone, Copy, Debug)]
enum Term {
    Lit(Lit),
    Const(bool),
}

impl Not for Term {
    type Output = Term;
    fn not(self) -> Term {
        match self {
            Term::Lit(l) => Term::Lit(!l),
            Term::Const(b) => Term::Const(!b),
        }
    }
}

/// Adds clauses that are all weakened by the same guard literals.
struct Guarded<'a> {
    cnf: &'a mut CnfProblem,
    guard: Vec<Lit>,
}

impl Guarded<'_> {
    fn clause(&mut self, terms: &[Term]) {
        let mut lits = self.guard.clone();
        for t in terms {
            match *t {
                Term::Const(true) => return,
                Term::Const(false) => {}
                Term::Lit(l) => lits.push(l),
            }
        }
        self.cnf.add_clause(lits);
    }

    fn iff(&mut self, out: Term, v: Term) {
        self.clause(&[!out, v]);
        self.clause(&[out, !v]);
    }

    /// `out ↔ a ∨ (b₁ ∧ … ∧ bₖ)`
    fn iff_or_and(&mut self, out: Term, a: Term, bs: &[Term]) {
        for &b in bs {
            self.clause(&[!out, a, b]);
        }
        self.clause(&[out, !a]);
        let mut c = vec![out];
        c.extend(bs.iter().map(|&b| !b));
        self.clause(&c);
    }

    /// `out ↔ a ∧ (b₁ ∨ … ∨ bₖ)`
    fn iff_and_or(&mut self, out: Term, a: Term, bs: &[Term]) {
        self.clause(&[!out, a]);
        let mut c = vec![!out];
        c.extend(bs);
        self.clause(&c);
        for &b in bs {
            self.clause(&[out, !a, !b]);
        }
    }
}

/// Positions `1..=K` of a word of length at most `K`; `p[t][|Σ|]` marks padding.
#[derive(Clone, Debug)]
pub struct SymbolicWord {
    pub p: Vec<Vec<Var>>,
}

impl SymbolicWord {
    pub fn horizon(&self) -> usize {
        self.p.len()
    }

    pub fn decode(&self, model: &Model) -> Word {
        let pad = self.p[0].len() - 1;
        let syms = self
            .p
            .iter()
            .map(|row| row.iter().position(|&v| model.value(v)).expect("one symbol"))
            .take_while(|&a| a != pad)
            .collect();
        Word::new(syms)
    }
}

/// Exactly one symbol or padding per position; padding only at the end.
pub fn encode_symbolic_word(cnf: &mut CnfProblem, horizon: usize, alphabet: &Alphabet) -> SymbolicWord {
    assert!(horizon >= 1);
    let k = alphabet.len();
    let p: Vec<Vec<Var>> = (0..horizon)
        .map(|t| {
            let row: Vec<Var> = (0..=k).map(|a| cnf.fresh(format!("p[{},{}]", t + 1, a))).collect();
            cnf.exactly_one(&row).expect("nonempty");
            row
        })
        .collect();
    for t in 1..horizon {
        cnf.add_clause([p[t - 1][k].neg(), p[t][k].pos()]);
    }
    SymbolicWord { p }
}

enum Trace<'a> {
    Word(&'a Word),
    Symbolic(&'a SymbolicWord),
}

impl Trace<'_> {
    fn len(&self) -> usize {
        match self {
            Trace::Word(w) => w.len(),
            Trace::Symbolic(s) => s.horizon(),
        }
    }

    fn holds(&self, t: usize, a: usize) -> Term {
        match self {
            Trace::Word(w) => Term::Const(w.symbols()[t] == a),
            Trace::Symbolic(s) => Term::Lit(s.p[t][a].pos()),
        }
    }

    /// Whether there is no real position after `t`.
    fn ends_after(&self, t: usize) -> Term {
        match self {
            _ if t + 1 >= self.len() => Term::Const(true),
            Trace::Word(_) => Term::Const(false),
            Trace::Symbolic(s) => Term::Lit(s.p[t + 1][s.p[t + 1].len() - 1].pos()),
        }
    }
}

/// Ties `out[t]` to the meaning of `op` applied to `left`/`right` on `trace`.
fn emit_semantics(g: &mut Guarded, op: Op, out: &[Var], left: Option<&[Var]>, right: Option<&[Var]>, trace: &Trace) {
    let len = out.len();
    let at = |v: Option<&[Var]>, t: usize| -> Term {
        if t < len {
            Term::Lit(v.expect("operand present")[t].pos())
        } else {
            Term::Const(false)
        }
    };
    for t in 0..len {
        let o = Term::Lit(out[t].pos());
        let more = !trace.ends_after(t);
        let own_next = at(Some(out), t + 1);
        match op {
            Op::Atom(a) => g.iff(o, trace.holds(t, a)),
            Op::True => g.iff(o, Term::Const(true)),
            Op::False => g.iff(o, Term::Const(false)),
            Op::Not => g.iff(o, !at(left, t)),
            Op::And => g.iff_and_or(o, at(left, t), &[at(right, t)]),
            Op::Or => g.iff_or_and(o, at(left, t), &[at(right, t)]),
            Op::Implies => g.iff_or_and(o, !at(left, t), &[at(right, t)]),
            Op::Next => g.iff_or_and(o, Term::Const(false), &[more, at(left, t + 1)]),
            Op::Until => g.iff_or_and(o, at(right, t), &[at(left, t), more, own_next]),
            Op::Finally => g.iff_or_and(o, at(left, t), &[more, own_next]),
            Op::Globally => g.iff_and_or(o, at(left, t), &[!more, own_next]),
        }
    }
}

fn fresh_grid(cnf: &mut CnfProblem, nodes: usize, len: usize, tag: &str) -> Vec<Vec<Var>> {
    (0..nodes)
        .map(|i| (0..len).map(|t| cnf.fresh(format!("{tag}[{},{}]", i + 1, t + 1))).collect())
        .collect()
}

/// Valuation constraints for the candidate on `trace`, one guarded copy per
/// label and child choice.
fn candidate_semantics(cnf: &mut CnfProblem, vars: &LtlfVars, grid: &[Vec<Var>], trace: &Trace) {
    for i in 0..vars.m {
        for (li, &op) in vars.labels.iter().enumerate() {
            let x = vars.x[i][li].neg();
            match op.arity() {
                0 => {
                    let mut g = Guarded { cnf, guard: vec![x] };
                    emit_semantics(&mut g, op, &grid[i], None, None, trace);
                }
                1 => {
                    for j in 0..i {
                        let mut g = Guarded {
                            cnf,
                            guard: vec![x, vars.l[i][j].neg()],
                        };
                        emit_semantics(&mut g, op, &grid[i], Some(&grid[j]), None, trace);
                    }
                }
                _ => {
                    for j in 0..i {
                        for j2 in 0..i {
                            let mut g = Guarded {
                                cnf,
                                guard: vec![x, vars.l[i][j].neg(), vars.r[i][j2].neg()],
                            };
                            emit_semantics(&mut g, op, &grid[i], Some(&grid[j]), Some(&grid[j2]), trace);
                        }
                    }
                }
            }
        }
    }
}

/// `y[i][t]` tracks whether candidate node `i` holds at position `t + 1` of
/// `w`; the root is asserted true (`accept`) or false at the first position.
pub fn encode_word(cnf: &mut CnfProblem, vars: &LtlfVars, w: &Word, accept: bool) -> Result<Vec<Vec<Var>>, FormulaError> {
    if w.is_empty() {
        return Err(FormulaError::EmptyWord);
    }
    let y = fresh_grid(cnf, vars.m, w.len(), "y");
    candidate_semantics(cnf, vars, &y, &Trace::Word(w));
    cnf.add_clause([y[vars.m - 1][0].lit(accept)]);
    Ok(y)
}

/// Valuation grid of a fixed formula on a symbolic word (no guards needed).
fn formula_semantics(cnf: &mut CnfProblem, phi: &LtlfFormula, word: &SymbolicWord) -> Vec<Vec<Var>> {
    let z = fresh_grid(cnf, phi.size(), word.horizon(), "zh");
    let trace = Trace::Symbolic(word);
    for (i, n) in phi.nodes().iter().enumerate() {
        let mut g = Guarded { cnf, guard: vec![] };
        let l = n.left.map(|c| z[c].as_slice());
        let r = n.right.map(|c| z[c].as_slice());
        emit_semantics(&mut g, n.op, &z[i], l, r, &trace);
    }
    z
}

pub struct Separation {
    pub word: SymbolicWord,
    /// Valuation of the fixed formula, `[node][t]`.
    pub known: Vec<Vec<Var>>,
    /// Valuation of the candidate, `[node][t]`.
    pub candidate: Vec<Vec<Var>>,
}

/// A nonempty word of length at most `horizon` satisfying `phi` and
/// falsifying the candidate.
pub fn encode_separation(cnf: &mut CnfProblem, vars: &LtlfVars, phi: &LtlfFormula, horizon: usize) -> Separation {
    let word = encode_symbolic_word(cnf, horizon, phi.alphabet());
    let pad = phi.alphabet().len();
    cnf.add_clause([word.p[0][pad].neg()]);
    let known = formula_semantics(cnf, phi, &word);
    let candidate = fresh_grid(cnf, vars.m, horizon, "z");
    candidate_semantics(cnf, vars, &candidate, &Trace::Symbolic(&word));
    cnf.add_clause([known[phi.root()][0].pos()]);
    cnf.add_clause([candidate[vars.m - 1][0].neg()]);
    Separation { word, known, candidate }
}

/// The reachable part of a decoded layout, kept with its raw node ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockedLayout {
    nodes: Vec<(usize, Node)>,
}

impl BlockedLayout {
    pub fn new(layout: &[Node], root: usize) -> Self {
        let mut keep = vec![false; root + 1];
        keep[root] = true;
        for i in (0..=root).rev() {
            if keep[i] {
                for c in [layout[i].left, layout[i].right].into_iter().flatten() {
                    keep[c] = true;
                }
            }
        }
        BlockedLayout {
            nodes: (0..=root).filter(|&i| keep[i]).map(|i| (i, layout[i])).collect(),
        }
    }

    /// Number of literals in the blocking clause.
    pub fn literal_count(&self) -> usize {
        self.nodes.iter().map(|(_, n)| 1 + n.op.arity()).sum()
    }
}

/// Forbids each blocked layout, with its root moved to node `m - 1`.
pub fn encode_blocking(cnf: &mut CnfProblem, vars: &LtlfVars, blocked: &[BlockedLayout]) {
    let m = vars.m;
    'next: for b in blocked {
        let root = b.nodes.last().expect("nonempty").0;
        assert!(root < m, "blocked layout larger than the candidate");
        let place = |id: usize| if id == root { m - 1 } else { id };
        let mut clause = Vec::new();
        for &(id, n) in &b.nodes {
            let i = place(id);
            let Some(li) = vars.label_index(n.op) else {
                continue 'next;
            };
            clause.push(vars.x[i][li].neg());
            if let Some(c) = n.left {
                clause.push(vars.l[i][c].neg());
            }
            if let Some(c) = n.right {
                clause.push(vars.r[i][c].neg());
            }
        }
        cnf.add_clause(clause);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LtlfAlgorithm {
    /// Negative words plus a symbolic separating word of bounded length.
    SemiSymbolic,
    /// Negative words and discarded formulas only.
    CounterexampleGuided,
}

pub fn learn_ssym_ltlf(sample: &Sample, cfg: &LearnConfig) -> Result<Learned<LtlfFormula>, LearnError> {
    learn_ltlf(sample, cfg, LtlfAlgorithm::SemiSymbolic)
}

pub fn learn_ceg_ltlf(sample: &Sample, cfg: &LearnConfig) -> Result<Learned<LtlfFormula>, LearnError> {
    learn_ltlf(sample, cfg, LtlfAlgorithm::CounterexampleGuided)
}

/// Nodes whose stored valuation differs from direct evaluation of the raw layout.
fn valuation_mismatch(layout: &LtlfFormula, w: &Word, grid: &[Vec<Var>], model: &Model) -> bool {
    let table = layout.valuation(w).expect("nonempty word");
    grid.iter()
        .zip(&table)
        .any(|(vars, vals)| vars.iter().zip(vals).any(|(&v, &b)| model.value(v) != b))
}

/// Searches sizes `1..=n` for a formula satisfied by every positive word
/// whose language is minimal among such formulas.
pub fn learn_ltlf(sample: &Sample, cfg: &LearnConfig, algo: LtlfAlgorithm) -> Result<Learned<LtlfFormula>, LearnError> {
    use LtlfAlgorithm::*;
    sample.check_ltlf_mode()?;
    let mut session = Session::new(cfg)?;
    let sigma = sample.alphabet();
    let positives = sample.shortlex();
    let mut hyp: Option<(LtlfFormula, Dfa)> = match algo {
        SemiSymbolic => None,
        CounterexampleGuided => {
            let t = LtlfFormula::constant(sigma, true);
            let d = t.to_dfa();
            Some((t, d))
        }
    };
    let mut used: Vec<Word> = Vec::new();
    let mut negatives: Vec<Word> = Vec::new();
    let mut blocked: Vec<BlockedLayout> = Vec::new();
    let mut m = 1;
    let termination = loop {
        if m > cfg.size_bound {
            break Termination::Minimal;
        }
        let mut cnf = CnfProblem::new();
        let vars = encode_syntax(&mut cnf, m, sigma, &cfg.operators);
        let mut grids = Vec::new();
        for w in &used {
            grids.push((w, encode_word(&mut cnf, &vars, w, true)?));
        }
        for w in &negatives {
            grids.push((w, encode_word(&mut cnf, &vars, w, false)?));
        }
        let separation = match (algo, &hyp) {
            (SemiSymbolic, Some((phi, _))) => Some(encode_separation(&mut cnf, &vars, phi, cfg.horizon)),
            _ => None,
        };
        if algo == CounterexampleGuided {
            encode_blocking(&mut cnf, &vars, &blocked);
        }
        let model = match session.solve(&cnf)? {
            Step::Sat(model) => model,
            Step::Unsat => {
                m += 1;
                continue;
            }
            Step::OutOfTime => break Termination::Timeout,
        };
        let layout = vars.decode_layout(&model);
        let cand = LtlfFormula::from_layout(sigma, &layout, m - 1);
        session.dump_hypothesis(&cand.to_dot())?;
        let raw = LtlfFormula::from_raw(sigma, layout.clone());
        session.check(
            || grids.iter().all(|(w, g)| !valuation_mismatch(&raw, w, g, &model)),
            || format!("word valuations disagree with the decoded formula {cand}"),
        )?;
        if let (Some(sep), Some((phi, _))) = (&separation, &hyp) {
            let u = sep.word.decode(&model);
            session.check(
                || !u.is_empty() && phi.satisfies(&u).unwrap() && !cand.satisfies(&u).unwrap(),
                || format!("symbolic word does not separate {phi} from {cand}"),
            )?;
        }

        if let Some(w) = shortest_not_covered(&positives, |w| cand.satisfies(w).unwrap()) {
            used.push(w);
            session.stats.positives_used += 1;
            continue;
        }
        let cand_dfa = cand.to_dfa();
        let Some((phi, phi_dfa)) = &hyp else {
            hyp = Some((cand, cand_dfa));
            session.stats.hypotheses += 1;
            continue;
        };
        let below = cand_dfa.is_subset(phi_dfa).expect("same alphabet");
        let witness_down = phi_dfa.shortest_separating_word(&cand_dfa).expect("same alphabet");
        if !below {
            negatives.push(cand_dfa.shortest_separating_word(phi_dfa).unwrap().expect("not a subset"));
            session.stats.counterexamples += 1;
            continue;
        }
        match witness_down {
            Some(w) => {
                if algo == CounterexampleGuided {
                    negatives.push(w);
                    session.stats.counterexamples += 1;
                }
                hyp = Some((cand, cand_dfa));
                session.stats.hypotheses += 1;
            }
            None => {
                // same language as the hypothesis
                blocked.push(BlockedLayout::new(&layout, m - 1));
                session.stats.discarded += 1;
                if !phi.uses_learnable_labels() {
                    hyp = Some((cand, cand_dfa));
                }
            }
        }
    };
    match hyp {
        Some((phi, _)) if phi.uses_learnable_labels() => {
            let size = phi.size();
            Ok(session.finish(phi, size, termination))
        }
        _ => Err(LearnError::NoModel {
            bound: cfg.size_bound,
            termination: match termination {
                Termination::Timeout => Termination::Timeout,
                _ => Termination::SizeExhausted,
            },
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sat::{InProcessSolver, SolveOutcome, Solver};

    fn solve(cnf: &CnfProblem) -> Option<Model> {
        match (InProcessSolver { seed: 0 }).solve(cnf, None).unwrap() {
            SolveOutcome::Sat(m) => Some(m),
            _ => None,
        }
    }

    /// All models, projected on `vars`, by repeated blocking.
    fn projections(mut cnf: CnfProblem, vars: &[Var]) -> Vec<Vec<bool>> {
        let mut out = Vec::new();
        while let Some(m) = solve(&cnf) {
            let vals: Vec<bool> = vars.iter().map(|&v| m.value(v)).collect();
            cnf.add_clause(vars.iter().zip(&vals).map(|(v, &b)| v.lit(!b)));
            out.push(vals);
        }
        out
    }

    fn ab() -> Alphabet {
        Alphabet::from_list("a,b").unwrap()
    }

    fn word(s: &str) -> Word {
        Word::new(s.chars().map(|c| (c as u8 - b'a') as usize).collect())
    }

    #[test]
    fn size_one_is_an_atom() {
        let mut cnf = CnfProblem::new();
        let vars = encode_syntax(&mut cnf, 1, &ab(), &Op::OPERATORS);
        let all: Vec<Var> = (0..vars.labels().len()).map(|li| vars.x(0, li)).collect();
        assert_eq!(projections(cnf, &all).len(), 2);
    }

    #[test]
    fn size_two_shapes() {
        let a = Alphabet::from_list("a").unwrap();
        let mut cnf = CnfProblem::new();
        let vars = encode_syntax(&mut cnf, 2, &a, &Op::OPERATORS);
        let mut all: Vec<Var> = (0..2).flat_map(|i| (0..vars.labels().len()).map(move |li| (i, li))).map(|(i, li)| vars.x(i, li)).collect();
        all.push(vars.l(1, 0));
        all.push(vars.r(1, 0));
        let mut shapes: Vec<String> = Vec::new();
        let mut cnf2 = cnf.clone();
        while let Some(m) = solve(&cnf2) {
            let f = vars.decode(&m, &a);
            shapes.push(f.to_string());
            cnf2.add_clause(all.iter().map(|&v| v.lit(!m.value(v))));
        }
        for s in ["!a", "X a", "F a", "G a", "a | a", "a U a", "a"] {
            assert!(shapes.iter().any(|x| x == s), "{s} missing from {shapes:?}");
        }
    }

    #[test]
    fn word_constraints() {
        let mut cnf = CnfProblem::new();
        let vars = encode_syntax(&mut cnf, 1, &ab(), &Op::OPERATORS);
        encode_word(&mut cnf, &vars, &word("a"), true).unwrap();
        assert_eq!(vars.decode(&solve(&cnf).unwrap(), &ab()).to_string(), "a");
        assert_eq!(encode_word(&mut cnf, &vars, &Word::empty(), true).unwrap_err(), FormulaError::EmptyWord);

        // X b at size 2 accepts ab; the root valuation matches evaluation
        let mut cnf = CnfProblem::new();
        let vars = encode_syntax(&mut cnf, 2, &ab(), &Op::OPERATORS);
        let y = encode_word(&mut cnf, &vars, &word("ab"), true).unwrap();
        let next = vars.labels().iter().position(|&o| o == Op::Next).unwrap();
        cnf.add_clause([vars.x(1, next).pos()]);
        let model = solve(&cnf).unwrap();
        let f = vars.decode(&model, &ab());
        assert_eq!(f.to_string(), "X b");
        assert!(model.value(y[1][0]) && f.satisfies(&word("ab")).unwrap());

        // ab accepted and rejected at once is impossible
        let mut cnf = CnfProblem::new();
        let vars = encode_syntax(&mut cnf, 2, &ab(), &Op::OPERATORS);
        encode_word(&mut cnf, &vars, &word("ab"), true).unwrap();
        encode_word(&mut cnf, &vars, &word("ab"), false).unwrap();
        assert!(solve(&cnf).is_none());
    }

    #[test]
    fn symbolic_word_models() {
        let a = Alphabet::from_list("a").unwrap();
        let mut cnf = CnfProblem::new();
        let sw = encode_symbolic_word(&mut cnf, 1, &a);
        let vars: Vec<Var> = sw.p.iter().flatten().copied().collect();
        assert_eq!(projections(cnf, &vars).len(), 2);

        let mut cnf = CnfProblem::new();
        let sw = encode_symbolic_word(&mut cnf, 3, &ab());
        let vars: Vec<Var> = sw.p.iter().flatten().copied().collect();
        let models = projections(cnf, &vars);
        assert_eq!(models.len(), 15);
        for vals in models {
            let pad: Vec<bool> = (0..3).map(|t| vals[t * 3 + 2]).collect();
            assert!(pad.windows(2).all(|w| !w[0] || w[1]));
        }
    }

    #[test]
    fn separation_examples() {
        let phi = LtlfFormula::parse(&ab(), "G a").unwrap();
        let mut cnf = CnfProblem::new();
        let vars = encode_syntax(&mut cnf, 1, &ab(), &Op::OPERATORS);
        let sep = encode_separation(&mut cnf, &vars, &phi, 1);
        let model = solve(&cnf).unwrap();
        assert_eq!(sep.word.decode(&model), word("a"));
        assert_eq!(vars.decode(&model, &ab()).to_string(), "b");

        let empty = LtlfFormula::parse(&ab(), "G a & G b").unwrap();
        let mut cnf = CnfProblem::new();
        let vars = encode_syntax(&mut cnf, 1, &ab(), &Op::OPERATORS);
        encode_separation(&mut cnf, &vars, &empty, 3);
        assert!(solve(&cnf).is_none());
    }

    #[test]
    fn blocking_examples() {
        let mut cnf = CnfProblem::new();
        let vars = encode_syntax(&mut cnf, 1, &ab(), &Op::OPERATORS);
        let atom_a = [Node {
            op: Op::Atom(0),
            left: None,
            right: None,
        }];
        encode_blocking(&mut cnf, &vars, &[BlockedLayout::new(&atom_a, 0)]);
        assert_eq!(vars.decode(&solve(&cnf).unwrap(), &ab()).to_string(), "b");
        let f = LtlfFormula::parse(&ab(), "a U X a").unwrap();
        assert_eq!(BlockedLayout::new(f.nodes(), f.root()).literal_count(), 1 + 2 + 3);
    }

    fn sample(words: &[&str]) -> Sample {
        Sample::new(ab(), words.iter().map(|w| word(w))).unwrap()
    }

    #[test]
    fn learns_single_atom() {
        let cfg = LearnConfig::new(1);
        for algo in [LtlfAlgorithm::SemiSymbolic, LtlfAlgorithm::CounterexampleGuided] {
            let out = learn_ltlf(&sample(&["a"]), &cfg, algo).unwrap();
            assert_eq!(out.model.to_string(), "a");
        }
    }

    #[test]
    fn learns_globally() {
        let mut cfg = LearnConfig::new(2);
        cfg.audit = true;
        cfg.horizon = 4;
        let s = sample(&["a", "aa", "aaa", "aaaa"]);
        let target = LtlfFormula::parse(&ab(), "G a").unwrap();
        for algo in [LtlfAlgorithm::SemiSymbolic, LtlfAlgorithm::CounterexampleGuided] {
            let out = learn_ltlf(&s, &cfg, algo).unwrap();
            assert!(out.model.equivalent(&target).unwrap(), "{algo:?} gave {}", out.model);
        }
    }

    #[test]
    fn rejects_empty_word_and_reports_no_model() {
        let cfg = LearnConfig::new(1);
        let s = Sample::new(ab(), [Word::empty()]).unwrap();
        assert!(matches!(learn_ssym_ltlf(&s, &cfg), Err(LearnError::Sample(_))));
        // no single atom covers words starting with a and with b
        for algo in [LtlfAlgorithm::SemiSymbolic, LtlfAlgorithm::CounterexampleGuided] {
            let err = learn_ltlf(&sample(&["a", "b"]), &cfg, algo).unwrap_err();
            assert!(matches!(err, LearnError::NoModel { termination: Termination::SizeExhausted, .. }));
        }
    }
}
