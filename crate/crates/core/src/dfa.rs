//! Complete deterministic finite automata and the language operations the
//! learners rely on.
//!
//! States are numbered `0..n` with `0` initial. Text formats (DOT, JSON and
//! the tabular dump) print them 1-based, matching the numbering used by the
//! SAT encodings.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::{Alphabet, AlphabetError, SymbolId, Word};

pub type State = usize;

#[derive(Debug, Error)]
pub enum DfaError {
    #[error("automata are over different alphabets")]
    AlphabetMismatch,
    #[error("a DFA needs at least one state")]
    NoStates,
    #[error("transition table is incomplete or points outside the state set")]
    BadTransitions,
    #[error("no accepted word has a length in {min}..={max}")]
    EmptyRange { min: usize, max: usize },
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error("malformed DOT input: {0}")]
    Dot(String),
    #[error("malformed JSON input: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    // delta[q * |alphabet| + a]
    delta: Vec<State>,
    finals: Vec<bool>,
}

impl Dfa {
    /// Builds a DFA from a per-state transition table (`delta[q][a]`).
    pub fn new(alphabet: Alphabet, delta: Vec<Vec<State>>, finals: Vec<bool>) -> Result<Self, DfaError> {
        let n = finals.len();
        if n == 0 {
            return Err(DfaError::NoStates);
        }
        if delta.len() != n || delta.iter().any(|row| row.len() != alphabet.len() || row.iter().any(|&q| q >= n)) {
            return Err(DfaError::BadTransitions);
        }
        Ok(Dfa {
            alphabet,
            delta: delta.into_iter().flatten().collect(),
            finals,
        })
    }

    pub(crate) fn from_flat(alphabet: Alphabet, delta: Vec<State>, finals: Vec<bool>) -> Self {
        debug_assert_eq!(delta.len(), finals.len() * alphabet.len());
        Dfa {
            alphabet,
            delta,
            finals,
        }
    }

    /// The one-state DFA accepting every word.
    pub fn universal(alphabet: &Alphabet) -> Self {
        Dfa::from_flat(alphabet.clone(), vec![0; alphabet.len()], vec![true])
    }

    /// The one-state DFA accepting nothing.
    pub fn empty(alphabet: &Alphabet) -> Self {
        Dfa::from_flat(alphabet.clone(), vec![0; alphabet.len()], vec![false])
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn initial(&self) -> State {
        0
    }

    pub fn next(&self, q: State, a: SymbolId) -> State {
        self.delta[q * self.alphabet.len() + a]
    }

    pub fn is_final(&self, q: State) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = State> + '_ {
        self.finals.iter().enumerate().filter(|(_, &f)| f).map(|(q, _)| q)
    }

    pub fn run_from(&self, mut q: State, w: &Word) -> State {
        for &a in w {
            q = self.next(q, a);
        }
        q
    }

    /// The state reached after reading `w` from the initial state.
    pub fn run(&self, w: &Word) -> State {
        self.run_from(self.initial(), w)
    }

    pub fn accepts(&self, w: &Word) -> bool {
        self.is_final(self.run(w))
    }

    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::from([self.initial()]);
        seen[self.initial()] = true;
        while let Some(q) = queue.pop_front() {
            for a in self.alphabet.ids() {
                let r = self.next(q, a);
                if !seen[r] {
                    seen[r] = true;
                    queue.push_back(r);
                }
            }
        }
        seen
    }

    /// Restriction to the reachable states, renumbered in BFS order.
    pub fn trim(&self) -> Dfa {
        let k = self.alphabet.len();
        let mut id = vec![usize::MAX; self.num_states()];
        let mut order = vec![self.initial()];
        id[self.initial()] = 0;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for a in 0..k {
                let r = self.next(q, a);
                if id[r] == usize::MAX {
                    id[r] = order.len();
                    order.push(r);
                }
            }
            i += 1;
        }
        let delta = order.iter().flat_map(|&q| (0..k).map(move |a| (q, a))).map(|(q, a)| id[self.next(q, a)]).collect();
        let finals = order.iter().map(|&q| self.finals[q]).collect();
        Dfa::from_flat(self.alphabet.clone(), delta, finals)
    }

    /// The minimal equivalent DFA (Moore refinement on the trimmed automaton).
    pub fn minimize(&self) -> Dfa {
        let t = self.trim();
        let (n, k) = (t.num_states(), t.alphabet.len());
        let mut class: Vec<usize> = t.finals.iter().map(|&f| f as usize).collect();
        let mut count = 0;
        loop {
            let mut ids: std::collections::HashMap<Vec<usize>, usize> = Default::default();
            let next: Vec<usize> = (0..n)
                .map(|q| {
                    let sig: Vec<usize> = std::iter::once(class[q]).chain((0..k).map(|a| class[t.next(q, a)])).collect();
                    let fresh = ids.len();
                    *ids.entry(sig).or_insert(fresh)
                })
                .collect();
            class = next;
            if ids.len() == count {
                break;
            }
            count = ids.len();
        }
        let mut delta = vec![0; count * k];
        let mut finals = vec![false; count];
        for q in 0..n {
            finals[class[q]] = t.finals[q];
            for a in 0..k {
                delta[class[q] * k + a] = class[t.next(q, a)];
            }
        }
        // state 0 always gets class 0
        Dfa::from_flat(t.alphabet.clone(), delta, finals).trim()
    }

    pub fn complement(&self) -> Dfa {
        Dfa::from_flat(
            self.alphabet.clone(),
            self.delta.clone(),
            self.finals.iter().map(|f| !f).collect(),
        )
    }

    fn check_alphabet(&self, other: &Dfa) -> Result<(), DfaError> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(DfaError::AlphabetMismatch)
        }
    }

    /// Shortlex-least word accepted by `self` and rejected by `other`, found by
    /// breadth-first search over the product.
    pub fn shortest_separating_word(&self, other: &Dfa) -> Result<Option<Word>, DfaError> {
        self.check_alphabet(other)?;
        let n2 = other.num_states();
        let idx = |p: State, q: State| p * n2 + q;
        let mut parent: Vec<Option<(usize, SymbolId)>> = vec![None; self.num_states() * n2];
        let mut seen = vec![false; self.num_states() * n2];
        let start = (self.initial(), other.initial());
        seen[idx(start.0, start.1)] = true;
        let mut queue = VecDeque::from([start]);
        while let Some((p, q)) = queue.pop_front() {
            if self.is_final(p) && !other.is_final(q) {
                let mut syms = Vec::new();
                let mut cur = idx(p, q);
                while let Some((prev, a)) = parent[cur] {
                    syms.push(a);
                    cur = prev;
                }
                syms.reverse();
                return Ok(Some(Word::new(syms)));
            }
            for a in self.alphabet.ids() {
                let (p2, q2) = (self.next(p, a), other.next(q, a));
                let j = idx(p2, q2);
                if !seen[j] {
                    seen[j] = true;
                    parent[j] = Some((idx(p, q), a));
                    queue.push_back((p2, q2));
                }
            }
        }
        Ok(None)
    }

    /// `L(self) ⊆ L(other)`.
    pub fn is_subset(&self, other: &Dfa) -> Result<bool, DfaError> {
        Ok(self.shortest_separating_word(other)?.is_none())
    }

    pub fn is_equivalent(&self, other: &Dfa) -> Result<bool, DfaError> {
        Ok(self.is_subset(other)? && other.is_subset(self)?)
    }

    /// `L(self) ⊊ L(other)`.
    pub fn is_strict_subset(&self, other: &Dfa) -> Result<bool, DfaError> {
        Ok(self.is_subset(other)? && !other.is_subset(self)?)
    }

    pub fn shortest_accepted(&self) -> Option<Word> {
        self.shortest_separating_word(&Dfa::empty(&self.alphabet))
            .expect("same alphabet")
    }

    pub fn is_empty_language(&self) -> bool {
        self.shortest_accepted().is_none()
    }

    /// `live[l][q]`: some word of length exactly `l` leads from `q` to a final state.
    fn completions(&self, max_len: usize) -> Vec<Vec<bool>> {
        let mut live = vec![self.finals.clone()];
        for l in 1..=max_len {
            let prev = &live[l - 1];
            let row = (0..self.num_states())
                .map(|q| self.alphabet.ids().any(|a| prev[self.next(q, a)]))
                .collect();
            live.push(row);
        }
        live
    }

    /// Number of accepted words of each length `0..=max_len` (saturating).
    pub fn count_by_length(&self, max_len: usize) -> Vec<u128> {
        let mut counts: Vec<u128> = self.finals.iter().map(|&f| f as u128).collect();
        let mut out = vec![counts[self.initial()]];
        for _ in 0..max_len {
            counts = (0..self.num_states())
                .map(|q| {
                    self.alphabet
                        .ids()
                        .fold(0u128, |acc, a| acc.saturating_add(counts[self.next(q, a)]))
                })
                .collect();
            out.push(counts[self.initial()]);
        }
        out
    }

    /// Accepted words with lengths in `min..=max`, shortlex order, at most `limit`.
    pub fn accepted_words(&self, min: usize, max: usize, limit: usize) -> Vec<Word> {
        let live = self.completions(max);
        let mut out = Vec::new();
        for len in min..=max {
            let mut word = Word::empty();
            self.collect_words(self.initial(), len, &live, &mut word, &mut out, limit);
            if out.len() >= limit {
                break;
            }
        }
        out
    }

    fn collect_words(&self, q: State, remaining: usize, live: &[Vec<bool>], word: &mut Word, out: &mut Vec<Word>, limit: usize) {
        if out.len() >= limit || !live[remaining][q] {
            return;
        }
        if remaining == 0 {
            out.push(word.clone());
            return;
        }
        for a in self.alphabet.ids() {
            word.push(a);
            self.collect_words(self.next(q, a), remaining - 1, live, word, out, limit);
            word.pop();
        }
    }

    /// Structural equality up to renaming of reachable states.
    pub fn is_isomorphic(&self, other: &Dfa) -> bool {
        if self.alphabet != other.alphabet {
            return false;
        }
        let (a, b) = (self.trim(), other.trim());
        // trim numbers states canonically in BFS order
        a == b
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let q = |s: &str| s.replace('\\', "\\\\").replace('"', "\\\"");
        writeln!(out, "// alphabet: {}", self.alphabet).unwrap();
        out.push_str("digraph dfa {\n  rankdir=LR;\n");
        for s in 0..self.num_states() {
            let shape = if self.is_final(s) { "doublecircle" } else { "circle" };
            let init = if s == self.initial() { ", style=filled, fillcolor=lightgrey" } else { "" };
            writeln!(out, "  q{} [shape={shape}{init}];", s + 1).unwrap();
        }
        for s in 0..self.num_states() {
            let mut targets: Vec<(State, Vec<&str>)> = Vec::new();
            for a in self.alphabet.ids() {
                let t = self.next(s, a);
                match targets.iter_mut().find(|(x, _)| *x == t) {
                    Some((_, labels)) => labels.push(self.alphabet.name(a)),
                    None => targets.push((t, vec![self.alphabet.name(a)])),
                }
            }
            for (t, labels) in targets {
                writeln!(out, "  q{} -> q{} [label=\"{}\"];", s + 1, t + 1, q(&labels.join(","))).unwrap();
            }
        }
        out.push_str("}\n");
        out
    }

    /// Reads the DOT dialect written by [`Dfa::to_dot`].
    pub fn from_dot(text: &str) -> Result<Dfa, DfaError> {
        let bad = |m: &str| DfaError::Dot(m.to_string());
        let alphabet = text
            .lines()
            .find_map(|l| l.trim().strip_prefix("// alphabet:"))
            .ok_or_else(|| bad("missing `// alphabet:` line"))?;
        let alphabet = Alphabet::from_list(alphabet.trim())?;
        let state_id = |s: &str| -> Result<usize, DfaError> {
            s.trim()
                .strip_prefix('q')
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| n >= 1)
                .map(|n| n - 1)
                .ok_or_else(|| bad(&format!("bad state name `{s}`")))
        };
        let mut finals: Vec<Option<bool>> = Vec::new();
        let mut edges = Vec::new();
        for line in text.lines().map(str::trim) {
            if !line.starts_with('q') {
                continue;
            }
            let (head, attrs) = line.split_once('[').ok_or_else(|| bad(line))?;
            if let Some((from, to)) = head.split_once("->") {
                let label = attrs
                    .split_once("label=\"")
                    .and_then(|(_, r)| r.rsplit_once('"'))
                    .map(|(l, _)| l.replace("\\\"", "\"").replace("\\\\", "\\"))
                    .ok_or_else(|| bad(line))?;
                let (f, t) = (state_id(from)?, state_id(to)?);
                for name in label.split(',') {
                    let a = alphabet.id(name).ok_or_else(|| bad(&format!("unknown symbol `{name}`")))?;
                    edges.push((f, a, t));
                }
            } else {
                let s = state_id(head)?;
                if finals.len() <= s {
                    finals.resize(s + 1, None);
                }
                finals[s] = Some(attrs.contains("doublecircle"));
            }
        }
        let finals: Vec<bool> = finals
            .into_iter()
            .map(|f| f.ok_or_else(|| bad("state numbering has gaps")))
            .collect::<Result<_, _>>()?;
        let k = alphabet.len();
        let mut delta = vec![None; finals.len() * k];
        for (f, a, t) in edges {
            if f >= finals.len() || t >= finals.len() {
                return Err(bad("edge to an undeclared state"));
            }
            delta[f * k + a] = Some(t);
        }
        let delta = delta.into_iter().collect::<Option<Vec<_>>>().ok_or(DfaError::BadTransitions)?;
        if finals.is_empty() {
            return Err(DfaError::NoStates);
        }
        Ok(Dfa::from_flat(alphabet, delta, finals))
    }

    pub fn to_json(&self) -> String {
        let k = self.alphabet.len();
        let doc = DfaJson {
            alphabet: self.alphabet.names().map(String::from).collect(),
            states: self.num_states(),
            initial: 1,
            finals: self.finals().map(|q| q + 1).collect(),
            delta: self.delta.chunks(k).map(|row| row.iter().map(|q| q + 1).collect()).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    /// Reads the JSON written by [`Dfa::to_json`]: `alphabet`, `states`,
    /// `initial` (always 1), 1-based `finals`, and `delta[state][symbol]`.
    pub fn from_json(text: &str) -> Result<Dfa, DfaError> {
        let doc: DfaJson = serde_json::from_str(text)?;
        let alphabet = Alphabet::new(doc.alphabet)?;
        if doc.initial != 1 {
            return Err(DfaError::BadTransitions);
        }
        let mut finals = vec![false; doc.states];
        for q in doc.finals {
            *finals.get_mut(q.wrapping_sub(1)).ok_or(DfaError::BadTransitions)? = true;
        }
        let delta = doc
            .delta
            .into_iter()
            .map(|row| row.into_iter().map(|q| q.wrapping_sub(1)).collect())
            .collect();
        Dfa::new(alphabet, delta, finals)
    }

    /// A plain transition table, final states starred.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let finals: Vec<String> = self.finals().map(|q| (q + 1).to_string()).collect();
        writeln!(out, "states: {}  initial: 1  finals: {{{}}}", self.num_states(), finals.join(",")).unwrap();
        let width = self.alphabet.names().map(str::len).max().unwrap_or(1).max(3);
        write!(out, "{:>5}", "").unwrap();
        for a in self.alphabet.names() {
            write!(out, " {a:>width$}").unwrap();
        }
        out.push('\n');
        for q in 0..self.num_states() {
            let mark = if self.is_final(q) { "*" } else { " " };
            write!(out, "{:>4}{mark}", q + 1).unwrap();
            for a in self.alphabet.ids() {
                write!(out, " {:>width$}", self.next(q, a) + 1).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct DfaJson {
    alphabet: Vec<String>,
    states: usize,
    initial: usize,
    finals: Vec<usize>,
    delta: Vec<Vec<usize>>,
}

/// A random complete DFA with `n` states, all reachable, and (for `n ≥ 2`)
/// both final and non-final states. Transitions are uniform and each state is
/// final with probability one half; draws are repeated until the conditions hold.
pub fn random_dfa(n: usize, alphabet: &Alphabet, seed: u64) -> Dfa {
    assert!(n >= 1, "random_dfa needs at least one state");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = alphabet.len();
    loop {
        let delta = (0..n * k).map(|_| rng.gen_range(0..n)).collect();
        let finals: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        let dfa = Dfa::from_flat(alphabet.clone(), delta, finals);
        let mixed = n == 1 || (dfa.finals.iter().any(|&f| f) && dfa.finals.iter().any(|&f| !f));
        if mixed && dfa.reachable().iter().all(|&r| r) {
            return dfa;
        }
    }
}

/// Draws up to `count` distinct accepted words with lengths in `min..=max`.
///
/// When the language restricted to the range has at most `count` words, all
/// of them are returned. Otherwise uniform random words are tried first (up to
/// `100 * count` attempts), and any shortfall is filled by random walks that
/// only pick symbols from which a final state is still reachable in the
/// remaining number of steps.
pub fn sample_positive_words(dfa: &Dfa, count: usize, min: usize, max: usize, seed: u64) -> Result<BTreeSet<Word>, DfaError> {
    let counts = dfa.count_by_length(max);
    let total: u128 = counts[min.min(max + 1)..].iter().fold(0u128, |a, &c| a.saturating_add(c));
    if min > max || total == 0 {
        return Err(DfaError::EmptyRange { min, max });
    }
    if total <= count as u128 {
        return Ok(dfa.accepted_words(min, max, count).into_iter().collect());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = dfa.alphabet().len();
    let mut out = BTreeSet::new();
    for _ in 0..100 * count {
        if out.len() == count {
            return Ok(out);
        }
        let len = rng.gen_range(min..=max);
        let w = Word::new((0..len).map(|_| rng.gen_range(0..k)).collect());
        if dfa.accepts(&w) {
            out.insert(w);
        }
    }
    let live = dfa.completions(max);
    let lengths: Vec<usize> = (min..=max).filter(|&l| live[l][dfa.initial()]).collect();
    for _ in 0..100 * count {
        if out.len() == count {
            break;
        }
        let len = lengths[rng.gen_range(0..lengths.len())];
        let mut q = dfa.initial();
        let mut w = Word::empty();
        for step in 0..len {
            let rem = len - step - 1;
            let options: Vec<SymbolId> = dfa.alphabet().ids().filter(|&a| live[rem][dfa.next(q, a)]).collect();
            let a = options[rng.gen_range(0..options.len())];
            w.push(a);
            q = dfa.next(q, a);
        }
        debug_assert!(dfa.accepts(&w));
        out.insert(w);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(s: &str) -> Alphabet {
        Alphabet::from_list(s).unwrap()
    }

    fn w(s: &[usize]) -> Word {
        Word::new(s.to_vec())
    }

    /// Accepts exactly the words listed (finite language over {a}).
    fn unary_finite(lengths: &[usize], max: usize) -> Dfa {
        let a = alpha("a");
        let sink = max + 1;
        let delta = (0..=sink).map(|q| vec![if q >= max { sink } else { q + 1 }]).collect();
        let finals = (0..=sink).map(|q| lengths.contains(&q)).collect();
        Dfa::new(a, delta, finals).unwrap()
    }

    #[test]
    fn run_examples() {
        let a = alpha("a");
        let u = Dfa::universal(&a);
        assert_eq!(u.run(&w(&[0, 0, 0])), 0);
        let d = Dfa::new(a, vec![vec![1], vec![0]], vec![true, false]).unwrap();
        assert_eq!(d.run(&w(&[0, 0])), 0);
        assert_eq!(d.run(&w(&[0])), 1);
    }

    #[test]
    fn universal_accepts_everything() {
        let ab = alpha("a,b");
        let u = Dfa::universal(&ab);
        assert_eq!(u.num_states(), 1);
        let words: Vec<Word> = ab.words_up_to(5).collect();
        assert_eq!(words.len(), 63);
        assert!(words.iter().all(|x| u.accepts(x)));
    }

    #[test]
    fn subset_examples() {
        let a_only = unary_finite(&[1], 2);
        let a_or_aa = unary_finite(&[1, 2], 2);
        assert!(a_only.is_subset(&a_or_aa).unwrap());
        assert!(!a_or_aa.is_subset(&a_only).unwrap());
        assert!(a_only.is_subset(&a_only).unwrap());
        assert!(a_only.is_subset(&Dfa::universal(a_only.alphabet())).unwrap());
        let other = Dfa::universal(&alpha("x,y"));
        assert!(matches!(a_only.is_subset(&other), Err(DfaError::AlphabetMismatch)));
    }

    #[test]
    fn separating_word_examples() {
        let ab = alpha("a,b");
        let only_eps = Dfa::new(ab.clone(), vec![vec![1, 1], vec![1, 1]], vec![true, false]).unwrap();
        let u = Dfa::universal(&ab);
        assert_eq!(u.shortest_separating_word(&only_eps).unwrap(), Some(w(&[0])));
        assert_eq!(u.shortest_separating_word(&u.clone()).unwrap(), None);
        assert_eq!(only_eps.shortest_separating_word(&Dfa::empty(&ab)).unwrap(), Some(w(&[])));
    }

    #[test]
    fn random_dfa_contracts() {
        let ab = alpha("a,b");
        let one = random_dfa(1, &ab, 3);
        assert!(one == Dfa::universal(&ab) || one == Dfa::empty(&ab));
        assert_eq!(random_dfa(4, &ab, 9), random_dfa(4, &ab, 9));
        for seed in 0..1000 {
            let d = random_dfa(5, &ab, seed);
            assert!(d.reachable().iter().all(|&r| r));
            assert!(d.finals().count() >= 1 && d.finals().count() < 5);
        }
    }

    #[test]
    fn sampling() {
        let a = alpha("a");
        let u = Dfa::universal(&alpha("a,b"));
        let ws = sample_positive_words(&u, 3, 1, 2, 1).unwrap();
        assert_eq!(ws.len(), 3);
        assert!(ws.iter().all(|x| u.accepts(x) && (1..=2).contains(&x.len())));
        let even = Dfa::new(a, vec![vec![1], vec![0]], vec![true, false]).unwrap();
        assert!(matches!(sample_positive_words(&even, 3, 1, 1, 0), Err(DfaError::EmptyRange { .. })));
        for seed in 0..20 {
            let d = random_dfa(4, &alpha("a,b"), seed);
            let ws = sample_positive_words(&d, 50, 1, 10, seed).unwrap();
            assert!(ws.iter().all(|x| d.accepts(x) && (1..=10).contains(&x.len())));
        }
    }

    #[test]
    fn small_language_enumerated() {
        let d = unary_finite(&[1, 3], 4);
        let ws = sample_positive_words(&d, 10, 0, 4, 0).unwrap();
        assert_eq!(ws.into_iter().collect::<Vec<_>>(), vec![w(&[0]), w(&[0, 0, 0])]);
    }

    #[test]
    fn dot_format() {
        let ab = alpha("a,b");
        let u = Dfa::universal(&ab);
        let dot = u.to_dot();
        assert_eq!(dot.lines().filter(|l| l.contains("[shape=")).count(), 1);
        assert!(dot.contains("q1 [shape=doublecircle, style=filled"));
        assert!(Dfa::from_dot(&dot).unwrap().is_isomorphic(&u));
        for seed in 0..30 {
            let d = random_dfa(1 + (seed as usize % 6), &ab, seed);
            assert!(Dfa::from_dot(&d.to_dot()).unwrap().is_isomorphic(&d));
            assert_eq!(Dfa::from_json(&d.to_json()).unwrap(), d);
        }
    }

    #[test]
    fn trim_and_counts() {
        let ab = alpha("a,b");
        let d = Dfa::new(ab, vec![vec![0, 0], vec![1, 0]], vec![true, false]).unwrap();
        assert_eq!(d.trim().num_states(), 1);
        assert!(d.trim().is_equivalent(&d).unwrap());
        assert_eq!(d.count_by_length(3), vec![1, 2, 4, 8]);
        assert!(d.to_table().contains("finals: {1}"));
    }
}
