//! LTLf formulas over an alphabet of atomic symbols, evaluated on finite
//! nonempty words where exactly one symbol holds at each position.
//!
//! Formulas are hash-consed DAGs: every distinct subformula is one node,
//! children come before parents and the root is the last node, so
//! `size()` is the number of distinct subformulas.
//!
//! Text grammar, loosest binding first:
//!
//! ```text
//! imp   := or ("->" imp)?
//! or    := and ("|" and)*
//! and   := until ("&" until)*
//! until := unary ("U" until)?
//! unary := ("!" | "X" | "F" | "G") unary | atom | "true" | "false" | "(" imp ")"
//! ```
//!
//! `¬ ∧ ∨ →` are accepted as synonyms of `! & | ->`.

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::bdd::{self, BddRef, Manager};
use crate::dfa::{Dfa, DfaError};
use crate::words::{Alphabet, SymbolId, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("operator `{0}` is missing an operand")]
    Arity(String),
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("LTLf formulas are not evaluated on the empty word")]
    EmptyWord,
    #[error("position {t} is outside 1..={len}")]
    Position { t: usize, len: usize },
    #[error("formulas are over different alphabets")]
    AlphabetMismatch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Atom(SymbolId),
    True,
    False,
    Not,
    Or,
    And,
    Implies,
    Next,
    Until,
    Finally,
    Globally,
}

impl Op {
    pub fn arity(self) -> usize {
        match self {
            Op::Atom(_) | Op::True | Op::False => 0,
            Op::Not | Op::Next | Op::Finally | Op::Globally => 1,
            Op::Or | Op::And | Op::Implies | Op::Until => 2,
        }
    }

    /// The operator labels a learned formula may use (atoms come separately).
    pub const OPERATORS: [Op; 8] = [Op::Not, Op::Or, Op::And, Op::Implies, Op::Next, Op::Until, Op::Finally, Op::Globally];

    fn token(self) -> &'static str {
        match self {
            Op::Atom(_) => "atom",
            Op::True => "true",
            Op::False => "false",
            Op::Not => "!",
            Op::Or => "|",
            Op::And => "&",
            Op::Implies => "->",
            Op::Next => "X",
            Op::Until => "U",
            Op::Finally => "F",
            Op::Globally => "G",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Node {
    pub op: Op,
    pub left: Option<usize>,
    pub right: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LtlfFormula {
    alphabet: Alphabet,
    nodes: Vec<Node>,
}

impl std::hash::Hash for LtlfFormula {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.nodes.hash(state)
    }
}

/// Hash-consing constructor. Node ids are handed out in creation order, so
/// children always precede their parents.
pub struct FormulaBuilder {
    alphabet: Alphabet,
    nodes: Vec<Node>,
    index: HashMap<Node, usize>,
}

impl FormulaBuilder {
    pub fn new(alphabet: &Alphabet) -> Self {
        FormulaBuilder {
            alphabet: alphabet.clone(),
            nodes: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn add(&mut self, op: Op, left: Option<usize>, right: Option<usize>) -> usize {
        let node = Node { op, left, right };
        if let Some(&i) = self.index.get(&node) {
            return i;
        }
        self.nodes.push(node);
        self.index.insert(node, self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    pub fn atom(&mut self, a: SymbolId) -> usize {
        self.add(Op::Atom(a), None, None)
    }

    pub fn constant(&mut self, value: bool) -> usize {
        self.add(if value { Op::True } else { Op::False }, None, None)
    }

    pub fn unary(&mut self, op: Op, child: usize) -> usize {
        self.add(op, Some(child), None)
    }

    pub fn binary(&mut self, op: Op, left: usize, right: usize) -> usize {
        self.add(op, Some(left), Some(right))
    }

    /// Copies `f` into this builder and returns the id of its root.
    pub fn import(&mut self, f: &LtlfFormula) -> usize {
        let mut map = Vec::with_capacity(f.nodes.len());
        for n in &f.nodes {
            let id = self.add(n.op, n.left.map(|i| map[i]), n.right.map(|i| map[i]));
            map.push(id);
        }
        map[f.root()]
    }

    /// The formula rooted at `root`, restricted to its own subformulas.
    pub fn finish(&self, root: usize) -> LtlfFormula {
        let mut keep = vec![false; root + 1];
        keep[root] = true;
        for i in (0..=root).rev() {
            if keep[i] {
                let n = self.nodes[i];
                for c in [n.left, n.right].into_iter().flatten() {
                    keep[c] = true;
                }
            }
        }
        let mut map = vec![usize::MAX; root + 1];
        let mut nodes = Vec::new();
        for i in (0..=root).filter(|&i| keep[i]) {
            let n = self.nodes[i];
            map[i] = nodes.len();
            nodes.push(Node {
                op: n.op,
                left: n.left.map(|c| map[c]),
                right: n.right.map(|c| map[c]),
            });
        }
        LtlfFormula {
            alphabet: self.alphabet.clone(),
            nodes,
        }
    }
}

impl LtlfFormula {
    pub fn constant(alphabet: &Alphabet, value: bool) -> Self {
        let mut b = FormulaBuilder::new(alphabet);
        let r = b.constant(value);
        b.finish(r)
    }

    pub fn atom(alphabet: &Alphabet, a: SymbolId) -> Self {
        let mut b = FormulaBuilder::new(alphabet);
        let r = b.atom(a);
        b.finish(r)
    }

    /// Builds the formula rooted at `root` from a raw node table whose
    /// children point to smaller indices. Repeated subformulas are merged.
    pub fn from_layout(alphabet: &Alphabet, layout: &[Node], root: usize) -> Self {
        let mut b = FormulaBuilder::new(alphabet);
        let mut map = Vec::with_capacity(layout.len());
        for n in &layout[..=root] {
            let child = |c: Option<usize>| c.map(|i: usize| map[i]);
            let id = b.add(n.op, child(n.left), child(n.right));
            map.push(id);
        }
        b.finish(map[root])
    }

    /// Wraps a raw node table without merging duplicates or dropping
    /// unreachable nodes; only used to evaluate solver layouts node by node.
    pub(crate) fn from_raw(alphabet: &Alphabet, nodes: Vec<Node>) -> Self {
        LtlfFormula {
            alphabet: alphabet.clone(),
            nodes,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Whether only atoms and the learnable operators occur.
    pub fn uses_learnable_labels(&self) -> bool {
        !self.nodes.iter().any(|n| matches!(n.op, Op::True | Op::False))
    }

    pub fn combine(op: Op, left: &LtlfFormula, right: Option<&LtlfFormula>) -> Result<Self, FormulaError> {
        let mut b = FormulaBuilder::new(&left.alphabet);
        let l = b.import(left);
        let r = match right {
            Some(r) if r.alphabet != left.alphabet => return Err(FormulaError::AlphabetMismatch),
            Some(r) => Some(b.import(r)),
            None => None,
        };
        let root = b.add(op, Some(l), r);
        Ok(b.finish(root))
    }

    pub fn negated(&self) -> Self {
        Self::combine(Op::Not, self, None).expect("unary")
    }

    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self, FormulaError> {
        let tokens = tokenize(text)?;
        let mut p = Parser {
            tokens,
            pos: 0,
            end: text.len(),
            builder: FormulaBuilder::new(alphabet),
        };
        let root = p.implication()?;
        if let Some((off, tok)) = p.tokens.get(p.pos) {
            return Err(FormulaError::Syntax {
                pos: *off,
                msg: format!("unexpected `{tok}`"),
            });
        }
        Ok(p.builder.finish(root))
    }

    /// Truth values of every node at every position: `table[node][t - 1]`.
    pub fn valuation(&self, w: &Word) -> Result<Vec<Vec<bool>>, FormulaError> {
        let len = w.len();
        if len == 0 {
            return Err(FormulaError::EmptyWord);
        }
        let mut table: Vec<Vec<bool>> = Vec::with_capacity(self.nodes.len());
        for n in &self.nodes {
            let l = n.left.map(|i| &table[i]);
            let r = n.right.map(|i| &table[i]);
            let row: Vec<bool> = match n.op {
                Op::Atom(a) => w.iter().map(|&s| s == a).collect(),
                Op::True => vec![true; len],
                Op::False => vec![false; len],
                Op::Not => l.unwrap().iter().map(|v| !v).collect(),
                Op::And => zip(l, r, |a, b| a && b),
                Op::Or => zip(l, r, |a, b| a || b),
                Op::Implies => zip(l, r, |a, b| !a || b),
                Op::Next => {
                    let l = l.unwrap();
                    (0..len).map(|t| t + 1 < len && l[t + 1]).collect()
                }
                Op::Until => {
                    let (l, r) = (l.unwrap(), r.unwrap());
                    backward(len, |t, next| r[t] || (l[t] && next.unwrap_or(false)))
                }
                Op::Finally => {
                    let l = l.unwrap();
                    backward(len, |t, next| l[t] || next.unwrap_or(false))
                }
                Op::Globally => {
                    let l = l.unwrap();
                    backward(len, |t, next| l[t] && next.unwrap_or(true))
                }
            };
            table.push(row);
        }
        Ok(table)
    }

    /// `w, t ⊨ self` with 1-based `t`.
    pub fn evaluate(&self, w: &Word, t: usize) -> Result<bool, FormulaError> {
        if w.is_empty() {
            return Err(FormulaError::EmptyWord);
        }
        if t == 0 || t > w.len() {
            return Err(FormulaError::Position { t, len: w.len() });
        }
        Ok(self.valuation(w)?[self.root()][t - 1])
    }

    /// `w, 1 ⊨ self`.
    pub fn satisfies(&self, w: &Word) -> Result<bool, FormulaError> {
        self.evaluate(w, 1)
    }

    /// A DFA for the nonempty words satisfying the formula.
    pub fn to_dfa(&self) -> Dfa {
        Progression::new(self).build().minimize()
    }

    pub fn implies(&self, other: &LtlfFormula) -> Result<bool, FormulaError> {
        Ok(self.witness(other)?.is_none())
    }

    pub fn equivalent(&self, other: &LtlfFormula) -> Result<bool, FormulaError> {
        Ok(self.implies(other)? && other.implies(self)?)
    }

    /// A shortest word (shortlex-least among those) satisfying `self` but not `other`.
    pub fn witness(&self, other: &LtlfFormula) -> Result<Option<Word>, FormulaError> {
        if self.alphabet != other.alphabet {
            return Err(FormulaError::AlphabetMismatch);
        }
        self.to_dfa().shortest_separating_word(&other.to_dfa()).map_err(|e| match e {
            DfaError::AlphabetMismatch => FormulaError::AlphabetMismatch,
            other => unreachable!("{other}"),
        })
    }

    /// The syntax DAG in DOT, nodes numbered as in the formula.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph ltlf {\n  node [shape=box];\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let label = match n.op {
                Op::Atom(a) => self.alphabet.name(a).replace('"', "\\\""),
                op => op.token().to_string(),
            };
            writeln!(out, "  n{} [label=\"{}: {label}\"];", i + 1, i + 1).unwrap();
        }
        for (i, n) in self.nodes.iter().enumerate() {
            if let Some(l) = n.left {
                let tag = if n.right.is_some() { " [label=\"l\"]" } else { "" };
                writeln!(out, "  n{} -> n{}{tag};", i + 1, l + 1).unwrap();
            }
            if let Some(r) = n.right {
                writeln!(out, "  n{} -> n{} [label=\"r\"];", i + 1, r + 1).unwrap();
            }
        }
        out.push_str("}\n");
        out
    }

    fn fmt_node(&self, i: usize, out: &mut String) {
        let n = self.nodes[i];
        let operand = |c: usize, out: &mut String| {
            if self.nodes[c].op.arity() == 2 {
                out.push('(');
                self.fmt_node(c, out);
                out.push(')');
            } else {
                self.fmt_node(c, out);
            }
        };
        match n.op {
            Op::Atom(a) => out.push_str(self.alphabet.name(a)),
            Op::True | Op::False => out.push_str(n.op.token()),
            Op::Not => {
                out.push('!');
                operand(n.left.unwrap(), out);
            }
            Op::Next | Op::Finally | Op::Globally => {
                out.push_str(n.op.token());
                out.push(' ');
                operand(n.left.unwrap(), out);
            }
            op => {
                operand(n.left.unwrap(), out);
                write!(out, " {} ", op.token()).unwrap();
                operand(n.right.unwrap(), out);
            }
        }
    }
}

impl fmt::Display for LtlfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.fmt_node(self.root(), &mut s);
        f.write_str(&s)
    }
}

fn zip(l: Option<&Vec<bool>>, r: Option<&Vec<bool>>, f: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    l.unwrap().iter().zip(r.unwrap()).map(|(&a, &b)| f(a, b)).collect()
}

fn backward(len: usize, step: impl Fn(usize, Option<bool>) -> bool) -> Vec<bool> {
    let mut row = vec![false; len];
    for t in (0..len).rev() {
        row[t] = step(t, (t + 1 < len).then(|| row[t + 1]));
    }
    row
}

// ---- parsing ----

fn tokenize(text: &str) -> Result<Vec<(usize, String)>, FormulaError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_alphanumeric() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if c.is_alphanumeric() || c == '_' {
                    s.push(c);
                    chars.next();
                } else {
                    break;
                }
            }
            out.push((i, s));
        } else {
            chars.next();
            let tok = match c {
                '!' | '¬' | '~' => "!",
                '&' | '∧' => "&",
                '|' | '∨' => "|",
                '→' => "->",
                '(' => "(",
                ')' => ")",
                '-' if matches!(chars.peek(), Some((_, '>'))) => {
                    chars.next();
                    "->"
                }
                _ => {
                    return Err(FormulaError::Syntax {
                        pos: i,
                        msg: format!("unexpected character `{c}`"),
                    })
                }
            };
            out.push((i, tok.to_string()));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, String)>,
    pos: usize,
    end: usize,
    builder: FormulaBuilder,
}

impl Parser {
    fn peek(&self) -> Option<&str> {
        self.tokens.get(self.pos).map(|(_, t)| t.as_str())
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn operand(&mut self, op: &str, parse: fn(&mut Self) -> Result<usize, FormulaError>) -> Result<usize, FormulaError> {
        match self.peek() {
            None | Some(")") | Some("&") | Some("|") | Some("->") | Some("U") => Err(FormulaError::Arity(op.to_string())),
            _ => parse(self),
        }
    }

    fn implication(&mut self) -> Result<usize, FormulaError> {
        let l = self.or()?;
        if self.eat("->") {
            let r = self.operand("->", Self::implication)?;
            return Ok(self.builder.binary(Op::Implies, l, r));
        }
        Ok(l)
    }

    fn or(&mut self) -> Result<usize, FormulaError> {
        let mut l = self.and()?;
        while self.eat("|") {
            let r = self.operand("|", Self::and)?;
            l = self.builder.binary(Op::Or, l, r);
        }
        Ok(l)
    }

    fn and(&mut self) -> Result<usize, FormulaError> {
        let mut l = self.until()?;
        while self.eat("&") {
            let r = self.operand("&", Self::until)?;
            l = self.builder.binary(Op::And, l, r);
        }
        Ok(l)
    }

    fn until(&mut self) -> Result<usize, FormulaError> {
        let l = self.unary()?;
        if self.eat("U") {
            let r = self.operand("U", Self::until)?;
            return Ok(self.builder.binary(Op::Until, l, r));
        }
        Ok(l)
    }

    fn unary(&mut self) -> Result<usize, FormulaError> {
        let op = match self.peek() {
            Some("!") => Op::Not,
            Some("X") => Op::Next,
            Some("F") => Op::Finally,
            Some("G") => Op::Globally,
            _ => return self.primary(),
        };
        self.pos += 1;
        let c = self.operand(op.token(), Self::unary)?;
        Ok(self.builder.unary(op, c))
    }

    fn primary(&mut self) -> Result<usize, FormulaError> {
        let off = self.offset();
        let Some(tok) = self.peek().map(str::to_string) else {
            return Err(FormulaError::Syntax {
                pos: off,
                msg: "unexpected end of input".into(),
            });
        };
        self.pos += 1;
        match tok.as_str() {
            "(" => {
                let inner = self.implication()?;
                if !self.eat(")") {
                    return Err(FormulaError::Syntax {
                        pos: self.offset(),
                        msg: "expected `)`".into(),
                    });
                }
                Ok(inner)
            }
            "true" => Ok(self.builder.constant(true)),
            "false" => Ok(self.builder.constant(false)),
            t if t.chars().all(|c| c.is_alphanumeric() || c == '_') => {
                let a = self.builder.alphabet.id(t).ok_or_else(|| FormulaError::UnknownAtom(t.to_string()))?;
                Ok(self.builder.atom(a))
            }
            t => Err(FormulaError::Syntax {
                pos: off,
                msg: format!("unexpected `{t}`"),
            }),
        }
    }
}

// ---- compilation to automata ----
//
// The formula is put in negation normal form over strong next, weak next,
// until and release. A progression state is a Boolean function over
// obligations "strong-next θ" / "weak-next θ", kept as a BDD so equal
// functions get equal ids. Reading a symbol replaces every obligation by the
// one-step unfolding of θ; at the end of the word strong obligations are
// false and weak ones true.

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Nnf {
    True,
    False,
    Atom(SymbolId),
    NotAtom(SymbolId),
    And(usize, usize),
    Or(usize, usize),
    Next(usize),
    WeakNext(usize),
    Until(usize, usize),
    Release(usize, usize),
}

struct Progression<'a> {
    formula: &'a LtlfFormula,
    nnf: Vec<Nnf>,
    nnf_index: HashMap<Nnf, usize>,
    // obligation variables: (weak?, nnf id)
    obligations: Vec<(bool, usize)>,
    obligation_index: HashMap<(bool, usize), u32>,
    prog_memo: HashMap<(usize, SymbolId), BddRef>,
    bdd: Manager,
}

impl<'a> Progression<'a> {
    fn new(formula: &'a LtlfFormula) -> Self {
        Progression {
            formula,
            nnf: Vec::new(),
            nnf_index: HashMap::new(),
            obligations: Vec::new(),
            obligation_index: HashMap::new(),
            prog_memo: HashMap::new(),
            bdd: Manager::new(),
        }
    }

    fn intern(&mut self, n: Nnf) -> usize {
        if let Some(&i) = self.nnf_index.get(&n) {
            return i;
        }
        self.nnf.push(n);
        self.nnf_index.insert(n, self.nnf.len() - 1);
        self.nnf.len() - 1
    }

    fn to_nnf(&mut self, node: usize, neg: bool, memo: &mut HashMap<(usize, bool), usize>) -> usize {
        if let Some(&r) = memo.get(&(node, neg)) {
            return r;
        }
        let n = self.formula.nodes[node];
        let l = n.left.unwrap_or(0);
        let r = n.right.unwrap_or(0);
        let res = match n.op {
            Op::Atom(a) => self.intern(if neg { Nnf::NotAtom(a) } else { Nnf::Atom(a) }),
            Op::True => self.intern(if neg { Nnf::False } else { Nnf::True }),
            Op::False => self.intern(if neg { Nnf::True } else { Nnf::False }),
            Op::Not => self.to_nnf(l, !neg, memo),
            Op::And | Op::Or | Op::Implies => {
                let a = self.to_nnf(l, neg ^ (n.op == Op::Implies), memo);
                let b = self.to_nnf(r, neg, memo);
                let conj = (n.op == Op::And) ^ neg;
                self.intern(if conj { Nnf::And(a, b) } else { Nnf::Or(a, b) })
            }
            Op::Next => {
                let a = self.to_nnf(l, neg, memo);
                self.intern(if neg { Nnf::WeakNext(a) } else { Nnf::Next(a) })
            }
            Op::Until => {
                let a = self.to_nnf(l, neg, memo);
                let b = self.to_nnf(r, neg, memo);
                self.intern(if neg { Nnf::Release(a, b) } else { Nnf::Until(a, b) })
            }
            Op::Finally | Op::Globally => {
                let a = self.to_nnf(l, neg, memo);
                // F ψ = true U ψ, G ψ = false R ψ, and they swap under negation
                if (n.op == Op::Finally) ^ neg {
                    let t = self.intern(Nnf::True);
                    self.intern(Nnf::Until(t, a))
                } else {
                    let f = self.intern(Nnf::False);
                    self.intern(Nnf::Release(f, a))
                }
            }
        };
        memo.insert((node, neg), res);
        res
    }

    fn obligation(&mut self, weak: bool, target: usize) -> BddRef {
        let v = match self.obligation_index.get(&(weak, target)) {
            Some(&v) => v,
            None => {
                let v = self.obligations.len() as u32;
                self.obligations.push((weak, target));
                self.obligation_index.insert((weak, target), v);
                v
            }
        };
        self.bdd.var(v)
    }

    /// What must hold after reading `a`, for `θ` to hold at the current position.
    fn prog(&mut self, theta: usize, a: SymbolId) -> BddRef {
        if let Some(&r) = self.prog_memo.get(&(theta, a)) {
            return r;
        }
        let r = match self.nnf[theta] {
            Nnf::True => bdd::TRUE,
            Nnf::False => bdd::FALSE,
            Nnf::Atom(b) => (a == b) as BddRef,
            Nnf::NotAtom(b) => (a != b) as BddRef,
            Nnf::And(x, y) => {
                let (x, y) = (self.prog(x, a), self.prog(y, a));
                self.bdd.and(x, y)
            }
            Nnf::Or(x, y) => {
                let (x, y) = (self.prog(x, a), self.prog(y, a));
                self.bdd.or(x, y)
            }
            Nnf::Next(x) => self.obligation(false, x),
            Nnf::WeakNext(x) => self.obligation(true, x),
            Nnf::Until(x, y) => {
                let (px, py) = (self.prog(x, a), self.prog(y, a));
                let again = self.obligation(false, theta);
                let keep = self.bdd.and(px, again);
                self.bdd.or(py, keep)
            }
            Nnf::Release(x, y) => {
                let (px, py) = (self.prog(x, a), self.prog(y, a));
                let again = self.obligation(true, theta);
                let keep = self.bdd.or(px, again);
                self.bdd.and(py, keep)
            }
        };
        self.prog_memo.insert((theta, a), r);
        r
    }

    fn step(&mut self, state: BddRef, a: SymbolId) -> BddRef {
        // unfolding may allocate fresh obligations, which `state` cannot mention
        let targets: Vec<BddRef> = (0..self.obligations.len())
            .map(|v| {
                let theta = self.obligations[v].1;
                self.prog(theta, a)
            })
            .collect();
        self.bdd.substitute(state, &mut |_, v| targets[v as usize])
    }

    fn accepting(&self, state: BddRef) -> bool {
        self.bdd.eval(state, |v| self.obligations[v as usize].0)
    }

    fn build(mut self) -> Dfa {
        let alphabet = self.formula.alphabet.clone();
        let root = {
            let mut memo = HashMap::new();
            self.to_nnf(self.formula.root(), false, &mut memo)
        };
        let init = self.obligation(false, root);
        let mut ids: HashMap<BddRef, usize> = HashMap::from([(init, 0)]);
        let mut states = vec![init];
        let mut delta = Vec::new();
        let mut i = 0;
        while i < states.len() {
            for a in alphabet.ids() {
                let next = self.step(states[i], a);
                let id = *ids.entry(next).or_insert_with(|| {
                    states.push(next);
                    states.len() - 1
                });
                delta.push(id);
            }
            i += 1;
        }
        let finals = states.iter().map(|&s| self.accepting(s)).collect();
        Dfa::from_flat(alphabet, delta, finals)
    }
}
