//! Alphabets, words and positive samples, plus the plain-text sample format.
//!
//! A sample file starts with `alphabet: a,b,...` and lists one word per line.
//! Symbols inside a word are comma separated; when every symbol name is a
//! single character they may also be written unseparated (`ab` is `a,b`).
//! An empty line is the empty word and lines starting with `#` are comments.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Index of a symbol inside its [`Alphabet`].
pub type SymbolId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlphabetError {
    #[error("alphabet must not be empty")]
    Empty,
    #[error("duplicate symbol `{0}`")]
    Duplicate(String),
    #[error("invalid symbol name `{0}`")]
    InvalidName(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct AlphabetInner {
    symbols: Vec<String>,
    index: HashMap<String, SymbolId>,
}

/// A finite, nonempty, ordered set of symbol names.
///
/// Cloning is cheap; the symbol table is shared.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet(Arc<AlphabetInner>);

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self, AlphabetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut symbols = Vec::new();
        let mut index = HashMap::new();
        for name in names {
            let name: String = name.into();
            if name.is_empty()
                || name.contains(',')
                || name.starts_with('#')
                || name.chars().any(char::is_whitespace)
            {
                return Err(AlphabetError::InvalidName(name));
            }
            if index.insert(name.clone(), symbols.len()).is_some() {
                return Err(AlphabetError::Duplicate(name));
            }
            symbols.push(name);
        }
        if symbols.is_empty() {
            return Err(AlphabetError::Empty);
        }
        Ok(Alphabet(Arc::new(AlphabetInner { symbols, index })))
    }

    /// Parses a comma-separated list of names such as `a0,a1`.
    pub fn from_list(text: &str) -> Result<Self, AlphabetError> {
        Self::new(text.split(',').map(str::trim))
    }

    pub fn len(&self) -> usize {
        self.0.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn name(&self, id: SymbolId) -> &str {
        &self.0.symbols[id]
    }

    pub fn id(&self, name: &str) -> Option<SymbolId> {
        self.0.index.get(name).copied()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.symbols.iter().map(String::as_str)
    }

    pub fn ids(&self) -> std::ops::Range<SymbolId> {
        0..self.len()
    }

    /// True when every symbol name is one character long, which allows the
    /// unseparated word notation.
    pub fn single_char(&self) -> bool {
        self.0.symbols.iter().all(|s| s.chars().count() == 1)
    }

    pub fn render(&self, word: &Word) -> String {
        let sep = if self.single_char() { "" } else { "," };
        word.iter()
            .map(|&s| self.name(s))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// All words of exactly `len` symbols in lexicographic order.
    pub fn words_of_len(&self, len: usize) -> impl Iterator<Item = Word> + '_ {
        let k = self.len();
        let total = k.checked_pow(len as u32).unwrap_or(usize::MAX);
        (0..total).map(move |mut code| {
            let mut syms = vec![0; len];
            for slot in syms.iter_mut().rev() {
                *slot = code % k;
                code /= k;
            }
            Word::new(syms)
        })
    }

    /// All words with length in `0..=max_len`, shortest first.
    pub fn words_up_to(&self, max_len: usize) -> impl Iterator<Item = Word> + '_ {
        (0..=max_len).flat_map(move |l| self.words_of_len(l))
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.symbols.join(","))
    }
}

/// A finite sequence of symbol ids. Positions are 1-based in the learning
/// encodings; [`Word::at`] follows that convention.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<SymbolId>);

impl Word {
    pub fn new(syms: Vec<SymbolId>) -> Self {
        Word(syms)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[SymbolId] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SymbolId> {
        self.0.iter()
    }

    /// Symbol at 1-based position `t`.
    pub fn at(&self, t: usize) -> SymbolId {
        self.0[t - 1]
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn push(&mut self, sym: SymbolId) {
        self.0.push(sym);
    }

    pub fn pop(&mut self) -> Option<SymbolId> {
        self.0.pop()
    }

    pub fn extended(&self, sym: SymbolId) -> Word {
        let mut w = self.clone();
        w.push(sym);
        w
    }

    /// Shortest-first, then lexicographic over symbol ids.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl From<Vec<SymbolId>> for Word {
    fn from(v: Vec<SymbolId>) -> Self {
        Word(v)
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a SymbolId;
    type IntoIter = std::slice::Iter<'a, SymbolId>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("missing `alphabet:` header")]
    MissingHeader,
    #[error("malformed header: {0}")]
    BadHeader(AlphabetError),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("input is not valid UTF-8")]
    Utf8,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SampleError {
    #[error("symbol id {0} is outside the alphabet")]
    SymbolOutOfRange(SymbolId),
    #[error("the empty word is not allowed in LTLf mode")]
    EmptyWordInLtlfMode,
}

/// An alphabet together with a set of positive words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    alphabet: Alphabet,
    positives: BTreeSet<Word>,
}

impl Sample {
    pub fn new<I>(alphabet: Alphabet, words: I) -> Result<Self, SampleError>
    where
        I: IntoIterator<Item = Word>,
    {
        let mut positives = BTreeSet::new();
        for w in words {
            if let Some(&bad) = w.iter().find(|&&s| s >= alphabet.len()) {
                return Err(SampleError::SymbolOutOfRange(bad));
            }
            positives.insert(w);
        }
        Ok(Sample {
            alphabet,
            positives,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn positives(&self) -> &BTreeSet<Word> {
        &self.positives
    }

    pub fn len(&self) -> usize {
        self.positives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positives.is_empty()
    }

    /// LTLf satisfaction is only defined on nonempty words.
    pub fn check_ltlf_mode(&self) -> Result<(), SampleError> {
        if self.positives.contains(&Word::empty()) {
            Err(SampleError::EmptyWordInLtlfMode)
        } else {
            Ok(())
        }
    }

    /// Positives ordered shortest first.
    pub fn shortlex(&self) -> Vec<Word> {
        let mut v: Vec<Word> = self.positives.iter().cloned().collect();
        v.sort_by(Word::shortlex_cmp);
        v
    }
}

pub fn parse_sample(bytes: &[u8]) -> Result<Sample, ParseError> {
    let text = std::str::from_utf8(bytes).map_err(|_| ParseError {
        line: 1,
        kind: ParseErrorKind::Utf8,
    })?;
    let mut lines = text.lines().enumerate();
    let alphabet = loop {
        match lines.next() {
            None => {
                return Err(ParseError {
                    line: 1,
                    kind: ParseErrorKind::MissingHeader,
                })
            }
            Some((_, l)) if l.starts_with('#') => continue,
            Some((i, l)) => {
                let rest = l
                    .trim_start()
                    .strip_prefix("alphabet:")
                    .ok_or(ParseError {
                        line: i + 1,
                        kind: ParseErrorKind::MissingHeader,
                    })?;
                break Alphabet::from_list(rest.trim()).map_err(|e| ParseError {
                    line: i + 1,
                    kind: ParseErrorKind::BadHeader(e),
                })?;
            }
        }
    };
    let mut words = BTreeSet::new();
    for (i, line) in lines {
        if line.starts_with('#') {
            continue;
        }
        let word = parse_word(&alphabet, line.trim()).map_err(|kind| ParseError {
            line: i + 1,
            kind,
        })?;
        words.insert(word);
    }
    Ok(Sample {
        alphabet,
        positives: words,
    })
}

/// Parses one word in sample-file notation.
pub fn parse_word(alphabet: &Alphabet, text: &str) -> Result<Word, ParseErrorKind> {
    if text.is_empty() {
        return Ok(Word::empty());
    }
    let lookup = |name: &str| {
        alphabet
            .id(name)
            .ok_or_else(|| ParseErrorKind::UnknownSymbol(name.to_string()))
    };
    if text.contains(',') {
        text.split(',').map(|s| lookup(s.trim())).collect::<Result<Vec<_>, _>>().map(Word)
    } else if alphabet.single_char() {
        text.chars()
            .map(|c| lookup(c.encode_utf8(&mut [0; 4])))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    } else {
        lookup(text).map(|s| Word(vec![s]))
    }
}

pub fn serialize_sample(sample: &Sample) -> String {
    let mut out = format!("alphabet: {}\n", sample.alphabet);
    for w in sample.shortlex() {
        out.push_str(&sample.alphabet.render(&w));
        out.push('\n');
    }
    out
}

/// Every prefix (including ε and the word itself) of every word in `words`.
pub fn prefixes<'a, I>(words: I) -> BTreeSet<Word>
where
    I: IntoIterator<Item = &'a Word>,
{
    let mut out = BTreeSet::new();
    for w in words {
        for len in 0..=w.len() {
            out.insert(w.prefix(len));
        }
    }
    out
}

/// The shortlex-smallest word of `words` rejected by `covered`.
pub fn shortest_not_covered<'a, I, F>(words: I, mut covered: F) -> Option<Word>
where
    I: IntoIterator<Item = &'a Word>,
    F: FnMut(&Word) -> bool,
{
    let mut best: Option<&Word> = None;
    for w in words {
        if best.is_some_and(|b| w.shortlex_cmp(b) != Ordering::Less) {
            continue;
        }
        if !covered(w) {
            best = Some(w);
        }
    }
    best.cloned()
}
