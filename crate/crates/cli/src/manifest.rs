//! Bench manifests.
//!
//! A manifest is line-oriented `key = value` text. `#` starts a comment.
//! Keys before the first `[instance <id>]` header are defaults for every
//! instance; keys inside a block override them for that instance only.
//!
//! | key | meaning | default |
//! |---|---|---|
//! | `mode` | `dfa` or `ltlf` | `dfa` |
//! | `source` | `random-dfa <states>`, `formula <ltlf>`, `file <path>`, `uav <cluster>` | required |
//! | `alphabet` | comma-separated symbols | `a,b`; formulas use `a0..ak` |
//! | `count` | positive words to generate | 100 |
//! | `min_len`, `max_len` | word length range | 1, 10 |
//! | `seed` | sample and solver seed | 0 |
//! | `size_bound` | bound n | target size for `random-dfa`, else required |
//! | `horizon` | LTLf horizon K | 8 |
//! | `timeout` | seconds per run | none |
//! | `algorithms` | comma-separated `sym`, `ceg`, `ssym` | `sym,ceg` (dfa), `ssym,ceg` (ltlf) |
//! | `oracle_max_size` | largest size the minimality oracle enumerates | 3 |
//! | `audit` | check per-iteration invariants | false |
//!
//! File paths are relative to the manifest's directory.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, clap::ValueEnum)]
pub enum Mode {
    Dfa,
    Ltlf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, clap::ValueEnum)]
pub enum Algo {
    Sym,
    Ceg,
    Ssym,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Dfa => "dfa",
            Mode::Ltlf => "ltlf",
        })
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algo::Sym => "sym",
            Algo::Ceg => "ceg",
            Algo::Ssym => "ssym",
        })
    }
}

impl Algo {
    fn parse(s: &str) -> Result<Algo> {
        match s {
            "sym" => Ok(Algo::Sym),
            "ceg" => Ok(Algo::Ceg),
            "ssym" => Ok(Algo::Ssym),
            _ => bail!("unknown algorithm `{s}`"),
        }
    }

    /// Rejects the fully symbolic LTLf learner, which needs a QBF solver.
    pub fn check_mode(self, mode: Mode) -> Result<()> {
        if mode == Mode::Ltlf && self == Algo::Sym {
            bail!("`--algo sym` is not available in ltlf mode: the fully symbolic LTLf learner needs quantified Boolean solving and is out of scope; use ssym or ceg");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    RandomDfa(usize),
    Formula(String),
    File(PathBuf),
    Uav(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub id: String,
    pub mode: Mode,
    pub source: Source,
    pub alphabet: Option<String>,
    pub count: usize,
    pub min_len: usize,
    pub max_len: usize,
    pub seed: u64,
    pub size_bound: usize,
    pub horizon: usize,
    pub timeout: Option<f64>,
    pub algorithms: Vec<Algo>,
    pub oracle_max_size: usize,
    pub audit: bool,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Manifest {
    pub instances: Vec<Instance>,
}

const KEYS: [&str; 14] = [
    "mode",
    "source",
    "alphabet",
    "count",
    "min_len",
    "max_len",
    "seed",
    "size_bound",
    "horizon",
    "timeout",
    "algorithms",
    "oracle_max_size",
    "audit",
    "id",
];

type Block = BTreeMap<String, (usize, String)>;

impl Manifest {
    pub fn load(path: &Path) -> Result<Manifest> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read manifest {}", path.display()))?;
        Manifest::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn parse(text: &str, base: &Path) -> Result<Manifest> {
        let mut defaults: Block = BTreeMap::new();
        let mut blocks: Vec<(usize, String, Block)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(h) = line.strip_prefix('[') {
                let h = h.strip_suffix(']').ok_or_else(|| anyhow!("line {lineno}: unterminated header"))?;
                let id = h
                    .trim()
                    .strip_prefix("instance")
                    .map(str::trim)
                    .filter(|id| !id.is_empty())
                    .ok_or_else(|| anyhow!("line {lineno}: expected `[instance <id>]`"))?;
                if blocks.iter().any(|(_, b, _)| b == id) {
                    bail!("line {lineno}: duplicate instance id `{id}`");
                }
                blocks.push((lineno, id.to_string(), BTreeMap::new()));
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {lineno}: expected `key = value`"))?;
            let (k, v) = (k.trim(), v.trim());
            if !KEYS.contains(&k) || k == "id" {
                bail!("line {lineno}: unknown key `{k}`");
            }
            let target = match blocks.last_mut() {
                Some((_, _, b)) => b,
                None => &mut defaults,
            };
            if target.insert(k.to_string(), (lineno, v.to_string())).is_some() {
                bail!("line {lineno}: `{k}` given twice");
            }
        }
        let instances = blocks
            .into_iter()
            .map(|(lineno, id, block)| {
                let mut merged = defaults.clone();
                merged.extend(block);
                build(&id, &merged, base).with_context(|| format!("instance `{id}` (line {lineno})"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Manifest { instances })
    }
}

fn build(id: &str, kv: &Block, base: &Path) -> Result<Instance> {
    let get = |k: &str| kv.get(k).map(|(_, v)| v.as_str());
    fn num<T: std::str::FromStr>(kv: &Block, k: &str, default: T) -> Result<T> {
        match kv.get(k) {
            None => Ok(default),
            Some((l, v)) => v.parse().map_err(|_| anyhow!("line {l}: `{k}` must be a number, got `{v}`")),
        }
    }
    let mode = match get("mode").unwrap_or("dfa") {
        "dfa" => Mode::Dfa,
        "ltlf" => Mode::Ltlf,
        other => bail!("unknown mode `{other}`"),
    };
    let source_text = get("source").ok_or_else(|| anyhow!("missing `source`"))?;
    let (kind, arg) = source_text.split_once(char::is_whitespace).unwrap_or((source_text, ""));
    let arg = arg.trim();
    let source = match kind {
        "random-dfa" => Source::RandomDfa(arg.parse().map_err(|_| anyhow!("`random-dfa` needs a state count"))?),
        "formula" if !arg.is_empty() => Source::Formula(arg.to_string()),
        "file" if !arg.is_empty() => Source::File(base.join(arg)),
        "uav" => Source::Uav(arg.parse().map_err(|_| anyhow!("`uav` needs a cluster number"))?),
        _ => bail!("bad source `{source_text}`"),
    };
    let size_bound = match (&source, kv.get("size_bound")) {
        (_, Some(_)) => num(kv, "size_bound", 0)?,
        (Source::RandomDfa(n), None) => *n,
        _ => bail!("missing `size_bound`"),
    };
    if size_bound == 0 {
        bail!("`size_bound` must be at least 1");
    }
    let algorithms = match get("algorithms") {
        Some(list) => list.split(',').map(|s| Algo::parse(s.trim())).collect::<Result<Vec<_>>>()?,
        None if mode == Mode::Dfa => vec![Algo::Sym, Algo::Ceg],
        None => vec![Algo::Ssym, Algo::Ceg],
    };
    for a in &algorithms {
        a.check_mode(mode)?;
    }
    let audit = match get("audit").unwrap_or("false") {
        "true" => true,
        "false" => false,
        other => bail!("`audit` must be true or false, got `{other}`"),
    };
    let timeout = match kv.get("timeout") {
        None => None,
        Some(_) => Some(num::<f64>(kv, "timeout", 0.0)?).filter(|t| t.is_finite() && *t >= 0.0),
    };
    Ok(Instance {
        id: id.to_string(),
        mode,
        source,
        alphabet: get("alphabet").map(String::from),
        count: num(kv, "count", 100)?,
        min_len: num(kv, "min_len", 1)?,
        max_len: num(kv, "max_len", 10)?,
        seed: num(kv, "seed", 0)?,
        size_bound,
        horizon: num(kv, "horizon", 8)?,
        timeout,
        algorithms,
        oracle_max_size: num(kv, "oracle_max_size", 3)?,
        audit,
    })
}
