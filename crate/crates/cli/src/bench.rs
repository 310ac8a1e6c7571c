//! Running learners over manifests and reporting the results.
//!
//! CSV columns, in order: `instance, mode, algorithm, seed, size_bound,
//! words, model_size, iterations, solver_calls, wall_time_s,
//! counterexamples, termination, verdict, model`. Rows are sorted by
//! manifest order, then by the instance's algorithm order, so the file is
//! identical across runs and `--jobs` settings. `wall_time_s` is left blank
//! when timings are disabled. `termination` is one of `minimal`,
//! `size-exhausted`, `timeout`, `no-model`, `no-sample` or `error`.

use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use anyhow::{Context, Result};
use occlearn::dfa::Dfa;
use occlearn::dfalearn::{learn_dfa, DfaAlgorithm};
use occlearn::learn::{LearnConfig, LearnError, Learned, RunStats, Termination};
use occlearn::ltlf::LtlfFormula;
use occlearn::ltlflearn::{learn_ltlf, LtlfAlgorithm};
use occlearn::oracle::{check_dfa_minimal, check_ltlf_minimal, Verdict};
use occlearn::sat::SolverConfig;
use occlearn::words::{parse_sample, Alphabet, Sample};
use serde::Serialize;

use crate::gen::{self, Generated};
use crate::manifest::{Algo, Instance, Manifest, Mode, Source};
use crate::patterns::pattern_alphabet;

/// Largest size the enumeration oracles accept.
pub const ORACLE_LIMIT: usize = 4;

#[derive(Clone, Debug, PartialEq)]
pub enum Model {
    Dfa(Dfa),
    Ltlf(LtlfFormula),
}

impl Model {
    pub fn size(&self) -> usize {
        match self {
            Model::Dfa(d) => d.trim().num_states(),
            Model::Ltlf(f) => f.size(),
        }
    }

    /// One-line rendering for CSV cells.
    pub fn summary(&self) -> String {
        match self {
            Model::Dfa(d) => serde_json::to_string(&serde_json::from_str::<serde_json::Value>(&d.to_json()).expect("valid json"))
                .expect("serializable"),
            Model::Ltlf(f) => f.to_string(),
        }
    }
}

pub fn dfa_algorithm(algo: Algo) -> DfaAlgorithm {
    match algo {
        Algo::Sym => DfaAlgorithm::Symbolic,
        Algo::Ceg => DfaAlgorithm::CounterexampleGuided,
        Algo::Ssym => DfaAlgorithm::SemiSymbolic,
    }
}

pub fn run_learner(sample: &Sample, mode: Mode, algo: Algo, cfg: &LearnConfig) -> Result<Learned<Model>, LearnError> {
    match mode {
        Mode::Dfa => learn_dfa(sample, cfg, dfa_algorithm(algo)).map(|l| Learned {
            model: Model::Dfa(l.model),
            stats: l.stats,
        }),
        Mode::Ltlf => {
            let a = match algo {
                Algo::Ceg => LtlfAlgorithm::CounterexampleGuided,
                Algo::Ssym => LtlfAlgorithm::SemiSymbolic,
                Algo::Sym => return Err(LearnError::Config("the fully symbolic LTLf learner is out of scope".into())),
            };
            learn_ltlf(sample, cfg, a).map(|l| Learned {
                model: Model::Ltlf(l.model),
                stats: l.stats,
            })
        }
    }
}

/// Runs the enumeration oracle at the given bounds.
pub fn oracle_verdict(sample: &Sample, model: &Model, n: usize, max_size: usize, algo: Algo, horizon: usize) -> Verdict {
    if max_size > ORACLE_LIMIT {
        return Verdict::Skipped;
    }
    match model {
        Model::Dfa(d) if n <= max_size => check_dfa_minimal(sample, d, n, u128::MAX),
        Model::Dfa(_) => Verdict::Skipped,
        Model::Ltlf(f) => {
            let h = (algo == Algo::Ssym).then_some(horizon);
            check_ltlf_minimal(sample, f, n, max_size, &LearnConfig::new(n).operators, h)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub instance: String,
    pub mode: String,
    pub algorithm: String,
    pub seed: u64,
    pub size_bound: usize,
    pub words: usize,
    pub model_size: usize,
    pub iterations: usize,
    pub solver_calls: usize,
    pub wall_time_s: Option<f64>,
    pub counterexamples: usize,
    pub termination: String,
    pub verdict: String,
    pub model: String,
}

impl BenchRow {
    /// True when the run produced a model that can be compared.
    pub fn completed(&self) -> bool {
        matches!(self.termination.as_str(), "minimal" | "size-exhausted" | "timeout")
    }
}

pub fn instance_sample(inst: &Instance) -> Result<Generated> {
    let alphabet = |default: &str| -> Result<Alphabet> {
        Ok(Alphabet::from_list(inst.alphabet.as_deref().unwrap_or(default))?)
    };
    match &inst.source {
        Source::RandomDfa(n) => {
            gen::from_random_dfa(*n, &alphabet("a,b")?, inst.count, inst.min_len, inst.max_len, inst.seed).map(|(_, g)| g)
        }
        Source::Formula(text) => {
            let sigma = match &inst.alphabet {
                Some(a) => Alphabet::from_list(a)?,
                None => pattern_alphabet(text),
            };
            let f = LtlfFormula::parse(&sigma, text)?;
            gen::from_formula(&f, inst.count, inst.min_len, inst.max_len, inst.seed)
        }
        Source::File(path) => {
            let bytes = std::fs::read(path).with_context(|| format!("cannot read sample {}", path.display()))?;
            Ok(Generated {
                sample: parse_sample(&bytes).with_context(|| format!("bad sample {}", path.display()))?,
                warning: None,
            })
        }
        Source::Uav(cluster) => gen::uav_traces(*cluster, inst.count, inst.min_len, inst.max_len, inst.seed),
    }
}

pub fn learn_config(inst: &Instance) -> LearnConfig {
    let mut cfg = LearnConfig::new(inst.size_bound);
    cfg.horizon = inst.horizon;
    cfg.timeout = inst.timeout.map(Duration::from_secs_f64);
    cfg.solver = SolverConfig::with_seed(inst.seed);
    cfg.audit = inst.audit;
    cfg
}

#[derive(Clone, Debug, Default)]
pub struct BenchOptions {
    pub jobs: usize,
    pub timings: bool,
    /// Forces the per-iteration audit on every run.
    pub audit: bool,
    /// Replaces the in-process solver on every run.
    pub solver: Option<SolverConfig>,
}

fn blank_row(inst: &Instance, algo: Algo, words: usize, termination: &str) -> BenchRow {
    BenchRow {
        instance: inst.id.clone(),
        mode: inst.mode.to_string(),
        algorithm: algo.to_string(),
        seed: inst.seed,
        size_bound: inst.size_bound,
        words,
        model_size: 0,
        iterations: 0,
        solver_calls: 0,
        wall_time_s: None,
        counterexamples: 0,
        termination: termination.into(),
        verdict: Verdict::Skipped.label().into(),
        model: String::new(),
    }
}

fn row_for(inst: &Instance, algo: Algo, sample: &Sample, opts: &BenchOptions) -> BenchRow {
    let mut cfg = learn_config(inst);
    cfg.audit |= opts.audit;
    if let Some(s) = &opts.solver {
        cfg.solver = SolverConfig { seed: inst.seed, ..s.clone() };
    }
    let mut row = blank_row(inst, algo, sample.len(), "");
    let fill = |row: &mut BenchRow, stats: &RunStats| {
        row.iterations = stats.iterations;
        row.solver_calls = stats.solver_calls;
        row.counterexamples = stats.counterexamples;
        row.wall_time_s = opts.timings.then_some(stats.wall_time_s);
    };
    match run_learner(sample, inst.mode, algo, &cfg) {
        Ok(out) => {
            fill(&mut row, &out.stats);
            row.model_size = out.model.size();
            row.termination = out.stats.termination.to_string();
            if out.stats.termination == Termination::Minimal {
                row.verdict = oracle_verdict(sample, &out.model, inst.size_bound, inst.oracle_max_size, algo, inst.horizon)
                    .label()
                    .into();
            }
            row.model = out.model.summary();
        }
        Err(LearnError::NoModel { termination, .. }) => {
            row.termination = match termination {
                Termination::Timeout => "timeout".into(),
                _ => "no-model".into(),
            };
        }
        Err(e) => {
            row.termination = "error".into();
            row.model = e.to_string();
        }
    }
    row
}

/// Runs every (instance, algorithm) pair on up to `opts.jobs` threads.
/// Returns the rows plus any sample-generation warnings.
pub fn run_bench(manifest: &Manifest, opts: &BenchOptions) -> (Vec<BenchRow>, Vec<String>) {
    let mut notes = Vec::new();
    let mut tasks = Vec::new();
    let mut rows: Vec<Option<BenchRow>> = Vec::new();
    let samples: Vec<Option<Sample>> = manifest
        .instances
        .iter()
        .map(|inst| match instance_sample(inst) {
            Ok(g) => {
                if let Some(w) = g.warning {
                    notes.push(format!("{}: {w}", inst.id));
                }
                Some(g.sample)
            }
            Err(e) => {
                notes.push(format!("{}: {e:#}", inst.id));
                None
            }
        })
        .collect();
    for (i, inst) in manifest.instances.iter().enumerate() {
        for &algo in &inst.algorithms {
            if samples[i].is_some() {
                tasks.push((rows.len(), i, algo));
            }
            rows.push(samples[i].is_none().then(|| blank_row(inst, algo, 0, "no-sample")));
        }
    }
    let next = AtomicUsize::new(0);
    let slots = Mutex::new(rows);
    let workers = opts.jobs.max(1).min(tasks.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let t = next.fetch_add(1, Ordering::SeqCst);
                let Some(&(slot, i, algo)) = tasks.get(t) else { break };
                let sample = samples[i].as_ref().expect("task has a sample");
                let row = row_for(&manifest.instances[i], algo, sample, opts);
                slots.lock().expect("no poisoned workers")[slot] = Some(row);
            });
        }
    });
    let rows = slots.into_inner().expect("no poisoned workers").into_iter().map(|r| r.expect("every slot filled")).collect();
    (rows, notes)
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    if rows.is_empty() {
        w.write_record([
            "instance",
            "mode",
            "algorithm",
            "seed",
            "size_bound",
            "words",
            "model_size",
            "iterations",
            "solver_calls",
            "wall_time_s",
            "counterexamples",
            "termination",
            "verdict",
            "model",
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(rows: &[BenchRow]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}

pub fn geometric_mean(xs: &[f64]) -> Option<f64> {
    if xs.is_empty() || xs.iter().any(|x| x.is_nan() || *x <= 0.0) {
        return None;
    }
    Some((xs.iter().map(|x| x.ln()).sum::<f64>() / xs.len() as f64).exp())
}

pub fn median(xs: &[f64]) -> Option<f64> {
    let mut v: Vec<f64> = xs.iter().copied().filter(|x| !x.is_nan()).collect();
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    Some(if v.len() % 2 == 1 { v[mid] } else { (v[mid - 1] + v[mid]) / 2.0 })
}

/// Per-instance comparison of algorithm `num` against `den`.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioSummary {
    pub pairs: usize,
    /// (den, num) iteration counts per instance.
    pub iterations: Vec<(f64, f64)>,
    /// (den, num) wall times per instance; empty without timings.
    pub times: Vec<(f64, f64)>,
    pub iter_geomean: Option<f64>,
    pub time_geomean: Option<f64>,
    pub time_median: Option<f64>,
    /// Instances where `num` needed no more iterations than `den`.
    pub num_not_more_iterations: usize,
}

pub fn ratio_summary(rows: &[BenchRow], num: Algo, den: Algo) -> RatioSummary {
    let (num, den) = (num.to_string(), den.to_string());
    let mut iterations = Vec::new();
    let mut times = Vec::new();
    for a in rows.iter().filter(|r| r.algorithm == num && r.completed()) {
        let Some(b) = rows.iter().find(|r| r.algorithm == den && r.instance == a.instance && r.completed()) else {
            continue;
        };
        iterations.push((b.iterations.max(1) as f64, a.iterations.max(1) as f64));
        if let (Some(ta), Some(tb)) = (a.wall_time_s, b.wall_time_s) {
            times.push((tb.max(1e-6), ta.max(1e-6)));
        }
    }
    let ratios = |v: &[(f64, f64)]| v.iter().map(|(d, n)| n / d).collect::<Vec<_>>();
    RatioSummary {
        pairs: iterations.len(),
        num_not_more_iterations: iterations.iter().filter(|(d, n)| n <= d).count(),
        iter_geomean: geometric_mean(&ratios(&iterations)),
        time_geomean: geometric_mean(&ratios(&times)),
        time_median: median(&ratios(&times)),
        iterations,
        times,
    }
}
