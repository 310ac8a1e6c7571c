use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use occlearn::learn::{LearnConfig, LearnError, Termination};
use occlearn::ltlf::LtlfFormula;
use occlearn::sat::{parse_dimacs, ExternalSolver, SolveOutcome, SolverConfig};
use occlearn::words::{parse_sample, serialize_sample, Alphabet};
use occlearn_cli::bench::{self, BenchOptions, Model};
use occlearn_cli::check::{check_model, formula_json, load_model};
use occlearn_cli::gen;
use occlearn_cli::manifest::{Algo, Manifest, Mode};
use occlearn_cli::patterns::{pattern_alphabet, BUNDLED_MANIFEST};
use occlearn_cli::svg;
use serde::Serialize;

const EXIT_TIMEOUT: u8 = 2;

#[derive(Parser)]
#[command(name = "occlearn", version, about = "Learn language-minimal DFAs and LTLf formulas from positive examples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Learn a model from a sample file.
    Learn(LearnArgs),
    /// Generate a sample of positive words.
    GenSample(GenArgs),
    /// Run a manifest of instances and write a CSV report.
    Bench(BenchArgs),
    /// Check that a saved model is a minimal description of a sample.
    Check(CheckArgs),
    /// Solve a DIMACS CNF file and print the answer in competition format.
    Solve(SolveArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Dot,
    Json,
}

#[derive(Args)]
struct SolverArgs {
    /// External DIMACS solver; called as `<program> <args...> <file.cnf>`.
    #[arg(long)]
    solver: Option<PathBuf>,
    /// Extra argument for the external solver (repeatable).
    #[arg(long = "solver-arg", allow_hyphen_values = true)]
    solver_args: Vec<String>,
}

impl SolverArgs {
    fn config(&self, seed: u64) -> SolverConfig {
        let mut cfg = SolverConfig::with_seed(seed);
        cfg.external = self.solver.as_ref().map(|p| ExternalSolver {
            program: p.clone(),
            args: self.solver_args.clone(),
        });
        cfg
    }
}

#[derive(Args)]
struct LearnArgs {
    #[arg(long, value_enum)]
    mode: Mode,
    #[arg(long, value_enum)]
    algo: Algo,
    #[arg(long)]
    size_bound: usize,
    /// Length bound of the separating word (ltlf only, default 8).
    #[arg(long)]
    horizon: Option<usize>,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    timeout: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    sample: PathBuf,
    /// Model output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "dot")]
    format: Format,
    /// Stats CSV file (default: stderr).
    #[arg(long)]
    stats: Option<PathBuf>,
    /// Check every per-iteration invariant.
    #[arg(long)]
    audit: bool,
    /// Write each CNF query and hypothesis into this directory.
    #[arg(long)]
    dump_dir: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
#[group(id = "source", required = true, multiple = false)]
struct GenSource {
    /// Random target DFA with this many states.
    #[arg(long)]
    from_random_dfa: Option<usize>,
    /// Target LTLf formula.
    #[arg(long)]
    from_formula: Option<String>,
    /// Synthetic UAV traces of the given cluster (0, 1 or 2).
    #[arg(long)]
    uav: Option<usize>,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    source: GenSource,
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 1)]
    min_len: usize,
    #[arg(long, default_value_t = 10)]
    max_len: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated symbols (default: a,b, or a0..ak for formulas).
    #[arg(long)]
    alphabet: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the random target DFA as DOT.
    #[arg(long)]
    target_out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Manifest file; omit to run the bundled LTLf pattern manifest.
    manifest: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// CSV output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write iteration and time scatter plots into this directory.
    #[arg(long)]
    plot_dir: Option<PathBuf>,
    /// Leave the wall-time column blank so reports are byte-identical.
    #[arg(long)]
    no_timings: bool,
    #[arg(long)]
    audit: bool,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
struct CheckArgs {
    /// DFA as DOT or JSON, or a formula as JSON or text.
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    sample: PathBuf,
    /// Bound n (default: the model's own size).
    #[arg(long)]
    size_bound: Option<usize>,
    /// Largest competitor size the oracle enumerates.
    #[arg(long, default_value_t = 3)]
    oracle_max_size: usize,
}

#[derive(Args)]
struct SolveArgs {
    cnf: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::FAILURE } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Learn(a) => cmd_learn(a),
        Command::GenSample(a) => cmd_gen_sample(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Check(a) => cmd_check(a),
        Command::Solve(a) => cmd_solve(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn render(model: &Model, format: Format) -> String {
    let mut s = match (model, format) {
        (Model::Dfa(d), Format::Text) => d.to_table(),
        (Model::Dfa(d), Format::Dot) => d.to_dot(),
        (Model::Dfa(d), Format::Json) => d.to_json(),
        (Model::Ltlf(f), Format::Text) => f.to_string(),
        (Model::Ltlf(f), Format::Dot) => f.to_dot(),
        (Model::Ltlf(f), Format::Json) => formula_json(f),
    };
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

#[derive(Serialize)]
struct StatsRow {
    mode: String,
    algorithm: String,
    seed: u64,
    size_bound: usize,
    words: usize,
    model_size: usize,
    iterations: usize,
    solver_calls: usize,
    wall_time_s: f64,
    counterexamples: usize,
    positives_used: usize,
    discarded: usize,
    hypotheses: usize,
    termination: String,
}

fn cmd_learn(a: LearnArgs) -> Result<u8> {
    a.algo.check_mode(a.mode)?;
    if a.mode == Mode::Dfa && a.horizon.is_some() {
        bail!("--horizon only applies to ltlf mode");
    }
    let bytes = fs::read(&a.sample).with_context(|| format!("cannot read sample {}", a.sample.display()))?;
    let sample = parse_sample(&bytes).with_context(|| format!("bad sample {}", a.sample.display()))?;
    if a.mode == Mode::Ltlf {
        sample.check_ltlf_mode()?;
    }
    let mut cfg = LearnConfig::new(a.size_bound);
    cfg.horizon = a.horizon.unwrap_or(cfg.horizon);
    cfg.timeout = match a.timeout {
        Some(t) if !(t.is_finite() && t >= 0.0) => bail!("--timeout must be a non-negative number of seconds"),
        t => t.map(Duration::from_secs_f64),
    };
    cfg.solver = a.solver.config(a.seed);
    cfg.audit = a.audit;
    cfg.dump_dir = a.dump_dir.clone();
    let out = match bench::run_learner(&sample, a.mode, a.algo, &cfg) {
        Ok(out) => out,
        Err(LearnError::NoModel {
            termination: Termination::Timeout,
            ..
        }) => {
            eprintln!("timeout: no hypothesis of size at most {} was reached", a.size_bound);
            return Ok(EXIT_TIMEOUT);
        }
        Err(e) => return Err(e.into()),
    };
    write_output(a.out.as_deref(), &render(&out.model, a.format))?;
    let s = &out.stats;
    let row = StatsRow {
        mode: a.mode.to_string(),
        algorithm: a.algo.to_string(),
        seed: a.seed,
        size_bound: a.size_bound,
        words: sample.len(),
        model_size: out.model.size(),
        iterations: s.iterations,
        solver_calls: s.solver_calls,
        wall_time_s: s.wall_time_s,
        counterexamples: s.counterexamples,
        positives_used: s.positives_used,
        discarded: s.discarded,
        hypotheses: s.hypotheses,
        termination: s.termination.to_string(),
    };
    let mut buf = Vec::new();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.serialize(&row)?;
        w.flush()?;
    }
    match &a.stats {
        Some(p) => fs::write(p, &buf).with_context(|| format!("cannot write {}", p.display()))?,
        None => io::stderr().write_all(&buf)?,
    }
    if s.termination == Termination::Timeout {
        eprintln!("timeout: returning the best hypothesis found so far");
        return Ok(EXIT_TIMEOUT);
    }
    Ok(0)
}

fn cmd_gen_sample(a: GenArgs) -> Result<u8> {
    let alphabet = |default: &str| Alphabet::from_list(a.alphabet.as_deref().unwrap_or(default));
    let generated = if let Some(n) = a.source.from_random_dfa {
        let (target, g) = gen::from_random_dfa(n, &alphabet("a,b")?, a.count, a.min_len, a.max_len, a.seed)?;
        if let Some(p) = &a.target_out {
            fs::write(p, target.to_dot()).with_context(|| format!("cannot write {}", p.display()))?;
        }
        g
    } else if let Some(text) = &a.source.from_formula {
        let sigma = match &a.alphabet {
            Some(list) => Alphabet::from_list(list)?,
            None => pattern_alphabet(text),
        };
        let f = LtlfFormula::parse(&sigma, text)?;
        gen::from_formula(&f, a.count, a.min_len, a.max_len, a.seed)?
    } else if let Some(cluster) = a.source.uav {
        gen::uav_traces(cluster, a.count, a.min_len, a.max_len, a.seed)?
    } else {
        bail!("no sample source given");
    };
    if let Some(w) = &generated.warning {
        eprintln!("warning: {w}");
    }
    write_output(a.out.as_deref(), &serialize_sample(&generated.sample))?;
    Ok(0)
}

fn cmd_bench(a: BenchArgs) -> Result<u8> {
    let manifest = match &a.manifest {
        Some(p) => Manifest::load(p)?,
        None => Manifest::parse(BUNDLED_MANIFEST, Path::new("."))?,
    };
    let opts = BenchOptions {
        jobs: a.jobs,
        timings: !a.no_timings,
        audit: a.audit,
        solver: a.solver.solver.is_some().then(|| a.solver.config(0)),
    };
    let (rows, notes) = bench::run_bench(&manifest, &opts);
    for n in &notes {
        eprintln!("note: {n}");
    }
    write_output(a.out.as_deref(), &bench::csv_string(&rows))?;
    if let Some(dir) = &a.plot_dir {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    }
    for (num, den) in [(Algo::Sym, Algo::Ceg), (Algo::Ssym, Algo::Ceg), (Algo::Sym, Algo::Ssym)] {
        let s = bench::ratio_summary(&rows, num, den);
        if s.pairs == 0 {
            continue;
        }
        let fmt = |v: Option<f64>| v.map_or("n/a".to_string(), |x| format!("{x:.3}"));
        eprintln!(
            "{num}/{den}: {} instances, iterations geomean {}, time geomean {}, time median {}, {num} used no more iterations on {}",
            s.pairs,
            fmt(s.iter_geomean),
            fmt(s.time_geomean),
            fmt(s.time_median),
            s.num_not_more_iterations
        );
        if let Some(dir) = &a.plot_dir {
            let plot = svg::scatter(&format!("iterations: {num} vs {den}"), &den.to_string(), &num.to_string(), &s.iterations);
            fs::write(dir.join(format!("iterations_{num}_{den}.svg")), plot)?;
            if !s.times.is_empty() {
                let plot = svg::scatter(&format!("time (s): {num} vs {den}"), &den.to_string(), &num.to_string(), &s.times);
                fs::write(dir.join(format!("time_{num}_{den}.svg")), plot)?;
            }
        }
    }
    let errors = rows.iter().filter(|r| r.termination == "error").count();
    if errors > 0 {
        bail!("{errors} runs failed; see the `model` column for messages");
    }
    if rows.iter().any(|r| r.verdict == "fail") {
        bail!("the minimality oracle rejected at least one result");
    }
    Ok(if rows.iter().any(|r| r.termination == "timeout") { EXIT_TIMEOUT } else { 0 })
}

fn cmd_check(a: CheckArgs) -> Result<u8> {
    let bytes = fs::read(&a.sample).with_context(|| format!("cannot read sample {}", a.sample.display()))?;
    let sample = parse_sample(&bytes).with_context(|| format!("bad sample {}", a.sample.display()))?;
    let model = load_model(&a.model, sample.alphabet())?;
    let report = check_model(&sample, &model, a.size_bound, a.oracle_max_size)?;
    match &report.not_description {
        None => println!("n-description: yes"),
        Some(why) => println!("n-description: no ({why})"),
    }
    println!("verdict: {}", report.verdict);
    if let Some(note) = &report.note {
        println!("note: {note}");
    }
    Ok(if report.verdict.label() == "fail" { 1 } else { 0 })
}

fn cmd_solve(a: SolveArgs) -> Result<u8> {
    let text = fs::read_to_string(&a.cnf).with_context(|| format!("cannot read {}", a.cnf.display()))?;
    let problem = parse_dimacs(&text)?;
    let mut out = io::stdout().lock();
    match SolverConfig::with_seed(a.seed).solve(&problem, None)? {
        SolveOutcome::Sat(model) => {
            writeln!(out, "s SATISFIABLE")?;
            writeln!(out, "v {}", model.dimacs_values())?;
        }
        SolveOutcome::Unsat => {
            writeln!(out, "s UNSATISFIABLE")?;
        }
        SolveOutcome::TimedOut(_) => {
            writeln!(out, "s UNKNOWN")?;
        }
    }
    Ok(0)
}
