//! Configuration, statistics and the bookkeeping shared by every learner.

use std::fmt;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::ltlf::{FormulaError, Op};
use crate::sat::{CnfProblem, Model, SatError, SolveOutcome, SolverConfig};
use crate::words::SampleError;

#[derive(Clone, Debug)]
pub struct LearnConfig {
    /// Largest model size `n` (states or formula nodes).
    pub size_bound: usize,
    /// Wall-clock budget for the whole run.
    pub timeout: Option<Duration>,
    pub solver: SolverConfig,
    /// Length bound `K` of the symbolic word in the semi-symbolic LTLf learner.
    pub horizon: usize,
    /// Operator labels available to LTLf candidates, besides the atoms.
    pub operators: Vec<Op>,
    /// Hard cap on main-loop iterations; exceeding it is an error.
    pub max_iterations: usize,
    /// Check every per-iteration invariant and fail on the first violation.
    pub audit: bool,
    /// Write each CNF and each decoded hypothesis here.
    pub dump_dir: Option<PathBuf>,
}

impl LearnConfig {
    pub fn new(size_bound: usize) -> Self {
        LearnConfig {
            size_bound,
            timeout: None,
            solver: SolverConfig::default(),
            horizon: 8,
            operators: Op::OPERATORS.to_vec(),
            max_iterations: 1_000_000,
            audit: false,
            dump_dir: None,
        }
    }

    pub(crate) fn validate(&self) -> Result<(), LearnError> {
        if self.size_bound == 0 {
            return Err(LearnError::Config("size bound must be at least 1".into()));
        }
        if self.horizon == 0 {
            return Err(LearnError::Config("horizon must be at least 1".into()));
        }
        if let Some(op) = self.operators.iter().find(|op| matches!(op, Op::Atom(_))) {
            return Err(LearnError::Config(format!("{op:?} is not an operator")));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    /// Every size up to the bound was exhausted.
    #[default]
    Minimal,
    /// No model of any size up to the bound fits the sample.
    SizeExhausted,
    Timeout,
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Termination::Minimal => "minimal",
            Termination::SizeExhausted => "size-exhausted",
            Termination::Timeout => "timeout",
        })
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RunStats {
    /// Main-loop iterations; each one makes exactly one solver call.
    pub iterations: usize,
    pub solver_calls: usize,
    /// Negative words generated.
    pub counterexamples: usize,
    /// Positive words moved into the working subset.
    pub positives_used: usize,
    /// Candidates blocked because they matched the hypothesis.
    pub discarded: usize,
    /// Hypothesis replacements.
    pub hypotheses: usize,
    pub iteration_times: Vec<f64>,
    pub model_size: usize,
    pub termination: Termination,
    pub wall_time_s: f64,
}

#[derive(Debug, Error)]
pub enum LearnError {
    #[error(transparent)]
    Sat(#[from] SatError),
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invariant violated: {0}")]
    Audit(String),
    #[error("iteration cap of {0} reached")]
    IterationCap(usize),
    #[error("no model of size at most {bound} was found ({termination})")]
    NoModel { bound: usize, termination: Termination },
    #[error("cannot write debug dump: {0}")]
    Dump(#[from] std::io::Error),
}

/// The result of a learning run.
#[derive(Clone, Debug)]
pub struct Learned<M> {
    pub model: M,
    pub stats: RunStats,
}

pub(crate) enum Step {
    Sat(Model),
    Unsat,
    OutOfTime,
}

/// Clock, counters and debug output for one run.
pub(crate) struct Session<'a> {
    pub cfg: &'a LearnConfig,
    pub stats: RunStats,
    start: Instant,
    mark: Instant,
}

impl<'a> Session<'a> {
    pub fn new(cfg: &'a LearnConfig) -> Result<Self, LearnError> {
        cfg.validate()?;
        if let Some(dir) = &cfg.dump_dir {
            std::fs::create_dir_all(dir)?;
        }
        let now = Instant::now();
        Ok(Session {
            cfg,
            stats: RunStats::default(),
            start: now,
            mark: now,
        })
    }

    pub fn solve(&mut self, cnf: &CnfProblem) -> Result<Step, LearnError> {
        if self.stats.iterations >= self.cfg.max_iterations {
            return Err(LearnError::IterationCap(self.cfg.max_iterations));
        }
        let remaining = match self.cfg.timeout {
            Some(t) => match t.checked_sub(self.start.elapsed()) {
                Some(r) if !r.is_zero() => Some(r),
                _ => return Ok(Step::OutOfTime),
            },
            None => None,
        };
        self.stats.iterations += 1;
        self.stats.solver_calls += 1;
        if let Some(dir) = &self.cfg.dump_dir {
            let path = dir.join(format!("iter{:04}.cnf", self.stats.iterations));
            cnf.write_dimacs(std::io::BufWriter::new(std::fs::File::create(path)?), true)?;
        }
        let outcome = self.cfg.solver.solve(cnf, remaining)?;
        let now = Instant::now();
        self.stats.iteration_times.push((now - self.mark).as_secs_f64());
        self.mark = now;
        Ok(match outcome {
            SolveOutcome::Sat(model) => {
                if self.cfg.audit && !model.satisfies(cnf) {
                    return Err(LearnError::Audit("solver model violates the CNF".into()));
                }
                Step::Sat(model)
            }
            SolveOutcome::Unsat => Step::Unsat,
            SolveOutcome::TimedOut(_) => Step::OutOfTime,
        })
    }

    /// Fails with `msg` when auditing is on and `ok` does not hold.
    pub fn check(&self, ok: impl FnOnce() -> bool, msg: impl FnOnce() -> String) -> Result<(), LearnError> {
        if self.cfg.audit && !ok() {
            return Err(LearnError::Audit(msg()));
        }
        Ok(())
    }

    pub fn dump_hypothesis(&self, dot: &str) -> Result<(), LearnError> {
        if let Some(dir) = &self.cfg.dump_dir {
            std::fs::write(dir.join(format!("iter{:04}.dot", self.stats.iterations)), dot)?;
        }
        Ok(())
    }

    pub fn finish<M>(mut self, model: M, size: usize, termination: Termination) -> Learned<M> {
        self.stats.model_size = size;
        self.stats.termination = termination;
        self.stats.wall_time_s = self.start.elapsed().as_secs_f64();
        Learned {
            model,
            stats: self.stats,
        }
    }
}
