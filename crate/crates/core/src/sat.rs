//! Propositional variables, CNF construction and the solver boundary.
//!
//! Problems are built clause by clause and handed to a [`Solver`]: either the
//! in-process CDCL solver or an external executable that reads DIMACS CNF and
//! answers in the usual competition format (`s SATISFIABLE` / `v ... 0`).

use std::fmt;
use std::io::{self, Read, Write};
use std::ops::Not;
use std::path::PathBuf;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use batsat::{lbool, Callbacks, SolverInterface};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SatError {
    #[error("exactly-one over an empty variable list")]
    EmptyExactlyOne,
    #[error("DIMACS parse error on line {line}: {msg}")]
    Dimacs { line: usize, msg: String },
    #[error("solver process failed: {0}")]
    Process(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

/// A propositional variable; ids are dense and start at 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    pub fn id(self) -> u32 {
        self.0
    }

    pub fn pos(self) -> Lit {
        Lit(self.0 as i32)
    }

    pub fn neg(self) -> Lit {
        Lit(-(self.0 as i32))
    }

    pub fn lit(self, positive: bool) -> Lit {
        if positive {
            self.pos()
        } else {
            self.neg()
        }
    }
}

/// A literal in DIMACS convention: `+v` or `-v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(i32);

impl Lit {
    pub fn from_dimacs(x: i32) -> Option<Lit> {
        (x != 0).then_some(Lit(x))
    }

    pub fn var(self) -> Var {
        Var(self.0.unsigned_abs())
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn dimacs(self) -> i32 {
        self.0
    }
}

impl Not for Lit {
    type Output = Lit;
    fn not(self) -> Lit {
        Lit(-self.0)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, Default)]
pub struct VarPool {
    tags: Vec<String>,
}

impl VarPool {
    pub fn fresh(&mut self, tag: impl Into<String>) -> Var {
        self.tags.push(tag.into());
        Var(self.tags.len() as u32)
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    pub fn tag(&self, v: Var) -> &str {
        &self.tags[v.0 as usize - 1]
    }
}

/// A clause store over a [`VarPool`].
///
/// An empty clause is never stored: adding one allocates a fresh variable
/// and asserts both of its polarities.
#[derive(Clone, Debug, Default)]
pub struct CnfProblem {
    pool: VarPool,
    clauses: Vec<Vec<Lit>>,
}

impl CnfProblem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fresh(&mut self, tag: impl Into<String>) -> Var {
        self.pool.fresh(tag)
    }

    pub fn pool(&self) -> &VarPool {
        &self.pool
    }

    pub fn num_vars(&self) -> usize {
        self.pool.len()
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn add_clause<I: IntoIterator<Item = Lit>>(&mut self, lits: I) {
        let clause: Vec<Lit> = lits.into_iter().collect();
        debug_assert!(clause.iter().all(|l| l.var().0 as usize <= self.pool.len()));
        if clause.is_empty() {
            let bot = self.fresh("false");
            self.clauses.push(vec![bot.pos()]);
            self.clauses.push(vec![bot.neg()]);
        } else {
            self.clauses.push(clause);
        }
    }

    pub fn at_least_one(&mut self, vars: &[Var]) {
        self.add_clause(vars.iter().map(|v| v.pos()));
    }

    pub fn at_most_one(&mut self, vars: &[Var]) {
        for (i, a) in vars.iter().enumerate() {
            for b in &vars[i + 1..] {
                self.clauses.push(vec![a.neg(), b.neg()]);
            }
        }
    }

    /// One at-least-one clause plus the pairwise at-most-one clauses.
    pub fn exactly_one(&mut self, vars: &[Var]) -> Result<(), SatError> {
        if vars.is_empty() {
            return Err(SatError::EmptyExactlyOne);
        }
        self.at_least_one(vars);
        self.at_most_one(vars);
        Ok(())
    }

    /// Writes the problem in DIMACS CNF. With `tags`, a comment line naming
    /// every variable precedes the header.
    pub fn write_dimacs<W: Write>(&self, mut out: W, tags: bool) -> io::Result<()> {
        if tags {
            for (i, t) in self.pool.tags.iter().enumerate() {
                writeln!(out, "c {} {}", i + 1, t)?;
            }
        }
        writeln!(out, "p cnf {} {}", self.num_vars(), self.num_clauses())?;
        for c in &self.clauses {
            for l in c {
                write!(out, "{} ", l.0)?;
            }
            writeln!(out, "0")?;
        }
        Ok(())
    }

    pub fn to_dimacs(&self) -> String {
        let mut buf = Vec::new();
        self.write_dimacs(&mut buf, false).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("DIMACS output is ASCII")
    }
}

/// Reads a DIMACS CNF file. Variables mentioned beyond the header count are
/// allocated on demand.
pub fn parse_dimacs(text: &str) -> Result<CnfProblem, SatError> {
    let mut problem = CnfProblem::new();
    let mut declared: Option<(usize, usize)> = None;
    let mut current = Vec::new();
    let err = |line: usize, msg: &str| SatError::Dimacs {
        line: line + 1,
        msg: msg.to_string(),
    };
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 3 || parts[0] != "cnf" {
                return Err(err(i, "expected `p cnf <vars> <clauses>`"));
            }
            let v = parts[1].parse().map_err(|_| err(i, "bad variable count"))?;
            let c = parts[2].parse().map_err(|_| err(i, "bad clause count"))?;
            declared = Some((v, c));
            while problem.num_vars() < v {
                let n = problem.num_vars() + 1;
                problem.fresh(format!("v{n}"));
            }
            continue;
        }
        if declared.is_none() {
            return Err(err(i, "clause before header"));
        }
        for tok in line.split_whitespace() {
            let x: i32 = tok.parse().map_err(|_| err(i, "bad literal"))?;
            match Lit::from_dimacs(x) {
                None => problem.add_clause(std::mem::take(&mut current)),
                Some(l) => {
                    while problem.num_vars() < l.var().0 as usize {
                        let n = problem.num_vars() + 1;
                        problem.fresh(format!("v{n}"));
                    }
                    current.push(l);
                }
            }
        }
    }
    if !current.is_empty() {
        problem.add_clause(current);
    }
    Ok(problem)
}

/// A total assignment over the allocated variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    values: Vec<bool>,
}

impl Model {
    pub fn from_values(values: Vec<bool>) -> Self {
        Model { values }
    }

    pub fn value(&self, v: Var) -> bool {
        self.values[v.0 as usize - 1]
    }

    pub fn lit(&self, l: Lit) -> bool {
        self.value(l.var()) == l.is_positive()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn satisfies(&self, problem: &CnfProblem) -> bool {
        self.values.len() == problem.num_vars()
            && problem
                .clauses()
                .iter()
                .all(|c| c.iter().any(|&l| self.lit(l)))
    }

    /// The model as a DIMACS `v` line body.
    pub fn dimacs_values(&self) -> String {
        let mut s = String::new();
        for (i, &b) in self.values.iter().enumerate() {
            let x = (i + 1) as i64;
            s.push_str(&format!("{} ", if b { x } else { -x }));
        }
        s.push('0');
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Sat(Model),
    Unsat,
    TimedOut(Duration),
}

/// Anything that can decide a [`CnfProblem`] within an optional budget.
pub trait Solver {
    fn solve(&self, problem: &CnfProblem, budget: Option<Duration>) -> Result<SolveOutcome, SatError>;
}

struct Deadline(Option<Instant>);

impl Callbacks for Deadline {
    fn stop(&self) -> bool {
        self.0.is_some_and(|d| Instant::now() >= d)
    }
}

/// The bundled CDCL solver. Deterministic for a fixed seed.
#[derive(Clone, Debug)]
pub struct InProcessSolver {
    pub seed: u64,
}

impl Solver for InProcessSolver {
    fn solve(&self, problem: &CnfProblem, budget: Option<Duration>) -> Result<SolveOutcome, SatError> {
        let start = Instant::now();
        let opts = batsat::SolverOpts {
            // the seed only matters for randomized decisions, kept rare
            random_seed: (self.seed % 1_000_000_007) as f64 + 1.0,
            random_var_freq: 0.0,
            ..Default::default()
        };
        let mut solver = batsat::Solver::new(opts, Deadline(budget.map(|b| start + b)));
        let vars: Vec<batsat::Var> = (0..problem.num_vars())
            .map(|_| solver.new_var_default())
            .collect();
        let mut ok = true;
        for c in problem.clauses() {
            let mut lits: Vec<batsat::Lit> = c
                .iter()
                .map(|l| batsat::Lit::new(vars[l.var().0 as usize - 1], l.is_positive()))
                .collect();
            if !solver.add_clause_reuse(&mut lits) {
                ok = false;
                break;
            }
        }
        if !ok {
            return Ok(SolveOutcome::Unsat);
        }
        let res = solver.solve_limited(&[]);
        if res == lbool::TRUE {
            let values = vars.iter().map(|&v| solver.value_var(v) == lbool::TRUE).collect();
            Ok(SolveOutcome::Sat(Model { values }))
        } else if res == lbool::FALSE {
            Ok(SolveOutcome::Unsat)
        } else {
            Ok(SolveOutcome::TimedOut(start.elapsed()))
        }
    }
}

/// An external program invoked as `program args... <file.cnf>`.
#[derive(Clone, Debug)]
pub struct ExternalSolver {
    pub program: PathBuf,
    pub args: Vec<String>,
}

impl Solver for ExternalSolver {
    fn solve(&self, problem: &CnfProblem, budget: Option<Duration>) -> Result<SolveOutcome, SatError> {
        let start = Instant::now();
        let mut file = tempfile::Builder::new().suffix(".cnf").tempfile()?;
        problem.write_dimacs(io::BufWriter::new(file.as_file_mut()), false)?;
        file.as_file_mut().flush()?;
        let mut child = Command::new(&self.program)
            .args(&self.args)
            .arg(file.path())
            .stdin(Stdio::null())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|e| SatError::Process(format!("cannot start {}: {e}", self.program.display())))?;
        let mut stdout = child.stdout.take().expect("stdout is piped");
        let reader = std::thread::spawn(move || {
            let mut s = String::new();
            stdout.read_to_string(&mut s).map(|_| s)
        });
        let deadline = budget.map(|b| start + b);
        loop {
            if child.try_wait()?.is_some() {
                break;
            }
            if deadline.is_some_and(|d| Instant::now() >= d) {
                let _ = child.kill();
                let _ = child.wait();
                let _ = reader.join();
                return Ok(SolveOutcome::TimedOut(start.elapsed()));
            }
            std::thread::sleep(Duration::from_millis(2));
        }
        let output = reader
            .join()
            .map_err(|_| SatError::Process("output reader panicked".into()))??;
        parse_solver_output(&output, problem.num_vars())
    }
}

/// Interprets competition-format solver output.
pub fn parse_solver_output(output: &str, num_vars: usize) -> Result<SolveOutcome, SatError> {
    let mut status = None;
    let mut values = vec![false; num_vars];
    let mut seen_values = false;
    for line in output.lines() {
        let line = line.trim();
        if let Some(s) = line.strip_prefix("s ") {
            status = Some(s.trim().to_string());
        } else if let Some(v) = line.strip_prefix('v') {
            seen_values = true;
            for tok in v.split_whitespace() {
                let x: i64 = tok
                    .parse()
                    .map_err(|_| SatError::Process(format!("bad value token `{tok}`")))?;
                let idx = x.unsigned_abs() as usize;
                if idx >= 1 && idx <= num_vars {
                    values[idx - 1] = x > 0;
                }
            }
        }
    }
    match status.as_deref() {
        Some("SATISFIABLE") if seen_values => Ok(SolveOutcome::Sat(Model { values })),
        Some("SATISFIABLE") => Err(SatError::Process("SAT answer without a model".into())),
        Some("UNSATISFIABLE") => Ok(SolveOutcome::Unsat),
        Some(other) => Err(SatError::Process(format!("unexpected status `{other}`"))),
        None => Err(SatError::Process("no status line in solver output".into())),
    }
}

/// Which solver to use, plus the seed and per-call budget.
#[derive(Clone, Debug, Default)]
pub struct SolverConfig {
    pub external: Option<ExternalSolver>,
    pub seed: u64,
    pub per_call: Option<Duration>,
}

impl SolverConfig {
    pub fn with_seed(seed: u64) -> Self {
        SolverConfig {
            seed,
            ..Default::default()
        }
    }

    /// Solves with the tighter of the per-call budget and `remaining`.
    pub fn solve(&self, problem: &CnfProblem, remaining: Option<Duration>) -> Result<SolveOutcome, SatError> {
        let budget = match (self.per_call, remaining) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        match &self.external {
            Some(ext) => ext.solve(problem, budget),
            None => InProcessSolver { seed: self.seed }.solve(problem, budget),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(p: &CnfProblem) -> SolveOutcome {
        InProcessSolver { seed: 0 }.solve(p, None).unwrap()
    }

    #[test]
    fn exactly_one_shapes() {
        let mut p = CnfProblem::new();
        let x = p.fresh("x");
        p.exactly_one(&[x]).unwrap();
        assert_eq!(p.clauses(), &[vec![x.pos()]]);

        let mut p = CnfProblem::new();
        let (x, y) = (p.fresh("x"), p.fresh("y"));
        p.exactly_one(&[x, y]).unwrap();
        assert_eq!(p.clauses(), &[vec![x.pos(), y.pos()], vec![x.neg(), y.neg()]]);

        let mut p = CnfProblem::new();
        let vs: Vec<Var> = (0..3).map(|i| p.fresh(format!("v{i}"))).collect();
        p.exactly_one(&vs).unwrap();
        assert_eq!(p.num_clauses(), 4);
        assert!(matches!(p.exactly_one(&[]), Err(SatError::EmptyExactlyOne)));
    }

    #[test]
    fn exactly_one_exhaustive_up_to_six() {
        for k in 1..=6usize {
            let mut p = CnfProblem::new();
            let vs: Vec<Var> = (0..k).map(|i| p.fresh(format!("v{i}"))).collect();
            p.exactly_one(&vs).unwrap();
            let mut satisfying = 0;
            for bits in 0u32..(1 << k) {
                let m = Model::from_values((0..k).map(|i| bits >> i & 1 == 1).collect());
                let sat = m.satisfies(&p);
                assert_eq!(sat, bits.count_ones() == 1, "k={k} bits={bits:b}");
                satisfying += sat as usize;
            }
            assert_eq!(satisfying, k);
        }
    }

    #[test]
    fn unit_and_contradiction() {
        let mut p = CnfProblem::new();
        let x = p.fresh("x");
        p.add_clause([x.pos()]);
        match solve(&p) {
            SolveOutcome::Sat(m) => assert!(m.value(x)),
            other => panic!("{other:?}"),
        }
        p.add_clause([x.neg()]);
        assert_eq!(solve(&p), SolveOutcome::Unsat);
    }

    #[test]
    fn empty_clause_becomes_contradiction() {
        let mut p = CnfProblem::new();
        p.add_clause([]);
        assert!(p.clauses().iter().all(|c| !c.is_empty()));
        assert_eq!(solve(&p), SolveOutcome::Unsat);
    }

    #[test]
    fn dimacs_header_and_roundtrip() {
        let mut p = CnfProblem::new();
        let (x, y) = (p.fresh("x"), p.fresh("y"));
        p.add_clause([x.pos(), y.neg()]);
        p.add_clause([y.pos()]);
        let text = p.to_dimacs();
        assert_eq!(text, "p cnf 2 2\n1 -2 0\n2 0\n");
        let q = parse_dimacs(&text).unwrap();
        assert_eq!(q.clauses(), p.clauses());
        let mut tagged = Vec::new();
        p.write_dimacs(&mut tagged, true).unwrap();
        assert!(String::from_utf8(tagged).unwrap().starts_with("c 1 x\nc 2 y\np cnf 2 2\n"));
    }

    #[test]
    fn dimacs_errors() {
        assert!(parse_dimacs("1 2 0\n").is_err());
        assert!(parse_dimacs("p dnf 1 1\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 x 0\n").is_err());
    }

    #[test]
    fn solver_output_parsing() {
        let out = "c hello\ns SATISFIABLE\nv 1 -2\nv 3 0\n";
        match parse_solver_output(out, 3).unwrap() {
            SolveOutcome::Sat(m) => assert_eq!(m, Model::from_values(vec![true, false, true])),
            other => panic!("{other:?}"),
        }
        assert_eq!(parse_solver_output("s UNSATISFIABLE\n", 3).unwrap(), SolveOutcome::Unsat);
        assert!(parse_solver_output("garbage", 3).is_err());
        assert!(parse_solver_output("s SATISFIABLE\n", 3).is_err());
    }

    #[test]
    fn external_solver_failure_is_an_error() {
        let ext = ExternalSolver {
            program: PathBuf::from("/nonexistent/solver"),
            args: vec![],
        };
        let mut p = CnfProblem::new();
        let x = p.fresh("x");
        p.add_clause([x.pos()]);
        assert!(matches!(ext.solve(&p, None), Err(SatError::Process(_))));
        // `true` exits cleanly without printing a status line
        let ext = ExternalSolver {
            program: PathBuf::from("true"),
            args: vec![],
        };
        assert!(matches!(ext.solve(&p, None), Err(SatError::Process(_))));
    }

    #[test]
    fn deterministic_models() {
        let mut p = CnfProblem::new();
        let vs: Vec<Var> = (0..8).map(|i| p.fresh(format!("v{i}"))).collect();
        p.exactly_one(&vs[..4]).unwrap();
        p.exactly_one(&vs[4..]).unwrap();
        let a = InProcessSolver { seed: 7 }.solve(&p, None).unwrap();
        let b = InProcessSolver { seed: 7 }.solve(&p, None).unwrap();
        assert_eq!(a, b);
    }
}
