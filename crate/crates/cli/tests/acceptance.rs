//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on failure.

use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use occlearn::dfa::{random_dfa, sample_positive_words, Dfa};
use occlearn::dfalearn::{encode_positive, encode_strictness, encode_structure, encode_subset, learn_dfa, DfaAlgorithm};
use occlearn::learn::{LearnConfig, Termination};
use occlearn::ltlf::{LtlfFormula, Op};
use occlearn::oracle::{check_dfa_minimal, formulas_up_to, Verdict};
use occlearn::sat::{CnfProblem, InProcessSolver, SolveOutcome, Solver};
use occlearn::words::{Alphabet, Sample, Word};
use occlearn_cli::bench::{csv_string, ratio_summary, run_bench, BenchOptions, BenchRow};
use occlearn_cli::manifest::{Algo, Manifest};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn ab() -> Alphabet {
    Alphabet::from_list("a,b").unwrap()
}

fn random_words(rng: &mut ChaCha8Rng, count: usize, max_len: usize) -> Vec<Word> {
    (0..count)
        .map(|_| {
            let len = rng.gen_range(0..=max_len);
            Word::new((0..len).map(|_| rng.gen_range(0..2)).collect())
        })
        .collect()
}

fn encoding_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut sat, mut bad) = (0, Vec::new());
    for round in 0..50u64 {
        let m = rng.gen_range(1..=3);
        let hyp = random_dfa(rng.gen_range(1..=m), &ab(), round);
        let words: Vec<Word> = match rng.gen_bool(0.5) {
            true => sample_positive_words(&hyp, 3, 0, 5, round).map(|s| s.into_iter().collect()).unwrap_or_default(),
            false => random_words(&mut rng, 2, 4),
        };
        let mut cnf = CnfProblem::new();
        let vars = encode_structure(&mut cnf, m, &ab());
        encode_positive(&mut cnf, &vars, &words);
        encode_subset(&mut cnf, &vars, &hyp);
        encode_strictness(&mut cnf, &vars, &hyp);
        if let SolveOutcome::Sat(model) = (InProcessSolver { seed: round }).solve(&cnf, None).unwrap() {
            sat += 1;
            let cand = vars.decode(&model, &ab());
            let accepts = words.iter().all(|w| cand.accepts(w));
            let subset = cand.is_subset(&hyp).unwrap();
            let sep = hyp.shortest_separating_word(&cand).unwrap().is_some_and(|w| w.len() <= m * m);
            if !(accepts && subset && sep) {
                bad.push(round);
            }
        }
    }
    Outcome {
        pass: bad.is_empty() && sat > 0,
        detail: format!("50 instances, {sat} satisfiable, {} audit failures", bad.len()),
    }
}

fn dfa_minimality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut failures = Vec::new();
    for i in 0..30 {
        let count = rng.gen_range(0..=8);
        let sample = Sample::new(ab(), random_words(&mut rng, count, 5)).unwrap();
        let n = rng.gen_range(1..=3);
        let cfg = LearnConfig::new(n);
        for algo in [DfaAlgorithm::Symbolic, DfaAlgorithm::CounterexampleGuided, DfaAlgorithm::SemiSymbolic] {
            let ok = match learn_dfa(&sample, &cfg, algo) {
                Ok(out) => {
                    out.stats.termination == Termination::Minimal
                        && check_dfa_minimal(&sample, &out.model, n, u128::MAX) == Verdict::Pass
                }
                Err(_) => false,
            };
            if !ok {
                failures.push(format!("sample {i} {algo:?}"));
            }
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: format!("90 runs over 30 samples, {} not certified minimal {:?}", failures.len(), failures),
    }
}

fn separating_word_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut pairs, mut unrelated, mut longest, mut violations) = (0, 0, 0, 0);
    let mut check = |big: &Dfa, small: &Dfa, n: usize| {
        let w = big.shortest_separating_word(small).unwrap().expect("strict inclusion");
        longest = longest.max(w.len());
        if w.len() > n * n {
            violations += 1;
        }
    };
    let raw = |rng: &mut ChaCha8Rng, n: usize| {
        let delta = (0..n).map(|_| (0..2).map(|_| rng.gen_range(0..n)).collect()).collect();
        Dfa::new(ab(), delta, (0..n).map(|_| rng.gen_bool(0.5)).collect()).unwrap()
    };
    // independently drawn pairs that happen to be strictly included
    for _ in 0..200_000 {
        if unrelated == 100 {
            break;
        }
        let n = rng.gen_range(1..=5);
        let (a, b) = (raw(&mut rng, n), raw(&mut rng, n));
        if b.is_strict_subset(&a).unwrap() {
            check(&a, &b, n);
            unrelated += 1;
        }
    }
    pairs += unrelated;
    // the rest share a transition table and drop accepting states
    let mut seed = 0;
    while pairs < 200 {
        seed += 1;
        let n = rng.gen_range(2..=5);
        let a = random_dfa(n, &ab(), seed);
        let delta: Vec<Vec<usize>> = (0..n).map(|q| (0..2).map(|s| a.next(q, s)).collect()).collect();
        let finals: Vec<bool> = (0..n).map(|q| a.is_final(q) && rng.gen_bool(0.5)).collect();
        let b = Dfa::new(ab(), delta, finals).unwrap();
        if b.is_strict_subset(&a).unwrap() {
            check(&a, &b, n);
            pairs += 1;
        }
    }
    Outcome {
        pass: violations == 0 && pairs == 200,
        detail: format!("{pairs} pairs ({unrelated} independent), longest separating word {longest}, {violations} over n²"),
    }
}

fn dfa_grid_manifest(audit: bool) -> Manifest {
    let mut text = format!("count = 100\nmin_len = 1\nmax_len = 10\nalgorithms = sym, ceg\naudit = {audit}\noracle_max_size = 0\n");
    for i in 0..8 {
        text.push_str(&format!("[instance dfa{i}]\nsource = random-dfa {}\nseed = {}\n", 2 + i % 3, 100 + i));
    }
    Manifest::parse(&text, Path::new(".")).unwrap()
}

const LTLF_PATTERNS: [&str; 6] = ["G !a0", "F a0", "G a0", "F a1 -> (!a0 U a1)", "G (a1 -> G !a0)", "G (a1 -> G a0)"];

fn ltlf_grid_manifest(audit: bool) -> Manifest {
    let mut text = format!(
        "mode = ltlf\nalphabet = a0,a1\ncount = 50\nmin_len = 6\nmax_len = 6\nsize_bound = 4\nhorizon = 6\n\
         algorithms = ssym, ceg\noracle_max_size = 3\naudit = {audit}\n"
    );
    for (i, p) in LTLF_PATTERNS.iter().enumerate() {
        text.push_str(&format!("[instance pattern{i}]\nsource = formula {p}\nseed = {}\n", 10 + i));
    }
    Manifest::parse(&text, Path::new(".")).unwrap()
}

fn timed_rows(manifest: &Manifest) -> Vec<BenchRow> {
    run_bench(manifest, &BenchOptions { jobs: 1, timings: true, ..Default::default() }).0
}

fn iteration_trend(rows: &[BenchRow]) -> Outcome {
    let s = ratio_summary(rows, Algo::Sym, Algo::Ceg);
    let geo = s.iter_geomean.unwrap_or(f64::INFINITY);
    let share = s.num_not_more_iterations as f64 / s.pairs.max(1) as f64;
    Outcome {
        pass: s.pairs == 8 && rows.len() == 16 && geo <= 0.5 && share >= 0.8,
        detail: format!(
            "{} instances, sym/ceg iteration geomean {geo:.3} (full-scale reference 0.14), sym <= ceg on {:.0}%",
            s.pairs,
            share * 100.0
        ),
    }
}

fn runtime_band(rows: &[BenchRow], iteration_ok: bool) -> Outcome {
    let s = ratio_summary(rows, Algo::Sym, Algo::Ceg);
    let geo = s.time_geomean.unwrap_or(f64::NAN);
    let in_band = (0.2..=5.0).contains(&geo);
    let how = if in_band { "inside" } else { "outside" };
    Outcome {
        pass: in_band || iteration_ok,
        detail: format!("sym/ceg time geomean {geo:.3}, {how} [0.2, 5] (full-scale reference 1.09)"),
    }
}

/// Satisfaction computed backwards over positions, one node at a time.
fn table_eval(f: &LtlfFormula, w: &Word) -> bool {
    let len = w.len();
    let nodes = f.nodes();
    let mut val = vec![vec![false; len]; nodes.len()];
    for (i, node) in nodes.iter().enumerate() {
        let (l, r) = (node.left.unwrap_or(0), node.right.unwrap_or(0));
        for t in (0..len).rev() {
            let later = |v: &Vec<Vec<bool>>, k: usize| t + 1 < len && v[k][t + 1];
            let v = match node.op {
                Op::Atom(a) => w.symbols()[t] == a,
                Op::True => true,
                Op::False => false,
                Op::Not => !val[l][t],
                Op::And => val[l][t] && val[r][t],
                Op::Or => val[l][t] || val[r][t],
                Op::Implies => !val[l][t] || val[r][t],
                Op::Next => later(&val, l),
                Op::Until => val[r][t] || (val[l][t] && later(&val, i)),
                Op::Finally => val[l][t] || later(&val, i),
                Op::Globally => val[l][t] && (t + 1 == len || val[i][t + 1]),
            };
            val[i][t] = v;
        }
    }
    val[f.root()][0]
}

fn ltlf_semantics() -> Outcome {
    let formulas = formulas_up_to(&ab(), &Op::OPERATORS, 3);
    let words: Vec<Word> = ab().words_up_to(4).filter(|w| !w.is_empty()).collect();
    let (mut checks, mut mismatches) = (0, 0);
    for f in &formulas {
        let dfa = f.to_dfa();
        for w in &words {
            let expected = table_eval(f, w);
            let got = f.satisfies(w).unwrap();
            checks += 1;
            if got != expected || dfa.accepts(w) != got {
                mismatches += 1;
            }
        }
    }
    Outcome {
        pass: mismatches == 0,
        detail: format!("{} formulas x {} words, {checks} checks, {mismatches} disagreements", formulas.len(), words.len()),
    }
}

fn ltlf_correctness(rows: &[BenchRow]) -> Outcome {
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| !(r.termination == "minimal" && r.verdict == "pass" && r.model_size <= 4))
        .map(|r| format!("{}/{}: {} {}", r.instance, r.algorithm, r.termination, r.verdict))
        .collect();
    let learned: Vec<String> = rows.iter().map(|r| format!("{}={}", r.algorithm, r.model)).collect();
    Outcome {
        pass: rows.len() == 12 && bad.is_empty(),
        detail: format!("12 runs, {} rejected {bad:?}; learned {learned:?}", bad.len()),
    }
}

fn ltlf_speed(rows: &[BenchRow]) -> Outcome {
    let s = ratio_summary(rows, Algo::Ssym, Algo::Ceg);
    let median = s.time_median.unwrap_or(f64::INFINITY);
    Outcome {
        pass: median <= 1.0,
        detail: format!("median ssym/ceg time ratio {median:.3} over {} patterns (full-scale reference: ssym 173.9% faster)", s.pairs),
    }
}

fn main() -> ExitCode {
    let mut all_pass = true;
    let mut report = |n: usize, budget: Duration, start: Instant, o: Outcome| {
        let elapsed = start.elapsed();
        let pass = o.pass && elapsed <= budget;
        all_pass &= pass;
        println!(
            "criterion {n}: {} ({:.1}s of {}s) {}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            o.detail
        );
    };
    let min = |m: u64| Duration::from_secs(60 * m);

    let t = Instant::now();
    report(1, min(2), t, encoding_soundness());
    let t = Instant::now();
    report(2, min(10), t, dfa_minimality());
    let t = Instant::now();
    report(3, min(1), t, separating_word_bound());

    let t = Instant::now();
    let dfa_rows = timed_rows(&dfa_grid_manifest(false));
    let c4 = iteration_trend(&dfa_rows);
    let c4_pass = c4.pass;
    report(4, min(15), t, c4);
    let t = Instant::now();
    report(5, min(15), t, runtime_band(&dfa_rows, c4_pass));

    let t = Instant::now();
    report(6, min(5), t, ltlf_semantics());

    let t = Instant::now();
    let ltlf_rows = timed_rows(&ltlf_grid_manifest(false));
    report(7, min(30), t, ltlf_correctness(&ltlf_rows));
    let t = Instant::now();
    report(8, min(30), t, ltlf_speed(&ltlf_rows));

    // audited reruns double as the determinism check
    let t = Instant::now();
    let audited = |jobs| {
        let opts = BenchOptions { jobs, timings: false, audit: true, solver: None };
        let mut rows = run_bench(&dfa_grid_manifest(true), &opts).0;
        rows.extend(run_bench(&ltlf_grid_manifest(true), &opts).0);
        rows
    };
    let first = audited(1);
    let errors: Vec<&BenchRow> = first.iter().filter(|r| r.termination == "error").collect();
    report(
        9,
        min(30),
        t,
        Outcome {
            pass: errors.is_empty() && first.len() == 28,
            detail: format!(
                "{} audited runs, {} invariant violations {:?}",
                first.len(),
                errors.len(),
                errors.iter().map(|r| &r.model).collect::<Vec<_>>()
            ),
        },
    );
    let t = Instant::now();
    let second = audited(2);
    let (a, b) = (csv_string(&first), csv_string(&second));
    report(
        10,
        min(30),
        t,
        Outcome {
            pass: a == b,
            detail: format!("two seeded runs ({} CSV bytes) {}", a.len(), if a == b { "identical" } else { "differ" }),
        },
    );

    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
