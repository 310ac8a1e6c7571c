use std::collections::BTreeSet;

use occlearn::dfa::{random_dfa, Dfa};
use occlearn::ltlf::{LtlfFormula, Op};
use occlearn::sat::{CnfProblem, InProcessSolver, SolveOutcome, Solver};
use occlearn::words::{parse_sample, prefixes, serialize_sample, shortest_not_covered, Alphabet, Sample, Word};
use proptest::prelude::*;

fn ab() -> Alphabet {
    Alphabet::from_list("a,b").unwrap()
}

fn word_strategy(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0usize..2, 0..=max_len).prop_map(Word::new)
}

fn all_words(alphabet: &Alphabet, max_len: usize) -> Vec<Word> {
    alphabet.words_up_to(max_len).collect()
}

/// Direct transcription of the finite-trace semantics, one quantifier at a time.
fn brute_eval(f: &LtlfFormula, node: usize, w: &Word, i: usize) -> bool {
    let n = f.nodes()[node];
    let len = w.len();
    let l = || n.left.unwrap();
    let r = || n.right.unwrap();
    match n.op {
        Op::Atom(a) => w.symbols()[i] == a,
        Op::True => true,
        Op::False => false,
        Op::Not => !brute_eval(f, l(), w, i),
        Op::And => brute_eval(f, l(), w, i) && brute_eval(f, r(), w, i),
        Op::Or => brute_eval(f, l(), w, i) || brute_eval(f, r(), w, i),
        Op::Implies => !brute_eval(f, l(), w, i) || brute_eval(f, r(), w, i),
        Op::Next => i + 1 < len && brute_eval(f, l(), w, i + 1),
        Op::Until => (i..len).any(|j| brute_eval(f, r(), w, j) && (i..j).all(|k| brute_eval(f, l(), w, k))),
        Op::Finally => (i..len).any(|j| brute_eval(f, l(), w, j)),
        Op::Globally => (i..len).all(|j| brute_eval(f, l(), w, j)),
    }
}

fn formula_text() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![Just("a".to_string()), Just("b".to_string())];
    leaf.prop_recursive(3, 6, 2, |inner| {
        prop_oneof![
            (prop::sample::select(vec!["!", "X ", "F ", "G "]), inner.clone()).prop_map(|(op, c)| format!("{op}({c})")),
            (inner.clone(), prop::sample::select(vec!["&", "|", "->", "U"]), inner)
                .prop_map(|(l, op, r)| format!("({l}) {op} ({r})")),
        ]
    })
}

fn small_formula(max_size: usize) -> impl Strategy<Value = LtlfFormula> {
    formula_text()
        .prop_map(|t| LtlfFormula::parse(&ab(), &t).unwrap())
        .prop_filter("size bound", move |f| f.size() <= max_size)
}

fn dfa_strategy(max_states: usize) -> impl Strategy<Value = Dfa> {
    (1..=max_states, any::<u64>()).prop_map(|(n, seed)| random_dfa(n, &ab(), seed))
}

/// Arbitrary complete DFAs, unreachable states and uniform finality included.
fn raw_dfa_strategy(max_states: usize) -> impl Strategy<Value = Dfa> {
    (1..=max_states).prop_flat_map(|n| {
        (prop::collection::vec(0..n, n * 2), prop::collection::vec(any::<bool>(), n)).prop_map(move |(d, f)| {
            Dfa::new(ab(), d.chunks(2).map(<[usize]>::to_vec).collect(), f).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sample_round_trip(words in prop::collection::btree_set(word_strategy(6), 0..10)) {
        let s = Sample::new(ab(), words).unwrap();
        let text = serialize_sample(&s);
        prop_assert_eq!(parse_sample(text.as_bytes()).unwrap(), s);
    }

    #[test]
    fn prefix_count_bound(words in prop::collection::btree_set(word_strategy(6), 1..8)) {
        let p = prefixes(words.iter());
        let bound = 1 + words.iter().map(Word::len).sum::<usize>();
        prop_assert!(p.len() <= bound);
        // equality exactly when no two words share a nonempty prefix
        let list: Vec<&Word> = words.iter().collect();
        let disjoint = list.iter().enumerate().all(|(i, u)| {
            list[i + 1..].iter().all(|v| u.is_empty() || v.is_empty() || u.symbols()[0] != v.symbols()[0])
        });
        prop_assert_eq!(p.len() == bound, disjoint);
    }

    #[test]
    fn shortest_not_covered_is_shortest(words in prop::collection::vec(word_strategy(5), 0..10), mask in any::<u64>()) {
        let covered = |w: &Word| (mask >> ((w.len() * 7 + w.symbols().iter().sum::<usize>()) % 64)) & 1 == 1;
        let got = shortest_not_covered(&words, covered);
        let uncovered: Vec<&Word> = words.iter().filter(|w| !covered(w)).collect();
        match got {
            None => prop_assert!(uncovered.is_empty()),
            Some(w) => {
                prop_assert!(!covered(&w));
                prop_assert!(uncovered.iter().all(|u| u.len() >= w.len()));
            }
        }
    }

    #[test]
    fn solver_is_deterministic(clauses in prop::collection::vec(prop::collection::vec((1i32..8, any::<bool>()), 1..4), 1..30), seed in any::<u64>()) {
        let mut cnf = CnfProblem::new();
        let vars: Vec<_> = (0..8).map(|i| cnf.fresh(format!("v{i}"))).collect();
        for c in &clauses {
            cnf.add_clause(c.iter().map(|&(v, s)| vars[v as usize].lit(s)));
        }
        let solver = InProcessSolver { seed };
        let a = solver.solve(&cnf, None).unwrap();
        prop_assert_eq!(&a, &solver.solve(&cnf, None).unwrap());
        if let SolveOutcome::Sat(m) = a {
            prop_assert!(m.satisfies(&cnf));
        }
    }

    #[test]
    fn product_correctness(a1 in raw_dfa_strategy(4), a2 in raw_dfa_strategy(4)) {
        let bound = a1.num_states() * a2.num_states();
        let brute = all_words(&ab(), bound).iter().all(|w| !a1.accepts(w) || a2.accepts(w));
        prop_assert_eq!(a1.is_subset(&a2).unwrap(), brute);
    }

    #[test]
    fn separating_word_is_globally_shortest(a1 in raw_dfa_strategy(4), a2 in raw_dfa_strategy(4)) {
        let bound = a1.num_states() * a2.num_states();
        let mut brute = all_words(&ab(), bound).into_iter().filter(|w| a1.accepts(w) && !a2.accepts(w));
        let expected = brute.next();
        prop_assert_eq!(a1.shortest_separating_word(&a2).unwrap(), expected);
    }

    #[test]
    fn strict_inclusion_bound(n in 1usize..=5, s1 in any::<u64>(), s2 in any::<u64>()) {
        let a1 = random_dfa(n, &ab(), s1);
        let a2 = random_dfa(n, &ab(), s2);
        if a2.is_strict_subset(&a1).unwrap() {
            let w = a1.shortest_separating_word(&a2).unwrap().unwrap();
            prop_assert!(w.len() <= n * n);
        }
    }

    #[test]
    fn minimize_preserves_language(a in raw_dfa_strategy(5)) {
        let m = a.minimize();
        prop_assert!(m.is_equivalent(&a).unwrap());
        prop_assert!(m.num_states() <= a.trim().num_states());
        prop_assert_eq!(m.minimize(), m.clone());
    }

    #[test]
    fn dfa_text_formats_round_trip(a in dfa_strategy(6)) {
        prop_assert!(Dfa::from_dot(&a.to_dot()).unwrap().is_isomorphic(&a));
        prop_assert_eq!(Dfa::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn compilation_soundness(f in small_formula(5)) {
        let d = f.to_dfa();
        prop_assert!(!d.accepts(&Word::empty()));
        for w in all_words(&ab(), 5).iter().filter(|w| !w.is_empty()) {
            let expected = brute_eval(&f, f.root(), w, 0);
            prop_assert_eq!(f.satisfies(w).unwrap(), expected, "{} on {:?}", f, w);
            prop_assert_eq!(d.accepts(w), expected, "{} on {:?}", f, w);
        }
    }

    #[test]
    fn duality(f in small_formula(6), w in word_strategy(7).prop_filter("nonempty", |w| !w.is_empty())) {
        let alpha = ab();
        let text = f.to_string();
        let neg = LtlfFormula::parse(&alpha, &format!("!({text})")).unwrap();
        prop_assert_eq!(neg.satisfies(&w).unwrap(), !f.satisfies(&w).unwrap());
        let fin = LtlfFormula::parse(&alpha, &format!("F ({text})")).unwrap();
        let until = LtlfFormula::parse(&alpha, &format!("true U ({text})")).unwrap();
        prop_assert_eq!(fin.satisfies(&w).unwrap(), until.satisfies(&w).unwrap());
        let glob = LtlfFormula::parse(&alpha, &format!("G ({text})")).unwrap();
        let dual = LtlfFormula::parse(&alpha, &format!("!F !({text})")).unwrap();
        prop_assert_eq!(glob.satisfies(&w).unwrap(), dual.satisfies(&w).unwrap());
    }

    #[test]
    fn dag_structure(f in small_formula(12)) {
        let mut seen = BTreeSet::new();
        for (i, n) in f.nodes().iter().enumerate() {
            prop_assert!(n.left.map_or(true, |c| c < i) && n.right.map_or(true, |c| c < i));
            let key = format!("{n:?}");
            prop_assert!(seen.insert(key));
        }
        prop_assert_eq!(f.nodes()[0].op.arity(), 0);
        prop_assert_eq!(LtlfFormula::parse(&ab(), &f.to_string()).unwrap(), f);
    }

    #[test]
    fn witness_is_minimal(f in small_formula(4), g in small_formula(4)) {
        let words: Vec<Word> = all_words(&ab(), 6).into_iter().filter(|w| !w.is_empty()).collect();
        let brute = words.iter().find(|w| f.satisfies(w).unwrap() && !g.satisfies(w).unwrap());
        match f.witness(&g).unwrap() {
            Some(w) => {
                prop_assert!(f.satisfies(&w).unwrap() && !g.satisfies(&w).unwrap());
                if let Some(b) = brute {
                    prop_assert_eq!(b.len(), w.len());
                }
                prop_assert!(!f.implies(&g).unwrap());
            }
            None => {
                prop_assert!(brute.is_none());
                prop_assert!(f.implies(&g).unwrap());
            }
        }
    }
}
