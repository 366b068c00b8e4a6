use proptest::prelude::*;

use incorp::clauses::{Clause, Literal, UnitClauses};
use incorp::engine::{
    bootstrap, direct_incorporate, extract_rewritables, initial_limbo, limbo_incorporate, preprocess, preprocess_list,
    remove_rewritables,
};
use incorp::equations::{normalize_counted, Equation, GroundEquations, Term};
use incorp::{irreducible_list, mutually_irreducible, ElementFormat, Simplifier};

fn literal() -> impl Strategy<Value = Literal> {
    (prop::sample::select(vec!["p", "q", "r", "s"]), any::<bool>()).prop_map(|(a, neg)| {
        if neg {
            Literal::neg(a)
        } else {
            Literal::pos(a)
        }
    })
}

fn clause() -> impl Strategy<Value = Clause> {
    prop_oneof![
        1 => Just(Clause::True),
        9 => prop::collection::vec(literal(), 0..4).prop_map(Clause::new),
    ]
}

fn clauses(max: usize) -> impl Strategy<Value = Vec<Clause>> {
    prop::collection::vec(clause(), 0..max)
}

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop::sample::select(vec!["a", "b"]).prop_map(Term::constant);
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|t| Term::app("f", vec![t])),
            (inner.clone(), inner).prop_map(|(x, y)| Term::app("g", vec![x, y])),
        ]
    })
}

fn equation() -> impl Strategy<Value = Equation> {
    prop_oneof![
        1 => Just(Equation::True),
        9 => (term(), term()).prop_map(|(a, b)| Equation::new(a, b)),
    ]
}

fn equations(max: usize) -> impl Strategy<Value = Vec<Equation>> {
    prop::collection::vec(equation(), 0..max)
}

proptest! {
    #[test]
    fn clause_sets_round_trip(set in clauses(8)) {
        let text = UnitClauses.render_set(&set);
        prop_assert_eq!(UnitClauses.parse_set(&text).unwrap(), set);
    }

    #[test]
    fn equation_sets_round_trip(set in equations(8)) {
        let text = GroundEquations.render_set(&set);
        prop_assert_eq!(GroundEquations.parse_set(&text).unwrap(), set);
    }

    #[test]
    fn extraction_partitions_the_db(x in clause(), s in clauses(8)) {
        let out = extract_rewritables(&UnitClauses, &x, &s);
        let keep = remove_rewritables(&UnitClauses, &x, &s);
        prop_assert_eq!(out.len() + keep.len(), s.len());
        // both parts preserve the db order
        let mut i = 0;
        let mut j = 0;
        for d in &s {
            if UnitClauses.rewritable(d, std::slice::from_ref(&x)) {
                prop_assert_eq!(&out[i], d);
                i += 1;
            } else {
                prop_assert_eq!(&keep[j], d);
                j += 1;
            }
        }
    }

    #[test]
    fn equation_extraction_partitions_the_db(x in equation(), s in equations(8)) {
        let out = extract_rewritables(&GroundEquations, &x, &s);
        let keep = remove_rewritables(&GroundEquations, &x, &s);
        prop_assert_eq!(out.len() + keep.len(), s.len());
        prop_assert!(keep.iter().all(|d| !GroundEquations.rewritable(d, std::slice::from_ref(&x))));
    }

    #[test]
    fn irreducibility_ignores_order(raw in clauses(8), seed in any::<u64>()) {
        let mut s = bootstrap(&UnitClauses, &raw);
        prop_assert!(irreducible_list(&UnitClauses, &s));
        let n = s.len();
        if n > 1 {
            s.rotate_left(seed as usize % n);
            s.swap(0, (seed as usize / 7) % n);
        }
        prop_assert!(irreducible_list(&UnitClauses, &s));
        for (i, x) in s.iter().enumerate() {
            let others: Vec<Clause> = s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, d)| d.clone()).collect();
            prop_assert!(mutually_irreducible(&UnitClauses, x, &others));
        }
    }

    #[test]
    fn normalization_steps_bounded_by_symbols(t in term(), rules in equations(6)) {
        let (nf, steps) = normalize_counted(&t, &rules);
        // every step strictly shrinks the term
        prop_assert!(nf.size() + steps <= t.size());
    }

    #[test]
    fn normal_forms_contain_no_redex(t in term(), rules in equations(6)) {
        let (nf, _) = normalize_counted(&t, &rules);
        let lhss: Vec<&Term> = rules.iter().filter_map(Equation::as_rule).map(|(l, _)| l).collect();
        let mut stack = vec![&nf];
        while let Some(u) = stack.pop() {
            prop_assert!(!lhss.contains(&u), "redex {} left in {}", u, nf);
            stack.extend(u.args.iter());
        }
    }

    #[test]
    fn limbo_entries_are_reduced_against_db_and_later_entries(q in clauses(8), raw in clauses(8)) {
        let s = bootstrap(&UnitClauses, &raw);
        let l = initial_limbo(&UnitClauses, &q, &s);
        prop_assert!(l.iter().all(|x| !x.is_true()));
        for (i, x) in l.iter().enumerate() {
            // each entry is a fixpoint of simplification by s and the entries before it
            let earlier: Vec<Clause> = s.iter().chain(&l[..i]).cloned().collect();
            prop_assert_eq!(&UnitClauses.simplify(x, &earlier), x);
        }
        prop_assert_eq!(preprocess_list(&UnitClauses, &[], &s, &l), l.clone());
    }

    #[test]
    fn preprocess_appends_at_most_one(x in clause(), s in clauses(6), l in clauses(4)) {
        let out = preprocess(&UnitClauses, &x, &s, &l);
        prop_assert_eq!(&out[..l.len()], &l[..]);
        prop_assert!(out.len() <= l.len() + 1);
    }

    #[test]
    fn both_procedures_keep_irreducibility(q in clauses(8), raw in clauses(8)) {
        let s = bootstrap(&UnitClauses, &raw);
        prop_assert!(irreducible_list(&UnitClauses, &direct_incorporate(&UnitClauses, &q, &s).final_db));
        prop_assert!(irreducible_list(&UnitClauses, &limbo_incorporate(&UnitClauses, &q, &s).final_db));
    }

    #[test]
    fn equation_procedures_keep_irreducibility(q in equations(6), raw in equations(6)) {
        let s = bootstrap(&GroundEquations, &raw);
        prop_assert!(irreducible_list(&GroundEquations, &direct_incorporate(&GroundEquations, &q, &s).final_db));
        prop_assert!(irreducible_list(&GroundEquations, &limbo_incorporate(&GroundEquations, &q, &s).final_db));
    }

    #[test]
    fn incorporating_nothing_is_identity(raw in clauses(8)) {
        let s = bootstrap(&UnitClauses, &raw);
        prop_assert_eq!(direct_incorporate(&UnitClauses, &[], &s).final_db, s.clone());
        prop_assert_eq!(limbo_incorporate(&UnitClauses, &[], &s).final_db, s);
    }
}
