//! Invariants checked on generated formulas, with brute-force enumeration as
//! the independent reference.

use iesat::formula::{clause_probability, merge, negate_cnf_to_dnf, Assignment, Formula, Kind, LiteralSet};
use iesat::io::{parse_native, serialize_native};
use iesat::lll::{asymmetric_report, dnf_to_pg, lll_check_dnf, symmetric_report, DependencyGraph, LllVerdict, Variant};
use iesat::oracle::{count_satisfying, is_tautology_bruteforce};
use iesat::solver::{bonferroni_bounds, exact_union_probability, taut, Limits, SolverConfig, Verdict};
use iesat::DyadicProbability;
use num_bigint::BigInt;
use proptest::prelude::*;

fn literal(n: u32) -> impl Strategy<Value = i32> {
    (1..=n as i32, any::<bool>()).prop_map(|(v, pos)| if pos { v } else { -v })
}

fn literal_set(n: u32, max_len: usize) -> impl Strategy<Value = LiteralSet> {
    prop::collection::vec(literal(n), 0..=max_len).prop_map(|v| LiteralSet::from_values(&v).unwrap())
}

/// Small formulas: n ≤ 8, N ≤ 7, clause width ≤ 4.
fn formula(kind: Kind) -> impl Strategy<Value = Formula> {
    (1u32..=8).prop_flat_map(move |n| {
        prop::collection::vec(literal_set(n, 4), 0..=7).prop_map(move |cs| Formula::new(kind, n, cs).unwrap())
    })
}

fn merge_opt(a: Option<LiteralSet>, b: Option<LiteralSet>) -> Option<LiteralSet> {
    merge(&a?, &b?)
}

fn satisfying_fraction(f: &Formula) -> DyadicProbability {
    DyadicProbability::new(count_satisfying(f).unwrap(), f.num_vars())
}

proptest! {
    #[test]
    fn merge_is_a_commutative_monoid_with_absorbing_incompatible(
        a in literal_set(6, 4), b in literal_set(6, 4), c in literal_set(6, 4)
    ) {
        prop_assert_eq!(merge(&a, &b), merge(&b, &a));
        let left = merge_opt(merge(&a, &b), Some(c.clone()));
        let right = merge_opt(Some(a.clone()), merge(&b, &c));
        prop_assert_eq!(left, right);
        if a.is_consistent() {
            prop_assert_eq!(merge(&a, &a), Some(a.clone()));
        } else {
            prop_assert_eq!(merge(&a, &a), None);
        }
        prop_assert_eq!(merge_opt(None, Some(a.clone())), None);
    }

    #[test]
    fn merge_is_conjunction(a in literal_set(5, 4), b in literal_set(5, 4)) {
        let and = Formula::new(Kind::Dnf, 5, vec![a.clone(), b.clone()]).unwrap();
        let both = (0..32u64).filter(|&m| {
            let asg = Assignment::from_mask(m, 5);
            and.clauses().iter().all(|c| c.literals().iter().all(|&l| asg.satisfies(l)))
        }).count();
        match merge(&a, &b) {
            None => prop_assert_eq!(both, 0),
            Some(m) => {
                let single = Formula::new(Kind::Dnf, 5, vec![m]).unwrap();
                prop_assert_eq!(count_satisfying(&single).unwrap(), both as u64);
            }
        }
    }

    #[test]
    fn clause_probability_counts_assignments(c in literal_set(8, 6), extra in 0u32..4) {
        let n = 8 + extra;
        let p = clause_probability(&c, n).unwrap();
        let single = Formula::new(Kind::Dnf, n, vec![c]).unwrap();
        prop_assert_eq!(p.exponent(), n);
        prop_assert_eq!(p.numerator(), &BigInt::from(count_satisfying(&single).unwrap()));
        prop_assert!(p >= DyadicProbability::zero(0) && p <= DyadicProbability::one(0));
    }

    #[test]
    fn negation_flips_every_evaluation(f in formula(Kind::Cnf)) {
        let g = negate_cnf_to_dnf(&f).unwrap();
        for mask in 0..1u64 << f.num_vars() {
            let a = Assignment::from_mask(mask, f.num_vars());
            prop_assert_eq!(g.evaluate(&a), !f.evaluate(&a));
        }
        let total = 1u64 << f.num_vars();
        prop_assert_eq!(count_satisfying(&f).unwrap() + count_satisfying(&g).unwrap(), total);
    }

    #[test]
    fn native_round_trip(f in prop_oneof![formula(Kind::Dnf), formula(Kind::Cnf)]) {
        prop_assert_eq!(parse_native(&serialize_native(&f)).unwrap(), f);
    }

    #[test]
    fn exact_probability_matches_enumeration(f in formula(Kind::Dnf)) {
        prop_assert_eq!(exact_union_probability(&f).unwrap(), satisfying_fraction(&f));
    }

    #[test]
    fn bonferroni_sandwich(f in formula(Kind::Dnf)) {
        let exact = satisfying_fraction(&f);
        for (k, p) in bonferroni_bounds(&f, f.len().max(1)).unwrap() {
            if k % 2 == 1 {
                prop_assert!(p >= exact, "P_{} = {} < {}", k, p, exact);
            } else {
                prop_assert!(p <= exact, "P_{} = {} > {}", k, p, exact);
            }
        }
    }

    #[test]
    fn decided_verdicts_are_sound(f in formula(Kind::Dnf), k in 1usize..8) {
        let truth = is_tautology_bruteforce(&f).unwrap();
        let out = taut(&f, &SolverConfig::new(k).unwrap()).unwrap();
        match out.verdict {
            Verdict::Decided { is_tautology, level } => {
                prop_assert_eq!(is_tautology, truth);
                prop_assert!(level <= k);
            }
            Verdict::Undecided { level, .. } => {
                prop_assert!(k < f.len());
                prop_assert_eq!(level, k);
            }
        }
    }

    #[test]
    fn full_depth_always_decides(f in formula(Kind::Dnf)) {
        let out = taut(&f, &SolverConfig::new(f.len().max(1)).unwrap()).unwrap();
        prop_assert!(out.verdict.is_decided());
    }

    #[test]
    fn adding_a_clause_never_lowers_probability(f in formula(Kind::Dnf), c in literal_set(8, 4)) {
        let mut g = Formula::new(Kind::Dnf, 8, f.clauses().to_vec()).unwrap();
        let before = exact_union_probability(&g).unwrap();
        g.push(c).unwrap();
        prop_assert!(exact_union_probability(&g).unwrap() >= before);
    }

    #[test]
    fn bounds_are_deterministic_under_parallel_expansion(f in formula(Kind::Dnf)) {
        let seq = bonferroni_bounds(&f, 7).unwrap();
        let par = iesat::solver::bonferroni_bounds_with(&f, 7, &Limits { parallel: true, ..Limits::default() }).unwrap();
        prop_assert_eq!(seq, par);
    }

    #[test]
    fn lll_certificates_are_sound(f in formula(Kind::Dnf)) {
        let truth = is_tautology_bruteforce(&f).unwrap();
        for variant in [Variant::Sym, Variant::Asym] {
            if lll_check_dnf(&f, variant).unwrap() == LllVerdict::NotTautology {
                prop_assert!(!truth);
            }
        }
    }

    #[test]
    fn dependency_graph_is_symmetric(f in formula(Kind::Dnf)) {
        let g = dnf_to_pg(&f).unwrap();
        for (i, nbrs) in g.adjacency().iter().enumerate() {
            prop_assert!(!nbrs.contains(&i));
            for &j in nbrs {
                prop_assert!(g.adjacency()[j].contains(&i));
                let vi: Vec<u32> = f.clauses()[i].vars().collect();
                prop_assert!(f.clauses()[j].vars().any(|v| vi.contains(&v)));
            }
        }
    }

    #[test]
    fn symmetric_implies_asymmetric_on_regular_graphs(
        d in 0usize..6, size in 1usize..8, width in 1u32..8
    ) {
        // Circulant graph: vertex i adjacent to i±1..=i±(d/2), plus the
        // antipode when d is odd and size is even. Keep only regular graphs.
        let mut adj = vec![Vec::new(); size];
        for (i, row) in adj.iter_mut().enumerate() {
            for s in 1..=d / 2 {
                row.push((i + s) % size);
                row.push((i as isize - s as isize).rem_euclid(size as isize) as usize);
            }
            if d % 2 == 1 && size % 2 == 0 {
                row.push((i + size / 2) % size);
            }
        }
        let g = DependencyGraph::new(vec![DyadicProbability::new(1, width); size], adj);
        let degrees: Vec<usize> = (0..size).map(|i| g.degree(i)).collect();
        prop_assume!(degrees.iter().all(|&x| x == degrees[0]));
        if symmetric_report(&g).holds {
            prop_assert!(asymmetric_report(&g).holds);
        }
    }
}
