mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use tct_core::algebra::{encode, power, quotient_algebra, subalgebra_generated, Operation};
use tct_core::congruence::cg_generated;
use tct_core::lattice::{check_modular_distributive, find_pentagons, satisfies_modular_law};
use tct_core::{con_lattice, label_lattice, FiniteAlgebra, Lattice, Limits, Partition};

fn arb_algebra(max_size: usize) -> impl Strategy<Value = FiniteAlgebra> {
    (1..=max_size)
        .prop_flat_map(|n| {
            let op = (0usize..=2).prop_flat_map(move |k| proptest::collection::vec(0..n, n.pow(k as u32)).prop_map(move |t| (k, t)));
            (Just(n), proptest::collection::vec(op, 0..=2))
        })
        .prop_map(|(n, ops)| {
            let ops: Vec<Operation> = ops
                .into_iter()
                .enumerate()
                .map(|(i, (k, t))| FiniteAlgebra::operation_from_fn(&format!("f{i}"), n, k, |a| t[encode(a, n)]))
                .collect();
            FiniteAlgebra::new("arb", n, ops).unwrap()
        })
}

fn arb_partition(n: usize) -> impl Strategy<Value = Partition> {
    proptest::collection::vec(0..n, n).prop_map(|labels| Partition::from_labels(&labels))
}

fn limits() -> Limits {
    Limits::default()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn closure_is_idempotent(a in arb_algebra(4), gens in proptest::collection::vec(0usize..4, 1..3)) {
        let gens: Vec<usize> = gens.into_iter().map(|g| g % a.size()).collect();
        let s = subalgebra_generated(&a, &gens).unwrap();
        prop_assert!(a.is_closed(&s.universe));
        prop_assert!(gens.iter().all(|g| s.universe.contains(g)));
        let again = subalgebra_generated(&a, &s.universe).unwrap();
        prop_assert_eq!(&again.universe, &s.universe);
    }

    #[test]
    fn quotient_map_is_a_homomorphism(a in arb_algebra(4)) {
        let l = con_lattice(&a, &limits()).unwrap();
        let n = a.size();
        for theta in l.elements() {
            let q = quotient_algebra(&a, theta).unwrap();
            prop_assert_eq!(q.algebra.size(), theta.num_blocks());
            for (op, qop) in a.operations().iter().zip(q.algebra.operations()) {
                let k = op.arity();
                for code in 0..n.pow(k as u32) {
                    let args = tct_core::algebra::decode(code, n, k);
                    let images: Vec<usize> = args.iter().map(|&x| q.block_map[x]).collect();
                    prop_assert_eq!(q.block_map[op.eval(n, &args)], qop.eval(q.algebra.size(), &images));
                }
            }
        }
    }

    #[test]
    fn generated_congruence_is_minimal(a in arb_algebra(4), x in 0usize..4, y in 0usize..4) {
        let (x, y) = (x % a.size(), y % a.size());
        let cg = cg_generated(&a, &[(x, y)]).unwrap();
        prop_assert!(cg.related(x, y));
        prop_assert!(common::compatible(&a, cg.ids()));
        let l = con_lattice(&a, &limits()).unwrap();
        for theta in l.elements() {
            if theta.related(x, y) {
                prop_assert!(cg.refines(theta));
            }
        }
    }

    #[test]
    fn diagonal_and_projections_of_a_square(a in arb_algebra(3)) {
        let n = a.size();
        let p = power(&a, 2, &limits()).unwrap();
        prop_assert!(p.algebra.is_closed(&p.diagonal));
        prop_assert_eq!(p.diagonal.len(), n);
        for (op, pop) in a.operations().iter().zip(p.algebra.operations()) {
            let k = op.arity();
            for code in 0..(n * n).pow(k as u32) {
                let args = tct_core::algebra::decode(code, n * n, k);
                let v = p.decode(pop.eval(n * n, &args));
                let firsts: Vec<usize> = args.iter().map(|&c| p.decode(c)[0]).collect();
                let seconds: Vec<usize> = args.iter().map(|&c| p.decode(c)[1]).collect();
                prop_assert_eq!(v[0], op.eval(n, &firsts));
                prop_assert_eq!(v[1], op.eval(n, &seconds));
            }
        }
        let one = power(&a, 1, &limits()).unwrap();
        prop_assert_eq!(one.algebra.operations(), a.operations());
    }

    #[test]
    fn labels_survive_relabeling((a, sigma) in arb_algebra(4).prop_flat_map(|a| {
        let ids: Vec<usize> = (0..a.size()).collect();
        (Just(a), Just(ids).prop_shuffle())
    })) {
        let b = common::permuted(&a, &sigma);
        let la = label_lattice(con_lattice(&a, &limits()).unwrap(), &limits()).unwrap();
        let lb = label_lattice(con_lattice(&b, &limits()).unwrap(), &limits()).unwrap();
        prop_assert_eq!(la.covers.len(), lb.covers.len());
        for c in &la.covers {
            let lo = common::permute_partition(la.lattice.element(c.lower), &sigma);
            let hi = common::permute_partition(la.lattice.element(c.upper), &sigma);
            let (i, j) = (lb.lattice.index_of(&lo).unwrap(), lb.lattice.index_of(&hi).unwrap());
            let d = lb.cover(i, j).unwrap();
            prop_assert_eq!(c.label, d.label);
            prop_assert_eq!(c.minimal_sets.len(), d.minimal_sets.len());
            let moved: BTreeSet<Vec<usize>> = c
                .minimal_sets
                .iter()
                .map(|u| {
                    let mut v: Vec<usize> = u.universe.iter().map(|&x| sigma[x]).collect();
                    v.sort_unstable();
                    v
                })
                .collect();
            let there: BTreeSet<Vec<usize>> = d.minimal_sets.iter().map(|u| u.universe.clone()).collect();
            prop_assert_eq!(moved, there);
        }
    }

    #[test]
    fn minimal_set_structure(a in arb_algebra(4)) {
        let l = label_lattice(con_lattice(&a, &limits()).unwrap(), &limits()).unwrap();
        for c in &l.covers {
            prop_assert!(!c.minimal_sets.is_empty());
            for u in &c.minimal_sets {
                let e = u.witness_e.table();
                prop_assert!(u.witness_e.is_idempotent());
                prop_assert_eq!(&u.witness_e.image(), &u.universe);
                let mut covered: Vec<usize> = u.traces.iter().flatten().copied().collect();
                covered.sort_unstable();
                prop_assert_eq!(&covered, &u.body);
                prop_assert_eq!(u.body.len() + u.tail.len(), u.universe.len());
                prop_assert!(u.body.iter().all(|&x| e[x] == x));
            }
        }
    }

    #[test]
    fn modularity_three_ways(a in arb_algebra(4)) {
        let l = con_lattice(&a, &limits()).unwrap();
        let pentagon_free = find_pentagons(&l).is_empty();
        prop_assert_eq!(check_modular_distributive(&l).modular, pentagon_free);
        prop_assert_eq!(satisfies_modular_law(&l), pentagon_free);
        prop_assert_eq!(common::modular_by_law(l.len(), |x, y| l.leq(x, y)), pentagon_free);
    }

    #[test]
    fn partition_meet_and_join(p in arb_partition(5), q in arb_partition(5)) {
        let m = p.meet(&q);
        let j = p.join(&q);
        prop_assert!(m.refines(&p) && m.refines(&q));
        prop_assert!(p.refines(&j) && q.refines(&j));
        for x in 0..5 {
            for y in 0..5 {
                prop_assert_eq!(m.related(x, y), p.related(x, y) && q.related(x, y));
            }
        }
        let s = p.to_string();
        prop_assert_eq!(s.parse::<Partition>().unwrap(), p);
    }
}
