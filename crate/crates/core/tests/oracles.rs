mod common;

use std::collections::BTreeSet;

use tct_core::congruence::{brute_force_con, cg_generated};
use tct_core::corpus;
use tct_core::polynomial::{induced_clone, unary_polynomials};
use tct_core::tct::minimal_sets;
use tct_core::{con_lattice, label_lattice, FiniteAlgebra, Lattice, Limits, Partition};

fn con_strings(a: &FiniteAlgebra) -> BTreeSet<String> {
    con_lattice(a, &Limits::default())
        .unwrap()
        .elements()
        .iter()
        .map(Partition::to_string)
        .collect()
}

fn small_corpus() -> Vec<FiniteAlgebra> {
    let mut all: Vec<FiniteAlgebra> = corpus::curated().into_iter().filter(|a| a.size() <= 5).collect();
    all.extend(corpus::random_algebras(5, 60, 11));
    all.extend(corpus::random_groupoids(3, 40, 5));
    all.extend(corpus::random_groupoids(4, 10, 5));
    all
}

#[test]
fn congruences_match_partition_scan() {
    for a in small_corpus() {
        let expected = common::congruences(&a);
        assert_eq!(con_strings(&a), expected, "{}", a.name());
        let brute: BTreeSet<String> = brute_force_con(&a).unwrap().iter().map(Partition::to_string).collect();
        assert_eq!(brute, expected, "{}", a.name());
    }
}

#[test]
fn congruence_counts() {
    assert_eq!(common::congruences(&corpus::cyclic_group(4)).len(), 3);
    assert_eq!(common::congruences(&corpus::no_ops(4)).len(), 15);
    assert_eq!(common::congruences(&corpus::boolean2()).len(), 2);
    let chain: Vec<String> = common::congruences(&corpus::chain_semilattice(3)).into_iter().collect();
    assert_eq!(chain, ["0,1,2", "0,1|2", "0|1,2", "0|1|2"]);
    assert_eq!(con_strings(&corpus::chain_semilattice(3)), common::congruences(&corpus::chain_semilattice(3)));
}

#[test]
fn generated_congruence_is_least() {
    let z4 = corpus::cyclic_group(4);
    assert_eq!(cg_generated(&z4, &[(0, 2)]).unwrap().to_string(), "0,2|1,3");
    for a in small_corpus().iter().filter(|a| a.size() >= 2) {
        let n = a.size();
        for (x, y) in [(0, 1), (0, n - 1), (n / 2, n - 1)] {
            let got = cg_generated(a, &[(x, y)]).unwrap();
            let want = Partition::from_labels(&common::least_congruence(a, &[(x, y)]));
            assert_eq!(got, want, "{} ({x},{y})", a.name());
        }
    }
}

#[test]
fn unary_polynomials_match_term_evaluation() {
    let mut algebras: Vec<FiniteAlgebra> = corpus::random_algebras(3, 80, 3);
    algebras.extend(corpus::random_groupoids(3, 30, 9));
    algebras.extend([corpus::semilattice2(), corpus::cyclic_group(2), corpus::boolean2(), corpus::chain_semilattice(3)]);
    for a in &algebras {
        let got: BTreeSet<Vec<usize>> = unary_polynomials(a, &Limits::default())
            .unwrap()
            .maps()
            .iter()
            .map(|m| m.table().to_vec())
            .collect();
        let shallow = common::unary_terms(a, 4);
        assert!(shallow.is_subset(&got), "{}", a.name());
        assert_eq!(got, common::all_unary_polynomials(a), "{}", a.name());
    }
}

#[test]
fn small_unary_polynomial_sets() {
    let s = common::all_unary_polynomials(&corpus::semilattice2());
    assert_eq!(s, [vec![0, 0], vec![0, 1], vec![1, 1]].into_iter().collect());
    let z2 = common::all_unary_polynomials(&corpus::cyclic_group(2));
    assert_eq!(z2.len(), 4);
    let lib = |a: &FiniteAlgebra| -> BTreeSet<Vec<usize>> {
        let pol1 = unary_polynomials(a, &Limits::default()).unwrap();
        pol1.maps().iter().map(|m| m.table().to_vec()).collect()
    };
    assert_eq!(lib(&corpus::semilattice2()), s);
    assert_eq!(lib(&corpus::cyclic_group(2)), z2);
}

#[test]
fn two_element_binary_clones() {
    let meet = corpus::semilattice2();
    let want: BTreeSet<[usize; 4]> = [[0, 0, 1, 1], [0, 1, 0, 1], [0, 0, 0, 1], [0; 4], [1; 4]].into_iter().collect();
    assert_eq!(common::binary_polynomials_2(&meet), want);
    let lib: BTreeSet<Vec<usize>> = induced_clone(&meet, &[0, 1], 2, 1 << 16)
        .unwrap()
        .induced_local()
        .into_iter()
        .collect();
    assert_eq!(lib, want.iter().map(|f| f.to_vec()).collect());
    assert_eq!(common::binary_polynomials_2(&corpus::boolean2()).len(), 16);
    let lib = induced_clone(&corpus::boolean2(), &[0, 1], 2, 1 << 16).unwrap();
    assert_eq!(lib.induced_local().len(), 16);
}

#[test]
fn two_element_labels_match_clone_classification() {
    let mut algebras = corpus::two_element_family();
    algebras.extend([
        corpus::no_ops(2),
        corpus::cyclic_group(2),
        corpus::boolean2(),
        corpus::lattice2(),
        corpus::semilattice2(),
    ]);
    let mut seen = [0usize; 5];
    for a in &algebras {
        let l = label_lattice(con_lattice(a, &Limits::default()).unwrap(), &Limits::default()).unwrap();
        let want = common::two_element_type(a);
        for c in &l.covers {
            assert_eq!(c.label.map(|t| t.value()), Some(want), "{}", a.name());
            seen[want as usize - 1] += 1;
        }
    }
    assert!(seen.iter().all(|&k| k > 0), "every type occurs: {seen:?}");
    let sanity = [
        (corpus::no_ops(2), 1),
        (corpus::cyclic_group(2), 2),
        (corpus::boolean2(), 3),
        (corpus::lattice2(), 4),
        (corpus::semilattice2(), 5),
    ];
    for (a, t) in sanity {
        assert_eq!(common::two_element_type(&a), t, "{}", a.name());
    }
}

#[test]
fn minimal_sets_match_definition() {
    let mut algebras: Vec<FiniteAlgebra> = corpus::curated().into_iter().filter(|a| a.size() <= 4).collect();
    algebras.extend(corpus::random_groupoids(3, 60, 21));
    algebras.extend(corpus::random_algebras(4, 30, 21));
    let limits = Limits::default();
    for a in &algebras {
        let l = con_lattice(a, &limits).unwrap();
        let pol1 = unary_polynomials(a, &limits).unwrap();
        for &(lo, hi) in l.covers() {
            let (d, t) = (l.element(lo), l.element(hi));
            let got: BTreeSet<Vec<usize>> = minimal_sets(&pol1, d, t).unwrap().into_iter().map(|u| u.universe).collect();
            assert_eq!(got, common::minimal_set_universes(a, d, t), "{} {d} < {t}", a.name());
        }
    }
}

#[test]
fn modular_law_agrees_with_pentagon_search() {
    let mut algebras = small_corpus();
    algebras.push(corpus::no_ops(4));
    algebras.push(corpus::klein4());
    for a in &algebras {
        let l = con_lattice(a, &Limits::default()).unwrap();
        let by_law = common::modular_by_law(l.len(), |x, y| l.leq(x, y));
        assert_eq!(tct_core::lattice::first_pentagon(&l).is_none(), by_law, "{}", a.name());
        assert_eq!(tct_core::lattice::satisfies_modular_law(&l), by_law, "{}", a.name());
    }
}
