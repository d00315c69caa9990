//! Named small algebras, the curated JSON corpus and seeded enumerated
//! families.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{FiniteAlgebra, Operation};
use crate::error::Result;

fn build(name: &str, size: usize, ops: Vec<Operation>) -> FiniteAlgebra {
    FiniteAlgebra::new(name, size, ops).expect("built-in algebra is valid")
}

pub fn trivial() -> FiniteAlgebra {
    build("trivial", 1, vec![])
}

/// A bare set: every partition is a congruence.
pub fn no_ops(n: usize) -> FiniteAlgebra {
    build(&format!("noops{n}"), n, vec![])
}

pub fn semilattice2() -> FiniteAlgebra {
    chain_semilattice(2).with_name("semilattice2")
}

/// `{0 < 1 < … < n-1}` under `min`.
pub fn chain_semilattice(n: usize) -> FiniteAlgebra {
    let meet = FiniteAlgebra::operation_from_fn("meet", n, 2, |a| a[0].min(a[1]));
    build(&format!("chain{n}"), n, vec![meet])
}

pub fn lattice2() -> FiniteAlgebra {
    let meet = FiniteAlgebra::operation_from_fn("meet", 2, 2, |a| a[0] & a[1]);
    let join = FiniteAlgebra::operation_from_fn("join", 2, 2, |a| a[0] | a[1]);
    build("lattice2", 2, vec![meet, join])
}

pub fn boolean2() -> FiniteAlgebra {
    let neg = FiniteAlgebra::operation_from_fn("neg", 2, 1, |a| 1 - a[0]);
    lattice2()
        .with_name("boolean2")
        .with_operation(neg)
        .expect("fresh name")
}

/// `Z_n` under addition.
pub fn cyclic_group(n: usize) -> FiniteAlgebra {
    let plus = FiniteAlgebra::operation_from_fn("plus", n, 2, |a| (a[0] + a[1]) % n);
    build(&format!("z{n}"), n, vec![plus])
}

/// `Z_2 × Z_2`; its congruence lattice is `M_3`.
pub fn klein4() -> FiniteAlgebra {
    let plus = FiniteAlgebra::operation_from_fn("plus", 4, 2, |a| a[0] ^ a[1]);
    build("klein4", 4, vec![plus])
}

const CURATED: &[(&str, &str)] = &[
    ("trivial", include_str!("../corpus/trivial.json")),
    ("noops2", include_str!("../corpus/noops2.json")),
    ("noops4", include_str!("../corpus/noops4.json")),
    ("semilattice2", include_str!("../corpus/semilattice2.json")),
    ("lattice2", include_str!("../corpus/lattice2.json")),
    ("boolean2", include_str!("../corpus/boolean2.json")),
    ("z2", include_str!("../corpus/z2.json")),
    ("z4", include_str!("../corpus/z4.json")),
    ("klein4", include_str!("../corpus/klein4.json")),
    ("chain3", include_str!("../corpus/chain3.json")),
    ("tail2", include_str!("../corpus/tail2.json")),
    ("tail3", include_str!("../corpus/tail3.json")),
    ("tail4", include_str!("../corpus/tail4.json")),
    ("pentagon2", include_str!("../corpus/pentagon2.json")),
    ("pentagon3", include_str!("../corpus/pentagon3.json")),
    ("pentagon4", include_str!("../corpus/pentagon4.json")),
    ("pentagon5", include_str!("../corpus/pentagon5.json")),
];

/// The curated algebras shipped with the crate, in a fixed order.
pub fn curated() -> Vec<FiniteAlgebra> {
    CURATED
        .iter()
        .map(|(name, text)| {
            crate::io::parse_algebra_str(text)
                .unwrap_or_else(|e| panic!("curated algebra {name} is malformed: {e}"))
        })
        .collect()
}

/// Every 2-element algebra with at most two distinct binary operations:
/// 1 + 16 + 120 algebras.
pub fn two_element_family() -> Vec<FiniteAlgebra> {
    let table = |code: usize| (0..4).map(|i| (code >> (3 - i)) & 1).collect::<Vec<_>>();
    let op = |name: &str, code: usize| {
        let t = table(code);
        FiniteAlgebra::operation_from_fn(name, 2, 2, move |a| t[2 * a[0] + a[1]])
    };
    let mut out = vec![build("two-none", 2, vec![])];
    for f in 0..16 {
        out.push(build(&format!("two-{f:04b}"), 2, vec![op("f", f)]));
    }
    for f in 0..16 {
        for g in f + 1..16 {
            out.push(build(&format!("two-{f:04b}-{g:04b}"), 2, vec![op("f", f), op("g", g)]));
        }
    }
    out
}

fn random_table(rng: &mut ChaCha8Rng, size: usize, arity: usize) -> Vec<usize> {
    let len = size.pow(arity as u32);
    (0..len).map(|_| rng.gen_range(0..size)).collect()
}

/// `count` distinct groupoids (one binary operation) of the given size,
/// sampled uniformly from the seed.
pub fn random_groupoids(size: usize, count: usize, seed: u64) -> Vec<FiniteAlgebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    let space = size.checked_pow((size * size) as u32).unwrap_or(usize::MAX);
    while out.len() < count.min(space) {
        let t = random_table(&mut rng, size, 2);
        if seen.insert(t.clone()) {
            let op = FiniteAlgebra::operation_from_fn("m", size, 2, |a| t[a[0] * size + a[1]]);
            out.push(build(&format!("g{size}-{seed}-{}", out.len()), size, vec![op]));
        }
    }
    out
}

/// `count` random algebras with `1 ≤ n ≤ max_size` and at most two
/// operations of arity at most two.
pub fn random_algebras(max_size: usize, count: usize, seed: u64) -> Vec<FiniteAlgebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(1..=max_size);
            let ops = (0..rng.gen_range(0..=2))
                .map(|j| {
                    let arity = rng.gen_range(0..=2);
                    let t = random_table(&mut rng, n, arity);
                    FiniteAlgebra::operation_from_fn(&format!("f{j}"), n, arity, |a| {
                        t[crate::algebra::encode(a, n)]
                    })
                })
                .collect();
            build(&format!("r-{seed}-{i}"), n, ops)
        })
        .collect()
}

/// Which families a corpus run includes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub curated: bool,
    pub two_element: bool,
    /// Number of sampled 3-element groupoids.
    pub groupoids: usize,
    /// Number of sampled mixed algebras with `n ≤ 5`.
    pub random: usize,
    pub seed: u64,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            curated: true,
            two_element: true,
            groupoids: 500,
            random: 0,
            seed: 42,
        }
    }
}

impl CorpusSpec {
    /// Materializes the corpus, dropping later duplicates by operation
    /// tables.
    pub fn build(&self) -> Result<Vec<FiniteAlgebra>> {
        let mut all = Vec::new();
        if self.curated {
            all.extend(curated());
        }
        if self.two_element {
            all.extend(two_element_family());
        }
        all.extend(random_groupoids(3, self.groupoids, self.seed));
        all.extend(random_algebras(5, self.random, self.seed));
        let mut seen = HashSet::new();
        all.retain(|a| {
            let key: (usize, Vec<(usize, Vec<usize>)>) = (
                a.size(),
                a.operations()
                    .iter()
                    .map(|o| (o.arity(), o.table().to_vec()))
                    .collect(),
            );
            seen.insert(key)
        });
        Ok(all)
    }
}
