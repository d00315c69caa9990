//! Slow, direct reimplementations used as test oracles. Nothing here calls
//! into the algorithms under test beyond evaluating basic operations.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use tct_core::algebra::decode;
use tct_core::{FiniteAlgebra, Partition};

/// Every equivalence on `0..n` as a block-of vector (`v[x]` = least member
/// of the block of `x`).
pub fn equivalences(n: usize) -> Vec<Vec<usize>> {
    fn go(x: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if x == n {
            out.push(cur.clone());
            return;
        }
        let mut leaders: Vec<usize> = cur.clone();
        leaders.sort_unstable();
        leaders.dedup();
        for l in leaders {
            cur.push(l);
            go(x + 1, n, cur, out);
            cur.pop();
        }
        cur.push(x);
        go(x + 1, n, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

/// Compatibility by substituting related elements into every argument
/// tuple at every position.
pub fn compatible(a: &FiniteAlgebra, blocks: &[usize]) -> bool {
    let n = a.size();
    for op in a.operations() {
        let k = op.arity();
        for code in 0..n.pow(k as u32) {
            let args = decode(code, n, k);
            let v = op.eval(n, &args);
            for pos in 0..k {
                for b in 0..n {
                    if blocks[b] == blocks[args[pos]] {
                        let mut other = args.clone();
                        other[pos] = b;
                        if blocks[op.eval(n, &other)] != blocks[v] {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

pub fn congruences(a: &FiniteAlgebra) -> BTreeSet<String> {
    equivalences(a.size())
        .into_iter()
        .filter(|b| compatible(a, b))
        .map(|b| Partition::from_labels(&b).to_string())
        .collect()
}

/// The congruence containing `pairs` with the fewest related pairs.
pub fn least_congruence(a: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Vec<usize> {
    let related_count = |b: &[usize]| {
        (0..b.len())
            .flat_map(|x| (0..b.len()).map(move |y| (x, y)))
            .filter(|&(x, y)| b[x] == b[y])
            .count()
    };
    equivalences(a.size())
        .into_iter()
        .filter(|b| compatible(a, b) && pairs.iter().all(|&(x, y)| b[x] == b[y]))
        .min_by_key(|b| related_count(b))
        .expect("the full relation qualifies")
}

/// Unary polynomial tables reached by terms of depth at most `depth`
/// (constants and the variable at depth 0).
pub fn unary_terms(a: &FiniteAlgebra, depth: usize) -> BTreeSet<Vec<usize>> {
    let n = a.size();
    let mut set: BTreeSet<Vec<usize>> = (0..n).map(|c| vec![c; n]).collect();
    set.insert((0..n).collect());
    for _ in 0..depth {
        let current: Vec<Vec<usize>> = set.iter().cloned().collect();
        let mut next = set.clone();
        for op in a.operations() {
            let k = op.arity();
            for code in 0..current.len().pow(k as u32) {
                let pick = decode(code, current.len(), k);
                let f: Vec<usize> = (0..n)
                    .map(|x| {
                        let args: Vec<usize> = pick.iter().map(|&i| current[i][x]).collect();
                        op.eval(n, &args)
                    })
                    .collect();
                next.insert(f);
            }
        }
        if next == set {
            break;
        }
        set = next;
    }
    set
}

/// Every unary polynomial: terms iterated to their fixpoint.
pub fn all_unary_polynomials(a: &FiniteAlgebra) -> BTreeSet<Vec<usize>> {
    unary_terms(a, usize::MAX)
}

/// Minimal sets straight from the definition: inclusion-minimal images
/// `f(A)` over unary polynomials with `f(θ) ⊄ δ`.
pub fn minimal_set_universes(a: &FiniteAlgebra, delta: &Partition, theta: &Partition) -> BTreeSet<Vec<usize>> {
    let n = a.size();
    let images: HashSet<Vec<usize>> = all_unary_polynomials(a)
        .into_iter()
        .filter(|f| {
            (0..n).any(|x| (0..n).any(|y| theta.related(x, y) && !delta.related(f[x], f[y])))
        })
        .map(|f| {
            let mut img = f;
            img.sort_unstable();
            img.dedup();
            img
        })
        .collect();
    images
        .iter()
        .filter(|u| !images.iter().any(|v| v.len() < u.len() && v.iter().all(|x| u.contains(x))))
        .cloned()
        .collect()
}

/// Binary polynomial operations of a 2-element algebra as 4-bit tables
/// over `(0,0), (0,1), (1,0), (1,1)`.
pub fn binary_polynomials_2(a: &FiniteAlgebra) -> BTreeSet<[usize; 4]> {
    assert_eq!(a.size(), 2);
    let mut set: BTreeSet<[usize; 4]> = [[0, 0, 1, 1], [0, 1, 0, 1], [0; 4], [1; 4]].into_iter().collect();
    loop {
        let current: Vec<[usize; 4]> = set.iter().copied().collect();
        let mut next = set.clone();
        for op in a.operations() {
            let k = op.arity();
            for code in 0..current.len().pow(k as u32) {
                let pick = decode(code, current.len(), k);
                let mut f = [0; 4];
                for (p, slot) in f.iter_mut().enumerate() {
                    let args: Vec<usize> = pick.iter().map(|&i| current[i][p]).collect();
                    *slot = op.eval(2, &args);
                }
                next.insert(f);
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

/// Type of the unique cover of a 2-element algebra, read off the clone of
/// its polynomial operations (the clones containing both constants).
pub fn two_element_type(a: &FiniteAlgebra) -> u8 {
    let clone = binary_polynomials_2(a);
    let meet = clone.contains(&[0, 0, 0, 1]);
    let join = clone.contains(&[0, 1, 1, 1]);
    let xor = clone.contains(&[0, 1, 1, 0]) || clone.contains(&[1, 0, 0, 1]);
    if clone.len() == 16 {
        3
    } else if meet && join {
        4
    } else if xor {
        2
    } else if meet || join {
        5
    } else {
        1
    }
}

/// Direct modular law over all triples of a lattice given by its order.
/// Joins are the upper bound with the largest up-set, meets dually.
pub fn modular_by_law(len: usize, leq: impl Fn(usize, usize) -> bool) -> bool {
    let up: Vec<usize> = (0..len).map(|x| (0..len).filter(|&y| leq(x, y)).count()).collect();
    let down: Vec<usize> = (0..len).map(|x| (0..len).filter(|&y| leq(y, x)).count()).collect();
    let mut join = vec![0; len * len];
    let mut meet = vec![0; len * len];
    for x in 0..len {
        for y in 0..len {
            join[x * len + y] = (0..len).filter(|&z| leq(x, z) && leq(y, z)).max_by_key(|&z| up[z]).expect("lattice");
            meet[x * len + y] = (0..len).filter(|&z| leq(z, x) && leq(z, y)).max_by_key(|&z| down[z]).expect("lattice");
        }
    }
    for a in 0..len {
        for c in 0..len {
            if !leq(a, c) {
                continue;
            }
            for b in 0..len {
                if join[a * len + meet[b * len + c]] != meet[join[a * len + b] * len + c] {
                    return false;
                }
            }
        }
    }
    true
}

/// Relabels the elements of `a` by the permutation `sigma`.
pub fn permuted(a: &FiniteAlgebra, sigma: &[usize]) -> FiniteAlgebra {
    let n = a.size();
    let mut inv = vec![0; n];
    for (x, &y) in sigma.iter().enumerate() {
        inv[y] = x;
    }
    let ops = a
        .operations()
        .iter()
        .map(|op| {
            FiniteAlgebra::operation_from_fn(op.name(), n, op.arity(), |args| {
                let pre: Vec<usize> = args.iter().map(|&y| inv[y]).collect();
                sigma[op.eval(n, &pre)]
            })
        })
        .collect();
    FiniteAlgebra::new(format!("{}-perm", a.name()), n, ops).unwrap()
}

pub fn permute_partition(p: &Partition, sigma: &[usize]) -> Partition {
    let mut labels = vec![0; p.size()];
    for x in 0..p.size() {
        labels[sigma[x]] = p.block_id(x);
    }
    Partition::from_labels(&labels)
}
