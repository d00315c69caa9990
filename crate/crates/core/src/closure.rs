//! Fixpoint closure of element vectors under the basic operations of an
//! algebra, applied pointwise.
//!
//! A vector of width `m` is an element of `A^m`; closing a generating set
//! of vectors computes the subuniverse of `A^m` they generate. With width 1
//! this is an ordinary generated subuniverse; with the coordinates indexed
//! by the points of some domain `D ⊆ A^k` and the projections plus constant
//! vectors as generators, it is the set of restrictions to `D` of all
//! polynomials of `A`.

use indexmap::IndexSet;

use crate::algebra::{FiniteAlgebra, Operation};

pub(crate) struct Closure {
    pub elems: IndexSet<Vec<usize>>,
    /// How each element was first produced, parallel to `elems`.
    pub origin: Vec<Origin>,
    pub cap_hit: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Origin {
    /// Index into the caller's generator list.
    Generator(usize),
    /// Operation index (into `alg.operations()`) applied to element indices.
    Apply(usize, Vec<usize>),
}

/// Semi-naive closure: element `i` is combined only with argument tuples
/// over `elems[..=i]` that mention `i`, so every tuple is visited once.
pub(crate) fn close_vectors<I>(alg: &FiniteAlgebra, width: usize, gens: I, cap: usize) -> Closure
where
    I: IntoIterator<Item = Vec<usize>>,
{
    let n = alg.size();
    let mut c = Closure {
        elems: IndexSet::new(),
        origin: Vec::new(),
        cap_hit: false,
    };
    let push = |c: &mut Closure, v: Vec<usize>, origin: Origin| -> bool {
        if c.elems.contains(&v) {
            return true;
        }
        if c.elems.len() >= cap {
            c.cap_hit = true;
            return false;
        }
        c.elems.insert(v);
        c.origin.push(origin);
        true
    };

    for (gi, g) in gens.into_iter().enumerate() {
        debug_assert_eq!(g.len(), width);
        if !push(&mut c, g, Origin::Generator(gi)) {
            return c;
        }
    }
    for (oi, op) in alg.operations().iter().enumerate() {
        if op.arity() == 0 && !push(&mut c, vec![op.table()[0]; width], Origin::Apply(oi, vec![])) {
            return c;
        }
    }

    let ops: Vec<(usize, &Operation)> = alg
        .operations()
        .iter()
        .enumerate()
        .filter(|(_, op)| op.arity() > 0)
        .collect();
    let mut buf = vec![0usize; width];
    let mut args: Vec<usize> = Vec::new();
    let mut i = 0;
    while i < c.elems.len() {
        for &(oi, op) in &ops {
            let k = op.arity();
            // `first` is the position of the first occurrence of `i`.
            for first in 0..k {
                if first > 0 && i == 0 {
                    break;
                }
                args.clear();
                args.resize(k, 0);
                args[first] = i;
                loop {
                    apply_pointwise(op, n, &c.elems, &args, &mut buf);
                    if !c.elems.contains(&buf[..])
                        && !push(&mut c, buf.clone(), Origin::Apply(oi, args.clone()))
                    {
                        return c;
                    }
                    if !advance(&mut args, first, i) {
                        break;
                    }
                }
            }
        }
        i += 1;
    }
    c
}

/// Odometer over tuples with `args[first] == i`, positions before `first`
/// in `0..i` and positions after it in `0..=i`.
fn advance(args: &mut [usize], first: usize, i: usize) -> bool {
    for pos in (0..args.len()).rev() {
        if pos == first {
            continue;
        }
        let bound = if pos < first { i } else { i + 1 };
        if args[pos] + 1 < bound {
            args[pos] += 1;
            return true;
        }
        args[pos] = 0;
    }
    false
}

fn apply_pointwise(
    op: &Operation,
    n: usize,
    elems: &IndexSet<Vec<usize>>,
    args: &[usize],
    out: &mut [usize],
) {
    let table = op.table();
    for (q, slot) in out.iter_mut().enumerate() {
        let mut idx = 0;
        for &a in args {
            idx = idx * n + elems[a][q];
        }
        *slot = table[idx];
    }
}
