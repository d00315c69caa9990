//! Congruence tests, generated congruences and the full congruence lattice.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::algebra::{odometer, FiniteAlgebra};
use crate::error::{Error, Resource, Result};
use crate::lattice::Lattice;
use crate::limits::Limits;
use crate::partition::{Partition, UnionFind};

/// Largest universe accepted by [`brute_force_con`] (Bell(7) = 877).
pub const BRUTE_FORCE_MAX: usize = 7;

/// Compatibility test. Substituting one argument position at a time is
/// enough: the general case follows by transitivity.
pub fn is_congruence(a: &FiniteAlgebra, pi: &Partition) -> Result<bool> {
    if pi.size() != a.size() {
        return Err(Error::SizeMismatch {
            expected: a.size(),
            got: pi.size(),
        });
    }
    let n = a.size();
    // Each element paired with its block's least member spans the relation.
    let spanning: Vec<(usize, usize)> = (0..n)
        .filter(|&x| pi.block_id(x) != x)
        .map(|x| (pi.block_id(x), x))
        .collect();
    for op in a.operations() {
        let k = op.arity();
        if k == 0 {
            continue;
        }
        let mut others = vec![0usize; k - 1];
        let mut args = vec![0usize; k];
        loop {
            for pos in 0..k {
                args[..pos].copy_from_slice(&others[..pos]);
                args[pos + 1..].copy_from_slice(&others[pos..]);
                for &(x, y) in &spanning {
                    args[pos] = x;
                    let fx = op.eval(n, &args);
                    args[pos] = y;
                    let fy = op.eval(n, &args);
                    if !pi.related(fx, fy) {
                        return Ok(false);
                    }
                }
            }
            if !odometer(&mut others, n) {
                break;
            }
        }
    }
    Ok(true)
}

/// Least congruence containing `pairs`.
pub fn cg_generated(a: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Result<Partition> {
    for &(x, y) in pairs {
        a.check_element(x)?;
        a.check_element(y)?;
    }
    Ok(cg_from(a, &Partition::identity(a.size()), pairs))
}

/// Least congruence containing `base` and `pairs`.
pub(crate) fn cg_from(a: &FiniteAlgebra, base: &Partition, pairs: &[(usize, usize)]) -> Partition {
    let n = a.size();
    let mut uf = UnionFind::new(n);
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    for x in 0..n {
        let r = base.block_id(x);
        if r != x && uf.union(r, x) {
            queue.push_back((r, x));
        }
    }
    for &(x, y) in pairs {
        if uf.union(x, y) {
            queue.push_back((x, y));
        }
    }
    let ops: Vec<_> = a.operations().iter().filter(|op| op.arity() > 0).collect();
    let mut args = Vec::new();
    let mut others = Vec::new();
    while let Some((x, y)) = queue.pop_front() {
        for op in &ops {
            let k = op.arity();
            others.clear();
            others.resize(k - 1, 0);
            args.clear();
            args.resize(k, 0);
            loop {
                for pos in 0..k {
                    args[..pos].copy_from_slice(&others[..pos]);
                    args[pos + 1..].copy_from_slice(&others[pos..]);
                    args[pos] = x;
                    let fx = op.eval(n, &args);
                    args[pos] = y;
                    let fy = op.eval(n, &args);
                    if uf.union(fx, fy) {
                        queue.push_back((fx, fy));
                    }
                }
                if !odometer(&mut others, n) {
                    break;
                }
            }
        }
    }
    uf.canonical()
}

/// All congruences of an algebra, ordered canonically (by rank, then block
/// ids), so element 0 is the equality relation and the last is the full one.
#[derive(Debug, Clone)]
pub struct CongruenceLattice {
    algebra: FiniteAlgebra,
    elements: Vec<Partition>,
    index: HashMap<Partition, usize>,
    up: Vec<FixedBitSet>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    covers: Vec<(usize, usize)>,
}

pub fn con_lattice(a: &FiniteAlgebra, limits: &Limits) -> Result<CongruenceLattice> {
    let n = a.size();
    let mut principals: Vec<Partition> = Vec::new();
    {
        let mut seen = HashMap::new();
        for x in 0..n {
            for y in x + 1..n {
                let p = cg_from(a, &Partition::identity(n), &[(x, y)]);
                if !seen.contains_key(&p) {
                    seen.insert(p.clone(), ());
                    principals.push(p);
                }
            }
        }
    }

    // Every congruence is a join of principal ones, so closing the equality
    // relation under joins with principals reaches the whole lattice.
    let mut found: Vec<Partition> = vec![Partition::identity(n)];
    let mut found_index: HashMap<Partition, usize> = HashMap::new();
    found_index.insert(found[0].clone(), 0);
    let mut joins: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < found.len() {
        let x = found[i].clone();
        let mut row = Vec::with_capacity(principals.len());
        for p in &principals {
            let j = if p.refines(&x) {
                x.clone()
            } else {
                cg_from(a, &x, &p.pairs())
            };
            let idx = match found_index.get(&j) {
                Some(&idx) => idx,
                None => {
                    limits.check(Resource::Congruences, found.len() + 1)?;
                    found.push(j.clone());
                    found_index.insert(j, found.len() - 1);
                    found.len() - 1
                }
            };
            row.push(idx);
        }
        joins.push(row);
        i += 1;
    }

    let mut order: Vec<usize> = (0..found.len()).collect();
    order.sort_by(|&x, &y| found[x].canonical_cmp(&found[y]));
    let mut rename = vec![0; found.len()];
    for (new, &old) in order.iter().enumerate() {
        rename[old] = new;
    }
    let elements: Vec<Partition> = order.iter().map(|&old| found[old].clone()).collect();
    let index: HashMap<Partition, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let m = elements.len();
    let ranks: Vec<usize> = elements.iter().map(|p| p.rank()).collect();

    let mut up = vec![FixedBitSet::with_capacity(m); m];
    for x in 0..m {
        up[x].insert(x);
        for y in x + 1..m {
            if ranks[y] > ranks[x] && elements[x].refines(&elements[y]) {
                up[x].insert(y);
            }
        }
    }

    // Upper covers of x are the minimal elements among its joins with principals.
    let mut upper_covers = vec![Vec::new(); m];
    let mut lower_covers = vec![Vec::new(); m];
    let mut covers = Vec::new();
    for old in 0..found.len() {
        let x = rename[old];
        let mut cands: Vec<usize> = joins[old].iter().map(|&j| rename[j]).filter(|&j| j != x).collect();
        cands.sort_unstable();
        cands.dedup();
        for &c in &cands {
            let minimal = cands.iter().all(|&d| d == c || !up[d].contains(c));
            if minimal {
                upper_covers[x].push(c);
                lower_covers[c].push(x);
            }
        }
    }
    for x in 0..m {
        lower_covers[x].sort_unstable();
        for &c in &upper_covers[x] {
            covers.push((x, c));
        }
    }

    Ok(CongruenceLattice {
        algebra: a.clone(),
        elements,
        index,
        up,
        upper_covers,
        lower_covers,
        covers,
    })
}

impl CongruenceLattice {
    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn elements(&self) -> &[Partition] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Partition {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Covering pairs `(lower, upper)` ordered by lower then upper index.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn equality(&self) -> usize {
        0
    }

    pub fn full(&self) -> usize {
        self.elements.len() - 1
    }

    /// Index of the congruence generated by `pairs` joined with element `base`.
    pub fn generated_by(&self, base: usize, pairs: &[(usize, usize)]) -> usize {
        let p = cg_from(&self.algebra, &self.elements[base], pairs);
        self.index[&p]
    }
}

impl Lattice for CongruenceLattice {
    fn len(&self) -> usize {
        self.elements.len()
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    fn join(&self, a: usize, b: usize) -> usize {
        if self.leq(a, b) {
            return b;
        }
        if self.leq(b, a) {
            return a;
        }
        let p = cg_from(&self.algebra, &self.elements[a], &self.elements[b].pairs());
        self.index[&p]
    }

    fn meet(&self, a: usize, b: usize) -> usize {
        if self.leq(a, b) {
            return a;
        }
        if self.leq(b, a) {
            return b;
        }
        self.index[&self.elements[a].meet(&self.elements[b])]
    }

    fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper_covers[a]
    }

    fn lower_covers(&self, a: usize) -> &[usize] {
        &self.lower_covers[a]
    }

    fn name(&self, a: usize) -> String {
        self.elements[a].to_string()
    }

    // Partition-level shortcuts; a join of congruences is their join as
    // equivalence relations, so no closure is needed for the comparison.
    fn meet_below(&self, a: usize, b: usize, c: usize) -> bool {
        if self.leq(a, c) || self.leq(b, c) {
            return true;
        }
        let (pa, pb, pc) = (&self.elements[a], &self.elements[b], &self.elements[c]);
        pa.meet(pb).refines(pc)
    }

    fn join_above(&self, a: usize, b: usize, c: usize) -> bool {
        if self.leq(c, a) || self.leq(c, b) {
            return true;
        }
        let (pa, pb, pc) = (&self.elements[a], &self.elements[b], &self.elements[c]);
        pc.refines(&pa.join(pb))
    }
}

/// Every partition of `{0..n-1}` (restricted growth strings, lexicographic).
pub fn all_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut rgs = vec![0usize; n];
    loop {
        out.push(Partition::from_labels(&rgs));
        // Next restricted growth string.
        let mut pos = n;
        loop {
            if pos == 1 {
                return out;
            }
            pos -= 1;
            let max_prefix = rgs[..pos].iter().copied().max().unwrap_or(0);
            if rgs[pos] <= max_prefix {
                rgs[pos] += 1;
                for r in rgs.iter_mut().skip(pos + 1) {
                    *r = 0;
                }
                break;
            }
        }
    }
}

/// Oracle: filters all partitions by [`is_congruence`].
pub fn brute_force_con(a: &FiniteAlgebra) -> Result<Vec<Partition>> {
    if a.size() > BRUTE_FORCE_MAX {
        return Err(Error::CapExceeded {
            resource: Resource::BruteForceSize,
            limit: BRUTE_FORCE_MAX,
        });
    }
    let mut out = Vec::new();
    for p in all_partitions(a.size()) {
        if is_congruence(a, &p)? {
            out.push(p);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn z4_congruences() {
        let z4 = corpus::cyclic_group(4);
        assert!(is_congruence(&z4, &part("0,2|1,3")).unwrap());
        assert!(!is_congruence(&z4, &part("0,1|2,3")).unwrap());
        assert!(is_congruence(&z4, &Partition::identity(4)).unwrap());
        assert!(matches!(
            is_congruence(&z4, &Partition::identity(3)),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn generated_congruences() {
        let z4 = corpus::cyclic_group(4);
        assert_eq!(cg_generated(&z4, &[(0, 2)]).unwrap(), part("0,2|1,3"));
        assert!(cg_generated(&corpus::semilattice2(), &[(0, 1)]).unwrap().is_full());
        assert!(cg_generated(&z4, &[]).unwrap().is_identity());
        assert!(cg_generated(&z4, &[(0, 9)]).is_err());
    }

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (1..=6).map(|n| all_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn chain_semilattice_lattice() {
        let l = con_lattice(&corpus::chain_semilattice(3), &Limits::default()).unwrap();
        let names: Vec<String> = l.elements().iter().map(|p| p.to_string()).collect();
        assert_eq!(names, vec!["0|1|2", "0,1|2", "0|1,2", "0,1,2"]);
        assert_eq!(l.covers(), &[(0, 1), (0, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn partition_lattice_of_no_op_algebra() {
        let l = con_lattice(&corpus::no_ops(4), &Limits::default()).unwrap();
        assert_eq!(l.len(), 15);
        // Covers of Π4: 6 + 6*3 + 7*1.
        assert_eq!(l.covers().len(), 31);
        assert_eq!(l.equality(), 0);
        assert!(l.element(l.full()).is_full());
    }

    #[test]
    fn trivial_algebra_lattice() {
        let l = con_lattice(&corpus::trivial(), &Limits::default()).unwrap();
        assert_eq!(l.len(), 1);
        assert!(l.covers().is_empty());
    }

    #[test]
    fn brute_force_counts() {
        assert_eq!(brute_force_con(&corpus::cyclic_group(4)).unwrap().len(), 3);
        assert_eq!(brute_force_con(&corpus::no_ops(4)).unwrap().len(), 15);
        assert_eq!(brute_force_con(&corpus::boolean2()).unwrap().len(), 2);
        assert!(brute_force_con(&corpus::no_ops(8)).is_err());
    }

    #[test]
    fn congruence_cap_fails_loudly() {
        let limits = Limits {
            max_congruences: 10,
            ..Limits::default()
        };
        assert!(matches!(
            con_lattice(&corpus::no_ops(4), &limits),
            Err(Error::CapExceeded {
                resource: Resource::Congruences,
                ..
            })
        ));
    }

    #[test]
    fn lattice_operations_agree_with_partitions() {
        let l = con_lattice(&corpus::no_ops(4), &Limits::default()).unwrap();
        for a in 0..l.len() {
            for b in 0..l.len() {
                let j = l.element(a).join(l.element(b));
                let m = l.element(a).meet(l.element(b));
                assert_eq!(l.element(l.join(a, b)), &j);
                assert_eq!(l.element(l.meet(a, b)), &m);
            }
        }
    }
}
