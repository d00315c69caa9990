use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An equivalence relation on `{0..n-1}` in canonical form: the block id of
/// every element is the least member of its block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    ids: Vec<usize>,
}

/// Union-find with path halving. `canonical` yields least-member ids.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn from_partition(p: &Partition) -> Self {
        UnionFind {
            parent: p.ids.clone(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when two distinct classes were merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        // Keep the smaller root so roots stay least members.
        if ra < rb {
            self.parent[rb] = ra;
        } else {
            self.parent[ra] = rb;
        }
        true
    }

    pub fn canonical(mut self) -> Partition {
        let ids = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition { ids }
    }
}

impl Partition {
    pub fn identity(n: usize) -> Self {
        Partition {
            ids: (0..n).collect(),
        }
    }

    pub fn full(n: usize) -> Self {
        Partition { ids: vec![0; n] }
    }

    /// Equivalence closure of `pairs` on `{0..n-1}`.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut uf = UnionFind::new(n);
        for &(a, b) in pairs {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::OutOfRange { element: x, size: n });
                }
            }
            uf.union(a, b);
        }
        Ok(uf.canonical())
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut uf = UnionFind::new(n);
        let mut seen = vec![false; n];
        for block in blocks {
            for &x in block {
                if x >= n {
                    return Err(Error::OutOfRange { element: x, size: n });
                }
                if seen[x] {
                    return Err(Error::Config(format!("element {x} appears in two blocks")));
                }
                seen[x] = true;
                uf.union(block[0], x);
            }
        }
        Ok(uf.canonical())
    }

    /// Partition from a block-label array of any labelling.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut first = std::collections::HashMap::new();
        let ids = labels
            .iter()
            .enumerate()
            .map(|(x, l)| *first.entry(*l).or_insert(x))
            .collect();
        Partition { ids }
    }

    pub fn size(&self) -> usize {
        self.ids.len()
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn block_id(&self, x: usize) -> usize {
        self.ids[x]
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.ids[a] == self.ids[b]
    }

    pub fn num_blocks(&self) -> usize {
        self.ids.iter().enumerate().filter(|(x, &id)| *x == id).count()
    }

    /// Blocks ordered by least member, members ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut index = vec![usize::MAX; self.ids.len()];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (x, &id) in self.ids.iter().enumerate() {
            if id == x {
                index[x] = blocks.len();
                blocks.push(vec![x]);
            } else {
                blocks[index[id]].push(x);
            }
        }
        blocks
    }

    pub fn is_identity(&self) -> bool {
        self.ids.iter().enumerate().all(|(x, &id)| x == id)
    }

    pub fn is_full(&self) -> bool {
        self.ids.iter().all(|&id| id == 0)
    }

    /// `self ≤ other` (every block of `self` lies inside a block of `other`).
    pub fn refines(&self, other: &Partition) -> bool {
        debug_assert_eq!(self.size(), other.size());
        self.ids
            .iter()
            .enumerate()
            .all(|(x, &id)| other.ids[x] == other.ids[id])
    }

    pub fn meet(&self, other: &Partition) -> Partition {
        let mut first = std::collections::HashMap::new();
        let ids = (0..self.size())
            .map(|x| *first.entry((self.ids[x], other.ids[x])).or_insert(x))
            .collect();
        Partition { ids }
    }

    /// Join as equivalence relations (transitive closure of the union).
    pub fn join(&self, other: &Partition) -> Partition {
        let mut uf = UnionFind::from_partition(self);
        for (x, &id) in other.ids.iter().enumerate() {
            uf.union(x, id);
        }
        uf.canonical()
    }

    /// `n - #blocks`; strictly monotone along the refinement order.
    pub fn rank(&self) -> usize {
        self.size() - self.num_blocks()
    }

    /// Non-trivial pairs `(a, b)` with `a < b`, `a ~ b`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for block in self.blocks() {
            for (i, &a) in block.iter().enumerate() {
                for &b in &block[i + 1..] {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Restriction to a subset, as a partition of `subset` (by position).
    pub fn restrict(&self, subset: &[usize]) -> Partition {
        Partition::from_labels(&subset.iter().map(|&x| self.ids[x]).collect::<Vec<_>>())
    }

    /// Ordering used for lattice elements: by rank, then block ids.
    pub fn canonical_cmp(&self, other: &Partition) -> std::cmp::Ordering {
        self.rank()
            .cmp(&other.rank())
            .then_with(|| self.ids.cmp(&other.ids))
    }
}

impl fmt::Display for Partition {
    /// Canonical string, e.g. `0,2|1,3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks = self.blocks();
        for (i, block) in blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            for (j, x) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses the canonical string form. Every element `0..n-1` must appear
    /// exactly once, where `n` is one more than the largest element.
    fn from_str(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for part in s.trim().split('|') {
            let block = part
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|e| Error::Config(format!("bad partition `{s}`: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            blocks.push(block);
        }
        let n = blocks.iter().flatten().count();
        if blocks.iter().flatten().any(|&x| x >= n) {
            return Err(Error::Config(format!(
                "bad partition `{s}`: elements must be exactly 0..{n}"
            )));
        }
        Partition::from_blocks(n, &blocks)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_string_round_trip() {
        let p = Partition::from_pairs(4, &[(3, 1), (2, 0)]).unwrap();
        assert_eq!(p.ids(), &[0, 1, 0, 1]);
        assert_eq!(p.to_string(), "0,2|1,3");
        assert_eq!("0,2|1,3".parse::<Partition>().unwrap(), p);
        assert_eq!(Partition::identity(3).to_string(), "0|1|2");
        assert_eq!(Partition::full(1).to_string(), "0");
    }

    #[test]
    fn malformed_strings_rejected() {
        assert!("0,1|1".parse::<Partition>().is_err());
        assert!("0,3".parse::<Partition>().is_err());
        assert!("a|b".parse::<Partition>().is_err());
    }

    #[test]
    fn meet_and_join() {
        let a: Partition = "0,2|1,3".parse().unwrap();
        let b: Partition = "0,1|2,3".parse().unwrap();
        assert!(a.meet(&b).is_identity());
        assert!(a.join(&b).is_full());
        let c: Partition = "0,1|2|3".parse().unwrap();
        assert!(c.refines(&b));
        assert!(!b.refines(&c));
    }

    #[test]
    fn restriction_to_subset() {
        let p: Partition = "0,2|1,3".parse().unwrap();
        assert_eq!(p.restrict(&[1, 2, 3]).to_string(), "0,2|1");
    }

    fn arb_partition(n: usize) -> impl Strategy<Value = Partition> {
        proptest::collection::vec(0..n, n).prop_map(|l| Partition::from_labels(&l))
    }

    proptest! {
        #[test]
        fn canonical_form_holds(p in arb_partition(7)) {
            for x in 0..p.size() {
                let least = (0..p.size()).find(|&y| p.related(x, y)).unwrap();
                prop_assert_eq!(p.block_id(x), least);
            }
            prop_assert_eq!(p.to_string().parse::<Partition>().unwrap(), p);
        }

        #[test]
        fn meet_join_bounds(a in arb_partition(6), b in arb_partition(6)) {
            let m = a.meet(&b);
            let j = a.join(&b);
            prop_assert!(m.refines(&a) && m.refines(&b));
            prop_assert!(a.refines(&j) && b.refines(&j));
        }
    }
}
