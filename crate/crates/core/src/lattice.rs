//! Finite lattices: pentagon (N5) and diamond (M3) detection, the modular
//! and distributive tests, and shrinking a pentagon's critical quotient to
//! a covering pair.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tct::TypeLabel;

/// A finite lattice on element indices `0..len()`.
pub trait Lattice {
    fn len(&self) -> usize;
    fn leq(&self, a: usize, b: usize) -> bool;
    fn join(&self, a: usize, b: usize) -> usize;
    fn meet(&self, a: usize, b: usize) -> usize;
    fn upper_covers(&self, a: usize) -> &[usize];
    fn lower_covers(&self, a: usize) -> &[usize];
    fn name(&self, a: usize) -> String;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    fn is_cover(&self, a: usize, b: usize) -> bool {
        self.upper_covers(a).contains(&b)
    }

    /// `a ∧ b ≤ c`
    fn meet_below(&self, a: usize, b: usize, c: usize) -> bool {
        self.leq(self.meet(a, b), c)
    }

    /// `a ∨ b ≥ c`
    fn join_above(&self, a: usize, b: usize, c: usize) -> bool {
        self.leq(c, self.join(a, b))
    }
}

/// A lattice given explicitly by its order, with precomputed join and meet
/// tables.
#[derive(Debug, Clone)]
pub struct FiniteLattice {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
}

impl FiniteLattice {
    /// Verifies that `leq` is a partial order in which every pair has a
    /// least upper and a greatest lower bound.
    pub fn from_order(names: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = names.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::NotALattice("order matrix has wrong shape".into()));
        }
        if n == 0 {
            return Err(Error::NotALattice("empty".into()));
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(Error::NotALattice(format!("{} ≰ itself", names[a])));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(Error::NotALattice(format!(
                        "{} and {} are mutually below",
                        names[a], names[b]
                    )));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err(Error::NotALattice("order is not transitive".into()));
                    }
                }
            }
        }
        let bound = |a: usize, b: usize, upper: bool| -> Option<usize> {
            let cands: Vec<usize> = (0..n)
                .filter(|&c| {
                    if upper {
                        leq[a][c] && leq[b][c]
                    } else {
                        leq[c][a] && leq[c][b]
                    }
                })
                .collect();
            cands.iter().copied().find(|&c| {
                cands
                    .iter()
                    .all(|&d| if upper { leq[c][d] } else { leq[d][c] })
            })
        };
        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                join[a][b] = bound(a, b, true).ok_or_else(|| {
                    Error::NotALattice(format!("no join for {} and {}", names[a], names[b]))
                })?;
                meet[a][b] = bound(a, b, false).ok_or_else(|| {
                    Error::NotALattice(format!("no meet for {} and {}", names[a], names[b]))
                })?;
            }
        }
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        for a in 0..n {
            for b in 0..n {
                if a != b
                    && leq[a][b]
                    && !(0..n).any(|c| c != a && c != b && leq[a][c] && leq[c][b])
                {
                    upper[a].push(b);
                    lower[b].push(a);
                }
            }
        }
        Ok(FiniteLattice {
            names,
            leq,
            join,
            meet,
            upper,
            lower,
        })
    }

    /// Builds the order as the reflexive-transitive closure of covering pairs.
    pub fn from_covers(names: &[&str], covers: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for (a, row) in leq.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in covers {
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        Self::from_order(names.iter().map(|s| s.to_string()).collect(), leq)
    }

    /// The pentagon `0 < a < c < 1`, `0 < b < 1`.
    pub fn n5() -> Self {
        Self::from_covers(
            &["0", "a", "b", "c", "1"],
            &[(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)],
        )
        .expect("N5 is a lattice")
    }

    /// The diamond with three atoms.
    pub fn m3() -> Self {
        Self::from_covers(
            &["0", "a", "b", "c", "1"],
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        )
        .expect("M3 is a lattice")
    }

    pub fn chain(len: usize) -> Self {
        let names: Vec<String> = (0..len).map(|i| i.to_string()).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let covers: Vec<(usize, usize)> = (1..len).map(|i| (i - 1, i)).collect();
        Self::from_covers(&refs, &covers).expect("chains are lattices")
    }
}

impl Lattice for FiniteLattice {
    fn len(&self) -> usize {
        self.names.len()
    }
    fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }
    fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }
    fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }
    fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper[a]
    }
    fn lower_covers(&self, a: usize) -> &[usize] {
        &self.lower[a]
    }
    fn name(&self, a: usize) -> String {
        self.names[a].clone()
    }
}

/// A pentagon `[γ, δ, θ]`: `δ < θ`, `γ ∨ δ ≥ θ`, `γ ∧ θ ≤ δ`, five distinct
/// generated elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PentagonWitness {
    pub gamma: usize,
    pub delta: usize,
    pub theta: usize,
    /// `γ ∨ δ`, the top of the pentagon.
    pub join: usize,
    /// `γ ∧ θ`, the bottom.
    pub meet: usize,
    /// `(δ′, θ′)` with `δ ≤ δ′ ≺ θ′ ≤ θ`, once shrunk.
    pub critical_cover: Option<(usize, usize)>,
    pub type_label: Option<TypeLabel>,
}

/// Witness with element names instead of indices, for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedPentagon {
    pub gamma: String,
    pub delta: String,
    pub theta: String,
    pub join: String,
    pub meet: String,
    pub critical_cover: Option<(String, String)>,
    pub type_label: Option<TypeLabel>,
}

impl PentagonWitness {
    pub fn named<L: Lattice + ?Sized>(&self, l: &L) -> NamedPentagon {
        NamedPentagon {
            gamma: l.name(self.gamma),
            delta: l.name(self.delta),
            theta: l.name(self.theta),
            join: l.name(self.join),
            meet: l.name(self.meet),
            critical_cover: self.critical_cover.map(|(a, b)| (l.name(a), l.name(b))),
            type_label: self.type_label,
        }
    }

    pub fn elements(&self) -> [usize; 5] {
        [self.meet, self.delta, self.theta, self.gamma, self.join]
    }
}

/// Tests the pentagon conditions for `(γ, δ, θ)`. Uses only the lattice
/// order and operations.
pub fn pentagon_at<L: Lattice + ?Sized>(
    l: &L,
    gamma: usize,
    delta: usize,
    theta: usize,
) -> Option<PentagonWitness> {
    if !l.lt(delta, theta) {
        return None;
    }
    // γ comparable to δ or θ collapses the five elements.
    if l.comparable(gamma, delta) || l.comparable(gamma, theta) {
        return None;
    }
    if !l.meet_below(gamma, theta, delta) || !l.join_above(gamma, delta, theta) {
        return None;
    }
    let join = l.join(gamma, delta);
    let meet = l.meet(gamma, theta);
    let five = [meet, delta, theta, gamma, join];
    for i in 0..5 {
        for j in i + 1..5 {
            if five[i] == five[j] {
                return None;
            }
        }
    }
    Some(PentagonWitness {
        gamma,
        delta,
        theta,
        join,
        meet,
        critical_cover: None,
        type_label: None,
    })
}

/// Visits every pentagon in deterministic order (θ, then δ, then γ
/// ascending). Stops early when `visit` breaks.
pub fn for_each_pentagon<L, F>(l: &L, mut visit: F)
where
    L: Lattice + ?Sized,
    F: FnMut(PentagonWitness) -> ControlFlow<()>,
{
    let n = l.len();
    for theta in 0..n {
        for delta in 0..n {
            if !l.lt(delta, theta) {
                continue;
            }
            for gamma in 0..n {
                if let Some(p) = pentagon_at(l, gamma, delta, theta) {
                    if visit(p).is_break() {
                        return;
                    }
                }
            }
        }
    }
}

pub fn find_pentagons<L: Lattice + ?Sized>(l: &L) -> Vec<PentagonWitness> {
    let mut out = Vec::new();
    for_each_pentagon(l, |p| {
        out.push(p);
        ControlFlow::Continue(())
    });
    out
}

pub fn first_pentagon<L: Lattice + ?Sized>(l: &L) -> Option<PentagonWitness> {
    let mut out = None;
    for_each_pentagon(l, |p| {
        out = Some(p);
        ControlFlow::Break(())
    });
    out
}

/// Three distinct elements with equal pairwise meets and equal pairwise joins.
pub fn first_diamond<L: Lattice + ?Sized>(l: &L) -> Option<[usize; 3]> {
    let n = l.len();
    for a in 0..n {
        for b in a + 1..n {
            if l.comparable(a, b) {
                continue;
            }
            let m = l.meet(a, b);
            let j = l.join(a, b);
            for c in b + 1..n {
                if l.comparable(a, c) || l.comparable(b, c) {
                    continue;
                }
                if l.meet(a, c) == m && l.meet(b, c) == m && l.join(a, c) == j && l.join(b, c) == j {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeShape {
    pub modular: bool,
    pub distributive: bool,
}

/// Modular iff pentagon-free; distributive iff modular and diamond-free.
pub fn check_modular_distributive<L: Lattice + ?Sized>(l: &L) -> LatticeShape {
    let modular = first_pentagon(l).is_none();
    let distributive = modular && first_diamond(l).is_none();
    LatticeShape {
        modular,
        distributive,
    }
}

/// Direct test of the modular law `a ≤ c ⇒ a ∨ (b ∧ c) = (a ∨ b) ∧ c`,
/// independent of pentagon search.
pub fn satisfies_modular_law<L: Lattice + ?Sized>(l: &L) -> bool {
    let n = l.len();
    for a in 0..n {
        for c in 0..n {
            if a == c || !l.leq(a, c) {
                continue;
            }
            for b in 0..n {
                if l.join(a, l.meet(b, c)) != l.meet(l.join(a, b), c) {
                    return false;
                }
            }
        }
    }
    true
}

/// Fills `critical_cover`. With `δ ≺ θ` nothing changes; otherwise `θ′ = θ`
/// and `δ′` is the least-indexed lower cover of `θ` above `δ`.
pub fn shrink_critical<L: Lattice + ?Sized>(l: &L, p: &PentagonWitness) -> PentagonWitness {
    let mut out = *p;
    if l.is_cover(p.delta, p.theta) {
        out.critical_cover = Some((p.delta, p.theta));
        return out;
    }
    let delta_prime = l
        .lower_covers(p.theta)
        .iter()
        .copied()
        .filter(|&d| l.leq(p.delta, d))
        .min()
        .expect("a finite interval has a lower cover of its top above its bottom");
    out.critical_cover = Some((delta_prime, p.theta));
    out
}

/// Every covering pair `δ ≤ x ≺ y ≤ θ`, in index order.
pub fn all_critical_covers<L: Lattice + ?Sized>(l: &L, p: &PentagonWitness) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for x in 0..l.len() {
        if !l.leq(p.delta, x) || !l.leq(x, p.theta) {
            continue;
        }
        for &y in l.upper_covers(x) {
            if l.leq(y, p.theta) {
                out.push((x, y));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Re-checks a witness from scratch: pentagon conditions, the recorded join
/// and meet, distinctness and, when present, the shrunk cover.
pub fn validate_pentagon<L: Lattice + ?Sized>(l: &L, p: &PentagonWitness) -> bool {
    if !(l.lt(p.delta, p.theta)
        && l.leq(p.theta, l.join(p.gamma, p.delta))
        && l.leq(l.meet(p.gamma, p.theta), p.delta)
        && p.join == l.join(p.gamma, p.delta)
        && p.meet == l.meet(p.gamma, p.theta))
    {
        return false;
    }
    let five = p.elements();
    for i in 0..5 {
        for j in i + 1..5 {
            if five[i] == five[j] {
                return false;
            }
        }
    }
    if let Some((dp, tp)) = p.critical_cover {
        let cover_ok = l.leq(p.delta, dp) && l.leq(tp, p.theta) && l.is_cover(dp, tp);
        let still_pentagon = l.leq(tp, l.join(p.gamma, dp)) && l.leq(l.meet(p.gamma, tp), dp);
        if !cover_ok || !still_pentagon {
            return false;
        }
    }
    true
}
