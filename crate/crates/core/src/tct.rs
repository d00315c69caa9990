//! Minimal sets, traces, bodies and tails of prime quotients, and their
//! type labels.
//!
//! The label of a cover `δ ≺ θ` is read off the induced algebra on a trace
//! `N` modulo `δ`. Working in `A/δ` gives the same induced algebra: if a
//! polynomial `p` sends `N^k` into the union of the `δ`-classes meeting `N`,
//! then `e∘p` (with `e` the idempotent of the minimal set) sends `N^k` into
//! `N` and agrees with `p` modulo `δ`. So the classifier closes polynomials
//! of the quotient algebra over small argument domains inside `N/δ`.
//!
//! Decision on `N̄ = N/δ`:
//!
//! 1. `|N̄| = 2` and all 16 binary operations are induced: type 3.
//! 2. `|N̄| = 2` with both a meet-like and a join-like induced operation: type 4.
//! 3. `|N̄| = 2` with exactly one of them: type 5.
//! 4. Otherwise an induced Maltsev operation (`d(x,y,y) = d(y,y,x) = x`)
//!    gives type 2, its absence type 1.
//!
//! Traces with more than two blocks are abelian (types 1 and 2 only), so
//! steps 1–3 are skipped for them.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{quotient_algebra, FiniteAlgebra};
use crate::congruence::CongruenceLattice;
use crate::error::{Error, Result};
use crate::lattice::{shrink_critical, Lattice, PentagonWitness};
use crate::limits::Limits;
use crate::partition::Partition;
use crate::polynomial::{induced_clone, polynomials_on_domain, unary_polynomials, UnaryMap, UnaryPolynomials};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct TypeLabel(u8);

impl TypeLabel {
    pub const UNARY: TypeLabel = TypeLabel(1);
    pub const AFFINE: TypeLabel = TypeLabel(2);
    pub const BOOLEAN: TypeLabel = TypeLabel(3);
    pub const LATTICE: TypeLabel = TypeLabel(4);
    pub const SEMILATTICE: TypeLabel = TypeLabel(5);

    pub fn new(value: u8) -> Result<Self> {
        if (1..=5).contains(&value) {
            Ok(TypeLabel(value))
        } else {
            Err(Error::Config(format!("type label {value} is not in 1..=5")))
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

impl TryFrom<u8> for TypeLabel {
    type Error = Error;
    fn try_from(v: u8) -> Result<Self> {
        TypeLabel::new(v)
    }
}

impl From<TypeLabel> for u8 {
    fn from(t: TypeLabel) -> u8 {
        t.0
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A `⟨δ,θ⟩`-minimal set with its witness idempotent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalSet {
    pub delta: Partition,
    pub theta: Partition,
    pub universe: Vec<usize>,
    pub witness_e: UnaryMap,
    pub traces: Vec<Vec<usize>>,
    pub body: Vec<usize>,
    pub tail: Vec<usize>,
}

impl MinimalSet {
    pub fn has_tail(&self) -> bool {
        !self.tail.is_empty()
    }
}

fn separates(set: &[usize], delta: &Partition, theta: &Partition) -> bool {
    set.iter().enumerate().any(|(i, &x)| {
        set[i + 1..]
            .iter()
            .any(|&y| theta.related(x, y) && !delta.related(x, y))
    })
}

/// Traces (θ|U-classes holding at least two δ|U-classes), body and tail.
fn decompose(universe: &[usize], delta: &Partition, theta: &Partition) -> (Vec<Vec<usize>>, Vec<usize>, Vec<usize>) {
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &x in universe {
        classes.entry(theta.block_id(x)).or_default().push(x);
    }
    let mut traces = Vec::new();
    for class in classes.into_values() {
        let mut ids: Vec<usize> = class.iter().map(|&x| delta.block_id(x)).collect();
        ids.sort_unstable();
        ids.dedup();
        if ids.len() >= 2 {
            traces.push(class);
        }
    }
    traces.sort();
    let mut body: Vec<usize> = traces.iter().flatten().copied().collect();
    body.sort_unstable();
    let tail = universe.iter().copied().filter(|x| body.binary_search(x).is_err()).collect();
    (traces, body, tail)
}

/// All `⟨δ,θ⟩`-minimal sets: inclusion-minimal images `e(A)` of idempotent
/// unary polynomials on which `δ` and `θ` differ. Each carries the
/// lexicographically least witness `e`. Sorted by universe.
pub fn minimal_sets(pol1: &UnaryPolynomials, delta: &Partition, theta: &Partition) -> Result<Vec<MinimalSet>> {
    if delta.size() != theta.size() {
        return Err(Error::SizeMismatch {
            expected: delta.size(),
            got: theta.size(),
        });
    }
    if !delta.refines(theta) || delta == theta {
        return Err(Error::Config(format!("{delta} is not strictly below {theta}")));
    }
    let mut images: BTreeMap<Vec<usize>, &UnaryMap> = BTreeMap::new();
    for e in pol1.idempotents() {
        let img = e.image();
        if separates(&img, delta, theta) {
            images.entry(img).or_insert(e);
        }
    }
    let candidates: Vec<&Vec<usize>> = images.keys().collect();
    let is_subset = |small: &[usize], big: &[usize]| small.iter().all(|x| big.binary_search(x).is_ok());
    let mut out = Vec::new();
    for (img, e) in &images {
        let minimal = candidates
            .iter()
            .all(|other| other.len() >= img.len() || !is_subset(other, img));
        if minimal {
            let (traces, body, tail) = decompose(img, delta, theta);
            out.push(MinimalSet {
                delta: delta.clone(),
                theta: theta.clone(),
                universe: img.clone(),
                witness_e: (*e).clone(),
                traces,
                body,
                tail,
            });
        }
    }
    Ok(out)
}

/// Label outcome for one trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceVerdict {
    Label(TypeLabel),
    /// The clone cap was hit before the decision could be made.
    Inconclusive,
}

/// Classifies the induced algebra on `nbar` (a trace modulo `δ`, given as
/// elements of `quotient`).
pub fn classify_trace(quotient: &FiniteAlgebra, nbar: &[usize], limits: &Limits) -> Result<TraceVerdict> {
    let mut nbar = nbar.to_vec();
    nbar.sort_unstable();
    nbar.dedup();
    if nbar.len() < 2 {
        return Err(Error::Config("a trace meets at least two δ-classes".into()));
    }
    if nbar.len() == 2 {
        let clone = induced_clone(quotient, &nbar, 2, limits.max_clone)?;
        if clone.cap_hit {
            return Ok(TraceVerdict::Inconclusive);
        }
        let induced = clone.induced_local();
        if induced.len() == 16 {
            return Ok(TraceVerdict::Label(TypeLabel::BOOLEAN));
        }
        // Points in order (0,0), (0,1), (1,0), (1,1).
        let meet_like = induced.iter().any(|f| f[..] == [0, 0, 0, 1]);
        let join_like = induced.iter().any(|f| f[..] == [0, 1, 1, 1]);
        match (meet_like, join_like) {
            (true, true) => return Ok(TraceVerdict::Label(TypeLabel::LATTICE)),
            (true, false) | (false, true) => return Ok(TraceVerdict::Label(TypeLabel::SEMILATTICE)),
            (false, false) => {}
        }
    }
    match has_maltsev(quotient, &nbar, limits)? {
        Some(true) => Ok(TraceVerdict::Label(TypeLabel::AFFINE)),
        Some(false) => Ok(TraceVerdict::Label(TypeLabel::UNARY)),
        None => Ok(TraceVerdict::Inconclusive),
    }
}

/// Whether some polynomial satisfies `d(x,y,y) = d(y,y,x) = x` on `set`.
/// Only the tuples named by the identities matter, so the clone is closed
/// over that domain alone. `None` when the cap stops the search.
fn has_maltsev(a: &FiniteAlgebra, set: &[usize], limits: &Limits) -> Result<Option<bool>> {
    let mut domain: Vec<Vec<usize>> = Vec::new();
    let mut wanted: Vec<usize> = Vec::new();
    let mut seen = BTreeMap::new();
    for &x in set {
        for &y in set {
            for (t, v) in [(vec![x, y, y], x), (vec![y, y, x], x)] {
                if !seen.contains_key(&t) {
                    seen.insert(t.clone(), domain.len());
                    domain.push(t);
                    wanted.push(v);
                }
            }
        }
    }
    let dc = polynomials_on_domain(a, domain, limits.max_clone)?;
    if dc.functions.iter().any(|f| *f == wanted) {
        return Ok(Some(true));
    }
    if dc.cap_hit {
        return Ok(None);
    }
    Ok(Some(false))
}

/// A labeled covering pair of a congruence lattice.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabeledCover {
    pub lower: usize,
    pub upper: usize,
    pub label: Option<TypeLabel>,
    pub minimal_sets: Vec<MinimalSet>,
    /// True when no trace could be classified within the clone cap.
    pub inconclusive: bool,
}

impl LabeledCover {
    pub fn tailed_sets(&self) -> impl Iterator<Item = &MinimalSet> {
        self.minimal_sets.iter().filter(|u| u.has_tail())
    }
}

/// Label and minimal sets of `δ ≺ θ` in `a`. Every trace of every minimal
/// set is classified and all conclusive verdicts must agree.
pub fn classify_quotient(
    a: &FiniteAlgebra,
    pol1: &UnaryPolynomials,
    delta: &Partition,
    theta: &Partition,
    limits: &Limits,
) -> Result<(Option<TypeLabel>, Vec<MinimalSet>)> {
    let sets = minimal_sets(pol1, delta, theta)?;
    if sets.is_empty() {
        return Err(Error::Config(format!("no minimal set for ⟨{delta}, {theta}⟩")));
    }
    let q = quotient_algebra(a, delta)?;
    let mut verdicts: BTreeMap<Vec<usize>, TraceVerdict> = BTreeMap::new();
    let mut label: Option<TypeLabel> = None;
    for u in &sets {
        for trace in &u.traces {
            let mut nbar: Vec<usize> = trace.iter().map(|&x| q.block_map[x]).collect();
            nbar.sort_unstable();
            nbar.dedup();
            let verdict = match verdicts.get(&nbar) {
                Some(v) => *v,
                None => {
                    let v = classify_trace(&q.algebra, &nbar, limits)?;
                    verdicts.insert(nbar.clone(), v);
                    v
                }
            };
            if let TraceVerdict::Label(t) = verdict {
                match label {
                    None => label = Some(t),
                    Some(prev) if prev != t => {
                        return Err(Error::LabelMismatch(format!(
                            "⟨{delta}, {theta}⟩ in {}: trace {:?} of {:?} gives {t}, earlier traces gave {prev}",
                            a.name(),
                            trace,
                            u.universe
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok((label, sets))
}

pub fn type_of_cover(
    lattice: &CongruenceLattice,
    pol1: &UnaryPolynomials,
    lower: usize,
    upper: usize,
    limits: &Limits,
) -> Result<LabeledCover> {
    if !lattice.is_cover(lower, upper) {
        return Err(Error::NotACover { lower, upper });
    }
    let (label, minimal_sets) = classify_quotient(
        lattice.algebra(),
        pol1,
        lattice.element(lower),
        lattice.element(upper),
        limits,
    )?;
    Ok(LabeledCover {
        lower,
        upper,
        label,
        minimal_sets,
        inconclusive: label.is_none(),
    })
}

/// A congruence lattice with every covering pair labeled.
#[derive(Debug, Clone)]
pub struct LabeledLattice {
    pub lattice: CongruenceLattice,
    pub pol1: UnaryPolynomials,
    /// In the order of `lattice.covers()`.
    pub covers: Vec<LabeledCover>,
}

impl LabeledLattice {
    pub fn cover(&self, lower: usize, upper: usize) -> Option<&LabeledCover> {
        self.covers
            .iter()
            .find(|c| c.lower == lower && c.upper == upper)
    }

    pub fn label(&self, lower: usize, upper: usize) -> Option<TypeLabel> {
        self.cover(lower, upper).and_then(|c| c.label)
    }

    /// Shrinks the critical quotient and attaches its label.
    pub fn label_pentagon(&self, p: &PentagonWitness) -> PentagonWitness {
        let mut out = shrink_critical(&self.lattice, p);
        let (lo, hi) = out.critical_cover.expect("shrunk");
        out.type_label = self.label(lo, hi);
        out
    }

    pub fn labels_present(&self) -> Vec<TypeLabel> {
        let mut v: Vec<TypeLabel> = self.covers.iter().filter_map(|c| c.label).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn any_inconclusive(&self) -> bool {
        self.covers.iter().any(|c| c.inconclusive)
    }
}

pub fn label_lattice(lattice: CongruenceLattice, limits: &Limits) -> Result<LabeledLattice> {
    let pol1 = unary_polynomials(lattice.algebra(), limits)?;
    let covers = lattice
        .covers()
        .par_iter()
        .map(|&(lo, hi)| type_of_cover(&lattice, &pol1, lo, hi, limits))
        .collect::<Result<Vec<_>>>()?;
    Ok(LabeledLattice {
        lattice,
        pol1,
        covers,
    })
}
