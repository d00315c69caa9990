//! From a minimal set with a tail to a pentagon of the same type in the
//! congruence lattice of a subalgebra of `A²`.
//!
//! With body `B`, tail `T`, `t ∈ T` and `(z, o) ∈ β|B − α|B`:
//!
//! * `S = Sg(Δ ∪ {(z,o), (z,t), (o,t)})`
//! * `γ` relates pairs whose first coordinates are `α`-related
//! * `δ = Cg((α×α)|S ∪ {((z,t), (o,t))})`
//! * `θ = Cg(δ ∪ {((z,o), (o,o))})`
//!
//! `[γ, δ, θ]` is a pentagon; `δ′` is a lower cover of `θ` above `δ`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{encode, odometer, power, subalgebra_generated, FiniteAlgebra};
use crate::congruence::{cg_from, con_lattice, is_congruence, CongruenceLattice};
use crate::error::{Error, Resource, Result};
use crate::lattice::{pentagon_at, shrink_critical, Lattice, PentagonWitness};
use crate::limits::Limits;
use crate::partition::Partition;
use crate::polynomial::unary_polynomials;
use crate::tct::{classify_quotient, type_of_cover, LabeledCover, MinimalSet, TypeLabel};

use super::WitnessPolicy;

/// A tailed minimal set of `⟨α,β⟩` with the chosen tail element and pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailWitness {
    pub alpha: Partition,
    pub beta: Partition,
    pub universe: Vec<usize>,
    pub body: Vec<usize>,
    pub tail: Vec<usize>,
    pub t: usize,
    /// `β`-related, not `α`-related, both in the body.
    pub pair: (usize, usize),
}

impl TailWitness {
    pub fn new(u: &MinimalSet, t: usize, pair: (usize, usize)) -> Result<Self> {
        let w = TailWitness {
            alpha: u.delta.clone(),
            beta: u.theta.clone(),
            universe: u.universe.clone(),
            body: u.body.clone(),
            tail: u.tail.clone(),
            t,
            pair,
        };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.alpha.size();
        if self.beta.size() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                got: self.beta.size(),
            });
        }
        let (z, o) = self.pair;
        for x in [self.t, z, o] {
            if x >= n {
                return Err(Error::OutOfRange { element: x, size: n });
            }
        }
        if self.tail.is_empty() {
            return Err(Error::InvalidWitness("minimal set has an empty tail".into()));
        }
        if !self.tail.contains(&self.t) {
            return Err(Error::InvalidWitness(format!("{} is not in the tail", self.t)));
        }
        let in_body = self.body.contains(&z) && self.body.contains(&o);
        if !in_body || !self.beta.related(z, o) || self.alpha.related(z, o) {
            return Err(Error::InvalidWitness("pair not in β|B − α|B".into()));
        }
        Ok(())
    }
}

/// Tail witnesses of a labeled cover: the least one (least tailed minimal
/// set, least `t`, least pair) or every combination.
pub fn tail_witnesses(cover: &LabeledCover, policy: WitnessPolicy) -> Vec<TailWitness> {
    let mut out = Vec::new();
    for u in cover.tailed_sets() {
        let mut pairs = Vec::new();
        for &z in &u.body {
            for &o in &u.body {
                if z != o && u.theta.related(z, o) && !u.delta.related(z, o) {
                    pairs.push((z, o));
                }
            }
        }
        for &t in &u.tail {
            for &pair in &pairs {
                out.push(TailWitness::new(u, t, pair).expect("drawn from the minimal set"));
                if policy == WitnessPolicy::Canonical {
                    return out;
                }
            }
        }
    }
    out
}

/// Results of re-deriving a certificate from scratch.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateChecks {
    /// `S` contains the generators and is closed under the operations of `A²`.
    pub closed: bool,
    /// `γ`, `δ`, `δ′`, `θ` are congruences of `S`.
    pub congruences: bool,
    /// `δ ≤ δ′ ≤ θ` and `((z,o),(o,o)) ∈ θ − δ′`.
    pub separated: bool,
    /// `γ ∧ θ ≤ δ′` and `γ ∨ δ′ ≥ θ`.
    pub pentagon: bool,
    /// `δ′ ≺ θ` in `Con(S)`.
    pub covering: bool,
    /// The type of `⟨δ′,θ⟩` equals the claimed type.
    pub cover_type: bool,
    /// `γ ≺ γ∨θ` with the claimed type.
    pub gamma_cover_type: bool,
}

impl CertificateChecks {
    pub fn all(&self) -> bool {
        self.failed().is_empty()
    }

    pub fn failed(&self) -> Vec<&'static str> {
        [
            ("closed", self.closed),
            ("congruences", self.congruences),
            ("separated", self.separated),
            ("pentagon", self.pentagon),
            ("covering", self.covering),
            ("cover_type", self.cover_type),
            ("gamma_cover_type", self.gamma_cover_type),
        ]
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| name)
        .collect()
    }
}

/// A pentagon in `Con(S)` for `S ≤ A²`. Partitions are over positions in
/// `s_elements`, which lists the pairs in ascending encoding order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PentagonCertificate {
    pub algebra: FiniteAlgebra,
    pub witness: TailWitness,
    pub generators: Vec<(usize, usize)>,
    pub s_elements: Vec<(usize, usize)>,
    pub gamma: Partition,
    pub delta: Partition,
    pub delta_prime: Partition,
    pub theta: Partition,
    pub claimed_type: TypeLabel,
    pub checks: CertificateChecks,
}

fn generators(n: usize, w: &TailWitness) -> Vec<(usize, usize)> {
    let (z, o) = w.pair;
    let mut g: Vec<(usize, usize)> = (0..n).map(|x| (x, x)).collect();
    g.extend([(z, o), (z, w.t), (o, w.t)]);
    g
}

fn cap_label(limits: &Limits) -> Error {
    Error::CapExceeded {
        resource: Resource::CloneFunctions,
        limit: limits.max_clone,
    }
}

pub fn construct_witness(a: &FiniteAlgebra, w: &TailWitness, limits: &Limits) -> Result<PentagonCertificate> {
    w.validate()?;
    let n = a.size();
    if w.alpha.size() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            got: w.alpha.size(),
        });
    }
    let pol1 = unary_polynomials(a, limits)?;
    let (claimed, _) = classify_quotient(a, &pol1, &w.alpha, &w.beta, limits)?;
    let claimed_type = claimed.ok_or_else(|| cap_label(limits))?;

    let square = power(a, 2, limits)?;
    let gens = generators(n, w);
    let codes: Vec<usize> = gens.iter().map(|&(x, y)| encode(&[x, y], n)).collect();
    let s = subalgebra_generated(&square.algebra, &codes)?;
    let s_elements: Vec<(usize, usize)> = s.universe.iter().map(|&c| (c / n, c % n)).collect();
    let loc = |x: usize, y: usize| s.local(encode(&[x, y], n)).expect("generated");
    let (z, o) = w.pair;

    let gamma = Partition::from_labels(&s_elements.iter().map(|&(x, _)| w.alpha.block_id(x)).collect::<Vec<_>>());
    let mut pairs = Vec::new();
    for (i, &(a1, b1)) in s_elements.iter().enumerate() {
        for (j, &(a2, b2)) in s_elements.iter().enumerate().skip(i + 1) {
            if w.alpha.related(a1, a2) && w.alpha.related(b1, b2) {
                pairs.push((i, j));
            }
        }
    }
    pairs.push((loc(z, w.t), loc(o, w.t)));
    let m = s_elements.len();
    let delta = cg_from(&s.induced, &Partition::identity(m), &pairs);
    let theta = cg_from(&s.induced, &delta, &[(loc(z, o), loc(o, o))]);

    let lattice = con_lattice(&s.induced, limits)?;
    let idx = |p: &Partition| lattice.index_of(p);
    let delta_prime = match (idx(&gamma), idx(&delta), idx(&theta)) {
        (Some(g), Some(d), Some(t)) if lattice.lt(d, t) => {
            let p = PentagonWitness {
                gamma: g,
                delta: d,
                theta: t,
                join: lattice.join(g, d),
                meet: lattice.meet(g, t),
                critical_cover: None,
                type_label: None,
            };
            let (lo, _) = shrink_critical(&lattice, &p).critical_cover.expect("shrunk");
            lattice.element(lo).clone()
        }
        // Degenerate: left for the verifier to flag.
        _ => delta.clone(),
    };

    let mut cert = PentagonCertificate {
        algebra: a.clone(),
        witness: w.clone(),
        generators: gens,
        s_elements,
        gamma,
        delta,
        delta_prime,
        theta,
        claimed_type,
        checks: CertificateChecks::default(),
    };
    cert.checks = verify_certificate(&cert, limits)?;
    Ok(cert)
}

impl PentagonCertificate {
    /// `S` as an algebra on positions `0..|S|`. `None` if the listed pairs
    /// are out of range, repeated, or not closed under the operations of `A²`.
    pub fn subalgebra(&self) -> Option<FiniteAlgebra> {
        rebuild_s(self)
    }
}

fn rebuild_s(cert: &PentagonCertificate) -> Option<FiniteAlgebra> {
    let a = &cert.algebra;
    let n = a.size();
    let mut index = HashMap::new();
    for (i, &(x, y)) in cert.s_elements.iter().enumerate() {
        if x >= n || y >= n || index.insert((x, y), i).is_some() {
            return None;
        }
    }
    let m = cert.s_elements.len();
    let mut ops = Vec::new();
    for op in a.operations() {
        let k = op.arity();
        let mut table = Vec::with_capacity(m.pow(k as u32));
        let mut args = vec![0usize; k];
        loop {
            let firsts: Vec<usize> = args.iter().map(|&i| cert.s_elements[i].0).collect();
            let seconds: Vec<usize> = args.iter().map(|&i| cert.s_elements[i].1).collect();
            let image = (op.eval(n, &firsts), op.eval(n, &seconds));
            table.push(*index.get(&image)?);
            if !odometer(&mut args, m) {
                break;
            }
        }
        ops.push(FiniteAlgebra::operation_from_fn(op.name(), m, k, |t| {
            table[encode(t, m)]
        }));
    }
    FiniteAlgebra::new(format!("S({})", a.name()), m, ops).ok()
}

/// Re-derives every claim of a certificate using only the listed pairs and
/// partitions. Cap exhaustion is an error; failed claims are data.
pub fn verify_certificate(cert: &PentagonCertificate, limits: &Limits) -> Result<CertificateChecks> {
    let mut checks = CertificateChecks::default();
    let n = cert.algebra.size();
    let Some(s) = rebuild_s(cert) else {
        return Ok(checks);
    };
    let pos = |x: usize, y: usize| cert.s_elements.iter().position(|&p| p == (x, y));
    checks.closed = generators(n, &cert.witness)
        .iter()
        .all(|&(x, y)| pos(x, y).is_some());
    if !checks.closed {
        return Ok(checks);
    }
    let m = s.size();
    let parts = [&cert.gamma, &cert.delta, &cert.delta_prime, &cert.theta];
    if parts.iter().any(|p| p.size() != m) {
        return Ok(checks);
    }
    let mut congruences = true;
    for p in parts {
        congruences &= is_congruence(&s, p)?;
    }
    checks.congruences = congruences;

    let (z, o) = cert.witness.pair;
    let (zo, oo) = (pos(z, o).expect("generator"), pos(o, o).expect("generator"));
    let (gamma, delta, dp, theta) = (&cert.gamma, &cert.delta, &cert.delta_prime, &cert.theta);
    checks.separated =
        delta.refines(dp) && dp.refines(theta) && theta.related(zo, oo) && !dp.related(zo, oo);
    checks.pentagon = gamma.meet(theta).refines(dp) && theta.refines(&gamma.join(dp));
    if !checks.congruences {
        return Ok(checks);
    }

    let lattice = con_lattice(&s, limits)?;
    let i = |p: &Partition| lattice.index_of(p).expect("congruence is in the lattice");
    checks.covering = lattice.is_cover(i(dp), i(theta));
    let pol1 = unary_polynomials(&s, limits)?;
    if checks.covering {
        let (label, _) = classify_quotient(&s, &pol1, dp, theta, limits)?;
        checks.cover_type = label.ok_or_else(|| cap_label(limits))? == cert.claimed_type;
    }
    let upper = gamma.join(theta);
    if lattice.is_cover(i(gamma), i(&upper)) {
        let (label, _) = classify_quotient(&s, &pol1, gamma, &upper, limits)?;
        checks.gamma_cover_type = label.ok_or_else(|| cap_label(limits))? == cert.claimed_type;
    }
    Ok(checks)
}

/// The certificate's pentagon `[γ, δ′, θ]` in `Con(S)`, shrunk and with its
/// critical cover labeled. `None` when the certificate does not describe a
/// pentagon.
pub fn certificate_pentagon(
    cert: &PentagonCertificate,
    limits: &Limits,
) -> Result<Option<(CongruenceLattice, PentagonWitness, LabeledCover)>> {
    let Some(s) = rebuild_s(cert) else {
        return Ok(None);
    };
    let lattice = con_lattice(&s, limits)?;
    let (Some(g), Some(d), Some(t)) = (
        lattice.index_of(&cert.gamma),
        lattice.index_of(&cert.delta_prime),
        lattice.index_of(&cert.theta),
    ) else {
        return Ok(None);
    };
    let Some(p) = pentagon_at(&lattice, g, d, t) else {
        return Ok(None);
    };
    let mut p = shrink_critical(&lattice, &p);
    let (lo, hi) = p.critical_cover.expect("shrunk");
    let pol1 = unary_polynomials(&s, limits)?;
    let cover = type_of_cover(&lattice, &pol1, lo, hi, limits)?;
    p.type_label = cover.label;
    Ok(Some((lattice, p, cover)))
}
