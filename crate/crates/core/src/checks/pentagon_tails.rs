use serde::{Deserialize, Serialize};

use crate::congruence::CongruenceLattice;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, NamedPentagon, PentagonWitness};
use crate::tct::{LabeledCover, TypeLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailOutcome {
    Pass,
    Fail,
    /// Type 1 pentagons: statistics only.
    NotApplicable,
}

/// One minimal set of the critical cover and its `γ`-pair from body to tail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeCheck {
    pub universe: Vec<usize>,
    pub body: Vec<usize>,
    pub tail: Vec<usize>,
    /// Least `(b, t)` with `b` in the body, `t` in the tail and `b γ t`.
    pub gamma_pair: Option<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PentagonTailReport {
    pub pentagon: NamedPentagon,
    pub type_label: TypeLabel,
    pub minimal_sets: Vec<BridgeCheck>,
    pub outcome: TailOutcome,
}

/// For a shrunk, labeled pentagon `[γ, δ′, θ′]` whose label is not 1,
/// every `⟨δ′,θ′⟩`-minimal set must have a tail reached from its body by a
/// `γ`-pair. `cover` is the labeled critical cover.
pub fn check_pentagon_tails(
    lattice: &CongruenceLattice,
    p: &PentagonWitness,
    cover: &LabeledCover,
) -> Result<PentagonTailReport> {
    let (lo, hi) = p
        .critical_cover
        .ok_or_else(|| Error::InvalidWitness("pentagon has no critical cover".into()))?;
    if (cover.lower, cover.upper) != (lo, hi) {
        return Err(Error::InvalidWitness("labeled cover is not the critical cover".into()));
    }
    if !lattice.is_cover(lo, hi) {
        return Err(Error::NotACover { lower: lo, upper: hi });
    }
    let type_label = p
        .type_label
        .or(cover.label)
        .ok_or_else(|| Error::InvalidWitness("pentagon has no type label".into()))?;
    let gamma = lattice.element(p.gamma);
    let minimal_sets: Vec<BridgeCheck> = cover
        .minimal_sets
        .iter()
        .map(|u| {
            let gamma_pair = u
                .body
                .iter()
                .flat_map(|&b| u.tail.iter().map(move |&t| (b, t)))
                .find(|&(b, t)| gamma.related(b, t));
            BridgeCheck {
                universe: u.universe.clone(),
                body: u.body.clone(),
                tail: u.tail.clone(),
                gamma_pair,
            }
        })
        .collect();
    let outcome = if type_label == TypeLabel::UNARY {
        TailOutcome::NotApplicable
    } else if minimal_sets
        .iter()
        .all(|u| !u.tail.is_empty() && u.gamma_pair.is_some())
    {
        TailOutcome::Pass
    } else {
        TailOutcome::Fail
    };
    let mut named = *p;
    named.type_label = Some(type_label);
    Ok(PentagonTailReport {
        pentagon: named.named(lattice),
        type_label,
        minimal_sets,
        outcome,
    })
}
