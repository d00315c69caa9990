//! Executable checks of the correspondence between pentagons in
//! congruence lattices and tails of minimal sets.

mod collapse;
mod modularity;
mod pentagon_tails;
mod witness;

use serde::{Deserialize, Serialize};

use crate::algebra::FiniteAlgebra;

pub use collapse::{check_tail_collapse, CollapseOutcome, CollapseViolation, TailCollapseReport};
pub use modularity::{
    modularity_report, Clause, ClauseStatus, Implication, ImplicationVerdict, ModularityMode, ModularityReport,
};
pub use pentagon_tails::{check_pentagon_tails, BridgeCheck, PentagonTailReport, TailOutcome};
pub use witness::{
    certificate_pentagon, construct_witness, tail_witnesses, verify_certificate, CertificateChecks,
    PentagonCertificate, TailWitness,
};

/// Which witnesses to exercise when several exist.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessPolicy {
    /// The least choice only.
    #[default]
    Canonical,
    All,
}

/// Dump written for any observed failure of a proven statement. Such a
/// failure means a bug here, so it carries everything needed to replay it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Counterexample {
    pub check: String,
    pub algebra: FiniteAlgebra,
    pub detail: serde_json::Value,
}
