//! Evaluates two chains of conditions on a finite algebra and checks that
//! no implication between consecutive conditions fails:
//!
//! * all subalgebras of `A³` are congruence modular ⇒ every cover of
//!   `Con(A)` has type 2, 3 or 4 with tailless minimal sets ⇒ `Con(A)` is
//!   modular;
//! * all subalgebras of `A²` are congruence distributive ⇒ every cover has
//!   type 3 or 4 with tailless minimal sets ⇒ `Con(A)` is distributive.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::algebra::{decode, power, FiniteAlgebra, SubAlgebra};
use crate::congruence::con_lattice;
use crate::error::{Error, Result};
use crate::lattice::{check_modular_distributive, first_diamond, first_pentagon};
use crate::limits::Limits;
use crate::subuniverse::{for_each_subuniverse, Enumeration};
use crate::tct::{label_lattice, LabeledLattice, TypeLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClauseStatus {
    True,
    False,
    /// Not decided: sampling only, or caps skipped some subalgebras.
    Partial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub status: ClauseStatus,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ImplicationVerdict {
    Consistent,
    Counterexample,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Implication {
    pub premise: String,
    pub conclusion: String,
    pub verdict: ImplicationVerdict,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModularityMode {
    /// Exhaustive for `|A| ≤ 3`, sampled above.
    #[default]
    Auto,
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModularityReport {
    pub algebra: String,
    pub exhaustive: bool,
    pub cube_subalgebras_modular: Clause,
    pub types_234_empty_tails: Clause,
    pub modular: Clause,
    pub square_subalgebras_distributive: Clause,
    pub types_34_empty_tails: Clause,
    pub distributive: Clause,
    pub implications: Vec<Implication>,
}

impl ModularityReport {
    pub fn has_counterexample(&self) -> bool {
        self.implications
            .iter()
            .any(|i| i.verdict == ImplicationVerdict::Counterexample)
    }

    pub fn has_partial(&self) -> bool {
        [
            &self.cube_subalgebras_modular,
            &self.types_234_empty_tails,
            &self.modular,
            &self.square_subalgebras_distributive,
            &self.types_34_empty_tails,
            &self.distributive,
        ]
        .iter()
        .any(|c| c.status == ClauseStatus::Partial)
    }
}

const EXHAUSTIVE_MAX: usize = 3;
const SAMPLED_GENERATORS: usize = 3;

fn clause(ok: bool, detail: impl Into<String>) -> Clause {
    Clause {
        status: if ok { ClauseStatus::True } else { ClauseStatus::False },
        detail: detail.into(),
    }
}

fn implication(premise: (&str, &Clause), conclusion: (&str, &Clause)) -> Implication {
    use ClauseStatus::*;
    let verdict = match (premise.1.status, conclusion.1.status) {
        (True, False) => ImplicationVerdict::Counterexample,
        (False, _) | (_, True) => ImplicationVerdict::Consistent,
        _ => ImplicationVerdict::Undetermined,
    };
    Implication {
        premise: premise.0.to_string(),
        conclusion: conclusion.0.to_string(),
        verdict,
    }
}

/// Every cover labeled within `allowed` and every minimal set tailless.
fn types_clause(l: &LabeledLattice, allowed: &[u8]) -> Clause {
    let mut bad = Vec::new();
    let mut unknown = 0;
    for c in &l.covers {
        let name = format!("{} ≺ {}", l.lattice.element(c.lower), l.lattice.element(c.upper));
        match c.label {
            None => unknown += 1,
            Some(t) if !allowed.contains(&t.value()) => bad.push(format!("{name} has type {t}")),
            Some(_) => {}
        }
        if let Some(u) = c.tailed_sets().next() {
            bad.push(format!("{name} has minimal set {:?} with tail {:?}", u.universe, u.tail));
        }
    }
    if !bad.is_empty() {
        clause(false, bad.join("; "))
    } else if unknown > 0 {
        Clause {
            status: ClauseStatus::Partial,
            detail: format!("{unknown} covers unlabeled within the clone cap"),
        }
    } else {
        let labels: Vec<String> = l.labels_present().iter().map(TypeLabel::to_string).collect();
        clause(true, format!("types present: {{{}}}", labels.join(",")))
    }
}

/// Whether every subalgebra of `A^k` has a modular (or distributive)
/// congruence lattice. Stops at the first failure.
fn subpower_clause(a: &FiniteAlgebra, k: usize, distributive: bool, exhaustive: bool, limits: &Limits) -> Clause {
    let partial = |detail: String| Clause {
        status: ClauseStatus::Partial,
        detail,
    };
    let p = match power(a, k, limits) {
        Ok(p) => p,
        Err(e) => return partial(format!("A^{k} not built: {e}")),
    };
    let mode = if exhaustive {
        Enumeration::Exhaustive
    } else {
        Enumeration::Generators(SAMPLED_GENERATORS)
    };
    let mut skipped = 0usize;
    let mut found: Option<String> = None;
    let stats = for_each_subuniverse(&p.algebra, mode, limits.max_subuniverses, |u| {
        let sub = SubAlgebra::from_universe(&p.algebra, u.to_vec()).expect("closed universe");
        let lattice = match con_lattice(&sub.induced, limits) {
            Ok(l) => l,
            Err(_) => {
                skipped += 1;
                return ControlFlow::Continue(());
            }
        };
        let what = if first_pentagon(&lattice).is_some() {
            Some("a pentagon")
        } else if distributive && first_diamond(&lattice).is_some() {
            Some("a diamond")
        } else {
            None
        };
        match what {
            Some(what) => {
                let tuples: Vec<String> = u
                    .iter()
                    .map(|&c| {
                        let t: Vec<String> = decode(c, a.size(), k).iter().map(usize::to_string).collect();
                        format!("({})", t.join(","))
                    })
                    .collect();
                found = Some(format!(
                    "subalgebra {{{}}} of A^{k} has {what} in its congruence lattice",
                    tuples.join(" ")
                ));
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        }
    });
    if let Some(detail) = found {
        return clause(false, detail);
    }
    if stats.complete && skipped == 0 {
        clause(true, format!("all {} subalgebras of A^{k} checked", stats.visited))
    } else {
        partial(format!(
            "{} subalgebras of A^{k} checked, {skipped} skipped at caps{}",
            stats.visited,
            if exhaustive { "" } else { ", generator sets of size ≤ 3 only" }
        ))
    }
}

pub fn modularity_report(a: &FiniteAlgebra, mode: ModularityMode, limits: &Limits) -> Result<ModularityReport> {
    let exhaustive = match mode {
        ModularityMode::Auto => a.size() <= EXHAUSTIVE_MAX,
        ModularityMode::Exhaustive if a.size() > EXHAUSTIVE_MAX => {
            return Err(Error::Config(format!(
                "exhaustive subalgebra enumeration needs |A| ≤ {EXHAUSTIVE_MAX}"
            )))
        }
        ModularityMode::Exhaustive => true,
        ModularityMode::Sampled => false,
    };
    let labeled = label_lattice(con_lattice(a, limits)?, limits)?;
    let shape = check_modular_distributive(&labeled.lattice);
    let modular = clause(shape.modular, format!("|Con(A)| = {}", labeled.lattice.elements().len()));
    let distributive = clause(shape.distributive, format!("|Con(A)| = {}", labeled.lattice.elements().len()));
    let types_234 = types_clause(&labeled, &[2, 3, 4]);
    let types_34 = types_clause(&labeled, &[3, 4]);
    let cube = subpower_clause(a, 3, false, exhaustive, limits);
    let square = subpower_clause(a, 2, true, exhaustive, limits);
    let implications = vec![
        implication(("cube_subalgebras_modular", &cube), ("types_234_empty_tails", &types_234)),
        implication(("types_234_empty_tails", &types_234), ("modular", &modular)),
        implication(("square_subalgebras_distributive", &square), ("types_34_empty_tails", &types_34)),
        implication(("types_34_empty_tails", &types_34), ("distributive", &distributive)),
    ];
    Ok(ModularityReport {
        algebra: a.name().to_string(),
        exhaustive,
        cube_subalgebras_modular: cube,
        types_234_empty_tails: types_234,
        modular,
        square_subalgebras_distributive: square,
        types_34_empty_tails: types_34,
        distributive,
        implications,
    })
}
