//! Corpus campaigns: every pentagon, tailed cover and tailed minimal set of
//! every algebra is pushed through the checkers.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::FiniteAlgebra;
use crate::checks::{
    certificate_pentagon, check_pentagon_tails, check_tail_collapse, construct_witness, tail_witnesses,
    CollapseOutcome, Counterexample, TailOutcome, WitnessPolicy,
};
use crate::congruence::con_lattice;
use crate::corpus::CorpusSpec;
use crate::error::{Error, Result};
use crate::lattice::{all_critical_covers, find_pentagons, shrink_critical, Lattice, PentagonWitness};
use crate::limits::Limits;
use crate::tct::{label_lattice, LabeledLattice};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
        }
    }

    /// Failure dominates, then inconclusive.
    pub fn and(self, other: Verdict) -> Verdict {
        self.max(other)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub corpus: CorpusSpec,
    pub limits: Limits,
    pub witnesses: WitnessPolicy,
    /// Pentagon certificates are built only for algebras up to this size;
    /// `S ≤ A²` outgrows the unary polynomial caps quickly.
    pub witness_max_size: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            corpus: CorpusSpec::default(),
            limits: Limits::default(),
            witnesses: WitnessPolicy::Canonical,
            witness_max_size: 4,
        }
    }
}

/// Per-type counts are indexed by `type - 1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ItemStats {
    pub congruences: usize,
    pub covers: usize,
    pub covers_by_type: [usize; 5],
    pub unlabeled_covers: usize,
    pub pentagons: usize,
    /// Critical covers checked, by type.
    pub pentagon_covers_by_type: [usize; 5],
    pub pentagon_checks_passed: usize,
    pub pentagon_checks_failed: usize,
    pub tailed_covers_by_type: [usize; 5],
    pub certificates: usize,
    pub certificates_verified: usize,
    pub certificate_pentagons_passed: usize,
    pub certificates_out_of_scope: usize,
    pub collapse_checks: usize,
    pub collapse_inconclusive: usize,
    pub skipped_at_caps: usize,
}

impl ItemStats {
    fn add(&mut self, o: &ItemStats) {
        let add5 = |a: &mut [usize; 5], b: &[usize; 5]| a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        self.congruences += o.congruences;
        self.covers += o.covers;
        add5(&mut self.covers_by_type, &o.covers_by_type);
        self.unlabeled_covers += o.unlabeled_covers;
        self.pentagons += o.pentagons;
        add5(&mut self.pentagon_covers_by_type, &o.pentagon_covers_by_type);
        self.pentagon_checks_passed += o.pentagon_checks_passed;
        self.pentagon_checks_failed += o.pentagon_checks_failed;
        add5(&mut self.tailed_covers_by_type, &o.tailed_covers_by_type);
        self.certificates += o.certificates;
        self.certificates_verified += o.certificates_verified;
        self.certificate_pentagons_passed += o.certificate_pentagons_passed;
        self.certificates_out_of_scope += o.certificates_out_of_scope;
        self.collapse_checks += o.collapse_checks;
        self.collapse_inconclusive += o.collapse_inconclusive;
        self.skipped_at_caps += o.skipped_at_caps;
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepItem {
    pub index: usize,
    pub algebra: String,
    pub size: usize,
    pub verdict: Verdict,
    pub stats: ItemStats,
    pub notes: Vec<String>,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepSummary {
    pub items: usize,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
    pub totals: ItemStats,
    pub verdict: Verdict,
}

struct ItemRun<'a> {
    a: &'a FiniteAlgebra,
    cfg: &'a SweepConfig,
    item: SweepItem,
}

impl ItemRun<'_> {
    fn skip(&mut self, what: &str, e: &Error) {
        self.item.stats.skipped_at_caps += 1;
        self.item.notes.push(format!("{what}: {e}"));
        self.item.verdict = self.item.verdict.and(Verdict::Inconclusive);
    }

    fn fail(&mut self, check: &str, detail: serde_json::Value) {
        self.item.counterexamples.push(Counterexample {
            check: check.to_string(),
            algebra: self.a.clone(),
            detail,
        });
        self.item.verdict = Verdict::Fail;
    }

    /// Caps become inconclusive; anything else is a failure of the run.
    fn absorb(&mut self, what: &str, e: Error) {
        if e.is_cap() {
            self.skip(what, &e);
        } else {
            self.fail(what, serde_json::json!({ "error": e.to_string() }));
        }
    }

    fn pentagons(&mut self, l: &LabeledLattice) {
        let found = find_pentagons(&l.lattice);
        self.item.stats.pentagons = found.len();
        for p in &found {
            let covers = match self.cfg.witnesses {
                WitnessPolicy::Canonical => vec![shrink_critical(&l.lattice, p).critical_cover.expect("shrunk")],
                WitnessPolicy::All => all_critical_covers(&l.lattice, p),
            };
            for (lo, hi) in covers {
                let cover = l.cover(lo, hi).expect("critical cover is a cover");
                let Some(label) = cover.label else {
                    self.item.stats.skipped_at_caps += 1;
                    self.item.verdict = self.item.verdict.and(Verdict::Inconclusive);
                    continue;
                };
                let q = PentagonWitness {
                    critical_cover: Some((lo, hi)),
                    type_label: Some(label),
                    ..*p
                };
                self.item.stats.pentagon_covers_by_type[label.value() as usize - 1] += 1;
                match check_pentagon_tails(&l.lattice, &q, cover) {
                    Ok(r) => match r.outcome {
                        TailOutcome::Pass => self.item.stats.pentagon_checks_passed += 1,
                        TailOutcome::NotApplicable => {}
                        TailOutcome::Fail => {
                            self.item.stats.pentagon_checks_failed += 1;
                            self.fail("pentagon-tails", serde_json::to_value(&r).expect("serializable"));
                        }
                    },
                    Err(e) => self.absorb("pentagon-tails", e),
                }
            }
        }
    }

    fn tails(&mut self, l: &LabeledLattice) {
        let limits = &self.cfg.limits;
        for cover in &l.covers {
            if cover.tailed_sets().next().is_none() {
                continue;
            }
            if let Some(t) = cover.label {
                self.item.stats.tailed_covers_by_type[t.value() as usize - 1] += 1;
            }
            for w in tail_witnesses(cover, self.cfg.witnesses) {
                if self.a.size() > self.cfg.witness_max_size {
                    self.item.stats.certificates_out_of_scope += 1;
                    continue;
                }
                self.item.stats.certificates += 1;
                let cert = match construct_witness(self.a, &w, limits) {
                    Ok(c) => c,
                    Err(e) => {
                        self.absorb("witness", e);
                        continue;
                    }
                };
                if !cert.checks.all() {
                    self.fail("witness", serde_json::to_value(&cert).expect("serializable"));
                    continue;
                }
                self.item.stats.certificates_verified += 1;
                match certificate_pentagon(&cert, limits) {
                    Ok(Some((lattice, p, cover))) => match check_pentagon_tails(&lattice, &p, &cover) {
                        Ok(r) if r.outcome == TailOutcome::Fail => {
                            self.fail("pentagon-tails", serde_json::to_value(&r).expect("serializable"))
                        }
                        Ok(r) => {
                            if r.outcome == TailOutcome::Pass {
                                self.item.stats.certificate_pentagons_passed += 1;
                            }
                        }
                        Err(e) => self.absorb("pentagon-tails", e),
                    },
                    Ok(None) => self.fail("witness", serde_json::to_value(&cert).expect("serializable")),
                    Err(e) => self.absorb("pentagon-tails", e),
                }
            }
            for u in cover.tailed_sets() {
                let ts: Vec<usize> = match self.cfg.witnesses {
                    WitnessPolicy::Canonical => u.tail[..1].to_vec(),
                    WitnessPolicy::All => u.tail.clone(),
                };
                for t in ts {
                    self.item.stats.collapse_checks += 1;
                    match check_tail_collapse(self.a, u, t, limits.arity_max, limits.max_clone) {
                        Ok(r) => match r.outcome {
                            CollapseOutcome::VerifiedUpToArity(_) => {}
                            CollapseOutcome::InconclusiveCap => {
                                self.item.stats.collapse_inconclusive += 1;
                                self.item.verdict = self.item.verdict.and(Verdict::Inconclusive);
                            }
                            CollapseOutcome::Violation(_) => {
                                self.fail("tail-collapse", serde_json::to_value(&r).expect("serializable"))
                            }
                        },
                        Err(e) => self.absorb("tail-collapse", e),
                    }
                }
                if self.cfg.witnesses == WitnessPolicy::Canonical {
                    break;
                }
            }
        }
    }
}

/// Runs every check on one algebra.
pub fn sweep_algebra(index: usize, a: &FiniteAlgebra, cfg: &SweepConfig) -> SweepItem {
    let mut run = ItemRun {
        a,
        cfg,
        item: SweepItem {
            index,
            algebra: a.name().to_string(),
            size: a.size(),
            verdict: Verdict::Pass,
            stats: ItemStats::default(),
            notes: Vec::new(),
            counterexamples: Vec::new(),
        },
    };
    let labeled = match con_lattice(a, &cfg.limits).and_then(|l| label_lattice(l, &cfg.limits)) {
        Ok(l) => l,
        Err(e) => {
            run.absorb("label", e);
            return run.item;
        }
    };
    let stats = &mut run.item.stats;
    stats.congruences = labeled.lattice.len();
    stats.covers = labeled.covers.len();
    for c in &labeled.covers {
        match c.label {
            Some(t) => stats.covers_by_type[t.value() as usize - 1] += 1,
            None => stats.unlabeled_covers += 1,
        }
    }
    if stats.unlabeled_covers > 0 {
        run.item.verdict = Verdict::Inconclusive;
    }
    run.pentagons(&labeled);
    run.tails(&labeled);
    run.item
}

/// Sweeps a list of algebras in parallel; output order follows the input.
pub fn run_sweep(algebras: &[FiniteAlgebra], cfg: &SweepConfig) -> (Vec<SweepItem>, SweepSummary) {
    let items: Vec<SweepItem> = algebras
        .par_iter()
        .enumerate()
        .map(|(i, a)| sweep_algebra(i, a, cfg))
        .collect();
    let mut totals = ItemStats::default();
    let mut verdict = Verdict::Pass;
    for it in &items {
        totals.add(&it.stats);
        verdict = verdict.and(it.verdict);
    }
    let count = |v: Verdict| items.iter().filter(|i| i.verdict == v).count();
    let summary = SweepSummary {
        items: items.len(),
        passed: count(Verdict::Pass),
        failed: count(Verdict::Fail),
        inconclusive: count(Verdict::Inconclusive),
        totals,
        verdict,
    };
    (items, summary)
}

pub fn corpus_sweep(cfg: &SweepConfig) -> Result<(Vec<SweepItem>, SweepSummary)> {
    cfg.limits.validate()?;
    Ok(run_sweep(&cfg.corpus.build()?, cfg))
}
