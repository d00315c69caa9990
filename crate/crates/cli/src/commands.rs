use std::collections::BTreeSet;
use std::fmt::Write;
use std::path::Path;

use serde_json::json;
use tct_core::checks::{
    certificate_pentagon, check_pentagon_tails, check_tail_collapse, construct_witness, modularity_report,
    tail_witnesses, verify_certificate, ClauseStatus, CollapseOutcome, PentagonCertificate, TailOutcome, TailWitness,
    WitnessPolicy,
};
use tct_core::congruence::{brute_force_con, is_congruence};
use tct_core::corpus::CorpusSpec;
use tct_core::dot::{certificate_dot, hasse_dot, labeled_lattice_dot};
use tct_core::io::{parse_algebra_file, parse_json_str};
use tct_core::lattice::{all_critical_covers, find_pentagons, shrink_critical};
use tct_core::polynomial::unary_polynomials;
use tct_core::report::ReportDocument;
use tct_core::sweep::{run_sweep, SweepConfig, Verdict};
use tct_core::tct::{classify_quotient, minimal_sets, LabeledCover, MinimalSet};
use tct_core::{con_lattice, label_lattice, Error, FiniteAlgebra, LabeledLattice, Lattice, Partition, PentagonWitness, Result};

use crate::{Command, RunConfig};

pub struct Output {
    pub doc: ReportDocument,
    pub text: String,
    pub dot: Option<String>,
}

pub fn run(cfg: &RunConfig, command: &Command, echo: Vec<String>) -> Result<Output> {
    let doc = ReportDocument::new(echo, cfg);
    match command {
        Command::Con { file } => con(cfg, doc, &load(file)?),
        Command::OracleCon { file } => oracle_con(cfg, doc, &load(file)?),
        Command::Label { file } => label(cfg, doc, &load(file)?),
        Command::Minsets { file, delta, theta } => minsets(cfg, doc, &load(file)?, delta, theta),
        Command::Pentagons { file } => pentagons(cfg, doc, &load(file)?),
        Command::Tails { file } => tails(cfg, doc, &load(file)?),
        Command::PentagonTails { file } => pentagon_tails(cfg, doc, &load(file)?),
        Command::Witness {
            file,
            alpha,
            beta,
            t,
            pair,
        } => {
            let cover = match (alpha, beta) {
                (Some(a), Some(b)) => Some((a.parse()?, b.parse()?)),
                _ => None,
            };
            let pair = pair.as_deref().map(parse_pair).transpose()?;
            witness(cfg, doc, &load(file)?, cover, *t, pair)
        }
        Command::TailCollapse { file } => tail_collapse(cfg, doc, &load(file)?),
        Command::ModularityReport { file, mode } => modularity(cfg, doc, &load(file)?, (*mode).into()),
        Command::Sweep {
            groupoids,
            random,
            no_curated,
            no_two_element,
            include,
        } => {
            let corpus = CorpusSpec {
                curated: !no_curated,
                two_element: !no_two_element,
                groupoids: *groupoids,
                random: *random,
                seed: cfg.seed,
            };
            sweep(cfg, doc, corpus, include)
        }
        Command::Verify { certificate } => verify(cfg, doc, certificate),
    }
}

fn load(path: &Path) -> Result<FiniteAlgebra> {
    parse_algebra_file(path)
}

fn parse_pair(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::Config(format!("bad pair `{s}`, expected `a,b`"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn labeled(cfg: &RunConfig, a: &FiniteAlgebra) -> Result<LabeledLattice> {
    label_lattice(con_lattice(a, &cfg.limits)?, &cfg.limits)
}

fn type_str(c: &LabeledCover) -> String {
    c.label.map_or("?".to_string(), |t| t.to_string())
}

fn cover_name(l: &LabeledLattice, c: &LabeledCover) -> String {
    format!("{} < {}", l.lattice.element(c.lower), l.lattice.element(c.upper))
}

fn set_str(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn minimal_set_json(u: &MinimalSet) -> serde_json::Value {
    json!({
        "universe": u.universe,
        "witness_e": u.witness_e.table(),
        "traces": u.traces,
        "body": u.body,
        "tail": u.tail,
    })
}

fn write_minimal_set(out: &mut String, u: &MinimalSet) {
    let traces: Vec<String> = u.traces.iter().map(|t| set_str(t)).collect();
    writeln!(
        out,
        "    U={} e={:?} traces=[{}] body={} tail={}",
        set_str(&u.universe),
        u.witness_e.table(),
        traces.join(" "),
        set_str(&u.body),
        set_str(&u.tail)
    )
    .unwrap();
}

fn con(cfg: &RunConfig, mut doc: ReportDocument, a: &FiniteAlgebra) -> Result<Output> {
    let l = con_lattice(a, &cfg.limits)?;
    let mut text = format!("{}: {} congruences, {} covers\n", a.name(), l.len(), l.covers().len());
    for (i, p) in l.elements().iter().enumerate() {
        let ups: Vec<String> = l.upper_covers(i).iter().map(|&j| l.element(j).to_string()).collect();
        writeln!(text, "  [{i}] {p}  covered by: {}", ups.join(" ")).unwrap();
        doc.push(json!({ "index": i, "partition": p, "blocks": p.num_blocks(), "upper_covers": l.upper_covers(i) }));
    }
    doc.summary = json!({ "congruences": l.len(), "covers": l.covers().len() });
    let dot = hasse_dot(&l, a.name(), |_, _| None, None);
    Ok(Output { doc, text, dot: Some(dot) })
}

fn oracle_con(cfg: &RunConfig, mut doc: ReportDocument, a: &FiniteAlgebra) -> Result<Output> {
    let fast: BTreeSet<String> = con_lattice(a, &cfg.limits)?.elements().iter().map(Partition::to_string).collect();
    let brute: BTreeSet<String> = brute_force_con(a)?.iter().map(Partition::to_string).collect();
    let missing: Vec<&String> = brute.difference(&fast).collect();
    let extra: Vec<&String> = fast.difference(&brute).collect();
    let identical = missing.is_empty() && extra.is_empty();
    doc.summary = json!({
        "congruences": fast.len(),
        "brute_force": brute.len(),
        "identical": identical,
        "missing": missing,
        "extra": extra,
    });
    doc.verdict = if identical { Verdict::Pass } else { Verdict::Fail };
    let text = if identical {
        format!("identical ({} congruences)\n", fast.len())
    } else {
        format!("differ: missing {missing:?}, extra {extra:?}\n")
    };
    Ok(Output { doc, text, dot: None })
}

fn label(cfg: &RunConfig, mut doc: ReportDocument, a: &FiniteAlgebra) -> Result<Output> {
    let l = labeled(cfg, a)?;
    let mut text = format!("{}: {} congruences, {} covers\n", a.name(), l.lattice.len(), l.covers.len());
    let mut by_type = [0usize; 5];
    for c in &l.covers {
        if let Some(t) = c.label {
            by_type[t.value() as usize - 1] += 1;
        }
        writeln!(text, "  {}  type {}", cover_name(&l, c), type_str(c)).unwrap();
        for u in &c.minimal_sets {
            write_minimal_set(&mut text, u);
        }
        doc.push(json!({
            "lower": l.lattice.element(c.lower),
            "upper": l.lattice.element(c.upper),
            "type": c.label,
            "minimal_sets": c.minimal_sets.iter().map(minimal_set_json).collect::<Vec<_>>(),
        }));
    }
    let unlabeled = l.covers.iter().filter(|c| c.label.is_none()).count();
    doc.summary = json!({ "covers": l.covers.len(), "covers_by_type": by_type, "unlabeled": unlabeled });
    if unlabeled > 0 {
        doc.verdict = Verdict::Inconclusive;
    }
    let dot = labeled_lattice_dot(&l, None);
    Ok(Output { doc, text, dot: Some(dot) })
}

fn congruence_arg(a: &FiniteAlgebra, p: &Partition) -> Result<()> {
    if p.size() != a.size() {
        return Err(Error::SizeMismatch {
            expected: a.size(),
            got: p.size(),
        });
    }
    if !is_congruence(a, p)? {
        return Err(Error::Config(format!("{p} is not a congruence")));
    }
    Ok(())
}

fn minsets(cfg: &RunConfig, mut doc: ReportDocument, a: &FiniteAlgebra, delta: &str, theta: &str) -> Result<Output> {
    let (delta, theta): (Partition, Partition) = (delta.parse()?, theta.parse()?);
    congruence_arg(a, &delta)?;
    congruence_arg(a, &theta)?;
    if delta == theta || !delta.refines(&theta) {
        return Err(Error::Config(format!("{delta} is not strictly below {theta}")));
    }
    let pol1 = unary_polynomials(a, &cfg.limits)?;
    let l = con_lattice(a, &cfg.limits)?;
    let is_cover = l.is_cover(l.index_of(&delta).expect("congruence"), l.index_of(&theta).expect("congruence"));
    let (label, sets) = if is_cover {
        classify_quotient(a, &pol1, &delta, &theta, &cfg.limits)?
    } else {
        (None, minimal_sets(&pol1, &delta, &theta)?)
    };
    let mut text = format!("{delta} < {theta}: {} minimal sets", sets.len());
    match (is_cover, label) {
        (true, Some(t)) => writeln!(text, ", type {t}").unwrap(),
        (true, None) => writeln!(text, ", type ?").unwrap(),
        (false, _) => writeln!(text, " (not a cover)").unwrap(),
    }
    for u in &sets {
        write_minimal_set(&mut text, u);
        doc.push(minimal_set_json(u));
    }
    doc.summary = json!({ "delta": delta, "theta": theta, "cover": is_cover, "type": label, "minimal_sets": sets.len() });
    if is_cover && label.is_none() {
        doc.verdict = Verdict::Inconclusive;
    }
    Ok(Output { doc, text, dot: None })
}

/// Shrunk pentagons with their critical covers labeled.
fn labeled_pentagons(l: &LabeledLattice) -> Vec<PentagonWitness> {
    find_pentagons(&l.lattice)
        .iter()
        .map(|p| l.label_pentagon(&shrink_critical(&l.lattice, p)))
        .collect()
}

fn pentagons(cfg: &RunConfig, mut doc: ReportDocument, a: &FiniteAlgebra) -> Result<Output> {
    let l = labeled(cfg, a)?;
    let found = labeled_pentagons(&l);
    let mut text = format!("{}: {} pentagons\n", a.name(), found.len());
    for p in &found {
        let n = p.named(&l.lattice);
        let (lo, hi) = n.critical_cover.clone().expect("shrunk");
        let t = p.type_label.map_or("?".to_string(), |t| t.to_string());
        writeln!(
            text,
            "  γ={} δ={} θ={}  critical {lo} < {hi}  type {t}",
            n.gamma, n.delta, n.theta
        )
        .unwrap();
        doc.push(n);
    }
    let unlabeled = found.iter().filter(|p| p.type_label.is_none()).count();
    doc.summary = json!({ "pentagons": found.len(), "unlabeled": unlabeled });
    if unlabeled > 0 {
        doc.verdict = Verdict::Inconclusive;
    }
    let dot = labeled_lattice_dot(&l, found.first());
    Ok(Output { doc, text, dot: Some(dot) })
}

fn tails(cfg: &RunConfig, mut doc: ReportDocument, a: &FiniteAlgebra) -> Result<Output> {
    let l = labeled(cfg, a)?;
    let mut text = String::new();
    let mut count = 0;
    for c in &l.covers {
        let tailed: Vec<&MinimalSet> = c.tailed_sets().collect();
        if tailed.is_empty() {
            continue;
        }
        count += 1;
        writeln!(text, "  {}  type {}", cover_name(&l, c), type_str(c)).unwrap();
        for u in &tailed {
            write_minimal_set(&mut text, u);
        }
        doc.push(json!({
            "lower": l.lattice.element(c.lower),
            "upper": l.lattice.element(c.upper),
            "type": c.label,
            "tailed_sets": tailed.iter().map(|u| minimal_set_json(u)).collect::<Vec<_>>(),
        }));
    }
    let text = format!("{}: {count} covers with tailed minimal sets\n{text}", a.name());
    doc.summary = json!({ "covers": l.covers.len(), "tailed_covers": count });
    Ok(Output { doc, text, dot: None })
}

fn pentagon_tails(cfg: &RunConfig, mut doc: ReportDocument, a: &FiniteAlgebra) -> Result<Output> {
    let l = labeled(cfg, a)?;
    let mut text = String::new();
    let (mut passed, mut failed, mut not_applicable, mut unlabeled) = (0, 0, 0, 0);
    for p in find_pentagons(&l.lattice) {
        let covers = match cfg.policy() {
            WitnessPolicy::Canonical => vec![shrink_critical(&l.lattice, &p).critical_cover.expect("shrunk")],
            WitnessPolicy::All => all_critical_covers(&l.lattice, &p),
        };
        for (lo, hi) in covers {
            let cover = l.cover(lo, hi).expect("critical cover is a cover");
            let q = PentagonWitness {
                critical_cover: Some((lo, hi)),
                type_label: cover.label,
                ..p
            };
            let n = q.named(&l.lattice);
            if cover.label.is_none() {
                unlabeled += 1;
                writeln!(text, "  γ={} δ={} θ={}  critical {} unlabeled", n.gamma, n.delta, n.theta, cover_name(&l, cover))
                    .unwrap();
                doc.push(json!({ "pentagon": n, "outcome": "unlabeled" }));
                continue;
            }
            let r = check_pentagon_tails(&l.lattice, &q, cover)?;
            match r.outcome {
                TailOutcome::Pass => passed += 1,
                TailOutcome::Fail => failed += 1,
                TailOutcome::NotApplicable => not_applicable += 1,
            }
            let outcome = serde_json::to_value(r.outcome).expect("serializable");
            writeln!(
                text,
                "  γ={} δ={} θ={}  critical {} type {}  {}",
                n.gamma,
                n.delta,
                n.theta,
                cover_name(&l, cover),
                r.type_label,
                outcome.as_str().unwrap_or_default()
            )
            .unwrap();
            doc.push(r);
        }
    }
    let text = format!(
        "{}: {passed} passed, {failed} failed, {not_applicable} not applicable, {unlabeled} unlabeled\n{text}",
        a.name()
    );
    doc.summary = json!({ "passed": passed, "failed": failed, "not_applicable": not_applicable, "unlabeled": unlabeled });
    doc.verdict = if failed > 0 {
        Verdict::Fail
    } else if unlabeled > 0 {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    Ok(Output { doc, text, dot: None })
}

/// Witnesses of one cover restricted to the requested tail element and
/// pair.
fn matching_witnesses(
    cover: &LabeledCover,
    policy: WitnessPolicy,
    t: Option<usize>,
    pair: Option<(usize, usize)>,
) -> Vec<TailWitness> {
    if t.is_none() && pair.is_none() {
        return tail_witnesses(cover, policy);
    }
    let all = tail_witnesses(cover, WitnessPolicy::All);
    let mut out = all
        .into_iter()
        .filter(|w| t.map_or(true, |t| w.t == t) && pair.map_or(true, |p| w.pair == p));
    match policy {
        WitnessPolicy::Canonical => out.next().into_iter().collect(),
        WitnessPolicy::All => out.collect(),
    }
}

fn write_certificate(out: &mut String, c: &PentagonCertificate) {
    let w = &c.witness;
    let s: Vec<String> = c.s_elements.iter().map(|(x, y)| format!("({x},{y})")).collect();
    writeln!(
        out,
        "  cover {} < {}  t={} pair=({},{})  type {}",
        w.alpha, w.beta, w.t, w.pair.0, w.pair.1, c.claimed_type
    )
    .unwrap();
    writeln!(out, "    S = [{}]", s.join(",")).unwrap();
    writeln!(out, "    γ  = {}", c.gamma).unwrap();
    writeln!(out, "    δ  = {}", c.delta).unwrap();
    writeln!(out, "    δ′ = {}", c.delta_prime).unwrap();
    writeln!(out, "    θ  = {}", c.theta).unwrap();
    let failed = c.checks.failed();
    if failed.is_empty() {
        writeln!(out, "    all checks pass").unwrap();
    } else {
        writeln!(out, "    failed: {}", failed.join(", ")).unwrap();
    }
}

fn witness(
    cfg: &RunConfig,
    mut doc: ReportDocument,
    a: &FiniteAlgebra,
    cover: Option<(Partition, Partition)>,
    t: Option<usize>,
    pair: Option<(usize, usize)>,
) -> Result<Output> {
    let l = labeled(cfg, a)?;
    let covers: Vec<&LabeledCover> = match &cover {
        Some((alpha, beta)) => {
            congruence_arg(a, alpha)?;
            congruence_arg(a, beta)?;
            let lo = l.lattice.index_of(alpha).expect("congruence");
            let hi = l.lattice.index_of(beta).expect("congruence");
            vec![l.cover(lo, hi).ok_or(Error::NotACover { lower: lo, upper: hi })?]
        }
        None => l.covers.iter().collect(),
    };
    let witnesses: Vec<TailWitness> = covers
        .iter()
        .flat_map(|c| matching_witnesses(c, cfg.policy(), t, pair))
        .collect();
    if witnesses.is_empty() && (t.is_some() || pair.is_some()) {
        return Err(Error::InvalidWitness(
            "no tailed minimal set matches the requested tail element and pair".into(),
        ));
    }
    let mut text = format!("{}: {} tail witnesses\n", a.name(), witnesses.len());
    let mut certs = Vec::new();
    let mut skipped = 0;
    for w in &witnesses {
        match construct_witness(a, w, &cfg.limits) {
            Ok(c) => {
                write_certificate(&mut text, &c);
                certs.push(c);
            }
            Err(e) if e.is_cap() => {
                skipped += 1;
                writeln!(text, "  cover {} < {}: {e}", w.alpha, w.beta).unwrap();
            }
            Err(e) => return Err(e),
        }
    }
    let failed = certs.iter().filter(|c| !c.checks.all()).count();
    doc.verdict = if failed > 0 {
        Verdict::Fail
    } else if skipped > 0 {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    doc.summary = json!({ "witnesses": witnesses.len(), "certificates": certs.len(), "failed": failed, "skipped_at_caps": skipped });
    let dot = match certs.first() {
        Some(c) => certificate_dot(c),
        None => format!("digraph \"{}\" {{\n}}\n", a.name()),
    };
    for c in certs {
        doc.push(c);
    }
    Ok(Output { doc, text, dot: Some(dot) })
}

fn tail_collapse(cfg: &RunConfig, mut doc: ReportDocument, a: &FiniteAlgebra) -> Result<Output> {
    let l = labeled(cfg, a)?;
    let canonical = cfg.policy() == WitnessPolicy::Canonical;
    let mut text = String::new();
    let (mut verified, mut violations, mut inconclusive) = (0, 0, 0);
    for c in &l.covers {
        for u in c.tailed_sets() {
            let ts = if canonical { &u.tail[..1] } else { &u.tail[..] };
            for &t in ts {
                let r = check_tail_collapse(a, u, t, cfg.limits.arity_max, cfg.limits.max_clone)?;
                let what = match &r.outcome {
                    CollapseOutcome::VerifiedUpToArity(m) => {
                        verified += 1;
                        format!("verified up to arity {m}")
                    }
                    CollapseOutcome::Violation(v) => {
                        violations += 1;
                        format!("violation at arity {}: {:?} vs {:?}", v.arity, v.args.0, v.args.1)
                    }
                    CollapseOutcome::InconclusiveCap => {
                        inconclusive += 1;
                        "inconclusive at the clone cap".to_string()
                    }
                };
                writeln!(
                    text,
                    "  {}  U={} t={t}  {what}",
                    cover_name(&l, c),
                    set_str(&u.universe)
                )
                .unwrap();
                doc.push(r);
            }
            if canonical {
                break;
            }
        }
    }
    let text = format!(
        "{}: {verified} verified, {violations} violations, {inconclusive} inconclusive\n{text}",
        a.name()
    );
    doc.summary = json!({ "verified": verified, "violations": violations, "inconclusive": inconclusive });
    doc.verdict = if violations > 0 {
        Verdict::Fail
    } else if inconclusive > 0 {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    Ok(Output { doc, text, dot: None })
}

fn modularity(
    cfg: &RunConfig,
    mut doc: ReportDocument,
    a: &FiniteAlgebra,
    mode: tct_core::checks::ModularityMode,
) -> Result<Output> {
    let r = modularity_report(a, mode, &cfg.limits)?;
    let status = |s: ClauseStatus| match s {
        ClauseStatus::True => "true",
        ClauseStatus::False => "false",
        ClauseStatus::Partial => "partial",
    };
    let mut text = format!(
        "{}: {}\n",
        a.name(),
        if r.exhaustive { "exhaustive" } else { "sampled" }
    );
    for (name, c) in [
        ("cube_subalgebras_modular", &r.cube_subalgebras_modular),
        ("types_234_empty_tails", &r.types_234_empty_tails),
        ("modular", &r.modular),
        ("square_subalgebras_distributive", &r.square_subalgebras_distributive),
        ("types_34_empty_tails", &r.types_34_empty_tails),
        ("distributive", &r.distributive),
    ] {
        writeln!(text, "  {name}: {}  ({})", status(c.status), c.detail).unwrap();
    }
    for i in &r.implications {
        let v = serde_json::to_value(i.verdict).expect("serializable");
        writeln!(text, "  {} => {}: {}", i.premise, i.conclusion, v.as_str().unwrap_or_default()).unwrap();
    }
    doc.verdict = if r.has_counterexample() {
        Verdict::Fail
    } else if r.has_partial() {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    doc.summary = json!({ "counterexample": r.has_counterexample(), "partial": r.has_partial() });
    doc.push(r);
    Ok(Output { doc, text, dot: None })
}

fn sweep(cfg: &RunConfig, mut doc: ReportDocument, corpus: CorpusSpec, include: &[std::path::PathBuf]) -> Result<Output> {
    let mut algebras = corpus.build()?;
    for path in include {
        algebras.push(load(path)?);
    }
    let sc = SweepConfig {
        corpus,
        limits: cfg.limits.clone(),
        witnesses: cfg.policy(),
        ..SweepConfig::default()
    };
    let (items, summary) = run_sweep(&algebras, &sc);
    let t = &summary.totals;
    let mut text = format!(
        "{} algebras: {} passed, {} failed, {} inconclusive\n",
        summary.items, summary.passed, summary.failed, summary.inconclusive
    );
    writeln!(text, "  covers by type:          {:?}", t.covers_by_type).unwrap();
    writeln!(text, "  pentagons:               {}", t.pentagons).unwrap();
    writeln!(text, "  pentagon covers by type: {:?}", t.pentagon_covers_by_type).unwrap();
    writeln!(
        text,
        "  pentagon checks:         {} passed, {} failed",
        t.pentagon_checks_passed, t.pentagon_checks_failed
    )
    .unwrap();
    writeln!(text, "  tailed covers by type:   {:?}", t.tailed_covers_by_type).unwrap();
    writeln!(
        text,
        "  certificates:            {} built, {} verified, {} pentagons passed, {} out of scope",
        t.certificates, t.certificates_verified, t.certificate_pentagons_passed, t.certificates_out_of_scope
    )
    .unwrap();
    writeln!(
        text,
        "  collapse checks:         {}, {} inconclusive",
        t.collapse_checks, t.collapse_inconclusive
    )
    .unwrap();
    for it in items.iter().filter(|i| i.verdict != Verdict::Pass) {
        let v = serde_json::to_value(it.verdict).expect("serializable");
        writeln!(text, "  {} {}: {}", v.as_str().unwrap_or_default(), it.algebra, it.notes.join("; ")).unwrap();
    }
    doc.verdict = summary.verdict;
    doc.summary = serde_json::to_value(&summary).expect("serializable");
    for it in items {
        doc.push(it);
    }
    Ok(Output { doc, text, dot: None })
}

fn verify(cfg: &RunConfig, mut doc: ReportDocument, path: &Path) -> Result<Output> {
    let cert: PentagonCertificate = parse_json_str(&std::fs::read_to_string(path)?)?;
    let checks = verify_certificate(&cert, &cfg.limits)?;
    let mut failed: Vec<&str> = checks.failed();
    let mut tails = None;
    if checks.all() {
        match certificate_pentagon(&cert, &cfg.limits)? {
            Some((lattice, p, cover)) => {
                let r = check_pentagon_tails(&lattice, &p, &cover)?;
                if r.outcome == TailOutcome::Fail {
                    failed.push("pentagon_tails");
                }
                tails = Some(r.outcome);
            }
            None => failed.push("pentagon"),
        }
    }
    let mut text = format!("certificate for {}\n", cert.algebra.name());
    let mut shown = cert.clone();
    shown.checks = checks;
    write_certificate(&mut text, &shown);
    if let Some(o) = tails {
        let v = serde_json::to_value(o).expect("serializable");
        writeln!(text, "    pentagon tails: {}", v.as_str().unwrap_or_default()).unwrap();
    }
    doc.verdict = if failed.is_empty() { Verdict::Pass } else { Verdict::Fail };
    doc.summary = json!({ "checks": checks, "pentagon_tails": tails, "failed": failed });
    let dot = certificate_dot(&shown);
    doc.push(shown);
    Ok(Output { doc, text, dot: Some(dot) })
}
