//! One line per acceptance criterion. Exits 1 if any criterion fails.
//!
//! cargo test -p tct-cli --test acceptance

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

use tct_core::checks::{
    certificate_pentagon, check_pentagon_tails, construct_witness, modularity_report, tail_witnesses, ClauseStatus,
    ImplicationVerdict, ModularityMode, TailOutcome, WitnessPolicy,
};
use tct_core::congruence::brute_force_con;
use tct_core::corpus::{self, CorpusSpec};
use tct_core::lattice::{check_modular_distributive, find_pentagons, first_pentagon, satisfies_modular_law};
use tct_core::sweep::{run_sweep, SweepConfig};
use tct_core::{con_lattice, label_lattice, CongruenceLattice, FiniteAlgebra, Lattice, Limits, Partition};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn limits() -> Limits {
    Limits::default()
}

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

/// Every lattice built by criteria 1 to 5, for criterion 7.
#[derive(Default)]
struct Seen {
    lattices: Vec<CongruenceLattice>,
}

fn congruence_oracle(seen: &mut Seen) -> Outcome {
    let mut algebras = corpus::random_algebras(5, 100, 42);
    algebras.extend(corpus::curated());
    let mut bad = Vec::new();
    for a in &algebras {
        let l = con_lattice(a, &limits()).unwrap();
        let fast: BTreeSet<String> = l.elements().iter().map(Partition::to_string).collect();
        let brute: BTreeSet<String> = brute_force_con(a).unwrap().iter().map(Partition::to_string).collect();
        let scan = common::congruences(a);
        if fast != brute || fast != scan {
            bad.push(a.name().to_string());
        }
        seen.lattices.push(l);
    }
    outcome(bad.is_empty(), format!("{} algebras, mismatches: {bad:?}", algebras.len()))
}

fn partition_lattice(seen: &mut Seen) -> Outcome {
    let a = corpus::no_ops(4);
    let l = label_lattice(con_lattice(&a, &limits()).unwrap(), &limits()).unwrap();
    let (g, d, t) = (
        l.lattice.index_of(&part("0,2|1,3")).unwrap(),
        l.lattice.index_of(&part("0,1|2|3")).unwrap(),
        l.lattice.index_of(&part("0,1|2,3")).unwrap(),
    );
    let pentagons = find_pentagons(&l.lattice);
    let has = pentagons.iter().any(|p| (p.gamma, p.delta, p.theta) == (g, d, t));
    let all_one = l.covers.iter().all(|c| c.label.map(|x| x.value()) == Some(1));
    let size = l.lattice.len();
    seen.lattices.push(l.lattice);
    outcome(
        size == 15 && has && all_one,
        format!(
            "|Con| = {size}, {} pentagons, named pentagon present: {has}, all covers type 1: {all_one}",
            pentagons.len()
        ),
    )
}

fn sanity_types(seen: &mut Seen) -> Outcome {
    let start = Instant::now();
    let table = [
        (corpus::no_ops(2), 1),
        (corpus::cyclic_group(2), 2),
        (corpus::boolean2(), 3),
        (corpus::lattice2(), 4),
        (corpus::semilattice2(), 5),
    ];
    let mut got = Vec::new();
    let mut ok = true;
    for (a, want) in &table {
        let l = label_lattice(con_lattice(a, &limits()).unwrap(), &limits()).unwrap();
        let label = l.covers[0].label.map(|t| t.value());
        let oracle = common::two_element_type(a);
        ok &= l.covers.len() == 1 && label == Some(*want) && oracle == *want;
        got.push(format!("{}={}", a.name(), label.map_or("?".into(), |t| t.to_string())));
        seen.lattices.push(l.lattice);
    }
    let family = corpus::two_element_family();
    let mut disagreements = 0;
    for a in &family {
        let l = label_lattice(con_lattice(a, &limits()).unwrap(), &limits()).unwrap();
        let want = common::two_element_type(a);
        disagreements += l.covers.iter().filter(|c| c.label.map(|t| t.value()) != Some(want)).count();
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        ok && disagreements == 0 && secs < 5.0,
        format!(
            "{}; {} two-element algebras vs clone oracle: {disagreements} disagreements; {secs:.2}s",
            got.join(" "),
            family.len()
        ),
    )
}

fn sweep_corpus() -> Vec<FiniteAlgebra> {
    CorpusSpec::default().build().unwrap()
}

fn pentagon_sweep(algebras: &[FiniteAlgebra], seen: &mut Seen) -> (Outcome, Outcome) {
    let cfg = SweepConfig::default();
    let (items, summary) = run_sweep(algebras, &cfg);
    let t = &summary.totals;
    let groupoids = algebras.iter().filter(|a| a.name().starts_with("g3-")).count();
    let failures: Vec<&str> = items
        .iter()
        .filter(|i| !i.counterexamples.is_empty())
        .map(|i| i.algebra.as_str())
        .collect();
    for it in items.iter().filter(|i| !i.counterexamples.is_empty()) {
        eprintln!("{}", serde_json::to_string_pretty(&it.counterexamples).unwrap());
    }
    let typed: usize = t.pentagon_covers_by_type[1..].iter().sum();
    let pentagons = outcome(
        groupoids >= 500 && t.pentagon_checks_failed == 0 && failures.is_empty() && typed > 0,
        format!(
            "{} algebras ({groupoids} groupoids), critical covers by type {:?}, {} passed, {} failed, \
             {} certificate pentagons passed",
            summary.items, t.pentagon_covers_by_type, t.pentagon_checks_passed, t.pentagon_checks_failed,
            t.certificate_pentagons_passed
        ),
    );
    let items_with_tails = items.iter().filter(|i| i.stats.collapse_checks > 0).count();
    let inconclusive_items = items.iter().filter(|i| i.stats.collapse_inconclusive > 0).count();
    let violations = items
        .iter()
        .flat_map(|i| &i.counterexamples)
        .filter(|c| c.check == "tail-collapse")
        .count();
    let rate = if items_with_tails == 0 {
        0.0
    } else {
        inconclusive_items as f64 / items_with_tails as f64
    };
    let collapse = outcome(
        violations == 0 && rate <= 0.2 && t.collapse_checks > 0,
        format!(
            "{} checks on {items_with_tails} algebras, {violations} violations, inconclusive rate {:.1}%",
            t.collapse_checks,
            100.0 * rate
        ),
    );
    for a in algebras {
        seen.lattices.push(con_lattice(a, &limits()).unwrap());
    }
    (pentagons, collapse)
}

fn witness_round_trip(algebras: &[FiniteAlgebra], seen: &mut Seen) -> Outcome {
    let mut built = 0;
    let mut failed = Vec::new();
    let mut by_type = [0usize; 5];
    for a in algebras.iter().filter(|a| a.size() <= 4) {
        let l = label_lattice(con_lattice(a, &limits()).unwrap(), &limits()).unwrap();
        for cover in &l.covers {
            for w in tail_witnesses(cover, WitnessPolicy::Canonical) {
                built += 1;
                let c = construct_witness(a, &w, &limits()).unwrap();
                by_type[c.claimed_type.value() as usize - 1] += 1;
                if !c.checks.all() {
                    failed.push(format!("{}: {:?}", a.name(), c.checks.failed()));
                    continue;
                }
                match certificate_pentagon(&c, &limits()).unwrap() {
                    Some((lattice, p, cover)) => {
                        if check_pentagon_tails(&lattice, &p, &cover).unwrap().outcome == TailOutcome::Fail {
                            failed.push(format!("{}: certificate pentagon", a.name()));
                        }
                        seen.lattices.push(lattice);
                    }
                    None => failed.push(format!("{}: no pentagon", a.name())),
                }
            }
        }
    }
    let a = corpus::no_ops(4);
    let l = label_lattice(con_lattice(&a, &limits()).unwrap(), &limits()).unwrap();
    let cover = l
        .cover(l.lattice.index_of(&part("0|1|2|3")).unwrap(), l.lattice.index_of(&part("0,1|2|3")).unwrap())
        .unwrap();
    let w = tail_witnesses(cover, WitnessPolicy::Canonical).remove(0);
    let c = construct_witness(&a, &w, &limits()).unwrap();
    let exact = (w.t, w.pair) == (2, (0, 1))
        && c.s_elements == [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2), (3, 3)]
        && c.delta == part("0|1|2,4|3|5|6")
        && c.delta_prime == c.delta
        && c.theta == part("0|1,3|2,4|5|6")
        && c.gamma == part("0,1,2|3,4|5|6")
        && c.claimed_type.value() == 1
        && c.checks.all();
    outcome(
        failed.is_empty() && exact && built > 0,
        format!(
            "{built} certificates by type {by_type:?}, failures {failed:?}, no-op example exact: {exact}"
        ),
    )
}

fn modularity_equivalence(seen: &Seen) -> Outcome {
    // Lattices with the same congruences are the same lattice.
    let mut distinct: Vec<&CongruenceLattice> = Vec::new();
    let mut keys = BTreeSet::new();
    for l in &seen.lattices {
        let key: Vec<String> = l.elements().iter().map(Partition::to_string).collect();
        if keys.insert(key) {
            distinct.push(l);
        }
    }
    let mut bad = 0;
    let mut nonmodular = 0;
    for l in &distinct {
        let pentagon_free = first_pentagon(*l).is_none();
        nonmodular += usize::from(!pentagon_free);
        let law = common::modular_by_law(l.len(), |x, y| l.leq(x, y));
        if check_modular_distributive(*l).modular != pentagon_free
            || satisfies_modular_law(*l) != pentagon_free
            || law != pentagon_free
        {
            bad += 1;
        }
    }
    outcome(
        bad == 0,
        format!(
            "{} lattices ({} distinct, {nonmodular} non-modular), {bad} disagreements",
            seen.lattices.len(),
            distinct.len()
        ),
    )
}

fn modularity_instances() -> Outcome {
    use ClauseStatus::{False, True};
    let z2 = modularity_report(&corpus::cyclic_group(2), ModularityMode::Auto, &limits()).unwrap();
    let s = modularity_report(&corpus::semilattice2(), ModularityMode::Auto, &limits()).unwrap();
    let z2_ok = [z2.cube_subalgebras_modular.status, z2.types_234_empty_tails.status, z2.modular.status] == [True; 3]
        && z2.implications.iter().all(|i| i.verdict == ImplicationVerdict::Consistent);
    let s_ok = s.types_234_empty_tails.status == False
        && s.types_234_empty_tails.detail.contains("type 5")
        && !s.has_counterexample();
    let st = |c: ClauseStatus| serde_json::to_value(c).unwrap().as_str().unwrap().to_string();
    outcome(
        z2_ok && s_ok,
        format!(
            "z2: ({},{},{}); semilattice2: ({},{},{}), counterexample: {}",
            st(z2.cube_subalgebras_modular.status),
            st(z2.types_234_empty_tails.status),
            st(z2.modular.status),
            st(s.cube_subalgebras_modular.status),
            st(s.types_234_empty_tails.status),
            st(s.modular.status),
            s.has_counterexample()
        ),
    )
}

fn determinism() -> Outcome {
    let dir = env!("CARGO_MANIFEST_DIR");
    let file = |n: &str| format!("{dir}/../core/corpus/{n}.json");
    let cases: Vec<Vec<String>> = vec![
        vec!["con".into(), file("noops4"), "--format".into(), "json".into()],
        vec!["label".into(), file("pentagon4"), "--format".into(), "json".into()],
        vec!["pentagons".into(), file("noops4"), "--format".into(), "dot".into()],
        vec!["pentagon-tails".into(), file("pentagon3"), "--format".into(), "json".into()],
        vec!["witness".into(), file("tail4"), "--witnesses".into(), "all".into(), "--format".into(), "json".into()],
        vec!["tail-collapse".into(), file("chain3"), "--format".into(), "json".into()],
        vec!["modularity-report".into(), file("semilattice2"), "--format".into(), "json".into()],
        vec!["sweep".into(), "--groupoids".into(), "100".into(), "--random".into(), "20".into(), "--seed".into(), "7".into(), "--format".into(), "json".into()],
    ];
    let mut differing = Vec::new();
    for args in &cases {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_tct"))
                .args(args)
                .env_remove("TCT_FORMAT")
                .output()
                .unwrap()
        };
        let (a, b) = (run(), run());
        if a.stdout != b.stdout || a.status != b.status || a.stdout.is_empty() {
            differing.push(args[0].clone());
        }
    }
    outcome(
        differing.is_empty(),
        format!("{} commands run twice, differing: {differing:?}", cases.len()),
    )
}

fn main() {
    let start = Instant::now();
    let mut seen = Seen::default();
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    results.push((1, "congruence oracle equivalence", congruence_oracle(&mut seen)));
    results.push((2, "partition lattice of a 4-element set", partition_lattice(&mut seen)));
    results.push((3, "type sanity table", sanity_types(&mut seen)));
    let algebras = sweep_corpus();
    let (pentagons, collapse) = pentagon_sweep(&algebras, &mut seen);
    results.push((4, "typed pentagons have bridged tails", pentagons));
    results.push((5, "witness round trip", witness_round_trip(&algebras, &mut seen)));
    results.push((6, "tail collapse bounded sweep", collapse));
    results.push((7, "modular iff pentagon-free", modularity_equivalence(&seen)));
    results.push((8, "modularity report instances", modularity_instances()));
    results.push((9, "determinism", determinism()));
    results.sort_by_key(|r| r.0);
    let mut all = true;
    for (n, name, o) in &results {
        all &= o.pass;
        println!("criterion {n} {}: {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} in {:.1}s", if all { "PASS" } else { "FAIL" }, start.elapsed().as_secs_f64());
    if !all {
        std::process::exit(1);
    }
}
