//! Graphviz output for Hasse diagrams.

use std::fmt::Write;

use crate::checks::PentagonCertificate;
use crate::lattice::{Lattice, PentagonWitness};
use crate::partition::Partition;
use crate::tct::LabeledLattice;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram with nodes named by `Lattice::name`. `edge_label` may
/// annotate each cover; pentagon elements and the critical cover of
/// `highlight` are drawn emphasized.
pub fn hasse_dot<L, F>(l: &L, title: &str, edge_label: F, highlight: Option<&PentagonWitness>) -> String
where
    L: Lattice + ?Sized,
    F: Fn(usize, usize) -> Option<String>,
{
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(title)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=box, fontname=\"monospace\"];").unwrap();
    let marked = highlight.map(|p| p.elements()).unwrap_or_default();
    for x in 0..l.len() {
        let style = if highlight.is_some() && marked.contains(&x) {
            " [style=filled, fillcolor=lightgray]"
        } else {
            ""
        };
        writeln!(out, "  {}{};", quote(&l.name(x)), style).unwrap();
    }
    let critical = highlight.and_then(|p| p.critical_cover);
    for x in 0..l.len() {
        for &y in l.upper_covers(x) {
            let mut attrs = Vec::new();
            if let Some(lbl) = edge_label(x, y) {
                attrs.push(format!("label={}", quote(&lbl)));
            }
            if critical == Some((x, y)) {
                attrs.push("color=red, penwidth=2".to_string());
            }
            let attrs = if attrs.is_empty() {
                String::new()
            } else {
                format!(" [{}]", attrs.join(", "))
            };
            writeln!(out, "  {} -> {}{};", quote(&l.name(x)), quote(&l.name(y)), attrs).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// Congruence lattice with covers annotated `typ=i` (`typ=?` when the
/// clone cap left a cover unlabeled).
pub fn labeled_lattice_dot(l: &LabeledLattice, highlight: Option<&PentagonWitness>) -> String {
    let label = |x: usize, y: usize| {
        l.cover(x, y).map(|c| match c.label {
            Some(t) => format!("typ={t}"),
            None => "typ=?".to_string(),
        })
    };
    hasse_dot(&l.lattice, l.lattice.algebra().name(), label, highlight)
}

/// The pentagon of a certificate with `γ ≺ γ∨θ` and `δ′ ≺ θ` annotated by
/// the claimed type. Nodes are partitions of `S`.
pub fn certificate_dot(cert: &PentagonCertificate) -> String {
    let top = cert.gamma.join(&cert.theta);
    let bottom = cert.gamma.meet(&cert.theta);
    let join = cert.gamma.join(&cert.delta_prime);
    let mut nodes: Vec<(&str, Partition)> = vec![
        ("γ∧θ", bottom),
        ("δ", cert.delta.clone()),
        ("δ′", cert.delta_prime.clone()),
        ("θ", cert.theta.clone()),
        ("γ", cert.gamma.clone()),
        ("γ∨δ′", join),
        ("γ∨θ", top),
    ];
    // Equal partitions share a node.
    let mut merged: Vec<(String, Partition)> = Vec::new();
    for (name, p) in nodes.drain(..) {
        match merged.iter_mut().find(|(_, q)| *q == p) {
            Some((n, _)) => {
                n.push_str(" = ");
                n.push_str(name);
            }
            None => merged.push((name.to_string(), p)),
        }
    }
    let node = |i: usize| format!("{}\\n{}", merged[i].0, merged[i].1);
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(&format!("S({})", cert.algebra.name()))).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=box, fontname=\"monospace\"];").unwrap();
    for i in 0..merged.len() {
        writeln!(out, "  {};", quote(&node(i))).unwrap();
    }
    let lt = |a: &Partition, b: &Partition| a != b && a.refines(b);
    let typ = format!("typ={}", cert.claimed_type);
    for i in 0..merged.len() {
        for j in 0..merged.len() {
            let (a, b) = (&merged[i].1, &merged[j].1);
            let covered = lt(a, b) && !merged.iter().any(|(_, c)| lt(a, c) && lt(c, b));
            if !covered {
                continue;
            }
            let annotated = (*a == cert.delta_prime && *b == cert.theta)
                || (*a == cert.gamma && *b == cert.gamma.join(&cert.theta));
            let attrs = if annotated {
                format!(" [label={}]", quote(&typ))
            } else {
                String::new()
            };
            writeln!(out, "  {} -> {}{};", quote(&node(i)), quote(&node(j)), attrs).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::con_lattice;
    use crate::corpus;
    use crate::lattice::first_pentagon;
    use crate::limits::Limits;
    use crate::tct::label_lattice;

    fn labeled(a: &crate::FiniteAlgebra) -> LabeledLattice {
        label_lattice(con_lattice(a, &Limits::default()).unwrap(), &Limits::default()).unwrap()
    }

    #[test]
    fn semilattice_diagram() {
        let dot = labeled_lattice_dot(&labeled(&corpus::semilattice2()), None);
        assert_eq!(dot.matches(" -> ").count(), 1);
        assert!(dot.contains("\"0|1\" -> \"0,1\" [label=\"typ=5\"]"));
    }

    #[test]
    fn trivial_diagram() {
        let dot = labeled_lattice_dot(&labeled(&corpus::trivial()), None);
        assert!(dot.contains("  \"0\";"));
        assert!(!dot.contains("->"));
    }

    #[test]
    fn partition_lattice_highlight() {
        let l = labeled(&corpus::no_ops(4));
        let p = first_pentagon(&l.lattice).unwrap();
        let p = l.label_pentagon(&p);
        let dot = labeled_lattice_dot(&l, Some(&p));
        assert_eq!(dot.matches("fillcolor").count(), 5);
        assert_eq!(dot.matches("color=red").count(), 1);
        assert_eq!(dot.matches(" -> ").count(), 31);
    }
}
