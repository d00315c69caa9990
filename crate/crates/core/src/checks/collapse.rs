//! Bounded check that polynomials of a tailed minimal algebra sending the
//! constant tuple `(t,…,t)` into the body collapse `β|B` into `α`.
//!
//! The polynomials of the induced algebra `A|U` are the maps `e∘p` with
//! `p` a polynomial of `A` and `e` the idempotent onto `U`. Only their
//! values on `R = {(t,…,t)} ∪ B^m` matter here, so `p` is closed over `R`
//! alone and `e` is applied afterwards.

use serde::{Deserialize, Serialize};

use crate::algebra::{decode, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::polynomial::polynomials_on_domain;
use crate::tct::MinimalSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseViolation {
    pub arity: usize,
    /// Argument tuples the table is given on.
    pub domain: Vec<Vec<usize>>,
    pub table: Vec<usize>,
    /// Componentwise `β|B`-related arguments with non-`α`-related values.
    pub args: (Vec<usize>, Vec<usize>),
    pub values: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CollapseOutcome {
    VerifiedUpToArity(usize),
    Violation(CollapseViolation),
    InconclusiveCap,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TailCollapseReport {
    pub algebra: String,
    pub universe: Vec<usize>,
    pub alpha: Partition,
    pub beta: Partition,
    pub body: Vec<usize>,
    pub tail: Vec<usize>,
    pub t: usize,
    /// Distinct restricted polynomials examined at arity 1, 2, ….
    pub functions_per_arity: Vec<usize>,
    pub outcome: CollapseOutcome,
}

/// Checks arities `1..=max_arity`. A cap hit at arity 1 or 2 makes the
/// result inconclusive; above that the verified bound stops short.
pub fn check_tail_collapse(
    a: &FiniteAlgebra,
    u: &MinimalSet,
    t: usize,
    max_arity: usize,
    cap: usize,
) -> Result<TailCollapseReport> {
    if !u.tail.contains(&t) {
        return Err(Error::InvalidWitness(format!("{t} is not in the tail")));
    }
    let (alpha, beta) = (&u.delta, &u.theta);
    let e = u.witness_e.table();
    let body = &u.body;
    let mut report = TailCollapseReport {
        algebra: a.name().to_string(),
        universe: u.universe.clone(),
        alpha: alpha.clone(),
        beta: beta.clone(),
        body: body.clone(),
        tail: u.tail.clone(),
        t,
        functions_per_arity: Vec::new(),
        outcome: CollapseOutcome::VerifiedUpToArity(0),
    };
    for m in 1..=max_arity {
        let cube: Vec<Vec<usize>> = (0..body.len().pow(m as u32))
            .map(|code| decode(code, body.len(), m).into_iter().map(|i| body[i]).collect())
            .collect();
        let related: Vec<(usize, usize)> = (0..cube.len())
            .flat_map(|i| (i + 1..cube.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| cube[i].iter().zip(&cube[j]).all(|(&x, &y)| beta.related(x, y)))
            .collect();
        let mut domain = vec![vec![t; m]];
        domain.extend(cube.iter().cloned());
        let dc = polynomials_on_domain(a, domain, cap)?;
        report.functions_per_arity.push(dc.functions.len());
        for f in &dc.functions {
            let g: Vec<usize> = f.iter().map(|&v| e[v]).collect();
            if body.binary_search(&g[0]).is_err() {
                continue;
            }
            if let Some(&(i, j)) = related.iter().find(|&&(i, j)| !alpha.related(g[1 + i], g[1 + j])) {
                report.outcome = CollapseOutcome::Violation(CollapseViolation {
                    arity: m,
                    domain: dc.domain.clone(),
                    table: g.clone(),
                    args: (cube[i].clone(), cube[j].clone()),
                    values: (g[1 + i], g[1 + j]),
                });
                return Ok(report);
            }
        }
        if dc.cap_hit {
            if m <= 2 {
                report.outcome = CollapseOutcome::InconclusiveCap;
            }
            return Ok(report);
        }
        report.outcome = CollapseOutcome::VerifiedUpToArity(m);
    }
    Ok(report)
}
