//! Finite algebras given by operation tables.
//!
//! Tables are flat, in lexicographic argument order with the first argument
//! most significant. Elements of a power `A^k` are encoded the same way, so
//! `(a, b)` in `A^2` is `a * n + b`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::closure::close_vectors;
use crate::error::{Error, Resource, Result, ValidationIssue};
use crate::limits::Limits;
use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Operation {
    name: String,
    arity: usize,
    table: Vec<usize>,
}

impl Operation {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// Value at `args`. Panics when `args` has the wrong length or an entry
    /// is out of range for `n`.
    pub fn eval(&self, n: usize, args: &[usize]) -> usize {
        assert_eq!(args.len(), self.arity, "wrong number of arguments");
        self.table[encode(args, n)]
    }
}

/// Raw, unvalidated algebra description; this is the on-disk JSON shape.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawAlgebra {
    pub name: String,
    pub size: usize,
    pub operations: Vec<Operation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawAlgebra", into = "RawAlgebra")]
pub struct FiniteAlgebra {
    name: String,
    size: usize,
    operations: Vec<Operation>,
}

impl TryFrom<RawAlgebra> for FiniteAlgebra {
    type Error = Error;

    fn try_from(raw: RawAlgebra) -> Result<Self> {
        validate_algebra(raw)
    }
}

impl From<FiniteAlgebra> for RawAlgebra {
    fn from(a: FiniteAlgebra) -> Self {
        RawAlgebra {
            name: a.name,
            size: a.size,
            operations: a.operations,
        }
    }
}

/// Checks every invariant of a raw description and reports all violations
/// at once.
pub fn validate_algebra(raw: RawAlgebra) -> Result<FiniteAlgebra> {
    let mut issues = Vec::new();
    if raw.size == 0 {
        issues.push(ValidationIssue::ZeroSize);
    }
    let mut seen = HashSet::new();
    for op in &raw.operations {
        if !seen.insert(op.name.as_str()) {
            issues.push(ValidationIssue::DuplicateName(op.name.clone()));
        }
        let expected = match checked_pow(raw.size, op.arity) {
            Some(e) => e,
            None => {
                issues.push(ValidationIssue::TooLarge {
                    op: op.name.clone(),
                });
                continue;
            }
        };
        if op.table.len() != expected {
            issues.push(ValidationIssue::TableLength {
                op: op.name.clone(),
                got: op.table.len(),
                expected,
            });
        }
        if let Some((position, &value)) = op.table.iter().enumerate().find(|(_, &v)| v >= raw.size) {
            issues.push(ValidationIssue::EntryOutOfRange {
                op: op.name.clone(),
                position,
                value,
                size: raw.size,
            });
        }
    }
    if !issues.is_empty() {
        return Err(Error::Validation(issues));
    }
    Ok(FiniteAlgebra {
        name: raw.name,
        size: raw.size,
        operations: raw.operations,
    })
}

impl FiniteAlgebra {
    pub fn new(name: impl Into<String>, size: usize, operations: Vec<Operation>) -> Result<Self> {
        validate_algebra(RawAlgebra {
            name: name.into(),
            size,
            operations,
        })
    }

    /// Convenience constructor from `(name, arity, table)` triples.
    pub fn from_tables(name: &str, size: usize, ops: &[(&str, usize, &[usize])]) -> Result<Self> {
        let operations = ops
            .iter()
            .map(|(n, k, t)| Operation {
                name: n.to_string(),
                arity: *k,
                table: t.to_vec(),
            })
            .collect();
        Self::new(name, size, operations)
    }

    /// Builds an operation table by evaluating `f` on every argument tuple.
    pub fn operation_from_fn(
        name: &str,
        size: usize,
        arity: usize,
        f: impl Fn(&[usize]) -> usize,
    ) -> Operation {
        let len = size.pow(arity as u32);
        let table = (0..len).map(|code| f(&decode(code, size, arity))).collect();
        Operation {
            name: name.to_string(),
            arity,
            table,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn operations(&self) -> &[Operation] {
        &self.operations
    }

    pub fn operation(&self, name: &str) -> Option<&Operation> {
        self.operations.iter().find(|op| op.name == name)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Adds an operation (validated against this algebra's size).
    pub fn with_operation(self, op: Operation) -> Result<Self> {
        let mut ops = self.operations;
        ops.push(op);
        Self::new(self.name, self.size, ops)
    }

    pub fn has_constants(&self) -> bool {
        self.operations.iter().any(|op| op.arity == 0)
    }

    pub(crate) fn check_element(&self, e: usize) -> Result<()> {
        if e >= self.size {
            Err(Error::OutOfRange {
                element: e,
                size: self.size,
            })
        } else {
            Ok(())
        }
    }

    /// True iff `set` is closed under every operation.
    pub fn is_closed(&self, set: &[usize]) -> bool {
        let member: Vec<bool> = {
            let mut m = vec![false; self.size];
            for &x in set {
                if x < self.size {
                    m[x] = true;
                }
            }
            m
        };
        if set.iter().any(|&x| x >= self.size) {
            return false;
        }
        if set.is_empty() {
            return !self.has_constants();
        }
        for op in &self.operations {
            if op.arity == 0 {
                if !member[op.table[0]] {
                    return false;
                }
                continue;
            }
            let mut args = vec![0usize; op.arity];
            loop {
                let tuple: Vec<usize> = args.iter().map(|&i| set[i]).collect();
                if !member[op.eval(self.size, &tuple)] {
                    return false;
                }
                if !odometer(&mut args, set.len()) {
                    break;
                }
            }
        }
        true
    }
}

/// `A^k` together with its diagonal.
#[derive(Debug, Clone)]
pub struct Power {
    pub algebra: FiniteAlgebra,
    pub factor_size: usize,
    pub exponent: usize,
    /// Encodings of the constant tuples, ascending.
    pub diagonal: Vec<usize>,
}

impl Power {
    pub fn encode(&self, tuple: &[usize]) -> usize {
        encode(tuple, self.factor_size)
    }

    pub fn decode(&self, code: usize) -> Vec<usize> {
        decode(code, self.factor_size, self.exponent)
    }
}

pub fn power(a: &FiniteAlgebra, k: usize, limits: &Limits) -> Result<Power> {
    if k == 0 {
        return Err(Error::Config("power exponent must be positive".into()));
    }
    let n = a.size;
    let size = checked_pow(n, k).ok_or(Error::CapExceeded {
        resource: Resource::PowerSize,
        limit: limits.max_power,
    })?;
    limits.check(Resource::PowerSize, size)?;
    let mut operations = Vec::with_capacity(a.operations.len());
    for op in &a.operations {
        let len = checked_pow(size, op.arity)
            .filter(|&l| l <= limits.max_power.saturating_mul(limits.max_power))
            .ok_or(Error::CapExceeded {
                resource: Resource::PowerSize,
                limit: limits.max_power,
            })?;
        let mut table = Vec::with_capacity(len);
        let mut coords = vec![0usize; k];
        for code in 0..len {
            let args = decode(code, size, op.arity);
            let tuples: Vec<Vec<usize>> = args.iter().map(|&x| decode(x, n, k)).collect();
            for (j, c) in coords.iter_mut().enumerate() {
                let col: Vec<usize> = tuples.iter().map(|t| t[j]).collect();
                *c = op.eval(n, &col);
            }
            table.push(encode(&coords, n));
        }
        operations.push(Operation {
            name: op.name.clone(),
            arity: op.arity,
            table,
        });
    }
    let diagonal = (0..n).map(|x| encode(&vec![x; k], n)).collect();
    Ok(Power {
        algebra: FiniteAlgebra {
            name: format!("{}^{}", a.name, k),
            size,
            operations,
        },
        factor_size: n,
        exponent: k,
        diagonal,
    })
}

/// A subuniverse of a parent algebra with its induced algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubAlgebra {
    pub parent: FiniteAlgebra,
    /// Strictly ascending parent elements; also the embedding of the
    /// induced algebra (element `i` maps to `universe[i]`).
    pub universe: Vec<usize>,
    pub induced: FiniteAlgebra,
}

impl SubAlgebra {
    /// Index of a parent element inside the induced algebra.
    pub fn local(&self, parent_elem: usize) -> Option<usize> {
        self.universe.binary_search(&parent_elem).ok()
    }

    pub fn embed(&self, local: usize) -> usize {
        self.universe[local]
    }

    /// Builds the induced algebra on a universe already known to be closed.
    pub fn from_universe(parent: &FiniteAlgebra, mut universe: Vec<usize>) -> Result<SubAlgebra> {
        universe.sort_unstable();
        universe.dedup();
        for &x in &universe {
            parent.check_element(x)?;
        }
        if universe.is_empty() || !parent.is_closed(&universe) {
            return Err(Error::InvalidWitness(
                "universe is empty or not closed under the parent operations".into(),
            ));
        }
        let m = universe.len();
        let pos = |x: usize| universe.binary_search(&x).expect("closed universe");
        let operations = parent
            .operations
            .iter()
            .map(|op| {
                let len = m.pow(op.arity as u32);
                let table = (0..len)
                    .map(|code| {
                        let args: Vec<usize> =
                            decode(code, m, op.arity).into_iter().map(|i| universe[i]).collect();
                        pos(op.eval(parent.size, &args))
                    })
                    .collect();
                Operation {
                    name: op.name.clone(),
                    arity: op.arity,
                    table,
                }
            })
            .collect();
        let induced = FiniteAlgebra {
            name: format!("Sg({})", parent.name),
            size: m,
            operations,
        };
        Ok(SubAlgebra {
            parent: parent.clone(),
            universe,
            induced,
        })
    }
}

/// Least subuniverse of `p` containing `gens`.
pub fn subalgebra_generated(p: &FiniteAlgebra, gens: &[usize]) -> Result<SubAlgebra> {
    for &g in gens {
        p.check_element(g)?;
    }
    if gens.is_empty() && !p.has_constants() {
        return Err(Error::EmptyGenerators);
    }
    let closure = close_vectors(p, 1, gens.iter().map(|&g| vec![g]), usize::MAX);
    let universe: Vec<usize> = closure.elems.into_iter().map(|v| v[0]).collect();
    SubAlgebra::from_universe(p, universe)
}

/// `A/θ` with blocks numbered by ascending least element.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub algebra: FiniteAlgebra,
    /// Block index of every element of `A`.
    pub block_map: Vec<usize>,
    /// Least element of each block.
    pub representatives: Vec<usize>,
}

pub fn quotient_algebra(a: &FiniteAlgebra, theta: &Partition) -> Result<Quotient> {
    if theta.size() != a.size {
        return Err(Error::SizeMismatch {
            expected: a.size,
            got: theta.size(),
        });
    }
    if !crate::congruence::is_congruence(a, theta)? {
        return Err(Error::NotCongruence(a.name.clone()));
    }
    let representatives: Vec<usize> = (0..a.size).filter(|&x| theta.block_id(x) == x).collect();
    let mut block_map = vec![0; a.size];
    for x in 0..a.size {
        block_map[x] = representatives
            .binary_search(&theta.block_id(x))
            .expect("block ids are representatives");
    }
    let m = representatives.len();
    let operations = a
        .operations
        .iter()
        .map(|op| {
            let len = m.pow(op.arity as u32);
            let table = (0..len)
                .map(|code| {
                    let args: Vec<usize> = decode(code, m, op.arity)
                        .into_iter()
                        .map(|b| representatives[b])
                        .collect();
                    block_map[op.eval(a.size, &args)]
                })
                .collect();
            Operation {
                name: op.name.clone(),
                arity: op.arity,
                table,
            }
        })
        .collect();
    Ok(Quotient {
        algebra: FiniteAlgebra {
            name: format!("{}/{}", a.name, theta),
            size: m,
            operations,
        },
        block_map,
        representatives,
    })
}

pub fn encode(tuple: &[usize], n: usize) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * n + x)
}

pub fn decode(mut code: usize, n: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for slot in out.iter_mut().rev() {
        *slot = code % n.max(1);
        code /= n.max(1);
    }
    out
}

pub(crate) fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Advances a base-`radix` counter in place (last position fastest).
pub(crate) fn odometer(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}
