//! Polynomial clones of a finite algebra: unary polynomials, clones
//! restricted to a subset, and inverse iterates of permutations.
//!
//! Everything works over function tables, never over terms. A polynomial
//! restricted to a finite domain `D ⊆ A^k` is a vector in `A^|D|`, and the
//! set of all such restrictions is the subuniverse of `A^|D|` generated by
//! the projection vectors and the constant vectors.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{decode, FiniteAlgebra};
use crate::closure::{close_vectors, Closure, Origin};
use crate::error::{Error, Resource, Result};
use crate::limits::Limits;

/// A total map `{0..n-1} → {0..n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UnaryMap(Vec<usize>);

impl UnaryMap {
    pub fn new(table: Vec<usize>) -> Result<Self> {
        let n = table.len();
        if let Some(&bad) = table.iter().find(|&&v| v >= n) {
            return Err(Error::OutOfRange {
                element: bad,
                size: n,
            });
        }
        Ok(UnaryMap(table))
    }

    pub fn identity(n: usize) -> Self {
        UnaryMap((0..n).collect())
    }

    pub fn constant(n: usize, c: usize) -> Self {
        UnaryMap(vec![c; n])
    }

    pub fn table(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &UnaryMap) -> UnaryMap {
        UnaryMap(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn is_idempotent(&self) -> bool {
        self.0.iter().all(|&y| self.0[y] == y)
    }

    /// Sorted image.
    pub fn image(&self) -> Vec<usize> {
        let mut img = self.0.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    pub fn image_of(&self, set: &[usize]) -> Vec<usize> {
        let mut img: Vec<usize> = set.iter().map(|&x| self.0[x]).collect();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// True iff the map sends `set` onto itself (a bijection of `set`).
    pub fn permutes(&self, set: &[usize]) -> bool {
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        self.image_of(&sorted) == sorted
    }
}

/// A polynomial term, reconstructed from closure provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var(usize),
    Const(usize),
    Apply(String, Vec<Term>),
}

impl Term {
    pub fn eval(&self, a: &FiniteAlgebra, vars: &[usize]) -> usize {
        match self {
            Term::Var(i) => vars[*i],
            Term::Const(c) => *c,
            Term::Apply(name, args) => {
                let op = a.operation(name).expect("term over this algebra");
                let vals: Vec<usize> = args.iter().map(|t| t.eval(a, vars)).collect();
                op.eval(a.size(), &vals)
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::Const(c) => write!(f, "c{c}"),
            Term::Apply(name, args) => {
                write!(f, "{name}(")?;
                for (i, t) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{t}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// The unary polynomials of an algebra, sorted by table.
#[derive(Debug, Clone)]
pub struct UnaryPolynomials {
    maps: Vec<UnaryMap>,
    idempotent: Vec<bool>,
}

impl UnaryPolynomials {
    pub fn maps(&self) -> &[UnaryMap] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn idempotents(&self) -> impl Iterator<Item = &UnaryMap> {
        self.maps
            .iter()
            .zip(&self.idempotent)
            .filter(|(_, &i)| i)
            .map(|(m, _)| m)
    }

    pub fn contains(&self, m: &UnaryMap) -> bool {
        self.maps.binary_search(m).is_ok()
    }
}

/// Identity and constants closed under the basic operations.
pub fn unary_polynomials(a: &FiniteAlgebra, limits: &Limits) -> Result<UnaryPolynomials> {
    let closure = unary_closure(a, limits)?;
    let mut maps: Vec<UnaryMap> = closure.elems.into_iter().map(UnaryMap).collect();
    maps.sort_unstable();
    let idempotent = maps.iter().map(|m| m.is_idempotent()).collect();
    Ok(UnaryPolynomials { maps, idempotent })
}

/// Unary polynomials paired with a witness term each (debug aid; terms can
/// be large).
pub fn unary_polynomials_with_terms(
    a: &FiniteAlgebra,
    limits: &Limits,
) -> Result<Vec<(UnaryMap, Term)>> {
    let closure = unary_closure(a, limits)?;
    let n = a.size();
    let mut terms: Vec<Term> = Vec::with_capacity(closure.origin.len());
    for origin in &closure.origin {
        let t = match origin {
            Origin::Generator(0) => Term::Var(0),
            Origin::Generator(g) => Term::Const(g - 1),
            Origin::Apply(oi, args) => Term::Apply(
                a.operations()[*oi].name().to_string(),
                args.iter().map(|&j| terms[j].clone()).collect(),
            ),
        };
        terms.push(t);
    }
    debug_assert!(n == 0 || terms.len() == closure.elems.len());
    Ok(closure
        .elems
        .into_iter()
        .map(UnaryMap)
        .zip(terms)
        .collect())
}

fn unary_closure(a: &FiniteAlgebra, limits: &Limits) -> Result<Closure> {
    let n = a.size();
    limits.check(Resource::UnaryUniverse, n)?;
    let gens = std::iter::once((0..n).collect::<Vec<_>>()).chain((0..n).map(|c| vec![c; n]));
    let closure = close_vectors(a, n, gens, limits.max_unary_polys);
    if closure.cap_hit {
        return Err(Error::CapExceeded {
            resource: Resource::UnaryPolynomials,
            limit: limits.max_unary_polys,
        });
    }
    Ok(closure)
}

/// Restrictions of all polynomials of `A` to a finite list of argument
/// tuples (the domain). Function `f` has `f[i]` = value at `domain[i]`.
#[derive(Debug, Clone)]
pub struct DomainClone {
    pub domain: Vec<Vec<usize>>,
    pub functions: Vec<Vec<usize>>,
    pub cap_hit: bool,
}

pub fn polynomials_on_domain(a: &FiniteAlgebra, domain: Vec<Vec<usize>>, cap: usize) -> Result<DomainClone> {
    let n = a.size();
    let arity = domain.first().map_or(0, |t| t.len());
    for t in &domain {
        if t.len() != arity {
            return Err(Error::Config("domain tuples must share one arity".into()));
        }
        for &x in t {
            a.check_element(x)?;
        }
    }
    let width = domain.len();
    let projections = (0..arity).map(|j| domain.iter().map(|t| t[j]).collect::<Vec<_>>());
    let constants = (0..n).map(|c| vec![c; width]);
    let closure = close_vectors(a, width, projections.chain(constants), cap);
    Ok(DomainClone {
        domain,
        functions: closure.elems.into_iter().collect(),
        cap_hit: closure.cap_hit,
    })
}

/// Polynomials of `A` restricted to `N^k`, as functions `N^k → A`.
#[derive(Debug, Clone)]
pub struct RestrictedClone {
    pub base: Vec<usize>,
    pub arity: usize,
    /// Tables over `N^k` in lexicographic order of positions in `base`.
    pub functions: Vec<Vec<usize>>,
    pub closed: bool,
    pub cap_hit: bool,
}

impl RestrictedClone {
    /// Functions with image inside `N`: the operations of the induced
    /// algebra on `N`, still valued in `A`'s elements.
    pub fn induced(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.functions
            .iter()
            .filter(|f| f.iter().all(|v| self.base.binary_search(v).is_ok()))
    }

    /// Induced operations re-indexed to positions in `N`.
    pub fn induced_local(&self) -> Vec<Vec<usize>> {
        self.induced()
            .map(|f| {
                f.iter()
                    .map(|v| self.base.binary_search(v).expect("filtered"))
                    .collect()
            })
            .collect()
    }
}

pub fn induced_clone(a: &FiniteAlgebra, base: &[usize], arity: usize, cap: usize) -> Result<RestrictedClone> {
    let mut base = base.to_vec();
    base.sort_unstable();
    base.dedup();
    if base.is_empty() {
        return Err(Error::Config("induced clone needs a nonempty base set".into()));
    }
    let m = base.len();
    let points = m.pow(arity as u32);
    let domain: Vec<Vec<usize>> = (0..points)
        .map(|code| decode(code, m, arity).into_iter().map(|i| base[i]).collect())
        .collect();
    let dc = polynomials_on_domain(a, domain, cap)?;
    Ok(RestrictedClone {
        base,
        arity,
        functions: dc.functions,
        closed: !dc.cap_hit,
        cap_hit: dc.cap_hit,
    })
}

/// The inverse of `u` on `set`, as an iterate of `u`: `u^(m-1)` where `m`
/// is the order of `u|set`. Outside `set` the result is whatever that
/// iterate does.
pub fn inverse_power(u: &UnaryMap, set: &[usize]) -> Result<UnaryMap> {
    let n = u.table().len();
    for &x in set {
        if x >= n {
            return Err(Error::OutOfRange { element: x, size: n });
        }
    }
    if !u.permutes(set) {
        return Err(Error::NotBijection);
    }
    let mut order = 1usize;
    let mut iter = u.clone();
    while !set.iter().all(|&x| iter.apply(x) == x) {
        iter = u.compose(&iter);
        order += 1;
    }
    let mut out = UnaryMap::identity(n);
    for _ in 0..order - 1 {
        out = u.compose(&out);
    }
    Ok(out)
}
