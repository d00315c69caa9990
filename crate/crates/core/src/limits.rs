use serde::{Deserialize, Serialize};

use crate::error::{Error, Resource, Result};

/// Resource caps shared by every computation. Exceeding one is always an
/// error or an explicit `cap_hit` flag, never a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest universe a power `A^k` may have.
    pub max_power: usize,
    /// Largest congruence lattice that will be built.
    pub max_congruences: usize,
    /// Largest function set a clone closure may reach before it is flagged.
    pub max_clone: usize,
    /// Largest universe for which unary polynomials are enumerated.
    pub max_unary_size: usize,
    /// Largest number of unary polynomials kept.
    pub max_unary_polys: usize,
    /// Highest polynomial arity examined by the bounded checkers.
    pub arity_max: usize,
    /// Largest number of subuniverses enumerated for one power.
    pub max_subuniverses: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_power: 4096,
            max_congruences: 20_000,
            max_clone: 65_536,
            max_unary_size: 16,
            max_unary_polys: 200_000,
            arity_max: 3,
            max_subuniverses: 5_000,
        }
    }
}

impl Limits {
    pub fn check(&self, resource: Resource, value: usize) -> Result<()> {
        let limit = match resource {
            Resource::PowerSize => self.max_power,
            Resource::Congruences => self.max_congruences,
            Resource::CloneFunctions => self.max_clone,
            Resource::UnaryUniverse => self.max_unary_size,
            Resource::UnaryPolynomials => self.max_unary_polys,
            Resource::BruteForceSize => crate::congruence::BRUTE_FORCE_MAX,
            Resource::Subuniverses => self.max_subuniverses,
        };
        if value > limit {
            Err(Error::CapExceeded { resource, limit })
        } else {
            Ok(())
        }
    }

    pub fn validate(&self) -> Result<()> {
        let caps = [
            self.max_power,
            self.max_congruences,
            self.max_clone,
            self.max_unary_size,
            self.max_unary_polys,
            self.arity_max,
            self.max_subuniverses,
        ];
        if caps.iter().any(|&c| c == 0) {
            return Err(Error::Config("all caps must be positive".into()));
        }
        Ok(())
    }
}
