//! Finite algebras, congruence lattices, polynomial clones and the
//! tame-congruence type labeling of prime quotients, with executable
//! checkers for the pentagon/tail correspondence.

pub mod algebra;
pub mod checks;
mod closure;
pub mod congruence;
pub mod corpus;
pub mod dot;
pub mod error;
pub mod io;
pub mod lattice;
pub mod limits;
pub mod partition;
pub mod polynomial;
pub mod report;
pub mod subuniverse;
pub mod sweep;
pub mod tct;

pub use algebra::{FiniteAlgebra, Operation};
pub use congruence::{con_lattice, CongruenceLattice};
pub use error::{Error, Result};
pub use lattice::{FiniteLattice, Lattice, PentagonWitness};
pub use limits::Limits;
pub use partition::Partition;
pub use tct::{label_lattice, LabeledLattice, TypeLabel};
