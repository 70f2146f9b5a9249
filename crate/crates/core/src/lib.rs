//! Exact computation of cyclic factorization numbers and related subgroup
//! invariants of small finite groups.
//!
//! Groups are explicit Cayley tables ([`group::FiniteGroup`]) built by the
//! family constructors in [`families`]. [`lattice`] enumerates L(G) and its
//! Möbius function, [`counting`] computes CF₂, F₂, sd and csd both by direct
//! pair enumeration and through Möbius inversion, and [`formulas`] holds the
//! closed forms for each family. [`verify`] cross-checks all of them.

pub mod bitset;
pub mod counting;
pub mod error;
pub mod families;
pub mod formulas;
pub mod group;
pub mod lattice;
pub mod numtheory;
pub mod spec;
pub mod verify;

pub use error::{Error, Result};
pub use families::Gamma2Choice;
pub use group::{ElementId, FiniteGroup, GroupConfig, Subgroup};
pub use lattice::{SubgroupLattice, MobiusTable};
pub use spec::GroupSpec;
