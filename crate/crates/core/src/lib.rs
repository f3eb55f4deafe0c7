//! Computational finite group theory for mod-p first (co)homology and
//! p-length invariants of permutation groups.

pub mod catalog;
mod chain;
pub mod checks;
pub mod cohomology;
pub mod error;
pub mod filtration;
pub mod group;
pub mod lattice;
pub mod linalg;
pub mod perm;
pub mod prime;
pub mod report;
pub mod subgroup;
pub mod sylow;
pub mod textfmt;
pub mod verify;

pub use error::{GroupError, Result};
pub use group::{PermGroup, Quotient};
pub use perm::Permutation;
pub use prime::Prime;
