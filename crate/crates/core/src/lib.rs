pub mod error;
pub mod group;
pub mod lattice;
pub mod perm;
pub mod primes;
pub mod quotients;
pub mod report;
pub mod sigma;
pub mod classes;
pub mod corpus;
pub mod embed;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};
pub use group::{Elem, Group, Quotient, Subgroup};
pub use lattice::{ChiefSeries, SubId, SubgroupLattice};
pub use perm::Permutation;
