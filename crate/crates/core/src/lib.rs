//! Exact lattice-polytope computations for nef-partitions of reflexive
//! polytopes and the Hodge numbers of the associated Calabi-Yau complete
//! intersections.

pub mod corpus;
pub mod error;
pub mod exactmath;
pub mod hodge;
pub mod nefpart;
pub mod polytope;
pub mod verify;

pub use error::{Error, Result};
pub use exactmath::{Int, IntMatrix, Rational};
pub use nefpart::{validate, NefPartition};
pub use polytope::{Face, HalfSpace, LatticePolytope};
