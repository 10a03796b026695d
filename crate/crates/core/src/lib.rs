//! Exact mod-2 characteristic class computations for dihedral groups.
//!
//! The crate computes total, low-degree and top Stiefel-Whitney classes of
//! orthogonal representations of `D_m`, decides liftability to the double
//! covers of the orthogonal group, verifies cohomological detection by
//! Klein-four subgroups, and decides spinoriality of external tensor
//! products. All ring arithmetic is exact over F2; the only numerics live
//! in the character-theoretic decomposition oracle.

pub mod detection;
pub mod dihedral;
mod error;
pub mod lifting;
pub mod products;
pub mod ring_f2;
pub mod sweeps;
pub mod swc;

pub use error::{Error, Result};
