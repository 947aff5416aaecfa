//! Subset-lattice machinery for b-colorings of hypercube and Hamming graph powers.
//!
//! Subsets of a ground set are `u64` positional masks ordered simplicially
//! (by size, then by which set owns the smallest element of the symmetric
//! difference). On top of that sit compressions, common `p`-neighborhoods,
//! exact bound formulas for `b(Q_n^p)` and `b(H_{n,q}^p)`, and b-coloring
//! validation with a small exact solver.

pub mod bcoloring;
pub mod binom;
pub mod bounds;
pub mod compression;
pub mod cube;
pub mod error;
pub mod neighborhoods;
pub mod notation;
pub mod subset;
pub mod sweep;

pub use error::{Error, Result};
pub use subset::{
    family_cmp, initial_segment, level_set, rank, simplicial_cmp, unrank, Family, GroundSet,
    SimplicialIter, SimplicialRank, SubsetMask,
};
pub use sweep::Mode;

/// Version stamped into every JSON document as `"schema"`.
pub const SCHEMA_VERSION: u32 = 1;
