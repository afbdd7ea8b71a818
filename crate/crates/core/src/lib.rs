//! Finite topological spaces: separation axioms, dimension functions,
//! the lattice of topologies, Bing–Hanner modifications and structural
//! numbers, plus a catalog of small spaces and a property-verification harness.

pub mod bingh;
pub mod catalog;
pub mod dimension;
pub mod error;
pub mod harness;
pub mod hitting;
pub mod lattice;
pub mod pointset;
pub mod space;
pub mod structural;

pub use dimension::DimValue;
pub use error::{Error, Result};
pub use pointset::PointSet;
pub use space::{FiniteSpace, SeparationProfile, SpaceSpec};
