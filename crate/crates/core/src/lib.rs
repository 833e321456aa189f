//! Exact cover complexity of small matroids.

pub mod bounds;
pub mod brackets;
pub mod catalog;
pub mod cli;
pub mod cover;
pub mod families;
pub mod io;
pub mod isomorphism;
pub mod johnson;
pub mod lp;
pub mod matroid;
pub mod minors;
pub mod setcover;
pub mod subset;
pub mod verify;

pub use catalog::{catalog, CatalogName};
pub use isomorphism::is_isomorphic;
pub use matroid::{Flat, GroundMap, Matroid, MatroidError, Minor, Simplification};
pub use minors::{has_minor, line_deletion_witness, MinorWitness};
pub use subset::Subset;
