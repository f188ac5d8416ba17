//! Exact computations with level-one Hodge structures and linearized
//! Laumon 1-motives over Q(i).

pub mod cohomology;
pub mod duality;
pub mod error;
pub mod exact;
pub mod formal_hodge;
pub mod groups;
pub mod hodge;
pub mod json;
pub mod motives;
pub mod sharp;

pub use error::{Error, Result};
pub use exact::{FilteredSpace, LinearMap, Matrix, Scalar, Subspace};
pub use groups::{FgAbGroup, GroupHom, ZMatrix};
