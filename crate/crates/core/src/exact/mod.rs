//! Exact linear algebra over Q(i): matrices, canonical subspaces, maps,
//! quotients, fiber products, pushouts and filtered spaces.
//!
//! Subspaces are always stored in reduced row echelon form, so two spans are
//! equal exactly when their stored values are equal. Quotient complements are
//! chosen by the pivot-column rule.

mod map;
mod matrix;
mod scalar;
mod subspace;

pub use map::{
    factor_through, fiber_product, induced_map, pushout, quotient, FiberProduct, LinearMap, Pushout, Quotient,
};
pub use matrix::Matrix;
pub use scalar::Scalar;
pub use subspace::{FilteredSpace, Subspace};

/// Entrywise complex conjugation.
pub fn conjugate(m: &Matrix) -> Matrix {
    m.conjugate()
}

/// Transpose of `f`; an involution that reverses composition.
pub fn dual_map(f: &LinearMap) -> LinearMap {
    f.dual()
}

/// `{x : f(x) = 0}` in canonical form.
pub fn kernel(f: &LinearMap) -> Subspace {
    f.kernel()
}
