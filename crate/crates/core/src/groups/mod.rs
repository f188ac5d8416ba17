//! Finitely generated abelian groups by integer presentations, Smith normal
//! form, homomorphisms with kernels and cokernels, and lattices in `Q(i)^n`.

mod group;
mod lattice;
mod snf;
mod zmatrix;

pub use group::{
    exactness, hom_kernel_cokernel, image_equals_kernel, in_row_span, left_kernel, solve_row_span, torsion_free,
    FgAbGroup, GroupHom, IsoType, KernelCokernel, TorsionFree,
};
pub(crate) use lattice::clear_denominators;
pub use lattice::{
    complex_span, is_q_independent, is_saturated_in, lattice_membership, rational_coords, rational_rank, realify,
    saturation, unrealify, zspan_basis,
};
pub use snf::{determinant, is_unimodular, smith_normal_form, smith_normal_form_with, PivotRule, Snf};
pub use zmatrix::ZMatrix;
