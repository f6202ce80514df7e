//! Monopole harmonics, the reduced Hamiltonian on ℝ⁴₀, vector-valued
//! harmonics on SU(2) and the radial Bessel sector.

mod bessel;
mod cg;
mod eigen;
mod hamiltonian;
mod radial;
mod vector;
mod wigner;

pub use bessel::bessel_j;
pub use cg::{clebsch_gordan, coupled_multiplet, triangle, CoupledState};
pub use eigen::{eigen_check, eigen_check_form, EigenOperator, EigenReport};
pub use hamiltonian::{
    monopole_laplacian, reduced_coefficients, reduced_hamiltonian_apply, ReducedCoefficients,
    ReducedHamiltonianReport,
};
pub use radial::{radial_residual, Grid, RadialCase, RadialPoint, RadialReport};
pub use vector::{
    cg_combine, half_basis, horizontal_forms_check, j1_basis, theta_minus, theta_plus,
    HorizontalityReport, VectorHarmonic,
};
pub use wigner::{equivariant_subspace, spherical_harmonics, wigner_basis, WignerElement};
