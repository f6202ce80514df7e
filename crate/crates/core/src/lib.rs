//! Exterior and Clifford calculus on parallelizable frames, with exact
//! polynomial coefficients.
//!
//! The crate covers:
//! - [`polyring`]: polynomials in `u, v, ū, v̄` (and `r`, `x`, ...) with
//!   normal forms modulo `uū + vv̄ = 1`, derivations and Haar integration;
//! - [`frames`]: Euclidean ℝ³, SU(2) with its Killing metric, and the
//!   monopole bundle ℝ⁴₀, plus principal symbols of second-order operators;
//! - [`exterior`]: forms, `d`, `δ`, Hodge star, Laplace–Beltrami and the
//!   Dirac–Kähler operator `d − δ`;
//! - [`clifford`]: the Kähler ∨-product, idempotents, left ideals and the
//!   reduction of `d − δ` to the Pauli operator on ℝ³;
//! - [`monopole`]: Wigner bases, monopole harmonics, vector harmonics built
//!   from one-forms, Clebsch–Gordan towers and the radial Bessel check.

pub mod clifford;
pub mod config;
pub mod error;
pub mod exterior;
pub mod frames;
pub mod linalg;
pub mod monopole;
pub mod polyring;
pub mod sample;
pub mod scalar;
pub mod verify;

pub use clifford::{CliffordContext, LeftIdeal, RepMatrix};
pub use config::Constants;
pub use error::{Error, Result};
pub use exterior::{Blade, DifferentialForm};
pub use frames::{FrameManifold, FrameVector, SecondOrderOperator};
pub use linalg::Matrix;
pub use monopole::{EigenOperator, EigenReport, RadialCase, WignerElement};
pub use polyring::{Derivation, Monomial, Point, Polynomial, Var, VariableSet};
pub use scalar::{Coeff, HalfInt, Surd};
