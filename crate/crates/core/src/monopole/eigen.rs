use std::sync::OnceLock;

use serde::Serialize;

use crate::error::Result;
use crate::exterior::{lie_derivative, DifferentialForm};
use crate::frames::{
    hopf_projection, left_invariant_field, right_invariant_field, right_invariant_frame_vector,
    su2_killing, FrameVector,
};
use crate::polyring::{Derivation, Polynomial};
use crate::scalar::{Coeff, HalfInt};

/// Operators whose eigenvalues label monopole harmonics.
///
/// Eigenvalues use the anti-Hermitian convention: `L_z → i m`, `X₃ → i n`,
/// `L² → −j(j+1)`, and `x̂·L → i n` (the constraint sign is `+1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum EigenOperator {
    Casimir,
    Lz,
    XhatL,
    X3,
}

struct Fields {
    l: [Derivation; 3],
    x3: Derivation,
    xhat: [Polynomial; 3],
    l_vec: [FrameVector; 3],
    x3_vec: FrameVector,
}

fn fields() -> &'static Fields {
    static CELL: OnceLock<Fields> = OnceLock::new();
    CELL.get_or_init(|| Fields {
        l: [1, 2, 3].map(right_invariant_field),
        x3: left_invariant_field(3),
        xhat: hopf_projection().map(|p| p.normal_form()),
        l_vec: [1, 2, 3].map(right_invariant_frame_vector),
        x3_vec: FrameVector::basis(&su2_killing(), 2),
    })
}

/// `L_a` as a derivation on SU(2) polynomials, `a ∈ {1, 2, 3}`.
pub(crate) fn l_field(a: usize) -> &'static Derivation {
    &fields().l[a - 1]
}

impl EigenOperator {
    pub const ALL: [EigenOperator; 4] = [
        EigenOperator::Casimir,
        EigenOperator::Lz,
        EigenOperator::XhatL,
        EigenOperator::X3,
    ];

    pub fn label(self) -> &'static str {
        match self {
            EigenOperator::Casimir => "L2",
            EigenOperator::Lz => "Lz",
            EigenOperator::XhatL => "xhat.L",
            EigenOperator::X3 => "X3",
        }
    }

    /// The eigenvalue attached to the labels `(j, n, m)`.
    pub fn eigenvalue(self, j: HalfInt, n: HalfInt, m: HalfInt) -> Coeff {
        match self {
            EigenOperator::Casimir => -(&j.to_coeff() * &(&j.to_coeff() + &Coeff::one())),
            EigenOperator::Lz => &Coeff::i() * &m.to_coeff(),
            EigenOperator::XhatL | EigenOperator::X3 => &Coeff::i() * &n.to_coeff(),
        }
    }

    pub fn apply(self, psi: &Polynomial) -> Result<Polynomial> {
        let f = fields();
        let out = match self {
            EigenOperator::Casimir => {
                let mut acc = Polynomial::zero(psi.vars());
                for l in &f.l {
                    acc = acc.try_add(&l.apply(&l.apply(psi)?)?)?;
                }
                acc
            }
            EigenOperator::Lz => f.l[2].apply(psi)?,
            EigenOperator::XhatL => {
                let mut acc = Polynomial::zero(psi.vars());
                for (x, l) in f.xhat.iter().zip(&f.l) {
                    acc = acc.try_add(&x.embed(psi.vars())?.try_mul(&l.apply(psi)?)?)?;
                }
                acc
            }
            EigenOperator::X3 => f.x3.apply(psi)?,
        };
        Ok(out.normal_form())
    }

    /// Action on forms over SU(2) through Lie derivatives.
    pub fn apply_form(self, alpha: &DifferentialForm) -> Result<DifferentialForm> {
        let f = fields();
        match self {
            EigenOperator::Casimir => {
                let mut acc = DifferentialForm::zero(alpha.manifold());
                for y in &f.l_vec {
                    acc = acc.try_add(&lie_derivative(y, &lie_derivative(y, alpha)?)?)?;
                }
                Ok(acc)
            }
            EigenOperator::Lz => lie_derivative(&f.l_vec[2], alpha),
            EigenOperator::XhatL => {
                let mut acc = DifferentialForm::zero(alpha.manifold());
                for (x, y) in f.xhat.iter().zip(&f.l_vec) {
                    acc = acc.try_add(&lie_derivative(y, alpha)?.mul_function(x)?)?;
                }
                Ok(acc)
            }
            EigenOperator::X3 => lie_derivative(&f.x3_vec, alpha),
        }
    }
}

/// Outcome of testing `(Op − λ)ψ = 0`.
///
/// `residual` is the largest coefficient of the normal-form residual;
/// `exact` means it vanishes identically in exact arithmetic.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenReport {
    pub operator: String,
    pub eigenvalue: Coeff,
    pub residual: f64,
    pub exact: bool,
}

impl EigenReport {
    fn from_residual(
        op: EigenOperator,
        eigenvalue: &Coeff,
        is_zero: bool,
        exact_arith: bool,
        residual: f64,
    ) -> Self {
        let exact = is_zero && exact_arith;
        EigenReport {
            operator: op.label().to_string(),
            eigenvalue: eigenvalue.clone(),
            residual: if exact { 0.0 } else { residual },
            exact,
        }
    }

    pub fn passed(&self, tol: f64) -> bool {
        self.exact || self.residual <= tol
    }
}

pub fn eigen_check(psi: &Polynomial, op: EigenOperator, eigenvalue: &Coeff) -> Result<EigenReport> {
    let r = op
        .apply(psi)?
        .try_sub(&psi.scale(eigenvalue).normal_form())?
        .normal_form();
    Ok(EigenReport::from_residual(
        op,
        eigenvalue,
        r.is_zero(),
        r.is_exact(),
        r.max_abs_coeff(),
    ))
}

pub fn eigen_check_form(
    alpha: &DifferentialForm,
    op: EigenOperator,
    eigenvalue: &Coeff,
) -> Result<EigenReport> {
    let r = op.apply_form(alpha)?.try_sub(&alpha.scale(eigenvalue))?;
    Ok(EigenReport::from_residual(
        op,
        eigenvalue,
        r.is_zero(),
        r.is_exact(),
        r.max_abs_coeff(),
    ))
}
