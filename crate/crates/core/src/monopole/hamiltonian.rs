use std::sync::OnceLock;

use num_rational::BigRational;
use serde::Serialize;

use super::eigen::EigenOperator;
use crate::error::{Error, Result};
use crate::exterior::{codifferential, d, Blade, DifferentialForm};
use crate::frames::{r4_monopole, right_invariant_field};
use crate::polyring::{Derivation, Monomial, Polynomial, Var, VariableSet};
use crate::scalar::{Coeff, HalfInt};

/// `L_a` extended to functions of `r` and `s`, acting trivially on `r`.
fn extended_l() -> &'static [Derivation; 3] {
    static CELL: OnceLock<[Derivation; 3]> = OnceLock::new();
    CELL.get_or_init(|| {
        [1, 2, 3].map(|a| {
            let l = right_invariant_field(a);
            let mut images: Vec<(Var, Polynomial)> = VariableSet::SU2
                .vars()
                .map(|v| {
                    (
                        v,
                        l.image(v)
                            .expect("SU(2) image")
                            .embed(VariableSet::MONOPOLE)
                            .expect("subset"),
                    )
                })
                .collect();
            images.push((Var::R, Polynomial::zero(VariableSet::MONOPOLE)));
            Derivation::new(l.label(), images)
        })
    })
}

fn casimir(psi: &Polynomial) -> Result<Polynomial> {
    let mut acc = Polynomial::zero(psi.vars());
    for l in extended_l() {
        acc = acc.try_add(&l.apply(&l.apply(psi)?)?)?;
    }
    Ok(acc.normal_form())
}

fn r_power(e: i32) -> Polynomial {
    Polynomial::monomial(VariableSet::MONOPOLE, Monomial::one().with(Var::R, e), 1)
        .expect("r is Laurent")
}

/// `div grad ψ` on ℝ⁴₀ compared with the reduced radial form
/// `∂²_r ψ + (2/r)∂_r ψ + (L² + n²)ψ/r² − (n²/k) ψ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReducedHamiltonianReport {
    pub k: String,
    pub n: HalfInt,
    pub laplacian: Polynomial,
    pub expected: Polynomial,
    pub residual: f64,
    pub exact: bool,
}

/// `div grad = −δd` on functions of ℝ⁴₀ with parameter `k`.
pub fn monopole_laplacian(psi: &Polynomial, k: &BigRational) -> Result<Polynomial> {
    let m = r4_monopole(k)?;
    let f = DifferentialForm::scalar(&m, &psi.embed(VariableSet::MONOPOLE)?)?;
    Ok((-codifferential(&d(&f)?)?.component(Blade::SCALAR)).normal_form())
}

fn check_equivariant(psi: &Polynomial, k: &BigRational, n: HalfInt) -> Result<()> {
    let m = r4_monopole(k)?;
    let x3 = m.derivative(3, psi)?.normal_form();
    let target = psi
        .scale(&EigenOperator::X3.eigenvalue(HalfInt::ZERO, n, HalfInt::ZERO))
        .normal_form();
    if x3 != target {
        return Err(Error::NotEquivariant(n.to_string()));
    }
    Ok(())
}

pub fn reduced_hamiltonian_apply(
    psi: &Polynomial,
    k: &BigRational,
    n: HalfInt,
) -> Result<ReducedHamiltonianReport> {
    let psi = psi.embed(VariableSet::MONOPOLE)?.normal_form();
    check_equivariant(&psi, k, n)?;
    let laplacian = monopole_laplacian(&psi, k)?;
    let n2 = &n.to_coeff() * &n.to_coeff();
    let dr = psi.partial(Var::R);
    let angular = casimir(&psi)?.try_add(&psi.scale(&n2))?;
    let shift = Coeff::rational(k.recip());
    let expected = dr
        .partial(Var::R)
        .try_add(&r_power(-1).try_mul(&dr)?.scale(&Coeff::int(2)))?
        .try_add(&r_power(-2).try_mul(&angular)?)?
        .try_sub(&psi.scale(&(&n2 * &shift)))?
        .normal_form();
    let diff = laplacian.try_sub(&expected)?.normal_form();
    Ok(ReducedHamiltonianReport {
        k: k.to_string(),
        n,
        exact: diff.is_zero() && diff.is_exact(),
        residual: diff.max_abs_coeff(),
        laplacian,
        expected,
    })
}

/// Coefficients of `div grad (f(r) ψ) = [a f'' + b f'/r + c f/r² + e f] ψ`
/// for an angular eigenfunction `ψ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReducedCoefficients {
    pub second_order: Coeff,
    pub first_order: Coeff,
    pub angular: Coeff,
    pub constant: Coeff,
}

impl ReducedCoefficients {
    /// Shift of the spectrum of `−div grad` relative to `k → ∞`.
    pub fn spectrum_shift(&self) -> Coeff {
        -self.constant.clone()
    }
}

/// The part of `p` with `r`-exponent `e`, as a polynomial on SU(2).
fn r_slice(p: &Polynomial, e: i32) -> Result<Polynomial> {
    Polynomial::from_terms(
        VariableSet::SU2,
        p.terms()
            .filter(|(m, _)| m.exp(Var::R) == e)
            .map(|(m, c)| (m.with(Var::R, 0), c.clone())),
    )
    .map(|q| q.normal_form())
}

fn ratio(p: &Polynomial, psi: &Polynomial) -> Result<Coeff> {
    if p.is_zero() {
        return Ok(Coeff::zero());
    }
    p.ratio_to(psi)
        .ok_or_else(|| Error::InvalidParameter("input is not an angular eigenfunction".into()))
}

/// Reads off the reduced operator by applying `div grad` to `r^p ψ`,
/// `p = 0, 1, 2`.
pub fn reduced_coefficients(
    psi: &Polynomial,
    k: &BigRational,
    n: HalfInt,
) -> Result<ReducedCoefficients> {
    if let Some(v) = psi.support().vars().find(|v| !v.is_su2()) {
        return Err(Error::NotSu2(v));
    }
    let psi = psi.embed(VariableSet::SU2)?.normal_form();
    if psi.is_zero() {
        return Err(Error::InvalidParameter("zero function".into()));
    }
    let lifted = psi.embed(VariableSet::MONOPOLE)?;
    check_equivariant(&lifted, k, n)?;
    let mut lower = Vec::new();
    let mut constant = Coeff::zero();
    for p in 0..3 {
        let lap = monopole_laplacian(&lifted.try_mul(&r_power(p))?, k)?;
        lower.push(ratio(&r_slice(&lap, p - 2)?, &psi)?);
        let top = ratio(&r_slice(&lap, p)?, &psi)?;
        if p == 0 {
            constant = top;
        } else if top != constant {
            return Err(Error::InvalidParameter(
                "constant term depends on the radial power".into(),
            ));
        }
    }
    let angular = lower[0].clone();
    let first_order = &lower[1] - &angular;
    let second_order =
        &(&(&lower[2] - &angular) - &(&first_order * &Coeff::int(2))) * &Coeff::ratio(1, 2);
    Ok(ReducedCoefficients {
        second_order,
        first_order,
        angular,
        constant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monopole::wigner_basis;

    fn k(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn spin_half_reduction() {
        let basis = wigner_basis(HalfInt::HALF).unwrap();
        let e = &basis[0];
        let c = reduced_coefficients(&e.poly, &k(1), e.n).unwrap();
        assert_eq!(c.second_order, Coeff::one());
        assert_eq!(c.first_order, Coeff::int(2));
        assert_eq!(c.angular, Coeff::ratio(-1, 2));
        assert_eq!(c.constant, Coeff::ratio(-1, 4));
        let r = reduced_hamiltonian_apply(
            &e.poly
                .embed(VariableSet::MONOPOLE)
                .unwrap()
                .try_mul(&r_power(3))
                .unwrap(),
            &k(4),
            e.n,
        )
        .unwrap();
        assert!(r.exact);
    }

    #[test]
    fn constants_are_harmonic() {
        let one = Polynomial::one(VariableSet::MONOPOLE);
        let r = reduced_hamiltonian_apply(&one, &k(1), HalfInt::ZERO).unwrap();
        assert!(r.laplacian.is_zero());
        assert!(r.exact);
    }

    #[test]
    fn rejects_wrong_charge() {
        let basis = wigner_basis(HalfInt::HALF).unwrap();
        let err = reduced_hamiltonian_apply(&basis[0].poly, &k(1), HalfInt::ZERO).unwrap_err();
        assert!(matches!(err, Error::NotEquivariant(_)));
    }
}
