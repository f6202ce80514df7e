//! The Kähler ∨-product on forms, idempotents and algebraic spinors.

mod ideal;
mod reduction;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{Blade, DifferentialForm};
use crate::frames::{euclidean_r3, FrameManifold};
use crate::polyring::Polynomial;
use crate::scalar::Coeff;

pub use ideal::{LeftIdeal, RepMatrix};
pub use reduction::{
    commutant_dimension, complex_reduction, complexified_idempotent, covariant_constancy,
    dirac_matrix, pauli, pauli_equivalence, ComplexReduction, ComplexifiedSector, OperatorMatrix,
    SecondOrderMatrix,
};

/// A manifold together with its (diagonal) inverse metric.
#[derive(Clone, Debug)]
pub struct CliffordContext {
    manifold: Arc<FrameManifold>,
    metric_products: Vec<Polynomial>,
}

/// Outcome of `P ∨ P − P`.
#[derive(Clone, Debug, Serialize)]
pub struct IdempotentReport {
    pub idempotent: bool,
    pub residual: f64,
}

/// Parameters `(ξ, ρ)` of the real projector family, `4ρ² = 4ξ² + 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpinorParams {
    pub xi: Coeff,
    pub rho: Coeff,
}

impl CliffordContext {
    pub fn new(manifold: &Arc<FrameManifold>) -> Self {
        let n = manifold.dim();
        // g^{a_1 a_1} ⋯ g^{a_s a_s} for every index subset
        let metric_products = (0..1usize << n)
            .map(|mask| {
                Blade(mask as u16)
                    .indices()
                    .iter()
                    .fold(manifold.constant(1), |acc, &i| {
                        &acc * manifold.inverse_metric(i)
                    })
            })
            .collect();
        CliffordContext {
            manifold: manifold.clone(),
            metric_products,
        }
    }

    /// Euclidean ℝ³.
    pub fn euclidean() -> Self {
        CliffordContext::new(&euclidean_r3())
    }

    pub fn manifold(&self) -> &Arc<FrameManifold> {
        &self.manifold
    }

    pub fn inverse_metric(&self, a: usize) -> &Polynomial {
        self.manifold.inverse_metric(a)
    }

    /// The generator `θ^a` (`dx^a` on a flat space).
    pub fn generator(&self, a: usize) -> DifferentialForm {
        DifferentialForm::theta(&self.manifold, a)
    }

    /// `φ ∨ ψ = Σ_s (-1)^{s(s-1)/2}/s! g^{a_1 b_1}⋯g^{a_s b_s} (γ^s i_{a_1}⋯i_{a_s} φ) ∧ (i_{b_1}⋯i_{b_s} ψ)`.
    ///
    /// The metric is diagonal, so the inner sums run over ordered tuples of
    /// distinct indices with `b_k = a_k`.
    pub fn vee(&self, phi: &DifferentialForm, psi: &DifferentialForm) -> Result<DifferentialForm> {
        self.manifold.check_same(phi.manifold())?;
        phi.check_same(psi)?;
        let n = self.manifold.dim();
        let tuples: Vec<Vec<Vec<usize>>> = (0..=n).map(|s| ordered_tuples(n, s)).collect();
        let mut out = DifferentialForm::zero(&self.manifold);
        for (a, p) in phi.components() {
            for (b, q) in psi.components() {
                let common = a.0 & b.0;
                let mut terms: BTreeMap<u16, (Blade, BigRational)> = BTreeMap::new();
                for (s, level) in tuples.iter().enumerate().take(Blade(common).grade() + 1) {
                    let weight = BigRational::new(
                        BigInt::from(if (s * s.saturating_sub(1) / 2) % 2 == 0 {
                            1
                        } else {
                            -1
                        }),
                        factorial(s),
                    );
                    for t in level {
                        let mask = t.iter().fold(0u16, |m, &i| m | (1 << i));
                        if mask & common != mask {
                            continue;
                        }
                        let Some((sa, ra)) = contract_seq(*a, t) else {
                            continue;
                        };
                        let Some((sb, rb)) = contract_seq(*b, t) else {
                            continue;
                        };
                        let Some((sw, target)) = ra.wedge(rb) else {
                            continue;
                        };
                        let gamma = if (s * ra.grade()) % 2 == 0 { 1 } else { -1 };
                        let sign = sa * sb * sw * gamma;
                        let entry = terms.entry(mask).or_insert((target, BigRational::zero()));
                        entry.1 += &weight * BigRational::from_integer(sign.into());
                    }
                }
                for (mask, (target, w)) in terms {
                    if w.is_zero() {
                        continue;
                    }
                    let coef = p
                        .try_mul(q)?
                        .try_mul(&self.metric_products[mask as usize])?;
                    out = out.try_add(&DifferentialForm::from_components(
                        &self.manifold,
                        [(target, coef.scale(&Coeff::rational(w)))],
                    )?)?;
                }
            }
        }
        Ok(out)
    }

    /// Left ∨-product of a list of forms, `φ_1 ∨ φ_2 ∨ ⋯`.
    pub fn vee_all(&self, forms: &[DifferentialForm]) -> Result<DifferentialForm> {
        let mut acc = DifferentialForm::one(&self.manifold);
        for f in forms {
            acc = self.vee(&acc, f)?;
        }
        Ok(acc)
    }

    /// `𝒟ψ = Σ_a θ^a ∨ E_a(ψ)` with the frame derivatives acting on coefficients.
    pub fn dirac(&self, psi: &DifferentialForm) -> Result<DifferentialForm> {
        let mut out = DifferentialForm::zero(&self.manifold);
        for a in 0..self.manifold.dim() {
            let da = psi.map_coefficients(|p| self.manifold.derivative(a, p))?;
            out = out.try_add(&self.vee(&self.generator(a), &da)?)?;
        }
        Ok(out)
    }

    pub fn is_idempotent(&self, p: &DifferentialForm) -> Result<IdempotentReport> {
        let diff = self.vee(p, p)?.try_sub(p)?;
        Ok(IdempotentReport {
            idempotent: diff.is_zero(),
            residual: diff.max_abs_coeff(),
        })
    }
}

fn factorial(s: usize) -> BigInt {
    (1..=s).fold(BigInt::one(), |acc, k| acc * k)
}

fn ordered_tuples(n: usize, s: usize) -> Vec<Vec<usize>> {
    if s == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for t in ordered_tuples(n, s - 1) {
        for i in 0..n {
            if !t.contains(&i) {
                let mut next = t.clone();
                next.push(i);
                out.push(next);
            }
        }
    }
    out
}

/// `i_{a_1} ⋯ i_{a_s}` on a blade (the rightmost contraction acts first).
fn contract_seq(b: Blade, seq: &[usize]) -> Option<(i64, Blade)> {
    let mut sign = 1;
    let mut cur = b;
    for &a in seq.iter().rev() {
        let (s, rest) = cur.contract(a)?;
        sign *= s;
        cur = rest;
    }
    Some((sign, cur))
}

/// Spans `Λ ∨ P` by row reduction; see [`LeftIdeal::generate`].
pub fn ideal_basis(p: &DifferentialForm, ctx: &CliffordContext) -> Result<LeftIdeal> {
    LeftIdeal::generate(p, ctx)
}

/// A form on `m` from `(frame indices, coefficient)` pairs; indices may be
/// unordered.
pub fn constant_form(
    m: &Arc<FrameManifold>,
    terms: &[(&[usize], Coeff)],
) -> Result<DifferentialForm> {
    let mut out = DifferentialForm::zero(m);
    for (idx, c) in terms {
        out = out.try_add(&DifferentialForm::basis(m, idx)?.scale(c))?;
    }
    Ok(out)
}

impl SpinorParams {
    /// `ρ = +√(ξ² + 1/4)`.
    pub fn new(xi: &BigRational) -> Result<Self> {
        if xi.is_negative() {
            return Err(Error::InvalidParameter(format!(
                "xi must be non-negative, got {xi}"
            )));
        }
        let rho_sq = xi * xi + BigRational::new(1.into(), 4.into());
        let rho = Coeff::sqrt_rational(&rho_sq).expect("positive radicand");
        Ok(SpinorParams {
            xi: Coeff::rational(xi.clone()),
            rho,
        })
    }
}

/// `P(ξ) = 1/2 + ρ dx + ξ dx∧dy` on Euclidean ℝ³.
pub fn projector_family(xi: &BigRational) -> Result<(DifferentialForm, SpinorParams)> {
    let params = SpinorParams::new(xi)?;
    let m = euclidean_r3();
    let p = constant_form(
        &m,
        &[
            (&[], Coeff::ratio(1, 2)),
            (&[0], params.rho.clone()),
            (&[0, 1], params.xi.clone()),
        ],
    )?;
    Ok((p, params))
}

/// The four spinors spanning `Λ(ℝ³) ∨ P(ξ)` in their customary order.
pub fn spinor_basis(params: &SpinorParams) -> Result<Vec<DifferentialForm>> {
    let m = euclidean_r3();
    let two = Coeff::int(2);
    let (r2, x2) = (&two * &params.rho, &two * &params.xi);
    let one = Coeff::one();
    Ok(vec![
        constant_form(
            &m,
            &[
                (&[], one.clone()),
                (&[0], r2.clone()),
                (&[0, 1], x2.clone()),
            ],
        )?,
        constant_form(&m, &[(&[1], one.clone()), (&[0], -&x2), (&[0, 1], -&r2)])?,
        constant_form(
            &m,
            &[
                (&[1, 2], one.clone()),
                (&[2, 0], x2.clone()),
                (&[0, 1, 2], r2.clone()),
            ],
        )?,
        constant_form(&m, &[(&[2], one), (&[2, 0], r2), (&[0, 1, 2], x2)])?,
    ])
}

/// Coefficient vector of a constant form over `Blade::all(n)`.
pub(crate) fn constant_vector(form: &DifferentialForm) -> Result<Vec<crate::scalar::Surd>> {
    let blades = Blade::all(form.manifold().dim());
    let mut v = vec![crate::scalar::Surd::zero(); blades.len()];
    for (b, p) in form.components() {
        let c = p.as_constant().ok_or(Error::NonConstant)?;
        let s = c.as_surd().ok_or(Error::NonConstant)?;
        let i = blades.iter().position(|x| x == b).expect("blade in range");
        v[i] = s.clone();
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> CliffordContext {
        CliffordContext::euclidean()
    }

    #[test]
    fn generator_products() {
        let c = ctx();
        let m = c.manifold().clone();
        let (dx, dy) = (c.generator(0), c.generator(1));
        assert_eq!(c.vee(&dx, &dx).unwrap(), DifferentialForm::one(&m));
        assert_eq!(
            c.vee(&dx, &dy).unwrap(),
            DifferentialForm::basis(&m, &[0, 1]).unwrap()
        );
        let anti = &c.vee(&dx, &dy).unwrap() + &c.vee(&dy, &dx).unwrap();
        assert!(anti.is_zero());
    }

    #[test]
    fn bivector_squares_to_minus_one() {
        let c = ctx();
        let m = c.manifold().clone();
        let e12 = DifferentialForm::basis(&m, &[0, 1]).unwrap();
        assert_eq!(
            c.vee(&e12, &e12).unwrap(),
            DifferentialForm::constant(&m, -1)
        );
        let tau = DifferentialForm::volume(&m);
        assert_eq!(
            c.vee(&tau, &tau).unwrap(),
            DifferentialForm::constant(&m, -1)
        );
    }

    #[test]
    fn projector_family_is_idempotent() {
        let c = ctx();
        for xi in [0, 1, 2, 3] {
            let xi = BigRational::new(xi.into(), 2.into());
            let (p, params) = projector_family(&xi).unwrap();
            assert!(c.is_idempotent(&p).unwrap().idempotent, "xi = {xi}");
            let four_rho2 = &(&params.rho * &params.rho) * &Coeff::int(4);
            assert_eq!(
                four_rho2,
                &(&params.xi * &params.xi) * &Coeff::int(4) + Coeff::one()
            );
        }
        assert!(projector_family(&BigRational::new((-1).into(), 2.into())).is_err());
    }

    #[test]
    fn unit_and_generator() {
        let c = ctx();
        let m = c.manifold().clone();
        assert!(
            c.is_idempotent(&DifferentialForm::one(&m))
                .unwrap()
                .idempotent
        );
        assert!(!c.is_idempotent(&c.generator(0)).unwrap().idempotent);
    }
}
