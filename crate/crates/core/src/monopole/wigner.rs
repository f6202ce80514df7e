use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

use super::eigen::{eigen_check, l_field, EigenOperator};
use crate::error::{Error, Result};
use crate::frames::left_invariant_field;
use crate::polyring::{haar_integral, Point, Polynomial, Var, VariableSet};
use crate::scalar::{Coeff, HalfInt};

/// A Wigner function `D^j_{nm}` realized as a homogeneous polynomial of
/// degree `2j` in `u, v, ū, v̄`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WignerElement {
    pub j: HalfInt,
    pub n: HalfInt,
    pub m: HalfInt,
    pub poly: Polynomial,
    /// `∫ |D|² dν` for the Haar measure of mass one; equals `1/(2j+1)`.
    pub norm_sq: Coeff,
}

/// `√((j+m)(j−m+1))`, the lowering coefficient.
fn ladder(j: HalfInt, m: HalfInt) -> Result<Coeff> {
    let q = BigRational::new(
        ((j + m).twice() as i64 * (j - m + HalfInt::ONE).twice() as i64).into(),
        4.into(),
    );
    Coeff::sqrt_rational(&q).ok_or_else(|| {
        Error::InvalidParameter(format!("ladder coefficient out of range for j = {j}"))
    })
}

/// `K = i(X₁ + iX₂)`, lowers `n`.
fn lower_n(psi: &Polynomial) -> Result<Polynomial> {
    let x1 = left_invariant_field(1).apply(psi)?;
    let x2 = left_invariant_field(2).apply(psi)?;
    Ok(x1.scale(&Coeff::i()).try_sub(&x2)?.normal_form())
}

/// `J₋ = −iL₁ − L₂`, lowers `m`.
fn lower_m(psi: &Polynomial) -> Result<Polynomial> {
    let l1 = l_field(1).apply(psi)?;
    let l2 = l_field(2).apply(psi)?;
    Ok((-l1.scale(&Coeff::i())).try_sub(&l2)?.normal_form())
}

fn normalized_step(
    p: &Polynomial,
    j: HalfInt,
    label: HalfInt,
    step: fn(&Polynomial) -> Result<Polynomial>,
) -> Result<Polynomial> {
    let c = ladder(j, label)?;
    let inv = c.recip().ok_or(Error::SingularMatrix)?;
    Ok(step(p)?.scale(&inv))
}

fn element(j: HalfInt, n: HalfInt, m: HalfInt, poly: Polynomial) -> Result<WignerElement> {
    let norm_sq = haar_integral(&poly.conjugate().try_mul(&poly)?.normal_form())?;
    Ok(WignerElement {
        j,
        n,
        m,
        poly,
        norm_sq,
    })
}

/// All `(2j+1)²` elements, ordered by `n` then `m`, both descending.
///
/// The top element is `ū^{2j}` with labels `n = m = j`; the rest follow by
/// the normalized lowering operators in `n` (right action) and `m` (left
/// action).
pub fn wigner_basis(j: HalfInt) -> Result<Vec<WignerElement>> {
    if j.twice() < 0 {
        return Err(Error::InvalidParameter(format!(
            "j must be non-negative, got {j}"
        )));
    }
    let vars = VariableSet::SU2;
    let mut row_top = Polynomial::var(vars, Var::Ub)
        .pow(j.twice() as u32)
        .normal_form();
    let mut out = Vec::new();
    let ns: Vec<HalfInt> = j.descending_multiplet().collect();
    for (i, &n) in ns.iter().enumerate() {
        if i > 0 {
            row_top = normalized_step(&row_top, j, ns[i - 1], lower_n)?;
        }
        let mut cur = row_top.clone();
        let ms: Vec<HalfInt> = j.descending_multiplet().collect();
        for (k, &m) in ms.iter().enumerate() {
            if k > 0 {
                cur = normalized_step(&cur, j, ms[k - 1], lower_m)?;
            }
            out.push(element(j, n, m, cur.clone())?);
        }
    }
    Ok(out)
}

/// Elements with `X₃ ψ = i n ψ`, decided by applying `X₃`.
pub fn equivariant_subspace(elements: &[WignerElement], n: HalfInt) -> Result<Vec<WignerElement>> {
    let lambda = EigenOperator::X3.eigenvalue(HalfInt::ZERO, n, HalfInt::ZERO);
    let mut out = Vec::new();
    for e in elements {
        if eigen_check(&e.poly, EigenOperator::X3, &lambda)?.exact {
            out.push(e.clone());
        }
    }
    Ok(out)
}

/// Spherical harmonics `Y_l^m = √(2l+1) D^l_{0m}`, `m = l, ..., −l`.
///
/// Each has unit norm for the Haar measure of mass one, and `Y_l^0` is
/// positive at the identity.
pub fn spherical_harmonics(l: u32) -> Result<Vec<(HalfInt, Polynomial)>> {
    let j = HalfInt::int(l as i32);
    let scale = Coeff::sqrt_ratio(2 * l as i64 + 1, 1);
    let row: Vec<WignerElement> = wigner_basis(j)?
        .into_iter()
        .filter(|e| e.n == HalfInt::ZERO)
        .collect();
    let zero = row
        .iter()
        .find(|e| e.m == HalfInt::ZERO)
        .expect("m = 0 is in every integer multiplet");
    let at_identity = zero.poly.eval(&Point::su2(
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
    ))?;
    let scale = if at_identity.re < 0.0 { -scale } else { scale };
    Ok(row
        .into_iter()
        .map(|e| (e.m, e.poly.scale(&scale)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: Var) -> Polynomial {
        Polynomial::var(VariableSet::SU2, v)
    }

    #[test]
    fn spin_half_elements() {
        let b = wigner_basis(HalfInt::HALF).unwrap();
        let polys: Vec<_> = b.iter().map(|e| e.poly.clone()).collect();
        assert_eq!(polys, vec![p(Var::Ub), p(Var::Vb), p(Var::V), -p(Var::U)]);
        assert!(b.iter().all(|e| e.norm_sq == Coeff::ratio(1, 2)));
    }

    #[test]
    fn degree_one_harmonics() {
        let y = spherical_harmonics(1).unwrap();
        let uu = &p(Var::U) * &p(Var::Ub);
        let vv = &p(Var::V) * &p(Var::Vb);
        let s3 = Coeff::sqrt_ratio(3, 1);
        let s6 = Coeff::sqrt_ratio(6, 1);
        assert_eq!(
            y[0].1,
            (&p(Var::V) * &p(Var::Ub)).scale(&-s6.clone()).normal_form()
        );
        assert_eq!(y[1].1, (&uu - &vv).scale(&s3).normal_form());
        assert_eq!(y[2].1, (&p(Var::U) * &p(Var::Vb)).scale(&s6).normal_form());
    }

    #[test]
    fn equivariant_filter() {
        let half = wigner_basis(HalfInt::HALF).unwrap();
        assert_eq!(equivariant_subspace(&half, HalfInt::HALF).unwrap().len(), 2);
        assert!(equivariant_subspace(&half, HalfInt::ZERO)
            .unwrap()
            .is_empty());
        let one = wigner_basis(HalfInt::ONE).unwrap();
        assert_eq!(one.len(), 9);
        assert_eq!(equivariant_subspace(&one, HalfInt::ZERO).unwrap().len(), 3);
    }
}
