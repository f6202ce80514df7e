//! Invariant vector fields on SU(2) and the Hopf projection.
//!
//! A point of SU(2) is `s = [[u, -vb], [v, ub]]`. The Lie algebra basis is
//! `T_a = -i σ_a / 2`, so `[T_1, T_2] = T_3`.
//!
//! - `X_a f(s) = d/dt f(s exp(t T_a))` (left-invariant, generates right translations);
//! - `L_a f(s) = d/dt f(exp(t T_a) s)` (right-invariant, generates left translations).

use super::{su2_killing, FrameVector};
use crate::polyring::{Derivation, Polynomial, Var, VariableSet};
use crate::scalar::Coeff;

/// 2×2 matrix of polynomials over the SU(2) variables.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMat2(pub [[Polynomial; 2]; 2]);

impl PolyMat2 {
    pub fn constant(m: [[Coeff; 2]; 2]) -> Self {
        let c = |x: &Coeff| Polynomial::constant(VariableSet::SU2, x.clone());
        PolyMat2([[c(&m[0][0]), c(&m[0][1])], [c(&m[1][0]), c(&m[1][1])]])
    }

    /// The group element `s`.
    pub fn point() -> Self {
        let p = |v| Polynomial::var(VariableSet::SU2, v);
        PolyMat2([[p(Var::U), -p(Var::Vb)], [p(Var::V), p(Var::Ub)]])
    }

    /// Pauli matrix `σ_a`, `a ∈ {1, 2, 3}`.
    pub fn pauli(a: usize) -> Self {
        let (o, z, i) = (Coeff::one(), Coeff::zero(), Coeff::i());
        match a {
            1 => PolyMat2::constant([[z.clone(), o.clone()], [o, z]]),
            2 => PolyMat2::constant([[z.clone(), -&i], [i, z]]),
            3 => PolyMat2::constant([[o.clone(), z.clone()], [z, -o]]),
            _ => panic!("axis must be 1, 2 or 3"),
        }
    }

    /// `T_a = -i σ_a / 2`.
    pub fn generator(a: usize) -> Self {
        PolyMat2::pauli(a).scale(&Coeff::gaussian((0, 1), (-1, 2)))
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let m = &self.0;
        PolyMat2([
            [m[0][0].scale(c), m[0][1].scale(c)],
            [m[1][0].scale(c), m[1][1].scale(c)],
        ])
    }

    pub fn mul(&self, other: &PolyMat2) -> Self {
        let (a, b) = (&self.0, &other.0);
        let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        PolyMat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        PolyMat2([
            [m[0][0].conjugate(), m[1][0].conjugate()],
            [m[0][1].conjugate(), m[1][1].conjugate()],
        ])
    }

    pub fn trace(&self) -> Polynomial {
        &self.0[0][0] + &self.0[1][1]
    }

    /// Reads a tangent vector `ds` at `s` as a derivation on the generators.
    fn as_derivation(&self, label: String) -> Derivation {
        let m = &self.0;
        Derivation::new(
            label,
            [
                (Var::U, m[0][0].clone()),
                (Var::V, m[1][0].clone()),
                (Var::Ub, m[1][1].clone()),
                (Var::Vb, -&m[0][1]),
            ],
        )
    }
}

/// Left-invariant field `X_a`, `a ∈ {1, 2, 3}`.
pub fn left_invariant_field(a: usize) -> Derivation {
    PolyMat2::point()
        .mul(&PolyMat2::generator(a))
        .as_derivation(format!("X{a}"))
}

/// Right-invariant field `L_a`, `a ∈ {1, 2, 3}`.
pub fn right_invariant_field(a: usize) -> Derivation {
    PolyMat2::generator(a)
        .mul(&PolyMat2::point())
        .as_derivation(format!("L{a}"))
}

/// `L_a` expanded in the left-invariant frame: `L_a = Σ_b c_b X_b` with
/// `c_b = -2 tr(T_b s† T_a s)`.
///
/// The identity holds modulo `uū + vv̄ = 1`; components are in normal form.
pub fn right_invariant_frame_vector(a: usize) -> FrameVector {
    let s = PolyMat2::point();
    let conj = s.adjoint().mul(&PolyMat2::generator(a)).mul(&s);
    let comps = (1..=3)
        .map(|b| {
            PolyMat2::generator(b)
                .mul(&conj)
                .trace()
                .scale(&Coeff::int(-2))
                .normal_form()
        })
        .collect();
    FrameVector::new(&su2_killing(), comps).expect("three components")
}

/// `x̂_a = ½ tr(σ_a s σ_3 s†)`, so that `x̂_a σ_a = s σ_3 s⁻¹`.
pub fn hopf_projection() -> [Polynomial; 3] {
    let s = PolyMat2::point();
    let image = s.mul(&PolyMat2::pauli(3)).mul(&s.adjoint());
    let half = Coeff::ratio(1, 2);
    [1, 2, 3].map(|a| PolyMat2::pauli(a).mul(&image).trace().scale(&half))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: Var) -> Polynomial {
        Polynomial::var(VariableSet::SU2, v)
    }

    fn times(c: Coeff, v: Var) -> Polynomial {
        p(v).scale(&c)
    }

    #[test]
    fn x3_images() {
        let x3 = left_invariant_field(3);
        let mi = Coeff::gaussian((0, 1), (-1, 2));
        let pi = Coeff::gaussian((0, 1), (1, 2));
        assert_eq!(x3.image(Var::U).unwrap(), &times(mi.clone(), Var::U));
        assert_eq!(x3.image(Var::V).unwrap(), &times(mi, Var::V));
        assert_eq!(x3.image(Var::Ub).unwrap(), &times(pi.clone(), Var::Ub));
        assert_eq!(x3.image(Var::Vb).unwrap(), &times(pi, Var::Vb));
    }

    #[test]
    fn hopf_components() {
        let [x1, x2, x3] = hopf_projection();
        assert_eq!(x3, p(Var::U) * p(Var::Ub) - p(Var::V) * p(Var::Vb));
        assert_eq!(x1, p(Var::U) * p(Var::Vb) + p(Var::Ub) * p(Var::V));
        let i = Coeff::i();
        assert_eq!(
            x2,
            (p(Var::U) * p(Var::Vb) - p(Var::Ub) * p(Var::V)).scale(&i)
        );
        let norm = (&(&x1 * &x1) + &(&x2 * &x2) + &x3 * &x3).normal_form();
        assert_eq!(norm, Polynomial::one(VariableSet::SU2).normal_form());
    }
}
