use std::f64::consts::PI;

use serde::Serialize;

use super::cg::coupled_multiplet;
use super::eigen::EigenOperator;
use crate::error::{Error, Result};
use crate::exterior::{contract, d, pointwise_inner, DifferentialForm};
use crate::frames::{su2_killing, FrameVector};
use crate::polyring::{haar_integral, Polynomial, Var, VariableSet};
use crate::scalar::{Coeff, HalfInt};

/// A one-form on SU(2) carrying `(j, m)` labels under the left action.
///
/// The represented form is `π^{pi_power} · form`; the transcendental factor
/// is kept apart so that `form` stays exact.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VectorHarmonic {
    pub label: String,
    pub j: HalfInt,
    pub m: HalfInt,
    pub form: DifferentialForm,
    pub pi_power: i32,
}

impl VectorHarmonic {
    /// `∫ ⟨form, form⟩ dν` for the Haar measure of mass one, without the
    /// `π` factor.
    pub fn haar_norm_sq(&self) -> Result<Coeff> {
        haar_integral(&pointwise_inner(&self.form, &self.form)?)
    }

    /// The volume `V` for which the represented form has unit norm under
    /// `V dν`.
    pub fn volume_constant(&self) -> Result<f64> {
        let n = self.haar_norm_sq()?.to_complex().re;
        Ok(1.0 / (PI.powi(2 * self.pi_power) * n))
    }
}

fn su2_poly(v: Var) -> Polynomial {
    Polynomial::var(VariableSet::SU2, v)
}

/// `θ^± = (θ¹ ∓ iθ²)/√2`.
fn theta_pm(sign: i64) -> DifferentialForm {
    let m = su2_killing();
    let r = Coeff::sqrt_ratio(1, 2);
    let t1 = DifferentialForm::theta(&m, 0).scale(&r);
    let t2 = DifferentialForm::theta(&m, 1).scale(&(&r * &Coeff::gaussian((0, 1), (-sign, 1))));
    &t1 + &t2
}

pub fn theta_plus() -> DifferentialForm {
    theta_pm(1)
}

pub fn theta_minus() -> DifferentialForm {
    theta_pm(-1)
}

/// `α_{1/2} = v θ⁺ / 2π` and `α_{−1/2} = −u θ⁺ / 2π`.
pub fn half_basis() -> Vec<VectorHarmonic> {
    let tp = theta_plus();
    let half = Coeff::ratio(1, 2);
    let make = |label: &str, m: i32, poly: Polynomial| VectorHarmonic {
        label: label.into(),
        j: HalfInt::HALF,
        m: HalfInt::from_twice(m),
        form: tp
            .mul_function(&poly.scale(&half))
            .expect("SU(2) variables"),
        pi_power: -1,
    };
    vec![
        make("alpha_1/2", 1, su2_poly(Var::V)),
        make("alpha_-1/2", -1, -su2_poly(Var::U)),
    ]
}

fn exact_d(v: Var) -> DifferentialForm {
    let m = su2_killing();
    d(&DifferentialForm::scalar(&m, &su2_poly(v)).expect("SU(2) variables"))
        .expect("polynomial coefficients")
}

/// The `j = 1` triple built from `v̄ dū − ū dv̄` and `u dv − v du`.
pub fn j1_basis() -> Vec<VectorHarmonic> {
    let p = su2_poly;
    let a = (&exact_d(Var::Ub).mul_function(&p(Var::Vb)).unwrap())
        - &exact_d(Var::Vb).mul_function(&p(Var::Ub)).unwrap();
    let b = (&exact_d(Var::V).mul_function(&p(Var::U)).unwrap())
        - &exact_d(Var::U).mul_function(&p(Var::V)).unwrap();
    let combo = |f: Polynomial, g: Polynomial| {
        (&a.mul_function(&f).unwrap()) + &b.mul_function(&g).unwrap()
    };
    let i = Coeff::i();
    let c38 = &i * &Coeff::sqrt_ratio(3, 8);
    let c34 = &i * &Coeff::sqrt_ratio(3, 4);
    let make = |label: &str, m: i32, form: DifferentialForm, c: &Coeff| VectorHarmonic {
        label: label.into(),
        j: HalfInt::ONE,
        m: HalfInt::int(m),
        form: form.scale(c),
        pi_power: -1,
    };
    vec![
        make(
            "alpha_1",
            1,
            combo(p(Var::V).pow(2), p(Var::Ub).pow(2)),
            &c38,
        ),
        make(
            "alpha_0",
            0,
            combo(-(&p(Var::V) * &p(Var::U)), &p(Var::Vb) * &p(Var::Ub)),
            &c34,
        ),
        make(
            "alpha_-1",
            -1,
            combo(p(Var::U).pow(2), p(Var::Vb).pow(2)),
            &c38,
        ),
    ]
}

/// Result of testing `i_{X₃} α = 0` and `L_{X₃} α = 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HorizontalityReport {
    pub contraction_zero: bool,
    pub invariant: bool,
    /// `λ` with `L_{X₃} α = λ α`, when `α` is an eigenform.
    pub x3_eigenvalue: Option<Coeff>,
}

impl HorizontalityReport {
    /// Both conditions: the form descends to the base.
    pub fn is_horizontal(&self) -> bool {
        self.contraction_zero && self.invariant
    }
}

pub fn horizontal_forms_check(alpha: &DifferentialForm) -> Result<HorizontalityReport> {
    let m = su2_killing();
    m.check_same(alpha.manifold())?;
    let x3 = FrameVector::basis(&m, 2);
    let contraction_zero = contract(&x3, alpha)?.is_zero();
    let lie = EigenOperator::X3.apply_form(alpha)?;
    let x3_eigenvalue = if lie.is_zero() {
        Some(Coeff::zero())
    } else {
        lie.ratio_to(alpha)
    };
    Ok(HorizontalityReport {
        contraction_zero,
        invariant: lie.is_zero(),
        x3_eigenvalue,
    })
}

/// Couples spherical harmonics of degree `l` with a multiplet of forms into
/// total spin `target`, using Clebsch–Gordan coefficients.
///
/// `forms` must be a full multiplet; `harmonics` lists `(m, Y_l^m)`.
pub fn cg_combine(
    forms: &[VectorHarmonic],
    harmonics: &[(HalfInt, Polynomial)],
    l: HalfInt,
    target: HalfInt,
) -> Result<Vec<VectorHarmonic>> {
    let j2 = forms
        .first()
        .ok_or_else(|| Error::InvalidParameter("empty form multiplet".into()))?
        .j;
    if forms.len() != j2.twice() as usize + 1 || forms.iter().any(|f| f.j != j2) {
        return Err(Error::InvalidParameter(
            "forms do not make up one multiplet".into(),
        ));
    }
    let multiplet = coupled_multiplet(l, j2, target)?;
    let mut out = Vec::new();
    for (m, state) in multiplet {
        let mut form = DifferentialForm::zero(&forms[0].form.manifold().clone());
        for ((m1, m2), c) in state {
            let y = harmonics.iter().find(|(mm, _)| *mm == m1).ok_or_else(|| {
                Error::InvalidParameter(format!("missing harmonic with m = {m1}"))
            })?;
            let f = forms.iter().find(|f| f.m == m2).expect("full multiplet");
            form = form.try_add(&f.form.mul_function(&y.1)?.scale(&Coeff::from(c)))?;
        }
        out.push(VectorHarmonic {
            label: format!("alpha_{m}[j={target}]"),
            j: target,
            m,
            form,
            pi_power: forms[0].pi_power,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::l2_inner;
    use crate::monopole::{eigen_check_form, spherical_harmonics};

    fn labels_hold(h: &VectorHarmonic) -> bool {
        let cas = EigenOperator::Casimir.eigenvalue(h.j, HalfInt::ZERO, h.m);
        let lz = EigenOperator::Lz.eigenvalue(h.j, HalfInt::ZERO, h.m);
        eigen_check_form(&h.form, EigenOperator::Casimir, &cas)
            .unwrap()
            .exact
            && eigen_check_form(&h.form, EigenOperator::Lz, &lz)
                .unwrap()
                .exact
    }

    #[test]
    fn bases_carry_their_labels() {
        for h in j1_basis().iter().chain(half_basis().iter()) {
            assert!(labels_hold(h), "{}", h.label);
        }
    }

    #[test]
    fn horizontality_examples() {
        let j1 = j1_basis();
        assert!(horizontal_forms_check(&j1[0].form).unwrap().is_horizontal());
        let t3 = DifferentialForm::theta(&su2_killing(), 2);
        assert!(!horizontal_forms_check(&t3).unwrap().contraction_zero);
        let half = half_basis();
        let r = horizontal_forms_check(&half[0].form).unwrap();
        assert!(r.contraction_zero && !r.invariant);
        assert_eq!(r.x3_eigenvalue, Some(Coeff::gaussian((0, 1), (1, 2))));
    }

    #[test]
    fn orthogonal_with_common_volume() {
        let j1 = j1_basis();
        assert!(l2_inner(&j1[0].form, &j1[2].form).unwrap().is_zero());
        let half = half_basis();
        assert!(l2_inner(&half[0].form, &half[1].form).unwrap().is_zero());
        let v = 8.0 * std::f64::consts::PI.powi(2);
        for h in j1.iter().chain(half.iter()) {
            assert!((h.volume_constant().unwrap() - v).abs() < 1e-10 * v);
        }
    }

    #[test]
    fn spin_half_tower() {
        let y = spherical_harmonics(1).unwrap();
        let half = half_basis();
        let tower = cg_combine(&half, &y, HalfInt::ONE, HalfInt::HALF).unwrap();
        let (a, b) = (Coeff::sqrt_ratio(2, 3), Coeff::sqrt_ratio(1, 3));
        let expected = (&half[1].form.mul_function(&y[0].1).unwrap().scale(&a))
            - &half[0].form.mul_function(&y[1].1).unwrap().scale(&b);
        assert_eq!(tower[0].form, expected);
        for h in &tower {
            assert!(labels_hold(h));
        }
        assert!(cg_combine(&half, &y, HalfInt::ONE, HalfInt::from_twice(5)).is_err());
    }
}
