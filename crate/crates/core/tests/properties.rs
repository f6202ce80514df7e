use std::sync::Arc;

use num_rational::BigRational;
use proptest::prelude::*;

use dkforms::clifford::CliffordContext;
use dkforms::exterior::{codifferential, d, hodge_star, pointwise_inner, wedge};
use dkforms::frames::{euclidean_r3, hopf_projection, r4_monopole, su2_killing};
use dkforms::monopole::{half_basis, EigenOperator};
use dkforms::polyring::haar_integral;
use dkforms::sample::Sampler;
use dkforms::{Coeff, DifferentialForm, FrameManifold, Polynomial, VariableSet};

fn manifolds() -> Vec<Arc<FrameManifold>> {
    let k = BigRational::new(1.into(), 1.into());
    vec![euclidean_r3(), su2_killing(), r4_monopole(&k).unwrap()]
}

fn su2_poly(s: &mut Sampler) -> Polynomial {
    s.polynomial(VariableSet::SU2, 3, 3)
}

fn normalized(f: &DifferentialForm) -> DifferentialForm {
    if f.manifold().vars().has_su2() {
        f.map_coefficients(|p| Ok(p.normal_form())).unwrap()
    } else {
        f.clone()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (p, q, r) = (su2_poly(&mut s), su2_poly(&mut s), su2_poly(&mut s));
        let pq_r = p.try_mul(&q).unwrap().try_mul(&r).unwrap().normal_form();
        let p_qr = p.try_mul(&q.try_mul(&r).unwrap()).unwrap().normal_form();
        prop_assert_eq!(pq_r, p_qr);
        let left = p.try_mul(&q.try_add(&r).unwrap()).unwrap().normal_form();
        let right = p.try_mul(&q).unwrap().try_add(&p.try_mul(&r).unwrap()).unwrap().normal_form();
        prop_assert_eq!(left, right);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_form_is_idempotent(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let raw = Polynomial::from_terms(
            VariableSet::SU2,
            (0..4).map(|_| (s.monomial(VariableSet::SU2, 6), s.coeff())),
        ).unwrap();
        let nf = raw.normal_form();
        prop_assert_eq!(nf.normal_form(), nf);
    }

    #[test]
    fn conjugation_is_an_involutive_homomorphism(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (p, q) = (su2_poly(&mut s), su2_poly(&mut s));
        prop_assert_eq!(p.conjugate().conjugate(), p.clone());
        let lhs = p.try_mul(&q).unwrap().conjugate().normal_form();
        let rhs = p.conjugate().try_mul(&q.conjugate()).unwrap().normal_form();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn frame_fields_obey_leibniz(seed in any::<u64>(), a in 0usize..3) {
        let mut s = Sampler::new(seed);
        let (p, q) = (su2_poly(&mut s), su2_poly(&mut s));
        let x = su2_killing().frame_action(a).clone();
        let lhs = x.apply(&p.try_mul(&q).unwrap()).unwrap().normal_form();
        let rhs = x.apply(&p).unwrap().try_mul(&q).unwrap()
            .try_add(&p.try_mul(&x.apply(&q).unwrap()).unwrap()).unwrap().normal_form();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn haar_norm_is_nonnegative(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let p = s.polynomial(VariableSet::SU2, 4, 4);
        let n = haar_integral(&p.conjugate().try_mul(&p).unwrap()).unwrap();
        let z = n.to_complex();
        prop_assert!(z.im == 0.0 && z.re >= 0.0, "{}", n);
        prop_assert!(p.is_zero() || z.re > 0.0);
    }

    #[test]
    fn exterior_derivative_and_codifferential_square_to_zero(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        for m in manifolds() {
            let alpha = s.form(&m, 4, 3);
            prop_assert!(d(&d(&alpha).unwrap()).unwrap().is_zero(), "d² on {}", m.name());
            prop_assert!(codifferential(&codifferential(&alpha).unwrap()).unwrap().is_zero(), "δ² on {}", m.name());
        }
    }

    #[test]
    fn hodge_star_is_an_involution_up_to_sign(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        for m in manifolds() {
            let n = m.dim();
            for k in 0..=n {
                let alpha = s.form_of_degree(&m, k, 3, 2);
                let twice = normalized(&hodge_star(&hodge_star(&alpha).unwrap()).unwrap());
                let sign = if (k * (n - k)) % 2 == 0 { 1 } else { -1 };
                prop_assert_eq!(twice, normalized(&alpha.scale(&Coeff::int(sign))));
            }
        }
    }

    #[test]
    fn wedge_with_star_gives_inner_product(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        for m in manifolds() {
            for k in 0..=m.dim() {
                let alpha = s.form_of_degree(&m, k, 3, 2);
                let beta = s.form_of_degree(&m, k, 3, 2);
                let lhs = normalized(&wedge(&alpha.conjugate(), &hodge_star(&beta).unwrap()).unwrap());
                let ip = pointwise_inner(&alpha, &beta).unwrap();
                let rhs = normalized(&DifferentialForm::volume(&m).mul_function(&ip).unwrap());
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn constraint_matches_fiber_generator(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let p = s.polynomial(VariableSet::SU2, 4, 4);
        let lhs = EigenOperator::XhatL.apply(&p).unwrap();
        let rhs = EigenOperator::X3.apply(&p).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn invariant_multiples_keep_the_charge(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let x = hopf_projection();
        // A random polynomial in the projected coordinates is fiber-invariant.
        let mut f = Polynomial::constant(VariableSet::SU2, s.coeff());
        for step in 0..3 {
            let i = ((seed >> (8 * step)) % 3) as usize;
            f = f.try_mul(&x[i]).unwrap().try_add(&Polynomial::constant(VariableSet::SU2, s.coeff())).unwrap();
        }
        let f = f.normal_form();
        prop_assert!(EigenOperator::X3.apply(&f).unwrap().is_zero());
        for h in half_basis() {
            let g = h.form.mul_function(&f).unwrap();
            let r = dkforms::monopole::eigen_check_form(&g, EigenOperator::X3, &Coeff::gaussian((0, 1), (1, 2))).unwrap();
            prop_assert!(r.exact, "{}", h.label);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn kahler_product_is_associative_on_constants(seed in any::<u64>()) {
        let ctx = CliffordContext::euclidean();
        let m = ctx.manifold().clone();
        let mut s = Sampler::new(seed);
        let mut constant_form = || {
            let mut f = DifferentialForm::zero(&m);
            for b in dkforms::Blade::all(3) {
                let c = s.coeff();
                f = f.try_add(&DifferentialForm::basis(&m, &b.indices()).unwrap().scale(&c)).unwrap();
            }
            f
        };
        let (a, b, c) = (constant_form(), constant_form(), constant_form());
        let ab_c = ctx.vee(&ctx.vee(&a, &b).unwrap(), &c).unwrap();
        let a_bc = ctx.vee(&a, &ctx.vee(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
    }
}

#[test]
fn projected_coordinates_are_fiber_invariant_and_on_the_sphere() {
    let x = hopf_projection();
    let mut sum = Polynomial::zero(VariableSet::SU2);
    for xi in &x {
        assert!(EigenOperator::X3.apply(xi).unwrap().is_zero());
        sum = sum.try_add(&xi.try_mul(xi).unwrap()).unwrap();
    }
    assert_eq!(sum.normal_form(), Polynomial::one(VariableSet::SU2));
}
