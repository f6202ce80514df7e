use serde::Serialize;

use super::DifferentialForm;
use crate::error::{Error, Result};
use crate::polyring::{haar_integral, Polynomial};
use crate::scalar::Coeff;

/// `(α|β) = Σ_I conj(α_I) β_I Π_{i∈I} g^{ii}`, conjugate-linear in `α`.
pub fn pointwise_inner(alpha: &DifferentialForm, beta: &DifferentialForm) -> Result<Polynomial> {
    alpha.check_same(beta)?;
    let m = alpha.manifold();
    let mut acc = Polynomial::zero(m.vars());
    for (b, p) in alpha.components() {
        let q = beta.component(*b);
        if q.is_zero() {
            continue;
        }
        let mut term = p.conjugate().try_mul(&q)?;
        for i in b.indices() {
            term = term.try_mul(m.inverse_metric(i))?;
        }
        acc = acc.try_add(&term)?;
    }
    if m.vars().has_su2() {
        acc = acc.normal_form();
    }
    Ok(acc)
}

/// `∫ (α|β) dμ` against the Haar measure of total mass one.
///
/// Only compact manifolds carry a measure here.
pub fn l2_inner(alpha: &DifferentialForm, beta: &DifferentialForm) -> Result<Coeff> {
    let m = alpha.manifold();
    if !m.is_compact() {
        return Err(Error::UnsupportedDomain(m.name().to_string()));
    }
    let density = pointwise_inner(alpha, beta)?.try_mul(m.volume_coefficient())?;
    haar_integral(&density)
}

#[derive(Clone, Debug, Serialize)]
pub struct FormInnerProductReport {
    pub pointwise: Polynomial,
    pub integrated: Option<Coeff>,
    pub same_degree: bool,
}

/// Pointwise and, when the manifold is compact, integrated products.
pub fn inner_report(
    alpha: &DifferentialForm,
    beta: &DifferentialForm,
) -> Result<FormInnerProductReport> {
    let pointwise = pointwise_inner(alpha, beta)?;
    let integrated = if alpha.manifold().is_compact() {
        Some(l2_inner(alpha, beta)?)
    } else {
        None
    };
    let same_degree = match (alpha.degree(), beta.degree()) {
        (Some(a), Some(b)) => a == b,
        _ => alpha.is_zero() || beta.is_zero(),
    };
    Ok(FormInnerProductReport {
        pointwise,
        integrated,
        same_degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{euclidean_r3, su2_killing};

    #[test]
    fn orthonormal_coframe() {
        let m = su2_killing();
        let t1 = DifferentialForm::theta(&m, 0);
        assert_eq!(pointwise_inner(&t1, &t1).unwrap(), m.constant(1));
        let t12 = DifferentialForm::basis(&m, &[0, 1]).unwrap();
        assert_eq!(l2_inner(&t12, &t12).unwrap(), Coeff::one());
        assert!(l2_inner(&t1, &t12).unwrap().is_zero());
    }

    #[test]
    fn refuses_open_domains() {
        let m = euclidean_r3();
        let one = DifferentialForm::one(&m);
        assert!(matches!(
            l2_inner(&one, &one),
            Err(Error::UnsupportedDomain(_))
        ));
        assert!(inner_report(&one, &one).unwrap().integrated.is_none());
    }
}
