use num_traits::Zero;

use super::{Blade, DifferentialForm};
use crate::error::Result;
use crate::frames::{FrameVector, Signature};
use crate::scalar::Coeff;

pub fn wedge(alpha: &DifferentialForm, beta: &DifferentialForm) -> Result<DifferentialForm> {
    alpha.check_same(beta)?;
    let mut out = DifferentialForm::zero(alpha.manifold());
    for (a, p) in alpha.components() {
        for (b, q) in beta.components() {
            if let Some((sign, blade)) = a.wedge(*b) {
                out.push(blade, p.try_mul(q)?.scale(&Coeff::int(sign)))?;
            }
        }
    }
    Ok(out)
}

/// `i_{E_a} α`.
pub fn contract_basis(a: usize, alpha: &DifferentialForm) -> DifferentialForm {
    let mut out = DifferentialForm::zero(alpha.manifold());
    for (b, p) in alpha.components() {
        if let Some((sign, rest)) = b.contract(a) {
            out.push(rest, p.scale(&Coeff::int(sign)))
                .expect("same variables");
        }
    }
    out
}

/// `i_Y α = Σ Y^a i_{E_a} α`.
pub fn contract(y: &FrameVector, alpha: &DifferentialForm) -> Result<DifferentialForm> {
    y.manifold().check_same(alpha.manifold())?;
    let mut out = DifferentialForm::zero(alpha.manifold());
    for (a, ya) in y.components().iter().enumerate() {
        if !ya.is_zero() {
            out = out.try_add(&contract_basis(a, alpha).mul_function(ya)?)?;
        }
    }
    Ok(out)
}

/// `⋆θ^I = ε(I, I^c) (Π_{i∈I} g^{ii}) √|g| θ^{I^c}`.
pub fn hodge_star(alpha: &DifferentialForm) -> Result<DifferentialForm> {
    let m = alpha.manifold();
    let n = m.dim();
    let full = Blade(((1u32 << n) - 1) as u16);
    let mut out = DifferentialForm::zero(m);
    for (b, p) in alpha.components() {
        let comp = Blade(full.0 & !b.0);
        let (sign, _) = b.wedge(comp).expect("disjoint");
        let mut coef = p.try_mul(m.volume_coefficient())?.scale(&Coeff::int(sign));
        for i in b.indices() {
            coef = coef.try_mul(m.inverse_metric(i))?;
        }
        out.push(comp, coef)?;
    }
    Ok(out)
}

/// `dθ^a = -Σ_{b<c} c^a_{bc} θ^b ∧ θ^c`.
fn d_theta(alpha: &DifferentialForm, a: usize) -> DifferentialForm {
    let m = alpha.manifold();
    let n = m.dim();
    let mut out = DifferentialForm::zero(m);
    for b in 0..n {
        for c in b + 1..n {
            let k = m.structure_constant(a, b, c);
            if !k.is_zero() {
                let blade = Blade::from_indices(&[b, c]).expect("distinct");
                out.push(blade, m.constant(-k.clone())).expect("constant");
            }
        }
    }
    out
}

/// Exterior derivative with `df = Σ E_a(f) θ^a`.
pub fn d(alpha: &DifferentialForm) -> Result<DifferentialForm> {
    let m = alpha.manifold();
    let n = m.dim();
    let dthetas: Vec<DifferentialForm> = (0..n).map(|a| d_theta(alpha, a)).collect();
    let mut out = DifferentialForm::zero(m);
    for (b, f) in alpha.components() {
        for a in 0..n {
            if let Some((sign, blade)) = Blade::single(a).wedge(*b) {
                let ea = m.derivative(a, f)?;
                out.push(blade, ea.scale(&Coeff::int(sign)))?;
            }
        }
        // d(θ^{i_1} ∧ ... ∧ θ^{i_k}) = Σ_j (-1)^j θ^{i_1} ∧ ... ∧ dθ^{i_j} ∧ ... ∧ θ^{i_k}
        for (j, &ij) in b.indices().iter().enumerate() {
            if dthetas[ij].is_zero() {
                continue;
            }
            let idx = b.indices();
            let head = DifferentialForm::basis(m, &idx[..j])?;
            let tail = DifferentialForm::basis(m, &idx[j + 1..])?;
            let term = wedge(&wedge(&head, &dthetas[ij])?, &tail)?;
            let term = term.mul_function(f)?;
            let term = if j % 2 == 1 { -&term } else { term };
            out = out.try_add(&term)?;
        }
    }
    Ok(out)
}

/// `δ = (-1)^{n(k-1)+1} ⋆d⋆` on degree-`k` forms (Riemannian), without the
/// `+1` for Lorentzian signature.
pub fn codifferential(alpha: &DifferentialForm) -> Result<DifferentialForm> {
    let m = alpha.manifold();
    let n = m.dim();
    let mut out = DifferentialForm::zero(m);
    for k in 1..=n {
        let part = alpha.grade_part(k);
        if part.is_zero() {
            continue;
        }
        let mut exponent = n * (k - 1);
        if m.signature() == Signature::Riemannian {
            exponent += 1;
        }
        let mut term = hodge_star(&d(&hodge_star(&part)?)?)?;
        if exponent % 2 == 1 {
            term = -&term;
        }
        out = out.try_add(&term)?;
    }
    Ok(out)
}

/// `Δ = dδ + δd`.
pub fn laplace_beltrami(alpha: &DifferentialForm) -> Result<DifferentialForm> {
    d(&codifferential(alpha)?)?.try_add(&codifferential(&d(alpha)?)?)
}

/// `D = d − δ`.
pub fn dirac_kahler(alpha: &DifferentialForm) -> Result<DifferentialForm> {
    d(alpha)?.try_sub(&codifferential(alpha)?)
}

/// `L_Y θ^a = Σ_b [E_b(Y^a) + Σ_c Y^c c^a_{bc}] θ^b`.
fn lie_theta(y: &FrameVector, alpha: &DifferentialForm, a: usize) -> Result<DifferentialForm> {
    let m = alpha.manifold();
    let n = m.dim();
    let mut out = DifferentialForm::zero(m);
    for b in 0..n {
        let mut coef = m.derivative(b, y.component(a))?;
        for c in 0..n {
            let k = m.structure_constant(a, b, c);
            if !k.is_zero() {
                coef = coef.try_add(&y.component(c).scale(&Coeff::rational(k.clone())))?;
            }
        }
        out.push(Blade::single(b), coef)?;
    }
    Ok(out)
}

/// Lie derivative from the frame data, as a derivation of the wedge product.
pub fn lie_derivative(y: &FrameVector, alpha: &DifferentialForm) -> Result<DifferentialForm> {
    y.manifold().check_same(alpha.manifold())?;
    let m = alpha.manifold();
    let thetas: Vec<DifferentialForm> = (0..m.dim())
        .map(|a| lie_theta(y, alpha, a))
        .collect::<Result<_>>()?;
    let mut out = DifferentialForm::zero(m);
    for (b, f) in alpha.components() {
        out.push(*b, y.apply(f)?)?;
        let idx = b.indices();
        for (j, &ij) in idx.iter().enumerate() {
            let head = DifferentialForm::basis(m, &idx[..j])?;
            let tail = DifferentialForm::basis(m, &idx[j + 1..])?;
            let term = wedge(&wedge(&head, &thetas[ij])?, &tail)?.mul_function(f)?;
            out = out.try_add(&term)?;
        }
    }
    Ok(out)
}

/// Lie derivative by Cartan's formula `i_Y d + d i_Y`.
pub fn lie_derivative_cartan(
    y: &FrameVector,
    alpha: &DifferentialForm,
) -> Result<DifferentialForm> {
    contract(y, &d(alpha)?)?.try_add(&d(&contract(y, alpha)?)?)
}
