//! Differential forms in a global coframe `θ^a`.

mod calculus;
mod inner;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::frames::FrameManifold;
use crate::polyring::Polynomial;
use crate::scalar::Coeff;

pub use calculus::{
    codifferential, contract, contract_basis, d, dirac_kahler, hodge_star, laplace_beltrami,
    lie_derivative, lie_derivative_cartan, wedge,
};
pub use inner::{inner_report, l2_inner, pointwise_inner, FormInnerProductReport};

/// A strictly increasing set of frame indices, stored as a bit mask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Blade(pub u16);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub fn from_indices(indices: &[usize]) -> Option<Blade> {
        let mut bits = 0u16;
        for &i in indices {
            if i >= 16 || bits & (1 << i) != 0 {
                return None;
            }
            bits |= 1 << i;
        }
        Some(Blade(bits))
    }

    pub fn single(a: usize) -> Blade {
        Blade(1 << a)
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, a: usize) -> bool {
        self.0 & (1 << a) != 0
    }

    pub fn indices(self) -> Vec<usize> {
        (0..16).filter(|&i| self.contains(i)).collect()
    }

    /// All blades of an `n`-dimensional frame, in canonical order.
    pub fn all(n: usize) -> Vec<Blade> {
        let mut v: Vec<Blade> = (0..1u32 << n).map(|b| Blade(b as u16)).collect();
        v.sort();
        v
    }

    /// Sign and result of `θ^self ∧ θ^other`; `None` if they share an index.
    pub fn wedge(self, other: Blade) -> Option<(i64, Blade)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut swaps = 0;
        for b in other.indices() {
            swaps += (self.0 >> (b + 1)).count_ones();
        }
        Some((if swaps % 2 == 0 { 1 } else { -1 }, Blade(self.0 | other.0)))
    }

    /// Sign and result of `i_{E_a} θ^self`; `None` if `a` is absent.
    pub fn contract(self, a: usize) -> Option<(i64, Blade)> {
        if !self.contains(a) {
            return None;
        }
        let before = (self.0 & ((1 << a) - 1)).count_ones();
        Some((
            if before.is_multiple_of(2) { 1 } else { -1 },
            Blade(self.0 & !(1 << a)),
        ))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// By grade, then lexicographically by index list.
impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade()
            .cmp(&other.grade())
            .then_with(|| self.indices().cmp(&other.indices()))
    }
}

/// `Σ_I f_I θ^I` with polynomial coefficients.
///
/// On manifolds containing S³ the coefficients are kept in sphere normal form.
#[derive(Clone, Debug)]
pub struct DifferentialForm {
    manifold: Arc<FrameManifold>,
    comps: BTreeMap<Blade, Polynomial>,
}

impl PartialEq for DifferentialForm {
    fn eq(&self, other: &Self) -> bool {
        self.manifold.name() == other.manifold.name() && self.comps == other.comps
    }
}

impl DifferentialForm {
    pub fn zero(manifold: &Arc<FrameManifold>) -> Self {
        DifferentialForm {
            manifold: manifold.clone(),
            comps: BTreeMap::new(),
        }
    }

    pub fn scalar(manifold: &Arc<FrameManifold>, f: &Polynomial) -> Result<Self> {
        DifferentialForm::from_components(manifold, [(Blade::SCALAR, f.clone())])
    }

    pub fn constant(manifold: &Arc<FrameManifold>, c: impl Into<Coeff>) -> Self {
        DifferentialForm::scalar(manifold, &manifold.constant(c))
            .expect("constant lives on the manifold")
    }

    pub fn one(manifold: &Arc<FrameManifold>) -> Self {
        DifferentialForm::constant(manifold, 1)
    }

    /// `θ^{i_1} ∧ ... ∧ θ^{i_k}` for distinct indices in any order.
    pub fn basis(manifold: &Arc<FrameManifold>, indices: &[usize]) -> Result<Self> {
        let n = manifold.dim();
        let mut acc = DifferentialForm::one(manifold);
        for &i in indices {
            if i >= n {
                return Err(Error::InvalidParameter(format!(
                    "frame index {i} out of range"
                )));
            }
            let theta = DifferentialForm::from_components(
                manifold,
                [(Blade::single(i), manifold.constant(1))],
            )?;
            acc = wedge(&acc, &theta)?;
        }
        if acc.is_zero() {
            return Err(Error::InvalidParameter("repeated frame index".into()));
        }
        Ok(acc)
    }

    /// The coframe one-form `θ^a`.
    pub fn theta(manifold: &Arc<FrameManifold>, a: usize) -> Self {
        DifferentialForm::basis(manifold, &[a]).expect("valid index")
    }

    /// The metric volume form `√|g| θ^1 ∧ ... ∧ θ^n`.
    pub fn volume(manifold: &Arc<FrameManifold>) -> Self {
        let all = Blade((1u32 << manifold.dim()).wrapping_sub(1) as u16);
        DifferentialForm::from_components(manifold, [(all, manifold.volume_coefficient().clone())])
            .expect("volume lives on the manifold")
    }

    pub fn from_components(
        manifold: &Arc<FrameManifold>,
        comps: impl IntoIterator<Item = (Blade, Polynomial)>,
    ) -> Result<Self> {
        let mut out = DifferentialForm::zero(manifold);
        for (b, p) in comps {
            if b.indices().iter().any(|&i| i >= manifold.dim()) {
                return Err(Error::InvalidParameter("blade index out of range".into()));
            }
            out.push(b, p.embed(manifold.vars())?)?;
        }
        Ok(out)
    }

    fn normalize(&self, p: Polynomial) -> Polynomial {
        if self.manifold.vars().has_su2() && !p.is_sphere() {
            p.normal_form()
        } else {
            p
        }
    }

    pub(crate) fn push(&mut self, b: Blade, p: Polynomial) -> Result<()> {
        if p.is_zero() {
            return Ok(());
        }
        let p = self.normalize(p);
        let merged = match self.comps.remove(&b) {
            Some(old) => old.try_add(&p)?,
            None => p,
        };
        if !merged.is_zero() {
            self.comps.insert(b, merged);
        }
        Ok(())
    }

    pub fn manifold(&self) -> &Arc<FrameManifold> {
        &self.manifold
    }

    pub fn components(&self) -> impl Iterator<Item = (&Blade, &Polynomial)> {
        self.comps.iter()
    }

    pub fn component(&self, b: Blade) -> Polynomial {
        self.comps
            .get(&b)
            .cloned()
            .unwrap_or_else(|| self.normalize(Polynomial::zero(self.manifold.vars())))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.comps.values().all(Polynomial::is_exact)
    }

    /// The degree, if the form is homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut grades = self.comps.keys().map(|b| b.grade());
        let first = grades.next()?;
        grades.all(|g| g == first).then_some(first)
    }

    pub fn grade_part(&self, k: usize) -> DifferentialForm {
        DifferentialForm {
            manifold: self.manifold.clone(),
            comps: self
                .comps
                .iter()
                .filter(|(b, _)| b.grade() == k)
                .map(|(b, p)| (*b, p.clone()))
                .collect(),
        }
    }

    /// `γ`: multiplies degree-`k` parts by `(-1)^k`.
    pub fn grade_involution(&self) -> DifferentialForm {
        DifferentialForm {
            manifold: self.manifold.clone(),
            comps: self
                .comps
                .iter()
                .map(|(b, p)| (*b, if b.grade() % 2 == 1 { -p } else { p.clone() }))
                .collect(),
        }
    }

    pub fn check_same(&self, other: &DifferentialForm) -> Result<()> {
        self.manifold.check_same(&other.manifold)
    }

    pub fn try_add(&self, other: &DifferentialForm) -> Result<DifferentialForm> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (b, p) in &other.comps {
            out.push(*b, p.clone())?;
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &DifferentialForm) -> Result<DifferentialForm> {
        self.try_add(&-other)
    }

    pub fn scale(&self, c: &Coeff) -> DifferentialForm {
        let mut out = DifferentialForm::zero(&self.manifold);
        for (b, p) in &self.comps {
            out.push(*b, p.scale(c)).expect("same variables");
        }
        out
    }

    /// `f · α` for a function `f`.
    pub fn mul_function(&self, f: &Polynomial) -> Result<DifferentialForm> {
        let f = f.embed(self.manifold.vars())?;
        let mut out = DifferentialForm::zero(&self.manifold);
        for (b, p) in &self.comps {
            out.push(*b, f.try_mul(p)?)?;
        }
        Ok(out)
    }

    /// Applies `op` to every coefficient.
    pub fn map_coefficients(
        &self,
        mut op: impl FnMut(&Polynomial) -> Result<Polynomial>,
    ) -> Result<DifferentialForm> {
        let mut out = DifferentialForm::zero(&self.manifold);
        for (b, p) in &self.comps {
            out.push(*b, op(p)?)?;
        }
        Ok(out)
    }

    pub fn conjugate(&self) -> DifferentialForm {
        self.map_coefficients(|p| Ok(p.conjugate()))
            .expect("conjugation is total")
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.comps
            .values()
            .map(Polynomial::max_abs_coeff)
            .fold(0.0, f64::max)
    }

    /// If `self = c · other` for a scalar `c`, returns `c`.
    pub fn ratio_to(&self, other: &DifferentialForm) -> Option<Coeff> {
        let (b, p) = other.comps.iter().next()?;
        let ratio = self.comps.get(b)?.ratio_to(p)?;
        (other.scale(&ratio) == *self).then_some(ratio)
    }

    fn blade_label(&self, b: Blade) -> String {
        let labels = self.manifold.labels();
        b.indices()
            .iter()
            .map(|&i| labels[i].as_str())
            .collect::<Vec<_>>()
            .join("^")
    }
}

impl Add for &DifferentialForm {
    type Output = DifferentialForm;
    fn add(self, rhs: &DifferentialForm) -> DifferentialForm {
        self.try_add(rhs).expect("forms on the same manifold")
    }
}

impl Sub for &DifferentialForm {
    type Output = DifferentialForm;
    fn sub(self, rhs: &DifferentialForm) -> DifferentialForm {
        self.try_sub(rhs).expect("forms on the same manifold")
    }
}

impl Neg for &DifferentialForm {
    type Output = DifferentialForm;
    fn neg(self) -> DifferentialForm {
        self.scale(&Coeff::int(-1))
    }
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|(b, p)| {
                if b.grade() == 0 {
                    format!("({p})")
                } else {
                    format!("({p}) {}", self.blade_label(*b))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize)]
struct ComponentRepr<'a> {
    blade: Vec<&'a str>,
    coeff: &'a Polynomial,
    text: String,
}

/// `{manifold, components: [{blade, coeff, text}]}` in canonical blade order.
impl Serialize for DifferentialForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let labels = self.manifold.labels();
        let comps: Vec<ComponentRepr> = self
            .comps
            .iter()
            .map(|(b, p)| ComponentRepr {
                blade: b.indices().iter().map(|&i| labels[i].as_str()).collect(),
                coeff: p,
                text: p.to_string(),
            })
            .collect();
        let mut st = s.serialize_struct("DifferentialForm", 2)?;
        st.serialize_field("manifold", self.manifold.name())?;
        st.serialize_field("components", &comps)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blade_signs() {
        let b12 = Blade::from_indices(&[0, 1]).unwrap();
        assert_eq!(Blade::single(1).wedge(Blade::single(0)), Some((-1, b12)));
        assert_eq!(Blade::single(0).wedge(Blade::single(1)), Some((1, b12)));
        assert_eq!(Blade::single(0).wedge(Blade::single(0)), None);
        let b13 = Blade::from_indices(&[0, 2]).unwrap();
        assert_eq!(b13.contract(2), Some((-1, Blade::single(0))));
        assert_eq!(b13.contract(0), Some((1, Blade::single(2))));
    }

    #[test]
    fn blade_order() {
        let all = Blade::all(3);
        assert_eq!(all.len(), 8);
        assert_eq!(all[0], Blade::SCALAR);
        assert_eq!(all[1], Blade::single(0));
        assert_eq!(all[4], Blade::from_indices(&[0, 1]).unwrap());
        assert_eq!(all[7].grade(), 3);
    }
}
