use std::collections::BTreeMap;
use std::fmt;

use super::{Polynomial, Var, VariableSet};
use crate::error::{Error, Result};
use crate::scalar::Coeff;

/// A derivation of the polynomial ring, fixed by its values on generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    label: String,
    images: BTreeMap<Var, Polynomial>,
}

impl Derivation {
    pub fn new(
        label: impl Into<String>,
        images: impl IntoIterator<Item = (Var, Polynomial)>,
    ) -> Self {
        Derivation {
            label: label.into(),
            images: images.into_iter().collect(),
        }
    }

    /// `∂/∂v` on `vars`, killing every other generator.
    pub fn partial(vars: VariableSet, v: Var) -> Self {
        let images = vars.vars().map(|w| {
            let c = if w == v { Coeff::one() } else { Coeff::zero() };
            (w, Polynomial::constant(vars, c))
        });
        Derivation::new(format!("d/d{v}"), images)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn image(&self, v: Var) -> Option<&Polynomial> {
        self.images.get(&v)
    }

    pub fn domain(&self) -> impl Iterator<Item = Var> + '_ {
        self.images.keys().copied()
    }

    /// Leibniz extension to `p`.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        let mut images: BTreeMap<Var, Polynomial> = BTreeMap::new();
        for v in p.support().vars() {
            let img = self.images.get(&v).ok_or_else(|| Error::MissingImage {
                label: self.label.clone(),
                var: v,
            })?;
            images.insert(v, img.embed(p.vars())?);
        }
        let mut out = Polynomial::zero(p.vars());
        for (m, c) in p.terms() {
            for (v, img) in &images {
                let e = m.exp(*v);
                if e == 0 {
                    continue;
                }
                let rest = m.with(*v, e - 1);
                let factor = c * &Coeff::int(e as i64);
                for (mi, ci) in img.terms() {
                    out.push(mi.mul(&rest), ci * &factor);
                }
            }
        }
        let sphere = p.is_sphere() || images.values().any(Polynomial::is_sphere);
        Ok(if sphere { out.normal_form() } else { out })
    }

    /// Repeated application.
    pub fn apply_n(&self, p: &Polynomial, times: usize) -> Result<Polynomial> {
        (0..times).try_fold(p.clone(), |acc, _| self.apply(&acc))
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &Derivation) -> Result<Derivation> {
        let mut images = BTreeMap::new();
        for v in self.images.keys().chain(other.images.keys()) {
            if images.contains_key(v) {
                continue;
            }
            let a = other.images.get(v).map(|p| self.apply(p)).transpose()?;
            let b = self.images.get(v).map(|p| other.apply(p)).transpose()?;
            let img = match (a, b) {
                (Some(a), Some(b)) => a.try_sub(&b)?,
                _ => {
                    return Err(Error::MissingImage {
                        label: format!("[{}, {}]", self.label, other.label),
                        var: *v,
                    })
                }
            };
            images.insert(*v, img);
        }
        Ok(Derivation {
            label: format!("[{}, {}]", self.label, other.label),
            images,
        })
    }

    /// `Σ cᵢ Dᵢ` with polynomial coefficients.
    pub fn combination(
        label: impl Into<String>,
        parts: &[(Polynomial, &Derivation)],
    ) -> Result<Derivation> {
        let mut images: BTreeMap<Var, Polynomial> = BTreeMap::new();
        for (c, d) in parts {
            for (v, img) in &d.images {
                let vars = c.vars().union(img.vars());
                let term = c.embed(vars)?.try_mul(&img.embed(vars)?)?;
                let entry = images.remove(v);
                let sum = match entry {
                    Some(prev) => {
                        let vars = prev.vars().union(vars);
                        prev.embed(vars)?.try_add(&term.embed(vars)?)?
                    }
                    None => term,
                };
                images.insert(*v, sum);
            }
        }
        Ok(Derivation {
            label: label.into(),
            images,
        })
    }

    pub fn scale(&self, c: &Coeff) -> Derivation {
        Derivation {
            label: self.label.clone(),
            images: self.images.iter().map(|(v, p)| (*v, p.scale(c))).collect(),
        }
    }

    /// Equality of the action on every generator, modulo the sphere relation.
    pub fn same_action(&self, other: &Derivation) -> bool {
        let keys: Vec<Var> = self
            .images
            .keys()
            .chain(other.images.keys())
            .copied()
            .collect();
        keys.iter()
            .all(|v| match (self.images.get(v), other.images.get(v)) {
                (Some(a), Some(b)) => {
                    let vars = a.vars().union(b.vars());
                    match (a.embed(vars), b.embed(vars)) {
                        (Ok(a), Ok(b)) => a.normal_form() == b.normal_form(),
                        _ => false,
                    }
                }
                _ => false,
            })
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.label)?;
        for (v, p) in &self.images {
            write!(f, " {v} -> {p};")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x3() -> Derivation {
        let s = VariableSet::SU2;
        let h = Coeff::gaussian((0, 1), (1, 2));
        Derivation::new(
            "X3",
            [
                (Var::U, Polynomial::var(s, Var::U).scale(&-&h)),
                (Var::V, Polynomial::var(s, Var::V).scale(&-&h)),
                (Var::Ub, Polynomial::var(s, Var::Ub).scale(&h)),
                (Var::Vb, Polynomial::var(s, Var::Vb).scale(&h)),
            ],
        )
    }

    #[test]
    fn leibniz_on_generators() {
        let s = VariableSet::SU2;
        let d = x3();
        let v = Polynomial::var(s, Var::V);
        assert_eq!(
            d.apply(&v).unwrap(),
            v.scale(&Coeff::gaussian((0, 1), (-1, 2)))
        );
        assert!(d.apply(&Polynomial::one(s)).unwrap().is_zero());
        let uvb = Polynomial::var(s, Var::U) * Polynomial::var(s, Var::Vb);
        assert!(d.apply(&uvb).unwrap().is_zero());
    }

    #[test]
    fn missing_image_is_an_error() {
        let p = Polynomial::var(VariableSet::MONOPOLE, Var::R);
        assert!(matches!(x3().apply(&p), Err(Error::MissingImage { .. })));
    }

    #[test]
    fn partial_derivative() {
        let e = VariableSet::EUCLIDEAN3;
        let x = Polynomial::var(e, Var::X);
        let dx = Derivation::partial(e, Var::X);
        assert_eq!(dx.apply(&x.pow(2)).unwrap(), x.scale(&Coeff::int(2)));
    }
}
