use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Monomial, Var, VariableSet};
use crate::error::{Error, Result};
use crate::scalar::Coeff;

const ASSIGN_TOL: f64 = 1e-12;

/// Polynomial with [`Coeff`] coefficients.
///
/// When `sphere` is set the polynomial is kept in normal form modulo
/// `u ub + v vb = 1`: no stored monomial contains both `v` and `vb`.
/// Equality compares terms only; the flag does not take part.
#[derive(Clone, Debug)]
pub struct Polynomial {
    vars: VariableSet,
    sphere: bool,
    terms: BTreeMap<Monomial, Coeff>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

fn binomial(n: i32, k: i32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

impl Polynomial {
    pub fn zero(vars: VariableSet) -> Self {
        Polynomial {
            vars,
            sphere: false,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: VariableSet, c: impl Into<Coeff>) -> Self {
        let mut p = Polynomial::zero(vars);
        p.push(Monomial::one(), c.into());
        p
    }

    pub fn one(vars: VariableSet) -> Self {
        Polynomial::constant(vars, Coeff::one())
    }

    /// The generator `v`; panics if `v` is not in `vars`.
    pub fn var(vars: VariableSet, v: Var) -> Self {
        assert!(vars.contains(v), "variable {v} not in {vars}");
        let mut p = Polynomial::zero(vars);
        p.push(Monomial::var(v), Coeff::one());
        p
    }

    pub fn monomial(vars: VariableSet, m: Monomial, c: impl Into<Coeff>) -> Result<Self> {
        Polynomial::from_terms(vars, [(m, c.into())])
    }

    pub fn from_terms(
        vars: VariableSet,
        terms: impl IntoIterator<Item = (Monomial, Coeff)>,
    ) -> Result<Self> {
        let mut p = Polynomial::zero(vars);
        for (m, c) in terms {
            m.validate()?;
            if let Some(v) = m.support().vars().find(|v| !vars.contains(*v)) {
                return Err(Error::VariableNotInSet(v));
            }
            p.push(m, c);
        }
        Ok(p)
    }

    pub(crate) fn push(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let sum = &*old + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn vars(&self) -> VariableSet {
        self.vars
    }

    pub fn is_sphere(&self) -> bool {
        self.sphere
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.terms.values().all(Coeff::is_exact)
    }

    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.len() {
            0 => Some(Coeff::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(Coeff::abs).fold(0.0, f64::max)
    }

    pub fn degree(&self) -> Option<i32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Whether every term has degree `d` in `u, ub, v, vb`.
    pub fn is_su2_homogeneous(&self, d: i32) -> bool {
        self.terms.keys().all(|m| m.su2_degree() == d)
    }

    /// Union of the supports of all terms.
    pub fn support(&self) -> VariableSet {
        self.terms
            .keys()
            .fold(VariableSet::EMPTY, |s, m| s.union(m.support()))
    }

    /// Reduces modulo the unit-sphere relation and marks the result.
    pub fn normal_form(&self) -> Polynomial {
        let mut out = Polynomial {
            vars: self.vars,
            sphere: true,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            let k = m.exp(Var::V).min(m.exp(Var::Vb));
            if k == 0 {
                out.push(*m, c.clone());
                continue;
            }
            let base = m
                .with(Var::V, m.exp(Var::V) - k)
                .with(Var::Vb, m.exp(Var::Vb) - k);
            for i in 0..=k {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let mono = base
                    .with(Var::U, base.exp(Var::U) + i)
                    .with(Var::Ub, base.exp(Var::Ub) + i);
                out.push(mono, c * &Coeff::int(sign * binomial(k, i)));
            }
        }
        out
    }

    fn settle(mut self, sphere: bool) -> Polynomial {
        if sphere {
            self = self.normal_form();
        }
        self
    }

    /// Moves the polynomial into a larger variable set.
    pub fn embed(&self, vars: VariableSet) -> Result<Polynomial> {
        if !self.vars.is_subset(vars) {
            return Err(Error::MismatchedVariables {
                left: self.vars.to_string(),
                right: vars.to_string(),
            });
        }
        Ok(Polynomial {
            vars,
            ..self.clone()
        })
    }

    fn check_vars(&self, other: &Polynomial) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::MismatchedVariables {
                left: self.vars.to_string(),
                right: other.vars.to_string(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.push(*m, c.clone());
        }
        let sphere = self.sphere || other.sphere;
        Ok(if sphere && !(self.sphere && other.sphere) {
            out.settle(true)
        } else {
            Polynomial { sphere, ..out }
        })
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_vars(other)?;
        let mut out = Polynomial::zero(self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.push(ma.mul(mb), ca * cb);
            }
        }
        Ok(out.settle(self.sphere || other.sphere))
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        let mut out = Polynomial {
            vars: self.vars,
            sphere: self.sphere,
            terms: BTreeMap::new(),
        };
        for (m, a) in &self.terms {
            out.push(*m, a * c);
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        let mut out = Polynomial {
            vars: self.vars,
            sphere: false,
            terms: BTreeMap::new(),
        };
        for (k, a) in &self.terms {
            out.push(k.mul(m), a.clone());
        }
        out.settle(self.sphere)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial {
            sphere: self.sphere,
            ..Polynomial::one(self.vars)
        };
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Conjugates coefficients and swaps paired variables.
    pub fn conjugate(&self) -> Polynomial {
        let mut out = Polynomial {
            vars: self.vars,
            sphere: self.sphere,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            out.push(m.conjugate(), c.conj());
        }
        out
    }

    /// Formal partial derivative, all generators treated as independent.
    pub fn partial(&self, v: Var) -> Polynomial {
        let mut out = Polynomial {
            vars: self.vars,
            sphere: false,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e != 0 {
                out.push(m.with(v, e - 1), c * &Coeff::int(e as i64));
            }
        }
        out.settle(self.sphere)
    }

    /// All coefficients converted to floating point.
    pub fn to_approx(&self) -> Polynomial {
        Polynomial {
            vars: self.vars,
            sphere: self.sphere,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c.to_approx()))
                .collect(),
        }
    }

    /// If `self = c · other` for a scalar `c`, returns `c`.
    pub fn ratio_to(&self, other: &Polynomial) -> Option<Coeff> {
        let (m, c) = other.terms.iter().next()?;
        let ratio = &self.coeff(m) / c;
        (other.scale(&ratio) == *self).then_some(ratio)
    }

    pub fn eval(&self, point: &Point) -> Result<Complex64> {
        let mut values = [Complex64::new(0.0, 0.0); super::NVARS];
        for v in self.support().vars() {
            values[v.index()] = point.resolve(v)?;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_complex();
            for v in m.support().vars() {
                let e = m.exp(v);
                let x = values[v.index()];
                if e < 0 && x.norm() == 0.0 {
                    return Err(Error::Singular(v));
                }
                t *= x.powi(e);
            }
            acc += t;
        }
        Ok(acc)
    }
}

/// Assignment of complex values to variables.
#[derive(Clone, Debug, Default)]
pub struct Point(BTreeMap<Var, Complex64>);

impl Point {
    pub fn new() -> Self {
        Point::default()
    }

    pub fn with(mut self, v: Var, value: Complex64) -> Self {
        self.0.insert(v, value);
        self
    }

    pub fn with_real(self, v: Var, value: f64) -> Self {
        self.with(v, Complex64::new(value, 0.0))
    }

    /// A point of S³ given by `u` and `v`; conjugates are inferred.
    pub fn su2(u: Complex64, v: Complex64) -> Self {
        Point::new().with(Var::U, u).with(Var::V, v)
    }

    fn resolve(&self, v: Var) -> Result<Complex64> {
        let direct = self.0.get(&v).copied();
        if v.is_real() {
            let x = direct.ok_or(Error::UnassignedVariable(v))?;
            if x.im.abs() > ASSIGN_TOL * x.norm().max(1.0) {
                return Err(Error::NonRealAssignment(v));
            }
            return Ok(x);
        }
        let partner = self.0.get(&v.conjugate()).map(|z| z.conj());
        match (direct, partner) {
            (Some(a), Some(b)) if (a - b).norm() > ASSIGN_TOL * a.norm().max(1.0) => {
                Err(Error::NonConjugateAssignment(v))
            }
            (Some(a), _) | (None, Some(a)) => Ok(a),
            (None, None) => Err(Error::UnassignedVariable(v)),
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&Coeff::int(-1))
    }
}

macro_rules! forward {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                self.$m(&rhs)
            }
        }
    };
}

forward!(Add, add);
forward!(Sub, sub);
forward!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// `coeff * u^a ub^b v^c vb^d + ...` in canonical term order.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut text = c.render();
            if c.is_compound() {
                text = format!("({text})");
            }
            let negative = text.starts_with('-');
            let body = if negative { &text[1..] } else { &text[..] };
            let term = if m.is_one() {
                body.to_string()
            } else if body == "1" {
                m.to_string()
            } else {
                format!("{body} * {m}")
            };
            match (k, negative) {
                (0, true) => write!(f, "-{term}")?,
                (0, false) => write!(f, "{term}")?,
                (_, true) => write!(f, " - {term}")?,
                (_, false) => write!(f, " + {term}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    monomial: BTreeMap<Var, i32>,
    coeff: Coeff,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    vars: VariableSet,
    sphere: bool,
    terms: Vec<TermRepr>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            vars: self.vars,
            sphere: self.sphere,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermRepr {
                    monomial: Var::ALL
                        .iter()
                        .filter(|v| m.exp(**v) != 0)
                        .map(|v| (*v, m.exp(*v)))
                        .collect(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(de)?;
        let terms = repr
            .terms
            .into_iter()
            .map(|t| {
                let pairs: Vec<(Var, i32)> = t.monomial.into_iter().collect();
                Monomial::from_pairs(&pairs).map(|m| (m, t.coeff))
            })
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        let p = Polynomial::from_terms(repr.vars, terms).map_err(serde::de::Error::custom)?;
        Ok(if repr.sphere { p.normal_form() } else { p })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn su2(v: Var) -> Polynomial {
        Polynomial::var(VariableSet::SU2, v)
    }

    #[test]
    fn additive_cancellation() {
        let p = &(&su2(Var::U) + &su2(Var::V)) + &(-su2(Var::V));
        assert_eq!(p, su2(Var::U));
        assert_eq!(&p + &Polynomial::zero(VariableSet::SU2), p);
    }

    #[test]
    fn sphere_relation() {
        let uu = &su2(Var::U) * &su2(Var::Ub);
        let vv = (&su2(Var::V) * &su2(Var::Vb)).normal_form();
        assert_eq!(&uu + &vv, Polynomial::one(VariableSet::SU2).normal_form());
        let prod = su2(Var::V).normal_form() * su2(Var::Vb);
        assert_eq!(prod, Polynomial::one(VariableSet::SU2) - uu);
    }

    #[test]
    fn difference_of_squares() {
        let (u, v) = (su2(Var::U), su2(Var::V));
        assert_eq!(&(&u + &v) * &(&u - &v), &u.pow(2) - &v.pow(2));
    }

    #[test]
    fn mismatched_sets_error() {
        let x = Polynomial::var(VariableSet::EUCLIDEAN3, Var::X);
        assert!(matches!(
            x.try_add(&su2(Var::U)),
            Err(Error::MismatchedVariables { .. })
        ));
        assert!(x.embed(VariableSet::SU2).is_err());
    }

    #[test]
    fn conjugation() {
        let p = su2(Var::U).scale(&Coeff::i());
        assert_eq!(p.conjugate(), su2(Var::Ub).scale(&-Coeff::i()));
        let x = Polynomial::var(VariableSet::EUCLIDEAN3, Var::X);
        assert_eq!(x.conjugate(), x);
        let q = su2(Var::U).pow(2) * su2(Var::Vb);
        assert_eq!(q.conjugate(), su2(Var::Ub).pow(2) * su2(Var::V));
    }

    #[test]
    fn evaluation() {
        let p = su2(Var::U) * su2(Var::Ub) + su2(Var::V) * su2(Var::Vb);
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        assert_eq!(p.eval(&Point::su2(one, zero)).unwrap(), one);
        let z = Complex64::new(0.6, 0.8);
        assert_eq!(su2(Var::U).eval(&Point::new().with(Var::U, z)).unwrap(), z);
        let x3 = su2(Var::U) * su2(Var::Ub) - su2(Var::V) * su2(Var::Vb);
        assert_eq!(x3.eval(&Point::su2(zero, one)).unwrap(), -one);
    }

    #[test]
    fn evaluation_errors() {
        let p = su2(Var::U) * su2(Var::Ub);
        assert_eq!(
            p.eval(&Point::new()),
            Err(Error::UnassignedVariable(Var::U))
        );
        let bad = Point::new()
            .with(Var::U, Complex64::new(0.0, 1.0))
            .with(Var::Ub, Complex64::new(0.0, 1.0));
        assert!(matches!(
            p.eval(&bad),
            Err(Error::NonConjugateAssignment(_))
        ));
        let r = Polynomial::monomial(
            VariableSet::MONOPOLE,
            Monomial::from_pairs(&[(Var::R, -1)]).unwrap(),
            1,
        )
        .unwrap();
        assert_eq!(
            r.eval(&Point::new().with_real(Var::R, 0.0)),
            Err(Error::Singular(Var::R))
        );
        assert!((r.eval(&Point::new().with_real(Var::R, 4.0)).unwrap().re - 0.25).abs() < 1e-15);
    }

    #[test]
    fn display_and_json() {
        let p = su2(Var::U).scale(&Coeff::ratio(1, 2)) - su2(Var::Vb).pow(2)
            + Polynomial::constant(VariableSet::SU2, Coeff::i());
        assert_eq!(p.to_string(), "i + 1/2 * u - vb^2");
        let json = serde_json::to_string(&p).unwrap();
        let back: Polynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}
