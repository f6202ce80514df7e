//! Polynomials over conjugation-paired variables.

mod derivation;
mod haar;
mod polynomial;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use derivation::Derivation;
pub use haar::haar_integral;
pub use polynomial::{Point, Polynomial};

pub const NVARS: usize = 10;

/// Variable identifiers in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Var {
    U,
    Ub,
    V,
    Vb,
    R,
    S,
    T,
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::U,
        Var::Ub,
        Var::V,
        Var::Vb,
        Var::R,
        Var::S,
        Var::T,
        Var::X,
        Var::Y,
        Var::Z,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Var {
        Var::ALL[i]
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::U => "u",
            Var::Ub => "ub",
            Var::V => "v",
            Var::Vb => "vb",
            Var::R => "r",
            Var::S => "s",
            Var::T => "t",
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
        }
    }

    pub fn conjugate(self) -> Var {
        match self {
            Var::U => Var::Ub,
            Var::Ub => Var::U,
            Var::V => Var::Vb,
            Var::Vb => Var::V,
            other => other,
        }
    }

    pub fn is_real(self) -> bool {
        self.conjugate() == self
    }

    pub fn is_su2(self) -> bool {
        matches!(self, Var::U | Var::Ub | Var::V | Var::Vb)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = Error;
    fn from_str(s: &str) -> Result<Var> {
        Var::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown variable `{s}`")))
    }
}

impl From<Var> for String {
    fn from(v: Var) -> String {
        v.name().to_string()
    }
}

impl TryFrom<String> for Var {
    type Error = Error;
    fn try_from(s: String) -> Result<Var> {
        s.parse()
    }
}

/// A conjugation-closed set of variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VariableSet(u16);

impl VariableSet {
    pub const EMPTY: VariableSet = VariableSet(0);
    pub const SU2: VariableSet = VariableSet(0b1111);
    pub const MONOPOLE: VariableSet = VariableSet(0b1_1111);
    pub const EUCLIDEAN3: VariableSet = VariableSet(0b11_1000_0000);
    /// Coordinates `t, x, y, z`.
    pub const MINKOWSKI: VariableSet = VariableSet(0b11_1100_0000);
    /// Coordinates `s, t, x, y, z`.
    pub const SPACETIME: VariableSet = VariableSet(0b11_1110_0000);

    pub fn new(vars: &[Var]) -> Result<Self> {
        let set = VariableSet(vars.iter().fold(0, |m, v| m | (1 << v.index())));
        if set.vars().any(|v| !set.contains(v.conjugate())) {
            return Err(Error::NotConjugationClosed(set.to_string()));
        }
        Ok(set)
    }

    pub fn contains(self, v: Var) -> bool {
        self.0 & (1 << v.index()) != 0
    }

    pub fn is_subset(self, other: VariableSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VariableSet) -> VariableSet {
        VariableSet(self.0 | other.0)
    }

    pub fn vars(self) -> impl Iterator<Item = Var> {
        Var::ALL.into_iter().filter(move |v| self.contains(*v))
    }

    pub fn has_su2(self) -> bool {
        VariableSet::SU2.is_subset(self)
    }
}

impl fmt::Display for VariableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.vars().map(Var::name).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

impl Serialize for VariableSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.vars().collect::<Vec<_>>().serialize(s)
    }
}

impl<'de> Deserialize<'de> for VariableSet {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let vars: Vec<Var> = Vec::deserialize(de)?;
        VariableSet::new(&vars).map_err(serde::de::Error::custom)
    }
}

/// Exponent vector indexed by [`Var::index`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(pub [i32; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var) -> Self {
        Monomial::one().with(v, 1)
    }

    pub fn from_pairs(pairs: &[(Var, i32)]) -> Result<Self> {
        let mut m = Monomial::one();
        for &(v, e) in pairs {
            m.0[v.index()] += e;
        }
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        for v in Var::ALL {
            if v != Var::R && self.exp(v) < 0 {
                return Err(Error::NegativeExponent(v));
            }
        }
        Ok(())
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0[v.index()]
    }

    pub fn with(mut self, v: Var, e: i32) -> Self {
        self.0[v.index()] = e;
        self
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> i32 {
        self.0.iter().sum()
    }

    /// Degree in `u, ub, v, vb`.
    pub fn su2_degree(&self) -> i32 {
        self.0[..4].iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        out
    }

    pub fn conjugate(&self) -> Monomial {
        let mut out = Monomial::one();
        for v in Var::ALL {
            out.0[v.conjugate().index()] = self.exp(v);
        }
        out
    }

    pub fn support(&self) -> VariableSet {
        VariableSet(
            Var::ALL
                .iter()
                .filter(|v| self.exp(**v) != 0)
                .fold(0, |m, v| m | (1 << v.index())),
        )
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded order, ties broken lexicographically with `u` most significant.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Var::ALL
            .iter()
            .filter(|v| self.exp(**v) != 0)
            .map(|v| match self.exp(*v) {
                1 => v.name().to_string(),
                e => format!("{}^{}", v.name(), e),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugation_pairs() {
        for v in Var::ALL {
            assert_eq!(v.conjugate().conjugate(), v);
        }
        assert!(Var::X.is_real());
        assert!(!Var::U.is_real());
    }

    #[test]
    fn sets_must_be_closed() {
        assert!(VariableSet::new(&[Var::U]).is_err());
        assert_eq!(
            VariableSet::new(&[Var::U, Var::Ub, Var::V, Var::Vb]).unwrap(),
            VariableSet::SU2
        );
        assert_eq!(
            VariableSet::new(&[Var::X, Var::Y, Var::Z]).unwrap(),
            VariableSet::EUCLIDEAN3
        );
        assert!(VariableSet::SU2.is_subset(VariableSet::MONOPOLE));
    }

    #[test]
    fn monomial_order_is_graded() {
        let a = Monomial::var(Var::U);
        let b = Monomial::var(Var::V).mul(&Monomial::var(Var::V));
        assert!(a < b);
        assert!(Monomial::var(Var::U) < Monomial::var(Var::Ub));
        assert!(Monomial::from_pairs(&[(Var::U, -1)]).is_err());
        assert!(Monomial::from_pairs(&[(Var::R, -2)]).is_ok());
    }
}
