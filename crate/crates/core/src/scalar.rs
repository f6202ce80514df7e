//! Exact and approximate scalars.
//!
//! [`Surd`] is an element of the multi-quadratic field ℚ(i, √2, √3, √5, …):
//! a finite sum `Σ q_d √d` over squarefree integers `d`, where `√-1 = i` and
//! `√-d = i√d`. The radicals of distinct squarefree integers are linearly
//! independent over ℚ, so the sorted term list is a canonical form and
//! equality is structural.
//!
//! [`Coeff`] wraps a `Surd` or an `f64` complex number. Arithmetic stays exact
//! until an approximate value enters, after which it stays approximate.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Ordering key for radicands: 1, -1, 2, -2, 3, -3, ...
fn radicand_key(d: i64) -> (u64, bool) {
    (d.unsigned_abs(), d < 0)
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Splits `n` as `g² · s` with `s` squarefree. Returns `(g, s)`.
fn square_split(mut n: u64) -> (u64, u64) {
    let mut g = 1u64;
    let mut s = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            g *= p;
        }
        if e % 2 == 1 {
            s *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (g, s * n)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `√a · √b = factor · √d` for squarefree `a`, `b`.
fn radical_product(a: i64, b: i64) -> (i64, i64) {
    let (ua, ub) = (a.unsigned_abs(), b.unsigned_abs());
    let g = gcd_u64(ua, ub);
    let s = ((ua / g) * (ub / g)) as i64;
    let g = g as i64;
    match (a < 0, b < 0) {
        (true, true) => (-g, s),
        (true, false) | (false, true) => (g, -s),
        (false, false) => (g, s),
    }
}

/// Exact element of ℚ(i, √2, √3, …).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Surd {
    terms: Vec<(i64, BigRational)>,
}

impl Surd {
    pub fn zero() -> Self {
        Surd { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Surd::from_rational(BigRational::one())
    }

    pub fn i() -> Self {
        Surd {
            terms: vec![(-1, BigRational::one())],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Surd::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Surd::from_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_rational(q: BigRational) -> Self {
        if q.is_zero() {
            Surd::zero()
        } else {
            Surd {
                terms: vec![(1, q)],
            }
        }
    }

    /// Gaussian rational `re + i·im`.
    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        Surd::from_rational(re) + Surd::from_rational(im) * Surd::i()
    }

    /// `q · √d` for an arbitrary nonzero integer `d`.
    pub fn radical(q: BigRational, d: i64) -> Self {
        assert!(d != 0, "radicand must be nonzero");
        let (g, s) = square_split(d.unsigned_abs());
        let d = if d < 0 { -(s as i64) } else { s as i64 };
        let q = q * BigRational::from_integer((g as i64).into());
        if q.is_zero() {
            return Surd::zero();
        }
        Surd {
            terms: vec![(d, q)],
        }
    }

    /// Principal square root of a rational; negative input yields `i√|q|`.
    ///
    /// Returns `None` when numerator or denominator leave the `i64` range.
    pub fn sqrt_rational(q: &BigRational) -> Option<Self> {
        if q.is_zero() {
            return Some(Surd::zero());
        }
        let num = q.numer().abs().to_u64()?;
        let den = q.denom().to_u64()?;
        // √(n/m) = √(n m) / m
        let prod = num.checked_mul(den)?;
        let (g, s) = square_split(prod);
        let s = i64::try_from(s).ok()?;
        let d = if q.is_negative() { -s } else { s };
        let coeff = BigRational::new(BigInt::from(g), BigInt::from(den));
        Some(Surd {
            terms: vec![(d, coeff)],
        })
    }

    fn from_unsorted(mut raw: Vec<(i64, BigRational)>) -> Self {
        raw.sort_by_key(|(d, _)| radicand_key(*d));
        let mut terms: Vec<(i64, BigRational)> = Vec::with_capacity(raw.len());
        for (d, q) in raw {
            match terms.last_mut() {
                Some((ld, lq)) if *ld == d => *lq += q,
                _ => terms.push((d, q)),
            }
        }
        terms.retain(|(_, q)| !q.is_zero());
        Surd { terms }
    }

    pub fn terms(&self) -> &[(i64, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 1 && self.terms[0].1.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.iter().all(|(d, _)| *d == 1)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(1, q)] => Some(q.clone()),
            _ => None,
        }
    }

    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|(d, _)| *d > 0)
    }

    /// If `self = ±√q` for a rational `q ≥ 0`, returns the signed square `±q`.
    pub fn signed_square(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(d, q)] if *d > 0 => {
                let sq = q * q * BigRational::from_integer((*d).into());
                Some(if q.is_negative() { -sq } else { sq })
            }
            _ => None,
        }
    }

    pub fn conj(&self) -> Self {
        Surd {
            terms: self
                .terms
                .iter()
                .map(|(d, q)| (*d, if *d < 0 { -q.clone() } else { q.clone() }))
                .collect(),
        }
    }

    /// Real part (the terms with positive radicand).
    pub fn re(&self) -> Self {
        Surd {
            terms: self.terms.iter().filter(|(d, _)| *d > 0).cloned().collect(),
        }
    }

    /// Imaginary part, as a real surd.
    pub fn im(&self) -> Self {
        let raw = self
            .terms
            .iter()
            .filter(|(d, _)| *d < 0)
            .map(|(d, q)| (-d, q.clone()))
            .collect();
        Surd::from_unsorted(raw)
    }

    /// Field automorphism flipping the sign of every radical divisible by `p`
    /// (`p = -1` flips the imaginary unit).
    fn flip(&self, p: i64) -> Self {
        let hit = |d: i64| {
            if p == -1 {
                d < 0
            } else {
                d.unsigned_abs().is_multiple_of(p as u64)
            }
        };
        Surd {
            terms: self
                .terms
                .iter()
                .map(|(d, q)| (*d, if hit(*d) { -q.clone() } else { q.clone() }))
                .collect(),
        }
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(Surd::from_rational(q.recip()));
        }
        let (d, _) = self.terms.iter().find(|(d, _)| *d != 1)?;
        let p = if *d < 0 {
            -1
        } else {
            prime_factors(d.unsigned_abs())[0] as i64
        };
        let partner = self.flip(p);
        let norm = self * &partner;
        Some(partner * norm.recip()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Surd::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_complex(&self) -> Complex64 {
        let mut re = 0.0;
        let mut im = 0.0;
        for (d, q) in &self.terms {
            let v = q.to_f64().unwrap_or(f64::NAN) * (d.unsigned_abs() as f64).sqrt();
            if *d < 0 {
                im += v;
            } else {
                re += v;
            }
        }
        Complex64::new(re, im)
    }

    /// Sign of a real surd, decided by exact squaring where needed.
    pub fn real_sign(&self) -> Option<Ordering> {
        if !self.is_real() {
            return None;
        }
        if let Some(sq) = self.signed_square() {
            return Some(sq.cmp(&BigRational::zero()));
        }
        // Several radicals: float evaluation is reliable unless the value is
        // tiny, and a nonzero element of a number field is bounded away from 0
        // at the sizes we handle.
        let v = self.to_complex().re;
        Some(if v > 0.0 {
            Ordering::Greater
        } else if v < 0.0 {
            Ordering::Less
        } else {
            Ordering::Equal
        })
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (d, q)) in self.terms.iter().enumerate() {
            let neg = q.is_negative();
            let mag = q.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let radical = match *d {
                1 => String::new(),
                -1 => "i".to_string(),
                d if d > 0 => format!("sqrt({d})"),
                d => format!("i*sqrt({})", -d),
            };
            match (mag.is_one(), radical.is_empty()) {
                (_, true) => write!(f, "{}", fmt_rational(&mag))?,
                (true, false) => write!(f, "{radical}")?,
                (false, false) => write!(f, "{}*{radical}", fmt_rational(&mag))?,
            }
        }
        Ok(())
    }
}

impl Add for &Surd {
    type Output = Surd;
    fn add(self, rhs: &Surd) -> Surd {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < rhs.terms.len() {
            let ord = match (self.terms.get(i), rhs.terms.get(j)) {
                (Some(a), Some(b)) => radicand_key(a.0).cmp(&radicand_key(b.0)),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(rhs.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let q = &self.terms[i].1 + &rhs.terms[j].1;
                    if !q.is_zero() {
                        out.push((self.terms[i].0, q));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Surd { terms: out }
    }
}

impl Mul for &Surd {
    type Output = Surd;
    fn mul(self, rhs: &Surd) -> Surd {
        if self.is_zero() || rhs.is_zero() {
            return Surd::zero();
        }
        if self.terms.len() == 1
            && rhs.terms.len() == 1
            && self.terms[0].0 == 1
            && rhs.terms[0].0 == 1
        {
            return Surd {
                terms: vec![(1, &self.terms[0].1 * &rhs.terms[0].1)],
            };
        }
        let mut raw = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (da, qa) in &self.terms {
            for (db, qb) in &rhs.terms {
                let (g, d) = radical_product(*da, *db);
                raw.push((d, qa * qb * BigRational::from_integer(g.into())));
            }
        }
        Surd::from_unsorted(raw)
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            terms: self.terms.iter().map(|(d, q)| (*d, -q.clone())).collect(),
        }
    }
}

impl Sub for &Surd {
    type Output = Surd;
    fn sub(self, rhs: &Surd) -> Surd {
        self + &(-rhs)
    }
}

macro_rules! forward_binop {
    ($ty:ty, $tr:ident, $m:ident) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty {
                (&self).$m(rhs)
            }
        }
        impl $tr<$ty> for &$ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Surd, Add, add);
forward_binop!(Surd, Sub, sub);
forward_binop!(Surd, Mul, mul);

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        -&self
    }
}

impl Serialize for Surd {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(i64, String)> = self
            .terms
            .iter()
            .map(|(d, q)| (*d, fmt_rational(q)))
            .collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Surd {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let pairs: Vec<(i64, String)> = Vec::deserialize(de)?;
        let mut acc = Surd::zero();
        for (d, q) in pairs {
            if d == 0 {
                return Err(serde::de::Error::custom("radicand 0"));
            }
            let q = BigRational::from_str(&q).map_err(serde::de::Error::custom)?;
            acc = acc + Surd::radical(q, d);
        }
        Ok(acc)
    }
}

/// Polynomial coefficient: exact surd or floating complex number.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coeff {
    Exact(Surd),
    Approx(#[serde(with = "complex_pair")] Complex64),
}

mod complex_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(c: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [c.re, c.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(de)?;
        Ok(Complex64::new(re, im))
    }
}

impl Default for Coeff {
    fn default() -> Self {
        Coeff::zero()
    }
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::Exact(Surd::zero())
    }

    pub fn one() -> Self {
        Coeff::Exact(Surd::one())
    }

    pub fn i() -> Self {
        Coeff::Exact(Surd::i())
    }

    pub fn int(n: i64) -> Self {
        Coeff::Exact(Surd::from_int(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Coeff::Exact(Surd::from_ratio(num, den))
    }

    pub fn rational(q: BigRational) -> Self {
        Coeff::Exact(Surd::from_rational(q))
    }

    /// `(re_num/re_den) + i (im_num/im_den)`
    pub fn gaussian(re: (i64, i64), im: (i64, i64)) -> Self {
        Coeff::ratio(re.0, re.1) + Coeff::ratio(im.0, im.1) * Coeff::i()
    }

    pub fn approx(c: Complex64) -> Self {
        Coeff::Approx(c)
    }

    pub fn real(x: f64) -> Self {
        Coeff::Approx(Complex64::new(x, 0.0))
    }

    /// Exact `√q`; `None` if `q` is too large to factor.
    pub fn sqrt_rational(q: &BigRational) -> Option<Self> {
        Surd::sqrt_rational(q).map(Coeff::Exact)
    }

    pub fn sqrt_ratio(num: i64, den: i64) -> Self {
        Coeff::sqrt_rational(&BigRational::new(num.into(), den.into())).expect("small radicand")
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Coeff::Exact(_))
    }

    pub fn as_surd(&self) -> Option<&Surd> {
        match self {
            Coeff::Exact(s) => Some(s),
            Coeff::Approx(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_surd().and_then(Surd::as_rational)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Exact(s) => s.is_zero(),
            Coeff::Approx(c) => c.re == 0.0 && c.im == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Exact(s) => s.is_one(),
            Coeff::Approx(c) => c.re == 1.0 && c.im == 0.0,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Coeff::Exact(s) => s.to_complex(),
            Coeff::Approx(c) => *c,
        }
    }

    pub fn to_approx(&self) -> Coeff {
        Coeff::Approx(self.to_complex())
    }

    pub fn abs(&self) -> f64 {
        self.to_complex().norm()
    }

    pub fn conj(&self) -> Self {
        match self {
            Coeff::Exact(s) => Coeff::Exact(s.conj()),
            Coeff::Approx(c) => Coeff::Approx(c.conj()),
        }
    }

    pub fn recip(&self) -> Option<Self> {
        match self {
            Coeff::Exact(s) => s.recip().map(Coeff::Exact),
            Coeff::Approx(c) if c.norm() != 0.0 => Some(Coeff::Approx(c.inv())),
            Coeff::Approx(_) => None,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        match self {
            Coeff::Exact(s) => Coeff::Exact(s.pow(e)),
            Coeff::Approx(c) => Coeff::Approx(c.powu(e)),
        }
    }

    /// Exact decimal-free rendering when exact, else 17 significant digits.
    pub fn render(&self) -> String {
        match self {
            Coeff::Exact(s) => s.to_string(),
            Coeff::Approx(c) => {
                if c.im == 0.0 {
                    format!("{:.16e}", c.re)
                } else {
                    format!("{:.16e}{:+.16e}*i", c.re, c.im)
                }
            }
        }
    }

    /// Whether the rendering needs parentheses when used as a factor.
    pub fn is_compound(&self) -> bool {
        match self {
            Coeff::Exact(s) => s.terms().len() > 1,
            Coeff::Approx(c) => c.im != 0.0,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl From<Surd> for Coeff {
    fn from(s: Surd) -> Self {
        Coeff::Exact(s)
    }
}

impl From<i64> for Coeff {
    fn from(n: i64) -> Self {
        Coeff::int(n)
    }
}

impl From<BigRational> for Coeff {
    fn from(q: BigRational) -> Self {
        Coeff::rational(q)
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Exact(a), Coeff::Exact(b)) => Coeff::Exact(a + b),
            _ => Coeff::Approx(self.to_complex() + rhs.to_complex()),
        }
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Exact(a), Coeff::Exact(b)) => Coeff::Exact(a - b),
            _ => Coeff::Approx(self.to_complex() - rhs.to_complex()),
        }
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Exact(a), Coeff::Exact(b)) => Coeff::Exact(a * b),
            _ => Coeff::Approx(self.to_complex() * rhs.to_complex()),
        }
    }
}

impl Div for &Coeff {
    type Output = Coeff;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Coeff) -> Coeff {
        self * &rhs.recip().expect("division by zero coefficient")
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Exact(a) => Coeff::Exact(-a),
            Coeff::Approx(c) => Coeff::Approx(-c),
        }
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

forward_binop!(Coeff, Add, add);
forward_binop!(Coeff, Sub, sub);
forward_binop!(Coeff, Mul, mul);
forward_binop!(Coeff, Div, div);

/// A half-integer `k/2`, stored as its double.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct HalfInt(i32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);

    pub const fn from_twice(twice: i32) -> Self {
        HalfInt(twice)
    }

    pub const fn int(n: i32) -> Self {
        HalfInt(2 * n)
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn to_rational(self) -> BigRational {
        BigRational::new(self.0.into(), 2.into())
    }

    pub fn to_coeff(self) -> Coeff {
        Coeff::ratio(self.0 as i64, 2)
    }

    /// `self, self-1, ..., -self` for `self ≥ 0`.
    pub fn descending_multiplet(self) -> impl Iterator<Item = HalfInt> {
        let top = self.0;
        (0..=top).map(move |k| HalfInt(top - 2 * k))
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl From<HalfInt> for String {
    fn from(h: HalfInt) -> String {
        h.to_string()
    }
}

impl TryFrom<String> for HalfInt {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

impl FromStr for HalfInt {
    type Err = String;

    /// Accepts `p/2`, integers, and decimals that are multiples of 1/2.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: i32 = num
                .trim()
                .parse()
                .map_err(|_| format!("bad half-integer `{s}`"))?;
            return match den.trim() {
                "2" => Ok(HalfInt(num)),
                "1" => Ok(HalfInt(2 * num)),
                _ => Err(format!("`{s}` is not a half-integer")),
            };
        }
        if let Ok(n) = s.parse::<i32>() {
            return Ok(HalfInt(2 * n));
        }
        let x: f64 = s.parse().map_err(|_| format!("bad half-integer `{s}`"))?;
        let twice = (2.0 * x).round();
        if (2.0 * x - twice).abs() > 1e-12 {
            return Err(format!("`{s}` is not a half-integer"));
        }
        Ok(HalfInt(twice as i32))
    }
}

/// Parses an exact rational from `p/q`, an integer, or a finite decimal.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if s.contains('/') {
        return BigRational::from_str(s).map_err(|e| format!("bad rational `{s}`: {e}"));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(k) => (
            &s[..k],
            s[k + 1..]
                .parse::<i32>()
                .map_err(|_| format!("bad number `{s}`"))?,
        ),
        None => (s, 0),
    };
    let neg = mantissa.starts_with('-');
    let body = mantissa.trim_start_matches(['-', '+']);
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(format!("bad number `{s}`"));
    }
    let mut value =
        BigRational::from_integer(BigInt::from_str(&digits).map_err(|e| e.to_string())?);
    let scale = exp - frac_part.len() as i32;
    let ten = BigRational::from_integer(10.into());
    for _ in 0..scale.unsigned_abs() {
        value = if scale > 0 {
            value * &ten
        } else {
            value / &ten
        };
    }
    Ok(if neg { -value } else { value })
}
