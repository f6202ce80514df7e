//! Independent numeric and combinatorial oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use dkforms::exterior::Blade;
use dkforms::{Coeff, DifferentialForm, HalfInt, Polynomial, Var};

/// Gauss–Legendre nodes and weights on [0, 1].
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push(((1.0 - x) / 2.0, w / 2.0));
    }
    out
}

/// Evaluates `p` at `(u, v)` on S³ term by term.
pub fn eval_su2(p: &Polynomial, u: Complex64, v: Complex64) -> Complex64 {
    let vals = [
        (Var::U, u),
        (Var::Ub, u.conj()),
        (Var::V, v),
        (Var::Vb, v.conj()),
    ];
    p.terms()
        .map(|(m, c)| {
            vals.iter()
                .fold(c.to_complex(), |acc, (var, x)| acc * x.powi(m.exp(*var)))
        })
        .sum()
}

/// Haar integral over S³ by quadrature in Hopf coordinates
/// `u = √(1−t) e^{iφ}, v = √t e^{iχ}` where the measure is `dt dφ dχ / 4π²`.
pub fn haar_quadrature(p: &Polynomial) -> Complex64 {
    let nodes = gauss_legendre(16);
    let phases = 16;
    let mut acc = Complex64::zero();
    for &(t, w) in &nodes {
        for a in 0..phases {
            for b in 0..phases {
                let phi = 2.0 * PI * a as f64 / phases as f64;
                let chi = 2.0 * PI * b as f64 / phases as f64;
                let u = Complex64::from_polar((1.0 - t).sqrt(), phi);
                let v = Complex64::from_polar(t.sqrt(), chi);
                acc += eval_su2(p, u, v) * w;
            }
        }
    }
    acc / (phases * phases) as f64
}

fn factorial(n: i32) -> BigInt {
    assert!(n >= 0, "negative factorial argument");
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Clebsch–Gordan coefficient by the Racah closed form, as `(sign, square)`.
pub fn racah_cg(
    j1: HalfInt,
    j2: HalfInt,
    m1: HalfInt,
    m2: HalfInt,
    j: HalfInt,
    m: HalfInt,
) -> (i32, BigRational) {
    let (a, b, c) = (j1.twice(), j2.twice(), j.twice());
    let (x, y, z) = (m1.twice(), m2.twice(), m.twice());
    let zero = (0, BigRational::zero());
    if x + y != z || a + b < c || (a - b).abs() > c || (a + b + c) % 2 != 0 {
        return zero;
    }
    if x.abs() > a || y.abs() > b || z.abs() > c {
        return zero;
    }
    let h = |t: i32| t / 2;
    let pre_num = BigInt::from(c + 1)
        * factorial(h(c + a - b))
        * factorial(h(c - a + b))
        * factorial(h(a + b - c))
        * factorial(h(c + z))
        * factorial(h(c - z))
        * factorial(h(a - x))
        * factorial(h(a + x))
        * factorial(h(b - y))
        * factorial(h(b + y));
    let pre = BigRational::new(pre_num, factorial(h(a + b + c) + 1));
    let mut sum = BigRational::zero();
    for k in 0..=(a + b) {
        let args = [
            k,
            h(a + b - c) - k,
            h(a - x) - k,
            h(b + y) - k,
            h(c - b + x) + k,
            h(c - a - y) + k,
        ];
        if args.iter().any(|&t| t < 0) {
            continue;
        }
        let den = args
            .iter()
            .fold(BigInt::one(), |acc, &t| acc * factorial(t));
        let term = BigRational::new(
            if k % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            },
            den,
        );
        sum += term;
    }
    if sum.is_zero() {
        return zero;
    }
    let sign = if sum.is_negative() { -1 } else { 1 };
    (sign, pre * &sum * &sum)
}

/// Clifford product of constant multivectors in an orthonormal Euclidean basis.
pub fn blade_product(a: &BTreeMap<u16, Coeff>, b: &BTreeMap<u16, Coeff>) -> BTreeMap<u16, Coeff> {
    let mut out: BTreeMap<u16, Coeff> = BTreeMap::new();
    for (&x, ca) in a {
        for (&y, cb) in b {
            // Sign from reordering: count pairs (i in x, j in y) with i > j.
            let mut swaps = 0;
            for j in 0..16 {
                if y & (1 << j) != 0 {
                    swaps += (x >> (j + 1)).count_ones();
                }
            }
            let mut c = ca * cb;
            if swaps % 2 == 1 {
                c = -&c;
            }
            let e = out.entry(x ^ y).or_insert_with(Coeff::zero);
            *e = &*e + &c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Constant components of a form, keyed by blade bit set.
pub fn constant_components(f: &DifferentialForm) -> BTreeMap<u16, Coeff> {
    f.components()
        .filter(|(_, p)| !p.is_zero())
        .map(|(b, p)| (b.0, p.as_constant().expect("constant coefficient")))
        .collect()
}

pub fn blade_bits(indices: &[usize]) -> u16 {
    Blade::from_indices(indices).expect("valid blade").0
}

fn su2_mul(a: [[Complex64; 2]; 2], b: [[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut out = [[Complex64::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// `exp(t T_a)` with `T_a = −iσ_a/2`.
fn one_parameter(a: usize, t: f64) -> [[Complex64; 2]; 2] {
    let (c, s) = ((t / 2.0).cos(), (t / 2.0).sin());
    let i = Complex64::i();
    let re = |x: f64| Complex64::new(x, 0.0);
    match a {
        0 => [[re(c), -i * s], [-i * s, re(c)]],
        1 => [[re(c), re(-s)], [re(s), re(c)]],
        _ => [
            [re(c) - i * s, Complex64::zero()],
            [Complex64::zero(), re(c) + i * s],
        ],
    }
}

/// Which side the one-parameter group acts on.
#[derive(Clone, Copy)]
pub enum Side {
    /// `s ↦ s·exp(tT_a)`; generates the left-invariant fields `X_a`.
    Right,
    /// `s ↦ exp(tT_a)·s`; generates `L_a`.
    Left,
}

fn flowed(p: &Polynomial, side: Side, a: usize, t: f64, u: Complex64, v: Complex64) -> Complex64 {
    let s = [[u, -v.conj()], [v, u.conj()]];
    let g = one_parameter(a, t);
    let s2 = match side {
        Side::Right => su2_mul(s, g),
        Side::Left => su2_mul(g, s),
    };
    eval_su2(p, s2[0][0], s2[1][0])
}

/// First derivative along the flow, fourth-order central differences.
pub fn flow_derivative(
    p: &Polynomial,
    side: Side,
    a: usize,
    u: Complex64,
    v: Complex64,
) -> Complex64 {
    let h = 1e-3;
    let f = |t: f64| flowed(p, side, a, t, u, v);
    (f(-2.0 * h) - f(2.0 * h) + (f(h) - f(-h)) * 8.0) / (12.0 * h)
}

/// Second derivative along the flow, fourth-order central differences.
pub fn flow_second_derivative(
    p: &Polynomial,
    side: Side,
    a: usize,
    u: Complex64,
    v: Complex64,
) -> Complex64 {
    let h = 1e-2;
    let f = |t: f64| flowed(p, side, a, t, u, v);
    (-f(2.0 * h) + f(h) * 16.0 - f(0.0) * 30.0 + f(-h) * 16.0 - f(-2.0 * h)) / (12.0 * h * h)
}

/// Deterministic points on S³.
pub fn sphere_points(n: usize) -> Vec<(Complex64, Complex64)> {
    (0..n)
        .map(|k| {
            let t = (k as f64 + 0.5) / n as f64;
            let phi = 2.399963 * k as f64;
            let chi = 1.1 + 0.7 * k as f64;
            (
                Complex64::from_polar((1.0 - t).sqrt(), phi),
                Complex64::from_polar(t.sqrt(), chi),
            )
        })
        .collect()
}

/// Spherical Bessel `j_l` in closed form, `l ≤ 3`.
pub fn spherical_bessel(l: u32, x: f64) -> f64 {
    let (s, c) = (x.sin(), x.cos());
    match l {
        0 => s / x,
        1 => s / (x * x) - c / x,
        2 => (3.0 / (x * x) - 1.0) * s / x - 3.0 * c / (x * x),
        3 => (15.0 / x.powi(3) - 6.0 / x) * s / x - (15.0 / (x * x) - 1.0) * c / x,
        _ => panic!("closed form only up to l = 3"),
    }
}

/// `J_{l+1/2}(x)` from the spherical Bessel closed form.
pub fn half_order_bessel(l: u32, x: f64) -> f64 {
    (2.0 * x / PI).sqrt() * spherical_bessel(l, x)
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().expect("finite rational")
}
