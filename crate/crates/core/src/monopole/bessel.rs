use std::f64::consts::PI;

use statrs::function::gamma::gamma;
use twofloat::TwoFloat;

use crate::error::{Error, Result};

/// Bessel function of the first kind `J_μ(x)` for `μ ≥ 0`, `x ≥ 0`.
///
/// Uses the power series summed in double-double arithmetic, and Hankel's
/// asymptotic expansion once `x > 25 + μ²`.
pub fn bessel_j(mu: f64, x: f64) -> Result<f64> {
    if !(mu.is_finite() && x.is_finite()) || mu < 0.0 || x < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "J_mu(x) needs mu >= 0 and x >= 0, got mu = {mu}, x = {x}"
        )));
    }
    if x == 0.0 {
        return Ok(if mu == 0.0 { 1.0 } else { 0.0 });
    }
    if x > 25.0 + mu * mu {
        Ok(hankel(mu, x))
    } else {
        Ok(series(mu, x))
    }
}

fn series(mu: f64, x: f64) -> f64 {
    let half = TwoFloat::from(x) / 2.0;
    let q = -(half * half);
    let mut term = TwoFloat::from(1.0);
    let mut sum = term;
    let mut k = 1.0;
    loop {
        let kk = TwoFloat::from(k);
        term = div(term * q, kk * (kk + mu));
        sum += term;
        if k > x && term.abs().hi() < 1e-33 * sum.abs().hi().max(f64::MIN_POSITIVE) {
            break;
        }
        k += 1.0;
    }
    let prefactor = (x / 2.0).powf(mu) / gamma(mu + 1.0);
    prefactor * sum.hi()
}

/// `a / b` to double-double accuracy; `TwoFloat`'s own quotient keeps only
/// the high word.
fn div(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q1 = a / b.hi();
    let r = a - q1 * b;
    q1 + r / b.hi()
}

fn hankel(mu: f64, x: f64) -> f64 {
    let four_mu2 = 4.0 * mu * mu;
    let (mut p, mut q) = (1.0, 0.0);
    let mut a = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        a *= (four_mu2 - odd * odd) / (k as f64 * 8.0 * x);
        if a.abs() >= last || a == 0.0 {
            break;
        }
        last = a.abs();
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * a;
        } else {
            q += sign * a;
        }
        if a.abs() < 1e-17 {
            break;
        }
    }
    let chi = x - (mu / 2.0 + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j_half(x: f64) -> f64 {
        (2.0 / (PI * x)).sqrt() * x.sin()
    }

    fn j_three_halves(x: f64) -> f64 {
        (2.0 / (PI * x)).sqrt() * (x.sin() / x - x.cos())
    }

    #[test]
    fn half_integer_orders() {
        for &x in &[0.3, 1.0, 4.5, 10.0, 15.0, 20.0, 24.0, 40.0, 80.0] {
            let (a, b) = (bessel_j(0.5, x).unwrap(), j_half(x));
            assert!(
                (a - b).abs() <= 1e-12 * b.abs().max(1e-3),
                "x = {x}: {a} vs {b}"
            );
            let (a, b) = (bessel_j(1.5, x).unwrap(), j_three_halves(x));
            assert!(
                (a - b).abs() <= 1e-12 * b.abs().max(1e-3),
                "x = {x}: {a} vs {b}"
            );
        }
    }

    #[test]
    fn integer_order_zero() {
        // J_0(2.404825557695773) ≈ 0, J_0(1) = 0.7651976865579666
        assert!(bessel_j(0.0, 2.404825557695773).unwrap().abs() < 1e-14);
        assert!((bessel_j(0.0, 1.0).unwrap() - 0.765_197_686_557_966_6).abs() < 1e-15);
    }

    #[test]
    fn rejects_negative_order() {
        assert!(bessel_j(-1.0, 1.0).is_err());
    }
}
