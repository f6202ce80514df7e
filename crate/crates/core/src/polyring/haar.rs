use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{Polynomial, Var};
use crate::error::{Error, Result};
use crate::scalar::Coeff;

fn factorial(n: i32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `∫ u^a ub^b v^c vb^d dν = δ_ab δ_cd a! c! / (a+c+1)!` for the Haar
/// measure of total mass one.
pub fn haar_integral(p: &Polynomial) -> Result<Coeff> {
    if let Some(v) = p.support().vars().find(|v| !v.is_su2()) {
        return Err(Error::NotSu2(v));
    }
    let mut acc = Coeff::zero();
    for (m, c) in p.terms() {
        let (a, b, cc, d) = (m.exp(Var::U), m.exp(Var::Ub), m.exp(Var::V), m.exp(Var::Vb));
        if a != b || cc != d {
            continue;
        }
        let w = BigRational::new(factorial(a) * factorial(cc), factorial(a + cc + 1));
        acc = acc + c * &Coeff::rational(w);
    }
    Ok(acc)
}
