use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::{HalfInt, Surd};

/// A coupled state `|j m⟩` written in the product basis `|j₁ m₁⟩|j₂ m₂⟩`.
pub type CoupledState = BTreeMap<(HalfInt, HalfInt), Surd>;

fn sqrt_quarter(a: i32, b: i32) -> Surd {
    Surd::sqrt_rational(&BigRational::new((a as i64 * b as i64).into(), 4.into()))
        .expect("small ladder factors")
}

/// `√((j−m)(j+m+1))`.
fn raise(j: HalfInt, m: HalfInt) -> Surd {
    sqrt_quarter((j - m).twice(), (j + m + HalfInt::ONE).twice())
}

/// `√((j+m)(j−m+1))`.
fn lower(j: HalfInt, m: HalfInt) -> Surd {
    sqrt_quarter((j + m).twice(), (j - m + HalfInt::ONE).twice())
}

fn in_range(j: HalfInt, m: HalfInt) -> bool {
    m.abs() <= j && (j - m).is_integer()
}

pub fn triangle(j1: HalfInt, j2: HalfInt, j: HalfInt) -> bool {
    j1.twice() >= 0
        && j2.twice() >= 0
        && j >= (j1 - j2).abs()
        && j <= j1 + j2
        && (j1 + j2 - j).is_integer()
}

fn not_in_decomposition(j1: HalfInt, j2: HalfInt, j: HalfInt) -> Error {
    Error::NotInDecomposition {
        j1: j1.to_string(),
        j2: j2.to_string(),
        target: j.to_string(),
    }
}

/// The multiplet `|j m⟩, m = j, ..., −j` inside `j₁ ⊗ j₂`.
///
/// The top state is fixed by `J₊|j j⟩ = 0` with `⟨j₁ j₁; j₂ j−j₁|j j⟩ > 0`;
/// the others follow by `J₋`.
pub fn coupled_multiplet(
    j1: HalfInt,
    j2: HalfInt,
    j: HalfInt,
) -> Result<Vec<(HalfInt, CoupledState)>> {
    if !triangle(j1, j2, j) {
        return Err(not_in_decomposition(j1, j2, j));
    }
    let mut top: Vec<(HalfInt, Surd)> = Vec::new();
    let mut c = Surd::one();
    let mut m1 = j1;
    loop {
        top.push((m1, c.clone()));
        let next = m1 - HalfInt::ONE;
        if next < -j1 || j - next > j2 {
            break;
        }
        // c(m₁−1) a₊(j₁, m₁−1) + c(m₁) a₊(j₂, j−m₁) = 0
        let num = &c * &raise(j2, j - m1);
        c = -(&num * &raise(j1, next).recip().ok_or(Error::SingularMatrix)?);
        m1 = next;
    }
    let norm_sq = top
        .iter()
        .map(|(_, c)| (c * c).as_rational().expect("real coefficients"))
        .fold(BigRational::from_integer(0.into()), |acc, q| acc + q);
    let inv = Surd::sqrt_rational(&norm_sq)
        .and_then(|s| s.recip())
        .ok_or(Error::SingularMatrix)?;
    let mut state: CoupledState = top
        .into_iter()
        .map(|(m1, c)| ((m1, j - m1), &c * &inv))
        .collect();
    let mut out = vec![(j, state.clone())];
    let mut m = j;
    while m > -j {
        let mut next: CoupledState = BTreeMap::new();
        for ((a, b), c) in &state {
            if *a > -j1 {
                let e = next
                    .entry((*a - HalfInt::ONE, *b))
                    .or_insert_with(Surd::zero);
                *e = &*e + &(c * &lower(j1, *a));
            }
            if *b > -j2 {
                let e = next
                    .entry((*a, *b - HalfInt::ONE))
                    .or_insert_with(Surd::zero);
                *e = &*e + &(c * &lower(j2, *b));
            }
        }
        let inv = lower(j, m).recip().ok_or(Error::SingularMatrix)?;
        state = next
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, &c * &inv))
            .collect();
        m = m - HalfInt::ONE;
        out.push((m, state.clone()));
    }
    Ok(out)
}

/// `⟨j₁ m₁; j₂ m₂ | j m⟩` in the Condon–Shortley convention; zero when a
/// selection rule fails.
pub fn clebsch_gordan(
    j1: HalfInt,
    j2: HalfInt,
    m1: HalfInt,
    m2: HalfInt,
    j: HalfInt,
    m: HalfInt,
) -> Surd {
    if m1 + m2 != m
        || !triangle(j1, j2, j)
        || !in_range(j1, m1)
        || !in_range(j2, m2)
        || !in_range(j, m)
    {
        return Surd::zero();
    }
    let multiplet = coupled_multiplet(j1, j2, j).expect("triangle checked");
    multiplet
        .into_iter()
        .find(|(mm, _)| *mm == m)
        .and_then(|(_, s)| s.get(&(m1, m2)).cloned())
        .unwrap_or_else(Surd::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(twice: i32) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    #[test]
    fn known_values() {
        // ⟨1 1; ½ −½ | ½ ½⟩ = √(2/3), ⟨1 0; ½ ½ | ½ ½⟩ = −√(1/3)
        assert_eq!(
            clebsch_gordan(h(2), h(1), h(2), h(-1), h(1), h(1)),
            Surd::sqrt_rational(&BigRational::new(2.into(), 3.into())).unwrap()
        );
        assert_eq!(
            clebsch_gordan(h(2), h(1), h(0), h(1), h(1), h(1)),
            -Surd::sqrt_rational(&BigRational::new(1.into(), 3.into())).unwrap()
        );
        assert_eq!(
            clebsch_gordan(h(2), h(1), h(2), h(1), h(3), h(3)),
            Surd::one()
        );
        assert_eq!(
            clebsch_gordan(h(4), h(0), h(-2), h(0), h(4), h(-2)),
            Surd::one()
        );
    }

    #[test]
    fn selection_rules_give_zero() {
        assert!(clebsch_gordan(h(2), h(1), h(2), h(1), h(1), h(1)).is_zero());
        assert!(clebsch_gordan(h(2), h(1), h(2), h(-1), h(5), h(1)).is_zero());
    }

    #[test]
    fn rejects_missing_target() {
        assert!(matches!(
            coupled_multiplet(h(2), h(1), h(5)),
            Err(Error::NotInDecomposition { .. })
        ));
    }
}
