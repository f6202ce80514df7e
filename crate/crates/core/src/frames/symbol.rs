//! Scalar second-order operators in coordinates, their principal symbols and
//! the fiber homogenization of first- and zeroth-order terms.

use std::fmt;

use crate::error::{Error, Result};
use crate::polyring::{Polynomial, Var, VariableSet};
use crate::scalar::Coeff;

/// `Σ a_ij ∂_i ∂_j + Σ b_i ∂_i + c` with `a` symmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct SecondOrderOperator {
    coords: Vec<Var>,
    vars: VariableSet,
    a: Vec<Vec<Polynomial>>,
    b: Vec<Polynomial>,
    c: Polynomial,
}

impl SecondOrderOperator {
    pub fn new(coords: &[Var], vars: VariableSet) -> Result<Self> {
        if let Some(v) = coords.iter().find(|v| !vars.contains(**v)) {
            return Err(Error::VariableNotInSet(*v));
        }
        let n = coords.len();
        let z = Polynomial::zero(vars);
        Ok(SecondOrderOperator {
            coords: coords.to_vec(),
            vars,
            a: vec![vec![z.clone(); n]; n],
            b: vec![z.clone(); n],
            c: z,
        })
    }

    /// Flat Laplacian `Σ ∂_i²`.
    pub fn laplacian(coords: &[Var], vars: VariableSet) -> Result<Self> {
        let mut op = SecondOrderOperator::new(coords, vars)?;
        for &v in coords {
            op = op.with_second(v, v, &Polynomial::one(vars))?;
        }
        Ok(op)
    }

    /// `i∂_t + ∂_x² + ∂_y² + ∂_z² − V` over `s, t, x, y, z` (the fiber
    /// coordinate `s` is reserved for [`homogenize`]).
    pub fn schrodinger(potential: &Polynomial) -> Result<Self> {
        let vars = VariableSet::SPACETIME;
        let v = potential.embed(vars)?;
        let mut op = SecondOrderOperator::new(&[Var::T, Var::X, Var::Y, Var::Z], vars)?;
        for x in [Var::X, Var::Y, Var::Z] {
            op = op.with_second(x, x, &Polynomial::one(vars))?;
        }
        op.with_first(Var::T, &Polynomial::constant(vars, Coeff::i()))?
            .with_zeroth(&-v)
    }

    fn index(&self, v: Var) -> Result<usize> {
        self.coords
            .iter()
            .position(|w| *w == v)
            .ok_or(Error::VariableNotInSet(v))
    }

    /// Adds `coef · ∂_i ∂_j`, split symmetrically.
    pub fn with_second(mut self, i: Var, j: Var, coef: &Polynomial) -> Result<Self> {
        let (i, j) = (self.index(i)?, self.index(j)?);
        let coef = coef.embed(self.vars)?;
        if i == j {
            self.a[i][i] = self.a[i][i].try_add(&coef)?;
        } else {
            let half = coef.scale(&Coeff::ratio(1, 2));
            self.a[i][j] = self.a[i][j].try_add(&half)?;
            self.a[j][i] = self.a[j][i].try_add(&half)?;
        }
        Ok(self)
    }

    pub fn with_first(mut self, i: Var, coef: &Polynomial) -> Result<Self> {
        let i = self.index(i)?;
        self.b[i] = self.b[i].try_add(&coef.embed(self.vars)?)?;
        Ok(self)
    }

    pub fn with_zeroth(mut self, coef: &Polynomial) -> Result<Self> {
        self.c = self.c.try_add(&coef.embed(self.vars)?)?;
        Ok(self)
    }

    pub fn coords(&self) -> &[Var] {
        &self.coords
    }

    pub fn vars(&self) -> VariableSet {
        self.vars
    }

    pub fn second(&self, i: usize, j: usize) -> &Polynomial {
        &self.a[i][j]
    }

    pub fn first(&self, i: usize) -> &Polynomial {
        &self.b[i]
    }

    pub fn zeroth(&self) -> &Polynomial {
        &self.c
    }

    pub fn apply(&self, psi: &Polynomial) -> Result<Polynomial> {
        let psi = psi.embed(self.vars)?;
        let mut out = self.c.try_mul(&psi)?;
        for (i, vi) in self.coords.iter().enumerate() {
            let di = psi.partial(*vi);
            out = out.try_add(&self.b[i].try_mul(&di)?)?;
            for (j, vj) in self.coords.iter().enumerate() {
                if !self.a[i][j].is_zero() {
                    out = out.try_add(&self.a[i][j].try_mul(&di.partial(*vj))?)?;
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for SecondOrderOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, vi) in self.coords.iter().enumerate() {
            for (j, vj) in self.coords.iter().enumerate().skip(i) {
                let coef = if i == j {
                    self.a[i][i].clone()
                } else {
                    self.a[i][j].scale(&Coeff::int(2))
                };
                if !coef.is_zero() {
                    parts.push(format!("({coef}) d{vi} d{vj}"));
                }
            }
        }
        for (i, vi) in self.coords.iter().enumerate() {
            if !self.b[i].is_zero() {
                parts.push(format!("({}) d{vi}", self.b[i]));
            }
        }
        if !self.c.is_zero() {
            parts.push(format!("({})", self.c));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Symmetric contravariant 2-tensor `Σ t_ij ∂_i ⊗ ∂_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricTensor {
    pub coords: Vec<Var>,
    pub entries: Vec<Vec<Polynomial>>,
}

impl SymmetricTensor {
    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Polynomial::is_zero)
    }

    /// Exact determinant by the Leibniz expansion.
    pub fn determinant(&self) -> Polynomial {
        let n = self.coords.len();
        let vars = self
            .entries
            .first()
            .and_then(|r| r.first())
            .map_or(VariableSet::EMPTY, Polynomial::vars);
        let mut perm: Vec<usize> = (0..n).collect();
        let mut acc = Polynomial::zero(vars);
        permutations(&mut perm, 0, &mut |p, sign| {
            let mut term = Polynomial::constant(vars, sign);
            for (i, &j) in p.iter().enumerate() {
                if self.entries[i][j].is_zero() {
                    return;
                }
                term = &term * &self.entries[i][j];
            }
            acc = &acc + &term;
        });
        acc
    }
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize], i64)) {
    fn rec(p: &mut Vec<usize>, k: usize, sign: i64, f: &mut impl FnMut(&[usize], i64)) {
        if k == p.len() {
            f(p, sign);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(p, k + 1, if i == k { sign } else { -sign }, f);
            p.swap(k, i);
        }
    }
    rec(p, k, 1, f)
}

impl fmt::Display for SymmetricTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, vi) in self.coords.iter().enumerate() {
            for (j, vj) in self.coords.iter().enumerate() {
                if !self.entries[i][j].is_zero() {
                    parts.push(format!("({}) d{vi}(x)d{vj}", self.entries[i][j]));
                }
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// The symmetrized second-order coefficient tensor.
pub fn principal_symbol(op: &SecondOrderOperator) -> SymmetricTensor {
    let n = op.coords.len();
    let half = Coeff::ratio(1, 2);
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (&op.a[i][j] + &op.a[j][i]).scale(&half))
                .collect()
        })
        .collect();
    SymmetricTensor {
        coords: op.coords.clone(),
        entries,
    }
}

/// Trades first- and zeroth-order terms for second-order terms along a new
/// fiber coordinate: `b ∂_j ↦ (b/i) ∂_s ∂_j` and `c ↦ −c ∂_s²`.
///
/// On functions `e^{is} ψ` the result acts as `e^{is}` times the original
/// operator on `ψ`.
pub fn homogenize(op: &SecondOrderOperator, fiber: Var) -> Result<SecondOrderOperator> {
    if op.coords.contains(&fiber) {
        return Err(Error::NotSchrodingerShape(format!(
            "`{fiber}` is already a coordinate"
        )));
    }
    if !op.vars.contains(fiber) {
        return Err(Error::VariableNotInSet(fiber));
    }
    let time: Vec<usize> = (0..op.coords.len())
        .filter(|&i| !op.b[i].is_zero())
        .collect();
    let [t] = time[..] else {
        return Err(Error::NotSchrodingerShape(
            "expected exactly one first-order direction".into(),
        ));
    };
    if op.b[t].as_constant().is_none() {
        return Err(Error::NotSchrodingerShape(
            "first-order coefficient must be constant".into(),
        ));
    }
    if op.a[t].iter().any(|p| !p.is_zero()) {
        return Err(Error::NotSchrodingerShape(
            "second-order part involves the time direction".into(),
        ));
    }
    let mut coords = vec![fiber];
    coords.extend(op.coords.iter().copied());
    let mut out = SecondOrderOperator::new(&coords, op.vars)?;
    for (i, vi) in op.coords.iter().enumerate() {
        for (j, vj) in op.coords.iter().enumerate() {
            if i <= j && !op.a[i][j].is_zero() {
                let coef = if i == j {
                    op.a[i][i].clone()
                } else {
                    op.a[i][j].scale(&Coeff::int(2))
                };
                out = out.with_second(*vi, *vj, &coef)?;
            }
        }
    }
    let minus_i = -Coeff::i();
    for (j, vj) in op.coords.iter().enumerate() {
        if !op.b[j].is_zero() {
            out = out.with_second(fiber, *vj, &op.b[j].scale(&minus_i))?;
        }
    }
    out.with_second(fiber, fiber, &-&op.c)
}

/// Restricts to functions `e^{i q s} ψ`, replacing `∂_s` by `i q`.
pub fn restrict_to_fiber_mode(
    op: &SecondOrderOperator,
    fiber: Var,
    charge: i64,
) -> Result<SecondOrderOperator> {
    let f = op.index(fiber)?;
    let iq = Coeff::gaussian((0, 1), (charge, 1));
    let coords: Vec<Var> = op.coords.iter().copied().filter(|v| *v != fiber).collect();
    let mut out = SecondOrderOperator::new(&coords, op.vars)?;
    for (i, vi) in op.coords.iter().enumerate() {
        if i == f {
            continue;
        }
        for (j, vj) in op.coords.iter().enumerate() {
            if j != f && i <= j && !op.a[i][j].is_zero() {
                let coef = if i == j {
                    op.a[i][i].clone()
                } else {
                    op.a[i][j].scale(&Coeff::int(2))
                };
                out = out.with_second(*vi, *vj, &coef)?;
            }
        }
        let cross = op.a[f][i].scale(&(&iq * &Coeff::int(2)));
        out = out.with_first(*vi, &(&op.b[i] + &cross))?;
    }
    let zeroth = &(&op.c + &op.b[f].scale(&iq)) + &op.a[f][f].scale(&(&iq * &iq));
    out.with_zeroth(&zeroth)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(v: Var) -> Polynomial {
        Polynomial::var(VariableSet::SPACETIME, v)
    }

    #[test]
    fn homogenized_schrodinger_symbol() {
        let v = &sp(Var::X) * &sp(Var::Y);
        let d = SecondOrderOperator::schrodinger(&v).unwrap();
        let dp = homogenize(&d, Var::S).unwrap();
        let sym = principal_symbol(&dp);
        assert_eq!(sym.coords, vec![Var::S, Var::T, Var::X, Var::Y, Var::Z]);
        assert_eq!(sym.entry(0, 0), &v);
        assert_eq!(
            sym.entry(0, 1),
            &Polynomial::constant(VariableSet::SPACETIME, Coeff::ratio(1, 2))
        );
        assert_eq!(sym.entry(1, 0), sym.entry(0, 1));
        for i in 2..5 {
            assert_eq!(sym.entry(i, i), &Polynomial::one(VariableSet::SPACETIME));
        }
        assert!(sym.entry(1, 1).is_zero());
        assert_eq!(
            sym.determinant(),
            Polynomial::constant(VariableSet::SPACETIME, Coeff::ratio(-1, 4))
        );
    }

    #[test]
    fn free_case_has_no_fiber_square() {
        let d =
            SecondOrderOperator::schrodinger(&Polynomial::zero(VariableSet::SPACETIME)).unwrap();
        let sym = principal_symbol(&homogenize(&d, Var::S).unwrap());
        assert!(sym.entry(0, 0).is_zero());
        assert!(!sym.entry(0, 1).is_zero());
    }

    #[test]
    fn laplacian_symbol_is_identity() {
        let lap =
            SecondOrderOperator::laplacian(&[Var::X, Var::Y, Var::Z], VariableSet::EUCLIDEAN3)
                .unwrap();
        let sym = principal_symbol(&lap);
        assert_eq!(sym.determinant(), Polynomial::one(VariableSet::EUCLIDEAN3));
        let first = SecondOrderOperator::new(&[Var::X], VariableSet::EUCLIDEAN3)
            .unwrap()
            .with_first(Var::X, &Polynomial::one(VariableSet::EUCLIDEAN3))
            .unwrap();
        assert!(principal_symbol(&first).is_zero());
    }

    #[test]
    fn restriction_recovers_original() {
        let v = sp(Var::X).pow(2);
        let d = SecondOrderOperator::schrodinger(&v).unwrap();
        let dp = homogenize(&d, Var::S).unwrap();
        assert_eq!(restrict_to_fiber_mode(&dp, Var::S, 1).unwrap(), d);
    }

    #[test]
    fn rejects_non_schrodinger_shape() {
        let lap =
            SecondOrderOperator::laplacian(&[Var::T, Var::X], VariableSet::SPACETIME).unwrap();
        assert!(matches!(
            homogenize(&lap, Var::S),
            Err(Error::NotSchrodingerShape(_))
        ));
    }
}
