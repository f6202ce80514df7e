use std::collections::BTreeMap;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{constant_form, CliffordContext, LeftIdeal, RepMatrix};
use crate::error::{Error, Result};
use crate::exterior::DifferentialForm;
use crate::frames::FrameManifold;
use crate::linalg::Matrix;
use crate::polyring::Polynomial;
use crate::scalar::{Coeff, Surd};

/// First-order matrix operator `Σ_c M^c ∂_c` acting on coefficient tuples.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    manifold: Arc<FrameManifold>,
    parts: Vec<Matrix>,
}

/// Second-order matrix operator `Σ_{c,d} M^{cd} ∂_c ∂_d`.
#[derive(Clone, Debug, PartialEq)]
pub struct SecondOrderMatrix {
    pub parts: Vec<Vec<Matrix>>,
}

impl OperatorMatrix {
    pub fn new(manifold: &Arc<FrameManifold>, parts: Vec<Matrix>) -> Self {
        assert_eq!(parts.len(), manifold.dim(), "one matrix per direction");
        OperatorMatrix {
            manifold: manifold.clone(),
            parts,
        }
    }

    pub fn dim(&self) -> usize {
        self.parts.first().map_or(0, Matrix::rows)
    }

    /// Coefficient matrix of `∂_c`.
    pub fn part(&self, c: usize) -> &Matrix {
        &self.parts[c]
    }

    pub fn parts(&self) -> &[Matrix] {
        &self.parts
    }

    /// Direction names `x, y, z` taken from the coframe labels `dx, dy, dz`.
    pub fn directions(&self) -> Vec<String> {
        self.manifold
            .labels()
            .iter()
            .map(|l| l.strip_prefix('d').unwrap_or(l).to_string())
            .collect()
    }

    /// `g_i = Σ_c Σ_j M^c_{ij} ∂_c f_j`.
    pub fn apply(&self, f: &[Polynomial]) -> Result<Vec<Polynomial>> {
        let n = self.dim();
        if f.len() != n {
            return Err(Error::InvalidParameter(format!(
                "expected {n} components, got {}",
                f.len()
            )));
        }
        let vars = self.manifold.vars();
        let mut out = vec![Polynomial::zero(vars); n];
        for (c, m) in self.parts.iter().enumerate() {
            let df = f
                .iter()
                .map(|fj| self.manifold.derivative(c, &fj.embed(vars)?))
                .collect::<Result<Vec<_>>>()?;
            for (i, gi) in out.iter_mut().enumerate() {
                for (j, dfj) in df.iter().enumerate() {
                    let w = m.get(i, j);
                    if !w.is_zero() {
                        *gi = gi.try_add(&dfj.scale(&Coeff::from(w.clone())))?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Composition of two constant-coefficient operators.
    pub fn compose(&self, other: &OperatorMatrix) -> SecondOrderMatrix {
        let parts = self
            .parts
            .iter()
            .map(|a| other.parts.iter().map(|b| a * b).collect())
            .collect();
        SecondOrderMatrix { parts }
    }

    /// Whether every `M^c` commutes with `m`.
    pub fn commutes_with(&self, m: &Matrix) -> bool {
        self.parts.iter().all(|p| p.commutator(m).is_zero())
    }

    /// The coefficient of `∂_c` in entry `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> Vec<Surd> {
        self.parts.iter().map(|m| m.get(i, j).clone()).collect()
    }
}

impl SecondOrderMatrix {
    /// The symmetric coefficient of `∂_c ∂_d` (both orderings combined for `c ≠ d`).
    pub fn symmetrized(&self, c: usize, d: usize) -> Matrix {
        if c == d {
            self.parts[c][c].clone()
        } else {
            &self.parts[c][d] + &self.parts[d][c]
        }
    }

    /// Whether this is `Σ_c w_c ∂_c² · Id`.
    pub fn is_diagonal_laplacian(&self, weights: &[Surd]) -> bool {
        let n = self.parts.len();
        let dim = self.parts.first().map_or(0, |r| r[0].rows());
        (0..n).all(|c| {
            (c..n).all(|d| {
                let expected = if c == d {
                    Matrix::identity(dim).scale(&weights[c])
                } else {
                    Matrix::zeros(dim, dim)
                };
                self.symmetrized(c, d) == expected
            })
        })
    }
}

impl Serialize for OperatorMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let dirs: Vec<String> = self.directions().iter().map(|d| format!("∂{d}")).collect();
        let n = self.dim();
        let entries: Vec<Vec<BTreeMap<String, String>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        self.entry(i, j)
                            .iter()
                            .zip(&dirs)
                            .filter(|(c, _)| !c.is_zero())
                            .map(|(c, d)| (d.clone(), c.to_string()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut st = s.serialize_struct("OperatorMatrix", 2)?;
        st.serialize_field("directions", &dirs)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

/// Whether `P ∨ ∂_a P = 0` for every direction; needs a flat context.
pub fn covariant_constancy(p: &DifferentialForm, ctx: &CliffordContext) -> Result<bool> {
    let m = ctx.manifold();
    if !m.is_flat() {
        return Err(Error::NotFlat);
    }
    for a in 0..m.dim() {
        let dp = p.map_coefficients(|f| m.derivative(a, f))?;
        if !ctx.vee(p, &dp)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The operator `Σ_a (θ^a ∨) ∂_a` on coefficient tuples of the ideal.
pub fn dirac_matrix(ideal: &LeftIdeal, ctx: &CliffordContext) -> Result<OperatorMatrix> {
    if !covariant_constancy(ideal.projector(), ctx)? {
        return Err(Error::NotCovariantlyConstant);
    }
    let parts = ideal
        .generator_matrices(ctx)?
        .into_iter()
        .map(|r| r.matrix)
        .collect();
    Ok(OperatorMatrix::new(ctx.manifold(), parts))
}

/// The Dirac operator and generator images after identifying `J` with `i`.
#[derive(Clone, Debug, Serialize)]
pub struct ComplexReduction {
    pub images: Vec<RepMatrix>,
    pub operator: OperatorMatrix,
    /// Basis change to `{ψ_1, …, ψ_h, Jψ_1, …, Jψ_h}` in the ideal coordinates.
    pub change_of_basis: Matrix,
}

/// Reduces a real operator with a commuting complex structure `J` to a complex
/// one of half the size.
///
/// In the basis `B = {ψ_1, …, ψ_h, Jψ_1, …, Jψ_h}` a `J`-linear matrix has the
/// block form `[[A, −B], [B, A]]`, which maps to `A + iB`.
pub fn complex_reduction(
    ideal: &LeftIdeal,
    j: &RepMatrix,
    op: &OperatorMatrix,
) -> Result<ComplexReduction> {
    let n = ideal.dim();
    if !n.is_multiple_of(2) || j.matrix.rows() != n {
        return Err(Error::NoComplexStructure);
    }
    let h = n / 2;
    if &j.matrix * &j.matrix != -&Matrix::identity(n) {
        return Err(Error::NoComplexStructure);
    }
    let mut cols: Vec<Vec<Surd>> = (0..h).map(|b| unit(n, b)).collect();
    cols.extend((0..h).map(|b| j.matrix.column(b)));
    let s = Matrix::from_columns(cols);
    let s_inv = s.inverse().ok_or(Error::NoComplexStructure)?;
    let reduce = |m: &Matrix| -> Result<Matrix> {
        let t = &(&s_inv * m) * &s;
        let block = |r0: usize, c0: usize| {
            Matrix::from_rows(
                (0..h)
                    .map(|i| (0..h).map(|k| t.get(r0 + i, c0 + k).clone()).collect())
                    .collect(),
            )
        };
        let (a, b) = (block(0, 0), block(h, 0));
        if block(0, h) != -&b || block(h, h) != a {
            return Err(Error::NoComplexStructure);
        }
        Ok(&a + &b.scale(&Surd::i()))
    };
    let parts = op.parts().iter().map(reduce).collect::<Result<Vec<_>>>()?;
    let labels = op.manifold.labels();
    let images = parts
        .iter()
        .zip(labels)
        .map(|(m, l)| RepMatrix {
            label: l.clone(),
            matrix: m.clone(),
        })
        .collect();
    Ok(ComplexReduction {
        images,
        operator: OperatorMatrix::new(&op.manifold, parts),
        change_of_basis: s,
    })
}

fn unit(n: usize, i: usize) -> Vec<Surd> {
    (0..n)
        .map(|k| if k == i { Surd::one() } else { Surd::zero() })
        .collect()
}

/// Pauli matrix `σ_a`, `a ∈ {1, 2, 3}`.
pub fn pauli(a: usize) -> Matrix {
    let (o, z, i) = (Surd::one(), Surd::zero(), Surd::i());
    match a {
        1 => Matrix::from_rows(vec![vec![z.clone(), o.clone()], vec![o, z]]),
        2 => Matrix::from_rows(vec![vec![z.clone(), -&i], vec![i, z]]),
        3 => Matrix::from_rows(vec![vec![o.clone(), z.clone()], vec![z, -o]]),
        _ => panic!("axis must be 1, 2 or 3"),
    }
}

/// A unitary `U` with `U M_a U† = σ_a` for `a = 1, 2, 3`, searched among the
/// identity and the two rotations by `±2π/3` about `(1, 1, 1)`.
pub fn pauli_equivalence(images: &[Matrix]) -> Option<Matrix> {
    if images.len() != 3 {
        return None;
    }
    let sum = &(&pauli(1) + &pauli(2)) + &pauli(3);
    let half = Surd::from_ratio(1, 2);
    let candidates = [
        Matrix::identity(2),
        (&Matrix::identity(2) - &sum.scale(&Surd::i())).scale(&half),
        (&Matrix::identity(2) + &sum.scale(&Surd::i())).scale(&half),
    ];
    candidates.into_iter().find(|u| {
        let ud = u.adjoint();
        images
            .iter()
            .enumerate()
            .all(|(a, m)| &(u * m) * &ud == pauli(a + 1))
    })
}

/// Dimension of `{X : X M = M X for all M}`; one means the family is
/// irreducible (Schur).
pub fn commutant_dimension(mats: &[Matrix]) -> usize {
    let Some(first) = mats.first() else { return 0 };
    let n = first.rows();
    let mut rows = Vec::new();
    for m in mats {
        for i in 0..n {
            for j in 0..n {
                // (XM − MX)_{ij} = Σ_k X_{ik} M_{kj} − M_{ik} X_{kj}
                let mut row = vec![Surd::zero(); n * n];
                for k in 0..n {
                    row[i * n + k] = &row[i * n + k] + m.get(k, j);
                    row[k * n + j] = &row[k * n + j] - m.get(i, k);
                }
                rows.push(row);
            }
        }
    }
    Matrix::from_rows(rows).nullspace().len()
}

/// The complexified idempotent, its two-dimensional ideal and the Pauli-type
/// action of the generators.
#[derive(Clone, Debug, Serialize)]
pub struct ComplexifiedSector {
    pub ideal: LeftIdeal,
    pub matrices: Vec<RepMatrix>,
    pub dirac: OperatorMatrix,
}

/// `P = ¼(1 + dz + i dx∧dy + i dx∧dy∧dz)` with basis
/// `ψ_1 = 4P`, `ψ_2 = dx + i dy + i dy∧dz + dx∧dz`.
pub fn complexified_idempotent(ctx: &CliffordContext) -> Result<ComplexifiedSector> {
    let m = ctx.manifold();
    let (one, i) = (Coeff::one(), Coeff::i());
    let psi1 = constant_form(
        m,
        &[
            (&[], one.clone()),
            (&[2], one.clone()),
            (&[0, 1], i.clone()),
            (&[0, 1, 2], i.clone()),
        ],
    )?;
    let psi2 = constant_form(
        m,
        &[
            (&[0], one.clone()),
            (&[1], i.clone()),
            (&[1, 2], i),
            (&[0, 2], one),
        ],
    )?;
    let p = psi1.scale(&Coeff::ratio(1, 4));
    let ideal = LeftIdeal::generate(&p, ctx)?.with_basis(vec![psi1, psi2])?;
    let matrices = ideal.generator_matrices(ctx)?;
    let dirac = dirac_matrix(&ideal, ctx)?;
    Ok(ComplexifiedSector {
        ideal,
        matrices,
        dirac,
    })
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;

    use super::*;
    use crate::clifford::{projector_family, spinor_basis};

    fn ideal_at(xi: (i64, i64)) -> (LeftIdeal, CliffordContext) {
        let ctx = CliffordContext::euclidean();
        let (p, params) = projector_family(&BigRational::new(xi.0.into(), xi.1.into())).unwrap();
        let ideal = LeftIdeal::generate(&p, &ctx)
            .unwrap()
            .with_basis(spinor_basis(&params).unwrap())
            .unwrap();
        (ideal.with_params(params), ctx)
    }

    #[test]
    fn dirac_squares_to_laplacian() {
        let (ideal, ctx) = ideal_at((1, 1));
        let d = dirac_matrix(&ideal, &ctx).unwrap();
        assert!(d
            .compose(&d)
            .is_diagonal_laplacian(&[Surd::one(), Surd::one(), Surd::one()]));
    }

    #[test]
    fn reduction_at_zero_is_pauli() {
        let (ideal, ctx) = ideal_at((0, 1));
        let j = ideal.volume_complex_structure(&ctx).unwrap();
        let d = dirac_matrix(&ideal, &ctx).unwrap();
        assert!(d.commutes_with(&j.matrix));
        let red = complex_reduction(&ideal, &j, &d).unwrap();
        let imgs: Vec<Matrix> = red.images.iter().map(|r| r.matrix.clone()).collect();
        assert_eq!(imgs[0], pauli(3));
        assert_eq!(imgs[1], pauli(1));
        assert_eq!(imgs[2], pauli(2));
        assert!(pauli_equivalence(&imgs).is_some());
        assert_eq!(commutant_dimension(&imgs), 1);
    }

    #[test]
    fn complexified_matrices() {
        let ctx = CliffordContext::euclidean();
        let sector = complexified_idempotent(&ctx).unwrap();
        assert_eq!(sector.ideal.dim(), 2);
        let i = Surd::i();
        let z = Surd::zero();
        assert_eq!(sector.matrices[0].matrix, pauli(1));
        assert_eq!(
            sector.matrices[1].matrix,
            Matrix::from_rows(vec![vec![z.clone(), i.clone()], vec![-&i, z]])
        );
        assert_eq!(sector.matrices[2].matrix, pauli(3));
    }

    #[test]
    fn non_constant_projector_is_not_covariantly_constant() {
        let ctx = CliffordContext::euclidean();
        let m = ctx.manifold().clone();
        let x = Polynomial::var(m.vars(), crate::polyring::Var::X);
        let p = &DifferentialForm::constant(&m, Coeff::ratio(1, 2))
            + &ctx.generator(0).mul_function(&x).unwrap();
        assert!(!covariant_constancy(&p, &ctx).unwrap());
    }
}
