use serde::Serialize;

use super::{constant_vector, CliffordContext, SpinorParams};
use crate::error::{Error, Result};
use crate::exterior::{Blade, DifferentialForm};
use crate::linalg::Matrix;
use crate::polyring::Polynomial;
use crate::scalar::{Coeff, Surd};

/// Matrix of a left ∨-multiplication on an ideal basis.
///
/// Column `b` holds the coordinates of `φ ∨ ψ_b`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RepMatrix {
    pub label: String,
    pub matrix: Matrix,
}

/// A left ideal `Λ ∨ P` with a basis of constant-coefficient forms.
#[derive(Clone, Debug, Serialize)]
pub struct LeftIdeal {
    projector: DifferentialForm,
    basis: Vec<DifferentialForm>,
    params: Option<SpinorParams>,
    #[serde(skip)]
    pivots: Vec<Blade>,
    #[serde(skip)]
    pivot_inverse: Matrix,
}

impl LeftIdeal {
    /// Builds the ideal from an idempotent by row-reducing `e_I ∨ P` over all
    /// frame monomials `e_I`.
    pub fn generate(p: &DifferentialForm, ctx: &CliffordContext) -> Result<Self> {
        constant_vector(p)?;
        if !ctx.is_idempotent(p)?.idempotent {
            return Err(Error::NotIdempotent);
        }
        let m = ctx.manifold();
        let blades = Blade::all(m.dim());
        let rows = blades
            .iter()
            .map(|b| constant_vector(&ctx.vee(&DifferentialForm::basis(m, &b.indices())?, p)?))
            .collect::<Result<Vec<_>>>()?;
        let (rref, pivots) = Matrix::from_rows(rows).rref();
        let basis = (0..pivots.len())
            .map(|i| vector_form(ctx, rref.row(i)))
            .collect::<Result<Vec<_>>>()?;
        LeftIdeal::from_parts(p.clone(), basis, None)
    }

    fn from_parts(
        projector: DifferentialForm,
        basis: Vec<DifferentialForm>,
        params: Option<SpinorParams>,
    ) -> Result<Self> {
        let blades = Blade::all(projector.manifold().dim());
        let rows = basis
            .iter()
            .map(constant_vector)
            .collect::<Result<Vec<_>>>()?;
        let k = rows.len();
        let mat = Matrix::from_rows(rows);
        let (_, pivots) = mat.rref();
        if pivots.len() != k {
            return Err(Error::BasisMismatch("basis is linearly dependent".into()));
        }
        let sub = Matrix::from_rows(
            (0..k)
                .map(|i| pivots.iter().map(|&c| mat.get(i, c).clone()).collect())
                .collect(),
        );
        let pivot_inverse = sub.inverse().ok_or(Error::SingularMatrix)?;
        Ok(LeftIdeal {
            projector,
            basis,
            params,
            pivots: pivots.iter().map(|&c| blades[c]).collect(),
            pivot_inverse,
        })
    }

    /// Replaces the basis by `basis`, which must span the same space.
    pub fn with_basis(&self, basis: Vec<DifferentialForm>) -> Result<Self> {
        if basis.len() != self.dim() {
            return Err(Error::BasisMismatch(format!(
                "expected {} elements, got {}",
                self.dim(),
                basis.len()
            )));
        }
        for (i, b) in basis.iter().enumerate() {
            self.coordinates(b).map_err(|_| {
                Error::BasisMismatch(format!("element {} is outside the ideal", i + 1))
            })?;
        }
        LeftIdeal::from_parts(self.projector.clone(), basis, self.params.clone())
    }

    pub fn with_params(mut self, params: SpinorParams) -> Self {
        self.params = Some(params);
        self
    }

    pub fn projector(&self) -> &DifferentialForm {
        &self.projector
    }

    pub fn basis(&self) -> &[DifferentialForm] {
        &self.basis
    }

    pub fn params(&self) -> Option<&SpinorParams> {
        self.params.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a constant form in the basis.
    pub fn coordinates(&self, form: &DifferentialForm) -> Result<Vec<Surd>> {
        let coords = self.coordinates_poly(form)?;
        coords
            .iter()
            .map(|p| {
                if p.is_zero() {
                    Some(Surd::zero())
                } else {
                    p.as_constant().and_then(|c| c.as_surd().cloned())
                }
            })
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::NonConstant)
    }

    /// Coordinates with function coefficients: `form = Σ f_b ψ_b`.
    pub fn coordinates_poly(&self, form: &DifferentialForm) -> Result<Vec<Polynomial>> {
        let m = form.manifold();
        self.projector.check_same(form)?;
        let k = self.dim();
        let mut coords = vec![Polynomial::zero(m.vars()); k];
        for (p, blade) in self.pivots.iter().enumerate() {
            let f = form.component(*blade);
            if f.is_zero() {
                continue;
            }
            for (b, c) in coords.iter_mut().enumerate() {
                let w = self.pivot_inverse.get(p, b);
                if !w.is_zero() {
                    *c = c.try_add(&f.scale(&Coeff::from(w.clone())))?;
                }
            }
        }
        if self.combine(&coords)? != *form {
            return Err(Error::NotInIdeal);
        }
        Ok(coords)
    }

    /// `Σ f_b ψ_b`.
    pub fn combine(&self, coords: &[Polynomial]) -> Result<DifferentialForm> {
        let mut out = DifferentialForm::zero(self.projector.manifold());
        for (f, psi) in coords.iter().zip(&self.basis) {
            if !f.is_zero() {
                out = out.try_add(&psi.mul_function(f)?)?;
            }
        }
        Ok(out)
    }

    /// Matrix of `φ ∨` on the basis.
    pub fn left_matrix(
        &self,
        phi: &DifferentialForm,
        label: &str,
        ctx: &CliffordContext,
    ) -> Result<RepMatrix> {
        let cols = self
            .basis
            .iter()
            .map(|psi| self.coordinates(&ctx.vee(phi, psi)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(RepMatrix {
            label: label.to_string(),
            matrix: Matrix::from_columns(cols),
        })
    }

    /// Matrices of the generators `θ^a ∨`.
    pub fn generator_matrices(&self, ctx: &CliffordContext) -> Result<Vec<RepMatrix>> {
        let m = ctx.manifold();
        (0..m.dim())
            .map(|a| self.left_matrix(&ctx.generator(a), &m.labels()[a], ctx))
            .collect()
    }

    /// Matrix `J` of the volume element; requires `τ ∨ τ = −1`.
    pub fn volume_complex_structure(&self, ctx: &CliffordContext) -> Result<RepMatrix> {
        let m = ctx.manifold();
        let tau = DifferentialForm::volume(m);
        if ctx.vee(&tau, &tau)? != DifferentialForm::constant(m, -1) {
            return Err(Error::NoComplexStructure);
        }
        let j = self.left_matrix(&tau, "J", ctx)?;
        let minus_one = -&Matrix::identity(self.dim());
        if &j.matrix * &j.matrix != minus_one {
            return Err(Error::NoComplexStructure);
        }
        Ok(j)
    }
}

fn vector_form(ctx: &CliffordContext, v: &[Surd]) -> Result<DifferentialForm> {
    let m = ctx.manifold();
    let blades = Blade::all(m.dim());
    DifferentialForm::from_components(
        m,
        blades
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(b, c)| (*b, m.constant(c.clone()))),
    )
}

impl RepMatrix {
    /// Checks `M^a M^b + M^b M^a = 2 g^{ab} Id` for a generator family.
    pub fn clifford_relations_hold(mats: &[RepMatrix], ctx: &CliffordContext) -> bool {
        let n = mats.first().map_or(0, |m| m.matrix.rows());
        mats.iter().enumerate().all(|(a, ma)| {
            mats.iter().enumerate().all(|(b, mb)| {
                let expected = if a == b {
                    match ctx
                        .inverse_metric(a)
                        .as_constant()
                        .and_then(|c| c.as_surd().cloned())
                    {
                        Some(g) => Matrix::identity(n).scale(&(Surd::from_int(2) * g)),
                        None => return false,
                    }
                } else {
                    Matrix::zeros(n, n)
                };
                ma.matrix.anticommutator(&mb.matrix) == expected
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;

    use super::*;
    use crate::clifford::{projector_family, spinor_basis};

    fn surd_rows(rows: &[&[Surd]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn four_dimensional_ideal_with_expected_matrices() {
        let ctx = CliffordContext::euclidean();
        let xi = BigRational::new(1.into(), 2.into());
        let (p, params) = projector_family(&xi).unwrap();
        let ideal = LeftIdeal::generate(&p, &ctx).unwrap();
        assert_eq!(ideal.dim(), 4);
        let ideal = ideal.with_basis(spinor_basis(&params).unwrap()).unwrap();
        let mats = ideal.generator_matrices(&ctx).unwrap();
        let rho = params.rho.as_surd().unwrap().clone();
        let x = params.xi.as_surd().unwrap().clone();
        let two = Surd::from_int(2);
        let (r2, x2) = (&two * &rho, &two * &x);
        let z = Surd::zero();
        let expected_dx = surd_rows(&[
            &[r2.clone(), -&x2, z.clone(), z.clone()],
            &[x2.clone(), -&r2, z.clone(), z.clone()],
            &[z.clone(), z.clone(), r2.clone(), x2.clone()],
            &[z.clone(), z.clone(), -&x2, -&r2],
        ]);
        assert_eq!(mats[0].matrix, expected_dx);
        assert_eq!(
            mats[1].matrix,
            Matrix::from_ints(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]])
        );
        assert_eq!(
            mats[2].matrix,
            Matrix::from_ints(&[&[0, 0, 0, 1], &[0, 0, -1, 0], &[0, -1, 0, 0], &[1, 0, 0, 0]])
        );
        assert!(RepMatrix::clifford_relations_hold(&mats, &ctx));
    }

    #[test]
    fn rejects_non_idempotent() {
        let ctx = CliffordContext::euclidean();
        let dx = ctx.generator(0);
        assert!(matches!(
            LeftIdeal::generate(&dx, &ctx),
            Err(Error::NotIdempotent)
        ));
    }
}
