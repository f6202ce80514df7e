//! Verification suites: each runs a family of checks and reports residuals.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use serde::Serialize;

use crate::clifford::{
    commutant_dimension, complex_reduction, complexified_idempotent, covariant_constancy,
    dirac_matrix, pauli, pauli_equivalence, projector_family, spinor_basis, CliffordContext,
    LeftIdeal, RepMatrix, SpinorParams,
};
use crate::config::Constants;
use crate::error::{Error, Result};
use crate::exterior::{
    codifferential, d, dirac_kahler, hodge_star, l2_inner, laplace_beltrami, lie_derivative,
    lie_derivative_cartan, DifferentialForm,
};
use crate::frames::{euclidean_r3, r4_monopole, su2_killing, FrameManifold, FrameVector};
use crate::linalg::Matrix;
use crate::monopole::{
    cg_combine, clebsch_gordan, eigen_check, eigen_check_form, equivariant_subspace, half_basis,
    horizontal_forms_check, j1_basis, radial_residual, reduced_coefficients,
    reduced_hamiltonian_apply, spherical_harmonics, wigner_basis, EigenOperator, RadialCase,
    VectorHarmonic, WignerElement,
};
use crate::polyring::{haar_integral, Monomial, Polynomial, Var, VariableSet};
use crate::sample::Sampler;
use crate::scalar::{Coeff, HalfInt, Surd};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    /// Decided in exact arithmetic; tolerance overrides do not apply.
    Exact,
    Numeric,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub kind: CheckKind,
    pub passed: bool,
    pub residual: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl Check {
    fn exact(id: &str, description: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            id: id.into(),
            description: description.into(),
            kind: CheckKind::Exact,
            passed,
            residual: if passed { 0.0 } else { 1.0 },
            tolerance: 0.0,
            detail: detail.into(),
        }
    }

    fn numeric(
        id: &str,
        description: &str,
        residual: f64,
        tolerance: f64,
        detail: impl Into<String>,
    ) -> Self {
        Check {
            id: id.into(),
            description: description.into(),
            kind: CheckKind::Numeric,
            passed: residual.is_finite() && residual <= tolerance,
            residual,
            tolerance,
            detail: detail.into(),
        }
    }

    fn errored(id: &str, description: &str, err: &Error) -> Self {
        Check::exact(id, description, false, format!("error: {err}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Clifford,
    Hodge,
    Harmonics,
    Spectrum,
    All,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 4] = [
        Suite::Clifford,
        Suite::Hodge,
        Suite::Harmonics,
        Suite::Spectrum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Clifford => "clifford",
            Suite::Hodge => "hodge",
            Suite::Harmonics => "harmonics",
            Suite::Spectrum => "spectrum",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "clifford" => Ok(Suite::Clifford),
            "hodge" => Ok(Suite::Hodge),
            "harmonics" => Ok(Suite::Harmonics),
            "spectrum" => Ok(Suite::Spectrum),
            "all" => Ok(Suite::All),
            _ => Err(Error::Parse(format!("unknown suite `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Runs a suite. `tol`, when given, replaces the tolerance of every numeric
/// check; exact checks are unaffected.
pub fn run_suite(suite: Suite, constants: &Constants, tol: Option<f64>) -> Result<SuiteReport> {
    if let Some(t) = tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tolerance must be positive, got {t}"
            )));
        }
    }
    let ctx = Ctx { constants, tol };
    let mut checks = match suite {
        Suite::Clifford => clifford_checks(&ctx),
        Suite::Hodge => hodge_checks(&ctx),
        Suite::Harmonics => harmonics_checks(&ctx),
        Suite::Spectrum => spectrum_checks(&ctx),
        Suite::All => {
            let parts: Vec<Vec<Check>> = std::thread::scope(|s| {
                let handles: Vec<_> = Suite::INDIVIDUAL
                    .iter()
                    .map(|&sub| {
                        let ctx = &ctx;
                        s.spawn(move || match sub {
                            Suite::Clifford => clifford_checks(ctx),
                            Suite::Hodge => hodge_checks(ctx),
                            Suite::Harmonics => harmonics_checks(ctx),
                            _ => spectrum_checks(ctx),
                        })
                    })
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("suite thread panicked"))
                    .collect()
            });
            parts.into_iter().flatten().collect()
        }
    };
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    let passed = checks.iter().all(|c| c.passed);
    Ok(SuiteReport {
        suite,
        passed,
        checks,
    })
}

struct Ctx<'a> {
    constants: &'a Constants,
    tol: Option<f64>,
}

impl Ctx<'_> {
    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

/// Runs `f`, turning an error into a failed check.
fn guard(id: &str, description: &str, f: impl FnOnce(&str, &str) -> Result<Check>) -> Check {
    f(id, description).unwrap_or_else(|e| Check::errored(id, description, &e))
}

/// Collects failures of a family of exact sub-checks.
#[derive(Default)]
struct Tally {
    total: usize,
    failures: Vec<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self, id: &str, description: &str) -> Check {
        let detail = if self.failures.is_empty() {
            format!("{} cases", self.total)
        } else {
            format!(
                "{} of {} cases failed: {}",
                self.failures.len(),
                self.total,
                self.failures.join("; ")
            )
        };
        Check::exact(id, description, self.failures.is_empty(), detail)
    }
}

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

const XI_VALUES: [(i64, i64); 4] = [(0, 1), (1, 2), (1, 1), (3, 2)];

fn xi_label(xi: (i64, i64)) -> String {
    if xi.1 == 1 {
        xi.0.to_string()
    } else {
        format!("{}/{}", xi.0, xi.1)
    }
}

fn spinor_ideal(xi: (i64, i64), ctx: &CliffordContext) -> Result<(LeftIdeal, SpinorParams)> {
    let (p, params) = projector_family(&rational(xi.0, xi.1))?;
    let ideal = LeftIdeal::generate(&p, ctx)?
        .with_basis(spinor_basis(&params)?)?
        .with_params(params.clone());
    Ok((ideal, params))
}

fn surd(c: &Coeff) -> Surd {
    c.as_surd().cloned().expect("exact parameter")
}

fn surd_matrix(rows: Vec<Vec<Surd>>) -> Matrix {
    Matrix::from_rows(rows)
}

/// Expected generator matrices on `ψ_1, …, ψ_4`.
fn expected_generators(params: &SpinorParams) -> [Matrix; 3] {
    let two = Surd::from_int(2);
    let (r, x) = (&two * &surd(&params.rho), &two * &surd(&params.xi));
    let z = Surd::zero();
    let dx = surd_matrix(vec![
        vec![r.clone(), -&x, z.clone(), z.clone()],
        vec![x.clone(), -&r, z.clone(), z.clone()],
        vec![z.clone(), z.clone(), r.clone(), x.clone()],
        vec![z.clone(), z.clone(), -&x, -&r],
    ]);
    let dy = Matrix::from_ints(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
    let dz = Matrix::from_ints(&[&[0, 0, 0, 1], &[0, 0, -1, 0], &[0, -1, 0, 0], &[1, 0, 0, 0]]);
    [dx, dy, dz]
}

/// Expected matrix of the volume element on `ψ_1, …, ψ_4`.
fn expected_volume_matrix(params: &SpinorParams) -> Matrix {
    let two = Surd::from_int(2);
    let (r, x) = (&two * &surd(&params.rho), &two * &surd(&params.xi));
    let z = Surd::zero();
    surd_matrix(vec![
        vec![z.clone(), z.clone(), -&r, -&x],
        vec![z.clone(), z.clone(), -&x, -&r],
        vec![r.clone(), -&x, z.clone(), z.clone()],
        vec![-&x, r, z.clone(), z],
    ])
}

/// Expected images of `dx, dy, dz` after identifying `J` with `i`.
fn expected_reduced_images(params: &SpinorParams) -> [Matrix; 3] {
    let two = Surd::from_int(2);
    let (r, x) = (&two * &surd(&params.rho), &two * &surd(&params.xi));
    let i = Surd::i();
    let dx = surd_matrix(vec![vec![r.clone(), -&x], vec![x.clone(), -&r]]);
    let dz = surd_matrix(vec![vec![x.clone(), -&r], vec![r, -&x]]).scale(&i);
    [dx, pauli(1), dz]
}

fn anticommutators_are_delta(mats: &[Matrix]) -> bool {
    let n = mats.first().map_or(0, Matrix::rows);
    mats.iter().enumerate().all(|(a, ma)| {
        mats.iter().enumerate().all(|(b, mb)| {
            let expected = if a == b {
                Matrix::identity(n).scale(&Surd::from_int(2))
            } else {
                Matrix::zeros(n, n)
            };
            ma.anticommutator(mb) == expected
        })
    })
}

fn clifford_checks(c: &Ctx) -> Vec<Check> {
    let ctx = CliffordContext::euclidean();
    let m = ctx.manifold().clone();
    let mut out = Vec::new();

    out.push(guard(
        "clifford.anticommutators",
        "generators satisfy θ^a∨θ^b + θ^b∨θ^a = 2g^{ab}",
        |id, desc| {
            let mut t = Tally::default();
            for a in 0..3 {
                for b in 0..3 {
                    let lhs = ctx
                        .vee(&ctx.generator(a), &ctx.generator(b))?
                        .try_add(&ctx.vee(&ctx.generator(b), &ctx.generator(a))?)?;
                    let rhs = DifferentialForm::constant(&m, if a == b { 2 } else { 0 });
                    t.record(lhs == rhs, || format!("({a},{b})"));
                }
            }
            for xi in XI_VALUES {
                let (ideal, _) = spinor_ideal(xi, &ctx)?;
                let mats = ideal.generator_matrices(&ctx)?;
                t.record(RepMatrix::clifford_relations_hold(&mats, &ctx), || {
                    format!("matrices at xi = {}", xi_label(xi))
                });
            }
            Ok(t.finish(id, desc))
        },
    ));

    out.push(guard(
        "clifford.idempotent",
        "P(ξ)∨P(ξ) = P(ξ) for ξ ∈ {0, 1/2, 1, 3/2}, 4ρ² = 4ξ² + 1",
        |id, desc| {
            let mut t = Tally::default();
            for xi in XI_VALUES {
                let (p, params) = projector_family(&rational(xi.0, xi.1))?;
                let rho2 = &(&params.rho * &params.rho) * &Coeff::int(4);
                let xi2 = &(&(&params.xi * &params.xi) * &Coeff::int(4)) + &Coeff::one();
                t.record(ctx.is_idempotent(&p)?.idempotent && rho2 == xi2, || {
                    format!("xi = {}", xi_label(xi))
                });
                t.record(covariant_constancy(&p, &ctx)?, || {
                    format!("P not constant at xi = {}", xi_label(xi))
                });
            }
            Ok(t.finish(id, desc))
        },
    ));

    out.push(guard(
        "clifford.generators",
        "dx∨, dy∨, dz∨ on ψ_1..ψ_4 match the fixture matrices",
        |id, desc| {
            let mut t = Tally::default();
            for xi in XI_VALUES {
                let (ideal, params) = spinor_ideal(xi, &ctx)?;
                t.record(ideal.dim() == 4, || {
                    format!("ideal dimension at xi = {}", xi_label(xi))
                });
                let mats = ideal.generator_matrices(&ctx)?;
                for (a, (got, want)) in mats.iter().zip(expected_generators(&params)).enumerate() {
                    t.record(got.matrix == want, || {
                        format!("{} at xi = {}", ["dx", "dy", "dz"][a], xi_label(xi))
                    });
                }
            }
            Ok(t.finish(id, desc))
        },
    ));

    out.push(guard(
        "clifford.complex_structure",
        "J = τ∨ matches the fixture, J² = −1, J∨ψ_b relations",
        |id, desc| {
            let mut t = Tally::default();
            let tau = DifferentialForm::volume(&m);
            t.record(
                ctx.vee(&tau, &tau)? == DifferentialForm::constant(&m, -1),
                || "τ∨τ".into(),
            );
            for xi in XI_VALUES {
                let (ideal, params) = spinor_ideal(xi, &ctx)?;
                let j = ideal.volume_complex_structure(&ctx)?;
                t.record(j.matrix == expected_volume_matrix(&params), || {
                    format!("J at xi = {}", xi_label(xi))
                });
                let psi = ideal.basis();
                let (r, x) = (&Coeff::int(2) * &params.rho, &Coeff::int(2) * &params.xi);
                let combos = [
                    (&psi[2].scale(&r)) - &psi[3].scale(&x),
                    (&psi[3].scale(&r)) - &psi[2].scale(&x),
                    -&(&psi[0].scale(&r) + &psi[1].scale(&x)),
                    -&(&psi[0].scale(&x) + &psi[1].scale(&r)),
                ];
                for (b, want) in combos.iter().enumerate() {
                    t.record(ctx.vee(&tau, &psi[b])? == *want, || {
                        format!("J∨ψ_{} at xi = {}", b + 1, xi_label(xi))
                    });
                }
            }
            Ok(t.finish(id, desc))
        },
    ));

    let n_samples = c.constants.spinor_samples;
    out.push(guard(
        "clifford.dirac_commutes_with_j",
        "D(J∨ψ) = J∨D(ψ) and d − δ = Σ dx^a∨∂_a on random spinors",
        |id, desc| {
            let mut t = Tally::default();
            let mut sampler = Sampler::new(c.constants.seed);
            let tau = DifferentialForm::volume(&m);
            let ideals = XI_VALUES
                .iter()
                .map(|&xi| spinor_ideal(xi, &ctx))
                .collect::<Result<Vec<_>>>()?;
            for s in 0..n_samples {
                let (ideal, _) = &ideals[s % ideals.len()];
                let f: Vec<Polynomial> = (0..4)
                    .map(|_| sampler.polynomial(VariableSet::EUCLIDEAN3, 3, 3))
                    .collect();
                let psi = ideal.combine(&f)?;
                let dpsi = dirac_kahler(&psi)?;
                t.record(
                    dirac_kahler(&ctx.vee(&tau, &psi)?)? == ctx.vee(&tau, &dpsi)?,
                    || format!("sample {s}: JD"),
                );
                t.record(dpsi == ctx.dirac(&psi)?, || format!("sample {s}: d − δ"));
                t.record(ideal.coordinates_poly(&dpsi).is_ok(), || {
                    format!("sample {s}: D leaves the ideal")
                });
            }
            Ok(t.finish(id, desc))
        },
    ));

    out.push(guard(
        "clifford.dirac_square",
        "the matrix Dirac operator squares to the Laplacian",
        |id, desc| {
            let mut t = Tally::default();
            for xi in XI_VALUES {
                let (ideal, _) = spinor_ideal(xi, &ctx)?;
                let dm = dirac_matrix(&ideal, &ctx)?;
                let ones = [Surd::one(), Surd::one(), Surd::one()];
                t.record(dm.compose(&dm).is_diagonal_laplacian(&ones), || {
                    format!("xi = {}", xi_label(xi))
                });
            }
            Ok(t.finish(id, desc))
        },
    ));

    out.push(guard(
        "clifford.reduction",
        "J-reduction gives the 2×2 images, Clifford relations and a scalar commutant",
        |id, desc| {
            let mut t = Tally::default();
            for xi in XI_VALUES {
                let (ideal, params) = spinor_ideal(xi, &ctx)?;
                let j = ideal.volume_complex_structure(&ctx)?;
                let dm = dirac_matrix(&ideal, &ctx)?;
                t.record(dm.commutes_with(&j.matrix), || {
                    format!("D and J commute at xi = {}", xi_label(xi))
                });
                let red = complex_reduction(&ideal, &j, &dm)?;
                let imgs: Vec<Matrix> = red.images.iter().map(|r| r.matrix.clone()).collect();
                for (a, want) in expected_reduced_images(&params).iter().enumerate() {
                    t.record(imgs[a] == *want, || {
                        format!("{} image at xi = {}", ["dx", "dy", "dz"][a], xi_label(xi))
                    });
                }
                t.record(anticommutators_are_delta(&imgs), || {
                    format!("relations at xi = {}", xi_label(xi))
                });
                t.record(commutant_dimension(&imgs) == 1, || {
                    format!("commutant at xi = {}", xi_label(xi))
                });
            }
            Ok(t.finish(id, desc))
        },
    ));

    out.push(guard(
        "clifford.pauli_equivalence",
        "at ξ = 0 the reduced operator is unitarily σ^a∂_a",
        |id, desc| {
            let (ideal, _) = spinor_ideal((0, 1), &ctx)?;
            let j = ideal.volume_complex_structure(&ctx)?;
            let red = complex_reduction(&ideal, &j, &dirac_matrix(&ideal, &ctx)?)?;
            let imgs: Vec<Matrix> = red.images.iter().map(|r| r.matrix.clone()).collect();
            let permuted = imgs[0] == pauli(3) && imgs[1] == pauli(1) && imgs[2] == pauli(2);
            let u = pauli_equivalence(&imgs);
            let detail = match &u {
                Some(u) => format!(
                    "dx, dy, dz ↦ σ3, σ1, σ2; U = {:?}",
                    u.to_rows()
                        .iter()
                        .map(|r| r.iter().map(Surd::to_string).collect::<Vec<_>>())
                        .collect::<Vec<_>>()
                ),
                None => "no unitary found".into(),
            };
            Ok(Check::exact(id, desc, permuted && u.is_some(), detail))
        },
    ));

    out.push(guard(
        "clifford.complexified",
        "complex idempotent, its ideal relations and Pauli images",
        |id, desc| {
            let mut t = Tally::default();
            let sector = complexified_idempotent(&ctx)?;
            t.record(
                ctx.is_idempotent(sector.ideal.projector())?.idempotent,
                || "idempotent".into(),
            );
            t.record(sector.ideal.dim() == 2, || "dimension".into());
            let psi = sector.ideal.basis();
            let i = Coeff::i();
            t.record(ctx.vee(&ctx.generator(0), &psi[0])? == psi[1], || {
                "dx∨ψ_1".into()
            });
            t.record(
                ctx.vee(&ctx.generator(1), &psi[0])? == psi[1].scale(&-i.clone()),
                || "dy∨ψ_1".into(),
            );
            t.record(ctx.vee(&ctx.generator(2), &psi[0])? == psi[0], || {
                "dz∨ψ_1".into()
            });
            t.record(ctx.vee(&ctx.generator(2), &psi[1])? == -&psi[1], || {
                "dz∨ψ_2".into()
            });
            let si = Surd::i();
            let z = Surd::zero();
            let want = [
                pauli(1),
                surd_matrix(vec![vec![z.clone(), si.clone()], vec![-&si, z]]),
                pauli(3),
            ];
            for (a, w) in want.iter().enumerate() {
                t.record(sector.matrices[a].matrix == *w, || {
                    format!("{} matrix", ["dx", "dy", "dz"][a])
                });
            }
            Ok(t.finish(id, desc))
        },
    ));

    out
}

fn sample_manifolds() -> Result<Vec<Arc<FrameManifold>>> {
    Ok(vec![
        euclidean_r3(),
        su2_killing(),
        r4_monopole(&rational(1, 1))?,
    ])
}

type Identity = fn(&DifferentialForm) -> Result<bool>;

fn hodge_checks(c: &Ctx) -> Vec<Check> {
    let mut out = Vec::new();
    let per_manifold = 12usize;
    let max_deg = c.constants.max_degree.min(4);

    let identities: [(&str, &str, Identity); 4] = [
        ("hodge.d_squared", "d² = 0", |a| Ok(d(&d(a)?)?.is_zero())),
        ("hodge.codifferential_squared", "δ² = 0", |a| {
            Ok(codifferential(&codifferential(a)?)?.is_zero())
        }),
        ("hodge.laplacian", "Δ = dδ + δd = (d + δ)²", |a| {
            let dd = |x: &DifferentialForm| -> Result<DifferentialForm> {
                d(x)?.try_add(&codifferential(x)?)
            };
            Ok(laplace_beltrami(a)? == dd(&dd(a)?)?)
        }),
        ("hodge.dirac_square", "D² = −Δ for D = d − δ", |a| {
            Ok(dirac_kahler(&dirac_kahler(a)?)? == -&laplace_beltrami(a)?)
        }),
    ];
    for (id, desc, f) in identities {
        out.push(guard(id, desc, |id, desc| {
            let mut t = Tally::default();
            let mut sampler = Sampler::new(c.constants.seed ^ 0x5eed);
            for m in sample_manifolds()? {
                for s in 0..per_manifold {
                    let alpha = sampler.form(&m, max_deg, 3);
                    t.record(f(&alpha)?, || format!("{} sample {s}", m.name()));
                }
            }
            Ok(t.finish(id, desc))
        }));
    }

    out.push(guard(
        "hodge.star_table",
        "⋆ on the Euclidean basis of ℝ³",
        |id, desc| {
            let m = euclidean_r3();
            let b = |idx: &[usize]| DifferentialForm::basis(&m, idx);
            let table: Vec<(&[usize], DifferentialForm)> = vec![
                (&[], b(&[0, 1, 2])?),
                (&[0, 1, 2], b(&[])?),
                (&[0], b(&[1, 2])?),
                (&[1], b(&[2, 0])?),
                (&[2], b(&[0, 1])?),
                (&[1, 2], b(&[0])?),
                (&[2, 0], b(&[1])?),
                (&[0, 1], b(&[2])?),
            ];
            let mut t = Tally::default();
            for (idx, want) in table {
                t.record(hodge_star(&b(idx)?)? == want, || format!("⋆{idx:?}"));
            }
            Ok(t.finish(id, desc))
        },
    ));

    let n_pairs = c.constants.form_samples;
    let max_poly = c.constants.max_degree;
    out.push(guard(
        "hodge.adjointness",
        "⟨α, dβ⟩ = ⟨δα, β⟩ on SU(2) for random polynomial forms",
        |id, desc| {
            let m = su2_killing();
            let mut sampler = Sampler::new(c.constants.seed ^ 0xad70);
            let mut t = Tally::default();
            for s in 0..n_pairs {
                let k = s % 3;
                let alpha = sampler.form_of_degree(&m, k + 1, max_poly, 2);
                let beta = sampler.form_of_degree(&m, k, max_poly, 2);
                let lhs = l2_inner(&alpha, &d(&beta)?)?;
                let rhs = l2_inner(&codifferential(&alpha)?, &beta)?;
                t.record(lhs == rhs, || format!("sample {s}: {lhs} vs {rhs}"));
            }
            Ok(t.finish(id, desc))
        },
    ));

    out.push(guard(
        "hodge.lie_cartan",
        "frame Lie derivative agrees with i_Y d + d i_Y",
        |id, desc| {
            let mut t = Tally::default();
            let mut sampler = Sampler::new(c.constants.seed ^ 0x11e);
            for m in sample_manifolds()? {
                for s in 0..per_manifold {
                    let y = FrameVector::new(
                        &m,
                        (0..m.dim())
                            .map(|_| sampler.polynomial(m.vars(), 2, 2))
                            .collect(),
                    )?;
                    let alpha = sampler.form(&m, 3, 2);
                    t.record(
                        lie_derivative(&y, &alpha)? == lie_derivative_cartan(&y, &alpha)?,
                        || format!("{} sample {s}", m.name()),
                    );
                }
            }
            Ok(t.finish(id, desc))
        },
    ));
    out
}

const HARMONIC_SPINS: [i32; 3] = [1, 2, 3];

fn harmonics_checks(c: &Ctx) -> Vec<Check> {
    let mut out = Vec::new();
    let sigma = c.constants.constraint_sign as i64;
    let bases: Result<Vec<Vec<WignerElement>>> = HARMONIC_SPINS
        .iter()
        .map(|&t| wigner_basis(HalfInt::from_twice(t)))
        .collect();
    let bases = match bases {
        Ok(b) => b,
        Err(e) => return vec![Check::errored("harmonics.wigner", "Wigner bases", &e)],
    };

    out.push(guard(
        "harmonics.wigner_eigen",
        "L² = −j(j+1), L_z = im, X₃ = in on every Wigner element",
        |id, desc| {
            let mut t = Tally::default();
            for e in bases.iter().flatten() {
                t.record(e.poly.degree().is_none_or(|dg| dg <= e.j.twice()), || {
                    format!("degree bound of ({},{},{})", e.j, e.n, e.m)
                });
                for op in [EigenOperator::Casimir, EigenOperator::Lz, EigenOperator::X3] {
                    let r = eigen_check(&e.poly, op, &op.eigenvalue(e.j, e.n, e.m))?;
                    t.record(r.exact, || {
                        format!("{} on ({},{},{})", op.label(), e.j, e.n, e.m)
                    });
                }
            }
            Ok(t.finish(id, desc))
        },
    ));

    out.push(guard(
        "harmonics.constraint",
        "x̂ᵃL_a ψ = σ X₃ ψ on every Wigner element",
        |id, desc| {
            let mut t = Tally::default();
            for e in bases.iter().flatten() {
                let lhs = EigenOperator::XhatL.apply(&e.poly)?;
                let rhs = EigenOperator::X3.apply(&e.poly)?.scale(&Coeff::int(sigma));
                t.record(lhs == rhs, || format!("({},{},{})", e.j, e.n, e.m));
            }
            Ok(t.finish(id, desc))
        },
    ));

    out.push(guard(
        "harmonics.peter_weyl",
        "Wigner elements are orthogonal with norm² 1/(2j+1)",
        |id, desc| {
            let mut t = Tally::default();
            let all: Vec<&WignerElement> = bases.iter().flatten().collect();
            for (i, a) in all.iter().enumerate() {
                t.record(a.norm_sq == Coeff::ratio(1, a.j.twice() as i64 + 1), || {
                    format!("norm of ({},{},{})", a.j, a.n, a.m)
                });
                for b in &all[i + 1..] {
                    let ip = haar_integral(&a.poly.conjugate().try_mul(&b.poly)?.normal_form())?;
                    t.record(ip.is_zero(), || {
                        format!("({},{},{}) vs ({},{},{})", a.j, a.n, a.m, b.j, b.n, b.m)
                    });
                }
            }
            Ok(t.finish(id, desc))
        },
    ));

    out.push(guard(
        "harmonics.equivariant",
        "dimensions of X₃-eigenspaces in low spin",
        |id, desc| {
            let mut t = Tally::default();
            t.record(
                equivariant_subspace(&bases[0], HalfInt::HALF)?.len() == 2,
                || "j = 1/2, n = 1/2".into(),
            );
            t.record(
                equivariant_subspace(&bases[0], HalfInt::ZERO)?.is_empty(),
                || "j = 1/2, n = 0".into(),
            );
            let inv = equivariant_subspace(&bases[1], HalfInt::ZERO)?;
            t.record(inv.len() == 3, || "j = 1, n = 0".into());
            let y = spherical_harmonics(1)?;
            for (e, (m, p)) in inv.iter().zip(&y) {
                t.record(e.m == *m && p.ratio_to(&e.poly).is_some(), || {
                    format!("Y_1^{m}")
                });
            }
            Ok(t.finish(id, desc))
        },
    ));

    let j1 = j1_basis();
    let half = half_basis();
    out.push(guard(
        "harmonics.vector_labels",
        "vector harmonics: (L², L_z) eigenforms, horizontality and equivariance",
        |id, desc| {
            let mut t = Tally::default();
            for h in j1.iter().chain(&half) {
                for op in [EigenOperator::Casimir, EigenOperator::Lz] {
                    let r = eigen_check_form(&h.form, op, &op.eigenvalue(h.j, HalfInt::ZERO, h.m))?;
                    t.record(r.exact, || format!("{} on {}", op.label(), h.label));
                }
            }
            for h in &j1 {
                t.record(horizontal_forms_check(&h.form)?.is_horizontal(), || {
                    format!("{} horizontal", h.label)
                });
            }
            for h in &half {
                let r = horizontal_forms_check(&h.form)?;
                let ok = r.contraction_zero
                    && !r.invariant
                    && r.x3_eigenvalue == Some(Coeff::gaussian((0, 1), (1, 2)));
                t.record(ok, || format!("{} equivariant with n = 1/2", h.label));
            }
            Ok(t.finish(id, desc))
        },
    ));

    out.push(guard(
        "harmonics.vector_orthogonality",
        "vector harmonics are pairwise orthogonal",
        |id, desc| {
            let mut t = Tally::default();
            for basis in [&j1, &half] {
                for (i, a) in basis.iter().enumerate() {
                    for b in &basis[i + 1..] {
                        t.record(l2_inner(&a.form, &b.form)?.is_zero(), || {
                            format!("{} vs {}", a.label, b.label)
                        });
                    }
                }
            }
            Ok(t.finish(id, desc))
        },
    ));

    let volume = c.constants.haar_volume;
    let norm_tol = c.tol(c.constants.norm_tolerance);
    out.push(guard("harmonics.vector_volume", "normalization constants give unit norm for the frozen volume constant", |id, desc| {
        let mut worst = 0.0f64;
        let mut parts = Vec::new();
        for h in j1.iter().chain(&half) {
            let v = h.volume_constant()?;
            worst = worst.max((v - volume).abs() / volume);
            parts.push(format!("{}: {v:.15}", h.label));
        }
        let riemannian = 16.0 * std::f64::consts::PI.powi(2);
        let detail = format!(
            "relative deviation from V = {volume}; {}; Riemannian volume of the unit Killing sphere {riemannian:.15}",
            parts.join(", ")
        );
        Ok(Check::numeric(id, desc, worst, norm_tol, detail))
    }));

    out.push(guard(
        "harmonics.module",
        "multiplying by X₃-invariant functions keeps the equivariance charge",
        |id, desc| {
            let mut t = Tally::default();
            let half_i = Coeff::gaussian((0, 1), (1, 2));
            for l in 1..=2u32 {
                for (m, y) in spherical_harmonics(l)? {
                    for h in &half {
                        let f = h.form.mul_function(&y)?;
                        let r = eigen_check_form(&f, EigenOperator::X3, &half_i)?;
                        t.record(r.exact, || format!("Y_{l}^{m} {}", h.label));
                    }
                }
            }
            Ok(t.finish(id, desc))
        },
    ));

    out.push(guard(
        "harmonics.cg_towers",
        "spin-3/2 and spin-1/2 towers from Y_1 ⊗ (spin-1/2 forms)",
        |id, desc| {
            let mut t = Tally::default();
            let y = spherical_harmonics(1)?;
            let ym = |m: i32| {
                y.iter()
                    .find(|(mm, _)| *mm == HalfInt::int(m))
                    .map(|(_, p)| p.clone())
                    .expect("m in range")
            };
            let term = |c: Coeff, m: i32, h: &VectorHarmonic| -> Result<DifferentialForm> {
                Ok(h.form.mul_function(&ym(m))?.scale(&c))
            };
            let (a_up, a_down) = (&half[0], &half[1]);
            let (s13, s23) = (Coeff::sqrt_ratio(1, 3), Coeff::sqrt_ratio(2, 3));
            let one = Coeff::one();
            let quartet = cg_combine(&half, &y, HalfInt::ONE, HalfInt::from_twice(3))?;
            let quartet_want = [
                term(one.clone(), 1, a_up)?,
                term(s13.clone(), 1, a_down)?.try_add(&term(s23.clone(), 0, a_up)?)?,
                term(s13.clone(), -1, a_up)?.try_add(&term(s23.clone(), 0, a_down)?)?,
                term(one, -1, a_down)?,
            ];
            let doublet = cg_combine(&half, &y, HalfInt::ONE, HalfInt::HALF)?;
            let doublet_want = [
                term(s23.clone(), 1, a_down)?.try_sub(&term(s13.clone(), 0, a_up)?)?,
                term(s13, 0, a_down)?.try_sub(&term(s23, -1, a_up)?)?,
            ];
            for (got, want) in quartet
                .iter()
                .zip(&quartet_want)
                .chain(doublet.iter().zip(&doublet_want))
            {
                t.record(got.form == *want, || {
                    format!("{} against the tabulated combination", got.label)
                });
                for op in [EigenOperator::Casimir, EigenOperator::Lz] {
                    let r = eigen_check_form(
                        &got.form,
                        op,
                        &op.eigenvalue(got.j, HalfInt::ZERO, got.m),
                    )?;
                    t.record(r.exact, || format!("{} on {}", op.label(), got.label));
                }
            }
            let pairs: Vec<&VectorHarmonic> = quartet.iter().chain(&doublet).collect();
            for (i, a) in pairs.iter().enumerate() {
                for b in &pairs[i + 1..] {
                    t.record(l2_inner(&a.form, &b.form)?.is_zero(), || {
                        format!("{} vs {}", a.label, b.label)
                    });
                }
            }
            t.record(
                cg_combine(&half, &y, HalfInt::ONE, HalfInt::from_twice(5)).is_err(),
                || "j = 5/2 rejected".into(),
            );
            Ok(t.finish(id, desc))
        },
    ));

    out.push(guard(
        "harmonics.cg_orthogonality",
        "Clebsch–Gordan rows and columns are orthonormal",
        |id, desc| {
            let mut t = Tally::default();
            for (tj1, tj2) in [(2, 1), (2, 2), (3, 2), (4, 1), (4, 3)] {
                let (j1, j2) = (HalfInt::from_twice(tj1), HalfInt::from_twice(tj2));
                let js: Vec<HalfInt> = ((tj1 - tj2).abs()..=tj1 + tj2)
                    .step_by(2)
                    .map(HalfInt::from_twice)
                    .collect();
                for m1 in j1.descending_multiplet() {
                    for m2 in j2.descending_multiplet() {
                        let mut sum = Surd::zero();
                        for &j in &js {
                            let c = clebsch_gordan(j1, j2, m1, m2, j, m1 + m2);
                            sum = &sum + &(&c * &c);
                        }
                        t.record(sum.is_one(), || format!("Σ_j at ({j1},{j2};{m1},{m2})"));
                    }
                }
                for &j in &js {
                    for m in j.descending_multiplet() {
                        let mut sum = Surd::zero();
                        for m1 in j1.descending_multiplet() {
                            let c = clebsch_gordan(j1, j2, m1, m - m1, j, m);
                            sum = &sum + &(&c * &c);
                        }
                        t.record(sum.is_one(), || format!("Σ_m1 at ({j1},{j2};{j},{m})"));
                    }
                }
            }
            Ok(t.finish(id, desc))
        },
    ));
    out
}

fn spectrum_checks(c: &Ctx) -> Vec<Check> {
    let mut out = Vec::new();
    let fd_tol = c.tol(c.constants.fd_tolerance);
    let sectors = c.constants.radial_sectors().unwrap_or_default();
    for (l, n) in sectors {
        let id = format!("spectrum.radial.l={l}.n={n}");
        let desc = format!("√r J_μ(kr) solves the radial equation for l = {l}, n = {n}");
        out.push(guard(&id, &desc, |id, desc| {
            let case = RadialCase::new(l, n, c.constants.mass, c.constants.k_wave)?;
            let report = radial_residual(&case, &c.constants.grid()?)?;
            let detail = format!(
                "mu = {:.16e}, E = {}, grid {}",
                report.mu, report.energy, report.grid
            );
            Ok(Check::numeric(
                id,
                desc,
                report.max_residual,
                fd_tol,
                detail,
            ))
        }));
    }

    out.push(guard(
        "spectrum.mu",
        "μ(l, 0) = l + 1/2 and μ decreases strictly in |n|",
        |id, desc| {
            let mut t = Tally::default();
            for tl in 0..=6 {
                let l = HalfInt::from_twice(tl);
                let mu0 = RadialCase::new(l, HalfInt::ZERO, 1.0, 1.0)?.mu()?;
                t.record(mu0 == l.to_f64() + 0.5, || format!("l = {l}"));
                let mut prev = mu0;
                for tn in 1..=tl + 1 {
                    let mu = RadialCase::new(l, HalfInt::from_twice(tn), 1.0, 1.0)?.mu()?;
                    t.record(mu < prev, || {
                        format!("l = {l}, n = {}", HalfInt::from_twice(tn))
                    });
                    prev = mu;
                }
                let over = RadialCase::new(l, HalfInt::from_twice(tl + 2), 1.0, 1.0)?.mu();
                t.record(matches!(over, Err(Error::UnsupportedSector { .. })), || {
                    format!("l = {l} past the bound")
                });
            }
            t.record(
                matches!(
                    RadialCase::from_energy(HalfInt::ONE, HalfInt::ZERO, 1.0, -0.5),
                    Err(Error::NoSolution(_))
                ),
                || "E < 0".into(),
            );
            Ok(t.finish(id, desc))
        },
    ));

    let ks = c.constants.k_values().unwrap_or_default();
    for k in ks {
        let id = format!("spectrum.shift.k={k}");
        let desc = format!("reduced operator ∂²_r + (2/r)∂_r + (L² + n²)/r² − n²/k at k = {k}");
        out.push(guard(&id, &desc, |id, desc| {
            let mut t = Tally::default();
            let kq = Coeff::rational(k.clone());
            for tj in 0..=3 {
                let j = HalfInt::from_twice(tj);
                for e in wigner_basis(j)?.into_iter().filter(|e| e.m == j) {
                    let n2 = &e.n.to_coeff() * &e.n.to_coeff();
                    let rc = reduced_coefficients(&e.poly, &k, e.n)?;
                    let angular = &EigenOperator::Casimir.eigenvalue(j, e.n, e.m) + &n2;
                    let shift = &n2 / &kq;
                    let ok = rc.second_order == Coeff::one()
                        && rc.first_order == Coeff::int(2)
                        && rc.angular == angular
                        && rc.spectrum_shift() == shift;
                    t.record(ok, || format!("j = {j}, n = {}: {rc:?}", e.n));
                    let psi = e
                        .poly
                        .embed(VariableSet::MONOPOLE)?
                        .mul_monomial(&Monomial::one().with(Var::R, 2));
                    t.record(reduced_hamiltonian_apply(&psi, &k, e.n)?.exact, || {
                        format!("j = {j}, n = {}: r² ψ", e.n)
                    });
                }
            }
            Ok(t.finish(id, desc))
        }));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::INDIVIDUAL.iter().chain([Suite::All].iter()) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), *s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }
}
