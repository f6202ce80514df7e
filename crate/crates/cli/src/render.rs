//! Builds the JSON and CSV documents emitted by each command.

use clap::ValueEnum;
use serde::Serialize;

use dkforms::clifford::{
    commutant_dimension, complex_reduction, dirac_matrix, pauli_equivalence, projector_family,
    spinor_basis, CliffordContext, LeftIdeal, OperatorMatrix,
};
use dkforms::monopole::{
    cg_combine, eigen_check, equivariant_subspace, half_basis, j1_basis, radial_residual,
    spherical_harmonics, wigner_basis, EigenOperator, Grid, RadialCase, VectorHarmonic,
};
use dkforms::scalar::parse_rational;
use dkforms::verify::{run_suite, CheckKind, Suite};
use dkforms::{Constants, DifferentialForm, Error, HalfInt, Matrix, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub struct Rendered {
    pub text: String,
    pub passed: bool,
}

impl Rendered {
    fn ok(text: String) -> Self {
        Rendered { text, passed: true }
    }
}

/// Seventeen significant digits.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_doc(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(&r).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Serialize)]
struct FormComponent {
    blade: String,
    coeff: String,
}

fn form_repr(f: &DifferentialForm) -> Vec<FormComponent> {
    let labels = f.manifold().labels();
    f.components()
        .filter(|(_, p)| !p.is_zero())
        .map(|(b, p)| {
            let blade = b
                .indices()
                .iter()
                .map(|&i| labels[i].as_str())
                .collect::<Vec<_>>()
                .join("^");
            FormComponent {
                blade: if blade.is_empty() { "1".into() } else { blade },
                coeff: p.to_string(),
            }
        })
        .collect()
}

#[derive(Serialize)]
struct CheckRow {
    id: String,
    description: String,
    kind: CheckKind,
    passed: bool,
    residual: String,
    tolerance: String,
    detail: String,
}

#[derive(Serialize)]
struct VerifyDoc {
    suite: Suite,
    passed: bool,
    checks: Vec<CheckRow>,
}

pub fn verify(
    suite: Suite,
    constants: &Constants,
    tol: Option<f64>,
    format: Option<Format>,
) -> Result<Rendered> {
    let report = run_suite(suite, constants, tol)?;
    let rows: Vec<CheckRow> = report
        .checks
        .iter()
        .map(|c| CheckRow {
            id: c.id.clone(),
            description: c.description.clone(),
            kind: c.kind,
            passed: c.passed,
            residual: num(c.residual),
            tolerance: num(c.tolerance),
            detail: c.detail.clone(),
        })
        .collect();
    let text = match format.unwrap_or(Format::Json) {
        Format::Json => json(&VerifyDoc {
            suite,
            passed: report.passed,
            checks: rows,
        })?,
        Format::Csv => csv_doc(
            &["id", "kind", "passed", "residual", "tolerance", "detail"],
            rows.into_iter().map(|r| {
                let kind = match r.kind {
                    CheckKind::Exact => "exact",
                    CheckKind::Numeric => "numeric",
                };
                vec![
                    r.id,
                    kind.into(),
                    r.passed.to_string(),
                    r.residual,
                    r.tolerance,
                    r.detail,
                ]
            }),
        )?,
    };
    Ok(Rendered {
        text,
        passed: report.passed,
    })
}

#[derive(Serialize)]
struct EigenRow {
    operator: String,
    eigenvalue: String,
    residual: String,
    exact: bool,
}

#[derive(Serialize)]
struct ElementDoc {
    n: HalfInt,
    m: HalfInt,
    polynomial: String,
    norm_sq: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    eigen: Vec<EigenRow>,
}

#[derive(Serialize)]
struct RepDoc {
    j: HalfInt,
    dimension: usize,
    elements: Vec<ElementDoc>,
}

pub fn rep(j: HalfInt, format: Option<Format>) -> Result<Rendered> {
    let basis = wigner_basis(j)?;
    let mut elements = Vec::with_capacity(basis.len());
    for e in &basis {
        let mut eigen = Vec::new();
        for op in EigenOperator::ALL {
            let r = eigen_check(&e.poly, op, &op.eigenvalue(e.j, e.n, e.m))?;
            eigen.push(EigenRow {
                operator: r.operator,
                eigenvalue: r.eigenvalue.to_string(),
                residual: num(r.residual),
                exact: r.exact,
            });
        }
        elements.push(ElementDoc {
            n: e.n,
            m: e.m,
            polynomial: e.poly.to_string(),
            norm_sq: e.norm_sq.to_string(),
            eigen,
        });
    }
    let text = match format.unwrap_or(Format::Json) {
        Format::Json => json(&RepDoc {
            j,
            dimension: basis.len(),
            elements,
        })?,
        Format::Csv => csv_doc(
            &["operator", "j", "n", "m", "eigenvalue", "residual"],
            elements.iter().flat_map(|e| {
                e.eigen.iter().map(move |r| {
                    vec![
                        r.operator.clone(),
                        j.to_string(),
                        e.n.to_string(),
                        e.m.to_string(),
                        r.eigenvalue.clone(),
                        r.residual.clone(),
                    ]
                })
            }),
        )?,
    };
    Ok(Rendered::ok(text))
}

#[derive(Serialize)]
struct OperatorDoc {
    directions: Vec<String>,
    coefficients: Vec<Matrix>,
}

fn operator_doc(op: &OperatorMatrix) -> OperatorDoc {
    OperatorDoc {
        directions: op.directions(),
        coefficients: op.parts().to_vec(),
    }
}

#[derive(Serialize)]
struct NamedMatrix {
    name: String,
    matrix: Matrix,
}

#[derive(Serialize)]
struct CliffordDoc {
    xi: String,
    rho: String,
    projector: Vec<FormComponent>,
    basis: Vec<Vec<FormComponent>>,
    generators: Vec<NamedMatrix>,
    complex_structure: Matrix,
    dirac: OperatorDoc,
    reduced_generators: Vec<NamedMatrix>,
    reduced_dirac: OperatorDoc,
    change_of_basis: Matrix,
    commutant_dimension: usize,
    pauli_unitary: Option<Matrix>,
}

pub fn clifford(xi: &str, format: Option<Format>) -> Result<Rendered> {
    let xi = parse_rational(xi).map_err(Error::Parse)?;
    let ctx = CliffordContext::euclidean();
    let (p, params) = projector_family(&xi)?;
    let ideal = LeftIdeal::generate(&p, &ctx)?
        .with_basis(spinor_basis(&params)?)?
        .with_params(params.clone());
    let gens = ideal.generator_matrices(&ctx)?;
    let j = ideal.volume_complex_structure(&ctx)?;
    let dirac = dirac_matrix(&ideal, &ctx)?;
    let red = complex_reduction(&ideal, &j, &dirac)?;
    let images: Vec<Matrix> = red.images.iter().map(|r| r.matrix.clone()).collect();
    let doc = CliffordDoc {
        xi: params.xi.to_string(),
        rho: params.rho.to_string(),
        projector: form_repr(&p),
        basis: ideal.basis().iter().map(form_repr).collect(),
        generators: gens
            .iter()
            .map(|g| NamedMatrix {
                name: g.label.clone(),
                matrix: g.matrix.clone(),
            })
            .collect(),
        complex_structure: j.matrix.clone(),
        dirac: operator_doc(&dirac),
        reduced_generators: red
            .images
            .iter()
            .map(|g| NamedMatrix {
                name: g.label.clone(),
                matrix: g.matrix.clone(),
            })
            .collect(),
        reduced_dirac: operator_doc(&red.operator),
        change_of_basis: red.change_of_basis.clone(),
        commutant_dimension: commutant_dimension(&images),
        pauli_unitary: pauli_equivalence(&images),
    };
    let text = match format.unwrap_or(Format::Json) {
        Format::Json => json(&doc)?,
        Format::Csv => {
            let mut named: Vec<(&str, &Matrix)> = doc
                .generators
                .iter()
                .map(|g| (g.name.as_str(), &g.matrix))
                .collect();
            named.push(("J", &doc.complex_structure));
            let reduced: Vec<(String, &Matrix)> = doc
                .reduced_generators
                .iter()
                .map(|g| (format!("reduced {}", g.name), &g.matrix))
                .collect();
            named.extend(reduced.iter().map(|(n, m)| (n.as_str(), *m)));
            csv_doc(
                &["matrix", "row", "col", "value"],
                named.iter().flat_map(|(name, m)| {
                    (0..m.rows()).flat_map(move |r| {
                        m.row(r).iter().enumerate().map(move |(c, v)| {
                            vec![
                                name.to_string(),
                                r.to_string(),
                                c.to_string(),
                                v.to_string(),
                            ]
                        })
                    })
                }),
            )?
        }
    };
    Ok(Rendered::ok(text))
}

#[derive(Serialize)]
struct VectorDoc {
    label: String,
    j: HalfInt,
    m: HalfInt,
    pi_power: i32,
    form: Vec<FormComponent>,
}

#[derive(Serialize)]
struct HarmonicsDoc {
    j: HalfInt,
    n: HalfInt,
    elements: Vec<ElementDoc>,
    forms: Vec<VectorDoc>,
}

fn vector_harmonics(j: HalfInt, n: HalfInt) -> Result<Vec<VectorHarmonic>> {
    let half = HalfInt::HALF;
    Ok(match (j.twice(), n) {
        (2, HalfInt::ZERO) => j1_basis(),
        (1, x) if x == half => half_basis(),
        (3, x) if x == half => {
            cg_combine(&half_basis(), &spherical_harmonics(1)?, HalfInt::ONE, j)?
        }
        _ => Vec::new(),
    })
}

pub fn harmonics(j: HalfInt, n: HalfInt, format: Option<Format>) -> Result<Rendered> {
    if n.abs() > j || (j - n).twice() % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "n = {n} is not a weight of spin {j}"
        )));
    }
    let basis = wigner_basis(j)?;
    let elements: Vec<ElementDoc> = equivariant_subspace(&basis, n)?
        .into_iter()
        .map(|e| ElementDoc {
            n: e.n,
            m: e.m,
            polynomial: e.poly.to_string(),
            norm_sq: e.norm_sq.to_string(),
            eigen: Vec::new(),
        })
        .collect();
    let forms: Vec<VectorDoc> = vector_harmonics(j, n)?
        .into_iter()
        .map(|h| VectorDoc {
            label: h.label.clone(),
            j: h.j,
            m: h.m,
            pi_power: h.pi_power,
            form: form_repr(&h.form),
        })
        .collect();
    let text = match format.unwrap_or(Format::Json) {
        Format::Json => json(&HarmonicsDoc {
            j,
            n,
            elements,
            forms,
        })?,
        Format::Csv => csv_doc(
            &["j", "n", "m", "polynomial", "norm_sq"],
            elements.into_iter().map(|e| {
                vec![
                    j.to_string(),
                    e.n.to_string(),
                    e.m.to_string(),
                    e.polynomial,
                    e.norm_sq,
                ]
            }),
        )?,
    };
    Ok(Rendered::ok(text))
}

pub struct SpectrumParams {
    pub l: HalfInt,
    pub n: HalfInt,
    pub k_wave: f64,
    pub mass: f64,
    pub grid: Grid,
    pub tol: f64,
}

#[derive(Serialize)]
struct SpectrumDoc {
    l: HalfInt,
    n: HalfInt,
    k_wave: String,
    mass: String,
    mu: String,
    energy: String,
    grid: String,
    max_residual: String,
    tolerance: String,
    passed: bool,
    points: Vec<[String; 3]>,
}

pub fn spectrum(p: &SpectrumParams, format: Option<Format>) -> Result<Rendered> {
    let case = RadialCase::new(p.l, p.n, p.mass, p.k_wave)?;
    let report = radial_residual(&case, &p.grid)?;
    let passed = report.max_residual <= p.tol;
    let points = report
        .points
        .iter()
        .map(|q| [num(q.r), num(q.u), num(q.residual)]);
    let text = match format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let header = format!(
                "# l={} n={} k={} mass={} mu={} energy={} max_residual={}\n",
                p.l,
                p.n,
                num(p.k_wave),
                num(p.mass),
                num(report.mu),
                num(report.energy),
                num(report.max_residual)
            );
            header + &csv_doc(&["r", "u", "residual"], points.map(|x| x.to_vec()))?
        }
        Format::Json => json(&SpectrumDoc {
            l: p.l,
            n: p.n,
            k_wave: num(p.k_wave),
            mass: num(p.mass),
            mu: num(report.mu),
            energy: num(report.energy),
            grid: report.grid.to_string(),
            max_residual: num(report.max_residual),
            tolerance: num(p.tol),
            passed,
            points: points.collect(),
        })?,
    };
    Ok(Rendered { text, passed })
}
