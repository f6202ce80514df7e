//! One line per acceptance criterion, then a single assertion over all of them.

mod common;

use std::time::{Duration, Instant};

use dkforms::monopole::clebsch_gordan;
use dkforms::polyring::haar_integral;
use dkforms::verify::{run_suite, Suite, SuiteReport};
use dkforms::{Constants, HalfInt, Monomial, Polynomial, Var, VariableSet};

const CLIFFORD_BUDGET: Duration = Duration::from_secs(1);
const TOTAL_BUDGET: Duration = Duration::from_secs(60);
const NORM_TOLERANCE: f64 = 1e-10;
const RADIAL_TOLERANCE: f64 = 1e-6;
const HAAR_TOLERANCE: f64 = 1e-3;

struct Outcome {
    number: usize,
    title: &'static str,
    passed: bool,
    detail: String,
}

fn from_checks(number: usize, title: &'static str, report: &SuiteReport, ids: &[&str]) -> Outcome {
    let mut missing = Vec::new();
    let mut failed = Vec::new();
    for id in ids {
        match report.check(id) {
            None => missing.push(id.to_string()),
            Some(c) if !c.passed => failed.push(format!("{} ({})", c.id, c.detail)),
            Some(_) => {}
        }
    }
    let passed = missing.is_empty() && failed.is_empty();
    let detail = if passed {
        format!("{} checks", ids.len())
    } else {
        format!("missing {missing:?}, failed {failed:?}")
    };
    Outcome {
        number,
        title,
        passed,
        detail,
    }
}

fn with_prefix<'a>(report: &'a SuiteReport, prefix: &str) -> Vec<&'a str> {
    report
        .checks
        .iter()
        .filter(|c| c.id.starts_with(prefix))
        .map(|c| c.id.as_str())
        .collect()
}

fn cg_against_oracle() -> (bool, usize) {
    let mut count = 0;
    let mut ok = true;
    for tj1 in 0..=3 {
        for tj2 in 0..=3 {
            let (j1, j2) = (HalfInt::from_twice(tj1), HalfInt::from_twice(tj2));
            for tj in ((tj1 - tj2).abs()..=tj1 + tj2).step_by(2) {
                let j = HalfInt::from_twice(tj);
                for m1 in j1.descending_multiplet() {
                    for m2 in j2.descending_multiplet() {
                        let got = clebsch_gordan(j1, j2, m1, m2, j, m1 + m2);
                        let (sign, square) = common::racah_cg(j1, j2, m1, m2, j, m1 + m2);
                        let sq_ok = (&got * &got).as_rational() == Some(square);
                        let sign_ok = sign == 0 || got.to_complex().re.signum() as i32 == sign;
                        ok &= sq_ok && sign_ok;
                        count += 1;
                    }
                }
            }
        }
    }
    (ok, count)
}

fn haar_against_quadrature() -> (f64, usize) {
    let mut worst = 0.0f64;
    let mut count = 0;
    for a in 0..=6 {
        for b in 0..=6 - a {
            for c in 0..=6 - a - b {
                for d in 0..=6 - a - b - c {
                    let m = Monomial::one()
                        .with(Var::U, a)
                        .with(Var::Ub, b)
                        .with(Var::V, c)
                        .with(Var::Vb, d);
                    let p = Polynomial::monomial(VariableSet::SU2, m, 1).unwrap();
                    let exact = haar_integral(&p).unwrap().to_complex();
                    worst = worst.max((exact - common::haar_quadrature(&p)).norm());
                    count += 1;
                }
            }
        }
    }
    (worst, count)
}

#[test]
fn acceptance() {
    let constants = Constants::default();
    assert_eq!(constants.norm_tolerance, NORM_TOLERANCE);
    assert_eq!(constants.fd_tolerance, RADIAL_TOLERANCE);
    assert_eq!(constants.quadrature_tolerance, HAAR_TOLERANCE);
    assert_eq!(constants.grid().unwrap().to_string(), "0.5:10:0.001");

    let start = Instant::now();
    let clifford = run_suite(Suite::Clifford, &constants, None).unwrap();
    let clifford_time = start.elapsed();
    let hodge = run_suite(Suite::Hodge, &constants, None).unwrap();
    let harmonics = run_suite(Suite::Harmonics, &constants, None).unwrap();
    let spectrum = run_suite(Suite::Spectrum, &constants, None).unwrap();
    let total_time = start.elapsed();

    let mut outcomes = Vec::new();

    let mut c1 = from_checks(
        1,
        "idempotents, generator matrices and anticommutators",
        &clifford,
        &[
            "clifford.idempotent",
            "clifford.generators",
            "clifford.anticommutators",
        ],
    );
    if clifford_time > CLIFFORD_BUDGET {
        c1.passed = false;
    }
    c1.detail = format!(
        "{}; clifford suite {:.3} s",
        c1.detail,
        clifford_time.as_secs_f64()
    );
    outcomes.push(c1);

    outcomes.push(from_checks(
        2,
        "complex structure J, its relations and D commuting with J",
        &clifford,
        &[
            "clifford.complex_structure",
            "clifford.dirac_commutes_with_j",
        ],
    ));
    outcomes.push(from_checks(
        3,
        "Dirac reduction to the Pauli operator",
        &clifford,
        &[
            "clifford.dirac_square",
            "clifford.reduction",
            "clifford.pauli_equivalence",
        ],
    ));
    outcomes.push(from_checks(
        4,
        "complexified idempotent sector",
        &clifford,
        &["clifford.complexified"],
    ));
    outcomes.push(from_checks(
        5,
        "exterior calculus identities and adjointness",
        &hodge,
        &[
            "hodge.d_squared",
            "hodge.codifferential_squared",
            "hodge.laplacian",
            "hodge.dirac_square",
            "hodge.star_table",
            "hodge.adjointness",
        ],
    ));
    outcomes.push(from_checks(
        6,
        "Wigner eigen-relations, Peter-Weyl orthogonality, constraint",
        &harmonics,
        &[
            "harmonics.wigner_eigen",
            "harmonics.peter_weyl",
            "harmonics.constraint",
        ],
    ));

    let mut c7 = from_checks(
        7,
        "vector harmonics: labels, orthogonality, norm constant",
        &harmonics,
        &[
            "harmonics.vector_labels",
            "harmonics.vector_orthogonality",
            "harmonics.vector_volume",
            "harmonics.module",
        ],
    );
    if let Some(v) = harmonics.check("harmonics.vector_volume") {
        c7.passed &= v.residual <= NORM_TOLERANCE;
        c7.detail = format!("{}; volume deviation {:e}", c7.detail, v.residual);
    }
    outcomes.push(c7);

    let mut c8 = from_checks(
        8,
        "Clebsch-Gordan towers and coefficients",
        &harmonics,
        &["harmonics.cg_towers", "harmonics.cg_orthogonality"],
    );
    let (cg_ok, cg_count) = cg_against_oracle();
    c8.passed &= cg_ok;
    c8.detail = format!(
        "{}; {cg_count} coefficients against the Racah formula",
        c8.detail
    );
    outcomes.push(c8);

    let radial_ids = with_prefix(&spectrum, "spectrum.radial.");
    let shift_ids = with_prefix(&spectrum, "spectrum.shift.");
    let mut ids = radial_ids.clone();
    ids.extend(&shift_ids);
    ids.push("spectrum.mu");
    let mut c9 = from_checks(
        9,
        "radial Bessel residuals and the n²/k shift",
        &spectrum,
        &ids,
    );
    let worst_radial = radial_ids
        .iter()
        .filter_map(|id| spectrum.check(id))
        .map(|c| c.residual)
        .fold(0.0, f64::max);
    c9.passed &= radial_ids.len() == 3 && shift_ids.len() == 2;
    c9.passed &= worst_radial <= RADIAL_TOLERANCE;
    c9.passed &= total_time <= TOTAL_BUDGET;
    c9.detail = format!(
        "{}; worst radial residual {worst_radial:e}; all suites {:.3} s",
        c9.detail,
        total_time.as_secs_f64()
    );
    outcomes.push(c9);

    let (worst, count) = haar_against_quadrature();
    outcomes.push(Outcome {
        number: 10,
        title: "Haar integral against numeric quadrature",
        passed: count == 210 && worst <= HAAR_TOLERANCE,
        detail: format!("{count} monomials, worst deviation {worst:e}"),
    });

    for o in &outcomes {
        println!(
            "criterion {:>2} {} {}: {}",
            o.number,
            if o.passed { "PASS" } else { "FAIL" },
            o.title,
            o.detail
        );
    }
    let failed: Vec<usize> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.number)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
