//! Parallelizable manifolds described by a global frame.

mod su2;
mod symbol;

use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polyring::{Derivation, Monomial, Polynomial, Var, VariableSet};
use crate::scalar::{Coeff, Surd};

pub use su2::{
    hopf_projection, left_invariant_field, right_invariant_field, right_invariant_frame_vector,
    PolyMat2,
};
pub use symbol::{
    homogenize, principal_symbol, restrict_to_fiber_mode, SecondOrderOperator, SymmetricTensor,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Signature {
    Riemannian,
    Lorentzian,
}

/// Raw data for a frame manifold, validated by [`FrameManifold::new`].
#[derive(Clone, Debug)]
pub struct FrameSpec {
    pub name: String,
    pub labels: Vec<String>,
    pub vars: VariableSet,
    /// `c^a_{bc}`, indexed `[a][b][c]`.
    pub structure: Vec<Vec<Vec<BigRational>>>,
    pub frame_actions: Vec<Derivation>,
    pub metric: Vec<Polynomial>,
    pub inverse_metric: Vec<Polynomial>,
    /// `√|det g|` in the frame.
    pub volume: Polynomial,
    pub signature: Signature,
    pub compact: bool,
}

/// A manifold with a global frame `E_a`, dual coframe `θ^a`, diagonal metric
/// and constant structure constants `[E_b, E_c] = c^a_{bc} E_a`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameManifold {
    name: String,
    labels: Vec<String>,
    vars: VariableSet,
    structure: Vec<BigRational>,
    frame_actions: Vec<Derivation>,
    metric: Vec<Polynomial>,
    inverse_metric: Vec<Polynomial>,
    volume: Polynomial,
    signature: Signature,
    compact: bool,
}

impl FrameManifold {
    pub fn new(spec: FrameSpec) -> Result<Arc<FrameManifold>> {
        let n = spec.labels.len();
        let bad = |msg: &str| Error::InvalidParameter(format!("{}: {msg}", spec.name));
        if n == 0 || n > 15 {
            return Err(bad("dimension must be between 1 and 15"));
        }
        if spec.frame_actions.len() != n || spec.metric.len() != n || spec.inverse_metric.len() != n
        {
            return Err(bad("frame data has the wrong length"));
        }
        let mut structure = Vec::with_capacity(n * n * n);
        if spec.structure.len() != n {
            return Err(bad("structure constants have the wrong shape"));
        }
        for a in 0..n {
            if spec.structure[a].len() != n || spec.structure[a].iter().any(|r| r.len() != n) {
                return Err(bad("structure constants have the wrong shape"));
            }
            for b in 0..n {
                for c in 0..n {
                    if spec.structure[a][b][c] != -spec.structure[a][c][b].clone() {
                        return Err(bad("structure constants are not antisymmetric"));
                    }
                    structure.push(spec.structure[a][b][c].clone());
                }
            }
        }
        let one = Polynomial::one(spec.vars);
        let mut det = one.clone();
        for (i, (g, gi)) in spec.metric.iter().zip(&spec.inverse_metric).enumerate() {
            if g.is_zero() {
                return Err(Error::DegenerateMetric(i));
            }
            if g.try_mul(gi)? != one {
                return Err(bad("inverse metric is not the reciprocal of the metric"));
            }
            det = det.try_mul(g)?;
        }
        let vol_sq = spec.volume.try_mul(&spec.volume)?;
        if vol_sq != det && vol_sq != -&det {
            return Err(bad("volume coefficient does not square to |det g|"));
        }
        Ok(Arc::new(FrameManifold {
            name: spec.name,
            labels: spec.labels,
            vars: spec.vars,
            structure,
            frame_actions: spec.frame_actions,
            metric: spec.metric,
            inverse_metric: spec.inverse_metric,
            volume: spec.volume,
            signature: spec.signature,
            compact: spec.compact,
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vars(&self) -> VariableSet {
        self.vars
    }

    pub fn structure_constant(&self, a: usize, b: usize, c: usize) -> &BigRational {
        let n = self.dim();
        &self.structure[(a * n + b) * n + c]
    }

    pub fn frame_action(&self, a: usize) -> &Derivation {
        &self.frame_actions[a]
    }

    pub fn frame_actions(&self) -> &[Derivation] {
        &self.frame_actions
    }

    pub fn metric(&self, a: usize) -> &Polynomial {
        &self.metric[a]
    }

    pub fn inverse_metric(&self, a: usize) -> &Polynomial {
        &self.inverse_metric[a]
    }

    pub fn volume_coefficient(&self) -> &Polynomial {
        &self.volume
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn is_compact(&self) -> bool {
        self.compact
    }

    /// Commuting frame with a constant metric.
    pub fn is_flat(&self) -> bool {
        self.structure.iter().all(Zero::is_zero)
            && self.metric.iter().all(|g| g.as_constant().is_some())
    }

    /// `E_a(f)`.
    pub fn derivative(&self, a: usize, f: &Polynomial) -> Result<Polynomial> {
        self.frame_actions[a].apply(f)
    }

    pub fn check_same(&self, other: &FrameManifold) -> Result<()> {
        if self.name != other.name {
            return Err(Error::ManifoldMismatch {
                left: self.name.clone(),
                right: other.name.clone(),
            });
        }
        Ok(())
    }

    pub fn constant(&self, c: impl Into<Coeff>) -> Polynomial {
        Polynomial::constant(self.vars, c)
    }
}

impl Serialize for FrameManifold {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.dim();
        let mut constants = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let k = self.structure_constant(a, b, c);
                    if !k.is_zero() {
                        constants.push((
                            a + 1,
                            b + 1,
                            c + 1,
                            Surd::from_rational(k.clone()).to_string(),
                        ));
                    }
                }
            }
        }
        let mut st = s.serialize_struct("FrameManifold", 7)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("dim", &n)?;
        st.serialize_field("labels", &self.labels)?;
        st.serialize_field("signature", &self.signature)?;
        st.serialize_field("structure_constants", &constants)?;
        st.serialize_field(
            "metric",
            &self
                .metric
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>(),
        )?;
        st.serialize_field("volume", &self.volume.to_string())?;
        st.end()
    }
}

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn zero_structure(n: usize) -> Vec<Vec<Vec<BigRational>>> {
    vec![vec![vec![BigRational::zero(); n]; n]; n]
}

fn levi_civita(a: usize, b: usize, c: usize) -> i64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

fn flat(
    name: &str,
    coords: &[Var],
    vars: VariableSet,
    signs: &[i64],
    signature: Signature,
) -> Arc<FrameManifold> {
    let n = coords.len();
    FrameManifold::new(FrameSpec {
        name: name.into(),
        labels: coords.iter().map(|v| format!("d{v}")).collect(),
        vars,
        structure: zero_structure(n),
        frame_actions: coords
            .iter()
            .map(|v| Derivation::partial(vars, *v))
            .collect(),
        metric: signs
            .iter()
            .map(|&s| Polynomial::constant(vars, s))
            .collect(),
        inverse_metric: signs
            .iter()
            .map(|&s| Polynomial::constant(vars, s))
            .collect(),
        volume: Polynomial::one(vars),
        signature,
        compact: false,
    })
    .expect("flat frame data is consistent")
}

/// ℝ³ with coordinates `x, y, z` and the Euclidean metric.
pub fn euclidean_r3() -> Arc<FrameManifold> {
    static CELL: OnceLock<Arc<FrameManifold>> = OnceLock::new();
    Arc::clone(CELL.get_or_init(|| {
        flat(
            "R3",
            &[Var::X, Var::Y, Var::Z],
            VariableSet::EUCLIDEAN3,
            &[1, 1, 1],
            Signature::Riemannian,
        )
    }))
}

/// Minkowski space with coordinates `t, x, y, z` and signature `(-,+,+,+)`.
pub fn minkowski() -> Arc<FrameManifold> {
    flat(
        "R1,3",
        &[Var::T, Var::X, Var::Y, Var::Z],
        VariableSet::MINKOWSKI,
        &[-1, 1, 1, 1],
        Signature::Lorentzian,
    )
}

fn su2_structure(offset: usize, n: usize) -> Vec<Vec<Vec<BigRational>>> {
    let mut c = zero_structure(n);
    for a in 0..3 {
        for b in 0..3 {
            for d in 0..3 {
                c[a + offset][b + offset][d + offset] = rational(levi_civita(a, b, d));
            }
        }
    }
    c
}

/// SU(2) ≅ S³ with the left-invariant frame `X_a` and unit metric.
pub fn su2_killing() -> Arc<FrameManifold> {
    static CELL: OnceLock<Arc<FrameManifold>> = OnceLock::new();
    Arc::clone(CELL.get_or_init(build_su2))
}

fn build_su2() -> Arc<FrameManifold> {
    let vars = VariableSet::SU2;
    FrameManifold::new(FrameSpec {
        name: "SU2".into(),
        labels: (1..=3).map(|a| format!("theta{a}")).collect(),
        vars,
        structure: su2_structure(0, 3),
        frame_actions: (1..=3).map(left_invariant_field).collect(),
        metric: vec![Polynomial::one(vars); 3],
        inverse_metric: vec![Polynomial::one(vars); 3],
        volume: Polynomial::one(vars),
        signature: Signature::Riemannian,
        compact: true,
    })
    .expect("SU(2) frame data is consistent")
}

/// ℝ⁴₀ = ℝ₊ × S³ with `g = dr² + r²(θ¹² + θ²²) + k θ³²`.
pub fn r4_monopole(k: &BigRational) -> Result<Arc<FrameManifold>> {
    if !k.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "k must be positive, got {k}"
        )));
    }
    let vars = VariableSet::MONOPOLE;
    let r_pow = |e: i32| {
        Polynomial::monomial(vars, Monomial::one().with(Var::R, e), 1).expect("r is Laurent")
    };
    let sqrt_k = Surd::sqrt_rational(k)
        .ok_or_else(|| Error::InvalidParameter(format!("k = {k} is too large")))?;
    let mut actions = vec![Derivation::partial(vars, Var::R).with_label("d/dr")];
    for a in 1..=3 {
        let x = left_invariant_field(a);
        let mut images: Vec<(Var, Polynomial)> = VariableSet::SU2
            .vars()
            .map(|v| {
                (
                    v,
                    x.image(v).expect("su2 image").embed(vars).expect("subset"),
                )
            })
            .collect();
        images.push((Var::R, Polynomial::zero(vars)));
        actions.push(Derivation::new(x.label(), images));
    }
    FrameManifold::new(FrameSpec {
        name: format!("R4_0(k={k})"),
        labels: vec![
            "dr".into(),
            "theta1".into(),
            "theta2".into(),
            "theta3".into(),
        ],
        vars,
        structure: su2_structure(1, 4),
        frame_actions: actions,
        metric: vec![
            Polynomial::one(vars),
            r_pow(2),
            r_pow(2),
            Polynomial::constant(vars, k.clone()),
        ],
        inverse_metric: vec![
            Polynomial::one(vars),
            r_pow(-2),
            r_pow(-2),
            Polynomial::constant(vars, k.recip()),
        ],
        volume: r_pow(2).scale(&Coeff::Exact(sqrt_k)),
        signature: Signature::Riemannian,
        compact: false,
    })
}

/// A vector field `Y = Σ Y^a E_a` in frame components.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameVector {
    manifold: Arc<FrameManifold>,
    components: Vec<Polynomial>,
}

impl FrameVector {
    pub fn new(manifold: &Arc<FrameManifold>, components: Vec<Polynomial>) -> Result<Self> {
        if components.len() != manifold.dim() {
            return Err(Error::InvalidParameter(
                "frame vector has the wrong number of components".into(),
            ));
        }
        let components = components
            .iter()
            .map(|c| c.embed(manifold.vars()))
            .collect::<Result<_>>()?;
        Ok(FrameVector {
            manifold: manifold.clone(),
            components,
        })
    }

    /// The frame field `E_a`.
    pub fn basis(manifold: &Arc<FrameManifold>, a: usize) -> Self {
        let vars = manifold.vars();
        let components = (0..manifold.dim())
            .map(|b| {
                if a == b {
                    Polynomial::one(vars)
                } else {
                    Polynomial::zero(vars)
                }
            })
            .collect();
        FrameVector {
            manifold: manifold.clone(),
            components,
        }
    }

    pub fn manifold(&self) -> &Arc<FrameManifold> {
        &self.manifold
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, a: usize) -> &Polynomial {
        &self.components[a]
    }

    /// `Y(f) = Σ Y^a E_a(f)`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(f.vars());
        for (a, ya) in self.components.iter().enumerate() {
            if ya.is_zero() {
                continue;
            }
            let ea = self.manifold.derivative(a, f)?;
            acc = acc.try_add(&ya.embed(f.vars())?.try_mul(&ea)?)?;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Coeff) -> FrameVector {
        FrameVector {
            manifold: self.manifold.clone(),
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_frame() {
        let m = euclidean_r3();
        assert_eq!(m.dim(), 3);
        assert!(m.is_flat());
        for a in 0..3 {
            assert_eq!(m.metric(a), &Polynomial::one(VariableSet::EUCLIDEAN3));
            for b in 0..3 {
                for c in 0..3 {
                    assert!(m.structure_constant(a, b, c).is_zero());
                }
            }
        }
        let x = Polynomial::var(VariableSet::EUCLIDEAN3, Var::X);
        assert_eq!(m.derivative(0, &x.pow(2)).unwrap(), x.scale(&Coeff::int(2)));
    }

    #[test]
    fn monopole_metric() {
        let k = BigRational::new(4.into(), 1.into());
        let m = r4_monopole(&k).unwrap();
        let vars = VariableSet::MONOPOLE;
        let r2 = Polynomial::var(vars, Var::R).pow(2);
        assert_eq!(m.volume_coefficient(), &r2.scale(&Coeff::int(2)));
        assert_eq!(m.metric(3), &Polynomial::constant(vars, 4));
        assert_eq!(m.metric(1), &r2);
        assert!(r4_monopole(&BigRational::zero()).is_err());
        assert!(r4_monopole(&-k).is_err());
    }

    #[test]
    fn unit_slice_is_unit_metric() {
        let m = r4_monopole(&BigRational::from_integer(1.into())).unwrap();
        let p = crate::polyring::Point::new().with_real(Var::R, 1.0);
        for a in 0..4 {
            assert_eq!(m.metric(a).eval(&p).unwrap().re, 1.0);
        }
    }

    #[test]
    fn descriptor_json() {
        let json = serde_json::to_value(&*su2_killing()).unwrap();
        assert_eq!(json["dim"], 3);
        assert_eq!(json["structure_constants"].as_array().unwrap().len(), 6);
    }
}
