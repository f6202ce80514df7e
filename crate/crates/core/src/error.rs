use thiserror::Error;

use crate::polyring::Var;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("variable sets differ: {left} vs {right}")]
    MismatchedVariables { left: String, right: String },
    #[error("variable `{0}` is not in the polynomial's variable set")]
    VariableNotInSet(Var),
    #[error("variable set is not closed under conjugation: {0}")]
    NotConjugationClosed(String),
    #[error("only `r` may carry a negative exponent (got `{0}`)")]
    NegativeExponent(Var),
    #[error("derivation `{label}` has no image for `{var}`")]
    MissingImage { label: String, var: Var },
    #[error("variable `{0}` is not assigned")]
    UnassignedVariable(Var),
    #[error("values assigned to `{0}` and its conjugate are not complex conjugates")]
    NonConjugateAssignment(Var),
    #[error("real variable `{0}` assigned a non-real value")]
    NonRealAssignment(Var),
    #[error("evaluation hits a pole at `{0}` = 0")]
    Singular(Var),
    #[error("Haar integration needs a polynomial in u, v and their conjugates only (found `{0}`)")]
    NotSu2(Var),
    #[error("manifolds differ: `{left}` vs `{right}`")]
    ManifoldMismatch { left: String, right: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("operator is not of Schrodinger shape: {0}")]
    NotSchrodingerShape(String),
    #[error("metric entry {0} is degenerate")]
    DegenerateMetric(usize),
    #[error("no integration measure on the non-compact manifold `{0}`")]
    UnsupportedDomain(String),
    #[error("form is not idempotent under the Clifford product")]
    NotIdempotent,
    #[error("form does not lie in the ideal")]
    NotInIdeal,
    #[error("supplied basis does not span the ideal: {0}")]
    BasisMismatch(String),
    #[error("expected constant coefficients")]
    NonConstant,
    #[error("context is not flat")]
    NotFlat,
    #[error("volume element does not square to -1")]
    NoComplexStructure,
    #[error("projector is not covariantly constant")]
    NotCovariantlyConstant,
    #[error("polynomial is not equivariant with charge {0}")]
    NotEquivariant(String),
    #[error("j = {target} does not occur in {j1} x {j2}")]
    NotInDecomposition {
        j1: String,
        j2: String,
        target: String,
    },
    #[error("unsupported sector: |n| = {n} exceeds l + 1/2 = {bound}")]
    UnsupportedSector { n: String, bound: String },
    #[error("no solution: energy {0} is not positive")]
    NoSolution(f64),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("singular linear system")]
    SingularMatrix,
}

pub type Result<T> = std::result::Result<T, Error>;
