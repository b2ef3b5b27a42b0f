use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} = {value} is outside the domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("invalid kernel specification: {0}")]
    InvalidSpec(String),

    #[error("series length {got} does not match mesh with {expected} nodes")]
    MeshMismatch { expected: usize, got: usize },

    #[error("root bracketing failed: {0}")]
    Bracket(String),

    #[error("tridiagonal system is singular at time step {step}")]
    Singular { step: usize },

    #[error("non-finite value produced at time step {step}")]
    NonFinite { step: usize },

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("mixed-norm exponents violate the source integrability relation: {0}")]
    NormRelation(String),

    #[error("box {0} contains no grid nodes")]
    EmptyBox(String),

    #[error("box {0} exceeds the extent of the field")]
    OutsideField(String),

    #[error("field is not a nonnegative supersolution: min value {min} below -1e-10")]
    NegativeField { min: f64 },

    #[error("degenerate fit: only {usable} usable levels (need at least 3)")]
    DegenerateFit { usable: usize },

    #[error("parse error: {0}")]
    Parse(String),
}
