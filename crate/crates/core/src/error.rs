use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPsd(f64),
    #[error("operator norm {0} is not below 1")]
    NormTooLarge(f64),
    #[error("matrix is singular")]
    Singular,
    #[error("pole: z * x2 = 1 for a non-triangular point")]
    PoleAtZ,
    #[error("|x3| >= 1, beta parameters undefined")]
    OnTorus,
    #[error("|beta1| + |beta2| >= 1")]
    BadBeta,
    #[error("point has a non-real coordinate")]
    NotReal,
    #[error("point is not in the distinguished boundary")]
    NotPeak,
    #[error("point lies in the closed tetrablock")]
    InsideClosure,
    #[error("point lies outside the {0}")]
    Outside(&'static str),
    #[error("lambda0 must satisfy 0 < |lambda0| < 1")]
    BadLambda,
    #[error("argument outside the open unit disc")]
    OutsideDisc,
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("interpolation data infeasible (margin {0:e})")]
    Infeasible(f64),
    #[error("numerical degeneracy: {0}")]
    NumericalDegenerate(&'static str),
    #[error("alpha is the zero vector")]
    ZeroAlpha,
    #[error("M is positive definite (min eigenvalue {0:e})")]
    PositiveDefinite(f64),
    #[error("extremal data: D(x) = |lambda0|")]
    Extremal,
    #[error("triangular data: ab = p")]
    Triangular,
    #[error("sigma^2 = {0} outside ({1}, {2})")]
    SigmaOutOfRange(f64, f64, f64),
    #[error("scalar Pick data infeasible")]
    InfeasiblePick,
    #[error("point is not triangular")]
    NotTriangular,
    #[error("pole: x2 * y1 = 1")]
    Pole,
    #[error("bad shape: {0}")]
    BadShape(&'static str),
    #[error("at most two interpolation points are supported")]
    TooManyPoints,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
