use thiserror::Error;

/// Errors shared by all kernels in this crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at q = {0}")]
    Pole(String),
    #[error("evaluation at q = 0 is undefined for Laurent terms")]
    EvalAtZero,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("linear system is underdetermined")]
    Underdetermined,
    #[error("Yang-Baxter equation fails: {0}")]
    NotBraiding(String),
    #[error("neither involutive nor Hecke: {0}")]
    UnknownClass(String),
    #[error("braiding is not skew-invertible: {0}")]
    NotSkewInvertible(String),
    #[error("C*B is not a power of q times the identity: {0}")]
    BcNotScalar(String),
    #[error("B matrix is singular")]
    SingularB,
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("degree cap exceeded: {0}")]
    DegreeCap(String),
    #[error("representation check failed: {0}")]
    BadRepresentation(String),
    #[error("sl-reduction unavailable: Tr C = 0")]
    TrCZero,
    #[error("reduction singular: xi = 0")]
    ReductionSingular,
    #[error("operation requires an involutive symmetry")]
    NotInvolutive,
    #[error("operation requires generic q (omega = 0 here)")]
    OmegaZero,
    #[error("representation is not tagged equivariant")]
    NotEquivariant,
    #[error("missing scalar chi certificate for ell")]
    NoChi,
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
