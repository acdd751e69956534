use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("state window too small: amplitude {amplitude:.3e} at n = {n} lies outside the requested window")]
    WindowTooSmall { n: i64, amplitude: f64 },

    #[error("wavefront reached the window edge (boundary amplitude {amplitude:.3e})")]
    WindowOverflow { amplitude: f64 },

    #[error("embedded half-integer state has a nonzero amplitude at odd internal index {index}")]
    OddIndexAmplitude { index: i64 },

    #[error("state is not normalized (norm^2 = {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("density matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("Wigner sum has imaginary residue {residue:.3e} at n_twice = {n_twice}")]
    ImaginaryResidue { n_twice: i64, residue: f64 },

    #[error("operation requires {required}")]
    Unsupported { required: &'static str },

    #[error("grid too coarse: {count} samples, need at least {required}")]
    Aliasing { count: usize, required: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("spectrum undefined at n = {n}")]
    SpectrumUndefined { n: i64 },

    #[error("spinor parameters violate constraint `{constraint}` (residual {residual:.3e})")]
    SpinorConstraint { constraint: &'static str, residual: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("truncation certificate failed: tail mass {tail:.3e} exceeds {tolerance:.1e}")]
    Truncation { tail: f64, tolerance: f64 },

    #[error("no root of the stationary-phase condition in the bracket")]
    NoRoot,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("step size underflow at t = {t}")]
    StepUnderflow { t: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}
