//! Error type shared by every fallible operation in the crate.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, CoreError>;

/// Failure modes of the analysis and numeric kernels.
///
/// Variants distinguish *precondition* failures (the input is outside an
/// operation's domain) from *internal* failures (a budgeted iteration did not
/// converge, or sampling could not produce enough admissible instances), so
/// callers can map them to distinct exit codes.
#[derive(Debug, Error)]
pub enum CoreError {
    /// A matrix expected to be Hermitian was not (exact comparison).
    #[error("matrix is not Hermitian: entry ({i},{j}) differs from the conjugate of ({j},{i})")]
    NotHermitian { i: usize, j: usize },

    /// The Hermitian part of the matrix has an eigenvalue with positive sign,
    /// so the hypocoercivity machinery does not apply.
    #[error("matrix is not semi-dissipative: its Hermitian part is {found}, not negative semi-definite")]
    NotSemiDissipative { found: &'static str },

    /// The Hermitian part is identically zero: decay bounds are undefined.
    #[error("Hermitian part of the matrix is zero: index bounds are undefined (fully conservative system)")]
    ZeroDissipativePart,

    /// A Butcher tableau has a nonzero entry on or above the diagonal.
    #[error("tableau is not explicit: coefficient a[{row}][{col}] is nonzero on or above the diagonal")]
    NotExplicit { row: usize, col: usize },

    /// A closed-form expression was requested outside its validity range.
    #[error("order {order} is outside the validity range of the closed form (requires a positive multiple of 4)")]
    InvalidOrder { order: usize },

    /// A series determinant vanished identically, so no leading term exists.
    #[error("determinant series is identically zero; no leading term exists")]
    IdenticallyZero,

    /// The working precision is below the minimum the operation needs.
    #[error("precision of {bits} bits is too low: {context} requires at least {required} bits")]
    PrecisionTooLow {
        bits: u32,
        required: u32,
        context: &'static str,
    },

    /// An iterative kernel exhausted its iteration budget.
    #[error("{kernel} did not converge within {budget} iterations; this usually signals a precision misconfiguration")]
    NonConvergence { kernel: &'static str, budget: usize },

    /// Rejection sampling could not produce enough admissible matrices.
    #[error("sampling exhausted: {accepted} of {requested} admissible matrices found after {attempts} attempts")]
    SamplingExhausted {
        requested: usize,
        accepted: usize,
        attempts: usize,
    },

    /// A least-squares decay fit had no usable data.
    #[error("decay fit is degenerate: {reason}; raise the working precision or widen the fit window")]
    FitDegenerate { reason: String },

    /// The matrix has no finite hypocoercivity index, so index-driven
    /// predictions (short-time decay exponents) are undefined.
    #[error("matrix is not hypocoercive: no m <= n-1 makes the T_m sum negative definite")]
    NotHypocoercive,

    /// A test matrix handed to a batch operation failed a precondition.
    #[error("test matrix {index} rejected: {source}")]
    TestMatrixRejected {
        index: usize,
        #[source]
        source: Box<CoreError>,
    },

    /// Malformed textual input (rational strings, matrix files, tableau files).
    #[error("parse error: {0}")]
    Parse(String),
}

impl CoreError {
    /// True for errors that indicate invalid input rather than an internal
    /// failure of an iteration or sampling budget.
    pub fn is_precondition(&self) -> bool {
        !matches!(
            self,
            CoreError::NonConvergence { .. } | CoreError::SamplingExhausted { .. }
        )
    }
}
