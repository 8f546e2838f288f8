//! Error-to-exit-code mapping.
//!
//! The contract is fixed for scriptability: 0 success, 1 malformed input
//! (CLI usage, unreadable or unparsable files), 2 precondition failure
//! (input outside an operation's mathematical domain, or a reproduction row
//! that did not pass), 3 internal failure (an iteration or sampling budget
//! ran out).

use std::fmt;

use hypostab_core::CoreError;

#[derive(Debug)]
pub enum CliError {
    /// Bad invocation or unusable input file; exit 1.
    Usage(String),
    /// Domain guard tripped before calling into the library; exit 2.
    Precondition(String),
    /// Library failure; exit code depends on the variant.
    Core(CoreError),
    /// Reproduction rows that did not pass; exit 2.
    RowsFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Precondition(_) => 2,
            CliError::Core(CoreError::Parse(_)) => 1,
            CliError::Core(e) if e.is_precondition() => 2,
            CliError::Core(_) => 3,
            CliError::RowsFailed(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Precondition(msg) => f.write_str(msg),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::RowsFailed(k) => write!(f, "{k} result row(s) failed"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_the_contract() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 1);
        assert_eq!(CliError::Core(CoreError::Parse("x".into())).exit_code(), 1);
        assert_eq!(CliError::Precondition("x".into()).exit_code(), 2);
        assert_eq!(
            CliError::Core(CoreError::InvalidOrder { order: 6 }).exit_code(),
            2
        );
        assert_eq!(
            CliError::Core(CoreError::NonConvergence {
                kernel: "jacobi",
                budget: 1
            })
            .exit_code(),
            3
        );
        assert_eq!(CliError::RowsFailed(2).exit_code(), 2);
    }
}
