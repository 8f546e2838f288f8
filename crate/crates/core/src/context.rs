//! Numeric context: working precision and execution mode.

use crate::error::{CoreError, Result};
use crate::exec::Execution;

/// Default mantissa precision for high-precision computations, in bits.
pub const DEFAULT_PRECISION_BITS: u32 = 512;

/// Smallest precision the float kernels accept at all.
pub const MIN_PRECISION_BITS: u32 = 64;

/// Smallest precision at which norm sweeps are meaningful: the contraction
/// guard is `2^(-precision/2)`, and sweep excesses sit far below double range.
pub const MIN_SWEEP_PRECISION_BITS: u32 = 256;

/// Precision and execution-mode configuration threaded through every
/// high-precision operation.
///
/// All arithmetic performed under a context rounds to nearest at
/// `precision_bits` mantissa bits; iterative kernels derive their tolerances
/// and guard thresholds from the same figure, so a context value fully
/// determines numeric behaviour.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Context {
    precision_bits: u32,
    exec: Execution,
}

impl Context {
    /// Context with the given mantissa precision and the default execution mode.
    pub fn new(precision_bits: u32) -> Result<Self> {
        if precision_bits < MIN_PRECISION_BITS {
            return Err(CoreError::PrecisionTooLow {
                bits: precision_bits,
                required: MIN_PRECISION_BITS,
                context: "the high-precision float kernels",
            });
        }
        Ok(Context {
            precision_bits,
            exec: Execution::default(),
        })
    }

    /// Same context with a different execution mode.
    pub fn with_exec(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    /// Mantissa precision in bits.
    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    /// Execution mode for data-parallel stages.
    pub fn exec(&self) -> Execution {
        self.exec
    }

    /// Errors unless the context is precise enough for norm sweeps.
    pub fn require_sweep_precision(&self) -> Result<()> {
        if self.precision_bits < MIN_SWEEP_PRECISION_BITS {
            return Err(CoreError::PrecisionTooLow {
                bits: self.precision_bits,
                required: MIN_SWEEP_PRECISION_BITS,
                context: "norm sweeps",
            });
        }
        Ok(())
    }
}

impl Default for Context {
    fn default() -> Self {
        Context {
            precision_bits: DEFAULT_PRECISION_BITS,
            exec: Execution::default(),
        }
    }
}
