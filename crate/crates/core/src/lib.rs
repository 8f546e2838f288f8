//! Exact and high-precision analysis of semi-dissipative linear systems and of
//! the explicit Runge-Kutta schemes used to integrate them.
//!
//! The crate has three layers:
//!
//! * **Scalar kernels** — exact complex rationals ([`ExactScalar`]), polynomials
//!   in a real step-size variable ([`TauPoly`]), and a deterministic
//!   arbitrary-precision binary float ([`HpFloat`], [`HpComplex`]) that rounds
//!   to nearest at a configurable number of mantissa bits.
//! * **Matrix kernels** — dense square matrices over any of those scalars with
//!   exact characteristic polynomials, definiteness classification, ranks,
//!   division-free determinants, a complex Jacobi spectral norm, and a matrix
//!   exponential with a rigorous truncation bound.
//! * **Analysis** — hypocoercivity indices and structural reports for
//!   semi-dissipative matrices ([`hypo`]), stability functions of explicit
//!   Runge-Kutta tableaux ([`rk`]), strong-stability decision procedures that
//!   combine exact series expansions with high-precision norm sweeps ([`stab`]),
//!   and short-time propagator-decay fits ([`decay`]).
//!
//! All decision procedures are deterministic: given the same inputs, precision
//! and seeds they produce bit-identical results, independently of the execution
//! mode selected in [`Execution`].

pub mod context;
pub mod decay;
pub mod error;
pub mod exact;
pub mod exec;
pub mod float;
pub mod hypo;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod rk;
pub mod sample;
pub mod stab;
pub mod suite;

pub use context::Context;
pub use error::{CoreError, Result};
pub use exact::ExactScalar;
pub use exec::Execution;
pub use float::{HpComplex, HpFloat};
pub use matrix::{Matrix, MatrixExact, MatrixHp, TauPolyMatrix};
pub use poly::TauPoly;
