//! Exact and high-precision linear-algebra kernels.

mod charpoly;
mod definiteness;
mod expm;
mod polydet;
mod rank;
mod routh;
mod spectral;

pub use charpoly::{char_poly, char_poly_exact, char_poly_ring};
pub use definiteness::{definiteness, Definiteness};
pub use expm::{matrix_exp, matrix_exp_hp};
pub use polydet::{det_ring, poly_det_lowest_term, poly_matrix_det};
pub use rank::{rank_exact, rank_rect};
pub use routh::{hurwitz_real, RouthOutcome};
pub(crate) use routh::is_asymptotically_stable as matrix_routh;
pub use spectral::spectral_norm;
