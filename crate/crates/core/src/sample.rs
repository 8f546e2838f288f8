//! Random test-matrix generators over small-integer rationals.
//!
//! Semi-dissipative candidates are built structurally as `L = -B B* + S`
//! with `B` a real integer matrix of chosen rank and `S` skew-Hermitian, so
//! the Hermitian part is `-B B*` by construction — negative semi-definite of
//! rank `rank B` — and no numerical projection is involved. Callers supply
//! the RNG, so draws are reproducible from a seed.

use rand::Rng;

use crate::exact::ExactScalar;
use crate::matrix::{Matrix, MatrixExact};

/// Entry range for the integer data: small values keep the exact arithmetic
/// cheap while still exercising nontrivial spectra.
const SPAN: i64 = 2;

fn small_int(rng: &mut impl Rng) -> i64 {
    rng.gen_range(-SPAN..=SPAN)
}

/// `L = -B B^T + S` with `B` an `n x r` integer matrix and `S` integer
/// skew-Hermitian (complex when `complex` is set: `S = K + iJ` with `K`
/// skew-symmetric and `J` symmetric).
fn build_candidate(rng: &mut impl Rng, n: usize, r: usize, complex: bool) -> MatrixExact {
    let b: Vec<Vec<i64>> = (0..n)
        .map(|_| (0..r).map(|_| small_int(rng)).collect())
        .collect();
    let mut k = vec![vec![0i64; n]; n];
    let mut j = vec![vec![0i64; n]; n];
    for p in 0..n {
        for q in (p + 1)..n {
            k[p][q] = small_int(rng);
            k[q][p] = -k[p][q];
            if complex {
                j[p][q] = small_int(rng);
                j[q][p] = j[p][q];
            }
        }
        if complex {
            j[p][p] = small_int(rng);
        }
    }
    Matrix::from_fn(n, |p, q| {
        let gram: i64 = (0..r).map(|t| b[p][t] * b[q][t]).sum();
        let re = ExactScalar::int(-gram + k[p][q]);
        if complex && j[p][q] != 0 {
            &re + &(&ExactScalar::int(j[p][q]) * &ExactScalar::i())
        } else {
            re
        }
    })
}

/// Draw a candidate member of the family with index cap `m`: dimension in
/// `2..=max_n`, Hermitian-part rank at least `ceil(n/(m+1))` (smaller ranks
/// force an index above `m`, so sampling them would only burn the rejection
/// budget), complex in half the draws. The caller still has to filter for
/// asymptotic stability and the actual index.
pub fn random_lasm_candidate(rng: &mut impl Rng, max_n: usize, m: usize) -> MatrixExact {
    assert!(max_n >= 2, "sampling needs dimensions of at least 2");
    let n = rng.gen_range(2..=max_n);
    let r_min = n.div_ceil(m + 1).max(1);
    let r = rng.gen_range(r_min..=n);
    let complex = rng.gen_bool(0.5);
    build_candidate(rng, n, r, complex)
}

/// Draw a semi-dissipative matrix with no rank constraint on the Hermitian
/// part (it may even vanish).
pub fn random_semi_dissipative(rng: &mut impl Rng, max_n: usize) -> MatrixExact {
    assert!(max_n >= 2, "sampling needs dimensions of at least 2");
    let n = rng.gen_range(2..=max_n);
    let r = rng.gen_range(0..=n);
    let complex = rng.gen_bool(0.5);
    build_candidate(rng, n, r, complex)
}

/// Unstructured matrix with small rational entries (denominators 1..=3),
/// complex when requested. Used to exercise kernels against brute-force
/// oracles.
pub fn random_exact_matrix(rng: &mut impl Rng, n: usize, complex: bool) -> MatrixExact {
    Matrix::from_fn(n, |_, _| {
        let re = ExactScalar::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3));
        if complex {
            let im = ExactScalar::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3));
            &re + &(&im * &ExactScalar::i())
        } else {
            re
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypo::is_semi_dissipative;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn candidates_are_semi_dissipative_by_construction() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..25 {
            let l = random_lasm_candidate(&mut rng, 5, 2);
            assert!(l.n() >= 2 && l.n() <= 5);
            assert!(is_semi_dissipative(&l));
        }
        for _ in 0..25 {
            let l = random_semi_dissipative(&mut rng, 4);
            assert!(is_semi_dissipative(&l));
        }
    }

    #[test]
    fn draws_are_reproducible_from_the_seed() {
        let mut a = ChaCha8Rng::seed_from_u64(99);
        let mut b = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..5 {
            assert_eq!(
                random_lasm_candidate(&mut a, 6, 1),
                random_lasm_candidate(&mut b, 6, 1)
            );
        }
    }

    #[test]
    fn unstructured_draws_cover_complex_entries() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut saw_imaginary = false;
        for _ in 0..10 {
            let m = random_exact_matrix(&mut rng, 3, true);
            for i in 0..3 {
                for j in 0..3 {
                    if !m.get(i, j).is_real() {
                        saw_imaginary = true;
                    }
                }
            }
        }
        assert!(saw_imaginary);
    }
}
