//! Division-free determinants by dynamic programming over column subsets.
//!
//! Entries of the series matrices live in a polynomial ring, where Gaussian
//! elimination would require division. Expanding minors row by row instead
//! costs `O(n * 2^n)` ring multiplications — trivial for the dimensions here
//! (`n <= 8`) and exact over any commutative ring.
//!
//! When only the lowest-order term of a polynomial determinant is wanted, the
//! same recursion runs with all products truncated at an adaptively doubled
//! degree cap: coefficients up to the cap are exact, so the first nonzero
//! term found below it is the true leading term.

use crate::exact::ExactScalar;
use crate::exec::Execution;
use crate::matrix::{Matrix, RingScalar, TauPolyMatrix};
use crate::poly::TauPoly;

/// Masks of `0..2^n` grouped by population count.
fn masks_by_level(n: usize) -> Vec<Vec<u32>> {
    let mut levels = vec![Vec::new(); n + 1];
    for mask in 0u32..(1u32 << n) {
        levels[mask.count_ones() as usize].push(mask);
    }
    levels
}

/// Minor of the first `k` rows and the columns in `mask`, computed from the
/// previous level by Laplace expansion along row `k-1`.
fn expand_minor<T, M>(m: &Matrix<T>, mask: u32, prev: &[Option<T>], mul: &M) -> T
where
    T: RingScalar,
    M: Fn(&T, &T) -> T,
{
    let k = mask.count_ones() as usize;
    let row = k - 1;
    let mut acc: Option<T> = None;
    let mut pos = 0usize;
    for j in 0..32 {
        if mask & (1 << j) == 0 {
            continue;
        }
        let entry = m.get(row, j as usize);
        if !entry.is_ring_zero() {
            let sub = prev[(mask & !(1 << j)) as usize]
                .as_ref()
                .expect("minor table missing a level-(k-1) entry");
            if !sub.is_ring_zero() {
                let term = mul(entry, sub);
                let signed = if (row + pos) % 2 == 0 {
                    term
                } else {
                    term.ring_neg()
                };
                acc = Some(match acc {
                    None => signed,
                    Some(a) => a.ring_add(&signed),
                });
            }
        }
        pos += 1;
        if pos == k {
            break;
        }
    }
    acc.unwrap_or_else(|| m.get(0, 0).ring_sub(m.get(0, 0)))
}

fn det_with<T, M>(m: &Matrix<T>, exec: Execution, mul: M) -> T
where
    T: RingScalar + Send + Sync,
    M: Fn(&T, &T) -> T + Send + Sync,
{
    let n = m.n();
    assert!(n <= 20, "subset determinant is exponential in the dimension");
    let levels = masks_by_level(n);
    let mut table: Vec<Option<T>> = vec![None; 1 << n];
    // Empty minor: the multiplicative identity. Synthesised as a 1x1 base
    // case instead, to avoid needing a `one` for the ring.
    for &mask in &levels[1] {
        let j = mask.trailing_zeros() as usize;
        table[mask as usize] = Some(m.get(0, j).clone());
    }
    for level in &levels[2..=n] {
        let computed = exec.map_slice(level, |&mask| expand_minor(m, mask, &table, &mul));
        for (&mask, value) in level.iter().zip(computed) {
            table[mask as usize] = Some(value);
        }
    }
    table[(1usize << n) - 1].take().unwrap()
}

/// Determinant over any commutative ring, without division.
pub fn det_ring<T: RingScalar + Send + Sync>(m: &Matrix<T>, exec: Execution) -> T {
    det_with(m, exec, |a, b| a.ring_mul(b))
}

/// Determinant of a polynomial matrix.
pub fn poly_matrix_det(m: &TauPolyMatrix, exec: Execution) -> TauPoly {
    det_ring(m, exec)
}

/// Lowest-order nonzero term `(order, coefficient)` of `det(M)`, or `None`
/// when the determinant vanishes identically.
///
/// Runs the subset recursion with products truncated at a degree cap that
/// doubles until the leading term falls below it (or the cap passes the
/// maximum possible degree, proving the determinant is zero).
pub fn poly_det_lowest_term(m: &TauPolyMatrix, exec: Execution) -> Option<(usize, ExactScalar)> {
    let n = m.n();
    let max_entry_degree = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter_map(|(i, j)| m.get(i, j).degree())
        .max()?;
    let max_degree = n * max_entry_degree;
    let mut cap = 8usize;
    loop {
        let capped = cap.min(max_degree);
        let det = det_with(m, exec, |a, b| a.mul_trunc(b, capped));
        if let Some((k, c)) = det.lowest_term() {
            // Coefficients at or below the cap are exact, so the first
            // nonzero one is the true leading term.
            debug_assert!(k <= capped);
            return Some((k, c.clone()));
        }
        if capped == max_degree {
            return None;
        }
        cap *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ExactScalar;
    use crate::matrix::MatrixExact;

    fn int_matrix(rows: &[&[i64]]) -> MatrixExact {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| ExactScalar::int(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn scalar_determinants() {
        assert_eq!(
            det_ring(&int_matrix(&[&[7]]), Execution::Sequential),
            ExactScalar::int(7)
        );
        assert_eq!(
            det_ring(&int_matrix(&[&[1, 2], &[3, 4]]), Execution::Sequential),
            ExactScalar::int(-2)
        );
        assert_eq!(
            det_ring(
                &int_matrix(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 4]]),
                Execution::Sequential
            ),
            ExactScalar::int(18)
        );
        // Singular matrix.
        assert_eq!(
            det_ring(
                &int_matrix(&[&[1, 2, 3], &[4, 5, 6], &[5, 7, 9]]),
                Execution::Sequential
            ),
            ExactScalar::int(0)
        );
    }

    #[test]
    fn polynomial_determinant_of_shifted_identity() {
        // det(tau*I - J) for the 2x2 Jordan block J = [[0,1],[0,0]] is tau^2.
        let m = TauPolyMatrix::from_rows(vec![
            vec![
                TauPoly::monomial(ExactScalar::int(1), 1),
                TauPoly::constant(ExactScalar::int(-1)),
            ],
            vec![TauPoly::zero(), TauPoly::monomial(ExactScalar::int(1), 1)],
        ])
        .unwrap();
        let det = poly_matrix_det(&m, Execution::Sequential);
        assert_eq!(det, TauPoly::monomial(ExactScalar::int(1), 2));
        assert_eq!(
            poly_det_lowest_term(&m, Execution::Sequential),
            Some((2, ExactScalar::int(1)))
        );
    }

    #[test]
    fn lowest_term_with_cancellation() {
        // [[tau, tau], [tau, tau + tau^3]]: determinant is exactly tau^4
        // after the tau^2 terms cancel.
        let t = TauPoly::monomial(ExactScalar::int(1), 1);
        let t3 = TauPoly::monomial(ExactScalar::int(1), 3);
        let m = TauPolyMatrix::from_rows(vec![
            vec![t.clone(), t.clone()],
            vec![t.clone(), &t + &t3],
        ])
        .unwrap();
        assert_eq!(
            poly_det_lowest_term(&m, Execution::Sequential),
            Some((4, ExactScalar::int(1)))
        );
        assert_eq!(
            poly_matrix_det(&m, Execution::Sequential),
            TauPoly::monomial(ExactScalar::int(1), 4)
        );
    }

    #[test]
    fn identically_zero_polynomial_determinant() {
        let t = TauPoly::monomial(ExactScalar::int(1), 1);
        let m = TauPolyMatrix::from_rows(vec![
            vec![t.clone(), t.clone()],
            vec![t.clone(), t.clone()],
        ])
        .unwrap();
        assert_eq!(poly_det_lowest_term(&m, Execution::Sequential), None);
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_determinant_is_identical() {
        let m = int_matrix(&[
            &[3, 1, 4, 1, 5],
            &[9, 2, 6, 5, 3],
            &[5, 8, 9, 7, 9],
            &[3, 2, 3, 8, 4],
            &[6, 2, 6, 4, 3],
        ]);
        assert_eq!(
            det_ring(&m, Execution::Sequential),
            det_ring(&m, Execution::Parallel)
        );
    }
}
