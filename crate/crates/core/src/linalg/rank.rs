//! Exact matrix rank by fraction-full Gaussian elimination.

use num_traits::Zero;

use crate::exact::ExactScalar;
use crate::matrix::MatrixExact;

/// Rank of a rectangular matrix given as rows of exact scalars.
///
/// Plain Gaussian elimination over the exact field: pivot choice cannot affect
/// the result, so the first nonzero entry in each column is used.
pub fn rank_rect(rows: &[Vec<ExactScalar>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut work: Vec<Vec<ExactScalar>> = rows.to_vec();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot_row) = (rank..work.len()).find(|&r| !work[r][col].is_zero()) else {
            continue;
        };
        work.swap(rank, pivot_row);
        let inv = work[rank][col].inv();
        for r in rank + 1..work.len() {
            if work[r][col].is_zero() {
                continue;
            }
            let factor = &work[r][col] * &inv;
            for c in col..ncols {
                let delta = &factor * &work[rank][c];
                work[r][c] = &work[r][c] - &delta;
            }
        }
        rank += 1;
        if rank == work.len() {
            break;
        }
    }
    rank
}

/// Rank of a square exact matrix.
pub fn rank_exact(m: &MatrixExact) -> usize {
    let rows: Vec<Vec<ExactScalar>> = m.rows().map(|r| r.to_vec()).collect();
    rank_rect(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;

    fn int_matrix(rows: &[&[i64]]) -> MatrixExact {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| ExactScalar::int(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn full_rank_and_deficient() {
        assert_eq!(rank_exact(&int_matrix(&[&[1, 2], &[3, 4]])), 2);
        assert_eq!(rank_exact(&int_matrix(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank_exact(&int_matrix(&[&[0, 0], &[0, 0]])), 0);
    }

    #[test]
    fn rank_needs_exact_cancellation() {
        // Row 3 = row 1 + row 2 with fractions that cancel only exactly.
        let m = Matrix::from_rows(vec![
            vec![ExactScalar::ratio(1, 3), ExactScalar::ratio(1, 7), ExactScalar::int(1)],
            vec![ExactScalar::ratio(2, 5), ExactScalar::ratio(3, 11), ExactScalar::int(2)],
            vec![
                ExactScalar::ratio(11, 15),
                ExactScalar::ratio(32, 77),
                ExactScalar::int(3),
            ],
        ])
        .unwrap();
        assert_eq!(rank_exact(&m), 2);
    }

    #[test]
    fn rectangular_wide_and_tall() {
        let wide = vec![
            vec![ExactScalar::int(1), ExactScalar::int(0), ExactScalar::int(2)],
            vec![ExactScalar::int(0), ExactScalar::int(1), ExactScalar::int(1)],
        ];
        assert_eq!(rank_rect(&wide), 2);
        let tall = vec![
            vec![ExactScalar::int(1)],
            vec![ExactScalar::int(2)],
            vec![ExactScalar::int(3)],
        ];
        assert_eq!(rank_rect(&tall), 1);
    }

    #[test]
    fn complex_rank() {
        // [i, 1; 1, -i]: second row is -i times the first.
        let m = MatrixExact::from_fn(2, |i, j| match (i, j) {
            (0, 0) => ExactScalar::i(),
            (0, 1) => ExactScalar::int(1),
            (1, 0) => ExactScalar::int(1),
            _ => -ExactScalar::i(),
        });
        assert_eq!(rank_exact(&m), 1);
    }
}
