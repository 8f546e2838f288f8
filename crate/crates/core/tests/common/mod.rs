//! Independent oracles for the conformance tests: a Leibniz-formula
//! determinant, a power-iteration spectral norm, and small deterministic
//! generators. Everything here is deliberately naive — the point is an
//! implementation too simple to share a bug with the optimized kernels it
//! cross-checks.

use hypostab_core::{
    ExactScalar, HpComplex, HpFloat, Matrix, MatrixExact, MatrixHp, TauPoly, TauPolyMatrix,
};
use itertools::Itertools;
use rand::Rng;

/// Parity of a permutation by inversion count.
fn permutation_sign(perm: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Determinant straight from the Leibniz formula (n! terms; keep n small).
#[allow(dead_code)]
pub fn leibniz_det_exact(m: &MatrixExact) -> ExactScalar {
    let n = m.n();
    let mut det = ExactScalar::int(0);
    for perm in (0..n).permutations(n) {
        let mut term = ExactScalar::int(1);
        for (i, &j) in perm.iter().enumerate() {
            term = &term * m.get(i, j);
        }
        det = if permutation_sign(&perm) < 0 {
            &det - &term
        } else {
            &det + &term
        };
    }
    det
}

/// Leibniz determinant over the polynomial ring.
#[allow(dead_code)]
pub fn leibniz_det_poly(m: &TauPolyMatrix) -> TauPoly {
    let n = m.n();
    let mut det = TauPoly::zero();
    for perm in (0..n).permutations(n) {
        let mut term = TauPoly::one();
        for (i, &j) in perm.iter().enumerate() {
            term = &term * m.get(i, j);
        }
        det = if permutation_sign(&perm) < 0 {
            &det - &term
        } else {
            &det + &term
        };
    }
    det
}

fn matvec(m: &MatrixHp, x: &[HpComplex], prec: u32) -> Vec<HpComplex> {
    (0..m.n())
        .map(|i| {
            let mut acc = HpComplex::zero(prec);
            for (j, xj) in x.iter().enumerate() {
                acc = &acc + &(m.get(i, j) * xj);
            }
            acc
        })
        .collect()
}

fn dot_re(x: &[HpComplex], y: &[HpComplex], prec: u32) -> HpFloat {
    let mut acc = HpFloat::zero(prec);
    for (a, b) in x.iter().zip(y) {
        acc = &acc + &(&a.conj() * b).re;
    }
    acc
}

/// Spectral norm by power iteration on `A* A` with a Rayleigh quotient.
///
/// Stops once the quotient has been stationary to relative `2^-(prec/3 + 96)`
/// over three consecutive iterations; panics if the iteration budget runs out,
/// so a non-converging case fails loudly instead of validating against a
/// half-converged oracle.
#[allow(dead_code)]
pub fn power_iteration_norm(a: &MatrixHp, prec: u32) -> HpFloat {
    let wp = prec + 64;
    let n = a.n();
    let m = a.with_min_prec(wp);
    let adj = m.adjoint();

    // Fixed start vector with unequal entries; a random test matrix is never
    // orthogonal to it in practice.
    let mut x: Vec<HpComplex> = (0..n)
        .map(|k| HpComplex::from_re(HpFloat::from_u64(2 * k as u64 + 1, wp)))
        .collect();

    let tol_exp = -((prec / 3) as i64) - 96;
    let mut rho_prev = HpFloat::zero(wp);
    let mut stable = 0;
    let mut rho = HpFloat::zero(wp);
    let budget = 200_000;
    for iter in 0..=budget {
        assert!(iter < budget, "power iteration failed to converge");
        let y = matvec(&m, &x, wp);
        let z = matvec(&adj, &y, wp);
        let xx = dot_re(&x, &x, wp);
        let xz = dot_re(&x, &z, wp);
        if xz.is_zero() {
            return HpFloat::zero(prec);
        }
        rho = &xz / &xx;
        let tol = &rho * &HpFloat::pow2(tol_exp, wp);
        if (&rho - &rho_prev).abs() <= tol {
            stable += 1;
            if stable >= 3 {
                break;
            }
        } else {
            stable = 0;
        }
        rho_prev = rho.clone();
        let scale = &HpFloat::one(wp) / &dot_re(&z, &z, wp).sqrt();
        x = z.iter().map(|c| c.scale(&scale)).collect();
    }
    rho.sqrt().round_to(prec)
}

/// Random scalar with numerator in `-3..=3` and denominator in `1..=3`.
#[allow(dead_code)]
pub fn random_scalar(rng: &mut impl Rng, complex: bool) -> ExactScalar {
    let re = ExactScalar::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3));
    if complex {
        let im = ExactScalar::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3));
        &re + &(&ExactScalar::i() * &im)
    } else {
        re
    }
}

/// Random polynomial matrix with entry degrees up to `max_deg`.
#[allow(dead_code)]
pub fn random_poly_matrix(rng: &mut impl Rng, n: usize, max_deg: usize) -> TauPolyMatrix {
    Matrix::from_fn(n, |_, _| {
        let deg = rng.gen_range(0..=max_deg);
        let complex = rng.gen_bool(0.5);
        TauPoly::from_coeffs((0..=deg).map(|_| random_scalar(rng, complex)).collect())
    })
}
