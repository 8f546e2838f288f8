//! Strong-stability analysis of explicit schemes on semi-dissipative systems.
//!
//! A step `u -> R(tau L) u` contracts the Euclidean norm exactly when the
//! Hermitian defect matrix `M(tau) = I - R(tau L)* R(tau L)` is positive
//! semi-definite. This module expands `M` as an exact polynomial matrix in
//! the step size, decides the sign of its spectrum near `tau = 0+` from
//! rational coefficient data alone, and corroborates every exact violation
//! with high-precision norm sweeps before reporting a counterexample.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::context::Context;
use crate::error::{CoreError, Result};
use crate::exact::ExactScalar;
use crate::exec::Execution;
use crate::float::HpFloat;
use crate::hypo::{hc_index, is_semi_dissipative, split, stability};
use crate::linalg::{char_poly_ring, definiteness, poly_matrix_det, spectral_norm};
use crate::matrix::{Matrix, MatrixExact, TauPolyMatrix};
use crate::poly::TauPoly;
use crate::rk::{evaluate_at_matrix_hp, propagator_series, taylor_scheme, StabilityFn};
use crate::sample::random_lasm_candidate;

fn dec(x: &HpFloat) -> String {
    x.to_decimal(40)
}

/// The contraction-defect matrix `I - R(tau L)* R(tau L)` as an exact
/// polynomial matrix in the step size. Hermitian for every real step, with
/// `tau`-coefficient `-(L + L*)`, and of degree at most twice the degree of
/// the stability polynomial.
pub fn m_matrix_series(l: &MatrixExact, r: &StabilityFn) -> TauPolyMatrix {
    let p = propagator_series(r, l);
    let eye = Matrix::identity_with(l.n(), TauPoly::zero(), TauPoly::one());
    eye.sub(&p.adjoint().mul(&p))
}

/// Lowest-order term of `det M(tau)`, plus the degree of the full
/// determinant polynomial it was read off from.
#[derive(Debug, Clone, Serialize)]
pub struct DetLeadingTerm {
    /// Order of the lowest nonvanishing term.
    pub order: usize,
    /// Its (real) rational coefficient.
    pub coeff: ExactScalar,
    /// Degree of the complete determinant polynomial.
    pub full_poly_degree: usize,
}

/// Expand `M(tau)` for `(L, R)` and compute its determinant exactly.
pub fn det_leading_term(
    l: &MatrixExact,
    r: &StabilityFn,
    exec: Execution,
) -> Result<DetLeadingTerm> {
    det_from_series(&m_matrix_series(l, r), exec)
}

fn det_from_series(series: &TauPolyMatrix, exec: Execution) -> Result<DetLeadingTerm> {
    debug_assert!(series.is_hermitian());
    let det = poly_matrix_det(series, exec);
    let (order, coeff) = det.lowest_term().ok_or(CoreError::IdenticallyZero)?;
    Ok(DetLeadingTerm {
        order,
        coeff: coeff.clone(),
        full_poly_degree: det.degree().expect("nonzero by the lowest-term check"),
    })
}

fn factorial(k: usize) -> BigInt {
    (1..=k as u64).map(BigInt::from).product()
}

fn validate_closed_form_order(p: usize) -> Result<(usize, usize)> {
    if p == 0 || p % 4 != 0 {
        return Err(CoreError::InvalidOrder { order: p });
    }
    let m = p / 2;
    Ok((m, m + 1))
}

/// Determinant of the `n x n` Cauchy-type matrix `(1/(i+j-1))`:
/// `prod_{i<j} (j-i)^2 / prod_{i,j} (i+j-1)`.
fn cauchy_block_det(n: usize) -> BigRational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 1..=n {
        for j in 1..=n {
            if i < j {
                num *= BigInt::from(((j - i) * (j - i)) as u64);
            }
            den *= BigInt::from((i + j - 1) as u64);
        }
    }
    BigRational::new(num, den)
}

/// Closed form for the leading determinant coefficient of the maximal-index
/// mixing matrix in dimension `N = 1 + p/2`, run with the truncated
/// exponential of order `p`:
///
/// `c = 2^N (prod_{i=1}^N 1/(m-i+1)!)^2 * D_N * (1 - binom(p, p/2))`
///
/// with `m = p/2` and `D_N` the Cauchy-type determinant above. Negative for
/// every positive multiple of four, since the central binomial coefficient
/// exceeds one; other orders are outside the derivation's scope and are
/// rejected.
pub fn closed_form_c(p: usize) -> Result<ExactScalar> {
    let (m, n) = validate_closed_form_order(p)?;
    let mut inv_fact_prod = BigRational::one();
    for i in 1..=n {
        inv_fact_prod *= BigRational::new(BigInt::one(), factorial(m + 1 - i));
    }
    let c = BigRational::from_integer(BigInt::one() << n)
        * (&inv_fact_prod * &inv_fact_prod)
        * cauchy_block_det(n)
        * (BigRational::one()
            - BigRational::from_integer(num_integer::binomial(BigInt::from(2 * m as u64), BigInt::from(m as u64))));
    Ok(ExactScalar::from_rational(c))
}

/// The same constant through its minor expansion along the first column:
/// `c = D_full - (2/(2m+1)!) * D_minor`, where `D_full` is the determinant
/// of the uncorrected leading-coefficient matrix and `D_minor` that of its
/// trailing principal block. An independent evaluation route used to pin
/// [`closed_form_c`].
pub fn closed_form_c_via_minors(p: usize) -> Result<ExactScalar> {
    let (m, n) = validate_closed_form_order(p)?;
    let mut full_prod = BigRational::one();
    for i in 1..=n {
        full_prod *= BigRational::new(BigInt::one(), factorial(m + 1 - i));
    }
    let mut minor_prod = BigRational::one();
    for i in 2..=n {
        minor_prod *= BigRational::new(BigInt::one(), factorial(m + 1 - i));
    }
    let d_full = BigRational::from_integer(BigInt::one() << n)
        * (&full_prod * &full_prod)
        * cauchy_block_det(n);
    let d_minor = BigRational::from_integer(BigInt::one() << (n - 1))
        * (&minor_prod * &minor_prod)
        * cauchy_block_det(n - 1);
    let correction = BigRational::new(BigInt::from(2), factorial(2 * m + 1));
    Ok(ExactScalar::from_rational(d_full - correction * d_minor))
}

/// The matrix of lowest-order coefficients whose determinant the closed form
/// evaluates: entry `(i,j)` (1-based) is `2/((2m+3-i-j) (m-i+1)! (m-j+1)!)`,
/// with `2/(2m+1)!` subtracted at `(1,1)`. Its exact determinant must agree
/// with [`closed_form_c`]; the individual entries must agree with the
/// corresponding lowest-order coefficients of `M(tau)` itself.
pub fn leading_coefficient_matrix(p: usize) -> Result<MatrixExact> {
    let (m, n) = validate_closed_form_order(p)?;
    Ok(Matrix::from_fn(n, |i0, j0| {
        let (i, j) = (i0 + 1, j0 + 1);
        let mut v = BigRational::new(
            BigInt::from(2),
            BigInt::from((2 * m + 3 - i - j) as u64) * factorial(m + 1 - i) * factorial(m + 1 - j),
        );
        if i == 1 && j == 1 {
            v -= BigRational::new(BigInt::from(2), factorial(2 * m + 1));
        }
        ExactScalar::from_rational(v)
    }))
}

/// Outcome of a norm sweep over `[0, epsilon]`.
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub epsilon: HpFloat,
    pub grid_points: usize,
    /// Largest observed `||R(tau L)|| - 1` over the grid and its refinement.
    pub max_excess: HpFloat,
    /// Step at which the maximum was attained (smallest such step on ties).
    pub argmax_tau: HpFloat,
    pub precision_bits: u32,
}

impl Serialize for SweepResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            epsilon: String,
            grid_points: usize,
            max_excess: String,
            argmax_tau: String,
            precision_bits: u32,
        }
        Repr {
            epsilon: dec(&self.epsilon),
            grid_points: self.grid_points,
            max_excess: dec(&self.max_excess),
            argmax_tau: dec(&self.argmax_tau),
            precision_bits: self.precision_bits,
        }
        .serialize(serializer)
    }
}

/// One evaluated grid point of a sweep.
#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub tau: HpFloat,
    pub norm: HpFloat,
    pub excess: HpFloat,
}

/// [`norm_sweep`] plus the evaluated grid curve (for CSV export).
pub fn norm_sweep_curve(
    l: &MatrixExact,
    r: &StabilityFn,
    epsilon: &HpFloat,
    grid_points: usize,
    ctx: &Context,
) -> Result<(SweepResult, Vec<SweepPoint>)> {
    ctx.require_sweep_precision()?;
    assert!(grid_points >= 2, "a sweep needs at least two grid points");
    assert!(epsilon.is_positive(), "sweep interval must have positive length");
    let prec = ctx.precision_bits();
    let eval = |tau: &HpFloat| -> Result<HpFloat> {
        spectral_norm(&evaluate_at_matrix_hp(r, l, tau, prec), prec)
    };

    let taus: Vec<HpFloat> = (0..grid_points)
        .map(|k| {
            let frac = HpFloat::from_rational(
                &BigRational::new(BigInt::from(k as u64), BigInt::from((grid_points - 1) as u64)),
                prec,
            );
            &frac * epsilon
        })
        .collect();
    let norms = ctx.exec().map_slice(&taus, |tau| eval(tau));
    let one = HpFloat::one(prec);
    let mut curve = Vec::with_capacity(grid_points);
    for (tau, norm) in taus.into_iter().zip(norms) {
        let norm = norm?;
        curve.push(SweepPoint {
            excess: &norm - &one,
            tau,
            norm,
        });
    }

    // Grid argmax; strict comparison keeps the smallest step on ties.
    let mut best = 0;
    for k in 1..grid_points {
        if curve[k].excess > curve[best].excess {
            best = k;
        }
    }
    let mut best_tau = curve[best].tau.clone();
    let mut best_excess = curve[best].excess.clone();

    // Golden-section refinement of the bracket around the grid argmax. Every
    // evaluation competes against the grid maximum (strictly, so ties keep
    // the earlier step); the interval shrinks by the inverse golden ratio
    // each round until it is 2^-20 of the sweep length.
    let lo = best.saturating_sub(1);
    let hi = (best + 1).min(grid_points - 1);
    let tol = &HpFloat::pow2(-20, prec) * epsilon;
    let mut a = curve[lo].tau.clone();
    let mut b = curve[hi].tau.clone();
    if &(&b - &a) > &tol {
        let inv_phi = &(&HpFloat::from_u64(5, prec).sqrt() - &one) * &HpFloat::pow2(-1, prec);
        let mut consider = |tau: &HpFloat, norm: &HpFloat| {
            let excess = norm - &one;
            if excess > best_excess {
                best_excess = excess;
                best_tau = tau.clone();
            }
        };
        let h = &b - &a;
        let mut x1 = &b - &(&h * &inv_phi);
        let mut x2 = &a + &(&h * &inv_phi);
        let mut f1 = eval(&x1)?;
        consider(&x1, &f1);
        let mut f2 = eval(&x2)?;
        consider(&x2, &f2);
        while &(&b - &a) > &tol {
            if f1 > f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                let h = &b - &a;
                x1 = &b - &(&h * &inv_phi);
                f1 = eval(&x1)?;
                consider(&x1, &f1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                let h = &b - &a;
                x2 = &a + &(&h * &inv_phi);
                f2 = eval(&x2)?;
                consider(&x2, &f2);
            }
        }
    }

    Ok((
        SweepResult {
            epsilon: epsilon.clone(),
            grid_points,
            max_excess: best_excess,
            argmax_tau: best_tau,
            precision_bits: prec,
        },
        curve,
    ))
}

/// Sweep `||R(tau L)||` over an equispaced grid on `[0, epsilon]`, refine
/// around the maximum, and report the largest contraction excess found.
pub fn norm_sweep(
    l: &MatrixExact,
    r: &StabilityFn,
    epsilon: &HpFloat,
    grid_points: usize,
    ctx: &Context,
) -> Result<SweepResult> {
    norm_sweep_curve(l, r, epsilon, grid_points, ctx).map(|(res, _)| res)
}

/// Exact small-step test: does `M(tau)` have a negative eigenvalue on a
/// right neighbourhood of zero?
///
/// `M(tau)` is Hermitian for real `tau`, so its characteristic polynomial
/// `chi(lambda) = sum_j a_j(tau) lambda^j` is real-rooted with real
/// coefficient polynomials, and `M(tau)` is positive semi-definite exactly
/// when `(-1)^(n-j) a_j(tau) >= 0` for every `j` (the signed coefficients
/// are elementary symmetric functions of the eigenvalues). Near zero each
/// `a_j` takes the sign of its lowest-order coefficient, so one strictly
/// negative lowest coefficient certifies a negative eigenvalue for all
/// sufficiently small steps, and none means none.
fn defect_indicated(series: &TauPolyMatrix) -> bool {
    let n = series.n();
    let chi = char_poly_ring(series, TauPoly::one());
    for (j, a) in chi.iter().enumerate().take(n) {
        if let Some((_, c)) = a.lowest_term() {
            debug_assert!(
                c.is_real(),
                "characteristic coefficients of a Hermitian series are real"
            );
            let negative = if (n - j) % 2 == 1 {
                c.re().is_positive()
            } else {
                c.re().is_negative()
            };
            if negative {
                return true;
            }
        }
    }
    false
}

/// How a violation hunt is corroborated numerically.
#[derive(Debug, Clone)]
pub struct VerdictOptions {
    /// Initial sweep interval length; halved once per round.
    pub epsilon0: BigRational,
    /// Number of halving rounds a violation must survive.
    pub rounds: usize,
    /// Grid points per confirmation sweep.
    pub confirm_grid: usize,
}

impl Default for VerdictOptions {
    fn default() -> Self {
        VerdictOptions {
            epsilon0: BigRational::new(BigInt::one(), BigInt::from(8)),
            rounds: 8,
            confirm_grid: 65,
        }
    }
}

/// Verdict over a test set of matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerdictStatus {
    /// Some test matrix admits arbitrarily small steps that expand the norm.
    CounterexampleFound,
    /// No violation was detected on the supplied test set (no claim beyond it).
    NoViolationOnTestSet,
}

/// The matrix and step at which a confirmed violation was exhibited.
#[derive(Debug, Clone)]
pub struct Witness {
    pub matrix_index: usize,
    pub matrix: MatrixExact,
    pub tau: HpFloat,
    pub excess: HpFloat,
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            matrix_index: usize,
            matrix: &'a MatrixExact,
            tau: String,
            excess: String,
        }
        Repr {
            matrix_index: self.matrix_index,
            matrix: &self.matrix,
            tau: dec(&self.tau),
            excess: dec(&self.excess),
        }
        .serialize(serializer)
    }
}

/// Outcome of [`strong_stability_verdict`].
#[derive(Debug, Clone, Serialize)]
pub struct StrongStabilityVerdict {
    pub scheme: StabilityFn,
    pub status: VerdictStatus,
    pub witness: Option<Witness>,
}

/// Hunt for a strong-stability violation of `R` over a set of
/// semi-dissipative test matrices.
///
/// For each matrix the exact series `M(tau)` is expanded and two rational
/// triggers are consulted: the determinant's lowest-order term (odd order or
/// negative coefficient), and the coefficient-sign test of the full
/// characteristic polynomial. A triggered matrix is then handed to
/// shrinking-interval norm sweeps; only a violation that persists through
/// every round — sitting above the `2^(-precision/2)` guard — is reported as
/// a counterexample, with the final round's worst step as witness. Exact
/// triggers that cannot be corroborated at the context precision are
/// discarded rather than reported.
///
/// Non-semi-dissipative test matrices are rejected up front.
pub fn strong_stability_verdict(
    r: &StabilityFn,
    matrices: &[MatrixExact],
    opts: &VerdictOptions,
    ctx: &Context,
) -> Result<StrongStabilityVerdict> {
    ctx.require_sweep_precision()?;
    for (index, l) in matrices.iter().enumerate() {
        let class = definiteness(&split(l).0).expect("Hermitian part is Hermitian");
        if !class.is_negative_semi_definite() {
            return Err(CoreError::TestMatrixRejected {
                index,
                source: Box::new(CoreError::NotSemiDissipative {
                    found: class.label(),
                }),
            });
        }
        let series = m_matrix_series(l, r);
        let det_trigger = match det_from_series(&series, ctx.exec()) {
            Ok(d) => d.order % 2 == 1 || d.coeff.re().is_negative(),
            Err(CoreError::IdenticallyZero) => false,
            Err(e) => return Err(e),
        };
        if det_trigger || defect_indicated(&series) {
            if let Some((tau, excess)) = confirm_violation(l, r, opts, ctx)? {
                return Ok(StrongStabilityVerdict {
                    scheme: r.clone(),
                    status: VerdictStatus::CounterexampleFound,
                    witness: Some(Witness {
                        matrix_index: index,
                        matrix: l.clone(),
                        tau,
                        excess,
                    }),
                });
            }
        }
    }
    Ok(StrongStabilityVerdict {
        scheme: r.clone(),
        status: VerdictStatus::NoViolationOnTestSet,
        witness: None,
    })
}

/// Shrinking-interval confirmation: sweep `[0, eps]`, halve, repeat. Returns
/// the final round's worst point if the excess stayed above the guard in
/// every round, `None` as soon as one round fails to.
fn confirm_violation(
    l: &MatrixExact,
    r: &StabilityFn,
    opts: &VerdictOptions,
    ctx: &Context,
) -> Result<Option<(HpFloat, HpFloat)>> {
    let prec = ctx.precision_bits();
    let guard = HpFloat::pow2(-((prec / 2) as i64), prec);
    let mut eps = HpFloat::from_rational(&opts.epsilon0, prec);
    let mut last = None;
    for _ in 0..opts.rounds {
        let res = norm_sweep(l, r, &eps, opts.confirm_grid, ctx)?;
        if res.max_excess <= guard {
            return Ok(None);
        }
        last = Some((res.argmax_tau, res.max_excess));
        eps = &eps * &HpFloat::pow2(-1, prec);
    }
    Ok(last)
}

/// Configuration for [`lasm_property_check`].
#[derive(Debug, Clone)]
pub struct LasmOptions {
    /// Random family members to draw (beyond the include list).
    pub samples: usize,
    pub seed: u64,
    /// Largest sampled dimension.
    pub max_n: usize,
    /// Initial sweep interval per member; halved per confirmation round.
    pub epsilon: BigRational,
    /// Grid points per sweep round.
    pub grid: usize,
    /// Rejection-sampling budget before giving up.
    pub max_attempts: usize,
    /// Specific matrices to check alongside the random draw, with labels.
    pub include: Vec<(String, MatrixExact)>,
}

impl Default for LasmOptions {
    fn default() -> Self {
        LasmOptions {
            samples: 20,
            seed: 0,
            max_n: 6,
            epsilon: BigRational::new(BigInt::one(), BigInt::from(8)),
            grid: 65,
            max_attempts: 20_000,
            include: Vec::new(),
        }
    }
}

/// A family member whose norm excess stayed above the guard through every
/// shrinking confirmation round; `tau` and `excess` come from the final,
/// smallest interval.
#[derive(Debug, Clone)]
pub struct LasmViolation {
    pub label: String,
    pub matrix: MatrixExact,
    pub tau: HpFloat,
    pub excess: HpFloat,
}

impl Serialize for LasmViolation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            label: &'a str,
            matrix: &'a MatrixExact,
            tau: String,
            excess: String,
        }
        Repr {
            label: &self.label,
            matrix: &self.matrix,
            tau: dec(&self.tau),
            excess: dec(&self.excess),
        }
        .serialize(serializer)
    }
}

/// Outcome of a family contraction check.
#[derive(Debug, Clone, Serialize)]
pub struct LasmReport {
    /// Scheme order `p` (truncated exponential).
    pub order: usize,
    /// Index cap `m` of the family.
    pub index_cap: usize,
    /// Whether `2m + 1 <= p` — the regime in which every member must
    /// contract. When false, violations are the expected outcome.
    pub index_condition_satisfied: bool,
    pub requested_samples: usize,
    /// Sampling attempts spent (0 when `samples` is 0).
    pub attempts: usize,
    /// Matrices actually swept (include list plus accepted samples).
    pub checked: usize,
    /// Include-list entries skipped for failing family membership.
    pub skipped: Vec<String>,
    pub violations: Vec<LasmViolation>,
    pub precision_bits: u32,
    pub seed: u64,
}

/// Is `l` a member of the family: semi-dissipative, asymptotically stable,
/// hypocoercivity index at most `m`?
pub fn family_member(l: &MatrixExact, m: usize) -> bool {
    if !is_semi_dissipative(l) || !stability(l).hurwitz {
        return false;
    }
    matches!(
        hc_index(l).expect("semi-dissipativity was just checked"),
        Some(h) if h <= m
    )
}

/// Sweep the truncated exponential of order `p` over members of the family
/// with index cap `m`: the include list first, then randomly drawn members
/// (rejection sampling over small-integer data). Each member runs the same
/// shrinking-interval confirmation as the verdict: a violation is recorded
/// only when the norm excess stays above the `2^(-precision/2)` guard as the
/// interval halves, which screens out members that merely expand at finite
/// steps (a sampled matrix with a large norm can leave the stability region
/// well inside the initial interval without saying anything about small
/// steps).
pub fn lasm_property_check(
    p: usize,
    m: usize,
    opts: &LasmOptions,
    ctx: &Context,
) -> Result<LasmReport> {
    ctx.require_sweep_precision()?;
    let r = taylor_scheme(p);
    let prec = ctx.precision_bits();
    let confirm = VerdictOptions {
        epsilon0: opts.epsilon.clone(),
        confirm_grid: opts.grid,
        ..VerdictOptions::default()
    };

    let mut checked = 0;
    let mut skipped = Vec::new();
    let mut violations = Vec::new();
    let mut check_member = |label: String, l: &MatrixExact| -> Result<()> {
        checked += 1;
        if let Some((tau, excess)) = confirm_violation(l, &r, &confirm, ctx)? {
            violations.push(LasmViolation {
                label,
                matrix: l.clone(),
                tau,
                excess,
            });
        }
        Ok(())
    };

    for (label, l) in &opts.include {
        if family_member(l, m) {
            check_member(label.clone(), l)?;
        } else {
            skipped.push(label.clone());
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut attempts = 0;
    let mut accepted = 0;
    while accepted < opts.samples {
        if attempts >= opts.max_attempts {
            return Err(CoreError::SamplingExhausted {
                requested: opts.samples,
                accepted,
                attempts,
            });
        }
        attempts += 1;
        let candidate = random_lasm_candidate(&mut rng, opts.max_n, m);
        if !family_member(&candidate, m) {
            continue;
        }
        check_member(format!("sampled[{accepted}]"), &candidate)?;
        accepted += 1;
    }

    Ok(LasmReport {
        order: p,
        index_cap: m,
        index_condition_satisfied: 2 * m + 1 <= p,
        requested_samples: opts.samples,
        attempts,
        checked,
        skipped,
        violations,
        precision_bits: prec,
        seed: opts.seed,
    })
}
