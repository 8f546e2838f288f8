//! Command-line front end for the strong-stability and hypocoercivity
//! analyses: index reports, exact determinant leading terms, high-precision
//! norm sweeps, decay-exponent fits, stability verdicts, sampled family
//! checks, and the bundled result table.

mod errors;
mod input;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hypostab_core::decay::{fit_short_time, FitOptions};
use hypostab_core::exact::rational_to_string;
use hypostab_core::hypo::{hc_report, staircase};
use hypostab_core::rk::{stability_function, taylor_scheme, StabilityFn};
use hypostab_core::stab::{
    closed_form_c, det_leading_term, lasm_property_check, norm_sweep_curve,
    strong_stability_verdict, LasmOptions, StrongStabilityVerdict, VerdictOptions,
};
use hypostab_core::suite::{full_suite, SuiteConfig};
use hypostab_core::{Context, Execution, HpFloat, MatrixExact};

use errors::{CliError, Result};
use input::{load_matrix, load_tableau, parse_positive_rational, resolve_matrix};

#[derive(Parser)]
#[command(
    name = "hypostab",
    version,
    about = "Strong stability of explicit Runge-Kutta schemes on semi-dissipative systems"
)]
struct Cli {
    /// Mantissa bits for high-precision arithmetic (minimum 64)
    #[arg(
        long,
        global = true,
        env = "HYPOSTAB_PRECISION_BITS",
        default_value_t = 512
    )]
    precision_bits: u32,

    /// Output format; reproduce-paper defaults to text, everything else to json
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write the primary output to FILE instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Run data-parallel stages sequentially
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    /// Curve data; only sweep and decay-fit produce it
    Csv,
}

/// Mutually exclusive ways to name the matrix an analysis runs on.
#[derive(Args)]
#[command(group = ArgGroup::new("matrix_source").args(["matrix", "staircase", "rotation"]))]
struct MatrixSource {
    /// Matrix file: JSON 2-D array of rational entries
    #[arg(long, value_name = "FILE")]
    matrix: Option<PathBuf>,

    /// The n-dimensional staircase matrix
    #[arg(long, value_name = "N", value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    staircase: Option<usize>,

    /// The 2x2 rotation generator
    #[arg(long)]
    rotation: bool,
}

impl MatrixSource {
    fn resolve(&self) -> Result<(String, MatrixExact)> {
        resolve_matrix(self.matrix.as_deref(), self.staircase, self.rotation)
    }

    fn is_empty(&self) -> bool {
        self.matrix.is_none() && self.staircase.is_none() && !self.rotation
    }
}

/// The scheme under test: a truncated exponential of given order, or an
/// explicit Butcher tableau (bundled name or file).
#[derive(Args)]
#[command(group = ArgGroup::new("scheme").required(true).args(["p", "tableau"]))]
struct SchemeArgs {
    /// Order of the truncated-exponential scheme
    #[arg(long, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    p: Option<usize>,

    /// Butcher tableau: euler, heun2, kutta3, rk4, or a JSON file
    #[arg(long, value_name = "NAME|FILE")]
    tableau: Option<String>,
}

impl SchemeArgs {
    fn resolve(&self) -> Result<(String, StabilityFn)> {
        match (self.p, &self.tableau) {
            (Some(p), None) => Ok((
                format!("order-{p} truncated exponential"),
                taylor_scheme(p),
            )),
            (None, Some(spec)) => {
                let r = stability_function(&load_tableau(spec)?);
                Ok((format!("tableau {spec} (order {})", r.order()), r))
            }
            _ => unreachable!("clap enforces exactly one scheme flag"),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Hypocoercivity-index report for one matrix
    HcIndex {
        #[command(flatten)]
        source: MatrixSource,
    },

    /// Leading term of the contraction-defect determinant for the
    /// order-p truncated exponential on the matching staircase matrix
    DetLeading {
        /// Scheme order; must be a positive multiple of 4
        #[arg(long)]
        p: usize,
    },

    /// Propagator norms over the small-step interval (0, epsilon]
    Sweep {
        #[command(flatten)]
        scheme: SchemeArgs,

        /// Right endpoint of the sweep interval (rational or decimal string)
        #[arg(long)]
        epsilon: String,

        /// Number of grid points
        #[arg(long, default_value_t = 1024, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(2..))]
        grid: usize,

        /// Matrix to sweep; defaults to staircase(1 + p/2) when --p is given
        #[command(flatten)]
        source: MatrixSource,

        /// Also write the evaluated curve to FILE as CSV
        #[arg(long, value_name = "FILE")]
        curve_out: Option<PathBuf>,
    },

    /// Fit the short-time decay exponent of 1 - ||exp(t L)||
    DecayFit {
        #[command(flatten)]
        source: MatrixSource,

        /// Base-two exponent of the smallest sample time
        #[arg(long, default_value_t = -30, allow_negative_numbers = true)]
        log2_min: i64,

        /// Base-two exponent of the largest sample time
        #[arg(long, default_value_t = -10, allow_negative_numbers = true)]
        log2_max: i64,

        /// Also write the sampled (t, norm) curve to FILE as CSV
        #[arg(long, value_name = "FILE")]
        curve_out: Option<PathBuf>,
    },

    /// Decide or refute strong stability of a scheme over a test family
    Verdict {
        #[command(flatten)]
        scheme: SchemeArgs,

        /// Test matrix file (repeatable)
        #[arg(long = "matrix", value_name = "FILE")]
        matrices: Vec<PathBuf>,

        /// Staircase test matrix of dimension N (repeatable)
        #[arg(long = "staircase", value_name = "N", value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
        staircases: Vec<usize>,

        /// Add the rotation generator to the family
        #[arg(long)]
        rotation: bool,

        /// Initial sweep interval, halved once per confirmation round
        #[arg(long, default_value = "1/8")]
        epsilon: String,

        /// Halving rounds a violation must survive
        #[arg(long, default_value_t = 8, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
        rounds: usize,

        /// Grid points per confirmation sweep
        #[arg(long, default_value_t = 65, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(2..))]
        grid: usize,
    },

    /// Sampled contraction check of the family with hypocoercivity index <= m
    LasmCheck {
        /// Order of the truncated-exponential scheme
        #[arg(long, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
        p: usize,

        /// Index cap of the family
        #[arg(long)]
        m: usize,

        /// Random members to sample
        #[arg(long, default_value_t = 20)]
        samples: usize,

        /// Seed for the member sampler
        #[arg(long, default_value_t = 0)]
        seed: u64,

        /// Largest sampled dimension
        #[arg(long, default_value_t = 6, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(2..))]
        max_n: usize,

        /// Specific matrices to check alongside the sample (repeatable)
        #[arg(long, value_name = "FILE")]
        include: Vec<PathBuf>,

        /// Initial sweep interval per member, halved per confirmation round
        #[arg(long, default_value = "1/8")]
        epsilon: String,

        /// Grid points per sweep round
        #[arg(long, default_value_t = 65, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(2..))]
        grid: usize,

        /// Rejection-sampling attempt budget
        #[arg(long, default_value_t = 20_000)]
        max_attempts: usize,
    },

    /// Re-run the bundled result table and report pass/fail per row
    ReproducePaper {
        /// Grid points per sweep row
        #[arg(long, default_value_t = 1024, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(2..))]
        grid: usize,

        /// Seed for the sampled family rows
        #[arg(long, default_value_t = 0)]
        seed: u64,

        /// Sampled matrices per family row
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            // Help and version are successful outcomes; everything else is
            // malformed input.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let format = cli.format.unwrap_or(match cli.cmd {
        Cmd::ReproducePaper { .. } => Format::Text,
        _ => Format::Json,
    });
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let ctx = Context::new(cli.precision_bits)?.with_exec(exec);
    let out = cli.out.as_deref();

    match cli.cmd {
        Cmd::HcIndex { source } => cmd_hc_index(&source, format, out),
        Cmd::DetLeading { p } => cmd_det_leading(p, &ctx, format, out),
        Cmd::Sweep {
            scheme,
            epsilon,
            grid,
            source,
            curve_out,
        } => cmd_sweep(
            &scheme,
            &epsilon,
            grid,
            &source,
            curve_out.as_deref(),
            &ctx,
            format,
            out,
        ),
        Cmd::DecayFit {
            source,
            log2_min,
            log2_max,
            curve_out,
        } => cmd_decay_fit(
            &source,
            log2_min,
            log2_max,
            curve_out.as_deref(),
            &ctx,
            format,
            out,
        ),
        Cmd::Verdict {
            scheme,
            matrices,
            staircases,
            rotation,
            epsilon,
            rounds,
            grid,
        } => cmd_verdict(
            &scheme, &matrices, &staircases, rotation, &epsilon, rounds, grid, &ctx, format, out,
        ),
        Cmd::LasmCheck {
            p,
            m,
            samples,
            seed,
            max_n,
            include,
            epsilon,
            grid,
            max_attempts,
        } => {
            let opts = LasmArgs {
                p,
                m,
                samples,
                seed,
                max_n,
                include,
                epsilon,
                grid,
                max_attempts,
            };
            cmd_lasm_check(&opts, &ctx, format, out)
        }
        Cmd::ReproducePaper {
            grid,
            seed,
            samples,
        } => cmd_reproduce_paper(grid, seed, samples, &ctx, format, out),
    }
}

fn emit(out: Option<&std::path::Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(out: Option<&std::path::Path>, value: &T) -> Result<()> {
    let mut text =
        serde_json::to_string_pretty(value).expect("report types serialize without error");
    text.push('\n');
    emit(out, &text)
}

fn csv_unavailable(cmd: &str) -> CliError {
    CliError::Usage(format!(
        "{cmd} has no csv view; csv output is available for sweep and decay-fit"
    ))
}

fn cmd_hc_index(
    source: &MatrixSource,
    format: Format,
    out: Option<&std::path::Path>,
) -> Result<()> {
    let (label, l) = source.resolve()?;
    let report = hc_report(&l);
    match format {
        Format::Json => emit_json(out, &report),
        Format::Text => emit(out, &render::hc_report_text(&label, &report)),
        Format::Csv => Err(csv_unavailable("hc-index")),
    }
}

#[derive(Serialize)]
struct DetLeadingOut {
    p: usize,
    matrix_dim: usize,
    order: usize,
    coefficient: String,
    full_poly_degree: usize,
    closed_form: String,
    closed_form_equal: bool,
}

fn cmd_det_leading(
    p: usize,
    ctx: &Context,
    format: Format,
    out: Option<&std::path::Path>,
) -> Result<()> {
    if p == 0 || p % 4 != 0 {
        return Err(CliError::Precondition(format!(
            "p must be divisible by 4 (got {p})"
        )));
    }
    let n = 1 + p / 2;
    let lead = det_leading_term(&staircase(n), &taylor_scheme(p), ctx.exec())?;
    let closed = closed_form_c(p)?;
    let report = DetLeadingOut {
        p,
        matrix_dim: n,
        order: lead.order,
        coefficient: rational_to_string(lead.coeff.re()),
        full_poly_degree: lead.full_poly_degree,
        closed_form: rational_to_string(closed.re()),
        closed_form_equal: lead.coeff == closed,
    };
    match format {
        Format::Json => emit_json(out, &report),
        Format::Text => emit(
            out,
            &format!(
                "det M(tau) = c tau^{} + O(tau^{}) with c = {}; closed form {} (equal: {}); \
                 full degree {}\n",
                report.order,
                report.order + 1,
                report.coefficient,
                report.closed_form,
                report.closed_form_equal,
                report.full_poly_degree,
            ),
        ),
        Format::Csv => Err(csv_unavailable("det-leading")),
    }
}

#[derive(Serialize)]
struct SweepOut<'a> {
    scheme: &'a str,
    matrix: &'a str,
    epsilon: String,
    result: &'a hypostab_core::stab::SweepResult,
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    scheme: &SchemeArgs,
    epsilon: &str,
    grid: usize,
    source: &MatrixSource,
    curve_out: Option<&std::path::Path>,
    ctx: &Context,
    format: Format,
    out: Option<&std::path::Path>,
) -> Result<()> {
    let (scheme_label, r) = scheme.resolve()?;
    let (matrix_label, l) = if source.is_empty() {
        match scheme.p {
            Some(p) => {
                let n = 1 + p / 2;
                (format!("staircase({n})"), staircase(n))
            }
            None => {
                return Err(CliError::Usage(
                    "sweeping a tableau needs an explicit matrix \
                     (--matrix, --staircase, or --rotation)"
                        .to_string(),
                ))
            }
        }
    } else {
        source.resolve()?
    };
    let eps_q = parse_positive_rational("--epsilon", epsilon)?;
    let eps = HpFloat::from_rational(&eps_q, ctx.precision_bits());
    let (result, curve) = norm_sweep_curve(&l, &r, &eps, grid, ctx)?;
    if let Some(path) = curve_out {
        emit(Some(path), &render::sweep_csv(&curve))?;
    }
    match format {
        Format::Json => emit_json(
            out,
            &SweepOut {
                scheme: &scheme_label,
                matrix: &matrix_label,
                epsilon: rational_to_string(&eps_q),
                result: &result,
            },
        ),
        Format::Text => emit(out, &render::sweep_text(&scheme_label, &matrix_label, &result)),
        Format::Csv => emit(out, &render::sweep_csv(&curve)),
    }
}

#[derive(Serialize)]
struct DecayOut<'a> {
    matrix: &'a str,
    precision_bits: u32,
    fit: &'a hypostab_core::decay::DecayFit,
}

fn cmd_decay_fit(
    source: &MatrixSource,
    log2_min: i64,
    log2_max: i64,
    curve_out: Option<&std::path::Path>,
    ctx: &Context,
    format: Format,
    out: Option<&std::path::Path>,
) -> Result<()> {
    if source.is_empty() {
        return Err(CliError::Usage(
            "decay-fit needs a matrix (--matrix, --staircase, or --rotation)".to_string(),
        ));
    }
    if log2_min >= log2_max {
        return Err(CliError::Usage(format!(
            "--log2-min must be below --log2-max (got {log2_min} and {log2_max})"
        )));
    }
    let (label, l) = source.resolve()?;
    let fit = fit_short_time(&l, &FitOptions { log2_min, log2_max }, ctx)?;
    if let Some(path) = curve_out {
        emit(Some(path), &render::decay_csv(&fit.samples))?;
    }
    match format {
        Format::Json => emit_json(
            out,
            &DecayOut {
                matrix: &label,
                precision_bits: ctx.precision_bits(),
                fit: &fit,
            },
        ),
        Format::Text => emit(out, &render::decay_text(&label, &fit)),
        Format::Csv => emit(out, &render::decay_csv(&fit.samples)),
    }
}

#[derive(Serialize)]
struct VerdictOut<'a> {
    scheme: &'a str,
    family: &'a [String],
    precision_bits: u32,
    verdict: &'a StrongStabilityVerdict,
}

#[allow(clippy::too_many_arguments)]
fn cmd_verdict(
    scheme: &SchemeArgs,
    matrix_files: &[PathBuf],
    staircases: &[usize],
    rotation: bool,
    epsilon: &str,
    rounds: usize,
    grid: usize,
    ctx: &Context,
    format: Format,
    out: Option<&std::path::Path>,
) -> Result<()> {
    let (scheme_label, r) = scheme.resolve()?;
    let mut labels = Vec::new();
    let mut family = Vec::new();
    for n in staircases {
        labels.push(format!("staircase({n})"));
        family.push(staircase(*n));
    }
    for path in matrix_files {
        let (label, l) = resolve_matrix(Some(path), None, false)?;
        labels.push(label);
        family.push(l);
    }
    if rotation {
        labels.push("rotation".to_string());
        family.push(hypostab_core::hypo::rotation_generator());
    }
    if family.is_empty() {
        // The bundled test family: the two smallest staircases and the
        // rotation generator.
        for n in [2usize, 3] {
            labels.push(format!("staircase({n})"));
            family.push(staircase(n));
        }
        labels.push("rotation".to_string());
        family.push(hypostab_core::hypo::rotation_generator());
    }
    let opts = VerdictOptions {
        epsilon0: parse_positive_rational("--epsilon", epsilon)?,
        rounds,
        confirm_grid: grid,
    };
    let verdict = strong_stability_verdict(&r, &family, &opts, ctx)?;
    match format {
        Format::Json => emit_json(
            out,
            &VerdictOut {
                scheme: &scheme_label,
                family: &labels,
                precision_bits: ctx.precision_bits(),
                verdict: &verdict,
            },
        ),
        Format::Text => emit(out, &render::verdict_text(&scheme_label, &labels, &verdict)),
        Format::Csv => Err(csv_unavailable("verdict")),
    }
}

struct LasmArgs {
    p: usize,
    m: usize,
    samples: usize,
    seed: u64,
    max_n: usize,
    include: Vec<PathBuf>,
    epsilon: String,
    grid: usize,
    max_attempts: usize,
}

fn cmd_lasm_check(
    args: &LasmArgs,
    ctx: &Context,
    format: Format,
    out: Option<&std::path::Path>,
) -> Result<()> {
    let mut include = Vec::new();
    for path in &args.include {
        let label = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        include.push((label, load_matrix(path)?));
    }
    let opts = LasmOptions {
        samples: args.samples,
        seed: args.seed,
        max_n: args.max_n,
        epsilon: parse_positive_rational("--epsilon", &args.epsilon)?,
        grid: args.grid,
        max_attempts: args.max_attempts,
        include,
    };
    let report = lasm_property_check(args.p, args.m, &opts, ctx)?;
    match format {
        Format::Json => emit_json(out, &report),
        Format::Text => emit(out, &render::lasm_text(&report)),
        Format::Csv => Err(csv_unavailable("lasm-check")),
    }
}

fn cmd_reproduce_paper(
    grid: usize,
    seed: u64,
    samples: usize,
    ctx: &Context,
    format: Format,
    out: Option<&std::path::Path>,
) -> Result<()> {
    let cfg = SuiteConfig {
        ctx: *ctx,
        sweep_grid: grid,
        seed,
        lasm_samples: samples,
    };
    let rows = full_suite(&cfg);
    match format {
        Format::Json => emit_json(out, &rows)?,
        Format::Text => emit(out, &render::suite_table(&rows))?,
        Format::Csv => return Err(csv_unavailable("reproduce-paper")),
    }
    let failed = rows.iter().filter(|row| !row.passed).count();
    if failed > 0 {
        return Err(CliError::RowsFailed(failed));
    }
    Ok(())
}
