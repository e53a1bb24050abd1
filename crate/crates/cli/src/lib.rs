//! Command-line front end for `lissajous-lebesgue`.
//!
//! CSV goes to `--out` (or stdout when absent), human-readable summaries go to
//! stderr. Exit codes: 0 on success, 1 when a numeric check fails or a run
//! aborts, 2 on usage and validation errors.

pub mod sample;
pub mod svg;

use std::f64::consts::PI;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lissajous_lebesgue::asympt::{self, SweepConfig, SweepKind, SweepRecord};
use lissajous_lebesgue::interp::{evaluate, interpolate_fn};
use lissajous_lebesgue::kernels::{decomposition_residual, FVariant, TruncationSpec};
use lissajous_lebesgue::lcnodes::{build_nodes, lissajous_point, DegreePair};
use lissajous_lebesgue::norms::{KernelKind, NormReport, QuadratureSpec, SearchSpec};
use lissajous_lebesgue::report::fmt_f64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Samples of the curve drawn in the nodes figure.
const CURVE_SAMPLES: usize = 2000;

#[derive(Debug, Parser)]
#[command(
    name = "lclebesgue",
    version,
    about = "Lissajous-Chebyshev interpolation and rhombus Fourier sums"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the node set LC_mn as CSV and optionally an SVG of the curve and nodes.
    Nodes(NodesArgs),
    /// Interpolate a smooth test function and report errors; writes the coefficients.
    Interp(InterpArgs),
    /// Check D_mn = S_mn - F_mn + R_mn at random points.
    KernelVerify(KernelVerifyArgs),
    /// Lebesgue constants for one (m, n) against their main terms.
    Lebesgue(LebesgueArgs),
    /// Residual sweep over a list of sizes.
    Sweep(SweepArgs),
    /// L1 norm of a kernel with a self-convergence estimate.
    Norm(NormArgs),
}

#[derive(Debug, Args)]
pub struct Output {
    /// CSV output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Numerics {
    /// Grid points per axis of the coarse search grid.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Quadrature cells per oscillation.
    #[arg(long, default_value_t = 8)]
    pub cells: usize,
    /// F kernel variant.
    #[arg(long, value_enum, default_value_t = VariantArg::Minus)]
    pub variant: VariantArg,
}

impl Numerics {
    fn quad(&self) -> QuadratureSpec {
        QuadratureSpec::default().with_cells(self.cells)
    }

    fn search(&self, m: usize, n: usize) -> SearchSpec {
        let base = SearchSpec::for_degrees(m, n);
        match self.grid {
            Some(g) => SearchSpec {
                grid_points_per_axis: g,
                ..base
            },
            None => base,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Minus,
    Plus,
}

impl From<VariantArg> for FVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Minus => FVariant::Minus,
            VariantArg::Plus => FVariant::Plus,
        }
    }
}

#[derive(Debug, Args)]
pub struct NodesArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub output: Output,
    /// SVG output path.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InterpArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    /// Random evaluation points for the error estimate.
    #[arg(long, default_value_t = 100)]
    pub points: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct KernelVerifyArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    /// Truncation of the ν-series in R_mn.
    #[arg(long = "trunc-V", default_value_t = 2000)]
    pub trunc_v: usize,
    #[arg(long, value_enum, default_value_t = VariantArg::Minus)]
    pub variant: VariantArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct LebesgueArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    /// Comma-separated subset of continuous, discrete, lc.
    #[arg(long, value_delimiter = ',', default_value = "continuous,discrete,lc")]
    pub kind: Vec<SweepKind>,
    #[command(flatten)]
    pub numerics: Numerics,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub kind: SweepKind,
    /// Comma-separated list of m.
    #[arg(long, value_delimiter = ',', required = true)]
    pub m: Vec<usize>,
    /// Comma-separated list of n (p for scriptf), paired with --m; ignored for delta kinds.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = asympt::DEFAULT_MAX_SIZE)]
    pub max_size: usize,
    #[command(flatten)]
    pub numerics: Numerics,
    #[command(flatten)]
    pub output: Output,
    /// SVG plot of the residual against n.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct NormArgs {
    /// Comma-separated kernels: dmn, smn, fmn, fmn_plus, delta1, delta2, scriptf.
    #[arg(long, value_delimiter = ',', required = true)]
    pub kind: Vec<KernelKind>,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 8)]
    pub cells: usize,
    #[command(flatten)]
    pub output: Output,
}

/// Result of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    /// A numeric contract did not hold; maps to exit code 1.
    Violation,
}

/// Invalid command-line input detected after parsing.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Exit code for an error returned by [`run`].
pub fn exit_code(err: &anyhow::Error) -> u8 {
    use lissajous_lebesgue::Error as E;
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<E>() {
        Some(
            E::InvalidDegree(_)
            | E::NotCoprime { .. }
            | E::Domain(_)
            | E::OutOfRegime { .. }
            | E::SizeCapExceeded { .. }
            | E::DegenerateSearch(_)
            | E::DegenerateQuadrature(_),
        ) => 2,
        _ => 1,
    }
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Nodes(a) => cmd_nodes(&a),
        Command::Interp(a) => cmd_interp(&a),
        Command::KernelVerify(a) => cmd_kernel_verify(&a),
        Command::Lebesgue(a) => cmd_lebesgue(&a),
        Command::Sweep(a) => cmd_sweep(&a),
        Command::Norm(a) => cmd_norm(&a),
    }
}

fn csv_sink(out: &Output) -> Result<Box<dyn Write>> {
    Ok(match &out.out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn cmd_nodes(a: &NodesArgs) -> Result<Outcome> {
    let d = DegreePair::coprime(a.m, a.n)?;
    let nodes = build_nodes(d)?;
    let mut w = csv_sink(&a.output)?;
    nodes.write_csv(&mut w)?;
    w.flush()?;
    if let Some(path) = &a.svg {
        let curve: Vec<(f64, f64)> = (0..CURVE_SAMPLES)
            .map(|i| lissajous_point(d, PI * i as f64 / (CURVE_SAMPLES - 1) as f64))
            .collect();
        let pts: Vec<(f64, f64)> = nodes.entries().iter().map(|e| (e.u, e.v)).collect();
        let title = format!("Lissajous curve and LC nodes, (m, n) = ({}, {})", a.m, a.n);
        write_file(path, &svg::nodes_figure(&title, &curve, &pts))?;
    }
    eprintln!("{} nodes for (m, n) = ({}, {})", nodes.len(), a.m, a.n);
    Ok(Outcome::Success)
}

/// Smooth test function used by `interp`.
pub fn test_function(u: f64, v: f64) -> f64 {
    (u + 0.5 * v).exp() * (u * v).cos()
}

fn cmd_interp(a: &InterpArgs) -> Result<Outcome> {
    let nodes = build_nodes(DegreePair::coprime(a.m, a.n)?)?;
    let p = interpolate_fn(&nodes, test_function)?;
    let node_err = nodes
        .entries()
        .iter()
        .map(|e| Ok((evaluate(&p, (e.u, e.v))? - test_function(e.u, e.v)).abs()))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut sample_err: f64 = 0.0;
    for _ in 0..a.points {
        let u: f64 = rng.random_range(-1.0..=1.0);
        let v: f64 = rng.random_range(-1.0..=1.0);
        sample_err = sample_err.max((evaluate(&p, (u, v))? - test_function(u, v)).abs());
    }
    let mut w = csv_sink(&a.output)?;
    p.write_csv(&mut w)?;
    w.flush()?;
    eprintln!(
        "f(u, v) = exp(u + v/2) cos(uv), (m, n) = ({}, {})",
        a.m, a.n
    );
    eprintln!("max error at nodes: {node_err:.3e}");
    eprintln!(
        "max error at {} random points (seed {}): {sample_err:.3e}",
        a.points, a.seed
    );
    Ok(Outcome::Success)
}

fn cmd_kernel_verify(a: &KernelVerifyArgs) -> Result<Outcome> {
    DegreePair::new(a.m, a.n)?;
    let trunc = TruncationSpec::new(a.trunc_v)?;
    let variant = FVariant::from(a.variant);
    let pts = sample::regular_points(a.points, a.seed);
    let mut w = csv_sink(&a.output)?;
    writeln!(w, "x,y,residual,tail_bound")?;
    let (mut worst, mut worst_bound, mut max_bound) = (0.0f64, 0.0f64, 0.0f64);
    let mut failures = 0usize;
    for &(x, y) in &pts {
        let r = decomposition_residual(a.m, a.n, x, y, &trunc, variant)?;
        writeln!(
            w,
            "{},{},{},{}",
            fmt_f64(x),
            fmt_f64(y),
            fmt_f64(r.residual),
            fmt_f64(r.tail_bound)
        )?;
        if !r.within_bound() {
            failures += 1;
        }
        if r.residual > worst {
            worst = r.residual;
            worst_bound = r.tail_bound;
        }
        max_bound = max_bound.max(r.tail_bound);
    }
    w.flush()?;
    let verdict = if failures == 0 { "PASS" } else { "FAIL" };
    eprintln!(
        "(m, n) = ({}, {}), {} points, V = {}, variant {}",
        a.m,
        a.n,
        pts.len(),
        a.trunc_v,
        variant.as_str()
    );
    eprintln!("max residual: {worst:.3e} (tail bound there {worst_bound:.3e}, largest tail bound {max_bound:.3e})");
    if a.n.is_multiple_of(a.m) {
        eprintln!("note: m divides n, so F vanishes identically");
    }
    eprintln!(
        "{verdict}: {failures} of {} points exceed tail bound + 1e-8",
        pts.len()
    );
    Ok(if failures == 0 {
        Outcome::Success
    } else {
        Outcome::Violation
    })
}

fn print_record(r: &SweepRecord) {
    eprintln!(
        "{:<10} (m, n) = ({}, {}): computed {:.6}, main term {:.6}, residual {:.6}, ratio {:.4}",
        r.kind, r.m, r.n, r.computed, r.main_term, r.residual, r.ratio
    );
}

fn cmd_lebesgue(a: &LebesgueArgs) -> Result<Outcome> {
    if let Some(k) = a.kind.iter().find(|k| {
        !matches!(
            k,
            SweepKind::Continuous | SweepKind::Discrete | SweepKind::Lc
        )
    }) {
        bail!(UsageError(format!(
            "`{k}` is not a Lebesgue constant kind; use `sweep`"
        )));
    }
    let mut records = Vec::new();
    for &kind in &a.kind {
        let cfg = SweepConfig {
            quad: a.numerics.quad(),
            search: Some(a.numerics.search(a.m, a.n)),
            variant: a.numerics.variant.into(),
            ..SweepConfig::default()
        };
        let r = asympt::compute_record(kind, a.m, a.n, &cfg)?;
        print_record(&r);
        records.push(r);
    }
    let mut w = csv_sink(&a.output)?;
    asympt::write_csv(&records, &mut w)?;
    w.flush()?;
    Ok(Outcome::Success)
}

fn sweep_sizes(a: &SweepArgs) -> Result<Vec<(usize, usize)>> {
    match a.kind {
        SweepKind::Delta1 | SweepKind::Delta2 => Ok(a.m.iter().map(|&m| (m, m)).collect()),
        _ => {
            if a.n.len() != a.m.len() {
                bail!(UsageError(format!(
                    "--m has {} entries but --n has {}",
                    a.m.len(),
                    a.n.len()
                )));
            }
            Ok(a.m.iter().copied().zip(a.n.iter().copied()).collect())
        }
    }
}

fn cmd_sweep(a: &SweepArgs) -> Result<Outcome> {
    let sizes = sweep_sizes(a)?;
    let search = a.numerics.grid.map(|g| SearchSpec {
        grid_points_per_axis: g,
        ..SearchSpec::for_degrees(1, 1)
    });
    let cfg = SweepConfig {
        quad: a.numerics.quad(),
        search,
        max_size: a.max_size,
        variant: a.numerics.variant.into(),
    };
    let records = asympt::sweep(a.kind, &sizes, &cfg)?;
    for r in &records {
        print_record(r);
    }
    if records.len() > 1 {
        eprintln!(
            "largest ratio change between consecutive sizes: {:.3}",
            asympt::max_ratio_variation(&records)
        );
    }
    let mut w = csv_sink(&a.output)?;
    asympt::write_csv(&records, &mut w)?;
    w.flush()?;
    if let Some(path) = &a.svg {
        let pts: Vec<(f64, f64)> = records.iter().map(|r| (r.n as f64, r.residual)).collect();
        let title = format!("{} sweep: residual against n", a.kind);
        write_file(
            path,
            &svg::log_x_plot(&title, "n (log scale)", "computed - main term", &pts),
        )?;
    }
    Ok(Outcome::Success)
}

fn cmd_norm(a: &NormArgs) -> Result<Outcome> {
    let quad = QuadratureSpec::default().with_cells(a.cells);
    let mut w = csv_sink(&a.output)?;
    writeln!(w, "{}", NormReport::CSV_HEADER)?;
    for &kind in &a.kind {
        let r = NormReport::compute(kind, a.m, a.n, &quad)?;
        eprintln!(
            "{} (m, n) = ({}, {}): {:.8} (self-convergence {:.2e})",
            kind.name(),
            a.m,
            a.n,
            r.value,
            r.self_convergence
        );
        r.write_csv_row(&mut w)?;
    }
    w.flush()?;
    Ok(Outcome::Success)
}
