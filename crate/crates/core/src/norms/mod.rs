//! L¹ norms of the kernels, the discrete Lebesgue function and constant, the
//! grid supremum `𝔉_mn`, and Marcinkiewicz–Zygmund sampling ratios.

mod quadrature;
mod search;

use std::f64::consts::{PI, TAU};
use std::io::{self, Write};

pub use quadrature::{
    composite_rule, l1_norm_1d, l1_norm_2d, CompensatedSum, FKernel, GridKernel, Pointwise,
    QuadratureSpec, Rect, RhombusKernel,
};
pub use search::{grid_maximize, SearchResult, SearchSpec};

use crate::kernels::{self, FVariant};
use crate::report::fmt_f64;
use crate::{Error, Result};

/// `𝓛_mn = (1/4π²) ∫_{T²} |D_mn| = (1/π²) ∫_{[0,π)²} |D_mn|`.
pub fn lebesgue_continuous(m: usize, n: usize, quad: &QuadratureSpec) -> Result<f64> {
    check_degrees(m, n)?;
    let q = quad.with_domain(Rect::quarter_torus());
    Ok(l1_norm_2d(&RhombusKernel::new(m, n), &q)? / (PI * PI))
}

fn check_degrees(m: usize, n: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidDegree(m));
    }
    if n == 0 {
        return Err(Error::InvalidDegree(n));
    }
    Ok(())
}

/// Shifted sample grid `t − π·s/len` for `s = −len..len−1`.
fn shifted_grid(t: f64, len: usize) -> Vec<f64> {
    let l = len as i64;
    (-l..l).map(|s| t - PI * s as f64 / len as f64).collect()
}

/// `L_mn(x, y) = (1/4mn) Σ_{μ=−m}^{m−1} Σ_{ν=−n}^{n−1} |D_mn(x − x_μ, y − y_ν)|`.
pub fn lebesgue_function_discrete(m: usize, n: usize, x: f64, y: f64) -> f64 {
    let kernel = RhombusKernel::new(m, n);
    discrete_lebesgue_with(&kernel, m, n, x, y)
}

fn discrete_lebesgue_with(kernel: &RhombusKernel, m: usize, n: usize, x: f64, y: f64) -> f64 {
    let xs = shifted_grid(x, m);
    let ys = shifted_grid(y, n);
    let ones_x = vec![1.0; xs.len()];
    let ones_y = vec![1.0; ys.len()];
    quadrature::weighted_abs_sum(kernel, &xs, &ones_x, &ys, &ones_y) / (4 * m * n) as f64
}

/// `Λ_mn = sup L_mn`, searched over the periodicity cell `[0, π/m] × [0, π/n]`.
///
/// The periodicity `L(x + π/m, y) = L(x, y) = L(x, y + π/n)` that justifies the
/// restriction is checked at two points before searching.
pub fn lebesgue_constant_discrete(m: usize, n: usize, search: &SearchSpec) -> Result<SearchResult> {
    check_degrees(m, n)?;
    search.validate(m, n)?;
    let kernel = RhombusKernel::new(m, n);
    let (hx, hy) = (PI / m as f64, PI / n as f64);
    for (x, y) in [(0.31 * hx, 0.77 * hy), (0.83 * hx, 0.12 * hy)] {
        let base = discrete_lebesgue_with(&kernel, m, n, x, y);
        for shifted in [
            discrete_lebesgue_with(&kernel, m, n, x + hx, y),
            discrete_lebesgue_with(&kernel, m, n, x, y + hy),
        ] {
            let diff = (shifted - base).abs();
            if diff > 1e-9 * base.max(1.0) {
                return Err(Error::PeriodicityViolated(diff));
            }
        }
    }
    let g = search.grid_points_per_axis - 1;
    Ok(grid_maximize(
        |x, y| discrete_lebesgue_with(&kernel, m, n, x, y),
        Rect::new(0.0, hx, 0.0, hy),
        g,
        g,
        search.refinement_rounds,
        search.refinement_factor,
    ))
}

/// `(1/mn) Σ_{μ<m, ν<n} |F_mn(x + x_μ, y + y_ν)|`.
pub fn f_grid_average(kernel: &FKernel, m: usize, n: usize, x: f64, y: f64) -> f64 {
    if kernel.is_zero() {
        return 0.0;
    }
    let xs: Vec<f64> = (0..m).map(|mu| x + PI * mu as f64 / m as f64).collect();
    let ys: Vec<f64> = (0..n).map(|nu| y + PI * nu as f64 / n as f64).collect();
    let cols = kernel.columns(&ys);
    let mut buf = vec![0.0; n];
    let mut total = CompensatedSum::default();
    for &xv in &xs {
        kernel.row(xv, &ys, &cols, &mut buf);
        total.add(buf.iter().map(|v| v.abs()).sum());
    }
    total.total() / (m * n) as f64
}

/// `𝔉_mn = sup_{T²} (1/mn) Σ |F_mn(x + x_μ, y + y_ν)|`.
///
/// The half-period grid average has no shorter period than `2π` in general, so
/// the search covers the whole torus with `grid_points_per_axis` points per axis.
pub fn frak_f(m: usize, n: usize, variant: FVariant, search: &SearchSpec) -> Result<SearchResult> {
    check_degrees(m, n)?;
    search.validate(m, n)?;
    let kernel = FKernel::new(m, n, variant);
    if kernel.is_zero() {
        return Ok(SearchResult {
            value: 0.0,
            argmax: (0.0, 0.0),
            round_values: vec![0.0],
        });
    }
    let g = search.grid_points_per_axis - 1;
    Ok(grid_maximize(
        |x, y| f_grid_average(&kernel, m, n, x, y),
        Rect::square(0.0, TAU),
        g,
        g,
        search.refinement_rounds,
        search.refinement_factor,
    ))
}

/// Trigonometric polynomial `Σ_k a_k cos(kx) + b_k sin(kx)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPolynomial {
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl TrigPolynomial {
    /// `cos[k]` and `sin[k]` multiply `cos(kx)` and `sin(kx)`; `sin[0]` is ignored.
    pub fn new(mut cos: Vec<f64>, mut sin: Vec<f64>) -> Self {
        let len = cos.len().max(sin.len()).max(1);
        cos.resize(len, 0.0);
        sin.resize(len, 0.0);
        sin[0] = 0.0;
        Self { cos, sin }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c], vec![])
    }

    /// `cos(kx)`.
    pub fn cosine(k: usize) -> Self {
        let mut cos = vec![0.0; k + 1];
        cos[k] = 1.0;
        Self::new(cos, vec![])
    }

    /// Highest frequency with a nonzero coefficient.
    pub fn degree(&self) -> usize {
        (0..self.cos.len())
            .rev()
            .find(|&k| self.cos[k] != 0.0 || self.sin[k] != 0.0)
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.cos.iter().chain(&self.sin).all(|&c| c == 0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.cos
            .iter()
            .zip(&self.sin)
            .enumerate()
            .map(|(k, (a, b))| {
                let (s, c) = (k as f64 * x).sin_cos();
                a * c + b * s
            })
            .sum()
    }
}

/// `(1/n) Σ_{ν=0}^{n−1} |T(πν/n)|` divided by `‖T‖_{L(T)}`.
pub fn mz_ratio(poly: &TrigPolynomial, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidDegree(n));
    }
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if poly.degree() > n {
        return Err(Error::InvalidDegree(poly.degree()));
    }
    let samples: f64 = (0..n)
        .map(|nu| poly.eval(PI * nu as f64 / n as f64).abs())
        .sum::<f64>()
        / n as f64;
    let quad = QuadratureSpec {
        cells_per_oscillation: 16,
        gauss_order: 8,
        ..QuadratureSpec::default()
    };
    let norm = l1_norm_1d(|x| poly.eval(x), n as f64, -PI, PI, &quad)?;
    Ok(samples / norm)
}

/// Kernels whose L¹ norms the crate reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelKind {
    /// `D_mn` on `[0, π)²`.
    Rhombus,
    /// `S_mn` on `[0, π)²`.
    S,
    /// `F_mn` on `T²`.
    F(FVariant),
    /// `Δ_m^(1)` on `[0, π)²`.
    Delta1,
    /// `Δ_m^(2)` on `[0, π)²`.
    Delta2,
    /// `𝓕_mp` on `T` (`n` plays the role of `p`).
    ScriptF,
}

impl KernelKind {
    pub fn name(&self) -> &'static str {
        match self {
            KernelKind::Rhombus => "dmn",
            KernelKind::S => "smn",
            KernelKind::F(FVariant::Minus) => "fmn",
            KernelKind::F(FVariant::Plus) => "fmn_plus",
            KernelKind::Delta1 => "delta1",
            KernelKind::Delta2 => "delta2",
            KernelKind::ScriptF => "scriptf",
        }
    }
}

impl std::str::FromStr for KernelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s {
            "dmn" => KernelKind::Rhombus,
            "smn" => KernelKind::S,
            "fmn" => KernelKind::F(FVariant::Minus),
            "fmn_plus" => KernelKind::F(FVariant::Plus),
            "delta1" => KernelKind::Delta1,
            "delta2" => KernelKind::Delta2,
            "scriptf" => KernelKind::ScriptF,
            other => return Err(format!("unknown kernel `{other}`")),
        })
    }
}

/// L¹ norm of `kind` over its natural domain. `quad.domain` is ignored.
pub fn kernel_l1_norm(kind: KernelKind, m: usize, n: usize, quad: &QuadratureSpec) -> Result<f64> {
    match kind {
        // p = 0 is admissible for 𝓕_mp
        KernelKind::ScriptF => check_degrees(m, 1)?,
        _ => check_degrees(m, n)?,
    }
    let q = quad.with_domain(Rect::quarter_torus());
    let (mf, nf) = (m as f64, n as f64);
    match kind {
        KernelKind::Rhombus => l1_norm_2d(&RhombusKernel::new(m, n), &q),
        KernelKind::S => l1_norm_2d(
            &Pointwise {
                f: |x, y| kernels::s_kernel(m, n, x, y).value,
                freq: (mf, nf),
            },
            &q,
        ),
        // F is even in each variable separately, so ∫_{T²} = 4 ∫_{[0,π)²}.
        KernelKind::F(variant) => Ok(4.0 * l1_norm_2d(&FKernel::new(m, n, variant), &q)?),
        KernelKind::Delta1 => l1_norm_2d(
            &Pointwise {
                f: |x, y| kernels::delta_first(m, x, y),
                freq: (mf, mf),
            },
            &q,
        ),
        KernelKind::Delta2 => l1_norm_2d(
            &Pointwise {
                f: |x, y| kernels::delta_second(m, x, y),
                freq: (mf, mf),
            },
            &q,
        ),
        KernelKind::ScriptF => l1_norm_1d(|x| kernels::script_f(m, n, x).norm(), mf, -PI, PI, &q),
    }
}

/// One row of a norm report.
#[derive(Debug, Clone, PartialEq)]
pub struct NormReport {
    pub kernel: KernelKind,
    pub m: usize,
    pub n: usize,
    pub value: f64,
    pub quad: QuadratureSpec,
    /// `|v(2c) − v(c)| / |v(2c)|` for `c` cells per oscillation.
    pub self_convergence: f64,
}

impl NormReport {
    pub const CSV_HEADER: &'static str =
        "kernel,m,n,value,cells_per_oscillation,gauss_order,self_convergence_delta";

    /// Computes the norm at `quad` and at twice the cell density.
    pub fn compute(kernel: KernelKind, m: usize, n: usize, quad: &QuadratureSpec) -> Result<Self> {
        let value = kernel_l1_norm(kernel, m, n, quad)?;
        let fine = kernel_l1_norm(kernel, m, n, &quad.refined())?;
        let self_convergence = if fine == 0.0 {
            0.0
        } else {
            (fine - value).abs() / fine.abs()
        };
        Ok(Self {
            kernel,
            m,
            n,
            value,
            quad: *quad,
            self_convergence,
        })
    }

    pub fn write_csv_row<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            self.kernel.name(),
            self.m,
            self.n,
            fmt_f64(self.value),
            self.quad.cells_per_oscillation,
            self.quad.gauss_order,
            fmt_f64(self.self_convergence)
        )
    }
}
