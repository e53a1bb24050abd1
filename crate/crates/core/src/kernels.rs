//! Trigonometric kernels of the rhombus partial sums and of the decomposition
//! `D_mn = S_mn − F_mn + R_mn`.
//!
//! Every kernel here is a smooth function. Where a closed form has a removable
//! singularity (zeros of `sin(x/2)`, the line `y = 0`) the evaluation switches to
//! a limit branch and reports it through [`KernelValue::singularity_handled`].
//!
//! Fractional parts follow the floor convention: `{x} = x − ⌊x⌋ ∈ [0, 1)`, so
//! `{−1.5} = 0.5`. They are always formed from exact integer remainders.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::{Error, Result};

/// Below this `|sin(x/2)|` the Dirichlet ratio uses its Taylor expansion.
pub const SINGULAR_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub value: f64,
    /// True when a removable-singularity limit branch was used.
    pub singularity_handled: bool,
}

impl KernelValue {
    fn regular(value: f64) -> Self {
        Self {
            value,
            singularity_handled: false,
        }
    }
}

/// `D_m(x) = sin(mx/2) / sin(x/2)`.
///
/// The argument is reduced to `δ = x − 2πj ∈ [−π, π]` first, using
/// `D_m(δ + 2πj) = (−1)^{(m−1)j} D_m(δ)`, so the quotient is always formed
/// next to the singularity at the origin where both sines are accurate.
pub fn dirichlet_ratio(m: usize, x: f64) -> KernelValue {
    let mf = m as f64;
    let j = (x / TAU).round();
    let d = x - j * TAU;
    let sign = if m.is_multiple_of(2) && (j as i64) % 2 != 0 {
        -1.0
    } else {
        1.0
    };
    let s = (0.5 * d).sin();
    if s.abs() < SINGULAR_EPS {
        let value = mf * (1.0 - (mf * mf - 1.0) * d * d / 24.0);
        KernelValue {
            value: sign * value,
            singularity_handled: true,
        }
    } else {
        KernelValue::regular(sign * (0.5 * mf * d).sin() / s)
    }
}

/// `N_k = ⌊n(1 − k/m)⌋`, the half-length of row `k` of the rhombus.
#[inline]
pub(crate) fn row_half_length(k: usize, m: usize, n: usize) -> usize {
    n * (m - k) / m
}

/// Row-collapsed form of `D_mn`: tabulates `K(N_k, y) = D_{2N_k+1}(y)` and the
/// `x`-factors `1, 2cos(x), …, 2cos(mx)` so that `D_mn(x, y) = Σ_k c_k(x) K_k(y)`.
#[derive(Debug, Clone)]
pub struct RhombusRows {
    m: usize,
    lengths: Vec<usize>,
}

impl RhombusRows {
    pub fn new(m: usize, n: usize) -> Self {
        let lengths = (0..=m).map(|k| 2 * row_half_length(k, m, n) + 1).collect();
        Self { m, lengths }
    }

    pub fn width(&self) -> usize {
        self.m + 1
    }

    /// Writes `K(N_k, y)` for `k = 0..=m` into `out`; returns whether any limit branch was hit.
    pub fn y_factors(&self, y: f64, out: &mut [f64]) -> bool {
        let mut handled = false;
        for (o, &len) in out.iter_mut().zip(&self.lengths) {
            let kv = dirichlet_ratio(len, y);
            handled |= kv.singularity_handled;
            *o = kv.value;
        }
        handled
    }

    pub fn x_factors(&self, x: f64, out: &mut [f64]) {
        out[0] = 1.0;
        for (k, o) in out.iter_mut().enumerate().skip(1) {
            *o = 2.0 * (k as f64 * x).cos();
        }
    }
}

/// `D_mn(x, y) = Σ_{|k|/m + |l|/n ≤ 1} e^{i(kx + ly)}` in `O(m)` operations.
pub fn dirichlet_rhombus(m: usize, n: usize, x: f64, y: f64) -> KernelValue {
    let rows = RhombusRows::new(m, n);
    let mut ky = vec![0.0; rows.width()];
    let mut cx = vec![0.0; rows.width()];
    let handled = rows.y_factors(y, &mut ky);
    rows.x_factors(x, &mut cx);
    KernelValue {
        value: cx.iter().zip(&ky).map(|(a, b)| a * b).sum(),
        singularity_handled: handled,
    }
}

/// `2 sin(ry) / y`, with its limit `2r` at the origin.
fn sine_over_y(r: f64, y: f64) -> (f64, bool) {
    if y.abs() < SINGULAR_EPS {
        let t = r * y;
        (2.0 * r * (1.0 - t * t / 6.0), true)
    } else {
        (2.0 * (r * y).sin() / y, false)
    }
}

/// `S_mn(x, y) = (2/y) D_m(x + ny/m) D_m(x − ny/m) sin(ny/m)`.
pub fn s_kernel(m: usize, n: usize, x: f64, y: f64) -> KernelValue {
    let r = n as f64 / m as f64;
    let a = dirichlet_ratio(m, x + r * y);
    let b = dirichlet_ratio(m, x - r * y);
    let (f, h) = sine_over_y(r, y);
    KernelValue {
        value: a.value * b.value * f,
        singularity_handled: h || a.singularity_handled || b.singularity_handled,
    }
}

/// The expanded representation of `S_mn`,
/// `(2/y)(sin((m+1)(x − ry)/2 + ny) D_m(x − ry) − sin((m+1)(x + ry)/2 − ny) D_m(x + ry) + sin ny)`
/// with `r = n/m`. Undefined on `y = 0`; meant as a cross-check of [`s_kernel`].
pub fn s_kernel_expanded(m: usize, n: usize, x: f64, y: f64) -> f64 {
    let (mf, nf) = (m as f64, n as f64);
    let r = nf / mf;
    let minus = x - r * y;
    let plus = x + r * y;
    let h = 0.5 * (mf + 1.0);
    let t1 = (h * minus + nf * y).sin() * dirichlet_ratio(m, minus).value;
    let t2 = (h * plus - nf * y).sin() * dirichlet_ratio(m, plus).value;
    2.0 / y * (t1 - t2 + (nf * y).sin())
}

/// `{−a/m}` from exact integer arithmetic.
#[inline]
pub fn frac_neg(a: usize, m: usize) -> f64 {
    ((m - a % m) % m) as f64 / m as f64
}

/// Which `y`-frequency the fractional-part kernel carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FVariant {
    /// `cos(n(1 − k/m)y)`: the form for which the decomposition identity holds.
    #[default]
    Minus,
    /// `cos(n(1 + k/m)y)`.
    Plus,
}

impl FVariant {
    pub fn as_str(&self) -> &'static str {
        match self {
            FVariant::Minus => "minus",
            FVariant::Plus => "plus",
        }
    }

    /// `y`-frequency of the `k`-th term.
    #[inline]
    pub(crate) fn frequency(&self, k: usize, m: usize, n: usize) -> f64 {
        let num = match self {
            FVariant::Minus => n * (m - k),
            FVariant::Plus => n * (m + k),
        };
        num as f64 / m as f64
    }
}

impl std::str::FromStr for FVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "minus" => Ok(FVariant::Minus),
            "plus" => Ok(FVariant::Plus),
            other => Err(format!(
                "unknown F variant `{other}` (expected minus or plus)"
            )),
        }
    }
}

/// `F_mn(x, y) = 4 Σ_{k=1}^m {−nk/m} cos(kx) cos(ω_k y)` with `ω_k` chosen by `variant`.
pub fn f_kernel(m: usize, n: usize, x: f64, y: f64, variant: FVariant) -> KernelValue {
    let value = (1..=m)
        .map(|k| {
            let c = frac_neg(n * k, m);
            if c == 0.0 {
                0.0
            } else {
                c * (k as f64 * x).cos() * (variant.frequency(k, m, n) * y).cos()
            }
        })
        .sum::<f64>();
    KernelValue::regular(4.0 * value)
}

/// Number of Fourier-tail terms `ν = ±1..=±V` kept in `R_mn`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationSpec {
    pub terms: usize,
}

impl Default for TruncationSpec {
    fn default() -> Self {
        Self { terms: 2000 }
    }
}

impl TruncationSpec {
    pub fn new(terms: usize) -> Result<Self> {
        if terms == 0 {
            return Err(Error::InvalidDegree(terms));
        }
        Ok(Self { terms })
    }

    /// Bound on the discarded `|ν| > V` terms: `(2m + 1)|y| / (π² V)`.
    pub fn tail_bound(&self, m: usize, y: f64) -> f64 {
        (2 * m + 1) as f64 * y.abs() / (PI * PI * self.terms as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedValue {
    pub value: f64,
    pub tail_bound: f64,
}

/// Truncated `R_mn`:
///
/// `−Σ_{1≤|ν|≤V} y/(πν(2πν + y)) Σ_{|k|≤m} e^{ikx} sin(n(1 − |k|/m)(2πν + y))
///  + Σ_{|k|≤m} e^{ikx} cos(n(1 − |k|/m) y)`.
///
/// The leading minus sign comes from `{ξ} = 1/2 − Σ_{ν≥1} sin(2πνξ)/(πν)`.
pub fn r_kernel(
    m: usize,
    n: usize,
    x: f64,
    y: f64,
    trunc: &TruncationSpec,
) -> Result<TruncatedValue> {
    let v_max = trunc.terms as i64;
    let nearest = (-y / TAU).round() as i64;
    if nearest != 0 && nearest.abs() <= v_max && (TAU * nearest as f64 + y).abs() < SINGULAR_EPS {
        return Err(Error::SingularPoint { y, nu: nearest });
    }

    let weights: Vec<f64> = (0..=m)
        .map(|k| {
            if k == 0 {
                1.0
            } else {
                2.0 * (k as f64 * x).cos()
            }
        })
        .collect();
    let freqs: Vec<f64> = (0..=m).map(|k| (n * (m - k)) as f64 / m as f64).collect();
    let row_sum = |t: f64, trig: fn(f64) -> f64| -> f64 {
        weights
            .iter()
            .zip(&freqs)
            .map(|(w, f)| w * trig(f * t))
            .sum()
    };

    let mut tail = 0.0;
    // smallest terms first
    for nu in (1..=v_max).rev() {
        for nu in [nu, -nu] {
            let shift = TAU * nu as f64 + y;
            let coef = y / (PI * nu as f64 * shift);
            tail += coef * row_sum(shift, f64::sin);
        }
    }
    Ok(TruncatedValue {
        value: row_sum(y, f64::cos) - tail,
        tail_bound: trunc.tail_bound(m, y),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub residual: f64,
    pub tail_bound: f64,
}

impl Residual {
    /// The decomposition contract `residual ≤ tail_bound + 1e-8`.
    pub fn within_bound(&self) -> bool {
        self.residual <= self.tail_bound + 1e-8
    }
}

/// `|D_mn − (S_mn − F_mn + R_mn^V)|` at one point.
pub fn decomposition_residual(
    m: usize,
    n: usize,
    x: f64,
    y: f64,
    trunc: &TruncationSpec,
    variant: FVariant,
) -> Result<Residual> {
    let r = r_kernel(m, n, x, y, trunc)?;
    let d = dirichlet_rhombus(m, n, x, y).value;
    let s = s_kernel(m, n, x, y).value;
    let f = f_kernel(m, n, x, y, variant).value;
    Ok(Residual {
        residual: (d - (s - f + r.value)).abs(),
        tail_bound: r.tail_bound,
    })
}

/// `𝓕_mp(x) = Σ_{k=0}^m {−pk/m} e^{ikx}`.
pub fn script_f(m: usize, p: usize, x: f64) -> Complex64 {
    (1..=m)
        .map(|k| {
            let c = frac_neg(p * k, m);
            Complex64::from_polar(c, k as f64 * x)
        })
        .sum()
}

/// Boundary kernel `d_mn(x, y) = Σ_{|k|/m + |l|/n = 1} e^{i(kx + ly)}`, enumerated
/// from the lattice points with `m | n(m − |k|)`.
pub fn boundary_kernel(m: usize, n: usize, x: f64, y: f64) -> KernelValue {
    let mut value = 0.0;
    for k in 0..=m {
        let prod = n * (m - k);
        if !prod.is_multiple_of(m) {
            continue;
        }
        let l = prod / m;
        let ly = if l == 0 {
            1.0
        } else {
            2.0 * (l as f64 * y).cos()
        };
        let kx = if k == 0 {
            1.0
        } else {
            2.0 * (k as f64 * x).cos()
        };
        value += kx * ly;
    }
    KernelValue::regular(value)
}

/// Open-rhombus kernel `𝒟_mn = D_mn − d_mn`.
pub fn open_rhombus_kernel(m: usize, n: usize, x: f64, y: f64) -> KernelValue {
    let d = dirichlet_rhombus(m, n, x, y);
    KernelValue {
        value: d.value - boundary_kernel(m, n, x, y).value,
        singularity_handled: d.singularity_handled,
    }
}

/// `(Δ_m^(1), Δ_m^(2)) = (S_mm / 2, D_m(x − y) sin(m(x + y)/2))`.
pub fn delta_kernels(m: usize, x: f64, y: f64) -> (f64, f64) {
    (delta_first(m, x, y), delta_second(m, x, y))
}

pub fn delta_first(m: usize, x: f64, y: f64) -> f64 {
    0.5 * s_kernel(m, m, x, y).value
}

pub fn delta_second(m: usize, x: f64, y: f64) -> f64 {
    dirichlet_ratio(m, x - y).value * (0.5 * m as f64 * (x + y)).sin()
}

/// `Φ_mn(x, y) = |sin a sin b| + |cos a cos b|`, `a, b = (mx ± ny)/2`.
pub fn phi_factor(m: usize, n: usize, x: f64, y: f64) -> f64 {
    let a = 0.5 * (m as f64 * x + n as f64 * y);
    let b = 0.5 * (m as f64 * x - n as f64 * y);
    (a.sin() * b.sin()).abs() + (a.cos() * b.cos()).abs()
}
