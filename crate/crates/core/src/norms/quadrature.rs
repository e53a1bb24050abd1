//! Composite Gauss–Legendre quadrature on cells sized to the kernel's oscillation.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use rayon::prelude::*;

use crate::kernels::{self, FVariant, RhombusRows};
use crate::{Error, Result};

/// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        Self { x0, x1, y0, y1 }
    }

    pub fn square(a: f64, b: f64) -> Self {
        Self::new(a, b, a, b)
    }

    /// `[0, π]²`.
    pub fn quarter_torus() -> Self {
        Self::square(0.0, PI)
    }

    /// `[−π, π]²`.
    pub fn torus() -> Self {
        Self::square(-PI, PI)
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    pub fn is_degenerate(&self) -> bool {
        !(self.width() > 0.0 && self.height() > 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub cells_per_oscillation: usize,
    pub gauss_order: usize,
    pub domain: Rect,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            cells_per_oscillation: 8,
            gauss_order: 4,
            domain: Rect::quarter_torus(),
        }
    }
}

impl QuadratureSpec {
    pub fn with_domain(mut self, domain: Rect) -> Self {
        self.domain = domain;
        self
    }

    pub fn with_cells(mut self, cells_per_oscillation: usize) -> Self {
        self.cells_per_oscillation = cells_per_oscillation;
        self
    }

    /// The same spec with twice as many cells, used for self-convergence checks.
    pub fn refined(self) -> Self {
        self.with_cells(2 * self.cells_per_oscillation)
    }

    pub fn validate(&self) -> Result<()> {
        if self.cells_per_oscillation == 0 {
            return Err(Error::DegenerateQuadrature(
                "cells_per_oscillation must be positive".into(),
            ));
        }
        if self.gauss_order == 0 {
            return Err(Error::DegenerateQuadrature(
                "gauss_order must be positive".into(),
            ));
        }
        if self.domain.is_degenerate() {
            return Err(Error::DegenerateQuadrature(format!(
                "empty domain {:?}",
                self.domain
            )));
        }
        Ok(())
    }

    /// Number of cells along an axis of length `len` for a kernel of frequency `freq`:
    /// each cell spans at most `π / (cells_per_oscillation · freq)`.
    pub fn cells_along(&self, len: f64, freq: f64) -> usize {
        let per_unit = self.cells_per_oscillation as f64 * freq.max(1.0) / PI;
        ((len * per_unit - 1e-9).ceil() as usize).max(1)
    }

    /// Tensor nodes and weights along one axis.
    pub fn axis_rule(&self, a: f64, b: f64, freq: f64) -> (Vec<f64>, Vec<f64>) {
        composite_rule(a, b, self.cells_along(b - a, freq), self.gauss_order)
    }
}

/// Composite Gauss–Legendre rule on `cells` equal cells of `[a, b]`.
pub fn composite_rule(a: f64, b: f64, cells: usize, order: usize) -> (Vec<f64>, Vec<f64>) {
    let rule = GaussLegendre::new(NonZeroUsize::new(order).expect("order checked by caller"));
    let pairs = rule.as_node_weight_pairs();
    let h = (b - a) / cells as f64;
    let mut nodes = Vec::with_capacity(cells * order);
    let mut weights = Vec::with_capacity(cells * order);
    for c in 0..cells {
        let lo = a + c as f64 * h;
        for &(t, w) in pairs {
            nodes.push(lo + 0.5 * h * (t + 1.0));
            weights.push(0.5 * h * w);
        }
    }
    (nodes, weights)
}

/// Neumaier-compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::default();
        for v in iter {
            s.add(v);
        }
        s
    }
}

/// A kernel that can be tabulated on a tensor grid one row at a time.
///
/// `columns` runs once per grid and may cache anything that depends only on `y`;
/// `row` then fills the values at a fixed `x` for all `ys`.
pub trait GridKernel: Sync {
    type Columns: Sync;

    /// Oscillation frequencies along `x` and `y`.
    fn frequencies(&self) -> (f64, f64);

    fn columns(&self, ys: &[f64]) -> Self::Columns;

    fn row(&self, x: f64, ys: &[f64], cols: &Self::Columns, out: &mut [f64]);
}

/// Any `Fn(x, y)` with declared frequencies.
pub struct Pointwise<F> {
    pub f: F,
    pub freq: (f64, f64),
}

impl<F: Fn(f64, f64) -> f64 + Sync> GridKernel for Pointwise<F> {
    type Columns = ();

    fn frequencies(&self) -> (f64, f64) {
        self.freq
    }

    fn columns(&self, _ys: &[f64]) {}

    fn row(&self, x: f64, ys: &[f64], _cols: &(), out: &mut [f64]) {
        for (o, &y) in out.iter_mut().zip(ys) {
            *o = (self.f)(x, y);
        }
    }
}

/// `D_mn` tabulated through its row-collapsed form.
#[derive(Debug, Clone)]
pub struct RhombusKernel {
    m: usize,
    n: usize,
    rows: RhombusRows,
}

impl RhombusKernel {
    pub fn new(m: usize, n: usize) -> Self {
        Self {
            m,
            n,
            rows: RhombusRows::new(m, n),
        }
    }
}

impl GridKernel for RhombusKernel {
    type Columns = Vec<f64>;

    fn frequencies(&self) -> (f64, f64) {
        (self.m as f64, self.n as f64)
    }

    fn columns(&self, ys: &[f64]) -> Vec<f64> {
        let w = self.rows.width();
        let mut table = vec![0.0; ys.len() * w];
        for (chunk, &y) in table.chunks_exact_mut(w).zip(ys) {
            self.rows.y_factors(y, chunk);
        }
        table
    }

    fn row(&self, x: f64, _ys: &[f64], cols: &Vec<f64>, out: &mut [f64]) {
        let w = self.rows.width();
        let mut cx = vec![0.0; w];
        self.rows.x_factors(x, &mut cx);
        for (o, ky) in out.iter_mut().zip(cols.chunks_exact(w)) {
            *o = cx.iter().zip(ky).map(|(a, b)| a * b).sum();
        }
    }
}

/// `F_mn` as a sum of separable terms `4{−nk/m} cos(kx) · cos(ω_k y)`.
#[derive(Debug, Clone)]
pub struct FKernel {
    m: usize,
    n: usize,
    variant: FVariant,
    /// `(k, 4{−nk/m}, ω_k)` for the terms with a nonzero coefficient.
    terms: Vec<(usize, f64, f64)>,
}

impl FKernel {
    pub fn new(m: usize, n: usize, variant: FVariant) -> Self {
        let terms = (1..=m)
            .filter_map(|k| {
                let c = kernels::frac_neg(n * k, m);
                (c != 0.0).then(|| (k, 4.0 * c, variant.frequency(k, m, n)))
            })
            .collect();
        Self {
            m,
            n,
            variant,
            terms,
        }
    }

    pub fn variant(&self) -> FVariant {
        self.variant
    }

    /// True when every coefficient vanishes, i.e. `m | n`.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl GridKernel for FKernel {
    type Columns = Vec<f64>;

    fn frequencies(&self) -> (f64, f64) {
        let wy = match self.variant {
            FVariant::Minus => self.n as f64,
            FVariant::Plus => 2.0 * self.n as f64,
        };
        (self.m as f64, wy)
    }

    fn columns(&self, ys: &[f64]) -> Vec<f64> {
        let w = self.terms.len();
        let mut table = vec![0.0; ys.len() * w];
        for (chunk, &y) in table.chunks_exact_mut(w.max(1)).zip(ys) {
            for (c, &(_, _, freq)) in chunk.iter_mut().zip(&self.terms) {
                *c = (freq * y).cos();
            }
        }
        table
    }

    fn row(&self, x: f64, _ys: &[f64], cols: &Vec<f64>, out: &mut [f64]) {
        if self.terms.is_empty() {
            out.iter_mut().for_each(|o| *o = 0.0);
            return;
        }
        let cx: Vec<f64> = self
            .terms
            .iter()
            .map(|&(k, c, _)| c * (k as f64 * x).cos())
            .collect();
        for (o, cy) in out.iter_mut().zip(cols.chunks_exact(self.terms.len())) {
            *o = cx.iter().zip(cy).map(|(a, b)| a * b).sum();
        }
    }
}

/// Sum of `weight(x_i) · Σ_j weight(y_j) |K(x_i, y_j)|` over the tensor grid, with a
/// fixed reduction order (rows in order, each row summed left to right).
pub(crate) fn weighted_abs_sum<K: GridKernel>(
    kernel: &K,
    xs: &[f64],
    wx: &[f64],
    ys: &[f64],
    wy: &[f64],
) -> f64 {
    let cols = kernel.columns(ys);
    let rows: Vec<f64> = xs
        .par_iter()
        .zip(wx.par_iter())
        .map_init(
            || vec![0.0; ys.len()],
            |buf, (&x, &w)| {
                kernel.row(x, ys, &cols, buf);
                let s: CompensatedSum = buf.iter().zip(wy).map(|(v, q)| v.abs() * q).collect();
                w * s.total()
            },
        )
        .collect();
    rows.into_iter().collect::<CompensatedSum>().total()
}

/// `∫∫_domain |K(x, y)| dx dy` by composite Gauss–Legendre quadrature.
pub fn l1_norm_2d<K: GridKernel>(kernel: &K, quad: &QuadratureSpec) -> Result<f64> {
    quad.validate()?;
    let (fx, fy) = kernel.frequencies();
    let d = quad.domain;
    let (xs, wx) = quad.axis_rule(d.x0, d.x1, fx);
    let (ys, wy) = quad.axis_rule(d.y0, d.y1, fy);
    Ok(weighted_abs_sum(kernel, &xs, &wx, &ys, &wy))
}

/// `∫_a^b |f(x)| dx` on cells of width `≤ π / (cells_per_oscillation · freq)`.
pub fn l1_norm_1d<F: Fn(f64) -> f64>(
    f: F,
    freq: f64,
    a: f64,
    b: f64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    quad.validate()?;
    if a.partial_cmp(&b) != Some(std::cmp::Ordering::Less) {
        return Err(Error::DegenerateQuadrature(format!(
            "empty interval [{a}, {b}]"
        )));
    }
    let (xs, ws) = quad.axis_rule(a, b, freq);
    Ok(xs
        .iter()
        .zip(&ws)
        .map(|(&x, w)| w * f(x).abs())
        .collect::<CompensatedSum>()
        .total())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_kernel() {
        let k = Pointwise {
            f: |_, _| 1.0,
            freq: (1.0, 1.0),
        };
        let v = l1_norm_2d(&k, &QuadratureSpec::default()).unwrap();
        assert!((v - PI * PI).abs() < 1e-12);
    }

    #[test]
    fn abs_cosine_is_two_pi() {
        for m in [1usize, 3, 8, 17] {
            let k = Pointwise {
                f: move |x: f64, _| (m as f64 * x).cos(),
                freq: (m as f64, 1.0),
            };
            let v = l1_norm_2d(&k, &QuadratureSpec::default()).unwrap();
            assert!((v - 2.0 * PI).abs() < 1e-6, "m={m}: {v}");
        }
    }

    #[test]
    fn rhombus_grid_matches_pointwise() {
        let (m, n) = (5, 8);
        let fast = RhombusKernel::new(m, n);
        let slow = Pointwise {
            f: move |x, y| kernels::dirichlet_rhombus(m, n, x, y).value,
            freq: (m as f64, n as f64),
        };
        let q = QuadratureSpec::default();
        let a = l1_norm_2d(&fast, &q).unwrap();
        let b = l1_norm_2d(&slow, &q).unwrap();
        assert!((a - b).abs() < 1e-10 * a);
    }

    #[test]
    fn f_grid_matches_pointwise() {
        for variant in [FVariant::Minus, FVariant::Plus] {
            let (m, n) = (5, 12);
            let fast = FKernel::new(m, n, variant);
            let slow = Pointwise {
                f: move |x, y| kernels::f_kernel(m, n, x, y, variant).value,
                freq: fast.frequencies(),
            };
            let q = QuadratureSpec::default();
            let a = l1_norm_2d(&fast, &q).unwrap();
            let b = l1_norm_2d(&slow, &q).unwrap();
            assert!((a - b).abs() < 1e-10 * a);
        }
        assert!(FKernel::new(4, 8, FVariant::Minus).is_zero());
    }

    #[test]
    fn rhombus_one_one_self_converges() {
        let k = RhombusKernel::new(1, 1);
        let q = QuadratureSpec::default();
        let a = l1_norm_2d(&k, &q).unwrap();
        let b = l1_norm_2d(&k, &q.refined()).unwrap();
        assert!((a - b).abs() / b < 5e-3);
    }

    #[test]
    fn degenerate_specs_rejected() {
        let k = Pointwise {
            f: |_, _| 1.0,
            freq: (1.0, 1.0),
        };
        let q = QuadratureSpec::default().with_cells(0);
        assert!(l1_norm_2d(&k, &q).is_err());
        let q = QuadratureSpec::default().with_domain(Rect::square(1.0, 1.0));
        assert!(l1_norm_2d(&k, &q).is_err());
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::default();
        s.add(1.0);
        for _ in 0..1_000_000 {
            s.add(1e-16);
        }
        assert!((s.total() - (1.0 + 1e-10)).abs() < 1e-22);
    }
}
