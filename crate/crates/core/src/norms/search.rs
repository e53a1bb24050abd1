//! Uniform grid search for a supremum, followed by local refinement around the
//! best grid point.

use rayon::prelude::*;

use super::quadrature::Rect;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchSpec {
    pub grid_points_per_axis: usize,
    pub refinement_rounds: usize,
    pub refinement_factor: usize,
}

impl SearchSpec {
    /// `8·max(m, n) + 1` points per axis, two refinement rounds of factor 8.
    pub fn for_degrees(m: usize, n: usize) -> Self {
        Self {
            grid_points_per_axis: 8 * m.max(n) + 1,
            refinement_rounds: 2,
            refinement_factor: 8,
        }
    }

    pub fn with_rounds(mut self, rounds: usize) -> Self {
        self.refinement_rounds = rounds;
        self
    }

    pub fn validate(&self, m: usize, n: usize) -> Result<()> {
        let need = 4 * m.max(n);
        if self.grid_points_per_axis < need.max(2) {
            return Err(Error::DegenerateSearch(format!(
                "{} grid points per axis, need at least {}",
                self.grid_points_per_axis,
                need.max(2)
            )));
        }
        if self.refinement_factor < 2 && self.refinement_rounds > 0 {
            return Err(Error::DegenerateSearch(
                "refinement factor must be at least 2".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub value: f64,
    /// Maximiser in the search coordinates.
    pub argmax: (f64, f64),
    /// Best value after the coarse grid and after each refinement round.
    pub round_values: Vec<f64>,
}

impl SearchResult {
    /// Relative change produced by the last refinement round.
    pub fn last_round_change(&self) -> f64 {
        match self.round_values.as_slice() {
            [.., a, b] => (b - a).abs() / b.abs().max(f64::MIN_POSITIVE),
            _ => 0.0,
        }
    }
}

/// Maximises `f` over `(nx + 1) × (ny + 1)` grid points of `domain` (`nx`, `ny`
/// intervals), then refines `rounds` times: each round re-grids the box of one
/// step around the incumbent with `2·factor` intervals per axis.
///
/// Ties are broken by the first point in row-major order, so the result does not
/// depend on thread scheduling.
pub fn grid_maximize<F>(
    f: F,
    domain: Rect,
    nx: usize,
    ny: usize,
    rounds: usize,
    factor: usize,
) -> SearchResult
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let nx = nx.max(1);
    let ny = ny.max(1);
    let mut hx = domain.width() / nx as f64;
    let mut hy = domain.height() / ny as f64;
    let (mut best, mut arg) = scan(&f, domain.x0, hx, nx, domain.y0, hy, ny);
    let mut round_values = vec![best];

    for _ in 0..rounds {
        let x0 = (arg.0 - hx).max(domain.x0);
        let x1 = (arg.0 + hx).min(domain.x1);
        let y0 = (arg.1 - hy).max(domain.y0);
        let y1 = (arg.1 + hy).min(domain.y1);
        hx /= factor as f64;
        hy /= factor as f64;
        let sx = (((x1 - x0) / hx).round() as usize).max(1);
        let sy = (((y1 - y0) / hy).round() as usize).max(1);
        let (v, a) = scan(
            &f,
            x0,
            (x1 - x0) / sx as f64,
            sx,
            y0,
            (y1 - y0) / sy as f64,
            sy,
        );
        // the incumbent lies on the refined grid up to rounding; keep it if it is still better
        if v > best {
            best = v;
            arg = a;
        }
        round_values.push(best);
    }
    SearchResult {
        value: best,
        argmax: arg,
        round_values,
    }
}

fn scan<F>(f: &F, x0: f64, hx: f64, nx: usize, y0: f64, hy: f64, ny: usize) -> (f64, (f64, f64))
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let rows: Vec<(f64, f64, f64)> = (0..=nx)
        .into_par_iter()
        .map(|i| {
            let x = x0 + i as f64 * hx;
            let mut best = (f64::NEG_INFINITY, x, y0);
            for j in 0..=ny {
                let y = y0 + j as f64 * hy;
                let v = f(x, y);
                if v > best.0 {
                    best = (v, x, y);
                }
            }
            best
        })
        .collect();
    let mut best = (f64::NEG_INFINITY, (x0, y0));
    for (v, x, y) in rows {
        if v > best.0 {
            best = (v, (x, y));
        }
    }
    best
}
