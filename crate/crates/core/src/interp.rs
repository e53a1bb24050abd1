//! Lagrange interpolation on `LC_mn`: fundamental polynomials `φ_mn`, the
//! interpolation operator `𝒫_mn` in the basis `C_i(u) C_j(v)`, `(i, j) ∈ Γ_mn`,
//! and the Lebesgue function/constant of the operator.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::io::{self, Write};

use crate::chebyshev::{cheb_angle, cheb_at_cgl};
use crate::lcnodes::{spectral_row_end, spectral_set, DegreePair, NodeSet};
use crate::norms::{grid_maximize, Rect, SearchResult, SearchSpec};
use crate::report::fmt_f64;
use crate::{Error, Result};

/// `𝒫_mn(f)` stored as coefficients over `Γ_mn`:
/// `P(u, v) = Σ_Γ c_ij C_i(u) C_j(v) − ½ c_{0,n} C_n(v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Interpolant {
    degrees: DegreePair,
    pairs: Vec<(usize, usize)>,
    coeffs: Vec<f64>,
}

impl Interpolant {
    /// Builds an interpolant from coefficients listed in the order of
    /// [`crate::lcnodes::SpectralSet::pairs`].
    pub fn from_coefficients(degrees: DegreePair, coeffs: Vec<f64>) -> Result<Self> {
        let gamma = spectral_set(degrees)?;
        if coeffs.len() != gamma.len() {
            return Err(Error::SampleMismatch(format!(
                "{} coefficients for |Γ| = {}",
                coeffs.len(),
                gamma.len()
            )));
        }
        Ok(Self {
            degrees,
            pairs: gamma.pairs().to_vec(),
            coeffs,
        })
    }

    pub fn degrees(&self) -> DegreePair {
        self.degrees
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize, j: usize) -> Option<f64> {
        self.pairs
            .iter()
            .position(|&p| p == (i, j))
            .map(|q| self.coeffs[q])
    }

    /// The `(0, n)` coefficient, always the last entry.
    fn corner(&self) -> f64 {
        *self.coeffs.last().expect("Γ is never empty")
    }

    /// Columns `i,j,c_ij`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "i,j,c_ij")?;
        for (&(i, j), &c) in self.pairs.iter().zip(&self.coeffs) {
            writeln!(w, "{i},{j},{}", fmt_f64(c))?;
        }
        Ok(())
    }
}

fn check_square(u: f64, v: f64) -> Result<()> {
    for t in [u, v] {
        if !(-1.0..=1.0).contains(&t) {
            return Err(Error::Domain(t));
        }
    }
    Ok(())
}

fn basis_values(len: usize, theta: f64) -> Vec<f64> {
    (0..=len).map(|i| cheb_angle(i, theta)).collect()
}

/// `φ_mn(u, v; u_k, v_l) = λ_kl (Σ_Γ C_i(u_k) C_j(v_l) C_i(u) C_j(v) − ½ C_n(v_l) C_n(v))`.
pub fn fundamental(nodes: &NodeSet, at_node: (usize, usize), point: (f64, f64)) -> Result<f64> {
    let d = nodes.degrees();
    let (m, n) = (d.m(), d.n());
    let (k, l) = at_node;
    let node = nodes.get(k, l).ok_or(Error::UnknownNode { k, l, m, n })?;
    check_square(point.0, point.1)?;
    let cu = basis_values(m, point.0.acos());
    let cv = basis_values(n, point.1.acos());
    let gamma = spectral_set(d)?;
    let sum: f64 = gamma
        .pairs()
        .iter()
        .map(|&(i, j)| cheb_at_cgl(i, k, m) * cheb_at_cgl(j, l, n) * cu[i] * cv[j])
        .sum();
    Ok(node.weight * (sum - 0.5 * cheb_at_cgl(n, l, n) * cv[n]))
}

/// `c_ij = Σ_{(k,l) ∈ I_mn} λ_kl f(u_k, v_l) C_i(u_k) C_j(v_l)`.
pub fn interpolate(nodes: &NodeSet, samples: &HashMap<(usize, usize), f64>) -> Result<Interpolant> {
    if samples.len() != nodes.len() {
        return Err(Error::SampleMismatch(format!(
            "{} samples for {} nodes",
            samples.len(),
            nodes.len()
        )));
    }
    let values = nodes
        .entries()
        .iter()
        .map(|e| {
            samples.get(&(e.k, e.l)).copied().ok_or_else(|| {
                Error::SampleMismatch(format!("no sample for node ({}, {})", e.k, e.l))
            })
        })
        .collect::<Result<Vec<f64>>>()?;
    interpolate_values(nodes, &values)
}

/// Like [`interpolate`] with samples given in node order.
pub fn interpolate_values(nodes: &NodeSet, values: &[f64]) -> Result<Interpolant> {
    if values.len() != nodes.len() {
        return Err(Error::SampleMismatch(format!(
            "{} samples for {} nodes",
            values.len(),
            nodes.len()
        )));
    }
    let d = nodes.degrees();
    let (m, n) = (d.m(), d.n());
    let gamma = spectral_set(d)?;
    let coeffs = gamma
        .pairs()
        .iter()
        .map(|&(i, j)| {
            nodes
                .entries()
                .iter()
                .zip(values)
                .map(|(e, f)| e.weight * f * cheb_at_cgl(i, e.k, m) * cheb_at_cgl(j, e.l, n))
                .sum()
        })
        .collect();
    Interpolant::from_coefficients(d, coeffs)
}

/// Samples `f` at every node and interpolates.
pub fn interpolate_fn<F: Fn(f64, f64) -> f64>(nodes: &NodeSet, f: F) -> Result<Interpolant> {
    let values: Vec<f64> = nodes.entries().iter().map(|e| f(e.u, e.v)).collect();
    interpolate_values(nodes, &values)
}

pub fn evaluate(interp: &Interpolant, point: (f64, f64)) -> Result<f64> {
    check_square(point.0, point.1)?;
    let n = interp.degrees.n();
    let cu = basis_values(interp.degrees.m(), point.0.acos());
    let cv = basis_values(n, point.1.acos());
    let sum: f64 = interp
        .pairs
        .iter()
        .zip(&interp.coeffs)
        .map(|(&(i, j), c)| c * cu[i] * cv[j])
        .sum();
    Ok(sum - 0.5 * interp.corner() * cv[n])
}

/// Fast evaluator of the Lebesgue function `Σ_{I} |φ_mn(cos x, cos y; ·)|` in angle
/// coordinates.
///
/// For a fixed point the inner sum over `Γ` is split by rows `i`, and each row is a
/// prefix of `Σ_j C_j(v_l) C_j(v)`; tabulating those prefixes once per point brings
/// the cost down to `O(m·|I| + n²)` per evaluation.
pub struct LcLebesgueFunction<'a> {
    nodes: &'a NodeSet,
    m: usize,
    n: usize,
    /// `C_i(u_k)`, row-major in `(k, i)`, `k, i ≤ m`.
    node_u: Vec<f64>,
    /// `C_j(v_l)`, row-major in `(l, j)`, `l, j ≤ n`.
    node_v: Vec<f64>,
    /// Last `j` in row `i` of `Γ` (excluding the extra pair), for `i < m`.
    row_end: Vec<usize>,
}

impl<'a> LcLebesgueFunction<'a> {
    pub fn new(nodes: &'a NodeSet) -> Self {
        let d = nodes.degrees();
        let (m, n) = (d.m(), d.n());
        let node_u = (0..=m)
            .flat_map(|k| (0..=m).map(move |i| cheb_at_cgl(i, k, m)))
            .collect();
        let node_v = (0..=n)
            .flat_map(|l| (0..=n).map(move |j| cheb_at_cgl(j, l, n)))
            .collect();
        let row_end = (0..m)
            .map(|i| spectral_row_end(i, m, n).expect("i < m"))
            .collect();
        Self {
            nodes,
            m,
            n,
            node_u,
            node_v,
            row_end,
        }
    }

    /// Value at `(u, v) = (cos x, cos y)`.
    pub fn at_angles(&self, x: f64, y: f64) -> f64 {
        let (m, n) = (self.m, self.n);
        let cu = basis_values(m, x);
        let cv = basis_values(n, y);

        // prefix[l][j] = Σ_{j' ≤ j} C_{j'}(v_l) C_{j'}(v)
        let mut prefix = vec![0.0; (n + 1) * n];
        for l in 0..=n {
            let row = &self.node_v[l * (n + 1)..(l + 1) * (n + 1)];
            let out = &mut prefix[l * n..(l + 1) * n];
            let mut acc = 0.0;
            for j in 0..n {
                acc += row[j] * cv[j];
                out[j] = acc;
            }
        }

        let mut total = 0.0;
        let mut au = vec![0.0; m];
        let mut last_k = usize::MAX;
        for e in self.nodes.entries() {
            if e.k != last_k {
                let row = &self.node_u[e.k * (m + 1)..(e.k + 1) * (m + 1)];
                for i in 0..m {
                    au[i] = row[i] * cu[i];
                }
                last_k = e.k;
            }
            let pre = &prefix[e.l * n..(e.l + 1) * n];
            let mut s = 0.5 * self.node_v[e.l * (n + 1) + n] * cv[n];
            for i in 0..m {
                s += au[i] * pre[self.row_end[i]];
            }
            total += e.weight * s.abs();
        }
        total
    }
}

/// `Σ_{(k,l) ∈ I_mn} |φ_mn(u, v; u_k, v_l)|`.
pub fn lebesgue_function_lc(nodes: &NodeSet, point: (f64, f64)) -> Result<f64> {
    check_square(point.0, point.1)?;
    Ok(LcLebesgueFunction::new(nodes).at_angles(point.0.acos(), point.1.acos()))
}

/// Number of intervals at least `want` that is a multiple of `step`.
fn aligned_intervals(want: usize, step: usize) -> usize {
    want.div_ceil(step).max(1) * step
}

/// `Λ^LC_mn = max_{[−1,1]²} Σ |φ_mn|`, searched in angle coordinates `(x, y) ∈ [0, π]²`
/// with `u = cos x`, `v = cos y`.
///
/// The coarse grid has at least `grid_points_per_axis` points per axis and is
/// rounded up so that the `x` axis contains every multiple of `π/(2m)` and the `y`
/// axis every multiple of `π/(2n)`. The reported `argmax` is in angle coordinates.
pub fn lebesgue_constant_lc(nodes: &NodeSet, search: &SearchSpec) -> Result<SearchResult> {
    let d = nodes.degrees();
    let (m, n) = (d.m(), d.n());
    search.validate(m, n)?;
    let want = search.grid_points_per_axis - 1;
    let f = LcLebesgueFunction::new(nodes);
    Ok(grid_maximize(
        |x, y| f.at_angles(x, y),
        Rect::square(0.0, PI),
        aligned_intervals(want, 2 * m),
        aligned_intervals(want, 2 * n),
        search.refinement_rounds,
        search.refinement_factor,
    ))
}
