//! Chebyshev–Gauss–Lobatto points and the normalized Chebyshev basis
//! `C_0 = 1`, `C_n(u) = √2 cos(n arccos u)`.

use std::f64::consts::{FRAC_PI_2, SQRT_2};

use crate::{Error, Result};

/// The points `cos(kπ/m)`, `k = 0..=m`, in decreasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleGrid {
    m: usize,
    points: Vec<f64>,
}

impl AngleGrid {
    pub fn order(&self) -> usize {
        self.m
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }
}

/// `cos(kπ/m)` written as `sin((m − 2k)π/(2m))`, which is exactly zero at the
/// midpoint and exactly antisymmetric about it.
pub(crate) fn cgl_point(k: usize, m: usize) -> f64 {
    let num = m as f64 - 2.0 * k as f64;
    (num * FRAC_PI_2 / m as f64).sin()
}

pub fn cgl_points(m: usize) -> Result<AngleGrid> {
    if m == 0 {
        return Err(Error::InvalidDegree(m));
    }
    let points = (0..=m).map(|k| cgl_point(k, m)).collect();
    Ok(AngleGrid { m, points })
}

/// Normalized Chebyshev polynomial `C_n(u)` for `|u| <= 1`.
pub fn cheb_eval(n: usize, u: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&u) {
        return Err(Error::Domain(u));
    }
    Ok(cheb_angle(n, u.acos()))
}

/// `C_n(cos θ)`.
#[inline]
pub fn cheb_angle(n: usize, theta: f64) -> f64 {
    if n == 0 {
        1.0
    } else {
        SQRT_2 * (n as f64 * theta).cos()
    }
}

/// `C_i(u_k)` with `u_k = cos(kπ/m)` evaluated from the exact index product,
/// i.e. `√2 cos(ikπ/m)` reduced modulo `2m` before the cosine is taken.
#[inline]
pub(crate) fn cheb_at_cgl(i: usize, k: usize, m: usize) -> f64 {
    if i == 0 {
        return 1.0;
    }
    let r = (i * k) % (2 * m);
    // cos(rπ/m) = cos((2m - r)π/m); fold into [0, m].
    let r = if r > m { 2 * m - r } else { r };
    SQRT_2 * cgl_point(r, m)
}

#[cfg(test)]
#[allow(clippy::approx_constant)] // tabulated decimal values
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// Three-term recurrence `T_{k+1} = 2u T_k − T_{k−1}`, kept only as an oracle.
    fn cheb_recurrence(n: usize, u: f64) -> f64 {
        if n == 0 {
            return 1.0;
        }
        let (mut t0, mut t1) = (1.0, u);
        for _ in 1..n {
            let t2 = 2.0 * u * t1 - t0;
            t0 = t1;
            t1 = t2;
        }
        SQRT_2 * t1
    }

    #[test]
    fn cgl_small_orders() {
        assert_eq!(cgl_points(1).unwrap().points(), &[1.0, -1.0]);
        assert_eq!(cgl_points(2).unwrap().points(), &[1.0, 0.0, -1.0]);
        let p4 = cgl_points(4).unwrap();
        assert!((p4.points()[1] - 0.707_106_78).abs() < 1e-8);
        assert_eq!(cgl_points(0), Err(Error::InvalidDegree(0)));
    }

    #[test]
    fn cgl_strictly_decreasing() {
        for m in 1..40 {
            let g = cgl_points(m).unwrap();
            assert_eq!(g.points().len(), m + 1);
            assert_eq!(g.points()[0], 1.0);
            assert_eq!(g.points()[m], -1.0);
            assert!(g.points().windows(2).all(|w| w[0] > w[1]));
            for (k, &p) in g.points().iter().enumerate() {
                assert!((p - (k as f64 * PI / m as f64).cos()).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn cheb_eval_values() {
        assert_eq!(cheb_eval(0, 0.3).unwrap(), 1.0);
        assert!((cheb_eval(1, 1.0).unwrap() - 1.414_213_56).abs() < 1e-8);
        assert!((cheb_eval(2, 0.0).unwrap() + SQRT_2).abs() < 1e-15);
        assert_eq!(cheb_eval(3, 1.5), Err(Error::Domain(1.5)));
        assert_eq!(cheb_eval(3, -1.0 - 1e-12), Err(Error::Domain(-1.0 - 1e-12)));
    }

    #[test]
    fn arccos_form_matches_recurrence() {
        for n in 0..=64 {
            for q in 0..=200 {
                let theta = q as f64 * PI / 200.0;
                let u = theta.cos();
                let a = cheb_eval(n, u).unwrap();
                let b = cheb_recurrence(n, u);
                assert!((a - b).abs() < 1e-12, "n={n} u={u}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn orthonormal_under_chebyshev_weight() {
        // Gauss–Chebyshev with 40 nodes is exact for degree < 80.
        let nodes = 40;
        for i in 0..=16 {
            for j in 0..=16 {
                let s: f64 = (1..=nodes)
                    .map(|q| {
                        let theta = (2 * q - 1) as f64 * PI / (2 * nodes) as f64;
                        cheb_angle(i, theta) * cheb_angle(j, theta)
                    })
                    .sum::<f64>()
                    / nodes as f64;
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((s - expected).abs() < 1e-10, "({i},{j}) -> {s}");
            }
        }
    }

    #[test]
    fn index_form_matches_direct_evaluation() {
        for m in 1..12 {
            for i in 0..=2 * m + 3 {
                for k in 0..=m {
                    let direct = cheb_eval(i, cgl_point(k, m)).unwrap();
                    assert!((cheb_at_cgl(i, k, m) - direct).abs() < 1e-13);
                }
            }
        }
    }
}
