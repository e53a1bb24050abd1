use std::f64::consts::{PI, SQRT_2, TAU};

use lissajous_lebesgue::asympt::{main_term, SweepKind};
use lissajous_lebesgue::chebyshev::{cgl_points, cheb_angle, cheb_eval};
use lissajous_lebesgue::interp::{evaluate, fundamental, interpolate_values, Interpolant};
use lissajous_lebesgue::kernels::{
    decomposition_residual, dirichlet_rhombus, f_kernel, s_kernel, s_kernel_expanded, FVariant,
    TruncationSpec,
};
use lissajous_lebesgue::lcnodes::{build_nodes, index_set, spectral_set, DegreePair};
use lissajous_lebesgue::norms::lebesgue_function_discrete;
use proptest::prelude::*;

fn coprime_pair(max: usize) -> impl Strategy<Value = (usize, usize)> {
    (1..=max, 1..=max).prop_filter("coprime", |&(m, n)| num_gcd(m, n) == 1)
}

fn num_gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Direct sum over `|k| n + |l| m ≤ mn`.
fn lattice_sum(m: usize, n: usize, x: f64, y: f64) -> f64 {
    let (mi, ni) = (m as i64, n as i64);
    let mut s = 0.0;
    for k in -mi..=mi {
        for l in -ni..=ni {
            if k.abs() * ni + l.abs() * mi <= mi * ni {
                s += (k as f64 * x + l as f64 * y).cos();
            }
        }
    }
    s
}

fn off_singular(v: f64) -> bool {
    // distance from multiples of π, where the closed forms divide by sines
    let r = v.rem_euclid(PI);
    r.min(PI - r) > 1e-3
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chebyshev_bounded_and_angular(n in 0usize..200, theta in 0.0f64..PI) {
        let u = theta.cos();
        let c = cheb_eval(n, u).unwrap();
        prop_assert!(c.abs() <= SQRT_2 + 1e-12);
        prop_assert!((c - cheb_angle(n, theta)).abs() < 1e-9);
    }

    #[test]
    fn cgl_points_antisymmetric(m in 1usize..300) {
        let g = cgl_points(m).unwrap();
        let p = g.points();
        prop_assert_eq!(p.len(), m + 1);
        for k in 0..=m {
            prop_assert_eq!(p[k], -p[m - k]);
        }
        prop_assert!(p.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn node_counts_and_weights((m, n) in coprime_pair(40)) {
        let d = DegreePair::coprime(m, n).unwrap();
        let nodes = build_nodes(d).unwrap();
        prop_assert_eq!(nodes.len(), (m + 1) * (n + 1) / 2);
        prop_assert_eq!(index_set(d).unwrap().len(), nodes.len());
        prop_assert_eq!(spectral_set(d).unwrap().len(), nodes.len());
        prop_assert!((nodes.weight_sum() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn interpolation_reproduces_spectral_space(
        (m, n) in coprime_pair(9),
        seed in proptest::collection::vec(-1.0f64..1.0, 64),
        (u, v) in (-1.0f64..=1.0, -1.0f64..=1.0),
    ) {
        let d = DegreePair::coprime(m, n).unwrap();
        let nodes = build_nodes(d).unwrap();
        let len = spectral_set(d).unwrap().len();
        let coeffs: Vec<f64> = seed.iter().cycle().take(len).copied().collect();
        let p = Interpolant::from_coefficients(d, coeffs).unwrap();
        let samples: Vec<f64> = nodes
            .entries()
            .iter()
            .map(|e| evaluate(&p, (e.u, e.v)).unwrap())
            .collect();
        let q = interpolate_values(&nodes, &samples).unwrap();
        let a = evaluate(&p, (u, v)).unwrap();
        let b = evaluate(&q, (u, v)).unwrap();
        prop_assert!((a - b).abs() < 1e-9, "{} vs {}", a, b);
    }

    #[test]
    fn fundamental_partition_of_unity((m, n) in coprime_pair(9), (u, v) in (-1.0f64..=1.0, -1.0f64..=1.0)) {
        let nodes = build_nodes(DegreePair::coprime(m, n).unwrap()).unwrap();
        let s: f64 = nodes
            .entries()
            .iter()
            .map(|e| fundamental(&nodes, (e.k, e.l), (u, v)).unwrap())
            .sum();
        prop_assert!((s - 1.0).abs() < 1e-10);
    }

    #[test]
    fn rhombus_kernel_symmetries(m in 1usize..20, n in 1usize..20, x in -PI..PI, y in -PI..PI) {
        let d = dirichlet_rhombus(m, n, x, y).value;
        let tol = 1e-9 * (1.0 + d.abs());
        prop_assert!((d - dirichlet_rhombus(m, n, -x, y).value).abs() < tol);
        prop_assert!((d - dirichlet_rhombus(m, n, x, -y).value).abs() < tol);
        prop_assert!((d - dirichlet_rhombus(m, n, x + TAU, y - TAU).value).abs() < tol);
        let oracle = lattice_sum(m, n, x, y);
        prop_assert!((d - oracle).abs() < 1e-9 * (1.0 + oracle.abs()));
    }

    #[test]
    fn s_forms_agree(m in 1usize..12, n in 1usize..20, x in -PI..PI, y in -PI..PI) {
        prop_assume!(off_singular(x) && off_singular(y) && off_singular(x + y) && off_singular(x - y));
        let a = s_kernel(m, n, x, y).value;
        let b = s_kernel_expanded(m, n, x, y);
        prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
    }

    #[test]
    fn f_vanishes_when_m_divides_n(m in 1usize..16, lambda in 1usize..6, x in -PI..PI, y in -PI..PI) {
        for variant in [FVariant::Minus, FVariant::Plus] {
            prop_assert_eq!(f_kernel(m, lambda * m, x, y, variant).value, 0.0);
        }
    }

    #[test]
    fn decomposition_within_tail((m, n) in coprime_pair(8), x in -PI..PI, y in -PI..PI) {
        prop_assume!(off_singular(y));
        let r = decomposition_residual(m, n, x, y, &TruncationSpec::default(), FVariant::Minus).unwrap();
        prop_assert!(r.within_bound(), "{:?}", r);
    }

    #[test]
    fn discrete_lebesgue_periodic(m in 1usize..10, n in 1usize..14, x in 0.0f64..TAU, y in 0.0f64..TAU) {
        let base = lebesgue_function_discrete(m, n, x, y);
        let sx = lebesgue_function_discrete(m, n, x + PI / m as f64, y);
        let sy = lebesgue_function_discrete(m, n, x, y + PI / n as f64);
        prop_assert!((base - sx).abs() < 1e-9 * base.max(1.0));
        prop_assert!((base - sy).abs() < 1e-9 * base.max(1.0));
    }

    #[test]
    fn main_term_relations(m in 3usize..500, extra in 0usize..500) {
        let n = m + extra;
        let lc = main_term(SweepKind::Lc, m, n).unwrap();
        let discrete = main_term(SweepKind::Discrete, m, n).unwrap();
        let continuous = main_term(SweepKind::Continuous, m, n).unwrap();
        prop_assert!((lc - 2.0 * discrete).abs() <= 4.0 * f64::EPSILON * lc);
        prop_assert!((continuous - 4.0 / (PI * PI) * lc).abs() <= 4.0 * f64::EPSILON * lc);
    }
}
