//! Main terms and remainder scales of the Lebesgue constant asymptotics, residual
//! sweeps over sizes, and norm-bound checks for `F_mn`, `𝓕_mp` and `Δ_m`.

use std::f64::consts::PI;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;

use crate::interp::lebesgue_constant_lc;
use crate::kernels::FVariant;
use crate::lcnodes::{build_nodes, DegreePair};
use crate::norms::{
    kernel_l1_norm, lebesgue_constant_discrete, lebesgue_continuous, KernelKind, QuadratureSpec,
    SearchResult, SearchSpec,
};
use crate::report::fmt_f64;
use crate::{Error, Result};

pub const CSV_HEADER: &str = "kind,m,n,lambda,p,computed,main_term,residual,remainder_scale,ratio";

/// Default per-axis size cap for sweeps.
pub const DEFAULT_MAX_SIZE: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepKind {
    Continuous,
    Discrete,
    Lc,
    FNorm,
    ScriptF,
    Delta1,
    Delta2,
}

impl SweepKind {
    pub const ALL: [SweepKind; 7] = [
        SweepKind::Continuous,
        SweepKind::Discrete,
        SweepKind::Lc,
        SweepKind::FNorm,
        SweepKind::ScriptF,
        SweepKind::Delta1,
        SweepKind::Delta2,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SweepKind::Continuous => "continuous",
            SweepKind::Discrete => "discrete",
            SweepKind::Lc => "lc",
            SweepKind::FNorm => "fnorm",
            SweepKind::ScriptF => "scriptf",
            SweepKind::Delta1 => "delta1",
            SweepKind::Delta2 => "delta2",
        }
    }
}

impl fmt::Display for SweepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SweepKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        SweepKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown sweep kind `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub kind: SweepKind,
    pub m: usize,
    pub n: usize,
    pub lambda: usize,
    pub p: usize,
    pub computed: f64,
    pub main_term: f64,
    pub residual: f64,
    pub remainder_scale: f64,
    pub ratio: f64,
    /// Relative change of `computed` under one refinement step (finer quadrature
    /// or the last search round). Not part of the CSV.
    pub self_convergence: f64,
}

impl SweepRecord {
    fn new(kind: SweepKind, m: usize, n: usize, computed: f64, main_term: f64, scale: f64) -> Self {
        let (lambda, p) = if n > 0 { (n / m, n % m) } else { (0, 0) };
        let residual = computed - main_term;
        let ratio = if scale > 0.0 {
            residual.abs() / scale
        } else {
            f64::NAN
        };
        Self {
            kind,
            m,
            n,
            lambda,
            p,
            computed,
            main_term,
            residual,
            remainder_scale: scale,
            ratio,
            self_convergence: 0.0,
        }
    }

    pub fn write_csv_row<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{}",
            self.kind,
            self.m,
            self.n,
            self.lambda,
            self.p,
            fmt_f64(self.computed),
            fmt_f64(self.main_term),
            fmt_f64(self.residual),
            fmt_f64(self.remainder_scale),
            fmt_f64(self.ratio)
        )
    }
}

pub fn write_csv<W: Write>(records: &[SweepRecord], mut w: W) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in records {
        r.write_csv_row(&mut w)?;
    }
    Ok(())
}

fn check_regime(m: usize, n: usize) -> Result<()> {
    if m < 3 || m > n {
        return Err(Error::OutOfRegime { m, n });
    }
    Ok(())
}

/// `G(m, n) = 2 ln m ln n − ln²m`.
pub fn growth(m: usize, n: usize) -> f64 {
    let (lm, ln) = ((m as f64).ln(), (n as f64).ln());
    2.0 * lm * ln - lm * lm
}

/// Leading term of the computed quantity for `kind`.
///
/// For `delta1` and `delta2` only `m` is used; `fnorm` and `scriptf` have no
/// known main term and return 0.
pub fn main_term(kind: SweepKind, m: usize, n: usize) -> Result<f64> {
    let pi2 = PI * PI;
    Ok(match kind {
        SweepKind::Continuous => {
            check_regime(m, n)?;
            16.0 / (pi2 * pi2) * growth(m, n)
        }
        SweepKind::Lc => {
            check_regime(m, n)?;
            4.0 / pi2 * growth(m, n)
        }
        SweepKind::Discrete => {
            check_regime(m, n)?;
            2.0 / pi2 * growth(m, n)
        }
        SweepKind::Delta1 => {
            check_regime(m, m)?;
            8.0 / pi2 * (m as f64).ln().powi(2)
        }
        SweepKind::Delta2 => {
            check_regime(m, m)?;
            16.0 / PI * (m as f64).ln()
        }
        SweepKind::FNorm | SweepKind::ScriptF => 0.0,
    })
}

/// `ln n + p ln(m/p)` with `n = λm + p`, reducing to `ln n` when `p = 0`.
pub fn remainder_scale(m: usize, n: usize) -> Result<f64> {
    check_regime(m, n)?;
    let p = n % m;
    let ln = (n as f64).ln();
    Ok(if p == 0 {
        ln
    } else {
        ln + p as f64 * (m as f64 / p as f64).ln()
    })
}

/// The sharper of the two bounds on `‖𝓕_mp‖` (and `‖F_mn‖` with `p = n mod m`):
/// `p ln(m/p)` when `1 ≤ p < m`, otherwise `ln²m`.
pub fn f_bound_scale(m: usize, p: usize) -> f64 {
    let log2 = (m as f64).ln().powi(2);
    if p >= 1 && p < m {
        (p as f64 * (m as f64 / p as f64).ln()).min(log2)
    } else {
        log2
    }
}

/// Scale against which the residual of `kind` is measured.
pub fn kind_scale(kind: SweepKind, m: usize, n: usize) -> Result<f64> {
    match kind {
        SweepKind::Continuous | SweepKind::Discrete | SweepKind::Lc => remainder_scale(m, n),
        SweepKind::Delta1 => {
            check_regime(m, m)?;
            Ok((m as f64).ln())
        }
        SweepKind::Delta2 => {
            check_regime(m, m)?;
            Ok(1.0)
        }
        SweepKind::FNorm => Ok(f_bound_scale(m, n % m)),
        SweepKind::ScriptF => Ok(f_bound_scale(m, n)),
    }
}

/// `(8/π²) ln n ln m`, the leading term of `Λ^LC_mn` when `ln n / ln m` is large.
pub fn two_regime_term(m: usize, n: usize) -> f64 {
    8.0 / (PI * PI) * (n as f64).ln() * (m as f64).ln()
}

/// `ln n + ln²m`, the remainder scale of [`two_regime_term`].
pub fn two_regime_scale(m: usize, n: usize) -> f64 {
    (n as f64).ln() + (m as f64).ln().powi(2)
}

/// Re-expresses an `lc` record against the two-regime term.
pub fn two_regime_record(lc: &SweepRecord) -> SweepRecord {
    let mut r = SweepRecord::new(
        SweepKind::Lc,
        lc.m,
        lc.n,
        lc.computed,
        two_regime_term(lc.m, lc.n),
        two_regime_scale(lc.m, lc.n),
    );
    r.self_convergence = lc.self_convergence;
    r
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub quad: QuadratureSpec,
    /// Search parameters for `discrete` and `lc`; `None` picks
    /// [`SearchSpec::for_degrees`] per size.
    pub search: Option<SearchSpec>,
    pub max_size: usize,
    pub variant: FVariant,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            quad: QuadratureSpec::default(),
            search: None,
            max_size: DEFAULT_MAX_SIZE,
            variant: FVariant::default(),
        }
    }
}

fn relative_change(coarse: f64, fine: f64) -> f64 {
    if fine == 0.0 {
        0.0
    } else {
        (fine - coarse).abs() / fine.abs()
    }
}

fn norm_with_convergence(
    kind: KernelKind,
    m: usize,
    n: usize,
    quad: &QuadratureSpec,
) -> Result<(f64, f64)> {
    let v = kernel_l1_norm(kind, m, n, quad)?;
    let fine = kernel_l1_norm(kind, m, n, &quad.refined())?;
    Ok((v, relative_change(v, fine)))
}

fn from_search(r: SearchResult) -> (f64, f64) {
    (r.value, r.last_round_change())
}

/// Computes one record. For `scriptf` the pair is `(m, p)`; for `delta1` and
/// `delta2` the second entry is ignored and set to `m`.
pub fn compute_record(
    kind: SweepKind,
    m: usize,
    n: usize,
    cfg: &SweepConfig,
) -> Result<SweepRecord> {
    let n = match kind {
        SweepKind::Delta1 | SweepKind::Delta2 => m,
        _ => n,
    };
    let main = main_term(kind, m, n)?;
    let scale = kind_scale(kind, m, n)?;
    let search = cfg.search.unwrap_or_else(|| SearchSpec::for_degrees(m, n));
    let (computed, conv) = match kind {
        SweepKind::Continuous => {
            let v = lebesgue_continuous(m, n, &cfg.quad)?;
            let fine = lebesgue_continuous(m, n, &cfg.quad.refined())?;
            (v, relative_change(v, fine))
        }
        SweepKind::Discrete => from_search(lebesgue_constant_discrete(m, n, &search)?),
        SweepKind::Lc => {
            let nodes = build_nodes(DegreePair::coprime(m, n)?)?;
            from_search(lebesgue_constant_lc(&nodes, &search)?)
        }
        SweepKind::FNorm => norm_with_convergence(KernelKind::F(cfg.variant), m, n, &cfg.quad)?,
        SweepKind::ScriptF => norm_with_convergence(KernelKind::ScriptF, m, n, &cfg.quad)?,
        SweepKind::Delta1 => norm_with_convergence(KernelKind::Delta1, m, m, &cfg.quad)?,
        SweepKind::Delta2 => norm_with_convergence(KernelKind::Delta2, m, m, &cfg.quad)?,
    };
    let mut rec = SweepRecord::new(kind, m, n, computed, main, scale);
    if kind == SweepKind::ScriptF {
        rec.lambda = 0;
        rec.p = n;
    }
    rec.self_convergence = conv;
    Ok(rec)
}

/// One record per size, in input order. Sizes above `cfg.max_size` are refused
/// before anything is computed.
pub fn sweep(
    kind: SweepKind,
    sizes: &[(usize, usize)],
    cfg: &SweepConfig,
) -> Result<Vec<SweepRecord>> {
    if let Some(&(m, n)) = sizes.iter().find(|&&(m, n)| m.max(n) > cfg.max_size) {
        return Err(Error::SizeCapExceeded {
            size: m.max(n),
            cap: cfg.max_size,
        });
    }
    sizes
        .par_iter()
        .map(|&(m, n)| compute_record(kind, m, n, cfg))
        .collect()
}

/// `‖F_mn‖_{L(T²)}` against `min(ln²m, p ln(m/p))`, `p = n mod m`.
pub fn fnorm_check(
    m: usize,
    n: usize,
    variant: FVariant,
    quad: &QuadratureSpec,
) -> Result<SweepRecord> {
    let cfg = SweepConfig {
        quad: *quad,
        variant,
        ..SweepConfig::default()
    };
    compute_record(SweepKind::FNorm, m, n, &cfg)
}

/// `‖𝓕_mp‖_{L(T)}` against `p ln(m/p)` for `1 ≤ p < m`, else `ln²m`.
pub fn scriptf_check(m: usize, p: usize, quad: &QuadratureSpec) -> Result<SweepRecord> {
    let cfg = SweepConfig {
        quad: *quad,
        ..SweepConfig::default()
    };
    compute_record(SweepKind::ScriptF, m, p, &cfg)
}

/// Largest factor `max(a/b, b/a)` between consecutive ratios. Infinite if a
/// ratio is zero next to a nonzero one, NaN if any ratio is not finite.
pub fn max_ratio_variation(records: &[SweepRecord]) -> f64 {
    let ratios: Vec<f64> = records.iter().map(|r| r.ratio).collect();
    max_variation(&ratios)
}

pub fn max_variation(values: &[f64]) -> f64 {
    let mut worst: f64 = 1.0;
    for w in values.windows(2) {
        let (a, b) = (w[0], w[1]);
        if !a.is_finite() || !b.is_finite() {
            return f64::NAN;
        }
        let v = if a == b {
            1.0
        } else if a == 0.0 || b == 0.0 {
            f64::INFINITY
        } else {
            (a / b).max(b / a)
        };
        worst = worst.max(v);
    }
    worst
}

/// Whether consecutive ratios vary by less than `factor`.
pub fn ratio_stable(records: &[SweepRecord], factor: f64) -> bool {
    max_ratio_variation(records) < factor
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn main_term_examples() {
        let n = 17;
        let l = (n as f64).ln();
        let c = main_term(SweepKind::Continuous, n, n).unwrap();
        assert!((c - 16.0 / PI.powi(4) * l * l).abs() < 1e-12);
        for (m, n) in [(3, 3), (3, 100), (8, 9), (50, 51)] {
            let lm = (m as f64).ln();
            assert!(growth(m, n) >= lm * lm - 1e-12);
        }
        assert!(matches!(
            main_term(SweepKind::Lc, 2, 5),
            Err(Error::OutOfRegime { .. })
        ));
        assert!(matches!(
            main_term(SweepKind::Lc, 6, 5),
            Err(Error::OutOfRegime { .. })
        ));
        assert_eq!(main_term(SweepKind::FNorm, 4, 9).unwrap(), 0.0);
    }

    #[test]
    fn padua_leading_term() {
        let m = 1_000_000usize;
        let t = main_term(SweepKind::Lc, m, m + 1).unwrap();
        let lead = 4.0 / (PI * PI) * (m as f64).ln().powi(2);
        assert!((t - lead).abs() / lead < 1e-6);
    }

    #[test]
    fn remainder_scale_examples() {
        assert_eq!(remainder_scale(8, 24).unwrap(), 24f64.ln());
        assert!((remainder_scale(8, 9).unwrap() - (9f64.ln() + 8f64.ln())).abs() < 1e-15);
        let want = 31f64.ln() + 15.0 * (16.0f64 / 15.0).ln();
        assert!((remainder_scale(16, 31).unwrap() - want).abs() < 1e-14);
        assert!(remainder_scale(2, 3).is_err());
    }

    #[test]
    fn f_bound_branches() {
        assert_eq!(f_bound_scale(32, 32), 32f64.ln().powi(2));
        assert_eq!(f_bound_scale(32, 0), 32f64.ln().powi(2));
        assert!((f_bound_scale(32, 2) - 2.0 * 16f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn record_fields() {
        let r = SweepRecord::new(SweepKind::Discrete, 8, 19, 3.0, 2.0, 4.0);
        assert_eq!((r.lambda, r.p), (2, 3));
        assert_eq!(r.residual, 1.0);
        assert_eq!(r.ratio, 0.25);
        let mut out = Vec::new();
        write_csv(&[r], &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert!(lines.next().unwrap().starts_with("discrete,8,19,2,3,"));
    }

    #[test]
    fn cap_is_enforced() {
        let cfg = SweepConfig {
            max_size: 10,
            ..SweepConfig::default()
        };
        let err = sweep(SweepKind::Continuous, &[(3, 4), (8, 11)], &cfg).unwrap_err();
        assert_eq!(err, Error::SizeCapExceeded { size: 11, cap: 10 });
    }

    #[test]
    fn variation() {
        assert_eq!(max_variation(&[1.0, 1.5, 0.75]), 2.0);
        assert_eq!(max_variation(&[0.0, 0.0]), 1.0);
        assert!(max_variation(&[0.0, 1.0]).is_infinite());
        assert!(max_variation(&[1.0, f64::NAN]).is_nan());
        assert_eq!(max_variation(&[2.0]), 1.0);
    }

    #[test]
    fn kind_names_round_trip() {
        for k in SweepKind::ALL {
            assert_eq!(k.as_str().parse::<SweepKind>().unwrap(), k);
        }
        assert!("padua".parse::<SweepKind>().is_err());
    }

    #[test]
    fn fnorm_zero_when_divisible() {
        let r = fnorm_check(4, 12, FVariant::Minus, &QuadratureSpec::default()).unwrap();
        assert_eq!(r.computed, 0.0);
        let r = scriptf_check(8, 0, &QuadratureSpec::default()).unwrap();
        assert_eq!(r.computed, 0.0);
    }
}
