use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid degree {0}: degrees must be positive")]
    InvalidDegree(usize),

    #[error("degrees ({m}, {n}) are not coprime (gcd = {gcd})")]
    NotCoprime { m: usize, n: usize, gcd: usize },

    #[error("argument {0} lies outside [-1, 1]")]
    Domain(f64),

    #[error("({k}, {l}) is not a node index of LC_{m},{n}")]
    UnknownNode {
        k: usize,
        l: usize,
        m: usize,
        n: usize,
    },

    #[error("samples do not match the node set: {0}")]
    SampleMismatch(String),

    #[error("y = {y} hits the excluded point -2π·{nu} of the truncated R kernel")]
    SingularPoint { y: f64, nu: i64 },

    #[error("degenerate search specification: {0}")]
    DegenerateSearch(String),

    #[error("degenerate quadrature specification: {0}")]
    DegenerateQuadrature(String),

    #[error("(m, n) = ({m}, {n}) is outside the asymptotic regime 3 <= m <= n")]
    OutOfRegime { m: usize, n: usize },

    #[error(
        "size {size} exceeds the desk-scale cap {cap}; raise the cap explicitly if the run time is acceptable"
    )]
    SizeCapExceeded { size: usize, cap: usize },

    #[error("ratio is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("periodicity check failed: |L(x + π/m, y) - L(x, y)| = {0:e}")]
    PeriodicityViolated(f64),
}
