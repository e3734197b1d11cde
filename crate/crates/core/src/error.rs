use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole at {re} + {im}i")]
    Pole { re: f64, im: f64 },

    #[error("error bound {bound:e} exceeds target {target:e} at {re} + {im}i")]
    Accuracy {
        re: f64,
        im: f64,
        bound: f64,
        target: f64,
    },

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("no convergence: {0}")]
    Convergence(String),

    #[error("|zeta| = {modulus:e} at {re} + {im}i is too close to a zero")]
    NearZero { re: f64, im: f64, modulus: f64 },

    #[error("T = {t} lies within {radius:e} of a zero ordinate; use one-sided limits")]
    NearOrdinate { t: f64, radius: f64 },

    #[error("argument tracking needed more than {levels} step halvings near {re} + {im}i")]
    StepLimit { re: f64, im: f64, levels: u32 },

    #[error("N(T) = {n_raw} at T = {t} is {residual:e} away from an integer")]
    Integrality { t: f64, n_raw: f64, residual: f64 },

    #[error("Z({lo}) and Z({hi}) do not bracket a sign change")]
    Bracket { lo: f64, hi: f64 },

    #[error("scan of ({lo}, {hi}] found {found} sign changes but N(T) predicts {expected}")]
    MissedZero {
        lo: f64,
        hi: f64,
        found: usize,
        expected: i64,
    },

    #[error("zero catalog covers ({lo}, {hi}] from index {base}, which does not contain the request up to {requested}")]
    CatalogGap {
        lo: f64,
        hi: f64,
        base: i64,
        requested: f64,
    },
}
