//! Numerics on the critical line of the Riemann zeta function.
//!
//! The crate evaluates Hardy's function `Z(t)`, the Riemann-Siegel phase
//! `theta(t)`, the argument `S(T)` and the zero-counting function `N(T)`,
//! locates zero ordinates by sign changes of `Z`, and checks the relation
//!
//! ```text
//! Z(t) = (-1)^(N(t) + 1) |zeta(1/2 + it)|      (t > 0, t not an ordinate)
//! ```
//!
//! together with its pairwise corollary and the parity statistics of
//! `N(gamma_n)`.
//!
//! Batch work (grid scans, sample sweeps) runs on rayon when the default
//! `parallel` feature is enabled and sequentially otherwise; results are
//! identical either way.

pub mod counting;
pub mod error;
pub mod exec;
pub mod export;
pub mod hardy_z;
pub mod special;
pub mod theta;
pub mod verification;
pub mod zero_finder;

pub use counting::{
    n_asymptotic_diagnostic, n_riemann_von_mangoldt, s_of_t, s_one_sided, CountReport, Definition,
    SelbergValue, Side,
};
pub use error::{Error, Result};
pub use hardy_z::{hardy_z, ZEvaluation};
pub use special::{chi, log_gamma, zeta, ComplexValue, EvalConfig};
pub use theta::{
    delta_correction, main_terms, psi_sawtooth, theta_asymptotic, theta_breakdown, theta_exact,
    ThetaBreakdown, ThetaMethod,
};
pub use verification::{
    corollary_parity_check, parity_statistics, verify_sign_relation, ParityStats, SignCheckRecord,
    SignReport,
};
pub use zero_finder::{gram_point, refine_zero, scan_zeros, ZeroCatalog, ZeroRecord};
