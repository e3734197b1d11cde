//! The Riemann-Siegel phase `theta(t)`.
//!
//! Three routes are provided:
//!
//! * [`theta_exact`]: `Im log Gamma(1/4 + it/2) - (t/2) log pi`, the default
//!   everywhere downstream.
//! * [`main_terms`] + [`delta_correction`]: the Stirling main terms plus the
//!   correction `Delta(t)`, whose sawtooth integral is integrated in closed
//!   form one unit interval at a time.
//! * [`theta_asymptotic`]: main terms plus `1/(48t) + 7/(5760 t^3)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{log_gamma, ComplexValue};

const LN_PI: f64 = 1.144_729_885_849_400_2;

/// Absolute error target for [`delta_correction`].
pub const DELTA_TOL: f64 = 1e-10;
const DELTA_MIN_CUTOFF: f64 = 1e4;
const DELTA_MAX_CUTOFF: f64 = 1e7;
/// `max |B_3({x})| / 3!` on `[0, 1]`, i.e. `sqrt(3) / 216`.
const P3_MAX: f64 = 0.008_018_753_738_744_802;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThetaMethod {
    Exact,
    MainPlusDelta,
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaBreakdown {
    pub t: f64,
    pub main_terms: f64,
    pub delta: f64,
    pub theta_total: f64,
    pub method: ThetaMethod,
}

/// `theta(t)` on the continuous branch with `theta(0) = 0`. Odd in `t`.
pub fn theta_exact(t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let a = t.abs();
    // Re z = 1/4 never meets a pole.
    let lg = log_gamma(ComplexValue::new(0.25, 0.5 * a)).expect("log_gamma on Re z = 1/4");
    let v = lg.im - 0.5 * a * LN_PI;
    if t < 0.0 {
        -v
    } else {
        v
    }
}

/// `(t/2) log(t / 2 pi) - t/2 - pi/8`.
pub fn main_terms(t: f64) -> f64 {
    0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0
}

/// The sawtooth `psi(x) = x - floor(x) - 1/2`, taking `-1/2` at integers.
pub fn psi_sawtooth(x: f64) -> f64 {
    x - x.floor() - 0.5
}

/// `Delta(t) = theta(t) - main_terms(t)` from its integral representation
///
/// ```text
/// (t/4) log(1 + 1/(4t^2)) + (1/4) atan(1/(2t))
///     + (t/2) * int_0^inf psi(u) / ((u + 1/4)^2 + (t/2)^2) du
/// ```
///
/// On `[n, n + 1)` the integrand is `(v - c) / (v^2 + a^2)` with
/// `v = u + 1/4`, `c = n + 3/4`, `a = t/2`, which integrates exactly. The
/// tail past the cutoff `U` is `-f(U)/12` up to a remainder bounded by
/// `P3_MAX * |f'(U)|`, with `f(u) = 1/((u + 1/4)^2 + a^2)`.
pub fn delta_correction(t: f64) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("delta_correction needs t > 0, got {t}")));
    }
    let a = 0.5 * t;
    let mut cutoff = (10.0 * t).max(DELTA_MIN_CUTOFF).ceil();
    loop {
        let v = cutoff + 0.25;
        let denom = v * v + a * a;
        let df = 2.0 * v / (denom * denom);
        let bound = 0.5 * t * P3_MAX * df;
        if bound <= 0.1 * DELTA_TOL {
            break;
        }
        if cutoff >= DELTA_MAX_CUTOFF {
            return Err(Error::Convergence(format!(
                "sawtooth integral tail bound {bound:e} at cutoff {cutoff} for t = {t}"
            )));
        }
        cutoff = (2.0 * cutoff).min(DELTA_MAX_CUTOFF);
    }

    let a2 = a * a;
    let mut integral = 0.0;
    for n in (0..cutoff as u64).rev() {
        let v1 = n as f64 + 0.25;
        let v2 = v1 + 1.0;
        let c = n as f64 + 0.75;
        // 1/2 log((v2^2 + a^2)/(v1^2 + a^2)) - (c/a)(atan(v2/a) - atan(v1/a))
        let log_part = 0.5 * ((v1 + v2) / (v1 * v1 + a2)).ln_1p();
        let atan_part = c * (a / (a2 + v1 * v2)).atan() / a;
        integral += log_part - atan_part;
    }
    let v = cutoff + 0.25;
    integral -= 1.0 / (12.0 * (v * v + a2));

    let closed = 0.25 * t * (1.0 / (4.0 * t * t)).ln_1p() + 0.25 * (1.0 / (2.0 * t)).atan();
    Ok(closed + 0.5 * t * integral)
}

/// Main terms plus `1/(48t) + 7/(5760 t^3)`; remainder `O(t^-5)`.
pub fn theta_asymptotic(t: f64) -> Result<f64> {
    if !(t >= 1.0 && t.is_finite()) {
        return Err(Error::Domain(format!("theta_asymptotic needs t >= 1, got {t}")));
    }
    Ok(main_terms(t) + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t * t * t))
}

/// `theta(t)` by the requested route, with its split into main terms and
/// correction. For [`ThetaMethod::Exact`] the correction is whatever the
/// exact value leaves over the main terms.
pub fn theta_breakdown(t: f64, method: ThetaMethod) -> Result<ThetaBreakdown> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("theta_breakdown needs t > 0, got {t}")));
    }
    let main = main_terms(t);
    let (delta, total) = match method {
        ThetaMethod::Exact => {
            let total = theta_exact(t);
            (total - main, total)
        }
        ThetaMethod::MainPlusDelta => {
            let d = delta_correction(t)?;
            (d, main + d)
        }
        ThetaMethod::Asymptotic => {
            let total = theta_asymptotic(t)?;
            (total - main, total)
        }
    };
    Ok(ThetaBreakdown {
        t,
        main_terms: main,
        delta,
        theta_total: total,
        method,
    })
}
