//! Complex log-gamma, the Riemann zeta function and the functional-equation
//! factor `chi(s)`.
//!
//! `log_gamma` uses Stirling's series after shifting the argument to
//! `Re z >= 10` with the recurrence `Gamma(z + 1) = z Gamma(z)`. Zeta uses
//! Euler-Maclaurin summation with an explicit remainder bound, which covers
//! the whole half-plane `Re s >= 0` (and a little beyond) at desk heights.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ComplexValue = Complex64;

/// Distance below which an argument is treated as sitting on a pole.
pub const POLE_EPS: f64 = 1e-14;

const LN_PI: f64 = 1.144_729_885_849_400_2;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Number of Stirling correction terms used by [`log_gamma`].
const STIRLING_TERMS: usize = 8;
/// Recurrence shift target for [`log_gamma`].
const STIRLING_SHIFT: f64 = 10.0;

/// Upper limit on the Euler-Maclaurin cut point before giving up.
const MAX_EM_CUT: usize = 1 << 24;

/// Bernoulli numbers `B_2, B_4, ..., B_32` as exact fractions.
///
/// Values are the standard ones (e.g. Abramowitz & Stegun, Table 23.2);
/// `B_32` is kept so the remainder bound is available at the maximum of 15
/// correction terms.
const BERNOULLI_FRACTIONS: [(i64, i64); 16] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
    (854513, 138),
    (-236364091, 2730),
    (8553103, 6),
    (-23749461029, 870),
    (8615841276005, 14322),
    (-7709321041217, 510),
];

const fn render_bernoulli() -> [f64; 16] {
    let mut out = [0.0; 16];
    let mut i = 0;
    while i < 16 {
        out[i] = BERNOULLI_FRACTIONS[i].0 as f64 / BERNOULLI_FRACTIONS[i].1 as f64;
        i += 1;
    }
    out
}

/// `BERNOULLI[k - 1] = B_{2k}`.
pub const BERNOULLI: [f64; 16] = render_bernoulli();

/// Accuracy knobs for [`zeta`] and everything built on it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    pub target_abs_tol: f64,
    pub euler_maclaurin_terms: usize,
    /// The series is cut at `n = max(10, series_cut_factor * |t|)`.
    pub series_cut_factor: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            target_abs_tol: 1e-12,
            euler_maclaurin_terms: 8,
            series_cut_factor: 1.0,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.target_abs_tol > 0.0 && self.target_abs_tol.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "target_abs_tol must be positive, got {}",
                self.target_abs_tol
            )));
        }
        if !(2..=15).contains(&self.euler_maclaurin_terms) {
            return Err(Error::InvalidConfig(format!(
                "euler_maclaurin_terms must lie in [2, 15], got {}",
                self.euler_maclaurin_terms
            )));
        }
        if !(self.series_cut_factor > 0.0 && self.series_cut_factor.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "series_cut_factor must be positive, got {}",
                self.series_cut_factor
            )));
        }
        Ok(())
    }
}

fn check_finite(z: ComplexValue) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("non-finite argument {z}")))
    }
}

fn check_finite_result(at: ComplexValue, v: ComplexValue) -> Result<ComplexValue> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(format!("result overflowed at {at}")))
    }
}

/// Principal branch of `log Gamma(z)`.
///
/// The branch is analytic on the plane cut along `(-inf, 0]` and real on the
/// positive axis, so the imaginary part varies continuously along any path
/// that avoids the cut.
pub fn log_gamma(z: ComplexValue) -> Result<ComplexValue> {
    check_finite(z)?;
    if z.re <= POLE_EPS && z.im.abs() < POLE_EPS {
        let nearest = z.re.round();
        if (z.re - nearest).abs() < POLE_EPS {
            return Err(Error::Pole { re: z.re, im: z.im });
        }
    }

    // log Gamma(z) = log Gamma(z + k) - sum_{j<k} log(z + j). Each principal
    // log(z + j) is cut along z in (-inf, -j], so the sum is cut exactly
    // along (-inf, 0].
    let mut shift = ComplexValue::new(0.0, 0.0);
    let mut w = z;
    while w.re < STIRLING_SHIFT {
        shift += w.ln();
        w += 1.0;
    }
    check_finite_result(z, stirling(w) - shift)
}

fn stirling(w: ComplexValue) -> ComplexValue {
    let ln_w = w.ln();
    let mut acc = (w - 0.5) * ln_w - w + HALF_LN_2PI;
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    for k in 1..=STIRLING_TERMS {
        let denom = (2 * k * (2 * k - 1)) as f64;
        acc += pow * (BERNOULLI[k - 1] / denom);
        pow *= inv2;
    }
    acc
}

/// `chi(s) = Gamma((1 - s)/2) / Gamma(s/2) * pi^(s - 1/2)`.
pub fn chi(s: ComplexValue) -> Result<ComplexValue> {
    check_finite(s)?;
    let lg_num = log_gamma((1.0 - s) * 0.5)?;
    let lg_den = log_gamma(s * 0.5)?;
    check_finite_result(s, (lg_num - lg_den + (s - 0.5) * LN_PI).exp())
}

/// Riemann zeta function by Euler-Maclaurin summation.
///
/// The remainder after `m = cfg.euler_maclaurin_terms` corrections is bounded
/// by `|s + 2m + 1| / (sigma + 2m + 1)` times the first omitted term. The cut
/// point doubles until that bound meets `cfg.target_abs_tol`.
pub fn zeta(s: ComplexValue, cfg: &EvalConfig) -> Result<ComplexValue> {
    cfg.validate()?;
    check_finite(s)?;
    if (s - 1.0).norm() < POLE_EPS {
        return Err(Error::Pole { re: s.re, im: s.im });
    }
    let m = cfg.euler_maclaurin_terms;
    if s.re + 2.0 * m as f64 + 1.0 <= 0.0 {
        return Err(Error::Domain(format!(
            "Re s = {} is outside the Euler-Maclaurin range for {m} terms",
            s.re
        )));
    }

    let mut cut = (cfg.series_cut_factor * s.im.abs()).ceil().max(10.0) as usize;
    loop {
        let (value, bound) = euler_maclaurin(s, cut, m);
        if bound <= cfg.target_abs_tol {
            return check_finite_result(s, value);
        }
        if cut >= MAX_EM_CUT {
            return Err(Error::Accuracy {
                re: s.re,
                im: s.im,
                bound,
                target: cfg.target_abs_tol,
            });
        }
        cut *= 2;
    }
}

/// Returns the Euler-Maclaurin value with cut point `n` and `m` corrections,
/// plus the remainder bound.
fn euler_maclaurin(s: ComplexValue, n: usize, m: usize) -> (ComplexValue, f64) {
    let mut head = ComplexValue::new(0.0, 0.0);
    // Sum small terms first.
    for k in (1..n).rev() {
        head += pow_neg(k as f64, s);
    }

    let nf = n as f64;
    let n_pow = pow_neg(nf, s); // n^{-s}
    let mut acc = head + n_pow * nf / (s - 1.0) + n_pow * 0.5;

    // term_k = B_{2k}/(2k)! * s(s+1)...(s+2k-2) * n^{-s-2k+1}
    let inv_n2 = 1.0 / (nf * nf);
    let mut rising = s; // s(s+1)...(s+2k-2)
    let mut factorial = 2.0; // (2k)!
    let mut n_scale = 1.0 / nf; // n^{1-2k}
    let mut next_term = ComplexValue::new(0.0, 0.0);
    for k in 1..=m + 1 {
        let term = rising * n_pow * (BERNOULLI[k - 1] / factorial * n_scale);
        if k <= m {
            acc += term;
        } else {
            next_term = term;
        }
        let kf = k as f64;
        rising *= (s + 2.0 * kf - 1.0) * (s + 2.0 * kf);
        factorial *= (2.0 * kf + 1.0) * (2.0 * kf + 2.0);
        n_scale *= inv_n2;
    }
    let mf = m as f64;
    let ratio = (s + 2.0 * mf + 1.0).norm() / (s.re + 2.0 * mf + 1.0);
    (acc, next_term.norm() * ratio)
}

/// `x^{-s}` for real `x > 0`.
#[inline]
fn pow_neg(x: f64, s: ComplexValue) -> ComplexValue {
    let ln_x = x.ln();
    let mag = (-s.re * ln_x).exp();
    let (sin, cos) = (s.im * ln_x).sin_cos();
    ComplexValue::new(mag * cos, -mag * sin)
}

/// `zeta(2) = pi^2 / 6`.
pub const ZETA_TWO: f64 = PI * PI / 6.0;
