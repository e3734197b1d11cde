//! `S(T)` by continuous variation of `arg zeta` and `N(T)` from the
//! Riemann-von Mangoldt formula `N(T) = theta(T)/pi + 1 + S(T)`.
//!
//! The argument is tracked from `arg zeta(2) = 0` up the line `Re s = 2` to
//! `2 + iT`, then left to `1/2 + iT`. Each step must change the phase by less
//! than `pi/2`; steps that do not are halved. Since zeta has no zeros on the
//! path this recovers the continuous branch.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hardy_z::z_value;
use crate::special::{zeta, ComplexValue, EvalConfig};
use crate::theta::theta_exact;
use crate::zero_finder::bisect_sign_change;

/// Base step along both legs of the path.
pub const PATH_STEP: f64 = 0.25;
/// Maximum number of halvings of one base step.
pub const MAX_HALVINGS: u32 = 40;
/// `|zeta|` below this at a path node aborts the tracking.
pub const NEAR_ZERO_MODULUS: f64 = 1e-12;
/// `s_of_t` refuses heights this close to an ordinate.
pub const ORDINATE_RADIUS: f64 = 1e-6;
/// Off ordinates, `N` further than this from an integer is an error.
pub const INTEGRALITY_LIMIT: f64 = 1e-3;

const ONE_SIDED_START: f64 = 1e-4;
const ONE_SIDED_FLOOR: f64 = 1e-10;
const ONE_SIDED_AGREEMENT: f64 = 1e-6;
/// Factor applied to `eps` between one-sided samples.
const ONE_SIDED_RATIO: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Definition {
    /// `N(T)` counts ordinates `0 < gamma <= T`.
    Titchmarsh,
    /// Ordinates `< T`, averaged with the right limit when `T` is an ordinate.
    Selberg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// `N(gamma) = (N(gamma - 0) + N(gamma + 0)) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SelbergValue {
    pub value: f64,
    pub left: i64,
    pub right: i64,
}

impl SelbergValue {
    pub fn new(left: i64, right: i64) -> Self {
        Self {
            value: 0.5 * (left + right) as f64,
            left,
            right,
        }
    }

    pub fn is_half_integer(&self) -> bool {
        (self.left - self.right).rem_euclid(2) == 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    pub t: f64,
    pub theta_over_pi: f64,
    pub s_of_t: f64,
    /// `theta(T)/pi + 1 + S(T)`.
    pub n_raw: f64,
    /// Nearest integer to `n_raw`. For the Selberg definition at an ordinate
    /// this is `floor(selberg.value)`, i.e. the left limit when the jump is odd.
    pub n_int: i64,
    /// Distance of `n_raw` from the value it stands for.
    pub residual: f64,
    pub definition: Definition,
    pub near_ordinate: bool,
    /// Set only for [`Definition::Selberg`] at an ordinate.
    pub selberg: Option<SelbergValue>,
}

/// Continuous argument of zeta (radians) along the path ending at
/// `1/2 + iT`, without the ordinate-proximity check.
pub(crate) fn track_arg(t: f64, cfg: &EvalConfig) -> Result<f64> {
    let start = ComplexValue::new(2.0, 0.0);
    let corner = ComplexValue::new(2.0, t);
    let end = ComplexValue::new(0.5, t);
    let mut tracker = ArgTracker {
        cfg,
        current: zeta(start, cfg)?,
        total: 0.0,
    };
    tracker.segment(start, corner)?;
    tracker.segment(corner, end)?;
    Ok(tracker.total)
}

struct ArgTracker<'a> {
    cfg: &'a EvalConfig,
    current: ComplexValue,
    total: f64,
}

impl ArgTracker<'_> {
    fn segment(&mut self, from: ComplexValue, to: ComplexValue) -> Result<()> {
        let length = (to - from).norm();
        let steps = (length / PATH_STEP).ceil().max(1.0) as usize;
        let mut prev = from;
        for i in 1..=steps {
            let next = if i == steps {
                to
            } else {
                from + (to - from) * (i as f64 / steps as f64)
            };
            self.advance(prev, next, 0)?;
            prev = next;
        }
        Ok(())
    }

    fn advance(&mut self, from: ComplexValue, to: ComplexValue, depth: u32) -> Result<()> {
        let value = self.eval(to)?;
        let increment = (value / self.current).arg();
        if increment.abs() < FRAC_PI_2 {
            self.total += increment;
            self.current = value;
            return Ok(());
        }
        if depth >= MAX_HALVINGS {
            return Err(Error::StepLimit {
                re: to.re,
                im: to.im,
                levels: MAX_HALVINGS,
            });
        }
        let mid = (from + to) * 0.5;
        self.advance(from, mid, depth + 1)?;
        self.advance(mid, to, depth + 1)
    }

    fn eval(&self, s: ComplexValue) -> Result<ComplexValue> {
        let v = zeta(s, self.cfg)?;
        let modulus = v.norm();
        if modulus < NEAR_ZERO_MODULUS {
            return Err(Error::NearZero {
                re: s.re,
                im: s.im,
                modulus,
            });
        }
        Ok(v)
    }
}

/// Finds an ordinate within [`ORDINATE_RADIUS`] of `t` as a sign change of
/// `Z`, refined by bisection.
pub(crate) fn locate_ordinate(t: f64, cfg: &EvalConfig) -> Result<Option<f64>> {
    let lo = t - ORDINATE_RADIUS;
    let hi = t + ORDINATE_RADIUS;
    let (z_lo, z_hi) = (z_value(lo, cfg)?, z_value(hi, cfg)?);
    if z_lo == 0.0 {
        return Ok(Some(lo));
    }
    if z_hi == 0.0 {
        return Ok(Some(hi));
    }
    if z_lo.signum() == z_hi.signum() {
        return Ok(None);
    }
    let (a, b) = bisect_sign_change(lo, hi, z_lo, 1e-12, cfg)?;
    Ok(Some(0.5 * (a + b)))
}

fn check_height(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("T must be positive and finite, got {t}")))
    }
}

/// `S(T) = arg zeta(1/2 + iT) / pi` by continuous variation.
///
/// Heights within [`ORDINATE_RADIUS`] of a zero ordinate are refused with
/// [`Error::NearOrdinate`]; use [`s_one_sided`] there.
pub fn s_of_t(t: f64, cfg: &EvalConfig) -> Result<f64> {
    check_height(t)?;
    if locate_ordinate(t, cfg)?.is_some() {
        return Err(Error::NearOrdinate {
            t,
            radius: ORDINATE_RADIUS,
        });
    }
    Ok(track_arg(t, cfg)? / PI)
}

/// `S(T - 0)` or `S(T + 0)`, by evaluating at `T -/+ eps` for
/// `eps = 1e-4, 5e-5, 2.5e-5, ...` until two successive values agree to
/// `1e-6`. The last pair is extrapolated linearly to `eps = 0`.
pub fn s_one_sided(t: f64, side: Side, cfg: &EvalConfig) -> Result<f64> {
    check_height(t)?;
    let at = |eps: f64| -> Result<f64> {
        let h = match side {
            Side::Left => t - eps,
            Side::Right => t + eps,
        };
        check_height(h)?;
        Ok(track_arg(h, cfg)? / PI)
    };
    let mut eps = ONE_SIDED_START;
    let mut prev = at(eps)?;
    while eps > ONE_SIDED_FLOOR {
        eps *= ONE_SIDED_RATIO;
        let cur = at(eps)?;
        if (cur - prev).abs() <= ONE_SIDED_AGREEMENT {
            return Ok(cur + (cur - prev) * ONE_SIDED_RATIO / (1.0 - ONE_SIDED_RATIO));
        }
        prev = cur;
    }
    Err(Error::Convergence(format!(
        "one-sided S({t}{}) did not settle by eps = {ONE_SIDED_FLOOR:e}",
        match side {
            Side::Left => "-0",
            Side::Right => "+0",
        }
    )))
}

fn nearest(n_raw: f64) -> (i64, f64) {
    let n = n_raw.round();
    (n as i64, (n_raw - n).abs())
}

/// `N(T)` from the Riemann-von Mangoldt formula.
///
/// Away from ordinates both definitions agree and `n_raw` must be within
/// [`INTEGRALITY_LIMIT`] of an integer. At an ordinate the Titchmarsh count
/// uses the right limit (the zero at `T` is counted) and the Selberg count
/// is the mean of both limits, which is a half-integer across a simple zero.
pub fn n_riemann_von_mangoldt(t: f64, definition: Definition, cfg: &EvalConfig) -> Result<CountReport> {
    check_height(t)?;
    match locate_ordinate(t, cfg)? {
        None => {
            let theta_over_pi = theta_exact(t) / PI;
            let s = track_arg(t, cfg)? / PI;
            let n_raw = theta_over_pi + 1.0 + s;
            let (n_int, residual) = nearest(n_raw);
            if residual > INTEGRALITY_LIMIT {
                return Err(Error::Integrality { t, n_raw, residual });
            }
            Ok(CountReport {
                t,
                theta_over_pi,
                s_of_t: s,
                n_raw,
                n_int,
                residual,
                definition,
                near_ordinate: false,
                selberg: None,
            })
        }
        Some(gamma) => {
            let theta_over_pi = theta_exact(gamma) / PI;
            let limit = |side| -> Result<(f64, f64, i64)> {
                let s = s_one_sided(gamma, side, cfg)?;
                let n_raw = theta_over_pi + 1.0 + s;
                let (n, residual) = nearest(n_raw);
                if residual > INTEGRALITY_LIMIT {
                    return Err(Error::Integrality { t: gamma, n_raw, residual });
                }
                Ok((s, n_raw, n))
            };
            let (s_right, raw_right, n_right) = limit(Side::Right)?;
            match definition {
                Definition::Titchmarsh => Ok(CountReport {
                    t,
                    theta_over_pi,
                    s_of_t: s_right,
                    n_raw: raw_right,
                    n_int: n_right,
                    residual: (raw_right - n_right as f64).abs(),
                    definition,
                    near_ordinate: true,
                    selberg: None,
                }),
                Definition::Selberg => {
                    let (s_left, raw_left, n_left) = limit(Side::Left)?;
                    let value = SelbergValue::new(n_left, n_right);
                    let n_raw = 0.5 * (raw_left + raw_right);
                    Ok(CountReport {
                        t,
                        theta_over_pi,
                        s_of_t: 0.5 * (s_left + s_right),
                        n_raw,
                        n_int: value.value.floor() as i64,
                        residual: (n_raw - value.value).abs(),
                        definition,
                        near_ordinate: true,
                        selberg: Some(value),
                    })
                }
            }
        }
    }
}

/// `(T/2pi) log(T/2pi) - T/2pi + 7/8 + S(T)`; differs from `N(T)` by
/// `O(1/T)`.
pub fn n_asymptotic_diagnostic(t: f64, cfg: &EvalConfig) -> Result<f64> {
    if !(t >= 2.0 && t.is_finite()) {
        return Err(Error::Domain(format!("diagnostic needs T >= 2, got {t}")));
    }
    let x = t / (2.0 * PI);
    Ok(x * x.ln() - x + 0.875 + s_of_t(t, cfg)?)
}
