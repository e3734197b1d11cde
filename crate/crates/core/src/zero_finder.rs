//! Zero ordinates as sign changes of `Z(t)`, refined by bisection, and the
//! catalog that the Titchmarsh count is checked against.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::counting::{n_riemann_von_mangoldt, Definition};
use crate::error::{Error, Result};
use crate::exec;
use crate::export::{quantize, quantize_down, quantize_up};
use crate::hardy_z::z_value;
use crate::special::EvalConfig;
use crate::theta::theta_exact;

/// Final bracket width of [`refine_zero`]. Bisection stops a little short so
/// that widening the endpoints to 15 significant digits keeps the width
/// within this bound.
pub const BRACKET_WIDTH: f64 = 1e-9;
pub const DEFAULT_SCAN_STEP: f64 = 0.05;
pub const SCAN_RETRIES: u32 = 3;
const GRAM_TOL: f64 = 1e-10;
/// `theta` is increasing from here on.
const GRAM_FLOOR: f64 = 7.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    /// 1-based position in the ordered list of ordinates; 0 until catalogued.
    pub index: usize,
    pub gamma: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub z_residual: f64,
    pub assumed_multiplicity: u32,
}

/// Zero ordinates in `(t_lo, t_hi]`, with `count_before = N(t_lo)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroCatalog {
    pub t_lo: f64,
    pub t_hi: f64,
    pub count_before: i64,
    pub records: Vec<ZeroRecord>,
}

impl ZeroCatalog {
    pub fn gammas(&self) -> impl Iterator<Item = f64> + '_ {
        self.records.iter().map(|r| r.gamma)
    }

    /// True when the catalog knows every ordinate in `(0, t]`.
    pub fn covers_prefix(&self, t: f64) -> bool {
        self.count_before == 0 && t <= self.t_hi
    }

    pub fn require_prefix(&self, t: f64) -> Result<()> {
        if self.covers_prefix(t) {
            Ok(())
        } else {
            Err(Error::CatalogGap {
                lo: self.t_lo,
                hi: self.t_hi,
                base: self.count_before,
                requested: t,
            })
        }
    }

    /// Titchmarsh count `#{gamma <= t}` from the catalog, when `t` is inside
    /// the covered range (or below it with nothing before).
    pub fn count_upto(&self, t: f64) -> Option<i64> {
        if t > self.t_hi || (t < self.t_lo && self.count_before != 0) {
            return None;
        }
        let below = self.records.partition_point(|r| r.gamma <= t);
        Some(self.count_before + below as i64)
    }

    /// Distance from `t` to the closest catalogued ordinate.
    pub fn nearest_distance(&self, t: f64) -> f64 {
        let i = self.records.partition_point(|r| r.gamma < t);
        let after = self.records.get(i).map(|r| r.gamma - t);
        let before = i.checked_sub(1).map(|j| t - self.records[j].gamma);
        match (before, after) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => f64::INFINITY,
        }
    }
}

/// Shrinks a sign-change bracket of `Z` by bisection until its width is at
/// most `width`. Returns the final bracket; if `Z` vanishes exactly at a
/// midpoint both ends collapse onto it.
pub(crate) fn bisect_sign_change(
    mut lo: f64,
    mut hi: f64,
    z_lo: f64,
    width: f64,
    cfg: &EvalConfig,
) -> Result<(f64, f64)> {
    let lo_sign = z_lo.signum();
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let z_mid = z_value(mid, cfg)?;
        if z_mid == 0.0 {
            return Ok((mid, mid));
        }
        if z_mid.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

/// Refines a sign change of `Z` on `[lo, hi]` to a bracket of width at most
/// [`BRACKET_WIDTH`]. All fields are rounded to 15 significant digits (the
/// bracket outward), so exported records read back bit-for-bit.
pub fn refine_zero(lo: f64, hi: f64, cfg: &EvalConfig) -> Result<ZeroRecord> {
    if !(lo < hi && lo.is_finite() && hi.is_finite()) {
        return Err(Error::Bracket { lo, hi });
    }
    let z_lo = z_value(lo, cfg)?;
    let z_hi = z_value(hi, cfg)?;
    if !(z_lo * z_hi < 0.0) {
        return Err(Error::Bracket { lo, hi });
    }
    let (a, b) = bisect_sign_change(lo, hi, z_lo, 0.9 * BRACKET_WIDTH, cfg)?;
    let gamma = quantize(0.5 * (a + b));
    let (bracket_lo, bracket_hi) = if a == b {
        (gamma, gamma)
    } else {
        (quantize_down(a), quantize_up(b))
    };
    Ok(ZeroRecord {
        index: 0,
        gamma,
        bracket_lo,
        bracket_hi,
        z_residual: quantize(z_value(gamma, cfg)?.abs()),
        assumed_multiplicity: 1,
    })
}

fn validate_scan(t_lo: f64, t_hi: f64, step: f64) -> Result<()> {
    if !(t_lo > 0.0 && t_lo < t_hi && t_hi.is_finite()) {
        return Err(Error::Domain(format!("scan range needs 0 < t_lo < t_hi, got ({t_lo}, {t_hi}]")));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::Domain(format!("scan step must be positive, got {step}")));
    }
    Ok(())
}

/// Grid `t_lo, t_lo + step, ...` closed off by `t_hi`. Points are computed
/// from their index so repeated scans see identical abscissae.
fn grid(t_lo: f64, t_hi: f64, step: f64) -> Vec<f64> {
    let n = ((t_hi - t_lo) / step).ceil() as usize;
    let mut pts: Vec<f64> = (0..n).map(|i| t_lo + i as f64 * step).filter(|&t| t < t_hi).collect();
    pts.push(t_hi);
    pts
}

fn scan_once(t_lo: f64, t_hi: f64, step: f64, cfg: &EvalConfig) -> Result<Vec<ZeroRecord>> {
    let pts = grid(t_lo, t_hi, step);
    let zs = exec::try_map(&pts, |&t| z_value(t, cfg))?;
    let brackets: Vec<(f64, f64)> = pts
        .windows(2)
        .zip(zs.windows(2))
        .filter(|(_, z)| z[0] * z[1] < 0.0)
        .map(|(t, _)| (t[0], t[1]))
        .collect();
    exec::try_map(&brackets, |&(a, b)| refine_zero(a, b, cfg))
}

/// Locates every ordinate in `(t_lo, t_hi]` by sign changes of `Z` on a grid.
///
/// The number found must equal `N(t_hi) - N(t_lo)` from the Riemann-von
/// Mangoldt formula; otherwise the grid is refined fourfold, up to
/// [`SCAN_RETRIES`] times, before failing with [`Error::MissedZero`].
pub fn scan_zeros(t_lo: f64, t_hi: f64, step: f64, cfg: &EvalConfig) -> Result<ZeroCatalog> {
    validate_scan(t_lo, t_hi, step)?;
    let count_before = n_riemann_von_mangoldt(t_lo, Definition::Titchmarsh, cfg)?.n_int;
    let count_after = n_riemann_von_mangoldt(t_hi, Definition::Titchmarsh, cfg)?.n_int;
    let expected = count_after - count_before;

    let mut found = 0;
    let mut step = step;
    for _ in 0..=SCAN_RETRIES {
        let mut records = scan_once(t_lo, t_hi, step, cfg)?;
        found = records.len();
        if found as i64 == expected {
            for (i, r) in records.iter_mut().enumerate() {
                r.index = (count_before + 1) as usize + i;
            }
            debug_assert!(records.windows(2).all(|w| w[0].gamma < w[1].gamma));
            return Ok(ZeroCatalog {
                t_lo,
                t_hi,
                count_before,
                records,
            });
        }
        step *= 0.25;
    }
    Err(Error::MissedZero {
        lo: t_lo,
        hi: t_hi,
        found,
        expected,
    })
}

/// The Gram point `g_n > 7` with `theta(g_n) = n pi`, for `n >= -1`.
pub fn gram_point(n: i64) -> Result<f64> {
    if n < -1 {
        return Err(Error::Domain(format!("gram_point needs n >= -1, got {n}")));
    }
    let target = n as f64 * PI;
    let mut lo = GRAM_FLOOR;
    let mut hi = 2.0 * GRAM_FLOOR;
    while theta_exact(hi) < target {
        lo = hi;
        hi *= 2.0;
    }
    loop {
        let mid = 0.5 * (lo + hi);
        let value = theta_exact(mid) - target;
        if value.abs() <= GRAM_TOL || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        if value < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn refine_first_three_zeros() {
        let cfg = EvalConfig::default();
        let expected = [
            (14.1, 14.2, 14.134_725_141_734_694),
            (21.0, 21.1, 21.022_039_638_771_555),
            (25.0, 25.1, 25.010_857_580_145_689),
        ];
        for (lo, hi, gamma) in expected {
            let r = refine_zero(lo, hi, &cfg).unwrap();
            assert_abs_diff_eq!(r.gamma, gamma, epsilon = 1e-8);
            assert!(r.bracket_hi - r.bracket_lo <= BRACKET_WIDTH);
            let (za, zb) = (z_value(r.bracket_lo, &cfg).unwrap(), z_value(r.bracket_hi, &cfg).unwrap());
            assert!(za * zb < 0.0);
            assert!(r.z_residual < 1e-8);
            assert_eq!(r.assumed_multiplicity, 1);
        }
    }

    #[test]
    fn refine_rejects_non_brackets() {
        let cfg = EvalConfig::default();
        assert!(matches!(refine_zero(15.0, 16.0, &cfg), Err(Error::Bracket { .. })));
        assert!(matches!(refine_zero(16.0, 15.0, &cfg), Err(Error::Bracket { .. })));
    }

    #[test]
    fn scan_finds_first_zeros() {
        let cfg = EvalConfig::default();
        let cat = scan_zeros(1.0, 30.0, 0.05, &cfg).unwrap();
        let gammas: Vec<f64> = cat.gammas().collect();
        assert_eq!(gammas.len(), 3);
        for (g, want) in gammas.iter().zip([14.134725, 21.022039, 25.010857]) {
            assert_abs_diff_eq!(*g, want, epsilon = 1e-6);
        }
        assert_eq!(cat.records.iter().map(|r| r.index).collect::<Vec<_>>(), vec![1, 2, 3]);
        assert!(scan_zeros(1.0, 14.0, 0.05, &cfg).unwrap().records.is_empty());
    }

    #[test]
    fn scan_validates_arguments() {
        let cfg = EvalConfig::default();
        assert!(scan_zeros(0.0, 10.0, 0.05, &cfg).is_err());
        assert!(scan_zeros(10.0, 5.0, 0.05, &cfg).is_err());
        assert!(scan_zeros(1.0, 5.0, 0.0, &cfg).is_err());
    }

    #[test]
    fn grid_ends_at_upper_limit() {
        let g = grid(1.0, 2.0, 0.3);
        assert_eq!(g, vec![1.0, 1.0 + 0.3, 1.0 + 2.0 * 0.3, 1.0 + 3.0 * 0.3, 2.0]);
        assert_eq!(*grid(1.0, 30.0, 0.05).last().unwrap(), 30.0);
    }

    #[test]
    fn catalog_queries() {
        let rec = |index, gamma| ZeroRecord {
            index,
            gamma,
            bracket_lo: gamma,
            bracket_hi: gamma,
            z_residual: 0.0,
            assumed_multiplicity: 1,
        };
        let cat = ZeroCatalog {
            t_lo: 1.0,
            t_hi: 30.0,
            count_before: 0,
            records: vec![rec(1, 14.0), rec(2, 21.0), rec(3, 25.0)],
        };
        assert_eq!(cat.count_upto(0.5), Some(0));
        assert_eq!(cat.count_upto(14.0), Some(1));
        assert_eq!(cat.count_upto(29.0), Some(3));
        assert_eq!(cat.count_upto(31.0), None);
        assert_eq!(cat.nearest_distance(20.0), 1.0);
        assert_eq!(cat.nearest_distance(10.0), 4.0);
        assert!(cat.covers_prefix(30.0));
        assert!(matches!(cat.require_prefix(31.0), Err(Error::CatalogGap { .. })));
    }

    #[test]
    fn gram_points() {
        // mpmath: theta(g) = 0 and theta(g) = -pi.
        assert_abs_diff_eq!(gram_point(0).unwrap(), 17.845_599_540_410_86, epsilon = 1e-9);
        assert_abs_diff_eq!(gram_point(-1).unwrap(), 9.666_908_056_130_192, epsilon = 1e-9);
        let gs: Vec<f64> = (0..=100).map(|n| gram_point(n).unwrap()).collect();
        assert!(gs.windows(2).all(|w| w[1] > w[0]));
        for (n, g) in gs.iter().enumerate() {
            assert!((theta_exact(*g) - n as f64 * PI).abs() <= 1e-10);
        }
        assert!(gram_point(-2).is_err());
    }
}
