//! Empirical checks of the sign relation `Z(t) = (-1)^(N(t)+1) |zeta(1/2+it)|`,
//! its pairwise corollary, and the parity statistics of `N(gamma_n)`.
//!
//! `N` always comes from the Riemann-von Mangoldt formula with the
//! Titchmarsh definition. The zero catalog supplies the exclusion zones and
//! an independent count, and every sample checks that the two counts agree.

use serde::{Deserialize, Serialize};

use crate::counting::{n_riemann_von_mangoldt, Definition};
use crate::error::{Error, Result};
use crate::exec;
use crate::hardy_z::hardy_z;
use crate::special::EvalConfig;
use crate::zero_finder::ZeroCatalog;

pub const DEFAULT_EXCLUSION: f64 = 1e-3;
pub const MIN_EXCLUSION: f64 = 1e-4;
/// `|Z|` at or below this is too small to carry a sign.
pub const SIGN_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignCheckRecord {
    pub t: f64,
    pub z_sign: i8,
    pub n_parity: u8,
    /// `(-1)^(N(t) + 1)`.
    pub predicted_sign: i8,
    pub agrees: bool,
    pub dist_to_nearest_gamma: f64,
    /// `N(t)` from the Riemann-von Mangoldt formula.
    pub n_value: i64,
    /// `N(t)` counted from the catalog.
    pub catalog_count: i64,
}

impl SignCheckRecord {
    pub fn catalog_consistent(&self) -> bool {
        self.n_value == self.catalog_count
    }

    pub fn passed(&self) -> bool {
        self.agrees && self.catalog_consistent()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignReport {
    pub t_lo: f64,
    pub t_hi: f64,
    pub samples: usize,
    pub exclusion: f64,
    /// Sample points dropped for lying inside the exclusion radius.
    pub excluded: usize,
    pub records: Vec<SignCheckRecord>,
}

impl SignReport {
    pub fn failures(&self) -> impl Iterator<Item = &SignCheckRecord> + '_ {
        self.records.iter().filter(|r| !r.passed())
    }

    pub fn pass(&self) -> bool {
        self.failures().next().is_none()
    }
}

fn parity(n: i64) -> u8 {
    n.rem_euclid(2) as u8
}

fn predicted_sign(n: i64) -> i8 {
    if parity(n) == 0 {
        -1
    } else {
        1
    }
}

/// `samples` evenly spaced points from `t_lo` to `t_hi` inclusive.
fn sample_points(t_lo: f64, t_hi: f64, samples: usize) -> Vec<f64> {
    if samples == 1 {
        return vec![t_lo];
    }
    let h = (t_hi - t_lo) / (samples - 1) as f64;
    (0..samples)
        .map(|i| if i + 1 == samples { t_hi } else { t_lo + i as f64 * h })
        .collect()
}

/// Checks the sign relation at `samples` evenly spaced points of
/// `[t_lo, t_hi]`, skipping points within `exclusion` of a catalogued
/// ordinate. The report fails if any record disagrees.
pub fn verify_sign_relation(
    catalog: &ZeroCatalog,
    t_lo: f64,
    t_hi: f64,
    samples: usize,
    exclusion: f64,
    cfg: &EvalConfig,
) -> Result<SignReport> {
    if !(t_lo > 0.0 && t_lo <= t_hi && t_hi.is_finite()) {
        return Err(Error::Domain(format!("need 0 < t_lo <= t_hi, got [{t_lo}, {t_hi}]")));
    }
    if samples == 0 {
        return Err(Error::Domain("samples must be at least 1".into()));
    }
    if !(exclusion >= MIN_EXCLUSION) {
        return Err(Error::Domain(format!("exclusion must be >= {MIN_EXCLUSION:e}, got {exclusion}")));
    }
    catalog.require_prefix(t_hi)?;

    let points: Vec<f64> = sample_points(t_lo, t_hi, samples)
        .into_iter()
        .filter(|&t| catalog.nearest_distance(t) >= exclusion)
        .collect();
    let excluded = samples - points.len();

    let records = exec::try_map(&points, |&t| {
        let z = hardy_z(t, cfg)?;
        let count = n_riemann_von_mangoldt(t, Definition::Titchmarsh, cfg)?;
        let predicted = predicted_sign(count.n_int);
        let z_sign = z.sign();
        Ok(SignCheckRecord {
            t,
            z_sign,
            n_parity: parity(count.n_int),
            predicted_sign: predicted,
            agrees: z_sign == predicted,
            dist_to_nearest_gamma: catalog.nearest_distance(t),
            n_value: count.n_int,
            catalog_count: catalog.count_upto(t).expect("covered prefix"),
        })
    })?;

    Ok(SignReport {
        t_lo,
        t_hi,
        samples,
        exclusion,
        excluded,
        records,
    })
}

/// True iff `Z(t1)`, `Z(t2)` have the same sign exactly when `N(t1)` and
/// `N(t2)` have the same parity.
pub fn corollary_parity_check(t1: f64, t2: f64, cfg: &EvalConfig) -> Result<bool> {
    let side = |t: f64| -> Result<(i8, i64)> {
        let z = hardy_z(t, cfg)?;
        if z.z_value.abs() <= SIGN_FLOOR {
            return Err(Error::NearZero {
                re: 0.5,
                im: t,
                modulus: z.z_value.abs(),
            });
        }
        let n = n_riemann_von_mangoldt(t, Definition::Titchmarsh, cfg)?.n_int;
        Ok((z.sign(), n))
    };
    let (s1, n1) = side(t1)?;
    let (s2, n2) = side(t2)?;
    Ok((s1 == s2) == (parity(n1) == parity(n2)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParityStats {
    pub t: f64,
    pub total: i64,
    pub even_count: i64,
    /// `even_count / total`; absent when there are no zeros up to `t`.
    pub ratio: Option<f64>,
}

impl ParityStats {
    /// Tallies the `N(gamma_n)` values of the ordinates up to `t`.
    pub fn from_counts(t: f64, counts: &[i64]) -> Self {
        let total = counts.len() as i64;
        let even_count = counts.iter().filter(|&&n| parity(n) == 0).count() as i64;
        Self {
            t,
            total,
            even_count,
            ratio: (total > 0).then(|| even_count as f64 / total as f64),
        }
    }

    /// With only simple zeros, `N(gamma_n) = n` and exactly
    /// `floor(total / 2)` of the values are even.
    pub fn floor_identity_holds(&self) -> bool {
        self.even_count == self.total.div_euclid(2)
    }
}

/// `N(gamma_n)` (Titchmarsh, so the jump at `gamma_n` is included) for every
/// catalogued ordinate up to `t`, in catalog order.
pub fn ordinate_counts(catalog: &ZeroCatalog, t: f64, cfg: &EvalConfig) -> Result<Vec<i64>> {
    catalog.require_prefix(t)?;
    let gammas: Vec<f64> = catalog.gammas().take_while(|&g| g <= t).collect();
    exec::try_map(&gammas, |&g| {
        Ok(n_riemann_von_mangoldt(g, Definition::Titchmarsh, cfg)?.n_int)
    })
}

/// How many ordinates `gamma <= t` have `N(gamma)` even.
pub fn parity_statistics(catalog: &ZeroCatalog, t: f64, cfg: &EvalConfig) -> Result<ParityStats> {
    Ok(ParityStats::from_counts(t, &ordinate_counts(catalog, t, cfg)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zero_finder::scan_zeros;

    #[test]
    fn sample_grid() {
        assert_eq!(sample_points(1.0, 2.0, 3), vec![1.0, 1.5, 2.0]);
        assert_eq!(sample_points(1.0, 2.0, 1), vec![1.0]);
    }

    #[test]
    fn parity_helpers() {
        assert_eq!(predicted_sign(0), -1);
        assert_eq!(predicted_sign(1), 1);
        assert_eq!(parity(-3), 1);
        let s = ParityStats::from_counts(30.0, &[1, 2, 3]);
        assert_eq!((s.total, s.even_count), (3, 1));
        assert!((s.ratio.unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!(s.floor_identity_holds());
        let empty = ParityStats::from_counts(10.0, &[]);
        assert_eq!(empty.ratio, None);
        assert!(empty.floor_identity_holds());
    }

    #[test]
    fn below_first_zero_everything_is_negative() {
        let cfg = EvalConfig::default();
        let cat = scan_zeros(0.05, 30.0, 0.05, &cfg).unwrap();
        let rep = verify_sign_relation(&cat, 0.1, 14.0, 50, 1e-3, &cfg).unwrap();
        assert_eq!(rep.records.len(), 50);
        assert!(rep.pass());
        assert!(rep
            .records
            .iter()
            .all(|r| r.n_parity == 0 && r.predicted_sign == -1 && r.z_sign == -1));

        let rep = verify_sign_relation(&cat, 14.2, 21.0, 50, 1e-3, &cfg).unwrap();
        assert!(rep.pass());
        assert!(rep.records.iter().all(|r| r.n_value == 1 && r.predicted_sign == 1));
    }

    #[test]
    fn verification_preconditions() {
        let cfg = EvalConfig::default();
        let cat = scan_zeros(0.05, 30.0, 0.05, &cfg).unwrap();
        assert!(matches!(
            verify_sign_relation(&cat, 0.1, 40.0, 10, 1e-3, &cfg),
            Err(Error::CatalogGap { .. })
        ));
        assert!(verify_sign_relation(&cat, 0.1, 20.0, 10, 1e-5, &cfg).is_err());
        assert!(verify_sign_relation(&cat, 0.1, 20.0, 0, 1e-3, &cfg).is_err());

        let partial = scan_zeros(20.0, 30.0, 0.05, &cfg).unwrap();
        assert!(matches!(parity_statistics(&partial, 25.0, &cfg), Err(Error::CatalogGap { .. })));
    }

    #[test]
    fn corollary_examples() {
        let cfg = EvalConfig::default();
        assert!(corollary_parity_check(5.0, 10.0, &cfg).unwrap());
        assert!(corollary_parity_check(5.0, 15.0, &cfg).unwrap());
        assert!(corollary_parity_check(17.0, 17.0, &cfg).unwrap());
        assert!(matches!(
            corollary_parity_check(14.134_725_141_734_694, 5.0, &cfg),
            Err(Error::NearZero { .. })
        ));
    }

    #[test]
    fn parity_up_to_thirty() {
        let cfg = EvalConfig::default();
        let cat = scan_zeros(0.05, 30.0, 0.05, &cfg).unwrap();
        assert_eq!(ordinate_counts(&cat, 30.0, &cfg).unwrap(), vec![1, 2, 3]);
        let s = parity_statistics(&cat, 30.0, &cfg).unwrap();
        assert_eq!((s.total, s.even_count), (3, 1));
        let s = parity_statistics(&cat, 10.0, &cfg).unwrap();
        assert_eq!((s.total, s.ratio), (0, None));
    }
}
