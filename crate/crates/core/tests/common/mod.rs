#![allow(dead_code)]

use std::sync::OnceLock;

use hardy_core::{scan_zeros, EvalConfig, ZeroCatalog};

pub const CATALOG_HEIGHT: f64 = 500.0;

/// Zeros in (0, 500], shared by the tests of one binary.
pub fn catalog() -> &'static ZeroCatalog {
    static CATALOG: OnceLock<ZeroCatalog> = OnceLock::new();
    CATALOG.get_or_init(|| scan_zeros(0.5, CATALOG_HEIGHT, 0.05, &EvalConfig::default()).expect("scan"))
}

/// Draws a height in `[lo, hi]` at least `gap` away from every catalogued ordinate.
pub fn height_off_ordinates<R: rand::Rng>(rng: &mut R, lo: f64, hi: f64, gap: f64) -> f64 {
    loop {
        let t = rng.gen_range(lo..=hi);
        if catalog().nearest_distance(t) >= gap {
            return t;
        }
    }
}
