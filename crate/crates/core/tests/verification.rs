mod common;

use common::{catalog, height_off_ordinates};
use hardy_core::verification::ordinate_counts;
use hardy_core::{
    corollary_parity_check, hardy_z, n_riemann_von_mangoldt, parity_statistics, verify_sign_relation,
    Definition, EvalConfig,
};
use rand::{rngs::StdRng, SeedableRng};

#[test]
fn sign_relation_on_a_fine_sample() {
    let cfg = EvalConfig::default();
    let rep = verify_sign_relation(catalog(), 0.1, 150.0, 1500, 1e-3, &cfg).unwrap();
    assert!(rep.pass(), "failures: {:?}", rep.failures().take(5).collect::<Vec<_>>());
    assert_eq!(rep.records.len() + rep.excluded, 1500);
    for r in &rep.records {
        assert_eq!(r.n_value, r.catalog_count);
        assert_eq!(r.n_parity as i64, r.catalog_count.rem_euclid(2));
        assert!(r.dist_to_nearest_gamma >= 1e-3);
        assert_eq!(r.agrees, r.z_sign == r.predicted_sign);
    }
}

#[test]
fn exclusion_drops_points_near_ordinates() {
    let cfg = EvalConfig::default();
    // Every 1e-4 around the first zero; the large radius removes most of them.
    let g = catalog().records[0].gamma;
    let rep = verify_sign_relation(catalog(), g - 0.01, g + 0.01, 201, 5e-3, &cfg).unwrap();
    assert!(rep.excluded > 90);
    assert!(rep.pass());
}

#[test]
fn corollary_agrees_with_individual_records() {
    let cfg = EvalConfig::default();
    let mut rng = StdRng::seed_from_u64(99);
    for _ in 0..100 {
        let t1 = height_off_ordinates(&mut rng, 0.5, 500.0, 1e-3);
        let t2 = height_off_ordinates(&mut rng, 0.5, 500.0, 1e-3);
        let predicted = |t: f64| {
            let n = n_riemann_von_mangoldt(t, Definition::Titchmarsh, &cfg).unwrap().n_int;
            let z = hardy_z(t, &cfg).unwrap();
            (z.sign(), n.rem_euclid(2))
        };
        let (s1, p1) = predicted(t1);
        let (s2, p2) = predicted(t2);
        let expected = (s1 == s2) == (p1 == p2);
        assert_eq!(corollary_parity_check(t1, t2, &cfg).unwrap(), expected);
        assert!(expected, "({t1}, {t2})");
    }
}

#[test]
fn parity_counts_equal_indices() {
    let cfg = EvalConfig::default();
    let counts = ordinate_counts(catalog(), 100.0, &cfg).unwrap();
    assert_eq!(counts, (1..=29).collect::<Vec<i64>>());
    let s = parity_statistics(catalog(), 100.0, &cfg).unwrap();
    assert_eq!((s.total, s.even_count), (29, 14));
    assert!((s.ratio.unwrap() - 14.0 / 29.0).abs() < 1e-15);
    assert!(s.floor_identity_holds());
}
