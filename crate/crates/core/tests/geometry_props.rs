use std::f64::consts::PI;

use num_complex::Complex64;
use pfdeg::geometry::{
    claim_check, convex_hull, eta_of, HULL_TOL, hull_orbit_polygon, is_invariant, min_sides_bound, Multiplier,
};
use pfdeg::verify::geometry_trial;
use proptest::prelude::*;

/// Multipliers with `Re t > 0`, `|t| ≤ 0.98` and `η ≤ 1`.
fn multiplier() -> impl Strategy<Value = Multiplier> {
    (0.55f64..=0.98, 0.01f64..PI / 2.0)
        .prop_filter_map("η ≤ 1", |(r, theta)| {
            Multiplier::from_polar(r, theta).ok().filter(|t| eta_of(t) <= 1.0)
        })
}

fn seed_point() -> impl Strategy<Value = Complex64> {
    (0.5f64..2.0, 0.0f64..2.0 * PI).prop_map(|(r, a)| Complex64::from_polar(r, a))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn orbit_hulls_are_invariant_and_large(t in multiplier(), z0 in seed_point()) {
        let p = hull_orbit_polygon(z0, &t, 100_000).unwrap();
        prop_assert!(is_invariant(&p, &t));
        let bound = min_sides_bound(&t).value().unwrap();
        prop_assert!(p.sides() as f64 >= bound - 1e-9);
    }

    #[test]
    fn invariance_passes_to_powers(t in multiplier(), z0 in seed_point()) {
        let p = hull_orbit_polygon(z0, &t, 100_000).unwrap();
        prop_assume!(is_invariant(&p, &t));
        for k in 2..=3 {
            let tk = t.value().powi(k);
            prop_assert!(p.vertices.iter().all(|&v| p.contains(tk * v, HULL_TOL)));
        }
    }

    #[test]
    fn telescoping_product_is_one(t in multiplier(), z0 in seed_point()) {
        let p = hull_orbit_polygon(z0, &t, 100_000).unwrap();
        let report = claim_check(&p, &t).unwrap();
        prop_assert!((report.telescoping_product - 1.0).abs() <= 1e-9);
        // directly from the vertex distances
        let l: Vec<f64> = p.vertices.iter().map(|v| v.norm()).collect();
        let direct: f64 = (0..l.len()).map(|j| l[(j + 1) % l.len()] / l[j]).product();
        prop_assert!((direct - 1.0).abs() <= 1e-9);
        prop_assert!(report.m_eta >= 2.0 * PI / 3.0 - 1e-9);
    }
}

#[test]
fn a_square_is_invariant_under_a_quarter_turn_shrink() {
    let square = convex_hull(&[
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, -1.0),
    ])
    .unwrap();
    let t = Multiplier::from_polar(0.9, PI / 2.0).unwrap();
    assert!(is_invariant(&square, &t));
    assert!(!is_invariant(&square, &Multiplier::from_polar(0.9, PI / 4.0).unwrap()));
}

#[test]
fn seeded_trials_are_reproducible() {
    for i in [0, 17, 999] {
        assert_eq!(geometry_trial(i).unwrap(), None);
    }
}
