use pfdeg::algebra::{parse_poly, IntPolynomial};
use pfdeg::classify::analyze;
use pfdeg::realize::{
    is_aperiodic, lind_points, primitivity_exponent, quadratic_realize, search_realization,
    search_with_limits, trace_obstruction, IntMatrix, SearchLimits,
};
use pfdeg::verify::quadratic_sweep;
use pfdeg::Error;
use proptest::prelude::*;

const ROUND_TRIP_BOUND: i64 = 3;

/// Aperiodicity depends only on the support, so every matrix with
/// entries in {0, 1, 2} has the verdict of a 0/1 matrix; all supports for
/// `n ≤ 4` are covered.
#[test]
fn aperiodicity_graph_and_powering_agree_exhaustively() {
    for n in 1..=4usize {
        for mask in 0u32..(1 << (n * n)) {
            let entries: Vec<i64> = (0..n * n).map(|k| ((mask >> k) & 1) as i64).collect();
            let m = IntMatrix::new(n, entries.clone()).unwrap();
            let graph = is_aperiodic(&m);
            let power = primitivity_exponent(&m);
            assert_eq!(graph.exponent(), power, "n = {n}, mask = {mask:#x}");
            // doubling the entries keeps the support
            let doubled = IntMatrix::new(n, entries.iter().map(|e| 2 * e).collect()).unwrap();
            assert_eq!(is_aperiodic(&doubled), graph);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn aperiodicity_with_entries_up_to_two(
        (n, entries) in (1usize..=4).prop_flat_map(|n| (Just(n), prop::collection::vec(0i64..=2, n * n)))
    ) {
        let m = IntMatrix::new(n, entries).unwrap();
        prop_assert_eq!(is_aperiodic(&m).exponent(), primitivity_exponent(&m));
    }
}

#[test]
fn quadratic_closed_form_is_exact_on_the_sweep() {
    let sweep = quadratic_sweep();
    assert_eq!(sweep.len(), 625);
    for f in sweep {
        let r = quadratic_realize(&f).unwrap();
        assert_eq!(r.matrix.char_poly().unwrap(), f);
        assert!(r.matrix.entries().iter().all(|&e| e >= 0));
        assert!(is_aperiodic(&r.matrix).is_aperiodic());
    }
}

#[test]
fn search_round_trips_through_lattice_points() {
    let mut found = 0;
    for f in quadratic_sweep() {
        let Some(r) = search_realization(&f, 2, ROUND_TRIP_BOUND).unwrap() else {
            continue;
        };
        found += 1;
        let pts = lind_points(&r).unwrap();
        assert_eq!(pts.coefficients, r.matrix);
        assert!(pts.relations_hold().unwrap());
        assert!(pts.projections.iter().all(|&p| p > 0.0));
        let bound = analyze(&f, 1e-10).unwrap().lower_bound_int();
        assert!(bound.is_none_or(|b| r.size() as u64 >= b));
    }
    // independent count over all 2×2 matrices with entries in [0, 3]
    assert_eq!(found, 30);
}

fn perron_cubic() -> impl Strategy<Value = IntPolynomial> {
    cubic_with_trace_sign(-8..=8)
}

/// `x³ + c₂x² + c₁x + c₀` with `c₂` drawn from `c2`, so `p₁ = −c₂`.
fn cubic_with_trace_sign(c2: std::ops::RangeInclusive<i128>) -> impl Strategy<Value = IntPolynomial> {
    (-12i128..=12, -12i128..=12, c2)
        .prop_map(|(c0, c1, c2)| IntPolynomial::new(vec![c0, c1, c2, 1]).unwrap())
        .prop_filter("squarefree Perron", |f| {
            f.is_squarefree() && analyze(f, 1e-10).is_ok_and(|a| a.is_perron)
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn obstruction_is_sound(f in cubic_with_trace_sign(1..=6)) {
        let obs = trace_obstruction(&f, 6).unwrap();
        prop_assert!(obs.fires());
        for bound in 1..=3 {
            prop_assert_eq!(search_realization(&f, 3, bound).unwrap(), None);
        }
    }

    #[test]
    fn found_realizations_respect_the_lower_bound(f in perron_cubic(), n in 3usize..=4) {
        let entry_bound = if n == 3 { 3 } else { 1 };
        let limits = SearchLimits { entry_bound, budget: 2_000_000 };
        let r = match search_with_limits(&f, n, limits) {
            Ok(Some(r)) => r,
            Ok(None) | Err(Error::BudgetExceeded(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert!(r.matrix.char_poly().unwrap().coeffs().len() == n + 1);
        let a = analyze(&f, 1e-10).unwrap();
        prop_assert!(a.lower_bound_int().is_none_or(|b| n as u64 >= b));
        let obs = trace_obstruction(&f, 6).unwrap();
        prop_assert!(n >= obs.implied_lower_bound());
    }
}

#[test]
fn negative_trace_cubic_needs_a_fourth_dimension() {
    let f = parse_poly("-46,-15,3,1").unwrap();
    assert_eq!(trace_obstruction(&f, 1).unwrap().implied_lower_bound(), 4);
    for bound in 1..=3 {
        assert_eq!(search_realization(&f, 3, bound).unwrap(), None);
    }
}
