use std::f64::consts::PI;

use pfdeg::algebra::roots;
use pfdeg::classify::analyze;
use pfdeg::families::{generate_cubic, to_biperron, verify_claims, Epsilon};
use proptest::prelude::*;

fn epsilon_strategy(max_den: i128) -> impl Strategy<Value = Epsilon> {
    (2..=max_den).prop_flat_map(|q| (1..=q / 2).prop_map(move |p| Epsilon::new(p, q).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn generated_cubics_satisfy_every_claim(eps in epsilon_strategy(40)) {
        let fam = generate_cubic(eps).unwrap();
        let (p, q) = (eps.num(), eps.den());
        // exact integer form of the largeness conditions
        prop_assert!(fam.b * p > q && fam.b > 2 && fam.c > 2);
        prop_assert_eq!(fam.c0, fam.a0 * fam.a0);
        prop_assert!(q * q < 2 * fam.a0 * p * q + p * p);
        let report = verify_claims(&fam).unwrap();
        prop_assert!(report.all_hold());
        prop_assert!(report.tan_eta < 6.0 * eps.to_f64());
        let a = analyze(&fam.f, 1e-10).unwrap();
        let need = 2.0 * PI / (3.0 * (6.0 * eps.to_f64()).atan());
        prop_assert!(a.lower_bound().unwrap() >= need);
    }

    #[test]
    fn biperron_sextics(q in 2i128..=12) {
        let eps = Epsilon::new(1, q).unwrap();
        let fam = generate_cubic(eps).unwrap();
        let out = to_biperron(&fam).unwrap();
        let c = out.alpha_poly.coeffs();
        prop_assert!(c[0] == 1 || c[0] == -1);
        prop_assert!(out.alpha_poly.degree() <= 6);
        let conj = roots(&out.alpha_poly, 1e-10).unwrap();
        for z in &conj.roots {
            let inv = 1.0 / z.value;
            let nearest = conj.roots.iter().map(|w| (w.value - inv).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(nearest <= 1e-7 * (1.0 + inv.norm()), "1/z missing for {}", z.value);
        }
        let verdict = out.analysis.is_biperron.as_ref().unwrap();
        prop_assert!(verdict.is_biperron);
        let need = 2.0 * PI / (3.0 * (16.0 * eps.to_f64()).atan());
        prop_assert!(out.analysis.lower_bound().unwrap() >= need);
    }
}

#[test]
fn integer_bound_grows_as_epsilon_shrinks() {
    let bound = |s: &str| {
        let fam = generate_cubic(s.parse().unwrap()).unwrap();
        analyze(&fam.f, 1e-10).unwrap().lower_bound_int().unwrap()
    };
    assert!(bound("1/16") > bound("1/2"));
    assert_eq!((bound("1/2"), bound("1/4"), bound("1/8")), (5, 9, 17));
}

#[test]
fn epsilon_outside_range_is_rejected() {
    assert!(generate_cubic(Epsilon::new(1, 1).unwrap()).is_err());
    assert!(generate_cubic("3".parse().unwrap()).is_err());
    assert!("1/0".parse::<Epsilon>().is_err());
    assert!(Epsilon::new(3, 4).is_ok());
}
