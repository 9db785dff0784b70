//! End-to-end acceptance checks. Each criterion reports pass/fail, a
//! one-line detail and its runtime against a fixed limit.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{parse_poly, IntPolynomial};
use crate::classify::analyze;
use crate::families::{
    check_observation, generate_cubic, lift, to_biperron, verify_claims, Epsilon,
};
use crate::geometry::{
    claim_check, eta_of, hull_orbit_polygon, is_invariant, min_sides_bound, Multiplier,
};
use crate::realize::{
    certify, lind_points, project_polygon, quadratic_realize, search_realization,
    trace_obstruction, IntMatrix, Realization,
};
use crate::{Error, Result, DEFAULT_TOL};

/// Seed of the geometry trials; trial `i` uses `SEED + i`.
pub const SEED: u64 = 0x5eed_2024;
pub const GEOMETRY_TRIALS: usize = 1000;
/// Entry bound for the searches behind the lattice-point round trip.
pub const ROUND_TRIP_ENTRY_BOUND: i64 = 6;

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub time_limit: Option<Duration>,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        let limit = self
            .time_limit
            .map(|l| format!(" (limit {} s)", l.as_secs()))
            .unwrap_or_default();
        format!(
            "[{}] criterion {}: {}: {} [{:.3} s{}]",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64(),
            limit
        )
    }
}

fn timed(
    id: u8,
    name: &'static str,
    limit: Option<u64>,
    body: impl FnOnce() -> Result<(bool, String)>,
) -> CriterionOutcome {
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed();
    let time_limit = limit.map(Duration::from_secs);
    let (mut passed, mut detail) = match result {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    if let Some(l) = time_limit {
        if elapsed > l {
            passed = false;
            detail.push_str(&format!("; exceeded the {} s limit", l.as_secs()));
        }
    }
    CriterionOutcome {
        id,
        name,
        passed,
        detail,
        elapsed,
        time_limit,
    }
}

pub fn run_all() -> Vec<CriterionOutcome> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
    ]
}

pub fn criterion_1() -> CriterionOutcome {
    timed(1, "negative-trace obstruction", Some(1), || {
        let f = parse_poly("-46,-15,3,1")?;
        let a = analyze(&f, DEFAULT_TOL)?;
        let obs = trace_obstruction(&f, 1)?;
        let p1 = obs.power_sums[0].clone();
        let ok = a.is_perron && p1 == BigInt::from(-3) && obs.implied_lower_bound() == 4;
        Ok((ok, format!("Perron = {}, p1 = {p1}, d_PF >= {}", a.is_perron, obs.implied_lower_bound())))
    })
}

/// Irreducible Perron `x² − ux + v` with `1 ≤ u ≤ 20`, `|v| ≤ 20`, `Δ > 0`.
pub fn quadratic_sweep() -> Vec<IntPolynomial> {
    let mut out = Vec::new();
    for u in 1i128..=20 {
        for v in -20i128..=20 {
            let disc = u * u - 4 * v;
            if disc <= 0 {
                continue;
            }
            let r = (disc as f64).sqrt().round() as i128;
            if r * r == disc {
                continue;
            }
            out.push(IntPolynomial::new(vec![v, -u, 1]).expect("monic"));
        }
    }
    out
}

pub fn criterion_2() -> CriterionOutcome {
    timed(2, "quadratic completeness", Some(5), || {
        let polys = quadratic_sweep();
        let mut failures = Vec::new();
        for f in &polys {
            let ok = quadratic_realize(f).and_then(|r| {
                Ok(r.aperiodicity_exponent >= 1
                    && r.matrix.char_poly()? == *f
                    && r.divisibility_witness == vec![1])
            });
            if !matches!(ok, Ok(true)) {
                failures.push(f.to_string());
            }
        }
        Ok((
            failures.is_empty(),
            format!("{}/{} certified{}", polys.len() - failures.len(), polys.len(), list(&failures)),
        ))
    })
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        String::new()
    } else {
        format!("; failing: {}", items.join(" "))
    }
}

/// `2π/(3·atan(kε))`.
pub fn angle_bound(k: f64, eps: f64) -> f64 {
    2.0 * PI / (3.0 * (k * eps).atan())
}

pub fn criterion_3() -> CriterionOutcome {
    timed(3, "cubic family", Some(30), || {
        let mut ok = true;
        let mut parts = Vec::new();
        for eps in ["1/2", "1/4", "1/8"] {
            let e: Epsilon = eps.parse()?;
            let fam = generate_cubic(e)?;
            let claims = verify_claims(&fam).is_ok();
            let a = analyze(&fam.f, DEFAULT_TOL)?;
            let bound = a.lower_bound().unwrap_or(0.0);
            let need = angle_bound(6.0, e.to_f64());
            ok &= claims && bound >= need;
            parts.push(format!("eps={eps}: claims {}, bound {bound:.4} >= {need:.4}", pass(claims)));
        }
        let mut ints = Vec::new();
        for eps in ["1/2", "1/16", "1/64"] {
            let fam = generate_cubic(eps.parse()?)?;
            let a = analyze(&fam.f, DEFAULT_TOL)?;
            ints.push(a.lower_bound_int().unwrap_or(0));
        }
        let increasing = ints.windows(2).all(|w| w[0] < w[1]);
        ok &= increasing;
        parts.push(format!("integer bounds over 1/2, 1/16, 1/64: {ints:?}"));
        Ok((ok, parts.join("; ")))
    })
}

fn pass(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

pub fn criterion_4() -> CriterionOutcome {
    timed(4, "bi-Perron family", Some(30), || {
        let mut ok = true;
        let mut parts = Vec::new();
        for eps in ["1/2", "1/4"] {
            let e: Epsilon = eps.parse()?;
            let fam = generate_cubic(e)?;
            let out = to_biperron(&fam)?;
            let biperron = out.analysis.is_biperron.as_ref().is_some_and(|v| v.is_biperron);
            let bound = out.analysis.lower_bound().unwrap_or(0.0);
            let need = angle_bound(16.0, e.to_f64());
            let good = out.alpha_poly.degree() <= 6
                && out.alpha_poly.is_unit()
                && out.observation_holds
                && biperron
                && bound >= need;
            ok &= good;
            parts.push(format!(
                "eps={eps}: degree {}, bi-Perron {biperron}, bound {bound:.4} >= {need:.4}",
                out.alpha_poly.degree()
            ));
        }
        let counterexample = parse_poly("-126,65,-13,1")?;
        let observation = check_observation(&counterexample)?;
        let lifted = lift(&counterexample)?;
        let lifted_biperron = lifted.analysis.is_biperron.as_ref().is_some_and(|v| v.is_biperron);
        ok &= !observation && !lifted_biperron;
        parts.push(format!(
            "counterexample: lifting hypothesis {observation}, lifted alpha bi-Perron {lifted_biperron}"
        ));
        Ok((ok, parts.join("; ")))
    })
}

/// Realizations behind the lattice-point round trip: searches over the quadratic
/// sweep plus the golden-ratio matrix.
pub fn round_trip_realizations() -> Result<Vec<Realization>> {
    let polys = quadratic_sweep();
    let found: Vec<Result<Option<Realization>>> = polys
        .par_iter()
        .map(|f| search_realization(f, 2, ROUND_TRIP_ENTRY_BOUND))
        .collect();
    let mut out = Vec::new();
    for r in found {
        if let Some(r) = r? {
            out.push(r);
        }
    }
    let golden = IntMatrix::from_rows(&[vec![0, 1], vec![1, 1]])?;
    out.push(certify(&golden, &parse_poly("-1,-1,1")?)?);
    Ok(out)
}

pub fn criterion_5() -> CriterionOutcome {
    timed(5, "lattice-point round trip", None, || {
        let reals = round_trip_realizations()?;
        let mut failures = Vec::new();
        for r in &reals {
            let ok = lind_points(r).and_then(|p| {
                Ok(p.relations_hold()? && p.projections.iter().all(|&x| x > 0.0))
            });
            if !matches!(ok, Ok(true)) {
                failures.push(r.matrix.to_string());
            }
        }
        Ok((
            failures.is_empty() && !reals.is_empty(),
            format!(
                "{}/{} realizations round-trip (search entry bound {ROUND_TRIP_ENTRY_BOUND}){}",
                reals.len() - failures.len(),
                reals.len(),
                list(&failures)
            ),
        ))
    })
}

/// Draws a multiplier with `Re t > 0`, `|t| ≤ 0.98`, `η ≤ 1` and a seed
/// point for trial `index`.
pub fn geometry_trial_inputs(index: usize) -> (Multiplier, Complex64) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED.wrapping_add(index as u64));
    loop {
        let r: f64 = rng.gen_range(0.05..=0.98);
        let theta: f64 = rng.gen_range(1e-3..PI / 2.0);
        let Ok(t) = Multiplier::from_polar(r, theta) else {
            continue;
        };
        if eta_of(&t) > 1.0 {
            continue;
        }
        let z0 = Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..2.0 * PI));
        return (t, z0);
    }
}

/// Runs one geometry trial; `Ok(None)` on success, `Ok(Some(reason))` on a
/// falsified property.
pub fn geometry_trial(index: usize) -> Result<Option<String>> {
    let (t, z0) = geometry_trial_inputs(index);
    let p = match hull_orbit_polygon(z0, &t, 100_000) {
        Ok(p) => p,
        Err(e) => return Ok(Some(format!("trial {index}: {e}"))),
    };
    if !is_invariant(&p, &t) {
        return Ok(Some(format!("trial {index}: hull not invariant")));
    }
    let bound = min_sides_bound(&t).value().unwrap_or(0.0);
    if (p.sides() as f64) < bound - 1e-9 {
        return Ok(Some(format!("trial {index}: M = {} < {bound}", p.sides())));
    }
    match claim_check(&p, &t) {
        Ok(_) => Ok(None),
        Err(Error::ClaimViolated { claim, detail }) => {
            Ok(Some(format!("trial {index}: {claim}: {detail}")))
        }
        Err(e) => Ok(Some(format!("trial {index}: {e}"))),
    }
}

pub fn criterion_6() -> CriterionOutcome {
    timed(6, "geometry oracle", Some(60), || {
        let failures: Vec<String> = (0..GEOMETRY_TRIALS)
            .into_par_iter()
            .map(geometry_trial)
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        let shown: Vec<String> = failures.iter().take(3).cloned().collect();
        Ok((
            failures.is_empty(),
            format!(
                "{}/{GEOMETRY_TRIALS} trials pass{}",
                GEOMETRY_TRIALS - failures.len(),
                list(&shown)
            ),
        ))
    })
}

/// Non-totally-real Perron cubics with a known small realization:
/// `(polynomial, size, entry bound)`.
pub const CROSS_MODULE_CASES: [(&str, usize, i64); 3] = [
    ("-2,1,-1,1", 4, 2),
    ("-2,2,-2,1", 4, 2),
    ("-1,-1,0,1", 3, 1),
];

pub fn criterion_7() -> CriterionOutcome {
    timed(7, "cross-module consistency", None, || {
        let mut ok = true;
        let mut parts = Vec::new();
        for (text, n, bound) in CROSS_MODULE_CASES {
            let f = parse_poly(text)?;
            let Some(real) = search_realization(&f, n, bound)? else {
                ok = false;
                parts.push(format!("{}: no realization at n = {n}", f.pretty()));
                continue;
            };
            let pts = lind_points(&real)?;
            let analysis = analyze(&f, DEFAULT_TOL)?;
            let index = analysis
                .conjugates
                .roots
                .iter()
                .position(|r| !r.is_real)
                .ok_or(Error::NoComplexConjugate)?;
            let proj = project_polygon(&pts, index)?;
            let size_ok = analysis.lower_bound_int().is_none_or(|b| n as u64 >= b);
            ok &= proj.consistent && proj.invariant && size_ok;
            let bound_text = proj
                .bound
                .value()
                .map(|b| format!("{b:.4}"))
                .unwrap_or_else(|| "n/a".into());
            parts.push(format!(
                "{}: n = {n}, M = {}, 2pi/(3 eta) = {bound_text}, consistent {}",
                f.pretty(),
                proj.sides,
                proj.consistent
            ));
        }
        Ok((ok, parts.join("; ")))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_size() {
        let s = quadratic_sweep();
        assert!(s.iter().all(|f| f.degree() == 2));
        assert!(s.contains(&parse_poly("-1,-1,1").unwrap()));
        assert!(!s.contains(&parse_poly("-4,0,1").unwrap()));
    }

    #[test]
    fn trial_inputs_are_reproducible() {
        assert_eq!(geometry_trial_inputs(7), geometry_trial_inputs(7));
        let (t, _) = geometry_trial_inputs(3);
        assert!(eta_of(&t) <= 1.0);
    }

    #[test]
    fn angle_bounds() {
        assert!((angle_bound(6.0, 0.5) - 1.6767961).abs() < 1e-6);
        assert!((angle_bound(6.0, 0.25) - 2.1310628).abs() < 1e-6);
        assert!((angle_bound(6.0, 0.125) - 3.2546876).abs() < 1e-6);
    }
}
