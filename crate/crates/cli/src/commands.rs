//! Each subcommand turns parsed inputs into its `result` object.

use num_complex::Complex64;
use pfdeg::algebra::{ApproxRoot, ConjugateSet, IntPolynomial};
use pfdeg::classify::{analyze, BiPerronVerdict, PerronAnalysis, ReciprocalException, Theorem1Bound};
use pfdeg::families::{claim_report, generate_cubic, lift, to_biperron, BiPerronLift, ClaimReport, CubicFamily, Epsilon};
use pfdeg::geometry::{
    claim_check, eta_of, hull_orbit_polygon, is_invariant, min_sides_bound, ConvexClaimReport, Multiplier,
    Polygon, SideBound,
};
use pfdeg::realize::{
    lind_points, project_polygon, quadratic_realize, search_with_limits, trace_obstruction, LatticePointSet,
    ObstructionReport, ProjectedPolygon, Realization, SearchLimits,
};
use pfdeg::verify::{run_all, CriterionOutcome};
use pfdeg::{Error, Result};
use serde_json::Value;

use crate::json::{complex, float, floats, integer, integers, object};

fn poly(p: &IntPolynomial) -> Value {
    object([
        ("coefficients", integers(p.coeffs().iter())),
        ("degree", integer(p.degree())),
        ("text", p.to_string().into()),
    ])
}

fn root(r: &ApproxRoot) -> Value {
    object([
        ("im", float(r.im())),
        ("is_real", r.is_real.into()),
        ("modulus", float(r.modulus())),
        ("radius", float(r.radius)),
        ("re", float(r.re())),
    ])
}

fn conjugates(c: &ConjugateSet) -> Value {
    Value::Array(c.roots.iter().map(root).collect())
}

fn exception(e: &ReciprocalException) -> Value {
    match e {
        ReciprocalException::Inverse => "inverse",
        ReciprocalException::NegatedInverse => "negated_inverse",
    }
    .into()
}

fn biperron(v: &Option<BiPerronVerdict>) -> Value {
    match v {
        None => Value::Null,
        Some(v) => object([
            ("exceptions", Value::Array(v.exceptions.iter().map(exception).collect())),
            ("is_biperron", v.is_biperron.into()),
        ]),
    }
}

fn theorem1(b: &Option<Theorem1Bound>) -> Value {
    match b {
        None => Value::Null,
        Some(b) => object([
            ("conjugate_index", integer(b.conjugate_index)),
            ("eta", float(b.eta)),
            ("lower_bound", float(b.lower_bound)),
            ("lower_bound_int", integer(b.lower_bound_int)),
        ]),
    }
}

fn analysis(a: &PerronAnalysis) -> Value {
    object([
        ("biperron", biperron(&a.is_biperron)),
        ("conjugates", conjugates(&a.conjugates)),
        ("dominant_index", a.conjugates.dominant_index.map_or(Value::Null, integer)),
        (
            "eta",
            Value::Array(
                a.eta_list
                    .iter()
                    .map(|&(i, e)| object([("conjugate_index", integer(i)), ("eta", float(e))]))
                    .collect(),
            ),
        ),
        ("is_perron", a.is_perron.into()),
        ("is_totally_real", a.is_totally_real.into()),
        ("is_unit", a.is_unit.into()),
        ("poly", poly(&a.poly)),
        ("theorem1", theorem1(&a.bound)),
    ])
}

fn obstruction(o: &ObstructionReport) -> Value {
    object([
        ("fires", o.fires().into()),
        ("implied_lower_bound", integer(o.implied_lower_bound())),
        ("negative_powers", integers(o.negative_powers.iter())),
        ("power_sums", integers(o.power_sums.iter())),
    ])
}

fn lift_report(l: &BiPerronLift) -> Value {
    object([
        ("alpha_poly", poly(&l.alpha_poly)),
        ("analysis", analysis(&l.analysis)),
        (
            "eta_hat",
            l.eta_hat.map_or(Value::Null, |(i, e)| {
                object([("conjugate_index", integer(i)), ("eta", float(e))])
            }),
        ),
        ("lift", poly(&l.lift)),
        ("lift_irreducible", l.lift_irreducible.into()),
        ("observation_holds", l.observation_holds.into()),
    ])
}

fn error_value(e: &Error) -> Value {
    object([("error", e.to_string().into())])
}

/// Lower bound on `d_PF` from everything known: degree, negative traces
/// and the angle bound.
fn combined_bound(a: &PerronAnalysis, obs: Option<&ObstructionReport>) -> Value {
    if !a.is_perron {
        return Value::Null;
    }
    let mut best = a.poly.degree() as u64;
    if let Some(o) = obs {
        best = best.max(o.implied_lower_bound() as u64);
    }
    if let Some(b) = a.lower_bound_int() {
        best = best.max(b);
    }
    integer(best)
}

pub fn cmd_analyze(p: &IntPolynomial, tol: f64, max_power: usize, emit_biperron: bool) -> Result<Value> {
    let a = analyze(p, tol)?;
    let obs = if a.is_perron {
        Some(trace_obstruction(p, max_power)?)
    } else {
        None
    };
    let lifted = if emit_biperron {
        Some(match lift(p) {
            Ok(l) => lift_report(&l),
            Err(e @ (Error::Indeterminate(_) | Error::BudgetExceeded(_))) => return Err(e),
            Err(e) => error_value(&e),
        })
    } else {
        None
    };
    let mut result = analysis(&a);
    let map = result.as_object_mut().expect("object");
    map.insert("obstruction".into(), obs.as_ref().map_or(Value::Null, obstruction));
    map.insert("pf_degree_lower_bound".into(), combined_bound(&a, obs.as_ref()));
    if let Some(l) = lifted {
        map.insert("biperron_lift".into(), l);
    }
    Ok(result)
}

fn claims(r: &ClaimReport) -> Value {
    object([
        ("all_hold", r.all_hold().into()),
        (
            "outcomes",
            Value::Array(
                r.outcomes
                    .iter()
                    .map(|o| {
                        object([
                            ("claim", o.claim.into()),
                            ("detail", o.detail.clone().into()),
                            ("holds", o.holds.into()),
                        ])
                    })
                    .collect(),
            ),
        ),
        ("tan_eta", float(r.tan_eta)),
        ("tan_eta_limit", float(r.tan_eta_limit)),
    ])
}

fn family(f: &CubicFamily) -> Value {
    object([
        ("a", integer(f.a)),
        ("a0", integer(f.a0)),
        ("b", integer(f.b)),
        ("b0", integer(f.b0)),
        ("biperron_poly", f.biperron_poly.as_ref().map_or(Value::Null, poly)),
        ("c", integer(f.c)),
        ("c0", integer(f.c0)),
        ("epsilon", f.epsilon.to_string().into()),
        ("eta", float(f.eta)),
        ("k", integer(f.k)),
        ("omega1", root(&f.omega1)),
        ("omega2", root(&f.omega2)),
        ("poly", poly(&f.f)),
    ])
}

pub fn cmd_family(eps: Epsilon, tol: f64, emit_biperron: bool) -> Result<Value> {
    let fam = generate_cubic(eps)?;
    let report = claim_report(&fam);
    let a = analyze(&fam.f, tol)?;
    let mut result = object([
        ("analysis", analysis(&a)),
        ("claims", claims(&report)),
        ("family", family(&fam)),
    ]);
    if emit_biperron {
        let l = to_biperron(&fam)?;
        result
            .as_object_mut()
            .expect("object")
            .insert("biperron".into(), lift_report(&l));
    }
    Ok(result)
}

fn realization(r: &Realization) -> Value {
    object([
        ("aperiodicity_exponent", integer(r.aperiodicity_exponent)),
        ("divisibility_witness", integers(r.divisibility_witness.iter())),
        ("matrix", matrix_rows(r)),
        ("size", integer(r.size())),
        ("spectral_radius", float(r.spectral_radius)),
    ])
}

fn matrix_rows(r: &Realization) -> Value {
    Value::Array(r.matrix.rows().into_iter().map(integers).collect())
}

fn lattice(p: &LatticePointSet) -> Value {
    object([
        ("points", Value::Array(p.points.iter().map(|z| integers(z.iter())).collect())),
        ("projections", floats(p.projections.iter().copied())),
    ])
}

fn side_bound(b: &SideBound) -> Value {
    match b {
        SideBound::Bound(v) => float(*v),
        SideBound::Inapplicable => "inapplicable".into(),
        SideBound::Degenerate => "degenerate".into(),
    }
}

fn vertices(p: &Polygon) -> Value {
    Value::Array(p.vertices.iter().map(|&v| complex(v)).collect())
}

fn projected(conjugate_index: usize, p: &ProjectedPolygon) -> Value {
    object([
        ("bound", side_bound(&p.bound)),
        ("conjugate_index", integer(conjugate_index)),
        ("consistent", p.consistent.into()),
        ("eta", float(p.eta)),
        ("invariant", p.invariant.into()),
        ("sides", integer(p.sides)),
        ("t", complex(p.t)),
        ("vertices", vertices(&p.polygon)),
    ])
}

pub fn cmd_realize(p: &IntPolynomial, n: usize, bound: i64, budget: u64) -> Result<Value> {
    let found = search_with_limits(p, n, SearchLimits { entry_bound: bound, budget })?;
    let quadratic = if p.degree() == 2 {
        Some(match quadratic_realize(p) {
            Ok(r) => realization(&r),
            Err(e) => error_value(&e),
        })
    } else {
        None
    };
    let mut result = object([
        ("entry_bound", integer(bound)),
        ("found", found.is_some().into()),
        ("n", integer(n)),
        ("poly", poly(p)),
    ]);
    let map = result.as_object_mut().expect("object");
    if let Some(q) = quadratic {
        map.insert("quadratic_closed_form".into(), q);
    }
    let Some(r) = found else {
        map.insert(
            "note".into(),
            format!("no realization with entries in [0, {bound}]; this says nothing about larger entries").into(),
        );
        return Ok(result);
    };
    map.insert("realization".into(), realization(&r));
    match lind_points(&r) {
        Ok(pts) => {
            let conj = pfdeg::algebra::roots(p, pfdeg::DEFAULT_TOL)?;
            let mut polygons = Vec::new();
            for (i, z) in conj.roots.iter().enumerate() {
                if z.is_real || z.im() < 0.0 {
                    continue;
                }
                polygons.push(match project_polygon(&pts, i) {
                    Ok(pp) => projected(i, &pp),
                    Err(e) => error_value(&e),
                });
            }
            map.insert("lattice_points".into(), lattice(&pts));
            map.insert("polygons".into(), Value::Array(polygons));
        }
        Err(e) => {
            map.insert("lattice_points".into(), error_value(&e));
        }
    }
    Ok(result)
}

fn convex_claims(r: &ConvexClaimReport) -> Value {
    object([
        ("beta", floats(r.beta.iter().copied())),
        ("claim5_grid_points", integer(r.claim5_grid_points)),
        ("eta", float(r.eta)),
        ("lengths", floats(r.lengths.iter().copied())),
        ("m_eta", float(r.m_eta)),
        ("phi", floats(r.phi.iter().copied())),
        ("set_a", integers(r.set_a.iter())),
        ("sides", integer(r.sides)),
        ("telescoping_product", float(r.telescoping_product)),
    ])
}

pub fn cmd_polygon(t: Complex64, z0: Complex64, terms: usize) -> Result<Value> {
    let m = Multiplier::new(t)?;
    let p = hull_orbit_polygon(z0, &m, terms)?;
    let claims = match claim_check(&p, &m) {
        Ok(r) => convex_claims(&r),
        Err(e @ Error::ClaimViolated { .. }) => return Err(e),
        Err(e) => error_value(&e),
    };
    Ok(object([
        ("area", float(p.area())),
        ("bound", side_bound(&min_sides_bound(&m))),
        ("claims", claims),
        ("eta", float(eta_of(&m))),
        ("invariant", is_invariant(&p, &m).into()),
        ("sides", integer(p.sides())),
        ("t", complex(m.value())),
        ("vertices", vertices(&p)),
    ]))
}

fn criterion(c: &CriterionOutcome) -> Value {
    object([
        ("detail", c.detail.clone().into()),
        ("elapsed_ms", float(c.elapsed.as_secs_f64() * 1e3)),
        ("id", integer(c.id)),
        ("name", c.name.into()),
        ("passed", c.passed.into()),
        ("time_limit_s", c.time_limit.map_or(Value::Null, |l| integer(l.as_secs()))),
    ])
}

/// Runs the acceptance suite; the flag is whether every criterion passed.
pub fn cmd_verify() -> (Value, bool) {
    let outcomes = run_all();
    for o in &outcomes {
        eprintln!("{}", o.line());
    }
    let all = outcomes.iter().all(|o| o.passed);
    (
        object([
            ("all_passed", all.into()),
            ("criteria", Value::Array(outcomes.iter().map(criterion).collect())),
        ]),
        all,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::json;
    use pfdeg::algebra::parse_poly;

    #[test]
    fn analyze_negative_trace_cubic() {
        let r = cmd_analyze(&parse_poly("-46,-15,3,1").unwrap(), 1e-10, 6, false).unwrap();
        assert_eq!(r["is_perron"], true);
        assert_eq!(r["is_totally_real"], true);
        assert_eq!(r["theorem1"], Value::Null);
        assert_eq!(r["obstruction"]["implied_lower_bound"], integer(4));
        assert_eq!(r["pf_degree_lower_bound"], integer(4));
    }

    #[test]
    fn analyze_golden_ratio_and_non_perron() {
        let r = cmd_analyze(&parse_poly("-1,-1,1").unwrap(), 1e-10, 4, false).unwrap();
        assert_eq!(r["biperron"]["is_biperron"], true);
        assert_eq!(r["biperron"]["exceptions"][0], "negated_inverse");
        assert_eq!(r["theorem1"], Value::Null);
        let r = cmd_analyze(&parse_poly("2,1").unwrap(), 1e-10, 2, false).unwrap();
        assert_eq!(r["is_perron"], false);
        assert_eq!(r["obstruction"], Value::Null);
    }

    #[test]
    fn family_half() {
        let r = cmd_family("1/2".parse().unwrap(), 1e-10, false).unwrap();
        assert_eq!((&r["family"]["a"], &r["family"]["b"], &r["family"]["c"]), (&integer(59), &integer(59), &integer(88)));
        assert_eq!(r["analysis"]["theorem1"]["lower_bound_int"], integer(5));
        assert_eq!(r["claims"]["all_hold"], true);
    }

    #[test]
    fn realize_golden_ratio() {
        let r = cmd_realize(&parse_poly("-1,-1,1").unwrap(), 2, 2, 1000).unwrap();
        assert_eq!(json::render(&r["realization"]["matrix"], false), "[[0,1],[1,1]]");
    }

    #[test]
    fn polygon_example() {
        let t = Complex64::from_polar(0.9, std::f64::consts::FRAC_PI_4);
        let r = cmd_polygon(t, Complex64::new(1.0, 0.0), 10_000).unwrap();
        assert_eq!(r["invariant"], true);
        assert_eq!(json::format_float(r["eta"].as_f64().unwrap()), "0.519085677224");
        assert!(r["sides"].as_u64().unwrap() >= 5);
    }
}
