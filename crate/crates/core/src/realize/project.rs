use num_complex::Complex64;

use super::LatticePointSet;
use crate::algebra::roots;
use crate::classify;
use crate::geometry::{convex_hull, side_bound_for_eta, Polygon, SideBound, HULL_TOL};
use crate::{Error, Result, DEFAULT_TOL};

/// The slice polygon of the cone over the lattice points, seen in the
/// plane of one complex conjugate pair.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectedPolygon {
    pub polygon: Polygon,
    pub sides: usize,
    /// `t = p′/p`, normalized to `Im t > 0`.
    pub t: Complex64,
    pub eta: f64,
    pub bound: SideBound,
    /// Whether `t·𝒫 ⊂ 𝒫` holds numerically.
    pub invariant: bool,
    /// `bound ≤ M` when the bound applies, and `M ≤ n`.
    pub consistent: bool,
}

/// Projects every `zᵢ` to `σ_{p′}(zᵢ)/σ_p(zᵢ)`, where `σ` evaluates the
/// coordinate vector as a polynomial at a conjugate, and takes the hull.
///
/// `conjugate_index` indexes the roots of the field polynomial in the
/// order of [`roots`]; either member of the pair may be given.
pub fn project_polygon(pts: &LatticePointSet, conjugate_index: usize) -> Result<ProjectedPolygon> {
    let conj = roots(&pts.field_poly, DEFAULT_TOL)?;
    let delta = *conj
        .roots
        .get(conjugate_index)
        .filter(|r| !r.is_real)
        .ok_or(Error::NoComplexConjugate)?;
    let lambda = *conj.dominant().ok_or(Error::NotPerron)?;
    let delta_v = if delta.im() < 0.0 { delta.value.conj() } else { delta.value };
    let lam = lambda.re();

    let mut image = Vec::with_capacity(pts.points.len());
    for (i, z) in pts.points.iter().enumerate() {
        let mut num = Complex64::new(0.0, 0.0);
        let mut den = 0.0;
        let mut scale = 0.0;
        for &c in z.iter().rev() {
            num = num * delta_v + c as f64;
            den = den * lam + c as f64;
            scale = scale * delta_v.norm().max(lam) + (c as f64).abs();
        }
        let err = 16.0 * f64::EPSILON * scale * z.len() as f64;
        if num.norm() <= err {
            return Err(Error::DegenerateProjection(format!(
                "z_{} projects to the origin of the conjugate plane",
                i + 1
            )));
        }
        if den <= err {
            return Err(Error::DegenerateProjection(format!(
                "z_{} is not on the positive side of the dominant eigenline",
                i + 1
            )));
        }
        image.push(num / den);
    }

    let polygon = convex_hull(&image).map_err(|e| match e {
        Error::TooFewPoints => {
            Error::DegenerateProjection("projected points do not span the plane".into())
        }
        other => other,
    })?;
    let t = delta_v / lam;
    let eta = classify::eta(&lambda, &delta)?;
    // the side-count bound needs Re t > 0
    let bound = if t.re > 0.0 {
        side_bound_for_eta(eta)
    } else {
        SideBound::Inapplicable
    };
    let invariant = polygon
        .vertices
        .iter()
        .all(|&v| polygon.contains(t * v, HULL_TOL));
    let sides = polygon.sides();
    let lower_ok = match bound {
        SideBound::Bound(b) => sides as f64 >= b - 1e-9,
        _ => true,
    };
    let consistent = lower_ok && sides <= pts.points.len();
    Ok(ProjectedPolygon {
        polygon,
        sides,
        t,
        eta,
        bound,
        invariant,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::realize::{certify, lind_points, IntMatrix};

    fn cubic_points() -> LatticePointSet {
        let a = IntMatrix::from_rows(&[
            vec![0, 0, 0, 1],
            vec![0, 0, 1, 0],
            vec![1, 0, 0, 0],
            vec![0, 2, 1, 0],
        ])
        .unwrap();
        lind_points(&certify(&a, &parse_poly("-2,1,-1,1").unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn cubic_projection_is_consistent() {
        let pts = cubic_points();
        let p = project_polygon(&pts, 1).unwrap();
        assert!(p.invariant);
        assert!(p.consistent);
        assert!((p.eta - 0.9044944).abs() < 1e-6);
        assert!(p.sides >= 3 && p.sides <= 4);
        // the conjugate of index 1 gives the same polygon up to reflection
        assert_eq!(project_polygon(&pts, 2).unwrap().sides, p.sides);
    }

    #[test]
    fn real_conjugates_are_rejected() {
        let pts = cubic_points();
        assert_eq!(project_polygon(&pts, 0), Err(Error::NoComplexConjugate));
        assert_eq!(project_polygon(&pts, 9), Err(Error::NoComplexConjugate));
    }

    #[test]
    fn zero_point_is_degenerate() {
        let mut pts = cubic_points();
        pts.points[0] = vec![0, 0, 0];
        assert!(matches!(project_polygon(&pts, 1), Err(Error::DegenerateProjection(_))));
    }
}
