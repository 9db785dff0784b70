//! Convex polygons invariant under multiplication by a complex number `t`,
//! and the side-count bound `M ≥ 2π/(3η)`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::{Error, Result};

/// Absolute tolerance on cross products, applied after scaling the
/// polygon to unit size.
pub const HULL_TOL: f64 = 1e-9;

/// A complex multiplier `t` with `Im t > 0`, `Re t > 0` and `|t| ≤ 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Multiplier {
    t: Complex64,
}

impl Multiplier {
    /// Conjugates `t` when `Im t < 0`; rejects real, left-half-plane and
    /// expanding multipliers.
    pub fn new(t: Complex64) -> Result<Self> {
        if !(t.re.is_finite() && t.im.is_finite()) {
            return Err(Error::InvalidMultiplier(format!("{t} is not finite")));
        }
        if t.im == 0.0 {
            return Err(Error::InvalidMultiplier(format!("{t} is real")));
        }
        if t.re <= 0.0 {
            return Err(Error::InvalidMultiplier(format!("Re {t} is not positive")));
        }
        if t.norm() > 1.0 {
            return Err(Error::InvalidMultiplier(format!("|{t}| exceeds 1")));
        }
        Ok(Multiplier {
            t: if t.im < 0.0 { t.conj() } else { t },
        })
    }

    pub fn from_polar(r: f64, theta: f64) -> Result<Self> {
        Multiplier::new(Complex64::from_polar(r, theta))
    }

    pub fn value(&self) -> Complex64 {
        self.t
    }

    pub fn powi(&self, k: i32) -> Result<Self> {
        Multiplier::new(self.t.powi(k))
    }
}

/// `η = |atan((1 − Re t)/Im t)|`.
pub fn eta_of(t: &Multiplier) -> f64 {
    let t = t.value();
    ((1.0 - t.re) / t.im).atan().abs()
}

/// Outcome of [`min_sides_bound`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SideBound {
    /// `2π/(3η)` for `0 < η ≤ 1`.
    Bound(f64),
    /// `η > 1`: no bound follows.
    Inapplicable,
    /// `η = 0`: the bound would be infinite.
    Degenerate,
}

impl SideBound {
    pub fn value(&self) -> Option<f64> {
        match self {
            SideBound::Bound(b) => Some(*b),
            _ => None,
        }
    }
}

pub fn min_sides_bound(t: &Multiplier) -> SideBound {
    side_bound_for_eta(eta_of(t))
}

pub fn side_bound_for_eta(eta: f64) -> SideBound {
    if eta == 0.0 {
        SideBound::Degenerate
    } else if eta <= 1.0 {
        SideBound::Bound(2.0 * PI / (3.0 * eta))
    } else {
        SideBound::Inapplicable
    }
}

/// A convex polygon with counter-clockwise vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    pub vertices: Vec<Complex64>,
    pub contains_origin: bool,
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

fn dot(a: Complex64, b: Complex64) -> f64 {
    a.re * b.re + a.im * b.im
}

impl Polygon {
    pub fn sides(&self) -> usize {
        self.vertices.len()
    }

    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| cross(self.vertices[i], self.vertices[(i + 1) % n]))
            .sum::<f64>()
            / 2.0
    }

    /// Largest vertex modulus; the natural length scale for tolerances.
    pub fn scale(&self) -> f64 {
        self.vertices.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Whether `z` lies inside or on the polygon, with cross products
    /// allowed to be `-tol·scale²`.
    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        let s = self.scale().max(z.norm()).max(f64::MIN_POSITIVE);
        let n = self.vertices.len();
        (0..n).all(|i| {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            cross(b - a, z - a) >= -tol * s * s
        })
    }

    /// Distance from the origin to the nearest edge line, or zero when the
    /// origin is not strictly inside.
    pub fn inradius_at_origin(&self) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let a = self.vertices[i];
                let b = self.vertices[(i + 1) % n];
                cross(b - a, -a) / (b - a).norm()
            })
            .fold(f64::INFINITY, f64::min)
            .max(0.0)
    }
}

/// Convex hull by the monotone chain, dropping vertices within
/// [`HULL_TOL`] (relative to the squared scale) of collinear.
pub fn convex_hull(points: &[Complex64]) -> Result<Polygon> {
    let mut pts: Vec<Complex64> = points.to_vec();
    if pts.iter().any(|p| !(p.re.is_finite() && p.im.is_finite())) {
        return Err(Error::InvalidArgument("non-finite hull point".into()));
    }
    let s = pts.iter().map(|p| p.norm()).fold(0.0, f64::max);
    if s == 0.0 {
        return Err(Error::TooFewPoints);
    }
    let tol = HULL_TOL * s * s;
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup_by(|a, b| (*a - *b).norm() <= HULL_TOL * s);
    if pts.len() < 3 {
        return Err(Error::TooFewPoints);
    }
    let mut hull: Vec<Complex64> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Complex64>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                if cross(b - a, p - a) <= tol {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        hull.pop();
    }
    if hull.len() < 3 {
        return Err(Error::TooFewPoints);
    }
    let mut poly = Polygon {
        vertices: hull,
        contains_origin: false,
    };
    if poly.area() <= tol {
        return Err(Error::TooFewPoints);
    }
    poly.contains_origin = poly.contains(Complex64::new(0.0, 0.0), HULL_TOL);
    Ok(poly)
}

/// Whether every vertex of `t·P` lies in `P`.
pub fn is_invariant(p: &Polygon, t: &Multiplier) -> bool {
    p.vertices
        .iter()
        .all(|&v| p.contains(t.value() * v, HULL_TOL))
}

/// Hull of `{0} ∪ {tᵏ z₀ : 0 ≤ k < max_terms}`, truncated once the orbit
/// falls strictly inside the hull, and certified invariant.
pub fn hull_orbit_polygon(z0: Complex64, t: &Multiplier, max_terms: usize) -> Result<Polygon> {
    if z0.norm() == 0.0 || !(z0.re.is_finite() && z0.im.is_finite()) {
        return Err(Error::TooFewPoints);
    }
    let tv = t.value();
    let mut pts = vec![Complex64::new(0.0, 0.0)];
    let mut z = z0;
    let floor = HULL_TOL * z0.norm();
    let mut next_check = 16;
    for k in 0..max_terms {
        pts.push(z);
        z *= tv;
        if z.norm() <= floor {
            break;
        }
        if k + 1 == next_check {
            next_check *= 2;
            if let Ok(h) = convex_hull(&pts) {
                if z.norm() < h.inradius_at_origin() {
                    break;
                }
            }
        }
    }
    let hull = convex_hull(&pts)?;
    if !is_invariant(&hull, t) {
        return Err(Error::NotInvariant(format!(
            "orbit hull with {} terms is not t-invariant; raise the term limit",
            pts.len() - 1
        )));
    }
    Ok(hull)
}

/// Per-vertex quantities of the polygon proof and the outcome of each
/// claim.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexClaimReport {
    pub eta: f64,
    pub sides: usize,
    /// `l_j = |OP_j|`.
    pub lengths: Vec<f64>,
    /// `φ_j = ∠P_j O P_{j+1}`.
    pub phi: Vec<f64>,
    /// `β_j = ∠O P_j P_{j+1}`.
    pub beta: Vec<f64>,
    /// Indices with `φ_j ≥ η`; the rest have `φ_j < η`.
    pub set_a: Vec<usize>,
    pub telescoping_product: f64,
    pub claim5_grid_points: usize,
    /// `M·η`, at least `2π/3` whenever `η ≤ 1`.
    pub m_eta: f64,
}

/// Tolerance for the angle and ratio inequalities.
const CLAIM_TOL: f64 = 1e-9;

fn violated(claim: &str, detail: String) -> Error {
    Error::ClaimViolated {
        claim: claim.to_string(),
        detail,
    }
}

/// Computes `β_j`, `φ_j`, `l_j` and checks Claims 1–5 of the side-count
/// argument on a `t`-invariant polygon with the origin strictly inside.
pub fn claim_check(p: &Polygon, t: &Multiplier) -> Result<ConvexClaimReport> {
    if !is_invariant(p, t) {
        return Err(Error::NotInvariant("claim check needs tP ⊂ P".into()));
    }
    if p.inradius_at_origin() <= HULL_TOL * p.scale() {
        return Err(Error::InvalidArgument(
            "origin must lie strictly inside the polygon".into(),
        ));
    }
    let eta = eta_of(t);
    let m = p.sides();
    let v = &p.vertices;
    let mut lengths = Vec::with_capacity(m);
    let mut phi = Vec::with_capacity(m);
    let mut beta = Vec::with_capacity(m);
    for j in 0..m {
        let a = v[j];
        let b = v[(j + 1) % m];
        lengths.push(a.norm());
        phi.push(cross(a, b).atan2(dot(a, b)));
        let (u, w) = (-a, b - a);
        beta.push(cross(u, w).abs().atan2(dot(u, w)));
    }
    let mut set_a = Vec::new();
    let mut product = 1.0;
    for j in 0..m {
        let ratio = lengths[(j + 1) % m] / lengths[j];
        product *= ratio;
        if beta[j] < FRAC_PI_2 - eta - CLAIM_TOL {
            return Err(violated("Claim 1", format!("β_{j} = {} < π/2 − η", beta[j])));
        }
        if phi[j] - eta >= FRAC_PI_2 {
            return Err(violated("Claim 2", format!("φ_{j} − η = {} ≥ π/2", phi[j] - eta)));
        }
        if phi[j] >= eta {
            set_a.push(j);
            let rhs = eta.cos() / (phi[j] - eta).cos();
            if ratio < rhs - CLAIM_TOL * rhs.max(1.0) {
                return Err(violated(
                    "Claim 3",
                    format!("l_{{j+1}}/l_j = {ratio} < {rhs} at j = {j}"),
                ));
            }
        } else if ratio < eta.cos() - CLAIM_TOL {
            return Err(violated(
                "Claim 4",
                format!("l_{{j+1}}/l_j = {ratio} < cos η at j = {j}"),
            ));
        }
    }
    if (product - 1.0).abs() > CLAIM_TOL {
        return Err(violated("telescoping", format!("Π l_{{j+1}}/l_j = {product}")));
    }
    let claim5_grid_points = check_claim5()?;
    let m_eta = m as f64 * eta;
    if eta <= 1.0 && m_eta < 2.0 * PI / 3.0 - CLAIM_TOL {
        return Err(violated("side bound", format!("M·η = {m_eta} < 2π/3")));
    }
    Ok(ConvexClaimReport {
        eta,
        sides: m,
        lengths,
        phi,
        beta,
        set_a,
        telescoping_product: product,
        claim5_grid_points,
        m_eta,
    })
}

/// `(1 − x)^α ≥ 1 − 2αx` on a 51 × 91 grid over `x ∈ [0, 1/2]`,
/// `α ∈ [1, 10]`.
pub fn check_claim5() -> Result<usize> {
    let mut count = 0;
    for i in 0..=50 {
        let x = i as f64 / 100.0;
        for j in 0..=90 {
            let alpha = 1.0 + j as f64 / 10.0;
            let lhs = (1.0 - x).powf(alpha);
            let rhs = 1.0 - 2.0 * alpha * x;
            if lhs < rhs - 1e-15 {
                return Err(violated("Claim 5", format!("fails at x = {x}, α = {alpha}")));
            }
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn square() -> Polygon {
        convex_hull(&[c(1.0, 1.0), c(-1.0, 1.0), c(-1.0, -1.0), c(1.0, -1.0)]).unwrap()
    }

    #[test]
    fn eta_examples() {
        let t = Multiplier::new(c(0.5, 0.5)).unwrap();
        assert!((eta_of(&t) - FRAC_PI_4).abs() < 1e-15);
        let t = Multiplier::from_polar(0.9, FRAC_PI_4).unwrap();
        assert!((eta_of(&t) - 0.519085677224).abs() < 1e-12);
        // conjugation normalizes
        let t = Multiplier::new(c(0.5, -0.5)).unwrap();
        assert_eq!(t.value(), c(0.5, 0.5));
    }

    #[test]
    fn multiplier_validation() {
        assert!(Multiplier::new(c(1.0, 0.0)).is_err());
        assert!(Multiplier::new(c(-0.1, 0.5)).is_err());
        assert!(Multiplier::new(c(0.9, 0.9)).is_err());
    }

    #[test]
    fn side_bounds() {
        let t = Multiplier::from_polar(0.9, FRAC_PI_4).unwrap();
        assert!((min_sides_bound(&t).value().unwrap() - 4.034777290703).abs() < 1e-11);
        let t = Multiplier::new(c(0.3, 0.3)).unwrap();
        assert_eq!(min_sides_bound(&t), SideBound::Inapplicable);
        assert_eq!(side_bound_for_eta(0.0), SideBound::Degenerate);
    }

    #[test]
    fn square_invariance() {
        let sq = square();
        assert_eq!(sq.sides(), 4);
        assert!(sq.contains_origin);
        assert!((sq.area() - 4.0).abs() < 1e-12);
        assert!(is_invariant(&sq, &Multiplier::from_polar(0.5, FRAC_PI_4).unwrap()));
        assert!(!is_invariant(&sq, &Multiplier::from_polar(0.9, FRAC_PI_4).unwrap()));
    }

    #[test]
    fn hull_drops_collinear_points() {
        let p = convex_hull(&[c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(0.0, 1.0)]).unwrap();
        assert_eq!(p.sides(), 3);
        assert!(p.contains_origin);
        assert_eq!(convex_hull(&[c(0.0, 0.0), c(1.0, 1.0), c(2.0, 2.0)]), Err(Error::TooFewPoints));
    }

    #[test]
    fn orbit_hulls() {
        let t = Multiplier::from_polar(0.9, FRAC_PI_4).unwrap();
        let p = hull_orbit_polygon(c(1.0, 0.0), &t, 10_000).unwrap();
        assert!(p.sides() >= 5);
        claim_check(&p, &t).unwrap();

        let t = Multiplier::from_polar(0.99, 0.1).unwrap();
        let p = hull_orbit_polygon(c(1.0, 0.0), &t, 10_000).unwrap();
        assert!(p.sides() >= 14);
        claim_check(&p, &t).unwrap();

        assert_eq!(hull_orbit_polygon(c(0.0, 0.0), &t, 100), Err(Error::TooFewPoints));
    }

    #[test]
    fn claim_five_grid_includes_equality_at_zero() {
        assert_eq!(check_claim5().unwrap(), 51 * 91);
        for j in 0..10 {
            let alpha = 1.0 + j as f64;
            assert_eq!((1.0f64 - 0.0).powf(alpha), 1.0 - 2.0 * alpha * 0.0);
        }
    }
}
