//! Simultaneous (Aberth) iteration with residual-disk certification.
//!
//! Every returned root carries a radius `r` such that the closed disk of
//! radius `r` around its value contains exactly one true root. Radii come
//! from the inclusion `|w − z| ≤ d·|f(z)|/|f'(z)|` with rounding errors of
//! the evaluation folded in; uniqueness follows from pairwise disjointness of
//! the `d` disks.

use std::cmp::Ordering;

use num_complex::Complex64;

use super::IntPolynomial;
use crate::{Error, Result};

const MAX_ITERATIONS: usize = 5000;

/// A certified approximation of one root.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ApproxRoot {
    pub value: Complex64,
    pub radius: f64,
    pub is_real: bool,
}

impl ApproxRoot {
    pub fn modulus(&self) -> f64 {
        self.value.norm()
    }

    /// Interval guaranteed to contain the modulus of the true root.
    pub fn modulus_bounds(&self) -> (f64, f64) {
        let m = self.modulus();
        ((m - self.radius).max(0.0), m + self.radius)
    }

    pub fn re(&self) -> f64 {
        self.value.re
    }

    pub fn im(&self) -> f64 {
        self.value.im
    }

    /// Whether the certified disks of `self` and `other` intersect.
    pub fn overlaps(&self, other: &ApproxRoot) -> bool {
        (self.value - other.value).norm() <= self.radius + other.radius
    }

    pub fn contains(&self, z: Complex64, slack: f64) -> bool {
        (self.value - z).norm() <= self.radius + slack
    }
}

/// All roots of a squarefree polynomial, certified.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjugateSet {
    pub poly: IntPolynomial,
    /// Sorted by descending modulus, then descending real part, then
    /// descending imaginary part.
    pub roots: Vec<ApproxRoot>,
    /// Index of the real root whose modulus strictly exceeds every other
    /// modulus, when that can be certified from the disks alone.
    pub dominant_index: Option<usize>,
}

impl ConjugateSet {
    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn dominant(&self) -> Option<&ApproxRoot> {
        self.dominant_index.map(|i| &self.roots[i])
    }

    /// Index of the largest real root.
    pub fn largest_real(&self) -> Option<usize> {
        self.roots
            .iter()
            .enumerate()
            .filter(|(_, r)| r.is_real)
            .max_by(|a, b| a.1.re().partial_cmp(&b.1.re()).unwrap_or(Ordering::Equal))
            .map(|(i, _)| i)
    }

    pub fn real_count(&self) -> usize {
        self.roots.iter().filter(|r| r.is_real).count()
    }

    /// Index of the root whose certified disk contains `z`, if exactly one
    /// does.
    pub fn locate(&self, z: Complex64, slack: f64) -> Option<usize> {
        let hits: Vec<usize> = self
            .roots
            .iter()
            .enumerate()
            .filter(|(_, r)| r.contains(z, slack))
            .map(|(i, _)| i)
            .collect();
        (hits.len() == 1).then(|| hits[0])
    }
}

/// Computes certified approximations of all roots of `poly`.
///
/// `tol` is the relative step size at which iteration stops; the returned
/// radii are usually much smaller than `tol·|z|`.
pub fn roots(poly: &IntPolynomial, tol: f64) -> Result<ConjugateSet> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    if !poly.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    match solve(poly, tol) {
        Ok(set) => Ok(set),
        Err(_) => solve(poly, tol / 100.0),
    }
}

fn solve(poly: &IntPolynomial, tol: f64) -> Result<ConjugateSet> {
    let d = poly.degree();
    let values = if d == 1 {
        vec![Complex64::new(-(poly.coeffs()[0] as f64), 0.0)]
    } else {
        aberth(poly, tol)?
    };
    let mut certified = Vec::with_capacity(d);
    for z in values {
        let z = polish(poly, z);
        let ev = poly.eval_with_bounds(z);
        let num = ev.value.norm() + ev.value_err;
        let den = ev.derivative.norm() - ev.derivative_err;
        if den <= 0.0 || !num.is_finite() {
            return Err(Error::NoConvergence(format!("cannot certify root near {z}")));
        }
        certified.push(ApproxRoot {
            value: z,
            radius: d as f64 * num / den,
            is_real: false,
        });
    }
    for i in 0..d {
        for j in i + 1..d {
            if certified[i].overlaps(&certified[j]) {
                return Err(Error::NoConvergence(format!(
                    "root disks around {} and {} overlap",
                    certified[i].value, certified[j].value
                )));
            }
        }
    }
    classify_real(&mut certified)?;
    certified.sort_by(root_order);
    check_vieta(poly, &certified, tol)?;
    let dominant_index = dominant(&certified);
    Ok(ConjugateSet {
        poly: poly.clone(),
        roots: certified,
        dominant_index,
    })
}

fn aberth(poly: &IntPolynomial, tol: f64) -> Result<Vec<Complex64>> {
    let d = poly.degree();
    let max_coeff = poly
        .coeffs()
        .iter()
        .take(d)
        .map(|c| (*c as f64).abs())
        .fold(0.0, f64::max);
    let radius = 1.0 + max_coeff;
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / d as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();
    let step_tol = tol.max(4.0 * f64::EPSILON);
    for _ in 0..MAX_ITERATIONS {
        let mut converged = true;
        for k in 0..d {
            let f = poly.eval_complex(z[k]);
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            let df = derivative_at(poly, z[k]);
            let newton = f / df;
            let repulsion: Complex64 = (0..d)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let w = newton / (Complex64::new(1.0, 0.0) - newton * repulsion);
            if !w.is_finite() {
                return Err(Error::NoConvergence("non-finite Aberth correction".into()));
            }
            z[k] -= w;
            if w.norm() > step_tol * z[k].norm().max(1.0) {
                converged = false;
            }
        }
        if converged {
            return Ok(z);
        }
    }
    Err(Error::NoConvergence(format!(
        "Aberth iteration exceeded {MAX_ITERATIONS} sweeps"
    )))
}

fn derivative_at(poly: &IntPolynomial, z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, &c) in poly.coeffs().iter().enumerate().skip(1).rev() {
        acc = acc * z + (c as f64) * i as f64;
    }
    acc
}

/// A few guarded Newton steps: a step is kept only if the residual shrinks.
fn polish(poly: &IntPolynomial, mut z: Complex64) -> Complex64 {
    let mut res = poly.eval_complex(z).norm();
    for _ in 0..3 {
        let df = derivative_at(poly, z);
        if df.norm() == 0.0 {
            break;
        }
        let cand = z - poly.eval_complex(z) / df;
        let cres = poly.eval_complex(cand).norm();
        if cand.is_finite() && cres < res {
            z = cand;
            res = cres;
        } else {
            break;
        }
    }
    z
}

/// Decides realness of every disk. A disk that meets the real axis holds a
/// real root exactly when its mirror image misses every other disk: a
/// non-real root would put its conjugate in the mirror disk, which cannot be
/// the same disk (one root per disk) and so must meet another one.
fn classify_real(roots: &mut [ApproxRoot]) -> Result<()> {
    let n = roots.len();
    for k in 0..n {
        let r = roots[k];
        if r.im().abs() > r.radius {
            continue;
        }
        let mirror = ApproxRoot {
            value: r.value.conj(),
            ..r
        };
        if (0..n).any(|j| j != k && mirror.overlaps(&roots[j])) {
            return Err(Error::NoConvergence(format!(
                "cannot decide whether the root near {} is real",
                r.value
            )));
        }
        roots[k].is_real = true;
        roots[k].value = Complex64::new(r.re(), 0.0);
    }
    // pair the non-real roots and symmetrize each pair
    let mut paired = vec![false; n];
    for k in 0..n {
        if roots[k].is_real || paired[k] {
            continue;
        }
        let target = roots[k].value.conj();
        let partner = (0..n).find(|&j| {
            j != k
                && !roots[j].is_real
                && !paired[j]
                && (roots[j].value - target).norm() <= roots[k].radius + roots[j].radius
        });
        let Some(j) = partner else {
            return Err(Error::NoConvergence(format!(
                "no conjugate partner for the root near {}",
                roots[k].value
            )));
        };
        paired[k] = true;
        paired[j] = true;
        let center = (roots[k].value + roots[j].value.conj()) * 0.5;
        let radius = roots[k].radius.max(roots[j].radius);
        roots[k].value = center;
        roots[k].radius = radius;
        roots[j].value = center.conj();
        roots[j].radius = radius;
    }
    Ok(())
}

/// Moduli are compared after rounding to ten significant digits so that
/// conjugates of exactly equal modulus sort by real part.
fn quantized_modulus(r: &ApproxRoot) -> f64 {
    let m = r.modulus();
    if m == 0.0 {
        return 0.0;
    }
    let scale = 10f64.powi(m.log10().floor() as i32 - 9);
    (m / scale).round() * scale
}

fn root_order(a: &ApproxRoot, b: &ApproxRoot) -> Ordering {
    quantized_modulus(b)
        .partial_cmp(&quantized_modulus(a))
        .unwrap_or(Ordering::Equal)
        .then(b.re().partial_cmp(&a.re()).unwrap_or(Ordering::Equal))
        .then(b.im().partial_cmp(&a.im()).unwrap_or(Ordering::Equal))
}

fn check_vieta(poly: &IntPolynomial, roots: &[ApproxRoot], tol: f64) -> Result<()> {
    let d = poly.degree();
    let sum: Complex64 = roots.iter().map(|r| r.value).sum();
    let expected = -(poly.coeffs()[d - 1] as f64);
    let scale: f64 = roots.iter().map(|r| r.modulus()).sum::<f64>().max(1.0);
    if (sum - expected).norm() > d as f64 * tol.max(1e-12) * scale {
        return Err(Error::NoConvergence(format!(
            "root sum {sum} disagrees with {expected}"
        )));
    }
    Ok(())
}

fn dominant(roots: &[ApproxRoot]) -> Option<usize> {
    let top = roots.first()?;
    if !top.is_real || top.re() <= 0.0 {
        return None;
    }
    let (lo, _) = top.modulus_bounds();
    roots[1..]
        .iter()
        .all(|r| r.modulus_bounds().1 < lo)
        .then_some(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    #[test]
    fn golden_ratio() {
        let set = roots(&parse_poly("-1,-1,1").unwrap(), 1e-10).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((set.roots[0].re() - phi).abs() < 1e-12);
        assert!((set.roots[1].re() + 1.0 / phi).abs() < 1e-12);
        assert!(set.roots.iter().all(|r| r.is_real));
        assert_eq!(set.dominant_index, Some(0));
    }

    #[test]
    fn linear() {
        let set = roots(&parse_poly("-5,1").unwrap(), 1e-10).unwrap();
        assert_eq!(set.roots[0].value, Complex64::new(5.0, 0.0));
        assert!(set.roots[0].is_real);
    }

    #[test]
    fn rejects_repeated_roots() {
        assert_eq!(roots(&parse_poly("1,-2,1").unwrap(), 1e-10), Err(Error::NotSquarefree));
    }

    #[test]
    fn cube_root_of_two() {
        let set = roots(&parse_poly("-2,0,0,1").unwrap(), 1e-10).unwrap();
        assert_eq!(set.real_count(), 1);
        assert!((set.roots[0].re() - 2f64.cbrt()).abs() < 1e-12);
        assert!(set.roots[1].im() > 0.0 && set.roots[2].im() < 0.0);
    }
}
