//! Classification of algebraic integers and the angle lower bound on the
//! Perron-Frobenius degree.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::algebra::{modulus_tie, roots, shares_root, ApproxRoot, ConjugateSet, IntPolynomial};
use crate::{Error, Result};

/// Which reciprocal conjugate, if any, was exempted from the annulus
/// condition in [`is_biperron`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReciprocalException {
    /// The conjugate `α⁻¹` itself.
    Inverse,
    /// The conjugate `−α⁻¹`, exempted because it lies on the inner circle.
    NegatedInverse,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BiPerronVerdict {
    pub is_biperron: bool,
    pub exceptions: Vec<ReciprocalException>,
}

/// The lower bound `d_PF ≥ 2π/(3η)` for one admissible conjugate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Theorem1Bound {
    /// Index into the conjugate set of the `p′` realizing the best `η`.
    pub conjugate_index: usize,
    pub eta: f64,
    pub lower_bound: f64,
    pub lower_bound_int: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PerronAnalysis {
    pub poly: IntPolynomial,
    pub conjugates: ConjugateSet,
    pub is_perron: bool,
    pub is_totally_real: bool,
    pub is_unit: bool,
    /// `None` unless the polynomial is a unit with a real root above one.
    pub is_biperron: Option<BiPerronVerdict>,
    /// `(index, η)` for each conjugate in the upper half plane.
    pub eta_list: Vec<(usize, f64)>,
    pub bound: Option<Theorem1Bound>,
}

impl PerronAnalysis {
    pub fn best_eta(&self) -> Option<f64> {
        self.bound.map(|b| b.eta)
    }

    pub fn lower_bound(&self) -> Option<f64> {
        self.bound.map(|b| b.lower_bound)
    }

    pub fn lower_bound_int(&self) -> Option<u64> {
        self.bound.map(|b| b.lower_bound_int)
    }
}

/// Runs every classification on `poly`.
pub fn analyze(poly: &IntPolynomial, tol: f64) -> Result<PerronAnalysis> {
    let conjugates = roots(poly, tol)?;
    let is_perron = is_perron(&conjugates)?;
    let is_totally_real = is_totally_real(&conjugates)?;
    let is_unit = poly.is_unit();
    let is_biperron = match is_biperron(&conjugates) {
        Ok(v) => Some(v),
        Err(Error::NotUnit | Error::NoDominantRealRoot) => None,
        Err(e) => return Err(e),
    };
    let eta_list = eta_list(&conjugates)?;
    let bound = if is_perron {
        theorem1_bound(&conjugates)?
    } else {
        None
    };
    Ok(PerronAnalysis {
        poly: poly.clone(),
        conjugates,
        is_perron,
        is_totally_real,
        is_unit,
        is_biperron,
        eta_list,
        bound,
    })
}

/// Whether the polynomial has a real root `≥ 1` strictly exceeding the
/// modulus of every other root.
pub fn is_perron(conjugates: &ConjugateSet) -> Result<bool> {
    let f = &conjugates.poly;
    if f.degree() == 1 {
        return Ok(-f.constant_term() >= 1);
    }
    let r = match conjugates.dominant_index {
        Some(i) => i,
        None => {
            let Some(i) = largest_positive_real(conjugates) else {
                return Ok(false);
            };
            let (_, hi) = conjugates.roots[i].modulus_bounds();
            let beaten = conjugates
                .roots
                .iter()
                .enumerate()
                .any(|(j, z)| j != i && z.modulus_bounds().0 > hi);
            if beaten || modulus_tie(f, &conjugates.roots[i])? {
                return Ok(false);
            }
            return Err(Error::Indeterminate(format!(
                "cannot separate the modulus of {} from the other conjugates",
                conjugates.roots[i].value
            )));
        }
    };
    let root = &conjugates.roots[r];
    if root.re() - root.radius >= 1.0 {
        Ok(true)
    } else if root.re() + root.radius < 1.0 {
        Ok(false)
    } else if f.eval_int(1) == Some(0) {
        Ok(true)
    } else {
        Err(Error::Indeterminate("dominant root too close to 1".into()))
    }
}

fn largest_positive_real(conjugates: &ConjugateSet) -> Option<usize> {
    conjugates
        .largest_real()
        .filter(|&i| conjugates.roots[i].re() > 0.0)
}

/// The angle `η = atan((p − Re p′)/|Im p′|)`.
pub fn eta(p: &ApproxRoot, p_prime: &ApproxRoot) -> Result<f64> {
    if p_prime.is_real {
        return Err(Error::RealConjugate);
    }
    Ok(((p.re() - p_prime.re()) / p_prime.im().abs()).atan())
}

fn eta_list(conjugates: &ConjugateSet) -> Result<Vec<(usize, f64)>> {
    let Some(p) = largest_positive_real(conjugates) else {
        return Ok(Vec::new());
    };
    let p = &conjugates.roots[p];
    conjugates
        .roots
        .iter()
        .enumerate()
        .filter(|(_, z)| !z.is_real && z.im() > 0.0)
        .map(|(i, z)| Ok((i, eta(p, z)?)))
        .collect()
}

/// The best lower bound over all conjugate pairs with `η ≤ 1`, or `None`
/// when every conjugate is real or every `η` exceeds one.
pub fn theorem1_bound(conjugates: &ConjugateSet) -> Result<Option<Theorem1Bound>> {
    if !is_perron(conjugates)? {
        return Err(Error::NotPerron);
    }
    let best = eta_list(conjugates)?
        .into_iter()
        .filter(|&(_, e)| e <= 1.0)
        .min_by(|a, b| a.1.total_cmp(&b.1));
    Ok(best.map(|(i, e)| bound_from_eta(i, e)))
}

fn bound_from_eta(conjugate_index: usize, eta: f64) -> Theorem1Bound {
    let lower_bound = 2.0 * PI / (3.0 * eta);
    Theorem1Bound {
        conjugate_index,
        eta,
        lower_bound,
        lower_bound_int: lower_bound.ceil() as u64,
    }
}

/// Whether the largest real root `α > 1` of a unit polynomial has all other
/// conjugates strictly inside `1/α < |z| < α`, except for the conjugates
/// `±α⁻¹`, which are permitted and recorded.
pub fn is_biperron(conjugates: &ConjugateSet) -> Result<BiPerronVerdict> {
    let f = &conjugates.poly;
    if !f.is_unit() {
        return Err(Error::NotUnit);
    }
    let ai = conjugates
        .largest_real()
        .filter(|&i| conjugates.roots[i].re() - conjugates.roots[i].radius > 1.0)
        .ok_or(Error::NoDominantRealRoot)?;
    let alpha = conjugates.roots[ai];
    let a = alpha.re();
    let inv_slack = 2.0 * alpha.radius / (a * a) + 1e-12;

    let rev = f.to_rat().reversed();
    let mut exceptions = Vec::new();
    let mut exempt = vec![ai];
    for (kind, poly, target) in [
        (ReciprocalException::Inverse, rev.clone(), 1.0 / a),
        (ReciprocalException::NegatedInverse, rev.negate_var(), -1.0 / a),
    ] {
        if f.degree() > 1 && shares_root(f, &alpha, &poly)? {
            let j = conjugates
                .locate(Complex64::new(target, 0.0), inv_slack)
                .ok_or_else(|| Error::Indeterminate(format!("cannot locate the conjugate {target}")))?;
            exceptions.push(kind);
            exempt.push(j);
        }
    }

    let (a_lo, a_hi) = alpha.modulus_bounds();
    let (inner_lo, inner_hi) = (1.0 / a_hi, 1.0 / a_lo);
    let mut is_biperron = true;
    for (j, z) in conjugates.roots.iter().enumerate() {
        if exempt.contains(&j) {
            continue;
        }
        let (lo, hi) = z.modulus_bounds();
        if hi < a_lo && lo > inner_hi {
            continue;
        }
        if lo > a_hi || hi < inner_lo {
            is_biperron = false;
            continue;
        }
        if hi >= a_lo && modulus_tie(f, &alpha)? {
            is_biperron = false;
            continue;
        }
        return Err(Error::Indeterminate(format!(
            "conjugate {} lies too close to the annulus boundary",
            z.value
        )));
    }
    Ok(BiPerronVerdict {
        is_biperron,
        exceptions,
    })
}

/// Whether every root is certified real.
pub fn is_totally_real(conjugates: &ConjugateSet) -> Result<bool> {
    Ok(conjugates.roots.iter().all(|r| r.is_real))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn set(text: &str) -> ConjugateSet {
        roots(&parse_poly(text).unwrap(), 1e-10).unwrap()
    }

    fn real(x: f64) -> ApproxRoot {
        ApproxRoot {
            value: Complex64::new(x, 0.0),
            radius: 0.0,
            is_real: true,
        }
    }

    #[test]
    fn perron_examples() {
        assert!(is_perron(&set("-1,-1,1")).unwrap());
        assert!(is_perron(&set("-46,-15,3,1")).unwrap());
        assert!(!is_perron(&set("-2,0,1")).unwrap());
        assert!(!is_perron(&set("2,1")).unwrap());
        assert!(!is_perron(&set("-2,0,0,1")).unwrap());
        assert!(is_perron(&set("-1,1")).unwrap());
    }

    #[test]
    fn eta_examples() {
        let p = ApproxRoot {
            value: Complex64::new(0.5, 0.5),
            radius: 0.0,
            is_real: false,
        };
        assert!((eta(&real(1.0), &p).unwrap() - PI / 4.0).abs() < 1e-15);
        assert_eq!(eta(&real(1.0), &real(0.5)), Err(Error::RealConjugate));

        let s = set("-2,0,0,1");
        let e = eta_list(&s).unwrap();
        assert_eq!(e.len(), 1);
        assert!((e[0].1 - PI / 3.0).abs() < 1e-9);
    }

    #[test]
    fn family_cubic_bound() {
        let b = theorem1_bound(&set("-612657,17346,-206,1")).unwrap().unwrap();
        assert!((b.eta - 0.456849349041).abs() < 1e-9);
        assert!((b.lower_bound - 4.58443271681).abs() < 1e-8);
        assert_eq!(b.lower_bound_int, 5);
        assert_eq!(theorem1_bound(&set("-46,-15,3,1")).unwrap(), None);
        assert_eq!(theorem1_bound(&set("-2,0,1")), Err(Error::NotPerron));
    }

    #[test]
    fn biperron_examples() {
        let v = is_biperron(&set("1,-3,1")).unwrap();
        assert!(v.is_biperron);
        assert_eq!(v.exceptions, vec![ReciprocalException::Inverse]);
        let v = is_biperron(&set("-1,-1,1")).unwrap();
        assert!(v.is_biperron);
        assert_eq!(v.exceptions, vec![ReciprocalException::NegatedInverse]);
        // reciprocal lift of the Perron root of (x−5)[(x−4)²+9]−1
        let v = is_biperron(&set("1,-13,68,-152,68,-13,1")).unwrap();
        assert!(!v.is_biperron);
        assert_eq!(is_biperron(&set("-2,0,1")), Err(Error::NotUnit));
        assert_eq!(is_biperron(&set("1,1")), Err(Error::NoDominantRealRoot));
    }

    #[test]
    fn totally_real() {
        assert!(is_totally_real(&set("-46,-15,3,1")).unwrap());
        assert!(is_totally_real(&set("-1,-1,1")).unwrap());
        assert!(!is_totally_real(&set("-2,0,0,1")).unwrap());
    }

    #[test]
    fn analysis_of_golden_ratio() {
        let a = analyze(&parse_poly("-1,-1,1").unwrap(), 1e-10).unwrap();
        assert!(a.is_perron && a.is_totally_real && a.is_unit);
        assert!(a.is_biperron.unwrap().is_biperron);
        assert!(a.eta_list.is_empty());
        assert_eq!(a.bound, None);
    }
}
