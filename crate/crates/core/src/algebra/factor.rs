//! Factorization of monic integer polynomials into monic irreducible
//! integer factors.
//!
//! Any monic integer factor of `f` is `Π_{i∈S}(x − zᵢ)` for a subset `S` of
//! the roots. The certified disks bound every coefficient of that product to
//! a short interval; the integers inside it are the only candidates, and each
//! candidate is confirmed or refuted by exact division. Candidates whose
//! coefficients exceed the Mignotte bound `2^d·‖f‖₂` are discarded without
//! division. Degrees ruled out by factorization patterns modulo small
//! primes are skipped, so most irreducible inputs never reach the root
//! disks at all.

use num_complex::Complex64;

use super::modular::allowed_factor_degrees;
use super::{roots, ConjugateSet, IntPolynomial};
use crate::{Error, Result, DEFAULT_TOL};

/// Highest degree accepted by [`is_irreducible`] and [`factor`].
pub const DEFAULT_DEGREE_LIMIT: usize = 8;

/// Cap on the number of integer coefficient vectors tried for one subset.
const MAX_CANDIDATES_PER_SUBSET: usize = 4096;

/// Whether `poly` has no monic integer factor of degree `1 ≤ k < d`.
pub fn is_irreducible(poly: &IntPolynomial) -> Result<bool> {
    is_irreducible_with_limit(poly, DEFAULT_DEGREE_LIMIT)
}

pub fn is_irreducible_with_limit(poly: &IntPolynomial, limit: usize) -> Result<bool> {
    let d = poly.degree();
    if d > limit {
        return Err(Error::DegreeTooLarge { degree: d, limit });
    }
    if d == 1 {
        return Ok(true);
    }
    if !poly.is_squarefree() {
        return Ok(false);
    }
    let allowed = allowed_factor_degrees(poly);
    if (1..d).all(|k| !allowed[k]) {
        return Ok(true);
    }
    let set = roots(poly, DEFAULT_TOL)?;
    Ok(smallest_factor(&set, &allowed)?.is_none())
}

/// Complete factorization into monic irreducible factors, listed with
/// multiplicity in ascending degree order.
pub fn factor(poly: &IntPolynomial) -> Result<Vec<IntPolynomial>> {
    let d = poly.degree();
    if d > DEFAULT_DEGREE_LIMIT {
        return Err(Error::DegreeTooLarge {
            degree: d,
            limit: DEFAULT_DEGREE_LIMIT,
        });
    }
    let sqf = IntPolynomial::from_rat_monic(&poly.to_rat().squarefree_part())?;
    let mut pending = vec![sqf];
    let mut irreducible = Vec::new();
    while let Some(p) = pending.pop() {
        if p.degree() == 1 {
            irreducible.push(p);
            continue;
        }
        let allowed = allowed_factor_degrees(&p);
        if (1..p.degree()).all(|k| !allowed[k]) {
            irreducible.push(p);
            continue;
        }
        let set = roots(&p, DEFAULT_TOL)?;
        match smallest_factor(&set, &allowed)? {
            None => irreducible.push(p),
            Some(g) => {
                let q = g
                    .divides(p.coeffs())
                    .ok_or_else(|| Error::Indeterminate("factor stopped dividing".into()))?;
                pending.push(IntPolynomial::new(q)?);
                pending.push(g);
            }
        }
    }
    // multiplicities in the original polynomial
    let mut out = Vec::new();
    for g in irreducible {
        let mut rest = poly.coeffs().to_vec();
        while let Some(q) = g.divides(&rest) {
            out.push(g.clone());
            rest = q;
        }
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then(a.coeffs().cmp(b.coeffs())));
    Ok(out)
}

/// The irreducible factor of `poly` that vanishes at the root of `set`
/// nearest to `z`.
pub fn factor_containing(poly: &IntPolynomial, z: Complex64) -> Result<IntPolynomial> {
    for g in factor(poly)? {
        if g.degree() == poly.degree() {
            return Ok(g);
        }
        let set = roots(&g, DEFAULT_TOL)?;
        if set.roots.iter().any(|r| r.contains(z, 1e-9 * z.norm().max(1.0))) {
            return Ok(g);
        }
    }
    Err(Error::Indeterminate(format!("no factor vanishes near {z}")))
}

/// Monic integer factor of least degree `1 ≤ k ≤ d/2`, if any, trying only
/// degrees marked in `allowed`.
fn smallest_factor(set: &ConjugateSet, allowed: &[bool]) -> Result<Option<IntPolynomial>> {
    let poly = &set.poly;
    let d = poly.degree();
    let mignotte = mignotte_bound(poly);
    for k in (1..=d / 2).filter(|&k| allowed[k]) {
        for subset in combinations(d, k) {
            if !closed_under_conjugation(set, &subset) {
                continue;
            }
            for cand in integer_candidates(set, &subset)? {
                if cand.iter().any(|c| (*c as f64).abs() > mignotte) {
                    continue;
                }
                let mut coeffs = cand;
                coeffs.push(1);
                let g = IntPolynomial::new(coeffs)?;
                if g.divides(poly.coeffs()).is_some() {
                    return Ok(Some(g));
                }
            }
        }
    }
    Ok(None)
}

fn mignotte_bound(poly: &IntPolynomial) -> f64 {
    let norm2: f64 = poly
        .coeffs()
        .iter()
        .map(|&c| (c as f64) * (c as f64))
        .sum::<f64>()
        .sqrt();
    2f64.powi(poly.degree() as i32) * norm2
}

fn closed_under_conjugation(set: &ConjugateSet, subset: &[usize]) -> bool {
    subset.iter().all(|&i| {
        let r = &set.roots[i];
        r.is_real
            || subset.iter().any(|&j| {
                j != i && (set.roots[j].value - r.value.conj()).norm() <= r.radius + set.roots[j].radius
            })
    })
}

/// Integer vectors `(b₀, …, b_{k−1})` compatible with the coefficient
/// intervals of `Π_{i∈S}(x − zᵢ)`.
fn integer_candidates(set: &ConjugateSet, subset: &[usize]) -> Result<Vec<Vec<i128>>> {
    let k = subset.len();
    let centers: Vec<Complex64> = subset.iter().map(|&i| -set.roots[i].value).collect();
    let widened: Vec<f64> = subset
        .iter()
        .map(|&i| set.roots[i].modulus() + set.roots[i].radius)
        .collect();
    let plain: Vec<f64> = subset.iter().map(|&i| set.roots[i].modulus()).collect();
    // coefficients of Π (x + cᵢ) and the elementary symmetric bounds
    let prod = expand(&centers);
    let hi = expand_real(&widened);
    let lo = expand_real(&plain);
    let mut ranges = Vec::with_capacity(k);
    for j in 0..k {
        let err = (hi[j] - lo[j]) + 1e-12 * hi[j] + 1e-300;
        let re = prod[j].re;
        if prod[j].im.abs() > err + 1e-9 * hi[j].max(1.0) {
            return Ok(Vec::new());
        }
        let (a, b) = ((re - err).ceil(), (re + err).floor());
        if a > b {
            return Ok(Vec::new());
        }
        if !(a.is_finite() && b.is_finite()) || a.abs() > 1e36 || b.abs() > 1e36 {
            return Err(Error::Overflow("factor candidate coefficient"));
        }
        ranges.push((a as i128, b as i128));
    }
    let total: f64 = ranges.iter().map(|(a, b)| (b - a + 1) as f64).product();
    if total > MAX_CANDIDATES_PER_SUBSET as f64 {
        return Err(Error::Indeterminate(format!(
            "{total} factor candidates for one root subset; root disks too coarse"
        )));
    }
    let mut out: Vec<Vec<i128>> = vec![Vec::new()];
    for (a, b) in ranges {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (a..=b).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    Ok(out)
}

/// Coefficients (ascending, without the leading 1) of `Π (x + cᵢ)`.
fn expand(cs: &[Complex64]) -> Vec<Complex64> {
    let mut poly = vec![Complex64::new(1.0, 0.0)];
    for &c in cs {
        let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
        for (i, &p) in poly.iter().enumerate() {
            next[i] += p * c;
            next[i + 1] += p;
        }
        poly = next;
    }
    poly.pop();
    poly
}

fn expand_real(cs: &[f64]) -> Vec<f64> {
    let mut poly = vec![1.0];
    for &c in cs {
        let mut next = vec![0.0; poly.len() + 1];
        for (i, &p) in poly.iter().enumerate() {
            next[i] += p * c;
            next[i + 1] += p;
        }
        poly = next;
    }
    poly.pop();
    poly
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    #[test]
    fn spec_examples() {
        assert!(is_irreducible(&parse_poly("-1,-1,1").unwrap()).unwrap());
        assert!(!is_irreducible(&parse_poly("-4,0,1").unwrap()).unwrap());
        // (88 - x)[(59 - x)^2 + 59^2] + 1, negated to monic form
        assert!(is_irreducible(&parse_poly("-612657,17346,-206,1").unwrap()).unwrap());
    }

    #[test]
    fn degree_limit() {
        let p = parse_poly("1,0,0,0,0,0,0,0,0,1").unwrap();
        assert_eq!(
            is_irreducible(&p),
            Err(Error::DegreeTooLarge { degree: 9, limit: 8 })
        );
    }

    #[test]
    fn product_of_quadratics() {
        // (x^2 + 1)(x^2 - x - 1)
        let p = parse_poly("-1,-1,0,-1,1").unwrap();
        assert!(!is_irreducible(&p).unwrap());
        let fs = factor(&p).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].coeffs(), &[-1, -1, 1]);
        assert_eq!(fs[1].coeffs(), &[1, 0, 1]);
    }

    #[test]
    fn repeated_factors_keep_multiplicity() {
        // (x - 1)^2 (x + 2)
        let p = parse_poly("2,-3,0,1").unwrap();
        let fs = factor(&p).unwrap();
        let cs: Vec<&[i128]> = fs.iter().map(|g| g.coeffs()).collect();
        assert_eq!(cs, vec![&[-1i128, 1][..], &[-1, 1], &[2, 1]]);
    }
}
