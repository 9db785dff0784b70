//! Exact decisions that the certified disks cannot make on their own:
//! whether a root of `f` is also a root of another polynomial, and whether
//! a real root shares its modulus with another conjugate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{factor_containing, ApproxRoot, IntPolynomial, RatPoly};
use crate::Result;

/// Whether the root of `f` certified by `root` is a root of `g`.
///
/// Reduces to exact divisibility: the irreducible factor of `f` vanishing
/// at the root must divide `gcd(f, g)`.
pub fn shares_root(f: &IntPolynomial, root: &ApproxRoot, g: &RatPoly) -> Result<bool> {
    let d = f.to_rat().gcd(g);
    match d.degree() {
        None | Some(0) => Ok(false),
        Some(k) if k == f.degree() => Ok(true),
        Some(_) => {
            let m = factor_containing(f, root.value)?;
            Ok(d.rem(&m.to_rat()).is_zero())
        }
    }
}

/// Polynomial whose roots are the products `zᵢ·zⱼ`, `i ≤ j`, over the roots
/// of `f` (the symmetric square), built from exact power sums.
pub fn symmetric_square(f: &IntPolynomial) -> RatPoly {
    let d = f.degree();
    let m = d * (d + 1) / 2;
    let p = f.power_sums(2 * m);
    let power = |k: usize| -> &BigInt { &p[k - 1] };
    // power sums of the products: (P_k² + P_{2k}) / 2
    let q: Vec<BigRational> = (1..=m)
        .map(|k| {
            BigRational::new(power(k) * power(k) + power(2 * k), BigInt::from(2))
        })
        .collect();
    from_power_sums(&q)
}

/// Monic polynomial of degree `q.len()` with the given power sums.
fn from_power_sums(q: &[BigRational]) -> RatPoly {
    let m = q.len();
    let mut e = vec![BigRational::one()];
    for k in 1..=m {
        let mut acc = BigRational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &q[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / BigRational::from_integer(BigInt::from(k)));
    }
    // x^m − e₁x^{m−1} + e₂x^{m−2} − …
    let coeffs = (0..=m)
        .map(|i| {
            let j = m - i;
            if j.is_multiple_of(2) {
                e[j].clone()
            } else {
                -e[j].clone()
            }
        })
        .collect();
    RatPoly::new(coeffs)
}

/// Whether some conjugate other than the real root `root` has modulus
/// exactly `|root|`, or exceeds it.
///
/// `r²` is a root of the symmetric square of multiplicity one exactly when
/// no product `zᵢzⱼ` other than `r·r` equals `r²`. A tie `|z| = |r|`
/// produces `z·z̄ = r²`; conversely a second product equal to `r²` forces a
/// factor of modulus at least `|r|`. So a `true` answer always means `r`
/// is not strictly dominant.
pub fn modulus_tie(f: &IntPolynomial, root: &ApproxRoot) -> Result<bool> {
    let h = symmetric_square(f);
    let g = h.gcd(&h.derivative());
    if g.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    shares_root(f, root, &g.inflate(2))
}
