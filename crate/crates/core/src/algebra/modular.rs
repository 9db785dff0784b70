//! Factor-degree patterns modulo small primes.
//!
//! If `f ≡ Π gᵢ (mod p)` with `f mod p` squarefree, the degree of any
//! integer factor of `f` is a subset sum of the `deg gᵢ`. Intersecting these
//! sums over several primes often leaves only `0` and `d`, which proves
//! irreducibility without any floating-point work.

use super::IntPolynomial;

const PRIMES: [u64; 46] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199,
];

/// `allowed[k]` is false when no integer factor of degree `k` can exist.
pub fn allowed_factor_degrees(poly: &IntPolynomial) -> Vec<bool> {
    let d = poly.degree();
    let mut allowed = vec![true; d + 1];
    for &p in &PRIMES {
        let Some(degrees) = degree_pattern(poly, p) else {
            continue;
        };
        let mut sums = vec![false; d + 1];
        sums[0] = true;
        for g in degrees {
            for s in (g..=d).rev() {
                sums[s] |= sums[s - g];
            }
        }
        for (a, s) in allowed.iter_mut().zip(&sums) {
            *a &= *s;
        }
        if (1..d).all(|k| !allowed[k]) {
            break;
        }
    }
    allowed
}

/// Degrees of the irreducible factors of `poly mod p`, or `None` when the
/// reduction is not squarefree.
pub fn degree_pattern(poly: &IntPolynomial, p: u64) -> Option<Vec<usize>> {
    let f = reduce(poly.coeffs(), p);
    let df = derivative(&f, p);
    if degree(&gcd(f.clone(), df, p)) != Some(0) {
        return None;
    }
    let mut rest = f;
    let mut out = Vec::new();
    let x = vec![0, 1];
    let mut h = x.clone();
    let mut i = 0;
    while let Some(dr) = degree(&rest) {
        if dr < 2 * (i + 1) {
            if dr > 0 {
                out.push(dr);
            }
            break;
        }
        i += 1;
        h = pow_mod(&h, p, &rest, p);
        let g = gcd(sub(&h, &x, p), rest.clone(), p);
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 {
            out.extend(std::iter::repeat_n(i, dg / i));
            rest = div_exact(&rest, &g, p);
            h = rem(&h, &rest, p);
        }
    }
    Some(out)
}

fn reduce(c: &[i128], p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = c.iter().map(|&x| x.rem_euclid(p as i128) as u64).collect();
    trim(&mut v);
    v
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn degree(v: &[u64]) -> Option<usize> {
    v.len().checked_sub(1)
}

fn derivative(f: &[u64], p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = f.iter().enumerate().skip(1).map(|(i, &c)| c * (i as u64 % p) % p).collect();
    trim(&mut v);
    v
}

fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut v: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut v);
    v
}

fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    divmod(a, m, p).1
}

fn div_exact(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    divmod(a, m, p).0
}

fn divmod(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let dm = degree(m).expect("nonzero modulus");
    let lead_inv = inv(m[dm], p);
    let mut r = a.to_vec();
    trim(&mut r);
    let mut q = vec![0; r.len().saturating_sub(dm).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let c = r[dr] * lead_inv % p;
        q[dr - dm] = c;
        for (j, &mj) in m.iter().enumerate() {
            let k = dr - dm + j;
            r[k] = (r[k] + p - c * mj % p) % p;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    rem(&prod, m, p)
}

fn pow_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(&result, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        e >>= 1;
    }
    rem(&result, m, p)
}

fn gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(d) = degree(&a) {
        let l = inv(a[d], p);
        for c in &mut a {
            *c = *c * l % p;
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    #[test]
    fn patterns() {
        // x² + 1 splits mod 5 and stays irreducible mod 3
        let f = parse_poly("1,0,1").unwrap();
        assert_eq!(degree_pattern(&f, 5), Some(vec![1, 1]));
        assert_eq!(degree_pattern(&f, 3), Some(vec![2]));
        assert_eq!(degree_pattern(&f, 2), None);
        // x³ − 2 mod 7 is irreducible (2 is not a cube)
        assert_eq!(degree_pattern(&parse_poly("-2,0,0,1").unwrap(), 7), Some(vec![3]));
    }

    #[test]
    fn allowed_degrees() {
        let irreducible = parse_poly("-1,-1,0,0,1").unwrap();
        assert_eq!(allowed_factor_degrees(&irreducible), vec![true, false, false, false, true]);
        // (x² + 1)(x² − 2) keeps degree two
        let product = parse_poly("-2,0,-1,0,1").unwrap();
        assert!(allowed_factor_degrees(&product)[2]);
    }
}
