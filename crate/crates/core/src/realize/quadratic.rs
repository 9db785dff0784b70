use num_integer::Roots;

use super::{certify_with_root, IntMatrix, Realization};
use crate::algebra::IntPolynomial;
use crate::{Error, Result};

/// The explicit `2 × 2` realization of a quadratic Perron number with
/// minimal polynomial `x² − ux + v`:
///
/// ```text
/// u even: [[u/2, Δ/4], [1, u/2]]
/// u odd:  [[(u+1)/2, (Δ−1)/4], [1, (u−1)/2]]
/// ```
///
/// where `Δ = u² − 4v`.
pub fn quadratic_realize(poly: &IntPolynomial) -> Result<Realization> {
    if poly.degree() != 2 {
        return Err(Error::NotQuadratic);
    }
    let u = -poly.coeffs()[1];
    let v = poly.coeffs()[0];
    let disc = u
        .checked_mul(u)
        .and_then(|s| s.checked_sub(v.checked_mul(4)?))
        .ok_or(Error::Overflow("discriminant"))?;
    if disc < 0 {
        return Err(Error::NotPerron);
    }
    let root = disc.sqrt();
    if root * root == disc {
        return Err(Error::Reducible);
    }
    if u <= 0 {
        return Err(Error::NotPerron);
    }
    let narrow = |x: i128| i64::try_from(x).map_err(|_| Error::Overflow("quadratic entry"));
    let entries = if u % 2 == 0 {
        vec![u / 2, disc / 4, 1, u / 2]
    } else {
        vec![(u + 1) / 2, (disc - 1) / 4, 1, (u - 1) / 2]
    };
    let matrix = IntMatrix::new(2, entries.into_iter().map(narrow).collect::<Result<_>>()?)?;
    let lambda = (u as f64 + (disc as f64).sqrt()) / 2.0;
    certify_with_root(&matrix, poly, lambda, 4.0 * f64::EPSILON * lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn rows(text: &str) -> Vec<Vec<i64>> {
        quadratic_realize(&parse_poly(text).unwrap()).unwrap().matrix.rows()
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(rows("-1,-1,1"), vec![vec![1, 1], vec![1, 0]]);
        assert_eq!(rows("2,-4,1"), vec![vec![2, 2], vec![1, 2]]);
        assert_eq!(rows("1,-3,1"), vec![vec![2, 1], vec![1, 1]]);
    }

    #[test]
    fn rejections() {
        let q = |t: &str| quadratic_realize(&parse_poly(t).unwrap());
        assert_eq!(q("-1,1").unwrap_err(), Error::NotQuadratic);
        assert_eq!(q("-4,0,1").unwrap_err(), Error::Reducible);
        assert_eq!(q("1,1,1").unwrap_err(), Error::NotPerron);
        assert_eq!(q("-2,0,1").unwrap_err(), Error::NotPerron);
        assert_eq!(q("-1,1,1").unwrap_err(), Error::NotPerron);
    }
}
