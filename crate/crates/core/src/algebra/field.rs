use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ApproxRoot, IntPolynomial, RatPoly};
use crate::{Error, Result};

/// Element `a₀ + a₁λ + … + a_{d−1}λ^{d−1}` of `ℚ(λ) = ℚ[x]/(f)`.
///
/// The coordinate vector is exactly the image under the power-basis map
/// `Ψ : ℚ(λ) → ℚ^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumberFieldElement {
    coords: Vec<BigRational>,
    field_poly: IntPolynomial,
}

impl NumberFieldElement {
    pub fn new(coords: Vec<BigRational>, field_poly: &IntPolynomial) -> Result<Self> {
        if coords.len() != field_poly.degree() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates, got {}",
                field_poly.degree(),
                coords.len()
            )));
        }
        Ok(NumberFieldElement {
            coords,
            field_poly: field_poly.clone(),
        })
    }

    pub fn from_ints(coords: &[i64], field_poly: &IntPolynomial) -> Result<Self> {
        NumberFieldElement::new(
            coords
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
            field_poly,
        )
    }

    /// Reduces an arbitrary rational polynomial modulo the field polynomial.
    pub fn from_poly(p: &RatPoly, field_poly: &IntPolynomial) -> Self {
        let r = p.rem(&field_poly.to_rat());
        let d = field_poly.degree();
        NumberFieldElement {
            coords: (0..d).map(|i| r.coeff(i)).collect(),
            field_poly: field_poly.clone(),
        }
    }

    pub fn zero(field_poly: &IntPolynomial) -> Self {
        NumberFieldElement::from_poly(&RatPoly::zero(), field_poly)
    }

    pub fn one(field_poly: &IntPolynomial) -> Self {
        NumberFieldElement::from_poly(&RatPoly::one(), field_poly)
    }

    pub fn from_integer(n: i64, field_poly: &IntPolynomial) -> Self {
        NumberFieldElement::from_poly(
            &RatPoly::constant(BigRational::from_integer(BigInt::from(n))),
            field_poly,
        )
    }

    /// The generator `λ` itself.
    pub fn generator(field_poly: &IntPolynomial) -> Self {
        NumberFieldElement::from_poly(
            &RatPoly::monomial(BigRational::one(), 1),
            field_poly,
        )
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn field_poly(&self) -> &IntPolynomial {
        &self.field_poly
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    fn as_poly(&self) -> RatPoly {
        RatPoly::new(self.coords.clone())
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field_poly == other.field_poly {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn neg(&self) -> Self {
        NumberFieldElement {
            coords: self.coords.iter().map(|c| -c).collect(),
            field_poly: self.field_poly.clone(),
        }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        NumberFieldElement {
            coords: self.coords.iter().map(|c| c * s).collect(),
            field_poly: self.field_poly.clone(),
        }
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Evaluates at a certified root of the field polynomial. Returns the
    /// value and a bound on its distance from the exact embedding.
    pub fn embed(&self, root: &ApproxRoot) -> (Complex64, f64) {
        let z = root.value;
        let r = z.norm() + root.radius;
        let mut value = Complex64::new(0.0, 0.0);
        let mut abs_sum = 0.0;
        let mut deriv_bound = 0.0;
        for c in self.coords.iter().rev() {
            let cf = c.to_f64().unwrap_or(f64::NAN);
            deriv_bound = deriv_bound * r + abs_sum;
            abs_sum = abs_sum * r + cf.abs();
            value = value * z + cf;
        }
        // mean value bound for the radius, plus Horner rounding
        let n = self.coords.len() as f64;
        let err = deriv_bound * root.radius + 8.0 * (n + 2.0) * f64::EPSILON * abs_sum;
        (value, err)
    }
}

pub fn nf_add(x: &NumberFieldElement, y: &NumberFieldElement) -> Result<NumberFieldElement> {
    x.same_field(y)?;
    Ok(NumberFieldElement {
        coords: x.coords.iter().zip(&y.coords).map(|(a, b)| a + b).collect(),
        field_poly: x.field_poly.clone(),
    })
}

pub fn nf_sub(x: &NumberFieldElement, y: &NumberFieldElement) -> Result<NumberFieldElement> {
    x.same_field(y)?;
    Ok(NumberFieldElement {
        coords: x.coords.iter().zip(&y.coords).map(|(a, b)| a - b).collect(),
        field_poly: x.field_poly.clone(),
    })
}

pub fn nf_mul(x: &NumberFieldElement, y: &NumberFieldElement) -> Result<NumberFieldElement> {
    x.same_field(y)?;
    Ok(NumberFieldElement::from_poly(
        &x.as_poly().mul(&y.as_poly()),
        &x.field_poly,
    ))
}

/// Multiplicative inverse via the extended Euclidean algorithm. Fails with
/// [`Error::ReduciblePoly`] when the element shares a factor with the field
/// polynomial.
pub fn nf_inverse(x: &NumberFieldElement) -> Result<NumberFieldElement> {
    if x.is_zero() {
        return Err(Error::NotInvertible);
    }
    let (g, s, _) = x.as_poly().ext_gcd(&x.field_poly.to_rat());
    if g.degree() != Some(0) {
        return Err(Error::ReduciblePoly);
    }
    Ok(NumberFieldElement::from_poly(&s, &x.field_poly))
}

pub fn nf_div(x: &NumberFieldElement, y: &NumberFieldElement) -> Result<NumberFieldElement> {
    nf_mul(x, &nf_inverse(y)?)
}

/// Standalone form of [`NumberFieldElement::embed`].
pub fn embed(x: &NumberFieldElement, root: &ApproxRoot) -> (Complex64, f64) {
    x.embed(root)
}

impl fmt::Display for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            let body = match i {
                0 => mag.to_string(),
                1 if mag.is_one() => "λ".to_string(),
                1 => format!("{mag}λ"),
                _ if mag.is_one() => format!("λ^{i}"),
                _ => format!("{mag}λ^{i}"),
            };
            terms.push((sign, body));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (sign, body)) in terms.iter().enumerate() {
            match (k, *sign) {
                (0, "-") => write!(f, "-{body}")?,
                (0, _) => write!(f, "{body}")?,
                _ => write!(f, " {sign} {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, roots};

    fn ints(e: &NumberFieldElement) -> Vec<i64> {
        e.coords().iter().map(|c| c.to_integer().to_i64().unwrap()).collect()
    }

    #[test]
    fn golden_field() {
        let f = parse_poly("-1,-1,1").unwrap();
        let phi = NumberFieldElement::generator(&f);
        assert_eq!(ints(&nf_mul(&phi, &phi).unwrap()), vec![1, 1]);
        assert_eq!(ints(&nf_inverse(&phi).unwrap()), vec![-1, 1]);
        let one = NumberFieldElement::one(&f);
        let inv = nf_inverse(&phi).unwrap();
        assert_eq!(nf_mul(&phi, &inv).unwrap(), one);
        assert_eq!(phi.to_string(), "λ");
        assert_eq!(inv.to_string(), "-1 + λ");
    }

    #[test]
    fn cubic_reduction() {
        let f = parse_poly("-46,-15,3,1").unwrap();
        let l = NumberFieldElement::generator(&f);
        let l2 = nf_mul(&l, &l).unwrap();
        assert_eq!(ints(&nf_mul(&l, &l2).unwrap()), vec![46, 15, -3]);
    }

    #[test]
    fn errors() {
        let f = parse_poly("-1,-1,1").unwrap();
        let g = parse_poly("-2,0,1").unwrap();
        let a = NumberFieldElement::generator(&f);
        let b = NumberFieldElement::generator(&g);
        assert_eq!(nf_add(&a, &b), Err(Error::FieldMismatch));
        assert_eq!(nf_inverse(&NumberFieldElement::zero(&f)), Err(Error::NotInvertible));
        // x^2 - 1 is reducible: λ - 1 is a zero divisor
        let h = parse_poly("-1,0,1").unwrap();
        let zd = NumberFieldElement::from_ints(&[-1, 1], &h).unwrap();
        assert_eq!(nf_inverse(&zd), Err(Error::ReduciblePoly));
    }

    #[test]
    fn embeddings() {
        let f = parse_poly("-1,-1,1").unwrap();
        let set = roots(&f, 1e-10).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let g = NumberFieldElement::from_ints(&[0, 1], &f).unwrap();
        let (v, e) = g.embed(&set.roots[0]);
        assert!((v.re - phi).abs() <= e + 1e-15);
        let sq = NumberFieldElement::from_ints(&[1, 1], &f).unwrap();
        assert!((sq.embed(&set.roots[0]).0.re - phi * phi).abs() < 1e-12);
        let inv = NumberFieldElement::from_ints(&[-1, 1], &f).unwrap();
        // at the conjugate -0.618…, λ - 1 evaluates to -1.618…
        assert!((inv.embed(&set.roots[1]).0.re + phi).abs() < 1e-12);
    }
}
