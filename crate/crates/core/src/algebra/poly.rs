use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::RatPoly;
use crate::{Error, Result};

/// Monic polynomial with integer coefficients, stored in ascending order
/// `c₀ + c₁x + … + x^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<i128>,
}

impl IntPolynomial {
    /// Builds a polynomial from ascending coefficients. The last coefficient
    /// must be exactly 1 and the degree at least 1.
    pub fn new(coeffs: Vec<i128>) -> Result<Self> {
        match coeffs.last() {
            None => Err(Error::MalformedInput("empty coefficient list".into())),
            Some(&l) if l != 1 => Err(Error::NotMonic(l.to_string())),
            Some(_) if coeffs.len() < 2 => {
                Err(Error::MalformedInput("degree must be at least 1".into()))
            }
            Some(_) => Ok(IntPolynomial { coeffs }),
        }
    }

    /// Normalizes a polynomial with leading coefficient ±1 to monic form.
    pub fn from_signed(mut coeffs: Vec<i128>) -> Result<Self> {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.last() == Some(&-1) {
            coeffs.iter_mut().for_each(|c| *c = -*c);
        }
        IntPolynomial::new(coeffs)
    }

    /// Converts a rational polynomial that is monic with integral
    /// coefficients after scaling by its leading coefficient.
    pub fn from_rat_monic(p: &RatPoly) -> Result<Self> {
        let m = p.monic();
        let ints = m
            .to_integers()
            .ok_or_else(|| Error::MalformedInput(format!("non-integral coefficients in {m}")))?;
        let coeffs = ints
            .iter()
            .map(|c| c.to_i128().ok_or(Error::Overflow("polynomial coefficient")))
            .collect::<Result<Vec<_>>>()?;
        IntPolynomial::new(coeffs)
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn constant_term(&self) -> i128 {
        self.coeffs[0]
    }

    /// Unit algebraic integers have constant term ±1.
    pub fn is_unit(&self) -> bool {
        self.coeffs[0].abs() == 1
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::from_ints(self.coeffs.iter().copied())
    }

    pub fn eval_int(&self, x: i128) -> Option<i128> {
        let mut acc: i128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(x)?.checked_add(c)?;
        }
        Some(acc)
    }

    pub fn eval_big(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + BigInt::from(c);
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.to_rat().eval(x)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c as f64;
        }
        acc
    }

    /// Evaluates `f(z)` and `f'(z)` together with a rigorous bound on the
    /// rounding error of each (coefficient conversion plus Horner).
    pub fn eval_with_bounds(&self, z: Complex64) -> Evaluation {
        let d = self.degree();
        let r = z.norm();
        let mut f = Complex64::new(0.0, 0.0);
        let mut df = Complex64::new(0.0, 0.0);
        let mut abs_f = 0.0f64;
        let mut abs_df = 0.0f64;
        for &c in self.coeffs.iter().rev() {
            df = df * z + f;
            abs_df = abs_df * r + abs_f;
            let cf = c as f64;
            f = f * z + cf;
            abs_f = abs_f * r + cf.abs();
        }
        // Complex Horner: each step costs a complex multiply-add; a factor of
        // 8u per step covers it with room for the integer-to-float rounding.
        let u = f64::EPSILON;
        let gamma = 8.0 * (d as f64 + 2.0) * u;
        Evaluation {
            value: f,
            derivative: df,
            value_err: gamma * abs_f + f64::MIN_POSITIVE,
            derivative_err: gamma * abs_df + f64::MIN_POSITIVE,
        }
    }

    pub fn derivative_coeffs(&self) -> Vec<i128> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * i as i128)
            .collect()
    }

    /// Squarefree test: `gcd(f, f') = 1` over ℚ.
    pub fn is_squarefree(&self) -> bool {
        let f = self.to_rat();
        f.gcd(&f.derivative()).degree() == Some(0)
    }

    pub fn mul(&self, other: &IntPolynomial) -> Result<IntPolynomial> {
        let mut out = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                let t = a.checked_mul(b).ok_or(Error::Overflow("polynomial product"))?;
                out[i + j] = out[i + j]
                    .checked_add(t)
                    .ok_or(Error::Overflow("polynomial product"))?;
            }
        }
        IntPolynomial::new(out)
    }

    /// Exact division of an arbitrary integer coefficient list by this monic
    /// polynomial. Returns the quotient when the remainder vanishes.
    pub fn divides(&self, dividend: &[i128]) -> Option<Vec<i128>> {
        let d = self.degree();
        let n = dividend.len().checked_sub(1)?;
        if n < d {
            return dividend.iter().all(|&c| c == 0).then(Vec::new);
        }
        let mut rem = dividend.to_vec();
        let mut quot = vec![0i128; n - d + 1];
        for k in (0..=n - d).rev() {
            let c = rem[k + d];
            quot[k] = c;
            if c != 0 {
                for (j, &dc) in self.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].checked_sub(c.checked_mul(dc)?)?;
                }
            }
        }
        rem[..d].iter().all(|&c| c == 0).then_some(quot)
    }

    /// Power sums `p_k = Σ zᵢ^k` over all roots for `k = 1..=k_max`, by
    /// Newton's identities in exact integer arithmetic.
    pub fn power_sums(&self, k_max: usize) -> Vec<BigInt> {
        let d = self.degree();
        // elementary symmetric functions with signs: f = Σ (-1)^j e_j x^{d-j}
        let e: Vec<BigInt> = (0..=d)
            .map(|j| {
                let c = BigInt::from(self.coeffs[d - j]);
                if j % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        let mut p: Vec<BigInt> = vec![BigInt::zero(); k_max + 1];
        for k in 1..=k_max {
            let mut acc = BigInt::zero();
            for i in 1..k.min(d + 1) {
                let term = &e[i] * &p[k - i];
                if i % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            if k <= d {
                let term = BigInt::from(k) * &e[k];
                if k % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            p[k] = acc;
        }
        p.remove(0);
        p
    }

    /// Human-readable form such as `x^3 + 3x^2 - 15x - 46`.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            let mag = c.unsigned_abs();
            let body = match (i, mag) {
                (0, m) => m.to_string(),
                (1, 1) => "x".to_string(),
                (1, m) => format!("{m}x"),
                (k, 1) => format!("x^{k}"),
                (k, m) => format!("{m}x^{k}"),
            };
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
                out.push_str(&body);
            } else {
                out.push_str(&format!(" {sign} {body}"));
            }
        }
        out
    }
}

/// Result of [`IntPolynomial::eval_with_bounds`].
#[derive(Clone, Copy, Debug)]
pub struct Evaluation {
    pub value: Complex64,
    pub derivative: Complex64,
    pub value_err: f64,
    pub derivative_err: f64,
}

/// Parses the ascending comma-separated coefficient format, e.g.
/// `"-1,-1,1"` for `x² − x − 1`.
pub fn parse_poly(text: &str) -> Result<IntPolynomial> {
    let coeffs = text
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<i128>()
                .map_err(|_| Error::MalformedInput(format!("not an integer: {tok:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    IntPolynomial::new(coeffs)
}

impl FromStr for IntPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}
