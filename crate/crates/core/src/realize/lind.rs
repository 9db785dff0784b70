use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{IntMatrix, Realization};
use crate::algebra::{
    companion, is_irreducible, nf_div, nf_mul, nf_sub, roots, ApproxRoot, IntPolynomial,
    NumberFieldElement,
};
use crate::{Error, Result, DEFAULT_TOL};

/// Integral points `z₁, …, z_n ∈ ℤ^d` with `B·zᵢ = Σⱼ aᵢⱼ zⱼ`, where `B` is
/// the companion matrix, all on the positive side of the dominant
/// eigenline.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticePointSet {
    pub points: Vec<Vec<i128>>,
    pub field_poly: IntPolynomial,
    pub coefficients: IntMatrix,
    /// `v*·zᵢ` with `v* = (1, λ, …, λ^{d−1})`, each certified positive.
    pub projections: Vec<f64>,
}

impl LatticePointSet {
    /// Checks `B·zᵢ = Σⱼ aᵢⱼ zⱼ` in exact integer arithmetic.
    pub fn relations_hold(&self) -> Result<bool> {
        let b = companion(&self.field_poly);
        let n = self.points.len();
        let d = self.field_poly.degree();
        for i in 0..n {
            let lhs = b.apply(&self.points[i])?;
            let mut rhs = vec![0i128; d];
            for j in 0..n {
                let a = self.coefficients.get(i, j) as i128;
                for k in 0..d {
                    rhs[k] = a
                        .checked_mul(self.points[j][k])
                        .and_then(|t| rhs[k].checked_add(t))
                        .ok_or(Error::Overflow("lattice relation"))?;
                }
            }
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Solves `A·v = λ·v` over `ℚ(λ)`, scales `v` to integral coordinates and
/// returns `zᵢ = Ψ(vᵢ)`.
pub fn lind_points(real: &Realization) -> Result<LatticePointSet> {
    let f = &real.lambda_poly;
    if !is_irreducible(f)? {
        return Err(Error::Reducible);
    }
    let conj = roots(f, DEFAULT_TOL)?;
    let lambda = *conj
        .dominant()
        .ok_or_else(|| Error::SingularSystem("no dominant root".into()))?;
    let v = perron_eigenvector(&real.matrix, f)?;

    // a common positive sign at the dominant root
    let signs: Vec<i32> = v.iter().map(|x| certified_sign(x, &lambda)).collect::<Result<_>>()?;
    let v: Vec<NumberFieldElement> = if signs.iter().all(|&s| s > 0) {
        v
    } else if signs.iter().all(|&s| s < 0) {
        v.iter().map(NumberFieldElement::neg).collect()
    } else {
        return Err(Error::SingularSystem(
            "eigenvector coordinates change sign at the Perron root".into(),
        ));
    };

    let points = integral_coordinates(&v)?;
    if let Some(i) = points.iter().position(|z| z.iter().all(|&c| c == 0)) {
        return Err(Error::DegenerateProjection(format!("z_{} is zero", i + 1)));
    }
    let projections = points
        .iter()
        .map(|z| {
            let el = NumberFieldElement::new(
                z.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect(),
                f,
            )?;
            let (value, err) = el.embed(&lambda);
            if value.re - err <= 0.0 {
                return Err(Error::SingularSystem(format!(
                    "v*·z = {} is not certifiably positive",
                    value.re
                )));
            }
            Ok(value.re)
        })
        .collect::<Result<Vec<_>>>()?;

    let set = LatticePointSet {
        points,
        field_poly: f.clone(),
        coefficients: real.matrix.clone(),
        projections,
    };
    if !set.relations_hold()? {
        return Err(Error::SingularSystem("B·zᵢ = Σ aᵢⱼ zⱼ fails".into()));
    }
    Ok(set)
}

fn certified_sign(x: &NumberFieldElement, root: &ApproxRoot) -> Result<i32> {
    let (value, err) = x.embed(root);
    if value.re > err {
        Ok(1)
    } else if value.re < -err {
        Ok(-1)
    } else {
        Err(Error::SingularSystem(format!(
            "eigenvector coordinate {x} is not certifiably nonzero"
        )))
    }
}

/// Kernel vector of `A − λI` by Gauss-Jordan elimination over `ℚ(λ)`, with
/// the single free variable set to one.
fn perron_eigenvector(a: &IntMatrix, f: &IntPolynomial) -> Result<Vec<NumberFieldElement>> {
    let n = a.size();
    let lam = NumberFieldElement::generator(f);
    let mut m: Vec<Vec<NumberFieldElement>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = NumberFieldElement::from_integer(a.get(i, j), f);
                    if i == j {
                        nf_sub(&e, &lam)
                    } else {
                        Ok(e)
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let piv = m[row][col].clone();
        for c in col..n {
            m[row][c] = nf_div(&m[row][c], &piv)?;
        }
        for r in 0..n {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..n {
                    let t = nf_mul(&factor, &m[row][c])?;
                    m[r][c] = nf_sub(&m[r][c], &t)?;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if pivots.len() + 1 != n {
        return Err(Error::SingularSystem(format!(
            "kernel of A − λI has dimension {}",
            n - pivots.len()
        )));
    }
    let free = (0..n)
        .find(|c| !pivots.contains(c))
        .ok_or_else(|| Error::SingularSystem("no free variable".into()))?;
    let mut v = vec![NumberFieldElement::zero(f); n];
    v[free] = NumberFieldElement::one(f);
    for (r, &c) in pivots.iter().enumerate() {
        v[c] = m[r][free].neg();
    }
    Ok(v)
}

/// Multiplies by the common denominator and divides by the content.
fn integral_coordinates(v: &[NumberFieldElement]) -> Result<Vec<Vec<i128>>> {
    let den = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(&x.denominator_lcm()));
    let scaled: Vec<Vec<BigInt>> = v
        .iter()
        .map(|x| {
            x.coords()
                .iter()
                .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
                .collect()
        })
        .collect();
    let content = scaled
        .iter()
        .flatten()
        .fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let content = if content.is_zero() { BigInt::one() } else { content.abs() };
    scaled
        .into_iter()
        .map(|z| {
            z.into_iter()
                .map(|c| (c / &content).to_i128().ok_or(Error::Overflow("lattice point")))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::realize::{certify, quadratic_realize};

    #[test]
    fn golden_ratio_points() {
        let a = IntMatrix::from_rows(&[vec![1, 1], vec![1, 0]]).unwrap();
        let r = certify(&a, &parse_poly("-1,-1,1").unwrap()).unwrap();
        let pts = lind_points(&r).unwrap();
        assert_eq!(pts.points, vec![vec![0, 1], vec![1, 0]]);
        assert!(pts.relations_hold().unwrap());
        assert!(pts.projections.iter().all(|&p| p > 0.0));
    }

    #[test]
    fn integer_root() {
        let a = IntMatrix::from_rows(&[vec![3]]).unwrap();
        let r = certify(&a, &parse_poly("-3,1").unwrap()).unwrap();
        assert_eq!(lind_points(&r).unwrap().points, vec![vec![1]]);
    }

    #[test]
    fn quadratic_closed_form_matrix() {
        let r = quadratic_realize(&parse_poly("1,-3,1").unwrap()).unwrap();
        let pts = lind_points(&r).unwrap();
        assert!(pts.relations_hold().unwrap());
        assert!(pts.projections.iter().all(|&p| p > 0.0));
    }

    #[test]
    fn cubic_inside_four_by_four() {
        let a = IntMatrix::from_rows(&[
            vec![0, 0, 0, 1],
            vec![0, 0, 1, 0],
            vec![1, 0, 0, 0],
            vec![0, 2, 1, 0],
        ])
        .unwrap();
        let r = certify(&a, &parse_poly("-2,1,-1,1").unwrap()).unwrap();
        let pts = lind_points(&r).unwrap();
        assert_eq!(pts.points.len(), 4);
        assert!(pts.relations_hold().unwrap());
    }
}
