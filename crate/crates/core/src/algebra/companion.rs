use super::IntPolynomial;
use crate::{Error, Result};

/// Companion matrix of a monic polynomial in the layout
///
/// ```text
/// [0 0 … c_d    ]
/// [1 0 … c_{d-1}]
/// [0 1 … c_{d-2}]
/// [      …      ]
/// [0 0 … c_1    ]
/// ```
///
/// for `f(x) = x^d − c₁x^{d−1} − … − c_d`. It is the matrix of
/// multiplication by `λ` on `ℚ(λ)` in the basis `1, λ, …, λ^{d−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompanionMatrix {
    /// Row-major `d × d` entries.
    pub entries: Vec<i128>,
    pub source: IntPolynomial,
}

impl CompanionMatrix {
    pub fn size(&self) -> usize {
        self.source.degree()
    }

    pub fn get(&self, row: usize, col: usize) -> i128 {
        self.entries[row * self.size() + col]
    }

    pub fn rows(&self) -> Vec<Vec<i128>> {
        self.entries.chunks(self.size()).map(|r| r.to_vec()).collect()
    }

    /// `B·z` for an integer vector `z`.
    pub fn apply(&self, z: &[i128]) -> Result<Vec<i128>> {
        let d = self.size();
        (0..d)
            .map(|i| {
                (0..d).try_fold(0i128, |acc, j| {
                    self.get(i, j)
                        .checked_mul(z[j])
                        .and_then(|t| acc.checked_add(t))
                        .ok_or(Error::Overflow("companion product"))
                })
            })
            .collect()
    }
}

pub fn companion(poly: &IntPolynomial) -> CompanionMatrix {
    let d = poly.degree();
    let mut entries = vec![0i128; d * d];
    for row in 1..d {
        entries[row * d + row - 1] = 1;
    }
    // stored coefficient kᵣ of xʳ equals −c_{d−r} in the x^d − Σ cᵢ x^{d−i} convention
    for row in 0..d {
        entries[row * d + d - 1] = -poly.coeffs()[row];
    }
    CompanionMatrix {
        entries,
        source: poly.clone(),
    }
}

/// Monic characteristic polynomial `det(xI − A)` of a square integer matrix
/// (row-major), ascending coefficients, by the Faddeev–LeVerrier recurrence
/// in exact integer arithmetic.
pub fn char_poly(entries: &[i128], n: usize) -> Result<Vec<i128>> {
    assert_eq!(entries.len(), n * n, "matrix must be square");
    const OVERFLOW: Error = Error::Overflow("characteristic polynomial");
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    let mut m = vec![0i128; n * n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = vec![0i128; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc: i128 = 0;
                for l in 0..n {
                    let a = entries[i * n + l];
                    if a != 0 {
                        acc = acc
                            .checked_add(a.checked_mul(m[l * n + j]).ok_or(OVERFLOW)?)
                            .ok_or(OVERFLOW)?;
                    }
                }
                next[i * n + j] = acc;
            }
            next[i * n + i] = next[i * n + i]
                .checked_add(coeffs[n - k + 1])
                .ok_or(OVERFLOW)?;
        }
        m = next;
        // c_{n−k} = −tr(A·M_k)/k
        let mut tr: i128 = 0;
        for i in 0..n {
            for l in 0..n {
                let a = entries[i * n + l];
                if a != 0 {
                    tr = tr
                        .checked_add(a.checked_mul(m[l * n + i]).ok_or(OVERFLOW)?)
                        .ok_or(OVERFLOW)?;
                }
            }
        }
        coeffs[n - k] = -tr / k as i128;
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    #[test]
    fn layouts() {
        let b = companion(&parse_poly("-1,-1,1").unwrap());
        assert_eq!(b.rows(), vec![vec![0, 1], vec![1, 1]]);
        let b = companion(&parse_poly("-46,-15,3,1").unwrap());
        assert_eq!(b.rows(), vec![vec![0, 0, 46], vec![1, 0, 15], vec![0, 1, -3]]);
        let b = companion(&parse_poly("-5,1").unwrap());
        assert_eq!(b.rows(), vec![vec![5]]);
    }

    #[test]
    fn char_poly_small() {
        assert_eq!(char_poly(&[1, 1, 1, 0], 2).unwrap(), vec![-1, -1, 1]);
        assert_eq!(char_poly(&[3], 1).unwrap(), vec![-3, 1]);
        let b = companion(&parse_poly("-46,-15,3,1").unwrap());
        assert_eq!(char_poly(&b.entries, 3).unwrap(), vec![-46, -15, 3, 1]);
    }
}
