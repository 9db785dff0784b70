use num_bigint::BigInt;
use num_traits::Signed;

use crate::algebra::{roots, IntPolynomial};
use crate::classify::is_perron;
use crate::{Error, Result, DEFAULT_TOL};

/// Power sums `p_k = Σ λᵢᵏ` and the powers at which they are negative.
///
/// A `d × d` non-negative matrix with characteristic polynomial `f` has
/// `tr(Aᵏ) = p_k ≥ 0`, so any negative `p_k` forces `d_PF > d`.
#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionReport {
    pub degree: usize,
    /// `power_sums[k − 1] = p_k`.
    pub power_sums: Vec<BigInt>,
    pub negative_powers: Vec<usize>,
}

impl ObstructionReport {
    pub fn fires(&self) -> bool {
        !self.negative_powers.is_empty()
    }

    /// Lower bound on `d_PF` implied by the report alone.
    pub fn implied_lower_bound(&self) -> usize {
        if self.fires() {
            self.degree + 1
        } else {
            self.degree
        }
    }
}

pub fn trace_obstruction(poly: &IntPolynomial, max_power: usize) -> Result<ObstructionReport> {
    if max_power == 0 {
        return Err(Error::InvalidArgument("max_power must be positive".into()));
    }
    if !is_perron(&roots(poly, DEFAULT_TOL)?)? {
        return Err(Error::NotPerron);
    }
    let power_sums = poly.power_sums(max_power);
    let negative_powers = power_sums
        .iter()
        .enumerate()
        .filter(|(_, p)| p.is_negative())
        .map(|(k, _)| k + 1)
        .collect();
    Ok(ObstructionReport {
        degree: poly.degree(),
        power_sums,
        negative_powers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    #[test]
    fn negative_trace_cubic() {
        let r = trace_obstruction(&parse_poly("-46,-15,3,1").unwrap(), 1).unwrap();
        assert_eq!(r.power_sums, vec![BigInt::from(-3)]);
        assert_eq!(r.negative_powers, vec![1]);
        assert_eq!(r.implied_lower_bound(), 4);
    }

    #[test]
    fn golden_ratio_has_no_obstruction() {
        let r = trace_obstruction(&parse_poly("-1,-1,1").unwrap(), 6).unwrap();
        assert!(!r.fires());
        let lucas: Vec<BigInt> = [1, 3, 4, 7, 11, 18].into_iter().map(BigInt::from).collect();
        assert_eq!(r.power_sums, lucas);
    }

    #[test]
    fn second_power_obstruction() {
        let r = trace_obstruction(&parse_poly("-2,1,-1,1").unwrap(), 2).unwrap();
        assert_eq!(r.power_sums, vec![BigInt::from(1), BigInt::from(-1)]);
        assert_eq!(r.negative_powers, vec![2]);
    }

    #[test]
    fn requires_perron() {
        assert_eq!(trace_obstruction(&parse_poly("-2,0,1").unwrap(), 2), Err(Error::NotPerron));
    }
}
