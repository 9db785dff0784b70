use std::fmt;

use num_integer::Integer;

use crate::algebra::{char_poly, roots, IntPolynomial};
use crate::classify::is_perron;
use crate::{Error, Result, DEFAULT_TOL};

/// Square matrix with non-negative integer entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn new(n: usize, entries: Vec<i64>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::InvalidArgument(format!(
                "expected {} entries for a {n}×{n} matrix, got {}",
                n * n,
                entries.len()
            )));
        }
        if let Some(e) = entries.iter().find(|&&e| e < 0) {
            return Err(Error::InvalidArgument(format!("negative entry {e}")));
        }
        Ok(IntMatrix { n, entries })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("rows of unequal length".into()));
        }
        IntMatrix::new(n, rows.concat())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n).map(<[i64]>::to_vec).collect()
    }

    /// Monic characteristic polynomial `det(xI − A)`.
    pub fn char_poly(&self) -> Result<IntPolynomial> {
        let wide: Vec<i128> = self.entries.iter().map(|&e| e as i128).collect();
        IntPolynomial::new(char_poly(&wide, self.n)?)
    }

    fn adjacency(&self) -> Vec<Vec<bool>> {
        self.rows()
            .iter()
            .map(|r| r.iter().map(|&e| e > 0).collect())
            .collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(i64::to_string).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Verdict of [`is_aperiodic`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Aperiodicity {
    /// `A^exponent > 0` and no smaller power is positive.
    Aperiodic { exponent: usize },
    /// Strongly connected with cycle-length gcd `period > 1`.
    Periodic { period: usize },
    NotStronglyConnected,
}

impl Aperiodicity {
    pub fn is_aperiodic(&self) -> bool {
        matches!(self, Aperiodicity::Aperiodic { .. })
    }

    pub fn exponent(&self) -> Option<usize> {
        match self {
            Aperiodicity::Aperiodic { exponent } => Some(*exponent),
            _ => None,
        }
    }
}

/// Graph test: strong connectivity, then the gcd of cycle lengths from BFS
/// levels. The exponent comes from Boolean powering up to the Wielandt
/// bound `(n − 1)² + 1`, which must agree with the graph verdict.
pub fn is_aperiodic(m: &IntMatrix) -> Aperiodicity {
    let verdict = graph_verdict(m);
    let exponent = primitivity_exponent(m);
    debug_assert_eq!(verdict.is_none(), exponent.is_some(), "graph and powering disagree on {m}");
    match (verdict, exponent) {
        (None, Some(exponent)) => Aperiodicity::Aperiodic { exponent },
        (Some(v), _) => v,
        (None, None) => Aperiodicity::Periodic { period: 1 },
    }
}

/// `None` when strongly connected with period one.
fn graph_verdict(m: &IntMatrix) -> Option<Aperiodicity> {
    let n = m.size();
    let adj = m.adjacency();
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for v in 0..n {
                let edge = if forward { adj[u][v] } else { adj[v][u] };
                if edge && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    // a single vertex without a loop carries no closed walk
    if !reach(true) || !reach(false) || (n == 1 && !adj[0][0]) {
        return Some(Aperiodicity::NotStronglyConnected);
    }
    let mut level = vec![usize::MAX; n];
    level[0] = 0;
    let mut queue = std::collections::VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for v in 0..n {
            if adj[u][v] && level[v] == usize::MAX {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let mut period = 0usize;
    for u in 0..n {
        for v in 0..n {
            if adj[u][v] {
                let diff = (level[u] + 1).abs_diff(level[v]);
                period = period.gcd(&diff);
            }
        }
    }
    (period != 1).then_some(Aperiodicity::Periodic { period })
}

/// Least `k ≤ (n − 1)² + 1` with `A^k > 0`, by Boolean powering.
pub fn primitivity_exponent(m: &IntMatrix) -> Option<usize> {
    let n = m.size();
    let adj = m.adjacency();
    let limit = (n - 1) * (n - 1) + 1;
    let mut power = adj.clone();
    for k in 1..=limit {
        if power.iter().all(|r| r.iter().all(|&b| b)) {
            return Some(k);
        }
        let mut next = vec![vec![false; n]; n];
        for i in 0..n {
            for l in 0..n {
                if power[i][l] {
                    for j in 0..n {
                        next[i][j] |= adj[l][j];
                    }
                }
            }
        }
        power = next;
    }
    None
}

/// A non-negative aperiodic matrix whose spectral radius is the Perron
/// root of `lambda_poly`, with its certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct Realization {
    pub matrix: IntMatrix,
    pub lambda_poly: IntPolynomial,
    pub aperiodicity_exponent: usize,
    /// `char(A) / lambda_poly`, monic with integer coefficients.
    pub divisibility_witness: Vec<i128>,
    /// Certified Perron root of `lambda_poly`.
    pub spectral_radius: f64,
}

impl Realization {
    pub fn size(&self) -> usize {
        self.matrix.size()
    }
}

/// Checks exact divisibility `lambda_poly | char(A)`, aperiodicity, and
/// that every root of the cofactor is strictly smaller in modulus than the
/// Perron root.
pub fn certify(matrix: &IntMatrix, lambda_poly: &IntPolynomial) -> Result<Realization> {
    let conj = roots(lambda_poly, DEFAULT_TOL)?;
    if !is_perron(&conj)? {
        return Err(Error::NotPerron);
    }
    let lambda = conj.dominant().copied().ok_or(Error::NotPerron)?;
    certify_with_root(matrix, lambda_poly, lambda.re(), lambda.radius)
}

pub(crate) fn certify_with_root(
    matrix: &IntMatrix,
    lambda_poly: &IntPolynomial,
    lambda: f64,
    radius: f64,
) -> Result<Realization> {
    let chi = matrix.char_poly()?;
    let witness = lambda_poly.divides(chi.coeffs()).ok_or_else(|| {
        Error::InvalidArgument(format!("{lambda_poly} does not divide char(A) = {chi}"))
    })?;
    let exponent = is_aperiodic(matrix).exponent().ok_or_else(|| {
        Error::InvalidArgument(format!("{matrix} is not aperiodic"))
    })?;
    if witness.len() > 1 {
        let q = IntPolynomial::new(witness.clone())?;
        let sqf = IntPolynomial::from_rat_monic(&q.to_rat().squarefree_part())?;
        if sqf.degree() > 0 {
            let others = roots(&sqf, DEFAULT_TOL)?;
            for r in &others.roots {
                let (_, hi) = r.modulus_bounds();
                if hi >= lambda - radius {
                    return Err(Error::Indeterminate(format!(
                        "cofactor root {} is not certifiably below the Perron root",
                        r.value
                    )));
                }
            }
        }
    }
    Ok(Realization {
        matrix: matrix.clone(),
        lambda_poly: lambda_poly.clone(),
        aperiodicity_exponent: exponent,
        divisibility_witness: witness,
        spectral_radius: lambda,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn aperiodicity_examples() {
        assert_eq!(is_aperiodic(&m(&[&[1, 1], &[1, 0]])), Aperiodicity::Aperiodic { exponent: 2 });
        assert_eq!(is_aperiodic(&m(&[&[0, 1], &[1, 0]])), Aperiodicity::Periodic { period: 2 });
        assert_eq!(is_aperiodic(&m(&[&[1, 1], &[0, 1]])), Aperiodicity::NotStronglyConnected);
        assert_eq!(is_aperiodic(&m(&[&[0]])), Aperiodicity::NotStronglyConnected);
        assert_eq!(is_aperiodic(&m(&[&[3]])), Aperiodicity::Aperiodic { exponent: 1 });
    }

    #[test]
    fn wielandt_matrix_attains_the_bound() {
        // cycle 0→1→2→0 plus the chord 2→1: exponent (n−1)² + 1 = 5
        let w = m(&[&[0, 1, 0], &[0, 0, 1], &[1, 1, 0]]);
        assert_eq!(is_aperiodic(&w), Aperiodicity::Aperiodic { exponent: 5 });
    }

    #[test]
    fn rejects_negative_entries() {
        assert!(IntMatrix::new(1, vec![-1]).is_err());
        assert!(IntMatrix::new(2, vec![1, 1, 1]).is_err());
    }

    #[test]
    fn certificates() {
        let f = parse_poly("-1,-1,1").unwrap();
        let r = certify(&m(&[&[1, 1], &[1, 0]]), &f).unwrap();
        assert_eq!(r.divisibility_witness, vec![1]);
        assert_eq!(r.aperiodicity_exponent, 2);
        // x⁴ − x − 2 = (x³ − x² + x − 2)(x + 1)
        let g = parse_poly("-2,1,-1,1").unwrap();
        let a = m(&[&[0, 0, 0, 1], &[0, 0, 1, 0], &[1, 0, 0, 0], &[0, 2, 1, 0]]);
        let r = certify(&a, &g).unwrap();
        assert_eq!(r.divisibility_witness, vec![1, 1]);
        assert!(certify(&m(&[&[0, 1], &[1, 0]]), &parse_poly("-1,1").unwrap()).is_err());
    }
}
