//! Bounded exhaustive search for realizing matrices.
//!
//! Matrices are enumerated row by row in lexicographic order. The first
//! row is split across worker threads; the answer is the success from the
//! earliest first row, so the result does not depend on scheduling.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use super::{certify_with_root, IntMatrix, Realization};
use crate::algebra::{roots, IntPolynomial};
use crate::classify::is_perron;
use crate::{Error, Result, DEFAULT_TOL};

/// Default node limit per first-row partition.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub entry_bound: i64,
    /// Maximum number of visited nodes in any one first-row partition.
    pub budget: u64,
}

/// Returns the lexicographically first certified `n × n` realization with
/// entries in `[0, entry_bound]`, or `None` if there is none.
pub fn search_realization(
    poly: &IntPolynomial,
    n: usize,
    entry_bound: i64,
) -> Result<Option<Realization>> {
    search_with_limits(
        poly,
        n,
        SearchLimits {
            entry_bound,
            budget: DEFAULT_BUDGET,
        },
    )
}

pub fn search_with_limits(
    poly: &IntPolynomial,
    n: usize,
    limits: SearchLimits,
) -> Result<Option<Realization>> {
    let d = poly.degree();
    if n < d {
        return Err(Error::InvalidArgument(format!(
            "matrix size {n} is below the degree {d}"
        )));
    }
    if limits.entry_bound < 0 {
        return Err(Error::InvalidArgument("entry bound must be non-negative".into()));
    }
    let conj = roots(poly, DEFAULT_TOL)?;
    if !is_perron(&conj)? {
        return Err(Error::NotPerron);
    }
    let lambda = *conj.dominant().ok_or(Error::NotPerron)?;
    let p1 = poly.power_sums(1)[0].clone();
    let p1: i64 = p1
        .try_into()
        .map_err(|_| Error::Overflow("trace of the polynomial"))?;
    // tr(A) = p₁ + (sum of the n − d cofactor roots), each of modulus < λ
    let slack = (n - d) as f64 * lambda.re();
    let trace_lo = (p1 as f64 - slack).ceil().max(0.0) as i64;
    let trace_hi = (p1 as f64 + slack).floor() as i64;
    let ctx = Context {
        poly,
        n,
        bound: limits.entry_bound,
        budget: limits.budget,
        lambda: lambda.re(),
        radius: lambda.radius,
        trace_lo,
        trace_hi,
    };

    let first_rows = enumerate_rows(n, limits.entry_bound);
    let best = AtomicUsize::new(usize::MAX);
    let results: Vec<Result<Option<Realization>>> = first_rows
        .par_iter()
        .enumerate()
        .map(|(idx, row)| {
            let mut state = State {
                entries: Vec::with_capacity(n * n),
                nodes: 0,
                partition: idx,
                best: &best,
            };
            let out = ctx.start(&mut state, row);
            if let Ok(Some(_)) = out {
                best.fetch_min(idx, Ordering::Relaxed);
            }
            out
        })
        .collect();
    for r in results {
        match r {
            Ok(None) => continue,
            other => return other,
        }
    }
    Ok(None)
}

fn enumerate_rows(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut rows = vec![Vec::new()];
    for _ in 0..n {
        rows = rows
            .into_iter()
            .flat_map(|prefix| {
                (0..=bound).map(move |v| {
                    let mut r = prefix.clone();
                    r.push(v);
                    r
                })
            })
            .collect();
    }
    rows
}

struct Context<'a> {
    poly: &'a IntPolynomial,
    n: usize,
    bound: i64,
    budget: u64,
    lambda: f64,
    radius: f64,
    trace_lo: i64,
    trace_hi: i64,
}

struct State<'a> {
    entries: Vec<i64>,
    nodes: u64,
    partition: usize,
    best: &'a AtomicUsize,
}

impl Context<'_> {
    fn start(&self, state: &mut State, first_row: &[i64]) -> Result<Option<Realization>> {
        if !self.row_ok(0, first_row) {
            return Ok(None);
        }
        state.entries.extend_from_slice(first_row);
        if self.partial_trace_exceeds(&state.entries) {
            return Ok(None);
        }
        self.descend(state)
    }

    /// Every row needs an off-diagonal entry for strong connectivity.
    fn row_ok(&self, i: usize, row: &[i64]) -> bool {
        self.n == 1 || row.iter().enumerate().any(|(j, &v)| j != i && v > 0)
    }

    fn partial_trace_exceeds(&self, entries: &[i64]) -> bool {
        let n = self.n;
        let rows_done = entries.len() / n;
        let trace: i64 = (0..rows_done).map(|i| entries[i * n + i]).sum();
        let remaining_max = (n - rows_done) as i64 * self.bound;
        trace > self.trace_hi || trace + remaining_max < self.trace_lo
    }

    fn descend(&self, state: &mut State) -> Result<Option<Realization>> {
        if state.best.load(Ordering::Relaxed) < state.partition {
            return Ok(None);
        }
        state.nodes += 1;
        if state.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        let n = self.n;
        let len = state.entries.len();
        if len == n * n {
            return self.leaf(&state.entries);
        }
        let i = len / n;
        let j = len % n;
        for v in 0..=self.bound {
            state.entries.push(v);
            let mut ok = true;
            if j == n - 1 {
                ok = self.row_ok(i, &state.entries[i * n..])
                    && !self.partial_trace_exceeds(&state.entries);
            }
            if ok {
                if let Some(r) = self.descend(state)? {
                    return Ok(Some(r));
                }
            }
            state.entries.pop();
        }
        Ok(None)
    }

    fn leaf(&self, entries: &[i64]) -> Result<Option<Realization>> {
        let n = self.n;
        let lam = self.lambda;
        // min row (column) sum ≤ λ ≤ max row (column) sum
        let row_sums: Vec<i64> = entries.chunks(n).map(|r| r.iter().sum()).collect();
        let col_sums: Vec<i64> = (0..n).map(|j| (0..n).map(|i| entries[i * n + j]).sum()).collect();
        for sums in [&row_sums, &col_sums] {
            let lo = *sums.iter().min().unwrap_or(&0) as f64;
            let hi = *sums.iter().max().unwrap_or(&0) as f64;
            if lo > lam + self.radius || hi < lam - self.radius {
                return Ok(None);
            }
            if sums.contains(&0) {
                return Ok(None);
            }
        }
        let m = IntMatrix::new(n, entries.to_vec())?;
        let chi = m.char_poly()?;
        if self.poly.divides(chi.coeffs()).is_none() {
            return Ok(None);
        }
        match certify_with_root(&m, self.poly, self.lambda, self.radius) {
            Ok(r) => Ok(Some(r)),
            Err(Error::InvalidArgument(_)) => Ok(None),
            Err(Error::Indeterminate(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }
}
