//! Exhaustive enumeration of `M_n(Z/dZ)` and of residue polynomials.
//!
//! Matrices are indexed by a little-endian odometer over the row-major
//! entry list: index `Σ_j e_j · d^j`, so entry `(0, 0)` turns fastest.
//! The order is fixed so sweeps are reproducible and can be split into
//! disjoint index ranges for independent workers.

use std::ops::Range;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::matrix::{MatMod, ModKernel};
use crate::poly::ModPoly;

pub const DEFAULT_BUDGET: u64 = 100_000_000;
pub const BUDGET_ENV: &str = "INTMAT_BUDGET";

/// Upper bound on the number of candidates an exhaustive sweep may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

impl Budget {
    /// The default, overridden by `INTMAT_BUDGET` when it parses.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Budget)
            .unwrap_or_default()
    }

    /// `base^exp` if it fits the budget, otherwise [`Error::BudgetExceeded`].
    pub fn check_power(&self, base: u64, exp: usize) -> Result<u64> {
        let required = BigUint::from(base).pow(exp as u32);
        self.check(&required)
    }

    pub fn check(&self, required: &BigUint) -> Result<u64> {
        match required.to_u64() {
            Some(v) if v <= self.0 => Ok(v),
            _ => Err(Error::BudgetExceeded {
                required: required.to_string(),
                budget: self.0,
            }),
        }
    }
}

/// The finite set `M_n(Z/dZ)` with its odometer indexing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixSpace {
    n: usize,
    d: u64,
    total: u64,
}

impl MatrixSpace {
    pub fn new(n: usize, d: u64, budget: Budget) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        let _ = crate::ring::Zmod::new(d)?;
        let total = budget.check_power(d, n * n)?;
        Ok(Self { n, d, total })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.d
    }

    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Writes the entries of matrix number `index` into `out`.
    pub fn decode(&self, mut index: u64, out: &mut [u64]) {
        for e in out.iter_mut() {
            *e = index % self.d;
            index /= self.d;
        }
    }

    pub fn matrix(&self, index: u64) -> MatMod {
        let mut e = vec![0; self.n * self.n];
        self.decode(index, &mut e);
        MatMod::from_reduced(self.n, self.d, e)
    }

    /// Splits `0..len` into `parts` contiguous ranges of near-equal size.
    pub fn partition(&self, parts: usize) -> Vec<Range<u64>> {
        partition(self.total, parts)
    }

    /// All matrices in index order, optionally only those with
    /// characteristic polynomial `filter`.
    pub fn iter(&self, filter: Option<&ModPoly>) -> Result<MatrixIter> {
        self.range(0..self.total, filter)
    }

    pub fn range(&self, range: Range<u64>, filter: Option<&ModPoly>) -> Result<MatrixIter> {
        if let Some(p) = filter {
            check_filter(self, p)?;
        }
        let mut entries = vec![0; self.n * self.n];
        self.decode(range.start, &mut entries);
        Ok(MatrixIter {
            space: *self,
            next: range.start,
            end: range.end.min(self.total),
            entries,
            filter: filter.map(|p| p.coeffs().to_vec()),
            kernel: ModKernel::new(self.n, self.d)?,
        })
    }
}

fn check_filter(space: &MatrixSpace, p: &ModPoly) -> Result<()> {
    if p.modulus() != space.d {
        return Err(Error::InvalidArgument(format!(
            "filter polynomial is modulo {}, matrices modulo {}",
            p.modulus(),
            space.d
        )));
    }
    if !p.is_monic() || p.degree() != Some(space.n) {
        return Err(Error::NotMonic(p.to_string()));
    }
    Ok(())
}

pub fn partition(total: u64, parts: usize) -> Vec<Range<u64>> {
    let parts = parts.max(1) as u64;
    let (base, extra) = (total / parts, total % parts);
    let mut start = 0;
    (0..parts)
        .map(|i| {
            let len = base + u64::from(i < extra);
            let r = start..start + len;
            start += len;
            r
        })
        .collect()
}

/// Iterator over a range of [`MatrixSpace`].
pub struct MatrixIter {
    space: MatrixSpace,
    next: u64,
    end: u64,
    entries: Vec<u64>,
    filter: Option<Vec<u64>>,
    kernel: ModKernel,
}

impl MatrixIter {
    fn advance(&mut self) {
        self.next += 1;
        for e in self.entries.iter_mut() {
            *e += 1;
            if *e < self.space.d {
                break;
            }
            *e = 0;
        }
    }
}

impl Iterator for MatrixIter {
    type Item = MatMod;

    fn next(&mut self) -> Option<MatMod> {
        while self.next < self.end {
            let keep = match &self.filter {
                None => true,
                Some(p) => self.kernel.char_poly(&self.entries) == &p[..],
            };
            let current = keep.then(|| MatMod::from_reduced(self.space.n, self.space.d, self.entries.clone()));
            self.advance();
            if current.is_some() {
                return current;
            }
        }
        None
    }
}

/// `enumerate_matrices(n, d, filter)` as a stream in odometer order.
pub fn enumerate_matrices(n: usize, d: u64, filter: Option<&ModPoly>, budget: Budget) -> Result<MatrixIter> {
    MatrixSpace::new(n, d, budget)?.iter(filter)
}

/// What a sweep predicate says about one matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    /// Not a candidate (e.g. filtered out by characteristic polynomial).
    Skip,
    Pass,
    Fail,
}

/// Result of an exhaustive sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepOutcome {
    /// Smallest failing index, if any.
    pub first_failure: Option<u64>,
    /// Matrices visited in index order up to and including the first
    /// failure, or the whole space.
    pub swept: u64,
    /// Candidates (non-skipped matrices) among those.
    pub candidates: u64,
}

/// Runs `predicate` over every matrix in `space` using `jobs` workers.
///
/// The outcome does not depend on `jobs`: the reported failure is the one
/// with the smallest index, and counts are taken up to it.
pub fn sweep<F>(space: &MatrixSpace, jobs: usize, predicate: F) -> SweepOutcome
where
    F: Fn(&mut ModKernel, &[u64]) -> Step + Sync,
{
    let best = AtomicU64::new(u64::MAX);
    let ranges = space.partition(jobs.max(1));
    let run = |range: Range<u64>| -> (Range<u64>, Option<u64>, u64) {
        let mut kernel = ModKernel::new(space.n, space.d).expect("validated space");
        let mut entries = vec![0; space.n * space.n];
        space.decode(range.start, &mut entries);
        let mut candidates = 0;
        for index in range.clone() {
            if index & 0xfff == 0 && index > best.load(Ordering::Relaxed) {
                break;
            }
            match predicate(&mut kernel, &entries) {
                Step::Skip => {}
                Step::Pass => candidates += 1,
                Step::Fail => {
                    candidates += 1;
                    best.fetch_min(index, Ordering::Relaxed);
                    return (range, Some(index), candidates);
                }
            }
            for e in entries.iter_mut() {
                *e += 1;
                if *e < space.d {
                    break;
                }
                *e = 0;
            }
        }
        (range, None, candidates)
    };

    let results: Vec<(Range<u64>, Option<u64>, u64)> = if ranges.len() == 1 {
        ranges.into_iter().map(run).collect()
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = ranges
                .into_iter()
                .map(|r| {
                    let run = &run;
                    s.spawn(move || run(r))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("sweep worker panicked"))
                .collect()
        })
    };

    let first_failure = results.iter().filter_map(|r| r.1).min();
    let limit = first_failure.unwrap_or(u64::MAX);
    let candidates = results
        .iter()
        .filter(|(range, _, _)| range.start <= limit)
        .map(|r| r.2)
        .sum();
    SweepOutcome {
        first_failure,
        swept: first_failure.map_or(space.total, |f| f + 1),
        candidates,
    }
}

/// Every polynomial over Z/dZ of degree at most `bound` that annihilates `m`.
///
/// Polynomials are enumerated by the same little-endian odometer over
/// their coefficient lists, so the zero polynomial comes first.
pub fn null_ideal_scan(m: &MatMod, bound: usize, budget: Budget) -> Result<Vec<ModPoly>> {
    let d = m.modulus();
    let total = budget.check_power(d, bound + 1)?;
    let mut kernel = ModKernel::new(m.dim(), d)?;
    let mut coeffs = vec![0u64; bound + 1];
    let mut out = Vec::new();
    for _ in 0..total {
        if kernel.annihilates(&coeffs, m.entries()) {
            out.push(ModPoly::from_residues(d, coeffs.clone())?);
        }
        for c in coeffs.iter_mut() {
            *c += 1;
            if *c < d {
                break;
            }
            *c = 0;
        }
    }
    Ok(out)
}

/// All monic residue polynomials of degree `n` over Z/dZ, in odometer
/// order of their lower coefficients.
pub fn monic_residues(n: usize, d: u64, budget: Budget) -> Result<Vec<ModPoly>> {
    let total = budget.check_power(d, n)?;
    let mut low = vec![0u64; n];
    let mut out = Vec::with_capacity(total as usize);
    for _ in 0..total {
        let mut c = low.clone();
        c.push(1);
        out.push(ModPoly::from_residues(d, c)?);
        for x in low.iter_mut() {
            *x += 1;
            if *x < d {
                break;
            }
            *x = 0;
        }
    }
    Ok(out)
}

/// Non-decreasing tuples `a_0 ≤ … ≤ a_{k-1}` over `[0, d)`, i.e. multisets.
pub fn multisets(k: usize, d: u64) -> Vec<Vec<u64>> {
    fn rec(k: usize, d: u64, start: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for a in start..d {
            cur.push(a);
            rec(k, d, a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, d, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Number of multisets of size `k` from `d` symbols, `C(d + k - 1, k)`.
pub fn multiset_count(k: usize, d: u64) -> BigUint {
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for i in 0..k as u64 {
        num *= d + i;
        den *= i + 1;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_spaces() {
        let all: Vec<MatMod> = enumerate_matrices(1, 3, None, Budget::default()).unwrap().collect();
        let got: Vec<u64> = all.iter().map(|m| m.get(0, 0)).collect();
        assert_eq!(got, vec![0, 1, 2]);
        assert_eq!(enumerate_matrices(2, 2, None, Budget::default()).unwrap().count(), 16);
    }

    #[test]
    fn odometer_order_starts_at_top_left() {
        let s = MatrixSpace::new(2, 2, Budget::default()).unwrap();
        assert_eq!(s.matrix(1).entries(), &[1, 0, 0, 0]);
        assert_eq!(s.matrix(2).entries(), &[0, 1, 0, 0]);
        assert_eq!(s.matrix(15).entries(), &[1, 1, 1, 1]);
    }

    #[test]
    fn filter_by_trace_and_det() {
        let p = ModPoly::from_residues(2, vec![0, 1, 1]).unwrap();
        let filtered = enumerate_matrices(2, 2, Some(&p), Budget::default()).unwrap().count();
        let direct = enumerate_matrices(2, 2, None, Budget::default())
            .unwrap()
            .filter(|m| {
                let tr = (m.get(0, 0) + m.get(1, 1)) % 2;
                let det = (m.get(0, 0) * m.get(1, 1) + m.get(0, 1) * m.get(1, 0)) % 2;
                tr == 1 && det == 0
            })
            .count();
        assert_eq!(filtered, direct);
        assert_eq!(filtered, 6);
    }

    #[test]
    fn budget_is_a_hard_error() {
        let err = MatrixSpace::new(3, 10, Budget(1_000_000)).unwrap_err();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                required: "1000000000".into(),
                budget: 1_000_000
            }
        );
    }

    #[test]
    fn null_ideal_examples() {
        let zero = MatMod::new(2, 3, vec![0; 4]).unwrap();
        let ann = null_ideal_scan(&zero, 1, Budget::default()).unwrap();
        assert_eq!(ann.len(), 3);
        assert!(ann.iter().all(|g| g.coeffs().first().is_none_or(|&c| c == 0)));

        let id = MatMod::new(2, 2, vec![1, 0, 0, 1]).unwrap();
        let ann = null_ideal_scan(&id, 1, Budget::default()).unwrap();
        let got: Vec<Vec<u64>> = ann.iter().map(|g| g.coeffs().to_vec()).collect();
        assert_eq!(got, vec![vec![], vec![1, 1]]);
    }

    #[test]
    fn partitions_cover_exactly() {
        for parts in 1..7 {
            let r = partition(17, parts);
            assert_eq!(r.first().unwrap().start, 0);
            assert_eq!(r.last().unwrap().end, 17);
            for w in r.windows(2) {
                assert_eq!(w[0].end, w[1].start);
            }
        }
    }

    #[test]
    fn sweep_is_independent_of_jobs() {
        let s = MatrixSpace::new(2, 3, Budget::default()).unwrap();
        let pred = |_: &mut ModKernel, e: &[u64]| -> Step {
            if e[0] == 0 {
                Step::Skip
            } else if e == [2, 1, 2, 1] || e == [1, 2, 2, 2] {
                Step::Fail
            } else {
                Step::Pass
            }
        };
        let base = sweep(&s, 1, pred);
        for jobs in 2..6 {
            assert_eq!(sweep(&s, jobs, pred), base);
        }
        assert_eq!(base.first_failure, Some(2 + 3 + 18 + 27));
    }

    #[test]
    fn multiset_counts() {
        for d in 1..5u64 {
            for k in 0..4 {
                assert_eq!(BigUint::from(multisets(k, d).len()), multiset_count(k, d));
            }
        }
    }
}
