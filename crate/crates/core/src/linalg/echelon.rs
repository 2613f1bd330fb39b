//! Sparse column elimination.
//!
//! Pivot rule: columns are processed left to right. Each column is reduced
//! against the pivots found so far by repeatedly cancelling its first
//! (smallest row index) nonzero entry. A column that does not reduce to zero
//! becomes a pivot keyed by that first row. The pivot columns are therefore
//! the leftmost linearly independent columns, and particular solutions of
//! `m x = v` are supported on them (free variables are zero).

use rayon::prelude::*;

use super::rational::Rational;
use super::sparse::{axpy, SparseMatrix, SparseVec};
use super::LinalgError;

#[derive(Debug, Clone)]
struct Pivot {
    col: usize,
    reduced: SparseVec,
    /// `reduced = m * combo`; only kept when tracking.
    combo: SparseVec,
}

/// Column echelon form of a matrix, reusable for many solves.
#[derive(Debug, Clone)]
pub struct ColumnEchelon {
    rows: usize,
    cols: usize,
    pivots: Vec<Pivot>,
    by_lead: Vec<Option<u32>>,
    kernel: Vec<SparseVec>,
    tracked: bool,
    /// Columns before this index start with an empty combination.
    track_from: usize,
}

impl ColumnEchelon {
    /// Full elimination, tracking column combinations (needed for `solve`
    /// and the kernel).
    pub fn new(m: &SparseMatrix) -> Self {
        Self::build(m, true)
    }

    /// Rank-only elimination; `solve` and `kernel` are unavailable.
    pub fn rank_only(m: &SparseMatrix) -> Self {
        Self::build(m, false)
    }

    /// Tracks combinations of the columns `first..` only: `solve_sparse`
    /// then returns the coefficients on those columns of some solution, with
    /// the untracked columns absorbing the rest. The kernel is not recorded.
    pub fn tracking_from(m: &SparseMatrix, first: usize) -> Self {
        let mut ech = Self::empty(m, true, first.min(m.ncols()));
        ech.eliminate(m);
        ech
    }

    fn empty(m: &SparseMatrix, tracked: bool, track_from: usize) -> Self {
        ColumnEchelon {
            rows: m.nrows(),
            cols: m.ncols(),
            pivots: Vec::new(),
            by_lead: vec![None; m.nrows()],
            kernel: Vec::new(),
            tracked,
            track_from,
        }
    }

    fn build(m: &SparseMatrix, tracked: bool) -> Self {
        let mut ech = Self::empty(m, tracked, 0);
        ech.eliminate(m);
        ech
    }

    fn eliminate(&mut self, m: &SparseMatrix) {
        for j in 0..m.ncols() {
            let own = self.tracked && j >= self.track_from;
            let combo = if own { vec![(j - self.track_from, Rational::ONE)] } else { Vec::new() };
            let (reduced, combo) = self.reduce(m.col(j).to_vec(), combo);
            match reduced.first() {
                None => {
                    if self.tracked && self.track_from == 0 {
                        self.kernel.push(combo);
                    }
                }
                Some((lead, _)) => {
                    self.by_lead[*lead] = Some(self.pivots.len() as u32);
                    self.pivots.push(Pivot { col: j, reduced, combo });
                }
            }
        }
    }

    /// Cancels leading entries against pivots until the lead is not a pivot
    /// row (or the vector vanishes). `combo` is updated in step.
    fn reduce(&self, mut v: SparseVec, mut combo: SparseVec) -> (SparseVec, SparseVec) {
        while let Some((lead, x)) = v.first() {
            let Some(p) = self.by_lead[*lead] else { break };
            let p = &self.pivots[p as usize];
            let factor = -(x / &p.reduced[0].1);
            v = axpy(&v, &factor, &p.reduced);
            if self.tracked {
                combo = axpy(&combo, &factor, &p.combo);
            }
        }
        (v, combo)
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    /// Indices of the pivot columns, increasing.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.iter().map(|p| p.col).collect()
    }

    /// Kernel basis: one vector per non-pivot column `j`, with coefficient 1
    /// at `j` and support otherwise on pivot columns left of `j`.
    pub fn kernel(&self) -> &[SparseVec] {
        assert!(self.tracked && self.track_from == 0, "kernel requested from a partial elimination");
        &self.kernel
    }

    /// True when `v` lies in the column span.
    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone(), Vec::new()).0.is_empty()
    }

    /// Residual of `v` after reduction; zero iff `v` is in the span.
    pub fn residual(&self, v: &SparseVec) -> SparseVec {
        self.reduce(v.clone(), Vec::new()).0
    }

    /// Particular solution of `m x = v`, or `None` when `v` is outside the
    /// column space.
    pub fn solve_sparse(&self, v: &SparseVec) -> Option<SparseVec> {
        assert!(self.tracked, "solve requested from a rank-only elimination");
        let mut v = v.clone();
        let mut x: SparseVec = Vec::new();
        while let Some((lead, c)) = v.first() {
            let p = self.by_lead[*lead]?;
            let p = &self.pivots[p as usize];
            let factor = c / &p.reduced[0].1;
            v = axpy(&v, &-factor.clone(), &p.reduced);
            x = axpy(&x, &factor, &p.combo);
        }
        Some(x)
    }
}

/// Exact rank. Reduces whichever of rows/columns is the shorter list.
pub fn rank(m: &SparseMatrix) -> usize {
    if m.nrows() < m.ncols() {
        ColumnEchelon::rank_only(&m.transpose()).rank()
    } else {
        ColumnEchelon::rank_only(m).rank()
    }
}

/// Ranks of several matrices in parallel.
pub fn ranks(ms: &[&SparseMatrix]) -> Vec<usize> {
    ms.par_iter().map(|m| rank(m)).collect()
}

pub(super) fn check_rhs(m: &SparseMatrix, len: usize) -> Result<(), LinalgError> {
    if len != m.nrows() {
        return Err(LinalgError::DimensionMismatch { expected: m.nrows(), found: len });
    }
    Ok(())
}
