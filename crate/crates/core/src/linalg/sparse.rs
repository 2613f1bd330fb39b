use std::collections::BTreeMap;

use super::rational::Rational;
use super::LinalgError;

/// A sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Rational)>;

/// `x + scale * y` on sparse vectors.
pub fn axpy(x: &[(usize, Rational)], scale: &Rational, y: &[(usize, Rational)]) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i].clone());
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            out.push((y[j].0, scale * &y[j].1));
            j += 1;
        } else {
            let v = &x[i].1 + &(scale * &y[j].1);
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale_vec(v: &[(usize, Rational)], s: &Rational) -> SparseVec {
    if s.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * s)).collect()
}

pub fn to_dense(v: &[(usize, Rational)], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::ZERO; len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn from_dense(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Accumulates `(index, value)` contributions into a canonical sparse vector.
#[derive(Debug, Default, Clone)]
pub struct Accumulator(BTreeMap<usize, Rational>);

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, idx: usize, v: &Rational) {
        if v.is_zero() {
            return;
        }
        let e = self.0.entry(idx).or_insert(Rational::ZERO);
        *e += v;
    }

    pub fn finish(self) -> SparseVec {
        self.0.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }
}

/// Column-major sparse matrix over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<SparseVec>,
}

impl std::fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SparseMatrix({}x{}, nnz={})", self.rows, self.ncols(), self.nnz())
    }
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { rows: n, cols: (0..n).map(|i| vec![(i, Rational::ONE)]).collect() }
    }

    /// Builds from triplets; duplicates are summed and zeros dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self, LinalgError> {
        let mut acc: Vec<Accumulator> = vec![Accumulator::new(); cols];
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(LinalgError::IndexOutOfRange { row: r, col: c, rows, cols });
            }
            acc[c].add(r, &v);
        }
        Ok(SparseMatrix { rows, cols: acc.into_iter().map(Accumulator::finish).collect() })
    }

    /// Builds from already-canonical columns.
    pub fn from_columns(rows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| {
            c.windows(2).all(|w| w[0].0 < w[1].0)
                && c.iter().all(|(i, v)| *i < rows && !v.is_zero())
        }));
        SparseMatrix { rows, cols }
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut cols = vec![Vec::new(); ncols];
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    cols[j].push((i, v.clone()));
                }
            }
        }
        SparseMatrix { rows: nrows, cols }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rational>> =
            rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect();
        Self::from_dense(&dense)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn col(&self, j: usize) -> &[(usize, Rational)] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn into_columns(self) -> Vec<SparseVec> {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.cols[c].binary_search_by_key(&r, |e| e.0) {
            Ok(k) => self.cols[c][k].1.clone(),
            Err(_) => Rational::ZERO,
        }
    }

    /// Entries in column-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.cols.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::ZERO; self.ncols()]; self.rows];
        for (r, c, v) in self.triplets() {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.rows];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                cols[*r].push((c, v.clone()));
            }
        }
        SparseMatrix { rows: self.ncols(), cols }
    }

    pub fn mul_sparse_vec(&self, v: &[(usize, Rational)]) -> SparseVec {
        let mut acc = Accumulator::new();
        for (j, x) in v {
            for (i, a) in &self.cols[*j] {
                acc.add(*i, &(a * x));
            }
        }
        acc.finish()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if v.len() != self.ncols() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ncols(),
                found: v.len(),
            });
        }
        let mut out = vec![Rational::ZERO; self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, a) in &self.cols[j] {
                out[*i] += &(a * x);
            }
        }
        Ok(out)
    }

    /// `self * other`.
    pub fn matmul(&self, other: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        if self.ncols() != other.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.ncols(), found: other.rows });
        }
        let cols = other.cols.iter().map(|c| self.mul_sparse_vec(c)).collect();
        Ok(SparseMatrix { rows: self.rows, cols })
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        self.add_scaled(&Rational::ONE, other)
    }

    pub fn sub(&self, other: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        self.add_scaled(&-Rational::ONE, other)
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, s: &Rational, other: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        if self.rows != other.rows || self.ncols() != other.ncols() {
            return Err(LinalgError::ShapeMismatch {
                left: (self.rows, self.ncols()),
                right: (other.rows, other.ncols()),
            });
        }
        let cols = self.cols.iter().zip(&other.cols).map(|(a, b)| axpy(a, s, b)).collect();
        Ok(SparseMatrix { rows: self.rows, cols })
    }

    pub fn scale(&self, s: &Rational) -> SparseMatrix {
        SparseMatrix { rows: self.rows, cols: self.cols.iter().map(|c| scale_vec(c, s)).collect() }
    }

    /// First nonzero entry in column-major order, if any.
    pub fn first_nonzero(&self) -> Option<(usize, usize, Rational)> {
        self.triplets().next().map(|(r, c, v)| (r, c, v.clone()))
    }

    /// Block matrix from a grid of optional blocks. `row_sizes[i]` and
    /// `col_sizes[j]` fix the block shapes; `None` blocks are zero.
    pub fn from_blocks(
        row_sizes: &[usize],
        col_sizes: &[usize],
        blocks: &[Vec<Option<&SparseMatrix>>],
    ) -> Result<SparseMatrix, LinalgError> {
        let row_off: Vec<usize> = offsets(row_sizes);
        let total_rows = row_sizes.iter().sum();
        let mut cols: Vec<SparseVec> = Vec::with_capacity(col_sizes.iter().sum());
        for (bj, &w) in col_sizes.iter().enumerate() {
            for c in 0..w {
                let mut col = Vec::new();
                for (bi, &h) in row_sizes.iter().enumerate() {
                    if let Some(b) = blocks.get(bi).and_then(|r| r.get(bj)).copied().flatten() {
                        if b.rows != h || b.ncols() != w {
                            return Err(LinalgError::ShapeMismatch {
                                left: (h, w),
                                right: (b.rows, b.ncols()),
                            });
                        }
                        col.extend(b.cols[c].iter().map(|(r, v)| (r + row_off[bi], v.clone())));
                    }
                }
                cols.push(col);
            }
        }
        Ok(SparseMatrix { rows: total_rows, cols })
    }

    /// Kronecker product; index `(i1, i2)` maps to `i1 * rows(other) + i2`.
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut cols = Vec::with_capacity(self.ncols() * other.ncols());
        for a in &self.cols {
            for b in &other.cols {
                let mut col = Vec::with_capacity(a.len() * b.len());
                for (i, x) in a {
                    for (k, y) in b {
                        col.push((i * other.rows + k, x * y));
                    }
                }
                cols.push(col);
            }
        }
        SparseMatrix { rows: self.rows * other.rows, cols }
    }

    /// Replaces one entry; used by mutation tests.
    pub fn with_entry(&self, r: usize, c: usize, v: Rational) -> SparseMatrix {
        let mut out = self.clone();
        let col = &mut out.cols[c];
        match col.binary_search_by_key(&r, |e| e.0) {
            Ok(k) if v.is_zero() => {
                col.remove(k);
            }
            Ok(k) => col[k].1 = v,
            Err(k) if !v.is_zero() => col.insert(k, (r, v)),
            Err(_) => {}
        }
        out
    }
}

pub(crate) fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    sizes
        .iter()
        .map(|s| {
            let o = acc;
            acc += s;
            o
        })
        .collect()
}
