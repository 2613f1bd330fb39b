//! Exact sparse linear algebra over the rationals.

pub mod dense;
mod echelon;
mod rational;
mod sparse;

pub use echelon::{rank, ranks, ColumnEchelon};
pub use rational::{ParseRationalError, Rational};
pub use sparse::{axpy, from_dense, scale_vec, to_dense, Accumulator, SparseMatrix, SparseVec};


#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    IndexOutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("composite of differentials is nonzero: entry ({row}, {col}) = {value}")]
    CompositionNonzero { row: usize, col: usize, value: Rational },
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
}

/// A linear subspace of `Q^ambient` given by an independent basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    /// Checks independence of `basis`.
    pub fn new(ambient: usize, basis: Vec<SparseVec>) -> Result<Self, LinalgError> {
        let m = SparseMatrix::from_columns(ambient, basis.clone());
        if rank(&m) != basis.len() {
            return Err(LinalgError::DependentBasis);
        }
        Ok(Subspace { ambient, basis })
    }

    pub(crate) fn new_unchecked(ambient: usize, basis: Vec<SparseVec>) -> Self {
        Subspace { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn dense_basis(&self) -> Vec<Vec<Rational>> {
        self.basis.iter().map(|v| to_dense(v, self.ambient)).collect()
    }

    /// Basis vectors as the columns of a matrix.
    pub fn as_matrix(&self) -> SparseMatrix {
        SparseMatrix::from_columns(self.ambient, self.basis.clone())
    }
}

/// Null space of `m`; one basis vector per non-pivot column.
pub fn kernel_basis(m: &SparseMatrix) -> Subspace {
    let ech = ColumnEchelon::new(m);
    Subspace::new_unchecked(m.ncols(), ech.kernel().to_vec())
}

/// Column space of `m`, spanned by its pivot columns.
pub fn image_basis(m: &SparseMatrix) -> Subspace {
    let ech = ColumnEchelon::rank_only(m);
    let basis = ech.pivot_columns().into_iter().map(|j| m.col(j).to_vec()).collect();
    Subspace::new_unchecked(m.nrows(), basis)
}

/// Particular solution of `m x = v` with free variables zero, or `Ok(None)`
/// when `v` is not in the column space.
pub fn solve(m: &SparseMatrix, v: &[Rational]) -> Result<Option<Vec<Rational>>, LinalgError> {
    echelon::check_rhs(m, v.len())?;
    let ech = ColumnEchelon::new(m);
    Ok(ech.solve_sparse(&from_dense(v)).map(|x| to_dense(&x, m.ncols())))
}

/// `d_out ∘ d_in`, or the first nonzero entry of it.
pub fn check_composition(d_in: &SparseMatrix, d_out: &SparseMatrix) -> Result<(), LinalgError> {
    let prod = d_out.matmul(d_in)?;
    match prod.first_nonzero() {
        None => Ok(()),
        Some((row, col, value)) => Err(LinalgError::CompositionNonzero { row, col, value }),
    }
}

/// `dim ker(d_out) - rank(d_in)` for `d_in: C_{n+1} -> C_n`, `d_out: C_n -> C_{n-1}`.
pub fn homology_dimension(d_in: &SparseMatrix, d_out: &SparseMatrix) -> Result<usize, LinalgError> {
    if d_out.ncols() != d_in.nrows() {
        return Err(LinalgError::DimensionMismatch { expected: d_out.ncols(), found: d_in.nrows() });
    }
    check_composition(d_in, d_out)?;
    let r = ranks(&[d_out, d_in]);
    Ok(d_out.ncols() - r[0] - r[1])
}
