//! The mixed complex `(Ω̄Ã, b̃, B̃)` of a finite-dimensional algebra `A`.
//!
//! For `n >= 1`, `Ω̄ⁿ = A^{⊗(n+1)} ⊕ A^{⊗n}` (top part first) and
//! `Ω̄⁰ = A`. Tensor words are indexed lexicographically, first letter most
//! significant. On `Ω̄ⁿ`:
//!
//! ```text
//! b̃(x, y) = (b x + (1 - λ) y, -b' y)
//! B̃(x, y) = (0, N_λ x)
//! ```

use rayon::prelude::*;

use crate::algebra::{Algebra, AlgebraError, AlgebraHom};
use crate::linalg::{Accumulator, Rational, SparseMatrix, SparseVec};

/// Default cap on the dimension of a single chain space.
pub const DEFAULT_MAX_CHAIN_DIM: usize = 1 << 21;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("tensor degree {0} is out of range (must be at least 1)")]
    DegreeOutOfRange(usize),
    #[error("chain space of dimension {required} exceeds the cap {cap}")]
    SizeCapExceeded { required: usize, cap: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Lexicographic indexing of the `dimⁿ` tensor words of degree `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TensorWordIndex {
    pub dim: usize,
    pub degree: usize,
}

impl TensorWordIndex {
    pub fn new(dim: usize, degree: usize) -> Self {
        TensorWordIndex { dim, degree }
    }

    pub fn len(&self) -> usize {
        self.dim.pow(self.degree as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn encode(&self, word: &[usize]) -> usize {
        debug_assert_eq!(word.len(), self.degree);
        word.iter().fold(0, |acc, &l| acc * self.dim + l)
    }

    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut w = vec![0; self.degree];
        for slot in w.iter_mut().rev() {
            *slot = idx % self.dim;
            idx /= self.dim;
        }
        w
    }
}

/// `dim^n`, or `None` on overflow.
fn tensor_len(dim: usize, n: usize) -> Option<usize> {
    dim.checked_pow(n as u32)
}

/// Dimension of `Ω̄ⁿ`.
pub fn chain_dim(dim: usize, n: usize) -> Option<usize> {
    if n == 0 {
        Some(dim)
    } else {
        tensor_len(dim, n + 1)?.checked_add(tensor_len(dim, n)?)
    }
}

fn check_degree(n: usize) -> Result<(), ComplexError> {
    if n == 0 {
        Err(ComplexError::DegreeOutOfRange(n))
    } else {
        Ok(())
    }
}

fn build_columns(count: usize, f: impl Fn(usize) -> SparseVec + Sync + Send) -> Vec<SparseVec> {
    (0..count).into_par_iter().map(f).collect()
}

/// Alternating sum of adjacent products; shared by `b` and `b'`.
fn bar_terms(a: &Algebra, word: &[usize], out: &mut Accumulator, out_index: &TensorWordIndex) {
    let n = word.len();
    let mut target = vec![0usize; n - 1];
    for i in 0..n - 1 {
        // 0-based i multiplies letters i, i+1; sign (-1)^i
        let sign = if i % 2 == 0 { Rational::ONE } else { -Rational::ONE };
        target[..i].copy_from_slice(&word[..i]);
        target[i + 1..].copy_from_slice(&word[i + 2..]);
        for (k, c) in a.product(word[i], word[i + 1]) {
            target[i] = *k;
            out.add(out_index.encode(&target), &(&sign * c));
        }
    }
}

/// The Hochschild boundary `b: A^{⊗n} -> A^{⊗(n-1)}`. For `n = 1` the
/// target is the zero space.
pub fn hochschild_b(a: &Algebra, n: usize) -> Result<SparseMatrix, ComplexError> {
    check_degree(n)?;
    let src = TensorWordIndex::new(a.dim(), n);
    if n == 1 {
        return Ok(SparseMatrix::zeros(0, src.len()));
    }
    let dst = TensorWordIndex::new(a.dim(), n - 1);
    let wrap_sign = if (n - 1) % 2 == 0 { Rational::ONE } else { -Rational::ONE };
    let cols = build_columns(src.len(), |j| {
        let word = src.decode(j);
        let mut acc = Accumulator::new();
        bar_terms(a, &word, &mut acc, &dst);
        let mut target = word[..n - 1].to_vec();
        for (k, c) in a.product(word[n - 1], word[0]) {
            target[0] = *k;
            acc.add(dst.encode(&target), &(&wrap_sign * c));
        }
        acc.finish()
    });
    Ok(SparseMatrix::from_columns(dst.len(), cols))
}

/// The bar boundary `b': A^{⊗n} -> A^{⊗(n-1)}` (no wrap-around term).
pub fn bar_bprime(a: &Algebra, n: usize) -> Result<SparseMatrix, ComplexError> {
    check_degree(n)?;
    let src = TensorWordIndex::new(a.dim(), n);
    if n == 1 {
        return Ok(SparseMatrix::zeros(0, src.len()));
    }
    let dst = TensorWordIndex::new(a.dim(), n - 1);
    let cols = build_columns(src.len(), |j| {
        let mut acc = Accumulator::new();
        bar_terms(a, &src.decode(j), &mut acc, &dst);
        acc.finish()
    });
    Ok(SparseMatrix::from_columns(dst.len(), cols))
}

/// `λ(a₁⊗…⊗aₙ) = (-1)^{n-1} aₙ⊗a₁⊗…⊗aₙ₋₁`.
pub fn cyclic_lambda(a: &Algebra, n: usize) -> Result<SparseMatrix, ComplexError> {
    lambda_power(a, n, 1)
}

fn rotate_index(idx: &TensorWordIndex, j: usize, power: usize) -> usize {
    let w = idx.decode(j);
    let n = w.len();
    let mut r = vec![0; n];
    for (i, slot) in r.iter_mut().enumerate() {
        *slot = w[(i + n - power % n) % n];
    }
    idx.encode(&r)
}

fn lambda_sign(n: usize, power: usize) -> Rational {
    if (n - 1) * power % 2 == 0 {
        Rational::ONE
    } else {
        -Rational::ONE
    }
}

fn lambda_power(a: &Algebra, n: usize, power: usize) -> Result<SparseMatrix, ComplexError> {
    check_degree(n)?;
    let idx = TensorWordIndex::new(a.dim(), n);
    let sign = lambda_sign(n, power);
    let cols = build_columns(idx.len(), |j| vec![(rotate_index(&idx, j, power), sign.clone())]);
    Ok(SparseMatrix::from_columns(idx.len(), cols))
}

/// `N_λ = Σ_{i<n} λⁱ`.
pub fn norm_n(a: &Algebra, n: usize) -> Result<SparseMatrix, ComplexError> {
    check_degree(n)?;
    let idx = TensorWordIndex::new(a.dim(), n);
    let cols = build_columns(idx.len(), |j| {
        let mut acc = Accumulator::new();
        for p in 0..n {
            acc.add(rotate_index(&idx, j, p), &lambda_sign(n, p));
        }
        acc.finish()
    });
    Ok(SparseMatrix::from_columns(idx.len(), cols))
}

/// `1 - λ` on `A^{⊗n}`.
pub fn one_minus_lambda(a: &Algebra, n: usize) -> Result<SparseMatrix, ComplexError> {
    let lam = cyclic_lambda(a, n)?;
    Ok(SparseMatrix::identity(lam.ncols()).sub(&lam).expect("square"))
}

/// Shape of `Ω̄ⁿ`: sizes of the top and (for `n >= 1`) bottom parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainSpace {
    pub degree: usize,
    pub top: usize,
    pub bottom: usize,
}

impl ChainSpace {
    pub fn new(algebra_dim: usize, degree: usize) -> Self {
        let top = algebra_dim.pow(degree as u32 + 1);
        let bottom = if degree == 0 { 0 } else { algebra_dim.pow(degree as u32) };
        ChainSpace { degree, top, bottom }
    }

    pub fn dim(&self) -> usize {
        self.top + self.bottom
    }

    fn parts(&self) -> Vec<usize> {
        if self.degree == 0 {
            vec![self.top]
        } else {
            vec![self.top, self.bottom]
        }
    }
}

/// The truncated mixed complex: spaces `Ω̄⁰..=Ω̄^{n_max}`, `b̃ₙ` for every
/// degree (with `b̃₀` the map to the zero space) and `B̃ₙ` for `n < n_max`.
#[derive(Debug, Clone)]
pub struct MixedComplex {
    algebra: Algebra,
    n_max: usize,
    spaces: Vec<ChainSpace>,
    b_tilde: Vec<SparseMatrix>,
    big_b_tilde: Vec<SparseMatrix>,
}

/// Mixed complex up to `n_max` with the default size cap.
pub fn build_mixed_complex(a: &Algebra, n_max: usize) -> Result<MixedComplex, ComplexError> {
    build_mixed_complex_capped(a, n_max, DEFAULT_MAX_CHAIN_DIM)
}

pub fn build_mixed_complex_capped(a: &Algebra, n_max: usize, max_chain_dim: usize) -> Result<MixedComplex, ComplexError> {
    let required = chain_dim(a.dim(), n_max).unwrap_or(usize::MAX);
    if required > max_chain_dim {
        return Err(ComplexError::SizeCapExceeded { required, cap: max_chain_dim });
    }
    let spaces: Vec<ChainSpace> = (0..=n_max).map(|n| ChainSpace::new(a.dim(), n)).collect();

    // Building blocks indexed by tensor degree 1..=n_max+1.
    let tensor_degrees: Vec<usize> = (1..=n_max + 1).collect();
    let bs: Vec<SparseMatrix> = tensor_degrees.iter().map(|&k| hochschild_b(a, k)).collect::<Result<_, _>>()?;
    let bps: Vec<SparseMatrix> = tensor_degrees.iter().map(|&k| bar_bprime(a, k)).collect::<Result<_, _>>()?;
    let oml: Vec<SparseMatrix> = tensor_degrees.iter().map(|&k| one_minus_lambda(a, k)).collect::<Result<_, _>>()?;
    let norms: Vec<SparseMatrix> = tensor_degrees.iter().map(|&k| norm_n(a, k)).collect::<Result<_, _>>()?;
    let t = |k: usize| k - 1;

    let mut b_tilde = Vec::with_capacity(n_max + 1);
    b_tilde.push(SparseMatrix::zeros(0, spaces[0].dim()));
    for n in 1..=n_max {
        let (src, dst) = (spaces[n], spaces[n - 1]);
        let neg_bp = bps[t(n)].scale(&-Rational::ONE);
        let blocks: Vec<Vec<Option<&SparseMatrix>>> = if n == 1 {
            vec![vec![Some(&bs[t(2)]), None]]
        } else {
            vec![vec![Some(&bs[t(n + 1)]), Some(&oml[t(n)])], vec![None, Some(&neg_bp)]]
        };
        let m = SparseMatrix::from_blocks(&dst.parts(), &src.parts(), &blocks).expect("block shapes agree");
        b_tilde.push(m);
    }

    let mut big_b_tilde = Vec::with_capacity(n_max);
    for n in 0..n_max {
        let (src, dst) = (spaces[n], spaces[n + 1]);
        let mut row_top = vec![None; src.parts().len()];
        let mut row_bottom = vec![None; src.parts().len()];
        row_bottom[0] = Some(&norms[t(n + 1)]);
        row_top[0] = None;
        let m = SparseMatrix::from_blocks(&dst.parts(), &src.parts(), &[row_top, row_bottom]).expect("block shapes agree");
        big_b_tilde.push(m);
    }

    Ok(MixedComplex { algebra: a.clone(), n_max, spaces, b_tilde, big_b_tilde })
}

impl MixedComplex {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn space(&self, n: usize) -> ChainSpace {
        self.spaces[n]
    }

    pub fn dim(&self, n: usize) -> usize {
        self.spaces[n].dim()
    }

    /// `b̃ₙ: Ω̄ⁿ -> Ω̄ⁿ⁻¹`; `b̃₀` has zero rows.
    pub fn b_tilde(&self, n: usize) -> &SparseMatrix {
        &self.b_tilde[n]
    }

    /// `B̃ₙ: Ω̄ⁿ -> Ω̄ⁿ⁺¹`, defined for `n < n_max`.
    pub fn big_b_tilde(&self, n: usize) -> Option<&SparseMatrix> {
        self.big_b_tilde.get(n)
    }

    /// Replaces `b̃ₙ`; intended for mutation tests.
    pub fn with_b_tilde(mut self, n: usize, m: SparseMatrix) -> Self {
        assert_eq!((m.nrows(), m.ncols()), (self.b_tilde[n].nrows(), self.b_tilde[n].ncols()));
        self.b_tilde[n] = m;
        self
    }

    /// Replaces `B̃ₙ`; intended for mutation tests.
    pub fn with_big_b_tilde(mut self, n: usize, m: SparseMatrix) -> Self {
        assert_eq!((m.nrows(), m.ncols()), (self.big_b_tilde[n].nrows(), self.big_b_tilde[n].ncols()));
        self.big_b_tilde[n] = m;
        self
    }
}

/// Outcome of one identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    Pass,
    /// First nonzero entry of the composite.
    Fail { row: usize, col: usize, value: Rational },
    NotApplicable,
}

impl Check {
    fn of_zero(m: &SparseMatrix) -> Check {
        match m.first_nonzero() {
            None => Check::Pass,
            Some((row, col, value)) => Check::Fail { row, col, value },
        }
    }

    fn of_equal(a: &SparseMatrix, b: &SparseMatrix) -> Check {
        Check::of_zero(&a.sub(b).expect("same shape"))
    }

    pub fn passed(&self) -> bool {
        !matches!(self, Check::Fail { .. })
    }
}

/// `b̃² = 0`, `b̃B̃ + B̃b̃ = 0`, `B̃² = 0` on `Ω̄ⁿ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeIdentities {
    pub degree: usize,
    pub b_squared: Check,
    pub anticommutator: Check,
    pub big_b_squared: Check,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub n_max: usize,
    pub degrees: Vec<DegreeIdentities>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.degrees.iter().all(|d| d.b_squared.passed() && d.anticommutator.passed() && d.big_b_squared.passed())
    }
}

/// Checks the three mixed-complex identities in every degree where the
/// composites are defined within the truncation.
pub fn verify_mixed_identities(mc: &MixedComplex) -> IdentityReport {
    let n_max = mc.n_max;
    let degrees = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let b_squared = if n >= 1 {
                Check::of_zero(&mc.b_tilde(n - 1).matmul(mc.b_tilde(n)).expect("composable"))
            } else {
                Check::NotApplicable
            };
            let anticommutator = if n < n_max {
                let bb = mc.b_tilde(n + 1).matmul(mc.big_b_tilde(n).expect("n < n_max")).expect("composable");
                let sum = if n >= 1 {
                    let rev = mc.big_b_tilde(n - 1).expect("n - 1 < n_max").matmul(mc.b_tilde(n)).expect("composable");
                    bb.add(&rev).expect("same shape")
                } else {
                    bb
                };
                Check::of_zero(&sum)
            } else {
                Check::NotApplicable
            };
            let big_b_squared = if n + 1 < n_max {
                let bb = mc.big_b_tilde(n + 1).expect("in range").matmul(mc.big_b_tilde(n).expect("in range"));
                Check::of_zero(&bb.expect("composable"))
            } else {
                Check::NotApplicable
            };
            DegreeIdentities { degree: n, b_squared, anticommutator, big_b_squared }
        })
        .collect();
    IdentityReport { n_max, degrees }
}

/// The classical relations among `b`, `b'`, `λ`, `N_λ` in one tensor degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicRelations {
    pub tensor_degree: usize,
    /// `λⁿ = 1`.
    pub lambda_order: Check,
    /// `N_λ (1 - λ) = 0` and `(1 - λ) N_λ = 0`.
    pub norm_kills: Check,
    /// `(1 - λ) b' = b (1 - λ)` (from this degree to the one below).
    pub b_lambda: Check,
    /// `N_λ b = b' N_λ`.
    pub norm_b: Check,
}

/// Verifies the cyclic bicomplex relations for tensor degrees `1..=max_tensor`.
pub fn verify_cyclic_relations(a: &Algebra, max_tensor: usize) -> Result<Vec<CyclicRelations>, ComplexError> {
    (1..=max_tensor)
        .map(|n| {
            let lam = cyclic_lambda(a, n)?;
            let id = SparseMatrix::identity(lam.ncols());
            let mut pow = id.clone();
            for _ in 0..n {
                pow = lam.matmul(&pow).expect("square");
            }
            let lambda_order = Check::of_equal(&pow, &id);
            let oml = one_minus_lambda(a, n)?;
            let norm = norm_n(a, n)?;
            let k1 = Check::of_zero(&norm.matmul(&oml).expect("square"));
            let norm_kills = if k1.passed() { Check::of_zero(&oml.matmul(&norm).expect("square")) } else { k1 };
            let (b_lambda, norm_b) = if n >= 2 {
                let b = hochschild_b(a, n)?;
                let bp = bar_bprime(a, n)?;
                let oml_low = one_minus_lambda(a, n - 1)?;
                let norm_low = norm_n(a, n - 1)?;
                (
                    Check::of_equal(&oml_low.matmul(&bp).expect("shapes"), &b.matmul(&oml).expect("shapes")),
                    Check::of_equal(&norm_low.matmul(&b).expect("shapes"), &bp.matmul(&norm).expect("shapes")),
                )
            } else {
                (Check::NotApplicable, Check::NotApplicable)
            };
            Ok(CyclicRelations { tensor_degree: n, lambda_order, norm_kills, b_lambda, norm_b })
        })
        .collect()
}

/// `f^{⊗k}` as a matrix on tensor words.
fn tensor_power(f: &SparseMatrix, k: usize) -> SparseMatrix {
    let mut out = f.clone();
    for _ in 1..k {
        out = out.kron(f);
    }
    out
}

/// Degree-wise chain map `Ω̄ⁿ(source) -> Ω̄ⁿ(target)`: `f^{⊗(n+1)} ⊕ f^{⊗n}`.
pub fn induced_chain_map(f: &AlgebraHom, n_max: usize) -> Result<Vec<SparseMatrix>, ComplexError> {
    if let Some((i, j)) = f.multiplicativity_failure() {
        return Err(AlgebraError::NotMultiplicative(i, j).into());
    }
    let (ds, dt) = (f.source().dim(), f.target().dim());
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let required = chain_dim(ds.max(dt), n).unwrap_or(usize::MAX);
        if required > DEFAULT_MAX_CHAIN_DIM {
            return Err(ComplexError::SizeCapExceeded { required, cap: DEFAULT_MAX_CHAIN_DIM });
        }
        let top = tensor_power(f.matrix(), n + 1);
        if n == 0 {
            out.push(top);
        } else {
            let bottom = tensor_power(f.matrix(), n);
            let (src, dst) = (ChainSpace::new(ds, n), ChainSpace::new(dt, n));
            out.push(
                SparseMatrix::from_blocks(&dst.parts(), &src.parts(), &[vec![Some(&top), None], vec![None, Some(&bottom)]])
                    .expect("block shapes agree"),
            );
        }
    }
    Ok(out)
}
