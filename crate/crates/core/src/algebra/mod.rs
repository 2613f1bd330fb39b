//! Finite-dimensional associative algebras over Q given by structure
//! constants, and homomorphisms between them.

mod group;
mod invariant;

pub use group::{group_algebra, hecke_algebra, hecke_inclusion, FiniteGroup, HeckeAlgebra, Subgroup};
pub use invariant::{
    average_section, invariant_function_algebra, invariant_matrix_function_algebra,
    GroupActionWithCocycle,
};

use crate::linalg::{self, Accumulator, ColumnEchelon, Rational, SparseMatrix, SparseVec};

/// Default cap on algebra dimension for derived constructions.
pub const DEFAULT_DIM_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("structure constant e{i}*e{j} refers to basis index {k} outside dimension {dim}")]
    IndexOutOfRange { i: usize, j: usize, k: usize, dim: usize },
    #[error("malformed algebra: {0}")]
    Malformed(String),
    #[error("not associative: (e{0}*e{1})*e{2} != e{0}*(e{1}*e{2})")]
    NotAssociative(usize, usize, usize),
    #[error("declared unit fails on basis element e{0}")]
    BadUnit(usize),
    #[error("dimension {requested} exceeds the cap {cap}")]
    OverflowGuard { requested: usize, cap: usize },
    #[error("map is not multiplicative on basis pair (e{0}, e{1})")]
    NotMultiplicative(usize, usize),
    #[error("map has shape {found:?}, expected {expected:?}")]
    BadShape { expected: (usize, usize), found: (usize, usize) },
    #[error("change-of-basis matrix is singular")]
    Singular,
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("invalid cocycle data: {0}")]
    CocycleInvalid(String),
}

/// A finite-dimensional algebra: `e_i * e_j = sum_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    labels: Vec<String>,
    table: Vec<SparseVec>,
    unit: Option<Vec<Rational>>,
}

impl Algebra {
    /// Builds an algebra from `table[i][j]` (canonicalised) and checks index
    /// ranges and the unit. Associativity is checked separately.
    pub fn new(
        labels: Vec<String>,
        table: Vec<Vec<SparseVec>>,
        unit: Option<Vec<Rational>>,
    ) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        if table.len() != dim || table.iter().any(|row| row.len() != dim) {
            return Err(AlgebraError::Malformed(format!("table must be {dim}x{dim}")));
        }
        let mut flat = Vec::with_capacity(dim * dim);
        for (i, row) in table.into_iter().enumerate() {
            for (j, entry) in row.into_iter().enumerate() {
                let mut acc = Accumulator::new();
                for (k, c) in entry {
                    if k >= dim {
                        return Err(AlgebraError::IndexOutOfRange { i, j, k, dim });
                    }
                    acc.add(k, &c);
                }
                flat.push(acc.finish());
            }
        }
        if let Some(u) = &unit {
            if u.len() != dim {
                return Err(AlgebraError::Malformed(format!(
                    "unit has {} coordinates, expected {dim}",
                    u.len()
                )));
            }
        }
        let a = Algebra { labels, table: flat, unit };
        a.check_unit()?;
        Ok(a)
    }

    /// `new` followed by the associativity check.
    pub fn validated(
        labels: Vec<String>,
        table: Vec<Vec<SparseVec>>,
        unit: Option<Vec<Rational>>,
    ) -> Result<Self, AlgebraError> {
        let a = Self::new(labels, table, unit)?;
        if let Some((i, j, k)) = check_associativity(&a) {
            return Err(AlgebraError::NotAssociative(i, j, k));
        }
        Ok(a)
    }

    fn check_unit(&self) -> Result<(), AlgebraError> {
        let Some(u) = &self.unit else { return Ok(()) };
        for i in 0..self.dim() {
            let e = basis_vector(self.dim(), i);
            if self.mul(u, &e) != e || self.mul(&e, u) != e {
                return Err(AlgebraError::BadUnit(i));
            }
        }
        Ok(())
    }

    /// The zero algebra.
    pub fn zero() -> Self {
        Algebra { labels: Vec::new(), table: Vec::new(), unit: None }
    }

    /// Q itself, basis `{1}`.
    pub fn ground_field() -> Self {
        Algebra {
            labels: vec!["1".into()],
            table: vec![vec![(0, Rational::ONE)]],
            unit: Some(vec![Rational::ONE]),
        }
    }

    /// Q[x]/(x^2), basis `{1, x}`.
    pub fn dual_numbers() -> Self {
        let one = Rational::ONE;
        Algebra::new(
            vec!["1".into(), "x".into()],
            vec![
                vec![vec![(0, one.clone())], vec![(1, one.clone())]],
                vec![vec![(1, one.clone())], vec![]],
            ],
            Some(vec![one, Rational::ZERO]),
        )
        .expect("dual numbers are well formed")
    }

    /// Upper triangular 2x2 matrices, basis `{e11, e12, e22}`.
    pub fn upper_triangular_2() -> Self {
        let one = Rational::ONE;
        let e = |k: usize| vec![(k, Rational::ONE)];
        Algebra::new(
            vec!["e11".into(), "e12".into(), "e22".into()],
            vec![
                vec![e(0), e(1), vec![]],
                vec![vec![], vec![], e(1)],
                vec![vec![], vec![], e(2)],
            ],
            Some(vec![one.clone(), Rational::ZERO, one]),
        )
        .expect("triangular matrices are well formed")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> Option<&[Rational]> {
        self.unit.as_deref()
    }

    /// Structure constants of `e_i * e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i * self.dim() + j]
    }

    /// Product of two coordinate vectors.
    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let d = self.dim();
        let mut out = vec![Rational::ZERO; d];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in self.product(i, j) {
                    out[*k] += &(&ab * c);
                }
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// Table as nested `[i][j]` lists.
    pub fn table(&self) -> Vec<Vec<SparseVec>> {
        let d = self.dim();
        (0..d).map(|i| (0..d).map(|j| self.product(i, j).to_vec()).collect()).collect()
    }

    /// Returns a copy with one structure constant replaced; used to build
    /// deliberately broken inputs.
    pub fn with_structure_constant(&self, i: usize, j: usize, k: usize, c: Rational) -> Algebra {
        let mut table = self.table();
        table[i][j].retain(|(idx, _)| *idx != k);
        table[i][j].push((k, c));
        table[i][j].sort_by_key(|e| e.0);
        table[i][j].retain(|(_, v)| !v.is_zero());
        Algebra { labels: self.labels.clone(), table: flatten(table), unit: None }
    }

    /// The same algebra in the basis `f_j = sum_i p[i][j] e_i`.
    pub fn rebased(&self, p: &SparseMatrix) -> Result<Algebra, AlgebraError> {
        let d = self.dim();
        if p.nrows() != d || p.ncols() != d {
            return Err(AlgebraError::BadShape { expected: (d, d), found: (p.nrows(), p.ncols()) });
        }
        let ech = ColumnEchelon::new(p);
        if ech.rank() != d {
            return Err(AlgebraError::Singular);
        }
        let coords = |v: &[Rational]| -> SparseVec {
            ech.solve_sparse(&linalg::from_dense(v)).expect("invertible change of basis")
        };
        let cols: Vec<Vec<Rational>> = (0..d).map(|j| linalg::to_dense(p.col(j), d)).collect();
        let table = (0..d)
            .map(|a| (0..d).map(|b| coords(&self.mul(&cols[a], &cols[b]))).collect())
            .collect();
        let unit = self.unit.as_ref().map(|u| linalg::to_dense(&coords(u), d));
        let labels = (0..d).map(|j| format!("f{j}")).collect();
        Algebra::new(labels, table, unit)
    }
}

fn flatten(table: Vec<Vec<SparseVec>>) -> Vec<SparseVec> {
    table.into_iter().flatten().collect()
}

pub(crate) fn basis_vector(dim: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::ZERO; dim];
    v[i] = Rational::ONE;
    v
}

/// First basis triple `(i, j, k)` violating associativity, or `None`.
pub fn check_associativity(a: &Algebra) -> Option<(usize, usize, usize)> {
    let d = a.dim();
    let times_right = |x: &[(usize, Rational)], k: usize| -> SparseVec {
        let mut acc = Accumulator::new();
        for (m, c) in x {
            for (l, c2) in a.product(*m, k) {
                acc.add(*l, &(c * c2));
            }
        }
        acc.finish()
    };
    let times_left = |i: usize, x: &[(usize, Rational)]| -> SparseVec {
        let mut acc = Accumulator::new();
        for (m, c) in x {
            for (l, c2) in a.product(i, *m) {
                acc.add(*l, &(c * c2));
            }
        }
        acc.finish()
    };
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let left = times_right(a.product(i, j), k);
                let right = times_left(i, a.product(j, k));
                if left != right {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// Unitization `Q ⊕ A` with the adjoined unit as basis vector 0.
pub fn unitize(a: &Algebra) -> Algebra {
    let d = a.dim();
    let mut labels = vec!["1~".to_string()];
    labels.extend(a.labels.iter().cloned());
    let shift = |v: &[(usize, Rational)]| -> SparseVec { v.iter().map(|(k, c)| (k + 1, c.clone())).collect() };
    let mut table = vec![vec![Vec::new(); d + 1]; d + 1];
    table[0][0] = vec![(0, Rational::ONE)];
    for i in 0..d {
        table[0][i + 1] = vec![(i + 1, Rational::ONE)];
        table[i + 1][0] = vec![(i + 1, Rational::ONE)];
        for j in 0..d {
            table[i + 1][j + 1] = shift(a.product(i, j));
        }
    }
    Algebra::new(labels, table, Some(basis_vector(d + 1, 0))).expect("unitization is well formed")
}

/// The embedding `A -> Ã`.
pub fn unitization_embedding(a: &Algebra) -> AlgebraHom {
    let target = unitize(a);
    let m = SparseMatrix::from_columns(a.dim() + 1, (0..a.dim()).map(|i| vec![(i + 1, Rational::ONE)]).collect());
    AlgebraHom::new(a.clone(), target, m).expect("unitization embedding is multiplicative")
}

/// `M_n(A)` with basis `e_pq ⊗ a_i` at index `(p*n + q)*dim + i`.
pub fn matrix_algebra(a: &Algebra, n: usize) -> Result<Algebra, AlgebraError> {
    matrix_algebra_capped(a, n, DEFAULT_DIM_CAP)
}

pub fn matrix_algebra_capped(a: &Algebra, n: usize, cap: usize) -> Result<Algebra, AlgebraError> {
    let d = a.dim();
    let total = n
        .checked_mul(n)
        .and_then(|x| x.checked_mul(d))
        .ok_or(AlgebraError::OverflowGuard { requested: usize::MAX, cap })?;
    if total > cap {
        return Err(AlgebraError::OverflowGuard { requested: total, cap });
    }
    let idx = |p: usize, q: usize, i: usize| (p * n + q) * d + i;
    let mut labels = Vec::with_capacity(total);
    for p in 0..n {
        for q in 0..n {
            for l in &a.labels {
                labels.push(if n == 1 { l.clone() } else { format!("E{}{}({l})", p + 1, q + 1) });
            }
        }
    }
    let mut table = vec![vec![Vec::new(); total]; total];
    for p in 0..n {
        for q in 0..n {
            for i in 0..d {
                for s in 0..n {
                    for j in 0..d {
                        // (e_pq ⊗ a)(e_qs ⊗ b) = e_ps ⊗ ab; other pairs vanish
                        table[idx(p, q, i)][idx(q, s, j)] =
                            a.product(i, j).iter().map(|(k, c)| (idx(p, s, *k), c.clone())).collect();
                    }
                }
            }
        }
    }
    let unit = a.unit.as_ref().map(|u| {
        let mut v = vec![Rational::ZERO; total];
        for p in 0..n {
            for (i, c) in u.iter().enumerate() {
                v[idx(p, p, i)] = c.clone();
            }
        }
        v
    });
    Algebra::new(labels, table, unit)
}

/// `A ⊕ B` with `A`'s basis first.
pub fn direct_sum(a: &Algebra, b: &Algebra) -> Algebra {
    let (da, db) = (a.dim(), b.dim());
    let mut labels: Vec<String> = a.labels.iter().map(|l| format!("{l}⊕0")).collect();
    labels.extend(b.labels.iter().map(|l| format!("0⊕{l}")));
    let mut table = vec![vec![Vec::new(); da + db]; da + db];
    for i in 0..da {
        for j in 0..da {
            table[i][j] = a.product(i, j).to_vec();
        }
    }
    for i in 0..db {
        for j in 0..db {
            table[da + i][da + j] = b.product(i, j).iter().map(|(k, c)| (k + da, c.clone())).collect();
        }
    }
    let unit = match (&a.unit, &b.unit) {
        (Some(u), Some(v)) => Some(u.iter().chain(v).cloned().collect()),
        (Some(u), None) if db == 0 => Some(u.clone()),
        (None, Some(v)) if da == 0 => Some(v.clone()),
        _ => None,
    };
    Algebra::new(labels, table, unit).expect("direct sum is well formed")
}

/// A linear map between algebras that is multiplicative on basis pairs.
/// Units need not be preserved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraHom {
    source: Algebra,
    target: Algebra,
    matrix: SparseMatrix,
}

impl AlgebraHom {
    pub fn new(source: Algebra, target: Algebra, matrix: SparseMatrix) -> Result<Self, AlgebraError> {
        let f = AlgebraHom { source, target, matrix };
        f.check_shape()?;
        if let Some((i, j)) = f.multiplicativity_failure() {
            return Err(AlgebraError::NotMultiplicative(i, j));
        }
        Ok(f)
    }

    /// Skips the multiplicativity check (shape is still enforced).
    pub fn new_unchecked(source: Algebra, target: Algebra, matrix: SparseMatrix) -> Result<Self, AlgebraError> {
        let f = AlgebraHom { source, target, matrix };
        f.check_shape()?;
        Ok(f)
    }

    fn check_shape(&self) -> Result<(), AlgebraError> {
        let expected = (self.target.dim(), self.source.dim());
        let found = (self.matrix.nrows(), self.matrix.ncols());
        if expected != found {
            return Err(AlgebraError::BadShape { expected, found });
        }
        Ok(())
    }

    pub fn identity(a: &Algebra) -> Self {
        AlgebraHom { source: a.clone(), target: a.clone(), matrix: SparseMatrix::identity(a.dim()) }
    }

    pub fn zero(source: &Algebra, target: &Algebra) -> Self {
        AlgebraHom {
            source: source.clone(),
            target: target.clone(),
            matrix: SparseMatrix::zeros(target.dim(), source.dim()),
        }
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        self.matrix.mul_vec(x).expect("hom applied to a vector of the source dimension")
    }

    /// First basis pair with `f(e_i e_j) != f(e_i) f(e_j)`.
    pub fn multiplicativity_failure(&self) -> Option<(usize, usize)> {
        let d = self.source.dim();
        let images: Vec<Vec<Rational>> = (0..d).map(|i| self.apply(&basis_vector(d, i))).collect();
        for i in 0..d {
            for j in 0..d {
                let prod = linalg::to_dense(self.source.product(i, j), d);
                if self.apply(&prod) != self.target.mul(&images[i], &images[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_injective(&self) -> bool {
        linalg::rank(&self.matrix) == self.source.dim()
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &AlgebraHom) -> Result<AlgebraHom, AlgebraError> {
        if g.source != self.target {
            return Err(AlgebraError::Malformed("composition of non-matching homomorphisms".into()));
        }
        let matrix = g.matrix.matmul(&self.matrix).expect("shapes agree");
        Ok(AlgebraHom { source: self.source.clone(), target: g.target.clone(), matrix })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn associativity_examples() {
        let z2 = group_algebra(&FiniteGroup::cyclic(2));
        assert_eq!(check_associativity(&z2), None);
        let m2 = matrix_algebra(&Algebra::ground_field(), 2).unwrap();
        assert_eq!(check_associativity(&m2), None);
        // g*g = 2e still gives the associative algebra Q[g]/(g^2 - 2)
        let rescaled = z2.with_structure_constant(1, 1, 0, q(2));
        assert_eq!(check_associativity(&rescaled), None);
        // e*g = 2g breaks it: (e*e)*g = 2g but e*(e*g) = 4g
        let broken = z2.with_structure_constant(0, 1, 1, q(2));
        assert_eq!(check_associativity(&broken), Some((0, 0, 1)));
    }

    #[test]
    fn unitize_examples() {
        assert_eq!(unitize(&Algebra::zero()).dim(), 1);
        let u = unitize(&Algebra::ground_field());
        assert_eq!(u.dim(), 2);
        assert_eq!(u.product(1, 1), &[(1, q(1))]);
        assert_eq!(u.unit().unwrap(), &[q(1), q(0)]);
        assert_eq!(unitize(&Algebra::dual_numbers()).dim(), 3);
        assert_eq!(check_associativity(&unitize(&Algebra::upper_triangular_2())), None);
        let emb = unitization_embedding(&Algebra::dual_numbers());
        assert!(emb.is_injective());
    }

    #[test]
    fn matrix_algebra_examples() {
        let m2 = matrix_algebra(&Algebra::ground_field(), 2).unwrap();
        assert_eq!(m2.dim(), 4);
        // e12 * e21 = e11
        assert_eq!(m2.product(1, 2), &[(0, q(1))]);
        let dual = Algebra::dual_numbers();
        assert_eq!(matrix_algebra(&dual, 1).unwrap().table(), dual.table());
        let m2d = matrix_algebra(&dual, 2).unwrap();
        assert_eq!(m2d.dim(), 8);
        assert_eq!(check_associativity(&m2d), None);
        assert!(matches!(
            matrix_algebra(&dual, 6),
            Err(AlgebraError::OverflowGuard { requested: 72, cap: 64 })
        ));
    }

    #[test]
    fn direct_sum_examples() {
        let dual = Algebra::dual_numbers();
        let s = direct_sum(&dual, &Algebra::zero());
        assert_eq!(s.table(), dual.table());
        assert_eq!(s.unit(), dual.unit());
        let ff = direct_sum(&Algebra::ground_field(), &Algebra::ground_field());
        assert_eq!(ff.dim(), 2);
        assert!(ff.is_commutative());
        assert!(ff.product(0, 1).is_empty());
        assert_eq!(check_associativity(&ff), None);
    }

    #[test]
    fn rebased_preserves_structure() {
        let t = Algebra::upper_triangular_2();
        let p = SparseMatrix::from_i64_rows(&[&[1, 1, 0], &[0, 1, 2], &[1, 0, 1]]);
        let r = t.rebased(&p).unwrap();
        assert_eq!(check_associativity(&r), None);
        assert!(r.unit().is_some());
        assert!(t.rebased(&SparseMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn hom_checks() {
        let a = Algebra::dual_numbers();
        assert!(AlgebraHom::identity(&a).multiplicativity_failure().is_none());
        // x -> 1 is not multiplicative (x^2 = 0 but 1*1 = 1)
        let bad = SparseMatrix::from_i64_rows(&[&[1, 1], &[0, 0]]);
        assert!(matches!(
            AlgebraHom::new(a.clone(), a.clone(), bad),
            Err(AlgebraError::NotMultiplicative(1, 1))
        ));
        assert!(AlgebraHom::new(a.clone(), a, SparseMatrix::identity(3)).is_err());
    }
}
