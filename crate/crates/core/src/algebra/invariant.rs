//! Finite models of invariant sections and invariant (matrix-valued)
//! function algebras for a group acting on a finite set with a cocycle.

use super::{Algebra, AlgebraError, FiniteGroup};
use crate::linalg::dense::{self, DenseMatrix};
use crate::linalg::{self, ColumnEchelon, Rational, SparseMatrix, SparseVec};

/// `W` acting on points `0..points`, with fibre maps `a(w:x): F_x -> F_{wx}`.
#[derive(Debug, Clone)]
pub struct GroupActionWithCocycle {
    group: FiniteGroup,
    /// `action[w][x] = w·x`.
    action: Vec<Vec<usize>>,
    fiber_dim: usize,
    /// `cocycle[w][x] = a(w:x)`.
    cocycle: Vec<Vec<DenseMatrix>>,
}

impl GroupActionWithCocycle {
    /// Validates the action, the cocycle identity
    /// `a(w1 w2 : x) = a(w1 : w2 x) a(w2 : x)`, invertibility and trivial
    /// isotropy in the fibre.
    pub fn new(
        group: FiniteGroup,
        action: Vec<Vec<usize>>,
        fiber_dim: usize,
        cocycle: Vec<Vec<DenseMatrix>>,
    ) -> Result<Self, AlgebraError> {
        let bad = |m: String| Err(AlgebraError::CocycleInvalid(m));
        let n = group.order();
        if action.len() != n || cocycle.len() != n {
            return bad("one permutation and one cocycle row per group element required".into());
        }
        let points = action[0].len();
        for (w, perm) in action.iter().enumerate() {
            let mut seen = vec![false; points];
            if perm.len() != points || perm.iter().any(|&x| x >= points || std::mem::replace(&mut seen[x], true)) {
                return bad(format!("element {w} does not act by a permutation"));
            }
        }
        if action[group.identity()].iter().enumerate().any(|(x, &y)| x != y) {
            return bad("identity acts nontrivially".into());
        }
        for w1 in 0..n {
            for w2 in 0..n {
                let w = group.mul(w1, w2);
                if (0..points).any(|x| action[w][x] != action[w1][action[w2][x]]) {
                    return bad(format!("not an action at ({w1}, {w2})"));
                }
            }
        }
        for (w, row) in cocycle.iter().enumerate() {
            if row.len() != points {
                return bad(format!("cocycle row {w} has {} entries", row.len()));
            }
            for (x, a) in row.iter().enumerate() {
                if a.len() != fiber_dim || a.iter().any(|r| r.len() != fiber_dim) {
                    return bad(format!("a({w}:{x}) is not {fiber_dim}x{fiber_dim}"));
                }
                if dense::inverse(a).is_none() {
                    return bad(format!("a({w}:{x}) is singular"));
                }
                if action[w][x] == x && *a != dense::identity(fiber_dim) {
                    return bad(format!("isotropy element {w} acts nontrivially on the fibre at {x}"));
                }
            }
        }
        for w1 in 0..n {
            for w2 in 0..n {
                let w = group.mul(w1, w2);
                for x in 0..points {
                    let rhs = dense::matmul(&cocycle[w1][action[w2][x]], &cocycle[w2][x]);
                    if cocycle[w][x] != rhs {
                        return bad(format!("cocycle identity fails at ({w1}, {w2}, {x})"));
                    }
                }
            }
        }
        Ok(GroupActionWithCocycle { group, action, fiber_dim, cocycle })
    }

    /// Permutation action with `a(w:x) = 1`.
    pub fn trivial_cocycle(group: FiniteGroup, action: Vec<Vec<usize>>, fiber_dim: usize) -> Result<Self, AlgebraError> {
        let points = action.first().map_or(0, Vec::len);
        let cocycle = vec![vec![dense::identity(fiber_dim); points]; group.order()];
        Self::new(group, action, fiber_dim, cocycle)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn points(&self) -> usize {
        self.action.first().map_or(0, Vec::len)
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_dim
    }

    pub fn act(&self, w: usize, x: usize) -> usize {
        self.action[w][x]
    }

    pub fn cocycle(&self, w: usize, x: usize) -> &DenseMatrix {
        &self.cocycle[w][x]
    }

    /// `|W_x|`.
    pub fn isotropy_order(&self, x: usize) -> usize {
        (0..self.group.order()).filter(|&w| self.action[w][x] == x).count()
    }

    /// Orbits, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits(&self.action, self.points())
    }

    /// True when `s(wx) = a(w:x) s(x)` for all `w`, `x`.
    pub fn is_invariant_section(&self, s: &[Vec<Rational>]) -> bool {
        (0..self.group.order()).all(|w| {
            (0..self.points()).all(|x| s[self.act(w, x)] == dense::matvec(self.cocycle(w, x), &s[x]))
        })
    }
}

fn orbits(action: &[Vec<usize>], points: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; points];
    let mut out = Vec::new();
    for x in 0..points {
        if seen[x] {
            continue;
        }
        let mut orbit: Vec<usize> = action.iter().map(|perm| perm[x]).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &y in &orbit {
            seen[y] = true;
        }
        out.push(orbit);
    }
    out
}

/// `s(x) = sum_w a(w : w^{-1}x) t(w^{-1}x)`.
pub fn average_section(t: &[Vec<Rational>], action: &GroupActionWithCocycle) -> Result<Vec<Vec<Rational>>, AlgebraError> {
    let m = action.fiber_dim();
    if t.len() != action.points() || t.iter().any(|v| v.len() != m) {
        return Err(AlgebraError::CocycleInvalid(format!(
            "section must have {} values of length {m}",
            action.points()
        )));
    }
    let g = action.group();
    let mut s = vec![vec![Rational::ZERO; m]; action.points()];
    for (x, sx) in s.iter_mut().enumerate() {
        for w in 0..g.order() {
            let y = action.act(g.inverse(w), x);
            for (acc, v) in sx.iter_mut().zip(dense::matvec(action.cocycle(w, y), &t[y])) {
                *acc += &v;
            }
        }
    }
    Ok(s)
}

/// W-invariant functions on a finite set under pointwise product; the basis
/// is the orbit indicators ordered by least point.
pub fn invariant_function_algebra(points: usize, group: &FiniteGroup, action: &[Vec<usize>]) -> Result<Algebra, AlgebraError> {
    let act = GroupActionWithCocycle::trivial_cocycle(group.clone(), action.to_vec(), 1)?;
    if act.points() != points {
        return Err(AlgebraError::CocycleInvalid(format!("action is on {} points, expected {points}", act.points())));
    }
    let orbs = act.orbits();
    let n = orbs.len();
    let table = (0..n)
        .map(|i| (0..n).map(|j| if i == j { vec![(i, Rational::ONE)] } else { Vec::new() }).collect())
        .collect();
    let labels = orbs.iter().map(|o| format!("1_{{{}}}", join(o))).collect();
    Algebra::new(labels, table, Some(vec![Rational::ONE; n]))
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// W-invariant `End(Q^m)`-valued functions, `F(wx) = a(w:x) F(x) a(w:x)^{-1}`,
/// under pointwise matrix product.
///
/// A function is stored as the concatenation over points of its row-major
/// `m x m` values. The basis is obtained by averaging matrix units placed at
/// orbit representatives and keeping an independent subset.
pub fn invariant_matrix_function_algebra(action: &GroupActionWithCocycle) -> Result<Algebra, AlgebraError> {
    let m = action.fiber_dim();
    let pts = action.points();
    let g = action.group();
    let len = pts * m * m;
    let inverses: Vec<Vec<DenseMatrix>> = (0..g.order())
        .map(|w| (0..pts).map(|x| dense::inverse(action.cocycle(w, x)).expect("validated")).collect())
        .collect();

    let average = |f: &[DenseMatrix]| -> Vec<DenseMatrix> {
        let mut out = vec![vec![vec![Rational::ZERO; m]; m]; pts];
        for (x, ox) in out.iter_mut().enumerate() {
            for w in 0..g.order() {
                let y = action.act(g.inverse(w), x);
                let conj = dense::matmul(&dense::matmul(action.cocycle(w, y), &f[y]), &inverses[w][y]);
                for (r, row) in conj.into_iter().enumerate() {
                    for (c, v) in row.into_iter().enumerate() {
                        ox[r][c] += &v;
                    }
                }
            }
        }
        out
    };
    let flatten = |f: &[DenseMatrix]| -> SparseVec {
        let dense_vec: Vec<Rational> = f.iter().flat_map(|mat| mat.iter().flatten().cloned()).collect();
        linalg::from_dense(&dense_vec)
    };
    let unflatten = |v: &SparseVec| -> Vec<DenseMatrix> {
        let d = linalg::to_dense(v, len);
        d.chunks(m * m).map(|c| c.chunks(m).map(|r| r.to_vec()).collect()).collect()
    };

    let mut candidates = Vec::new();
    let mut labels = Vec::new();
    for orbit in action.orbits() {
        let x0 = orbit[0];
        let scale = Rational::new(1, action.isotropy_order(x0) as i64);
        for p in 0..m {
            for q in 0..m {
                let mut f = vec![vec![vec![Rational::ZERO; m]; m]; pts];
                f[x0][p][q] = scale.clone();
                candidates.push(flatten(&average(&f)));
                labels.push(format!("E{}{}@{}", p + 1, q + 1, x0));
            }
        }
    }
    let cand_matrix = SparseMatrix::from_columns(len, candidates.clone());
    let keep = ColumnEchelon::rank_only(&cand_matrix).pivot_columns();
    let basis: Vec<SparseVec> = keep.iter().map(|&j| candidates[j].clone()).collect();
    let labels: Vec<String> = keep.iter().map(|&j| labels[j].clone()).collect();
    let ech = ColumnEchelon::new(&SparseMatrix::from_columns(len, basis.clone()));
    let coords = |v: &SparseVec| -> Result<SparseVec, AlgebraError> {
        ech.solve_sparse(v)
            .ok_or_else(|| AlgebraError::CocycleInvalid("invariant functions not closed under product".into()))
    };

    let funcs: Vec<Vec<DenseMatrix>> = basis.iter().map(unflatten).collect();
    let n = basis.len();
    let mut table = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let prod: Vec<DenseMatrix> = (0..pts).map(|x| dense::matmul(&funcs[i][x], &funcs[j][x])).collect();
            table[i][j] = coords(&flatten(&prod))?;
        }
    }
    let one: Vec<DenseMatrix> = vec![dense::identity(m); pts];
    let unit = linalg::to_dense(&coords(&flatten(&one))?, n);
    Algebra::new(labels, table, Some(unit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_associativity, matrix_algebra};

    fn swap_two() -> (FiniteGroup, Vec<Vec<usize>>) {
        (FiniteGroup::cyclic(2), vec![vec![0, 1], vec![1, 0]])
    }

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn trivial_group_average_is_identity() {
        let act = GroupActionWithCocycle::trivial_cocycle(FiniteGroup::cyclic(1), vec![vec![0, 1]], 2).unwrap();
        let t = vec![vec![q(1), q(2)], vec![q(3), q(4)]];
        assert_eq!(average_section(&t, &act).unwrap(), t);
    }

    #[test]
    fn two_point_average() {
        let (g, perm) = swap_two();
        let act = GroupActionWithCocycle::trivial_cocycle(g, perm, 1).unwrap();
        let v = q(7);
        let s = average_section(&[vec![v.clone()], vec![q(0)]], &act).unwrap();
        assert_eq!(s, vec![vec![v.clone()], vec![v]]);
        assert!(act.is_invariant_section(&s));
    }

    #[test]
    fn nontrivial_cocycle_average() {
        // Z/2 swaps two points; a(σ:x) = [[0,1],[1,0]] on both, identity at e.
        let (g, perm) = swap_two();
        let sw: DenseMatrix = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
        let id = dense::identity(2);
        let act = GroupActionWithCocycle::new(g, perm, 2, vec![vec![id.clone(), id], vec![sw.clone(), sw]]).unwrap();
        let t = vec![vec![q(1), q(5)], vec![q(0), q(0)]];
        let s = average_section(&t, &act).unwrap();
        assert_eq!(s, vec![vec![q(1), q(5)], vec![q(5), q(1)]]);
        assert!(act.is_invariant_section(&s));
    }

    #[test]
    fn rejects_bad_cocycles() {
        let (g, perm) = swap_two();
        let two: DenseMatrix = vec![vec![q(2)]];
        let one = dense::identity(1);
        // a(σ:x) = 2 violates a(σ²:x) = a(σ:σx)a(σ:x) = 4 ≠ 1
        let err = GroupActionWithCocycle::new(g.clone(), perm, 1, vec![vec![one.clone(), one.clone()], vec![two.clone(), two.clone()]]);
        assert!(matches!(err, Err(AlgebraError::CocycleInvalid(_))));
        // σ fixes both points but acts by 2 on the fibre
        let fixed = vec![vec![0, 1], vec![0, 1]];
        let err = GroupActionWithCocycle::new(g, fixed, 1, vec![vec![one.clone(), one], vec![two.clone(), two]]);
        assert!(matches!(err, Err(AlgebraError::CocycleInvalid(m)) if m.contains("isotropy")));
    }

    #[test]
    fn invariant_function_algebra_examples() {
        let triv = FiniteGroup::cyclic(1);
        assert_eq!(invariant_function_algebra(3, &triv, &[vec![0, 1, 2]]).unwrap().dim(), 3);
        let (g, perm) = swap_two();
        assert_eq!(invariant_function_algebra(2, &g, &perm).unwrap().dim(), 1);
        let two_cycles = vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2]];
        let b = invariant_function_algebra(4, &g, &two_cycles).unwrap();
        assert_eq!(b.dim(), 2);
        assert!(b.is_commutative());
        assert_eq!(check_associativity(&b), None);
    }

    #[test]
    fn invariant_matrix_function_algebra_examples() {
        let act = GroupActionWithCocycle::trivial_cocycle(FiniteGroup::cyclic(1), vec![vec![0]], 2).unwrap();
        let a = invariant_matrix_function_algebra(&act).unwrap();
        assert_eq!(a.table(), matrix_algebra(&Algebra::ground_field(), 2).unwrap().table());

        let (g, perm) = swap_two();
        let act1 = GroupActionWithCocycle::trivial_cocycle(g.clone(), perm.clone(), 1).unwrap();
        assert_eq!(invariant_matrix_function_algebra(&act1).unwrap().dim(), 1);

        let act2 = GroupActionWithCocycle::trivial_cocycle(g, perm, 2).unwrap();
        let a2 = invariant_matrix_function_algebra(&act2).unwrap();
        assert_eq!(a2.dim(), 4);
        assert_eq!(check_associativity(&a2), None);
        assert_eq!(a2.table(), matrix_algebra(&Algebra::ground_field(), 2).unwrap().table());
    }
}
