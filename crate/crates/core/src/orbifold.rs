//! Betti numbers of torus quotients `T^k / W` for finite `W ⊂ GL(k, ℤ)`.
//!
//! `H^p(T^k; ℚ) = Λ^p ℚ^k`, so the invariant part has dimension
//! `β_p = (1/|W|) Σ_w tr Λ^p(w)`. Traces come from the characteristic
//! polynomial: `tr Λ^p(w) = (-1)^p [λ^{k-p}] det(λI - w)`.

use std::collections::{BTreeSet, HashSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linalg::{dense, rank, Rational, SparseMatrix};

pub const DEFAULT_ORDER_CAP: usize = 10080;

/// Largest rank for which the projector cross-check is run.
pub const PROJECTOR_MAX_RANK: usize = 6;

pub type IntMatrix = Vec<Vec<i64>>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbifoldError {
    #[error("generator {index} of {label:?} is not a {rank}x{rank} matrix")]
    BadShape { label: String, index: usize, rank: usize },
    #[error("generator {index} of {label:?} has determinant {det}, not ±1")]
    NotUnimodular { label: String, index: usize, det: Rational },
    #[error("group generated for {label:?} has more than {cap} elements")]
    OrderCapExceeded { label: String, cap: usize },
    #[error("integer overflow while multiplying matrices for {label:?}")]
    Overflow { label: String },
    #[error("average of tr Λ^{p} over the group is {value}, not a nonnegative integer")]
    NonIntegerAverage { p: usize, value: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusComponent {
    pub rank: usize,
    pub generators: Vec<IntMatrix>,
    pub label: String,
}

impl TorusComponent {
    pub fn new(rank: usize, generators: Vec<IntMatrix>, label: impl Into<String>) -> Result<Self, OrbifoldError> {
        let c = TorusComponent { rank, generators, label: label.into() };
        c.validate()?;
        Ok(c)
    }

    /// `T^k` with trivial `W`.
    pub fn trivial(rank: usize, label: impl Into<String>) -> Self {
        TorusComponent { rank, generators: Vec::new(), label: label.into() }
    }

    /// `S_k` permuting the coordinates, generated by adjacent transpositions.
    pub fn symmetric(rank: usize, label: impl Into<String>) -> Self {
        let generators = (0..rank.saturating_sub(1))
            .map(|i| {
                let mut m = int_identity(rank);
                m.swap(i, i + 1);
                m
            })
            .collect();
        TorusComponent { rank, generators, label: label.into() }
    }

    pub fn validate(&self) -> Result<(), OrbifoldError> {
        for (index, g) in self.generators.iter().enumerate() {
            if g.len() != self.rank || g.iter().any(|r| r.len() != self.rank) {
                return Err(OrbifoldError::BadShape { label: self.label.clone(), index, rank: self.rank });
            }
            let det = determinant(&to_rational(g));
            if det != Rational::ONE && det != -Rational::ONE {
                return Err(OrbifoldError::NotUnimodular { label: self.label.clone(), index, det });
            }
        }
        Ok(())
    }

    /// Conjugate every generator by `p` (with inverse `p_inv`).
    pub fn conjugated(&self, p: &IntMatrix, p_inv: &IntMatrix) -> Option<Self> {
        let generators = self
            .generators
            .iter()
            .map(|g| int_matmul(&int_matmul(p, g)?, p_inv))
            .collect::<Option<Vec<_>>>()?;
        Some(TorusComponent { rank: self.rank, generators, label: self.label.clone() })
    }
}

pub fn int_identity(k: usize) -> IntMatrix {
    (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect()
}

/// Product with overflow detection.
pub fn int_matmul(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    let k = a.len();
    let mut out = vec![vec![0i64; b.first().map_or(0, Vec::len)]; k];
    for i in 0..k {
        for j in 0..out[i].len() {
            let mut s = 0i64;
            for (l, row) in b.iter().enumerate() {
                s = s.checked_add(a[i][l].checked_mul(row[j])?)?;
            }
            out[i][j] = s;
        }
    }
    Some(out)
}

fn to_rational(m: &IntMatrix) -> dense::DenseMatrix {
    m.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect()
}

/// Determinant by exact Gaussian elimination.
pub fn determinant(m: &dense::DenseMatrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::ONE;
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else { return Rational::ZERO };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pivot;
            for c in col..n {
                let delta = &f * &a[col][c];
                a[r][c] -= &delta;
            }
        }
    }
    det
}

/// All elements of the group generated by the component's generators, sorted
/// by their row-major entries.
pub fn enumerate_group(c: &TorusComponent) -> Result<Vec<IntMatrix>, OrbifoldError> {
    enumerate_group_capped(c, DEFAULT_ORDER_CAP)
}

pub fn enumerate_group_capped(c: &TorusComponent, cap: usize) -> Result<Vec<IntMatrix>, OrbifoldError> {
    c.validate()?;
    let id = int_identity(c.rank);
    let mut seen: HashSet<IntMatrix> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &c.generators {
            let y = int_matmul(&x, g).ok_or_else(|| OrbifoldError::Overflow { label: c.label.clone() })?;
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(OrbifoldError::OrderCapExceeded { label: c.label.clone(), cap });
                }
                queue.push_back(y);
            }
        }
    }
    let sorted: BTreeSet<IntMatrix> = seen.into_iter().collect();
    Ok(sorted.into_iter().collect())
}

/// Coefficients `c₀ = 1, c₁, …, c_k` of `det(λI - w) = Σ c_i λ^{k-i}`
/// (Faddeev–LeVerrier).
pub fn characteristic_polynomial(w: &IntMatrix) -> Vec<Rational> {
    let k = w.len();
    let a = to_rational(w);
    let mut coeffs = vec![Rational::ONE];
    let mut m = dense::identity(k);
    for i in 1..=k {
        let am = dense::matmul(&a, &m);
        let trace: Rational = (0..k).map(|j| am[j][j].clone()).sum();
        let c = -(trace / Rational::from(i as i64));
        m = am;
        for (j, row) in m.iter_mut().enumerate() {
            row[j] += &c;
        }
        coeffs.push(c);
    }
    coeffs
}

/// `tr Λ^p(w)`.
pub fn exterior_trace(w: &IntMatrix, p: usize) -> Rational {
    let k = w.len();
    if p > k {
        return Rational::ZERO;
    }
    let c = characteristic_polynomial(w).swap_remove(p);
    if p % 2 == 0 {
        c
    } else {
        -c
    }
}

fn averaged_to_count(p: usize, value: Rational) -> Result<usize, OrbifoldError> {
    match value.to_i64() {
        Some(v) if v >= 0 => Ok(v as usize),
        _ => Err(OrbifoldError::NonIntegerAverage { p, value }),
    }
}

/// `(β₀, …, β_k)` by character averaging.
pub fn invariant_betti(c: &TorusComponent) -> Result<Vec<usize>, OrbifoldError> {
    betti_of_group(c.rank, &enumerate_group(c)?)
}

pub fn betti_of_group(k: usize, group: &[IntMatrix]) -> Result<Vec<usize>, OrbifoldError> {
    let order = Rational::from(group.len() as i64);
    let mut sums = vec![Rational::ZERO; k + 1];
    for w in group {
        let cp = characteristic_polynomial(w);
        for (p, c) in cp.into_iter().enumerate() {
            if p % 2 == 0 {
                sums[p] += &c;
            } else {
                sums[p] -= &c;
            }
        }
    }
    sums.into_iter().enumerate().map(|(p, s)| averaged_to_count(p, s / &order)).collect()
}

/// `p`-subsets of `0..k` in lexicographic order.
fn subsets(k: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            go(i + 1, k, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, p, &mut Vec::new(), &mut out);
    out
}

/// Matrix of `Λ^p(w)` in the basis `e_I`, `I` increasing: entries are the
/// `p × p` minors.
pub fn exterior_power(w: &IntMatrix, p: usize) -> dense::DenseMatrix {
    let a = to_rational(w);
    let sets = subsets(w.len(), p);
    sets.iter()
        .map(|rows| {
            sets.iter()
                .map(|cols| determinant(&rows.iter().map(|&r| cols.iter().map(|&c| a[r][c].clone()).collect()).collect()))
                .collect()
        })
        .collect()
}

/// Betti numbers as ranks of the averaged projectors `(1/|W|) Σ Λ^p(w)`.
pub fn projector_betti(c: &TorusComponent) -> Result<Vec<usize>, OrbifoldError> {
    let group = enumerate_group(c)?;
    let order = Rational::from(group.len() as i64);
    Ok((0..=c.rank)
        .into_par_iter()
        .map(|p| {
            let mut acc: Option<dense::DenseMatrix> = None;
            for w in &group {
                let m = exterior_power(w, p);
                acc = Some(match acc {
                    None => m,
                    Some(s) => s.iter().zip(&m).map(|(x, y)| x.iter().zip(y).map(|(a, b)| a + b).collect()).collect(),
                });
            }
            let avg: dense::DenseMatrix =
                acc.unwrap_or_default().into_iter().map(|r| r.into_iter().map(|x| x / &order).collect()).collect();
            rank(&SparseMatrix::from_dense(&avg))
        })
        .collect())
}

/// Both sides of `Σ (-1)^p β_p = (1/|W|) Σ_w det(I - w)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerCheck {
    pub alternating_sum: Rational,
    pub average_det: Rational,
    pub pass: bool,
}

pub fn euler_check(c: &TorusComponent, betti: &[usize]) -> Result<EulerCheck, OrbifoldError> {
    let group = enumerate_group(c)?;
    let alternating_sum: Rational =
        betti.iter().enumerate().map(|(p, &b)| Rational::from(if p % 2 == 0 { b as i64 } else { -(b as i64) })).sum();
    let id = dense::identity(c.rank);
    let total: Rational = group
        .iter()
        .map(|w| {
            let a = to_rational(w);
            let diff: dense::DenseMatrix =
                id.iter().zip(&a).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect()).collect();
            determinant(&diff)
        })
        .sum();
    let average_det = total / Rational::from(group.len() as i64);
    let pass = alternating_sum == average_det;
    Ok(EulerCheck { alternating_sum, average_det, pass })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentBetti {
    pub label: String,
    pub rank: usize,
    pub group_order: usize,
    pub betti: Vec<usize>,
    pub even: usize,
    pub odd: usize,
    /// Present when the projector cross-check was run.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projector_agrees: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler: Option<EulerCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub components: Vec<ComponentBetti>,
    pub even: usize,
    pub odd: usize,
}

impl BettiTable {
    pub fn all_checks_pass(&self) -> bool {
        self.components.iter().all(|c| c.projector_agrees != Some(false) && c.euler.as_ref().is_none_or(|e| e.pass))
    }
}

fn component_row(c: &TorusComponent, cross_check: bool) -> Result<ComponentBetti, OrbifoldError> {
    let group = enumerate_group(c)?;
    let betti = betti_of_group(c.rank, &group)?;
    let even = betti.iter().step_by(2).sum();
    let odd = betti.iter().skip(1).step_by(2).sum();
    let (projector_agrees, euler) = if cross_check {
        let proj = (c.rank <= PROJECTOR_MAX_RANK).then(|| projector_betti(c)).transpose()?;
        (proj.map(|p| p == betti), Some(euler_check(c, &betti)?))
    } else {
        (None, None)
    };
    Ok(ComponentBetti { label: c.label.clone(), rank: c.rank, group_order: group.len(), betti, even, odd, projector_agrees, euler })
}

/// Even and odd totals over a disjoint union of components.
pub fn even_odd_totals(components: &[TorusComponent]) -> Result<BettiTable, OrbifoldError> {
    betti_table(components, false)
}

/// As [`even_odd_totals`], optionally running the projector and Euler checks.
pub fn betti_table(components: &[TorusComponent], cross_check: bool) -> Result<BettiTable, OrbifoldError> {
    let rows: Vec<ComponentBetti> =
        components.par_iter().map(|c| component_row(c, cross_check)).collect::<Result<_, _>>()?;
    let even = rows.iter().map(|r| r.even).sum();
    let odd = rows.iter().map(|r| r.odd).sum();
    Ok(BettiTable { components: rows, even, odd })
}

/// Components whose rank exceeds `n` in a list describing `GL(n)`.
pub fn gl_rank_warnings(n: usize, components: &[TorusComponent]) -> Vec<String> {
    components
        .iter()
        .filter(|c| c.rank > n)
        .map(|c| format!("component {:?} has rank {} > {} for GL({})", c.label, c.rank, n, n))
        .collect()
}
