//! Brute-force homology of unital algebras, kept deliberately separate from
//! the library's chain-complex machinery: words are `Vec<usize>`, scalars are
//! `BigRational`, elimination pivots on the largest row index.

use std::collections::{BTreeMap, HashMap};

use cychom::algebra::Algebra;
use num_rational::BigRational;
use num_traits::{One, Zero};

type Column = BTreeMap<usize, BigRational>;

struct Structure {
    dim: usize,
    mult: Vec<Vec<Vec<(usize, BigRational)>>>,
}

impl Structure {
    fn of(a: &Algebra) -> Self {
        let dim = a.dim();
        let mult = (0..dim)
            .map(|i| (0..dim).map(|j| a.product(i, j).iter().map(|(k, c)| (*k, c.to_big())).collect()).collect())
            .collect();
        Structure { dim, mult }
    }

    fn words(&self, len: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..self.dim).map(move |l| {
                        let mut w = w.clone();
                        w.push(l);
                        w
                    })
                })
                .collect();
        }
        out
    }
}

fn sign(k: usize) -> BigRational {
    if k % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

fn bump(col: &mut Column, row: usize, c: BigRational) {
    let e = col.entry(row).or_insert_with(BigRational::zero);
    *e += c;
    if e.is_zero() {
        col.remove(&row);
    }
}

/// Rank by incremental reduction against stored pivot columns.
pub fn rank(columns: impl IntoIterator<Item = Column>) -> usize {
    let mut pivots: HashMap<usize, Column> = HashMap::new();
    for mut col in columns {
        loop {
            let Some((&row, _)) = col.iter().next_back() else { break };
            match pivots.get(&row) {
                Some(p) => {
                    let factor = col[&row].clone() / p[&row].clone();
                    for (r, v) in p {
                        bump(&mut col, *r, -(factor.clone() * v));
                    }
                }
                None => {
                    pivots.insert(row, col);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// The Hochschild boundary on `A^{⊗len}` (a₀ ⊗ … ⊗ a_{len-1}), as columns
/// indexed by `words(len)` with rows indexed by `words(len - 1)`.
fn hochschild_columns(s: &Structure, len: usize) -> Vec<Column> {
    let index: HashMap<Vec<usize>, usize> = s.words(len - 1).into_iter().enumerate().map(|(i, w)| (w, i)).collect();
    s.words(len)
        .into_iter()
        .map(|w| {
            let mut col = Column::new();
            let n = len - 1;
            for i in 0..n {
                for (k, c) in &s.mult[w[i]][w[i + 1]] {
                    let mut t = w[..i].to_vec();
                    t.push(*k);
                    t.extend_from_slice(&w[i + 2..]);
                    bump(&mut col, index[&t], sign(i) * c);
                }
            }
            for (k, c) in &s.mult[w[n]][w[0]] {
                let mut t = vec![*k];
                t.extend_from_slice(&w[1..n]);
                bump(&mut col, index[&t], sign(n) * c);
            }
            col
        })
        .collect()
}

/// `1 - t` on `A^{⊗len}`, `t(a₀…aₙ) = (-1)ⁿ aₙ a₀ … a_{n-1}`.
fn one_minus_t_columns(s: &Structure, len: usize) -> Vec<Column> {
    let words = s.words(len);
    let index: HashMap<Vec<usize>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    words
        .iter()
        .map(|w| {
            let mut col = Column::new();
            bump(&mut col, index[w], BigRational::one());
            let mut r = vec![w[len - 1]];
            r.extend_from_slice(&w[..len - 1]);
            bump(&mut col, index[&r], -sign(len - 1));
            col
        })
        .collect()
}

/// `HH_0..=HH_{n_max}` of a unital algebra from `C_n = A^{⊗(n+1)}`.
pub fn hochschild_dims(a: &Algebra, n_max: usize) -> Vec<usize> {
    let s = Structure::of(a);
    // ranks[n] = rank of b: C_n -> C_{n-1}, n >= 1
    let ranks: Vec<usize> = (0..=n_max + 1).map(|n| if n == 0 { 0 } else { rank(hochschild_columns(&s, n + 1)) }).collect();
    (0..=n_max).map(|n| s.dim.pow(n as u32 + 1) - ranks[n] - ranks[n + 1]).collect()
}

/// `HC_0..=HC_{n_max}` from Connes' complex `C_n / (1 - t)` with `b`.
pub fn connes_dims(a: &Algebra, n_max: usize) -> Vec<usize> {
    let s = Structure::of(a);
    let im_t: Vec<usize> = (0..=n_max + 1).map(|n| rank(one_minus_t_columns(&s, n + 1))).collect();
    // rank of the induced map C^λ_n -> C^λ_{n-1}
    let induced = |n: usize| -> usize {
        if n == 0 {
            return 0;
        }
        let mut cols = hochschild_columns(&s, n + 1);
        cols.extend(one_minus_t_columns(&s, n));
        rank(cols) - im_t[n - 1]
    };
    let ranks: Vec<usize> = (0..=n_max + 1).map(induced).collect();
    (0..=n_max).map(|n| s.dim.pow(n as u32 + 1) - im_t[n] - ranks[n] - ranks[n + 1]).collect()
}

/// `dim A / [A, A]`.
pub fn commutator_quotient_dim(a: &Algebra) -> usize {
    let s = Structure::of(a);
    let cols = (0..s.dim).flat_map(|i| (0..s.dim).map(move |j| (i, j))).map(|(i, j)| {
        let mut col = Column::new();
        for (k, c) in &s.mult[i][j] {
            bump(&mut col, *k, c.clone());
        }
        for (k, c) in &s.mult[j][i] {
            bump(&mut col, *k, -c.clone());
        }
        col
    });
    s.dim - rank(cols)
}
