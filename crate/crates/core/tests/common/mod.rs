#![allow(dead_code)]

pub mod oracle;

use cychom::algebra::{group_algebra, hecke_algebra, matrix_algebra, Algebra, FiniteGroup};
use cychom::linalg::{Rational, SparseMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

/// Random invertible `n × n` rational matrix.
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> SparseMatrix {
    loop {
        let rows: Vec<Vec<Rational>> = (0..n).map(|_| (0..n).map(|_| small_rational(rng)).collect()).collect();
        let m = SparseMatrix::from_dense(&rows);
        if cychom::linalg::rank(&m) == n {
            return m;
        }
    }
}

pub fn cyclic_group_algebra(k: usize) -> Algebra {
    group_algebra(&FiniteGroup::cyclic(k))
}

pub fn m2() -> Algebra {
    matrix_algebra(&Algebra::ground_field(), 2).unwrap()
}

pub fn hecke_s3_s2() -> Algebra {
    let s3 = FiniteGroup::symmetric(3);
    let k = s3.subgroup(&[0, 1]).unwrap();
    hecke_algebra(&s3, &k).unwrap().algebra
}

/// Random unimodular integer matrix: a product of `steps` elementary
/// row operations with small multipliers.
pub fn random_unimodular(rng: &mut impl Rng, n: usize, steps: usize) -> SparseMatrix {
    let mut rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..steps {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let c = [-2, -1, 1, 2][rng.gen_range(0..4)];
        for k in 0..n {
            rows[i][k] += c * rows[j][k];
        }
    }
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    SparseMatrix::from_i64_rows(&refs)
}

/// Upper-triangular 2×2 matrices in a random integral basis. Integral
/// (rather than rational) keeps exact elimination tractable to degree 6.
pub fn random_dim3() -> Algebra {
    let mut r = rng(0x5eed_0003);
    Algebra::upper_triangular_2().rebased(&random_unimodular(&mut r, 3, 6)).unwrap()
}

pub fn fixtures() -> Vec<(&'static str, Algebra)> {
    vec![
        ("ground field", Algebra::ground_field()),
        ("dual numbers", Algebra::dual_numbers()),
        ("Z/2", cyclic_group_algebra(2)),
        ("Z/3", cyclic_group_algebra(3)),
        ("Z/4", cyclic_group_algebra(4)),
        ("M2(Q)", m2()),
        ("Hecke(S3,S2)", hecke_s3_s2()),
        ("random dim 3", random_dim3()),
    ]
}
