//! Small dense helpers for fibre-sized matrices.

use super::rational::Rational;

pub type DenseMatrix = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> DenseMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::ONE } else { Rational::ZERO }).collect())
        .collect()
}

pub fn matmul(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![Rational::ZERO; m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] += &(&a[i][l] * &b[l][j]);
                }
            }
        }
    }
    out
}

pub fn matvec(a: &DenseMatrix, v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| row.iter().zip(v).filter(|(x, _)| !x.is_zero()).map(|(x, y)| x * y).sum())
        .collect()
}

/// Gauss-Jordan inverse; `None` when singular.
pub fn inverse(a: &DenseMatrix) -> Option<DenseMatrix> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let pivot_row = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &(&f * y);
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        let a: DenseMatrix = vec![
            vec![Rational::from(2), Rational::from(1)],
            vec![Rational::from(1), Rational::from(1)],
        ];
        let inv = inverse(&a).unwrap();
        assert_eq!(matmul(&a, &inv), identity(2));
        let singular: DenseMatrix = vec![vec![Rational::ONE, Rational::ONE]; 2];
        assert!(inverse(&singular).is_none());
    }
}
