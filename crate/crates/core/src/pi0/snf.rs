//! Smith normal form over the integers with both transformation matrices.

use crate::error::{GammaError, Result};

pub type Matrix = Vec<Vec<i128>>;

/// `left · M · right = diag(factors)`, padded with zero rows or columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    /// Diagonal entries `d_1 | d_2 | ...`, nonnegative, `min(rows, cols)` of them.
    pub factors: Vec<i128>,
    pub left: Matrix,
    pub right: Matrix,
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

fn overflow() -> GammaError {
    GammaError::Overflow("Smith normal form")
}

/// `row_dst -= q * row_src`
fn row_axpy(m: &mut Matrix, dst: usize, src: usize, q: i128) -> Result<()> {
    if q == 0 {
        return Ok(());
    }
    let (a, b) = if dst < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, &y) in a.iter_mut().zip(b.iter()) {
        *x = y
            .checked_mul(q)
            .and_then(|p| x.checked_sub(p))
            .ok_or_else(overflow)?;
    }
    Ok(())
}

/// `col_dst -= q * col_src`
fn col_axpy(m: &mut Matrix, dst: usize, src: usize, q: i128) -> Result<()> {
    if q == 0 {
        return Ok(());
    }
    for row in m.iter_mut() {
        row[dst] = row[src]
            .checked_mul(q)
            .and_then(|p| row[dst].checked_sub(p))
            .ok_or_else(overflow)?;
    }
    Ok(())
}

fn swap_cols(m: &mut Matrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Computes the Smith normal form of `m` (rows of equal length `cols`).
pub fn smith_normal_form(m: &[Vec<i128>], cols: usize) -> Result<SmithForm> {
    let rows = m.len();
    if m.iter().any(|r| r.len() != cols) {
        return Err(GammaError::input("ragged matrix"));
    }
    let mut a: Matrix = m.to_vec();
    let mut left = identity(rows);
    let mut right = identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // pivot of least absolute value in the trailing block
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| (a[i][j].unsigned_abs(), i, j));
            let Some((pi, pj)) = pivot else {
                break;
            };
            a.swap(t, pi);
            left.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut right, t, pj);

            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_euclid(p);
                row_axpy(&mut a, i, t, q)?;
                row_axpy(&mut left, i, t, q)?;
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j].div_euclid(p);
                col_axpy(&mut a, j, t, q)?;
                col_axpy(&mut right, j, t, q)?;
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let stray = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match stray {
                Some(i) => {
                    row_axpy(&mut a, t, i, -1)?;
                    row_axpy(&mut left, t, i, -1)?;
                }
                None => {
                    if p < 0 {
                        for x in a[t].iter_mut().chain(left[t].iter_mut()) {
                            *x = -*x;
                        }
                    }
                    break;
                }
            }
        }
    }

    let factors = (0..rows.min(cols)).map(|i| a[i][i]).collect();
    Ok(SmithForm {
        rows,
        cols,
        factors,
        left,
        right,
    })
}

pub fn multiply(a: &Matrix, b: &Matrix, inner: usize, cols: usize) -> Result<Matrix> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).try_fold(0i128, |acc, k| {
                        if row[k] == 0 || b[k][j] == 0 {
                            return Ok(acc);
                        }
                        row[k]
                            .checked_mul(b[k][j])
                            .and_then(|p| acc.checked_add(p))
                            .ok_or_else(overflow)
                    })
                })
                .collect()
        })
        .collect()
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &Matrix) -> Result<i128> {
    let n = m.len();
    let mut a = m.clone();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return Ok(0);
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j]
                    .checked_mul(a[k][k])
                    .zip(a[i][k].checked_mul(a[k][j]))
                    .and_then(|(x, y)| x.checked_sub(y))
                    .ok_or_else(overflow)?;
                a[i][j] = v / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Ok(if n == 0 { 1 } else { sign * a[n - 1][n - 1] })
}

impl SmithForm {
    /// Re-multiplies `left · M · right` and checks it against the diagonal,
    /// the divisibility chain, and that both transforms have determinant ±1.
    pub fn verify(&self, m: &[Vec<i128>]) -> Result<bool> {
        let product = multiply(&self.left, &m.to_vec(), self.rows, self.cols)?;
        let product = multiply(&product, &self.right, self.cols, self.cols)?;
        let diagonal = product.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, &x)| if i == j { x == self.factors[i] } else { x == 0 })
        });
        let chain = self.factors.windows(2).all(|w| match (w[0], w[1]) {
            (0, b) => b == 0,
            (a, b) => b % a == 0,
        });
        let unimodular =
            determinant(&self.left)?.abs() == 1 && determinant(&self.right)?.abs() == 1;
        Ok(diagonal && chain && self.factors.iter().all(|&d| d >= 0) && unimodular)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    /// Invariant factors from determinantal divisors: `d_1 ... d_i` is the gcd
    /// of all `i × i` minors.
    fn oracle(m: &Matrix, cols: usize) -> Vec<i128> {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            (k - 1..n)
                .flat_map(|last| {
                    subsets(last, k - 1).into_iter().map(move |mut s| {
                        s.push(last);
                        s
                    })
                })
                .collect()
        }
        let rows = m.len();
        let mut divisors = vec![1i128];
        for k in 1..=rows.min(cols) {
            let mut g = 0i128;
            for rs in subsets(rows, k) {
                for cs in subsets(cols, k) {
                    let minor: Matrix = rs
                        .iter()
                        .map(|&i| cs.iter().map(|&j| m[i][j]).collect())
                        .collect();
                    g = g.gcd(&determinant(&minor).unwrap());
                }
            }
            divisors.push(g);
        }
        (1..divisors.len())
            .map(|k| {
                if divisors[k] == 0 {
                    0
                } else {
                    divisors[k] / divisors[k - 1]
                }
            })
            .collect()
    }

    fn check(m: Matrix, cols: usize) -> Vec<i128> {
        let snf = smith_normal_form(&m, cols).unwrap();
        assert!(snf.verify(&m).unwrap(), "{m:?} -> {snf:?}");
        assert_eq!(snf.factors, oracle(&m, cols), "{m:?}");
        snf.factors
    }

    #[test]
    fn examples() {
        assert_eq!(check(vec![vec![2, 0], vec![0, 3]], 2), vec![1, 6]);
        assert_eq!(check(vec![vec![0, 0], vec![0, 0]], 2), vec![0, 0]);
        assert_eq!(check(identity(3), 3), vec![1, 1, 1]);
        assert_eq!(
            check(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3),
            vec![2, 6, 12]
        );
        assert_eq!(check(vec![vec![4], vec![6]], 1), vec![2]);
        assert_eq!(check(vec![vec![0, 5, 0]], 3), vec![5]);
        let empty = smith_normal_form(&[], 2).unwrap();
        assert!(empty.factors.is_empty());
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&vec![vec![2, 1], vec![7, 4]]).unwrap(), 1);
        assert_eq!(
            determinant(&vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap(),
            -1
        );
        assert_eq!(determinant(&vec![vec![1, 2], vec![2, 4]]).unwrap(), 0);
    }

    #[test]
    fn random_matrices_match_the_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let rows = rng.gen_range(1..=4);
            let cols = rng.gen_range(1..=4);
            let m: Matrix = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(-6..=6)).collect())
                .collect();
            check(m, cols);
        }
    }
}
