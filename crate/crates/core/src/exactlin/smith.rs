use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `left · m · right = diag(d_1, …, d_r, 0, …)` with `left`, `right` unimodular
/// and `d_1 | d_2 | …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub left: Vec<Vec<BigInt>>,
    pub diagonal: Vec<BigInt>,
    pub right: Vec<Vec<BigInt>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

struct Work {
    a: Vec<Vec<BigInt>>,
    left: Vec<Vec<BigInt>>,
    right: Vec<Vec<BigInt>>,
    cols: usize,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.left.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.right.iter_mut()) {
            row.swap(i, j);
        }
    }

    // row_i += q * row_j
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        for c in 0..self.cols {
            let v = &self.a[j][c] * q;
            self.a[i][c] += v;
        }
        for c in 0..self.left.len() {
            let v = &self.left[j][c] * q;
            self.left[i][c] += v;
        }
    }

    // col_i += q * col_j
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        for row in self.a.iter_mut().chain(self.right.iter_mut()) {
            let v = &row[j] * q;
            row[i] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.left[i].iter_mut()) {
            *x = -x.clone();
        }
    }
}

/// Smith normal form of an integer matrix given by rows (`cols` shapes the
/// empty case).
pub fn smith_normal_form(m: &[Vec<BigInt>], cols: usize) -> SmithForm {
    let rows = m.len();
    let mut w = Work {
        a: m.to_vec(),
        left: identity(rows),
        right: identity(cols),
        cols,
    };
    let steps = rows.min(cols);
    for t in 0..steps {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if w.a[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| w.a[i][j].abs() < w.a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break;
            };
            w.swap_rows(t, bi);
            w.swap_cols(t, bj);
            let pivot = w.a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let q = w.a[i][t].div_floor(&pivot);
                w.add_row(i, t, &-q);
                if !w.a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let q = w.a[t][j].div_floor(&pivot);
                w.add_col(j, t, &-q);
                if !w.a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let bad_row = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.a[i][j].is_multiple_of(&pivot)));
            match bad_row {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
    }
    let diagonal = (0..steps).map(|i| w.a[i][i].clone()).collect();
    SmithForm {
        left: w.left,
        diagonal,
        right: w.right,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], inner: usize, cols: usize) -> Vec<Vec<BigInt>> {
        a.iter()
            .map(|row| {
                (0..cols)
                    .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                    .collect()
            })
            .collect()
    }

    fn check(rows: &[Vec<i64>], cols: usize, expected: &[i64]) {
        let m = big(rows);
        let s = smith_normal_form(&m, cols);
        let d: Vec<BigInt> = expected.iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(s.diagonal, d);
        let lm = mul(&s.left, &m, rows.len(), cols);
        let lmr = mul(&lm, &s.right, cols, cols);
        for (i, row) in lmr.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let want = if i == j && i < d.len() {
                    d[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(*x, want, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn diagonal_forms() {
        check(
            &[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]],
            3,
            &[2, 6, 12],
        );
        check(&[vec![2]], 1, &[2]);
        check(&[vec![1, 0], vec![0, 1], vec![0, 0]], 2, &[1, 1]);
        check(&[vec![2, 0], vec![0, 3]], 2, &[1, 6]);
        check(&[vec![0], vec![3]], 1, &[3]);
    }

    #[test]
    fn empty_matrix() {
        let s = smith_normal_form(&[], 0);
        assert!(s.diagonal.is_empty());
        let s = smith_normal_form(&big(&[vec![], vec![]]), 0);
        assert_eq!(s.left.len(), 2);
    }
}
