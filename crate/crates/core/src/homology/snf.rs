use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{HomologyError, IntMatrix};

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal, each diagonal
/// entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Nonzero diagonal entries of `D`.
    pub fn invariant_factors(&self) -> Vec<i64> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i)).filter(|&x| x != 0).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct Reducer {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    // row_i -= q * row_t
    fn row_axpy(&mut self, i: usize, t: usize, q: &BigInt) {
        fn go(m: &mut [Vec<BigInt>], i: usize, t: usize, q: &BigInt) {
            let (src, dst) = if i < t {
                let (lo, hi) = m.split_at_mut(t);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = m.split_at_mut(i);
                (&lo[t], &mut hi[0])
            };
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                if !s.is_zero() {
                    *d -= q * s;
                }
            }
        }
        go(&mut self.a, i, t, q);
        if let Some(u) = &mut self.u {
            go(u, i, t, q);
        }
    }

    // col_j -= q * col_t
    fn col_axpy(&mut self, j: usize, t: usize, q: &BigInt) {
        fn go(m: &mut [Vec<BigInt>], j: usize, t: usize, q: &BigInt) {
            for row in m.iter_mut() {
                if !row[t].is_zero() {
                    let s = q * &row[t];
                    row[j] -= s;
                }
            }
        }
        go(&mut self.a, j, t, q);
        if let Some(v) = &mut self.v {
            go(v, j, t, q);
        }
    }

    fn negate_row(&mut self, t: usize) {
        for x in &mut self.a[t] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[t] {
                *x = -&*x;
            }
        }
    }

    fn run(&mut self) {
        let m = self.a.len();
        let n = self.a.first().map_or(0, Vec::len);
        for t in 0..m.min(n) {
            let Some((i, j)) = self.min_entry(t, t..m, t..n) else { break };
            self.swap_rows(t, i);
            self.swap_cols(t, j);
            loop {
                let mut clean = true;
                for i in t + 1..m {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].div_floor(&self.a[t][t]);
                        self.row_axpy(i, t, &q);
                        clean &= self.a[i][t].is_zero();
                    }
                }
                for j in t + 1..n {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].div_floor(&self.a[t][t]);
                        self.col_axpy(j, t, &q);
                        clean &= self.a[t][j].is_zero();
                    }
                }
                if !clean {
                    // a remainder smaller than the pivot is left in row or column t
                    let mut best = (t, t);
                    for i in t + 1..m {
                        if !self.a[i][t].is_zero() && self.a[i][t].abs() < self.a[best.0][best.1].abs() {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..n {
                        if !self.a[t][j].is_zero() && self.a[t][j].abs() < self.a[best.0][best.1].abs() {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                let p = self.a[t][t].clone();
                let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !self.a[i][j].is_multiple_of(&p)));
                match bad {
                    Some(i) => self.row_axpy(t, i, &-BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }

    fn min_entry(&self, _t: usize, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in rows {
            for j in cols.clone() {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                    if x.is_one() || (-x).is_one() {
                        return Some((i, j));
                    }
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn big_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![BigInt::zero(); n];
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&b[k]) {
                    if !y.is_zero() {
                        *o += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub(crate) fn bareiss_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Smith normal form with transforms, re-verified by exact multiplication.
pub fn smith_normal_form(a: &IntMatrix) -> Result<SnfResult, HomologyError> {
    let dense = a.to_bigint();
    let mut r = Reducer { a: dense.clone(), u: Some(identity(a.rows())), v: Some(identity(a.cols())) };
    r.run();
    let (u, v, d) = (r.u.unwrap(), r.v.unwrap(), r.a);
    let check = big_mul(&big_mul(&u, &dense), &v);
    if check != d {
        return Err(HomologyError::Verification("U·A·V differs from D".into()));
    }
    for (name, m) in [("U", &u), ("V", &v)] {
        if !bareiss_det(m).abs().is_one() {
            return Err(HomologyError::Verification(format!("{name} is not unimodular")));
        }
    }
    let factors: Vec<&BigInt> = (0..d.len().min(a.cols())).map(|i| &d[i][i]).filter(|x| !x.is_zero()).collect();
    if factors.windows(2).any(|w| !w[1].is_multiple_of(w[0])) {
        return Err(HomologyError::Verification("diagonal is not a divisibility chain".into()));
    }
    let conv = |m: &[Vec<BigInt>]| IntMatrix::from_bigint(m).ok_or(HomologyError::CoefficientGrowth);
    Ok(SnfResult { u: conv(&u)?, d: conv(&d)?, v: conv(&v)? })
}

/// Nonzero invariant factors without tracking transforms.
pub(crate) fn invariant_factors_dense(a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let mut r = Reducer { a, u: None, v: None };
    r.run();
    let n = r.a.first().map_or(0, Vec::len).min(r.a.len());
    (0..n).map(|i| r.a[i][i].clone()).filter(|x| !x.is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(rows: &[Vec<i64>]) -> Vec<i64> {
        smith_normal_form(&IntMatrix::from_dense(rows)).unwrap().invariant_factors()
    }

    #[test]
    fn documented_cases() {
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(factors(&[vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
        assert_eq!(factors(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
    }

    #[test]
    fn rectangular_and_empty() {
        assert_eq!(factors(&[vec![1, 1, 1], vec![1, -1, 0]]), vec![1, 1]);
        let e = smith_normal_form(&IntMatrix::zeros(0, 3)).unwrap();
        assert_eq!(e.rank(), 0);
        assert_eq!(factors(&[vec![4], vec![6]]), vec![2]);
    }

    #[test]
    fn bareiss() {
        let m: Vec<Vec<BigInt>> = [[2, 1, 3], [0, -1, 4], [1, 2, 0]].iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        assert_eq!(bareiss_det(&m), BigInt::from(-9));
    }
}
