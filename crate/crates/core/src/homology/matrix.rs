use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// Sparse integer matrix stored by columns; each column is sorted by row and
/// holds no explicit zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(u32, i64)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix { rows: n, cols: n, data: (0..n).map(|i| vec![(i as u32, 1)]).collect() }
    }

    /// Build from `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, i64)>) -> Self {
        let mut data: Vec<Vec<(u32, i64)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r},{c}) outside {rows}x{cols}");
            data[c].push((r as u32, v));
        }
        for col in &mut data {
            col.sort_unstable_by_key(|e| e.0);
            let mut merged: Vec<(u32, i64)> = Vec::with_capacity(col.len());
            for &(r, v) in col.iter() {
                match merged.last_mut() {
                    Some(last) if last.0 == r => last.1 += v,
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|e| e.1 != 0);
            *col = merged;
        }
        IntMatrix { rows, cols, data }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let trip = rows.iter().enumerate().flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &v)| (i, j, v)));
        IntMatrix::from_triplets(r, c, trip)
    }

    pub(crate) fn from_bigint(rows: &[Vec<BigInt>]) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut trip = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    trip.push((i, j, v.to_i64()?));
                }
            }
        }
        Some(IntMatrix::from_triplets(r, c, trip))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(u32, i64)] {
        &self.data[j]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        match self.data[j].binary_search_by_key(&(i as u32), |e| e.0) {
            Ok(k) => self.data[j][k].1,
            Err(_) => 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.data.iter().enumerate().flat_map(|(j, col)| col.iter().map(move |&(i, v)| (i as usize, j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (i, j, v) in self.triplets() {
            out[i][j] = v;
        }
        out
    }

    pub(crate) fn to_bigint(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, j, v) in self.triplets() {
            out[i][j] = BigInt::from(v);
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_triplets(self.cols, self.rows, self.triplets().map(|(i, j, v)| (j, i, v)))
    }

    /// Product, panicking on `i64` overflow.
    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut trip = Vec::new();
        for (j, col) in o.data.iter().enumerate() {
            let mut acc: std::collections::BTreeMap<u32, i64> = std::collections::BTreeMap::new();
            for &(k, b) in col {
                for &(i, a) in &self.data[k as usize] {
                    let e = acc.entry(i).or_default();
                    *e = a.checked_mul(b).and_then(|p| e.checked_add(p)).expect("integer overflow in product");
                }
            }
            trip.extend(acc.into_iter().map(|(i, v)| (i as usize, j, v)));
        }
        IntMatrix::from_triplets(self.rows, o.cols, trip)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.rows];
        for (j, col) in self.data.iter().enumerate() {
            if v[j] == 0 {
                continue;
            }
            for &(i, a) in col {
                out[i as usize] += a * v[j];
            }
        }
        out
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|c| c.iter().map(|&(i, v)| (i, -v)).collect()).collect() }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows * self.cols <= 400 {
            write!(f, "{:?}", self.to_dense())
        } else {
            write!(f, "IntMatrix({}x{}, nnz {})", self.rows, self.cols, self.nnz())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplets_merge_and_drop_zeros() {
        let m = IntMatrix::from_triplets(2, 2, [(0, 0, 1), (0, 0, 2), (1, 1, 3), (1, 1, -3)]);
        assert_eq!(m.to_dense(), vec![vec![3, 0], vec![0, 0]]);
        assert_eq!(m.nnz(), 1);
    }

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_dense(&[vec![1, 2], vec![3, 4]]);
        let b = IntMatrix::from_dense(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(a.mul(&b).to_dense(), vec![vec![2, 1], vec![4, 3]]);
        assert_eq!(a.transpose().get(0, 1), 3);
        assert_eq!(a.mul_vec(&[1, 1]), vec![3, 7]);
    }
}
