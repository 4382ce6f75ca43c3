//! Dense exact linear algebra over the scalar fields, plus a sparse
//! nullspace solver for large rational systems.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Index, IndexMut, Mul, Neg, Sub};

use crate::arith::{GoldenScalar, Rational};

pub trait Field:
    Copy
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(n: i64) -> Self;
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::ZERO
    }
    fn one() -> Self {
        Rational::ONE
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl Field for GoldenScalar {
    fn zero() -> Self {
        GoldenScalar::ZERO
    }
    fn one() -> Self {
        GoldenScalar::ONE
    }
    fn is_zero(&self) -> bool {
        GoldenScalar::is_zero(self)
    }
    fn from_i64(n: i64) -> Self {
        GoldenScalar::from_ints(n, 0)
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_columns(cols: &[Vec<F>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)] + a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + *a * *b)
            })
            .collect()
    }

    pub fn add(&self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| *a + *b).collect() }
    }

    pub fn sub(&self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| *a - *b).collect() }
    }

    pub fn scale(&self, s: F) -> Matrix<F> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| *a * s).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = F::one() / m[(r, c)];
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)] * inv;
            }
            for i in 0..m.rows {
                if i != r {
                    let f = m[(i, c)];
                    if !f.is_zero() {
                        for j in c..m.cols {
                            let v = m[(r, j)];
                            if !v.is_zero() {
                                m[(i, j)] = m[(i, j)] - f * v;
                            }
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right nullspace; each vector has a 1 in its own free
    /// column and 0 in the other free columns.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(row, f)];
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self) -> F {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else { return F::zero() };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)];
            det = det * piv;
            for i in c + 1..n {
                let f = m[(i, c)] / piv;
                if !f.is_zero() {
                    for j in c..n {
                        m[(i, j)] = m[(i, j)] - f * m[(c, j)];
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, n + i)] = F::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)];
            }
        }
        Some(inv)
    }

    /// Solve `self · x = b`; `None` when inconsistent. Free variables are 0.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, self.cols)] = b[i];
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)];
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

/// Sparse rational row.
pub type SparseRow = BTreeMap<usize, Rational>;

/// Incremental row-echelon system for large sparse rational equations.
///
/// Rows are reduced against existing pivots as they are added, so memory is
/// bounded by the rank rather than by the number of equations.
#[derive(Debug, Clone)]
pub struct SparseEchelon {
    unknowns: usize,
    // pivot column -> row normalized so that its pivot entry is 1
    pivots: BTreeMap<usize, SparseRow>,
}

impl SparseEchelon {
    pub fn new(unknowns: usize) -> Self {
        SparseEchelon { unknowns, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    /// Add the equation `row · x = 0`. Returns whether the rank grew.
    pub fn add_row(&mut self, mut row: SparseRow) -> bool {
        row.retain(|_, v| !v.is_zero());
        loop {
            let Some((&lead, &coef)) = row.iter().next() else { return false };
            match self.pivots.get(&lead) {
                Some(p) => {
                    for (&c, &v) in p {
                        let e = row.entry(c).or_insert(Rational::ZERO);
                        *e -= coef * v;
                        if e.is_zero() {
                            row.remove(&c);
                        }
                    }
                }
                None => {
                    let inv = coef.recip().expect("nonzero lead");
                    for v in row.values_mut() {
                        *v *= inv;
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    /// Nullspace basis, one vector per free column, in sparse form.
    pub fn nullspace(&self) -> Vec<SparseRow> {
        // Back-substitute to reduced form, highest pivot first.
        let mut reduced: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (&p, row) in self.pivots.iter().rev() {
            let mut r = row.clone();
            let later: Vec<usize> = r.keys().copied().filter(|&c| c != p && reduced.contains_key(&c)).collect();
            for c in later {
                let coef = match r.get(&c) {
                    Some(v) => *v,
                    None => continue,
                };
                for (&k, &v) in &reduced[&c] {
                    let e = r.entry(k).or_insert(Rational::ZERO);
                    *e -= coef * v;
                    if e.is_zero() {
                        r.remove(&k);
                    }
                }
            }
            reduced.insert(p, r);
        }
        let free: Vec<usize> = (0..self.unknowns).filter(|c| !self.pivots.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = SparseRow::new();
                v.insert(f, Rational::ONE);
                for (&p, row) in &reduced {
                    if let Some(&c) = row.get(&f) {
                        v.insert(p, -c);
                    }
                }
                v
            })
            .collect()
    }
}

pub fn dense_from_sparse(row: &SparseRow, len: usize) -> Vec<Rational> {
    let mut v = vec![Rational::ZERO; len];
    for (&i, &x) in row {
        v[i] = x;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn rank_and_nullspace() {
        let m = Matrix::from_rows(vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(1), q(0), q(1)]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn determinant_and_inverse() {
        let m = Matrix::from_rows(vec![vec![q(2), q(1)], vec![q(7), q(4)]]);
        assert_eq!(m.determinant(), q(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        let sing = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(2), q(4)]]);
        assert!(sing.inverse().is_none());
        assert_eq!(sing.determinant(), q(0));
    }

    #[test]
    fn golden_determinant() {
        let phi = GoldenScalar::PHI;
        let m = Matrix::from_rows(vec![vec![phi, GoldenScalar::ONE], vec![GoldenScalar::ONE, phi]]);
        // φ² − 1 = φ
        assert_eq!(m.determinant(), phi);
    }

    #[test]
    fn sparse_matches_dense() {
        let rows = vec![vec![q(1), q(-1), q(0), q(0)], vec![q(0), q(1), q(-1), q(0)], vec![q(1), q(0), q(-1), q(0)]];
        let mut sys = SparseEchelon::new(4);
        for r in &rows {
            sys.add_row(r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, *v)).collect());
        }
        assert_eq!(sys.rank(), 2);
        let ns = sys.nullspace();
        assert_eq!(ns.len(), 2);
        let dense = Matrix::from_rows(rows);
        for v in ns {
            let dv = dense_from_sparse(&v, 4);
            assert!(dense.mul_vec(&dv).iter().all(|x| x.is_zero()));
        }
    }
}
