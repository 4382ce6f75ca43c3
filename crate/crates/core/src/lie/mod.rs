//! The Lie algebra so(2n,1) in exact rational arithmetic: the coadjoint
//! orbit of ξ = diag(0, J₀), its U(n)-decomposition, invariant 2-forms and
//! the Kirillov form. The model-singularity checks live in [`model`].

pub mod model;

use serde::Serialize;

use crate::arith::Rational;
use crate::linalg::{dense_from_sparse, Matrix, SparseEchelon, SparseRow};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("n must be at least 1")]
    InvalidRank,
    #[error("ad_xi^2 has an eigenvalue outside {{-1, -4}}: eigenspace dims stabilizer {stabilizer}, lambda2 {lambda2}, cn {cn} of {total}")]
    UnexpectedEigenvalue { stabilizer: usize, lambda2: usize, cn: usize, total: usize },
    #[error("stabilizer is not closed under the bracket")]
    NotClosed,
    #[error("summand is not ad_xi-stable")]
    NotStable,
    #[error("Kirillov form is degenerate; kernel of dimension {}", .0.len())]
    Degenerate(Vec<Vec<Rational>>),
    #[error("m must be at least 2 (m = 1 acts trivially)")]
    TrivialAction,
}

fn r(n: i64) -> Rational {
    Rational::from(n)
}

/// Element `[[0, uᵀ], [u, A]]` of so(2n,1), with `A` antisymmetric.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SoElement {
    pub n: usize,
    pub u: Vec<Rational>,
    pub a: Matrix<Rational>,
}

/// Dimension `n(2n+1)` of so(2n,1).
pub fn so_dim(n: usize) -> usize {
    n * (2 * n + 1)
}

impl SoElement {
    pub fn zero(n: usize) -> Self {
        SoElement { n, u: vec![Rational::ZERO; 2 * n], a: Matrix::zeros(2 * n, 2 * n) }
    }

    /// Coordinates: `u` first, then `A[i][j]` for `i < j` row by row.
    pub fn from_coords(n: usize, c: &[Rational]) -> Self {
        assert_eq!(c.len(), so_dim(n));
        let m = 2 * n;
        let mut e = SoElement::zero(n);
        e.u.copy_from_slice(&c[..m]);
        let mut k = m;
        for i in 0..m {
            for j in i + 1..m {
                e.a[(i, j)] = c[k];
                e.a[(j, i)] = -c[k];
                k += 1;
            }
        }
        e
    }

    pub fn coords(&self) -> Vec<Rational> {
        let m = 2 * self.n;
        let mut c = self.u.clone();
        for i in 0..m {
            for j in i + 1..m {
                c.push(self.a[(i, j)]);
            }
        }
        c
    }

    /// Standard basis vector number `k` in coordinate order.
    pub fn basis(n: usize, k: usize) -> Self {
        let mut c = vec![Rational::ZERO; so_dim(n)];
        c[k] = Rational::ONE;
        Self::from_coords(n, &c)
    }

    pub fn to_matrix(&self) -> Matrix<Rational> {
        let d = 2 * self.n + 1;
        let mut x = Matrix::zeros(d, d);
        for i in 0..2 * self.n {
            x[(0, i + 1)] = self.u[i];
            x[(i + 1, 0)] = self.u[i];
            for j in 0..2 * self.n {
                x[(i + 1, j + 1)] = self.a[(i, j)];
            }
        }
        x
    }

    /// Inverse of [`to_matrix`](Self::to_matrix); `None` unless the matrix
    /// lies in so(2n,1).
    pub fn from_matrix(x: &Matrix<Rational>) -> Option<Self> {
        let d = x.rows();
        if d.is_multiple_of(2) || x.cols() != d || !preserves_form(x) {
            return None;
        }
        let n = (d - 1) / 2;
        let mut e = SoElement::zero(n);
        for i in 0..2 * n {
            e.u[i] = x[(i + 1, 0)];
            for j in 0..2 * n {
                e.a[(i, j)] = x[(i + 1, j + 1)];
            }
        }
        Some(e)
    }

    pub fn bracket(&self, o: &SoElement) -> SoElement {
        let (x, y) = (self.to_matrix(), o.to_matrix());
        SoElement::from_matrix(&x.mul(&y).sub(&y.mul(&x))).expect("so(2n,1) is closed under the bracket")
    }

    pub fn add(&self, o: &SoElement) -> SoElement {
        let c: Vec<Rational> = self.coords().iter().zip(o.coords()).map(|(a, b)| *a + b).collect();
        SoElement::from_coords(self.n, &c)
    }

    pub fn is_zero(&self) -> bool {
        self.u.iter().all(Rational::is_zero) && self.a.is_zero()
    }

    /// Inclusion so(2n,1) ⊂ so(2n+2,1) on the first `2n` space coordinates.
    pub fn include(&self) -> SoElement {
        let mut e = SoElement::zero(self.n + 1);
        e.u[..2 * self.n].copy_from_slice(&self.u);
        for i in 0..2 * self.n {
            for j in 0..2 * self.n {
                e.a[(i, j)] = self.a[(i, j)];
            }
        }
        e
    }
}

/// `Xᵀ J + J X = 0` for `J = diag(−1, 1, …, 1)`.
pub fn preserves_form(x: &Matrix<Rational>) -> bool {
    let d = x.rows();
    let mut j = Matrix::identity(d);
    j[(0, 0)] = -Rational::ONE;
    x.transpose().mul(&j).add(&j.mul(x)).is_zero()
}

/// The point `ξ = diag(0, J₀)` of the coadjoint orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiPoint {
    pub n: usize,
    pub j0: Matrix<Rational>,
}

impl XiPoint {
    /// `J₀` block-diagonal with blocks `[[0, −1], [1, 0]]`.
    pub fn standard(n: usize) -> Result<Self, LieError> {
        if n == 0 {
            return Err(LieError::InvalidRank);
        }
        let mut j0 = Matrix::zeros(2 * n, 2 * n);
        for k in 0..n {
            j0[(2 * k, 2 * k + 1)] = -Rational::ONE;
            j0[(2 * k + 1, 2 * k)] = Rational::ONE;
        }
        Ok(XiPoint { n, j0 })
    }

    pub fn element(&self) -> SoElement {
        SoElement { n: self.n, u: vec![Rational::ZERO; 2 * self.n], a: self.j0.clone() }
    }
}

/// Matrix of `ad_x` in the coordinate basis.
pub fn ad_matrix(x: &SoElement) -> Matrix<Rational> {
    let n = so_dim(x.n);
    let cols: Vec<Vec<Rational>> = (0..n).map(|k| x.bracket(&SoElement::basis(x.n, k)).coords()).collect();
    Matrix::from_columns(&cols, n)
}

fn elements(n: usize, vs: Vec<Vec<Rational>>) -> Vec<SoElement> {
    vs.iter().map(|v| SoElement::from_coords(n, v)).collect()
}

/// Basis of the centralizer of ξ, the Lie algebra u(n).
pub fn stabilizer_of_xi(xi: &XiPoint) -> Vec<SoElement> {
    elements(xi.n, ad_matrix(&xi.element()).nullspace())
}

/// Whether `v` lies in the span of `basis` (all of one `n`).
pub fn in_span(basis: &[SoElement], v: &SoElement) -> bool {
    let n = so_dim(v.n);
    let cols: Vec<Vec<Rational>> = basis.iter().map(SoElement::coords).collect();
    let m = Matrix::from_columns(&cols, n);
    let mut with = cols.clone();
    with.push(v.coords());
    Matrix::from_columns(&with, n).rank() == m.rank()
}

/// Bracket-closure check of a subalgebra basis.
pub fn is_subalgebra(basis: &[SoElement]) -> bool {
    basis.iter().enumerate().all(|(i, x)| basis[i + 1..].iter().all(|y| in_span(basis, &x.bracket(y))))
}

/// Splitting `so(2n,1) = u(n) ⊕ Λ²(Cⁿ)* ⊕ Cⁿ` by the eigenvalues 0, −4, −1
/// of `ad_ξ²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepDecomposition {
    pub n: usize,
    pub stabilizer: Vec<SoElement>,
    pub lambda2: Vec<SoElement>,
    pub cn: Vec<SoElement>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DecompositionDims {
    pub n: usize,
    pub total: usize,
    pub stabilizer: usize,
    pub lambda2: usize,
    pub cn: usize,
}

impl RepDecomposition {
    pub fn dims(&self) -> DecompositionDims {
        DecompositionDims { n: self.n, total: so_dim(self.n), stabilizer: self.stabilizer.len(), lambda2: self.lambda2.len(), cn: self.cn.len() }
    }

    /// Complement basis: the Λ² summand followed by the Cⁿ summand.
    pub fn complement(&self) -> Vec<SoElement> {
        self.lambda2.iter().chain(&self.cn).cloned().collect()
    }

    /// Coordinates of `v` in the basis stabilizer ++ complement.
    fn solver(&self) -> Matrix<Rational> {
        let cols: Vec<Vec<Rational>> = self.stabilizer.iter().chain(&self.lambda2).chain(&self.cn).map(SoElement::coords).collect();
        Matrix::from_columns(&cols, so_dim(self.n)).inverse().expect("decomposition is a basis")
    }
}

pub fn tangent_decomposition(xi: &XiPoint) -> Result<RepDecomposition, LieError> {
    let n = so_dim(xi.n);
    let ad = ad_matrix(&xi.element());
    let ad2 = ad.mul(&ad);
    let shifted = |c: i64| ad2.add(&Matrix::identity(n).scale(r(c)));
    let d = RepDecomposition {
        n: xi.n,
        stabilizer: elements(xi.n, ad.nullspace()),
        lambda2: elements(xi.n, shifted(4).nullspace()),
        cn: elements(xi.n, shifted(1).nullspace()),
    };
    let dims = d.dims();
    if dims.stabilizer + dims.lambda2 + dims.cn != n || ad2.nullspace().len() != dims.stabilizer {
        return Err(LieError::UnexpectedEigenvalue { stabilizer: dims.stabilizer, lambda2: dims.lambda2, cn: dims.cn, total: n });
    }
    if !is_subalgebra(&d.stabilizer) {
        return Err(LieError::NotClosed);
    }
    let x = xi.element();
    for part in [&d.lambda2, &d.cn] {
        if !part.iter().all(|v| in_span(part, &x.bracket(v))) {
            return Err(LieError::NotStable);
        }
    }
    Ok(d)
}

/// Matrix of `ad_h` restricted to the complement, in the complement basis.
fn restricted_ad(d: &RepDecomposition, solver: &Matrix<Rational>, h: &SoElement) -> Matrix<Rational> {
    let s = d.stabilizer.len();
    let comp = d.complement();
    let c = comp.len();
    let mut m = Matrix::zeros(c, c);
    for (j, v) in comp.iter().enumerate() {
        let w = solver.mul_vec(&h.bracket(v).coords());
        for i in 0..c {
            m[(i, j)] = w[s + i];
        }
    }
    m
}

/// A subset of `basis` generating the same Lie algebra, chosen greedily.
pub fn lie_generators(basis: &[SoElement]) -> Vec<SoElement> {
    let mut gens: Vec<SoElement> = Vec::new();
    let mut span: Vec<SoElement> = Vec::new();
    for h in basis {
        if in_span(&span, h) {
            continue;
        }
        gens.push(h.clone());
        span.push(h.clone());
        // close under brackets with the span
        let mut i = 0;
        while i < span.len() {
            for j in 0..i {
                let b = span[i].bracket(&span[j]);
                if !b.is_zero() && !in_span(&span, &b) {
                    span.push(b);
                }
            }
            i += 1;
        }
    }
    gens
}

/// Basis of the antisymmetric bilinear forms on the complement invariant
/// under the stabilizer, as matrices in the complement basis.
///
/// Invariance under a generating set of the stabilizer implies invariance
/// under all of it, so only the generators enter the linear system.
pub fn invariant_two_forms(d: &RepDecomposition) -> Vec<Matrix<Rational>> {
    let solver = d.solver();
    let c = d.lambda2.len() + d.cn.len();
    let idx = |i: usize, j: usize| -> (usize, i64) {
        let (a, b, s) = if i < j { (i, j, 1) } else { (j, i, -1) };
        (a * c - a * (a + 1) / 2 + (b - a - 1), s)
    };
    let unknowns = c * (c.saturating_sub(1)) / 2;
    let mut sys = SparseEchelon::new(unknowns);
    for h in lie_generators(&d.stabilizer) {
        let m = restricted_ad(d, &solver, &h);
        // (Mᵀ B + B M)_{ab} = Σ_k M_ka B_kb + B_ak M_kb
        for a in 0..c {
            for b in a + 1..c {
                let mut row = SparseRow::new();
                for k in 0..c {
                    let mut push = |coef: Rational, i: usize, j: usize| {
                        if i != j && !coef.is_zero() {
                            let (u, s) = idx(i, j);
                            *row.entry(u).or_insert(Rational::ZERO) += coef * r(s);
                        }
                    };
                    push(m[(k, a)], k, b);
                    push(m[(k, b)], a, k);
                }
                sys.add_row(row);
            }
        }
    }
    sys.nullspace()
        .iter()
        .map(|v| {
            let v = dense_from_sparse(v, unknowns);
            let mut b = Matrix::zeros(c, c);
            for i in 0..c {
                for j in i + 1..c {
                    let (u, _) = idx(i, j);
                    b[(i, j)] = v[u];
                    b[(j, i)] = -v[u];
                }
            }
            b
        })
        .collect()
}

/// Which summands a form on the complement touches: `(Λ²×Λ², Λ²×Cⁿ, Cⁿ×Cⁿ)`.
pub fn form_support(d: &RepDecomposition, b: &Matrix<Rational>) -> (bool, bool, bool) {
    let l = d.lambda2.len();
    let c = b.rows();
    let any = |rows: std::ops::Range<usize>, cols: std::ops::Range<usize>| rows.into_iter().any(|i| cols.clone().any(|j| !b[(i, j)].is_zero()));
    (any(0..l, 0..l), any(0..l, l..c), any(l..c, l..c))
}

/// `ω_ξ(X, Y) = tr(ξ [X, Y])` on the complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KirillovForm {
    pub matrix: Matrix<Rational>,
    pub rank: usize,
    pub block_diagonal: bool,
    /// `ω(X_u, X_v) / ⟨J₀u, v⟩` on the Cⁿ summand, constant by equivariance.
    pub cn_ratio: Rational,
}

pub fn trace_pairing(xi: &XiPoint, x: &SoElement, y: &SoElement) -> Rational {
    let m = xi.element().to_matrix().mul(&x.bracket(y).to_matrix());
    (0..m.rows()).fold(Rational::ZERO, |acc, i| acc + m[(i, i)])
}

pub fn kirillov_form(xi: &XiPoint, d: &RepDecomposition) -> Result<KirillovForm, LieError> {
    let comp = d.complement();
    let c = comp.len();
    let mut w = Matrix::zeros(c, c);
    for i in 0..c {
        for j in 0..c {
            w[(i, j)] = trace_pairing(xi, &comp[i], &comp[j]);
        }
    }
    debug_assert!(w.add(&w.transpose()).is_zero());
    let rank = w.rank();
    if rank < c {
        return Err(LieError::Degenerate(w.nullspace()));
    }
    let (_, cross, _) = form_support(d, &w);
    // ratio against ⟨J₀u, v⟩ over all pairs of Cⁿ basis vectors
    let mut ratio: Option<Rational> = None;
    let mut consistent = true;
    for x in &d.cn {
        for y in &d.cn {
            let euclid = xi.j0.mul_vec(&x.u).iter().zip(&y.u).fold(Rational::ZERO, |acc, (a, b)| acc + *a * *b);
            let om = trace_pairing(xi, x, y);
            if euclid.is_zero() {
                consistent &= om.is_zero();
                continue;
            }
            let q = om / euclid;
            match ratio {
                None => ratio = Some(q),
                Some(p) => consistent &= p == q,
            }
        }
    }
    let cn_ratio = match (ratio, consistent) {
        (Some(q), true) => q,
        _ => Rational::ZERO,
    };
    Ok(KirillovForm { matrix: w, rank, block_diagonal: !cross, cn_ratio })
}

/// Under so(2n,1) ⊂ so(2n+2,1) the summands of `n` land in the matching
/// summands of `n + 1` and the Kirillov forms agree.
pub fn inclusion_compatible(n: usize) -> Result<bool, LieError> {
    let (a, b) = (XiPoint::standard(n)?, XiPoint::standard(n + 1)?);
    let (da, db) = (tangent_decomposition(&a)?, tangent_decomposition(&b)?);
    let parts = |d: &RepDecomposition| [d.stabilizer.clone(), d.lambda2.clone(), d.cn.clone()];
    for (small, big) in parts(&da).iter().zip(parts(&db).iter()) {
        if !small.iter().all(|v| in_span(big, &v.include())) {
            return Ok(false);
        }
    }
    let comp = da.complement();
    for x in &comp {
        for y in &comp {
            if trace_pairing(&a, x, y) != trace_pairing(&b, &x.include(), &y.include()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Everything computed for one `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LieSummary {
    pub dims: DecompositionDims,
    pub stabilizer_closed: bool,
    pub stabilizer_in_un: bool,
    pub invariant_forms: usize,
    pub forms_on_single_summands: bool,
    pub kirillov_rank: usize,
    pub kirillov_block_diagonal: bool,
    pub cn_ratio: String,
}

pub fn lie_summary(n: usize) -> Result<LieSummary, LieError> {
    let xi = XiPoint::standard(n)?;
    let d = tangent_decomposition(&xi)?;
    let in_un = d.stabilizer.iter().all(|h| h.u.iter().all(Rational::is_zero) && h.a.mul(&xi.j0) == xi.j0.mul(&h.a));
    let forms = invariant_two_forms(&d);
    let single = forms.iter().all(|b| {
        let (l, cross, c) = form_support(&d, b);
        !cross && !(l && c)
    });
    let k = kirillov_form(&xi, &d)?;
    Ok(LieSummary {
        dims: d.dims(),
        stabilizer_closed: is_subalgebra(&d.stabilizer),
        stabilizer_in_un: in_un,
        invariant_forms: forms.len(),
        forms_on_single_summands: single,
        kirillov_rank: k.rank,
        kirillov_block_diagonal: k.block_diagonal,
        cn_ratio: k.cn_ratio.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_round_trip() {
        for n in 1..=3 {
            for k in 0..so_dim(n) {
                let e = SoElement::basis(n, k);
                assert!(preserves_form(&e.to_matrix()));
                assert_eq!(SoElement::from_matrix(&e.to_matrix()).unwrap(), e);
            }
        }
        assert!(SoElement::from_matrix(&Matrix::identity(3)).is_none());
    }

    #[test]
    fn decomposition_small_n() {
        let expect = [(1, 1, 0, 2), (2, 4, 2, 4), (3, 9, 6, 6)];
        for (n, s, l, c) in expect {
            let d = tangent_decomposition(&XiPoint::standard(n).unwrap()).unwrap();
            assert_eq!((d.stabilizer.len(), d.lambda2.len(), d.cn.len()), (s, l, c), "n = {n}");
            assert!(is_subalgebra(&d.stabilizer));
        }
    }

    #[test]
    fn invariant_forms_count() {
        for (n, want) in [(1, 1), (2, 2), (3, 2)] {
            let d = tangent_decomposition(&XiPoint::standard(n).unwrap()).unwrap();
            let forms = invariant_two_forms(&d);
            assert_eq!(forms.len(), want, "n = {n}");
        }
    }

    #[test]
    fn kirillov_n1_is_area_form() {
        let xi = XiPoint::standard(1).unwrap();
        let d = tangent_decomposition(&xi).unwrap();
        let k = kirillov_form(&xi, &d).unwrap();
        assert_eq!(k.matrix.rows(), 2);
        assert!(!k.matrix.determinant().is_zero());
        assert_eq!(k.matrix[(0, 1)], -k.matrix[(1, 0)]);
        assert_eq!(k.cn_ratio, r(2));
    }

    #[test]
    fn kirillov_n2_blocks() {
        let xi = XiPoint::standard(2).unwrap();
        let d = tangent_decomposition(&xi).unwrap();
        let k = kirillov_form(&xi, &d).unwrap();
        assert!(k.block_diagonal);
        assert_eq!(k.matrix.rows(), 6);
        assert!(!k.matrix.determinant().is_zero());
        assert!(inclusion_compatible(1).unwrap());
        assert!(inclusion_compatible(2).unwrap());
    }

    #[test]
    fn generators_generate() {
        let d = tangent_decomposition(&XiPoint::standard(3).unwrap()).unwrap();
        let g = lie_generators(&d.stabilizer);
        assert!(g.len() < d.stabilizer.len());
    }
}
