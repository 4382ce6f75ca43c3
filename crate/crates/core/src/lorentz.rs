//! Lorentzian linear algebra in the normal basis.
//!
//! Vectors are coordinate lists with respect to the simple-root (facet
//! normal) basis; the bilinear form is always evaluated through the Gram
//! matrix, so no orthonormal frame or square root is ever needed.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{GoldenScalar, Rational};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("unsupported label {0}: only 2, 3 and 5 have cosines in Q(√5)")]
    UnsupportedLabel(u32),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("generator index {0} out of range")]
    BadGenerator(usize),
    #[error("vector is not a unit spacelike vector (norm {0})")]
    NonUnit(GoldenScalar),
    #[error("vector is not spacelike (norm {0})")]
    NotSpacelike(GoldenScalar),
}

/// Coxeter diagram: labels `m_ij >= 3` on edges, absent edges meaning 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterDiagram {
    rank: usize,
    labels: BTreeMap<(usize, usize), u32>,
}

impl CoxeterDiagram {
    pub fn new(rank: usize, edges: impl IntoIterator<Item = (usize, usize, u32)>) -> Result<Self, GeomError> {
        let mut labels = BTreeMap::new();
        for (i, j, m) in edges {
            if i == j || i >= rank || j >= rank {
                return Err(GeomError::InvalidDiagram(format!("bad edge ({i},{j})")));
            }
            if m < 2 {
                return Err(GeomError::InvalidDiagram(format!("label {m} < 2")));
            }
            if m > 2 {
                labels.insert((i.min(j), i.max(j)), m);
            }
        }
        Ok(CoxeterDiagram { rank, labels })
    }

    /// Linear (string) diagram such as `[5,3,3]`.
    pub fn linear(labels: &[u32]) -> Self {
        let edges = labels.iter().enumerate().map(|(i, &m)| (i, i + 1, m));
        CoxeterDiagram::new(labels.len() + 1, edges).expect("linear diagram")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self, i: usize, j: usize) -> u32 {
        if i == j {
            return 1;
        }
        *self.labels.get(&(i.min(j), i.max(j))).unwrap_or(&2)
    }

    /// Sub-diagram on the given nodes, renumbered in order.
    pub fn restrict(&self, nodes: &[usize]) -> CoxeterDiagram {
        let mut edges = Vec::new();
        for (a, &i) in nodes.iter().enumerate() {
            for (b, &j) in nodes.iter().enumerate().skip(a + 1) {
                edges.push((a, b, self.label(i, j)));
            }
        }
        CoxeterDiagram::new(nodes.len(), edges).expect("restriction of a valid diagram")
    }
}

/// `-cos(π/m)` for the labels representable in Q(√5).
pub fn neg_cos_pi_over(m: u32) -> Result<GoldenScalar, GeomError> {
    match m {
        1 => Ok(GoldenScalar::ONE),
        2 => Ok(GoldenScalar::ZERO),
        3 => Ok(GoldenScalar::from_rational(Rational::new(-1, 2))),
        5 => Ok(GoldenScalar::new(Rational::ZERO, Rational::new(-1, 2))),
        other => Err(GeomError::UnsupportedLabel(other)),
    }
}

/// Symmetric matrix of pairings between unit facet normals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GramMatrix {
    entries: Matrix<GoldenScalar>,
}

#[derive(Serialize, Deserialize)]
struct GramJson {
    rank: usize,
    entries: Vec<Vec<GoldenScalar>>,
}

impl Serialize for GramMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = self.dim();
        GramJson { rank: n, entries: (0..n).map(|i| self.entries.row(i).to_vec()).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GramMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = GramJson::deserialize(d)?;
        if j.entries.len() != j.rank || j.entries.iter().any(|r| r.len() != j.rank) {
            return Err(serde::de::Error::custom("gram entries do not match rank"));
        }
        GramMatrix::from_matrix(Matrix::from_rows(j.entries)).map_err(serde::de::Error::custom)
    }
}

impl GramMatrix {
    pub fn from_matrix(entries: Matrix<GoldenScalar>) -> Result<Self, GeomError> {
        let n = entries.rows();
        if entries.cols() != n {
            return Err(GeomError::DimensionMismatch { expected: n, got: entries.cols() });
        }
        for i in 0..n {
            for j in 0..n {
                if entries[(i, j)] != entries[(j, i)] {
                    return Err(GeomError::InvalidDiagram("gram matrix is not symmetric".into()));
                }
            }
        }
        Ok(GramMatrix { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    pub fn matrix(&self) -> &Matrix<GoldenScalar> {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> GoldenScalar {
        self.entries[(i, j)]
    }

    fn check(&self, v: &NormalBasisVector) -> Result<(), GeomError> {
        if v.coords.len() != self.dim() {
            return Err(GeomError::DimensionMismatch { expected: self.dim(), got: v.coords.len() });
        }
        Ok(())
    }

    /// `⟨u, v⟩ = uᵀ G v`.
    pub fn inner(&self, u: &NormalBasisVector, v: &NormalBasisVector) -> Result<GoldenScalar, GeomError> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.inner_unchecked(&u.coords, &v.coords))
    }

    pub(crate) fn inner_unchecked(&self, u: &[GoldenScalar], v: &[GoldenScalar]) -> GoldenScalar {
        let gv = self.entries.mul_vec(v);
        u.iter().zip(&gv).fold(GoldenScalar::ZERO, |acc, (a, b)| acc + *a * *b)
    }

    pub fn norm(&self, v: &NormalBasisVector) -> Result<GoldenScalar, GeomError> {
        self.inner(v, v)
    }

    /// `σ_i(v) = v − 2⟨e_i, v⟩ e_i`.
    pub fn reflect(&self, i: usize, v: &NormalBasisVector) -> Result<NormalBasisVector, GeomError> {
        if i >= self.dim() {
            return Err(GeomError::BadGenerator(i));
        }
        self.check(v)?;
        let pairing = (0..self.dim()).fold(GoldenScalar::ZERO, |acc, j| acc + self.entries[(i, j)] * v.coords[j]);
        let mut out = v.clone();
        out.coords[i] -= pairing + pairing;
        Ok(out)
    }

    /// Matrix of the simple reflection `σ_i` acting on normal-basis coordinates.
    pub fn reflection_matrix(&self, i: usize) -> LorentzMatrix {
        let n = self.dim();
        let mut m = Matrix::identity(n);
        for j in 0..n {
            let g = self.entries[(i, j)];
            m[(i, j)] -= g + g;
        }
        LorentzMatrix { entries: m }
    }

    /// Reflection in the hyperplane `d^⊥` for a spacelike `d`.
    pub fn reflection_in(&self, d: &NormalBasisVector) -> Result<LorentzMatrix, GeomError> {
        let nd = self.norm(d)?;
        if nd.sign() <= 0 {
            return Err(GeomError::NotSpacelike(nd));
        }
        let n = self.dim();
        let gd = self.entries.mul_vec(&d.coords);
        let two_over = GoldenScalar::from_ints(2, 0) / nd;
        let mut m = Matrix::identity(n);
        for r in 0..n {
            for c in 0..n {
                m[(r, c)] -= two_over * d.coords[r] * gd[c];
            }
        }
        Ok(LorentzMatrix { entries: m })
    }

    /// Cosine of the dihedral angle between the half-spaces with unit
    /// normals `u` and `v`, i.e. `−⟨u, v⟩`.
    pub fn dihedral_cosine(&self, u: &NormalBasisVector, v: &NormalBasisVector) -> Result<DihedralCosine, GeomError> {
        for w in [u, v] {
            let n = self.norm(w)?;
            if n != GoldenScalar::ONE {
                return Err(GeomError::NonUnit(n));
            }
        }
        let cosine = -self.inner(u, v)?;
        let degenerate = cosine == GoldenScalar::ONE || cosine == -GoldenScalar::ONE;
        Ok(DihedralCosine { cosine, degenerate })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DihedralCosine {
    pub cosine: GoldenScalar,
    /// `|cos| = 1`: the two hyperplanes coincide.
    pub degenerate: bool,
}

/// Gram matrix of a Coxeter diagram: 1 on the diagonal, `−cos(π/m_ij)` off it.
pub fn gram_of_diagram(d: &CoxeterDiagram) -> Result<GramMatrix, GeomError> {
    let n = d.rank();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = neg_cos_pi_over(d.label(i, j))?;
        }
    }
    GramMatrix::from_matrix(m)
}

/// Vector in normal-basis coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct NormalBasisVector {
    pub coords: Vec<GoldenScalar>,
}

impl NormalBasisVector {
    pub fn new(coords: Vec<GoldenScalar>) -> Self {
        NormalBasisVector { coords }
    }

    /// Simple root `e_i`.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut coords = vec![GoldenScalar::ZERO; n];
        coords[i] = GoldenScalar::ONE;
        NormalBasisVector { coords }
    }

    pub fn sub(&self, o: &Self) -> Self {
        NormalBasisVector::new(self.coords.iter().zip(&o.coords).map(|(a, b)| *a - *b).collect())
    }

    pub fn neg(&self) -> Self {
        NormalBasisVector::new(self.coords.iter().map(|a| -*a).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// Linear map on normal-basis coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LorentzMatrix {
    pub entries: Matrix<GoldenScalar>,
}

impl LorentzMatrix {
    pub fn identity(n: usize) -> Self {
        LorentzMatrix { entries: Matrix::identity(n) }
    }

    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    pub fn compose(&self, o: &LorentzMatrix) -> LorentzMatrix {
        LorentzMatrix { entries: self.entries.mul(&o.entries) }
    }

    pub fn apply(&self, v: &NormalBasisVector) -> NormalBasisVector {
        NormalBasisVector::new(self.entries.mul_vec(&v.coords))
    }

    /// `Mᵀ G M = G`.
    pub fn preserves(&self, g: &GramMatrix) -> bool {
        self.dim() == g.dim() && self.entries.transpose().mul(g.matrix()).mul(&self.entries) == *g.matrix()
    }

    pub fn determinant(&self) -> GoldenScalar {
        self.entries.determinant()
    }
}

/// Inertia `(positive, negative, zero)` of a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn new(positive: usize, negative: usize, zero: usize) -> Self {
        Signature { positive, negative, zero }
    }
}

/// Exact inertia by symmetric congruence reduction over Q(√5).
pub fn signature(g: &GramMatrix) -> Signature {
    symmetric_inertia(g.matrix())
}

pub fn symmetric_inertia(a: &Matrix<GoldenScalar>) -> Signature {
    let n = a.rows();
    let mut m = a.clone();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    let mut k = 0;
    while k < n {
        if m[(k, k)].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !m[(j, j)].is_zero()) {
                swap_sym(&mut m, k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !m[(k, j)].is_zero()) {
                // row/col k += row/col j makes the pivot 2·m[k][j] ≠ 0
                add_sym(&mut m, k, j, GoldenScalar::ONE);
            } else {
                zero += 1;
                k += 1;
                continue;
            }
        }
        let p = m[(k, k)];
        match p.sign() {
            1 => pos += 1,
            -1 => neg += 1,
            _ => unreachable!("pivot is nonzero"),
        }
        for i in k + 1..n {
            let f = m[(i, k)] / p;
            if !f.is_zero() {
                add_sym(&mut m, i, k, -f);
            }
        }
        k += 1;
    }
    Signature::new(pos, neg, zero)
}

// row_i += f·row_j, then col_i += f·col_j
fn add_sym(m: &mut Matrix<GoldenScalar>, i: usize, j: usize, f: GoldenScalar) {
    let n = m.rows();
    for c in 0..n {
        let v = m[(j, c)];
        m[(i, c)] += f * v;
    }
    for r in 0..n {
        let v = m[(r, j)];
        m[(r, i)] += f * v;
    }
}

fn swap_sym(m: &mut Matrix<GoldenScalar>, i: usize, j: usize) {
    let n = m.rows();
    for c in 0..n {
        let t = m[(i, c)];
        m[(i, c)] = m[(j, c)];
        m[(j, c)] = t;
    }
    for r in 0..n {
        let t = m[(r, i)];
        m[(r, i)] = m[(r, j)];
        m[(r, j)] = t;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half(a: i64, b: i64) -> GoldenScalar {
        GoldenScalar::new(Rational::new(a, 2), Rational::new(b, 2))
    }

    #[test]
    fn tridiagonal_grams() {
        let g = gram_of_diagram(&CoxeterDiagram::linear(&[5, 3, 3])).unwrap();
        assert_eq!(g.entry(0, 1), half(0, -1));
        assert_eq!(g.entry(1, 2), half(-1, 0));
        assert_eq!(g.entry(2, 3), half(-1, 0));
        assert_eq!(g.entry(0, 2), GoldenScalar::ZERO);
        let h = gram_of_diagram(&CoxeterDiagram::linear(&[5, 3, 3, 5])).unwrap();
        assert_eq!(h.entry(3, 4), half(0, -1));
    }

    #[test]
    fn rejects_unsupported_labels() {
        for m in [4, 6, 7] {
            let err = gram_of_diagram(&CoxeterDiagram::linear(&[m])).unwrap_err();
            assert_eq!(err, GeomError::UnsupportedLabel(m));
            assert!(err.to_string().contains("unsupported label"));
        }
    }

    #[test]
    fn signatures() {
        let id = GramMatrix::from_matrix(Matrix::identity(4)).unwrap();
        assert_eq!(signature(&id), Signature::new(4, 0, 0));
        let h4 = gram_of_diagram(&CoxeterDiagram::linear(&[5, 3, 3])).unwrap();
        assert_eq!(signature(&h4), Signature::new(4, 0, 0));
        let hyp = gram_of_diagram(&CoxeterDiagram::linear(&[5, 3, 3, 5])).unwrap();
        assert_eq!(signature(&hyp), Signature::new(4, 1, 0));
    }

    #[test]
    fn zero_diagonal_pivot() {
        // [[0,1],[1,0]] has inertia (1,1,0)
        let m = Matrix::from_rows(vec![vec![GoldenScalar::ZERO, GoldenScalar::ONE], vec![GoldenScalar::ONE, GoldenScalar::ZERO]]);
        assert_eq!(symmetric_inertia(&m), Signature::new(1, 1, 0));
        let z = Matrix::zeros(3, 3);
        assert_eq!(symmetric_inertia(&z), Signature::new(0, 0, 3));
    }

    #[test]
    fn reflections() {
        let g = gram_of_diagram(&CoxeterDiagram::linear(&[5, 3, 3])).unwrap();
        let e0 = NormalBasisVector::basis(4, 0);
        let e2 = NormalBasisVector::basis(4, 2);
        assert_eq!(g.reflect(0, &e0).unwrap(), e0.neg());
        assert_eq!(g.reflect(0, &e2).unwrap(), e2);
        let v = NormalBasisVector::new(vec![half(1, 3), half(-2, 1), GoldenScalar::PHI, GoldenScalar::ONE]);
        for i in 0..4 {
            assert_eq!(g.reflect(i, &g.reflect(i, &v).unwrap()).unwrap(), v);
            assert_eq!(g.reflection_matrix(i).apply(&v), g.reflect(i, &v).unwrap());
            assert!(g.reflection_matrix(i).preserves(&g));
        }
        assert!(g.reflect(7, &v).is_err());
        assert!(g.reflect(0, &NormalBasisVector::basis(3, 0)).is_err());
    }

    #[test]
    fn dihedral_cosines() {
        let g = gram_of_diagram(&CoxeterDiagram::linear(&[5, 3, 3])).unwrap();
        let e = |i| NormalBasisVector::basis(4, i);
        assert_eq!(g.dihedral_cosine(&e(0), &e(2)).unwrap().cosine, GoldenScalar::ZERO);
        let same = g.dihedral_cosine(&e(1), &e(1)).unwrap();
        assert_eq!(same.cosine, -GoldenScalar::ONE);
        assert!(same.degenerate);
        let long = NormalBasisVector::new(vec![GoldenScalar::from_ints(2, 0), GoldenScalar::ZERO, GoldenScalar::ZERO, GoldenScalar::ZERO]);
        assert!(matches!(g.dihedral_cosine(&long, &e(0)), Err(GeomError::NonUnit(_))));
    }

    #[test]
    fn gram_json_round_trip() {
        let g = gram_of_diagram(&CoxeterDiagram::linear(&[5])).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"rank":2,"entries":[["1/1 + 0/1*phi","0/1 + -1/2*phi"],["0/1 + -1/2*phi","1/1 + 0/1*phi"]]}"#);
        let back: GramMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }
}
