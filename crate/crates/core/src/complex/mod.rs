//! Cell complexes with integer boundary matrices, cellular maps, quotients
//! of polytopes by facet pairings, and barycentric subdivision.

mod quotient;
mod subdivide;

pub use quotient::{fixed_strata, quotient_complex, FixedStrata, OrbitData, PairingQuotient, QuotientMap, QuotientSpec, StratumCount};
pub use subdivide::{barycentric_subdivision, subdivided_quotient, FacePoset, Subdivision};

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coxeter::FaceLattice;
use crate::homology::{check_chain_complex, HomologyError, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("orientation transport inconsistent at {dim}-cell orbit of lattice cell {cell}")]
    OrientationTransport { dim: usize, cell: usize },
    #[error("map does not descend to the quotient: witness {dim}-cell {cell}")]
    NotDescending { dim: usize, cell: usize },
    #[error("not a chain map in degree {0}")]
    NotChainMap(usize),
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("map has infinite order or order above {0}")]
    InfiniteOrder(usize),
    #[error(transparent)]
    Coxeter(#[from] crate::coxeter::CoxeterError),
}

/// `(dimension, index)` of a cell.
pub type CellRef = (usize, usize);

/// Finite CW complex given by its cellular boundary matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CwComplex {
    // boundary[k] : C_k -> C_{k-1}; boundary[0] has zero rows
    boundary: Vec<IntMatrix>,
    labels: BTreeMap<String, Vec<CellRef>>,
}

impl CwComplex {
    /// Complex from boundary matrices `∂_0, …, ∂_top`; checks shapes and `∂∂ = 0`.
    pub fn new(boundary: Vec<IntMatrix>) -> Result<CwComplex, ComplexError> {
        if boundary.is_empty() || boundary[0].rows() != 0 {
            return Err(ComplexError::Shape("∂_0 must have zero rows".into()));
        }
        for k in 1..boundary.len() {
            if boundary[k].rows() != boundary[k - 1].cols() {
                return Err(ComplexError::Shape(format!("∂_{k} has {} rows, C_{} has {} cells", boundary[k].rows(), k - 1, boundary[k - 1].cols())));
            }
        }
        check_chain_complex(&boundary)?;
        Ok(CwComplex { boundary, labels: BTreeMap::new() })
    }

    /// Complex from cell counts and `(k, cell, face, coeff)` incidences.
    pub fn from_incidences(counts: &[usize], incidences: impl IntoIterator<Item = (usize, usize, usize, i64)>) -> Result<CwComplex, ComplexError> {
        let mut trip: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); counts.len()];
        for (k, c, f, v) in incidences {
            if k == 0 || k >= counts.len() {
                return Err(ComplexError::Shape(format!("incidence in degree {k}")));
            }
            trip[k].push((f, c, v));
        }
        let mut boundary = vec![IntMatrix::zeros(0, counts.first().copied().unwrap_or(0))];
        for k in 1..counts.len() {
            boundary.push(IntMatrix::from_triplets(counts[k - 1], counts[k], trip[k].iter().copied()));
        }
        CwComplex::new(boundary)
    }

    pub fn dim(&self) -> usize {
        self.boundary.len() - 1
    }

    pub fn counts(&self) -> Vec<usize> {
        self.boundary.iter().map(IntMatrix::cols).collect()
    }

    pub fn boundaries(&self) -> &[IntMatrix] {
        &self.boundary
    }

    pub fn boundary(&self, k: usize) -> &IntMatrix {
        &self.boundary[k]
    }

    pub fn labels(&self) -> &BTreeMap<String, Vec<CellRef>> {
        &self.labels
    }

    pub fn label(&mut self, name: &str, cells: Vec<CellRef>) {
        self.labels.insert(name.to_string(), cells);
    }

    pub fn cell_name(k: usize, c: usize) -> String {
        format!("d{k}_{c:04}")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut cells = Vec::new();
        let mut boundary = Vec::new();
        for (k, b) in self.boundary.iter().enumerate() {
            for c in 0..b.cols() {
                cells.push(serde_json::json!({ "id": Self::cell_name(k, c), "dim": k }));
                for &(f, v) in b.column(c) {
                    boundary.push(serde_json::json!({ "cell": Self::cell_name(k, c), "face": Self::cell_name(k - 1, f as usize), "coeff": v }));
                }
            }
        }
        let labels: serde_json::Map<String, serde_json::Value> = self
            .labels
            .iter()
            .map(|(name, cs)| (name.clone(), serde_json::json!(cs.iter().map(|&(k, c)| Self::cell_name(k, c)).collect::<Vec<_>>())))
            .collect();
        serde_json::json!({ "cells": cells, "boundary": boundary, "labels": labels })
    }
}

/// The polytope itself (a ball) as a regular CW complex.
pub fn lattice_complex(l: &FaceLattice) -> CwComplex {
    let counts: Vec<usize> = (0..=l.dim()).map(|k| l.count(k)).collect();
    let inc = (1..=l.dim()).flat_map(|k| (0..l.count(k)).flat_map(move |c| l.facets(k, c).iter().map(move |&(f, s)| (k, c, f as usize, s as i64))));
    CwComplex::from_incidences(&counts, inc).expect("lattice incidences satisfy ∂∂ = 0")
}

/// Two copies of the polytope glued by the identity along the boundary.
/// The codimension-2 skeleton is labelled `singular` (the mirror corners of
/// the reflection orbifold).
pub fn double(l: &FaceLattice) -> CwComplex {
    let r = l.dim();
    let mut counts: Vec<usize> = (0..r).map(|k| l.count(k)).collect();
    counts.push(2);
    let mut inc = Vec::new();
    for k in 1..r {
        for c in 0..l.count(k) {
            for &(f, s) in l.facets(k, c) {
                inc.push((k, c, f as usize, s as i64));
            }
        }
    }
    for &(f, s) in l.facets(r, 0) {
        inc.push((r, 0, f as usize, s as i64));
        inc.push((r, 1, f as usize, -(s as i64)));
    }
    let mut c = CwComplex::from_incidences(&counts, inc).expect("double satisfies ∂∂ = 0");
    if r >= 2 {
        let singular = (0..=r - 2).flat_map(|k| (0..l.count(k)).map(move |i| (k, i))).collect();
        c.label("singular", singular);
    }
    c
}

/// Cycle with `n ≥ 1` vertices and edges.
pub fn cycle_complex(n: usize) -> CwComplex {
    let inc = (0..n).flat_map(|e| [(1, e, e, -1i64), (1, e, (e + 1) % n, 1)]);
    CwComplex::from_incidences(&[n, n], inc).expect("cycle")
}

/// Product cell structure with `∂(a × b) = ∂a × b + (−1)^{|a|} a × ∂b`.
/// Cells of degree `k` are ordered by `(i, a, b)` with `|a| = i`.
pub fn product_complex(x: &CwComplex, y: &CwComplex) -> CwComplex {
    let (cx, cy) = (x.counts(), y.counts());
    let top = x.dim() + y.dim();
    // index of (i, a, j, b) in degree i + j
    let mut offset = vec![vec![0usize; cx.len()]; top + 1];
    let mut counts = vec![0usize; top + 1];
    for k in 0..=top {
        for i in 0..cx.len() {
            if k >= i && k - i < cy.len() {
                offset[k][i] = counts[k];
                counts[k] += cx[i] * cy[k - i];
            }
        }
    }
    let id = |i: usize, a: usize, j: usize, b: usize| offset[i + j][i] + a * cy[j] + b;
    let mut inc = Vec::new();
    for i in 0..cx.len() {
        for j in 0..cy.len() {
            if i + j == 0 {
                continue;
            }
            for a in 0..cx[i] {
                for b in 0..cy[j] {
                    let c = id(i, a, j, b);
                    if i > 0 {
                        for &(f, v) in x.boundary(i).column(a) {
                            inc.push((i + j, c, id(i - 1, f as usize, j, b), v));
                        }
                    }
                    if j > 0 {
                        let s = if i % 2 == 0 { 1 } else { -1 };
                        for &(f, v) in y.boundary(j).column(b) {
                            inc.push((i + j, c, id(i, a, j - 1, f as usize), s * v));
                        }
                    }
                }
            }
        }
    }
    CwComplex::from_incidences(&counts, inc).expect("product of chain complexes")
}

/// Cellular chain map between two complexes.
#[derive(Debug, Clone)]
pub struct CellMap {
    source: Arc<CwComplex>,
    target: Arc<CwComplex>,
    maps: Vec<IntMatrix>,
    pointwise: Option<Vec<Vec<bool>>>,
}

impl CellMap {
    /// Checks shapes and `∂ f = f ∂` exactly.
    pub fn new(source: Arc<CwComplex>, target: Arc<CwComplex>, maps: Vec<IntMatrix>) -> Result<CellMap, ComplexError> {
        let (cs, ct) = (source.counts(), target.counts());
        if maps.len() != cs.len() || cs.len() != ct.len() {
            return Err(ComplexError::Shape("map degrees do not match complexes".into()));
        }
        for k in 0..maps.len() {
            if maps[k].rows() != ct[k] || maps[k].cols() != cs[k] {
                return Err(ComplexError::Shape(format!("f_{k} has wrong shape")));
            }
            if k > 0 && target.boundary(k).mul(&maps[k]) != maps[k - 1].mul(source.boundary(k)) {
                return Err(ComplexError::NotChainMap(k));
            }
        }
        Ok(CellMap { source, target, maps, pointwise: None })
    }

    pub fn identity(c: Arc<CwComplex>) -> CellMap {
        let maps = c.counts().iter().map(|&n| IntMatrix::identity(n)).collect();
        CellMap { source: c.clone(), target: c, maps, pointwise: None }
    }

    /// Record which cells the underlying map fixes pointwise, when that is
    /// known from geometry rather than from the chain map alone.
    pub fn with_pointwise(mut self, pointwise: Vec<Vec<bool>>) -> Self {
        self.pointwise = Some(pointwise);
        self
    }

    pub fn source(&self) -> &CwComplex {
        &self.source
    }

    pub fn target(&self) -> &CwComplex {
        &self.target
    }

    pub fn source_arc(&self) -> &Arc<CwComplex> {
        &self.source
    }

    pub fn matrix(&self, k: usize) -> &IntMatrix {
        &self.maps[k]
    }

    pub fn pointwise(&self) -> Option<&Vec<Vec<bool>>> {
        self.pointwise.as_ref()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &CellMap) -> Result<CellMap, ComplexError> {
        if other.target.counts() != self.source.counts() {
            return Err(ComplexError::Shape("composition of incompatible maps".into()));
        }
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.mul(b)).collect();
        CellMap::new(other.source.clone(), self.target.clone(), maps)
    }

    pub fn is_identity(&self) -> bool {
        self.maps.iter().all(|m| m.rows() == m.cols() && *m == IntMatrix::identity(m.rows()))
    }

    pub fn same_matrices(&self, other: &CellMap) -> bool {
        self.maps == other.maps
    }

    /// Smallest `n ≤ bound` with `fⁿ = id`.
    pub fn order(&self, bound: usize) -> Result<usize, ComplexError> {
        let mut acc = self.clone();
        for n in 1..=bound {
            if acc.is_identity() {
                return Ok(n);
            }
            acc = self.compose(&acc)?;
        }
        Err(ComplexError::InfiniteOrder(bound))
    }
}

/// Translation by one step along the first factor of `cycle(a) × cycle(b)`.
pub fn torus_translation(a: usize, b: usize) -> CellMap {
    let t = Arc::new(product_complex(&cycle_complex(a), &cycle_complex(b)));
    let cx = [a, a];
    let cy = [b, b];
    let mut maps = Vec::new();
    for k in 0..=2 {
        let mut trip = Vec::new();
        let mut base = 0;
        for i in 0..2 {
            let j = k as isize - i as isize;
            if !(0..2).contains(&j) {
                continue;
            }
            let j = j as usize;
            for x in 0..cx[i] {
                for y in 0..cy[j] {
                    trip.push((base + ((x + 1) % a) * cy[j] + y, base + x * cy[j] + y, 1));
                }
            }
            base += cx[i] * cy[j];
        }
        maps.push(IntMatrix::from_triplets(base, base, trip));
    }
    CellMap::new(t.clone(), t, maps).expect("translation is a chain map")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{generate_group, FaceLattice};
    use crate::homology::{euler_characteristic, integral_homology, FgAbGroup};
    use crate::lorentz::CoxeterDiagram;

    fn lattice(labels: &[u32]) -> FaceLattice {
        FaceLattice::regular(generate_group(&CoxeterDiagram::linear(labels), 1000).unwrap()).unwrap()
    }

    #[test]
    fn torus_grid() {
        let t = product_complex(&cycle_complex(3), &cycle_complex(2));
        assert_eq!(t.counts(), vec![6, 12, 6]);
        assert_eq!(euler_characteristic(&t), 0);
        let h = integral_homology(&t).unwrap();
        assert_eq!(h, vec![FgAbGroup::free(1), FgAbGroup::free(2), FgAbGroup::free(1)]);
    }

    #[test]
    fn doubles_are_spheres() {
        for labels in [&[3][..], &[5], &[5, 3], &[3, 3, 3]] {
            let l = lattice(labels);
            let d = double(&l);
            let h = integral_homology(&d).unwrap();
            let r = l.dim();
            for (k, g) in h.iter().enumerate() {
                let expect = if k == 0 || k == r { FgAbGroup::free(1) } else { FgAbGroup::trivial() };
                assert_eq!(*g, expect, "{labels:?} H_{k}");
            }
            assert_eq!(euler_characteristic(&d), if r.is_multiple_of(2) { 2 } else { 0 });
        }
        let tri = double(&lattice(&[3]));
        assert_eq!(tri.labels()["singular"].len(), 3);
        assert_eq!(double(&lattice(&[5])).labels()["singular"].len(), 5);
    }

    #[test]
    fn ball_is_acyclic() {
        let c = lattice_complex(&lattice(&[5, 3]));
        let h = integral_homology(&c).unwrap();
        assert_eq!(h[0], FgAbGroup::free(1));
        assert!(h[1..].iter().all(FgAbGroup::is_trivial));
    }

    #[test]
    fn translation_is_free_of_order_a() {
        let f = torus_translation(3, 2);
        assert_eq!(f.order(10).unwrap(), 3);
        let strata = fixed_strata(&f).unwrap();
        assert_eq!(strata.total_setwise(), 0);
        let id = CellMap::identity(f.source_arc().clone());
        let s = fixed_strata(&id).unwrap();
        assert!(s.per_dim.iter().all(|d| d.setwise == d.cells && d.pointwise == d.cells));
    }

    #[test]
    fn json_shape() {
        let c = cycle_complex(1);
        let v = c.to_json();
        assert_eq!(v["cells"][1]["id"], "d1_0000");
        assert_eq!(v["boundary"].as_array().unwrap().len(), 0);
    }
}
