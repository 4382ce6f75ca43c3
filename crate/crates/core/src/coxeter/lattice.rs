use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::{CoxeterError, ReflectionGroup};

/// A face of the polytope: the coset `rep · W_J` where `W_J` is generated by
/// every simple reflection except `omitted`. The top cell has no omitted node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LatticeCell {
    pub rep: usize,
    pub omitted: Option<usize>,
}

/// Face lattice of the regular polytope of a linear Coxeter diagram,
/// built from parabolic cosets (Wythoff construction with the first node ringed).
#[derive(Debug, Clone)]
pub struct FaceLattice {
    group: ReflectionGroup,
    cells: Vec<Vec<LatticeCell>>,
    // face_of[k][g] = id of the k-face of chamber g
    face_of: Vec<Vec<u32>>,
    // facets[k][c] = (k-1)-faces of c with incidence sign, sorted by id
    facets: Vec<Vec<Vec<(u32, i8)>>>,
    cofacets: Vec<Vec<Vec<u32>>>,
}

impl FaceLattice {
    /// Build the lattice of `{p, q, ...}` from its full symmetry group.
    pub fn regular(group: ReflectionGroup) -> Result<FaceLattice, CoxeterError> {
        let r = group.num_generators();
        let d = group.diagram();
        if r == 0 || d.rank() != r {
            return Err(CoxeterError::WrongGroup("need the full group of the diagram".into()));
        }
        for i in 0..r {
            for j in i + 2..r {
                if d.label(i, j) != 2 {
                    return Err(CoxeterError::WrongGroup("diagram is not linear".into()));
                }
            }
        }
        let n = group.order();
        let mut cells = Vec::with_capacity(r + 1);
        let mut face_of = Vec::with_capacity(r + 1);
        for k in 0..r {
            let gens: Vec<usize> = (0..r).filter(|&j| j != k).collect();
            let mut label = vec![u32::MAX; n];
            let mut reps = Vec::new();
            for g in 0..n {
                if label[g] != u32::MAX {
                    continue;
                }
                let id = reps.len() as u32;
                reps.push(LatticeCell { rep: g, omitted: Some(k) });
                label[g] = id;
                let mut stack = vec![g];
                while let Some(x) = stack.pop() {
                    for &j in &gens {
                        let y = group.right_mul_gen(x, j);
                        if label[y] == u32::MAX {
                            label[y] = id;
                            stack.push(y);
                        }
                    }
                }
            }
            cells.push(reps);
            face_of.push(label);
        }
        cells.push(vec![LatticeCell { rep: 0, omitted: None }]);
        face_of.push(vec![0; n]);

        let mut raw: Vec<Vec<BTreeSet<u32>>> = vec![Vec::new()];
        for k in 1..=r {
            let mut f = vec![BTreeSet::new(); cells[k].len()];
            for g in 0..n {
                f[face_of[k][g] as usize].insert(face_of[k - 1][g]);
            }
            raw.push(f);
        }
        let mut cofacets: Vec<Vec<Vec<u32>>> = cells.iter().map(|c| vec![Vec::new(); c.len()]).collect();
        for k in 1..=r {
            for (c, fs) in raw[k].iter().enumerate() {
                for &f in fs {
                    cofacets[k - 1][f as usize].push(c as u32);
                }
            }
        }
        let facets = orient(&raw)?;
        Ok(FaceLattice { group, cells, face_of, facets, cofacets })
    }

    pub fn group(&self) -> &ReflectionGroup {
        &self.group
    }

    /// Dimension of the polytope.
    pub fn dim(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cells(&self, k: usize) -> &[LatticeCell] {
        &self.cells[k]
    }

    pub fn count(&self, k: usize) -> usize {
        self.cells[k].len()
    }

    /// Numbers of proper faces by dimension.
    pub fn fvector(&self) -> Vec<usize> {
        (0..self.dim()).map(|k| self.count(k)).collect()
    }

    /// `k`-face of the chamber `g`.
    pub fn face_of(&self, k: usize, g: usize) -> usize {
        self.face_of[k][g] as usize
    }

    pub fn facets(&self, k: usize, c: usize) -> &[(u32, i8)] {
        &self.facets[k][c]
    }

    pub fn cofacets(&self, k: usize, c: usize) -> &[u32] {
        &self.cofacets[k][c]
    }

    /// Incidence sign `[c : f]`, zero if `f` is not a facet of `c`.
    pub fn incidence(&self, k: usize, c: usize, f: usize) -> i8 {
        let fs = &self.facets[k][c];
        match fs.binary_search_by_key(&(f as u32), |p| p.0) {
            Ok(i) => fs[i].1,
            Err(_) => 0,
        }
    }

    /// Image of the `k`-cell `c` under the group element `h`.
    pub fn act(&self, h: usize, k: usize, c: usize) -> usize {
        if k == self.dim() {
            return 0;
        }
        let g = self.group.mul(h, self.cells[k][c].rep);
        self.face_of(k, g)
    }

    /// Permutation of every cell by `h`, per dimension.
    pub fn action(&self, h: usize) -> Vec<Vec<u32>> {
        (0..=self.dim()).map(|k| (0..self.count(k)).map(|c| self.act(h, k, c) as u32).collect()).collect()
    }

    /// Chain-map signs of `h`: `h_#(c) = s(c) · h(c)` commutes with the
    /// oriented boundary.
    pub fn action_signs(&self, perm: &[Vec<u32>]) -> Result<Vec<Vec<i8>>, CoxeterError> {
        let mut signs: Vec<Vec<i8>> = vec![vec![1; self.count(0)]];
        for k in 1..=self.dim() {
            let mut sk = Vec::with_capacity(self.count(k));
            for c in 0..self.count(k) {
                let hc = perm[k][c] as usize;
                let mut s = 0i8;
                for &(f, a) in &self.facets[k][c] {
                    let hf = perm[k - 1][f as usize] as usize;
                    let b = self.incidence(k, hc, hf);
                    if b == 0 {
                        return Err(CoxeterError::NotAutomorphism { dim: k, cell: c });
                    }
                    let t = a * signs[k - 1][f as usize] * b;
                    if s == 0 {
                        s = t;
                    } else if s != t {
                        return Err(CoxeterError::NotAutomorphism { dim: k, cell: c });
                    }
                }
                sk.push(s);
            }
            signs.push(sk);
        }
        Ok(signs)
    }

    /// Every `(k-2)`-face of a `k`-face lies in exactly two `(k-1)`-faces of it.
    pub fn check_diamond(&self) -> bool {
        for k in 2..=self.dim() {
            for c in 0..self.count(k) {
                let mut hits: BTreeMap<u32, usize> = BTreeMap::new();
                for &(f, _) in &self.facets[k][c] {
                    for &(r, _) in &self.facets[k - 1][f as usize] {
                        *hits.entry(r).or_default() += 1;
                    }
                }
                if hits.values().any(|&h| h != 2) {
                    return false;
                }
            }
        }
        true
    }

    /// `∂∂ = 0` for the oriented incidences.
    pub fn check_boundary_squared(&self) -> bool {
        for k in 2..=self.dim() {
            for c in 0..self.count(k) {
                let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
                for &(f, a) in &self.facets[k][c] {
                    for &(r, b) in &self.facets[k - 1][f as usize] {
                        *acc.entry(r).or_default() += (a * b) as i64;
                    }
                }
                if acc.values().any(|&v| v != 0) {
                    return false;
                }
            }
        }
        true
    }

    /// Number of `top`-faces containing each `low`-face.
    pub fn containment_degrees(&self, low: usize, top: usize) -> Vec<usize> {
        let mut reach: Vec<BTreeSet<u32>> = (0..self.count(low)).map(|c| BTreeSet::from([c as u32])).collect();
        for k in low..top {
            reach = reach
                .into_iter()
                .map(|s| s.iter().flat_map(|&c| self.cofacets[k][c as usize].iter().copied()).collect())
                .collect();
        }
        reach.iter().map(BTreeSet::len).collect()
    }

    pub fn cell_name(k: usize, c: usize) -> String {
        format!("d{k}_{c:04}")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut cells = serde_json::Map::new();
        for k in 0..=self.dim() {
            let ids: Vec<String> = (0..self.count(k)).map(|c| Self::cell_name(k, c)).collect();
            cells.insert(k.to_string(), serde_json::json!(ids));
        }
        let mut incidence = Vec::new();
        for k in 1..=self.dim() {
            for c in 0..self.count(k) {
                for &(f, _) in &self.facets[k][c] {
                    incidence.push(serde_json::json!([Self::cell_name(k, c), Self::cell_name(k - 1, f as usize)]));
                }
            }
        }
        serde_json::json!({ "cells": cells, "incidence": incidence, "fvector": self.fvector() })
    }
}

/// Incidence signs for a regular CW poset. Edges get `∂e = v_hi − v_lo`;
/// higher cells are oriented by walking across ridges, where the two facets
/// sharing a ridge must induce opposite signs on it.
fn orient(raw: &[Vec<BTreeSet<u32>>]) -> Result<Vec<Vec<Vec<(u32, i8)>>>, CoxeterError> {
    let mut out: Vec<Vec<Vec<(u32, i8)>>> = vec![Vec::new()];
    for k in 1..raw.len() {
        let mut level = Vec::with_capacity(raw[k].len());
        for (c, fs) in raw[k].iter().enumerate() {
            let fs: Vec<u32> = fs.iter().copied().collect();
            if k == 1 {
                if fs.len() != 2 {
                    return Err(CoxeterError::NotRegular { dim: 1, cell: c });
                }
                level.push(vec![(fs[0], -1), (fs[1], 1)]);
                continue;
            }
            let lower = &out[k - 1];
            let mut by_ridge: BTreeMap<u32, Vec<(usize, i8)>> = BTreeMap::new();
            for (i, &f) in fs.iter().enumerate() {
                for &(r, s) in &lower[f as usize] {
                    by_ridge.entry(r).or_default().push((i, s));
                }
            }
            if by_ridge.values().any(|v| v.len() != 2) {
                return Err(CoxeterError::NotRegular { dim: k, cell: c });
            }
            let mut sign = vec![0i8; fs.len()];
            sign[0] = 1;
            let mut queue = VecDeque::from([0usize]);
            while let Some(i) = queue.pop_front() {
                for &(r, a) in &lower[fs[i] as usize] {
                    let pair = &by_ridge[&r];
                    let &(j, b) = pair.iter().find(|p| p.0 != i).expect("two facets per ridge");
                    let want = -sign[i] * a * b;
                    if sign[j] == 0 {
                        sign[j] = want;
                        queue.push_back(j);
                    } else if sign[j] != want {
                        return Err(CoxeterError::NotRegular { dim: k, cell: c });
                    }
                }
            }
            if sign.contains(&0) {
                return Err(CoxeterError::NotRegular { dim: k, cell: c });
            }
            level.push(fs.iter().copied().zip(sign).collect());
        }
        out.push(level);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::generate_group;
    use super::*;
    use crate::lorentz::CoxeterDiagram;

    fn lattice(labels: &[u32], bound: usize) -> FaceLattice {
        FaceLattice::regular(generate_group(&CoxeterDiagram::linear(labels), bound).unwrap()).unwrap()
    }

    #[test]
    fn polygons_and_solids() {
        assert_eq!(lattice(&[3], 10).fvector(), vec![3, 3]);
        assert_eq!(lattice(&[5], 10).fvector(), vec![5, 5]);
        assert_eq!(lattice(&[3, 3], 100).fvector(), vec![4, 6, 4]);
        assert_eq!(lattice(&[5, 3], 200).fvector(), vec![20, 30, 12]);
        assert_eq!(lattice(&[3, 5], 200).fvector(), vec![12, 30, 20]);
        assert_eq!(lattice(&[3, 3, 3], 200).fvector(), vec![5, 10, 10, 5]);
    }

    #[test]
    fn dodecahedron_is_regular_cw() {
        let l = lattice(&[5, 3], 200);
        assert!(l.check_diamond());
        assert!(l.check_boundary_squared());
        assert!(l.containment_degrees(0, 2).iter().all(|&d| d == 3));
        assert!(l.facets(2, 0).len() == 5);
        assert_eq!(l.facets(3, 0).len(), 12);
    }

    #[test]
    fn group_acts_by_chain_maps() {
        let l = lattice(&[5, 3], 200);
        for h in [0, 1, 17, 63, 119] {
            let perm = l.action(h);
            let signs = l.action_signs(&perm).unwrap();
            // reflections reverse the orientation of the solid
            let det = if l.group().word(h).len().is_multiple_of(2) { 1 } else { -1 };
            assert_eq!(signs[3][0], det);
        }
    }

    #[test]
    fn lattice_json_shape() {
        let v = lattice(&[3], 10).to_json();
        assert_eq!(v["fvector"], serde_json::json!([3, 3]));
        assert_eq!(v["cells"]["2"], serde_json::json!(["d2_0000"]));
        assert_eq!(v["incidence"].as_array().unwrap().len(), 6 + 3);
    }
}
