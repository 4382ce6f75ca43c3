use std::collections::HashMap;

use crate::coxeter::FaceLattice;
use crate::homology::IntMatrix;

use super::{CwComplex, PairingQuotient};

/// Face poset of a regular cell complex with cells numbered globally,
/// lower dimensions first.
#[derive(Debug, Clone)]
pub struct FacePoset {
    offsets: Vec<usize>,
    dims: Vec<usize>,
    // all cells strictly above each cell, ascending
    above: Vec<Vec<u32>>,
}

impl FacePoset {
    fn from_cofacets(counts: &[usize], cofacets: impl Fn(usize, usize) -> Vec<usize>) -> Self {
        let mut offsets = Vec::with_capacity(counts.len() + 1);
        let mut total = 0;
        for &n in counts {
            offsets.push(total);
            total += n;
        }
        offsets.push(total);
        let mut dims = vec![0; total];
        for k in 0..counts.len() {
            for c in 0..counts[k] {
                dims[offsets[k] + c] = k;
            }
        }
        let mut above: Vec<Vec<u32>> = vec![Vec::new(); total];
        // top-down, so cofacets already have their closure
        for k in (0..counts.len()).rev() {
            for c in 0..counts[k] {
                let mut set: Vec<u32> = Vec::new();
                for u in cofacets(k, c) {
                    let g = offsets[k + 1] + u;
                    set.push(g as u32);
                    set.extend_from_slice(&above[g]);
                }
                set.sort_unstable();
                set.dedup();
                above[offsets[k] + c] = set;
            }
        }
        FacePoset { offsets, dims, above }
    }

    pub fn from_lattice(l: &FaceLattice) -> Self {
        let counts: Vec<usize> = (0..=l.dim()).map(|k| l.count(k)).collect();
        Self::from_cofacets(&counts, |k, c| if k < l.dim() { l.cofacets(k, c).iter().map(|&u| u as usize).collect() } else { Vec::new() })
    }

    /// Poset read off the nonzero boundary coefficients (valid for regular complexes).
    pub fn from_complex(c: &CwComplex) -> Self {
        let counts = c.counts();
        let mut co: Vec<Vec<Vec<usize>>> = counts.iter().map(|&n| vec![Vec::new(); n]).collect();
        for k in 1..counts.len() {
            for (f, cell, _) in c.boundary(k).triplets() {
                co[k - 1][f].push(cell);
            }
        }
        Self::from_cofacets(&counts, |k, i| co[k][i].clone())
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn global(&self, k: usize, c: usize) -> u32 {
        (self.offsets[k] + c) as u32
    }

    /// `(dimension, index)` of a global cell number.
    pub fn local(&self, g: u32) -> (usize, usize) {
        let k = self.dims[g as usize];
        (k, g as usize - self.offsets[k])
    }

    /// Every chain `c_0 < c_1 < … < c_m`, shorter chains first.
    pub fn chains(&self) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> = (0..self.len() as u32).map(|g| vec![g]).collect();
        let mut start = 0;
        while start < out.len() {
            let end = out.len();
            for i in start..end {
                let last = *out[i].last().unwrap() as usize;
                for &u in &self.above[last] {
                    let mut c = out[i].clone();
                    c.push(u);
                    out.push(c);
                }
            }
            start = end;
        }
        out
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = p;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so roots are first occurrences
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo as u32;
        }
    }
}

/// A subdivided complex together with the simplex carried by every chain of
/// the original face poset.
#[derive(Debug, Clone)]
pub struct Subdivision {
    complex: CwComplex,
    poset: FacePoset,
    simplex: HashMap<Vec<u32>, usize>,
}

impl Subdivision {
    pub fn complex(&self) -> &CwComplex {
        &self.complex
    }

    pub fn into_complex(self) -> CwComplex {
        self.complex
    }

    pub fn poset(&self) -> &FacePoset {
        &self.poset
    }

    /// Index of the simplex (of dimension `chain.len() − 1`) carried by a
    /// chain of global cell numbers.
    pub fn simplex(&self, chain: &[u32]) -> Option<usize> {
        self.simplex.get(chain).copied()
    }
}

/// Δ-complex of chains modulo the equivalence generated by `glue`. The
/// gluing must preserve the dimension of every cell, so vertex orders of
/// identified simplices agree and no orientation transport is needed.
fn subdivide_with(poset: FacePoset, glue: impl Fn(&FacePoset, &[u32]) -> Vec<Vec<u32>>) -> Subdivision {
    let chains = poset.chains();
    let index: HashMap<&[u32], usize> = chains.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
    let mut uf = UnionFind::new(chains.len());
    for (i, c) in chains.iter().enumerate() {
        for image in glue(&poset, c) {
            let j = *index.get(image.as_slice()).expect("gluing maps chains to chains");
            uf.union(i, j);
        }
    }
    let top = chains.iter().map(Vec::len).max().unwrap_or(1) - 1;
    let mut class_id = vec![u32::MAX; chains.len()];
    let mut reps: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
    for i in 0..chains.len() {
        let r = uf.find(i);
        if r == i {
            let d = chains[i].len() - 1;
            class_id[i] = reps[d].len() as u32;
            reps[d].push(i);
        }
    }
    let mut boundary = vec![IntMatrix::zeros(0, reps[0].len())];
    let mut face = Vec::new();
    for d in 1..=top {
        let mut trip = Vec::with_capacity(reps[d].len() * (d + 1));
        for (col, &i) in reps[d].iter().enumerate() {
            for drop in 0..=d {
                face.clear();
                face.extend(chains[i].iter().enumerate().filter(|&(p, _)| p != drop).map(|(_, &v)| v));
                let j = index[face.as_slice()];
                let row = class_id[uf.find(j)] as usize;
                trip.push((row, col, if drop % 2 == 0 { 1 } else { -1 }));
            }
        }
        boundary.push(IntMatrix::from_triplets(reps[d - 1].len(), reps[d].len(), trip));
    }
    let complex = CwComplex::new(boundary).expect("Δ-complex boundary squares to zero");
    let simplex = chains.iter().enumerate().map(|(i, c)| (c.clone(), class_id[uf.find(i)] as usize)).collect();
    Subdivision { complex, poset, simplex }
}

/// Barycentric subdivision of a regular cell complex.
pub fn barycentric_subdivision(c: &CwComplex) -> CwComplex {
    subdivide_with(FacePoset::from_complex(c), |_, _| Vec::new()).into_complex()
}

/// Barycentric subdivision of a polytope quotient, optionally further divided
/// by the group generated by `extra` symmetries of the polytope.
pub fn subdivided_quotient(q: &PairingQuotient, extra: &[usize]) -> Subdivision {
    let lattice = q.lattice();
    let r = lattice.dim();
    let pairing = q.pairing();
    // per facet: the permutation of all cells induced by its pairing element
    let mut perms: HashMap<usize, Vec<Vec<u32>>> = HashMap::new();
    for f in 0..lattice.count(r - 1) {
        let e = pairing.element(f);
        perms.entry(e).or_insert_with(|| lattice.action(e));
    }
    let extra_perms: Vec<Vec<Vec<u32>>> = extra.iter().map(|&g| lattice.action(g)).collect();
    let containing = q.containing_facets();
    let apply = |poset: &FacePoset, perm: &Vec<Vec<u32>>, chain: &[u32]| -> Vec<u32> {
        chain
            .iter()
            .map(|&g| {
                let (k, c) = poset.local(g);
                poset.global(k, perm[k][c] as usize)
            })
            .collect()
    };
    subdivide_with(FacePoset::from_lattice(lattice), |poset, chain| {
        let mut out = Vec::new();
        let (k, c) = poset.local(*chain.last().unwrap());
        if k < r {
            for &f in &containing[k][c] {
                out.push(apply(poset, &perms[&pairing.element(f as usize)], chain));
            }
        }
        for p in &extra_perms {
            out.push(apply(poset, p, chain));
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{cycle_complex, lattice_complex, product_complex};
    use crate::coxeter::generate_group;
    use crate::homology::{euler_characteristic, integral_homology};
    use crate::lorentz::CoxeterDiagram;

    #[test]
    fn triangle_boundary_becomes_hexagon() {
        let tri = cycle_complex(3);
        let s = barycentric_subdivision(&tri);
        assert_eq!(s.counts(), vec![6, 6]);
        assert_eq!(integral_homology(&s).unwrap(), integral_homology(&tri).unwrap());
    }

    #[test]
    fn solid_subdivision_counts() {
        let l = FaceLattice::regular(generate_group(&CoxeterDiagram::linear(&[5, 3]), 200).unwrap()).unwrap();
        let s = barycentric_subdivision(&lattice_complex(&l));
        // top simplices are the flags, one per group element
        assert_eq!(s.counts()[3], 120);
        assert_eq!(euler_characteristic(&s), 1);
    }

    #[test]
    fn subdivision_preserves_homology_of_torus() {
        // a regular torus needs at least 3×3 cells
        let t = product_complex(&cycle_complex(3), &cycle_complex(3));
        let s = barycentric_subdivision(&t);
        assert_eq!(integral_homology(&s).unwrap(), integral_homology(&t).unwrap());
        assert_eq!(euler_characteristic(&s), 0);
    }
}
