use std::collections::HashSet;

use crate::arith::GoldenScalar;
use crate::lorentz::{signature, CoxeterDiagram, GramMatrix, LorentzMatrix, NormalBasisVector, Signature};

use super::{generate_parabolic, CoxeterError, FaceLattice, ReflectionGroup};

/// The 120-cell as a compact polytope of H⁴: the union of the 14400
/// `[5,3,3,5]` simplices around the vertex fixed by the `[5,3,3]` parabolic.
#[derive(Debug, Clone)]
pub struct HyperbolicRealization {
    gram: GramMatrix,
    group: ReflectionGroup,
    signature: Signature,
    center: NormalBasisVector,
    normals: Vec<NormalBasisVector>,
    facet_centers: Vec<NormalBasisVector>,
}

impl HyperbolicRealization {
    /// Ambient `[5,3,3,5]` Gram matrix.
    pub fn gram(&self) -> &GramMatrix {
        &self.gram
    }

    /// The symmetry group of the polytope acting on R^{4,1}, with the same
    /// element indexing as the lattice group.
    pub fn group(&self) -> &ReflectionGroup {
        &self.group
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn center(&self) -> &NormalBasisVector {
        &self.center
    }

    /// Outward unit normal of each facet, indexed by 3-cell id.
    pub fn normals(&self) -> &[NormalBasisVector] {
        &self.normals
    }

    pub fn facet_centers(&self) -> &[NormalBasisVector] {
        &self.facet_centers
    }
}

/// Summary of the exact angle checks on a realization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AngleCheck {
    pub adjacent_pairs: usize,
    pub adjacent_cosines: Vec<GoldenScalar>,
    /// Non-adjacent facet pairs whose hyperplanes are ultraparallel (`⟨n, n'⟩ < −1`).
    pub ultraparallel_pairs: usize,
    pub other_pairs: usize,
}

fn check_120cell(lattice: &FaceLattice) -> Result<(), CoxeterError> {
    if lattice.group().order() != 14400 || lattice.fvector() != [600, 1200, 720, 120] {
        return Err(CoxeterError::WrongGroup("lattice is not the 120-cell".into()));
    }
    Ok(())
}

/// Realize the 120-cell lattice in H⁴ through the `[5,3,3,5]` diagram.
pub fn realize_hyperbolic(lattice: &FaceLattice) -> Result<HyperbolicRealization, CoxeterError> {
    check_120cell(lattice)?;
    let diagram = CoxeterDiagram::linear(&[5, 3, 3, 5]);
    let group = generate_parabolic(&diagram, &[0, 1, 2, 3], 14400)?;
    for g in 0..group.order() {
        if group.word(g) != lattice.group().word(g) {
            return Err(CoxeterError::WrongGroup("parabolic enumeration disagrees with the lattice group".into()));
        }
    }
    let gram = group.gram().clone();
    let sig = signature(&gram);
    if sig != Signature::new(4, 1, 0) {
        return Err(CoxeterError::Signature(sig));
    }
    let dual = gram.matrix().inverse().ok_or(CoxeterError::Signature(sig))?;
    let omega = |i: usize| NormalBasisVector::new(dual.column(i));
    let center = omega(4);
    let facet_center = omega(3);
    for v in [&center, &facet_center] {
        if gram.norm(v)?.sign() >= 0 {
            return Err(CoxeterError::Signature(sig));
        }
    }
    let e4 = NormalBasisVector::basis(5, 4);
    let mut normals = Vec::with_capacity(120);
    let mut facet_centers = Vec::with_capacity(120);
    for cell in lattice.cells(3) {
        let g = group.element(cell.rep);
        normals.push(g.apply(&e4));
        facet_centers.push(g.apply(&facet_center));
    }
    let distinct: HashSet<&NormalBasisVector> = normals.iter().collect();
    if distinct.len() != 120 {
        return Err(CoxeterError::WrongGroup("facet normal orbit is not of size 120".into()));
    }
    Ok(HyperbolicRealization { gram, group, signature: sig, center, normals, facet_centers })
}

/// Dihedral cosines of all adjacent facet pairs, and the position of the
/// non-adjacent ones.
pub fn check_angles(lattice: &FaceLattice, real: &HyperbolicRealization) -> Result<AngleCheck, CoxeterError> {
    let n = real.normals();
    let mut adjacent = HashSet::new();
    let mut cosines = Vec::new();
    for f in 0..lattice.count(2) {
        let co = lattice.cofacets(2, f);
        if co.len() != 2 {
            return Err(CoxeterError::NotRegular { dim: 2, cell: f });
        }
        let (a, b) = (co[0] as usize, co[1] as usize);
        adjacent.insert((a.min(b), a.max(b)));
        cosines.push(real.gram().dihedral_cosine(&n[a], &n[b])?.cosine);
    }
    let mut ultra = 0;
    let mut other = 0;
    let minus_one = -GoldenScalar::ONE;
    for a in 0..n.len() {
        for b in a + 1..n.len() {
            if adjacent.contains(&(a, b)) {
                continue;
            }
            let ip = real.gram().inner(&n[a], &n[b])?;
            if (ip - minus_one).sign() < 0 {
                ultra += 1;
            } else {
                other += 1;
            }
        }
    }
    Ok(AngleCheck { adjacent_pairs: adjacent.len(), adjacent_cosines: cosines, ultraparallel_pairs: ultra, other_pairs: other })
}

/// Identification of a facet with its opposite one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetPair {
    pub first: usize,
    pub second: usize,
    pub isometry: LorentzMatrix,
    /// Index of the isometry in the polytope's symmetry group.
    pub element: usize,
}

#[derive(Debug, Clone)]
pub struct FacePairing {
    pub pairs: Vec<FacetPair>,
    partner: Vec<usize>,
    pair_of: Vec<usize>,
}

impl FacePairing {
    pub fn partner(&self, facet: usize) -> usize {
        self.partner[facet]
    }

    /// Group element carrying `facet` onto its partner.
    pub fn element(&self, facet: usize) -> usize {
        self.pairs[self.pair_of[facet]].element
    }

    pub fn num_facets(&self) -> usize {
        self.partner.len()
    }

    fn index(pairs: Vec<FacetPair>, num_facets: usize) -> Result<Self, CoxeterError> {
        let mut partner = vec![usize::MAX; num_facets];
        let mut pair_of = vec![usize::MAX; num_facets];
        for (i, p) in pairs.iter().enumerate() {
            for (x, y) in [(p.first, p.second), (p.second, p.first)] {
                if partner[x] != usize::MAX {
                    return Err(CoxeterError::NoAntipode(x));
                }
                partner[x] = y;
                pair_of[x] = i;
            }
        }
        if let Some(f) = partner.iter().position(|&p| p == usize::MAX) {
            return Err(CoxeterError::NoAntipode(f));
        }
        Ok(FacePairing { pairs, partner, pair_of })
    }
}

/// Pair every facet with its opposite through the reflection that swaps
/// their centers.
pub fn antipodal_pairing(lattice: &FaceLattice, real: &HyperbolicRealization) -> Result<FacePairing, CoxeterError> {
    check_120cell(lattice)?;
    let gram = real.gram();
    let c = real.center();
    let cc = gram.norm(c)?;
    // component of a normal orthogonal to the polytope center
    let project = |v: &NormalBasisVector| -> Result<NormalBasisVector, CoxeterError> {
        let t = gram.inner(v, c)? / cc;
        Ok(NormalBasisVector::new(v.coords.iter().zip(&c.coords).map(|(a, b)| *a - t * *b).collect()))
    };
    let projected: Vec<NormalBasisVector> = real.normals().iter().map(project).collect::<Result<_, _>>()?;
    let w0 = lattice.group().longest_element();
    let mut pairs = Vec::new();
    for f in 0..projected.len() {
        let target = projected[f].neg();
        let g = projected.iter().position(|p| *p == target).ok_or(CoxeterError::NoAntipode(f))?;
        if lattice.act(w0, 3, f) != g {
            return Err(CoxeterError::NoAntipode(f));
        }
        if f > g {
            continue;
        }
        let (p, q) = (&real.facet_centers()[f], &real.facet_centers()[g]);
        let r = gram.reflection_in(&p.sub(q))?;
        if !r.preserves(gram) || r.apply(p) != *q || r.compose(&r) != LorentzMatrix::identity(5) {
            return Err(CoxeterError::NoAntipode(f));
        }
        let element = real.group().lookup(&r).ok_or(CoxeterError::NoAntipode(f))?;
        if lattice.act(element, 3, f) != g {
            return Err(CoxeterError::NoAntipode(f));
        }
        pairs.push(FacetPair { first: f, second: g, isometry: r, element });
    }
    FacePairing::index(pairs, projected.len())
}

/// Pair each facet with its image under the central symmetry, glued by the
/// unique reflection of the symmetry group carrying one onto the other.
/// Works for any centrally symmetric regular polytope.
pub fn reflection_pairing(lattice: &FaceLattice) -> Result<FacePairing, CoxeterError> {
    let g = lattice.group();
    let r = lattice.dim();
    let w0 = g.longest_element();
    let reflections = g.reflections();
    let actions: Vec<(usize, Vec<u32>)> = reflections.iter().map(|&e| (e, (0..lattice.count(r - 1)).map(|f| lattice.act(e, r - 1, f) as u32).collect())).collect();
    let mut pairs = Vec::new();
    for f in 0..lattice.count(r - 1) {
        let opposite = lattice.act(w0, r - 1, f);
        if opposite == f {
            return Err(CoxeterError::NoAntipode(f));
        }
        if f > opposite {
            continue;
        }
        let mut hits = actions.iter().filter(|(_, perm)| perm[f] as usize == opposite);
        let (e, _) = hits.next().ok_or(CoxeterError::NoAntipode(f))?;
        if hits.next().is_some() {
            return Err(CoxeterError::NoAntipode(f));
        }
        pairs.push(FacetPair { first: f, second: opposite, isometry: g.element(*e).clone(), element: *e });
    }
    FacePairing::index(pairs, lattice.count(r - 1))
}
