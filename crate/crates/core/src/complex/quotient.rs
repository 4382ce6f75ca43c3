use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::coxeter::{FaceLattice, FacePairing};
use crate::homology::IntMatrix;

use super::{CellMap, ComplexError, CwComplex};

/// A polytope together with a pairing of its facets.
#[derive(Debug, Clone)]
pub struct QuotientSpec {
    pub lattice: Arc<FaceLattice>,
    pub pairing: Arc<FacePairing>,
}

/// How each lattice cell sits in the quotient.
#[derive(Debug, Clone)]
pub struct OrbitData {
    /// Orbit index of every lattice cell.
    pub orbit_of: Vec<Vec<u32>>,
    /// `c = transport(c) · [orbit(c)]` as chains.
    pub transport: Vec<Vec<i8>>,
    /// Group element carrying the orbit representative onto the cell.
    pub carrier: Vec<Vec<u32>>,
    /// Minimal lattice cell of each orbit.
    pub reps: Vec<Vec<u32>>,
}

/// Cell structure on the quotient of a polytope by its facet pairing.
#[derive(Debug, Clone)]
pub struct PairingQuotient {
    spec: QuotientSpec,
    complex: Arc<CwComplex>,
    orbits: OrbitData,
    containing: Vec<Vec<Vec<u32>>>,
}

type SignedAction = (Vec<Vec<u32>>, Vec<Vec<i8>>);

/// Identify boundary cells along the pairing isometries, transporting
/// orientations, and build the cellular boundary of the quotient.
pub fn quotient_complex(q: &QuotientSpec) -> Result<PairingQuotient, ComplexError> {
    let l = &*q.lattice;
    let pairing = &*q.pairing;
    let r = l.dim();
    if pairing.num_facets() != l.count(r - 1) {
        return Err(ComplexError::Shape("pairing does not cover the facets".into()));
    }
    let group = l.group();

    let mut containing: Vec<Vec<Vec<u32>>> = (0..r).map(|k| vec![Vec::new(); l.count(k)]).collect();
    for f in 0..l.count(r - 1) {
        containing[r - 1][f].push(f as u32);
    }
    for k in (0..r - 1).rev() {
        for c in 0..l.count(k) {
            let mut s: Vec<u32> = l.cofacets(k, c).iter().flat_map(|&u| containing[k + 1][u as usize].iter().copied()).collect();
            s.sort_unstable();
            s.dedup();
            containing[k][c] = s;
        }
    }

    let mut actions: HashMap<usize, SignedAction> = HashMap::new();
    for f in 0..l.count(r - 1) {
        let e = pairing.element(f);
        if let std::collections::hash_map::Entry::Vacant(v) = actions.entry(e) {
            let perm = l.action(e);
            let signs = l.action_signs(&perm)?;
            if perm[r - 1][f] as usize != pairing.partner(f) {
                return Err(ComplexError::NotDescending { dim: r - 1, cell: f });
            }
            v.insert((perm, signs));
        }
    }

    let mut orbit_of: Vec<Vec<u32>> = (0..=r).map(|k| vec![u32::MAX; l.count(k)]).collect();
    let mut transport: Vec<Vec<i8>> = (0..=r).map(|k| vec![0; l.count(k)]).collect();
    let mut carrier: Vec<Vec<u32>> = (0..=r).map(|k| vec![0; l.count(k)]).collect();
    let mut reps: Vec<Vec<u32>> = vec![Vec::new(); r + 1];
    for k in 0..r {
        for start in 0..l.count(k) {
            if orbit_of[k][start] != u32::MAX {
                continue;
            }
            let id = reps[k].len() as u32;
            reps[k].push(start as u32);
            orbit_of[k][start] = id;
            transport[k][start] = 1;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &f in &containing[k][x] {
                    let e = pairing.element(f as usize);
                    let (perm, signs) = &actions[&e];
                    let y = perm[k][x] as usize;
                    let t = signs[k][x] * transport[k][x];
                    if orbit_of[k][y] == u32::MAX {
                        orbit_of[k][y] = id;
                        transport[k][y] = t;
                        carrier[k][y] = group.mul(e, carrier[k][x] as usize) as u32;
                        queue.push_back(y);
                    } else if transport[k][y] != t {
                        return Err(ComplexError::OrientationTransport { dim: k, cell: start });
                    }
                }
            }
        }
    }
    orbit_of[r][0] = 0;
    transport[r][0] = 1;
    reps[r].push(0);

    let counts: Vec<usize> = reps.iter().map(Vec::len).collect();
    let mut inc = Vec::new();
    for k in 1..=r {
        for (o, &rep) in reps[k].iter().enumerate() {
            for &(f, s) in l.facets(k, rep as usize) {
                let f = f as usize;
                inc.push((k, o, orbit_of[k - 1][f] as usize, (s * transport[k - 1][f]) as i64));
            }
        }
    }
    let complex = CwComplex::from_incidences(&counts, inc)?;
    Ok(PairingQuotient {
        spec: q.clone(),
        complex: Arc::new(complex),
        orbits: OrbitData { orbit_of, transport, carrier, reps },
        containing,
    })
}

impl PairingQuotient {
    pub fn complex(&self) -> &CwComplex {
        &self.complex
    }

    pub fn complex_arc(&self) -> &Arc<CwComplex> {
        &self.complex
    }

    pub fn lattice(&self) -> &FaceLattice {
        &self.spec.lattice
    }

    pub fn pairing(&self) -> &FacePairing {
        &self.spec.pairing
    }

    pub fn orbits(&self) -> &OrbitData {
        &self.orbits
    }

    pub fn orbit_counts(&self) -> Vec<usize> {
        self.orbits.reps.iter().map(Vec::len).collect()
    }

    /// Facets containing each proper cell.
    pub fn containing_facets(&self) -> &[Vec<Vec<u32>>] {
        &self.containing
    }

    /// All faces of a lattice cell, itself included.
    fn closure(&self, k: usize, c: usize) -> Vec<(usize, usize)> {
        let l = self.lattice();
        let mut out = vec![(k, c)];
        let mut level = vec![c];
        for d in (1..=k).rev() {
            let mut next: Vec<usize> = level.iter().flat_map(|&x| l.facets(d, x).iter().map(|p| p.0 as usize)).collect();
            next.sort_unstable();
            next.dedup();
            out.extend(next.iter().map(|&x| (d - 1, x)));
            level = next;
        }
        out
    }

    /// Cellular map induced by a symmetry `g` of the polytope that normalizes
    /// the pairing. Cells are marked pointwise fixed when the holonomy of `g`
    /// around the orbit fixes every face of the representative.
    pub fn induced_map(&self, g: usize) -> Result<CellMap, ComplexError> {
        let qm = self.induced(g)?;
        Ok(qm.map)
    }

    pub fn induced(&self, g: usize) -> Result<QuotientMap, ComplexError> {
        let l = self.lattice();
        let group = l.group();
        let r = l.dim();
        let perm = l.action(g);
        let signs = l.action_signs(&perm)?;
        let o = &self.orbits;
        let mut maps = Vec::with_capacity(r + 1);
        let mut pointwise = Vec::with_capacity(r + 1);
        let mut holonomy = Vec::with_capacity(r + 1);
        for k in 0..=r {
            let n = o.reps[k].len();
            let mut image = vec![(u32::MAX, 0i8); n];
            for c in 0..l.count(k) {
                let src = o.orbit_of[k][c] as usize;
                let gc = perm[k][c] as usize;
                let dst = o.orbit_of[k][gc];
                let coeff = o.transport[k][c] * signs[k][c] * o.transport[k][gc];
                if image[src].0 == u32::MAX {
                    image[src] = (dst, coeff);
                } else if image[src] != (dst, coeff) {
                    return Err(ComplexError::NotDescending { dim: k, cell: c });
                }
            }
            let mut pw = vec![false; n];
            let mut hol = vec![None; n];
            for (orb, &(dst, _)) in image.iter().enumerate() {
                if dst as usize != orb {
                    continue;
                }
                let rep = o.reps[k][orb] as usize;
                let grep = perm[k][rep] as usize;
                let h = group.mul(group.inverse(o.carrier[k][grep] as usize), g);
                hol[orb] = Some(h);
                pw[orb] = self.closure(k, rep).iter().all(|&(d, x)| l.act(h, d, x) == x);
            }
            maps.push(IntMatrix::from_triplets(n, n, image.iter().enumerate().map(|(src, &(dst, s))| (dst as usize, src, s as i64))));
            pointwise.push(pw);
            holonomy.push(hol);
        }
        let map = CellMap::new(self.complex.clone(), self.complex.clone(), maps)?.with_pointwise(pointwise);
        Ok(QuotientMap { map, holonomy })
    }
}

/// Induced cellular map with the holonomy element of every setwise-fixed orbit.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    pub map: CellMap,
    pub holonomy: Vec<Vec<Option<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumCount {
    pub dim: usize,
    pub cells: usize,
    pub setwise: usize,
    pub pointwise: usize,
    /// Setwise-fixed cells contributing one isolated fixed point.
    pub isolated_points: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedStrata {
    pub order: usize,
    pub per_dim: Vec<StratumCount>,
    /// Setwise-fixed cells by dimension, as cell indices.
    pub fixed_cells: BTreeMap<usize, Vec<usize>>,
}

impl FixedStrata {
    pub fn total_setwise(&self) -> usize {
        self.per_dim.iter().map(|d| d.setwise).sum()
    }

    pub fn total_isolated(&self) -> usize {
        self.per_dim.iter().map(|d| d.isolated_points).sum()
    }

    /// For an involution, the cells that are not fixed come in swapped pairs.
    pub fn free_pairs(&self) -> Option<Vec<usize>> {
        if self.order != 2 {
            return None;
        }
        self.per_dim.iter().map(|d| ((d.cells - d.setwise) % 2 == 0).then_some((d.cells - d.setwise) / 2)).collect()
    }
}

const ORDER_BOUND: usize = 120;

/// Classify the cells fixed by a finite-order self-map. A setwise-fixed cell
/// that is not fixed pointwise contributes its barycenter; a fixed vertex
/// counts unless it bounds a pointwise-fixed cell of positive dimension.
pub fn fixed_strata(f: &CellMap) -> Result<FixedStrata, ComplexError> {
    if f.source().counts() != f.target().counts() {
        return Err(ComplexError::Shape("fixed strata need a self-map".into()));
    }
    let order = f.order(ORDER_BOUND)?;
    let counts = f.source().counts();
    let mut setwise: Vec<Vec<bool>> = Vec::new();
    let mut signs: Vec<Vec<i64>> = Vec::new();
    for (k, &n) in counts.iter().enumerate() {
        let m = f.matrix(k);
        setwise.push((0..n).map(|c| m.get(c, c) != 0).collect());
        signs.push((0..n).map(|c| m.get(c, c)).collect());
    }
    let pointwise: Vec<Vec<bool>> = match f.pointwise() {
        Some(p) => p.iter().zip(&setwise).map(|(p, s)| p.iter().zip(s).map(|(a, b)| *a && *b).collect()).collect(),
        None => {
            let mut pw: Vec<Vec<bool>> = Vec::new();
            for k in 0..counts.len() {
                let level = (0..counts[k])
                    .map(|c| {
                        signs[k][c] == 1 && (k == 0 || f.source().boundary(k).column(c).iter().all(|&(x, _)| pw[k - 1][x as usize]))
                    })
                    .collect();
                pw.push(level);
            }
            pw
        }
    };
    let mut vertex_on_fixed_cell = vec![false; counts[0]];
    if counts.len() > 1 {
        // push pointwise-fixed cells down to their vertices
        let mut marked: Vec<bool> = pointwise.last().cloned().unwrap_or_default();
        for k in (1..counts.len()).rev() {
            let mut below = vec![false; counts[k - 1]];
            for c in 0..counts[k] {
                if marked[c] || (pointwise[k][c] && k >= 1) {
                    for &(x, _) in f.source().boundary(k).column(c) {
                        below[x as usize] = true;
                    }
                }
            }
            marked = below;
        }
        vertex_on_fixed_cell = marked;
    }
    let mut per_dim = Vec::new();
    let mut fixed_cells = BTreeMap::new();
    for k in 0..counts.len() {
        let fixed: Vec<usize> = (0..counts[k]).filter(|&c| setwise[k][c]).collect();
        let pw = (0..counts[k]).filter(|&c| pointwise[k][c]).count();
        let isolated = if k == 0 {
            fixed.iter().filter(|&&c| !vertex_on_fixed_cell[c]).count()
        } else {
            fixed.iter().filter(|&&c| !pointwise[k][c]).count()
        };
        per_dim.push(StratumCount { dim: k, cells: counts[k], setwise: fixed.len(), pointwise: pw, isolated_points: isolated });
        fixed_cells.insert(k, fixed);
    }
    Ok(FixedStrata { order, per_dim, fixed_cells })
}
