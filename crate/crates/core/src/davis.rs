//! The Davis manifold: the hyperbolic 120-cell with opposite facets glued,
//! its central involution σ, and the Betti-number bookkeeping for the
//! resolved quotient of its twistor space.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::Rational;
use crate::complex::{fixed_strata, quotient_complex, subdivided_quotient, ComplexError, CwComplex, FixedStrata, PairingQuotient, QuotientSpec};
use crate::coxeter::{antipodal_pairing, build_120cell, check_angles, h4_group, realize_hyperbolic, reflection_pairing, CoxeterError};
use crate::homology::{betti_euler, chain_homology, euler_characteristic, induced_on_homology, integral_homology, mod2_betti, Coefficients, FgAbGroup, HomologyError, IntMatrix};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DavisError {
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("check {name} failed: expected {expected}, got {actual}")]
    Check { name: String, expected: String, actual: String },
    #[error("inconsistent degree data: {0}")]
    InconsistentDegrees(String),
}

fn ensure(name: &str, ok: bool, expected: impl fmt::Display, actual: impl fmt::Display) -> Result<(), DavisError> {
    if ok {
        Ok(())
    } else {
        Err(DavisError::Check { name: name.into(), expected: expected.to_string(), actual: actual.to_string() })
    }
}

/// Summary of a linear map on rational homology.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionSummary {
    pub degree: usize,
    pub dim: usize,
    pub trace: String,
    pub invariant_dim: usize,
    pub is_minus_identity: bool,
    pub squares_to_identity: bool,
}

impl ActionSummary {
    pub fn of(degree: usize, m: &Matrix<Rational>) -> Self {
        let n = m.rows();
        let id = Matrix::identity(n);
        ActionSummary {
            degree,
            dim: n,
            trace: trace(m).to_string(),
            invariant_dim: invariant_dim(m),
            is_minus_identity: *m == id.scale(-Rational::ONE),
            squares_to_identity: m.mul(m) == id,
        }
    }
}

fn trace(m: &Matrix<Rational>) -> Rational {
    (0..m.rows()).fold(Rational::ZERO, |acc, i| acc + m[(i, i)])
}

/// Dimension of the fixed subspace of a square matrix.
pub fn invariant_dim(m: &Matrix<Rational>) -> usize {
    m.sub(&Matrix::identity(m.rows())).nullspace().len()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedPointSummary {
    pub total: usize,
    pub strata: FixedStrata,
    /// Number of isolated fixed points predicted by the Lefschetz number.
    pub lefschetz_number: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KahlerVerdict {
    /// No Kähler structure with vanishing first Chern class.
    Obstructed,
    Inconclusive,
}

impl fmt::Display for KahlerVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KahlerVerdict::Obstructed => write!(f, "no Kähler structure with c1=0"),
            KahlerVerdict::Inconclusive => write!(f, "test inconclusive"),
        }
    }
}

/// A simply connected compact Kähler manifold with `c1 = 0` has `b3 ≥ 2`
/// (the holomorphic volume form and its conjugate are independent in H³).
pub fn kahler_obstruction(b1: usize, b3: usize) -> KahlerVerdict {
    if b1 == 0 && b3 < 2 {
        KahlerVerdict::Obstructed
    } else {
        KahlerVerdict::Inconclusive
    }
}

/// Center of a blow-up: its Betti numbers and complex codimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlowupCenter {
    pub betti: Vec<usize>,
    pub codim: usize,
}

impl BlowupCenter {
    /// A twistor fibre, a 2-sphere of complex codimension 2 in the 3-fold.
    pub fn twistor_fibre() -> Self {
        BlowupCenter { betti: vec![1, 0, 1], codim: 2 }
    }
}

/// `b3` of the resolution of `Z/σ`, where `Z` is an S²-bundle over a
/// 4-manifold `M` and the singularities are resolved by blowing up `centers`.
///
/// `sigma[k]` is the action on `H^k(M; Q)`. By Leray–Hirsch `H³(Z) = H³(M) ⊕
/// H¹(M)·u` with `u` of degree 2 and σ-invariant; the quotient keeps the
/// invariant part, and a blow-up along `C` of codimension `r` adds
/// `H^{3−2j}(C)` for `1 ≤ j < r`.
pub fn b3_of_resolution(betti_m: &[usize], sigma: &[Matrix<Rational>], centers: &[BlowupCenter]) -> Result<usize, DavisError> {
    if betti_m.len() != 5 || sigma.len() != 5 {
        return Err(DavisError::InconsistentDegrees(format!("expected degrees 0..=4, got {} Betti numbers and {} actions", betti_m.len(), sigma.len())));
    }
    for (k, (b, s)) in betti_m.iter().zip(sigma).enumerate() {
        if s.rows() != *b || s.cols() != *b {
            return Err(DavisError::InconsistentDegrees(format!("degree {k}: Betti number {b} but action is {}x{}", s.rows(), s.cols())));
        }
    }
    let mut b3 = invariant_dim(&sigma[3]) + invariant_dim(&sigma[1]);
    for c in centers {
        if c.codim == 0 {
            return Err(DavisError::InconsistentDegrees("blow-up center of codimension 0".into()));
        }
        for j in 1..c.codim {
            if let Some(b) = (3usize).checked_sub(2 * j) {
                b3 += c.betti.get(b).copied().unwrap_or(0);
            }
        }
    }
    Ok(b3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DavisOptions {
    pub seed: u64,
    /// Random pairs `(g, h)` checked for `(gh)_* = g_* h_*`.
    pub functoriality_samples: usize,
}

impl Default for DavisOptions {
    fn default() -> Self {
        DavisOptions { seed: 0x5eed, functoriality_samples: 16 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DavisReport {
    pub orbit_counts: Vec<usize>,
    pub chi: i64,
    pub homology: Vec<FgAbGroup>,
    pub mod2_betti: Vec<usize>,
    pub subdivision_counts: Vec<usize>,
    pub subdivision_homology: Vec<FgAbGroup>,
    pub ultraparallel_pairs: usize,
    pub fixed_points: FixedPointSummary,
    pub sigma_actions: Vec<ActionSummary>,
    pub sigma_on_h1: ActionSummary,
    pub free_pairs: Vec<usize>,
    pub loops_generate_h1: bool,
    pub functoriality_pairs: usize,
    pub quotient_homology: Vec<FgAbGroup>,
    pub quotient_h1: FgAbGroup,
    pub b3_hat: usize,
    pub kahler: KahlerVerdict,
}

/// The glued 120-cell with its pairing checked against the combinatorial one.
pub fn build_davis_manifold() -> Result<PairingQuotient, DavisError> {
    let lattice = build_120cell(h4_group())?;
    let real = realize_hyperbolic(&lattice)?;
    let pairing = antipodal_pairing(&lattice, &real)?;
    let generic = reflection_pairing(&lattice)?;
    for f in 0..pairing.num_facets() {
        ensure("pairing-matches-reflections", pairing.element(f) == generic.element(f), generic.element(f), pairing.element(f))?;
    }
    Ok(quotient_complex(&QuotientSpec { lattice: Arc::new(lattice), pairing: Arc::new(pairing) })?)
}

/// `H_1` of the subdivided manifold after coning off the loops that run from
/// the polytope center through each facet center and back through its
/// partner. Trivial exactly when these loops generate `H_1`.
fn h1_modulo_loops(m: &PairingQuotient, sub: &crate::complex::Subdivision) -> Result<FgAbGroup, DavisError> {
    let poset = sub.poset();
    let r = m.lattice().dim();
    let center = poset.global(r, 0);
    let c = sub.complex();
    let edge = |f: usize| sub.simplex(&[poset.global(r - 1, f), center]).expect("facet-center edge");
    let d2 = c.boundary(2);
    let mut trip: Vec<_> = d2.triplets().collect();
    let mut col = d2.cols();
    for p in &m.pairing().pairs {
        trip.push((edge(p.first), col, 1));
        trip.push((edge(p.second), col, -1));
        col += 1;
    }
    let aug = IntMatrix::from_triplets(d2.rows(), col, trip);
    let bd = vec![c.boundary(0).clone(), c.boundary(1).clone(), aug];
    let h = chain_homology(&bd, Coefficients::Integers)?;
    match h {
        crate::homology::HomologyGroups::Integral(g) => Ok(g[1].clone()),
        crate::homology::HomologyGroups::Mod2(_) => unreachable!("integral coefficients requested"),
    }
}

pub fn run_davis_pipeline() -> Result<DavisReport, DavisError> {
    run_davis_pipeline_with(DavisOptions::default())
}

pub fn run_davis_pipeline_with(opts: DavisOptions) -> Result<DavisReport, DavisError> {
    let m = build_davis_manifold()?;
    let angles = check_angles(m.lattice(), &realize_hyperbolic(m.lattice())?)?;
    ensure("non-adjacent-facets-ultraparallel", angles.other_pairs == 0, 0, angles.other_pairs)?;
    let orbit_counts = m.orbit_counts();
    let cx: &CwComplex = m.complex();
    let chi = euler_characteristic(cx);
    let homology = integral_homology(cx)?;
    let b = |h: &[FgAbGroup]| h.iter().map(|g| g.rank).collect::<Vec<_>>();
    let betti = b(&homology);
    ensure("euler-characteristic", betti_euler(&homology) == chi, chi, betti_euler(&homology))?;
    ensure("poincare-duality", betti.len() == 5 && betti[0] == betti[4] && betti[1] == betti[3], "b0 = b4, b1 = b3", format!("{betti:?}"))?;
    ensure("orientable", betti[4] == 1 && homology.iter().all(FgAbGroup::is_free), "H4 = Z, torsion-free", format!("{homology:?}"))?;
    let m2 = mod2_betti(cx)?;
    ensure("mod2-betti", m2 == betti, format!("{betti:?}"), format!("{m2:?}"))?;

    let sub = subdivided_quotient(&m, &[]);
    let subdivision_homology = integral_homology(sub.complex())?;
    ensure("subdivision-oracle", subdivision_homology == homology, fmt_groups(&homology), fmt_groups(&subdivision_homology))?;
    let loops = h1_modulo_loops(&m, &sub)?;
    ensure("loops-generate-h1", loops.is_trivial(), "0", &loops)?;

    let group = m.lattice().group();
    let w0 = group.longest_element();
    let sigma = m.induced(w0)?;
    let strata = fixed_strata(&sigma.map)?;
    ensure("sigma-involution", strata.order == 2, 2, strata.order)?;
    let mut actions = Vec::new();
    let mut mats = Vec::new();
    for k in 0..=4 {
        let a = induced_on_homology(&sigma.map, k)?;
        actions.push(ActionSummary::of(k, &a));
        mats.push(a);
    }
    let lefschetz = mats.iter().enumerate().fold(Rational::ZERO, |acc, (k, a)| if k % 2 == 0 { acc + trace(a) } else { acc - trace(a) });
    let total = strata.total_isolated();
    ensure("lefschetz-number", lefschetz == Rational::from(total as i64), total, lefschetz)?;
    let free_pairs = strata.free_pairs().ok_or_else(|| DavisError::Check { name: "free-pairs".into(), expected: "even free orbits".into(), actual: format!("{:?}", strata.per_dim) })?;

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.functoriality_samples {
        let (g, h) = (rng.gen_range(0..group.order()), rng.gen_range(0..group.order()));
        let gh = m.induced_map(group.mul(g, h))?;
        let composed = m.induced_map(g)?.compose(&m.induced_map(h)?)?;
        ensure("functoriality", gh.same_matrices(&composed), format!("({g}·{h})_* = {g}_* ∘ {h}_*"), "different cellular matrices")?;
    }

    let quotient = subdivided_quotient(&m, &[w0]);
    let quotient_homology = integral_homology(quotient.complex())?;
    let quotient_h1 = quotient_homology[1].clone();

    // σ acts on cohomology by the transpose inverse; invariant dimensions agree
    let b3_hat = b3_of_resolution(&betti, &mats, &vec![BlowupCenter::twistor_fibre(); total])?;
    let kahler = kahler_obstruction(quotient_h1.rank, b3_hat);

    Ok(DavisReport {
        orbit_counts,
        chi,
        homology,
        mod2_betti: m2,
        subdivision_counts: sub.complex().counts(),
        subdivision_homology,
        ultraparallel_pairs: angles.ultraparallel_pairs,
        fixed_points: FixedPointSummary { total, strata, lefschetz_number: lefschetz.to_string() },
        sigma_on_h1: actions[1].clone(),
        sigma_actions: actions,
        free_pairs,
        loops_generate_h1: loops.is_trivial(),
        functoriality_pairs: opts.functoriality_samples,
        quotient_homology,
        quotient_h1,
        b3_hat,
        kahler,
    })
}

fn fmt_groups(h: &[FgAbGroup]) -> String {
    h.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(n: usize, s: i64) -> Matrix<Rational> {
        Matrix::identity(n).scale(Rational::from(s))
    }

    #[test]
    fn resolution_bookkeeping() {
        let betti = [1, 24, 72, 24, 1];
        let minus: Vec<_> = betti.iter().enumerate().map(|(k, &b)| scalar(b, if k % 2 == 1 { -1 } else { 1 })).collect();
        let plus: Vec<_> = betti.iter().map(|&b| scalar(b, 1)).collect();
        let centers = vec![BlowupCenter::twistor_fibre(); 122];
        assert_eq!(b3_of_resolution(&betti, &minus, &centers).unwrap(), 0);
        assert_eq!(b3_of_resolution(&betti, &plus, &[]).unwrap(), 48);
        let sphere = [1, 0, 0, 0, 1];
        let id: Vec<_> = sphere.iter().map(|&b| scalar(b, 1)).collect();
        assert_eq!(b3_of_resolution(&sphere, &id, &centers).unwrap(), 0);
        assert!(matches!(b3_of_resolution(&betti, &plus[..4], &[]), Err(DavisError::InconsistentDegrees(_))));
        assert!(matches!(b3_of_resolution(&[1, 2, 0, 2, 1], &plus, &[]), Err(DavisError::InconsistentDegrees(_))));
    }

    #[test]
    fn deeper_centers_add_odd_classes() {
        let betti = [1, 0, 0, 0, 1];
        let id: Vec<_> = betti.iter().map(|&b| scalar(b, 1)).collect();
        // a circle blown up in codimension 2 contributes H¹
        let c = BlowupCenter { betti: vec![1, 1], codim: 2 };
        assert_eq!(b3_of_resolution(&betti, &id, &[c]).unwrap(), 1);
    }

    #[test]
    fn kahler_verdicts() {
        assert_eq!(kahler_obstruction(0, 0), KahlerVerdict::Obstructed);
        assert_eq!(kahler_obstruction(0, 4), KahlerVerdict::Inconclusive);
        assert_eq!(kahler_obstruction(2, 0), KahlerVerdict::Inconclusive);
        assert_eq!(kahler_obstruction(0, 0).to_string(), "no Kähler structure with c1=0");
    }
}
