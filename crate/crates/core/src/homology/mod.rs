//! Integer linear algebra and homology of cell complexes.

mod group;
mod matrix;
mod snf;
mod sparse;

pub use group::{FgAbGroup, ParseGroupError};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SnfResult};
pub use sparse::{eliminate, Elimination};

use serde::Serialize;

use crate::arith::Rational;
use crate::complex::{CellMap, CwComplex};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error("boundary of boundary is nonzero in degree {0}")]
    BoundarySquared(usize),
    #[error("coefficient growth exceeded the 64-bit guard")]
    CoefficientGrowth,
    #[error("dense remainder {0}x{1} too large")]
    RemainderTooLarge(usize, usize),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("degree {0} out of range")]
    Degree(usize),
    #[error("map is not a chain map in degree {0}")]
    NotChainMap(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficients {
    Integers,
    Mod2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum HomologyGroups {
    Integral(Vec<FgAbGroup>),
    /// Dimensions over Z/2.
    Mod2(Vec<usize>),
}

impl HomologyGroups {
    pub fn betti(&self) -> Vec<usize> {
        match self {
            HomologyGroups::Integral(g) => g.iter().map(|x| x.rank).collect(),
            HomologyGroups::Mod2(d) => d.clone(),
        }
    }
}

/// Rank and torsion of a boundary matrix, falling back to dense big-integer
/// reduction when 64-bit elimination would overflow.
fn reduce(m: &IntMatrix, modulus: Option<i64>) -> Result<Elimination, HomologyError> {
    match eliminate(m, modulus) {
        Err(HomologyError::CoefficientGrowth) if modulus.is_none() => {
            if m.rows() * m.cols() > 4_000_000 {
                return Err(HomologyError::CoefficientGrowth);
            }
            let factors = snf::invariant_factors_dense(m.to_bigint());
            let one = num_bigint::BigInt::from(1);
            let torsion = factors
                .iter()
                .filter(|f| **f != one)
                .map(|f| num_traits::ToPrimitive::to_u64(f).ok_or(HomologyError::CoefficientGrowth))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Elimination { rank: factors.len(), torsion, unit_pivots: 0, remainder_size: (m.rows(), m.cols()) })
        }
        other => other,
    }
}

/// `∂_{k-1} ∘ ∂_k = 0` for every degree.
pub fn check_chain_complex(boundaries: &[IntMatrix]) -> Result<(), HomologyError> {
    for k in 2..boundaries.len() {
        if !boundaries[k - 1].mul(&boundaries[k]).is_zero() {
            return Err(HomologyError::BoundarySquared(k));
        }
    }
    Ok(())
}

/// Homology of a chain complex given by `∂_k : C_k → C_{k-1}`, `k = 0..=top`
/// (`∂_0` has zero rows).
pub fn chain_homology(boundaries: &[IntMatrix], coeff: Coefficients) -> Result<HomologyGroups, HomologyError> {
    check_chain_complex(boundaries)?;
    let modulus = match coeff {
        Coefficients::Integers => None,
        Coefficients::Mod2 => Some(2),
    };
    let red: Vec<Elimination> = boundaries.iter().map(|b| reduce(b, modulus)).collect::<Result<_, _>>()?;
    let top = boundaries.len();
    let rank_of = |k: usize| if k < top { red[k].rank } else { 0 };
    let mut groups = Vec::with_capacity(top);
    for k in 0..top {
        let free = boundaries[k].cols() - rank_of(k) - rank_of(k + 1);
        let torsion = if k + 1 < top { red[k + 1].torsion.clone() } else { Vec::new() };
        groups.push(FgAbGroup::new(free, &torsion));
    }
    Ok(match coeff {
        Coefficients::Integers => HomologyGroups::Integral(groups),
        Coefficients::Mod2 => HomologyGroups::Mod2(groups.iter().map(|g| g.rank).collect()),
    })
}

pub fn homology(c: &CwComplex, coeff: Coefficients) -> Result<HomologyGroups, HomologyError> {
    chain_homology(c.boundaries(), coeff)
}

pub fn integral_homology(c: &CwComplex) -> Result<Vec<FgAbGroup>, HomologyError> {
    match homology(c, Coefficients::Integers)? {
        HomologyGroups::Integral(g) => Ok(g),
        HomologyGroups::Mod2(_) => unreachable!(),
    }
}

pub fn mod2_betti(c: &CwComplex) -> Result<Vec<usize>, HomologyError> {
    Ok(homology(c, Coefficients::Mod2)?.betti())
}

pub fn euler_characteristic(c: &CwComplex) -> i64 {
    c.counts().iter().enumerate().map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
}

pub fn betti_euler(groups: &[FgAbGroup]) -> i64 {
    groups.iter().enumerate().map(|(k, g)| if k % 2 == 0 { g.rank as i64 } else { -(g.rank as i64) }).sum()
}

fn to_rational(m: &IntMatrix) -> Matrix<Rational> {
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for (i, j, v) in m.triplets() {
        out[(i, j)] = Rational::from_int(v);
    }
    out
}

/// Basis of `H_k(c; Q)` as cycles: a complement of the boundaries inside the
/// cycles, together with a basis of the boundaries.
pub struct RationalHomologyBasis {
    pub boundaries: Vec<Vec<Rational>>,
    pub classes: Vec<Vec<Rational>>,
}

pub fn rational_homology_basis(c: &CwComplex, k: usize) -> Result<RationalHomologyBasis, HomologyError> {
    let bd = c.boundaries();
    if k >= bd.len() {
        return Err(HomologyError::Degree(k));
    }
    let n = bd[k].cols();
    let cycles = to_rational(&bd[k]).nullspace();
    let next: Vec<Vec<Rational>> = if k + 1 < bd.len() {
        let b = to_rational(&bd[k + 1]);
        (0..b.cols()).map(|j| b.column(j)).collect()
    } else {
        Vec::new()
    };
    let mut all = next.clone();
    all.extend(cycles.iter().cloned());
    let (_, pivots) = Matrix::from_columns(&all, n).rref();
    let boundaries = pivots.iter().filter(|&&p| p < next.len()).map(|&p| next[p].clone()).collect();
    let classes = pivots.iter().filter(|&&p| p >= next.len()).map(|&p| all[p].clone()).collect();
    Ok(RationalHomologyBasis { boundaries, classes })
}

/// Matrix of `f_*` on `H_k(·; Q)` in the basis of [`rational_homology_basis`].
pub fn induced_on_homology(f: &CellMap, k: usize) -> Result<Matrix<Rational>, HomologyError> {
    let src = rational_homology_basis(f.source(), k)?;
    let tgt = rational_homology_basis(f.target(), k)?;
    let fk = to_rational(f.matrix(k));
    let mut basis = tgt.boundaries.clone();
    basis.extend(tgt.classes.iter().cloned());
    let rows = f.target().counts()[k];
    let nb = tgt.boundaries.len();
    let h = tgt.classes.len();
    let mut aug_cols = basis.clone();
    for v in &src.classes {
        aug_cols.push(fk.mul_vec(v));
    }
    let (r, pivots) = Matrix::from_columns(&aug_cols, rows).rref();
    if pivots.iter().any(|&p| p >= basis.len()) {
        return Err(HomologyError::NotChainMap(k));
    }
    let mut out = Matrix::zeros(h, src.classes.len());
    for j in 0..src.classes.len() {
        for i in 0..h {
            out[(i, j)] = r[(nb + i, basis.len() + j)];
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_and_torus() {
        let circle = vec![IntMatrix::zeros(0, 1), IntMatrix::zeros(1, 1)];
        let h = chain_homology(&circle, Coefficients::Integers).unwrap();
        assert_eq!(h, HomologyGroups::Integral(vec![FgAbGroup::free(1), FgAbGroup::free(1)]));
        let torus = vec![IntMatrix::zeros(0, 1), IntMatrix::zeros(1, 2), IntMatrix::zeros(2, 1)];
        assert_eq!(chain_homology(&torus, Coefficients::Integers).unwrap().betti(), vec![1, 2, 1]);
    }

    #[test]
    fn projective_plane() {
        // one cell per dimension, ∂_2 = 2
        let rp2 = vec![IntMatrix::zeros(0, 1), IntMatrix::zeros(1, 1), IntMatrix::from_dense(&[vec![2]])];
        let h = chain_homology(&rp2, Coefficients::Integers).unwrap();
        assert_eq!(h, HomologyGroups::Integral(vec![FgAbGroup::free(1), FgAbGroup::cyclic(2), FgAbGroup::trivial()]));
        assert_eq!(chain_homology(&rp2, Coefficients::Mod2).unwrap().betti(), vec![1, 1, 1]);
    }

    #[test]
    fn rejects_nonzero_boundary_squared() {
        let bad = vec![IntMatrix::zeros(0, 1), IntMatrix::from_dense(&[vec![1]]), IntMatrix::from_dense(&[vec![1]])];
        assert_eq!(chain_homology(&bad, Coefficients::Integers), Err(HomologyError::BoundarySquared(2)));
    }
}
