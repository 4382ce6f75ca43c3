//! Finite Coxeter groups as exact matrix groups, face lattices of regular
//! polytopes from parabolic cosets, and the hyperbolic 120-cell.

mod group;
mod lattice;
mod realize;

pub use group::{generate_group, generate_parabolic, ReflectionGroup};
pub use lattice::{FaceLattice, LatticeCell};
pub use realize::{antipodal_pairing, reflection_pairing, check_angles, realize_hyperbolic, AngleCheck, FacePairing, FacetPair, HyperbolicRealization};

use crate::arith::GoldenScalar;
use crate::linalg::Matrix;
use crate::lorentz::{CoxeterDiagram, GeomError, GramMatrix, LorentzMatrix, Signature};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoxeterError {
    #[error("group larger than bound (possibly infinite): more than {0} elements")]
    TooLarge(usize),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("wrong input group: {0}")]
    WrongGroup(String),
    #[error("face poset is not a regular CW complex at dimension {dim} cell {cell}")]
    NotRegular { dim: usize, cell: usize },
    #[error("group element is not a lattice automorphism at dimension {dim} cell {cell}")]
    NotAutomorphism { dim: usize, cell: usize },
    #[error("unexpected signature {0:?}")]
    Signature(Signature),
    #[error("facet {0} has no antipode")]
    NoAntipode(usize),
}

/// Order of the `[5,3,3]` group.
pub const H4_ORDER: usize = 14400;

/// The `[5,3,3]` group.
pub fn h4_group() -> ReflectionGroup {
    generate_group(&CoxeterDiagram::linear(&[5, 3, 3]), H4_ORDER).expect("[5,3,3] has order 14400")
}

/// Face lattice of the 120-cell from the `[5,3,3]` group.
pub fn build_120cell(g: ReflectionGroup) -> Result<FaceLattice, CoxeterError> {
    if g.order() != H4_ORDER || *g.diagram() != CoxeterDiagram::linear(&[5, 3, 3]) {
        return Err(CoxeterError::WrongGroup(format!("expected [5,3,3] of order 14400, got order {}", g.order())));
    }
    FaceLattice::regular(g)
}

/// Symmetry group of the square, `[4]`, by signed permutation matrices.
pub fn square_group() -> ReflectionGroup {
    let m = |rows: [[i64; 2]; 2]| LorentzMatrix {
        entries: Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| GoldenScalar::from_ints(x, 0)).collect()).collect()),
    };
    let gram = GramMatrix::from_matrix(Matrix::identity(2)).expect("identity form");
    let gens = vec![m([[0, 1], [1, 0]]), m([[1, 0], [0, -1]])];
    ReflectionGroup::from_matrices(CoxeterDiagram::linear(&[4]), gram, gens, 8).expect("dihedral group of order 8")
}
