use hypercheck::arith::GoldenScalar;
use hypercheck::coxeter::*;
use hypercheck::lorentz::{CoxeterDiagram, LorentzMatrix, Signature};

#[test]
fn the_hyperbolic_120_cell() {
    let lattice = build_120cell(h4_group()).unwrap();
    assert_eq!(lattice.fvector(), vec![600, 1200, 720, 120]);
    assert!(lattice.check_diamond());
    assert!(lattice.check_boundary_squared());
    assert!(lattice.containment_degrees(1, 3).iter().all(|&d| d == 3));
    assert!(lattice.containment_degrees(0, 3).iter().all(|&d| d == 4));

    let real = realize_hyperbolic(&lattice).unwrap();
    assert_eq!(real.signature(), Signature::new(4, 1, 0));
    assert_eq!(real.normals().len(), 120);
    let angles = check_angles(&lattice, &real).unwrap();
    assert_eq!(angles.adjacent_pairs, 720);
    let cos_2pi_5 = GoldenScalar::from_ints(-1, 1) / GoldenScalar::from_ints(2, 0);
    assert!(angles.adjacent_cosines.iter().all(|c| *c == cos_2pi_5));
    assert_eq!(angles.ultraparallel_pairs + angles.other_pairs, 120 * 119 / 2 - 720);

    let pairing = antipodal_pairing(&lattice, &real).unwrap();
    assert_eq!(pairing.pairs.len(), 60);
    for f in 0..120 {
        assert_eq!(pairing.partner(pairing.partner(f)), f);
    }
    for p in &pairing.pairs {
        assert!(p.isometry.preserves(real.gram()));
        assert_eq!(p.isometry.compose(&p.isometry), LorentzMatrix::identity(5));
    }
}

#[test]
fn infinite_group_hits_bound() {
    let err = generate_group(&CoxeterDiagram::linear(&[5, 3, 3, 5]), 20000).unwrap_err();
    assert!(matches!(err, CoxeterError::TooLarge(20000)));
}
