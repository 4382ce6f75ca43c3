//! Build the 120-cell from its symmetry group and realize it in H⁴.

use hypercheck::coxeter::{antipodal_pairing, build_120cell, check_angles, h4_group, realize_hyperbolic};

fn main() {
    let group = h4_group();
    println!("|[5,3,3]| = {}", group.order());
    let lattice = build_120cell(group).expect("120-cell");
    println!("f-vector {:?}", lattice.fvector());

    let real = realize_hyperbolic(&lattice).expect("hyperbolic realization");
    println!("signature {:?}", real.signature());
    let angles = check_angles(&lattice, &real).expect("angles");
    println!("adjacent facet pairs: {}, cosine {}", angles.adjacent_pairs, angles.adjacent_cosines[0]);
    println!("ultraparallel pairs: {}", angles.ultraparallel_pairs);

    let pairing = antipodal_pairing(&lattice, &real).expect("pairing");
    println!("facet 0 is glued to facet {}", pairing.partner(0));
}
