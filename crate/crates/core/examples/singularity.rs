//! The lifted cyclic action on SL(2,C) and its fixed locus.

use hypercheck::lie::model::{conifold_incidence_check, lift_order, model_fixed_locus, quaternion_hermitian_check};

fn main() {
    for m in [2, 3, 5] {
        let f = model_fixed_locus(m).expect("m >= 2");
        println!(
            "m={m}: lift has order {}, fixed set {} = 0 with {}, normal weights ζ^{:?}",
            lift_order(m).unwrap(),
            f.vanishing.join(" = "),
            f.relation,
            f.weight_exponents
        );
    }
    let q = quaternion_hermitian_check(200, 7);
    println!("quaternionic identity: {}/{} samples", q.samples - q.failures, q.samples);
    println!("conifold rulings distinct: {}", conifold_incidence_check().passed());
}
