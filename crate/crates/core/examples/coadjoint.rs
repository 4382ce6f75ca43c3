//! Isotropy decomposition and invariant forms on so(2n,1) coadjoint orbits.

use hypercheck::lie::{kirillov_form, lie_summary, tangent_decomposition, XiPoint};

fn main() {
    for n in 1..=4 {
        let s = lie_summary(n).expect("decomposition");
        let d = s.dims;
        println!(
            "n={n}: dim {} = stabilizer {} + Λ² part {} + Cⁿ part {}; {} invariant forms",
            d.total, d.stabilizer, d.lambda2, d.cn, s.invariant_forms
        );
    }
    let xi = XiPoint::standard(2).expect("n >= 1");
    let d = tangent_decomposition(&xi).expect("decomposition");
    let k = kirillov_form(&xi, &d).expect("form");
    println!("Kirillov form at n=2 has rank {} on a {}-dimensional tangent space", k.rank, d.complement().len());
}
