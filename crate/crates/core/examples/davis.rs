//! Homology of the Davis manifold and the fixed points of its involution.

use hypercheck::davis::run_davis_pipeline;

fn main() {
    let r = run_davis_pipeline().expect("pipeline checks");
    println!("cells by dimension {:?}, χ = {}", r.orbit_counts, r.chi);
    for (k, g) in r.homology.iter().enumerate() {
        println!("H{k} = {g}");
    }
    println!("σ fixes {} points (Lefschetz number {})", r.fixed_points.total, r.fixed_points.lefschetz_number);
    println!("σ on H1 is -1: {}", r.sigma_on_h1.is_minus_identity);
    println!("H1(M/σ) = {}", r.quotient_h1);
    println!("b3 of the resolution: {} => {}", r.b3_hat, r.kahler);
}
