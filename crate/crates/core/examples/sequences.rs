//! Homology of the resolved knot threefold by deduction over the pair
//! sequence, then its place in Wall's classification.
//!
//! Pass a problem file to solve it instead:
//! `cargo run --example sequences -- examples/data/kernel.json`

use hypercheck::report::knot_threefold_wall_data;
use hypercheck::sequences::{knot_threefold_problem, orbifold_homology_mv, solve, wall_match, SequenceProblem, SolveOutcome};

fn main() {
    let problem = match std::env::args().nth(1) {
        Some(path) => serde_json::from_str::<SequenceProblem>(&std::fs::read_to_string(path).unwrap()).unwrap(),
        None => knot_threefold_problem(),
    };
    match solve(&problem) {
        Ok(out) => {
            for d in out.log() {
                println!("[{}] {}", d.rule, d.conclusion);
            }
            if let SolveOutcome::Underdetermined { residual, .. } = &out {
                println!("underdetermined: {}", residual.join("; "));
            }
        }
        Err(e) => println!("{e}"),
    }
    println!("orbifold: {:?}", orbifold_homology_mv().unwrap().iter().map(ToString::to_string).collect::<Vec<_>>());
    let data = knot_threefold_wall_data().unwrap();
    println!("Wall data b3={} H2={} -> {}", data.b3, data.h2, wall_match(&data));
}
