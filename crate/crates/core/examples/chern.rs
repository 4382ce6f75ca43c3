//! First Chern class of twistor spaces and the resolution model.

use hypercheck::chern::{resolution_check, twistor_c1};

fn main() {
    for n in 1..=5 {
        println!("c1(Z_{}) = {}", 2 * n, twistor_c1(n).unwrap());
    }
    let r = resolution_check().unwrap();
    println!("along E: c1 = {}, <c2, E> = {}, p1 = {}, <e², E> = {}", r.c1, r.c2_on_e, r.p1, r.exceptional_squared_on_e);
}
