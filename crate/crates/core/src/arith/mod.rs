//! Exact scalars: rationals, the golden field Q(√5), cyclotomic fields
//! Q(ζ_{2m}), and certified dyadic interval enclosures used for sign
//! decisions.

mod cyclo;
mod golden;
mod interval;
mod rational;

pub use cyclo::{cyclo_power_order, cyclotomic_polynomial, euler_phi, CycloScalar, PowerOrder};
pub use golden::{within_width_contract, GoldenScalar, ParseGoldenError};
pub use interval::{cos_pi_fraction, sqrt5_mantissas, IntervalValue, MAX_COS_DENOMINATOR};
pub use rational::{ParseRationalError, Rational};

/// Multiplication in Q(√5).
pub fn golden_mul(x: GoldenScalar, y: GoldenScalar) -> GoldenScalar {
    x * y
}

/// Exact sign of a golden scalar: −1, 0 or +1.
pub fn golden_sign(x: GoldenScalar) -> i32 {
    x.sign()
}
