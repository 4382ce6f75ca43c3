//! Certified dyadic intervals.
//!
//! Intervals are only ever produced by outward rounding, so the exact value
//! they were computed from is always inside `[lo, hi]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::Rational;

/// Closed interval `[lo / 2^precision_bits, hi / 2^precision_bits]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalValue {
    lo: BigInt,
    hi: BigInt,
    precision_bits: u32,
}

impl IntervalValue {
    pub fn new(lo: BigInt, hi: BigInt, precision_bits: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        IntervalValue { lo, hi, precision_bits }
    }

    pub fn point(r: Rational, precision_bits: u32) -> Self {
        IntervalValue::new(floor_scaled(r, precision_bits), ceil_scaled(r, precision_bits), precision_bits)
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn lo_mantissa(&self) -> &BigInt {
        &self.lo
    }

    pub fn hi_mantissa(&self) -> &BigInt {
        &self.hi
    }

    pub fn lo_f64(&self) -> f64 {
        scaled_to_f64(&self.lo, self.precision_bits)
    }

    pub fn hi_f64(&self) -> f64 {
        scaled_to_f64(&self.hi, self.precision_bits)
    }

    /// Width as a mantissa at `precision_bits`.
    pub fn width_mantissa(&self) -> BigInt {
        &self.hi - &self.lo
    }

    /// `width <= num / 2^bits` decided exactly.
    pub fn width_at_most(&self, num: &BigInt, bits: u32) -> bool {
        let w = self.width_mantissa();
        // w / 2^p <= num / 2^bits  <=>  w * 2^bits <= num * 2^p
        (w << bits as usize) <= (num.clone() << self.precision_bits as usize)
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= BigInt::zero() && self.hi >= BigInt::zero()
    }

    pub fn contains_rational(&self, r: Rational) -> bool {
        let scaled_num = BigInt::from(r.numer()) << self.precision_bits as usize;
        let den = BigInt::from(r.denom());
        &self.lo * &den <= scaled_num && scaled_num <= &self.hi * &den
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        self.lo_f64() <= x && x <= self.hi_f64()
    }

    /// Sign of every point of the interval, or `None` when it straddles zero.
    pub fn certified_sign(&self) -> Option<i32> {
        if self.lo > BigInt::zero() {
            Some(1)
        } else if self.hi < BigInt::zero() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    /// Rescale to a finer (or equal) precision without changing the set.
    pub fn at_precision(&self, bits: u32) -> IntervalValue {
        if bits >= self.precision_bits {
            let s = (bits - self.precision_bits) as usize;
            IntervalValue::new(&self.lo << s, &self.hi << s, bits)
        } else {
            let s = BigInt::one() << (self.precision_bits - bits) as usize;
            IntervalValue::new(self.lo.div_floor(&s), div_ceil(&self.hi, &s), bits)
        }
    }

    /// Intersection of two enclosures of the same value. Never wider than either.
    pub fn intersect(&self, other: &IntervalValue) -> IntervalValue {
        let p = self.precision_bits.max(other.precision_bits);
        let a = self.at_precision(p);
        let b = other.at_precision(p);
        let lo = a.lo.max(b.lo);
        let hi = a.hi.min(b.hi);
        assert!(lo <= hi, "disjoint enclosures of the same value");
        IntervalValue::new(lo, hi, p)
    }

    pub fn add(&self, other: &IntervalValue) -> IntervalValue {
        let p = self.precision_bits.max(other.precision_bits);
        let a = self.at_precision(p);
        let b = other.at_precision(p);
        IntervalValue::new(a.lo + b.lo, a.hi + b.hi, p)
    }

    /// Multiply by an exact rational, rounding outward at the current precision.
    pub fn scale(&self, r: Rational) -> IntervalValue {
        let n = BigInt::from(r.numer());
        let d = BigInt::from(r.denom());
        let (a, b) = (&self.lo * &n, &self.hi * &n);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        IntervalValue::new(lo.div_floor(&d), div_ceil(&hi, &d), self.precision_bits)
    }
}

pub(crate) fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

pub(crate) fn floor_scaled(r: Rational, bits: u32) -> BigInt {
    (BigInt::from(r.numer()) << bits as usize).div_floor(&BigInt::from(r.denom()))
}

pub(crate) fn ceil_scaled(r: Rational, bits: u32) -> BigInt {
    div_ceil(&(BigInt::from(r.numer()) << bits as usize), &BigInt::from(r.denom()))
}

fn scaled_to_f64(m: &BigInt, bits: u32) -> f64 {
    // Shift down to ~60 significant bits before converting.
    let len = m.bits() as i64;
    let shift = (len - 60).max(0);
    let top = (m >> shift as usize).to_f64().unwrap_or(0.0);
    top * 2f64.powi((shift - bits as i64) as i32)
}

/// Bits needed to hold `|r|` rounded up, at least 1.
pub(crate) fn magnitude_bits(r: Rational) -> u32 {
    let q = BigInt::from(r.numer().unsigned_abs()) / BigInt::from(r.denom()) + 1u32;
    q.bits() as u32
}

/// `[floor(√5·2^bits), floor(√5·2^bits)+1]`.
pub fn sqrt5_mantissas(bits: u32) -> (BigInt, BigInt) {
    let target = BigInt::from(5) << (2 * bits as usize);
    let s = target.sqrt();
    let hi = if &s * &s == target { s.clone() } else { &s + 1 };
    (s, hi)
}

/// Enclosure of `r · √5` at `bits`.
pub(crate) fn rational_times_sqrt5(r: Rational, bits: u32) -> IntervalValue {
    let (lo, hi) = sqrt5_mantissas(bits);
    IntervalValue::new(lo, hi, bits).scale(r)
}

/// Scaled Chebyshev polynomial of the second kind: returns the sign of
/// `U_{deg}(a / 2^bits)`.
fn chebyshev_u_sign(deg: u32, a: &BigInt, bits: u32) -> i32 {
    // V_k = U_k(x) * S^k with S = 2^bits, so V_{k+1} = 2a V_k - S^2 V_{k-1}.
    let s2 = BigInt::one() << (2 * bits as usize);
    let two_a: BigInt = a * 2;
    let mut prev = BigInt::one();
    if deg == 0 {
        return 1;
    }
    let mut cur = two_a.clone();
    for _ in 1..deg {
        let next = &two_a * &cur - &s2 * &prev;
        prev = cur;
        cur = next;
    }
    match cur.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// Largest supported denominator for [`cos_pi_fraction`]; keeps consecutive
/// roots of `U_{M-1}` at least `2e-7` apart so a `1e-9` bracket isolates one.
pub const MAX_COS_DENOMINATOR: u32 = 4096;

/// Certified enclosure of `cos(j·π / m)` at `bits`, using only exact
/// polynomial sign evaluation. The values `cos(kπ/m)`, `0 < k < m`, are the
/// simple roots of `U_{m-1}`; a floating guess is bracketed, the bracket is
/// certified by a sign change, then bisected.
pub fn cos_pi_fraction(j: i64, m: u32, bits: u32) -> IntervalValue {
    assert!((1..=MAX_COS_DENOMINATOR).contains(&m), "cosine denominator out of range");
    let period = 2 * m as i64;
    let mut j = j.rem_euclid(period);
    if j > m as i64 {
        j = period - j;
    }
    if j == 0 {
        return IntervalValue::point(Rational::ONE, bits);
    }
    if j == m as i64 {
        return IntervalValue::point(-Rational::ONE, bits);
    }
    if 2 * j == m as i64 {
        return IntervalValue::point(Rational::ZERO, bits);
    }
    let guess = (j as f64 * std::f64::consts::PI / m as f64).cos();
    let start_bits = 40u32;
    let scale = (1u64 << start_bits) as f64;
    let mut lo = BigInt::from(((guess - 1e-9) * scale).floor() as i64);
    let mut hi = BigInt::from(((guess + 1e-9) * scale).ceil() as i64);
    let deg = m - 1;
    let s_lo = chebyshev_u_sign(deg, &lo, start_bits);
    let s_hi = chebyshev_u_sign(deg, &hi, start_bits);
    assert!(s_lo * s_hi < 0, "failed to bracket cos({j}π/{m})");
    let mut cur_bits = start_bits;
    let one = BigInt::one();
    while cur_bits < bits + 1 || &hi - &lo > one {
        if &hi - &lo <= one {
            lo <<= 1;
            hi <<= 1;
            cur_bits += 1;
        }
        let mid = (&lo + &hi) >> 1;
        let s_mid = chebyshev_u_sign(deg, &mid, cur_bits);
        if s_mid == 0 {
            return IntervalValue::new(mid.clone(), mid, cur_bits).at_precision(bits);
        }
        if s_mid == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    IntervalValue::new(lo, hi, cur_bits).at_precision(bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt5_bracket() {
        let (lo, hi) = sqrt5_mantissas(30);
        let v = IntervalValue::new(lo, hi, 30);
        assert!(v.contains_f64(5f64.sqrt()));
        assert!(v.width_at_most(&BigInt::one(), 30));
    }

    #[test]
    fn cosine_enclosures_match_float() {
        for m in [2u32, 3, 5, 7, 10, 12, 24] {
            for j in 0..(2 * m as i64) {
                let iv = cos_pi_fraction(j, m, 80);
                let c = (j as f64 * std::f64::consts::PI / m as f64).cos();
                assert!((iv.lo_f64() - c).abs() < 1e-12, "cos({j}π/{m})");
                assert!(iv.width_at_most(&BigInt::from(2), 80));
            }
        }
    }

    #[test]
    fn cos_pi_over_five_is_half_phi() {
        // cos(π/5) = (1 + √5)/4 exactly
        let iv = cos_pi_fraction(1, 5, 100);
        let s = rational_times_sqrt5(Rational::new(1, 4), 100).add(&IntervalValue::point(Rational::new(1, 4), 100));
        let both = iv.intersect(&s);
        assert!(both.width_at_most(&BigInt::from(4), 100));
    }

    #[test]
    fn scale_rounds_outward() {
        let iv = IntervalValue::point(Rational::new(1, 3), 10);
        let s = iv.scale(Rational::new(-3, 1));
        assert!(s.contains_rational(-Rational::ONE));
    }
}
