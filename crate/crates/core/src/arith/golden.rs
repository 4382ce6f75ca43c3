use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use super::interval::{ceil_scaled, floor_scaled, magnitude_bits, rational_times_sqrt5, IntervalValue};
use super::Rational;

/// Element `a + b·φ` of the golden field Q(√5), with `φ² = φ + 1`.
///
/// The representation in the basis `(1, φ)` is unique, so derived equality
/// and hashing are exact.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GoldenScalar {
    pub a: Rational,
    pub b: Rational,
}

impl GoldenScalar {
    pub const ZERO: GoldenScalar = GoldenScalar { a: Rational::ZERO, b: Rational::ZERO };
    pub const ONE: GoldenScalar = GoldenScalar { a: Rational::ONE, b: Rational::ZERO };
    pub const PHI: GoldenScalar = GoldenScalar { a: Rational::ZERO, b: Rational::ONE };

    pub fn new(a: Rational, b: Rational) -> Self {
        GoldenScalar { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        GoldenScalar::new(Rational::from_int(a), Rational::from_int(b))
    }

    pub fn from_rational(a: Rational) -> Self {
        GoldenScalar::new(a, Rational::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Galois conjugate `a + b·φ ↦ (a + b) − b·φ` (sends √5 to −√5).
    pub fn conj(&self) -> Self {
        GoldenScalar::new(self.a + self.b, -self.b)
    }

    /// Field norm `x · conj(x) = a² + ab − b²`.
    pub fn norm(&self) -> Rational {
        self.a * self.a + self.a * self.b - self.b * self.b
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm().recip()?;
        let c = self.conj();
        Some(GoldenScalar::new(c.a * n, c.b * n))
    }

    pub fn scale(&self, r: Rational) -> Self {
        GoldenScalar::new(self.a * r, self.b * r)
    }

    /// Whether both coordinates are integers, i.e. the value lies in Z[φ].
    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * (1.0 + 5f64.sqrt()) / 2.0
    }

    /// Exact sign. An interval enclosure is tried first; when it straddles
    /// zero the decision falls back to comparing `(a + b/2)²` with `5b²/4`.
    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if let Some(s) = self.to_interval(64).certified_sign() {
            return s;
        }
        self.exact_sign()
    }

    /// Sign computed with rational comparisons only.
    pub fn exact_sign(&self) -> i32 {
        // value = p + q·√5 with p = a + b/2, q = b/2
        let p = self.a + self.b * Rational::new(1, 2);
        let q = self.b * Rational::new(1, 2);
        let (sp, sq) = (p.signum(), q.signum());
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return sq;
        }
        // opposite signs: compare p² with 5q²
        let lhs = p * p;
        let rhs = Rational::from_int(5) * q * q;
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => sp,
            std::cmp::Ordering::Less => sq,
            std::cmp::Ordering::Equal => 0,
        }
    }

    /// Certified enclosure with width at most `2^(4 - precision_bits) · max(1, |x|)`.
    pub fn to_interval(&self, precision_bits: u32) -> IntervalValue {
        assert!(precision_bits >= 8, "precision must be at least 8 bits");
        if self.is_zero() {
            return IntervalValue::new(BigInt::from(0), BigInt::from(0), precision_bits);
        }
        let p = self.a + self.b * Rational::new(1, 2);
        let q = self.b * Rational::new(1, 2);
        let guard = magnitude_bits(q) + 3;
        let inner = precision_bits + guard;
        let rat = IntervalValue::new(floor_scaled(p, inner), ceil_scaled(p, inner), inner);
        rat.add(&rational_times_sqrt5(q, inner)).at_precision(precision_bits)
    }

    pub fn cmp_value(&self, other: &GoldenScalar) -> std::cmp::Ordering {
        (*self - *other).sign().cmp(&0)
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -*self
        } else {
            *self
        }
    }
}

impl From<Rational> for GoldenScalar {
    fn from(r: Rational) -> Self {
        GoldenScalar::from_rational(r)
    }
}

impl Add for GoldenScalar {
    type Output = GoldenScalar;
    fn add(self, o: Self) -> Self {
        GoldenScalar::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for GoldenScalar {
    type Output = GoldenScalar;
    fn sub(self, o: Self) -> Self {
        GoldenScalar::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for GoldenScalar {
    type Output = GoldenScalar;
    fn neg(self) -> Self {
        GoldenScalar::new(-self.a, -self.b)
    }
}

impl Mul for GoldenScalar {
    type Output = GoldenScalar;
    fn mul(self, o: Self) -> Self {
        // (a + bφ)(c + dφ) = ac + (ad + bc)φ + bd(φ + 1)
        let bd = self.b * o.b;
        GoldenScalar::new(self.a * o.a + bd, self.a * o.b + self.b * o.a + bd)
    }
}

impl Div for GoldenScalar {
    type Output = GoldenScalar;
    fn div(self, o: Self) -> Self {
        self * o.inv().expect("division by zero in Q(√5)")
    }
}

impl AddAssign for GoldenScalar {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl SubAssign for GoldenScalar {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl MulAssign for GoldenScalar {
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl PartialOrd for GoldenScalar {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp_value(other))
    }
}

impl fmt::Debug for GoldenScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical rendering `a/b + c/d*phi`.
impl fmt::Display for GoldenScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*phi", self.a, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse golden scalar from {0:?}")]
pub struct ParseGoldenError(pub String);

impl FromStr for GoldenScalar {
    type Err = ParseGoldenError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseGoldenError(s.to_string());
        let (a, rest) = s.split_once(" + ").ok_or_else(err)?;
        let b = rest.trim().strip_suffix("*phi").ok_or_else(err)?;
        Ok(GoldenScalar::new(a.parse().map_err(|_| err())?, b.parse().map_err(|_| err())?))
    }
}

impl serde::Serialize for GoldenScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for GoldenScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Checks the enclosure contract `width <= 2^(4 - bits) · max(1, |x|)`.
pub fn within_width_contract(iv: &IntervalValue, bits: u32) -> bool {
    // |x| is bounded by the larger endpoint magnitude of the enclosure.
    let hi_abs = iv.hi_mantissa().clone().max(-iv.lo_mantissa().clone());
    let one = BigInt::one() << iv.precision_bits() as usize;
    let mag = hi_abs.max(one);
    // width <= 16 · mag / 2^p / 2^bits  <=>  width · 2^bits <= 16 · mag
    (iv.width_mantissa() << bits as usize) <= mag * 16
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: (i64, i64), b: (i64, i64)) -> GoldenScalar {
        GoldenScalar::new(Rational::new(a.0, a.1), Rational::new(b.0, b.1))
    }

    #[test]
    fn phi_squared_is_one_plus_phi() {
        assert_eq!(GoldenScalar::PHI * GoldenScalar::PHI, GoldenScalar::from_ints(1, 1));
    }

    #[test]
    fn norm_of_one_plus_phi() {
        let x = GoldenScalar::from_ints(1, 1);
        assert_eq!(x.conj(), GoldenScalar::from_ints(2, -1));
        assert_eq!(x * x.conj(), GoldenScalar::ONE);
        assert_eq!(x.norm(), Rational::ONE);
    }

    #[test]
    fn half_phi_squared_matches_cos_squared() {
        let half_phi = g((0, 1), (1, 2));
        let sq = half_phi * half_phi;
        assert_eq!(sq, g((1, 4), (1, 4)));
        let c = (std::f64::consts::PI / 5.0).cos();
        assert!((sq.to_f64() - c * c).abs() < 1e-12);
    }

    #[test]
    fn signs() {
        assert_eq!(GoldenScalar::ZERO.sign(), 0);
        assert_eq!((GoldenScalar::ONE - GoldenScalar::PHI).sign(), -1);
        assert_eq!((GoldenScalar::from_ints(2, 0) - GoldenScalar::PHI).sign(), 1);
        // 1000φ - 1618 > 0 but 1000φ - 1619 < 0
        assert_eq!(GoldenScalar::from_ints(-1618, 1000).sign(), 1);
        assert_eq!(GoldenScalar::from_ints(-1619, 1000).sign(), -1);
    }

    #[test]
    fn phi_interval_at_64_bits() {
        let iv = GoldenScalar::PHI.to_interval(64);
        assert!(iv.contains_f64(1.618_033_988_749_895));
        // width <= 2^-60
        assert!(iv.width_at_most(&BigInt::one(), 60));
    }

    #[test]
    fn zero_interval_is_a_point() {
        let iv = GoldenScalar::ZERO.to_interval(16);
        assert_eq!(iv.certified_sign(), Some(0));
    }

    #[test]
    fn cos_two_pi_over_five() {
        let x = g((-1, 2), (1, 2));
        let iv = x.to_interval(40);
        assert!((iv.lo_f64() - 0.309_016_994_374_947_4).abs() < 1e-11);
    }

    #[test]
    fn render_and_parse() {
        let x = g((-1, 2), (1, 2));
        assert_eq!(x.to_string(), "-1/2 + 1/2*phi");
        assert_eq!("-1/2 + 1/2*phi".parse::<GoldenScalar>().unwrap(), x);
    }
}
