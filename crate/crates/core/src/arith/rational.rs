use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_integer::Integer;

/// Exact rational number with a reduced, positive denominator.
///
/// Numerator and denominator are stored as `i64`; every operation is carried
/// out in `i128` and reduced before narrowing. A result that does not fit
/// panics with "rational overflow" instead of wrapping.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

fn narrow(num: i128, den: i128) -> Rational {
    debug_assert!(den != 0);
    let g = num.gcd(&den);
    let (mut n, mut d) = if g > 1 { (num / g, den / g) } else { (num, den) };
    if d < 0 {
        n = -n;
        d = -d;
    }
    match (i64::try_from(n), i64::try_from(d)) {
        (Ok(num), Ok(den)) => Rational { num, den },
        _ => panic!("rational overflow: {n}/{d}"),
    }
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        narrow(num as i128, den as i128)
    }

    pub const fn from_int(n: i64) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn signum(&self) -> i32 {
        self.num.signum() as i32
    }

    pub fn abs(&self) -> Self {
        Rational { num: self.num.abs(), den: self.den }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.num == 0 {
            None
        } else {
            Some(narrow(self.den as i128, self.num as i128))
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Rational::ONE;
        for _ in 0..e {
            acc *= *self;
        }
        acc
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_int(n as i64)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, o: Rational) -> Rational {
        if self.den == 1 && o.den == 1 {
            return match self.num.checked_add(o.num) {
                Some(n) => Rational::from_int(n),
                None => panic!("rational overflow"),
            };
        }
        let n = self.num as i128 * o.den as i128 + o.num as i128 * self.den as i128;
        let d = self.den as i128 * o.den as i128;
        narrow(n, d)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, o: Rational) -> Rational {
        self + (-o)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, o: Rational) -> Rational {
        if self.den == 1 && o.den == 1 {
            return match self.num.checked_mul(o.num) {
                Some(n) => Rational::from_int(n),
                None => panic!("rational overflow"),
            };
        }
        narrow(self.num as i128 * o.num as i128, self.den as i128 * o.den as i128)
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, o: Rational) -> Rational {
        self * o.recip().expect("division by zero")
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational { num: self.num.checked_neg().expect("rational overflow"), den: self.den }
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, o: Rational) {
        *self = *self + o;
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, o: Rational) {
        *self = *self - o;
    }
}

impl MulAssign for Rational {
    fn mul_assign(&mut self, o: Rational) {
        *self = *self * o;
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Always renders as `num/den`, including integers (`3/1`).
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse rational from {0:?}")]
pub struct ParseRationalError(pub String);

impl FromStr for Rational {
    type Err = ParseRationalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| err())?;
                let d: i64 = d.trim().parse().map_err(|_| err())?;
                if d == 0 {
                    return Err(err());
                }
                Ok(Rational::new(n, d))
            }
            None => s.parse::<i64>().map(Rational::from_int).map_err(|_| err()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_normalizes_sign() {
        let r = Rational::new(6, -4);
        assert_eq!(r.numer(), -3);
        assert_eq!(r.denom(), 2);
        assert_eq!(Rational::new(0, -7), Rational::ZERO);
    }

    #[test]
    fn arithmetic() {
        let a = Rational::new(1, 3);
        let b = Rational::new(1, 6);
        assert_eq!(a + b, Rational::new(1, 2));
        assert_eq!(a - b, Rational::new(1, 6));
        assert_eq!(a * b, Rational::new(1, 18));
        assert_eq!(a / b, Rational::from_int(2));
        assert!(b < a);
    }

    #[test]
    fn parse_and_display() {
        let r: Rational = "-3/6".parse().unwrap();
        assert_eq!(r.to_string(), "-1/2");
        assert_eq!("5".parse::<Rational>().unwrap().to_string(), "5/1");
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    #[should_panic(expected = "rational overflow")]
    fn overflow_panics() {
        let big = Rational::from_int(i64::MAX);
        let _ = big * big;
    }
}
