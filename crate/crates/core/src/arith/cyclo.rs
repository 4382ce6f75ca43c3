use std::fmt;

use super::interval::{cos_pi_fraction, magnitude_bits, IntervalValue};
use super::Rational;

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut x = n;
    let mut p = 2;
    while p * p <= x {
        if x.is_multiple_of(p) {
            while x.is_multiple_of(p) {
                x /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if x > 1 {
        result -= result / x;
    }
    result
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    assert_eq!(den[dd], 1, "divisor must be monic");
    let mut q = vec![0i64; rem.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd];
        q[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    q
}

/// Element of Q(ζ_{2m}) = Q[x]/Φ_{2m}(x), with `x ↦ e^{iπ/m}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloScalar {
    m: u32,
    coeffs: Vec<Rational>,
}

impl CycloScalar {
    pub fn modulus(m: u32) -> Vec<i64> {
        cyclotomic_polynomial(2 * m)
    }

    pub fn degree(m: u32) -> usize {
        euler_phi(2 * m) as usize
    }

    pub fn from_rational(m: u32, r: Rational) -> Self {
        let mut coeffs = vec![Rational::ZERO; Self::degree(m)];
        coeffs[0] = r;
        CycloScalar { m, coeffs }
    }

    pub fn zero(m: u32) -> Self {
        Self::from_rational(m, Rational::ZERO)
    }

    pub fn one(m: u32) -> Self {
        Self::from_rational(m, Rational::ONE)
    }

    /// `ζ_{2m}^k` for any integer `k`.
    pub fn zeta_pow(m: u32, k: i64) -> Self {
        let e = k.rem_euclid(2 * m as i64) as usize;
        let mut poly = vec![Rational::ZERO; e + 1];
        poly[e] = Rational::ONE;
        Self::from_poly(m, poly)
    }

    pub fn zeta(m: u32) -> Self {
        Self::zeta_pow(m, 1)
    }

    /// Reduce an arbitrary polynomial modulo Φ_{2m}.
    pub fn from_poly(m: u32, mut poly: Vec<Rational>) -> Self {
        assert!(m >= 1);
        let phi = Self::modulus(m);
        let d = phi.len() - 1;
        for i in (d..poly.len()).rev() {
            let c = poly[i];
            if c.is_zero() {
                continue;
            }
            for (j, &pj) in phi.iter().enumerate() {
                poly[i - d + j] -= c * Rational::from_int(pj);
            }
        }
        poly.resize(d, Rational::ZERO);
        CycloScalar { m, coeffs: poly }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == Rational::ONE && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.m, o.m, "mixed cyclotomic fields");
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| *a + *b).collect();
        CycloScalar { m: self.m, coeffs }
    }

    pub fn neg(&self) -> Self {
        CycloScalar { m: self.m, coeffs: self.coeffs.iter().map(|c| -*c).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.m, o.m, "mixed cyclotomic fields");
        let mut prod = vec![Rational::ZERO; self.coeffs.len() + o.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                prod[i + j] += *a * *b;
            }
        }
        Self::from_poly(self.m, prod)
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.m);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Smallest `k` in `1..=bound` with `self^k = 1`.
    ///
    /// Every root of unity in Q(ζ_{2m}) is a `2m`-th root of unity, so the
    /// search never goes past `2m` whatever the bound.
    pub fn power_order(&self, bound: u64) -> PowerOrder {
        let mut acc = self.clone();
        for k in 1..=bound.min(2 * self.m as u64) {
            if acc.is_one() {
                return PowerOrder::Finite(k);
            }
            acc = acc.mul(self);
        }
        PowerOrder::NotRootOfUnity
    }

    /// Certified enclosures of the real and imaginary parts.
    pub fn to_interval(&self, precision_bits: u32) -> (IntervalValue, IntervalValue) {
        assert!(precision_bits >= 8, "precision must be at least 8 bits");
        let total: Rational = self.coeffs.iter().fold(Rational::ZERO, |acc, c| acc + c.abs());
        let guard = magnitude_bits(total) + self.coeffs.len().max(2).ilog2() + 4;
        let inner = precision_bits + guard;
        let mm = 2 * self.m;
        let mut re = IntervalValue::point(Rational::ZERO, inner);
        let mut im = IntervalValue::point(Rational::ZERO, inner);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = k as i64;
            // ζ^k = cos(2kπ/2m) + i·cos((m - 2k)π/2m)
            re = re.add(&cos_pi_fraction(2 * k, mm, inner).scale(*c));
            im = im.add(&cos_pi_fraction(self.m as i64 - 2 * k, mm, inner).scale(*c));
        }
        (re.at_precision(precision_bits), im.at_precision(precision_bits))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerOrder {
    Finite(u64),
    NotRootOfUnity,
}

/// Order of a cyclotomic unit, searched up to `bound`.
pub fn cyclo_power_order(u: &CycloScalar, bound: u64) -> PowerOrder {
    u.power_order(bound)
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical rendering `poly(c0,c1,...)@zeta{2m}`.
impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "poly({})@zeta{}", parts.join(","), 2 * self.m)
    }
}

impl serde::Serialize for CycloScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(10), vec![1, -1, 1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        for n in 1..40 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, euler_phi(n) as usize);
        }
    }

    #[test]
    fn power_orders() {
        assert_eq!(CycloScalar::zeta(3).power_order(100), PowerOrder::Finite(6));
        assert_eq!(CycloScalar::zeta(2).pow(2).power_order(100), PowerOrder::Finite(2));
        let two = CycloScalar::from_rational(3, Rational::from_int(2));
        assert_eq!(two.power_order(100), PowerOrder::NotRootOfUnity);
    }

    #[test]
    fn zeta_half_turn_is_minus_one() {
        for m in 1..=12 {
            let z = CycloScalar::zeta(m);
            assert!(z.pow(2 * m as u64).is_one());
            assert_eq!(z.pow(m as u64), CycloScalar::from_rational(m, -Rational::ONE));
        }
    }

    #[test]
    fn zeta_interval() {
        let (re, im) = CycloScalar::zeta(3).to_interval(60);
        assert!(re.contains_rational(Rational::new(1, 2)));
        assert!((im.lo_f64() - 3f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn rendering() {
        assert_eq!(CycloScalar::zeta(3).to_string(), "poly(0/1,1/1)@zeta6");
    }
}
