//! Sparse multivariate polynomials with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

/// Polynomial in `nvars` commuting variables. Monomials are exponent
/// vectors; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, i64>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, i, 1)
    }

    /// `x_i^e`.
    pub fn monomial(nvars: usize, i: usize, e: u32) -> Self {
        assert!(i < nvars, "variable {i} out of range");
        let mut exps = vec![0; nvars];
        exps[i] = e;
        let mut p = Poly::zero(nvars);
        p.add_term(exps, 1);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], i64)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> i64 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: i64) {
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().checked_add(c).expect("polynomial coefficient overflow");
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, s: i64) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, &c) in &self.terms {
            out.add_term(e.clone(), c.checked_mul(s).expect("polynomial coefficient overflow"));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::constant(self.nvars, 1), |acc, _| &acc * self)
    }

    /// Total degree of the highest-degree term, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Keep only terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() == d).map(|(e, &c)| (e.clone(), c)).collect() }
    }

    /// Drop terms of total degree above `d`.
    pub fn truncate(&self, d: u32) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() <= d).map(|(e, &c)| (e.clone(), c)).collect() }
    }

    /// Substitute polynomials for every variable.
    pub fn compose(&self, subs: &[Poly]) -> Poly {
        assert_eq!(subs.len(), self.nvars, "one substitution per variable");
        let n = subs.first().map_or(0, Poly::nvars);
        let mut out = Poly::zero(n);
        for (e, &c) in &self.terms {
            let mut t = Poly::constant(n, c);
            for (s, &k) in subs.iter().zip(e) {
                t = &t * &s.pow(k);
            }
            out = &out + &t;
        }
        out
    }

    /// Value at an integer point.
    pub fn eval(&self, point: &[i64]) -> i64 {
        self.terms.iter().map(|(e, &c)| e.iter().zip(point).fold(c, |acc, (&k, &x)| acc * x.pow(k))).sum()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        for (e, &c) in &o.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars);
        let mut out = Poly::zero(self.nvars);
        for (a, &x) in &self.terms {
            for (b, &y) in &o.terms {
                let e = a.iter().zip(b).map(|(i, j)| i + j).collect();
                out.add_term(e, x.checked_mul(y).expect("polynomial coefficient overflow"));
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, o: Poly) -> Poly {
                (&self).$f(&o)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, o: &Poly) -> Poly {
                (&self).$f(o)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);

impl Poly {
    /// Render with the given variable names, highest degree first.
    pub fn display_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<(&Vec<u32>, &i64)> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.iter().sum::<u32>().cmp(&a.0.iter().sum::<u32>()).then(b.0.cmp(a.0)));
        let mut s = String::new();
        for (i, (e, &c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    let name = names.get(v).map_or_else(|| format!("x{v}"), |n| n.to_string());
                    if k == 1 { name } else { format!("{name}^{k}") }
                })
                .collect();
            let mag = c.unsigned_abs();
            let body = match (mono.is_empty(), mag) {
                (true, _) => mag.to_string(),
                (false, 1) => mono.join("*"),
                (false, _) => format!("{mag}*{}", mono.join("*")),
            };
            if i == 0 {
                s.push_str(&if c < 0 { format!("-{body}") } else { body });
            } else {
                s.push_str(if c < 0 { " - " } else { " + " });
                s.push_str(&body);
            }
        }
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let s = &x + &y;
        let d = &x - &y;
        assert_eq!(&s * &d, &x.pow(2) - &y.pow(2));
        assert!((&s - &s).is_zero());
        assert_eq!(s.pow(2).coeff(&[1, 1]), 2);
        assert_eq!(s.pow(3).eval(&[2, -1]), 1);
        assert_eq!(s.pow(2).display_with(&["x", "y"]), "x^2 + 2*x*y + y^2");
        assert_eq!(d.scale(-3).to_string(), "-3*x0 + 3*x1");
    }

    #[test]
    fn truncation_and_substitution() {
        let x = Poly::var(1, 0);
        let p = (&Poly::constant(1, 1) + &x).pow(4);
        assert_eq!(p.truncate(2), (&(&Poly::constant(1, 1) + &x.scale(4)) + &x.pow(2).scale(6)));
        assert_eq!(p.homogeneous_part(3), x.pow(3).scale(4));
        let q = x.compose(&[&Poly::var(2, 0) * &Poly::var(2, 1)]);
        assert_eq!(q.degree(), Some(2));
    }
}
