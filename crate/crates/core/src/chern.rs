//! Formal Chern classes by the splitting principle.
//!
//! A bundle expression is expanded into Chern roots, linear forms in the
//! degree-2 generators of a cohomology ring and in formal roots of named
//! bundles. Classes are integer polynomials in those variables.

use std::fmt;

use serde::Serialize;

use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChernError {
    #[error("exterior square of a rank-0 bundle")]
    EmptyExteriorPower,
    #[error("unknown generator or bundle {0:?}")]
    Unknown(String),
    #[error("degree {degree} does not match the pairing dimension {dim}")]
    DegreeMismatch { degree: u32, dim: u32 },
    #[error("class of degree {0} is not expressible through c1 of named bundles")]
    NotSymmetric(usize),
    #[error("line bundle degree vector has length {got}, expected {expected}")]
    DegreeVector { got: usize, expected: usize },
}

/// Expression tree of complex vector bundles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BundleExpr {
    /// Named bundle of the given rank with formal Chern roots.
    Named { name: String, rank: usize },
    /// Line bundle with first Chern class `Σ dᵢ gᵢ`.
    Line(Vec<i64>),
    Trivial(usize),
    Sum(Box<BundleExpr>, Box<BundleExpr>),
    Dual(Box<BundleExpr>),
    Lambda2(Box<BundleExpr>),
}

impl BundleExpr {
    pub fn named(name: &str, rank: usize) -> Self {
        BundleExpr::Named { name: name.into(), rank }
    }

    pub fn line(degrees: &[i64]) -> Self {
        BundleExpr::Line(degrees.to_vec())
    }

    pub fn sum(a: BundleExpr, b: BundleExpr) -> Self {
        BundleExpr::Sum(Box::new(a), Box::new(b))
    }

    /// Direct sum of a nonempty list.
    pub fn sum_all(parts: impl IntoIterator<Item = BundleExpr>) -> Self {
        parts.into_iter().reduce(BundleExpr::sum).expect("nonempty direct sum")
    }

    pub fn dual(self) -> Self {
        BundleExpr::Dual(Box::new(self))
    }

    pub fn lambda2(self) -> Self {
        BundleExpr::Lambda2(Box::new(self))
    }

    pub fn rank(&self) -> usize {
        match self {
            BundleExpr::Named { rank, .. } => *rank,
            BundleExpr::Line(_) => 1,
            BundleExpr::Trivial(r) => *r,
            BundleExpr::Sum(a, b) => a.rank() + b.rank(),
            BundleExpr::Dual(a) => a.rank(),
            BundleExpr::Lambda2(a) => {
                let r = a.rank();
                r * r.saturating_sub(1) / 2
            }
        }
    }

    fn named_leaves(&self, out: &mut Vec<(String, usize)>) {
        match self {
            BundleExpr::Named { name, rank } => {
                if !out.iter().any(|(n, _)| n == name) {
                    out.push((name.clone(), *rank));
                }
            }
            BundleExpr::Line(_) | BundleExpr::Trivial(_) => {}
            BundleExpr::Sum(a, b) => {
                a.named_leaves(out);
                b.named_leaves(out);
            }
            BundleExpr::Dual(a) | BundleExpr::Lambda2(a) => a.named_leaves(out),
        }
    }
}

impl fmt::Display for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BundleExpr::Named { name, .. } => write!(f, "{name}"),
            BundleExpr::Line(d) => write!(f, "O({})", d.iter().map(i64::to_string).collect::<Vec<_>>().join(",")),
            BundleExpr::Trivial(r) => write!(f, "C^{r}"),
            BundleExpr::Sum(a, b) => write!(f, "({a} + {b})"),
            BundleExpr::Dual(a) => write!(f, "{a}*"),
            BundleExpr::Lambda2(a) => write!(f, "L2({a})"),
        }
    }
}

/// Polynomial in named degree-2 generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedClass {
    pub names: Vec<String>,
    pub poly: Poly,
}

impl GradedClass {
    pub fn zero(names: &[String]) -> Self {
        GradedClass { names: names.to_vec(), poly: Poly::zero(names.len()) }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Coefficient of a single generator in the degree-2 part.
    pub fn coefficient(&self, name: &str) -> Option<i64> {
        let i = self.names.iter().position(|n| n == name)?;
        let mut e = vec![0; self.names.len()];
        e[i] = 1;
        Some(self.poly.coeff(&e))
    }

    pub fn mul(&self, o: &GradedClass) -> GradedClass {
        assert_eq!(self.names, o.names, "classes over different generators");
        GradedClass { names: self.names.clone(), poly: &self.poly * &o.poly }
    }

    pub fn add(&self, o: &GradedClass) -> GradedClass {
        assert_eq!(self.names, o.names, "classes over different generators");
        GradedClass { names: self.names.clone(), poly: &self.poly + &o.poly }
    }

    pub fn scale(&self, s: i64) -> GradedClass {
        GradedClass { names: self.names.clone(), poly: self.poly.scale(s) }
    }

    /// Substitute a linear relation `name = Σ cᵢ·other_i` and drop `name`.
    pub fn substitute(&self, name: &str, value: &[(&str, i64)]) -> Result<GradedClass, ChernError> {
        let i = self.names.iter().position(|n| n == name).ok_or_else(|| ChernError::Unknown(name.into()))?;
        let mut names: Vec<String> = self.names.clone();
        names.remove(i);
        for (other, _) in value {
            if !names.iter().any(|n| n == other) {
                names.push(other.to_string());
            }
        }
        let k = names.len();
        let subs: Vec<Poly> = self
            .names
            .iter()
            .map(|n| {
                if n == name {
                    value.iter().fold(Poly::zero(k), |acc, (o, c)| &acc + &Poly::var(k, names.iter().position(|x| x == o).unwrap()).scale(*c))
                } else {
                    Poly::var(k, names.iter().position(|x| x == n).unwrap())
                }
            })
            .collect();
        Ok(GradedClass { poly: self.poly.compose(&subs), names })
    }
}

impl fmt::Display for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.names.iter().map(String::as_str).collect();
        write!(f, "{}", self.poly.display_with(&names))
    }
}

impl Serialize for GradedClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Cohomology ring generated in degree 2 with truncation relations and a
/// fundamental class pairing top-degree monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyRing {
    pub names: Vec<String>,
    /// `gᵢ^{nilpotency[i]} = 0`.
    pub nilpotency: Vec<u32>,
    /// Complex dimension of the fundamental class.
    pub dim: u32,
    pub fundamental: String,
    /// Values of top-degree monomials on the fundamental class.
    pub pairing: Vec<(Vec<u32>, i64)>,
}

impl CohomologyRing {
    /// `S² × T²` with `g₁` from the sphere, `g₂` from the elliptic curve:
    /// `g₁² = g₂² = 0` and `⟨g₁g₂, E⟩ = 1`.
    pub fn sphere_times_elliptic() -> Self {
        CohomologyRing {
            names: vec!["g1".into(), "g2".into()],
            nilpotency: vec![2, 2],
            dim: 2,
            fundamental: "E".into(),
            pairing: vec![(vec![1, 1], 1)],
        }
    }

    /// Reduce by the nilpotency relations and the dimension bound.
    pub fn reduce(&self, c: &GradedClass) -> GradedClass {
        let mut p = Poly::zero(self.names.len());
        for (e, coef) in c.poly.terms() {
            if e.iter().zip(&self.nilpotency).all(|(k, n)| k < n) && e.iter().sum::<u32>() <= self.dim {
                let mut t = Poly::constant(self.names.len(), coef);
                for (i, &k) in e.iter().enumerate() {
                    t = &t * &Poly::monomial(self.names.len(), i, k);
                }
                p = &p + &t;
            }
        }
        GradedClass { names: self.names.clone(), poly: p }
    }

    /// `⟨c, [fundamental]⟩` for a class of top degree.
    pub fn pair(&self, c: &GradedClass) -> Result<i64, ChernError> {
        let c = self.reduce(c);
        let mut total = 0;
        for (e, coef) in c.poly.terms() {
            let degree: u32 = e.iter().sum();
            if degree != self.dim {
                return Err(ChernError::DegreeMismatch { degree, dim: self.dim });
            }
            let v = self.pairing.iter().find(|(m, _)| m.as_slice() == e).map_or(0, |(_, v)| *v);
            total += coef * v;
        }
        Ok(total)
    }

    pub fn class(&self, degrees: &[i64]) -> Result<GradedClass, ChernError> {
        if degrees.len() != self.names.len() {
            return Err(ChernError::DegreeVector { got: degrees.len(), expected: self.names.len() });
        }
        let k = self.names.len();
        let p = degrees.iter().enumerate().fold(Poly::zero(k), |acc, (i, &d)| &acc + &Poly::var(k, i).scale(d));
        Ok(GradedClass { names: self.names.clone(), poly: p })
    }
}

/// Variables: the ring generators, then the roots of every named bundle.
struct RootContext {
    generators: Vec<String>,
    leaves: Vec<(String, usize, usize)>,
    nvars: usize,
}

impl RootContext {
    fn new(generators: &[String], e: &BundleExpr) -> Self {
        let mut named = Vec::new();
        e.named_leaves(&mut named);
        let mut next = generators.len();
        let leaves = named
            .into_iter()
            .map(|(n, r)| {
                let start = next;
                next += r;
                (n, r, start)
            })
            .collect();
        RootContext { generators: generators.to_vec(), leaves, nvars: next }
    }

    fn roots(&self, e: &BundleExpr) -> Result<Vec<Poly>, ChernError> {
        let n = self.nvars;
        Ok(match e {
            BundleExpr::Named { name, .. } => {
                let (_, r, start) = self.leaves.iter().find(|(x, _, _)| x == name).ok_or_else(|| ChernError::Unknown(name.clone()))?;
                (0..*r).map(|i| Poly::var(n, start + i)).collect()
            }
            BundleExpr::Line(d) => {
                if d.len() != self.generators.len() {
                    return Err(ChernError::DegreeVector { got: d.len(), expected: self.generators.len() });
                }
                vec![d.iter().enumerate().fold(Poly::zero(n), |acc, (i, &k)| &acc + &Poly::var(n, i).scale(k))]
            }
            BundleExpr::Trivial(r) => vec![Poly::zero(n); *r],
            BundleExpr::Sum(a, b) => {
                let mut v = self.roots(a)?;
                v.extend(self.roots(b)?);
                v
            }
            BundleExpr::Dual(a) => self.roots(a)?.iter().map(|x| -x).collect(),
            BundleExpr::Lambda2(a) => {
                let v = self.roots(a)?;
                if v.is_empty() {
                    return Err(ChernError::EmptyExteriorPower);
                }
                let mut out = Vec::new();
                for i in 0..v.len() {
                    for j in i + 1..v.len() {
                        out.push(&v[i] + &v[j]);
                    }
                }
                out
            }
        })
    }
}

/// Elementary symmetric polynomials `e_0..=e_k` of the roots.
fn elementary(roots: &[Poly], k: usize, nvars: usize) -> Vec<Poly> {
    let mut e = vec![Poly::zero(nvars); k + 1];
    e[0] = Poly::constant(nvars, 1);
    for r in roots {
        for j in (1..=k).rev() {
            e[j] = &e[j] + &(&e[j - 1] * r);
        }
    }
    e
}

/// `c₁(e)` over the ring generators and the symbols `c1(name)` of named
/// bundles.
///
/// ```
/// use hypercheck::chern::{c1, BundleExpr};
/// let h = BundleExpr::named("H", 3);
/// let tz = BundleExpr::sum(h.clone().dual().lambda2(), h);
/// assert_eq!(c1(&tz, &[]).unwrap().coefficient("c1(H)"), Some(-1));
/// ```
pub fn c1(e: &BundleExpr, generators: &[String]) -> Result<GradedClass, ChernError> {
    let ctx = RootContext::new(generators, e);
    let total = ctx.roots(e)?.iter().fold(Poly::zero(ctx.nvars), |acc, r| &acc + r);
    let mut names = generators.to_vec();
    let mut coeffs: Vec<i64> = (0..generators.len())
        .map(|i| {
            let mut x = vec![0; ctx.nvars];
            x[i] = 1;
            total.coeff(&x)
        })
        .collect();
    for (name, r, start) in &ctx.leaves {
        let at = |i: usize| {
            let mut x = vec![0; ctx.nvars];
            x[start + i] = 1;
            total.coeff(&x)
        };
        let k = at(0);
        if (1..*r).any(|i| at(i) != k) {
            return Err(ChernError::NotSymmetric(1));
        }
        names.push(format!("c1({name})"));
        coeffs.push(k);
    }
    let n = names.len();
    let poly = coeffs.iter().enumerate().fold(Poly::zero(n), |acc, (i, &c)| &acc + &Poly::var(n, i).scale(c));
    Ok(GradedClass { names, poly })
}

/// Total Chern class of an expression without named bundles, through
/// degree `k`: `c_0, …, c_k` as classes in the ring.
pub fn chern_classes(e: &BundleExpr, ring: &CohomologyRing, k: usize) -> Result<Vec<GradedClass>, ChernError> {
    let ctx = RootContext::new(&ring.names, e);
    if let Some((name, _, _)) = ctx.leaves.first() {
        return Err(ChernError::Unknown(format!("named bundle {name} in a ring computation")));
    }
    let roots = ctx.roots(e)?;
    Ok(elementary(&roots, k, ctx.nvars).into_iter().map(|p| ring.reduce(&GradedClass { names: ring.names.clone(), poly: p })).collect())
}

/// `⟨c_k(e), [fundamental]⟩`.
pub fn chern_pairing(e: &BundleExpr, ring: &CohomologyRing, k: usize) -> Result<i64, ChernError> {
    if k as u32 != ring.dim {
        return Err(ChernError::DegreeMismatch { degree: k as u32, dim: ring.dim });
    }
    let c = chern_classes(e, ring, k)?;
    ring.pair(&c[k])
}

/// `p₁ = c₁² − 2c₂`.
pub fn p1(e: &BundleExpr, ring: &CohomologyRing) -> Result<GradedClass, ChernError> {
    let c = chern_classes(e, ring, 2)?;
    Ok(ring.reduce(&c[1].mul(&c[1]).add(&c[2].scale(-2))))
}

/// Tangent bundle of the twistor space of H^{2n}: `V ⊕ H` with `V = Λ²H*`
/// and `H` of rank `n`.
pub fn twistor_tangent(n: usize) -> BundleExpr {
    let h = BundleExpr::named("H", n);
    BundleExpr::sum(h.clone().dual().lambda2(), h)
}

/// `c₁(Z_{2n})` in terms of `[ω]`, using the relation `[ω] = −c₁(H)`.
pub fn twistor_c1(n: usize) -> Result<GradedClass, ChernError> {
    c1(&twistor_tangent(n), &[])?.substitute("c1(H)", &[("omega", -1)])
}

/// Coefficient of `[ω]` in `c₁(Z_{2n})`.
pub fn twistor_c1_coefficient(n: usize) -> Result<i64, ChernError> {
    Ok(twistor_c1(n)?.coefficient("omega").unwrap_or(0))
}

/// `TX|_E ≅ O(−2) ⊕ O(2) ⊕ O` over `E = S² × T²`.
pub fn resolution_tangent() -> BundleExpr {
    BundleExpr::sum_all([BundleExpr::line(&[-2, 0]), BundleExpr::line(&[2, 0]), BundleExpr::Trivial(1)])
}

/// Characteristic numbers of the resolution model, for reporting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionChern {
    pub c1: GradedClass,
    pub c2_on_e: i64,
    pub c1_squared_on_e: i64,
    pub p1: GradedClass,
    pub exceptional_squared_on_e: i64,
}

pub fn resolution_check() -> Result<ResolutionChern, ChernError> {
    let ring = CohomologyRing::sphere_times_elliptic();
    let t = resolution_tangent();
    let c = chern_classes(&t, &ring, 2)?;
    let e = ring.class(&[-2, 0])?;
    Ok(ResolutionChern {
        c1: c[1].clone(),
        c2_on_e: chern_pairing(&t, &ring, 2)?,
        c1_squared_on_e: ring.pair(&c[1].mul(&c[1]))?,
        p1: p1(&t, &ring)?,
        exceptional_squared_on_e: ring.pair(&e.mul(&e))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twistor_coefficients() {
        for n in 1..=6 {
            assert_eq!(twistor_c1_coefficient(n).unwrap(), n as i64 - 2);
        }
        let h = c1(&twistor_tangent(4), &[]).unwrap();
        assert_eq!(h.coefficient("c1(H)"), Some(-2));
        assert_eq!(twistor_tangent(4).rank(), 10);
    }

    #[test]
    fn dual_cancels() {
        let a = BundleExpr::named("A", 3);
        assert!(c1(&BundleExpr::sum(a.clone(), a.dual()), &[]).unwrap().is_zero());
    }

    #[test]
    fn resolution_model_vanishes() {
        let r = resolution_check().unwrap();
        assert!(r.c1.is_zero());
        assert_eq!(r.c2_on_e, 0);
        assert_eq!(r.c1_squared_on_e, 0);
        assert!(r.p1.is_zero());
        assert_eq!(r.exceptional_squared_on_e, 0);
    }

    #[test]
    fn sphere_lines_have_zero_p1() {
        let ring = CohomologyRing::sphere_times_elliptic();
        let e = BundleExpr::sum(BundleExpr::line(&[1, 0]), BundleExpr::line(&[-1, 0]));
        assert!(p1(&e, &ring).unwrap().is_zero());
        assert!(p1(&BundleExpr::Trivial(3), &ring).unwrap().is_zero());
        // a class pairing nontrivially
        let f = BundleExpr::sum(BundleExpr::line(&[1, 0]), BundleExpr::line(&[0, 1]));
        assert_eq!(chern_pairing(&f, &ring, 2).unwrap(), 1);
    }

    #[test]
    fn errors() {
        let ring = CohomologyRing::sphere_times_elliptic();
        assert_eq!(chern_pairing(&resolution_tangent(), &ring, 1), Err(ChernError::DegreeMismatch { degree: 1, dim: 2 }));
        assert_eq!(c1(&BundleExpr::Trivial(0).lambda2(), &[]), Err(ChernError::EmptyExteriorPower));
        assert!(matches!(chern_classes(&BundleExpr::line(&[1]), &ring, 1), Err(ChernError::DegreeVector { .. })));
    }
}
