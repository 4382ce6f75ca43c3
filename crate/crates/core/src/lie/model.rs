//! Model-singularity computations: the lifted cyclic action on SL(2,C),
//! its fixed locus, and two polynomial identities behind the conifold and
//! the quaternionic description of the twistor space of H⁴.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{CycloScalar, Rational};
use crate::poly::Poly;

use super::LieError;

/// 2×2 matrix over Q(ζ_{2m}).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloMat2 {
    pub e: [[CycloScalar; 2]; 2],
}

impl CycloMat2 {
    pub fn identity(m: u32) -> Self {
        let (o, z) = (CycloScalar::one(m), CycloScalar::zero(m));
        CycloMat2 { e: [[o.clone(), z.clone()], [z, o]] }
    }

    pub fn diag(a: CycloScalar, b: CycloScalar) -> Self {
        let z = CycloScalar::zero(a.m());
        CycloMat2 { e: [[a, z.clone()], [z, b]] }
    }

    pub fn mul(&self, o: &CycloMat2) -> CycloMat2 {
        let f = |i: usize, j: usize| self.e[i][0].mul(&o.e[0][j]).add(&self.e[i][1].mul(&o.e[1][j]));
        CycloMat2 { e: [[f(0, 0), f(0, 1)], [f(1, 0), f(1, 1)]] }
    }

    pub fn sub(&self, o: &CycloMat2) -> CycloMat2 {
        let f = |i: usize, j: usize| self.e[i][j].sub(&o.e[i][j]);
        CycloMat2 { e: [[f(0, 0), f(0, 1)], [f(1, 0), f(1, 1)]] }
    }

    pub fn det(&self) -> CycloScalar {
        self.e[0][0].mul(&self.e[1][1]).sub(&self.e[0][1].mul(&self.e[1][0]))
    }
}

/// `U = diag(φ, φ⁻¹)` with `φ = e^{iπ/m}`.
pub fn lift_matrix(m: u32) -> CycloMat2 {
    CycloMat2::diag(CycloScalar::zeta_pow(m, 1), CycloScalar::zeta_pow(m, -1))
}

/// Order of `U` in SL(2, Q(ζ_{2m})). Every proper power `U^k` also has
/// `det(U^k − I) ≠ 0`, which is asserted along the way.
pub fn lift_order(m: u32) -> Result<u64, LieError> {
    if m < 2 {
        return Err(LieError::TrivialAction);
    }
    let u = lift_matrix(m);
    let id = CycloMat2::identity(m);
    let mut acc = u.clone();
    for k in 1..=(4 * m as u64) {
        if acc == id {
            return Ok(k);
        }
        assert!(!acc.sub(&id).det().is_zero(), "U^{k} has a fixed vector");
        acc = acc.mul(&u);
    }
    unreachable!("U is a root of unity of order dividing 2m")
}

/// Fixed locus of `A ↦ U⁻¹AU` on SL(2,C) and the action normal to it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedLocus {
    pub m: u32,
    /// Entries forced to vanish on the fixed set.
    pub vanishing: Vec<String>,
    /// Entries left free.
    pub free: Vec<String>,
    /// Remaining equation from `det = 1`.
    pub relation: String,
    /// Normal weights as exponents of `ζ_{2m}`, for the `y` and `z` directions.
    pub weight_exponents: (i64, i64),
    pub weights: (CycloScalar, CycloScalar),
    /// Order of the cyclic group generated by the normal action.
    pub weight_order: u64,
    /// The normal action has determinant 1 and is a power of `U²`.
    pub generated_by_u_squared: bool,
}

/// Solve `(x, φ⁻²y, φ²z, w) = (x, y, z, w)` entrywise over Q(ζ_{2m}).
pub fn model_fixed_locus(m: u32) -> Result<FixedLocus, LieError> {
    if m < 2 {
        return Err(LieError::TrivialAction);
    }
    let names = ["x", "y", "z", "w"];
    let exps = [0i64, -2, 2, 0];
    let mut vanishing = Vec::new();
    let mut free = Vec::new();
    for (name, &k) in names.iter().zip(&exps) {
        // (ζ^k − 1)·entry = 0
        let c = CycloScalar::zeta_pow(m, k).sub(&CycloScalar::one(m));
        if c.is_zero() {
            free.push(name.to_string());
        } else {
            vanishing.push(name.to_string());
        }
    }
    let relation = if vanishing == ["y", "z"] { "x*w = 1".to_string() } else { format!("x*w - y*z = 1 with {} free", free.join(",")) };
    let wy = CycloScalar::zeta_pow(m, exps[1]);
    let wz = CycloScalar::zeta_pow(m, exps[2]);
    let normal = CycloMat2::diag(wy.clone(), wz.clone());
    let order = match wy.power_order(u64::MAX) {
        crate::arith::PowerOrder::Finite(k) => k,
        crate::arith::PowerOrder::NotRootOfUnity => unreachable!("ζ power"),
    };
    let u2 = lift_matrix(m).mul(&lift_matrix(m));
    let mut generated = false;
    let mut acc = CycloMat2::identity(m);
    for _ in 0..2 * m {
        acc = acc.mul(&u2);
        generated |= acc == normal;
    }
    let generated = generated && normal.det().is_one();
    Ok(FixedLocus {
        m,
        vanishing,
        free,
        relation,
        weight_exponents: (exps[1].rem_euclid(2 * m as i64), exps[2].rem_euclid(2 * m as i64)),
        weights: (wy, wz),
        weight_order: order,
        generated_by_u_squared: generated,
    })
}

/// Quaternion `a + bi + cj + dk` over Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Quaternion(pub [Rational; 4]);

impl Quaternion {
    /// `z₁ + j z₂` for complex numbers given as (re, im) pairs.
    pub fn from_complex_pair(z1: (Rational, Rational), z2: (Rational, Rational)) -> Self {
        // j(c + di) = cj + d·ji = cj − dk
        Quaternion([z1.0, z1.1, z2.0, -z2.1])
    }

    pub fn conj(&self) -> Self {
        let [a, b, c, d] = self.0;
        Quaternion([a, -b, -c, -d])
    }

    pub fn mul(&self, o: &Quaternion) -> Quaternion {
        let [a1, b1, c1, d1] = self.0;
        let [a2, b2, c2, d2] = o.0;
        Quaternion([
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ])
    }

    /// `|q|²`, read off the real part of `q q̄`.
    pub fn norm(&self) -> Rational {
        let p = self.mul(&self.conj());
        debug_assert!(p.0[1..].iter().all(Rational::is_zero));
        p.0[0]
    }
}

/// `h(w) = |w₁|² + |w₂|² − |w₃|² − |w₄|²` for `w` in (Q(i))⁴.
pub fn hermitian_form(w: &[(Rational, Rational); 4]) -> Rational {
    let n = |z: (Rational, Rational)| z.0 * z.0 + z.1 * z.1;
    n(w[0]) + n(w[1]) - n(w[2]) - n(w[3])
}

/// `|p₁|² − |p₂|²` for `(p₁, p₂) = (w₁ + jw₂, w₃ + jw₄)`.
pub fn quaternionic_form(w: &[(Rational, Rational); 4]) -> Rational {
    Quaternion::from_complex_pair(w[0], w[1]).norm() - Quaternion::from_complex_pair(w[2], w[3]).norm()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleCheck {
    pub samples: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SampleCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}


pub fn quaternion_hermitian_check(samples: usize, seed: u64) -> SampleCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    let mut first = None;
    for _ in 0..samples {
        // one denominator per sample keeps the i64 rationals small
        let den = rng.gen_range(1..=997);
        let mut q = || Rational::new(rng.gen_range(-10_000..=10_000), den);
        let w: [(Rational, Rational); 4] = std::array::from_fn(|_| (q(), q()));
        if hermitian_form(&w) != quaternionic_form(&w) {
            failures += 1;
            first.get_or_insert_with(|| format!("{w:?}"));
        }
    }
    SampleCheck { samples, failures, first_failure: first }
}

/// Random points `(λ₁, λ₂, s, t)` pushed through both small resolutions:
/// each image lies on `xw = yz` and on its own ruling.
pub fn conifold_sample_check(samples: usize, seed: u64) -> SampleCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    let mut failures = 0;
    let mut first = None;
    for _ in 0..samples {
        let [l1, l2, s, t]: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-10_000..=10_000));
        let (a, b, c, d) = (l1 * s, l1 * t, l2 * s, l2 * t);
        // first resolution: (x, y, z, w) = (a, b, c, d); second swaps y and z
        let ok = [(a, b, c, d), (a, c, b, d)].iter().enumerate().all(|(i, &(x, y, z, w))| {
            let on_quadric = x * w - y * z == 0;
            let ruled = if i == 0 { x * t == y * s && z * t == w * s } else { x * t == z * s && y * t == w * s };
            on_quadric && ruled
        });
        if !ok {
            failures += 1;
            first.get_or_insert_with(|| format!("λ = ({l1}, {l2}), [s:t] = [{s}:{t}]"));
        }
    }
    SampleCheck { samples, failures, first_failure: first }
}

/// Polynomial verification of the two small resolutions of the conifold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConifoldCheck {
    /// `xw − yz` after substituting each identification, in `λ₁, λ₂, s, t`.
    pub quadric: [String; 2],
    /// Each identification satisfies its own ruling and not the other one.
    pub rulings_distinct: bool,
    /// `xw − yz` at a non-proportional pair.
    pub witness_value: i64,
}

impl ConifoldCheck {
    pub fn passed(&self) -> bool {
        self.quadric.iter().all(|q| q == "0") && self.rulings_distinct && self.witness_value != 0
    }
}

pub fn conifold_incidence_check() -> ConifoldCheck {
    // variables λ₁, λ₂, s, t
    let v = |i| Poly::var(4, i);
    let (l1, l2, s, t) = (v(0), v(1), v(2), v(3));
    let (a, b, c, d) = (&l1 * &s, &l1 * &t, &l2 * &s, &l2 * &t);
    let quadric = |x: &Poly, y: &Poly, z: &Poly, w: &Poly| x * w - y * z;
    // [x:y] = [s:t] = [z:w] and [x:z] = [s:t] = [y:w]
    let ruling1 = |x: &Poly, y: &Poly, z: &Poly, w: &Poly| (x * &t - y * &s).is_zero() && (z * &t - w * &s).is_zero();
    let ruling2 = |x: &Poly, y: &Poly, z: &Poly, w: &Poly| (x * &t - z * &s).is_zero() && (y * &t - w * &s).is_zero();
    let first = [&a, &b, &c, &d];
    let second = [&a, &c, &b, &d];
    let q1 = quadric(first[0], first[1], first[2], first[3]);
    let q2 = quadric(second[0], second[1], second[2], second[3]);
    let distinct = ruling1(first[0], first[1], first[2], first[3])
        && !ruling2(first[0], first[1], first[2], first[3])
        && ruling2(second[0], second[1], second[2], second[3])
        && !ruling1(second[0], second[1], second[2], second[3]);
    // (a, b) = (1, 0) and (c, d) = (0, 1) are not proportional
    let q = quadric(&v(0), &v(1), &v(2), &v(3));
    let witness = q.eval(&[1, 0, 0, 1]);
    let names = ["l1", "l2", "s", "t"];
    ConifoldCheck { quadric: [q1.display_with(&names), q2.display_with(&names)], rulings_distinct: distinct, witness_value: witness }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lift_orders() {
        for m in [2, 3, 4, 5, 8] {
            assert_eq!(lift_order(m).unwrap(), 2 * m as u64);
        }
        assert_eq!(lift_order(1), Err(LieError::TrivialAction));
    }

    #[test]
    fn fixed_locus() {
        let f = model_fixed_locus(2).unwrap();
        assert_eq!(f.vanishing, vec!["y", "z"]);
        assert_eq!(f.relation, "x*w = 1");
        assert_eq!(f.weights.0, CycloScalar::from_rational(2, -Rational::ONE));
        assert_eq!(f.weights.1, CycloScalar::from_rational(2, -Rational::ONE));
        assert!(f.generated_by_u_squared);
        let f5 = model_fixed_locus(5).unwrap();
        assert_eq!(f5.weight_order, 5);
        assert_eq!(f5.weight_exponents, (8, 2));
        assert_eq!(model_fixed_locus(3).unwrap().weight_order, 3);
    }

    #[test]
    fn quaternion_identity() {
        let one = Rational::ONE;
        let z = Rational::ZERO;
        let e = |k: usize| std::array::from_fn(|i| if i == k { (one, z) } else { (z, z) });
        assert_eq!(hermitian_form(&e(0)), one);
        assert_eq!(quaternionic_form(&e(0)), one);
        assert_eq!(quaternionic_form(&e(2)), -one);
        assert!(quaternion_hermitian_check(200, 7).passed());
    }

    #[test]
    fn conifold() {
        let c = conifold_incidence_check();
        assert!(c.passed(), "{c:?}");
    }
}
