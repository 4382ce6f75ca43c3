//! Seeded randomized invariant checks, shared by `selftest` and the test
//! suite. Each family draws its own cases from a ChaCha stream so that a
//! failure is reproducible from `(seed, family, case)` alone.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{CycloScalar, GoldenScalar, Rational};
use crate::complex::{barycentric_subdivision, CellMap, CwComplex};
use crate::homology::{check_chain_complex, induced_on_homology, integral_homology, smith_normal_form, IntMatrix};

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyOutcome {
    pub family: String,
    pub cases: usize,
    pub failures: usize,
    /// First failing case, as `(case index, description)`.
    pub first_failure: Option<(usize, String)>,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn run(family: &str, seed: u64, stream: u64, cases: usize, mut case: impl FnMut(&mut ChaCha8Rng) -> Result<(), String>) -> PropertyOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut failures = 0;
    let mut first_failure = None;
    for i in 0..cases {
        if let Err(e) = case(&mut rng) {
            failures += 1;
            first_failure.get_or_insert((i, e));
        }
    }
    PropertyOutcome { family: family.into(), cases, failures, first_failure }
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-40..=40), rng.gen_range(1..=12))
}

fn small_golden(rng: &mut ChaCha8Rng) -> GoldenScalar {
    GoldenScalar::new(small_rational(rng), small_rational(rng))
}

fn small_cyclo(rng: &mut ChaCha8Rng, m: u32) -> CycloScalar {
    let coeffs = (0..CycloScalar::degree(m)).map(|_| Rational::from(rng.gen_range(-5i64..=5))).collect();
    CycloScalar::from_poly(m, coeffs)
}

/// Ring axioms in Q, Q(φ) and Q(ζ_{2m}); inverses in Q and Q(φ).
pub fn field_axioms(seed: u64, cases: usize) -> PropertyOutcome {
    run("field axioms", seed, 1, cases, |rng| {
        let (a, b, c) = (small_rational(rng), small_rational(rng), small_rational(rng));
        if (a + b) * c != a * c + b * c || (a * b) * c != a * (b * c) || a + b != b + a {
            return Err(format!("Q: a={a} b={b} c={c}"));
        }
        if !a.is_zero() && a * a.recip().unwrap() != Rational::from(1) {
            return Err(format!("Q inverse: {a}"));
        }
        let (x, y, z) = (small_golden(rng), small_golden(rng), small_golden(rng));
        if (x + y) * z != x * z + y * z || (x * y) * z != x * (y * z) || x * y != y * x {
            return Err(format!("Q(φ): x={x} y={y} z={z}"));
        }
        if !x.is_zero() && x * x.inv().unwrap() != GoldenScalar::from_ints(1, 0) {
            return Err(format!("Q(φ) inverse: {x}"));
        }
        let m = [2, 3, 4, 5, 8][rng.gen_range(0..5)];
        let (p, q, r) = (small_cyclo(rng, m), small_cyclo(rng, m), small_cyclo(rng, m));
        if p.add(&q).mul(&r) != p.mul(&r).add(&q.mul(&r)) || p.mul(&q).mul(&r) != p.mul(&q.mul(&r)) || p.mul(&q) != q.mul(&p) {
            return Err(format!("Q(ζ_{}): {p:?} {q:?} {r:?}", 2 * m));
        }
        Ok(())
    })
}

pub fn random_int_matrix(rng: &mut ChaCha8Rng, max_dim: usize, bound: i64) -> IntMatrix {
    let (r, c) = (rng.gen_range(1..=max_dim), rng.gen_range(1..=max_dim));
    let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| if rng.gen_bool(0.4) { 0 } else { rng.gen_range(-bound..=bound) }).collect()).collect();
    IntMatrix::from_dense(&rows)
}

fn big_dense(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    m.to_dense().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()
}

fn big_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], inner: usize, cols: usize) -> Vec<Vec<BigInt>> {
    a.iter().map(|row| (0..cols).map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum()).collect()).collect()
}

/// Determinant by fraction-free elimination.
fn big_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else { return BigInt::zero() };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 { sign } else { sign * &m[n - 1][n - 1] }
}

/// Whether `U A V = D`, `D` diagonal with a divisibility chain, `U`, `V`
/// unimodular. Products are taken over big integers.
pub fn snf_verifies(a: &IntMatrix) -> Result<(), String> {
    let s = smith_normal_form(a).map_err(|e| e.to_string())?;
    let (r, c) = (a.rows(), a.cols());
    if (s.u.rows(), s.u.cols(), s.v.rows(), s.v.cols()) != (r, r, c, c) {
        return Err("transforms have the wrong shape".into());
    }
    let uav = big_mul(&big_mul(&big_dense(&s.u), &big_dense(a), r, c), &big_dense(&s.v), c, c);
    if uav != big_dense(&s.d) {
        return Err("U·A·V ≠ D".into());
    }
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            if i != j && s.d.get(i, j) != 0 {
                return Err(format!("D has off-diagonal entry at ({i}, {j})"));
            }
        }
    }
    let f = s.invariant_factors();
    if f.iter().any(|&x| x <= 0) || f.windows(2).any(|w| w[1] % w[0] != 0) {
        return Err(format!("invariant factors {f:?} are not a divisibility chain"));
    }
    for m in [&s.u, &s.v] {
        if big_det(big_dense(m)).abs() != BigInt::one() {
            return Err("transform is not unimodular".into());
        }
    }
    Ok(())
}

pub fn snf_reverification(seed: u64, cases: usize) -> PropertyOutcome {
    run("SNF U·A·V = D", seed, 2, cases, |rng| {
        let a = random_int_matrix(rng, 6, 9);
        snf_verifies(&a).map_err(|e| format!("{e} for {:?}", a.to_dense()))
    })
}

/// Simplicial complex on `n` vertices, closed under faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub simplices: Vec<Vec<Vec<u8>>>,
}

impl SimplicialComplex {
    pub fn from_facets(facets: &[Vec<u8>]) -> Self {
        let mut all: BTreeSet<Vec<u8>> = BTreeSet::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            let n = f.len();
            for mask in 1u32..(1 << n) {
                all.insert((0..n).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect());
            }
        }
        let top = all.iter().map(Vec::len).max().unwrap_or(1);
        let mut simplices = vec![Vec::new(); top];
        for s in all {
            simplices[s.len() - 1].push(s);
        }
        SimplicialComplex { simplices }
    }

    /// Boundary of the `(n−1)`-simplex, a sphere of dimension `n − 2`.
    pub fn sphere(n: u8) -> Self {
        let facets: Vec<Vec<u8>> = (0..n).map(|skip| (0..n).filter(|&v| v != skip).collect()).collect();
        Self::from_facets(&facets)
    }

    pub fn random(rng: &mut ChaCha8Rng, vertices: u8, facets: usize, max_dim: usize) -> Self {
        let fs: Vec<Vec<u8>> = (0..facets)
            .map(|_| {
                let k = rng.gen_range(1..=max_dim + 1);
                (0..k).map(|_| rng.gen_range(0..vertices)).collect()
            })
            .collect();
        Self::from_facets(&fs)
    }

    fn index(&self, s: &[u8]) -> Option<usize> {
        self.simplices.get(s.len().checked_sub(1)?)?.binary_search_by(|t| t.as_slice().cmp(s)).ok()
    }

    pub fn to_complex(&self) -> CwComplex {
        let counts: Vec<usize> = self.simplices.iter().map(Vec::len).collect();
        let mut inc = Vec::new();
        for (k, layer) in self.simplices.iter().enumerate().skip(1) {
            for (c, s) in layer.iter().enumerate() {
                for i in 0..s.len() {
                    let face: Vec<u8> = s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    inc.push((k, c, self.index(&face).expect("closed under faces"), sign));
                }
            }
        }
        CwComplex::from_incidences(&counts, inc).expect("simplicial boundary")
    }

    /// Chain map of a vertex map that sends simplices to simplices.
    pub fn chain_map(&self, target: &SimplicialComplex, f: &[u8]) -> Option<Vec<IntMatrix>> {
        let mut maps = Vec::new();
        for (k, layer) in self.simplices.iter().enumerate() {
            let mut trip = Vec::new();
            for (c, s) in layer.iter().enumerate() {
                let img: Vec<u8> = s.iter().map(|&v| f[v as usize]).collect();
                let mut sorted = img.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() < img.len() {
                    continue;
                }
                let inversions = (0..img.len()).flat_map(|i| (i + 1..img.len()).map(move |j| (i, j))).filter(|&(i, j)| img[i] > img[j]).count();
                let sign = if inversions % 2 == 0 { 1 } else { -1 };
                trip.push((target.index(&sorted)?, c, sign));
            }
            maps.push(IntMatrix::from_triplets(target.simplices.get(k).map_or(0, Vec::len), layer.len(), trip));
        }
        Some(maps)
    }
}

pub fn boundary_squared(seed: u64, cases: usize) -> PropertyOutcome {
    run("∂∂ = 0", seed, 3, cases, |rng| {
        let facets = rng.gen_range(1..=5);
        let k = SimplicialComplex::random(rng, 7, facets, 3);
        let c = k.to_complex();
        let sd = barycentric_subdivision(&c);
        check_chain_complex(c.boundaries()).and_then(|_| check_chain_complex(sd.boundaries())).map_err(|e| format!("{e} on {:?}", k.simplices.last()))
    })
}

pub fn subdivision_oracle(seed: u64, cases: usize) -> PropertyOutcome {
    run("subdivision oracle", seed, 4, cases, |rng| {
        let facets = rng.gen_range(1..=4);
        let k = SimplicialComplex::random(rng, 6, facets, 3);
        let c = k.to_complex();
        let a = integral_homology(&c).map_err(|e| e.to_string())?;
        let b = integral_homology(&barycentric_subdivision(&c)).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("H = {a:?} but subdivision gives {b:?} for {:?}", k.simplices.last()));
        }
        Ok(())
    })
}

/// Vertex self-maps of a simplex boundary: `(f∘g)_# = f_# ∘ g_#` on chains
/// and on top homology.
pub fn chain_map_functoriality(seed: u64, cases: usize) -> PropertyOutcome {
    run("chain-map functoriality", seed, 5, cases, |rng| {
        let n: u8 = rng.gen_range(3..=5);
        let k = SimplicialComplex::sphere(n);
        let c = Arc::new(k.to_complex());
        let f: Vec<u8> = (0..n).map(|_| rng.gen_range(0..n)).collect();
        let g: Vec<u8> = (0..n).map(|_| rng.gen_range(0..n)).collect();
        let fg: Vec<u8> = g.iter().map(|&v| f[v as usize]).collect();
        let make = |h: &[u8]| -> Result<CellMap, String> {
            let maps = k.chain_map(&k, h).ok_or("not simplicial")?;
            CellMap::new(c.clone(), c.clone(), maps).map_err(|e| e.to_string())
        };
        let (mf, mg, mfg) = (make(&f)?, make(&g)?, make(&fg)?);
        let composed = mf.compose(&mg).map_err(|e| e.to_string())?;
        if !composed.same_matrices(&mfg) {
            return Err(format!("chain level: f={f:?} g={g:?}"));
        }
        let top = (n - 2) as usize;
        let h = |m: &CellMap| induced_on_homology(m, top).map_err(|e| e.to_string());
        if h(&mfg)? != h(&mf)?.mul(&h(&mg)?) {
            return Err(format!("homology level: f={f:?} g={g:?}"));
        }
        Ok(())
    })
}

/// All families with `cases` draws each.
pub fn all_properties(seed: u64, cases: usize) -> Vec<PropertyOutcome> {
    vec![
        field_axioms(seed, cases),
        snf_reverification(seed, cases),
        boundary_squared(seed, cases),
        subdivision_oracle(seed, cases),
        chain_map_functoriality(seed, cases),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spheres_have_sphere_homology() {
        let h = integral_homology(&SimplicialComplex::sphere(4).to_complex()).unwrap();
        assert_eq!(h.iter().map(|g| g.rank).collect::<Vec<_>>(), vec![1, 0, 1]);
    }

    #[test]
    fn small_runs_pass() {
        for o in all_properties(DEFAULT_SEED, 50) {
            assert!(o.passed(), "{o:?}");
        }
    }

    #[test]
    fn reflection_has_degree_minus_one() {
        let k = SimplicialComplex::sphere(3);
        let c = Arc::new(k.to_complex());
        let m = CellMap::new(c.clone(), c, k.chain_map(&k, &[1, 0, 2]).unwrap()).unwrap();
        assert_eq!(induced_on_homology(&m, 1).unwrap()[(0, 0)], Rational::from(-1));
    }
}
