use std::sync::Arc;

use hypercheck::arith::{CycloScalar, GoldenScalar, Rational};
use hypercheck::chern::{c1, chern_classes, BundleExpr, CohomologyRing};
use hypercheck::complex::{barycentric_subdivision, CellMap};
use hypercheck::homology::{check_chain_complex, induced_on_homology, integral_homology, FgAbGroup, IntMatrix};
use hypercheck::properties::{snf_verifies, SimplicialComplex};
use hypercheck::sequences::{solve, Arrow, NodeSpec, SequenceProblem, SolveOutcome};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=16).prop_map(|(n, d)| Rational::new(n, d))
}

fn golden() -> impl Strategy<Value = GoldenScalar> {
    (rational(), rational()).prop_map(|(a, b)| GoldenScalar::new(a, b))
}

fn cyclo(m: u32) -> impl Strategy<Value = CycloScalar> {
    prop::collection::vec(-6i64..=6, CycloScalar::degree(m)).prop_map(move |c| CycloScalar::from_poly(m, c.into_iter().map(Rational::from).collect()))
}

fn int_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(prop_oneof![Just(0i64), -9i64..=9], c), r)).prop_map(|rows| IntMatrix::from_dense(&rows))
}

fn complex() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::vec(0u8..6, 1..=4), 1..=4).prop_map(|f| SimplicialComplex::from_facets(&f))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn rationals_form_a_field(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!((a + b) * c, a * c + b * c);
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a - a, Rational::from(0));
        if !a.is_zero() {
            prop_assert_eq!(a * a.recip().unwrap(), Rational::from(1));
        }
    }

    #[test]
    fn golden_field(x in golden(), y in golden(), z in golden()) {
        prop_assert_eq!((x + y) * z, x * z + y * z);
        prop_assert_eq!((x * y) * z, x * (y * z));
        prop_assert_eq!(x * y, y * x);
        if !x.is_zero() {
            prop_assert_eq!(x * x.inv().unwrap(), GoldenScalar::from_ints(1, 0));
            prop_assert_eq!((x * y) / x, y);
        }
        // conjugation is a ring map and the norm is multiplicative
        prop_assert_eq!((x * y).conj(), x.conj() * y.conj());
        prop_assert_eq!((x * y).norm(), x.norm() * y.norm());
    }

    #[test]
    fn smith_normal_form_reverifies(a in int_matrix()) {
        prop_assert_eq!(snf_verifies(&a), Ok(()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn cyclotomic_ring((m, p, q, r) in prop::sample::select(vec![2u32, 3, 4, 5, 8]).prop_flat_map(|m| (Just(m), cyclo(m), cyclo(m), cyclo(m)))) {
        prop_assert_eq!(p.add(&q).mul(&r), p.mul(&r).add(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        // ζ has order 2m
        prop_assert!(CycloScalar::zeta_pow(m, 2 * m as i64).is_one());
        prop_assert!(!CycloScalar::zeta_pow(m, m as i64).is_one());
    }

    #[test]
    fn chain_maps_compose(n in 3u8..=5, f in prop::collection::vec(0u8..5, 5), g in prop::collection::vec(0u8..5, 5)) {
        let f: Vec<u8> = f.into_iter().take(n as usize).map(|v| v % n).collect();
        let g: Vec<u8> = g.into_iter().take(n as usize).map(|v| v % n).collect();
        let fg: Vec<u8> = g.iter().map(|&v| f[v as usize]).collect();
        let k = SimplicialComplex::sphere(n);
        let c = Arc::new(k.to_complex());
        let map = |h: &[u8]| CellMap::new(c.clone(), c.clone(), k.chain_map(&k, h).unwrap()).unwrap();
        let composed = map(&f).compose(&map(&g)).unwrap();
        prop_assert!(composed.same_matrices(&map(&fg)));
        let top = (n - 2) as usize;
        let h = |m: &CellMap| induced_on_homology(m, top).unwrap();
        prop_assert_eq!(h(&map(&fg)), h(&map(&f)).mul(&h(&map(&g))));
    }

    #[test]
    fn c1_is_additive(a in 1usize..=4, b in 1usize..=4, line in prop::collection::vec(-5i64..=5, 2)) {
        let gens = vec!["g1".to_string(), "g2".to_string()];
        let (ea, eb) = (BundleExpr::named("A", a), BundleExpr::named("B", b));
        let s = c1(&BundleExpr::sum_all([ea.clone(), eb.clone(), BundleExpr::line(&line)]), &gens).unwrap();
        prop_assert_eq!(s.coefficient("c1(A)"), Some(1));
        prop_assert_eq!(s.coefficient("c1(B)"), Some(1));
        prop_assert_eq!(s.coefficient("g1"), Some(line[0]));
        prop_assert_eq!(s.coefficient("g2"), Some(line[1]));
        // c1(E*) = −c1(E) and c1(Λ²E) = (r − 1) c1(E)
        prop_assert_eq!(c1(&ea.clone().dual(), &gens).unwrap().coefficient("c1(A)"), Some(-1));
        if a >= 2 {
            prop_assert_eq!(c1(&ea.lambda2(), &gens).unwrap().coefficient("c1(A)"), Some(a as i64 - 1));
        }
    }

    #[test]
    fn whitney_sum(l in prop::collection::vec(prop::collection::vec(-4i64..=4, 2), 1..=4), m in prop::collection::vec(prop::collection::vec(-4i64..=4, 2), 1..=4)) {
        let ring = CohomologyRing::sphere_times_elliptic();
        let bundle = |ls: &[Vec<i64>]| BundleExpr::sum_all(ls.iter().map(|d| BundleExpr::line(d)));
        let (e, f) = (bundle(&l), bundle(&m));
        let ce = chern_classes(&e, &ring, 2).unwrap();
        let cf = chern_classes(&f, &ring, 2).unwrap();
        let cs = chern_classes(&BundleExpr::sum(e, f), &ring, 2).unwrap();
        for k in 0..=2 {
            let mut prod = ce[0].mul(&cf[k]);
            for i in 1..=k {
                prod = prod.add(&ce[i].mul(&cf[k - i]));
            }
            prop_assert_eq!(&ring.reduce(&prod), &cs[k]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn boundary_squares_to_zero(k in complex()) {
        let c = k.to_complex();
        prop_assert!(check_chain_complex(c.boundaries()).is_ok());
        prop_assert!(check_chain_complex(barycentric_subdivision(&c).boundaries()).is_ok());
    }

    #[test]
    fn subdivision_preserves_homology(k in complex()) {
        let c = k.to_complex();
        prop_assert_eq!(integral_homology(&c).unwrap(), integral_homology(&barycentric_subdivision(&c)).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// Random exact sequences of free groups with some nodes hidden: the
    /// solver never contradicts a true instance and never deduces a wrong value.
    #[test]
    fn solver_is_sound(images in prop::collection::vec(0usize..=3, 2..=8), hidden in prop::collection::vec(any::<bool>(), 10)) {
        // ranks r_i = a_{i-1} + a_i with zero maps at both ends
        let mut a = images.clone();
        a[0] = 0;
        *a.last_mut().unwrap() = 0;
        let ranks: Vec<usize> = (0..=a.len()).map(|i| if i == 0 || i == a.len() { 0 } else { a[i - 1] + a[i] }).collect();
        let nodes: Vec<NodeSpec> = ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| if i > 0 && i < ranks.len() - 1 && hidden[i % hidden.len()] { NodeSpec::Unknown(format!("N{i}")) } else { NodeSpec::Known(FgAbGroup::free(r)) })
            .collect();
        let p = SequenceProblem { nodes, arrows: vec![Arrow::default(); a.len()], facts: vec![], labels: vec![] };
        match solve(&p) {
            Ok(SolveOutcome::Solved { groups, .. }) => {
                let truth: Vec<FgAbGroup> = ranks.iter().map(|&r| FgAbGroup::free(r)).collect();
                prop_assert_eq!(groups, truth);
            }
            Ok(SolveOutcome::Underdetermined { partial, .. }) => {
                for (g, &r) in partial.iter().zip(&ranks) {
                    if let Some(g) = g {
                        prop_assert_eq!(g.rank, r);
                    }
                }
            }
            Err(e) => prop_assert!(false, "contradiction on a true instance: {e}"),
        }
    }
}
