//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines show up in `cargo test` output.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hypercheck::arith::{GoldenScalar, Rational};
use hypercheck::chern::{resolution_check, twistor_c1_coefficient};
use hypercheck::coxeter::{build_120cell, check_angles, generate_group, realize_hyperbolic, FaceLattice};
use hypercheck::davis::{b3_of_resolution, kahler_obstruction, run_davis_pipeline, BlowupCenter, DavisReport, KahlerVerdict};
use hypercheck::homology::FgAbGroup;
use hypercheck::lie::model::{conifold_sample_check, lift_order, model_fixed_locus, quaternion_hermitian_check};
use hypercheck::lie::{lie_summary, so_dim};
use hypercheck::linalg::Matrix;
use hypercheck::lorentz::{CoxeterDiagram, Signature};
use hypercheck::properties::DEFAULT_SEED;
use hypercheck::report::{selftest_report, RunOptions, Status};
use hypercheck::sequences::{connected_sum_data, knot_threefold_homology, orbifold_homology_mv, wall_match, WallMatch};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn groups(s: &[&str]) -> Vec<FgAbGroup> {
    s.iter().map(|g| g.parse().unwrap()).collect()
}

struct Shared {
    lattice: Option<FaceLattice>,
    davis: Option<Result<DavisReport, String>>,
}

fn coxeter_order(sh: &mut Shared) -> Outcome {
    let t = Instant::now();
    let g = generate_group(&CoxeterDiagram::linear(&[5, 3, 3]), 20_000).map_err(|e| e.to_string())?;
    let dt = t.elapsed();
    ensure(g.order() == 14400, format!("order {}", g.order()))?;
    ensure(dt < Duration::from_secs(30), format!("took {dt:?}"))?;
    sh.lattice = Some(build_120cell(g).map_err(|e| e.to_string())?);
    Ok(format!("|[5,3,3]| = 14400 in {dt:.2?}"))
}

fn f_vector(sh: &mut Shared) -> Outcome {
    let l = sh.lattice.as_ref().ok_or("no lattice")?;
    ensure(l.fvector() == [600, 1200, 720, 120], format!("f-vector {:?}", l.fvector()))?;
    ensure(l.containment_degrees(1, 3).iter().all(|&d| d == 3), "an edge is not in exactly 3 cells")?;
    ensure(l.containment_degrees(0, 3).iter().all(|&d| d == 4), "a vertex is not in exactly 4 cells")?;
    Ok("f = (600, 1200, 720, 120), edge degree 3, vertex degree 4".into())
}

fn realization(sh: &mut Shared) -> Outcome {
    let l = sh.lattice.as_ref().ok_or("no lattice")?;
    let real = realize_hyperbolic(l).map_err(|e| e.to_string())?;
    ensure(real.signature() == Signature::new(4, 1, 0), format!("signature {:?}", real.signature()))?;
    let a = check_angles(l, &real).map_err(|e| e.to_string())?;
    let want = (GoldenScalar::from_ints(0, 1) - GoldenScalar::from_ints(1, 0)) / GoldenScalar::from_ints(2, 0);
    ensure(a.adjacent_pairs == 720, format!("{} adjacent pairs", a.adjacent_pairs))?;
    ensure(a.adjacent_cosines.iter().all(|c| *c == want), "an adjacent cosine differs from (φ−1)/2")?;
    Ok(format!("signature (4,1), 720 adjacent cosines = {want}"))
}

fn davis(sh: &mut Shared) -> Result<&DavisReport, String> {
    sh.davis.get_or_insert_with(|| run_davis_pipeline().map_err(|e| e.to_string())).as_ref().map_err(Clone::clone)
}

fn davis_complex(sh: &mut Shared) -> Outcome {
    let d = davis(sh)?;
    ensure(d.orbit_counts == [1, 60, 144, 60, 1], format!("orbits {:?}", d.orbit_counts))?;
    ensure(d.chi == 26, format!("χ = {}", d.chi))?;
    ensure(d.homology == d.subdivision_homology, "subdivision oracle disagrees")?;
    let b: Vec<usize> = d.homology.iter().map(|g| g.rank).collect();
    ensure(b[1] == b[3] && b[2] as i64 - 2 * b[1] as i64 == 24, format!("betti {b:?}"))?;
    Ok(format!("orbits 1/60/144/60/1, χ = 26, betti {b:?} (oracle agrees)"))
}

fn involution(sh: &mut Shared) -> Outcome {
    let d = davis(sh)?;
    let f = &d.fixed_points;
    let setwise: Vec<usize> = f.strata.per_dim.iter().map(|s| s.setwise).collect();
    ensure(f.total == 122, format!("{} fixed points", f.total))?;
    ensure(setwise == [1, 60, 0, 60, 1], format!("strata {setwise:?}"))?;
    ensure(d.sigma_on_h1.is_minus_identity, "σ ≠ −I on H1")?;
    ensure(d.quotient_h1.is_trivial(), format!("H1(M/σ) = {}", d.quotient_h1))?;
    Ok("122 fixed points (1/60/0/60/1), σ = −I on H1, H1(M/σ) = 0".into())
}

fn b3_bookkeeping(sh: &mut Shared) -> Outcome {
    let d = davis(sh)?;
    ensure(d.b3_hat == 0, format!("pipeline b3 = {}", d.b3_hat))?;
    // standalone: σ = −1 on H1 and H3, +1 on H0, H2 (trace 72), H4, 122 twistor-fibre centers
    let diag = |n: usize, plus: usize| Matrix::from_rows((0..n).map(|i| (0..n).map(|j| Rational::from(if i != j { 0 } else if i < plus { 1 } else { -1 })).collect()).collect());
    let sigma = vec![diag(1, 1), diag(24, 0), diag(72, 72), diag(24, 0), diag(1, 1)];
    let b3 = b3_of_resolution(&[1, 24, 72, 24, 1], &sigma, &vec![BlowupCenter::twistor_fibre(); 122]).map_err(|e| e.to_string())?;
    ensure(b3 == 0, format!("b3 = {b3}"))?;
    ensure(kahler_obstruction(0, 0) == KahlerVerdict::Obstructed, "obstruction did not fire")?;
    Ok("b3 = 0, Kähler obstruction fires on (0, 0)".into())
}

fn lie_suite(_: &mut Shared) -> Outcome {
    let t = Instant::now();
    for n in 1..=6 {
        let s = lie_summary(n).map_err(|e| format!("n={n}: {e}"))?;
        let d = s.dims;
        ensure(so_dim(n) == n * (2 * n + 1) && d.total == so_dim(n), format!("n={n}: dim {}", d.total))?;
        ensure(d.stabilizer == n * n, format!("n={n}: stabilizer {}", d.stabilizer))?;
        ensure((d.lambda2, d.cn) == (n * (n - 1), 2 * n), format!("n={n}: summands ({}, {})", d.lambda2, d.cn))?;
        // the three eigenspaces of ad_ξ² (0, −4, −1) fill the algebra
        ensure(d.stabilizer + d.lambda2 + d.cn == d.total, format!("n={n}: eigenspaces miss a direction"))?;
        let forms = if n == 1 { 1 } else { 2 };
        ensure(s.invariant_forms == forms, format!("n={n}: {} invariant forms", s.invariant_forms))?;
        ensure(s.kirillov_rank == d.lambda2 + d.cn && s.kirillov_block_diagonal, format!("n={n}: Kirillov form rank {}", s.kirillov_rank))?;
    }
    let dt = t.elapsed();
    ensure(dt < Duration::from_secs(5), format!("took {dt:?}"))?;
    Ok(format!("n = 1..6 dims, spectrum, forms and Kirillov form in {dt:.2?}"))
}

fn chern_suite(_: &mut Shared) -> Outcome {
    for n in 1..=6 {
        let c = twistor_c1_coefficient(n).map_err(|e| e.to_string())?;
        ensure(c == n as i64 - 2, format!("n={n}: coefficient {c}"))?;
    }
    let r = resolution_check().map_err(|e| e.to_string())?;
    ensure(r.c2_on_e == 0 && r.p1.is_zero() && r.exceptional_squared_on_e == 0 && r.c1.is_zero(), format!("{r:?}"))?;
    Ok("c1(Z_2n) = (n−2)[ω] for n = 1..6; c1 = 0, <c2,E> = 0, p1 = 0, <e²,E> = 0".into())
}

fn singularity_suite(_: &mut Shared) -> Outcome {
    for m in [2, 3, 4, 5, 8] {
        let k = lift_order(m).map_err(|e| e.to_string())?;
        ensure(k == 2 * m as u64, format!("m={m}: order {k}"))?;
        let f = model_fixed_locus(m).map_err(|e| e.to_string())?;
        ensure(f.vanishing == ["y", "z"] && f.relation == "x*w = 1", format!("m={m}: fixed locus {:?}", f.vanishing))?;
        ensure(f.generated_by_u_squared, format!("m={m}: normal action not generated by U²"))?;
    }
    let q = quaternion_hermitian_check(1000, DEFAULT_SEED);
    let c = conifold_sample_check(1000, DEFAULT_SEED);
    ensure(q.passed() && q.samples == 1000, format!("quaternionic: {:?}", q.first_failure))?;
    ensure(c.passed() && c.samples == 1000, format!("conifold: {:?}", c.first_failure))?;
    Ok("lift order 2m for m ∈ {2,3,4,5,8}, diagonal torus fixed, 1000 + 1000 exact samples".into())
}

fn sequence_suite(_: &mut Shared) -> Outcome {
    let s3s3 = orbifold_homology_mv().map_err(|e| e.to_string())?;
    ensure(s3s3 == groups(&["Z", "0", "0", "Z^2", "0", "0", "Z"]), format!("orbifold {s3s3:?}"))?;
    let h = knot_threefold_homology(2).map_err(|e| e.to_string())?;
    ensure(h == groups(&["Z", "0", "Z", "Z^4", "Z", "0", "Z"]), format!("resolution {h:?}"))?;
    ensure(h[3].rank == 4, "b3 ≠ 4")?;
    let name = wall_match(&connected_sum_data(2, 1)).to_string();
    ensure(name.replace(' ', "") == "2(S³×S³)#(S²×S⁴)", format!("wall match {name}"))?;
    let mut perturbed = connected_sum_data(2, 1);
    perturbed.p1_pairing = vec![2];
    ensure(matches!(wall_match(&perturbed), WallMatch::NoMatch { .. }), "perturbed p1 accepted")?;
    Ok("S³×S³ by Mayer–Vietoris, (Z,0,Z,Z⁴,Z,0,Z), 2(S³×S³)#(S²×S⁴), perturbed p1 rejected".into())
}

fn property_suites(_: &mut Shared) -> Outcome {
    let t = Instant::now();
    let r = selftest_report(&RunOptions::default());
    let dt = t.elapsed();
    let props: Vec<_> = r.checks.iter().filter(|c| c.name.starts_with("property.")).collect();
    let cases = RunOptions::default().property_cases * props.len();
    ensure(props.len() == 5 && cases >= 10_000, format!("{} families, {cases} cases", props.len()))?;
    if let Some(bad) = r.checks.iter().find(|c| c.status == Status::Fail) {
        return Err(format!("{} expected {}, got {}", bad.name, bad.expected, bad.actual));
    }
    ensure(dt < Duration::from_secs(300), format!("selftest took {dt:?}"))?;
    Ok(format!("{cases} randomized cases, zero failures; selftest in {dt:.2?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn(&mut Shared) -> Outcome); 11] = [
        ("Coxeter order", coxeter_order),
        ("120-cell f-vector", f_vector),
        ("hyperbolic realization", realization),
        ("Davis complex", davis_complex),
        ("involution", involution),
        ("b3 bookkeeping", b3_bookkeeping),
        ("Lie suite", lie_suite),
        ("Chern suite", chern_suite),
        ("singularity suite", singularity_suite),
        ("sequence suite", sequence_suite),
        ("property suites", property_suites),
    ];
    let mut shared = Shared { lattice: None, davis: None };
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let out = catch_unwind(AssertUnwindSafe(|| run(&mut shared))).unwrap_or_else(|_| Err("panicked".into()));
        match out {
            Ok(msg) => println!("criterion {:>2} pass  {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
