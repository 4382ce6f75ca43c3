//! Verification reports: named checks with expected and actual values, a
//! provenance tag, and a witness for anything that fails.
//!
//! JSON output is deterministic. Struct fields serialize in declaration
//! order and `serde_json` maps are sorted, so identical runs give identical
//! bytes.

use std::fmt::{self, Display};

use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{within_width_contract, GoldenScalar, Rational};
use crate::chern::{resolution_check, twistor_c1_coefficient, CohomologyRing};
use crate::coxeter::{antipodal_pairing, build_120cell, check_angles, generate_group, realize_hyperbolic, FaceLattice, H4_ORDER};
use crate::davis::{run_davis_pipeline_with, DavisError, DavisOptions, KahlerVerdict};
use crate::homology::FgAbGroup;
use crate::lie::model::{conifold_incidence_check, conifold_sample_check, lift_order, model_fixed_locus, quaternion_hermitian_check};
use crate::lie::{inclusion_compatible, lie_summary, so_dim};
use crate::lorentz::{CoxeterDiagram, LorentzMatrix, Signature};
use crate::properties::{all_properties, DEFAULT_SEED};
use crate::sequences::{
    knot_threefold_homology, orbifold_homology_mv, orbifold_relative_homology, solve, sphere_from_balls, wall_match, SequenceProblem, SolveOutcome, WallData, WallMatch,
};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// Where an expected value comes from: a claim being checked, a sanity
/// case, or a value computed independently of the code under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Provenance {
    Paper,
    Trivial,
    Derived,
}

impl Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Paper => "PAPER",
            Provenance::Trivial => "TRIVIAL",
            Provenance::Derived => "DERIVED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Check {
    /// Passes iff the rendered values agree. The witness is kept on failure only.
    pub fn eq(name: &str, provenance: Provenance, expected: impl Display, actual: impl Display, witness: Value) -> Check {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let pass = expected == actual;
        Check { name: name.into(), status: if pass { Status::Pass } else { Status::Fail }, expected, actual, provenance, witness: (!pass).then_some(witness) }
    }

    pub fn error(name: &str, provenance: Provenance, expected: impl Display, err: impl Display, witness: Value) -> Check {
        Check { name: name.into(), status: Status::Fail, expected: expected.to_string(), actual: format!("error: {err}"), provenance, witness: Some(witness) }
    }

    pub fn skip(name: &str, provenance: Provenance, expected: impl Display, reason: &str) -> Check {
        Check { name: name.into(), status: Status::Skip, expected: expected.to_string(), actual: reason.into(), provenance, witness: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub version: String,
    pub command: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report { version: TOOL_VERSION.into(), command: command.into(), checks: Vec::new(), data: None }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    /// Append another report's checks; its data lands under `key`.
    pub fn absorb(&mut self, key: &str, other: Report) {
        self.checks.extend(other.checks);
        if let Some(d) = other.data {
            let obj = self.data.get_or_insert_with(|| json!({}));
            obj[key] = d;
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

impl Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "hypercheck {} :: {}", self.version, self.command)?;
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skip => "skip",
            };
            if c.status == Status::Pass {
                writeln!(f, "  {tag}  {}  = {}  [{}]", c.name, c.actual, c.provenance)?;
            } else {
                writeln!(f, "  {tag}  {}  expected {}, got {}  [{}]", c.name, c.expected, c.actual, c.provenance)?;
                if let Some(w) = &c.witness {
                    writeln!(f, "        witness: {w}")?;
                }
            }
        }
        write!(f, "{} passed, {} failed, {} skipped", self.count(Status::Pass), self.count(Status::Fail), self.count(Status::Skip))
    }
}

/// Knobs shared by all commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub seed: u64,
    /// Bits for certified interval enclosures.
    pub precision: u32,
    /// Bound on group enumeration.
    pub max_order: usize,
    /// Cases per randomized property family in `selftest`.
    pub property_cases: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: DEFAULT_SEED, precision: 64, max_order: 20_000, property_cases: 2_000 }
    }
}

fn groups(h: &[FgAbGroup]) -> String {
    format!("({})", h.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn parse_groups(s: &[&str]) -> Vec<FgAbGroup> {
    s.iter().map(|g| g.parse().expect("group literal")).collect()
}

use Provenance::{Derived, Paper, Trivial};

/// Coxeter group, 120-cell lattice, exact hyperbolic realization.
pub fn polytope_report(opts: &RunOptions) -> Report {
    let mut r = Report::new("polytope");
    let w = json!({ "diagram": [5, 3, 3], "max_order": opts.max_order });
    let group = match generate_group(&CoxeterDiagram::linear(&[5, 3, 3]), opts.max_order) {
        Ok(g) => g,
        Err(e) => {
            r.push(Check::error("coxeter.order", Paper, H4_ORDER, e, w));
            return r;
        }
    };
    r.push(Check::eq("coxeter.order", Paper, H4_ORDER, group.order(), w.clone()));
    let lattice = match build_120cell(group) {
        Ok(l) => l,
        Err(e) => {
            r.push(Check::error("polytope.f_vector", Paper, "[600, 1200, 720, 120]", e, w));
            return r;
        }
    };
    lattice_checks(&mut r, &lattice);
    let real = match realize_hyperbolic(&lattice) {
        Ok(x) => x,
        Err(e) => {
            r.push(Check::error("realization.signature", Paper, "(4, 1)", e, json!({ "diagram": [5, 3, 3, 5] })));
            return r;
        }
    };
    let sig = real.signature();
    r.push(Check::eq("realization.signature", Paper, format!("{:?}", Signature::new(4, 1, 0)), format!("{sig:?}"), json!({ "diagram": [5, 3, 3, 5] })));
    let cos = GoldenScalar::from_ints(-1, 1) / GoldenScalar::from_ints(2, 0);
    match check_angles(&lattice, &real) {
        Ok(a) => {
            let good = a.adjacent_cosines.iter().filter(|c| **c == cos).count();
            let bad: Vec<String> = a.adjacent_cosines.iter().filter(|c| **c != cos).take(3).map(ToString::to_string).collect();
            r.push(Check::eq("realization.adjacent_cosines", Paper, format!("720 of 720 equal {cos}"), format!("{good} of {} equal {cos}", a.adjacent_pairs), json!({ "offending": bad })));
            r.data = Some(json!({ "fvector": lattice.fvector(), "order": H4_ORDER, "ultraparallel_pairs": a.ultraparallel_pairs, "adjacent_cosine": cos.to_string() }));
        }
        Err(e) => r.push(Check::error("realization.adjacent_cosines", Paper, "720 of 720", e, json!({}))),
    }
    match antipodal_pairing(&lattice, &real) {
        Ok(p) => {
            let involutive = p.pairs.iter().all(|x| x.isometry.preserves(real.gram()) && x.isometry.compose(&x.isometry) == LorentzMatrix::identity(5));
            r.push(Check::eq("pairing.opposite_facets", Derived, 60, p.pairs.len(), json!({})));
            r.push(Check::eq("pairing.isometric_involutions", Derived, true, involutive, json!({})));
        }
        Err(e) => r.push(Check::error("pairing.opposite_facets", Derived, 60, e, json!({}))),
    }
    let phi = GoldenScalar::from_ints(0, 1).to_interval(opts.precision);
    // φ lies in [1.6180339887, 1.6180339888]; the enclosure must meet that bracket
    let (a, b) = (Rational::new(16_180_339_887, 10_000_000_000), Rational::new(16_180_339_888, 10_000_000_000));
    let meets = phi.contains_rational(a) || phi.contains_rational(b) || (phi.lo_f64() >= a.to_f64() && phi.hi_f64() <= b.to_f64());
    let ok = meets && phi.certified_sign() == Some(1);
    r.push(Check::eq("interval.phi", Derived, true, ok && within_width_contract(&phi, opts.precision), json!({ "precision": opts.precision, "lo": phi.lo_f64(), "hi": phi.hi_f64() })));
    r
}

fn lattice_checks(r: &mut Report, l: &FaceLattice) {
    let w = json!({ "lattice": "120-cell" });
    r.push(Check::eq("polytope.f_vector", Paper, "[600, 1200, 720, 120]", format!("{:?}", l.fvector()), w.clone()));
    let edges = l.containment_degrees(1, 3);
    let verts = l.containment_degrees(0, 3);
    r.push(Check::eq("polytope.edge_degree", Paper, "all 3", if edges.iter().all(|&d| d == 3) { "all 3".into() } else { format!("{:?}", edges.iter().find(|&&d| d != 3)) }, w.clone()));
    r.push(Check::eq("polytope.vertex_degree", Paper, "all 4", if verts.iter().all(|&d| d == 4) { "all 4".into() } else { format!("{:?}", verts.iter().find(|&&d| d != 4)) }, w.clone()));
    r.push(Check::eq("polytope.diamond", Trivial, true, l.check_diamond(), w.clone()));
    r.push(Check::eq("polytope.boundary_squared", Trivial, true, l.check_boundary_squared(), w));
}

/// The glued 120-cell, its involution and the resolution bookkeeping.
pub fn davis_report(opts: &RunOptions) -> Report {
    let mut r = Report::new("davis all");
    let w = json!({ "seed": opts.seed });
    let d = match run_davis_pipeline_with(DavisOptions { seed: opts.seed, ..DavisOptions::default() }) {
        Ok(d) => d,
        Err(DavisError::Check { name, expected, actual }) => {
            r.push(Check { name: format!("davis.{name}"), status: Status::Fail, expected, actual, provenance: Derived, witness: Some(w) });
            return r;
        }
        Err(e) => {
            r.push(Check::error("davis.pipeline", Derived, "completes", e, w));
            return r;
        }
    };
    let b: Vec<usize> = d.homology.iter().map(|g| g.rank).collect();
    let list = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join("/");
    r.push(Check::eq("davis.orbit_counts", Derived, "1/60/144/60/1", list(&d.orbit_counts), w.clone()));
    r.push(Check::eq("davis.euler_characteristic", Paper, 26, d.chi, w.clone()));
    r.push(Check::eq("davis.subdivision_oracle", Derived, groups(&d.homology), groups(&d.subdivision_homology), w.clone()));
    r.push(Check::eq("davis.poincare_b1_b3", Derived, b[1], b[3], w.clone()));
    r.push(Check::eq("davis.b2_minus_2b1", Derived, 24, b[2] as i64 - 2 * b[1] as i64, w.clone()));
    r.push(Check::eq("davis.orientable", Derived, "Z", d.homology[4].to_string(), w.clone()));
    r.push(Check::eq("fixed_points.total", Paper, 122, d.fixed_points.total, w.clone()));
    let setwise: Vec<usize> = d.fixed_points.strata.per_dim.iter().map(|s| s.setwise).collect();
    r.push(Check::eq("fixed_points.strata", Paper, "1/60/0/60/1", list(&setwise), w.clone()));
    r.push(Check::eq("fixed_points.lefschetz", Derived, Rational::from(122), &d.fixed_points.lefschetz_number, w.clone()));
    r.push(Check::eq("sigma.h1_minus_identity", Paper, true, d.sigma_on_h1.is_minus_identity, w.clone()));
    r.push(Check::eq("sigma.loops_generate_h1", Derived, true, d.loops_generate_h1, w.clone()));
    r.push(Check::eq("quotient.h1", Paper, "0", d.quotient_h1.to_string(), w.clone()));
    r.push(Check::eq("resolution.b3", Paper, 0, d.b3_hat, w.clone()));
    r.push(Check::eq("resolution.kahler", Paper, KahlerVerdict::Obstructed, d.kahler, w));
    r.data = Some(serde_json::to_value(&d).expect("davis report serializes"));
    r
}

/// `so(2n,1)` coadjoint orbit checks for the given ranks.
pub fn lie_report(ns: &[usize], decompose: bool, forms: bool) -> Report {
    let mode = match (decompose, forms) {
        (true, false) => "decompose",
        (false, true) => "forms",
        _ => "all",
    };
    let mut r = Report::new(&format!("lie {mode}"));
    let mut data = Vec::new();
    for &n in ns {
        let w = json!({ "n": n });
        let s = match lie_summary(n) {
            Ok(s) => s,
            Err(e) => {
                r.push(Check::error(&format!("lie.n{n}.decomposition"), Paper, "eigenvalues 0, -1, -4", e, w));
                continue;
            }
        };
        let d = s.dims;
        if decompose {
            r.push(Check::eq(&format!("lie.n{n}.dim"), Trivial, n * (2 * n + 1), d.total, w.clone()));
            r.push(Check::eq(&format!("lie.n{n}.dim_formula"), Trivial, n * (2 * n + 1), so_dim(n), w.clone()));
            r.push(Check::eq(&format!("lie.n{n}.stabilizer"), Paper, n * n, d.stabilizer, w.clone()));
            r.push(Check::eq(&format!("lie.n{n}.summands"), Paper, format!("({}, {})", n * (n - 1), 2 * n), format!("({}, {})", d.lambda2, d.cn), w.clone()));
            r.push(Check::eq(&format!("lie.n{n}.spectrum"), Paper, "{-1, -4} off the stabilizer", format!("{{-1, -4}} off the stabilizer{}", if d.stabilizer + d.lambda2 + d.cn == d.total { "" } else { " (incomplete)" }), w.clone()));
            r.push(Check::eq(&format!("lie.n{n}.stabilizer_is_u(n)"), Paper, "closed, inside u(n)", format!("{}, {}", if s.stabilizer_closed { "closed" } else { "not closed" }, if s.stabilizer_in_un { "inside u(n)" } else { "outside u(n)" }), w.clone()));
        }
        if forms {
            let want_forms = if n == 1 { 1 } else { 2 };
            r.push(Check::eq(&format!("lie.n{n}.invariant_forms"), Paper, want_forms, s.invariant_forms, w.clone()));
            r.push(Check::eq(&format!("lie.n{n}.forms_on_single_summands"), Paper, true, s.forms_on_single_summands, w.clone()));
            r.push(Check::eq(&format!("lie.n{n}.kirillov_nondegenerate"), Paper, d.lambda2 + d.cn, s.kirillov_rank, w.clone()));
            r.push(Check::eq(&format!("lie.n{n}.kirillov_block_diagonal"), Paper, true, s.kirillov_block_diagonal, w.clone()));
            r.push(Check::eq(&format!("lie.n{n}.cn_ratio"), Derived, Rational::from(2), &s.cn_ratio, w.clone()));
            if n >= 2 {
                match inclusion_compatible(n - 1) {
                    Ok(ok) => r.push(Check::eq(&format!("lie.n{n}.inclusion"), Paper, true, ok, w.clone())),
                    Err(e) => r.push(Check::error(&format!("lie.n{n}.inclusion"), Paper, true, e, w.clone())),
                }
            }
        }
        data.push(serde_json::to_value(&s).expect("summary serializes"));
    }
    r.data = Some(Value::Array(data));
    r
}

/// Order of the lifted generator.
pub fn lift_order_report(ms: &[u32]) -> Report {
    let mut r = Report::new("singularity lift-order");
    for &m in ms {
        let w = json!({ "m": m });
        match lift_order(m) {
            Ok(k) => r.push(Check::eq(&format!("singularity.m{m}.lift_order"), Paper, 2 * m as u64, k, w)),
            Err(e) => r.push(Check::error(&format!("singularity.m{m}.lift_order"), Paper, 2 * m, e, w)),
        }
    }
    r
}

/// Fixed locus of the lifted action, plus the quaternionic and conifold identities.
pub fn fixed_locus_report(ms: &[u32], opts: &RunOptions) -> Report {
    let mut r = Report::new("singularity fixed-locus");
    let mut data = Vec::new();
    for &m in ms {
        let w = json!({ "m": m });
        match model_fixed_locus(m) {
            Ok(f) => {
                r.push(Check::eq(&format!("singularity.m{m}.fixed_locus"), Paper, "y = z = 0, x*w = 1", format!("{} = 0, {}", f.vanishing.join(" = "), f.relation), w.clone()));
                r.push(Check::eq(&format!("singularity.m{m}.normal_weights_u2"), Paper, true, f.generated_by_u_squared, w.clone()));
                r.push(Check::eq(&format!("singularity.m{m}.normal_order"), Paper, m as u64, f.weight_order, w));
                data.push(serde_json::to_value(&f).expect("fixed locus serializes"));
            }
            Err(e) => r.push(Check::error(&format!("singularity.m{m}.fixed_locus"), Paper, "y = z = 0", e, w)),
        }
    }
    let q = quaternion_hermitian_check(1000, opts.seed);
    r.push(Check::eq("singularity.quaternionic_identity", Derived, "1000 of 1000", format!("{} of {}", q.samples - q.failures, q.samples), json!({ "seed": opts.seed, "first_failure": q.first_failure })));
    let cs = conifold_sample_check(1000, opts.seed);
    r.push(Check::eq("singularity.conifold_samples", Derived, "1000 of 1000", format!("{} of {}", cs.samples - cs.failures, cs.samples), json!({ "seed": opts.seed, "first_failure": cs.first_failure })));
    let c = conifold_incidence_check();
    r.push(Check::eq("singularity.conifold_rulings", Derived, true, c.passed(), json!({ "quadric": c.quadric, "witness_value": c.witness_value })));
    r.data = Some(Value::Array(data));
    r
}

pub fn twistor_report(ns: &[usize]) -> Report {
    let mut r = Report::new("chern twistor");
    for &n in ns {
        let w = json!({ "n": n });
        match twistor_c1_coefficient(n) {
            Ok(c) => r.push(Check::eq(&format!("chern.twistor_n{n}.c1_coefficient"), Paper, n as i64 - 2, c, w)),
            Err(e) => r.push(Check::error(&format!("chern.twistor_n{n}.c1_coefficient"), Paper, n as i64 - 2, e, w)),
        }
    }
    r
}

pub fn resolution_report() -> Report {
    let mut r = Report::new("chern resolution-check");
    let w = json!({ "bundle": "O(-2) + O(2) + C over S2 x T2" });
    match resolution_check() {
        Ok(c) => {
            r.push(Check::eq("chern.resolution.c1", Paper, "0", c.c1.to_string(), w.clone()));
            r.push(Check::eq("chern.resolution.c2_on_E", Paper, 0, c.c2_on_e, w.clone()));
            r.push(Check::eq("chern.resolution.p1", Paper, "0", c.p1.to_string(), w.clone()));
            r.push(Check::eq("chern.resolution.e_squared_on_E", Paper, 0, c.exceptional_squared_on_e, w));
            r.data = Some(serde_json::to_value(&c).expect("serializes"));
        }
        Err(e) => r.push(Check::error("chern.resolution", Paper, "all zero", e, w)),
    }
    r
}

pub fn solve_report(p: &SequenceProblem) -> Report {
    let mut r = Report::new("seq solve");
    match solve(p) {
        Ok(out) => {
            let (status, actual) = match &out {
                SolveOutcome::Solved { groups: g, .. } => (Status::Pass, groups(g)),
                SolveOutcome::Underdetermined { residual, .. } => (Status::Fail, format!("underdetermined: {}", residual.join("; "))),
            };
            let witness = (status == Status::Fail).then(|| serde_json::to_value(p).expect("problem serializes"));
            r.push(Check { name: "seq.solve".into(), status, expected: "all unknowns determined".into(), actual, provenance: Trivial, witness });
            r.data = Some(serde_json::to_value(&out).expect("outcome serializes"));
        }
        Err(e) => r.push(Check::error("seq.solve", Trivial, "consistent problem", e, serde_json::to_value(p).expect("problem serializes"))),
    }
    r
}

/// Wall invariants of the resolution, assembled from its homology and the
/// Chern computation on the exceptional divisor.
pub fn knot_threefold_wall_data() -> Result<WallData, String> {
    let h = knot_threefold_homology(2).map_err(|e| e.to_string())?;
    let c = resolution_check().map_err(|e| e.to_string())?;
    let ring = CohomologyRing::sphere_times_elliptic();
    // H² = Z·e with e dual to E: e³ = ⟨e², E⟩ and ⟨p₁ e, X⟩ = ⟨p₁, E⟩
    let p1_on_e = ring.pair(&c.p1).map_err(|e| e.to_string())?;
    Ok(WallData {
        b3: h[3].rank,
        h2: h[2].clone(),
        cubic_form: vec![vec![vec![c.exceptional_squared_on_e]]],
        p1_pairing: vec![p1_on_e],
        spin: c.c1.is_zero(),
        torsion_free: h.iter().all(FgAbGroup::is_free),
    })
}

pub fn knot_threefold_report() -> Report {
    let mut r = Report::new("seq knot-threefold");
    let w = json!({ "m": 2 });
    match knot_threefold_homology(2) {
        Ok(h) => {
            r.push(Check::eq("seq.knot_threefold.homology", Paper, "(Z, 0, Z, Z^4, Z, 0, Z)", groups(&h), w.clone()));
            r.push(Check::eq("seq.knot_threefold.b3", Paper, 4, h[3].rank, w.clone()));
            let dual = (0..=6).all(|k| h[k].rank == h[6 - k].rank);
            r.push(Check::eq("seq.knot_threefold.poincare_duality", Derived, true, dual, w.clone()));
            let chi: i64 = h.iter().enumerate().map(|(k, g)| if k % 2 == 0 { g.rank as i64 } else { -(g.rank as i64) }).sum();
            r.push(Check::eq("seq.knot_threefold.euler_characteristic", Paper, 0, chi, w.clone()));
            r.data = Some(json!({ "homology": h }));
        }
        Err(e) => r.push(Check::error("seq.knot_threefold.homology", Paper, "(Z, 0, Z, Z^4, Z, 0, Z)", e, w.clone())),
    }
    match orbifold_relative_homology() {
        Ok(h) => r.push(Check::eq("seq.orbifold_relative_homology", Paper, "(0, 0, Z^2, Z^3, 0, 0, Z)", groups(&h), w.clone())),
        Err(e) => r.push(Check::error("seq.orbifold_relative_homology", Paper, "(0, 0, Z^2, Z^3, 0, 0, Z)", e, w.clone())),
    }
    match knot_threefold_wall_data() {
        Ok(d) => {
            let m = wall_match(&d);
            r.push(Check::eq("wall.knot_threefold", Paper, "2(S³×S³) # (S²×S⁴)", &m, json!({ "wall_data": d })));
        }
        Err(e) => r.push(Check::error("wall.knot_threefold", Paper, "2(S³×S³) # (S²×S⁴)", e, w)),
    }
    r
}

pub fn orbifold_report() -> Report {
    let mut r = Report::new("seq orbifold-mv");
    let w = json!({ "cover": "X1 = S1 x S3, X2 = S1 x S3, X1 ∩ X2 = T2 x S3" });
    match orbifold_homology_mv() {
        Ok(h) => r.push(Check::eq("seq.orbifold_mv", Paper, groups(&parse_groups(&["Z", "0", "0", "Z^2", "0", "0", "Z"])), groups(&h), w)),
        Err(e) => r.push(Check::error("seq.orbifold_mv", Paper, "(Z, 0, 0, Z^2, 0, 0, Z)", e, w)),
    }
    match sphere_from_balls() {
        Ok(h) => r.push(Check::eq("seq.sphere_from_balls", Trivial, "(Z, 0, 0, Z)", groups(&h), json!({}))),
        Err(e) => r.push(Check::error("seq.sphere_from_balls", Trivial, "(Z, 0, 0, Z)", e, json!({}))),
    }
    r
}

pub fn wall_report(d: &WallData) -> Report {
    let mut r = Report::new("wall match");
    let m = wall_match(d);
    let status = match m {
        WallMatch::Model { .. } => Status::Pass,
        _ => Status::Fail,
    };
    r.push(Check {
        name: "wall.match".into(),
        status,
        expected: "a(S³×S³) # b(S²×S⁴)".into(),
        actual: m.to_string(),
        provenance: Trivial,
        witness: (status == Status::Fail).then(|| serde_json::to_value(d).expect("serializes")),
    });
    r.data = Some(serde_json::to_value(&m).expect("serializes"));
    r
}

pub const LIE_RANKS: [usize; 6] = [1, 2, 3, 4, 5, 6];
pub const LIFT_MS: [u32; 5] = [2, 3, 4, 5, 8];

/// Every suite, the Wall rejection case and the randomized properties.
pub fn selftest_report(opts: &RunOptions) -> Report {
    let mut r = Report::new("selftest");
    r.absorb("polytope", polytope_report(opts));
    r.absorb("davis", davis_report(opts));
    r.absorb("lie", lie_report(&LIE_RANKS, true, true));
    r.absorb("lift_order", lift_order_report(&LIFT_MS));
    r.absorb("fixed_locus", fixed_locus_report(&LIFT_MS, opts));
    r.absorb("twistor", twistor_report(&LIE_RANKS));
    r.absorb("resolution", resolution_report());
    r.absorb("orbifold", orbifold_report());
    r.absorb("knot_threefold", knot_threefold_report());
    let mut perturbed = crate::sequences::connected_sum_data(2, 1);
    perturbed.p1_pairing = vec![2];
    let rejected = matches!(wall_match(&perturbed), WallMatch::NoMatch { .. });
    r.push(Check::eq("wall.perturbed_p1_rejected", Trivial, true, rejected, json!({ "wall_data": perturbed })));
    for o in all_properties(opts.seed, opts.property_cases) {
        let name = format!("property.{}", o.family);
        r.push(Check::eq(&name, Derived, format!("0 failures in {}", o.cases), format!("{} failures in {}", o.failures, o.cases), json!({ "seed": opts.seed, "first_failure": o.first_failure })));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_json_is_stable() {
        let a = twistor_report(&[1, 3]).to_json();
        let b = twistor_report(&[1, 3]).to_json();
        assert_eq!(a, b);
        assert!(a.contains("\"provenance\": \"PAPER\""));
        assert!(!a.contains("witness"));
    }

    #[test]
    fn failing_checks_carry_witnesses() {
        let c = Check::eq("x", Trivial, 1, 2, json!({ "input": 7 }));
        assert_eq!(c.status, Status::Fail);
        assert!(c.witness.is_some());
        let mut r = Report::new("t");
        r.push(c);
        assert!(!r.passed());
        assert!(r.to_string().contains("witness"));
    }

    #[test]
    fn small_suites_pass() {
        for r in [lie_report(&[1, 2, 3], true, true), lift_order_report(&LIFT_MS), twistor_report(&LIE_RANKS), resolution_report(), orbifold_report(), knot_threefold_report()] {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn order_bound_is_reported() {
        let r = polytope_report(&RunOptions { max_order: 1000, ..RunOptions::default() });
        assert!(!r.passed());
        assert!(r.checks[0].witness.is_some());
    }
}
