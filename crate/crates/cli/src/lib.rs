//! Command-line surface for orb4kit.
//!
//! Every subcommand produces a [`Report`]; `--json` prints it as one JSON
//! object, otherwise the same values are printed as flattened `key: value`
//! lines. Exit codes: 0 success, 1 verification failed, 2 invalid input.

use std::f64::consts::PI;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Map, Value};

use orb4kit_core::algebra::{
    integer_duality_defect, lens_suspension_tables, rational_duality_check,
    universal_coefficients_cohomology, validate_theorem_top_profile, euler_characteristic,
};
use orb4kit_core::hitchin::{
    self, fixed_point_deviation, sampled_slice_range, singular_slice_range, slice_orbit_uniqueness,
    verify_phi12, SingularSide,
};
use orb4kit_core::quotgeo::{great_circle_triple, perimeter, verify_perimeter_bound};
use orb4kit_core::wps::{
    self, fixed_point_set, is_product_form, isotropy_weights, kobayashi_check, make_weights,
    stratification, toponogov_witness, wps_cohomology, Locus,
};
use orb4kit_core::{CircleWeightVector, GradedGroup, HitchinOrbifoldTag, Pi1Orb, QuotientModel};

pub mod parse;

pub const SCHEMA: &str = "orb4kit/1";

/// Outcome of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// `max_violation` is the measured excess over the nominal bound, before any
/// tolerance is applied: a deviation whose nominal value is zero, a perimeter
/// minus its bound, or a mismatch count for exact checks.
#[derive(Debug, Clone, Serialize)]
pub struct Verification {
    pub passed: bool,
    pub max_violation: f64,
    pub trials: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
}

#[derive(Parser, Debug)]
#[command(
    name = "orb4kit",
    version,
    about = "Invariants and numerical checks for compact 4-orbifolds",
    after_help = "Flag grammar:\n  \
        weights/actions   comma-separated integer triples, e.g. --weights 1,2,4 --action 1,0,0\n  \
        complex vectors   re,im pairs joined by ';', e.g. --p '1,0;0,0;0,0'\n  \
        graded tables     groups in degrees 0..n joined by ';', each 0 or a sum of Z, Z^r, Z_d,\n                    \
        e.g. --homology 'Z;0;Z_5;0;Z'\n\
        Exit codes: 0 success, 1 verification failed, 2 invalid input."
)]
struct Cli {
    /// Print the report as a single JSON object.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Group,
}

#[derive(Subcommand, Debug)]
enum Group {
    /// Weighted projective planes CP^2[l0,l1,l2].
    #[command(subcommand)]
    Wps(WpsCmd),
    /// Integral (co)homology tables.
    #[command(subcommand)]
    Cohomology(CohomologyCmd),
    /// Sampling verifiers for quotient metrics.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// The Hitchin matrix model on S^4.
    #[command(subcommand)]
    Hitchin(HitchinCmd),
}

#[derive(Args, Debug)]
struct WeightsArg {
    /// Primitive positive weight triple, e.g. 1,2,4.
    #[arg(long, value_parser = parse::weights)]
    weights: [u64; 3],
}

#[derive(Args, Debug)]
struct ActionArg {
    /// Circle weight vector m0,m1,m2 (signs allowed).
    #[arg(long, value_parser = parse::action, allow_hyphen_values = true)]
    action: [i64; 3],
}

#[derive(Subcommand, Debug)]
enum WpsCmd {
    /// Strata, product form and cohomology.
    Info {
        #[command(flatten)]
        w: WeightsArg,
    },
    /// Fixed set of a residual circle action.
    Fixed {
        #[command(flatten)]
        w: WeightsArg,
        #[command(flatten)]
        a: ActionArg,
    },
    /// Isotropy representation at an isolated fixed vertex.
    Isotropy {
        #[command(flatten)]
        w: WeightsArg,
        #[command(flatten)]
        a: ActionArg,
        #[arg(long)]
        vertex: usize,
    },
    /// Quotient distance between two points of S^5.
    Distance {
        #[command(flatten)]
        w: WeightsArg,
        /// First point as re,im;re,im;re,im.
        #[arg(long, value_parser = parse::complex3, allow_hyphen_values = true)]
        p: [Complex64; 3],
        /// Second point as re,im;re,im;re,im.
        #[arg(long, value_parser = parse::complex3, allow_hyphen_values = true)]
        q: [Complex64; 3],
        #[arg(long, default_value = "1e-6", value_parser = parse::positive_f64, allow_hyphen_values = true)]
        tol: f64,
    },
    /// Comparison-angle sum of the triangle of fixed vertices.
    Toponogov {
        #[command(flatten)]
        w: WeightsArg,
        #[command(flatten)]
        a: ActionArg,
        #[arg(long, default_value = "1e-6", value_parser = parse::positive_f64, allow_hyphen_values = true)]
        tol: f64,
        /// The angle sum must exceed this value by at least --margin.
        #[arg(long, default_value_t = PI, value_parser = parse::finite_f64, allow_hyphen_values = true)]
        bound: f64,
        #[arg(long, default_value = "1e-3", value_parser = parse::finite_f64, allow_hyphen_values = true)]
        margin: f64,
    },
    /// Euler characteristic of the fixed set against that of the orbifold.
    Kobayashi {
        #[command(flatten)]
        w: WeightsArg,
        #[command(flatten)]
        a: ActionArg,
        /// Compare against this value instead of the orbifold Euler characteristic.
        #[arg(long, allow_hyphen_values = true)]
        expected_euler: Option<i64>,
    },
}

#[derive(Subcommand, Debug)]
enum CohomologyCmd {
    /// Homology and cohomology of the suspension of the lens space L(p; q).
    Lens {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        q: i64,
    },
    /// Check a degree-4 cohomology table against the simply connected profile.
    ValidateTop {
        /// Cohomology table in degrees 0..4.
        #[arg(long, value_parser = parse::graded)]
        cohomology: GradedGroup,
        /// Rank of H_2 plus two.
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Order of a finite orbifold fundamental group.
        #[arg(long, conflicts_with = "pi1_infinite", required_unless_present = "pi1_infinite")]
        pi1_order: Option<u64>,
        #[arg(long)]
        pi1_infinite: bool,
    },
    /// Rational duality and the integral duality defect of a homology table.
    Duality {
        #[arg(long, value_parser = parse::graded)]
        homology: GradedGroup,
        /// Cohomology table; computed by universal coefficients if omitted.
        #[arg(long, value_parser = parse::graded)]
        cohomology: Option<GradedGroup>,
        /// Also require every defect order to divide this group order.
        #[arg(long)]
        pi1_order: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Largest perimeter of random triangles in a quotient of S^3.
    AngleSum {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        #[arg(long, default_value_t = 1)]
        gamma_order: u32,
        /// Exponents (a,b) of the generator (e^{2 pi i a/n}, e^{2 pi i b/n}).
        #[arg(long, default_value = "1,1", value_parser = parse::int_pair, allow_hyphen_values = true)]
        gamma_exponents: (i64, i64),
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "1e-6", value_parser = parse::positive_f64, allow_hyphen_values = true)]
        tol: f64,
        /// Perimeters may not exceed this value by more than 3 tol.
        #[arg(long, default_value_t = PI, value_parser = parse::finite_f64, allow_hyphen_values = true)]
        bound: f64,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum SideArg {
    Positive,
    Negative,
}

#[derive(Subcommand, Debug)]
enum HitchinCmd {
    /// Circle-fixed matrices and their deviation under random angles.
    FixedPoints {
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "1e-12", value_parser = parse::positive_f64, allow_hyphen_values = true)]
        tol: f64,
        /// Order of the orbifold group along the tagged orbit.
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, value_enum, default_value_t = SideArg::Positive)]
        side: SideArg,
    },
    /// Range of the suspension parameter on the singular orbit.
    SliceRange {
        #[arg(long, default_value = "1e-9", value_parser = parse::positive_f64, allow_hyphen_values = true)]
        tol: f64,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Tolerance for the sampled range.
        #[arg(long, default_value = "1e-3", value_parser = parse::positive_f64, allow_hyphen_values = true)]
        sample_tol: f64,
    },
    /// The singular orbit meets a slice in one circle orbit.
    SliceOrbit {
        #[arg(long, allow_hyphen_values = true)]
        h: f64,
        #[arg(long, default_value_t = 200)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "1e-6", value_parser = parse::positive_f64, allow_hyphen_values = true)]
        tol: f64,
        /// Largest accepted orbit distance; defaults to --tol.
        #[arg(long, value_parser = parse::finite_f64, allow_hyphen_values = true)]
        bound: Option<f64>,
    },
    /// The circle acts on slices with weights (2, 1).
    VerifyPhi12 {
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "1e-9", value_parser = parse::positive_f64, allow_hyphen_values = true)]
        tol: f64,
    },
}

type CmdResult = std::result::Result<Report, String>;

/// Parses `argv` (including the program name) and executes it.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    let report = match dispatch(cli.command) {
        Ok(r) => r,
        Err(msg) => return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
    };
    let code = match &report.verification {
        Some(v) if !v.passed => 1,
        _ => 0,
    };
    let stdout = if cli.json { render_json(&report) } else { render_text(&report) };
    let stderr = if code == 1 { format!("verification failed: {}\n", report.command) } else { String::new() };
    Outcome { code, stdout, stderr }
}

pub fn render_json(report: &Report) -> String {
    let mut s = serde_json::to_string(report).expect("reports are serializable");
    s.push('\n');
    s
}

/// One `path: value` line per leaf of the report.
pub fn render_text(report: &Report) -> String {
    let value = serde_json::to_value(report).expect("reports are serializable");
    let mut out = String::new();
    flatten(&mut out, "", &value);
    out
}

fn flatten(out: &mut String, path: &str, v: &Value) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                flatten(out, &p, child);
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                let _ = writeln!(out, "{path}: []");
            }
            for (i, child) in items.iter().enumerate() {
                flatten(out, &format!("{path}[{i}]"), child);
            }
        }
        Value::String(s) => {
            let _ = writeln!(out, "{path}: {s}");
        }
        other => {
            let _ = writeln!(out, "{path}: {other}");
        }
    }
}

fn report(command: &str, inputs: Value, results: Value, verification: Option<Verification>) -> Report {
    let inputs = match inputs {
        Value::Object(m) => m,
        _ => Map::new(),
    };
    Report { schema: SCHEMA, command: command.to_string(), inputs, results, verification }
}

fn err(e: orb4kit_core::Error) -> String {
    e.to_string()
}

fn table(g: &GradedGroup) -> Value {
    json!({
        "display": g.to_string(),
        "groups": g.groups().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    })
}

fn complex_json(v: &[Complex64]) -> Value {
    Value::Array(v.iter().map(|z| json!([z.re, z.im])).collect())
}

fn locus_label(locus: Locus) -> String {
    match locus {
        Locus::Vertex(i) => format!("Vertex{i}"),
        Locus::Edge(i, j) => format!("Edge{i}{j}"),
        Locus::Regular => "Regular".to_string(),
    }
}

fn dispatch(cmd: Group) -> CmdResult {
    match cmd {
        Group::Wps(c) => run_wps(c),
        Group::Cohomology(c) => run_cohomology(c),
        Group::Verify(c) => run_verify(c),
        Group::Hitchin(c) => run_hitchin(c),
    }
}

fn weights_of(w: &WeightsArg) -> std::result::Result<wps::WeightTriple, String> {
    make_weights(w.weights[0], w.weights[1], w.weights[2]).map_err(err)
}

fn action_of(a: &ActionArg) -> CircleWeightVector {
    CircleWeightVector::new(a.action[0], a.action[1], a.action[2])
}

fn run_wps(cmd: WpsCmd) -> CmdResult {
    match cmd {
        WpsCmd::Info { w } => {
            let lam = weights_of(&w)?;
            let strata: Vec<Value> = stratification(&lam)
                .iter()
                .map(|s| json!({ "locus": locus_label(s.locus), "group_order": s.group_order }))
                .collect();
            let coh = wps_cohomology(&lam);
            let product = is_product_form(&lam).map(|(a, b, c)| json!([a, b, c]));
            Ok(report(
                "wps info",
                json!({ "weights": w.weights }),
                json!({
                    "strata": strata,
                    "product_form": product,
                    "cohomology": table(&coh),
                    "euler_characteristic": euler_characteristic(&coh),
                }),
                None,
            ))
        }
        WpsCmd::Fixed { w, a } => {
            let lam = weights_of(&w)?;
            let fixed = fixed_point_set(&lam, &action_of(&a)).map_err(err)?;
            Ok(report(
                "wps fixed",
                json!({ "weights": w.weights, "action": a.action }),
                json!({ "fixed_set": fixed, "euler_characteristic": fixed.euler_characteristic() }),
                None,
            ))
        }
        WpsCmd::Isotropy { w, a, vertex } => {
            let lam = weights_of(&w)?;
            let rep = isotropy_weights(&lam, &action_of(&a), vertex).map_err(err)?;
            Ok(report(
                "wps isotropy",
                json!({ "weights": w.weights, "action": a.action, "vertex": vertex }),
                json!({ "k": rep.k, "l": rep.l }),
                None,
            ))
        }
        WpsCmd::Distance { w, p, q, tol } => {
            let lam = weights_of(&w)?;
            let d = wps::wps_distance(&lam, &p, &q, tol).map_err(err)?;
            Ok(report(
                "wps distance",
                json!({ "weights": w.weights, "p": complex_json(&p), "q": complex_json(&q), "tol": tol }),
                json!({ "distance": d }),
                None,
            ))
        }
        WpsCmd::Toponogov { w, a, tol, bound, margin } => {
            let lam = weights_of(&w)?;
            let wit = toponogov_witness(&lam, &action_of(&a), tol).map_err(err)?;
            let violation = bound + margin - wit.angle_sum;
            Ok(report(
                "wps toponogov",
                json!({ "weights": w.weights, "action": a.action, "tol": tol, "bound": bound, "margin": margin }),
                json!({ "distances": wit.distances, "angles": wit.angles, "angle_sum": wit.angle_sum }),
                Some(Verification { passed: violation <= 0.0, max_violation: violation, trials: 1, seed: 0 }),
            ))
        }
        WpsCmd::Kobayashi { w, a, expected_euler } => {
            let lam = weights_of(&w)?;
            let check = kobayashi_check(&lam, &action_of(&a)).map_err(err)?;
            let target = expected_euler.unwrap_or(check.orbifold_euler);
            let gap = (check.fixed_set_euler - target).abs();
            Ok(report(
                "wps kobayashi",
                json!({ "weights": w.weights, "action": a.action, "expected_euler": expected_euler }),
                json!({
                    "fixed_set": check.fixed_set,
                    "fixed_set_euler": check.fixed_set_euler,
                    "orbifold_euler": check.orbifold_euler,
                    "target_euler": target,
                }),
                Some(Verification { passed: gap == 0, max_violation: gap as f64, trials: 1, seed: 0 }),
            ))
        }
    }
}

fn run_cohomology(cmd: CohomologyCmd) -> CmdResult {
    match cmd {
        CohomologyCmd::Lens { p, q } => {
            let (hom, coh) = lens_suspension_tables(p, q).map_err(err)?;
            let uct = universal_coefficients_cohomology(&hom).map_err(err)?;
            let defect = integer_duality_defect(&coh, &hom).map_err(err)?;
            Ok(report(
                "cohomology lens",
                json!({ "p": p, "q": q }),
                json!({
                    "homology": table(&hom),
                    "cohomology": table(&coh),
                    "uct_matches": uct == coh,
                    "rational_duality": rational_duality_check(&hom),
                    "duality_defect": defect.defects.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                }),
                None,
            ))
        }
        CohomologyCmd::ValidateTop { cohomology, n, pi1_order, pi1_infinite } => {
            let pi1 = if pi1_infinite { Pi1Orb::Infinite } else { Pi1Orb::Finite(pi1_order.unwrap_or(0)) };
            let check = validate_theorem_top_profile(&cohomology, n, pi1).map_err(err)?;
            Ok(report(
                "cohomology validate-top",
                json!({ "cohomology": cohomology.to_string(), "n": n, "pi1": pi1 }),
                json!({ "failed_clause": check.failed_clause, "diagnostic": check.diagnostic }),
                Some(Verification {
                    passed: check.passed,
                    max_violation: if check.passed { 0.0 } else { 1.0 },
                    trials: 1,
                    seed: 0,
                }),
            ))
        }
        CohomologyCmd::Duality { homology, cohomology, pi1_order } => {
            let coh = match cohomology {
                Some(c) => c,
                None => universal_coefficients_cohomology(&homology).map_err(err)?,
            };
            if pi1_order == Some(0) {
                return Err("--pi1-order must be positive".into());
            }
            let rational = rational_duality_check(&homology);
            let defect = integer_duality_defect(&coh, &homology).map_err(err)?;
            let orders: Vec<u64> = defect.defects.iter().map(|g| g.torsion_order().unwrap_or(0)).collect();
            let bounded = pi1_order.map_or(true, |n| orders.iter().all(|&o| o != 0 && n % o == 0));
            let passed = rational && defect.rank_mismatches.is_empty() && bounded;
            Ok(report(
                "cohomology duality",
                json!({ "homology": homology.to_string(), "cohomology": coh.to_string(), "pi1_order": pi1_order }),
                json!({
                    "rational_duality": rational,
                    "defects": defect.defects.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                    "defect_orders": orders,
                    "rank_mismatches": defect.rank_mismatches,
                }),
                Some(Verification {
                    passed,
                    max_violation: if passed { 0.0 } else { 1.0 },
                    trials: 1,
                    seed: 0,
                }),
            ))
        }
    }
}

fn run_verify(cmd: VerifyCmd) -> CmdResult {
    match cmd {
        VerifyCmd::AngleSum { k, l, gamma_order, gamma_exponents, trials, seed, tol, bound } => {
            let model = QuotientModel::new(k, l, gamma_order, gamma_exponents).map_err(err)?;
            let rep = verify_perimeter_bound(&model, trials, seed, tol).map_err(err)?;
            let violation = rep.max_perimeter - bound;
            let mut results = json!({
                "max_perimeter": rep.max_perimeter,
                "witness_trial": rep.witness_trial,
                "witness": rep.witness.iter().map(|p| complex_json(&[p.z1, p.z2])).collect::<Vec<_>>(),
            });
            if k == 1 && l == 1 && gamma_order == 1 {
                let sharp = perimeter(&model, &great_circle_triple(), tol).map_err(err)?;
                results["great_circle_perimeter"] = json!(sharp);
            }
            Ok(report(
                "verify angle-sum",
                json!({
                    "k": k, "l": l, "gamma_order": gamma_order,
                    "gamma_exponents": [gamma_exponents.0, gamma_exponents.1],
                    "trials": trials, "seed": seed, "tol": tol, "bound": bound,
                }),
                results,
                Some(Verification { passed: violation <= 3.0 * tol, max_violation: violation, trials, seed }),
            ))
        }
    }
}

fn run_hitchin(cmd: HitchinCmd) -> CmdResult {
    match cmd {
        HitchinCmd::FixedPoints { trials, seed, tol, k, side } => {
            let side = match side {
                SideArg::Positive => SingularSide::RepeatedPositive,
                SideArg::Negative => SingularSide::RepeatedNegative,
            };
            let tag = HitchinOrbifoldTag::new(k, side).map_err(err)?;
            let rep = fixed_point_deviation(trials, seed);
            let tagged = tag.fixed_point();
            Ok(report(
                "hitchin fixed-points",
                json!({ "trials": trials, "seed": seed, "tol": tol, "k": k, "side": side }),
                json!({
                    "fixed_points": rep.fixed_points.iter().map(|m| m.matrix().to_vec()).collect::<Vec<_>>(),
                    "eigenvalues": rep.fixed_points.iter().map(hitchin::eigenvalue_type).collect::<Vec<_>>(),
                    "orbifold": { "k": tag.k(), "side": tag.side(), "fixed_point": tagged.matrix().to_vec() },
                    "max_deviation": rep.max_deviation,
                }),
                Some(Verification {
                    passed: rep.max_deviation <= tol,
                    max_violation: rep.max_deviation,
                    trials,
                    seed,
                }),
            ))
        }
        HitchinCmd::SliceRange { tol, samples, seed, sample_tol } => {
            let s6 = 6f64.sqrt();
            let (lo, hi) = (-2.0 / s6, 1.0 / s6);
            let exact = singular_slice_range();
            let sampled = sampled_slice_range(samples, seed).map_err(err)?;
            let exact_err = (exact.lo - lo).abs().max((exact.hi - hi).abs());
            let sampled_err = (sampled.lo - lo).abs().max((sampled.hi - hi).abs());
            let passed = exact_err <= tol && sampled_err <= sample_tol;
            Ok(report(
                "hitchin slice-range",
                json!({ "tol": tol, "samples": samples, "seed": seed, "sample_tol": sample_tol }),
                json!({
                    "analytic": exact,
                    "sampled": sampled,
                    "analytic_error": exact_err,
                    "sampled_error": sampled_err,
                }),
                Some(Verification {
                    passed,
                    max_violation: exact_err.max(sampled_err),
                    trials: samples,
                    seed,
                }),
            ))
        }
        HitchinCmd::SliceOrbit { h, samples, seed, tol, bound } => {
            let rep = slice_orbit_uniqueness(h, samples, tol, seed).map_err(err)?;
            let bound = bound.unwrap_or(tol);
            Ok(report(
                "hitchin slice-orbit",
                json!({ "h": h, "samples": samples, "seed": seed, "tol": tol, "bound": bound }),
                json!({ "reference": rep.reference.matrix().to_vec(), "max_deviation": rep.max_deviation }),
                Some(Verification {
                    passed: rep.max_deviation <= bound,
                    max_violation: rep.max_deviation,
                    trials: samples,
                    seed,
                }),
            ))
        }
        HitchinCmd::VerifyPhi12 { samples, seed, tol } => {
            let rep = verify_phi12(samples, tol, seed).map_err(err)?;
            Ok(report(
                "hitchin verify-phi12",
                json!({ "samples": samples, "seed": seed, "tol": tol }),
                json!({ "weights": [2, 1], "max_deviation": rep.max_violation }),
                Some(Verification { passed: rep.passed, max_violation: rep.max_violation, trials: samples, seed }),
            ))
        }
    }
}
