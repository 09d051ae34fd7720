//! Named batches of checks, their configuration and serialized results.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::counterexamples::{counterexample, three_edge_point_set, COUNTEREXAMPLES};
use crate::error::{LabError, Result};
use crate::grasshopper::{
    euclidean_jump_path, grasshopper_distance, tree_swap_bijection, GrasshopperMode, Hops, UnitJumpGraph,
};
use crate::horo::{
    busemann_closed_form, check_busemann_sum_bound, check_shadow_semicontinuity, tits_delta, BusemannEval, RayPair,
    ShadowCheck, BUSEMANN_TOL, MAX_TRUNCATION,
};
use crate::report::{ReportBuilder, VerificationReport, Witness};
use crate::scalar::{rat, Scalar};
use crate::space::{GeodesicRef, IdealPoint, MetricTree, MidpointSelector, Point, SpaceModel, TreePoint};
use crate::tapes::{build_p_tape, check_third_division, tape_position, validate_p_tape};
use crate::transfer::{
    double_transfer, double_transfer_shifted, horospherical_transfer, scissors_shift, scissors_shift_by_composition,
    scissors_shift_by_formula, validate_scissors, ScissorsConfig, ScissorsSpec, TRANSFER_TOL,
};
use crate::verify::{
    check_busemann_midpoints, check_busemann_on_sample, check_metric_axioms, is_isometry, preserves_unit_distance,
    tree_lattice, SampleSet, UnitMode, METRIC_TOL, UNIT_TOL,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteName {
    Axioms,
    Busemann,
    Horofn,
    Transfers,
    Scissors,
    Tapes,
    Grasshopper,
    Counterexamples,
    All,
}

impl SuiteName {
    pub const EVERY: [SuiteName; 8] = [
        SuiteName::Axioms,
        SuiteName::Busemann,
        SuiteName::Horofn,
        SuiteName::Transfers,
        SuiteName::Scissors,
        SuiteName::Tapes,
        SuiteName::Grasshopper,
        SuiteName::Counterexamples,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Axioms => "axioms",
            SuiteName::Busemann => "busemann",
            SuiteName::Horofn => "horofn",
            SuiteName::Transfers => "transfers",
            SuiteName::Scissors => "scissors",
            SuiteName::Tapes => "tapes",
            SuiteName::Grasshopper => "grasshopper",
            SuiteName::Counterexamples => "counterexamples",
            SuiteName::All => "all",
        }
    }

    /// Suites that draw random samples and therefore need a seed.
    pub fn is_randomized(self) -> bool {
        !matches!(self, SuiteName::Transfers | SuiteName::Scissors | SuiteName::Tapes)
    }
}

impl FromStr for SuiteName {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|_| {
            LabError::Config(format!(
                "unknown suite {s:?}; expected one of axioms, busemann, horofn, transfers, scissors, tapes, grasshopper, counterexamples, all"
            ))
        })
    }
}

/// What to run. Mirrors the JSON config file accepted by the CLI.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub suite: SuiteName,
    /// Restricts the axioms and busemann suites to one space.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceModel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Random triples per space.
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// Overrides the agreement tolerance of oracle comparisons.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// Largest truncation for limit evaluations.
    #[serde(default = "default_truncation")]
    pub max_truncation: f64,
    #[serde(default, skip_serializing)]
    pub out: Option<PathBuf>,
}

fn default_samples() -> usize {
    200
}

fn default_truncation() -> f64 {
    MAX_TRUNCATION
}

impl ScenarioConfig {
    pub fn new(suite: SuiteName) -> Self {
        ScenarioConfig {
            suite,
            space: None,
            seed: None,
            samples: default_samples(),
            tolerance: None,
            max_truncation: default_truncation(),
            out: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| LabError::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.suite.is_randomized() && self.seed.is_none() {
            return Err(LabError::Config(format!("suite {} needs a seed", self.suite.as_str())));
        }
        if self.samples == 0 {
            return Err(LabError::Config("samples must be positive".into()));
        }
        if let Some(t) = self.tolerance {
            if !(t > 0.0 && t.is_finite()) {
                return Err(LabError::Config(format!("tolerance must be positive, got {t}")));
            }
        }
        if !(self.max_truncation >= 1.0) {
            return Err(LabError::Config("max_truncation must be at least 1".into()));
        }
        if let Some(s) = &self.space {
            s.validate().map_err(|e| LabError::Config(e.to_string()))?;
        }
        Ok(())
    }

    fn tol(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.unwrap_or(0) ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: String,
    pub config: ScenarioConfig,
    pub reports: Vec<VerificationReport>,
    #[serde(skip)]
    pub duration: Duration,
}

impl PartialEq for SuiteResult {
    fn eq(&self, other: &Self) -> bool {
        self.suite == other.suite && self.config == other.config && self.reports == other.reports
    }
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(VerificationReport::passed)
    }

    pub fn failed(&self) -> Vec<&VerificationReport> {
        self.reports.iter().filter(|r| !r.passed()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

impl FromStr for Format {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(LabError::Config(format!("unknown format {s:?}; expected json or text"))),
        }
    }
}

/// Pretty JSON (keys in declaration or sorted order) or a summary table.
pub fn emit_report(result: &SuiteResult, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(result).map_err(|e| LabError::Config(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Text => {
            let mut s = String::new();
            let passed = result.reports.iter().filter(|r| r.passed()).count();
            let _ = writeln!(s, "suite {}: {passed}/{} passed", result.suite, result.reports.len());
            let width = result.reports.iter().map(|r| r.check.len()).max().unwrap_or(5).max(5);
            let _ = writeln!(s, "{:<6} {:<width$} {:>8} {:>8}", "status", "check", "checked", "failed");
            for r in &result.reports {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                let _ = writeln!(s, "{status:<6} {:<width$} {:>8} {:>8}", r.check, r.checked, r.failures);
                for w in r.witnesses.iter().take(3) {
                    let vals: Vec<String> = w.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    let _ = writeln!(s, "       witness {} {}", w.points.join(" "), vals.join(" "));
                }
            }
            Ok(s)
        }
    }
}

/// Runs the configured suite. Check-level errors become failing reports;
/// only configuration problems are returned as errors.
pub fn run_suite(config: &ScenarioConfig) -> Result<SuiteResult> {
    config.validate()?;
    let start = Instant::now();
    let suites: Vec<SuiteName> = match config.suite {
        SuiteName::All => SuiteName::EVERY.to_vec(),
        s => vec![s],
    };
    let mut reports = Vec::new();
    for s in suites {
        let part = match s {
            SuiteName::Axioms => axioms(config),
            SuiteName::Busemann => busemann(config),
            SuiteName::Horofn => horofn(config),
            SuiteName::Transfers => transfers(config),
            SuiteName::Scissors => scissors(config),
            SuiteName::Tapes => tapes(config),
            SuiteName::Grasshopper => grasshopper(config),
            SuiteName::Counterexamples => counterexamples(config),
            SuiteName::All => unreachable!("expanded above"),
        };
        debug_assert_eq!(part.len(), declared_checks(s, config));
        reports.extend(part);
    }
    Ok(SuiteResult { suite: config.suite.as_str().into(), config: config.clone(), reports, duration: start.elapsed() })
}

/// Number of reports a suite produces under `config`.
pub fn declared_checks(suite: SuiteName, config: &ScenarioConfig) -> usize {
    match suite {
        SuiteName::Axioms => config.space.as_ref().map_or(catalog().len(), |_| 1),
        SuiteName::Busemann => config.space.as_ref().map_or(busemann_catalog().len(), |_| 1) + 1,
        SuiteName::Horofn => 6,
        SuiteName::Transfers => 6,
        SuiteName::Scissors => 5,
        SuiteName::Tapes => 5,
        SuiteName::Grasshopper => 5,
        SuiteName::Counterexamples => COUNTEREXAMPLES.len(),
        SuiteName::All => SuiteName::EVERY.iter().map(|&s| declared_checks(s, config)).sum(),
    }
}

fn or_failed(check: &str, r: Result<VerificationReport>) -> VerificationReport {
    r.unwrap_or_else(|e| {
        let mut rep = ReportBuilder::new(check, 0.0);
        rep.fail(Witness::new(vec![]).with("evaluation_error", 1.0));
        rep.note(e.to_string());
        rep.finish()
    })
}

/// Turns a check that must fail into a passing report carrying the
/// failure as evidence.
fn expect_failure(check: &str, inner: VerificationReport) -> VerificationReport {
    let mut rep = ReportBuilder::new(check, inner.tolerance);
    rep.record(!inner.passed(), || Witness::new(vec![inner.check.clone()]).with("unexpected_pass", 1.0));
    rep.metric("inner_failures", inner.failures as f64);
    rep.note(format!("expected failure of {}", inner.check));
    let mut out = rep.finish();
    out.witnesses = inner.witnesses;
    out
}

fn branching_tree() -> MetricTree {
    // ends at 0, 3 and 2; the end at 2 hangs off vertex 1 by a long edge
    MetricTree::from_edges(4, &[(0, 1, rat(1, 2)), (1, 3, rat(1, 2)), (1, 2, rat(3, 2))], 2, &[0, 3, 2])
        .expect("valid tree")
}

/// Every space model the axioms suite visits.
pub fn catalog() -> Vec<SpaceModel> {
    vec![
        SpaceModel::euclidean(2),
        SpaceModel::euclidean(3),
        SpaceModel::minkowski(1.5).expect("p > 1"),
        SpaceModel::minkowski(3.0).expect("p > 1"),
        SpaceModel::MinkowskiLinf,
        SpaceModel::HyperbolicPlane,
        SpaceModel::tree(branching_tree()),
        SpaceModel::sphere(1.0, 3).expect("valid sphere"),
        SpaceModel::RealLine,
        SpaceModel::max_product(SpaceModel::euclidean(1), SpaceModel::RealLine).expect("valid product"),
    ]
}

fn busemann_catalog() -> Vec<SpaceModel> {
    vec![
        SpaceModel::euclidean(2),
        SpaceModel::minkowski(1.5).expect("p > 1"),
        SpaceModel::minkowski(2.0).expect("p > 1"),
        SpaceModel::minkowski(3.0).expect("p > 1"),
        SpaceModel::HyperbolicPlane,
        SpaceModel::tree(branching_tree()),
    ]
}

fn axioms(cfg: &ScenarioConfig) -> Vec<VerificationReport> {
    let spaces = cfg.space.clone().map_or_else(catalog, |s| vec![s]);
    spaces
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let name = format!("metric_axioms[{}]", s.name());
            or_failed(
                &name,
                SampleSet::random(s, 3 * cfg.samples, cfg.seed.unwrap_or(0).wrapping_add(i as u64))
                    .map(|sample| check_metric_axioms(s, &sample)),
            )
        })
        .collect()
}

fn busemann(cfg: &ScenarioConfig) -> Vec<VerificationReport> {
    let spaces = cfg.space.clone().map_or_else(busemann_catalog, |s| vec![s]);
    let mut out: Vec<VerificationReport> = spaces
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let name = format!("busemann_midpoints[{}]", s.name());
            or_failed(
                &name,
                SampleSet::random(s, 3 * cfg.samples, cfg.seed.unwrap_or(0).wrapping_add(100 + i as u64))
                    .map(|sample| check_busemann_on_sample(s, &sample)),
            )
        })
        .collect();
    let linf = check_busemann_midpoints(
        &SpaceModel::MinkowskiLinf,
        &Point::vec2(0.0, 0.0),
        &Point::vec2(2.0, 0.0),
        &Point::vec2(2.0, 2.0),
        (MidpointSelector::LowerExtreme, MidpointSelector::UpperExtreme),
    );
    out.push(match linf {
        Ok(r) => expect_failure("busemann_linf_witness", r),
        Err(e) => or_failed("busemann_linf_witness", Err(e)),
    });
    out
}

fn horofn(cfg: &ScenarioConfig) -> Vec<VerificationReport> {
    vec![
        or_failed("busemann_oracle[euclidean(2)]", busemann_oracle_euclidean(cfg)),
        or_failed("busemann_oracle[hyperbolic]", busemann_oracle_hyperbolic(cfg)),
        or_failed("busemann_oracle[tree]", busemann_oracle_tree(cfg)),
        or_failed("busemann_sum_bound", sum_bound(cfg)),
        or_failed("tits_delta", tits(cfg)),
        or_failed(
            "shadow_semicontinuity[euclidean(2)]",
            check_shadow_semicontinuity(
                &SpaceModel::euclidean(2),
                &Point::vec2(0.0, 0.0),
                &Point::vec2(2.0, 0.0),
                &ShadowCheck::default(),
            ),
        ),
    ]
}

fn evaluator(cfg: &ScenarioConfig) -> BusemannEval {
    BusemannEval { max_truncation: cfg.max_truncation, ..BusemannEval::default() }
}

fn oracle_pairs(
    cfg: &ScenarioConfig,
    name: &str,
    space: &SpaceModel,
    pairs: &[(GeodesicRef, Point)],
    tol: f64,
) -> Result<VerificationReport> {
    let mut rep = ReportBuilder::new(name, tol);
    let eval = evaluator(cfg);
    for (ray, y) in pairs {
        let closed = busemann_closed_form(space, ray, y)
            .ok_or_else(|| LabError::Unsupported(format!("no closed form in {}", space.name())))??;
        let trunc = eval.evaluate(space, ray, y)?;
        let err = (trunc.value - closed.to_f64()).abs();
        rep.max_metric("max_error", err);
        rep.max_metric("max_truncation_used", trunc.truncation);
        rep.record(err <= tol, || {
            Witness::new(vec![space.describe_point(y)]).with("closed", closed.to_f64()).with("truncated", trunc.value)
        });
    }
    Ok(rep.finish())
}

fn busemann_oracle_euclidean(cfg: &ScenarioConfig) -> Result<VerificationReport> {
    let s = SpaceModel::euclidean(2);
    let mut rng = cfg.rng(1);
    let mut pairs = Vec::new();
    for _ in 0..60 {
        let o = Point::vec2(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let th: f64 = rng.gen_range(0.0..2.0 * PI);
        let ray = s.ray_from(&o, &IdealPoint::direction(&[th.cos(), th.sin()])?)?;
        pairs.push((ray, Point::vec2(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0))));
    }
    oracle_pairs(cfg, "busemann_oracle[euclidean(2)]", &s, &pairs, cfg.tol(BUSEMANN_TOL))
}

fn busemann_oracle_hyperbolic(cfg: &ScenarioConfig) -> Result<VerificationReport> {
    let s = SpaceModel::HyperbolicPlane;
    let mut rng = cfg.rng(2);
    let mut pairs = Vec::new();
    for _ in 0..60 {
        let o = Point::half(rng.gen_range(-3.0..3.0), rng.gen_range(0.2..5.0));
        let ray = s.ray_from(&o, &IdealPoint::Infinity)?;
        pairs.push((ray, Point::half(rng.gen_range(-3.0..3.0), rng.gen_range(0.2..5.0))));
    }
    oracle_pairs(cfg, "busemann_oracle[hyperbolic]", &s, &pairs, cfg.tol(BUSEMANN_TOL))
}

fn busemann_oracle_tree(cfg: &ScenarioConfig) -> Result<VerificationReport> {
    let tree = branching_tree();
    let s = SpaceModel::tree(tree.clone());
    let lattice: Vec<Point> = tree_lattice(&tree).into_iter().map(Point::Tree).collect();
    let mut pairs = Vec::new();
    for o in &lattice {
        for end in 0..tree.end_count() {
            let ray = s.ray_from(o, &IdealPoint::TreeEnd(end))?;
            for y in &lattice {
                pairs.push((ray.clone(), y.clone()));
            }
        }
    }
    // exact: the truncated limit stabilises on integer truncations
    oracle_pairs(cfg, "busemann_oracle[tree]", &s, &pairs, 0.0)
}

fn sum_bound(cfg: &ScenarioConfig) -> Result<VerificationReport> {
    let mut rep = ReportBuilder::new("busemann_sum_bound", BUSEMANN_TOL);
    let mut rng = cfg.rng(3);
    let mut pairs: Vec<(SpaceModel, GeodesicRef, GeodesicRef)> = Vec::new();
    let e = SpaceModel::euclidean(2);
    for _ in 0..40 {
        let th: f64 = rng.gen_range(0.0..2.0 * PI);
        let xi = IdealPoint::direction(&[th.cos(), th.sin()])?;
        let mut pt = || Point::vec2(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let (c, d) = (e.ray_from(&pt(), &xi)?, e.ray_from(&pt(), &xi)?);
        pairs.push((e.clone(), c, d));
    }
    let h = SpaceModel::HyperbolicPlane;
    for k in 0..40 {
        let xi = if k % 2 == 0 { IdealPoint::Infinity } else { IdealPoint::Boundary(rng.gen_range(-2.0..2.0)) };
        let mut pt = || Point::half(rng.gen_range(-2.0..2.0), rng.gen_range(0.3..3.0));
        let (c, d) = (h.ray_from(&pt(), &xi)?, h.ray_from(&pt(), &xi)?);
        pairs.push((h.clone(), c, d));
    }
    let tree = branching_tree();
    let t = SpaceModel::tree(tree.clone());
    let lattice = tree_lattice(&tree);
    for end in 0..tree.end_count() {
        for (i, p) in lattice.iter().enumerate() {
            let q = lattice[(i * 3 + end + 1) % lattice.len()];
            let xi = IdealPoint::TreeEnd(end);
            pairs.push((t.clone(), t.ray_from(&Point::Tree(*p), &xi)?, t.ray_from(&Point::Tree(q), &xi)?));
        }
    }
    for (space, c, d) in pairs {
        let pair = RayPair::new(&space, c, d)?;
        let inner = check_busemann_sum_bound(&space, &pair)?;
        rep.max_metric("max_sum", inner.metric("sum").unwrap_or(0.0));
        let ok = inner.passed();
        rep.record(ok, || {
            let mut w = inner.witnesses.first().cloned().unwrap_or_else(|| Witness::new(vec![]));
            w.points.insert(0, space.name());
            w
        });
    }
    rep.metric("pairs", rep.checked() as f64);
    Ok(rep.finish())
}

fn tits(cfg: &ScenarioConfig) -> Result<VerificationReport> {
    let tol = cfg.tol(1e-4);
    let mut rep = ReportBuilder::new("tits_delta", tol);
    let e = SpaceModel::euclidean(2);
    let o = Point::vec2(0.0, 0.0);
    let xi = IdealPoint::direction(&[1.0, 0.0])?;
    for th in [0.01, PI / 2.0, PI] {
        let eta = IdealPoint::direction(&[th.cos(), th.sin()])?;
        let delta = tits_delta(&e, &o, &xi, &eta, 1.0)?;
        let want = (th / 2.0).sin();
        rep.max_metric("max_error", (delta - want).abs());
        rep.record((delta - want).abs() <= tol, || {
            Witness::new(vec![format!("theta={th}")]).with("delta", delta).with("sin_half", want)
        });
    }
    let tree = branching_tree();
    let t = SpaceModel::tree(tree);
    let delta = tits_delta(&t, &Point::Tree(TreePoint::Vertex(1)), &IdealPoint::TreeEnd(0), &IdealPoint::TreeEnd(1), 1.0)?;
    rep.record(delta == 1.0, || Witness::new(vec!["tree opposite ends".into()]).with("delta", delta));
    Ok(rep.finish())
}

fn dir(x: f64, y: f64) -> IdealPoint {
    IdealPoint::direction(&[x, y]).expect("nonzero direction")
}

fn transfers(cfg: &ScenarioConfig) -> Vec<VerificationReport> {
    let tol = cfg.tol(TRANSFER_TOL);
    let cases = transfer_cases();
    let mut out = vec![or_failed("horospherical_transfer", horo_transfer_examples())];
    let mut nonneg = ReportBuilder::new("double_transfer_shift_nonnegative", tol);
    for (name, space, pairs) in &cases {
        let check = format!("double_transfer_identity[{name}]");
        let r = (|| -> Result<VerificationReport> {
            let mut rep = ReportBuilder::new(&check, tol);
            for (a, b, s) in pairs {
                let x = a.point_at_scalar(*s)?;
                let r = double_transfer(space, a, b, &x)?;
                let moved = space.distance(&r.image, &x)?;
                let shift = r.shift.to_f64();
                nonneg.record(shift >= -tol, || Witness::new(vec![space.describe_point(&x)]).with("shift", shift));
                rep.max_metric("max_shift", shift.abs());
                rep.max_metric("max_residual", r.residuals.iter().copied().fold(0.0, f64::max));
                let exact_ok = !space.as_tree().is_some() || (r.shift.is_zero() && r.predicted_shift.is_zero());
                rep.record(shift.abs() <= tol && moved <= tol && exact_ok, || {
                    Witness::new(vec![space.describe_point(&x), space.describe_point(&r.image)])
                        .with("shift", shift)
                        .with("predicted", r.predicted_shift.to_f64())
                });
                rep.record((shift - r.predicted_shift.to_f64()).abs() <= tol, || {
                    Witness::new(vec![space.describe_point(&x)])
                        .with("shift", shift)
                        .with("predicted", r.predicted_shift.to_f64())
                });
            }
            Ok(rep.finish())
        })();
        out.push(or_failed(&check, r));
    }
    out.push(nonneg.finish());
    out.push(or_failed("n_fold_transfer[hyperbolic]", n_fold(cfg)));
    out
}

type TransferCase = (&'static str, SpaceModel, Vec<(GeodesicRef, GeodesicRef, Scalar)>);

fn transfer_cases() -> Vec<TransferCase> {
    let mut cases = Vec::new();
    let e = SpaceModel::euclidean(2);
    let mut ep = Vec::new();
    for (u, anchors) in [
        ((1.0, 0.0), [(0.0, 0.0), (5.0, 2.0)]),
        ((0.6, 0.8), [(1.0, -1.0), (-2.0, 3.0)]),
        ((-1.0, 1.0), [(0.0, 0.0), (0.0, 4.0)]),
    ] {
        let line = |p: (f64, f64)| e.line_through(&dir(-u.0, -u.1), &dir(u.0, u.1), Some(&Point::vec2(p.0, p.1)));
        if let (Ok(a), Ok(b)) = (line(anchors[0]), line(anchors[1])) {
            for s in [-2.0, 0.0, 1.5] {
                ep.push((a.clone(), b.clone(), Scalar::Float(s)));
            }
        }
    }
    cases.push(("euclidean(2)", e, ep));

    let tree = branching_tree();
    let t = SpaceModel::tree(tree);
    let mut tp = Vec::new();
    for (from, other) in [(0usize, 2usize), (2, 0)] {
        if let (Ok(a), Ok(b)) = (
            t.line_through(&IdealPoint::TreeEnd(from), &IdealPoint::TreeEnd(1), None),
            t.line_through(&IdealPoint::TreeEnd(other), &IdealPoint::TreeEnd(1), None),
        ) {
            for k in [0, 1, 3, 7] {
                tp.push((a.clone(), b.clone(), Scalar::Exact(rat(k, 4))));
            }
        }
    }
    cases.push(("tree", t, tp));

    let h = SpaceModel::HyperbolicPlane;
    let mut hp = Vec::new();
    for (a0, b0, xi) in [
        (IdealPoint::Boundary(0.0), IdealPoint::Boundary(3.0), IdealPoint::Infinity),
        (IdealPoint::Boundary(-1.0), IdealPoint::Boundary(2.5), IdealPoint::Boundary(1.0)),
        (IdealPoint::Infinity, IdealPoint::Boundary(-2.0), IdealPoint::Boundary(0.5)),
    ] {
        if let (Ok(a), Ok(b)) = (h.line_through(&a0, &xi, None), h.line_through(&b0, &xi, None)) {
            for s in [-1.0, 0.0, 0.7] {
                hp.push((a.clone(), b.clone(), Scalar::Float(s)));
            }
        }
    }
    cases.push(("hyperbolic", h, hp));
    cases
}

fn horo_transfer_examples() -> Result<VerificationReport> {
    let mut rep = ReportBuilder::new("horospherical_transfer", TRANSFER_TOL);
    let e = SpaceModel::euclidean(2);
    let a = e.line_through(&dir(-1.0, 0.0), &dir(1.0, 0.0), Some(&Point::vec2(0.0, 0.0)))?;
    let b = e.line_through(&dir(-1.0, 0.0), &dir(1.0, 0.0), Some(&Point::vec2(-4.0, 1.0)))?;
    let m = horospherical_transfer(&e, &a, &b, &dir(1.0, 0.0), &Point::vec2(3.0, 0.0))?;
    let err = e.distance(&m.point, &Point::vec2(3.0, 1.0))?;
    rep.record(err <= TRANSFER_TOL, || Witness::new(vec![e.describe_point(&m.point)]).with("error", err));

    let h = SpaceModel::HyperbolicPlane;
    let a = h.line_through(&IdealPoint::Boundary(-1.0), &IdealPoint::Boundary(1.0), None)?;
    let v = h.line_through(&IdealPoint::Infinity, &IdealPoint::Boundary(1.0), None)?;
    for s in [-0.5, 0.0, 0.4, 1.2] {
        let m = horospherical_transfer(&h, &a, &v, &IdealPoint::Boundary(1.0), &a.point_at(s)?)?;
        rep.max_metric("max_residual", m.residual);
        rep.record(m.residual <= TRANSFER_TOL, || Witness::new(vec![h.describe_point(&m.point)]).with("residual", m.residual));
    }

    let t = SpaceModel::tree(branching_tree());
    let a = t.line_through(&IdealPoint::TreeEnd(0), &IdealPoint::TreeEnd(1), None)?;
    let b = t.line_through(&IdealPoint::TreeEnd(2), &IdealPoint::TreeEnd(1), None)?;
    let m = horospherical_transfer(&t, &a, &b, &IdealPoint::TreeEnd(1), &a.point_at_scalar(Scalar::Exact(rat(1, 4)))?)?;
    // 1/4 before the branch vertex, which is b(3/2)
    rep.record(m.param == Scalar::Exact(rat(5, 4)) && m.residual == 0.0, || {
        Witness::new(vec![t.describe_point(&m.point)]).with("param", m.param.to_f64())
    });
    Ok(rep.finish())
}

fn n_fold(cfg: &ScenarioConfig) -> Result<VerificationReport> {
    let tol = cfg.tol(1e-6);
    let mut rep = ReportBuilder::new("n_fold_transfer[hyperbolic]", tol);
    let h = SpaceModel::HyperbolicPlane;
    let a = h.line_through(&IdealPoint::Boundary(0.0), &IdealPoint::Infinity, None)?;
    let b = h.line_through(&IdealPoint::Boundary(3.0), &IdealPoint::Infinity, None)?;
    for n in [2usize, 5, 16] {
        for t0 in [0.0, -0.8] {
            let mut x = a.point_at(t0)?;
            for _ in 0..n {
                x = double_transfer_shifted(&h, &a, &b, &x, Scalar::Float(1.0 / n as f64))?.image;
            }
            let err = h.distance(&x, &a.point_at(t0 + 1.0)?)?;
            rep.max_metric("max_error", err);
            rep.record(err <= tol, || Witness::new(vec![format!("n={n}"), format!("t={t0}")]).with("error", err));
        }
    }
    Ok(rep.finish())
}

/// The hyperbolic scissors with base `(-1, 1)` and opposite line `(-2, 2)`.
pub fn hyperbolic_scissors() -> Result<ScissorsConfig> {
    ScissorsConfig::hyperbolic(-1.0, 1.0, -2.0, 2.0)
}

/// Four ends on a star; every line passes through the centre vertex.
pub fn tree_scissors() -> Result<(SpaceModel, ScissorsConfig)> {
    let tree = MetricTree::from_edges(
        5,
        &[(0, 1, rat(1, 2)), (0, 2, rat(1, 2)), (0, 3, rat(1, 2)), (0, 4, rat(1, 2))],
        2,
        &[1, 2, 3, 4],
    )?;
    let s = SpaceModel::tree(tree);
    let cfg = ScissorsSpec {
        a_minus: IdealPoint::TreeEnd(0),
        a_plus: IdealPoint::TreeEnd(1),
        d_minus: IdealPoint::TreeEnd(2),
        d_plus: IdealPoint::TreeEnd(3),
        anchors: None,
        center: None,
    }
    .build(&s)?;
    Ok((s, cfg))
}

/// Flat scissors: four parallel lines, all on the x-axis.
pub fn euclidean_scissors() -> Result<(SpaceModel, ScissorsConfig)> {
    let e = SpaceModel::euclidean(2);
    let cfg = ScissorsSpec {
        a_minus: dir(-1.0, 0.0),
        a_plus: dir(1.0, 0.0),
        d_minus: dir(-1.0, 0.0),
        d_plus: dir(1.0, 0.0),
        anchors: Some([Point::vec2(0.0, 0.0), Point::vec2(-2.0, 0.0), Point::vec2(1.0, 0.0), Point::vec2(4.0, 0.0)]),
        center: Some(Point::vec2(0.3, 0.0)),
    }
    .build(&e)?;
    Ok((e, cfg))
}

fn scissors_case(
    name: &str,
    space: &SpaceModel,
    cfg: &ScissorsConfig,
    tol: f64,
    expect: impl Fn(f64, f64, bool) -> bool,
) -> Result<VerificationReport> {
    let valid = validate_scissors(space, cfg);
    let mut rep = ReportBuilder::new(name, tol);
    rep.record(valid.passed(), || Witness::new(vec!["incidence".into()]).with("failures", valid.failures as f64));
    let degenerate = valid.metric("degenerate") == Some(1.0);
    let sh = scissors_shift(space, cfg)?;
    let (c, f) = (sh.by_composition.to_f64(), sh.by_formula.to_f64());
    rep.metric("by_composition", c).metric("by_formula", f).metric("degenerate", if degenerate { 1.0 } else { 0.0 });
    rep.record((c - f).abs() <= tol, || Witness::new(vec!["agreement".into()]).with("by_composition", c).with("by_formula", f));
    rep.record(c >= -TRANSFER_TOL && f >= -TRANSFER_TOL, || {
        Witness::new(vec!["nonnegative".into()]).with("by_composition", c).with("by_formula", f)
    });
    if space.as_tree().is_some() {
        rep.record(sh.by_composition.is_zero() && sh.by_formula.is_zero(), || {
            Witness::new(vec!["exact zero".into()]).with("by_composition", c).with("by_formula", f)
        });
    }
    rep.record(expect(c, f, degenerate), || {
        Witness::new(vec!["expected value".into()]).with("by_composition", c).with("by_formula", f)
    });
    Ok(rep.finish())
}

fn scissors(cfg: &ScenarioConfig) -> Vec<VerificationReport> {
    let tol = cfg.tol(1e-6);
    vec![
        or_failed(
            "scissors[euclidean(2)]",
            euclidean_scissors().and_then(|(s, c)| {
                scissors_case("scissors[euclidean(2)]", &s, &c, tol, |c, f, deg| deg && c.abs() <= tol && f.abs() <= tol)
            }),
        ),
        or_failed(
            "scissors[tree]",
            tree_scissors().and_then(|(s, c)| scissors_case("scissors[tree]", &s, &c, tol, |c, f, deg| deg && c == 0.0 && f == 0.0)),
        ),
        or_failed(
            "scissors[hyperbolic]",
            hyperbolic_scissors().and_then(|c| {
                scissors_case("scissors[hyperbolic]", &SpaceModel::HyperbolicPlane, &c, tol, |c, f, deg| {
                    !deg && c > 0.01 && f > 0.01
                })
            }),
        ),
        or_failed("scissors_normalization_invariance", normalization(cfg)),
        or_failed("scissors_shift_continuity", continuity()),
    ]
}

fn normalization(cfg: &ScenarioConfig) -> Result<VerificationReport> {
    let tol = cfg.tol(1e-8);
    let mut rep = ReportBuilder::new("scissors_normalization_invariance", tol);
    let h = SpaceModel::HyperbolicPlane;
    let sc = hyperbolic_scissors()?;
    let base = scissors_shift_by_formula(&h, &sc, Scalar::ZERO, Scalar::ZERO)?.to_f64();
    for (p, q) in [(0.5, 0.0), (-1.0, 0.3), (2.0, -1.5), (0.25, 0.75)] {
        let v = scissors_shift_by_formula(&h, &sc, Scalar::Float(p), Scalar::Float(q))?.to_f64();
        rep.max_metric("max_formula_drift", (v - base).abs());
        rep.record((v - base).abs() <= tol, || Witness::new(vec![format!("p={p}"), format!("q={q}")]).with("delta", v).with("base", base));
    }
    let ptol = cfg.tol(1e-6);
    let mut probe_drift: f64 = 0.0;
    for probe in [-0.7, 0.4, 1.1] {
        let v = scissors_shift_by_composition(&h, &sc, Scalar::Float(probe))?.to_f64();
        probe_drift = probe_drift.max((v - base).abs());
        rep.record((v - base).abs() <= ptol, || Witness::new(vec![format!("probe={probe}")]).with("delta", v).with("base", base));
    }
    rep.metric("max_probe_drift", probe_drift);
    let (t, tc) = tree_scissors()?;
    for k in [1, 3] {
        let v = scissors_shift_by_formula(&t, &tc, Scalar::Exact(rat(k, 2)), Scalar::Exact(rat(-k, 4)))?;
        rep.record(v.is_zero(), || Witness::new(vec![format!("tree k={k}")]).with("delta", v.to_f64()));
    }
    Ok(rep.finish())
}

fn continuity() -> Result<VerificationReport> {
    let mut rep = ReportBuilder::new("scissors_shift_continuity", 0.1);
    let h = SpaceModel::HyperbolicPlane;
    let base = scissors_shift(&h, &hyperbolic_scissors()?)?.by_formula.to_f64();
    let eps = 1e-3;
    for k in 0..8 {
        let sgn = |bit: usize| if (k >> bit) & 1 == 0 { eps } else { -eps };
        let sc = ScissorsConfig::hyperbolic(-1.0 + sgn(0), 1.0 + sgn(1), -2.0 + sgn(2), 2.0 - sgn(0))?;
        let sh = scissors_shift(&h, &sc)?;
        let change = (sh.by_formula.to_f64() - base).abs();
        rep.max_metric("max_change", change);
        rep.record(change < 0.1, || Witness::new(vec![format!("perturbation {k}")]).with("change", change));
    }
    Ok(rep.finish())
}

/// Heights used for tapes: the threshold `P` depends on the norm.
pub const TAPE_HEIGHTS: [(&str, f64); 2] = [("euclidean(2)", 0.6), ("minkowski_lp(3)", 0.8)];

fn tapes(cfg: &ScenarioConfig) -> Vec<VerificationReport> {
    let _ = cfg;
    let mut out = Vec::new();
    for (space, h) in [
        (SpaceModel::euclidean(2), TAPE_HEIGHTS[0].1),
        (SpaceModel::minkowski(3.0).expect("p > 1"), TAPE_HEIGHTS[1].1),
    ] {
        let name = format!("p_tape[{}, p=6]", space.name());
        out.push(or_failed(&name, tape_case(&name, &space, h)));
    }
    out.push(or_failed("p_tape_threshold", tape_threshold()));
    out.push(or_failed("third_division_forced", third_division(false)));
    out.push(or_failed("third_division_perturbed", third_division(true)));
    out
}

fn x_axis(space: &SpaceModel) -> Result<GeodesicRef> {
    space.line_through(&dir(-1.0, 0.0), &dir(1.0, 0.0), Some(&Point::vec2(0.0, 0.0)))
}

fn tape_case(name: &str, space: &SpaceModel, height: f64) -> Result<VerificationReport> {
    let p = 6;
    let a = x_axis(space)?;
    let tape = build_p_tape(space, &a, p, 1.0, height)?;
    let valid = validate_p_tape(&tape)?;
    let mut rep = ReportBuilder::new(name, METRIC_TOL);
    rep.metric("height", height).metric("max_error", valid.metric("max_error").unwrap_or(0.0));
    rep.record(valid.passed(), || Witness::new(vec!["validate_p_tape".into()]).with("failures", valid.failures as f64));
    for j in 1..=p {
        for z in [tape.z_min, 0, tape.z_max] {
            let x = tape.get(1, j, z)?;
            let want = tape_position(p, j, z)?;
            let want = *want.numer() as f64 / *want.denom() as f64;
            let err = space.distance(x, &a.point_at(want)?)?;
            rep.max_metric("max_position_error", err);
            rep.record(err <= METRIC_TOL, || Witness::new(vec![format!("x[1,{j},{z}]")]).with("error", err));
        }
    }
    let shifted = validate_p_tape(&tape.relabeled(1))?;
    rep.record(shifted.passed(), || Witness::new(vec!["relabeled".into()]).with("failures", shifted.failures as f64));
    Ok(rep.finish())
}

fn tape_threshold() -> Result<VerificationReport> {
    let mut rep = ReportBuilder::new("p_tape_threshold", 0.0);
    let e = SpaceModel::euclidean(2);
    let a = x_axis(&e)?;
    for (p, h, accept) in [(3usize, 0.2, false), (49, 0.2, false), (5, 0.6, false), (6, 0.6, true)] {
        let got = build_p_tape(&e, &a, p, 1.0, h);
        let ok = match (&got, accept) {
            (Ok(_), true) | (Err(LabError::Precondition(_)), false) => true,
            _ => false,
        };
        rep.record(ok, || Witness::new(vec![format!("p={p}"), format!("h={h}")]).with("accepted", got.is_ok() as u8 as f64));
    }
    Ok(rep.finish())
}

fn third_division(perturb: bool) -> Result<VerificationReport> {
    let e = SpaceModel::euclidean(2);
    let name = if perturb { "third_division_perturbed" } else { "third_division_forced" };
    let mut rep = ReportBuilder::new(name, METRIC_TOL);
    for p in [2usize, 3, 5, 8] {
        let mut y: Vec<Vec<Point>> = (0..4).map(|i| vec![Point::vec2(i as f64, 0.0); p]).collect();
        if perturb {
            y[1][p - 1] = Point::vec2(1.0, 0.25);
        }
        let r = check_third_division(&e, &y)?;
        let ok = if perturb { !r.relations_hold && !r.report.passed() } else { r.relations_hold && r.collapsed };
        rep.record(ok, || Witness::new(vec![format!("p={p}")]).with("spread_1", r.spread[0]).with("spread_2", r.spread[1]));
    }
    Ok(rep.finish())
}

fn grasshopper(cfg: &ScenarioConfig) -> Vec<VerificationReport> {
    vec![
        or_failed("grasshopper[real_line]", grasshopper_line()),
        or_failed("grasshopper[euclidean(2)]", grasshopper_plane(cfg)),
        or_failed("grasshopper_components[tree]", grasshopper_tree_components()),
        or_failed("grasshopper_isometry[tree-swap]", grasshopper_tree_isometry()),
        or_failed("tree_swap_extension", tree_swap_extension()),
    ]
}

fn grasshopper_line() -> Result<VerificationReport> {
    let mut rep = ReportBuilder::new("grasshopper[real_line]", 0.0);
    let r = SpaceModel::RealLine;
    let g = |a: f64, b: f64| grasshopper_distance(&r, &Point::real(a), &Point::real(b), GrasshopperMode::Analytic, None);
    let three = g(0.0, 3.0)?;
    rep.record(three == Hops::Finite(3), || Witness::new(vec!["0".into(), "3".into()]).with("hops", 3.0));
    let never = g(0.0, 2.5)?;
    rep.record(never == Hops::Infinite, || Witness::new(vec!["0".into(), "2.5".into()]));
    // all jump sequences of length <= 5 from 0 stay on the integers
    let mut frontier = vec![0.0f64];
    let mut reached = false;
    for _ in 0..5 {
        frontier = frontier.iter().flat_map(|x| [x - 1.0, x + 1.0]).collect();
        reached |= frontier.contains(&2.5);
    }
    rep.record(!reached, || Witness::new(vec!["brute force".into()]));
    Ok(rep.finish())
}

fn grasshopper_plane(cfg: &ScenarioConfig) -> Result<VerificationReport> {
    let e = SpaceModel::euclidean(2);
    let mut rep = ReportBuilder::new("grasshopper[euclidean(2)]", 0.0);
    let mut rng = cfg.rng(4);
    for k in 0..50 {
        let x = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
        let y = match k % 5 {
            0 => [x[0] + rng.gen_range(-0.6..0.6), x[1] + rng.gen_range(-0.6..0.6)],
            1 => {
                let th: f64 = rng.gen_range(0.0..2.0 * PI);
                [x[0] + th.cos(), x[1] + th.sin()]
            }
            _ => [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)],
        };
        let (px, py) = (Point::Vector(x.to_vec()), Point::Vector(y.to_vec()));
        let analytic = grasshopper_distance(&e, &px, &py, GrasshopperMode::Analytic, None)?;
        let mut nodes: Vec<Point> = euclidean_jump_path(&x, &y)?.into_iter().map(Point::Vector).collect();
        for _ in 0..6 {
            nodes.push(Point::vec2(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)));
        }
        let graph = UnitJumpGraph::new(&e, nodes)?;
        let bfs = grasshopper_distance(&e, &px, &py, GrasshopperMode::Graph, Some(&graph))?;
        rep.record(analytic == bfs, || {
            Witness::new(vec![e.describe_point(&px), e.describe_point(&py)])
                .with("analytic", hops_value(analytic))
                .with("graph", hops_value(bfs))
        });
    }
    Ok(rep.finish())
}

fn hops_value(h: Hops) -> f64 {
    match h {
        Hops::Finite(k) => k as f64,
        Hops::Infinite => f64::INFINITY,
    }
}

fn grasshopper_tree_components() -> Result<VerificationReport> {
    let tps = three_edge_point_set()?;
    let space = SpaceModel::tree((*tps.tree).clone());
    let mut rep = ReportBuilder::new("grasshopper_components[tree]", 0.0);
    let graph = UnitJumpGraph::new(&space, tps.domain_points())?;
    let na = tps.a_alpha.len();
    let comps = graph.components();
    rep.metric("components", comps.len() as f64).metric("unit_pairs", graph.edge_count() as f64);
    for c in &comps {
        rep.record(c.iter().all(|&i| i < na) || c.iter().all(|&i| i >= na), || {
            Witness::new(c.iter().map(|&i| space.describe_point(&graph.nodes[i])).collect())
        });
    }
    // every unit jump from A lands back in A
    let tree = &tps.tree;
    for p in tps.a_alpha.iter().chain(&tps.a_beta) {
        for q in tree.unit_sphere(p) {
            let inside = tps.a_alpha.contains(&q) || tps.a_beta.contains(&q);
            rep.record(inside, || Witness::new(vec![tree.describe(p), tree.describe(&q)]));
        }
    }
    Ok(rep.finish())
}

fn grasshopper_tree_isometry() -> Result<VerificationReport> {
    let tps = three_edge_point_set()?;
    let space = SpaceModel::tree((*tps.tree).clone());
    let a = tps.domain_points();
    let graph = UnitJumpGraph::new(&space, a.clone())?;
    let f = tree_swap_bijection(&tps);
    let mut rep = ReportBuilder::new("grasshopper_isometry[tree-swap]", 0.0);
    let images: Vec<usize> = a
        .iter()
        .map(|p| f.apply(p).ok().and_then(|q| graph.index_of(&q)))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| LabError::Domain("swap leaves A".into()))?;
    for i in 0..a.len() {
        for j in 0..a.len() {
            let (g, gf) = (graph.hops(i, j), graph.hops(images[i], images[j]));
            let exact = grasshopper_distance(&space, &a[i], &a[j], GrasshopperMode::Analytic, None)?;
            rep.record(g == gf && g == exact, || {
                Witness::new(vec![space.describe_point(&a[i]), space.describe_point(&a[j])])
                    .with("g", hops_value(g))
                    .with("g_image", hops_value(gf))
                    .with("g_exact", hops_value(exact))
            });
        }
    }
    Ok(rep.finish())
}

fn tree_swap_extension() -> Result<VerificationReport> {
    let tps = three_edge_point_set()?;
    let space = SpaceModel::tree((*tps.tree).clone());
    let f = tree_swap_bijection(&tps);
    let sample = SampleSet::from_points(&space, tps.node_set())?;
    let keep = preserves_unit_distance(&space, &space, &f, &sample, UnitMode::Eq, 0.0);
    let iso = is_isometry(&space, &space, &f, &sample, 0.0);
    let mut rep = ReportBuilder::new("tree_swap_extension", 0.0);
    rep.metric("related_pairs", keep.metric("related_pairs").unwrap_or(0.0));
    rep.metric("nodes", sample.len() as f64);
    rep.record(keep.passed(), || Witness::new(vec!["unit distance".into()]).with("failures", keep.failures as f64));
    rep.record(!iso.passed(), || Witness::new(vec!["isometry".into()]).with("unexpected_pass", 1.0));
    let y = Point::Tree(TreePoint::Vertex(0));
    let z = Point::Tree(tps.a_alpha[0]);
    let (d1, d2) = (space.exact_distance(&y, &z)?, space.exact_distance(&y, &f.apply(&z)?)?);
    rep.record(d1 != d2, || Witness::new(vec![space.describe_point(&y), space.describe_point(&z)]));
    let mut out = rep.finish();
    if out.passed() {
        out.witnesses = iso.witnesses;
    }
    Ok(out)
}

fn counterexamples(cfg: &ScenarioConfig) -> Vec<VerificationReport> {
    COUNTEREXAMPLES
        .iter()
        .map(|name| {
            let check = format!("counterexample[{name}]");
            or_failed(
                &check,
                counterexample(name, cfg.seed.unwrap_or(0)).map(|c| {
                    let o = c.run();
                    let mut rep = ReportBuilder::new(&check, UNIT_TOL);
                    rep.metric("related_pairs", o.preserves_unit.metric("related_pairs").unwrap_or(0.0));
                    rep.metric("isometry_violations", o.isometry.failures as f64);
                    rep.metric("sample_size", c.sample.len() as f64);
                    rep.record(o.preserves_unit.passed(), || {
                        let mut w = o.preserves_unit.witnesses.first().cloned().unwrap_or_else(|| Witness::new(vec![]));
                        w.points.insert(0, "unit distance".into());
                        w
                    });
                    rep.record(!o.isometry.passed(), || Witness::new(vec!["isometry".into()]).with("unexpected_pass", 1.0));
                    let mut out = rep.finish();
                    if out.passed() {
                        out.witnesses = o.isometry.witnesses;
                    }
                    out
                }),
            )
        })
        .collect()
}
