//! Scenario files, the built-in catalog and the runner behind the CLI.
//!
//! A scenario is a JSON document naming a problem (a builtin or an explicit
//! grid problem), an ε-ladder and the checks to run. Running it produces a
//! JSON report, a CSV summary and a list of pass/fail checks.

mod builtins;
mod schema;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

pub use builtins::{builtin_case, builtin_problems, catalog, random_rv, BuiltinCase, BuiltinParams, CatalogEntry, CheckOutcome};
pub use schema::{ConeSpec, EquivalenceSpec, FamilySpec, ProblemSpec, RvSpec};

use crate::cone::Cone;
use crate::families::{indicator_family, linear_family, oriented_distance_family, translative_family, DiscretePreorder, TranslativeSpec};
use crate::family::ScalarFamily;
use crate::lattice::PointCloudSet;
use crate::solver::{
    construct_solution, is_infimizer, min_set, minimizing_net, solution_report, weierstrass_solve, Mode, SetValue, SetValuedProblem,
    SolutionReport,
};
use crate::stochastic::{avar_family, c_distribution_family, flatten, fsd_leq, ssd_leq, DiscreteRV};
use crate::vector::{base_direction_candidates, c_extend, check_weff_equivalence, EquivalenceKind, VectorProblem};

pub const SCHEMA_VERSION: u32 = 1;

pub const DEFAULT_LADDER: [f64; 3] = [0.5, 0.1, 0.01];

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: malformed JSON: {message}")]
    Parse { path: String, message: String },
    /// `pointer` is a JSON pointer such as `/problem/values/3`.
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("unknown builtin scenario '{0}'")]
    UnknownBuiltin(String),
    #[error("{0}")]
    Check(String),
}

impl ScenarioError {
    /// Errors caused by the input rather than by a computation.
    pub fn is_input_error(&self) -> bool {
        matches!(self, ScenarioError::Parse { .. } | ScenarioError::Schema { .. } | ScenarioError::UnknownBuiltin(_))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema_version: u32,
    pub name: String,
    pub problem: ProblemSpec,
    pub eps_ladder: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<CheckKind>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formats: Option<Vec<Format>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    MinSets,
    Infimizer,
    Solution,
    Net,
    WellPosedness,
    Equivalence,
    Weierstrass,
}

fn schema(pointer: &str, message: impl std::fmt::Display) -> ScenarioError {
    ScenarioError::Schema { pointer: pointer.to_string(), message: message.to_string() }
}

impl Scenario {
    /// A scenario running builtin `name` with the default ladder.
    pub fn builtin(name: &str) -> Result<Self, ScenarioError> {
        if !catalog().iter().any(|e| e.name == name) {
            return Err(ScenarioError::UnknownBuiltin(name.to_string()));
        }
        Ok(Scenario {
            schema_version: SCHEMA_VERSION,
            name: name.to_string(),
            problem: ProblemSpec::Builtin { builtin: name.to_string(), grid: None },
            eps_ladder: DEFAULT_LADDER.to_vec(),
            checks: None,
            seed: None,
            tol: None,
            output: None,
        })
    }

    /// Checks that serde cannot express.
    pub fn validate(&self) -> Result<(), ScenarioError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(schema("/schema_version", format!("unsupported version {}, expected {SCHEMA_VERSION}", self.schema_version)));
        }
        validate_ladder(&self.eps_ladder)?;
        if let Some(t) = self.tol {
            if !(t.is_finite() && t >= 0.0) {
                return Err(schema("/tol", "tolerance must be finite and nonnegative"));
            }
        }
        match &self.problem {
            ProblemSpec::Builtin { builtin, grid } => {
                if !catalog().iter().any(|e| e.name == builtin.as_str()) {
                    return Err(ScenarioError::UnknownBuiltin(builtin.clone()));
                }
                if *grid == Some(0) {
                    return Err(schema("/problem/grid", "grid must be positive"));
                }
            }
            ProblemSpec::SetValued { grid, values, .. } => {
                if grid.len() != values.len() {
                    return Err(schema("/problem/values", format!("{} values for {} grid points", values.len(), grid.len())));
                }
            }
            ProblemSpec::Vector { s, f, .. } => {
                if s.len() != f.len() {
                    return Err(schema("/problem/f", format!("{} images for {} points", f.len(), s.len())));
                }
            }
            ProblemSpec::Stochastic { .. } => {}
        }
        Ok(())
    }
}

/// Strictly decreasing, positive and finite; errors point at the first bad entry.
pub fn validate_ladder(ladder: &[f64]) -> Result<(), ScenarioError> {
    if ladder.is_empty() {
        return Err(schema("/eps_ladder", "ladder must not be empty"));
    }
    for (i, &e) in ladder.iter().enumerate() {
        if !(e.is_finite() && e > 0.0) {
            return Err(schema(&format!("/eps_ladder/{i}"), format!("{e} is not a positive finite number")));
        }
        if i > 0 && e >= ladder[i - 1] {
            return Err(schema(&format!("/eps_ladder/{i}"), "ladder must be strictly decreasing"));
        }
    }
    Ok(())
}

/// Parses and validates a scenario from text; `origin` only labels errors.
pub fn parse_scenario(text: &str, origin: &str) -> Result<Scenario, ScenarioError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let sc: Scenario = match serde_path_to_error::deserialize(de) {
        Ok(s) => s,
        Err(e) => {
            let prefix = schema::pointer_of(e.path());
            let inner = e.into_inner();
            return Err(match inner.classify() {
                serde_json::error::Category::Data => {
                    let (pointer, message) = schema::split_pointer(&prefix, &inner.to_string());
                    let pointer = if pointer.is_empty() { "/".to_string() } else { pointer };
                    schema(&pointer, message)
                }
                _ => ScenarioError::Parse { path: origin.to_string(), message: inner.to_string() },
            });
        }
    };
    sc.validate()?;
    Ok(sc)
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario, ScenarioError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| ScenarioError::Io { path: path.to_path_buf(), source })?;
    parse_scenario(&text, &path.display().to_string())
}

pub fn save_scenario(sc: &Scenario, path: impl AsRef<Path>) -> Result<(), ScenarioError> {
    let text = serde_json::to_string_pretty(sc).map_err(|e| ScenarioError::Check(e.to_string()))?;
    write_atomic(path.as_ref(), format!("{text}\n").as_bytes())
}

pub fn list_builtins() -> Vec<CatalogEntry> {
    catalog()
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), ScenarioError> {
    let io = |source| ScenarioError::Io { path: path.to_path_buf(), source };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io)?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    let mut f = fs::File::create(&tmp).map_err(io)?;
    f.write_all(bytes).map_err(io)?;
    f.sync_all().map_err(io)?;
    drop(f);
    fs::rename(&tmp, path).map_err(io)
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Overrides the scenario's output directory; `None` in both means nothing is written.
    pub out_dir: Option<PathBuf>,
    /// Overrides the scenario's formats; the default is both.
    pub formats: Option<Vec<Format>>,
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub name: String,
    pub checks: Vec<CheckOutcome>,
    pub json: String,
    pub csv: String,
    pub files: Vec<PathBuf>,
}

impl RunOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn to_cone(spec: &ConeSpec) -> Result<Cone, ScenarioError> {
    let c = match spec {
        ConeSpec::Orthant { d } => Cone::orthant(*d),
        ConeSpec::Halfspace { normal } => Cone::halfspace(normal),
        ConeSpec::Ray { direction } => Cone::ray(direction),
        ConeSpec::Lexicographic {} => Cone::lexicographic(),
        ConeSpec::Generators { generators, dual_generators } => {
            Cone::new(generators.clone(), dual_generators.clone()).map_err(|e| schema("/problem/cone", e))?
        }
    };
    Ok(c)
}

fn to_family(spec: &FamilySpec, cone: &Cone) -> Result<ScalarFamily, ScenarioError> {
    let bad = |e: crate::error::FamilyError| schema("/problem/family", e);
    match spec {
        FamilySpec::Linear { directions, base } => linear_family(cone, directions, base.as_deref()).map_err(bad),
        FamilySpec::Translative { e, anchors } => {
            let t = TranslativeSpec::new(cone.clone(), e.clone(), anchors.clone()).map_err(bad)?;
            translative_family(&t, None).map_err(bad)
        }
        FamilySpec::OrientedDistance { anchors } => oriented_distance_family(cone, anchors).map_err(bad),
        FamilySpec::Indicator { ground, relation } => {
            let relation = relation.clone().unwrap_or_else(|| {
                ground.iter().map(|a| ground.iter().map(|b| cone.leq(a, b, crate::cone::DEFAULT_TOL)).collect()).collect()
            });
            let pre = DiscretePreorder::new(ground.clone(), relation).map_err(bad)?;
            indicator_family(&pre).map_err(bad)
        }
    }
}

fn to_rv(spec: &RvSpec, pointer: &str) -> Result<DiscreteRV, ScenarioError> {
    let r = match spec {
        RvSpec::Explicit { atoms, probs } => DiscreteRV::new(atoms.clone(), probs.clone()),
        RvSpec::Uniform { atoms } => DiscreteRV::uniform(atoms.clone()),
        RvSpec::TwoPoint { a, b, p } => DiscreteRV::two_point(a.clone(), b.clone(), *p),
    };
    r.map_err(|e| schema(pointer, e))
}

fn check_err(e: impl std::fmt::Display) -> ScenarioError {
    ScenarioError::Check(e.to_string())
}

fn build_case(sc: &Scenario) -> Result<BuiltinCase, ScenarioError> {
    let seed = sc.seed.unwrap_or(0);
    match &sc.problem {
        ProblemSpec::Builtin { builtin, grid } => {
            builtin_case(builtin, &BuiltinParams { grid: *grid, seed, ladder: sc.eps_ladder.clone() })
        }
        ProblemSpec::SetValued { grid, values, cone, family } => {
            let cone = to_cone(cone)?;
            let fam = to_family(family, &cone)?;
            for (i, v) in values.iter().enumerate() {
                if let Some(points) = v {
                    if let Some(j) = points.iter().position(|z| z.len() != cone.d) {
                        return Err(schema(&format!("/problem/values/{i}/{j}"), format!("point must have {} coordinates", cone.d)));
                    }
                }
            }
            let vals = values
                .iter()
                .map(|v| match v {
                    None => SetValue::Empty,
                    Some(points) if points.is_empty() => SetValue::Empty,
                    Some(points) => SetValue::Cloud(PointCloudSet::with_cone(points.clone(), cone.clone())),
                })
                .collect();
            let prob = SetValuedProblem::new(&sc.name, grid.clone(), vals, fam).map_err(|e| schema("/problem", e))?;
            Ok(BuiltinCase { problems: vec![prob], ..Default::default() })
        }
        ProblemSpec::Vector { s, f, cone, e, convex, equivalence } => {
            let cone = to_cone(cone)?;
            let vp = VectorProblem::new(&sc.name, s.clone(), f.clone(), cone.clone(), e.clone(), *convex)
                .map_err(|err| schema("/problem", err))?;
            let (kind, fam) = match equivalence {
                EquivalenceSpec::LinearBase => {
                    let dirs = base_direction_candidates(&vp);
                    let fam = linear_family(&cone, &dirs, Some(e)).map_err(|err| schema("/problem/e", err))?;
                    (EquivalenceKind::LinearBase { directions: dirs }, fam)
                }
                EquivalenceSpec::Translative => {
                    let t = TranslativeSpec::new(cone.clone(), e.clone(), f.clone()).map_err(|err| schema("/problem/e", err))?;
                    let fam = translative_family(&t, None).map_err(|err| schema("/problem/e", err))?;
                    (EquivalenceKind::Translative { extra_anchors: Vec::new() }, fam)
                }
            };
            let prob = c_extend(&vp, &fam).map_err(check_err)?;
            let mut case = BuiltinCase { problems: vec![prob], ..Default::default() };
            if wants(sc, CheckKind::Equivalence) {
                let mut eps = sc.eps_ladder.clone();
                eps.push(0.0);
                let rep = check_weff_equivalence(&vp, &eps, &kind).map_err(check_err)?;
                let passed = if rep.expected_to_agree { rep.agree } else { rep.pass };
                case.checks.push(CheckOutcome::new(
                    &format!("{} equivalence", rep.kind),
                    passed,
                    format!("agree = {}, expected = {}", rep.agree, rep.expected_to_agree),
                ));
                case.extras.insert("equivalence".into(), serde_json::to_value(&rep).map_err(check_err)?);
            }
            Ok(case)
        }
        ProblemSpec::Stochastic { x, y, cone, z_grid, w_grid } => {
            let x = to_rv(x, "/problem/x")?;
            let y = to_rv(y, "/problem/y")?;
            if x.probs != y.probs {
                return Err(schema("/problem/y", "x and y must share the probability vector of a common state space"));
            }
            let d = x.dim();
            if y.dim() != d {
                return Err(schema("/problem/y", "x and y must have the same dimension"));
            }
            let cone = match cone {
                Some(c) => to_cone(c)?,
                None => Cone::orthant(d),
            };
            let tol = sc.tol.unwrap_or(crate::cone::DEFAULT_TOL);
            let mut case = BuiltinCase::default();
            let grid = vec![vec![0.0], vec![1.0]];
            let vals = vec![SetValue::Cloud(PointCloudSet::new(vec![flatten(&x)])), SetValue::Cloud(PointCloudSet::new(vec![flatten(&y)]))];
            let fam = if d == 1 {
                let leq = ssd_leq(&x, &y, tol).map_err(check_err)?;
                case.extras.insert("ssd_x_below_y".into(), json!(leq));
                let alphas: Vec<f64> = (1..=20).map(|k| k as f64 / 20.0).collect();
                avar_family(&alphas, &x.probs).map_err(check_err)?
            } else {
                let zs = z_grid.clone().unwrap_or_else(|| {
                    let mut atoms = x.atoms.clone();
                    atoms.extend(y.atoms.iter().cloned());
                    atoms
                });
                let ws = w_grid.clone().unwrap_or_else(|| cone.unit_duals());
                let verdict = fsd_leq(&x, &y, &cone, &zs, &ws, tol).map_err(check_err)?;
                case.extras.insert("fsd_x_below_y".into(), serde_json::to_value(&verdict).map_err(check_err)?);
                c_distribution_family(&cone, &zs, &ws, &x.probs, tol).map_err(check_err)?
            };
            let prob = SetValuedProblem::new(&sc.name, grid, vals, fam).map_err(check_err)?;
            case.problems.push(prob);
            Ok(case)
        }
    }
}

fn wants(sc: &Scenario, kind: CheckKind) -> bool {
    sc.checks.as_ref().is_none_or(|c| c.contains(&kind))
}

/// Solver checks that hold for every grid problem.
pub fn generic_checks(
    prob: &SetValuedProblem,
    ladder: &[f64],
    kinds: &dyn Fn(CheckKind) -> bool,
) -> Result<(SolutionReport, Vec<CheckOutcome>), ScenarioError> {
    let report = solution_report(prob, ladder).map_err(check_err)?;
    let mut out = Vec::new();
    let label = |s: &str| format!("{}: {s}", prob.name);
    if kinds(CheckKind::MinSets) {
        out.push(CheckOutcome::new(
            &label("Min(eps) nested and Min(eps) within Min(eps+)"),
            report.nested && report.mode_ordered,
            format!("nested = {}, mode ordered = {}", report.nested, report.mode_ordered),
        ));
    }
    if kinds(CheckKind::Solution) {
        let mut failed = Vec::new();
        for &eps in ladder {
            if let Err(e) = construct_solution(prob, eps) {
                failed.push(format!("eps = {eps}: {e}"));
            }
        }
        out.push(CheckOutcome::new(&label("constructed solutions verify"), failed.is_empty(), failed.join("; ")));
    }
    if kinds(CheckKind::Infimizer) {
        let mut failed = Vec::new();
        for &eps in ladder {
            let m = min_set(prob, eps, Mode::Strict).map_err(check_err)?;
            if !is_infimizer(prob, &m.indices, eps).map_err(check_err)? {
                failed.push(eps.to_string());
            }
        }
        out.push(CheckOutcome::new(&label("Min(eps) is an eps-infimizer"), failed.is_empty(), failed.join(", ")));
    }
    if kinds(CheckKind::Net) {
        let net = minimizing_net(prob, ladder, Mode::Strict).map_err(check_err)?;
        // ⋂ Min(ε+) over a finite ladder is Min(ε_last+); it equals Min(0+) only
        // once ε_last is below every positive gap, so it is reported, not required.
        out.push(CheckOutcome::new(
            &label("minimizing net nested above Min(0)"),
            net.nested,
            format!("intersection equals Min(0+): {}", net.intersection_matches),
        ));
    }
    if kinds(CheckKind::Weierstrass) {
        let w = weierstrass_solve(prob).map_err(check_err)?;
        if w.neg_inf_members.is_empty() && !w.set.is_empty() {
            let ok = is_infimizer(prob, &w.set, 0.0).map_err(check_err)?;
            out.push(CheckOutcome::new(&label("union of scalar argmins is an infimizer"), ok, format!("{} points", w.set.len())));
        }
    }
    Ok((report, out))
}

#[derive(Serialize)]
struct JsonReport<'a> {
    schema_version: u32,
    scenario: &'a str,
    seed: u64,
    ladder: &'a [f64],
    notices: &'a [String],
    checks: &'a [CheckOutcome],
    reports: &'a [SolutionReport],
    reference_reports: &'a [SolutionReport],
    extras: &'a serde_json::Map<String, Value>,
}

fn fmt_point(z: &[f64]) -> String {
    z.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn csv_of(scenario: &str, reports: &[SolutionReport]) -> Result<String, ScenarioError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["scenario", "problem", "eps", "mode", "set_size", "representatives", "hausdorff_to_zero", "infimizer", "solution"])
        .map_err(check_err)?;
    for r in reports {
        for row in &r.rows {
            let reps = row.representatives.iter().map(|z| fmt_point(z)).collect::<Vec<_>>().join(";");
            w.write_record([
                scenario.to_string(),
                r.problem.clone(),
                row.eps.to_string(),
                row.mode.to_string(),
                row.set.len().to_string(),
                reps,
                row.hausdorff_to_zero.map_or(String::new(), |d| d.to_string()),
                row.infimizer.to_string(),
                row.solution.to_string(),
            ])
            .map_err(check_err)?;
        }
    }
    let bytes = w.into_inner().map_err(check_err)?;
    String::from_utf8(bytes).map_err(check_err)
}

/// Applies the scenario tolerance to each problem's family.
fn apply_tol(sc: &Scenario, probs: &mut [SetValuedProblem]) {
    if let Some(t) = sc.tol {
        for p in probs {
            p.family.tol = t;
        }
    }
}

pub fn run_scenario(sc: &Scenario, opts: &RunOptions) -> Result<RunOutcome, ScenarioError> {
    sc.validate()?;
    let mut case = build_case(sc)?;
    apply_tol(sc, &mut case.problems);
    apply_tol(sc, &mut case.reference);
    let kinds = |k: CheckKind| wants(sc, k);
    let mut checks = Vec::new();
    let mut reports = Vec::new();
    for prob in &case.problems {
        let (rep, c) = generic_checks(prob, &sc.eps_ladder, &kinds)?;
        reports.push(rep);
        checks.extend(c);
    }
    checks.append(&mut case.checks);
    let mut reference_reports = Vec::new();
    for prob in &case.reference {
        reference_reports.push(solution_report(prob, &sc.eps_ladder).map_err(check_err)?);
    }
    if wants(sc, CheckKind::WellPosedness) && !case.extras.contains_key("well_posedness") {
        if let ProblemSpec::SetValued { .. } = sc.problem {
            let wp = crate::solver::well_posedness_check(
                &case.problems[0],
                &[0.25, 0.5, 1.0],
                &sc.eps_ladder,
                Mode::Strict,
                sc.seed.unwrap_or(0),
                8,
            )
            .map_err(check_err)?;
            case.extras.insert("well_posedness".into(), serde_json::to_value(&wp).map_err(check_err)?);
        }
    }
    let doc = JsonReport {
        schema_version: SCHEMA_VERSION,
        scenario: &sc.name,
        seed: sc.seed.unwrap_or(0),
        ladder: &sc.eps_ladder,
        notices: &case.notices,
        checks: &checks,
        reports: &reports,
        reference_reports: &reference_reports,
        extras: &case.extras,
    };
    let json = serde_json::to_string_pretty(&doc).map_err(check_err)? + "\n";
    let csv = csv_of(&sc.name, &reports)?;

    let out_dir = opts.out_dir.clone().or_else(|| sc.output.as_ref().and_then(|o| o.dir.clone()));
    let formats = opts
        .formats
        .clone()
        .or_else(|| sc.output.as_ref().and_then(|o| o.formats.clone()))
        .unwrap_or_else(|| vec![Format::Json, Format::Csv]);
    let mut files = Vec::new();
    if let Some(dir) = out_dir {
        for f in formats {
            let (ext, body) = match f {
                Format::Json => ("json", &json),
                Format::Csv => ("csv", &csv),
            };
            let path = dir.join(format!("{}.{ext}", sc.name));
            write_atomic(&path, body.as_bytes())?;
            files.push(path);
        }
    }
    Ok(RunOutcome { name: sc.name.clone(), checks, json, csv, files })
}

/// One row per grid point, ε and mode: `problem, eps, mode, point, in_min_set`.
pub fn plot_data(sc: &Scenario) -> Result<String, ScenarioError> {
    sc.validate()?;
    let mut case = build_case(sc)?;
    apply_tol(sc, &mut case.problems);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["problem", "eps", "mode", "point", "in_min_set"]).map_err(check_err)?;
    let mut eps_all = sc.eps_ladder.clone();
    eps_all.push(0.0);
    for prob in &case.problems {
        for &eps in &eps_all {
            for mode in [Mode::Strict, Mode::Plus] {
                let m = min_set(prob, eps, mode).map_err(check_err)?;
                for (x, z) in prob.grid.iter().enumerate() {
                    w.write_record([prob.name.clone(), eps.to_string(), mode.to_string(), fmt_point(z), m.contains(x).to_string()])
                        .map_err(check_err)?;
                }
            }
        }
    }
    String::from_utf8(w.into_inner().map_err(check_err)?).map_err(check_err)
}
