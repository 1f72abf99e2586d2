//! Scenario execution: parse, dispatch, report.

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::time::Instant;

use coarse_core::asdim::{asdim_upper, lower_bound_search, validate_cover, LowerBound};
use coarse_core::asr::{self, check_asr_axioms, check_asr_axioms_sampled};
use coarse_core::coarse::{
    alike_via, in_maximal, MaximalLimits, MaximalVerdict, NatStructure, ViaVerdict, DEFAULT_DEPTH,
};
use coarse_core::maps::{close_check, coarse_check, equivalence_check, higson_variation, CoarseVerdict};
use coarse_core::separation::{
    check_proximity_axioms, check_proximity_axioms_sampled, delta_proximity, disjoint_check_with, normality_partition,
    DisjointVerdict,
};
use coarse_core::spaces::{hausdorff, IntBox};
use coarse_core::subsets::{AxiomLimits, AxiomReport};
use coarse_core::{int, AsrModel, Error, Point, ProbeBudget, Rational, ScaleVerdict, SetExpr};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::convert::{self, Input, InputError};
use crate::render;
use crate::scenario::*;

/// Samples drawn per axiom in sampled mode when the scenario gives none.
pub const DEFAULT_SAMPLES: u64 = 4096;
pub const DEFAULT_BUDGET: u64 = 1 << 20;

/// Command-line settings that apply to every scenario.
#[derive(Clone, Debug)]
pub struct Options {
    /// Comma-separated rationals, overriding the scenario probe.
    pub probe_radii: Option<String>,
    pub probe_scales: Option<String>,
    pub stability: Option<usize>,
    pub depth: usize,
    pub budget: u64,
    pub emit_cover: bool,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            probe_radii: None,
            probe_scales: None,
            stability: None,
            depth: DEFAULT_DEPTH,
            budget: DEFAULT_BUDGET,
            emit_cover: false,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitClass {
    Definite,
    Violation,
    Inconclusive,
    InputError,
}

impl ExitClass {
    pub fn code(self) -> i32 {
        match self {
            ExitClass::Definite => 0,
            ExitClass::Violation => 1,
            ExitClass::Inconclusive => 2,
            ExitClass::InputError => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ExitClass::Definite => "definite",
            ExitClass::Violation => "violation",
            ExitClass::Inconclusive => "inconclusive",
            ExitClass::InputError => "input-error",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Value,
    pub exit: ExitClass,
}

impl Outcome {
    /// The report as printed: pretty JSON with sorted keys and a newline.
    pub fn text(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("reports are plain JSON");
        s.push('\n');
        s
    }

    /// One line for standard error.
    pub fn summary(&self) -> String {
        let command = self.report["command"].as_str().unwrap_or("?");
        let what = match (&self.report["verdict"], &self.report["error"]) {
            (Value::Object(v), _) => v.get("kind").and_then(Value::as_str).unwrap_or(self.exit.name()).to_string(),
            (_, Value::Object(e)) => e.get("message").and_then(Value::as_str).unwrap_or("error").to_string(),
            _ => self.exit.name().to_string(),
        };
        format!("coarse {command}: {what} (exit {})", self.exit.code())
    }
}

/// Zeroes the timing block, the only part of a report that varies between
/// runs.
pub fn mask_timings(report: &mut Value) {
    if let Some(t) = report.get_mut("timings") {
        *t = json!({"elapsed_us": 0});
    }
}

enum Failure {
    Input(InputError),
    Core(Error),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Step = Result<(Value, ExitClass), Failure>;

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::UnsupportedModel(_) => "unsupported-model",
        Error::InvalidParams(_) => "invalid-params",
        Error::InvalidPoint(_) => "invalid-point",
        Error::PreconditionFailed { .. } => "precondition-failed",
        Error::CapExceeded { .. } => "cap-exceeded",
        Error::MissingPreimage => "missing-preimage",
        Error::BoundedDisplacement { .. } => "bounded-displacement",
        Error::BudgetExhausted { .. } => "budget-exhausted",
        Error::CertificateFailed { .. } => "certificate-failed",
    }
}

fn failure_report(f: &Failure) -> (Value, ExitClass) {
    match f {
        Failure::Input(e) => {
            (json!({"kind": "input-error", "field": e.field, "message": e.message}), ExitClass::InputError)
        }
        Failure::Core(e) => {
            let class = match e {
                Error::BudgetExhausted { .. } => ExitClass::Inconclusive,
                Error::CertificateFailed { .. } => ExitClass::Violation,
                _ => ExitClass::InputError,
            };
            let mut v = json!({"kind": error_kind(e), "message": e.to_string()});
            match e {
                Error::CertificateFailed { scale, check } => {
                    v["scale"] = render::rational(scale);
                    v["check"] = json!(check);
                }
                Error::PreconditionFailed { witness: Some(p), .. } => v["witness"] = render::point(p),
                Error::InvalidPoint(p) => v["witness"] = render::point(p),
                _ => {}
            }
            (v, class)
        }
    }
}

fn parse_list(flag: &str, text: &str) -> Input<Vec<Rational>> {
    text.split(',')
        .map(|s| s.trim())
        .enumerate()
        .map(|(i, s)| convert::rational(&format!("{flag}[{i}]"), &RationalDto::Text(s.to_string())))
        .collect()
}

fn inputs<T: DeserializeOwned>(v: &Value) -> Input<T> {
    serde_path_to_error::deserialize(v.clone()).map_err(|e| {
        let path = e.path().to_string();
        let field = if path == "." { "inputs".to_string() } else { format!("inputs.{path}") };
        InputError::new(field, e.into_inner().to_string())
    })
}

/// Runs a scenario given as JSON text.
pub fn run_text(text: &str, opts: &Options) -> Outcome {
    let start = Instant::now();
    let mut de = serde_json::Deserializer::from_str(text);
    let parsed: Result<Scenario, InputError> = serde_path_to_error::deserialize(&mut de)
        .map_err(|e| {
            let path = e.path().to_string();
            let field = if path == "." { String::from("scenario") } else { path };
            InputError::new(field, e.into_inner().to_string())
        })
        .and_then(|s| de.end().map(|_| s).map_err(|e| InputError::new("scenario", e.to_string())));
    let (command, probe, step) = match parsed {
        Err(e) => (None, None, Err(Failure::Input(e))),
        Ok(s) => match resolve_probe(&s.probe, opts) {
            Err(e) => (Some(s.command), None, Err(Failure::Input(e))),
            Ok(p) => {
                let step = dispatch(&s, &p, opts);
                (Some(s.command), Some(p), step)
            }
        },
    };
    let (verdict, error, exit) = match step {
        Ok((v, class)) => (v, Value::Null, class),
        Err(f) => {
            let (e, class) = failure_report(&f);
            (Value::Null, e, class)
        }
    };
    let report = json!({
        "command": command.map(|c| c.name()),
        "exit_code": exit.code(),
        "verdict_class": exit.name(),
        "verdict": verdict,
        "error": error,
        "provenance": {
            "probe": probe.as_ref().map(render::probe),
            "depth": opts.depth,
            "budget": opts.budget,
            "seed": opts.seed,
            "emit_cover": opts.emit_cover,
            "tool": env!("CARGO_PKG_NAME"),
            "version": env!("CARGO_PKG_VERSION"),
        },
        "timings": {"elapsed_us": start.elapsed().as_micros() as u64},
    });
    Outcome { report, exit }
}

/// An input error raised before any scenario was read.
pub fn input_failure(field: &str, message: &str, opts: &Options) -> Outcome {
    let e = Failure::Input(InputError::new(field, message));
    let (error, exit) = failure_report(&e);
    let report = json!({
        "command": Value::Null,
        "exit_code": exit.code(),
        "verdict_class": exit.name(),
        "verdict": Value::Null,
        "error": error,
        "provenance": {
            "probe": Value::Null,
            "depth": opts.depth,
            "budget": opts.budget,
            "seed": opts.seed,
            "emit_cover": opts.emit_cover,
            "tool": env!("CARGO_PKG_NAME"),
            "version": env!("CARGO_PKG_VERSION"),
        },
        "timings": {"elapsed_us": 0},
    });
    Outcome { report, exit }
}

fn resolve_probe(dto: &ProbeDto, opts: &Options) -> Input<ProbeBudget> {
    let radii = opts.probe_radii.as_deref().map(|t| parse_list("--probe-radii", t)).transpose()?;
    let scales = opts.probe_scales.as_deref().map(|t| parse_list("--probe-scales", t)).transpose()?;
    convert::probe(dto, radii, scales, opts.stability)
}

fn dispatch(s: &Scenario, probe: &ProbeBudget, opts: &Options) -> Step {
    let v = &s.inputs;
    match s.command {
        Command::Alike => {
            let i: AlikeIn = inputs(v)?;
            let model = convert::model("inputs.model", &i.model, probe)?;
            let a = convert::set("inputs.a", &i.a)?;
            let b = convert::set("inputs.b", &i.b)?;
            let verdict = asr::alike(&model, &a, &b)?;
            Ok((render::scale_verdict(&verdict), scale_class(&verdict)))
        }
        Command::Bounded => {
            let i: BoundedIn = inputs(v)?;
            let model = convert::model("inputs.model", &i.model, probe)?;
            let set = convert::set("inputs.set", &i.set)?;
            let verdict = asr::bounded(&model, &set)?;
            Ok((render::scale_verdict(&verdict), scale_class(&verdict)))
        }
        Command::CoarseCheck => {
            let i: CoarseIn = inputs(v)?;
            let f = convert::map_desc("inputs.map", &i.map)?;
            let verdict = coarse_check(&f, probe)?;
            Ok((render::coarse(&verdict), coarse_class(&verdict)))
        }
        Command::CloseCheck => {
            let i: PairOfMapsIn = inputs(v)?;
            let f = convert::map_desc("inputs.f", &i.f)?;
            let g = convert::map_desc("inputs.g", &i.g)?;
            let verdict = close_check(&f, &g, probe)?;
            Ok((render::scale_verdict(&verdict), scale_class(&verdict)))
        }
        Command::Equivalence => {
            let i: PairOfMapsIn = inputs(v)?;
            let f = convert::map_desc("inputs.f", &i.f)?;
            let g = convert::map_desc("inputs.g", &i.g)?;
            let report = equivalence_check(&f, &g, probe)?;
            let class = if report.passed() {
                ExitClass::Definite
            } else {
                let parts = [
                    coarse_class(&report.f),
                    coarse_class(&report.g),
                    scale_class(&report.gf),
                    scale_class(&report.fg),
                ];
                if parts.contains(&ExitClass::Violation) {
                    ExitClass::Violation
                } else {
                    ExitClass::Inconclusive
                }
            };
            Ok((render::equivalence(&report), class))
        }
        Command::Disjoint => {
            let i: DisjointIn = inputs(v)?;
            let space = convert::space("inputs.space", &i.space)?;
            let a = convert::set("inputs.a", &i.a)?;
            let b = convert::set("inputs.b", &i.b)?;
            let slope = match &i.slope {
                Some(q) => convert::rational("inputs.slope", q)?,
                None => int(1),
            };
            let verdict = disjoint_check_with(&space, &a, &b, probe, &slope)?;
            Ok((render::disjoint(&verdict), disjoint_class(&verdict)))
        }
        Command::Normality => {
            let i: NormalityIn = inputs(v)?;
            let space = convert::space("inputs.space", &i.space)?;
            let a = convert::set("inputs.a", &i.a)?;
            let b = convert::set("inputs.b", &i.b)?;
            let radius = match &i.radius {
                Some(q) => convert::rational("inputs.radius", q)?,
                None => probe.max_radius(),
            };
            let cert = normality_partition(&space, &a, &b, &radius, probe.stability)?;
            let class = if !cert.covers() {
                ExitClass::Violation
            } else {
                match (disjoint_class(&cert.a_vs_x1), disjoint_class(&cert.b_vs_x2)) {
                    (ExitClass::Definite, ExitClass::Definite) => ExitClass::Definite,
                    (ExitClass::Violation, _) | (_, ExitClass::Violation) => ExitClass::Violation,
                    _ => ExitClass::Inconclusive,
                }
            };
            let mut out = render::normality(&cert, opts.emit_cover);
            out["kind"] = json!(if cert.covers() { "partition" } else { "uncovered" });
            Ok((out, class))
        }
        Command::AxiomsAsr => {
            let i: AxiomsAsrIn = inputs(v)?;
            let universe = convert::points(&i.universe);
            let failed = RefCell::new(None);
            let rel = asr_relation(&i.relation, probe, &failed)?;
            let report = axiom_run(&universe, &rel, i.mode, i.samples, opts.seed, true)?;
            if let Some(e) = failed.take() {
                return Err(Failure::Core(e));
            }
            Ok(axiom_step(&report))
        }
        Command::AxiomsProximity => {
            let i: AxiomsProximityIn = inputs(v)?;
            let universe = convert::points(&i.universe);
            let failed = RefCell::new(None);
            let rel = proximity_relation(&i.relation, probe, &failed)?;
            let report = axiom_run(&universe, &rel, i.mode, i.samples, opts.seed, false)?;
            if let Some(e) = failed.take() {
                return Err(Failure::Core(e));
            }
            Ok(axiom_step(&report))
        }
        Command::Entourage => entourage(v, probe, opts),
        Command::AsdimUpper => {
            let i: AsdimUpperIn = inputs(v)?;
            let space = convert::space("inputs.space", &i.space)?;
            let factor = i.side_factor.unwrap_or(8);
            if factor <= 0 {
                return Err(InputError::new("inputs.side_factor", "side factor must be positive").into());
            }
            let window = i.window.as_ref().map(|w| convert::rational("inputs.window", w)).transpose()?;
            let cert = asdim_upper(&space, &i.scales, &|r| factor * r, window)?;
            let mut out = render::certificate(&cert, opts.emit_cover);
            out["kind"] = json!("certificate");
            Ok((out, ExitClass::Definite))
        }
        Command::AsdimLower => {
            let i: AsdimLowerIn = inputs(v)?;
            let space = convert::space("inputs.space", &i.space)?;
            if i.region.iter().any(|(lo, hi)| lo > hi) {
                return Err(InputError::new("inputs.region", "each axis needs lo <= hi").into());
            }
            let region = IntBox::finite(&i.region);
            let found = lower_bound_search(&space, &region, i.mesh, i.r, i.n, opts.budget)?;
            let mut out = render::lower(&found, opts.emit_cover);
            let class = match &found {
                LowerBound::Feasible { cover, .. } => {
                    validate_cover(&space, &region, cover, i.mesh, i.r, i.n)?;
                    out["validated"] = json!(true);
                    ExitClass::Definite
                }
                LowerBound::Infeasible { .. } => ExitClass::Definite,
                LowerBound::Budget { .. } => ExitClass::Inconclusive,
            };
            Ok((out, class))
        }
        Command::HigsonProfile => {
            let i: HigsonIn = inputs(v)?;
            let space = convert::space("inputs.space", &i.space)?;
            let f = convert::value_fn("inputs.function", &i.function)?;
            let e = convert::entourage("inputs.entourage", &i.entourage)?;
            let radii = convert::rationals("inputs.radii", &i.radii)?;
            let horizon = convert::rational("inputs.horizon", &i.horizon)?;
            let rows = higson_variation(&space, &f, &e, &radii, &horizon)?;
            Ok((json!({"kind": "profile", "rows": render::higson(&rows)}), ExitClass::Definite))
        }
    }
}

fn scale_class(v: &ScaleVerdict) -> ExitClass {
    match v {
        ScaleVerdict::AlikeWithin(_) => ExitClass::Definite,
        ScaleVerdict::RefutedUpTo { .. } => ExitClass::Violation,
        ScaleVerdict::Inconclusive { .. } => ExitClass::Inconclusive,
    }
}

fn coarse_class(v: &CoarseVerdict) -> ExitClass {
    match v {
        CoarseVerdict::Coarse { .. } => ExitClass::Definite,
        CoarseVerdict::NotCoarse { .. } | CoarseVerdict::NotProper { .. } => ExitClass::Violation,
        CoarseVerdict::Inconclusive { .. } => ExitClass::Inconclusive,
    }
}

fn disjoint_class(v: &DisjointVerdict) -> ExitClass {
    match v {
        DisjointVerdict::Divergent { .. } => ExitClass::Definite,
        DisjointVerdict::Bounded { .. } => ExitClass::Violation,
        DisjointVerdict::Inconclusive { .. } => ExitClass::Inconclusive,
    }
}

fn axiom_step(report: &AxiomReport) -> (Value, ExitClass) {
    let mut out = render::axioms(report);
    out["kind"] = json!(if report.passed() { "passed" } else { "failed" });
    (out, if report.passed() { ExitClass::Definite } else { ExitClass::Violation })
}

type Relation<'a> = Box<dyn Fn(&BTreeSet<Point>, &BTreeSet<Point>) -> bool + 'a>;

fn axiom_run(
    universe: &[Point],
    rel: &Relation<'_>,
    mode: Mode,
    samples: Option<u64>,
    seed: u64,
    asr: bool,
) -> Result<AxiomReport, Failure> {
    let limits = AxiomLimits::default();
    let f = |a: &BTreeSet<Point>, b: &BTreeSet<Point>| rel(a, b);
    let report = match mode {
        Mode::Exhaustive => {
            if samples.is_some() {
                return Err(InputError::new("inputs.samples", "samples only apply in sampled mode").into());
            }
            if asr {
                check_asr_axioms(universe, f, &limits)?
            } else {
                check_proximity_axioms(universe, f, &limits)?
            }
        }
        Mode::Sampled => {
            let n = samples.unwrap_or(DEFAULT_SAMPLES);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            if asr {
                check_asr_axioms_sampled(universe, f, n, &limits, &mut rng)?
            } else {
                check_proximity_axioms_sampled(universe, f, n, &limits, &mut rng)?
            }
        }
    };
    Ok(report)
}

fn explicit(s: &BTreeSet<Point>) -> SetExpr {
    SetExpr::Explicit(s.clone())
}

/// Runs a fallible relation, keeping the first error and answering `false`
/// after it.
fn guarded<'a>(
    failed: &'a RefCell<Option<Error>>,
    f: impl Fn(&BTreeSet<Point>, &BTreeSet<Point>) -> coarse_core::Result<bool> + 'a,
) -> Relation<'a> {
    Box::new(move |a, b| {
        if failed.borrow().is_some() {
            return false;
        }
        match f(a, b) {
            Ok(x) => x,
            Err(e) => {
                *failed.borrow_mut() = Some(e);
                false
            }
        }
    })
}

fn asr_relation<'a>(
    r: &AsrRelationDto,
    probe: &ProbeBudget,
    failed: &'a RefCell<Option<Error>>,
) -> Input<Relation<'a>> {
    Ok(match r {
        AsrRelationDto::Always {} | AsrRelationDto::Discrete {} => Box::new(|_, _| true),
        AsrRelationDto::EqualSize {} => Box::new(|a, b| a.len() == b.len()),
        AsrRelationDto::Overlap {} => Box::new(|a, b| (a.is_empty() && b.is_empty()) || !a.is_disjoint(b)),
        AsrRelationDto::Subset {} => Box::new(|a, b| a.is_subset(b)),
        AsrRelationDto::HausdorffAtMost { space, r } => {
            let space = convert::space("inputs.relation.space", space)?;
            let r = convert::rational("inputs.relation.r", r)?;
            Box::new(move |a, b| {
                let a: Vec<Point> = a.iter().cloned().collect();
                let b: Vec<Point> = b.iter().cloned().collect();
                hausdorff(&space, &a, &b).le(&r)
            })
        }
        AsrRelationDto::Model { model } => {
            let model = convert::model("inputs.relation.model", model, probe)?;
            guarded(failed, move |a, b| Ok(asr::alike(&model, &explicit(a), &explicit(b))?.is_alike()))
        }
        AsrRelationDto::Table { pairs } => table_relation(pairs),
    })
}

fn proximity_relation<'a>(
    r: &ProximityRelationDto,
    probe: &ProbeBudget,
    failed: &'a RefCell<Option<Error>>,
) -> Input<Relation<'a>> {
    Ok(match r {
        ProximityRelationDto::Always {} => Box::new(|_, _| true),
        ProximityRelationDto::Intersection {} => Box::new(|a, b| !a.is_disjoint(b)),
        ProximityRelationDto::NotBothEmpty {} => Box::new(|a, b| !(a.is_empty() && b.is_empty())),
        ProximityRelationDto::SizeAtLeast { k } => {
            let k = *k;
            Box::new(move |a, b| a.len() + b.len() >= k)
        }
        ProximityRelationDto::Delta { model } => {
            let model: AsrModel = convert::model("inputs.relation.model", model, probe)?;
            guarded(failed, move |a, b| delta_proximity(&model, &explicit(a), &explicit(b)))
        }
        ProximityRelationDto::Table { pairs } => table_relation(pairs),
    })
}

fn table_relation<'a>(pairs: &[(Vec<PointDto>, Vec<PointDto>)]) -> Relation<'a> {
    let t = convert::table(pairs);
    Box::new(move |a, b| t.contains(&(a.clone(), b.clone())))
}

fn entourage(v: &Value, probe: &ProbeBudget, opts: &Options) -> Step {
    let i: EntourageIn = inputs(v)?;
    match &i {
        EntourageIn::AlikeVia { space, family, a, b, radius } => {
            let space = convert::space("inputs.space", space)?;
            let family = family
                .iter()
                .enumerate()
                .map(|(k, e)| convert::entourage(&format!("inputs.family[{k}]"), e))
                .collect::<Input<Vec<_>>>()?;
            let a = convert::set("inputs.a", a)?;
            let b = convert::set("inputs.b", b)?;
            let radius = match radius {
                Some(q) => convert::rational("inputs.radius", q)?,
                None => probe.max_radius(),
            };
            let verdict = alike_via(&space, &family, &a, &b, &radius, opts.depth)?;
            let class = match verdict {
                ViaVerdict::Alike { .. } => ExitClass::Definite,
                ViaVerdict::Refuted { .. } => ExitClass::Violation,
            };
            Ok((render::via(&verdict), class))
        }
        EntourageIn::InMaximal { model, entourage, exhaustive } => {
            let model = convert::model("inputs.model", model, probe)?;
            let e = convert::entourage("inputs.entourage", entourage)?;
            let limits = MaximalLimits { exhaustive: *exhaustive, ..MaximalLimits::default() };
            let verdict = in_maximal(&model, &e, &limits)?;
            let class = match verdict {
                MaximalVerdict::Member { .. } => ExitClass::Definite,
                MaximalVerdict::NonMember { .. } => ExitClass::Violation,
                MaximalVerdict::Inconclusive { .. } => ExitClass::Inconclusive,
            };
            Ok((render::maximal(&verdict), class))
        }
        EntourageIn::NatStructure { structure, a, b, radius } => {
            let s = match structure {
                StructureDto::FiniteImages => NatStructure::FiniteImages,
                StructureDto::BoundedFibres => NatStructure::BoundedFibres,
            };
            let a = convert::set("inputs.a", a)?;
            let b = convert::set("inputs.b", b)?;
            let radius = match radius {
                Some(q) => convert::rational("inputs.radius", q)?,
                None => probe.max_radius(),
            };
            let verdict = s.alike(&a, &b, &radius)?;
            let class = if verdict.is_alike() { ExitClass::Definite } else { ExitClass::Violation };
            Ok((render::structure(&verdict), class))
        }
        EntourageIn::Compose { first, second } => {
            let e = convert::entourage("inputs.first", first)?;
            let f = convert::entourage("inputs.second", second)?;
            let out = json!({"kind": "entourage", "entourage": render::entourage(&f.compose(&e)?)});
            Ok((out, ExitClass::Definite))
        }
        EntourageIn::Inverse { entourage } => {
            let e = convert::entourage("inputs.entourage", entourage)?;
            Ok((json!({"kind": "entourage", "entourage": render::entourage(&e.inverse()?)}), ExitClass::Definite))
        }
        EntourageIn::Image { entourage, points } => {
            let e = convert::entourage("inputs.entourage", entourage)?;
            let a: BTreeSet<Point> = convert::points(points).into_iter().collect();
            Ok((json!({"kind": "image", "points": render::points(&e.image(&a)?)}), ExitClass::Definite))
        }
    }
}
