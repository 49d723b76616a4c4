//! Job documents, dispatch, and byte-stable JSON reports.
//!
//! An input document is `{"command": ..., "payload": {...}, "output_path": ...}`.
//! Payloads are parsed strictly (unknown keys are rejected) into typed
//! structures; the report echoes the canonical form of the job, with every
//! default filled in.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::cm::{CmError, CmType, ReflexConvention, WeilDatum};
use crate::fields::{self, AbelianField, FieldError};
use crate::groups::{Basis, GroupError, Subgroup};
use crate::inertia::{self, InertiaError, ASSUME_CLASS_NUMBER, ASSUME_GOOD_REDUCTION};
use crate::twist::{self, TwistEAssumptions, TwistError, TwistXAssumptions};

pub const SCHEMA_VERSION: u32 = 1;

pub fn version() -> String {
    format!("cmtwist {} (schema {})", env!("CARGO_PKG_VERSION"), SCHEMA_VERSION)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReportError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{0}")]
    Hypothesis(String),
}

impl ReportError {
    /// 1 for bad input, 2 when a hypothesis of the requested computation fails.
    pub fn exit_code(&self) -> i32 {
        match self {
            ReportError::Input(_) => 1,
            ReportError::Hypothesis(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, ReportError>;

fn input(e: impl std::fmt::Display) -> ReportError {
    ReportError::Input(e.to_string())
}

impl From<GroupError> for ReportError {
    fn from(e: GroupError) -> Self {
        input(e)
    }
}

impl From<FieldError> for ReportError {
    fn from(e: FieldError) -> Self {
        input(e)
    }
}

impl From<CmError> for ReportError {
    fn from(e: CmError) -> Self {
        match e {
            CmError::CannotBalance(_) => ReportError::Hypothesis(e.to_string()),
            _ => input(e),
        }
    }
}

impl From<TwistError> for ReportError {
    fn from(e: TwistError) -> Self {
        match e {
            TwistError::Cm(inner) => inner.into(),
            TwistError::Hypothesis { .. } | TwistError::NotAssumed(_) => ReportError::Hypothesis(e.to_string()),
            _ => input(e),
        }
    }
}

impl From<InertiaError> for ReportError {
    fn from(e: InertiaError) -> Self {
        match e {
            InertiaError::NotPrime(_) | InertiaError::BadIndex(_) | InertiaError::NotDistinct(_) => input(e),
            _ => ReportError::Hypothesis(e.to_string()),
        }
    }
}

/// A field given literally in an input document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum FieldLiteral {
    Cyclotomic(u64),
    Quadratic(i64),
    RealSubfieldOf(u64),
    Compositum(Vec<FieldLiteral>),
    /// Fixed field of the subgroup generated by `generators` in `(Z/modulus)^×`.
    Fixed { modulus: u64, generators: Vec<u64> },
}

impl FieldLiteral {
    pub fn build(&self) -> Result<AbelianField> {
        Ok(match self {
            FieldLiteral::Cyclotomic(m) => AbelianField::cyclotomic(*m)?,
            FieldLiteral::Quadratic(d) => AbelianField::quadratic(*d)?,
            FieldLiteral::RealSubfieldOf(m) => AbelianField::real_subfield_of(*m)?,
            FieldLiteral::Compositum(parts) => {
                parts.iter().try_fold(AbelianField::rational(), |acc, f| Ok::<_, ReportError>(acc.compositum(&f.build()?)))?
            }
            FieldLiteral::Fixed { modulus, generators } => {
                AbelianField::from_fixed_group(Subgroup::generated(*modulus, generators)?)
            }
        })
    }
}

/// A Galois element: a residue modulo the conductor, or coordinates in a basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Residue(u64),
    Coordinates(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CmTypeSpec {
    pub field: FieldLiteral,
    pub psi: Vec<Label>,
    /// Generators of an invariant-factor basis; an automatic one is used if absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<u64>>,
}

struct Resolved {
    cm_type: CmType,
    basis: Basis,
    declared: Option<Vec<u64>>,
}

impl CmTypeSpec {
    fn resolve(&self) -> Result<Resolved> {
        let field = self.field.build()?;
        let group = field.galois_group();
        let (basis, declared) = match &self.basis {
            Some(gens) => (group.basis(gens)?, Some(gens.clone())),
            None => (group.auto_basis(), None),
        };
        let labels = self
            .psi
            .iter()
            .map(|l| match l {
                Label::Residue(r) => Ok(*r),
                Label::Coordinates(c) => Ok(group.rep(basis.coset_at(c)?)),
            })
            .collect::<Result<Vec<u64>>>()?;
        Ok(Resolved { cm_type: CmType::new(&field, &labels)?, basis, declared })
    }
}

/// `generators` are canonical coset representatives; `declared` echoes the input, if any.
fn basis_json(basis: &Basis, declared: &Option<Vec<u64>>) -> Value {
    json!({ "generators": basis.generators(), "factors": basis.factors(), "declared": declared })
}

fn cm_type_json(r: &Resolved) -> Value {
    let t = &r.cm_type;
    let coords: Vec<&[u64]> = t.psi_indices().iter().map(|&i| r.basis.coordinates(i)).collect();
    json!({
        "field": t.field(),
        "basis": basis_json(&r.basis, &r.declared),
        "psi": t.psi(),
        "psi_coordinates": coords,
    })
}

fn galois_json(k: &AbelianField) -> Value {
    let g = k.galois_group();
    json!({
        "order": g.order(),
        "invariant_factors": g.invariant_factors(),
        "auto_basis": g.auto_basis().generators(),
        "coset_representatives": g.reps(),
    })
}

fn one() -> u64 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldPayload {
    pub field: FieldLiteral,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CmTypePayload {
    #[serde(flatten)]
    pub cm_type: CmTypeSpec,
    #[serde(default)]
    pub convention: ReflexConvention,
    /// Restriction multiplicities to this subfield are reported when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<FieldLiteral>,
}

fn label_m() -> String {
    "M".into()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistXPayload {
    pub base: FieldLiteral,
    pub components: Vec<CmTypeSpec>,
    pub n: u64,
    #[serde(default = "label_m")]
    pub extension_label: String,
    #[serde(default)]
    pub assumed: TwistXAssumptions,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistEPayload {
    pub dim_x: u64,
    pub dim_y: u64,
    pub k: FieldLiteral,
    pub components: Vec<CmTypeSpec>,
    #[serde(default = "label_m")]
    pub extension_label: String,
    #[serde(default)]
    pub assumed: TwistEAssumptions,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscondPayload {
    pub n: u64,
    #[serde(default = "one")]
    pub d: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InertiaPayload {
    pub p: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseCertPayload {
    pub p: u64,
    pub q: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Example41Payload {}

pub const DEFAULT_P: u64 = 3;
pub const DEFAULT_Q: u64 = 17;
pub const DEFAULT_D: i64 = -1;

fn default_p() -> u64 {
    DEFAULT_P
}
fn default_q() -> u64 {
    DEFAULT_Q
}
fn default_d() -> i64 {
    DEFAULT_D
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Example42Payload {
    #[serde(default = "default_p")]
    pub p: u64,
    #[serde(default = "default_q")]
    pub q: u64,
    #[serde(default = "default_d")]
    pub d: i64,
}

impl Default for Example42Payload {
    fn default() -> Self {
        Self { p: DEFAULT_P, q: DEFAULT_Q, d: DEFAULT_D }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Job {
    Field(FieldPayload),
    Cmtype(CmTypePayload),
    TwistX(TwistXPayload),
    TwistE(TwistEPayload),
    Discond(DiscondPayload),
    Inertia(InertiaPayload),
    BaseCert(BaseCertPayload),
    Example41(Example41Payload),
    Example42(Example42Payload),
}

pub const COMMANDS: [&str; 9] =
    ["field", "cmtype", "twist-x", "twist-e", "discond", "inertia", "base-cert", "example-41", "example-42"];

impl Job {
    pub fn command(&self) -> &'static str {
        match self {
            Job::Field(_) => "field",
            Job::Cmtype(_) => "cmtype",
            Job::TwistX(_) => "twist-x",
            Job::TwistE(_) => "twist-e",
            Job::Discond(_) => "discond",
            Job::Inertia(_) => "inertia",
            Job::BaseCert(_) => "base-cert",
            Job::Example41(_) => "example-41",
            Job::Example42(_) => "example-42",
        }
    }

    fn payload(&self) -> Value {
        let v = match self {
            Job::Field(p) => serde_json::to_value(p),
            Job::Cmtype(p) => serde_json::to_value(p),
            Job::TwistX(p) => serde_json::to_value(p),
            Job::TwistE(p) => serde_json::to_value(p),
            Job::Discond(p) => serde_json::to_value(p),
            Job::Inertia(p) => serde_json::to_value(p),
            Job::BaseCert(p) => serde_json::to_value(p),
            Job::Example41(p) => serde_json::to_value(p),
            Job::Example42(p) => serde_json::to_value(p),
        };
        v.expect("payloads are plain data")
    }

    /// Parses a payload for `command`.
    pub fn from_parts(command: &str, payload: Value) -> Result<Self> {
        fn parse<T: DeserializeOwned>(command: &str, payload: Value) -> Result<T> {
            serde_json::from_value(payload).map_err(|e| input(format!("payload for `{command}`: {e}")))
        }
        Ok(match command {
            "field" => Job::Field(parse(command, payload)?),
            "cmtype" => Job::Cmtype(parse(command, payload)?),
            "twist-x" => Job::TwistX(parse(command, payload)?),
            "twist-e" => Job::TwistE(parse(command, payload)?),
            "discond" => Job::Discond(parse(command, payload)?),
            "inertia" => Job::Inertia(parse(command, payload)?),
            "base-cert" => Job::BaseCert(parse(command, payload)?),
            "example-41" => Job::Example41(parse(command, payload)?),
            "example-42" => Job::Example42(parse(command, payload)?),
            other => return Err(input(format!("unknown command `{other}`, expected one of {}", COMMANDS.join(", ")))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSpec {
    pub job: Job,
    pub output_path: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJob {
    command: String,
    #[serde(default = "empty_object")]
    payload: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    output_path: Option<String>,
}

fn empty_object() -> Value {
    Value::Object(Map::new())
}

impl Serialize for JobSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawJob { command: self.job.command().into(), payload: self.job.payload(), output_path: self.output_path.clone() }
            .serialize(s)
    }
}

impl JobSpec {
    pub fn new(job: Job) -> Self {
        Self { job, output_path: None }
    }

    /// Canonical JSON form: sorted keys, defaults filled in.
    pub fn to_canonical(&self) -> String {
        serde_json::to_value(self).expect("plain data").to_string()
    }
}

/// Strict parse of an input document, followed by a structural check of the
/// fields and CM-types it names.
pub fn validate_input(document: &str) -> Result<JobSpec> {
    let raw: RawJob = serde_json::from_str(document).map_err(input)?;
    let job = Job::from_parts(&raw.command, raw.payload)?;
    match &job {
        Job::Field(p) => {
            p.field.build()?;
        }
        Job::Cmtype(p) => {
            p.cm_type.resolve()?;
            if let Some(b) = &p.base {
                b.build()?;
            }
        }
        Job::TwistX(p) => {
            p.base.build()?;
            for c in &p.components {
                c.resolve()?;
            }
        }
        Job::TwistE(p) => {
            p.k.build()?;
            for c in &p.components {
                c.resolve()?;
            }
        }
        _ => {}
    }
    Ok(JobSpec { job, output_path: raw.output_path })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub job: JobSpec,
    pub results: Value,
    pub paper_anchors: Vec<String>,
    pub hypotheses_assumed: Vec<String>,
    pub version: String,
    /// Whether every conclusion of the job was reached.
    #[serde(skip)]
    pub complete: bool,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.complete {
            0
        } else {
            2
        }
    }

    /// Pretty JSON with keys sorted at every level.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("plain data");
        let mut s = serde_json::to_string_pretty(&v).expect("plain data");
        s.push('\n');
        s
    }

    /// One `path: value` line per scalar or scalar array in the results.
    pub fn to_text(&self) -> String {
        let mut lines = vec![format!("command: {}", self.job.job.command())];
        flatten("", &self.results, &mut lines);
        if !self.hypotheses_assumed.is_empty() {
            lines.push(format!("assumed: {}", self.hypotheses_assumed.join("; ")));
        }
        lines.push(format!("status: {}", if self.complete { "complete" } else { "incomplete" }));
        lines.join("\n") + "\n"
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, v)| flatten(&join(k), v, out)),
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            a.iter().enumerate().for_each(|(i, x)| flatten(&join(&i.to_string()), x, out))
        }
        _ => out.push(format!("{prefix}: {v}")),
    }
}

fn collect_anchors(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match (k.as_str(), x) {
                    ("paper_anchor", Value::String(s)) => out.push(s.clone()),
                    _ => collect_anchors(x, out),
                }
            }
        }
        Value::Array(a) => a.iter().for_each(|x| collect_anchors(x, out)),
        _ => {}
    }
}

fn ensure(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(ReportError::Hypothesis(format!("check failed: {what}")))
    }
}

struct Outcome {
    results: Value,
    anchors: Vec<&'static str>,
    assumed: Vec<String>,
    complete: bool,
}

impl Outcome {
    fn done(results: Value) -> Self {
        Self { results, anchors: Vec::new(), assumed: Vec::new(), complete: true }
    }
}

pub fn run(spec: &JobSpec) -> Result<Report> {
    let out = match &spec.job {
        Job::Field(p) => run_field(p)?,
        Job::Cmtype(p) => run_cmtype(p)?,
        Job::TwistX(p) => run_twist_x(p)?,
        Job::TwistE(p) => run_twist_e(p)?,
        Job::Discond(p) => Outcome::done(serde_json::to_value(twist::discond_groups(p.n, p.d)?).expect("plain data")),
        Job::Inertia(p) => run_inertia(p)?,
        Job::BaseCert(p) => run_base_cert(p)?,
        Job::Example41(_) => example_41()?,
        Job::Example42(p) => example_42(p)?,
    };
    let mut anchors: Vec<String> = out.anchors.iter().map(|s| s.to_string()).collect();
    collect_anchors(&out.results, &mut anchors);
    anchors.sort();
    anchors.dedup();
    Ok(Report {
        job: spec.clone(),
        results: out.results,
        paper_anchors: anchors,
        hypotheses_assumed: out.assumed,
        version: version(),
        complete: out.complete,
    })
}

/// Parses, validates and runs a document.
pub fn run_document(document: &str) -> Result<Report> {
    run(&validate_input(document)?)
}

fn run_field(p: &FieldPayload) -> Result<Outcome> {
    let k = p.field.build()?;
    let mut r = json!({
        "field": k,
        "is_totally_real": k.is_totally_real(),
        "roots_of_unity": k.roots_of_unity_order(),
        "galois_group": galois_json(&k),
    });
    if let Some(d) = k.quadratic_radicand() {
        r["quadratic_radicand"] = json!(d);
    }
    if k.is_cm() {
        r["complex_conjugation"] = json!(k.complex_conjugation());
        r["maximal_real_subfield"] = json!(k.maximal_real_subfield());
    }
    Ok(Outcome::done(r))
}

fn multiplicity_json(datum: &WeilDatum) -> Value {
    json!({
        "base": datum.base(),
        "dimension": datum.dimension(),
        "n_sigma": datum.restriction_multiplicities(),
        "is_weil_type": datum.is_weil_type(),
        "r": datum.weil_r().ok(),
    })
}

fn run_cmtype(p: &CmTypePayload) -> Result<Outcome> {
    let res = p.cm_type.resolve()?;
    let t = &res.cm_type;
    let reflex = t.reflex_type(p.convention);
    let mut r = json!({
        "cm_type": cm_type_json(&res),
        "stabilizer": t.stabilizer_reps(),
        "primitive": t.is_primitive(),
        "reflex_field": t.reflex_field(),
        "reflex_type": { "convention": reflex.convention, "field": reflex.cm_type.field(), "psi": reflex.cm_type.psi() },
    });
    if let Some(b) = &p.base {
        let datum = WeilDatum::new(b.build()?, vec![t.clone()])?;
        r["restriction"] = multiplicity_json(&datum);
    }
    Ok(Outcome::done(r))
}

fn resolve_all(specs: &[CmTypeSpec]) -> Result<(Vec<CmType>, Vec<Value>)> {
    let mut types = Vec::new();
    let mut shown = Vec::new();
    for s in specs {
        let r = s.resolve()?;
        shown.push(cm_type_json(&r));
        types.push(r.cm_type);
    }
    Ok((types, shown))
}

fn character_json(c: &twist::CharacterSpec) -> Value {
    json!({
        "value_field": c.value_field,
        "order": c.order,
        "extension_label": c.extension_label,
        "extension_degree": c.extension_degree,
    })
}

fn run_twist_x(p: &TwistXPayload) -> Result<Outcome> {
    let base = p.base.build()?;
    let (types, shown) = resolve_all(&p.components)?;
    let datum = WeilDatum::new(base.clone(), types)?;
    let c = twist::make_character(&base, p.n, &p.extension_label)?;
    let rep = twist::twist_x(&datum, &c, p.assumed)?;
    let assumed = rep.assumed.iter().map(|s| s.to_string()).collect();
    let results = json!({
        "components": shown,
        "datum": multiplicity_json(&datum),
        "character": character_json(&c),
        "report": rep,
    });
    Ok(Outcome { results, anchors: vec![], assumed, complete: true })
}

fn run_twist_e(p: &TwistEPayload) -> Result<Outcome> {
    let k = p.k.build()?;
    let (types, shown) = resolve_all(&p.components)?;
    let datum = WeilDatum::new(k.clone(), types)?;
    let rep = twist::twist_e(p.dim_x, p.dim_y, &k, &datum, p.assumed, &p.extension_label)?;
    let assumed = rep.assumed.iter().map(|s| s.to_string()).collect();
    let results = json!({ "components": shown, "datum": multiplicity_json(&datum), "report": rep });
    Ok(Outcome { results, anchors: vec![], assumed, complete: true })
}

fn run_inertia(p: &InertiaPayload) -> Result<Outcome> {
    let cert = inertia::kitself_certificate(p.p)?;
    let complete = cert.passed();
    let assumed = cert.assumptions.iter().map(|s| s.to_string()).collect();
    let mut results = json!({ "certificate": cert });
    if let Ok(io) = inertia::inertia_order(p.p) {
        results["inertia_order"] = json!(io);
    }
    Ok(Outcome { results, anchors: vec![], assumed, complete })
}

fn run_base_cert(p: &BaseCertPayload) -> Result<Outcome> {
    let cert = inertia::base_certificate(p.p, p.q)?;
    let complete = cert.passed();
    let assumed = cert.assumptions.iter().map(|s| s.to_string()).collect();
    Ok(Outcome { results: json!({ "certificate": cert }), anchors: vec![], assumed, complete })
}

/// The declared basis `(35, 37)` of `Gal(K/Q) ≅ Z/2 × Z/8` for `K = Q(√−3)·Q(ζ₁₇)⁺`.
pub const EXAMPLE_41_BASIS: [u64; 2] = [35, 37];

/// `Ψ` in coordinates for [`EXAMPLE_41_BASIS`].
pub const EXAMPLE_41_PSI: [[u64; 2]; 8] = [[0, 0], [0, 1], [0, 4], [0, 7], [1, 2], [1, 3], [1, 5], [1, 6]];

pub const EXAMPLE_41_CONCLUSIONS: [&str; 2] = ["F(End(B)) = F", "F_Phi(B) = M, [F_Phi(B):F] = 3"];

fn example_41() -> Result<Outcome> {
    let k = AbelianField::quadratic(-3)?;
    let l = AbelianField::real_subfield_of(17)?;
    let big = k.compositum(&l);
    let group = big.galois_group();
    let factors = group.invariant_factors();
    ensure(factors.as_slice() == [2, 8], "Gal(K/Q) = Z/2 x Z/8")?;

    let basis = group.basis(&EXAMPLE_41_BASIS)?;
    let to_k = big.restriction_to(&k)?;
    let to_l = big.restriction_to(&l)?;
    let (gk, gl) = (k.galois_group(), l.galois_group());
    let [c1, c2] = EXAMPLE_41_BASIS.map(|g| group.coset_of(g).expect("unit"));
    let adapted = to_k[c1] != gk.identity()
        && to_l[c1] == gl.identity()
        && to_k[c2] == gk.identity()
        && gl.element_order(to_l[c2]) == 8;
    ensure(adapted, "basis restricts to Gal(k/Q) x Gal(L/Q)")?;

    let spec = CmTypeSpec {
        field: FieldLiteral::Compositum(vec![FieldLiteral::Quadratic(-3), FieldLiteral::RealSubfieldOf(17)]),
        psi: EXAMPLE_41_PSI.iter().map(|c| Label::Coordinates(c.to_vec())).collect(),
        basis: Some(EXAMPLE_41_BASIS.to_vec()),
    };
    let res = spec.resolve()?;
    let psi = res.cm_type.clone();
    let stabilizer = psi.stabilizer_reps();
    ensure(stabilizer.len() == 1 && psi.is_primitive(), "Psi is primitive")?;
    ensure(psi.reflex_field() == big, "reflex field of (K, Psi) is K")?;

    let datum = WeilDatum::new(k.clone(), vec![psi.clone()])?;
    let mult = datum.restriction_multiplicities();
    ensure(mult.0.len() == 2 && mult.0.values().all(|&n| n == 4), "n_sigma = 4 for both embeddings of k")?;
    ensure(datum.is_weil_type(), "(A, k, iota) is of Weil type")?;
    let r = datum.weil_r()?;

    let c = twist::make_character(&k, 3, "M")?;
    let rep = twist::twist_x(&datum, &c, TwistXAssumptions::default())?;
    let exact = rep.phib_over_f_exact.as_ref().map(|a| a.value);
    ensure(rep.t == 1 && rep.phib_equals_m.value && exact == Some(3), "F_Phi(B) = M")?;
    ensure(rep.end_b_over_f.value, "F(End(B)) = F")?;

    let assumed = rep.assumed.iter().map(|s| s.to_string()).collect();
    let results = json!({
        "k": k,
        "L": l,
        "K": big,
        "invariant_factors": factors,
        "basis": {
            "generators": basis.generators(),
            "factors": basis.factors(),
            "declared": EXAMPLE_41_BASIS,
            "adapted_to_k_times_L": adapted,
        },
        "cm_type": cm_type_json(&res),
        "stabilizer": stabilizer,
        "primitive": true,
        "reflex_field": psi.reflex_field(),
        "n_sigma": mult,
        "weil_type": true,
        "r": r,
        "character": character_json(&c),
        "twist_x": rep,
        "conclusions": EXAMPLE_41_CONCLUSIONS,
    });
    Ok(Outcome { results, anchors: vec!["twistX(iii)"], assumed, complete: true })
}

pub const ASSUME_HOM_J_E: &str = "Hom(J, E^(d)) = 0";
pub const ASSUME_END_FIELDS: &str = "K = K(End(J)) = K(End(E^(d)))";

pub const EXAMPLE_42_ASSUMPTIONS: [&str; 4] =
    [ASSUME_CLASS_NUMBER, ASSUME_GOOD_REDUCTION, ASSUME_HOM_J_E, ASSUME_END_FIELDS];

pub const CONCLUSION_END: &str = "K = Q(End(A^(d)))";
pub const CONCLUSION_BASE: &str = "K_Phi(A) = K";
pub const CONCLUSION_LD: &str = "Q_Phi(A^(d)) = L_d";

fn example_42(p: &Example42Payload) -> Result<Outcome> {
    let d = p.d;
    if d == 0 || !fields::is_squarefree(d.unsigned_abs()) {
        return Err(input(format!("d = {d} must be a non-zero squarefree integer")));
    }
    let big = AbelianField::cyclotomic(7)?;
    let j = CmType::new(&big, &[1, 2, 3])?;
    ensure(j.is_primitive(), "the CM-type of J is primitive")?;
    ensure(j.reflex_field() == big, "reflex field of the CM-type of J is K")?;
    let inverse = j.reflex_type(ReflexConvention::Inverse);
    let conjugate = j.reflex_type(ReflexConvention::Conjugate);

    let k = AbelianField::quadratic(-7)?;
    ensure(k.is_subfield_of(&big), "k is a subfield of K")?;
    let jacobian = WeilDatum::new(k.clone(), vec![j.clone()])?;
    let (e, balanced) = jacobian.balance_product()?;
    ensure(balanced.is_weil_type(), "J x E is of Weil type over k")?;

    let base = inertia::base_certificate(p.p, p.q)?;
    let base_ok = base.passed();

    let l_d = if d == 1 { big.clone() } else { big.compositum(&AbelianField::quadratic(d)?) };
    let relative = l_d.degree() / big.degree();

    let mut results = json!({
        "K": big,
        "k": k,
        "d": d,
        "L_d": l_d,
        "L_d_over_K": relative,
        "cm_type_J": j,
        "primitive": true,
        "reflex_field": j.reflex_field(),
        "reflex_types": {
            "inverse": inverse.cm_type.psi(),
            "conjugate": conjugate.cm_type.psi(),
        },
        "jacobian_over_k": multiplicity_json(&jacobian),
        "cm_type_E": e,
        "product_over_k": multiplicity_json(&balanced),
        "base_certificate": base,
    });

    let mut conclusions = vec![CONCLUSION_END];
    if base_ok {
        conclusions.push(CONCLUSION_BASE);
        if relative == 1 {
            // E^(d) is isomorphic to E over K, so A^(d) and A agree over K.
            results["twist_e"] = Value::Null;
            conclusions.push(CONCLUSION_LD);
        } else {
            let assumed = TwistEAssumptions { hom_xy_zero: true, f_equals_f_end_xy: true, f_phi_a_equals_f: true };
            let rep = twist::twist_e(3, 1, &k, &balanced, assumed, "L_d")?;
            ensure(rep.phib_equals_m.value, "F_Phi(B) = M with M = L_d")?;
            results["twist_e"] = json!(rep);
            conclusions.push(CONCLUSION_LD);
        }
    }
    results["conclusions"] = json!(conclusions);
    Ok(Outcome {
        results,
        anchors: vec!["bigex", "Kitself", "powerofp"],
        assumed: EXAMPLE_42_ASSUMPTIONS.iter().map(|s| s.to_string()).collect(),
        complete: base_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(v: Value) -> String {
        v.to_string()
    }

    #[test]
    fn unknown_command_and_keys_are_rejected() {
        let e = validate_input(&doc(json!({ "command": "frobnicate" }))).unwrap_err();
        assert_eq!(e.exit_code(), 1);
        assert!(e.to_string().contains("unknown command"));
        let e = validate_input(&doc(json!({ "command": "inertia", "payload": { "p": 3, "x": 1 } }))).unwrap_err();
        assert!(e.to_string().contains("unknown field"), "{e}");
        let e = validate_input(&doc(json!({ "command": "inertia", "payload": { "p": 3 }, "extra": 1 }))).unwrap_err();
        assert!(e.to_string().contains("unknown field"), "{e}");
        let d = doc(json!({ "command": "cmtype", "payload": { "field": { "cyclotomic": 7 }, "psi": [1, 2, 3], "bogus": 0 } }));
        assert!(validate_input(&d).unwrap_err().to_string().contains("bogus"));
        let e = validate_input("{\n  \"command\": \n").unwrap_err();
        assert!(e.to_string().contains("line"), "{e}");
    }

    #[test]
    fn non_half_system_is_an_input_error() {
        let d = doc(json!({ "command": "cmtype", "payload": { "field": { "cyclotomic": 7 }, "psi": [1, 6, 2] } }));
        let e = validate_input(&d).unwrap_err();
        assert_eq!(e.exit_code(), 1);
        assert!(e.to_string().contains("complex conjugate"), "{e}");
    }

    #[test]
    fn field_report() {
        let r = run_document(&doc(json!({ "command": "field", "payload": { "field": { "quadratic": -7 } } }))).unwrap();
        assert_eq!(r.results["field"]["degree"], 2);
        assert_eq!(r.results["field"]["is_cm"], true);
        assert_eq!(r.results["roots_of_unity"], 2);
        assert!(r.complete);
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let d = doc(json!({ "command": "example-42", "payload": { "q": 31 } }));
        let spec = validate_input(&d).unwrap();
        let canon = spec.to_canonical();
        assert_eq!(canon, r#"{"command":"example-42","payload":{"d":-1,"p":3,"q":31}}"#);
        assert_eq!(validate_input(&canon).unwrap().to_canonical(), canon);
    }

    #[test]
    fn coordinates_resolve_through_declared_basis() {
        let d = doc(json!({
            "command": "cmtype",
            "payload": {
                "field": { "compositum": [{ "quadratic": -3 }, { "real_subfield_of": 17 }] },
                "basis": [35, 37],
                "psi": [[0, 0], [0, 1], [0, 4], [0, 7], [1, 2], [1, 3], [1, 5], [1, 6]],
                "base": { "quadratic": -3 }
            }
        }));
        let r = run_document(&d).unwrap();
        assert_eq!(r.results["primitive"], true);
        assert_eq!(r.results["cm_type"]["basis"]["declared"], json!([35, 37]));
        // 37·16 ≡ 31 (mod 51)
        assert_eq!(r.results["cm_type"]["basis"]["generators"], json!([35, 31]));
        assert_eq!(r.results["restriction"]["n_sigma"], json!({ "1": 4, "2": 4 }));
    }

    #[test]
    fn exit_codes() {
        let r = run_document(&doc(json!({ "command": "base-cert", "payload": { "p": 3, "q": 2 } }))).unwrap();
        assert_eq!(r.exit_code(), 2);
        let e = run_document(&doc(json!({ "command": "base-cert", "payload": { "p": 3, "q": 3 } }))).unwrap_err();
        assert_eq!(e.exit_code(), 1);
        let d = doc(json!({ "command": "twist-x", "payload": {
            "base": { "quadratic": -3 },
            "components": [{ "field": { "quadratic": -3 }, "psi": [1] }, { "field": { "quadratic": -3 }, "psi": [2] }],
            "n": 2
        }}));
        let e = run_document(&d).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().contains(twist::HYP_N_NOT_DIVIDING_R), "{e}");
    }

    #[test]
    fn examples_complete() {
        let r = run(&JobSpec::new(Job::Example41(Example41Payload {}))).unwrap();
        assert!(r.complete);
        assert_eq!(r.results["conclusions"], json!(EXAMPLE_41_CONCLUSIONS));
        let r = run(&JobSpec::new(Job::Example42(Example42Payload::default()))).unwrap();
        assert!(r.complete);
        assert_eq!(r.results["conclusions"], json!([CONCLUSION_END, CONCLUSION_BASE, CONCLUSION_LD]));
        for d in [1, -7] {
            let r = run(&JobSpec::new(Job::Example42(Example42Payload { d, ..Default::default() }))).unwrap();
            assert_eq!(r.results["L_d_over_K"], 1);
            assert!(r.results["twist_e"].is_null());
        }
        let r = run(&JobSpec::new(Job::Example42(Example42Payload { q: 5, ..Default::default() }))).unwrap();
        assert!(!r.complete);
        assert_eq!(r.results["conclusions"], json!([CONCLUSION_END]));
    }

    #[test]
    fn reports_are_byte_stable() {
        let d = doc(json!({ "command": "example-41" }));
        assert_eq!(run_document(&d).unwrap().to_json(), run_document(&d).unwrap().to_json());
    }
}
