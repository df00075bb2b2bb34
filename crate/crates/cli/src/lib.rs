//! Batch front end: reads an algebroid with named 2-forms from JSON and runs
//! validation, classification, enumeration and the self-test on it.

pub mod input;

use std::path::Path;

use hyperforge::algebroid::{self, AlgebroidError, Form};
use hyperforge::coeff::{CoeffError, CoeffMatrix};
use hyperforge::conventions;
use hyperforge::hyperstruct::{self, ClassificationReport, HyperError, StructClass};
use indexmap::IndexMap;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use input::{InputDocument, Loaded};

/// Fingerprint of the calibrated conventions this build was verified against.
pub const EXPECTED_FINGERPRINT: &str = "2563827919c16eeb8e9df1e1b9f7187400beed31ba379b933d0b55b969aec025";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("invalid document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("in {location}: {source}")]
    Expression { location: String, source: CoeffError },
    #[error("shape: {0}")]
    Shape(String),
    #[error("unknown form `{0}`")]
    UnknownForm(String),
    #[error("--triple needs exactly three comma-separated names")]
    TripleArity,
    #[error(transparent)]
    Algebroid(#[from] AlgebroidError),
}

#[derive(Debug, Clone, Serialize)]
pub struct Header {
    pub tool: &'static str,
    pub version: &'static str,
    pub fingerprint: String,
}

impl Header {
    pub fn new() -> Self {
        Header { tool: "hyperforge", version: env!("CARGO_PKG_VERSION"), fingerprint: conventions::fingerprint() }
    }
}

impl Default for Header {
    fn default() -> Self {
        Self::new()
    }
}

/// Result of a command: the exit code, a JSON report and a plain-text rendering.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub report: serde_json::Value,
    pub text: String,
}

impl Outcome {
    fn new(code: i32, report: &impl Serialize, text: String) -> Self {
        let report = serde_json::to_value(report).expect("reports serialize");
        Outcome { code, report, text }
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(&self.report).expect("reports serialize")
    }
}

fn threads() -> Option<usize> {
    std::env::var("HYPERFORGE_THREADS").ok().and_then(|v| v.trim().parse().ok())
}

/// Maps in input order; `HYPERFORGE_THREADS=0` runs serially, `n > 0` caps the pool.
fn ordered_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    match threads() {
        Some(0) => items.iter().map(f).collect(),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
            Err(_) => items.iter().map(f).collect(),
        },
        None => items.par_iter().map(f).collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FormCheck {
    pub name: String,
    pub closed: bool,
    pub nondegenerate: bool,
}

impl FormCheck {
    pub fn ok(&self) -> bool {
        self.closed && self.nondegenerate
    }
}

fn check_form(loaded: &Loaded, name: &str, w: &CoeffMatrix) -> FormCheck {
    let closed = Form::two_form(loaded.spec.gens(), w)
        .map(|f| algebroid::differential(&loaded.mu, &f).is_zero())
        .unwrap_or(false);
    let nondegenerate = w.determinant().map(|d| !d.is_zero()).unwrap_or(false);
    FormCheck { name: name.to_string(), closed, nondegenerate }
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidateReport {
    #[serde(flatten)]
    pub header: Header,
    pub jacobi: bool,
    pub forms: Vec<FormCheck>,
    pub errors: Vec<String>,
    pub passed: bool,
}

pub fn validate(loaded: &Loaded) -> Outcome {
    let jacobi = loaded.mu.check_jacobi();
    let forms: Vec<FormCheck> = loaded.forms.iter().map(|(n, w)| check_form(loaded, n, w)).collect();
    let mut errors = Vec::new();
    if !jacobi {
        errors.push("jacobi: {mu, mu} != 0".to_string());
    }
    for f in &forms {
        if !f.closed {
            errors.push(format!("form {}: not closed", f.name));
        }
        if !f.nondegenerate {
            errors.push(format!("form {}: degenerate", f.name));
        }
    }
    let passed = errors.is_empty();
    let mut text = format!("jacobi: {}\n", if jacobi { "ok" } else { "FAILED" });
    for f in &forms {
        text.push_str(&format!(
            "{}: closed={} nondegenerate={}\n",
            f.name, f.closed, f.nondegenerate
        ));
    }
    text.push_str(if passed { "valid\n" } else { "invalid\n" });
    let report = ValidateReport { header: Header::new(), jacobi, forms, errors, passed };
    Outcome::new(if passed { EXIT_OK } else { EXIT_FAILURE }, &report, text)
}

pub fn parse_triple(spec: &str) -> Result<[String; 3], CliError> {
    let names: Vec<String> = spec.split(',').map(|s| s.trim().to_string()).collect();
    names.try_into().map_err(|_| CliError::TripleArity)
}

#[derive(Debug, Clone, Serialize)]
pub struct TripleReport {
    pub forms: [String; 3],
    pub report: ClassificationReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyReport {
    #[serde(flatten)]
    pub header: Header,
    pub warnings: Vec<String>,
    pub errors: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triple: Option<TripleReport>,
}

fn eps_text(r: &ClassificationReport) -> String {
    match &r.epsilon {
        Some(e) => format!("eps=({},{},{})", e.eps[0], e.eps[1], e.eps[2]),
        None => "eps=none".to_string(),
    }
}

fn class_name(c: StructClass) -> &'static str {
    match c {
        StructClass::NotEpsilonHypersymplectic => "NotEpsilonHypersymplectic",
        StructClass::Hypersymplectic => "Hypersymplectic",
        StructClass::ParaHypersymplectic => "ParaHypersymplectic",
        StructClass::PositiveProduct => "PositiveProduct",
    }
}

fn classify_names(loaded: &Loaded, names: &[String; 3]) -> Result<Result<TripleReport, HyperError>, CliError> {
    let w = [loaded.form(&names[0])?, loaded.form(&names[1])?, loaded.form(&names[2])?];
    Ok(hyperstruct::build_triple(&loaded.mu, w)
        .map(|t| TripleReport { forms: names.clone(), report: hyperstruct::classify(&t) }))
}

fn duplicate_warnings(names: &[String; 3]) -> Vec<String> {
    let mut out = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            if names[i] == names[j] {
                out.push(format!("duplicate form {} at positions {} and {}", names[i], i + 1, j + 1));
            }
        }
    }
    out
}

pub fn classify(loaded: &Loaded, names: &[String; 3]) -> Result<Outcome, CliError> {
    let warnings = duplicate_warnings(names);
    let mut errors = Vec::new();
    if !loaded.mu.check_jacobi() {
        errors.push("jacobi: {mu, mu} != 0".to_string());
    }
    let mut triple = None;
    if errors.is_empty() {
        match classify_names(loaded, names)? {
            Ok(t) => triple = Some(t),
            Err(e) => errors.push(format!("{}: {e}", names.join(","))),
        }
    }
    let mut text = String::new();
    for w in &warnings {
        text.push_str(&format!("warning: {w}\n"));
    }
    for e in &errors {
        text.push_str(&format!("error: {e}\n"));
    }
    if let Some(t) = &triple {
        text.push_str(&format!("{}  {}  {}\n", names.join(","), class_name(t.report.class), eps_text(&t.report)));
        if t.report.rotation != 0 {
            text.push_str(&format!("canonicalized by cyclic shift {}\n", t.report.rotation));
        }
        let failed = t.report.failed_identities();
        if t.report.epsilon.is_some() {
            text.push_str(&format!("identities: {} checked, {} failed\n", t.report.suite.len(), failed.len()));
        }
    }
    let code = if errors.is_empty() { EXIT_OK } else { EXIT_FAILURE };
    Ok(Outcome::new(code, &ClassifyReport { header: Header::new(), warnings, errors, triple }, text))
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub total: usize,
    pub by_class: IndexMap<&'static str, usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EnumerateReport {
    #[serde(flatten)]
    pub header: Header,
    pub warnings: Vec<String>,
    pub errors: Vec<String>,
    pub triples: Vec<TripleReport>,
    pub summary: Summary,
}

pub fn enumerate(loaded: &Loaded) -> Result<Outcome, CliError> {
    let mut warnings = Vec::new();
    let mut errors = Vec::new();
    if !loaded.mu.check_jacobi() {
        errors.push("jacobi: {mu, mu} != 0".to_string());
    }
    let mut usable = Vec::new();
    for (name, w) in &loaded.forms {
        let check = check_form(loaded, name, w);
        if check.ok() {
            usable.push(name.clone());
        } else {
            let why = if !check.closed { "not closed" } else { "degenerate" };
            warnings.push(format!("form {name} excluded: {why}"));
        }
    }
    let mut combos = Vec::new();
    if errors.is_empty() {
        for a in 0..usable.len() {
            for b in a + 1..usable.len() {
                for c in b + 1..usable.len() {
                    combos.push([usable[a].clone(), usable[b].clone(), usable[c].clone()]);
                }
            }
        }
    }
    let results = ordered_map(&combos, |names| classify_names(loaded, names));
    let mut triples = Vec::new();
    for (names, r) in combos.iter().zip(results) {
        match r? {
            Ok(t) => triples.push(t),
            Err(e) => errors.push(format!("{}: {e}", names.join(","))),
        }
    }
    let mut by_class = IndexMap::new();
    for c in StructClass::ALL {
        by_class.insert(class_name(c), triples.iter().filter(|t| t.report.class == c).count());
    }
    let summary = Summary { total: triples.len(), by_class };
    let mut text = String::new();
    for w in &warnings {
        text.push_str(&format!("warning: {w}\n"));
    }
    for e in &errors {
        text.push_str(&format!("error: {e}\n"));
    }
    for t in &triples {
        text.push_str(&format!("{}  {}  {}\n", t.forms.join(","), class_name(t.report.class), eps_text(&t.report)));
    }
    text.push_str(&format!("total: {}\n", summary.total));
    for (c, n) in &summary.by_class {
        text.push_str(&format!("{c}: {n}\n"));
    }
    let code = if errors.is_empty() { EXIT_OK } else { EXIT_FAILURE };
    let report = EnumerateReport { header: Header::new(), warnings, errors, triples, summary };
    Ok(Outcome::new(code, &report, text))
}

#[derive(Debug, Clone, Serialize)]
pub struct Calibration {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestReport {
    #[serde(flatten)]
    pub header: Header,
    pub expected_fingerprint: &'static str,
    pub calibration: Vec<Calibration>,
    pub failed: Vec<String>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triple: Option<TripleReport>,
}

/// Calibration, fingerprint check, then the full identity suite and induced
/// inventory on one triple. `corrupt_fingerprint` simulates a build whose
/// conventions drifted from the verified ones.
pub fn selftest(loaded: &Loaded, names: &[String; 3], corrupt_fingerprint: bool) -> Result<Outcome, CliError> {
    let mut header = Header::new();
    if corrupt_fingerprint {
        header.fingerprint = header.fingerprint.chars().rev().collect();
    }
    let calibration: Vec<Calibration> = conventions::calibrate()
        .into_iter()
        .map(|(name, passed)| Calibration { name: name.to_string(), passed })
        .collect();
    let mut failed: Vec<String> =
        calibration.iter().filter(|c| !c.passed).map(|c| format!("calibration: {}", c.name)).collect();
    if header.fingerprint != EXPECTED_FINGERPRINT {
        failed.push(format!("calibration: fingerprint {} != {}", header.fingerprint, EXPECTED_FINGERPRINT));
    }
    if !loaded.mu.check_jacobi() {
        failed.push("jacobi: {mu, mu} != 0".to_string());
    }
    let mut triple = None;
    match classify_names(loaded, names)? {
        Ok(t) => {
            if t.report.epsilon.is_none() {
                failed.push(format!("{}: no epsilon signature", names.join(",")));
            }
            failed.extend(t.report.failed_identities());
            triple = Some(t);
        }
        Err(e) => failed.push(format!("{}: {e}", names.join(","))),
    }
    let passed = failed.is_empty();
    let mut text = String::new();
    for c in &calibration {
        text.push_str(&format!("calibration {}: {}\n", c.name, if c.passed { "ok" } else { "FAILED" }));
    }
    if let Some(t) = &triple {
        text.push_str(&format!("{}  {}  {}\n", names.join(","), class_name(t.report.class), eps_text(&t.report)));
        text.push_str(&format!("identities checked: {}\n", t.report.suite.len()));
        if let Some(inv) = &t.report.induced {
            text.push_str(&format!("induced pairs verified: {}/{}\n", inv.verified(), inv.pairs.len()));
        }
    }
    for f in &failed {
        text.push_str(&format!("FAILED: {f}\n"));
    }
    text.push_str(if passed { "selftest passed\n" } else { "selftest failed\n" });
    let report =
        SelftestReport { header, expected_fingerprint: EXPECTED_FINGERPRINT, calibration, failed, passed, triple };
    Ok(Outcome::new(if passed { EXIT_OK } else { EXIT_FAILURE }, &report, text))
}

pub fn load(path: &Path) -> Result<Loaded, CliError> {
    input::read(path)
}
