//! Assessment documents: the human-entered inputs for one PMS version.
//!
//! Documents are strict JSON. Unknown keys are rejected, missing weights
//! default to 1.0 and a missing `analyzer_config` falls back to
//! [`AnalyzerConfig::default`]. Loading checks every range invariant, so a
//! document returned by [`load_assessment`] is ready for evaluation.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use crate::rules::{AnalyzerConfig, BlackBoxSpec};

/// Highest portability / scalability level ("No change").
pub const MAX_FACTOR: f64 = 3.0;
pub const MIN_READABILITY: f64 = 1.0;
pub const MAX_READABILITY: f64 = 3.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PmsIdentity {
    pub name: String,
    pub version: String,
}

impl PmsIdentity {
    pub fn new(name: impl Into<String>, version: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            version: version.into(),
        }
    }

    /// `name@version`, used to label candidates in comparisons.
    pub fn label(&self) -> String {
        format!("{}@{}", self.name, self.version)
    }
}

impl fmt::Display for PmsIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.name, self.version)
    }
}

fn default_weight() -> f64 {
    1.0
}

/// One software module of the PMS.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleAssessment {
    pub name: String,
    /// Relative significance of the module. The same weight is used for
    /// portability, scalability and complexity.
    #[serde(default = "default_weight")]
    pub weight: f64,
    /// Portability level, 0 (not portable) to 3 (no change). Fractional
    /// levels such as 2.5 are allowed.
    pub portability: f64,
    /// Scalability level on the same 0–3 scale.
    pub scalability: f64,
    pub complexity: ComplexitySource,
}

/// Where a module's complexity inputs come from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum ComplexitySource {
    Manual(ComplexityInputs),
    /// A rule-language file, resolved relative to the document. Analyzed with
    /// the document's `analyzer_config`.
    Source(SourceRef),
    BlackBox(BlackBoxSpec),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceRef {
    pub path: String,
}

/// Readability, McCabe number, fan-in and fan-out of one module.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexityInputs {
    pub readability: f64,
    pub mccabe: u32,
    pub fan_in: u32,
    pub fan_out: u32,
}

impl ComplexityInputs {
    pub fn new(readability: f64, mccabe: u32, fan_in: u32, fan_out: u32) -> Self {
        Self {
            readability,
            mccabe,
            fan_in,
            fan_out,
        }
    }
}

/// Evidence for a coverage-style autonomy sub-metric.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoverageEvidence {
    /// Automated tasks (or alarms) out of the total.
    Counts(TaskCounts),
    DirectPercent(DirectPercent),
}

impl CoverageEvidence {
    pub fn counts(auto: u64, total: u64) -> Self {
        Self::Counts(TaskCounts { auto, total })
    }

    pub fn percent(percent: f64) -> Self {
        Self::DirectPercent(DirectPercent { percent })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskCounts {
    pub auto: u64,
    pub total: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DirectPercent {
    pub percent: f64,
}

/// A qualitative percentage assigned with the help of a band table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandedScore {
    pub percent: f64,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub justification: String,
}

impl BandedScore {
    pub fn new(percent: f64, justification: impl Into<String>) -> Self {
        Self {
            percent,
            justification: justification.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutonomyAssessment {
    pub operator_independence: CoverageEvidence,
    pub self_preservation: CoverageEvidence,
    pub strategy: BandedScore,
    pub coordination: BandedScore,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssessmentDocument {
    pub pms: PmsIdentity,
    pub modules: Vec<ModuleAssessment>,
    pub autonomy: AutonomyAssessment,
    #[serde(default)]
    pub analyzer_config: AnalyzerConfig,
}

/// One broken invariant, addressed by a JSON-path-like field name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub field: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, field: impl Into<String>, message: impl Into<String>) {
        self.violations.push(Violation {
            field: field.into(),
            message: message.into(),
        });
    }

    fn check_range(&mut self, field: impl Into<String>, value: f64, min: f64, max: f64) {
        if value.is_nan() {
            self.push(field, "value is not a number");
        } else if value < min {
            self.push(field, format!("{value} is below the lower bound {min}"));
        } else if value > max {
            self.push(field, format!("{value} is above the upper bound {max}"));
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error at line {line}, column {column}: {message}")]
    Schema {
        line: usize,
        column: usize,
        message: String,
    },
    /// The document parsed but breaks one or more invariants.
    #[error("range error: {0}")]
    Range(ValidationReport),
}

impl LoadError {
    fn from_json(err: serde_json::Error) -> Self {
        use serde_json::error::Category;
        let (line, column) = (err.line(), err.column());
        let message = err.to_string();
        match err.classify() {
            Category::Data => LoadError::Schema {
                line,
                column,
                message,
            },
            Category::Syntax | Category::Eof | Category::Io => LoadError::Syntax {
                line,
                column,
                message,
            },
        }
    }
}

/// Parses a document without checking range invariants.
///
/// Useful when the caller wants the full [`ValidationReport`] rather than an
/// error; [`load_assessment`] is this plus [`validate_assessment`].
pub fn parse_assessment(bytes: &[u8]) -> Result<AssessmentDocument, LoadError> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let valid = &bytes[..e.valid_up_to()];
        let line = valid.iter().filter(|&&b| b == b'\n').count() + 1;
        let line_start = valid
            .iter()
            .rposition(|&b| b == b'\n')
            .map_or(0, |p| p + 1);
        let column = String::from_utf8_lossy(&valid[line_start..]).chars().count() + 1;
        LoadError::Syntax {
            line,
            column,
            message: "document is not valid UTF-8".to_string(),
        }
    })?;
    serde_json::from_str(text).map_err(LoadError::from_json)
}

/// Loads and fully validates an assessment document.
pub fn load_assessment(bytes: &[u8]) -> Result<AssessmentDocument, LoadError> {
    let doc = parse_assessment(bytes)?;
    let report = validate_assessment(&doc);
    if report.is_valid() {
        Ok(doc)
    } else {
        Err(LoadError::Range(report))
    }
}

/// Checks every document invariant and reports all violations found.
pub fn validate_assessment(doc: &AssessmentDocument) -> ValidationReport {
    let mut report = ValidationReport::default();

    if doc.pms.name.trim().is_empty() {
        report.push("pms.name", "must not be empty");
    }
    if doc.pms.version.trim().is_empty() {
        report.push("pms.version", "must not be empty");
    }
    if doc.modules.is_empty() {
        report.push("modules", "at least one module is required");
    }

    let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, module) in doc.modules.iter().enumerate() {
        let at = |field: &str| format!("modules[{i}].{field}");
        if module.name.trim().is_empty() {
            report.push(at("name"), "must not be empty");
        }
        if let Some(first) = seen.get(module.name.as_str()) {
            report.push(
                at("name"),
                format!(
                    "duplicate module name {:?} (first used by modules[{first}])",
                    module.name
                ),
            );
        } else {
            seen.insert(&module.name, i);
        }
        if !module.weight.is_finite() || module.weight <= 0.0 {
            report.push(
                at("weight"),
                format!("{} must be finite and greater than 0", module.weight),
            );
        }
        report.check_range(at("portability"), module.portability, 0.0, MAX_FACTOR);
        report.check_range(at("scalability"), module.scalability, 0.0, MAX_FACTOR);
        match &module.complexity {
            ComplexitySource::Manual(inputs) => {
                report.check_range(
                    at("complexity.readability"),
                    inputs.readability,
                    MIN_READABILITY,
                    MAX_READABILITY,
                );
                if inputs.mccabe < 1 {
                    report.push(at("complexity.mccabe"), "0 is below the lower bound 1");
                }
            }
            ComplexitySource::Source(src) => {
                if src.path.trim().is_empty() {
                    report.push(at("complexity.path"), "must not be empty");
                }
            }
            ComplexitySource::BlackBox(_) => {}
        }
    }

    let autonomy = &doc.autonomy;
    check_coverage(
        &mut report,
        "autonomy.operator_independence",
        &autonomy.operator_independence,
    );
    check_coverage(
        &mut report,
        "autonomy.self_preservation",
        &autonomy.self_preservation,
    );
    report.check_range(
        "autonomy.strategy.percent",
        autonomy.strategy.percent,
        0.0,
        100.0,
    );
    report.check_range(
        "autonomy.coordination.percent",
        autonomy.coordination.percent,
        0.0,
        100.0,
    );

    report
}

fn check_coverage(report: &mut ValidationReport, field: &str, evidence: &CoverageEvidence) {
    match evidence {
        CoverageEvidence::Counts(TaskCounts { auto, total }) => {
            if *total < 1 {
                report.push(format!("{field}.total"), "0 is below the lower bound 1");
            }
            if auto > total {
                report.push(
                    format!("{field}.auto"),
                    format!(
                        "automated count {auto} exceeds total {total}; the ratio auto/total cannot exceed 100%"
                    ),
                );
            }
        }
        CoverageEvidence::DirectPercent(DirectPercent { percent }) => {
            report.check_range(format!("{field}.percent"), *percent, 0.0, 100.0);
        }
    }
}

/// Deterministic pretty JSON with a trailing newline.
pub fn serialize_assessment(doc: &AssessmentDocument) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(doc).expect("assessment documents always serialize");
    out.push(b'\n');
    out
}
