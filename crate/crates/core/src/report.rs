//! Whole-document evaluation, version deltas and candidate comparison.

use std::collections::HashMap;
use std::fmt;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assessment::{validate_assessment, AssessmentDocument, ComplexitySource, PmsIdentity, ValidationReport};
use crate::metrics::{
    autonomy_profile, modifiability_profile, module_complexity, pms_complexity, portability_score,
    scalability_score, MetricsError, MetricsReport,
};
use crate::rules::{analyze_source, blackbox_inputs, AnalyzeError};

#[derive(Debug, Error)]
pub enum EvaluateError {
    #[error("invalid assessment: {0}")]
    Invalid(ValidationReport),
    #[error("module {module:?}: cannot read {path:?}: {source}")]
    Io {
        module: String,
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("module {module:?}: {path}: {source}")]
    Analyze {
        module: String,
        path: String,
        #[source]
        source: AnalyzeError,
    },
    #[error("{context}: {source}")]
    Metrics {
        context: String,
        #[source]
        source: MetricsError,
    },
}

fn metrics_err(context: &str) -> impl FnOnce(MetricsError) -> EvaluateError + '_ {
    move |source| EvaluateError::Metrics {
        context: context.to_string(),
        source,
    }
}

/// Evaluates a document whose source paths are relative to `base_dir`.
pub fn evaluate_pms(doc: &AssessmentDocument, base_dir: &Path) -> Result<MetricsReport, EvaluateError> {
    evaluate_with(doc, |path| std::fs::read_to_string(base_dir.join(path)))
}

/// Evaluates a document, reading rule sources through `read`. Each distinct
/// path is read at most once.
pub fn evaluate_with<F>(doc: &AssessmentDocument, mut read: F) -> Result<MetricsReport, EvaluateError>
where
    F: FnMut(&str) -> io::Result<String>,
{
    let violations = validate_assessment(doc);
    if !violations.is_valid() {
        return Err(EvaluateError::Invalid(violations));
    }

    let mut sources: HashMap<&str, String> = HashMap::new();
    let mut weighted = Vec::with_capacity(doc.modules.len());
    for module in &doc.modules {
        let inputs = match &module.complexity {
            ComplexitySource::Manual(inputs) => *inputs,
            ComplexitySource::BlackBox(spec) => blackbox_inputs(*spec),
            ComplexitySource::Source(src) => {
                let path = src.path.as_str();
                if !sources.contains_key(path) {
                    let text = read(path).map_err(|source| EvaluateError::Io {
                        module: module.name.clone(),
                        path: path.to_string(),
                        source,
                    })?;
                    sources.insert(path, text);
                }
                analyze_source(&sources[path], &doc.analyzer_config)
                    .map_err(|source| EvaluateError::Analyze {
                        module: module.name.clone(),
                        path: path.to_string(),
                        source,
                    })?
                    .inputs
            }
        };
        weighted.push((module.weight, module_complexity(&module.name, inputs)));
    }

    let portability = portability_score(&doc.modules).map_err(metrics_err("portability"))?;
    let scalability = scalability_score(&doc.modules).map_err(metrics_err("scalability"))?;
    let modifiability =
        modifiability_profile(portability, scalability).map_err(metrics_err("modifiability"))?;
    let complexity = pms_complexity(&weighted).map_err(metrics_err("complexity"))?;
    let autonomy = autonomy_profile(&doc.autonomy).map_err(metrics_err("autonomy"))?;

    Ok(MetricsReport {
        pms: doc.pms.clone(),
        portability,
        scalability,
        modifiability_length: modifiability.length,
        modifiability_offset: modifiability.offset,
        complexity,
        module_complexities: weighted.into_iter().map(|(_, m)| m).collect(),
        autonomy,
    })
}

/// The metrics that diffs and comparisons track.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Portability,
    Scalability,
    Complexity,
    OperatorIndependence,
    SelfPreservation,
    Strategy,
    Coordination,
    AutonomyTotal,
}

impl Metric {
    pub const ALL: [Metric; 8] = [
        Metric::Portability,
        Metric::Scalability,
        Metric::Complexity,
        Metric::OperatorIndependence,
        Metric::SelfPreservation,
        Metric::Strategy,
        Metric::Coordination,
        Metric::AutonomyTotal,
    ];

    pub fn value(self, report: &MetricsReport) -> f64 {
        match self {
            Metric::Portability => report.portability,
            Metric::Scalability => report.scalability,
            Metric::Complexity => report.complexity,
            Metric::OperatorIndependence => report.autonomy.a_i,
            Metric::SelfPreservation => report.autonomy.a_p,
            Metric::Strategy => report.autonomy.a_s,
            Metric::Coordination => report.autonomy.a_c,
            Metric::AutonomyTotal => report.autonomy.total,
        }
    }

    /// Complexity drags a system down; everything else lifts it.
    pub fn higher_is_better(self) -> bool {
        self != Metric::Complexity
    }

    pub fn name(self) -> &'static str {
        match self {
            Metric::Portability => "portability",
            Metric::Scalability => "scalability",
            Metric::Complexity => "complexity",
            Metric::OperatorIndependence => "operator independence",
            Metric::SelfPreservation => "self-preservation",
            Metric::Strategy => "strategy",
            Metric::Coordination => "coordination",
            Metric::AutonomyTotal => "autonomy total",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Signed differences, `after − before`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricDeltas {
    pub portability: f64,
    pub scalability: f64,
    pub complexity: f64,
    pub a_i: f64,
    pub a_p: f64,
    pub a_s: f64,
    pub a_c: f64,
    pub autonomy_total: f64,
}

impl MetricDeltas {
    pub fn get(&self, metric: Metric) -> f64 {
        match metric {
            Metric::Portability => self.portability,
            Metric::Scalability => self.scalability,
            Metric::Complexity => self.complexity,
            Metric::OperatorIndependence => self.a_i,
            Metric::SelfPreservation => self.a_p,
            Metric::Strategy => self.a_s,
            Metric::Coordination => self.a_c,
            Metric::AutonomyTotal => self.autonomy_total,
        }
    }
}

/// A module whose complexity changed, appeared or disappeared.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModuleChange {
    pub name: String,
    pub before: Option<f64>,
    pub after: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaReport {
    pub before: PmsIdentity,
    pub after: PmsIdentity,
    /// False when the two reports describe differently named systems.
    pub same_pms: bool,
    pub deltas: MetricDeltas,
    pub changed_modules: Vec<ModuleChange>,
}

pub fn diff_reports(before: &MetricsReport, after: &MetricsReport) -> DeltaReport {
    let d = |m: Metric| m.value(after) - m.value(before);
    let deltas = MetricDeltas {
        portability: d(Metric::Portability),
        scalability: d(Metric::Scalability),
        complexity: d(Metric::Complexity),
        a_i: d(Metric::OperatorIndependence),
        a_p: d(Metric::SelfPreservation),
        a_s: d(Metric::Strategy),
        a_c: d(Metric::Coordination),
        autonomy_total: d(Metric::AutonomyTotal),
    };

    let find = |report: &MetricsReport, name: &str| {
        report
            .module_complexities
            .iter()
            .find(|m| m.module == name)
            .map(|m| m.c)
    };
    let mut changed_modules = Vec::new();
    for m in &before.module_complexities {
        let new = find(after, &m.module);
        if new != Some(m.c) {
            changed_modules.push(ModuleChange {
                name: m.module.clone(),
                before: Some(m.c),
                after: new,
            });
        }
    }
    for m in &after.module_complexities {
        if find(before, &m.module).is_none() {
            changed_modules.push(ModuleChange {
                name: m.module.clone(),
                before: None,
                after: Some(m.c),
            });
        }
    }

    DeltaReport {
        before: before.pms.clone(),
        after: after.pms.clone(),
        same_pms: before.pms.name == after.pms.name,
        deltas,
        changed_modules,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricRanking {
    pub metric: Metric,
    /// Candidate labels, best first.
    pub order: Vec<String>,
}

/// Going from `from` to `to` improves `gained` and worsens `lost`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TradeoffNote {
    pub from: String,
    pub to: String,
    pub gained: Metric,
    pub lost: Metric,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub candidates: Vec<MetricsReport>,
    pub per_metric_ranking: Vec<MetricRanking>,
    pub tradeoff_notes: Vec<TradeoffNote>,
}

impl ComparisonReport {
    pub fn ranking(&self, metric: Metric) -> &[String] {
        self.per_metric_ranking
            .iter()
            .find(|r| r.metric == metric)
            .map(|r| r.order.as_slice())
            .unwrap_or_default()
    }

    pub fn to_json(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec_pretty(self).expect("comparisons always serialize");
        out.push(b'\n');
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("comparison needs at least 2 candidates, got {0}")]
pub struct TooFewCandidates(pub usize);

/// Ranks candidates per metric and lists pairwise trade-offs.
///
/// Ties keep input order. For every ordered pair `(i, j)` with `i < j`, each
/// combination of a metric that strictly improves and one that strictly
/// worsens from `i` to `j` yields a [`TradeoffNote`].
pub fn compare_candidates(reports: &[MetricsReport]) -> Result<ComparisonReport, TooFewCandidates> {
    if reports.len() < 2 {
        return Err(TooFewCandidates(reports.len()));
    }
    let labels: Vec<String> = reports.iter().map(|r| r.pms.label()).collect();

    let per_metric_ranking = Metric::ALL
        .iter()
        .map(|&metric| {
            let mut idx: Vec<usize> = (0..reports.len()).collect();
            idx.sort_by(|&a, &b| {
                let (va, vb) = (metric.value(&reports[a]), metric.value(&reports[b]));
                if metric.higher_is_better() {
                    vb.total_cmp(&va)
                } else {
                    va.total_cmp(&vb)
                }
            });
            MetricRanking {
                metric,
                order: idx.into_iter().map(|i| labels[i].clone()).collect(),
            }
        })
        .collect();

    let mut tradeoff_notes = Vec::new();
    for i in 0..reports.len() {
        for j in i + 1..reports.len() {
            let improvement = |m: Metric| {
                let d = m.value(&reports[j]) - m.value(&reports[i]);
                if m.higher_is_better() {
                    d
                } else {
                    -d
                }
            };
            for gained in Metric::ALL.into_iter().filter(|&m| improvement(m) > 0.0) {
                for lost in Metric::ALL.into_iter().filter(|&m| improvement(m) < 0.0) {
                    tradeoff_notes.push(TradeoffNote {
                        from: labels[i].clone(),
                        to: labels[j].clone(),
                        gained,
                        lost,
                    });
                }
            }
        }
    }

    Ok(ComparisonReport {
        candidates: reports.to_vec(),
        per_metric_ranking,
        tradeoff_notes,
    })
}
