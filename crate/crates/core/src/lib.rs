//! Software metrics for power management system (PMS) software.
//!
//! A PMS is assessed module by module. Each module carries a weight, human
//! assessed portability and scalability factors on a 0–3 scale, and a
//! complexity source: numbers entered by hand, a rule-language file that is
//! analyzed automatically, or a black-box element (for example a neural
//! network) described only by its I/O counts. Autonomy is assessed once for
//! the whole system through four sub-metrics.
//!
//! The crate is organized as a pipeline:
//!
//! - [`assessment`] loads, validates and serializes assessment documents.
//! - [`rules`] lexes, parses and analyzes the IF-THEN / SWITCH-CASE rule
//!   language, producing readability, McCabe number and fan-in/fan-out.
//! - [`metrics`] turns factors into portability, scalability, complexity and
//!   autonomy scores.
//! - [`report`] evaluates whole documents, diffs versions and compares
//!   candidate systems.
//! - [`render`] emits standalone SVG radar figures.
//! - [`cli`] wires everything into the `pms-metrics` command.
//!
//! ```
//! use pms_metrics::rules::{analyze_module, AnalyzerConfig};
//! use pms_metrics::metrics::module_complexity;
//!
//! let src = "IF A>K1 THEN SET Y=1 ELSE SET Y=0;";
//! let inputs = analyze_module(src, &AnalyzerConfig::default()).unwrap();
//! assert_eq!((inputs.mccabe, inputs.fan_in, inputs.fan_out), (2, 1, 1));
//! assert_eq!(module_complexity("m", inputs).c, 2.0);
//! ```

pub mod assessment;
pub mod cli;
pub mod metrics;
pub mod render;
pub mod report;
pub mod rules;

pub use assessment::{
    load_assessment, serialize_assessment, validate_assessment, AssessmentDocument,
    ComplexityInputs, ComplexitySource, ModuleAssessment,
};
pub use metrics::{AutonomyProfile, MetricsReport};
pub use report::{compare_candidates, diff_reports, evaluate_pms};
pub use rules::{analyze_module, AnalyzerConfig};
