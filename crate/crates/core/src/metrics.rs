//! Portability, scalability, complexity and autonomy scores.
//!
//! Module-level factors are combined with a weighted mean,
//! `Σ wᵢ·vᵢ / Σ wᵢ`, for portability, scalability and complexity alike.
//! Module complexity is `r · m · f_in · f_out` with the fan-in/fan-out
//! product left un-squared. The autonomy total is
//! `(A_I + A_P) · (A_S + A_C)` in fractional units (1.0 = 100%), which is
//! twice the area of the autonomy radar quadrilateral.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assessment::{
    AutonomyAssessment, ComplexityInputs, CoverageEvidence, DirectPercent, ModuleAssessment,
    PmsIdentity, TaskCounts, MAX_FACTOR,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error("at least one value is required")]
    EmptyInput,
    #[error("weight {weight} at position {index} must be finite and greater than 0")]
    NonpositiveWeight { index: usize, weight: f64 },
    #[error("coverage total is 0; the automated ratio is undefined")]
    ZeroTotal,
    #[error("{quantity} = {value} lies outside [{min}, {max}]")]
    OutOfRange {
        quantity: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },
}

fn check_range(quantity: &'static str, value: f64, min: f64, max: f64) -> Result<f64, MetricsError> {
    if (min..=max).contains(&value) {
        Ok(value)
    } else {
        Err(MetricsError::OutOfRange {
            quantity,
            value,
            min,
            max,
        })
    }
}

/// Weighted mean `Σ w·v / Σ w` of `(weight, value)` pairs.
///
/// The result is clamped to `[min value, max value]`, where the exact mean
/// always lies, so rounding never pushes it outside the inputs.
pub fn weighted_factor_score(pairs: &[(f64, f64)]) -> Result<f64, MetricsError> {
    if pairs.is_empty() {
        return Err(MetricsError::EmptyInput);
    }
    let mut weight_sum = 0.0;
    let mut weighted = 0.0;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (index, &(weight, value)) in pairs.iter().enumerate() {
        if !(weight > 0.0 && weight.is_finite()) {
            return Err(MetricsError::NonpositiveWeight { index, weight });
        }
        weight_sum += weight;
        weighted += weight * value;
        lo = lo.min(value);
        hi = hi.max(value);
    }
    Ok((weighted / weight_sum).clamp(lo, hi))
}

/// PMS portability P.
pub fn portability_score(modules: &[ModuleAssessment]) -> Result<f64, MetricsError> {
    let pairs: Vec<_> = modules.iter().map(|m| (m.weight, m.portability)).collect();
    weighted_factor_score(&pairs)
}

/// PMS scalability S.
pub fn scalability_score(modules: &[ModuleAssessment]) -> Result<f64, MetricsError> {
    let pairs: Vec<_> = modules.iter().map(|m| (m.weight, m.scalability)).collect();
    weighted_factor_score(&pairs)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModuleComplexity {
    pub module: String,
    pub inputs: ComplexityInputs,
    pub c: f64,
    /// Set when fan-in or fan-out is zero, which forces `c` to zero.
    pub zero_io_warning: bool,
}

pub fn module_complexity(module: &str, inputs: ComplexityInputs) -> ModuleComplexity {
    let c = inputs.readability
        * f64::from(inputs.mccabe)
        * f64::from(inputs.fan_in)
        * f64::from(inputs.fan_out);
    ModuleComplexity {
        module: module.to_string(),
        inputs,
        c,
        zero_io_warning: inputs.fan_in == 0 || inputs.fan_out == 0,
    }
}

/// PMS complexity C: weighted mean of module complexities.
pub fn pms_complexity(modules: &[(f64, ModuleComplexity)]) -> Result<f64, MetricsError> {
    let pairs: Vec<_> = modules.iter().map(|(w, m)| (*w, m.c)).collect();
    weighted_factor_score(&pairs)
}

/// Percentage of tasks (or alarms) handled automatically.
pub fn coverage_ratio(evidence: &CoverageEvidence) -> Result<f64, MetricsError> {
    match *evidence {
        CoverageEvidence::Counts(TaskCounts { total: 0, .. }) => Err(MetricsError::ZeroTotal),
        CoverageEvidence::Counts(TaskCounts { auto, total }) => {
            check_range("coverage", auto as f64 / total as f64 * 100.0, 0.0, 100.0)
        }
        CoverageEvidence::DirectPercent(DirectPercent { percent }) => {
            check_range("coverage", percent, 0.0, 100.0)
        }
    }
}

/// Strategy guide bands. Intervals are closed at the top: 75% is
/// [`StrategyBand::MultiGoal`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StrategyBand {
    NoEnhancement,
    SingleGoal,
    /// 25–50%, a range with no named level of its own.
    BetweenSingleAndMultiple,
    MultiGoal,
    ManyGoals,
}

impl StrategyBand {
    pub fn label(self) -> &'static str {
        match self {
            StrategyBand::NoEnhancement => "no enhancement",
            StrategyBand::SingleGoal => "single-goal optimization",
            StrategyBand::BetweenSingleAndMultiple => "between single and multiple goals",
            StrategyBand::MultiGoal => "multi-goal optimization",
            StrategyBand::ManyGoals => "many new goals to theoretical limit",
        }
    }
}

impl fmt::Display for StrategyBand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Coordination guide bands, same intervals as [`StrategyBand`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoordinationBand {
    Unaware,
    Aware,
    /// 25–50%, a range with no named level of its own.
    BetweenAwareAndLimited,
    Limited,
    Full,
}

impl CoordinationBand {
    pub fn label(self) -> &'static str {
        match self {
            CoordinationBand::Unaware => "unaware of other systems",
            CoordinationBand::Aware => "aware, little or no coordination",
            CoordinationBand::BetweenAwareAndLimited => "between awareness and limited coordination",
            CoordinationBand::Limited => "limited coordination",
            CoordinationBand::Full => "full cooperation",
        }
    }
}

impl fmt::Display for CoordinationBand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Index of the upper-inclusive band: 0, (0,25], (25,50], (50,75], (75,100].
fn band_index(quantity: &'static str, percent: f64) -> Result<usize, MetricsError> {
    let p = check_range(quantity, percent, 0.0, 100.0)?;
    Ok(if p == 0.0 {
        0
    } else if p <= 25.0 {
        1
    } else if p <= 50.0 {
        2
    } else if p <= 75.0 {
        3
    } else {
        4
    })
}

pub fn strategy_band(percent: f64) -> Result<StrategyBand, MetricsError> {
    const BANDS: [StrategyBand; 5] = [
        StrategyBand::NoEnhancement,
        StrategyBand::SingleGoal,
        StrategyBand::BetweenSingleAndMultiple,
        StrategyBand::MultiGoal,
        StrategyBand::ManyGoals,
    ];
    band_index("strategy", percent).map(|i| BANDS[i])
}

pub fn coordination_band(percent: f64) -> Result<CoordinationBand, MetricsError> {
    const BANDS: [CoordinationBand; 5] = [
        CoordinationBand::Unaware,
        CoordinationBand::Aware,
        CoordinationBand::BetweenAwareAndLimited,
        CoordinationBand::Limited,
        CoordinationBand::Full,
    ];
    band_index("coordination", percent).map(|i| BANDS[i])
}

/// `(A_I + A_P) · (A_S + A_C)` with percentages converted to fractions.
/// Ranges over [0, 4].
pub fn autonomy_total(a_i: f64, a_p: f64, a_s: f64, a_c: f64) -> Result<f64, MetricsError> {
    let a_i = check_range("operator independence", a_i, 0.0, 100.0)?;
    let a_p = check_range("self-preservation", a_p, 0.0, 100.0)?;
    let a_s = check_range("strategy", a_s, 0.0, 100.0)?;
    let a_c = check_range("coordination", a_c, 0.0, 100.0)?;
    let automation = a_i / 100.0 + a_p / 100.0;
    let intelligence = a_s / 100.0 + a_c / 100.0;
    Ok(automation * intelligence)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AutonomyProfile {
    pub a_i: f64,
    pub a_p: f64,
    pub a_s: f64,
    pub a_c: f64,
    pub strategy_band: String,
    pub coordination_band: String,
    pub total: f64,
}

impl AutonomyProfile {
    pub fn from_percents(a_i: f64, a_p: f64, a_s: f64, a_c: f64) -> Result<Self, MetricsError> {
        let total = autonomy_total(a_i, a_p, a_s, a_c)?;
        Ok(Self {
            a_i,
            a_p,
            a_s,
            a_c,
            strategy_band: strategy_band(a_s)?.label().to_string(),
            coordination_band: coordination_band(a_c)?.label().to_string(),
            total,
        })
    }
}

pub fn autonomy_profile(assessment: &AutonomyAssessment) -> Result<AutonomyProfile, MetricsError> {
    AutonomyProfile::from_percents(
        coverage_ratio(&assessment.operator_independence)?,
        coverage_ratio(&assessment.self_preservation)?,
        assessment.strategy.percent,
        assessment.coordination.percent,
    )
}

/// Combined portability/scalability view: total length and center offset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModifiabilityProfile {
    /// `P + S`.
    pub length: f64,
    /// `(S − P) / 2`; positive when scalability dominates.
    pub offset: f64,
}

pub fn modifiability_profile(
    portability: f64,
    scalability: f64,
) -> Result<ModifiabilityProfile, MetricsError> {
    let p = check_range("portability", portability, 0.0, MAX_FACTOR)?;
    let s = check_range("scalability", scalability, 0.0, MAX_FACTOR)?;
    Ok(ModifiabilityProfile {
        length: p + s,
        offset: (s - p) / 2.0,
    })
}

/// Computed metrics for one PMS version.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub pms: PmsIdentity,
    pub portability: f64,
    pub scalability: f64,
    pub modifiability_length: f64,
    pub modifiability_offset: f64,
    pub complexity: f64,
    pub module_complexities: Vec<ModuleComplexity>,
    pub autonomy: AutonomyProfile,
}

impl MetricsReport {
    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec_pretty(self).expect("reports always serialize");
        out.push(b'\n');
        out
    }
}
