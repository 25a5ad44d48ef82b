//! Static analysis of the IF-THEN / SWITCH-CASE rule language.
//!
//! Rule modules look like this:
//!
//! ```text
//! IF A<K1 THEN SET X=10 ELSE X=B;
//! F(A) = A * SIN (K3*T) + K2
//! SWITCH (X) {
//! CASE X<=0: SET MOTOR=OFF;
//! DEFAULT: SET MOTOR=ERROR;
//! }
//! ```
//!
//! [`analyze_module`] produces the four complexity inputs: readability,
//! McCabe number, fan-in and fan-out. Keywords and identifiers are
//! case-insensitive.

pub mod analysis;
pub mod ast;
mod config;
pub mod lexer;
pub mod parser;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assessment::ComplexityInputs;

pub use analysis::{classify_io, cyclomatic, readability, IoClassification};
pub use ast::RuleModule;
pub use config::{AnalyzerConfig, IdentPattern, PatternError};
pub use lexer::{tokenize, LexError, Token, TokenKind};
pub use parser::{parse, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyzeError {
    #[error("lex error: {0}")]
    Lex(#[from] LexError),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
}

/// Everything the analyzer learns about one module.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModuleAnalysis {
    #[serde(flatten)]
    pub inputs: ComplexityInputs,
    pub io: IoClassification,
}

pub fn parse_source(source: &str) -> Result<RuleModule, AnalyzeError> {
    let tokens = tokenize(source)?;
    Ok(parse(&tokens)?)
}

pub fn analyze_ast(ast: &RuleModule, config: &AnalyzerConfig) -> ModuleAnalysis {
    let io = classify_io(ast, config);
    let inputs = ComplexityInputs {
        readability: readability(ast),
        mccabe: cyclomatic(ast, config),
        fan_in: io.inputs.len() as u32,
        fan_out: io.outputs.len() as u32,
    };
    ModuleAnalysis { inputs, io }
}

/// Analyzes rule-language source and keeps the I/O classification.
pub fn analyze_source(source: &str, config: &AnalyzerConfig) -> Result<ModuleAnalysis, AnalyzeError> {
    Ok(analyze_ast(&parse_source(source)?, config))
}

pub fn analyze_module(source: &str, config: &AnalyzerConfig) -> Result<ComplexityInputs, AnalyzeError> {
    analyze_source(source, config).map(|a| a.inputs)
}

/// I/O counts of a black-box element such as a neural network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlackBoxSpec {
    pub inputs: u32,
    pub outputs: u32,
}

/// Black boxes can only be understood by feeding them inputs (readability 3)
/// and have no decision points (McCabe 1).
pub fn blackbox_inputs(spec: BlackBoxSpec) -> ComplexityInputs {
    ComplexityInputs {
        readability: 3.0,
        mccabe: 1,
        fan_in: spec.inputs,
        fan_out: spec.outputs,
    }
}
