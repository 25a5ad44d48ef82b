use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Identifier pattern: a literal prefix optionally followed by `#`, which
/// stands for a run of one or more decimal digits.
///
/// `K#` matches `K1`, `K42` but not `K` or `KX`; `PI` matches only `PI`.
/// Matching is case-insensitive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct IdentPattern {
    prefix: String,
    digits: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid identifier pattern {pattern:?}: {reason}")]
pub struct PatternError {
    pub pattern: String,
    pub reason: &'static str,
}

impl IdentPattern {
    pub fn prefix(&self) -> &str {
        &self.prefix
    }

    pub fn has_digit_run(&self) -> bool {
        self.digits
    }

    pub fn matches(&self, ident: &str) -> bool {
        let Some(head) = ident.get(..self.prefix.len()) else {
            return false;
        };
        if !head.eq_ignore_ascii_case(&self.prefix) {
            return false;
        }
        let rest = &ident[self.prefix.len()..];
        if self.digits {
            !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit())
        } else {
            rest.is_empty()
        }
    }
}

impl FromStr for IdentPattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason| PatternError {
            pattern: s.to_string(),
            reason,
        };
        let (prefix, digits) = match s.strip_suffix('#') {
            Some(p) => (p, true),
            None => (s, false),
        };
        let mut chars = prefix.chars();
        match chars.next() {
            None => return Err(err("the literal prefix must not be empty")),
            Some(c) if !(c.is_ascii_alphabetic() || c == '_') => {
                return Err(err("the prefix must start with a letter or underscore"))
            }
            _ => {}
        }
        if prefix.contains('#') {
            return Err(err("'#' may only appear once, at the end"));
        }
        if !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(err("the prefix may only contain letters, digits and underscores"));
        }
        Ok(Self {
            prefix: prefix.to_ascii_uppercase(),
            digits,
        })
    }
}

impl TryFrom<String> for IdentPattern {
    type Error = PatternError;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        value.parse()
    }
}

impl From<IdentPattern> for String {
    fn from(p: IdentPattern) -> Self {
        p.to_string()
    }
}

impl fmt::Display for IdentPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.prefix)?;
        if self.digits {
            f.write_str("#")?;
        }
        Ok(())
    }
}

/// Knobs for rule-language analysis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalyzerConfig {
    /// Identifiers treated as constants and excluded from fan-in/fan-out.
    pub constant_patterns: Vec<IdentPattern>,
    /// Free identifiers supplied by the runtime (such as time `T`), also
    /// excluded from fan-in/fan-out.
    pub builtins: BTreeSet<String>,
    /// Symbolic values such as `OFF` or `HI`. When such a name is never
    /// assigned in a module it is a literal, not a variable.
    pub state_literals: BTreeSet<String>,
    /// Count each AND / OR inside a condition as an extra decision point.
    pub extended_decision_counting: bool,
}

impl Default for AnalyzerConfig {
    fn default() -> Self {
        Self {
            constant_patterns: vec!["K#".parse().expect("valid default pattern")],
            builtins: BTreeSet::from(["T".to_string()]),
            state_literals: ["ON", "OFF", "LOW", "HI", "ERROR"]
                .into_iter()
                .map(String::from)
                .collect(),
            extended_decision_counting: false,
        }
    }
}

impl AnalyzerConfig {
    /// True for constants and builtins. `name` is compared case-insensitively.
    pub fn is_excluded(&self, name: &str) -> bool {
        self.constant_patterns.iter().any(|p| p.matches(name))
            || self.builtins.iter().any(|b| b.eq_ignore_ascii_case(name))
    }

    pub fn is_state_literal(&self, name: &str) -> bool {
        self.state_literals
            .iter()
            .any(|s| s.eq_ignore_ascii_case(name))
    }
}
