//! Rule files written by supervised descriptive rule discovery algorithms.
//!
//! Fuzzy dialect (as written by NMEEF-SD and friends):
//!
//! ```text
//! @algorithm nmeef
//! Number of labels: 3
//! GENERATED RULE 0
//!     Antecedent
//!         Variable petalLength = Label 0      (-1.95 1.0 3.95)
//!     Consecuent: Iris-setosa
//! ```
//!
//! Crisp dialect, same block layout, with one of these condition lines:
//!
//! ```text
//!         Variable <attr> = <value>
//!         Variable <attr> in [<lo>, <hi>]
//! ```
//!
//! Interval brackets may be `[`/`]` (closed) or `(`/`)` (open) on either
//! side. `Consequent:` is accepted as well as `Consecuent:`.

mod bind;
mod parse;
mod registry;

use std::fmt;

use thiserror::Error;

use crate::fuzzy::TriangularLabel;
use crate::scalar::Scalar;

pub use bind::{bind_rules, BindError, BoundCondition, BoundRule, BoundRuleSet, BoundTest};
pub use parse::parse_rules;
pub use registry::{AlgorithmRegistry, RegistryError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dialect {
    Fuzzy,
    Crisp,
}

impl Dialect {
    pub fn as_str(self) -> &'static str {
        match self {
            Dialect::Fuzzy => "fuzzy",
            Dialect::Crisp => "crisp",
        }
    }
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Dialect {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "fuzzy" => Ok(Dialect::Fuzzy),
            "crisp" => Ok(Dialect::Crisp),
            _ => Err(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl<T: Scalar> Interval<T> {
    pub fn closed(lo: T, hi: T) -> Self {
        Self {
            lo,
            hi,
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn contains(&self, x: T) -> bool {
        let above = if self.lo_closed { x >= self.lo } else { x > self.lo };
        let below = if self.hi_closed { x <= self.hi } else { x < self.hi };
        above && below
    }
}

impl<T: Scalar> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo.to_text(),
            self.hi.to_text(),
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConditionTest<T> {
    FuzzyLabel(TriangularLabel<T>),
    CategoricalEquals(String),
    NumericInterval(Interval<T>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Condition<T> {
    pub attribute_name: String,
    pub test: ConditionTest<T>,
    /// 1-based line of the condition in the rule file.
    pub line: usize,
}

impl<T: Scalar> fmt::Display for Condition<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.test {
            ConditionTest::FuzzyLabel(label) => write!(f, "{} = {label}", self.attribute_name),
            ConditionTest::CategoricalEquals(v) => write!(f, "{} = {v}", self.attribute_name),
            ConditionTest::NumericInterval(iv) => write!(f, "{} in {iv}", self.attribute_name),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rule<T> {
    /// The `k` of `GENERATED RULE k`.
    pub id: usize,
    pub antecedent: Vec<Condition<T>>,
    pub consequent: String,
    pub display_name: String,
    /// 1-based line of the `GENERATED RULE` header.
    pub line: usize,
}

impl<T: Scalar> Rule<T> {
    pub fn antecedent_text(&self) -> String {
        self.antecedent
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" AND ")
    }
}

impl<T: Scalar> fmt::Display for Rule<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IF {} THEN {}", self.antecedent_text(), self.consequent)
    }
}

/// A line inside the rule file that was not understood and was skipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseWarning {
    pub line: usize,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RuleSet<T> {
    pub algorithm_name: String,
    pub dialect: Dialect,
    /// Number of linguistic labels per continuous variable (fuzzy only).
    pub num_labels: Option<usize>,
    pub rules: Vec<Rule<T>>,
    pub warnings: Vec<ParseWarning>,
}

impl<T> RuleSet<T> {
    pub fn rule(&self, id: usize) -> Option<&Rule<T>> {
        self.rules.iter().find(|r| r.id == id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("MissingAlgorithmHeader at line {line}: rule files must start with '@algorithm <name>'")]
    MissingAlgorithmHeader { line: usize },
    #[error("UnknownDialect: algorithm '{algorithm}' is not registered and the file has no 'Number of labels:' line")]
    UnknownDialect { algorithm: String },
    #[error("MalformedCondition at line {line}: {message}")]
    MalformedCondition { line: usize, message: String },
    #[error("MalformedRule at line {line}: {message}")]
    MalformedRule { line: usize, message: String },
    #[error("InvalidLabelCount at line {line}: {message}")]
    InvalidLabelCount { line: usize, message: String },
    #[error("MissingLabelCount: fuzzy algorithm '{algorithm}' requires a 'Number of labels:' line")]
    MissingLabelCount { algorithm: String },
    #[error("EmptyRuleSet: the file contains no 'GENERATED RULE' block")]
    EmptyRuleSet,
}

impl RuleError {
    pub fn kind(&self) -> &'static str {
        match self {
            RuleError::MissingAlgorithmHeader { .. } => "MissingAlgorithmHeader",
            RuleError::UnknownDialect { .. } => "UnknownDialect",
            RuleError::MalformedCondition { .. } => "MalformedCondition",
            RuleError::MalformedRule { .. } => "MalformedRule",
            RuleError::InvalidLabelCount { .. } => "InvalidLabelCount",
            RuleError::MissingLabelCount { .. } => "MissingLabelCount",
            RuleError::EmptyRuleSet => "EmptyRuleSet",
        }
    }

    pub fn line(&self) -> Option<usize> {
        match *self {
            RuleError::MissingAlgorithmHeader { line }
            | RuleError::MalformedCondition { line, .. }
            | RuleError::MalformedRule { line, .. }
            | RuleError::InvalidLabelCount { line, .. } => Some(line),
            _ => None,
        }
    }
}
