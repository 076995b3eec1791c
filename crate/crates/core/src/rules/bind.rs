use thiserror::Error;

use super::{ConditionTest, Dialect, Interval, Rule, RuleSet};
use crate::dataset::{AttributeKind, Dataset, Role};
use crate::fuzzy::TriangularLabel;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BindError {
    #[error("UnknownAttribute at line {line}: rule {rule} tests attribute '{attribute}', which is not in the dataset")]
    UnknownAttribute {
        line: usize,
        rule: usize,
        attribute: String,
    },
    #[error("NotAnInput at line {line}: rule {rule} tests the output attribute '{attribute}'")]
    NotAnInput {
        line: usize,
        rule: usize,
        attribute: String,
    },
    #[error("UnknownClass at line {line}: consequent '{class}' of rule {rule} is not a value of the target attribute")]
    UnknownClass { line: usize, rule: usize, class: String },
    #[error("UnknownValue at line {line}: '{value}' is not a declared value of attribute '{attribute}'")]
    UnknownValue {
        line: usize,
        attribute: String,
        value: String,
    },
    #[error("TypeMismatch at line {line}: {message}")]
    TypeMismatch { line: usize, message: String },
}

impl BindError {
    pub fn kind(&self) -> &'static str {
        match self {
            BindError::UnknownAttribute { .. } => "UnknownAttribute",
            BindError::NotAnInput { .. } => "NotAnInput",
            BindError::UnknownClass { .. } => "UnknownClass",
            BindError::UnknownValue { .. } => "UnknownValue",
            BindError::TypeMismatch { .. } => "TypeMismatch",
        }
    }

    pub fn line(&self) -> usize {
        match *self {
            BindError::UnknownAttribute { line, .. }
            | BindError::NotAnInput { line, .. }
            | BindError::UnknownClass { line, .. }
            | BindError::UnknownValue { line, .. }
            | BindError::TypeMismatch { line, .. } => line,
        }
    }
}

/// A condition test with categorical values resolved to value indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundTest<T> {
    Fuzzy(TriangularLabel<T>),
    Equals(usize),
    Interval(Interval<T>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundCondition<T> {
    pub attribute: usize,
    pub test: BoundTest<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundRule<T> {
    pub rule: Rule<T>,
    pub conditions: Vec<BoundCondition<T>>,
    /// Index of the consequent in the target attribute's value list.
    pub class_index: usize,
}

impl<T> BoundRule<T> {
    pub fn id(&self) -> usize {
        self.rule.id
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundRuleSet<T> {
    pub algorithm_name: String,
    pub dialect: Dialect,
    pub num_labels: Option<usize>,
    pub rules: Vec<BoundRule<T>>,
}

/// Resolves attribute names and class values of `rules` against `data`.
pub fn bind_rules<T: Scalar>(rules: &RuleSet<T>, data: &Dataset<T>) -> Result<BoundRuleSet<T>, BindError> {
    let target = data.target();
    let bound = rules
        .rules
        .iter()
        .map(|rule| {
            let class_index = target
                .value_index(&rule.consequent)
                .ok_or_else(|| BindError::UnknownClass {
                    line: rule.line,
                    rule: rule.id,
                    class: rule.consequent.clone(),
                })?;
            let conditions = rule
                .antecedent
                .iter()
                .map(|cond| {
                    let attribute =
                        data.attribute_index(&cond.attribute_name)
                            .ok_or_else(|| BindError::UnknownAttribute {
                                line: cond.line,
                                rule: rule.id,
                                attribute: cond.attribute_name.clone(),
                            })?;
                    let attr = &data.attributes[attribute];
                    if attr.role != Role::Input {
                        return Err(BindError::NotAnInput {
                            line: cond.line,
                            rule: rule.id,
                            attribute: attr.name.clone(),
                        });
                    }
                    let mismatch = |what: &str| BindError::TypeMismatch {
                        line: cond.line,
                        message: format!("{what} on {} attribute '{}'", attr.kind, attr.name),
                    };
                    let test = match &cond.test {
                        ConditionTest::FuzzyLabel(label) => {
                            if attr.kind == AttributeKind::Categorical {
                                return Err(mismatch("fuzzy label"));
                            }
                            BoundTest::Fuzzy(*label)
                        }
                        ConditionTest::NumericInterval(iv) => {
                            if attr.kind == AttributeKind::Categorical {
                                return Err(mismatch("numeric interval"));
                            }
                            BoundTest::Interval(*iv)
                        }
                        ConditionTest::CategoricalEquals(value) => {
                            if attr.kind.is_numeric() {
                                return Err(mismatch("categorical test"));
                            }
                            let idx = attr.value_index(value).ok_or_else(|| BindError::UnknownValue {
                                line: cond.line,
                                attribute: attr.name.clone(),
                                value: value.clone(),
                            })?;
                            BoundTest::Equals(idx)
                        }
                    };
                    Ok(BoundCondition { attribute, test })
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(BoundRule {
                rule: rule.clone(),
                conditions,
                class_index,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    Ok(BoundRuleSet {
        algorithm_name: rules.algorithm_name.clone(),
        dialect: rules.dialect,
        num_labels: rules.num_labels,
        rules: bound,
    })
}
