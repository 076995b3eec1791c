use std::sync::Arc;

use rayon::prelude::*;

use crate::dataset::{AttributeKind, Dataset, Role};
use crate::rules::{bind_rules, BindError, BoundRuleSet, Dialect, RuleSet};
use crate::scalar::Scalar;

use super::coverage::evaluate_rule;
use super::{measures, ContingencyTable, CoverageMatrix, QualityMeasures};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeSummary {
    pub name: String,
    pub kind: AttributeKind,
    pub role: Role,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCount {
    pub class: String,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetSummary {
    pub relation: String,
    pub rows: usize,
    pub target: String,
    pub attributes: Vec<AttributeSummary>,
    pub class_distribution: Vec<ClassCount>,
    pub range_warnings: usize,
}

impl DatasetSummary {
    pub fn of<T: Scalar>(data: &Dataset<T>) -> Self {
        Self {
            relation: data.relation_name.clone(),
            rows: data.examples.len(),
            target: data.target().name.clone(),
            attributes: data
                .attributes
                .iter()
                .map(|a| AttributeSummary {
                    name: a.name.clone(),
                    kind: a.kind,
                    role: a.role,
                })
                .collect(),
            class_distribution: data
                .class_values()
                .iter()
                .zip(data.class_distribution())
                .map(|(class, count)| ClassCount {
                    class: class.clone(),
                    count,
                })
                .collect(),
            range_warnings: data.warnings.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RuleEvaluation<T> {
    pub id: usize,
    pub display_name: String,
    /// Conditions rendered as text, in file order.
    pub antecedent: Vec<String>,
    pub consequent: String,
    pub table: ContingencyTable,
    pub measures: QualityMeasures<T>,
}

/// Everything computed for one (dataset, rule set) pair. Rules are ordered
/// by id.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationResult<T> {
    pub dataset: Arc<Dataset<T>>,
    pub summary: DatasetSummary,
    pub algorithm_name: String,
    pub dialect: Dialect,
    pub num_labels: Option<usize>,
    pub rules: Vec<RuleEvaluation<T>>,
    pub coverage: CoverageMatrix<T>,
}

impl<T: Scalar> EvaluationResult<T> {
    pub fn rule(&self, id: usize) -> Option<&RuleEvaluation<T>> {
        self.rules.iter().find(|r| r.id == id)
    }

    pub fn is_fuzzy(&self) -> bool {
        self.dialect == Dialect::Fuzzy
    }
}

/// Evaluates already bound rules. Rules are processed in parallel; the
/// output does not depend on the thread count.
pub fn evaluate_bound<T: Scalar>(data: Arc<Dataset<T>>, rules: &BoundRuleSet<T>) -> EvaluationResult<T> {
    let mut per_rule: Vec<_> = rules
        .rules
        .par_iter()
        .map(|rule| {
            let (table, entries) = evaluate_rule(rule, &data);
            let evaluation = RuleEvaluation {
                id: rule.id(),
                display_name: rule.rule.display_name.clone(),
                antecedent: rule.rule.antecedent.iter().map(ToString::to_string).collect(),
                consequent: rule.rule.consequent.clone(),
                table,
                measures: measures(&table),
            };
            (evaluation, entries)
        })
        .collect();
    per_rule.sort_by_key(|(e, _)| e.id);

    let (evaluations, entries): (Vec<_>, Vec<_>) = per_rule.into_iter().unzip();
    let coverage = CoverageMatrix::from_rule_entries(evaluations.iter().map(|e| e.id).zip(entries));

    EvaluationResult {
        summary: DatasetSummary::of(&data),
        dataset: data,
        algorithm_name: rules.algorithm_name.clone(),
        dialect: rules.dialect,
        num_labels: rules.num_labels,
        rules: evaluations,
        coverage,
    }
}

/// Binds `rules` to `data` and evaluates every rule on every example.
pub fn evaluate_session<T: Scalar>(
    data: impl Into<Arc<Dataset<T>>>,
    rules: &RuleSet<T>,
) -> Result<EvaluationResult<T>, BindError> {
    let data = data.into();
    let bound = bind_rules(rules, &data)?;
    Ok(evaluate_bound(data, &bound))
}
