use std::collections::BTreeMap;

use crate::dataset::Dataset;
use crate::rules::{BoundRule, BoundRuleSet};
use crate::scalar::Scalar;

use super::{firing_degree, is_covered, ContingencyTable};

/// One covered (rule, example) pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageEntry<T> {
    pub rule_id: usize,
    pub example_index: usize,
    /// Firing degree, in (0, 1]. Always 1 for crisp rules.
    pub degree: T,
    /// Whether the example belongs to the rule's consequent class.
    pub correct: bool,
}

/// Covered pairs indexed both ways. `by_rule` has a (possibly empty) list
/// for every rule; `by_example` only lists examples covered at least once.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CoverageMatrix<T> {
    pub by_example: BTreeMap<usize, Vec<CoverageEntry<T>>>,
    pub by_rule: BTreeMap<usize, Vec<CoverageEntry<T>>>,
}

impl<T: Scalar> CoverageMatrix<T> {
    /// Builds both views from per-rule entry lists. Inside `by_example`,
    /// entries follow rule id order.
    pub(crate) fn from_rule_entries(per_rule: impl IntoIterator<Item = (usize, Vec<CoverageEntry<T>>)>) -> Self {
        let by_rule: BTreeMap<usize, Vec<CoverageEntry<T>>> = per_rule.into_iter().collect();
        let mut by_example: BTreeMap<usize, Vec<CoverageEntry<T>>> = BTreeMap::new();
        for entry in by_rule.values().flatten() {
            by_example.entry(entry.example_index).or_default().push(*entry);
        }
        Self { by_example, by_rule }
    }

    pub fn rule_entries(&self, rule_id: usize) -> &[CoverageEntry<T>] {
        self.by_rule.get(&rule_id).map_or(&[], Vec::as_slice)
    }

    pub fn example_entries(&self, example_index: usize) -> &[CoverageEntry<T>] {
        self.by_example.get(&example_index).map_or(&[], Vec::as_slice)
    }

    pub fn entry_count(&self) -> usize {
        self.by_rule.values().map(Vec::len).sum()
    }
}

/// Single pass over the data producing both the table and the covered
/// entries for one rule.
pub(crate) fn evaluate_rule<T: Scalar>(
    rule: &BoundRule<T>,
    data: &Dataset<T>,
) -> (ContingencyTable, Vec<CoverageEntry<T>>) {
    let mut ct = ContingencyTable::default();
    let mut entries = Vec::new();
    for example in &data.examples {
        let degree = firing_degree(rule, example);
        let positive = data.class_of(example) == Some(rule.class_index);
        if is_covered(degree) {
            entries.push(CoverageEntry {
                rule_id: rule.id(),
                example_index: example.index,
                degree,
                correct: positive,
            });
            if positive {
                ct.tp += 1;
            } else {
                ct.fp += 1;
            }
        } else if positive {
            ct.fn_ += 1;
        } else {
            ct.tn += 1;
        }
    }
    (ct, entries)
}

pub fn coverage_matrix<T: Scalar>(rules: &BoundRuleSet<T>, data: &Dataset<T>) -> CoverageMatrix<T> {
    CoverageMatrix::from_rule_entries(rules.rules.iter().map(|r| (r.id(), evaluate_rule(r, data).1)))
}
