//! Rule evaluation: firing degrees, coverage, contingency tables and
//! quality measures.

mod contingency;
mod coverage;
mod session;

use crate::dataset::{Cell, Example};
use crate::fuzzy::membership;
use crate::rules::{BoundCondition, BoundRule, BoundTest};
use crate::scalar::Scalar;

pub use contingency::{contingency, measures, normalized_wracc, ContingencyTable, QualityMeasures};
pub use coverage::{coverage_matrix, CoverageEntry, CoverageMatrix};
pub use session::{
    evaluate_bound, evaluate_session, AttributeSummary, ClassCount, DatasetSummary, EvaluationResult, RuleEvaluation,
};

/// Degree to which one condition holds on one example. Missing cells never
/// satisfy a condition.
pub fn condition_degree<T: Scalar>(condition: &BoundCondition<T>, example: &Example<T>) -> T {
    let cell = example.values[condition.attribute];
    let holds = |b: bool| if b { T::one() } else { T::zero() };
    match (condition.test, cell) {
        (_, Cell::Missing) => T::zero(),
        (BoundTest::Fuzzy(label), Cell::Number(x)) => membership(x, &label),
        (BoundTest::Interval(iv), Cell::Number(x)) => holds(iv.contains(x)),
        (BoundTest::Equals(idx), Cell::Category(v)) => holds(v == idx),
        _ => T::zero(),
    }
}

/// Minimum t-norm over the antecedent. Crisp rules only have {0, 1}
/// condition degrees, so this is also their all-conditions-hold test.
pub fn firing_degree<T: Scalar>(rule: &BoundRule<T>, example: &Example<T>) -> T {
    rule.conditions
        .iter()
        .map(|c| condition_degree(c, example))
        .fold(T::one(), |acc, d| if d < acc { d } else { acc })
}

/// A rule covers an example iff its firing degree is strictly positive.
pub fn covers<T: Scalar>(rule: &BoundRule<T>, example: &Example<T>) -> bool {
    is_covered(firing_degree(rule, example))
}

pub(crate) fn is_covered<T: Scalar>(degree: T) -> bool {
    degree > T::zero()
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;

    use super::*;
    use crate::dataset::parse_dataset;
    use crate::rules::{bind_rules, parse_rules, AlgorithmRegistry};

    const DATA: &str = "@relation iris
@attribute sepalLength real [4.3, 7.9]
@attribute sepalWidth real [2.0, 4.4]
@attribute petalLength real [1.0, 6.9]
@attribute petalWidth real [0.1, 2.5]
@attribute class {Iris-setosa, Iris-versicolor, Iris-virginica}
@inputs sepalLength, sepalWidth, petalLength, petalWidth
@outputs class
@data
5.1, 3.5, 1.4, 0.2, Iris-setosa
4.9, 3.0, ?, 0.2, Iris-setosa
";

    fn rule(text: &str) -> (BoundRule<f64>, crate::dataset::Dataset<f64>) {
        let data = parse_dataset::<f64>(DATA).unwrap();
        let rs = parse_rules::<f64>(text, &AlgorithmRegistry::default()).unwrap();
        let bound = bind_rules(&rs, &data).unwrap();
        (bound.rules.into_iter().next().unwrap(), data)
    }

    #[test]
    fn nmeef_rule_fires_with_membership_degree() {
        let (r, data) = rule("@algorithm nmeef\nNumber of labels: 3\nGENERATED RULE 0\nVariable petalLength = Label 0 (-1.95 1.0 3.95)\nConsecuent: Iris-setosa\n");
        let d = firing_degree(&r, &data.examples[0]);
        assert_abs_diff_eq!(d, 0.864_406_779_661_017, epsilon = 1e-9);
        assert!(covers(&r, &data.examples[0]));
        assert_eq!(firing_degree(&r, &data.examples[1]), 0.0);
        assert!(!covers(&r, &data.examples[1]));
    }

    #[test]
    fn crisp_interval_holds() {
        let (r, data) = rule(
            "@algorithm apriorisd\nGENERATED RULE 0\nVariable sepalWidth in [2.0, 4.4]\nConsequent: Iris-versicolor\n",
        );
        assert_eq!(firing_degree(&r, &data.examples[0]), 1.0);
        assert_eq!(firing_degree(&r, &data.examples[1]), 1.0);
    }

    #[test]
    fn minimum_over_conditions() {
        let (r, data) = rule(
            "@algorithm nmeef\nNumber of labels: 3\nGENERATED RULE 0\nVariable petalLength = Label 0 (-1.95 1.0 3.95)\nVariable sepalLength = Label 1 (4.0 5.0 6.0)\nConsecuent: Iris-setosa\n",
        );
        // min(0.8644, 0.9)
        assert_abs_diff_eq!(
            firing_degree(&r, &data.examples[0]),
            0.864_406_779_661_017,
            epsilon = 1e-9
        );
        let (r, _) = rule(
            "@algorithm nmeef\nNumber of labels: 3\nGENERATED RULE 0\nVariable petalLength = Label 0 (-1.95 1.0 3.95)\nVariable sepalLength = Label 1 (4.5 5.5 6.5)\nConsecuent: Iris-setosa\n",
        );
        assert_abs_diff_eq!(firing_degree(&r, &data.examples[0]), 0.6, epsilon = 1e-9);
    }

    #[test]
    fn missing_cell_gives_zero_for_every_test_kind() {
        for cond in [
            "Variable petalLength in [0, 10]",
            "Variable petalLength = Label 0 (-1.95 1.0 3.95)",
        ] {
            let (r, data) = rule(&format!(
                "@algorithm nmeef\nNumber of labels: 3\nGENERATED RULE 0\n{cond}\nConsecuent: Iris-setosa\n"
            ));
            assert_eq!(firing_degree(&r, &data.examples[1]), 0.0, "{cond}");
        }
    }
}
