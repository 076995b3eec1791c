use crate::dataset::Dataset;
use crate::rules::BoundRule;
use crate::scalar::Scalar;

use super::{firing_degree, is_covered};

/// Coverage-by-class partition of a dataset for one rule.
///
/// |             | positives | negatives |       |
/// |-------------|-----------|-----------|-------|
/// | covered     | `tp`      | `fp`      | p + n |
/// | not covered | `fn_`     | `tn`      |       |
/// |             | `P`       | `N`       | `T`   |
///
/// Counts are integers even for fuzzy rules: the firing degree only decides
/// whether an example is covered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ContingencyTable {
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
    pub tn: usize,
}

impl ContingencyTable {
    pub fn new(tp: usize, fp: usize, fn_: usize, tn: usize) -> Self {
        Self { tp, fp, fn_, tn }
    }

    /// Examples of the consequent class.
    pub fn positives(&self) -> usize {
        self.tp + self.fn_
    }

    pub fn negatives(&self) -> usize {
        self.fp + self.tn
    }

    pub fn total(&self) -> usize {
        self.positives() + self.negatives()
    }

    pub fn covered(&self) -> usize {
        self.tp + self.fp
    }

    pub fn not_covered(&self) -> usize {
        self.fn_ + self.tn
    }

    pub fn scaled(&self, k: usize) -> Self {
        Self::new(self.tp * k, self.fp * k, self.fn_ * k, self.tn * k)
    }

    pub fn measures<T: Scalar>(&self) -> QualityMeasures<T> {
        measures(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QualityMeasures<T> {
    /// tp / P
    pub tpr: T,
    /// fp / N
    pub fpr: T,
    /// tp / (tp + fp)
    pub confidence: T,
    /// Weighted relative accuracy (unusualness).
    pub wracc_raw: T,
    /// `wracc_raw` mapped onto [0, 1].
    pub wracc_norm: T,
}

fn ratio<T: Scalar>(num: usize, den: usize) -> T {
    if den == 0 {
        T::zero()
    } else {
        T::from_count(num) / T::from_count(den)
    }
}

/// Affine map of WRAcc from its attainable range `[-PN/T², PN/T²]` onto
/// `[0, 1]`. Degenerate tables (no positives or no negatives) map to 0.5.
pub fn normalized_wracc<T: Scalar>(wracc_raw: T, positives: usize, negatives: usize) -> T {
    if positives == 0 || negatives == 0 {
        return T::from_f64(0.5).unwrap();
    }
    let t = T::from_count(positives + negatives);
    let bound = T::from_count(positives) * T::from_count(negatives) / (t * t);
    let two = T::one() + T::one();
    let norm = (wracc_raw + bound) / (two * bound);
    norm.max(T::zero()).min(T::one())
}

/// Quality measures of a contingency table. Every division by zero
/// resolves to 0 (0.5 for the normalized WRAcc).
pub fn measures<T: Scalar>(ct: &ContingencyTable) -> QualityMeasures<T> {
    let (p, n, t) = (ct.positives(), ct.negatives(), ct.total());
    let covered = ct.covered();
    let tpr = ratio(ct.tp, p);
    let fpr = ratio(ct.fp, n);
    let confidence = ratio(ct.tp, covered);
    let wracc_raw = if covered == 0 || t == 0 {
        T::zero()
    } else {
        ratio::<T>(covered, t) * (confidence - ratio::<T>(p, t))
    };
    QualityMeasures {
        tpr,
        fpr,
        confidence,
        wracc_raw,
        wracc_norm: normalized_wracc(wracc_raw, p, n),
    }
}

/// Contingency table of one rule over every example of `data`.
pub fn contingency<T: Scalar>(rule: &BoundRule<T>, data: &Dataset<T>) -> ContingencyTable {
    let mut ct = ContingencyTable::default();
    for example in &data.examples {
        let covered = is_covered(firing_degree(rule, example));
        let positive = data.class_of(example) == Some(rule.class_index);
        match (covered, positive) {
            (true, true) => ct.tp += 1,
            (true, false) => ct.fp += 1,
            (false, true) => ct.fn_ += 1,
            (false, false) => ct.tn += 1,
        }
    }
    ct
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    use super::*;

    const TOL: f64 = 1e-9;

    #[test]
    fn perfect_rule() {
        let m: QualityMeasures<f64> = measures(&ContingencyTable::new(50, 0, 0, 100));
        assert_eq!(m.tpr, 1.0);
        assert_eq!(m.fpr, 0.0);
        assert_eq!(m.confidence, 1.0);
        assert_abs_diff_eq!(m.wracc_raw, 2.0 / 9.0, epsilon = TOL);
        assert_abs_diff_eq!(m.wracc_norm, 1.0, epsilon = TOL);
    }

    #[test]
    fn empty_rule() {
        let m: QualityMeasures<f64> = measures(&ContingencyTable::new(0, 0, 50, 100));
        assert_eq!(
            m,
            QualityMeasures {
                tpr: 0.0,
                fpr: 0.0,
                confidence: 0.0,
                wracc_raw: 0.0,
                wracc_norm: 0.5
            }
        );
    }

    #[test]
    fn cover_all_rule() {
        let m: QualityMeasures<f64> = measures(&ContingencyTable::new(50, 100, 0, 0));
        assert_eq!(m.tpr, 1.0);
        assert_eq!(m.fpr, 1.0);
        assert_abs_diff_eq!(m.confidence, 1.0 / 3.0, epsilon = TOL);
        assert_abs_diff_eq!(m.wracc_raw, 0.0, epsilon = TOL);
        assert_abs_diff_eq!(m.wracc_norm, 0.5, epsilon = TOL);
    }

    #[test]
    fn iris_nmeef_rule_measures() {
        // exact fractions from scripts/iris_oracle.py
        let m: QualityMeasures<f64> = measures(&ContingencyTable::new(50, 11, 0, 89));
        assert_eq!(m.tpr, 1.0);
        assert_abs_diff_eq!(m.fpr, 0.11, epsilon = TOL);
        assert_abs_diff_eq!(m.confidence, 50.0 / 61.0, epsilon = TOL);
        assert_abs_diff_eq!(m.wracc_raw, 89.0 / 450.0, epsilon = TOL);
        assert_abs_diff_eq!(m.wracc_norm, 189.0 / 200.0, epsilon = TOL);
    }

    #[test]
    fn worst_rule_normalizes_to_zero() {
        let m: QualityMeasures<f64> = measures(&ContingencyTable::new(0, 100, 50, 0));
        assert_abs_diff_eq!(m.wracc_raw, -2.0 / 9.0, epsilon = TOL);
        assert_abs_diff_eq!(m.wracc_norm, 0.0, epsilon = TOL);
    }

    #[test]
    fn empty_dataset() {
        let m: QualityMeasures<f64> = measures(&ContingencyTable::default());
        assert_eq!(m.wracc_norm, 0.5);
        assert_eq!(m.wracc_raw, 0.0);
    }

    #[test]
    fn degenerate_class_balance() {
        // no negatives at all
        let m: QualityMeasures<f64> = measures(&ContingencyTable::new(3, 0, 2, 0));
        assert_eq!(m.fpr, 0.0);
        assert_eq!(m.wracc_norm, 0.5);
    }

    #[test]
    fn f32_measures() {
        let m: QualityMeasures<f32> = measures(&ContingencyTable::new(50, 11, 0, 89));
        assert!((m.wracc_norm - 0.945).abs() < 1e-6);
    }

    fn arb_table() -> impl Strategy<Value = ContingencyTable> {
        (0usize..200, 0usize..200, 0usize..200, 0usize..200).prop_map(|(a, b, c, d)| ContingencyTable::new(a, b, c, d))
    }

    proptest! {
        #[test]
        fn measures_are_bounded(ct in arb_table()) {
            let m: QualityMeasures<f64> = measures(&ct);
            for v in [m.tpr, m.fpr, m.confidence, m.wracc_norm] {
                prop_assert!((0.0..=1.0).contains(&v));
            }
            let t = ct.total() as f64;
            let bound = if t == 0.0 { 0.0 } else { (ct.positives() * ct.negatives()) as f64 / (t * t) };
            prop_assert!(m.wracc_raw >= -bound - TOL && m.wracc_raw <= bound + TOL);
        }

        #[test]
        fn scaling_leaves_measures_unchanged(ct in arb_table(), k in 1usize..50) {
            let a: QualityMeasures<f64> = measures(&ct);
            let b: QualityMeasures<f64> = measures(&ct.scaled(k));
            prop_assert!((a.tpr - b.tpr).abs() < TOL);
            prop_assert!((a.fpr - b.fpr).abs() < TOL);
            prop_assert!((a.confidence - b.confidence).abs() < TOL);
            prop_assert!((a.wracc_raw - b.wracc_raw).abs() < TOL);
            prop_assert!((a.wracc_norm - b.wracc_norm).abs() < TOL);
        }

        #[test]
        fn wracc_matches_expanded_form(ct in arb_table()) {
            // tp/T - (tp+fp)·P/T², the algebraically expanded formula
            prop_assume!(ct.covered() > 0);
            let t = ct.total() as f64;
            let expanded = ct.tp as f64 / t - ct.covered() as f64 * ct.positives() as f64 / (t * t);
            let m: QualityMeasures<f64> = measures(&ct);
            prop_assert!((m.wracc_raw - expanded).abs() < TOL);
        }
    }
}
