//! Evaluation engine for supervised descriptive rules.
//!
//! Reads KEEL datasets and rule files written by subgroup discovery and
//! related algorithms, evaluates each rule on each example (fuzzy firing
//! degrees, coverage, contingency tables, TPr / FPr / confidence / WRAcc),
//! and exports the results as JSON, CSV, SVG and a printable HTML report.
//!
//! The numeric core is generic over [`Scalar`] (`f32` or `f64`). The type
//! aliases at the crate root fix the scalar to `f64`; the `*F32` aliases
//! fix it to `f32`.
//!
//! ```
//! use sdrd_core::{parse_dataset, parse_rules, evaluate_session, AlgorithmRegistry};
//!
//! let data = parse_dataset::<f64>("@relation r\n@attribute x real [0, 10]\n@attribute c {yes, no}\n@data\n1, yes\n9, no\n").unwrap();
//! let rules = parse_rules::<f64>(
//!     "@algorithm sdmap\nGENERATED RULE 0\nVariable x in [0, 5]\nConsequent: yes\n",
//!     &AlgorithmRegistry::default(),
//! ).unwrap();
//! let result = evaluate_session(data, &rules).unwrap();
//! assert_eq!(result.rules[0].table.tp, 1);
//! assert_eq!(result.rules[0].measures.confidence, 1.0);
//! ```

pub mod dataset;
pub mod eval;
pub mod fuzzy;
pub mod report;
pub mod rules;
pub mod scalar;

use thiserror::Error;

pub use dataset::{parse_dataset, parse_dataset_pair, to_keel_text, AttributeKind, DatasetError, Role};
pub use eval::{
    contingency, coverage_matrix, covers, evaluate_bound, evaluate_session, firing_degree, measures, normalized_wracc,
    ContingencyTable, DatasetSummary,
};
pub use fuzzy::membership;
pub use report::{
    export_json, export_report_zip, pyramid_data, scatter_data, ExportError, ReportOptions, ResultDocument,
};
pub use rules::{bind_rules, parse_rules, AlgorithmRegistry, BindError, Dialect, RegistryError, RuleError};
pub use scalar::Scalar;

pub type Dataset = dataset::Dataset<f64>;
pub type Example = dataset::Example<f64>;
pub type Cell = dataset::Cell<f64>;
pub type TriangularLabel = fuzzy::TriangularLabel<f64>;
pub type RuleSet = rules::RuleSet<f64>;
pub type Rule = rules::Rule<f64>;
pub type BoundRuleSet = rules::BoundRuleSet<f64>;
pub type QualityMeasures = eval::QualityMeasures<f64>;
pub type CoverageMatrix = eval::CoverageMatrix<f64>;
pub type CoverageEntry = eval::CoverageEntry<f64>;
pub type EvaluationResult = eval::EvaluationResult<f64>;

pub type DatasetF32 = dataset::Dataset<f32>;
pub type TriangularLabelF32 = fuzzy::TriangularLabel<f32>;
pub type RuleSetF32 = rules::RuleSet<f32>;
pub type QualityMeasuresF32 = eval::QualityMeasures<f32>;
pub type EvaluationResultF32 = eval::EvaluationResult<f32>;

/// Any error raised while loading inputs or exporting results.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Dataset(#[from] DatasetError),
    #[error(transparent)]
    Rules(#[from] RuleError),
    #[error(transparent)]
    Bind(#[from] BindError),
    #[error(transparent)]
    Registry(#[from] RegistryError),
    #[error(transparent)]
    Export(#[from] ExportError),
}

impl Error {
    /// Short machine-readable name of the failure, e.g. `"SchemaMismatch"`.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dataset(e) => e.kind(),
            Error::Rules(e) => e.kind(),
            Error::Bind(e) => e.kind(),
            Error::Registry(_) => "RegistryError",
            Error::Export(_) => "ArchiveWriteFailure",
        }
    }

    pub fn line(&self) -> Option<usize> {
        match self {
            Error::Dataset(e) => e.line(),
            Error::Rules(e) => e.line(),
            Error::Bind(e) => Some(e.line()),
            Error::Registry(e) => Some(e.line),
            Error::Export(_) => None,
        }
    }
}
