use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::eval::{EvaluationResult, RuleEvaluation};
use crate::scalar::Scalar;

use super::plot::{pyramid_data, scatter_data, PyramidPlotData, ScatterPlotData};

pub const FORMAT_NAME: &str = "sdrd-evaluation";
pub const FORMAT_VERSION: u32 = 1;

/// Rounds to 12 significant digits. Exports only ever carry rounded values,
/// so re-rounding a value read back from JSON is a no-op.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Coverage colour channel: correct coverage is blue, incorrect orange.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Channel {
    Correct,
    Incorrect,
}

impl Channel {
    pub fn from_correct(correct: bool) -> Self {
        if correct {
            Channel::Correct
        } else {
            Channel::Incorrect
        }
    }

    pub fn color(self) -> &'static str {
        match self {
            Channel::Correct => "blue",
            Channel::Incorrect => "orange",
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Channel::Correct => "correct",
            Channel::Incorrect => "incorrect",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmDoc {
    pub name: String,
    pub dialect: String,
    pub num_labels: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttributeDoc {
    pub name: String,
    pub kind: String,
    pub role: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassDoc {
    pub name: String,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetDoc {
    pub relation: String,
    pub rows: usize,
    pub target: String,
    pub attributes: Vec<AttributeDoc>,
    pub classes: Vec<ClassDoc>,
    pub range_warnings: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDoc {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub tn: usize,
    #[serde(rename = "P")]
    pub positives: usize,
    #[serde(rename = "N")]
    pub negatives: usize,
    #[serde(rename = "T")]
    pub total: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasuresDoc {
    pub tpr: f64,
    pub fpr: f64,
    pub confidence: f64,
    pub wracc_raw: f64,
    pub wracc_norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoveredDoc {
    pub example: usize,
    pub degree: f64,
    pub channel: Channel,
    pub color: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleDoc {
    pub id: usize,
    pub name: String,
    pub antecedent: Vec<String>,
    pub consequent: String,
    pub contingency: TableDoc,
    pub measures: MeasuresDoc,
    pub covered: Vec<CoveredDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryDoc {
    pub rule: usize,
    pub degree: f64,
    pub channel: Channel,
    pub color: String,
}

/// One row of the by-example coverage view.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExampleDoc {
    pub example: usize,
    pub class: Option<String>,
    pub values: Vec<String>,
    pub entries: Vec<EntryDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotsDoc {
    pub scatter: ScatterPlotData,
    pub pyramid: PyramidPlotData,
}

/// Canonical, scalar-independent form of an evaluation result. This is
/// what `result.json` holds and what the CSV, SVG and HTML exports are
/// rendered from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub format: String,
    pub version: u32,
    pub algorithm: AlgorithmDoc,
    pub dataset: DatasetDoc,
    pub rules: Vec<RuleDoc>,
    pub coverage: Vec<ExampleDoc>,
    pub plots: PlotsDoc,
}

fn rule_doc<T: Scalar>(result: &EvaluationResult<T>, r: &RuleEvaluation<T>) -> RuleDoc {
    let m = &r.measures;
    RuleDoc {
        id: r.id,
        name: r.display_name.clone(),
        antecedent: r.antecedent.clone(),
        consequent: r.consequent.clone(),
        contingency: TableDoc {
            tp: r.table.tp,
            fp: r.table.fp,
            fn_: r.table.fn_,
            tn: r.table.tn,
            positives: r.table.positives(),
            negatives: r.table.negatives(),
            total: r.table.total(),
        },
        measures: MeasuresDoc {
            tpr: round_sig(m.tpr.to_f64_lossy()),
            fpr: round_sig(m.fpr.to_f64_lossy()),
            confidence: round_sig(m.confidence.to_f64_lossy()),
            wracc_raw: round_sig(m.wracc_raw.to_f64_lossy()),
            wracc_norm: round_sig(m.wracc_norm.to_f64_lossy()),
        },
        covered: result
            .coverage
            .rule_entries(r.id)
            .iter()
            .map(|e| {
                let channel = Channel::from_correct(e.correct);
                CoveredDoc {
                    example: e.example_index,
                    degree: round_sig(e.degree.to_f64_lossy()),
                    channel,
                    color: channel.color().to_string(),
                }
            })
            .collect(),
    }
}

impl ResultDocument {
    pub fn from_result<T: Scalar>(result: &EvaluationResult<T>) -> Self {
        let data = &result.dataset;
        let summary = &result.summary;
        let coverage = data
            .examples
            .iter()
            .map(|example| ExampleDoc {
                example: example.index,
                class: data.class_of(example).map(|c| data.class_values()[c].clone()),
                values: data.display_row(example),
                entries: result
                    .coverage
                    .example_entries(example.index)
                    .iter()
                    .map(|e| {
                        let channel = Channel::from_correct(e.correct);
                        EntryDoc {
                            rule: e.rule_id,
                            degree: round_sig(e.degree.to_f64_lossy()),
                            channel,
                            color: channel.color().to_string(),
                        }
                    })
                    .collect(),
            })
            .collect();

        ResultDocument {
            format: FORMAT_NAME.to_string(),
            version: FORMAT_VERSION,
            algorithm: AlgorithmDoc {
                name: result.algorithm_name.clone(),
                dialect: result.dialect.as_str().to_string(),
                num_labels: result.num_labels,
            },
            dataset: DatasetDoc {
                relation: summary.relation.clone(),
                rows: summary.rows,
                target: summary.target.clone(),
                attributes: summary
                    .attributes
                    .iter()
                    .map(|a| AttributeDoc {
                        name: a.name.clone(),
                        kind: a.kind.as_str().to_string(),
                        role: a.role.as_str().to_string(),
                    })
                    .collect(),
                classes: summary
                    .class_distribution
                    .iter()
                    .map(|c| ClassDoc {
                        name: c.class.clone(),
                        count: c.count,
                    })
                    .collect(),
                range_warnings: summary.range_warnings,
            },
            rules: result.rules.iter().map(|r| rule_doc(result, r)).collect(),
            coverage,
            plots: PlotsDoc {
                scatter: scatter_data(result),
                pyramid: pyramid_data(result),
            },
        }
    }

    pub fn is_fuzzy(&self) -> bool {
        self.algorithm.dialect == "fuzzy"
    }

    pub fn rule(&self, id: usize) -> Option<&RuleDoc> {
        self.rules.iter().find(|r| r.id == id)
    }

    /// Pretty-printed JSON with object keys sorted.
    pub fn to_json_bytes(&self) -> Vec<u8> {
        let value = canonicalize(serde_json::to_value(self).expect("document serializes"));
        let mut out = serde_json::to_vec_pretty(&value).expect("value serializes");
        out.push(b'\n');
        out
    }

    pub fn from_json_bytes(bytes: &[u8]) -> serde_json::Result<Self> {
        serde_json::from_slice(bytes)
    }
}

/// Recursively sorts object keys, independent of how `serde_json::Map` is
/// backed in the current build.
pub fn canonicalize(value: Value) -> Value {
    match value {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(entries.into_iter().map(|(k, v)| (k, canonicalize(v))).collect())
        }
        Value::Array(items) => Value::Array(items.into_iter().map(canonicalize).collect()),
        other => other,
    }
}

/// Canonical JSON export of an evaluation result.
pub fn export_json<T: Scalar>(result: &EvaluationResult<T>) -> Vec<u8> {
    ResultDocument::from_result(result).to_json_bytes()
}
