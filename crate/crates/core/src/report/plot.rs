use serde::{Deserialize, Serialize};

use crate::eval::EvaluationResult;
use crate::scalar::Scalar;

use super::document::round_sig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScatterPoint {
    pub rule_id: usize,
    /// FPr in percent.
    pub x: f64,
    /// TPr in percent.
    pub y: f64,
    /// Strictly below the x = y diagonal (TPr < FPr).
    pub low_quality: bool,
}

/// The shaded half-plane `x >= y` marking poor rules, as a polygon in plot
/// coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagonalRegion {
    pub polygon: Vec<[f64; 2]>,
    pub color: String,
}

impl Default for DiagonalRegion {
    fn default() -> Self {
        Self {
            polygon: vec![[0.0, 0.0], [100.0, 0.0], [100.0, 100.0]],
            color: "red".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScatterPlotData {
    pub points: Vec<ScatterPoint>,
    pub diagonal_region: DiagonalRegion,
    /// Ideal position (FPr 0 %, TPr 100 %).
    pub best_corner: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PyramidRow {
    pub rule_id: usize,
    pub tpr: f64,
    pub fpr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PyramidPlotData {
    pub rows: Vec<PyramidRow>,
}

pub fn scatter_point<T: Scalar>(rule_id: usize, tpr: T, fpr: T) -> ScatterPoint {
    let hundred = T::from_f64(100.0).unwrap();
    ScatterPoint {
        rule_id,
        x: round_sig((fpr * hundred).to_f64_lossy()),
        y: round_sig((tpr * hundred).to_f64_lossy()),
        low_quality: tpr < fpr,
    }
}

/// One (FPr%, TPr%) point per rule, ordered by rule id.
pub fn scatter_data<T: Scalar>(result: &EvaluationResult<T>) -> ScatterPlotData {
    let mut points: Vec<ScatterPoint> = result
        .rules
        .iter()
        .map(|r| scatter_point(r.id, r.measures.tpr, r.measures.fpr))
        .collect();
    points.sort_by_key(|p| p.rule_id);
    ScatterPlotData {
        points,
        diagonal_region: DiagonalRegion::default(),
        best_corner: [0.0, 100.0],
    }
}

/// One mirrored (TPr, FPr) bar pair per rule, ordered by rule id.
pub fn pyramid_data<T: Scalar>(result: &EvaluationResult<T>) -> PyramidPlotData {
    let mut rows: Vec<PyramidRow> = result
        .rules
        .iter()
        .map(|r| PyramidRow {
            rule_id: r.id,
            tpr: round_sig(r.measures.tpr.to_f64_lossy()),
            fpr: round_sig(r.measures.fpr.to_f64_lossy()),
        })
        .collect();
    rows.sort_by_key(|r| r.rule_id);
    PyramidPlotData { rows }
}
