//! Exports of an evaluation result: plot data, canonical JSON, CSV tables,
//! static SVG charts and a printable HTML report bundled in a ZIP archive.
//!
//! All exports are rendered from a [`ResultDocument`], so parsing
//! `result.json` back and re-rendering reproduces the other files.

mod document;
mod html;
mod plot;
mod svg;
mod tables;

use std::io::{Cursor, Write};

use thiserror::Error;
use zip::write::SimpleFileOptions;
use zip::{CompressionMethod, DateTime, ZipWriter};

use crate::eval::EvaluationResult;
use crate::scalar::Scalar;

pub use document::{
    canonicalize, export_json, round_sig, AlgorithmDoc, AttributeDoc, Channel, ClassDoc, CoveredDoc, DatasetDoc,
    EntryDoc, ExampleDoc, MeasuresDoc, PlotsDoc, ResultDocument, RuleDoc, TableDoc, FORMAT_NAME, FORMAT_VERSION,
};
pub use html::report_html;
pub use plot::{
    pyramid_data, scatter_data, scatter_point, DiagonalRegion, PyramidPlotData, PyramidRow, ScatterPlotData,
    ScatterPoint,
};
pub use svg::{pyramid_svg, rule_scatter_svg, scatter_svg};
pub use tables::{coverage_csv, measures_csv, COVERAGE_HEADER, MEASURES_HEADER};

/// Archive members, in the order they are written.
pub const ZIP_ENTRIES: [&str; 6] = [
    "report.html",
    "measures.csv",
    "coverage.csv",
    "scatter.svg",
    "pyramid.svg",
    "result.json",
];

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("ArchiveWriteFailure: {0}")]
    ArchiveWriteFailure(String),
}

impl From<zip::result::ZipError> for ExportError {
    fn from(e: zip::result::ZipError) -> Self {
        ExportError::ArchiveWriteFailure(e.to_string())
    }
}

impl From<std::io::Error> for ExportError {
    fn from(e: std::io::Error) -> Self {
        ExportError::ArchiveWriteFailure(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportOptions {
    /// Report heading; defaults to "<algorithm> rules on <relation>".
    pub title: Option<String>,
    /// Deflate the members (stored uncompressed otherwise).
    pub compress: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            title: None,
            compress: true,
        }
    }
}

pub(crate) fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            c => out.push(c),
        }
    }
    out
}

/// Renders every member of the report archive, keyed by file name.
pub fn render_report_files(doc: &ResultDocument, options: &ReportOptions) -> Vec<(&'static str, Vec<u8>)> {
    let title = options
        .title
        .clone()
        .unwrap_or_else(|| format!("{} rules on {}", doc.algorithm.name, doc.dataset.relation));
    vec![
        ("report.html", report_html(doc, &title).into_bytes()),
        ("measures.csv", measures_csv(doc).into_bytes()),
        ("coverage.csv", coverage_csv(doc).into_bytes()),
        ("scatter.svg", scatter_svg(&doc.plots.scatter).into_bytes()),
        ("pyramid.svg", pyramid_svg(&doc.plots.pyramid).into_bytes()),
        ("result.json", doc.to_json_bytes()),
    ]
}

/// Writes the report archive for an already built document. Timestamps and
/// permissions are fixed so identical documents give identical bytes.
pub fn write_report_zip(doc: &ResultDocument, options: &ReportOptions) -> Result<Vec<u8>, ExportError> {
    let method = if options.compress {
        CompressionMethod::Deflated
    } else {
        CompressionMethod::Stored
    };
    let file_options = SimpleFileOptions::default()
        .compression_method(method)
        .last_modified_time(DateTime::default())
        .unix_permissions(0o644);

    let mut zip = ZipWriter::new(Cursor::new(Vec::new()));
    for (name, bytes) in render_report_files(doc, options) {
        zip.start_file(name, file_options)?;
        zip.write_all(&bytes)?;
    }
    Ok(zip.finish()?.into_inner())
}

/// ZIP archive with `report.html`, `measures.csv`, `coverage.csv`,
/// `scatter.svg`, `pyramid.svg` and `result.json`.
pub fn export_report_zip<T: Scalar>(
    result: &EvaluationResult<T>,
    options: &ReportOptions,
) -> Result<Vec<u8>, ExportError> {
    write_report_zip(&ResultDocument::from_result(result), options)
}
