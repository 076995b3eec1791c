//! KEEL-format datasets: schema, rows, parsing and serialization.
//!
//! The accepted dialect is the one produced by the KEEL repository:
//!
//! ```text
//! @relation iris
//! @attribute sepalLength real [4.3, 7.9]
//! @attribute class {Iris-setosa, Iris-versicolor, Iris-virginica}
//! @inputs sepalLength
//! @outputs class
//! @data
//! 5.1, Iris-setosa
//! ```
//!
//! Directives are case-insensitive, `%` starts a comment line, `?` or an
//! empty cell is a missing value. Out-of-range numeric values are accepted
//! and recorded as [`RangeWarning`]s.

mod parse;
mod write;

use std::fmt;

use thiserror::Error;

use crate::scalar::Scalar;

pub use parse::{parse_dataset, parse_dataset_pair};
pub use write::to_keel_text;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AttributeKind {
    Real,
    Integer,
    Categorical,
}

impl AttributeKind {
    pub fn is_numeric(self) -> bool {
        !matches!(self, AttributeKind::Categorical)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AttributeKind::Real => "real",
            AttributeKind::Integer => "integer",
            AttributeKind::Categorical => "categorical",
        }
    }
}

impl fmt::Display for AttributeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Input,
    Output,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Input => "input",
            Role::Output => "output",
        }
    }
}

/// Closed numeric range declared in an attribute header.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range<T> {
    pub min: T,
    pub max: T,
}

impl<T: Scalar> Range<T> {
    pub fn contains(&self, x: T) -> bool {
        self.min <= x && x <= self.max
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Attribute<T> {
    pub name: String,
    pub kind: AttributeKind,
    /// Declared bounds for numeric kinds. Always `None` for categorical ones.
    pub range: Option<Range<T>>,
    /// Declared values, in header order. Empty for numeric kinds.
    pub values: Vec<String>,
    pub role: Role,
}

impl<T: Scalar> Attribute<T> {
    pub fn value_index(&self, value: &str) -> Option<usize> {
        self.values.iter().position(|v| v == value)
    }

    /// Schema equality used when pairing train and test files: name, kind,
    /// range, categorical value order and role must all agree.
    pub fn same_schema(&self, other: &Self) -> bool {
        self == other
    }
}

/// One cell of a row. Categorical values are stored as indices into the
/// attribute's declared value list.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell<T> {
    Number(T),
    Category(usize),
    Missing,
}

impl<T: Scalar> Cell<T> {
    pub fn as_number(&self) -> Option<T> {
        match *self {
            Cell::Number(x) => Some(x),
            _ => None,
        }
    }

    pub fn as_category(&self) -> Option<usize> {
        match *self {
            Cell::Category(i) => Some(i),
            _ => None,
        }
    }

    pub fn is_missing(&self) -> bool {
        matches!(self, Cell::Missing)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Example<T> {
    /// 0-based position in the evaluation set.
    pub index: usize,
    pub values: Vec<Cell<T>>,
}

/// A numeric cell that falls outside its attribute's declared range.
#[derive(Debug, Clone, PartialEq)]
pub struct RangeWarning<T> {
    /// 1-based line in the file the row came from.
    pub line: usize,
    pub row: usize,
    pub attribute: String,
    pub value: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset<T> {
    pub relation_name: String,
    pub attributes: Vec<Attribute<T>>,
    pub examples: Vec<Example<T>>,
    pub target_index: usize,
    pub warnings: Vec<RangeWarning<T>>,
}

impl<T: Scalar> Dataset<T> {
    pub fn target(&self) -> &Attribute<T> {
        &self.attributes[self.target_index]
    }

    pub fn class_values(&self) -> &[String] {
        &self.target().values
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|a| a.name == name)
    }

    /// Class index of an example, `None` when its target cell is missing.
    pub fn class_of(&self, example: &Example<T>) -> Option<usize> {
        example.values[self.target_index].as_category()
    }

    /// Number of examples per class value, in declared order.
    pub fn class_distribution(&self) -> Vec<usize> {
        let mut counts = vec![0; self.class_values().len()];
        for e in &self.examples {
            if let Some(c) = self.class_of(e) {
                counts[c] += 1;
            }
        }
        counts
    }

    /// Renders a cell the way it would appear in a KEEL data row.
    pub fn display_cell(&self, attribute: usize, cell: &Cell<T>) -> String {
        match *cell {
            Cell::Number(x) => x.to_text(),
            Cell::Category(i) => self.attributes[attribute].values[i].clone(),
            Cell::Missing => "?".to_string(),
        }
    }

    pub fn display_row(&self, example: &Example<T>) -> Vec<String> {
        example
            .values
            .iter()
            .enumerate()
            .map(|(i, c)| self.display_cell(i, c))
            .collect()
    }

    /// Appends the rows of `other`, which must have exactly the same
    /// attribute schema. Row indices of the appended examples are shifted.
    pub fn append(&mut self, other: Dataset<T>) -> Result<(), DatasetError> {
        if self.attributes.len() != other.attributes.len() {
            return Err(DatasetError::SchemaMismatch {
                message: format!("{} attributes versus {}", self.attributes.len(), other.attributes.len()),
            });
        }
        for (a, b) in self.attributes.iter().zip(&other.attributes) {
            if !a.same_schema(b) {
                return Err(DatasetError::SchemaMismatch {
                    message: format!("attribute '{}' differs from attribute '{}'", a.name, b.name),
                });
            }
        }
        let offset = self.examples.len();
        self.examples.extend(other.examples.into_iter().map(|mut e| {
            e.index += offset;
            e
        }));
        self.warnings.extend(other.warnings.into_iter().map(|mut w| {
            w.row += offset;
            w
        }));
        Ok(())
    }

    /// Structural equality ignoring range warnings (whose line numbers
    /// depend on the original file layout).
    pub fn same_content(&self, other: &Self) -> bool {
        self.relation_name == other.relation_name
            && self.attributes == other.attributes
            && self.examples == other.examples
            && self.target_index == other.target_index
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DatasetError {
    #[error("MalformedHeader at line {line}: {message}")]
    MalformedHeader { line: usize, message: String },
    #[error("RowArityMismatch at line {line}: expected {expected} cells, found {found}")]
    RowArityMismatch { line: usize, expected: usize, found: usize },
    #[error("DomainViolation at line {line}: value '{value}' is not valid for {kind} attribute '{attribute}'")]
    DomainViolation {
        line: usize,
        attribute: String,
        kind: AttributeKind,
        value: String,
    },
    #[error("NoCategoricalTarget at line {line}: output attribute '{attribute}' is not categorical")]
    NoCategoricalTarget { line: usize, attribute: String },
    #[error("SchemaMismatch: {message}")]
    SchemaMismatch { message: String },
}

impl DatasetError {
    pub fn kind(&self) -> &'static str {
        match self {
            DatasetError::MalformedHeader { .. } => "MalformedHeader",
            DatasetError::RowArityMismatch { .. } => "RowArityMismatch",
            DatasetError::DomainViolation { .. } => "DomainViolation",
            DatasetError::NoCategoricalTarget { .. } => "NoCategoricalTarget",
            DatasetError::SchemaMismatch { .. } => "SchemaMismatch",
        }
    }

    pub fn line(&self) -> Option<usize> {
        match *self {
            DatasetError::MalformedHeader { line, .. }
            | DatasetError::RowArityMismatch { line, .. }
            | DatasetError::DomainViolation { line, .. }
            | DatasetError::NoCategoricalTarget { line, .. } => Some(line),
            DatasetError::SchemaMismatch { .. } => None,
        }
    }
}
