//! Turns raw uploaded or on-disk texts into an evaluated session, keeping
//! track of which file each diagnostic belongs to.

use std::fmt;

use sdrd_core::{
    evaluate_session, parse_dataset, parse_rules, AlgorithmRegistry, Dataset, Error, EvaluationResult, RuleSet,
};
use serde::Serialize;

/// A named input text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Source {
    pub name: String,
    pub text: String,
}

impl Source {
    pub fn new(name: impl Into<String>, text: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            text: text.into(),
        }
    }
}

/// A parse or bind failure attributed to one input file.
#[derive(Debug)]
pub struct InputError {
    pub file: String,
    pub error: Error,
}

impl InputError {
    pub fn new(file: impl Into<String>, error: impl Into<Error>) -> Self {
        Self {
            file: file.into(),
            error: error.into(),
        }
    }

    pub fn kind(&self) -> &'static str {
        self.error.kind()
    }

    pub fn line(&self) -> Option<usize> {
        self.error.line()
    }

    pub fn body(&self) -> ErrorBody {
        ErrorBody {
            error: self.kind().to_string(),
            message: self.error.to_string(),
            file: Some(self.file.clone()),
            line: self.line(),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line() {
            Some(line) => write!(f, "{}:{}: {}", self.file, line, self.error),
            None => write!(f, "{}: {}", self.file, self.error),
        }
    }
}

impl std::error::Error for InputError {}

/// JSON body of every API error response.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorBody {
    pub error: String,
    pub message: String,
    pub file: Option<String>,
    pub line: Option<usize>,
}

pub fn load_dataset(data: &Source, test: Option<&Source>) -> Result<Dataset, InputError> {
    let mut dataset: Dataset = parse_dataset(&data.text).map_err(|e| InputError::new(&data.name, e))?;
    if let Some(test) = test {
        let extra: Dataset = parse_dataset(&test.text).map_err(|e| InputError::new(&test.name, e))?;
        dataset.append(extra).map_err(|e| InputError::new(&test.name, e))?;
    }
    Ok(dataset)
}

pub fn load_rules(rules: &Source, registry: &AlgorithmRegistry) -> Result<RuleSet, InputError> {
    parse_rules(&rules.text, registry).map_err(|e| InputError::new(&rules.name, e))
}

/// Parses, binds and evaluates. Binding errors are reported against the
/// rules file, since their line numbers point into it.
pub fn evaluate_sources(
    data: &Source,
    rules: &Source,
    test: Option<&Source>,
    registry: &AlgorithmRegistry,
) -> Result<EvaluationResult, InputError> {
    let dataset = load_dataset(data, test)?;
    let rule_set = load_rules(rules, registry)?;
    evaluate_session(dataset, &rule_set).map_err(|e| InputError::new(&rules.name, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    const DATA: &str = "@relation r\n@attribute x real [0, 10]\n@attribute c {p, n}\n@data\n1, p\n9, n\n";

    #[test]
    fn names_the_failing_file() {
        let registry = AlgorithmRegistry::default();
        let data = Source::new("train.dat", DATA);
        let rules = Source::new("rules.txt", "GENERATED RULE 0\n");
        let err = evaluate_sources(&data, &rules, None, &registry).unwrap_err();
        assert_eq!(err.kind(), "MissingAlgorithmHeader");
        assert!(err.to_string().starts_with("rules.txt:1: MissingAlgorithmHeader"));

        let test = Source::new("test.dat", DATA.replace("{p, n}", "{n, p}"));
        let err = load_dataset(&data, Some(&test)).unwrap_err();
        assert_eq!(err.kind(), "SchemaMismatch");
        assert_eq!(err.file, "test.dat");
        assert!(err.to_string().starts_with("test.dat: SchemaMismatch"));
    }

    #[test]
    fn bind_errors_point_into_the_rules_file() {
        let registry = AlgorithmRegistry::default();
        let rules = Source::new(
            "r.txt",
            "@algorithm sdmap\nGENERATED RULE 0\nVariable y in [0, 1]\nConsequent: p\n",
        );
        let err = evaluate_sources(&Source::new("d.dat", DATA), &rules, None, &registry).unwrap_err();
        assert_eq!(err.body().error, "UnknownAttribute");
        assert_eq!(err.body().line, Some(3));
        assert_eq!(err.body().file.as_deref(), Some("r.txt"));
    }
}
