use std::collections::BTreeMap;

use thiserror::Error;

use super::Dialect;

/// Algorithms seeded into every default registry.
const BUILTIN: &[(&str, Dialect)] = &[
    ("nmeef", Dialect::Fuzzy),
    ("nmeefsd", Dialect::Fuzzy),
    ("mesdif", Dialect::Fuzzy),
    ("sdiga", Dialect::Fuzzy),
    ("apriorisd", Dialect::Crisp),
    ("cn2sd", Dialect::Crisp),
    ("sdmap", Dialect::Crisp),
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("RegistryError at line {line}: {message}")]
pub struct RegistryError {
    pub line: usize,
    pub message: String,
}

/// Maps algorithm names (case-insensitive) to the dialect of their output.
///
/// The file form is one `<algorithm-name> <fuzzy|crisp>` entry per line;
/// `#` starts a comment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgorithmRegistry {
    entries: BTreeMap<String, Dialect>,
}

impl Default for AlgorithmRegistry {
    fn default() -> Self {
        let mut reg = Self::empty();
        for (name, dialect) in BUILTIN {
            reg.insert(name, *dialect);
        }
        reg
    }
}

impl AlgorithmRegistry {
    pub fn empty() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, name: &str, dialect: Dialect) -> Option<Dialect> {
        self.entries.insert(name.trim().to_ascii_lowercase(), dialect)
    }

    pub fn lookup(&self, name: &str) -> Option<Dialect> {
        self.entries.get(&name.trim().to_ascii_lowercase()).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Dialect)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Parses a registry file. Entries override each other top to bottom.
    pub fn parse(text: &str) -> Result<Self, RegistryError> {
        let mut reg = Self::empty();
        reg.merge_text(text)?;
        Ok(reg)
    }

    /// Adds the entries of a registry file on top of the current ones.
    pub fn merge_text(&mut self, text: &str) -> Result<(), RegistryError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [name, dialect] = fields.as_slice() else {
                return Err(RegistryError {
                    line: i + 1,
                    message: format!("expected '<algorithm> <fuzzy|crisp>', got '{line}'"),
                });
            };
            let dialect = dialect.parse::<Dialect>().map_err(|_| RegistryError {
                line: i + 1,
                message: format!("unknown dialect '{dialect}'"),
            })?;
            self.insert(name, dialect);
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        self.iter().map(|(name, d)| format!("{name} {d}\n")).collect()
    }
}
