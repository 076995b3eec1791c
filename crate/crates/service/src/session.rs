//! In-memory analysis sessions and the two-step draft builder.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, RwLock};
use std::time::{SystemTime, UNIX_EPOCH};

use sdrd_core::report::write_report_zip;
use sdrd_core::{AlgorithmRegistry, EvaluationResult, ExportError, ReportOptions, ResultDocument};
use serde::Serialize;
use uuid::Uuid;

use crate::load::{evaluate_sources, load_dataset, load_rules, InputError, Source};

/// An evaluated session. Everything is computed at creation and never
/// changes afterwards.
#[derive(Debug)]
pub struct Session {
    pub id: String,
    /// Seconds since the Unix epoch.
    pub created_at: u64,
    pub data_name: String,
    pub rules_name: String,
    pub test_name: Option<String>,
    pub result: EvaluationResult,
    pub document: ResultDocument,
    pub json: Vec<u8>,
    pub zip: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SessionInfo {
    pub id: String,
    pub created_at: u64,
    pub algorithm: String,
    pub dialect: String,
    pub relation: String,
    pub rows: usize,
    pub rule_count: usize,
    pub files: FileNames,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FileNames {
    pub data: String,
    pub rules: String,
    pub test: Option<String>,
}

impl Session {
    pub fn build(id: String, result: EvaluationResult, names: FileNames) -> Result<Self, ExportError> {
        let document = ResultDocument::from_result(&result);
        let json = document.to_json_bytes();
        let zip = write_report_zip(&document, &ReportOptions::default())?;
        Ok(Self {
            id,
            created_at: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            data_name: names.data,
            rules_name: names.rules,
            test_name: names.test,
            result,
            document,
            json,
            zip,
        })
    }

    pub fn info(&self) -> SessionInfo {
        SessionInfo {
            id: self.id.clone(),
            created_at: self.created_at,
            algorithm: self.document.algorithm.name.clone(),
            dialect: self.document.algorithm.dialect.clone(),
            relation: self.document.dataset.relation.clone(),
            rows: self.document.dataset.rows,
            rule_count: self.document.rules.len(),
            files: FileNames {
                data: self.data_name.clone(),
                rules: self.rules_name.clone(),
                test: self.test_name.clone(),
            },
        }
    }
}

/// Uploads collected one at a time, in any order, before evaluation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Draft {
    pub data: Option<Source>,
    pub rules: Option<Source>,
    pub test: Option<Source>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DraftSlot {
    Data,
    Rules,
    Test,
}

impl DraftSlot {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "data" => Some(DraftSlot::Data),
            "rules" => Some(DraftSlot::Rules),
            "test" => Some(DraftSlot::Test),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DraftSlot::Data => "data",
            DraftSlot::Rules => "rules",
            DraftSlot::Test => "test",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DraftStatus {
    pub id: String,
    pub data: Option<String>,
    pub rules: Option<String>,
    pub test: Option<String>,
    pub ready: bool,
}

impl Draft {
    /// Stores an upload after checking that it parses on its own.
    pub fn put(&mut self, slot: DraftSlot, source: Source, registry: &AlgorithmRegistry) -> Result<(), InputError> {
        match slot {
            DraftSlot::Data | DraftSlot::Test => {
                load_dataset(&source, None)?;
            }
            DraftSlot::Rules => {
                load_rules(&source, registry)?;
            }
        }
        *self.slot_mut(slot) = Some(source);
        Ok(())
    }

    fn slot_mut(&mut self, slot: DraftSlot) -> &mut Option<Source> {
        match slot {
            DraftSlot::Data => &mut self.data,
            DraftSlot::Rules => &mut self.rules,
            DraftSlot::Test => &mut self.test,
        }
    }

    pub fn missing(&self) -> Vec<&'static str> {
        let mut missing = Vec::new();
        if self.data.is_none() {
            missing.push("data");
        }
        if self.rules.is_none() {
            missing.push("rules");
        }
        missing
    }

    pub fn status(&self, id: &str) -> DraftStatus {
        DraftStatus {
            id: id.to_string(),
            data: self.data.as_ref().map(|s| s.name.clone()),
            rules: self.rules.as_ref().map(|s| s.name.clone()),
            test: self.test.as_ref().map(|s| s.name.clone()),
            ready: self.missing().is_empty(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CreateError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Export(#[from] ExportError),
    #[error("MissingUpload: {0}")]
    Missing(String),
}

/// Sessions and drafts shared by all request handlers.
#[derive(Debug)]
pub struct SessionStore {
    registry: AlgorithmRegistry,
    sessions: RwLock<HashMap<String, Arc<Session>>>,
    drafts: Mutex<HashMap<String, Draft>>,
}

impl Default for SessionStore {
    fn default() -> Self {
        Self::new(AlgorithmRegistry::default())
    }
}

impl SessionStore {
    pub fn new(registry: AlgorithmRegistry) -> Self {
        Self {
            registry,
            sessions: RwLock::new(HashMap::new()),
            drafts: Mutex::new(HashMap::new()),
        }
    }

    pub fn registry(&self) -> &AlgorithmRegistry {
        &self.registry
    }

    fn new_id() -> String {
        Uuid::new_v4().simple().to_string()
    }

    pub fn get(&self, id: &str) -> Option<Arc<Session>> {
        self.sessions.read().unwrap().get(id).cloned()
    }

    pub fn len(&self) -> usize {
        self.sessions.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Evaluates the inputs and registers the resulting session.
    pub fn create(&self, data: &Source, rules: &Source, test: Option<&Source>) -> Result<Arc<Session>, CreateError> {
        let result = evaluate_sources(data, rules, test, &self.registry)?;
        let names = FileNames {
            data: data.name.clone(),
            rules: rules.name.clone(),
            test: test.map(|t| t.name.clone()),
        };
        let session = Arc::new(Session::build(Self::new_id(), result, names)?);
        self.sessions
            .write()
            .unwrap()
            .insert(session.id.clone(), session.clone());
        Ok(session)
    }

    pub fn create_draft(&self) -> DraftStatus {
        let id = Self::new_id();
        let draft = Draft::default();
        let status = draft.status(&id);
        self.drafts.lock().unwrap().insert(id, draft);
        status
    }

    pub fn draft_status(&self, id: &str) -> Option<DraftStatus> {
        self.drafts.lock().unwrap().get(id).map(|d| d.status(id))
    }

    /// `None` when the draft does not exist.
    pub fn put_draft(&self, id: &str, slot: DraftSlot, source: Source) -> Option<Result<DraftStatus, InputError>> {
        let mut drafts = self.drafts.lock().unwrap();
        let draft = drafts.get_mut(id)?;
        Some(draft.put(slot, source, &self.registry).map(|()| draft.status(id)))
    }

    /// Evaluates a complete draft and turns it into a session. The draft is
    /// consumed on success. `None` when the draft does not exist.
    pub fn evaluate_draft(&self, id: &str) -> Option<Result<Arc<Session>, CreateError>> {
        let draft = self.drafts.lock().unwrap().get(id).cloned()?;
        let missing = draft.missing();
        if !missing.is_empty() {
            return Some(Err(CreateError::Missing(format!(
                "draft has no {} upload",
                missing.join(" or ")
            ))));
        }
        let (data, rules) = (draft.data.unwrap(), draft.rules.unwrap());
        let created = self.create(&data, &rules, draft.test.as_ref());
        if created.is_ok() {
            self.drafts.lock().unwrap().remove(id);
        }
        Some(created)
    }
}
