//! Resumable search state.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::SearchError;

pub const CHECKPOINT_VERSION: u32 = 1;

/// Progress of a frontier-partitioned search.
///
/// `key` identifies the search (problem, prefix depth); `bound` is the pruning
/// bound the run started with, reused on resume so that the continued run
/// visits exactly the nodes an uninterrupted one would. `state` and `nodes`
/// cover completed frontier prefixes only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    pub kind: String,
    pub key: serde_json::Value,
    pub bound: serde_json::Value,
    pub done: Vec<String>,
    pub nodes: u64,
    pub state: serde_json::Value,
}

fn err(path: &Path, message: impl Into<String>) -> SearchError {
    SearchError::Checkpoint { path: path.to_path_buf(), message: message.into() }
}

impl Checkpoint {
    /// Reads `path` if it exists and belongs to the search described by
    /// `kind` and `key`.
    pub fn load(path: &Path, kind: &str, key: &serde_json::Value) -> Result<Option<Checkpoint>, SearchError> {
        let text = match fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(err(path, e.to_string())),
        };
        let ckpt: Checkpoint = serde_json::from_str(&text).map_err(|e| err(path, e.to_string()))?;
        if ckpt.version != CHECKPOINT_VERSION {
            return Err(err(path, format!("unsupported version {}", ckpt.version)));
        }
        if ckpt.kind != kind || &ckpt.key != key {
            return Err(err(path, format!("belongs to a different search ({} {})", ckpt.kind, ckpt.key)));
        }
        Ok(Some(ckpt))
    }

    /// Writes through a temporary file and a rename, so an interrupted write
    /// leaves the previous checkpoint intact.
    pub fn store(&self, path: &Path) -> Result<(), SearchError> {
        let tmp = path.with_extension("tmp");
        let json = serde_json::to_string_pretty(self).map_err(|e| err(path, e.to_string()))?;
        let mut file = fs::File::create(&tmp).map_err(|e| err(&tmp, e.to_string()))?;
        file.write_all(json.as_bytes()).and_then(|_| file.sync_all()).map_err(|e| err(&tmp, e.to_string()))?;
        fs::rename(&tmp, path).map_err(|e| err(path, e.to_string()))
    }
}

pub(crate) fn prefix_label(prefix: &[u8]) -> String {
    prefix.iter().map(|&c| (b'0' + c) as char).collect()
}
