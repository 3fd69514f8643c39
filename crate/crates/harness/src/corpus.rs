use std::fs;
use std::path::{Path, PathBuf};

use gameforge_core::{parse_efg, Game, Player};
use serde::{Deserialize, Serialize};

/// Expected features of a corpus game: the six dataset columns plus an
/// optional perfect-recall flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ExpectedFeatures {
    pub perfect_info: bool,
    pub zero_sum: bool,
    pub max_depth: usize,
    pub n_players: usize,
    pub n_decision_nodes: usize,
    pub n_leaves: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perfect_recall: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub id: String,
    pub description: String,
    pub expected: ExpectedFeatures,
    pub reference_efg: Option<PathBuf>,
}

impl CorpusEntry {
    pub fn reference(&self) -> Option<Result<Game, CorpusError>> {
        self.reference_efg.as_ref().map(|p| load_reference(&self.id, p))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("{id}: description.txt is missing or empty")]
    MissingDescription { id: String },
    #[error("{id}: expected.json: {message}")]
    MalformedMetadata { id: String, message: String },
    #[error("{id}: reference.efg: {message}")]
    BadReference { id: String, message: String },
    #[error("cannot read corpus directory {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

fn load_reference(id: &str, path: &Path) -> Result<Game, CorpusError> {
    let bad = |message: String| CorpusError::BadReference { id: id.into(), message };
    let text = fs::read_to_string(path).map_err(|e| bad(e.to_string()))?;
    parse_efg(&text).map_err(|e| bad(e.to_string()))
}

/// Loads every `<dir>/<id>/` folder, sorted by id. Each needs a non-empty
/// `description.txt` and an `expected.json`; `reference.efg` is optional but
/// must parse, and a game expected to have perfect information must not
/// group nodes in its reference.
pub fn load_corpus(dir: &Path) -> Result<Vec<CorpusEntry>, CorpusError> {
    let io = |source| CorpusError::Io { path: dir.to_path_buf(), source };
    let mut folders: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .map_err(io)?;
    folders.retain(|p| p.is_dir());
    folders.sort();

    let mut out = Vec::with_capacity(folders.len());
    for folder in folders {
        let id = folder.file_name().unwrap().to_string_lossy().into_owned();
        let description = fs::read_to_string(folder.join("description.txt")).unwrap_or_default();
        if description.trim().is_empty() {
            return Err(CorpusError::MissingDescription { id });
        }
        let meta = fs::read_to_string(folder.join("expected.json"))
            .map_err(|e| CorpusError::MalformedMetadata { id: id.clone(), message: e.to_string() })?;
        let expected: ExpectedFeatures = serde_json::from_str(&meta)
            .map_err(|e| CorpusError::MalformedMetadata { id: id.clone(), message: e.to_string() })?;
        let reference = folder.join("reference.efg");
        let reference_efg = reference.exists().then_some(reference);
        let entry = CorpusEntry { id, description: description.trim_end().to_string(), expected, reference_efg };
        if let Some(game) = entry.reference() {
            let game = game?;
            if expected.perfect_info && has_grouped_nodes(&game) {
                return Err(CorpusError::MalformedMetadata {
                    id: entry.id,
                    message: "perfectInfo is true but the reference groups decision nodes".into(),
                });
            }
        }
        out.push(entry);
    }
    Ok(out)
}

fn has_grouped_nodes(game: &Game) -> bool {
    game.infosets().any(|(_, s)| s.owner() != Player::Chance && s.members().len() > 1)
}
