//! Chat-completion client for OpenAI-compatible endpoints, with record and
//! replay sessions so that pipelines can run offline and deterministically.
//!
//! ```
//! use gameforge_llm::{ChatMessage, Exchange, SamplingParams, Session};
//!
//! let params = SamplingParams::new("any-model", 0.0, 1.0);
//! let request = vec![ChatMessage::user("Say hi")];
//! let log = vec![Exchange::new(request.clone(), params.clone(), "hi".into())];
//! let session = Session::replay_from(log, false);
//! assert_eq!(session.complete(&request, &params).unwrap(), "hi");
//! assert!(session.complete(&request, &params).is_err());
//! ```

mod live;
mod session;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use live::{LiveBackend, LiveConfig, API_KEY_VAR};
pub use session::{load_session_file, open_session, Session, SessionMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    System,
    User,
    Assistant,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChatMessage {
    pub role: Role,
    pub content: String,
}

impl ChatMessage {
    pub fn system(content: impl Into<String>) -> Self {
        ChatMessage { role: Role::System, content: content.into() }
    }

    pub fn user(content: impl Into<String>) -> Self {
        ChatMessage { role: Role::User, content: content.into() }
    }

    pub fn assistant(content: impl Into<String>) -> Self {
        ChatMessage { role: Role::Assistant, content: content.into() }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::System => "system",
            Role::User => "user",
            Role::Assistant => "assistant",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SamplingParams {
    pub model: String,
    pub temperature: f64,
    pub top_p: f64,
}

impl SamplingParams {
    pub fn new(model: impl Into<String>, temperature: f64, top_p: f64) -> Self {
        SamplingParams { model: model.into(), temperature, top_p }
    }

    pub fn validate(&self) -> Result<(), LlmError> {
        for (name, v) in [("temperature", self.temperature), ("top_p", self.top_p)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(LlmError::Config(format!("{name} must lie in [0, 1], got {v}")));
            }
        }
        if self.model.trim().is_empty() {
            return Err(LlmError::Config("model name is empty".into()));
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LlmError {
    #[error("transport error: {0}")]
    Transport(String),
    #[error("authentication error: {0}")]
    Auth(String),
    #[error("HTTP {status}: {body}")]
    Http { status: u16, body: String },
    #[error("malformed response: {0}")]
    MalformedResponse(String),
    #[error("replay exhausted after {consumed} recorded exchanges")]
    ReplayExhausted { consumed: usize },
    #[error("replay mismatch at exchange {index}: recorded request hash {expected}, actual {actual}")]
    ReplayMismatch { index: usize, expected: String, actual: String },
    #[error("session file not found: {}", .0.display())]
    FileNotFound(PathBuf),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("session file {}: {message}", path.display())]
    SessionFile { path: PathBuf, message: String },
    #[error("a request needs at least one message, and no message may be empty")]
    EmptyRequest,
}

/// The request half of an exchange, as stored in session files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Request {
    pub messages: Vec<ChatMessage>,
    pub params: SamplingParams,
}

impl Request {
    /// Hex SHA-256 of the request's JSON form.
    pub fn sha256(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("request serializes");
        hex::encode(Sha256::digest(bytes))
    }
}

/// One recorded call: the session-file entry format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Exchange {
    pub request: Request,
    pub response: String,
    pub sha256: String,
}

impl Exchange {
    pub fn new(messages: Vec<ChatMessage>, params: SamplingParams, response: String) -> Self {
        let request = Request { messages, params };
        let sha256 = request.sha256();
        Exchange { request, response, sha256 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TranscriptEntry {
    pub messages: Vec<ChatMessage>,
    pub params: SamplingParams,
    pub response: String,
    /// Always 0 for replayed exchanges so that replays compare equal.
    pub latency_ms: u64,
    pub backend: String,
}

/// Append-only log of the calls made through a [`Session`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Transcript {
    entries: Vec<TranscriptEntry>,
}

impl Transcript {
    pub fn entries(&self) -> &[TranscriptEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub(crate) fn push(&mut self, entry: TranscriptEntry) {
        self.entries.push(entry);
    }
}

/// Anything that can answer a chat request.
pub trait ChatBackend: Send + Sync {
    fn complete(&self, messages: &[ChatMessage], params: &SamplingParams) -> Result<String, LlmError>;

    /// Short name recorded in transcripts.
    fn tag(&self) -> &'static str;
}

/// Answers with canned responses in order, then fails with
/// [`LlmError::ReplayExhausted`]. Used to build fixtures and in tests.
pub struct Canned {
    responses: Vec<String>,
    next: std::sync::Mutex<usize>,
}

impl Canned {
    pub fn new<S: Into<String>>(responses: impl IntoIterator<Item = S>) -> Self {
        Canned { responses: responses.into_iter().map(Into::into).collect(), next: std::sync::Mutex::new(0) }
    }
}

impl ChatBackend for Canned {
    fn complete(&self, _messages: &[ChatMessage], _params: &SamplingParams) -> Result<String, LlmError> {
        let mut next = self.next.lock().unwrap();
        let out = self.responses.get(*next).cloned().ok_or(LlmError::ReplayExhausted { consumed: *next })?;
        *next += 1;
        Ok(out)
    }

    fn tag(&self) -> &'static str {
        "canned"
    }
}

impl FromStr for SessionMode {
    type Err = LlmError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once(':') {
            None if s == "live" => Ok(SessionMode::Live),
            Some(("record", p)) if !p.is_empty() => Ok(SessionMode::Record(PathBuf::from(p))),
            Some(("replay", p)) if !p.is_empty() => Ok(SessionMode::Replay(PathBuf::from(p))),
            _ => Err(LlmError::Config(format!(
                "invalid session `{s}`: expected `live`, `record:<file>` or `replay:<file>`"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn session_modes_parse() {
        assert_eq!("live".parse::<SessionMode>().unwrap(), SessionMode::Live);
        assert_eq!("record:a.json".parse::<SessionMode>().unwrap(), SessionMode::Record("a.json".into()));
        assert_eq!("replay:x/y.json".parse::<SessionMode>().unwrap(), SessionMode::Replay("x/y.json".into()));
        for bad in ["", "replay:", "replay", "tape:x", "live:x"] {
            assert!(bad.parse::<SessionMode>().is_err(), "{bad}");
        }
    }

    #[test]
    fn params_bounds() {
        assert!(SamplingParams::new("m", 0.0, 1.0).validate().is_ok());
        assert!(SamplingParams::new("m", 1.5, 1.0).validate().is_err());
        assert!(SamplingParams::new("m", 0.5, -0.1).validate().is_err());
        assert!(SamplingParams::new(" ", 0.5, 0.5).validate().is_err());
    }

    #[test]
    fn request_hash_is_stable_and_sensitive() {
        let p = SamplingParams::new("m", 0.0, 1.0);
        let a = Exchange::new(vec![ChatMessage::user("x")], p.clone(), String::new());
        let b = Exchange::new(vec![ChatMessage::user("x")], p.clone(), "other".into());
        let c = Exchange::new(vec![ChatMessage::user("y")], p, String::new());
        assert_eq!(a.sha256, b.sha256);
        assert_ne!(a.sha256, c.sha256);
        assert_eq!(a.sha256.len(), 64);
    }

    #[test]
    fn canned_runs_out() {
        let c = Canned::new(["a"]);
        let p = SamplingParams::new("m", 0.0, 1.0);
        assert_eq!(c.complete(&[], &p).unwrap(), "a");
        assert!(matches!(c.complete(&[], &p), Err(LlmError::ReplayExhausted { consumed: 1 })));
    }

    #[test]
    fn wire_roles_are_lowercase() {
        let json = serde_json::to_string(&ChatMessage::system("s")).unwrap();
        assert_eq!(json, r#"{"role":"system","content":"s"}"#);
    }
}
