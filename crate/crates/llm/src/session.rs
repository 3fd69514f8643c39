use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use crate::live::{LiveBackend, LiveConfig};
use crate::{ChatBackend, ChatMessage, Exchange, LlmError, Request, SamplingParams, Transcript, TranscriptEntry};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SessionMode {
    Live,
    /// Live calls, each exchange also written to the file.
    Record(PathBuf),
    /// Answers come from the file; the network is never touched.
    Replay(PathBuf),
}

enum Inner {
    Live(Box<dyn ChatBackend>),
    Record { backend: Box<dyn ChatBackend>, path: PathBuf, log: Mutex<Vec<Exchange>> },
    Replay { log: Vec<Exchange>, cursor: Mutex<usize>, strict: bool },
}

/// A chat channel plus the transcript of everything sent through it.
/// Record and replay sessions serialize their calls.
pub struct Session {
    inner: Inner,
    transcript: Mutex<Transcript>,
}

pub fn load_session_file(path: &Path) -> Result<Vec<Exchange>, LlmError> {
    let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => LlmError::FileNotFound(path.to_path_buf()),
        _ => LlmError::SessionFile { path: path.to_path_buf(), message: e.to_string() },
    })?;
    serde_json::from_str(&text).map_err(|e| LlmError::SessionFile { path: path.to_path_buf(), message: e.to_string() })
}

fn save_session_file(path: &Path, log: &[Exchange]) -> Result<(), LlmError> {
    let mut text = serde_json::to_string_pretty(log).expect("exchanges serialize");
    text.push('\n');
    std::fs::write(path, text).map_err(|e| LlmError::SessionFile { path: path.to_path_buf(), message: e.to_string() })
}

/// Opens a session. Live and record sessions read the API key from the
/// environment; replay sessions load the whole file up front.
pub fn open_session(mode: &SessionMode, config: &LiveConfig, strict: bool) -> Result<Session, LlmError> {
    match mode {
        SessionMode::Live => {
            config.sampling_params().validate()?;
            Ok(Session::with_backend(Box::new(LiveBackend::from_env(config.clone()))))
        }
        SessionMode::Record(path) => {
            config.sampling_params().validate()?;
            Ok(Session::recording(Box::new(LiveBackend::from_env(config.clone())), path.clone()))
        }
        SessionMode::Replay(path) => Session::replay_file(path, strict),
    }
}

impl Session {
    pub fn with_backend(backend: Box<dyn ChatBackend>) -> Self {
        Session { inner: Inner::Live(backend), transcript: Mutex::default() }
    }

    pub fn recording(backend: Box<dyn ChatBackend>, path: PathBuf) -> Self {
        Session { inner: Inner::Record { backend, path, log: Mutex::default() }, transcript: Mutex::default() }
    }

    /// Replays `log` in order. With `strict`, each request's hash must equal
    /// the recorded one.
    pub fn replay_from(log: Vec<Exchange>, strict: bool) -> Self {
        Session { inner: Inner::Replay { log, cursor: Mutex::new(0), strict }, transcript: Mutex::default() }
    }

    pub fn replay_file(path: &Path, strict: bool) -> Result<Self, LlmError> {
        Ok(Self::replay_from(load_session_file(path)?, strict))
    }

    pub fn complete(&self, messages: &[ChatMessage], params: &SamplingParams) -> Result<String, LlmError> {
        if messages.is_empty() || messages.iter().any(|m| m.content.is_empty()) {
            return Err(LlmError::EmptyRequest);
        }
        let started = Instant::now();
        let (response, backend) = match &self.inner {
            Inner::Live(backend) => (backend.complete(messages, params)?, backend.tag()),
            Inner::Record { backend, path, log } => {
                let mut log = log.lock().unwrap();
                let response = backend.complete(messages, params)?;
                log.push(Exchange::new(messages.to_vec(), params.clone(), response.clone()));
                save_session_file(path, &log)?;
                (response, "record")
            }
            Inner::Replay { log, cursor, strict } => {
                let mut cursor = cursor.lock().unwrap();
                let Some(recorded) = log.get(*cursor) else {
                    return Err(LlmError::ReplayExhausted { consumed: *cursor });
                };
                if *strict {
                    let actual = Request { messages: messages.to_vec(), params: params.clone() }.sha256();
                    if actual != recorded.sha256 {
                        return Err(LlmError::ReplayMismatch {
                            index: *cursor + 1,
                            expected: recorded.sha256.clone(),
                            actual,
                        });
                    }
                }
                *cursor += 1;
                (recorded.response.clone(), "replay")
            }
        };
        let latency_ms = match self.inner {
            Inner::Replay { .. } => 0,
            _ => started.elapsed().as_millis() as u64,
        };
        self.transcript.lock().unwrap().push(TranscriptEntry {
            messages: messages.to_vec(),
            params: params.clone(),
            response: response.clone(),
            latency_ms,
            backend: backend.to_string(),
        });
        Ok(response)
    }

    pub fn transcript(&self) -> Transcript {
        self.transcript.lock().unwrap().clone()
    }

    /// Exchanges recorded so far (record mode) or still unread (replay).
    pub fn pending(&self) -> usize {
        match &self.inner {
            Inner::Live(_) => 0,
            Inner::Record { log, .. } => log.lock().unwrap().len(),
            Inner::Replay { log, cursor, .. } => log.len() - *cursor.lock().unwrap(),
        }
    }

    /// Flushes a record session to its file. Every exchange is already
    /// written as it happens; this also creates the file for an empty run.
    pub fn close(self) -> Result<Transcript, LlmError> {
        if let Inner::Record { path, log, .. } = &self.inner {
            save_session_file(path, &log.lock().unwrap())?;
        }
        Ok(self.transcript.into_inner().unwrap())
    }
}
