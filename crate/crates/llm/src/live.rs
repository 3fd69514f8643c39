use std::thread;
use std::time::Duration;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::{ChatBackend, ChatMessage, LlmError, SamplingParams};

/// The only place an API key is read from.
pub const API_KEY_VAR: &str = "GAMEFORGE_API_KEY";

/// Endpoint and sampling configuration. There is deliberately no key field:
/// unknown keys such as `api_key` are rejected when parsing a config file.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LiveConfig {
    /// Base URL of an OpenAI-compatible API; `/chat/completions` is appended.
    pub base_url: String,
    pub model: String,
    pub temperature: f64,
    pub top_p: f64,
    pub timeout_secs: u64,
    /// Extra attempts after a transport failure, 429 or 5xx response.
    pub transport_retries: u32,
    /// First backoff delay; doubles on each retry.
    pub backoff_ms: u64,
}

impl Default for LiveConfig {
    fn default() -> Self {
        LiveConfig {
            base_url: "https://api.openai.com/v1".into(),
            model: "gpt-4o".into(),
            temperature: 0.0,
            top_p: 1.0,
            timeout_secs: 60,
            transport_retries: 3,
            backoff_ms: 500,
        }
    }
}

impl LiveConfig {
    pub fn sampling_params(&self) -> SamplingParams {
        SamplingParams::new(self.model.clone(), self.temperature, self.top_p)
    }
}

pub struct LiveBackend {
    config: LiveConfig,
    api_key: Option<String>,
    agent: ureq::Agent,
}

impl LiveBackend {
    /// Reads the key from [`API_KEY_VAR`]. A missing key is reported on the
    /// first call, before anything is sent.
    pub fn from_env(config: LiveConfig) -> Self {
        let key = std::env::var(API_KEY_VAR).ok().filter(|k| !k.trim().is_empty());
        Self::with_key(config, key)
    }

    pub fn with_key(config: LiveConfig, api_key: Option<String>) -> Self {
        let agent = ureq::AgentBuilder::new().timeout(Duration::from_secs(config.timeout_secs)).build();
        LiveBackend { config, api_key, agent }
    }

    pub fn has_key(&self) -> bool {
        self.api_key.is_some()
    }

    fn endpoint(&self) -> String {
        format!("{}/chat/completions", self.config.base_url.trim_end_matches('/'))
    }

    fn send_once(&self, key: &str, body: &str) -> Result<String, Attempt> {
        let result = self
            .agent
            .post(&self.endpoint())
            .set("Authorization", &format!("Bearer {key}"))
            .set("Content-Type", "application/json")
            .send_string(body);
        match result {
            Ok(resp) => resp.into_string().map_err(|e| Attempt::Retry(LlmError::Transport(e.to_string()))),
            Err(ureq::Error::Status(status, resp)) => {
                let body = resp.into_string().unwrap_or_default();
                match status {
                    401 | 403 => Err(Attempt::Fatal(LlmError::Auth(format!("HTTP {status}: {body}")))),
                    429 | 500..=599 => Err(Attempt::Retry(LlmError::Http { status, body })),
                    _ => Err(Attempt::Fatal(LlmError::Http { status, body })),
                }
            }
            Err(ureq::Error::Transport(t)) => Err(Attempt::Retry(LlmError::Transport(t.to_string()))),
        }
    }
}

enum Attempt {
    Retry(LlmError),
    Fatal(LlmError),
}

/// The request body. Messages are passed through untouched.
pub(crate) fn request_body(messages: &[ChatMessage], params: &SamplingParams) -> Value {
    json!({
        "model": params.model,
        "messages": messages,
        "temperature": params.temperature,
        "top_p": params.top_p,
    })
}

fn response_text(raw: &str) -> Result<String, LlmError> {
    let v: Value = serde_json::from_str(raw).map_err(|e| LlmError::MalformedResponse(e.to_string()))?;
    v.pointer("/choices/0/message/content")
        .and_then(Value::as_str)
        .map(str::to_string)
        .ok_or_else(|| LlmError::MalformedResponse("no choices[0].message.content in response".into()))
}

impl ChatBackend for LiveBackend {
    fn complete(&self, messages: &[ChatMessage], params: &SamplingParams) -> Result<String, LlmError> {
        let key = self
            .api_key
            .as_deref()
            .ok_or_else(|| LlmError::Auth(format!("environment variable {API_KEY_VAR} is not set")))?;
        params.validate()?;
        let body = request_body(messages, params).to_string();
        let mut delay = Duration::from_millis(self.config.backoff_ms);
        let mut attempt = 0;
        loop {
            match self.send_once(key, &body) {
                Ok(raw) => return response_text(&raw),
                Err(Attempt::Fatal(e)) => return Err(e),
                Err(Attempt::Retry(e)) if attempt >= self.config.transport_retries => return Err(e),
                Err(Attempt::Retry(_)) => {
                    attempt += 1;
                    thread::sleep(delay);
                    delay *= 2;
                }
            }
        }
    }

    fn tag(&self) -> &'static str {
        "live"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn body_carries_sampling_values_and_messages_verbatim() {
        let msgs = vec![ChatMessage::system("s\n  x"), ChatMessage::user("u")];
        let body = request_body(&msgs, &SamplingParams::new("m", 0.0, 1.0));
        assert_eq!(body["temperature"], json!(0.0));
        assert_eq!(body["top_p"], json!(1.0));
        assert_eq!(body["model"], json!("m"));
        let back: Vec<ChatMessage> = serde_json::from_value(body["messages"].clone()).unwrap();
        assert_eq!(back, msgs);
    }

    #[test]
    fn extracts_first_choice() {
        let raw = r#"{"choices":[{"index":0,"message":{"role":"assistant","content":"hello"}}]}"#;
        assert_eq!(response_text(raw).unwrap(), "hello");
        assert!(matches!(response_text("{}"), Err(LlmError::MalformedResponse(_))));
        assert!(matches!(response_text("nope"), Err(LlmError::MalformedResponse(_))));
    }

    #[test]
    fn config_rejects_key_fields() {
        let err = serde_json::from_str::<LiveConfig>(r#"{"api_key": "sk-123"}"#).unwrap_err();
        assert!(err.to_string().contains("unknown field"), "{err}");
    }
}
