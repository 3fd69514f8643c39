//! The live backend against a local one-thread HTTP server.

use std::io::{BufRead, BufReader, Read, Write};
use std::net::TcpListener;
use std::sync::mpsc;
use std::thread;

use gameforge_llm::{
    load_session_file, ChatBackend, ChatMessage, LiveBackend, LiveConfig, LlmError, SamplingParams, Session,
};
use serde_json::{json, Value};

struct Captured {
    authorization: Option<String>,
    path: String,
    body: Value,
}

/// Serves one scripted `(status, body)` per connection, then stops.
fn serve(replies: Vec<(u16, String)>) -> (String, mpsc::Receiver<Captured>) {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let base = format!("http://{}", listener.local_addr().unwrap());
    let (tx, rx) = mpsc::channel();
    thread::spawn(move || {
        for (status, reply) in replies {
            let (stream, _) = listener.accept().unwrap();
            let mut reader = BufReader::new(stream.try_clone().unwrap());
            let mut request_line = String::new();
            reader.read_line(&mut request_line).unwrap();
            let path = request_line.split_whitespace().nth(1).unwrap_or_default().to_string();
            let (mut length, mut authorization) = (0usize, None);
            loop {
                let mut line = String::new();
                reader.read_line(&mut line).unwrap();
                let line = line.trim_end();
                if line.is_empty() {
                    break;
                }
                let (name, value) = line.split_once(':').unwrap();
                match name.to_ascii_lowercase().as_str() {
                    "content-length" => length = value.trim().parse().unwrap(),
                    "authorization" => authorization = Some(value.trim().to_string()),
                    _ => {}
                }
            }
            let mut body = vec![0; length];
            reader.read_exact(&mut body).unwrap();
            let body = serde_json::from_slice(&body).unwrap_or(Value::Null);
            tx.send(Captured { authorization, path, body }).unwrap();
            let mut stream = stream;
            write!(
                stream,
                "HTTP/1.1 {status} X\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{reply}",
                reply.len()
            )
            .unwrap();
        }
    });
    (base, rx)
}

fn completion(text: &str) -> String {
    json!({"id": "x", "choices": [{"index": 0, "message": {"role": "assistant", "content": text}, "finish_reason": "stop"}]})
        .to_string()
}

fn config(base: &str) -> LiveConfig {
    LiveConfig { base_url: format!("{base}/v1"), model: "test-model".into(), backoff_ms: 1, ..LiveConfig::default() }
}

fn key() -> Option<String> {
    Some("test-key".into())
}

#[test]
fn request_carries_sampling_values_and_exact_messages() {
    let (base, rx) = serve(vec![(200, completion("pong"))]);
    let backend = LiveBackend::with_key(config(&base), key());
    let messages = vec![ChatMessage::system("You write GameScript."), ChatMessage::user("ping\n  with  spaces")];
    let out = backend.complete(&messages, &SamplingParams::new("test-model", 0.0, 1.0)).unwrap();
    assert_eq!(out, "pong");
    let seen = rx.recv().unwrap();
    assert_eq!(seen.path, "/v1/chat/completions");
    assert_eq!(seen.authorization.as_deref(), Some("Bearer test-key"));
    assert_eq!(seen.body["temperature"], json!(0.0));
    assert_eq!(seen.body["top_p"], json!(1.0));
    assert_eq!(seen.body["model"], json!("test-model"));
    let sent: Vec<ChatMessage> = serde_json::from_value(seen.body["messages"].clone()).unwrap();
    assert_eq!(sent, messages);
}

#[test]
fn transient_failures_are_retried() {
    let (base, rx) = serve(vec![(500, "oops".into()), (429, "slow down".into()), (200, completion("ok"))]);
    let backend = LiveBackend::with_key(config(&base), key());
    let out = backend.complete(&[ChatMessage::user("q")], &SamplingParams::new("m", 0.0, 1.0)).unwrap();
    assert_eq!(out, "ok");
    assert_eq!(rx.try_iter().count(), 3);
}

#[test]
fn retries_are_bounded() {
    let (base, rx) = serve(vec![(503, "down".into()); 3]);
    let cfg = LiveConfig { transport_retries: 2, ..config(&base) };
    let err = LiveBackend::with_key(cfg, key()).complete(&[ChatMessage::user("q")], &SamplingParams::new("m", 0.0, 1.0));
    assert!(matches!(err, Err(LlmError::Http { status: 503, .. })), "{err:?}");
    assert_eq!(rx.try_iter().count(), 3);
}

#[test]
fn rejected_key_is_not_retried() {
    let (base, rx) = serve(vec![(401, "bad key".into())]);
    let err = LiveBackend::with_key(config(&base), key()).complete(&[ChatMessage::user("q")], &SamplingParams::new("m", 0.0, 1.0));
    assert!(matches!(err, Err(LlmError::Auth(_))), "{err:?}");
    assert_eq!(rx.try_iter().count(), 1);
}

#[test]
fn missing_key_fails_before_any_connection() {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    listener.set_nonblocking(true).unwrap();
    let base = format!("http://{}", listener.local_addr().unwrap());
    let err = LiveBackend::with_key(config(&base), None).complete(&[ChatMessage::user("q")], &SamplingParams::new("m", 0.0, 1.0));
    assert!(matches!(err, Err(LlmError::Auth(_))), "{err:?}");
    assert_eq!(listener.accept().unwrap_err().kind(), std::io::ErrorKind::WouldBlock);
}

#[test]
fn record_then_replay_is_identical() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("session.json");
    let (base, _rx) = serve(vec![(200, completion("first")), (200, completion("second"))]);
    let params = SamplingParams::new("test-model", 0.0, 1.0);
    let turns = [vec![ChatMessage::user("a")], vec![ChatMessage::user("a"), ChatMessage::assistant("first"), ChatMessage::user("b")]];

    let recorder = Session::recording(Box::new(LiveBackend::with_key(config(&base), key())), file.clone());
    let recorded: Vec<String> = turns.iter().map(|m| recorder.complete(m, &params).unwrap()).collect();
    recorder.close().unwrap();
    assert_eq!(recorded, ["first", "second"]);
    assert_eq!(load_session_file(&file).unwrap().len(), 2);

    let replay = |strict| {
        let s = Session::replay_file(&file, strict).unwrap();
        let out: Vec<String> = turns.iter().map(|m| s.complete(m, &params).unwrap()).collect();
        (out, s.close().unwrap())
    };
    let (first, t1) = replay(true);
    let (second, t2) = replay(false);
    assert_eq!(first, recorded);
    assert_eq!(second, recorded);
    assert_eq!(t1, t2);
}
