//! Minimal chat-completions server on a local port, for transport tests.

use std::io::{BufRead, BufReader, Read, Write};
use std::net::{TcpListener, TcpStream};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::thread;

use swarm_llm::llm::{ChatRequest, OracleBackend};

/// Status and body returned for one request body.
pub type Script = dyn Fn(&str) -> (u16, String) + Send + Sync;

pub struct StubEndpoint {
    /// Base URL, `http://127.0.0.1:PORT/v1`.
    pub base_url: String,
    hits: Arc<AtomicUsize>,
}

impl StubEndpoint {
    pub fn start(script: Arc<Script>) -> Self {
        let listener = TcpListener::bind("127.0.0.1:0").expect("bind");
        let port = listener.local_addr().unwrap().port();
        let hits = Arc::new(AtomicUsize::new(0));
        let counter = Arc::clone(&hits);
        thread::spawn(move || {
            for stream in listener.incoming().flatten() {
                let script = Arc::clone(&script);
                let counter = Arc::clone(&counter);
                thread::spawn(move || {
                    if serve(stream, &*script).is_ok() {
                        counter.fetch_add(1, Ordering::SeqCst);
                    }
                });
            }
        });
        Self { base_url: format!("http://127.0.0.1:{port}/v1"), hits }
    }

    /// Answers every request with HTTP 500.
    pub fn failing() -> Self {
        Self::start(Arc::new(|_: &str| (500, r#"{"error": {"message": "scripted failure"}}"#.to_string())))
    }

    /// Answers like the scripted oracle, wrapped in a chat-completions envelope.
    pub fn oracle() -> Self {
        Self::start(Arc::new(|body: &str| {
            let request: ChatRequest = match serde_json::from_str(body) {
                Ok(r) => r,
                Err(e) => return (400, format!(r#"{{"error": "{e}"}}"#)),
            };
            match OracleBackend.answer(&request) {
                Ok(text) => (200, envelope(&text)),
                Err(e) => (422, format!(r#"{{"error": "{e}"}}"#)),
            }
        }))
    }

    pub fn hits(&self) -> usize {
        self.hits.load(Ordering::SeqCst)
    }
}

pub fn envelope(content: &str) -> String {
    serde_json::json!({
        "id": "stub",
        "object": "chat.completion",
        "choices": [{"index": 0, "message": {"role": "assistant", "content": content}, "finish_reason": "stop"}]
    })
    .to_string()
}

fn serve(stream: TcpStream, script: &Script) -> std::io::Result<()> {
    let mut reader = BufReader::new(stream.try_clone()?);
    let mut content_length = 0usize;
    let mut line = String::new();
    loop {
        line.clear();
        if reader.read_line(&mut line)? == 0 {
            return Err(std::io::ErrorKind::UnexpectedEof.into());
        }
        let trimmed = line.trim_end();
        if trimmed.is_empty() {
            break;
        }
        if let Some((name, value)) = trimmed.split_once(':') {
            if name.eq_ignore_ascii_case("content-length") {
                content_length = value.trim().parse().unwrap_or(0);
            }
        }
    }
    let mut body = vec![0u8; content_length];
    reader.read_exact(&mut body)?;
    let (status, reply) = script(&String::from_utf8_lossy(&body));
    let mut stream = stream;
    write!(
        stream,
        "HTTP/1.1 {status} Stub\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{reply}",
        reply.len()
    )?;
    stream.flush()
}
