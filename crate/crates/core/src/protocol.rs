//! Newline-delimited JSON messages for driving a [`SessionService`].
//!
//! ```text
//! {"id":1,"buffer":"b1","op":"transpose","cursor":36}
//! {"id":1,"ok":true,"edits":[{"start":36,"end":46,"text":"..."},...],"cursor":67,"version":2}
//! ```

use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::ops::{Direction, JumpTarget};
use crate::session::{Command, Operation, Response, SessionError, SessionService};
use crate::text::{Edit, TextRegion};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Request {
    pub id: i64,
    pub buffer: String,
    pub op: String,
    #[serde(default)]
    pub cursor: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u64>,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub args: Map<String, Value>,
}

impl Request {
    pub fn new(id: i64, buffer: impl Into<String>, op: impl Into<String>, cursor: usize) -> Self {
        Request {
            id,
            buffer: buffer.into(),
            op: op.into(),
            cursor,
            version: None,
            args: Map::new(),
        }
    }

    pub fn arg(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.args.insert(key.to_string(), value.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireEdit {
    pub start: usize,
    pub end: usize,
    pub text: String,
}

impl From<&Edit> for WireEdit {
    fn from(edit: &Edit) -> Self {
        WireEdit {
            start: edit.range.start,
            end: edit.range.end,
            text: edit.replacement.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Success {
    pub id: i64,
    pub ok: bool,
    pub edits: Vec<WireEdit>,
    pub cursor: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selection: Option<[usize; 2]>,
    pub version: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    /// `None` only when the request itself could not be read.
    pub id: Option<i64>,
    pub ok: bool,
    pub code: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub position: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Reply {
    Success(Success),
    Failure(Failure),
}

impl Reply {
    pub fn is_ok(&self) -> bool {
        matches!(self, Reply::Success(_))
    }

    pub fn success(id: i64, response: &Response) -> Reply {
        Reply::Success(Success {
            id,
            ok: true,
            edits: response.edits.iter().map(WireEdit::from).collect(),
            cursor: response.cursor,
            selection: response.selection.map(|r| [r.start, r.end]),
            version: response.version,
        })
    }

    pub fn failure(id: Option<i64>, err: &SessionError) -> Reply {
        Reply::Failure(Failure {
            id,
            ok: false,
            code: err.code().to_string(),
            message: err.to_string(),
            position: err.position(),
        })
    }

    fn bad_request(id: Option<i64>, message: String) -> Reply {
        Reply::Failure(Failure {
            id,
            ok: false,
            code: "BAD_REQUEST".to_string(),
            message,
            position: None,
        })
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("replies always serialize")
    }
}

fn string_arg<'a>(req: &'a Request, key: &str) -> Result<&'a str, String> {
    match req.args.get(key) {
        Some(Value::String(s)) => Ok(s),
        Some(_) => Err(format!("argument `{key}` must be a string")),
        None => Err(format!("`{}` needs argument `{key}`", req.op)),
    }
}

fn offset_arg(req: &Request, key: &str) -> Result<usize, String> {
    req.args
        .get(key)
        .and_then(Value::as_u64)
        .map(|n| n as usize)
        .ok_or_else(|| format!("`{}` needs a non-negative integer `{key}`", req.op))
}

/// The engine command a request names, for every op except `open`/`edit`.
pub fn operation(req: &Request) -> Result<Operation, String> {
    Ok(match req.op.as_str() {
        "up" => Operation::Up,
        "down" => Operation::Down,
        "next" => Operation::Next,
        "prev" => Operation::Prev,
        "transpose" => Operation::Transpose,
        "delete" => Operation::Delete,
        "select" => Operation::Select,
        "move" => match req.args.get("direction") {
            None => Operation::Move(Direction::Forward),
            Some(_) => match string_arg(req, "direction")? {
                "forward" => Operation::Move(Direction::Forward),
                "backward" => Operation::Move(Direction::Backward),
                other => return Err(format!("unknown direction `{other}`")),
            },
        },
        "extract" => Operation::Extract {
            name: string_arg(req, "name")?.to_string(),
        },
        "jump" => match req.args.get("target") {
            None => Operation::Jump(JumpTarget::Binding),
            Some(_) => match string_arg(req, "target")? {
                "binding" => Operation::Jump(JumpTarget::Binding),
                "parameter" => Operation::Jump(JumpTarget::Parameter),
                other => return Err(format!("unknown jump target `{other}`")),
            },
        },
        other => return Err(format!("unknown op `{other}`")),
    })
}

/// Serves one request.
pub fn handle_request(service: &SessionService, req: &Request) -> Reply {
    let id = req.id;
    match req.op.as_str() {
        "open" => {
            let text = match string_arg(req, "text") {
                Ok(text) => text,
                Err(message) => return Reply::bad_request(Some(id), message),
            };
            match service.open_buffer(&req.buffer, text) {
                Ok(version) => Reply::success(
                    id,
                    &Response {
                        edits: Vec::new(),
                        cursor: req.cursor,
                        selection: None,
                        version,
                    },
                ),
                Err(err) => Reply::failure(Some(id), &err),
            }
        }
        "edit" => {
            let parsed = offset_arg(req, "start").and_then(|start| {
                let end = offset_arg(req, "end")?;
                let text = string_arg(req, "text")?;
                if end < start {
                    return Err(format!("edit range {start}..{end} is inverted"));
                }
                Ok(Edit::new(TextRegion::new(start, end), text))
            });
            let edit = match parsed {
                Ok(edit) => edit,
                Err(message) => return Reply::bad_request(Some(id), message),
            };
            let outcome = service.notify_external_edit_at(&req.buffer, edit.clone(), req.version);
            match outcome {
                Ok(version) => Reply::success(
                    id,
                    &Response {
                        edits: vec![edit],
                        cursor: req.cursor,
                        selection: None,
                        version,
                    },
                ),
                Err(err) => Reply::failure(Some(id), &err),
            }
        }
        _ => {
            let op = match operation(req) {
                Ok(op) => op,
                Err(message) => return Reply::bad_request(Some(id), message),
            };
            let command = Command {
                op,
                cursor: req.cursor,
                version: req.version,
            };
            match service.dispatch(&req.buffer, &command) {
                Ok(response) => Reply::success(id, &response),
                Err(err) => Reply::failure(Some(id), &err),
            }
        }
    }
}

/// Serves one line of input, returning the reply line without a newline.
pub fn handle_line(service: &SessionService, line: &str) -> String {
    let reply = match serde_json::from_str::<Request>(line) {
        Ok(req) => handle_request(service, &req),
        Err(err) => {
            let id = serde_json::from_str::<Value>(line)
                .ok()
                .and_then(|v| v.get("id").and_then(Value::as_i64));
            Reply::bad_request(id, format!("malformed request: {err}"))
        }
    };
    reply.to_line()
}

/// Answers each non-blank input line with one reply line until end of input.
pub fn serve(
    service: &SessionService,
    input: impl BufRead,
    mut output: impl Write,
) -> io::Result<()> {
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        writeln!(output, "{}", handle_line(service, &line))?;
        output.flush()?;
    }
    Ok(())
}
