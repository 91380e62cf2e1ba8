//! Buffer registry, zipper caching and command dispatch.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, MutexGuard};

use thiserror::Error;

use crate::cst::{parse, CstNode, ParseDiagnostic};
use crate::ops::{self, Direction, EditError, JumpTarget, OpResult};
use crate::text::{apply_transaction, Buffer, Edit, EditTransaction, TextError, TextRegion};
use crate::zipper::Zipper;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Operation {
    Up,
    Down,
    Next,
    Prev,
    Transpose,
    Move(Direction),
    Delete,
    Select,
    Extract { name: String },
    Jump(JumpTarget),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Command {
    pub op: Operation,
    pub cursor: usize,
    /// When present, the command is rejected unless it matches the buffer.
    pub version: Option<u64>,
}

impl Command {
    pub fn new(op: Operation, cursor: usize) -> Self {
        Command {
            op,
            cursor,
            version: None,
        }
    }

    pub fn at_version(mut self, version: u64) -> Self {
        self.version = Some(version);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Response {
    /// In ascending order, pre-edit coordinates.
    pub edits: Vec<Edit>,
    pub cursor: usize,
    pub selection: Option<TextRegion>,
    pub version: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SessionError {
    #[error("no buffer named `{0}`")]
    UnknownBuffer(String),
    #[error("buffer `{0}` is already open")]
    DuplicateBuffer(String),
    #[error("command is for version {got} but the buffer is at version {current}")]
    StaleVersion { current: u64, got: u64 },
    #[error("parse error: {0}")]
    Parse(ParseDiagnostic),
    #[error(transparent)]
    Edit(#[from] EditError),
    #[error(transparent)]
    Text(#[from] TextError),
}

impl SessionError {
    /// Machine-readable error code used on the wire.
    pub fn code(&self) -> &'static str {
        match self {
            SessionError::UnknownBuffer(_) => "UNKNOWN_BUFFER",
            SessionError::DuplicateBuffer(_) => "DUPLICATE_BUFFER",
            SessionError::StaleVersion { .. } => "STALE_VERSION",
            SessionError::Parse(_) => "PARSE_ERROR",
            SessionError::Text(TextError::OverlappingEdits { .. }) => "OVERLAPPING_EDITS",
            SessionError::Text(_) => "RANGE_OUT_OF_BOUNDS",
            SessionError::Edit(e) => match e {
                EditError::AtTop => "AT_TOP",
                EditError::NoChild => "NO_CHILD",
                EditError::NoSibling => "NO_SIBLING",
                EditError::NoNodeAtCursor(_) => "NO_NODE_AT_CURSOR",
                EditError::KindMismatch(_) => "KIND_MISMATCH",
                EditError::NotAnExpression => "NOT_AN_EXPRESSION",
                EditError::InvalidName(_) => "INVALID_NAME",
                EditError::NameNotFresh(_) => "NAME_NOT_FRESH",
                EditError::NoEnclosingBinding => "NO_ENCLOSING_BINDING",
                EditError::WouldCapture(_) => "WOULD_CAPTURE",
                EditError::NoBindingFound => "NO_BINDING_FOUND",
            },
        }
    }

    /// Offset the error refers to, if any.
    pub fn position(&self) -> Option<usize> {
        match self {
            SessionError::Parse(d) => Some(d.position),
            SessionError::Edit(EditError::NoNodeAtCursor(at)) => Some(*at),
            SessionError::Text(TextError::CursorOutOfBounds { cursor, .. }) => Some(*cursor),
            _ => None,
        }
    }
}

/// One open buffer and its cached editing state.
#[derive(Debug, Clone)]
pub struct Session {
    buffer: Buffer,
    /// Tree for `buffer.text`; `None` until parsed or after an external edit.
    tree: Option<CstNode>,
    zipper: Option<Zipper>,
    zipper_valid: bool,
    last_cursor: usize,
}

impl Session {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        Session {
            buffer: Buffer::new(id, text),
            tree: None,
            zipper: None,
            zipper_valid: false,
            last_cursor: 0,
        }
    }

    pub fn buffer(&self) -> &Buffer {
        &self.buffer
    }

    pub fn tree(&self) -> Option<&CstNode> {
        self.tree.as_ref()
    }

    pub fn zipper_valid(&self) -> bool {
        self.zipper_valid
    }

    pub fn last_cursor(&self) -> usize {
        self.last_cursor
    }

    fn check_version(&self, version: Option<u64>) -> Result<(), SessionError> {
        match version {
            Some(got) if got != self.buffer.version => Err(SessionError::StaleVersion {
                current: self.buffer.version,
                got,
            }),
            _ => Ok(()),
        }
    }

    fn zipper_at(&mut self, cursor: usize, caching: bool) -> Result<Zipper, SessionError> {
        if caching && self.zipper_valid {
            if let Some(cached) = &self.zipper {
                return Ok(cached.refocus(cursor).map_err(EditError::from)?);
            }
        }
        if self.tree.is_none() {
            let tree = parse(&self.buffer.text).map_err(SessionError::Parse)?;
            self.tree = Some(tree);
        }
        Ok(Zipper::at(self.tree.as_ref().unwrap(), cursor).map_err(EditError::from)?)
    }

    /// Runs `command` against this buffer. With `caching` off the zipper
    /// is rebuilt from the session's tree for every command.
    pub fn dispatch(&mut self, command: &Command, caching: bool) -> Result<Response, SessionError> {
        self.check_version(command.version)?;
        let zipper = self.zipper_at(command.cursor, caching)?;
        let text = self.buffer.text.as_str();
        let result: OpResult = match &command.op {
            Operation::Up => ops::structural_up(&zipper),
            Operation::Down => ops::structural_down(&zipper),
            Operation::Next => ops::structural_next(&zipper),
            Operation::Prev => ops::structural_prev(&zipper),
            Operation::Select => ops::structural_select(&zipper),
            Operation::Transpose => ops::structural_transpose(&zipper, text),
            Operation::Move(direction) => ops::structural_move(&zipper, text, *direction),
            Operation::Delete => ops::structural_delete(&zipper, text),
            Operation::Extract { name } => ops::extract_expression(&zipper, text, name),
            Operation::Jump(target) => ops::jump_to(&zipper, *target),
        }?;

        let edits = match &result.transaction {
            Some(transaction) => {
                self.buffer = apply_transaction(&self.buffer, transaction)?;
                sorted(transaction)
            }
            None => Vec::new(),
        };
        self.tree = Some(result.zipper_after.unzip());
        self.zipper = caching.then_some(result.zipper_after);
        self.zipper_valid = caching;
        self.last_cursor = result.cursor_after;
        Ok(Response {
            edits,
            cursor: result.cursor_after,
            selection: result.selection,
            version: self.buffer.version,
        })
    }

    /// Applies an edit made outside the engine and drops all cached state.
    pub fn notify_external_edit(&mut self, edit: Edit) -> Result<u64, SessionError> {
        let transaction = EditTransaction::new(vec![edit], 0);
        self.buffer = apply_transaction(&self.buffer, &transaction)?;
        self.last_cursor = transaction
            .map_region(TextRegion::empty(self.last_cursor))
            .start
            .min(self.buffer.len_chars());
        self.tree = None;
        self.zipper = None;
        self.zipper_valid = false;
        Ok(self.buffer.version)
    }
}

fn sorted(transaction: &EditTransaction) -> Vec<Edit> {
    transaction.sorted_edits().into_iter().cloned().collect()
}

/// Thread-safe registry of sessions. Commands for one buffer run one at a
/// time in arrival order; different buffers proceed independently.
#[derive(Debug)]
pub struct SessionService {
    sessions: Mutex<HashMap<String, Arc<Mutex<Session>>>>,
    caching: bool,
}

impl Default for SessionService {
    fn default() -> Self {
        SessionService::new()
    }
}

fn lock<T>(mutex: &Mutex<T>) -> MutexGuard<'_, T> {
    mutex
        .lock()
        .unwrap_or_else(|poisoned| poisoned.into_inner())
}

impl SessionService {
    pub fn new() -> Self {
        SessionService::with_caching(true)
    }

    /// A service that never reuses a zipper between commands.
    pub fn with_caching(caching: bool) -> Self {
        SessionService {
            sessions: Mutex::new(HashMap::new()),
            caching,
        }
    }

    pub fn caching(&self) -> bool {
        self.caching
    }

    fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>, SessionError> {
        lock(&self.sessions)
            .get(id)
            .cloned()
            .ok_or_else(|| SessionError::UnknownBuffer(id.to_string()))
    }

    /// Registers a buffer; parsing waits for the first command.
    pub fn open_buffer(&self, id: &str, text: &str) -> Result<u64, SessionError> {
        let mut sessions = lock(&self.sessions);
        if sessions.contains_key(id) {
            return Err(SessionError::DuplicateBuffer(id.to_string()));
        }
        let session = Session::new(id, text);
        let version = session.buffer.version;
        sessions.insert(id.to_string(), Arc::new(Mutex::new(session)));
        Ok(version)
    }

    pub fn dispatch(&self, id: &str, command: &Command) -> Result<Response, SessionError> {
        let session = self.session(id)?;
        let mut session = lock(&session);
        session.dispatch(command, self.caching)
    }

    pub fn notify_external_edit(&self, id: &str, edit: Edit) -> Result<u64, SessionError> {
        self.notify_external_edit_at(id, edit, None)
    }

    /// Like [`SessionService::notify_external_edit`], but rejected unless
    /// the buffer is at `version` when one is given.
    pub fn notify_external_edit_at(
        &self,
        id: &str,
        edit: Edit,
        version: Option<u64>,
    ) -> Result<u64, SessionError> {
        let session = self.session(id)?;
        let mut session = lock(&session);
        session.check_version(version)?;
        session.notify_external_edit(edit)
    }

    /// Snapshot of a buffer's current text and version.
    pub fn buffer(&self, id: &str) -> Result<Buffer, SessionError> {
        let session = self.session(id)?;
        let session = lock(&session);
        Ok(session.buffer.clone())
    }

    /// Snapshot of a whole session.
    pub fn snapshot(&self, id: &str) -> Result<Session, SessionError> {
        let session = self.session(id)?;
        let session = lock(&session);
        Ok(session.clone())
    }
}
