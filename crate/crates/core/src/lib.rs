//! Structural editing for a small ML-family language.
//!
//! Source text is parsed into a concrete syntax tree whose nodes carry exact
//! character regions. A zipper focused on one node supports navigation and
//! structural edits; every edit is reported as an atomic [`EditTransaction`]
//! in pre-edit coordinates, alongside the updated zipper, so that any editor
//! front end can apply it.

pub mod cst;
pub mod fixtures;
pub mod ops;
pub mod protocol;
pub mod session;
pub mod text;
pub mod zipper;

pub use cst::{parse, parse_expression, CstNode, NodeKind, ParseDiagnostic};
pub use ops::{EditError, OpResult};
pub use session::{Command, Operation, Response, SessionService};
pub use text::{apply_transaction, Buffer, Edit, EditTransaction, TextRegion};
pub use zipper::{Zipper, ZipperError};
