//! Structural operations on a focused zipper.
//!
//! Every operation is a pure function of the zipper and the buffer text it
//! was built from. Text changes come back as an [`EditTransaction`] in
//! pre-edit coordinates together with a zipper whose regions already match
//! the edited text.

mod delete;
mod extract;
mod jump;
pub(crate) mod roles;
mod scope;
mod transpose;

use thiserror::Error;

use crate::text::{EditTransaction, TextRegion};
use crate::zipper::{Zipper, ZipperError};

pub use delete::structural_delete;
pub use extract::extract_expression;
pub use jump::{jump_to, JumpTarget};
pub use transpose::{structural_move, structural_transpose, Direction};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpResult {
    pub transaction: Option<EditTransaction>,
    pub cursor_after: usize,
    pub zipper_after: Zipper,
    pub selection: Option<TextRegion>,
}

impl OpResult {
    fn navigation(zipper_after: Zipper) -> OpResult {
        let cursor_after = zipper_after.bounds().map_or(0, |b| b.start);
        OpResult {
            transaction: None,
            cursor_after,
            zipper_after,
            selection: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EditError {
    #[error("already at the top of the tree")]
    AtTop,
    #[error("focused node has no children")]
    NoChild,
    #[error("no sibling in that direction")]
    NoSibling,
    #[error("no syntax node at offset {0}")]
    NoNodeAtCursor(usize),
    #[error("cannot swap: {0}")]
    KindMismatch(String),
    #[error("focused node is not an expression")]
    NotAnExpression,
    #[error("`{0}` is not a valid identifier")]
    InvalidName(String),
    #[error("`{0}` is already used in the enclosing binding")]
    NameNotFresh(String),
    #[error("expression is not inside a let binding")]
    NoEnclosingBinding,
    #[error("extracting would move `{0}` out of the scope that binds it")]
    WouldCapture(String),
    #[error("no binding found")]
    NoBindingFound,
}

impl From<ZipperError> for EditError {
    fn from(err: ZipperError) -> Self {
        match err {
            ZipperError::AtTop => EditError::AtTop,
            ZipperError::NoChild => EditError::NoChild,
            ZipperError::NoSibling => EditError::NoSibling,
            ZipperError::NoNodeAtCursor(at) => EditError::NoNodeAtCursor(at),
        }
    }
}

/// Moves the focus to the enclosing node; the cursor goes to its start.
pub fn structural_up(z: &Zipper) -> Result<OpResult, EditError> {
    Ok(OpResult::navigation(z.go_up()?))
}

pub fn structural_down(z: &Zipper) -> Result<OpResult, EditError> {
    Ok(OpResult::navigation(z.go_down()?))
}

pub fn structural_next(z: &Zipper) -> Result<OpResult, EditError> {
    Ok(OpResult::navigation(z.go_next()?))
}

pub fn structural_prev(z: &Zipper) -> Result<OpResult, EditError> {
    Ok(OpResult::navigation(z.go_prev()?))
}

/// Selects the focused node's region.
pub fn structural_select(z: &Zipper) -> Result<OpResult, EditError> {
    let bounds = z.bounds().ok_or(EditError::AtTop)?;
    Ok(OpResult {
        transaction: None,
        cursor_after: bounds.start,
        zipper_after: z.clone(),
        selection: Some(bounds),
    })
}
