use crate::cst::NodeKind;
use crate::zipper::Zipper;

use super::roles::role_of_focus;
use super::scope::binders_for;
use super::{EditError, OpResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JumpTarget {
    /// Where the focused variable is bound.
    Binding,
    /// The first parameter of the enclosing function.
    Parameter,
}

/// Moves the cursor to `target`. The buffer is not changed.
pub fn jump_to(z: &Zipper, target: JumpTarget) -> Result<OpResult, EditError> {
    let cursor = match target {
        JumpTarget::Binding => binding_of(z)?,
        JumpTarget::Parameter => first_parameter(z)?,
    };
    let tree = z.unzip();
    Ok(OpResult {
        transaction: None,
        cursor_after: cursor,
        zipper_after: Zipper::at(&tree, cursor)?,
        selection: None,
    })
}

fn binding_of(z: &Zipper) -> Result<usize, EditError> {
    let focus = z.focus().ok_or(EditError::AtTop)?;
    let name = match (&focus.item.kind, role_of_focus(focus)) {
        (NodeKind::Ident(name), Some(role)) if role.is_expression() => name.clone(),
        _ => return Err(EditError::NoBindingFound),
    };
    // Innermost scope first; within one scope the latest binder wins.
    let mut level = z.clone();
    while level.focus().is_some_and(|f| f.parent_focus().is_some()) {
        let index = level.focus().unwrap().index();
        level = level.go_up()?;
        if let Some(binder) = binders_for(level.item().unwrap(), index)
            .into_iter()
            .rev()
            .find(|b| b.ident_name() == Some(name.as_str()))
        {
            return Ok(binder.region.start);
        }
    }
    Err(EditError::NoBindingFound)
}

fn first_parameter(z: &Zipper) -> Result<usize, EditError> {
    let mut level = z.clone();
    loop {
        let node = level.item().ok_or(EditError::AtTop)?;
        let takes_params = matches!(node.kind, NodeKind::LetBinding { .. } | NodeKind::FunExpr);
        if takes_params {
            if let Some(param) = node.children.iter().find(|c| c.kind == NodeKind::Parameter) {
                return Ok(param.region.start);
            }
        }
        level = level.go_up().map_err(|_| EditError::NoBindingFound)?;
    }
}
