//! What each child position means syntactically, and which nodes may be
//! placed there without changing how the text reparses.

use crate::cst::{BinOp, CstNode, NodeKind};
use crate::zipper::Focus;

/// Grammar level of an expression, loosest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Level {
    /// `match`, `fun`, `if`, `let .. in`: extend as far right as possible.
    Open,
    Compare,
    Cons,
    Additive,
    Multiplicative,
    Application,
    Atom,
}

pub(crate) fn op_level(op: BinOp) -> Level {
    match op {
        BinOp::Eq | BinOp::Lt | BinOp::Gt => Level::Compare,
        BinOp::Add | BinOp::Sub => Level::Additive,
        BinOp::Mul | BinOp::Div => Level::Multiplicative,
    }
}

pub(crate) fn level_of(node: &CstNode) -> Level {
    match &node.kind {
        NodeKind::Ident(_) | NodeKind::IntLit(_) | NodeKind::ParenExpr | NodeKind::ListExpr => {
            Level::Atom
        }
        NodeKind::AppExpr => Level::Application,
        NodeKind::BinOpExpr(op) => op_level(*op),
        NodeKind::ConsExpr => Level::Cons,
        _ => Level::Open,
    }
}

fn tighter(level: Level) -> Level {
    match level {
        Level::Open => Level::Compare,
        Level::Compare => Level::Cons,
        Level::Cons => Level::Additive,
        Level::Additive => Level::Multiplicative,
        Level::Multiplicative => Level::Application,
        Level::Application | Level::Atom => Level::Atom,
    }
}

/// Swap classes: siblings may only trade places within one class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SwapClass {
    Item,
    Branch,
    Expression,
    Parameter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Role {
    /// Top-level binding.
    Item,
    /// The name introduced by a `let`.
    Binder,
    Parameter,
    Pattern,
    Branch,
    Expr {
        min_level: Level,
    },
    /// Member of a `Sequence`; its role is no longer known.
    Loose,
}

impl Role {
    pub(crate) fn is_expression(self) -> bool {
        matches!(self, Role::Expr { .. })
    }
}

pub(crate) fn is_expression_kind(kind: &NodeKind) -> bool {
    matches!(
        kind,
        NodeKind::LetBinding { .. }
            | NodeKind::MatchExpr
            | NodeKind::FunExpr
            | NodeKind::IfExpr
            | NodeKind::AppExpr
            | NodeKind::BinOpExpr(_)
            | NodeKind::ConsExpr
            | NodeKind::ListExpr
            | NodeKind::ParenExpr
            | NodeKind::Ident(_)
            | NodeKind::IntLit(_)
    )
}

pub(crate) fn swap_class(role: Role, node: &CstNode) -> Option<SwapClass> {
    match role {
        Role::Item => Some(SwapClass::Item),
        Role::Branch => Some(SwapClass::Branch),
        Role::Parameter => Some(SwapClass::Parameter),
        Role::Expr { .. } => Some(SwapClass::Expression),
        Role::Binder | Role::Pattern => None,
        Role::Loose => match node.kind {
            NodeKind::Branch => Some(SwapClass::Branch),
            NodeKind::Parameter => Some(SwapClass::Parameter),
            ref k if is_expression_kind(k) => Some(SwapClass::Expression),
            _ => None,
        },
    }
}

/// A `let` whose children end in a bound expression and a body.
pub(crate) fn is_let_in(children: &[&CstNode]) -> bool {
    let exprs = children
        .iter()
        .skip(1)
        .filter(|c| c.kind != NodeKind::Parameter)
        .count();
    exprs == 2
}

/// Role of the child at `index` under a parent of kind `parent`, given the
/// full list of that parent's children.
pub(crate) fn role_in(parent: &NodeKind, children: &[&CstNode], index: usize) -> Role {
    let child = children[index];
    let any_expr = Role::Expr {
        min_level: Level::Open,
    };
    match parent {
        NodeKind::Program => Role::Item,
        NodeKind::LetBinding { .. } => {
            if index == 0 {
                Role::Binder
            } else if child.kind == NodeKind::Parameter {
                Role::Parameter
            } else {
                any_expr
            }
        }
        NodeKind::Parameter | NodeKind::Pattern(_) => Role::Pattern,
        NodeKind::MatchExpr => {
            if index == 0 {
                any_expr
            } else {
                Role::Branch
            }
        }
        NodeKind::Branch => {
            if index == 0 {
                Role::Pattern
            } else {
                any_expr
            }
        }
        NodeKind::FunExpr => {
            if child.kind == NodeKind::Parameter {
                Role::Parameter
            } else {
                any_expr
            }
        }
        NodeKind::IfExpr | NodeKind::ListExpr | NodeKind::ParenExpr => any_expr,
        NodeKind::AppExpr => Role::Expr {
            min_level: Level::Atom,
        },
        NodeKind::BinOpExpr(op) => {
            let level = op_level(*op);
            Role::Expr {
                min_level: if index == 0 { level } else { tighter(level) },
            }
        }
        NodeKind::ConsExpr => Role::Expr {
            min_level: if index == 0 {
                Level::Additive
            } else {
                Level::Cons
            },
        },
        NodeKind::Sequence { .. } => Role::Loose,
        NodeKind::Ident(_) | NodeKind::IntLit(_) => Role::Loose,
    }
}

/// Role of the focused node within its parent, or `None` at the root.
pub(crate) fn role_of_focus(focus: &Focus) -> Option<Role> {
    let parent = focus.parent_focus()?;
    let siblings = focus.siblings_in_order();
    Some(role_in(&parent.item.kind, &siblings, focus.index()))
}

/// True when a `|` token can follow position `index` at the level of
/// `focus`, so that a trailing `match` placed there would swallow it.
pub(crate) fn position_exposed(focus: &Focus, index: usize) -> bool {
    let Some(parent) = focus.parent_focus() else {
        return false;
    };
    let siblings = focus.siblings_in_order();
    let last = index + 1 == siblings.len();
    let up = || position_exposed(parent, parent.index());
    match parent.item.kind {
        NodeKind::MatchExpr => index > 0 && (!last || up()),
        NodeKind::Branch => index == 1 && up(),
        NodeKind::FunExpr | NodeKind::IfExpr => last && up(),
        NodeKind::LetBinding { .. } => last && is_let_in(&siblings) && up(),
        _ => false,
    }
}

/// True when the rightmost part of `node` is an unparenthesised `match`.
pub(crate) fn ends_with_open_match(node: &CstNode) -> bool {
    match node.kind {
        NodeKind::MatchExpr => true,
        NodeKind::Branch | NodeKind::FunExpr | NodeKind::IfExpr | NodeKind::LetBinding { .. } => {
            node.children.last().is_some_and(ends_with_open_match)
        }
        _ => false,
    }
}

/// Whether `node` can occupy position `index` at the level of `focus`
/// and still reparse as the same tree.
pub(crate) fn fits(focus: &Focus, index: usize, node: &CstNode) -> bool {
    let Some(parent) = focus.parent_focus() else {
        return false;
    };
    let siblings = focus.siblings_in_order();
    let level_ok = match role_in(&parent.item.kind, &siblings, index) {
        Role::Expr { min_level } => level_of(node) >= min_level,
        _ => true,
    };
    level_ok && !(ends_with_open_match(node) && position_exposed(focus, index))
}
