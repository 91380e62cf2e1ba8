//! Which names each construct brings into scope.

use std::collections::BTreeSet;

use crate::cst::{CstNode, NodeKind};

use super::roles::{is_let_in, role_in, Role};

/// Variables bound by a pattern or parameter, in source order.
pub(crate) fn pattern_vars(node: &CstNode) -> Vec<&CstNode> {
    let mut vars = Vec::new();
    collect_vars(node, &mut vars);
    vars
}

fn collect_vars<'a>(node: &'a CstNode, out: &mut Vec<&'a CstNode>) {
    if let NodeKind::Ident(_) = node.kind {
        out.push(node);
    }
    for child in &node.children {
        collect_vars(child, out);
    }
}

/// Binding occurrences that `parent` puts in scope for its child at
/// `index`, in source order.
pub(crate) fn binders_for(parent: &CstNode, index: usize) -> Vec<&CstNode> {
    let children: Vec<&CstNode> = parent.children.iter().collect();
    let child = children[index];
    let params = || {
        children
            .iter()
            .filter(|c| c.kind == NodeKind::Parameter)
            .flat_map(|c| pattern_vars(c))
    };
    match parent.kind {
        NodeKind::Program => children[..index]
            .iter()
            .filter_map(|item| item.children.first())
            .collect(),
        NodeKind::LetBinding { recursive } => {
            if index == 0 || child.kind == NodeKind::Parameter {
                Vec::new()
            } else if is_let_in(&children) && index + 1 == children.len() {
                vec![children[0]]
            } else {
                let own = recursive.then_some(children[0]);
                own.into_iter().chain(params()).collect()
            }
        }
        NodeKind::FunExpr if child.kind != NodeKind::Parameter => params().collect(),
        NodeKind::Branch if index == 1 => pattern_vars(children[0]),
        _ => Vec::new(),
    }
}

/// Whether the child at `index` is code rather than a pattern or binder.
pub(crate) fn holds_code(parent: &CstNode, index: usize) -> bool {
    let children: Vec<&CstNode> = parent.children.iter().collect();
    matches!(
        role_in(&parent.kind, &children, index),
        Role::Expr { .. } | Role::Branch | Role::Item | Role::Loose
    ) && parent.children[index].kind != NodeKind::Parameter
}

/// Names used in `node` that are not bound inside it.
pub(crate) fn free_vars(node: &CstNode) -> BTreeSet<String> {
    let mut free = BTreeSet::new();
    if let NodeKind::Ident(name) = &node.kind {
        free.insert(name.clone());
        return free;
    }
    for index in 0..node.children.len() {
        if !holds_code(node, index) {
            continue;
        }
        let mut inner = free_vars(&node.children[index]);
        for binder in binders_for(node, index) {
            if let Some(name) = binder.ident_name() {
                inner.remove(name);
            }
        }
        free.extend(inner);
    }
    free
}
