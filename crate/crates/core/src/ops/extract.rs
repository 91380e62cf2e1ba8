use std::collections::BTreeSet;

use crate::cst::{is_valid_ident, CstNode, NodeKind};
use crate::text::{char_len, slice, Edit, EditTransaction, TextRegion};
use crate::zipper::Zipper;

use super::roles::{role_in, role_of_focus, Role};
use super::scope::{binders_for, free_vars, holds_code};
use super::{EditError, OpResult};

fn strip_parens(mut node: &CstNode) -> &CstNode {
    while node.kind == NodeKind::ParenExpr && node.children.len() == 1 {
        node = &node.children[0];
    }
    node
}

fn mentions(node: &CstNode, name: &str) -> bool {
    node.ident_name() == Some(name) || node.children.iter().any(|c| mentions(c, name))
}

fn rebinds<'a>(parent: &'a CstNode, index: usize, free: &BTreeSet<String>) -> Option<&'a str> {
    binders_for(parent, index)
        .into_iter()
        .filter_map(CstNode::ident_name)
        .find(|name| free.contains(*name))
}

/// Outermost expression-position nodes equal to `pattern` that see the same
/// bindings for `free` as the enclosing scope does.
fn occurrences(
    node: &CstNode,
    replaceable: bool,
    pattern: &CstNode,
    free: &BTreeSet<String>,
    out: &mut Vec<TextRegion>,
) {
    if replaceable && strip_parens(node).same_structure(pattern) {
        out.push(node.region);
        return;
    }
    let children: Vec<&CstNode> = node.children.iter().collect();
    for (index, child) in node.children.iter().enumerate() {
        if !holds_code(node, index) || rebinds(node, index, free).is_some() {
            continue;
        }
        let is_expr = matches!(role_in(&node.kind, &children, index), Role::Expr { .. });
        occurrences(child, is_expr, pattern, free, out);
    }
}

/// Replaces `node` and its subtree with `Ident(name)` at each region in
/// `targets`.
fn replace_occurrences(node: &CstNode, targets: &[TextRegion], name: &str) -> CstNode {
    if targets.contains(&node.region) {
        return CstNode::leaf(NodeKind::Ident(name.to_string()), node.region);
    }
    let mut copy = node.clone();
    copy.children = node
        .children
        .iter()
        .map(|c| replace_occurrences(c, targets, name))
        .collect();
    copy
}

/// Binds the focused expression to `name` just inside the nearest enclosing
/// `let`, and replaces every equal expression in that scope with `name`.
pub fn extract_expression(z: &Zipper, text: &str, name: &str) -> Result<OpResult, EditError> {
    let focus = z.focus().ok_or(EditError::AtTop)?;
    if !role_of_focus(focus).is_some_and(Role::is_expression) {
        return Err(EditError::NotAnExpression);
    }
    if !is_valid_ident(name) {
        return Err(EditError::InvalidName(name.to_string()));
    }
    let expr = focus.item.clone();
    let free = free_vars(&expr);

    // Climb to the body or bound expression of the nearest `let`, noting
    // the child indices taken on the way down.
    let mut scope = z.clone();
    let mut path = Vec::new();
    loop {
        let f = scope.focus().unwrap();
        let parent = f.parent_focus().ok_or(EditError::NoEnclosingBinding)?;
        let siblings = f.siblings_in_order();
        let is_expr = matches!(
            role_in(&parent.item.kind, &siblings, f.index()),
            Role::Expr { .. }
        );
        if matches!(parent.item.kind, NodeKind::LetBinding { .. }) && is_expr {
            break;
        }
        path.push(f.index());
        scope = scope.go_up()?;
    }
    path.reverse();
    let body = scope.item().unwrap().clone();

    let mut node = &body;
    for &index in &path {
        if let Some(bound) = rebinds(node, index, &free) {
            return Err(EditError::WouldCapture(bound.to_string()));
        }
        node = &node.children[index];
    }
    if mentions(&body, name) {
        return Err(EditError::NameNotFresh(name.to_string()));
    }

    let pattern = strip_parens(&expr);
    let mut targets = Vec::new();
    occurrences(&body, true, pattern, &free, &mut targets);

    let expr_text = slice(text, expr.region).ok_or(EditError::NoNodeAtCursor(expr.region.end))?;
    let prefix = format!("let {name} = {expr_text} in ");
    let mut edits = vec![Edit::new(
        TextRegion::empty(body.region.start),
        prefix.clone(),
    )];
    edits.extend(targets.iter().map(|r| Edit::new(*r, name)));
    let replacements = EditTransaction::new(edits[1..].to_vec(), 0);
    let transaction = EditTransaction::new(edits, body.region.start);

    let start = body.region.start;
    let name_len = char_len(name);
    let mut new_body = replace_occurrences(&body, &targets, name);
    new_body.map_regions(&|r| replacements.map_region(r));
    let new_body = new_body.translated(char_len(&prefix) as isize);
    let name_start = start + "let ".len();
    let expr_start = name_start + name_len + " = ".len();
    let binding = CstNode::new(
        NodeKind::LetBinding { recursive: false },
        vec![
            CstNode::leaf(
                NodeKind::Ident(name.to_string()),
                TextRegion::new(name_start, name_start + name_len),
            ),
            expr.translated(expr_start as isize - expr.region.start as isize),
            new_body.clone(),
        ],
        TextRegion::new(start, new_body.region.end),
    );

    let (_, mut below, mut above, mut parent) = scope.into_parts().unwrap();
    let map = |r| transaction.map_region(r);
    below
        .iter_mut()
        .chain(above.iter_mut())
        .for_each(|n| n.map_regions(&map));
    parent.map_regions(&map);
    let zipper_after = Zipper::from_parts(binding, below, above, parent);
    Ok(OpResult {
        transaction: Some(transaction),
        cursor_after: start,
        zipper_after,
        selection: None,
    })
}
