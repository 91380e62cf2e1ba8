use crate::cst::{CstNode, NodeKind};
use crate::text::{Edit, EditTransaction, TextRegion};
use crate::zipper::Zipper;

use super::{EditError, OpResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    /// The parent stays well formed without the target.
    Remove,
    /// The parent is replaced by its one remaining child.
    Collapse,
    /// The parent can no longer be parsed and becomes a `Sequence`.
    Loosen,
}

fn outcome(parent: &NodeKind, siblings: &[&CstNode], index: usize) -> Outcome {
    let n = siblings.len();
    let is_param = siblings[index].kind == NodeKind::Parameter;
    let params = siblings
        .iter()
        .filter(|c| c.kind == NodeKind::Parameter)
        .count();
    match parent {
        NodeKind::Program | NodeKind::Sequence { .. } | NodeKind::ListExpr => Outcome::Remove,
        NodeKind::MatchExpr if index > 0 && n > 2 => Outcome::Remove,
        NodeKind::LetBinding { .. } if is_param => Outcome::Remove,
        NodeKind::FunExpr if is_param && params > 1 => Outcome::Remove,
        NodeKind::AppExpr if n > 2 => Outcome::Remove,
        NodeKind::AppExpr | NodeKind::BinOpExpr(_) | NodeKind::ConsExpr => Outcome::Collapse,
        _ => Outcome::Loosen,
    }
}

/// Whole lines occupied by `t`, if nothing but whitespace shares them.
fn line_span(chars: &[char], t: TextRegion) -> Option<TextRegion> {
    let line_start = chars[..t.start]
        .iter()
        .rposition(|&c| c == '\n')
        .map_or(0, |i| i + 1);
    let line_end = chars[t.end..]
        .iter()
        .position(|&c| c == '\n')
        .map_or(chars.len(), |i| t.end + i);
    let blank = |range: &[char]| range.iter().all(|c| c.is_whitespace());
    if !blank(&chars[line_start..t.start]) || !blank(&chars[t.end..line_end]) {
        return None;
    }
    Some(if line_end < chars.len() {
        TextRegion::new(line_start, line_end + 1)
    } else if line_start > 0 {
        TextRegion::new(line_start - 1, line_end)
    } else {
        TextRegion::new(line_start, line_end)
    })
}

fn is_delimiter(c: char) -> bool {
    c.is_whitespace() || matches!(c, '(' | ')' | '[' | ']' | ';')
}

/// Deletes the focused node.
///
/// When the focus is an only child the deletion widens to the parent,
/// repeatedly. A deletion that leaves its parent unparsable turns the parent
/// into a `Sequence` holding the remaining children.
pub fn structural_delete(z: &Zipper, text: &str) -> Result<OpResult, EditError> {
    let mut target = z.clone();
    loop {
        let focus = target.focus().ok_or(EditError::AtTop)?;
        let parent = focus.parent_focus().ok_or(EditError::AtTop)?;
        let widens = parent.parent_focus().is_some() && parent.item.kind != NodeKind::ListExpr;
        if focus.sibling_count() == 1 && widens {
            target = target.go_up()?;
        } else {
            break;
        }
    }

    let chars: Vec<char> = text.chars().collect();
    let focus = target.focus().unwrap();
    let parent = focus.parent_focus().unwrap();
    let siblings = focus.siblings_in_order();
    let index = focus.index();
    let t = focus.item.region;
    let prev = index.checked_sub(1).map(|i| siblings[i].region);
    let next = siblings.get(index + 1).map(|s| s.region);
    let outcome = outcome(&parent.item.kind, &siblings, index);

    let whole_lines = || {
        line_span(&chars, t)
            .filter(|span| parent.bounds.contains_region(span))
            .unwrap_or(t)
    };
    let span = match (outcome, &parent.item.kind, prev, next) {
        (Outcome::Collapse, _, None, Some(n)) => TextRegion::new(t.start, n.start),
        (Outcome::Collapse, _, Some(p), _) => TextRegion::new(p.end, t.end),
        (Outcome::Remove, NodeKind::ListExpr, _, Some(n)) => TextRegion::new(t.start, n.start),
        (Outcome::Remove, NodeKind::ListExpr, Some(p), None) => TextRegion::new(p.end, t.end),
        (Outcome::Remove, NodeKind::Program, _, _) => whole_lines(),
        (Outcome::Remove, _, Some(p), None) => TextRegion::new(p.end, t.end),
        (Outcome::Remove, _, None, Some(n)) => TextRegion::new(t.start, n.start),
        _ => whole_lines(),
    };
    // Keep the tokens on either side from running together.
    let glued = span.start > 0
        && span.end < chars.len()
        && !is_delimiter(chars[span.start - 1])
        && !is_delimiter(chars[span.end]);
    let replacement = if glued { " " } else { "" };

    let (_, mut below, mut above, mut parent_z) = target.clone().into_parts().unwrap();
    let mut zipper_after = match outcome {
        Outcome::Collapse => {
            let survivor = below.pop().or_else(|| above.pop()).unwrap();
            let (_, outer_below, outer_above, grandparent) = parent_z.into_parts().unwrap();
            Zipper::from_parts(survivor, outer_below, outer_above, grandparent)
        }
        // Only a list or the program can lose its last child. Ancestor
        // frames hold childless labels, so the parent frame is already the
        // emptied node.
        _ if below.is_empty() && above.is_empty() => {
            if parent.parent_focus().is_some() {
                parent_z
            } else {
                let (program, ..) = parent_z.into_parts().unwrap();
                Zipper::Top(program)
            }
        }
        _ => {
            let item = if above.is_empty() {
                below.pop().unwrap()
            } else {
                above.remove(0)
            };
            if let Zipper::Node(frame) = &mut parent_z {
                let item_index = below.len();
                match &mut frame.item.kind {
                    NodeKind::Sequence {
                        item_index: index, ..
                    } => *index = item_index,
                    kind if outcome == Outcome::Loosen => {
                        *kind = NodeKind::Sequence {
                            prefix_region: Some(frame.bounds),
                            item_index,
                        }
                    }
                    _ => {}
                }
            }
            Zipper::from_parts(item, below, above, parent_z)
        }
    };

    let transaction = EditTransaction::new(vec![Edit::new(span, replacement)], 0);
    zipper_after.map_regions(&|r| transaction.map_region(r));
    let cursor_after = zipper_after.bounds().map_or(0, |b| b.start);
    Ok(OpResult {
        transaction: Some(EditTransaction::new(transaction.edits, cursor_after)),
        cursor_after,
        zipper_after,
        selection: None,
    })
}
