use crate::text::{slice, Edit, EditTransaction};
use crate::zipper::Zipper;

use super::roles::{fits, role_in, swap_class};
use super::{EditError, OpResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// Swaps the focus with its next sibling. The focus follows the moved node.
pub fn structural_transpose(z: &Zipper, text: &str) -> Result<OpResult, EditError> {
    structural_move(z, text, Direction::Forward)
}

/// Swaps the focus with the sibling in `direction`; the text of the two
/// regions is exchanged and the trivia between them stays where it is.
pub fn structural_move(
    z: &Zipper,
    text: &str,
    direction: Direction,
) -> Result<OpResult, EditError> {
    let focus = z.focus().ok_or(EditError::AtTop)?;
    let parent = focus.parent_focus().ok_or(EditError::NoSibling)?;
    let index = focus.index();
    let (first, second) = match direction {
        Direction::Forward if focus.next_sibling().is_some() => (index, index + 1),
        Direction::Backward if index > 0 => (index - 1, index),
        _ => return Err(EditError::NoSibling),
    };

    let siblings = focus.siblings_in_order();
    let (a, b) = (siblings[first], siblings[second]);
    let class_a = swap_class(role_in(&parent.item.kind, &siblings, first), a);
    let class_b = swap_class(role_in(&parent.item.kind, &siblings, second), b);
    match (class_a, class_b) {
        (Some(x), Some(y)) if x == y => {}
        _ => {
            return Err(EditError::KindMismatch(format!(
                "{} and {} are not interchangeable here",
                a.kind.name(),
                b.kind.name()
            )))
        }
    }
    if !parent.item.is_sequence() && !(fits(focus, first, b) && fits(focus, second, a)) {
        return Err(EditError::KindMismatch(format!(
            "swapping {} and {} would change how the code parses",
            a.kind.name(),
            b.kind.name()
        )));
    }

    let text_a = slice(text, a.region).ok_or(EditError::NoNodeAtCursor(a.region.end))?;
    let text_b = slice(text, b.region).ok_or(EditError::NoNodeAtCursor(b.region.end))?;
    let moved_b = b.translated(a.region.start as isize - b.region.start as isize);
    let moved_a = a.translated((b.region.end - a.region.len()) as isize - a.region.start as isize);

    let mut reordered: Vec<_> = siblings.into_iter().cloned().collect();
    reordered[first] = moved_b;
    reordered[second] = moved_a;
    let followed = if direction == Direction::Forward {
        second
    } else {
        first
    };
    let above = reordered.split_off(followed + 1);
    let item = reordered.pop().unwrap();
    let cursor_after = item.region.start;
    let edits = vec![Edit::new(a.region, text_b), Edit::new(b.region, text_a)];
    let zipper_after = Zipper::from_parts(item, reordered, above, focus.parent.clone());
    Ok(OpResult {
        transaction: Some(EditTransaction::new(edits, cursor_after)),
        cursor_after,
        zipper_after,
        selection: None,
    })
}
