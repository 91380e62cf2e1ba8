//! A Huet-style zipper over [`CstNode`] trees, where every focused level
//! also records the character bounds of its node.
//!
//! Ancestor levels keep their node as a childless label; the children are
//! reassembled from `below`, `item` and `above` when moving up.

use thiserror::Error;

use crate::cst::{path_to, CstError, CstNode};
use crate::text::TextRegion;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ZipperError {
    #[error("already at the top of the tree")]
    AtTop,
    #[error("focused node has no children")]
    NoChild,
    #[error("no sibling in that direction")]
    NoSibling,
    #[error("no syntax node at offset {0}")]
    NoNodeAtCursor(usize),
}

impl From<CstError> for ZipperError {
    fn from(err: CstError) -> Self {
        match err {
            CstError::NoNodeAtCursor(at) => ZipperError::NoNodeAtCursor(at),
            CstError::DisorderedChildren => unreachable!("not produced by lookups"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Zipper {
    /// Above the root. Carries the whole tree so that unzipping is total.
    Top(CstNode),
    Node(Box<Focus>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Focus {
    pub item: CstNode,
    // Both sibling stacks keep the nearest sibling last.
    below: Vec<CstNode>,
    above: Vec<CstNode>,
    pub parent: Zipper,
    pub bounds: TextRegion,
}

impl Focus {
    /// Preceding siblings, nearest first.
    pub fn below(&self) -> impl DoubleEndedIterator<Item = &CstNode> + ExactSizeIterator {
        self.below.iter().rev()
    }

    /// Following siblings, nearest first.
    pub fn above(&self) -> impl DoubleEndedIterator<Item = &CstNode> + ExactSizeIterator {
        self.above.iter().rev()
    }

    /// Position of the focus among its siblings.
    pub fn index(&self) -> usize {
        self.below.len()
    }

    pub fn sibling_count(&self) -> usize {
        self.below.len() + 1 + self.above.len()
    }

    pub fn next_sibling(&self) -> Option<&CstNode> {
        self.above.last()
    }

    pub fn prev_sibling(&self) -> Option<&CstNode> {
        self.below.last()
    }

    /// The parent level, or `None` when the focus is the root.
    pub fn parent_focus(&self) -> Option<&Focus> {
        match &self.parent {
            Zipper::Node(p) => Some(p),
            Zipper::Top(_) => None,
        }
    }

    /// All siblings including the focus, in source order.
    pub fn siblings_in_order(&self) -> Vec<&CstNode> {
        self.below
            .iter()
            .chain(std::iter::once(&self.item))
            .chain(self.above.iter().rev())
            .collect()
    }
}

fn label(node: &CstNode) -> CstNode {
    CstNode::new(node.kind.clone(), Vec::new(), node.region)
}

impl Zipper {
    /// Focus on the root itself.
    pub fn root(tree: CstNode) -> Zipper {
        let bounds = tree.region;
        let top = Zipper::Top(label(&tree));
        Zipper::Node(Box::new(Focus {
            item: tree,
            below: Vec::new(),
            above: Vec::new(),
            parent: top,
            bounds,
        }))
    }

    /// Focus on the deepest node of `tree` containing `cursor`.
    pub fn at(tree: &CstNode, cursor: usize) -> Result<Zipper, ZipperError> {
        let path = path_to(tree, cursor)?;
        let mut zipper = Zipper::root(tree.clone());
        for index in path {
            zipper = zipper.go_to_child(index)?;
        }
        Ok(zipper)
    }

    pub fn focus(&self) -> Option<&Focus> {
        match self {
            Zipper::Node(f) => Some(f),
            Zipper::Top(_) => None,
        }
    }

    pub fn item(&self) -> Option<&CstNode> {
        self.focus().map(|f| &f.item)
    }

    pub fn bounds(&self) -> Option<TextRegion> {
        self.focus().map(|f| f.bounds)
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Zipper::Top(_))
    }

    /// Number of levels between the focus and the root.
    pub fn depth(&self) -> usize {
        let mut depth = 0;
        let mut z = self;
        while let Zipper::Node(f) = z {
            if let Zipper::Node(_) = f.parent {
                depth += 1;
            }
            z = &f.parent;
        }
        depth
    }

    pub fn go_up(&self) -> Result<Zipper, ZipperError> {
        let focus = self.focus().ok_or(ZipperError::AtTop)?;
        let parent = focus.parent_focus().ok_or(ZipperError::AtTop)?;
        let mut rebuilt = parent.clone();
        rebuilt.item.children = focus.siblings_in_order().into_iter().cloned().collect();
        rebuilt.item.region = parent.bounds;
        Ok(Zipper::Node(Box::new(rebuilt)))
    }

    pub fn go_down(&self) -> Result<Zipper, ZipperError> {
        self.go_to_child(0)
    }

    pub fn go_to_child(&self, index: usize) -> Result<Zipper, ZipperError> {
        let focus = self.focus().ok_or(ZipperError::AtTop)?;
        if index >= focus.item.children.len() {
            return Err(ZipperError::NoChild);
        }
        let mut children = focus.item.children.clone();
        let mut above = children.split_off(index + 1);
        above.reverse();
        let item = children.pop().unwrap();
        let mut parent = focus.clone();
        parent.item = label(&focus.item);
        let bounds = item.region;
        Ok(Zipper::Node(Box::new(Focus {
            item,
            below: children,
            above,
            parent: Zipper::Node(Box::new(parent)),
            bounds,
        })))
    }

    pub fn go_next(&self) -> Result<Zipper, ZipperError> {
        let focus = self.focus().ok_or(ZipperError::AtTop)?;
        if focus.above.is_empty() {
            return Err(ZipperError::NoSibling);
        }
        let mut moved = focus.clone();
        let next = moved.above.pop().unwrap();
        let old = std::mem::replace(&mut moved.item, next);
        moved.below.push(old);
        moved.bounds = moved.item.region;
        Ok(Zipper::Node(Box::new(moved)))
    }

    pub fn go_prev(&self) -> Result<Zipper, ZipperError> {
        let focus = self.focus().ok_or(ZipperError::AtTop)?;
        if focus.below.is_empty() {
            return Err(ZipperError::NoSibling);
        }
        let mut moved = focus.clone();
        let prev = moved.below.pop().unwrap();
        let old = std::mem::replace(&mut moved.item, prev);
        moved.above.push(old);
        moved.bounds = moved.item.region;
        Ok(Zipper::Node(Box::new(moved)))
    }

    /// Reassembles the whole tree.
    pub fn unzip(&self) -> CstNode {
        let mut z = self.clone();
        while let Ok(up) = z.go_up() {
            z = up;
        }
        match z {
            Zipper::Top(tree) => tree,
            Zipper::Node(f) => f.item,
        }
    }

    /// The zipper `Zipper::at(&self.unzip(), cursor)` would build, reached by
    /// climbing to the nearest ancestor containing `cursor` and descending.
    pub fn refocus(&self, cursor: usize) -> Result<Zipper, ZipperError> {
        let mut z = match self {
            Zipper::Top(tree) => return Zipper::at(tree, cursor),
            Zipper::Node(_) => self.clone(),
        };
        while !z.bounds().is_some_and(|b| b.contains(cursor)) {
            z = z.go_up().map_err(|_| ZipperError::NoNodeAtCursor(cursor))?;
        }
        while let Some(index) = z.item().and_then(|n| n.child_containing(cursor)) {
            z = z.go_to_child(index)?;
        }
        if z.focus().is_some_and(|f| f.parent_focus().is_none()) {
            return Err(ZipperError::NoNodeAtCursor(cursor));
        }
        Ok(z)
    }

    /// Rewrites every region held anywhere in the zipper.
    pub fn map_regions(&mut self, f: &impl Fn(TextRegion) -> TextRegion) {
        match self {
            Zipper::Top(tree) => tree.map_regions(f),
            Zipper::Node(focus) => {
                focus.item.map_regions(f);
                for sibling in focus.below.iter_mut().chain(focus.above.iter_mut()) {
                    sibling.map_regions(f);
                }
                focus.bounds = f(focus.bounds);
                focus.parent.map_regions(f);
            }
        }
    }

    /// Checks that every level's bounds equal its node's region, that
    /// ancestors contain their descendants, and that the reassembled tree
    /// satisfies the CST invariants.
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut z = self;
        while let Zipper::Node(f) = z {
            if f.bounds != f.item.region {
                return Err(format!(
                    "bounds {} differ from focused {} {}",
                    f.bounds,
                    f.item.kind.name(),
                    f.item.region
                ));
            }
            if let Some(p) = f.parent_focus() {
                if !p.bounds.contains_region(&f.bounds) {
                    return Err(format!(
                        "parent bounds {} do not contain {}",
                        p.bounds, f.bounds
                    ));
                }
            }
            z = &f.parent;
        }
        self.unzip().check_invariants()
    }

    // Used by edit operations to rebuild a level in place.
    pub(crate) fn from_parts(
        item: CstNode,
        below_in_order: Vec<CstNode>,
        above_in_order: Vec<CstNode>,
        parent: Zipper,
    ) -> Zipper {
        let mut above = above_in_order;
        above.reverse();
        let bounds = item.region;
        Zipper::Node(Box::new(Focus {
            item,
            below: below_in_order,
            above,
            parent,
            bounds,
        }))
    }

    /// Splits a focused zipper into `(item, below in source order, above in
    /// source order, parent)`.
    pub(crate) fn into_parts(self) -> Option<(CstNode, Vec<CstNode>, Vec<CstNode>, Zipper)> {
        match self {
            Zipper::Top(_) => None,
            Zipper::Node(f) => {
                let Focus {
                    item,
                    below,
                    mut above,
                    parent,
                    ..
                } = *f;
                above.reverse();
                Some((item, below, above, parent))
            }
        }
    }
}
