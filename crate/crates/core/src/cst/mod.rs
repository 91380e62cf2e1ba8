//! Concrete syntax tree for the mini-ML language.
//!
//! Every node records the character region it spans in the source. Trivia
//! (whitespace, comments, keywords and separators such as `->`, `with`, `in`)
//! lives between child regions; brackets and parentheses belong to the list
//! or parenthesised node that owns them, and a match branch starts at its `|`.

mod lexer;
mod parser;

use std::fmt;

use thiserror::Error;

use crate::text::TextRegion;

pub use lexer::is_valid_ident;
pub use parser::{parse, parse_expression};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Eq,
    Lt,
    Gt,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Eq => "=",
            BinOp::Lt => "<",
            BinOp::Gt => ">",
        }
    }
}

/// Pattern shapes that are not plain variables or integer literals; those
/// two are represented by `Ident` and `IntLit` leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PatternKind {
    Wildcard,
    Nil,
    Cons,
    Paren,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Program,
    /// Children: name, parameters, bound expression, and for `let .. in`
    /// forms the body.
    LetBinding {
        recursive: bool,
    },
    Pattern(PatternKind),
    /// Wraps exactly one pattern (variable, wildcard or parenthesised).
    Parameter,
    /// Children: scrutinee, then one or more branches.
    MatchExpr,
    /// Children: pattern, body.
    Branch,
    FunExpr,
    IfExpr,
    AppExpr,
    BinOpExpr(BinOp),
    ConsExpr,
    ListExpr,
    ParenExpr,
    Ident(String),
    IntLit(String),
    /// Generic container for material that no longer forms a valid node:
    /// the children are `before ++ [item] ++ after`, with `item` at
    /// `item_index`.
    Sequence {
        prefix_region: Option<TextRegion>,
        item_index: usize,
    },
}

impl NodeKind {
    pub fn name(&self) -> &'static str {
        match self {
            NodeKind::Program => "Program",
            NodeKind::LetBinding { .. } => "LetBinding",
            NodeKind::Pattern(_) => "Pattern",
            NodeKind::Parameter => "Parameter",
            NodeKind::MatchExpr => "MatchExpr",
            NodeKind::Branch => "Branch",
            NodeKind::FunExpr => "FunExpr",
            NodeKind::IfExpr => "IfExpr",
            NodeKind::AppExpr => "AppExpr",
            NodeKind::BinOpExpr(_) => "BinOpExpr",
            NodeKind::ConsExpr => "ConsExpr",
            NodeKind::ListExpr => "ListExpr",
            NodeKind::ParenExpr => "ParenExpr",
            NodeKind::Ident(_) => "Ident",
            NodeKind::IntLit(_) => "IntLit",
            NodeKind::Sequence { .. } => "Sequence",
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(
            self,
            NodeKind::Ident(_)
                | NodeKind::IntLit(_)
                | NodeKind::Pattern(PatternKind::Wildcard)
                | NodeKind::Pattern(PatternKind::Nil)
        )
    }
}

/// A `Sequence` node taken apart: prefix region, items before, the item,
/// items after.
pub type SequenceParts<'a> = (
    Option<TextRegion>,
    &'a [CstNode],
    &'a CstNode,
    &'a [CstNode],
);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CstNode {
    pub kind: NodeKind,
    pub children: Vec<CstNode>,
    pub region: TextRegion,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at offset {position}")]
pub struct ParseDiagnostic {
    pub position: usize,
    pub message: String,
}

impl ParseDiagnostic {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        ParseDiagnostic {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CstError {
    #[error("no syntax node at offset {0}")]
    NoNodeAtCursor(usize),
    #[error("sequence members are not disjoint and ascending")]
    DisorderedChildren,
}

impl CstNode {
    pub fn new(kind: NodeKind, children: Vec<CstNode>, region: TextRegion) -> Self {
        CstNode {
            kind,
            children,
            region,
        }
    }

    pub fn leaf(kind: NodeKind, region: TextRegion) -> Self {
        CstNode::new(kind, Vec::new(), region)
    }

    /// A node whose region is the hull of its first and last child.
    pub(crate) fn spanning(kind: NodeKind, children: Vec<CstNode>) -> Self {
        let first = children
            .first()
            .expect("spanning node needs children")
            .region;
        let last = children.last().unwrap().region;
        let region = first.hull(&last);
        CstNode::new(kind, children, region)
    }

    pub fn ident_name(&self) -> Option<&str> {
        match &self.kind {
            NodeKind::Ident(name) => Some(name),
            _ => None,
        }
    }

    pub fn is_sequence(&self) -> bool {
        matches!(self.kind, NodeKind::Sequence { .. })
    }

    /// `(prefix_region, before, item, after)` for a `Sequence` node.
    pub fn sequence_parts(&self) -> Option<SequenceParts<'_>> {
        match self.kind {
            NodeKind::Sequence {
                prefix_region,
                item_index,
            } => Some((
                prefix_region,
                &self.children[..item_index],
                &self.children[item_index],
                &self.children[item_index + 1..],
            )),
            _ => None,
        }
    }

    pub fn contains_sequence(&self) -> bool {
        self.is_sequence() || self.children.iter().any(CstNode::contains_sequence)
    }

    /// Applies `f` to every region in the subtree, including sequence prefixes.
    pub fn map_regions(&mut self, f: &impl Fn(TextRegion) -> TextRegion) {
        self.region = f(self.region);
        if let NodeKind::Sequence {
            prefix_region: Some(prefix),
            ..
        } = &mut self.kind
        {
            *prefix = f(*prefix);
        }
        for child in &mut self.children {
            child.map_regions(f);
        }
    }

    pub fn translated(&self, delta: isize) -> CstNode {
        let mut copy = self.clone();
        copy.map_regions(&|r| r.translate(delta));
        copy
    }

    /// Structural equality ignoring regions. A `Sequence` with no prefix and
    /// no siblings around its item compares equal to the bare item.
    pub fn same_structure(&self, other: &CstNode) -> bool {
        let a = self.unwrap_trivial_sequence();
        let b = other.unwrap_trivial_sequence();
        let kinds_match = match (&a.kind, &b.kind) {
            (
                NodeKind::Sequence {
                    prefix_region: pa,
                    item_index: ia,
                },
                NodeKind::Sequence {
                    prefix_region: pb,
                    item_index: ib,
                },
            ) => pa.is_some() == pb.is_some() && ia == ib,
            (ka, kb) => ka == kb,
        };
        kinds_match
            && a.children.len() == b.children.len()
            && a.children
                .iter()
                .zip(&b.children)
                .all(|(x, y)| x.same_structure(y))
    }

    fn unwrap_trivial_sequence(&self) -> &CstNode {
        let mut node = self;
        while let NodeKind::Sequence {
            prefix_region: None,
            ..
        } = node.kind
        {
            if node.children.len() != 1 {
                break;
            }
            node = &node.children[0];
        }
        node
    }

    /// Pre-order traversal.
    pub fn walk(&self, visit: &mut impl FnMut(&CstNode)) {
        visit(self);
        for child in &self.children {
            child.walk(visit);
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(CstNode::node_count).sum::<usize>()
    }

    /// Checks the containment, ordering and leaf invariants of the subtree.
    pub fn check_invariants(&self) -> Result<(), String> {
        if self.region.start > self.region.end {
            return Err(format!("{} has inverted region", self.kind.name()));
        }
        if self.kind.is_leaf() && !self.children.is_empty() {
            return Err(format!("leaf {} has children", self.kind.name()));
        }
        if let NodeKind::Sequence { item_index, .. } = self.kind {
            if item_index >= self.children.len() {
                return Err("sequence item index out of range".into());
            }
        }
        for child in &self.children {
            if !self.region.contains_region(&child.region) {
                return Err(format!(
                    "{} {} escapes parent {} {}",
                    child.kind.name(),
                    child.region,
                    self.kind.name(),
                    self.region
                ));
            }
        }
        for pair in self.children.windows(2) {
            if pair[0].region.end > pair[1].region.start {
                return Err(format!(
                    "siblings {} {} and {} {} out of order",
                    pair[0].kind.name(),
                    pair[0].region,
                    pair[1].kind.name(),
                    pair[1].region
                ));
            }
        }
        self.children.iter().try_for_each(CstNode::check_invariants)
    }

    /// Index of the child that contains `cursor`. Children are disjoint, so
    /// at a shared boundary only the child starting there qualifies.
    pub fn child_containing(&self, cursor: usize) -> Option<usize> {
        self.children.iter().position(|c| c.region.contains(cursor))
    }
}

impl fmt::Display for CstNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(node: &CstNode, depth: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "{:indent$}{}", "", node.kind.name(), indent = depth * 2)?;
            match &node.kind {
                NodeKind::Ident(name) | NodeKind::IntLit(name) => write!(f, " {name}")?,
                NodeKind::BinOpExpr(op) => write!(f, " {}", op.symbol())?,
                NodeKind::LetBinding { recursive: true } => write!(f, " rec")?,
                NodeKind::Pattern(kind) => write!(f, " {kind:?}")?,
                _ => {}
            }
            writeln!(f, " {}", node.region)?;
            node.children.iter().try_for_each(|c| go(c, depth + 1, f))
        }
        go(self, 0, f)
    }
}

/// Indices from `root` down to the deepest node containing `cursor`.
///
/// Fails when the only node containing the cursor is the root itself, i.e.
/// the cursor sits in top-level trivia or past the end.
pub fn path_to(root: &CstNode, cursor: usize) -> Result<Vec<usize>, CstError> {
    if !root.region.contains(cursor) {
        return Err(CstError::NoNodeAtCursor(cursor));
    }
    let mut path = Vec::new();
    let mut node = root;
    while let Some(i) = node.child_containing(cursor) {
        path.push(i);
        node = &node.children[i];
    }
    if path.is_empty() {
        return Err(CstError::NoNodeAtCursor(cursor));
    }
    Ok(path)
}

/// The chain of nodes from `root` to the deepest node containing `cursor`.
pub fn node_at(root: &CstNode, cursor: usize) -> Result<Vec<&CstNode>, CstError> {
    let indices = path_to(root, cursor)?;
    let mut nodes = vec![root];
    let mut node = root;
    for i in indices {
        node = &node.children[i];
        nodes.push(node);
    }
    Ok(nodes)
}

/// Start offset of every token in `source`, in order.
pub fn token_starts(source: &str) -> Result<Vec<usize>, ParseDiagnostic> {
    Ok(lexer::tokenize(source)?
        .into_iter()
        .filter(|t| t.tok != lexer::Tok::Eof)
        .map(|t| t.region.start)
        .collect())
}

/// Builds a `Sequence` from its four components.
pub fn wrap_sequence(
    prefix_region: Option<TextRegion>,
    before: Vec<CstNode>,
    item: CstNode,
    after: Vec<CstNode>,
) -> Result<CstNode, CstError> {
    let item_index = before.len();
    let mut children = before;
    children.push(item);
    children.extend(after);
    if children
        .windows(2)
        .any(|pair| pair[0].region.end > pair[1].region.start)
    {
        return Err(CstError::DisorderedChildren);
    }
    let members = children[0]
        .region
        .hull(&children[children.len() - 1].region);
    let region = prefix_region.map_or(members, |p| p.hull(&members));
    Ok(CstNode::new(
        NodeKind::Sequence {
            prefix_region,
            item_index,
        },
        children,
        region,
    ))
}
