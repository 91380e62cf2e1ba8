//! Recursive-descent parser with one token of lookahead.
//!
//! Binary operators, tightest first: application, `*` `/`, `+` `-`,
//! `::` (right-associative), comparisons `=` `<` `>`. All other binary
//! operators associate to the left.

use crate::text::{char_len, TextRegion};

use super::lexer::{tokenize, Tok, Token};
use super::{BinOp, CstNode, NodeKind, ParseDiagnostic, PatternKind};

const MAX_DEPTH: usize = 128;

/// Parses a whole program. The root spans the entire input.
pub fn parse(source: &str) -> Result<CstNode, ParseDiagnostic> {
    let mut parser = Parser::new(source)?;
    let mut items = Vec::new();
    while parser.peek() == &Tok::Let {
        items.push(parser.let_binding(true)?);
    }
    if parser.peek() != &Tok::Eof {
        return Err(parser.unexpected("expected `let` or end of input"));
    }
    Ok(CstNode::new(
        NodeKind::Program,
        items,
        TextRegion::new(0, char_len(source)),
    ))
}

/// Parses `source` as a single expression with nothing after it.
pub fn parse_expression(source: &str) -> Result<CstNode, ParseDiagnostic> {
    let mut parser = Parser::new(source)?;
    let expr = parser.expr()?;
    if parser.peek() != &Tok::Eof {
        return Err(parser.unexpected("expected end of input"));
    }
    Ok(expr)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn new(source: &str) -> Result<Self, ParseDiagnostic> {
        Ok(Parser {
            tokens: tokenize(source)?,
            pos: 0,
            depth: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_region(&self) -> TextRegion {
        self.tokens[self.pos].region
    }

    fn bump(&mut self) -> Token {
        let token = self.tokens[self.pos].clone();
        if token.tok != Tok::Eof {
            self.pos += 1;
        }
        token
    }

    fn expect(&mut self, tok: Tok) -> Result<Token, ParseDiagnostic> {
        if self.peek() == &tok {
            Ok(self.bump())
        } else {
            let what = format!("expected {}", tok.describe());
            Err(self.unexpected(&what))
        }
    }

    fn unexpected(&self, what: &str) -> ParseDiagnostic {
        let found = self.peek().describe();
        let message = if self.peek() == &Tok::Eof {
            what.to_string()
        } else {
            format!("{what}, found {found}")
        };
        ParseDiagnostic::new(self.peek_region().start, message)
    }

    fn enter(&mut self) -> Result<(), ParseDiagnostic> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ParseDiagnostic::new(
                self.peek_region().start,
                "expression nested too deeply",
            ));
        }
        Ok(())
    }

    fn leave(&mut self) {
        self.depth -= 1;
    }

    fn let_binding(&mut self, top_level: bool) -> Result<CstNode, ParseDiagnostic> {
        let let_tok = self.expect(Tok::Let)?;
        let recursive = if self.peek() == &Tok::Rec {
            self.bump();
            true
        } else {
            false
        };
        let mut children = vec![self.ident("expected binding name")?];
        while matches!(self.peek(), Tok::Ident(_) | Tok::Underscore | Tok::LParen) {
            children.push(self.parameter()?);
        }
        self.expect(Tok::Eq)?;
        children.push(self.expr()?);
        if !top_level {
            self.expect(Tok::In)?;
            children.push(self.expr()?);
        }
        let end = children.last().unwrap().region.end;
        Ok(CstNode::new(
            NodeKind::LetBinding { recursive },
            children,
            TextRegion::new(let_tok.region.start, end),
        ))
    }

    fn ident(&mut self, what: &str) -> Result<CstNode, ParseDiagnostic> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let token = self.bump();
                Ok(CstNode::leaf(NodeKind::Ident(name), token.region))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn parameter(&mut self) -> Result<CstNode, ParseDiagnostic> {
        let inner = match self.peek() {
            Tok::Ident(_) | Tok::Underscore | Tok::LParen => self.pattern_atom()?,
            _ => return Err(self.unexpected("expected parameter")),
        };
        let region = inner.region;
        Ok(CstNode::new(NodeKind::Parameter, vec![inner], region))
    }

    fn expr(&mut self) -> Result<CstNode, ParseDiagnostic> {
        self.enter()?;
        let result = match self.peek() {
            Tok::Let => self.let_binding(false),
            Tok::Match => self.match_expr(),
            Tok::Fun => self.fun_expr(),
            Tok::If => self.if_expr(),
            _ => self.comparison(),
        };
        self.leave();
        result
    }

    fn match_expr(&mut self) -> Result<CstNode, ParseDiagnostic> {
        let start = self.expect(Tok::Match)?.region.start;
        let mut children = vec![self.expr()?];
        self.expect(Tok::With)?;
        if self.peek() != &Tok::Bar {
            return Err(self.unexpected("expected `|`"));
        }
        while self.peek() == &Tok::Bar {
            let bar = self.bump();
            let pattern = self.pattern()?;
            self.expect(Tok::Arrow)?;
            let body = self.expr()?;
            let region = TextRegion::new(bar.region.start, body.region.end);
            children.push(CstNode::new(NodeKind::Branch, vec![pattern, body], region));
        }
        let end = children.last().unwrap().region.end;
        Ok(CstNode::new(
            NodeKind::MatchExpr,
            children,
            TextRegion::new(start, end),
        ))
    }

    fn fun_expr(&mut self) -> Result<CstNode, ParseDiagnostic> {
        let start = self.expect(Tok::Fun)?.region.start;
        let mut children = vec![self.parameter()?];
        while matches!(self.peek(), Tok::Ident(_) | Tok::Underscore | Tok::LParen) {
            children.push(self.parameter()?);
        }
        self.expect(Tok::Arrow)?;
        children.push(self.expr()?);
        let end = children.last().unwrap().region.end;
        Ok(CstNode::new(
            NodeKind::FunExpr,
            children,
            TextRegion::new(start, end),
        ))
    }

    fn if_expr(&mut self) -> Result<CstNode, ParseDiagnostic> {
        let start = self.expect(Tok::If)?.region.start;
        let cond = self.expr()?;
        self.expect(Tok::Then)?;
        let then = self.expr()?;
        self.expect(Tok::Else)?;
        let otherwise = self.expr()?;
        let region = TextRegion::new(start, otherwise.region.end);
        Ok(CstNode::new(
            NodeKind::IfExpr,
            vec![cond, then, otherwise],
            region,
        ))
    }

    fn comparison(&mut self) -> Result<CstNode, ParseDiagnostic> {
        let mut left = self.cons()?;
        loop {
            let op = match self.peek() {
                Tok::Eq => BinOp::Eq,
                Tok::Lt => BinOp::Lt,
                Tok::Gt => BinOp::Gt,
                _ => return Ok(left),
            };
            self.bump();
            let right = self.cons()?;
            left = CstNode::spanning(NodeKind::BinOpExpr(op), vec![left, right]);
        }
    }

    fn cons(&mut self) -> Result<CstNode, ParseDiagnostic> {
        let head = self.additive()?;
        if self.peek() != &Tok::Cons {
            return Ok(head);
        }
        self.bump();
        self.enter()?;
        let tail = self.cons();
        self.leave();
        Ok(CstNode::spanning(NodeKind::ConsExpr, vec![head, tail?]))
    }

    fn additive(&mut self) -> Result<CstNode, ParseDiagnostic> {
        let mut left = self.multiplicative()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(left),
            };
            self.bump();
            let right = self.multiplicative()?;
            left = CstNode::spanning(NodeKind::BinOpExpr(op), vec![left, right]);
        }
    }

    fn multiplicative(&mut self) -> Result<CstNode, ParseDiagnostic> {
        let mut left = self.application()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(left),
            };
            self.bump();
            let right = self.application()?;
            left = CstNode::spanning(NodeKind::BinOpExpr(op), vec![left, right]);
        }
    }

    fn application(&mut self) -> Result<CstNode, ParseDiagnostic> {
        let mut atoms = vec![self.atom()?];
        while starts_atom(self.peek()) {
            atoms.push(self.atom()?);
        }
        if atoms.len() == 1 {
            Ok(atoms.pop().unwrap())
        } else {
            Ok(CstNode::spanning(NodeKind::AppExpr, atoms))
        }
    }

    fn atom(&mut self) -> Result<CstNode, ParseDiagnostic> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let token = self.bump();
                Ok(CstNode::leaf(NodeKind::Ident(name), token.region))
            }
            Tok::Int(digits) => {
                let token = self.bump();
                Ok(CstNode::leaf(NodeKind::IntLit(digits), token.region))
            }
            Tok::LParen => {
                let open = self.bump();
                let inner = self.expr()?;
                let close = self.expect(Tok::RParen)?;
                Ok(CstNode::new(
                    NodeKind::ParenExpr,
                    vec![inner],
                    open.region.hull(&close.region),
                ))
            }
            Tok::LBracket => {
                let open = self.bump();
                let mut elements = Vec::new();
                if self.peek() != &Tok::RBracket {
                    elements.push(self.expr()?);
                    while self.peek() == &Tok::Semi {
                        self.bump();
                        elements.push(self.expr()?);
                    }
                }
                let close = self.expect(Tok::RBracket)?;
                Ok(CstNode::new(
                    NodeKind::ListExpr,
                    elements,
                    open.region.hull(&close.region),
                ))
            }
            _ => Err(self.unexpected("expected expression")),
        }
    }

    fn pattern(&mut self) -> Result<CstNode, ParseDiagnostic> {
        self.enter()?;
        let result = self.pattern_cons();
        self.leave();
        result
    }

    fn pattern_cons(&mut self) -> Result<CstNode, ParseDiagnostic> {
        let head = self.pattern_atom()?;
        if self.peek() != &Tok::Cons {
            return Ok(head);
        }
        self.bump();
        let tail = self.pattern()?;
        Ok(CstNode::spanning(
            NodeKind::Pattern(PatternKind::Cons),
            vec![head, tail],
        ))
    }

    fn pattern_atom(&mut self) -> Result<CstNode, ParseDiagnostic> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let token = self.bump();
                Ok(CstNode::leaf(NodeKind::Ident(name), token.region))
            }
            Tok::Int(digits) => {
                let token = self.bump();
                Ok(CstNode::leaf(NodeKind::IntLit(digits), token.region))
            }
            Tok::Underscore => {
                let token = self.bump();
                Ok(CstNode::leaf(
                    NodeKind::Pattern(PatternKind::Wildcard),
                    token.region,
                ))
            }
            Tok::LBracket => {
                let open = self.bump();
                let close = self.expect(Tok::RBracket)?;
                Ok(CstNode::leaf(
                    NodeKind::Pattern(PatternKind::Nil),
                    open.region.hull(&close.region),
                ))
            }
            Tok::LParen => {
                let open = self.bump();
                let inner = self.pattern()?;
                let close = self.expect(Tok::RParen)?;
                Ok(CstNode::new(
                    NodeKind::Pattern(PatternKind::Paren),
                    vec![inner],
                    open.region.hull(&close.region),
                ))
            }
            _ => Err(self.unexpected("expected pattern")),
        }
    }
}

fn starts_atom(tok: &Tok) -> bool {
    matches!(
        tok,
        Tok::Ident(_) | Tok::Int(_) | Tok::LParen | Tok::LBracket
    )
}
