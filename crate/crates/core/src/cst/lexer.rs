use crate::text::TextRegion;

use super::ParseDiagnostic;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(String),
    Let,
    Rec,
    In,
    Match,
    With,
    Fun,
    If,
    Then,
    Else,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Semi,
    Bar,
    Arrow,
    Eq,
    Cons,
    Plus,
    Minus,
    Star,
    Slash,
    Lt,
    Gt,
    Underscore,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => format!("identifier `{name}`"),
            Tok::Int(digits) => format!("integer `{digits}`"),
            Tok::Eof => "end of input".to_string(),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Let => "let",
            Tok::Rec => "rec",
            Tok::In => "in",
            Tok::Match => "match",
            Tok::With => "with",
            Tok::Fun => "fun",
            Tok::If => "if",
            Tok::Then => "then",
            Tok::Else => "else",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Semi => ";",
            Tok::Bar => "|",
            Tok::Arrow => "->",
            Tok::Eq => "=",
            Tok::Cons => "::",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::Lt => "<",
            Tok::Gt => ">",
            Tok::Underscore => "_",
            Tok::Ident(_) | Tok::Int(_) | Tok::Eof => "",
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub region: TextRegion,
}

pub(crate) const KEYWORDS: &[&str] = &[
    "let", "rec", "in", "match", "with", "fun", "if", "then", "else",
];

pub(crate) fn is_ident_start(c: char) -> bool {
    c.is_alphabetic()
}

pub(crate) fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// True when `name` lexes as a single non-keyword identifier.
pub fn is_valid_ident(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if is_ident_start(c) => {}
        _ => return false,
    }
    chars.all(is_ident_continue) && !KEYWORDS.contains(&name)
}

/// Splits `source` into tokens, dropping whitespace and `(* *)` comments.
/// The final token is always `Eof`, anchored at the input length.
pub(crate) fn tokenize(source: &str) -> Result<Vec<Token>, ParseDiagnostic> {
    let chars: Vec<char> = source.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '(' && chars.get(i + 1) == Some(&'*') {
            i = skip_comment(&chars, i)?;
            continue;
        }
        let start = i;
        let tok = if is_ident_start(c) {
            while i < chars.len() && is_ident_continue(chars[i]) {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            keyword(&word).unwrap_or(Tok::Ident(word))
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && is_ident_continue(chars[i]) {
                return Err(ParseDiagnostic::new(i, "malformed integer literal"));
            }
            Tok::Int(chars[start..i].iter().collect())
        } else {
            let next = chars.get(i + 1).copied();
            let (tok, width) = match (c, next) {
                ('-', Some('>')) => (Tok::Arrow, 2),
                (':', Some(':')) => (Tok::Cons, 2),
                ('_', Some(n)) if is_ident_continue(n) => {
                    return Err(ParseDiagnostic::new(
                        i,
                        "identifiers must start with a letter",
                    ))
                }
                ('(', _) => (Tok::LParen, 1),
                (')', _) => (Tok::RParen, 1),
                ('[', _) => (Tok::LBracket, 1),
                (']', _) => (Tok::RBracket, 1),
                (';', _) => (Tok::Semi, 1),
                ('|', _) => (Tok::Bar, 1),
                ('=', _) => (Tok::Eq, 1),
                ('+', _) => (Tok::Plus, 1),
                ('-', _) => (Tok::Minus, 1),
                ('*', _) => (Tok::Star, 1),
                ('/', _) => (Tok::Slash, 1),
                ('<', _) => (Tok::Lt, 1),
                ('>', _) => (Tok::Gt, 1),
                ('_', _) => (Tok::Underscore, 1),
                _ => {
                    return Err(ParseDiagnostic::new(
                        i,
                        format!("unexpected character `{c}`"),
                    ))
                }
            };
            i += width;
            tok
        };
        tokens.push(Token {
            tok,
            region: TextRegion::new(start, i),
        });
    }
    tokens.push(Token {
        tok: Tok::Eof,
        region: TextRegion::empty(chars.len()),
    });
    Ok(tokens)
}

fn keyword(word: &str) -> Option<Tok> {
    Some(match word {
        "let" => Tok::Let,
        "rec" => Tok::Rec,
        "in" => Tok::In,
        "match" => Tok::Match,
        "with" => Tok::With,
        "fun" => Tok::Fun,
        "if" => Tok::If,
        "then" => Tok::Then,
        "else" => Tok::Else,
        _ => return None,
    })
}

// Comments nest, as in OCaml.
fn skip_comment(chars: &[char], open: usize) -> Result<usize, ParseDiagnostic> {
    let mut depth = 0usize;
    let mut i = open;
    while i < chars.len() {
        match (chars[i], chars.get(i + 1)) {
            ('(', Some('*')) => {
                depth += 1;
                i += 2;
            }
            ('*', Some(')')) => {
                depth -= 1;
                i += 2;
                if depth == 0 {
                    return Ok(i);
                }
            }
            _ => i += 1,
        }
    }
    Err(ParseDiagnostic::new(open, "unterminated comment"))
}
