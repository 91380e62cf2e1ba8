//! Shared test helpers: a seeded mini-ML program generator and a small
//! interpreter used as an independent semantic oracle.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use structedit_core::cst::BinOp;
use structedit_core::{CstNode, NodeKind};

pub use rand::SeedableRng;
pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// Generator

#[derive(Debug, Clone)]
enum Pat {
    Var(String),
    Wild,
    Nil,
    Int(u32),
    Cons(Box<Pat>, Box<Pat>),
}

#[derive(Debug, Clone)]
enum Expr {
    Var(String),
    Int(u32),
    Bin(&'static str, Box<Expr>, Box<Expr>),
    Cons(Box<Expr>, Box<Expr>),
    App(Box<Expr>, Vec<Expr>),
    List(Vec<Expr>),
    Paren(Box<Expr>),
    Match(Box<Expr>, Vec<(Pat, Expr)>),
    Fun(Vec<Pat>, Box<Expr>),
    If(Box<Expr>, Box<Expr>, Box<Expr>),
    LetIn(String, Vec<Pat>, Box<Expr>, Box<Expr>),
}

// Grammar levels, loosest first.
const OPEN: u8 = 0;
const COMPARE: u8 = 1;
const CONS: u8 = 2;
const ADDITIVE: u8 = 3;
const MULTIPLICATIVE: u8 = 4;
const APPLICATION: u8 = 5;
const ATOM: u8 = 6;

fn op_level(op: &str) -> u8 {
    match op {
        "=" | "<" | ">" => COMPARE,
        "+" | "-" => ADDITIVE,
        _ => MULTIPLICATIVE,
    }
}

impl Expr {
    fn level(&self) -> u8 {
        match self {
            Expr::Var(_) | Expr::Int(_) | Expr::List(_) | Expr::Paren(_) => ATOM,
            Expr::App(..) => APPLICATION,
            Expr::Bin(op, ..) => op_level(op),
            Expr::Cons(..) => CONS,
            _ => OPEN,
        }
    }

    fn ends_open_match(&self) -> bool {
        match self {
            Expr::Match(..) => true,
            Expr::Fun(_, body) | Expr::LetIn(_, _, _, body) | Expr::If(_, _, body) => {
                body.ends_open_match()
            }
            _ => false,
        }
    }
}

const NAMES: &[&str] = &[
    "a", "b", "c", "f", "g", "x", "y", "xs", "ys", "n", "acc", "h", "t", "é", "ñu",
];

struct Printer<'r> {
    rng: &'r mut Rng8,
    out: String,
    indent: usize,
}

impl Printer<'_> {
    fn space(&mut self) {
        // mostly single spaces, sometimes a comment
        if self.rng.gen_ratio(1, 40) {
            self.out.push_str(" (* note *) ");
        } else {
            self.out.push(' ');
        }
    }

    fn newline(&mut self) {
        self.out.push('\n');
        for _ in 0..self.indent {
            self.out.push_str("  ");
        }
    }

    fn pat(&mut self, p: &Pat, atom: bool) {
        match p {
            Pat::Var(v) => self.out.push_str(v),
            Pat::Wild => self.out.push('_'),
            Pat::Nil => self.out.push_str("[]"),
            Pat::Int(n) => self.out.push_str(&n.to_string()),
            Pat::Cons(h, t) => {
                if atom {
                    self.out.push('(');
                }
                let head_needs_parens = matches!(**h, Pat::Cons(..));
                self.pat(h, head_needs_parens);
                self.out.push_str(" :: ");
                self.pat(t, false);
                if atom {
                    self.out.push(')');
                }
            }
        }
    }

    fn params(&mut self, params: &[Pat]) {
        for p in params {
            self.space();
            self.pat(p, true);
        }
    }

    fn expr(&mut self, e: &Expr, min: u8, exposed: bool) {
        if e.level() < min || (exposed && e.ends_open_match()) {
            self.out.push('(');
            self.expr(e, OPEN, false);
            self.out.push(')');
            return;
        }
        match e {
            Expr::Var(v) => self.out.push_str(v),
            Expr::Int(n) => self.out.push_str(&n.to_string()),
            Expr::Paren(inner) => {
                self.out.push('(');
                self.expr(inner, OPEN, false);
                self.out.push(')');
            }
            Expr::List(items) => {
                self.out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        self.out.push_str("; ");
                    }
                    self.expr(item, OPEN, false);
                }
                self.out.push(']');
            }
            Expr::Bin(op, l, r) => {
                let level = op_level(op);
                let left = if level == COMPARE { CONS } else { level };
                let right = if level == COMPARE { CONS } else { level + 1 };
                self.expr(l, left, false);
                self.space();
                self.out.push_str(op);
                self.space();
                self.expr(r, right, false);
            }
            Expr::Cons(h, t) => {
                self.expr(h, ADDITIVE, false);
                self.out.push_str(" :: ");
                self.expr(t, CONS, false);
            }
            Expr::App(f, args) => {
                self.expr(f, ATOM, false);
                for a in args {
                    self.space();
                    self.expr(a, ATOM, false);
                }
            }
            Expr::Match(scrutinee, branches) => {
                let multiline = self.rng.gen_bool(0.6);
                self.out.push_str("match ");
                self.expr(scrutinee, OPEN, false);
                self.out.push_str(" with");
                self.indent += 1;
                for (i, (p, body)) in branches.iter().enumerate() {
                    if multiline {
                        self.newline();
                    } else {
                        self.out.push(' ');
                    }
                    self.out.push_str("| ");
                    self.pat(p, false);
                    self.out.push_str(" -> ");
                    let last = i + 1 == branches.len();
                    self.expr(body, OPEN, !last || exposed);
                }
                self.indent -= 1;
            }
            Expr::Fun(params, body) => {
                self.out.push_str("fun");
                self.params(params);
                self.out.push_str(" -> ");
                self.expr(body, OPEN, exposed);
            }
            Expr::If(c, t, f) => {
                self.out.push_str("if ");
                self.expr(c, OPEN, false);
                self.out.push_str(" then ");
                self.expr(t, OPEN, false);
                self.out.push_str(" else ");
                self.expr(f, OPEN, exposed);
            }
            Expr::LetIn(name, params, rhs, body) => {
                self.out.push_str("let ");
                self.out.push_str(name);
                self.params(params);
                self.out.push_str(" = ");
                self.expr(rhs, OPEN, false);
                self.out.push_str(" in");
                if self.rng.gen_bool(0.3) {
                    self.newline();
                } else {
                    self.out.push(' ');
                }
                self.expr(body, OPEN, exposed);
            }
        }
    }
}

struct Gen<'r> {
    rng: &'r mut Rng8,
    /// Only integers, arithmetic, comparisons, `if`, `let .. in` and calls
    /// to earlier integer functions.
    integer_only: bool,
    scope: Vec<String>,
    /// Integer functions in scope with their arity.
    functions: Vec<(String, usize)>,
    fresh: usize,
}

impl Gen<'_> {
    fn name(&mut self) -> String {
        if self.integer_only {
            self.fresh += 1;
            format!("v{}", self.fresh)
        } else {
            NAMES.choose(self.rng).unwrap().to_string()
        }
    }

    fn var(&mut self) -> Expr {
        match self.scope.choose(self.rng) {
            Some(v) if self.rng.gen_bool(0.8) => Expr::Var(v.clone()),
            _ if self.integer_only => Expr::Int(self.rng.gen_range(0..50)),
            _ => Expr::Var(NAMES.choose(self.rng).unwrap().to_string()),
        }
    }

    fn leaf(&mut self) -> Expr {
        if self.rng.gen_bool(0.5) {
            self.var()
        } else {
            Expr::Int(self.rng.gen_range(0..100))
        }
    }

    fn pat(&mut self, depth: u32) -> Pat {
        match self.rng.gen_range(0..6) {
            0 => Pat::Wild,
            1 => Pat::Nil,
            2 => Pat::Int(self.rng.gen_range(0..5)),
            3 if depth > 0 => Pat::Cons(Box::new(self.pat(0)), Box::new(self.pat(depth - 1))),
            _ => Pat::Var(self.name()),
        }
    }

    fn bind_pattern(&mut self, p: &Pat) -> usize {
        match p {
            Pat::Var(v) => {
                self.scope.push(v.clone());
                1
            }
            Pat::Cons(h, t) => self.bind_pattern(h) + self.bind_pattern(t),
            _ => 0,
        }
    }

    fn unbind(&mut self, n: usize) {
        for _ in 0..n {
            self.scope.pop();
        }
    }

    fn expr(&mut self, depth: u32) -> Expr {
        if depth == 0 {
            return self.leaf();
        }
        if self.integer_only {
            return self.int_expr(depth);
        }
        let d = depth - 1;
        match self.rng.gen_range(0..14) {
            0 | 1 => self.leaf(),
            2 | 3 => {
                let op = *["+", "-", "*", "/", "=", "<", ">"]
                    .choose(self.rng)
                    .unwrap();
                Expr::Bin(op, Box::new(self.expr(d)), Box::new(self.expr(d)))
            }
            4 => Expr::Cons(Box::new(self.expr(d)), Box::new(self.expr(d))),
            5 | 6 => {
                let f = self.var();
                let n = self.rng.gen_range(1..4);
                Expr::App(Box::new(f), (0..n).map(|_| self.expr(d)).collect())
            }
            7 => {
                let n = self.rng.gen_range(0..4);
                Expr::List((0..n).map(|_| self.expr(d)).collect())
            }
            8 => Expr::Paren(Box::new(self.expr(d))),
            9 => {
                let scrutinee = self.expr(d);
                let n = self.rng.gen_range(1..4);
                let branches = (0..n)
                    .map(|_| {
                        let p = self.pat(2);
                        let bound = self.bind_pattern(&p);
                        let body = self.expr(d);
                        self.unbind(bound);
                        (p, body)
                    })
                    .collect();
                Expr::Match(Box::new(scrutinee), branches)
            }
            10 => {
                let n = self.rng.gen_range(1..3);
                let params: Vec<Pat> = (0..n).map(|_| self.param()).collect();
                let bound: usize = params.iter().map(|p| self.bind_pattern(p)).sum();
                let body = self.expr(d);
                self.unbind(bound);
                Expr::Fun(params, Box::new(body))
            }
            11 => Expr::If(
                Box::new(self.expr(d)),
                Box::new(self.expr(d)),
                Box::new(self.expr(d)),
            ),
            _ => {
                let name = self.name();
                let n = self.rng.gen_range(0..2);
                let params: Vec<Pat> = (0..n).map(|_| self.param()).collect();
                let bound: usize = params.iter().map(|p| self.bind_pattern(p)).sum();
                let rhs = self.expr(d);
                self.unbind(bound);
                self.scope.push(name.clone());
                let body = self.expr(d);
                self.scope.pop();
                Expr::LetIn(name, params, Box::new(rhs), Box::new(body))
            }
        }
    }

    fn param(&mut self) -> Pat {
        match self.rng.gen_range(0..5) {
            0 => Pat::Wild,
            1 => Pat::Cons(
                Box::new(Pat::Var(self.name())),
                Box::new(Pat::Var(self.name())),
            ),
            _ => Pat::Var(self.name()),
        }
    }

    fn int_expr(&mut self, depth: u32) -> Expr {
        let d = depth - 1;
        match self.rng.gen_range(0..10) {
            0 => self.leaf(),
            1..=3 => {
                let op = *["+", "-", "*", "=", "<", ">"].choose(self.rng).unwrap();
                Expr::Bin(
                    op,
                    Box::new(self.int_expr_or_leaf(d)),
                    Box::new(self.int_expr_or_leaf(d)),
                )
            }
            4 => {
                // divisors are non-zero literals so evaluation never fails
                let divisor = Expr::Int(self.rng.gen_range(1..9));
                Expr::Bin("/", Box::new(self.int_expr_or_leaf(d)), Box::new(divisor))
            }
            5 => {
                // repeat a subexpression so extraction has something to share
                let shared = self.int_expr_or_leaf(d);
                let op = *["+", "*", "-"].choose(self.rng).unwrap();
                Expr::Bin(
                    op,
                    Box::new(Expr::Paren(Box::new(shared.clone()))),
                    Box::new(Expr::Paren(Box::new(shared))),
                )
            }
            6 => Expr::If(
                Box::new(self.int_expr_or_leaf(d)),
                Box::new(self.int_expr_or_leaf(d)),
                Box::new(self.int_expr_or_leaf(d)),
            ),
            7 => {
                let name = self.name();
                let rhs = self.int_expr_or_leaf(d);
                self.scope.push(name.clone());
                let body = self.int_expr_or_leaf(d);
                self.scope.pop();
                Expr::LetIn(name, Vec::new(), Box::new(rhs), Box::new(body))
            }
            8 => {
                let scrutinee = self.int_expr_or_leaf(d);
                let k = self.rng.gen_range(0..3);
                let fallback = self.name();
                let first = self.int_expr_or_leaf(d);
                self.scope.push(fallback.clone());
                let rest = self.int_expr_or_leaf(d);
                self.scope.pop();
                Expr::Match(
                    Box::new(scrutinee),
                    vec![(Pat::Int(k), first), (Pat::Var(fallback), rest)],
                )
            }
            _ => match self.functions.choose(self.rng).cloned() {
                Some((f, arity)) => Expr::App(
                    Box::new(Expr::Var(f)),
                    (0..arity).map(|_| self.int_expr_or_leaf(d)).collect(),
                ),
                None => self.leaf(),
            },
        }
    }

    fn int_expr_or_leaf(&mut self, depth: u32) -> Expr {
        if depth == 0 {
            self.leaf()
        } else {
            self.int_expr(depth)
        }
    }
}

fn render(rng: &mut Rng8, items: &[(String, bool, Vec<Pat>, Expr)]) -> String {
    let mut p = Printer {
        rng,
        out: String::new(),
        indent: 1,
    };
    for (i, (name, recursive, params, rhs)) in items.iter().enumerate() {
        if i > 0 {
            p.out.push('\n');
            if p.rng.gen_ratio(1, 5) {
                p.out.push('\n');
            }
            if p.rng.gen_ratio(1, 10) {
                p.out.push_str("(* next *)\n");
            }
        }
        p.out.push_str("let ");
        if *recursive {
            p.out.push_str("rec ");
        }
        p.out.push_str(name);
        p.params(params);
        p.out.push_str(" = ");
        p.expr(rhs, OPEN, false);
    }
    p.out
}

/// A random program over the whole grammar. Names may be unbound.
pub fn program(rng: &mut Rng8) -> String {
    let n = rng.gen_range(1..5);
    let mut items = Vec::new();
    let mut g = Gen {
        rng,
        integer_only: false,
        scope: Vec::new(),
        functions: Vec::new(),
        fresh: 0,
    };
    for _ in 0..n {
        let name = g.name();
        let recursive = g.rng.gen_bool(0.3);
        let params: Vec<Pat> = (0..g.rng.gen_range(0..3)).map(|_| g.param()).collect();
        let bound: usize = params.iter().map(|p| g.bind_pattern(p)).sum();
        if recursive {
            g.scope.push(name.clone());
        }
        let depth = g.rng.gen_range(1..5);
        let rhs = g.expr(depth);
        if recursive {
            g.scope.pop();
        }
        g.unbind(bound);
        g.scope.push(name.clone());
        items.push((name, recursive, params, rhs));
    }
    render(rng, &items)
}

/// A closed program of integer computations whose items all evaluate.
pub fn integer_program(rng: &mut Rng8) -> String {
    let n = rng.gen_range(1..5);
    let mut items = Vec::new();
    let mut g = Gen {
        rng,
        integer_only: true,
        scope: Vec::new(),
        functions: Vec::new(),
        fresh: 0,
    };
    for _ in 0..n {
        let name = g.name();
        let arity = if g.rng.gen_bool(0.3) {
            g.rng.gen_range(1..3)
        } else {
            0
        };
        let params: Vec<Pat> = (0..arity).map(|_| Pat::Var(g.name())).collect();
        let bound: usize = params.iter().map(|p| g.bind_pattern(p)).sum();
        let depth = g.rng.gen_range(1..5);
        let rhs = g.int_expr(depth);
        g.unbind(bound);
        if arity > 0 {
            g.functions.push((name.clone(), arity));
        } else {
            g.scope.push(name.clone());
        }
        items.push((name, false, params, rhs));
    }
    render(rng, &items)
}

// ---------------------------------------------------------------------------
// Interpreter

#[derive(Debug, Clone)]
pub enum Value {
    Int(i64),
    List(Vec<Value>),
    Closure(Closure),
}

#[derive(Debug, Clone)]
pub struct Closure {
    params: Vec<CstNode>,
    body: CstNode,
    env: Env,
    /// Set for `let rec` functions, which see themselves under this name.
    own_name: Option<String>,
}

impl PartialEq for Value {
    fn eq(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Int(a), Value::Int(b)) => a == b,
            (Value::List(a), Value::List(b)) => a == b,
            _ => false,
        }
    }
}

type Env = Vec<(String, Value)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalError(pub String);

fn lookup(env: &Env, name: &str) -> Result<Value, EvalError> {
    env.iter()
        .rev()
        .find(|(n, _)| n == name)
        .map(|(_, v)| v.clone())
        .ok_or_else(|| EvalError(format!("unbound `{name}`")))
}

fn int(v: Value) -> Result<i64, EvalError> {
    match v {
        Value::Int(n) => Ok(n),
        other => Err(EvalError(format!("expected an integer, got {other:?}"))),
    }
}

/// Binds `value` against `pattern`, or returns `false` on mismatch.
fn bind(pattern: &CstNode, value: &Value, env: &mut Env) -> bool {
    match (&pattern.kind, value) {
        (NodeKind::Parameter, _) => bind(&pattern.children[0], value, env),
        (NodeKind::Ident(name), _) => {
            env.push((name.clone(), value.clone()));
            true
        }
        (NodeKind::IntLit(digits), Value::Int(n)) => digits.parse::<i64>().ok() == Some(*n),
        (NodeKind::Pattern(kind), _) => {
            use structedit_core::cst::PatternKind;
            match (kind, value) {
                (PatternKind::Wildcard, _) => true,
                (PatternKind::Nil, Value::List(items)) => items.is_empty(),
                (PatternKind::Paren, _) => bind(&pattern.children[0], value, env),
                (PatternKind::Cons, Value::List(items)) if !items.is_empty() => {
                    bind(&pattern.children[0], &items[0], env)
                        && bind(&pattern.children[1], &Value::List(items[1..].to_vec()), env)
                }
                _ => false,
            }
        }
        _ => false,
    }
}

fn params_of(node: &CstNode) -> Vec<CstNode> {
    node.children
        .iter()
        .filter(|c| c.kind == NodeKind::Parameter)
        .cloned()
        .collect()
}

const MAX_CALL_DEPTH: usize = 48;

thread_local! {
    static CALL_DEPTH: std::cell::Cell<usize> = const { std::cell::Cell::new(0) };
}

fn apply(f: Value, args: Vec<Value>, fuel: &mut u64) -> Result<Value, EvalError> {
    let depth = CALL_DEPTH.with(|d| d.get());
    if depth >= MAX_CALL_DEPTH {
        return Err(EvalError("call depth exceeded".into()));
    }
    CALL_DEPTH.with(|d| d.set(depth + 1));
    let result = apply_inner(f, args, fuel);
    CALL_DEPTH.with(|d| d.set(depth));
    result
}

fn apply_inner(f: Value, args: Vec<Value>, fuel: &mut u64) -> Result<Value, EvalError> {
    let mut f = f;
    let mut args = args.into_iter();
    loop {
        let Value::Closure(c) = f else {
            return Err(EvalError("applied a non-function".into()));
        };
        let mut env = c.env.clone();
        if let Some(name) = &c.own_name {
            env.push((name.clone(), Value::Closure(c.clone())));
        }
        let mut taken = 0;
        for param in &c.params {
            match args.next() {
                Some(arg) => {
                    if !bind(param, &arg, &mut env) {
                        return Err(EvalError("parameter pattern did not match".into()));
                    }
                    taken += 1;
                }
                None => break,
            }
        }
        if taken < c.params.len() {
            // partial application: remember what was bound so far
            return Ok(Value::Closure(Closure {
                params: c.params[taken..].to_vec(),
                body: c.body.clone(),
                env,
                own_name: None,
            }));
        }
        let result = eval(&c.body, &env, fuel)?;
        match args.len() {
            0 => return Ok(result),
            _ => f = result,
        }
    }
}

pub fn eval(node: &CstNode, env: &Env, fuel: &mut u64) -> Result<Value, EvalError> {
    if *fuel == 0 {
        return Err(EvalError("out of fuel".into()));
    }
    *fuel -= 1;
    let ch = &node.children;
    match &node.kind {
        NodeKind::Ident(name) => lookup(env, name),
        NodeKind::IntLit(digits) => digits
            .parse::<i64>()
            .map(Value::Int)
            .map_err(|_| EvalError(format!("literal {digits} out of range"))),
        NodeKind::ParenExpr => eval(&ch[0], env, fuel),
        NodeKind::ListExpr => Ok(Value::List(
            ch.iter()
                .map(|c| eval(c, env, fuel))
                .collect::<Result<_, _>>()?,
        )),
        NodeKind::ConsExpr => {
            let head = eval(&ch[0], env, fuel)?;
            match eval(&ch[1], env, fuel)? {
                Value::List(mut tail) => {
                    tail.insert(0, head);
                    Ok(Value::List(tail))
                }
                _ => Err(EvalError("cons onto a non-list".into())),
            }
        }
        NodeKind::BinOpExpr(op) => {
            let a = int(eval(&ch[0], env, fuel)?)?;
            let b = int(eval(&ch[1], env, fuel)?)?;
            Ok(Value::Int(match op {
                BinOp::Add => a.wrapping_add(b),
                BinOp::Sub => a.wrapping_sub(b),
                BinOp::Mul => a.wrapping_mul(b),
                BinOp::Div if b == 0 => return Err(EvalError("division by zero".into())),
                BinOp::Div => a.wrapping_div(b),
                BinOp::Eq => (a == b) as i64,
                BinOp::Lt => (a < b) as i64,
                BinOp::Gt => (a > b) as i64,
            }))
        }
        NodeKind::IfExpr => {
            if int(eval(&ch[0], env, fuel)?)? != 0 {
                eval(&ch[1], env, fuel)
            } else {
                eval(&ch[2], env, fuel)
            }
        }
        NodeKind::AppExpr => {
            let f = eval(&ch[0], env, fuel)?;
            let args = ch[1..]
                .iter()
                .map(|c| eval(c, env, fuel))
                .collect::<Result<_, _>>()?;
            apply(f, args, fuel)
        }
        NodeKind::FunExpr => Ok(Value::Closure(Closure {
            params: params_of(node),
            body: ch.last().unwrap().clone(),
            env: env.clone(),
            own_name: None,
        })),
        NodeKind::MatchExpr => {
            let scrutinee = eval(&ch[0], env, fuel)?;
            for branch in &ch[1..] {
                let mut inner = env.clone();
                if bind(&branch.children[0], &scrutinee, &mut inner) {
                    return eval(&branch.children[1], &inner, fuel);
                }
            }
            Err(EvalError("no branch matched".into()))
        }
        NodeKind::LetBinding { .. } => {
            let (name, value) = binding_value(node, env, fuel)?;
            let mut inner = env.clone();
            inner.push((name, value));
            eval(ch.last().unwrap(), &inner, fuel)
        }
        other => Err(EvalError(format!("cannot evaluate {}", other.name()))),
    }
}

/// The name and value a `let` introduces, ignoring any `in` body.
fn binding_value(node: &CstNode, env: &Env, fuel: &mut u64) -> Result<(String, Value), EvalError> {
    let NodeKind::LetBinding { recursive } = node.kind else {
        return Err(EvalError("not a binding".into()));
    };
    let name = node.children[0].ident_name().unwrap().to_string();
    let params = params_of(node);
    let rhs = &node.children[1 + params.len()];
    let value = if params.is_empty() {
        eval(rhs, env, fuel)?
    } else {
        Value::Closure(Closure {
            params,
            body: rhs.clone(),
            env: env.clone(),
            own_name: recursive.then(|| name.clone()),
        })
    };
    Ok((name, value))
}

/// Values of all items in order.
pub fn run_program(program: &CstNode) -> Result<Vec<(String, Value)>, EvalError> {
    let mut env = Env::new();
    let mut fuel = 1_000_000;
    for item in &program.children {
        let (name, value) = binding_value(item, &env, &mut fuel)?;
        env.push((name, value));
    }
    Ok(env)
}

/// Integer results of the program's non-function items, or of applying
/// each function item to a few fixed arguments.
pub fn observe(program: &CstNode) -> Result<Vec<(String, Vec<i64>)>, EvalError> {
    let env = run_program(program)?;
    let mut fuel = 1_000_000;
    env.into_iter()
        .map(|(name, value)| {
            let observed = match value {
                Value::Int(n) => vec![n],
                Value::Closure(c) => {
                    let arity = c.params.len();
                    (0..3)
                        .map(|k| {
                            let args = (0..arity).map(|i| Value::Int(k * 7 + i as i64)).collect();
                            int(apply(Value::Closure(c.clone()), args, &mut fuel)?)
                        })
                        .collect::<Result<_, _>>()?
                }
                Value::List(_) => return Err(EvalError("list-valued item".into())),
            };
            Ok((name, observed))
        })
        .collect()
}
