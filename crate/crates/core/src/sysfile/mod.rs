//! Plain-text system files.
//!
//! ```text
//! # Van der Pol, eliminate y
//! vars y;
//! keep z;
//! y' = z
//! (1 - y^2)*z - y
//! ```
//!
//! Header statements `vars`, `keep` and `params` declare the unknowns to
//! eliminate, the unknowns to keep and the constant parameters. Every other
//! statement is an equation `lhs = rhs`, or a bare polynomial meaning `= 0`.
//! Statements end at a newline or `;`. Derivatives are written `x'`, `x''` or
//! `x^(k)`; `^n` with a bare integer is a power. Division is allowed by nonzero
//! constants only. `#` starts a comment.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::diffring::{DiffError, DiffSystem};
use crate::polycore::{Coeff, Polynomial, VarRegistry, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Number(Q),
    Prime,
    Op(char),
    LParen,
    RParen,
    Comma,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    line: usize,
    line_start: usize,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex_statement(text: &str, line: usize, offset: usize) -> Result<Vec<Spanned>, ParseError> {
    let mut lx = Lexer {
        chars: text.char_indices().peekable(),
        line,
        line_start: 0,
    };
    let mut out = Vec::new();
    while let Some(&(i, c)) = lx.chars.peek() {
        let column = offset + text[lx.line_start..i].chars().count() + 1;
        let err = |message: String| ParseError {
            line: lx.line,
            column,
            message,
        };
        if c.is_whitespace() {
            lx.chars.next();
            continue;
        }
        let tok = if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, c)) = lx.chars.peek() {
                if c.is_alphanumeric() || c == '_' {
                    s.push(c);
                    lx.chars.next();
                } else {
                    break;
                }
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() || c == '.' {
            let mut s = String::new();
            while let Some(&(_, c)) = lx.chars.peek() {
                if c.is_ascii_digit() || c == '.' {
                    s.push(c);
                    lx.chars.next();
                } else {
                    break;
                }
            }
            Tok::Number(parse_number(&s).ok_or_else(|| err(format!("malformed number `{s}`")))?)
        } else {
            lx.chars.next();
            match c {
                '\'' | '′' => Tok::Prime,
                '+' | '-' | '−' | '*' | '/' | '^' | '=' => Tok::Op(if c == '−' { '-' } else { c }),
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                other => return Err(err(format!("unexpected character `{other}`"))),
            }
        };
        out.push(Spanned {
            tok,
            line: lx.line,
            column,
        });
    }
    Ok(out)
}

fn parse_number(s: &str) -> Option<Q> {
    match s.split_once('.') {
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
        Some((int, frac)) => {
            if frac.contains('.') || (int.is_empty() && frac.is_empty()) {
                return None;
            }
            let int: BigInt = if int.is_empty() { BigInt::zero() } else { int.parse().ok()? };
            let frac_val: BigInt = if frac.is_empty() { BigInt::zero() } else { frac.parse().ok()? };
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            Some(Q::new(int * &scale + frac_val, scale))
        }
    }
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    line: usize,
    registry: &'a Arc<VarRegistry>,
    declared: &'a HashMap<String, Group>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Group {
    Eliminate,
    Keep,
    Param,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = match self.toks.get(self.pos).or(self.toks.last()) {
            Some(s) => (s.line, s.column),
            None => (self.line, 1),
        };
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat_op('+') {
                acc = &acc + &self.term()?;
            } else if self.eat_op('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_op('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat_op('/') {
                let at = self.pos;
                let den = self.unary()?;
                if !den.is_constant() || den.is_zero() {
                    self.pos = at;
                    return Err(self.error("division is only allowed by a nonzero constant"));
                }
                let c = den.terms()[0].1.clone();
                acc = acc.scale(&Coeff::inv(&c).expect("nonzero"));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if self.eat_op('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat_op('+') {
            return self.unary();
        }
        self.power()
    }

    fn small_int(&mut self) -> Result<u32, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Number(q)) if q.is_integer() => {
                let v = u32::try_from(q.to_integer()).map_err(|_| self.error("exponent out of range"))?;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.error("expected a nonnegative integer")),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.eat_op('^') {
            let e = if self.peek() == Some(&Tok::LParen) {
                self.pos += 1;
                let e = self.small_int()?;
                self.expect(Tok::RParen)?;
                e
            } else {
                self.small_int()?
            };
            if e == 0 && base.is_zero() {
                return Err(self.error("0^0 is undefined"));
            }
            if e == 0 {
                return Ok(Polynomial::from_int(self.registry, 1));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {}", describe(&tok))))
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Number(q)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.registry, q))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                let Some(&group) = self.declared.get(&name) else {
                    return Err(self.error(format!("undeclared identifier `{name}`")));
                };
                self.pos += 1;
                let mut order = 0u32;
                while self.peek() == Some(&Tok::Prime) {
                    self.pos += 1;
                    order += 1;
                }
                // `x^(k)` directly after a name is a derivative
                if order == 0
                    && self.peek() == Some(&Tok::Op('^'))
                    && self.toks.get(self.pos + 1).map(|s| &s.tok) == Some(&Tok::LParen)
                {
                    self.pos += 2;
                    order = self.small_int()?;
                    self.expect(Tok::RParen)?;
                }
                if order > 0 && group == Group::Param {
                    return Err(self.error(format!("parameter `{name}` cannot be differentiated")));
                }
                let idx = self.registry.intern(&name, order);
                Ok(Polynomial::var(self.registry, idx))
            }
            Some(t) => Err(self.error(format!("unexpected {}", describe(&t)))),
            None => Err(self.error("unexpected end of statement")),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Number(q) => format!("number `{q}`"),
        Tok::Prime => "`'`".into(),
        Tok::Op(c) => format!("`{c}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
    }
}

/// A parsed system file.
#[derive(Clone, Debug)]
pub struct SystemFile {
    pub system: DiffSystem,
}

impl SystemFile {
    pub fn registry(&self) -> &Arc<VarRegistry> {
        self.system.registry()
    }
}

fn split_statements(src: &str) -> Vec<(usize, usize, &str)> {
    let mut out = Vec::new();
    for (ln, line) in src.lines().enumerate() {
        let line = match line.find('#') {
            Some(i) => &line[..i],
            None => line,
        };
        let mut offset = 0;
        for part in line.split(';') {
            if !part.trim().is_empty() {
                out.push((ln + 1, offset, part));
            }
            offset += part.chars().count() + 1;
        }
    }
    out
}

/// Parses a system file.
pub fn parse_system(src: &str) -> Result<SystemFile, ParseError> {
    let registry = VarRegistry::new();
    let mut declared: HashMap<String, Group> = HashMap::new();
    let mut groups: [Vec<String>; 3] = Default::default();
    let mut equations = Vec::new();
    for (line, offset, stmt) in split_statements(src) {
        let toks = lex_statement(stmt, line, offset)?;
        let header = match toks.first().map(|t| &t.tok) {
            Some(Tok::Ident(k)) if k == "vars" => Some(Group::Eliminate),
            Some(Tok::Ident(k)) if k == "keep" => Some(Group::Keep),
            Some(Tok::Ident(k)) if k == "params" => Some(Group::Param),
            _ => None,
        };
        // a header keyword followed by `=` or an operator is an ordinary expression
        let is_header = header.is_some()
            && toks
                .get(1)
                .is_none_or(|t| matches!(t.tok, Tok::Ident(_)));
        if let (Some(group), true) = (header, is_header) {
            if !equations.is_empty() {
                return Err(ParseError {
                    line,
                    column: toks[0].column,
                    message: "declarations must precede equations".into(),
                });
            }
            let mut expect_name = true;
            for t in &toks[1..] {
                match (&t.tok, expect_name) {
                    (Tok::Ident(n), true) => {
                        if declared.insert(n.clone(), group).is_some() {
                            return Err(ParseError {
                                line,
                                column: t.column,
                                message: format!("`{n}` declared twice"),
                            });
                        }
                        registry.intern(n, 0);
                        if group == Group::Param {
                            registry.declare_constant(n);
                        }
                        groups[group as usize].push(n.clone());
                        expect_name = false;
                    }
                    (Tok::Comma, false) => expect_name = true,
                    _ => {
                        return Err(ParseError {
                            line,
                            column: t.column,
                            message: "expected a comma-separated list of names".into(),
                        })
                    }
                }
            }
            continue;
        }
        let mut parser = Parser {
            toks,
            pos: 0,
            line,
            registry: &registry,
            declared: &declared,
        };
        let lhs = parser.expr()?;
        let eq = if parser.eat_op('=') {
            let rhs = parser.expr()?;
            &lhs - &rhs
        } else {
            lhs
        };
        if parser.pos < parser.toks.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        if !eq.is_zero() {
            equations.push(eq);
        }
    }
    let [eliminate, keep, params] = groups;
    let system = DiffSystem::new(&registry, equations, eliminate, keep, params).map_err(|e: DiffError| ParseError {
        line: 0,
        column: 0,
        message: e.to_string(),
    })?;
    Ok(SystemFile { system })
}

/// Renders a system in the file format; parsing the output gives back an equal system.
pub fn print_system(sys: &DiffSystem) -> String {
    let mut out = String::new();
    for (kw, names) in [
        ("vars", sys.eliminate_names()),
        ("keep", sys.keep_names()),
        ("params", sys.param_names()),
    ] {
        if !names.is_empty() {
            out.push_str(&format!("{kw} {};\n", names.join(", ")));
        }
    }
    for eq in sys.equations() {
        out.push_str(&eq.to_string());
        out.push('\n');
    }
    out
}

/// Equality of systems over possibly different registries, matching variables by name.
pub fn same_system(a: &DiffSystem, b: &DiffSystem) -> bool {
    if a.eliminate_names() != b.eliminate_names()
        || a.keep_names() != b.keep_names()
        || a.param_names() != b.param_names()
        || a.equations().len() != b.equations().len()
    {
        return false;
    }
    let translate = |p: &Polynomial| -> Vec<(Vec<(String, u32, u32)>, Q)> {
        let reg = p.registry();
        let mut terms: Vec<_> = p
            .terms()
            .iter()
            .map(|(m, c)| {
                let mut vars: Vec<(String, u32, u32)> = m
                    .iter()
                    .map(|(v, e)| {
                        let dv = reg.var(v);
                        (dv.name, dv.order, e)
                    })
                    .collect();
                vars.sort();
                (vars, c.clone())
            })
            .collect();
        terms.sort_by(|x, y| x.0.cmp(&y.0));
        terms
    };
    a.equations()
        .iter()
        .zip(b.equations())
        .all(|(p, q)| translate(p) == translate(q))
}

impl fmt::Display for SystemFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_system(&self.system))
    }
}
