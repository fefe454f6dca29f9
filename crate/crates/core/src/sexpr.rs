//! S-expression syntax for terms and paths.
//!
//! Grammar:
//!
//! ```text
//! expr ::= (var x) | (const c) | (lam x <expr>) | (app <expr> <expr>)
//! path ::= (refl <expr>) | (symm <path>) | (trans <path> <path>)
//!        | (beta <expr>) | (eta <expr>) | (xi x <path>)
//!        | (nu <path> <expr>) | (mu <expr> <path>)
//! ```
//!
//! Whitespace-insensitive; identifiers are `[A-Za-z][A-Za-z0-9_']*`.
//! Printing then parsing yields a structurally equal value.

use std::fmt;

use thiserror::Error;

use crate::expr::{Expr, Name};
use crate::path::Path;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at {line}:{col}: {msg}")]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone)]
enum Token {
    LParen(usize, usize),
    RParen(usize, usize),
    Atom(String, usize, usize),
}

impl Token {
    fn at(&self) -> (usize, usize) {
        match self {
            Token::LParen(l, c) | Token::RParen(l, c) => (*l, *c),
            Token::Atom(_, l, c) => (*l, *c),
        }
    }
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> SyntaxError {
    SyntaxError {
        line,
        col,
        msg: msg.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut atom = String::new();
    let mut atom_at = (0usize, 0usize);

    let flush = |atom: &mut String, at: (usize, usize), out: &mut Vec<Token>| {
        if !atom.is_empty() {
            out.push(Token::Atom(std::mem::take(atom), at.0, at.1));
        }
    };

    for ch in text.chars() {
        match ch {
            '(' => {
                flush(&mut atom, atom_at, &mut out);
                out.push(Token::LParen(line, col));
            }
            ')' => {
                flush(&mut atom, atom_at, &mut out);
                out.push(Token::RParen(line, col));
            }
            c if c.is_whitespace() => flush(&mut atom, atom_at, &mut out),
            c => {
                if atom.is_empty() {
                    atom_at = (line, col);
                }
                atom.push(c);
            }
        }
        if ch == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    flush(&mut atom, atom_at, &mut out);
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    index: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Parser, SyntaxError> {
        Ok(Parser {
            tokens: tokenize(text)?,
            index: 0,
        })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.index)
    }

    fn next(&mut self) -> Result<Token, SyntaxError> {
        let tok = self
            .tokens
            .get(self.index)
            .cloned()
            .ok_or_else(|| err(0, 0, "unexpected end of input"))?;
        self.index += 1;
        Ok(tok)
    }

    fn expect_lparen(&mut self) -> Result<(usize, usize), SyntaxError> {
        match self.next()? {
            Token::LParen(l, c) => Ok((l, c)),
            t => {
                let (l, c) = t.at();
                Err(err(l, c, "expected '('"))
            }
        }
    }

    fn expect_rparen(&mut self) -> Result<(), SyntaxError> {
        match self.next()? {
            Token::RParen(_, _) => Ok(()),
            t => {
                let (l, c) = t.at();
                Err(err(l, c, "expected ')'"))
            }
        }
    }

    fn expect_head(&mut self) -> Result<(String, usize, usize), SyntaxError> {
        match self.next()? {
            Token::Atom(s, l, c) => Ok((s, l, c)),
            t => {
                let (l, c) = t.at();
                Err(err(l, c, "expected a keyword"))
            }
        }
    }

    fn expect_name(&mut self) -> Result<Name, SyntaxError> {
        match self.next()? {
            Token::Atom(s, l, c) => {
                Name::new(s.clone()).map_err(|_| err(l, c, format!("invalid identifier {s:?}")))
            }
            t => {
                let (l, c) = t.at();
                Err(err(l, c, "expected an identifier"))
            }
        }
    }

    fn parse_expr(&mut self) -> Result<Expr, SyntaxError> {
        self.expect_lparen()?;
        let (head, l, c) = self.expect_head()?;
        let expr = match head.as_str() {
            "var" => Expr::Var(self.expect_name()?),
            "const" => Expr::Const(self.expect_name()?),
            "lam" => {
                let x = self.expect_name()?;
                let body = self.parse_expr()?;
                Expr::lam(x, body)
            }
            "app" => {
                let f = self.parse_expr()?;
                let a = self.parse_expr()?;
                Expr::app(f, a)
            }
            other => return Err(err(l, c, format!("unknown term form {other:?}"))),
        };
        self.expect_rparen()?;
        Ok(expr)
    }

    fn parse_path(&mut self) -> Result<Path, SyntaxError> {
        self.expect_lparen()?;
        let (head, l, c) = self.expect_head()?;
        let path = match head.as_str() {
            "refl" => Path::refl(self.parse_expr()?),
            "symm" => Path::symm(self.parse_path()?),
            "trans" => {
                let p = self.parse_path()?;
                let q = self.parse_path()?;
                Path::trans(p, q)
            }
            "beta" => Path::beta(self.parse_expr()?),
            "eta" => Path::eta(self.parse_expr()?),
            "xi" => {
                let x = self.expect_name()?;
                let p = self.parse_path()?;
                Path::xi(x, p)
            }
            "nu" => {
                let p = self.parse_path()?;
                let arg = self.parse_expr()?;
                Path::nu_l(p, arg)
            }
            "mu" => {
                let fun = self.parse_expr()?;
                let p = self.parse_path()?;
                Path::mu_r(fun, p)
            }
            other => return Err(err(l, c, format!("unknown path form {other:?}"))),
        };
        self.expect_rparen()?;
        Ok(path)
    }

    fn finish(&mut self) -> Result<(), SyntaxError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => {
                let (l, c) = t.at();
                Err(err(l, c, "trailing input"))
            }
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser::new(text)?;
    let e = p.parse_expr()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_path(text: &str) -> Result<Path, SyntaxError> {
    let mut p = Parser::new(text)?;
    let path = p.parse_path()?;
    p.finish()?;
    Ok(path)
}

/// Either kind of s-expression input, told apart by the head keyword.
#[derive(Debug, Clone, PartialEq)]
pub enum Input {
    Term(Expr),
    Arrow(Path),
}

pub fn parse_input(text: &str) -> Result<Input, SyntaxError> {
    let mut p = Parser::new(text)?;
    let save = p.index;
    p.expect_lparen()?;
    let (head, l, c) = p.expect_head()?;
    p.index = save;
    match head.as_str() {
        "var" | "const" | "lam" | "app" => {
            let e = p.parse_expr()?;
            p.finish()?;
            Ok(Input::Term(e))
        }
        "refl" | "symm" | "trans" | "beta" | "eta" | "xi" | "nu" | "mu" => {
            let path = p.parse_path()?;
            p.finish()?;
            Ok(Input::Arrow(path))
        }
        other => Err(err(l, c, format!("unknown form {other:?}"))),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(x) => write!(f, "(var {x})"),
            Expr::Const(c) => write!(f, "(const {c})"),
            Expr::Lam(x, b) => write!(f, "(lam {x} {b})"),
            Expr::App(g, a) => write!(f, "(app {g} {a})"),
        }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Path::Refl(e) => write!(f, "(refl {e})"),
            Path::Symm(p) => write!(f, "(symm {p})"),
            Path::Trans(p, q) => write!(f, "(trans {p} {q})"),
            Path::Beta(e) => write!(f, "(beta {e})"),
            Path::Eta(e) => write!(f, "(eta {e})"),
            Path::Xi(x, p) => write!(f, "(xi {x} {p})"),
            Path::NuL(p, a) => write!(f, "(nu {p} {a})"),
            Path::MuR(m, p) => write!(f, "(mu {m} {p})"),
        }
    }
}
