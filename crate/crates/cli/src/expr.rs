//! Expression language: lexer, recursive-descent parser and printer.
//!
//! Precedence, tightest first: `^` (integer exponent), unary `-`, `* /`, `+ -`.
//! Binary operators associate to the left.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ident {
    X,
    Y,
    Psi,
    R,
    DR,
    Psi1,
    Psi2,
    E2,
    E4,
    E6,
    Theta,
    Phi,
    PhiTilde,
    Lambda,
    Q,
}

impl Ident {
    pub const ALL: [Ident; 15] = [
        Ident::X,
        Ident::Y,
        Ident::Psi,
        Ident::R,
        Ident::DR,
        Ident::Psi1,
        Ident::Psi2,
        Ident::E2,
        Ident::E4,
        Ident::E6,
        Ident::Theta,
        Ident::Phi,
        Ident::PhiTilde,
        Ident::Lambda,
        Ident::Q,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Ident::X => "x",
            Ident::Y => "y",
            Ident::Psi => "psi",
            Ident::R => "R",
            Ident::DR => "DR",
            Ident::Psi1 => "Psi1",
            Ident::Psi2 => "Psi2",
            Ident::E2 => "E2",
            Ident::E4 => "E4",
            Ident::E6 => "E6",
            Ident::Theta => "theta",
            Ident::Phi => "phi",
            Ident::PhiTilde => "phitilde",
            Ident::Lambda => "lambda",
            Ident::Q => "q",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    /// `D = ∂θ + θ∂z`
    D,
    /// `D̃`
    Dt,
    Dz,
    Dtau,
    Dphi,
}

impl Op {
    pub const ALL: [Op; 5] = [Op::D, Op::Dt, Op::Dz, Op::Dtau, Op::Dphi];

    pub fn name(self) -> &'static str {
        match self {
            Op::D => "D",
            Op::Dt => "Dt",
            Op::Dz => "Dz",
            Op::Dtau => "Dtau",
            Op::Dphi => "Dphi",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    Ident(Ident),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Apply(Op, Box<Expr>),
}

const PREC_UNARY: u8 = 3;
const PREC_POW: u8 = 4;
const PREC_ATOM: u8 = 5;

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Bin(op, ..) => op.precedence(),
            Expr::Neg(_) => PREC_UNARY,
            Expr::Pow(..) => PREC_POW,
            _ => PREC_ATOM,
        }
    }
}

fn wrap(f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(n) => write!(f, "{n}"),
            Expr::Ident(i) => f.write_str(i.name()),
            Expr::Neg(e) => {
                f.write_str("-")?;
                wrap(f, e, e.precedence() < PREC_UNARY)
            }
            Expr::Bin(op, a, b) => {
                let p = op.precedence();
                wrap(f, a, a.precedence() < p)?;
                write!(f, " {} ", op.symbol())?;
                wrap(f, b, b.precedence() <= p)
            }
            Expr::Pow(base, n) => {
                wrap(f, base, base.precedence() < PREC_ATOM)?;
                write!(f, "^{n}")
            }
            Expr::Apply(op, e) => write!(f, "{}({e})", op.name()),
        }
    }
}

impl FromStr for Expr {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Expr> {
        parse(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Word(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut column) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            Tok::Num(text.parse().expect("digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Word(chars[start..i].iter().collect())
        } else if "+-*/^()".contains(c) {
            i += 1;
            Tok::Sym(c)
        } else {
            return Err(CliError::Syntax {
                line,
                column,
                message: format!("unexpected character '{c}'"),
            });
        };
        column += i - start;
        out.push(Token {
            tok,
            line: l0,
            column: c0,
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(t: &Token, message: impl Into<String>) -> CliError {
        CliError::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Num(n) => format!("number {n}"),
            Tok::Word(w) => format!("'{w}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::End => "end of input".into(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let t = self.peek();
            Err(Self::error(t, format!("expected '{c}', found {}", Self::describe(&t.tok))))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat('+') {
                BinOp::Add
            } else if self.eat('-') {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.term()?));
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat('*') {
                BinOp::Mul
            } else if self.eat('/') {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let mut base = self.atom()?;
        while self.eat('^') {
            let negative = self.eat('-');
            let t = self.next();
            let Tok::Num(n) = &t.tok else {
                return Err(Self::error(
                    &t,
                    format!("expected an integer exponent, found {}", Self::describe(&t.tok)),
                ));
            };
            let n: i64 = n
                .try_into()
                .map_err(|_| Self::error(&t, "exponent out of range"))?;
            base = Expr::Pow(Box::new(base), if negative { -n } else { n });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let t = self.next();
        match &t.tok {
            Tok::Num(n) => Ok(Expr::Num(n.clone())),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Word(w) => {
                if let Some(op) = Op::ALL.into_iter().find(|o| o.name() == w) {
                    if self.peek().tok == Tok::Sym('(') {
                        self.next();
                        let e = self.expr()?;
                        self.expect(')')?;
                        return Ok(Expr::Apply(op, Box::new(e)));
                    }
                }
                Ident::ALL
                    .into_iter()
                    .find(|i| i.name() == w)
                    .map(Expr::Ident)
                    .ok_or_else(|| CliError::UnknownIdentifier {
                        name: w.clone(),
                        line: t.line,
                        column: t.column,
                    })
            }
            other => Err(Self::error(&t, format!("unexpected {}", Self::describe(other)))),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let e = p.expr()?;
    let t = p.peek();
    if t.tok != Tok::End {
        return Err(Parser::error(t, format!("unexpected {}", Parser::describe(&t.tok))));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn column_of(src: &str) -> usize {
        match parse(src) {
            Err(CliError::Syntax { column, .. }) => column,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn double_caret_reports_column_three() {
        assert_eq!(column_of("x^^2"), 3);
    }

    #[test]
    fn precedence() {
        assert_eq!(parse("-x^2").unwrap(), Expr::Neg(Box::new(Expr::Pow(Box::new(Expr::Ident(Ident::X)), 2))));
        assert_eq!(parse("1 - x - y").unwrap().to_string(), "1 - x - y");
        assert_eq!(parse("1 - (x - y)").unwrap().to_string(), "1 - (x - y)");
        assert_eq!(parse("-(x*y)").unwrap().to_string(), "-(x * y)");
        assert_eq!(parse("(-x)^2").unwrap().to_string(), "(-x)^2");
        assert_eq!(parse("x^-2").unwrap(), Expr::Pow(Box::new(Expr::Ident(Ident::X)), -2));
    }

    #[test]
    fn unknown_identifier() {
        assert!(matches!(
            parse("x + foo"),
            Err(CliError::UnknownIdentifier { column: 5, .. })
        ));
    }

    #[test]
    fn operators() {
        assert_eq!(
            parse("D(Psi1) - 1 - phi*Psi2").unwrap().to_string(),
            "D(Psi1) - 1 - phi * Psi2"
        );
        assert!(parse("D(x").is_err());
    }
}
