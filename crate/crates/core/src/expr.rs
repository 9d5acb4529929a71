//! A small expression language for scalar curve components.
//!
//! Grammar (binding from loosest to tightest: `+ -`, then `* /`, then unary
//! minus, then `^`):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ['^' ['-'] integer]
//! atom   := number | identifier | function '(' expr ')' | '(' expr ')'
//! ```
//!
//! Exponents are integer literals, function arguments always take
//! parentheses, and the known functions are `sinh`, `cosh`, `sin`, `cos`,
//! `exp`, and `sqrt`. Any other identifier parses as a variable; evaluation
//! rejects variables that do not match the binding it was given.
//!
//! [`Expr`] implements `Display` with minimal parentheses, and printing then
//! reparsing returns the identical tree for every tree the parser can
//! produce (parser output never contains negative literals; a hand-built
//! `Lit(-2.0)` prints as `-2`, which reparses as negation of a literal).

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

use crate::jet::Jet;
use crate::jet::Series;

/// Abstract syntax tree of a scalar expression in one variable.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Lit(f64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// Base raised to an integer exponent.
    Pow(Box<Expr>, i32),
    Fun(Func, Box<Expr>),
}

/// The built-in univariate functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sinh,
    Cosh,
    Sin,
    Cos,
    Exp,
    Sqrt,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Sqrt => "sqrt",
        }
    }

    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }
}

/// Parse or evaluation failure.
#[derive(Clone, Debug, PartialEq)]
pub enum ExprError {
    /// Malformed input; `position` is a byte offset into the source string.
    Syntax { position: usize, message: String },
    /// An identifier that is neither the bound variable nor a known function.
    UnknownIdentifier { name: String },
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprError::Syntax { position, message } => {
                write!(f, "syntax error at byte {position}: {message}")
            }
            ExprError::UnknownIdentifier { name } => {
                write!(f, "unknown identifier `{name}`")
            }
        }
    }
}

impl core::error::Error for ExprError {}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn error<T>(&self, position: usize, message: &str) -> Result<T, ExprError> {
        Err(ExprError::Syntax {
            position,
            message: message.to_owned(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, expected: u8) -> bool {
        if self.peek() == Some(expected) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(b'/') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat(b'-') {
            let inner = self.unary()?;
            Ok(Expr::Neg(Box::new(inner)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let exponent = self.integer_exponent()?;
            Ok(Expr::Pow(Box::new(base), exponent))
        } else {
            Ok(base)
        }
    }

    fn integer_exponent(&mut self) -> Result<i32, ExprError> {
        self.skip_ws();
        let start = self.pos;
        let negative = self.eat(b'-');
        self.skip_ws();
        let digits_start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return self.error(digits_start, "expected an integer exponent after `^`");
        }
        // A trailing '.' would silently change meaning, so reject it here.
        if self.bytes.get(self.pos) == Some(&b'.') {
            return self.error(self.pos, "exponent must be an integer literal");
        }
        let text = &self.src[digits_start..self.pos];
        match text.parse::<i32>() {
            Ok(v) => Ok(if negative { -v } else { v }),
            Err(_) => self.error(start, "exponent does not fit in a 32-bit integer"),
        }
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return self.error(self.pos, "expected `)`");
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.identifier(),
            Some(c) => self.error(
                self.pos,
                &alloc::format!("unexpected character `{}`", c as char),
            ),
            None => self.error(self.pos, "unexpected end of input"),
        }
    }

    fn number(&mut self) -> Result<Expr, ExprError> {
        let start = self.pos;
        while self.pos < self.bytes.len() {
            let c = self.bytes[self.pos];
            if c.is_ascii_digit() || c == b'.' {
                self.pos += 1;
            } else if c == b'e' || c == b'E' {
                // Exponent part; an optional sign may follow immediately.
                self.pos += 1;
                if matches!(self.bytes.get(self.pos), Some(b'+') | Some(b'-')) {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
        let text = &self.src[start..self.pos];
        match text.parse::<f64>() {
            Ok(v) => Ok(Expr::Lit(v)),
            Err(_) => self.error(start, &alloc::format!("malformed number `{text}`")),
        }
    }

    fn identifier(&mut self) -> Result<Expr, ExprError> {
        let start = self.pos;
        while self.pos < self.bytes.len() {
            let c = self.bytes[self.pos];
            if c.is_ascii_alphanumeric() || c == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        let name = &self.src[start..self.pos];
        if let Some(func) = Func::from_name(name) {
            if !self.eat(b'(') {
                return self.error(
                    self.pos,
                    &alloc::format!("function `{name}` needs a parenthesized argument"),
                );
            }
            let arg = self.expr()?;
            if !self.eat(b')') {
                return self.error(self.pos, "expected `)`");
            }
            Ok(Expr::Fun(func, Box::new(arg)))
        } else {
            Ok(Expr::Var(name.to_owned()))
        }
    }
}

/// Parses one expression; the entire input must be consumed.
pub fn parse(src: &str) -> Result<Expr, ExprError> {
    let mut p = Parser::new(src);
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return p.error(p.pos, "unexpected trailing input");
    }
    Ok(e)
}

/// Evaluates the expression as a full coefficient series about `t`, with the
/// single variable `var` bound to the curve parameter.
pub fn eval_series(expr: &Expr, var: &str, t: f64) -> Result<Series, ExprError> {
    match expr {
        Expr::Lit(x) => Ok(Series::constant(*x)),
        Expr::Var(name) => {
            if name == var {
                Ok(Series::variable(t))
            } else {
                Err(ExprError::UnknownIdentifier { name: name.clone() })
            }
        }
        Expr::Neg(e) => Ok(-eval_series(e, var, t)?),
        Expr::Add(a, b) => Ok(eval_series(a, var, t)? + eval_series(b, var, t)?),
        Expr::Sub(a, b) => Ok(eval_series(a, var, t)? - eval_series(b, var, t)?),
        Expr::Mul(a, b) => Ok(eval_series(a, var, t)? * eval_series(b, var, t)?),
        Expr::Div(a, b) => Ok(eval_series(a, var, t)? / eval_series(b, var, t)?),
        Expr::Pow(base, n) => Ok(eval_series(base, var, t)?.powi(*n)),
        Expr::Fun(func, arg) => {
            let a = eval_series(arg, var, t)?;
            Ok(match func {
                Func::Sinh => a.sinh(),
                Func::Cosh => a.cosh(),
                Func::Sin => a.sin(),
                Func::Cos => a.cos(),
                Func::Exp => a.exp(),
                Func::Sqrt => a.sqrt(),
            })
        }
    }
}

/// Evaluates value and derivatives through order four at `t`.
pub fn eval_jet(expr: &Expr, var: &str, t: f64) -> Result<Jet, ExprError> {
    eval_series(expr, var, t).map(Jet::from_series)
}

/// Precedence level used by the printer; higher binds tighter.
fn level(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(..) => 3,
        Expr::Pow(..) => 4,
        Expr::Lit(..) | Expr::Var(..) | Expr::Fun(..) => 5,
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Expr, needs_parens: bool) -> fmt::Result {
    if needs_parens {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Lit(x) => write!(f, "{x}"),
            Expr::Var(name) => f.write_str(name),
            Expr::Neg(e) => {
                f.write_str("-")?;
                write_child(f, e, level(e) < 4)
            }
            Expr::Add(a, b) => {
                write_child(f, a, level(a) < 1)?;
                f.write_str(" + ")?;
                write_child(f, b, level(b) <= 1)
            }
            Expr::Sub(a, b) => {
                write_child(f, a, level(a) < 1)?;
                f.write_str(" - ")?;
                write_child(f, b, level(b) <= 1)
            }
            Expr::Mul(a, b) => {
                write_child(f, a, level(a) < 2)?;
                f.write_str("*")?;
                write_child(f, b, level(b) <= 2)
            }
            Expr::Div(a, b) => {
                write_child(f, a, level(a) < 2)?;
                f.write_str("/")?;
                write_child(f, b, level(b) <= 2)
            }
            Expr::Pow(base, n) => {
                write_child(f, base, level(base) < 5)?;
                write!(f, "^{n}")
            }
            Expr::Fun(func, arg) => write!(f, "{}({arg})", func.name()),
        }
    }
}
