//! A small language for target functions.
//!
//! Variables `x1..xn`, numeric literals, the constants `pi` and `e`, the
//! operators `+ - * / ^` (with `^` binding tightest and associating to the
//! right, so `-x1^2` is `-(x1^2)`), and the functions `sin cos tan sinh cosh
//! tanh exp log sqrt`. Functions that are not real-analytic, such as `abs`,
//! are rejected.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;

use crate::approximate::TargetFunction;

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at column {}: {}", self.position + 1, self.message)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Exp,
    Log,
    Sqrt,
}

impl Func {
    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "tanh" => Func::Tanh,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }

    fn apply(self, v: f64) -> f64 {
        match self {
            Func::Sin => libm::sin(v),
            Func::Cos => libm::cos(v),
            Func::Tan => libm::tan(v),
            Func::Sinh => libm::sinh(v),
            Func::Cosh => libm::cosh(v),
            Func::Tanh => libm::tanh(v),
            Func::Exp => libm::exp(v),
            Func::Log => libm::log(v),
            Func::Sqrt => libm::sqrt(v),
        }
    }
}

const NON_ANALYTIC: &[&str] = &["abs", "floor", "ceil", "sign", "sgn", "min", "max", "round", "trunc", "mod", "frac"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Ast {
    Num(f64),
    /// Zero-based variable index.
    Var(usize),
    Neg(Box<Ast>),
    Bin(BinOp, Box<Ast>, Box<Ast>),
    Call(Func, Box<Ast>),
}

impl Ast {
    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            Ast::Num(v) => *v,
            Ast::Var(i) => x[*i],
            Ast::Neg(a) => -a.eval(x),
            Ast::Bin(op, a, b) => {
                let (a, b) = (a.eval(x), b.eval(x));
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => a / b,
                    BinOp::Pow => libm::pow(a, b),
                }
            }
            Ast::Call(f, a) => f.apply(a.eval(x)),
        }
    }
}

/// A parsed function of `dims` variables.
#[derive(Debug, Clone, PartialEq)]
pub struct Expression {
    dims: usize,
    source: String,
    ast: Ast,
}

impl Expression {
    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn ast(&self) -> &Ast {
        &self.ast
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.ast.eval(x)
    }
}

impl TargetFunction for Expression {
    fn arity(&self) -> usize {
        self.dims
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.ast.eval(x)
    }
}

/// Parse `text` as a function of `x1..x{dims}`.
pub fn parse_expression(text: &str, dims: usize) -> Result<Expression, ParseError> {
    let mut p = Parser { src: text, pos: 0, dims };
    p.skip_ws();
    if p.pos >= text.len() {
        return Err(p.error("empty expression"));
    }
    let ast = p.expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error(format!("unexpected '{}'", p.peek().unwrap())));
    }
    Ok(Expression { dims, source: text.to_string(), ast })
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    dims: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError { position: self.pos, message: msg.into() }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat('+') {
                BinOp::Add
            } else if self.eat('-') {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            lhs = Ast::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat('*') {
                BinOp::Mul
            } else if self.eat('/') {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            let rhs = self.unary()?;
            lhs = Ast::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Ast, ParseError> {
        if self.eat('-') {
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast, ParseError> {
        let base = self.primary()?;
        if self.eat('^') {
            let exp = self.unary()?;
            return Ok(Ast::Bin(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Ast, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                self.identifier(name, start)
            }
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
        }
    }

    fn identifier(&mut self, name: &str, start: usize) -> Result<Ast, ParseError> {
        let at = |msg: String| ParseError { position: start, message: msg };
        if let Some(f) = Func::from_name(name) {
            if !self.eat('(') {
                return Err(self.error(format!("expected '(' after '{name}'")));
            }
            let arg = self.expr()?;
            if !self.eat(')') {
                return Err(self.error("expected ')'"));
            }
            return Ok(Ast::Call(f, Box::new(arg)));
        }
        if NON_ANALYTIC.contains(&name) {
            return Err(at(format!(
                "'{name}' is not real-analytic; the solver needs functions that are smooth (real-analytic) on the box"
            )));
        }
        match name {
            "pi" => return Ok(Ast::Num(core::f64::consts::PI)),
            "e" => return Ok(Ast::Num(core::f64::consts::E)),
            _ => {}
        }
        if let Some(rest) = name.strip_prefix('x') {
            if let Ok(k) = rest.parse::<usize>() {
                if k >= 1 && k <= self.dims && !rest.starts_with('0') {
                    return Ok(Ast::Var(k - 1));
                }
                return Err(at(format!("variable '{name}' out of range; expected x1..x{}", self.dims)));
            }
        }
        Err(at(format!("unknown identifier '{name}'")))
    }

    fn number(&mut self) -> Result<Ast, ParseError> {
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut i = self.pos;
        while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
            i += 1;
        }
        if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
            let mut j = i + 1;
            if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                j += 1;
            }
            if j < bytes.len() && bytes[j].is_ascii_digit() {
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                i = j;
            }
        }
        let text = &self.src[start..i];
        match text.parse::<f64>() {
            Ok(v) => {
                self.pos = i;
                Ok(Ast::Num(v))
            }
            Err(_) => Err(ParseError { position: start, message: format!("invalid number '{text}'") }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variable() {
        let e = parse_expression("x1", 1).unwrap();
        assert_eq!(e.eval(&[0.25]), 0.25);
    }

    #[test]
    fn composite() {
        let e = parse_expression("sin(x1)*exp(x2) - 1", 2).unwrap();
        let (a, b) = (0.3, -0.7);
        assert_eq!(e.eval(&[a, b]), libm::sin(a) * libm::exp(b) - 1.0);
    }

    #[test]
    fn rejects_abs() {
        let err = parse_expression("abs(x1)", 1).unwrap_err();
        assert!(err.message.contains("real-analytic"));
        assert_eq!(err.position, 0);
    }

    #[test]
    fn precedence() {
        let e = parse_expression("-x1^2", 1).unwrap();
        assert_eq!(e.eval(&[3.0]), -9.0);
        let e = parse_expression("2^3^2", 1).unwrap();
        assert_eq!(e.eval(&[0.0]), 512.0);
        let e = parse_expression("1 - 2 - 3 + 4*5/2", 1).unwrap();
        assert_eq!(e.eval(&[0.0]), 6.0);
        let e = parse_expression("2^-1", 1).unwrap();
        assert_eq!(e.eval(&[0.0]), 0.5);
        let e = parse_expression("1e-3*x1 + 2E2", 1).unwrap();
        assert_eq!(e.eval(&[1000.0]), 201.0);
        let e = parse_expression("e*pi", 1).unwrap();
        assert_eq!(e.eval(&[0.0]), core::f64::consts::E * core::f64::consts::PI);
    }

    #[test]
    fn errors_carry_position() {
        let err = parse_expression("x1 + * 2", 1).unwrap_err();
        assert_eq!(err.position, 5);
        let err = parse_expression("x3", 2).unwrap_err();
        assert!(err.message.contains("out of range"));
        let err = parse_expression("foo(x1)", 1).unwrap_err();
        assert!(err.message.contains("unknown identifier"));
        assert!(parse_expression("(x1", 1).is_err());
        assert!(parse_expression("", 1).is_err());
        assert!(parse_expression("x1 x1", 1).is_err());
    }
}
