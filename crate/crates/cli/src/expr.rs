//! The element expression grammar.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary | unary)*      juxtaposition multiplies
//! unary   := ('-' | '+') unary | power
//! power   := primary ('^' exponent)?
//! exponent:= integer | '(' ['-'] integer ['/' integer] ')' | '-' integer
//! primary := integer | identifier | '(' expr ')'
//! ```
//!
//! Identifiers name tower generators (`i`, `tau`), pinned parameters
//! (`alpha`, or `α`), basis labels of a Lie algebra, or the polynomial
//! variable `t`, depending on where the expression is evaluated. A fractional
//! exponent `a^(1/q)` takes a `q`-th root for `q` a power of `p`.

use std::fmt;

use modind_core::{Fe, Field, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Ident(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// `base^(num/den)`.
    Pow(Box<Expr>, i64, u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Character offset into the expression.
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at character {}: {}", self.offset, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(i64),
    Ident(String),
    Sym(char),
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text.parse::<i64>().map_err(|_| ParseError {
                offset: start,
                message: format!("integer `{}` is too large", text),
            })?;
            out.push((start, Token::Int(n)));
        } else if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            out.push((start, Token::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Token::Sym(c)));
            i += 1;
        } else if c == '·' || c == '−' {
            out.push((i, Token::Sym(if c == '·' { '*' } else { '-' })));
            i += 1;
        } else {
            return Err(ParseError {
                offset: i,
                message: format!("unexpected character `{}`", c),
            });
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else if matches!(
                self.peek(),
                Some(Token::Int(_)) | Some(Token::Ident(_)) | Some(Token::Sym('('))
            ) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let (num, den) = self.exponent()?;
        Ok(Expr::Pow(Box::new(base), num, den))
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let negative = self.eat('-');
        match self.peek() {
            Some(Token::Int(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(if negative { -n } else { n })
            }
            _ => self.error("expected an integer exponent"),
        }
    }

    fn exponent(&mut self) -> Result<(i64, u64), ParseError> {
        if self.eat('(') {
            let num = self.integer()?;
            let den = if self.eat('/') {
                match self.integer()? {
                    d if d > 0 => d as u64,
                    _ => return self.error("exponent denominator must be positive"),
                }
            } else {
                1
            };
            if !self.eat(')') {
                return self.error("expected `)`");
            }
            Ok((num, den))
        } else {
            Ok((self.integer()?, 1))
        }
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Token::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Ident(canonical_name(&s)))
            }
            Some(Token::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.error("expected `)`");
                }
                Ok(e)
            }
            Some(t) => self.error(format!("unexpected `{}`", token_text(&t))),
            None => self.error("unexpected end of expression"),
        }
    }
}

fn token_text(t: &Token) -> String {
    match t {
        Token::Int(n) => n.to_string(),
        Token::Ident(s) => s.clone(),
        Token::Sym(c) => c.to_string(),
    }
}

/// Maps Greek parameter letters to their spelled-out names.
pub fn canonical_name(name: &str) -> String {
    match name {
        "α" => "alpha",
        "β" => "beta",
        "λ" => "lambda",
        "τ" => "tau",
        "μ" => "mu",
        "ν" => "nu",
        "κ" => "kappa",
        other => other,
    }
    .to_string()
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(src)?;
    let end = src.chars().count();
    let mut parser = Parser {
        tokens,
        pos: 0,
        end,
    };
    let e = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return parser.error("unexpected trailing input");
    }
    Ok(e)
}

/// A value produced while evaluating an expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(Fe),
    /// Coordinates with respect to a basis of a Lie algebra.
    Vector(Vec<Fe>),
    Poly(Poly),
}

/// Resolves identifiers during evaluation.
pub trait Scope {
    fn field(&self) -> &Field;
    fn lookup(&self, name: &str) -> Result<Option<Value>, String>;
}

pub fn eval(e: &Expr, scope: &dyn Scope) -> Result<Value, String> {
    let f = scope.field();
    match e {
        Expr::Int(n) => Ok(Value::Scalar(f.from_int(*n))),
        Expr::Ident(name) => scope
            .lookup(name)?
            .ok_or_else(|| format!("unbound symbol `{}`", name)),
        Expr::Neg(a) => neg(eval(a, scope)?),
        Expr::Add(a, b) => add(eval(a, scope)?, eval(b, scope)?, false),
        Expr::Sub(a, b) => add(eval(a, scope)?, eval(b, scope)?, true),
        Expr::Mul(a, b) => mul(eval(a, scope)?, eval(b, scope)?),
        Expr::Div(a, b) => div(eval(a, scope)?, eval(b, scope)?),
        Expr::Pow(a, num, den) => pow(f, eval(a, scope)?, *num, *den),
    }
}

fn neg(a: Value) -> Result<Value, String> {
    Ok(match a {
        Value::Scalar(x) => Value::Scalar(-&x),
        Value::Vector(v) => Value::Vector(v.iter().map(|x| -x).collect()),
        Value::Poly(p) => Value::Poly(-&p),
    })
}

fn as_poly(x: &Fe) -> Poly {
    Poly::constant(x)
}

fn add(a: Value, b: Value, subtract: bool) -> Result<Value, String> {
    let b = if subtract { neg(b)? } else { b };
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(&x + &y)),
        (Value::Vector(u), Value::Vector(v)) => Ok(Value::Vector(
            u.iter().zip(&v).map(|(x, y)| x + y).collect(),
        )),
        (Value::Poly(p), Value::Poly(q)) => Ok(Value::Poly(&p + &q)),
        (Value::Poly(p), Value::Scalar(x)) | (Value::Scalar(x), Value::Poly(p)) => {
            Ok(Value::Poly(&p + &as_poly(&x)))
        }
        (Value::Vector(v), Value::Scalar(x)) | (Value::Scalar(x), Value::Vector(v))
            if x.is_zero() =>
        {
            Ok(Value::Vector(v))
        }
        _ => Err("cannot add a scalar to a vector".into()),
    }
}

fn mul(a: Value, b: Value) -> Result<Value, String> {
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(&x * &y)),
        (Value::Scalar(x), Value::Vector(v)) | (Value::Vector(v), Value::Scalar(x)) => {
            Ok(Value::Vector(v.iter().map(|y| &x * y).collect()))
        }
        (Value::Poly(p), Value::Poly(q)) => Ok(Value::Poly(&p * &q)),
        (Value::Poly(p), Value::Scalar(x)) | (Value::Scalar(x), Value::Poly(p)) => {
            Ok(Value::Poly(p.scale(&x)))
        }
        _ => Err("cannot multiply these operands".into()),
    }
}

fn div(a: Value, b: Value) -> Result<Value, String> {
    let Value::Scalar(d) = b else {
        return Err("can only divide by a scalar".into());
    };
    let inv = d.inv().map_err(|_| "division by zero".to_string())?;
    mul(a, Value::Scalar(inv))
}

fn pow(f: &Field, a: Value, num: i64, den: u64) -> Result<Value, String> {
    match a {
        Value::Scalar(x) => {
            let mut y = if num < 0 {
                x.inv()
                    .map_err(|_| "zero to a negative power".to_string())?
                    .pow(num.unsigned_abs())
            } else {
                x.pow(num as u64)
            };
            let p = f.characteristic();
            let mut q = den;
            while q > 1 {
                if !q.is_multiple_of(p) {
                    return Err(format!("root index {} is not a power of {}", den, p));
                }
                y = f
                    .pth_root(&y)
                    .ok_or_else(|| format!("no {}-th root of {} in {}", p, y, f))?;
                q /= p;
            }
            Ok(Value::Scalar(y))
        }
        Value::Poly(p) if num >= 0 && den == 1 => Ok(Value::Poly(p.pow(num as usize))),
        Value::Poly(_) => Err("polynomials take non-negative integer powers".into()),
        Value::Vector(_) => Err("cannot raise a vector to a power".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Gens(Field);

    impl Scope for Gens {
        fn field(&self) -> &Field {
            &self.0
        }
        fn lookup(&self, name: &str) -> Result<Option<Value>, String> {
            Ok(match name {
                "i" => self.0.generator().map(Value::Scalar),
                "t" => Some(Value::Poly(Poly::x(&self.0))),
                _ => None,
            })
        }
    }

    fn f9() -> Field {
        let f3 = Field::prime(3).unwrap();
        Field::algebraic(&f3, &Poly::from_ints(&f3, &[1, 0, 1]), "i").unwrap()
    }

    #[test]
    fn precedence_and_juxtaposition() {
        let f = f9();
        let g = Gens(f.clone());
        let i = f.generator().unwrap();
        let v = eval(&parse("2*i+1").unwrap(), &g).unwrap();
        assert_eq!(v, Value::Scalar(&(&i + &i) + &f.one()));
        let w = eval(&parse("2i + 1").unwrap(), &g).unwrap();
        assert_eq!(v, w);
        assert_eq!(
            eval(&parse("-i^2").unwrap(), &g).unwrap(),
            Value::Scalar(f.one())
        );
        assert_eq!(
            eval(&parse("i^(-1)").unwrap(), &g).unwrap(),
            Value::Scalar(-&i)
        );
    }

    #[test]
    fn polynomials_in_t() {
        let f = f9();
        let g = Gens(f.clone());
        let v = eval(&parse("t^2 + i*t - 1").unwrap(), &g).unwrap();
        let i = f.generator().unwrap();
        let expected = Poly::from_coeffs(&f, vec![-&f.one(), i, f.one()]);
        assert_eq!(v, Value::Poly(expected));
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(parse("1 + ").unwrap_err().offset, 4);
        assert_eq!(parse("2 $ 3").unwrap_err().offset, 2);
        assert!(parse("(1").is_err());
        assert_eq!(parse("α").unwrap(), Expr::Ident("alpha".into()));
    }
}
