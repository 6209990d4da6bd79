//! Text syntax for series.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor (('*' | '/') factor | factor)*     juxtaposition multiplies
//! factor  := '-' factor | atom ('^' ['-'] integer)?
//! atom    := integer | 'x' | 'L' | 'alpha' | '(' expr ')'
//! suffix  := '(' 'mod' p '^' N ',' 'x' '^' M ')'
//! ```
//!
//! `L` stands for `1 - x` and `alpha` for `α_p`. Division and negative
//! powers need a unit constant term. An optional suffix fixes the prime,
//! precision and truncation.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::adams;
use crate::error::{Error, Result};
use crate::padic::PadicInt;
use crate::series::TruncatedSeries;

#[derive(Clone, Debug, PartialEq)]
pub enum SeriesExpr {
    Int(i128),
    X,
    L,
    Alpha,
    Neg(Box<SeriesExpr>),
    Add(Box<SeriesExpr>, Box<SeriesExpr>),
    Sub(Box<SeriesExpr>, Box<SeriesExpr>),
    Mul(Box<SeriesExpr>, Box<SeriesExpr>),
    Div(Box<SeriesExpr>, Box<SeriesExpr>),
    Pow(Box<SeriesExpr>, i64),
}

/// Ring parameters given by a `(mod p^N, x^M)` suffix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Context {
    pub prime: u64,
    pub precision: u32,
    pub truncation: usize,
}

impl SeriesExpr {
    pub fn parse(text: &str) -> Result<Self> {
        let (expr, ctx) = parse_with_context(text)?;
        if ctx.is_some() {
            return Err(Error::Parse("unexpected (mod ...) suffix".into()));
        }
        Ok(expr)
    }

    pub fn eval(&self, prime: u64, precision: u32, truncation: usize) -> Result<TruncatedSeries> {
        use SeriesExpr::*;
        let int = |v: i128| TruncatedSeries::from_ints(prime, precision, truncation, &[v]);
        Ok(match self {
            Int(v) => int(*v)?,
            X => TruncatedSeries::x(prime, precision, truncation)?,
            L => TruncatedSeries::from_ints(prime, precision, truncation, &[1, -1])?,
            Alpha => TruncatedSeries::constant(adams::alpha(prime, precision)?, truncation)?,
            Neg(a) => -a.eval(prime, precision, truncation)?,
            Add(a, b) => a.eval(prime, precision, truncation)?.checked_add(&b.eval(prime, precision, truncation)?)?,
            Sub(a, b) => a.eval(prime, precision, truncation)?.checked_sub(&b.eval(prime, precision, truncation)?)?,
            Mul(a, b) => a.eval(prime, precision, truncation)?.checked_mul(&b.eval(prime, precision, truncation)?)?,
            Div(a, b) => {
                let d = b.eval(prime, precision, truncation)?;
                a.eval(prime, precision, truncation)?.checked_mul(&d.invert_unit()?)?
            }
            Pow(a, e) => {
                let base = a.eval(prime, precision, truncation)?;
                if *e >= 0 {
                    base.pow(*e as u64)?
                } else {
                    base.invert_unit()?.pow(e.unsigned_abs())?
                }
            }
        })
    }

    pub fn contains_alpha(&self) -> bool {
        use SeriesExpr::*;
        match self {
            Alpha => true,
            Int(_) | X | L => false,
            Neg(a) | Pow(a, _) => a.contains_alpha(),
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) => a.contains_alpha() || b.contains_alpha(),
        }
    }
}

/// Parse an expression with an optional `(mod p^N, x^M)` suffix.
pub fn parse_with_context(text: &str) -> Result<(SeriesExpr, Option<Context>)> {
    let trimmed = text.trim();
    let (body, ctx) = match trimmed.rfind("(mod") {
        Some(i) if trimmed.ends_with(')') => (&trimmed[..i], Some(parse_suffix(&trimmed[i + 4..trimmed.len() - 1])?)),
        _ => (trimmed, None),
    };
    let tokens = tokenize(body)?;
    let mut parser = Parser { tokens, pos: 0 };
    let expr = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::Parse(format!("unexpected {:?} in {body:?}", parser.tokens[parser.pos])));
    }
    Ok((expr, ctx))
}

/// Parse and evaluate. A suffix in the text must agree with the given
/// ring parameters.
pub fn parse_series(text: &str, prime: u64, precision: u32, truncation: usize) -> Result<TruncatedSeries> {
    let (expr, ctx) = parse_with_context(text)?;
    if let Some(c) = ctx {
        if c.prime != prime {
            return Err(Error::PrimeMismatch(prime, c.prime));
        }
        return expr.eval(c.prime, c.precision, c.truncation);
    }
    expr.eval(prime, precision, truncation)
}

fn parse_suffix(s: &str) -> Result<Context> {
    let bad = || Error::Parse(format!("bad suffix (mod{s})"));
    let (modulus, trunc) = s.split_once(',').ok_or_else(bad)?;
    let (p, n) = modulus.trim().split_once('^').ok_or_else(bad)?;
    let m = trunc.trim().strip_prefix('x').ok_or_else(bad)?.trim();
    let m = m.strip_prefix('^').ok_or_else(bad)?;
    Ok(Context {
        prime: p.trim().parse().map_err(|_| bad())?,
        precision: n.trim().parse().map_err(|_| bad())?,
        truncation: m.trim().parse().map_err(|_| bad())?,
    })
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(i128),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
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
            out.push(Token::Int(text.parse().map_err(|_| Error::Parse(format!("integer {text} too large")))?));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<SeriesExpr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = SeriesExpr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = SeriesExpr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<SeriesExpr> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat('*') {
                lhs = SeriesExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat('/') {
                lhs = SeriesExpr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else if matches!(self.peek(), Some(Token::Int(_) | Token::Ident(_) | Token::Sym('('))) {
                lhs = SeriesExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<SeriesExpr> {
        if self.eat('-') {
            return Ok(SeriesExpr::Neg(Box::new(self.factor()?)));
        }
        let atom = self.atom()?;
        if self.eat('^') {
            let negative = self.eat('-');
            let e = match self.peek() {
                Some(Token::Int(v)) => *v,
                other => return Err(Error::Parse(format!("expected an exponent, found {other:?}"))),
            };
            self.pos += 1;
            let e = i64::try_from(e).map_err(|_| Error::Parse("exponent too large".into()))?;
            return Ok(SeriesExpr::Pow(Box::new(atom), if negative { -e } else { e }));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<SeriesExpr> {
        let tok = self.peek().cloned();
        self.pos += 1;
        match tok {
            Some(Token::Int(v)) => Ok(SeriesExpr::Int(v)),
            Some(Token::Ident(name)) => match name.as_str() {
                "x" => Ok(SeriesExpr::X),
                "L" => Ok(SeriesExpr::L),
                "alpha" => Ok(SeriesExpr::Alpha),
                _ => Err(Error::Parse(format!("unknown name {name:?}"))),
            },
            Some(Token::Sym('(')) => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected {other:?}"))),
        }
    }
}

impl SeriesExpr {
    fn precedence(&self) -> u8 {
        use SeriesExpr::*;
        match self {
            Add(..) | Sub(..) => 1,
            Mul(..) | Div(..) => 2,
            Neg(_) => 3,
            Pow(..) => 4,
            Int(v) if *v < 0 => 3,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        use SeriesExpr::*;
        match self {
            Int(v) => write!(f, "{v}"),
            X => write!(f, "x"),
            L => write!(f, "L"),
            Alpha => write!(f, "alpha"),
            Neg(a) => {
                write!(f, "-")?;
                a.write_at(f, 4)
            }
            Add(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " + ")?;
                b.write_at(f, 2)
            }
            Sub(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " - ")?;
                b.write_at(f, 2)
            }
            Mul(a, b) => {
                a.write_at(f, 2)?;
                write!(f, "*")?;
                b.write_at(f, 3)
            }
            Div(a, b) => {
                a.write_at(f, 2)?;
                write!(f, "/")?;
                b.write_at(f, 4)
            }
            Pow(a, e) => {
                a.write_at(f, 5)?;
                write!(f, "^{e}")
            }
        }
    }
}

impl fmt::Display for SeriesExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

impl Serialize for SeriesExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SeriesExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        SeriesExpr::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// Evaluate a constant expression to a p-adic number.
pub fn parse_scalar(text: &str, prime: u64, precision: u32) -> Result<PadicInt> {
    let s = parse_series(text, prime, precision, 1)?;
    Ok(*s.coeff(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(f: &TruncatedSeries) -> Vec<i128> {
        f.coefficients().iter().map(|c| c.balanced()).collect()
    }

    #[test]
    fn polynomials() {
        assert_eq!(ints(&parse_series("1 - x", 3, 4, 3).unwrap()), vec![1, -1, 0]);
        assert_eq!(ints(&parse_series("3x^2 + 2*x - 1", 5, 3, 4).unwrap()), vec![-1, 2, 3, 0]);
        assert_eq!(ints(&parse_series("(1-x)^2", 3, 4, 4).unwrap()), vec![1, -2, 1, 0]);
        assert_eq!(ints(&parse_series("(1-x)^-1", 3, 4, 4).unwrap()), vec![1, 1, 1, 1]);
        assert_eq!(ints(&parse_series("L^-1 - L", 3, 4, 3).unwrap()), vec![0, 2, 1]);
        assert_eq!(ints(&parse_series("x/2", 3, 2, 2).unwrap()), vec![0, -4]);
        assert_eq!(ints(&parse_series("-x^2", 5, 2, 3).unwrap()), vec![0, 0, -1]);
    }

    #[test]
    fn suffix_sets_the_ring() {
        let f = parse_series("1 + 3*x (mod 3^2, x^3)", 3, 5, 7).unwrap();
        assert_eq!((f.precision(), f.truncation()), (2, 3));
        assert!(parse_series("1 (mod 5^2, x^3)", 3, 2, 3).is_err());
        let shown = f.to_string();
        assert_eq!(parse_series(&shown, 3, 9, 9).unwrap(), f);
    }

    #[test]
    fn alpha_and_errors() {
        let a = parse_series("alpha", 3, 2, 1).unwrap();
        assert_eq!(a.coeff(0).residue(), 7);
        assert!(SeriesExpr::parse("alpha * x").unwrap().contains_alpha());
        assert!(parse_series("x/3", 3, 2, 2).is_err());
        assert!(parse_series("x^-1", 3, 2, 2).is_err());
        assert!(parse_series("y", 3, 2, 2).is_err());
        assert!(parse_series("(1 - x", 3, 2, 2).is_err());
        assert!(parse_series("1 +", 3, 2, 2).is_err());
    }

    #[test]
    fn display_round_trips() {
        for text in
            ["-alpha*(L - L^-1)/2", "3x^2 - (1-x)^3", "-(-2)", "1 - (x - 2)", "(-2)^3", "2/(3 + x)*x", "-(x + 1)^2"]
        {
            let e = SeriesExpr::parse(text).unwrap();
            let again = SeriesExpr::parse(&e.to_string()).unwrap();
            assert_eq!(e.eval(5, 3, 5).unwrap(), again.eval(5, 3, 5).unwrap(), "{text}");
        }
        assert_eq!(SeriesExpr::parse("-alpha*(L - L^-1)/2").unwrap().to_string(), "-alpha*(L - L^-1)/2");
    }
}
