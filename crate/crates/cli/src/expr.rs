//! Products of Schubert symbols: `s(1,0)^6 @ n=4`, `s(2) * s(1,1) @ n=5`.
//! `σ` and `sigma` are accepted for `s`; `s(a)` means `s(a,0)`.

use std::fmt;

use congruence_core::schubert::{grassmannian_dim, SchubertClass, SchubertError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Character offset into the expression.
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.pos, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprError {
    Parse(ParseError),
    Symbol(SchubertError),
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprError::Parse(e) => e.fmt(f),
            ExprError::Symbol(e) => write!(f, "symbol error: {e}"),
        }
    }
}

/// One factor `s(a,b)^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factor {
    pub a: u32,
    pub b: u32,
    pub exp: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Product {
    pub factors: Vec<Factor>,
    pub n: u32,
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        self.skip_ws();
        let end = self.pos + w.chars().count();
        if end <= self.chars.len() && self.chars[self.pos..end].iter().copied().eq(w.chars()) {
            self.pos = end;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().or_else(|_| {
            self.pos = start;
            self.err("number out of range")
        })
    }

    fn factor(&mut self) -> Result<Factor, ParseError> {
        if !(self.eat_word("sigma") || self.eat_word("s") || self.eat_word("σ")) {
            return self.err("expected a symbol s(a,b)");
        }
        self.expect('(')?;
        let a = self.number()?;
        let b = if self.eat(',') { self.number()? } else { 0 };
        self.expect(')')?;
        let exp = if self.eat('^') { self.number()? } else { 1 };
        Ok(Factor { a, b, exp })
    }
}

pub fn parse(expr: &str) -> Result<Product, ParseError> {
    let mut p = Parser {
        chars: expr.chars().collect(),
        pos: 0,
    };
    let mut factors = vec![p.factor()?];
    loop {
        match p.peek() {
            Some('@') => break,
            Some('*') => {
                p.pos += 1;
                factors.push(p.factor()?);
            }
            Some(_) => factors.push(p.factor()?),
            None => return p.err("missing '@ n=<dimension>'"),
        }
    }
    p.expect('@')?;
    if !p.eat_word("n") {
        return p.err("expected 'n'");
    }
    p.expect('=')?;
    let n = p.number()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(Product { factors, n })
}

/// Expanded class and, when it is a multiple of the point class, the
/// intersection number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub class: SchubertClass,
    pub intersection_number: Option<String>,
}

pub fn evaluate(expr: &str) -> Result<Evaluation, ExprError> {
    let product = parse(expr).map_err(ExprError::Parse)?;
    let n = product.n;
    let mut class = SchubertClass::unit(n);
    for f in &product.factors {
        let s = SchubertClass::symbol(f.a, f.b, n).map_err(ExprError::Symbol)?;
        class = class
            .mult(&s.pow(f.exp).map_err(ExprError::Symbol)?)
            .map_err(ExprError::Symbol)?;
    }
    let top = grassmannian_dim(n);
    let intersection_number = (class.codim() == Some(top)).then(|| class.coefficient(n - 1, n - 1).to_string());
    Ok(Evaluation {
        class,
        intersection_number,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let e = evaluate("s(1,0)^6 @ n=4").unwrap();
        assert_eq!(e.class.to_string(), "5 s(3,3)");
        assert_eq!(e.intersection_number.as_deref(), Some("5"));
        let e = evaluate("s(0,0) @ n=4").unwrap();
        assert_eq!(e.class.to_string(), "s(0,0)");
        assert_eq!(e.intersection_number, None);
        assert!(matches!(evaluate("s(4,0) @ n=4"), Err(ExprError::Symbol(_))));
    }

    #[test]
    fn syntax_variants() {
        assert_eq!(evaluate("σ(1)^2 @ n=3").unwrap().class.to_string(), "s(2,0) + s(1,1)");
        assert_eq!(
            evaluate("s(1) * s(1) @ n=3").unwrap().class,
            evaluate("sigma(1,0) s(1,0) @n=3").unwrap().class
        );
    }

    #[test]
    fn parse_errors_report_position() {
        let e = parse("s(1,0)^6 n=4").unwrap_err();
        assert_eq!(e.pos, 9);
        let e = parse("s(1,").unwrap_err();
        assert_eq!(e.pos, 4);
        assert!(parse("s(1,0) @ n=4 x").is_err());
        assert!(parse("t(1) @ n=4").is_err());
    }
}
