//! Recursive-descent parsing of scalar expressions.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' '-'? INT)?
//! atom  := INT | 'c' | 'h' | 'lambda' | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::{ArithError, Param, RatFunc, Rational};

/// Character cursor shared by the scalar, element and polynomial grammars.
#[derive(Clone, Debug)]
pub struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub fn skip_ws(&mut self) {
        while let Some(ch) = self.rest().chars().next() {
            if ch.is_whitespace() {
                self.pos += ch.len_utf8();
            } else {
                break;
            }
        }
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn bump(&mut self) -> Option<char> {
        let ch = self.peek()?;
        self.pos += ch.len_utf8();
        Some(ch)
    }

    /// Consumes `s` (after whitespace) if it is next.
    pub fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, s: &str) -> Result<(), ArithError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{s}`")))
        }
    }

    pub fn error(&self, msg: impl Into<String>) -> ArithError {
        ArithError::Parse { pos: self.pos, msg: msg.into() }
    }

    pub fn uint(&mut self) -> Result<BigInt, ArithError> {
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(self.error("expected an integer"));
        }
        self.pos += digits.len();
        Ok(digits.parse().expect("ascii digits"))
    }

    pub fn small_int(&mut self) -> Result<i64, ArithError> {
        let neg = self.eat("-");
        let start = self.pos;
        let v = self.uint()?;
        let v: i64 = v.try_into().map_err(|_| ArithError::Parse { pos: start, msg: "integer too large".into() })?;
        Ok(if neg { -v } else { v })
    }

    pub fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let len: usize = rest
            .char_indices()
            .take_while(|(i, c)| c.is_alphabetic() || *c == '_' || (*i > 0 && c.is_ascii_digit()))
            .map(|(_, c)| c.len_utf8())
            .sum();
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some(&rest[..len])
    }
}

/// Parses a complete scalar expression such as `(c^2-1)/(c-1)` or `3/2`.
pub fn parse_scalar(src: &str) -> Result<RatFunc, ArithError> {
    let mut cur = Cursor::new(src);
    let v = scalar_expr(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(v)
}

pub fn scalar_expr(cur: &mut Cursor<'_>) -> Result<RatFunc, ArithError> {
    let mut acc = scalar_term(cur)?;
    loop {
        if cur.eat("+") {
            acc = &acc + &scalar_term(cur)?;
        } else if cur.peek() == Some('-') {
            cur.bump();
            acc = &acc - &scalar_term(cur)?;
        } else {
            return Ok(acc);
        }
    }
}

fn scalar_term(cur: &mut Cursor<'_>) -> Result<RatFunc, ArithError> {
    let mut acc = scalar_unary(cur)?;
    loop {
        if cur.eat("*") {
            acc = &acc * &scalar_unary(cur)?;
        } else if cur.peek() == Some('/') {
            cur.bump();
            let pos = cur.pos();
            let d = scalar_unary(cur)?;
            acc = acc.checked_div(&d).map_err(|_| ArithError::Parse { pos, msg: "division by zero".into() })?;
        } else {
            return Ok(acc);
        }
    }
}

fn scalar_unary(cur: &mut Cursor<'_>) -> Result<RatFunc, ArithError> {
    if cur.peek() == Some('-') {
        cur.bump();
        return Ok(-scalar_unary(cur)?);
    }
    let base = scalar_atom(cur)?;
    if cur.eat("^") {
        let pos = cur.pos();
        let k = cur.small_int()?;
        let k: i32 = k.try_into().map_err(|_| ArithError::Parse { pos, msg: "exponent too large".into() })?;
        return base.pow(k).map_err(|_| ArithError::Parse { pos, msg: "zero to a negative power".into() });
    }
    Ok(base)
}

fn scalar_atom(cur: &mut Cursor<'_>) -> Result<RatFunc, ArithError> {
    match cur.peek() {
        Some('(') => {
            cur.bump();
            let v = scalar_expr(cur)?;
            cur.expect(")")?;
            Ok(v)
        }
        Some(ch) if ch.is_ascii_digit() => Ok(RatFunc::from_rational(Rational::from_integer(cur.uint()?))),
        Some(_) => {
            let pos = cur.pos();
            match cur.ident() {
                Some(name) => match Param::from_name(name) {
                    Some(p) => Ok(RatFunc::param(p)),
                    None => Err(ArithError::Parse { pos, msg: format!("unknown parameter `{name}`") }),
                },
                None => Err(cur.error("expected a number, parameter or `(`")),
            }
        }
        None => Err(cur.error("unexpected end of input")),
    }
}
