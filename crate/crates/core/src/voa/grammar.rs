//! Text form of vectors.
//!
//! ```text
//! element := term (('+' | '-') term)* | '0'
//! term    := coeff? factor* lowest
//! coeff   := INT ('/' INT)? | '(' scalar ')'
//! factor  := SYMBOL '(' '-'? INT ')' ('^' INT)?
//! lowest  := '|0>' | '|lambda>' | '|h>'
//! ```
//!
//! Factors may carry any mode (positive ones included); parsing applies them
//! right to left and returns the PBW-canonical result. Printing emits
//! canonical words with modes grouped into powers, e.g.
//! `3/2 a(-2)a(-1)^2|0>` or `(c-1) L(-3)L(-2)|0>`.

use num_traits::Signed;

use crate::arith::{scalar_expr, Coeff, Cursor, RatFunc, Rational};
use crate::error::{Error, Result};

use super::{Element, Space};

impl Space {
    /// Parses an element and normalizes it in this space.
    pub fn parse(&self, src: &str) -> Result<Element> {
        let mut cur = Cursor::new(src);
        if cur.eat("0") && cur.at_end() {
            return Ok(Element::zero());
        }
        let mut cur = Cursor::new(src);
        let mut out = Element::zero();
        let mut first = true;
        loop {
            if cur.at_end() {
                if first {
                    return Err(Error::Parse { pos: cur.pos(), msg: "empty element".into() });
                }
                break;
            }
            let mut sign = 1i64;
            if cur.eat("+") {
            } else if cur.peek() == Some('-') {
                cur.bump();
                sign = -1;
            } else if !first {
                return Err(Error::Parse { pos: cur.pos(), msg: "expected `+` or `-` between terms".into() });
            }
            first = false;
            let (coeff, word) = self.parse_term(&mut cur)?;
            let v = self.normalize(&word);
            out.add_scaled(&v, &coeff.scale(&Rational::from_integer(sign.into())));
        }
        Ok(out)
    }

    fn parse_term(&self, cur: &mut Cursor<'_>) -> Result<(Coeff, Vec<i64>)> {
        let coeff = match cur.peek() {
            Some('(') => {
                cur.bump();
                let v = scalar_expr(cur).map_err(Error::from_parse)?;
                cur.expect(")").map_err(Error::from_parse)?;
                v
            }
            Some(ch) if ch.is_ascii_digit() => {
                let n = cur.uint().map_err(Error::from_parse)?;
                let d = if cur.eat("/") { cur.uint().map_err(Error::from_parse)? } else { 1.into() };
                if d == 0.into() {
                    return Err(Error::Parse { pos: cur.pos(), msg: "zero denominator".into() });
                }
                RatFunc::from_rational(Rational::new(n, d))
            }
            _ => RatFunc::one(),
        };
        let mut word = Vec::new();
        loop {
            match cur.peek() {
                Some('|') => {
                    let pos = cur.pos();
                    cur.bump();
                    let name = cur.ident().map(str::to_string).or_else(|| cur.eat("0").then(|| "0".to_string()));
                    cur.expect(">").map_err(Error::from_parse)?;
                    let want = &self.lowest_symbol()[1..self.lowest_symbol().len() - 1];
                    if name.as_deref() != Some(want) {
                        return Err(Error::Parse { pos, msg: format!("expected lowest vector `{}`", self.lowest_symbol()) });
                    }
                    return Ok((coeff, word));
                }
                Some(_) => {
                    let pos = cur.pos();
                    let sym = cur.ident().ok_or_else(|| Error::Parse { pos, msg: "expected a mode factor or lowest vector".into() })?;
                    if sym != self.presentation().symbol() {
                        return Err(Error::Parse {
                            pos,
                            msg: format!("unknown symbol `{sym}` (expected `{}`)", self.presentation().symbol()),
                        });
                    }
                    cur.expect("(").map_err(Error::from_parse)?;
                    let m = cur.small_int().map_err(Error::from_parse)?;
                    cur.expect(")").map_err(Error::from_parse)?;
                    let e = if cur.eat("^") { cur.small_int().map_err(Error::from_parse)? } else { 1 };
                    if e < 0 {
                        return Err(Error::Parse { pos: cur.pos(), msg: "negative power".into() });
                    }
                    word.extend(std::iter::repeat_n(m, e as usize));
                }
                None => return Err(Error::Parse { pos: cur.pos(), msg: "missing lowest vector".into() }),
            }
        }
    }

    /// Canonical text form; terms in decreasing monomial order.
    pub fn render(&self, v: &Element) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        let sym = self.presentation().symbol();
        let low = self.lowest_symbol();
        let mut s = String::new();
        for (idx, (m, c)) in v.iter().rev().enumerate() {
            let word = m.render(sym, low);
            let (neg, body) = match c.as_rational() {
                Some(r) => {
                    let neg = r.is_negative();
                    let a = r.abs();
                    let body = if num_traits::One::is_one(&a) {
                        String::new()
                    } else {
                        format!("{a} ")
                    };
                    (neg, body)
                }
                None => (false, format!("({c}) ")),
            };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            s.push_str(&body);
            s.push_str(&word);
        }
        s
    }
}
