use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{ArithError, Cursor, Rational};
use crate::error::{Error, Result};

/// Variables of a polynomial ring `ℂ[commuting]⟨noncommuting⟩`.
///
/// Commuting variables are central: in a canonical word they come first, in
/// the order listed here, followed by the noncommuting letters in their
/// original order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    commuting: Vec<String>,
    noncommuting: Vec<String>,
}

impl Ring {
    pub fn new(commuting: &[String], noncommuting: &[String]) -> Result<Ring> {
        let mut seen = std::collections::BTreeSet::new();
        for v in commuting.iter().chain(noncommuting) {
            if v.is_empty() || !v.chars().all(|c| c.is_alphanumeric() || c == '_') || v.starts_with(|c: char| c.is_ascii_digit()) {
                return Err(Error::Config(format!("bad variable name `{v}`")));
            }
            if !seen.insert(v.clone()) {
                return Err(Error::Config(format!("variable `{v}` declared twice")));
            }
        }
        Ok(Ring { commuting: commuting.to_vec(), noncommuting: noncommuting.to_vec() })
    }

    pub fn commuting(&self) -> &[String] {
        &self.commuting
    }

    pub fn noncommuting(&self) -> &[String] {
        &self.noncommuting
    }

    pub fn variables(&self) -> impl Iterator<Item = &String> {
        self.commuting.iter().chain(&self.noncommuting)
    }

    pub fn contains(&self, v: &str) -> bool {
        self.variables().any(|w| w == v)
    }

    fn rank(&self, v: &str) -> Option<usize> {
        self.commuting.iter().position(|w| w == v)
    }

    fn canon(&self, word: Vec<String>) -> Vec<String> {
        let (mut central, rest): (Vec<String>, Vec<String>) = word.into_iter().partition(|v| self.rank(v).is_some());
        central.sort_by_key(|v| self.rank(v));
        central.extend(rest);
        central
    }

    /// Parses `+ - * / ^ ( )` expressions with rational constants; products
    /// may be written by juxtaposition (`2x`, `ZW`, `(x^2-y)Y`). Variable
    /// names are matched greedily against the declared ones.
    pub fn parse(&self, src: &str) -> Result<NcPolynomial> {
        let mut cur = Cursor::new(src);
        let p = self.expr(&mut cur).map_err(Error::from_parse)?;
        if !cur.at_end() {
            return Err(Error::from_parse(cur.error("unexpected trailing input")));
        }
        Ok(p)
    }

    fn expr(&self, cur: &mut Cursor<'_>) -> std::result::Result<NcPolynomial, ArithError> {
        let mut acc = NcPolynomial::zero();
        let mut first = true;
        loop {
            let neg = if cur.eat("+") {
                false
            } else if cur.eat("-") {
                true
            } else if first {
                false
            } else {
                return Ok(acc);
            };
            let t = self.term(cur)?;
            acc = if neg { acc.sub(&t) } else { acc.add(&t) };
            first = false;
        }
    }

    fn starts_factor(&self, cur: &mut Cursor<'_>) -> bool {
        match cur.peek() {
            Some(c) if c.is_ascii_digit() || c == '(' => true,
            Some(_) => self.match_var(cur).is_some(),
            None => false,
        }
    }

    fn term(&self, cur: &mut Cursor<'_>) -> std::result::Result<NcPolynomial, ArithError> {
        let mut acc = self.power(cur)?;
        loop {
            if cur.eat("*") {
                acc = self.mul(&acc, &self.power(cur)?);
            } else if cur.eat("/") {
                let d = Rational::from_integer(cur.uint()?);
                if d.is_zero() {
                    return Err(cur.error("division by zero"));
                }
                acc = acc.scale(&d.recip());
            } else if self.starts_factor(cur) {
                acc = self.mul(&acc, &self.power(cur)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&self, cur: &mut Cursor<'_>) -> std::result::Result<NcPolynomial, ArithError> {
        let base = self.atom(cur)?;
        if cur.eat("^") {
            let e = cur.uint()?;
            let e: u32 = e.try_into().map_err(|_| cur.error("exponent too large"))?;
            return Ok(self.pow(&base, e));
        }
        Ok(base)
    }

    fn match_var(&self, cur: &mut Cursor<'_>) -> Option<String> {
        cur.skip_ws();
        let rest = cur.rest();
        self.variables().filter(|v| rest.starts_with(v.as_str())).max_by_key(|v| v.len()).cloned()
    }

    fn atom(&self, cur: &mut Cursor<'_>) -> std::result::Result<NcPolynomial, ArithError> {
        match cur.peek() {
            Some('(') => {
                cur.bump();
                let e = self.expr(cur)?;
                cur.expect(")")?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(NcPolynomial::constant(Rational::from_integer(cur.uint()?))),
            Some(_) => match self.match_var(cur) {
                Some(v) => {
                    cur.eat(&v);
                    Ok(NcPolynomial::var(&v))
                }
                None => Err(cur.error("expected a variable, number or `(`")),
            },
            None => Err(cur.error("unexpected end of input")),
        }
    }

    pub fn mul(&self, a: &NcPolynomial, b: &NcPolynomial) -> NcPolynomial {
        let mut out = NcPolynomial::zero();
        for (wa, ca) in &a.terms {
            for (wb, cb) in &b.terms {
                let w = self.canon(wa.iter().chain(wb).cloned().collect());
                out.add_term(w, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, a: &NcPolynomial, e: u32) -> NcPolynomial {
        let mut acc = NcPolynomial::one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Replaces every occurrence of `var` by `value`.
    pub fn substitute(&self, p: &NcPolynomial, var: &str, value: &NcPolynomial) -> NcPolynomial {
        let mut out = NcPolynomial::zero();
        for (w, c) in &p.terms {
            let mut acc = NcPolynomial::constant(c.clone());
            for v in w {
                let f = if v == var { value.clone() } else { NcPolynomial::var(v) };
                acc = self.mul(&acc, &f);
            }
            out = out.add(&acc);
        }
        out
    }
}

/// Element of `ℂ[commuting]⟨noncommuting⟩` with rational coefficients,
/// stored as canonical words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NcPolynomial {
    terms: BTreeMap<Vec<String>, Rational>,
}

impl NcPolynomial {
    pub fn zero() -> NcPolynomial {
        NcPolynomial::default()
    }

    pub fn one() -> NcPolynomial {
        NcPolynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> NcPolynomial {
        let mut p = NcPolynomial::zero();
        p.add_term(vec![], c);
        p
    }

    pub fn var(v: &str) -> NcPolynomial {
        let mut p = NcPolynomial::zero();
        p.add_term(vec![v.to_string()], Rational::one());
        p
    }

    fn add_term(&mut self, w: Vec<String>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<String>, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Longest word length.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn add(&self, other: &NcPolynomial) -> NcPolynomial {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> NcPolynomial {
        NcPolynomial { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &NcPolynomial) -> NcPolynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &Rational) -> NcPolynomial {
        if r.is_zero() {
            return NcPolynomial::zero();
        }
        NcPolynomial { terms: self.terms.iter().map(|(w, c)| (w.clone(), c * r)).collect() }
    }

    pub fn variables(&self) -> std::collections::BTreeSet<&String> {
        self.terms.keys().flatten().collect()
    }
}

impl fmt::Display for NcPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let (neg, a) = (c.is_negative(), c.abs());
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let word = render_word(w);
            if word.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{word}")?;
            } else {
                write!(f, "{a}*{word}")?;
            }
        }
        Ok(())
    }
}

fn render_word(w: &[String]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        parts.push(if j - i == 1 { w[i].clone() } else { format!("{}^{}", w[i], j - i) });
        i = j;
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    fn ring() -> Ring {
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        Ring::new(&s(&["x", "y"]), &s(&["yt", "z", "zt", "Y", "Z", "W"])).unwrap()
    }

    #[test]
    fn juxtaposition_and_greedy_names() {
        let r = ring();
        assert_eq!(r.parse("ZW").unwrap(), r.parse("Z*W").unwrap());
        assert_ne!(r.parse("ZW").unwrap(), r.parse("WZ").unwrap());
        assert_eq!(r.parse("2xyt").unwrap(), r.parse("2*x*yt").unwrap());
        assert_eq!(r.parse("Yx").unwrap(), r.parse("xY").unwrap());
        assert_eq!(r.parse("(x^2-y)(x^2-y+2)").unwrap(), r.parse("x^4 - 2x^2y + y^2 + 2x^2 - 2y").unwrap());
    }

    #[test]
    fn rational_constants() {
        let r = ring();
        let p = r.parse("Y + WZ - 1/8(x^2 - y)").unwrap();
        let q = r.parse("Y + W*Z - 1/8 x^2 + 1/8 y").unwrap();
        assert_eq!(p, q);
        assert_eq!(r.parse("3/6").unwrap(), NcPolynomial::constant(ratio(1, 2)));
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring();
        match r.parse("x + q") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(r.parse("(x").is_err());
        assert!(r.parse("x/0").is_err());
    }

    #[test]
    fn display_round_trips() {
        let r = ring();
        for s in ["(x^2-y)(x^2-y+2)(x^2-y+4)", "Y + WZ - 1/8(x^2-y)(x^2-y+2)", "-1/40(2z+zt+2xy-2x yt-3x^3)", "0", "ZY - 3"] {
            let p = r.parse(s).unwrap();
            assert_eq!(r.parse(&p.to_string()).unwrap(), p, "{s} -> {p}");
        }
    }

    #[test]
    fn substitution() {
        let r = ring();
        let p = r.parse("x^2 - 2y - yt").unwrap();
        let q = r.substitute(&p, "yt", &r.parse("x^2 - 2y").unwrap());
        assert!(q.is_zero());
    }
}
