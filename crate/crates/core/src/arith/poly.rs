use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::Rational;

/// Number of declared parameters: `c`, `h`, `lambda`.
pub const NPARAMS: usize = 3;

/// Exponent vector, one slot per [`Param`].
pub type Exps = [u16; NPARAMS];

/// A symbolic parameter that may appear in coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    /// Central charge.
    C = 0,
    /// Lowest weight of a Verma module.
    H = 1,
    /// Heisenberg zero-mode eigenvalue on a Fock module.
    Lambda = 2,
}

impl Param {
    pub const ALL: [Param; NPARAMS] = [Param::C, Param::H, Param::Lambda];

    pub fn name(self) -> &'static str {
        match self {
            Param::C => "c",
            Param::H => "h",
            Param::Lambda => "lambda",
        }
    }

    pub fn from_name(s: &str) -> Option<Param> {
        match s {
            "c" => Some(Param::C),
            "h" => Some(Param::H),
            "lambda" | "λ" => Some(Param::Lambda),
            _ => None,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// Sparse polynomial over ℚ in the declared parameters.
///
/// Terms are kept sorted by exponent vector in descending lexicographic order
/// (`c > h > lambda`) and never store a zero coefficient, so structural
/// equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Exps, Rational)>,
}

const ZERO_EXPS: Exps = [0; NPARAMS];

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Rational::one())
    }

    pub fn constant(r: Rational) -> Poly {
        if r.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(ZERO_EXPS, r)] }
        }
    }

    pub fn from_int(i: i64) -> Poly {
        Poly::constant(Rational::from_integer(i.into()))
    }

    pub fn var(p: Param) -> Poly {
        let mut e = ZERO_EXPS;
        e[p.index()] = 1;
        Poly { terms: vec![(e, Rational::one())] }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(mut terms: Vec<(Exps, Rational)>) -> Poly {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Exps, Rational)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Exps, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == ZERO_EXPS && self.terms[0].1.is_one()
    }

    /// `Some(r)` when the polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(e, c)] if *e == ZERO_EXPS => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == ZERO_EXPS)
    }

    /// Leading (lexicographically largest) term.
    pub fn leading(&self) -> Option<&(Exps, Rational)> {
        self.terms.first()
    }

    pub fn degree_in(&self, p: Param) -> u16 {
        self.terms.iter().map(|(e, _)| e[p.index()]).max().unwrap_or(0)
    }

    pub fn mentions(&self, p: Param) -> bool {
        self.terms.iter().any(|(e, _)| e[p.index()] > 0)
    }

    /// Parameters appearing with positive degree.
    pub fn params(&self) -> Vec<Param> {
        Param::ALL.into_iter().filter(|&p| self.mentions(p)).collect()
    }

    /// Number of terms; used as a size measure for pivot selection.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match ea.cmp(eb) {
                Ordering::Greater => {
                    out.push((*ea, ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((*eb, cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = ca + cb;
                    if !s.is_zero() {
                        out.push((*ea, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Poly { terms: out }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &Rational) -> Poly {
        if r.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, c)| (*e, c * r)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                terms.push((add_exps(ea, eb), ca * cb));
            }
        }
        Poly::from_terms(terms)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient `self / d` if `d` divides `self` in ℚ[params].
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (ld, lc) = d.leading().cloned()?;
        let mut rem = self.clone();
        let mut quot: Vec<(Exps, Rational)> = Vec::new();
        while let Some((le, lcoef)) = rem.leading().cloned() {
            let e = sub_exps(&le, &ld)?;
            let c = lcoef / &lc;
            let t = Poly { terms: vec![(e, c.clone())] };
            rem = rem.sub(&d.mul(&t));
            quot.push((e, c));
        }
        Some(Poly::from_terms(quot))
    }

    /// Substitutes rational values for some parameters.
    pub fn substitute(&self, values: &[(Param, Rational)]) -> Poly {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut e = *e;
            let mut c = c.clone();
            for (p, v) in values {
                let k = e[p.index()];
                if k > 0 {
                    c *= num_traits::pow(v.clone(), k as usize);
                    e[p.index()] = 0;
                }
            }
            terms.push((e, c));
        }
        Poly::from_terms(terms)
    }

    /// Divides by the leading coefficient so the leading term is monic.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    /// Coefficients with respect to `p`, as polynomials in the remaining
    /// parameters; index `i` holds the coefficient of `p^i`.
    pub fn to_univariate(&self, p: Param) -> Vec<Poly> {
        let deg = self.degree_in(p) as usize;
        let mut buckets: Vec<Vec<(Exps, Rational)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let mut e2 = *e;
            let k = e2[p.index()] as usize;
            e2[p.index()] = 0;
            buckets[k].push((e2, c.clone()));
        }
        buckets.into_iter().map(Poly::from_terms).collect()
    }

    pub fn from_univariate(p: Param, coeffs: &[Poly]) -> Poly {
        let mut terms = Vec::new();
        for (k, q) in coeffs.iter().enumerate() {
            for (e, c) in &q.terms {
                let mut e2 = *e;
                e2[p.index()] += k as u16;
                terms.push((e2, c.clone()));
            }
        }
        Poly::from_terms(terms)
    }

    /// Greatest common divisor, normalized to be monic (zero only if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one();
        }
        let main = Param::ALL
            .into_iter()
            .find(|&p| self.mentions(p) || other.mentions(p))
            .expect("non-constant polynomial mentions a parameter");
        match (self.mentions(main), other.mentions(main)) {
            (true, false) => content(self, main).gcd(other),
            (false, true) => self.gcd(&content(other, main)),
            _ => {
                let ca = content(self, main);
                let cb = content(other, main);
                let g_cont = ca.gcd(&cb);
                let pa = self.div_exact(&ca).expect("content divides");
                let pb = other.div_exact(&cb).expect("content divides");
                let g = primitive_prs(pa.to_univariate(main), pb.to_univariate(main));
                let g = Poly::from_univariate(main, &g);
                let g = g.div_exact(&content(&g, main)).expect("content divides");
                g_cont.mul(&g).monic()
            }
        }
    }
}

fn add_exps(a: &Exps, b: &Exps) -> Exps {
    let mut e = *a;
    for i in 0..NPARAMS {
        e[i] += b[i];
    }
    e
}

fn sub_exps(a: &Exps, b: &Exps) -> Option<Exps> {
    let mut e = *a;
    for i in 0..NPARAMS {
        e[i] = a[i].checked_sub(b[i])?;
    }
    Some(e)
}

/// gcd of the coefficients of `a` viewed as a polynomial in `p`.
fn content(a: &Poly, p: Param) -> Poly {
    let mut g = Poly::zero();
    for c in a.to_univariate(p) {
        if c.is_zero() {
            continue;
        }
        g = g.gcd(&c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn trim(v: &mut Vec<Poly>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Pseudo-remainder of `a` by `b` (coefficient vectors in the main variable).
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut r: Vec<Poly> = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&bc.mul(&lr));
        }
        trim(&mut r);
    }
    r
}

fn univariate_primitive(v: &[Poly]) -> Vec<Poly> {
    let mut g = Poly::zero();
    for c in v {
        if !c.is_zero() {
            g = g.gcd(c);
        }
    }
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|c| c.div_exact(&g).expect("content divides")).collect()
}

fn primitive_prs(mut a: Vec<Poly>, mut b: Vec<Poly>) -> Vec<Poly> {
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            // Nonzero constant in the main variable: the gcd is free of it.
            return vec![Poly::one()];
        }
        let r = prem(&a, &b);
        a = b;
        b = univariate_primitive(&r);
    }
    univariate_primitive(&a)
}

impl fmt::Display for Poly {
    /// Compact rendering such as `c^2-2*c+1` or `3/2*c*lambda`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if neg {
                write!(f, "-")?;
            } else if idx > 0 {
                write!(f, "+")?;
            }
            let is_const = *e == ZERO_EXPS;
            let mut need_star = false;
            if is_const || !a.is_one() {
                write!(f, "{a}")?;
                need_star = true;
            }
            for p in Param::ALL {
                let k = e[p.index()];
                if k == 0 {
                    continue;
                }
                if need_star {
                    write!(f, "*")?;
                }
                write!(f, "{}", p.name())?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
                need_star = true;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c() -> Poly {
        Poly::var(Param::C)
    }
    fn h() -> Poly {
        Poly::var(Param::H)
    }
    fn k(i: i64) -> Poly {
        Poly::from_int(i)
    }

    #[test]
    fn display_is_compact() {
        let p = c().mul(&c()).sub(&c().scale(&Rational::new(3.into(), 2.into()))).add(&k(1));
        assert_eq!(p.to_string(), "c^2-3/2*c+1");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(c().mul(&h()).neg().to_string(), "-c*h");
    }

    #[test]
    fn exact_division() {
        let a = c().sub(&k(1)).mul(&c().add(&k(1)));
        assert_eq!(a.div_exact(&c().sub(&k(1))), Some(c().add(&k(1))));
        assert_eq!(c().div_exact(&h()), None);
    }

    #[test]
    fn gcd_univariate_and_bivariate() {
        let a = c().sub(&k(1)).mul(&c().add(&k(2)));
        let b = c().sub(&k(1)).mul(&c().sub(&k(3)));
        assert_eq!(a.gcd(&b), c().sub(&k(1)));
        let x = c().add(&h());
        let p = x.mul(&c().sub(&h()));
        let q = x.mul(&x).scale(&Rational::from_integer(4.into()));
        assert_eq!(p.gcd(&q), x);
        assert_eq!(c().gcd(&h()), Poly::one());
        assert_eq!(k(6).gcd(&c()), Poly::one());
    }
}
