use std::collections::BTreeMap;

use crate::arith::{Coeff, Rational};

use super::Monomial;

/// Finite linear combination of PBW monomials with [`Coeff`] coefficients.
///
/// No zero coefficient is ever stored, so `is_zero` and `==` are exact.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Element {
    terms: BTreeMap<Monomial, Coeff>,
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn vacuum() -> Element {
        Element::monomial(Monomial::vacuum())
    }

    pub fn monomial(m: Monomial) -> Element {
        Element::term(m, Coeff::one())
    }

    pub fn term(m: Monomial, c: Coeff) -> Element {
        let mut e = Element::zero();
        e.add_term(m, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Element {
        let mut e = Element::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn get(&self, m: &Monomial) -> Option<&Coeff> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Element, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        let unit = c.is_one();
        for (m, a) in &other.terms {
            let t = if unit { a.clone() } else { a * c };
            self.add_term(m.clone(), t);
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut e = self.clone();
        e.add_scaled(other, &Coeff::one());
        e
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut e = self.clone();
        e.add_scaled(other, &Coeff::from_int(-1));
        e
    }

    pub fn scale(&self, c: &Coeff) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn scale_rational(&self, r: &Rational) -> Element {
        self.scale(&Coeff::from_rational(r.clone()))
    }

    pub fn neg(&self) -> Element {
        Element { terms: self.terms.iter().map(|(m, a)| (m.clone(), -a)).collect() }
    }

    pub fn max_weight(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.weight()).max()
    }

    pub fn min_weight(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.weight()).min()
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    /// Homogeneous components keyed by weight.
    pub fn components(&self) -> BTreeMap<i64, Element> {
        let mut out: BTreeMap<i64, Element> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weight()).or_default().terms.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        self.components().len() <= 1
    }

    /// Largest monomial in the crate's order.
    pub fn leading(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().next_back()
    }

    pub fn retain(&mut self, f: impl FnMut(&Monomial, &mut Coeff) -> bool) {
        self.terms.retain(f)
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Coeff> {
        self.terms
    }

    pub fn substitute(&self, values: &[(crate::arith::Param, Rational)]) -> crate::error::Result<Element> {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.substitute(values)?);
        }
        Ok(out)
    }
}

impl std::fmt::Debug for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(m, c)| (m, c.to_string()))).finish()
    }
}

impl FromIterator<(Monomial, Coeff)> for Element {
    fn from_iter<I: IntoIterator<Item = (Monomial, Coeff)>>(iter: I) -> Self {
        Element::from_terms(iter)
    }
}
