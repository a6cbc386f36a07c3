use crate::arith::{binom, Coeff, Rational};
use crate::error::{Error, Result};
use crate::voa::Element;

use super::ZhuContext;

/// `u_{-t}^{i_t} ⋯ u_{-1}^{i_1} 𝟏 *ₙ v` split into the explicit double sum
/// and the remainder `g = star − main`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultFormula {
    pub state: Element,
    pub main: Element,
    pub g: Element,
}

/// The one-exponent formula `u_{-t}^i 𝟏 *ₙ v = main + g_i(v)`, with the
/// closed form of `g₁` when `i = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct CorMult {
    pub main: Element,
    pub g1: Option<Element>,
}

impl CorMult {
    pub fn total(&self) -> Option<Element> {
        self.g1.as_ref().map(|g| self.main.add(g))
    }
}

fn sign(m: i64) -> i64 {
    if m % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Calls `f` on every ordered tuple of `len` nonnegative integers summing to `sum`.
pub(crate) fn compositions(len: usize, sum: i64, f: &mut impl FnMut(&[i64])) {
    fn go(buf: &mut Vec<i64>, len: usize, left: i64, f: &mut impl FnMut(&[i64])) {
        if buf.len() + 1 == len {
            buf.push(left);
            f(buf);
            buf.pop();
            return;
        }
        for x in 0..=left {
            buf.push(x);
            go(buf, len, left - x, f);
            buf.pop();
        }
    }
    if len == 0 {
        if sum == 0 {
            f(&[]);
        }
        return;
    }
    if sum < 0 {
        return;
    }
    go(&mut Vec::with_capacity(len), len, sum, f)
}

/// `C_j = Σ_{m=0}^{n} (-1)^m C(m+n, n) C(j+n, m+n)`.
pub fn cj_coefficient(n: i64, j: i64) -> Rational {
    (0..=n).map(|m| binom(m + n, n) * binom(j + n, m + n) * Rational::from_integer(sign(m).into())).sum()
}

/// Regime-wise closed form of [`cj_coefficient`]: `1` at `j = 0`, zero for
/// `0 < |j| ≤ n`, `(-1)^n C(j+n,n) C(j-1,n)` for `j > n`, and
/// `C(j+n,n) Σ_{m=0}^{n} C(-j+m-1, m)` for `j < -n`.
pub fn cj_closed_form(n: i64, j: i64) -> Rational {
    if j == 0 {
        Rational::from_integer(1.into())
    } else if j.abs() <= n {
        Rational::from_integer(0.into())
    } else if j > n {
        binom(j + n, n) * binom(j - 1, n) * Rational::from_integer(sign(n).into())
    } else {
        let s: Rational = (0..=n).map(|m| binom(-j + m - 1, m)).sum();
        binom(j + n, n) * s
    }
}

fn rc(r: Rational) -> Coeff {
    Coeff::from_rational(r)
}

impl ZhuContext {
    /// `u_{-t}^{i_t} ⋯ u_{-1}^{i_1} 𝟏` for a state `u`; `exponents[s-1] = i_s`.
    pub fn power_state(&self, u: &Element, exponents: &[u32]) -> Element {
        let mut st = Element::vacuum();
        for (s, &i) in exponents.iter().enumerate() {
            for _ in 0..i {
                st = self.space().mode(u, -(s as i64) - 1, &st);
            }
        }
        st
    }

    fn homogeneous_weight(&self, u: &Element) -> Result<i64> {
        if u.is_zero() || !u.is_homogeneous() {
            return Err(Error::Precondition("u must be nonzero and homogeneous".into()));
        }
        Ok(u.min_weight().expect("nonzero"))
    }

    /// Multiplication formula for the generator `u`, see [`ZhuContext::mult_formula_for`].
    pub fn mult_formula(&self, exponents: &[u32], v: &Element) -> Result<MultFormula> {
        self.mult_formula_for(&Element::monomial(self.generator()), exponents, v)
    }

    /// `main = Σ_{m=0}^{n} Σ_{j=-m}^{n} (-1)^m C(m+n,n) C(n+r, j+m) Σ_k :P(k): v`
    /// where `r` is the weight of the state, `k` runs over ordered tuples of
    /// length `i₁+⋯+i_t` summing to `n−j`, and `P(k)` is the product of
    /// `C(k_l+s-1, s-1) u_{-k_l-s}` with the block of label `s` repeated `i_s` times.
    /// All these modes are creation modes; blocks with larger `s` stand to the left.
    pub fn mult_formula_for(&self, u: &Element, exponents: &[u32], v: &Element) -> Result<MultFormula> {
        let wu = self.homogeneous_weight(u)?;
        if exponents.is_empty() {
            return Err(Error::Precondition("need t ≥ 1".into()));
        }
        let n = self.n();
        let state = self.power_state(u, exponents);
        let r: i64 = exponents.iter().enumerate().map(|(s, &i)| (wu + s as i64) * i as i64).sum();
        // Labels in application order: the rightmost operator (label 1) first.
        let labels: Vec<i64> = exponents.iter().enumerate().flat_map(|(s, &i)| std::iter::repeat(s as i64 + 1).take(i as usize)).collect();
        let mut main = Element::zero();
        for m in 0..=n {
            for j in -m..=n {
                let outer = binom(m + n, n) * binom(n + r, j + m) * Rational::from_integer(sign(m).into());
                if outer == Rational::from_integer(0.into()) {
                    continue;
                }
                let mut inner = Element::zero();
                compositions(labels.len(), n - j, &mut |ks| {
                    let mut c = Rational::from_integer(1.into());
                    let mut w = v.clone();
                    for (&k, &s) in ks.iter().zip(&labels) {
                        c *= binom(k + s - 1, s - 1);
                        if w.is_zero() {
                            break;
                        }
                        w = self.space().mode(u, -k - s, &w);
                    }
                    if !w.is_zero() {
                        inner.add_scaled(&w, &rc(c));
                    }
                });
                main.add_scaled(&inner, &rc(outer));
            }
        }
        let star = self.star(&state, v)?;
        let g = star.sub(&main);
        Ok(MultFormula { state, main, g })
    }

    /// One-exponent formula for the generator, see [`ZhuContext::cor_mult_for`].
    pub fn cor_mult(&self, t: i64, i: u32, v: &Element) -> Result<CorMult> {
        self.cor_mult_for(&Element::monomial(self.generator()), t, i, v)
    }

    /// `main = Σ_{m=0}^{n} Σ_{j=0}^{m+n} Σ_{p₁+⋯+p_i=j} (-1)^m C(m+n,n)
    /// C(n+i(wt u+t-1), m+n-j) Π_l C(p_l+t-1, t-1) u_{-p_l-t} v`.
    ///
    /// For `i = 1` and `n + wt u + t − 1 ≥ 0` the remainder has the finite form
    /// `g₁ = Σ_{m} Σ_{j=m-k+1}^{-1} (-1)^m C(m+n,n) C(n+k-1, m+n-j) C(j+t-1, t-1) u_{-j-t} v`
    /// with `k = wt u + t`; it is empty when `k < 2`. In that case the sum
    /// `main + g₁` is checked against `*ₙ` before returning.
    pub fn cor_mult_for(&self, u: &Element, t: i64, i: u32, v: &Element) -> Result<CorMult> {
        let wu = self.homogeneous_weight(u)?;
        if t < 1 || i < 1 {
            return Err(Error::Precondition(format!("need i, t ≥ 1, got i = {i}, t = {t}")));
        }
        let n = self.n();
        let top = n + i as i64 * (wu + t - 1);
        let mut main = Element::zero();
        for m in 0..=n {
            for j in 0..=m + n {
                let outer = binom(m + n, n) * binom(top, m + n - j) * Rational::from_integer(sign(m).into());
                if outer == Rational::from_integer(0.into()) {
                    continue;
                }
                compositions(i as usize, j, &mut |ps| {
                    let mut c = outer.clone();
                    let mut w = v.clone();
                    for &p in ps {
                        c *= binom(p + t - 1, t - 1);
                        if w.is_zero() {
                            break;
                        }
                        w = self.space().mode(u, -p - t, &w);
                    }
                    if !w.is_zero() {
                        main.add_scaled(&w, &rc(c));
                    }
                });
            }
        }
        let k = wu + t;
        let g1 = if i == 1 && n + k - 1 >= 0 {
            let mut g = Element::zero();
            for m in 0..=n {
                for j in (m - k + 1)..=-1 {
                    let c = binom(m + n, n) * binom(n + k - 1, m + n - j) * binom(j + t - 1, t - 1) * Rational::from_integer(sign(m).into());
                    if c != Rational::from_integer(0.into()) {
                        g.add_scaled(&self.space().mode(u, -j - t, v), &rc(c));
                    }
                }
            }
            let state = self.power_state(u, &[vec![0; t as usize - 1], vec![1]].concat());
            let star = self.star(&state, v)?;
            if main.add(&g) != star {
                return Err(Error::Precondition("main + g₁ differs from the star product".into()));
            }
            Some(g)
        } else {
            None
        };
        Ok(CorMult { main, g1 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::voa::VoaPresentation;

    fn ctx(p: VoaPresentation, n: u32) -> ZhuContext {
        ZhuContext::new(p, n)
    }

    #[test]
    fn cj_examples() {
        assert_eq!(cj_coefficient(1, 1), rat(0));
        assert_eq!(cj_coefficient(1, 2), rat(-3));
        assert_ne!(cj_coefficient(2, -3), rat(0));
        assert_eq!(cj_coefficient(2, -3), cj_closed_form(2, -3));
    }

    #[test]
    fn cj_regimes() {
        for n in 0..=6 {
            for j in -12..=12 {
                let direct = cj_coefficient(n, j);
                assert_eq!(direct, cj_closed_form(n, j), "n={n} j={j}");
                assert_eq!(direct == rat(0), j != 0 && j.abs() <= n, "n={n} j={j}");
            }
        }
    }

    #[test]
    fn compositions_count() {
        let mut c = 0;
        compositions(3, 4, &mut |_| c += 1);
        assert_eq!(c, 15);
        let mut c = 0;
        compositions(0, 0, &mut |_| c += 1);
        assert_eq!(c, 1);
    }

    #[test]
    fn vacuum_right_factor_has_no_remainder() {
        for p in [VoaPresentation::Heisenberg, VoaPresentation::Virasoro] {
            for n in 0..=2 {
                let z = ctx(p, n);
                for ex in [vec![2], vec![1, 1], vec![0, 2], vec![2, 1], vec![1, 0, 1]] {
                    let f = z.mult_formula(&ex, &Element::vacuum()).unwrap();
                    assert!(f.g.is_zero(), "{p:?} n={n} {ex:?}");
                }
            }
        }
    }

    #[test]
    fn single_factor_level_zero() {
        let z = ctx(VoaPresentation::Heisenberg, 0);
        let a = z.parse("a(-1)|0>").unwrap();
        let c = z.cor_mult(1, 1, &a).unwrap();
        assert_eq!(c.total().unwrap(), z.parse("a(-1)^2|0>").unwrap());
    }

    #[test]
    fn closed_g1_matches_star() {
        for p in [VoaPresentation::Heisenberg, VoaPresentation::Virasoro] {
            for n in 0..=3 {
                let z = ctx(p, n);
                let vs: &[&str] = match p {
                    VoaPresentation::Heisenberg => &["|0>", "a(-1)|0>", "a(-2)a(-1)|0>", "a(-3)|0>"],
                    VoaPresentation::Virasoro => &["|0>", "L(-2)|0>", "L(-3)L(-2)|0>", "L(-4)|0>"],
                };
                for t in 1..=3 {
                    for s in vs {
                        let v = z.parse(s).unwrap();
                        let c = z.cor_mult(t, 1, &v).unwrap();
                        assert!(c.g1.is_some());
                    }
                }
            }
        }
    }

    #[test]
    fn vacuum_state_takes_zero_branch() {
        // u = 𝟏: wt u + t = 1 < 2, so g₁ vanishes.
        for n in 0..=2 {
            let z = ctx(VoaPresentation::Heisenberg, n);
            let v = z.parse("a(-2)a(-1)|0>").unwrap();
            let c = z.cor_mult_for(&Element::vacuum(), 1, 1, &v).unwrap();
            assert_eq!(c.g1, Some(Element::zero()));
            assert_eq!(c.main, v);
        }
    }

    #[test]
    fn two_factors_on_vacuum() {
        let z = ctx(VoaPresentation::Heisenberg, 1);
        let c = z.cor_mult(1, 2, &Element::vacuum()).unwrap();
        let a2 = z.parse("a(-1)^2|0>").unwrap();
        assert_eq!(c.main, z.star(&a2, &Element::vacuum()).unwrap());
        let f = z.mult_formula(&[2], &Element::vacuum()).unwrap();
        assert_eq!(f.main.add(&f.g), z.star(&a2, &Element::vacuum()).unwrap());
        assert_eq!(f.main, c.main);
    }

    #[test]
    fn corollary_agrees_with_lemma() {
        for n in 0..=2 {
            let z = ctx(VoaPresentation::Heisenberg, n);
            let v = z.parse("a(-2)a(-1)|0> + a(-1)|0>").unwrap();
            for t in 1..=3usize {
                for i in 1..=2u32 {
                    let mut ex = vec![0; t];
                    ex[t - 1] = i;
                    let f = z.mult_formula(&ex, &v).unwrap();
                    let c = z.cor_mult(t as i64, i, &v).unwrap();
                    assert_eq!(f.main, c.main, "n={n} t={t} i={i}");
                }
            }
        }
    }
}
