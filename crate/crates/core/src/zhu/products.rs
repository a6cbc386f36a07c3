use crate::arith::{binom_int, Coeff, Rational};
use crate::error::{Error, Result};
use crate::voa::{Element, Monomial};

use super::ZhuContext;

fn bc(p: i64, q: i64) -> Coeff {
    Coeff::from_rational(Rational::from_integer(binom_int(p, q)))
}

impl ZhuContext {
    fn check_weight(&self, u: &Element) -> Result<()> {
        if let Some(w) = u.min_weight() {
            if w + self.n() < 0 {
                return Err(Error::Precondition(format!("wt u + n ≥ 0 fails: wt u = {w}, n = {}", self.n())));
            }
        }
        Ok(())
    }

    /// `Σ_i C(e, i) · u_{i+shift} v` over the components of `u`, where the
    /// exponent `e` is `wt u + n + extra`.
    fn residue_sum(&self, u: &Element, v: &Element, extra: i64, shift: i64) -> Element {
        let mut out = Element::zero();
        for (um, uc) in u.iter() {
            out.add_scaled(&self.residue_sum_mono(um, v, extra, shift), uc);
        }
        out
    }

    fn residue_sum_mono(&self, um: &Monomial, v: &Element, extra: i64, shift: i64) -> Element {
        let e = um.weight() + self.n() + extra;
        let mut out = Element::zero();
        for (vm, vc) in v.iter() {
            let bound = um.weight() + vm.weight();
            for i in 0..=e {
                if i + shift >= bound {
                    break;
                }
                let t = self.space().mode_mono(um, i + shift, vm);
                if !t.is_zero() {
                    out.add_scaled(&t, &(&bc(e, i) * vc));
                }
            }
        }
        out
    }

    /// `u ∘ₙ v = Res_x (1+x)^{wt u+n} Y(u,x)v / x^{2n+2}`.
    pub fn circle(&self, u: &Element, v: &Element) -> Result<Element> {
        self.check_weight(u)?;
        Ok(self.residue_sum(u, v, 0, -2 * self.n() - 2))
    }

    /// `Res_x (1+x)^{wt u+n+k} Y(u,x)v / x^{m+2n+2}` for `m ≥ k ≥ 0`; these lie in `Oₙ°(V)`.
    pub fn generalized_circle(&self, u: &Element, v: &Element, m: i64, k: i64) -> Result<Element> {
        if !(m >= k && k >= 0) {
            return Err(Error::Precondition(format!("generalized circle needs m ≥ k ≥ 0, got m = {m}, k = {k}")));
        }
        self.check_weight(u)?;
        Ok(self.residue_sum(u, v, k, -m - 2 * self.n() - 2))
    }

    /// `u *ₙ v = Σ_{m=0}^{n} (-1)^m C(m+n, n) Res_x (1+x)^{wt u+n} Y(u,x)v / x^{n+m+1}`.
    pub fn star(&self, u: &Element, v: &Element) -> Result<Element> {
        self.check_weight(u)?;
        let n = self.n();
        let mut out = Element::zero();
        for m in 0..=n {
            let sign = if m % 2 == 0 { 1 } else { -1 };
            let c = bc(m + n, n).scale(&Rational::from_integer(sign.into()));
            out.add_scaled(&self.residue_sum(u, v, 0, -n - m - 1), &c);
        }
        Ok(out)
    }

    /// Left-associated product `((f₁ *ₙ f₂) *ₙ f₃) ⋯`; the empty product is `𝟏`.
    pub fn star_all<'a>(&self, factors: impl IntoIterator<Item = &'a Element>) -> Result<Element> {
        let mut acc: Option<Element> = None;
        for f in factors {
            acc = Some(match acc {
                None => f.clone(),
                Some(a) => self.star(&a, f)?,
            });
        }
        Ok(acc.unwrap_or_else(Element::vacuum))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::voa::VoaPresentation;

    fn heis(n: u32) -> ZhuContext {
        ZhuContext::new(VoaPresentation::Heisenberg, n)
    }

    #[test]
    fn circle_level_zero_heisenberg() {
        let z = heis(0);
        let a = z.parse("a(-1)|0>").unwrap();
        assert_eq!(z.circle(&a, &a).unwrap(), z.parse("a(-2)a(-1)|0> + a(-1)^2|0>").unwrap());
        // Half of (L(-1)+L(0)) α(-1)²𝟏.
        let ol = z.ol(&z.parse("a(-1)^2|0>").unwrap());
        assert_eq!(z.circle(&a, &a).unwrap().scale_rational(&crate::arith::rat(2)), ol);
    }

    #[test]
    fn vacuum_products() {
        for n in 0..3 {
            let z = heis(n);
            let v = z.parse("a(-3)a(-1)|0> - 2 a(-2)|0>").unwrap();
            assert!(z.circle(&Element::vacuum(), &v).unwrap().is_zero());
            assert_eq!(z.star(&Element::vacuum(), &v).unwrap(), v);
        }
    }

    #[test]
    fn generalized_circle_examples() {
        let z = heis(0);
        let a = z.parse("a(-1)|0>").unwrap();
        assert_eq!(z.generalized_circle(&a, &a, 0, 0).unwrap(), z.circle(&a, &a).unwrap());
        assert_eq!(z.generalized_circle(&a, &a, 1, 0).unwrap(), z.parse("a(-3)a(-1)|0> + a(-2)a(-1)|0>").unwrap());
        assert!(z.generalized_circle(&a, &a, 1, 2).is_err());
        let z = heis(1);
        let u = z.parse("a(-2)a(-1)|0>").unwrap();
        let v = z.parse("a(-1)|0>").unwrap();
        for (m, k) in [(2, 2), (3, 1), (4, 3)] {
            let mut rhs = Element::zero();
            for j in 0..=k {
                rhs.add_scaled(&z.generalized_circle(&u, &v, m - j, 0).unwrap(), &bc(k, j));
            }
            assert_eq!(z.generalized_circle(&u, &v, m, k).unwrap(), rhs, "m={m} k={k}");
        }
    }

    #[test]
    fn star_level_zero() {
        let z = heis(0);
        let a = z.parse("a(-1)|0>").unwrap();
        assert_eq!(z.star(&a, &a).unwrap(), z.parse("a(-1)^2|0>").unwrap());
    }
}
