use crate::arith::{binom, Coeff};
use crate::error::{Error, Result};
use crate::voa::Element;

use super::ZhuContext;

impl ZhuContext {
    /// The coefficients of `x⁰ … x^order` in the `∼ₙ`-reduced regular part
    /// `Y⁺(u,x)v = Σ_{k≥1} u_{-k}v x^{k-1}`.
    ///
    /// Powers `x^{k-1}` with `k ≤ n − wt u + 1` keep `u_{-k}v`; the power
    /// `x^{m − wt u}`, `m ≥ n+1`, becomes
    /// `Σ_{k=n−wt u+2}^{2n+1} (-1)^{m−wt u} C(m−n−1, k−n+wt u−2) C(m−k−wt u, 2n−k+1) u_{-k}v`.
    /// For `wt u = −n` only the first `2n+1` powers survive, unchanged.
    pub fn yplus_reduced(&self, u: &Element, v: &Element, order: usize) -> Result<Vec<(usize, Element)>> {
        if u.is_zero() || !u.is_homogeneous() {
            return Err(Error::Precondition("u must be nonzero and homogeneous".into()));
        }
        let n = self.n();
        let w = u.min_weight().expect("nonzero");
        if w < -n {
            return Err(Error::Precondition(format!("need wt u ≥ -n, got wt u = {w}, n = {n}")));
        }
        let raw = |k: i64| self.space().mode(u, -k, v);
        let mut out = Vec::with_capacity(order + 1);
        for p in 0..=order as i64 {
            let c = if w == -n {
                if p <= 2 * n {
                    raw(p + 1)
                } else {
                    Element::zero()
                }
            } else if p <= n - w {
                raw(p + 1)
            } else {
                let m = p + w;
                let sign = if (m - w) % 2 == 0 { 1 } else { -1 };
                let mut acc = Element::zero();
                for k in (n - w + 2)..=(2 * n + 1) {
                    let c = binom(m - n - 1, k - n + w - 2) * binom(m - k - w, 2 * n - k + 1);
                    if c != crate::arith::rat(0) {
                        acc.add_scaled(&raw(k), &Coeff::from_rational(c * crate::arith::rat(sign)));
                    }
                }
                acc
            };
            out.push((p as usize, c));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::voa::VoaPresentation;
    use crate::zhu::SpanOptions;

    #[test]
    fn heisenberg_level_one_fixture() {
        let z = ZhuContext::new(VoaPresentation::Heisenberg, 1);
        let a = z.parse("a(-1)|0>").unwrap();
        let c = z.yplus_reduced(&a, &Element::vacuum(), 4).unwrap();
        assert_eq!(c[0].1, z.parse("a(-1)|0>").unwrap());
        assert_eq!(c[1].1, z.parse("a(-2)|0>").unwrap());
        assert_eq!(c[2].1, z.parse("a(-3)|0>").unwrap());
        assert_eq!(c[3].1, z.parse("-2 a(-3)|0> - a(-2)|0>").unwrap());
    }

    #[test]
    fn lowest_weight_case() {
        let z = ZhuContext::new(VoaPresentation::Heisenberg, 0);
        let v = z.parse("a(-2)a(-1)|0>").unwrap();
        let c = z.yplus_reduced(&Element::vacuum(), &v, 5).unwrap();
        assert_eq!(c.iter().filter(|(_, e)| !e.is_zero()).count(), 1);
        assert_eq!(c[0].1, v);
    }

    #[test]
    fn differences_lie_in_circle_span() {
        for (p, us, vs) in [
            (VoaPresentation::Heisenberg, ["a(-1)|0>", "a(-1)^2|0>"], ["|0>", "a(-1)|0>"]),
            (VoaPresentation::Virasoro, ["L(-2)|0>", "L(-3)|0>"], ["|0>", "L(-2)|0>"]),
        ] {
            for n in 0..=1 {
                let z = ZhuContext::new(p, n);
                for (us, vs) in us.iter().zip(vs.iter().cycle()) {
                    let (u, v) = (z.parse(us).unwrap(), z.parse(vs).unwrap());
                    for (pow, c) in z.yplus_reduced(&u, &v, 5).unwrap() {
                        let raw = z.space().mode(&u, -(pow as i64) - 1, &v);
                        let diff = c.sub(&raw);
                        let mut opts = SpanOptions::with_bound(2);
                        opts.circles_only = true;
                        assert!(z.membership_with(&diff, &opts).is_found(), "{p:?} n={n} u={us} v={vs} x^{pow}");
                    }
                }
            }
        }
    }

    #[test]
    fn only_low_modes_survive() {
        for p in [VoaPresentation::Heisenberg, VoaPresentation::Virasoro] {
            for n in 1..=3 {
                let z = ZhuContext::new(p, n);
                let u = Element::monomial(z.generator());
                for (_, c) in z.yplus_reduced(&u, &Element::vacuum(), 12).unwrap() {
                    assert!(c.monomials().all(|m| m.len() == 1 && m.modes()[0] <= z.top_mode()));
                }
            }
        }
    }
}
