use crate::arith::Coeff;
use crate::error::{Error, Result};
use crate::voa::Element;

use super::{Membership, MembershipCertificate, SpanKind, SpanOptions, SpanningVector, ZhuContext};

/// Verdict of [`ZhuContext::ol_separation_check`].
#[derive(Clone, Debug, PartialEq)]
pub enum Separation {
    /// `(L(-1)+L(0))u ∉ Oₙ°(V)`, proven: the target has a nonzero component
    /// in weight `weight < floor`, while every `Oₙ°` spanning vector lives in
    /// weights `≥ floor = n + 1`.
    Separated { weight: i64, floor: i64, component: Element },
    /// Neither a proof nor a certificate within the search bound.
    NotSeparatedUpToBound(i64),
    /// `(L(-1)+L(0))u ∈ Oₙ°(V)`, with a certificate using circle-type vectors only.
    FoundMembership(MembershipCertificate),
}

impl Separation {
    pub fn is_separated(&self) -> bool {
        matches!(self, Separation::Separated { .. })
    }
}

impl ZhuContext {
    /// Lowest weight any `Oₙ°` spanning vector can reach.
    ///
    /// `Res_x (1+x)^{wt a+n+k} Y(a,x)b / x^{m+2n+2}` only involves `a_p b` with
    /// `p ≤ wt a + n + k − m − 2n − 2 ≤ wt a − n − 2`, so its components have
    /// weight `wt a + wt b − p − 1 ≥ wt b + n + 1 ≥ n + 1`.
    pub fn circle_weight_floor(&self) -> i64 {
        self.n() + 1
    }

    /// Decides whether `(L(-1)+L(0))u` lies in `Oₙ°(V)`.
    ///
    /// At `n = 0` the vector equals `u ∘₀ 𝟏`. For `n ≥ 1` the weight count of
    /// [`ZhuContext::circle_weight_floor`] settles every `u` with
    /// `1 ≤ wt u ≤ n`, since then `L(0)u = (wt u)u` sits below the floor.
    /// Anything else falls back to a bounded search with circle-type vectors.
    pub fn ol_separation_check(&self, u: &Element, bound: i64) -> Result<Separation> {
        if !u.is_homogeneous() {
            return Err(Error::Precondition("separation check needs a homogeneous u".into()));
        }
        let target = self.ol(u);
        if self.level() == 0 {
            let kind = SpanKind::Circle { u: u.clone(), v: Element::vacuum() };
            let sv = SpanningVector::new(self, kind)?;
            let combination = if sv.value.is_zero() { vec![] } else { vec![(Coeff::one(), sv)] };
            let cert = MembershipCertificate { presentation: self.presentation(), level: 0, target, combination, remainder: None };
            assert!(cert.recheck(self), "u ∘₀ 𝟏 = (L(-1)+L(0))u");
            return Ok(Separation::FoundMembership(cert));
        }
        let floor = self.circle_weight_floor();
        let low = target.components().into_iter().find(|(w, c)| *w < floor && !c.is_zero());
        if let Some((weight, component)) = low {
            return Ok(Separation::Separated { weight, floor, component });
        }
        let mut opts = SpanOptions::with_bound(bound);
        opts.circles_only = true;
        Ok(match self.membership_with(&target, &opts) {
            Membership::Found(c) => Separation::FoundMembership(c),
            Membership::NotFoundUpToBound(b) => Separation::NotSeparatedUpToBound(b),
        })
    }

}
