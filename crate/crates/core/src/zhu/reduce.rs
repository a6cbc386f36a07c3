use std::collections::BTreeMap;
use std::sync::Arc;

use crate::arith::{binom, binom_int, Coeff, Rational};
use crate::error::{Error, Result};
use crate::voa::{Element, Monomial};

use super::{Atom, MembershipCertificate, ZhuContext};

/// One rewrite: `w = Σ coeff·atom + rest`, with every word of `rest` below
/// `w` in the reduction order.
#[derive(Debug)]
pub(crate) struct Step {
    pub(crate) atoms: Vec<(Atom, Coeff)>,
    pub(crate) rest: Element,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(super) enum Rules {
    DeepOnly,
    Full,
}

/// `v ≡ output`, with `certificate.target = v − output`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub output: Element,
    pub certificate: MembershipCertificate,
}

type Key = (i64, usize, usize, Monomial);

/// Coefficients of the closed form
/// `u_{wt u−m−1} v ∼ₙ (−1)^{m+wt u} Σ_{j=1}^{n+wt u} C(m−n−1, j−1) C(m−n−j−1, n+wt u−j) u_{wt u−n−j−1} v`
/// as `(mode index, coefficient)` pairs, zero coefficients dropped. For
/// `wt u = −n` and `m ≥ n+1` the right side is `0`.
pub fn deep_mode_coefficients(n: i64, wt_u: i64, m: i64) -> Vec<(i64, Rational)> {
    assert!(wt_u >= -n, "needs wt u ≥ -n");
    if wt_u == -n {
        return Vec::new();
    }
    let sign = if (m + wt_u) % 2 == 0 { 1 } else { -1 };
    (1..=n + wt_u)
        .filter_map(|j| {
            let c = binom(m - n - 1, j - 1) * binom(m - n - j - 1, n + wt_u - j) * Rational::from_integer(sign.into());
            (c != Rational::from_integer(0.into())).then_some((wt_u - n - j - 1, c))
        })
        .collect()
}

impl ZhuContext {
    fn key(&self, m: Monomial) -> Key {
        (m.weight(), m.len(), m.count(self.top_mode()), m)
    }

    fn is_deep(&self, w: &Monomial) -> bool {
        w.leading().is_some_and(|k| k >= self.deep_mode())
    }

    pub(crate) fn step(&self, w: &Monomial) -> Option<Arc<Step>> {
        if let Some(s) = self.inner.steps.read().get(w) {
            return s.clone();
        }
        let s = self.compute_step(w).map(Arc::new);
        self.inner.steps.write().insert(w.clone(), s.clone());
        s
    }

    fn compute_step(&self, w: &Monomial) -> Option<Step> {
        let lead = w.leading()?;
        let space = self.space();
        let g = space.gen_weight();
        let n = self.n();
        if lead >= self.deep_mode() {
            // w = u_{-k} w' with k ≥ 2n+2.
            let k = lead as i64 - g + 1;
            let tail = w.tail();
            let tail_e = Element::monomial(tail.clone());
            let mut rest = Element::zero();
            for i in 1..=g + n {
                let t = space.apply_generator_mode(i - k, &tail_e);
                rest.add_scaled(&t, &Coeff::from_rational(-Rational::from_integer(binom_int(g + n, i))));
            }
            let atom = Atom::Gc(self.generator(), tail, (k - 2 * n - 2) as u32, 0);
            return Some(Step { atoms: vec![(atom, Coeff::one())], rest });
        }
        if n >= 1 && lead == self.top_mode() {
            let rep = w.without_one(lead).expect("leading present").with_inserted(lead - 1);
            let mut r = self.ol(&Element::monomial(rep.clone()));
            let c = r.coeff(w);
            assert!(!c.is_zero(), "raising coefficient vanishes for {w:?}");
            let inv = c.inv().expect("nonzero");
            r.add_term(w.clone(), -c);
            let rest = r.scale(&-inv.clone());
            return Some(Step { atoms: vec![(Atom::Ol(rep), inv)], rest });
        }
        None
    }

    pub(super) fn run(&self, v: &Element, rules: Rules, track: bool) -> (Element, BTreeMap<Atom, Coeff>) {
        let mut work: BTreeMap<Key, Coeff> = BTreeMap::new();
        for (m, c) in v.iter() {
            work.insert(self.key(m.clone()), c.clone());
        }
        let mut out = Element::zero();
        let mut cert: BTreeMap<Atom, Coeff> = BTreeMap::new();
        while let Some((key, c)) = work.pop_last() {
            let w = key.3;
            let step = match rules {
                Rules::DeepOnly if !self.is_deep(&w) => None,
                _ => self.step(&w),
            };
            let Some(step) = step else {
                out.add_term(w, c);
                continue;
            };
            if track {
                for (a, ac) in &step.atoms {
                    let slot = cert.entry(a.clone()).or_default();
                    *slot = &*slot + &(&c * ac);
                }
            }
            for (m, rc) in step.rest.iter() {
                let k = self.key(m.clone());
                let slot = work.entry(k).or_default();
                *slot = &*slot + &(&c * rc);
                if slot.is_zero() {
                    let k = self.key(m.clone());
                    work.remove(&k);
                }
            }
        }
        cert.retain(|_, c| !c.is_zero());
        (out, cert)
    }

    fn certified(&self, v: &Element, output: Element, atoms: BTreeMap<Atom, Coeff>) -> Reduction {
        let certificate = MembershipCertificate::from_atoms(self, v.sub(&output), atoms);
        Reduction { output, certificate }
    }

    /// Rewrites every deep mode `u_{-k}`, `k ≥ 2n+2`, until none is left;
    /// the result is `∼ₙ v`. Words with modes in `u_{-(n+1)} … u_{-(2n+1)}` are untouched.
    pub fn recursion_reduce(&self, v: &Element) -> Element {
        self.run(v, Rules::DeepOnly, false).0
    }

    /// [`ZhuContext::recursion_reduce`] with an `Oₙ°` certificate for `v − output`.
    pub fn recursion_reduce_certified(&self, v: &Element) -> Reduction {
        let (out, atoms) = self.run(v, Rules::DeepOnly, true);
        self.certified(v, out, atoms)
    }

    /// Eliminates the mode `u_{-(2n+1)}`: each word containing it is rewritten
    /// (recursing through deep modes as they appear) until no word contains
    /// it; other words are left as they are.
    pub fn l_reduce(&self, v: &Element) -> Result<Element> {
        Ok(self.l_reduce_certified(v)?.output)
    }

    pub fn l_reduce_certified(&self, v: &Element) -> Result<Reduction> {
        if self.level() == 0 {
            return Err(Error::Precondition("l_reduce needs n ≥ 1".into()));
        }
        let top = self.top_mode();
        let (hit, keep): (Vec<_>, Vec<_>) = v.iter().map(|(m, c)| (m.clone(), c.clone())).partition(|(m, _)| m.count(top) > 0);
        let (mut out, atoms) = self.run(&Element::from_terms(hit), Rules::Full, true);
        out = out.add(&Element::from_terms(keep));
        Ok(self.certified(v, out, atoms))
    }

    /// Fixpoint of both rewrites: the output is `≡ₙ v` and only uses the
    /// word labels [`ZhuContext::normal_form_modes`].
    pub fn spanning_normal_form(&self, v: &Element) -> Element {
        self.run(v, Rules::Full, false).0
    }

    pub fn spanning_normal_form_certified(&self, v: &Element) -> Reduction {
        let (out, atoms) = self.run(v, Rules::Full, true);
        self.certified(v, out, atoms)
    }

    /// Whether every word of `v` only uses [`ZhuContext::normal_form_modes`].
    pub fn in_normal_form_range(&self, v: &Element) -> bool {
        let r = self.normal_form_modes();
        v.monomials().all(|m| m.modes().iter().all(|k| r.contains(k)))
    }
}
