use std::collections::HashMap;

use parking_lot::RwLock;

use crate::arith::{binom_int, ratio, Param, RatFunc, Rational};

use super::{Element, Monomial, VoaPresentation};

/// Which lowest vector the PBW words are built on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lowest {
    /// The vacuum `𝟏` of the vertex operator algebra itself.
    Vacuum,
    /// Fock module `M(1, λ)`: `α(0) = λ`, `α(m > 0)` kills `v_λ`.
    Fock,
    /// Verma module `M(c, h)`: `L(0) = h`, `L(m > 0)` kills `v_h`.
    Verma,
}

type ModeKey = (Monomial, i64, Monomial);

/// A graded space spanned by PBW words on a lowest vector, with the action of
/// generator modes and of the modes of arbitrary states of `V`.
///
/// Both memo tables are pure caches: a key always maps to the same value, so
/// sharing a `Space` between threads cannot change any result.
pub struct Space {
    pres: VoaPresentation,
    lowest: Lowest,
    gen_memo: RwLock<HashMap<(i64, Monomial), Element>>,
    mode_memo: RwLock<HashMap<ModeKey, Element>>,
}

impl std::fmt::Debug for Space {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Space").field("pres", &self.pres).field("lowest", &self.lowest).finish()
    }
}

impl Space {
    /// The vertex operator algebra itself.
    pub fn vacuum(pres: VoaPresentation) -> Space {
        Space::with_lowest(pres, Lowest::Vacuum)
    }

    pub fn fock() -> Space {
        Space::with_lowest(VoaPresentation::Heisenberg, Lowest::Fock)
    }

    pub fn verma() -> Space {
        Space::with_lowest(VoaPresentation::Virasoro, Lowest::Verma)
    }

    /// Panics on a mismatched pairing (Fock needs Heisenberg, Verma needs Virasoro).
    pub fn with_lowest(pres: VoaPresentation, lowest: Lowest) -> Space {
        match (pres, lowest) {
            (_, Lowest::Vacuum) | (VoaPresentation::Heisenberg, Lowest::Fock) | (VoaPresentation::Virasoro, Lowest::Verma) => {}
            _ => panic!("{lowest:?} is not a module for {pres:?}"),
        }
        Space { pres, lowest, gen_memo: RwLock::new(HashMap::new()), mode_memo: RwLock::new(HashMap::new()) }
    }

    pub fn presentation(&self) -> VoaPresentation {
        self.pres
    }

    pub fn lowest(&self) -> Lowest {
        self.lowest
    }

    pub fn is_vacuum(&self) -> bool {
        self.lowest == Lowest::Vacuum
    }

    /// Smallest mode `k` allowed in a basis word `u(-k)…`.
    pub fn min_mode(&self) -> u16 {
        match self.lowest {
            Lowest::Vacuum => self.pres.vacuum_annihilation() as u16,
            _ => 1,
        }
    }

    pub fn lowest_symbol(&self) -> &'static str {
        match self.lowest {
            Lowest::Vacuum => "|0>",
            Lowest::Fock => "|lambda>",
            Lowest::Verma => "|h>",
        }
    }

    pub fn gen_weight(&self) -> i64 {
        self.pres.gen_weight()
    }

    /// Basis words of degree exactly `d`.
    pub fn basis(&self, d: i64) -> Vec<Monomial> {
        super::monomials_of_weight(d, self.min_mode())
    }

    /// Basis words of degree at most `d`.
    pub fn basis_up_to(&self, d: i64) -> Vec<Monomial> {
        super::monomials_up_to(d, self.min_mode())
    }

    /// The generator state `u(-g)·𝟏` with `g` the generator weight
    /// (`α(-1)𝟏` or `L(-2)𝟏`), i.e. `u_{-1}𝟏` in vertex indexing.
    pub fn generator_state(&self) -> Element {
        Element::monomial(Monomial::from_modes(&[self.gen_weight() as u16]))
    }

    /// Conformal vector: `½α(-1)²𝟏` or `L(-2)𝟏`.
    pub fn omega(&self) -> Element {
        match self.pres {
            VoaPresentation::Heisenberg => Element::term(Monomial::from_modes(&[1, 1]), RatFunc::from_rational(ratio(1, 2))),
            VoaPresentation::Virasoro => Element::monomial(Monomial::from_modes(&[2])),
        }
    }

    fn lowest_action(&self, m: i64) -> Element {
        match (self.pres, self.lowest) {
            (_, Lowest::Vacuum) => {
                if m <= -self.pres.vacuum_annihilation() {
                    Element::monomial(Monomial::from_modes(&[(-m) as u16]))
                } else {
                    Element::zero()
                }
            }
            (VoaPresentation::Heisenberg, Lowest::Fock) => match m {
                m if m < 0 => Element::monomial(Monomial::from_modes(&[(-m) as u16])),
                0 => Element::term(Monomial::vacuum(), RatFunc::param(Param::Lambda)),
                _ => Element::zero(),
            },
            (VoaPresentation::Virasoro, Lowest::Verma) => match m {
                m if m < 0 => Element::monomial(Monomial::from_modes(&[(-m) as u16])),
                0 => Element::term(Monomial::vacuum(), RatFunc::param(Param::H)),
                _ => Element::zero(),
            },
            _ => unreachable!("checked at construction"),
        }
    }

    /// `u(m)` applied to a basis word, in PBW-canonical form.
    pub fn apply_mode(&self, m: i64, w: &Monomial) -> Element {
        match self.pres {
            VoaPresentation::Heisenberg => self.heis_apply(m, w),
            VoaPresentation::Virasoro => self.vir_apply(m, w),
        }
    }

    /// `u(m)` applied to an element.
    pub fn apply_mode_elem(&self, m: i64, v: &Element) -> Element {
        let mut out = Element::zero();
        for (w, c) in v.iter() {
            out.add_scaled(&self.apply_mode(m, w), c);
        }
        out
    }

    /// The vertex-indexed generator mode `u_j` applied to an element.
    pub fn apply_generator_mode(&self, j: i64, v: &Element) -> Element {
        self.apply_mode_elem(self.pres.physics_of_vertex(j), v)
    }

    fn heis_apply(&self, m: i64, w: &Monomial) -> Element {
        if m < 0 {
            return Element::monomial(w.with_inserted((-m) as u16));
        }
        if m == 0 {
            return match self.lowest {
                Lowest::Fock => Element::term(w.clone(), RatFunc::param(Param::Lambda)),
                _ => Element::zero(),
            };
        }
        let k = m as u16;
        let e = w.count(k);
        if e == 0 {
            return Element::zero();
        }
        Element::term(w.without_one(k).expect("present"), RatFunc::from_int(m * e as i64))
    }

    fn vir_apply(&self, m: i64, w: &Monomial) -> Element {
        let Some(k1) = w.leading() else {
            return self.lowest_action(m);
        };
        if -m >= k1 as i64 {
            return Element::monomial(w.with_prepended((-m) as u16));
        }
        let key = (m, w.clone());
        if let Some(v) = self.gen_memo.read().get(&key) {
            return v.clone();
        }
        // L(m) L(-k) W = L(-k) L(m) W + [L(m), L(-k)] W
        let k = k1 as i64;
        let tail = w.tail();
        let inner = self.vir_apply(m, &tail);
        let mut out = self.apply_mode_elem(-k, &inner);
        let br = self.pres.bracket(m, -k);
        if !br.mode_coeff.is_zero() {
            out.add_scaled(&self.vir_apply(m - k, &tail), &br.mode_coeff);
        }
        if !br.central.is_zero() {
            out.add_term(tail, br.central);
        }
        self.gen_memo.write().insert(key, out.clone());
        out
    }

    /// Applies the word `u(m₁)u(m₂)⋯u(m_r)` (physics modes) to the lowest
    /// vector and returns the PBW-canonical result.
    pub fn normalize(&self, word: &[i64]) -> Element {
        let mut v = Element::monomial(Monomial::vacuum());
        for &m in word.iter().rev() {
            v = self.apply_mode_elem(m, &v);
            if v.is_zero() {
                break;
            }
        }
        v
    }

    /// `N` such that `w_p v = 0` for all `p ≥ N`: the output weight
    /// `wt w - p - 1 + wt v` must be nonnegative.
    pub fn annihilation_bound(&self, w: &Element, v: &Element) -> i64 {
        w.max_weight().unwrap_or(0) + v.max_weight().unwrap_or(0)
    }

    /// The mode `w_p v` (vertex indexing: coefficient of `x^{-p-1}` in `Y(w,x)v`)
    /// of a state `w ∈ V` acting on `v` in this space.
    pub fn mode(&self, w: &Element, p: i64, v: &Element) -> Element {
        let mut out = Element::zero();
        for (wm, wc) in w.iter() {
            for (vm, vc) in v.iter() {
                let t = self.mode_mono(wm, p, vm);
                if !t.is_zero() {
                    out.add_scaled(&t, &(wc * vc));
                }
            }
        }
        out
    }

    /// Iterate formula on the leftmost factor of `w = u_{-k} w'`:
    /// `(u_{-k} w')_p = Σ_{i≥0} (-1)^i C(-k,i) [u_{-k-i} w'_{p+i} - (-1)^k w'_{-k+p-i} u_i]`.
    pub fn mode_mono(&self, w: &Monomial, p: i64, v: &Monomial) -> Element {
        if w.is_empty() {
            return if p == -1 { Element::monomial(v.clone()) } else { Element::zero() };
        }
        if p >= w.weight() + v.weight() {
            return Element::zero();
        }
        let key = (w.clone(), p, v.clone());
        if let Some(r) = self.mode_memo.read().get(&key) {
            return r.clone();
        }
        let g = self.gen_weight();
        let k = w.leading().expect("nonempty") as i64 - g + 1;
        let tail = w.tail();
        let tw = tail.weight();
        let vw = v.weight();
        let mut out = Element::zero();
        // (-1)^i C(-k, i) = C(k+i-1, i) > 0.
        let mut i = 0;
        while p + i < tw + vw {
            let inner = self.mode_mono(&tail, p + i, v);
            if !inner.is_zero() {
                let t = self.apply_generator_mode(-k - i, &inner);
                out.add_scaled(&t, &RatFunc::from_rational(Rational::from_integer(binom_int(k + i - 1, i))));
            }
            i += 1;
        }
        let sign = if k % 2 == 0 { -1 } else { 1 };
        let vm = Element::monomial(v.clone());
        for i in 0..(g + vw) {
            let uiv = self.apply_generator_mode(i, &vm);
            if uiv.is_zero() {
                continue;
            }
            let coef = RatFunc::from_rational(Rational::from_integer(binom_int(k + i - 1, i) * sign));
            for (m2, c2) in uiv.iter() {
                let t = self.mode_mono(&tail, -k + p - i, m2);
                if !t.is_zero() {
                    out.add_scaled(&t, &(&coef * c2));
                }
            }
        }
        self.mode_memo.write().insert(key, out.clone());
        out
    }

    /// `L(m)` acting on this space (via `ω_{m+1}` for the Heisenberg algebra).
    pub fn l_mode(&self, m: i64, v: &Element) -> Element {
        match self.pres {
            VoaPresentation::Virasoro => self.apply_mode_elem(m, v),
            VoaPresentation::Heisenberg => self.mode(&self.omega(), m + 1, v),
        }
    }

    /// `L(-1)`: on words over the vacuum this is the derivation
    /// `[L(-1), u_j] = -j u_{j-1}` summed over factors.
    pub fn l_minus1(&self, v: &Element) -> Element {
        match (self.pres, self.lowest) {
            (VoaPresentation::Heisenberg, Lowest::Vacuum) => {
                let mut out = Element::zero();
                for (w, c) in v.iter() {
                    for (k, e) in w.powers() {
                        let raised = w.without_one(k).expect("present").with_inserted(k + 1);
                        out.add_term(raised, c.scale(&Rational::from_integer((k as i64 * e as i64).into())));
                    }
                }
                out
            }
            _ => self.l_mode(-1, v),
        }
    }

    /// Grading operator: multiplies each homogeneous component by its weight
    /// (its degree on a module). On `V` this is `L(0)`.
    pub fn l_zero(&self, v: &Element) -> Element {
        let mut out = Element::zero();
        for (w, c) in v.iter() {
            out.add_term(w.clone(), c.scale(&Rational::from_integer(w.weight().into())));
        }
        out
    }

    /// `(L(-1) + L(0)) v`.
    pub fn l_minus1_plus_l_zero(&self, v: &Element) -> Element {
        self.l_minus1(v).add(&self.l_zero(v))
    }

    /// Drops all cached mode computations.
    pub fn clear_caches(&self) {
        self.gen_memo.write().clear();
        self.mode_memo.write().clear();
    }

    pub fn cache_sizes(&self) -> (usize, usize) {
        (self.gen_memo.read().len(), self.mode_memo.read().len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ci(n: i64) -> crate::arith::Coeff {
        crate::arith::Coeff::from_int(n)
    }

    fn mono(k: &[u16]) -> Monomial {
        Monomial::from_modes(k)
    }

    #[test]
    fn heisenberg_bracket_normalizes() {
        let s = Space::vacuum(VoaPresentation::Heisenberg);
        assert_eq!(s.normalize(&[2, -2]), Element::term(Monomial::vacuum(), ci(2)));
        assert_eq!(s.normalize(&[-1, -2]), Element::monomial(mono(&[2, 1])));
        assert!(s.normalize(&[0]).is_zero());
    }

    #[test]
    fn virasoro_bracket_normalizes() {
        let s = Space::vacuum(VoaPresentation::Virasoro);
        let half_c = RatFunc::param(Param::C).scale(&ratio(1, 2));
        assert_eq!(s.normalize(&[2, -2]), Element::term(Monomial::vacuum(), half_c));
        // L(1)L(-2)𝟏 = 3 L(-1)𝟏 = 0
        assert!(s.normalize(&[1, -2]).is_zero());
        // L(0)L(-3)L(-2)𝟏 = 5 L(-3)L(-2)𝟏
        assert_eq!(s.normalize(&[0, -3, -2]), Element::term(mono(&[3, 2]), ci(5)));
        // L(-2)L(-3)𝟏 = L(-3)L(-2)𝟏 + L(-5)𝟏
        let e = s.normalize(&[-2, -3]);
        assert_eq!(e, Element::from_terms([(mono(&[3, 2]), ci(1)), (mono(&[5]), ci(1))]));
    }

    #[test]
    fn composite_mode_examples() {
        let h = Space::vacuum(VoaPresentation::Heisenberg);
        let a = h.generator_state();
        let aa = Element::monomial(mono(&[1, 1]));
        assert_eq!(h.mode(&aa, 1, &a), Element::term(mono(&[1]), ci(2)));
        assert_eq!(h.mode(&Element::vacuum(), -1, &aa), aa);
        let v = Space::vacuum(VoaPresentation::Virasoro);
        let w = v.generator_state();
        assert_eq!(v.mode(&w, 1, &w), Element::term(mono(&[2]), ci(2)));
    }

    #[test]
    fn annihilation_bounds() {
        let h = Space::vacuum(VoaPresentation::Heisenberg);
        let a = h.generator_state();
        assert_eq!(h.annihilation_bound(&a, &a), 2);
        assert!(!h.mode(&a, 1, &a).is_zero());
        assert_eq!(h.annihilation_bound(&Element::vacuum(), &Element::vacuum()), 0);
        let v = Space::vacuum(VoaPresentation::Virasoro);
        assert_eq!(v.annihilation_bound(&v.generator_state(), &Element::vacuum()), 2);
    }

    #[test]
    fn l_minus1_examples() {
        let h = Space::vacuum(VoaPresentation::Heisenberg);
        assert_eq!(h.l_minus1(&h.generator_state()), Element::monomial(mono(&[2])));
        let e = Element::monomial(mono(&[2, 1]));
        assert_eq!(h.l_zero(&e), e.scale(&ci(3)));
        let aa = Element::monomial(mono(&[1, 1]));
        let expected = Element::from_terms([(mono(&[2, 1]), ci(2)), (mono(&[1, 1]), ci(2))]);
        assert_eq!(h.l_minus1_plus_l_zero(&aa), expected);
    }

    #[test]
    fn module_lowest_laws() {
        let f = Space::fock();
        let lam = RatFunc::param(Param::Lambda);
        assert_eq!(f.normalize(&[0]), Element::term(Monomial::vacuum(), lam));
        assert_eq!(f.normalize(&[1, -1]), Element::vacuum());
        let m = Space::verma();
        let hp1 = &RatFunc::param(Param::H) + &ci(1);
        assert_eq!(m.normalize(&[0, -1]), Element::term(mono(&[1]), hp1));
    }
}
