//! Fock modules `M(1, λ)` and Verma modules `M(c, h)` with their zero-mode
//! action.
//!
//! A module vector is an [`Element`] over PBW words on the lowest vector
//! `v_λ` or `v_h`; the degree of a word is the sum of its modes. A state
//! `v ∈ V` acts through its modes `v_p` (the iterate formula of
//! [`Space::mode`]), and the zero mode is `o(v) = v_{wt v − 1}` summed over
//! homogeneous components. All parameters stay symbolic.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::Coeff;
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::voa::{Element, Monomial, Space, VoaPresentation};
use crate::zhu::ZhuContext;

/// Which module of the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleKind {
    /// `M(1, λ)` for the Heisenberg algebra.
    Fock,
    /// `M(c, h)` for the Virasoro algebra.
    Verma,
}

impl ModuleKind {
    pub fn for_presentation(p: VoaPresentation) -> ModuleKind {
        match p {
            VoaPresentation::Heisenberg => ModuleKind::Fock,
            VoaPresentation::Virasoro => ModuleKind::Verma,
        }
    }

    pub fn from_name(s: &str) -> Option<ModuleKind> {
        match s {
            "fock" => Some(ModuleKind::Fock),
            "verma" => Some(ModuleKind::Verma),
            _ => None,
        }
    }

    pub fn presentation(self) -> VoaPresentation {
        match self {
            ModuleKind::Fock => VoaPresentation::Heisenberg,
            ModuleKind::Verma => VoaPresentation::Virasoro,
        }
    }
}

/// A graded module with symbolic lowest weight.
#[derive(Clone, Debug)]
pub struct GradedModule {
    kind: ModuleKind,
    space: Arc<Space>,
}

impl GradedModule {
    pub fn new(kind: ModuleKind) -> GradedModule {
        let space = match kind {
            ModuleKind::Fock => Space::fock(),
            ModuleKind::Verma => Space::verma(),
        };
        GradedModule { kind, space: Arc::new(space) }
    }

    pub fn for_presentation(p: VoaPresentation) -> GradedModule {
        GradedModule::new(ModuleKind::for_presentation(p))
    }

    pub fn kind(&self) -> ModuleKind {
        self.kind
    }

    pub fn presentation(&self) -> VoaPresentation {
        self.kind.presentation()
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn parse(&self, src: &str) -> Result<Element> {
        self.space.parse(src)
    }

    pub fn render(&self, v: &Element) -> String {
        self.space.render(v)
    }

    /// Basis words of degree `d`.
    pub fn basis(&self, d: usize) -> Vec<Monomial> {
        self.space.basis(d as i64)
    }

    /// The generator mode `α(m)` / `L(m)` (physics indexing) on a module vector.
    pub fn act_mode(&self, m: i64, w: &Element) -> Element {
        self.space.apply_mode_elem(m, w)
    }

    /// `v_p w` for a state `v ∈ V`.
    pub fn state_mode(&self, v: &Element, p: i64, w: &Element) -> Element {
        self.space.mode(v, p, w)
    }

    /// `o(v) = Σ (v_k)_{k−1}` over the weight-`k` components `v_k` of `v`.
    pub fn zero_mode_on(&self, v: &Element, w: &Element) -> Element {
        let mut out = Element::zero();
        for (k, comp) in v.components() {
            out = out.add(&self.space.mode(&comp, k - 1, w));
        }
        out
    }

    /// Matrix of `o(v)` on the degree-`d` basis; column `j` is the image of
    /// the `j`-th basis word.
    pub fn zero_mode(&self, v: &Element, d: usize) -> ZeroModeMatrix {
        let basis = self.basis(d);
        let index: std::collections::HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut matrix = SparseMatrix::new(basis.len(), basis.len());
        for (j, b) in basis.iter().enumerate() {
            let img = self.zero_mode_on(v, &Element::monomial(b.clone()));
            for (m, c) in img.iter() {
                let i = *index.get(m).expect("zero modes preserve the degree");
                matrix.set(i, j, c.clone());
            }
        }
        ZeroModeMatrix { state: v.clone(), degree: d, basis, matrix }
    }

    /// `o(u *ₙ v) = o(u) o(v)` on degrees `0..=max_degree`.
    pub fn hom_property_check(&self, ctx: &ZhuContext, u: &Element, v: &Element, max_degree: usize) -> Result<DegreeReport> {
        self.check_context(ctx)?;
        let prod = ctx.star(u, v)?;
        let degrees = (0..=max_degree)
            .map(|d| {
                let lhs = self.zero_mode(&prod, d);
                let rhs = self.zero_mode(u, d).matrix.mul(&self.zero_mode(v, d).matrix);
                (d, lhs.matrix == rhs)
            })
            .collect();
        Ok(DegreeReport { degrees })
    }

    /// `o(value)` vanishes on degrees `0..=max_degree`.
    pub fn zero_mode_annihilation_check(&self, value: &Element, max_degree: usize) -> DegreeReport {
        DegreeReport { degrees: (0..=max_degree).map(|d| (d, self.zero_mode(value, d).is_zero())).collect() }
    }

    /// Words of degree `≤ n` lie in `Ωₙ`: `v_i w = 0` whenever
    /// `wt v_i = wt v − i − 1 < −n`. Checks every mode of the homogeneous
    /// `v` that can matter, i.e. `n < i + 1 − wt v ≤ n + deg w + 1`, plus one beyond.
    pub fn omega_check(&self, v: &Element, n: usize) -> Result<bool> {
        if !v.is_homogeneous() {
            return Err(Error::Precondition("Ωₙ check needs a homogeneous state".into()));
        }
        let Some(wv) = v.min_weight() else { return Ok(true) };
        let n = n as i64;
        for d in 0..=n {
            for b in self.basis(d as usize) {
                let w = Element::monomial(b);
                for i in (wv + n)..=(wv + n + d + 2) {
                    if !self.space.mode(v, i, &w).is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    fn check_context(&self, ctx: &ZhuContext) -> Result<()> {
        if ctx.presentation() != self.presentation() {
            return Err(Error::Config(format!("{:?} module does not fit {:?}", self.kind, ctx.presentation())));
        }
        Ok(())
    }
}

/// Zero mode of a state on one graded piece.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroModeMatrix {
    pub state: Element,
    pub degree: usize,
    pub basis: Vec<Monomial>,
    pub matrix: SparseMatrix,
}

impl ZeroModeMatrix {
    pub fn is_zero(&self) -> bool {
        self.matrix.nnz() == 0
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> Coeff {
        self.matrix.get(i, j)
    }

    pub fn to_json(&self, module: &GradedModule, state_text: &str) -> ZeroModeJson {
        let n = self.dim();
        ZeroModeJson {
            module: module.kind,
            state: state_text.to_string(),
            degree: self.degree,
            basis: self.basis.iter().map(|b| module.render(&Element::monomial(b.clone()))).collect(),
            matrix: (0..n).map(|i| (0..n).map(|j| self.entry(i, j).to_string()).collect()).collect(),
        }
    }
}

/// JSON form of a [`ZeroModeMatrix`]; entries in the scalar grammar.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroModeJson {
    pub module: ModuleKind,
    pub state: String,
    pub degree: usize,
    pub basis: Vec<String>,
    pub matrix: Vec<Vec<String>>,
}

/// Per-degree pass/fail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub degrees: Vec<(usize, bool)>,
}

impl DegreeReport {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(|(_, ok)| *ok)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Param, RatFunc};

    fn lam() -> RatFunc {
        RatFunc::param(Param::Lambda)
    }

    #[test]
    fn lowest_weight_laws() {
        let f = GradedModule::new(ModuleKind::Fock);
        let v = f.parse("|lambda>").unwrap();
        assert_eq!(f.act_mode(0, &v), v.scale(&lam()));
        let a1 = f.parse("a(-1)|lambda>").unwrap();
        assert_eq!(f.act_mode(1, &a1), v);
        let m = GradedModule::new(ModuleKind::Verma);
        let l1 = m.parse("L(-1)|h>").unwrap();
        let h1 = &RatFunc::param(Param::H) + &RatFunc::one();
        assert_eq!(m.act_mode(0, &l1), l1.scale(&h1));
    }

    #[test]
    fn zero_mode_examples() {
        let f = GradedModule::new(ModuleKind::Fock);
        let z = f.zero_mode(&f.space().generator_state(), 0);
        assert_eq!(z.dim(), 1);
        assert_eq!(z.entry(0, 0), lam());
        let m = GradedModule::new(ModuleKind::Verma);
        for k in 0..4 {
            let z = m.zero_mode(&m.space().generator_state(), k);
            let hk = &RatFunc::param(Param::H) + &RatFunc::from_int(k as i64);
            let mut want = SparseMatrix::identity(z.dim());
            for i in 0..z.dim() {
                want.set(i, i, hk.clone());
            }
            assert_eq!(z.matrix, want);
        }
        for kind in [ModuleKind::Fock, ModuleKind::Verma] {
            let m = GradedModule::new(kind);
            for d in 0..4 {
                assert_eq!(m.zero_mode(&Element::vacuum(), d).matrix, SparseMatrix::identity(m.basis(d).len()));
            }
        }
    }

    #[test]
    fn hom_property_small() {
        let z0 = ZhuContext::new(VoaPresentation::Heisenberg, 0);
        let f = GradedModule::new(ModuleKind::Fock);
        let a = z0.parse("a(-1)|0>").unwrap();
        assert!(f.hom_property_check(&z0, &a, &a, 0).unwrap().passed());
        let sq = f.zero_mode(&z0.parse("a(-1)^2|0>").unwrap(), 0);
        assert_eq!(sq.entry(0, 0), &lam() * &lam());
        let z1 = ZhuContext::new(VoaPresentation::Virasoro, 1);
        let m = GradedModule::new(ModuleKind::Verma);
        let w = z1.parse("L(-2)|0>").unwrap();
        assert!(m.hom_property_check(&z1, &w, &w, 1).unwrap().passed());
        assert!(m.hom_property_check(&z1, &Element::vacuum(), &w, 1).unwrap().passed());
    }

    #[test]
    fn omega_containment() {
        for kind in [ModuleKind::Fock, ModuleKind::Verma] {
            let m = GradedModule::new(kind);
            let words = m.space().presentation();
            let vac = Space::vacuum(words);
            for n in 0..=2 {
                for v in vac.basis_up_to(5) {
                    assert!(m.omega_check(&Element::monomial(v), n).unwrap());
                }
            }
        }
    }
}
