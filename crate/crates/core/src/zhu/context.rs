use std::collections::HashMap;
use std::sync::Arc;

use parking_lot::RwLock;

use crate::voa::{Element, Monomial, Space, VoaPresentation};

use super::reduce::Step;

/// A vertex operator algebra together with a level `n`.
///
/// Cheap to clone; clones share the mode caches of the underlying [`Space`]
/// and the table of reduction steps.
#[derive(Clone)]
pub struct ZhuContext {
    pub(super) inner: Arc<Inner>,
}

pub(super) struct Inner {
    pub(super) space: Arc<Space>,
    pub(super) level: u32,
    pub(super) steps: RwLock<HashMap<Monomial, Option<Arc<Step>>>>,
}

impl std::fmt::Debug for ZhuContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ZhuContext").field("presentation", &self.presentation()).field("level", &self.level()).finish()
    }
}

impl ZhuContext {
    pub fn new(pres: VoaPresentation, level: u32) -> ZhuContext {
        ZhuContext::with_space(Arc::new(Space::vacuum(pres)), level)
    }

    /// Shares an existing vacuum space (and its caches) between levels.
    pub fn with_space(space: Arc<Space>, level: u32) -> ZhuContext {
        assert!(space.is_vacuum(), "Zhu algebras are built on the vacuum module");
        ZhuContext { inner: Arc::new(Inner { space, level, steps: RwLock::new(HashMap::new()) }) }
    }

    /// The same algebra at another level, sharing the mode caches.
    pub fn at_level(&self, level: u32) -> ZhuContext {
        ZhuContext::with_space(self.inner.space.clone(), level)
    }

    pub fn presentation(&self) -> VoaPresentation {
        self.inner.space.presentation()
    }

    pub fn level(&self) -> u32 {
        self.inner.level
    }

    pub(crate) fn n(&self) -> i64 {
        self.inner.level as i64
    }

    pub fn space(&self) -> &Space {
        &self.inner.space
    }

    pub fn shared_space(&self) -> Arc<Space> {
        self.inner.space.clone()
    }

    pub fn parse(&self, src: &str) -> crate::Result<Element> {
        self.space().parse(src)
    }

    pub fn render(&self, v: &Element) -> String {
        self.space().render(v)
    }

    /// The generator as a one-letter word (`α(-1)𝟏` or `L(-2)𝟏`).
    pub fn generator(&self) -> Monomial {
        Monomial::from_modes(&[self.space().gen_weight() as u16])
    }

    /// Word label of the mode `u_{-(2n+1)}`.
    pub fn top_mode(&self) -> u16 {
        (2 * self.n() + self.space().gen_weight()) as u16
    }

    /// Smallest word label of a deep mode `u_{-k}`, `k ≥ 2n+2`.
    pub fn deep_mode(&self) -> u16 {
        self.top_mode() + 1
    }

    /// Word labels surviving [`ZhuContext::spanning_normal_form`]: `u_{-1} … u_{-2n}`
    /// for `n ≥ 1`, `u_{-1}` alone for `n = 0`.
    pub fn normal_form_modes(&self) -> std::ops::RangeInclusive<u16> {
        let lo = self.space().min_mode();
        let hi = if self.level() == 0 { self.top_mode() } else { self.top_mode() - 1 };
        lo..=hi
    }

    /// `(L(-1) + L(0)) v`.
    pub fn ol(&self, v: &Element) -> Element {
        self.space().l_minus1_plus_l_zero(v)
    }

    /// Drops cached reduction steps and mode computations.
    pub fn clear_caches(&self) {
        self.inner.steps.write().clear();
        self.space().clear_caches();
    }
}
