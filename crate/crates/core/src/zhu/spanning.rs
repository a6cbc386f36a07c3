use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{parse_scalar, Coeff};
use crate::error::{Error, Result};
use crate::voa::{Element, Monomial, VoaPresentation};

use super::ZhuContext;

/// The defining expression of a spanning vector of `Oₙ(V)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpanKind {
    /// `u ∘ₙ v`.
    Circle { u: Element, v: Element },
    /// `Res_x (1+x)^{wt u+n+k} Y(u,x)v / x^{m+2n+2}`, `m ≥ k ≥ 0`.
    GeneralizedCircle { u: Element, v: Element, m: i64, k: i64 },
    /// `(L(-1) + L(0)) v`.
    Ol { v: Element },
}

impl SpanKind {
    pub fn name(&self) -> &'static str {
        match self {
            SpanKind::Circle { .. } => "circle",
            SpanKind::GeneralizedCircle { .. } => "generalized_circle",
            SpanKind::Ol { .. } => "ol",
        }
    }

    /// Recomputes the defining expression.
    pub fn evaluate(&self, ctx: &ZhuContext) -> Result<Element> {
        match self {
            SpanKind::Circle { u, v } => ctx.circle(u, v),
            SpanKind::GeneralizedCircle { u, v, m, k } => ctx.generalized_circle(u, v, *m, *k),
            SpanKind::Ol { v } => Ok(ctx.ol(v)),
        }
    }

    /// Whether the vector lies in `Oₙ°(V)` (everything except `ol`).
    pub fn is_circle_type(&self) -> bool {
        !matches!(self, SpanKind::Ol { .. })
    }
}

/// A spanning vector of `Oₙ(V)` with its value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningVector {
    pub kind: SpanKind,
    pub value: Element,
}

impl SpanningVector {
    pub fn new(ctx: &ZhuContext, kind: SpanKind) -> Result<SpanningVector> {
        let value = kind.evaluate(ctx)?;
        Ok(SpanningVector { kind, value })
    }

    /// Whether `value` equals the recomputed defining expression.
    pub fn recheck(&self, ctx: &ZhuContext) -> bool {
        self.kind.evaluate(ctx).map(|v| v == self.value).unwrap_or(false)
    }
}

/// Compact spanning vector on PBW words, used inside the reducers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Atom {
    Circle(Monomial, Monomial),
    Gc(Monomial, Monomial, u32, u32),
    Ol(Monomial),
}

impl Atom {
    pub(crate) fn kind(&self) -> SpanKind {
        let e = |m: &Monomial| Element::monomial(m.clone());
        match self {
            Atom::Circle(u, v) => SpanKind::Circle { u: e(u), v: e(v) },
            Atom::Gc(u, v, m, k) => SpanKind::GeneralizedCircle { u: e(u), v: e(v), m: *m as i64, k: *k as i64 },
            Atom::Ol(v) => SpanKind::Ol { v: e(v) },
        }
    }

    pub(crate) fn value(&self, ctx: &ZhuContext) -> Element {
        self.kind().evaluate(ctx).expect("atoms are built with valid arguments")
    }
}

/// Proof object for `target ∈ Oₙ(V)` (or `∈ Oₙ(V) + F_r(𝟏)` when a
/// remainder is present): `target = Σ coeff·vector.value + remainder`.
#[derive(Clone, Debug, PartialEq)]
pub struct MembershipCertificate {
    pub presentation: VoaPresentation,
    pub level: u32,
    pub target: Element,
    pub combination: Vec<(Coeff, SpanningVector)>,
    /// Part of the target left in `F_r(𝟏)`, the span of words of length `≤ r`.
    pub remainder: Option<(usize, Element)>,
}

impl MembershipCertificate {
    pub(crate) fn from_atoms(ctx: &ZhuContext, target: Element, atoms: BTreeMap<Atom, Coeff>) -> MembershipCertificate {
        let combination = atoms
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| {
                let kind = a.kind();
                let value = a.value(ctx);
                (c, SpanningVector { kind, value })
            })
            .collect();
        MembershipCertificate { presentation: ctx.presentation(), level: ctx.level(), target, combination, remainder: None }
    }

    pub fn len(&self) -> usize {
        self.combination.len()
    }

    pub fn is_empty(&self) -> bool {
        self.combination.is_empty()
    }

    /// `Σ coeff·value` from the stored values.
    pub fn sum(&self) -> Element {
        let mut acc = Element::zero();
        for (c, sv) in &self.combination {
            acc.add_scaled(&sv.value, c);
        }
        if let Some((_, r)) = &self.remainder {
            acc = acc.add(r);
        }
        acc
    }

    /// Whether only `Oₙ°` vectors are used.
    pub fn uses_only_circles(&self) -> bool {
        self.combination.iter().all(|(_, sv)| sv.kind.is_circle_type())
    }

    /// Exact re-verification: every vector is recomputed from its kind and
    /// the weighted sum (plus any remainder, which must lie in `F_r(𝟏)`)
    /// must equal the target.
    pub fn recheck(&self, ctx: &ZhuContext) -> bool {
        if ctx.presentation() != self.presentation || ctx.level() != self.level {
            return false;
        }
        let mut acc = Element::zero();
        for (c, sv) in &self.combination {
            match sv.kind.evaluate(ctx) {
                Ok(v) if v == sv.value => acc.add_scaled(&v, c),
                _ => return false,
            }
        }
        if let Some((r, rem)) = &self.remainder {
            if rem.max_len() > *r {
                return false;
            }
            acc = acc.add(rem);
        }
        acc == self.target
    }

    pub fn to_file(&self, ctx: &ZhuContext) -> CertificateFile {
        let combination = self
            .combination
            .iter()
            .map(|(c, sv)| {
                let (operands, m, k) = match &sv.kind {
                    SpanKind::Circle { u, v } => (vec![ctx.render(u), ctx.render(v)], None, None),
                    SpanKind::GeneralizedCircle { u, v, m, k } => (vec![ctx.render(u), ctx.render(v)], Some(*m), Some(*k)),
                    SpanKind::Ol { v } => (vec![ctx.render(v)], None, None),
                };
                CertificateEntry { kind: sv.kind.name().to_string(), operands, m, k, coefficient: c.to_string() }
            })
            .collect();
        CertificateFile {
            presentation: self.presentation,
            level: self.level,
            target: ctx.render(&self.target),
            combination,
            remainder: self.remainder.as_ref().map(|(r, e)| RemainderEntry { max_length: *r, value: ctx.render(e) }),
        }
    }
}

/// JSON form of a [`MembershipCertificate`]; elements and coefficients are
/// stored in the text grammar.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub presentation: VoaPresentation,
    pub level: u32,
    pub target: String,
    pub combination: Vec<CertificateEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub remainder: Option<RemainderEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub kind: String,
    pub operands: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RemainderEntry {
    pub max_length: usize,
    pub value: String,
}

impl CertificateFile {
    /// Rebuilds the certificate, recomputing every vector value.
    pub fn load(&self, ctx: &ZhuContext) -> Result<MembershipCertificate> {
        if ctx.presentation() != self.presentation || ctx.level() != self.level {
            return Err(Error::Config("context does not match the certificate".into()));
        }
        let target = ctx.parse(&self.target)?;
        let mut combination = Vec::with_capacity(self.combination.len());
        for e in &self.combination {
            let ops: Vec<Element> = e.operands.iter().map(|s| ctx.parse(s)).collect::<Result<_>>()?;
            let want = |n: usize| {
                if ops.len() == n {
                    Ok(())
                } else {
                    Err(Error::Config(format!("`{}` takes {n} operands, got {}", e.kind, ops.len())))
                }
            };
            let kind = match e.kind.as_str() {
                "circle" => {
                    want(2)?;
                    SpanKind::Circle { u: ops[0].clone(), v: ops[1].clone() }
                }
                "generalized_circle" => {
                    want(2)?;
                    let (Some(m), Some(k)) = (e.m, e.k) else {
                        return Err(Error::Config("generalized_circle needs `m` and `k`".into()));
                    };
                    SpanKind::GeneralizedCircle { u: ops[0].clone(), v: ops[1].clone(), m, k }
                }
                "ol" => {
                    want(1)?;
                    SpanKind::Ol { v: ops[0].clone() }
                }
                other => return Err(Error::Config(format!("unknown spanning vector kind `{other}`"))),
            };
            let coeff = parse_scalar(&e.coefficient).map_err(Error::from_parse)?;
            combination.push((coeff, SpanningVector::new(ctx, kind)?));
        }
        let remainder = match &self.remainder {
            Some(r) => Some((r.max_length, ctx.parse(&r.value)?)),
            None => None,
        };
        Ok(MembershipCertificate { presentation: self.presentation, level: self.level, target, combination, remainder })
    }

    /// Loads and rechecks in one go.
    pub fn recheck(&self) -> Result<bool> {
        let ctx = ZhuContext::new(self.presentation, self.level);
        Ok(self.load(&ctx)?.recheck(&ctx))
    }
}
