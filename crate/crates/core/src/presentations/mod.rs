//! Known presentations of `Aₙ(V)` as data, and the verification workflow.
//!
//! A [`PresentationSpec`] names generators by elements of `V`, optionally
//! defines further variables as polynomials in them (a change of variables),
//! and lists relations in `ℂ[commuting]⟨noncommuting⟩`. Each word of a
//! relation is evaluated by left-associated `*ₙ` products. Verification asks
//! for three things per relation:
//!
//! 1. a membership certificate of the evaluation in `Oₙ(V)`;
//! 2. vanishing zero modes on module degrees `0..=n`, with symbolic parameters;
//! 3. a certificate in `Oₙ₋₁(V)` as well (descent), for `n ≥ 1`.
//!
//! Completeness of a relation list is not checked; `expected_notes` records
//! the structural statement for the reader only.

mod builtin;
mod poly;

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modules::{DegreeReport, GradedModule};
use crate::voa::{Element, VoaPresentation};
use crate::zhu::{CertificateFile, Membership, SpanOptions, ZhuContext};

pub use builtin::{builtin, builtin_specs, LOWER_ORDER_PRODUCTS};
pub use poly::{NcPolynomial, Ring};

/// A presentation as stored in spec files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PresentationSpec {
    pub name: String,
    pub level: u32,
    pub presentation: VoaPresentation,
    /// Central variables.
    #[serde(default)]
    pub commuting: Vec<String>,
    #[serde(default)]
    pub noncommuting: Vec<String>,
    /// Variable → element of `V` in the element grammar.
    pub assignment: BTreeMap<String, String>,
    /// Variables defined as polynomials in earlier ones, in order.
    #[serde(default)]
    pub definitions: Vec<(String, String)>,
    pub relations: Vec<String>,
    pub search_bound: i64,
    /// Largest left operand weight in the membership search; `None` uses the engine default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_u_weight: Option<i64>,
    #[serde(default)]
    pub expected_notes: String,
}

impl PresentationSpec {
    pub fn ring(&self) -> Result<Ring> {
        Ring::new(&self.commuting, &self.noncommuting)
    }

    pub fn from_json(src: &str) -> Result<PresentationSpec> {
        serde_json::from_str(src).map_err(|e| Error::Config(format!("bad presentation spec: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("specs serialize")
    }

    pub fn span_options(&self, bound: Option<i64>) -> SpanOptions {
        let mut o = SpanOptions::with_bound(bound.unwrap_or(self.search_bound));
        o.max_u_weight = self.max_u_weight;
        o
    }

    /// Parsed relations.
    pub fn relation_polys(&self) -> Result<Vec<NcPolynomial>> {
        let ring = self.ring()?;
        self.relations.iter().map(|r| ring.parse(r)).collect()
    }
}

/// How words are bracketed when evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Assoc {
    Left,
    Right,
}

/// Evaluates polynomials of a spec through `*ₙ` at the context's level.
pub struct Evaluator {
    ctx: ZhuContext,
    ring: Ring,
    values: HashMap<String, Element>,
    memo: HashMap<(Vec<String>, bool), Element>,
}

impl Evaluator {
    pub fn new(spec: &PresentationSpec, ctx: &ZhuContext) -> Result<Evaluator> {
        if ctx.presentation() != spec.presentation {
            return Err(Error::Config(format!("spec `{}` is for {:?}", spec.name, spec.presentation)));
        }
        let ring = spec.ring()?;
        let mut ev = Evaluator { ctx: ctx.clone(), ring, values: HashMap::new(), memo: HashMap::new() };
        for (var, src) in &spec.assignment {
            if !ev.ring.contains(var) {
                return Err(Error::Config(format!("assignment to undeclared variable `{var}`")));
            }
            ev.values.insert(var.clone(), ctx.parse(src)?);
        }
        for (var, src) in &spec.definitions {
            if !ev.ring.contains(var) {
                return Err(Error::Config(format!("definition of undeclared variable `{var}`")));
            }
            let p = ev.ring.parse(src)?;
            let v = ev.evaluate(&p)?;
            ev.values.insert(var.clone(), v);
        }
        Ok(ev)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn context(&self) -> &ZhuContext {
        &self.ctx
    }

    pub fn value(&self, var: &str) -> Option<&Element> {
        self.values.get(var)
    }

    pub fn evaluate(&mut self, p: &NcPolynomial) -> Result<Element> {
        self.evaluate_with(p, Assoc::Left)
    }

    pub fn evaluate_with(&mut self, p: &NcPolynomial, assoc: Assoc) -> Result<Element> {
        let mut out = Element::zero();
        for (w, c) in p.terms() {
            let v = self.word(w, assoc)?;
            out = out.add(&v.scale_rational(c));
        }
        Ok(out)
    }

    fn word(&mut self, w: &[String], assoc: Assoc) -> Result<Element> {
        if w.is_empty() {
            return Ok(Element::vacuum());
        }
        let key = (w.to_vec(), assoc == Assoc::Left);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let v = if w.len() == 1 {
            self.values.get(&w[0]).cloned().ok_or_else(|| Error::Config(format!("variable `{}` has no assignment", w[0])))?
        } else {
            match assoc {
                Assoc::Left => {
                    let head = self.word(&w[..w.len() - 1], assoc)?;
                    let last = self.word(&w[w.len() - 1..], assoc)?;
                    self.ctx.star(&head, &last)?
                }
                Assoc::Right => {
                    let first = self.word(&w[..1], assoc)?;
                    let tail = self.word(&w[1..], assoc)?;
                    self.ctx.star(&first, &tail)?
                }
            }
        };
        self.memo.insert(key, v.clone());
        Ok(v)
    }
}

/// `*ₙ`-evaluation of a polynomial given as text.
pub fn evaluate_nc(spec: &PresentationSpec, ctx: &ZhuContext, poly: &str) -> Result<Element> {
    let mut ev = Evaluator::new(spec, ctx)?;
    let p = ev.ring().parse(poly)?;
    ev.evaluate(&p)
}

/// Verdicts for one relation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationReport {
    pub relation: String,
    /// Weight and number of terms of the evaluation.
    pub weight: i64,
    pub terms: usize,
    pub certified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateFile>,
    pub zero_modes: DegreeReport,
    /// `None` at level 0.
    pub descent: Option<bool>,
    pub millis: u128,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.certified && self.zero_modes.passed() && self.descent.unwrap_or(true)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PresentationReport {
    pub name: String,
    pub level: u32,
    pub search_bound: i64,
    pub relations: Vec<RelationReport>,
    pub expected_notes: String,
    pub limitation: String,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        self.relations.iter().all(RelationReport::passed)
    }
}

/// What to run in [`verify_presentation_with`].
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub bound: Option<i64>,
    pub zero_modes: bool,
    pub descent: bool,
    pub keep_certificates: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { bound: None, zero_modes: true, descent: true, keep_certificates: true }
    }
}

pub fn verify_presentation(spec: &PresentationSpec, bound: Option<i64>) -> Result<PresentationReport> {
    verify_presentation_with(spec, &VerifyOptions { bound, ..VerifyOptions::default() })
}

pub fn verify_presentation_with(spec: &PresentationSpec, opts: &VerifyOptions) -> Result<PresentationReport> {
    let ctx = ZhuContext::new(spec.presentation, spec.level);
    let mut ev = Evaluator::new(spec, &ctx)?;
    let polys = spec.relation_polys()?;
    let module = GradedModule::for_presentation(spec.presentation);
    let lower = (spec.level > 0).then(|| ctx.at_level(spec.level - 1));
    let span = spec.span_options(opts.bound);
    let mut relations = Vec::with_capacity(polys.len());
    for (text, p) in spec.relations.iter().zip(&polys) {
        let t0 = std::time::Instant::now();
        let value = ev.evaluate(p)?;
        let found = ctx.membership_with(&value, &span);
        let certificate = match (&found, opts.keep_certificates) {
            (Membership::Found(c), true) => Some(c.to_file(&ctx)),
            _ => None,
        };
        let zero_modes = if opts.zero_modes {
            module.zero_mode_annihilation_check(&value, spec.level as usize)
        } else {
            DegreeReport { degrees: vec![] }
        };
        let descent = match (&lower, opts.descent) {
            (Some(l), true) => {
                let mut o = span.clone();
                o.max_u_weight = None;
                Some(l.membership_with(&value, &o).is_found())
            }
            _ => None,
        };
        relations.push(RelationReport {
            relation: text.clone(),
            weight: value.max_weight().unwrap_or(0),
            terms: value.len(),
            certified: found.is_found(),
            certificate,
            zero_modes,
            descent,
            millis: t0.elapsed().as_millis(),
        });
    }
    Ok(PresentationReport {
        name: spec.name.clone(),
        level: spec.level,
        search_bound: opts.bound.unwrap_or(spec.search_bound),
        relations,
        expected_notes: spec.expected_notes.clone(),
        limitation: "relation membership, zero-mode annihilation and descent are verified; completeness of the relation list is not".into(),
    })
}

/// One product of the lower-order check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LowerOrderEntry {
    pub product: String,
    pub filtration: usize,
    pub certified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateFile>,
}

/// Verifies `product ∈ Oₙ(V) + F_r(𝟏)` for each `(product, r)`.
pub fn lower_order_check(spec: &PresentationSpec, products: &[(&str, usize)], bound: Option<i64>) -> Result<Vec<LowerOrderEntry>> {
    let ctx = ZhuContext::new(spec.presentation, spec.level);
    let mut ev = Evaluator::new(spec, &ctx)?;
    let values: Vec<Element> = products.iter().map(|(p, _)| ev.ring().parse(p).and_then(|p| ev.evaluate(&p))).collect::<Result<_>>()?;
    let span = spec.span_options(bound);
    Ok(products
        .par_iter()
        .zip(values.par_iter())
        .map(|((p, r), v)| {
            let mut o = span.clone();
            o.filtration = Some(*r);
            let m = ctx.membership_with(v, &o);
            LowerOrderEntry {
                product: p.to_string(),
                filtration: *r,
                certified: m.is_found(),
                certificate: m.certificate().map(|c| c.to_file(&ctx)),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_variable_is_its_assignment() {
        let spec = builtin("heis_A0").unwrap();
        let ctx = ZhuContext::new(spec.presentation, 0);
        assert_eq!(evaluate_nc(&spec, &ctx, "x").unwrap(), ctx.parse("a(-1)|0>").unwrap());
        assert_eq!(evaluate_nc(&spec, &ctx, "x*x").unwrap(), ctx.parse("a(-1)^2|0>").unwrap());
        assert!(evaluate_nc(&spec, &ctx, "x^2 - y").unwrap().is_zero());
    }

    #[test]
    fn change_of_variables() {
        let spec = builtin("heis_A2").unwrap();
        let ctx = ZhuContext::new(spec.presentation, 2);
        let y = evaluate_nc(&spec, &ctx, "Y").unwrap();
        let x = ctx.parse("a(-1)|0>").unwrap();
        let want = ctx
            .star(&x, &x)
            .unwrap()
            .sub(&ctx.parse("2 a(-1)^2|0> + a(-4)a(-1)|0>").unwrap())
            .scale_rational(&crate::arith::ratio(1, 12));
        assert_eq!(y, want);
    }

    #[test]
    fn missing_assignment_is_a_config_error() {
        let mut spec = builtin("heis_A0").unwrap();
        spec.relations.push("x*q".into());
        spec.noncommuting.push("q".into());
        assert!(matches!(verify_presentation(&spec, None), Err(Error::Config(_))));
    }

    #[test]
    fn zero_relation_is_trivial() {
        let spec = builtin("heis_A2").unwrap();
        let out = lower_order_check(&spec, &[("0", 0)], None).unwrap();
        assert!(out[0].certified);
    }
}
