//! Seeded randomized property suites.
//!
//! Each suite draws its cases from a ChaCha stream keyed by the seed, so a
//! `(suite, seed, cases)` triple always replays the same inputs. Every
//! assertion is exact: memberships are witnessed by certificates, module
//! checks compare symbolic matrices.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{ratio, Coeff};
use crate::error::{Error, Result};
use crate::modules::GradedModule;
use crate::presentations::{builtin, Evaluator, LOWER_ORDER_PRODUCTS};
use crate::voa::{Element, VoaPresentation};
use crate::zhu::{MembershipCertificate, SpanKind, SpanOptions, ZhuContext};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Suite names, in the order [`run_all`] runs them.
pub const SUITES: [&str; 6] = ["ideal", "associator", "recursion_reduce", "mult_formula", "hom_property", "lower_order"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub failures: Vec<String>,
    pub millis: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run_suite(name: &str, cases: usize, seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fxhash(name));
    let t0 = std::time::Instant::now();
    let mut failures = Vec::new();
    let mut fail = |i: usize, msg: String| failures.push(format!("case {i}: {msg}"));
    match name {
        "ideal" => {
            for i in 0..cases {
                let (ctx, _) = pick_context(&mut rng, 1);
                let a = spanning_sample(&mut rng, &ctx)?;
                let w = random_element(&mut rng, &ctx, 2);
                for (side, prod) in [("left", ctx.star(&w, &a)?), ("right", ctx.star(&a, &w)?)] {
                    if !certified_member(&ctx, &prod, 2) {
                        fail(i, format!("{side} product with {} not found in O_{}", ctx.render(&w), ctx.level()));
                    }
                }
            }
        }
        "associator" => {
            for i in 0..cases {
                let (ctx, _) = pick_context(&mut rng, 1);
                let [a, b, c] = [0, 1, 2].map(|_| random_element(&mut rng, &ctx, 2));
                let lhs = ctx.star(&ctx.star(&a, &b)?, &c)?;
                let rhs = ctx.star(&a, &ctx.star(&b, &c)?)?;
                if !certified_member(&ctx, &lhs.sub(&rhs), 2) {
                    fail(i, format!("({}, {}, {}) at n = {}", ctx.render(&a), ctx.render(&b), ctx.render(&c), ctx.level()));
                }
            }
        }
        "recursion_reduce" => {
            for i in 0..cases {
                let (ctx, _) = pick_context(&mut rng, 2);
                let v = random_deep_element(&mut rng, &ctx);
                let red = ctx.recursion_reduce_certified(&v);
                let deep = ctx.deep_mode();
                let ok = red.certificate.target == v.sub(&red.output)
                    && red.certificate.uses_only_circles()
                    && red.certificate.recheck(&ctx)
                    && red.output.monomials().all(|m| m.leading().is_none_or(|k| k < deep));
                if !ok {
                    fail(i, format!("{} at n = {}", ctx.render(&v), ctx.level()));
                }
            }
        }
        "mult_formula" => {
            for i in 0..cases {
                let (ctx, _) = pick_context(&mut rng, 2);
                let t = rng.gen_range(1..=2usize);
                let mut exps: Vec<u32> = (0..t).map(|_| rng.gen_range(0..=2)).collect();
                if exps.iter().all(|&e| e == 0) {
                    exps[0] = 1;
                }
                let v = random_word(&mut rng, &ctx, 2);
                let f = ctx.mult_formula(&exps, &v)?;
                if f.main.add(&f.g) != ctx.star(&f.state, &v)? {
                    fail(i, format!("exponents {exps:?}, v = {} at n = {}", ctx.render(&v), ctx.level()));
                }
            }
        }
        "hom_property" => {
            for i in 0..cases {
                let (ctx, pres) = pick_context(&mut rng, 2);
                let module = GradedModule::for_presentation(pres);
                let wmax = if ctx.level() == 2 { 2 } else { 3 };
                let u = random_element(&mut rng, &ctx, wmax);
                let v = random_element(&mut rng, &ctx, wmax);
                if !module.hom_property_check(&ctx, &u, &v, ctx.level() as usize)?.passed() {
                    fail(i, format!("u = {}, v = {} at n = {}", ctx.render(&u), ctx.render(&v), ctx.level()));
                }
            }
        }
        "lower_order" => {
            let bases = lower_order_bases()?;
            let ctx = &bases.ctx;
            for i in 0..cases {
                // A random combination of products sharing a filtration
                // degree, plus a random element of that filtration piece.
                let r = *[3usize, 4, 5].choose(&mut rng).expect("nonempty");
                let pool: Vec<&(String, usize, Element, MembershipCertificate)> = bases.items.iter().filter(|b| b.1 == r).collect();
                let mut target = Element::zero();
                let mut combo = Element::zero();
                for (_, _, value, cert) in &pool {
                    let c = random_scalar(&mut rng);
                    target.add_scaled(value, &c);
                    combo.add_scaled(&cert.sum(), &c);
                }
                let filler = random_short_word(&mut rng, ctx, r);
                target = target.add(&filler);
                combo = combo.add(&filler);
                let names: Vec<&str> = pool.iter().map(|b| b.0.as_str()).collect();
                let remainder_ok = pool.iter().all(|b| b.3.remainder.as_ref().is_none_or(|(k, _)| *k <= r)) && filler.max_len() <= r;
                if target != combo || !remainder_ok {
                    fail(i, format!("F_{r} combination of {names:?}"));
                }
            }
        }
        other => return Err(Error::Config(format!("unknown suite {other:?}; expected one of {}", SUITES.join(", ")))),
    }
    Ok(SuiteReport { suite: name.into(), seed, cases, failures, millis: t0.elapsed().as_millis() })
}

pub fn run_all(cases: usize, seed: u64) -> Result<Vec<SuiteReport>> {
    SUITES.iter().map(|s| run_suite(s, cases, seed)).collect()
}

/// FNV-1a, so that suites sharing a seed draw independent streams.
fn fxhash(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

fn pick_context(rng: &mut ChaCha8Rng, max_level: u32) -> (ZhuContext, VoaPresentation) {
    let pres = if rng.gen_bool(0.5) { VoaPresentation::Heisenberg } else { VoaPresentation::Virasoro };
    let n = rng.gen_range(0..=max_level);
    (ZhuContext::new(pres, n), pres)
}

fn random_scalar(rng: &mut ChaCha8Rng) -> Coeff {
    let mut num = rng.gen_range(-5i64..=5);
    if num == 0 {
        num = 1;
    }
    Coeff::from_rational(ratio(num, rng.gen_range(1i64..=4)))
}

/// A PBW word of weight `≤ max_weight` (possibly the vacuum).
fn random_word(rng: &mut ChaCha8Rng, ctx: &ZhuContext, max_weight: i64) -> Element {
    let words = ctx.space().basis_up_to(max_weight);
    Element::monomial(words.choose(rng).expect("vacuum is always there").clone())
}

/// One to three words with small rational coefficients.
fn random_element(rng: &mut ChaCha8Rng, ctx: &ZhuContext, max_weight: i64) -> Element {
    let mut out = Element::zero();
    while out.is_zero() {
        for _ in 0..rng.gen_range(1..=3) {
            let c = random_scalar(rng);
            out.add_scaled(&random_word(rng, ctx, max_weight), &c);
        }
    }
    out
}

/// Words with at least one mode `u_{-k}`, `k ≥ 2n+2`.
fn random_deep_element(rng: &mut ChaCha8Rng, ctx: &ZhuContext) -> Element {
    let deep = ctx.deep_mode() as i64;
    let mut out = Element::zero();
    while out.is_zero() {
        let head = rng.gen_range(deep..=deep + 3);
        let tail = random_word(rng, ctx, 3);
        let word = ctx.space().apply_mode_elem(-head, &tail);
        let c = random_scalar(rng);
        out.add_scaled(&word, &c);
    }
    out
}

/// A word with at most `r` modes, scaled.
fn random_short_word(rng: &mut ChaCha8Rng, ctx: &ZhuContext, r: usize) -> Element {
    let words: Vec<_> = ctx.space().basis_up_to(8).into_iter().filter(|m| m.len() <= r).collect();
    let c = random_scalar(rng);
    Element::monomial(words.choose(rng).expect("vacuum is always there").clone()).scale(&c)
}

/// A circle, generalized circle or `(L(-1)+L(0))` vector on small words.
fn spanning_sample(rng: &mut ChaCha8Rng, ctx: &ZhuContext) -> Result<Element> {
    let u = random_word(rng, ctx, 2);
    let v = random_word(rng, ctx, 2);
    let kind = match rng.gen_range(0..3) {
        0 => SpanKind::Circle { u, v },
        1 => {
            let m = rng.gen_range(1..=2);
            SpanKind::GeneralizedCircle { u, v, m, k: rng.gen_range(0..=m) }
        }
        _ => SpanKind::Ol { v },
    };
    kind.evaluate(ctx)
}

fn certified_member(ctx: &ZhuContext, target: &Element, bound: i64) -> bool {
    if target.is_zero() {
        return true;
    }
    match ctx.membership_with(target, &SpanOptions::with_bound(bound)).certificate() {
        Some(c) => c.target == *target && c.sum() == *target,
        None => false,
    }
}

struct LowerOrderBases {
    ctx: ZhuContext,
    items: Vec<(String, usize, Element, MembershipCertificate)>,
}

/// Certificates for the level-two products with a filtered remainder, each
/// found by a fresh search and rechecked once.
fn lower_order_bases() -> Result<LowerOrderBases> {
    let spec = builtin("heis_A2").expect("shipped");
    let ctx = ZhuContext::new(spec.presentation, 2);
    let mut ev = Evaluator::new(&spec, &ctx)?;
    let mut items = Vec::new();
    for (p, r) in LOWER_ORDER_PRODUCTS.iter().filter(|(_, r)| *r > 0) {
        let value = ev.ring().parse(p).and_then(|q| ev.evaluate(&q))?;
        let mut o = spec.span_options(None);
        o.filtration = Some(*r);
        let cert = match ctx.membership_with(&value, &o) {
            crate::zhu::Membership::Found(c) if c.recheck(&ctx) => c,
            _ => return Err(Error::Precondition(format!("{p} ∉ O_2 + F_{r} within the search window"))),
        };
        items.push((p.to_string(), *r, value, cert));
    }
    Ok(LowerOrderBases { ctx, items })
}
