//! Brute-force verifiers for the binomial identities behind the deep-mode
//! recursion and the multiplication formula coefficients.
//!
//! Every sum is evaluated exactly with the generalized [`binom`]; a tuple
//! whose two sides differ is reported as a counterexample. Checkers are pure
//! functions of the [`RangeSpec`]: tuples are enumerated in a fixed order and
//! results are merged in that order, so repeated runs are byte-identical.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{binom, Rational};
use crate::error::{Error, Result};
use crate::zhu::{cj_closed_form, cj_coefficient};

/// Closed integer interval `lo..=hi`.
pub type Interval = (i64, i64);

/// Sweep bounds. Tuples are filtered by each identity's own hypotheses
/// (`n ≥ 0`, `k > −n`, `1 ≤ j ≤ n+k`, `m > 2n+k`, `r ≥ m ≥ 0`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeSpec {
    pub n: Interval,
    pub k: Interval,
    /// `m` runs over `2n+k+1 ..= 2n+k+m_span`.
    pub m_span: i64,
    pub r: Interval,
    pub s: Interval,
    /// `j` for the `C_j` table.
    pub cj_j: Interval,
}

impl Default for RangeSpec {
    fn default() -> Self {
        RangeSpec { n: (0, 6), k: (-6, 6), m_span: 12, r: (0, 12), s: (-12, 12), cj_j: (-12, 12) }
    }
}

impl RangeSpec {
    pub fn validate(&self) -> Result<()> {
        for (name, (lo, hi)) in [("n", self.n), ("k", self.k), ("r", self.r), ("s", self.s), ("j", self.cj_j)] {
            if lo > hi {
                return Err(Error::Precondition(format!("empty range for {name}: {lo}..={hi}")));
            }
        }
        if self.n.0 < 0 || self.r.0 < 0 {
            return Err(Error::Precondition("n and r must be natural numbers".into()));
        }
        if self.m_span < 1 {
            return Err(Error::Precondition("m_span must be at least 1".into()));
        }
        Ok(())
    }

    /// `(n, k)` with `k > −n`.
    fn nk(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for n in self.n.0..=self.n.1 {
            for k in self.k.0..=self.k.1 {
                if k > -n {
                    out.push((n, k));
                }
            }
        }
        out
    }
}

/// One failing tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub equation: String,
    pub tuple: BTreeMap<String, i64>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub tuples_checked: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Names accepted by [`check_by_name`], in report order.
pub const IDENTITY_NAMES: [&str; 5] = ["prop_a2", "recursion_band", "lemma_a1", "eq_last", "cj"];

pub fn check_by_name(name: &str, ranges: &RangeSpec) -> Result<IdentityReport> {
    match name {
        "prop_a2" => check_prop_a2(ranges),
        "recursion_band" => check_recursion_band(ranges),
        "lemma_a1" => check_lemma_a1(ranges),
        "eq_last" => check_eq_last(ranges),
        "cj" => check_cj(ranges),
        _ => Err(Error::Config(format!("unknown identity {name:?}; expected one of {}", IDENTITY_NAMES.join(", ")))),
    }
}

pub fn check_all(ranges: &RangeSpec) -> Result<Vec<IdentityReport>> {
    IDENTITY_NAMES.iter().map(|n| check_by_name(n, ranges)).collect()
}

fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn tuple(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

struct Case {
    equation: &'static str,
    tuple: Vec<(&'static str, i64)>,
    lhs: Rational,
    rhs: Rational,
}

fn report(identity: &str, cases: Vec<Vec<Case>>) -> IdentityReport {
    let mut checked = 0;
    let mut counterexamples = Vec::new();
    for c in cases.into_iter().flatten() {
        checked += 1;
        if c.lhs != c.rhs {
            counterexamples.push(Counterexample {
                equation: c.equation.into(),
                tuple: tuple(&c.tuple),
                lhs: c.lhs.to_string(),
                rhs: c.rhs.to_string(),
            });
        }
    }
    IdentityReport { identity: identity.into(), tuples_checked: checked, counterexamples }
}

/// `Σ_{i=0}^{n+k} (−1)^{i+1} C(n+k,i) C(m−i−n−1, j−1) C(m−i−n−j−1, n+k−j)`.
pub fn prop_a2_sum(n: i64, k: i64, j: i64, m: i64) -> Rational {
    (0..=n + k)
        .map(|i| sign(i + 1) * binom(n + k, i) * binom(m - i - n - 1, j - 1) * binom(m - i - n - j - 1, n + k - j))
        .sum()
}

/// The sum vanishes for `k > −n`, `1 ≤ j ≤ n+k`, `m > 2n+k`.
pub fn check_prop_a2(ranges: &RangeSpec) -> Result<IdentityReport> {
    ranges.validate()?;
    let cases = ranges
        .nk()
        .par_iter()
        .map(|&(n, k)| {
            let mut out = Vec::new();
            for j in 1..=n + k {
                for m in (2 * n + k + 1)..=(2 * n + k + ranges.m_span) {
                    out.push(Case {
                        equation: "prop_a2",
                        tuple: vec![("n", n), ("k", k), ("j", j), ("m", m)],
                        lhs: prop_a2_sum(n, k, j, m),
                        rhs: Rational::zero(),
                    });
                }
            }
            out
        })
        .collect();
    Ok(report("prop_a2", cases))
}

/// Coefficient of `u_{wt u − n − j − 1}v` in the recursion for
/// `u_{wt u − m − 1}v`: `(−1)^{m+k} C(m−n−1, j−1) C(m−n−j−1, n+k−j)`.
pub fn recursion_coefficient(n: i64, k: i64, j: i64, m: i64) -> Rational {
    sign(m + k) * binom(m - n - 1, j - 1) * binom(m - n - j - 1, n + k - j)
}

/// For `n+1 ≤ m ≤ 2n+k` the recursion is trivial: only `j = m − n`
/// survives, with coefficient one.
pub fn check_recursion_band(ranges: &RangeSpec) -> Result<IdentityReport> {
    ranges.validate()?;
    let cases = ranges
        .nk()
        .par_iter()
        .map(|&(n, k)| {
            let mut out = Vec::new();
            for m in (n + 1)..=(2 * n + k) {
                for j in 1..=n + k {
                    let want = if j == m - n { Rational::one() } else { Rational::zero() };
                    out.push(Case {
                        equation: "recursion_band",
                        tuple: vec![("n", n), ("k", k), ("m", m), ("j", j)],
                        lhs: recursion_coefficient(n, k, j, m),
                        rhs: want,
                    });
                }
            }
            out
        })
        .collect();
    Ok(report("recursion_band", cases))
}

/// `Σ_l (−1)^l C(s,l) C(r−l, m)` for `r ≥ m ≥ 0`.
///
/// The sum is read through `C(r−l, m) = C(r−l, r−l−m)`, which vanishes once
/// `l > r − m`; without that reading the sum diverges for `s < 0`.
pub fn lemma_a1_lhs(r: i64, m: i64, s: i64) -> Rational {
    (0..=r - m).map(|l| sign(l) * binom(s, l) * binom(r - l, m)).sum()
}

/// `Σ_l C(s,l) C(−m−1, r−m−l)`; finite since the second factor vanishes for `l > r − m`.
pub fn van2_lhs(r: i64, m: i64, s: i64) -> Rational {
    (0..=r - m).map(|l| binom(s, l) * binom(-m - 1, r - m - l)).sum()
}

/// `Σ_l (−1)^l C(n+k, l) C(n+k−1−l, n+k−j)`, the specialization
/// `m = n+k−j`, `r = n+k−1`, `s = n+k` of [`lemma_a1_lhs`].
pub fn lemma_a1_id2_lhs(n: i64, k: i64, j: i64) -> Rational {
    lemma_a1_lhs(n + k - 1, n + k - j, n + k)
}

/// Both equations of the lemma plus the Vandermonde step.
pub fn check_lemma_a1(ranges: &RangeSpec) -> Result<IdentityReport> {
    ranges.validate()?;
    let rms: Vec<(i64, i64)> = (ranges.r.0..=ranges.r.1).flat_map(|r| (0..=r).map(move |m| (r, m))).collect();
    let mut cases: Vec<Vec<Case>> = rms
        .par_iter()
        .map(|&(r, m)| {
            let mut out = Vec::new();
            for s in ranges.s.0..=ranges.s.1 {
                let t = vec![("r", r), ("m", m), ("s", s)];
                out.push(Case { equation: "id1", tuple: t.clone(), lhs: lemma_a1_lhs(r, m, s), rhs: binom(r - s, r - m) });
                out.push(Case { equation: "van2", tuple: t, lhs: van2_lhs(r, m, s), rhs: binom(s - m - 1, r - m) });
            }
            out
        })
        .collect();
    cases.extend(ranges.nk().par_iter().map(|&(n, k)| {
        (1..=n + k)
            .map(|j| Case {
                equation: "id2",
                tuple: vec![("n", n), ("k", k), ("j", j)],
                lhs: lemma_a1_id2_lhs(n, k, j),
                rhs: sign(j - 1),
            })
            .collect::<Vec<_>>()
    }).collect::<Vec<_>>());
    Ok(report("lemma_a1", cases))
}

/// `Σ_{r=0}^{j−1} (−1)^r C(n+k, j−1−r) C(n+k−j+r, r)`.
pub fn eq_last_sum(n: i64, k: i64, j: i64) -> Rational {
    (0..j).map(|r| sign(r) * binom(n + k, j - 1 - r) * binom(n + k - j + r, r)).sum()
}

/// The sum equals one for every `1 ≤ j ≤ n+k`.
pub fn check_eq_last(ranges: &RangeSpec) -> Result<IdentityReport> {
    ranges.validate()?;
    let cases = ranges
        .nk()
        .par_iter()
        .map(|&(n, k)| {
            (1..=n + k)
                .map(|j| Case {
                    equation: "eq_last",
                    tuple: vec![("n", n), ("k", k), ("j", j)],
                    lhs: eq_last_sum(n, k, j),
                    rhs: Rational::one(),
                })
                .collect()
        })
        .collect();
    Ok(report("eq_last", cases))
}

/// Direct sum for `C_j` against the regime table; additionally `C_j ≠ 0`
/// for `j < −n`.
pub fn check_cj(ranges: &RangeSpec) -> Result<IdentityReport> {
    ranges.validate()?;
    let ns: Vec<i64> = (ranges.n.0..=ranges.n.1).collect();
    let cases = ns
        .par_iter()
        .map(|&n| {
            let mut out = Vec::new();
            for j in ranges.cj_j.0..=ranges.cj_j.1 {
                let direct = cj_coefficient(n, j);
                if j < -n {
                    let nonzero = if direct.is_zero() { Rational::zero() } else { Rational::one() };
                    out.push(Case { equation: "cj_nonzero", tuple: vec![("n", n), ("j", j)], lhs: nonzero, rhs: Rational::one() });
                }
                out.push(Case { equation: "cj", tuple: vec![("n", n), ("j", j)], lhs: direct, rhs: cj_closed_form(n, j) });
            }
            out
        })
        .collect();
    Ok(report("cj", cases))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    // Oracle: the binomials written out as falling factorials over i128.
    fn falling_binom(p: i64, q: i64) -> i128 {
        if q < 0 {
            return 0;
        }
        let (mut num, mut den) = (1i128, 1i128);
        for i in 0..q {
            num *= (p - i) as i128;
            den *= (i + 1) as i128;
        }
        num / den
    }

    #[test]
    fn examples() {
        assert_eq!(prop_a2_sum(1, 1, 1, 4), rat(0));
        assert_eq!(prop_a2_sum(0, 1, 1, 2), rat(0));
        assert_eq!(lemma_a1_lhs(3, 1, 2), binom(1, 2));
        assert_eq!(lemma_a1_lhs(3, 1, 2), rat(0));
        assert_eq!(lemma_a1_id2_lhs(1, 1, 2), rat(-1));
        for r in 0..6 {
            for m in 0..=r {
                assert_eq!(lemma_a1_lhs(r, m, 0), binom(r, r - m));
            }
        }
        assert_eq!(eq_last_sum(1, 1, 2), rat(1));
        for nk in 1..8 {
            assert_eq!(eq_last_sum(nk, 0, 1), rat(1));
        }
        assert_eq!(cj_coefficient(2, 1), rat(0));
        assert_eq!(cj_coefficient(1, 2), rat(-3));
        assert_ne!(cj_coefficient(1, -2), rat(0));
    }

    #[test]
    fn oracle_sums_agree() {
        for n in 0..4 {
            for k in (1 - n)..4 {
                for j in 1..=n + k {
                    for m in (2 * n + k + 1)..(2 * n + k + 6) {
                        let s: i128 = (0..=n + k)
                            .map(|i| {
                                let sg = if (i + 1) % 2 == 0 { 1 } else { -1 };
                                sg * falling_binom(n + k, i) * falling_binom(m - i - n - 1, j - 1) * falling_binom(m - i - n - j - 1, n + k - j)
                            })
                            .sum();
                        assert_eq!(s, 0);
                    }
                    let e: i128 = (0..j)
                        .map(|r| if r % 2 == 0 { 1 } else { -1 } * falling_binom(n + k, j - 1 - r) * falling_binom(n + k - j + r, r))
                        .sum();
                    assert_eq!(e, 1);
                }
            }
        }
    }

    #[test]
    fn default_sweeps_are_clean() {
        let r = RangeSpec::default();
        for rep in check_all(&r).unwrap() {
            assert!(rep.passed(), "{rep:?}");
            assert!(rep.tuples_checked > 0);
        }
    }

    #[test]
    fn full_eq_last_sweep() {
        let r = RangeSpec { n: (0, 12), k: (-12, 12), ..RangeSpec::default() };
        let rep = check_eq_last(&r).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn broken_identity_is_caught() {
        // The sum is an alternating difference of a degree n+k−1 polynomial in
        // i; raising the last binomial by one degree must break it, and the
        // report has to say where.
        let mutated = |n: i64, k: i64, j: i64, m: i64| -> Rational {
            (0..=n + k)
                .map(|i| sign(i + 1) * binom(n + k, i) * binom(m - i - n - 1, j - 1) * binom(m - i - n - j, n + k - j + 1))
                .sum()
        };
        let cases = vec![(1..=4)
            .map(|m| Case { equation: "prop_a2", tuple: vec![("n", 1), ("k", 1), ("j", 1), ("m", 3 + m)], lhs: mutated(1, 1, 1, 3 + m), rhs: rat(0) })
            .collect()];
        let rep = report("prop_a2", cases);
        assert_eq!(rep.tuples_checked, 4);
        assert_eq!(rep.counterexamples.len(), 4);
        assert_eq!(rep.counterexamples[0].tuple["m"], 4);
        assert!(!rep.passed());
    }

    #[test]
    fn deterministic() {
        let r = RangeSpec { n: (0, 3), ..RangeSpec::default() };
        let a = serde_json::to_string(&check_all(&r).unwrap()).unwrap();
        let b = serde_json::to_string(&check_all(&r).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_range_rejected() {
        let r = RangeSpec { n: (3, 1), ..RangeSpec::default() };
        assert!(check_prop_a2(&r).is_err());
        assert!(check_by_name("nope", &RangeSpec::default()).is_err());
    }
}
