use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// A PBW word `u(-k₁)u(-k₂)⋯u(-k_r)` applied to the lowest vector, stored as
/// the weakly decreasing list `k₁ ≥ k₂ ≥ … ≥ k_r ≥ 1` of physics modes.
///
/// The weight (degree) of the word is `Σ kᵢ`; the empty word is the lowest
/// vector itself. Ordering is by (weight, length, modes lexicographically),
/// which is the deterministic order used everywhere in the crate.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    modes: SmallVec<[u16; 8]>,
}

impl Monomial {
    pub fn vacuum() -> Monomial {
        Monomial { modes: SmallVec::new() }
    }

    /// From modes in any order (they are sorted). Zero modes are rejected.
    pub fn from_modes(modes: &[u16]) -> Monomial {
        assert!(modes.iter().all(|&k| k > 0), "PBW modes are positive");
        let mut m: SmallVec<[u16; 8]> = modes.iter().copied().collect();
        m.sort_unstable_by(|a, b| b.cmp(a));
        Monomial { modes: m }
    }

    /// From `(mode, exponent)` pairs.
    pub fn from_powers(powers: &[(u16, usize)]) -> Monomial {
        let mut v = Vec::new();
        for &(k, e) in powers {
            v.extend(std::iter::repeat_n(k, e));
        }
        Monomial::from_modes(&v)
    }

    pub fn modes(&self) -> &[u16] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn weight(&self) -> i64 {
        self.modes.iter().map(|&k| k as i64).sum()
    }

    pub fn leading(&self) -> Option<u16> {
        self.modes.first().copied()
    }

    pub fn count(&self, k: u16) -> usize {
        self.modes.iter().filter(|&&x| x == k).count()
    }

    /// The word without its first (largest) factor.
    pub fn tail(&self) -> Monomial {
        Monomial { modes: self.modes[1..].iter().copied().collect() }
    }

    /// Inserts `u(-k)` keeping the order (valid when the factors commute up to
    /// the caller's bookkeeping, e.g. Heisenberg negative modes).
    pub fn with_inserted(&self, k: u16) -> Monomial {
        let pos = self.modes.iter().position(|&x| x < k).unwrap_or(self.modes.len());
        let mut m = self.modes.clone();
        m.insert(pos, k);
        Monomial { modes: m }
    }

    /// Prepends `u(-k)`; requires `k ≥` the current leading mode.
    pub fn with_prepended(&self, k: u16) -> Monomial {
        debug_assert!(self.leading().is_none_or(|l| k >= l));
        let mut m = SmallVec::with_capacity(self.modes.len() + 1);
        m.push(k);
        m.extend_from_slice(&self.modes);
        Monomial { modes: m }
    }

    /// Removes one factor `u(-k)`, if present.
    pub fn without_one(&self, k: u16) -> Option<Monomial> {
        let pos = self.modes.iter().position(|&x| x == k)?;
        let mut m = self.modes.clone();
        m.remove(pos);
        Some(Monomial { modes: m })
    }

    /// `(mode, multiplicity)` pairs in decreasing mode order.
    pub fn powers(&self) -> Vec<(u16, usize)> {
        let mut out: Vec<(u16, usize)> = Vec::new();
        for &k in &self.modes {
            match out.last_mut() {
                Some((m, e)) if *m == k => *e += 1,
                _ => out.push((k, 1)),
            }
        }
        out
    }

    /// Writes the word as `S(-k)^e…` followed by `lowest` (e.g. `|0>`).
    pub fn render(&self, symbol: &str, lowest: &str) -> String {
        let mut s = String::new();
        for (k, e) in self.powers() {
            s.push_str(&format!("{symbol}(-{k})"));
            if e > 1 {
                s.push_str(&format!("^{e}"));
            }
        }
        s.push_str(lowest);
        s
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then(self.len().cmp(&other.len()))
            .then_with(|| self.modes.cmp(&other.modes))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.modes.as_slice())
    }
}

/// All weakly decreasing words with modes `≥ min_mode` and weight exactly `w`,
/// in the crate's monomial order.
pub fn monomials_of_weight(w: i64, min_mode: u16) -> Vec<Monomial> {
    monomials_of_weight_in(w, min_mode, u16::MAX)
}

/// As [`monomials_of_weight`], restricted to modes in `min_mode..=max_mode`.
pub fn monomials_of_weight_in(w: i64, min_mode: u16, max_mode: u16) -> Vec<Monomial> {
    fn rec(rem: i64, max: u16, min: u16, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if rem == 0 {
            out.push(Monomial::from_modes(cur));
            return;
        }
        let top = (max as i64).min(rem) as u16;
        for k in (min..=top).rev() {
            cur.push(k);
            rec(rem - k as i64, k, min, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if w < 0 {
        return out;
    }
    rec(w, max_mode, min_mode.max(1), &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// All words of weight at most `w`, in monomial order.
pub fn monomials_up_to(w: i64, min_mode: u16) -> Vec<Monomial> {
    (0..=w).flat_map(|d| monomials_of_weight(d, min_mode)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|w| monomials_of_weight(w, 1).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        // parts ≥ 2: p(n) - p(n-1)
        let counts2: Vec<usize> = (0..=8).map(|w| monomials_of_weight(w, 2).len()).collect();
        assert_eq!(counts2, vec![1, 0, 1, 1, 2, 2, 4, 4, 7]);
    }

    #[test]
    fn order_is_weight_then_length_then_lex() {
        let a = Monomial::from_modes(&[2, 1]);
        let b = Monomial::from_modes(&[3]);
        let c = Monomial::from_modes(&[1, 1, 1]);
        let mut v = vec![c.clone(), a.clone(), b.clone()];
        v.sort();
        assert_eq!(v, vec![b, a, c]);
    }

    #[test]
    fn render_groups_powers() {
        let m = Monomial::from_modes(&[1, 2, 1]);
        assert_eq!(m.render("a", "|0>"), "a(-2)a(-1)^2|0>");
        assert_eq!(Monomial::vacuum().render("L", "|0>"), "|0>");
    }
}
