use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Zero};

use crate::arith::{Poly, RatFunc, Rational};

/// Result of inserting one equation into an [`Echelon`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InsertOutcome {
    /// The equation became a new pivot on this column.
    Pivot(usize),
    /// The equation reduced to `0 = 0`.
    Dependent,
    /// The equation reduced to `0 = nonzero`.
    Inconsistent,
}

trait Elim: Clone + PartialEq + std::fmt::Debug {
    const FRACTION_FREE: bool;
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn size(&self) -> usize;
    fn mul(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn to_ratfunc(&self) -> RatFunc;
    /// Field mode: divide so the pivot becomes one. Ring mode: remove content.
    fn normalize(row: &mut [(usize, Self)], rhs: &mut Self, pivot: Option<usize>);
}

impl Elim for Rational {
    const FRACTION_FREE: bool = false;
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn size(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn to_ratfunc(&self) -> RatFunc {
        RatFunc::from_rational(self.clone())
    }
    fn normalize(row: &mut [(usize, Self)], rhs: &mut Self, pivot: Option<usize>) {
        let Some(p) = pivot else { return };
        let pv = row.iter().find(|(c, _)| *c == p).expect("pivot present").1.clone();
        if pv.is_one() {
            return;
        }
        let inv = pv.recip();
        for (_, v) in row.iter_mut() {
            *v *= &inv;
        }
        *rhs *= &inv;
    }
}

impl Elim for Poly {
    const FRACTION_FREE: bool = true;
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn size(&self) -> usize {
        self.terms().iter().map(|(_, c)| (c.numer().bits() + c.denom().bits()) as usize + 8).sum()
    }
    fn mul(&self, o: &Self) -> Self {
        Poly::mul(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Poly::sub(self, o)
    }
    fn to_ratfunc(&self) -> RatFunc {
        RatFunc::from_poly(self.clone())
    }
    fn normalize(row: &mut [(usize, Self)], rhs: &mut Self, pivot: Option<usize>) {
        let mut g = Poly::zero();
        for (_, v) in row.iter() {
            g = g.gcd(v);
            if g.is_one() {
                break;
            }
        }
        if !rhs.is_zero() && !g.is_one() {
            g = g.gcd(rhs);
        }
        if !g.is_zero() && !g.is_one() {
            for (_, v) in row.iter_mut() {
                *v = v.div_exact(&g).expect("content divides");
            }
            *rhs = rhs.div_exact(&g).expect("content divides");
        }
        // Keep rational coefficients tame: make the pivot (or first entry) monic.
        let lead = pivot
            .and_then(|p| row.iter().find(|(c, _)| *c == p))
            .or(row.first())
            .and_then(|(_, v)| v.leading().map(|t| t.1.clone()));
        if let Some(lc) = lead {
            if !lc.is_one() {
                let inv = lc.recip();
                for (_, v) in row.iter_mut() {
                    *v = v.scale(&inv);
                }
                *rhs = rhs.scale(&inv);
            }
        }
    }
}

#[derive(Clone, Debug)]
struct PivotRow<E> {
    tag: usize,
    col: usize,
    entries: Vec<(usize, E)>,
    rhs: E,
}

#[derive(Clone, Debug)]
struct Core<E> {
    pivots: Vec<PivotRow<E>>,
    pivot_of_col: HashMap<usize, usize>,
}

impl<E: Elim> Core<E> {
    fn new() -> Self {
        Core { pivots: Vec::new(), pivot_of_col: HashMap::new() }
    }

    /// Reduces `row` against all pivots; returns the remaining entries and rhs.
    fn reduce(&self, row: Vec<(usize, E)>, mut rhs: E) -> (Vec<(usize, E)>, E) {
        let mut r: HashMap<usize, E> = HashMap::with_capacity(row.len() * 2);
        let mut pending: BTreeSet<usize> = BTreeSet::new();
        for (c, v) in row {
            if v.is_zero() {
                continue;
            }
            if let Some(&k) = self.pivot_of_col.get(&c) {
                pending.insert(k);
            }
            r.insert(c, v);
        }
        while let Some(k) = pending.pop_first() {
            let p = &self.pivots[k];
            let Some(rc) = r.get(&p.col).cloned() else { continue };
            if E::FRACTION_FREE {
                let pc = &p.entries.iter().find(|(c, _)| *c == p.col).expect("pivot").1;
                for v in r.values_mut() {
                    *v = pc.mul(v);
                }
                rhs = pc.mul(&rhs).sub(&rc.mul(&p.rhs));
            } else {
                rhs = rhs.sub(&rc.mul(&p.rhs));
            }
            for (c, pv) in &p.entries {
                let delta = rc.mul(pv);
                let slot = r.entry(*c).or_insert_with(E::zero);
                *slot = slot.sub(&delta);
                if slot.is_zero() {
                    r.remove(c);
                } else if let Some(&k2) = self.pivot_of_col.get(c) {
                    if k2 != k {
                        pending.insert(k2);
                    }
                }
            }
            if E::FRACTION_FREE && !r.is_empty() {
                let mut v: Vec<(usize, E)> = r.drain().collect();
                v.sort_by_key(|(c, _)| *c);
                E::normalize(&mut v, &mut rhs, None);
                r = v.into_iter().collect();
            }
        }
        let mut out: Vec<(usize, E)> = r.into_iter().collect();
        out.sort_by_key(|(c, _)| *c);
        (out, rhs)
    }

    fn insert(&mut self, tag: usize, row: Vec<(usize, E)>, rhs: E) -> InsertOutcome {
        let (mut out, mut rhs) = self.reduce(row, rhs);
        if out.is_empty() {
            return if rhs.is_zero() { InsertOutcome::Dependent } else { InsertOutcome::Inconsistent };
        }
        let col = out.iter().min_by_key(|(c, v)| (v.size(), *c)).expect("nonempty").0;
        E::normalize(&mut out, &mut rhs, Some(col));
        self.pivot_of_col.insert(col, self.pivots.len());
        self.pivots.push(PivotRow { tag, col, entries: out, rhs });
        InsertOutcome::Pivot(col)
    }

    fn back_substitute(&self, cols: usize) -> Vec<RatFunc> {
        let mut x = vec![RatFunc::zero(); cols];
        for p in self.pivots.iter().rev() {
            let mut val = p.rhs.to_ratfunc();
            let mut pc = RatFunc::one();
            for (c, v) in &p.entries {
                if *c == p.col {
                    pc = v.to_ratfunc();
                } else if !x[*c].is_zero() {
                    val = &val - &(&v.to_ratfunc() * &x[*c]);
                }
            }
            x[p.col] = &val / &pc;
        }
        x
    }
}

fn to_poly_core(c: &Core<Rational>) -> Core<Poly> {
    Core {
        pivots: c
            .pivots
            .iter()
            .map(|p| PivotRow {
                tag: p.tag,
                col: p.col,
                entries: p.entries.iter().map(|(c, v)| (*c, Poly::constant(v.clone()))).collect(),
                rhs: Poly::constant(p.rhs.clone()),
            })
            .collect(),
        pivot_of_col: c.pivot_of_col.clone(),
    }
}

#[derive(Clone, Debug)]
enum Store {
    Rat(Core<Rational>),
    Poly(Core<Poly>),
}

/// Incremental row-echelon form of a system `Σ_j a_ij x_j = b_i`.
///
/// Equations can be added one at a time; each is fully reduced against the
/// existing pivots in insertion order, so the pivot rows stay triangular and
/// back-substitution in reverse order yields a particular solution.
/// Pivot choice is deterministic: smallest entry size, then smallest column.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    store: Store,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon { cols, store: Store::Rat(Core::new()) }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        match &self.store {
            Store::Rat(c) => c.pivots.len(),
            Store::Poly(c) => c.pivots.len(),
        }
    }

    pub fn is_pivot_col(&self, col: usize) -> bool {
        match &self.store {
            Store::Rat(c) => c.pivot_of_col.contains_key(&col),
            Store::Poly(c) => c.pivot_of_col.contains_key(&col),
        }
    }

    /// `(tag, column)` of each pivot in insertion order.
    pub fn pivot_trace(&self) -> Vec<(usize, usize)> {
        match &self.store {
            Store::Rat(c) => c.pivots.iter().map(|p| (p.tag, p.col)).collect(),
            Store::Poly(c) => c.pivots.iter().map(|p| (p.tag, p.col)).collect(),
        }
    }

    fn upgrade(&mut self) {
        if let Store::Rat(c) = &self.store {
            self.store = Store::Poly(to_poly_core(c));
        }
    }

    /// Adds the equation `Σ row[j]·x_j = rhs`, tagged for the pivot trace.
    pub fn insert(&mut self, tag: usize, row: Vec<(usize, RatFunc)>, rhs: RatFunc) -> InsertOutcome {
        assert!(row.iter().all(|(c, _)| *c < self.cols), "column out of range");
        let all_rational = rhs.as_rational().is_some() && row.iter().all(|(_, v)| v.as_rational().is_some());
        if all_rational {
            if let Store::Rat(core) = &mut self.store {
                let row = row.into_iter().map(|(c, v)| (c, v.as_rational().expect("checked"))).collect();
                return core.insert(tag, row, rhs.as_rational().expect("checked"));
            }
        }
        self.upgrade();
        let Store::Poly(core) = &mut self.store else { unreachable!() };
        // Clear denominators so the equation has polynomial entries.
        let mut l = rhs.den().clone();
        for (_, v) in &row {
            if !v.den().is_one() {
                let g = l.gcd(v.den());
                l = l.mul(&v.den().div_exact(&g).expect("gcd divides"));
            }
        }
        let to_poly = |v: &RatFunc| v.num().mul(&l.div_exact(v.den()).expect("lcm multiple"));
        let prow = row.iter().map(|(c, v)| (*c, to_poly(v))).collect();
        core.insert(tag, prow, to_poly(&rhs))
    }

    /// Whether `Σ row[j] x_j = rhs` is implied (`Dependent`), contradicts
    /// (`Inconsistent`) or is independent of the current equations; the
    /// system itself is left unchanged.
    pub fn probe(&self, row: Vec<(usize, RatFunc)>, rhs: RatFunc) -> InsertOutcome {
        let mut copy = self.clone();
        copy.insert(usize::MAX, row, rhs)
    }

    /// A particular solution with all free variables set to zero.
    pub fn back_substitute(&self) -> Vec<RatFunc> {
        match &self.store {
            Store::Rat(c) => c.back_substitute(self.cols),
            Store::Poly(c) => c.back_substitute(self.cols),
        }
    }
}
