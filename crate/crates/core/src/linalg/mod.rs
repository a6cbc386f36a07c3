//! Exact sparse linear algebra over ℚ(c, h, lambda).
//!
//! Systems whose entries are all rational are eliminated over ℚ directly.
//! Otherwise each equation is cleared of denominators and eliminated
//! fraction-free over the polynomial ring (`r ← p_c·r − r_c·p`, then divided
//! by its content), with a single division pass during back-substitution.
//!
//! Every solution is re-verified by exact arithmetic before it is returned;
//! a failed recheck is a bug and panics rather than returning a wrong answer.

mod echelon;

use std::collections::BTreeMap;

use crate::arith::RatFunc;

pub use echelon::{Echelon, InsertOutcome};

/// Sparse matrix with no stored zeros.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), RatFunc>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMatrix::new(n, n);
        for i in 0..n {
            m.set(i, i, RatFunc::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<RatFunc>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = SparseMatrix::new(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged dense matrix");
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFunc) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> RatFunc {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &RatFunc)> {
        self.entries.iter()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::new(self.cols, self.rows);
        for (&(i, j), v) in &self.entries {
            t.entries.insert((j, i), v.clone());
        }
        t
    }

    /// Rows as sparse `(col, value)` lists.
    pub fn row_lists(&self) -> Vec<Vec<(usize, RatFunc)>> {
        let mut out = vec![Vec::new(); self.rows];
        for (&(i, j), v) in &self.entries {
            out[i].push((j, v.clone()));
        }
        out
    }

    pub fn mul_vec(&self, x: &[RatFunc]) -> Vec<RatFunc> {
        assert_eq!(x.len(), self.cols);
        let mut out = vec![RatFunc::zero(); self.rows];
        for (&(i, j), v) in &self.entries {
            if !x[j].is_zero() {
                out[i] = &out[i] + &(v * &x[j]);
            }
        }
        out
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows);
        let rows_b = other.row_lists();
        let mut out = SparseMatrix::new(self.rows, other.cols);
        let mut acc: BTreeMap<(usize, usize), RatFunc> = BTreeMap::new();
        for (&(i, k), a) in &self.entries {
            for (j, b) in &rows_b[k] {
                let e = acc.entry((i, *j)).or_default();
                *e = &*e + &(a * b);
            }
        }
        for ((i, j), v) in acc {
            out.set(i, j, v);
        }
        out
    }

    /// Debug dump: one `row col value` triplet per line.
    pub fn to_triplets(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for (&(i, j), v) in &self.entries {
            s.push_str(&format!("{i} {j} {v}\n"));
        }
        s
    }
}

/// Outcome of [`solve`].
#[derive(Clone, Debug, PartialEq)]
pub struct SolveResult {
    /// A particular solution (free variables set to zero), or `None` if inconsistent.
    pub solution: Option<Vec<RatFunc>>,
    /// `(equation, column)` of each pivot in elimination order.
    pub pivots: Vec<(usize, usize)>,
}

impl SolveResult {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Solves `A x = b`.
pub fn solve(a: &SparseMatrix, b: &[RatFunc]) -> SolveResult {
    assert_eq!(b.len(), a.rows(), "right-hand side length");
    let mut ech = Echelon::new(a.cols());
    let mut inconsistent = false;
    for (i, row) in a.row_lists().into_iter().enumerate() {
        if let InsertOutcome::Inconsistent = ech.insert(i, row, b[i].clone()) {
            inconsistent = true;
        }
    }
    let pivots = ech.pivot_trace();
    if inconsistent {
        return SolveResult { solution: None, pivots };
    }
    let x = ech.back_substitute();
    let check = a.mul_vec(&x);
    assert!(check.iter().zip(b).all(|(l, r)| l == r), "internal error: solution failed exact recheck");
    SolveResult { solution: Some(x), pivots }
}

pub fn rank(a: &SparseMatrix) -> usize {
    let mut ech = Echelon::new(a.cols());
    for (i, row) in a.row_lists().into_iter().enumerate() {
        ech.insert(i, row, RatFunc::zero());
    }
    ech.rank()
}

/// Coefficients `y` with `Σ yᵢ·rowᵢ(A) = v`, or `None` if `v ∉ rowspan(A)`.
pub fn row_space_membership(a: &SparseMatrix, v: &[RatFunc]) -> Option<Vec<RatFunc>> {
    assert_eq!(v.len(), a.cols());
    let y = solve(&a.transpose(), v).solution?;
    let mut acc = vec![RatFunc::zero(); a.cols()];
    for (&(i, j), e) in a.entries() {
        acc[j] = &acc[j] + &(e * &y[i]);
    }
    assert!(acc.iter().zip(v).all(|(l, r)| l == r), "internal error: membership failed exact recheck");
    Some(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_scalar, Param};

    fn s(x: &str) -> RatFunc {
        parse_scalar(x).unwrap()
    }

    #[test]
    fn identity_system() {
        let a = SparseMatrix::identity(3);
        let b = vec![s("1"), s("c"), s("h")];
        assert_eq!(solve(&a, &b).solution, Some(b));
    }

    #[test]
    fn upper_triangular_symbolic() {
        let a = SparseMatrix::from_dense(&[vec![s("c"), s("1")], vec![s("0"), s("c")]]);
        let b = vec![s("c+1"), s("c^2")];
        let x = solve(&a, &b).solution.unwrap();
        assert_eq!(x, vec![s("1/c"), s("c")]);
    }

    #[test]
    fn zero_rhs_gives_zero_solution() {
        let a = SparseMatrix::from_dense(&[vec![s("1"), s("2")], vec![s("3"), s("4")]]);
        let x = solve(&a, &[s("0"), s("0")]).solution.unwrap();
        assert!(x.iter().all(RatFunc::is_zero));
    }

    #[test]
    fn inconsistent_is_reported() {
        let a = SparseMatrix::from_dense(&[vec![s("1"), s("1")], vec![s("2"), s("2")]]);
        assert_eq!(solve(&a, &[s("1"), s("3")]).solution, None);
    }

    #[test]
    fn rank_basics() {
        assert_eq!(rank(&SparseMatrix::new(3, 4)), 0);
        let a = SparseMatrix::from_dense(&[vec![s("1"), s("c")], vec![s("1"), s("c")], vec![s("h"), s("0")]]);
        assert_eq!(rank(&a), 2);
    }

    #[test]
    fn row_space_membership_rechecks() {
        let a = SparseMatrix::from_dense(&[vec![s("1"), s("0"), s("c")], vec![s("0"), s("1"), s("1")]]);
        let y = row_space_membership(&a, &[s("2"), s("c"), s("3*c")]).unwrap();
        assert_eq!(y, vec![s("2"), s("c")]);
        assert!(row_space_membership(&a, &[s("0"), s("0"), s("1")]).is_none());
    }

    #[test]
    fn specialization_matches_symbolic_solution() {
        let a = SparseMatrix::from_dense(&[
            vec![s("c"), s("1"), s("0")],
            vec![s("1"), s("c-1"), s("2")],
            vec![s("0"), s("3"), s("c^2")],
        ]);
        let b = vec![s("1"), s("c"), s("0")];
        let x = solve(&a, &b).solution.unwrap();
        let r = crate::arith::ratio(7, 3);
        let sub = |m: &RatFunc| m.substitute(&[(Param::C, r.clone())]).unwrap();
        let mut a_r = SparseMatrix::new(3, 3);
        for (&(i, j), v) in a.entries() {
            a_r.set(i, j, sub(v));
        }
        let b_r: Vec<RatFunc> = b.iter().map(sub).collect();
        let x_r = solve(&a_r, &b_r).solution.unwrap();
        assert_eq!(x.iter().map(sub).collect::<Vec<_>>(), x_r);
    }
}
