//! Exact computation in the level-`n` Zhu algebras `Aₙ(V) = V/Oₙ(V)` of the
//! rank-one Heisenberg and the universal Virasoro vertex operator algebras.
//!
//! The crate is layered bottom-up:
//!
//! * [`arith`] — big rationals, polynomials and rational functions in the
//!   parameters `c`, `h`, `lambda`, generalized binomials.
//! * [`voa`] — the two presentations, PBW monomials, normal ordering and the
//!   mode action of arbitrary states (also on Fock and Verma modules).
//! * [`linalg`] — fraction-free sparse elimination with exact rechecks.
//! * [`zhu`] — `∘ₙ`, `*ₙ`, the spanning vectors of `Oₙ(V)`, reductions,
//!   multiplication formulas, membership certificates and the
//!   `(L(-1)+L(0))`-separation check.
//! * [`modules`] — zero-mode matrices and the homomorphism checks.
//! * [`presentations`] — known presentations of `Aₙ` as data plus the
//!   verification workflow.
//! * [`identities`] — brute-force checkers for the binomial identities the
//!   recursion relies on.

pub mod arith;
mod error;
pub mod identities;
pub mod linalg;
pub mod modules;
pub mod presentations;
pub mod suites;
pub mod voa;
pub mod zhu;

pub use error::{Error, Result};

/// The guide's chapters, compiled and run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    struct Overview;
    #[doc = include_str!("../../../book/src/states.md")]
    struct States;
    #[doc = include_str!("../../../book/src/products.md")]
    struct Products;
    #[doc = include_str!("../../../book/src/membership.md")]
    struct Membership;
    #[doc = include_str!("../../../book/src/presentations.md")]
    struct Presentations;
    #[doc = include_str!("../../../book/src/modules.md")]
    struct Modules;
    #[doc = include_str!("../../../book/src/identities.md")]
    struct Identities;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
