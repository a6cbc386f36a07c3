//! Level-`n` Zhu algebra machinery.
//!
//! Notation: `≈` is equality modulo `O^L(V)` (the span of `(L(-1)+L(0))v`),
//! `∼ₙ` modulo `Oₙ°(V)` (the span of circle products) and `≡ₙ` modulo
//! `Oₙ(V) = O^L(V) + Oₙ°(V)`. Generator modes are written `u_j` in vertex
//! indexing; [`crate::voa::VoaPresentation::physics_of_vertex`] converts to the
//! `α(m)` / `L(m)` labels used by the text grammar.
//!
//! Reductions rewrite PBW monomials with two rules, each backed by an explicit
//! spanning vector so that every rewrite carries a certificate:
//!
//! * deep modes `u_{-k}`, `k ≥ 2n+2`: `u_{-k}w = u∘ₙ^{(k-2n-2)} w − Σ_{i≥1} C(wt u+n,i) u_{i-k}w`
//!   (the generalized circle with `m = k-2n-2`, `k = 0`); iterating gives the
//!   closed form of [`deep_mode_coefficients`];
//! * the mode `u_{-(2n+1)}` (`n ≥ 1`): solve `(L(-1)+L(0))w'` for the word
//!   `w` it raises, where `w'` lowers one `u_{-(2n+1)}` to `u_{-2n}`.
//!
//! Both rules strictly decrease `(weight, length, #u_{-(2n+1)})`, so rewriting
//! terminates in the span of modes `u_{-1} … u_{-2n}`.

mod context;
mod membership;
mod mult;
mod products;
mod reduce;
mod separation;
mod spanning;
mod yplus;

pub use context::ZhuContext;
pub use membership::{Membership, SpanOptions};
pub use mult::{cj_closed_form, cj_coefficient, CorMult, MultFormula};
pub use reduce::{deep_mode_coefficients, Reduction};
pub use separation::Separation;
pub use spanning::{CertificateFile, MembershipCertificate, SpanKind, SpanningVector};

pub(crate) use spanning::Atom;
