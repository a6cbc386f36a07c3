//! Single-generator vertex operator algebras and their PBW bases.
//!
//! A [`Space`] is the span of PBW words `u(-k₁)⋯u(-k_r)` on a lowest
//! vector: the vacuum (giving `V` itself), a Fock vector `v_λ` or a Verma
//! vector `v_h`. It carries the generator action (normal ordering with the
//! bracket and the annihilation law) and the action of modes of arbitrary
//! states of `V` through the iterate formula.
//!
//! Invariants maintained throughout:
//! * every [`Element`] is PBW-canonical: decreasing words, modes at least
//!   [`Space::min_mode`];
//! * `u_j` shifts weight by `gen_weight - j - 1`, so every output of
//!   [`Space::apply_generator_mode`] and [`Space::mode`] is graded as
//!   predicted;
//! * `w_p v = 0` for `p ≥ wt w + wt v` ([`Space::annihilation_bound`]).

mod element;
mod grammar;
mod monomial;
mod presentation;
mod space;

pub use element::Element;
pub use monomial::{monomials_of_weight, monomials_of_weight_in, monomials_up_to, Monomial};
pub use presentation::{Bracket, VoaPresentation};
pub use space::{Lowest, Space};
