//! Terms, equations and quasi-equations in bracket-free prefix notation, and
//! brute-force model checking over finite algebras.
//!
//! Tokens are whitespace separated: `*` is multiplication, `inv` inversion,
//! `1` the identity constant and `&` the meet; any other identifier is a
//! variable. The length of an equation or quasi-equation is the number of
//! tokens in all of its terms, with `=`, `,` and `->` not counted.

mod algebra;
mod congruence;
mod enumerate;
mod satisfy;
mod term;

pub use algebra::{algebra_isomorphism, FiniteAlgebra, Operation};
pub use congruence::{
    congruence_generated, congruence_lattice, is_subdirectly_irreducible, meet_irreducible_congruences,
    principal_congruences, si_quotients, Congruence,
};
pub use enumerate::{candidate_equations, canonical_form, enumerate_equations, variable_name};
pub use satisfy::{evaluate, satisfies_equation, satisfies_quasiequation, Assignment, Satisfaction};
pub use term::{format_term, parse_term, prefix_length, Equation, PrefixLength, QuasiEquation, Signature, Term};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("symbol {symbol:?} needs {arity} argument(s) but the input ended")]
    ArityMismatch { symbol: String, arity: usize },
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("unexpected tokens after a complete term: {0:?}")]
    TrailingTokens(String),
    #[error("empty term")]
    EmptyTerm,
    #[error("malformed equation {0:?}: expected `lhs = rhs`")]
    MalformedEquation(String),
    #[error("algebra has no operation {0:?}")]
    MissingOperation(String),
    #[error("invalid algebra: {0}")]
    BadAlgebra(String),
    #[error("search needs at least {needed} steps; the budget is {cap}")]
    BudgetExceeded { needed: u128, cap: u64 },
}
