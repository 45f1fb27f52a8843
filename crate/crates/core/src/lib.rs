//! A proof-theory toolkit for the classical second-order sequent calculus
//! G¹LC, built around three pieces:
//!
//! * a proof **kernel**: sequents with set-based cedents, rule-tagged
//!   derivations carrying explicit instantiation data, and a purely local
//!   checker ([`calculus::check_proof`]);
//! * a canonical cut-free **proof search** ([`search::canonical_search`])
//!   that either produces a checkable cut-free derivation or saturates an
//!   open branch and converts it into a semi-valuation over the
//!   three-valued algebra;
//! * a finite complete-Boolean-algebra **engine** ([`cba`]): the pair
//!   construction `D𝔹` with its two orders, the algebra of closure fixed
//!   points induced by a symmetric relation map, and the valuation defined
//!   from cut-free provability ([`valuation::maehara_valuation`]).
//!
//! Everything is finite and exact: quantifier ranges are explicit witness
//! pools, algebras are enumerated carriers, and each structural fact about
//! them is an executable check with witnesses on failure.

pub mod calculus;
pub mod cba;
pub mod search;
pub mod serial;
pub mod syntax;
pub mod valuation;
