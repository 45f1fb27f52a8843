//! Sequents, the inference rules of the calculus and its fragments, the
//! proof checker, fragment classifiers, sequent transforms, and the
//! reducibility / pure-variable / normal-form apparatus.

mod check;
mod classify;
mod mints;
mod proof;
mod sequent;

pub use check::{check_proof, fragment_allows, synth_premises};
pub use classify::{
    classify_abstract, classify_sequent, erase_second_order, herbrand_nf, ClassifyError,
    SequentClass,
};
pub use mints::{
    is_mints_normal, is_reducible, minor_formulas, pure_variable, FnOracle, OracleVerdict,
    ProvabilityOracle, Side, Trivalent,
};
pub use proof::{CheckError, CheckErrorKind, CheckOptions, Fragment, Instantiation, ProofTree, RuleTag};
pub use sequent::{Cedent, Sequent};
