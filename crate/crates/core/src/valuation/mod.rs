//! Pair-valued semantics over finite universes: semi-valuations with
//! their defining inequalities, pair-valued and diagonal-valued models
//! with comprehension checks, the model constructions that turn a
//! semi-valuation into a diagonal model, and the valuation defined from
//! cut-free provability over a finite sequent universe.

mod maehara;
mod model;
mod semival;
mod universe;

pub use maehara::{
    maehara_m, maehara_relation, maehara_valuation, ver2_endgame, EndgameReport,
    MaeharaValuation, SequentUniverse,
};
pub use model::{
    bmodel_from_dbmodel, check_2ca, check_3ca, check_layer_domination,
    check_two_model_domination, check_value_domination, comprehension_items, m_dominates_n,
    model_from_semival, model_from_semival_girard, tri_fun, BModel, CompItem, DbModel, Env,
    GirardLab, RelFun, TwoModelLab,
};
pub use semival::{soundness_check, SemiValuation, ValEntry, ValReport};
pub use universe::{FormulaUniverse, UniverseOptions};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValuationError {
    #[error("universe exceeded the size limit ({0} formulas)")]
    UniverseTooLarge(usize),
    #[error("formula `{0}` is missing from the valuation table")]
    MissingFormula(String),
    #[error("value for `{0}` violates the pair invariant")]
    InvalidPair(String),
    #[error("this construction needs the two-element algebra")]
    AlgebraNotTwo,
    #[error("no relation family of arity {0} in the model")]
    MissingFamily(usize),
    #[error("term `{0}` does not name an individual of the model")]
    UnknownIndividual(String),
    #[error("second-order variable `{0}` is not bound by the model")]
    UnboundSecondOrder(String),
    #[error("family of arity {0} would have {1} functions; too many to enumerate")]
    FamilyTooLarge(usize, usize),
    #[error("formula `{0}` is quantified; this pipeline decides only quantifier-free universes")]
    QuantifiedUniverse(String),
    #[error("oracle could not decide `{0}`")]
    OracleUndecided(String),
    #[error("induced relation is broken: {0}")]
    RelationBroken(String),
    #[error("defined valuation is not a semi-valuation: {0}")]
    SemiValBroken(String),
    #[error("sequent universe too large: {0} sequents")]
    SequentUniverseTooLarge(usize),
    #[error("arity mismatch: {0}")]
    Arity(String),
}
