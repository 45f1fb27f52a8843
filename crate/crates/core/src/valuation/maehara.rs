//! The valuation defined from cut-free provability. Over a finite set of
//! sequents, merging two sequents cedent-wise and asking a cut-free
//! provability oracle yields a relation map satisfying both induced-algebra
//! conditions: self-membership is outright provability (so a provable
//! sequent's set is everything, by weakening), and merging is symmetric.
//! The induced algebra then carries a valuation — the diamond of a formula
//! is the set of the formula's right-sequent, the box is the little-m of
//! its left-sequent — and that valuation is a semi-valuation, checked
//! rather than assumed.
//!
//! The pipeline refuses quantified universes: there the oracle cannot be
//! exact, and a budget-tainted algebra would prove nothing.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::semival::SemiValuation;
use super::universe::FormulaUniverse;
use super::ValuationError;
use crate::calculus::{OracleVerdict, ProvabilityOracle, Sequent};
use crate::cba::{Cba, DPair, RelationCba, RelationMap};
use crate::syntax::Formula;

pub const MAX_SEQUENTS: usize = 20;

/// A finite sequent set together with the oracle deciding cut-free
/// provability of merged sequents. Contains, for every universe formula
/// `A`, both `=> A` and `A =>`, plus the empty sequent and the split
/// halves of any extra sequents of interest.
pub struct SequentUniverse {
    pub universe: FormulaUniverse,
    sequents: Vec<Sequent>,
    oracle: Box<dyn ProvabilityOracle>,
}

impl std::fmt::Debug for SequentUniverse {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SequentUniverse")
            .field("universe", &self.universe.len())
            .field("sequents", &self.sequents)
            .finish()
    }
}

impl SequentUniverse {
    pub fn build(
        universe: FormulaUniverse,
        extra: &[Sequent],
        oracle: Box<dyn ProvabilityOracle>,
    ) -> Result<Self, ValuationError> {
        for f in universe.formulas() {
            if !f.is_quantifier_free() {
                return Err(ValuationError::QuantifiedUniverse(f.to_string()));
            }
        }
        let mut seen: BTreeSet<String> = BTreeSet::new();
        let mut sequents = Vec::new();
        let mut push = |s: Sequent, sequents: &mut Vec<Sequent>| {
            if seen.insert(s.canonical_string()) {
                sequents.push(s);
            }
        };
        push(Sequent::default(), &mut sequents);
        for f in universe.formulas() {
            push(Sequent::from_formulas([], [f.clone()]), &mut sequents);
            push(Sequent::from_formulas([f.clone()], []), &mut sequents);
        }
        for s in extra {
            for f in s.formulas() {
                if !universe.contains(f) {
                    return Err(ValuationError::MissingFormula(f.to_string()));
                }
            }
            push(s.clone(), &mut sequents);
            push(Sequent::new(s.ant.clone(), Default::default()), &mut sequents);
            push(Sequent::new(Default::default(), s.suc.clone()), &mut sequents);
        }
        if sequents.len() > MAX_SEQUENTS {
            return Err(ValuationError::SequentUniverseTooLarge(sequents.len()));
        }
        Ok(SequentUniverse {
            universe,
            sequents,
            oracle,
        })
    }

    pub fn sequents(&self) -> &[Sequent] {
        &self.sequents
    }

    pub fn index_of(&self, s: &Sequent) -> Option<usize> {
        self.sequents.iter().position(|x| x == s)
    }

    /// Ask the oracle; an undecided answer is an error, never a guess.
    pub fn decide(&self, s: &Sequent) -> Result<bool, ValuationError> {
        match self.oracle.decide(s) {
            OracleVerdict::Provable => Ok(true),
            OracleVerdict::Unprovable => Ok(false),
            OracleVerdict::Unknown => Err(ValuationError::OracleUndecided(s.to_string())),
        }
    }
}

/// The member set of `s`: all universe sequents whose merge with `s` is
/// cut-free provable, as a bitmask over the universe's sequent list.
pub fn maehara_m(su: &SequentUniverse, s: &Sequent) -> Result<u32, ValuationError> {
    let mut mask = 0u32;
    for (i, x) in su.sequents.iter().enumerate() {
        if su.decide(&x.merge(s))? {
            mask |= 1 << i;
        }
    }
    Ok(mask)
}

/// The relation map on the sequent universe, validated against both
/// induced-algebra conditions.
pub fn maehara_relation(su: &SequentUniverse) -> Result<RelationMap, ValuationError> {
    let labels: Vec<String> = su.sequents.iter().map(|s| s.to_string()).collect();
    let mut masks = Vec::with_capacity(su.sequents.len());
    for s in &su.sequents {
        masks.push(maehara_m(su, s)?);
    }
    RelationMap::from_masks(labels, masks)
        .map_err(|e| ValuationError::RelationBroken(e.to_string()))
}

#[derive(Debug, Clone)]
pub struct MaeharaValuation {
    pub relation: RelationMap,
    pub algebra: Arc<RelationCba>,
    pub semival: SemiValuation,
    pub sequents: Vec<Sequent>,
}

/// Build the induced algebra over the sequent universe and tabulate the
/// valuation: diamond of `A` is the member set of `=> A`, box of `A` is
/// the little-m of `A =>`. The result is returned as a semi-valuation so
/// its defining inequalities can be checked directly.
pub fn maehara_valuation(su: &SequentUniverse) -> Result<MaeharaValuation, ValuationError> {
    let relation = maehara_relation(su)?;
    let algebra = Arc::new(
        RelationCba::build(relation.clone())
            .map_err(|e| ValuationError::RelationBroken(e.to_string()))?,
    );

    let mut table: Vec<(Formula, DPair)> = Vec::new();
    for f in su.universe.formulas() {
        let right = Sequent::from_formulas([], [f.clone()]);
        let left = Sequent::from_formulas([f.clone()], []);
        let right_idx = su
            .index_of(&right)
            .expect("universe construction added => A");
        let left_idx = su.index_of(&left).expect("universe construction added A =>");
        let dia_mask = relation.member_mask(right_idx);
        let bx_mask = relation.little_m(left_idx);
        let dia = algebra
            .elem_of_mask(dia_mask)
            .ok_or_else(|| ValuationError::RelationBroken(format!("diamond of `{f}` not in carrier")))?;
        let bx = algebra
            .elem_of_mask(bx_mask)
            .ok_or_else(|| ValuationError::RelationBroken(format!("box of `{f}` not in carrier")))?;
        if !algebra.leq(bx, dia) {
            return Err(ValuationError::SemiValBroken(format!(
                "box of `{f}` is not below its diamond"
            )));
        }
        table.push((f.clone(), DPair { bx, dia }));
    }

    let alg_dyn: Arc<dyn Cba> = algebra.clone();
    let semival = SemiValuation::new(alg_dyn, su.universe.clone(), table)?;
    Ok(MaeharaValuation {
        relation,
        algebra,
        semival,
        sequents: su.sequents.clone(),
    })
}

/// The end-to-end shape of the second cut-elimination argument on one
/// sequent: membership of the antecedent's left-sequent in every box
/// value, the soundness inequality, the weakening inclusion into the
/// goal's member set, and the resulting cut-free provability. For a
/// sequent provable with cut, all steps must come out true.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndgameReport {
    pub sequent: String,
    /// `(Gamma =>)` lies in the box value of every antecedent formula.
    pub gamma_in_every_box: bool,
    /// inf of the boxes is below sup of the diamonds.
    pub inequality: bool,
    /// Every `M(=> B)` for succedent `B` is inside `M(=> Delta)`.
    pub union_below_goal: bool,
    /// `(Gamma =>)` is a member of `M(=> Delta)`.
    pub goal_membership: bool,
    /// Oracle verdict on the sequent itself.
    pub cut_free_provable: bool,
}

impl EndgameReport {
    /// The implication the argument establishes: if the membership and
    /// inequality steps hold, the sequent is cut-free provable.
    pub fn coherent(&self) -> bool {
        !(self.gamma_in_every_box && self.inequality && self.union_below_goal)
            || (self.goal_membership && self.cut_free_provable)
    }
}

pub fn ver2_endgame(
    su: &SequentUniverse,
    mv: &MaeharaValuation,
    seq: &Sequent,
) -> Result<EndgameReport, ValuationError> {
    let gamma_only = Sequent::new(seq.ant.clone(), Default::default());
    let delta_only = Sequent::new(Default::default(), seq.suc.clone());
    let gamma_idx = su
        .index_of(&gamma_only)
        .ok_or_else(|| ValuationError::MissingFormula(gamma_only.to_string()))?;
    let delta_idx = su
        .index_of(&delta_only)
        .ok_or_else(|| ValuationError::MissingFormula(delta_only.to_string()))?;

    let alg = mv.algebra.as_ref();
    let mut boxes = Vec::new();
    let mut dias = Vec::new();
    for a in seq.ant.iter() {
        boxes.push(
            mv.semival
                .value(a)
                .ok_or_else(|| ValuationError::MissingFormula(a.to_string()))?
                .bx,
        );
    }
    for b in seq.suc.iter() {
        dias.push(
            mv.semival
                .value(b)
                .ok_or_else(|| ValuationError::MissingFormula(b.to_string()))?
                .dia,
        );
    }

    let gamma_bit = 1u32 << gamma_idx;
    let gamma_in_every_box = boxes.iter().all(|&b| mv.algebra.mask(b) & gamma_bit != 0);
    let inf_boxes = alg.inf(&boxes);
    let sup_dias = alg.sup(&dias);
    let inequality = alg.leq(inf_boxes, sup_dias);
    let goal_mask = mv.relation.member_mask(delta_idx);
    let union_below_goal = dias
        .iter()
        .all(|&d| mv.algebra.mask(d) & !goal_mask == 0);
    let goal_membership = goal_mask & gamma_bit != 0;
    let cut_free_provable = su.decide(seq)?;

    Ok(EndgameReport {
        sequent: seq.to_string(),
        gamma_in_every_box,
        inequality,
        union_below_goal,
        goal_membership,
        cut_free_provable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::FnOracle;
    use crate::syntax::{parse_formula, Signature};
    use std::collections::BTreeMap;

    fn fm(s: &str) -> Formula {
        parse_formula(s, &Signature::default()).unwrap()
    }

    // truth-table oracle over propositional sequents: valid iff every
    // 0/1 assignment making all antecedents true makes some succedent true
    fn tt_oracle() -> Box<dyn ProvabilityOracle> {
        Box::new(FnOracle(|s: &Sequent| {
            let mut atoms: BTreeSet<String> = BTreeSet::new();
            for f in s.formulas() {
                for sv in f.free_vars1() {
                    atoms.insert(sv.name);
                }
            }
            let atoms: Vec<String> = atoms.into_iter().collect();
            let eval = |f: &Formula, m: &BTreeMap<String, bool>| -> bool {
                fn go(f: &Formula, m: &BTreeMap<String, bool>) -> bool {
                    match f {
                        Formula::Atom(h, _) => *m.get(h.name()).unwrap_or(&false),
                        Formula::Not(g) => !go(g, m),
                        Formula::Or(a, b) => go(a, m) || go(b, m),
                        Formula::And(a, b) => go(a, m) && go(b, m),
                        _ => unreachable!("propositional only"),
                    }
                }
                go(f, m)
            };
            for bits in 0..(1u32 << atoms.len()) {
                let m: BTreeMap<String, bool> = atoms
                    .iter()
                    .enumerate()
                    .map(|(i, a)| (a.clone(), bits & (1 << i) != 0))
                    .collect();
                let ant_ok = s.ant.iter().all(|f| eval(f, &m));
                let suc_ok = s.suc.iter().any(|f| eval(f, &m));
                if ant_ok && !suc_ok {
                    return OracleVerdict::Unprovable;
                }
            }
            OracleVerdict::Provable
        }))
    }

    fn universe(seeds: &[&str]) -> FormulaUniverse {
        let seeds: Vec<Formula> = seeds.iter().map(|s| fm(s)).collect();
        FormulaUniverse::build(&seeds, vec![], BTreeMap::new(), Default::default()).unwrap()
    }

    #[test]
    fn member_set_examples() {
        let su = SequentUniverse::build(universe(&["P"]), &[], tt_oracle()).unwrap();
        let right_p = Sequent::from_formulas([], [fm("P")]);
        let left_p = Sequent::from_formulas([fm("P")], []);
        let m = maehara_m(&su, &right_p).unwrap();
        // (P =>) merges to P => P: provable
        assert!(m & (1 << su.index_of(&left_p).unwrap()) != 0);
        // (=> P) merges to => P: not provable
        assert!(m & (1 << su.index_of(&right_p).unwrap()) == 0);
        // self-membership iff provable
        for s in su.sequents() {
            let mask = maehara_m(&su, s).unwrap();
            let self_in = mask & (1 << su.index_of(s).unwrap()) != 0;
            assert_eq!(self_in, su.decide(s).unwrap());
        }
    }

    #[test]
    fn zero_is_member_set_of_empty_sequent() {
        let su = SequentUniverse::build(universe(&["P", "~P"]), &[], tt_oracle()).unwrap();
        let mv = maehara_valuation(&su).unwrap();
        let empty_idx = su.index_of(&Sequent::default()).unwrap();
        assert_eq!(
            mv.algebra.mask(mv.algebra.zero()),
            mv.relation.member_mask(empty_idx)
        );
    }

    #[test]
    fn valuation_is_semi_valuation() {
        let su = SequentUniverse::build(universe(&["P | ~P", "P & ~P"]), &[], tt_oracle()).unwrap();
        let mv = maehara_valuation(&su).unwrap();
        let report = mv.semival.check();
        assert!(report.ok(), "{report}");
    }

    #[test]
    fn quantified_universe_refused() {
        let u = FormulaUniverse::build(
            &[parse_formula("EX x. R(x)", &Signature::default()).unwrap()],
            vec![],
            BTreeMap::new(),
            Default::default(),
        )
        .unwrap();
        let err = SequentUniverse::build(u, &[], tt_oracle()).unwrap_err();
        assert!(matches!(err, ValuationError::QuantifiedUniverse(_)));
    }

    #[test]
    fn endgame_on_provable_sequent() {
        let target = Sequent::parse("P => P | Q", &Signature::default()).unwrap();
        let su = SequentUniverse::build(
            universe(&["P", "Q", "P | Q"]),
            std::slice::from_ref(&target),
            tt_oracle(),
        )
        .unwrap();
        let mv = maehara_valuation(&su).unwrap();
        let report = ver2_endgame(&su, &mv, &target).unwrap();
        assert!(report.gamma_in_every_box);
        assert!(report.inequality);
        assert!(report.union_below_goal);
        assert!(report.goal_membership);
        assert!(report.cut_free_provable);
        assert!(report.coherent());
    }
}
