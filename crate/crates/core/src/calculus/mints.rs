//! Reducible inferences, the pure variable condition, and the combined
//! normal-form test. Reducibility consults a provability oracle and is
//! three-valued, since the oracle may be budget-bounded.

use std::collections::{BTreeMap, BTreeSet};

use super::proof::{Instantiation, ProofTree, RuleTag};
use super::sequent::Sequent;
use crate::syntax::{subst_first, subst_second, Abstract, Formula, Term0};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleVerdict {
    Provable,
    Unprovable,
    Unknown,
}

/// A cut-free provability oracle. Implementations must be pure functions
/// of the sequent and must never answer `Provable` or `Unprovable`
/// unsoundly; `Unknown` is always allowed.
pub trait ProvabilityOracle {
    fn decide(&self, s: &Sequent) -> OracleVerdict;
}

/// Wrap a closure as an oracle.
pub struct FnOracle<F: Fn(&Sequent) -> OracleVerdict>(pub F);

impl<F: Fn(&Sequent) -> OracleVerdict> ProvabilityOracle for FnOracle<F> {
    fn decide(&self, s: &Sequent) -> OracleVerdict {
        (self.0)(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trivalent {
    True,
    False,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Ant,
    Suc,
}

/// The minor formulas of a node together with the premise side they occupy.
/// Initial and cut nodes have none.
pub fn minor_formulas(node: &ProofTree) -> Vec<(Formula, Side)> {
    use RuleTag::*;
    match (&node.rule, &node.inst) {
        (Initial, _) | (Cut, _) => vec![],
        (LNot, Instantiation::Major { major }) => match major {
            Formula::Not(f) => vec![((**f).clone(), Side::Suc)],
            _ => vec![],
        },
        (RNot, Instantiation::Major { major }) => match major {
            Formula::Not(f) => vec![((**f).clone(), Side::Ant)],
            _ => vec![],
        },
        (LOr, Instantiation::Major { major }) => match major {
            Formula::Or(f0, f1) => vec![((**f0).clone(), Side::Ant), ((**f1).clone(), Side::Ant)],
            _ => vec![],
        },
        (RAnd, Instantiation::Major { major }) => match major {
            Formula::And(f0, f1) => vec![((**f0).clone(), Side::Suc), ((**f1).clone(), Side::Suc)],
            _ => vec![],
        },
        (ROr, Instantiation::Indexed { major, index }) => match major {
            Formula::Or(f0, f1) => {
                let f = if *index == 0 { f0 } else { f1 };
                vec![((**f).clone(), Side::Suc)]
            }
            _ => vec![],
        },
        (LAnd, Instantiation::Indexed { major, index }) => match major {
            Formula::And(f0, f1) => {
                let f = if *index == 0 { f0 } else { f1 };
                vec![((**f).clone(), Side::Ant)]
            }
            _ => vec![],
        },
        (REx0, Instantiation::TermWitness { major, witness }) => match major {
            Formula::Exists0(x, f) => vec![(subst_first(f, x, witness), Side::Suc)],
            _ => vec![],
        },
        (LAll0, Instantiation::TermWitness { major, witness }) => match major {
            Formula::Forall0(x, f) => vec![(subst_first(f, x, witness), Side::Ant)],
            _ => vec![],
        },
        (LEx0, Instantiation::FirstEigen { major, eigen }) => match major {
            Formula::Exists0(x, f) => {
                vec![(subst_first(f, x, &Term0::Var(eigen.clone())), Side::Ant)]
            }
            _ => vec![],
        },
        (RAll0, Instantiation::FirstEigen { major, eigen }) => match major {
            Formula::Forall0(x, f) => {
                vec![(subst_first(f, x, &Term0::Var(eigen.clone())), Side::Suc)]
            }
            _ => vec![],
        },
        (REx1, Instantiation::AbstractWitness { major, witness }) => match major {
            Formula::Exists1(sv, f) => second_minor(f, sv, witness, Side::Suc),
            _ => vec![],
        },
        (LAll1, Instantiation::AbstractWitness { major, witness }) => match major {
            Formula::Forall1(sv, f) => second_minor(f, sv, witness, Side::Ant),
            _ => vec![],
        },
        (LEx1, Instantiation::SecondEigen { major, eigen }) => match major {
            Formula::Exists1(sv, f) => second_minor(f, sv, &Abstract::eta(eigen), Side::Ant),
            _ => vec![],
        },
        (RAll1, Instantiation::SecondEigen { major, eigen }) => match major {
            Formula::Forall1(sv, f) => second_minor(f, sv, &Abstract::eta(eigen), Side::Suc),
            _ => vec![],
        },
        _ => vec![],
    }
}

fn second_minor(f: &Formula, sv: &crate::syntax::SecVar, t: &Abstract, side: Side) -> Vec<(Formula, Side)> {
    match subst_second(f, sv, t) {
        Ok(minor) => vec![(minor, side)],
        Err(_) => vec![],
    }
}

/// Is the inference at this node reducible: does it have a minor formula
/// that is provable outright (antecedent side) or refutable outright
/// (succedent side)?
pub fn is_reducible(node: &ProofTree, oracle: &dyn ProvabilityOracle) -> Trivalent {
    let minors = minor_formulas(node);
    let mut saw_unknown = false;
    for (a, side) in minors {
        let query = match side {
            Side::Ant => Sequent::from_formulas([], [a]),
            Side::Suc => Sequent::from_formulas([a], []),
        };
        match oracle.decide(&query) {
            OracleVerdict::Provable => return Trivalent::True,
            OracleVerdict::Unknown => saw_unknown = true,
            OracleVerdict::Unprovable => {}
        }
    }
    if saw_unknown {
        Trivalent::Unknown
    } else {
        Trivalent::False
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum NameKind {
    First,
    Second,
}

/// The pure variable condition: every free variable that occurs somewhere
/// other than the end-sequent is the eigenvariable of some inference and
/// occurs only above that inference. Free variables of the end-sequent are
/// exempt (they occur below every inference by persistence).
pub fn pure_variable(p: &ProofTree) -> bool {
    let mut end_free: BTreeSet<(NameKind, String)> = BTreeSet::new();
    for v in p.conclusion.free_vars0() {
        end_free.insert((NameKind::First, v));
    }
    for sv in p.conclusion.free_vars1() {
        end_free.insert((NameKind::Second, sv.name));
    }

    // occurrences: variable -> paths of nodes whose conclusion mentions it
    let mut occurrences: BTreeMap<(NameKind, String), Vec<Vec<usize>>> = BTreeMap::new();
    let mut eigens: BTreeMap<(NameKind, String), Vec<Vec<usize>>> = BTreeMap::new();
    p.walk(&mut |node, path| {
        for v in node.conclusion.free_vars0() {
            let key = (NameKind::First, v);
            if !end_free.contains(&key) {
                occurrences.entry(key).or_default().push(path.to_vec());
            }
        }
        for sv in node.conclusion.free_vars1() {
            let key = (NameKind::Second, sv.name);
            if !end_free.contains(&key) {
                occurrences.entry(key).or_default().push(path.to_vec());
            }
        }
        match &node.inst {
            Instantiation::FirstEigen { eigen, .. } => {
                eigens
                    .entry((NameKind::First, eigen.clone()))
                    .or_default()
                    .push(path.to_vec());
            }
            Instantiation::SecondEigen { eigen, .. } => {
                eigens
                    .entry((NameKind::Second, eigen.name.clone()))
                    .or_default()
                    .push(path.to_vec());
            }
            _ => {}
        }
    });

    for (key, occ) in &occurrences {
        let Some(intro) = eigens.get(key) else {
            return false;
        };
        // some inference with this eigenvariable must dominate every
        // occurrence strictly (occurrences live in its premise subtrees)
        let dominated = intro.iter().any(|j| {
            occ.iter()
                .all(|path| path.len() > j.len() && path[..j.len()] == j[..])
        });
        if !dominated {
            return false;
        }
    }
    true
}

/// Cut-free, pure-variable, and no reducible inference. `Unknown`
/// propagates from reducibility checks that the oracle could not settle.
pub fn is_mints_normal(p: &ProofTree, oracle: &dyn ProvabilityOracle) -> Trivalent {
    if p.contains_cut() {
        return Trivalent::False;
    }
    if !pure_variable(p) {
        return Trivalent::False;
    }
    let mut saw_unknown = false;
    let mut reducible = false;
    p.walk(&mut |node, _| {
        if matches!(node.rule, RuleTag::Initial | RuleTag::Cut) {
            return;
        }
        match is_reducible(node, oracle) {
            Trivalent::True => reducible = true,
            Trivalent::Unknown => saw_unknown = true,
            Trivalent::False => {}
        }
    });
    if reducible {
        Trivalent::False
    } else if saw_unknown {
        Trivalent::Unknown
    } else {
        Trivalent::True
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{check_proof, CheckOptions};
    use crate::syntax::{parse_formula, Signature};

    fn fm(s: &str) -> Formula {
        parse_formula(s, &Signature::default()).unwrap()
    }

    fn always_unknown() -> FnOracle<impl Fn(&Sequent) -> OracleVerdict> {
        FnOracle(|_: &Sequent| OracleVerdict::Unknown)
    }

    #[test]
    fn initial_proof_is_normal() {
        let p = ProofTree::initial(
            Sequent::parse("P => P", &Signature::default()).unwrap(),
            fm("P"),
        );
        assert!(pure_variable(&p));
        assert_eq!(is_mints_normal(&p, &always_unknown()), Trivalent::True);
    }

    #[test]
    fn unknown_oracle_propagates() {
        // RNot node: one minor, oracle unknown
        let concl = Sequent::parse("P => ~~P", &Signature::default()).unwrap();
        let s1 = Sequent::parse("P, ~P => ~~P", &Signature::default()).unwrap();
        let s2 = Sequent::parse("P, ~P => ~~P, P", &Signature::default()).unwrap();
        let p = ProofTree {
            conclusion: concl,
            rule: RuleTag::RNot,
            inst: Instantiation::Major { major: fm("~~P") },
            premises: vec![ProofTree {
                conclusion: s1,
                rule: RuleTag::LNot,
                inst: Instantiation::Major { major: fm("~P") },
                premises: vec![ProofTree::initial(s2, fm("P"))],
            }],
        };
        assert!(check_proof(&p, &CheckOptions::default()).is_ok());
        assert_eq!(is_reducible(&p, &always_unknown()), Trivalent::Unknown);
        assert_eq!(is_mints_normal(&p, &always_unknown()), Trivalent::Unknown);
    }

    #[test]
    fn cut_is_never_normal() {
        let left = Sequent::parse("=> P", &Signature::default()).unwrap();
        let right = Sequent::parse("P =>", &Signature::default()).unwrap();
        let p = ProofTree {
            conclusion: Sequent::parse("=>", &Signature::default()).unwrap(),
            rule: RuleTag::Cut,
            inst: Instantiation::CutSplit {
                cut_formula: fm("P"),
                left: Sequent::parse("=>", &Signature::default()).unwrap(),
                right: Sequent::parse("=>", &Signature::default()).unwrap(),
            },
            premises: vec![
                ProofTree::initial(left, fm("P")),
                ProofTree::initial(right, fm("P")),
            ],
        };
        assert_eq!(is_mints_normal(&p, &always_unknown()), Trivalent::False);
    }
}
