//! The proof checker. A node is accepted iff re-applying its rule schema
//! to its conclusion, with the stored instantiation data, reproduces its
//! premises as alpha-sets. Premises retain the major formula, e.g. the
//! left existential premise is `F(a), EX x F(x), Gamma => Delta`, and the
//! conclusion's cedents are never shrunk.

use super::classify::classify_abstract;
use super::proof::{
    CheckError, CheckErrorKind, CheckOptions, Fragment, Instantiation, ProofTree, RuleTag,
};
use super::sequent::Sequent;
use crate::syntax::{subst_second, Abstract, Formula, SecVar, Term0};

pub fn check_proof(p: &ProofTree, opts: &CheckOptions) -> Result<(), CheckError> {
    let mut path = Vec::new();
    check_node(p, opts, &mut path)
}

fn fail(path: &[usize], kind: CheckErrorKind) -> CheckError {
    CheckError {
        path: path.to_vec(),
        kind,
    }
}

fn check_node(node: &ProofTree, opts: &CheckOptions, path: &mut Vec<usize>) -> Result<(), CheckError> {
    let expected = synth_premises(node, opts).map_err(|kind| fail(path, kind))?;
    if expected.len() != node.premises.len() {
        return Err(fail(
            path,
            CheckErrorKind::WrongPremise(format!(
                "rule {} takes {} premise(s), found {}",
                node.rule,
                expected.len(),
                node.premises.len()
            )),
        ));
    }
    for (i, (want, got)) in expected.iter().zip(&node.premises).enumerate() {
        if *want != got.conclusion {
            return Err(fail(
                path,
                CheckErrorKind::WrongPremise(format!(
                    "premise {i} of {} should be `{}`, found `{}`",
                    node.rule, want, got.conclusion
                )),
            ));
        }
    }
    for (i, premise) in node.premises.iter().enumerate() {
        path.push(i);
        check_node(premise, opts, path)?;
        path.pop();
    }
    Ok(())
}

/// Apply the rule schema of `node` to its conclusion and return the
/// premises it demands.
pub fn synth_premises(node: &ProofTree, opts: &CheckOptions) -> Result<Vec<Sequent>, CheckErrorKind> {
    use RuleTag::*;
    let concl = &node.conclusion;
    let bad_inst =
        || CheckErrorKind::WrongPremise(format!("instantiation data does not fit rule {}", node.rule));
    match node.rule {
        Initial => {
            let Instantiation::Initial { atom } = &node.inst else {
                return Err(bad_inst());
            };
            if !atom.is_atomic() || !concl.ant.contains(atom) || !concl.suc.contains(atom) {
                return Err(CheckErrorKind::NotAtomicAxiom);
            }
            Ok(vec![])
        }
        LNot | RNot => {
            let Instantiation::Major { major } = &node.inst else {
                return Err(bad_inst());
            };
            let Formula::Not(minor) = major else {
                return Err(CheckErrorKind::WrongPremise(
                    "major formula of a negation rule must be a negation".into(),
                ));
            };
            if node.rule == LNot {
                require_in(concl, major, true)?;
                Ok(vec![Sequent::new(
                    concl.ant.clone(),
                    concl.suc.with((**minor).clone()),
                )])
            } else {
                require_in(concl, major, false)?;
                Ok(vec![Sequent::new(
                    concl.ant.with((**minor).clone()),
                    concl.suc.clone(),
                )])
            }
        }
        LOr => {
            let Instantiation::Major { major } = &node.inst else {
                return Err(bad_inst());
            };
            let Formula::Or(f0, f1) = major else {
                return Err(CheckErrorKind::WrongPremise(
                    "major formula of LOr must be a disjunction".into(),
                ));
            };
            require_in(concl, major, true)?;
            Ok(vec![
                Sequent::new(concl.ant.with((**f0).clone()), concl.suc.clone()),
                Sequent::new(concl.ant.with((**f1).clone()), concl.suc.clone()),
            ])
        }
        RAnd => {
            let Instantiation::Major { major } = &node.inst else {
                return Err(bad_inst());
            };
            let Formula::And(f0, f1) = major else {
                return Err(CheckErrorKind::WrongPremise(
                    "major formula of RAnd must be a conjunction".into(),
                ));
            };
            require_in(concl, major, false)?;
            Ok(vec![
                Sequent::new(concl.ant.clone(), concl.suc.with((**f0).clone())),
                Sequent::new(concl.ant.clone(), concl.suc.with((**f1).clone())),
            ])
        }
        ROr | LAnd => {
            let Instantiation::Indexed { major, index } = &node.inst else {
                return Err(bad_inst());
            };
            if *index > 1 {
                return Err(CheckErrorKind::WrongPremise(format!(
                    "disjunct/conjunct index must be 0 or 1, found {index}"
                )));
            }
            let (f0, f1, left) = match (node.rule, major) {
                (ROr, Formula::Or(a, b)) => (a, b, false),
                (LAnd, Formula::And(a, b)) => (a, b, true),
                _ => {
                    return Err(CheckErrorKind::WrongPremise(
                        "major formula does not match the rule's connective".into(),
                    ))
                }
            };
            require_in(concl, major, left)?;
            let minor = if *index == 0 { (**f0).clone() } else { (**f1).clone() };
            Ok(vec![add_minor(concl, minor, left)])
        }
        REx0 | LAll0 => {
            let Instantiation::TermWitness { major, witness } = &node.inst else {
                return Err(bad_inst());
            };
            let (x, body, left) = match (node.rule, major) {
                (REx0, Formula::Exists0(x, f)) => (x, f, false),
                (LAll0, Formula::Forall0(x, f)) => (x, f, true),
                _ => {
                    return Err(CheckErrorKind::WrongPremise(
                        "major formula does not match the rule's quantifier".into(),
                    ))
                }
            };
            require_in(concl, major, left)?;
            let minor = crate::syntax::subst_first(body, x, witness);
            Ok(vec![add_minor(concl, minor, left)])
        }
        LEx0 | RAll0 => {
            let Instantiation::FirstEigen { major, eigen } = &node.inst else {
                return Err(bad_inst());
            };
            let (x, body, left) = match (node.rule, major) {
                (LEx0, Formula::Exists0(x, f)) => (x, f, true),
                (RAll0, Formula::Forall0(x, f)) => (x, f, false),
                _ => {
                    return Err(CheckErrorKind::WrongPremise(
                        "major formula does not match the rule's quantifier".into(),
                    ))
                }
            };
            require_in(concl, major, left)?;
            if concl.free_vars0().contains(eigen) {
                return Err(CheckErrorKind::EigenvariableOccursBelow(eigen.clone()));
            }
            let minor = crate::syntax::subst_first(body, x, &Term0::Var(eigen.clone()));
            Ok(vec![add_minor(concl, minor, left)])
        }
        REx1 | LAll1 => {
            let Instantiation::AbstractWitness { major, witness } = &node.inst else {
                return Err(bad_inst());
            };
            let (sv, body, left) = match (node.rule, major) {
                (REx1, Formula::Exists1(sv, f)) => (sv, f, false),
                (LAll1, Formula::Forall1(sv, f)) => (sv, f, true),
                _ => {
                    return Err(CheckErrorKind::WrongPremise(
                        "major formula does not match the rule's quantifier".into(),
                    ))
                }
            };
            require_in(concl, major, left)?;
            if sv.arity != witness.arity() {
                return Err(CheckErrorKind::ArityMismatch(format!(
                    "quantifier binds `{}` of arity {}, witness abstract has arity {}",
                    sv.name,
                    sv.arity,
                    witness.arity()
                )));
            }
            if !fragment_allows(opts.fragment, witness) {
                return Err(CheckErrorKind::WitnessOutsideFragment);
            }
            let minor = second_minor(body, sv, witness)?;
            Ok(vec![add_minor(concl, minor, left)])
        }
        LEx1 | RAll1 => {
            let Instantiation::SecondEigen { major, eigen } = &node.inst else {
                return Err(bad_inst());
            };
            let (sv, body, left) = match (node.rule, major) {
                (LEx1, Formula::Exists1(sv, f)) => (sv, f, true),
                (RAll1, Formula::Forall1(sv, f)) => (sv, f, false),
                _ => {
                    return Err(CheckErrorKind::WrongPremise(
                        "major formula does not match the rule's quantifier".into(),
                    ))
                }
            };
            if opts.fragment == Fragment::FirstOrder {
                return Err(CheckErrorKind::WitnessOutsideFragment);
            }
            require_in(concl, major, left)?;
            if sv.arity != eigen.arity {
                return Err(CheckErrorKind::ArityMismatch(format!(
                    "quantifier binds `{}` of arity {}, eigenvariable `{}` has arity {}",
                    sv.name, sv.arity, eigen.name, eigen.arity
                )));
            }
            if concl.free_vars1().iter().any(|v| v.name == eigen.name) {
                return Err(CheckErrorKind::EigenvariableOccursBelow(eigen.name.clone()));
            }
            let minor = second_minor(body, sv, &Abstract::eta(eigen))?;
            Ok(vec![add_minor(concl, minor, left)])
        }
        Cut => {
            if !opts.allow_cut {
                return Err(CheckErrorKind::CutForbidden);
            }
            let Instantiation::CutSplit {
                cut_formula,
                left,
                right,
            } = &node.inst
            else {
                return Err(bad_inst());
            };
            let reassembled = left.merge(right);
            if reassembled != *concl {
                return Err(CheckErrorKind::WrongPremise(format!(
                    "cut split reassembles to `{reassembled}`, conclusion is `{concl}`"
                )));
            }
            Ok(vec![
                Sequent::new(left.ant.clone(), left.suc.with(cut_formula.clone())),
                Sequent::new(right.ant.with(cut_formula.clone()), right.suc.clone()),
            ])
        }
    }
}

fn require_in(concl: &Sequent, major: &Formula, left: bool) -> Result<(), CheckErrorKind> {
    let present = if left {
        concl.ant.contains(major)
    } else {
        concl.suc.contains(major)
    };
    if present {
        Ok(())
    } else {
        Err(CheckErrorKind::WrongPremise(format!(
            "major formula `{major}` is not in the {}",
            if left { "antecedent" } else { "succedent" }
        )))
    }
}

fn add_minor(concl: &Sequent, minor: Formula, left: bool) -> Sequent {
    if left {
        Sequent::new(concl.ant.with(minor), concl.suc.clone())
    } else {
        Sequent::new(concl.ant.clone(), concl.suc.with(minor))
    }
}

fn second_minor(body: &Formula, sv: &SecVar, witness: &Abstract) -> Result<Formula, CheckErrorKind> {
    subst_second(body, sv, witness).map_err(|e| CheckErrorKind::ArityMismatch(e.to_string()))
}

/// Is a witness abstract admissible in the given fragment? The first-order
/// fragment admits none (the rule itself is outside the fragment).
pub fn fragment_allows(fragment: Fragment, witness: &Abstract) -> bool {
    match fragment {
        Fragment::Full => true,
        Fragment::Pi1(n) => classify_abstract(witness, n),
        Fragment::Bc => witness.is_eta_atom(),
        Fragment::FirstOrder => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_abstract, parse_formula, Signature};

    fn sig() -> Signature {
        let mut s = Signature::default();
        s.consts.insert("c".into());
        s
    }
    fn fm(s: &str) -> Formula {
        parse_formula(s, &sig()).unwrap()
    }
    fn sq(s: &str) -> Sequent {
        Sequent::parse(s, &sig()).unwrap()
    }

    #[test]
    fn initial_node_accepts_atomic_axiom() {
        let p = ProofTree::initial(sq("X(c) => X(c)"), fm("X(c)"));
        assert!(check_proof(&p, &CheckOptions::default()).is_ok());
    }

    #[test]
    fn initial_node_rejects_compound_axiom() {
        let p = ProofTree::initial(sq("P & Q => P & Q"), fm("P & Q"));
        let err = check_proof(&p, &CheckOptions::default()).unwrap_err();
        assert_eq!(err.kind, CheckErrorKind::NotAtomicAxiom);
    }

    #[test]
    fn eigenvariable_must_be_fresh() {
        // RAll0 with eigenvariable `a` free in the conclusion
        let major = fm("ALL x. R(x)");
        let concl = Sequent::from_formulas([fm("R(a)")], [major.clone()]);
        let premise = Sequent::from_formulas([fm("R(a)")], [major.clone(), fm("R(a)")]);
        let p = ProofTree {
            conclusion: concl,
            rule: RuleTag::RAll0,
            inst: Instantiation::FirstEigen {
                major,
                eigen: "a".into(),
            },
            premises: vec![ProofTree::initial(premise, fm("R(a)"))],
        };
        let err = check_proof(&p, &CheckOptions::default()).unwrap_err();
        assert_eq!(
            err.kind,
            CheckErrorKind::EigenvariableOccursBelow("a".into())
        );
    }

    #[test]
    fn three_rule_second_order_proof() {
        // ALL X:1. (~X(c) | X(c)) via RAll1 (eigen Y), ROr twice, RNot, Initial
        let target = fm("ALL X:1. (~X(c) | X(c))");
        let s0 = Sequent::from_formulas([], [target.clone()]);
        let minor = fm("~Y(c) | Y(c)");
        let s1 = s0.clone().suc_plus(&minor);
        let s2 = s1.clone().suc_plus(&fm("~Y(c)"));
        let s3 = s2.clone().suc_plus(&fm("Y(c)"));
        let s4 = Sequent::new(s3.ant.with(fm("Y(c)")), s3.suc.clone());

        let p = ProofTree {
            conclusion: s0,
            rule: RuleTag::RAll1,
            inst: Instantiation::SecondEigen {
                major: target,
                eigen: SecVar::new("Y", 1),
            },
            premises: vec![ProofTree {
                conclusion: s1,
                rule: RuleTag::ROr,
                inst: Instantiation::Indexed {
                    major: minor.clone(),
                    index: 0,
                },
                premises: vec![ProofTree {
                    conclusion: s2,
                    rule: RuleTag::ROr,
                    inst: Instantiation::Indexed {
                        major: minor.clone(),
                        index: 1,
                    },
                    premises: vec![ProofTree {
                        conclusion: s3.clone(),
                        rule: RuleTag::RNot,
                        inst: Instantiation::Major {
                            major: fm("~Y(c)"),
                        },
                        premises: vec![ProofTree::initial(s4, fm("Y(c)"))],
                    }],
                }],
            }],
        };
        assert!(check_proof(&p, &CheckOptions::default()).is_ok());
        // the same proof is rejected in the first-order fragment
        let opts = CheckOptions {
            allow_cut: false,
            fragment: Fragment::FirstOrder,
        };
        assert_eq!(
            check_proof(&p, &opts).unwrap_err().kind,
            CheckErrorKind::WitnessOutsideFragment
        );
    }

    #[test]
    fn bc_fragment_restricts_witnesses() {
        let t_eta = parse_abstract("\\x. Z(x)", &sig()).unwrap();
        let t_compound = parse_abstract("\\x. ~Z(x)", &sig()).unwrap();
        assert!(fragment_allows(Fragment::Bc, &t_eta));
        assert!(!fragment_allows(Fragment::Bc, &t_compound));
        assert!(fragment_allows(Fragment::Full, &t_compound));
    }

    impl Sequent {
        fn suc_plus(&self, f: &Formula) -> Sequent {
            Sequent::new(self.ant.clone(), self.suc.with(f.clone()))
        }
    }
}
