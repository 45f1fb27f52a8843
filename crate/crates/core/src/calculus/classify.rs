//! Polarity-based sequent classification, the quantifier-block shape test
//! for witness abstracts, second-order quantifier erasure, and the
//! Herbrand normal form of first-order sequents.

use std::collections::BTreeSet;

use super::sequent::Sequent;
use crate::syntax::{
    fresh_name, subst_first, Abstract, Formula, Signature, Term0,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("sequent is not in the positive-universal second-order class")]
    NotPi1,
    #[error("sequent is not first-order")]
    NotFirstOrder,
    #[error("cannot take a normal form of the empty sequent")]
    EmptySequent,
}

/// Polarity flags of a sequent. `is_first_order` means no second-order
/// quantifier occurs (free second-order variables are fine);
/// `is_sigma01` additionally requires first-order existentials only in
/// positive and universals only in negative positions; `is_pi01` is the
/// dual; `is_pi1` constrains the second-order quantifiers the same way
/// with universals positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SequentClass {
    pub is_first_order: bool,
    pub is_sigma01: bool,
    pub is_pi01: bool,
    pub is_pi1: bool,
}

#[derive(Default)]
struct Polarity {
    ex0_pos: bool,
    ex0_neg: bool,
    all0_pos: bool,
    all0_neg: bool,
    ex1_pos: bool,
    ex1_neg: bool,
    all1_pos: bool,
    all1_neg: bool,
}

fn scan(f: &Formula, positive: bool, acc: &mut Polarity) {
    match f {
        Formula::Atom(_, _) => {}
        Formula::Not(g) => scan(g, !positive, acc),
        Formula::Or(a, b) | Formula::And(a, b) => {
            scan(a, positive, acc);
            scan(b, positive, acc);
        }
        Formula::Exists0(_, g) => {
            if positive {
                acc.ex0_pos = true;
            } else {
                acc.ex0_neg = true;
            }
            scan(g, positive, acc);
        }
        Formula::Forall0(_, g) => {
            if positive {
                acc.all0_pos = true;
            } else {
                acc.all0_neg = true;
            }
            scan(g, positive, acc);
        }
        Formula::Exists1(_, g) => {
            if positive {
                acc.ex1_pos = true;
            } else {
                acc.ex1_neg = true;
            }
            scan(g, positive, acc);
        }
        Formula::Forall1(_, g) => {
            if positive {
                acc.all1_pos = true;
            } else {
                acc.all1_neg = true;
            }
            scan(g, positive, acc);
        }
    }
}

pub fn classify_sequent(s: &Sequent) -> SequentClass {
    let mut acc = Polarity::default();
    // antecedent formulas sit in negative position, succedent in positive
    for f in s.ant.iter() {
        scan(f, false, &mut acc);
    }
    for f in s.suc.iter() {
        scan(f, true, &mut acc);
    }
    let second_order_free = !(acc.ex1_pos || acc.ex1_neg || acc.all1_pos || acc.all1_neg);
    SequentClass {
        is_first_order: second_order_free,
        is_sigma01: second_order_free && !acc.ex0_neg && !acc.all0_pos,
        is_pi01: second_order_free && !acc.ex0_pos && !acc.all0_neg,
        is_pi1: !acc.all1_neg && !acc.ex1_pos,
    }
}

/// Is the abstract's body of the shape "at most `n` alternating
/// second-order quantifier blocks starting with a universal block, over a
/// first-order matrix"? Formulas with fewer blocks qualify by vacuous
/// padding, so a first-order body is in every class with `n >= 1`.
pub fn classify_abstract(t: &Abstract, n: usize) -> bool {
    if n == 0 {
        return false;
    }
    let mut rest = &t.body;
    let mut blocks: Vec<bool> = Vec::new(); // true = universal block
    loop {
        let is_forall = match rest {
            Formula::Forall1(_, g) => {
                rest = g;
                true
            }
            Formula::Exists1(_, g) => {
                rest = g;
                false
            }
            _ => break,
        };
        match blocks.last() {
            Some(&last) if last == is_forall => {}
            _ => blocks.push(is_forall),
        }
    }
    if !rest.is_second_order_quantifier_free() {
        return false;
    }
    match blocks.first() {
        None => true,
        Some(true) => blocks.len() <= n,
        Some(false) => blocks.len() + 1 <= n,
    }
}

/// Delete every second-order quantifier, keeping the bodies; the bound
/// variables become free. Binders are renamed apart first so distinct
/// bound variables stay distinct after erasure.
pub fn erase_second_order(s: &Sequent) -> Result<Sequent, ClassifyError> {
    if !classify_sequent(s).is_pi1 {
        return Err(ClassifyError::NotPi1);
    }
    let mut used: BTreeSet<String> = s.free_vars1().into_iter().map(|sv| sv.name).collect();
    let mut ant = Vec::new();
    for f in s.ant.iter() {
        ant.push(erase(&rename_apart1(f, &mut used)));
    }
    let mut suc = Vec::new();
    for f in s.suc.iter() {
        suc.push(erase(&rename_apart1(f, &mut used)));
    }
    Ok(Sequent::from_formulas(ant, suc))
}

fn rename_apart1(f: &Formula, used: &mut BTreeSet<String>) -> Formula {
    match f {
        Formula::Atom(_, _) => f.clone(),
        Formula::Not(g) => Formula::not(rename_apart1(g, used)),
        Formula::Or(a, b) => Formula::or(rename_apart1(a, used), rename_apart1(b, used)),
        Formula::And(a, b) => Formula::and(rename_apart1(a, used), rename_apart1(b, used)),
        Formula::Exists0(x, g) => Formula::Exists0(x.clone(), Box::new(rename_apart1(g, used))),
        Formula::Forall0(x, g) => Formula::Forall0(x.clone(), Box::new(rename_apart1(g, used))),
        Formula::Exists1(sv, g) | Formula::Forall1(sv, g) => {
            let (sv, g) = if used.contains(&sv.name) {
                let fresh = fresh_name(&sv.name, |cand| used.contains(cand));
                let nsv = crate::syntax::SecVar::new(fresh, sv.arity);
                let g = crate::syntax::rename_secvar(g, &sv.name, &nsv.name);
                (nsv, g)
            } else {
                (sv.clone(), (**g).clone())
            };
            used.insert(sv.name.clone());
            let body = Box::new(rename_apart1(&g, used));
            match f {
                Formula::Exists1(_, _) => Formula::Exists1(sv, body),
                _ => Formula::Forall1(sv, body),
            }
        }
    }
}

fn erase(f: &Formula) -> Formula {
    match f {
        Formula::Atom(_, _) => f.clone(),
        Formula::Not(g) => Formula::not(erase(g)),
        Formula::Or(a, b) => Formula::or(erase(a), erase(b)),
        Formula::And(a, b) => Formula::and(erase(a), erase(b)),
        Formula::Exists0(x, g) => Formula::Exists0(x.clone(), Box::new(erase(g))),
        Formula::Forall0(x, g) => Formula::Forall0(x.clone(), Box::new(erase(g))),
        Formula::Exists1(_, g) | Formula::Forall1(_, g) => erase(g),
    }
}

/// Herbrand normal form of a first-order sequent: form the implication
/// "conjunction of the antecedent implies disjunction of the succedent",
/// push negations to the atoms, then replace each universally-behaving
/// quantifier by a fresh function symbol applied to the existential
/// variables governing it. The result is a single-succedent sequent whose
/// formula has existential quantifiers only in positive position, plus the
/// extended signature.
pub fn herbrand_nf(s: &Sequent, sig: &Signature) -> Result<(Sequent, Signature), ClassifyError> {
    let cls = classify_sequent(s);
    if !cls.is_first_order {
        return Err(ClassifyError::NotFirstOrder);
    }
    if s.is_empty() {
        return Err(ClassifyError::EmptySequent);
    }
    let fold = |side: Vec<Formula>, and: bool| -> Option<Formula> {
        side.into_iter().reduce(|acc, f| {
            if and {
                Formula::and(acc, f)
            } else {
                Formula::or(acc, f)
            }
        })
    };
    let gamma = fold(s.ant.iter().cloned().collect(), true);
    let delta = fold(s.suc.iter().cloned().collect(), false);
    let matrix = match (gamma, delta) {
        (Some(g), Some(d)) => Formula::imp(g, d),
        (Some(g), None) => Formula::not(g),
        (None, Some(d)) => d,
        (None, None) => unreachable!("empty sequent handled above"),
    };

    let mut taken: BTreeSet<String> = matrix.all_names();
    taken.extend(sig.names());
    let mut used: BTreeSet<String> = matrix.free_vars0();
    used.extend(sig.names());
    let matrix = rename_apart0(&matrix, &mut used);
    taken.extend(used);

    let mut sig = sig.clone();
    let h = herbrandize(&nnf(&matrix, true), &mut sig, &mut taken, &[]);
    Ok((Sequent::from_formulas([], [h]), sig))
}

fn rename_apart0(f: &Formula, used: &mut BTreeSet<String>) -> Formula {
    match f {
        Formula::Atom(_, _) => f.clone(),
        Formula::Not(g) => Formula::not(rename_apart0(g, used)),
        Formula::Or(a, b) => Formula::or(rename_apart0(a, used), rename_apart0(b, used)),
        Formula::And(a, b) => Formula::and(rename_apart0(a, used), rename_apart0(b, used)),
        Formula::Exists0(x, g) | Formula::Forall0(x, g) => {
            let (x, g) = if used.contains(x) {
                let nx = fresh_name(x, |cand| used.contains(cand));
                (nx.clone(), subst_first(g, x, &Term0::Var(nx)))
            } else {
                (x.clone(), (**g).clone())
            };
            used.insert(x.clone());
            let body = Box::new(rename_apart0(&g, used));
            match f {
                Formula::Exists0(_, _) => Formula::Exists0(x, body),
                _ => Formula::Forall0(x, body),
            }
        }
        Formula::Exists1(sv, g) => Formula::Exists1(sv.clone(), Box::new(rename_apart0(g, used))),
        Formula::Forall1(sv, g) => Formula::Forall1(sv.clone(), Box::new(rename_apart0(g, used))),
    }
}

/// Negation normal form (first-order part only; callers guarantee no
/// second-order quantifiers).
fn nnf(f: &Formula, positive: bool) -> Formula {
    match f {
        Formula::Atom(_, _) => {
            if positive {
                f.clone()
            } else {
                Formula::not(f.clone())
            }
        }
        Formula::Not(g) => nnf(g, !positive),
        Formula::Or(a, b) => {
            if positive {
                Formula::or(nnf(a, true), nnf(b, true))
            } else {
                Formula::and(nnf(a, false), nnf(b, false))
            }
        }
        Formula::And(a, b) => {
            if positive {
                Formula::and(nnf(a, true), nnf(b, true))
            } else {
                Formula::or(nnf(a, false), nnf(b, false))
            }
        }
        Formula::Exists0(x, g) => {
            if positive {
                Formula::Exists0(x.clone(), Box::new(nnf(g, true)))
            } else {
                Formula::Forall0(x.clone(), Box::new(nnf(g, false)))
            }
        }
        Formula::Forall0(x, g) => {
            if positive {
                Formula::Forall0(x.clone(), Box::new(nnf(g, true)))
            } else {
                Formula::Exists0(x.clone(), Box::new(nnf(g, false)))
            }
        }
        Formula::Exists1(_, _) | Formula::Forall1(_, _) => {
            unreachable!("herbrandization is first-order only")
        }
    }
}

fn herbrandize(
    f: &Formula,
    sig: &mut Signature,
    taken: &mut BTreeSet<String>,
    weak: &[String],
) -> Formula {
    match f {
        Formula::Atom(_, _) | Formula::Not(_) => f.clone(), // NNF: Not wraps an atom
        Formula::Or(a, b) => Formula::or(
            herbrandize(a, sig, taken, weak),
            herbrandize(b, sig, taken, weak),
        ),
        Formula::And(a, b) => Formula::and(
            herbrandize(a, sig, taken, weak),
            herbrandize(b, sig, taken, weak),
        ),
        Formula::Exists0(x, g) => {
            let mut weak = weak.to_vec();
            weak.push(x.clone());
            Formula::Exists0(x.clone(), Box::new(herbrandize(g, sig, taken, &weak)))
        }
        Formula::Forall0(y, g) => {
            let term = if weak.is_empty() {
                let name = fresh_name("c", |cand| taken.contains(cand));
                taken.insert(name.clone());
                sig.consts.insert(name.clone());
                Term0::Const(name)
            } else {
                let name = fresh_name("f", |cand| taken.contains(cand));
                taken.insert(name.clone());
                sig.funcs.insert(name.clone(), weak.len());
                Term0::App(name, weak.iter().map(|v| Term0::Var(v.clone())).collect())
            };
            let body = subst_first(g, y, &term);
            herbrandize(&body, sig, taken, weak)
        }
        Formula::Exists1(_, _) | Formula::Forall1(_, _) => {
            unreachable!("herbrandization is first-order only")
        }
    }
}
