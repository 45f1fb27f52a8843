//! Abstract syntax for the second-order language: first-order terms,
//! formulas with first- and second-order binders, n-ary abstracts, and
//! signatures of individual constants, function and relation symbols.
//!
//! Formula equality everywhere downstream is alpha-equivalence. Terms have
//! no binders, so plain structural equality is fine for them;
//! [`Formula::alpha_normalize`] renames every bound variable to a canonical
//! name and [`alpha_eq`] compares the results. The canonical form is also
//! the sort key that makes cedents and serialized artifacts deterministic.

mod parse;
mod print;
mod subst;

pub use parse::{parse_abstract, parse_cedents, parse_formula, parse_problem, parse_term};
pub(crate) use subst::rename_secvar;
pub use subst::{subst_first, subst_first_many, subst_second};

use std::collections::{BTreeMap, BTreeSet};

/// Errors from parsing and from the well-formedness checks of terms,
/// formulas and signatures.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SyntaxError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("arity mismatch for `{name}`: expected {expected}, got {got}")]
    ArityMismatch {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("invalid signature: {0}")]
    BadSignature(String),
    #[error("invalid abstract: {0}")]
    BadAbstract(String),
}

/// Names of individual constants plus arities of function and relation
/// symbols. The default signature is empty; function and relation arities
/// must be at least 1 and the three name spaces must be disjoint.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    pub consts: BTreeSet<String>,
    pub funcs: BTreeMap<String, usize>,
    pub rels: BTreeMap<String, usize>,
}

impl Signature {
    pub fn validate(&self) -> Result<(), SyntaxError> {
        for (name, &ar) in self.funcs.iter().chain(self.rels.iter()) {
            if ar == 0 {
                return Err(SyntaxError::BadSignature(format!(
                    "symbol `{name}` must have arity >= 1"
                )));
            }
        }
        for name in self.funcs.keys() {
            if self.consts.contains(name) || self.rels.contains_key(name) {
                return Err(SyntaxError::BadSignature(format!(
                    "name `{name}` declared in more than one category"
                )));
            }
        }
        for name in self.rels.keys() {
            if self.consts.contains(name) {
                return Err(SyntaxError::BadSignature(format!(
                    "name `{name}` declared in more than one category"
                )));
            }
        }
        Ok(())
    }

    /// Every name the signature reserves.
    pub fn names(&self) -> BTreeSet<String> {
        self.consts
            .iter()
            .chain(self.funcs.keys())
            .chain(self.rels.keys())
            .cloned()
            .collect()
    }
}

/// A second-order variable together with its arity. Arity 0 is allowed for
/// free variables and gives plain propositional atoms; binders require
/// arity >= 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SecVar {
    pub name: String,
    pub arity: usize,
}

impl SecVar {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        SecVar {
            name: name.into(),
            arity,
        }
    }
}

/// First-order terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term0 {
    Var(String),
    Const(String),
    App(String, Vec<Term0>),
}

impl Term0 {
    pub fn var(n: impl Into<String>) -> Self {
        Term0::Var(n.into())
    }
    pub fn cnst(n: impl Into<String>) -> Self {
        Term0::Const(n.into())
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut acc = BTreeSet::new();
        self.collect_vars(&mut acc);
        acc
    }

    fn collect_vars(&self, acc: &mut BTreeSet<String>) {
        match self {
            Term0::Var(v) => {
                acc.insert(v.clone());
            }
            Term0::Const(_) => {}
            Term0::App(_, args) => {
                for a in args {
                    a.collect_vars(acc);
                }
            }
        }
    }

    fn collect_names(&self, acc: &mut BTreeSet<String>) {
        match self {
            Term0::Var(v) | Term0::Const(v) => {
                acc.insert(v.clone());
            }
            Term0::App(f, args) => {
                acc.insert(f.clone());
                for a in args {
                    a.collect_names(acc);
                }
            }
        }
    }
}

/// Head of an atomic formula: a second-order variable or a relation
/// constant from the signature. Both carry their arity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AtomHead {
    Var(SecVar),
    Rel(String, usize),
}

impl AtomHead {
    pub fn arity(&self) -> usize {
        match self {
            AtomHead::Var(sv) => sv.arity,
            AtomHead::Rel(_, n) => *n,
        }
    }
    pub fn name(&self) -> &str {
        match self {
            AtomHead::Var(sv) => &sv.name,
            AtomHead::Rel(n, _) => n,
        }
    }
}

/// Formulas over the connective set `{~, |, &, EX, ALL}` with both
/// first-order and second-order quantifiers. `>` and `<->` exist only as
/// parser sugar and never appear in the tree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(AtomHead, Vec<Term0>),
    Not(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Exists0(String, Box<Formula>),
    Forall0(String, Box<Formula>),
    Exists1(SecVar, Box<Formula>),
    Forall1(SecVar, Box<Formula>),
}

/// An n-ary abstract `\x1 ... xn. G` with n >= 1 pairwise distinct
/// parameters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Abstract {
    pub params: Vec<String>,
    pub body: Formula,
}

impl Abstract {
    pub fn new(params: Vec<String>, body: Formula) -> Result<Self, SyntaxError> {
        if params.is_empty() {
            return Err(SyntaxError::BadAbstract("needs at least one parameter".into()));
        }
        let distinct: BTreeSet<_> = params.iter().collect();
        if distinct.len() != params.len() {
            return Err(SyntaxError::BadAbstract("parameters must be distinct".into()));
        }
        Ok(Abstract { params, body })
    }

    pub fn arity(&self) -> usize {
        self.params.len()
    }

    /// The abstract `\x1 ... xn. Y(x1,...,xn)` standing for the bare
    /// second-order variable `Y`.
    pub fn eta(sv: &SecVar) -> Abstract {
        assert!(sv.arity >= 1, "eta expansion needs arity >= 1");
        let params: Vec<String> = (1..=sv.arity).map(|i| format!("x{i}")).collect();
        let args = params.iter().map(|p| Term0::Var(p.clone())).collect();
        Abstract {
            params,
            body: Formula::Atom(AtomHead::Var(sv.clone()), args),
        }
    }

    /// True when the body is exactly `H(x1,...,xn)` applied to the
    /// parameter tuple in order, for a variable or relation-constant head.
    pub fn is_eta_atom(&self) -> bool {
        match &self.body {
            Formula::Atom(h, args) => {
                h.arity() == self.params.len()
                    && args.len() == self.params.len()
                    && args
                        .iter()
                        .zip(&self.params)
                        .all(|(a, p)| matches!(a, Term0::Var(v) if v == p))
            }
            _ => false,
        }
    }

    /// Free first-order variables of the abstract (the body's, minus the
    /// parameters).
    pub fn free_vars0(&self) -> BTreeSet<String> {
        let mut fv = self.body.free_vars0();
        for p in &self.params {
            fv.remove(p);
        }
        fv
    }

    pub fn free_vars1(&self) -> BTreeSet<SecVar> {
        self.body.free_vars1()
    }

    pub fn alpha_normalize(&self) -> Abstract {
        let mut avoid = BTreeSet::new();
        for v in self.free_vars0() {
            avoid.insert(v);
        }
        for sv in self.body.free_vars1() {
            avoid.insert(sv.name);
        }
        let mut namer = CanonNamer::new(avoid);
        let mut env0 = BTreeMap::new();
        let params: Vec<String> = self
            .params
            .iter()
            .map(|p| {
                let np = namer.fresh0();
                env0.insert(p.clone(), np.clone());
                np
            })
            .collect();
        Abstract {
            params,
            body: self.body.normalize_rec(&mut namer, &env0, &BTreeMap::new()),
        }
    }
}

/// Alpha-equivalence of formulas.
pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    a.alpha_normalize() == b.alpha_normalize()
}

/// Alpha-equivalence of abstracts (same arity, bodies equal up to renaming
/// of parameters and bound variables).
pub fn alpha_eq_abstract(a: &Abstract, b: &Abstract) -> bool {
    a.params.len() == b.params.len() && a.alpha_normalize() == b.alpha_normalize()
}

struct CanonNamer {
    avoid: BTreeSet<String>,
    next0: usize,
    next1: usize,
}

impl CanonNamer {
    fn new(avoid: BTreeSet<String>) -> Self {
        CanonNamer {
            avoid,
            next0: 0,
            next1: 0,
        }
    }
    fn fresh0(&mut self) -> String {
        loop {
            self.next0 += 1;
            let name = format!("v{}", self.next0);
            if !self.avoid.contains(&name) {
                return name;
            }
        }
    }
    fn fresh1(&mut self) -> String {
        loop {
            self.next1 += 1;
            let name = format!("V{}", self.next1);
            if !self.avoid.contains(&name) {
                return name;
            }
        }
    }
}

impl Formula {
    pub fn atom(head: AtomHead, args: Vec<Term0>) -> Result<Formula, SyntaxError> {
        if head.arity() != args.len() {
            return Err(SyntaxError::ArityMismatch {
                name: head.name().to_string(),
                expected: head.arity(),
                got: args.len(),
            });
        }
        Ok(Formula::Atom(head, args))
    }

    /// Propositional atom: a free second-order variable of arity 0.
    pub fn prop(name: impl Into<String>) -> Formula {
        Formula::Atom(AtomHead::Var(SecVar::new(name, 0)), vec![])
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }
    /// `a > b` desugared.
    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::or(Formula::not(a), b)
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Atom(_, _))
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Atom(_, _) => true,
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::Or(a, b) | Formula::And(a, b) => {
                a.is_quantifier_free() && b.is_quantifier_free()
            }
            _ => false,
        }
    }

    /// True when no second-order quantifier occurs (free second-order
    /// variables are fine).
    pub fn is_second_order_quantifier_free(&self) -> bool {
        match self {
            Formula::Atom(_, _) => true,
            Formula::Not(f) => f.is_second_order_quantifier_free(),
            Formula::Or(a, b) | Formula::And(a, b) => {
                a.is_second_order_quantifier_free() && b.is_second_order_quantifier_free()
            }
            Formula::Exists0(_, f) | Formula::Forall0(_, f) => {
                f.is_second_order_quantifier_free()
            }
            Formula::Exists1(_, _) | Formula::Forall1(_, _) => false,
        }
    }

    /// Free first-order variables.
    pub fn free_vars0(&self) -> BTreeSet<String> {
        let mut acc = BTreeSet::new();
        self.fv0(&mut Vec::new(), &mut acc);
        acc
    }

    fn fv0(&self, bound: &mut Vec<String>, acc: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(_, args) => {
                for t in args {
                    for v in t.free_vars() {
                        if !bound.iter().any(|b| *b == v) {
                            acc.insert(v);
                        }
                    }
                }
            }
            Formula::Not(f) => f.fv0(bound, acc),
            Formula::Or(a, b) | Formula::And(a, b) => {
                a.fv0(bound, acc);
                b.fv0(bound, acc);
            }
            Formula::Exists0(x, f) | Formula::Forall0(x, f) => {
                bound.push(x.clone());
                f.fv0(bound, acc);
                bound.pop();
            }
            Formula::Exists1(_, f) | Formula::Forall1(_, f) => f.fv0(bound, acc),
        }
    }

    /// Free second-order variables.
    pub fn free_vars1(&self) -> BTreeSet<SecVar> {
        let mut acc = BTreeSet::new();
        self.fv1(&mut Vec::new(), &mut acc);
        acc
    }

    fn fv1(&self, bound: &mut Vec<String>, acc: &mut BTreeSet<SecVar>) {
        match self {
            Formula::Atom(head, _) => {
                if let AtomHead::Var(sv) = head {
                    if !bound.iter().any(|b| *b == sv.name) {
                        acc.insert(sv.clone());
                    }
                }
            }
            Formula::Not(f) => f.fv1(bound, acc),
            Formula::Or(a, b) | Formula::And(a, b) => {
                a.fv1(bound, acc);
                b.fv1(bound, acc);
            }
            Formula::Exists0(_, f) | Formula::Forall0(_, f) => f.fv1(bound, acc),
            Formula::Exists1(sv, f) | Formula::Forall1(sv, f) => {
                bound.push(sv.name.clone());
                f.fv1(bound, acc);
                bound.pop();
            }
        }
    }

    /// Every name occurring anywhere in the formula: variables of both
    /// orders (free or bound), constants, function and relation symbols.
    /// Used to pick fresh names.
    pub fn all_names(&self) -> BTreeSet<String> {
        let mut acc = BTreeSet::new();
        self.collect_names(&mut acc);
        acc
    }

    fn collect_names(&self, acc: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(head, args) => {
                acc.insert(head.name().to_string());
                for t in args {
                    t.collect_names(acc);
                }
            }
            Formula::Not(f) => f.collect_names(acc),
            Formula::Or(a, b) | Formula::And(a, b) => {
                a.collect_names(acc);
                b.collect_names(acc);
            }
            Formula::Exists0(x, f) | Formula::Forall0(x, f) => {
                acc.insert(x.clone());
                f.collect_names(acc);
            }
            Formula::Exists1(sv, f) | Formula::Forall1(sv, f) => {
                acc.insert(sv.name.clone());
                f.collect_names(acc);
            }
        }
    }

    /// Canonical representative of the alpha-equivalence class: bound
    /// variables are renamed, in traversal order, to `v1, v2, ...` and
    /// `V1, V2, ...`, skipping any name that occurs free. Two formulas are
    /// alpha-equivalent iff their normal forms are structurally equal.
    pub fn alpha_normalize(&self) -> Formula {
        let mut avoid = BTreeSet::new();
        for v in self.free_vars0() {
            avoid.insert(v);
        }
        for sv in self.free_vars1() {
            avoid.insert(sv.name);
        }
        let mut namer = CanonNamer::new(avoid);
        self.normalize_rec(&mut namer, &BTreeMap::new(), &BTreeMap::new())
    }

    fn normalize_rec(
        &self,
        namer: &mut CanonNamer,
        env0: &BTreeMap<String, String>,
        env1: &BTreeMap<String, String>,
    ) -> Formula {
        match self {
            Formula::Atom(head, args) => {
                let head = match head {
                    AtomHead::Var(sv) => AtomHead::Var(SecVar::new(
                        env1.get(&sv.name).cloned().unwrap_or_else(|| sv.name.clone()),
                        sv.arity,
                    )),
                    AtomHead::Rel(n, a) => AtomHead::Rel(n.clone(), *a),
                };
                let args = args.iter().map(|t| rename_term(t, env0)).collect();
                Formula::Atom(head, args)
            }
            Formula::Not(f) => Formula::not(f.normalize_rec(namer, env0, env1)),
            Formula::Or(a, b) => Formula::or(
                a.normalize_rec(namer, env0, env1),
                b.normalize_rec(namer, env0, env1),
            ),
            Formula::And(a, b) => Formula::and(
                a.normalize_rec(namer, env0, env1),
                b.normalize_rec(namer, env0, env1),
            ),
            Formula::Exists0(x, f) | Formula::Forall0(x, f) => {
                let nx = namer.fresh0();
                let mut env0 = env0.clone();
                env0.insert(x.clone(), nx.clone());
                let body = f.normalize_rec(namer, &env0, env1);
                match self {
                    Formula::Exists0(_, _) => Formula::Exists0(nx, Box::new(body)),
                    _ => Formula::Forall0(nx, Box::new(body)),
                }
            }
            Formula::Exists1(sv, f) | Formula::Forall1(sv, f) => {
                let nn = namer.fresh1();
                let mut env1 = env1.clone();
                env1.insert(sv.name.clone(), nn.clone());
                let body = f.normalize_rec(namer, env0, &env1);
                let nsv = SecVar::new(nn, sv.arity);
                match self {
                    Formula::Exists1(_, _) => Formula::Exists1(nsv, Box::new(body)),
                    _ => Formula::Forall1(nsv, Box::new(body)),
                }
            }
        }
    }
}

fn rename_term(t: &Term0, env0: &BTreeMap<String, String>) -> Term0 {
    match t {
        Term0::Var(v) => Term0::Var(env0.get(v).cloned().unwrap_or_else(|| v.clone())),
        Term0::Const(c) => Term0::Const(c.clone()),
        Term0::App(f, args) => {
            Term0::App(f.clone(), args.iter().map(|a| rename_term(a, env0)).collect())
        }
    }
}

/// First name of the shape `base`, `base1`, `base2`, ... not rejected by
/// `taken`.
pub fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> String {
    if !taken(base) {
        return base.to_string();
    }
    let mut i = 1usize;
    loop {
        let cand = format!("{base}{i}");
        if !taken(&cand) {
            return cand;
        }
        i += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fm(s: &str) -> Formula {
        parse_formula(s, &Signature::default()).unwrap()
    }

    #[test]
    fn alpha_eq_first_order_renaming() {
        assert!(alpha_eq(&fm("EX x. X(x)"), &fm("EX y. X(y)")));
        assert!(!alpha_eq(&fm("EX x. X(x)"), &fm("ALL x. X(x)")));
    }

    #[test]
    fn alpha_eq_second_order_renaming() {
        assert!(alpha_eq(&fm("ALL X:1. X(c)"), &fm("ALL Y:1. Y(c)")));
        assert!(!alpha_eq(&fm("ALL X:1. X(c)"), &fm("ALL Y:1. Y(d)")));
    }

    #[test]
    fn alpha_eq_distinguishes_free_variables() {
        assert!(!alpha_eq(&fm("X(x)"), &fm("X(y)")));
        // canonical binder names never capture a free variable
        assert!(!alpha_eq(&fm("EX x. R(x, v1)"), &fm("EX v1. R(v1, v1)")));
    }

    #[test]
    fn normalize_is_idempotent() {
        let f = fm("EX x. ALL Y:1. (Y(x) & EX z. R(z, x))");
        let n = f.alpha_normalize();
        assert_eq!(n, n.alpha_normalize());
        assert!(alpha_eq(&f, &n));
    }

    #[test]
    fn eta_abstract_shape() {
        let t = Abstract::eta(&SecVar::new("Y", 2));
        assert!(t.is_eta_atom());
        assert_eq!(t.arity(), 2);
    }

    #[test]
    fn distinct_params_required() {
        assert!(Abstract::new(vec!["x".into(), "x".into()], fm("P")).is_err());
        assert!(Abstract::new(vec![], fm("P")).is_err());
    }
}
