//! Pair-valued models and the constructions that connect them to
//! semi-valuations. A model interprets a finite individual domain and,
//! per arity, a finite family of relation functions into the pair
//! algebra; evaluation is structural recursion with quantifiers ranging
//! over the domain and the families. Free second-order variables are
//! covered by the model's canonical bindings (the value of the variable's
//! own graph under the originating valuation), so every universe formula
//! evaluates without side conditions.
//!
//! Three constructions are provided: the pair-valued model read off a
//! semi-valuation (families are the values of the pool abstracts), the
//! diagonal-valued model obtained from a pair-valued one by taking all
//! diagonal functions dominating some family member, and their composite
//! for the two-element case. Each comes with the inequality and
//! comprehension checks that make the corresponding lemma executable.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::semival::{SemiValuation, ValReport};
use super::universe::{tuples, FormulaUniverse};
use super::ValuationError;
use crate::cba::{Cba, DAlg, DPair, Elem};
use crate::syntax::{subst_first_many, subst_second, Abstract, Formula, SecVar, Term0};

/// A function from domain tuples to pairs, tabulated row-major with the
/// first tuple position as the least significant digit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelFun {
    pub arity: usize,
    pub values: Vec<DPair>,
}

impl RelFun {
    pub fn constant(arity: usize, d0: usize, value: DPair) -> RelFun {
        RelFun {
            arity,
            values: vec![value; d0.pow(arity as u32).max(1)],
        }
    }

    fn index(tuple: &[usize], d0: usize) -> usize {
        let mut idx = 0;
        for &t in tuple.iter().rev() {
            idx = idx * d0 + t;
        }
        idx
    }

    pub fn at(&self, tuple: &[usize], d0: usize) -> DPair {
        self.values[Self::index(tuple, d0)]
    }

    pub fn label(&self, alg: &dyn Cba) -> String {
        let d = DAlg::new(alg);
        let vals: Vec<String> = self.values.iter().map(|&v| d.label(v)).collect();
        format!("[{}]", vals.join(" "))
    }
}

/// Pointwise information order on relation functions.
pub fn tri_fun(alg: &dyn Cba, a: &RelFun, b: &RelFun) -> bool {
    let d = DAlg::new(alg);
    a.arity == b.arity
        && a.values.len() == b.values.len()
        && a.values.iter().zip(&b.values).all(|(&x, &y)| d.tri(x, y))
}

/// Variable assignment used during evaluation.
#[derive(Debug, Clone, Default)]
pub struct Env {
    pub vars0: BTreeMap<String, usize>,
    pub vars1: BTreeMap<String, RelFun>,
}

impl Env {
    pub fn with1(name: &str, f: RelFun) -> Env {
        let mut e = Env::default();
        e.vars1.insert(name.to_string(), f);
        e
    }
}

/// A pair-valued model: finite individual domain (terms standing for
/// themselves), relation families per arity, and canonical bindings for
/// free second-order variables.
#[derive(Debug, Clone)]
pub struct DbModel {
    pub alg: Arc<dyn Cba>,
    pub individuals: Vec<Term0>,
    pub families: BTreeMap<usize, Vec<RelFun>>,
    pub bindings: BTreeMap<String, RelFun>,
}

impl DbModel {
    fn subst_env_term(&self, t: &Term0, env: &Env) -> Term0 {
        match t {
            Term0::Var(v) => match env.vars0.get(v) {
                Some(&idx) => self.individuals[idx].clone(),
                None => t.clone(),
            },
            Term0::Const(_) => t.clone(),
            Term0::App(f, args) => Term0::App(
                f.clone(),
                args.iter().map(|a| self.subst_env_term(a, env)).collect(),
            ),
        }
    }

    fn resolve_term(&self, t: &Term0, env: &Env) -> Result<usize, ValuationError> {
        let t = self.subst_env_term(t, env);
        self.individuals
            .iter()
            .position(|u| *u == t)
            .ok_or_else(|| ValuationError::UnknownIndividual(t.to_string()))
    }

    fn lookup1(&self, sv: &SecVar, env: &Env) -> Result<RelFun, ValuationError> {
        let f = env
            .vars1
            .get(&sv.name)
            .or_else(|| self.bindings.get(&sv.name))
            .ok_or_else(|| ValuationError::UnboundSecondOrder(sv.name.clone()))?;
        if f.arity != sv.arity {
            return Err(ValuationError::Arity(format!(
                "`{}` used at arity {}, bound at arity {}",
                sv.name, sv.arity, f.arity
            )));
        }
        Ok(f.clone())
    }

    /// Evaluate a formula under an assignment; quantifiers range over the
    /// domain and the families.
    pub fn eval(&self, f: &Formula, env: &Env) -> Result<DPair, ValuationError> {
        let d = DAlg::new(self.alg.as_ref());
        match f {
            Formula::Atom(head, args) => {
                let fun = match head {
                    crate::syntax::AtomHead::Var(sv) => self.lookup1(sv, env)?,
                    crate::syntax::AtomHead::Rel(name, arity) => self
                        .lookup1(&SecVar::new(name.clone(), *arity), env)
                        .map_err(|_| ValuationError::UnboundSecondOrder(name.clone()))?,
                };
                let mut tuple = Vec::with_capacity(args.len());
                for a in args {
                    tuple.push(self.resolve_term(a, env)?);
                }
                Ok(fun.at(&tuple, self.individuals.len()))
            }
            Formula::Not(g) => Ok(d.neg(self.eval(g, env)?)),
            Formula::Or(a, b) => Ok(d.sup_leq(&[self.eval(a, env)?, self.eval(b, env)?])),
            Formula::And(a, b) => Ok(d.inf_leq(&[self.eval(a, env)?, self.eval(b, env)?])),
            Formula::Exists0(x, g) | Formula::Forall0(x, g) => {
                let mut vals = Vec::with_capacity(self.individuals.len());
                for idx in 0..self.individuals.len() {
                    let mut env = env.clone();
                    env.vars0.insert(x.clone(), idx);
                    vals.push(self.eval(g, &env)?);
                }
                Ok(if matches!(f, Formula::Exists0(_, _)) {
                    d.sup_leq(&vals)
                } else {
                    d.inf_leq(&vals)
                })
            }
            Formula::Exists1(sv, g) | Formula::Forall1(sv, g) => {
                let family = self
                    .families
                    .get(&sv.arity)
                    .ok_or(ValuationError::MissingFamily(sv.arity))?;
                let mut vals = Vec::with_capacity(family.len());
                for fun in family {
                    let mut env = env.clone();
                    env.vars1.insert(sv.name.clone(), fun.clone());
                    vals.push(self.eval(g, &env)?);
                }
                Ok(if matches!(f, Formula::Exists1(_, _)) {
                    d.sup_leq(&vals)
                } else {
                    d.inf_leq(&vals)
                })
            }
        }
    }

    /// Evaluate an abstract to its relation function.
    pub fn eval_abstract(&self, t: &Abstract, env: &Env) -> Result<RelFun, ValuationError> {
        let d0 = self.individuals.len();
        let total = d0.pow(t.arity() as u32).max(1);
        let mut values = Vec::with_capacity(total);
        for flat in 0..total {
            let mut env = env.clone();
            let mut rest = flat;
            for p in &t.params {
                env.vars0.insert(p.clone(), rest % d0);
                rest /= d0;
            }
            values.push(self.eval(&t.body, &env)?);
        }
        Ok(RelFun {
            arity: t.arity(),
            values,
        })
    }
}

/// A diagonal-valued model: a pair-valued model whose functions only take
/// diagonal values, so every formula has a single algebra element as its
/// value.
#[derive(Debug, Clone)]
pub struct BModel {
    pub model: DbModel,
}

impl BModel {
    /// Evaluate to the diagonal element.
    pub fn eval1(&self, f: &Formula, env: &Env) -> Result<Elem, ValuationError> {
        let v = self.model.eval(f, env)?;
        debug_assert_eq!(v.bx, v.dia, "diagonal model produced a non-diagonal value");
        Ok(v.bx)
    }
}

fn value_of_instantiated(
    v: &SemiValuation,
    body: &Formula,
    params: &[String],
    tuple: Vec<Term0>,
) -> Result<DPair, ValuationError> {
    let map: BTreeMap<String, Term0> = params.iter().cloned().zip(tuple).collect();
    let inst = subst_first_many(body, &map);
    v.value(&inst)
        .ok_or_else(|| ValuationError::MissingFormula(inst.to_string()))
}

fn abstract_value(
    v: &SemiValuation,
    t: &Abstract,
    individuals: &[Term0],
) -> Result<RelFun, ValuationError> {
    let mut values = Vec::new();
    for tuple in tuples(individuals, t.arity()) {
        values.push(value_of_instantiated(v, &t.body, &t.params, tuple)?);
    }
    Ok(RelFun {
        arity: t.arity(),
        values,
    })
}

fn binding_value(
    v: &SemiValuation,
    sv: &SecVar,
    individuals: &[Term0],
) -> Result<RelFun, ValuationError> {
    let mut values = Vec::new();
    for tuple in tuples(individuals, sv.arity) {
        let atom = Formula::Atom(crate::syntax::AtomHead::Var(sv.clone()), tuple);
        values.push(
            v.value(&atom)
                .ok_or_else(|| ValuationError::MissingFormula(atom.to_string()))?,
        );
    }
    Ok(RelFun {
        arity: sv.arity,
        values,
    })
}

/// The pair-valued model read off a semi-valuation: the domain is the
/// term pool, each pool abstract contributes its value function, and free
/// second-order variables are bound to their own graphs.
#[derive(Debug, Clone)]
pub struct GirardLab {
    pub model: DbModel,
    /// Pool abstracts paired with their value functions.
    pub abstracts: Vec<(Abstract, RelFun)>,
}

pub fn model_from_semival_girard(v: &SemiValuation) -> Result<GirardLab, ValuationError> {
    let universe = v.universe();
    let individuals: Vec<Term0> = if universe.term_pool.is_empty() {
        vec![Term0::Const("_i0".into())]
    } else {
        universe.term_pool.clone()
    };

    let mut families: BTreeMap<usize, Vec<RelFun>> = BTreeMap::new();
    let mut abstracts = Vec::new();
    for (arity, pool) in &universe.abstract_pool {
        for t in pool {
            let fun = abstract_value(v, t, &individuals)?;
            abstracts.push((t.clone(), fun.clone()));
            let fam = families.entry(*arity).or_default();
            if !fam.contains(&fun) {
                fam.push(fun);
            }
        }
    }

    let mut bindings = BTreeMap::new();
    for sv in universe.free_secvars() {
        let fun = binding_value(v, &sv, &individuals)?;
        if sv.arity >= 1 {
            let fam = families.entry(sv.arity).or_default();
            if !fam.contains(&fun) {
                fam.push(fun.clone());
            }
        }
        bindings.insert(sv.name.clone(), fun);
    }

    Ok(GirardLab {
        model: DbModel {
            alg: v.algebra_arc(),
            individuals,
            families,
            bindings,
        },
        abstracts,
    })
}

const FAMILY_LIMIT: usize = 10_000;

fn diagonal_functions(
    alg: &dyn Cba,
    arity: usize,
    d0: usize,
) -> Result<Vec<RelFun>, ValuationError> {
    let slots = d0.pow(arity as u32).max(1);
    let count = (alg.size() as u128).pow(slots as u32);
    if count > FAMILY_LIMIT as u128 {
        return Err(ValuationError::FamilyTooLarge(arity, count as usize));
    }
    let d = DAlg::new(alg);
    let mut out = Vec::with_capacity(count as usize);
    for mut code in 0..count as usize {
        let mut values = Vec::with_capacity(slots);
        for _ in 0..slots {
            values.push(d.diag(code % alg.size()));
            code /= alg.size();
        }
        out.push(RelFun { arity, values });
    }
    Ok(out)
}

/// The diagonal model induced by a pair-valued one: per arity, all
/// diagonal functions dominating some family member; free variables are
/// rebound to the diagonal of their box part.
pub fn bmodel_from_dbmodel(m: &DbModel) -> Result<BModel, ValuationError> {
    let alg = m.alg.as_ref();
    let d0 = m.individuals.len();
    let mut families: BTreeMap<usize, Vec<RelFun>> = BTreeMap::new();
    for (&arity, fams) in &m.families {
        let all = diagonal_functions(alg, arity, d0)?;
        let kept: Vec<RelFun> = all
            .into_iter()
            .filter(|x| fams.iter().any(|alpha| tri_fun(alg, alpha, x)))
            .collect();
        families.insert(arity, kept);
    }
    let d = DAlg::new(alg);
    let bindings: BTreeMap<String, RelFun> = m
        .bindings
        .iter()
        .map(|(name, alpha)| {
            let values = alpha.values.iter().map(|p| d.diag(p.bx)).collect();
            (
                name.clone(),
                RelFun {
                    arity: alpha.arity,
                    values,
                },
            )
        })
        .collect();
    Ok(BModel {
        model: DbModel {
            alg: Arc::clone(&m.alg),
            individuals: m.individuals.clone(),
            families,
            bindings,
        },
    })
}

/// The two-element composite: pair-valued layer from the valuation, then
/// the diagonal model over it.
#[derive(Debug, Clone)]
pub struct TwoModelLab {
    pub lower: GirardLab,
    pub bmodel: BModel,
}

pub fn model_from_semival(v: &SemiValuation) -> Result<TwoModelLab, ValuationError> {
    if v.algebra().size() != 2 {
        return Err(ValuationError::AlgebraNotTwo);
    }
    let lower = model_from_semival_girard(v)?;
    let bmodel = bmodel_from_dbmodel(&lower.model)?;
    Ok(TwoModelLab { lower, bmodel })
}

/// A comprehension instance: an abstract body with one distinguished free
/// second-order parameter.
#[derive(Debug, Clone)]
pub struct CompItem {
    pub body: Abstract,
    pub param: SecVar,
}

/// Comprehension instances contributed by the universe's abstract pools:
/// one per (pool abstract, free second-order variable of arity >= 1).
pub fn comprehension_items(universe: &FormulaUniverse) -> Vec<CompItem> {
    let mut out = Vec::new();
    for pool in universe.abstract_pool.values() {
        for t in pool {
            for sv in t.free_vars1() {
                if sv.arity >= 1 {
                    out.push(CompItem {
                        body: t.clone(),
                        param: sv,
                    });
                }
            }
        }
    }
    out
}

/// Comprehension over the pair-valued model: for every instance and every
/// family member at the parameter arity, some family member at the body
/// arity lies pointwise below the instance's value function.
pub fn check_3ca(m: &DbModel, items: &[CompItem]) -> ValReport {
    let mut report = ValReport::default();
    for item in items {
        let Some(betas) = m.families.get(&item.param.arity) else {
            report.push(
                "3ca",
                format!("{} @ {}", item.body, item.param.name),
                format!("no family of arity {}", item.param.arity),
                String::new(),
                false,
            );
            continue;
        };
        for beta in betas {
            let env = Env::with1(&item.param.name, beta.clone());
            match m.eval_abstract(&item.body, &env) {
                Ok(target) => {
                    let witnesses = m.families.get(&item.body.arity());
                    let pass = witnesses
                        .map(|w| w.iter().any(|alpha| tri_fun(m.alg.as_ref(), alpha, &target)))
                        .unwrap_or(false);
                    report.push(
                        "3ca",
                        format!("{} @ {} := {}", item.body, item.param.name, beta.label(m.alg.as_ref())),
                        "exists alpha".into(),
                        target.label(m.alg.as_ref()),
                        pass,
                    );
                }
                Err(e) => report.push(
                    "3ca",
                    format!("{} @ {}", item.body, item.param.name),
                    e.to_string(),
                    String::new(),
                    false,
                ),
            }
        }
    }
    report
}

/// Comprehension over the diagonal model: the graph of every instance at
/// every family member is itself in the family, which makes the defining
/// biconditional evaluate to the top element.
pub fn check_2ca(n: &BModel, items: &[CompItem]) -> ValReport {
    let m = &n.model;
    let mut report = ValReport::default();
    for item in items {
        let Some(xs) = m.families.get(&item.param.arity) else {
            report.push(
                "2ca",
                format!("{} @ {}", item.body, item.param.name),
                format!("no family of arity {}", item.param.arity),
                String::new(),
                false,
            );
            continue;
        };
        for x in xs {
            let env = Env::with1(&item.param.name, x.clone());
            match m.eval_abstract(&item.body, &env) {
                Ok(graph) => {
                    let pass = m
                        .families
                        .get(&item.body.arity())
                        .map(|fam| fam.contains(&graph))
                        .unwrap_or(false);
                    report.push(
                        "2ca",
                        format!("{} @ {} := {}", item.body, item.param.name, x.label(m.alg.as_ref())),
                        "graph in family".into(),
                        graph.label(m.alg.as_ref()),
                        pass,
                    );
                }
                Err(e) => report.push(
                    "2ca",
                    format!("{} @ {}", item.body, item.param.name),
                    e.to_string(),
                    String::new(),
                    false,
                ),
            }
        }
    }
    report
}

fn param_formulas(universe: &FormulaUniverse) -> Vec<(Formula, SecVar)> {
    let mut out = Vec::new();
    for f in universe.formulas() {
        for sv in f.free_vars1() {
            if sv.arity >= 1 {
                out.push((f.clone(), sv));
            }
        }
    }
    out
}

/// The substitution inequality for the pair-valued model: substituting a
/// pool abstract into a universe formula is dominated by evaluating the
/// formula at the abstract's value function.
pub fn check_value_domination(lab: &GirardLab, v: &SemiValuation) -> ValReport {
    let d = DAlg::new(lab.model.alg.as_ref());
    let mut report = ValReport::default();
    for (f, sv) in param_formulas(v.universe()) {
        for (t, fun) in &lab.abstracts {
            if t.arity() != sv.arity {
                continue;
            }
            let Ok(inst) = subst_second(&f, &sv, t) else {
                continue;
            };
            let Some(lhs) = v.value(&inst) else {
                continue; // instance outside the universe: not an item
            };
            match lab.model.eval(&f, &Env::with1(&sv.name, fun.clone())) {
                Ok(rhs) => report.push(
                    "subst-dominated",
                    format!("{f} [{} := {t}]", sv.name),
                    d.label(lhs),
                    d.label(rhs),
                    d.tri(lhs, rhs),
                ),
                Err(e) => report.push(
                    "subst-dominated",
                    format!("{f} [{} := {t}]", sv.name),
                    e.to_string(),
                    String::new(),
                    false,
                ),
            }
        }
    }
    report
}

/// Every universe formula, evaluated with the canonical bindings, is
/// dominated when passing from the pair-valued model to the diagonal one.
pub fn m_dominates_n(universe: &FormulaUniverse, m: &DbModel, n: &BModel) -> ValReport {
    let d = DAlg::new(m.alg.as_ref());
    let mut report = ValReport::default();
    let empty = Env::default();
    for f in universe.formulas() {
        let lhs = m.eval(f, &empty);
        let rhs = n.model.eval(f, &empty);
        match (lhs, rhs) {
            (Ok(a), Ok(b)) => report.push(
                "pair-below-diagonal",
                f.to_string(),
                d.label(a),
                d.label(b),
                d.tri(a, b),
            ),
            (a, b) => report.push(
                "pair-below-diagonal",
                f.to_string(),
                a.err().map(|e| e.to_string()).unwrap_or_default(),
                b.err().map(|e| e.to_string()).unwrap_or_default(),
                false,
            ),
        }
    }
    report
}

/// The pointwise-domination inequality across the two layers: for a pool
/// abstract whose value function is dominated by a diagonal family member,
/// substitution into any universe formula stays dominated by the diagonal
/// evaluation.
pub fn check_two_model_domination(lab: &TwoModelLab, v: &SemiValuation) -> ValReport {
    let alg = lab.bmodel.model.alg.as_ref();
    let d = DAlg::new(alg);
    let mut report = ValReport::default();
    for (f, sv) in param_formulas(v.universe()) {
        for (t, vt) in &lab.lower.abstracts {
            if t.arity() != sv.arity {
                continue;
            }
            let Ok(inst) = subst_second(&f, &sv, t) else {
                continue;
            };
            let Some(lhs) = v.value(&inst) else {
                continue;
            };
            let Some(xs) = lab.bmodel.model.families.get(&sv.arity) else {
                continue;
            };
            for x in xs {
                if !tri_fun(alg, vt, x) {
                    continue;
                }
                match lab.bmodel.model.eval(&f, &Env::with1(&sv.name, x.clone())) {
                    Ok(rhs) => report.push(
                        "two-model-dominated",
                        format!("{f} [{} := {t}] vs {}", sv.name, x.label(alg)),
                        d.label(lhs),
                        d.label(rhs),
                        d.tri(lhs, rhs),
                    ),
                    Err(e) => report.push(
                        "two-model-dominated",
                        format!("{f} [{} := {t}]", sv.name),
                        e.to_string(),
                        String::new(),
                        false,
                    ),
                }
            }
        }
    }
    report
}

/// The corresponding check across the pair-valued and diagonal models
/// directly: family members below diagonal members evaluate in the
/// domination order on every parameterized universe formula.
pub fn check_layer_domination(
    universe: &FormulaUniverse,
    m: &DbModel,
    n: &BModel,
) -> ValReport {
    let alg = m.alg.as_ref();
    let d = DAlg::new(alg);
    let mut report = ValReport::default();
    for (f, sv) in param_formulas(universe) {
        let (Some(alphas), Some(xs)) = (
            m.families.get(&sv.arity),
            n.model.families.get(&sv.arity),
        ) else {
            continue;
        };
        for alpha in alphas {
            for x in xs {
                if !tri_fun(alg, alpha, x) {
                    continue;
                }
                let lhs = m.eval(&f, &Env::with1(&sv.name, alpha.clone()));
                let rhs = n.model.eval(&f, &Env::with1(&sv.name, x.clone()));
                match (lhs, rhs) {
                    (Ok(a), Ok(b)) => report.push(
                        "layer-dominated",
                        format!("{f} @ {}", sv.name),
                        d.label(a),
                        d.label(b),
                        d.tri(a, b),
                    ),
                    _ => report.push(
                        "layer-dominated",
                        format!("{f} @ {}", sv.name),
                        "eval error".into(),
                        String::new(),
                        false,
                    ),
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cba::PowersetAlg;
    use crate::syntax::{parse_abstract, parse_formula, Signature};

    fn sig() -> Signature {
        let mut s = Signature::default();
        s.consts.insert("c".into());
        s
    }
    fn fm(s: &str) -> Formula {
        parse_formula(s, &sig()).unwrap()
    }

    fn tiny_model() -> DbModel {
        // D0 = {c}, one unary function alpha with alpha(c) = u
        let alg: Arc<dyn Cba> = Arc::new(PowersetAlg::two());
        let d = DAlg::new(alg.as_ref());
        let alpha = RelFun {
            arity: 1,
            values: vec![d.undet()],
        };
        let mut families = BTreeMap::new();
        families.insert(1usize, vec![alpha.clone()]);
        let mut bindings = BTreeMap::new();
        bindings.insert("A".to_string(), alpha);
        DbModel {
            alg,
            individuals: vec![Term0::cnst("c")],
            families,
            bindings,
        }
    }

    #[test]
    fn eval_singleton_sup() {
        let m = tiny_model();
        let d = DAlg::new(m.alg.as_ref());
        let v = m.eval(&fm("EX X:1. X(c)"), &Env::default()).unwrap();
        assert_eq!(v, d.undet());
        let v = m.eval(&fm("~A(c)"), &Env::default()).unwrap();
        assert_eq!(v, d.undet());
        let v = m.eval(&fm("A(c) & ~A(c)"), &Env::default()).unwrap();
        assert_eq!(v, d.undet());
    }

    #[test]
    fn eval_unbound_head_errors() {
        let m = tiny_model();
        assert!(matches!(
            m.eval(&fm("B(c)"), &Env::default()),
            Err(ValuationError::UnboundSecondOrder(_))
        ));
        assert!(matches!(
            m.eval(&fm("EX X:2. X(c,c)"), &Env::default()),
            Err(ValuationError::MissingFamily(2))
        ));
    }

    #[test]
    fn three_ca_counterexample() {
        // families hold only the constant-top function; the instance
        // ~X(x) requires something below constant-bottom
        let alg: Arc<dyn Cba> = Arc::new(PowersetAlg::two());
        let d = DAlg::new(alg.as_ref());
        let top_fun = RelFun::constant(1, 1, d.top());
        let mut families = BTreeMap::new();
        families.insert(1usize, vec![top_fun]);
        let m = DbModel {
            alg,
            individuals: vec![Term0::cnst("c")],
            families,
            bindings: BTreeMap::new(),
        };
        let body = parse_abstract("\\x. ~X(x)", &sig()).unwrap();
        let items = vec![CompItem {
            body,
            param: SecVar::new("X", 1),
        }];
        assert!(!check_3ca(&m, &items).ok());
    }

    #[test]
    fn two_ca_counterexample() {
        let alg: Arc<dyn Cba> = Arc::new(PowersetAlg::two());
        let d = DAlg::new(alg.as_ref());
        let one_fun = RelFun::constant(1, 1, d.top());
        let mut families = BTreeMap::new();
        families.insert(1usize, vec![one_fun]);
        let n = BModel {
            model: DbModel {
                alg,
                individuals: vec![Term0::cnst("c")],
                families,
                bindings: BTreeMap::new(),
            },
        };
        let body = parse_abstract("\\x. ~X(x)", &sig()).unwrap();
        let items = vec![CompItem {
            body,
            param: SecVar::new("X", 1),
        }];
        assert!(!check_2ca(&n, &items).ok());
    }

    #[test]
    fn diagonal_family_filter() {
        let m = tiny_model(); // alpha = [u]
        let n = bmodel_from_dbmodel(&m).unwrap();
        // u is tri-below both diagonals, so both 0/1 functions are kept
        assert_eq!(n.model.families[&1].len(), 2);
    }
}
