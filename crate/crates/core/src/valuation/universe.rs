//! Finite formula universes. A universe is a formula set closed under
//! subformulas, with quantified members closed under instantiation from
//! explicit witness pools (terms per first-order quantifier, abstracts per
//! arity for second-order ones). The pools stand in for the full term and
//! abstract languages; every lemma downstream is checked relative to them.

use std::collections::{BTreeMap, BTreeSet};

use super::ValuationError;
use crate::syntax::{
    subst_first, subst_first_many, subst_second, Abstract, AtomHead, Formula, SecVar, Term0,
};

#[derive(Debug, Clone, Copy)]
pub struct UniverseOptions {
    /// Also instantiate every free second-order variable's atoms on all
    /// pool tuples, so the variable's graph is fully tabulated.
    pub atom_tuples: bool,
    /// Also add `T(t1,...,tn)` for every pool abstract and pool tuple, so
    /// abstract values can be read off the valuation.
    pub abstract_apps: bool,
    /// Close formulas with free second-order variables under substitution
    /// of pool abstracts. Off by default; this can grow quickly.
    pub close_free_secvars: bool,
    pub max_size: usize,
}

impl Default for UniverseOptions {
    fn default() -> Self {
        UniverseOptions {
            atom_tuples: true,
            abstract_apps: true,
            close_free_secvars: false,
            max_size: 20_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct FormulaUniverse {
    formulas: Vec<Formula>,            // insertion order
    index: BTreeMap<Formula, usize>,   // keyed by alpha-normal form
    pub term_pool: Vec<Term0>,
    pub abstract_pool: BTreeMap<usize, Vec<Abstract>>,
}

impl FormulaUniverse {
    pub fn build(
        seeds: &[Formula],
        term_pool: Vec<Term0>,
        abstract_pool: BTreeMap<usize, Vec<Abstract>>,
        opts: UniverseOptions,
    ) -> Result<Self, ValuationError> {
        let mut u = FormulaUniverse {
            formulas: Vec::new(),
            index: BTreeMap::new(),
            term_pool,
            abstract_pool,
        };
        let mut work: Vec<Formula> = seeds.to_vec();
        let mut done_secvar_insts: BTreeSet<Formula> = BTreeSet::new();

        if opts.abstract_apps {
            for ts in u.abstract_pool.clone().values() {
                for t in ts {
                    for tuple in tuples(&u.term_pool, t.arity()) {
                        let map: BTreeMap<String, Term0> =
                            t.params.iter().cloned().zip(tuple).collect();
                        work.push(subst_first_many(&t.body, &map));
                    }
                }
            }
        }

        while let Some(f) = work.pop() {
            if u.formulas.len() > opts.max_size {
                return Err(ValuationError::UniverseTooLarge(u.formulas.len()));
            }
            let key = f.alpha_normalize();
            if u.index.contains_key(&key) {
                continue;
            }
            u.index.insert(key, u.formulas.len());
            u.formulas.push(f.clone());

            match &f {
                Formula::Atom(_, _) => {}
                Formula::Not(g) => work.push((**g).clone()),
                Formula::Or(a, b) | Formula::And(a, b) => {
                    work.push((**a).clone());
                    work.push((**b).clone());
                }
                Formula::Exists0(x, g) | Formula::Forall0(x, g) => {
                    for t in u.term_pool.clone() {
                        work.push(subst_first(g, x, &t));
                    }
                }
                Formula::Exists1(sv, g) | Formula::Forall1(sv, g) => {
                    for t in u.abstract_pool.get(&sv.arity).cloned().unwrap_or_default() {
                        if let Ok(inst) = subst_second(g, sv, &t) {
                            work.push(inst);
                        }
                    }
                }
            }

            if opts.atom_tuples {
                for sv in f.free_vars1() {
                    if sv.arity == 0 {
                        work.push(Formula::Atom(AtomHead::Var(sv.clone()), vec![]));
                        continue;
                    }
                    for tuple in tuples(&u.term_pool, sv.arity) {
                        work.push(Formula::Atom(AtomHead::Var(sv.clone()), tuple));
                    }
                }
            }

            if opts.close_free_secvars && !done_secvar_insts.contains(&f.alpha_normalize()) {
                done_secvar_insts.insert(f.alpha_normalize());
                for sv in f.free_vars1() {
                    if sv.arity == 0 {
                        continue;
                    }
                    for t in u.abstract_pool.get(&sv.arity).cloned().unwrap_or_default() {
                        if let Ok(inst) = subst_second(&f, &sv, &t) {
                            work.push(inst);
                        }
                    }
                }
            }
        }
        Ok(u)
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.index.contains_key(&f.alpha_normalize())
    }

    pub fn index_of(&self, f: &Formula) -> Option<usize> {
        self.index.get(&f.alpha_normalize()).copied()
    }

    pub fn is_quantifier_free(&self) -> bool {
        self.formulas.iter().all(|f| f.is_quantifier_free())
    }

    /// Free second-order variables of all universe formulas.
    pub fn free_secvars(&self) -> BTreeSet<SecVar> {
        let mut acc = BTreeSet::new();
        for f in &self.formulas {
            acc.extend(f.free_vars1());
        }
        acc
    }

    pub fn pool(&self, arity: usize) -> &[Abstract] {
        self.abstract_pool
            .get(&arity)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }
}

/// All tuples over `pool` of the given length (empty pool and positive
/// length give no tuples).
pub(crate) fn tuples(pool: &[Term0], len: usize) -> Vec<Vec<Term0>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::new();
        for prefix in &out {
            for t in pool {
                let mut p = prefix.clone();
                p.push(t.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, Signature};

    fn sig() -> Signature {
        let mut s = Signature::default();
        s.consts.insert("c".into());
        s.consts.insert("d".into());
        s
    }
    fn fm(s: &str) -> Formula {
        parse_formula(s, &sig()).unwrap()
    }

    #[test]
    fn propositional_subformula_closure() {
        let u = FormulaUniverse::build(
            &[fm("P & (Q | ~P)")],
            vec![],
            BTreeMap::new(),
            UniverseOptions::default(),
        )
        .unwrap();
        for s in ["P", "Q", "~P", "Q | ~P", "P & (Q | ~P)"] {
            assert!(u.contains(&fm(s)), "missing {s}");
        }
        assert_eq!(u.len(), 5);
        assert!(u.is_quantifier_free());
    }

    #[test]
    fn quantifier_instantiation_closure() {
        let u = FormulaUniverse::build(
            &[fm("EX x. R(x)")],
            vec![Term0::cnst("c"), Term0::cnst("d")],
            BTreeMap::new(),
            UniverseOptions::default(),
        )
        .unwrap();
        assert!(u.contains(&fm("R(c)")));
        assert!(u.contains(&fm("R(d)")));
        // the instantiations plus their atoms, no open body
        assert!(!u.is_quantifier_free());
    }

    #[test]
    fn second_order_instantiation_closure() {
        let t = crate::syntax::parse_abstract("\\x. ~R(x)", &sig()).unwrap();
        let mut pool = BTreeMap::new();
        pool.insert(1usize, vec![t]);
        let u = FormulaUniverse::build(
            &[fm("ALL X:1. X(c)")],
            vec![Term0::cnst("c")],
            pool,
            UniverseOptions::default(),
        )
        .unwrap();
        assert!(u.contains(&fm("~R(c)")));
        assert!(u.contains(&fm("R(c)")));
    }

    #[test]
    fn alpha_deduplication() {
        let u = FormulaUniverse::build(
            &[fm("EX x. R(x)"), fm("EX y. R(y)")],
            vec![],
            BTreeMap::new(),
            UniverseOptions::default(),
        )
        .unwrap();
        assert_eq!(u.len(), 1);
    }

    #[test]
    fn size_guard() {
        let opts = UniverseOptions {
            max_size: 2,
            ..UniverseOptions::default()
        };
        let err = FormulaUniverse::build(
            &[fm("P & (Q | (R & (S | T)))")],
            vec![],
            BTreeMap::new(),
            opts,
        )
        .unwrap_err();
        assert!(matches!(err, ValuationError::UniverseTooLarge(_)));
    }
}
