//! Semi-valuations: a table from universe formulas to pairs, constrained
//! by information-order inequalities against the connective and quantifier
//! clauses (with the quantifiers ranging over the universe's witness
//! pools). The check reports every instance with both sides, so a failure
//! names its witness.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::universe::FormulaUniverse;
use super::ValuationError;
use crate::calculus::Sequent;
use crate::cba::{Cba, DAlg, DPair};
use crate::syntax::{subst_first, subst_second, Formula};

#[derive(Debug, Clone)]
pub struct SemiValuation {
    alg: Arc<dyn Cba>,
    universe: FormulaUniverse,
    table: BTreeMap<Formula, DPair>, // keyed by alpha-normal form
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValEntry {
    pub condition: String,
    pub subject: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValReport {
    pub entries: Vec<ValEntry>,
}

impl ValReport {
    pub fn ok(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }
    pub fn first_failure(&self) -> Option<&ValEntry> {
        self.entries.iter().find(|e| !e.pass)
    }
    pub fn push(&mut self, condition: &str, subject: String, lhs: String, rhs: String, pass: bool) {
        self.entries.push(ValEntry {
            condition: condition.to_string(),
            subject,
            lhs,
            rhs,
            pass,
        });
    }
}

impl fmt::Display for ValReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(
                f,
                "{} {} | {} : {} vs {}",
                if e.pass { "pass" } else { "FAIL" },
                e.condition,
                e.subject,
                e.lhs,
                e.rhs
            )?;
        }
        Ok(())
    }
}

impl SemiValuation {
    /// Build from explicit assignments; every universe formula needs a
    /// value and every value must satisfy the pair invariant.
    pub fn new(
        alg: Arc<dyn Cba>,
        universe: FormulaUniverse,
        assignments: impl IntoIterator<Item = (Formula, DPair)>,
    ) -> Result<Self, ValuationError> {
        let mut table = BTreeMap::new();
        for (f, v) in assignments {
            if !alg.leq(v.bx, v.dia) {
                return Err(ValuationError::InvalidPair(f.to_string()));
            }
            table.insert(f.alpha_normalize(), v);
        }
        for f in universe.formulas() {
            if !table.contains_key(&f.alpha_normalize()) {
                return Err(ValuationError::MissingFormula(f.to_string()));
            }
        }
        Ok(SemiValuation {
            alg,
            universe,
            table,
        })
    }

    pub fn algebra(&self) -> &dyn Cba {
        self.alg.as_ref()
    }

    pub fn algebra_arc(&self) -> Arc<dyn Cba> {
        Arc::clone(&self.alg)
    }

    pub fn universe(&self) -> &FormulaUniverse {
        &self.universe
    }

    pub fn value(&self, f: &Formula) -> Option<DPair> {
        self.table.get(&f.alpha_normalize()).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Formula, DPair)> {
        self.universe
            .formulas()
            .iter()
            .map(move |f| (f, self.value(f).expect("table is total on the universe")))
    }

    /// Check the four defining inequality families on every universe
    /// formula of the corresponding shape.
    pub fn check(&self) -> ValReport {
        let d = DAlg::new(self.alg.as_ref());
        let mut report = ValReport::default();
        let show = |p: DPair| d.label(p);
        for f in self.universe.formulas() {
            let Some(lhs) = self.value(f) else {
                report.push("table", f.to_string(), "missing".into(), String::new(), false);
                continue;
            };
            match f {
                Formula::Atom(_, _) => {}
                Formula::Not(g) => {
                    let Some(vg) = self.value(g) else {
                        report.push("neg", f.to_string(), "missing operand".into(), String::new(), false);
                        continue;
                    };
                    let rhs = d.neg(vg);
                    report.push(
                        "neg",
                        f.to_string(),
                        show(lhs),
                        show(rhs),
                        d.tri(lhs, rhs),
                    );
                }
                Formula::Or(a, b) | Formula::And(a, b) => {
                    let (Some(va), Some(vb)) = (self.value(a), self.value(b)) else {
                        report.push("binary", f.to_string(), "missing operand".into(), String::new(), false);
                        continue;
                    };
                    let (name, rhs) = if matches!(f, Formula::Or(_, _)) {
                        ("or", d.sup_leq(&[va, vb]))
                    } else {
                        ("and", d.inf_leq(&[va, vb]))
                    };
                    report.push(name, f.to_string(), show(lhs), show(rhs), d.tri(lhs, rhs));
                }
                Formula::Exists0(x, g) | Formula::Forall0(x, g) => {
                    let mut vals = Vec::new();
                    let mut missing = false;
                    for t in &self.universe.term_pool {
                        match self.value(&subst_first(g, x, t)) {
                            Some(v) => vals.push(v),
                            None => missing = true,
                        }
                    }
                    if missing {
                        report.push("quant0", f.to_string(), "missing instance".into(), String::new(), false);
                        continue;
                    }
                    let (name, rhs) = if matches!(f, Formula::Exists0(_, _)) {
                        ("exists0", d.sup_leq(&vals))
                    } else {
                        ("forall0", d.inf_leq(&vals))
                    };
                    report.push(name, f.to_string(), show(lhs), show(rhs), d.tri(lhs, rhs));
                }
                Formula::Exists1(sv, g) | Formula::Forall1(sv, g) => {
                    let mut vals = Vec::new();
                    let mut missing = false;
                    for t in self.universe.pool(sv.arity) {
                        match subst_second(g, sv, t) {
                            Ok(inst) => match self.value(&inst) {
                                Some(v) => vals.push(v),
                                None => missing = true,
                            },
                            Err(_) => missing = true,
                        }
                    }
                    if missing {
                        report.push("quant1", f.to_string(), "missing instance".into(), String::new(), false);
                        continue;
                    }
                    let (name, rhs) = if matches!(f, Formula::Exists1(_, _)) {
                        ("exists1", d.sup_leq(&vals))
                    } else {
                        ("forall1", d.inf_leq(&vals))
                    };
                    report.push(name, f.to_string(), show(lhs), show(rhs), d.tri(lhs, rhs));
                }
            }
        }
        report
    }
}

/// The soundness inequality for a sequent: the infimum of the box values
/// on the antecedent lies below the supremum of the diamond values on the
/// succedent (empty infimum is 1, empty supremum is 0). Provability —
/// cut-free or with cut — guarantees it; the converse is not claimed.
pub fn soundness_check(seq: &Sequent, v: &SemiValuation) -> Result<bool, ValuationError> {
    let alg = v.algebra();
    let mut boxes = Vec::new();
    for a in seq.ant.iter() {
        let val = v
            .value(a)
            .ok_or_else(|| ValuationError::MissingFormula(a.to_string()))?;
        boxes.push(val.bx);
    }
    let mut dias = Vec::new();
    for b in seq.suc.iter() {
        let val = v
            .value(b)
            .ok_or_else(|| ValuationError::MissingFormula(b.to_string()))?;
        dias.push(val.dia);
    }
    Ok(alg.leq(alg.inf(&boxes), alg.sup(&dias)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cba::PowersetAlg;
    use crate::syntax::{parse_formula, Signature};
    use std::collections::BTreeMap as Map;

    fn fm(s: &str) -> Formula {
        parse_formula(s, &Signature::default()).unwrap()
    }

    fn make(vals: &[(&str, &str)]) -> SemiValuation {
        let alg = Arc::new(PowersetAlg::two());
        let d = DAlg::new(alg.as_ref());
        let seeds: Vec<Formula> = vals.iter().map(|(s, _)| fm(s)).collect();
        let universe =
            FormulaUniverse::build(&seeds, vec![], Map::new(), Default::default()).unwrap();
        let named = |n: &str| match n {
            "t" => d.top(),
            "f" => d.bot(),
            _ => d.undet(),
        };
        let mut table: Vec<(Formula, DPair)> = Vec::new();
        for f in universe.formulas() {
            let v = vals
                .iter()
                .find(|(s, _)| crate::syntax::alpha_eq(&fm(s), f))
                .map(|(_, v)| named(v))
                .unwrap_or(d.undet());
            table.push((f.clone(), v));
        }
        SemiValuation::new(alg, universe, table).unwrap()
    }

    #[test]
    fn branch_style_valuation_passes() {
        // failed search of => P & Q: P&Q false, P false, Q untouched
        let v = make(&[("P & Q", "f"), ("P", "f"), ("Q", "u")]);
        let r = v.check();
        assert!(r.ok(), "{r}");
    }

    #[test]
    fn negation_condition_fails_with_witness() {
        let v = make(&[("~P", "t"), ("P", "t")]);
        let r = v.check();
        assert!(!r.ok());
        let e = r.first_failure().unwrap();
        assert_eq!(e.condition, "neg");
    }

    #[test]
    fn everywhere_undetermined_passes() {
        let v = make(&[("P | (Q & ~P)", "u")]);
        assert!(v.check().ok());
    }

    #[test]
    fn soundness_inequality() {
        let v = make(&[("P", "u")]);
        let seq = Sequent::parse("P => P", &Signature::default()).unwrap();
        assert!(soundness_check(&seq, &v).unwrap());

        let v = make(&[("P", "f")]);
        let seq = Sequent::parse("=> P", &Signature::default()).unwrap();
        assert!(!soundness_check(&seq, &v).unwrap());
    }
}
