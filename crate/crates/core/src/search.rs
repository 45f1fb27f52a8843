//! Canonical cut-free proof search. A fair FIFO agenda of
//! (occurrence, rule, witness-index) tasks drives a tableau-style
//! expansion over set-based cedents: a branch closes when an atomic
//! formula shows up on both sides, weak quantifier occurrences re-enqueue
//! themselves with the next witness from their pool, and strong
//! quantifiers draw eigenvariables from a reserved namespace. Pools grow
//! along a branch: every eigenvariable becomes available as a witness, so
//! a saturated open branch assigns a value to each of its formulas in a
//! way the semi-valuation conditions accept.
//!
//! Proved outcomes carry a full derivation that the checker accepts
//! cut-free; Refuted outcomes carry the saturated branch; Exhausted means
//! a budget tripped first and claims nothing.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::{Arc, Mutex};

use crate::calculus::{
    check_proof, CheckError, CheckOptions, Cedent, Fragment, Instantiation, OracleVerdict,
    ProofTree, ProvabilityOracle, RuleTag, Sequent,
};
use crate::cba::PowersetAlg;
use crate::syntax::{subst_first, subst_second, Abstract, Formula, SecVar, Term0};
use crate::valuation::{FormulaUniverse, SemiValuation, ValuationError};

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub term_pool: Vec<Term0>,
    pub abstract_pool: BTreeMap<usize, Vec<Abstract>>,
    pub node_budget: u64,
    pub depth_budget: usize,
    pub fragment: Fragment,
    /// Extra names (beyond those occurring in the goal and pools) that
    /// eigenvariables must avoid, e.g. signature symbols.
    pub reserved: BTreeSet<String>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            term_pool: Vec::new(),
            abstract_pool: BTreeMap::new(),
            node_budget: 20_000,
            depth_budget: 400,
            fragment: Fragment::Full,
            reserved: BTreeSet::new(),
        }
    }
}

impl SearchConfig {
    pub fn with_terms(mut self, terms: Vec<Term0>) -> Self {
        self.term_pool = terms;
        self
    }
    pub fn with_abstracts(mut self, abstracts: Vec<Abstract>) -> Self {
        for t in abstracts {
            self.abstract_pool.entry(t.arity()).or_default().push(t);
        }
        self
    }
}

/// A saturated open branch: the formulas that accumulated on each side,
/// plus the witness pools as they stood at saturation (the configured
/// pools extended by the branch's eigenvariables).
#[derive(Debug, Clone)]
pub struct Branch {
    pub ant: Cedent,
    pub suc: Cedent,
    pub term_pool: Vec<Term0>,
    pub abstract_pool: BTreeMap<usize, Vec<Abstract>>,
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Proved(ProofTree),
    Refuted(Branch),
    Exhausted,
}

impl SearchOutcome {
    pub fn kind(&self) -> &'static str {
        match self {
            SearchOutcome::Proved(_) => "proved",
            SearchOutcome::Refuted(_) => "refuted",
            SearchOutcome::Exhausted => "exhausted",
        }
    }
}

#[derive(Debug, Clone)]
struct Task {
    left: bool,
    formula: Formula,
    stage: usize,
}

#[derive(Debug, Clone)]
struct BranchState {
    ant: Cedent,
    suc: Cedent,
    agenda: VecDeque<Task>,
    stalled: Vec<Task>, // weak tasks waiting for new witnesses
    terms: Vec<Term0>,
    abstracts: BTreeMap<usize, Vec<Abstract>>,
    closed: Option<Formula>,
    depth: usize,
}

impl BranchState {
    fn sequent(&self) -> Sequent {
        Sequent::new(self.ant.clone(), self.suc.clone())
    }

    /// Insert a formula, enqueue its task, track closure.
    fn add(&mut self, left: bool, f: Formula) {
        let new = if left {
            self.ant.insert(f.clone())
        } else {
            self.suc.insert(f.clone())
        };
        if !new {
            return;
        }
        if f.is_atomic() {
            let other = if left { &self.suc } else { &self.ant };
            if other.contains(&f) && self.closed.is_none() {
                self.closed = Some(f);
            }
        } else {
            self.agenda.push_back(Task {
                left,
                formula: f,
                stage: 0,
            });
        }
    }

    fn side_contains(&self, left: bool, f: &Formula) -> bool {
        if left {
            self.ant.contains(f)
        } else {
            self.suc.contains(f)
        }
    }

    fn wake_stalled(&mut self) {
        for t in self.stalled.drain(..) {
            self.agenda.push_back(t);
        }
    }
}

enum NodeResult {
    Proved(ProofTree),
    Refuted(Branch),
    Exhausted,
}

struct Searcher {
    fragment: Fragment,
    node_budget: u64,
    depth_budget: usize,
    used_names: BTreeSet<String>,
    next0: usize,
    next1: usize,
    nodes: u64,
}

impl Searcher {
    fn fresh0(&mut self) -> String {
        loop {
            self.next0 += 1;
            let name = format!("a{}", self.next0);
            if self.used_names.insert(name.clone()) {
                return name;
            }
        }
    }

    fn fresh1(&mut self, arity: usize) -> SecVar {
        loop {
            self.next1 += 1;
            let name = format!("Y{}", self.next1);
            if self.used_names.insert(name.clone()) {
                return SecVar::new(name, arity);
            }
        }
    }

    fn expand(&mut self, mut st: BranchState) -> NodeResult {
        loop {
            if let Some(atom) = st.closed.clone() {
                return NodeResult::Proved(ProofTree::initial(st.sequent(), atom));
            }
            let Some(task) = st.agenda.pop_front() else {
                return NodeResult::Refuted(Branch {
                    ant: st.ant,
                    suc: st.suc,
                    term_pool: st.terms,
                    abstract_pool: st.abstracts,
                });
            };
            if st.depth >= self.depth_budget {
                return NodeResult::Exhausted;
            }
            self.nodes += 1;
            if self.nodes > self.node_budget {
                return NodeResult::Exhausted;
            }

            let concl = st.sequent();
            let left = task.left;
            let major = task.formula.clone();
            match &major {
                Formula::Not(inner) => {
                    let minor = (**inner).clone();
                    if st.side_contains(!left, &minor) {
                        continue;
                    }
                    let mut child = st;
                    child.depth += 1;
                    child.add(!left, minor);
                    let rule = if left { RuleTag::LNot } else { RuleTag::RNot };
                    let sub = self.expand(child);
                    return wrap_unary(sub, concl, rule, Instantiation::Major { major });
                }
                Formula::Or(f0, f1) if left => {
                    let (m0, m1) = ((**f0).clone(), (**f1).clone());
                    if st.ant.contains(&m0) && st.ant.contains(&m1) {
                        continue;
                    }
                    let mut lchild = st.clone();
                    lchild.depth += 1;
                    lchild.add(true, m0);
                    let mut rchild = st;
                    rchild.depth += 1;
                    rchild.add(true, m1);
                    return self.binary(concl, RuleTag::LOr, Instantiation::Major { major }, lchild, rchild);
                }
                Formula::And(f0, f1) if !left => {
                    let (m0, m1) = ((**f0).clone(), (**f1).clone());
                    if st.suc.contains(&m0) && st.suc.contains(&m1) {
                        continue;
                    }
                    let mut lchild = st.clone();
                    lchild.depth += 1;
                    lchild.add(false, m0);
                    let mut rchild = st;
                    rchild.depth += 1;
                    rchild.add(false, m1);
                    return self.binary(concl, RuleTag::RAnd, Instantiation::Major { major }, lchild, rchild);
                }
                Formula::Or(f0, f1) | Formula::And(f0, f1) => {
                    // ROr / LAnd: one disjunct or conjunct per visit
                    let rule = if left { RuleTag::LAnd } else { RuleTag::ROr };
                    let index = task.stage;
                    let minor = if index == 0 { (**f0).clone() } else { (**f1).clone() };
                    if st.side_contains(left, &minor) {
                        if index == 0 {
                            st.agenda.push_back(Task { stage: 1, ..task });
                        }
                        continue;
                    }
                    let mut child = st;
                    child.depth += 1;
                    if index == 0 {
                        child.agenda.push_back(Task { stage: 1, ..task });
                    }
                    child.add(left, minor);
                    let sub = self.expand(child);
                    return wrap_unary(sub, concl, rule, Instantiation::Indexed { major, index });
                }
                Formula::Exists0(x, body) if left => {
                    let (rule, x, body) = (RuleTag::LEx0, x, body);
                    let eigen = self.fresh0();
                    let minor = subst_first(body, x, &Term0::Var(eigen.clone()));
                    let mut child = st;
                    child.depth += 1;
                    child.add(left, minor);
                    child.terms.push(Term0::Var(eigen.clone()));
                    child.wake_stalled();
                    let sub = self.expand(child);
                    return wrap_unary(sub, concl, rule, Instantiation::FirstEigen { major, eigen });
                }
                Formula::Forall0(x, body) if !left => {
                    let eigen = self.fresh0();
                    let minor = subst_first(body, x, &Term0::Var(eigen.clone()));
                    let mut child = st;
                    child.depth += 1;
                    child.add(left, minor);
                    child.terms.push(Term0::Var(eigen.clone()));
                    child.wake_stalled();
                    let sub = self.expand(child);
                    return wrap_unary(sub, concl, RuleTag::RAll0, Instantiation::FirstEigen { major, eigen });
                }
                Formula::Exists0(x, body) | Formula::Forall0(x, body) => {
                    // REx0 / LAll0: next witness from the (growing) term pool
                    let rule = if left { RuleTag::LAll0 } else { RuleTag::REx0 };
                    if task.stage >= st.terms.len() {
                        st.stalled.push(task);
                        continue;
                    }
                    let witness = st.terms[task.stage].clone();
                    let next = Task {
                        stage: task.stage + 1,
                        ..task.clone()
                    };
                    let minor = subst_first(body, x, &witness);
                    if st.side_contains(left, &minor) {
                        st.agenda.push_back(next);
                        continue;
                    }
                    let mut child = st;
                    child.depth += 1;
                    child.agenda.push_back(next);
                    child.add(left, minor);
                    let sub = self.expand(child);
                    return wrap_unary(sub, concl, rule, Instantiation::TermWitness { major, witness });
                }
                Formula::Exists1(sv, body) if left => {
                    if self.fragment == Fragment::FirstOrder {
                        continue;
                    }
                    let eigen = self.fresh1(sv.arity);
                    let minor = subst_second(body, sv, &Abstract::eta(&eigen))
                        .expect("eta abstract arity matches the binder");
                    let mut child = st;
                    child.depth += 1;
                    child.add(left, minor);
                    child
                        .abstracts
                        .entry(eigen.arity)
                        .or_default()
                        .push(Abstract::eta(&eigen));
                    child.wake_stalled();
                    let sub = self.expand(child);
                    return wrap_unary(sub, concl, RuleTag::LEx1, Instantiation::SecondEigen { major, eigen });
                }
                Formula::Forall1(sv, body) if !left => {
                    if self.fragment == Fragment::FirstOrder {
                        continue;
                    }
                    let eigen = self.fresh1(sv.arity);
                    let minor = subst_second(body, sv, &Abstract::eta(&eigen))
                        .expect("eta abstract arity matches the binder");
                    let mut child = st;
                    child.depth += 1;
                    child.add(left, minor);
                    child
                        .abstracts
                        .entry(eigen.arity)
                        .or_default()
                        .push(Abstract::eta(&eigen));
                    child.wake_stalled();
                    let sub = self.expand(child);
                    return wrap_unary(sub, concl, RuleTag::RAll1, Instantiation::SecondEigen { major, eigen });
                }
                Formula::Exists1(sv, body) | Formula::Forall1(sv, body) => {
                    // REx1 / LAll1: next abstract of the right arity
                    if self.fragment == Fragment::FirstOrder {
                        continue;
                    }
                    let rule = if left { RuleTag::LAll1 } else { RuleTag::REx1 };
                    let pool_len = st.abstracts.get(&sv.arity).map_or(0, |v| v.len());
                    if task.stage >= pool_len {
                        st.stalled.push(task);
                        continue;
                    }
                    let witness = st.abstracts[&sv.arity][task.stage].clone();
                    let next = Task {
                        stage: task.stage + 1,
                        ..task.clone()
                    };
                    if !crate::calculus::fragment_allows(self.fragment, &witness) {
                        st.agenda.push_back(next);
                        continue;
                    }
                    let Ok(minor) = subst_second(body, sv, &witness) else {
                        st.agenda.push_back(next);
                        continue;
                    };
                    if st.side_contains(left, &minor) {
                        st.agenda.push_back(next);
                        continue;
                    }
                    let mut child = st;
                    child.depth += 1;
                    child.agenda.push_back(next);
                    child.add(left, minor);
                    let sub = self.expand(child);
                    return wrap_unary(sub, concl, rule, Instantiation::AbstractWitness { major, witness });
                }
                Formula::Atom(_, _) => continue, // atoms carry no task
            }
        }
    }

    fn binary(
        &mut self,
        concl: Sequent,
        rule: RuleTag,
        inst: Instantiation,
        left: BranchState,
        right: BranchState,
    ) -> NodeResult {
        let first = match self.expand(left) {
            NodeResult::Proved(t) => t,
            other => return other,
        };
        let second = match self.expand(right) {
            NodeResult::Proved(t) => t,
            other => return other,
        };
        NodeResult::Proved(ProofTree {
            conclusion: concl,
            rule,
            inst,
            premises: vec![first, second],
        })
    }
}

fn wrap_unary(sub: NodeResult, conclusion: Sequent, rule: RuleTag, inst: Instantiation) -> NodeResult {
    match sub {
        NodeResult::Proved(t) => NodeResult::Proved(ProofTree {
            conclusion,
            rule,
            inst,
            premises: vec![t],
        }),
        other => other,
    }
}

/// Search for a cut-free proof of `s` under the given pools and budgets.
/// The schedule is a fixed FIFO, so identical inputs give identical
/// outcomes.
pub fn canonical_search(s: &Sequent, cfg: &SearchConfig) -> SearchOutcome {
    if cfg.node_budget == 0 || cfg.depth_budget == 0 {
        return SearchOutcome::Exhausted;
    }
    let mut used_names: BTreeSet<String> = s.all_names();
    used_names.extend(cfg.reserved.iter().cloned());
    for t in &cfg.term_pool {
        match t {
            Term0::Const(c) => {
                used_names.insert(c.clone());
            }
            _ => used_names.extend(t.free_vars()),
        }
    }
    for ts in cfg.abstract_pool.values() {
        for t in ts {
            used_names.extend(t.body.all_names());
            used_names.extend(t.params.iter().cloned());
        }
    }

    let mut searcher = Searcher {
        fragment: cfg.fragment,
        node_budget: cfg.node_budget,
        depth_budget: cfg.depth_budget,
        used_names,
        next0: 0,
        next1: 0,
        nodes: 0,
    };

    let mut st = BranchState {
        ant: Cedent::new(),
        suc: Cedent::new(),
        agenda: VecDeque::new(),
        stalled: Vec::new(),
        terms: dedup_terms(&cfg.term_pool),
        abstracts: dedup_abstracts(&cfg.abstract_pool),
        closed: None,
        depth: 0,
    };
    for f in s.ant.iter() {
        st.add(true, f.clone());
    }
    for f in s.suc.iter() {
        st.add(false, f.clone());
    }

    match searcher.expand(st) {
        NodeResult::Proved(t) => {
            debug_assert_eq!(t.conclusion, *s);
            SearchOutcome::Proved(t)
        }
        NodeResult::Refuted(b) => SearchOutcome::Refuted(b),
        NodeResult::Exhausted => SearchOutcome::Exhausted,
    }
}

fn dedup_terms(pool: &[Term0]) -> Vec<Term0> {
    let mut seen = BTreeSet::new();
    pool.iter()
        .filter(|t| seen.insert((*t).clone()))
        .cloned()
        .collect()
}

fn dedup_abstracts(pool: &BTreeMap<usize, Vec<Abstract>>) -> BTreeMap<usize, Vec<Abstract>> {
    let mut out: BTreeMap<usize, Vec<Abstract>> = BTreeMap::new();
    for (&ar, ts) in pool {
        let mut seen = BTreeSet::new();
        let list: Vec<Abstract> = ts
            .iter()
            .filter(|t| t.arity() == ar && seen.insert(t.alpha_normalize()))
            .cloned()
            .collect();
        if !list.is_empty() {
            out.insert(ar, list);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("sequent is not quantifier-free")]
    NotQuantifierFree,
    #[error("input proof is invalid: {0}")]
    BadInputProof(CheckError),
    #[error("branch carries `{0}` on both sides")]
    IncoherentBranch(String),
    #[error(transparent)]
    Valuation(ValuationError),
}

/// Decide cut-free provability of a quantifier-free sequent. On this
/// fragment the canonical search is a decision procedure and agrees with
/// truth-table validity.
pub fn decide_cut_free(s: &Sequent) -> Result<bool, SearchError> {
    if !s.is_quantifier_free() {
        return Err(SearchError::NotQuantifierFree);
    }
    let cfg = SearchConfig {
        node_budget: u64::MAX,
        depth_budget: usize::MAX,
        ..SearchConfig::default()
    };
    match canonical_search(s, &cfg) {
        SearchOutcome::Proved(_) => Ok(true),
        SearchOutcome::Refuted(_) => Ok(false),
        SearchOutcome::Exhausted => unreachable!("propositional search terminates"),
    }
}

/// Convert a saturated branch into a semi-valuation over the three-valued
/// algebra: branch antecedent formulas become definitely true, succedent
/// formulas definitely false, everything else undetermined. The universe
/// is generated from the branch formulas and the branch's (extended)
/// pools.
pub fn branch_to_semival(b: &Branch) -> Result<SemiValuation, SearchError> {
    let seeds: Vec<Formula> = b.ant.iter().chain(b.suc.iter()).cloned().collect();
    let universe = FormulaUniverse::build(
        &seeds,
        b.term_pool.clone(),
        b.abstract_pool.clone(),
        Default::default(),
    )
    .map_err(SearchError::Valuation)?;
    let alg = Arc::new(PowersetAlg::two());
    let d = crate::cba::DAlg::new(alg.as_ref());
    let (top, bot, undet) = (d.top(), d.bot(), d.undet());
    let mut table = Vec::new();
    for f in universe.formulas() {
        let in_ant = b.ant.contains(f);
        let in_suc = b.suc.contains(f);
        let value = match (in_ant, in_suc) {
            (true, true) => return Err(SearchError::IncoherentBranch(f.to_string())),
            (true, false) => top,
            (false, true) => bot,
            (false, false) => undet,
        };
        table.push((f.clone(), value));
    }
    SemiValuation::new(alg, universe, table).map_err(SearchError::Valuation)
}

#[derive(Debug, Clone)]
pub enum HauptsatzOutcome {
    CutFree(ProofTree),
    Exhausted,
}

/// Check a (possibly cut-bearing) proof and search for a cut-free proof of
/// its end-sequent. Saturation without closure is reported as `Exhausted`
/// too: with finite pools the search never claims non-existence.
pub fn hauptsatz_pipeline(p: &ProofTree, cfg: &SearchConfig) -> Result<HauptsatzOutcome, SearchError> {
    let opts = CheckOptions {
        allow_cut: true,
        fragment: cfg.fragment,
    };
    check_proof(p, &opts).map_err(SearchError::BadInputProof)?;
    match canonical_search(&p.conclusion, cfg) {
        SearchOutcome::Proved(t) => {
            debug_assert!(check_proof(
                &t,
                &CheckOptions {
                    allow_cut: false,
                    fragment: cfg.fragment
                }
            )
            .is_ok());
            Ok(HauptsatzOutcome::CutFree(t))
        }
        _ => Ok(HauptsatzOutcome::Exhausted),
    }
}

/// Memoizing oracle backed by [`decide_cut_free`]; answers `Unknown` on
/// anything outside the quantifier-free fragment.
#[derive(Default)]
pub struct CutFreeOracle {
    cache: Mutex<BTreeMap<String, bool>>,
}

impl CutFreeOracle {
    pub fn new() -> Self {
        Self::default()
    }
}

impl std::fmt::Debug for CutFreeOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("CutFreeOracle")
    }
}

impl ProvabilityOracle for CutFreeOracle {
    fn decide(&self, s: &Sequent) -> OracleVerdict {
        if !s.is_quantifier_free() {
            return OracleVerdict::Unknown;
        }
        let key = s.canonical_string();
        if let Some(&v) = self.cache.lock().unwrap().get(&key) {
            return if v {
                OracleVerdict::Provable
            } else {
                OracleVerdict::Unprovable
            };
        }
        let v = decide_cut_free(s).expect("quantifier-free checked above");
        self.cache.lock().unwrap().insert(key, v);
        if v {
            OracleVerdict::Provable
        } else {
            OracleVerdict::Unprovable
        }
    }
}

/// Budget-bounded oracle running the full canonical search. `Proved` is
/// definitive; `Refuted` is definitive only on the quantifier-free
/// fragment (elsewhere the pools may simply have been too small), and
/// everything else is `Unknown`.
#[derive(Debug, Clone)]
pub struct BudgetOracle {
    pub cfg: SearchConfig,
}

impl ProvabilityOracle for BudgetOracle {
    fn decide(&self, s: &Sequent) -> OracleVerdict {
        match canonical_search(s, &self.cfg) {
            SearchOutcome::Proved(_) => OracleVerdict::Provable,
            SearchOutcome::Refuted(_) if s.is_quantifier_free() => OracleVerdict::Unprovable,
            _ => OracleVerdict::Unknown,
        }
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
    fn sq(text: &str) -> Sequent {
        Sequent::parse(text, &sig()).unwrap()
    }

    #[test]
    fn excluded_middle_is_proved_and_checkable() {
        let outcome = canonical_search(&sq("=> P | ~P"), &SearchConfig::default());
        let SearchOutcome::Proved(t) = outcome else {
            panic!("expected a proof");
        };
        assert!(check_proof(&t, &CheckOptions::default()).is_ok());
        assert!(!t.contains_cut());
        assert!(crate::calculus::pure_variable(&t));
    }

    #[test]
    fn unprovable_sequent_saturates() {
        let outcome = canonical_search(&sq("P => Q"), &SearchConfig::default());
        let SearchOutcome::Refuted(b) = outcome else {
            panic!("expected saturation");
        };
        assert!(b.ant.contains(&parse_formula("P", &sig()).unwrap()));
        assert!(b.suc.contains(&parse_formula("Q", &sig()).unwrap()));
        let v = branch_to_semival(&b).unwrap();
        assert!(v.check().ok());
    }

    #[test]
    fn second_order_excluded_middle() {
        let outcome = canonical_search(&sq("=> ALL X:1. (~X(c) | X(c))"), &SearchConfig::default());
        let SearchOutcome::Proved(t) = outcome else {
            panic!("expected a proof");
        };
        assert!(check_proof(&t, &CheckOptions::default()).is_ok());
        assert!(crate::calculus::pure_variable(&t));
    }

    #[test]
    fn first_order_with_pools() {
        let cfg = SearchConfig::default().with_terms(vec![Term0::cnst("c")]);
        let outcome = canonical_search(&sq("ALL x. R(x) => R(c)"), &cfg);
        assert!(matches!(outcome, SearchOutcome::Proved(_)));

        let mut s2 = sig();
        s2.funcs.insert("f".into(), 1);
        let seq = Sequent::parse("=> EX x. (~R(x) | R(f(x)))", &s2).unwrap();
        let cfg = SearchConfig::default().with_terms(vec![
            Term0::cnst("c"),
            Term0::App("f".into(), vec![Term0::cnst("c")]),
        ]);
        let outcome = canonical_search(&seq, &cfg);
        assert!(matches!(outcome, SearchOutcome::Proved(_)));
    }

    #[test]
    fn second_order_witness_from_pool() {
        let t = parse_abstract("\\x. R(x)", &sig()).unwrap();
        let cfg = SearchConfig::default().with_abstracts(vec![t]);
        let outcome = canonical_search(&sq("=> EX X:1. (~X(c) | R(c))"), &cfg);
        match outcome {
            SearchOutcome::Proved(t) => {
                assert!(check_proof(&t, &CheckOptions::default()).is_ok())
            }
            other => panic!("expected proof, got {}", other.kind()),
        }
    }

    #[test]
    fn eigenvariable_feeds_weak_occurrences() {
        // the eigenvariable introduced on the right universal must become
        // a witness for the left universal
        let outcome = canonical_search(&sq("ALL x. R(x) => ALL y. R(y)"), &SearchConfig::default());
        assert!(matches!(outcome, SearchOutcome::Proved(_)));
    }

    #[test]
    fn decision_procedure_examples() {
        assert!(decide_cut_free(&sq("P | ~P => P | ~P")).unwrap());
        assert!(!decide_cut_free(&sq("=> P")).unwrap());
        assert!(decide_cut_free(&sq("P & Q => Q & P")).unwrap());
        assert!(!decide_cut_free(&sq("=>")).unwrap());
        assert!(decide_cut_free(&sq("=> EX x. R(x)")).is_err());
    }

    #[test]
    fn zero_budget_exhausts() {
        let cfg = SearchConfig {
            node_budget: 0,
            ..SearchConfig::default()
        };
        assert!(matches!(
            canonical_search(&sq("=> P | ~P"), &cfg),
            SearchOutcome::Exhausted
        ));
    }

    #[test]
    fn search_is_deterministic() {
        let cfg = SearchConfig::default();
        let a = canonical_search(&sq("=> (P | Q) | ~P"), &cfg);
        let b = canonical_search(&sq("=> (P | Q) | ~P"), &cfg);
        match (a, b) {
            (SearchOutcome::Proved(x), SearchOutcome::Proved(y)) => assert_eq!(x, y),
            _ => panic!("expected two proofs"),
        }
    }

    #[test]
    fn branch_semival_for_failed_conjunction() {
        let outcome = canonical_search(&sq("=> P & Q"), &SearchConfig::default());
        let SearchOutcome::Refuted(b) = outcome else {
            panic!("expected saturation");
        };
        let v = branch_to_semival(&b).unwrap();
        let report = v.check();
        assert!(report.ok(), "{:?}", report.first_failure());
        let d = crate::cba::DAlg::new(v.algebra());
        let pq = parse_formula("P & Q", &sig()).unwrap();
        assert_eq!(v.value(&pq), Some(d.bot()));
    }

    #[test]
    fn hauptsatz_on_cut_proof() {
        let goal = sq("=> P | ~P");
        let SearchOutcome::Proved(left) =
            canonical_search(&sq("=> P | ~P, P"), &SearchConfig::default())
        else {
            panic!()
        };
        let SearchOutcome::Proved(right) =
            canonical_search(&sq("P => P | ~P"), &SearchConfig::default())
        else {
            panic!()
        };
        let with_cut = ProofTree {
            conclusion: goal.clone(),
            rule: RuleTag::Cut,
            inst: Instantiation::CutSplit {
                cut_formula: parse_formula("P", &sig()).unwrap(),
                left: sq("=> P | ~P"),
                right: sq("=> P | ~P"),
            },
            premises: vec![left, right],
        };
        assert!(check_proof(&with_cut, &CheckOptions::with_cut()).is_ok());
        assert!(check_proof(&with_cut, &CheckOptions::default()).is_err());
        let out = hauptsatz_pipeline(&with_cut, &SearchConfig::default()).unwrap();
        let HauptsatzOutcome::CutFree(t) = out else {
            panic!("expected cut-free proof");
        };
        assert_eq!(t.conclusion, goal);
        assert!(!t.contains_cut());
    }
}
