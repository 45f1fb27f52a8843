//! JSON artifacts. Proofs, search outcomes, valuations and reports all
//! serialize to one tree-structured format with formulas as grammar
//! strings; a file's signature block travels with it so the strings can
//! be parsed back. Cedent arrays are emitted in canonical order, which
//! makes serialization deterministic.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::calculus::{CheckOptions, Fragment, Instantiation, ProofTree, RuleTag, Sequent};
use crate::cba::{Cba, DAlg, LawCheck, LawReport, PowersetAlg, RelationCba, RelationMap};
use crate::search::{Branch, SearchConfig, SearchOutcome};
use crate::syntax::{
    parse_abstract, parse_formula, Abstract, Formula, Signature, SyntaxError, Term0,
};
use crate::valuation::{
    EndgameReport, FormulaUniverse, MaeharaValuation, SemiValuation, ValReport, ValuationError,
};

#[derive(Debug, thiserror::Error)]
pub enum SerialError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("bad artifact: {0}")]
    Schema(String),
    #[error(transparent)]
    Valuation(#[from] ValuationError),
}

fn schema(msg: impl Into<String>) -> SerialError {
    SerialError::Schema(msg.into())
}

fn get<'v>(v: &'v Value, key: &str) -> Result<&'v Value, SerialError> {
    v.get(key).ok_or_else(|| schema(format!("missing `{key}`")))
}

fn as_str<'v>(v: &'v Value, what: &str) -> Result<&'v str, SerialError> {
    v.as_str().ok_or_else(|| schema(format!("{what} must be a string")))
}

fn as_arr<'v>(v: &'v Value, what: &str) -> Result<&'v Vec<Value>, SerialError> {
    v.as_array().ok_or_else(|| schema(format!("{what} must be an array")))
}

// ---------------------------------------------------------------- signature

pub fn signature_to_value(sig: &Signature) -> Value {
    json!({
        "consts": sig.consts.iter().collect::<Vec<_>>(),
        "funs": sig.funcs,
        "rels": sig.rels,
    })
}

pub fn signature_from_value(v: &Value) -> Result<Signature, SerialError> {
    let mut sig = Signature::default();
    if let Some(consts) = v.get("consts") {
        for c in as_arr(consts, "consts")? {
            sig.consts.insert(as_str(c, "const")?.to_string());
        }
    }
    for (field, is_fun) in [("funs", true), ("rels", false)] {
        if let Some(entry) = v.get(field) {
            let obj = entry
                .as_object()
                .ok_or_else(|| schema(format!("{field} must be an object")))?;
            for (name, ar) in obj {
                let ar = ar
                    .as_u64()
                    .ok_or_else(|| schema("arity must be a number"))? as usize;
                if is_fun {
                    sig.funcs.insert(name.clone(), ar);
                } else {
                    sig.rels.insert(name.clone(), ar);
                }
            }
        }
    }
    sig.validate()?;
    Ok(sig)
}

// ------------------------------------------------------------------ sequent

pub fn sequent_to_value(s: &Sequent) -> Value {
    json!({
        "ant": s.ant.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "suc": s.suc.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
    })
}

pub fn sequent_from_value(v: &Value, sig: &Signature) -> Result<Sequent, SerialError> {
    let mut ant = Vec::new();
    for f in as_arr(get(v, "ant")?, "ant")? {
        ant.push(parse_formula(as_str(f, "formula")?, sig)?);
    }
    let mut suc = Vec::new();
    for f in as_arr(get(v, "suc")?, "suc")? {
        suc.push(parse_formula(as_str(f, "formula")?, sig)?);
    }
    Ok(Sequent::from_formulas(ant, suc))
}

// -------------------------------------------------------------------- proof

fn instantiation_to_value(inst: &Instantiation) -> Value {
    match inst {
        Instantiation::Initial { atom } => json!({ "atom": atom.to_string() }),
        Instantiation::Major { major } => json!({ "major": major.to_string() }),
        Instantiation::Indexed { major, index } => {
            json!({ "major": major.to_string(), "index": index })
        }
        Instantiation::TermWitness { major, witness } => {
            json!({ "major": major.to_string(), "witness_term": witness.to_string() })
        }
        Instantiation::FirstEigen { major, eigen } => {
            json!({ "major": major.to_string(), "eigen": eigen })
        }
        Instantiation::AbstractWitness { major, witness } => {
            json!({ "major": major.to_string(), "witness_abstract": witness.to_string() })
        }
        Instantiation::SecondEigen { major, eigen } => json!({
            "major": major.to_string(),
            "eigen": eigen.name,
            "eigen_arity": eigen.arity,
        }),
        Instantiation::CutSplit {
            cut_formula,
            left,
            right,
        } => json!({
            "cut_formula": cut_formula.to_string(),
            "left": sequent_to_value(left),
            "right": sequent_to_value(right),
        }),
    }
}

fn instantiation_from_value(
    rule: RuleTag,
    v: &Value,
    sig: &Signature,
) -> Result<Instantiation, SerialError> {
    use RuleTag::*;
    let formula = |key: &str| -> Result<Formula, SerialError> {
        Ok(parse_formula(as_str(get(v, key)?, key)?, sig)?)
    };
    Ok(match rule {
        Initial => Instantiation::Initial { atom: formula("atom")? },
        LNot | RNot | LOr | RAnd => Instantiation::Major {
            major: formula("major")?,
        },
        ROr | LAnd => Instantiation::Indexed {
            major: formula("major")?,
            index: get(v, "index")?
                .as_u64()
                .ok_or_else(|| schema("index must be a number"))? as usize,
        },
        REx0 | LAll0 => Instantiation::TermWitness {
            major: formula("major")?,
            witness: crate::syntax::parse_term(as_str(get(v, "witness_term")?, "witness_term")?, sig)?,
        },
        LEx0 | RAll0 => Instantiation::FirstEigen {
            major: formula("major")?,
            eigen: as_str(get(v, "eigen")?, "eigen")?.to_string(),
        },
        REx1 | LAll1 => Instantiation::AbstractWitness {
            major: formula("major")?,
            witness: parse_abstract(as_str(get(v, "witness_abstract")?, "witness_abstract")?, sig)?,
        },
        LEx1 | RAll1 => Instantiation::SecondEigen {
            major: formula("major")?,
            eigen: crate::syntax::SecVar::new(
                as_str(get(v, "eigen")?, "eigen")?,
                get(v, "eigen_arity")?
                    .as_u64()
                    .ok_or_else(|| schema("eigen_arity must be a number"))? as usize,
            ),
        },
        Cut => Instantiation::CutSplit {
            cut_formula: formula("cut_formula")?,
            left: sequent_from_value(get(v, "left")?, sig)?,
            right: sequent_from_value(get(v, "right")?, sig)?,
        },
    })
}

pub fn proof_to_value(p: &ProofTree) -> Value {
    json!({
        "rule": p.rule.as_str(),
        "conclusion": sequent_to_value(&p.conclusion),
        "instantiation": instantiation_to_value(&p.inst),
        "premises": p.premises.iter().map(proof_to_value).collect::<Vec<_>>(),
    })
}

pub fn proof_from_value(v: &Value, sig: &Signature) -> Result<ProofTree, SerialError> {
    let rule = RuleTag::from_str(as_str(get(v, "rule")?, "rule")?)
        .ok_or_else(|| schema("unknown rule tag"))?;
    let conclusion = sequent_from_value(get(v, "conclusion")?, sig)?;
    let inst = instantiation_from_value(rule, get(v, "instantiation")?, sig)?;
    let mut premises = Vec::new();
    for p in as_arr(get(v, "premises")?, "premises")? {
        premises.push(proof_from_value(p, sig)?);
    }
    Ok(ProofTree {
        conclusion,
        rule,
        inst,
        premises,
    })
}

/// A proof file: signature plus tree.
pub fn proof_file_to_string(p: &ProofTree, sig: &Signature) -> String {
    let v = json!({ "signature": signature_to_value(sig), "proof": proof_to_value(p) });
    serde_json::to_string_pretty(&v).expect("serializable")
}

pub fn proof_file_from_str(text: &str) -> Result<(Signature, ProofTree), SerialError> {
    let v: Value = serde_json::from_str(text)?;
    let sig = match v.get("signature") {
        Some(s) => signature_from_value(s)?,
        None => Signature::default(),
    };
    let p = proof_from_value(get(&v, "proof")?, &sig)?;
    Ok((sig, p))
}

// ------------------------------------------------------------------ algebra

pub fn algebra_to_value(alg: &dyn Cba, relation: Option<&RelationMap>) -> Value {
    if let Some(rm) = relation {
        let members: Vec<Vec<usize>> = (0..rm.size())
            .map(|x| {
                (0..rm.size())
                    .filter(|&y| rm.member_mask(x) & (1 << y) != 0)
                    .collect()
            })
            .collect();
        json!({
            "kind": "relation",
            "elements": rm.labels(),
            "members": members,
            "labels": (0..alg.size()).map(|e| alg.label(e)).collect::<Vec<_>>(),
        })
    } else {
        // powerset algebras are reconstructed from the atom count
        let atoms = alg.size().trailing_zeros() as usize;
        json!({
            "kind": "powerset",
            "atoms": atoms,
            "labels": (0..alg.size()).map(|e| alg.label(e)).collect::<Vec<_>>(),
        })
    }
}

pub enum LoadedAlgebra {
    Powerset(Arc<PowersetAlg>),
    Relation(Arc<RelationCba>),
}

impl LoadedAlgebra {
    pub fn as_dyn(&self) -> Arc<dyn Cba> {
        match self {
            LoadedAlgebra::Powerset(a) => a.clone(),
            LoadedAlgebra::Relation(a) => a.clone(),
        }
    }
}

pub fn algebra_from_value(v: &Value) -> Result<LoadedAlgebra, SerialError> {
    match as_str(get(v, "kind")?, "kind")? {
        "powerset" => {
            let atoms = get(v, "atoms")?
                .as_u64()
                .ok_or_else(|| schema("atoms must be a number"))? as usize;
            Ok(LoadedAlgebra::Powerset(Arc::new(PowersetAlg::new(atoms))))
        }
        "relation" => {
            let elements: Vec<String> = as_arr(get(v, "elements")?, "elements")?
                .iter()
                .map(|e| as_str(e, "element").map(str::to_string))
                .collect::<Result<_, _>>()?;
            let members: Vec<Vec<usize>> = as_arr(get(v, "members")?, "members")?
                .iter()
                .map(|row| {
                    as_arr(row, "members row").and_then(|xs| {
                        xs.iter()
                            .map(|x| {
                                x.as_u64()
                                    .map(|n| n as usize)
                                    .ok_or_else(|| schema("member must be an index"))
                            })
                            .collect()
                    })
                })
                .collect::<Result<_, _>>()?;
            let rm = RelationMap::new(elements, members)
                .map_err(|e| schema(format!("bad relation: {e}")))?;
            let alg = RelationCba::build(rm).map_err(|e| schema(format!("bad relation: {e}")))?;
            Ok(LoadedAlgebra::Relation(Arc::new(alg)))
        }
        other => Err(schema(format!("unknown algebra kind `{other}`"))),
    }
}

// ----------------------------------------------------------------- universe

pub fn universe_to_value(u: &FormulaUniverse) -> Value {
    let pools: Map<String, Value> = u
        .abstract_pool
        .iter()
        .map(|(ar, ts)| {
            (
                ar.to_string(),
                Value::Array(ts.iter().map(|t| Value::String(t.to_string())).collect()),
            )
        })
        .collect();
    json!({
        "formulas": u.formulas().iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "term_pool": u.term_pool.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        "abstract_pool": pools,
    })
}

pub fn universe_from_value(v: &Value, sig: &Signature) -> Result<FormulaUniverse, SerialError> {
    let mut seeds = Vec::new();
    for f in as_arr(get(v, "formulas")?, "formulas")? {
        seeds.push(parse_formula(as_str(f, "formula")?, sig)?);
    }
    let mut term_pool = Vec::new();
    if let Some(tp) = v.get("term_pool") {
        for t in as_arr(tp, "term_pool")? {
            term_pool.push(crate::syntax::parse_term(as_str(t, "term")?, sig)?);
        }
    }
    let mut abstract_pool: BTreeMap<usize, Vec<Abstract>> = BTreeMap::new();
    if let Some(ap) = v.get("abstract_pool") {
        let obj = ap
            .as_object()
            .ok_or_else(|| schema("abstract_pool must be an object"))?;
        for (ar, ts) in obj {
            let ar: usize = ar.parse().map_err(|_| schema("pool arity must be a number"))?;
            for t in as_arr(ts, "abstract pool")? {
                let t = parse_abstract(as_str(t, "abstract")?, sig)?;
                if t.arity() != ar {
                    return Err(schema(format!("abstract `{t}` filed under arity {ar}")));
                }
                abstract_pool.entry(ar).or_default().push(t);
            }
        }
    }
    Ok(FormulaUniverse::build(
        &seeds,
        term_pool,
        abstract_pool,
        Default::default(),
    )?)
}

// ------------------------------------------------------------ semi-valuation

pub fn semival_to_value(v: &SemiValuation, relation: Option<&RelationMap>) -> Value {
    let d = DAlg::new(v.algebra());
    let table: Vec<Value> = v
        .entries()
        .map(|(f, p)| {
            json!({
                "formula": f.to_string(),
                "box": p.bx,
                "diamond": p.dia,
                "label": d.label(p),
            })
        })
        .collect();
    json!({
        "algebra": algebra_to_value(v.algebra(), relation),
        "universe": universe_to_value(v.universe()),
        "table": table,
    })
}

pub fn semival_file_to_string(v: &SemiValuation, sig: &Signature, relation: Option<&RelationMap>) -> String {
    let val = json!({
        "signature": signature_to_value(sig),
        "valuation": semival_to_value(v, relation),
    });
    serde_json::to_string_pretty(&val).expect("serializable")
}

pub fn semival_from_value(v: &Value, sig: &Signature) -> Result<SemiValuation, SerialError> {
    let alg = algebra_from_value(get(v, "algebra")?)?;
    let universe = universe_from_value(get(v, "universe")?, sig)?;
    let mut table = Vec::new();
    for row in as_arr(get(v, "table")?, "table")? {
        let f = parse_formula(as_str(get(row, "formula")?, "formula")?, sig)?;
        let bx = get(row, "box")?
            .as_u64()
            .ok_or_else(|| schema("box must be an element index"))? as usize;
        let dia = get(row, "diamond")?
            .as_u64()
            .ok_or_else(|| schema("diamond must be an element index"))? as usize;
        let size = alg.as_dyn().size();
        if bx >= size || dia >= size {
            return Err(schema("element index out of range"));
        }
        table.push((f, crate::cba::DPair { bx, dia }));
    }
    Ok(SemiValuation::new(alg.as_dyn(), universe, table)?)
}

pub fn semival_file_from_str(text: &str) -> Result<(Signature, SemiValuation), SerialError> {
    let v: Value = serde_json::from_str(text)?;
    let sig = match v.get("signature") {
        Some(s) => signature_from_value(s)?,
        None => Signature::default(),
    };
    let sv = semival_from_value(get(&v, "valuation")?, &sig)?;
    Ok((sig, sv))
}

// ------------------------------------------------------------------ reports

pub fn law_report_to_value(r: &LawReport) -> Value {
    json!({
        "ok": r.ok(),
        "checks": r
            .checks
            .iter()
            .map(|LawCheck { law, pass, witness }| json!({
                "law": law,
                "pass": pass,
                "witness": witness,
            }))
            .collect::<Vec<_>>(),
    })
}

pub fn val_report_to_value(r: &ValReport) -> Value {
    json!({
        "ok": r.ok(),
        "entries": r
            .entries
            .iter()
            .map(|e| json!({
                "condition": e.condition,
                "subject": e.subject,
                "lhs": e.lhs,
                "rhs": e.rhs,
                "pass": e.pass,
            }))
            .collect::<Vec<_>>(),
    })
}

pub fn endgame_to_value(e: &EndgameReport) -> Value {
    json!({
        "sequent": e.sequent,
        "gamma_in_every_box": e.gamma_in_every_box,
        "inequality": e.inequality,
        "union_below_goal": e.union_below_goal,
        "goal_membership": e.goal_membership,
        "cut_free_provable": e.cut_free_provable,
        "coherent": e.coherent(),
    })
}

// ------------------------------------------------------------ search config

pub fn search_config_to_value(cfg: &SearchConfig) -> Value {
    let pools: Map<String, Value> = cfg
        .abstract_pool
        .iter()
        .map(|(ar, ts)| {
            (
                ar.to_string(),
                Value::Array(ts.iter().map(|t| Value::String(t.to_string())).collect()),
            )
        })
        .collect();
    json!({
        "term_pool": cfg.term_pool.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        "abstract_pool": pools,
        "node_budget": cfg.node_budget,
        "depth_budget": cfg.depth_budget,
        "fragment": cfg.fragment.as_str(),
    })
}

pub fn search_config_from_value(v: &Value, sig: &Signature) -> Result<SearchConfig, SerialError> {
    let mut cfg = SearchConfig::default();
    if let Some(tp) = v.get("term_pool") {
        for t in as_arr(tp, "term_pool")? {
            cfg.term_pool
                .push(crate::syntax::parse_term(as_str(t, "term")?, sig)?);
        }
    }
    if let Some(ap) = v.get("abstract_pool") {
        let obj = ap
            .as_object()
            .ok_or_else(|| schema("abstract_pool must be an object"))?;
        for (_, ts) in obj {
            for t in as_arr(ts, "abstract pool")? {
                let t = parse_abstract(as_str(t, "abstract")?, sig)?;
                cfg.abstract_pool.entry(t.arity()).or_default().push(t);
            }
        }
    }
    if let Some(n) = v.get("node_budget") {
        cfg.node_budget = n.as_u64().ok_or_else(|| schema("node_budget must be a number"))?;
    }
    if let Some(n) = v.get("depth_budget") {
        cfg.depth_budget =
            n.as_u64().ok_or_else(|| schema("depth_budget must be a number"))? as usize;
    }
    if let Some(f) = v.get("fragment") {
        cfg.fragment = Fragment::parse(as_str(f, "fragment")?)
            .ok_or_else(|| schema("unknown fragment"))?;
    }
    cfg.reserved.extend(sig.names());
    Ok(cfg)
}

// ------------------------------------------------------------ search output

pub fn branch_to_value(b: &Branch) -> Value {
    let pools: Map<String, Value> = b
        .abstract_pool
        .iter()
        .map(|(ar, ts)| {
            (
                ar.to_string(),
                Value::Array(ts.iter().map(|t| Value::String(t.to_string())).collect()),
            )
        })
        .collect();
    json!({
        "ant": b.ant.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "suc": b.suc.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "term_pool": b.term_pool.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        "abstract_pool": pools,
    })
}

pub fn outcome_to_value(o: &SearchOutcome, sig: &Signature) -> Value {
    match o {
        SearchOutcome::Proved(t) => json!({
            "outcome": "proved",
            "signature": signature_to_value(sig),
            "proof": proof_to_value(t),
        }),
        SearchOutcome::Refuted(b) => {
            let valuation = crate::search::branch_to_semival(b)
                .map(|v| semival_to_value(&v, None))
                .unwrap_or(Value::Null);
            json!({
                "outcome": "refuted",
                "signature": signature_to_value(sig),
                "branch": branch_to_value(b),
                "valuation": valuation,
            })
        }
        SearchOutcome::Exhausted => json!({ "outcome": "exhausted" }),
    }
}

// ------------------------------------------------------------- maehara dump

pub fn maehara_to_value(mv: &MaeharaValuation, report: &ValReport, endgames: &[EndgameReport]) -> Value {
    let alg = mv.algebra.as_ref();
    json!({
        "sequents": mv.sequents.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "relation": {
            "elements": mv.relation.labels(),
            "members": (0..mv.relation.size())
                .map(|x| (0..mv.relation.size())
                    .filter(|&y| mv.relation.member_mask(x) & (1 << y) != 0)
                    .collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        },
        "carrier": (0..alg.size()).map(|e| alg.label(e)).collect::<Vec<_>>(),
        "valuation": semival_to_value(&mv.semival, Some(&mv.relation)),
        "semi_valuation_report": val_report_to_value(report),
        "endgames": endgames.iter().map(endgame_to_value).collect::<Vec<_>>(),
    })
}

// -------------------------------------------------------------------- check

pub fn check_options_to_value(opts: &CheckOptions) -> Value {
    json!({
        "allow_cut": opts.allow_cut,
        "fragment": opts.fragment.as_str(),
    })
}

/// Term parser re-export for pool flags.
pub fn parse_pool_term(text: &str, sig: &Signature) -> Result<Term0, SerialError> {
    Ok(crate::syntax::parse_term(text, sig)?)
}
