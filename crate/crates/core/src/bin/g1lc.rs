//! Batch command-line surface. Exit codes are a stable contract:
//! 0 success, 1 logical failure (invalid proof, refuted sequent, failed
//! law or report), 2 budget exhausted, 3 input error.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use g1lc::calculus::{
    check_proof, classify_sequent, erase_second_order, herbrand_nf, is_mints_normal,
    is_reducible, pure_variable, CheckOptions, Fragment, RuleTag, Sequent, Trivalent,
};
use g1lc::cba::{
    enumerate_relation_maps, verify_laws, verify_relation_laws, Cba, RelationCba, RelationMap,
};
use g1lc::search::{
    branch_to_semival, canonical_search, decide_cut_free, hauptsatz_pipeline, BudgetOracle,
    CutFreeOracle, HauptsatzOutcome, SearchConfig, SearchOutcome,
};
use g1lc::serial;
use g1lc::syntax::{parse_abstract, parse_problem, parse_term, Signature};
use g1lc::valuation::{maehara_valuation, ver2_endgame, SequentUniverse};

const EXIT_OK: u8 = 0;
const EXIT_LOGICAL: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "g1lc", about = "Second-order sequent calculus toolkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SearchFlags {
    /// Witness terms for first-order quantifiers (repeatable).
    #[arg(long = "term")]
    terms: Vec<String>,
    /// Witness abstracts for second-order quantifiers (repeatable).
    #[arg(long = "abstract")]
    abstracts: Vec<String>,
    #[arg(long, default_value_t = 20_000)]
    node_budget: u64,
    #[arg(long, default_value_t = 400)]
    depth_budget: usize,
    /// One of: full, fo, bc, pi1:N.
    #[arg(long, default_value = "full")]
    fragment: String,
    /// JSON search config file; explicit flags still apply on top.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a proof file against the rule schemata.
    Check {
        proof: PathBuf,
        #[arg(long)]
        allow_cut: bool,
        #[arg(long, default_value = "full")]
        fragment: String,
    },
    /// Run the canonical cut-free proof search on a sequent file.
    Search {
        sequent: PathBuf,
        #[command(flatten)]
        flags: SearchFlags,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Build and verify the algebra induced by a relation map file (or
    /// every `.rel` file of a directory), or enumerate all maps up to a
    /// size with --enumerate.
    Cba {
        path: Option<PathBuf>,
        #[arg(long)]
        verify: bool,
        /// Verify every valid relation map over 1..=N elements.
        #[arg(long)]
        enumerate: Option<usize>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Re-check a serialized semi-valuation.
    Semival { valuation: PathBuf },
    /// Build the provability-induced valuation over a universe file.
    Maehara {
        universe: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Check a (cut-bearing) proof and emit a cut-free proof of the same
    /// end-sequent found by search.
    Hauptsatz {
        proof: PathBuf,
        #[command(flatten)]
        flags: SearchFlags,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Reducibility, pure-variable and normal-form report for a proof.
    Mints {
        proof: PathBuf,
        #[command(flatten)]
        flags: SearchFlags,
    },
    /// Polarity classification of a sequent, with optional transforms.
    Classify {
        sequent: PathBuf,
        /// Erase second-order quantifiers (requires the positive-universal class).
        #[arg(long)]
        erase: bool,
        /// Emit the Herbrand normal form (requires a first-order sequent).
        #[arg(long)]
        herbrand: bool,
    },
    /// Run a corpus file of expected verdicts.
    Corpus { corpus: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_INPUT
        }
    };
    ExitCode::from(code)
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_out(path: &Option<PathBuf>, value: &Value) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    match path {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn parse_fragment(s: &str) -> Result<Fragment, String> {
    Fragment::parse(s).ok_or_else(|| format!("unknown fragment `{s}` (use full|fo|bc|pi1:N)"))
}

fn load_sequent(path: &Path) -> Result<(Signature, Sequent), String> {
    let text = read(path)?;
    let (sig, body) = parse_problem(&text).map_err(|e| e.to_string())?;
    let seq = Sequent::parse(body.trim(), &sig).map_err(|e| e.to_string())?;
    Ok((sig, seq))
}

fn build_config(flags: &SearchFlags, sig: &Signature) -> Result<SearchConfig, String> {
    let mut cfg = match &flags.config {
        Some(path) => {
            let text = read(path)?;
            let v: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
            serial::search_config_from_value(&v, sig).map_err(|e| e.to_string())?
        }
        None => {
            let mut cfg = SearchConfig::default();
            cfg.node_budget = flags.node_budget;
            cfg.depth_budget = flags.depth_budget;
            cfg.fragment = parse_fragment(&flags.fragment)?;
            cfg
        }
    };
    for t in &flags.terms {
        cfg.term_pool.push(parse_term(t, sig).map_err(|e| e.to_string())?);
    }
    for a in &flags.abstracts {
        let t = parse_abstract(a, sig).map_err(|e| e.to_string())?;
        cfg.abstract_pool.entry(t.arity()).or_default().push(t);
    }
    cfg.reserved = sig.names().into_iter().collect::<BTreeSet<_>>();
    Ok(cfg)
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Check {
            proof,
            allow_cut,
            fragment,
        } => {
            let (_, tree) = serial::proof_file_from_str(&read(&proof)?).map_err(|e| e.to_string())?;
            let opts = CheckOptions {
                allow_cut,
                fragment: parse_fragment(&fragment)?,
            };
            match check_proof(&tree, &opts) {
                Ok(()) => {
                    println!("ok: {} ({} nodes)", tree.conclusion, tree.size());
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    println!("invalid: {e}");
                    Ok(EXIT_LOGICAL)
                }
            }
        }

        Command::Search {
            sequent,
            flags,
            output,
        } => {
            let (sig, seq) = load_sequent(&sequent)?;
            let cfg = build_config(&flags, &sig)?;
            let outcome = canonical_search(&seq, &cfg);
            write_out(&output, &serial::outcome_to_value(&outcome, &sig))?;
            match outcome {
                SearchOutcome::Proved(_) => Ok(EXIT_OK),
                SearchOutcome::Refuted(_) => Ok(EXIT_LOGICAL),
                SearchOutcome::Exhausted => Ok(EXIT_BUDGET),
            }
        }

        Command::Cba {
            path,
            verify,
            enumerate,
            output,
        } => {
            if let Some(limit) = enumerate {
                let mut total = 0usize;
                for size in 1..=limit {
                    for rm in enumerate_relation_maps(size) {
                        let alg = RelationCba::build(rm).map_err(|e| e.to_string())?;
                        let laws = verify_laws(&alg);
                        let extra = verify_relation_laws(&alg);
                        if !laws.ok() || !extra.ok() {
                            println!(
                                "FAIL {}: {:?}",
                                alg.relation().to_text().replace('\n', "; "),
                                laws.first_failure().or(extra.first_failure())
                            );
                            return Ok(EXIT_LOGICAL);
                        }
                        total += 1;
                    }
                }
                println!("all {total} induced algebras over sizes 1..={limit} pass every law");
                return Ok(EXIT_OK);
            }
            let path = path.ok_or("give a relation file, a directory, or --enumerate N")?;
            let files: Vec<PathBuf> = if path.is_dir() {
                let mut found: Vec<PathBuf> = fs::read_dir(&path)
                    .map_err(|e| e.to_string())?
                    .filter_map(|e| e.ok().map(|e| e.path()))
                    .filter(|p| p.extension().is_some_and(|x| x == "rel"))
                    .collect();
                found.sort();
                found
            } else {
                vec![path]
            };
            let mut failed = false;
            let mut dumps = Vec::new();
            for file in files {
                let text = read(&file)?;
                let rm = match RelationMap::parse(&text) {
                    Ok(rm) => rm,
                    Err(e) => {
                        println!("{}: {e}", file.display());
                        return Ok(EXIT_LOGICAL);
                    }
                };
                let alg = RelationCba::build(rm.clone()).map_err(|e| e.to_string())?;
                let mut dump = json!({
                    "file": file.display().to_string(),
                    "algebra": serial::algebra_to_value(&alg, Some(&rm)),
                    "zero": rm.mask_label(alg.mask(alg.zero())),
                    "size": alg.size(),
                });
                let mut this_failed = false;
                if verify {
                    let laws = verify_laws(&alg);
                    let extra = verify_relation_laws(&alg);
                    this_failed = !laws.ok() || !extra.ok();
                    failed |= this_failed;
                    dump["laws"] = serial::law_report_to_value(&laws);
                    dump["relation_laws"] = serial::law_report_to_value(&extra);
                }
                println!(
                    "{}: carrier size {}{}",
                    file.display(),
                    alg.size(),
                    if verify {
                        if this_failed {
                            ", laws FAILED"
                        } else {
                            ", laws pass"
                        }
                    } else {
                        ""
                    }
                );
                dumps.push(dump);
            }
            write_out(&output, &Value::Array(dumps))?;
            Ok(if failed { EXIT_LOGICAL } else { EXIT_OK })
        }

        Command::Semival { valuation } => {
            let (_, v) = serial::semival_file_from_str(&read(&valuation)?).map_err(|e| e.to_string())?;
            let report = v.check();
            print!("{report}");
            Ok(if report.ok() { EXIT_OK } else { EXIT_LOGICAL })
        }

        Command::Maehara { universe, output } => {
            let text = read(&universe)?;
            let v: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
            let sig = match v.get("signature") {
                Some(s) => serial::signature_from_value(s).map_err(|e| e.to_string())?,
                None => Signature::default(),
            };
            let u = serial::universe_from_value(&v, &sig).map_err(|e| e.to_string())?;
            let mut extra = Vec::new();
            if let Some(seqs) = v.get("sequents") {
                for s in seqs.as_array().ok_or("sequents must be an array")? {
                    let s = s.as_str().ok_or("sequent must be a string")?;
                    extra.push(Sequent::parse(s, &sig).map_err(|e| e.to_string())?);
                }
            }
            let su = match SequentUniverse::build(u, &extra, Box::new(CutFreeOracle::new())) {
                Ok(su) => su,
                Err(e @ g1lc::valuation::ValuationError::QuantifiedUniverse(_)) => {
                    eprintln!("refused: {e}");
                    return Ok(EXIT_INPUT);
                }
                Err(e) => return Err(e.to_string()),
            };
            let mv = maehara_valuation(&su).map_err(|e| e.to_string())?;
            let report = mv.semival.check();
            let mut endgames = Vec::new();
            let mut all_coherent = true;
            for s in &extra {
                let e = ver2_endgame(&su, &mv, s).map_err(|e| e.to_string())?;
                all_coherent &= e.coherent();
                endgames.push(e);
            }
            write_out(&output, &serial::maehara_to_value(&mv, &report, &endgames))?;
            println!(
                "carrier size {}, semi-valuation {}, {} endgame(s) {}",
                mv.algebra.size(),
                if report.ok() { "passes" } else { "FAILS" },
                endgames.len(),
                if all_coherent { "coherent" } else { "INCOHERENT" },
            );
            Ok(if report.ok() && all_coherent {
                EXIT_OK
            } else {
                EXIT_LOGICAL
            })
        }

        Command::Hauptsatz {
            proof,
            flags,
            output,
        } => {
            let (sig, tree) = serial::proof_file_from_str(&read(&proof)?).map_err(|e| e.to_string())?;
            let cfg = build_config(&flags, &sig)?;
            match hauptsatz_pipeline(&tree, &cfg) {
                Ok(HauptsatzOutcome::CutFree(t)) => {
                    let v: Value =
                        serde_json::from_str(&serial::proof_file_to_string(&t, &sig)).unwrap();
                    write_out(&output, &v)?;
                    println!("cut-free proof of `{}` ({} nodes)", t.conclusion, t.size());
                    Ok(EXIT_OK)
                }
                Ok(HauptsatzOutcome::Exhausted) => {
                    println!("exhausted: no cut-free proof found within the budget/pools");
                    Ok(EXIT_BUDGET)
                }
                Err(e) => {
                    println!("input proof rejected: {e}");
                    Ok(EXIT_LOGICAL)
                }
            }
        }

        Command::Mints { proof, flags } => {
            let (sig, tree) = serial::proof_file_from_str(&read(&proof)?).map_err(|e| e.to_string())?;
            let cfg = build_config(&flags, &sig)?;
            let oracle = BudgetOracle { cfg };
            let cut_free = !tree.contains_cut();
            let pure = pure_variable(&tree);
            let mut reducible_nodes = Vec::new();
            let mut verdict_unknown = false;
            tree.walk(&mut |node, path| {
                if matches!(node.rule, RuleTag::Initial | RuleTag::Cut) {
                    return;
                }
                match is_reducible(node, &oracle) {
                    Trivalent::True => reducible_nodes.push((path.to_vec(), node.rule)),
                    Trivalent::Unknown => verdict_unknown = true,
                    Trivalent::False => {}
                }
            });
            let normal = is_mints_normal(&tree, &oracle);
            println!("cut-free: {cut_free}");
            println!("pure-variable: {pure}");
            for (path, rule) in &reducible_nodes {
                let path: Vec<String> = path.iter().map(|i| i.to_string()).collect();
                println!(
                    "reducible: {} at {}",
                    rule,
                    if path.is_empty() { "root".into() } else { path.join(".") }
                );
            }
            if verdict_unknown {
                println!("some reducibility checks exhausted the oracle budget");
            }
            match normal {
                Trivalent::True => {
                    println!("normal form: yes");
                    Ok(EXIT_OK)
                }
                Trivalent::False => {
                    println!("normal form: no");
                    Ok(EXIT_LOGICAL)
                }
                Trivalent::Unknown => {
                    println!("normal form: unknown");
                    Ok(EXIT_BUDGET)
                }
            }
        }

        Command::Classify {
            sequent,
            erase,
            herbrand,
        } => {
            let (sig, seq) = load_sequent(&sequent)?;
            let c = classify_sequent(&seq);
            let mut out = json!({
                "sequent": seq.to_string(),
                "first_order": c.is_first_order,
                "sigma01": c.is_sigma01,
                "pi01": c.is_pi01,
                "pi1": c.is_pi1,
            });
            if erase {
                match erase_second_order(&seq) {
                    Ok(e) => out["erased"] = Value::String(e.to_string()),
                    Err(e) => {
                        println!("erase: {e}");
                        return Ok(EXIT_LOGICAL);
                    }
                }
            }
            if herbrand {
                match herbrand_nf(&seq, &sig) {
                    Ok((h, sig2)) => {
                        out["herbrand"] = Value::String(h.to_string());
                        out["herbrand_signature"] = serial::signature_to_value(&sig2);
                    }
                    Err(e) => {
                        println!("herbrand: {e}");
                        return Ok(EXIT_LOGICAL);
                    }
                }
            }
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(EXIT_OK)
        }

        Command::Corpus { corpus } => {
            let text = read(&corpus)?;
            let v: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
            let base = corpus.parent().unwrap_or(Path::new(".")).to_path_buf();
            let entries = v
                .get("entries")
                .and_then(|e| e.as_array())
                .ok_or("corpus needs an `entries` array")?;
            let mut mismatches = 0usize;
            for e in entries {
                let name = e.get("name").and_then(|n| n.as_str()).unwrap_or("?");
                let expected = e
                    .get("expected")
                    .and_then(|x| x.as_str())
                    .ok_or_else(|| format!("entry `{name}` needs `expected`"))?;
                let got = run_corpus_entry(e, &base).unwrap_or_else(|err| format!("error: {err}"));
                let ok = got == expected;
                if !ok {
                    mismatches += 1;
                }
                println!(
                    "{} {name}: expected `{expected}`, got `{got}`",
                    if ok { "pass" } else { "FAIL" }
                );
            }
            println!("{} entries, {mismatches} mismatch(es)", entries.len());
            Ok(if mismatches == 0 { EXIT_OK } else { EXIT_LOGICAL })
        }
    }
}

/// Run one corpus entry; the returned verdict string is matched against
/// `expected` verbatim. Proof entries yield `ok` or `reject:<Kind>`;
/// sequent entries yield the search outcome or `decided:true/false`.
fn run_corpus_entry(e: &Value, base: &Path) -> Result<String, String> {
    let fragment = e
        .get("fragment")
        .and_then(|f| f.as_str())
        .map(parse_fragment)
        .transpose()?
        .unwrap_or(Fragment::Full);
    if let Some(p) = e.get("proof").and_then(|p| p.as_str()) {
        let (_, tree) =
            serial::proof_file_from_str(&read(&base.join(p))?).map_err(|x| x.to_string())?;
        let opts = CheckOptions {
            allow_cut: e.get("allow_cut").and_then(|c| c.as_bool()).unwrap_or(false),
            fragment,
        };
        return Ok(match check_proof(&tree, &opts) {
            Ok(()) => "ok".to_string(),
            Err(err) => format!("reject:{}", kind_name(&err.kind)),
        });
    }
    if let Some(s) = e.get("sequent").and_then(|s| s.as_str()) {
        let (sig, seq) = load_sequent(&base.join(s))?;
        if e.get("decide").and_then(|d| d.as_bool()).unwrap_or(false) {
            let verdict = decide_cut_free(&seq).map_err(|x| x.to_string())?;
            return Ok(format!("decided:{verdict}"));
        }
        let flags = SearchFlags {
            terms: vec![],
            abstracts: vec![],
            node_budget: e
                .get("node_budget")
                .and_then(|n| n.as_u64())
                .unwrap_or(20_000),
            depth_budget: 400,
            fragment: fragment.as_str(),
            config: None,
        };
        let cfg = build_config(&flags, &sig)?;
        let outcome = canonical_search(&seq, &cfg);
        if let SearchOutcome::Refuted(b) = &outcome {
            // refuted artifacts must convert to a valid semi-valuation
            let v = branch_to_semival(b).map_err(|x| x.to_string())?;
            if !v.check().ok() {
                return Ok("refuted-but-semival-fails".to_string());
            }
        }
        return Ok(outcome.kind().to_string());
    }
    Err("entry needs `proof` or `sequent`".to_string())
}

fn kind_name(kind: &g1lc::calculus::CheckErrorKind) -> &'static str {
    use g1lc::calculus::CheckErrorKind::*;
    match kind {
        WrongPremise(_) => "WrongPremise",
        NotAtomicAxiom => "NotAtomicAxiom",
        EigenvariableOccursBelow(_) => "EigenvariableOccursBelow",
        ArityMismatch(_) => "ArityMismatch",
        CutForbidden => "CutForbidden",
        WitnessOutsideFragment => "WitnessOutsideFragment",
    }
}
