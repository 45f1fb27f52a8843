//! Rule-tagged derivations. Every node carries the instantiation data the
//! rule schema needs (major formula, witness or eigenvariable, disjunct
//! index, cut split), so checking is purely local: the checker re-applies
//! the schema to the conclusion and compares the synthesized premises with
//! the stored ones as alpha-sets.

use std::fmt;

use super::sequent::Sequent;
use crate::syntax::{Abstract, Formula, SecVar, Term0};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleTag {
    Initial,
    LNot,
    RNot,
    LOr,
    ROr,
    LAnd,
    RAnd,
    LEx0,
    REx0,
    LAll0,
    RAll0,
    LEx1,
    REx1,
    LAll1,
    RAll1,
    Cut,
}

impl RuleTag {
    pub fn as_str(self) -> &'static str {
        use RuleTag::*;
        match self {
            Initial => "Initial",
            LNot => "LNot",
            RNot => "RNot",
            LOr => "LOr",
            ROr => "ROr",
            LAnd => "LAnd",
            RAnd => "RAnd",
            LEx0 => "LEx0",
            REx0 => "REx0",
            LAll0 => "LAll0",
            RAll0 => "RAll0",
            LEx1 => "LEx1",
            REx1 => "REx1",
            LAll1 => "LAll1",
            RAll1 => "RAll1",
            Cut => "Cut",
        }
    }

    pub fn from_str(s: &str) -> Option<RuleTag> {
        use RuleTag::*;
        Some(match s {
            "Initial" => Initial,
            "LNot" => LNot,
            "RNot" => RNot,
            "LOr" => LOr,
            "ROr" => ROr,
            "LAnd" => LAnd,
            "RAnd" => RAnd,
            "LEx0" => LEx0,
            "REx0" => REx0,
            "LAll0" => LAll0,
            "RAll0" => RAll0,
            "LEx1" => LEx1,
            "REx1" => REx1,
            "LAll1" => LAll1,
            "RAll1" => RAll1,
            "Cut" => Cut,
            _ => return None,
        })
    }

    /// Number of premises the rule takes.
    pub fn premise_count(self) -> usize {
        use RuleTag::*;
        match self {
            Initial => 0,
            LOr | RAnd | Cut => 2,
            _ => 1,
        }
    }

    pub fn is_second_order(self) -> bool {
        matches!(self, RuleTag::LEx1 | RuleTag::REx1 | RuleTag::LAll1 | RuleTag::RAll1)
    }
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Per-node instantiation data.
#[derive(Debug, Clone, PartialEq)]
pub enum Instantiation {
    /// Initial: the atomic formula appearing on both sides.
    Initial { atom: Formula },
    /// LNot, RNot, LOr, RAnd: the major formula alone determines the
    /// premises.
    Major { major: Formula },
    /// ROr, LAnd: major plus the chosen disjunct/conjunct index.
    Indexed { major: Formula, index: usize },
    /// REx0, LAll0: major plus the witness term.
    TermWitness { major: Formula, witness: Term0 },
    /// LEx0, RAll0: major plus the eigenvariable.
    FirstEigen { major: Formula, eigen: String },
    /// REx1, LAll1: major plus the witness abstract.
    AbstractWitness { major: Formula, witness: Abstract },
    /// LEx1, RAll1: major plus the second-order eigenvariable.
    SecondEigen { major: Formula, eigen: SecVar },
    /// Cut: the cut formula and the cedent split; `left` is `Gamma =>
    /// Delta`, `right` is `Pi => Theta`. Stored explicitly because set
    /// unions are not invertible.
    CutSplit {
        cut_formula: Formula,
        left: Sequent,
        right: Sequent,
    },
}

impl Instantiation {
    pub fn major(&self) -> Option<&Formula> {
        match self {
            Instantiation::Initial { .. } | Instantiation::CutSplit { .. } => None,
            Instantiation::Major { major }
            | Instantiation::Indexed { major, .. }
            | Instantiation::TermWitness { major, .. }
            | Instantiation::FirstEigen { major, .. }
            | Instantiation::AbstractWitness { major, .. }
            | Instantiation::SecondEigen { major, .. } => Some(major),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProofTree {
    pub conclusion: Sequent,
    pub rule: RuleTag,
    pub inst: Instantiation,
    pub premises: Vec<ProofTree>,
}

impl ProofTree {
    pub fn initial(conclusion: Sequent, atom: Formula) -> ProofTree {
        ProofTree {
            conclusion,
            rule: RuleTag::Initial,
            inst: Instantiation::Initial { atom },
            premises: vec![],
        }
    }

    /// Total number of nodes.
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(|p| p.size()).sum::<usize>()
    }

    pub fn contains_cut(&self) -> bool {
        self.rule == RuleTag::Cut || self.premises.iter().any(|p| p.contains_cut())
    }

    /// Visit every node together with its path from the root (premise
    /// indices).
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a ProofTree, &[usize])) {
        fn go<'a>(
            t: &'a ProofTree,
            path: &mut Vec<usize>,
            visit: &mut impl FnMut(&'a ProofTree, &[usize]),
        ) {
            visit(t, path);
            for (i, p) in t.premises.iter().enumerate() {
                path.push(i);
                go(p, path, visit);
                path.pop();
            }
        }
        go(self, &mut Vec::new(), visit);
    }
}

/// Calculus fragments restricting the witness abstracts of the
/// second-order rules (and, for `FirstOrder`, forbidding those rules
/// altogether).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fragment {
    Full,
    /// Witnesses restricted to abstracts whose body has at most `n`
    /// alternating second-order quantifier blocks starting with a
    /// universal one, over a first-order matrix.
    Pi1(usize),
    /// Witnesses restricted to bare variables and relation constants.
    Bc,
    /// First-order fragment: no second-order inferences.
    FirstOrder,
}

impl Fragment {
    pub fn as_str(self) -> String {
        match self {
            Fragment::Full => "full".into(),
            Fragment::Pi1(n) => format!("pi1:{n}"),
            Fragment::Bc => "bc".into(),
            Fragment::FirstOrder => "fo".into(),
        }
    }

    pub fn parse(s: &str) -> Option<Fragment> {
        match s {
            "full" => Some(Fragment::Full),
            "bc" => Some(Fragment::Bc),
            "fo" => Some(Fragment::FirstOrder),
            _ => s
                .strip_prefix("pi1:")
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| n >= 1)
                .map(Fragment::Pi1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    pub allow_cut: bool,
    pub fragment: Fragment,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            allow_cut: false,
            fragment: Fragment::Full,
        }
    }
}

impl CheckOptions {
    pub fn with_cut() -> Self {
        CheckOptions {
            allow_cut: true,
            fragment: Fragment::Full,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CheckErrorKind {
    #[error("premises do not match the rule schema: {0}")]
    WrongPremise(String),
    #[error("initial sequent needs an atomic formula present on both sides")]
    NotAtomicAxiom,
    #[error("eigenvariable `{0}` occurs free in the lower sequent")]
    EigenvariableOccursBelow(String),
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("cut inference is not allowed here")]
    CutForbidden,
    #[error("witness abstract lies outside the declared fragment")]
    WitnessOutsideFragment,
}

/// A check failure, located by the path of premise indices from the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckError {
    pub path: Vec<usize>,
    pub kind: CheckErrorKind,
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "at root: {}", self.kind)
        } else {
            let path: Vec<String> = self.path.iter().map(|i| i.to_string()).collect();
            write!(f, "at node {}: {}", path.join("."), self.kind)
        }
    }
}

impl std::error::Error for CheckError {}
