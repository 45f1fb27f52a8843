//! Cedents are finite sets of formulas up to alpha-equivalence, so the
//! structural rules (weakening, contraction, exchange) are implicit.
//! Internally a cedent keeps each formula together with its alpha-normal
//! form; the normal forms are the sort key, which makes iteration order,
//! equality and serialization canonical.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::{parse_cedents, Formula, SecVar, Signature, SyntaxError};

#[derive(Debug, Clone, Default)]
pub struct Cedent {
    // sorted by key, no two entries share a key
    items: Vec<(Formula, Formula)>, // (original, alpha-normal key)
}

impl Cedent {
    pub fn new() -> Self {
        Cedent::default()
    }

    pub fn from_formulas(fs: impl IntoIterator<Item = Formula>) -> Self {
        let mut c = Cedent::new();
        for f in fs {
            c.insert(f);
        }
        c
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Insert a formula; returns false if an alpha-equivalent formula was
    /// already present.
    pub fn insert(&mut self, f: Formula) -> bool {
        let key = f.alpha_normalize();
        match self.items.binary_search_by(|(_, k)| k.cmp(&key)) {
            Ok(_) => false,
            Err(pos) => {
                self.items.insert(pos, (f, key));
                true
            }
        }
    }

    pub fn contains(&self, f: &Formula) -> bool {
        let key = f.alpha_normalize();
        self.items
            .binary_search_by(|(_, k)| k.cmp(&key))
            .is_ok()
    }

    /// Iterate the stored formulas in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = &Formula> {
        self.items.iter().map(|(f, _)| f)
    }

    /// Iterate the alpha-normal keys in canonical order.
    pub fn keys(&self) -> impl Iterator<Item = &Formula> {
        self.items.iter().map(|(_, k)| k)
    }

    pub fn with(&self, f: Formula) -> Cedent {
        let mut c = self.clone();
        c.insert(f);
        c
    }

    pub fn union(&self, other: &Cedent) -> Cedent {
        let mut c = self.clone();
        for f in other.iter() {
            c.insert(f.clone());
        }
        c
    }

    pub fn without(&self, f: &Formula) -> Cedent {
        let key = f.alpha_normalize();
        Cedent {
            items: self
                .items
                .iter()
                .filter(|(_, k)| *k != key)
                .cloned()
                .collect(),
        }
    }
}

impl PartialEq for Cedent {
    fn eq(&self, other: &Self) -> bool {
        self.items.len() == other.items.len()
            && self
                .items
                .iter()
                .zip(&other.items)
                .all(|((_, a), (_, b))| a == b)
    }
}
impl Eq for Cedent {}

impl PartialOrd for Cedent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Cedent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.keys().cmp(other.keys())
    }
}

impl FromIterator<Formula> for Cedent {
    fn from_iter<T: IntoIterator<Item = Formula>>(iter: T) -> Self {
        Cedent::from_formulas(iter)
    }
}

/// A sequent `Gamma => Delta` of two cedents.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Sequent {
    pub ant: Cedent,
    pub suc: Cedent,
}

impl Sequent {
    pub fn new(ant: Cedent, suc: Cedent) -> Self {
        Sequent { ant, suc }
    }

    pub fn from_formulas(
        ant: impl IntoIterator<Item = Formula>,
        suc: impl IntoIterator<Item = Formula>,
    ) -> Self {
        Sequent {
            ant: Cedent::from_formulas(ant),
            suc: Cedent::from_formulas(suc),
        }
    }

    pub fn parse(text: &str, sig: &Signature) -> Result<Self, SyntaxError> {
        let (ant, suc) = parse_cedents(text, sig)?;
        Ok(Sequent::from_formulas(ant, suc))
    }

    pub fn is_empty(&self) -> bool {
        self.ant.is_empty() && self.suc.is_empty()
    }

    /// Cedent-wise union; `merge(x, y)` is the sequent `x union y` used by
    /// the provability relation on pairs of sequents.
    pub fn merge(&self, other: &Sequent) -> Sequent {
        Sequent {
            ant: self.ant.union(&other.ant),
            suc: self.suc.union(&other.suc),
        }
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.ant.iter().chain(self.suc.iter())
    }

    pub fn free_vars0(&self) -> BTreeSet<String> {
        let mut acc = BTreeSet::new();
        for f in self.formulas() {
            acc.extend(f.free_vars0());
        }
        acc
    }

    pub fn free_vars1(&self) -> BTreeSet<SecVar> {
        let mut acc = BTreeSet::new();
        for f in self.formulas() {
            acc.extend(f.free_vars1());
        }
        acc
    }

    pub fn all_names(&self) -> BTreeSet<String> {
        let mut acc = BTreeSet::new();
        for f in self.formulas() {
            acc.extend(f.all_names());
        }
        acc
    }

    pub fn is_quantifier_free(&self) -> bool {
        self.formulas().all(|f| f.is_quantifier_free())
    }

    /// Canonical string (alpha-normal formulas in canonical order); equal
    /// strings iff equal sequents.
    pub fn canonical_string(&self) -> String {
        let side = |c: &Cedent| {
            c.keys()
                .map(|f| f.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        format!("{} => {}", side(&self.ant), side(&self.suc))
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for a in self.ant.iter() {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
            first = false;
        }
        if !self.ant.is_empty() {
            write!(f, " ")?;
        }
        write!(f, "=>")?;
        let mut first = true;
        for s in self.suc.iter() {
            if first {
                write!(f, " ")?;
            } else {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
            first = false;
        }
        Ok(())
    }
}
