//! Finite complete Boolean algebras. Carriers are index ranges
//! `0..size`, the order is a predicate on indices, and every algebra
//! declares its own supremum/infimum/complement; [`laws::verify_laws`]
//! checks the declared operations against brute-force bounds computed from
//! the order alone, so a wrong table cannot hide behind itself.

mod dpair;
mod laws;
mod relation;

pub use dpair::{
    family_conclusion, family_hypothesis, neg_monotone_witness, DAlg, DPair, RawPair,
};
pub use laws::{verify_laws, verify_relation_laws, LawCheck, LawReport};
pub use relation::{enumerate_relation_maps, RelationCba, RelationError, RelationMap};

use std::fmt;

pub type Elem = usize;

/// A finite complete Boolean algebra with declared operations.
pub trait Cba: fmt::Debug + Send + Sync {
    fn size(&self) -> usize;
    fn leq(&self, a: Elem, b: Elem) -> bool;
    fn compl(&self, a: Elem) -> Elem;
    fn zero(&self) -> Elem;
    fn one(&self) -> Elem;
    /// Supremum of a family; the empty family gives `zero`.
    fn sup(&self, xs: &[Elem]) -> Elem;
    /// Infimum of a family; the empty family gives `one`.
    fn inf(&self, xs: &[Elem]) -> Elem;
    fn label(&self, a: Elem) -> String;

    fn elements(&self) -> Vec<Elem> {
        (0..self.size()).collect()
    }
}

/// The powerset algebra over `atoms` atoms; elements are bitmasks. One
/// atom gives the two-element algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowersetAlg {
    pub atoms: usize,
}

impl PowersetAlg {
    pub fn new(atoms: usize) -> Self {
        assert!(atoms <= 16, "powerset algebra limited to 16 atoms");
        PowersetAlg { atoms }
    }

    /// The two-element algebra 0 < 1.
    pub fn two() -> Self {
        PowersetAlg::new(1)
    }

    fn full(&self) -> Elem {
        (1usize << self.atoms) - 1
    }
}

impl Cba for PowersetAlg {
    fn size(&self) -> usize {
        1 << self.atoms
    }
    fn leq(&self, a: Elem, b: Elem) -> bool {
        a & !b == 0
    }
    fn compl(&self, a: Elem) -> Elem {
        self.full() & !a
    }
    fn zero(&self) -> Elem {
        0
    }
    fn one(&self) -> Elem {
        self.full()
    }
    fn sup(&self, xs: &[Elem]) -> Elem {
        xs.iter().fold(0, |acc, &x| acc | x)
    }
    fn inf(&self, xs: &[Elem]) -> Elem {
        xs.iter().fold(self.full(), |acc, &x| acc & x)
    }
    fn label(&self, a: Elem) -> String {
        if self.atoms == 1 {
            return if a == 0 { "0".into() } else { "1".into() };
        }
        let mut parts = Vec::new();
        for i in 0..self.atoms {
            if a & (1 << i) != 0 {
                parts.push((i + 1).to_string());
            }
        }
        format!("{{{}}}", parts.join(","))
    }
}

/// An algebra given by explicit tables, snapshotted from another algebra.
/// Tables can be corrupted afterwards, which is how the law checker's
/// failure detection is exercised.
#[derive(Debug, Clone)]
pub struct TableAlg {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
    compl: Vec<Elem>,
    zero: Elem,
    one: Elem,
    sup2: Vec<Vec<Elem>>,
    inf2: Vec<Vec<Elem>>,
}

impl TableAlg {
    pub fn snapshot(alg: &dyn Cba) -> TableAlg {
        let n = alg.size();
        TableAlg {
            labels: (0..n).map(|a| alg.label(a)).collect(),
            leq: (0..n)
                .map(|a| (0..n).map(|b| alg.leq(a, b)).collect())
                .collect(),
            compl: (0..n).map(|a| alg.compl(a)).collect(),
            zero: alg.zero(),
            one: alg.one(),
            sup2: (0..n)
                .map(|a| (0..n).map(|b| alg.sup(&[a, b])).collect())
                .collect(),
            inf2: (0..n)
                .map(|a| (0..n).map(|b| alg.inf(&[a, b])).collect())
                .collect(),
        }
    }

    pub fn corrupt_compl(&mut self, at: Elem, to: Elem) {
        self.compl[at] = to;
    }
}

impl Cba for TableAlg {
    fn size(&self) -> usize {
        self.labels.len()
    }
    fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a][b]
    }
    fn compl(&self, a: Elem) -> Elem {
        self.compl[a]
    }
    fn zero(&self) -> Elem {
        self.zero
    }
    fn one(&self) -> Elem {
        self.one
    }
    fn sup(&self, xs: &[Elem]) -> Elem {
        xs.iter().fold(self.zero, |acc, &x| self.sup2[acc][x])
    }
    fn inf(&self, xs: &[Elem]) -> Elem {
        xs.iter().fold(self.one, |acc, &x| self.inf2[acc][x])
    }
    fn label(&self, a: Elem) -> String {
        self.labels[a].clone()
    }
}
