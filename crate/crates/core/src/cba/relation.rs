//! The algebra of closure fixed points induced by a relation map. A map
//! `M` from a finite set `X` into its powerset, with `x in M(x)` iff
//! `M(x) = X` and membership symmetric, induces the carrier of all subsets
//! that equal the intersection of the `M(x)` above them. Infimum is
//! intersection, supremum is the closure of the union, and the complement
//! of `alpha` is the intersection of `M(x)` over `x in alpha`.
//!
//! Subsets are bitmasks over `X`; the carrier is enumerated by filtering
//! every subset through the fixed-point condition, which is exact and
//! cheap at the intended sizes.

use std::collections::BTreeMap;

use super::{Cba, Elem};

pub const MAX_RELATION_SIZE: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RelationError {
    #[error("condition (1) violated at `{x}`: membership of a point in its own set must mean the set is everything")]
    Condition1 { x: String },
    #[error("condition (2) violated at `{x}`, `{y}`: membership must be symmetric")]
    Condition2 { x: String, y: String },
    #[error("relation map too large: {0} elements (limit {MAX_RELATION_SIZE})")]
    TooLarge(usize),
    #[error("bad relation file: {0}")]
    BadFile(String),
    #[error("empty base set")]
    Empty,
}

/// `M : X -> P(X)` over a finite labelled set, stored as bitmasks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationMap {
    labels: Vec<String>,
    m: Vec<u32>,
}

impl RelationMap {
    pub fn new(labels: Vec<String>, members: Vec<Vec<usize>>) -> Result<Self, RelationError> {
        if labels.is_empty() {
            return Err(RelationError::Empty);
        }
        if labels.len() > MAX_RELATION_SIZE {
            return Err(RelationError::TooLarge(labels.len()));
        }
        if members.len() != labels.len() {
            return Err(RelationError::BadFile(
                "one member list per element required".into(),
            ));
        }
        let mut m = vec![0u32; labels.len()];
        for (x, list) in members.iter().enumerate() {
            for &y in list {
                if y >= labels.len() {
                    return Err(RelationError::BadFile(format!(
                        "member index {y} out of range"
                    )));
                }
                m[x] |= 1 << y;
            }
        }
        let rm = RelationMap { labels, m };
        rm.validate()?;
        Ok(rm)
    }

    /// Build directly from masks (used by the exhaustive enumerators).
    pub fn from_masks(labels: Vec<String>, m: Vec<u32>) -> Result<Self, RelationError> {
        if labels.is_empty() {
            return Err(RelationError::Empty);
        }
        if labels.len() > MAX_RELATION_SIZE {
            return Err(RelationError::TooLarge(labels.len()));
        }
        let rm = RelationMap { labels, m };
        rm.validate()?;
        Ok(rm)
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn full(&self) -> u32 {
        if self.size() == 32 {
            u32::MAX
        } else {
            (1u32 << self.size()) - 1
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn member_mask(&self, x: usize) -> u32 {
        self.m[x]
    }

    pub fn validate(&self) -> Result<(), RelationError> {
        let full = self.full();
        for x in 0..self.size() {
            let self_member = self.m[x] & (1 << x) != 0;
            if self_member != (self.m[x] == full) {
                return Err(RelationError::Condition1 {
                    x: self.labels[x].clone(),
                });
            }
            for y in 0..self.size() {
                let xy = self.m[y] & (1 << x) != 0;
                let yx = self.m[x] & (1 << y) != 0;
                if xy != yx {
                    return Err(RelationError::Condition2 {
                        x: self.labels[x].clone(),
                        y: self.labels[y].clone(),
                    });
                }
            }
        }
        Ok(())
    }

    /// The closure of `alpha`: intersection of every `M(x)` above it, the
    /// least carrier element containing `alpha` (empty intersection is
    /// everything).
    pub fn closure(&self, alpha: u32) -> u32 {
        let mut acc = self.full();
        for x in 0..self.size() {
            if alpha & !self.m[x] == 0 {
                acc &= self.m[x];
            }
        }
        acc
    }

    /// `m(y)`: intersection of the `M(x)` containing `y`.
    pub fn little_m(&self, y: usize) -> u32 {
        let mut acc = self.full();
        for x in 0..self.size() {
            if self.m[x] & (1 << y) != 0 {
                acc &= self.m[x];
            }
        }
        acc
    }

    pub fn mask_label(&self, mask: u32) -> String {
        let mut parts = Vec::new();
        for (i, l) in self.labels.iter().enumerate() {
            if mask & (1 << i) != 0 {
                parts.push(l.clone());
            }
        }
        format!("{{{}}}", parts.join(","))
    }

    /// Text format: an `elements:` line, then one `name: members...` line
    /// per element (order free, missing lines mean the empty set).
    pub fn parse(text: &str) -> Result<Self, RelationError> {
        let mut labels: Option<Vec<String>> = None;
        let mut rows: Vec<(String, Vec<String>)> = Vec::new();
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((head, rest)) = line.split_once(':') else {
                return Err(RelationError::BadFile(format!(
                    "expected `name: members`, found `{line}`"
                )));
            };
            let head = head.trim();
            let items: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if head == "elements" {
                if labels.is_some() {
                    return Err(RelationError::BadFile("duplicate `elements:` line".into()));
                }
                labels = Some(items);
            } else {
                rows.push((head.to_string(), items));
            }
        }
        let labels = labels.ok_or_else(|| RelationError::BadFile("missing `elements:` line".into()))?;
        let index: BTreeMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        if index.len() != labels.len() {
            return Err(RelationError::BadFile("duplicate element name".into()));
        }
        let mut members = vec![Vec::new(); labels.len()];
        for (name, items) in rows {
            let Some(&x) = index.get(name.as_str()) else {
                return Err(RelationError::BadFile(format!("unknown element `{name}`")));
            };
            for item in items {
                let Some(&y) = index.get(item.as_str()) else {
                    return Err(RelationError::BadFile(format!("unknown element `{item}`")));
                };
                members[x].push(y);
            }
        }
        RelationMap::new(labels, members)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("elements: {}\n", self.labels.join(" "));
        for x in 0..self.size() {
            let items: Vec<&str> = (0..self.size())
                .filter(|&y| self.m[x] & (1 << y) != 0)
                .map(|y| self.labels[y].as_str())
                .collect();
            out.push_str(&format!("{}: {}\n", self.labels[x], items.join(" ")));
        }
        out
    }
}

/// The induced algebra: carrier of closure fixed points with the declared
/// operations.
#[derive(Debug, Clone)]
pub struct RelationCba {
    rm: RelationMap,
    carrier: Vec<u32>,
    index: BTreeMap<u32, Elem>,
}

impl RelationCba {
    pub fn build(rm: RelationMap) -> Result<Self, RelationError> {
        rm.validate()?;
        let n = rm.size();
        let total: u64 = 1u64 << n;
        let mut carrier = Vec::new();
        for mask in 0..total {
            let mask = mask as u32;
            if rm.closure(mask) == mask {
                carrier.push(mask);
            }
        }
        let index = carrier.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        Ok(RelationCba { rm, carrier, index })
    }

    pub fn relation(&self) -> &RelationMap {
        &self.rm
    }

    pub fn carrier(&self) -> &[u32] {
        &self.carrier
    }

    pub fn mask(&self, e: Elem) -> u32 {
        self.carrier[e]
    }

    pub fn elem_of_mask(&self, mask: u32) -> Option<Elem> {
        self.index.get(&mask).copied()
    }

    /// The carrier element `M(x)`; always a fixed point.
    pub fn m_elem(&self, x: usize) -> Elem {
        self.index[&self.rm.member_mask(x)]
    }

    /// The carrier element for `m(y)`.
    pub fn little_m_elem(&self, y: usize) -> Elem {
        self.index[&self.rm.little_m(y)]
    }
}

impl Cba for RelationCba {
    fn size(&self) -> usize {
        self.carrier.len()
    }
    fn leq(&self, a: Elem, b: Elem) -> bool {
        self.carrier[a] & !self.carrier[b] == 0
    }
    fn compl(&self, a: Elem) -> Elem {
        let alpha = self.carrier[a];
        let mut acc = self.rm.full();
        for x in 0..self.rm.size() {
            if alpha & (1 << x) != 0 {
                acc &= self.rm.member_mask(x);
            }
        }
        self.index[&acc]
    }
    fn zero(&self) -> Elem {
        let mut acc = self.rm.full();
        for y in 0..self.rm.size() {
            acc &= self.rm.member_mask(y);
        }
        self.index[&acc]
    }
    fn one(&self) -> Elem {
        self.index[&self.rm.full()]
    }
    fn sup(&self, xs: &[Elem]) -> Elem {
        let union = xs.iter().fold(0u32, |acc, &x| acc | self.carrier[x]);
        self.index[&self.rm.closure(union)]
    }
    fn inf(&self, xs: &[Elem]) -> Elem {
        let meet = xs
            .iter()
            .fold(self.rm.full(), |acc, &x| acc & self.carrier[x]);
        self.index[&meet]
    }
    fn label(&self, a: Elem) -> String {
        self.rm.mask_label(self.carrier[a])
    }
}

/// All relation maps over `size` elements (labelled `x1..xn`) satisfying
/// both conditions, enumerated exhaustively.
pub fn enumerate_relation_maps(size: usize) -> Vec<RelationMap> {
    assert!(size >= 1 && size <= 4, "exhaustive enumeration is for tiny sizes");
    let labels: Vec<String> = (1..=size).map(|i| format!("x{i}")).collect();
    let subsets = 1u32 << size;
    let mut out = Vec::new();
    let mut m = vec![0u32; size];
    fn rec(i: usize, size: usize, subsets: u32, m: &mut Vec<u32>, labels: &[String], out: &mut Vec<RelationMap>) {
        if i == size {
            if let Ok(rm) = RelationMap::from_masks(labels.to_vec(), m.clone()) {
                out.push(rm);
            }
            return;
        }
        for mask in 0..subsets {
            m[i] = mask;
            rec(i + 1, size, subsets, m, labels, out);
        }
    }
    rec(0, size, subsets, &mut m, &labels, &mut out);
    out
}
