//! The pair construction over a complete Boolean algebra: elements are
//! pairs `(box, diamond)` with `box <= diamond`, read as degree of truth
//! and degree of non-falsity. Two orders matter: the componentwise one
//! (`leq`, a complete lattice) and the information order (`tri`) in which
//! the diamond component flips. Suprema and infima for `tri` are computed
//! by the componentwise formulas and may fall outside the carrier, so they
//! return a raw pair with an in-carrier flag.

use super::{Cba, Elem};

/// One element of the pair algebra: `bx <= dia` in the underlying algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DPair {
    pub bx: Elem,
    pub dia: Elem,
}

/// A componentwise pair that need not satisfy `bx <= dia`; `in_d` says
/// whether it does.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RawPair {
    pub bx: Elem,
    pub dia: Elem,
    pub in_d: bool,
}

/// A view of the pair algebra over a borrowed base algebra.
#[derive(Clone, Copy)]
pub struct DAlg<'a> {
    pub alg: &'a dyn Cba,
}

impl<'a> DAlg<'a> {
    pub fn new(alg: &'a dyn Cba) -> Self {
        DAlg { alg }
    }

    pub fn pair(&self, bx: Elem, dia: Elem) -> Option<DPair> {
        if self.alg.leq(bx, dia) {
            Some(DPair { bx, dia })
        } else {
            None
        }
    }

    /// `(1,1)`: definitely true.
    pub fn top(&self) -> DPair {
        DPair {
            bx: self.alg.one(),
            dia: self.alg.one(),
        }
    }

    /// `(0,0)`: definitely false.
    pub fn bot(&self) -> DPair {
        DPair {
            bx: self.alg.zero(),
            dia: self.alg.zero(),
        }
    }

    /// `(0,1)`: fully undetermined.
    pub fn undet(&self) -> DPair {
        DPair {
            bx: self.alg.zero(),
            dia: self.alg.one(),
        }
    }

    pub fn diag(&self, a: Elem) -> DPair {
        DPair { bx: a, dia: a }
    }

    /// All pairs of the carrier, in a fixed order.
    pub fn all_pairs(&self) -> Vec<DPair> {
        let mut out = Vec::new();
        for bx in 0..self.alg.size() {
            for dia in 0..self.alg.size() {
                if self.alg.leq(bx, dia) {
                    out.push(DPair { bx, dia });
                }
            }
        }
        out
    }

    /// Complement: `-(a,b) = (-b,-a)`.
    pub fn neg(&self, a: DPair) -> DPair {
        DPair {
            bx: self.alg.compl(a.dia),
            dia: self.alg.compl(a.bx),
        }
    }

    /// Componentwise order.
    pub fn leq(&self, a: DPair, b: DPair) -> bool {
        self.alg.leq(a.bx, b.bx) && self.alg.leq(a.dia, b.dia)
    }

    /// Information order: boxes grow, diamonds shrink.
    pub fn tri(&self, a: DPair, b: DPair) -> bool {
        self.alg.leq(a.bx, b.bx) && self.alg.leq(b.dia, a.dia)
    }

    pub fn sup_leq(&self, xs: &[DPair]) -> DPair {
        let bxs: Vec<Elem> = xs.iter().map(|p| p.bx).collect();
        let dias: Vec<Elem> = xs.iter().map(|p| p.dia).collect();
        DPair {
            bx: self.alg.sup(&bxs),
            dia: self.alg.sup(&dias),
        }
    }

    pub fn inf_leq(&self, xs: &[DPair]) -> DPair {
        let bxs: Vec<Elem> = xs.iter().map(|p| p.bx).collect();
        let dias: Vec<Elem> = xs.iter().map(|p| p.dia).collect();
        DPair {
            bx: self.alg.inf(&bxs),
            dia: self.alg.inf(&dias),
        }
    }

    /// `(sup of boxes, inf of diamonds)` — not always in the carrier.
    pub fn sup_tri(&self, xs: &[DPair]) -> RawPair {
        let bx = self.alg.sup(&xs.iter().map(|p| p.bx).collect::<Vec<_>>());
        let dia = self.alg.inf(&xs.iter().map(|p| p.dia).collect::<Vec<_>>());
        RawPair {
            bx,
            dia,
            in_d: self.alg.leq(bx, dia),
        }
    }

    /// `(inf of boxes, sup of diamonds)` — always in the carrier for
    /// nonempty families, but returned raw for symmetry.
    pub fn inf_tri(&self, xs: &[DPair]) -> RawPair {
        let bx = self.alg.inf(&xs.iter().map(|p| p.bx).collect::<Vec<_>>());
        let dia = self.alg.sup(&xs.iter().map(|p| p.dia).collect::<Vec<_>>());
        RawPair {
            bx,
            dia,
            in_d: self.alg.leq(bx, dia),
        }
    }

    pub fn label(&self, a: DPair) -> String {
        format!("({},{})", self.alg.label(a.bx), self.alg.label(a.dia))
    }
}

/// Complement is antitone for the information order: `a tri b` implies
/// `-a tri -b` fails nowhere. Returns a counterexample if it does.
pub fn neg_monotone_witness(d: &DAlg) -> Option<(DPair, DPair)> {
    let all = d.all_pairs();
    for &a in &all {
        for &b in &all {
            if d.tri(a, b) && !d.tri(d.neg(a), d.neg(b)) {
                return Some((a, b));
            }
        }
    }
    None
}

/// The mutual-domination hypothesis on two families: every member of each
/// family is tri-below some member of the other, in the direction the
/// monotonicity statement requires.
pub fn family_hypothesis(d: &DAlg, xs: &[DPair], ys: &[DPair]) -> bool {
    ys.iter().all(|&b| xs.iter().any(|&a| d.tri(a, b)))
        && xs.iter().all(|&a| ys.iter().any(|&b| d.tri(a, b)))
}

/// The conclusion: componentwise sup and inf are tri-monotone across the
/// two families.
pub fn family_conclusion(d: &DAlg, xs: &[DPair], ys: &[DPair]) -> bool {
    d.tri(d.sup_leq(xs), d.sup_leq(ys)) && d.tri(d.inf_leq(xs), d.inf_leq(ys))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cba::PowersetAlg;

    #[test]
    fn three_valued_structure() {
        let two = PowersetAlg::two();
        let d = DAlg::new(&two);
        let (f, u, t) = (d.bot(), d.undet(), d.top());
        assert_eq!(d.all_pairs().len(), 3);
        // f < u < t componentwise
        assert!(d.leq(f, u) && d.leq(u, t) && !d.leq(t, u) && !d.leq(u, f));
        // u is tri-below both f and t
        assert!(d.tri(u, f) && d.tri(u, t) && !d.tri(t, f) && !d.tri(f, t));
        // -t = f, -f = t, -u = u
        assert_eq!(d.neg(t), f);
        assert_eq!(d.neg(f), t);
        assert_eq!(d.neg(u), u);
    }

    #[test]
    fn componentwise_sups() {
        let two = PowersetAlg::two();
        let d = DAlg::new(&two);
        let (f, u, t) = (d.bot(), d.undet(), d.top());
        assert_eq!(d.sup_leq(&[f, t]), t);
        assert_eq!(d.inf_leq(&[f, t]), f);
        assert_eq!(d.sup_leq(&[u, f]), u);
        assert_eq!(d.sup_leq(&[]), f);
        assert_eq!(d.inf_leq(&[]), t);
    }

    #[test]
    fn tri_sup_escapes_carrier() {
        let two = PowersetAlg::two();
        let d = DAlg::new(&two);
        let (f, u, t) = (d.bot(), d.undet(), d.top());
        let s = d.sup_tri(&[t, f]);
        assert_eq!((s.bx, s.dia), (1, 0));
        assert!(!s.in_d);
        let i = d.inf_tri(&[t, f]);
        assert_eq!((i.bx, i.dia, i.in_d), (u.bx, u.dia, true));
        let single = d.sup_tri(&[u]);
        assert!(single.in_d && single.bx == u.bx && single.dia == u.dia);
    }

    #[test]
    fn set_complement_example() {
        let alg = PowersetAlg::new(2);
        let d = DAlg::new(&alg);
        // -({1},{1,2}) = ({},{2})
        let a = d.pair(0b01, 0b11).unwrap();
        assert_eq!(d.neg(a), d.pair(0b00, 0b10).unwrap());
    }

    #[test]
    fn neg_monotone_exhaustive_small() {
        for atoms in 1..=2 {
            let alg = PowersetAlg::new(atoms);
            let d = DAlg::new(&alg);
            assert_eq!(neg_monotone_witness(&d), None);
        }
    }
}
