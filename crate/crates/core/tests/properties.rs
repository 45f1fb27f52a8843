//! Property tests for the syntax layer: printing parses back, alpha
//! normalization is canonical, substitution respects free variables and
//! alpha-equivalence, and cedents absorb permutation and duplication.

use proptest::prelude::*;

use g1lc::calculus::Sequent;
use g1lc::syntax::{
    alpha_eq, parse_formula, subst_second, Abstract, AtomHead, Formula, SecVar, Signature, Term0,
};

fn sig() -> Signature {
    let mut s = Signature::default();
    s.consts.insert("c".into());
    s.consts.insert("d".into());
    s.funcs.insert("f".into(), 1);
    s.rels.insert("R".into(), 1);
    s.rels.insert("S".into(), 2);
    s
}

fn arb_term() -> impl Strategy<Value = Term0> {
    let leaf = prop_oneof![
        prop_oneof![Just("x"), Just("y"), Just("z")].prop_map(|v| Term0::var(v)),
        prop_oneof![Just("c"), Just("d")].prop_map(|c| Term0::cnst(c)),
    ];
    leaf.prop_recursive(2, 4, 1, |inner| {
        inner.prop_map(|t| Term0::App("f".into(), vec![t]))
    })
}

fn arb_formula() -> impl Strategy<Value = Formula> {
    let atom = prop_oneof![
        Just(Formula::prop("P0")),
        Just(Formula::prop("Q0")),
        arb_term().prop_map(|t| Formula::Atom(AtomHead::Rel("R".into(), 1), vec![t])),
        (arb_term(), arb_term()).prop_map(|(a, b)| Formula::Atom(
            AtomHead::Rel("S".into(), 2),
            vec![a, b]
        )),
        arb_term().prop_map(|t| Formula::Atom(AtomHead::Var(SecVar::new("X", 1)), vec![t])),
    ];
    atom.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (prop_oneof![Just("x"), Just("y")], inner.clone())
                .prop_map(|(v, b)| Formula::Exists0(v.into(), Box::new(b))),
            (prop_oneof![Just("x"), Just("y")], inner.clone())
                .prop_map(|(v, b)| Formula::Forall0(v.into(), Box::new(b))),
            (prop_oneof![Just("U"), Just("V")], inner.clone()).prop_map(|(v, b)| {
                Formula::Exists1(SecVar::new(v, 1), Box::new(b))
            }),
            (prop_oneof![Just("U"), Just("V")], inner)
                .prop_map(|(v, b)| { Formula::Forall1(SecVar::new(v, 1), Box::new(b)) }),
        ]
    })
}

fn arb_abstract() -> impl Strategy<Value = Abstract> {
    arb_formula().prop_map(|body| Abstract::new(vec!["w".into()], body).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_then_parse_is_identity_up_to_alpha(f in arb_formula()) {
        let printed = f.to_string();
        let parsed = parse_formula(&printed, &sig()).unwrap();
        prop_assert!(alpha_eq(&f, &parsed), "printed: {printed}");
    }

    #[test]
    fn alpha_normalize_is_canonical(f in arb_formula()) {
        let n = f.alpha_normalize();
        prop_assert!(alpha_eq(&f, &n));
        prop_assert_eq!(n.clone(), n.alpha_normalize());
    }

    #[test]
    fn identity_abstract_substitution(f in arb_formula()) {
        for sv in f.free_vars1() {
            if sv.arity == 0 { continue; }
            let got = subst_second(&f, &sv, &Abstract::eta(&sv)).unwrap();
            prop_assert!(alpha_eq(&got, &f));
        }
    }

    #[test]
    fn substitution_free_variable_bound(f in arb_formula(), t in arb_abstract()) {
        let x = SecVar::new("X", 1);
        let got = subst_second(&f, &x, &t).unwrap();
        // first-order free variables
        let mut allowed = f.free_vars0();
        allowed.extend(t.free_vars0());
        for v in got.free_vars0() {
            prop_assert!(allowed.contains(&v), "unexpected free variable {v}");
        }
        // second-order: X is gone unless reintroduced by the abstract
        let mut allowed1: Vec<SecVar> =
            f.free_vars1().into_iter().filter(|sv| sv.name != "X").collect();
        allowed1.extend(t.free_vars1());
        for sv in got.free_vars1() {
            prop_assert!(allowed1.contains(&sv), "unexpected secvar {}", sv.name);
        }
    }

    #[test]
    fn substitution_commutes_with_alpha(f in arb_formula(), t in arb_abstract()) {
        let x = SecVar::new("X", 1);
        let a = subst_second(&f, &x, &t).unwrap();
        let b = subst_second(&f.alpha_normalize(), &x, &t.alpha_normalize()).unwrap();
        prop_assert!(alpha_eq(&a, &b));
    }

    #[test]
    fn cedents_absorb_structural_noise(fs in proptest::collection::vec(arb_formula(), 1..5), seed in any::<u64>()) {
        let base = Sequent::from_formulas(fs.clone(), fs.clone());
        // duplicate and rotate
        let mut noisy = fs.clone();
        noisy.extend(fs.iter().cloned());
        let k = (seed as usize) % noisy.len();
        noisy.rotate_left(k);
        let shuffled = Sequent::from_formulas(noisy.clone(), noisy);
        prop_assert_eq!(base, shuffled);
    }
}
