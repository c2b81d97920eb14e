use std::collections::BTreeMap;

use pcf_lang::library::{add, mul, phi, z_updown};
use pcf_lang::{approximate, classify, parse_pcf, parse_pcf_in, run, step, Context, Oracle, RunResult, SimpleType, Term};
use proptest::prelude::*;

const J0: usize = 32;

fn ctx() -> Context {
    let sq: BTreeMap<u64, u64> = (0..6).map(|n| (n, n * n)).collect();
    Context::default().with_oracle(Oracle::new("sq", sq))
}

/// Closed programs of type N: arithmetic, `ifzero`, recursion through the
/// library's `add`/`mul`, a local `Y` loop and a partial oracle.
fn program() -> impl Strategy<Value = String> {
    let leaf = (0u64..4).prop_map(|n| n.to_string());
    leaf.prop_recursive(4, 32, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| format!("(suc {a})")),
            inner.clone().prop_map(|a| format!("(pre {a})")),
            (inner.clone(), inner.clone(), inner.clone()).prop_map(|(a, b, c)| format!("(ifzero {a} {b} {c})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("(add {a} {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("(mul {a} {b})")),
            inner.clone().prop_map(|a| format!("(oracle sq {a})")),
            inner.clone().prop_map(|a| format!("(Y[N->N] (\\f:N->N. \\n:N. ifzero n 0 (f (pre n))) {a})")),
            inner.prop_map(|a| format!("((\\x:N. ifzero x x (pre x)) {a})")),
        ]
    })
}

fn parse(src: &str) -> Term {
    let bin = SimpleType::from_args(vec![SimpleType::base(), SimpleType::base()]);
    let c = ctx().with_var("add", bin.clone()).with_var("mul", bin);
    parse_pcf_in(src, &c).unwrap().subst("add", &add()).subst("mul", &mul())
}

#[test]
fn library_terms_are_closed_and_typed() {
    for k in 1..=3 {
        for t in [z_updown(k), phi(k)] {
            assert!(t.is_closed() && t.well_typed(), "{t}");
        }
    }
    assert_eq!(run(&Term::apps(mul(), [Term::num(3), Term::num(4)]).unwrap(), 100_000).unwrap(), RunResult::Value(12));
}

#[test]
fn divergence_is_reported_with_the_fuel_spent() {
    let t = parse_pcf("Y[N] (\\x:N. suc x)").unwrap();
    assert_eq!(run(&t, 250).unwrap(), RunResult::Diverged(250));
}

#[test]
fn printed_programs_reparse() {
    for src in ["suc (suc 0)", "(\\f:N->N. f (f 1)) suc", "Y[N->N] (\\f:N->N. \\n:N. ifzero n 0 (f (pre n))) 3", "byval (\\x:N. x) 2"] {
        let t = parse_pcf(src).unwrap();
        let again = parse_pcf(&t.to_string()).unwrap();
        assert_eq!(run(&t, 10_000).unwrap(), run(&again, 10_000).unwrap(), "{src}");
        assert_eq!(again.to_string(), t.to_string());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn evaluation_is_deterministic(src in program()) {
        let t = parse(&src);
        prop_assert_eq!(run(&t, 200_000).unwrap(), run(&t, 200_000).unwrap());
        // Steps rename binders, so compare where they lead.
        let (a, b) = (step(&t), step(&t));
        prop_assert_eq!(a.is_some(), b.is_some());
        if let (Some(a), Some(b)) = (a, b) {
            prop_assert_eq!(run(&a, 200_000).unwrap(), run(&b, 200_000).unwrap());
        }
    }

    #[test]
    fn reduction_preserves_types(src in program()) {
        let mut t = parse(&src);
        for _ in 0..300 {
            prop_assert!(t.well_typed() && t.is_closed());
            prop_assert!(t.ty().is_base());
            match step(&t) {
                Some(next) => t = next,
                None => break,
            }
        }
    }

    #[test]
    fn approximants_are_sound(src in program(), j in 0usize..6) {
        let t = parse(&src);
        if let RunResult::Value(n) = run(&approximate(&t, j), 200_000).unwrap() {
            prop_assert_eq!(run(&t, 1_000_000).unwrap(), RunResult::Value(n));
        }
    }

    #[test]
    fn large_approximants_reach_the_value(src in program()) {
        let t = parse(&src);
        let full = run(&t, 1_000_000).unwrap();
        let approx = run(&approximate(&t, J0), 1_000_000).unwrap();
        match full {
            RunResult::Value(_) => prop_assert_eq!(approx, full),
            _ => prop_assert!(!matches!(approx, RunResult::Value(_))),
        }
    }

    #[test]
    fn approximation_removes_recursion_and_oracles(src in program(), j in 0usize..8) {
        let a = approximate(&parse(&src), j);
        let tag = classify(&a);
        // ⊥ itself is a level-0 loop.
        prop_assert!(tag.max_y_level.map_or(true, |l| l == 0));
        prop_assert!(!tag.uses_oracles);
        prop_assert!(tag.in_pcf_k(0));
        prop_assert!(a.well_typed() && *a.ty() == SimpleType::base());
    }
}
