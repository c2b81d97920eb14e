use denote::{apply_all, denote, y_proc, DenotationEnv};
use nsp_eval::Bounds;
use nsp_term::{alpha_eq_proc, syn_leq_proc, Proc};
use pcf_lang::{approx::y_approximant, parse_pcf, run, RunResult, SimpleType, Term};
use proptest::prelude::*;

fn bounds() -> Bounds {
    Bounds::new(6, 4, 1_000_000)
}

fn den(t: &Term) -> Proc {
    let d = denote(t, &DenotationEnv::new(), &bounds()).unwrap();
    assert!(!d.fuel_exhausted);
    d.proc
}

#[test]
fn closed_programs_agree_with_evaluation() {
    let progs = [
        "suc (suc 0)",
        "pre 0",
        "ifzero (pre 1) 7 8",
        "(\\f:N->N. f (f 1)) suc",
        "Y[N->N] (\\f:N->N. \\n:N. ifzero n 0 (suc (suc (f (pre n))))) 4",
        "byval (\\x:N. suc x) 2",
    ];
    for src in progs {
        let t = parse_pcf(src).unwrap();
        let RunResult::Value(n) = run(&t, 100_000).unwrap() else { panic!("{src} did not converge") };
        assert_eq!(den(&t).as_num(), Some(n), "{src}");
    }
}

#[test]
fn divergence_is_bottom() {
    let t = parse_pcf("Y[N->N] (\\f:N->N. \\n:N. f (suc n)) 0").unwrap();
    let d = denote(&t, &DenotationEnv::new(), &Bounds::new(6, 4, 2_000)).unwrap();
    assert!(d.proc.ground_body().unwrap().is_bot());
}

#[test]
fn y_approximants_climb_to_y() {
    for sigma in [SimpleType::base(), SimpleType::pure(1), SimpleType::pure(2)] {
        let y = nsp_eval::eval_proc(&y_proc(&sigma), &bounds()).term;
        let mut prev = den(&y_approximant(&sigma, 0));
        for j in 1..=5 {
            let next = den(&y_approximant(&sigma, j));
            assert!(syn_leq_proc(&prev, &next, 6, 4), "σ={sigma} j={j}");
            assert!(syn_leq_proc(&next, &y, 6, 4), "σ={sigma} j={j}");
            prev = next;
        }
        for c in 1..=3 {
            assert!(alpha_eq_proc(&den(&y_approximant(&sigma, c)), &y, c, 4), "σ={sigma} c={c}");
        }
    }
}

#[test]
fn application_matches_denotation_of_application() {
    let add = pcf_lang::library::add();
    let whole = den(&Term::apps(add.clone(), [Term::num(2), Term::num(3)]).unwrap());
    let split = apply_all(&den(&add), &[Proc::num(2), Proc::num(3)], &bounds()).unwrap();
    assert_eq!(whole.as_num(), Some(5));
    assert_eq!(split.proc.as_num(), Some(5));
}

fn arith() -> impl Strategy<Value = String> {
    let leaf = (0u64..4).prop_map(|n| n.to_string());
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| format!("(suc {a})")),
            inner.clone().prop_map(|a| format!("(pre {a})")),
            (inner.clone(), inner.clone(), inner).prop_map(|(a, b, c)| format!("(ifzero {a} {b} {c})")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adequacy_on_first_order_arithmetic(src in arith()) {
        let t = parse_pcf(&src).unwrap();
        let RunResult::Value(n) = run(&t, 100_000).unwrap() else { panic!() };
        prop_assert_eq!(den(&t).as_num(), Some(n));
    }
}
