use std::collections::HashSet;

use extensional::*;
use nsp_eval::Bounds;
use nsp_term::{eta_expand, parse_proc, proc_to_sexpr, Binder, Expr, Family, Head, Proc};
use pcf_lang::SimpleType;
use proptest::prelude::*;

fn eb() -> Bounds {
    Bounds::new(4, 4, 5_000)
}

fn p(s: &str) -> Proc {
    parse_proc(s).unwrap()
}

fn pure(k: usize) -> SimpleType {
    SimpleType::pure(k)
}

fn has_dead_case(e: &Expr) -> bool {
    match e {
        Expr::Case(c) => {
            c.branches.is_all_bot()
                || c.branches.overrides.values().any(has_dead_case)
                || match &c.scrut {
                    nsp_term::Ground::App(_, args) => args.iter().any(|a| has_dead_case(&a.as_lam().unwrap().body)),
                    nsp_term::Ground::Expr(s) => has_dead_case(s),
                }
        }
        _ => false,
    }
}

#[test]
fn first_order_count_matches_closed_form() {
    for v in 0..3u64 {
        for br in 0..3u64 {
            let b = EnumBounds::new(v, 1, br, 8);
            let leaves = (v + 2) as u128;
            let want = leaves + (leaves.pow(br as u32 + 1) - 1);
            let got = enumerate_finite(&pure(1), &b).unwrap();
            assert_eq!(got.len() as u128, want, "v={v} branch={br}");
            assert_eq!(count_finite(&pure(1), &b), want);
        }
    }
}

#[test]
fn second_order_count_matches_closed_form() {
    // λf. e with e = ⊥ | n | case f(λ.c) of (...), c a leaf
    for v in 0..2u64 {
        let b = EnumBounds::new(v, 1, 1, 2);
        let leaves = (v + 2) as u128;
        let want = leaves + leaves * (leaves * leaves - 1);
        assert_eq!(enumerate_finite(&pure(2), &b).unwrap().len() as u128, want);
    }
}

#[test]
fn enumeration_is_distinct_and_pruned() {
    for (ty, b) in [(pure(1), EnumBounds::tiny().with_depth(2)), (pure(2), EnumBounds::tiny().with_depth(2))] {
        let ps = enumerate_finite(&ty, &b).unwrap();
        let keys: HashSet<String> = ps.iter().map(proc_to_sexpr).collect();
        assert_eq!(keys.len(), ps.len());
        for q in &ps {
            assert!(!has_dead_case(&q.as_lam().unwrap().body), "{}", proc_to_sexpr(q));
            assert!(nsp_term::typecheck_proc(q, &[], 4).is_ok());
        }
    }
}

#[test]
fn constant_and_y_fixed_points() {
    let b = EnumBounds::tiny();
    assert!(matches!(distinguish(&Proc::num(3), &Proc::num(3), &b, &eb()).unwrap(), ComparisonVerdict::IndistinguishableUpTo(_)));
    let y2 = denote::y_proc(&pure(2));
    let z0 = z0(&pure(2));
    assert!(distinguish(&y2, &z0, &b, &eb()).unwrap().is_positive());
    assert!(obs_leq(&Proc::bot(&y2.ty()), &y2, &b, &eb()).unwrap().is_positive());
}

/// `λg x. case g (λx′.C[g,x′]) x^η of (i ⇒ C[g,x])`, computing the value twice.
fn z0(sigma: &SimpleType) -> Proc {
    let g = Binder::fresh("g", SimpleType::arrow(sigma.clone(), sigma.clone()));
    let x = Binder::fresh("x", sigma.args()[0].clone());
    let fix = Proc::fix(sigma.clone(), Head::Var(g.name.clone()));
    let a = vec![fix, eta_expand(&x.name, &x.ty)];
    let c = Expr::case_app(g.name.clone(), a.clone(), Family::identity());
    Proc::lam(vec![g.clone(), x], Expr::case_app(g.name, a, Family::constant(c)))
}

#[test]
fn interpreter_matches_bounded_evaluation() {
    let b = EnumBounds::tiny();
    let fs = enumerate_finite(&pure(1), &b).unwrap();
    let gs = enumerate_finite(&pure(2), &b).unwrap();
    let it = Interp::new(1_000_000);
    for g in &gs {
        for f in &fs {
            let want = match outcome(g, std::slice::from_ref(f), &eb()).unwrap() {
                Outcome::Num(n) => Some(n),
                Outcome::Bot => None,
                Outcome::Unknown => panic!("finite application flagged"),
            };
            assert_eq!(it.apply(g, std::slice::from_ref(f)), want);
        }
    }
}

#[test]
fn order_is_a_partial_order_on_first_order_universe() {
    let b = EnumBounds::tiny();
    let u = enumerate_finite(&pure(1), &b).unwrap();
    let n = u.len();
    let mut rel = vec![vec![String::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            rel[i][j] = ext_order_finite(&u[i], &u[j], &b).unwrap().label().to_string();
        }
    }
    for i in 0..n {
        assert_eq!(rel[i][i], "equal");
        for j in 0..n {
            let flipped = match rel[i][j].as_str() {
                "less" => "greater",
                "greater" => "less",
                other => other,
            };
            assert_eq!(rel[j][i], flipped);
            for k in 0..n {
                let le = |a: usize, c: usize| matches!(rel[a][c].as_str(), "less" | "equal");
                if le(i, j) && le(j, k) {
                    assert!(le(i, k));
                }
            }
        }
    }
}

#[test]
fn improvement_on_every_first_order_pair() {
    let b = EnumBounds::tiny();
    let u = enumerate_finite(&pure(1), &b).unwrap();
    let mut pairs = 0;
    for f in &u {
        for g in &u {
            if ext_order_finite(f, g, &b).unwrap().label() != "less" {
                continue;
            }
            pairs += 1;
            let r = improve(f, g, &b).unwrap();
            assert_eq!(ext_order_finite(f, &r.result, &b).unwrap().label(), "less");
            assert!(ext_order_finite(&r.result, g, &b).unwrap().is_apart());
        }
    }
    assert!(pairs > 10);
}

#[test]
fn leaf_replacement_at_level_two() {
    let f = p("(lam ((g (-> N N))) (case (app g (lam () bot)) (1 0) (default bot)))");
    let f2 = p("(lam ((g (-> N N))) (case (app g (lam () bot)) (0 5) (1 0) (default bot)))");
    let b = EnumBounds::tiny();
    let r = improve(&f, &f2, &b).unwrap();
    assert!(matches!(r.case, ImprovementCase::LeafReplacement { a: 0, .. }));
    assert_eq!(ext_order_finite(&f, &r.result, &b).unwrap().label(), "less");
    assert!(ext_order_finite(&r.result, &f2, &b).unwrap().is_apart());
}

#[test]
fn saturation_at_level_two() {
    let f = p("(lam ((g (-> N N))) (case (app g (lam () 1)) (1 0) (default bot)))");
    let f2 = p("(lam ((g (-> N N))) (case (app g (lam () 1)) (1 0) (2 3) (default bot)))");
    let q = p("(lam (x) (case (app x) (1 2) (default bot)))");
    let r = improve_at(&f, &q, 3).unwrap();
    let ImprovementCase::Saturation { n, probe } = &r.case else { panic!("expected saturation") };
    assert_eq!(*n, 4);
    assert_eq!(Interp::new(10_000).apply(&r.result, std::slice::from_ref(probe)), Some(4));
    let b = EnumBounds::new(1, 1, 1, 2);
    assert_eq!(ext_order_finite(&f, &r.result, &b).unwrap().label(), "less");
    assert!(ext_order_finite(&r.result, &f2, &b).unwrap().is_apart());
}

#[test]
fn super_identity_census_first_order() {
    let phis = enumerate_finite(&SimpleType::arrow(pure(1), pure(1)), &EnumBounds::tiny().with_depth(2)).unwrap();
    let dom = ScanDomain::new(1, &EnumBounds::tiny()).unwrap();
    let mut identity = 0;
    for phi in &phis {
        match dom.scan(phi) {
            ScanVerdict::Improves(f) => panic!("{} improves {}", proc_to_sexpr(phi), proc_to_sexpr(&f)),
            ScanVerdict::IdentityUpToBounds { .. } => identity += 1,
            ScanVerdict::NotAboveIdentity(_) => {}
        }
    }
    assert!(identity >= 1);
}

#[test]
fn csv_reports() {
    let mut buf = Vec::new();
    let rows = vec![("const".to_string(), obs_leq(&Proc::num(0), &Proc::num(1), &EnumBounds::tiny(), &eb()).unwrap())];
    report::write_verdicts(&mut buf, &rows).unwrap();
    let s = String::from_utf8(buf).unwrap();
    assert!(s.starts_with("pair,verdict,bounds,left,right,witness\n"));
    assert!(s.contains("const,NotLeq,,0,1,"));
}

fn pick(n: usize) -> impl Strategy<Value = usize> {
    0..n
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn distinguish_is_symmetric(i in pick(27), j in pick(27)) {
        let u = enumerate_finite(&pure(2), &EnumBounds::tiny()).unwrap();
        let b = EnumBounds::tiny();
        let a = distinguish(&u[i], &u[j], &b, &eb()).unwrap();
        let c = distinguish(&u[j], &u[i], &b, &eb()).unwrap();
        prop_assert_eq!(a.is_positive(), c.is_positive());
        if let Some(w) = a.witness() {
            prop_assert!(w.replay(&u[i], &u[j], &eb()));
        }
    }

    #[test]
    fn obs_leq_agrees_with_order(i in pick(11), j in pick(11)) {
        let b = EnumBounds::tiny();
        let u = enumerate_finite(&pure(1), &b).unwrap();
        let leq = obs_leq(&u[i], &u[j], &b, &eb()).unwrap().is_positive();
        let ord = ext_order_finite(&u[i], &u[j], &b).unwrap();
        prop_assert_eq!(leq, matches!(ord.label(), "less" | "equal"));
    }
}
