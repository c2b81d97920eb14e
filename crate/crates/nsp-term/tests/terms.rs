use nsp_term::{
    alpha_eq_expr, alpha_eq_proc, compose_families, freshen_proc, leaf_subst, parse_proc, proc_to_dot, proc_to_sexpr, syn_leq_expr, truncate, typecheck_proc,
    Binder, Expr, Family, Name, Proc,
};
use pcf_lang::SimpleType;
use proptest::prelude::*;

const DEPTH: usize = 32;
const BB: usize = 6;

fn x() -> Name {
    Name::new("x")
}

fn f() -> Name {
    Name::new("f")
}

fn family(e: BoxedStrategy<Expr>) -> impl Strategy<Value = Family> {
    prop_oneof![
        Just(Family::identity()),
        (-1i64..=2).prop_map(Family::affine),
        Just(Family::bot()),
        e.clone().prop_map(Family::constant),
        (0u64..4, e.clone()).prop_map(|(i, e)| Family::bot().with(i, e)),
        (0u64..4, e.clone(), 0u64..4, e).prop_map(|(i, a, j, b)| Family::identity().with(i, a).with(j, b)),
    ]
}

/// Normal meta-expressions over `x : N` and `f : N -> N`.
fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![(0u64..4).prop_map(Expr::Num), Just(Expr::Bot)];
    leaf.prop_recursive(4, 24, 2, |inner| {
        let inner = inner.boxed();
        prop_oneof![
            family(inner.clone()).prop_map(|fam| Expr::case_app(x(), vec![], fam)),
            (inner.clone(), family(inner)).prop_map(|(a, fam)| Expr::case_app(f(), vec![Proc::lam(vec![], a)], fam)),
        ]
    })
}

fn closed(e: Expr) -> Proc {
    Proc::lam(vec![Binder::new(x(), SimpleType::base()), Binder::new(f(), SimpleType::pure(1))], e)
}

#[test]
fn dot_abbreviates_base_eta() {
    let p = closed(Expr::case_app(f(), vec![Proc::lam(vec![], Expr::case_app(x(), vec![], Family::identity()))], Family::identity()));
    let dot = proc_to_dot(&p, "t", 2);
    assert!(dot.starts_with("digraph \"t\" {"));
    assert!(dot.contains("λ.x"), "{dot}");
}

#[test]
fn distinct_numerals_are_not_alpha_equal() {
    assert!(!alpha_eq_proc(&Proc::num(1), &Proc::num(2), DEPTH, BB));
    assert!(alpha_eq_proc(&Proc::num(1), &Proc::num(1), DEPTH, BB));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn generated_terms_typecheck(e in expr()) {
        prop_assert!(typecheck_proc(&closed(e), &[], BB).is_ok());
    }

    #[test]
    fn alpha_eq_is_an_equivalence(a in expr(), b in expr()) {
        let (p, q) = (closed(a), closed(b));
        prop_assert!(alpha_eq_proc(&p, &p, DEPTH, BB));
        prop_assert_eq!(alpha_eq_proc(&p, &q, DEPTH, BB), alpha_eq_proc(&q, &p, DEPTH, BB));
        let p2 = freshen_proc(&p);
        prop_assert!(alpha_eq_proc(&p, &p2, DEPTH, BB));
        prop_assert_eq!(alpha_eq_proc(&p2, &q, DEPTH, BB), alpha_eq_proc(&p, &q, DEPTH, BB));
    }

    #[test]
    fn sexpr_round_trip(e in expr()) {
        let p = closed(e);
        let text = proc_to_sexpr(&p);
        let back = parse_proc(&text).unwrap();
        prop_assert!(alpha_eq_proc(&p, &back, DEPTH, BB), "{}", text);
        prop_assert_eq!(proc_to_sexpr(&back), text);
    }

    #[test]
    fn truncation_is_idempotent(e in expr(), c in 0usize..5) {
        let t = truncate(&e, c, BB);
        prop_assert!(alpha_eq_expr(&truncate(&t, c, BB), &t, DEPTH, BB));
        prop_assert!(alpha_eq_expr(&truncate(&e, c + 1, BB), &truncate(&truncate(&e, c + 1, BB), c + 1, BB), DEPTH, BB));
    }

    #[test]
    fn truncations_nest(e in expr(), c in 0usize..4) {
        let t = truncate(&e, c + 1, BB);
        prop_assert!(alpha_eq_expr(&truncate(&t, c, BB), &truncate(&e, c, BB), DEPTH, BB));
    }

    #[test]
    fn deep_truncation_is_below_the_term(e in expr()) {
        prop_assert!(syn_leq_expr(&truncate(&e, DEPTH, BB), &e, DEPTH, BB));
    }

    #[test]
    fn leaf_substitution_composes(e in expr(), a in expr(), b in expr(), k in -1i64..=2) {
        let fam1 = Family::affine(k).with(0, a);
        let fam2 = Family::identity().with(1, b);
        let twice = leaf_subst(&leaf_subst(&e, &fam1), &fam2);
        let once = leaf_subst(&e, &compose_families(&fam1, &fam2));
        prop_assert!(alpha_eq_expr(&twice, &once, DEPTH, BB));
    }

    #[test]
    fn identity_leaf_substitution_is_trivial(e in expr()) {
        prop_assert!(alpha_eq_expr(&leaf_subst(&e, &Family::identity()), &e, DEPTH, BB));
    }
}
