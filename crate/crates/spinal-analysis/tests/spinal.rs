use denote::{byval_proc, denote, y_proc, DenotationEnv};
use extensional::{distinguish, obs_leq, ComparisonVerdict, EnumBounds};
use nsp_eval::Bounds;
use nsp_term::{eta_expand, is_eta_of, Name, Proc};
use pcf_lang::{parse_pcf, SimpleType};
use proptest::prelude::*;
use spinal_analysis::*;

fn b() -> Bounds {
    Bounds::new(8, 4, 100_000)
}

fn cfg_at(depth: usize) -> SpinalConfig {
    SpinalConfig { depth, ..Default::default() }
}

fn check(name: GalleryName, k: usize, cfg: &SpinalConfig) -> Option<SpinalCertificate> {
    let it = gallery(name, k, 0, &b()).unwrap();
    spinal_check(&it.proc, &it.env, it.g.as_ref(), cfg).unwrap()
}

#[test]
fn positive_census_at_depth_four() {
    let cfg = cfg_at(4);
    for (name, k) in [(GalleryName::F, 1), (GalleryName::F, 2), (GalleryName::Z0, 1), (GalleryName::Z0, 2), (GalleryName::Z1, 1), (GalleryName::Z1, 2)] {
        let c = check(name, k, &cfg).unwrap_or_else(|| panic!("{name} k={k}"));
        assert_eq!(c.depth(), 4);
        assert!(c.replay(&cfg), "{name} k={k}");
        assert!(!c.is_bound_relative(), "{name} k={k}");
    }
}

#[test]
fn negative_census_at_depth_five() {
    let cfg = cfg_at(5);
    for k in [1, 2] {
        assert!(check(GalleryName::ZUpDown, k, &cfg).is_none(), "Z k={k}");
    }
    assert!(spinal_check(&byval_proc(), &[], None, &cfg).unwrap().is_none());
}

#[test]
fn census_is_stable_under_reversed_dictionary() {
    let fwd = cfg_at(5);
    let mut rev = cfg_at(5);
    rev.dict.reversed = true;
    for name in [GalleryName::F, GalleryName::Y, GalleryName::ZUpDown, GalleryName::Z0, GalleryName::Z1] {
        for k in [1, 2] {
            assert_eq!(check(name, k, &fwd).is_some(), check(name, k, &rev).is_some(), "{name} k={k}");
        }
    }
}

#[test]
fn restriction_is_a_certificate() {
    let cfg = cfg_at(5);
    let c = check(GalleryName::Y, 2, &cfg).unwrap();
    for d in 1..=5 {
        let r = c.restrict(d);
        assert_eq!(r.depth(), d);
        assert!(r.replay(&cfg_at(d)));
    }
    let direct = check(GalleryName::Y, 2, &cfg_at(3)).unwrap();
    assert_eq!(direct.to_json(), c.restrict(3).to_json());
}

#[test]
fn generated_denotations_have_no_certificate() {
    let cfg = cfg_at(5);
    let terms = random_pcf_k(1, 50, 10, 1);
    assert_eq!(terms.len(), 50);
    for t in &terms {
        let d = denote(t, &DenotationEnv::new(), &Bounds::new(12, 4, 20_000)).unwrap();
        assert!(spinal_check(&d.proc, &[], None, &cfg).unwrap().is_none(), "{t}");
    }
}

#[test]
fn syntactic_discharge_implies_semantic() {
    let cfg = cfg_at(4);
    let eb = EnumBounds::tiny();
    let mut seen = 0;
    for name in [GalleryName::Y, GalleryName::Z0, GalleryName::Z1] {
        let c = check(name, 1, &cfg).unwrap();
        for rec in c.records.iter().filter(|r| r.evidence == Evidence::Syntactic) {
            let bind = rec.subst.iter().map(|s| (s.var.name.clone(), s.proc.clone())).collect();
            for (x, o) in rec.binders.iter().zip(&rec.args[rec.args.len() - rec.binders.len()..]) {
                let o = nsp_eval::eval_proc(&nsp_term::substitute_proc(o, &bind), &b()).term;
                let lhs = close(x, &eta_expand(&x.name, &x.ty));
                let rhs = close(x, &o);
                assert!(matches!(obs_leq(&lhs, &rhs, &eb, &b()).unwrap(), ComparisonVerdict::LeqUpTo(_)), "{name}");
                seen += 1;
            }
        }
    }
    assert!(seen >= 3);
}

/// `λx w⃗. e` from `λw⃗. e`.
fn close(x: &nsp_term::Binder, p: &Proc) -> Proc {
    let (ps, e) = denote::as_lambda(p);
    let mut params = vec![x.clone()];
    params.extend(ps);
    Proc::lam(params, e)
}

#[test]
fn eta_equivalent_argument_gives_semantic_certificate() {
    let src = r"\g:((N->N)->N)->(N->N)->N. Y[(N->N)->N] (\f:(N->N)->N. \x:N->N. g f (\n:N. ifzero (x n) (x n) (x n)))";
    let t = parse_pcf(src).unwrap();
    let d = denote(&t, &DenotationEnv::new(), &Bounds::new(12, 4, 100_000)).unwrap();
    let cfg = cfg_at(4);
    let c = spinal_check(&d.proc, &[], None, &cfg).unwrap().expect("certificate");
    assert!(c.is_bound_relative());
    assert!(c.records.iter().all(|r| matches!(r.evidence, Evidence::Semantic(_))));
    assert!(c.replay(&cfg));
}

#[test]
fn extended_mode_on_p_n_and_phi() {
    let cfg = SpinalConfig { mode: Mode::Extended, depth: 4, ..Default::default() };
    for name in [GalleryName::Pn, GalleryName::Phi] {
        let it = gallery(name, 1, 0, &Bounds::new(14, 4, 100_000)).unwrap();
        let c = spinal_check(&it.proc, &it.env, it.g.as_ref(), &cfg).unwrap().unwrap_or_else(|| panic!("{name}"));
        assert!(c.replay(&cfg));
    }
    // Without the numeral slot the layout does not fit.
    let it = gallery(GalleryName::Pn, 1, 0, &b()).unwrap();
    assert!(matches!(spinal_check(&it.proc, &it.env, it.g.as_ref(), &cfg_at(4)), Err(SpinalError::Type(_))));
}

#[test]
fn homogeneous_and_strong_modes() {
    for (k, l, strong) in [(1, 1, true), (1, 2, true), (2, 1, false), (2, 2, false)] {
        let p = y_proc(&SimpleType::rho(k, l));
        let hom = SpinalConfig { mode: Mode::Homogeneous, ..Default::default() };
        let c = spinal_check(&p, &[], None, &hom).unwrap().unwrap_or_else(|| panic!("({k},{l})"));
        assert!(c.replay(&hom));
        let st = SpinalConfig { mode: Mode::Strong, ..Default::default() };
        assert_eq!(spinal_check(&p, &[], None, &st).unwrap().is_some(), strong, "({k},{l})");
    }
}

#[test]
fn certificate_json_shape() {
    let c = check(GalleryName::Y, 1, &cfg_at(3)).unwrap();
    let j = c.to_json();
    assert_eq!(j["mode"], "plain");
    assert_eq!(j["depth"], 3);
    let paths: Vec<&str> = j["spine"].as_array().unwrap().iter().map(|e| e["path"].as_str().unwrap()).collect();
    assert_eq!(paths, ["root", "a0", "a0.a0"]);
}

#[test]
fn p_n_shape() {
    let it = gallery(GalleryName::Pn, 1, 0, &b()).unwrap();
    let l = it.proc.as_lam().unwrap();
    let c = l.body.as_case().unwrap();
    let nsp_term::Ground::App(_, args) = &c.scrut else { panic!() };
    assert_eq!(args[0].as_num(), Some(0));
    assert!(is_eta_of(&args[2], &l.params[0].name));
}

#[test]
fn x0_is_extensionally_eta() {
    let it = gallery(GalleryName::X0, 1, 0, &b()).unwrap();
    let x = &it.env[0].0;
    let eta = eta_expand(x, &SimpleType::pure(1));
    let eb = EnumBounds::new(3, 2, 3, 2);
    for sample in x_samples(1, 50).unwrap() {
        let bind = [(x.clone(), sample)].into_iter().collect();
        let l = nsp_eval::eval_proc(&nsp_term::substitute_proc(&it.proc, &bind), &b()).term;
        let r = nsp_eval::eval_proc(&nsp_term::substitute_proc(&eta, &bind), &b()).term;
        assert!(distinguish(&l, &r, &eb, &b()).unwrap().is_positive());
    }
    assert!(!is_eta_of(&it.proc, x));
}

#[test]
fn p_n_decomposes() {
    let cfg = DecomposeConfig::new(1);
    let g = Name::new("g");
    for n in 0..=3 {
        let d = qn_decompose(&p_n(&g, 1, n, 8), &g, n, &cfg).unwrap();
        for c in &d.checks {
            assert!(c.passed, "n={n}: {c}");
            assert!(c.samples >= 50 || c.name == "a = λ.n");
        }
        assert_eq!(d.a.as_num(), Some(n));
    }
}

#[test]
fn wrong_numeral_fails_first_check() {
    let cfg = DecomposeConfig::new(1);
    let g = Name::new("g");
    let d = qn_decompose(&p_n(&g, 1, 1, 8), &g, 0, &cfg).unwrap();
    assert!(!d.checks[0].passed);
    assert!(d.checks[0].detail.contains("gives bot where p_n gives 0"), "{}", d.checks[0].detail);
}

#[test]
fn masked_chain_reaches_depth_three() {
    let cfg = DecomposeConfig::new(1);
    let g = Name::new("g");
    let chain = qn_chain(&p_n(&g, 1, 0, 8), &g, 0, 3, &cfg).unwrap();
    assert_eq!(chain.len(), 3);
    for (n, d) in chain.iter().enumerate() {
        assert!(d.passed(), "step {n}");
        assert_eq!(d.a.as_num(), Some(n as u64));
    }
}

#[test]
fn strictify_gives_simple_procedures() {
    let bb = 4;
    for name in [GalleryName::F, GalleryName::Y, GalleryName::Z0, GalleryName::Z1, GalleryName::ZUpDown] {
        let it = gallery(name, 1, 0, &b()).unwrap();
        let (params, _) = denote::as_lambda(&it.proc);
        let (g, g_ty) = match it.g.as_ref().and_then(|g| it.env.iter().find(|(n, _)| n == g)) {
            Some((g, t)) => (g.clone(), t.clone()),
            None => (params[0].name.clone(), params[0].ty.clone()),
        };
        // Simplicity is about g : 0 -> (k+1) -> (k+1); an endomorphism g is
        // first widened with a dummy numeral argument.
        let wide = rho(1);
        let h = Name::new("h");
        let shim = shim(&h, &g_ty);
        let bind = [(g.clone(), shim)].into_iter().collect();
        let q = nsp_term::substitute_proc(&it.proc, &bind);
        let (s, _) = strictify(&q, &h, &wide, &b()).unwrap();
        assert!(is_simple(&s, &h, bb), "{name}");
    }
    let g = Name::new("g");
    assert!(is_simple(&p_n(&g, 1, 0, 6), &g, bb));
    let phi = gallery(GalleryName::Phi, 1, 0, &b()).unwrap().proc;
    let (params, body) = denote::as_lambda(&phi);
    let inner = Proc::lam(params[1..].to_vec(), body);
    let (s, _) = strictify(&inner, &params[0].name, &params[0].ty, &b()).unwrap();
    assert!(is_simple(&s, &params[0].name, bb));
}

/// `λf x. h (λ.0) f x`, an endomorphism built from `h : ρ`.
fn shim(h: &Name, ty: &SimpleType) -> Proc {
    let params: Vec<nsp_term::Binder> = ty.args().into_iter().map(|t| nsp_term::Binder::fresh("w", t)).collect();
    let mut args = vec![Proc::num(0)];
    args.extend(params.iter().map(|b| eta_expand(&b.name, &b.ty)));
    Proc::lam(params, nsp_term::Expr::case_app(h.clone(), args, nsp_term::Family::identity()))
}

#[test]
fn strictify_preserves_verdicts_under_strict_arguments() {
    let g = Name::new("g");
    let q = p_n(&g, 1, 0, 6);
    let (s, _) = strictify(&q, &g, &rho(1), &b()).unwrap();
    let eb = EnumBounds::tiny();
    for sg in strict_samples(1, 20).unwrap() {
        let bind = [(g.clone(), sg)].into_iter().collect();
        let l = nsp_eval::eval_proc(&nsp_term::substitute_proc(&q, &bind), &b()).term;
        let r = nsp_eval::eval_proc(&nsp_term::substitute_proc(&s, &bind), &b()).term;
        assert!(distinguish(&l, &r, &eb, &b()).unwrap().is_positive());
    }
}

#[test]
fn figure_structure() {
    let bb = 3;
    let deep = Bounds::new(10, bb, 100_000);
    let y3 = nsp_eval::eval_proc(&y_proc(&SimpleType::pure(3)), &deep).term;
    let z3 = gallery(GalleryName::ZUpDown, 2, 0, &deep).unwrap().proc;
    assert!(eta_spine_levels(&y3, 4, bb) >= 2);
    assert_eq!(eta_spine_levels(&z3, 4, bb), 0);
    let fy = funnel_report(&y3, 2, bb);
    let fz = funnel_report(&z3, 2, bb);
    assert!(fy.using_parameters > 0);
    assert!(fz.applications > 0 && fz.arguments > 0);
    assert_eq!(fz.using_parameters, 0);
}

#[test]
fn mask_laws_table() {
    let b = b();
    let eb = EnumBounds::tiny();
    let bot = Proc::bot(&rho(1));
    let m = mask(&bot, 2, 4).unwrap();
    let table: Vec<bool> = (0..6).map(|n| trivial_at(&m, n, &b)).collect();
    assert_eq!(table, [false, false, true, true, false, false]);
    for sg in strict_samples(1, 50).unwrap() {
        let m = mask(&sg, 2, 4).unwrap();
        for n in 0..6 {
            assert_eq!(trivial_at(&m, n, &b), (2..4).contains(&n) || trivial_at(&sg, n, &b));
        }
        let same = mask(&sg, 1, 1).unwrap();
        assert!(distinguish(&same, &sg, &eb, &b).unwrap().is_positive());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn masks_compose(n in 0u64..4, i in 0usize..50) {
        let sg = strict_samples(1, 50).unwrap().swap_remove(i);
        let two = mask(&mask(&sg, n + 1, n + 2).unwrap(), n, n + 1).unwrap();
        let one = mask(&sg, n, n + 2).unwrap();
        prop_assert!(distinguish(&two, &one, &EnumBounds::tiny(), &b()).unwrap().is_positive());
    }

    #[test]
    fn empty_mask_is_identity(n in 0u64..5, i in 0usize..50) {
        let sg = strict_samples(1, 50).unwrap().swap_remove(i);
        let m = mask(&sg, n, n).unwrap();
        prop_assert!(distinguish(&m, &sg, &EnumBounds::tiny(), &b()).unwrap().is_positive());
    }
}
