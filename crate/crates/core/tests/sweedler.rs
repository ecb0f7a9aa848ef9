use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qhayd_core::ayd::{self, AydTypeI, AydTypeII};
use qhayd_core::repcat::Module;
use qhayd_core::sweedler::{
    self, compile, corpus, eval_equation, eval_plan, parse_equation, parse_expr, parse_file,
    Context, Decls, DslError, NodeKind,
};
use qhayd_core::{zoo, Field, Matrix, QuasiHopfAlgebra};

fn f3() -> Field {
    Field::prime(3).unwrap()
}

/// Every zoo algebra over a field where it is defined.
fn zoo_algebras() -> Vec<(&'static str, Arc<QuasiHopfAlgebra>)> {
    let f7 = Field::prime(7).unwrap();
    vec![
        ("kz2", zoo::algebra_by_name("kz2", Field::Rational).unwrap()),
        ("kz3", zoo::algebra_by_name("kz3", Field::Rational).unwrap()),
        ("ks3", zoo::algebra_by_name("ks3", Field::Rational).unwrap()),
        ("h4", zoo::algebra_by_name("h4", Field::Rational).unwrap()),
        (
            "kz2_omega",
            zoo::algebra_by_name("kz2_omega", f3()).unwrap(),
        ),
        ("kz3_omega", zoo::algebra_by_name("kz3_omega", f7).unwrap()),
    ]
}

fn corpus_eq(name: &str) -> (Decls, sweedler::Equation) {
    parse_file(corpus::equation(name).unwrap()).unwrap()
}

fn holds(ctx: &Context, name: &str) -> bool {
    let (decls, eq) = corpus_eq(name);
    eval_equation(ctx, &eq, &decls).unwrap().holds
}

fn random_matrix(field: Field, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    Matrix::from_fn(field, rows, cols, |_, _| {
        field.from_i64(rng.gen_range(-1..=1))
    })
}

#[test]
fn parses_the_documented_examples() {
    let decls = Decls::new()
        .algebra_var("h")
        .module_var("m", "M")
        .coaction(sweedler::Coaction::Rho, "M");
    let e = parse_expr("h^{1} m<0;a> (x) h^{2} m<1;a>", &decls).unwrap();
    assert_eq!(e.terms.len(), 1);
    assert_eq!(e.terms[0].factors.len(), 2);
    let e = parse_expr("eps(h) alpha", &decls).unwrap();
    assert_eq!(e.terms[0].factors.len(), 1);
}

#[test]
fn rejects_malformed_input() {
    let decls = Decls::new()
        .algebra_var("h")
        .module_var("m", "M")
        .coaction(sweedler::Coaction::Rho, "M");
    let err = |s: &str| parse_expr(s, &decls).unwrap_err();

    assert!(matches!(err("h^{1} (x) h^{3}"), DslError::Syntax { .. }));
    assert!(matches!(
        err("h^{1} (x) h^{21}"),
        DslError::Bracketing { .. }
    ));
    assert!(matches!(
        err("h^{1} (x) h^{1}"),
        DslError::Bracketing { .. }
    ));
    assert!(matches!(err("k"), DslError::UnknownVariable(_)));
    assert!(matches!(err("foo(h)"), DslError::UnknownFunction(_)));
    assert!(matches!(err("m<0> (x) m<0>"), DslError::UnpairedLeg(_)));
    assert!(matches!(err("m<0>"), DslError::UnpairedLeg(_)));
    assert!(matches!(err("m<1>"), DslError::UnpairedLeg(_)));
    assert!(matches!(err("P (x) Q"), DslError::IncompleteInstance(_)));
    assert!(matches!(
        err("X (x) Y (x) Z_2"),
        DslError::IncompleteInstance(_)
    ));
    assert!(matches!(err("m h"), DslError::Type(_)));
    assert!(matches!(err("m^{1}"), DslError::Type(_)));
    assert!(matches!(err("h (x)"), DslError::Syntax { .. }));
    assert!(matches!(
        err("h m[0] (x) m[1]"),
        DslError::MissingCoaction(_)
    ));

    let e = err("h +\n  h^{4}");
    assert_eq!(
        e,
        DslError::Syntax {
            line: 2,
            col: 6,
            msg: "invalid coproduct path `4`: paths are binary addresses over 1 and 2".into()
        }
    );
}

#[test]
fn print_then_parse_is_identity_on_the_corpus() {
    for (name, src) in corpus::EQUATIONS {
        let (decls, eq) = parse_file(src).unwrap_or_else(|e| panic!("{name}: {e}"));
        let printed = eq.to_string();
        let again =
            parse_equation(&printed, &decls).unwrap_or_else(|e| panic!("{name}: {e}\n{printed}"));
        assert_eq!(again, eq, "{name}");
        assert_eq!(again.to_string(), printed, "{name}");
    }
    let (decls, e) = sweedler::parse_expr_file(corpus::LAMBDA).unwrap();
    assert_eq!(parse_expr(&e.to_string(), &decls).unwrap(), e);
}

#[test]
fn rounds_trips_literals_signs_and_functions() {
    let decls = Decls::new().algebra_var("h").algebra_var("k");
    for text in [
        "- 2 h (x) k + 1/2 S(k) (x) Sinv(h) - S2(h) (x) 3",
        "(h k)^{1} (x) (h k)^{2}",
    ] {
        let e = parse_expr(text, &decls).unwrap();
        assert_eq!(parse_expr(&e.to_string(), &decls).unwrap(), e);
    }
    assert!(matches!(
        parse_expr("rho0_a(h) (x) rho1_a(h)", &decls),
        Err(DslError::Type(_))
    ));
    let e = parse_expr("- 2 h (x) k + 1/2 S(k) (x) Sinv(h)", &decls).unwrap();
    assert_eq!(e.to_string(), "- 2 h (x) k + 1/2 S(k) (x) Sinv(h)");
}

#[test]
fn leg_function_syntax_matches_brackets() {
    let decls = Decls::new()
        .algebra_var("h")
        .module_var("m", "M")
        .coaction(sweedler::Coaction::Lam, "M");
    let a = parse_expr("lam0_a(h m) (x) lam1_a(h m)", &decls).unwrap();
    let b = parse_expr("(h m)[0;a] (x) (h m)[1;a]", &decls).unwrap();
    assert_eq!(a, b);
}

#[test]
fn plan_shapes() {
    let decls = Decls::new().algebra_var("a");
    let plan = compile(&parse_expr("a^{1} (x) a^{2}", &decls).unwrap(), &decls).unwrap();
    assert_eq!(plan.count(&NodeKind::Coproduct), 1);
    assert_eq!(plan.output.len(), 2);
    assert_eq!(plan.summary(), "Basis(a)=1 Coproduct=1; out=[H, H]");

    let (decls, eq) = corpus_eq("ayd_module");
    let lhs = compile(&eq.lhs, &decls).unwrap();
    assert_eq!(
        lhs.summary(),
        "Act(M)=1 Basis(h)=1 Basis(m)=1 Coproduct=1 Mul=1 Rho(M)=1; out=[M, H]"
    );

    let (decls, eq) = corpus_eq("quasi_comodule");
    let rhs = compile(&eq.rhs, &decls).unwrap();
    assert_eq!(rhs.count(&NodeKind::PhiInv), 2);
    assert_eq!(rhs.count(&NodeKind::Rho("M".into())), 1);
    let lhs = compile(&eq.lhs, &decls).unwrap();
    assert_eq!(lhs.count(&NodeKind::PhiInv), 1);
    assert_eq!(lhs.count(&NodeKind::Rho("M".into())), 2);

    let again = compile(&eq.rhs, &decls).unwrap();
    assert_eq!(again, rhs);
}

#[test]
fn algebra_axioms_agree_with_checkers() {
    let pairs = [
        ("coassoc", "coassoc"),
        ("counit_left", "counit"),
        ("counit_right", "counit"),
        ("unass", "phi-counit"),
        ("antipode_alpha", "antipode-alpha"),
        ("antipode_beta", "antipode-beta"),
        ("antipode_phi", "antipode-phi"),
        ("antipode_phi_inv", "antipode-phi-inv"),
    ];
    for (name, h) in zoo_algebras() {
        let mut variants = vec![h.clone()];
        // Mutated antipode data: the structure stays well-shaped but the
        // antipode identities break.
        let mut parts = h.parts();
        parts.alpha = parts.alpha.iter().map(|a| a + &h.field().one()).collect();
        if let Ok(bad) = QuasiHopfAlgebra::new(parts) {
            variants.push(Arc::new(bad));
        }
        for alg in variants {
            let report = alg.validate();
            let ctx = Context::new(alg.clone());
            for (eq_name, item) in pairs {
                assert_eq!(
                    holds(&ctx, eq_name),
                    report.passed(item).unwrap(),
                    "{name}: {eq_name} vs {item}"
                );
            }
        }
    }
}

#[test]
fn phi_times_phi_inverse_is_one() {
    for (name, h) in zoo_algebras() {
        let ctx = Context::new(h.clone());
        let decls = Decls::new();
        let eq = parse_equation("X P (x) Y Q (x) Z R = 1 (x) 1 (x) 1", &decls).unwrap();
        assert!(eval_equation(&ctx, &eq, &decls).unwrap().holds, "{name}");
        let eq = parse_equation("P_1 X_2 (x) Q_1 Y_2 (x) R_1 Z_2 = 1 (x) 1 (x) 1", &decls).unwrap();
        assert!(eval_equation(&ctx, &eq, &decls).unwrap().holds, "{name}");
    }
}

fn type_i_context(m: &Module, rho: &Matrix) -> Context {
    Context::new(m.algebra().clone())
        .with_module("M", m.clone())
        .with_rho("M", rho.clone())
}

fn type_ii_context(m: &Module, lam: &Matrix) -> Context {
    Context::new(m.algebra().clone())
        .with_module("M", m.clone())
        .with_lam("M", lam.clone())
}

/// Both sides of a corpus equation as `rows × d` matrices, one column per
/// basis vector of `m`.
fn sides(ctx: &Context, name: &str, d: usize) -> (Matrix, Matrix) {
    let (decls, eq) = corpus_eq(name);
    let field = ctx.algebra.field();
    let mut cols = (Vec::new(), Vec::new());
    for (plan, out) in [
        (compile(&eq.lhs, &decls).unwrap(), &mut cols.0),
        (compile(&eq.rhs, &decls).unwrap(), &mut cols.1),
    ] {
        for i in 0..d {
            let a: BTreeMap<String, usize> = [("m".to_string(), i)].into();
            out.push(eval_plan(ctx, &plan, &a).unwrap());
        }
    }
    let rows = cols.0[0].len();
    (
        Matrix::from_columns(field, rows, &cols.0).unwrap(),
        Matrix::from_columns(field, rows, &cols.1).unwrap(),
    )
}

/// Modules tried for each algebra: its characters and the regular module.
fn test_modules(h: &Arc<QuasiHopfAlgebra>) -> Vec<Module> {
    let mut ms = zoo::characters(h);
    ms.push(Module::regular(h));
    ms
}

#[test]
fn type_i_equations_agree_with_checkers() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, h) in zoo_algebras() {
        for m in test_modules(&h) {
            let (d, n) = (m.dim(), h.dim());
            let mut candidates = vec![random_matrix(h.field(), d * n, d, &mut rng)];
            if let Ok(Some(space)) = qhayd_core::solve::linear_space_type_i(&m) {
                candidates.push(space.point(&vec![h.field().zero(); space.dim()]));
            }
            for rho in candidates {
                let t = AydTypeI::new(m.clone(), rho.clone()).unwrap();
                let report = ayd::check_type_i(&t);
                let ctx = type_i_context(&m, &rho);
                assert_eq!(
                    holds(&ctx, "ayd_module"),
                    report.passed("aYD-module").unwrap(),
                    "{name}"
                );
                assert_eq!(
                    holds(&ctx, "comodule_unit"),
                    report.passed("comodule-unit").unwrap(),
                    "{name}"
                );
                assert_eq!(
                    holds(&ctx, "quasi_comodule"),
                    report.passed("quasi-comodule").unwrap(),
                    "{name}"
                );
                // The transcription reproduces the hexagon exactly, not just its verdict.
                let (top, bottom) = ayd::quasi_comodule_sides(&t).unwrap();
                assert_eq!(
                    sides(&ctx, "quasi_comodule", d),
                    (top, bottom),
                    "{name} d={d}"
                );
            }
        }
    }
}

#[test]
fn type_ii_equations_agree_with_checkers() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, h) in zoo_algebras() {
        for m in test_modules(&h) {
            let (d, n) = (m.dim(), h.dim());
            let mut candidates = vec![random_matrix(h.field(), d * n, d, &mut rng)];
            if let Ok(Some(space)) = qhayd_core::solve::linear_space_type_ii(&m) {
                candidates.push(space.point(&vec![h.field().zero(); space.dim()]));
            }
            for lam in candidates {
                let t = AydTypeII::new(m.clone(), lam.clone()).unwrap();
                let report = ayd::check_type_ii(&t);
                let ctx = type_ii_context(&m, &lam);
                assert_eq!(
                    holds(&ctx, "ayd_module_ii"),
                    report.passed("aYD-module-II").unwrap(),
                    "{name}"
                );
                assert_eq!(
                    holds(&ctx, "comodule_unit_ii"),
                    report.passed("comodule-unit-II").unwrap(),
                    "{name}"
                );
                let (top, bottom) = ayd::quasi_comodule_sides(&t).unwrap();
                assert_eq!(
                    sides(&ctx, "quasi_comodule_ii", d),
                    (top, bottom),
                    "{name} d={d}"
                );
            }
        }
    }
}

#[test]
fn lambda_expression_is_the_type_ii_half_braiding() {
    for (name, h) in zoo_algebras() {
        let m = Module::regular(&h);
        let Ok(Some(space)) = qhayd_core::solve::linear_space_type_ii(&m) else {
            continue;
        };
        let lam = space.point(&vec![h.field().zero(); space.dim()]);
        let t = AydTypeII::new(m.clone(), lam.clone()).unwrap();
        let v = zoo::characters(&h).pop().unwrap();
        let tau = ayd::tau_from_lambda(&t, &v).unwrap();
        let ctx = type_ii_context(&m, &lam).with_module("V", v.clone());
        let (decls, e) = sweedler::parse_expr_file(corpus::LAMBDA).unwrap();
        let plan = compile(&e, &decls).unwrap();
        for vi in 0..v.dim() {
            for mi in 0..m.dim() {
                let a: BTreeMap<String, usize> =
                    [("m".to_string(), mi), ("v".to_string(), vi)].into();
                let got = eval_plan(&ctx, &plan, &a).unwrap();
                assert_eq!(got, tau.matrix.column(vi * m.dim() + mi), "{name}");
            }
        }
    }
}

#[test]
fn mutated_coaction_gives_a_counterexample() {
    let t = zoo::ayd_h4_kg(Field::Rational).unwrap();
    let ctx = type_i_context(&t.module, &t.rho);
    let (decls, eq) = corpus_eq("ayd_module");
    assert!(eval_equation(&ctx, &eq, &decls).unwrap().holds);

    let h = t.module.algebra().clone();
    let bad = Matrix::column_vector(Field::Rational, h.one());
    let ctx = type_i_context(&t.module, &bad);
    let verdict = eval_equation(&ctx, &eq, &decls).unwrap();
    assert!(!verdict.holds);
    let cx = verdict.counterexample.unwrap();
    assert_ne!(cx.lhs, cx.rhs);
    assert_eq!(cx.assignment.len(), 2);
    let checker = ayd::check_type_i(&AydTypeI::new(t.module.clone(), bad).unwrap());
    assert_eq!(checker.passed("aYD-module"), Some(false));
}

#[test]
fn evaluation_errors() {
    let h = zoo::algebra_by_name("kz2", Field::Rational).unwrap();
    let (decls, eq) = corpus_eq("ayd_module");
    let ctx = Context::new(h.clone());
    assert_eq!(
        eval_equation(&ctx, &eq, &decls).unwrap_err(),
        DslError::UnknownModule("M".into())
    );
    let ctx = ctx.with_module("M", Module::unit(&h));
    assert_eq!(
        eval_equation(&ctx, &eq, &decls).unwrap_err(),
        DslError::MissingCoaction("M".into())
    );

    let decls = Decls::new().algebra_var("h");
    let eq = parse_equation("h = 1/3 h", &decls).unwrap();
    let ctx = Context::new(zoo::algebra_by_name("kz2", f3()).unwrap());
    assert!(matches!(
        eval_equation(&ctx, &eq, &decls),
        Err(DslError::Type(_))
    ));
    assert!(matches!(
        parse_equation("h (x) 1 = h", &decls),
        Err(DslError::Type(_))
    ));
}

#[test]
fn sums_and_scalars() {
    let h = zoo::algebra_by_name("kz3", Field::Rational).unwrap();
    let ctx = Context::new(h);
    let decls = Decls::new().algebra_var("h").algebra_var("k");
    for (text, expect) in [
        ("2 h k - h k = k h", true),
        ("1/2 h + 1/2 h = h", true),
        ("h k = 2 h k", false),
        ("S(S(h)) = S2(h)", true),
        ("Sinv(S(h)) = h", true),
        ("eps(h) eps(k) = eps(h k)", true),
    ] {
        let eq = parse_equation(text, &decls).unwrap_or_else(|e| panic!("{text}: {e}"));
        assert_eq!(
            eval_equation(&ctx, &eq, &decls).unwrap().holds,
            expect,
            "{text}"
        );
    }
}
