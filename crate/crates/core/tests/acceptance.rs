//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the verdict lines always reach
//! stdout; exits non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::{Duration, Instant};

use qhayd_core::ayd::{self, Ayd, AydTypeI, AydTypeII, HalfBraiding};
use qhayd_core::repcat::{self, Iota, Module, ModuleMap};
use qhayd_core::solve::{
    enumerate_ayd_i, enumerate_ayd_ii, linear_space_type_i, linear_space_type_ii,
};
use qhayd_core::sweedler::{corpus, eval_equation, parse_file, Context};
use qhayd_core::{zoo, CheckReport, Field, Matrix, QuasiHopfAlgebra, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fp(p: u64) -> Field {
    Field::prime(p).unwrap()
}

fn zoo_default() -> Vec<(String, Arc<QuasiHopfAlgebra>)> {
    zoo::ALGEBRAS
        .iter()
        .map(|n| {
            (
                n.to_string(),
                zoo::algebra_by_name(n, zoo::default_field(n)).unwrap(),
            )
        })
        .collect()
}

/// Every zoo algebra that exists over `F_p`.
fn zoo_over(p: u64) -> Vec<(String, Arc<QuasiHopfAlgebra>)> {
    zoo::ALGEBRAS
        .iter()
        .filter_map(|n| {
            zoo::algebra_by_name(n, fp(p))
                .ok()
                .map(|h| (format!("{n}/F{p}"), h))
        })
        .collect()
}

fn small_modules(h: &Arc<QuasiHopfAlgebra>) -> Vec<Module> {
    let mut ms = zoo::characters(h);
    ms.push(Module::regular(h));
    ms
}

fn random_scalar(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    field.from_i64(rng.gen_range(-2..=2))
}

fn bundled_i() -> Vec<(String, AydTypeI)> {
    zoo::bundled_ayds()
        .into_iter()
        .map(|b| (b.name.to_string(), b.ayd))
        .collect()
}

/// Type I points found by the solver on the characters over `F_3`, plus the
/// regular module where the affine space is small.
fn solver_i() -> Vec<(String, AydTypeI)> {
    let mut out = Vec::new();
    for (name, h) in zoo_over(3) {
        for (k, m) in small_modules(&h).into_iter().enumerate() {
            if let Ok(points) = enumerate_ayd_i(&m, 20_000) {
                for (j, t) in points.into_iter().enumerate() {
                    out.push((format!("{name} module {k} point {j}"), t));
                }
            }
        }
    }
    out
}

fn valid_instances() -> Vec<(String, AydTypeI)> {
    let mut all = bundled_i();
    all.extend(solver_i());
    all
}

fn witnessed_failure(r: &CheckReport) -> bool {
    r.failures().any(|i| i.witness.is_some())
}

/// Adds one to a single structure constant.
fn mutate(
    h: &QuasiHopfAlgebra,
    which: usize,
    rng: &mut ChaCha8Rng,
) -> Option<(String, QuasiHopfAlgebra)> {
    let n = h.dim();
    let one = h.field().one();
    let mut parts = h.parts();
    let bump = |s: &Scalar| s + &one;
    let what = match which % 8 {
        0 => {
            let idx = [
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            ];
            let v = bump(parts.mult.get(&idx));
            parts.mult.set(&idx, v);
            format!("mult{idx:?}")
        }
        1 => {
            let i = rng.gen_range(0..n);
            parts.unit[i] = bump(&parts.unit[i]);
            format!("unit[{i}]")
        }
        2 => {
            let (r, c) = (rng.gen_range(0..n * n), rng.gen_range(0..n));
            let v = bump(parts.delta.get(r, c));
            parts.delta.set(r, c, v);
            format!("delta[{r},{c}]")
        }
        3 => {
            let c = rng.gen_range(0..n);
            let v = bump(parts.counit.get(0, c));
            parts.counit.set(0, c, v);
            format!("counit[{c}]")
        }
        4 => {
            let idx = [
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            ];
            let v = bump(parts.phi.get(&idx));
            parts.phi.set(&idx, v);
            format!("phi{idx:?}")
        }
        5 => {
            let (r, c) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let v = bump(parts.antipode.get(r, c));
            parts.antipode.set(r, c, v);
            format!("S[{r},{c}]")
        }
        6 => {
            let i = rng.gen_range(0..n);
            parts.alpha[i] = bump(&parts.alpha[i]);
            format!("alpha[{i}]")
        }
        _ => {
            let i = rng.gen_range(0..n);
            parts.beta[i] = bump(&parts.beta[i]);
            format!("beta[{i}]")
        }
    };
    QuasiHopfAlgebra::new(parts).ok().map(|m| (what, m))
}

fn axioms_and_mutations() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut total = 0;
    for (name, h) in zoo_default() {
        let r = h.validate();
        ensure(r.all_passed(), || format!("{name} fails:\n{r}"))?;
        let mut caught = 0;
        for k in 0..16 {
            let (what, bad) =
                mutate(&h, k, &mut rng).ok_or_else(|| format!("{name}: mutation rejected"))?;
            let r = bad.validate();
            ensure(witnessed_failure(&r), || {
                format!("{name}: mutation {what} passes every check")
            })?;
            caught += 1;
        }
        ensure(caught >= 10, || format!("{name}: only {caught} mutations"))?;
        total += caught;
    }
    Ok(format!(
        "6 algebras valid, {total} mutations all caught with a witness"
    ))
}

fn round_trip_i(t: &AydTypeI) -> Result<(), String> {
    let reg = Module::regular(t.module.algebra());
    let tau = ayd::tau_from_rho(t, &reg).map_err(|e| e.to_string())?;
    let b = HalfBraiding::new(t.module.clone(), tau.matrix.clone()).map_err(|e| e.to_string())?;
    let back = ayd::rho_from_tau(&b).map_err(|e| e.to_string())?;
    ensure(back == *t, || "rho -> tau -> rho differs".into())?;
    let again = HalfBraiding::from_type_i(&back).map_err(|e| e.to_string())?;
    ensure(again.tau_h == tau.matrix, || {
        "tau -> rho -> tau differs".into()
    })
}

fn round_trip_ii(t: &AydTypeII) -> Result<(), String> {
    let reg = Module::regular(t.module.algebra());
    let tau = ayd::tau_from_lambda(t, &reg).map_err(|e| e.to_string())?;
    let b = HalfBraiding::new(t.module.clone(), tau.matrix.clone()).map_err(|e| e.to_string())?;
    let back = ayd::lambda_from_tau(&b).map_err(|e| e.to_string())?;
    ensure(back == *t, || "lambda -> tau -> lambda differs".into())?;
    let again = HalfBraiding::from_type_ii(&back).map_err(|e| e.to_string())?;
    ensure(again.tau_h == tau.matrix, || {
        "tau -> lambda -> tau differs".into()
    })
}

fn lemma_bijection() -> Outcome {
    for (name, t) in bundled_i() {
        round_trip_i(&t).map_err(|e| format!("{name}: {e}"))?;
        let two = ayd::to_type_ii(&t).map_err(|e| e.to_string())?;
        round_trip_ii(&two).map_err(|e| format!("{name} (II): {e}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut n_i, mut n_ii) = (0, 0);
    for (name, h) in zoo_over(3) {
        let field = h.field();
        for m in small_modules(&h) {
            if let Some(space) = linear_space_type_i(&m).map_err(|e| e.to_string())? {
                for _ in 0..10 {
                    let c: Vec<_> = (0..space.dim())
                        .map(|_| random_scalar(field, &mut rng))
                        .collect();
                    let t = AydTypeI::new(m.clone(), space.point(&c)).unwrap();
                    round_trip_i(&t).map_err(|e| format!("{name} random I: {e}"))?;
                    n_i += 1;
                }
            }
            if let Some(space) = linear_space_type_ii(&m).map_err(|e| e.to_string())? {
                for _ in 0..10 {
                    let c: Vec<_> = (0..space.dim())
                        .map(|_| random_scalar(field, &mut rng))
                        .collect();
                    let t = AydTypeII::new(m.clone(), space.point(&c)).unwrap();
                    round_trip_ii(&t).map_err(|e| format!("{name} random II: {e}"))?;
                    n_ii += 1;
                }
            }
        }
    }
    ensure(n_i >= 100 && n_ii >= 100, || {
        format!("only {n_i} / {n_ii} random maps")
    })?;
    Ok(format!(
        "bundled exact; {n_i} random rho and {n_ii} random lambda over F3"
    ))
}

fn equivalence() -> Outcome {
    let instances = valid_instances();
    let mut quasi = 0;
    for (name, t) in &instances {
        let two = ayd::to_type_ii(t).map_err(|e| format!("{name}: {e}"))?;
        let back = ayd::to_type_i(&two).map_err(|e| format!("{name}: {e}"))?;
        ensure(back == *t, || format!("{name}: I -> II -> I differs"))?;
        let (ri, rii) = (ayd::check_type_i(t), ayd::check_type_ii(&two));
        ensure(ri.all_passed() && rii.all_passed(), || {
            format!("{name}:\n{ri}{rii}")
        })?;
        if !t.module.algebra().phi_is_trivial() {
            quasi += 1;
        }
    }
    // Verdicts are also preserved on data that fails the hexagon.
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let h = zoo::algebra_by_name("kz2_omega", fp(3)).unwrap();
    let reg = Module::regular(&h);
    let space = linear_space_type_i(&reg).unwrap().unwrap();
    let mut failing = 0;
    for _ in 0..20 {
        let c: Vec<_> = (0..space.dim())
            .map(|_| random_scalar(h.field(), &mut rng))
            .collect();
        let t = AydTypeI::new(reg.clone(), space.point(&c)).unwrap();
        let two = ayd::to_type_ii(&t).unwrap();
        let (a, b) = (
            ayd::check_type_i(&t).all_passed(),
            ayd::check_type_ii(&two).all_passed(),
        );
        ensure(a == b, || {
            "verdicts differ on a random kz2_omega point".into()
        })?;
        failing += usize::from(!a);
    }
    ensure(quasi >= 2, || format!("only {quasi} quasi instances"))?;
    Ok(format!(
        "{} instances ({quasi} with nontrivial Phi) round-trip; {failing}/20 invalid points keep their verdict",
        instances.len()
    ))
}

fn hopf_reduction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let q = Field::Rational;
    for name in ["h4", "kz2"] {
        let h = zoo::algebra_by_name(name, q).unwrap();
        ensure(
            h.phi_is_trivial() && h.alpha == h.one() && h.beta == h.one(),
            || format!("{name} not Hopf"),
        )?;
        let n = h.dim();
        for m in small_modules(&h) {
            let d = m.dim();
            for _ in 0..3 {
                let rho = Matrix::from_fn(q, d * n, d, |_, _| random_scalar(q, &mut rng));
                let t = AydTypeI::new(m.clone(), rho.clone()).unwrap();
                let (top, bottom) = ayd::quasi_comodule_sides(&t).map_err(|e| e.to_string())?;
                let id_h = Matrix::identity(q, n);
                let classical_top = rho.kron(&id_h).unwrap().mul(&rho).unwrap();
                let classical_bottom = m.identity().kron(h.delta()).unwrap().mul(&rho).unwrap();
                ensure(top == classical_top && bottom == classical_bottom, || {
                    format!("{name}: quasi-comodule sides differ from coassociativity")
                })?;
            }
        }
    }
    Ok("quasi-comodule sides equal (rho (x) Id) rho and (Id (x) Delta) rho on H4 and kz2".into())
}

fn hexagon_naturality_unit() -> Outcome {
    let instances = valid_instances();
    let (mut hex, mut nat) = (0, 0);
    for (name, t) in &instances {
        let h = t.module.algebra();
        let ms = small_modules(h);
        let two = ayd::to_type_ii(t).unwrap();
        ensure(ayd::tau_at_unit(t).unwrap().is_identity(), || {
            format!("{name}: tau_unit")
        })?;
        let unit = Module::unit(h);
        ensure(two.tau_matrix(&unit).unwrap().is_identity(), || {
            format!("{name}: tau_unit (II)")
        })?;
        for v in &ms {
            for w in &ms {
                ensure(ayd::hexagon_check(t, v, w).unwrap(), || {
                    format!("{name}: hexagon")
                })?;
                ensure(ayd::hexagon_check(&two, v, w).unwrap(), || {
                    format!("{name}: hexagon (II)")
                })?;
                hex += 1;
                for f in repcat::hom_space(v, w) {
                    let u = ModuleMap::new(v.clone(), w.clone(), f).unwrap();
                    ensure(ayd::naturality_check(t, &u).unwrap(), || {
                        format!("{name}: naturality")
                    })?;
                    ensure(ayd::naturality_check(&two, &u).unwrap(), || {
                        format!("{name}: naturality (II)")
                    })?;
                    nat += 1;
                }
            }
        }
    }
    Ok(format!(
        "{} instances: {hex} hexagon pairs, {nat} naturality squares, tau_unit = Id",
        instances.len()
    ))
}

fn dsl_holds(ctx: &Context, name: &str) -> Result<bool, String> {
    let (decls, eq) = parse_file(corpus::equation(name).unwrap()).map_err(|e| e.to_string())?;
    Ok(eval_equation(ctx, &eq, &decls)
        .map_err(|e| e.to_string())?
        .holds)
}

fn dsl_cross_validation() -> Outcome {
    // The counit checker covers both sides at once.
    let algebra_pairs: [(&[&str], &str); 7] = [
        (&["coassoc"], "coassoc"),
        (&["counit_left", "counit_right"], "counit"),
        (&["unass"], "phi-counit"),
        (&["antipode_alpha"], "antipode-alpha"),
        (&["antipode_beta"], "antipode-beta"),
        (&["antipode_phi"], "antipode-phi"),
        (&["antipode_phi_inv"], "antipode-phi-inv"),
    ];
    let mut compared = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (name, h) in zoo_default() {
        let mut variants = vec![h.clone()];
        for k in [5, 6, 7, 2] {
            if let Some((_, bad)) = mutate(&h, k, &mut rng) {
                variants.push(Arc::new(bad));
            }
        }
        for alg in variants {
            let r = alg.validate();
            let ctx = Context::new(alg.clone());
            for (eqs, item) in algebra_pairs {
                let mut holds = true;
                for eq in eqs {
                    holds &= dsl_holds(&ctx, eq)?;
                }
                ensure(holds == r.passed(item).unwrap(), || {
                    format!("{name}: {eqs:?} vs {item}")
                })?;
                compared += 1;
            }
        }
    }

    let pairs_i = [
        ("ayd_module", "aYD-module"),
        ("comodule_unit", "comodule-unit"),
        ("quasi_comodule", "quasi-comodule"),
    ];
    let pairs_ii = [
        ("ayd_module_ii", "aYD-module-II"),
        ("comodule_unit_ii", "comodule-unit-II"),
        ("quasi_comodule_ii", "quasi-comodule-II"),
    ];
    let mut instances: Vec<(String, AydTypeI)> = valid_instances()
        .into_iter()
        .filter(|(_, t)| t.module.dim() == 1)
        .collect();
    instances.push((
        "h4 sign with g".into(),
        zoo::h4_sign_with_g(Field::Rational).unwrap(),
    ));
    for (name, h) in zoo_over(3) {
        for m in zoo::characters(&h) {
            let d = m.dim() * h.dim();
            let rho = Matrix::from_fn(h.field(), d, m.dim(), |_, _| {
                random_scalar(h.field(), &mut rng)
            });
            instances.push((format!("{name} random"), AydTypeI::new(m, rho).unwrap()));
        }
    }
    for (name, t) in &instances {
        let r = ayd::check_type_i(t);
        let ctx = Context::new(t.module.algebra().clone())
            .with_module("M", t.module.clone())
            .with_rho("M", t.rho.clone());
        for (eq, item) in pairs_i {
            ensure(dsl_holds(&ctx, eq)? == r.passed(item).unwrap(), || {
                format!("{name}: {eq}")
            })?;
            compared += 1;
        }
        // The same matrix read as a Type II coaction.
        let t2 = AydTypeII::new(t.module.clone(), t.rho.clone()).unwrap();
        let r = ayd::check_type_ii(&t2);
        let ctx = Context::new(t.module.algebra().clone())
            .with_module("M", t.module.clone())
            .with_lam("M", t.rho.clone());
        for (eq, item) in pairs_ii {
            ensure(dsl_holds(&ctx, eq)? == r.passed(item).unwrap(), || {
                format!("{name}: {eq}")
            })?;
            compared += 1;
        }
    }
    Ok(format!(
        "{compared} equation verdicts agree with the checkers"
    ))
}

fn stability() -> Outcome {
    let mut hopf = 0;
    for (name, t) in valid_instances() {
        let verdict = ayd::stability_check(&t).map_err(|e| format!("{name}: {e}"))?;
        if t.module.algebra().phi_is_trivial() && t.module.algebra().is_hopf() {
            let sigma = ayd::sigma_hopf(&t).unwrap();
            ensure(verdict == sigma.is_identity(), || {
                format!("{name}: composite vs sigma")
            })?;
            hopf += 1;
        }
    }
    let q = Field::Rational;
    ensure(
        ayd::stability_check(&zoo::ayd_kz2_trivial(q)).unwrap(),
        || "kz2 trivial".into(),
    )?;
    ensure(
        ayd::stability_check(&zoo::ayd_h4_kg(q).unwrap()).unwrap(),
        || "h4 k_g".into(),
    )?;
    ensure(
        !ayd::stability_check(&zoo::ayd_kz2_sign(q)).unwrap(),
        || "kz2 sign".into(),
    )?;
    ensure(
        ayd::stability_check(&zoo::ayd_kz2_omega_unit()).unwrap(),
        || "kz2_omega unit".into(),
    )?;
    let h = zoo::algebra_by_name("kz2_omega", fp(3)).unwrap();
    let points = enumerate_ayd_i(&Module::unit(&h), 1000).unwrap();
    let stable: Vec<bool> = points
        .iter()
        .map(|t| ayd::stability_check(t).unwrap())
        .collect();
    ensure(stable == [true, true], || {
        format!("kz2_omega unit points: {stable:?}")
    })?;
    Ok(format!(
        "{hopf} Hopf instances match sigma; pinned verdicts hold"
    ))
}

fn rho_set(ts: &[AydTypeI]) -> BTreeSet<Vec<String>> {
    ts.iter()
        .map(|t| t.rho.entries().iter().map(ToString::to_string).collect())
        .collect()
}

fn lambda_set(ts: &[AydTypeII]) -> BTreeSet<Vec<String>> {
    ts.iter()
        .map(|t| t.lambda.entries().iter().map(ToString::to_string).collect())
        .collect()
}

fn solver_completeness() -> Outcome {
    let f3 = fp(3);
    let h = zoo::algebra_by_name("kz2", f3).unwrap();
    for m in zoo::characters(&h) {
        let mut brute = Vec::new();
        for k in 0..9 {
            let rho = Matrix::from_fn(f3, 2, 1, |r, _| {
                f3.from_i64(if r == 0 { k % 3 } else { k / 3 })
            });
            let t = AydTypeI::new(m.clone(), rho).unwrap();
            if ayd::check_type_i(&t).all_passed() {
                brute.push(t);
            }
        }
        let found = enumerate_ayd_i(&m, 1000).unwrap();
        ensure(rho_set(&brute) == rho_set(&found), || {
            "kz2/F3 brute force differs".into()
        })?;
    }

    let mut modules = 0;
    let mut by_count = BTreeMap::new();
    for p in [2, 3] {
        for (name, h) in zoo_over(p) {
            for m in small_modules(&h) {
                let (Ok(one), Ok(two)) =
                    (enumerate_ayd_i(&m, 20_000), enumerate_ayd_ii(&m, 20_000))
                else {
                    continue;
                };
                let converted: Vec<AydTypeII> =
                    one.iter().map(|t| ayd::to_type_ii(t).unwrap()).collect();
                let back: Vec<AydTypeI> = two.iter().map(|t| ayd::to_type_i(t).unwrap()).collect();
                ensure(lambda_set(&converted) == lambda_set(&two), || {
                    format!("{name}: I -> II not onto")
                })?;
                ensure(rho_set(&back) == rho_set(&one), || {
                    format!("{name}: II -> I not onto")
                })?;
                ensure(one.len() == two.len(), || format!("{name}: counts differ"))?;
                *by_count.entry(one.len()).or_insert(0) += 1;
                modules += 1;
            }
        }
    }
    Ok(format!("brute force agrees on kz2/F3; bijection on {modules} modules over F2, F3 (points -> modules {by_count:?})"))
}

fn iota() -> Outcome {
    let mut checked = 0;
    for (name, h) in zoo_default() {
        let ms = small_modules(&h);
        for v in &ms {
            for w in &ms {
                let io = Iota::new(v, w).map_err(|e| e.to_string())?;
                ensure(io.is_bijective(), || format!("{name}: iota not bijective"))?;
                let wv = repcat::tensor(&io.w_sharp, v).unwrap();
                let one = Module::unit(&h);
                for f in &io.domain {
                    let g = io.apply(f).unwrap();
                    ensure(repcat::is_module_morphism(&g, &wv, &one), || {
                        format!("{name}: not H-linear")
                    })?;
                    if h.is_hopf() && h.alpha == h.one() && h.beta == h.one() {
                        let flip = repcat::flip_precompose(v.dim(), w.dim(), f);
                        ensure(g == flip, || format!("{name}: iota differs from the flip"))?;
                    }
                }
                checked += naturality_of_iota(&name, v, w, &io, &ms)?;
            }
        }
    }
    Ok(format!(
        "bijective and H-linear on all pairs; {checked} naturality squares"
    ))
}

/// Squares in both variables for rank-1 intertwiners `u: V' → V`, `u: W' → W`.
fn naturality_of_iota(
    name: &str,
    v: &Module,
    w: &Module,
    io: &Iota,
    ms: &[Module],
) -> Result<usize, String> {
    let mut count = 0;
    for src in ms {
        for u in repcat::hom_space(src, v)
            .into_iter()
            .filter(|u| u.rank() == 1)
        {
            let small = Iota::new(src, w).unwrap();
            for f in &io.domain {
                let pulled = f.mul(&u.kron(&w.identity()).unwrap()).unwrap();
                let lhs = small.apply(&pulled).unwrap();
                let rhs = io
                    .apply(f)
                    .unwrap()
                    .mul(&w.identity().kron(&u).unwrap())
                    .unwrap();
                ensure(lhs == rhs, || format!("{name}: naturality in V"))?;
                count += 1;
            }
        }
        for u in repcat::hom_space(src, w)
            .into_iter()
            .filter(|u| u.rank() == 1)
        {
            let small = Iota::new(v, src).unwrap();
            for f in &io.domain {
                let pulled = f.mul(&v.identity().kron(&u).unwrap()).unwrap();
                let lhs = small.apply(&pulled).unwrap();
                let rhs = io
                    .apply(f)
                    .unwrap()
                    .mul(&u.kron(&v.identity()).unwrap())
                    .unwrap();
                ensure(lhs == rhs, || format!("{name}: naturality in W"))?;
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Title, check, and optional time limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, Option<u64>);

fn main() {
    let criteria: [Criterion; 9] = [
        ("axioms and mutations", axioms_and_mutations, Some(10)),
        (
            "coaction/half-braiding bijection",
            lemma_bijection,
            Some(30),
        ),
        ("Type I <-> Type II equivalence", equivalence, None),
        (
            "Hopf reduction of the quasi-comodule condition",
            hopf_reduction,
            None,
        ),
        (
            "hexagon, naturality and unit",
            hexagon_naturality_unit,
            None,
        ),
        ("DSL cross-validation", dsl_cross_validation, None),
        ("stability", stability, None),
        ("solver completeness", solver_completeness, Some(60)),
        ("iota well-formedness", iota, None),
    ];
    let mut failed = 0;
    for (k, (title, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(s)) if took > Duration::from_secs(*s) => {
                Err(format!("took {took:.1?}, limit {s} s"))
            }
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS {}. {title} ({took:.1?}): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {title} ({took:.1?}): {why}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
