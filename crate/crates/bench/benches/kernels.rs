use criterion::{black_box, criterion_group, criterion_main, Criterion};
use qhayd_core::ayd::{self, check_type_i, stability_check};
use qhayd_core::repcat::{self, Module};
use qhayd_core::solve::enumerate_ayd_i;
use qhayd_core::sweedler::{corpus, eval_equation, parse_file, Context};
use qhayd_core::{zoo, Field};

fn algebra(c: &mut Criterion) {
    let q = Field::Rational;
    let h4 = zoo::sweedler_h4(q).unwrap();
    c.bench_function("validate h4", |b| b.iter(|| black_box(&h4).validate()));
    let s3 = zoo::ks3(q);
    c.bench_function("validate ks3", |b| b.iter(|| black_box(&s3).validate()));
    let om = zoo::dual_z3_f7();
    c.bench_function("validate kz3_omega F7", |b| {
        b.iter(|| black_box(&om).validate())
    });
}

fn modules(c: &mut Criterion) {
    let h = zoo::algebra_by_name("kz3_omega", Field::prime(7).unwrap()).unwrap();
    let reg = Module::regular(&h);
    c.bench_function("associator H,H,H", |b| {
        b.iter(|| repcat::associator(&reg, &reg, &reg).unwrap())
    });
    c.bench_function("hom space H->H", |b| {
        b.iter(|| repcat::hom_space(&reg, &reg))
    });
}

fn ayd_kernels(c: &mut Criterion) {
    let t = zoo::ayd_h4_kg(Field::Rational).unwrap();
    let reg = Module::regular(t.module.algebra());
    c.bench_function("check type I h4_kg", |b| {
        b.iter(|| check_type_i(black_box(&t)))
    });
    c.bench_function("hexagon h4_kg at H,H", |b| {
        b.iter(|| ayd::hexagon_check(&t, &reg, &reg).unwrap())
    });
    c.bench_function("stability h4_kg", |b| {
        b.iter(|| stability_check(&t).unwrap())
    });
    c.bench_function("convert to type II h4_kg", |b| {
        b.iter(|| ayd::to_type_ii(&t).unwrap())
    });

    let unit = zoo::ayd_kz2_omega_unit().module;
    c.bench_function("solve kz2_omega unit F3", |b| {
        b.iter(|| enumerate_ayd_i(&unit, 1_000_000).unwrap())
    });
}

fn dsl(c: &mut Criterion) {
    let t = zoo::ayd_h4_kg(Field::Rational).unwrap();
    let ctx = Context::new(t.module.algebra().clone())
        .with_module("M", t.module.clone())
        .with_rho("M", t.rho.clone());
    let (decls, eq) = parse_file(corpus::equation("quasi_comodule").unwrap()).unwrap();
    c.bench_function("dsl quasi-comodule h4_kg", |b| {
        b.iter(|| eval_equation(&ctx, &eq, &decls).unwrap())
    });
    let (decls, eq) = parse_file(corpus::equation("antipode_phi").unwrap()).unwrap();
    c.bench_function("dsl antipode-phi h4", |b| {
        b.iter(|| eval_equation(&ctx, &eq, &decls).unwrap())
    });
}

criterion_group! {
    name = kernels;
    config = Criterion::default().sample_size(10);
    targets = algebra, modules, ayd_kernels, dsl
}
criterion_main!(kernels);
