use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context as _, Result};
use qhayd_core::ayd::{self, check_type_i, check_type_ii, stability_composite};
use qhayd_core::io::{
    self, AlgebraDoc, AlgebraRef, AydDoc, AydKind, ContextDoc, LoadedAyd, ModuleDoc, ModuleRef,
    SolveOutput,
};
use qhayd_core::solve::{budget_from_env, enumerate_ayd_i, enumerate_ayd_ii};
use qhayd_core::sweedler::{eval_equation, parse_file};
use qhayd_core::{zoo, CheckItem, Field, Module, QuasiHopfAlgebra, Witness};

use crate::report::{Input, RunReport};
use crate::{AydCmd, Command, DslCmd, Kind, ModuleCmd, ZooCmd};

pub struct Run {
    pub report: RunReport,
    /// Document printed on stdout in text mode when no `--out` is given.
    pub raw_stdout: Option<String>,
}

impl Run {
    pub fn new(argv: Vec<String>) -> Run {
        Run {
            report: RunReport::new(argv),
            raw_stdout: None,
        }
    }

    fn read(&mut self, path: &Path) -> Result<Input> {
        let input = Input::read(path)?;
        self.report.input(&input);
        Ok(input)
    }

    fn emit(&mut self, out: Option<&Path>, text: String) -> Result<()> {
        match out {
            Some(path) => {
                std::fs::write(path, text)
                    .with_context(|| format!("writing {}", path.display()))?;
                self.report.summary = format!("wrote {}", path.display());
            }
            None => self.raw_stdout = Some(text),
        }
        Ok(())
    }
}

pub fn dispatch(run: &mut Run, cmd: &Command) -> Result<()> {
    match cmd {
        Command::Validate { algebra } => validate(run, algebra),
        Command::Module(ModuleCmd::Check { module }) => module_check(run, module),
        Command::Ayd(AydCmd::Check { ayd, kind }) => ayd_check(run, ayd, *kind),
        Command::Ayd(AydCmd::Convert { ayd, to, out }) => {
            ayd_convert(run, ayd, *to, out.as_deref())
        }
        Command::Ayd(AydCmd::Tau { ayd, v }) => ayd_tau(run, ayd, v),
        Command::Ayd(AydCmd::Stability { ayd }) => ayd_stability(run, ayd),
        Command::Ayd(AydCmd::Solve {
            kind,
            module,
            over,
            budget,
            out,
        }) => ayd_solve(run, *kind, module, over.as_deref(), *budget, out.as_deref()),
        Command::Dsl(DslCmd::Check { eq, ctx }) => dsl_check(run, eq, ctx),
        Command::Zoo(ZooCmd::List) => zoo_list(run),
        Command::Zoo(ZooCmd::Emit { name, field, out }) => {
            zoo_emit(run, name, field.as_deref(), out)
        }
    }
}

fn validate(run: &mut Run, path: &Path) -> Result<()> {
    let input = run.read(path)?;
    let doc: AlgebraDoc = input.json()?;
    let h = doc.build()?;
    run.report.checks(h.validate());
    Ok(())
}

fn module_check(run: &mut Run, path: &Path) -> Result<()> {
    let input = run.read(path)?;
    let doc: ModuleDoc = input.json()?;
    let m = input.loader.module_doc(&doc)?;
    run.report.checks(m.check());
    Ok(())
}

fn load_ayd(run: &mut Run, path: &Path, kind: Option<Kind>) -> Result<(Input, LoadedAyd)> {
    let input = run.read(path)?;
    let mut doc: AydDoc = input.json()?;
    if let Some(k) = kind {
        doc.kind = ayd_kind(k);
    }
    let loaded = input.loader.ayd(&doc)?;
    Ok((input, loaded))
}

fn ayd_kind(k: Kind) -> AydKind {
    match k {
        Kind::I => AydKind::I,
        Kind::II => AydKind::II,
    }
}

fn checks_of(t: &LoadedAyd) -> qhayd_core::CheckReport {
    let mut report = match t {
        LoadedAyd::I(t) => check_type_i(t),
        LoadedAyd::II(t) => check_type_ii(t),
    };
    // The aYD-module witnesses index a basis element h of the algebra.
    let names = t.module().algebra().basis_names();
    for item in &mut report.items {
        if let (true, Some(w)) = (item.name.starts_with("aYD-module"), item.witness.as_mut()) {
            if let Some(name) = w.indices.first().and_then(|&i| names.get(i)) {
                w.note = match w.note.is_empty() {
                    true => format!("h = {name}"),
                    false => format!("h = {name}; {}", w.note),
                };
            }
        }
    }
    report
}

fn ayd_check(run: &mut Run, path: &Path, kind: Option<Kind>) -> Result<()> {
    let (_, t) = load_ayd(run, path, kind)?;
    run.report.checks(checks_of(&t));
    Ok(())
}

fn ayd_convert(run: &mut Run, path: &Path, to: Kind, out: Option<&Path>) -> Result<()> {
    let (input, t) = load_ayd(run, path, None)?;
    let source = checks_of(&t);
    let valid = source.all_passed();
    run.report.checks(source);
    if !valid {
        return Ok(());
    }
    let converted = match (t, to) {
        (LoadedAyd::I(t), Kind::II) => LoadedAyd::II(ayd::to_type_ii(&t)?),
        (LoadedAyd::II(t), Kind::I) => LoadedAyd::I(ayd::to_type_i(&t)?),
        (same, _) => same,
    };
    for item in checks_of(&converted).items {
        run.report.check(CheckItem {
            name: format!("converted {}", item.name),
            ..item
        });
    }
    let doc: AydDoc = input.json()?;
    let out_doc = io::ayd_doc(&converted, relocate(&doc.module, &input, out));
    let text = io::to_json(&out_doc)?;
    run.report.result(&out_doc, String::new())?;
    run.emit(out, text)
}

/// Keeps a module path valid when the converted file lands elsewhere.
fn relocate(module: &ModuleRef, input: &Input, out: Option<&Path>) -> ModuleRef {
    let ModuleRef::Path(p) = module else {
        return module.clone();
    };
    let src_dir = Path::new(&input.path).parent().unwrap_or(Path::new(""));
    let out_dir = out.and_then(Path::parent).unwrap_or(Path::new(""));
    if input.path == "-" || src_dir == out_dir || Path::new(p).is_absolute() {
        return module.clone();
    }
    let joined = src_dir.join(p);
    let abs = std::fs::canonicalize(&joined).unwrap_or(joined);
    ModuleRef::Path(abs.display().to_string())
}

fn ayd_tau(run: &mut Run, path: &Path, v: &Path) -> Result<()> {
    let (_, t) = load_ayd(run, path, None)?;
    let v_input = run.read(v)?;
    let v_doc: ModuleDoc = v_input.json()?;
    let v = v_input.loader.module_doc(&v_doc)?;
    let map = match &t {
        LoadedAyd::I(t) => ayd::tau_map(t, &v)?,
        LoadedAyd::II(t) => ayd::tau_map(t, &v)?,
    };
    let item = if map.is_module_morphism() {
        CheckItem::pass("tau H-linear")
    } else {
        CheckItem::fail(
            "tau H-linear",
            Witness::note(vec![], "tau_V is not a module map"),
        )
    };
    run.report.check(item);
    let mut summary = format!("tau_V ({}x{}):\n", map.matrix.rows(), map.matrix.cols());
    for r in 0..map.matrix.rows() {
        let row: Vec<String> = (0..map.matrix.cols())
            .map(|c| map.matrix.get(r, c).to_string())
            .collect();
        let _ = writeln!(summary, "  [{}]", row.join(" "));
    }
    run.report.result(io::matrix_doc(&map.matrix), summary)
}

fn ayd_stability(run: &mut Run, path: &Path) -> Result<()> {
    let (_, t) = load_ayd(run, path, None)?;
    let source = checks_of(&t);
    let valid = source.all_passed();
    run.report.checks(source);
    if !valid {
        return Ok(());
    }
    let t = match t {
        LoadedAyd::I(t) => t,
        LoadedAyd::II(t) => ayd::to_type_i(&t)?,
    };
    let composite = stability_composite(&t)?;
    let stable = composite.is_identity();
    run.report.check(if stable {
        CheckItem::pass("stable")
    } else {
        CheckItem::fail(
            "stable",
            Witness::note(
                vec![],
                "the composite on Hom_H(M (x) H, k) is not the identity",
            ),
        )
    });
    let mut result = BTreeMap::new();
    result.insert("stable", serde_json::to_value(stable)?);
    result.insert(
        "composite",
        serde_json::to_value(io::matrix_doc(&composite))?,
    );
    if t.module.algebra().phi_is_trivial() {
        let sigma = ayd::sigma_hopf(&t)?;
        result.insert("sigma", serde_json::to_value(io::matrix_doc(&sigma))?);
    }
    let summary = if stable { "stable" } else { "not stable" };
    run.report.result(result, summary)
}

fn ayd_solve(
    run: &mut Run,
    kind: Kind,
    path: &Path,
    over: Option<&str>,
    budget: Option<u64>,
    out: Option<&Path>,
) -> Result<()> {
    let input = run.read(path)?;
    let doc: ModuleDoc = input.json()?;
    let m = match over {
        Some(f) => retarget(&input, &doc, io::parse_field(f)?)?,
        None => input.loader.module_doc(&doc)?,
    };
    run.report.checks(m.check());
    if !m.is_valid() {
        return Ok(());
    }
    let budget = budget.unwrap_or_else(budget_from_env);
    let points: Vec<_> = match kind {
        Kind::I => enumerate_ayd_i(&m, budget)?
            .into_iter()
            .map(|t| t.rho)
            .collect(),
        Kind::II => enumerate_ayd_ii(&m, budget)?
            .into_iter()
            .map(|t| t.lambda)
            .collect(),
    };
    let solved = SolveOutput::new(&points);
    let text = io::to_json(&solved)?;
    run.report.result(&solved, String::new())?;
    run.emit(out, text)?;
    if out.is_some() {
        run.report.summary = format!("{} points; {}", solved.count, run.report.summary);
    }
    Ok(())
}

/// Loads a module with its algebra data read over another field.
fn retarget(input: &Input, doc: &ModuleDoc, field: Field) -> Result<Module> {
    let mut alg = match &doc.algebra {
        AlgebraRef::Inline(a) => (**a).clone(),
        AlgebraRef::Named(name) => match name.strip_prefix("zoo:") {
            Some(rest) => {
                let zoo_name = rest.split(':').next().unwrap_or(rest);
                let h = zoo::algebra_by_name(zoo_name, field)?;
                AlgebraDoc::from_algebra(&h)
            }
            None => {
                let p = input.loader.base.join(name);
                let text = std::fs::read_to_string(&p)
                    .with_context(|| format!("reading {}", p.display()))?;
                serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?
            }
        },
    };
    alg.field = field;
    let doc = ModuleDoc {
        algebra: AlgebraRef::Inline(Box::new(alg)),
        ..doc.clone()
    };
    Ok(input.loader.module_doc(&doc)?)
}

fn dsl_check(run: &mut Run, eq: &Path, ctx: &Path) -> Result<()> {
    let eq_input = run.read(eq)?;
    let ctx_input = run.read(ctx)?;
    let (decls, equation) =
        parse_file(&eq_input.text).with_context(|| format!("in {}", eq_input.path))?;
    let doc: ContextDoc = ctx_input.json()?;
    let context = ctx_input.loader.context(&doc)?;
    let verdict = eval_equation(&context, &equation, &decls)?;
    let item = match &verdict.counterexample {
        None => CheckItem::pass("equation"),
        Some(c) => {
            let mut w = Witness::new(
                c.assignment.iter().map(|(_, i)| *i).collect(),
                &c.lhs,
                &c.rhs,
            );
            w.note = c
                .assignment
                .iter()
                .map(|(v, i)| format!("{v}=e{i}"))
                .collect::<Vec<_>>()
                .join(" ");
            CheckItem::fail("equation", w)
        }
    };
    run.report.check(item);
    let summary = format!("{} assignments", verdict.assignments);
    run.report.result(
        serde_json::json!({ "assignments": verdict.assignments }),
        summary,
    )
}

fn zoo_list(run: &mut Run) -> Result<()> {
    let manifest = zoo::manifest()?;
    let mut s = String::new();
    for a in &manifest.algebras {
        let _ = writeln!(
            s,
            "{:<10} {:<3} dim {:<2} hopf {:<5} checks {}",
            a.name,
            a.field.to_string(),
            a.dim,
            a.hopf,
            verdict(a.checks_passed)
        );
    }
    for a in &manifest.ayds {
        let _ = writeln!(
            s,
            "{:<15} on {:<10} {:<3} dim {} checks {} stable {}",
            a.name,
            a.algebra,
            a.field.to_string(),
            a.module_dim,
            verdict(a.checks_passed),
            a.stable
        );
    }
    run.report.result(&manifest, s)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn zoo_emit(run: &mut Run, name: &str, field: Option<&str>, out: &Path) -> Result<()> {
    if !zoo::ALGEBRAS.contains(&name) {
        bail!(
            "unknown zoo algebra `{name}`; known: {}",
            zoo::ALGEBRAS.join(", ")
        );
    }
    let field = match field {
        Some(f) => io::parse_field(f)?,
        None => zoo::default_field(name),
    };
    let h = zoo::algebra_by_name(name, field)?;
    run.report.checks(h.validate());
    std::fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;

    let mut files = Vec::new();
    let mut write = |file: String, text: String| -> Result<()> {
        let p = out.join(&file);
        std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?;
        files.push(file);
        Ok(())
    };
    write(
        "algebra.json".into(),
        io::to_json(&AlgebraDoc::from_algebra(&h))?,
    )?;
    let module_doc =
        |m: &Module| ModuleDoc::from_module(m, AlgebraRef::Named("algebra.json".into()));
    write(
        "module_regular.json".into(),
        io::to_json(&module_doc(&Module::regular(&h)))?,
    )?;
    for (k, m) in zoo::characters(&h).iter().enumerate() {
        write(format!("module_char{k}.json"), io::to_json(&module_doc(m))?)?;
    }
    for b in zoo::bundled_ayds() {
        if b.algebra != name || !same_algebra(b.ayd.module.algebra(), &h) {
            continue;
        }
        let mfile = format!("module_{}.json", b.name);
        write(mfile.clone(), io::to_json(&module_doc(&b.ayd.module))?)?;
        let doc = io::ayd_doc(&LoadedAyd::I(b.ayd.clone()), ModuleRef::Path(mfile));
        write(format!("ayd_{}.json", b.name), io::to_json(&doc)?)?;
    }
    let summary = files
        .iter()
        .map(|f| format!("wrote {f}"))
        .collect::<Vec<_>>()
        .join("\n");
    run.report.result(&files, summary)
}

fn same_algebra(a: &Arc<QuasiHopfAlgebra>, b: &Arc<QuasiHopfAlgebra>) -> bool {
    a.field() == b.field() && **a == **b
}
