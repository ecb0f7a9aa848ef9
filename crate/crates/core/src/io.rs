//! JSON documents for algebras, modules, module maps, aYD structures,
//! evaluation contexts and solver output.
//!
//! Scalars are written as strings (`"3"`, `"-1/2"`); integers are accepted on
//! input. Matrices are lists of rows. Wherever an algebra or module is
//! expected, a document may instead name a file (resolved against the
//! directory of the referring document) or a zoo entry such as
//! `"zoo:h4:q"` or `"zoo:kz2:fp:3"`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{QuasiHopfAlgebra, QuasiHopfParts};
use crate::ayd::{AydTypeI, AydTypeII};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::repcat::{Module, ModuleMap};
use crate::scalar::{Field, Scalar};
use crate::sweedler::Context;
use crate::tensor::Tensor;
use crate::zoo;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Text(String),
    Int(i64),
}

impl ScalarText {
    pub fn of(s: &Scalar) -> ScalarText {
        ScalarText::Text(s.to_string())
    }

    pub fn parse(&self, field: Field) -> Result<Scalar> {
        match self {
            ScalarText::Text(t) => field.parse(t),
            ScalarText::Int(i) => Ok(field.from_i64(*i)),
        }
    }
}

impl From<i64> for ScalarText {
    fn from(v: i64) -> ScalarText {
        ScalarText::Int(v)
    }
}

pub type VectorDoc = Vec<ScalarText>;
pub type MatrixDoc = Vec<Vec<ScalarText>>;

pub fn vector_doc(v: &[Scalar]) -> VectorDoc {
    v.iter().map(ScalarText::of).collect()
}

pub fn matrix_doc(m: &Matrix) -> MatrixDoc {
    m.to_rows().iter().map(|r| vector_doc(r)).collect()
}

pub fn parse_vector(field: Field, v: &[ScalarText], len: usize, what: &str) -> Result<Vec<Scalar>> {
    if v.len() != len {
        return Err(Error::shape(format!(
            "{what}: expected {len} entries, got {}",
            v.len()
        )));
    }
    v.iter().map(|s| s.parse(field)).collect()
}

pub fn parse_matrix(
    field: Field,
    m: &MatrixDoc,
    rows: usize,
    cols: usize,
    what: &str,
) -> Result<Matrix> {
    if m.len() != rows {
        return Err(Error::shape(format!(
            "{what}: expected {rows} rows, got {}",
            m.len()
        )));
    }
    let rows = m
        .iter()
        .enumerate()
        .map(|(i, r)| parse_vector(field, r, cols, &format!("{what} row {i}")))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, rows)
}

/// A sparse entry `c·e_i⊗e_j⊗e_k` of `Φ` or `Φ⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: ScalarText,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub field: Field,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: VectorDoc,
    /// `mult[i][j]` = `e_i·e_j`.
    pub mult: Vec<Vec<VectorDoc>>,
    /// `delta[i]` = `Δ(e_i)`, flat over `e_a⊗e_b` at `a·n+b`.
    pub delta: Vec<VectorDoc>,
    pub counit: VectorDoc,
    pub phi: Vec<PhiEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_inv: Option<Vec<PhiEntry>>,
    /// Row `i` is `S(e_i)`.
    #[serde(rename = "S")]
    pub s: MatrixDoc,
    #[serde(rename = "S_inv", default, skip_serializing_if = "Option::is_none")]
    pub s_inv: Option<MatrixDoc>,
    pub alpha: VectorDoc,
    pub beta: VectorDoc,
}

fn phi_doc(t: &Tensor) -> Vec<PhiEntry> {
    t.nonzeros()
        .map(|(idx, c)| PhiEntry {
            i: idx[0],
            j: idx[1],
            k: idx[2],
            c: ScalarText::of(c),
        })
        .collect()
}

fn parse_phi(field: Field, n: usize, entries: &[PhiEntry], what: &str) -> Result<Tensor> {
    let mut t = Tensor::zeros(field, n, 3);
    for e in entries {
        if e.i >= n || e.j >= n || e.k >= n {
            return Err(Error::shape(format!(
                "{what}: index ({}, {}, {}) out of range",
                e.i, e.j, e.k
            )));
        }
        t.add_at(&[e.i, e.j, e.k], &e.c.parse(field)?);
    }
    Ok(t)
}

impl AlgebraDoc {
    pub fn from_algebra(h: &QuasiHopfAlgebra) -> AlgebraDoc {
        let n = h.dim();
        let mult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| vector_doc(&h.mul(&h.basis_elem(i), &h.basis_elem(j))))
                    .collect()
            })
            .collect();
        let transpose = |m: &Matrix| matrix_doc(&m.transpose());
        AlgebraDoc {
            field: h.field(),
            dim: n,
            basis: h.basis_names().to_vec(),
            unit: vector_doc(&h.one()),
            mult,
            delta: (0..n).map(|i| vector_doc(&h.delta().column(i))).collect(),
            counit: vector_doc(h.counit().row(0)),
            phi: phi_doc(h.phi()),
            phi_inv: h.phi_inv_supplied.then(|| phi_doc(h.phi_inv())),
            s: transpose(&h.antipode),
            s_inv: None,
            alpha: vector_doc(&h.alpha),
            beta: vector_doc(&h.beta),
        }
    }

    /// Builds the algebra; shape errors are reported, axioms are not checked.
    pub fn build(&self) -> Result<QuasiHopfAlgebra> {
        let (field, n) = (self.field, self.dim);
        if self.basis.len() != n {
            return Err(Error::shape(format!(
                "basis: expected {n} names, got {}",
                self.basis.len()
            )));
        }
        if self.mult.len() != n {
            return Err(Error::shape(format!(
                "mult: expected {n} rows, got {}",
                self.mult.len()
            )));
        }
        let mut mult = Tensor::zeros(field, n, 3);
        for (i, row) in self.mult.iter().enumerate() {
            if row.len() != n {
                return Err(Error::shape(format!("mult row {i}: expected {n} entries")));
            }
            for (j, v) in row.iter().enumerate() {
                for (l, c) in parse_vector(field, v, n, &format!("mult[{i}][{j}]"))?
                    .into_iter()
                    .enumerate()
                {
                    mult.set(&[i, j, l], c);
                }
            }
        }
        if self.delta.len() != n {
            return Err(Error::shape(format!(
                "delta: expected {n} vectors, got {}",
                self.delta.len()
            )));
        }
        let delta_cols = self
            .delta
            .iter()
            .enumerate()
            .map(|(i, v)| parse_vector(field, v, n * n, &format!("delta[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let s_rows = parse_matrix(field, &self.s, n, n, "S")?;
        let s_inv = match &self.s_inv {
            Some(m) => Some(parse_matrix(field, m, n, n, "S_inv")?.transpose()),
            None => None,
        };
        let phi_inv = match &self.phi_inv {
            Some(p) => Some(parse_phi(field, n, p, "phi_inv")?),
            None => None,
        };
        QuasiHopfAlgebra::new(QuasiHopfParts {
            field,
            basis: self.basis.clone(),
            mult,
            unit: parse_vector(field, &self.unit, n, "unit")?,
            delta: Matrix::from_columns(field, n * n, &delta_cols)?,
            counit: Matrix::from_rows(
                field,
                vec![parse_vector(field, &self.counit, n, "counit")?],
            )?,
            phi: parse_phi(field, n, &self.phi, "phi")?,
            phi_inv,
            antipode: s_rows.transpose(),
            antipode_inv: s_inv,
            alpha: parse_vector(field, &self.alpha, n, "alpha")?,
            beta: parse_vector(field, &self.beta, n, "beta")?,
        })
    }
}

/// An algebra given inline, by file path, or as `zoo:<name>:<field>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Named(String),
    Inline(Box<AlgebraDoc>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDoc {
    pub algebra: AlgebraRef,
    pub dim: usize,
    /// `action[i]` is the `d × d` matrix of `e_i`.
    pub action: Vec<MatrixDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleRef {
    Path(String),
    Inline(Box<ModuleDoc>),
}

impl ModuleDoc {
    pub fn from_module(m: &Module, algebra: AlgebraRef) -> ModuleDoc {
        ModuleDoc {
            algebra,
            dim: m.dim(),
            action: m.action().iter().map(matrix_doc).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleMapDoc {
    pub source: ModuleRef,
    pub target: ModuleRef,
    pub matrix: MatrixDoc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AydKind {
    I,
    II,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AydDoc {
    pub module: ModuleRef,
    #[serde(rename = "type")]
    pub kind: AydKind,
    /// `(d·n) × d`.
    pub map: MatrixDoc,
}

/// A loaded aYD structure of either type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoadedAyd {
    I(AydTypeI),
    II(AydTypeII),
}

impl LoadedAyd {
    pub fn module(&self) -> &Module {
        match self {
            LoadedAyd::I(t) => &t.module,
            LoadedAyd::II(t) => &t.module,
        }
    }

    pub fn kind(&self) -> AydKind {
        match self {
            LoadedAyd::I(_) => AydKind::I,
            LoadedAyd::II(_) => AydKind::II,
        }
    }

    pub fn map(&self) -> &Matrix {
        match self {
            LoadedAyd::I(t) => &t.rho,
            LoadedAyd::II(t) => &t.lambda,
        }
    }
}

/// Bindings for `dsl check`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextDoc {
    pub algebra: AlgebraRef,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleRef>,
    #[serde(default)]
    pub rho: BTreeMap<String, MatrixDoc>,
    #[serde(default)]
    pub lam: BTreeMap<String, MatrixDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOutput {
    pub count: usize,
    pub points: Vec<MatrixDoc>,
}

impl SolveOutput {
    pub fn new(points: &[Matrix]) -> SolveOutput {
        SolveOutput {
            count: points.len(),
            points: points.iter().map(matrix_doc).collect(),
        }
    }
}

/// Parses `q`, `Q`, `fp:<p>` or `F<p>`.
pub fn parse_field(text: &str) -> Result<Field> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(Field::Rational);
    }
    let p = t
        .strip_prefix("fp:")
        .or_else(|| t.strip_prefix("Fp:"))
        .or_else(|| t.strip_prefix('F'))
        .ok_or_else(|| Error::Parse(format!("unknown field `{t}`; use q or fp:<p>")))?;
    let p: u64 = p
        .parse()
        .map_err(|_| Error::Parse(format!("bad prime in `{t}`")))?;
    Field::prime(p)
}

/// Resolves references relative to a base directory.
#[derive(Clone, Debug, Default)]
pub struct Loader {
    pub base: PathBuf,
}

impl Loader {
    pub fn new(base: impl Into<PathBuf>) -> Loader {
        Loader { base: base.into() }
    }

    /// A loader for references made from the file `path`.
    pub fn beside(path: &Path) -> Loader {
        Loader::new(path.parent().map(Path::to_path_buf).unwrap_or_default())
    }

    fn read(&self, name: &str) -> Result<(String, Loader)> {
        let path = self.base.join(name);
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Ok((text, Loader::beside(&path)))
    }

    pub fn algebra(&self, r: &AlgebraRef) -> Result<Arc<QuasiHopfAlgebra>> {
        match r {
            AlgebraRef::Inline(doc) => Ok(Arc::new(doc.build()?)),
            AlgebraRef::Named(name) => match name.strip_prefix("zoo:") {
                Some(spec) => {
                    let (alg, field) = spec.split_once(':').unwrap_or((spec, "q"));
                    zoo::algebra_by_name(alg, parse_field(field)?)
                }
                None => {
                    let (text, _) = self.read(name)?;
                    let doc: AlgebraDoc = serde_json::from_str(&text)?;
                    Ok(Arc::new(doc.build()?))
                }
            },
        }
    }

    pub fn module_doc(&self, doc: &ModuleDoc) -> Result<Module> {
        let h = self.algebra(&doc.algebra)?;
        let n = h.dim();
        if doc.action.len() != n {
            return Err(Error::shape(format!(
                "action: expected {n} matrices, got {}",
                doc.action.len()
            )));
        }
        let action = doc
            .action
            .iter()
            .enumerate()
            .map(|(i, m)| parse_matrix(h.field(), m, doc.dim, doc.dim, &format!("action[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        Module::new(h, action)
    }

    pub fn module(&self, r: &ModuleRef) -> Result<Module> {
        match r {
            ModuleRef::Inline(doc) => self.module_doc(doc),
            ModuleRef::Path(p) => {
                let (text, inner) = self.read(p)?;
                inner.module_doc(&serde_json::from_str(&text)?)
            }
        }
    }

    pub fn module_map(&self, doc: &ModuleMapDoc) -> Result<ModuleMap> {
        let source = self.module(&doc.source)?;
        let target = self.module(&doc.target)?;
        let field = source.algebra().field();
        let matrix = parse_matrix(field, &doc.matrix, target.dim(), source.dim(), "matrix")?;
        ModuleMap::new(source, target, matrix)
    }

    pub fn ayd(&self, doc: &AydDoc) -> Result<LoadedAyd> {
        let m = self.module(&doc.module)?;
        let (d, n) = (m.dim(), m.algebra().dim());
        let map = parse_matrix(m.algebra().field(), &doc.map, d * n, d, "map")?;
        Ok(match doc.kind {
            AydKind::I => LoadedAyd::I(AydTypeI::new(m, map)?),
            AydKind::II => LoadedAyd::II(AydTypeII::new(m, map)?),
        })
    }

    pub fn context(&self, doc: &ContextDoc) -> Result<Context> {
        let h = self.algebra(&doc.algebra)?;
        let mut ctx = Context::new(h.clone());
        for (name, r) in &doc.modules {
            let m = self.module(r)?;
            if **m.algebra() != *h {
                return Err(Error::Parse(format!(
                    "module `{name}` is over a different algebra"
                )));
            }
            ctx.modules.insert(name.clone(), m);
        }
        let n = h.dim();
        for (maps, target) in [(&doc.rho, &mut ctx.rho), (&doc.lam, &mut ctx.lam)] {
            for (name, m) in maps {
                let d = ctx
                    .modules
                    .get(name)
                    .ok_or_else(|| Error::Parse(format!("coaction on undeclared module `{name}`")))?
                    .dim();
                target.insert(name.clone(), parse_matrix(h.field(), m, d * n, d, name)?);
            }
        }
        Ok(ctx)
    }
}

pub fn ayd_doc(t: &LoadedAyd, module: ModuleRef) -> AydDoc {
    AydDoc {
        module,
        kind: t.kind(),
        map: matrix_doc(t.map()),
    }
}

/// The module with its algebra inlined.
pub fn inline_module(m: &Module) -> ModuleRef {
    let alg = AlgebraRef::Inline(Box::new(AlgebraDoc::from_algebra(m.algebra())));
    ModuleRef::Inline(Box::new(ModuleDoc::from_module(m, alg)))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}
