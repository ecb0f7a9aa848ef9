use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::QuasiHopfAlgebra;
use crate::matrix::Matrix;
use crate::repcat::Module;
use crate::scalar::{Field, Scalar};
use crate::sweedler::ast::{Equation, Lit};
use crate::sweedler::compile::{compile, sort_name, ContractionPlan, NodeKind, TermPlan};
use crate::sweedler::parser::{Decls, Sort};
use crate::sweedler::DslError;

/// Concrete structure maps for the names used in an expression.
#[derive(Clone, Debug)]
pub struct Context {
    pub algebra: Arc<QuasiHopfAlgebra>,
    pub modules: BTreeMap<String, Module>,
    pub rho: BTreeMap<String, Matrix>,
    pub lam: BTreeMap<String, Matrix>,
}

impl Context {
    pub fn new(algebra: Arc<QuasiHopfAlgebra>) -> Context {
        Context {
            algebra,
            modules: BTreeMap::new(),
            rho: BTreeMap::new(),
            lam: BTreeMap::new(),
        }
    }

    pub fn with_module(mut self, name: &str, m: Module) -> Context {
        self.modules.insert(name.to_string(), m);
        self
    }

    pub fn with_rho(mut self, name: &str, rho: Matrix) -> Context {
        self.rho.insert(name.to_string(), rho);
        self
    }

    pub fn with_lam(mut self, name: &str, lam: Matrix) -> Context {
        self.lam.insert(name.to_string(), lam);
        self
    }

    fn field(&self) -> Field {
        self.algebra.field()
    }

    fn dim(&self, sort: &Sort) -> Result<usize, DslError> {
        match sort {
            Sort::Algebra => Ok(self.algebra.dim()),
            Sort::Module(m) => Ok(self.module(m)?.dim()),
        }
    }

    fn module(&self, name: &str) -> Result<&Module, DslError> {
        let m = self
            .modules
            .get(name)
            .ok_or_else(|| DslError::UnknownModule(name.to_string()))?;
        if **m.algebra() != *self.algebra {
            return Err(DslError::Type(format!(
                "module `{name}` is over a different algebra"
            )));
        }
        Ok(m)
    }

    fn coaction(&self, kind: &NodeKind, name: &str) -> Result<&Matrix, DslError> {
        let map = match kind {
            NodeKind::Rho(_) => self.rho.get(name),
            _ => self.lam.get(name),
        }
        .ok_or_else(|| DslError::MissingCoaction(name.to_string()))?;
        let (d, n) = (self.module(name)?.dim(), self.algebra.dim());
        if map.rows() != d * n || map.cols() != d || map.field() != self.field() {
            return Err(DslError::Type(format!(
                "coaction on `{name}` must be {} x {d} over {}",
                d * n,
                self.field()
            )));
        }
        Ok(map)
    }

    fn lit(&self, l: Lit) -> Result<Scalar, DslError> {
        self.field()
            .from_fraction(l.num, l.den)
            .map_err(|_| DslError::Type(format!("literal {l} is undefined in {}", self.field())))
    }
}

/// A sparse tensor over an ordered list of wires.
#[derive(Clone, Debug)]
struct Sparse {
    wires: Vec<usize>,
    entries: HashMap<Vec<usize>, Scalar>,
}

impl Sparse {
    fn from_entries(
        wires: Vec<usize>,
        list: impl IntoIterator<Item = (Vec<usize>, Scalar)>,
    ) -> Sparse {
        let mut entries: HashMap<Vec<usize>, Scalar> = HashMap::new();
        for (k, v) in list {
            if v.is_zero() {
                continue;
            }
            match entries.get_mut(&k) {
                Some(acc) => *acc = &*acc + &v,
                None => {
                    entries.insert(k, v);
                }
            }
        }
        entries.retain(|_, v| !v.is_zero());
        Sparse { wires, entries }
    }

    /// The product over the union of wires, then summation over `closed`.
    fn join(&self, other: &Sparse, closed: &[usize]) -> Sparse {
        let shared: Vec<(usize, usize)> = self
            .wires
            .iter()
            .enumerate()
            .filter_map(|(i, w)| other.wires.iter().position(|x| x == w).map(|j| (i, j)))
            .collect();
        let other_rest: Vec<usize> = (0..other.wires.len())
            .filter(|j| !shared.iter().any(|&(_, s)| s == *j))
            .collect();
        let mut all: Vec<usize> = self.wires.clone();
        all.extend(other_rest.iter().map(|&j| other.wires[j]));
        let keep: Vec<usize> = (0..all.len())
            .filter(|&i| !closed.contains(&all[i]))
            .collect();

        let mut index: HashMap<Vec<usize>, Vec<(&Vec<usize>, &Scalar)>> = HashMap::new();
        for (k, v) in &other.entries {
            let key: Vec<usize> = shared.iter().map(|&(_, j)| k[j]).collect();
            index.entry(key).or_default().push((k, v));
        }
        let mut out: HashMap<Vec<usize>, Scalar> = HashMap::new();
        for (ka, va) in &self.entries {
            let key: Vec<usize> = shared.iter().map(|&(i, _)| ka[i]).collect();
            let Some(matches) = index.get(&key) else {
                continue;
            };
            for (kb, vb) in matches {
                let mut full = ka.clone();
                full.extend(other_rest.iter().map(|&j| kb[j]));
                let reduced: Vec<usize> = keep.iter().map(|&i| full[i]).collect();
                match out.get_mut(&reduced) {
                    Some(acc) => acc.add_product(va, vb),
                    None => {
                        out.insert(reduced, va * *vb);
                    }
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        Sparse {
            wires: keep.iter().map(|&i| all[i]).collect(),
            entries: out,
        }
    }
}

fn matrix_entries(m: &Matrix) -> Vec<(Vec<usize>, Scalar)> {
    let mut out = Vec::new();
    for c in 0..m.cols() {
        for r in 0..m.rows() {
            let v = m.get(r, c);
            if !v.is_zero() {
                out.push((vec![c, r], v.clone()));
            }
        }
    }
    out
}

fn vector_entries(v: &[Scalar]) -> Vec<(Vec<usize>, Scalar)> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (vec![i], x.clone()))
        .collect()
}

fn node_tensor(
    ctx: &Context,
    kind: &NodeKind,
    ports: &[usize],
    assignment: &BTreeMap<String, usize>,
) -> Result<Sparse, DslError> {
    let h = &ctx.algebra;
    let n = h.dim();
    let one = ctx.field().one();
    let entries: Vec<(Vec<usize>, Scalar)> = match kind {
        NodeKind::Basis(v) => vec![(vec![assignment[v]], one)],
        NodeKind::Unit => vector_entries(&h.one()),
        NodeKind::Alpha => vector_entries(&h.alpha),
        NodeKind::Beta => vector_entries(&h.beta),
        NodeKind::Mul => {
            let mut out = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    for (k, c) in h.product_terms(i, j) {
                        out.push((vec![i, j, *k], c.clone()));
                    }
                }
            }
            out
        }
        NodeKind::Act(m) => {
            let module = ctx.module(m)?;
            let mut out = Vec::new();
            for (a, act) in module.action().iter().enumerate() {
                for (idx, c) in matrix_entries(act) {
                    out.push((vec![a, idx[0], idx[1]], c));
                }
            }
            out
        }
        NodeKind::Coproduct => (0..n)
            .flat_map(|i| {
                h.delta_terms(i)
                    .into_iter()
                    .map(move |(c, a, b)| (vec![i, a, b], c))
            })
            .collect(),
        NodeKind::Phi | NodeKind::PhiInv => h
            .phi_terms(*kind == NodeKind::PhiInv)
            .into_iter()
            .map(|(c, x, y, z)| (vec![x, y, z], c))
            .collect(),
        NodeKind::S => matrix_entries(&h.antipode),
        NodeKind::S2 => matrix_entries(h.s2()),
        NodeKind::Sinv => matrix_entries(&h.antipode_inv),
        NodeKind::Counit => vector_entries(h.counit().row(0)),
        NodeKind::Rho(m) | NodeKind::Lam(m) => {
            let map = ctx.coaction(kind, m)?;
            matrix_entries(map)
                .into_iter()
                .map(|(idx, c)| (vec![idx[0], idx[1] / n, idx[1] % n], c))
                .collect()
        }
    };
    Ok(Sparse::from_entries(ports.to_vec(), entries))
}

/// Contracts one term to a dense vector over its outputs.
fn eval_term(
    ctx: &Context,
    term: &TermPlan,
    assignment: &BTreeMap<String, usize>,
    out_dims: &[usize],
) -> Result<Vec<Scalar>, DslError> {
    let field = ctx.field();
    let tensors = term
        .nodes
        .iter()
        .map(|node| node_tensor(ctx, &node.kind, &node.ports, assignment))
        .collect::<Result<Vec<_>, _>>()?;

    let mut remaining: Vec<usize> = (0..tensors.len()).collect();
    let mut seen = vec![0usize; term.wires.len()];
    let mut acc = Sparse::from_entries(Vec::new(), [(Vec::new(), field.one())]);
    while !remaining.is_empty() {
        // Prefer nodes sharing wires with the accumulator, then those
        // opening the fewest new wires.
        let pick = remaining
            .iter()
            .enumerate()
            .min_by_key(|(_, &i)| {
                let ports = &term.nodes[i].ports;
                let shared = ports.iter().filter(|w| acc.wires.contains(w)).count();
                let fresh = ports.len() - shared;
                (
                    shared == 0 && !acc.wires.is_empty(),
                    fresh,
                    usize::MAX - shared,
                    i,
                )
            })
            .map(|(pos, _)| pos)
            .expect("nonempty");
        let i = remaining.remove(pick);
        for &w in &term.nodes[i].ports {
            seen[w] += 1;
        }
        let closed: Vec<usize> = term.nodes[i]
            .ports
            .iter()
            .copied()
            .filter(|&w| seen[w] == 2)
            .collect();
        acc = acc.join(&tensors[i], &closed);
        if acc.entries.is_empty() {
            break;
        }
    }

    let size: usize = out_dims.iter().product();
    let mut out = vec![field.zero(); size];
    let coeff = ctx.lit(term.coeff)?;
    let order: Vec<usize> = term
        .outputs
        .iter()
        .map(|w| acc.wires.iter().position(|x| x == w))
        .collect::<Option<Vec<_>>>()
        .unwrap_or_default();
    if order.len() != term.outputs.len() {
        return Ok(out);
    }
    for (k, v) in &acc.entries {
        let mut flat = 0;
        for (slot, &pos) in order.iter().enumerate() {
            flat = flat * out_dims[slot] + k[pos];
        }
        out[flat].add_product(&coeff, v);
    }
    Ok(out)
}

/// The value of a compiled expression at one basis assignment, as a dense
/// vector over the tensor product of its output sorts.
pub fn eval_plan(
    ctx: &Context,
    plan: &ContractionPlan,
    assignment: &BTreeMap<String, usize>,
) -> Result<Vec<Scalar>, DslError> {
    let dims = plan
        .output
        .iter()
        .map(|s| ctx.dim(s))
        .collect::<Result<Vec<_>, _>>()?;
    for (name, sort) in &plan.free_vars {
        let i = *assignment
            .get(name)
            .ok_or_else(|| DslError::UnknownVariable(name.clone()))?;
        if i >= ctx.dim(sort)? {
            return Err(DslError::Type(format!(
                "basis index {i} out of range for `{name}`"
            )));
        }
    }
    let mut total = vec![ctx.field().zero(); dims.iter().product()];
    for term in &plan.terms {
        let v = eval_term(ctx, term, assignment, &dims)?;
        for (t, x) in total.iter_mut().zip(v) {
            *t = &*t + &x;
        }
    }
    Ok(total)
}

/// Compiles `expr` and evaluates it at `assignment`.
pub fn eval_expr(
    ctx: &Context,
    expr: &crate::sweedler::ast::Expr,
    decls: &Decls,
    assignment: &BTreeMap<String, usize>,
) -> Result<Vec<Scalar>, DslError> {
    eval_plan(ctx, &compile(expr, decls)?, assignment)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// Basis index of each free variable.
    pub assignment: Vec<(String, usize)>,
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// Number of basis assignments evaluated.
    pub assignments: usize,
    pub counterexample: Option<Counterexample>,
}

/// Evaluates both sides over every basis assignment of the free variables.
pub fn eval_equation(ctx: &Context, eq: &Equation, decls: &Decls) -> Result<Verdict, DslError> {
    let lhs = compile(&eq.lhs, decls)?;
    let rhs = compile(&eq.rhs, decls)?;
    if lhs.output != rhs.output {
        let show = |o: &[Sort]| o.iter().map(sort_name).collect::<Vec<_>>().join(" (x) ");
        return Err(DslError::Type(format!(
            "sides live in different spaces: {} vs {}",
            show(&lhs.output),
            show(&rhs.output)
        )));
    }
    if lhs.free_vars != rhs.free_vars {
        return Err(DslError::Type("sides have different free variables".into()));
    }
    let dims = lhs
        .free_vars
        .iter()
        .map(|(_, s)| ctx.dim(s))
        .collect::<Result<Vec<_>, _>>()?;
    let total: usize = dims.iter().product();
    let assignment_at = |k: usize| -> BTreeMap<String, usize> {
        let mut rest = k;
        let mut idx = vec![0; dims.len()];
        for (slot, d) in dims.iter().enumerate().rev() {
            idx[slot] = rest % d;
            rest /= d;
        }
        lhs.free_vars
            .iter()
            .map(|(n, _)| n.clone())
            .zip(idx)
            .collect()
    };
    let results: Vec<Option<Counterexample>> = (0..total)
        .into_par_iter()
        .map(|k| {
            let a = assignment_at(k);
            let l = eval_plan(ctx, &lhs, &a)?;
            let r = eval_plan(ctx, &rhs, &a)?;
            Ok((l != r).then(|| Counterexample {
                assignment: lhs
                    .free_vars
                    .iter()
                    .map(|(n, _)| (n.clone(), a[n]))
                    .collect(),
                lhs: l,
                rhs: r,
            }))
        })
        .collect::<Result<_, DslError>>()?;
    let counterexample = results.into_iter().flatten().next();
    Ok(Verdict {
        holds: counterexample.is_none(),
        assignments: total,
        counterexample,
    })
}
