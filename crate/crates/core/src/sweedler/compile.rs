//! Lowering of Sweedler expressions to contraction graphs.
//!
//! Every coproduct split becomes a `Coproduct` node, every `Φ^{±1}`
//! instance one `Phi` node, every coaction pair one `Rho`/`Lam` node.
//! Wires are summation indices; each joins exactly two ports except the
//! outputs of a term, which have one.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::algebra::Bracketing;
use crate::sweedler::ast::{Atom, Coaction, Expr, Factor, Func, Lit, Term};
use crate::sweedler::parser::{Decls, Sort};
use crate::sweedler::DslError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    /// The basis vector assigned to a free variable.
    Basis(String),
    Unit,
    Alpha,
    Beta,
    /// Ports `(a, b, ab)`.
    Mul,
    /// Ports `(a, v, a·v)` on module `M`.
    Act(String),
    /// Ports `(a, a¹, a²)`.
    Coproduct,
    /// Ports `(x, y, z)`.
    Phi,
    PhiInv,
    /// Ports `(a, f(a))`.
    S,
    S2,
    Sinv,
    /// Port `(a)`.
    Counit,
    /// Ports `(m, m₀, m₁)`.
    Rho(String),
    Lam(String),
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeKind::Basis(v) => write!(f, "Basis({v})"),
            NodeKind::Act(m) => write!(f, "Act({m})"),
            NodeKind::Rho(m) => write!(f, "Rho({m})"),
            NodeKind::Lam(m) => write!(f, "Lam({m})"),
            other => write!(f, "{other:?}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub kind: NodeKind,
    pub ports: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermPlan {
    pub coeff: Lit,
    pub nodes: Vec<Node>,
    /// Sort of each wire.
    pub wires: Vec<Sort>,
    /// One wire per tensor factor, left to right.
    pub outputs: Vec<usize>,
}

/// A compiled expression: a sum of contraction graphs with a common
/// output signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionPlan {
    pub free_vars: Vec<(String, Sort)>,
    pub output: Vec<Sort>,
    pub terms: Vec<TermPlan>,
}

impl TermPlan {
    /// Checks the endpoint counts and port sorts.
    pub fn validate(&self) -> Result<(), DslError> {
        let mut ends = vec![0usize; self.wires.len()];
        for node in &self.nodes {
            for &w in &node.ports {
                ends[w] += 1;
            }
        }
        for (w, &e) in ends.iter().enumerate() {
            let want = if self.outputs.contains(&w) { 1 } else { 2 };
            if e != want {
                return Err(DslError::Type(format!(
                    "wire {w} has {e} endpoints, expected {want}"
                )));
            }
        }
        Ok(())
    }
}

impl ContractionPlan {
    /// Node counts by kind and the output signature, e.g.
    /// `Basis(h)=1 Coproduct=1 Mul=1; out=[H, H]`.
    pub fn summary(&self) -> String {
        self.terms
            .iter()
            .map(|t| {
                let mut counts: BTreeMap<String, usize> = BTreeMap::new();
                for n in &t.nodes {
                    *counts.entry(n.kind.to_string()).or_default() += 1;
                }
                let nodes: Vec<String> = counts.iter().map(|(k, c)| format!("{k}={c}")).collect();
                let out: Vec<String> = self.output.iter().map(sort_name).collect();
                format!("{}; out=[{}]", nodes.join(" "), out.join(", "))
            })
            .collect::<Vec<_>>()
            .join(" | ")
    }

    pub fn count(&self, kind: &NodeKind) -> usize {
        self.terms
            .iter()
            .map(|t| t.nodes.iter().filter(|n| &n.kind == kind).count())
            .sum()
    }
}

pub(crate) fn sort_name(s: &Sort) -> String {
    match s {
        Sort::Algebra => "H".into(),
        Sort::Module(m) => m.clone(),
    }
}

pub fn compile(expr: &Expr, decls: &Decls) -> Result<ContractionPlan, DslError> {
    let mut terms = Vec::new();
    let mut output: Option<Vec<Sort>> = None;
    let mut used: Vec<String> = Vec::new();
    for term in &expr.terms {
        let (plan, vars) = compile_term(term, decls)?;
        plan.validate()?;
        let sorts: Vec<Sort> = plan
            .outputs
            .iter()
            .map(|&w| plan.wires[w].clone())
            .collect();
        match &output {
            None => output = Some(sorts),
            Some(o) if *o != sorts => {
                return Err(DslError::Type(format!(
                    "terms have different shapes: [{}] vs [{}]",
                    o.iter().map(sort_name).collect::<Vec<_>>().join(", "),
                    sorts.iter().map(sort_name).collect::<Vec<_>>().join(", ")
                )))
            }
            _ => {}
        }
        for v in vars {
            if !used.contains(&v) {
                used.push(v);
            }
        }
        terms.push(plan);
    }
    let free_vars = decls
        .vars
        .iter()
        .filter(|(name, _)| used.contains(name))
        .map(|(n, s)| (n.clone(), s.clone()))
        .collect();
    Ok(ContractionPlan {
        free_vars,
        output: output.unwrap_or_default(),
        terms,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum SourceKey {
    Var(String),
    Phi {
        inverse: bool,
        label: String,
        slot: usize,
    },
    Group(String),
    Coaction(Coaction, String),
}

impl fmt::Display for SourceKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SourceKey::Var(v) => write!(f, "{v}"),
            SourceKey::Phi {
                inverse,
                label,
                slot,
            } => {
                let letters = if *inverse {
                    ['P', 'Q', 'R']
                } else {
                    ['X', 'Y', 'Z']
                };
                write!(f, "{}", letters[*slot])?;
                if !label.is_empty() {
                    write!(f, "_{label}")?;
                }
                Ok(())
            }
            SourceKey::Group(text) => write!(f, "({text})"),
            SourceKey::Coaction(kind, label) => {
                let name = match kind {
                    Coaction::Rho => "rho",
                    Coaction::Lam => "lam",
                };
                if label.is_empty() {
                    write!(f, "{name} leg 1")
                } else {
                    write!(f, "{name} leg 1 `{label}`")
                }
            }
        }
    }
}

/// What the collection pass learns about one coaction pair.
struct CoactionUse {
    base: Atom,
    base_text: String,
    leg0: usize,
}

#[derive(Default)]
struct Uses {
    paths: BTreeMap<SourceKey, Vec<String>>,
    module_vars: BTreeMap<String, usize>,
    groups: HashMap<String, Factor>,
    coactions: BTreeMap<(Coaction, String), CoactionUse>,
}

impl Uses {
    fn path(&mut self, key: SourceKey, path: &Option<String>) {
        self.paths
            .entry(key)
            .or_default()
            .push(path.clone().unwrap_or_default());
    }

    fn factor(&mut self, f: &Factor, decls: &Decls) -> Result<(), DslError> {
        f.atoms.iter().try_for_each(|a| self.atom(a, decls))
    }

    fn atom(&mut self, atom: &Atom, decls: &Decls) -> Result<(), DslError> {
        match atom {
            Atom::Var { name, path } => match decls.vars.get(name) {
                None => Err(DslError::UnknownVariable(name.clone())),
                Some(Sort::Algebra) => {
                    self.path(SourceKey::Var(name.clone()), path);
                    Ok(())
                }
                Some(Sort::Module(_)) => {
                    if path.is_some() {
                        return Err(DslError::Type(format!(
                            "module variable `{name}` has no coproduct"
                        )));
                    }
                    *self.module_vars.entry(name.clone()).or_default() += 1;
                    Ok(())
                }
            },
            Atom::Phi { comp, label, path } => {
                let key = SourceKey::Phi {
                    inverse: comp.inverse,
                    label: label.clone(),
                    slot: comp.slot,
                };
                self.path(key, path);
                Ok(())
            }
            Atom::Alpha | Atom::Beta => Ok(()),
            Atom::Apply { arg, .. } => self.factor(arg, decls),
            Atom::Group { body, path: None } => self.factor(body, decls),
            Atom::Group { body, path } => {
                let text = body.to_string();
                if !self.groups.contains_key(&text) {
                    self.factor(body, decls)?;
                    self.groups.insert(text.clone(), (**body).clone());
                }
                self.path(SourceKey::Group(text), path);
                Ok(())
            }
            Atom::Leg {
                base,
                kind,
                leg,
                label,
                path,
            } => {
                let base_text = base.to_string();
                let key = (*kind, label.clone());
                match self.coactions.get_mut(&key) {
                    Some(c) if c.base_text != base_text => {
                        return Err(DslError::UnpairedLeg(format!(
                            "legs of the same coaction applied to `{}` and `{base_text}`",
                            c.base_text
                        )))
                    }
                    Some(_) => {}
                    None => {
                        // The base is evaluated once, however many legs use it.
                        match &**base {
                            Atom::Group { body, path: None } => self.factor(body, decls)?,
                            other => self.atom(other, decls)?,
                        }
                        self.coactions.insert(
                            key.clone(),
                            CoactionUse {
                                base: (**base).clone(),
                                base_text,
                                leg0: 0,
                            },
                        );
                    }
                }
                if *leg == 0 {
                    if path.is_some() {
                        return Err(DslError::Type(
                            "leg 0 is a module element and has no coproduct".into(),
                        ));
                    }
                    self.coactions.get_mut(&key).expect("inserted").leg0 += 1;
                } else {
                    self.path(SourceKey::Coaction(*kind, label.clone()), path);
                }
                Ok(())
            }
        }
    }

    fn validate(&self) -> Result<BTreeMap<SourceKey, Bracketing>, DslError> {
        for (name, &count) in &self.module_vars {
            if count > 1 {
                return Err(DslError::Type(format!(
                    "module variable `{name}` is used {count} times"
                )));
            }
        }
        for ((kind, label), c) in &self.coactions {
            let key = SourceKey::Coaction(*kind, label.clone());
            let describe = || {
                let k = if *kind == Coaction::Rho {
                    "<..>"
                } else {
                    "[..]"
                };
                if label.is_empty() {
                    format!("{}{k}", c.base_text)
                } else {
                    format!("{}{k} with label `{label}`", c.base_text)
                }
            };
            if c.leg0 != 1 {
                return Err(DslError::UnpairedLeg(format!(
                    "{} has {} uses of leg 0",
                    describe(),
                    c.leg0
                )));
            }
            if !self.paths.contains_key(&key) {
                return Err(DslError::UnpairedLeg(format!(
                    "{} has no leg 1",
                    describe()
                )));
            }
        }
        let mut instances: BTreeMap<(bool, String), [bool; 3]> = BTreeMap::new();
        for key in self.paths.keys() {
            if let SourceKey::Phi {
                inverse,
                label,
                slot,
            } = key
            {
                instances.entry((*inverse, label.clone())).or_default()[*slot] = true;
            }
        }
        for ((inverse, label), seen) in instances {
            if seen.iter().any(|s| !s) {
                let letters = if inverse { "P, Q, R" } else { "X, Y, Z" };
                let which = if label.is_empty() {
                    String::new()
                } else {
                    format!(" `{label}`")
                };
                return Err(DslError::IncompleteInstance(format!(
                    "instance{which} must use each of {letters}"
                )));
            }
        }
        let mut trees = BTreeMap::new();
        for (key, paths) in &self.paths {
            let tree = Bracketing::from_paths(paths).ok_or_else(|| DslError::Bracketing {
                source_text: key.to_string(),
                paths: paths.clone(),
            })?;
            trees.insert(key.clone(), tree);
        }
        Ok(trees)
    }
}

struct Builder<'a> {
    decls: &'a Decls,
    uses: &'a Uses,
    trees: BTreeMap<SourceKey, Bracketing>,
    nodes: Vec<Node>,
    wires: Vec<Sort>,
    /// Leaf wires of realized sources, removed as they are consumed.
    leaves: HashMap<SourceKey, HashMap<String, usize>>,
    /// Leg-0 wires of realized coactions.
    leg0: HashMap<(Coaction, String), usize>,
    /// Product of all literal coefficients met so far.
    scale: Lit,
}

impl<'a> Builder<'a> {
    fn wire(&mut self, sort: Sort) -> usize {
        self.wires.push(sort);
        self.wires.len() - 1
    }

    fn node(&mut self, kind: NodeKind, ports: Vec<usize>) {
        self.nodes.push(Node { kind, ports });
    }

    fn unary(&mut self, kind: NodeKind, sort: Sort) -> usize {
        let w = self.wire(sort);
        self.node(kind, vec![w]);
        w
    }

    /// Splits the wire `root` along `tree`, recording the leaves of `key`.
    fn split(&mut self, key: SourceKey, root: usize) {
        let tree = self.trees[&key].clone();
        let mut leaves = HashMap::new();
        self.split_rec(&tree, root, String::new(), &mut leaves);
        self.leaves.insert(key, leaves);
    }

    fn split_rec(
        &mut self,
        tree: &Bracketing,
        w: usize,
        prefix: String,
        out: &mut HashMap<String, usize>,
    ) {
        match tree {
            Bracketing::Leaf => {
                out.insert(prefix, w);
            }
            Bracketing::Node(l, r) => {
                let a = self.wire(Sort::Algebra);
                let b = self.wire(Sort::Algebra);
                self.node(NodeKind::Coproduct, vec![w, a, b]);
                self.split_rec(l, a, format!("{prefix}1"), out);
                self.split_rec(r, b, format!("{prefix}2"), out);
            }
        }
    }

    fn realize(&mut self, key: &SourceKey) -> Result<(), DslError> {
        if self.leaves.contains_key(key) {
            return Ok(());
        }
        match key {
            SourceKey::Var(name) => {
                let w = self.unary(NodeKind::Basis(name.clone()), Sort::Algebra);
                self.split(key.clone(), w);
            }
            SourceKey::Phi { inverse, label, .. } => {
                let ws: Vec<usize> = (0..3).map(|_| self.wire(Sort::Algebra)).collect();
                let kind = if *inverse {
                    NodeKind::PhiInv
                } else {
                    NodeKind::Phi
                };
                self.node(kind, ws.clone());
                for (slot, w) in ws.into_iter().enumerate() {
                    let k = SourceKey::Phi {
                        inverse: *inverse,
                        label: label.clone(),
                        slot,
                    };
                    self.split(k, w);
                }
            }
            SourceKey::Group(text) => {
                let body = self.uses.groups[text].clone();
                let w = self.factor(&body)?;
                if self.wires[w] != Sort::Algebra {
                    return Err(DslError::Type(format!(
                        "`({text})` is a module element and has no coproduct"
                    )));
                }
                self.split(key.clone(), w);
            }
            SourceKey::Coaction(kind, label) => self.realize_coaction(*kind, label)?,
        }
        Ok(())
    }

    fn realize_coaction(&mut self, kind: Coaction, label: &str) -> Result<(), DslError> {
        let ckey = (kind, label.to_string());
        let base = self.uses.coactions[&ckey].base.clone();
        let w = match &base {
            Atom::Group { body, path: None } => self.factor(body)?,
            other => self.atom(other)?,
        };
        let module = match &self.wires[w] {
            Sort::Module(m) => m.clone(),
            Sort::Algebra => {
                return Err(DslError::Type(format!(
                    "coaction applied to the algebra element `{base}`"
                )))
            }
        };
        if !self.decls.coactions.contains(&(kind, module.clone())) {
            return Err(DslError::MissingCoaction(module));
        }
        let m0 = self.wire(Sort::Module(module.clone()));
        let h1 = self.wire(Sort::Algebra);
        let node = match kind {
            Coaction::Rho => NodeKind::Rho(module),
            Coaction::Lam => NodeKind::Lam(module),
        };
        self.node(node, vec![w, m0, h1]);
        self.leg0.insert(ckey, m0);
        self.split(SourceKey::Coaction(kind, label.to_string()), h1);
        Ok(())
    }

    fn leaf(&mut self, key: SourceKey, path: &Option<String>) -> Result<usize, DslError> {
        self.realize(&key)?;
        let p = path.clone().unwrap_or_default();
        self.leaves
            .get_mut(&key)
            .and_then(|l| l.remove(&p))
            .ok_or_else(|| DslError::Type(format!("`{key}` with path `{p}` is used twice")))
    }

    fn atom(&mut self, atom: &Atom) -> Result<usize, DslError> {
        match atom {
            Atom::Var { name, path } => match &self.decls.vars[name] {
                Sort::Algebra => self.leaf(SourceKey::Var(name.clone()), path),
                sort @ Sort::Module(_) => {
                    let sort = sort.clone();
                    Ok(self.unary(NodeKind::Basis(name.clone()), sort))
                }
            },
            Atom::Phi { comp, label, path } => self.leaf(
                SourceKey::Phi {
                    inverse: comp.inverse,
                    label: label.clone(),
                    slot: comp.slot,
                },
                path,
            ),
            Atom::Alpha => Ok(self.unary(NodeKind::Alpha, Sort::Algebra)),
            Atom::Beta => Ok(self.unary(NodeKind::Beta, Sort::Algebra)),
            Atom::Apply { func, arg } => {
                let w = self.factor(arg)?;
                if self.wires[w] != Sort::Algebra {
                    return Err(DslError::Type(format!(
                        "{} applied to a module element",
                        func.name()
                    )));
                }
                let kind = match func {
                    Func::S => NodeKind::S,
                    Func::S2 => NodeKind::S2,
                    Func::Sinv => NodeKind::Sinv,
                    Func::Eps => unreachable!("counits are handled per factor"),
                };
                let out = self.wire(Sort::Algebra);
                self.node(kind, vec![w, out]);
                Ok(out)
            }
            Atom::Group { body, path: None } => self.factor(body),
            Atom::Group { body, path } => self.leaf(SourceKey::Group(body.to_string()), path),
            Atom::Leg {
                kind,
                leg: 0,
                label,
                ..
            } => {
                let ckey = (*kind, label.clone());
                if !self.leg0.contains_key(&ckey) {
                    self.realize_coaction(*kind, label)?;
                }
                Ok(self.leg0[&ckey])
            }
            Atom::Leg {
                kind, label, path, ..
            } => self.leaf(SourceKey::Coaction(*kind, label.clone()), path),
        }
    }

    /// The wire carrying the value of a product; counits become scalar nodes.
    fn factor(&mut self, f: &Factor) -> Result<usize, DslError> {
        self.scale = self
            .scale
            .mul(f.coeff)
            .ok_or_else(|| DslError::Type("literal overflow".into()))?;
        let mut values = Vec::new();
        for atom in &f.atoms {
            if let Atom::Apply {
                func: Func::Eps,
                arg,
            } = atom
            {
                let w = self.factor(arg)?;
                if self.wires[w] != Sort::Algebra {
                    return Err(DslError::Type("eps applied to a module element".into()));
                }
                self.node(NodeKind::Counit, vec![w]);
            } else {
                values.push(self.atom(atom)?);
            }
        }
        let module = match values.last() {
            Some(&w) if self.wires[w] != Sort::Algebra => values.pop(),
            _ => None,
        };
        if let Some(&w) = values.iter().find(|&&w| self.wires[w] != Sort::Algebra) {
            return Err(DslError::Type(format!(
                "module element of `{}` must be the rightmost factor",
                sort_name(&self.wires[w])
            )));
        }
        let mut acc = values.first().copied();
        for &w in values.iter().skip(1) {
            let out = self.wire(Sort::Algebra);
            self.node(NodeKind::Mul, vec![acc.expect("nonempty"), w, out]);
            acc = Some(out);
        }
        match (acc, module) {
            (None, None) => Ok(self.unary(NodeKind::Unit, Sort::Algebra)),
            (Some(a), None) => Ok(a),
            (None, Some(m)) => Ok(m),
            (Some(a), Some(m)) => {
                let sort = self.wires[m].clone();
                let Sort::Module(name) = sort.clone() else {
                    unreachable!()
                };
                let out = self.wire(sort);
                self.node(NodeKind::Act(name), vec![a, m, out]);
                Ok(out)
            }
        }
    }
}

fn compile_term(term: &Term, decls: &Decls) -> Result<(TermPlan, Vec<String>), DslError> {
    let mut uses = Uses::default();
    for f in &term.factors {
        uses.factor(f, decls)?;
    }
    let trees = uses.validate()?;
    let mut vars: Vec<String> = uses.module_vars.keys().cloned().collect();
    for key in uses.paths.keys() {
        if let SourceKey::Var(v) = key {
            vars.push(v.clone());
        }
    }
    let mut b = Builder {
        decls,
        uses: &uses,
        trees,
        nodes: Vec::new(),
        wires: Vec::new(),
        leaves: HashMap::new(),
        leg0: HashMap::new(),
        scale: Lit::ONE,
    };
    let mut outputs = Vec::new();
    for f in &term.factors {
        outputs.push(b.factor(f)?);
    }
    let coeff = Lit {
        num: if term.negative {
            -b.scale.num
        } else {
            b.scale.num
        },
        den: b.scale.den,
    };
    for (key, rest) in &b.leaves {
        if let Some(p) = rest.keys().next() {
            return Err(DslError::Type(format!(
                "leaf `{p}` of `{key}` is never used"
            )));
        }
    }
    Ok((
        TermPlan {
            coeff,
            nodes: b.nodes,
            wires: b.wires,
            outputs,
        },
        vars,
    ))
}
