//! The monoidal category of finite-dimensional left `H`-modules.
//!
//! A linear map `f: M → N` is a `d_N × d_M` matrix. When such maps are
//! themselves vectors (internal Homs, intertwiner spaces) they are flattened
//! row-major: entry `f[r][c]` sits at index `r·d_M + c`.

use std::sync::Arc;

use crate::algebra::QuasiHopfAlgebra;
use crate::checks::compare;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::report::{CheckItem, CheckReport};
use crate::scalar::Scalar;
use crate::tensor::Tensor;

/// A left module given by the action matrices of the basis elements.
#[derive(Clone, Debug)]
pub struct Module {
    algebra: Arc<QuasiHopfAlgebra>,
    dim: usize,
    action: Vec<Matrix>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra)
            && self.dim == other.dim
            && self.action == other.action
    }
}

impl Eq for Module {}

/// A linear map between modules; H-linearity is checked, not assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub source: Module,
    pub target: Module,
    pub matrix: Matrix,
}

impl ModuleMap {
    pub fn new(source: Module, target: Module, matrix: Matrix) -> Result<ModuleMap> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::shape(format!(
                "map matrix {}x{} between modules of dimension {} and {}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        Ok(ModuleMap {
            source,
            target,
            matrix,
        })
    }

    pub fn is_module_morphism(&self) -> bool {
        is_module_morphism(&self.matrix, &self.source, &self.target)
    }

    pub fn compose(&self, first: &ModuleMap) -> Result<ModuleMap> {
        ModuleMap::new(
            first.source.clone(),
            self.target.clone(),
            self.matrix.mul(&first.matrix)?,
        )
    }
}

impl Module {
    pub fn new(algebra: Arc<QuasiHopfAlgebra>, action: Vec<Matrix>) -> Result<Module> {
        let n = algebra.dim();
        if action.len() != n {
            return Err(Error::shape(format!(
                "{} action matrices for an algebra of dimension {n}",
                action.len()
            )));
        }
        let dim = action.first().map_or(0, Matrix::rows);
        for a in &action {
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::shape("action matrices must all be d x d"));
            }
            if a.field() != algebra.field() {
                return Err(Error::FieldMismatch(algebra.field(), a.field()));
            }
        }
        Ok(Module {
            algebra,
            dim,
            action,
        })
    }

    /// The trivial module `k` with `h·1 = ε(h)`.
    pub fn unit(h: &Arc<QuasiHopfAlgebra>) -> Module {
        let action = (0..h.dim())
            .map(|i| Matrix::from_vec(h.field(), 1, 1, vec![h.counit().get(0, i).clone()]).unwrap())
            .collect();
        Module::new(h.clone(), action).expect("unit module")
    }

    /// `H` acting on itself by left multiplication.
    pub fn regular(h: &Arc<QuasiHopfAlgebra>) -> Module {
        let action = (0..h.dim()).map(|i| h.left_mult(i).clone()).collect();
        Module::new(h.clone(), action).expect("regular module")
    }

    /// One-dimensional module from the values of a character on the basis.
    pub fn character(h: &Arc<QuasiHopfAlgebra>, values: &[Scalar]) -> Result<Module> {
        let action = values
            .iter()
            .map(|v| Matrix::from_vec(h.field(), 1, 1, vec![v.clone()]))
            .collect::<Result<_>>()?;
        Module::new(h.clone(), action)
    }

    pub fn algebra(&self) -> &Arc<QuasiHopfAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    /// Action matrix of an arbitrary element.
    pub fn act(&self, a: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.algebra.field(), self.dim, self.dim);
        for (c, m) in a.iter().zip(&self.action) {
            out.add_scaled(c, m);
        }
        out
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(self.algebra.field(), self.dim)
    }

    fn same_algebra(&self, other: &Module) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::shape("modules over different algebras"))
        }
    }

    /// Unit acts as the identity and the action is multiplicative.
    pub fn check(&self) -> CheckReport {
        let h = &self.algebra;
        let n = h.dim();
        let unit = compare(
            vec![],
            self.act(&h.one()).entries(),
            self.identity().entries(),
        );
        let mult = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find_map(|(i, j)| {
                let lhs = self.action[i].mul(&self.action[j]).expect("square");
                let rhs = self.act(&h.mul(&h.basis_elem(i), &h.basis_elem(j)));
                compare(vec![i, j], lhs.entries(), rhs.entries())
            });
        CheckReport::new(vec![
            CheckItem::from_witness("action-unit", unit),
            CheckItem::from_witness("action-mult", mult),
        ])
    }

    pub fn is_valid(&self) -> bool {
        self.check().all_passed()
    }
}

/// Action of an element of `H^{⊗k}` on `M₁⊗…⊗M_k`, slot by slot.
pub fn act_tensor(t: &Tensor, modules: &[&Module]) -> Matrix {
    assert_eq!(t.order(), modules.len(), "one module per tensor slot");
    let field = t.field();
    let d: usize = modules.iter().map(|m| m.dim()).product();
    let mut out = Matrix::zeros(field, d, d);
    for (idx, c) in t.nonzeros() {
        let mut k = Matrix::identity(field, 1);
        for (slot, m) in idx.iter().zip(modules) {
            k = k.kron(&m.action()[*slot]).expect("same field");
        }
        out.add_scaled(c, &k);
    }
    out
}

/// `M⊗N` with `a·(m⊗n) = a¹m⊗a²n`; basis index `i·d_N + j`.
pub fn tensor(m: &Module, n: &Module) -> Result<Module> {
    m.same_algebra(n)?;
    let h = m.algebra();
    let action = (0..h.dim())
        .map(|i| act_tensor(&h.coproduct(&h.basis_elem(i)), &[m, n]))
        .collect();
    Module::new(h.clone(), action)
}

/// `(M⊗N)⊗L → M⊗(N⊗L)`, the action of `Φ`.
pub fn associator(m: &Module, n: &Module, l: &Module) -> Result<ModuleMap> {
    let h = m.algebra();
    let matrix = act_tensor(h.phi(), &[m, n, l]);
    ModuleMap::new(
        tensor(&tensor(m, n)?, l)?,
        tensor(m, &tensor(n, l)?)?,
        matrix,
    )
}

/// `M⊗(N⊗L) → (M⊗N)⊗L`, the action of `Φ⁻¹`.
pub fn associator_inv(m: &Module, n: &Module, l: &Module) -> Result<ModuleMap> {
    let h = m.algebra();
    let matrix = act_tensor(h.phi_inv(), &[m, n, l]);
    ModuleMap::new(
        tensor(m, &tensor(n, l)?)?,
        tensor(&tensor(m, n)?, l)?,
        matrix,
    )
}

/// `k⊗M → M`, the canonical identification.
pub fn left_unitor(m: &Module) -> Result<ModuleMap> {
    let one = Module::unit(m.algebra());
    ModuleMap::new(tensor(&one, m)?, m.clone(), m.identity())
}

/// `M⊗k → M`, the canonical identification.
pub fn right_unitor(m: &Module) -> Result<ModuleMap> {
    let one = Module::unit(m.algebra());
    ModuleMap::new(tensor(m, &one)?, m.clone(), m.identity())
}

/// Left internal Hom: `h·φ = h¹φ(S(h²)−)` on `Hom_k(M, N)`.
pub fn hom_l(m: &Module, n: &Module) -> Result<Module> {
    m.same_algebra(n)?;
    let h = m.algebra();
    let action = (0..h.dim())
        .map(|i| {
            let mut acc = Matrix::zeros(h.field(), n.dim() * m.dim(), n.dim() * m.dim());
            for (c, a, b) in h.delta_terms(i) {
                let right = m.act(&h.antipode_of(&h.basis_elem(b))).transpose();
                acc.add_scaled(&c, &n.action()[a].kron(&right).expect("field"));
            }
            acc
        })
        .collect();
    Module::new(h.clone(), action)
}

/// Right internal Hom: `h·φ = h²φ(S⁻¹(h¹)−)` on `Hom_k(M, N)`.
pub fn hom_r(m: &Module, n: &Module) -> Result<Module> {
    m.same_algebra(n)?;
    let h = m.algebra();
    let action = (0..h.dim())
        .map(|i| {
            let mut acc = Matrix::zeros(h.field(), n.dim() * m.dim(), n.dim() * m.dim());
            for (c, a, b) in h.delta_terms(i) {
                let right = m.act(&h.antipode_inv_of(&h.basis_elem(a))).transpose();
                acc.add_scaled(&c, &n.action()[b].kron(&right).expect("field"));
            }
            acc
        })
        .collect();
    Module::new(h.clone(), action)
}

/// `M^#`: the same space with `h·m = S²(h)m`.
pub fn sharp(m: &Module) -> Module {
    let h = m.algebra();
    let action = (0..h.dim())
        .map(|i| m.act(&h.s2_of(&h.basis_elem(i))))
        .collect();
    Module::new(h.clone(), action).expect("same shape")
}

pub fn is_module_morphism(f: &Matrix, source: &Module, target: &Module) -> bool {
    if f.rows() != target.dim() || f.cols() != source.dim() {
        return false;
    }
    source
        .action()
        .iter()
        .zip(target.action())
        .all(|(a, b)| f.mul(a).expect("shape") == b.mul(f).expect("shape"))
}

/// Linear constraints whose kernel is `Hom_H(source, target)` (row-major
/// flattened maps).
pub fn intertwiner_constraints(source: &Module, target: &Module) -> Matrix {
    let field = source.algebra().field();
    let (dm, dn) = (source.dim(), target.dim());
    let unknowns = dn * dm;
    let mut blocks = Vec::new();
    for (a, b) in source.action().iter().zip(target.action()) {
        // (f·a − b·f)[r][c'] for every (r, c').
        let mut block = Matrix::zeros(field, unknowns, unknowns);
        for r in 0..dn {
            for c2 in 0..dm {
                let row = r * dm + c2;
                for c in 0..dm {
                    let v = a.get(c, c2);
                    if !v.is_zero() {
                        let e = block.entry_mut(row, r * dm + c);
                        *e += v;
                    }
                }
                for r2 in 0..dn {
                    let v = b.get(r, r2);
                    if !v.is_zero() {
                        let e = block.entry_mut(row, r2 * dm + c2);
                        *e = &*e - v;
                    }
                }
            }
        }
        blocks.push(block);
    }
    Matrix::vstack(field, &blocks).expect("same width")
}

/// A basis of `Hom_H(source, target)`, each element a `d_target × d_source` matrix.
pub fn hom_space(source: &Module, target: &Module) -> Vec<Matrix> {
    let k = intertwiner_constraints(source, target).kernel_basis();
    let field = source.algebra().field();
    (0..k.cols())
        .map(|j| Matrix::from_vec(field, target.dim(), source.dim(), k.column(j)).expect("reshape"))
        .collect()
}

/// `ev_l: Hom^l(W, k)⊗W → k`, `φ⊗w ↦ φ(α·w)`.
pub fn ev_l(w: &Module) -> Result<ModuleMap> {
    let h = w.algebra();
    let one = Module::unit(h);
    let dual = hom_l(w, &one)?;
    let a = w.act(&h.alpha);
    let d = w.dim();
    let row = Matrix::from_fn(h.field(), 1, d * d, |_, cj| a.get(cj / d, cj % d).clone());
    ModuleMap::new(tensor(&dual, w)?, one, row)
}

/// `ev_r: V⊗Hom^r(V, k) → k`, `v⊗φ ↦ φ(S⁻¹(α)·v)`.
pub fn ev_r(v: &Module) -> Result<ModuleMap> {
    let h = v.algebra();
    let one = Module::unit(h);
    let dual = hom_r(v, &one)?;
    let a = v.act(&h.antipode_inv_of(&h.alpha));
    let d = v.dim();
    let row = Matrix::from_fn(h.field(), 1, d * d, |_, jc| a.get(jc % d, jc / d).clone());
    ModuleMap::new(tensor(v, &dual)?, one, row)
}

/// `uncurry_l(g) = ev_l∘(g⊗Id_W)` for `g: V → Hom^l(W, k)`; a map `V⊗W → k`.
pub fn uncurry_l(v: &Module, w: &Module, g: &Matrix) -> Result<ModuleMap> {
    let ev = ev_l(w)?;
    let m = ev.matrix.mul(&g.kron(&w.identity())?)?;
    ModuleMap::new(tensor(v, w)?, ev.target, m)
}

/// `uncurry_r(g) = ev_r∘(Id_W⊗g)` for `g: V → Hom^r(W, k)`; a map `W⊗V → k`.
pub fn uncurry_r(w: &Module, v: &Module, g: &Matrix) -> Result<ModuleMap> {
    let ev = ev_r(w)?;
    let m = ev.matrix.mul(&w.identity().kron(g)?)?;
    ModuleMap::new(tensor(w, v)?, ev.target, m)
}

/// The inverse of [`uncurry_l`] on intertwiners: for H-linear `f: V⊗W → k`
/// finds the H-linear `g: V → Hom^l(W, k)` with `uncurry_l(g) = f`.
pub fn curry_l(v: &Module, w: &Module, f: &Matrix) -> Result<ModuleMap> {
    let one = Module::unit(v.algebra());
    let vw = tensor(v, w)?;
    if !is_module_morphism(f, &vw, &one) {
        return Err(Error::Precondition("curry_l: input is not H-linear".into()));
    }
    let dual = hom_l(w, &one)?;
    let basis = hom_space(v, &dual);
    let g = solve_in_span(&basis, (dual.dim(), v.dim()), f, |g| {
        Ok(uncurry_l(v, w, g)?.matrix)
    })?;
    ModuleMap::new(v.clone(), dual, g)
}

/// The inverse of [`uncurry_r`] on intertwiners.
pub fn curry_r(w: &Module, v: &Module, f: &Matrix) -> Result<ModuleMap> {
    let one = Module::unit(v.algebra());
    let wv = tensor(w, v)?;
    if !is_module_morphism(f, &wv, &one) {
        return Err(Error::Precondition("curry_r: input is not H-linear".into()));
    }
    let dual = hom_r(w, &one)?;
    let basis = hom_space(v, &dual);
    let g = solve_in_span(&basis, (dual.dim(), v.dim()), f, |g| {
        Ok(uncurry_r(w, v, g)?.matrix)
    })?;
    ModuleMap::new(v.clone(), dual, g)
}

/// Finds `Σ c_k basis_k` whose image under the linear `map` equals `target`.
fn solve_in_span(
    basis: &[Matrix],
    shape: (usize, usize),
    target: &Matrix,
    map: impl Fn(&Matrix) -> Result<Matrix>,
) -> Result<Matrix> {
    let field = target.field();
    let images = basis
        .iter()
        .map(|b| Ok(map(b)?.entries().to_vec()))
        .collect::<Result<Vec<_>>>()?;
    let len = target.entries().len();
    let system = Matrix::from_columns(field, len, &images)?;
    let rhs = Matrix::column_vector(field, target.entries().to_vec());
    let sol = system.solve(&rhs)?.ok_or_else(|| {
        Error::Inconsistent("target is outside the image of the intertwiner space".into())
    })?;
    if sol.kernel.cols() != 0 {
        return Err(Error::InvalidAlgebra(
            "uncurrying is not injective on intertwiners".into(),
        ));
    }
    let mut g = Matrix::zeros(field, shape.0, shape.1);
    for (k, b) in basis.iter().enumerate() {
        g.add_scaled(sol.particular.get(k, 0), b);
    }
    Ok(g)
}

/// `ι_{V,W}: Hom_H(V⊗W, k) → Hom_H(W^#⊗V, k)` as the composite of `curry_l`,
/// the identification `Hom^l(W, k) = Hom^r(W^#, k)`, and `uncurry_r`.
#[derive(Clone, Debug)]
pub struct Iota {
    pub v: Module,
    pub w: Module,
    pub w_sharp: Module,
    /// Basis of `Hom_H(V⊗W, k)` (1 × d_V·d_W maps).
    pub domain: Vec<Matrix>,
    /// Basis of `Hom_H(W^#⊗V, k)`.
    pub codomain: Vec<Matrix>,
    /// Matrix of `ι` in these bases.
    pub matrix: Matrix,
}

impl Iota {
    pub fn new(v: &Module, w: &Module) -> Result<Iota> {
        let one = Module::unit(v.algebra());
        let w_sharp = sharp(w);
        let domain = hom_space(&tensor(v, w)?, &one);
        let codomain = hom_space(&tensor(&w_sharp, v)?, &one);
        let field = v.algebra().field();
        let mut cols = Vec::with_capacity(domain.len());
        for f in &domain {
            let image = iota_apply(v, w, &w_sharp, f)?;
            cols.push(coordinates(&codomain, &image)?);
        }
        let matrix = Matrix::from_columns(field, codomain.len(), &cols)?;
        Ok(Iota {
            v: v.clone(),
            w: w.clone(),
            w_sharp,
            domain,
            codomain,
            matrix,
        })
    }

    pub fn apply(&self, f: &Matrix) -> Result<Matrix> {
        iota_apply(&self.v, &self.w, &self.w_sharp, f)
    }

    pub fn is_bijective(&self) -> bool {
        self.matrix.rows() == self.matrix.cols() && self.matrix.rank() == self.matrix.cols()
    }

    /// `ι⁻¹` on an intertwiner `W^#⊗V → k`.
    pub fn apply_inverse(&self, g: &Matrix) -> Result<Matrix> {
        let coords = coordinates(&self.codomain, g)?;
        let field = g.field();
        let x = self
            .matrix
            .solve(&Matrix::column_vector(field, coords))?
            .ok_or_else(|| Error::Inconsistent("iota is not surjective".into()))?;
        let mut out = Matrix::zeros(field, 1, self.v.dim() * self.w.dim());
        for (k, b) in self.domain.iter().enumerate() {
            out.add_scaled(x.particular.get(k, 0), b);
        }
        Ok(out)
    }
}

fn iota_apply(v: &Module, w: &Module, w_sharp: &Module, f: &Matrix) -> Result<Matrix> {
    let g = curry_l(v, w, f)?;
    // Hom^l(W, k) and Hom^r(W^#, k) share the space and the action φ(S(h)−).
    Ok(uncurry_r(w_sharp, v, &g.matrix)?.matrix)
}

/// Coordinates of `x` in the (independent) family `basis`.
pub(crate) fn coordinates(basis: &[Matrix], x: &Matrix) -> Result<Vec<Scalar>> {
    let field = x.field();
    let cols: Vec<Vec<Scalar>> = basis.iter().map(|b| b.entries().to_vec()).collect();
    let system = Matrix::from_columns(field, x.entries().len(), &cols)?;
    let sol = system
        .solve(&Matrix::column_vector(field, x.entries().to_vec()))?
        .ok_or_else(|| Error::Inconsistent("vector outside the span".into()))?;
    Ok(sol.particular.column(0))
}

/// Candidate closed form `ι(f)(w⊗v) = f(Pv ⊗ QβS(αR)·w)`, summed over `Φ⁻¹`.
pub fn iota_closed_form(v: &Module, w: &Module, f: &Matrix) -> Matrix {
    let h = v.algebra();
    let (dv, dw) = (v.dim(), w.dim());
    let mut out = Matrix::zeros(h.field(), 1, dw * dv);
    for (c, p, q, r) in h.phi_terms(true) {
        let second = h.mul_all(&[
            &h.basis_elem(q),
            &h.beta,
            &h.antipode_of(&h.mul(&h.alpha, &h.basis_elem(r))),
        ]);
        // f ∘ (P_v ⊗ (QβS(αR))_w) ∘ flip
        let k = v.action()[p].kron(&w.act(&second)).expect("field");
        let fk = f.mul(&k).expect("shape");
        for wi in 0..dw {
            for vi in 0..dv {
                let e = out.entry_mut(0, wi * dv + vi);
                e.add_product(&c, fk.get(0, vi * dw + wi));
            }
        }
    }
    out
}

/// The flip `W⊗V → V⊗W` precomposed with `f: V⊗W → k`.
pub fn flip_precompose(dv: usize, dw: usize, f: &Matrix) -> Matrix {
    Matrix::from_fn(f.field(), 1, dw * dv, |_, wv| {
        let (wi, vi) = (wv / dv, wv % dv);
        f.get(0, vi * dw + wi).clone()
    })
}
