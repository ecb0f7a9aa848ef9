//! Finite-dimensional quasi-Hopf algebras given by structure constants.
//!
//! Linear maps are stored as matrices acting on coefficient column vectors:
//! column `i` of `delta` is `Δ(e_i)` flattened into `H⊗H`, column `i` of
//! `antipode` is `S(e_i)`, and so on.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};
use crate::tensor::{product_table, unflat, Tensor};

pub type Elem = Vec<Scalar>;

/// Unital associative algebra with a distinguished basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub field: Field,
    pub basis: Vec<String>,
    /// `mult[i][j][l]` = coefficient of `e_l` in `e_i·e_j`.
    pub mult: Tensor,
    pub unit: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiBialgebra {
    pub algebra: Algebra,
    /// `n² × n`.
    pub delta: Matrix,
    /// `1 × n`.
    pub counit: Matrix,
    pub phi: Tensor,
    pub phi_inv: Tensor,
}

/// Raw structure data; missing inverses are computed by [`QuasiHopfAlgebra::new`].
#[derive(Clone, Debug)]
pub struct QuasiHopfParts {
    pub field: Field,
    pub basis: Vec<String>,
    pub mult: Tensor,
    pub unit: Elem,
    pub delta: Matrix,
    pub counit: Matrix,
    pub phi: Tensor,
    pub phi_inv: Option<Tensor>,
    pub antipode: Matrix,
    pub antipode_inv: Option<Matrix>,
    pub alpha: Elem,
    pub beta: Elem,
}

#[derive(Clone, Debug)]
pub struct QuasiHopfAlgebra {
    pub qb: QuasiBialgebra,
    /// `S` as an `n × n` matrix.
    pub antipode: Matrix,
    pub antipode_inv: Matrix,
    pub alpha: Elem,
    pub beta: Elem,
    /// Whether `Φ⁻¹` was supplied rather than computed.
    pub phi_inv_supplied: bool,
    cache: Cache,
}

#[derive(Clone, Debug)]
struct Cache {
    products: Vec<Vec<(usize, Scalar)>>,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
    s2: Matrix,
}

impl PartialEq for QuasiHopfAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.qb == other.qb
            && self.antipode == other.antipode
            && self.antipode_inv == other.antipode_inv
            && self.alpha == other.alpha
            && self.beta == other.beta
    }
}

impl Eq for QuasiHopfAlgebra {}

/// A parenthesization of an iterated coproduct. Leaves are slots of the
/// output, left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bracketing {
    Leaf,
    Node(Box<Bracketing>, Box<Bracketing>),
}

impl Bracketing {
    pub fn node(l: Bracketing, r: Bracketing) -> Bracketing {
        Bracketing::Node(Box::new(l), Box::new(r))
    }

    /// `(Id⊗Δ)∘Δ`: leaves `1, 21, 22`.
    pub fn right_comb3() -> Bracketing {
        Bracketing::node(
            Bracketing::Leaf,
            Bracketing::node(Bracketing::Leaf, Bracketing::Leaf),
        )
    }

    /// `(Δ⊗Id)∘Δ`: leaves `11, 12, 2`.
    pub fn left_comb3() -> Bracketing {
        Bracketing::node(
            Bracketing::node(Bracketing::Leaf, Bracketing::Leaf),
            Bracketing::Leaf,
        )
    }

    pub fn leaves(&self) -> usize {
        match self {
            Bracketing::Leaf => 1,
            Bracketing::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    /// Leaf addresses as strings over `{1,2}`, left to right.
    pub fn paths(&self) -> Vec<String> {
        fn go(b: &Bracketing, prefix: String, out: &mut Vec<String>) {
            match b {
                Bracketing::Leaf => out.push(prefix),
                Bracketing::Node(l, r) => {
                    go(l, format!("{prefix}1"), out);
                    go(r, format!("{prefix}2"), out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, String::new(), &mut out);
        out
    }

    /// The tree whose leaf set is exactly `paths`; `None` unless the paths are
    /// the complete, prefix-free leaf set of a full binary tree.
    pub fn from_paths<S: AsRef<str>>(paths: &[S]) -> Option<Bracketing> {
        let mut ps: Vec<&str> = paths.iter().map(AsRef::as_ref).collect();
        if ps.iter().any(|p| p.chars().any(|c| c != '1' && c != '2')) {
            return None;
        }
        ps.sort_unstable();
        if ps.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        fn build(ps: &[&str], depth: usize) -> Option<Bracketing> {
            if ps.len() == 1 && ps[0].len() == depth {
                return Some(Bracketing::Leaf);
            }
            if ps.iter().any(|p| p.len() <= depth) {
                return None;
            }
            let (l, r): (Vec<&str>, Vec<&str>) =
                ps.iter().partition(|p| p.as_bytes()[depth] == b'1');
            if l.is_empty() || r.is_empty() {
                return None;
            }
            Some(Bracketing::node(
                build(&l, depth + 1)?,
                build(&r, depth + 1)?,
            ))
        }
        if ps.is_empty() {
            return None;
        }
        build(&ps, 0)
    }
}

impl QuasiHopfAlgebra {
    pub fn new(parts: QuasiHopfParts) -> Result<QuasiHopfAlgebra> {
        let field = parts.field;
        let n = parts.basis.len();
        if n == 0 {
            return Err(Error::shape("algebra of dimension 0"));
        }
        let shape = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::shape(format!(
                    "{what} has the wrong shape for dimension {n}"
                )))
            }
        };
        shape(
            parts.mult.base_dim() == n && parts.mult.order() == 3,
            "mult",
        )?;
        shape(parts.unit.len() == n, "unit")?;
        shape(
            parts.delta.rows() == n * n && parts.delta.cols() == n,
            "delta",
        )?;
        shape(
            parts.counit.rows() == 1 && parts.counit.cols() == n,
            "counit",
        )?;
        shape(parts.phi.base_dim() == n && parts.phi.order() == 3, "phi")?;
        shape(
            parts.antipode.rows() == n && parts.antipode.cols() == n,
            "S",
        )?;
        shape(parts.alpha.len() == n, "alpha")?;
        shape(parts.beta.len() == n, "beta")?;
        if let Some(t) = &parts.phi_inv {
            shape(t.base_dim() == n && t.order() == 3, "phi_inv")?;
        }
        if let Some(m) = &parts.antipode_inv {
            shape(m.rows() == n && m.cols() == n, "S_inv")?;
        }
        let fields_ok = parts.mult.field() == field
            && parts.delta.field() == field
            && parts.counit.field() == field
            && parts.phi.field() == field
            && parts.antipode.field() == field
            && parts
                .unit
                .iter()
                .chain(&parts.alpha)
                .chain(&parts.beta)
                .all(|s| s.field() == field);
        if !fields_ok {
            return Err(Error::shape("structure data over mixed fields"));
        }

        let products = product_table(&parts.mult);
        let left = (0..n)
            .map(|i| Matrix::from_fn(field, n, n, |l, j| parts.mult.get(&[i, j, l]).clone()))
            .collect();
        let right = (0..n)
            .map(|j| Matrix::from_fn(field, n, n, |l, i| parts.mult.get(&[i, j, l]).clone()))
            .collect();
        let s2 = parts.antipode.mul(&parts.antipode)?;
        let algebra = Algebra {
            field,
            basis: parts.basis,
            mult: parts.mult,
            unit: parts.unit,
        };
        let mut h = QuasiHopfAlgebra {
            qb: QuasiBialgebra {
                algebra,
                delta: parts.delta,
                counit: parts.counit,
                phi: parts.phi,
                phi_inv: Tensor::zeros(field, n, 3),
            },
            antipode_inv: Matrix::zeros(field, n, n),
            antipode: parts.antipode,
            alpha: parts.alpha,
            beta: parts.beta,
            phi_inv_supplied: parts.phi_inv.is_some(),
            cache: Cache {
                products,
                left,
                right,
                s2,
            },
        };
        // Non-invertible data leaves zero placeholders, which the
        // invertibility checks in `validate` then report.
        h.qb.phi_inv = match parts.phi_inv {
            Some(t) => t,
            None => h
                .invert_k(&h.qb.phi)
                .unwrap_or_else(|_| Tensor::zeros(field, n, 3)),
        };
        h.antipode_inv = match parts.antipode_inv {
            Some(m) => m,
            None => h
                .antipode
                .inverse()
                .unwrap_or_else(|_| Matrix::zeros(field, n, n)),
        };
        Ok(h)
    }

    pub fn parts(&self) -> QuasiHopfParts {
        QuasiHopfParts {
            field: self.field(),
            basis: self.qb.algebra.basis.clone(),
            mult: self.qb.algebra.mult.clone(),
            unit: self.qb.algebra.unit.clone(),
            delta: self.qb.delta.clone(),
            counit: self.qb.counit.clone(),
            phi: self.qb.phi.clone(),
            phi_inv: Some(self.qb.phi_inv.clone()),
            antipode: self.antipode.clone(),
            antipode_inv: Some(self.antipode_inv.clone()),
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
        }
    }

    pub fn into_arc(self) -> Arc<QuasiHopfAlgebra> {
        Arc::new(self)
    }

    pub fn dim(&self) -> usize {
        self.qb.algebra.basis.len()
    }

    pub fn field(&self) -> Field {
        self.qb.algebra.field
    }

    pub fn basis_names(&self) -> &[String] {
        &self.qb.algebra.basis
    }

    pub fn mult_tensor(&self) -> &Tensor {
        &self.qb.algebra.mult
    }

    pub fn delta(&self) -> &Matrix {
        &self.qb.delta
    }

    pub fn counit(&self) -> &Matrix {
        &self.qb.counit
    }

    pub fn phi(&self) -> &Tensor {
        &self.qb.phi
    }

    pub fn phi_inv(&self) -> &Tensor {
        &self.qb.phi_inv
    }

    pub fn s2(&self) -> &Matrix {
        &self.cache.s2
    }

    pub fn one(&self) -> Elem {
        self.qb.algebra.unit.clone()
    }

    pub fn zero(&self) -> Elem {
        vec![self.field().zero(); self.dim()]
    }

    pub fn basis_elem(&self, i: usize) -> Elem {
        let mut e = self.zero();
        e[i] = self.field().one();
        e
    }

    /// Whether `Φ = 1⊗1⊗1` exactly.
    pub fn phi_is_trivial(&self) -> bool {
        self.qb.phi == self.unit_k(3)
    }

    /// Hopf case: trivial associator and `α = β = 1`.
    pub fn is_hopf(&self) -> bool {
        let one = self.one();
        self.phi_is_trivial() && self.alpha == one && self.beta == one
    }

    /// Matrix of left multiplication by `e_i`.
    pub fn left_mult(&self, i: usize) -> &Matrix {
        &self.cache.left[i]
    }

    /// Matrix of right multiplication by `e_j`.
    pub fn right_mult(&self, j: usize) -> &Matrix {
        &self.cache.right[j]
    }

    pub fn left_mult_by(&self, a: &[Scalar]) -> Matrix {
        self.combine(a, &self.cache.left)
    }

    pub fn right_mult_by(&self, a: &[Scalar]) -> Matrix {
        self.combine(a, &self.cache.right)
    }

    fn combine(&self, a: &[Scalar], mats: &[Matrix]) -> Matrix {
        let n = self.dim();
        let mut out = Matrix::zeros(self.field(), n, n);
        for (c, m) in a.iter().zip(mats) {
            out.add_scaled(c, m);
        }
        out
    }

    /// Products `e_i·e_j` as sparse coefficient lists.
    pub(crate) fn product_terms(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.cache.products[i * self.dim() + j]
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Elem {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (l, c) in self.product_terms(i, j) {
                    out[*l].add_product(&xy, c);
                }
            }
        }
        out
    }

    /// Product of several elements, left to right.
    pub fn mul_all(&self, factors: &[&[Scalar]]) -> Elem {
        factors.iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    pub fn coproduct(&self, a: &[Scalar]) -> Tensor {
        let v = self.qb.delta.apply(a);
        Tensor::from_coeffs(self.field(), self.dim(), 2, v).expect("coproduct shape")
    }

    pub fn antipode_of(&self, a: &[Scalar]) -> Elem {
        self.antipode.apply(a)
    }

    pub fn antipode_inv_of(&self, a: &[Scalar]) -> Elem {
        self.antipode_inv.apply(a)
    }

    pub fn s2_of(&self, a: &[Scalar]) -> Elem {
        self.cache.s2.apply(a)
    }

    pub fn counit_of(&self, a: &[Scalar]) -> Scalar {
        self.qb.counit.apply(a).pop().expect("counit is 1 x n")
    }

    /// Applies the chosen parenthesized composite of coproducts to `a`.
    pub fn iterated_coproduct(&self, a: &[Scalar], tree: &Bracketing) -> Tensor {
        let t = Tensor::from_vector(self.field(), a.to_vec());
        self.expand_slot(t, 0, tree)
    }

    /// Replaces `slot` of `t` by the leaves of `tree` via repeated `Δ`.
    pub fn expand_slot(&self, t: Tensor, slot: usize, tree: &Bracketing) -> Tensor {
        match tree {
            Bracketing::Leaf => t,
            Bracketing::Node(l, r) => {
                let t = t
                    .slot_apply_arity(&self.qb.delta, slot, 2)
                    .expect("delta slot");
                let t = self.expand_slot(t, slot, l);
                self.expand_slot(t, slot + l.leaves(), r)
            }
        }
    }

    /// `1⊗…⊗1` with `k` factors.
    pub fn unit_k(&self, k: usize) -> Tensor {
        let u = Tensor::from_vector(self.field(), self.one());
        let mut t = Tensor::from_coeffs(self.field(), self.dim(), 0, vec![self.field().one()])
            .expect("scalar");
        for _ in 0..k {
            t = t.kron(&u).expect("same base");
        }
        t
    }

    /// Slot-wise product in `H^{⊗k}`.
    pub fn mul_k(&self, x: &Tensor, y: &Tensor) -> Tensor {
        x.slot_multiply(y, self.mult_tensor()).expect("same shape")
    }

    /// Inverse of an invertible element of `H^{⊗k}` via one linear solve.
    pub fn invert_k(&self, x: &Tensor) -> Result<Tensor> {
        let n = self.dim();
        let k = x.order();
        let size = n.pow(k as u32);
        // Column j = x · (basis element j).
        let cols: Vec<Elem> = (0..size)
            .map(|j| {
                let b = Tensor::basis(self.field(), n, &unflat(n, k, j));
                self.mul_k(x, &b).into_coeffs()
            })
            .collect();
        let lx = Matrix::from_columns(self.field(), size, &cols)?;
        let one = Matrix::column_vector(self.field(), self.unit_k(k).into_coeffs());
        match lx.solve(&one)? {
            Some(sol) if sol.kernel.cols() == 0 => {
                Tensor::from_coeffs(self.field(), n, k, sol.particular.column(0))
            }
            _ => Err(Error::Singular),
        }
    }

    /// Sum over the nonzero coefficients of `Φ` (or `Φ⁻¹`) as `(c, x, y, z)`.
    pub fn phi_terms(&self, inverse: bool) -> Vec<(Scalar, usize, usize, usize)> {
        let t = if inverse {
            &self.qb.phi_inv
        } else {
            &self.qb.phi
        };
        t.nonzeros()
            .map(|(idx, c)| (c.clone(), idx[0], idx[1], idx[2]))
            .collect()
    }

    /// Nonzero terms of `Δ(e_i)` as `(c, a, b)`.
    pub fn delta_terms(&self, i: usize) -> Vec<(Scalar, usize, usize)> {
        let n = self.dim();
        (0..n * n)
            .filter_map(|ab| {
                let c = self.qb.delta.get(ab, i);
                (!c.is_zero()).then(|| (c.clone(), ab / n, ab % n))
            })
            .collect()
    }

    /// Matrix of `S` composed with itself `k` times.
    pub fn antipode_power(&self, k: u32) -> Matrix {
        let mut m = Matrix::identity(self.field(), self.dim());
        for _ in 0..k {
            m = self.antipode.mul(&m).expect("square");
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracketing_paths() {
        assert_eq!(Bracketing::right_comb3().paths(), ["1", "21", "22"]);
        assert_eq!(Bracketing::left_comb3().paths(), ["11", "12", "2"]);
        assert_eq!(
            Bracketing::from_paths(&["22", "1", "21"]),
            Some(Bracketing::right_comb3())
        );
        assert_eq!(Bracketing::from_paths(&[""]), Some(Bracketing::Leaf));
        assert_eq!(Bracketing::from_paths(&["1", "3"]), None);
        assert_eq!(Bracketing::from_paths(&["1"]), None);
        assert_eq!(Bracketing::from_paths(&["1", "1", "2"]), None);
        assert_eq!(Bracketing::from_paths(&["1", "12", "2"]), None);
    }
}
