//! Axiom checks for quasi-bialgebras and quasi-Hopf algebras.
//!
//! Every check compares two exact elements and, on failure, records the first
//! offending basis multi-index together with both sides.

use crate::algebra::{Bracketing, Elem, QuasiHopfAlgebra};
use crate::report::{CheckItem, CheckReport, Witness};
use crate::scalar::Scalar;
use crate::tensor::{unflat, Tensor};

/// Vectors longer than this are reported only at the offending coefficient.
const FULL_WITNESS_LEN: usize = 64;

pub(crate) fn compare(basis_idx: Vec<usize>, lhs: &[Scalar], rhs: &[Scalar]) -> Option<Witness> {
    let pos = lhs.iter().zip(rhs).position(|(a, b)| a != b)?;
    Some(diff_witness(basis_idx, pos, lhs, rhs))
}

fn diff_witness(mut basis_idx: Vec<usize>, pos: usize, lhs: &[Scalar], rhs: &[Scalar]) -> Witness {
    if lhs.len() <= FULL_WITNESS_LEN {
        let mut w = Witness::new(basis_idx, lhs, rhs);
        w.note = format!("first difference at coefficient {pos}");
        w
    } else {
        basis_idx.push(pos);
        let mut w = Witness::new(basis_idx, &lhs[pos..=pos], &rhs[pos..=pos]);
        w.note = format!("coefficient {pos} of {}", lhs.len());
        w
    }
}

pub(crate) fn compare_tensors(
    basis_idx: Vec<usize>,
    lhs: &Tensor,
    rhs: &Tensor,
) -> Option<Witness> {
    let pos = lhs
        .coeffs()
        .iter()
        .zip(rhs.coeffs())
        .position(|(a, b)| a != b)?;
    let mut w = diff_witness(basis_idx, pos, lhs.coeffs(), rhs.coeffs());
    let slots = unflat(lhs.base_dim(), lhs.order(), pos);
    w.note = format!("{}; tensor slot indices {slots:?}", w.note);
    Some(w)
}

impl QuasiHopfAlgebra {
    /// Runs every structural check.
    pub fn validate(&self) -> CheckReport {
        let mut items = vec![
            self.check_associativity(),
            self.check_unit(),
            self.check_delta_hom(),
            self.check_counit_hom(),
            self.check_phi_invertible(),
            self.check_quasi_coassoc(),
            self.check_pentagon(),
            self.check_counit(),
            self.check_phi_counit(),
            self.check_anti_automorphism(),
        ];
        items.extend(self.check_antipode());
        CheckReport::new(items)
    }

    pub fn check_associativity(&self) -> CheckItem {
        let n = self.dim();
        let witness = (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |l| (i, j, l))))
            .find_map(|(i, j, l)| {
                let (ei, ej, el) = (self.basis_elem(i), self.basis_elem(j), self.basis_elem(l));
                let lhs = self.mul(&self.mul(&ei, &ej), &el);
                let rhs = self.mul(&ei, &self.mul(&ej, &el));
                compare(vec![i, j, l], &lhs, &rhs)
            });
        CheckItem::from_witness("associativity", witness)
    }

    pub fn check_unit(&self) -> CheckItem {
        let one = self.one();
        let witness = (0..self.dim()).find_map(|i| {
            let e = self.basis_elem(i);
            compare(vec![i], &self.mul(&one, &e), &e)
                .or_else(|| compare(vec![i], &self.mul(&e, &one), &e))
        });
        CheckItem::from_witness("unit", witness)
    }

    pub fn check_delta_hom(&self) -> CheckItem {
        let n = self.dim();
        let unit = compare_tensors(vec![], &self.coproduct(&self.one()), &self.unit_k(2));
        let witness = unit.or_else(|| {
            (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .find_map(|(i, j)| {
                    let (ei, ej) = (self.basis_elem(i), self.basis_elem(j));
                    let lhs = self.coproduct(&self.mul(&ei, &ej));
                    let rhs = self.mul_k(&self.coproduct(&ei), &self.coproduct(&ej));
                    compare_tensors(vec![i, j], &lhs, &rhs)
                })
        });
        CheckItem::from_witness("delta-hom", witness)
    }

    pub fn check_counit_hom(&self) -> CheckItem {
        let n = self.dim();
        let one = self.field().one();
        let unit = compare(vec![], &[self.counit_of(&self.one())], &[one]);
        let witness = unit.or_else(|| {
            (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .find_map(|(i, j)| {
                    let (ei, ej) = (self.basis_elem(i), self.basis_elem(j));
                    let lhs = self.counit_of(&self.mul(&ei, &ej));
                    let rhs = &self.counit_of(&ei) * &self.counit_of(&ej);
                    compare(vec![i, j], &[lhs], &[rhs])
                })
        });
        CheckItem::from_witness("counit-hom", witness)
    }

    /// `Φ·Φ⁻¹ = Φ⁻¹·Φ = 1⊗1⊗1`; a supplied `Φ⁻¹` is also compared with the
    /// recomputed inverse.
    pub fn check_phi_invertible(&self) -> CheckItem {
        let one = self.unit_k(3);
        let mut witness = compare_tensors(vec![0], &self.mul_k(self.phi(), self.phi_inv()), &one)
            .or_else(|| compare_tensors(vec![1], &self.mul_k(self.phi_inv(), self.phi()), &one));
        if witness.is_none() && self.phi_inv_supplied {
            witness = match self.invert_k(self.phi()) {
                Ok(inv) => compare_tensors(vec![2], self.phi_inv(), &inv),
                Err(e) => Some(Witness::note(vec![2], e.to_string())),
            };
        }
        CheckItem::from_witness("phi-invertible", witness)
    }

    /// `(Id⊗Δ)Δ(a) = Φ·(Δ⊗Id)Δ(a)·Φ⁻¹` on every basis element.
    pub fn check_quasi_coassoc(&self) -> CheckItem {
        let witness = (0..self.dim()).find_map(|i| {
            let (lhs, rhs) = self.coassoc_sides(&self.basis_elem(i));
            compare_tensors(vec![i], &lhs, &rhs)
        });
        CheckItem::from_witness("coassoc", witness)
    }

    pub(crate) fn coassoc_sides(&self, a: &[Scalar]) -> (Tensor, Tensor) {
        let lhs = self.iterated_coproduct(a, &Bracketing::right_comb3());
        let inner = self.iterated_coproduct(a, &Bracketing::left_comb3());
        let rhs = self.mul_k(&self.mul_k(self.phi(), &inner), self.phi_inv());
        (lhs, rhs)
    }

    /// The pentagon identity for `Φ` in `H^{⊗4}`.
    pub fn check_pentagon(&self) -> CheckItem {
        let (lhs, rhs) = self.pentagon_sides();
        CheckItem::from_witness("pentagon", compare_tensors(vec![], &lhs, &rhs))
    }

    pub(crate) fn pentagon_sides(&self) -> (Tensor, Tensor) {
        let phi = self.phi();
        let delta = self.delta();
        let one = Tensor::from_vector(self.field(), self.one());
        let id_id_delta = phi.slot_apply_arity(delta, 2, 2).expect("slot");
        let delta_id_id = phi.slot_apply_arity(delta, 0, 2).expect("slot");
        let id_delta_id = phi.slot_apply_arity(delta, 1, 2).expect("slot");
        let one_phi = one.kron(phi).expect("kron");
        let phi_one = phi.kron(&one).expect("kron");
        let lhs = self.mul_k(&id_id_delta, &delta_id_id);
        let rhs = self.mul_k(&self.mul_k(&one_phi, &id_delta_id), &phi_one);
        (lhs, rhs)
    }

    /// `(ε⊗Id)Δ(a) = a = (Id⊗ε)Δ(a)`.
    pub fn check_counit(&self) -> CheckItem {
        let witness = (0..self.dim()).find_map(|i| {
            let e = self.basis_elem(i);
            let d = self.coproduct(&e);
            let left = d
                .slot_apply_arity(self.counit(), 0, 0)
                .expect("slot")
                .into_coeffs();
            let right = d
                .slot_apply_arity(self.counit(), 1, 0)
                .expect("slot")
                .into_coeffs();
            compare(vec![i], &left, &e).or_else(|| compare(vec![i], &right, &e))
        });
        CheckItem::from_witness("counit", witness)
    }

    /// `(Id⊗ε⊗Id)(Φ) = 1⊗1`.
    pub fn check_phi_counit(&self) -> CheckItem {
        let lhs = self
            .phi()
            .slot_apply_arity(self.counit(), 1, 0)
            .expect("slot");
        CheckItem::from_witness("phi-counit", compare_tensors(vec![], &lhs, &self.unit_k(2)))
    }

    /// `S(ab) = S(b)S(a)`, `S(1) = 1`, and `S⁻¹` is a two-sided inverse.
    pub fn check_anti_automorphism(&self) -> CheckItem {
        let n = self.dim();
        let one = self.one();
        let mut witness = compare(vec![], &self.antipode_of(&one), &one);
        if witness.is_none() {
            witness = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .find_map(|(i, j)| {
                    let (ei, ej) = (self.basis_elem(i), self.basis_elem(j));
                    let lhs = self.antipode_of(&self.mul(&ei, &ej));
                    let rhs = self.mul(&self.antipode_of(&ej), &self.antipode_of(&ei));
                    compare(vec![i, j], &lhs, &rhs)
                });
        }
        if witness.is_none() {
            let id = crate::matrix::Matrix::identity(self.field(), n);
            let a = self.antipode.mul(&self.antipode_inv).expect("square");
            let b = self.antipode_inv.mul(&self.antipode).expect("square");
            witness = compare(vec![0], a.entries(), id.entries())
                .or_else(|| compare(vec![1], b.entries(), id.entries()));
            if let Some(w) = &mut witness {
                w.note = format!("S and S_inv are not inverse: {}", w.note);
            }
        }
        CheckItem::from_witness("anti-automorphism", witness)
    }

    /// The four antipode identities, one item each.
    pub fn check_antipode(&self) -> Vec<CheckItem> {
        let n = self.dim();
        let alpha_item = (0..n).find_map(|i| {
            let (lhs, rhs) = self.antipode_alpha_sides(i);
            compare(vec![i], &lhs, &rhs)
        });
        let beta_item = (0..n).find_map(|i| {
            let (lhs, rhs) = self.antipode_beta_sides(i);
            compare(vec![i], &lhs, &rhs)
        });
        let one = self.one();
        let phi_item = compare(vec![], &self.antipode_phi_lhs(), &one);
        let phi_inv_item = compare(vec![], &self.antipode_phi_inv_lhs(), &one);
        vec![
            CheckItem::from_witness("antipode-alpha", alpha_item),
            CheckItem::from_witness("antipode-beta", beta_item),
            CheckItem::from_witness("antipode-phi", phi_item),
            CheckItem::from_witness("antipode-phi-inv", phi_inv_item),
        ]
    }

    /// `S(h¹)αh²` and `ε(h)α` for `h = e_i`.
    pub(crate) fn antipode_alpha_sides(&self, i: usize) -> (Elem, Elem) {
        let mut lhs = self.zero();
        for (c, a, b) in self.delta_terms(i) {
            let t = self.mul_all(&[
                &self.antipode_of(&self.basis_elem(a)),
                &self.alpha,
                &self.basis_elem(b),
            ]);
            add_scaled(&mut lhs, &c, &t);
        }
        let eps = self.counit_of(&self.basis_elem(i));
        let rhs = self.alpha.iter().map(|x| x * &eps).collect();
        (lhs, rhs)
    }

    /// `h¹βS(h²)` and `ε(h)β` for `h = e_i`.
    pub(crate) fn antipode_beta_sides(&self, i: usize) -> (Elem, Elem) {
        let mut lhs = self.zero();
        for (c, a, b) in self.delta_terms(i) {
            let t = self.mul_all(&[
                &self.basis_elem(a),
                &self.beta,
                &self.antipode_of(&self.basis_elem(b)),
            ]);
            add_scaled(&mut lhs, &c, &t);
        }
        let eps = self.counit_of(&self.basis_elem(i));
        let rhs = self.beta.iter().map(|x| x * &eps).collect();
        (lhs, rhs)
    }

    /// `XβS(Y)αZ`.
    pub fn antipode_phi_lhs(&self) -> Elem {
        let mut out = self.zero();
        for (c, x, y, z) in self.phi_terms(false) {
            let t = self.mul_all(&[
                &self.basis_elem(x),
                &self.beta,
                &self.antipode_of(&self.basis_elem(y)),
                &self.alpha,
                &self.basis_elem(z),
            ]);
            add_scaled(&mut out, &c, &t);
        }
        out
    }

    /// `S(P)αQβS(R)`.
    pub fn antipode_phi_inv_lhs(&self) -> Elem {
        let mut out = self.zero();
        for (c, p, q, r) in self.phi_terms(true) {
            let t = self.mul_all(&[
                &self.antipode_of(&self.basis_elem(p)),
                &self.alpha,
                &self.basis_elem(q),
                &self.beta,
                &self.antipode_of(&self.basis_elem(r)),
            ]);
            add_scaled(&mut out, &c, &t);
        }
        out
    }
}

pub(crate) fn add_scaled(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            a.add_product(c, b);
        }
    }
}
