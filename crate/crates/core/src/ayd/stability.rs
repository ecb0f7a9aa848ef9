//! Stability of a Type I structure.
//!
//! The composite `Hom_H(M⊗H, k) → Hom_H(H^#⊗M, k) → Hom_H(M⊗H, k)`,
//! `f ↦ ι⁻¹(f∘τ_H)`, is computed on a basis of intertwiners. Checking at
//! `V = H` is enough: every `τ_V` is obtained from `τ_H` by naturality, so
//! the composite at any `V` factors through the one at `H`.

use crate::ayd::{check_type_i, Ayd, AydTypeI};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::repcat::{self, coordinates, Iota, Module};

pub fn stability_composite(t: &AydTypeI) -> Result<Matrix> {
    let report = check_type_i(t);
    if !report.all_passed() {
        let failed: Vec<_> = report.failures().map(|i| i.name.as_str()).collect();
        return Err(Error::Precondition(format!(
            "stability needs a valid Type I structure; failing: {}",
            failed.join(", ")
        )));
    }
    let m = &t.module;
    let reg = Module::regular(m.algebra());
    let tau_h = t.tau_matrix(&reg)?;
    let iota = Iota::new(m, &reg)?;
    let field = m.algebra().field();
    let mut cols = Vec::with_capacity(iota.domain.len());
    for f in &iota.domain {
        let back = iota.apply_inverse(&f.mul(&tau_h)?)?;
        cols.push(coordinates(&iota.domain, &back)?);
    }
    Matrix::from_columns(field, iota.domain.len(), &cols)
}

pub fn stability_check(t: &AydTypeI) -> Result<bool> {
    Ok(stability_composite(t)?.is_identity())
}

/// `σ(m) = m⟨1⟩·m⟨0⟩`; only meaningful when `Φ` is trivial.
pub fn sigma_hopf(t: &AydTypeI) -> Result<Matrix> {
    let m = &t.module;
    let h = m.algebra();
    if !h.phi_is_trivial() {
        return Err(Error::Precondition(
            "sigma is only defined for trivial Phi".into(),
        ));
    }
    let (n, d) = (h.dim(), m.dim());
    let mut sigma = Matrix::zeros(h.field(), d, d);
    for mm in 0..d {
        for m0 in 0..d {
            for hh in 0..n {
                let c = t.rho.get(m0 * n + hh, mm);
                if c.is_zero() {
                    continue;
                }
                for r in 0..d {
                    sigma
                        .entry_mut(r, mm)
                        .add_product(c, m.action()[hh].get(r, m0));
                }
            }
        }
    }
    Ok(sigma)
}

/// The object `1◀M = Hom^r(M, k)` with the transpose of `τ_H`.
#[derive(Clone, Debug)]
pub struct DualData {
    pub module: Module,
    pub tau_h: Matrix,
    pub tau_dual: Matrix,
}

impl DualData {
    pub fn tau_rank(&self) -> usize {
        self.tau_h.rank()
    }

    pub fn dual_rank(&self) -> usize {
        self.tau_dual.rank()
    }

    pub fn tau_invertible(&self) -> bool {
        self.tau_rank() == self.tau_h.rows()
    }

    pub fn dual_invertible(&self) -> bool {
        self.dual_rank() == self.tau_dual.rows()
    }
}

pub fn d_apply(t: &AydTypeI) -> Result<DualData> {
    let m = &t.module;
    let reg = Module::regular(m.algebra());
    let tau_h = t.tau_matrix(&reg)?;
    dual_of(m, tau_h)
}

/// Dual data for an arbitrary `τ_H`, e.g. an artificial rank-deficient one.
pub fn dual_of(m: &Module, tau_h: Matrix) -> Result<DualData> {
    let module = repcat::hom_r(m, &Module::unit(m.algebra()))?;
    let tau_dual = tau_h.transpose();
    Ok(DualData {
        module,
        tau_h,
        tau_dual,
    })
}
