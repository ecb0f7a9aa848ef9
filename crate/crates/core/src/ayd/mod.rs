//! Anti-Yetter-Drinfeld modules of Type I (coaction `ρ`) and Type II
//! (coaction `λ`), and the half-braidings `τ_V: V^#⊗M → M⊗V` they encode.
//!
//! Both coactions are `(d·n) × d` matrices; row `m'·n + h` of column `m` is
//! the coefficient of `e_{m'}⊗e_h`. A half-braiding is determined by its
//! value at the regular module, since `τ_V(v⊗m) = (Id⊗r_v)τ_H(1⊗m)` for the
//! orbit map `r_v: h ↦ hv`.

mod stability;
mod type_i;
mod type_ii;

use crate::checks::compare;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::repcat::{self, Module, ModuleMap};
use crate::report::Witness;

pub use stability::{d_apply, dual_of, sigma_hopf, stability_check, stability_composite, DualData};
pub(crate) use type_i::ayd_module_sides as type_i_sides;
pub use type_i::{check_type_i, rho_from_tau, tau_at_unit, tau_from_rho, AydTypeI};
pub(crate) use type_ii::ayd_module_ii_sides as type_ii_sides;
pub use type_ii::{check_type_ii, lambda_from_tau, tau_from_lambda, AydTypeII, RTensorModule};

/// Either presentation, exposing its half-braiding.
pub trait Ayd {
    fn module(&self) -> &Module;

    /// `τ_V` as a `(d·d_V) × (d_V·d)` matrix, without precondition checks.
    fn tau_matrix(&self, v: &Module) -> Result<Matrix>;
}

/// The value `τ_H` of a half-braiding at the regular module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfBraiding {
    pub module: Module,
    pub tau_h: Matrix,
}

impl HalfBraiding {
    pub fn new(module: Module, tau_h: Matrix) -> Result<HalfBraiding> {
        let dn = module.dim() * module.algebra().dim();
        if tau_h.rows() != dn || tau_h.cols() != dn {
            return Err(Error::shape(format!("tau_H must be {dn} x {dn}")));
        }
        Ok(HalfBraiding { module, tau_h })
    }

    pub fn from_type_i(t: &AydTypeI) -> Result<HalfBraiding> {
        let h = Module::regular(t.module.algebra());
        HalfBraiding::new(t.module.clone(), t.tau_matrix(&h)?)
    }

    pub fn from_type_ii(t: &AydTypeII) -> Result<HalfBraiding> {
        let h = Module::regular(t.module.algebra());
        HalfBraiding::new(t.module.clone(), t.tau_matrix(&h)?)
    }

    /// `τ_H(1⊗m)` for every basis `m`, as a `(d·n) × d` matrix.
    pub fn at_unit(&self) -> Matrix {
        let h = self.module.algebra();
        let one = Matrix::column_vector(h.field(), h.one());
        let inject = one.kron(&self.module.identity()).expect("field");
        self.tau_h.mul(&inject).expect("shape")
    }

    /// `τ_V` reconstructed by naturality from `τ_H`.
    pub fn instantiate(&self, v: &Module) -> Result<Matrix> {
        let rho = self.at_unit();
        type_i::tau_raw(&self.module, &rho, v)
    }

    pub fn is_h_linear(&self) -> bool {
        let h = Module::regular(self.module.algebra());
        is_tau_linear(&self.module, &self.tau_h, &h).unwrap_or(false)
    }
}

/// Whether `tau` is H-linear as a map `V^#⊗M → M⊗V`.
pub fn is_tau_linear(m: &Module, tau: &Matrix, v: &Module) -> Result<bool> {
    let source = repcat::tensor(&repcat::sharp(v), m)?;
    let target = repcat::tensor(m, v)?;
    Ok(repcat::is_module_morphism(tau, &source, &target))
}

/// `τ_V` packaged as a module map.
pub fn tau_map(t: &impl Ayd, v: &Module) -> Result<ModuleMap> {
    let m = t.module();
    let source = repcat::tensor(&repcat::sharp(v), m)?;
    let target = repcat::tensor(m, v)?;
    ModuleMap::new(source, target, t.tau_matrix(v)?)
}

/// The two composites of the hexagon as maps `V⊗W⊗M → M⊗V⊗W` on flat
/// spaces: `(τ_V⊗Id)∘Φ⁻¹_{V^#,M,W}∘(Id⊗τ_W)` and
/// `Φ⁻¹_{M,V,W}∘τ_{V⊗W}∘Φ⁻¹_{V^#,W^#,M}`.
pub fn hexagon_sides(t: &impl Ayd, v: &Module, w: &Module) -> Result<(Matrix, Matrix)> {
    let m = t.module();
    let h = m.algebra();
    let (vs, ws) = (repcat::sharp(v), repcat::sharp(w));
    let phi_inv = h.phi_inv();

    let tau_w = t.tau_matrix(w)?;
    let tau_v = t.tau_matrix(v)?;
    let top = v.identity().kron(&tau_w)?;
    let top = repcat::act_tensor(phi_inv, &[&vs, m, w]).mul(&top)?;
    let top = tau_v.kron(&w.identity())?.mul(&top)?;

    let vw = repcat::tensor(v, w)?;
    let tau_vw = t.tau_matrix(&vw)?;
    let bottom = tau_vw.mul(&repcat::act_tensor(phi_inv, &[&vs, &ws, m]))?;
    let bottom = repcat::act_tensor(phi_inv, &[m, v, w]).mul(&bottom)?;
    Ok((top, bottom))
}

pub fn hexagon_witness(t: &impl Ayd, v: &Module, w: &Module) -> Result<Option<Witness>> {
    let (top, bottom) = hexagon_sides(t, v, w)?;
    Ok(first_column_difference(&top, &bottom))
}

pub fn hexagon_check(t: &impl Ayd, v: &Module, w: &Module) -> Result<bool> {
    Ok(hexagon_witness(t, v, w)?.is_none())
}

/// The hexagon at `V = W = H` applied to `1⊗1⊗m`: two `(d·n²) × d`
/// matrices whose equality is the quasi-coassociativity condition.
pub fn quasi_comodule_sides(t: &impl Ayd) -> Result<(Matrix, Matrix)> {
    let m = t.module();
    let h = m.algebra();
    let reg = Module::regular(h);
    let (top, bottom) = hexagon_sides(t, &reg, &reg)?;
    let one = Matrix::column_vector(h.field(), h.one());
    let inject = one.kron(&one)?.kron(&m.identity())?;
    Ok((top.mul(&inject)?, bottom.mul(&inject)?))
}

/// `(Id_M⊗u)∘τ_V = τ_W∘(u⊗Id_M)` for an H-linear `u: V → W`.
pub fn naturality_check(t: &impl Ayd, u: &ModuleMap) -> Result<bool> {
    let m = t.module();
    let lhs = m
        .identity()
        .kron(&u.matrix)?
        .mul(&t.tau_matrix(&u.source)?)?;
    let rhs = t
        .tau_matrix(&u.target)?
        .mul(&u.matrix.kron(&m.identity())?)?;
    Ok(lhs == rhs)
}

/// Type I to Type II through the common half-braiding value `τ_H`.
pub fn to_type_ii(t: &AydTypeI) -> Result<AydTypeII> {
    lambda_from_tau(&HalfBraiding::from_type_i(t)?)
}

/// Type II to Type I: `ρ(m) = τ_H(1⊗m)`.
pub fn to_type_i(t: &AydTypeII) -> Result<AydTypeI> {
    rho_from_tau(&HalfBraiding::from_type_ii(t)?)
}

/// Whether an H-linear `f: M → M'` intertwines coactions `c` on `M` and
/// `c'` on `M'`: `c'∘f = (f⊗Id)∘c`.
pub fn intertwines_coactions(m: &Module, c: &Matrix, m2: &Module, c2: &Matrix, f: &Matrix) -> bool {
    let id = Matrix::identity(m.algebra().field(), m.algebra().dim());
    let lhs = c2.mul(f);
    let rhs = f.kron(&id).and_then(|k| k.mul(c));
    repcat::is_module_morphism(f, m, m2) && matches!((lhs, rhs), (Ok(l), Ok(r)) if l == r)
}

/// Compares two matrices column by column; the witness index is the column.
pub(crate) fn first_column_difference(lhs: &Matrix, rhs: &Matrix) -> Option<Witness> {
    (0..lhs.cols()).find_map(|j| compare(vec![j], &lhs.column(j), &rhs.column(j)))
}

fn check_coaction_shape(m: &Module, map: &Matrix, what: &str) -> Result<()> {
    let d = m.dim();
    let n = m.algebra().dim();
    if map.rows() != d * n || map.cols() != d {
        return Err(Error::shape(format!(
            "{what} must be {} x {d}, got {} x {}",
            d * n,
            map.rows(),
            map.cols()
        )));
    }
    if map.field() != m.algebra().field() {
        return Err(Error::FieldMismatch(m.algebra().field(), map.field()));
    }
    Ok(())
}

/// `(Id⊗ε)∘c` for a coaction-shaped matrix `c`.
pub(crate) fn counit_leg(m: &Module, c: &Matrix) -> Matrix {
    let eps = m.algebra().counit();
    m.identity()
        .kron(eps)
        .expect("field")
        .mul(c)
        .expect("shape")
}
