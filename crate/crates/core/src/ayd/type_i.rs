use crate::ayd::{
    check_coaction_shape, counit_leg, first_column_difference, quasi_comodule_sides, Ayd,
    HalfBraiding,
};
use crate::checks::compare;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::repcat::{Module, ModuleMap};
use crate::report::{CheckItem, CheckReport, Witness};

/// A module with `ρ: m ↦ m⟨0⟩⊗m⟨1⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AydTypeI {
    pub module: Module,
    pub rho: Matrix,
}

impl AydTypeI {
    pub fn new(module: Module, rho: Matrix) -> Result<AydTypeI> {
        check_coaction_shape(&module, &rho, "rho")?;
        Ok(AydTypeI { module, rho })
    }
}

impl Ayd for AydTypeI {
    fn module(&self) -> &Module {
        &self.module
    }

    fn tau_matrix(&self, v: &Module) -> Result<Matrix> {
        tau_raw(&self.module, &self.rho, v)
    }
}

/// `τ_V(v⊗m) = m⟨0⟩⊗m⟨1⟩v`.
pub(crate) fn tau_raw(m: &Module, rho: &Matrix, v: &Module) -> Result<Matrix> {
    let h = m.algebra();
    let (n, d, dv) = (h.dim(), m.dim(), v.dim());
    if v.algebra().dim() != n {
        return Err(Error::shape("module over a different algebra"));
    }
    let mut tau = Matrix::zeros(h.field(), d * dv, dv * d);
    for mm in 0..d {
        for m0 in 0..d {
            for hh in 0..n {
                let c = rho.get(m0 * n + hh, mm);
                if c.is_zero() {
                    continue;
                }
                let act = &v.action()[hh];
                for v1 in 0..dv {
                    for v0 in 0..dv {
                        let a = act.get(v1, v0);
                        if !a.is_zero() {
                            tau.entry_mut(m0 * dv + v1, v0 * d + mm).add_product(c, a);
                        }
                    }
                }
            }
        }
    }
    Ok(tau)
}

/// `τ_V` for a Type I structure; requires the (aYD-module) condition.
pub fn tau_from_rho(t: &AydTypeI, v: &Module) -> Result<ModuleMap> {
    if let Some(w) = ayd_module_witness(t) {
        return Err(Error::Precondition(format!(
            "rho is not a module map in the aYD sense (basis element {:?})",
            w.indices
        )));
    }
    crate::ayd::tau_map(t, v)
}

/// `ρ(m) = τ_H(1⊗m)`.
pub fn rho_from_tau(b: &HalfBraiding) -> Result<AydTypeI> {
    AydTypeI::new(b.module.clone(), b.at_unit())
}

/// Both sides of `h¹m⟨0⟩⊗h²m⟨1⟩ = (h²m)⟨0⟩⊗(h²m)⟨1⟩S²(h¹)` for `h = e_i`,
/// as `(d·n) × d` matrices.
pub(crate) fn ayd_module_sides(t: &AydTypeI, i: usize) -> (Matrix, Matrix) {
    let m = &t.module;
    let h = m.algebra();
    let field = h.field();
    let (n, d) = (h.dim(), m.dim());
    let mut lhs = Matrix::zeros(field, d * n, d * n);
    let mut rhs = Matrix::zeros(field, d * n, d);
    for (c, a, b) in h.delta_terms(i) {
        lhs.add_scaled(&c, &m.action()[a].kron(h.left_mult(b)).expect("field"));
        let right = h.right_mult_by(&h.s2_of(&h.basis_elem(a)));
        let r = m.identity().kron(&right).expect("field");
        let r = r
            .mul(&t.rho)
            .expect("shape")
            .mul(&m.action()[b])
            .expect("shape");
        rhs.add_scaled(&c, &r);
    }
    (lhs.mul(&t.rho).expect("shape"), rhs)
}

pub(crate) fn ayd_module_witness(t: &AydTypeI) -> Option<Witness> {
    (0..t.module.algebra().dim()).find_map(|i| {
        let (lhs, rhs) = ayd_module_sides(t, i);
        compare(vec![i], lhs.entries(), rhs.entries())
    })
}

/// The three defining conditions: (aYD-module) for every basis `h`, the
/// hexagon at `V = W = H` on `1⊗1⊗m`, and `(Id⊗ε)ρ = Id`.
pub fn check_type_i(t: &AydTypeI) -> CheckReport {
    let m = &t.module;
    let hexagon = match quasi_comodule_sides(t) {
        Ok((top, bottom)) => first_column_difference(&top, &bottom),
        Err(e) => Some(Witness::note(vec![], e.to_string())),
    };
    let unit = compare(
        vec![],
        counit_leg(m, &t.rho).entries(),
        m.identity().entries(),
    );
    CheckReport::new(vec![
        CheckItem::from_witness("aYD-module", ayd_module_witness(t)),
        CheckItem::from_witness("quasi-comodule", hexagon),
        CheckItem::from_witness("comodule-unit", unit),
    ])
}

/// `τ_V` instantiated on the unit module; equals the identity on valid data.
pub fn tau_at_unit(t: &AydTypeI) -> Result<Matrix> {
    t.tau_matrix(&Module::unit(t.module.algebra()))
}
