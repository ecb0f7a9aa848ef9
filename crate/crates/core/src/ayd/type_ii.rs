use crate::algebra::{Bracketing, QuasiHopfAlgebra};
use crate::ayd::{
    check_coaction_shape, counit_leg, first_column_difference, quasi_comodule_sides, Ayd,
    HalfBraiding,
};
use crate::checks::compare;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::repcat::{self, Module, ModuleMap};
use crate::report::{CheckItem, CheckReport, Witness};
use crate::tensor::Tensor;

/// A module with `λ: m ↦ m[0]⊗m[1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AydTypeII {
    pub module: Module,
    pub lambda: Matrix,
}

impl AydTypeII {
    pub fn new(module: Module, lambda: Matrix) -> Result<AydTypeII> {
        check_coaction_shape(&module, &lambda, "lambda")?;
        Ok(AydTypeII { module, lambda })
    }
}

impl Ayd for AydTypeII {
    fn module(&self) -> &Module {
        &self.module
    }

    fn tau_matrix(&self, v: &Module) -> Result<Matrix> {
        let xs = twist_actions(&self.module, v)?;
        Ok(tau_from_twists(&self.module, &self.lambda, v.dim(), &xs))
    }
}

/// `M⊗H` with `x·(m⊗h) = x²¹m⊗x²²hS(x¹)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RTensorModule {
    pub base: Module,
    pub module: Module,
}

impl RTensorModule {
    pub fn new(m: &Module) -> Result<RTensorModule> {
        let h = m.algebra();
        let tree = Bracketing::right_comb3();
        let action = (0..h.dim())
            .map(|i| {
                let t = h.iterated_coproduct(&h.basis_elem(i), &tree);
                let mut acc = Matrix::zeros(h.field(), m.dim() * h.dim(), m.dim() * h.dim());
                for (idx, c) in t.nonzeros() {
                    let right = h.right_mult_by(&h.antipode_of(&h.basis_elem(idx[0])));
                    let on_h = h.left_mult(idx[2]).mul(&right).expect("square");
                    acc.add_scaled(c, &m.action()[idx[1]].kron(&on_h).expect("field"));
                }
                acc
            })
            .collect();
        Ok(RTensorModule {
            base: m.clone(),
            module: Module::new(h.clone(), action)?,
        })
    }
}

/// `K(h) = Σ R¹⊗R²·e_h·S(Q)S(α)S²(P)` over `Φ⁻¹ = P⊗Q⊗R`, one per basis `h`.
fn twist_elements(h: &QuasiHopfAlgebra) -> Vec<Tensor> {
    let n = h.dim();
    let field = h.field();
    let s_alpha = h.antipode_of(&h.alpha);
    let mut out = vec![Tensor::zeros(field, n, 2); n];
    for (c, p, q, r) in h.phi_terms(true) {
        let kappa = h.mul_all(&[
            &h.antipode_of(&h.basis_elem(q)),
            &s_alpha,
            &h.s2_of(&h.basis_elem(p)),
        ]);
        for (c2, a, b) in h.delta_terms(r) {
            let coeff = &c * &c2;
            for (h1, k) in out.iter_mut().enumerate() {
                let second = h.mul_all(&[&h.basis_elem(b), &h.basis_elem(h1), &kappa]);
                for (l, s) in second.iter().enumerate() {
                    if !s.is_zero() {
                        k.add_at(&[a, l], &(&coeff * s));
                    }
                }
            }
        }
    }
    out
}

/// Action matrices of `K(h)` on `M⊗V`.
fn twist_actions(m: &Module, v: &Module) -> Result<Vec<Matrix>> {
    if v.algebra().dim() != m.algebra().dim() {
        return Err(Error::shape("module over a different algebra"));
    }
    Ok(twist_elements(m.algebra())
        .iter()
        .map(|k| repcat::act_tensor(k, &[m, v]))
        .collect())
}

/// `τ_V(v⊗m) = Σ λ[(m₀,h),m] · K(h)·(e_{m₀}⊗v)`.
fn tau_from_twists(m: &Module, lambda: &Matrix, dv: usize, xs: &[Matrix]) -> Matrix {
    let h = m.algebra();
    let (n, d) = (h.dim(), m.dim());
    let mut tau = Matrix::zeros(h.field(), d * dv, dv * d);
    for mm in 0..d {
        for m0 in 0..d {
            for (h1, x) in xs.iter().enumerate() {
                let c = lambda.get(m0 * n + h1, mm);
                if c.is_zero() {
                    continue;
                }
                for v in 0..dv {
                    for row in 0..d * dv {
                        let e = x.get(row, m0 * dv + v);
                        if !e.is_zero() {
                            tau.entry_mut(row, v * d + mm).add_product(c, e);
                        }
                    }
                }
            }
        }
    }
    tau
}

/// `τ_V(v⊗m) = R¹m[0]⊗R²m[1]S(Q)S(α)S²(P)v`.
pub fn tau_from_lambda(t: &AydTypeII, v: &Module) -> Result<ModuleMap> {
    crate::ayd::tau_map(t, v)
}

/// The unique `λ` whose `τ_H` is `b.tau_h`, by solving the linear system.
pub fn lambda_from_tau(b: &HalfBraiding) -> Result<AydTypeII> {
    let m = &b.module;
    let h = m.algebra();
    let field = h.field();
    let (n, d) = (h.dim(), m.dim());
    let reg = Module::regular(h);
    let xs = twist_actions(m, &reg)?;
    // Rows (m', v', v), columns (m₀, h₁).
    let a = Matrix::from_fn(field, d * n * n, d * n, |row, col| {
        let (mv, v) = (row / n, row % n);
        let (m0, h1) = (col / n, col % n);
        xs[h1].get(mv, m0 * n + v).clone()
    });
    let rhs = Matrix::from_fn(field, d * n * n, d, |row, mm| {
        let (mv, v) = (row / n, row % n);
        b.tau_h.get(mv, v * d + mm).clone()
    });
    let sol = a.solve(&rhs)?.ok_or_else(|| {
        Error::Inconsistent("tau_H is not the half-braiding of any lambda".into())
    })?;
    if sol.kernel.cols() != 0 {
        return Err(Error::InvalidAlgebra(
            "lambda is not determined by tau_H".into(),
        ));
    }
    AydTypeII::new(m.clone(), sol.particular)
}

/// `λ∘h` and `h·λ` in `M⊗ʳH` for `h = e_i`.
pub(crate) fn ayd_module_ii_sides(t: &AydTypeII, r: &RTensorModule, i: usize) -> (Matrix, Matrix) {
    let lhs = t.lambda.mul(&t.module.action()[i]).expect("shape");
    let rhs = r.module.action()[i].mul(&t.lambda).expect("shape");
    (lhs, rhs)
}

/// The three defining conditions: `λ` is H-linear into `M⊗ʳH`, the hexagon
/// at `V = W = H` on `1⊗1⊗m`, and `ε(α)(Id⊗ε)λ = Id`.
pub fn check_type_ii(t: &AydTypeII) -> CheckReport {
    let m = &t.module;
    let h = m.algebra();
    let linear = match RTensorModule::new(m) {
        Ok(r) => (0..h.dim()).find_map(|i| {
            let (lhs, rhs) = ayd_module_ii_sides(t, &r, i);
            compare(vec![i], lhs.entries(), rhs.entries())
        }),
        Err(e) => Some(Witness::note(vec![], e.to_string())),
    };
    let hexagon = match quasi_comodule_sides(t) {
        Ok((top, bottom)) => first_column_difference(&top, &bottom),
        Err(e) => Some(Witness::note(vec![], e.to_string())),
    };
    let unit = counit_leg(m, &t.lambda).scale(&h.counit_of(&h.alpha));
    let unit = compare(vec![], unit.entries(), m.identity().entries());
    CheckReport::new(vec![
        CheckItem::from_witness("aYD-module-II", linear),
        CheckItem::from_witness("quasi-comodule-II", hexagon),
        CheckItem::from_witness("comodule-unit-II", unit),
    ])
}
