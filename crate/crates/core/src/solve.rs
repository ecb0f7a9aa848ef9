//! Finding aYD structures on a fixed module.
//!
//! The (aYD-module) and unit conditions are affine in the coaction, so their
//! common solution set is computed exactly. Over a prime field that affine
//! space is then enumerated and filtered by the quadratic hexagon condition.

use rayon::prelude::*;

use crate::ayd::{self, Ayd, AydTypeI, AydTypeII, RTensorModule};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::repcat::Module;
use crate::report::CheckReport;
use crate::scalar::{Field, Scalar};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Reads `QHAYD_BUDGET`, falling back to [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u64 {
    std::env::var("QHAYD_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// Coactions `particular + kernel·c`, flattened row-major from `(d·n) × d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolutionSpace {
    pub rows: usize,
    pub cols: usize,
    pub particular: Matrix,
    pub kernel: Matrix,
}

impl LinearSolutionSpace {
    pub fn ambient(&self) -> usize {
        self.rows * self.cols
    }

    pub fn dim(&self) -> usize {
        self.kernel.cols()
    }

    /// The coaction with coordinates `c` in the kernel basis.
    pub fn point(&self, c: &[Scalar]) -> Matrix {
        let mut v = self.particular.column(0);
        for (j, cj) in c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            for (i, vi) in v.iter_mut().enumerate() {
                vi.add_product(cj, self.kernel.get(i, j));
            }
        }
        Matrix::from_vec(self.particular.field(), self.rows, self.cols, v).expect("shape")
    }

    pub fn contains(&self, map: &Matrix) -> bool {
        let field = map.field();
        let diff: Vec<Scalar> = map
            .entries()
            .iter()
            .zip(self.particular.column(0))
            .map(|(a, b)| a - &b)
            .collect();
        if self.kernel.cols() == 0 {
            return diff.iter().all(Scalar::is_zero);
        }
        matches!(
            self.kernel.solve(&Matrix::column_vector(field, diff)),
            Ok(Some(_))
        )
    }
}

/// Solves `residual(x) = 0` for an affine `residual` on `(rows × cols)` matrices.
fn affine_space(
    field: Field,
    rows: usize,
    cols: usize,
    residual: impl Fn(&Matrix) -> Vec<Scalar> + Sync,
) -> Result<Option<LinearSolutionSpace>> {
    let ambient = rows * cols;
    let zero = Matrix::zeros(field, rows, cols);
    let base = residual(&zero);
    let columns: Vec<Vec<Scalar>> = (0..ambient)
        .into_par_iter()
        .map(|k| {
            let mut x = zero.clone();
            x.set(k / cols, k % cols, field.one());
            residual(&x).iter().zip(&base).map(|(a, b)| a - b).collect()
        })
        .collect();
    let system = Matrix::from_columns(field, base.len(), &columns)?;
    let rhs = Matrix::column_vector(field, base.iter().map(|b| -b).collect());
    Ok(system.solve(&rhs)?.map(|sol| LinearSolutionSpace {
        rows,
        cols,
        particular: sol.particular,
        kernel: sol.kernel,
    }))
}

fn flatten_difference(out: &mut Vec<Scalar>, lhs: &Matrix, rhs: &Matrix) {
    out.extend(lhs.entries().iter().zip(rhs.entries()).map(|(a, b)| a - b));
}

/// All `ρ` satisfying (aYD-module) and `(Id⊗ε)ρ = Id`; `None` when empty.
pub fn linear_space_type_i(m: &Module) -> Result<Option<LinearSolutionSpace>> {
    let h = m.algebra();
    let (n, d) = (h.dim(), m.dim());
    affine_space(h.field(), d * n, d, |rho| {
        let t = AydTypeI::new(m.clone(), rho.clone()).expect("shape");
        let mut out = Vec::new();
        for i in 0..n {
            let (lhs, rhs) = ayd::type_i_sides(&t, i);
            flatten_difference(&mut out, &lhs, &rhs);
        }
        flatten_difference(&mut out, &ayd::counit_leg(m, rho), &m.identity());
        out
    })
}

/// All `λ` that are H-linear into `M⊗ʳH` with `ε(α)(Id⊗ε)λ = Id`.
pub fn linear_space_type_ii(m: &Module) -> Result<Option<LinearSolutionSpace>> {
    let h = m.algebra();
    let (n, d) = (h.dim(), m.dim());
    let r = RTensorModule::new(m)?;
    let eps_alpha = h.counit_of(&h.alpha);
    affine_space(h.field(), d * n, d, |lambda| {
        let t = AydTypeII::new(m.clone(), lambda.clone()).expect("shape");
        let mut out = Vec::new();
        for i in 0..n {
            let (lhs, rhs) = ayd::type_ii_sides(&t, &r, i);
            flatten_difference(&mut out, &lhs, &rhs);
        }
        let unit = ayd::counit_leg(m, lambda).scale(&eps_alpha);
        flatten_difference(&mut out, &unit, &m.identity());
        out
    })
}

pub fn check_candidate(m: &Module, rho: &Matrix) -> Result<CheckReport> {
    Ok(ayd::check_type_i(&AydTypeI::new(m.clone(), rho.clone())?))
}

pub fn check_candidate_ii(m: &Module, lambda: &Matrix) -> Result<CheckReport> {
    Ok(ayd::check_type_ii(&AydTypeII::new(
        m.clone(),
        lambda.clone(),
    )?))
}

fn satisfies_hexagon(t: &impl Ayd) -> bool {
    matches!(ayd::quasi_comodule_sides(t), Ok((top, bottom)) if top == bottom)
}

/// Every point of the affine space over `F_p`, in lexicographic order of
/// kernel coordinates, kept when `keep` holds.
fn enumerate_space(
    space: &LinearSolutionSpace,
    budget: u64,
    keep: impl Fn(&Matrix) -> bool + Sync,
) -> Result<Vec<Matrix>> {
    let field = space.particular.field();
    let p = match field {
        Field::Prime { p } => p,
        Field::Rational => {
            return Err(Error::Precondition(
                "enumeration needs a prime field".into(),
            ))
        }
    };
    let e = space.dim();
    let total = (p as u128).checked_pow(e as u32);
    let total = match total {
        Some(t) if t <= budget as u128 => t as u64,
        _ => {
            return Err(Error::BudgetExceeded {
                dim: e,
                candidates: format!("{p}^{e}"),
                budget,
            })
        }
    };
    let mut points: Vec<Matrix> = (0..total)
        .into_par_iter()
        .filter_map(|k| {
            let mut coords = vec![field.zero(); e];
            let mut rest = k;
            for c in coords.iter_mut().rev() {
                *c = field.from_i64((rest % p) as i64);
                rest /= p;
            }
            let x = space.point(&coords);
            keep(&x).then_some(x)
        })
        .collect();
    points.dedup();
    Ok(points)
}

/// All Type I structures on `m` over a prime field.
pub fn enumerate_ayd_i(m: &Module, budget: u64) -> Result<Vec<AydTypeI>> {
    let Some(space) = linear_space_type_i(m)? else {
        return Ok(Vec::new());
    };
    let points = enumerate_space(&space, budget, |rho| {
        satisfies_hexagon(&AydTypeI::new(m.clone(), rho.clone()).expect("shape"))
    })?;
    points
        .into_iter()
        .map(|rho| AydTypeI::new(m.clone(), rho))
        .collect()
}

/// All Type II structures on `m` over a prime field.
pub fn enumerate_ayd_ii(m: &Module, budget: u64) -> Result<Vec<AydTypeII>> {
    let Some(space) = linear_space_type_ii(m)? else {
        return Ok(Vec::new());
    };
    let points = enumerate_space(&space, budget, |lambda| {
        satisfies_hexagon(&AydTypeII::new(m.clone(), lambda.clone()).expect("shape"))
    })?;
    points
        .into_iter()
        .map(|lambda| AydTypeII::new(m.clone(), lambda))
        .collect()
}
