//! Built-in algebras, modules and aYD-modules used as fixtures and examples.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Elem, QuasiHopfAlgebra, QuasiHopfParts};
use crate::ayd::AydTypeI;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::repcat::Module;
use crate::scalar::{Field, Scalar};
use crate::tensor::Tensor;

/// Multiplication table of `ℤ/n` (identity 0).
pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect()
}

/// Multiplication table of `S₃` on the permutations of `{0,1,2}` in
/// lexicographic order (identity first).
pub fn s3_table() -> Vec<Vec<usize>> {
    let perms = s3_perms();
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("permutation");
    perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| index([a[b[0]], a[b[1]], a[b[2]]]))
                .collect()
        })
        .collect()
}

fn s3_perms() -> Vec<[usize; 3]> {
    vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ]
}

/// The group algebra `k[G]` from a Cayley table, with `Δ(g) = g⊗g`,
/// `S(g) = g⁻¹`, trivial `Φ` and `α = β = 1`.
pub fn group_algebra(
    table: &[Vec<usize>],
    names: Option<Vec<String>>,
    field: Field,
) -> Result<QuasiHopfAlgebra> {
    let n = table.len();
    if n == 0
        || table
            .iter()
            .any(|row| row.len() != n || row.iter().any(|&x| x >= n))
    {
        return Err(Error::InvalidAlgebra(
            "Cayley table must be n x n with entries below n".into(),
        ));
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
        .ok_or_else(|| Error::InvalidAlgebra("Cayley table has no identity".into()))?;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::InvalidAlgebra(format!(
                        "table is not associative at ({a},{b},{c})"
                    )));
                }
            }
        }
    }
    let inverse = (0..n)
        .map(|g| {
            (0..n)
                .find(|&h| table[g][h] == e)
                .ok_or_else(|| Error::InvalidAlgebra(format!("element {g} has no inverse")))
        })
        .collect::<Result<Vec<_>>>()?;
    let basis = match names {
        Some(v) if v.len() == n => v,
        Some(_) => return Err(Error::shape("one name per group element")),
        None => (0..n).map(|g| format!("g{g}")).collect(),
    };
    let mut mult = Tensor::zeros(field, n, 3);
    let mut delta = Matrix::zeros(field, n * n, n);
    let mut antipode = Matrix::zeros(field, n, n);
    for a in 0..n {
        for b in 0..n {
            mult.set(&[a, b, table[a][b]], field.one());
        }
        delta.set(a * n + a, a, field.one());
        antipode.set(inverse[a], a, field.one());
    }
    let unit = unit_vec(field, n, e);
    QuasiHopfAlgebra::new(QuasiHopfParts {
        field,
        basis,
        mult,
        unit: unit.clone(),
        delta,
        counit: Matrix::from_fn(field, 1, n, |_, _| field.one()),
        phi: Tensor::basis(field, n, &[e, e, e]),
        phi_inv: None,
        antipode,
        antipode_inv: None,
        alpha: unit.clone(),
        beta: unit,
    })
}

pub fn kz2(field: Field) -> QuasiHopfAlgebra {
    group_algebra(&cyclic_table(2), Some(vec!["1".into(), "g".into()]), field).expect("Z/2")
}

pub fn kz3(field: Field) -> QuasiHopfAlgebra {
    let names = vec!["1".into(), "g".into(), "g2".into()];
    group_algebra(&cyclic_table(3), Some(names), field).expect("Z/3")
}

pub fn ks3(field: Field) -> QuasiHopfAlgebra {
    let names = ["e", "(12)", "(01)", "(012)", "(021)", "(02)"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    group_algebra(&s3_table(), Some(names), field).expect("S3")
}

fn unit_vec(field: Field, n: usize, i: usize) -> Elem {
    (0..n)
        .map(|j| if j == i { field.one() } else { field.zero() })
        .collect()
}

/// Sweedler's four-dimensional Hopf algebra on the basis `1, g, x, gx`.
pub fn sweedler_h4(field: Field) -> Result<QuasiHopfAlgebra> {
    if field.characteristic() == 2 {
        return Err(Error::InvalidAlgebra(
            "H4 needs characteristic different from 2".into(),
        ));
    }
    let n = 4;
    // e_{a+2b} = g^a x^b.
    let mut mult = Tensor::zeros(field, n, 3);
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (i % 2, i / 2);
            let (c, d) = (j % 2, j / 2);
            if b + d >= 2 {
                continue;
            }
            let sign = if b * c == 1 { -1 } else { 1 };
            mult.set(&[i, j, (a + c) % 2 + 2 * (b + d)], field.from_i64(sign));
        }
    }
    let mut delta = Matrix::zeros(field, n * n, n);
    let one = field.one();
    for (col, terms) in [
        (0, vec![(0, 0)]),
        (1, vec![(1, 1)]),
        (2, vec![(2, 0), (1, 2)]),
        (3, vec![(3, 1), (0, 3)]),
    ] {
        for (a, b) in terms {
            delta.set(a * n + b, col, one.clone());
        }
    }
    let mut antipode = Matrix::zeros(field, n, n);
    antipode.set(0, 0, one.clone());
    antipode.set(1, 1, one.clone());
    antipode.set(3, 2, field.from_i64(-1));
    antipode.set(2, 3, one.clone());
    let unit = unit_vec(field, n, 0);
    QuasiHopfAlgebra::new(QuasiHopfParts {
        field,
        basis: ["1", "g", "x", "gx"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        mult,
        unit: unit.clone(),
        delta,
        counit: Matrix::from_i64(field, &[&[1, 1, 0, 0]]),
        phi: Tensor::basis(field, n, &[0, 0, 0]),
        phi_inv: None,
        antipode,
        antipode_inv: None,
        alpha: unit.clone(),
        beta: unit,
    })
}

/// `ω(i,j,k) = ζ^{i·⌊(j+k)/n⌋}` for a primitive `n`-th root of unity `ζ`.
pub fn cyclic_cocycle(n: usize, zeta: &Scalar) -> Result<Vec<Scalar>> {
    let field = zeta.field();
    if !zeta.pow(n as u64).is_one() || (1..n).any(|k| zeta.pow(k as u64).is_one()) {
        return Err(Error::InvalidAlgebra(format!(
            "{zeta} is not a primitive {n}-th root of unity"
        )));
    }
    let mut out = vec![field.one(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out[(i * n + j) * n + k] = zeta.pow((i * ((j + k) / n)) as u64);
            }
        }
    }
    Ok(out)
}

/// Checks normalization and the 3-cocycle identity for `ω` on `ℤ/n`
/// (table indexed by `(i·n + j)·n + k`).
pub fn check_cocycle(n: usize, omega: &[Scalar]) -> Result<()> {
    if omega.len() != n * n * n {
        return Err(Error::shape("cocycle table must have n^3 entries"));
    }
    let w = |a: usize, b: usize, c: usize| &omega[(a * n + b) * n + c];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if w(a, b, c).is_zero() {
                    return Err(Error::InvalidAlgebra(format!(
                        "cocycle vanishes at ({a},{b},{c})"
                    )));
                }
                if (a == 0 || b == 0 || c == 0) && !w(a, b, c).is_one() {
                    return Err(Error::InvalidAlgebra(format!(
                        "cocycle is not normalized at ({a},{b},{c})"
                    )));
                }
                for d in 0..n {
                    let lhs = w(b, c, d) * w(a, (b + c) % n, d);
                    let lhs = &lhs * w(a, b, c);
                    let rhs = w((a + b) % n, c, d) * w(a, b, (c + d) % n);
                    if lhs != rhs {
                        return Err(Error::InvalidAlgebra(format!(
                            "cocycle identity fails at ({a},{b},{c},{d})"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// The dual group algebra `k^{ℤ/n}` twisted by a 3-cocycle: basis of
/// idempotents `e_i`, `Φ = Σ ω(i,j,k)⁻¹ e_i⊗e_j⊗e_k`, `S(e_i) = e_{−i}`.
/// `α` and `β` are solved for, first with `β = 1` and then with `α = 1`.
pub fn dual_group_cocycle(n: usize, omega: &[Scalar], field: Field) -> Result<QuasiHopfAlgebra> {
    check_cocycle(n, omega)?;
    if omega.iter().any(|s| s.field() != field) {
        return Err(Error::FieldMismatch(field, omega[0].field()));
    }
    let mut mult = Tensor::zeros(field, n, 3);
    let mut delta = Matrix::zeros(field, n * n, n);
    let mut antipode = Matrix::zeros(field, n, n);
    let mut phi = Tensor::zeros(field, n, 3);
    let mut phi_inv = Tensor::zeros(field, n, 3);
    for i in 0..n {
        mult.set(&[i, i, i], field.one());
        antipode.set((n - i) % n, i, field.one());
        for j in 0..n {
            delta.set(j * n + (i + n - j) % n, i, field.one());
            for k in 0..n {
                let w = &omega[(i * n + j) * n + k];
                phi.set(&[i, j, k], w.inv().expect("nonzero"));
                phi_inv.set(&[i, j, k], w.clone());
            }
        }
    }
    let one: Elem = vec![field.one(); n];
    let basis = (0..n).map(|i| format!("e{i}")).collect();
    let h = QuasiHopfAlgebra::new(QuasiHopfParts {
        field,
        basis,
        mult,
        unit: one.clone(),
        delta,
        counit: Matrix::from_fn(
            field,
            1,
            n,
            |_, j| if j == 0 { field.one() } else { field.zero() },
        ),
        phi,
        phi_inv: Some(phi_inv),
        antipode,
        antipode_inv: None,
        alpha: one.clone(),
        beta: one,
    })?;
    solve_alpha_beta(h)
}

/// Residuals of the four antipode identities, concatenated.
fn antipode_residual(h: &QuasiHopfAlgebra) -> Vec<Scalar> {
    let n = h.dim();
    let mut out = Vec::new();
    for i in 0..n {
        let (l, r) = h.antipode_alpha_sides(i);
        out.extend(l.iter().zip(&r).map(|(a, b)| a - b));
        let (l, r) = h.antipode_beta_sides(i);
        out.extend(l.iter().zip(&r).map(|(a, b)| a - b));
    }
    let one = h.one();
    for lhs in [h.antipode_phi_lhs(), h.antipode_phi_inv_lhs()] {
        out.extend(lhs.iter().zip(&one).map(|(a, b)| a - b));
    }
    out
}

/// The residual is affine in `α` for fixed `β` and vice versa.
fn solve_alpha_beta(h: QuasiHopfAlgebra) -> Result<QuasiHopfAlgebra> {
    for fix_beta in [true, false] {
        let set = |h: &mut QuasiHopfAlgebra, v: Elem| {
            if fix_beta {
                h.alpha = v
            } else {
                h.beta = v
            }
        };
        let field = h.field();
        let n = h.dim();
        let mut probe = h.clone();
        probe.alpha = h.one();
        probe.beta = h.one();
        set(&mut probe, h.zero());
        let base = antipode_residual(&probe);
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|j| {
                set(&mut probe, h.basis_elem(j));
                antipode_residual(&probe)
                    .iter()
                    .zip(&base)
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        let system = Matrix::from_columns(field, base.len(), &cols)?;
        let rhs = Matrix::column_vector(field, base.iter().map(|b| -b).collect());
        if let Some(sol) = system.solve(&rhs)? {
            set(&mut probe, sol.particular.column(0));
            return Ok(probe);
        }
    }
    Err(Error::InvalidAlgebra(
        "no alpha, beta satisfy the antipode identities".into(),
    ))
}

/// `k^{ℤ/2}` with `ω(i,j,k) = (−1)^{ijk}`.
pub fn dual_z2_sign(field: Field) -> Result<QuasiHopfAlgebra> {
    let omega = cyclic_cocycle(2, &field.from_i64(-1))?;
    dual_group_cocycle(2, &omega, field)
}

/// `k^{ℤ/3}` over `F₇` with `ω(i,j,k) = 2^{i⌊(j+k)/3⌋}`.
pub fn dual_z3_f7() -> QuasiHopfAlgebra {
    let field = Field::prime(7).expect("prime");
    let omega = cyclic_cocycle(3, &field.from_i64(2)).expect("2 has order 3 mod 7");
    dual_group_cocycle(3, &omega, field).expect("valid cocycle")
}

/// Names accepted by [`algebra_by_name`].
pub const ALGEBRAS: &[&str] = &["kz2", "kz3", "ks3", "h4", "kz2_omega", "kz3_omega"];

pub fn algebra_by_name(name: &str, field: Field) -> Result<Arc<QuasiHopfAlgebra>> {
    let h = match name {
        "kz2" => kz2(field),
        "kz3" => kz3(field),
        "ks3" => ks3(field),
        "h4" => sweedler_h4(field)?,
        "kz2_omega" => dual_z2_sign(field)?,
        "kz3_omega" => {
            if field != Field::prime(7)? {
                return Err(Error::InvalidAlgebra(
                    "kz3_omega is defined over F7 only".into(),
                ));
            }
            dual_z3_f7()
        }
        _ => return Err(Error::Parse(format!("unknown zoo algebra `{name}`"))),
    };
    Ok(Arc::new(h))
}

/// A one-dimensional module with coaction `m ↦ m⊗c` for an element `c`.
pub fn one_dim_ayd(module: Module, c: &[Scalar]) -> Result<AydTypeI> {
    if module.dim() != 1 {
        return Err(Error::shape("one_dim_ayd needs a one-dimensional module"));
    }
    let field = module.algebra().field();
    let rho = Matrix::column_vector(field, c.to_vec());
    AydTypeI::new(module, rho)
}

/// `k[ℤ/2]`, trivial module, `ρ(m) = m⊗1`. Stable.
pub fn ayd_kz2_trivial(field: Field) -> AydTypeI {
    let h = Arc::new(kz2(field));
    one_dim_ayd(Module::unit(&h), &h.one()).expect("1-dim")
}

/// `k[ℤ/2]`, sign character, `ρ(m) = m⊗g`. Unstable: `σ = −Id`.
pub fn ayd_kz2_sign(field: Field) -> AydTypeI {
    let h = Arc::new(kz2(field));
    let m = Module::character(&h, &[field.one(), field.from_i64(-1)]).expect("character");
    one_dim_ayd(m, &h.basis_elem(1)).expect("1-dim")
}

/// `H₄`, trivial module, `ρ(m) = m⊗g`. Stable.
pub fn ayd_h4_kg(field: Field) -> Result<AydTypeI> {
    let h = Arc::new(sweedler_h4(field)?);
    one_dim_ayd(Module::unit(&h), &h.basis_elem(1))
}

/// `H₄`, character `χ(g) = −1`, `ρ(m) = m⊗g`. Fails the (aYD-module)
/// condition at `h = x`; kept as a negative fixture.
pub fn h4_sign_with_g(field: Field) -> Result<AydTypeI> {
    let h = Arc::new(sweedler_h4(field)?);
    let m = Module::character(&h, &h4_sign_character(field))?;
    one_dim_ayd(m, &h.basis_elem(1))
}

/// `χ(1) = 1, χ(g) = −1, χ(x) = χ(gx) = 0`.
pub fn h4_sign_character(field: Field) -> Vec<Scalar> {
    vec![field.one(), field.from_i64(-1), field.zero(), field.zero()]
}

/// One-dimensional test modules: the unit, the sign character of `k[ℤ/2]`
/// and `H₄`, and the point evaluations of a dual group algebra.
pub fn characters(h: &Arc<QuasiHopfAlgebra>) -> Vec<Module> {
    let field = h.field();
    let n = h.dim();
    let mut out = vec![Module::unit(h)];
    if h.is_hopf() && h.basis_names().first().map(String::as_str) == Some("1") {
        match h.basis_names().get(1).map(String::as_str) {
            Some("g") if n == 2 => out
                .push(Module::character(h, &[field.one(), field.from_i64(-1)]).expect("character")),
            Some("g") if n == 4 => {
                out.push(Module::character(h, &h4_sign_character(field)).expect("character"))
            }
            _ => {}
        }
    }
    // Idempotent basis of a dual group algebra: χ_j(e_i) = δ_ij.
    if h.basis_names().first().map(String::as_str) == Some("e0") {
        out = (0..n)
            .map(|j| Module::character(h, &h.basis_elem(j)).expect("character"))
            .collect();
    }
    out
}

/// `k^{ℤ/2}_ω` over `F₃`, trivial module, `ρ(m) = m⊗(e0 − e1)`. One of the
/// two Type I points the solver finds on the unit module; stable.
pub fn ayd_kz2_omega_unit() -> AydTypeI {
    let field = Field::prime(3).expect("prime");
    let h = Arc::new(dual_z2_sign(field).expect("valid cocycle"));
    let c = vec![field.one(), field.from_i64(-1)];
    one_dim_ayd(Module::unit(&h), &c).expect("1-dim")
}

/// A bundled aYD-module with its pinned stability verdict.
#[derive(Clone, Debug)]
pub struct BundledAyd {
    pub name: &'static str,
    pub algebra: &'static str,
    pub ayd: AydTypeI,
    pub stable: bool,
}

pub fn bundled_ayds() -> Vec<BundledAyd> {
    let q = Field::Rational;
    vec![
        BundledAyd {
            name: "kz2_trivial",
            algebra: "kz2",
            ayd: ayd_kz2_trivial(q),
            stable: true,
        },
        BundledAyd {
            name: "kz2_sign",
            algebra: "kz2",
            ayd: ayd_kz2_sign(q),
            stable: false,
        },
        BundledAyd {
            name: "h4_kg",
            algebra: "h4",
            ayd: ayd_h4_kg(q).expect("char 0"),
            stable: true,
        },
        BundledAyd {
            name: "kz2_omega_unit",
            algebra: "kz2_omega",
            ayd: ayd_kz2_omega_unit(),
            stable: true,
        },
    ]
}

/// The field each zoo algebra is listed over.
pub fn default_field(name: &str) -> Field {
    match name {
        "kz3_omega" => Field::prime(7).expect("prime"),
        _ => Field::Rational,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraEntry {
    pub name: String,
    pub field: Field,
    pub dim: usize,
    pub basis: Vec<String>,
    pub hopf: bool,
    pub checks_passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AydEntry {
    pub name: String,
    pub algebra: String,
    pub field: Field,
    pub module_dim: usize,
    pub checks_passed: bool,
    pub stable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub algebras: Vec<AlgebraEntry>,
    pub ayds: Vec<AydEntry>,
}

/// Every zoo algebra and bundled aYD-module with freshly computed verdicts.
pub fn manifest() -> Result<Manifest> {
    let mut algebras = Vec::new();
    for name in ALGEBRAS {
        let field = default_field(name);
        let h = algebra_by_name(name, field)?;
        algebras.push(AlgebraEntry {
            name: name.to_string(),
            field,
            dim: h.dim(),
            basis: h.basis_names().to_vec(),
            hopf: h.is_hopf(),
            checks_passed: h.validate().all_passed(),
        });
    }
    let mut ayds = Vec::new();
    for b in bundled_ayds() {
        ayds.push(AydEntry {
            name: b.name.to_string(),
            algebra: b.algebra.to_string(),
            field: b.ayd.module.algebra().field(),
            module_dim: b.ayd.module.dim(),
            checks_passed: crate::ayd::check_type_i(&b.ayd).all_passed(),
            stable: crate::ayd::stability_check(&b.ayd)?,
        });
    }
    Ok(Manifest { algebras, ayds })
}
