//! Elements of `V^{⊗k}` for a fixed base dimension, stored densely.
//!
//! Flat index convention: `flat(i₁,…,i_k) = Σ_j i_j · n^(k−j)`, i.e. the
//! leftmost slot is the most significant digit.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor {
    base_dim: usize,
    order: usize,
    field: Field,
    coeffs: Vec<Scalar>,
}

pub fn flat(n: usize, idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &i| acc * n + i)
}

pub fn unflat(n: usize, order: usize, mut f: usize) -> Vec<usize> {
    let mut idx = vec![0; order];
    for slot in (0..order).rev() {
        idx[slot] = f % n;
        f /= n;
    }
    idx
}

impl Tensor {
    pub fn zeros(field: Field, base_dim: usize, order: usize) -> Tensor {
        Tensor {
            base_dim,
            order,
            field,
            coeffs: vec![field.zero(); base_dim.pow(order as u32)],
        }
    }

    pub fn from_coeffs(
        field: Field,
        base_dim: usize,
        order: usize,
        coeffs: Vec<Scalar>,
    ) -> Result<Tensor> {
        if coeffs.len() != base_dim.pow(order as u32) {
            return Err(Error::shape(format!(
                "{} coefficients for an order-{order} tensor over dimension {base_dim}",
                coeffs.len()
            )));
        }
        if let Some(s) = coeffs.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field, s.field()));
        }
        Ok(Tensor {
            base_dim,
            order,
            field,
            coeffs,
        })
    }

    /// A vector viewed as an order-1 tensor.
    pub fn from_vector(field: Field, v: Vec<Scalar>) -> Tensor {
        let n = v.len();
        Tensor::from_coeffs(field, n, 1, v).expect("vector")
    }

    /// The pure tensor `e_{i₁}⊗…⊗e_{i_k}`.
    pub fn basis(field: Field, base_dim: usize, idx: &[usize]) -> Tensor {
        let mut t = Tensor::zeros(field, base_dim, idx.len());
        t.coeffs[flat(base_dim, idx)] = field.one();
        t
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    pub fn get(&self, idx: &[usize]) -> &Scalar {
        &self.coeffs[flat(self.base_dim, idx)]
    }

    pub fn add_at(&mut self, idx: &[usize], c: &Scalar) {
        let f = flat(self.base_dim, idx);
        self.coeffs[f] += c;
    }

    pub fn set(&mut self, idx: &[usize], c: Scalar) {
        let f = flat(self.base_dim, idx);
        self.coeffs[f] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Nonzero coefficients with their multi-indices, in flat order.
    pub fn nonzeros(&self) -> impl Iterator<Item = (Vec<usize>, &Scalar)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(f, c)| (unflat(self.base_dim, self.order, f), c))
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        self.check_like(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Tensor { coeffs, ..*self })
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        self.check_like(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Tensor { coeffs, ..*self })
    }

    pub fn scale(&self, c: &Scalar) -> Tensor {
        Tensor {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            ..*self
        }
    }

    fn check_like(&self, other: &Tensor) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if (self.base_dim, self.order) != (other.base_dim, other.order) {
            return Err(Error::shape("tensors of different shape"));
        }
        Ok(())
    }

    /// Tensor product `self ⊗ other` (orders add).
    pub fn kron(&self, other: &Tensor) -> Result<Tensor> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.base_dim != other.base_dim {
            return Err(Error::shape(
                "kron of tensors over different base dimensions",
            ));
        }
        let mut out = Tensor::zeros(self.field, self.base_dim, self.order + other.order);
        let stride = other.coeffs.len();
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, b)| !b.is_zero())
            {
                out.coeffs[i * stride + j] = a * b;
            }
        }
        Ok(out)
    }

    /// Applies a linear map `V → V^{⊗r}` (an `n^r × n` matrix) to one slot,
    /// replacing it by `r` slots. `r = 0` contracts the slot with a functional.
    /// `r` is read off the row count, which is ambiguous when `n = 1`; use
    /// [`Tensor::slot_apply_arity`] there.
    pub fn slot_apply(&self, map: &Matrix, slot: usize) -> Result<Tensor> {
        let r = out_order(map.rows(), self.base_dim)?;
        self.slot_apply_arity(map, slot, r)
    }

    pub fn slot_apply_arity(&self, map: &Matrix, slot: usize, r: usize) -> Result<Tensor> {
        let n = self.base_dim;
        if map.rows() != n.pow(r as u32) {
            return Err(Error::shape(format!(
                "slot map must have {} rows",
                n.pow(r as u32)
            )));
        }
        if slot >= self.order {
            return Err(Error::shape(format!(
                "slot {slot} of an order-{} tensor",
                self.order
            )));
        }
        if map.cols() != n {
            return Err(Error::shape("slot map has wrong source dimension"));
        }
        if map.field() != self.field {
            return Err(Error::FieldMismatch(self.field, map.field()));
        }
        let order = self.order - 1 + r;
        let mut out = Tensor::zeros(self.field, n, order);
        for (idx, c) in self.nonzeros() {
            for row in 0..map.rows() {
                let m = map.get(row, idx[slot]);
                if m.is_zero() {
                    continue;
                }
                let mut new_idx = Vec::with_capacity(order);
                new_idx.extend_from_slice(&idx[..slot]);
                new_idx.extend(unflat(n, r, row));
                new_idx.extend_from_slice(&idx[slot + 1..]);
                let f = flat(n, &new_idx);
                out.coeffs[f].add_product(c, m);
            }
        }
        Ok(out)
    }

    /// Slot-wise product in `A^{⊗k}` where `mult` is the order-3 structure
    /// tensor of `A` (`mult[i][j][l]` = coefficient of `e_l` in `e_i·e_j`).
    pub fn slot_multiply(&self, other: &Tensor, mult: &Tensor) -> Result<Tensor> {
        self.check_like(other)?;
        let n = self.base_dim;
        if mult.base_dim != n || mult.order != 3 {
            return Err(Error::shape("multiplication tensor shape"));
        }
        let table = product_table(mult);
        let mut out = Tensor::zeros(self.field, n, self.order);
        let lhs: Vec<_> = self.nonzeros().collect();
        let rhs: Vec<_> = other.nonzeros().collect();
        for (xi, xc) in &lhs {
            for (yi, yc) in &rhs {
                let coeff = *xc * *yc;
                // Expand the product slot by slot.
                let mut partial: Vec<(usize, Scalar)> = vec![(0, coeff)];
                for s in 0..self.order {
                    let terms = &table[xi[s] * n + yi[s]];
                    if terms.is_empty() {
                        partial.clear();
                        break;
                    }
                    partial = partial
                        .iter()
                        .flat_map(|(f, c)| terms.iter().map(move |(l, t)| (f * n + l, c * t)))
                        .collect();
                }
                for (f, c) in partial {
                    out.coeffs[f] += &c;
                }
            }
        }
        Ok(out)
    }
}

fn out_order(rows: usize, n: usize) -> Result<usize> {
    let mut r = 0;
    let mut size = 1;
    while size < rows {
        size *= n;
        r += 1;
    }
    if size != rows {
        return Err(Error::shape(format!("{rows} is not a power of {n}")));
    }
    Ok(r)
}

/// Sparse table of `e_i·e_j` indexed by `i·n + j`.
pub(crate) fn product_table(mult: &Tensor) -> Vec<Vec<(usize, Scalar)>> {
    let n = mult.base_dim;
    (0..n * n)
        .map(|ij| {
            (0..n)
                .filter_map(|l| {
                    let c = &mult.coeffs[ij * n + l];
                    (!c.is_zero()).then(|| (l, c.clone()))
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_unflat_roundtrip() {
        for n in 1..=4usize {
            for k in 0..=4 {
                for f in 0..n.pow(k as u32) {
                    let idx = unflat(n, k, f);
                    assert_eq!(flat(n, &idx), f);
                }
            }
        }
        assert_eq!(flat(3, &[1, 2, 0]), 15);
    }

    #[test]
    fn slot_apply_on_pure_tensor() {
        let q = Field::Rational;
        // S swaps e0 and e1 (with a sign on the image of e1).
        let s = Matrix::from_i64(q, &[&[0, -1], &[1, 0]]);
        let a_b = Tensor::basis(q, 2, &[0, 1]);
        let out = a_b.slot_apply(&s, 0).unwrap();
        assert_eq!(out, Tensor::basis(q, 2, &[1, 1]));
        let out = a_b.slot_apply(&s, 1).unwrap();
        assert_eq!(out, Tensor::basis(q, 2, &[0, 0]).scale(&q.from_i64(-1)));
    }

    #[test]
    fn slot_apply_rejects_bad_slot() {
        let q = Field::Rational;
        let t = Tensor::basis(q, 2, &[0]);
        assert!(t.slot_apply(&Matrix::identity(q, 2), 1).is_err());
        assert!(t.slot_apply(&Matrix::zeros(q, 3, 2), 0).is_err());
    }

    #[test]
    fn kron_orders_add() {
        let q = Field::Rational;
        let a = Tensor::basis(q, 3, &[2]);
        let b = Tensor::basis(q, 3, &[0, 1]);
        assert_eq!(a.kron(&b).unwrap(), Tensor::basis(q, 3, &[2, 0, 1]));
    }
}
