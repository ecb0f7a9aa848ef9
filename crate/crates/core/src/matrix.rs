//! Dense exact matrices and elimination.
//!
//! Over ℚ the forward pass is fraction-free (Bareiss) on integer-scaled rows;
//! the back substitution to reduced row echelon form then runs in rationals.
//! Over prime fields plain Gauss–Jordan is used.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Row-major dense matrix over a single field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

/// Output of [`Matrix::solve`]: every solution is `particular + kernel·c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Matrix,
    pub kernel: Matrix,
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix {
            rows,
            cols,
            field,
            data,
        }
    }

    pub fn from_vec(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(s) = data.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field, s.field()));
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            data,
        })
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::shape("ragged rows"));
        }
        Matrix::from_vec(field, r, c, rows.into_iter().flatten().collect())
    }

    /// Small-integer convenience constructor.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Matrix::from_rows(field, data).expect("rectangular literal")
    }

    /// The matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Result<Matrix> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::shape("column length"));
        }
        Ok(Matrix::from_fn(field, rows, columns.len(), |r, c| {
            columns[c][r].clone()
        }))
    }

    pub fn column_vector(field: Field, v: Vec<Scalar>) -> Matrix {
        let n = v.len();
        Matrix::from_vec(field, n, 1, v).expect("column vector")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.field(), self.field);
        self.data[r * self.cols + c] = v;
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::shape(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j].add_product(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self · v` for a coefficient vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "apply: vector length");
        let mut out = vec![self.field.zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (a, b) in self.row(i).iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    o.add_product(a, b);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::shape("sum of differently shaped matrices"));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Matrix { data, ..*self })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::shape("difference of differently shaped matrices"));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Matrix { data, ..*self })
    }

    /// In-place `self += c · other`; shapes must agree.
    pub fn add_scaled(&mut self, c: &Scalar, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if c.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                a.add_product(c, b);
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * c).collect();
        Matrix { data, ..*self }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| {
            self.get(c, r).clone()
        })
    }

    /// Kronecker product; row index of the result is `i·other.rows + k`.
    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        let (r2, c2) = (other.rows, other.cols);
        let mut out = Matrix::zeros(self.field, self.rows * r2, self.cols * c2);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.data[(i * r2 + k) * out.cols + j * c2 + l] = a * b;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row-major reinterpretation with a new shape.
    pub fn reshape(&self, rows: usize, cols: usize) -> Result<Matrix> {
        if rows * cols != self.data.len() {
            return Err(Error::shape(format!(
                "reshape {}x{} to {rows}x{cols}",
                self.rows, self.cols
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            field: self.field,
            data: self.data.clone(),
        })
    }

    pub fn vstack(field: Field, blocks: &[Matrix]) -> Result<Matrix> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.field != field {
                return Err(Error::FieldMismatch(field, b.field));
            }
            if b.cols != cols {
                return Err(Error::shape("vstack column counts"));
            }
            rows += b.rows;
            data.extend_from_slice(&b.data);
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            data,
        })
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.rows != other.rows {
            return Err(Error::shape("hstack row counts"));
        }
        Ok(Matrix::from_fn(
            self.field,
            self.rows,
            self.cols + other.cols,
            |r, c| {
                if c < self.cols {
                    self.get(r, c).clone()
                } else {
                    other.get(r, c - self.cols).clone()
                }
            },
        ))
    }

    pub fn rref(&self) -> Rref {
        match self.field {
            Field::Rational => rref_bareiss(self),
            Field::Prime { .. } => rref_gauss(self),
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Columns spanning the null space, in free-column order.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref { matrix: r, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.field, self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, self.field.one());
            for (i, &p) in pivots.iter().enumerate() {
                k.set(p, j, -r.get(i, f));
            }
        }
        k
    }

    /// Solves `self · X = rhs`. `Ok(None)` when the system is inconsistent.
    pub fn solve(&self, rhs: &Matrix) -> Result<Option<Solution>> {
        self.same_field(rhs)?;
        if self.rows != rhs.rows {
            return Err(Error::shape(format!(
                "solve: {} equations but right-hand side has {} rows",
                self.rows, rhs.rows
            )));
        }
        let aug = self.hstack(rhs)?;
        let Rref { matrix: r, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for k in 0..rhs.cols {
                x.set(p, k, r.get(i, self.cols + k).clone());
            }
        }
        Ok(Some(Solution {
            particular: x,
            kernel: self.kernel_basis(),
        }))
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::shape("inverse of a non-square matrix"));
        }
        match self.solve(&Matrix::identity(self.field, self.rows))? {
            Some(sol) if sol.kernel.cols() == 0 => Ok(sol.particular),
            _ => Err(Error::Singular),
        }
    }

    pub fn map_entries(&self, f: impl Fn(&Scalar) -> Scalar) -> Matrix {
        Matrix {
            data: self.data.iter().map(f).collect(),
            ..*self
        }
    }
}

fn rref_gauss(m: &Matrix) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !a.get(r, c).is_zero()) else {
            continue;
        };
        swap_rows(&mut a, row, p);
        let inv = a.get(row, c).inv().expect("nonzero pivot");
        for j in c..a.cols {
            let v = a.get(row, j) * &inv;
            a.set(row, j, v);
        }
        for r in 0..a.rows {
            if r == row {
                continue;
            }
            let f = a.get(r, c).clone();
            if f.is_zero() {
                continue;
            }
            for j in c..a.cols {
                let v = a.get(r, j) - &(&f * a.get(row, j));
                a.set(r, j, v);
            }
        }
        pivots.push(c);
        row += 1;
    }
    Rref { matrix: a, pivots }
}

fn swap_rows(a: &mut Matrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..a.cols {
        a.data.swap(i * a.cols + c, j * a.cols + c);
    }
}

fn rref_bareiss(m: &Matrix) -> Rref {
    let (rows, cols) = (m.rows, m.cols);
    // Clear denominators row by row; row scaling preserves the row space.
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| {
            let parts: Vec<(BigInt, BigInt)> = m
                .row(r)
                .iter()
                .map(|s| s.numer_denom().expect("rational entry"))
                .collect();
            let l = parts.iter().fold(BigInt::one(), |acc, (_, d)| acc.lcm(d));
            parts.into_iter().map(|(n, d)| n * (&l / d)).collect()
        })
        .collect();

    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let (head, tail) = a.split_at_mut(row + 1);
        let prow = &head[row];
        for r in tail.iter_mut() {
            let lead = r[c].clone();
            for j in c + 1..cols {
                let num = &prow[c] * &r[j] - &lead * &prow[j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                r[j] = num / &prev;
            }
            r[c] = BigInt::zero();
        }
        prev = a[row][c].clone();
        pivots.push(c);
        row += 1;
    }

    // Back substitution to reduced form in rationals, only over the pivot rows.
    let mut q: Vec<Vec<BigRational>> = a
        .into_iter()
        .take(pivots.len())
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect();
    for (i, &pc) in pivots.iter().enumerate().rev() {
        let inv = q[i][pc].recip();
        for v in q[i][pc..].iter_mut() {
            *v *= &inv;
        }
        for k in 0..i {
            let f = q[k][pc].clone();
            if f.is_zero() {
                continue;
            }
            for j in pc..cols {
                let t = &f * &q[i][j];
                q[k][j] -= t;
            }
        }
    }
    let mut out = Matrix::zeros(Field::Rational, rows, cols);
    for (i, r) in q.into_iter().enumerate() {
        for (j, v) in r.into_iter().enumerate() {
            out.set(i, j, Scalar::Rational(v));
        }
    }
    Rref {
        matrix: out,
        pivots,
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn identity_product() {
        let f5 = Field::prime(5).unwrap();
        let m = Matrix::from_i64(f5, &[&[2, 3], &[1, 4]]);
        assert_eq!(m.mul(&Matrix::identity(f5, 2)).unwrap(), m);
        assert_eq!(Matrix::identity(f5, 2).mul(&m).unwrap(), m);
    }

    #[test]
    fn rational_product() {
        let a = Matrix::from_vec(q(), 1, 1, vec![q().parse("1/2").unwrap()]).unwrap();
        let b = Matrix::from_vec(q(), 1, 1, vec![q().parse("2/3").unwrap()]).unwrap();
        assert_eq!(a.mul(&b).unwrap().get(0, 0).to_string(), "1/3");
    }

    #[test]
    fn product_errors() {
        let a = Matrix::zeros(q(), 2, 3);
        assert!(matches!(a.mul(&a), Err(Error::Shape(_))));
        let b = Matrix::zeros(Field::prime(3).unwrap(), 3, 1);
        assert!(matches!(a.mul(&b), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn kernels() {
        let z = Matrix::zeros(q(), 2, 2);
        assert_eq!(z.kernel_basis(), Matrix::identity(q(), 2));
        let inv = Matrix::from_i64(q(), &[&[1, 2], &[3, 4]]);
        assert_eq!(inv.kernel_basis().cols(), 0);
        let k = Matrix::from_i64(q(), &[&[1, 1]]).kernel_basis();
        assert_eq!(k, Matrix::from_i64(q(), &[&[-1], &[1]]));
    }

    #[test]
    fn solving() {
        let b = Matrix::from_i64(q(), &[&[3, 1], &[4, 1]]);
        let x = Matrix::identity(q(), 2).solve(&b).unwrap().unwrap();
        assert_eq!(x.particular, b);
        let a = Matrix::from_i64(q(), &[&[1, 1], &[1, 1]]);
        let inconsistent = Matrix::from_i64(q(), &[&[0], &[1]]);
        assert!(a.solve(&inconsistent).unwrap().is_none());
        let x = Matrix::from_i64(q(), &[&[2]])
            .solve(&Matrix::from_i64(q(), &[&[1]]))
            .unwrap()
            .unwrap();
        assert_eq!(x.particular.get(0, 0).to_string(), "1/2");
        assert!(matches!(
            a.solve(&Matrix::zeros(q(), 3, 1)),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn kron_identities_and_hand_expansion() {
        let k = Matrix::identity(q(), 2)
            .kron(&Matrix::identity(q(), 3))
            .unwrap();
        assert_eq!(k, Matrix::identity(q(), 6));
        let a = Matrix::from_i64(q(), &[&[1, 2], &[3, 4]]);
        let b = Matrix::from_i64(q(), &[&[0, 5], &[6, 7]]);
        let expected = Matrix::from_i64(
            q(),
            &[
                &[0, 5, 0, 10],
                &[6, 7, 12, 14],
                &[0, 15, 0, 20],
                &[18, 21, 24, 28],
            ],
        );
        assert_eq!(a.kron(&b).unwrap(), expected);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = Matrix::from_i64(q(), &[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(matches!(
            Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]).inverse(),
            Err(Error::Singular)
        ));
    }

    fn small_matrix(field: Field) -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..6).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(-3i64..4, r * c).prop_map(move |v| {
                Matrix::from_vec(
                    field,
                    r,
                    c,
                    v.into_iter().map(|x| field.from_i64(x)).collect(),
                )
                .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity_over_q(m in small_matrix(Field::Rational)) {
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.cols(), m.cols());
            prop_assert!(m.mul(&k).unwrap().is_zero());
            prop_assert_eq!(k.rank(), k.cols());
        }

        #[test]
        fn rank_nullity_over_f5(m in small_matrix(Field::Prime { p: 5 })) {
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.cols(), m.cols());
            prop_assert!(m.mul(&k).unwrap().is_zero());
        }

        #[test]
        fn field_axioms_q(a in -20i64..20, b in 1i64..20, c in -20i64..20, d in 1i64..20, e in -9i64..9) {
            let f = Field::Rational;
            let x = f.from_fraction(a, b).unwrap();
            let y = f.from_fraction(c, d).unwrap();
            let z = f.from_i64(e);
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            if let Some(xi) = x.inv() {
                prop_assert!((&x * &xi).is_one());
            }
            prop_assert!((&x + &(-&x)).is_zero());
        }

        #[test]
        fn field_axioms_f7(a in 0i64..7, b in 0i64..7, c in 0i64..7) {
            let f = Field::Prime { p: 7 };
            let (x, y, z) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            if let Some(xi) = x.inv() {
                prop_assert!((&x * &xi).is_one());
            }
        }

        #[test]
        fn solve_reproduces_rhs(m in small_matrix(Field::Rational), seed in 0i64..50) {
            let x = Matrix::from_fn(Field::Rational, m.cols(), 1, |r, _| Field::Rational.from_i64((r as i64 * 7 + seed) % 5 - 2));
            let b = m.mul(&x).unwrap();
            let sol = m.solve(&b).unwrap().unwrap();
            prop_assert_eq!(m.mul(&sol.particular).unwrap(), b);
        }
    }
}
