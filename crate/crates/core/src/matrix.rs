//! Dense row-major matrices over a [`Field`], with exact rank, kernel, solve
//! and cokernel routines.
//!
//! Elimination is plain Gauss–Jordan over `F_p` and fraction-free (Bareiss)
//! forward elimination over `Q`, normalised to a reduced echelon form at the
//! end. Pivots are always the first nonzero entry in column order, so every
//! result is deterministic across runs.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Reduced row echelon data: the echelon matrix together with its pivot
/// columns (one per nonzero row, strictly increasing).
#[derive(Debug, Clone)]
pub struct Echelon {
    pub mat: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Matrix> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix { field, rows, cols, entries })
    }

    /// Builds a matrix from integer entries, reducing into the field.
    pub fn from_i64(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
        let entries = entries.iter().map(|&n| field.from_i64(n)).collect();
        Matrix { field, rows, cols, entries }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.field.is_zero(e))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_check(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Ok(Matrix { field: self.field, rows: self.rows, cols: self.cols, entries })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_check(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.field.sub(a, b))
            .collect();
        Ok(Matrix { field: self.field, rows: self.rows, cols: self.cols, entries })
    }

    pub fn neg(&self) -> Matrix {
        let entries = self.entries.iter().map(|a| self.field.neg(a)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, entries }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let entries = self.entries.iter().map(|a| self.field.mul(a, s)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, entries }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Matrix::zero(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let add = f.mul(a, other.get(k, c));
                    let cur = f.add(out.get(r, c), &add);
                    out.set(r, c, cur);
                }
            }
        }
        Ok(out)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field || self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack".into()));
        }
        let mut out = Matrix::zero(self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        Ok(out)
    }

    /// Vertical concatenation `[self; other]`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field || self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack".into()));
        }
        let mut out = Matrix::zero(self.field, self.rows + other.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..self.cols {
                out.set(self.rows + r, c, other.get(r, c).clone());
            }
        }
        Ok(out)
    }

    pub fn column(&self, c: usize) -> Matrix {
        let mut out = Matrix::zero(self.field, self.rows, 1);
        for r in 0..self.rows {
            out.set(r, 0, self.get(r, c).clone());
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zero(self.field, self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                out.set(r, j, self.get(r, c).clone());
            }
        }
        out
    }

    fn zip_check(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Reduced row echelon form with deterministic first-nonzero pivoting.
    pub fn rref(&self) -> Echelon {
        match self.field {
            Field::Prime(_) => self.rref_gauss(),
            Field::Rationals => self.rref_bareiss(),
        }
    }

    fn rref_gauss(&self) -> Echelon {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let pivot_row = (row..m.rows).find(|&r| !f.is_zero(m.get(r, col)));
            let Some(pr) = pivot_row else { continue };
            if pr != row {
                for c in 0..m.cols {
                    let a = m.get(row, c).clone();
                    let b = m.get(pr, c).clone();
                    m.set(row, c, b);
                    m.set(pr, c, a);
                }
            }
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                let v = f.mul(m.get(row, c), &inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || f.is_zero(m.get(r, col)) {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), &f.mul(&factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { mat: m, pivots }
    }

    /// Fraction-free forward elimination (Bareiss) on the integer matrix
    /// obtained by clearing denominators row by row, then a rational
    /// back-substitution pass to reach the reduced echelon form.
    fn rref_bareiss(&self) -> Echelon {
        let rows = self.rows;
        let cols = self.cols;
        // Clear denominators per row; this preserves row space and kernel.
        let mut m: Vec<Vec<BigInt>> = (0..rows)
            .map(|r| {
                let mut lcm = BigInt::one();
                for c in 0..cols {
                    let d = self.get(r, c).rat().denom().clone();
                    let g = gcd_big(&lcm, &d);
                    lcm = lcm / g * d;
                }
                (0..cols)
                    .map(|c| {
                        let q = self.get(r, c).rat();
                        q.numer() * &lcm / q.denom()
                    })
                    .collect()
            })
            .collect();

        let mut pivots = Vec::new();
        let mut row = 0usize;
        let mut prev = BigInt::one();
        for col in 0..cols {
            if row == rows {
                break;
            }
            let Some(pr) = (row..rows).find(|&r| !m[r][col].is_zero()) else { continue };
            m.swap(row, pr);
            let pivot = m[row][col].clone();
            for r in 0..rows {
                if r == row {
                    continue;
                }
                let factor = m[r][col].clone();
                if factor.is_zero() && prev.is_one() {
                    // still scale by pivot/prev to keep the invariant simple
                }
                for c in 0..cols {
                    let v = (&pivot * &m[r][c] - &factor * &m[row][c]) / &prev;
                    m[r][c] = v;
                }
            }
            prev = pivot;
            pivots.push(col);
            row += 1;
        }
        // Normalise pivot rows to leading 1 over Q.
        let q = Field::Rationals;
        let mut out = Matrix::zero(q, rows, cols);
        for (r, &pc) in pivots.iter().enumerate() {
            let lead = BigRational::from(m[r][pc].clone());
            for c in 0..cols {
                let v = BigRational::from(m[r][c].clone()) / lead.clone();
                out.set(r, c, Scalar::Rat(v));
            }
        }
        Echelon { mat: out, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the (right) kernel, one column per free variable; satisfies
    /// `self * result == 0` and `result.cols() == self.cols() - self.rank()`.
    pub fn kernel_basis(&self) -> Matrix {
        let f = self.field;
        let ech = self.rref();
        let pivots = &ech.pivots;
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in pivots {
                v[p] = true;
            }
            v
        };
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Matrix::zero(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            out.set(fc, j, f.one());
            for (r, &pc) in pivots.iter().enumerate() {
                let v = f.neg(ech.mat.get(r, fc));
                out.set(pc, j, v);
            }
        }
        out
    }

    /// Solves `self * x = rhs` column by column; `None` when inconsistent.
    /// Free variables are set to zero, so the solution is deterministic.
    pub fn solve(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: {}x{} vs rhs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = self.field;
        let aug = self.hstack(rhs)?;
        let ech = aug.rref();
        // Any pivot inside the rhs block means an inconsistent system.
        if ech.pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zero(f, self.cols, rhs.cols);
        for (r, &pc) in ech.pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(pc, c, ech.mat.get(r, self.cols + c).clone());
            }
        }
        Ok(Some(x))
    }

    /// Projection onto the cokernel: a full-row-rank matrix `P` with
    /// `P * self == 0` and `P.rows() == self.rows() - self.rank()`.
    pub fn cokernel_projection(&self) -> (Matrix, usize) {
        let p = self.transpose().kernel_basis().transpose();
        let dim = p.rows();
        (p, dim)
    }

    /// Inverse of a square matrix, or `Err(Singular)`.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Singular);
        }
        let id = Matrix::identity(self.field, self.rows);
        match self.solve(&id)? {
            Some(x) => {
                if self.rank() < self.rows {
                    return Err(Error::Singular);
                }
                Ok(x)
            }
            None => Err(Error::Singular),
        }
    }

    /// Row-major entry slice, mainly for canonical sorting and hashing.
    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }
}

/// Incrementally maintained reduced row span, used for membership tests and
/// rank-extension all over the crate. Rows are kept in reduced echelon form
/// with unit pivots; insertion order does not affect the spanned space.
#[derive(Debug, Clone)]
pub struct RowSpan {
    field: Field,
    dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowSpan {
    pub fn new(field: Field, dim: usize) -> RowSpan {
        RowSpan { field, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.rows[i]
    }

    /// Reduces `v` against the span; the remainder has zeros in all pivot
    /// coordinates.
    pub fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        let f = self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let factor = v[p].clone();
            for c in 0..self.dim {
                let delta = f.mul(&factor, &row[c]);
                v[c] = f.sub(&v[c], &delta);
            }
        }
        v
    }

    /// Inserts `v`; returns `true` when the rank grew.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let f = self.field;
        let mut v = self.reduce(v);
        let Some(p) = (0..self.dim).find(|&c| !f.is_zero(&v[c])) else {
            return false;
        };
        let inv = f.inv(&v[p]).expect("pivot nonzero");
        for c in 0..self.dim {
            v[c] = f.mul(&v[c], &inv);
        }
        // Back-substitute into existing rows to stay fully reduced.
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[p]) {
                continue;
            }
            let factor = row[p].clone();
            for c in 0..self.dim {
                let delta = f.mul(&factor, &v[c]);
                row[c] = f.sub(&row[c], &delta);
            }
        }
        let pos = self.pivots.binary_search(&p).unwrap_err();
        self.rows.insert(pos, v);
        self.pivots.insert(pos, p);
        true
    }

    pub fn contains(&self, v: Vec<Scalar>) -> bool {
        let f = self.field;
        self.reduce(v).iter().all(|x| f.is_zero(x))
    }
}

fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    if a.is_zero() {
        BigInt::one()
    } else {
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        let f5 = Field::prime(5).unwrap();
        let m = Matrix::from_i64(f5, 2, 2, &[1, 2, 2, 4]);
        assert_eq!(m.rank(), 1);

        let empty = Matrix::zero(f5, 0, 0);
        assert_eq!(empty.rank(), 0);

        let id = Matrix::identity(f5, 4);
        assert_eq!(id.rank(), 4);
    }

    #[test]
    fn kernel_examples() {
        let q = Field::rationals();
        let m = Matrix::from_i64(q, 1, 2, &[1, 1]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).unwrap().is_zero());
        // One column proportional to (1, -1).
        let a = k.get(0, 0).clone();
        let b = k.get(1, 0).clone();
        assert_eq!(q.add(&a, &b), q.zero());
        assert!(!q.is_zero(&a));

        let id = Matrix::identity(q, 3);
        assert_eq!(id.kernel_basis().cols(), 0);

        let z = Matrix::zero(q, 2, 3);
        assert_eq!(z.kernel_basis().cols(), 3);
    }

    #[test]
    fn solve_examples() {
        let f7 = Field::prime(7).unwrap();
        let a = Matrix::from_i64(f7, 1, 1, &[2]);
        let b = Matrix::from_i64(f7, 1, 1, &[1]);
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(*x.get(0, 0), f7.from_i64(4));

        let zero = Matrix::zero(f7, 2, 2);
        let rhs = Matrix::from_i64(f7, 2, 1, &[1, 0]);
        assert!(zero.solve(&rhs).unwrap().is_none());

        let id = Matrix::identity(f7, 3);
        let rhs = Matrix::from_i64(f7, 3, 1, &[3, 1, 4]);
        assert_eq!(id.solve(&rhs).unwrap().unwrap(), rhs);
    }

    #[test]
    fn cokernel_examples() {
        let q = Field::rationals();
        let m = Matrix::from_i64(q, 2, 1, &[1, 1]);
        let (p, dim) = m.cokernel_projection();
        assert_eq!(dim, 1);
        assert!(p.mul(&m).unwrap().is_zero());
        // Projection proportional to [1, -1].
        assert_eq!(q.add(p.get(0, 0), p.get(0, 1)), q.zero());

        let z = Matrix::zero(q, 3, 2);
        let (p, dim) = z.cokernel_projection();
        assert_eq!(dim, 3);
        assert_eq!(p.rank(), 3);

        let surj = Matrix::identity(q, 2);
        assert_eq!(surj.cokernel_projection().1, 0);
    }

    #[test]
    fn bareiss_matches_gauss_rank() {
        // Same integer matrix over Q and over a large prime: ranks agree.
        let ent: Vec<i64> = vec![2, 4, 6, 1, 3, 5, 3, 7, 11];
        let q = Matrix::from_i64(Field::rationals(), 3, 3, &ent);
        let p = Matrix::from_i64(Field::prime(32003).unwrap(), 3, 3, &ent);
        assert_eq!(q.rank(), p.rank());
    }
}
