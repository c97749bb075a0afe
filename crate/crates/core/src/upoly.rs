//! Univariate polynomials over `k` in the deformation parameter `t`, and
//! matrices of them.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

/// A polynomial `sum c_i t^i`, stored without trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct UPoly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl UPoly {
    pub fn zero(field: Field) -> Self {
        UPoly { field, coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_coeffs(c.field(), vec![c])
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field.one())
    }

    /// The parameter `t`.
    pub fn t(field: Field) -> Self {
        Self::from_coeffs(field, vec![field.zero(), field.one()])
    }

    pub fn from_coeffs(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UPoly { field, coeffs }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
            .collect();
        Self::from_coeffs(self.field, c)
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UPoly {
        UPoly {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> UPoly {
        Self::from_coeffs(self.field, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let mut c = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += &(a * b);
                }
            }
        }
        Self::from_coeffs(self.field, c)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &UPoly) -> (UPoly, UPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().and_then(Scalar::inv).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().expect("nonempty") * &lead_inv;
            if !c.is_zero() {
                for (i, b) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] -= &(&c * b);
                }
                quot[k] = c;
            }
            rem.pop();
            while rem.last().is_some_and(Scalar::is_zero) {
                rem.pop();
            }
        }
        (Self::from_coeffs(self.field, quot), Self::from_coeffs(self.field, rem))
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{i}")?,
            }
        }
        Ok(())
    }
}

/// A dense matrix of [`UPoly`] entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<UPoly>,
}

impl PolyMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            field,
            rows,
            cols,
            data: vec![UPoly::zero(field); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, UPoly::one(field));
        }
        m
    }

    pub fn constant(m: &Matrix) -> Self {
        let mut out = Self::zeros(m.field(), m.rows(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                out.set(r, c, UPoly::constant(m[(r, c)].clone()));
            }
        }
        out
    }

    /// `sum_i C_i t^i` from coefficient matrices of a common shape.
    pub fn from_coefficients(field: Field, rows: usize, cols: usize, coeffs: &[Matrix]) -> Self {
        let mut out = Self::zeros(field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                let cs = coeffs.iter().map(|m| m[(r, c)].clone()).collect();
                out.set(r, c, UPoly::from_coeffs(field, cs));
            }
        }
        out
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

    pub fn get(&self, r: usize, c: usize) -> &UPoly {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: UPoly) {
        self.data[r * self.cols + c] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(UPoly::is_zero)
    }

    /// Largest entry degree; `None` for the zero matrix.
    pub fn degree(&self) -> Option<usize> {
        self.data.iter().filter_map(UPoly::degree).max()
    }

    /// `C_0, ..., C_deg` with `self = sum C_i t^i`.
    pub fn coefficient_matrices(&self) -> Vec<Matrix> {
        let Some(deg) = self.degree() else {
            return vec![Matrix::zeros(self.field, self.rows, self.cols)];
        };
        (0..=deg)
            .map(|i| {
                Matrix::from_fn(self.field, self.rows, self.cols, |r, c| {
                    self.get(r, c).coeffs().get(i).cloned().unwrap_or_else(|| self.field.zero())
                })
            })
            .collect()
    }

    pub fn eval(&self, x: &Scalar) -> Matrix {
        Matrix::from_fn(self.field, self.rows, self.cols, |r, c| self.get(r, c).eval(x))
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        PolyMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, s: &UPoly) -> PolyMatrix {
        PolyMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(s)).collect(),
        }
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let s = out.get(r, c).add(&a.mul(b));
                        out.set(r, c, s);
                    }
                }
            }
        }
        out
    }

    pub fn vstack(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.cols, "shape mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        PolyMatrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> PolyMatrix {
        let mut out = Self::zeros(self.field, nr, nc);
        for r in 0..nr {
            for c in 0..nc {
                out.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// `row[target] -= q * row[source]`.
    fn row_sub(&mut self, target: usize, source: usize, q: &UPoly) {
        for c in 0..self.cols {
            let s = self.get(source, c);
            if s.is_zero() {
                continue;
            }
            let v = self.get(target, c).sub(&q.mul(s));
            self.set(target, c, v);
        }
    }

    /// `col[target] += q * col[source]`.
    fn col_add(&mut self, target: usize, source: usize, q: &UPoly) {
        for r in 0..self.rows {
            let s = self.get(r, source);
            if s.is_zero() {
                continue;
            }
            let v = self.get(r, target).add(&q.mul(s));
            self.set(r, target, v);
        }
    }
}

/// Row reduction over `k[t]` by Euclidean steps: returns `(H, U, U^{-1})` with
/// `U F = H` unimodular and `H` upper triangular in the sense that column `j`
/// vanishes below row `j` (for `j` up to the rank).
pub fn hermite_rows(f: &PolyMatrix) -> (PolyMatrix, PolyMatrix, PolyMatrix) {
    let field = f.field;
    let n = f.rows;
    let mut h = f.clone();
    let mut u = PolyMatrix::identity(field, n);
    let mut uinv = PolyMatrix::identity(field, n);
    let mut pivot_row = 0;
    for col in 0..f.cols {
        if pivot_row == n {
            break;
        }
        loop {
            // smallest-degree nonzero entry at or below the pivot row
            let best = (pivot_row..n)
                .filter_map(|r| h.get(r, col).degree().map(|d| (d, r)))
                .min();
            let Some((_, r)) = best else { break };
            if r != pivot_row {
                h.swap_rows(r, pivot_row);
                u.swap_rows(r, pivot_row);
                uinv.swap_cols(r, pivot_row);
            }
            let pivot = h.get(pivot_row, col).clone();
            let mut done = true;
            for r in pivot_row + 1..n {
                if h.get(r, col).is_zero() {
                    continue;
                }
                let (q, rem) = h.get(r, col).div_rem(&pivot);
                h.row_sub(r, pivot_row, &q);
                u.row_sub(r, pivot_row, &q);
                uinv.col_add(pivot_row, r, &q);
                if !rem.is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !h.get(pivot_row, col).is_zero() {
            pivot_row += 1;
        }
    }
    (h, u, uinv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn p(cs: &[i64]) -> UPoly {
        UPoly::from_coeffs(q(), cs.iter().map(|&c| q().from_i64(c)).collect())
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(a.mul(&b), p(&[-1, 0, 1]));
        let (quot, rem) = p(&[-1, 0, 1]).div_rem(&a);
        assert_eq!(quot, b);
        assert!(rem.is_zero());
        let (quot, rem) = p(&[3, 0, 1]).div_rem(&p(&[0, 2]));
        assert_eq!(rem, p(&[3]));
        assert_eq!(quot.eval(&q().from_i64(2)), q().from_i64(1));
        assert_eq!(p(&[1, 2, 3]).eval(&q().from_i64(2)), q().from_i64(17));
        assert_eq!(p(&[0, 0]).degree(), None);
    }

    #[test]
    fn hermite_is_unimodular_reduction() {
        // F = [[1, 0], [t, 1], [t^2, t]]
        let mut f = PolyMatrix::zeros(q(), 3, 2);
        f.set(0, 0, p(&[0, 1]));
        f.set(1, 0, p(&[1, 1]));
        f.set(1, 1, p(&[0, 1]));
        f.set(2, 1, p(&[2, 0, 1]));
        let (h, u, uinv) = hermite_rows(&f);
        assert_eq!(u.mul(&f), h);
        assert_eq!(u.mul(&uinv), PolyMatrix::identity(q(), 3));
        assert_eq!(uinv.mul(&u), PolyMatrix::identity(q(), 3));
        assert!(h.get(1, 0).is_zero() && h.get(2, 0).is_zero() && h.get(2, 1).is_zero());
    }

    #[test]
    fn coefficient_round_trip() {
        let mut m = PolyMatrix::zeros(q(), 2, 2);
        m.set(0, 1, p(&[1, 0, 3]));
        m.set(1, 0, p(&[0, 2]));
        let cs = m.coefficient_matrices();
        assert_eq!(cs.len(), 3);
        assert_eq!(PolyMatrix::from_coefficients(q(), 2, 2, &cs), m);
    }
}
