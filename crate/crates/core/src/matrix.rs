//! Dense matrices over a [`Field`] and the exact elimination routines built on
//! them: reduced row echelon form, rank, kernels, solving, inverses, and
//! [`Subspace`] arithmetic.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use crate::field::{Field, Scalar};

/// A coordinate vector.
pub type Vector = Vec<Scalar>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(field: Field, rows: Vec<Vector>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Matrix { field, rows: r, cols, data }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Self {
        Self::from_fn(field, rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(field, rows.len(), cols, |r, c| field.from_i64(rows[r][c]))
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = &self[(r, c)];
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_fn(self.field, self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix difference shape mismatch");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: &Scalar, other: &Matrix) {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += &(s * b);
            }
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut e: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Self::from_fn(self.field, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        })
    }

    /// `[self; other]`
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        Self::from_fn(self.field, self.rows + other.rows, self.cols + other.cols, |r, c| {
            if r < self.rows && c < self.cols {
                self[(r, c)].clone()
            } else if r >= self.rows && c >= self.cols {
                other[(r - self.rows, c - self.cols)].clone()
            } else {
                self.field.zero()
            }
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Self::from_fn(self.field, rows.len(), cols.len(), |r, c| self[(rows[r], cols[c])].clone())
    }

    /// Contiguous block `[r0, r0+nr) x [c0, c0+nc)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Matrix {
        Self::from_fn(self.field, nr, nc, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self[(r0 + r, c0 + c)] = b[(r, c)].clone();
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Gauss-Jordan elimination to reduced row echelon form.
    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        Echelon { reduced: m, pivots }
    }

    /// Reduces in place using only the first `pivot_cols` columns as pivot
    /// candidates; returns the pivot columns.
    fn rref_in_place(&mut self, pivot_cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..pivot_cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self[(row, col)].inv().expect("nonzero pivot");
            if !inv.is_one() {
                for c in col..self.cols {
                    let v = &self[(row, c)] * &inv;
                    self[(row, c)] = v;
                }
            }
            let pivot_row: Vec<Scalar> = self.row(row)[col..].to_vec();
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let f = self[(r, col)].clone();
                if f.is_zero() {
                    continue;
                }
                for (k, pv) in pivot_row.iter().enumerate() {
                    if !pv.is_zero() {
                        let idx = r * self.cols + col + k;
                        self.data[idx] -= &(&f * pv);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        // eliminate along the shorter side
        if self.rows > self.cols {
            self.transpose().rref().pivots.len()
        } else {
            self.rref().pivots.len()
        }
    }

    /// Basis of the right kernel `{ x : self * x = 0 }`.
    pub fn nullspace(&self) -> Vec<Vector> {
        let e = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &e.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (i, &p) in e.pivots.iter().enumerate() {
                v[p] = -&e.reduced[(i, free)];
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_columns(self.field, self.rows, &[b.to_vec()]));
        let mut m = aug;
        let pivots = m.rref_in_place(self.cols);
        for r in pivots.len()..self.rows {
            if !m[(r, self.cols)].is_zero() {
                return None;
            }
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = m[(i, self.cols)].clone();
        }
        Some(x)
    }

    /// Some `X` with `self * X = rhs`, if one exists.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(rhs.rows, self.rows);
        let mut m = self.hstack(rhs);
        let pivots = m.rref_in_place(self.cols);
        for r in pivots.len()..self.rows {
            for c in 0..rhs.cols {
                if !m[(r, self.cols + c)].is_zero() {
                    return None;
                }
            }
        }
        let mut x = Matrix::zeros(self.field, self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x[(p, c)] = m[(i, self.cols + c)].clone();
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut m = self.hstack(&Matrix::identity(self.field, n));
        let pivots = m.rref_in_place(n);
        if pivots.len() < n {
            return None;
        }
        Some(m.block(0, n, n, n))
    }

    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = self.field.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return self.field.zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det *= &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..n {
                let f = &m[(r, col)] * &inv;
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = &f * &m[(col, c)];
                    m[(r, c)] -= &v;
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Exact nilpotency: `self^n = 0` for `n` the size.
    pub fn is_nilpotent(&self) -> bool {
        assert!(self.is_square());
        let mut p = self.clone();
        let mut k = 1;
        while k < self.rows.max(1) {
            p = p.mul(&p);
            k *= 2;
        }
        p.is_zero()
    }

    /// Flattens row-major into a vector.
    pub fn to_vector(&self) -> Vector {
        self.data.clone()
    }

    pub fn from_vector(field: Field, rows: usize, cols: usize, v: &[Scalar]) -> Matrix {
        assert_eq!(v.len(), rows * cols);
        Matrix {
            field,
            rows,
            cols,
            data: v.to_vec(),
        }
    }

    pub fn trace(&self) -> Scalar {
        let mut t = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            t += &self[(i, i)];
        }
        t
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
        }
        write!(f, "]")
    }
}

/// A linear subspace of `k^n`, stored as an RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit_vector(field, ambient, i)).collect();
        Subspace {
            field,
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<I: IntoIterator<Item = Vector>>(field: Field, ambient: usize, vectors: I) -> Self {
        let rows: Vec<Vector> = vectors.into_iter().collect();
        if rows.is_empty() {
            return Self::zero(field, ambient);
        }
        let m = Matrix::from_rows(field, rows, ambient);
        let e = m.rref();
        let r = e.pivots.len();
        Subspace {
            field,
            ambient,
            basis: (0..r).map(|i| e.reduced.row(i).to_vec()).collect(),
            pivots: e.pivots,
        }
    }

    /// Column space of a matrix.
    pub fn column_space(m: &Matrix) -> Self {
        Self::span(m.field(), m.rows(), m.columns())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residue of `v` after clearing every pivot coordinate.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let f = r[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Self::span(
            self.field,
            self.ambient,
            self.basis.iter().chain(other.basis.iter()).cloned(),
        )
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // x = sum a_i u_i = sum b_j v_j
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Self::zero(self.field, self.ambient);
        }
        let m = Matrix::from_fn(self.field, self.ambient, a + b, |r, c| {
            if c < a {
                self.basis[c][r].clone()
            } else {
                -&other.basis[c - a][r]
            }
        });
        let vecs = m.nullspace().into_iter().map(|coef| {
            let mut x = vec![self.field.zero(); self.ambient];
            for (i, u) in self.basis.iter().enumerate() {
                if !coef[i].is_zero() {
                    for (xi, ui) in x.iter_mut().zip(u) {
                        *xi += &(&coef[i] * ui);
                    }
                }
            }
            x
        });
        Self::span(self.field, self.ambient, vecs)
    }

    /// Standard coordinates not used as pivots; the matching unit vectors span
    /// a complement, and reading these coordinates of a reduced vector gives
    /// its class in the quotient `k^n / self`.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }

    /// Class of `v` in `k^n / self`, in the complement-coordinate basis.
    pub fn quotient_coordinates(&self, v: &[Scalar]) -> Vector {
        let r = self.reduce(v);
        self.complement_coordinates().into_iter().map(|i| r[i].clone()).collect()
    }

    /// Image under a linear map.
    pub fn image(&self, m: &Matrix) -> Subspace {
        Self::span(m.field(), m.rows(), self.basis.iter().map(|v| m.mul_vec(v)))
    }

    /// Matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.ambient, &self.basis)
    }
}

pub fn unit_vector(field: Field, n: usize, i: usize) -> Vector {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

pub fn zero_vector(field: Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// Linear combination `sum c_i v_i`.
pub fn combine(field: Field, len: usize, coefs: &[Scalar], vectors: &[Vector]) -> Vector {
    let mut out = zero_vector(field, len);
    for (c, v) in coefs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o += &(c * x);
            }
        }
    }
    out
}

/// Left inverse data for a full-column-rank matrix `E`: picks pivot rows so
/// that coordinates of any `v` in the column space are `S^{-1} v[rows]`.
#[derive(Clone, Debug)]
pub struct ColumnBasis {
    embedding: Matrix,
    rows: Vec<usize>,
    inv: Matrix,
}

impl ColumnBasis {
    /// Panics if `embedding` does not have full column rank.
    pub fn new(embedding: Matrix) -> Self {
        let e = embedding.transpose().rref();
        assert_eq!(e.pivots.len(), embedding.cols(), "embedding is not injective");
        let rows = e.pivots;
        let all: Vec<usize> = (0..embedding.cols()).collect();
        let inv = embedding
            .submatrix(&rows, &all)
            .inverse()
            .expect("pivot rows give an invertible block");
        ColumnBasis { embedding, rows, inv }
    }

    pub fn embedding(&self) -> &Matrix {
        &self.embedding
    }

    pub fn dim(&self) -> usize {
        self.embedding.cols()
    }

    /// Coordinates of `v`, assumed to lie in the column space.
    pub fn coordinates(&self, v: &[Scalar]) -> Vector {
        let picked: Vector = self.rows.iter().map(|&r| v[r].clone()).collect();
        self.inv.mul_vec(&picked)
    }

    /// Matrix of `map` restricted to the column space (which it must preserve).
    pub fn restrict(&self, map: &Matrix) -> Matrix {
        let img = map.mul(&self.embedding);
        let all: Vec<usize> = (0..img.cols()).collect();
        self.inv.mul(&img.submatrix(&self.rows, &all))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rank_nullspace_and_solve() {
        let m = Matrix::from_i64(q(), &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(is_zero_vector(&m.mul_vec(&ns[0])));
        let b = m.mul_vec(&[q().from_i64(1), q().from_i64(1), q().from_i64(1)]);
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        assert!(m.solve(&[q().one(), q().zero(), q().zero()]).is_none());
    }

    #[test]
    fn inverse_and_det() {
        let m = Matrix::from_i64(q(), &[&[2, 1], &[7, 4]]);
        assert!(m.det().is_one());
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let s = Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]);
        assert!(s.inverse().is_none());
        assert!(s.det().is_zero());
    }

    #[test]
    fn subspace_operations() {
        let f = q();
        let u = Subspace::span(f, 3, [unit_vector(f, 3, 0), unit_vector(f, 3, 1)]);
        let w = Subspace::span(f, 3, [vec![f.zero(), f.one(), f.one()]]);
        let v = Subspace::span(f, 3, [unit_vector(f, 3, 1), unit_vector(f, 3, 2)]);
        assert_eq!(u.sum(&w).dim(), 3);
        assert_eq!(u.intersection(&v).dim(), 1);
        assert!(u.intersection(&v).contains(&unit_vector(f, 3, 1)));
        assert!(!u.contains(&unit_vector(f, 3, 2)));
        assert_eq!(u.complement_coordinates(), alloc::vec![2]);
    }

    #[test]
    fn column_basis_restricts_invariant_maps() {
        let f = q();
        // span{e0 + e1} is invariant under the swap
        let e = Matrix::from_i64(f, &[&[1], &[1]]);
        let swap = Matrix::from_i64(f, &[&[0, 1], &[1, 0]]);
        let cb = ColumnBasis::new(e);
        assert!(cb.restrict(&swap).is_identity());
    }

    #[test]
    fn nilpotency() {
        let f = q();
        let j = Matrix::from_i64(f, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert!(j.is_nilpotent());
        assert!(!Matrix::identity(f, 3).is_nilpotent());
    }
}
