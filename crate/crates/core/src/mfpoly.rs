//! Multivariate polynomials and polynomial matrices over a field, with a
//! check for matrix factorizations. All identities are tested in the free
//! polynomial ring.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

/// Sparse polynomial in a declared, ordered list of variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    field: Field,
    vars: Arc<[String]>,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl Poly {
    pub fn zero(field: Field, vars: &[&str]) -> Self {
        Poly { field, vars: vars.iter().map(|v| String::from(*v)).collect(), terms: BTreeMap::new() }
    }

    fn empty_like(&self) -> Self {
        Poly { field: self.field, vars: self.vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant_like(&self, c: Scalar) -> Self {
        let mut p = self.empty_like();
        p.add_term(vec![0; self.vars.len()], c);
        p
    }

    pub fn constant(field: Field, vars: &[&str], c: Scalar) -> Self {
        Self::zero(field, vars).constant_like(c)
    }

    pub fn var(field: Field, vars: &[&str], name: &str) -> Result<Self, Error> {
        let i = vars.iter().position(|v| *v == name).ok_or_else(|| Error::UnknownVariable(name.into()))?;
        let mut exp = vec![0; vars.len()];
        exp[i] = 1;
        Self::from_terms(field, vars, vec![(exp, field.one())])
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms(field: Field, vars: &[&str], terms: Vec<(Vec<u32>, Scalar)>) -> Result<Self, Error> {
        let mut p = Self::zero(field, vars);
        for (exp, c) in terms {
            if exp.len() != vars.len() {
                return Err(Error::ShapeMismatch(format!(
                    "exponent of length {} for {} variables",
                    exp.len(),
                    vars.len()
                )));
            }
            if c.field() != field {
                return Err(Error::ShapeMismatch("coefficient over another field".into()));
            }
            p.add_term(exp, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exp: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn check(&self, other: &Poly) -> Result<(), Error> {
        if self.vars != other.vars || self.field != other.field {
            return Err(Error::ShapeMismatch(format!(
                "variables {:?} vs {:?}",
                self.vars, other.vars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly, Error> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Poly {
        let mut out = self.empty_like();
        out.terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        out
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly, Error> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let mut out = self.empty_like();
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect();
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly, Error> {
        self.check(other)?;
        let mut out = self.empty_like();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exp = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exp, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Substitutes the assigned variables; the variable list is unchanged.
    pub fn specialize(&self, assignments: &[(&str, Scalar)]) -> Result<Poly, Error> {
        let mut idx = Vec::with_capacity(assignments.len());
        for (name, v) in assignments {
            let i = self
                .vars
                .iter()
                .position(|x| x == name)
                .ok_or_else(|| Error::UnknownVariable(String::from(*name)))?;
            idx.push((i, v));
        }
        let mut out = self.empty_like();
        for (e, c) in &self.terms {
            let mut exp = e.clone();
            let mut coef = c.clone();
            for &(i, v) in &idx {
                coef = &coef * &v.pow(exp[i] as u64);
                exp[i] = 0;
            }
            out.add_term(exp, coef);
        }
        Ok(out)
    }

    /// The constant term, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.field.zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.iter().all(|&a| a == 0).then(|| c.clone())
            }
            _ => None,
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(self.vars.iter())
                .filter(|(a, _)| **a > 0)
                .map(|(a, v)| if *a == 1 { v.clone() } else { format!("{v}^{a}") })
                .collect();
            let coef = format!("{c}");
            let (neg, mag) = match coef.strip_prefix('-') {
                Some(rest) => (true, String::from(rest)),
                None => (false, coef),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            match (mono.is_empty(), mag.as_str()) {
                (true, _) => write!(f, "{mag}")?,
                (false, "1") => write!(f, "{}", mono.join("*"))?,
                (false, _) => write!(f, "{mag}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Rectangular matrix of polynomials sharing one variable list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly>) -> Result<Self, Error> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(first) = entries.first() {
            for e in &entries[1..] {
                first.check(e)?;
            }
        }
        Ok(PolyMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// `c * I` in the variables of `like`.
    pub fn scalar_identity(size: usize, c: &Poly) -> Self {
        let zero = c.empty_like();
        let entries = (0..size * size).map(|k| if k / size == k % size { c.clone() } else { zero.clone() }).collect();
        PolyMatrix { rows: size, cols: size, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, Error> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let Some(proto) = self.entries.first().or(other.entries.first()) else {
            return Ok(PolyMatrix { rows: self.rows, cols: other.cols, entries: Vec::new() });
        };
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = proto.empty_like();
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        Ok(PolyMatrix { rows: self.rows, cols: other.cols, entries })
    }

    pub fn specialize(&self, assignments: &[(&str, Scalar)]) -> Result<PolyMatrix, Error> {
        let entries = self.entries.iter().map(|p| p.specialize(assignments)).collect::<Result<_, _>>()?;
        Ok(PolyMatrix { rows: self.rows, cols: self.cols, entries })
    }

    /// The scalar matrix, when every entry is constant.
    pub fn to_scalar_matrix(&self) -> Option<Matrix> {
        let field = self.entries.first()?.field();
        let mut m = Matrix::zeros(field, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self.get(i, j).as_constant()?;
            }
        }
        Some(m)
    }
}

/// `phi psi = psi phi = f I` in the polynomial ring.
pub fn verify_matrix_factorization(phi: &PolyMatrix, psi: &PolyMatrix, f: &Poly) -> Result<bool, Error> {
    let n = phi.rows;
    if phi.cols != n || psi.rows != n || psi.cols != n {
        return Err(Error::ShapeMismatch(format!(
            "expected square matrices of equal size, got {}x{} and {}x{}",
            phi.rows, phi.cols, psi.rows, psi.cols
        )));
    }
    if let Some(e) = phi.entries.first() {
        e.check(f)?;
    }
    let target = PolyMatrix::scalar_identity(n, f);
    Ok(phi.mul(psi)? == target && psi.mul(phi)? == target)
}

/// The cusp pair over `Q[x, y, t]` (variables in that order): the classical
/// `(phi, psi)` and its deformation `(Phi, Psi)`.
pub mod cusp {
    use super::*;

    pub const VARS: [&str; 3] = ["x", "y", "t"];

    fn p(terms: &[([u32; 3], i64)]) -> Poly {
        let f = Field::Rational;
        Poly::from_terms(f, &VARS, terms.iter().map(|(e, c)| (e.to_vec(), f.from_i64(*c))).collect())
            .expect("well-formed")
    }

    fn m(entries: [Poly; 4]) -> PolyMatrix {
        PolyMatrix::new(2, 2, entries.to_vec()).expect("2x2")
    }

    const X: [u32; 3] = [1, 0, 0];
    const Y: [u32; 3] = [0, 1, 0];
    const X2: [u32; 3] = [2, 0, 0];
    const XT: [u32; 3] = [1, 0, 1];
    const T2: [u32; 3] = [0, 0, 2];

    pub fn phi() -> PolyMatrix {
        m([p(&[(Y, 1)]), p(&[(X, 1)]), p(&[(X2, 1)]), p(&[(Y, 1)])])
    }

    pub fn psi() -> PolyMatrix {
        m([p(&[(Y, 1)]), p(&[(X, -1)]), p(&[(X2, -1)]), p(&[(Y, 1)])])
    }

    pub fn big_phi() -> PolyMatrix {
        m([p(&[(Y, 1), (XT, -1)]), p(&[(X, 1), (T2, -1)]), p(&[(X2, 1)]), p(&[(Y, 1), (XT, 1)])])
    }

    pub fn big_psi() -> PolyMatrix {
        m([p(&[(Y, 1), (XT, 1)]), p(&[(X, -1), (T2, 1)]), p(&[(X2, -1)]), p(&[(Y, 1), (XT, -1)])])
    }

    /// The polynomial both pairs factor: `y^2 - x^3`, i.e. `-(x^3 - y^2)`.
    pub fn f() -> Poly {
        p(&[([0, 2, 0], 1), ([3, 0, 0], -1)])
    }

    /// `x^3 - y^2` as written in the example.
    pub fn f_as_written() -> Poly {
        f().neg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cusp_sign_fixture() {
        let f = cusp::f();
        assert_eq!(format!("{f}"), "-x^3 + y^2");
        assert!(verify_matrix_factorization(&cusp::phi(), &cusp::psi(), &f).unwrap());
        assert!(!verify_matrix_factorization(&cusp::phi(), &cusp::psi(), &cusp::f_as_written()).unwrap());
        assert!(verify_matrix_factorization(&cusp::big_phi(), &cusp::big_psi(), &f).unwrap());
        assert!(
            verify_matrix_factorization(&cusp::big_psi(), &cusp::big_phi(), &f).unwrap(),
            "symmetric in the two factors"
        );
    }

    #[test]
    fn specialization_at_zero() {
        let zero = Field::Rational.zero();
        assert_eq!(cusp::big_phi().specialize(&[("t", zero.clone())]).unwrap(), cusp::phi());
        assert_eq!(cusp::big_psi().specialize(&[("t", zero)]).unwrap(), cusp::psi());
        assert_eq!(cusp::big_phi().specialize(&[]).unwrap(), cusp::big_phi());
        assert!(matches!(
            cusp::phi().specialize(&[("z", Field::Rational.one())]),
            Err(Error::UnknownVariable(_))
        ));
        let f = Field::Rational;
        let full = cusp::big_phi()
            .specialize(&[("x", f.from_i64(1)), ("y", f.from_i64(2)), ("t", f.from_i64(3))])
            .unwrap()
            .to_scalar_matrix()
            .unwrap();
        assert_eq!(full[(0, 0)], f.from_i64(-1));
        assert_eq!(full[(0, 1)], f.from_i64(-8));
        assert_eq!(full[(1, 1)], f.from_i64(5));
    }

    #[test]
    fn unit_factorization_and_shapes() {
        let f = Field::Rational;
        let one = Poly::constant(f, &["x"], f.one());
        let id = PolyMatrix::scalar_identity(2, &one);
        assert!(verify_matrix_factorization(&id, &id, &one).unwrap());
        let rect = PolyMatrix::new(1, 2, vec![one.clone(), one.clone()]).unwrap();
        assert!(matches!(verify_matrix_factorization(&rect, &id, &one), Err(Error::ShapeMismatch(_))));
        assert!(PolyMatrix::new(1, 2, vec![one]).is_err());
    }

    fn random_poly(rng: &mut ChaCha8Rng) -> Poly {
        let f = Field::Rational;
        let terms = (0..rng.random_range(0..4))
            .map(|_| (vec![rng.random_range(0..3), rng.random_range(0..3)], f.random(rng, 5)))
            .collect();
        Poly::from_terms(f, &["x", "y"], terms).unwrap()
    }

    #[test]
    fn ring_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let (a, b, c) = (random_poly(&mut rng), random_poly(&mut rng), random_poly(&mut rng));
            assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            assert!(a.sub(&a).unwrap().is_zero());
        }
    }
}
