//! Finite-dimensional commutative local algebras given by structure constants,
//! and their ideals.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::matrix::{combine, is_zero_vector, unit_vector, zero_vector, Matrix, Subspace, Vector};

pub const DEFAULT_DIMENSION_CAP: usize = 4096;

type SparseVec = Vec<(usize, Scalar)>;

/// A commutative local `k`-algebra of finite dimension with residue field `k`.
///
/// Elements are coordinate vectors in the fixed basis `e_0, ..., e_{d-1}`;
/// `e_unit` is the identity.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    field: Field,
    dim: usize,
    basis_names: Vec<String>,
    unit: usize,
    // products[i * dim + j] = e_i e_j, sparse
    products: Vec<SparseVec>,
    residue: Vector,
    radical: Subspace,
    generators: Vec<Vector>,
}

fn to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

impl FiniteAlgebra {
    /// Validates a dense table `table[i][j]` = coordinates of `e_i e_j`.
    pub fn new(
        field: Field,
        basis_names: Vec<String>,
        unit: usize,
        table: Vec<Vec<Vector>>,
    ) -> Result<Self, Error> {
        let d = table.len();
        if d == 0 {
            return Err(Error::InvalidTable("dimension must be at least 1".into()));
        }
        if basis_names.len() != d {
            return Err(Error::InvalidTable(format!(
                "{} basis names for dimension {d}",
                basis_names.len()
            )));
        }
        if unit >= d {
            return Err(Error::InvalidTable(format!("unit index {unit} out of range")));
        }
        let mut products = Vec::with_capacity(d * d);
        for (i, row) in table.iter().enumerate() {
            if row.len() != d {
                return Err(Error::InvalidTable(format!("row {i} has {} entries", row.len())));
            }
            for (j, v) in row.iter().enumerate() {
                if v.len() != d {
                    return Err(Error::InvalidTable(format!(
                        "product e{i}*e{j} has {} coordinates",
                        v.len()
                    )));
                }
                if v.iter().any(|x| x.field() != field) {
                    return Err(Error::InvalidTable(format!(
                        "product e{i}*e{j} has entries outside {field}"
                    )));
                }
                products.push(to_sparse(v));
            }
        }
        let alg = Self::check_axioms(field, basis_names, unit, products)?;
        alg.finish()
    }

    /// Validates the ring axioms, leaving locality to [`Self::finish`].
    fn check_axioms(
        field: Field,
        basis_names: Vec<String>,
        unit: usize,
        products: Vec<SparseVec>,
    ) -> Result<Self, Error> {
        let d = basis_names.len();
        let alg = FiniteAlgebra {
            field,
            dim: d,
            basis_names,
            unit,
            products,
            residue: Vec::new(),
            radical: Subspace::zero(field, d),
            generators: Vec::new(),
        };
        for i in 0..d {
            for j in i + 1..d {
                let a = alg.dense_product(i, j);
                let b = alg.dense_product(j, i);
                if let Some(l) = (0..d).find(|&l| a[l] != b[l]) {
                    return Err(Error::NonCommutative { i, j, l });
                }
            }
        }
        for j in 0..d {
            if alg.dense_product(unit, j) != unit_vector(field, d, j) {
                return Err(Error::NoUnit { unit, j });
            }
        }
        for i in 0..d {
            for j in 0..d {
                let ij = alg.dense_product(i, j);
                for m in 0..d {
                    let lhs = alg.mul(&ij, &unit_vector(field, d, m));
                    let jm = alg.dense_product(j, m);
                    let rhs = alg.mul(&unit_vector(field, d, i), &jm);
                    if lhs != rhs {
                        return Err(Error::NonAssociative { i, j, m });
                    }
                }
            }
        }
        Ok(alg)
    }

    /// Computes the radical and residue character; rejects non-local input.
    fn finish(mut self) -> Result<Self, Error> {
        let (radical, residue) = match self.field {
            Field::Rational => self.radical_by_trace_form()?,
            Field::Prime(p) => self.radical_by_frobenius(p)?,
        };
        self.radical = radical;
        self.residue = residue;
        self.generators = self.compute_generators();
        Ok(self)
    }

    /// Kernel of the trace form `(a, b) -> tr(L_{ab})`; valid in characteristic 0.
    fn radical_by_trace_form(&self) -> Result<(Subspace, Vector), Error> {
        let d = self.dim;
        let f = self.field;
        // tr(L_{e_k}) = sum_l c_{k l l}
        let traces: Vec<Scalar> = (0..d)
            .map(|k| {
                let mut t = f.zero();
                for l in 0..d {
                    for (idx, c) in &self.products[k * d + l] {
                        if *idx == l {
                            t += c;
                        }
                    }
                }
                t
            })
            .collect();
        let gram = Matrix::from_fn(f, d, d, |i, j| {
            let mut s = f.zero();
            for (k, c) in &self.products[i * d + j] {
                s += &(c * &traces[*k]);
            }
            s
        });
        let radical = Subspace::span(f, d, gram.nullspace());
        if radical.dim() + 1 != d {
            return Err(Error::NotLocal(format!(
                "radical has dimension {}, expected {}",
                radical.dim(),
                d - 1
            )));
        }
        let residue = self.residue_from_radical(&radical);
        Ok((radical, residue))
    }

    /// In characteristic `p` with residue field `F_p`, `a^q` is the scalar
    /// `chi(a)` once `q = p^k >= dim`.
    fn radical_by_frobenius(&self, p: u64) -> Result<(Subspace, Vector), Error> {
        let d = self.dim;
        let f = self.field;
        let one = self.one();
        let mut residue = Vec::with_capacity(d);
        let mut nilpotents = Vec::new();
        for i in 0..d {
            let mut x = unit_vector(f, d, i);
            let mut q: u128 = 1;
            while q < d as u128 {
                x = self.pow(&x, p);
                q *= p as u128;
            }
            let lambda = x[self.unit].clone();
            let scalar = one.iter().map(|c| c * &lambda).collect::<Vector>();
            if x != scalar {
                return Err(Error::NotLocal(format!(
                    "e{i} raised to the {q}th power is not a scalar"
                )));
            }
            if i != self.unit {
                let mut n = unit_vector(f, d, i);
                n[self.unit] -= &lambda;
                nilpotents.push(n);
            }
            residue.push(lambda);
        }
        Ok((Subspace::span(f, d, nilpotents), residue))
    }

    fn residue_from_radical(&self, radical: &Subspace) -> Vector {
        let r1 = radical.reduce(&self.one());
        let pos = r1.iter().position(|x| !x.is_zero()).expect("1 is not in the radical");
        (0..self.dim)
            .map(|i| {
                let ri = radical.reduce(&unit_vector(self.field, self.dim, i));
                &ri[pos] / &r1[pos]
            })
            .collect()
    }

    /// Lifts of a basis of `m / m^2`.
    fn compute_generators(&self) -> Vec<Vector> {
        let rad = self.radical.basis();
        let mut square = Vec::new();
        for a in rad {
            for b in rad {
                let p = self.mul(a, b);
                if !is_zero_vector(&p) {
                    square.push(p);
                }
            }
        }
        let mut span = Subspace::span(self.field, self.dim, square);
        let mut gens = Vec::new();
        for v in rad {
            if !span.contains(v) {
                gens.push(v.clone());
                span = span.sum(&Subspace::span(self.field, self.dim, [v.clone()]));
            }
        }
        gens
    }

    /// The field `k` itself as a one-dimensional algebra.
    pub fn base_field(field: Field) -> Self {
        Self::new(field, vec!["1".into()], 0, vec![vec![vec![field.one()]]]).expect("k is a valid algebra")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    /// Coordinates of `e_i e_j`.
    pub fn dense_product(&self, i: usize, j: usize) -> Vector {
        let mut v = zero_vector(self.field, self.dim);
        for (l, c) in &self.products[i * self.dim + j] {
            v[*l] = c.clone();
        }
        v
    }

    /// Dense table, `table[i][j]` = coordinates of `e_i e_j`.
    pub fn table(&self) -> Vec<Vec<Vector>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.dense_product(i, j)).collect())
            .collect()
    }

    pub fn one(&self) -> Vector {
        unit_vector(self.field, self.dim, self.unit)
    }

    pub fn zero(&self) -> Vector {
        zero_vector(self.field, self.dim)
    }

    pub fn basis_element(&self, i: usize) -> Vector {
        unit_vector(self.field, self.dim, i)
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let d = self.dim;
        let mut out = zero_vector(self.field, d);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai * bj;
                for (l, c) in &self.products[i * d + j] {
                    out[*l] += &(&ab * c);
                }
            }
        }
        out
    }

    pub fn add(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(&self, s: &Scalar, a: &[Scalar]) -> Vector {
        a.iter().map(|x| s * x).collect()
    }

    pub fn pow(&self, a: &[Scalar], mut e: u64) -> Vector {
        let mut acc = self.one();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Matrix of `x -> a x` in the standard basis.
    pub fn left_mult(&self, a: &[Scalar]) -> Matrix {
        let d = self.dim;
        let mut m = Matrix::zeros(self.field, d, d);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for l in 0..d {
                for (r, c) in &self.products[i * d + l] {
                    m[(*r, l)] += &(ai * c);
                }
            }
        }
        m
    }

    pub fn left_mult_basis(&self, i: usize) -> Matrix {
        let d = self.dim;
        let mut m = Matrix::zeros(self.field, d, d);
        for l in 0..d {
            for (r, c) in &self.products[i * d + l] {
                m[(*r, l)] = c.clone();
            }
        }
        m
    }

    /// The residue character `chi : A -> k`.
    pub fn residue(&self, a: &[Scalar]) -> Scalar {
        let mut s = self.field.zero();
        for (x, c) in a.iter().zip(&self.residue) {
            if !x.is_zero() {
                s += &(x * c);
            }
        }
        s
    }

    pub fn is_unit(&self, a: &[Scalar]) -> bool {
        !self.residue(a).is_zero()
    }

    pub fn inverse(&self, a: &[Scalar]) -> Option<Vector> {
        if !self.is_unit(a) {
            return None;
        }
        self.left_mult(a).solve(&self.one())
    }

    /// The maximal ideal as a subspace.
    pub fn radical_space(&self) -> &Subspace {
        &self.radical
    }

    /// Lifts of a basis of `m / m^2`; they generate `m` as an ideal and, with
    /// the unit, generate `A` as an algebra.
    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    /// `ann(m)`.
    pub fn socle(&self) -> Subspace {
        let d = self.dim;
        if self.generators.is_empty() {
            return Subspace::full(self.field, d);
        }
        let mut stacked = self.left_mult(&self.generators[0]);
        for g in &self.generators[1..] {
            stacked = stacked.vstack(&self.left_mult(g));
        }
        Subspace::span(self.field, d, stacked.nullspace())
    }

    /// One-dimensional socle.
    pub fn is_gorenstein(&self) -> bool {
        self.socle().dim() == 1
    }

    /// Smallest `L` with `m^L = 0`.
    pub fn loewy_length(&self) -> usize {
        let mut power = Subspace::full(self.field, self.dim);
        let mut l = 0;
        while !power.is_zero() {
            let next: Vec<Vector> = power
                .basis()
                .iter()
                .flat_map(|v| self.generators.iter().map(move |g| (v, g)))
                .map(|(v, g)| self.mul(v, g))
                .collect();
            power = Subspace::span(self.field, self.dim, next);
            l += 1;
        }
        l
    }

    /// Structural equality (basis names are cosmetic).
    pub fn same_as(&self, other: &FiniteAlgebra) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.unit == other.unit
            && self.products == other.products
    }

    /// Random spot check of commutativity and associativity on element triples.
    pub fn spot_check_axioms(&self, trials: usize, seed: u64) -> Result<(), Error> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rand_elt = |rng: &mut ChaCha8Rng| -> Vector {
            (0..self.dim).map(|_| self.field.random(rng, 9)).collect()
        };
        for _ in 0..trials {
            let a = rand_elt(&mut rng);
            let b = rand_elt(&mut rng);
            let c = rand_elt(&mut rng);
            if self.mul(&a, &b) != self.mul(&b, &a) {
                return Err(Error::NonCommutative { i: 0, j: 0, l: 0 });
            }
            if self.mul(&self.mul(&a, &b), &c) != self.mul(&a, &self.mul(&b, &c)) {
                return Err(Error::NonAssociative { i: 0, j: 0, m: 0 });
            }
        }
        Ok(())
    }
}

impl PartialEq for FiniteAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for FiniteAlgebra {}

/// `true` when both handles denote the same algebra.
pub fn same_algebra(a: &Arc<FiniteAlgebra>, b: &Arc<FiniteAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || a.same_as(b)
}

/// `k[x_1, ..., x_r] / (x_1^{a_1}, ..., x_r^{a_r})` with the monomial basis in
/// degree-lexicographic order.
pub fn monomial_quotient(field: Field, vars: &[&str], exponents: &[u32]) -> Result<FiniteAlgebra, Error> {
    monomial_quotient_capped(field, vars, exponents, DEFAULT_DIMENSION_CAP)
}

pub fn monomial_quotient_capped(
    field: Field,
    vars: &[&str],
    exponents: &[u32],
    cap: usize,
) -> Result<FiniteAlgebra, Error> {
    if vars.is_empty() || vars.len() != exponents.len() || exponents.contains(&0) {
        return Err(Error::InvalidTable(
            "need at least one variable and one positive exponent per variable".into(),
        ));
    }
    let mut dim: usize = 1;
    for &a in exponents {
        dim = dim.saturating_mul(a as usize);
        if dim > cap {
            return Err(Error::DimensionOverflow { dim, cap });
        }
    }
    let mut monomials: Vec<Vec<u32>> = vec![Vec::new()];
    for &a in exponents {
        monomials = monomials
            .into_iter()
            .flat_map(|m| {
                (0..a).map(move |e| {
                    let mut m = m.clone();
                    m.push(e);
                    m
                })
            })
            .collect();
    }
    // total degree first, then higher powers of earlier variables first
    monomials.sort_by(|a, b| {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        da.cmp(&db).then_with(|| b.cmp(a))
    });
    let index: BTreeMap<Vec<u32>, usize> =
        monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let names = monomials.iter().map(|m| monomial_name(vars, m)).collect();
    let d = monomials.len();
    let mut products = Vec::with_capacity(d * d);
    for a in &monomials {
        for b in &monomials {
            let s: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if s.iter().zip(exponents).all(|(e, bound)| e < bound) {
                products.push(vec![(index[&s], field.one())]);
            } else {
                products.push(Vec::new());
            }
        }
    }
    let radical = Subspace::span(field, d, (1..d).map(|i| unit_vector(field, d, i)));
    let mut residue = zero_vector(field, d);
    residue[0] = field.one();
    let mut alg = FiniteAlgebra {
        field,
        dim: d,
        basis_names: names,
        unit: 0,
        products,
        residue,
        radical,
        generators: Vec::new(),
    };
    alg.generators = alg.compute_generators();
    Ok(alg)
}

fn monomial_name(vars: &[&str], exps: &[u32]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// `k[t]/(t^n)`.
pub fn truncated_polynomial(field: Field, n: u32) -> FiniteAlgebra {
    monomial_quotient(field, &["t"], &[n]).expect("k[t]/(t^n) is within the dimension cap")
}

/// An ideal of a [`FiniteAlgebra`], i.e. a multiplicatively closed subspace.
#[derive(Clone, Debug)]
pub struct Ideal {
    algebra: Arc<FiniteAlgebra>,
    space: Subspace,
}

impl Ideal {
    pub fn zero(algebra: &Arc<FiniteAlgebra>) -> Self {
        Ideal {
            space: Subspace::zero(algebra.field(), algebra.dim()),
            algebra: algebra.clone(),
        }
    }

    pub fn whole(algebra: &Arc<FiniteAlgebra>) -> Self {
        Ideal {
            space: Subspace::full(algebra.field(), algebra.dim()),
            algebra: algebra.clone(),
        }
    }

    /// The ideal generated by `elements`: the span of all `e_i g`.
    pub fn generated_by(algebra: &Arc<FiniteAlgebra>, elements: &[Vector]) -> Self {
        let d = algebra.dim();
        let mut spanning = Vec::new();
        for g in elements {
            if is_zero_vector(g) {
                continue;
            }
            for i in 0..d {
                let p = algebra.mul(&algebra.basis_element(i), g);
                if !is_zero_vector(&p) {
                    spanning.push(p);
                }
            }
        }
        Ideal {
            space: Subspace::span(algebra.field(), d, spanning),
            algebra: algebra.clone(),
        }
    }

    /// Checks closure under multiplication.
    pub fn from_subspace(algebra: &Arc<FiniteAlgebra>, space: Subspace) -> Result<Self, Error> {
        for v in space.basis() {
            for i in 0..algebra.dim() {
                if !space.contains(&algebra.mul(&algebra.basis_element(i), v)) {
                    return Err(Error::InvalidTable(format!(
                        "subspace is not closed under multiplication by e{i}"
                    )));
                }
            }
        }
        Ok(Ideal {
            algebra: algebra.clone(),
            space,
        })
    }

    /// The maximal ideal.
    pub fn maximal(algebra: &Arc<FiniteAlgebra>) -> Self {
        Ideal {
            space: algebra.radical_space().clone(),
            algebra: algebra.clone(),
        }
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn basis(&self) -> &[Vector] {
        self.space.basis()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }

    pub fn is_whole(&self) -> bool {
        self.space.dim() == self.algebra.dim()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.space.contains(v)
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool, Error> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(self.space.contains_subspace(&other.space))
    }

    /// A basis vector of `other` lying outside `self`, if any.
    pub fn first_escapee(&self, other: &Ideal) -> Option<Vector> {
        other.basis().iter().find(|v| !self.contains(v)).cloned()
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal, Error> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let mut gens = Vec::new();
        for a in self.basis() {
            for b in other.basis() {
                gens.push(self.algebra.mul(a, b));
            }
        }
        Ok(Ideal {
            space: Subspace::span(self.algebra.field(), self.algebra.dim(), gens),
            algebra: self.algebra.clone(),
        })
    }

    /// `f(I) B` for a quotient map `f : A -> B`.
    pub fn image(&self, q: &QuotientMap) -> Result<Ideal, Error> {
        if !same_algebra(&self.algebra, &q.source) {
            return Err(Error::AlgebraMismatch);
        }
        let imgs: Vec<Vector> = self.basis().iter().map(|v| q.project(v)).collect();
        Ok(Ideal::generated_by(&q.target, &imgs))
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.space == other.space
    }
}

/// The projection `A -> A/I` onto a quotient algebra.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    source: Arc<FiniteAlgebra>,
    target: Arc<FiniteAlgebra>,
    projection: Matrix,
    kept: Vec<usize>,
}

impl QuotientMap {
    /// Builds `A/I` using the images of a maximal independent set of basis
    /// elements (always including the unit) as its basis.
    pub fn new(ideal: &Ideal) -> Result<Self, Error> {
        let a = ideal.algebra().clone();
        if ideal.is_whole() {
            return Err(Error::InvalidTable("cannot quotient by the whole ring".into()));
        }
        let f = a.field();
        let d = a.dim();
        let mut kept = vec![a.unit_index()];
        let mut span = ideal.space().sum(&Subspace::span(f, d, [a.one()]));
        for i in 0..d {
            if i == a.unit_index() {
                continue;
            }
            let e = a.basis_element(i);
            if !span.contains(&e) {
                kept.push(i);
                span = span.sum(&Subspace::span(f, d, [e]));
            }
        }
        kept.sort_unstable();
        let cols: Vec<Vector> = kept
            .iter()
            .map(|&i| a.basis_element(i))
            .chain(ideal.basis().iter().cloned())
            .collect();
        let change = Matrix::from_columns(f, d, &cols).inverse().expect("basis of A");
        let projection = change.block(0, 0, kept.len(), d);
        let db = kept.len();
        let names = kept.iter().map(|&i| a.basis_names()[i].clone()).collect();
        let unit = kept.iter().position(|&i| i == a.unit_index()).expect("unit kept");
        let table = kept
            .iter()
            .map(|&i| {
                kept.iter()
                    .map(|&j| projection.mul_vec(&a.dense_product(i, j)))
                    .collect()
            })
            .collect();
        let _ = db;
        let target = Arc::new(FiniteAlgebra::new(f, names, unit, table)?);
        Ok(QuotientMap {
            source: a,
            target,
            projection,
            kept,
        })
    }

    pub fn source(&self) -> &Arc<FiniteAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteAlgebra> {
        &self.target
    }

    /// `dim B x dim A` matrix of the projection.
    pub fn matrix(&self) -> &Matrix {
        &self.projection
    }

    pub fn project(&self, v: &[Scalar]) -> Vector {
        self.projection.mul_vec(v)
    }

    /// A-basis indices whose images form the basis of `B`.
    pub fn kept_indices(&self) -> &[usize] {
        &self.kept
    }

    /// Lift of an element of `B` along the kept basis elements.
    pub fn lift(&self, b: &[Scalar]) -> Vector {
        let d = self.source.dim();
        let cols: Vec<Vector> = self.kept.iter().map(|&i| self.source.basis_element(i)).collect();
        combine(self.source.field(), d, b, &cols)
    }
}
