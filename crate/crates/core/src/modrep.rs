//! Finite-dimensional modules as matrix representations.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{same_algebra, FiniteAlgebra, Ideal};
use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::matrix::{is_zero_vector, unit_vector, ColumnBasis, Matrix, Subspace, Vector};

/// Random intertwiner trials before falling back to deterministic checks.
pub const ISO_RANDOM_TRIALS: usize = 32;
/// Largest module dimension for the exhaustive determinant search.
pub const ISO_EXHAUSTIVE_MAX_DIM: usize = 12;
/// Largest number of grid points the exhaustive search evaluates.
pub const ISO_EXHAUSTIVE_MAX_POINTS: u64 = 200_000;

/// A module over a [`FiniteAlgebra`]: one `n x n` matrix per basis element.
#[derive(Clone, Debug)]
pub struct ModuleRep {
    algebra: Arc<FiniteAlgebra>,
    dim: usize,
    actions: Vec<Matrix>,
    generator_actions: Vec<Matrix>,
}

impl ModuleRep {
    /// Checks that the unit acts as the identity and that
    /// `X_i X_j = sum_l c_ijl X_l`.
    pub fn new(algebra: Arc<FiniteAlgebra>, dim: usize, actions: Vec<Matrix>) -> Result<Self, Error> {
        let d = algebra.dim();
        if actions.len() != d {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for an algebra of dimension {d}",
                actions.len()
            )));
        }
        for (i, x) in actions.iter().enumerate() {
            if x.shape() != (dim, dim) {
                return Err(Error::InvalidModule(format!(
                    "action of e{i} has shape {:?}, expected ({dim}, {dim})",
                    x.shape()
                )));
            }
            if x.field() != algebra.field() {
                return Err(Error::InvalidModule(format!("action of e{i} is over the wrong field")));
            }
        }
        if !actions[algebra.unit_index()].is_identity() {
            return Err(Error::InvalidModule("the unit does not act as the identity".into()));
        }
        for i in 0..d {
            for j in i..d {
                let lhs = actions[i].mul(&actions[j]);
                let rhs = combination(algebra.field(), dim, &algebra.dense_product(i, j), &actions);
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "X_{i} X_{j} differs from the action of e{i}*e{j}"
                    )));
                }
            }
        }
        Ok(Self::new_unchecked(algebra, dim, actions))
    }

    /// Trusts the caller that the module equations hold.
    pub(crate) fn new_unchecked(algebra: Arc<FiniteAlgebra>, dim: usize, actions: Vec<Matrix>) -> Self {
        let generator_actions = algebra
            .generators()
            .iter()
            .map(|g| combination(algebra.field(), dim, g, &actions))
            .collect();
        ModuleRep {
            algebra,
            dim,
            actions,
            generator_actions,
        }
    }

    pub fn zero(algebra: &Arc<FiniteAlgebra>) -> Self {
        let f = algebra.field();
        let actions = vec![Matrix::zeros(f, 0, 0); algebra.dim()];
        Self::new_unchecked(algebra.clone(), 0, actions)
    }

    /// `A^rank`, with the copies stacked one after another.
    pub fn free_module(algebra: &Arc<FiniteAlgebra>, rank: usize) -> Self {
        let d = algebra.dim();
        let f = algebra.field();
        let actions = (0..d)
            .map(|i| {
                let l = algebra.left_mult_basis(i);
                let mut m = Matrix::zeros(f, d * rank, d * rank);
                for r in 0..rank {
                    m.set_block(r * d, r * d, &l);
                }
                m
            })
            .collect();
        Self::new_unchecked(algebra.clone(), d * rank, actions)
    }

    /// The residue field `k = A / m`.
    pub fn residue_field(algebra: &Arc<FiniteAlgebra>) -> Self {
        let f = algebra.field();
        let actions = (0..algebra.dim())
            .map(|i| {
                let mut m = Matrix::zeros(f, 1, 1);
                m[(0, 0)] = algebra.residue(&algebra.basis_element(i));
                m
            })
            .collect();
        Self::new_unchecked(algebra.clone(), 1, actions)
    }

    /// The cyclic module `A / I`.
    pub fn cyclic(ideal: &Ideal) -> Self {
        Self::free_module(ideal.algebra(), 1).quotient(ideal.space()).0
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.actions[i]
    }

    /// Actions of [`FiniteAlgebra::generators`]; they determine the module.
    pub fn generator_actions(&self) -> &[Matrix] {
        &self.generator_actions
    }

    /// Action of an arbitrary algebra element.
    pub fn act(&self, a: &[Scalar]) -> Matrix {
        combination(self.field(), self.dim, a, &self.actions)
    }

    pub fn same_as(&self, other: &ModuleRep) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.dim == other.dim && self.actions == other.actions
    }

    pub fn direct_sum(&self, other: &ModuleRep) -> Result<ModuleRep, Error> {
        self.check_same_algebra(other)?;
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        Ok(Self::new_unchecked(self.algebra.clone(), self.dim + other.dim, actions))
    }

    /// Direct sum of a list; the zero module for an empty list.
    pub fn direct_sum_all(algebra: &Arc<FiniteAlgebra>, parts: &[ModuleRep]) -> Result<ModuleRep, Error> {
        let mut acc = ModuleRep::zero(algebra);
        for p in parts {
            acc = acc.direct_sum(p)?;
        }
        Ok(acc)
    }

    pub(crate) fn check_same_algebra(&self, other: &ModuleRep) -> Result<(), Error> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// `m M` as a subspace of `k^n`.
    pub fn radical_submodule(&self) -> Subspace {
        let cols = self.generator_actions.iter().flat_map(|x| x.columns());
        Subspace::span(self.field(), self.dim, cols)
    }

    /// `nu(M) = dim M / mM`, the minimal number of generators.
    pub fn num_generators(&self) -> usize {
        self.dim - self.radical_submodule().dim()
    }

    /// Vectors whose classes form a basis of `M / mM`.
    pub fn minimal_generators(&self) -> Vec<Vector> {
        self.radical_submodule()
            .complement_coordinates()
            .into_iter()
            .map(|i| unit_vector(self.field(), self.dim, i))
            .collect()
    }

    /// `soc M = {v : m v = 0}`.
    pub fn socle(&self) -> Subspace {
        if self.dim == 0 {
            return Subspace::zero(self.field(), 0);
        }
        if self.generator_actions.is_empty() {
            return Subspace::full(self.field(), self.dim);
        }
        let mut stacked = self.generator_actions[0].clone();
        for x in &self.generator_actions[1..] {
            stacked = stacked.vstack(x);
        }
        Subspace::span(self.field(), self.dim, stacked.nullspace())
    }

    /// Submodule spanned by the columns of `embedding` (assumed invariant),
    /// in the coordinates of those columns.
    pub fn restrict(&self, embedding: Matrix) -> ModuleRep {
        let k = embedding.cols();
        if k == 0 {
            return ModuleRep::zero(&self.algebra);
        }
        let cb = ColumnBasis::new(embedding);
        let actions = self.actions.iter().map(|x| cb.restrict(x)).collect();
        Self::new_unchecked(self.algebra.clone(), k, actions)
    }

    /// `M / U` for an invariant subspace `U`, together with the projection
    /// matrix `k^n -> k^{n - dim U}`.
    pub fn quotient(&self, sub: &Subspace) -> (ModuleRep, Matrix) {
        let f = self.field();
        let keep = sub.complement_coordinates();
        let q = keep.len();
        let mut projection = Matrix::zeros(f, q, self.dim);
        for c in 0..self.dim {
            let col = sub.quotient_coordinates(&unit_vector(f, self.dim, c));
            for (r, x) in col.into_iter().enumerate() {
                projection[(r, c)] = x;
            }
        }
        let actions = self
            .actions
            .iter()
            .map(|x| {
                let cols: Vec<Vector> = keep
                    .iter()
                    .map(|&c| sub.quotient_coordinates(&x.column(c)))
                    .collect();
                Matrix::from_columns(f, q, &cols)
            })
            .collect();
        (Self::new_unchecked(self.algebra.clone(), q, actions), projection)
    }

    /// Checks that `t` is an `A`-linear map `self -> target`.
    pub fn is_homomorphism(&self, target: &ModuleRep, t: &Matrix) -> bool {
        t.shape() == (target.dim, self.dim)
            && self
                .generator_actions
                .iter()
                .zip(&target.generator_actions)
                .all(|(xm, xn)| t.mul(xm) == xn.mul(t))
    }

    /// Cover `A^nu -> M` sending the `j`-th basis copy of `1` to the `j`-th
    /// minimal generator; returns the `n x (nu d)` matrix and the generators.
    pub fn projective_cover(&self) -> (Matrix, Vec<Vector>) {
        let gens = self.minimal_generators();
        let d = self.algebra.dim();
        let mut cols = Vec::with_capacity(gens.len() * d);
        for g in &gens {
            for x in &self.actions {
                cols.push(x.mul_vec(g));
            }
        }
        (Matrix::from_columns(self.field(), self.dim, &cols), gens)
    }

    /// First syzygy, the kernel of the projective cover, as a submodule of
    /// `A^nu`; also returns its embedding.
    pub fn syzygy(&self) -> (ModuleRep, Matrix) {
        let (cover, gens) = self.projective_cover();
        let free_dim = gens.len() * self.algebra.dim();
        let kernel = cover.nullspace();
        let embedding = Matrix::from_columns(self.field(), free_dim, &kernel);
        let free = ModuleRep::free_module(&self.algebra, gens.len());
        (free.restrict(embedding.clone()), embedding)
    }
}

fn combination(f: Field, n: usize, coefs: &[Scalar], mats: &[Matrix]) -> Matrix {
    let mut out = Matrix::zeros(f, n, n);
    for (c, m) in coefs.iter().zip(mats) {
        if !c.is_zero() {
            out.add_scaled(c, m);
        }
    }
    out
}

/// A `k`-basis of `Hom_A(M, N)`.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub source_dim: usize,
    pub target_dim: usize,
    pub basis: Vec<Matrix>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `sum c_i T_i`.
    pub fn combine(&self, field: Field, coefs: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(field, self.target_dim, self.source_dim);
        for (c, t) in coefs.iter().zip(&self.basis) {
            if !c.is_zero() {
                out.add_scaled(c, t);
            }
        }
        out
    }
}

/// Solves `T X_g^M = X_g^N T` for the algebra generators `g`.
pub fn hom_space(m: &ModuleRep, n: &ModuleRep) -> Result<HomBasis, Error> {
    m.check_same_algebra(n)?;
    let f = m.field();
    let (a, b) = (m.dim, n.dim);
    let unknowns = a * b;
    let empty = HomBasis {
        source_dim: a,
        target_dim: b,
        basis: Vec::new(),
    };
    if unknowns == 0 {
        return Ok(empty);
    }
    let gens = m.generator_actions.len();
    if gens == 0 {
        // A = k: every linear map is A-linear.
        let basis = (0..unknowns)
            .map(|i| Matrix::from_vector(f, b, a, &unit_vector(f, unknowns, i)))
            .collect();
        return Ok(HomBasis { basis, ..empty });
    }
    // T[r][c] is unknown r * a + c; equation (g, r, c) is row (g * b + r) * a + c
    let mut sys = Matrix::zeros(f, gens * unknowns, unknowns);
    for (g, (xm, xn)) in m.generator_actions.iter().zip(&n.generator_actions).enumerate() {
        for r in 0..b {
            for c in 0..a {
                let row = (g * b + r) * a + c;
                for k in 0..a {
                    let v = &xm[(k, c)];
                    if !v.is_zero() {
                        sys[(row, r * a + k)] += v;
                    }
                }
                for k in 0..b {
                    let v = &xn[(r, k)];
                    if !v.is_zero() {
                        sys[(row, k * a + c)] -= v;
                    }
                }
            }
        }
    }
    let basis = sys
        .nullspace()
        .into_iter()
        .map(|v| Matrix::from_vector(f, b, a, &v))
        .collect();
    Ok(HomBasis { basis, ..empty })
}

/// Outcome of a completed isomorphism test.
#[derive(Clone, Debug)]
pub enum Isomorphism {
    /// An invertible intertwiner `T : M -> N`.
    Isomorphic(Matrix),
    /// Why no isomorphism exists.
    NotIsomorphic(String),
}

impl Isomorphism {
    pub fn holds(&self) -> bool {
        matches!(self, Isomorphism::Isomorphic(_))
    }
}

/// Cheap necessary conditions: ranks of powers of each generator action and
/// the dimensions of the radical layers.
pub fn rank_invariants_differ(m: &ModuleRep, n: &ModuleRep) -> Option<String> {
    if m.dim != n.dim {
        return Some(format!("dimensions differ: {} vs {}", m.dim, n.dim));
    }
    for (g, (xm, xn)) in m.generator_actions.iter().zip(&n.generator_actions).enumerate() {
        let (mut pm, mut pn) = (xm.clone(), xn.clone());
        for k in 1..=m.dim {
            let (rm, rn) = (pm.rank(), pn.rank());
            if rm != rn {
                return Some(format!("rank of generator {g} to the power {k}: {rm} vs {rn}"));
            }
            if rm == 0 {
                break;
            }
            pm = pm.mul(xm);
            pn = pn.mul(xn);
        }
    }
    let (lm, ln) = (radical_layers(m), radical_layers(n));
    if lm != ln {
        return Some(format!("radical layer dimensions differ: {lm:?} vs {ln:?}"));
    }
    None
}

/// `dim m^k M` for `k = 1, 2, ...` until zero.
pub fn radical_layers(m: &ModuleRep) -> Vec<usize> {
    let f = m.field();
    let mut layers = Vec::new();
    let mut current = Subspace::full(f, m.dim);
    loop {
        let next = Subspace::span(
            f,
            m.dim,
            current
                .basis()
                .iter()
                .flat_map(|v| m.generator_actions.iter().map(move |x| x.mul_vec(v))),
        );
        if next.dim() == current.dim() || next.is_zero() {
            layers.push(next.dim());
            return layers;
        }
        layers.push(next.dim());
        current = next;
    }
}

/// Decides whether `m` and `n` are isomorphic; positive answers carry an
/// invertible intertwiner.
pub fn is_isomorphic(m: &ModuleRep, n: &ModuleRep, seed: u64) -> Result<Isomorphism, Error> {
    m.check_same_algebra(n)?;
    if let Some(reason) = rank_invariants_differ(m, n) {
        return Ok(Isomorphism::NotIsomorphic(reason));
    }
    let f = m.field();
    if m.dim == 0 {
        return Ok(Isomorphism::Isomorphic(Matrix::zeros(f, 0, 0)));
    }
    let hom = hom_space(m, n)?;
    if hom.dim() == 0 {
        return Ok(Isomorphism::NotIsomorphic("Hom(M, N) is zero".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ISO_RANDOM_TRIALS {
        let coefs: Vec<Scalar> = (0..hom.dim()).map(|_| f.random(&mut rng, 1 << 20)).collect();
        let t = hom.combine(f, &coefs);
        if t.is_invertible() {
            return Ok(Isomorphism::Isomorphic(t));
        }
    }
    if let Some(reason) = structural_invariants_differ(m, n, hom.dim())? {
        return Ok(Isomorphism::NotIsomorphic(reason));
    }
    exhaustive_search(&hom, f, m.dim)
}

fn structural_invariants_differ(m: &ModuleRep, n: &ModuleRep, hom_mn: usize) -> Result<Option<String>, Error> {
    let end_m = hom_space(m, m)?.dim();
    let end_n = hom_space(n, n)?.dim();
    let hom_nm = hom_space(n, m)?.dim();
    if end_m != end_n || end_m != hom_mn || end_m != hom_nm {
        return Ok(Some(format!(
            "Hom dimensions differ: End(M) = {end_m}, End(N) = {end_n}, Hom(M,N) = {hom_mn}, Hom(N,M) = {hom_nm}"
        )));
    }
    let (sm, sn) = (m.socle().dim(), n.socle().dim());
    if sm != sn {
        return Ok(Some(format!("socle dimensions differ: {sm} vs {sn}")));
    }
    let (bm, bn) = (betti_numbers(m, 2), betti_numbers(n, 2));
    if bm != bn {
        return Ok(Some(format!("Betti numbers differ: {bm:?} vs {bn:?}")));
    }
    Ok(None)
}

/// Evaluates `det(sum c_i T_i)` on a grid `S^h` with `|S| = n + 1`. A
/// polynomial of degree at most `n` in each variable that vanishes on such a
/// grid is zero, so an all-zero sweep proves no intertwiner is invertible.
fn exhaustive_search(hom: &HomBasis, f: Field, n: usize) -> Result<Isomorphism, Error> {
    let h = hom.dim();
    if n > ISO_EXHAUSTIVE_MAX_DIM {
        return Err(Error::Inconclusive(format!(
            "no invertible intertwiner found; dimension {n} exceeds the exhaustive bound {ISO_EXHAUSTIVE_MAX_DIM}"
        )));
    }
    let points = (n as u64 + 1).checked_pow(h as u32).unwrap_or(u64::MAX);
    if points > ISO_EXHAUSTIVE_MAX_POINTS {
        return Err(Error::Inconclusive(format!(
            "no invertible intertwiner found; exhaustive grid has {points} points"
        )));
    }
    let Some(grid) = f.distinct_elements(n + 1) else {
        return Err(Error::Inconclusive(format!(
            "no invertible intertwiner found; {f} has fewer than {} elements",
            n + 1
        )));
    };
    let mut idx = vec![0usize; h];
    loop {
        let coefs: Vec<Scalar> = idx.iter().map(|&i| grid[i].clone()).collect();
        let t = hom.combine(f, &coefs);
        if t.is_invertible() {
            return Ok(Isomorphism::Isomorphic(t));
        }
        let mut pos = 0;
        loop {
            if pos == h {
                return Ok(Isomorphism::NotIsomorphic(
                    "determinant of the generic intertwiner vanishes identically".into(),
                ));
            }
            idx[pos] += 1;
            if idx[pos] <= n {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// A minimal free resolution `F_len -> ... -> F_0 -> L`.
#[derive(Clone, Debug)]
pub struct Resolution {
    algebra: Arc<FiniteAlgebra>,
    ranks: Vec<usize>,
    /// `differentials[i - 1]` is `d_i : F_i -> F_{i-1}` as a
    /// `ranks[i-1] x ranks[i]` array of algebra elements.
    differentials: Vec<Vec<Vec<Vector>>>,
    /// Images in `L` of the basis of `F_0`.
    augmentation: Vec<Vector>,
}

impl Resolution {
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn differential(&self, i: usize) -> &[Vec<Vector>] {
        &self.differentials[i - 1]
    }

    pub fn augmentation(&self) -> &[Vector] {
        &self.augmentation
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }

    pub fn length(&self) -> usize {
        self.ranks.len() - 1
    }
}

/// Resolves `m` up to `F_length`.
pub fn minimal_resolution(m: &ModuleRep, length: usize) -> Resolution {
    let alg = m.algebra.clone();
    let d = alg.dim();
    let augmentation = m.minimal_generators();
    let mut ranks = vec![augmentation.len()];
    let mut differentials = Vec::new();
    let mut current = m.clone();
    for _ in 0..length {
        let (syz, embedding) = current.syzygy();
        let prev_rank = *ranks.last().expect("nonempty");
        let gens = syz.minimal_generators();
        // a generator of the syzygy, pushed into F_{i-1} = A^{prev_rank}
        let d_i: Vec<Vec<Vector>> = (0..prev_rank)
            .map(|r| {
                gens.iter()
                    .map(|g| {
                        let v = embedding.mul_vec(g);
                        v[r * d..(r + 1) * d].to_vec()
                    })
                    .collect()
            })
            .collect();
        ranks.push(gens.len());
        differentials.push(d_i);
        current = syz;
    }
    Resolution {
        algebra: alg,
        ranks,
        differentials,
        augmentation,
    }
}

/// `beta_0, ..., beta_length`.
pub fn betti_numbers(m: &ModuleRep, length: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(length + 1);
    let mut current = m.clone();
    for i in 0..=length {
        let nu = current.num_generators();
        out.push(nu);
        if i < length {
            if nu == 0 {
                out.resize(length + 1, 0);
                break;
            }
            current = current.syzygy().0;
        }
    }
    out
}

/// Matrix of `Hom(F_i, M) -> Hom(F_{i+1}, M)`, `f -> f o d_{i+1}`, with
/// `Hom(F_i, M) = M^{rank_i}`.
fn cochain_map(res: &Resolution, m: &ModuleRep, i: usize) -> Matrix {
    let f = m.field();
    let n = m.dim;
    let d = res.differential(i + 1);
    let (src, tgt) = (res.ranks[i], res.ranks[i + 1]);
    let mut out = Matrix::zeros(f, tgt * n, src * n);
    for (r, row) in d.iter().enumerate() {
        for (s, a) in row.iter().enumerate() {
            if is_zero_vector(a) {
                continue;
            }
            out.set_block(s * n, r * n, &m.act(a));
        }
    }
    out
}

/// `dim Ext^i(L, M)` for `i = 0..=depth`, given a resolution of `L` of length
/// at least `depth + 1`.
pub fn ext_dimensions(res: &Resolution, m: &ModuleRep, depth: usize) -> Result<Vec<usize>, Error> {
    if !same_algebra(res.algebra(), m.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    assert!(res.length() > depth, "resolution too short");
    let maps: Vec<Matrix> = (0..=depth).map(|i| cochain_map(res, m, i)).collect();
    let n = m.dim;
    Ok((0..=depth)
        .map(|i| {
            let cochains = res.ranks[i] * n;
            let kernel = cochains - maps[i].rank();
            let image = if i == 0 { 0 } else { maps[i - 1].rank() };
            kernel - image
        })
        .collect())
}

/// Bass numbers `mu^i(M) = dim Ext^i(k, M)` for `i = 0..=depth`.
pub fn bass_numbers(m: &ModuleRep, depth: usize) -> Vec<usize> {
    let k = ModuleRep::residue_field(m.algebra());
    let res = minimal_resolution(&k, depth + 1);
    ext_dimensions(&res, m, depth).expect("same algebra")
}

/// One line of an [`InvariantReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantCheck {
    pub name: String,
    pub left: usize,
    pub right: usize,
    /// `true` for `left == right`, `false` for `left <= right`.
    pub equality: bool,
    pub pass: bool,
}

/// Necessary conditions for `M` to degenerate to `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub checks: Vec<InvariantCheck>,
}

impl InvariantReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&InvariantCheck> {
        self.checks.iter().find(|c| !c.pass)
    }
}

/// Length, generator count, Betti and Bass numbers up to `depth`.
pub fn invariant_battery(m: &ModuleRep, n: &ModuleRep, depth: usize) -> Result<InvariantReport, Error> {
    m.check_same_algebra(n)?;
    let mut checks = Vec::new();
    let mut push = |name: String, left: usize, right: usize, equality: bool| {
        let pass = if equality { left == right } else { left <= right };
        checks.push(InvariantCheck {
            name,
            left,
            right,
            equality,
            pass,
        });
    };
    push("length".into(), m.dim, n.dim, true);
    push("nu".into(), m.num_generators(), n.num_generators(), false);
    let (bm, bn) = (betti_numbers(m, depth), betti_numbers(n, depth));
    for i in 0..=depth {
        push(format!("beta_{i}"), bm[i], bn[i], false);
    }
    let (mm, mn) = (bass_numbers(m, depth), bass_numbers(n, depth));
    for i in 0..=depth {
        push(format!("mu_{i}"), mm[i], mn[i], false);
    }
    Ok(InvariantReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{monomial_quotient, truncated_polynomial};

    fn q() -> Field {
        Field::Rational
    }

    fn dual_numbers() -> Arc<FiniteAlgebra> {
        Arc::new(truncated_polynomial(q(), 2))
    }

    fn riedtmann() -> Arc<FiniteAlgebra> {
        Arc::new(monomial_quotient(q(), &["x", "y"], &[2, 2]).unwrap())
    }

    /// `R/(x - lambda y)`.
    fn m_lambda(a: &Arc<FiniteAlgebra>, lambda: i64) -> ModuleRep {
        let mut g = a.basis_element(1);
        g[2] = q().from_i64(-lambda);
        ModuleRep::cyclic(&Ideal::generated_by(a, &[g]))
    }

    #[test]
    fn free_modules() {
        let a = dual_numbers();
        let r = ModuleRep::free_module(&a, 1);
        assert_eq!(r.dim(), 2);
        assert_eq!(r.action(1), &Matrix::from_i64(q(), &[&[0, 0], &[1, 0]]));
        assert!(ModuleRep::free_module(&a, 0).is_zero());
        let b = riedtmann();
        let r = ModuleRep::free_module(&b, 1);
        assert_eq!(r.action(1), &b.left_mult_basis(1));
        // the checked constructor accepts it
        ModuleRep::new(b.clone(), 4, r.actions().to_vec()).unwrap();
    }

    #[test]
    fn rejects_bad_actions() {
        let a = dual_numbers();
        let bad = vec![Matrix::identity(q(), 2), Matrix::identity(q(), 2)];
        assert!(ModuleRep::new(a.clone(), 2, bad).is_err());
        let bad_unit = vec![Matrix::zeros(q(), 1, 1), Matrix::zeros(q(), 1, 1)];
        assert!(ModuleRep::new(a, 1, bad_unit).is_err());
    }

    #[test]
    fn hom_dimensions() {
        let a = dual_numbers();
        let k = ModuleRep::residue_field(&a);
        let r = ModuleRep::free_module(&a, 1);
        assert_eq!(hom_space(&k, &k).unwrap().dim(), 1);
        assert_eq!(hom_space(&r, &k).unwrap().dim(), 1);
        let b = riedtmann();
        let (m1, m2) = (m_lambda(&b, 1), m_lambda(&b, 2));
        assert_eq!(m1.dim(), 2);
        assert_eq!(hom_space(&m1, &m2).unwrap().dim(), 1);
    }

    #[test]
    fn isomorphism_examples() {
        let a = dual_numbers();
        let r = ModuleRep::free_module(&a, 1);
        let k = ModuleRep::residue_field(&a);
        let kk = k.direct_sum(&k).unwrap();
        match is_isomorphic(&r, &r, 1).unwrap() {
            Isomorphism::Isomorphic(t) => assert!(r.is_homomorphism(&r, &t) && t.is_invertible()),
            other => panic!("{other:?}"),
        }
        assert!(!is_isomorphic(&r, &kk, 1).unwrap().holds());
        let b = riedtmann();
        let (m1, m2) = (m_lambda(&b, 1), m_lambda(&b, 2));
        assert!(!is_isomorphic(&m1, &m2, 7).unwrap().holds());
        assert!(is_isomorphic(&m1, &m_lambda(&b, 1), 7).unwrap().holds());
    }

    #[test]
    fn exhaustive_fallback_refutes() {
        // M_1 and M_2 pass the rank filter; the random stage cannot succeed
        // and the deterministic stages must refute.
        let b = riedtmann();
        let (m1, m2) = (m_lambda(&b, 1), m_lambda(&b, 2));
        assert!(rank_invariants_differ(&m1, &m2).is_none());
        let hom = hom_space(&m1, &m2).unwrap();
        assert!(hom.basis.iter().all(|t| !t.is_invertible()));
        match exhaustive_search(&hom, q(), 2).unwrap() {
            Isomorphism::NotIsomorphic(_) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn betti_examples() {
        let a = dual_numbers();
        assert_eq!(betti_numbers(&ModuleRep::free_module(&a, 1), 3), vec![1, 0, 0, 0]);
        assert_eq!(betti_numbers(&ModuleRep::residue_field(&a), 4), vec![1, 1, 1, 1, 1]);
        let b = riedtmann();
        assert_eq!(betti_numbers(&ModuleRep::residue_field(&b), 4), vec![1, 2, 3, 4, 5]);
        assert_eq!(betti_numbers(&ModuleRep::zero(&b), 2), vec![0, 0, 0]);
    }

    #[test]
    fn resolution_differentials_compose_to_zero() {
        let b = riedtmann();
        let k = ModuleRep::residue_field(&b);
        let res = minimal_resolution(&k, 3);
        assert_eq!(res.ranks(), &[1, 2, 3, 4]);
        for i in 1..3 {
            let (di, dj) = (res.differential(i), res.differential(i + 1));
            for r in 0..res.ranks()[i - 1] {
                for c in 0..res.ranks()[i + 1] {
                    let mut s = b.zero();
                    for (mid, row) in dj.iter().enumerate() {
                        s = b.add(&s, &b.mul(&di[r][mid], &row[c]));
                    }
                    assert!(is_zero_vector(&s));
                }
            }
        }
    }

    #[test]
    fn bass_numbers_of_gorenstein_ring() {
        // A self-injective ring has mu^0(A) = 1 and mu^i(A) = 0 for i > 0.
        let b = riedtmann();
        assert_eq!(bass_numbers(&ModuleRep::free_module(&b, 1), 2), vec![1, 0, 0]);
        let a = dual_numbers();
        assert_eq!(bass_numbers(&ModuleRep::residue_field(&a), 2), vec![1, 1, 1]);
    }

    #[test]
    fn battery_examples() {
        let a = dual_numbers();
        let r = ModuleRep::free_module(&a, 1);
        let k = ModuleRep::residue_field(&a);
        let kk = k.direct_sum(&k).unwrap();
        assert!(invariant_battery(&r, &r, 2).unwrap().all_pass());
        assert!(invariant_battery(&r, &kk, 2).unwrap().all_pass());
        let rev = invariant_battery(&kk, &r, 2).unwrap();
        assert_eq!(rev.first_failure().unwrap().name, "nu");
    }

    #[test]
    fn quotient_and_restriction_are_modules() {
        let b = riedtmann();
        let m = m_lambda(&b, 3);
        ModuleRep::new(b.clone(), m.dim(), m.actions().to_vec()).unwrap();
        let (syz, _) = m.syzygy();
        ModuleRep::new(b, syz.dim(), syz.actions().to_vec()).unwrap();
    }
}
