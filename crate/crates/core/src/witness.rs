//! Degeneration witnesses `0 -> Z -> M ⊕ Z -> N -> 0` with nilpotent `psi`,
//! the one-parameter families they induce, and a sampling search for them.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{same_algebra, FiniteAlgebra, Ideal};
use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::fitting::{fitting_test, FittingViolation};
use crate::matrix::{Matrix, Subspace};
use crate::modrep::{hom_space, invariant_battery, is_isomorphic, InvariantCheck, Isomorphism, ModuleRep};
use crate::upoly::{hermite_rows, PolyMatrix, UPoly};

pub const DEFAULT_SAMPLES_PER_Z: usize = 256;
pub const DEFAULT_FAMILY_TRIALS: usize = 5;
/// Largest number of `Z` candidates the default catalog lists.
pub const DEFAULT_CATALOG_CAP: usize = 64;

/// Data of an exact sequence `0 -> Z -(phi, psi)-> M ⊕ Z -beta-> N -> 0`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub z: ModuleRep,
    pub m: ModuleRep,
    pub n: ModuleRep,
    /// `dim M x dim Z`.
    pub phi: Matrix,
    /// `dim Z x dim Z`.
    pub psi: Matrix,
    /// `dim N x (dim M + dim Z)`.
    pub beta: Matrix,
}

/// First violated witness condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessFailure {
    NotHomomorphism(&'static str),
    NotInjective,
    NotExactAtMiddle,
    NotSurjective,
    PsiNotNilpotent,
}

impl fmt::Display for WitnessFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessFailure::NotHomomorphism(which) => write!(f, "NotHomomorphism: {which} is not A-linear"),
            WitnessFailure::NotInjective => write!(f, "NotInjective: (phi, psi) has a kernel"),
            WitnessFailure::NotExactAtMiddle => write!(f, "NotExactAtMiddle: ker beta differs from im (phi, psi)"),
            WitnessFailure::NotSurjective => write!(f, "NotSurjective: beta is not onto N"),
            WitnessFailure::PsiNotNilpotent => write!(f, "PsiNotNilpotent"),
        }
    }
}

impl WitnessFailure {
    /// Stable identifier used in reports.
    pub fn code(&self) -> &'static str {
        match self {
            WitnessFailure::NotHomomorphism(_) => "NotHomomorphism",
            WitnessFailure::NotInjective => "NotInjective",
            WitnessFailure::NotExactAtMiddle => "NotExactAtMiddle",
            WitnessFailure::NotSurjective => "NotSurjective",
            WitnessFailure::PsiNotNilpotent => "PsiNotNilpotent",
        }
    }
}

impl Witness {
    /// `M ⊕ Z`, with the `M` coordinates first.
    pub fn middle(&self) -> Result<ModuleRep, Error> {
        self.m.direct_sum(&self.z)
    }

    /// `(phi, psi)` stacked.
    pub fn inclusion(&self) -> Matrix {
        self.phi.vstack(&self.psi)
    }

    fn check_shapes(&self) -> Result<(), Error> {
        if !same_algebra(self.z.algebra(), self.m.algebra()) || !same_algebra(self.m.algebra(), self.n.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        let (z, m, n) = (self.z.dim(), self.m.dim(), self.n.dim());
        let expect = [
            ("phi", self.phi.shape(), (m, z)),
            ("psi", self.psi.shape(), (z, z)),
            ("beta", self.beta.shape(), (n, m + z)),
        ];
        for (name, got, want) in expect {
            if got != want {
                return Err(Error::ShapeMismatch(format!("{name} has shape {got:?}, expected {want:?}")));
            }
        }
        Ok(())
    }
}

/// `Ok(None)` when the witness is valid, otherwise the first failure in the
/// order: homomorphisms, nilpotency, injectivity, composition, surjectivity,
/// kernel dimension.
pub fn verify_witness(w: &Witness) -> Result<Option<WitnessFailure>, Error> {
    w.check_shapes()?;
    let mz = w.middle()?;
    if !w.z.is_homomorphism(&w.m, &w.phi) {
        return Ok(Some(WitnessFailure::NotHomomorphism("phi")));
    }
    if !w.z.is_homomorphism(&w.z, &w.psi) {
        return Ok(Some(WitnessFailure::NotHomomorphism("psi")));
    }
    if !mz.is_homomorphism(&w.n, &w.beta) {
        return Ok(Some(WitnessFailure::NotHomomorphism("beta")));
    }
    if !w.psi.is_nilpotent() {
        return Ok(Some(WitnessFailure::PsiNotNilpotent));
    }
    let inc = w.inclusion();
    if inc.rank() != w.z.dim() {
        return Ok(Some(WitnessFailure::NotInjective));
    }
    if !w.beta.mul(&inc).is_zero() {
        return Ok(Some(WitnessFailure::NotExactAtMiddle));
    }
    let rank_beta = w.beta.rank();
    if rank_beta != w.n.dim() {
        return Ok(Some(WitnessFailure::NotSurjective));
    }
    if mz.dim() - rank_beta != w.z.dim() {
        return Ok(Some(WitnessFailure::NotExactAtMiddle));
    }
    Ok(None)
}

/// A module over `A[t]` that is free of finite rank over `k[t]`.
#[derive(Clone, Debug)]
pub struct Family {
    algebra: Arc<FiniteAlgebra>,
    rank: usize,
    actions: Vec<PolyMatrix>,
}

impl Family {
    /// Checks that the unit acts as the identity and the module equations
    /// hold identically in `t`.
    pub fn new(algebra: Arc<FiniteAlgebra>, rank: usize, actions: Vec<PolyMatrix>) -> Result<Self, Error> {
        let d = algebra.dim();
        let f = algebra.field();
        if actions.len() != d || actions.iter().any(|x| x.rows() != rank || x.cols() != rank) {
            return Err(Error::InvalidFamily(format!("expected {d} action matrices of size {rank}")));
        }
        if actions[algebra.unit_index()] != PolyMatrix::identity(f, rank) {
            return Err(Error::InvalidFamily("the unit does not act as the identity".into()));
        }
        for i in 0..d {
            for j in i..d {
                let lhs = actions[i].mul(&actions[j]);
                let mut rhs = PolyMatrix::zeros(f, rank, rank);
                for (l, c) in algebra.dense_product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        rhs = rhs.add(&actions[l].scale(&UPoly::constant(c.clone())));
                    }
                }
                if lhs != rhs {
                    return Err(Error::InvalidFamily(format!(
                        "X_{i} X_{j} differs from the action of e{i}*e{j}"
                    )));
                }
            }
        }
        Ok(Family { algebra, rank, actions })
    }

    /// The constant family `M[t]`.
    pub fn constant(m: &ModuleRep) -> Self {
        Family {
            algebra: m.algebra().clone(),
            rank: m.dim(),
            actions: m.actions().iter().map(PolyMatrix::constant).collect(),
        }
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn actions(&self) -> &[PolyMatrix] {
        &self.actions
    }

    /// The fiber at `t = c`.
    pub fn specialize(&self, c: &Scalar) -> ModuleRep {
        let actions = self.actions.iter().map(|x| x.eval(c)).collect();
        ModuleRep::new_unchecked(self.algebra.clone(), self.rank, actions)
    }
}

/// `coker((phi, t + psi) : Z[t] -> M[t] ⊕ Z[t])`, free of rank `dim M`.
pub fn build_family(w: &Witness) -> Result<Family, Error> {
    if let Some(failure) = verify_witness(w)? {
        return Err(Error::InvalidWitness(format!("{failure}")));
    }
    let f = w.m.field();
    let (m, z) = (w.m.dim(), w.z.dim());
    let alg = w.m.algebra().clone();
    if z == 0 {
        return Ok(Family::constant(&w.m));
    }
    let t_plus_psi = PolyMatrix::constant(&w.psi).add(&PolyMatrix::identity(f, z).scale(&UPoly::t(f)));
    let big = PolyMatrix::constant(&w.phi).vstack(&t_plus_psi);
    let (h, u, uinv) = hermite_rows(&big);
    // im F must be exactly the first z coordinates after the change of basis
    for r in 0..m + z {
        for c in 0..z {
            let e = h.get(r, c);
            let ok = if r < z && r == c {
                e.degree() == Some(0)
            } else {
                r < c || e.is_zero()
            };
            if !ok {
                return Err(Error::InvalidFamily("cokernel is not free over k[t]".into()));
            }
        }
    }
    let p = u.block(z, 0, m, m + z);
    let linv = uinv.block(0, z, m + z, m);
    let mz = w.middle()?;
    let actions = mz
        .actions()
        .iter()
        .map(|x| p.mul(&PolyMatrix::constant(x)).mul(&linv))
        .collect();
    Family::new(alg, m, actions)
}

/// Fiber comparison for [`verify_family`].
#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub special_fiber_ok: bool,
    /// Sampled nonzero parameters and whether the fiber there is `≅ M`.
    pub generic_points: Vec<(Scalar, bool)>,
    /// Condition on the generic fiber is certified by sampling only.
    pub generic_fiber_sampled: bool,
}

impl FamilyReport {
    pub fn valid(&self) -> bool {
        self.special_fiber_ok && self.generic_points.iter().all(|(_, ok)| *ok)
    }
}

/// Distinct nonzero parameters; over a small prime field possibly fewer.
pub fn sample_parameters(field: Field, count: usize, seed: u64) -> Vec<Scalar> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let available = match field {
        Field::Rational => usize::MAX,
        Field::Prime(p) => (p - 1).min(usize::MAX as u64) as usize,
    };
    let mut out: Vec<Scalar> = Vec::new();
    while out.len() < count.min(available) {
        let c = field.random_nonzero(&mut rng, 1000);
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// `fiber(0) ≅ N` and `fiber(c) ≅ M` at `trials` random nonzero `c`.
pub fn verify_family(
    family: &Family,
    m: &ModuleRep,
    n: &ModuleRep,
    trials: usize,
    seed: u64,
) -> Result<FamilyReport, Error> {
    if !same_algebra(family.algebra(), m.algebra()) || !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let special = family.specialize(&f.zero());
    let special_fiber_ok = is_isomorphic(&special, n, seed)?.holds();
    let mut generic_points = Vec::new();
    for c in sample_parameters(f, trials, seed) {
        let ok = is_isomorphic(&family.specialize(&c), m, seed)?.holds();
        generic_points.push((c, ok));
    }
    Ok(FamilyReport {
        special_fiber_ok,
        generic_points,
        generic_fiber_sampled: true,
    })
}

/// A candidate `Z` together with the summands it was assembled from.
#[derive(Clone, Debug)]
pub struct ZCandidate {
    pub label: String,
    pub summands: Vec<ModuleRep>,
    pub module: ModuleRep,
}

impl ZCandidate {
    pub fn new(algebra: &Arc<FiniteAlgebra>, label: impl Into<String>, summands: Vec<ModuleRep>) -> Result<Self, Error> {
        let module = ModuleRep::direct_sum_all(algebra, &summands)?;
        Ok(ZCandidate {
            label: label.into(),
            summands,
            module,
        })
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }
}

/// A subspace of `End(Z)` consisting of nilpotent maps: the radical of
/// `End(Z)` (when the trace form detects it) plus all maps from later
/// summands into earlier ones.
pub fn nilpotent_directions(z: &ZCandidate) -> Result<Vec<Matrix>, Error> {
    let f = z.module.field();
    let dz = z.dim();
    let mut dirs: Vec<Matrix> = Vec::new();
    let p = f.characteristic();
    if p == 0 || p > dz as u64 {
        // tr(ab) = 0 for all b cuts out the radical of a matrix algebra here
        let end = hom_space(&z.module, &z.module)?.basis;
        let h = end.len();
        let gram = Matrix::from_fn(f, h, h, |i, j| end[i].mul(&end[j]).trace());
        for coefs in gram.nullspace() {
            let mut x = Matrix::zeros(f, dz, dz);
            for (c, b) in coefs.iter().zip(&end) {
                if !c.is_zero() {
                    x.add_scaled(c, b);
                }
            }
            dirs.push(x);
        }
    }
    let mut offsets = Vec::with_capacity(z.summands.len());
    let mut acc = 0;
    for s in &z.summands {
        offsets.push(acc);
        acc += s.dim();
    }
    for (i, si) in z.summands.iter().enumerate() {
        for (j, sj) in z.summands.iter().enumerate().skip(i + 1) {
            for b in hom_space(sj, si)?.basis {
                let mut x = Matrix::zeros(f, dz, dz);
                x.set_block(offsets[i], offsets[j], &b);
                dirs.push(x);
            }
        }
    }
    let span = Subspace::span(f, dz * dz, dirs.iter().map(Matrix::to_vector));
    Ok(span.basis().iter().map(|v| Matrix::from_vector(f, dz, dz, v)).collect())
}

/// Tuning knobs for [`search_witness`].
#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub samples_per_z: usize,
    pub seed: u64,
    /// Candidates of larger dimension are skipped; default `dim M + dim N`.
    pub max_z_dim: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            samples_per_z: DEFAULT_SAMPLES_PER_Z,
            seed: 0,
            max_z_dim: None,
        }
    }
}

/// Ranks of powers of each generator action; a cheap fingerprint of `N`.
fn power_ranks(m: &ModuleRep) -> Vec<Vec<usize>> {
    m.generator_actions()
        .iter()
        .map(|x| {
            let mut out = Vec::new();
            let mut p = x.clone();
            loop {
                let r = p.rank();
                out.push(r);
                if r == 0 {
                    return out;
                }
                p = p.mul(x);
            }
        })
        .collect()
}

fn random_combination(f: Field, rng: &mut ChaCha8Rng, basis: &[Matrix], rows: usize, cols: usize) -> Matrix {
    let mut out = Matrix::zeros(f, rows, cols);
    let dense = rng.random_bool(0.5);
    for b in basis {
        if !dense && rng.random_bool(0.5) {
            continue;
        }
        let c = f.random_nonzero(rng, 3);
        out.add_scaled(&c, b);
    }
    out
}

fn candidate_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Samples `(phi, psi)` for one candidate `Z`; returns a verified witness.
fn search_with_z(
    m: &ModuleRep,
    n: &ModuleRep,
    n_ranks: &[Vec<usize>],
    zc: &ZCandidate,
    samples: usize,
    seed: u64,
) -> Result<Option<Witness>, Error> {
    let f = m.field();
    let z = &zc.module;
    let (dm, dz) = (m.dim(), z.dim());
    if dz == 0 {
        return Ok(match is_isomorphic(m, n, seed) {
            Ok(Isomorphism::Isomorphic(t)) => Some(Witness {
                z: z.clone(),
                m: m.clone(),
                n: n.clone(),
                phi: Matrix::zeros(f, dm, 0),
                psi: Matrix::zeros(f, 0, 0),
                beta: t,
            }),
            _ => None,
        });
    }
    let phi_basis = hom_space(z, m)?.basis;
    let psi_basis = nilpotent_directions(zc)?;
    if phi_basis.is_empty() && psi_basis.is_empty() {
        return Ok(None);
    }
    let mz = m.direct_sum(z)?;
    let total = dm + dz;
    // images of powers of each generator on M ⊕ Z, one list per generator
    let power_images: Vec<Vec<Subspace>> = mz
        .generator_actions()
        .iter()
        .zip(n_ranks)
        .map(|(x, ranks)| {
            let mut p = x.clone();
            (0..ranks.len())
                .map(|_| {
                    let s = Subspace::column_space(&p);
                    p = p.mul(x);
                    s
                })
                .collect()
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let phi = random_combination(f, &mut rng, &phi_basis, dm, dz);
        let psi = random_combination(f, &mut rng, &psi_basis, dz, dz);
        let inc = phi.vstack(&psi);
        let image = Subspace::column_space(&inc);
        if image.dim() != dz {
            continue;
        }
        let fingerprint_ok = power_images.iter().zip(n_ranks).all(|(imgs, ranks)| {
            imgs.iter()
                .zip(ranks)
                .all(|(w, &r)| w.sum(&image).dim() - dz == r)
        });
        if !fingerprint_ok {
            continue;
        }
        let (q, proj) = mz.quotient(&image);
        debug_assert_eq!(q.dim() + dz, total);
        let Ok(Isomorphism::Isomorphic(t)) = is_isomorphic(&q, n, seed) else {
            continue;
        };
        let w = Witness {
            z: z.clone(),
            m: m.clone(),
            n: n.clone(),
            phi,
            psi,
            beta: t.mul(&proj),
        };
        if verify_witness(&w)?.is_none() {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Tries each candidate in catalog order and returns the first verified
/// witness. Finding none proves nothing.
pub fn search_witness(
    m: &ModuleRep,
    n: &ModuleRep,
    catalog: &[ZCandidate],
    options: &SearchOptions,
) -> Result<Option<Witness>, Error> {
    m.check_same_algebra(n)?;
    for zc in catalog {
        zc.module.check_same_algebra(m)?;
    }
    if m.dim() != n.dim() {
        return Ok(None);
    }
    let cap = options.max_z_dim.unwrap_or(m.dim() + n.dim());
    let n_ranks = power_ranks(n);
    let run = |(i, zc): (usize, &ZCandidate)| -> Option<Result<Witness, Error>> {
        if zc.dim() > cap {
            return None;
        }
        search_with_z(m, n, &n_ranks, zc, options.samples_per_z, candidate_seed(options.seed, i)).transpose()
    };
    #[cfg(feature = "parallel")]
    let found = {
        use rayon::prelude::*;
        catalog.par_iter().enumerate().find_map_first(run)
    };
    #[cfg(not(feature = "parallel"))]
    let found = catalog.iter().enumerate().find_map(run);
    found.transpose()
}

/// Modules `k, A/m^2, ..., A/m^{L-1}, A` plus `M` and `N`, combined into
/// multisets of total dimension at most `max_dim`, smallest first.
pub fn default_catalog(m: &ModuleRep, n: &ModuleRep, max_dim: usize) -> Result<Vec<ZCandidate>, Error> {
    m.check_same_algebra(n)?;
    let alg = m.algebra();
    let mut blocks: Vec<(String, ModuleRep)> = vec![("k".into(), ModuleRep::residue_field(alg))];
    let loewy = alg.loewy_length();
    let rad = Ideal::maximal(alg);
    let mut power = rad.clone();
    for j in 2..loewy {
        power = power.product(&rad)?;
        blocks.push((format!("A/m^{j}"), ModuleRep::cyclic(&power)));
    }
    blocks.push(("A".into(), ModuleRep::free_module(alg, 1)));
    blocks.push(("M".into(), m.clone()));
    blocks.push(("N".into(), n.clone()));
    let mut out: Vec<(usize, Vec<usize>)> = vec![(0, Vec::new())];
    let mut frontier = vec![(0usize, Vec::<usize>::new())];
    while let Some((dim, idxs)) = frontier.pop() {
        let start = idxs.last().copied().unwrap_or(0);
        for (b, (_, blk)) in blocks.iter().enumerate().skip(start) {
            let nd = dim + blk.dim();
            if blk.dim() == 0 || nd > max_dim {
                continue;
            }
            let mut next = idxs.clone();
            next.push(b);
            out.push((nd, next.clone()));
            frontier.push((nd, next));
        }
    }
    out.sort();
    out.truncate(DEFAULT_CATALOG_CAP);
    out.into_iter()
        .map(|(_, idxs)| {
            let label = if idxs.is_empty() {
                "0".into()
            } else {
                idxs.iter().map(|&i| blocks[i].0.as_str()).collect::<Vec<_>>().join("+")
            };
            let summands = idxs.iter().map(|&i| blocks[i].1.clone()).collect();
            ZCandidate::new(alg, label, summands)
        })
        .collect()
}

/// Limits for [`degenerates`].
#[derive(Clone, Debug)]
pub struct DegenerationBudget {
    pub depth: usize,
    pub max_fitting_index: usize,
    pub search: SearchOptions,
    pub family_trials: usize,
    /// Overrides [`default_catalog`].
    pub catalog: Option<Vec<ZCandidate>>,
}

impl Default for DegenerationBudget {
    fn default() -> Self {
        DegenerationBudget {
            depth: 3,
            max_fitting_index: 4,
            search: SearchOptions::default(),
            family_trials: DEFAULT_FAMILY_TRIALS,
            catalog: None,
        }
    }
}

/// Why `M` cannot degenerate to `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    Invariant(InvariantCheck),
    Fitting(FittingViolation),
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Yes {
        witness: Witness,
        family: Family,
        family_report: FamilyReport,
    },
    No(Refutation),
    Unknown {
        candidates_tried: usize,
    },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Yes { .. } => "Yes",
            Verdict::No(_) => "No",
            Verdict::Unknown { .. } => "Unknown",
        }
    }
}

/// Invariants and Fitting ideals first; then the witness search.
pub fn degenerates(m: &ModuleRep, n: &ModuleRep, budget: &DegenerationBudget) -> Result<Verdict, Error> {
    let battery = invariant_battery(m, n, budget.depth)?;
    if let Some(fail) = battery.first_failure() {
        return Ok(Verdict::No(Refutation::Invariant(fail.clone())));
    }
    let fit = fitting_test(m, n, budget.max_fitting_index)?;
    if let Some(v) = fit.violation {
        return Ok(Verdict::No(Refutation::Fitting(v)));
    }
    let catalog = match &budget.catalog {
        Some(c) => c.clone(),
        None => default_catalog(m, n, budget.search.max_z_dim.unwrap_or(m.dim() + n.dim()))?,
    };
    match search_witness(m, n, &catalog, &budget.search)? {
        Some(witness) => {
            let family = build_family(&witness)?;
            let family_report = verify_family(&family, m, n, budget.family_trials, budget.search.seed)?;
            if !family_report.valid() {
                return Err(Error::InvalidFamily("constructed family failed its fiber checks".into()));
            }
            Ok(Verdict::Yes {
                witness,
                family,
                family_report,
            })
        }
        None => Ok(Verdict::Unknown {
            candidates_tried: catalog.len(),
        }),
    }
}
