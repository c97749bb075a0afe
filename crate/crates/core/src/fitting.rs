//! Presentations, minors over a commutative algebra, and Fitting ideals.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::algebra::{same_algebra, FiniteAlgebra, Ideal, QuotientMap};
use crate::error::Error;
use crate::matrix::{is_zero_vector, Subspace, Vector};
use crate::modrep::{minimal_resolution, ModuleRep};

/// Largest minor size computed by cofactor expansion.
pub const DEFAULT_MINOR_CAP: usize = 8;

/// An `n x m` matrix `C` over `A`, presenting `coker(C : A^m -> A^n)`.
#[derive(Clone, Debug)]
pub struct Presentation {
    algebra: Arc<FiniteAlgebra>,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Vector>>,
}

impl Presentation {
    pub fn new(
        algebra: Arc<FiniteAlgebra>,
        rows: usize,
        cols: usize,
        entries: Vec<Vec<Vector>>,
    ) -> Result<Self, Error> {
        let d = algebra.dim();
        let ok = entries.len() == rows
            && entries
                .iter()
                .all(|r| r.len() == cols && r.iter().all(|a| a.len() == d));
        if !ok {
            return Err(Error::ShapeMismatch(format!(
                "presentation entries do not form a {rows} x {cols} array of algebra elements"
            )));
        }
        Ok(Presentation {
            algebra,
            rows,
            cols,
            entries,
        })
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &Vector {
        &self.entries[r][c]
    }

    pub fn entries(&self) -> &[Vec<Vector>] {
        &self.entries
    }

    /// `A^n / C(A^m)`.
    pub fn cokernel(&self) -> ModuleRep {
        let a = &self.algebra;
        let d = a.dim();
        let free = ModuleRep::free_module(a, self.rows);
        let mut relations = Vec::new();
        for c in 0..self.cols {
            let column: Vector = (0..self.rows).flat_map(|r| self.entries[r][c].clone()).collect();
            for x in free.actions() {
                let v = x.mul_vec(&column);
                if !is_zero_vector(&v) {
                    relations.push(v);
                }
            }
        }
        let sub = Subspace::span(a.field(), self.rows * d, relations);
        free.quotient(&sub).0
    }

    /// Block-diagonal sum, presenting the direct sum of the cokernels.
    pub fn direct_sum(&self, other: &Presentation) -> Result<Presentation, Error> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let zero = self.algebra.zero();
        let (rows, cols) = (self.rows + other.rows, self.cols + other.cols);
        let entries = (0..rows)
            .map(|r| {
                (0..cols)
                    .map(|c| match (r < self.rows, c < self.cols) {
                        (true, true) => self.entries[r][c].clone(),
                        (false, false) => other.entries[r - self.rows][c - self.cols].clone(),
                        _ => zero.clone(),
                    })
                    .collect()
            })
            .collect();
        Ok(Presentation {
            algebra: self.algebra.clone(),
            rows,
            cols,
            entries,
        })
    }
}

/// Minimal presentation: rows are lifts of a basis of `M / mM` and columns
/// are minimal generators of the relation module.
pub fn presentation_of(m: &ModuleRep) -> Presentation {
    let res = minimal_resolution(m, 1);
    let (rows, cols) = (res.ranks()[0], res.ranks()[1]);
    let entries = if cols == 0 {
        (0..rows).map(|_| Vec::new()).collect()
    } else {
        res.differential(1).to_vec()
    };
    Presentation {
        algebra: m.algebra().clone(),
        rows,
        cols,
        entries,
    }
}

/// All `r x r` minors of the presentation matrix.
pub fn minors(p: &Presentation, r: usize, cap: usize) -> Result<Vec<Vector>, Error> {
    if r > cap {
        return Err(Error::MinorSizeOverflow { size: r, cap });
    }
    if r == 0 {
        return Ok(alloc::vec![p.algebra.one()]);
    }
    if r > p.rows.min(p.cols) {
        return Ok(Vec::new());
    }
    if p.cols > 63 {
        return Err(Error::ShapeMismatch(format!(
            "{} relation columns exceed the 63-column minor limit",
            p.cols
        )));
    }
    let mut out = Vec::new();
    for rows in subsets(p.rows, r) {
        out.extend(minors_for_rows(p, &rows));
    }
    Ok(out)
}

/// Every `k`-subset of `0..n`, in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Determinants on the fixed rows against every column subset, by Laplace
/// expansion along the last row memoized over column bitmasks.
fn minors_for_rows(p: &Presentation, rows: &[usize]) -> Vec<Vector> {
    let a = &p.algebra;
    let r = rows.len();
    // layer j maps a j-element column mask to det(rows[..j], mask)
    let mut layer: BTreeMap<u64, Vector> = BTreeMap::new();
    layer.insert(0, a.one());
    for (j, &row) in rows.iter().enumerate() {
        let mut next: BTreeMap<u64, Vector> = BTreeMap::new();
        for (&mask, det) in &layer {
            for c in 0..p.cols {
                if mask & (1 << c) != 0 {
                    continue;
                }
                let entry = &p.entries[row][c];
                if is_zero_vector(entry) || is_zero_vector(det) {
                    continue;
                }
                let new_mask = mask | (1 << c);
                // position of c among the columns of new_mask, counted from 0
                let pos = (new_mask & ((1u64 << c) - 1)).count_ones() as usize;
                let mut term = a.mul(entry, det);
                if (j + pos) % 2 == 1 {
                    term = a.scale(&-a.field().one(), &term);
                }
                let slot = next.entry(new_mask).or_insert_with(|| a.zero());
                *slot = a.add(slot, &term);
            }
        }
        layer = next;
    }
    debug_assert!(layer.keys().all(|m| m.count_ones() as usize == r));
    layer.into_values().filter(|v| !is_zero_vector(v)).collect()
}

/// `F_i = I_{n-i}(C)`, with `I_r = A` for `r <= 0` and `I_r = 0` for
/// `r > min(m, n)`.
pub fn fitting_ideal(p: &Presentation, i: usize) -> Result<Ideal, Error> {
    fitting_ideal_capped(p, i, DEFAULT_MINOR_CAP)
}

pub fn fitting_ideal_capped(p: &Presentation, i: usize, cap: usize) -> Result<Ideal, Error> {
    if i >= p.rows {
        return Ok(Ideal::whole(&p.algebra));
    }
    let r = p.rows - i;
    if r > p.rows.min(p.cols) {
        return Ok(Ideal::zero(&p.algebra));
    }
    let ms = minors(p, r, cap)?;
    Ok(Ideal::generated_by(&p.algebra, &ms))
}

/// `F_0(M), ..., F_max_i(M)` from the minimal presentation.
pub fn fitting_ideals(m: &ModuleRep, max_i: usize) -> Result<Vec<Ideal>, Error> {
    let p = presentation_of(m);
    (0..=max_i).map(|i| fitting_ideal(&p, i)).collect()
}

/// One index of a [`FittingReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FittingCheck {
    pub index: usize,
    pub dim_m: usize,
    pub dim_n: usize,
    pub contained: bool,
}

/// `F_i(N)` not inside `F_i(M)`, witnessed by a basis vector of `F_i(N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FittingViolation {
    pub index: usize,
    pub escapee: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FittingReport {
    pub checks: Vec<FittingCheck>,
    pub violation: Option<FittingViolation>,
}

impl FittingReport {
    pub fn passes(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks `F_i(M) ⊇ F_i(N)` for `i <= max_i`; a degeneration `M -> N` forces
/// every containment.
pub fn fitting_test(m: &ModuleRep, n: &ModuleRep, max_i: usize) -> Result<FittingReport, Error> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let (fm, fn_) = (fitting_ideals(m, max_i)?, fitting_ideals(n, max_i)?);
    let mut checks = Vec::new();
    let mut violation = None;
    for (i, (im, in_)) in fm.iter().zip(&fn_).enumerate() {
        let escapee = im.first_escapee(in_);
        if violation.is_none() {
            if let Some(v) = &escapee {
                violation = Some(FittingViolation {
                    index: i,
                    escapee: v.clone(),
                });
            }
        }
        checks.push(FittingCheck {
            index: i,
            dim_m: im.dim(),
            dim_n: in_.dim(),
            contained: escapee.is_none(),
        });
    }
    Ok(FittingReport { checks, violation })
}

/// `M / IM` over `B = A / I`, for the quotient map `q : A -> B`.
pub fn base_change(m: &ModuleRep, q: &QuotientMap) -> Result<ModuleRep, Error> {
    if !same_algebra(m.algebra(), q.source()) {
        return Err(Error::AlgebraMismatch);
    }
    let a = q.source();
    let b = q.target();
    // the kernel of q is spanned by the differences e_i - lift(q(e_i))
    let kernel: Vec<Vector> = (0..a.dim())
        .map(|i| {
            let e = a.basis_element(i);
            a.sub(&e, &q.lift(&q.project(&e)))
        })
        .filter(|v| !is_zero_vector(v))
        .collect();
    let im = Subspace::span(
        m.field(),
        m.dim(),
        kernel.iter().flat_map(|v| m.act(v).columns()),
    );
    let (quot, _) = m.quotient(&im);
    let actions = q.kept_indices().iter().map(|&i| quot.action(i).clone()).collect();
    ModuleRep::new(b.clone(), quot.dim(), actions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{monomial_quotient, truncated_polynomial};
    use crate::field::Field;
    use crate::modrep::is_isomorphic;

    fn q() -> Field {
        Field::Rational
    }

    fn riedtmann() -> Arc<FiniteAlgebra> {
        Arc::new(monomial_quotient(q(), &["x", "y"], &[2, 2]).unwrap())
    }

    fn x_minus(a: &Arc<FiniteAlgebra>, lambda: i64) -> Vector {
        let mut g = a.basis_element(1);
        g[2] = q().from_i64(-lambda);
        g
    }

    fn m_lambda(a: &Arc<FiniteAlgebra>, lambda: i64) -> ModuleRep {
        ModuleRep::cyclic(&Ideal::generated_by(a, &[x_minus(a, lambda)]))
    }

    #[test]
    fn presentations_of_examples() {
        let t3 = Arc::new(truncated_polynomial(q(), 3));
        let free = presentation_of(&ModuleRep::free_module(&t3, 1));
        assert_eq!((free.rows(), free.cols()), (1, 0));
        let k = presentation_of(&ModuleRep::residue_field(&t3));
        assert_eq!((k.rows(), k.cols()), (1, 1));
        assert_eq!(k.entry(0, 0), &t3.basis_element(1));

        let a = riedtmann();
        let p = presentation_of(&m_lambda(&a, 2));
        assert_eq!((p.rows(), p.cols()), (1, 1));
        // the single relation generates the same ideal as x - 2y
        let ideal = Ideal::generated_by(&a, &[p.entry(0, 0).clone()]);
        assert_eq!(ideal, Ideal::generated_by(&a, &[x_minus(&a, 2)]));
    }

    #[test]
    fn cokernel_round_trip() {
        let a = riedtmann();
        for m in [
            m_lambda(&a, 1),
            ModuleRep::residue_field(&a),
            ModuleRep::free_module(&a, 2),
            m_lambda(&a, 0).direct_sum(&ModuleRep::residue_field(&a)).unwrap(),
        ] {
            let c = presentation_of(&m).cokernel();
            assert!(is_isomorphic(&m, &c, 3).unwrap().holds());
        }
    }

    #[test]
    fn conventions() {
        let a = riedtmann();
        let free = presentation_of(&ModuleRep::free_module(&a, 1));
        assert!(fitting_ideal(&free, 0).unwrap().is_zero());
        assert!(fitting_ideal(&free, 1).unwrap().is_whole());
        let m = presentation_of(&m_lambda(&a, 1));
        assert!(fitting_ideal(&m, 1).unwrap().is_whole());
    }

    #[test]
    fn example_products_of_linear_forms() {
        let a = riedtmann();
        for (l, mu) in [(1, 2), (1, -1), (3, 0), (2, -2)] {
            let p = Presentation::new(
                a.clone(),
                2,
                2,
                alloc::vec![
                    alloc::vec![x_minus(&a, l), a.zero()],
                    alloc::vec![a.zero(), x_minus(&a, mu)],
                ],
            )
            .unwrap();
            let f0 = fitting_ideal(&p, 0).unwrap();
            if l + mu == 0 {
                assert!(f0.is_zero());
            } else {
                assert_eq!(f0.dim(), 1);
                assert!(f0.contains(&a.basis_element(3)));
            }
        }
    }

    #[test]
    fn minor_cap() {
        let a = riedtmann();
        let m = ModuleRep::residue_field(&a);
        let k9 = ModuleRep::direct_sum_all(&a, &alloc::vec![m; 9]).unwrap();
        let p = presentation_of(&k9);
        assert!(matches!(
            fitting_ideal(&p, 0),
            Err(Error::MinorSizeOverflow { size: 9, cap: 8 })
        ));
        assert!(fitting_ideal(&p, 1).is_ok());
    }

    #[test]
    fn fitting_test_examples() {
        let a = riedtmann();
        let r = ModuleRep::free_module(&a, 1);
        let m = m_lambda(&a, 1).direct_sum(&m_lambda(&a, 2)).unwrap();
        let rep = fitting_test(&r, &m, 2).unwrap();
        let v = rep.violation.unwrap();
        assert_eq!(v.index, 0);
        assert!(Subspace::span(q(), 4, [a.basis_element(3)]).contains(&v.escapee));
        assert!(fitting_test(&m, &m, 3).unwrap().passes());

        let t2 = Arc::new(truncated_polynomial(q(), 2));
        let k = ModuleRep::residue_field(&t2);
        let kk = k.direct_sum(&k).unwrap();
        assert!(fitting_test(&ModuleRep::free_module(&t2, 1), &kk, 3).unwrap().passes());
    }

    #[test]
    fn base_change_along_socle_quotient() {
        let a = riedtmann();
        let soc = Ideal::generated_by(&a, &[a.basis_element(3)]);
        let qm = QuotientMap::new(&soc).unwrap();
        for m in [m_lambda(&a, 1), m_lambda(&a, 1).direct_sum(&m_lambda(&a, 3)).unwrap()] {
            let mb = base_change(&m, &qm).unwrap();
            let pa = presentation_of(&m);
            let pb = presentation_of(&mb);
            for i in 0..3 {
                let lhs = fitting_ideal(&pb, i).unwrap();
                let rhs = fitting_ideal(&pa, i).unwrap().image(&qm).unwrap();
                assert_eq!(lhs, rhs, "index {i}");
            }
        }
    }

    #[test]
    fn subsets_enumerate() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), alloc::vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }
}
