//! Exhaustive checks of order laws on Jordan types, plus soundness checks
//! for witnesses and base change. Each function returns the violations
//! found; empty means the law holds within the given bounds.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Ideal, QuotientMap};
use crate::error::Error;
use crate::field::Field;
use crate::fitting::{base_change, fitting_ideal, fitting_test, presentation_of};
use crate::fixtures::curated_witnesses;
use crate::jordan::{
    deg_order, jordan_algebra, module_over, partition_catalog, partitions, stable_deg_order, stable_deg_order_scan,
    syzygy_shift, type_of, Partition,
};
use crate::matrix::Subspace;
use crate::modrep::{invariant_battery, ModuleRep};
use crate::witness::{search_witness, verify_witness, SearchOptions, Witness};

/// Stripped partitions (no part equal to `n`) of size at most `max_size`.
pub fn stripped_upto(n: usize, max_size: usize) -> Vec<Partition> {
    (0..=max_size)
        .flat_map(|s| partitions(n, s))
        .filter(Partition::is_stripped)
        .collect()
}

/// All partitions of size at most `max_size`.
pub fn all_upto(n: usize, max_size: usize) -> Vec<Partition> {
    (0..=max_size).flat_map(|s| partitions(n, s)).collect()
}

fn stable(p: &Partition, q: &Partition) -> bool {
    stable_deg_order(p, q).expect("same ambient")
}

/// Minimal padding agrees with scanning extra padding up to `|p| + |q|`,
/// for `n <= max_n` and sizes `<= max_size`.
pub fn padding_bound_violations(max_n: usize, max_size: usize) -> Vec<String> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let ps = all_upto(n, max_size);
        for p in &ps {
            for q in &ps {
                let extra = p.size() + q.size();
                let fast = stable(p, q);
                let scan = stable_deg_order_scan(p, q, extra).expect("same ambient");
                if fast != scan {
                    out.push(format!("n={n} {p} {q}: minimal {fast}, scan {scan}"));
                }
            }
        }
    }
    out
}

/// Reflexivity, antisymmetry and transitivity of the stable order on
/// stripped partitions.
pub fn order_axiom_violations(max_n: usize, max_size: usize) -> Vec<String> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let ps = stripped_upto(n, max_size);
        let k = ps.len();
        let rel: Vec<Vec<bool>> = ps.iter().map(|p| ps.iter().map(|q| stable(p, q)).collect()).collect();
        for i in 0..k {
            if !rel[i][i] {
                out.push(format!("n={n} not reflexive at {}", ps[i]));
            }
            for j in 0..k {
                if i != j && rel[i][j] && rel[j][i] {
                    out.push(format!("n={n} not antisymmetric: {} {}", ps[i], ps[j]));
                }
                if !rel[i][j] {
                    continue;
                }
                for m in 0..k {
                    if rel[j][m] && !rel[i][m] {
                        out.push(format!("n={n} not transitive: {} {} {}", ps[i], ps[j], ps[m]));
                    }
                }
            }
        }
    }
    out
}

/// `p ≤ q` implies `p[1] ≤ q[1]`; duality fixes Jordan types, so the dual
/// statement is the identity check `p* = p` on modules.
pub fn shift_violations(max_n: usize, max_size: usize) -> Vec<String> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let ps = stripped_upto(n, max_size);
        for p in &ps {
            for q in &ps {
                if stable(p, q) && !stable(&syzygy_shift(p), &syzygy_shift(q)) {
                    out.push(format!("n={n} shift fails for {p} {q}"));
                }
            }
        }
    }
    out
}

/// `p ∪ x ≤ q` implies `p ≤ q ∪ x[1]`, with `|p| + |x| <= max_size` and
/// `|q| <= max_size`.
pub fn cancellation_violations(max_n: usize, max_size: usize) -> Vec<String> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let ps = stripped_upto(n, max_size);
        for p in &ps {
            for x in ps.iter().filter(|x| p.size() + x.size() <= max_size) {
                let px = p.union(x).expect("same ambient");
                for q in &ps {
                    if !stable(&px, q) {
                        continue;
                    }
                    let qx = q.union(&syzygy_shift(x)).expect("same ambient");
                    if !stable(p, &qx) {
                        out.push(format!("n={n} p={p} x={x} q={q}"));
                    }
                }
            }
        }
    }
    out
}

/// `0 ≤ x ∪ x[1]` for every `x`.
pub fn zero_degenerates_violations(max_n: usize, max_size: usize) -> Vec<String> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for x in all_upto(n, max_size) {
            let target = x.union(&syzygy_shift(&x)).expect("same ambient");
            if !stable(&Partition::empty(n), &target) {
                out.push(format!("n={n} x={x}"));
            }
        }
    }
    out
}

/// For extensions `0 -> L -> M -> N -> 0`: `M ≤ L ⊕ N` stably. Uses the
/// curated Jordan witnesses plus every submodule `t^j M` and `ker t^j` of
/// every partition with `n <= max_n`, size `<= max_size`.
pub fn extension_violations(max_n: usize, max_size: usize) -> Result<Vec<String>, Error> {
    let mut out = Vec::new();
    let mut check = |label: String, m: &ModuleRep, l: &ModuleRep, nq: &ModuleRep| -> Result<(), Error> {
        let (tm, tl, tn) = (type_of(m)?, type_of(l)?, type_of(nq)?);
        if !stable_deg_order(&tm, &tl.union(&tn)?)? {
            out.push(format!("{label}: {tm} vs {tl} ⊕ {tn}"));
        }
        Ok(())
    };
    for c in curated_witnesses() {
        let w = &c.witness;
        if w.m.algebra().generators().len() != 1 || !w.psi.is_zero() || verify_witness(w)?.is_some() {
            continue;
        }
        let (quot, _) = w.m.quotient(&Subspace::column_space(&w.phi));
        check(c.name.clone(), &w.m, &w.z, &quot)?;
    }
    for n in 1..=max_n {
        let alg = jordan_algebra(Field::Rational, n);
        for p in all_upto(n, max_size) {
            let m = module_over(&alg, &p);
            if m.dim() == 0 {
                continue;
            }
            for j in 1..n {
                let t = m.action(j);
                let image = Subspace::column_space(t);
                let kernel = Subspace::span(m.field(), m.dim(), t.nullspace());
                for sub in [image, kernel] {
                    let l = m.restrict(sub.basis_matrix());
                    let (q, _) = m.quotient(&sub);
                    check(format!("n={n} {p} j={j}"), &m, &l, &q)?;
                }
            }
        }
    }
    Ok(out)
}

/// Pairs of equal size where the rank order and the witness search over
/// the partition catalog disagree. Search failure on a true pair counts as
/// a disagreement.
pub fn oracle_disagreements(max_n: usize, max_size: usize, options: &SearchOptions) -> Result<Vec<String>, Error> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let alg = jordan_algebra(Field::Rational, n);
        let catalog = partition_catalog(&alg, 2 * max_size)?;
        for size in 0..=max_size {
            let ps = partitions(n, size);
            let mods: Vec<ModuleRep> = ps.iter().map(|p| module_over(&alg, p)).collect();
            for (p, mp) in ps.iter().zip(&mods) {
                for (q, mq) in ps.iter().zip(&mods) {
                    let order = deg_order(p, q)?;
                    let found = search_witness(mp, mq, &catalog, options)?;
                    if let Some(w) = &found {
                        if verify_witness(w)?.is_some() {
                            out.push(format!("n={n} {p} {q}: search returned an invalid witness"));
                            continue;
                        }
                    }
                    if order != found.is_some() {
                        out.push(format!("n={n} {p} {q}: order {order}, witness {}", found.is_some()));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// A valid witness must pass the invariant battery to `depth` and every
/// Fitting containment up to `max_i`; returns what failed.
pub fn witness_soundness(w: &Witness, depth: usize, max_i: usize) -> Result<Vec<String>, Error> {
    let mut out = Vec::new();
    if let Some(f) = verify_witness(w)? {
        out.push(format!("witness invalid: {f}"));
        return Ok(out);
    }
    let battery = invariant_battery(&w.m, &w.n, depth)?;
    if let Some(c) = battery.first_failure() {
        out.push(format!("invariant {} fails: {} vs {}", c.name, c.left, c.right));
    }
    let fit = fitting_test(&w.m, &w.n, max_i)?;
    if let Some(v) = fit.violation {
        out.push(format!("Fitting containment fails at index {}", v.index));
    }
    Ok(out)
}

/// Picks `count` random (module, socle element) pairs from the curated
/// modules and checks `F_i(M / sM) = image of F_i(M)` for `i <= max_i`.
pub fn base_change_mismatches(count: usize, max_i: usize, seed: u64) -> Result<Vec<String>, Error> {
    let mut pool: Vec<(String, ModuleRep)> = Vec::new();
    for c in curated_witnesses() {
        for (tag, m) in [("M", &c.witness.m), ("N", &c.witness.n), ("Z", &c.witness.z)] {
            if m.dim() > 0 {
                pool.push((format!("{} {tag}", c.name), m.clone()));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..count {
        let (name, m) = &pool[rng.random_range(0..pool.len())];
        let a = m.algebra();
        let soc = a.socle();
        let s = soc.basis()[0].iter().map(|x| x * &a.field().random_nonzero(&mut rng, 9)).collect::<Vec<_>>();
        let q = QuotientMap::new(&Ideal::generated_by(a, &[s]))?;
        let mb = base_change(m, &q)?;
        let (pa, pb) = (presentation_of(m), presentation_of(&mb));
        for i in 0..=max_i {
            let lhs = fitting_ideal(&pb, i)?;
            let rhs = fitting_ideal(&pa, i)?.image(&q)?;
            if lhs != rhs {
                out.push(format!("{name}: F_{i} does not commute with base change"));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bounds_hold() {
        assert!(padding_bound_violations(3, 5).is_empty());
        assert!(order_axiom_violations(3, 5).is_empty());
        assert!(shift_violations(3, 5).is_empty());
        assert!(cancellation_violations(3, 4).is_empty());
        assert!(zero_degenerates_violations(3, 4).is_empty());
        assert!(extension_violations(3, 4).unwrap().is_empty());
    }

    #[test]
    fn oracle_small() {
        assert!(oracle_disagreements(2, 3, &SearchOptions::default()).unwrap().is_empty());
    }
}
