//! Jordan types over `k[t]/(t^n)`: the degeneration order by rank profiles,
//! its stable version, the syzygy shift, Hasse diagrams and the Knörrer
//! relabeling.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{truncated_polynomial, FiniteAlgebra};
use crate::error::Error;
use crate::field::Field;
use crate::graph::Digraph;
use crate::matrix::Matrix;
use crate::modrep::ModuleRep;
use crate::witness::ZCandidate;

/// Largest `size` accepted by [`hasse`] and [`knorrer_poset`].
pub const DEFAULT_SIZE_CAP: usize = 40;

/// Caveat attached to the Knörrer relabeling.
pub const KNORRER_CAVEAT: &str =
    "labels assume an algebraically closed field of characteristic not 2";

/// A Jordan type: weakly decreasing parts in `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Partition {
    n: usize,
    parts: Vec<usize>,
}

impl Partition {
    /// Sorts the parts; rejects parts outside `1..=n`.
    pub fn new(n: usize, mut parts: Vec<usize>) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidPartition("n must be at least 1".into()));
        }
        if let Some(bad) = parts.iter().find(|&&a| a == 0 || a > n) {
            return Err(Error::InvalidPartition(format!("part {bad} outside 1..={n}")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { n, parts })
    }

    pub fn empty(n: usize) -> Self {
        Partition { n, parts: Vec::new() }
    }

    /// Parses `"2,1,1"`; an empty string or `"0"` is the zero module.
    pub fn parse(n: usize, s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Self::new(n, Vec::new());
        }
        let parts = s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("cannot parse part {x:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n, parts)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `rank(t^j) = sum max(a - j, 0)`.
    pub fn rank(&self, j: usize) -> usize {
        self.parts.iter().map(|&a| a.saturating_sub(j)).sum()
    }

    /// `rank(t^j)` for `j = 1..n-1`.
    pub fn rank_profile(&self) -> Vec<usize> {
        (1..self.n).map(|j| self.rank(j)).collect()
    }

    /// Removes parts equal to `n`; returns the remainder and how many.
    pub fn strip_free(&self) -> (Partition, usize) {
        let free = self.parts.iter().filter(|&&a| a == self.n).count();
        let rest = self.parts.iter().copied().filter(|&a| a != self.n).collect();
        (Partition { n: self.n, parts: rest }, free)
    }

    pub fn is_stripped(&self) -> bool {
        !self.parts.contains(&self.n)
    }

    pub fn union(&self, other: &Partition) -> Result<Partition, Error> {
        check_ambient(self, other)?;
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Partition::new(self.n, parts)
    }

    /// Adds `count` free summands.
    pub fn pad(&self, count: usize) -> Partition {
        let mut parts = vec![self.n; count];
        parts.extend_from_slice(&self.parts);
        Partition { n: self.n, parts }
    }

    /// Comma-separated parts, `"0"` for the zero module.
    pub fn to_csv(&self) -> String {
        if self.parts.is_empty() {
            return "0".into();
        }
        self.parts.iter().map(|a| format!("{a}")).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "({})", self.to_csv())
        }
    }
}

fn check_ambient(p: &Partition, q: &Partition) -> Result<(), Error> {
    if p.n == q.n {
        Ok(())
    } else {
        Err(Error::AmbientMismatch(p.n, q.n))
    }
}

/// All partitions of `size` with parts at most `n`, in decreasing
/// lexicographic order (so `(n, ...)` first).
pub fn partitions(n: usize, size: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for a in (1..=max.min(rem)).rev() {
            cur.push(a);
            rec(rem - a, a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(size, n, &mut Vec::new(), &mut out);
    out.into_iter().map(|parts| Partition { n, parts }).collect()
}

/// `k[t]/(t^n)` over `field`, shared by all modules built from it.
pub fn jordan_algebra(field: Field, n: usize) -> Arc<FiniteAlgebra> {
    Arc::new(truncated_polynomial(field, n as u32))
}

/// The nilpotent Jordan matrix of type `p`, lower shift within each block.
pub fn nilpotent_of(field: Field, p: &Partition) -> Matrix {
    let size = p.size();
    let mut m = Matrix::zeros(field, size, size);
    let mut off = 0;
    for &a in &p.parts {
        for i in 0..a - 1 {
            m[(off + i + 1, off + i)] = field.one();
        }
        off += a;
    }
    m
}

/// The module with `t` acting by Jordan blocks of sizes `p`.
pub fn module_over(algebra: &Arc<FiniteAlgebra>, p: &Partition) -> ModuleRep {
    let f = algebra.field();
    let t = nilpotent_of(f, p);
    let mut actions = Vec::with_capacity(p.n);
    let mut power = Matrix::identity(f, p.size());
    for _ in 0..p.n {
        actions.push(power.clone());
        power = power.mul(&t);
    }
    ModuleRep::new_unchecked(algebra.clone(), p.size(), actions)
}

/// [`module_over`] a fresh copy of `Q[t]/(t^n)`.
pub fn module_of(p: &Partition) -> ModuleRep {
    module_over(&jordan_algebra(Field::Rational, p.n), p)
}

/// Jordan type of the nilpotent operator `t` (an `m x m` matrix with
/// `t^n = 0`).
pub fn jordan_type(n: usize, t: &Matrix) -> Result<Partition, Error> {
    let size = t.rows();
    let mut ranks = vec![size];
    let mut power = Matrix::identity(t.field(), size);
    for _ in 0..=n {
        power = power.mul(t);
        ranks.push(power.rank());
    }
    if ranks[n] != 0 {
        return Err(Error::InvalidPartition(format!("t^{n} does not vanish")));
    }
    // blocks of size exactly j: r_{j-1} - 2 r_j + r_{j+1}
    let mut parts = Vec::new();
    for j in 1..=n {
        let count = ranks[j - 1] + ranks[j + 1] - 2 * ranks[j];
        parts.extend(core::iter::repeat_n(j, count));
    }
    Partition::new(n, parts)
}

/// Jordan type of a module over `k[t]/(t^n)` (action of basis element 1).
pub fn type_of(m: &ModuleRep) -> Result<Partition, Error> {
    let n = m.algebra().dim();
    if n == 1 {
        return Partition::new(1, vec![1; m.dim()]);
    }
    jordan_type(n, m.action(1))
}

/// `p` degenerates to `q`: equal sizes and `rank_j(p) >= rank_j(q)`.
pub fn deg_order(p: &Partition, q: &Partition) -> Result<bool, Error> {
    check_ambient(p, q)?;
    Ok(p.size() == q.size() && (1..p.n).all(|j| p.rank(j) >= q.rank(j)))
}

/// Paddings `(a, b)` with `|p| + a n = |q| + b n` and `max(a, b)` minimal.
pub fn minimal_padding(p: &Partition, q: &Partition) -> Option<(usize, usize)> {
    let n = p.n as i64;
    let diff = q.size() as i64 - p.size() as i64;
    if diff % n != 0 {
        return None;
    }
    let delta = diff / n;
    Some((delta.max(0) as usize, (-delta).max(0) as usize))
}

/// `p ⊕ A^a` degenerates to `q ⊕ A^b` for some paddings. Extra common
/// padding adds `n - j` to both sides of every rank comparison, so the
/// minimal padding decides.
pub fn stable_deg_order(p: &Partition, q: &Partition) -> Result<bool, Error> {
    check_ambient(p, q)?;
    let (p0, _) = p.strip_free();
    let (q0, _) = q.strip_free();
    match minimal_padding(&p0, &q0) {
        Some((a, b)) => deg_order(&p0.pad(a), &q0.pad(b)),
        None => Ok(false),
    }
}

/// Brute-force version of [`stable_deg_order`] trying every common extra
/// padding up to `extra`; kept for validation.
pub fn stable_deg_order_scan(p: &Partition, q: &Partition, extra: usize) -> Result<bool, Error> {
    check_ambient(p, q)?;
    let (p0, _) = p.strip_free();
    let (q0, _) = q.strip_free();
    let Some((a, b)) = minimal_padding(&p0, &q0) else {
        return Ok(false);
    };
    for c in 0..=extra {
        if deg_order(&p0.pad(a + c), &q0.pad(b + c))? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `Ω^{-1}` on Jordan types: `a -> n - a`, free parts dropped.
pub fn syzygy_shift(p: &Partition) -> Partition {
    let parts = p.parts.iter().filter(|&&a| a != p.n).map(|&a| p.n - a).collect();
    Partition::new(p.n, parts).expect("n - a lies in 1..n")
}

/// Nodes of a Hasse diagram and its covering edges `(upper, lower)`, where
/// `upper` degenerates to `lower`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    pub nodes: Vec<Partition>,
    pub covers: Vec<(usize, usize)>,
}

impl Poset {
    pub fn to_digraph(&self, label: impl Fn(&Partition) -> String) -> Digraph {
        Digraph::new(self.nodes.iter().map(label).collect(), self.covers.clone())
    }
}

/// Stable nodes: stripped partitions `p` with `|p| <= size` and
/// `|p| ≡ size (mod n)`.
pub fn stable_nodes(n: usize, size: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut s = size % n;
    while s <= size {
        out.extend(partitions(n, s).into_iter().filter(Partition::is_stripped));
        s += n;
    }
    out
}

/// Hasse diagram of the (stable) degeneration order.
pub fn hasse(n: usize, size: usize, stable: bool) -> Result<Poset, Error> {
    hasse_capped(n, size, stable, DEFAULT_SIZE_CAP)
}

pub fn hasse_capped(n: usize, size: usize, stable: bool, cap: usize) -> Result<Poset, Error> {
    if n == 0 {
        return Err(Error::InvalidPartition("n must be at least 1".into()));
    }
    if size > cap {
        return Err(Error::SizeOverflow { size, cap });
    }
    let nodes = if stable { stable_nodes(n, size) } else { partitions(n, size) };
    let order = |p: &Partition, q: &Partition| {
        if stable {
            stable_deg_order(p, q)
        } else {
            deg_order(p, q)
        }
    };
    let k = nodes.len();
    let mut rel = vec![vec![false; k]; k];
    for i in 0..k {
        for j in 0..k {
            rel[i][j] = i != j && order(&nodes[i], &nodes[j])?;
        }
    }
    let mut covers = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if rel[i][j] && !(0..k).any(|m| rel[i][m] && rel[m][j]) {
                covers.push((i, j));
            }
        }
    }
    Ok(Poset { nodes, covers })
}

/// `"M_a⊕M_b⊕..."`, or `"0"`: the matching indecomposable Cohen-Macaulay
/// modules over `k[[x,y,z]]/(x^n + y^2 + z^2)`.
pub fn knorrer_label(p: &Partition) -> String {
    if p.is_empty() {
        return "0".into();
    }
    p.parts.iter().map(|a| format!("M_{a}")).collect::<Vec<_>>().join("⊕")
}

/// The stable Hasse diagram with Knörrer labels.
pub fn knorrer_poset(n: usize, size: usize) -> Result<Digraph, Error> {
    Ok(hasse(n, size, true)?.to_digraph(knorrer_label))
}

/// Inverse of [`knorrer_label`] on the label set, for relabeling checks.
pub fn partition_label_from_knorrer(label: &str) -> String {
    if label == "0" {
        return "0".into();
    }
    let parts: Vec<&str> = label.split('⊕').map(|s| s.trim_start_matches("M_")).collect();
    format!("({})", parts.join(","))
}

/// Every partition of size at most `max_size` as a witness candidate whose
/// summands are Jordan blocks, smallest first.
pub fn partition_catalog(algebra: &Arc<FiniteAlgebra>, max_size: usize) -> Result<Vec<ZCandidate>, Error> {
    let n = algebra.dim();
    let mut out = Vec::new();
    for s in 0..=max_size {
        for p in partitions(n, s) {
            let summands = p
                .parts
                .iter()
                .map(|&a| module_over(algebra, &Partition { n, parts: vec![a] }))
                .collect();
            out.push(ZCandidate::new(algebra, format!("{p}"), summands)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modrep::is_isomorphic;

    fn part(n: usize, s: &str) -> Partition {
        Partition::parse(n, s).unwrap()
    }

    #[test]
    fn validation() {
        assert!(Partition::new(2, vec![3]).is_err());
        assert!(Partition::new(2, vec![0]).is_err());
        assert_eq!(part(3, "1,2,1").parts(), &[2, 1, 1]);
        assert!(part(3, "0").is_empty());
        assert_eq!(format!("{}", part(3, "2,1")), "(2,1)");
    }

    #[test]
    fn module_examples() {
        let free = module_of(&part(3, "3"));
        let alg = free.algebra().clone();
        assert!(is_isomorphic(&free, &ModuleRep::free_module(&alg, 1), 0).unwrap().holds());
        let m = module_of(&part(2, "1,1"));
        assert!(m.action(1).is_zero());
        let m = module_of(&part(3, "2,1"));
        assert_eq!(m.dim(), 3);
        assert_eq!(m.action(1).rank(), 1);
        assert_eq!(m.action(2).rank(), 0);
        ModuleRep::new(m.algebra().clone(), 3, m.actions().to_vec()).unwrap();
        assert_eq!(type_of(&m).unwrap(), part(3, "2,1"));
    }

    #[test]
    fn order_examples() {
        assert!(deg_order(&part(2, "2"), &part(2, "1,1")).unwrap());
        assert!(!deg_order(&part(2, "1,1"), &part(2, "2")).unwrap());
        assert!(deg_order(&part(3, "2,1"), &part(3, "2,1")).unwrap());
        assert_eq!(deg_order(&part(2, "2"), &part(3, "2")), Err(Error::AmbientMismatch(2, 3)));
        assert!(stable_deg_order(&part(2, "0"), &part(2, "1,1")).unwrap());
        assert!(stable_deg_order(&part(3, "2,1"), &part(3, "1,1,1")).unwrap());
        for q in ["1,1,1", "2,1", "1", "2"] {
            let q = part(3, q);
            assert_eq!(
                stable_deg_order(&part(3, "3"), &q).unwrap(),
                stable_deg_order(&part(3, "0"), &q.strip_free().0).unwrap()
            );
        }
    }

    #[test]
    fn syzygy_examples() {
        assert_eq!(syzygy_shift(&part(3, "1")), part(3, "2"));
        assert!(syzygy_shift(&part(3, "3")).is_empty());
        for p in partitions(4, 6) {
            let s = p.strip_free().0;
            assert_eq!(syzygy_shift(&syzygy_shift(&s)), s);
        }
    }

    #[test]
    fn hasse_examples() {
        let h = hasse(2, 2, false).unwrap();
        assert_eq!(h.nodes, vec![part(2, "2"), part(2, "1,1")]);
        assert_eq!(h.covers, vec![(0, 1)]);
        let h = hasse(1, 5, false).unwrap();
        assert_eq!(h.nodes.len(), 1);
        let h = hasse(3, 4, false).unwrap();
        let labels: Vec<String> = h.nodes.iter().map(|p| format!("{p}")).collect();
        assert_eq!(labels, ["(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
        assert_eq!(h.covers, vec![(0, 1), (1, 2), (2, 3)]);
        assert!(matches!(hasse(3, 100, false), Err(Error::SizeOverflow { .. })));
        // n = 1: only the zero class
        let h = hasse(1, 3, true).unwrap();
        assert_eq!(h.nodes, vec![Partition::empty(1)]);
        assert!(h.covers.is_empty());
    }

    #[test]
    fn knorrer_examples() {
        let g = knorrer_poset(3, 2).unwrap();
        let mut labels = g.labels.clone();
        labels.sort();
        assert_eq!(labels, ["M_1⊕M_1", "M_2"]);
        let h = hasse(3, 2, true).unwrap().to_digraph(|p| format!("{p}"));
        assert!(h.isomorphic_under(&g, |s| {
            if s == "0" {
                "0".into()
            } else {
                knorrer_label(&Partition::parse(3, s.trim_matches(|c| c == '(' || c == ')')).unwrap())
            }
        }));
        assert_eq!(partition_label_from_knorrer("M_2⊕M_1"), "(2,1)");
    }

    #[test]
    fn jordan_type_recovers_partitions() {
        for p in partitions(4, 7) {
            let t = nilpotent_of(Field::Rational, &p);
            assert_eq!(jordan_type(4, &t).unwrap(), p);
        }
    }
}
