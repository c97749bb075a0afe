//! Worked examples shared by tests, the CLI and the acceptance suite.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{monomial_quotient, FiniteAlgebra, Ideal};
use crate::field::Field;
use crate::jordan::{jordan_algebra, module_over, Partition};
use crate::matrix::{Matrix, Subspace, Vector};
use crate::modrep::ModuleRep;
use crate::witness::Witness;

/// `Q[x,y]/(x^2, y^2)` with basis `1, x, y, xy`.
pub fn riedtmann_algebra() -> Arc<FiniteAlgebra> {
    Arc::new(monomial_quotient(Field::Rational, &["x", "y"], &[2, 2]).expect("monomial algebra"))
}

/// `x - lambda y`.
pub fn linear_form(algebra: &Arc<FiniteAlgebra>, lambda: i64) -> Vector {
    let mut g = algebra.basis_element(1);
    g[2] = algebra.field().from_i64(-lambda);
    g
}

/// `M_lambda = R / (x - lambda y) R`.
pub fn m_lambda(algebra: &Arc<FiniteAlgebra>, lambda: i64) -> ModuleRep {
    ModuleRep::cyclic(&Ideal::generated_by(algebra, &[linear_form(algebra, lambda)]))
}

/// The extension `0 -> U -> M -> M/U -> 0` as a witness for
/// `M ⤳ M/U ⊕ U`: `Z = U`, `phi` the inclusion, `psi = 0`.
pub fn witness_from_submodule(m: &ModuleRep, sub: &Subspace) -> Witness {
    let f = m.field();
    let embedding = sub.basis_matrix();
    let u = m.restrict(embedding.clone());
    let (v, proj) = m.quotient(sub);
    let (du, dv) = (u.dim(), v.dim());
    let n = v.direct_sum(&u).expect("same algebra");
    let mut beta = Matrix::zeros(f, dv + du, m.dim() + du);
    beta.set_block(0, 0, &proj);
    beta.set_block(dv, m.dim(), &Matrix::identity(f, du));
    Witness {
        z: u,
        m: m.clone(),
        n,
        phi: embedding,
        psi: Matrix::zeros(f, du, du),
        beta,
    }
}

/// A named witness for the curated suite.
#[derive(Clone, Debug)]
pub struct CuratedWitness {
    pub name: String,
    pub witness: Witness,
}

fn jordan_case(n: usize, parts: &[usize], which: Submodule) -> CuratedWitness {
    let alg = jordan_algebra(Field::Rational, n);
    let p = Partition::new(n, parts.to_vec()).expect("valid");
    let m = module_over(&alg, &p);
    let sub = which.of(&m);
    CuratedWitness {
        name: format!("k[t]/(t^{n}) {p} by {}", which.label()),
        witness: witness_from_submodule(&m, &sub),
    }
}

#[derive(Clone, Copy)]
enum Submodule {
    Socle,
    Radical,
    /// Image of `t^j`, i.e. of basis element `j`.
    Power(usize),
}

impl Submodule {
    fn of(self, m: &ModuleRep) -> Subspace {
        match self {
            Submodule::Socle => m.socle(),
            Submodule::Radical => m.radical_submodule(),
            Submodule::Power(j) => Subspace::column_space(m.action(j)),
        }
    }

    fn label(self) -> String {
        match self {
            Submodule::Socle => "socle".into(),
            Submodule::Radical => "radical".into(),
            Submodule::Power(j) => format!("image of basis element {j}"),
        }
    }
}

/// Hand-built witnesses over `k[t]/(t^n)` (`n <= 3`) and
/// `k[x,y]/(x^2,y^2)`; every one comes from a short exact sequence.
pub fn curated_witnesses() -> Vec<CuratedWitness> {
    let mut out = vec![
        jordan_case(2, &[2], Submodule::Socle),
        jordan_case(2, &[2, 1], Submodule::Radical),
        jordan_case(2, &[2, 2], Submodule::Radical),
        jordan_case(3, &[3], Submodule::Socle),
        jordan_case(3, &[3], Submodule::Radical),
        jordan_case(3, &[2, 1], Submodule::Socle),
        jordan_case(3, &[3, 1], Submodule::Power(2)),
        jordan_case(3, &[3, 2], Submodule::Radical),
        jordan_case(3, &[3, 3], Submodule::Power(2)),
    ];
    let r = riedtmann_algebra();
    let free = ModuleRep::free_module(&r, 1);
    let riedtmann_cases: [(&str, ModuleRep, Submodule); 5] = [
        ("R by socle", free.clone(), Submodule::Socle),
        ("R by radical", free.clone(), Submodule::Radical),
        ("M_1 by socle", m_lambda(&r, 1), Submodule::Socle),
        ("M_0 by radical", m_lambda(&r, 0), Submodule::Radical),
        ("M_1 ⊕ M_2 by socle", m_lambda(&r, 1).direct_sum(&m_lambda(&r, 2)).expect("same algebra"), Submodule::Socle),
    ];
    for (name, m, which) in riedtmann_cases {
        let sub = which.of(&m);
        out.push(CuratedWitness {
            name: format!("k[x,y]/(x^2,y^2) {name}"),
            witness: witness_from_submodule(&m, &sub),
        });
    }
    out.push(CuratedWitness { name: "k[t]/(t^2) R with psi = t".into(), witness: twisted_witness() });
    out
}

/// A witness with nonzero `psi` over `k[t]/(t^2)`: `Z = M = R`, `phi = 1`,
/// `psi = t`, so `N = (R ⊕ R) / {(z, tz)}`, again free of rank one.
fn twisted_witness() -> Witness {
    let alg = jordan_algebra(Field::Rational, 2);
    let f = alg.field();
    let r = ModuleRep::free_module(&alg, 1);
    let phi = Matrix::identity(f, 2);
    let psi = Matrix::from_i64(f, &[&[0, 0], &[1, 0]]);
    let inc = phi.vstack(&psi);
    let mz = r.direct_sum(&r).expect("same algebra");
    let (q, proj) = mz.quotient(&Subspace::column_space(&inc));
    Witness { z: r.clone(), m: r, n: q, phi, psi, beta: proj }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::verify_witness;

    #[test]
    fn curated_suite_verifies() {
        let suite = curated_witnesses();
        assert!(suite.len() >= 10);
        for c in &suite {
            assert_eq!(verify_witness(&c.witness).unwrap(), None, "{}", c.name);
        }
    }
}
