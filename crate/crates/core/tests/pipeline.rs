use cmdegen_core::algebra::Ideal;
use cmdegen_core::fitting::{fitting_ideal, presentation_of};
use cmdegen_core::fixtures::*;
use cmdegen_core::laws::{base_change_mismatches, witness_soundness};
use cmdegen_core::mfpoly::{cusp, verify_matrix_factorization};
use cmdegen_core::stable::{stably_degenerates, StableRefutation, StableVerdict};
use cmdegen_core::witness::*;
use cmdegen_core::{Field, ModuleRep};

#[test]
fn curated_witnesses_pass_invariants_and_fitting() {
    for c in curated_witnesses() {
        let bad = witness_soundness(&c.witness, 3, 4).unwrap();
        assert!(bad.is_empty(), "{}: {bad:?}", c.name);
    }
}

#[test]
fn curated_families_round_trip() {
    for (i, c) in curated_witnesses().iter().enumerate() {
        let w = &c.witness;
        let fam = build_family(w).unwrap();
        let report = verify_family(&fam, &w.m, &w.n, 5, 1000 + i as u64).unwrap();
        assert_eq!(report.generic_points.len(), 5);
        assert!(report.valid(), "{}: {report:?}", c.name);
    }
}

#[test]
fn riedtmann_fitting_ideals() {
    let r = riedtmann_algebra();
    let xy = r.basis_element(3);
    let sum = m_lambda(&r, 1).direct_sum(&m_lambda(&r, 2)).unwrap();
    let f0 = fitting_ideal(&presentation_of(&sum), 0).unwrap();
    assert_eq!(f0, Ideal::generated_by(&r, &[xy]));
    let opposite = m_lambda(&r, 1).direct_sum(&m_lambda(&r, -1)).unwrap();
    assert!(fitting_ideal(&presentation_of(&opposite), 0).unwrap().is_zero());

    let free = ModuleRep::free_module(&r, 1);
    match degenerates(&free, &sum, &DegenerationBudget::default()).unwrap() {
        Verdict::No(Refutation::Fitting(v)) => assert_eq!(v.index, 0),
        other => panic!("expected a Fitting refutation, got {}", other.label()),
    }
    match stably_degenerates(&free, &sum, 2, &DegenerationBudget::default()).unwrap() {
        StableVerdict::No(StableRefutation::Fitting { .. }) => {}
        other => panic!("expected a stable Fitting refutation, got {}", other.label()),
    }
}

#[test]
fn base_change_commutes_with_fitting() {
    let bad = base_change_mismatches(20, 3, 7).unwrap();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn cusp_pair_factors_minus_x3_plus_y2() {
    assert!(verify_matrix_factorization(&cusp::big_phi(), &cusp::big_psi(), &cusp::f()).unwrap());
    let zero = Field::Rational.zero();
    assert_eq!(cusp::big_phi().specialize(&[("t", zero)]).unwrap(), cusp::phi());
}

#[test]
fn degenerates_finds_and_certifies_a_family() {
    let r = riedtmann_algebra();
    let m1 = m_lambda(&r, 1);
    let k = ModuleRep::residue_field(&r);
    let kk = k.direct_sum(&k).unwrap();
    match degenerates(&m1, &kk, &DegenerationBudget::default()).unwrap() {
        Verdict::Yes { witness, family_report, .. } => {
            assert_eq!(verify_witness(&witness).unwrap(), None);
            assert!(family_report.valid());
        }
        other => panic!("expected Yes, got {}", other.label()),
    }
    // nu must not drop
    match degenerates(&kk, &m1, &DegenerationBudget::default()).unwrap() {
        Verdict::No(Refutation::Invariant(c)) => assert_eq!(c.name, "nu"),
        other => panic!("expected an invariant refutation, got {}", other.label()),
    }
}

// Adds a generator g = x e_0 with the relation g - x e_0, and a column that
// is an A-combination of existing ones. The cokernel does not change.
fn padded(p: &cmdegen_core::fitting::Presentation) -> cmdegen_core::fitting::Presentation {
    let a = p.algebra();
    let (rows, cols) = (p.rows(), p.cols());
    let x = a.radical_space().basis()[0].clone();
    let neg_x: Vec<_> = x.iter().map(|c| -c).collect();
    let mut entries: Vec<Vec<_>> = (0..=rows)
        .map(|r| {
            let mut row: Vec<_> = (0..cols).map(|c| if r < rows { p.entry(r, c).clone() } else { a.zero() }).collect();
            row.push(if r == rows { a.one() } else if r == 0 { neg_x.clone() } else { a.zero() });
            row
        })
        .collect();
    for (r, row) in entries.iter_mut().enumerate() {
        let redundant = if r < rows && cols > 0 {
            a.add(&a.mul(&x, p.entry(r, 0)), p.entry(r, cols - 1))
        } else {
            a.zero()
        };
        row.push(redundant);
    }
    cmdegen_core::fitting::Presentation::new(a.clone(), rows + 1, cols + 2, entries).unwrap()
}

#[test]
fn fitting_ideals_do_not_depend_on_the_presentation() {
    for c in curated_witnesses() {
        for m in [&c.witness.m, &c.witness.n, &c.witness.z] {
            let p = presentation_of(m);
            let q = padded(&p);
            let iso = cmdegen_core::modrep::is_isomorphic(&q.cokernel(), m, 0).unwrap();
            assert!(matches!(iso, cmdegen_core::modrep::Isomorphism::Isomorphic(_)), "{}", c.name);
            for i in 0..=4 {
                assert_eq!(fitting_ideal(&p, i).unwrap(), fitting_ideal(&q, i).unwrap(), "{} F_{i}", c.name);
            }
        }
    }
}
