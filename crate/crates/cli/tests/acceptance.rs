//! One PASS/FAIL line per acceptance criterion. Run with
//! `cargo test -p cmdegen --test acceptance -- --nocapture` to see them.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use cmdegen::input::Loader;
use cmdegen_core::algebra::Ideal;
use cmdegen_core::fitting::{fitting_ideal, presentation_of};
use cmdegen_core::fixtures::{curated_witnesses, riedtmann_algebra};
use cmdegen_core::jordan::{hasse, knorrer_poset, partition_label_from_knorrer};
use cmdegen_core::laws;
use cmdegen_core::mfpoly::{cusp, verify_matrix_factorization};
use cmdegen_core::stable::{stably_degenerates, StableVerdict};
use cmdegen_core::witness::{build_family, verify_family, DegenerationBudget, Refutation, SearchOptions, Verdict};
use cmdegen_core::Field;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn fixture(example: &str, name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(example).join(name)
}

fn none(what: &str, v: Vec<String>) -> Check {
    match v.first() {
        None => Ok(()),
        Some(first) => Err(format!("{} {what} violation(s), first: {first}", v.len())),
    }
}

fn within(limit: Duration, start: Instant) -> Check {
    let took = start.elapsed();
    if took < limit {
        Ok(())
    } else {
        Err(format!("took {took:?}, limit {limit:?}"))
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn riedtmann() -> Check {
    let start = Instant::now();
    let mut loader = Loader::new();
    let free = loader.module_file(&fixture("riedtmann", "free.json")).map_err(err)?;
    let sum = loader.module_file(&fixture("riedtmann", "m1_plus_m2.json")).map_err(err)?;
    let opp = loader.module_file(&fixture("riedtmann", "m1_plus_m-1.json")).map_err(err)?;
    let r = sum.algebra();
    if !r.same_as(&riedtmann_algebra()) {
        return Err("bundled algebra differs from k[x,y]/(x^2,y^2)".into());
    }
    let xy = Ideal::generated_by(r, &[r.basis_element(3)]);
    let f_sum = fitting_ideal(&presentation_of(&sum), 0).map_err(err)?;
    if f_sum != xy {
        return Err(format!("F_0(M_1+M_2) has dim {}, expected span{{xy}}", f_sum.dim()));
    }
    if !fitting_ideal(&presentation_of(&opp), 0).map_err(err)?.is_zero() {
        return Err("F_0(M_1+M_-1) is not zero".into());
    }
    let budget = DegenerationBudget::default();
    match cmdegen_core::witness::degenerates(&free, &sum, &budget).map_err(err)? {
        Verdict::No(Refutation::Fitting(_)) => {}
        other => return Err(format!("degenerates gave {}", other.label())),
    }
    match stably_degenerates(&free, &sum, 2, &budget).map_err(err)? {
        StableVerdict::No(_) => {}
        other => return Err(format!("stably_degenerates gave {}", other.label())),
    }
    within(Duration::from_secs(1), start)
}

fn cusp_factorization() -> Check {
    let start = Instant::now();
    let mut loader = Loader::new();
    let phi = loader.poly_matrix_file(&fixture("cusp-mf", "phi.json")).map_err(err)?;
    let psi = loader.poly_matrix_file(&fixture("cusp-mf", "psi.json")).map_err(err)?;
    let f = loader.poly_file(&fixture("cusp-mf", "f.json")).map_err(err)?;
    let plus = cusp::f_as_written();
    if f != plus && f != plus.neg() {
        return Err(format!("f = {f} is not ±(x^3 - y^2)"));
    }
    if f != cusp::f() {
        return Err(format!("recorded sign changed: f = {f}"));
    }
    if !verify_matrix_factorization(&phi, &psi, &f).map_err(err)? {
        return Err("phi psi != f I or psi phi != f I".into());
    }
    let zero = Field::Rational.zero();
    let phi0 = loader.poly_matrix_file(&fixture("cusp-mf", "phi0.json")).map_err(err)?;
    let psi0 = loader.poly_matrix_file(&fixture("cusp-mf", "psi0.json")).map_err(err)?;
    if phi.specialize(&[("t", zero.clone())]).map_err(err)? != phi0 || phi0 != cusp::phi() {
        return Err("phi at t=0 is not the classical phi".into());
    }
    if psi.specialize(&[("t", zero)]).map_err(err)? != psi0 || psi0 != cusp::psi() {
        return Err("psi at t=0 is not the classical psi".into());
    }
    within(Duration::from_secs(1), start)
}

fn curated_soundness() -> Check {
    let ws = curated_witnesses();
    if ws.len() < 10 {
        return Err(format!("only {} curated witnesses", ws.len()));
    }
    let riedtmann = riedtmann_algebra();
    if !ws.iter().any(|c| c.witness.m.algebra().same_as(&riedtmann)) {
        return Err("no witness over k[x,y]/(x^2,y^2)".into());
    }
    let mut bad = Vec::new();
    for c in &ws {
        for v in laws::witness_soundness(&c.witness, 3, 4).map_err(err)? {
            bad.push(format!("{}: {v}", c.name));
        }
    }
    none("soundness", bad)
}

fn family_round_trip() -> Check {
    let mut bad = Vec::new();
    for (i, c) in curated_witnesses().iter().enumerate() {
        let w = &c.witness;
        let fam = build_family(w).map_err(err)?;
        let report = verify_family(&fam, &w.m, &w.n, 5, 1000 + i as u64).map_err(err)?;
        let mut ts: Vec<String> = report.generic_points.iter().map(|(t, _)| t.to_string()).collect();
        ts.sort();
        ts.dedup();
        if ts.len() != 5 || ts.iter().any(|t| t == "0") {
            bad.push(format!("{}: parameters {ts:?} are not 5 distinct nonzero values", c.name));
        }
        if !report.valid() {
            bad.push(format!("{}: {report:?}", c.name));
        }
    }
    none("family", bad)
}

fn oracle() -> Check {
    let start = Instant::now();
    none("oracle", laws::oracle_disagreements(3, 6, &SearchOptions::default()).map_err(err)?)?;
    within(Duration::from_secs(300), start)
}

fn order_axioms() -> Check {
    none("order axiom", laws::order_axiom_violations(4, 10))?;
    none("padding bound", laws::padding_bound_violations(4, 10))
}

fn proposition_suite() -> Check {
    none("extension", laws::extension_violations(3, 6).map_err(err)?)?;
    none("shift", laws::shift_violations(4, 8))?;
    none("cancellation", laws::cancellation_violations(3, 8))?;
    none("zero", laws::zero_degenerates_violations(4, 6))
}

fn base_change() -> Check {
    none("base change", laws::base_change_mismatches(20, 3, 2024).map_err(err)?)
}

fn knorrer() -> Check {
    let mut bad = Vec::new();
    for n in 1..=4 {
        for size in 0..=8 {
            let h = hasse(n, size, true).map_err(err)?.to_digraph(|p| p.to_string());
            let k = knorrer_poset(n, size).map_err(err)?;
            if !k.isomorphic_under(&h, partition_label_from_knorrer) {
                bad.push(format!("n={n} size={size}"));
            }
        }
    }
    none("isomorphism", bad)
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("1 Riedtmann F_0 obstruction", riedtmann),
        ("2 cusp matrix factorization", cusp_factorization),
        ("3 curated witness soundness", curated_soundness),
        ("4 family round trip", family_round_trip),
        ("5 rank order = witness search (n<=3, size<=6)", oracle),
        ("6 stable order is a partial order (n<=4, size<=10)", order_axioms),
        ("7 extension, shift, cancellation, zero laws", proposition_suite),
        ("8 Fitting ideals commute with base change", base_change),
        ("9 Knorrer poset = stable Hasse diagram (n<=4, size<=8)", knorrer),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("PASS {name} ({:.2?})", start.elapsed()),
            Err(why) => {
                println!("FAIL {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
