use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use cmdegen::bundled::{dir_name, files};
use cmdegen::input::{Loader, ModuleJson, WitnessJson};
use cmdegen::{run, ExampleName, Outcome};
use cmdegen_core::fixtures::{curated_witnesses, riedtmann_algebra};
use cmdegen_core::witness::verify_family;
use cmdegen_core::ModuleRep;
use serde_json::Value;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn cli(args: &[&str]) -> (Outcome, Value) {
    let mut argv = vec!["cmdegen"];
    argv.extend_from_slice(args);
    let out = run(argv);
    let json = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    (out, json)
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_json(dir: &Path, name: &str, v: &impl serde::Serialize) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p
}

#[test]
fn bundled_fixture_files_are_current() {
    for ex in [ExampleName::Riedtmann, ExampleName::CuspMf, ExampleName::JordanN3] {
        for f in files(ex) {
            let on_disk = fs::read_to_string(fixtures().join(dir_name(ex)).join(f.name)).unwrap();
            assert_eq!(on_disk, f.text, "{}/{} is stale", dir_name(ex), f.name);
        }
    }
}

#[test]
fn examples_exit_codes() {
    let (out, j) = cli(&["examples", "riedtmann"]);
    assert_eq!(out.code, 1);
    assert_eq!(j["certificate"]["kind"], "Fitting");
    assert_eq!(j["certificate"]["violation"]["index"], 0);
    assert_eq!(j["certificate"]["violation"]["escapee"]["text"], "x*y");
    assert_eq!(j["fitting_0"]["M_1+M_2"]["span"], serde_json::json!(["x*y"]));
    assert_eq!(j["fitting_0"]["M_1+M_-1"]["dim"], 0);
    assert_eq!(j["stable_verdict"], "No");
    assert_eq!(cli(&["examples", "cusp-mf"]).0.code, 0);
    assert_eq!(cli(&["examples", "jordan-n3"]).0.code, 0);
}

#[test]
fn riedtmann_files_through_the_pipeline() {
    let d = fixtures().join("riedtmann");
    let (free, sum, opp) = (d.join("free.json"), d.join("m1_plus_m2.json"), d.join("m1_plus_m-1.json"));
    assert_eq!(cli(&["algebra", "validate", "--algebra", path(&d.join("algebra.json"))]).0.code, 0);
    let (out, j) = cli(&["degenerates", "--m", path(&free), "--n", path(&sum)]);
    assert_eq!(out.code, 1, "{}", out.stderr);
    assert_eq!(j["certificate"]["violation"]["escapee"]["text"], "x*y");
    let (out, _) = cli(&["fitting-test", "--module-m", path(&free), "--module-n", path(&sum), "--max-i", "4"]);
    assert_eq!(out.code, 1);
    let (out, j) = cli(&["fitting-test", "--m", path(&sum), "--n", path(&opp)]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert_eq!(j["checks"][0]["f_m"]["span"], serde_json::json!(["x*y"]));
    assert_eq!(cli(&["stable", "check", "--m", path(&free), "--n", path(&sum)]).0.code, 1);
}

#[test]
fn jordan_commands() {
    assert_eq!(cli(&["jordan", "order", "--n", "2", "--p", "2", "--q", "1,1"]).0.code, 0);
    assert_eq!(cli(&["jordan", "order", "--n", "2", "--p", "1,1", "--q", "2"]).0.code, 1);
    assert_eq!(cli(&["jordan", "order", "--n", "3", "--p", "2,1", "--q", "1,1,1", "--stable"]).0.code, 0);
    assert_eq!(cli(&["jordan", "order", "--n", "2", "--p", "0", "--q", "1,1", "--stable"]).0.code, 0);
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("h.dot");
    let (out, j) = cli(&["jordan", "hasse", "--n", "3", "--size", "5", "--stable", "--dot", path(&dot)]);
    assert_eq!(out.code, 0);
    assert_eq!(fs::read_to_string(&dot).unwrap(), j["dot"].as_str().unwrap());
    let (out, j) = cli(&["jordan", "knorrer", "--n", "3", "--size", "2"]);
    assert_eq!(out.code, 0);
    let mut labels: Vec<String> = j["nodes"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().into()).collect();
    labels.sort();
    assert_eq!(labels, ["M_1⊕M_1", "M_2"]);
    assert_eq!(cli(&["jordan", "hasse", "--n", "3", "--size", "1000"]).0.code, 2);
}

#[test]
fn mf_verify_bundled_pair() {
    let d = fixtures().join("cusp-mf");
    let (phi, psi, f) = (d.join("phi.json"), d.join("psi.json"), d.join("f.json"));
    assert_eq!(cli(&["mf", "verify", "--phi", path(&phi), "--psi", path(&psi), "--f", path(&f)]).0.code, 0);
    let (out, j) = cli(&["mf", "verify", "--phi", path(&phi), "--psi", path(&psi), "--f", path(&f), "--at", "t=0"]);
    assert_eq!(out.code, 0);
    let phi0: Value = serde_json::from_str(&fs::read_to_string(d.join("phi0.json")).unwrap()).unwrap();
    assert_eq!(j["phi"], phi0);
    // psi against itself does not factor f
    assert_eq!(cli(&["mf", "verify", "--phi", path(&psi), "--psi", path(&psi), "--f", path(&f)]).0.code, 1);
    let (out, _) = cli(&["mf", "verify", "--phi", path(&phi), "--psi", path(&psi), "--f", path(&f), "--at", "z=1"]);
    assert_eq!(out.code, 3);
}

#[test]
fn load_errors_carry_pointers() {
    let dir = tempfile::tempdir().unwrap();
    let r = riedtmann_algebra();
    let mut bad = ModuleJson::of(&ModuleRep::free_module(&r, 1), true);
    bad.actions[0][0][0] = cmdegen::input::Coef::Int(2);
    let p = write_json(dir.path(), "bad_unit.json", &bad);
    let (out, j) = cli(&["invariants", "--m", path(&p), "--n", path(&p)]);
    assert_eq!(out.code, 3);
    assert_eq!(j["error"]["pointer"], "/actions");
    assert!(j["error"]["message"].as_str().unwrap().contains("unit does not act as the identity"));

    let mut typo: Value = serde_json::to_value(ModuleJson::of(&ModuleRep::free_module(&r, 1), true)).unwrap();
    typo["actions"][1][0][0] = Value::Bool(true);
    let p = write_json(dir.path(), "typo.json", &typo);
    let (out, j) = cli(&["invariants", "--m", path(&p), "--n", path(&p)]);
    assert_eq!(out.code, 3);
    assert_eq!(j["error"]["kind"], "Schema");
    assert_eq!(j["error"]["pointer"], "/actions/1/0/0");

    let noncomm = serde_json::json!({
        "field": "Q", "basis": ["1", "a"], "unit": 0,
        "table": [[["1", "0"], ["0", "1"]], [["0", "1"], ["0", "0"]]]
    });
    let mut broken = noncomm.clone();
    broken["table"][1][0] = serde_json::json!(["0", "2"]);
    let p = write_json(dir.path(), "noncomm.json", &broken);
    let (out, j) = cli(&["algebra", "validate", "--algebra", path(&p)]);
    assert_eq!(out.code, 1);
    assert_eq!(j["certificate"]["pointer"], "/table/0/1");
    let p = write_json(dir.path(), "dual.json", &noncomm);
    assert_eq!(cli(&["algebra", "validate", "--algebra", path(&p)]).0.code, 0);

    // witness over two different algebras
    let c = &curated_witnesses()[0];
    let mut w = WitnessJson::of(&c.witness);
    w.n = serde_json::to_value(ModuleJson::of(&ModuleRep::free_module(&r, 1), true)).unwrap();
    let p = write_json(dir.path(), "mismatch.json", &w);
    let (out, j) = cli(&["witness", "verify", "--witness", path(&p)]);
    assert_eq!(out.code, 3);
    assert_eq!(j["error"]["pointer"], "/n/algebra");
    assert!(j["error"]["message"].as_str().unwrap().contains("different algebras"));

    assert_eq!(cli(&["degenerates", "--m", "/nonexistent.json", "--n", "/nonexistent.json"]).0.code, 3);
    assert_eq!(cli(&["no-such-command"]).0.code, 3);
}

#[test]
fn certificates_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let r = riedtmann_algebra();
    let m1 = cmdegen_core::fixtures::m_lambda(&r, 1);
    let k = ModuleRep::residue_field(&r);
    let m = write_json(dir.path(), "m.json", &ModuleJson::of(&m1, true));
    let n = write_json(dir.path(), "n.json", &ModuleJson::of(&k.direct_sum(&k).unwrap(), true));

    let (out, j) = cli(&["witness", "search", "--m", path(&m), "--n", path(&n)]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let w = write_json(dir.path(), "w.json", &j["witness"]);
    assert_eq!(cli(&["witness", "verify", "--witness", path(&w)]).0.code, 0);

    let (out, j) = cli(&["witness", "build-family", "--witness", path(&w)]);
    assert_eq!(out.code, 0);
    assert!(j["caveats"].as_array().unwrap().iter().any(|c| c == "GenericFiberSampled"));
    let fam_path = write_json(dir.path(), "family.json", &j["family"]);
    let mut loader = Loader::new();
    let fam = loader.family_file(&fam_path).unwrap();
    let (mm, nn) = loader.module_pair(&m, &n).unwrap();
    assert!(verify_family(&fam, &mm, &nn, 5, 3).unwrap().valid());

    let (out, j) = cli(&["degenerates", "--m", path(&m), "--n", path(&n)]);
    assert_eq!(out.code, 0);
    let w2 = write_json(dir.path(), "w2.json", &j["certificate"]["witness"]);
    assert_eq!(cli(&["witness", "verify", "--witness", path(&w2)]).0.code, 0);

    // curated witnesses survive serialization
    for (i, c) in curated_witnesses().iter().enumerate() {
        let p = write_json(dir.path(), &format!("c{i}.json"), &WitnessJson::of(&c.witness));
        assert_eq!(cli(&["witness", "verify", "--witness", path(&p)]).0.code, 0, "{}", c.name);
    }
}

#[test]
fn reports_are_deterministic() {
    let d = fixtures().join("riedtmann");
    let (m, n) = (d.join("m1_plus_m-1.json"), d.join("m1_plus_m2.json"));
    let args = ["stable", "check", "--m", path(&m), "--n", path(&n)];
    let (a, _) = cli(&args);
    let (b, _) = cli(&args);
    assert_eq!(a.stdout, b.stdout);
    for ex in ["riedtmann", "cusp-mf", "jordan-n3"] {
        assert_eq!(cli(&["examples", ex]).0.stdout, cli(&["examples", ex]).0.stdout);
    }
}

#[test]
fn binary_honours_seed_env() {
    let bin = env!("CARGO_BIN_EXE_cmdegen");
    let out = Command::new(bin)
        .args(["jordan", "order", "--n", "2", "--p", "2", "--q", "1,1"])
        .env("CMDEGEN_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let j: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(j["seed"], 42);
    let out = Command::new(bin)
        .args(["--seed", "7", "jordan", "order", "--n", "2", "--p", "1,1", "--q", "2"])
        .env("CMDEGEN_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let j: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(j["seed"], 7);
    let out = Command::new(bin).args(["jordan", "order", "--n", "2", "--p", "2", "--q", "2"]).env("CMDEGEN_SEED", "x").output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}
