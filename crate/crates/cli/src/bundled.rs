//! Input files for the bundled examples, generated from the core fixtures.
//! Copies live under `crates/cli/fixtures/`; a test keeps them in sync.

use cmdegen_core::fixtures::{m_lambda, riedtmann_algebra};
use cmdegen_core::jordan::{hasse, knorrer_poset};
use cmdegen_core::mfpoly::cusp;
use cmdegen_core::ModuleRep;
use serde_json::{json, Value};

use crate::input::{ModuleJson, PolyJson, PolyMatrixJson};
use crate::ExampleName;

/// Stable Hasse diagram shown by `examples jordan-n3`.
pub const JORDAN_N3_SIZE: usize = 6;

pub struct FixtureFile {
    pub name: &'static str,
    pub text: String,
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn module_file(m: &ModuleRep) -> String {
    let mut j = ModuleJson::of(m, false);
    j.algebra = Some(Value::String("algebra.json".into()));
    pretty(&serde_json::to_value(j).expect("serializable"))
}

pub fn files(example: ExampleName) -> Vec<FixtureFile> {
    match example {
        ExampleName::Riedtmann => {
            let r = riedtmann_algebra();
            let sum = |a: i64, b: i64| m_lambda(&r, a).direct_sum(&m_lambda(&r, b)).expect("same algebra");
            vec![
                FixtureFile {
                    name: "algebra.json",
                    text: pretty(&json!({ "field": "Q", "monomial": { "vars": ["x", "y"], "exponents": [2, 2] } })),
                },
                FixtureFile { name: "free.json", text: module_file(&ModuleRep::free_module(&r, 1)) },
                FixtureFile { name: "m1_plus_m2.json", text: module_file(&sum(1, 2)) },
                FixtureFile { name: "m1_plus_m-1.json", text: module_file(&sum(1, -1)) },
            ]
        }
        ExampleName::CuspMf => {
            let mat = |m| pretty(&serde_json::to_value(PolyMatrixJson::of(&m)).expect("serializable"));
            vec![
                FixtureFile { name: "phi.json", text: mat(cusp::big_phi()) },
                FixtureFile { name: "psi.json", text: mat(cusp::big_psi()) },
                FixtureFile { name: "phi0.json", text: mat(cusp::phi()) },
                FixtureFile { name: "psi0.json", text: mat(cusp::psi()) },
                FixtureFile {
                    name: "f.json",
                    text: pretty(&serde_json::to_value(PolyJson::of(&cusp::f())).expect("serializable")),
                },
            ]
        }
        ExampleName::JordanN3 => {
            let h = hasse(3, JORDAN_N3_SIZE, true).expect("within cap");
            let k = knorrer_poset(3, JORDAN_N3_SIZE).expect("within cap");
            vec![
                FixtureFile { name: "hasse.dot", text: h.to_digraph(|p| p.to_string()).to_dot("stable n=3") },
                FixtureFile { name: "knorrer.dot", text: k.to_dot("knorrer n=3") },
            ]
        }
    }
}

/// Directory name used under `fixtures/`.
pub fn dir_name(example: ExampleName) -> &'static str {
    match example {
        ExampleName::Riedtmann => "riedtmann",
        ExampleName::CuspMf => "cusp-mf",
        ExampleName::JordanN3 => "jordan-n3",
    }
}
