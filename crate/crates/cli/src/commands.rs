use std::fs;
use std::path::Path;
use std::time::Instant;

use cmdegen_core::fitting::{fitting_ideal, fitting_ideals, fitting_test, presentation_of};
use cmdegen_core::fixtures::{m_lambda, riedtmann_algebra};
use cmdegen_core::jordan::{
    deg_order, hasse, knorrer_poset, minimal_padding, partition_catalog, partition_label_from_knorrer, stable_deg_order,
    Partition, KNORRER_CAVEAT,
};
use cmdegen_core::mfpoly::{cusp, verify_matrix_factorization, Poly, PolyMatrix};
use cmdegen_core::modrep::invariant_battery;
use cmdegen_core::stable::{describe_refutation, stably_degenerates, StableVerdict};
use cmdegen_core::witness::{
    build_family, default_catalog, degenerates, search_witness, verify_family, verify_witness, DegenerationBudget,
    SearchOptions, Verdict, ZCandidate,
};
use cmdegen_core::{Error as CoreError, Field, ModuleRep, Scalar};
use serde_json::{json, Value};

use crate::input::{parse_assignment, InputError, Loader, PolyMatrixJson};
use crate::report::{self, caveats, to_text};
use crate::{
    bundled, AlgebraCmd, BudgetArgs, CatalogKind, Command, ExampleName, JordanCmd, MfCmd, Outcome, PairArgs,
    StableCmd, WitnessCmd, EXIT_INPUT, EXIT_NO, EXIT_UNKNOWN, EXIT_YES,
};

enum Failure {
    Input(InputError),
    Core(CoreError),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        Failure::Core(e)
    }
}

struct Reply {
    code: i32,
    report: Value,
    summary: String,
}

type CmdResult = Result<Reply, Failure>;

fn reply(code: i32, report: Value, summary: impl Into<String>) -> CmdResult {
    Ok(Reply { code, report, summary: summary.into() })
}

fn verdict_code(label: &str) -> i32 {
    match label {
        "Yes" => EXIT_YES,
        "No" => EXIT_NO,
        _ => EXIT_UNKNOWN,
    }
}

/// Budget exhaustion inside the core is an honest Unknown, not an input error.
fn is_budget_error(e: &CoreError) -> bool {
    matches!(
        e,
        CoreError::Inconclusive(_)
            | CoreError::MinorSizeOverflow { .. }
            | CoreError::DimensionOverflow { .. }
            | CoreError::SizeOverflow { .. }
    )
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Algebra(AlgebraCmd::Validate { .. }) => "algebra validate",
        Command::Invariants { .. } => "invariants",
        Command::FittingTest { .. } => "fitting-test",
        Command::Witness(WitnessCmd::Verify { .. }) => "witness verify",
        Command::Witness(WitnessCmd::BuildFamily { .. }) => "witness build-family",
        Command::Witness(WitnessCmd::Search { .. }) => "witness search",
        Command::Degenerates { .. } => "degenerates",
        Command::Stable(StableCmd::Check { .. }) => "stable check",
        Command::Jordan(JordanCmd::Order { .. }) => "jordan order",
        Command::Jordan(JordanCmd::Hasse { .. }) => "jordan hasse",
        Command::Jordan(JordanCmd::Knorrer { .. }) => "jordan knorrer",
        Command::Mf(MfCmd::Verify { .. }) => "mf verify",
        Command::Examples { .. } => "examples",
    }
}

pub(crate) fn dispatch(cmd: Command, seed: u64) -> Outcome {
    let name = command_name(&cmd);
    let start = Instant::now();
    let result = match cmd {
        Command::Algebra(AlgebraCmd::Validate { algebra, trials }) => algebra_validate(&algebra, trials, seed),
        Command::Invariants { pair, depth } => invariants(&pair, depth),
        Command::FittingTest { m, n, max_i } => fitting(&m, &n, max_i),
        Command::Witness(WitnessCmd::Verify { witness }) => witness_verify(&witness),
        Command::Witness(WitnessCmd::BuildFamily { witness, trials }) => witness_build_family(&witness, trials, seed),
        Command::Witness(WitnessCmd::Search { pair, budget }) => witness_search(&pair, &budget, seed),
        Command::Degenerates { pair, budget } => degenerates_cmd(&pair, &budget, seed),
        Command::Stable(StableCmd::Check { pair, pad, budget }) => stable_check(&pair, pad, &budget, seed),
        Command::Jordan(JordanCmd::Order { n, p, q, stable }) => jordan_order(n, &p, &q, stable),
        Command::Jordan(JordanCmd::Hasse { n, size, stable, dot }) => jordan_hasse(n, size, stable, dot.as_deref()),
        Command::Jordan(JordanCmd::Knorrer { n, size, dot }) => jordan_knorrer(n, size, dot.as_deref()),
        Command::Mf(MfCmd::Verify { phi, psi, f, at }) => mf_verify(&phi, &psi, &f, &at),
        Command::Examples { name, emit } => examples(name, emit.as_deref(), seed),
    };
    let elapsed = start.elapsed();
    let (code, mut body, summary) = match result {
        Ok(r) => (r.code, r.report, r.summary),
        Err(Failure::Core(e)) if is_budget_error(&e) => (
            EXIT_UNKNOWN,
            json!({ "verdict": "Unknown", "reason": e.to_string() }),
            format!("Unknown: {e}"),
        ),
        Err(Failure::Core(e)) => (
            EXIT_INPUT,
            json!({ "verdict": "InputError", "error": { "message": e.to_string() } }),
            format!("error: {e}"),
        ),
        Err(Failure::Input(e)) => (EXIT_INPUT, json!({ "verdict": "InputError", "error": input_error(&e) }), format!("error: {e}")),
    };
    if let Value::Object(map) = &mut body {
        map.insert("command".into(), Value::String(name.into()));
        map.insert("seed".into(), json!(seed));
    }
    Outcome {
        code,
        stdout: to_text(&body),
        stderr: format!("{summary}\n[{name}: exit {code}, {:.3}s]\n", elapsed.as_secs_f64()),
    }
}

fn input_error(e: &InputError) -> Value {
    match e {
        InputError::Io { path, message } => json!({ "kind": "Io", "path": path, "message": message }),
        InputError::Syntax { path, message } => json!({ "kind": "Syntax", "path": path, "message": message }),
        InputError::Schema { path, pointer, message } => {
            json!({ "kind": "Schema", "path": path, "pointer": pointer, "message": message })
        }
        InputError::Invalid { path, pointer, source } => {
            json!({ "kind": "Invariant", "path": path, "pointer": pointer, "message": source.to_string() })
        }
        InputError::Usage(message) => json!({ "kind": "Usage", "message": message }),
    }
}

fn algebra_validate(path: &Path, trials: usize, seed: u64) -> CmdResult {
    let alg = match Loader::new().algebra_file(path) {
        Ok(a) => a,
        Err(e) => {
            let axiom = matches!(
                e.core(),
                Some(
                    CoreError::NonCommutative { .. }
                        | CoreError::NonAssociative { .. }
                        | CoreError::NoUnit { .. }
                        | CoreError::NotLocal(_)
                        | CoreError::InvalidTable(_)
                )
            );
            if !axiom {
                return Err(e.into());
            }
            let msg = e.to_string();
            return reply(EXIT_NO, json!({ "verdict": "Invalid", "certificate": input_error(&e) }), format!("Invalid: {msg}"));
        }
    };
    if let Err(e) = alg.spot_check_axioms(trials, seed) {
        let msg = e.to_string();
        return reply(EXIT_NO, json!({ "verdict": "Invalid", "certificate": { "message": msg } }), format!("Invalid: {msg}"));
    }
    let socle = alg.socle();
    let report = json!({
        "verdict": "Valid",
        "field": alg.field().to_string(),
        "dim": alg.dim(),
        "basis": alg.basis_names(),
        "radical_dim": alg.radical_space().dim(),
        "generators": alg.generators().iter().map(|g| report::render_element(&alg, g)).collect::<Vec<_>>(),
        "socle": socle.basis().iter().map(|v| report::render_element(&alg, v)).collect::<Vec<_>>(),
        "gorenstein": alg.is_gorenstein(),
        "loewy_length": alg.loewy_length(),
        "caveats": caveats(alg.field(), false),
    });
    let gor = if alg.is_gorenstein() { "Gorenstein" } else { "not Gorenstein" };
    reply(EXIT_YES, report, format!("Valid: local algebra of dimension {}, {gor}", alg.dim()))
}

fn invariants(pair: &PairArgs, depth: usize) -> CmdResult {
    let (m, n) = Loader::new().module_pair(&pair.m, &pair.n)?;
    let r = invariant_battery(&m, &n, depth)?;
    let pass = r.all_pass();
    let mut report = json!({
        "verdict": if pass { "Pass" } else { "Fail" },
        "checks": report::invariants(&r),
    });
    if let Some(c) = r.first_failure() {
        report["certificate"] = report::invariant_check(c);
    }
    let summary = match r.first_failure() {
        Some(c) => format!("Fail: {} is {} for M and {} for N", c.name, c.left, c.right),
        None => format!("Pass: all {} invariant checks hold", r.checks.len()),
    };
    reply(if pass { EXIT_YES } else { EXIT_NO }, report, summary)
}

fn fitting(m: &Path, n: &Path, max_i: usize) -> CmdResult {
    let (m, n) = Loader::new().module_pair(m, n)?;
    let r = fitting_test(&m, &n, max_i)?;
    let (fm, fn_) = (fitting_ideals(&m, max_i)?, fitting_ideals(&n, max_i)?);
    let alg = m.algebra();
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            json!({
                "index": c.index,
                "contained": c.contained,
                "f_m": report::ideal(&fm[c.index]),
                "f_n": report::ideal(&fn_[c.index]),
            })
        })
        .collect();
    let mut report = json!({ "verdict": if r.passes() { "Pass" } else { "Violation" }, "checks": checks });
    let summary = match &r.violation {
        Some(v) => {
            report["certificate"] = report::fitting_violation(alg, v);
            format!(
                "Violation: F_{}(N) contains {} outside F_{}(M)",
                v.index,
                report::render_element(alg, &v.escapee),
                v.index
            )
        }
        None => format!("Pass: F_i(M) contains F_i(N) for i <= {max_i}"),
    };
    reply(if r.passes() { EXIT_YES } else { EXIT_NO }, report, summary)
}

fn witness_verify(path: &Path) -> CmdResult {
    let w = Loader::new().witness_file(path)?;
    match verify_witness(&w)? {
        None => reply(EXIT_YES, json!({ "verdict": "Valid" }), "Valid witness"),
        Some(f) => reply(
            EXIT_NO,
            json!({ "verdict": "Invalid", "certificate": { "failure": f.code(), "message": f.to_string() } }),
            format!("Invalid: {f}"),
        ),
    }
}

fn witness_build_family(path: &Path, trials: usize, seed: u64) -> CmdResult {
    let w = Loader::new().witness_file(path)?;
    if let Some(f) = verify_witness(&w)? {
        return reply(
            EXIT_NO,
            json!({ "verdict": "Invalid", "certificate": { "failure": f.code(), "message": f.to_string() } }),
            format!("Invalid witness: {f}"),
        );
    }
    let fam = build_family(&w)?;
    let fr = verify_family(&fam, &w.m, &w.n, trials, seed)?;
    let ok = fr.valid();
    let report = json!({
        "verdict": if ok { "Valid" } else { "Invalid" },
        "family": report::family(&fam),
        "fibers": report::family_report(&fr),
        "caveats": caveats(w.m.field(), true),
    });
    let summary = format!(
        "{}: family of rank {}, special fiber {}, {} generic points checked",
        if ok { "Valid" } else { "Invalid" },
        fam.rank(),
        if fr.special_fiber_ok { "≅ N" } else { "not ≅ N" },
        fr.generic_points.len()
    );
    reply(if ok { EXIT_YES } else { EXIT_NO }, report, summary)
}

fn search_options(b: &BudgetArgs, seed: u64) -> SearchOptions {
    SearchOptions { samples_per_z: b.samples, seed, max_z_dim: b.max_z_dim }
}

fn catalog(m: &ModuleRep, n: &ModuleRep, b: &BudgetArgs) -> Result<Vec<ZCandidate>, Failure> {
    let cap = b.max_z_dim.unwrap_or(m.dim() + n.dim());
    match b.catalog {
        CatalogKind::Default => Ok(default_catalog(m, n, cap)?),
        CatalogKind::Partitions => {
            let alg = m.algebra();
            if alg.generators().len() > 1 {
                return Err(InputError::Usage("--catalog partitions needs a one-generator algebra k[t]/(t^n)".into()).into());
            }
            Ok(partition_catalog(alg, cap)?)
        }
    }
}

fn budget_json(b: &BudgetArgs, m: &ModuleRep, n: &ModuleRep, tried: usize) -> Value {
    json!({
        "candidates_tried": tried,
        "samples_per_z": b.samples,
        "max_z_dim": b.max_z_dim.unwrap_or(m.dim() + n.dim()),
        "catalog": match b.catalog { CatalogKind::Default => "default", CatalogKind::Partitions => "partitions" },
    })
}

fn witness_search(pair: &PairArgs, b: &BudgetArgs, seed: u64) -> CmdResult {
    let (m, n) = Loader::new().module_pair(&pair.m, &pair.n)?;
    let cat = catalog(&m, &n, b)?;
    match search_witness(&m, &n, &cat, &search_options(b, seed))? {
        Some(w) => reply(
            EXIT_YES,
            json!({ "verdict": "Yes", "witness": report::witness(&w) }),
            format!("Yes: witness with dim Z = {}", w.z.dim()),
        ),
        None => reply(
            EXIT_UNKNOWN,
            json!({ "verdict": "Unknown", "budget": budget_json(b, &m, &n, cat.len()) }),
            format!("Unknown: no witness among {} candidates", cat.len()),
        ),
    }
}

fn budget(m: &ModuleRep, n: &ModuleRep, b: &BudgetArgs, seed: u64) -> Result<DegenerationBudget, Failure> {
    let catalog = match b.catalog {
        CatalogKind::Default => None,
        CatalogKind::Partitions => Some(catalog(m, n, b)?),
    };
    Ok(DegenerationBudget {
        depth: b.depth,
        max_fitting_index: b.max_i,
        search: search_options(b, seed),
        family_trials: b.trials,
        catalog,
    })
}

fn degenerates_cmd(pair: &PairArgs, b: &BudgetArgs, seed: u64) -> CmdResult {
    let (m, n) = Loader::new().module_pair(&pair.m, &pair.n)?;
    let bud = budget(&m, &n, b, seed)?;
    let v = degenerates(&m, &n, &bud)?;
    let (report, summary) = verdict_report(&m, &n, b, &v);
    reply(verdict_code(v.label()), report, summary)
}

fn verdict_report(m: &ModuleRep, n: &ModuleRep, b: &BudgetArgs, v: &Verdict) -> (Value, String) {
    let alg = m.algebra();
    match v {
        Verdict::Yes { witness, family, family_report } => (
            json!({
                "verdict": "Yes",
                "certificate": {
                    "witness": report::witness(witness),
                    "family": report::family(family),
                    "fibers": report::family_report(family_report),
                },
                "caveats": caveats(m.field(), family_report.generic_fiber_sampled),
            }),
            format!("Yes: witness with dim Z = {} and a verified family", witness.z.dim()),
        ),
        Verdict::No(r) => (
            json!({ "verdict": "No", "certificate": report::refutation(alg, r), "caveats": caveats(m.field(), false) }),
            format!("No: {}", refutation_text(alg, r)),
        ),
        Verdict::Unknown { candidates_tried } => (
            json!({ "verdict": "Unknown", "budget": budget_json(b, m, n, *candidates_tried) }),
            format!("Unknown: no witness among {candidates_tried} candidates"),
        ),
    }
}

fn refutation_text(alg: &cmdegen_core::FiniteAlgebra, r: &cmdegen_core::witness::Refutation) -> String {
    match r {
        cmdegen_core::witness::Refutation::Invariant(c) => {
            format!("invariant {} is {} for M and {} for N", c.name, c.left, c.right)
        }
        cmdegen_core::witness::Refutation::Fitting(v) => format!(
            "F_{}(N) contains {} outside F_{}(M)",
            v.index,
            report::render_element(alg, &v.escapee),
            v.index
        ),
    }
}

fn stable_check(pair: &PairArgs, pad: usize, b: &BudgetArgs, seed: u64) -> CmdResult {
    let (m, n) = Loader::new().module_pair(&pair.m, &pair.n)?;
    let bud = budget(&m, &n, b, seed)?;
    let v = stably_degenerates(&m, &n, pad, &bud)?;
    let alg = m.algebra();
    let (report, summary) = match &v {
        StableVerdict::Yes { pad_m, pad_n, witness, family, family_report, psi_stably_nilpotent } => (
            json!({
                "verdict": "Yes",
                "certified": {
                    "degeneration_with_padding": true,
                    "stably_nilpotent_triangle": psi_stably_nilpotent,
                },
                "certificate": {
                    "pad_m": pad_m,
                    "pad_n": pad_n,
                    "witness": report::witness(witness),
                    "family": report::family(family),
                    "fibers": report::family_report(family_report),
                },
                "caveats": caveats(m.field(), family_report.generic_fiber_sampled),
            }),
            format!("Yes: M ⊕ A^{pad_m} degenerates to N ⊕ A^{pad_n}"),
        ),
        StableVerdict::No(r) => (
            json!({ "verdict": "No", "certificate": report::stable_refutation(alg, r), "caveats": caveats(m.field(), false) }),
            format!("No: {}", describe_refutation(r)),
        ),
        StableVerdict::Unknown { paddings_tried } => (
            json!({
                "verdict": "Unknown",
                "budget": { "paddings_tried": paddings_tried, "pad_bound": pad, "samples_per_z": b.samples },
            }),
            format!("Unknown: {} paddings tried", paddings_tried.len()),
        ),
    };
    reply(verdict_code(v.label()), report, summary)
}

fn partition_arg(n: usize, s: &str) -> Result<Partition, Failure> {
    Partition::parse(n, s).map_err(|e| InputError::Usage(e.to_string()).into())
}

fn jordan_order(n: usize, p: &str, q: &str, stable: bool) -> CmdResult {
    let (p, q) = (partition_arg(n, p)?, partition_arg(n, q)?);
    let holds = if stable { stable_deg_order(&p, &q)? } else { deg_order(&p, &q)? };
    let mut report = json!({
        "verdict": if holds { "Yes" } else { "No" },
        "n": n,
        "p": p.to_string(),
        "q": q.to_string(),
        "stable": stable,
    });
    let (lhs, rhs) = if stable {
        let (p0, q0) = (p.strip_free().0, q.strip_free().0);
        match minimal_padding(&p0, &q0) {
            Some((a, b)) => {
                report["padding"] = json!({ "p": a, "q": b });
                (p0.pad(a), q0.pad(b))
            }
            None => {
                report["certificate"] = json!({ "kind": "Length", "size_p": p0.size(), "size_q": q0.size(), "n": n });
                let s = format!("No: sizes {} and {} differ by a non-multiple of {n}", p0.size(), q0.size());
                return reply(EXIT_NO, report, s);
            }
        }
    } else {
        (p.clone(), q.clone())
    };
    report["rank_profile_p"] = json!(lhs.rank_profile());
    report["rank_profile_q"] = json!(rhs.rank_profile());
    if !holds {
        report["certificate"] = if lhs.size() != rhs.size() {
            json!({ "kind": "Size", "size_p": lhs.size(), "size_q": rhs.size() })
        } else {
            let j = (1..n).find(|&j| lhs.rank(j) < rhs.rank(j)).expect("some rank drops");
            json!({ "kind": "Rank", "power": j, "rank_p": lhs.rank(j), "rank_q": rhs.rank(j) })
        };
    }
    let verb = match (stable, holds) {
        (true, true) => "stably degenerates",
        (true, false) => "does not stably degenerate",
        (false, true) => "degenerates",
        (false, false) => "does not degenerate",
    };
    let summary = format!("{}: {p} {verb} to {q}", if holds { "Yes" } else { "No" });
    reply(if holds { EXIT_YES } else { EXIT_NO }, report, summary)
}

fn write_dot(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    if let Some(p) = path {
        fs::write(p, text).map_err(|e| InputError::Io { path: p.display().to_string(), message: e.to_string() })?;
    }
    Ok(())
}

fn jordan_hasse(n: usize, size: usize, stable: bool, dot: Option<&Path>) -> CmdResult {
    let h = hasse(n, size, stable)?;
    let g = h.to_digraph(|p| p.to_string());
    let text = g.to_dot(&format!("{} n={n} size={size}", if stable { "stable" } else { "degeneration" }));
    write_dot(dot, &text)?;
    let report = json!({
        "verdict": "Yes",
        "nodes": g.labels,
        "covers": g.labeled_edges().into_iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
        "dot": text,
    });
    reply(EXIT_YES, report, format!("{} nodes, {} covering edges", g.node_count(), g.edges.len()))
}

fn jordan_knorrer(n: usize, size: usize, dot: Option<&Path>) -> CmdResult {
    let k = knorrer_poset(n, size)?;
    let h = hasse(n, size, true)?.to_digraph(|p| p.to_string());
    let same = k.isomorphic_under(&h, partition_label_from_knorrer);
    let text = k.to_dot(&format!("knorrer n={n} size={size}"));
    write_dot(dot, &text)?;
    let report = json!({
        "verdict": if same { "Yes" } else { "No" },
        "nodes": k.labels,
        "covers": k.labeled_edges().into_iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
        "isomorphic_to_stable_hasse": same,
        "caveat": KNORRER_CAVEAT,
        "dot": text,
    });
    reply(if same { EXIT_YES } else { EXIT_NO }, report, format!("{} nodes over k[[x,y,z]]/(x^{n}+y^2+z^2)", k.node_count()))
}

fn mf_verify(phi: &Path, psi: &Path, f: &Path, at: &[String]) -> CmdResult {
    let mut loader = Loader::new();
    let (mut phi, mut psi, mut f) = (loader.poly_matrix_file(phi)?, loader.poly_matrix_file(psi)?, loader.poly_file(f)?);
    if !at.is_empty() {
        let field = f.field();
        let parsed = at.iter().map(|s| parse_assignment(field, s)).collect::<Result<Vec<_>, _>>()?;
        let subs: Vec<(&str, Scalar)> = parsed.iter().map(|(v, c)| (v.as_str(), c.clone())).collect();
        phi = phi.specialize(&subs)?;
        psi = psi.specialize(&subs)?;
        f = f.specialize(&subs)?;
    }
    mf_reply(&phi, &psi, &f, at)
}

fn mf_reply(phi: &PolyMatrix, psi: &PolyMatrix, f: &Poly, at: &[String]) -> CmdResult {
    let ok = verify_matrix_factorization(phi, psi, f)?;
    let mut report = json!({
        "verdict": if ok { "Yes" } else { "No" },
        "f": f.to_string(),
        "at": at,
    });
    if !ok {
        report["certificate"] = json!({
            "phi_psi": PolyMatrixJson::of(&phi.mul(psi)?),
            "psi_phi": PolyMatrixJson::of(&psi.mul(phi)?),
        });
    }
    if !at.is_empty() {
        report["phi"] = serde_json::to_value(PolyMatrixJson::of(phi)).expect("serializable");
        report["psi"] = serde_json::to_value(PolyMatrixJson::of(psi)).expect("serializable");
    }
    let summary = if ok {
        format!("Yes: phi psi = psi phi = ({f}) I")
    } else {
        format!("No: the pair does not factor {f}")
    };
    reply(if ok { EXIT_YES } else { EXIT_NO }, report, summary)
}

fn emit(example: ExampleName, dir: Option<&Path>) -> Result<Vec<String>, Failure> {
    let Some(dir) = dir else { return Ok(Vec::new()) };
    let io = |e: std::io::Error| InputError::Io { path: dir.display().to_string(), message: e.to_string() };
    fs::create_dir_all(dir).map_err(io)?;
    let mut written = Vec::new();
    for file in bundled::files(example) {
        let p = dir.join(file.name);
        fs::write(&p, &file.text).map_err(io)?;
        written.push(p.display().to_string());
    }
    Ok(written)
}

fn examples(name: ExampleName, dir: Option<&Path>, seed: u64) -> CmdResult {
    let written = emit(name, dir)?;
    let mut out = match name {
        ExampleName::Riedtmann => riedtmann(seed)?,
        ExampleName::CuspMf => {
            let zero = Field::Rational.zero();
            let phi0 = cusp::big_phi().specialize(&[("t", zero.clone())])?;
            let psi0 = cusp::big_psi().specialize(&[("t", zero)])?;
            let f = cusp::f();
            let deformed = verify_matrix_factorization(&cusp::big_phi(), &cusp::big_psi(), &f)?;
            let classical = verify_matrix_factorization(&cusp::phi(), &cusp::psi(), &f)?;
            let as_written = verify_matrix_factorization(&cusp::big_phi(), &cusp::big_psi(), &cusp::f_as_written())?;
            let special = phi0 == cusp::phi() && psi0 == cusp::psi();
            let ok = deformed && classical && special;
            Reply {
                code: if ok { EXIT_YES } else { EXIT_NO },
                report: json!({
                    "verdict": if ok { "Yes" } else { "No" },
                    "f": f.to_string(),
                    "sign": "phi psi = -(x^3 - y^2) I",
                    "deformed_pair_factors_f": deformed,
                    "classical_pair_factors_f": classical,
                    "deformed_pair_factors_x3_minus_y2": as_written,
                    "specialization_t0_matches_classical": special,
                }),
                summary: format!("{}: (Phi, Psi) factors {f} identically in t; t = 0 gives (phi, psi)", if ok { "Yes" } else { "No" }),
            }
        }
        ExampleName::JordanN3 => {
            let size = bundled::JORDAN_N3_SIZE;
            let h = hasse(3, size, true)?.to_digraph(|p| p.to_string());
            let k = knorrer_poset(3, size)?;
            let same = k.isomorphic_under(&h, partition_label_from_knorrer);
            Reply {
                code: if same { EXIT_YES } else { EXIT_NO },
                report: json!({
                    "verdict": if same { "Yes" } else { "No" },
                    "size": size,
                    "jordan_nodes": h.labels,
                    "jordan_covers": h.labeled_edges().into_iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
                    "knorrer_nodes": k.labels,
                    "knorrer_covers": k.labeled_edges().into_iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
                    "isomorphic": same,
                    "caveat": KNORRER_CAVEAT,
                }),
                summary: format!("stable poset for n = 3, size {size}: {} nodes, relabeling is an isomorphism: {same}", h.node_count()),
            }
        }
    };
    if !written.is_empty() {
        out.report["written"] = json!(written);
    }
    Ok(out)
}

fn riedtmann(seed: u64) -> Result<Reply, Failure> {
    let r = riedtmann_algebra();
    let free = ModuleRep::free_module(&r, 1);
    let sum = |a: i64, b: i64| m_lambda(&r, a).direct_sum(&m_lambda(&r, b));
    let (m12, m1m) = (sum(1, 2)?, sum(1, -1)?);
    let f0_12 = fitting_ideal(&presentation_of(&m12), 0)?;
    let f0_1m = fitting_ideal(&presentation_of(&m1m), 0)?;
    let f0_r = fitting_ideal(&presentation_of(&free), 0)?;
    let budget = DegenerationBudget { search: SearchOptions { seed, ..SearchOptions::default() }, ..DegenerationBudget::default() };
    let v = degenerates(&free, &m12, &budget)?;
    let sv = stably_degenerates(&free, &m12, 2, &budget)?;
    let mut report = json!({
        "verdict": v.label(),
        "fitting_0": {
            "R": report::ideal(&f0_r),
            "M_1+M_2": report::ideal(&f0_12),
            "M_1+M_-1": report::ideal(&f0_1m),
        },
        "stable_verdict": sv.label(),
    });
    if let Verdict::No(rf) = &v {
        report["certificate"] = report::refutation(&r, rf);
    }
    if let StableVerdict::No(rf) = &sv {
        report["stable_certificate"] = report::stable_refutation(&r, rf);
    }
    let summary = match &v {
        Verdict::No(rf) => format!("No: R does not degenerate to M_1 ⊕ M_2; {}", refutation_text(&r, rf)),
        other => format!("{}: unexpected verdict for R vs M_1 ⊕ M_2", other.label()),
    };
    Ok(Reply { code: verdict_code(v.label()), report, summary })
}
