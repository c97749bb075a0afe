//! JSON inputs: schemas as serde types, and loaders that enforce every
//! module-level invariant and report failures with JSON pointers.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use cmdegen_core::algebra::{monomial_quotient, same_algebra};
use cmdegen_core::mfpoly::{Poly, PolyMatrix as MultiPolyMatrix};
use cmdegen_core::upoly::{PolyMatrix, UPoly};
use cmdegen_core::witness::{Family, Witness};
use cmdegen_core::{Error as CoreError, Field, FiniteAlgebra, Matrix, ModuleRep, Scalar};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Anything that makes an input unusable; always exit code 3.
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: invalid JSON: {message}")]
    Syntax { path: String, message: String },
    #[error("{path}#{pointer}: {message}")]
    Schema { path: String, pointer: String, message: String },
    #[error("{path}#{pointer}: {source}")]
    Invalid {
        path: String,
        pointer: String,
        #[source]
        source: CoreError,
    },
    #[error("{0}")]
    Usage(String),
}

impl InputError {
    /// The underlying core error, if the input parsed but broke an invariant.
    pub fn core(&self) -> Option<&CoreError> {
        match self {
            InputError::Invalid { source, .. } => Some(source),
            _ => None,
        }
    }
}

/// A coefficient: JSON integer or a string such as `"-3/4"`.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(untagged)]
pub enum Coef {
    Int(i64),
    Text(String),
}

impl Coef {
    pub fn of(s: &Scalar) -> Coef {
        Coef::Text(s.to_string())
    }

    fn to_scalar(&self, f: Field) -> Result<Scalar, CoreError> {
        match self {
            Coef::Int(i) => Ok(f.from_i64(*i)),
            Coef::Text(s) => f.parse(s),
        }
    }
}

/// Dense row-major matrix.
pub type MatrixJson = Vec<Vec<Coef>>;

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialJson {
    pub vars: Vec<String>,
    pub exponents: Vec<u32>,
}

/// `{"field", "dim", "basis", "unit", "table"}`, or `{"field", "monomial"}`
/// as a shorthand for `k[x,...]/(x^a,...)`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    #[serde(default = "default_field")]
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<usize>,
    /// `table[i][j]` holds the coordinates of `e_i e_j`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<Vec<Coef>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monomial: Option<MonomialJson>,
}

fn default_field() -> String {
    "Q".into()
}

impl AlgebraJson {
    pub fn of(a: &FiniteAlgebra) -> Self {
        AlgebraJson {
            field: a.field().to_string(),
            dim: Some(a.dim()),
            basis: Some(a.basis_names().to_vec()),
            unit: Some(a.unit_index()),
            table: Some(
                a.table()
                    .iter()
                    .map(|row| row.iter().map(|v| v.iter().map(Coef::of).collect()).collect())
                    .collect(),
            ),
            monomial: None,
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    /// Inline algebra object or a path relative to the referring file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<Value>,
    pub dim: usize,
    /// One matrix per basis element; the unit's may be omitted.
    pub actions: Vec<MatrixJson>,
}

impl ModuleJson {
    pub fn of(m: &ModuleRep, with_algebra: bool) -> Self {
        ModuleJson {
            algebra: with_algebra.then(|| serde_json::to_value(AlgebraJson::of(m.algebra())).expect("serializable")),
            dim: m.dim(),
            actions: m.actions().iter().map(matrix_json).collect(),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<Value>,
    /// Module objects or paths.
    pub z: Value,
    pub m: Value,
    pub n: Value,
    pub phi: MatrixJson,
    pub psi: MatrixJson,
    pub beta: MatrixJson,
}

impl WitnessJson {
    pub fn of(w: &Witness) -> Self {
        let module = |m: &ModuleRep| serde_json::to_value(ModuleJson::of(m, false)).expect("serializable");
        WitnessJson {
            algebra: Some(serde_json::to_value(AlgebraJson::of(w.m.algebra())).expect("serializable")),
            z: module(&w.z),
            m: module(&w.m),
            n: module(&w.n),
            phi: matrix_json(&w.phi),
            psi: matrix_json(&w.psi),
            beta: matrix_json(&w.beta),
        }
    }
}

/// Polynomial entries as coefficient lists in `t`, constant term first.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<Value>,
    pub rank: usize,
    pub actions: Vec<Vec<Vec<Vec<Coef>>>>,
}

impl FamilyJson {
    pub fn of(fam: &Family) -> Self {
        let poly = |p: &UPoly| p.coeffs().iter().map(Coef::of).collect::<Vec<_>>();
        FamilyJson {
            algebra: Some(serde_json::to_value(AlgebraJson::of(fam.algebra())).expect("serializable")),
            rank: fam.rank(),
            actions: fam
                .actions()
                .iter()
                .map(|x| (0..x.rows()).map(|r| (0..x.cols()).map(|c| poly(x.get(r, c))).collect()).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coef: Coef,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PolyJson {
    #[serde(default = "default_field")]
    pub field: String,
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PolyMatrixJson {
    #[serde(default = "default_field")]
    pub field: String,
    pub vars: Vec<String>,
    /// `entries[i][j]` is the term list of entry `(i, j)`.
    pub entries: Vec<Vec<Vec<TermJson>>>,
}

fn terms_json(p: &Poly) -> Vec<TermJson> {
    p.terms().map(|(e, c)| TermJson { exp: e.clone(), coef: Coef::of(c) }).collect()
}

impl PolyJson {
    pub fn of(p: &Poly) -> Self {
        PolyJson { field: p.field().to_string(), vars: p.vars().to_vec(), terms: terms_json(p) }
    }
}

impl PolyMatrixJson {
    pub fn of(m: &MultiPolyMatrix) -> Self {
        let first = &m.entries()[0];
        PolyMatrixJson {
            field: first.field().to_string(),
            vars: first.vars().to_vec(),
            entries: (0..m.rows()).map(|i| (0..m.cols()).map(|j| terms_json(m.get(i, j))).collect()).collect(),
        }
    }
}

pub fn matrix_json(m: &Matrix) -> MatrixJson {
    (0..m.rows()).map(|r| m.row(r).iter().map(Coef::of).collect()).collect()
}

/// Reads files relative to a base directory and keeps the algebras seen so
/// far, so that equal algebras are shared.
#[derive(Default)]
pub struct Loader {
    algebras: Vec<Arc<FiniteAlgebra>>,
}

/// A JSON document and where it came from.
struct Doc {
    name: String,
    dir: PathBuf,
    value: Value,
}

fn read_doc(path: &Path) -> Result<Doc, InputError> {
    let name = path.display().to_string();
    let text = if name == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| InputError::Io { path: name.clone(), message: e.to_string() })?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| InputError::Io { path: name.clone(), message: e.to_string() })?
    };
    let value = serde_json::from_str(&text).map_err(|e| InputError::Syntax { path: name.clone(), message: e.to_string() })?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok(Doc { name, dir, value })
}

fn escape_pointer(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

/// Typed view of `value`, with errors located at `pointer` + inner path.
fn typed<T: DeserializeOwned>(doc: &str, pointer: &str, value: &Value) -> Result<T, InputError> {
    serde_path_to_error::deserialize::<_, T>(value.clone()).map_err(|e| {
        let mut p = String::from(pointer);
        for seg in e.path().iter() {
            match seg {
                serde_path_to_error::Segment::Seq { index } => p.push_str(&format!("/{index}")),
                serde_path_to_error::Segment::Map { key } => p.push_str(&format!("/{}", escape_pointer(key))),
                _ => {}
            }
        }
        InputError::Schema { path: doc.into(), pointer: p, message: e.into_inner().to_string() }
    })
}

fn invalid(doc: &str, pointer: impl Into<String>, source: CoreError) -> InputError {
    InputError::Invalid { path: doc.into(), pointer: pointer.into(), source }
}

fn schema(doc: &str, pointer: impl Into<String>, message: impl Into<String>) -> InputError {
    InputError::Schema { path: doc.into(), pointer: pointer.into(), message: message.into() }
}

fn parse_field(doc: &str, pointer: &str, s: &str) -> Result<Field, InputError> {
    s.parse().map_err(|e| invalid(doc, format!("{pointer}/field"), e))
}

fn parse_matrix(doc: &str, pointer: &str, f: Field, m: &MatrixJson, rows: usize, cols: usize) -> Result<Matrix, InputError> {
    if m.len() != rows {
        return Err(schema(doc, pointer, format!("expected {rows} rows, found {}", m.len())));
    }
    let mut out = Matrix::zeros(f, rows, cols);
    for (r, row) in m.iter().enumerate() {
        if row.len() != cols {
            return Err(schema(doc, format!("{pointer}/{r}"), format!("expected {cols} entries, found {}", row.len())));
        }
        for (c, x) in row.iter().enumerate() {
            out[(r, c)] = x.to_scalar(f).map_err(|e| invalid(doc, format!("{pointer}/{r}/{c}"), e))?;
        }
    }
    Ok(out)
}

/// Where a core algebra error points inside the algebra object.
fn algebra_pointer(base: &str, e: &CoreError) -> String {
    match e {
        CoreError::NonCommutative { i, j, .. } => format!("{base}/table/{i}/{j}"),
        CoreError::NonAssociative { i, j, .. } => format!("{base}/table/{i}/{j}"),
        CoreError::NoUnit { .. } => format!("{base}/unit"),
        CoreError::NotPrime(_) | CoreError::Parse(_) => format!("{base}/field"),
        _ => format!("{base}/table"),
    }
}

impl Loader {
    pub fn new() -> Self {
        Self::default()
    }

    fn intern(&mut self, a: FiniteAlgebra) -> Arc<FiniteAlgebra> {
        if let Some(known) = self.algebras.iter().find(|k| k.same_as(&a)) {
            return known.clone();
        }
        let a = Arc::new(a);
        self.algebras.push(a.clone());
        a
    }

    pub fn algebra_file(&mut self, path: &Path) -> Result<Arc<FiniteAlgebra>, InputError> {
        let doc = read_doc(path)?;
        self.algebra_value(&doc.name, &doc.dir, "", &doc.value)
    }

    /// An algebra given inline or as a path string.
    fn algebra_value(&mut self, doc: &str, dir: &Path, pointer: &str, v: &Value) -> Result<Arc<FiniteAlgebra>, InputError> {
        if let Value::String(rel) = v {
            let sub = read_doc(&dir.join(rel))?;
            return self.algebra_value(&sub.name, &sub.dir, "", &sub.value);
        }
        let j: AlgebraJson = typed(doc, pointer, v)?;
        let f = parse_field(doc, pointer, &j.field)?;
        let alg = match (&j.table, &j.monomial) {
            (Some(_), Some(_)) => return Err(schema(doc, pointer, "give either \"table\" or \"monomial\", not both")),
            (None, None) => return Err(schema(doc, pointer, "missing \"table\" (or \"monomial\")")),
            (None, Some(mono)) => {
                if mono.vars.len() != mono.exponents.len() {
                    return Err(schema(doc, format!("{pointer}/monomial"), "vars and exponents differ in length"));
                }
                let vars: Vec<&str> = mono.vars.iter().map(String::as_str).collect();
                monomial_quotient(f, &vars, &mono.exponents).map_err(|e| invalid(doc, format!("{pointer}/monomial"), e))?
            }
            (Some(table), None) => {
                let d = table.len();
                if let Some(dim) = j.dim {
                    if dim != d {
                        return Err(schema(doc, format!("{pointer}/dim"), format!("dim {dim} but table has {d} rows")));
                    }
                }
                let names = j.basis.clone().unwrap_or_else(|| (0..d).map(|i| format!("e{i}")).collect());
                if names.len() != d {
                    return Err(schema(doc, format!("{pointer}/basis"), format!("{} names for dimension {d}", names.len())));
                }
                let mut dense = Vec::with_capacity(d);
                for (i, row) in table.iter().enumerate() {
                    if row.len() != d {
                        return Err(schema(doc, format!("{pointer}/table/{i}"), format!("expected {d} products")));
                    }
                    let mut out_row = Vec::with_capacity(d);
                    for (k, prod) in row.iter().enumerate() {
                        let at = format!("{pointer}/table/{i}/{k}");
                        if prod.len() != d {
                            return Err(schema(doc, at, format!("expected {d} coordinates")));
                        }
                        let v = prod
                            .iter()
                            .enumerate()
                            .map(|(l, c)| c.to_scalar(f).map_err(|e| invalid(doc, format!("{at}/{l}"), e)))
                            .collect::<Result<Vec<_>, _>>()?;
                        out_row.push(v);
                    }
                    dense.push(out_row);
                }
                let unit = j.unit.unwrap_or(0);
                FiniteAlgebra::new(f, names, unit, dense).map_err(|e| invalid(doc, algebra_pointer(pointer, &e), e))?
            }
        };
        Ok(self.intern(alg))
    }

    pub fn module_file(&mut self, path: &Path) -> Result<ModuleRep, InputError> {
        let doc = read_doc(path)?;
        self.module_value(&doc.name, &doc.dir, "", &doc.value, None)
    }

    fn module_value(
        &mut self,
        doc: &str,
        dir: &Path,
        pointer: &str,
        v: &Value,
        inherited: Option<&Arc<FiniteAlgebra>>,
    ) -> Result<ModuleRep, InputError> {
        if let Value::String(rel) = v {
            let sub = read_doc(&dir.join(rel))?;
            return self.module_value(&sub.name, &sub.dir, "", &sub.value, inherited);
        }
        let j: ModuleJson = typed(doc, pointer, v)?;
        let alg = match (&j.algebra, inherited) {
            (Some(a), _) => self.algebra_value(doc, dir, &format!("{pointer}/algebra"), a)?,
            (None, Some(a)) => a.clone(),
            (None, None) => return Err(schema(doc, pointer, "missing \"algebra\"")),
        };
        let f = alg.field();
        let d = alg.dim();
        let n = j.dim;
        let mut actions = Vec::with_capacity(d);
        let omitted = match j.actions.len() {
            k if k == d => false,
            k if k + 1 == d => true,
            k => {
                return Err(schema(
                    doc,
                    format!("{pointer}/actions"),
                    format!("expected {d} action matrices (or {} without the unit), found {k}", d - 1),
                ))
            }
        };
        let mut given = j.actions.iter().enumerate();
        for i in 0..d {
            if omitted && i == alg.unit_index() {
                actions.push(Matrix::identity(f, n));
                continue;
            }
            let (k, m) = given.next().expect("counted above");
            actions.push(parse_matrix(doc, &format!("{pointer}/actions/{k}"), f, m, n, n)?);
        }
        if let Some(a) = inherited {
            if !same_algebra(a, &alg) {
                return Err(invalid(doc, format!("{pointer}/algebra"), CoreError::AlgebraMismatch));
            }
        }
        ModuleRep::new(alg, n, actions).map_err(|e| invalid(doc, format!("{pointer}/actions"), e))
    }

    /// Two modules that must live over the same algebra.
    pub fn module_pair(&mut self, m: &Path, n: &Path) -> Result<(ModuleRep, ModuleRep), InputError> {
        let mm = self.module_file(m)?;
        let nn = self.module_file(n)?;
        if !same_algebra(mm.algebra(), nn.algebra()) {
            return Err(invalid(&n.display().to_string(), "/algebra", CoreError::AlgebraMismatch));
        }
        Ok((mm, nn))
    }

    pub fn witness_file(&mut self, path: &Path) -> Result<Witness, InputError> {
        let doc = read_doc(path)?;
        let j: WitnessJson = typed(&doc.name, "", &doc.value)?;
        let top = match &j.algebra {
            Some(a) => Some(self.algebra_value(&doc.name, &doc.dir, "/algebra", a)?),
            None => None,
        };
        let z = self.module_value(&doc.name, &doc.dir, "/z", &j.z, top.as_ref())?;
        let base = top.unwrap_or_else(|| z.algebra().clone());
        let m = self.module_value(&doc.name, &doc.dir, "/m", &j.m, Some(&base))?;
        let n = self.module_value(&doc.name, &doc.dir, "/n", &j.n, Some(&base))?;
        let f = base.field();
        let phi = parse_matrix(&doc.name, "/phi", f, &j.phi, m.dim(), z.dim())?;
        let psi = parse_matrix(&doc.name, "/psi", f, &j.psi, z.dim(), z.dim())?;
        let beta = parse_matrix(&doc.name, "/beta", f, &j.beta, n.dim(), m.dim() + z.dim())?;
        Ok(Witness { z, m, n, phi, psi, beta })
    }

    pub fn family_file(&mut self, path: &Path) -> Result<Family, InputError> {
        let doc = read_doc(path)?;
        let j: FamilyJson = typed(&doc.name, "", &doc.value)?;
        let Some(a) = &j.algebra else {
            return Err(schema(&doc.name, "", "missing \"algebra\""));
        };
        let alg = self.algebra_value(&doc.name, &doc.dir, "/algebra", a)?;
        let f = alg.field();
        let r = j.rank;
        let mut actions = Vec::new();
        for (i, x) in j.actions.iter().enumerate() {
            let mut pm = PolyMatrix::zeros(f, r, r);
            if x.len() != r || x.iter().any(|row| row.len() != r) {
                return Err(schema(&doc.name, format!("/actions/{i}"), format!("expected a {r}x{r} matrix")));
            }
            for (a, row) in x.iter().enumerate() {
                for (b, coeffs) in row.iter().enumerate() {
                    let cs = coeffs
                        .iter()
                        .enumerate()
                        .map(|(k, c)| c.to_scalar(f).map_err(|e| invalid(&doc.name, format!("/actions/{i}/{a}/{b}/{k}"), e)))
                        .collect::<Result<Vec<_>, _>>()?;
                    pm.set(a, b, UPoly::from_coeffs(f, cs));
                }
            }
            actions.push(pm);
        }
        Family::new(alg, r, actions).map_err(|e| invalid(&doc.name, "/actions", e))
    }

    pub fn poly_file(&mut self, path: &Path) -> Result<Poly, InputError> {
        let doc = read_doc(path)?;
        let j: PolyJson = typed(&doc.name, "", &doc.value)?;
        let f = parse_field(&doc.name, "", &j.field)?;
        poly_from_terms(&doc.name, "/terms", f, &j.vars, &j.terms)
    }

    pub fn poly_matrix_file(&mut self, path: &Path) -> Result<MultiPolyMatrix, InputError> {
        let doc = read_doc(path)?;
        let j: PolyMatrixJson = typed(&doc.name, "", &doc.value)?;
        let f = parse_field(&doc.name, "", &j.field)?;
        let rows = j
            .entries
            .iter()
            .enumerate()
            .map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .map(|(c, terms)| poly_from_terms(&doc.name, &format!("/entries/{r}/{c}"), f, &j.vars, terms))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        MultiPolyMatrix::from_rows(rows).map_err(|e| invalid(&doc.name, "/entries", e))
    }
}

fn poly_from_terms(doc: &str, pointer: &str, f: Field, vars: &[String], terms: &[TermJson]) -> Result<Poly, InputError> {
    let names: Vec<&str> = vars.iter().map(String::as_str).collect();
    let mut parsed = Vec::with_capacity(terms.len());
    for (k, t) in terms.iter().enumerate() {
        if t.exp.len() != vars.len() {
            return Err(schema(doc, format!("{pointer}/{k}/exp"), format!("expected {} exponents", vars.len())));
        }
        let c = t.coef.to_scalar(f).map_err(|e| invalid(doc, format!("{pointer}/{k}/coef"), e))?;
        parsed.push((t.exp.clone(), c));
    }
    Poly::from_terms(f, &names, parsed).map_err(|e| invalid(doc, pointer, e))
}

/// `"t=0"` or `"x=1/2"`, parsed over `f`.
pub fn parse_assignment(f: Field, s: &str) -> Result<(String, Scalar), InputError> {
    let (var, val) = s
        .split_once('=')
        .ok_or_else(|| InputError::Usage(format!("expected VAR=VALUE, got {s:?}")))?;
    let v = f.parse(val.trim()).map_err(|e| InputError::Usage(format!("{s:?}: {e}")))?;
    Ok((var.trim().to_string(), v))
}
