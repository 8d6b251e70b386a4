//! The workspace document: parsing, reference resolution and validation.
//!
//! A document is a JSON object with the named sections `fields`, `algebras`,
//! `subalgebras`, `families`, `modules` and `envelopes`, an optional `params`
//! section binding symbolic parameters, and a `tasks` section holding default
//! arguments for the subcommands. Every object is checked by its validator
//! while the workspace is built, so a [`Workspace`] is always consistent.

use std::cell::Cell;
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;

use modind_core::envelopes::{build_envelope_adjoint, EnvelopeSpec};
use modind_core::fields::FieldKind;
use modind_core::induction::{adapt_basis, induce, InducedModule};
use modind_core::liealg::{format_vector, LieAlgebra, Subalgebra};
use modind_core::modules::Representation;
use modind_core::uea::FFamily;
use modind_core::{Fe, Field, Matrix, Poly};
use serde_json::{Map, Value};

use crate::error::{CliError, Diagnostic, DiagnosticKind, Result};
use crate::expr::{self, Expr, Scope};

pub const SCHEMA: &str = "modind/1";

const SECTIONS: &[&str] = &[
    "schema",
    "params",
    "fields",
    "algebras",
    "subalgebras",
    "families",
    "modules",
    "envelopes",
    "tasks",
];

/// Settings applied while building a workspace.
#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Parameter bindings `name = expression`; they override `params`.
    pub params: Vec<(String, String)>,
    /// Field used by objects that do not name one.
    pub default_field: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SubalgebraEntry {
    pub parent: String,
    pub sub: Subalgebra,
    /// The subalgebra as an algebra in its own right.
    pub algebra: Arc<LieAlgebra>,
}

#[derive(Clone, Debug)]
pub struct FamilyEntry {
    pub field: Field,
    /// Polynomials keyed by basis label.
    pub polys: BTreeMap<String, Poly>,
}

#[derive(Clone, Debug)]
pub enum ModuleSource {
    Explicit,
    Induced {
        induced: Box<InducedModule>,
        subalgebra: String,
        module: String,
        family: String,
    },
}

#[derive(Clone, Debug)]
pub struct ModuleEntry {
    /// Name of the algebra or subalgebra acting.
    pub algebra: String,
    /// The module with its display labels.
    pub rep: Representation,
    pub source: ModuleSource,
}

impl ModuleEntry {
    pub fn induced(&self) -> Option<&InducedModule> {
        match &self.source {
            ModuleSource::Induced { induced, .. } => Some(induced),
            ModuleSource::Explicit => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct EnvelopeEntry {
    pub algebra: String,
    pub spec: EnvelopeSpec,
}

/// A fully resolved and validated document.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub fields: BTreeMap<String, Field>,
    pub algebras: BTreeMap<String, Arc<LieAlgebra>>,
    pub subalgebras: BTreeMap<String, SubalgebraEntry>,
    pub families: BTreeMap<String, FamilyEntry>,
    pub modules: BTreeMap<String, ModuleEntry>,
    pub envelopes: BTreeMap<String, EnvelopeEntry>,
    pub tasks: Map<String, Value>,
    params: BTreeMap<String, Expr>,
}

impl Workspace {
    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
            && self.algebras.is_empty()
            && self.subalgebras.is_empty()
            && self.families.is_empty()
            && self.modules.is_empty()
            && self.envelopes.is_empty()
    }

    pub fn module(&self, name: &str) -> Result<&ModuleEntry> {
        self.modules
            .get(name)
            .ok_or_else(|| CliError::Usage(format!("no module named `{}`", name)))
    }

    pub fn envelope(&self, name: &str) -> Result<&EnvelopeEntry> {
        self.envelopes
            .get(name)
            .ok_or_else(|| CliError::Usage(format!("no envelope named `{}`", name)))
    }

    pub fn subalgebra(&self, name: &str) -> Result<&SubalgebraEntry> {
        self.subalgebras
            .get(name)
            .ok_or_else(|| CliError::Usage(format!("no subalgebra named `{}`", name)))
    }

    pub fn family(&self, name: &str) -> Result<&FamilyEntry> {
        self.families
            .get(name)
            .ok_or_else(|| CliError::Usage(format!("no family named `{}`", name)))
    }

    /// The argument object of a task, or an empty object.
    pub fn task(&self, name: &str) -> Map<String, Value> {
        match self.tasks.get(name) {
            Some(Value::Object(m)) => m.clone(),
            _ => Map::new(),
        }
    }

    /// Parses an element expression or integer over `field`.
    pub fn scalar(&self, field: &Field, v: &Value) -> Result<Fe> {
        let scope = FieldScope::new(field, &self.params);
        scalar(&scope, v).map_err(usage)
    }

    /// Parses a matrix given as a list of rows.
    pub fn matrix(&self, field: &Field, v: &Value, rows: usize, cols: usize) -> Result<Matrix> {
        let scope = FieldScope::new(field, &self.params);
        matrix(&scope, v, rows, cols).map_err(usage)
    }

    /// Polynomials of `family` for the given labels, in order.
    pub fn family_polys(
        &self,
        family: &str,
        labels: &[String],
        field: &Field,
    ) -> Result<Vec<Poly>> {
        let fam = self.family(family)?;
        labels
            .iter()
            .map(|l| {
                let p = fam.polys.get(l).ok_or_else(|| {
                    usage(format!("family `{}` has no polynomial for `{}`", family, l))
                })?;
                Ok(p.to_field(field)?)
            })
            .collect()
    }
}

fn usage(m: impl Into<String>) -> CliError {
    CliError::Usage(m.into())
}

/// Reads and builds a workspace from a file.
pub fn parse_file(path: &Path, opts: &Options) -> Result<Workspace> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_str(&text, opts)
}

/// Builds a workspace from document text. Whitespace-only text is the empty
/// document.
pub fn parse_str(text: &str, opts: &Options) -> Result<Workspace> {
    if text.trim().is_empty() {
        return parse_value(&Value::Object(Map::new()), opts);
    }
    let value: Value = serde_json::from_str(text).map_err(|e| {
        CliError::Document(vec![Diagnostic::new(
            DiagnosticKind::Syntax,
            format!("line {}, column {}", e.line(), e.column()),
            e.to_string(),
        )])
    })?;
    parse_value(&value, opts)
}

pub fn parse_value(value: &Value, opts: &Options) -> Result<Workspace> {
    let mut b = Builder::default();
    let Some(root) = value.as_object() else {
        return Err(CliError::Document(vec![Diagnostic::new(
            DiagnosticKind::Schema,
            "",
            "the document must be an object",
        )]));
    };
    b.build(root, opts);
    if b.diags.is_empty() {
        Ok(b.ws)
    } else {
        Err(CliError::Document(b.diags))
    }
}

fn child(path: &str, key: &str) -> String {
    format!("{}/{}", path, key.replace('~', "~0").replace('/', "~1"))
}

// ---- scopes ---------------------------------------------------------------

/// The generators of every level of the tower of `f`, embedded into `f`.
pub fn tower_generators(f: &Field) -> Vec<(String, Fe)> {
    let mut out = Vec::new();
    let mut level = f.clone();
    loop {
        let next = match level.kind() {
            FieldKind::Prime { .. } => break,
            FieldKind::Algebraic { base, var, .. } | FieldKind::Rational { base, var } => {
                if let Ok(g) = f.embed(&level.generator().unwrap()) {
                    out.push((var.clone(), g));
                }
                base.clone()
            }
            FieldKind::Inseparable { base, .. } => base.clone(),
        };
        level = next;
    }
    out
}

const MAX_PARAM_DEPTH: usize = 32;

struct FieldScope<'a> {
    field: Field,
    gens: Vec<(String, Fe)>,
    params: &'a BTreeMap<String, Expr>,
    depth: Cell<usize>,
}

impl<'a> FieldScope<'a> {
    fn new(field: &Field, params: &'a BTreeMap<String, Expr>) -> Self {
        FieldScope {
            field: field.clone(),
            gens: tower_generators(field),
            params,
            depth: Cell::new(0),
        }
    }
}

impl Scope for FieldScope<'_> {
    fn field(&self) -> &Field {
        &self.field
    }

    fn lookup(&self, name: &str) -> std::result::Result<Option<expr::Value>, String> {
        if let Some((_, g)) = self.gens.iter().find(|(n, _)| n == name) {
            return Ok(Some(expr::Value::Scalar(g.clone())));
        }
        let Some(e) = self.params.get(name) else {
            return Ok(None);
        };
        if self.depth.get() >= MAX_PARAM_DEPTH {
            return Err(format!(
                "parameter `{}` is defined in terms of itself",
                name
            ));
        }
        self.depth.set(self.depth.get() + 1);
        let v = expr::eval(e, self);
        self.depth.set(self.depth.get() - 1);
        match v? {
            s @ expr::Value::Scalar(_) => Ok(Some(s)),
            _ => Err(format!("parameter `{}` is not a field element", name)),
        }
    }
}

struct BasisScope<'a> {
    inner: FieldScope<'a>,
    labels: &'a [String],
}

impl Scope for BasisScope<'_> {
    fn field(&self) -> &Field {
        &self.inner.field
    }

    fn lookup(&self, name: &str) -> std::result::Result<Option<expr::Value>, String> {
        if let Some(i) = self.labels.iter().position(|l| l == name) {
            let mut v = vec![self.inner.field.zero(); self.labels.len()];
            v[i] = self.inner.field.one();
            return Ok(Some(expr::Value::Vector(v)));
        }
        self.inner.lookup(name)
    }
}

struct PolyScope<'a> {
    inner: FieldScope<'a>,
}

impl Scope for PolyScope<'_> {
    fn field(&self) -> &Field {
        &self.inner.field
    }

    fn lookup(&self, name: &str) -> std::result::Result<Option<expr::Value>, String> {
        if name == "t" {
            return Ok(Some(expr::Value::Poly(Poly::x(&self.inner.field))));
        }
        self.inner.lookup(name)
    }
}

fn eval_str(src: &str, scope: &dyn Scope) -> std::result::Result<expr::Value, String> {
    let e = expr::parse(src).map_err(|e| format!("in `{}` {}", src, e))?;
    expr::eval(&e, scope).map_err(|m| format!("in `{}`: {}", src, m))
}

fn scalar(scope: &dyn Scope, v: &Value) -> std::result::Result<Fe, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|n| scope.field().from_int(n))
            .ok_or_else(|| format!("`{}` is not an integer; write fractions as strings", n)),
        Value::String(s) => match eval_str(s, scope)? {
            expr::Value::Scalar(x) => Ok(x),
            _ => Err(format!("`{}` is not a field element", s)),
        },
        other => Err(format!(
            "expected a field element, found {}",
            kind_of(other)
        )),
    }
}

fn kind_of(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "a list",
        Value::Object(_) => "an object",
    }
}

fn matrix(
    scope: &dyn Scope,
    v: &Value,
    rows: usize,
    cols: usize,
) -> std::result::Result<Matrix, String> {
    let Some(list) = v.as_array() else {
        return Err("a matrix is a list of rows".into());
    };
    if list.len() != rows {
        return Err(format!("expected {} rows, found {}", rows, list.len()));
    }
    let mut out = Vec::with_capacity(rows);
    for (r, row) in list.iter().enumerate() {
        let Some(row) = row.as_array() else {
            return Err(format!("row {} is not a list", r));
        };
        if row.len() != cols {
            return Err(format!(
                "row {} has {} entries, expected {}",
                r,
                row.len(),
                cols
            ));
        }
        out.push(
            row.iter()
                .map(|x| scalar(scope, x))
                .collect::<std::result::Result<Vec<_>, _>>()?,
        );
    }
    Matrix::from_rows(scope.field(), out, cols).map_err(|e| e.to_string())
}

fn polynomial(scope: &dyn Scope, v: &Value) -> std::result::Result<Poly, String> {
    match v {
        Value::Array(coeffs) => {
            let cs = coeffs
                .iter()
                .map(|c| scalar(scope, c))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            Ok(Poly::from_coeffs(scope.field(), cs))
        }
        Value::String(s) => match eval_str(s, scope)? {
            expr::Value::Poly(p) => Ok(p),
            expr::Value::Scalar(x) => Ok(Poly::constant(&x)),
            expr::Value::Vector(_) => Err(format!("`{}` is not a polynomial", s)),
        },
        other => Err(format!(
            "expected a coefficient list or a polynomial in t, found {}",
            kind_of(other)
        )),
    }
}

/// A vector written as a linear combination of basis labels or as a list of
/// coordinates. A list holding a single coordinate list is also accepted.
fn linear(scope: &BasisScope, v: &Value) -> std::result::Result<Vec<Fe>, String> {
    let n = scope.labels.len();
    match v {
        Value::String(s) => match eval_str(s, scope)? {
            expr::Value::Vector(v) => Ok(v),
            expr::Value::Scalar(x) if x.is_zero() => Ok(vec![scope.field().zero(); n]),
            _ => Err(format!(
                "`{}` is not a combination of {}",
                s,
                scope.labels.join(", ")
            )),
        },
        Value::Array(items) => {
            if let [Value::Array(inner)] = items.as_slice() {
                return linear(scope, &Value::Array(inner.clone()));
            }
            if items.is_empty() {
                return Ok(vec![scope.field().zero(); n]);
            }
            if items.len() != n {
                return Err(format!("expected {} coordinates, found {}", n, items.len()));
            }
            items.iter().map(|c| scalar(scope, c)).collect()
        }
        Value::Number(_) => match scalar(scope, v)? {
            x if x.is_zero() => Ok(vec![scope.field().zero(); n]),
            _ => Err("a nonzero scalar is not a vector".into()),
        },
        other => Err(format!("expected a vector, found {}", kind_of(other))),
    }
}

// ---- builder --------------------------------------------------------------

#[derive(Default)]
struct Builder {
    ws: Workspace,
    diags: Vec<Diagnostic>,
    root: Map<String, Value>,
    default_field: Option<String>,
    failed: BTreeSet<String>,
    resolving: BTreeSet<String>,
}

fn section<'a>(root: &'a Map<String, Value>, name: &str) -> Option<&'a Map<String, Value>> {
    root.get(name).and_then(|v| v.as_object())
}

impl Builder {
    fn diag(&mut self, kind: DiagnosticKind, path: &str, message: impl Into<String>) {
        self.diags.push(Diagnostic::new(kind, path, message));
    }

    fn schema(&mut self, path: &str, message: impl Into<String>) {
        self.diag(DiagnosticKind::Schema, path, message);
    }

    fn invalid(&mut self, path: &str, message: impl Into<String>) {
        self.diag(DiagnosticKind::Validation, path, message);
    }

    fn check_keys(&mut self, obj: &Map<String, Value>, allowed: &[&str], path: &str) {
        for k in obj.keys() {
            if !allowed.contains(&k.as_str()) {
                let msg = format!(
                    "unknown key `{}` (expected one of: {})",
                    k,
                    allowed.join(", ")
                );
                self.schema(&child(path, k), msg);
            }
        }
    }

    fn object<'v>(&mut self, v: &'v Value, path: &str) -> Option<&'v Map<String, Value>> {
        match v.as_object() {
            Some(o) => Some(o),
            None => {
                self.schema(path, format!("expected an object, found {}", kind_of(v)));
                None
            }
        }
    }

    fn string<'v>(
        &mut self,
        obj: &'v Map<String, Value>,
        key: &str,
        path: &str,
    ) -> Option<&'v str> {
        match obj.get(key) {
            Some(Value::String(s)) => Some(s),
            Some(other) => {
                let msg = format!("expected a string, found {}", kind_of(other));
                self.schema(&child(path, key), msg);
                None
            }
            None => {
                self.schema(path, format!("missing key `{}`", key));
                None
            }
        }
    }

    fn labels(&mut self, obj: &Map<String, Value>, key: &str, path: &str) -> Option<Vec<String>> {
        let p = child(path, key);
        let list = match obj.get(key) {
            Some(Value::Array(a)) => a,
            Some(other) => {
                let msg = format!("expected a list of names, found {}", kind_of(other));
                self.schema(&p, msg);
                return None;
            }
            None => return None,
        };
        let mut out = Vec::new();
        for (i, v) in list.iter().enumerate() {
            match v.as_str() {
                Some(s) if !out.iter().any(|o: &String| o == s) => out.push(s.to_string()),
                Some(s) => {
                    self.schema(
                        &child(&p, &i.to_string()),
                        format!("duplicate name `{}`", s),
                    );
                    return None;
                }
                None => {
                    self.schema(&child(&p, &i.to_string()), "expected a name");
                    return None;
                }
            }
        }
        Some(out)
    }

    fn build(&mut self, root: &Map<String, Value>, opts: &Options) {
        self.root = root.clone();
        self.check_keys(root, SECTIONS, "");
        if let Some(s) = root.get("schema") {
            if s.as_str() != Some(SCHEMA) {
                self.schema(
                    "/schema",
                    format!("unsupported schema {}; expected \"{}\"", s, SCHEMA),
                );
            }
        }
        for name in &SECTIONS[1..] {
            if let Some(v) = root.get(*name) {
                if !v.is_object() {
                    self.schema(
                        &child("", name),
                        format!("expected an object, found {}", kind_of(v)),
                    );
                }
            }
        }
        self.params(opts);
        if let Some(fields) = section(root, "fields") {
            for name in fields.keys().cloned().collect::<Vec<_>>() {
                self.field_named(&name, "");
            }
        }
        self.default_field = match &opts.default_field {
            Some(name) => {
                if self.field_named(name, "").is_none()
                    && !self.failed.contains(&format!("field:{}", name))
                {
                    self.diag(
                        DiagnosticKind::Reference,
                        "/fields",
                        format!("default field `{}` is not defined", name),
                    );
                }
                Some(name.clone())
            }
            None if self.ws.fields.len() == 1 => self.ws.fields.keys().next().cloned(),
            None => None,
        };
        let names = |sec: &str| -> Vec<String> {
            section(root, sec)
                .map(|m| m.keys().cloned().collect())
                .unwrap_or_default()
        };
        for name in names("algebras") {
            self.algebra_named(&name, "");
        }
        for name in names("subalgebras") {
            self.subalgebra_named(&name, "");
        }
        for name in names("families") {
            self.family_named(&name);
        }
        for name in names("modules") {
            self.module_named(&name, "");
        }
        for name in names("envelopes") {
            self.envelope_named(&name);
        }
        if let Some(tasks) = section(root, "tasks") {
            self.ws.tasks = tasks.clone();
        }
    }

    fn params(&mut self, opts: &Options) {
        if let Some(params) = section(&self.root.clone(), "params") {
            for (k, v) in params {
                let path = child("/params", k);
                let src = match v {
                    Value::Number(n) if n.is_i64() => n.to_string(),
                    Value::String(s) => s.clone(),
                    other => {
                        let msg = format!(
                            "expected an integer or expression, found {}",
                            kind_of(other)
                        );
                        self.schema(&path, msg);
                        continue;
                    }
                };
                match expr::parse(&src) {
                    Ok(e) => {
                        self.ws.params.insert(expr::canonical_name(k), e);
                    }
                    Err(e) => self.schema(&path, format!("in `{}` {}", src, e)),
                }
            }
        }
        for (k, src) in &opts.params {
            match expr::parse(src) {
                Ok(e) => {
                    self.ws.params.insert(expr::canonical_name(k), e);
                }
                Err(e) => self.schema("/params", format!("parameter `{}`: in `{}` {}", k, src, e)),
            }
        }
    }

    /// Reports a dangling reference from `path` unless the target itself
    /// failed (its own diagnostic suffices).
    fn dangling(&mut self, kind: &str, name: &str, path: &str) {
        if !self.failed.contains(&format!("{}:{}", kind, name)) {
            self.diag(
                DiagnosticKind::Reference,
                path,
                format!("no {} named `{}`", kind, name),
            );
        }
    }

    /// Runs `resolve` for a named object once, guarding against cycles.
    fn guarded<T>(
        &mut self,
        kind: &str,
        name: &str,
        from: &str,
        resolve: impl FnOnce(&mut Self) -> Option<T>,
    ) -> Option<T> {
        let key = format!("{}:{}", kind, name);
        if self.failed.contains(&key) {
            return None;
        }
        if !self.resolving.insert(key.clone()) {
            self.diag(
                DiagnosticKind::Reference,
                from,
                format!("{} `{}` refers to itself", kind, name),
            );
            self.failed.insert(key);
            return None;
        }
        let out = resolve(self);
        self.resolving.remove(&key);
        if out.is_none() {
            self.failed.insert(key);
        }
        out
    }

    // ---- fields ----

    fn field_named(&mut self, name: &str, from: &str) -> Option<Field> {
        if let Some(f) = self.ws.fields.get(name) {
            return Some(f.clone());
        }
        let Some(v) = section(&self.root, "fields")
            .and_then(|m| m.get(name))
            .cloned()
        else {
            if !from.is_empty() {
                self.dangling("field", name, from);
            }
            return None;
        };
        let path = child("/fields", name);
        let f = self.guarded("field", name, from, |b| b.field_descriptor(&v, &path))?;
        self.ws.fields.insert(name.to_string(), f.clone());
        Some(f)
    }

    fn field_ref(&mut self, v: &Value, path: &str) -> Option<Field> {
        match v {
            Value::String(name) => self.field_named(name, path),
            Value::Object(_) => self.field_descriptor(v, path),
            other => {
                let msg = format!(
                    "expected a field name or descriptor, found {}",
                    kind_of(other)
                );
                self.schema(path, msg);
                None
            }
        }
    }

    fn field_descriptor(&mut self, v: &Value, path: &str) -> Option<Field> {
        let obj = self.object(v, path)?;
        let kind = self.string(obj, "kind", path)?;
        let base = |b: &mut Self| -> Option<Field> {
            match obj.get("base") {
                Some(bv) => b.field_ref(bv, &child(path, "base")),
                None => {
                    b.schema(path, "missing key `base`");
                    None
                }
            }
        };
        let var = |b: &mut Self| -> Option<String> {
            let s = b.string(obj, "var", path)?;
            if s.chars()
                .next()
                .is_some_and(|c| c.is_alphabetic() || c == '_')
                && s.chars().all(|c| c.is_alphanumeric() || c == '_')
            {
                Some(s.to_string())
            } else {
                b.schema(&child(path, "var"), format!("`{}` is not an identifier", s));
                None
            }
        };
        let result = match kind {
            "prime" => {
                self.check_keys(obj, &["kind", "p"], path);
                let Some(p) = obj.get("p").and_then(|p| p.as_u64()) else {
                    self.schema(path, "`p` must be a positive integer");
                    return None;
                };
                Field::prime(p)
            }
            "ext" => {
                self.check_keys(obj, &["kind", "base", "modulus", "var"], path);
                let base = base(self)?;
                let var = var(self)?;
                let Some(m) = obj.get("modulus") else {
                    self.schema(path, "missing key `modulus`");
                    return None;
                };
                let scope = FieldScope::new(&base, &self.ws.params);
                let modulus = match polynomial(&scope, m) {
                    Ok(p) => p,
                    Err(e) => {
                        self.schema(&child(path, "modulus"), e);
                        return None;
                    }
                };
                Field::algebraic(&base, &modulus, &var)
            }
            "rational" => {
                self.check_keys(obj, &["kind", "base", "var"], path);
                let base = base(self)?;
                let var = var(self)?;
                Field::rational(&base, &var)
            }
            "inseparable" => {
                self.check_keys(obj, &["kind", "base", "k"], path);
                let base = base(self)?;
                let k = match obj.get("k") {
                    None => 1,
                    Some(k) => match k.as_u64() {
                        Some(k) if (1..=16).contains(&k) => k as u32,
                        _ => {
                            self.schema(
                                &child(path, "k"),
                                "`k` must be an integer between 1 and 16",
                            );
                            return None;
                        }
                    },
                };
                Field::inseparable(&base, k)
            }
            other => {
                self.schema(
                    &child(path, "kind"),
                    format!(
                        "unknown field kind `{}` (expected prime, ext, rational or inseparable)",
                        other
                    ),
                );
                return None;
            }
        };
        match result {
            Ok(f) => Some(f),
            Err(e) => {
                self.invalid(path, e.to_string());
                None
            }
        }
    }

    /// The field named by `obj["field"]`, or the default field.
    fn field_of(&mut self, obj: &Map<String, Value>, path: &str) -> Option<Field> {
        if let Some(v) = obj.get("field") {
            return self.field_ref(v, &child(path, "field"));
        }
        if let Some(name) = self.default_field.clone() {
            return self.field_named(&name, path);
        }
        if let Some(p) = obj.get("p").and_then(|p| p.as_u64()) {
            return match Field::prime(p) {
                Ok(f) => Some(f),
                Err(e) => {
                    self.invalid(&child(path, "p"), e.to_string());
                    None
                }
            };
        }
        self.schema(
            path,
            "no field given; add a `field` key, declare exactly one field, or pass --field",
        );
        None
    }

    // ---- algebras ----

    fn algebra_named(&mut self, name: &str, from: &str) -> Option<Arc<LieAlgebra>> {
        if let Some(a) = self.ws.algebras.get(name) {
            return Some(a.clone());
        }
        let Some(v) = section(&self.root, "algebras")
            .and_then(|m| m.get(name))
            .cloned()
        else {
            if !from.is_empty() {
                self.dangling("algebra", name, from);
            }
            return None;
        };
        let path = child("/algebras", name);
        let a = self.guarded("algebra", name, from, |b| b.algebra(&v, &path))?;
        let a = Arc::new(a);
        self.ws.algebras.insert(name.to_string(), a.clone());
        Some(a)
    }

    fn algebra(&mut self, v: &Value, path: &str) -> Option<LieAlgebra> {
        let obj = self.object(v, path)?;
        self.check_keys(
            obj,
            &["field", "p", "dim", "basis", "brackets", "pmap"],
            path,
        );
        let field = self.field_of(obj, path)?;
        if let Some(p) = obj.get("p") {
            if p.as_u64() != Some(field.characteristic()) {
                let msg = format!(
                    "p = {} but the field has characteristic {}",
                    p,
                    field.characteristic()
                );
                self.invalid(&child(path, "p"), msg);
                return None;
            }
        }
        let Some(labels) = self.labels(obj, "basis", path) else {
            if !obj.contains_key("basis") {
                self.schema(path, "missing key `basis`");
            }
            return None;
        };
        let n = labels.len();
        if let Some(d) = obj.get("dim") {
            if d.as_u64() != Some(n as u64) {
                self.invalid(
                    &child(path, "dim"),
                    format!("dim is {} but the basis has {} elements", d, n),
                );
                return None;
            }
        }
        let scope = BasisScope {
            inner: FieldScope::new(&field, &self.ws.params),
            labels: &labels,
        };
        let zero = vec![field.zero(); n];
        let mut brackets = vec![vec![zero.clone(); n]; n];
        let mut set = vec![vec![false; n]; n];
        let mut ok = true;
        let mut errors: Vec<(DiagnosticKind, String, String)> = Vec::new();
        if let Some(bv) = obj.get("brackets") {
            match bv.as_object() {
                Some(map) => {
                    for (key, val) in map {
                        let p = child(&child(path, "brackets"), key);
                        let parts: Vec<&str> = key.split(',').map(str::trim).collect();
                        let idx: Vec<Option<usize>> = parts
                            .iter()
                            .map(|s| labels.iter().position(|l| l == s))
                            .collect();
                        let (i, j) = match idx.as_slice() {
                            [Some(i), Some(j)] if i != j => (*i, *j),
                            _ => {
                                errors.push((
                                    DiagnosticKind::Schema,
                                    p,
                                    format!("`{}` is not a pair of distinct basis labels", key),
                                ));
                                ok = false;
                                continue;
                            }
                        };
                        match linear(&scope, val) {
                            Ok(v) => {
                                let neg: Vec<Fe> = v.iter().map(|x| -x).collect();
                                if set[i][j] && brackets[i][j] != v {
                                    errors.push((
                                        DiagnosticKind::Validation,
                                        p,
                                        "conflicting bracket entries".into(),
                                    ));
                                    ok = false;
                                    continue;
                                }
                                set[i][j] = true;
                                set[j][i] = true;
                                brackets[i][j] = v;
                                brackets[j][i] = neg;
                            }
                            Err(e) => {
                                errors.push((DiagnosticKind::Schema, p, e));
                                ok = false;
                            }
                        }
                    }
                }
                None => {
                    errors.push((
                        DiagnosticKind::Schema,
                        child(path, "brackets"),
                        "expected an object keyed by `a,b`".into(),
                    ));
                    ok = false;
                }
            }
        }
        let mut pmap = None;
        if let Some(pv) = obj.get("pmap") {
            match pv.as_object() {
                Some(map) => {
                    let mut table = vec![zero.clone(); n];
                    for (key, val) in map {
                        let p = child(&child(path, "pmap"), key);
                        let Some(i) = labels.iter().position(|l| l == key) else {
                            errors.push((
                                DiagnosticKind::Schema,
                                p,
                                format!("unknown basis label `{}`", key),
                            ));
                            ok = false;
                            continue;
                        };
                        match linear(&scope, val) {
                            Ok(v) => table[i] = v,
                            Err(e) => {
                                errors.push((DiagnosticKind::Schema, p, e));
                                ok = false;
                            }
                        }
                    }
                    pmap = Some(table);
                }
                None => {
                    errors.push((
                        DiagnosticKind::Schema,
                        child(path, "pmap"),
                        "expected an object keyed by basis labels".into(),
                    ));
                    ok = false;
                }
            }
        }
        for (k, p, m) in errors {
            self.diag(k, &p, m);
        }
        if !ok {
            return None;
        }
        let alg = match LieAlgebra::new(&field, labels, brackets, pmap) {
            Ok(a) => a,
            Err(e) => {
                self.invalid(path, e.to_string());
                return None;
            }
        };
        let failures = alg.validate();
        if !failures.is_empty() {
            for f in failures {
                self.invalid(path, f.to_string());
            }
            return None;
        }
        Some(alg)
    }

    // ---- subalgebras ----

    fn subalgebra_named(&mut self, name: &str, from: &str) -> Option<SubalgebraEntry> {
        if let Some(s) = self.ws.subalgebras.get(name) {
            return Some(s.clone());
        }
        let Some(v) = section(&self.root, "subalgebras")
            .and_then(|m| m.get(name))
            .cloned()
        else {
            if !from.is_empty() {
                self.dangling("subalgebra", name, from);
            }
            return None;
        };
        let path = child("/subalgebras", name);
        let s = self.guarded("subalgebra", name, from, |b| b.subalgebra(&v, &path))?;
        self.ws.subalgebras.insert(name.to_string(), s.clone());
        Some(s)
    }

    fn subalgebra(&mut self, v: &Value, path: &str) -> Option<SubalgebraEntry> {
        let obj = self.object(v, path)?;
        self.check_keys(obj, &["algebra", "generators", "basis", "labels"], path);
        let parent = self.string(obj, "algebra", path)?.to_string();
        let l = self.algebra_named(&parent, &child(path, "algebra"))?;
        let (key, closure) = match (obj.get("generators"), obj.get("basis")) {
            (Some(_), None) => ("generators", true),
            (None, Some(_)) => ("basis", false),
            _ => {
                self.schema(path, "give exactly one of `generators` or `basis`");
                return None;
            }
        };
        let p = child(path, key);
        let Some(list) = obj[key].as_array() else {
            self.schema(&p, "expected a list of vectors");
            return None;
        };
        let scope = BasisScope {
            inner: FieldScope::new(l.field(), &self.ws.params),
            labels: l.labels(),
        };
        let mut vectors = Vec::new();
        for (i, item) in list.iter().enumerate() {
            match linear(&scope, item) {
                Ok(v) => vectors.push(v),
                Err(e) => {
                    let ip = child(&p, &i.to_string());
                    self.schema(&ip, e);
                    return None;
                }
            }
        }
        let labels = self.labels(obj, "labels", path);
        let sub = if closure {
            if labels.is_some() {
                self.schema(&child(path, "labels"), "labels are derived for a p-closure");
                return None;
            }
            l.p_closure(&vectors)
        } else {
            let labels = labels.unwrap_or_else(|| {
                vectors
                    .iter()
                    .map(|v| format_vector(v, l.labels()))
                    .collect()
            });
            if labels.len() != vectors.len() {
                self.schema(
                    &child(path, "labels"),
                    "one label per basis vector is required",
                );
                return None;
            }
            l.subalgebra(vectors, labels)
        };
        match sub {
            Ok(sub) => Some(SubalgebraEntry {
                parent,
                algebra: Arc::new(sub.algebra.clone()),
                sub,
            }),
            Err(e) => {
                self.invalid(path, e.to_string());
                None
            }
        }
    }

    /// An algebra or subalgebra by name.
    fn acting_algebra(&mut self, name: &str, from: &str) -> Option<Arc<LieAlgebra>> {
        let in_algebras = section(&self.root, "algebras").is_some_and(|m| m.contains_key(name));
        let in_subs = section(&self.root, "subalgebras").is_some_and(|m| m.contains_key(name));
        if in_algebras && in_subs {
            self.schema(
                from,
                format!("`{}` names both an algebra and a subalgebra", name),
            );
            return None;
        }
        if in_subs {
            return self.subalgebra_named(name, from).map(|s| s.algebra);
        }
        if in_algebras {
            return self.algebra_named(name, from);
        }
        self.diag(
            DiagnosticKind::Reference,
            from,
            format!("no algebra or subalgebra named `{}`", name),
        );
        None
    }

    // ---- families ----

    fn family_named(&mut self, name: &str) -> Option<FamilyEntry> {
        if let Some(f) = self.ws.families.get(name) {
            return Some(f.clone());
        }
        let v = section(&self.root, "families")
            .and_then(|m| m.get(name))
            .cloned()?;
        let path = child("/families", name);
        let f = self.guarded("family", name, "", |b| b.family(&v, &path))?;
        self.ws.families.insert(name.to_string(), f.clone());
        Some(f)
    }

    fn family(&mut self, v: &Value, path: &str) -> Option<FamilyEntry> {
        let obj = self.object(v, path)?;
        self.check_keys(obj, &["algebra", "field", "f"], path);
        let (field, labels) = match obj.get("algebra") {
            Some(Value::String(a)) => {
                let alg = self.acting_algebra(a, &child(path, "algebra"))?;
                (alg.field().clone(), Some(alg.labels().to_vec()))
            }
            Some(other) => {
                let msg = format!("expected an algebra name, found {}", kind_of(other));
                self.schema(&child(path, "algebra"), msg);
                return None;
            }
            None => (self.field_of(obj, path)?, None),
        };
        let fp = child(path, "f");
        let Some(map) = obj.get("f").and_then(|f| f.as_object()) else {
            self.schema(
                path,
                "missing object `f` of polynomials keyed by basis label",
            );
            return None;
        };
        let params = self.ws.params.clone();
        let scope = PolyScope {
            inner: FieldScope::new(&field, &params),
        };
        let mut polys = BTreeMap::new();
        let mut ok = true;
        for (label, pv) in map {
            let p = child(&fp, label);
            if let Some(ls) = &labels {
                if !ls.contains(label) {
                    self.schema(&p, format!("unknown basis label `{}`", label));
                    ok = false;
                    continue;
                }
            }
            match polynomial(&scope, pv) {
                Ok(poly) => match FFamily::new(vec![poly.clone()]) {
                    Ok(_) => {
                        polys.insert(label.clone(), poly);
                    }
                    Err(e) => {
                        self.invalid(&p, e.to_string());
                        ok = false;
                    }
                },
                Err(e) => {
                    self.schema(&p, e);
                    ok = false;
                }
            }
        }
        ok.then_some(FamilyEntry { field, polys })
    }

    // ---- modules ----

    fn module_named(&mut self, name: &str, from: &str) -> Option<ModuleEntry> {
        if let Some(m) = self.ws.modules.get(name) {
            return Some(m.clone());
        }
        let Some(v) = section(&self.root, "modules")
            .and_then(|m| m.get(name))
            .cloned()
        else {
            if !from.is_empty() {
                self.dangling("module", name, from);
            }
            return None;
        };
        let path = child("/modules", name);
        let m = self.guarded("module", name, from, |b| b.module(&v, &path))?;
        self.ws.modules.insert(name.to_string(), m.clone());
        Some(m)
    }

    fn module(&mut self, v: &Value, path: &str) -> Option<ModuleEntry> {
        let obj = self.object(v, path)?;
        if obj.contains_key("induce") {
            return self.induced_module(obj, path);
        }
        self.check_keys(obj, &["algebra", "dim", "basis", "action"], path);
        let alg_name = self.string(obj, "algebra", path)?.to_string();
        let alg = self.acting_algebra(&alg_name, &child(path, "algebra"))?;
        let labels = self.labels(obj, "basis", path);
        let dim = match (obj.get("dim"), &labels) {
            (Some(d), labels) => {
                let Some(d) = d.as_u64().map(|d| d as usize) else {
                    self.schema(&child(path, "dim"), "`dim` must be a non-negative integer");
                    return None;
                };
                if labels.as_ref().is_some_and(|l| l.len() != d) {
                    self.invalid(&child(path, "basis"), format!("expected {} basis names", d));
                    return None;
                }
                d
            }
            (None, Some(l)) => l.len(),
            (None, None) => {
                self.schema(path, "give `dim` or `basis`");
                return None;
            }
        };
        let Some(action) = obj.get("action").and_then(|a| a.as_object()) else {
            self.schema(
                path,
                "missing object `action` of matrices keyed by basis label",
            );
            return None;
        };
        let ap = child(path, "action");
        let mut ok = true;
        for key in action.keys() {
            if !alg.labels().contains(key) {
                self.schema(&child(&ap, key), format!("unknown basis label `{}`", key));
                ok = false;
            }
        }
        let params = self.ws.params.clone();
        let scope = FieldScope::new(alg.field(), &params);
        let mut mats = Vec::new();
        for l in alg.labels() {
            match action.get(l) {
                Some(m) => match matrix(&scope, m, dim, dim) {
                    Ok(m) => mats.push(m),
                    Err(e) => {
                        self.schema(&child(&ap, l), e);
                        ok = false;
                    }
                },
                None => {
                    self.schema(&ap, format!("no matrix for `{}`", l));
                    ok = false;
                }
            }
        }
        if !ok {
            return None;
        }
        let rep = match Representation::new(alg.clone(), mats) {
            Ok(r) => r,
            Err(e) => {
                self.invalid(path, e.to_string());
                return None;
            }
        };
        let rep = match labels {
            Some(ls) => rep.with_labels(ls),
            None => Ok(rep),
        };
        let rep = match rep.and_then(|r| r.validate().map(|_| r)) {
            Ok(r) => r,
            Err(e) => {
                self.invalid(path, e.to_string());
                return None;
            }
        };
        Some(ModuleEntry {
            algebra: alg_name,
            rep,
            source: ModuleSource::Explicit,
        })
    }

    fn induced_module(&mut self, obj: &Map<String, Value>, path: &str) -> Option<ModuleEntry> {
        self.check_keys(obj, &["induce", "names"], path);
        let ip = child(path, "induce");
        let spec = self.object(&obj["induce"], &ip)?;
        self.check_keys(spec, &["subalgebra", "module", "family"], &ip);
        let sub_name = self.string(spec, "subalgebra", &ip)?.to_string();
        let w_name = self.string(spec, "module", &ip)?.to_string();
        let f_name = self.string(spec, "family", &ip)?.to_string();
        let s = self.subalgebra_named(&sub_name, &child(&ip, "subalgebra"))?;
        let w = self.module_named(&w_name, &child(&ip, "module"))?;
        if !section(&self.root, "families").is_some_and(|m| m.contains_key(&f_name)) {
            self.dangling("family", &f_name, &child(&ip, "family"));
            return None;
        }
        let fam = self.family_named(&f_name)?;
        let l = self.ws.algebras.get(&s.parent)?.clone();
        if w.rep.algebra().as_ref() != s.algebra.as_ref() {
            self.invalid(
                &child(&ip, "module"),
                format!("`{}` is not a module over `{}`", w_name, sub_name),
            );
            return None;
        }
        let adapted = match adapt_basis(&l, &s.sub) {
            Ok(a) => a,
            Err(e) => {
                self.invalid(&child(&ip, "subalgebra"), e.to_string());
                return None;
            }
        };
        let labels = adapted.algebra.labels().to_vec();
        let mut polys = Vec::new();
        for label in &labels {
            match fam.polys.get(label).map(|p| p.to_field(l.field())) {
                Some(Ok(p)) => polys.push(p),
                Some(Err(e)) => {
                    self.invalid(&child(&ip, "family"), e.to_string());
                    return None;
                }
                None => {
                    let msg = format!("family `{}` has no polynomial for `{}`", f_name, label);
                    self.invalid(&child(&ip, "family"), msg);
                    return None;
                }
            }
        }
        let (f1, f2) = polys.split_at(adapted.complement);
        let induced = match induce(l.clone(), &s.sub, &w.rep, f1, f2) {
            Ok(m) => m,
            Err(e) => {
                self.invalid(path, e.to_string());
                return None;
            }
        };
        let rep = match obj.get("names") {
            None => induced.module().clone(),
            Some(Value::String(stem)) => {
                let names = crate::render::induced_names(&induced, stem);
                induced.module().clone().with_labels(names).ok()?
            }
            Some(other) => {
                let msg = format!("expected a name stem, found {}", kind_of(other));
                self.schema(&child(path, "names"), msg);
                return None;
            }
        };
        Some(ModuleEntry {
            algebra: s.parent.clone(),
            rep,
            source: ModuleSource::Induced {
                induced: Box::new(induced),
                subalgebra: sub_name,
                module: w_name,
                family: f_name,
            },
        })
    }

    // ---- envelopes ----

    fn envelope_named(&mut self, name: &str) -> Option<EnvelopeEntry> {
        let v = section(&self.root, "envelopes")
            .and_then(|m| m.get(name))
            .cloned()?;
        let path = child("/envelopes", name);
        let e = self.guarded("envelope", name, "", |b| b.envelope(&v, &path))?;
        self.ws.envelopes.insert(name.to_string(), e.clone());
        Some(e)
    }

    fn envelope(&mut self, v: &Value, path: &str) -> Option<EnvelopeEntry> {
        let obj = self.object(v, path)?;
        self.check_keys(
            obj,
            &["algebra", "construct", "envelope", "embedding"],
            path,
        );
        let alg_name = self.string(obj, "algebra", path)?.to_string();
        let l = self.algebra_named(&alg_name, &child(path, "algebra"))?;
        let spec = match (obj.get("construct"), obj.get("envelope")) {
            (Some(c), None) => match c.as_str() {
                Some("adjoint") => build_envelope_adjoint(l),
                Some("trivial") => EnvelopeSpec::trivial(l),
                _ => {
                    self.schema(
                        &child(path, "construct"),
                        "expected \"adjoint\" or \"trivial\"",
                    );
                    return None;
                }
            },
            (None, Some(_)) => {
                let target = self.string(obj, "envelope", path)?.to_string();
                let lstar = self.algebra_named(&target, &child(path, "envelope"))?;
                let scope = BasisScope {
                    inner: FieldScope::new(lstar.field(), &self.ws.params),
                    labels: lstar.labels(),
                };
                let images = obj.get("embedding").and_then(|e| e.as_object());
                let mut cols = Vec::new();
                for label in l.labels() {
                    let ep = child(&child(path, "embedding"), label);
                    let image = match images.and_then(|m| m.get(label)) {
                        Some(v) => linear(&scope, v),
                        None => linear(&scope, &Value::String(label.clone())),
                    };
                    match image {
                        Ok(v) => cols.push(v),
                        Err(e) => {
                            self.schema(&ep, e);
                            return None;
                        }
                    }
                }
                let m = Matrix::from_columns(lstar.field(), lstar.dim(), &cols);
                EnvelopeSpec::new(l, lstar, m)
            }
            _ => {
                self.schema(path, "give exactly one of `construct` or `envelope`");
                return None;
            }
        };
        match spec {
            Ok(spec) => Some(EnvelopeEntry {
                algebra: alg_name,
                spec,
            }),
            Err(e) => {
                self.invalid(path, e.to_string());
                None
            }
        }
    }
}
