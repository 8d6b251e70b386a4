//! The subcommands. Each returns a [`Report`] carrying human-readable text,
//! named checks and machine-readable data.

use std::sync::Arc;

use modind_core::characters::{
    check_p_semilinear, cluster_decompose, cluster_of, eigenvalue_field, Character,
};
use modind_core::envelopes::{
    build_envelope_adjoint, envelope_closure, extension_family, t_functor, EnvelopeSpec,
};
use modind_core::induction::adapt_basis;
use modind_core::liealg::{format_vector, matrix_p_closure, Recipe};
use modind_core::linalg::Subspace;
use modind_core::modules::{hom_space, is_homomorphism, Irreducibility, Representation};
use modind_core::{Error as CoreError, Fe, Matrix};
use serde_json::{json, Map, Value};

use crate::document::{parse_str, ModuleSource, Options, Workspace};
use crate::error::{exit, CliError, Result};
use crate::render::{
    action_table, map_table, matrix_json, module_document, poly_json, vector_json, vector_text,
};

pub const REPORT_SCHEMA: &str = "modind-report/1";

/// The document replayed by `demo ex42`.
pub const EX42: &str = include_str!("../fixtures/ex42.json");

/// Trials used for the randomized semilinearity check in `cluster`.
const SEMILINEAR_TRIALS: usize = 16;

/// Largest number of extensions enumerated by `demo`.
const MAX_EXTENSIONS: u128 = 729;

/// Command-line selections shared by the subcommands.
#[derive(Clone, Debug, Default)]
pub struct Flags {
    pub seed: u64,
    pub module: Option<String>,
    pub target: Option<String>,
    pub envelope: Option<String>,
    pub via_envelope: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub text: String,
    pub checks: Vec<Check>,
    pub data: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            text: String::new(),
            checks: Vec::new(),
            data: Map::new(),
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn block(&mut self, s: &str) {
        self.text.push_str(s);
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
        passed
    }

    fn set(&mut self, key: &str, v: Value) {
        self.data.insert(key.to_string(), v);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check_named(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            exit::OK
        } else {
            exit::CHECK_FAILED
        }
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
            .collect();
        let mut out = Map::new();
        out.insert("schema".into(), json!(REPORT_SCHEMA));
        out.insert("command".into(), json!(self.command));
        out.insert("passed".into(), json!(self.passed()));
        out.insert("checks".into(), Value::Array(checks));
        for (k, v) in &self.data {
            out.insert(k.clone(), v.clone());
        }
        Value::Object(out)
    }

    pub fn render_text(&self) -> String {
        let mut out = self.text.clone();
        if !self.checks.is_empty() {
            if !out.is_empty() && !out.ends_with("\n\n") {
                out.push('\n');
            }
            out.push_str("checks:\n");
            for c in &self.checks {
                let mark = if c.passed { "pass" } else { "FAIL" };
                if c.detail.is_empty() {
                    out.push_str(&format!("  [{}] {}\n", mark, c.name));
                } else {
                    out.push_str(&format!("  [{}] {}: {}\n", mark, c.name, c.detail));
                }
            }
        }
        out.push_str(if self.passed() {
            "result: pass\n"
        } else {
            "result: FAIL\n"
        });
        out
    }
}

/// Chooses an object name: the flag, then the task argument, then the only
/// candidate.
fn pick<'a>(
    flag: &Option<String>,
    task: &Map<String, Value>,
    key: &str,
    mut candidates: impl Iterator<Item = &'a String>,
    what: &str,
) -> Result<String> {
    if let Some(f) = flag {
        return Ok(f.clone());
    }
    if let Some(v) = task.get(key) {
        return v
            .as_str()
            .map(String::from)
            .ok_or_else(|| CliError::Usage(format!("task argument `{}` must be a name", key)));
    }
    match (candidates.next(), candidates.next()) {
        (Some(only), None) => Ok(only.clone()),
        (None, _) => Err(CliError::Usage(format!("the document has no {}", what))),
        _ => Err(CliError::Usage(format!(
            "several candidates for the {}; name one with a flag or in the tasks section",
            what
        ))),
    }
}

fn irreducibility_text(rep: &Representation, seed: u64) -> String {
    if rep.dim() == 0 {
        return "zero module".into();
    }
    match rep.irreducibility_seeded(seed) {
        Ok(Irreducibility::Irreducible) => "irreducible".into(),
        Ok(Irreducibility::Reducible(s)) => {
            format!("reducible (submodule of dimension {})", s.dim())
        }
        Err(e) => format!("undecided ({})", e),
    }
}

// ---- validate --------------------------------------------------------------

pub fn validate(ws: &Workspace) -> Report {
    let mut r = Report::new("validate");
    if ws.is_empty() {
        r.line("empty workspace");
    }
    for (name, f) in &ws.fields {
        r.line(format!("field {} = {}", name, f));
    }
    for (name, l) in &ws.algebras {
        let kind = if l.has_pmap() {
            "restricted"
        } else {
            "no p-map"
        };
        r.line(format!(
            "algebra {}: dimension {} over {}, {}",
            name,
            l.dim(),
            l.field(),
            kind
        ));
    }
    for (name, s) in &ws.subalgebras {
        let closed = if s.sub.is_p_closed() {
            "p-closed"
        } else {
            "not p-closed"
        };
        r.line(format!(
            "subalgebra {} of {}: basis {}, {}",
            name,
            s.parent,
            s.algebra.labels().join(", "),
            closed
        ));
    }
    for (name, f) in &ws.families {
        let polys: Vec<String> = f
            .polys
            .iter()
            .map(|(l, p)| format!("f_{} = {}", l, p.display_with("t")))
            .collect();
        r.line(format!("family {}: {}", name, polys.join(", ")));
    }
    for (name, m) in &ws.modules {
        let origin = match &m.source {
            ModuleSource::Explicit => String::new(),
            ModuleSource::Induced { module, family, .. } => {
                format!(", induced from {} with {}", module, family)
            }
        };
        r.line(format!(
            "module {} over {}: dimension {}{}",
            name,
            m.algebra,
            m.rep.dim(),
            origin
        ));
    }
    for (name, e) in &ws.envelopes {
        r.line(format!(
            "envelope {} of {}: dimension {}",
            name,
            e.algebra,
            e.spec.envelope().dim()
        ));
    }
    r.check("document resolves and every object validates", true, "");
    let counts = json!({
        "fields": ws.fields.len(),
        "algebras": ws.algebras.len(),
        "subalgebras": ws.subalgebras.len(),
        "families": ws.families.len(),
        "modules": ws.modules.len(),
        "envelopes": ws.envelopes.len(),
    });
    r.set("objects", counts);
    r
}

// ---- induce ----------------------------------------------------------------

pub fn induce(ws: &Workspace, flags: &Flags) -> Result<Report> {
    if flags.via_envelope {
        return induce_via_envelope(ws, flags);
    }
    let task = ws.task("induce");
    let induced_names = ws
        .modules
        .iter()
        .filter(|(_, m)| m.induced().is_some())
        .map(|(n, _)| n);
    let name = pick(
        &flags.module,
        &task,
        "module",
        induced_names,
        "induced module",
    )?;
    let entry = ws.module(&name)?;
    let ModuleSource::Induced {
        induced,
        subalgebra,
        module,
        family,
    } = &entry.source
    else {
        return Err(CliError::Usage(format!("module `{}` is not induced", name)));
    };
    let mut r = Report::new("induce");
    r.line(format!(
        "{} = ind({}, {}) from {} to {}: dimension {} over {}",
        name,
        module,
        family,
        subalgebra,
        entry.algebra,
        induced.dim(),
        induced.field()
    ));
    let labels = induced.adapted().algebra.labels().to_vec();
    let polys = induced.family().polys();
    let fam: Vec<String> = labels
        .iter()
        .zip(polys)
        .map(|(l, p)| format!("f_{} = {}", l, p.display_with("t")))
        .collect();
    r.line(format!("family: {}", fam.join(", ")));
    let p = induced.field().characteristic() as usize;
    let complement = induced.adapted().complement;
    let mut relations = Map::new();
    for (k, (label, f)) in labels.iter().zip(polys).enumerate().take(complement) {
        let power = p * f.degree().unwrap_or(0);
        let nf = induced.reduced().normal_form_word(&vec![k as u16; power]);
        let rhs = nf.display_with(&labels);
        r.line(format!("relation: {}^{} = {}", label, power, rhs));
        relations.insert(format!("{}^{}", label, power), json!(rhs));
    }
    r.line(irreducibility_text(&entry.rep, flags.seed));
    r.line("");
    r.block(&action_table(&entry.rep));

    let expected: usize = induced.source().dim()
        * polys[..complement]
            .iter()
            .map(|f| p * f.degree().unwrap_or(0))
            .product::<usize>();
    r.check(
        "dimension formula",
        induced.dim() == expected,
        format!("{} = {}", induced.dim(), expected),
    );
    r.check(
        "unit is a module map",
        is_homomorphism(induced.source(), &induced.restricted(), induced.unit()),
        "",
    );
    let generated = entry.rep.spin(&induced.unit().col_vecs()).dim() == induced.dim();
    r.check("generated by the image of the unit", generated, "");
    r.check(
        "family annihilates the induced module",
        induced.check_category(induced.module()).is_ok(),
        "",
    );
    let fam_json: Map<String, Value> = labels
        .iter()
        .zip(polys)
        .map(|(l, p)| (l.clone(), poly_json(p)))
        .collect();
    r.set("module", json!(name));
    r.set("dimension", json!(induced.dim()));
    r.set("family", Value::Object(fam_json));
    r.set("relations", Value::Object(relations));
    r.set("document", module_document(&entry.rep, &name));
    Ok(r)
}

fn induce_via_envelope(ws: &Workspace, flags: &Flags) -> Result<Report> {
    let task = ws.task("induce");
    let via = match task.get("via_envelope") {
        Some(Value::Object(m)) => m.clone(),
        _ => Map::new(),
    };
    let env_name = pick(
        &flags.envelope,
        &via,
        "envelope",
        ws.envelopes.keys(),
        "envelope",
    )?;
    let env = ws.envelope(&env_name)?;
    let arg = |key: &str| -> Result<String> {
        via.get(key)
            .and_then(|v| v.as_str())
            .map(String::from)
            .ok_or_else(|| CliError::Usage(format!("tasks.induce.via_envelope needs `{}`", key)))
    };
    let sub_name = arg("subalgebra")?;
    let w_name = flags.module.clone().map_or_else(|| arg("module"), Ok)?;
    let fam_name = arg("family")?;
    let sub = ws.subalgebra(&sub_name)?;
    if sub.parent != env.algebra {
        return Err(CliError::Usage(format!(
            "subalgebra `{}` is not inside `{}`",
            sub_name, env.algebra
        )));
    }
    let w = ws.module(&w_name)?;
    let spec = &env.spec;
    let field = spec.envelope().field().clone();
    let sp = envelope_closure(spec, &sub.sub.basis)?;
    let adapted = adapt_basis(spec.envelope(), &sp)?;
    let labels = adapted.algebra.labels().to_vec();
    let (outer, inner) = labels.split_at(adapted.complement);
    let f1 = ws.family_polys(&fam_name, outer, &field)?;
    let fam = ws.family(&fam_name)?;
    let f2 = if inner.iter().all(|l| fam.polys.contains_key(l)) {
        Some(ws.family_polys(&fam_name, inner, &field)?)
    } else {
        None
    };
    let t = t_functor(spec, &sub.sub.basis, &w.rep, &f1, f2.as_deref())?;
    let ti = t.true_induce()?;

    let mut r = Report::new("induce");
    r.line(format!(
        "T({}) = res ind({}^[p] -> {}) over {}: dimension {} over {}",
        w_name,
        sub_name,
        env_name,
        env.algebra,
        t.module.dim(),
        field
    ));
    let fam_text: Vec<String> = labels
        .iter()
        .zip(t.induced.family().polys())
        .map(|(l, p)| format!("f_{} = {}", l, p.display_with("t")))
        .collect();
    r.line(format!("family: {}", fam_text.join(", ")));
    r.line(format!("true_induce({}): dimension {}", w_name, ti.dim()));
    r.line("");
    r.block(&action_table(&t.module));

    let p = field.characteristic() as usize;
    let expected = t.induced.source().dim()
        * f1.iter()
            .map(|f| p * f.degree().unwrap_or(0))
            .product::<usize>();
    r.check(
        "dimension formula",
        t.module.dim() == expected,
        format!("{} = {}", t.module.dim(), expected),
    );
    let res = t
        .module
        .restrict_to(Arc::new(w.rep.algebra().as_ref().clone()), &sub.sub.basis);
    r.check(
        "unit is a module map",
        is_homomorphism(&w.rep, &res, t.induced.unit()),
        "",
    );
    r.check(
        "true_induce contains the unit image",
        t.induced
            .unit()
            .col_vecs()
            .iter()
            .all(|u| ti.space.contains(u)),
        "",
    );
    r.set("dimension", json!(t.module.dim()));
    r.set("true_induce_dimension", json!(ti.dim()));
    r.set("document", module_document(&t.module, "T"));
    Ok(r)
}

// ---- cluster ---------------------------------------------------------------

fn character_json(name: &str, c: &Character, labels: &[String]) -> Value {
    let values: Map<String, Value> = labels
        .iter()
        .zip(c.values())
        .map(|(l, v)| (l.clone(), json!(v.to_string())))
        .collect();
    json!({"name": name, "values": values, "field": c.field().to_string()})
}

pub fn cluster(ws: &Workspace, flags: &Flags) -> Result<Report> {
    let task = ws.task("cluster");
    let name = pick(&flags.module, &task, "module", ws.modules.keys(), "module")?;
    let entry = ws.module(&name)?;
    let rep = &entry.rep;
    let alg_labels = rep.algebra().labels().to_vec();
    let cl = cluster_of(rep)?;
    let comps = cluster_decompose(rep)?;
    let efield = eigenvalue_field(rep)?;
    let names: Vec<String> = (1..=cl.len()).map(|k| format!("c{}", k)).collect();
    let name_of = |c: &Character| -> String {
        cl.characters()
            .iter()
            .position(|d| d.same_as(c))
            .map_or_else(|| "?".to_string(), |k| names[k].clone())
    };

    let mut r = Report::new("cluster");
    r.line(format!(
        "module {}: dimension {} over {}",
        name,
        rep.dim(),
        rep.field()
    ));
    r.line(format!("eigenvalue field: {}", efield));
    r.line(format!("characters ({}):", cl.len()));
    for (n, c) in names.iter().zip(cl.characters()) {
        r.line(format!(
            "  {} = {} in {}",
            n,
            c.display_with(&alg_labels),
            c.field()
        ));
    }
    r.line(format!("cluster: {{{}}}", names.join(", ")));
    r.line(format!("components ({}):", comps.len()));
    let labels = rep.labels().to_vec();
    let mut comp_json = Vec::new();
    for comp in &comps {
        let cs: Vec<String> = comp.cluster.characters().iter().map(&name_of).collect();
        r.line(format!(
            "  {{{}}}: dimension {}",
            cs.join(", "),
            comp.space.dim()
        ));
        for b in comp.space.basis() {
            r.line(format!("    {}", vector_text(b, &labels)));
        }
        comp_json.push(json!({
            "characters": cs,
            "dimension": comp.space.dim(),
            "basis": comp.space.basis().iter().map(|b| vector_json(b)).collect::<Vec<_>>(),
        }));
    }

    let total = comps
        .iter()
        .fold(Subspace::zero(rep.field(), rep.dim()), |acc, c| {
            acc.sum(&c.space)
        });
    let dims: usize = comps.iter().map(|c| c.space.dim()).sum();
    let dim_text: Vec<String> = comps.iter().map(|c| c.space.dim().to_string()).collect();
    r.check(
        "components form a direct sum decomposition",
        dims == rep.dim() && total.dim() == rep.dim(),
        format!("{} = {}", dim_text.join(" + "), rep.dim()),
    );
    r.check(
        "components are submodules",
        comps.iter().all(|c| c.space.is_invariant(rep.matrices())),
        "",
    );
    let stable = comps
        .iter()
        .map(|c| c.cluster.is_galois_stable(rep.field()))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    r.check("clusters are Galois-stable", stable.iter().all(|s| *s), "");
    let semi = check_p_semilinear(rep, SEMILINEAR_TRIALS, flags.seed)?;
    r.check(
        "phi is p-semilinear",
        semi.passed(),
        format!("{} trials, {} failures", semi.trials, semi.failures.len()),
    );
    r.set("module", json!(name));
    r.set("eigenvalue_field", json!(efield.to_string()));
    let chars: Vec<Value> = names
        .iter()
        .zip(cl.characters())
        .map(|(n, c)| character_json(n, c, &alg_labels))
        .collect();
    r.set("characters", Value::Array(chars));
    r.set("cluster", json!(names));
    r.set("components", Value::Array(comp_json));
    Ok(r)
}

// ---- hom -------------------------------------------------------------------

pub fn hom(ws: &Workspace, flags: &Flags) -> Result<Report> {
    let task = ws.task("hom");
    let none = std::iter::empty();
    let src_name = pick(
        &flags.module,
        &task,
        "source",
        none.clone(),
        "source module",
    )?;
    let tgt_name = pick(&flags.target, &task, "target", none, "target module")?;
    let src = ws.module(&src_name)?;
    let tgt = ws.module(&tgt_name)?;
    if src.rep.algebra().as_ref() != tgt.rep.algebra().as_ref() {
        return Err(CliError::Usage(format!(
            "`{}` and `{}` are modules over different algebras",
            src_name, tgt_name
        )));
    }
    let maps = hom_space(&src.rep, &tgt.rep)?;
    let mut r = Report::new("hom");
    r.line(format!(
        "dim Hom_{}({}, {}) = {}",
        src.algebra,
        src_name,
        tgt_name,
        maps.len()
    ));
    for (k, m) in maps.iter().enumerate() {
        r.line("");
        r.block(&map_table(
            &format!("h{}", k + 1),
            m,
            src.rep.labels(),
            tgt.rep.labels(),
        ));
    }
    r.check(
        "every basis map is a module map",
        maps.iter().all(|m| is_homomorphism(&src.rep, &tgt.rep, m)),
        "",
    );
    r.set("dimension", json!(maps.len()));
    r.set("maps", Value::Array(maps.iter().map(matrix_json).collect()));
    Ok(r)
}

// ---- adjoint-check -----------------------------------------------------------

pub fn adjoint_check(ws: &Workspace, flags: &Flags) -> Result<Report> {
    let task = ws.task("adjoint-check");
    let induced_names = ws
        .modules
        .iter()
        .filter(|(_, m)| m.induced().is_some())
        .map(|(n, _)| n);
    let m_name = pick(
        &flags.module,
        &task,
        "module",
        induced_names,
        "induced module",
    )?;
    let entry = ws.module(&m_name)?;
    let ind = entry
        .induced()
        .ok_or_else(|| CliError::Usage(format!("module `{}` is not induced", m_name)))?;
    let targets = ws
        .modules
        .iter()
        .filter(|(n, m)| **n != m_name && m.algebra == entry.algebra)
        .map(|(n, _)| n);
    let v_name = pick(&flags.target, &task, "target", targets, "target module")?;
    let v = &ws.module(&v_name)?.rep;
    if v.algebra().as_ref() != ind.module().algebra().as_ref() {
        return Err(CliError::Usage(format!(
            "`{}` is not a module over `{}`",
            v_name, entry.algebra
        )));
    }
    let mut r = Report::new("adjoint-check");
    r.line(format!(
        "induced module {} (dimension {}), target {} (dimension {})",
        m_name,
        ind.dim(),
        v_name,
        v.dim()
    ));
    let in_category = ind.check_category(v);
    let detail = match &in_category {
        Ok(()) => String::new(),
        Err(e) => e.to_string(),
    };
    if !r.check("target lies in the category", in_category.is_ok(), detail) {
        return Ok(r);
    }
    let res = v.restrict(ind.subalgebra());
    let thetas = hom_space(ind.source(), &res)?;
    let psis = hom_space(ind.module(), v)?;
    r.line(format!(
        "dim Hom_L({}, {}) = {}, dim Hom_S(W, res {}) = {}",
        m_name,
        v_name,
        psis.len(),
        v_name,
        thetas.len()
    ));
    r.check(
        "adjunction dimensions agree",
        psis.len() == thetas.len(),
        format!("{} = {}", psis.len(), thetas.len()),
    );
    let mut triangle = true;
    for (theta, psi) in thetas.iter().zip(ind.adjoint_forward_all(v, &thetas)?) {
        triangle &= is_homomorphism(ind.module(), v, &psi);
        triangle &= &ind.adjoint_backward(v, &psi)? == theta;
    }
    r.check("unit triangle: psi(1 (x) w) = theta(w)", triangle, "");
    let mut inverse = true;
    let restricted = psis
        .iter()
        .map(|psi| ind.adjoint_backward(v, psi))
        .collect::<Result<Vec<_>, _>>()?;
    inverse &= ind.adjoint_forward_all(v, &restricted)? == psis;
    r.check("every L-map is determined by its restriction", inverse, "");
    r.set("hom_dimension", json!(psis.len()));
    r.set("restricted_hom_dimension", json!(thetas.len()));

    if let Some(tv) = task.get("theta") {
        let theta = ws.matrix(v.field(), tv, v.dim(), ind.source().dim())?;
        let is_map = is_homomorphism(ind.source(), &res, &theta);
        if r.check("theta is a module map", is_map, "") {
            let omega = ind.adjoint_forward(v, &theta)?;
            let kernel = Subspace::span(v.field(), ind.dim(), &omega.nullspace());
            r.line("");
            r.block(&map_table("ω", &omega, entry.rep.labels(), v.labels()));
            r.line("");
            r.line(format!("ker ω: dimension {}", kernel.dim()));
            for b in kernel.basis() {
                r.line(format!("  {}", vector_text(b, entry.rep.labels())));
            }
            r.set("omega", matrix_json(&omega));
            r.set(
                "kernel",
                Value::Array(kernel.basis().iter().map(|b| vector_json(b)).collect()),
            );
        }
    }
    Ok(r)
}

// ---- envelope ----------------------------------------------------------------

/// Whether the envelope is isomorphic to the `p`-closure of `ad(L)` through
/// the map fixing `L`.
pub fn matches_adjoint(spec: &EnvelopeSpec) -> std::result::Result<bool, CoreError> {
    let l = spec.algebra();
    let e = spec.envelope();
    let ads: Vec<Matrix> = (0..l.dim()).map(|i| l.ad_basis(i)).collect();
    let (basis, recipes) = matrix_p_closure(&ads)?;
    if basis.len() != e.dim() {
        return Ok(false);
    }
    let mut images: Vec<Vec<Fe>> = Vec::with_capacity(basis.len());
    for r in &recipes {
        let v = match *r {
            Recipe::Given(i) => spec.embedding().col(i),
            Recipe::PPower(j) => e.p_power(&images[j])?,
            Recipe::Bracket(j, k) => e.bracket(&images[j], &images[k]),
        };
        images.push(v);
    }
    let change = Matrix::from_columns(e.field(), e.dim(), &images);
    if !change.is_invertible() {
        return Ok(false);
    }
    let adj = build_envelope_adjoint(l.clone())?;
    let rebased = e.change_basis(&change, adj.envelope().labels().to_vec())?;
    Ok(&rebased == adj.envelope().as_ref())
}

fn envelope_text(r: &mut Report, spec: &EnvelopeSpec) {
    let e = spec.envelope();
    let labels = e.labels().to_vec();
    for (i, l) in spec.algebra().labels().iter().enumerate() {
        r.line(format!(
            "  {} ↦ {}",
            l,
            format_vector(&spec.embedding().col(i), &labels)
        ));
    }
    for i in 0..e.dim() {
        for j in i + 1..e.dim() {
            let b = e.bracket_basis(i, j);
            if b.iter().any(|x| !x.is_zero()) {
                r.line(format!(
                    "  [{}, {}] = {}",
                    labels[i],
                    labels[j],
                    format_vector(b, &labels)
                ));
            }
        }
    }
    let p = e.field().characteristic();
    for (i, l) in labels.iter().enumerate() {
        if let Ok(v) = e.pmap_basis(i) {
            r.line(format!("  {}^[{}] = {}", l, p, format_vector(v, &labels)));
        }
    }
}

pub fn envelope(ws: &Workspace, flags: &Flags) -> Result<Report> {
    let task = ws.task("envelope");
    let name = pick(
        &flags.envelope,
        &task,
        "envelope",
        ws.envelopes.keys(),
        "envelope",
    )?;
    let env = ws.envelope(&name)?;
    let spec = &env.spec;
    let mut r = Report::new("envelope");
    r.line(format!(
        "envelope {} of {}: dimension {} over {}",
        name,
        env.algebra,
        spec.envelope().dim(),
        spec.envelope().field()
    ));
    envelope_text(&mut r, spec);
    r.check(
        "envelope is restricted and generated by the image",
        true,
        "",
    );
    if spec.algebra().center().dim() == 0 {
        let m = matches_adjoint(spec)?;
        r.check("matches the p-closure of ad(L)", m, "");
    } else {
        r.line("the algebra has a nonzero center; no adjoint comparison");
    }
    r.set("envelope", json!(name));
    r.set("dimension", json!(spec.envelope().dim()));
    r.set("algebra", crate::render::algebra_json(spec.envelope(), "F"));
    r.set("embedding", matrix_json(spec.embedding()));
    Ok(r)
}

// ---- demo --------------------------------------------------------------------

pub fn demo(name: &str, opts: &Options, flags: &Flags) -> Result<Report> {
    match name {
        "ex42" => demo_ex42(opts, flags),
        other => Err(CliError::Usage(format!(
            "unknown demo `{}` (available: ex42)",
            other
        ))),
    }
}

fn demo_ex42(opts: &Options, _flags: &Flags) -> Result<Report> {
    let ws = parse_str(EX42, opts)?;
    let env = ws.envelope("E")?;
    let spec = &env.spec;
    let field = spec.envelope().field().clone();
    let lambda = ws.scalar(&field, &json!("lambda"))?;
    let p = field.characteristic();
    let mut r = Report::new("demo");
    r.line(format!("demo ex42 over {} with λ = {}", field, lambda));
    r.check(
        "λ lies outside the prime field",
        lambda.pow(p) != lambda,
        format!("λ^{} - λ = {}", p, &lambda.pow(p) - &lambda),
    );
    r.line(format!("L* = <L, d>: dimension {}", spec.envelope().dim()));
    envelope_text(&mut r, spec);
    r.check(
        "L* matches the p-closure of ad(L)",
        matches_adjoint(spec)?,
        "",
    );

    let sub = ws.subalgebra("A")?;
    let w = ws.module("W")?;
    let v = &ws.module("V")?.rep;
    let sp = envelope_closure(spec, &sub.sub.basis)?;
    let adapted = adapt_basis(spec.envelope(), &sp)?;
    let labels = adapted.algebra.labels().to_vec();
    let f1 = ws.family_polys("f", &labels[..adapted.complement], &field)?;
    let t = t_functor(spec, &sub.sub.basis, &w.rep, &f1, None)?;
    let fam_text: Vec<String> = labels
        .iter()
        .zip(t.induced.family().polys())
        .map(|(l, p)| format!("f_{} = {}", l, p.display_with("t")))
        .collect();
    r.line(format!("family: {}", fam_text.join(", ")));
    r.line(format!("T(W): dimension {}", t.module.dim()));

    let family = extension_family(spec, v)?;
    let q = field.order().unwrap_or(0);
    let count = q
        .checked_pow(family.homogeneous.len() as u32)
        .unwrap_or(u128::MAX);
    if count > MAX_EXTENSIONS {
        return Err(CliError::Engine(CoreError::Unsupported(
            "too many extensions to enumerate".into(),
        )));
    }
    let elements = field.elements(q).unwrap_or_default();
    let mut admissible = Vec::new();
    for idx in 0..count {
        let mut rest = idx;
        let coeffs: Vec<Fe> = (0..family.homogeneous.len())
            .map(|_| {
                let c = elements[(rest % q) as usize].clone();
                rest /= q;
                c
            })
            .collect();
        let vstar = family.member(spec, v, &coeffs)?;
        if t.induced.check_category(&vstar).is_ok() {
            admissible.push((coeffs, vstar));
        }
    }
    let elem = family.element;
    for (k, (coeffs, vstar)) in admissible.iter().enumerate() {
        let d = vstar.matrix(elem);
        let mut eigen: Vec<String> = (0..d.rows()).map(|i| d.get(i, i).to_string()).collect();
        eigen.dedup();
        let cs: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
        r.line(format!(
            "extension {}: coefficients ({}), diagonal of {}: {}",
            k + 1,
            cs.join(", "),
            spec.envelope().labels()[elem],
            eigen.join(", ")
        ));
    }
    let two = r.check(
        "two admissible extensions",
        admissible.len() >= 2,
        format!("{} found", admissible.len()),
    );
    r.set("envelope_dimension", json!(spec.envelope().dim()));
    r.set("t_dimension", json!(t.module.dim()));
    r.set("admissible_extensions", json!(admissible.len()));
    if !two {
        return Ok(r);
    }
    let theta_v = ws
        .task("demo")
        .get("theta")
        .cloned()
        .ok_or_else(|| CliError::Usage("the demo document has no tasks.demo.theta".into()))?;
    let theta = ws.matrix(&field, &theta_v, v.dim(), w.rep.dim())?;
    let psi1 = t.lemma_psi(&admissible[0].1, &theta)?;
    let psi2 = t.lemma_psi(&admissible[1].1, &theta)?;
    r.check("ψ1 ≠ ψ2", psi1 != psi2, "");
    let extends = [&psi1, &psi2]
        .iter()
        .all(|psi| is_homomorphism(&t.module, v, psi) && (*psi * t.induced.unit()) == theta);
    r.check("ψ1 and ψ2 are L-maps extending θ", extends, "");
    let ti = t.true_induce()?;
    r.line(format!("true_induce(W): dimension {}", ti.dim()));
    r.check(
        "ψ1 and ψ2 agree on true_induce(W)",
        ti.restrict_map(&psi1) == ti.restrict_map(&psi2),
        "",
    );
    let res = v.restrict_to(Arc::new(w.rep.algebra().as_ref().clone()), &sub.sub.basis);
    let thetas = hom_space(&w.rep, &res)?;
    let psis = hom_space(&ti.module, v)?;
    let restricted: Vec<Vec<Fe>> = psis
        .iter()
        .map(|m| {
            let prod = m * &ti.unit;
            (0..prod.rows())
                .flat_map(|i| prod.row(i).to_vec())
                .collect()
        })
        .collect();
    let injective = psis.is_empty()
        || Matrix::from_columns(&field, v.dim() * w.rep.dim(), &restricted).rank() == psis.len();
    r.check(
        "adjunction dimensions on true_induce(W)",
        psis.len() == thetas.len() && injective,
        format!("{} = {}", psis.len(), thetas.len()),
    );
    r.set("true_induce_dimension", json!(ti.dim()));
    r.set("psi_differ", json!(psi1 != psi2));
    Ok(r)
}
