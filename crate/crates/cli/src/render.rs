//! Human-readable tables and machine-readable module documents.

use modind_core::fields::FieldKind;
use modind_core::induction::InducedModule;
use modind_core::liealg::{format_vector, LieAlgebra};
use modind_core::modules::Representation;
use modind_core::{Fe, Field, Matrix, Poly};
use serde_json::{json, Map, Value};

use crate::document::SCHEMA;

const SUBSCRIPTS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

fn digits(s: &str, table: &[char; 10]) -> Option<String> {
    if s.is_empty() || !s.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    Some(
        s.chars()
            .map(|c| table[c as usize - '0' as usize])
            .collect(),
    )
}

/// Renders `m_1^3` as `m₁³`; labels of any other shape are returned as is.
pub fn pretty_label(label: &str) -> String {
    let (stem, sup) = match label.split_once('^') {
        Some((a, b)) => (a, Some(b)),
        None => (label, None),
    };
    let (name, sub) = match stem.split_once('_') {
        Some((a, b)) => (a, Some(b)),
        None => (stem, None),
    };
    let sub = match sub.map(|s| digits(s, &SUBSCRIPTS)) {
        Some(Some(s)) => s,
        Some(None) => return label.to_string(),
        None => String::new(),
    };
    let sup = match sup.map(|s| digits(s, &SUPERSCRIPTS)) {
        Some(Some(s)) => s,
        Some(None) => return label.to_string(),
        None => String::new(),
    };
    format!("{}{}{}", name, sub, sup)
}

pub fn pretty_labels(labels: &[String]) -> Vec<String> {
    labels.iter().map(|l| pretty_label(l)).collect()
}

/// Names `stem_j^r` for the basis `e^alpha (x) w_j` of an induced module
/// (`j` counted from 1); multi-indices are written `stem_j^(r1,r2)`. When `W`
/// is one-dimensional and `alpha` a single exponent, the name is `stem_r`.
pub fn induced_names(m: &InducedModule, stem: &str) -> Vec<String> {
    let dw = m.source().dim();
    let mut out = Vec::with_capacity(m.dim());
    for alpha in m.indices() {
        if dw == 1 && alpha.len() == 1 {
            out.push(format!("{}_{}", stem, alpha[0]));
            continue;
        }
        let sup = match alpha.len() {
            0 => String::new(),
            1 => format!("^{}", alpha[0]),
            _ => format!(
                "^({})",
                alpha
                    .iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        };
        for j in 0..dw {
            out.push(format!("{}_{}{}", stem, j + 1, sup));
        }
    }
    out
}

/// Rows `x·m₁⁰ = m₂⁰` for every basis element of the algebra and of the
/// module.
pub fn action_table(rep: &Representation) -> String {
    let labels = pretty_labels(rep.labels());
    let mut out = String::new();
    for (k, name) in rep.algebra().labels().iter().enumerate() {
        let m = rep.matrix(k);
        for (c, l) in labels.iter().enumerate() {
            out.push_str(&format!(
                "{}·{} = {}\n",
                name,
                l,
                format_vector(&m.col(c), &labels)
            ));
        }
    }
    out
}

/// Rows `name(b) = image` for a linear map given by its matrix.
pub fn map_table(name: &str, m: &Matrix, source: &[String], target: &[String]) -> String {
    let source = pretty_labels(source);
    let target = pretty_labels(target);
    let mut out = String::new();
    for (c, l) in source.iter().enumerate() {
        out.push_str(&format!(
            "{}({}) = {}\n",
            name,
            l,
            format_vector(&m.col(c), &target)
        ));
    }
    out
}

pub fn vector_text(v: &[Fe], labels: &[String]) -> String {
    format_vector(v, &pretty_labels(labels))
}

/// A field element as a JSON integer (prime fields) or an expression string.
pub fn element(x: &Fe) -> Value {
    let s = x.to_string();
    match x.field().kind() {
        FieldKind::Prime { .. } => s
            .parse::<i64>()
            .map(Value::from)
            .unwrap_or(Value::String(s)),
        _ => Value::String(s),
    }
}

pub fn vector_json(v: &[Fe]) -> Value {
    Value::Array(v.iter().map(element).collect())
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| vector_json(m.row(r))).collect())
}

pub fn poly_json(p: &Poly) -> Value {
    vector_json(p.coeffs())
}

/// A field descriptor with inline bases.
pub fn field_json(f: &Field) -> Value {
    match f.kind() {
        FieldKind::Prime { p } => json!({"kind": "prime", "p": p}),
        FieldKind::Algebraic { base, modulus, var } => json!({
            "kind": "ext",
            "base": field_json(base),
            "modulus": poly_json(modulus),
            "var": var,
        }),
        FieldKind::Rational { base, var } => json!({
            "kind": "rational",
            "base": field_json(base),
            "var": var,
        }),
        FieldKind::Inseparable { base, k } => json!({
            "kind": "inseparable",
            "base": field_json(base),
            "k": k,
        }),
    }
}

pub fn algebra_json(l: &LieAlgebra, field_name: &str) -> Value {
    let n = l.dim();
    let labels = l.labels();
    let mut brackets = Map::new();
    for i in 0..n {
        for j in i + 1..n {
            let b = l.bracket_basis(i, j);
            if b.iter().any(|x| !x.is_zero()) {
                brackets.insert(format!("{},{}", labels[i], labels[j]), vector_json(b));
            }
        }
    }
    let mut out = Map::new();
    out.insert("field".into(), json!(field_name));
    out.insert("basis".into(), json!(labels));
    out.insert("brackets".into(), Value::Object(brackets));
    if l.has_pmap() {
        let mut pmap = Map::new();
        for (i, label) in labels.iter().enumerate() {
            pmap.insert(label.clone(), vector_json(l.pmap_basis(i).unwrap()));
        }
        out.insert("pmap".into(), Value::Object(pmap));
    }
    Value::Object(out)
}

pub fn module_json(rep: &Representation, algebra_name: &str) -> Value {
    let mut action = Map::new();
    for (k, label) in rep.algebra().labels().iter().enumerate() {
        action.insert(label.clone(), matrix_json(rep.matrix(k)));
    }
    json!({
        "algebra": algebra_name,
        "dim": rep.dim(),
        "basis": rep.labels(),
        "action": action,
    })
}

/// A standalone document holding `rep`, its algebra and its field, which
/// parses back to an equal module.
pub fn module_document(rep: &Representation, module_name: &str) -> Value {
    let field_name = "F";
    let algebra_name = "L";
    json!({
        "schema": SCHEMA,
        "fields": {field_name: field_json(rep.field())},
        "algebras": {algebra_name: algebra_json(rep.algebra(), field_name)},
        "modules": {module_name: module_json(rep, algebra_name)},
    })
}
