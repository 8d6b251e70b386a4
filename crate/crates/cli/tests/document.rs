use std::path::PathBuf;
use std::sync::Arc;

use modind::document::parse_value;
use modind::render::module_document;
use modind::{parse_file, parse_str, CliError, DiagnosticKind, Options};
use modind_core::liealg::LieAlgebra;
use modind_core::modules::Representation;
use modind_core::{Field, Matrix, Poly};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn with_params(params: &[(&str, &str)]) -> Options {
    Options {
        params: params
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect(),
        default_field: None,
    }
}

fn diagnostics(text: &str) -> Vec<(DiagnosticKind, String, String)> {
    match parse_str(text, &Options::default()) {
        Err(CliError::Document(d)) => d.into_iter().map(|d| (d.kind, d.path, d.message)).collect(),
        Err(e) => panic!("unexpected error {}", e),
        Ok(_) => panic!("document parsed"),
    }
}

fn round_trip(rep: &Representation) {
    let doc = module_document(rep, "M");
    let ws = parse_value(&doc, &Options::default()).unwrap();
    assert_eq!(&ws.module("M").unwrap().rep, rep, "{}", doc);
}

#[test]
fn fixture_modules_round_trip() {
    for (name, module) in [
        ("ex32.json", "M"),
        ("ex32.json", "W"),
        ("ex31.json", "V"),
        ("ex_sy.json", "M"),
        ("ex_tau.json", "V"),
        ("ex42.json", "V"),
    ] {
        let ws = parse_file(&fixture(name), &Options::default()).unwrap();
        round_trip(&ws.module(module).unwrap().rep);
    }
}

#[test]
fn induced_module_uses_the_adapted_basis() {
    let ws = parse_file(&fixture("ex32.json"), &Options::default()).unwrap();
    let entry = ws.module("M").unwrap();
    let induced = entry.induced().unwrap();
    assert_eq!(induced.adapted().algebra.labels(), ["y", "x"]);
    assert_eq!(entry.rep.dim(), 12);
    assert_eq!(entry.rep.labels()[0], "m_1^0");
    assert_eq!(entry.rep.labels()[11], "m_2^5");
}

#[test]
fn family_expressions_use_parameters() {
    let ws = parse_file(
        &fixture("ex32.json"),
        &with_params(&[("alpha", "2"), ("beta", "0")]),
    )
    .unwrap();
    let fam = ws.family("f").unwrap();
    let f = &fam.field;
    assert_eq!(fam.polys["y"], Poly::from_ints(f, &[4, 2, 1]));
    assert_eq!(fam.polys["x"], Poly::from_ints(f, &[1, 0, 1]));
}

#[test]
fn polynomial_strings_parse_in_t() {
    let ws = parse_file(&fixture("ex_tau.json"), &Options::default()).unwrap();
    let fam = ws.family("f").unwrap();
    let k = &fam.field;
    let tau = k.generator().unwrap();
    let expected = Poly::from_coeffs(k, vec![-&tau, k.zero(), k.zero(), k.one()]);
    assert_eq!(fam.polys["x"], expected);
}

#[test]
fn whitespace_is_the_empty_workspace() {
    assert!(parse_str("  \n", &Options::default()).unwrap().is_empty());
    assert!(parse_str("{}", &Options::default()).unwrap().is_empty());
}

#[test]
fn unknown_keys_are_named() {
    let d = diagnostics(r#"{"fields": {"F": {"kind": "prime", "p": 3, "q": 1}}}"#);
    assert_eq!(d.len(), 1);
    assert_eq!(d[0].0, DiagnosticKind::Schema);
    assert_eq!(d[0].1, "/fields/F/q");
}

#[test]
fn unbound_symbols_are_located() {
    let d = diagnostics(
        r#"{"fields": {"F": {"kind": "prime", "p": 3}},
            "algebras": {"L": {"field": "F", "basis": ["x"], "pmap": {"x": "gamma*x"}}}}"#,
    );
    assert!(d
        .iter()
        .any(|(_, p, m)| p == "/algebras/L/pmap/x" && m.contains("unbound symbol `gamma`")));
}

#[test]
fn cyclic_modules_are_reported() {
    let d = diagnostics(
        r#"{"fields": {"F": {"kind": "prime", "p": 3}},
            "algebras": {"L": {"field": "F", "basis": ["x"], "pmap": {"x": "x"}}},
            "subalgebras": {"S": {"algebra": "L", "generators": ["x"]}},
            "families": {"f": {"algebra": "L", "f": {"x": "t"}}},
            "modules": {"A": {"induce": {"subalgebra": "S", "module": "A", "family": "f"}}}}"#,
    );
    assert!(
        d.iter()
            .any(|(_, p, m)| p.starts_with("/modules/A") && m.contains("refers to itself")),
        "{:?}",
        d
    );
}

#[test]
fn greek_aliases_resolve() {
    let ws = parse_str(
        r#"{"fields": {"F": {"kind": "prime", "p": 5}},
            "params": {"alpha": 2},
            "algebras": {"L": {"field": "F", "basis": ["x"], "pmap": {"x": "α^2*x"}}}}"#,
        &Options::default(),
    )
    .unwrap();
    let l = &ws.algebras["L"];
    assert_eq!(l.pmap_basis(0).unwrap(), [l.field().from_int(4)]);
}

fn fields() -> Vec<Field> {
    let f3 = Field::prime(3).unwrap();
    let f9 = Field::algebraic(&f3, &Poly::from_ints(&f3, &[1, 0, 1]), "i").unwrap();
    let k = Field::rational(&f3, "tau").unwrap();
    let k9 = Field::rational(&f9, "tau").unwrap();
    let ins = Field::inseparable(&k, 2).unwrap();
    vec![Field::prime(5).unwrap(), f9, k, k9, ins]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn field_elements_survive_the_document(which in 0usize..5, seed in any::<u64>()) {
        let field = fields().swap_remove(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = Arc::new(LieAlgebra::builder(&field, &["x"]).build().unwrap());
        let m = Matrix::from_fn(&field, 2, 2, |_, _| field.random(&mut rng));
        let rep = Representation::new(l, vec![m]).unwrap();
        round_trip(&rep);
    }
}
