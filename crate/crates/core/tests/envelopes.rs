mod common;

use std::sync::Arc;

use common::*;
use modind_core::characters::phi;
use modind_core::envelopes::{
    build_envelope_adjoint, envelope_closure, extend_action, extension_family, j_extend, t_functor,
    EnvelopeSpec,
};
use modind_core::liealg::LieAlgebra;
use modind_core::modules::{hom_space, is_homomorphism, Representation};
use modind_core::{Fe, Field, Matrix, Poly};

struct Example {
    field: Field,
    lambda: Fe,
    kappa: Fe,
    l: Arc<LieAlgebra>,
    env: EnvelopeSpec,
}

/// `L = <x, a, b>` with `[x, a] = a`, `[x, b] = lambda b`, `lambda = i`, and
/// `L* = <x, a, b, d>` with `[d, b] = b`, `x^[p] = x + (lambda^p - lambda) d`.
fn example() -> Example {
    let field = f9();
    let lambda = field.generator().unwrap();
    let kappa = &lambda.pow(3) - &lambda;
    let z = field.zero();
    let one = field.one();
    let l = Arc::new(
        LieAlgebra::builder(&field, &["x", "a", "b"])
            .bracket_ints(0, 1, &[0, 1, 0])
            .bracket(0, 2, vec![z.clone(), z.clone(), lambda.clone()])
            .build()
            .unwrap(),
    );
    let lstar = Arc::new(
        LieAlgebra::builder(&field, &["x", "a", "b", "d"])
            .bracket_ints(0, 1, &[0, 1, 0, 0])
            .bracket(0, 2, vec![z.clone(), z.clone(), lambda.clone(), z.clone()])
            .bracket_ints(3, 2, &[0, 0, 1, 0])
            .pmap(0, vec![one.clone(), z.clone(), z.clone(), kappa.clone()])
            .pmap_ints(3, &[0, 0, 0, 1])
            .zero_pmap()
            .build()
            .unwrap(),
    );
    let embedding = Matrix::from_fn(&field, 4, 3, |r, c| {
        if r == c {
            field.one()
        } else {
            field.zero()
        }
    });
    let env = EnvelopeSpec::new(l.clone(), lstar, embedding).unwrap();
    Example {
        field,
        lambda,
        kappa,
        l,
        env,
    }
}

/// `V = H (x) K` on `h_i (x) k_j` (index `3i + j`).
fn tensor_module(ex: &Example) -> Representation {
    let f = &ex.field;
    let idx = |i: usize, j: usize| 3 * (i % 3) + j % 3;
    let x = Matrix::from_fn(f, 9, 9, |r, c| {
        if r == c {
            &f.from_int((c / 3) as i64) + &(&ex.lambda * &f.from_int((c % 3) as i64))
        } else {
            f.zero()
        }
    });
    let a = Matrix::from_fn(f, 9, 9, |r, c| {
        if r == idx(c / 3 + 1, c % 3) {
            f.one()
        } else {
            f.zero()
        }
    });
    let b = Matrix::from_fn(f, 9, 9, |r, c| {
        if r == idx(c / 3, c % 3 + 1) {
            f.one()
        } else {
            f.zero()
        }
    });
    Representation::new(ex.l.clone(), vec![x, a, b]).unwrap()
}

/// `d (h_i (x) k_j) = (mu + nu + j) h_i (x) k_j`.
fn d_action(f: &Field, mu: i64, nu: i64) -> Matrix {
    Matrix::from_fn(f, 9, 9, |r, c| {
        if r == c {
            f.from_int(mu + nu + (c % 3) as i64)
        } else {
            f.zero()
        }
    })
}

fn a_module(ex: &Example) -> (Vec<Vec<Fe>>, Representation) {
    let s =
        ex.l.subalgebra(vec![ex.l.basis_vector(1)], vec!["a".into()])
            .unwrap();
    let w =
        Representation::one_dimensional(Arc::new(s.algebra.clone()), &[ex.field.one()]).unwrap();
    (s.basis, w)
}

fn theta(f: &Field) -> Matrix {
    Matrix::from_columns(
        f,
        9,
        &[vector(f, 9, &[(0, f.one()), (3, f.one()), (6, f.one())])],
    )
}

#[test]
fn adjoint_envelope_matches_the_explicit_one() {
    let ex = example();
    let adj = build_envelope_adjoint(ex.l.clone()).unwrap();
    assert_eq!(adj.envelope().dim(), 4);
    assert_eq!(adj.envelope().labels()[3], "x^[3]");
    // d = (x^[3] - x) / kappa.
    let f = &ex.field;
    let k_inv = ex.kappa.inv().unwrap();
    let mut cols: Vec<Vec<Fe>> = (0..3).map(|i| adj.envelope().basis_vector(i)).collect();
    cols.push(vec![-&k_inv, f.zero(), f.zero(), k_inv.clone()]);
    let change = Matrix::from_columns(f, 4, &cols);
    let labels = ["x", "a", "b", "d"].iter().map(|s| s.to_string()).collect();
    let rebased = adj.envelope().change_basis(&change, labels).unwrap();
    assert_eq!(&rebased, &**ex.env.envelope());
}

#[test]
fn tensor_module_is_irreducible_and_extends() {
    let ex = example();
    let v = tensor_module(&ex);
    v.validate().unwrap();
    assert!(v.is_irreducible().unwrap());
    let family = extension_family(&ex.env, &v).unwrap();
    assert_eq!(family.element, 3);
    assert_eq!(family.homogeneous.len(), 1);
    for (mu, nu) in [(0, 1), (1, 1), (2, 0)] {
        let d = d_action(&ex.field, mu, nu);
        let vstar = extend_action(&ex.env, &v, 3, d.clone()).unwrap();
        let phis = phi(&vstar).unwrap();
        let s = ex.field.from_int(mu + nu);
        let id = Matrix::identity(&ex.field, 9);
        assert_eq!(phis[3], id.scale(&(&s.pow(3) - &s)));
        assert_eq!(phis[0], id.scale(&-(&ex.kappa * &s)));
        assert_eq!(phis[1], id);
        assert_eq!(phis[2], id);
        let diff = &d - &family.particular;
        assert!(
            Matrix::from_columns(&ex.field, 81, &[flatten(&family.homogeneous[0])])
                .hstack(&Matrix::from_columns(&ex.field, 81, &[flatten(&diff)]))
                .rank()
                == 1
        );
    }
}

fn flatten(m: &Matrix) -> Vec<Fe> {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

#[test]
fn j_extension_along_the_closure() {
    let ex = example();
    let (s_basis, w) = a_module(&ex);
    let sp = envelope_closure(&ex.env, &s_basis).unwrap();
    assert_eq!(sp.dim(), 1);
    let jw = j_extend(&w, &sp).unwrap();
    assert_eq!(jw.matrices(), w.matrices());

    let sx =
        ex.l.subalgebra(vec![ex.l.basis_vector(0)], vec!["x".into()])
            .unwrap();
    let wx = Representation::one_dimensional(
        Arc::new(sx.algebra.clone()),
        std::slice::from_ref(&ex.lambda),
    )
    .unwrap();
    let spx = envelope_closure(&ex.env, &sx.basis).unwrap();
    assert_eq!(spx.dim(), 2);
    let jx = j_extend(&wx, &spx).unwrap();
    // d = (x^[3] - x) / kappa acts by (lambda^3 - lambda) / kappa = 1.
    let k_inv = ex.kappa.inv().unwrap();
    let d = jx.act(&[-&k_inv, k_inv.clone()]);
    assert_eq!(d, Matrix::identity(&ex.field, 1));
}

fn family(f: &Field, quadratic: bool) -> Vec<Poly> {
    let i = f.generator().unwrap();
    let fx = if quadratic {
        Poly::from_ints(f, &[1, 0, 1])
    } else {
        Poly::from_coeffs(f, vec![i, f.one()])
    };
    vec![
        fx,
        Poly::from_ints(f, &[-1, 1]),
        Poly::from_ints(f, &[0, 1]),
    ]
}

#[test]
fn linear_family_gives_p_cubed_and_a_unique_psi() {
    let ex = example();
    let (s_basis, w) = a_module(&ex);
    let t = t_functor(&ex.env, &s_basis, &w, &family(&ex.field, false), None).unwrap();
    assert_eq!(t.module.dim(), 27);
    let res = t
        .module
        .restrict_to(Arc::new(w.algebra().as_ref().clone()), &s_basis);
    assert!(is_homomorphism(&w, &res, t.induced.unit()));
    let v = tensor_module(&ex);
    let fam = extension_family(&ex.env, &v).unwrap();
    let mut admissible = Vec::new();
    for c in ex.field.elements(9).unwrap() {
        let vstar = fam.member(&ex.env, &v, &[c]).unwrap();
        if t.induced.check_category(&vstar).is_ok() {
            admissible.push(vstar);
        }
    }
    assert_eq!(admissible.len(), 1);
    let psi = t.lemma_psi(&admissible[0], &theta(&ex.field)).unwrap();
    assert_eq!(&psi * t.induced.unit(), theta(&ex.field));
    assert!(is_homomorphism(&t.module, &v, &psi));
}

#[test]
fn two_extensions_give_different_maps_that_agree_on_the_generated_submodule() {
    let ex = example();
    let f = &ex.field;
    let (s_basis, w) = a_module(&ex);
    let t = t_functor(&ex.env, &s_basis, &w, &family(f, true), None).unwrap();
    assert_eq!(t.module.dim(), 54);
    let v = tensor_module(&ex);
    let v1 = extend_action(&ex.env, &v, 3, d_action(f, 0, 1)).unwrap();
    let v2 = extend_action(&ex.env, &v, 3, d_action(f, 1, 1)).unwrap();
    let th = theta(f);
    let psi1 = t.lemma_psi(&v1, &th).unwrap();
    let psi2 = t.lemma_psi(&v2, &th).unwrap();
    assert_ne!(psi1, psi2);
    for psi in [&psi1, &psi2] {
        assert!(is_homomorphism(&t.module, &v, psi));
        assert_eq!(&(psi * t.induced.unit()), &th);
    }
    let zero = t.lemma_psi(&v1, &Matrix::zeros(f, 9, 1)).unwrap();
    assert!(zero.is_zero());

    let ti = t.true_induce().unwrap();
    assert!(ti.dim() <= 54);
    assert_eq!(ti.restrict_map(&psi1), ti.restrict_map(&psi2));

    let res = v.restrict_to(Arc::new(w.algebra().as_ref().clone()), &s_basis);
    let thetas = hom_space(&w, &res).unwrap();
    let psis = hom_space(&ti.module, &v).unwrap();
    assert_eq!(thetas.len(), 3);
    assert_eq!(psis.len(), thetas.len());
    let units: Vec<Vec<Fe>> = psis.iter().map(|p| flatten(&(p * &ti.unit))).collect();
    assert_eq!(Matrix::from_columns(f, 9, &units).rank(), psis.len());
}

#[test]
fn restricted_algebra_with_trivial_envelope_matches_induction() {
    let f = f3();
    let l = xy_algebra(&f);
    let env = EnvelopeSpec::trivial(l.clone()).unwrap();
    let s = span_of(&l, "x");
    let w = rotation_module(&s, &f);
    let fy = Poly::from_ints(&f, &[2, 1, 1]);
    let fx = Poly::from_ints(&f, &[1, 0, 1]);
    let t = t_functor(&env, &s.basis, &w, &[fy], Some(&[fx])).unwrap();
    let direct = twelve_dim_module(&f, 1, 1);
    assert_eq!(t.module.matrices(), direct.module().matrices());
    let ti = t.true_induce().unwrap();
    assert_eq!(ti.dim(), 12);
}
