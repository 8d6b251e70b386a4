mod common;

use std::sync::Arc;

use common::*;
use modind_core::induction::{choose_f_for_s, divisor_epi_module, induce};
use modind_core::linalg::Subspace;
use modind_core::modules::{hom_space, is_homomorphism, Representation};
use modind_core::uea::{PbwElement, Strategy};
use modind_core::{Error, Fe, Field, Matrix, Poly};

/// The displayed action tables of `M`, column by column.
fn expected_tables(f: &Field, alpha: i64, beta: i64) -> (Matrix, Matrix) {
    let c = |n: i64| f.from_int(n);
    let mut x = Vec::new();
    for r in 0..6 {
        match r % 3 {
            0 => {
                x.push(vec![(m(2, r), c(1))]);
                x.push(vec![(m(1, r), c(-1))]);
            }
            1 => {
                x.push(vec![(m(1, r), c(1)), (m(2, r), c(1))]);
                x.push(vec![(m(1, r), c(-1)), (m(2, r), c(1))]);
            }
            _ => {
                x.push(vec![(m(1, r), c(-1)), (m(2, r), c(1))]);
                x.push(vec![(m(1, r), c(-1)), (m(2, r), c(-1))]);
            }
        }
    }
    let mut y = Vec::new();
    for r in 0..5 {
        y.push(vec![(m(1, r + 1), c(1))]);
        y.push(vec![(m(2, r + 1), c(1))]);
    }
    let norm = -(alpha * alpha + beta * beta);
    for j in 1..=2 {
        y.push(vec![(m(j, 0), c(norm)), (m(j, 3), c(-alpha))]);
    }
    (from_images(f, 12, &x), from_images(f, 12, &y))
}

#[test]
fn twelve_dimensional_tables() {
    let f = f3();
    for a in 0..3 {
        for b in 0..3 {
            let ind = twelve_dim_module(&f, a, b);
            let (x, y) = expected_tables(&f, a, b);
            assert_eq!(ind.dim(), 12);
            assert_eq!(ind.module().matrix(0), &x, "x table at ({}, {})", a, b);
            assert_eq!(ind.module().matrix(1), &y, "y table at ({}, {})", a, b);
        }
    }
}

#[test]
fn basis_labels_and_adapted_order() {
    let ind = twelve_dim_module(&f3(), 1, 1);
    assert_eq!(
        ind.adapted().algebra.labels(),
        &["y".to_string(), "x".to_string()]
    );
    let labels = ind.module().labels();
    assert_eq!(labels[0], "1⊗b1");
    assert_eq!(labels[m(2, 3)], "y^3⊗b2");
    assert_eq!(ind.position(&[4], 1), Some(m(2, 4)));
}

#[test]
fn unit_is_equivariant_and_generates() {
    let ind = twelve_dim_module(&f3(), 2, 1);
    assert!(is_homomorphism(ind.source(), &ind.restricted(), ind.unit()));
    assert_eq!(ind.unit().rank(), 2);
    let spun = ind.module().spin(&ind.unit().col_vecs());
    assert_eq!(spun.dim(), ind.dim());
}

fn omega_expected(f: &Field, alpha: i64, beta: i64) -> Matrix {
    let c = |n: i64| f.from_int(n);
    let mut cols = Vec::new();
    for r in 0..3 {
        cols.push(vec![(m(1, r), c(1))]);
        cols.push(vec![(m(2, r), c(1))]);
    }
    for r in 0..3 {
        cols.push(vec![(m(1, r), c(alpha)), (m(2, r), c(beta))]);
        cols.push(vec![(m(1, r), c(-beta)), (m(2, r), c(alpha))]);
    }
    from_images(f, 6, &cols)
}

fn displayed_kernel(f: &Field, alpha: i64, beta: i64) -> Subspace {
    let c = |n: i64| f.from_int(n);
    let mut gens = Vec::new();
    for r in 0..3 {
        gens.push(vector(
            f,
            12,
            &[
                (m(1, 3 + r), c(1)),
                (m(1, r), c(-alpha)),
                (m(2, r), c(-beta)),
            ],
        ));
        gens.push(vector(
            f,
            12,
            &[
                (m(2, 3 + r), c(1)),
                (m(1, r), c(beta)),
                (m(2, r), c(-alpha)),
            ],
        ));
    }
    Subspace::span(f, 12, &gens)
}

#[test]
fn adjunction_map_matches_table() {
    let f = f3();
    for (a, b) in PARAMETERS {
        let ind = twelve_dim_module(&f, a, b);
        let v = six_dim_module(ind.module().algebra(), a, b);
        let theta = Matrix::from_columns(
            &f,
            6,
            &[
                vector(&f, 6, &[(0, f.one())]),
                vector(&f, 6, &[(1, f.one())]),
            ],
        );
        let omega = ind.adjoint_forward(&v, &theta).unwrap();
        assert_eq!(omega, omega_expected(&f, a, b));
        assert!(is_homomorphism(ind.module(), &v, &omega));
        let kernel = Subspace::span(&f, 12, &omega.nullspace());
        assert_eq!(kernel.dim(), 6);
        assert_eq!(kernel, displayed_kernel(&f, a, b));
        assert_eq!(ind.adjoint_backward(&v, &omega).unwrap(), theta);
    }
}

#[test]
fn adjunction_is_a_bijection_of_hom_spaces() {
    let f = f3();
    for (a, b) in PARAMETERS {
        let ind = twelve_dim_module(&f, a, b);
        let v = six_dim_module(ind.module().algebra(), a, b);
        let res = v.restrict(ind.subalgebra());
        let thetas = hom_space(ind.source(), &res).unwrap();
        let psis = hom_space(ind.module(), &v).unwrap();
        assert_eq!(thetas.len(), psis.len());
        assert_eq!(thetas.len(), 2);
        for theta in &thetas {
            let psi = ind.adjoint_forward(&v, theta).unwrap();
            assert_eq!(&ind.adjoint_backward(&v, &psi).unwrap(), theta);
        }
        for psi in &psis {
            let theta = ind.adjoint_backward(&v, psi).unwrap();
            assert_eq!(psi, &ind.adjoint_forward(&v, &theta).unwrap());
            assert_eq!(theta, psi * ind.unit());
        }
    }
}

#[test]
fn naturality_square() {
    let f = f3();
    let ind = twelve_dim_module(&f, 1, 1);
    let v = six_dim_module(ind.module().algebra(), 1, 1);
    let vv = v.direct_sum(&v).unwrap();
    let res = v.restrict(ind.subalgebra());
    for g in hom_space(&v, &vv).unwrap() {
        for theta in hom_space(ind.source(), &res).unwrap() {
            let lhs = ind.adjoint_forward(&vv, &(&g * &theta)).unwrap();
            let rhs = &g * &ind.adjoint_forward(&v, &theta).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn induction_is_functorial() {
    let f = f3();
    let ind = twelve_dim_module(&f, 2, 1);
    let w = ind.source();
    let id = Matrix::identity(&f, 2);
    assert!(ind.ind_map(&ind, &id).unwrap().is_identity());
    let ends = hom_space(w, w).unwrap();
    assert_eq!(ends.len(), 2);
    for h in &ends {
        let ih = ind.ind_map(&ind, h).unwrap();
        assert!(is_homomorphism(ind.module(), ind.module(), &ih));
        for k in &ends {
            let ik = ind.ind_map(&ind, k).unwrap();
            assert_eq!(ind.ind_map(&ind, &(k * h)).unwrap(), &ik * &ih);
        }
    }
}

#[test]
fn category_is_checked_eagerly() {
    let f = f3();
    let ind = twelve_dim_module(&f, 1, 1);
    // f_y annihilates the module only for matching parameters.
    let v = six_dim_module(ind.module().algebra(), 1, 0);
    let theta = Matrix::zeros(&f, 6, 2);
    assert!(matches!(
        ind.adjoint_forward(&v, &theta),
        Err(Error::NotInCategory(_))
    ));
    let zero = ind.adjoint_forward(&six_dim_module(ind.module().algebra(), 1, 1), &theta);
    assert!(zero.unwrap().is_zero());
}

#[test]
fn chosen_family_for_rotation() {
    let ind = twelve_dim_module(&f3(), 1, 1);
    let f = choose_f_for_s(&[ind.source().clone()]).unwrap();
    assert_eq!(f, vec![Poly::from_ints(&f3(), &[1, 0, 1])]);
}

#[test]
fn degenerate_divisor_recovers_six_dimensional_module() {
    let f = f3();
    for alpha in 0..3 {
        let l = xy_algebra(&f);
        let s = span_of(&l, "x");
        let w = rotation_module(&s, &f);
        let fx = [Poly::from_ints(&f, &[1, 0, 1])];
        let fy = [Poly::from_ints(&f, &[alpha * alpha, alpha, 1])];
        let fy_star = [Poly::from_ints(&f, &[-alpha, 1])];
        let (big, small, epi) =
            divisor_epi_module(l.clone(), &s, &w, (&fy, &fx), (&fy_star, &fx)).unwrap();
        assert_eq!(small.dim(), 6);
        let v = six_dim_module(&l, alpha, 0);
        assert_eq!(small.module().matrices(), v.matrices());
        assert!(is_homomorphism(big.module(), small.module(), &epi));
        assert_eq!(epi.rank(), 6);
        assert_eq!(epi.nullspace().len(), 6);
    }
}

#[test]
fn divisor_epimorphisms_compose() {
    let f = f3();
    let l = xy_algebra(&f);
    let s = span_of(&l, "x");
    let w = rotation_module(&s, &f);
    let fx = [Poly::from_ints(&f, &[1, 0, 1])];
    let chain = [
        Poly::from_ints(&f, &[0, 1, -2, 1]),
        Poly::from_ints(&f, &[0, -1, 1]),
        Poly::from_ints(&f, &[-1, 1]),
    ];
    let mods: Vec<_> = chain
        .iter()
        .map(|fy| induce(l.clone(), &s, &w, std::slice::from_ref(fy), &fx).unwrap())
        .collect();
    let e01 = mods[0].divisor_epi(&mods[1]).unwrap();
    let e12 = mods[1].divisor_epi(&mods[2]).unwrap();
    let e02 = mods[0].divisor_epi(&mods[2]).unwrap();
    assert_eq!(&e12 * &e01, e02);
    assert!(mods[0].divisor_epi(&mods[0]).unwrap().is_identity());
    assert!(matches!(
        mods[2].divisor_epi(&mods[0]),
        Err(Error::NotDivisor(_))
    ));
}

/// `S = <y>`, `W = <w>` with `y w = w`, `f_x = t^2 + 1`.
#[test]
fn inducing_from_the_ideal() {
    let f = f3();
    let l = xy_algebra(&f);
    let s = span_of(&l, "y");
    let w = Representation::one_dimensional(Arc::new(s.algebra.clone()), &[f.one()]).unwrap();
    let fy = choose_f_for_s(std::slice::from_ref(&w)).unwrap();
    assert_eq!(fy, vec![Poly::from_ints(&f, &[-1, 1])]);
    let fx = Poly::from_ints(&f, &[1, 0, 1]);
    let ind = induce(l.clone(), &s, &w, &[fx], &fy).unwrap();
    assert_eq!(ind.dim(), 6);
    assert_eq!(ind.adapted().algebra.labels()[0], "x");

    // (x^3 - x)^2 + 1 = 0 gives x^6 = 2x^4 - x^2 - 1.
    let x6 = ind.reduced().normal_form_word(&[0; 6]);
    let mut expected = PbwElement::zero(&f);
    expected.add_term(vec![4, 0], f.from_int(2));
    expected.add_term(vec![2, 0], f.from_int(-1));
    expected.add_term(vec![0, 0], f.from_int(-1));
    assert_eq!(x6, expected);
    let mut quoted = PbwElement::zero(&f);
    quoted.add_term(vec![1, 0], f.one());
    quoted.add_term(vec![0, 0], f.from_int(-1));
    assert_ne!(x6, quoted);

    // y (x (x) w) = x (x) w - 1 (x) w.
    let y = ind.module().matrix(1);
    assert_eq!(
        y.col(1),
        vector(&f, 6, &[(1, f.one()), (0, f.from_int(-1))])
    );

    let v = six_dim_module(&l, 1, 0);
    let target = vector(
        &f,
        6,
        &[(m(1, 0), f.one()), (m(1, 1), f.one()), (m(1, 2), f.one())],
    );
    let theta = Matrix::from_columns(&f, 6, &[target]);
    let psi = ind.adjoint_forward(&v, &theta).unwrap();
    assert!(psi.is_invertible());
}

/// `F = F_3(tau)`, `S = <y>`, `y w = w`, `f_x = t^3 - tau`.
#[test]
fn imperfect_field_example() {
    let f = Field::rational(&f3(), "tau").unwrap();
    let tau = f.generator().unwrap();
    let l = xy_algebra(&f);
    let s = span_of(&l, "y");
    let w = Representation::one_dimensional(Arc::new(s.algebra.clone()), &[f.one()]).unwrap();
    let fx = Poly::from_coeffs(&f, vec![-tau.clone(), f.zero(), f.zero(), f.one()]);
    let fy = choose_f_for_s(std::slice::from_ref(&w)).unwrap();
    let ind = induce(l, &s, &w, &[fx], &fy).unwrap();
    assert_eq!(ind.dim(), 9);

    let x = ind.module().matrix(0);
    for r in 0..8 {
        assert_eq!(x.col(r), vector(&f, 9, &[(r + 1, f.one())]));
    }
    assert_eq!(x.col(8), vector(&f, 9, &[(0, tau.clone()), (3, f.one())]));

    // y x^r (x) w = (x - 1)^r (x) w, expanded with binomial coefficients.
    let y = ind.module().matrix(1);
    for r in 0..9usize {
        let mut entries = Vec::new();
        let mut binom = 1i64;
        for k in 0..=r {
            let sign = if (r - k) % 2 == 0 { 1 } else { -1 };
            entries.push((k, f.from_int(sign * binom)));
            binom = binom * (r - k) as i64 / (k + 1) as i64;
        }
        assert_eq!(y.col(r), vector(&f, 9, &entries), "y row {}", r);
    }
    let c = |n: i64| f.from_int(n);
    let displayed: [Vec<(usize, Fe)>; 7] = [
        vec![(0, c(1))],
        vec![(0, c(-1)), (1, c(1))],
        vec![(0, c(1)), (1, c(1)), (2, c(1))],
        vec![(0, c(-1)), (3, c(1))],
        vec![(0, c(1)), (1, c(-1)), (3, c(-1)), (4, c(1))],
        vec![
            (0, c(-1)),
            (1, c(-1)),
            (2, c(-1)),
            (3, c(1)),
            (4, c(1)),
            (5, c(1)),
        ],
        vec![(0, c(1)), (3, c(1)), (6, c(1))],
    ];
    for (r, row) in displayed.iter().enumerate() {
        assert_eq!(y.col(r), vector(&f, 9, row));
    }

    let x9 = ind.reduced().normal_form_word(&[0; 9]);
    let mut expected = PbwElement::zero(&f);
    expected.add_term(vec![3, 0], f.one());
    expected.add_term(vec![0, 0], tau.clone());
    assert_eq!(x9, expected);
    let other = ind
        .reduced()
        .normal_form(vec![(vec![0; 9], f.one())], Strategy::Random(7));
    assert_eq!(other, expected);

    assert!(ind.module().is_irreducible().unwrap());

    let phi = ind.module().phi_matrix(0).unwrap();
    let k = Field::inseparable(&f, 1).unwrap();
    let root = k.pth_root(&k.embed(&tau).unwrap()).unwrap();
    let phi_k = phi.to_field(&k).unwrap();
    let shifted = &phi_k - &Matrix::identity(&k, 9).scale(&root);
    let t_minus = Poly::from_coeffs(&k, vec![-root.clone(), k.one()]);
    assert_eq!(phi_k.minimal_polynomial(), t_minus.pow(3));
    let mut power = Matrix::identity(&k, 9);
    for r in 1..=3 {
        power = &power * &shifted;
        assert_eq!(power.nullspace().len(), 3 * r);
    }
}
