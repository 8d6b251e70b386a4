#![allow(dead_code)]

use std::sync::Arc;

use modind_core::induction::{induce, InducedModule};
use modind_core::liealg::{LieAlgebra, Subalgebra};
use modind_core::modules::Representation;
use modind_core::{Fe, Field, Matrix, Poly};

pub fn f3() -> Field {
    Field::prime(3).unwrap()
}

/// `F_3[i]/(i^2 + 1)`.
pub fn f9() -> Field {
    let f = f3();
    Field::algebraic(&f, &Poly::from_ints(&f, &[1, 0, 1]), "i").unwrap()
}

/// `<x, y | [x, y] = y>` with `x^[p] = x`, `y^[p] = 0`.
pub fn xy_algebra(field: &Field) -> Arc<LieAlgebra> {
    Arc::new(
        LieAlgebra::builder(field, &["x", "y"])
            .bracket_ints(0, 1, &[0, 1])
            .pmap_ints(0, &[1, 0])
            .zero_pmap()
            .build()
            .unwrap(),
    )
}

pub fn span_of(l: &LieAlgebra, name: &str) -> Subalgebra {
    let i = l.label_index(name).unwrap();
    l.p_closure(&[l.basis_vector(i)]).unwrap()
}

/// Column vector with the given `(index, coefficient)` entries.
pub fn vector(field: &Field, dim: usize, entries: &[(usize, Fe)]) -> Vec<Fe> {
    let mut v = vec![field.zero(); dim];
    for (i, c) in entries {
        v[*i] = &v[*i] + c;
    }
    v
}

/// Matrix whose `c`-th column is `columns[c]`.
pub fn from_images(field: &Field, dim: usize, columns: &[Vec<(usize, Fe)>]) -> Matrix {
    let cols: Vec<Vec<Fe>> = columns.iter().map(|c| vector(field, dim, c)).collect();
    Matrix::from_columns(field, dim, &cols)
}

/// Index of `y^r (x) b^j` (`j` = 1, 2) in a basis ordered by `r`, then `j`.
pub fn m(j: usize, r: usize) -> usize {
    2 * r + j - 1
}

/// The `S = <x>`-module `W = <b^1, b^2>` with `x b^1 = b^2`, `x b^2 = -b^1`.
pub fn rotation_module(s: &Subalgebra, field: &Field) -> Representation {
    let x = Matrix::from_int_rows(field, &[vec![0, -1], vec![1, 0]]);
    Representation::new(Arc::new(s.algebra.clone()), vec![x])
        .unwrap()
        .with_labels(vec!["b1".into(), "b2".into()])
        .unwrap()
}

/// The six-dimensional module `V` on `v_j^r = y^r (x) b^j`, `r < 3`, read off
/// the displayed action table.
pub fn six_dim_module(l: &Arc<LieAlgebra>, alpha: i64, beta: i64) -> Representation {
    let f = l.field().clone();
    let c = |n: i64| f.from_int(n);
    let x = from_images(
        &f,
        6,
        &[
            vec![(m(2, 0), c(1))],
            vec![(m(1, 0), c(-1))],
            vec![(m(1, 1), c(1)), (m(2, 1), c(1))],
            vec![(m(2, 1), c(1)), (m(1, 1), c(-1))],
            vec![(m(1, 2), c(-1)), (m(2, 2), c(1))],
            vec![(m(2, 2), c(-1)), (m(1, 2), c(-1))],
        ],
    );
    let y = from_images(
        &f,
        6,
        &[
            vec![(m(1, 1), c(1))],
            vec![(m(2, 1), c(1))],
            vec![(m(1, 2), c(1))],
            vec![(m(2, 2), c(1))],
            vec![(m(1, 0), c(alpha)), (m(2, 0), c(beta))],
            vec![(m(1, 0), c(-beta)), (m(2, 0), c(alpha))],
        ],
    );
    Representation::new(l.clone(), vec![x, y]).unwrap()
}

/// `M = ind(W, f)` with `S = <x>`, `f_y = t^2 + a t + a^2 + b^2`, `f_x = t^2 + 1`.
pub fn twelve_dim_module(field: &Field, alpha: i64, beta: i64) -> InducedModule {
    let l = xy_algebra(field);
    let s = span_of(&l, "x");
    let w = rotation_module(&s, field);
    let fy = Poly::from_ints(field, &[alpha * alpha + beta * beta, alpha, 1]);
    let fx = Poly::from_ints(field, &[1, 0, 1]);
    induce(l, &s, &w, &[fy], &[fx]).unwrap()
}

pub const PARAMETERS: [(i64, i64); 3] = [(1, 1), (1, 0), (2, 1)];
