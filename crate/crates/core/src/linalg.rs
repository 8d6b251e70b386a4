//! Dense exact matrices over a [`Field`], acting on column vectors.
//!
//! Elimination over prime fields and tabulated finite fields runs on element
//! indices; other fields use generic element arithmetic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::fields::{FastOps, Fe, Field, Poly, Repr};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(
        field: &Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Fe,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(embed(field, f(i, j)));
            }
        }
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(field: &Field, rows: Vec<Vec<Fe>>, cols: usize) -> Result<Matrix> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {} columns",
                    r.len(),
                    cols
                )));
            }
            for x in r {
                data.push(field.embed(&x)?);
            }
        }
        Ok(Matrix {
            field: field.clone(),
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_int_rows(field: &Field, rows: &[Vec<i64>]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(field, rows.len(), cols, |i, j| field.from_int(rows[i][j]))
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &Field, rows: usize, columns: &[Vec<Fe>]) -> Matrix {
        Matrix::from_fn(field, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Fe {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Fe) {
        self.data[i * self.cols + j] = embed(&self.field, x);
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<Fe>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn scale(&self, c: &Fe) -> Matrix {
        let field = wider(&self.field, c.field());
        Matrix {
            data: self.data.iter().map(|x| x * c).collect(),
            field,
            ..*self
        }
    }

    pub fn to_field(&self, field: &Field) -> Result<Matrix> {
        if &self.field == field {
            return Ok(self.clone());
        }
        let data = self
            .data
            .iter()
            .map(|x| field.embed(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            field: field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let field = wider(&self.field, &other.field);
        let (a, b) = (self.to_field(&field)?, other.to_field(&field)?);
        if let (Some(ops), Some(x), Some(y)) = (field.fast_ops(), a.indices(), b.indices()) {
            let mut out = vec![0u64; a.rows * b.cols];
            for i in 0..a.rows {
                for k in 0..a.cols {
                    let aik = x[i * a.cols + k];
                    if aik == 0 {
                        continue;
                    }
                    for j in 0..b.cols {
                        let bkj = y[k * b.cols + j];
                        if bkj != 0 {
                            let o = &mut out[i * b.cols + j];
                            *o = ops.add(*o, ops.mul(aik, bkj));
                        }
                    }
                }
            }
            return Ok(Matrix::from_indices(&field, a.rows, b.cols, &out));
        }
        let mut out = Matrix::zeros(&field, a.rows, b.cols);
        for i in 0..a.rows {
            for k in 0..a.cols {
                let aik = a.get(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..b.cols {
                    let bkj = b.get(k, j);
                    if !bkj.is_zero() {
                        let idx = i * b.cols + j;
                        out.data[idx] = &out.data[idx] + &(aik * bkj);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut result = Matrix::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }

    pub fn trace(&self) -> Fe {
        let mut acc = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let field = wider(&self.field, &other.field);
        Matrix::from_fn(
            &field,
            self.rows * other.rows,
            self.cols * other.cols,
            |i, j| {
                let (i1, i2) = (i / other.rows, i % other.rows);
                let (j1, j2) = (j / other.cols, j % other.cols);
                self.get(i1, j1) * other.get(i2, j2)
            },
        )
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row counts");
        let field = wider(&self.field, &other.field);
        Matrix::from_fn(&field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column counts");
        let field = wider(&self.field, &other.field);
        Matrix::from_fn(&field, self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                other.get(i - self.rows, j).clone()
            }
        })
    }

    /// Submatrix with the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(&self.field, rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    fn indices(&self) -> Option<Vec<u64>> {
        self.data.iter().map(|x| x.index()).collect()
    }

    fn from_indices(field: &Field, rows: usize, cols: usize, idx: &[u64]) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: idx
                .iter()
                .map(|&x| Fe::raw(field.clone(), Repr::Int(x)))
                .collect(),
        }
    }

    pub fn rref(&self) -> Echelon {
        if let (Some(ops), Some(mut x)) = (self.field.fast_ops(), self.indices()) {
            let pivots = rref_fast(&ops, &mut x, self.rows, self.cols);
            return Echelon {
                matrix: Matrix::from_indices(&self.field, self.rows, self.cols, &x),
                pivots,
            };
        }
        let mut m = self.clone();
        let pivots = rref_generic(&mut m.data, self.rows, self.cols);
        Echelon { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{v : self * v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Fe>> {
        let ech = self.rref();
        nullspace_from_rref(&ech, self.cols)
    }

    /// Basis of `{w : w^T * self = 0}`.
    pub fn left_nullspace(&self) -> Vec<Vec<Fe>> {
        self.transpose().nullspace()
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve(&self, b: &[Fe]) -> Option<Vec<Fe>> {
        let rhs = Matrix::from_columns(&self.field, self.rows, &[b.to_vec()]);
        self.solve_matrix(&rhs).map(|x| x.col(0))
    }

    /// Some `X` with `self * X = B`, if one exists.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows, "right-hand side rows");
        let aug = self.hstack(b);
        let ech = aug.rref();
        let n = self.cols;
        if ech.pivots.iter().any(|&c| c >= n) {
            return None;
        }
        let field = ech.matrix.field.clone();
        let mut x = Matrix::zeros(&field, n, b.cols);
        for (r, &c) in ech.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.data[c * b.cols + j] = ech.matrix.get(r, n + j).clone();
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "inverse of a non-square matrix".into(),
            ));
        }
        let id = Matrix::identity(&self.field, self.rows);
        let ech = self.hstack(&id).rref();
        if ech.pivots.len() < self.rows || ech.pivots[self.rows - 1] != self.rows - 1 {
            return Err(Error::DivisionByZero);
        }
        let cols: Vec<usize> = (self.rows..2 * self.rows).collect();
        let rows: Vec<usize> = (0..self.rows).collect();
        Ok(ech.matrix.select(&rows, &cols))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// `p(self)`.
    pub fn eval_poly(&self, p: &Poly) -> Matrix {
        assert!(self.is_square(), "polynomial in a non-square matrix");
        let field = wider(&self.field, p.field());
        let a = self.to_field(&field).expect("embedding");
        let mut acc = Matrix::zeros(&field, self.rows, self.cols);
        for c in p.coeffs().iter().rev() {
            acc = &acc * &a;
            for i in 0..self.rows {
                let idx = i * self.cols + i;
                acc.data[idx] = &acc.data[idx] + c;
            }
        }
        acc
    }

    /// Monic polynomial `m` of least degree with `m(self) v = 0`.
    pub fn vector_minimal_polynomial(&self, v: &[Fe]) -> Poly {
        let mut basis = IncrementalBasis::new(&self.field);
        let mut w = v.to_vec();
        loop {
            match basis.insert(&w) {
                Some(dependency) => {
                    let k = dependency.len();
                    let mut coeffs: Vec<Fe> = dependency.into_iter().map(|c| -c).collect();
                    coeffs.push(self.field.one());
                    debug_assert_eq!(coeffs.len(), k + 1);
                    return Poly::from_coeffs(&self.field, coeffs);
                }
                None => w = self.mul_vec(&w),
            }
        }
    }

    /// Minimal polynomial, as the least common multiple of the minimal
    /// polynomials of the standard basis vectors.
    pub fn minimal_polynomial(&self) -> Poly {
        assert!(
            self.is_square(),
            "minimal polynomial of a non-square matrix"
        );
        let n = self.rows;
        let mut m = Poly::one(&self.field);
        for j in 0..n {
            let mut e = vec![self.field.zero(); n];
            e[j] = self.field.one();
            let applied = self.eval_poly(&m).col(j);
            if applied.iter().all(|x| x.is_zero()) {
                continue;
            }
            m = m.lcm(&self.vector_minimal_polynomial(&e));
        }
        m
    }
}

fn embed(field: &Field, x: Fe) -> Fe {
    if x.field() == field {
        x
    } else {
        field
            .embed(&x)
            .unwrap_or_else(|e| panic!("matrix entry: {}", e))
    }
}

fn wider(a: &Field, b: &Field) -> Field {
    if a.contains_field(b) {
        a.clone()
    } else if b.contains_field(a) {
        b.clone()
    } else {
        panic!("incompatible fields {} and {}", a, b)
    }
}

fn rref_fast(ops: &FastOps, x: &mut [u64], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| x[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                x.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = ops.inv(x[r * cols + c]);
        for j in c..cols {
            x[r * cols + j] = ops.mul(x[r * cols + j], inv);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = x[i * cols + c];
            if f == 0 {
                continue;
            }
            let nf = ops.neg(f);
            for j in c..cols {
                let v = x[r * cols + j];
                if v != 0 {
                    x[i * cols + j] = ops.add(x[i * cols + j], ops.mul(nf, v));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn rref_generic(x: &mut [Fe], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !x[i * cols + c].is_zero()) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                x.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = x[r * cols + c].inv().expect("nonzero pivot");
        for j in c..cols {
            x[r * cols + j] = &x[r * cols + j] * &inv;
        }
        for i in 0..rows {
            if i == r || x[i * cols + c].is_zero() {
                continue;
            }
            let f = x[i * cols + c].clone();
            for j in c..cols {
                if !x[r * cols + j].is_zero() {
                    let t = &f * &x[r * cols + j];
                    x[i * cols + j] = &x[i * cols + j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn nullspace_from_rref(ech: &Echelon, cols: usize) -> Vec<Vec<Fe>> {
    let field = &ech.matrix.field;
    let mut is_pivot = vec![false; cols];
    for &c in &ech.pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for f in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); cols];
        v[f] = field.one();
        for (r, &c) in ech.pivots.iter().enumerate() {
            v[c] = -ech.matrix.get(r, f);
        }
        out.push(v);
    }
    out
}

/// Incrementally built linearly independent list that reports the first
/// dependency as coefficients on the inserted vectors.
struct IncrementalBasis {
    field: Field,
    /// `(reduced vector, pivot, combination of inserted vectors)`.
    rows: Vec<(Vec<Fe>, usize, Vec<Fe>)>,
}

impl IncrementalBasis {
    fn new(field: &Field) -> Self {
        IncrementalBasis {
            field: field.clone(),
            rows: Vec::new(),
        }
    }

    /// Inserts `v`; returns `c` with `v = sum c_i v_i` if `v` is dependent.
    fn insert(&mut self, v: &[Fe]) -> Option<Vec<Fe>> {
        let k = self.rows.len();
        let mut w = v.to_vec();
        let mut combo = vec![self.field.zero(); k + 1];
        combo[k] = self.field.one();
        for (row, pivot, rc) in &self.rows {
            let f = w[*pivot].clone();
            if f.is_zero() {
                continue;
            }
            for (a, b) in w.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a = &*a - &(&f * b);
                }
            }
            for (a, b) in combo.iter_mut().zip(rc) {
                if !b.is_zero() {
                    *a = &*a - &(&f * b);
                }
            }
        }
        match w.iter().position(|x| !x.is_zero()) {
            None => {
                // combo . (v_0..v_{k-1}, v) = 0 with combo[k] = 1.
                combo.truncate(k);
                Some(combo.into_iter().map(|c| -c).collect())
            }
            Some(p) => {
                let inv = w[p].inv().unwrap();
                let w: Vec<Fe> = w.iter().map(|x| x * &inv).collect();
                let combo: Vec<Fe> = combo.iter().map(|x| x * &inv).collect();
                self.rows.push((w, p, combo));
                None
            }
        }
    }
}

/// A subspace of `F^n`, stored by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<Fe>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            field: field.clone(),
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        let id = Matrix::identity(field, ambient);
        Subspace::span(field, ambient, &id.row_vecs())
    }

    pub fn span(field: &Field, ambient: usize, vectors: &[Vec<Fe>]) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(field, ambient);
        }
        let m = Matrix::from_rows(field, vectors.to_vec(), ambient).expect("vector length");
        let ech = m.rref();
        let k = ech.pivots.len();
        Subspace {
            field: field.clone(),
            ambient,
            basis: (0..k).map(|i| ech.matrix.row(i).to_vec()).collect(),
            pivots: ech.pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Echelon basis vectors.
    pub fn basis(&self) -> &[Vec<Fe>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis as the columns of an `ambient x dim` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(&self.field, self.ambient, &self.basis)
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Fe]) -> Option<Vec<Fe>> {
        let coords: Vec<Fe> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut w: Vec<Fe> = v.to_vec();
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (a, x) in w.iter_mut().zip(b) {
                if !x.is_zero() {
                    *a = &*a - &(c * x);
                }
            }
        }
        w.iter().all(|x| x.is_zero()).then_some(coords)
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(&self.field, self.ambient, &vs)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(&self.field, self.ambient);
        }
        let k1 = self.dim();
        let mut columns = self.basis.clone();
        columns.extend(other.basis.iter().map(|v| v.iter().map(|x| -x).collect()));
        let m = Matrix::from_columns(&self.field, self.ambient, &columns);
        let vectors: Vec<Vec<Fe>> = m
            .nullspace()
            .into_iter()
            .map(|c| {
                let mut v = vec![self.field.zero(); self.ambient];
                for (ci, b) in c[..k1].iter().zip(&self.basis) {
                    for (a, x) in v.iter_mut().zip(b) {
                        *a = &*a + &(ci * x);
                    }
                }
                v
            })
            .collect();
        Subspace::span(&self.field, self.ambient, &vectors)
    }

    /// Indices of standard basis vectors spanning a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|i| !self.pivots.contains(i))
            .collect()
    }

    /// Whether the subspace is stable under the given matrices.
    pub fn is_invariant(&self, mats: &[Matrix]) -> bool {
        mats.iter()
            .all(|m| self.basis.iter().all(|v| self.contains(&m.mul_vec(v))))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(|s| s.chars().count()).max().unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>w$}", cells[i * self.cols + j], w = width)?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs)
            .unwrap_or_else(|e| panic!("matrix product: {}", e))
    }
}

impl Mul<Matrix> for Matrix {
    type Output = Matrix;
    fn mul(self, rhs: Matrix) -> Matrix {
        &self * &rhs
    }
}

fn entrywise(a: &Matrix, b: &Matrix, f: impl Fn(&Fe, &Fe) -> Fe) -> Matrix {
    assert!(
        a.rows == b.rows && a.cols == b.cols,
        "shapes {}x{} and {}x{}",
        a.rows,
        a.cols,
        b.rows,
        b.cols
    );
    let field = wider(&a.field, &b.field);
    Matrix {
        data: a.data.iter().zip(&b.data).map(|(x, y)| f(x, y)).collect(),
        field,
        rows: a.rows,
        cols: a.cols,
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        entrywise(self, rhs, |x, y| x + y)
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        entrywise(self, rhs, |x, y| x - y)
    }
}

impl Add<Matrix> for Matrix {
    type Output = Matrix;
    fn add(self, rhs: Matrix) -> Matrix {
        &self + &rhs
    }
}

impl Sub<Matrix> for Matrix {
    type Output = Matrix;
    fn sub(self, rhs: Matrix) -> Matrix {
        &self - &rhs
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}
