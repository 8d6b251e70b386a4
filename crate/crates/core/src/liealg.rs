//! Finite-dimensional Lie algebras given by structure constants, optional
//! `p`-maps on a basis, Jacobson's formula and `p`-closures.

use std::fmt;

use crate::fields::{Fe, Field};
use crate::linalg::{Matrix, Subspace};
use crate::{Error, Result};

/// A Lie algebra with basis `e_0, ..., e_{n-1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    field: Field,
    labels: Vec<String>,
    /// `brackets[i][j]` holds the coordinates of `[e_i, e_j]`.
    brackets: Vec<Vec<Vec<Fe>>>,
    /// Coordinates of `e_i^[p]`.
    pmap: Option<Vec<Vec<Fe>>>,
}

/// Problems found by [`LieAlgebra::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomFailure {
    NotAlternating { i: usize, j: usize },
    Jacobi { i: usize, j: usize, k: usize },
    PMap { i: usize },
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomFailure::NotAlternating { i, j } => {
                write!(
                    f,
                    "bracket of basis elements {} and {} is not alternating",
                    i, j
                )
            }
            AxiomFailure::Jacobi { i, j, k } => {
                write!(
                    f,
                    "Jacobi identity fails on basis elements {}, {}, {}",
                    i, j, k
                )
            }
            AxiomFailure::PMap { i } => {
                write!(f, "ad(e_{}^[p]) differs from ad(e_{})^p", i, i)
            }
        }
    }
}

pub struct LieAlgebraBuilder {
    field: Field,
    labels: Vec<String>,
    brackets: Vec<Vec<Vec<Fe>>>,
    pmap: Option<Vec<Vec<Fe>>>,
}

impl LieAlgebraBuilder {
    /// Sets `[e_i, e_j] = v` and `[e_j, e_i] = -v`.
    pub fn bracket(mut self, i: usize, j: usize, v: Vec<Fe>) -> Self {
        let v: Vec<Fe> = v
            .iter()
            .map(|x| self.field.embed(x).expect("scalar"))
            .collect();
        self.brackets[j][i] = v.iter().map(|x| -x).collect();
        self.brackets[i][j] = v;
        self
    }

    /// Sets `[e_i, e_j]` from integer coordinates.
    pub fn bracket_ints(self, i: usize, j: usize, v: &[i64]) -> Self {
        let v = v.iter().map(|&c| self.field.from_int(c)).collect();
        self.bracket(i, j, v)
    }

    pub fn pmap(mut self, i: usize, v: Vec<Fe>) -> Self {
        let n = self.labels.len();
        let zero = self.field.zero();
        let v: Vec<Fe> = v
            .iter()
            .map(|x| self.field.embed(x).expect("scalar"))
            .collect();
        self.pmap.get_or_insert_with(|| vec![vec![zero; n]; n])[i] = v;
        self
    }

    pub fn pmap_ints(self, i: usize, v: &[i64]) -> Self {
        let v = v.iter().map(|&c| self.field.from_int(c)).collect();
        self.pmap(i, v)
    }

    /// Declares a `p`-map that is zero on every basis element not set.
    pub fn zero_pmap(mut self) -> Self {
        let n = self.labels.len();
        let zero = self.field.zero();
        self.pmap.get_or_insert_with(|| vec![vec![zero; n]; n]);
        self
    }

    pub fn build(self) -> Result<LieAlgebra> {
        LieAlgebra::new(&self.field, self.labels, self.brackets, self.pmap)
    }
}

impl LieAlgebra {
    pub fn builder(field: &Field, labels: &[&str]) -> LieAlgebraBuilder {
        let n = labels.len();
        LieAlgebraBuilder {
            field: field.clone(),
            labels: labels.iter().map(|s| s.to_string()).collect(),
            brackets: vec![vec![vec![field.zero(); n]; n]; n],
            pmap: None,
        }
    }

    /// Checks shapes and that the bracket table is alternating.
    pub fn new(
        field: &Field,
        labels: Vec<String>,
        brackets: Vec<Vec<Vec<Fe>>>,
        pmap: Option<Vec<Vec<Fe>>>,
    ) -> Result<LieAlgebra> {
        let n = labels.len();
        let shape_ok = brackets.len() == n
            && brackets
                .iter()
                .all(|r| r.len() == n && r.iter().all(|v| v.len() == n))
            && pmap
                .as_ref()
                .is_none_or(|m| m.len() == n && m.iter().all(|v| v.len() == n));
        if !shape_ok {
            return Err(Error::DimensionMismatch(format!(
                "structure constants for a {}-dimensional algebra",
                n
            )));
        }
        let embed_all = |v: &Vec<Fe>| v.iter().map(|x| field.embed(x)).collect::<Result<Vec<_>>>();
        let brackets = brackets
            .iter()
            .map(|r| r.iter().map(embed_all).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let pmap = match pmap {
            Some(m) => Some(m.iter().map(embed_all).collect::<Result<Vec<_>>>()?),
            None => None,
        };
        let alg = LieAlgebra {
            field: field.clone(),
            labels,
            brackets,
            pmap,
        };
        if let Some(AxiomFailure::NotAlternating { i, j }) =
            alg.alternating_failures().into_iter().next()
        {
            return Err(Error::InvariantViolation(format!(
                "[{}, {}] is not alternating",
                alg.labels[i], alg.labels[j]
            )));
        }
        Ok(alg)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    pub fn has_pmap(&self) -> bool {
        self.pmap.is_some()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Fe> {
        unit_vector(&self.field, self.dim(), i)
    }

    pub fn zero_vector(&self) -> Vec<Fe> {
        vec![self.field.zero(); self.dim()]
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Fe] {
        &self.brackets[i][j]
    }

    /// Coordinates of `e_i^[p]`.
    pub fn pmap_basis(&self, i: usize) -> Result<&[Fe]> {
        self.pmap
            .as_ref()
            .map(|m| m[i].as_slice())
            .ok_or(Error::NoPMap)
    }

    pub fn bracket(&self, u: &[Fe], v: &[Fe]) -> Vec<Fe> {
        let field = vector_field(&self.field, u).or_else(|| vector_field(&self.field, v));
        let field = field.unwrap_or_else(|| self.field.clone());
        let mut out = vec![field.zero(); self.dim()];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let c = a * b;
                for (o, s) in out.iter_mut().zip(&self.brackets[i][j]) {
                    if !s.is_zero() {
                        *o = &*o + &(&c * s);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad(e_i)`; column `j` holds `[e_i, e_j]`.
    pub fn ad_basis(&self, i: usize) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(&self.field, n, n, |r, c| self.brackets[i][c][r].clone())
    }

    /// Matrix of `ad(u)`; column `j` holds `[u, e_j]`.
    pub fn ad(&self, u: &[Fe]) -> Matrix {
        let n = self.dim();
        let field = vector_field(&self.field, u).unwrap_or_else(|| self.field.clone());
        let mut m = Matrix::zeros(&field, n, n);
        for j in 0..n {
            let col = self.bracket(u, &self.basis_vector(j));
            for (r, x) in col.into_iter().enumerate() {
                m.set(r, j, x);
            }
        }
        m
    }

    /// `u^[p]` computed with Jacobson's formula from the values on the basis.
    pub fn p_power(&self, u: &[Fe]) -> Result<Vec<Fe>> {
        let pmap = self.pmap.as_ref().ok_or(Error::NoPMap)?;
        let field = vector_field(&self.field, u).unwrap_or_else(|| self.field.clone());
        let p = self.field.characteristic();
        let mut acc = vec![field.zero(); self.dim()];
        let mut acc_p = vec![field.zero(); self.dim()];
        for (i, c) in u.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cp = c.pow(p);
            let term: Vec<Fe> = (0..self.dim())
                .map(|k| if k == i { c.clone() } else { field.zero() })
                .collect();
            let term_p: Vec<Fe> = pmap[i].iter().map(|x| &cp * x).collect();
            let s = self.jacobson_correction(&acc, &term, &field);
            acc_p = add_vec(&add_vec(&acc_p, &term_p), &s);
            acc = add_vec(&acc, &term);
        }
        Ok(acc_p)
    }

    /// `sum_i s_i(x, y)` where `i s_i(x, y)` is the coefficient of `t^(i-1)`
    /// in `ad(tx + y)^(p-1)(x)`.
    fn jacobson_correction(&self, x: &[Fe], y: &[Fe], field: &Field) -> Vec<Fe> {
        let p = self.field.characteristic() as usize;
        let n = self.dim();
        if x.iter().all(|c| c.is_zero()) {
            return vec![field.zero(); n];
        }
        // Polynomial in t with vector coefficients.
        let mut poly: Vec<Vec<Fe>> = vec![x.to_vec()];
        for _ in 0..p - 1 {
            let mut next = vec![vec![field.zero(); n]; poly.len() + 1];
            for (d, v) in poly.iter().enumerate() {
                next[d + 1] = add_vec(&next[d + 1], &self.bracket(x, v));
                next[d] = add_vec(&next[d], &self.bracket(y, v));
            }
            poly = next;
        }
        let mut out = vec![field.zero(); n];
        for i in 1..p {
            let Some(coeff) = poly.get(i - 1) else {
                continue;
            };
            let inv = field.from_int(i as i64).inv().expect("i < p");
            out = add_vec(&out, &scale_vec(coeff, &inv));
        }
        out
    }

    fn alternating_failures(&self) -> Vec<AxiomFailure> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                let ok = if i == j {
                    self.brackets[i][i].iter().all(|x| x.is_zero())
                } else {
                    self.brackets[i][j]
                        .iter()
                        .zip(&self.brackets[j][i])
                        .all(|(a, b)| (a + b).is_zero())
                };
                if !ok {
                    out.push(AxiomFailure::NotAlternating { i, j });
                }
            }
        }
        out
    }

    /// Checks the alternating property, the Jacobi identity on basis triples
    /// and, when a `p`-map is present, `ad(e_i^[p]) = ad(e_i)^p`.
    pub fn validate(&self) -> Vec<AxiomFailure> {
        let n = self.dim();
        let mut out = self.alternating_failures();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (
                        self.basis_vector(i),
                        self.basis_vector(j),
                        self.basis_vector(k),
                    );
                    let a = self.bracket(&ei, &self.bracket(&ej, &ek));
                    let b = self.bracket(&ej, &self.bracket(&ek, &ei));
                    let c = self.bracket(&ek, &self.bracket(&ei, &ej));
                    if !add_vec(&add_vec(&a, &b), &c).iter().all(|x| x.is_zero()) {
                        out.push(AxiomFailure::Jacobi { i, j, k });
                    }
                }
            }
        }
        if let Some(pm) = &self.pmap {
            let p = self.field.characteristic();
            for (i, v) in pm.iter().enumerate() {
                if self.ad(v) != self.ad_basis(i).pow(p) {
                    out.push(AxiomFailure::PMap { i });
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Same algebra with a `p`-map given on the basis.
    pub fn with_pmap(&self, pmap: Vec<Vec<Fe>>) -> Result<LieAlgebra> {
        LieAlgebra::new(
            &self.field,
            self.labels.clone(),
            self.brackets.clone(),
            Some(pmap),
        )
    }

    pub fn without_pmap(&self) -> LieAlgebra {
        LieAlgebra {
            pmap: None,
            ..self.clone()
        }
    }

    /// Extension of scalars.
    pub fn to_field(&self, field: &Field) -> Result<LieAlgebra> {
        LieAlgebra::new(
            field,
            self.labels.clone(),
            self.brackets.clone(),
            self.pmap.clone(),
        )
    }

    /// The same algebra in a new basis; column `j` of `change` holds the old
    /// coordinates of the new basis vector `j`.
    pub fn change_basis(&self, change: &Matrix, labels: Vec<String>) -> Result<LieAlgebra> {
        let n = self.dim();
        if change.rows() != n || change.cols() != n || labels.len() != n {
            return Err(Error::DimensionMismatch("change of basis".into()));
        }
        let inv = change.inverse()?;
        let new_basis = change.col_vecs();
        let mut brackets = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                brackets[i][j] = inv.mul_vec(&self.bracket(&new_basis[i], &new_basis[j]));
            }
        }
        let pmap = match &self.pmap {
            Some(_) => Some(
                new_basis
                    .iter()
                    .map(|b| Ok(inv.mul_vec(&self.p_power(b)?)))
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        LieAlgebra::new(&self.field, labels, brackets, pmap)
    }

    /// The center, as a subspace of coordinate vectors.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        let mut stacked = Matrix::zeros(&self.field, 0, n);
        for j in 0..n {
            let m = Matrix::from_fn(&self.field, n, n, |r, i| self.brackets[i][j][r].clone());
            stacked = stacked.vstack(&m);
        }
        Subspace::span(&self.field, n, &stacked.nullspace())
    }

    /// Whether the span of `basis` is closed under the bracket.
    pub fn is_subalgebra(&self, basis: &[Vec<Fe>]) -> bool {
        let span = Subspace::span(&self.field, self.dim(), basis);
        basis
            .iter()
            .all(|u| basis.iter().all(|v| span.contains(&self.bracket(u, v))))
    }

    /// The subalgebra with the given basis (which must be linearly independent
    /// and closed under the bracket). The induced `p`-map is recorded when
    /// the span is `p`-closed.
    pub fn subalgebra(&self, basis: Vec<Vec<Fe>>, labels: Vec<String>) -> Result<Subalgebra> {
        let n = self.dim();
        let k = basis.len();
        let span = Subspace::span(&self.field, n, &basis);
        if span.dim() != k || labels.len() != k {
            return Err(Error::NotSubalgebra(
                "basis vectors are linearly dependent".into(),
            ));
        }
        let basis_matrix = Matrix::from_columns(&self.field, n, &basis);
        let coords = |v: &[Fe]| -> Option<Vec<Fe>> { basis_matrix.solve(v) };
        let mut brackets = vec![vec![Vec::new(); k]; k];
        for i in 0..k {
            for j in 0..k {
                let b = self.bracket(&basis[i], &basis[j]);
                brackets[i][j] = coords(&b).ok_or_else(|| {
                    Error::NotSubalgebra(format!("[{}, {}] leaves the span", labels[i], labels[j]))
                })?;
            }
        }
        let mut pmap = None;
        if self.has_pmap() {
            let mut values = Vec::with_capacity(k);
            for b in &basis {
                match coords(&self.p_power(b)?) {
                    Some(c) => values.push(c),
                    None => break,
                }
            }
            if values.len() == k {
                pmap = Some(values);
            }
        }
        let algebra = LieAlgebra::new(&self.field, labels, brackets, pmap)?;
        Ok(Subalgebra {
            basis,
            recipes: (0..k).map(Recipe::Given).collect(),
            algebra,
        })
    }

    /// The smallest `p`-closed subalgebra containing the given vectors. The
    /// given vectors (after dropping dependent ones) come first in the basis.
    pub fn p_closure(&self, gens: &[Vec<Fe>]) -> Result<Subalgebra> {
        if !self.has_pmap() {
            return Err(Error::NoPMap);
        }
        let n = self.dim();
        let mut span = Subspace::zero(&self.field, n);
        let mut basis: Vec<Vec<Fe>> = Vec::new();
        let mut recipes = Vec::new();
        let mut push = |v: Vec<Fe>, r: Recipe, basis: &mut Vec<Vec<Fe>>, span: &mut Subspace| {
            if !span.contains(&v) {
                *span = span.sum(&Subspace::span(&self.field, n, std::slice::from_ref(&v)));
                basis.push(v);
                recipes.push(r);
            }
        };
        for (i, g) in gens.iter().enumerate() {
            push(g.clone(), Recipe::Given(i), &mut basis, &mut span);
        }
        let mut done = 0;
        while done < basis.len() {
            let u = basis[done].clone();
            push(
                self.p_power(&u)?,
                Recipe::PPower(done),
                &mut basis,
                &mut span,
            );
            for j in 0..done {
                let b = self.bracket(&basis[j], &u);
                push(b, Recipe::Bracket(j, done), &mut basis, &mut span);
            }
            done += 1;
        }
        let labels = recipe_labels(&recipes, self.field.characteristic(), |i| {
            format_vector(&gens[i], &self.labels)
        });
        let mut sub = self.subalgebra(basis, labels)?;
        sub.recipes = recipes;
        Ok(sub)
    }
}

/// How a basis element of a closure arises from earlier ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recipe {
    /// The `i`-th generator.
    Given(usize),
    /// `b_j^[p]`.
    PPower(usize),
    /// `[b_j, b_k]`.
    Bracket(usize, usize),
}

/// Human-readable labels following recipes, e.g. `x^[3]` or `[x, y]`.
pub fn recipe_labels(recipes: &[Recipe], p: u64, given: impl Fn(usize) -> String) -> Vec<String> {
    let mut labels: Vec<String> = Vec::with_capacity(recipes.len());
    for r in recipes {
        let l = match *r {
            Recipe::Given(i) => given(i),
            Recipe::PPower(j) => {
                let prev = &labels[j];
                let nested = prev.rsplit_once("^[").and_then(|(base, exp)| {
                    let e: u64 = exp.strip_suffix(']')?.parse().ok()?;
                    Some(format!("{}^[{}]", base, e * p))
                });
                nested.unwrap_or_else(|| {
                    if prev.contains(' ') {
                        format!("({})^[{}]", prev, p)
                    } else {
                        format!("{}^[{}]", prev, p)
                    }
                })
            }
            Recipe::Bracket(j, k) => format!("[{}, {}]", labels[j], labels[k]),
        };
        labels.push(l);
    }
    labels
}

/// A subalgebra of a [`LieAlgebra`], with coordinates of its basis in the
/// parent, how each basis element arose, and the induced algebra structure.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    pub basis: Vec<Vec<Fe>>,
    pub recipes: Vec<Recipe>,
    pub algebra: LieAlgebra,
}

impl Subalgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_p_closed(&self) -> bool {
        self.algebra.has_pmap()
    }
}

/// Closes a set of square matrices under commutators and `p`-th powers.
/// Returns a basis (the independent inputs first) and recipes.
pub fn matrix_p_closure(mats: &[Matrix]) -> Result<(Vec<Matrix>, Vec<Recipe>)> {
    let Some(first) = mats.first() else {
        return Ok((Vec::new(), Vec::new()));
    };
    let field = first.field().clone();
    let n = first.rows();
    let p = field.characteristic();
    let flat = |m: &Matrix| -> Vec<Fe> { (0..n).flat_map(|i| m.row(i).to_vec()).collect() };
    let mut span = Subspace::zero(&field, n * n);
    let mut basis: Vec<Matrix> = Vec::new();
    let mut recipes = Vec::new();
    let mut push = |m: Matrix, r: Recipe, basis: &mut Vec<Matrix>, span: &mut Subspace| {
        let v = flat(&m);
        if !span.contains(&v) {
            *span = span.sum(&Subspace::span(&field, n * n, &[v]));
            basis.push(m);
            recipes.push(r);
        }
    };
    for (i, m) in mats.iter().enumerate() {
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch(
                "matrices of different sizes".into(),
            ));
        }
        push(m.clone(), Recipe::Given(i), &mut basis, &mut span);
    }
    let mut done = 0;
    while done < basis.len() {
        let u = basis[done].clone();
        push(u.pow(p), Recipe::PPower(done), &mut basis, &mut span);
        for j in 0..done {
            let c = basis[j].commutator(&u);
            push(c, Recipe::Bracket(j, done), &mut basis, &mut span);
        }
        done += 1;
    }
    Ok((basis, recipes))
}

/// Coordinates of `m` in the span of `basis`, if it lies there.
pub fn matrix_coordinates(basis: &[Matrix], m: &Matrix) -> Option<Vec<Fe>> {
    let field = m.field();
    let n = m.rows() * m.cols();
    let columns: Vec<Vec<Fe>> = basis
        .iter()
        .map(|b| (0..b.rows()).flat_map(|i| b.row(i).to_vec()).collect())
        .collect();
    let a = Matrix::from_columns(field, n, &columns);
    let v: Vec<Fe> = (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect();
    a.solve(&v)
}

/// The general linear algebra `gl_n` with basis `E_ij` (row-major) and
/// `p`-map `X -> X^p`.
pub fn gl(field: &Field, n: usize) -> LieAlgebra {
    let labels: Vec<String> = (0..n)
        .flat_map(|i| (0..n).map(move |j| format!("E{}{}", i + 1, j + 1)))
        .collect();
    let dim = n * n;
    let idx = |i: usize, j: usize| i * n + j;
    let mut brackets = vec![vec![vec![field.zero(); dim]; dim]; dim];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let v = &mut brackets[idx(a, b)][idx(c, d)];
                    if b == c {
                        v[idx(a, d)] = &v[idx(a, d)] + &field.one();
                    }
                    if d == a {
                        v[idx(c, b)] = &v[idx(c, b)] - &field.one();
                    }
                }
            }
        }
    }
    let pmap = (0..dim)
        .map(|k| {
            let mut v = vec![field.zero(); dim];
            if k / n == k % n {
                v[k] = field.one();
            }
            v
        })
        .collect();
    LieAlgebra::new(field, labels, brackets, Some(pmap)).expect("gl_n is alternating")
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Lie algebra over {} with basis {}",
            self.field,
            self.labels.join(", ")
        )?;
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                if self.brackets[i][j].iter().any(|x| !x.is_zero()) {
                    writeln!(
                        f,
                        "  [{}, {}] = {}",
                        self.labels[i],
                        self.labels[j],
                        format_vector(&self.brackets[i][j], &self.labels)
                    )?;
                }
            }
        }
        if let Some(pm) = &self.pmap {
            for (label, image) in self.labels.iter().zip(pm) {
                writeln!(
                    f,
                    "  {}^[p] = {}",
                    label,
                    format_vector(image, &self.labels)
                )?;
            }
        }
        Ok(())
    }
}

/// Renders `sum c_i label_i`, e.g. `x - 2*y`.
pub fn format_vector(v: &[Fe], labels: &[String]) -> String {
    let mut out = String::new();
    for (c, l) in v.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        let s = c.to_string();
        let simple = !s[1..].contains([' ', '/']) && !s.is_empty();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) if simple => (true, rest.to_string()),
            _ => (false, s.clone()),
        };
        let term = if body == "1" {
            l.clone()
        } else if body.contains(' ') || body.contains('/') {
            format!("({})*{}", body, l)
        } else {
            format!("{}*{}", body, l)
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
            out.push_str(&term);
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

pub(crate) fn unit_vector(field: &Field, n: usize, i: usize) -> Vec<Fe> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

pub(crate) fn add_vec(a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn scale_vec(a: &[Fe], c: &Fe) -> Vec<Fe> {
    a.iter().map(|x| x * c).collect()
}

/// The field of a vector's entries when it extends `base`.
fn vector_field(base: &Field, v: &[Fe]) -> Option<Field> {
    v.iter()
        .map(|x| x.field())
        .find(|f| *f != base && f.contains_field(base))
        .cloned()
}
