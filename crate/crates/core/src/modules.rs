//! Finite-dimensional representations of a [`LieAlgebra`] given by the
//! matrices of its basis elements.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fields::{factor, Fe, Field, Poly};
use crate::liealg::{LieAlgebra, Subalgebra};
use crate::linalg::{Matrix, Subspace};
use crate::uea::{FFamily, PbwElement};
use crate::{Error, Result};

const MEATAXE_ATTEMPTS: usize = 64;
const MEATAXE_SEED: u64 = 0x6d65_6174;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    algebra: Arc<LieAlgebra>,
    field: Field,
    dim: usize,
    action: Vec<Matrix>,
    labels: Vec<String>,
}

/// Outcome of [`Representation::irreducibility`].
#[derive(Clone, Debug)]
pub enum Irreducibility {
    Irreducible,
    /// A proper nonzero submodule.
    Reducible(Subspace),
}

impl Representation {
    /// Builds a representation from the matrices of the basis elements. The
    /// matrices may be defined over an extension of the algebra's field.
    pub fn new(algebra: Arc<LieAlgebra>, action: Vec<Matrix>) -> Result<Representation> {
        if action.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for a {}-dimensional algebra",
                action.len(),
                algebra.dim()
            )));
        }
        let dim = action.first().map_or(0, |m| m.rows());
        let mut field = algebra.field().clone();
        for m in &action {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(
                    "action matrices must be square of equal size".into(),
                ));
            }
            if m.field().contains_field(&field) {
                field = m.field().clone();
            } else if !field.contains_field(m.field()) {
                return Err(Error::IncompatibleFields(
                    m.field().to_string(),
                    field.to_string(),
                ));
            }
        }
        let action = action
            .iter()
            .map(|m| m.to_field(&field))
            .collect::<Result<Vec<_>>>()?;
        let labels = (0..dim).map(|i| format!("v{}", i)).collect();
        Ok(Representation {
            algebra,
            field,
            dim,
            action,
            labels,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Representation> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for a {}-dimensional module",
                labels.len(),
                self.dim
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn trivial(algebra: Arc<LieAlgebra>, dim: usize) -> Representation {
        let field = algebra.field().clone();
        let action = vec![Matrix::zeros(&field, dim, dim); algebra.dim()];
        Representation::new(algebra, action).expect("trivial module")
    }

    /// One-dimensional module `e_i -> values[i]`.
    pub fn one_dimensional(algebra: Arc<LieAlgebra>, values: &[Fe]) -> Result<Representation> {
        let field = values
            .iter()
            .map(|v| v.field().clone())
            .find(|f| f.contains_field(algebra.field()) && f != algebra.field())
            .unwrap_or_else(|| algebra.field().clone());
        let action = values
            .iter()
            .map(|v| Matrix::from_fn(&field, 1, 1, |_, _| v.clone()))
            .collect();
        Representation::new(algebra, action)
    }

    pub fn adjoint(algebra: Arc<LieAlgebra>) -> Representation {
        let action = (0..algebra.dim()).map(|i| algebra.ad_basis(i)).collect();
        let labels = algebra.labels().to_vec();
        Representation::new(algebra, action)
            .expect("adjoint module")
            .with_labels(labels)
            .expect("labels")
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Matrix of the `i`-th basis element.
    pub fn matrix(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.action
    }

    /// Matrix of `sum u_i e_i`.
    pub fn act(&self, u: &[Fe]) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.dim, self.dim);
        for (c, a) in u.iter().zip(&self.action) {
            if !c.is_zero() {
                m = &m + &a.scale(c);
            }
        }
        m
    }

    /// `rho(e_i)^p - rho(e_i^[p])`.
    pub fn phi_matrix(&self, i: usize) -> Result<Matrix> {
        let p = self.field.characteristic();
        let pm = self.algebra.pmap_basis(i)?;
        Ok(&self.action[i].pow(p) - &self.act(pm))
    }

    /// Matrix of a PBW element, `e^a -> rho(e_0)^a_0 ... rho(e_{n-1})^a_{n-1}`.
    pub fn apply_pbw(&self, a: &PbwElement) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.dim, self.dim);
        for (alpha, c) in a.terms() {
            let mut m = Matrix::identity(&self.field, self.dim);
            for (i, &e) in alpha.iter().enumerate() {
                if e > 0 {
                    m = &m * &self.action[i].pow(e as u64);
                }
            }
            out = &out + &m.scale(c);
        }
        out
    }

    /// Checks `[rho(e_i), rho(e_j)] = rho([e_i, e_j])`.
    pub fn validate(&self) -> Result<()> {
        let n = self.algebra.dim();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.action[i].commutator(&self.action[j]);
                let rhs = self.act(self.algebra.bracket_basis(i, j));
                if lhs != rhs {
                    return Err(Error::InvalidRepresentation(format!(
                        "[{}, {}] is not respected",
                        self.algebra.labels()[i],
                        self.algebra.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Checks that `f_i(rho(e_i)^p - rho(e_i^[p]))` vanishes for every `i`.
    pub fn check_family(&self, family: &FFamily) -> Result<()> {
        for (i, f) in family.polys().iter().enumerate() {
            if !self.phi_matrix(i)?.eval_poly(f).is_zero() {
                return Err(Error::NotInCategory(format!(
                    "f_{} = {} does not annihilate {}^p - {}^[p]",
                    self.algebra.labels()[i],
                    f,
                    self.algebra.labels()[i],
                    self.algebra.labels()[i]
                )));
            }
        }
        Ok(())
    }

    /// Restriction to a subalgebra.
    pub fn restrict(&self, sub: &Subalgebra) -> Representation {
        let action = sub.basis.iter().map(|b| self.act(b)).collect();
        Representation {
            algebra: Arc::new(sub.algebra.clone()),
            field: self.field.clone(),
            dim: self.dim,
            action,
            labels: self.labels.clone(),
        }
    }

    /// Restriction along an explicit subalgebra `sub` whose basis vectors
    /// have parent coordinates `basis`.
    pub fn restrict_to(&self, sub: Arc<LieAlgebra>, basis: &[Vec<Fe>]) -> Representation {
        let action = basis.iter().map(|b| self.act(b)).collect();
        Representation {
            algebra: sub,
            field: self.field.clone(),
            dim: self.dim,
            action,
            labels: self.labels.clone(),
        }
    }

    pub fn extend_scalars(&self, field: &Field) -> Result<Representation> {
        let action = self
            .action
            .iter()
            .map(|m| m.to_field(field))
            .collect::<Result<Vec<_>>>()?;
        Ok(Representation {
            field: field.clone(),
            action,
            ..self.clone()
        })
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if self.algebra != other.algebra {
            return Err(Error::InvalidInput(
                "direct sum of modules over different algebras".into(),
            ));
        }
        let (a, b) = (self.dim, other.dim);
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(x, y)| {
                Matrix::from_fn(&self.field, a + b, a + b, |i, j| {
                    if i < a && j < a {
                        x.get(i, j).clone()
                    } else if i >= a && j >= a {
                        y.get(i - a, j - a).clone()
                    } else {
                        self.field.zero()
                    }
                })
            })
            .collect();
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        Representation::new(self.algebra.clone(), action)?.with_labels(labels)
    }

    /// The submodule generated by the given vectors.
    pub fn spin(&self, vectors: &[Vec<Fe>]) -> Subspace {
        spin_with(&self.field, self.dim, &self.action, vectors)
    }

    /// Submodule of the dual generated by the given vectors, acting by the
    /// transposed matrices.
    pub fn spin_transposed(&self, vectors: &[Vec<Fe>]) -> Subspace {
        let mats: Vec<Matrix> = self.action.iter().map(|m| m.transpose()).collect();
        spin_with(&self.field, self.dim, &mats, vectors)
    }

    /// The action on an invariant subspace, in its echelon basis.
    pub fn submodule(&self, sub: &Subspace) -> Result<Representation> {
        if !sub.is_invariant(&self.action) {
            return Err(Error::InvalidInput("subspace is not a submodule".into()));
        }
        let basis = sub.basis();
        let action = self
            .action
            .iter()
            .map(|m| {
                let cols: Vec<Vec<Fe>> = basis
                    .iter()
                    .map(|b| sub.coordinates(&m.mul_vec(b)).expect("invariant"))
                    .collect();
                Matrix::from_columns(&self.field, sub.dim(), &cols)
            })
            .collect();
        Representation::new(self.algebra.clone(), action)
    }

    /// The action on `V / sub` in the basis given by the standard vectors at
    /// [`Subspace::complement_indices`].
    pub fn quotient(&self, sub: &Subspace) -> Result<Representation> {
        if !sub.is_invariant(&self.action) {
            return Err(Error::InvalidInput("subspace is not a submodule".into()));
        }
        let comp = sub.complement_indices();
        let k = comp.len();
        // Express vectors modulo sub in the complement coordinates.
        let reduce = |v: Vec<Fe>| -> Vec<Fe> {
            let mut w = v;
            for (b, &p) in sub.basis().iter().zip(sub.pivots()) {
                let c = w[p].clone();
                if !c.is_zero() {
                    for (a, x) in w.iter_mut().zip(b) {
                        *a = &*a - &(&c * x);
                    }
                }
            }
            comp.iter().map(|&i| w[i].clone()).collect()
        };
        let action = self
            .action
            .iter()
            .map(|m| {
                let cols: Vec<Vec<Fe>> = comp.iter().map(|&j| reduce(m.col(j))).collect();
                Matrix::from_columns(&self.field, k, &cols)
            })
            .collect();
        let labels = comp.iter().map(|&i| self.labels[i].clone()).collect();
        Representation::new(self.algebra.clone(), action)?.with_labels(labels)
    }

    /// Basis of `Hom_L(self, other)`; each map is a `dim(other) x dim(self)`
    /// matrix.
    pub fn hom_space(&self, other: &Representation) -> Result<Vec<Matrix>> {
        hom_space(self, other)
    }

    /// Norton's irreducibility test. Deterministic for a fixed seed.
    pub fn irreducibility(&self) -> Result<Irreducibility> {
        self.irreducibility_seeded(MEATAXE_SEED)
    }

    pub fn irreducibility_seeded(&self, seed: u64) -> Result<Irreducibility> {
        if self.dim == 0 {
            return Err(Error::InvalidInput("the zero module".into()));
        }
        if self.dim == 1 {
            return Ok(Irreducibility::Irreducible);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let candidates = self.candidate_elements();
        let mut attempts = 0;
        while attempts < MEATAXE_ATTEMPTS {
            let theta = if attempts < candidates.len() {
                candidates[attempts].clone()
            } else {
                self.random_algebra_element(&mut rng)
            };
            attempts += 1;
            let minpoly = theta.minimal_polynomial();
            let fac = match factor(&minpoly) {
                Ok(f) => f,
                Err(Error::Unsupported(_)) => continue,
                Err(e) => return Err(e),
            };
            for (g, _) in &fac.factors {
                let n = theta.eval_poly(g);
                let kernel = n.nullspace();
                if let Some(v) = kernel.first() {
                    let s = self.spin(std::slice::from_ref(v));
                    if s.dim() < self.dim {
                        return Ok(Irreducibility::Reducible(s));
                    }
                }
                let deg = g.degree().unwrap();
                if kernel.len() != deg {
                    continue;
                }
                let w = n.left_nullspace();
                let s = self.spin_transposed(&w[..1]);
                if s.dim() < self.dim {
                    // The annihilator of a proper dual submodule is a submodule.
                    let ann = Matrix::from_rows(&self.field, s.basis().to_vec(), self.dim)?;
                    let sub = Subspace::span(&self.field, self.dim, &ann.nullspace());
                    return Ok(Irreducibility::Reducible(sub));
                }
                return Ok(Irreducibility::Irreducible);
            }
        }
        Err(Error::Undecided(attempts))
    }

    pub fn is_irreducible(&self) -> Result<bool> {
        Ok(matches!(
            self.irreducibility()?,
            Irreducibility::Irreducible
        ))
    }

    fn candidate_elements(&self) -> Vec<Matrix> {
        let mut out: Vec<Matrix> = self.action.to_vec();
        let n = self.action.len();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    out.push(&self.action[i] + &(&self.action[i] * &self.action[j]));
                }
            }
        }
        if n > 0 {
            let mut sum = Matrix::zeros(&self.field, self.dim, self.dim);
            let mut prod = Matrix::identity(&self.field, self.dim);
            for m in &self.action {
                sum = &sum + m;
                prod = &prod * m;
            }
            out.push(&sum + &prod);
        }
        out
    }

    fn random_algebra_element(&self, rng: &mut ChaCha8Rng) -> Matrix {
        let mut words: Vec<Matrix> = self.action.to_vec();
        for _ in 0..3 {
            let k = words.len();
            for i in 0..k.min(6) {
                let j = (i * 7 + words.len()) % self.action.len().max(1);
                let next = &words[i] * &self.action[j];
                words.push(next);
            }
        }
        let mut m = Matrix::zeros(&self.field, self.dim, self.dim);
        for w in &words {
            m = &m + &w.scale(&self.field.random(rng));
        }
        m
    }
}

fn spin_with(field: &Field, dim: usize, mats: &[Matrix], vectors: &[Vec<Fe>]) -> Subspace {
    let mut span = Subspace::zero(field, dim);
    let mut queue: Vec<Vec<Fe>> = Vec::new();
    for v in vectors {
        if !span.contains(v) {
            span = span.sum(&Subspace::span(field, dim, std::slice::from_ref(v)));
            queue.push(v.clone());
        }
    }
    while let Some(v) = queue.pop() {
        if span.dim() == dim {
            break;
        }
        for m in mats {
            let w = m.mul_vec(&v);
            if !span.contains(&w) {
                span = span.sum(&Subspace::span(field, dim, std::slice::from_ref(&w)));
                queue.push(w);
            }
        }
    }
    span
}

/// Basis of `Hom_L(v, w)` as `dim(w) x dim(v)` matrices.
///
/// `v` is spun from standard seed vectors. A homomorphism is determined by
/// the images of the seeds, and every relation `A_g b_k = sum_j c_j b_j`
/// found while spinning cuts down the space of admissible seed images.
pub fn hom_space(v: &Representation, w: &Representation) -> Result<Vec<Matrix>> {
    if v.algebra.dim() != w.algebra.dim() {
        return Err(Error::DimensionMismatch(
            "modules over algebras of different dimensions".into(),
        ));
    }
    let field = if v.field.contains_field(&w.field) {
        v.field.clone()
    } else {
        w.field.clone()
    };
    let (dv, dw) = (v.dim, w.dim);
    if dv == 0 || dw == 0 {
        return Ok(Vec::new());
    }
    let a: Vec<Matrix> = v
        .action
        .iter()
        .map(|m| m.to_field(&field))
        .collect::<Result<_>>()?;
    let b: Vec<Matrix> = w
        .action
        .iter()
        .map(|m| m.to_field(&field))
        .collect::<Result<_>>()?;

    let mut span = SpanTracker::new(&field, dv);
    let mut basis: Vec<Vec<Fe>> = Vec::with_capacity(dv);
    // images[j] * z is the image of basis[j] for the parameter vector z.
    let mut images: Vec<Matrix> = Vec::with_capacity(dv);
    let mut params = 0;
    for seed in 0..dv {
        if basis.len() == dv {
            break;
        }
        let mut e = vec![field.zero(); dv];
        e[seed] = field.one();
        if span.express(&e).is_some() {
            continue;
        }
        for img in images.iter_mut() {
            *img = img.hstack(&Matrix::zeros(&field, dw, dw));
        }
        let fresh = Matrix::zeros(&field, dw, params).hstack(&Matrix::identity(&field, dw));
        params += dw;
        span.insert(&e, basis.len());
        basis.push(e);
        images.push(fresh);
        let mut k = basis.len() - 1;
        while k < basis.len() {
            for g in 0..a.len() {
                let u = a[g].mul_vec(&basis[k]);
                let img = &b[g] * &images[k];
                match span.express(&u) {
                    None => {
                        span.insert(&u, basis.len());
                        basis.push(u);
                        images.push(img);
                    }
                    Some(coords) => {
                        let mut rel = img;
                        for (j, c) in coords.iter().enumerate() {
                            if !c.is_zero() {
                                rel = &rel - &images[j].scale(c);
                            }
                        }
                        if rel.is_zero() {
                            continue;
                        }
                        let kernel = rel.nullspace();
                        let z = Matrix::from_columns(&field, params, &kernel);
                        for img in images.iter_mut() {
                            *img = &*img * &z;
                        }
                        params = kernel.len();
                    }
                }
            }
            k += 1;
        }
    }
    let inverse = Matrix::from_columns(&field, dv, &basis).inverse()?;
    Ok((0..params)
        .map(|t| {
            let cols: Vec<Vec<Fe>> = images.iter().map(|img| img.col(t)).collect();
            &Matrix::from_columns(&field, dw, &cols) * &inverse
        })
        .collect())
}

/// Incremental echelon form that expresses vectors in the inserted ones.
struct SpanTracker {
    field: Field,
    dim: usize,
    /// Echelon rows: pivot, vector, and the vector as a combination of the
    /// inserted vectors.
    rows: Vec<(usize, Vec<Fe>, Vec<Fe>)>,
}

impl SpanTracker {
    fn new(field: &Field, dim: usize) -> SpanTracker {
        SpanTracker {
            field: field.clone(),
            dim,
            rows: Vec::new(),
        }
    }

    /// Reduces `u` against the rows, returning the residual and the
    /// combination of inserted vectors that was subtracted.
    fn reduce(&self, u: &[Fe]) -> (Vec<Fe>, Vec<Fe>) {
        let mut r = u.to_vec();
        let mut comb = vec![self.field.zero(); self.dim];
        for (p, row, rc) in &self.rows {
            if r[*p].is_zero() {
                continue;
            }
            let f = &r[*p] / &row[*p];
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
            for (x, y) in comb.iter_mut().zip(rc) {
                if !y.is_zero() {
                    *x = &*x + &(&f * y);
                }
            }
        }
        (r, comb)
    }

    /// Coordinates of `u` in the inserted vectors, if it lies in their span.
    fn express(&self, u: &[Fe]) -> Option<Vec<Fe>> {
        let (r, comb) = self.reduce(u);
        r.iter().all(|x| x.is_zero()).then_some(comb)
    }

    /// Inserts `u` (not in the span) as inserted vector number `index`.
    fn insert(&mut self, u: &[Fe], index: usize) {
        let (r, comb) = self.reduce(u);
        let p = r
            .iter()
            .position(|x| !x.is_zero())
            .expect("vector outside the span");
        let mut rc: Vec<Fe> = comb.iter().map(|x| -x).collect();
        rc[index] = &rc[index] + &self.field.one();
        self.rows.push((p, r, rc));
    }
}

/// Whether `theta` (a `dim(w) x dim(v)` matrix) intertwines the actions.
pub fn is_homomorphism(v: &Representation, w: &Representation, theta: &Matrix) -> bool {
    theta.rows() == w.dim
        && theta.cols() == v.dim
        && v.action
            .iter()
            .zip(&w.action)
            .all(|(a, b)| (theta * a) == (b * theta))
}

/// The minimal polynomial of `rho(e_i)^p - rho(e_i^[p])` for each `i`.
pub fn phi_minimal_polynomials(rep: &Representation) -> Result<Vec<Poly>> {
    (0..rep.algebra.dim())
        .map(|i| Ok(rep.phi_matrix(i)?.minimal_polynomial()))
        .collect()
}
