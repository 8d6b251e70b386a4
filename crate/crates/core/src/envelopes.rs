//! `p`-envelopes of Lie algebras without a `p`-map, the functors `J` and
//! `T`, extensions of module actions to an envelope, and induction through
//! the submodule generated by `1 (x) W`.

use std::sync::Arc;

use crate::fields::{Fe, Poly};
use crate::induction::{choose_f_for_s, induce, InducedModule};
use crate::liealg::{
    matrix_coordinates, matrix_p_closure, recipe_labels, LieAlgebra, Recipe, Subalgebra,
};
use crate::linalg::{Matrix, Subspace};
use crate::modules::Representation;
use crate::{Error, Result};

/// A restricted Lie algebra `L*` containing `L` whose `p`-closure of `L` is
/// everything.
#[derive(Clone, Debug)]
pub struct EnvelopeSpec {
    algebra: Arc<LieAlgebra>,
    envelope: Arc<LieAlgebra>,
    embedding: Matrix,
}

impl EnvelopeSpec {
    /// Validates an envelope given by the images of the basis of `algebra`
    /// (the columns of `embedding`, in coordinates of `envelope`).
    pub fn new(
        algebra: Arc<LieAlgebra>,
        envelope: Arc<LieAlgebra>,
        embedding: Matrix,
    ) -> Result<EnvelopeSpec> {
        let (n, m) = (algebra.dim(), envelope.dim());
        if embedding.rows() != m || embedding.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "embedding must be {}x{}",
                m, n
            )));
        }
        if !envelope.has_pmap() {
            return Err(Error::NoPMap);
        }
        if let Some(failure) = envelope.validate().into_iter().next() {
            return Err(Error::InvariantViolation(format!("envelope: {}", failure)));
        }
        if embedding.rank() != n {
            return Err(Error::InvalidInput("embedding is not injective".into()));
        }
        let images = embedding.col_vecs();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = embedding.mul_vec(algebra.bracket_basis(i, j));
                if lhs != envelope.bracket(&images[i], &images[j]) {
                    return Err(Error::InvariantViolation(format!(
                        "embedding does not respect [{}, {}]",
                        algebra.labels()[i],
                        algebra.labels()[j]
                    )));
                }
            }
        }
        if envelope.p_closure(&images)?.dim() != m {
            return Err(Error::InvariantViolation(
                "the p-closure of the image is a proper subalgebra".into(),
            ));
        }
        Ok(EnvelopeSpec {
            algebra,
            envelope,
            embedding,
        })
    }

    /// A restricted algebra as its own envelope.
    pub fn trivial(algebra: Arc<LieAlgebra>) -> Result<EnvelopeSpec> {
        let id = Matrix::identity(algebra.field(), algebra.dim());
        EnvelopeSpec::new(algebra.clone(), algebra, id)
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn envelope(&self) -> &Arc<LieAlgebra> {
        &self.envelope
    }

    /// Columns are the images of the basis of `L`.
    pub fn embedding(&self) -> &Matrix {
        &self.embedding
    }

    /// Image of `u` (coordinates in `L`) in the envelope.
    pub fn embed(&self, u: &[Fe]) -> Vec<Fe> {
        self.embedding.mul_vec(u)
    }

    /// Restriction of a representation of `L*` to `L`.
    pub fn restrict(&self, v: &Representation) -> Representation {
        v.restrict_to(self.algebra.clone(), &self.embedding.col_vecs())
    }
}

/// The `p`-closure of `ad(L)` inside `gl(L)` with the matrix `p`-th power.
/// The first basis elements are `ad(e_i)`, labelled as in `L`; the others are
/// labelled by how they arise, e.g. `x^[3]`.
pub fn build_envelope_adjoint(l: Arc<LieAlgebra>) -> Result<EnvelopeSpec> {
    if l.center().dim() != 0 {
        return Err(Error::NonzeroCenter);
    }
    let n = l.dim();
    let field = l.field().clone();
    let ads: Vec<Matrix> = (0..n).map(|i| l.ad_basis(i)).collect();
    let (basis, recipes) = matrix_p_closure(&ads)?;
    let m = basis.len();
    let coords = |x: &Matrix| -> Result<Vec<Fe>> {
        matrix_coordinates(&basis, x)
            .ok_or_else(|| Error::InvariantViolation("closure is not closed".into()))
    };
    let mut brackets = vec![vec![Vec::new(); m]; m];
    for i in 0..m {
        for j in 0..m {
            brackets[i][j] = coords(&basis[i].commutator(&basis[j]))?;
        }
    }
    let p = field.characteristic();
    let pmap = basis
        .iter()
        .map(|b| coords(&b.pow(p)))
        .collect::<Result<Vec<_>>>()?;
    let labels = recipe_labels(&recipes, p, |i| l.labels()[i].clone());
    let envelope = Arc::new(LieAlgebra::new(&field, labels, brackets, Some(pmap))?);
    let embedding = Matrix::from_fn(&field, m, n, |r, c| {
        if r == c {
            field.one()
        } else {
            field.zero()
        }
    });
    EnvelopeSpec::new(l, envelope, embedding)
}

/// The `p`-closure `S^[p]` of a subalgebra of `L` inside the envelope. The
/// images of the given basis come first.
pub fn envelope_closure(env: &EnvelopeSpec, s_basis: &[Vec<Fe>]) -> Result<Subalgebra> {
    let images: Vec<Vec<Fe>> = s_basis.iter().map(|u| env.embed(u)).collect();
    let sp = env.envelope.p_closure(&images)?;
    if sp.recipes[..images.len()]
        .iter()
        .enumerate()
        .any(|(i, r)| *r != Recipe::Given(i))
    {
        return Err(Error::InvalidInput(
            "subalgebra basis is linearly dependent".into(),
        ));
    }
    Ok(sp)
}

/// Makes an `S`-module into an `S^[p]`-module: each closure element acts as
/// dictated by its recipe (`b^[p]` by `rho(b)^p`, `[b, c]` by the commutator).
pub fn j_extend(w: &Representation, sp: &Subalgebra) -> Result<Representation> {
    let mut mats: Vec<Matrix> = Vec::with_capacity(sp.dim());
    let p = w.field().characteristic();
    for r in &sp.recipes {
        let m = match *r {
            Recipe::Given(i) => w.matrix(i).clone(),
            Recipe::PPower(j) => mats[j].pow(p),
            Recipe::Bracket(j, k) => mats[j].commutator(&mats[k]),
        };
        mats.push(m);
    }
    let jw = Representation::new(Arc::new(sp.algebra.clone()), mats)?
        .with_labels(w.labels().to_vec())?;
    jw.validate().map_err(|e| {
        Error::InvalidRepresentation(format!(
            "the extension along the p-closure is inconsistent: {}",
            e
        ))
    })?;
    Ok(jw)
}

/// `T(W) = res ind_{S^[p]}^{L*}(J W, f)`.
#[derive(Clone, Debug)]
pub struct EnvelopeInduced {
    /// The induced module over the envelope.
    pub induced: InducedModule,
    /// Its restriction to `L`.
    pub module: Representation,
    pub source: Representation,
}

/// Builds `T(W)`. `s_basis` spans `S` inside `L` and `w` is a module over the
/// algebra with that basis; `f1` is indexed by the complement of `S^[p]` in
/// the envelope (see [`crate::induction::adapt_basis`]) and `f2`, when
/// omitted, is chosen minimally for `J W`.
pub fn t_functor(
    env: &EnvelopeSpec,
    s_basis: &[Vec<Fe>],
    w: &Representation,
    f1: &[Poly],
    f2: Option<&[Poly]>,
) -> Result<EnvelopeInduced> {
    if w.algebra().dim() != s_basis.len() {
        return Err(Error::DimensionMismatch(
            "module and subalgebra dimensions differ".into(),
        ));
    }
    let sp = envelope_closure(env, s_basis)?;
    let jw = j_extend(w, &sp)?;
    let f2 = match f2 {
        Some(f) => f.to_vec(),
        None => choose_f_for_s(std::slice::from_ref(&jw))?,
    };
    let induced = induce(env.envelope.clone(), &sp, &jw, f1, &f2)?;
    let module = env.restrict(induced.module());
    Ok(EnvelopeInduced {
        induced,
        module,
        source: w.clone(),
    })
}

impl EnvelopeInduced {
    /// The `L`-map `T(W) -> V` with `1 (x) w -> theta(w)`, through the
    /// extension `vstar` of `V` to the envelope.
    pub fn lemma_psi(&self, vstar: &Representation, theta: &Matrix) -> Result<Matrix> {
        self.induced.adjoint_forward(vstar, theta)
    }

    /// The `L`-submodule of `T(W)` generated by the elements `1 (x) w`.
    pub fn true_induce(&self) -> Result<TrueInduced> {
        let unit = self.induced.unit();
        let space = self.module.spin(&unit.col_vecs());
        let module = self.module.submodule(&space)?;
        let cols = unit
            .col_vecs()
            .iter()
            .map(|u| {
                space
                    .coordinates(u)
                    .ok_or_else(|| Error::InvariantViolation("unit outside its span".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let unit = Matrix::from_columns(module.field(), space.dim(), &cols);
        Ok(TrueInduced {
            module,
            space,
            unit,
            source: self.source.clone(),
        })
    }
}

/// The submodule of `T(W)` generated by `1 (x) W`, in coordinates of the
/// echelon basis of `space`.
#[derive(Clone, Debug)]
pub struct TrueInduced {
    pub module: Representation,
    pub space: Subspace,
    /// `W -> module`, `w -> 1 (x) w`.
    pub unit: Matrix,
    pub source: Representation,
}

impl TrueInduced {
    /// `psi` composed with the inclusion into `T(W)`.
    pub fn restrict_map(&self, psi: &Matrix) -> Matrix {
        psi * &self.space.basis_matrix()
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }
}

/// All extensions of a representation of `L` to the envelope when the
/// envelope has exactly one basis direction outside `L`: the matrices `D`
/// for that element form `particular + span(homogeneous)`.
#[derive(Clone, Debug)]
pub struct ExtensionFamily {
    /// Index in the envelope basis of the element outside `L`.
    pub element: usize,
    pub particular: Matrix,
    pub homogeneous: Vec<Matrix>,
}

/// Solves for the action of the envelope element outside `L` on `v`.
pub fn extension_family(env: &EnvelopeSpec, v: &Representation) -> Result<ExtensionFamily> {
    let m = env.envelope.dim();
    let n = env.algebra.dim();
    if m != n + 1 {
        return Err(Error::Unsupported(
            "extensions are solved only when the envelope adds one dimension".into(),
        ));
    }
    let image = Subspace::span(env.envelope.field(), m, &env.embedding.col_vecs());
    let element = image.complement_indices()[0];
    let field = v.field().clone();
    let dim = v.dim();
    let e = env.envelope.basis_vector(element);
    let emb_inv = env.embedding.hstack(&Matrix::from_columns(
        env.envelope.field(),
        m,
        std::slice::from_ref(&e),
    ));
    let emb_inv = emb_inv.inverse()?;
    // D rho(y) - rho(y) D - c_y D = rho(L-part of [e, y]) for every basis y.
    let unknowns = dim * dim;
    let mut system = Matrix::zeros(&field, 0, unknowns);
    let mut rhs: Vec<Fe> = Vec::new();
    for (y, ry) in v.matrices().iter().enumerate() {
        let br = env
            .envelope
            .bracket(&e, &env.embed(&env.algebra.basis_vector(y)));
        let coords = emb_inv.mul_vec(&br);
        let c_y = field.embed(&coords[n])?;
        let l_part = v.act(&coords[..n]);
        let block = Matrix::from_fn(&field, unknowns, unknowns, |row, col| {
            let (i, j) = (row / dim, row % dim);
            let (k, l) = (col / dim, col % dim);
            let mut x = field.zero();
            if k == i {
                x = &x + ry.get(l, j);
            }
            if l == j {
                x = &x - ry.get(i, k);
            }
            if k == i && l == j {
                x = &x - &c_y;
            }
            x
        });
        system = system.vstack(&block);
        for i in 0..dim {
            for j in 0..dim {
                rhs.push(l_part.get(i, j).clone());
            }
        }
    }
    let particular = system.solve(&rhs).ok_or_else(|| {
        Error::InvalidRepresentation("the action does not extend to the envelope".into())
    })?;
    let to_matrix = |x: &[Fe]| Matrix::from_fn(&field, dim, dim, |i, j| x[i * dim + j].clone());
    Ok(ExtensionFamily {
        element,
        particular: to_matrix(&particular),
        homogeneous: system.nullspace().iter().map(|x| to_matrix(x)).collect(),
    })
}

impl ExtensionFamily {
    /// The extension with `D = particular + sum c_k homogeneous_k`.
    pub fn member(
        &self,
        env: &EnvelopeSpec,
        v: &Representation,
        coeffs: &[Fe],
    ) -> Result<Representation> {
        let mut d = self.particular.clone();
        for (c, h) in coeffs.iter().zip(&self.homogeneous) {
            d = &d + &h.scale(c);
        }
        extend_action(env, v, self.element, d)
    }
}

/// The representation of the envelope acting on `v` as before on `L` and by
/// `d` on the envelope basis element `element` outside `L`.
pub fn extend_action(
    env: &EnvelopeSpec,
    v: &Representation,
    element: usize,
    d: Matrix,
) -> Result<Representation> {
    let m = env.envelope.dim();
    let field = env.envelope.field();
    let mut cols = env.embedding.col_vecs();
    cols.push(env.envelope.basis_vector(element));
    let basis = Matrix::from_columns(field, m, &cols).inverse()?;
    let n = env.algebra.dim();
    let mut mats = Vec::with_capacity(m);
    for k in 0..m {
        let coords = basis.col(k);
        let mut a = v.act(&coords[..n]);
        if !coords[n].is_zero() {
            a = &a + &d.scale(&coords[n]);
        }
        mats.push(a);
    }
    let out = Representation::new(env.envelope.clone(), mats)?.with_labels(v.labels().to_vec())?;
    out.validate()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Field;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn heisenberg_needs_an_envelope() {
        let l = LieAlgebra::builder(&f3(), &["a", "b", "c"])
            .bracket_ints(0, 1, &[0, 0, 1])
            .build()
            .unwrap();
        assert!(matches!(
            build_envelope_adjoint(Arc::new(l)),
            Err(Error::NonzeroCenter)
        ));
    }

    #[test]
    fn restricted_centerless_algebra_is_its_own_envelope() {
        let l = Arc::new(
            LieAlgebra::builder(&f3(), &["x", "y"])
                .bracket_ints(0, 1, &[0, 1])
                .pmap_ints(0, &[1, 0])
                .zero_pmap()
                .build()
                .unwrap(),
        );
        let env = build_envelope_adjoint(l.clone()).unwrap();
        assert_eq!(env.envelope().dim(), 2);
        assert_eq!(
            env.envelope().pmap_basis(0).unwrap(),
            l.pmap_basis(0).unwrap()
        );
        assert!(EnvelopeSpec::trivial(l).is_ok());
    }
}
