//! Induced modules `ind(W, f) = u(L, f) (x)_{u(S, f)} W`, the unit of the
//! induction/restriction adjunction, the adjunction bijection and the
//! epimorphisms attached to divisors of `f`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::fields::{Fe, Field, Poly};
use crate::liealg::{LieAlgebra, Subalgebra};
use crate::linalg::{Matrix, Subspace};
use crate::modules::{is_homomorphism, phi_minimal_polynomials, Representation};
use crate::uea::{enumerate_indices, FFamily, MultiIndex, PbwElement, ReducedAlgebra};
use crate::{Error, Result};

/// A basis of `L` in which a complement of `S` comes first and a basis of
/// `S` comes last.
#[derive(Clone, Debug)]
pub struct AdaptedBasis {
    /// `L` rewritten in the adapted basis.
    pub algebra: Arc<LieAlgebra>,
    /// Columns are the adapted basis vectors in original coordinates.
    pub change: Matrix,
    /// Inverse of `change`: original basis vectors in adapted coordinates.
    pub inverse: Matrix,
    /// Number of complement vectors (the size of `I_1`).
    pub complement: usize,
}

impl AdaptedBasis {
    /// Adapted-basis vectors in original coordinates.
    pub fn vectors(&self) -> Vec<Vec<Fe>> {
        self.change.col_vecs()
    }
}

/// Orders a basis of `L` as (complement of `S`; basis of `S`). The
/// complement consists of the standard basis vectors at the non-pivot
/// positions of `S`, so it is labelled by the original labels, while the
/// `S` part keeps the labels of the subalgebra.
pub fn adapt_basis(l: &LieAlgebra, s: &Subalgebra) -> Result<AdaptedBasis> {
    if !s.is_p_closed() {
        return Err(Error::NotPClosed(
            "the subalgebra is not closed under the p-map".into(),
        ));
    }
    let n = l.dim();
    let field = l.field();
    let span = Subspace::span(field, n, &s.basis);
    let mut columns = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for c in span.complement_indices() {
        columns.push(l.basis_vector(c));
        labels.push(l.labels()[c].clone());
    }
    let complement = columns.len();
    columns.extend(s.basis.iter().cloned());
    labels.extend(s.algebra.labels().iter().cloned());
    let change = Matrix::from_columns(field, n, &columns);
    let inverse = change.inverse()?;
    let algebra = Arc::new(l.change_basis(&change, labels)?);
    Ok(AdaptedBasis {
        algebra,
        change,
        inverse,
        complement,
    })
}

/// The least common multiple, over all given `S`-modules, of the minimal
/// polynomials of `phi_i = rho(e_i)^p - rho(e_i^[p])`. The result annihilates
/// every module in the list.
pub fn choose_f_for_s(modules: &[Representation]) -> Result<Vec<Poly>> {
    let Some(first) = modules.first() else {
        return Err(Error::InvalidInput("no modules to annihilate".into()));
    };
    let mut out = phi_minimal_polynomials(first)?;
    for m in &modules[1..] {
        if m.algebra().dim() != out.len() {
            return Err(Error::DimensionMismatch(
                "modules over different algebras".into(),
            ));
        }
        for (f, g) in out.iter_mut().zip(phi_minimal_polynomials(m)?) {
            *f = f.lcm(&g);
        }
    }
    Ok(out)
}

/// The module `ind(W, f)` with basis `e^a (x) b_j`, `a` running over the
/// exponents supported on `I_1` in lexicographic order and `j` over the basis
/// of `W`.
#[derive(Clone, Debug)]
pub struct InducedModule {
    module: Representation,
    adapted_module: Representation,
    adapted: AdaptedBasis,
    subalgebra: Subalgebra,
    source: Representation,
    reduced: Arc<ReducedAlgebra>,
    indices: Vec<MultiIndex>,
    unit: Matrix,
}

/// Builds `ind(W, f)` for a `p`-subalgebra `S` of a restricted `L`.
///
/// `f1` lists the polynomials for the complement `I_1` (in the order chosen
/// by [`adapt_basis`]) and `f2` those for the basis of `S`; `f2` must
/// annihilate `W`.
pub fn induce(
    l: Arc<LieAlgebra>,
    s: &Subalgebra,
    w: &Representation,
    f1: &[Poly],
    f2: &[Poly],
) -> Result<InducedModule> {
    if !l.has_pmap() {
        return Err(Error::NoPMap);
    }
    let adapted = adapt_basis(&l, s)?;
    let n = l.dim();
    let n1 = adapted.complement;
    if f1.len() != n1 || f2.len() != s.dim() {
        return Err(Error::DimensionMismatch(format!(
            "expected {} complement and {} subalgebra polynomials, got {} and {}",
            n1,
            s.dim(),
            f1.len(),
            f2.len()
        )));
    }
    let source = Representation::new(Arc::new(s.algebra.clone()), w.matrices().to_vec())?
        .with_labels(w.labels().to_vec())?;
    source.validate()?;
    source.check_family(&FFamily::new(f2.to_vec())?)?;

    let family = FFamily::new(f1.iter().chain(f2).cloned().collect())?;
    let reduced = Arc::new(ReducedAlgebra::new(adapted.algebra.clone(), family)?);
    let indices = enumerate_indices(&reduced.bounds()[..n1]);
    let dw = source.dim();
    let dim = indices.len() * dw;
    let field = source.field().clone();
    let lfield = l.field().clone();

    let position = |alpha: &[u32]| -> usize {
        alpha
            .iter()
            .zip(reduced.bounds())
            .fold(0, |pos, (a, b)| pos * *b as usize + *a as usize)
    };
    let mut w_cache: HashMap<Vec<u32>, Matrix> = HashMap::new();
    let mut adapted_action = Vec::with_capacity(n);
    for k in 0..n {
        let mut m = Matrix::zeros(&field, dim, dim);
        for (col_block, alpha) in indices.iter().enumerate() {
            let mut full = alpha.clone();
            full.resize(n, 0);
            let e = PbwElement::monomial(&lfield, full, lfield.one());
            let nf = reduced.left_mul_generator(k, &e);
            for (beta, c) in nf.terms() {
                let row_block = position(&beta[..n1]);
                let part = beta[n1..].to_vec();
                let wm = w_cache.entry(part).or_insert_with_key(|part| {
                    source.apply_pbw(&PbwElement::monomial(&lfield, part.clone(), lfield.one()))
                });
                for r in 0..dw {
                    for j in 0..dw {
                        let x = wm.get(r, j);
                        if x.is_zero() {
                            continue;
                        }
                        let (row, col) = (row_block * dw + r, col_block * dw + j);
                        let v = m.get(row, col) + &(c * x);
                        m.set(row, col, v);
                    }
                }
            }
        }
        adapted_action.push(m);
    }

    let labels = basis_labels(&adapted, &indices, &source);
    let adapted_module = Representation::new(adapted.algebra.clone(), adapted_action)?
        .with_labels(labels.clone())?;
    adapted_module.validate()?;
    let original_action = (0..n)
        .map(|i| adapted_module.act(&adapted.inverse.col(i)))
        .collect();
    let module = Representation::new(l, original_action)?.with_labels(labels)?;

    let unit = Matrix::from_fn(&field, dim, dw, |r, c| {
        if r == c {
            field.one()
        } else {
            field.zero()
        }
    });
    debug_assert_eq!(
        dim,
        dw * reduced.bounds()[..n1]
            .iter()
            .map(|&b| b as usize)
            .product::<usize>()
    );
    Ok(InducedModule {
        module,
        adapted_module,
        adapted,
        subalgebra: s.clone(),
        source,
        reduced,
        indices,
        unit,
    })
}

fn basis_labels(adapted: &AdaptedBasis, indices: &[MultiIndex], w: &Representation) -> Vec<String> {
    let n = adapted.algebra.dim();
    let field = adapted.algebra.field();
    let mut labels = Vec::with_capacity(indices.len() * w.dim());
    for alpha in indices {
        let mut full = alpha.clone();
        full.resize(n, 0);
        let mono =
            PbwElement::monomial(field, full, field.one()).display_with(adapted.algebra.labels());
        for b in w.labels() {
            labels.push(format!("{}⊗{}", mono, b));
        }
    }
    labels
}

impl InducedModule {
    /// The induced module as a representation of the original `L`.
    pub fn module(&self) -> &Representation {
        &self.module
    }

    /// The same module as a representation of `L` in the adapted basis.
    pub fn adapted_module(&self) -> &Representation {
        &self.adapted_module
    }

    pub fn adapted(&self) -> &AdaptedBasis {
        &self.adapted
    }

    pub fn subalgebra(&self) -> &Subalgebra {
        &self.subalgebra
    }

    /// The inducing module `W` as a representation of `S`.
    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn reduced(&self) -> &ReducedAlgebra {
        &self.reduced
    }

    /// The family `f` in adapted order (complement first).
    pub fn family(&self) -> &FFamily {
        self.reduced.family()
    }

    /// Exponents on `I_1`, in basis order.
    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn field(&self) -> &Field {
        self.module.field()
    }

    /// Position of `e^a (x) b_j` in the basis.
    pub fn position(&self, alpha: &[u32], j: usize) -> Option<usize> {
        let block = self.indices.iter().position(|a| a.as_slice() == alpha)?;
        (j < self.source.dim()).then(|| block * self.source.dim() + j)
    }

    /// The unit `W -> res(ind W)`, `w -> 1 (x) w`, as a `dim x dim(W)` matrix.
    pub fn unit(&self) -> &Matrix {
        &self.unit
    }

    /// Restriction of the induced module to `S`.
    pub fn restricted(&self) -> Representation {
        self.module.restrict(&self.subalgebra)
    }

    /// Checks that `v` lies in the category of `u(L, f)`-modules.
    pub fn check_category(&self, v: &Representation) -> Result<()> {
        if v.algebra().dim() != self.module.algebra().dim() {
            return Err(Error::DimensionMismatch(
                "module over a different algebra".into(),
            ));
        }
        let va = v.restrict_to(self.adapted.algebra.clone(), &self.adapted.vectors());
        va.check_family(self.family())
    }

    /// The `L`-map `psi: ind(W) -> V` with `psi(e^a (x) b_j) = rho_V(e^a) theta(b_j)`
    /// attached to an `S`-map `theta: W -> res V`.
    pub fn adjoint_forward(&self, v: &Representation, theta: &Matrix) -> Result<Matrix> {
        let mut out = self.adjoint_forward_all(v, std::slice::from_ref(theta))?;
        Ok(out.pop().expect("one map in, one map out"))
    }

    /// [`InducedModule::adjoint_forward`] for several maps into the same `V`,
    /// sharing the matrices `rho_V(e^a)`.
    pub fn adjoint_forward_all(
        &self,
        v: &Representation,
        thetas: &[Matrix],
    ) -> Result<Vec<Matrix>> {
        self.check_category(v)?;
        let res = v.restrict(&self.subalgebra);
        if thetas
            .iter()
            .any(|theta| !is_homomorphism(&self.source, &res, theta))
        {
            return Err(Error::NotHomomorphism(
                "theta is not an S-module map W -> res V".into(),
            ));
        }
        let va = v.restrict_to(self.adapted.algebra.clone(), &self.adapted.vectors());
        let rhos = self.monomial_actions(&va);
        thetas
            .iter()
            .map(|theta| {
                let mut cols = Vec::with_capacity(self.dim());
                for rho in &rhos {
                    cols.extend(rho.try_mul(theta)?.col_vecs());
                }
                Ok(Matrix::from_columns(v.field(), v.dim(), &cols))
            })
            .collect()
    }

    /// `rho(e^a)` for every basis index `a`, built from cached powers.
    fn monomial_actions(&self, va: &Representation) -> Vec<Matrix> {
        let field = va.field();
        let identity = Matrix::identity(field, va.dim());
        let mut powers: Vec<Vec<Matrix>> = vec![vec![identity.clone()]; self.adapted.complement];
        self.indices
            .iter()
            .map(|alpha| {
                let mut m = identity.clone();
                for (i, &a) in alpha.iter().enumerate() {
                    let a = a as usize;
                    if a == 0 {
                        continue;
                    }
                    while powers[i].len() <= a {
                        let next = powers[i].last().expect("identity") * va.matrix(i);
                        powers[i].push(next);
                    }
                    m = &m * &powers[i][a];
                }
                m
            })
            .collect()
    }

    /// `theta = psi o unit` for an `L`-map `psi: ind(W) -> V`.
    pub fn adjoint_backward(&self, v: &Representation, psi: &Matrix) -> Result<Matrix> {
        if !is_homomorphism(&self.module, v, psi) {
            return Err(Error::NotHomomorphism(
                "psi is not an L-module map ind(W) -> V".into(),
            ));
        }
        psi.try_mul(&self.unit)
    }

    /// `ind(h)` for an `S`-map `h: W -> W'` where `target = ind(W', f)` was
    /// built from the same `L`, `S` and `f`: `e^a (x) b -> e^a (x) h(b)`.
    pub fn ind_map(&self, target: &InducedModule, h: &Matrix) -> Result<Matrix> {
        self.check_compatible(target)?;
        if self.family() != target.family() {
            return Err(Error::InvalidInput(
                "induced modules use different families".into(),
            ));
        }
        if !is_homomorphism(&self.source, &target.source, h) {
            return Err(Error::NotHomomorphism("h is not an S-module map".into()));
        }
        Ok(Matrix::identity(self.field(), self.indices.len()).kron(h))
    }

    /// The natural epimorphism `ind(W, f) -> ind(W, f*)` where `target` was
    /// built from the same data with a family `f*` dividing `f`.
    pub fn divisor_epi(&self, target: &InducedModule) -> Result<Matrix> {
        self.check_compatible(target)?;
        if self.source.matrices() != target.source.matrices() {
            return Err(Error::InvalidInput(
                "induced modules come from different S-modules".into(),
            ));
        }
        if !self.family().is_divisible_by(target.family()) {
            return Err(Error::NotDivisor(
                "the target family does not divide the source family".into(),
            ));
        }
        self.adjoint_forward(target.module(), target.unit())
    }

    fn check_compatible(&self, other: &InducedModule) -> Result<()> {
        if self.module.algebra() != other.module.algebra()
            || self.subalgebra.basis != other.subalgebra.basis
        {
            return Err(Error::InvalidInput(
                "induced modules over different pairs (L, S)".into(),
            ));
        }
        Ok(())
    }
}

/// `ind(W, f) -> ind(W, f*)` for `f*` dividing `f`, building both modules.
pub fn divisor_epi_module(
    l: Arc<LieAlgebra>,
    s: &Subalgebra,
    w: &Representation,
    f: (&[Poly], &[Poly]),
    fstar: (&[Poly], &[Poly]),
) -> Result<(InducedModule, InducedModule, Matrix)> {
    let big = induce(l.clone(), s, w, f.0, f.1)?;
    let small = induce(l, s, w, fstar.0, fstar.1)?;
    let epi = big.divisor_epi(&small)?;
    Ok((big, small, epi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn two_dim() -> Arc<LieAlgebra> {
        Arc::new(
            LieAlgebra::builder(&f3(), &["x", "y"])
                .bracket_ints(0, 1, &[0, 1])
                .pmap_ints(0, &[1, 0])
                .zero_pmap()
                .build()
                .unwrap(),
        )
    }

    fn rotation_module(s: &Subalgebra) -> Representation {
        let m = Matrix::from_int_rows(&f3(), &[vec![0, -1], vec![1, 0]]);
        Representation::new(Arc::new(s.algebra.clone()), vec![m]).unwrap()
    }

    #[test]
    fn adapted_order_puts_subalgebra_last() {
        let l = two_dim();
        let s = l.p_closure(&[l.basis_vector(0)]).unwrap();
        let a = adapt_basis(&l, &s).unwrap();
        assert_eq!(a.complement, 1);
        assert_eq!(a.algebra.labels()[0], "y");
        let s_all = l
            .p_closure(&[l.basis_vector(0), l.basis_vector(1)])
            .unwrap();
        assert_eq!(adapt_basis(&l, &s_all).unwrap().complement, 0);
    }

    #[test]
    fn chosen_family_annihilates() {
        let l = two_dim();
        let s = l.p_closure(&[l.basis_vector(0)]).unwrap();
        let w = rotation_module(&s);
        let f = choose_f_for_s(&[w.clone(), w.clone()]).unwrap();
        assert_eq!(f[0], Poly::from_ints(&f3(), &[1, 0, 1]));
        w.check_family(&FFamily::new(f).unwrap()).unwrap();
    }

    #[test]
    fn inducing_from_everything_is_identity() {
        let l = two_dim();
        let s = l
            .p_closure(&[l.basis_vector(0), l.basis_vector(1)])
            .unwrap();
        let w = Representation::trivial(Arc::new(s.algebra.clone()), 2);
        let f = choose_f_for_s(std::slice::from_ref(&w)).unwrap();
        let ind = induce(l, &s, &w, &[], &f).unwrap();
        assert_eq!(ind.dim(), 2);
        assert!(ind.unit().is_identity());
    }

    #[test]
    fn unannihilated_source_is_rejected() {
        let l = two_dim();
        let s = l.p_closure(&[l.basis_vector(0)]).unwrap();
        let w = rotation_module(&s);
        let t = Poly::x(&f3());
        assert!(matches!(
            induce(
                l,
                &s,
                &w,
                std::slice::from_ref(&t),
                std::slice::from_ref(&t)
            ),
            Err(Error::NotInCategory(_))
        ));
    }
}
