//! The `p`-semilinear operators `phi_x = rho(x)^p - rho(x^[p])`, characters,
//! clusters and the cluster decomposition of a module over its base field.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fields::{factor, splitting_extension, Fe, Field, Poly};
use crate::linalg::{Matrix, Subspace};
use crate::modules::Representation;
use crate::{Error, Result};

/// Name of the generator adjoined when eigenvalues need an algebraic
/// extension.
pub const EXTENSION_VAR: &str = "i";

/// An `F`-linear map `c: L -> E` for an extension `E` of `F`, given by its
/// values on the basis of `L`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Character {
    values: Vec<Fe>,
}

impl Character {
    /// A character from its values; all values are moved into the widest of
    /// their fields.
    pub fn new(values: Vec<Fe>) -> Result<Character> {
        let Some(first) = values.first() else {
            return Err(Error::InvalidInput("a character needs values".into()));
        };
        let mut field = first.field().clone();
        for v in &values {
            field = wider(&field, v.field())?;
        }
        let values = values
            .iter()
            .map(|v| field.embed(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Character { values })
    }

    pub fn values(&self) -> &[Fe] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &Fe {
        &self.values[i]
    }

    /// The field holding the values.
    pub fn field(&self) -> &Field {
        self.values[0].field()
    }

    /// `c(e_i)^p` for each `i`: the scalars by which the `phi_i` act.
    pub fn phi_values(&self) -> Vec<Fe> {
        let p = self.field().characteristic();
        self.values.iter().map(|v| v.pow(p)).collect()
    }

    /// Equality after moving both characters into a common field.
    pub fn same_as(&self, other: &Character) -> bool {
        if self.values.len() != other.values.len() {
            return false;
        }
        let Ok(field) = wider(self.field(), other.field()) else {
            return false;
        };
        self.values
            .iter()
            .zip(&other.values)
            .all(|(a, b)| field.embed(a).ok() == field.embed(b).ok())
    }

    pub fn to_field(&self, field: &Field) -> Result<Character> {
        Ok(Character {
            values: self
                .values
                .iter()
                .map(|v| field.embed(v))
                .collect::<Result<Vec<_>>>()?,
        })
    }

    /// The Galois conjugates of `c` over `base`, sorted, starting from the
    /// orbit under the `|base|`-power Frobenius for finite fields. Over a
    /// purely inseparable extension of a function field the orbit is `{c}`.
    pub fn conjugates(&self, base: &Field) -> Result<Vec<Character>> {
        let e = self.field();
        if !e.contains_field(base) {
            return Err(Error::NotAlgebraic(e.to_string(), base.to_string()));
        }
        let mut orbit = vec![self.clone()];
        if let (Some(_), Some(q)) = (e.order(), base.order()) {
            let mut c = self.frobenius(q);
            while &c != self {
                orbit.push(c.clone());
                c = c.frobenius(q);
            }
        } else {
            for v in &self.values {
                if Field::galois_orbit(v, base)?.len() != 1 {
                    return Err(Error::Unsupported(format!(
                        "Galois orbits of {} over {}",
                        v, base
                    )));
                }
            }
        }
        orbit.sort();
        Ok(orbit)
    }

    fn frobenius(&self, q: u128) -> Character {
        Character {
            values: self.values.iter().map(|v| v.pow_u128(q)).collect(),
        }
    }

    /// Renders `(x: i, y: 2*i + 1)`.
    pub fn display_with(&self, labels: &[String]) -> String {
        let parts: Vec<String> = self
            .values
            .iter()
            .zip(labels)
            .map(|(v, l)| format!("{}: {}", l, v))
            .collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "c({}) in {}", parts.join(", "), self.field())
    }
}

/// A set of characters, kept sorted and without repetitions.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Cluster {
    characters: Vec<Character>,
}

impl Cluster {
    pub fn new(mut characters: Vec<Character>) -> Cluster {
        characters.sort();
        characters.dedup();
        Cluster { characters }
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn contains(&self, c: &Character) -> bool {
        self.characters.iter().any(|d| d.same_as(c))
    }

    /// Whether every character of `self` lies in `other`.
    pub fn is_subset(&self, other: &Cluster) -> bool {
        self.characters.iter().all(|c| other.contains(c))
    }

    pub fn union(&self, other: &Cluster) -> Result<Cluster> {
        let mut all = self.characters.clone();
        for c in &other.characters {
            if !self.contains(c) {
                all.push(c.clone());
            }
        }
        let mut field = match all.first() {
            Some(c) => c.field().clone(),
            None => return Ok(Cluster::default()),
        };
        for c in &all {
            field = wider(&field, c.field())?;
        }
        let all = all
            .iter()
            .map(|c| c.to_field(&field))
            .collect::<Result<Vec<_>>>()?;
        Ok(Cluster::new(all))
    }

    /// Whether the set is closed under Galois conjugation over `base`.
    pub fn is_galois_stable(&self, base: &Field) -> Result<bool> {
        for c in &self.characters {
            for d in c.conjugates(base)? {
                if !self.contains(&d) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `phi_i = rho(e_i)^p - rho(e_i^[p])` for every basis element.
pub fn phi(v: &Representation) -> Result<Vec<Matrix>> {
    (0..v.algebra().dim()).map(|i| v.phi_matrix(i)).collect()
}

/// `rho(u)^p - rho(u^[p])` for an arbitrary `u`, using the Jacobson `p`-power.
pub fn phi_of(v: &Representation, u: &[Fe]) -> Result<Matrix> {
    let p = v.field().characteristic();
    let up = v.algebra().p_power(u)?;
    Ok(&v.act(u).pow(p) - &v.act(&up))
}

/// Outcome of [`check_p_semilinear`].
#[derive(Clone, Debug, Default)]
pub struct SemilinearReport {
    pub trials: usize,
    pub failures: Vec<String>,
}

impl SemilinearReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `phi_(u+v) = phi_u + phi_v` and `phi_(l u) = l^p phi_u` on seeded
/// random `u`, `v` in `L` and scalars `l`.
pub fn check_p_semilinear(
    v: &Representation,
    trials: usize,
    seed: u64,
) -> Result<SemilinearReport> {
    let alg = v.algebra();
    let field = alg.field().clone();
    let p = field.characteristic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SemilinearReport {
        trials,
        failures: Vec::new(),
    };
    let labels = alg.labels().to_vec();
    let show = |u: &[Fe]| crate::liealg::format_vector(u, &labels);
    for _ in 0..trials {
        let a: Vec<Fe> = (0..alg.dim()).map(|_| field.random(&mut rng)).collect();
        let b: Vec<Fe> = (0..alg.dim()).map(|_| field.random(&mut rng)).collect();
        let l = field.random(&mut rng);
        let sum: Vec<Fe> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let scaled: Vec<Fe> = a.iter().map(|x| &l * x).collect();
        let (pa, pb) = (phi_of(v, &a)?, phi_of(v, &b)?);
        if phi_of(v, &sum)? != &pa + &pb {
            report.failures.push(format!(
                "additivity fails for u = {}, v = {}",
                show(&a),
                show(&b)
            ));
        }
        if phi_of(v, &scaled)? != pa.scale(&l.pow(p)) {
            report.failures.push(format!(
                "semilinearity fails for u = {}, scalar {}",
                show(&a),
                l
            ));
        }
    }
    Ok(report)
}

/// The character of `v`, if every `phi_i` is a scalar `c(e_i)^p`. Values are
/// `p`-th roots of those scalars, enlarging the field tower when needed.
pub fn has_character(v: &Representation) -> Result<Option<Character>> {
    if v.dim() == 0 {
        return Ok(None);
    }
    let mut values = Vec::new();
    for m in phi(v)? {
        let s = m.get(0, 0).clone();
        if m != Matrix::identity(v.field(), v.dim()).scale(&s) {
            return Ok(None);
        }
        values.push(s.frobenius_root(true)?);
    }
    if values.is_empty() {
        return Err(Error::InvalidInput(
            "the zero algebra has no characters".into(),
        ));
    }
    Character::new(values).map(Some)
}

/// The joint generalized eigenspaces of commuting `mats` over an extension
/// `E` in which all their eigenvalues lie, with the eigenvalue tuples.
fn joint_eigenspaces(mats: &[Matrix], e: &Field) -> Result<Vec<(Vec<Fe>, Subspace)>> {
    let n = mats.first().map_or(0, |m| m.rows());
    let mats = mats
        .iter()
        .map(|m| m.to_field(e))
        .collect::<Result<Vec<_>>>()?;
    let mut parts = vec![(Vec::new(), Subspace::full(e, n))];
    for m in &mats {
        let mut next = Vec::new();
        for (tuple, space) in parts {
            let r = restrict_matrix(m, &space)?;
            let mp = r.minimal_polynomial();
            let fac = factor(&mp)?;
            for (g, mult) in &fac.factors {
                if g.degree() != Some(1) {
                    return Err(Error::InvariantViolation(format!(
                        "{} does not split over {}",
                        mp, e
                    )));
                }
                let lambda = -g.coeff(0);
                let kernel = r.eval_poly(&g.pow(*mult)).nullspace();
                let basis = space.basis_matrix();
                let vectors: Vec<Vec<Fe>> = kernel.iter().map(|k| basis.mul_vec(k)).collect();
                let mut t = tuple.clone();
                t.push(lambda);
                next.push((t, Subspace::span(e, n, &vectors)));
            }
        }
        parts = next;
    }
    Ok(parts)
}

/// Matrix of `m` on an `m`-invariant subspace, in the echelon basis.
fn restrict_matrix(m: &Matrix, space: &Subspace) -> Result<Matrix> {
    let field = space.field().clone();
    let cols = space
        .basis()
        .iter()
        .map(|b| {
            space
                .coordinates(&m.mul_vec(b))
                .ok_or_else(|| Error::InvariantViolation("subspace is not invariant".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(&field, space.dim(), &cols))
}

/// A field over which every `phi_i` of `v` has all its eigenvalues.
pub fn eigenvalue_field(v: &Representation) -> Result<Field> {
    let mut product: Option<Poly> = None;
    for m in phi(v)? {
        let mp = m.minimal_polynomial();
        product = Some(match product {
            None => mp,
            Some(acc) => acc.lcm(&mp),
        });
    }
    match product {
        None => Ok(v.field().clone()),
        Some(f) => splitting_extension(&f, EXTENSION_VAR),
    }
}

/// The cluster of `v`: the characters `c` with `c(e_i)^p` a joint eigenvalue
/// tuple of the `phi_i`.
pub fn cluster_of(v: &Representation) -> Result<Cluster> {
    Ok(Cluster::new(
        spectral_data(v)?.into_iter().map(|(c, _)| c).collect(),
    ))
}

fn spectral_data(v: &Representation) -> Result<Vec<(Character, Subspace)>> {
    if v.algebra().dim() == 0 {
        return Err(Error::InvalidInput(
            "the zero algebra has no characters".into(),
        ));
    }
    let e = eigenvalue_field(v)?;
    let parts = joint_eigenspaces(&phi(v)?, &e)?;
    let mut out = Vec::with_capacity(parts.len());
    for (tuple, space) in parts {
        let roots = tuple
            .iter()
            .map(|x| x.frobenius_root(true))
            .collect::<Result<Vec<_>>>()?;
        out.push((Character::new(roots)?, space));
    }
    let mut field = e;
    for (c, _) in &out {
        field = wider(&field, c.field())?;
    }
    out.into_iter()
        .map(|(c, s)| Ok((c.to_field(&field)?, s)))
        .collect()
}

/// A cluster component of a module: an `F`-rational submodule and the
/// Galois orbit of characters it carries.
#[derive(Clone, Debug)]
pub struct Component {
    pub cluster: Cluster,
    pub space: Subspace,
}

/// Splits `v` into the direct sum of its `F`-rational cluster components,
/// one per Galois orbit of characters. Components are the joint generalized
/// eigenspaces of the `phi_i` over an eigenvalue field, summed over each
/// Galois orbit; such a sum is Galois-stable, so its echelon basis is
/// defined over `F`.
pub fn cluster_decompose(v: &Representation) -> Result<Vec<Component>> {
    let base = v.field().clone();
    let n = v.dim();
    let data = spectral_data(v)?;
    let mut used = vec![false; data.len()];
    let mut out = Vec::new();
    for i in 0..data.len() {
        if used[i] {
            continue;
        }
        let orbit = data[i].0.conjugates(&base)?;
        let mut chars = Vec::new();
        let mut sum = Subspace::zero(data[i].1.field(), n);
        for (j, (c, s)) in data.iter().enumerate() {
            if !used[j] && orbit.iter().any(|d| d.same_as(c)) {
                used[j] = true;
                chars.push(c.clone());
                sum = sum.sum(s);
            }
        }
        let basis = sum
            .basis()
            .iter()
            .map(|b| {
                b.iter()
                    .map(|x| descend(x, &base))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(Component {
            cluster: Cluster::new(chars),
            space: Subspace::span(&base, n, &basis),
        });
    }
    out.sort_by(|a, b| a.cluster.characters.cmp(&b.cluster.characters));
    Ok(out)
}

/// The sum of the cluster components of `v` whose characters all lie in `c`.
pub fn cluster_project(v: &Representation, c: &Cluster) -> Result<Subspace> {
    let mut out = Subspace::zero(v.field(), v.dim());
    for comp in cluster_decompose(v)? {
        if comp.cluster.is_subset(c) {
            out = out.sum(&comp.space);
        }
    }
    Ok(out)
}

/// `a` as an element of the subfield `base`, if it lies there.
fn descend(a: &Fe, base: &Field) -> Result<Fe> {
    if a.field() == base {
        return Ok(a.clone());
    }
    let coords = a.field().coords_over(a, base)?;
    if coords[1..].iter().any(|x| !x.is_zero()) {
        return Err(Error::InvariantViolation(format!(
            "{} does not lie in {}",
            a, base
        )));
    }
    Ok(coords[0].clone())
}

fn wider(a: &Field, b: &Field) -> Result<Field> {
    if a.contains_field(b) {
        Ok(a.clone())
    } else if b.contains_field(a) {
        Ok(b.clone())
    } else {
        Err(Error::IncompatibleFields(a.to_string(), b.to_string()))
    }
}
