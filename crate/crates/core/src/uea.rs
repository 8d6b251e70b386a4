//! PBW straightening in `U(L)` and the reduced enveloping algebra
//! `u(L, f) = U(L) / (f_i(e_i^p - e_i^[p]))`.
//!
//! Elements are linear combinations of words in the basis of `L`. A word is
//! in normal form when its letters are non-decreasing and, in `u(L, f)`, no
//! letter `e_i` occurs `p * deg(f_i)` or more times.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use log::warn;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fields::{Fe, Field, Poly};
use crate::liealg::LieAlgebra;
use crate::linalg::Matrix;
use crate::{Error, Result};

pub type Word = Vec<u16>;

/// Exponent vector of a PBW monomial `e_0^a_0 ... e_{n-1}^a_{n-1}`.
pub type MultiIndex = Vec<u32>;

/// Linear combination of PBW monomials.
#[derive(Clone, PartialEq, Eq)]
pub struct PbwElement {
    field: Field,
    terms: BTreeMap<MultiIndex, Fe>,
}

impl PbwElement {
    pub fn zero(field: &Field) -> PbwElement {
        PbwElement {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(field: &Field, alpha: MultiIndex, c: Fe) -> PbwElement {
        let mut e = PbwElement::zero(field);
        e.add_term(alpha, c);
        e
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Fe> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Fe {
        self.terms
            .get(alpha)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: Fe) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&alpha) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    self.terms.remove(&alpha);
                }
            }
            None => {
                self.terms.insert(alpha, c);
            }
        }
    }

    pub fn add(&self, other: &PbwElement) -> PbwElement {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Fe) -> PbwElement {
        let mut out = PbwElement::zero(&self.field);
        for (a, x) in &self.terms {
            out.add_term(a.clone(), x * c);
        }
        out
    }

    pub fn sub(&self, other: &PbwElement) -> PbwElement {
        self.add(&other.scale(&self.field.from_int(-1)))
    }

    /// Renders with generator labels, e.g. `x^2*y - 2*x`.
    pub fn display_with(&self, labels: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (alpha, c) in self.terms.iter().rev() {
            let mono: Vec<String> = alpha
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| {
                    if a == 1 {
                        labels[i].clone()
                    } else {
                        format!("{}^{}", labels[i], a)
                    }
                })
                .collect();
            let mono = mono.join("*");
            let s = c.to_string();
            let simple = !s.is_empty() && !s[1..].contains([' ', '/']);
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if simple => (true, rest.to_string()),
                _ => (false, s.clone()),
            };
            let body = if body.contains(' ') || body.contains('/') {
                format!("({})", body)
            } else {
                body
            };
            let term = match (mono.is_empty(), body == "1") {
                (true, _) => body,
                (false, true) => mono,
                (false, false) => format!("{}*{}", body, mono),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        out
    }
}

impl fmt::Debug for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (0..self.terms.keys().next().map_or(0, |a| a.len()))
            .map(|i| format!("e{}", i))
            .collect();
        write!(f, "{}", self.display_with(&labels))
    }
}

/// Expands a multi-index into its sorted word.
pub fn word_of(alpha: &[u32]) -> Word {
    let mut w = Vec::new();
    for (i, &a) in alpha.iter().enumerate() {
        for _ in 0..a {
            w.push(i as u16);
        }
    }
    w
}

fn index_of(word: &[u16], n: usize) -> MultiIndex {
    let mut a = vec![0u32; n];
    for &g in word {
        a[g as usize] += 1;
    }
    a
}

/// Order in which rewrites are applied. Any choice yields the same normal
/// form; the random strategy exists to check that.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Random(u64),
}

/// The family `f = (f_i)` of monic polynomials indexed by a basis of `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FFamily {
    polys: Vec<Poly>,
}

impl FFamily {
    /// Non-monic polynomials are scaled to be monic.
    pub fn new(polys: Vec<Poly>) -> Result<FFamily> {
        let mut out = Vec::with_capacity(polys.len());
        for (i, f) in polys.into_iter().enumerate() {
            match f.degree() {
                None => return Err(Error::ZeroPolynomial),
                Some(0) => {
                    return Err(Error::InvalidInput(format!(
                        "f_{} is constant, so the reduced algebra is zero",
                        i
                    )))
                }
                Some(_) => {}
            }
            if !f.is_monic() {
                warn!("scaling f_{} = {} to be monic", i, f);
            }
            out.push(f.monic()?);
        }
        Ok(FFamily { polys: out })
    }

    /// `f_i = t` for every basis element: the restricted enveloping algebra.
    pub fn restricted(field: &Field, n: usize) -> FFamily {
        FFamily {
            polys: vec![Poly::x(field); n],
        }
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.polys.iter().map(|f| f.degree().unwrap()).collect()
    }

    pub fn to_field(&self, field: &Field) -> Result<FFamily> {
        Ok(FFamily {
            polys: self
                .polys
                .iter()
                .map(|f| f.to_field(field))
                .collect::<Result<_>>()?,
        })
    }

    /// Whether each `other_i` divides `f_i`.
    pub fn is_divisible_by(&self, other: &FFamily) -> bool {
        self.len() == other.len()
            && self
                .polys
                .iter()
                .zip(&other.polys)
                .all(|(f, g)| g.divides(f))
    }
}

type Overflow<'a> = (&'a [u32], &'a [Vec<(Word, Fe)>]);

/// Straightening engine for `U(L)`, optionally with the overflow rules of a
/// reduced algebra.
struct Straightener<'a> {
    alg: &'a LieAlgebra,
    field: Field,
    overflow: Option<Overflow<'a>>,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Key {
    len: usize,
    inversions: usize,
    word: Word,
}

impl Key {
    fn new(word: Word) -> Key {
        let mut inversions = 0;
        for i in 0..word.len() {
            for j in i + 1..word.len() {
                if word[i] > word[j] {
                    inversions += 1;
                }
            }
        }
        Key {
            len: word.len(),
            inversions,
            word,
        }
    }
}

enum Move {
    Swap(usize),
    Overflow { gen: usize, start: usize },
}

impl Straightener<'_> {
    fn moves(&self, w: &[u16], all: bool) -> Vec<Move> {
        let mut out = Vec::new();
        for k in 0..w.len().saturating_sub(1) {
            if w[k] > w[k + 1] {
                out.push(Move::Swap(k));
                if !all {
                    return out;
                }
            }
        }
        if let Some((bounds, _)) = self.overflow {
            let mut k = 0;
            while k < w.len() {
                let g = w[k];
                let mut e = k;
                while e < w.len() && w[e] == g {
                    e += 1;
                }
                let b = bounds[g as usize] as usize;
                if e - k >= b {
                    for start in k..=e - b {
                        out.push(Move::Overflow {
                            gen: g as usize,
                            start,
                        });
                        if !all {
                            return out;
                        }
                    }
                }
                k = e;
            }
        }
        out
    }

    fn normalize(&self, input: Vec<(Word, Fe)>, strategy: Strategy) -> BTreeMap<Word, Fe> {
        let mut rng = match strategy {
            Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            Strategy::Leftmost => None,
        };
        let mut work: BTreeMap<Key, Fe> = BTreeMap::new();
        let add = |work: &mut BTreeMap<Key, Fe>, w: Word, c: Fe| {
            if c.is_zero() {
                return;
            }
            let key = Key::new(w);
            match work.get_mut(&key) {
                Some(x) => {
                    *x = &*x + &c;
                    if x.is_zero() {
                        work.remove(&key);
                    }
                }
                None => {
                    work.insert(key, c);
                }
            }
        };
        for (w, c) in input {
            add(&mut work, w, self.field.embed(&c).expect("scalar in field"));
        }
        let mut out: BTreeMap<Word, Fe> = BTreeMap::new();
        while let Some((key, c)) = work.pop_last() {
            let w = key.word.clone();
            let moves = self.moves(&w, rng.is_some());
            if moves.is_empty() {
                let e = out.entry(w).or_insert_with(|| self.field.zero());
                *e = &*e + &c;
                continue;
            }
            let mv = match rng.as_mut() {
                Some(r) => &moves[r.gen_range(0..moves.len())],
                None => &moves[0],
            };
            let produced = self.apply(&w, mv, &c);
            for (nw, nc) in produced {
                debug_assert!(
                    Key::new(nw.clone()) < key,
                    "rewrite must decrease the measure"
                );
                add(&mut work, nw, nc);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn apply(&self, w: &[u16], mv: &Move, c: &Fe) -> Vec<(Word, Fe)> {
        match *mv {
            Move::Swap(k) => {
                let (a, b) = (w[k] as usize, w[k + 1] as usize);
                let mut out = Vec::new();
                let mut swapped = w.to_vec();
                swapped.swap(k, k + 1);
                out.push((swapped, c.clone()));
                for (g, s) in self.alg.bracket_basis(a, b).iter().enumerate() {
                    if s.is_zero() {
                        continue;
                    }
                    let mut nw = Vec::with_capacity(w.len() - 1);
                    nw.extend_from_slice(&w[..k]);
                    nw.push(g as u16);
                    nw.extend_from_slice(&w[k + 2..]);
                    out.push((nw, c * s));
                }
                out
            }
            Move::Overflow { gen, start } => {
                let (bounds, relations) = self.overflow.expect("overflow rules");
                let b = bounds[gen] as usize;
                relations[gen]
                    .iter()
                    .map(|(rw, rc)| {
                        let mut nw = Vec::with_capacity(w.len() - b + rw.len());
                        nw.extend_from_slice(&w[..start]);
                        nw.extend_from_slice(rw);
                        nw.extend_from_slice(&w[start + b..]);
                        (nw, c * rc)
                    })
                    .collect()
            }
        }
    }
}

fn to_pbw(field: &Field, n: usize, map: BTreeMap<Word, Fe>) -> PbwElement {
    let mut out = PbwElement::zero(field);
    for (w, c) in map {
        out.add_term(index_of(&w, n), c);
    }
    out
}

/// PBW normal form in `U(L)` of a linear combination of words.
pub fn normal_form_u(alg: &LieAlgebra, terms: Vec<(Word, Fe)>, strategy: Strategy) -> PbwElement {
    let field = terms
        .iter()
        .map(|(_, c)| c.field())
        .find(|f| f.contains_field(alg.field()) && *f != alg.field())
        .cloned()
        .unwrap_or_else(|| alg.field().clone());
    let s = Straightener {
        alg,
        field: field.clone(),
        overflow: None,
    };
    to_pbw(&field, alg.dim(), s.normalize(terms, strategy))
}

/// Words of `z_i^k = (e_i^p - e_i^[p])^k` in `U(L)`, before straightening.
fn z_power_words(alg: &LieAlgebra, i: usize, k: usize) -> Result<Vec<(Word, Fe)>> {
    let field = alg.field();
    let p = field.characteristic() as usize;
    let mut z: Vec<(Word, Fe)> = vec![(vec![i as u16; p], field.one())];
    for (g, c) in alg.pmap_basis(i)?.iter().enumerate() {
        if !c.is_zero() {
            z.push((vec![g as u16], -c));
        }
    }
    let mut acc: Vec<(Word, Fe)> = vec![(Vec::new(), field.one())];
    for _ in 0..k {
        let mut next = Vec::with_capacity(acc.len() * z.len());
        for (w1, c1) in &acc {
            for (w2, c2) in &z {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                next.push((w, c1 * c2));
            }
        }
        acc = next;
        // Keep the expansion small by straightening in U(L) as we go.
        acc = normal_form_u(alg, acc, Strategy::Leftmost)
            .terms
            .into_iter()
            .map(|(a, c)| (word_of(&a), c))
            .collect();
    }
    Ok(acc)
}

/// Words of `f(z_i)` in `U(L)`, straightened in `U(L)`.
fn f_of_z(alg: &LieAlgebra, i: usize, f: &Poly) -> Result<PbwElement> {
    let mut terms = Vec::new();
    for (k, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (w, x) in z_power_words(alg, i, k)? {
            terms.push((w, c * &x));
        }
    }
    Ok(normal_form_u(alg, terms, Strategy::Leftmost))
}

/// The reduced enveloping algebra `u(L, f)` with PBW basis `e^a`,
/// `0 <= a_i < p * deg(f_i)`.
pub struct ReducedAlgebra {
    algebra: Arc<LieAlgebra>,
    family: FFamily,
    bounds: Vec<u32>,
    /// `e_i^(p d_i) - f_i(z_i)` in `U(L)` normal form.
    relations: Vec<Vec<(Word, Fe)>>,
    regular: OnceLock<Vec<Matrix>>,
}

impl fmt::Debug for ReducedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "u(L, f) over {} with bounds {:?}",
            self.algebra.field(),
            self.bounds
        )
    }
}

impl ReducedAlgebra {
    /// Builds `u(L, f)`. Fails if `L` has no `p`-map, if `f` has the wrong
    /// length or field, or if the `p`-map makes some `z_i` non-central.
    pub fn new(algebra: Arc<LieAlgebra>, family: FFamily) -> Result<ReducedAlgebra> {
        let n = algebra.dim();
        if !algebra.has_pmap() {
            return Err(Error::NoPMap);
        }
        if family.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} polynomials for a {}-dimensional algebra",
                family.len(),
                n
            )));
        }
        let family = family.to_field(algebra.field())?;
        let p = algebra.field().characteristic() as u32;
        let bounds: Vec<u32> = family.degrees().iter().map(|&d| p * d as u32).collect();
        let mut relations = Vec::with_capacity(n);
        for (i, &bound) in bounds.iter().enumerate() {
            let fz = f_of_z(&algebra, i, &family.polys[i])?;
            let lead = vec![i as u16; bound as usize];
            let mut rel: Vec<(Word, Fe)> = vec![(lead.clone(), algebra.field().one())];
            for (a, c) in fz.terms {
                rel.push((word_of(&a), -c));
            }
            let rel = normal_form_u(&algebra, rel, Strategy::Leftmost);
            let rel: Vec<(Word, Fe)> = rel
                .terms
                .into_iter()
                .map(|(a, c)| (word_of(&a), c))
                .collect();
            if rel.iter().any(|(w, _)| w.len() >= lead.len()) {
                return Err(Error::InvariantViolation(format!(
                    "relation for {} does not lower the degree",
                    algebra.labels()[i]
                )));
            }
            relations.push(rel);
        }
        let out = ReducedAlgebra {
            algebra,
            family,
            bounds,
            relations,
            regular: OnceLock::new(),
        };
        out.check_central()?;
        Ok(out)
    }

    /// `z_i e_j - e_j z_i` straightens to zero in `U(L)`.
    fn check_central(&self) -> Result<()> {
        let alg = &*self.algebra;
        let n = alg.dim();
        for i in 0..n {
            let z = z_power_words(alg, i, 1)?;
            for j in 0..n {
                let mut terms = Vec::new();
                for (w, c) in &z {
                    let mut a = w.clone();
                    a.push(j as u16);
                    terms.push((a, c.clone()));
                    let mut b = vec![j as u16];
                    b.extend_from_slice(w);
                    terms.push((b, -c));
                }
                if !normal_form_u(alg, terms, Strategy::Leftmost).is_zero() {
                    return Err(Error::InvariantViolation(format!(
                        "{}^p - {}^[p] is not central: the p-map is inconsistent",
                        alg.labels()[i],
                        alg.labels()[i]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn family(&self) -> &FFamily {
        &self.family
    }

    pub fn field(&self) -> &Field {
        self.algebra.field()
    }

    /// Exponent bounds `p * deg(f_i)`.
    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    /// `p^(sum deg f_i)`.
    pub fn dim(&self) -> usize {
        self.bounds.iter().map(|&b| b as usize).product()
    }

    /// PBW basis in lexicographic order of exponents.
    pub fn basis(&self) -> Vec<MultiIndex> {
        enumerate_indices(&self.bounds)
    }

    /// Position of a multi-index in [`ReducedAlgebra::basis`].
    pub fn basis_position(&self, alpha: &[u32]) -> usize {
        let mut pos = 0;
        for (a, b) in alpha.iter().zip(&self.bounds) {
            pos = pos * *b as usize + *a as usize;
        }
        pos
    }

    pub fn is_normal(&self, alpha: &[u32]) -> bool {
        alpha.iter().zip(&self.bounds).all(|(a, b)| a < b)
    }

    /// Normal form in `u(L, f)` of a linear combination of words.
    pub fn normal_form(&self, terms: Vec<(Word, Fe)>, strategy: Strategy) -> PbwElement {
        let field = terms
            .iter()
            .map(|(_, c)| c.field())
            .find(|f| f.contains_field(self.field()) && *f != self.field())
            .cloned()
            .unwrap_or_else(|| self.field().clone());
        let s = Straightener {
            alg: &self.algebra,
            field: field.clone(),
            overflow: Some((&self.bounds, &self.relations)),
        };
        to_pbw(&field, self.algebra.dim(), s.normalize(terms, strategy))
    }

    pub fn normal_form_word(&self, word: &[u16]) -> PbwElement {
        self.normal_form(
            vec![(word.to_vec(), self.field().one())],
            Strategy::Leftmost,
        )
    }

    /// `e_i^(p d_i) - f_i(z_i)`, the value the overflow rule substitutes.
    pub fn relation(&self, i: usize) -> PbwElement {
        let mut out = PbwElement::zero(self.field());
        for (w, c) in &self.relations[i] {
            out.add_term(index_of(w, self.algebra.dim()), c.clone());
        }
        out
    }

    pub fn mul(&self, a: &PbwElement, b: &PbwElement) -> PbwElement {
        let mut terms = Vec::with_capacity(a.terms.len() * b.terms.len());
        for (x, c) in &a.terms {
            for (y, d) in &b.terms {
                let mut w = word_of(x);
                w.extend(word_of(y));
                terms.push((w, c * d));
            }
        }
        self.normal_form(terms, Strategy::Leftmost)
    }

    /// `e_k * a`.
    pub fn left_mul_generator(&self, k: usize, a: &PbwElement) -> PbwElement {
        let terms = a
            .terms
            .iter()
            .map(|(x, c)| {
                let mut w = vec![k as u16];
                w.extend(word_of(x));
                (w, c.clone())
            })
            .collect();
        self.normal_form(terms, Strategy::Leftmost)
    }

    /// Matrices of left multiplication by the generators on the PBW basis.
    pub fn left_regular(&self) -> &[Matrix] {
        self.regular.get_or_init(|| {
            let basis = self.basis();
            let dim = basis.len();
            let field = self.field().clone();
            (0..self.algebra.dim())
                .map(|k| {
                    let mut m = Matrix::zeros(&field, dim, dim);
                    for (j, alpha) in basis.iter().enumerate() {
                        let mut w = vec![k as u16];
                        w.extend(word_of(alpha));
                        let nf = self.normal_form_word(&w);
                        for (beta, c) in nf.terms {
                            m.set(self.basis_position(&beta), j, c);
                        }
                    }
                    m
                })
                .collect()
        })
    }

    /// Image of `a` under `u(L, f) -> u(L, g)` for a family `g` dividing `f`.
    pub fn project_to(&self, target: &ReducedAlgebra, a: &PbwElement) -> Result<PbwElement> {
        if target.algebra != self.algebra {
            return Err(Error::InvalidInput(
                "projection between different Lie algebras".into(),
            ));
        }
        if !self.family.is_divisible_by(&target.family) {
            return Err(Error::NotDivisor(
                "target family does not divide the source family".into(),
            ));
        }
        let terms = a
            .terms
            .iter()
            .map(|(x, c)| (word_of(x), c.clone()))
            .collect();
        Ok(target.normal_form(terms, Strategy::Leftmost))
    }
}

/// All multi-indices below `bounds`, lexicographically.
pub fn enumerate_indices(bounds: &[u32]) -> Vec<MultiIndex> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        let mut next = Vec::with_capacity(out.len() * b as usize);
        for a in &out {
            for e in 0..b {
                let mut v = a.clone();
                v.push(e);
                next.push(v);
            }
        }
        out = next;
    }
    out
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

    #[test]
    fn swap_produces_bracket() {
        let alg = two_dim();
        let f = f3();
        // y x = x y - y
        let nf = normal_form_u(&alg, vec![(vec![1, 0], f.one())], Strategy::Leftmost);
        let mut expected = PbwElement::monomial(&f, vec![1, 1], f.one());
        expected.add_term(vec![0, 1], f.from_int(-1));
        assert_eq!(nf, expected);
    }

    #[test]
    fn restricted_enveloping_algebra_dimension() {
        let alg = two_dim();
        let u = ReducedAlgebra::new(alg.clone(), FFamily::restricted(&f3(), 2)).unwrap();
        assert_eq!(u.dim(), 9);
        // x^3 = x^[3] = x in u(L, t)
        let nf = u.normal_form_word(&[0, 0, 0]);
        assert_eq!(nf, PbwElement::monomial(&f3(), vec![1, 0], f3().one()));
    }

    #[test]
    fn inconsistent_pmap_is_rejected() {
        let alg = Arc::new(
            LieAlgebra::builder(&f3(), &["x", "y"])
                .bracket_ints(0, 1, &[0, 1])
                .zero_pmap()
                .build()
                .unwrap(),
        );
        let err = ReducedAlgebra::new(alg, FFamily::restricted(&f3(), 2)).unwrap_err();
        assert!(matches!(err, Error::InvariantViolation(_)));
    }

    #[test]
    fn display_uses_labels() {
        let f = f3();
        let mut e = PbwElement::monomial(&f, vec![2, 1], f.one());
        e.add_term(vec![1, 0], f.from_int(2));
        let labels = vec!["x".to_string(), "y".to_string()];
        assert_eq!(e.display_with(&labels), "x^2*y - x");
    }
}
