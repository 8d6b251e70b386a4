use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::element::Fe;
use super::field::Field;
use super::poly::Poly;
use crate::{Error, Result};

const FACTOR_SEED: u64 = 0x5eed_f00d;
const DIVISOR_CANDIDATE_LIMIT: usize = 100_000;
const IRREDUCIBLE_SEARCH_LIMIT: u64 = 1_000_000;

/// Factorisation `unit * prod(factor^mult)` into monic irreducibles, factors
/// sorted by degree and then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Fe,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn product(&self) -> Poly {
        let mut acc = Poly::constant(&self.unit);
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }

    /// Whether every irreducible factor is linear.
    pub fn splits(&self) -> bool {
        self.factors.iter().all(|(f, _)| f.degree() == Some(1))
    }
}

/// Factors a nonzero polynomial into monic irreducibles.
///
/// Complete over finite fields. Over rational function fields (and their
/// purely inseparable extensions) linear factors and inseparable structure are
/// found exactly; a remaining factor of degree at least 4 must be certified
/// irreducible by specialisation, otherwise [`Error::Unsupported`] is returned.
pub fn factor(f: &Poly) -> Result<Factorization> {
    let unit = f.lc().ok_or(Error::ZeroPolynomial)?.clone();
    let monic = f.monic()?;
    let mut acc = BTreeMap::new();
    factor_rec(&monic, 1, &mut acc)?;
    let mut factors: Vec<(Poly, usize)> = acc.into_iter().collect();
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(Factorization { unit, factors })
}

pub fn is_irreducible(f: &Poly) -> Result<bool> {
    match f.degree() {
        None | Some(0) => Ok(false),
        Some(1) => Ok(true),
        Some(_) => {
            let fac = factor(f)?;
            Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
        }
    }
}

/// Distinct roots of `f` in its coefficient field, sorted.
pub fn roots(f: &Poly) -> Result<Vec<Fe>> {
    let fac = factor(f)?;
    let mut out: Vec<Fe> = fac
        .factors
        .iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .map(|(g, _)| -g.coeff(0))
        .collect();
    out.sort();
    Ok(out)
}

/// A field over which `f` splits into linear factors, extending the
/// coefficient field of `f`. New algebraic generators are named `var`.
pub fn splitting_extension(f: &Poly, var: &str) -> Result<Field> {
    let field = f.field().clone();
    let fac = factor(f)?;
    if fac.splits() {
        return Ok(field);
    }
    if field.is_finite() {
        let degree = fac
            .factors
            .iter()
            .map(|(g, _)| g.degree().unwrap() as u128)
            .fold(1, super::lcm_u128) as usize;
        let modulus = match fac.factors.iter().find(|(g, _)| g.degree() == Some(degree)) {
            Some((g, _)) => g.clone(),
            None => first_irreducible(&field, degree)?,
        };
        let ext = Field::algebraic(&field, &modulus, var)?;
        debug_assert!(factor(&f.to_field(&ext)?)?.splits());
        return Ok(ext);
    }
    if field.is_function_field() {
        let p = field.characteristic() as usize;
        let mut levels = 0u32;
        for (g, _) in &fac.factors {
            let d = g.degree().unwrap();
            if d == 1 {
                continue;
            }
            let e = d.trailing_zeros_base(p);
            let binomial = g.term_count() == 2 && !g.coeff(0).is_zero();
            if !(binomial && p.pow(e) == d) {
                return Err(Error::Unsupported(format!(
                    "splitting field of {} over {}",
                    g, field
                )));
            }
            levels = levels.max(e);
        }
        let ext = Field::inseparable(&field, levels)?;
        if !factor(&f.to_field(&ext)?)?.splits() {
            return Err(Error::InvariantViolation(format!(
                "{} does not split over {}",
                f, ext
            )));
        }
        return Ok(ext);
    }
    Err(Error::Unsupported(format!(
        "splitting fields over {}",
        field
    )))
}

trait BaseLog {
    fn trailing_zeros_base(self, p: usize) -> u32;
}

impl BaseLog for usize {
    /// Largest `e` with `p^e` dividing `self`.
    fn trailing_zeros_base(mut self, p: usize) -> u32 {
        let mut e = 0;
        while self > 0 && self.is_multiple_of(p) {
            self /= p;
            e += 1;
        }
        e
    }
}

/// The first monic irreducible polynomial of the given degree in index order.
fn first_irreducible(field: &Field, degree: usize) -> Result<Poly> {
    let q = field.order().expect("finite field") as u64;
    let total = (q as u128).saturating_pow(degree as u32);
    let limit = total.min(IRREDUCIBLE_SEARCH_LIMIT as u128) as u64;
    for idx in 0..limit {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut x = idx;
        for _ in 0..degree {
            coeffs.push(field.from_index(x % q)?);
            x /= q;
        }
        coeffs.push(field.one());
        let g = Poly::from_coeffs(field, coeffs);
        if is_irreducible(&g)? {
            return Ok(g);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(FACTOR_SEED);
    loop {
        let mut coeffs: Vec<Fe> = (0..degree).map(|_| field.random(&mut rng)).collect();
        coeffs.push(field.one());
        let g = Poly::from_coeffs(field, coeffs);
        if is_irreducible(&g)? {
            return Ok(g);
        }
    }
}

fn add_factor(acc: &mut BTreeMap<Poly, usize>, f: Poly, m: usize) {
    *acc.entry(f).or_insert(0) += m;
}

fn factor_rec(f: &Poly, mult: usize, acc: &mut BTreeMap<Poly, usize>) -> Result<()> {
    let Some(deg) = f.degree() else {
        return Err(Error::ZeroPolynomial);
    };
    if deg == 0 {
        return Ok(());
    }
    if deg == 1 {
        add_factor(acc, f.clone(), mult);
        return Ok(());
    }
    let d = f.derivative();
    if !d.is_zero() {
        let g = f.gcd(&d);
        if g.degree() == Some(0) {
            for h in factor_separable(f)? {
                add_factor(acc, h, mult);
            }
        } else {
            factor_rec(&f.div_exact(&g), mult, acc)?;
            factor_rec(&g, mult, acc)?;
        }
        return Ok(());
    }
    let field = f.field();
    let p = field.characteristic() as usize;
    let h = f.deflate(p).expect("zero derivative");
    if let Some(r) = coefficient_roots(&h) {
        return factor_rec(&r, mult * p, acc);
    }
    let inner = factor(&h)?;
    for (g, e) in inner.factors {
        match coefficient_roots(&g) {
            Some(r) => factor_rec(&r, mult * e * p, acc)?,
            None => add_factor(acc, g.inflate(p), mult * e),
        }
    }
    Ok(())
}

/// The polynomial whose coefficients are the `p`-th roots of those of `f`.
fn coefficient_roots(f: &Poly) -> Option<Poly> {
    let field = f.field();
    let coeffs: Option<Vec<Fe>> = f.coeffs().iter().map(|c| field.pth_root(c)).collect();
    Some(Poly::from_coeffs(field, coeffs?))
}

/// Factors a monic squarefree separable polynomial.
fn factor_separable(f: &Poly) -> Result<Vec<Poly>> {
    if f.degree() == Some(1) {
        return Ok(vec![f.clone()]);
    }
    let field = f.field();
    if field.is_finite() {
        return Ok(factor_finite(f));
    }
    if field.is_function_field() {
        return factor_function_field(f);
    }
    Err(Error::Unsupported(format!(
        "factoring {} over {}",
        f, field
    )))
}

fn factor_finite(f: &Poly) -> Vec<Poly> {
    let field = f.field();
    let q = field.order().unwrap();
    let x = Poly::x(field);
    let mut rng = ChaCha8Rng::seed_from_u64(FACTOR_SEED);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(q, &rest);
        let g = rest.gcd(&(&h - &x));
        if g.degree() != Some(0) {
            equal_degree(&g, d, q, &mut rng, &mut out);
            rest = rest.div_exact(&g);
            h = h.rem(&rest).unwrap();
        }
        d += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        out.push(rest);
    }
    out
}

fn equal_degree(g: &Poly, d: usize, q: u128, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let n = g.degree().unwrap();
    if n == d {
        out.push(g.clone());
        return;
    }
    let field = g.field();
    let p = field.characteristic();
    loop {
        let coeffs: Vec<Fe> = (0..n).map(|_| field.random(rng)).collect();
        let a = Poly::from_coeffs(field, coeffs);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            let m = q.trailing_zeros() as usize * d;
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..m {
                t = (&t * &t).rem(g).unwrap();
                acc = &acc + &t;
            }
            acc
        } else {
            let mut norm = a.rem(g).unwrap();
            let mut t = norm.clone();
            for _ in 1..d {
                t = t.pow_mod(q, g);
                norm = (&norm * &t).rem(g).unwrap();
            }
            &norm.pow_mod((q - 1) / 2, g) - &Poly::one(field)
        };
        let c = g.gcd(&b);
        let k = c.degree().unwrap_or(0);
        if k > 0 && k < n {
            equal_degree(&c, d, q, rng, out);
            equal_degree(&g.div_exact(&c), d, q, rng, out);
            return;
        }
    }
}

fn factor_function_field(f: &Poly) -> Result<Vec<Poly>> {
    let field = f.field();
    let mut out = Vec::new();
    let mut rest = f.clone();
    for r in rational_roots(f)? {
        let lin = Poly::from_coeffs(field, vec![-&r, field.one()]);
        rest = rest.div_exact(&lin);
        out.push(lin);
    }
    match rest.degree() {
        Some(0) => {}
        Some(2) | Some(3) => out.push(rest),
        _ => {
            if !specialization_certificate(&rest)? {
                return Err(Error::Unsupported(format!(
                    "cannot decide irreducibility of {} over {}",
                    rest, field
                )));
            }
            out.push(rest);
        }
    }
    Ok(out)
}

/// Roots in `F_q(s)` of a monic squarefree polynomial, via the rational root
/// theorem in `F_q[s]`.
fn rational_roots(f: &Poly) -> Result<Vec<Fe>> {
    let field = f.field();
    let base = field.coeff_field().unwrap();
    let n = f.degree().unwrap();
    let mut den = Poly::one(&base);
    for c in f.coeffs() {
        let (_, d) = c.fraction().unwrap();
        den = den.lcm(d);
    }
    let a: Vec<Poly> = f
        .coeffs()
        .iter()
        .map(|c| {
            let (num, d) = c.fraction().unwrap();
            num * &den.div_exact(d)
        })
        .collect();
    let lead = a[n].clone();
    if a[0].is_zero() {
        let mut rest_roots = rational_roots(&f.div_exact(&Poly::x(field)))?;
        rest_roots.push(field.zero());
        rest_roots.sort();
        return Ok(rest_roots);
    }
    // u = lead * t is a root of the monic u^n + a_{n-1} u^{n-1} + a_{n-2} lead u^{n-2} + ...
    let constant = &a[0] * &lead.pow(n - 1);
    let divisors = monic_divisors(&constant)?;
    let units = base.elements(u128::MAX).expect("finite base");
    if divisors.len() * (units.len() - 1) > DIVISOR_CANDIDATE_LIMIT {
        return Err(Error::Unsupported(format!(
            "too many candidate roots for {}",
            f
        )));
    }
    let lead_fe = field.from_fraction(&lead, &Poly::one(&base))?;
    let mut found = Vec::new();
    for dv in &divisors {
        for u in units.iter().filter(|u| !u.is_zero()) {
            let cand = field.from_fraction(&dv.scale(u), &Poly::one(&base))?;
            let t = &cand / &lead_fe;
            if f.eval(&t).is_zero() && !found.contains(&t) {
                found.push(t);
            }
        }
    }
    found.sort();
    Ok(found)
}

fn monic_divisors(c: &Poly) -> Result<Vec<Poly>> {
    let fac = factor(c)?;
    let mut out = vec![Poly::one(c.field())];
    for (g, m) in &fac.factors {
        let mut next = Vec::with_capacity(out.len() * (m + 1));
        for d in &out {
            let mut power = d.clone();
            next.push(power.clone());
            for _ in 0..*m {
                power = &power * g;
                next.push(power.clone());
            }
        }
        out = next;
        if out.len() > DIVISOR_CANDIDATE_LIMIT {
            return Err(Error::Unsupported(format!("too many divisors of {}", c)));
        }
    }
    Ok(out)
}

/// Tries to certify irreducibility of a monic polynomial over `F_q(s)` by
/// finding `c` in `F_q` where all coefficients are defined and the reduction
/// mod `s - c` is irreducible of the same degree.
fn specialization_certificate(f: &Poly) -> Result<bool> {
    let field = f.field();
    let base = field.coeff_field().unwrap();
    let Some(points) = base.elements(1 << 12) else {
        return Ok(false);
    };
    'points: for c in points {
        let mut coeffs = Vec::with_capacity(f.coeffs().len());
        for a in f.coeffs() {
            let (n, d) = a.fraction().unwrap();
            let dv = d.eval(&c);
            if dv.is_zero() {
                continue 'points;
            }
            coeffs.push(&n.eval(&c) / &dv);
        }
        let g = Poly::from_coeffs(&base, coeffs);
        if g.degree() == f.degree() && is_irreducible(&g)? {
            return Ok(true);
        }
    }
    Ok(false)
}
