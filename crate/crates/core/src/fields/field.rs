use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;

use super::element::{Fe, Repr};
use super::factor;
use super::poly::Poly;
use super::tables::{FastOps, Tables, TABLE_LIMIT};
use super::{is_prime, prime_factors};
use crate::{Error, Result};

/// Descriptor of a field in a tower.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

struct Inner {
    kind: FieldKind,
    order: Option<u128>,
    tables: OnceLock<Option<Arc<Tables>>>,
}

#[derive(Debug, PartialEq, Eq)]
pub enum FieldKind {
    /// `F_p`.
    Prime { p: u64 },
    /// `base[var]/(modulus)` with a monic irreducible modulus.
    Algebraic {
        base: Field,
        modulus: Poly,
        var: String,
    },
    /// `base(var)`, the rational function field over a finite base.
    Rational { base: Field, var: String },
    /// `base(var^(1/p^k))` for a rational function field `base`; stored as the
    /// rational function field in `s` with `var = s^(p^k)`.
    Inseparable { base: Field, k: u32 },
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.kind == other.0.kind
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            FieldKind::Prime { p } => write!(f, "F_{}", p),
            FieldKind::Algebraic { base, modulus, var } => {
                write!(f, "{}[{}]/({})", base, var, modulus.display_with(var))
            }
            FieldKind::Rational { base, var } => write!(f, "{}({})", base, var),
            FieldKind::Inseparable { base, k } => match base.kind() {
                FieldKind::Rational { base: b, var } => {
                    let q = (self.characteristic() as u128).pow(*k);
                    write!(f, "{}({}^(1/{}))", b, var, q)
                }
                _ => write!(f, "{}^(1/p^{})", base, k),
            },
        }
    }
}

impl Field {
    fn from_kind(kind: FieldKind, order: Option<u128>) -> Field {
        Field(Arc::new(Inner {
            kind,
            order,
            tables: OnceLock::new(),
        }))
    }

    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) || p >= (1 << 31) {
            return Err(Error::InvalidField(format!(
                "{} is not a supported prime",
                p
            )));
        }
        Ok(Field::from_kind(FieldKind::Prime { p }, Some(p as u128)))
    }

    /// `base[var]/(modulus)`. The modulus is made monic and must be irreducible.
    pub fn algebraic(base: &Field, modulus: &Poly, var: &str) -> Result<Field> {
        let m = modulus.to_field(base)?;
        let d = m.degree().ok_or(Error::ZeroPolynomial)?;
        if d == 0 {
            return Err(Error::InvalidField("constant modulus".into()));
        }
        let m = m.monic()?;
        if !factor::is_irreducible(&m)? {
            return Err(Error::InvalidField(format!(
                "modulus {} is reducible over {}",
                m.display_with(var),
                base
            )));
        }
        let order = match base.order() {
            Some(q) => {
                let o = q
                    .checked_pow(d as u32)
                    .filter(|o| *o < (1u128 << 62))
                    .ok_or_else(|| Error::Unsupported("finite field too large".into()))?;
                Some(o)
            }
            None => None,
        };
        Ok(Field::from_kind(
            FieldKind::Algebraic {
                base: base.clone(),
                modulus: m,
                var: var.to_string(),
            },
            order,
        ))
    }

    /// The rational function field `base(var)`; `base` must be finite.
    pub fn rational(base: &Field, var: &str) -> Result<Field> {
        if !base.is_finite() {
            return Err(Error::Unsupported(
                "rational function fields are supported over finite bases only".into(),
            ));
        }
        Ok(Field::from_kind(
            FieldKind::Rational {
                base: base.clone(),
                var: var.to_string(),
            },
            None,
        ))
    }

    /// `base(var^(1/p^k))`. Accepts a rational function field or an existing
    /// inseparable extension (whose exponent is then increased by `k`).
    pub fn inseparable(base: &Field, k: u32) -> Result<Field> {
        match base.kind() {
            FieldKind::Rational { .. } => {
                if k == 0 {
                    Ok(base.clone())
                } else {
                    Ok(Field::from_kind(
                        FieldKind::Inseparable {
                            base: base.clone(),
                            k,
                        },
                        None,
                    ))
                }
            }
            FieldKind::Inseparable { base: r, k: k0 } => Field::inseparable(r, k0 + k),
            _ => Err(Error::InvalidField(format!(
                "inseparable extension needs a rational function field, got {}",
                base
            ))),
        }
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0.kind
    }

    pub fn characteristic(&self) -> u64 {
        match &self.0.kind {
            FieldKind::Prime { p } => *p,
            FieldKind::Algebraic { base, .. }
            | FieldKind::Rational { base, .. }
            | FieldKind::Inseparable { base, .. } => base.characteristic(),
        }
    }

    /// Number of elements, for finite fields.
    pub fn order(&self) -> Option<u128> {
        self.0.order
    }

    pub fn is_finite(&self) -> bool {
        self.0.order.is_some()
    }

    pub fn prime_field(&self) -> Field {
        match &self.0.kind {
            FieldKind::Prime { .. } => self.clone(),
            FieldKind::Algebraic { base, .. }
            | FieldKind::Rational { base, .. }
            | FieldKind::Inseparable { base, .. } => base.prime_field(),
        }
    }

    /// Field over which element representations are polynomials.
    pub fn coeff_field(&self) -> Option<Field> {
        match &self.0.kind {
            FieldKind::Prime { .. } => None,
            FieldKind::Algebraic { base, .. } | FieldKind::Rational { base, .. } => {
                Some(base.clone())
            }
            FieldKind::Inseparable { base, .. } => base.coeff_field(),
        }
    }

    /// Whether rational-function arithmetic applies (rational or inseparable).
    pub(crate) fn is_function_field(&self) -> bool {
        matches!(
            self.0.kind,
            FieldKind::Rational { .. } | FieldKind::Inseparable { .. }
        )
    }

    fn is_finite_algebraic(&self) -> bool {
        matches!(self.0.kind, FieldKind::Algebraic { .. }) && self.is_finite()
    }

    /// Index arithmetic for prime fields and tabulated finite fields.
    pub(crate) fn fast_ops(&self) -> Option<FastOps> {
        match &self.0.kind {
            FieldKind::Prime { p } => Some(FastOps::Prime(*p)),
            _ => {
                self.tables()?;
                self.0.tables.get()?.clone().map(FastOps::Table)
            }
        }
    }

    fn tables(&self) -> Option<&Tables> {
        if !self.is_finite_algebraic() {
            return None;
        }
        self.0
            .tables
            .get_or_init(|| {
                let q = self.0.order?;
                if q > TABLE_LIMIT {
                    return None;
                }
                Some(Arc::new(self.build_tables(q as u64)))
            })
            .as_deref()
    }

    fn build_tables(&self, q: u64) -> Tables {
        let p = self.characteristic();
        let mut digits = 0;
        let mut x = 1;
        while x < q {
            x *= p;
            digits += 1;
        }
        let n = (q - 1) as u128;
        let factors = prime_factors(n);
        let gen = (2..q.max(3))
            .map(|c| if q == 2 { 1 } else { c })
            .find(|&c| {
                let r = Repr::Int(c);
                factors
                    .iter()
                    .all(|&f| self.pow_generic(&r, n / f) != Repr::Int(1))
            })
            .expect("finite field has a primitive element");
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = Repr::Int(1);
        for _ in 0..n {
            powers.push(match cur {
                Repr::Int(v) => v,
                _ => unreachable!(),
            });
            cur = self.mul_generic(&cur, &Repr::Int(gen));
        }
        Tables::new(q, p, digits, powers)
    }

    // ---- constructors of elements -------------------------------------

    pub fn zero(&self) -> Fe {
        let r = match &self.0.kind {
            FieldKind::Prime { .. } => Repr::Int(0),
            FieldKind::Algebraic { base, .. } => {
                if self.is_finite() {
                    Repr::Int(0)
                } else {
                    Repr::Residue(Poly::zero(base))
                }
            }
            _ => {
                let c = self.coeff_field().unwrap();
                Repr::Frac(Poly::zero(&c), Poly::one(&c))
            }
        };
        Fe::raw(self.clone(), r)
    }

    pub fn one(&self) -> Fe {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Fe {
        let p = self.characteristic() as i64;
        let v = n.rem_euclid(p) as u64;
        let r = match &self.0.kind {
            FieldKind::Prime { .. } => Repr::Int(v),
            FieldKind::Algebraic { base, .. } => {
                if self.is_finite() {
                    Repr::Int(v)
                } else {
                    Repr::Residue(Poly::constant(&base.from_int(n)))
                }
            }
            _ => {
                let c = self.coeff_field().unwrap();
                Repr::Frac(Poly::constant(&c.from_int(n)), Poly::one(&c))
            }
        };
        Fe::raw(self.clone(), r)
    }

    /// Finite-field element with the given index (see [`Fe::index`]).
    pub fn from_index(&self, idx: u64) -> Result<Fe> {
        match self.0.order {
            Some(q) if (idx as u128) < q => Ok(Fe::raw(self.clone(), Repr::Int(idx))),
            _ => Err(Error::InvalidInput(format!(
                "no element with index {} in {}",
                idx, self
            ))),
        }
    }

    /// The adjoined generator: the class of `var` for algebraic extensions, the
    /// indeterminate for rational function fields, and the root `var^(1/p^k)`
    /// for inseparable extensions.
    pub fn generator(&self) -> Option<Fe> {
        match &self.0.kind {
            FieldKind::Prime { .. } => None,
            FieldKind::Algebraic { base, .. } => Some(self.from_residue(&Poly::x(base))),
            _ => {
                let c = self.coeff_field().unwrap();
                Some(Fe::raw(
                    self.clone(),
                    Repr::Frac(Poly::x(&c), Poly::one(&c)),
                ))
            }
        }
    }

    /// Name of the adjoined variable, if any.
    pub fn var(&self) -> Option<&str> {
        match &self.0.kind {
            FieldKind::Algebraic { var, .. } | FieldKind::Rational { var, .. } => Some(var),
            FieldKind::Inseparable { base, .. } => base.var(),
            FieldKind::Prime { .. } => None,
        }
    }

    /// Element of an algebraic extension from a polynomial over its base.
    pub fn from_residue(&self, r: &Poly) -> Fe {
        match &self.0.kind {
            FieldKind::Algebraic { base, modulus, .. } => {
                let r = r.to_field(base).expect("residue over base field");
                let r = r.rem(modulus).expect("nonzero modulus");
                if self.is_finite() {
                    Fe::raw(self.clone(), Repr::Int(self.encode(&r)))
                } else {
                    Fe::raw(self.clone(), Repr::Residue(r))
                }
            }
            _ => panic!("from_residue on non-algebraic field {}", self),
        }
    }

    /// Element `num/den` of a rational function field (or inseparable extension,
    /// in the root variable).
    pub fn from_fraction(&self, num: &Poly, den: &Poly) -> Result<Fe> {
        if !self.is_function_field() {
            return Err(Error::InvalidInput(format!(
                "{} is not a function field",
                self
            )));
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.coeff_field().unwrap();
        let r = self.make_frac(num.to_field(&c)?, den.to_field(&c)?);
        Ok(Fe::raw(self.clone(), r))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        match &self.0.kind {
            FieldKind::Prime { .. } => {
                let q = self.0.order.unwrap() as u64;
                Fe::raw(self.clone(), Repr::Int(rng.gen_range(0..q)))
            }
            FieldKind::Algebraic { base, modulus, .. } => {
                if let Some(q) = self.0.order {
                    Fe::raw(self.clone(), Repr::Int(rng.gen_range(0..q as u64)))
                } else {
                    let d = modulus.degree().unwrap();
                    let coeffs = (0..d).map(|_| base.random(rng)).collect();
                    self.from_residue(&Poly::from_coeffs(base, coeffs))
                }
            }
            _ => {
                let c = self.coeff_field().unwrap();
                let nd = rng.gen_range(0..3);
                let num = Poly::from_coeffs(&c, (0..=nd).map(|_| c.random(rng)).collect());
                let den = if rng.gen_bool(0.5) {
                    Poly::one(&c)
                } else {
                    Poly::from_coeffs(&c, vec![c.random(rng), c.one()])
                };
                self.from_fraction(&num, &den).unwrap()
            }
        }
    }

    /// All elements of a finite field of order at most `limit`.
    pub fn elements(&self, limit: u128) -> Option<Vec<Fe>> {
        let q = self.0.order?;
        if q > limit {
            return None;
        }
        Some(
            (0..q as u64)
                .map(|i| Fe::raw(self.clone(), Repr::Int(i)))
                .collect(),
        )
    }

    // ---- finite-field index encoding -----------------------------------

    pub(crate) fn decode(&self, idx: u64) -> Poly {
        match &self.0.kind {
            FieldKind::Algebraic { base, modulus, .. } => {
                let qb = base.order().expect("finite base") as u64;
                let d = modulus.degree().unwrap();
                let mut coeffs = Vec::with_capacity(d);
                let mut x = idx;
                for _ in 0..d {
                    coeffs.push(Fe::raw(base.clone(), Repr::Int(x % qb)));
                    x /= qb;
                }
                Poly::from_coeffs(base, coeffs)
            }
            _ => panic!("decode on {}", self),
        }
    }

    pub(crate) fn encode(&self, r: &Poly) -> u64 {
        match &self.0.kind {
            FieldKind::Algebraic { base, .. } => {
                let qb = base.order().expect("finite base") as u64;
                let mut idx = 0u64;
                for c in r.coeffs().iter().rev() {
                    idx = idx * qb + c.index().expect("finite coefficient");
                }
                idx
            }
            _ => panic!("encode on {}", self),
        }
    }

    // ---- arithmetic on representations ----------------------------------

    fn make_frac(&self, num: Poly, den: Poly) -> Repr {
        if num.is_zero() {
            let c = num.field().clone();
            return Repr::Frac(num, Poly::one(&c));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let lc = den.lc().unwrap().inv().unwrap();
        Repr::Frac(num.scale(&lc), den.scale(&lc))
    }

    fn mismatch(&self) -> ! {
        panic!("element representation does not match field {}", self)
    }

    pub(crate) fn add_r(&self, a: &Repr, b: &Repr) -> Repr {
        match (&self.0.kind, a, b) {
            (FieldKind::Prime { p }, Repr::Int(x), Repr::Int(y)) => Repr::Int((x + y) % p),
            (FieldKind::Algebraic { .. }, Repr::Int(x), Repr::Int(y)) => match self.tables() {
                Some(t) => Repr::Int(t.add(*x, *y)),
                None => Repr::Int(self.encode(&(&self.decode(*x) + &self.decode(*y)))),
            },
            (FieldKind::Algebraic { .. }, Repr::Residue(x), Repr::Residue(y)) => {
                Repr::Residue(x + y)
            }
            (_, Repr::Frac(n1, d1), Repr::Frac(n2, d2)) => {
                if d1 == d2 {
                    self.make_frac(n1 + n2, d1.clone())
                } else {
                    self.make_frac(&(n1 * d2) + &(n2 * d1), d1 * d2)
                }
            }
            _ => self.mismatch(),
        }
    }

    pub(crate) fn neg_r(&self, a: &Repr) -> Repr {
        match (&self.0.kind, a) {
            (FieldKind::Prime { p }, Repr::Int(x)) => Repr::Int((p - x) % p),
            (FieldKind::Algebraic { .. }, Repr::Int(x)) => match self.tables() {
                Some(t) => Repr::Int(t.neg(*x)),
                None => Repr::Int(self.encode(&-&self.decode(*x))),
            },
            (FieldKind::Algebraic { .. }, Repr::Residue(x)) => Repr::Residue(-x),
            (_, Repr::Frac(n, d)) => Repr::Frac(-n, d.clone()),
            _ => self.mismatch(),
        }
    }

    pub(crate) fn mul_r(&self, a: &Repr, b: &Repr) -> Repr {
        match (&self.0.kind, a, b) {
            (FieldKind::Prime { p }, Repr::Int(x), Repr::Int(y)) => Repr::Int((x * y) % p),
            (FieldKind::Algebraic { .. }, Repr::Int(x), Repr::Int(y)) => match self.tables() {
                Some(t) => Repr::Int(t.mul(*x, *y)),
                None => self.mul_generic(a, b),
            },
            (FieldKind::Algebraic { .. }, Repr::Residue(_), Repr::Residue(_)) => {
                self.mul_generic(a, b)
            }
            (_, Repr::Frac(n1, d1), Repr::Frac(n2, d2)) => {
                if n1.is_zero() || n2.is_zero() {
                    let c = n1.field().clone();
                    return Repr::Frac(Poly::zero(&c), Poly::one(&c));
                }
                self.make_frac(n1 * n2, d1 * d2)
            }
            _ => self.mismatch(),
        }
    }

    fn mul_generic(&self, a: &Repr, b: &Repr) -> Repr {
        match (&self.0.kind, a, b) {
            (FieldKind::Algebraic { modulus, .. }, Repr::Int(x), Repr::Int(y)) => {
                let r = (&self.decode(*x) * &self.decode(*y)).rem(modulus).unwrap();
                Repr::Int(self.encode(&r))
            }
            (FieldKind::Algebraic { modulus, .. }, Repr::Residue(x), Repr::Residue(y)) => {
                Repr::Residue((x * y).rem(modulus).unwrap())
            }
            _ => self.mul_r(a, b),
        }
    }

    /// Inverse of a nonzero representation.
    pub(crate) fn inv_r(&self, a: &Repr) -> Repr {
        match (&self.0.kind, a) {
            (FieldKind::Prime { p }, Repr::Int(x)) => Repr::Int(modpow(*x, p - 2, *p)),
            (FieldKind::Algebraic { modulus, .. }, Repr::Int(x)) => match self.tables() {
                Some(t) => Repr::Int(t.inv(*x)),
                None => {
                    let r = residue_inverse(&self.decode(*x), modulus);
                    Repr::Int(self.encode(&r))
                }
            },
            (FieldKind::Algebraic { modulus, .. }, Repr::Residue(x)) => {
                Repr::Residue(residue_inverse(x, modulus))
            }
            (_, Repr::Frac(n, d)) => self.make_frac(d.clone(), n.clone()),
            _ => self.mismatch(),
        }
    }

    pub(crate) fn pow_r(&self, a: &Repr, e: u128) -> Repr {
        match (&self.0.kind, a) {
            (FieldKind::Prime { p }, Repr::Int(x)) => {
                let e = if *x == 0 || e == 0 {
                    e
                } else {
                    ((e - 1) % (*p as u128 - 1)) + 1
                };
                Repr::Int(modpow(*x, e as u64, *p))
            }
            (FieldKind::Algebraic { .. }, Repr::Int(x)) => match self.tables() {
                Some(t) => Repr::Int(t.pow(*x, e)),
                None => self.pow_generic(a, e),
            },
            _ => self.pow_generic(a, e),
        }
    }

    fn pow_generic(&self, a: &Repr, mut e: u128) -> Repr {
        let mut result = self.one().repr().clone();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_generic(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_generic(&base, &base);
            }
        }
        result
    }

    // ---- towers ----------------------------------------------------------

    /// Whether `sub` embeds into `self` along the directed tower.
    pub fn contains_field(&self, sub: &Field) -> bool {
        if self == sub {
            return true;
        }
        match &self.0.kind {
            FieldKind::Prime { .. } => false,
            FieldKind::Algebraic { base, .. } | FieldKind::Rational { base, .. } => {
                base.contains_field(sub)
            }
            FieldKind::Inseparable { base, k } => {
                if let FieldKind::Inseparable { base: b2, k: k2 } = sub.kind() {
                    if b2 == base && k2 <= k {
                        return true;
                    }
                }
                base.contains_field(sub)
            }
        }
    }

    /// Canonical image of `a` in `self`.
    pub fn embed(&self, a: &Fe) -> Result<Fe> {
        if a.field() == self {
            return Ok(a.clone());
        }
        let incompatible = || Error::IncompatibleFields(a.field().to_string(), self.to_string());
        match &self.0.kind {
            FieldKind::Prime { .. } => Err(incompatible()),
            FieldKind::Algebraic { base, .. } => {
                let x = base.embed(a).map_err(|_| incompatible())?;
                Ok(self.from_residue(&Poly::constant(&x)))
            }
            FieldKind::Rational { base, .. } => {
                let x = base.embed(a).map_err(|_| incompatible())?;
                Ok(Fe::raw(
                    self.clone(),
                    Repr::Frac(Poly::constant(&x), Poly::one(base)),
                ))
            }
            FieldKind::Inseparable { base, k } => {
                let p = self.characteristic() as usize;
                if let FieldKind::Inseparable { base: b2, k: k2 } = a.field().kind() {
                    if b2 == base && k2 <= k {
                        let (n, d) = a.fraction().unwrap();
                        let m = p.pow(k - k2);
                        return Ok(Fe::raw(
                            self.clone(),
                            Repr::Frac(n.inflate(m), d.inflate(m)),
                        ));
                    }
                }
                let x = base.embed(a).map_err(|_| incompatible())?;
                let (n, d) = x.fraction().unwrap();
                let m = p.pow(*k);
                Ok(Fe::raw(
                    self.clone(),
                    Repr::Frac(n.inflate(m), d.inflate(m)),
                ))
            }
        }
    }

    pub(crate) fn frobenius(&self, a: &Fe) -> Fe {
        let p = self.characteristic();
        match a.repr() {
            Repr::Frac(n, d) => Fe::raw(
                self.clone(),
                Repr::Frac(frobenius_poly(n), frobenius_poly(d)),
            ),
            _ => a.pow(p),
        }
    }

    /// `p`-th root of `a` inside `self`, if it exists.
    pub fn pth_root(&self, a: &Fe) -> Option<Fe> {
        let p = self.characteristic();
        match (&self.0.kind, a.repr()) {
            (FieldKind::Prime { .. }, _) => Some(a.clone()),
            (FieldKind::Algebraic { .. }, Repr::Int(_)) => {
                let q = self.0.order.unwrap();
                Some(a.pow_u128(q / p as u128))
            }
            (_, Repr::Frac(n, d)) => {
                let n = root_poly(n, p)?;
                let d = root_poly(d, p)?;
                Some(Fe::raw(self.clone(), Repr::Frac(n, d)))
            }
            _ => None,
        }
    }

    pub(crate) fn frobenius_root(&self, a: &Fe, allow_enlarge: bool) -> Result<Fe> {
        if let Some(r) = self.pth_root(a) {
            return Ok(r);
        }
        if !self.is_function_field() {
            return Err(Error::Unsupported(format!("p-th roots in {}", self)));
        }
        if !allow_enlarge {
            return Err(Error::ExtensionNeeded(a.to_string()));
        }
        let bigger = Field::inseparable(self, 1)?;
        let b = bigger.embed(a)?;
        bigger
            .pth_root(&b)
            .ok_or_else(|| Error::InvariantViolation("p-th root after enlarging".into()))
    }

    /// Orbit of `a` under the automorphisms of its field fixing `base`.
    pub fn galois_orbit(a: &Fe, base: &Field) -> Result<Vec<Fe>> {
        let e = a.field();
        if !e.contains_field(base) {
            return Err(Error::NotAlgebraic(a.to_string(), base.to_string()));
        }
        if e == base {
            return Ok(vec![a.clone()]);
        }
        if let (Some(_), Some(qb)) = (e.order(), base.order()) {
            let mut orbit = vec![a.clone()];
            let mut x = a.pow_u128(qb);
            while &x != a {
                orbit.push(x.clone());
                x = x.pow_u128(qb);
            }
            orbit.sort();
            return Ok(orbit);
        }
        if let FieldKind::Inseparable { .. } = e.kind() {
            if base.is_function_field() {
                return Ok(vec![a.clone()]);
            }
        }
        Err(Error::NotAlgebraic(a.to_string(), base.to_string()))
    }

    /// Degree `[self : base]` for finite towers and inseparable extensions.
    pub fn degree_over(&self, base: &Field) -> Result<usize> {
        if self == base {
            return Ok(1);
        }
        match &self.0.kind {
            FieldKind::Algebraic {
                base: b, modulus, ..
            } => Ok(modulus.degree().unwrap() * b.degree_over(base)?),
            FieldKind::Inseparable { k, .. } => {
                let k0 = self.inseparable_level_of(base)?;
                Ok((self.characteristic() as usize).pow(k - k0))
            }
            _ => Err(Error::NotAlgebraic(self.to_string(), base.to_string())),
        }
    }

    fn inseparable_level_of(&self, base: &Field) -> Result<u32> {
        if let FieldKind::Inseparable { base: r, .. } = &self.0.kind {
            if base == r {
                return Ok(0);
            }
            if let FieldKind::Inseparable { base: r2, k: k2 } = base.kind() {
                if r2 == r {
                    return Ok(*k2);
                }
            }
        }
        Err(Error::NotAlgebraic(self.to_string(), base.to_string()))
    }

    /// Coordinates of `a` over `base` with respect to the power basis of the
    /// tower (`1, g, g^2, ...` at each level, innermost level varying fastest).
    pub fn coords_over(&self, a: &Fe, base: &Field) -> Result<Vec<Fe>> {
        let a = self.embed(a)?;
        if self == base {
            return Ok(vec![a]);
        }
        match &self.0.kind {
            FieldKind::Algebraic {
                base: b, modulus, ..
            } => {
                let d = modulus.degree().unwrap();
                let r = a.residue().unwrap();
                let mut out = Vec::new();
                for j in 0..d {
                    out.extend(b.coords_over(&r.coeff(j), base)?);
                }
                Ok(out)
            }
            FieldKind::Inseparable { k, .. } => {
                let k0 = self.inseparable_level_of(base)?;
                let p = self.characteristic() as usize;
                let m = p.pow(k - k0);
                let (n, d) = a.fraction().unwrap();
                // d(s)^m lies in the subfield since m is a power of p.
                let dm = d.pow(m);
                let num = n * &d.pow(m - 1);
                let den_sub = dm.deflate(m).expect("p-power of a polynomial");
                let mut parts = vec![Vec::new(); m];
                for (e, c) in num.coeffs().iter().enumerate() {
                    let j = e % m;
                    let slot = &mut parts[j];
                    let pos = e / m;
                    if slot.len() <= pos {
                        slot.resize(pos + 1, d.field().zero());
                    }
                    slot[pos] = c.clone();
                }
                parts
                    .into_iter()
                    .map(|c| {
                        let np = Poly::from_coeffs(d.field(), c);
                        base.from_fraction(&np, &den_sub)
                    })
                    .collect()
            }
            _ => Err(Error::NotAlgebraic(self.to_string(), base.to_string())),
        }
    }

    /// Power basis of `self` over `base`, matching [`Field::coords_over`].
    pub fn basis_over(&self, base: &Field) -> Result<Vec<Fe>> {
        if self == base {
            return Ok(vec![self.one()]);
        }
        match &self.0.kind {
            FieldKind::Algebraic {
                base: b, modulus, ..
            } => {
                let g = self.generator().unwrap();
                let inner = b.basis_over(base)?;
                let mut out = Vec::new();
                let mut gp = self.one();
                for _ in 0..modulus.degree().unwrap() {
                    for x in &inner {
                        out.push(&self.embed(x)? * &gp);
                    }
                    gp = &gp * &g;
                }
                Ok(out)
            }
            FieldKind::Inseparable { .. } => {
                let m = self.degree_over(base)?;
                let g = self.generator().unwrap();
                Ok((0..m).map(|j| g.pow(j as u64)).collect())
            }
            _ => Err(Error::NotAlgebraic(self.to_string(), base.to_string())),
        }
    }
}

fn modpow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn residue_inverse(x: &Poly, modulus: &Poly) -> Poly {
    let (g, s, _) = x.xgcd(modulus);
    debug_assert_eq!(g.degree(), Some(0));
    s.scale(&g.coeff(0).inv().unwrap())
}

fn frobenius_poly(f: &Poly) -> Poly {
    let p = f.field().characteristic() as usize;
    let coeffs: Vec<Fe> = f.coeffs().iter().map(|c| c.frobenius()).collect();
    Poly::from_coeffs(f.field(), coeffs).inflate(p)
}

fn root_poly(f: &Poly, p: u64) -> Option<Poly> {
    let d = f.deflate(p as usize)?;
    let coeffs: Option<Vec<Fe>> = d.coeffs().iter().map(|c| c.field().pth_root(c)).collect();
    Some(Poly::from_coeffs(f.field(), coeffs?))
}
