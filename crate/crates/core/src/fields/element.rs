use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use super::field::{Field, FieldKind};
use super::poly::Poly;
use crate::{Error, Result};

/// Internal canonical representation.
///
/// * `Int`: prime-field value, or the base-`p` index of a finite-field element.
/// * `Residue`: residue of degree `< deg(modulus)` for algebraic extensions of
///   infinite fields.
/// * `Frac`: reduced fraction with monic denominator for rational function
///   fields (and inseparable extensions, which are rational function fields in
///   the root variable).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Repr {
    Int(u64),
    Residue(Poly),
    Frac(Poly, Poly),
}

/// An element of a [`Field`].
#[derive(Clone)]
pub struct Fe {
    field: Field,
    repr: Repr,
}

impl Fe {
    pub(crate) fn raw(field: Field, repr: Repr) -> Fe {
        Fe { field, repr }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub(crate) fn repr(&self) -> &Repr {
        &self.repr
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Int(x) => *x == 0,
            Repr::Residue(r) => r.is_zero(),
            Repr::Frac(n, _) => n.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Int(x) => *x == 1,
            Repr::Residue(r) => r.degree() == Some(0) && r.coeff(0).is_one(),
            Repr::Frac(n, d) => {
                d.degree() == Some(0) && n.degree() == Some(0) && n.coeff(0).is_one()
            }
        }
    }

    /// Index of a finite-field element (its base-`p` coordinate digits).
    pub fn index(&self) -> Option<u64> {
        match self.repr {
            Repr::Int(x) => Some(x),
            _ => None,
        }
    }

    /// Numerator and denominator of an element of a rational function field.
    pub fn fraction(&self) -> Option<(&Poly, &Poly)> {
        match &self.repr {
            Repr::Frac(n, d) => Some((n, d)),
            _ => None,
        }
    }

    /// Residue polynomial over the base field of an algebraic extension.
    pub fn residue(&self) -> Option<Poly> {
        match (self.field.kind(), &self.repr) {
            (FieldKind::Algebraic { .. }, Repr::Int(x)) => Some(self.field.decode(*x)),
            (_, Repr::Residue(r)) => Some(r.clone()),
            _ => None,
        }
    }

    fn coerce<'a>(&'a self, other: &'a Fe) -> Result<(Field, Fe, Fe)> {
        if self.field == other.field {
            return Ok((self.field.clone(), self.clone(), other.clone()));
        }
        if self.field.contains_field(&other.field) {
            Ok((self.field.clone(), self.clone(), self.field.embed(other)?))
        } else if other.field.contains_field(&self.field) {
            Ok((other.field.clone(), other.field.embed(self)?, other.clone()))
        } else {
            Err(Error::IncompatibleFields(
                self.field.to_string(),
                other.field.to_string(),
            ))
        }
    }

    pub fn try_add(&self, other: &Fe) -> Result<Fe> {
        if self.field == other.field {
            return Ok(Fe::raw(
                self.field.clone(),
                self.field.add_r(&self.repr, &other.repr),
            ));
        }
        let (f, a, b) = self.coerce(other)?;
        let r = f.add_r(&a.repr, &b.repr);
        Ok(Fe::raw(f, r))
    }

    pub fn try_sub(&self, other: &Fe) -> Result<Fe> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Fe) -> Result<Fe> {
        if self.field == other.field {
            return Ok(Fe::raw(
                self.field.clone(),
                self.field.mul_r(&self.repr, &other.repr),
            ));
        }
        let (f, a, b) = self.coerce(other)?;
        let r = f.mul_r(&a.repr, &b.repr);
        Ok(Fe::raw(f, r))
    }

    pub fn try_div(&self, other: &Fe) -> Result<Fe> {
        self.try_mul(&other.inv()?)
    }

    fn neg_ref(&self) -> Fe {
        Fe::raw(self.field.clone(), self.field.neg_r(&self.repr))
    }

    pub fn inv(&self) -> Result<Fe> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Fe::raw(self.field.clone(), self.field.inv_r(&self.repr)))
    }

    pub fn pow(&self, e: u64) -> Fe {
        self.pow_u128(e as u128)
    }

    pub fn pow_u128(&self, e: u128) -> Fe {
        Fe::raw(self.field.clone(), self.field.pow_r(&self.repr, e))
    }

    /// `a^p`.
    pub fn frobenius(&self) -> Fe {
        self.field.frobenius(self)
    }

    /// The unique `b` with `b^p = a`. When `a` has no `p`-th root in its own
    /// field and `allow_enlarge` is set, the root is returned in the next
    /// purely inseparable extension.
    pub fn frobenius_root(&self, allow_enlarge: bool) -> Result<Fe> {
        self.field.frobenius_root(self, allow_enlarge)
    }

    /// Move this element into an extension field of its own.
    pub fn to_field(&self, target: &Field) -> Result<Fe> {
        target.embed(self)
    }
}

impl PartialEq for Fe {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr && self.field == other.field
    }
}

impl Eq for Fe {}

impl Hash for Fe {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.repr.hash(state);
    }
}

impl PartialOrd for Fe {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fe {
    fn cmp(&self, other: &Self) -> Ordering {
        self.repr.cmp(&other.repr)
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.field.kind(), &self.repr) {
            (FieldKind::Prime { p }, Repr::Int(x)) => {
                if *x > p / 2 {
                    write!(f, "-{}", p - x)
                } else {
                    write!(f, "{}", x)
                }
            }
            (FieldKind::Algebraic { var, .. }, _) => {
                let r = self.residue().expect("algebraic residue");
                write!(f, "{}", r.display_with(var))
            }
            (FieldKind::Rational { var, .. }, Repr::Frac(n, d)) => {
                write_frac(f, &n.display_with(var), n, &d.display_with(var), d)
            }
            (FieldKind::Inseparable { base, k }, Repr::Frac(n, d)) => {
                let var = match base.kind() {
                    FieldKind::Rational { var, .. } => var.clone(),
                    _ => "t".to_string(),
                };
                let denom = (base.characteristic() as u128).pow(*k);
                let ns = n.display_with_exponents(&var, denom);
                let ds = d.display_with_exponents(&var, denom);
                write_frac(f, &ns, n, &ds, d)
            }
            _ => write!(f, "{:?}", self.repr),
        }
    }
}

fn write_frac(f: &mut fmt::Formatter<'_>, ns: &str, n: &Poly, ds: &str, d: &Poly) -> fmt::Result {
    if d.degree() == Some(0) {
        return write!(f, "{}", ns);
    }
    let wrap = |s: &str, p: &Poly| {
        if p.term_count() > 1 || s.contains(' ') {
            format!("({})", s)
        } else {
            s.to_string()
        }
    };
    write!(f, "{}/{}", wrap(ns, n), wrap(ds, d))
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&Fe> for &Fe {
            type Output = Fe;
            fn $method(self, rhs: &Fe) -> Fe {
                self.$try(rhs)
                    .unwrap_or_else(|e| panic!("field arithmetic failed: {}", e))
            }
        }
        impl $trait<Fe> for Fe {
            type Output = Fe;
            fn $method(self, rhs: Fe) -> Fe {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Fe> for Fe {
            type Output = Fe;
            fn $method(self, rhs: &Fe) -> Fe {
                (&self).$method(rhs)
            }
        }
        impl $trait<Fe> for &Fe {
            type Output = Fe;
            fn $method(self, rhs: Fe) -> Fe {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl Neg for &Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        self.neg_ref()
    }
}

impl Neg for Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        self.neg_ref()
    }
}

impl AddAssign<&Fe> for Fe {
    fn add_assign(&mut self, rhs: &Fe) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Fe> for Fe {
    fn sub_assign(&mut self, rhs: &Fe) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Fe> for Fe {
    fn mul_assign(&mut self, rhs: &Fe) {
        *self = &*self * rhs;
    }
}
