use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use super::element::Fe;
use super::field::Field;
use crate::{Error, Result};

/// Dense univariate polynomial over a [`Field`], coefficients little-endian.
#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Fe>,
}

impl Poly {
    pub fn zero(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(&field.one())
    }

    pub fn constant(c: &Fe) -> Poly {
        Poly::from_coeffs(c.field(), vec![c.clone()])
    }

    /// The indeterminate.
    pub fn x(field: &Field) -> Poly {
        Poly::from_coeffs(field, vec![field.zero(), field.one()])
    }

    /// `c * x^n`.
    pub fn monomial(c: &Fe, n: usize) -> Poly {
        let mut coeffs = vec![c.field().zero(); n + 1];
        coeffs[n] = c.clone();
        Poly::from_coeffs(c.field(), coeffs)
    }

    /// Builds a polynomial from little-endian coefficients, embedding each into
    /// `field`.
    pub fn from_coeffs(field: &Field, coeffs: Vec<Fe>) -> Poly {
        let coeffs = coeffs
            .into_iter()
            .map(|c| {
                if c.field() == field {
                    c
                } else {
                    field
                        .embed(&c)
                        .unwrap_or_else(|e| panic!("polynomial coefficient: {}", e))
                }
            })
            .collect();
        let mut p = Poly {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    /// Polynomial with integer coefficients (little-endian).
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Leading coefficient.
    pub fn lc(&self) -> Option<&Fe> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|c| c.is_one())
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn to_field(&self, field: &Field) -> Result<Poly> {
        if &self.field == field {
            return Ok(self.clone());
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| field.embed(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(field, coeffs))
    }

    pub fn monic(&self) -> Result<Poly> {
        let lc = self.lc().ok_or(Error::ZeroPolynomial)?;
        Ok(self.scale(&lc.inv()?))
    }

    pub fn scale(&self, c: &Fe) -> Poly {
        Poly::from_coeffs(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Fe) -> Fe {
        let mut acc = x.field().zero();
        if !x.field().contains_field(&self.field) {
            acc = self.field.zero();
        }
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| {
                c * &self
                    .field
                    .from_int((i as u64 % self.field.characteristic()) as i64)
            })
            .collect();
        Poly::from_coeffs(&self.field, coeffs)
    }

    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let Some(n) = self.degree() else {
            return Ok((Poly::zero(&self.field), Poly::zero(&self.field)));
        };
        if n < dd {
            return Ok((Poly::zero(&self.field), self.clone()));
        }
        let inv = d.lc().unwrap().inv()?;
        let mut r = self.coeffs.clone();
        let mut q = vec![self.field.zero(); n - dd + 1];
        for i in (0..=n - dd).rev() {
            let c = &r[i + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for j in 0..=dd {
                let t = &c * &d.coeffs[j];
                r[i + j] = &r[i + j] - &t;
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((
            Poly::from_coeffs(&self.field, q),
            Poly::from_coeffs(&self.field, r),
        ))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.div_rem(d)?.1)
    }

    /// Quotient of an exact division; panics if `d` is zero.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_ok_and(|r| r.is_zero())
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).unwrap();
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic().unwrap()
        }
    }

    /// Returns `(g, s, t)` with `g = s*self + t*other` and `g` monic.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).unwrap();
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if let Some(lc) = r0.lc().cloned() {
            let inv = lc.inv().unwrap();
            (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
        } else {
            (r0, s0, t0)
        }
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let g = self.gcd(other);
        (&self.div_exact(&g) * other).monic().unwrap()
    }

    pub fn pow(&self, mut e: usize) -> Poly {
        let mut result = Poly::one(&self.field);
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

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u128, m: &Poly) -> Poly {
        let mut result = Poly::one(&self.field).rem(m).unwrap();
        let mut base = self.rem(m).unwrap();
        while e > 0 {
            if e & 1 == 1 {
                result = (&result * &base).rem(m).unwrap();
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(m).unwrap();
            }
        }
        result
    }

    /// `self(x^m)`.
    pub fn inflate(&self, m: usize) -> Poly {
        if m == 1 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); self.degree().unwrap() * m + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m] = c.clone();
        }
        Poly::from_coeffs(&self.field, coeffs)
    }

    /// `g` with `g(x^m) = self`, if every exponent is divisible by `m`.
    pub fn deflate(&self, m: usize) -> Option<Poly> {
        if m == 1 {
            return Some(self.clone());
        }
        let mut coeffs = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % m == 0 {
                coeffs.push(c.clone());
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(Poly::from_coeffs(&self.field, coeffs))
    }

    /// `self(g)`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let mut acc = Poly::zero(&g.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(c).to_field(&g.field).unwrap();
        }
        acc
    }

    pub fn display_with(&self, var: &str) -> String {
        self.render(var, |i| {
            if i == 1 {
                var.to_string()
            } else {
                format!("{}^{}", var, i)
            }
        })
    }

    /// Renders exponents as fractions `i/denom` in lowest terms.
    pub fn display_with_exponents(&self, var: &str, denom: u128) -> String {
        self.render(var, |i| {
            let g = super::gcd_u128(i as u128, denom);
            let (n, d) = (i as u128 / g, denom / g);
            match (n, d) {
                (1, 1) => var.to_string(),
                (n, 1) => format!("{}^{}", var, n),
                (n, d) => format!("{}^({}/{})", var, n, d),
            }
        })
    }

    fn render(&self, _var: &str, power: impl Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut s = c.to_string();
            let negative = s.starts_with('-') && !s[1..].contains(['+', '-']);
            if negative {
                s.remove(0);
            }
            let compound = s.contains(" + ")
                || s.contains(" - ")
                || (s.contains('/') && !s.contains("^("))
                || s.contains(")/");
            let term = if i == 0 {
                if compound && !out.is_empty() {
                    format!("({})", s)
                } else {
                    s
                }
            } else if s == "1" {
                power(i)
            } else if compound {
                format!("({})*{}", s, power(i))
            } else {
                format!("{}*{}", s, power(i))
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
                out.push_str(&term);
            } else {
                out.push_str(if negative { " - " } else { " + " });
                out.push_str(&term);
            }
        }
        out
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    /// Degree first, then coefficients from the top down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("t"))
    }
}

fn common_field(a: &Poly, b: &Poly) -> Field {
    if a.field == b.field || a.field.contains_field(&b.field) {
        a.field.clone()
    } else if b.field.contains_field(&a.field) {
        b.field.clone()
    } else {
        panic!(
            "polynomial arithmetic over incompatible fields {} and {}",
            a.field, b.field
        )
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let f = common_field(self, rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::from_coeffs(&f, coeffs)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let f = common_field(self, rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&f);
        }
        let mut coeffs = vec![f.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        Poly::from_coeffs(&f, coeffs)
    }
}

macro_rules! owned_ops {
    ($trait:ident, $method:ident) => {
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
