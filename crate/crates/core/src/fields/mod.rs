//! Exact scalars: prime fields, finite algebraic extensions, rational function
//! fields over finite fields and purely inseparable extensions of those.
//!
//! A [`Field`] is a cheaply clonable descriptor. Elements ([`Fe`]) carry their
//! descriptor so that arithmetic can check compatibility and coerce along the
//! directed tower (base into extension only).

mod element;
mod factor;
mod field;
mod poly;
mod tables;

pub use element::Fe;
pub use factor::{factor, is_irreducible, roots, splitting_extension, Factorization};
pub use field::{Field, FieldKind};
pub use poly::Poly;

pub(crate) use element::Repr;
pub(crate) use tables::FastOps;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub(crate) fn lcm_u128(a: u128, b: u128) -> u128 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd_u128(a, b) * b
    }
}
