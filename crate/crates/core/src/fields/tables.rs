use std::sync::Arc;

/// Log/antilog tables for a finite field of order `q = p^m`.
///
/// Elements are indexed by their coordinate vector over `F_p` read as base-`p`
/// digits; index 0 is zero and index 1 is one.
#[derive(Debug)]
pub(crate) struct Tables {
    q: u64,
    p: u64,
    digits: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Option<Vec<u32>>,
}

pub(crate) const TABLE_LIMIT: u128 = 1 << 20;
const ADD_TABLE_LIMIT: u64 = 729;

impl Tables {
    /// `powers` must list `g^0, g^1, ..., g^(q-2)` for a primitive element `g`.
    pub(crate) fn new(q: u64, p: u64, digits: u32, powers: Vec<u64>) -> Self {
        let n = (q - 1) as usize;
        debug_assert_eq!(powers.len(), n);
        let mut exp = Vec::with_capacity(2 * n);
        let mut log = vec![0u32; q as usize];
        for (k, &x) in powers.iter().enumerate() {
            exp.push(x as u32);
            log[x as usize] = k as u32;
        }
        for k in 0..n {
            exp.push(exp[k]);
        }
        let mut t = Tables {
            q,
            p,
            digits,
            exp,
            log,
            add: None,
        };
        if q <= ADD_TABLE_LIMIT {
            let mut add = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = t.add_digits(a, b) as u32;
                }
            }
            t.add = Some(add);
        }
        t
    }

    #[inline]
    fn add_digits(&self, mut a: u64, mut b: u64) -> u64 {
        let mut r = 0;
        let mut pw = 1;
        for _ in 0..self.digits {
            r += ((a % self.p + b % self.p) % self.p) * pw;
            a /= self.p;
            b /= self.p;
            pw *= self.p;
        }
        r
    }

    #[inline]
    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        match &self.add {
            Some(t) => t[(a * self.q + b) as usize] as u64,
            None => self.add_digits(a, b),
        }
    }

    #[inline]
    pub(crate) fn neg(&self, mut a: u64) -> u64 {
        let mut r = 0;
        let mut pw = 1;
        for _ in 0..self.digits {
            r += ((self.p - a % self.p) % self.p) * pw;
            a /= self.p;
            pw *= self.p;
        }
        r
    }

    #[inline]
    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize] as u64
        }
    }

    #[inline]
    pub(crate) fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        let n = self.q - 1;
        self.exp[((n - self.log[a as usize] as u64) % n) as usize] as u64
    }

    pub(crate) fn pow(&self, a: u64, e: u128) -> u64 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u128;
        let k = (self.log[a as usize] as u128 * (e % n)) % n;
        self.exp[k as usize] as u64
    }
}

/// Arithmetic on element indices of a finite field.
#[derive(Clone, Debug)]
pub(crate) enum FastOps {
    Prime(u64),
    Table(Arc<Tables>),
}

impl FastOps {
    #[inline]
    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        match self {
            FastOps::Prime(p) => {
                let s = a + b;
                if s >= *p {
                    s - p
                } else {
                    s
                }
            }
            FastOps::Table(t) => t.add(a, b),
        }
    }

    #[inline]
    pub(crate) fn neg(&self, a: u64) -> u64 {
        match self {
            FastOps::Prime(p) => {
                if a == 0 {
                    0
                } else {
                    p - a
                }
            }
            FastOps::Table(t) => t.neg(a),
        }
    }

    #[inline]
    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        match self {
            FastOps::Prime(p) => a * b % p,
            FastOps::Table(t) => t.mul(a, b),
        }
    }

    #[inline]
    pub(crate) fn inv(&self, a: u64) -> u64 {
        match self {
            FastOps::Prime(p) => {
                let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
                while e > 0 {
                    if e & 1 == 1 {
                        r = r * b % p;
                    }
                    b = b * b % p;
                    e >>= 1;
                }
                r
            }
            FastOps::Table(t) => t.inv(a),
        }
    }
}
