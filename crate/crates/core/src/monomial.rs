use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Largest exponent any operation may produce.
pub const MAX_EXPONENT: u64 = 1 << 40;

type Exponents = SmallVec<[u64; 8]>;

/// A power product `x_1^{a_1} ... x_n^{a_n}` with its total degree cached.
///
/// `support` has bit `i mod 64` set whenever `a_i > 0`; it gives a cheap
/// necessary condition for divisibility.
#[derive(Debug, Clone)]
pub struct Monomial {
    exps: Exponents,
    degree: u64,
    support: u64,
}

impl PartialEq for Monomial {
    #[inline]
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.exps == other.exps
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

fn support_of(exps: &[u64]) -> u64 {
    exps.iter()
        .enumerate()
        .filter(|(_, &a)| a > 0)
        .fold(0u64, |acc, (i, _)| acc | (1u64 << (i % 64)))
}

fn check(a: u64) -> Result<u64> {
    if a > MAX_EXPONENT {
        Err(Error::ExponentOverflow {
            limit: MAX_EXPONENT,
        })
    } else {
        Ok(a)
    }
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, n),
            degree: 0,
            support: 0,
        }
    }

    pub fn new(exps: &[u64]) -> Result<Self> {
        for &a in exps {
            check(a)?;
        }
        Ok(Self::from_exps(exps.iter().copied().collect()))
    }

    fn from_exps(exps: Exponents) -> Self {
        let degree = exps.iter().sum();
        let support = support_of(&exps);
        Monomial {
            exps,
            degree,
            support,
        }
    }

    /// The `i`-th variable of an `n`-variable ring.
    pub fn variable(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.exps[i] = 1;
        m.degree = 1;
        m.support = 1 << (i % 64);
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u64 {
        self.degree
    }

    #[inline]
    pub fn support_mask(&self) -> u64 {
        self.support
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut exps = Exponents::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(check(a + b)?);
        }
        Ok(Monomial {
            exps,
            degree: self.degree + other.degree,
            support: self.support | other.support,
        })
    }

    pub fn pow(&self, k: u64) -> Result<Monomial> {
        let mut exps = Exponents::with_capacity(self.exps.len());
        for &a in &self.exps {
            let v = a.checked_mul(k).ok_or(Error::ExponentOverflow {
                limit: MAX_EXPONENT,
            })?;
            exps.push(check(v)?);
        }
        Ok(Self::from_exps(exps))
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.support & !other.support == 0
            && self.degree <= other.degree
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, provided `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps: Exponents = other
            .exps
            .iter()
            .zip(&self.exps)
            .map(|(b, a)| b - a)
            .collect();
        Some(Self::from_exps(exps))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        Self::from_exps(exps)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.min(b))
            .collect();
        Self::from_exps(exps)
    }

    #[inline]
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (self.support & other.support == 0 && self.exps.len() <= 64)
            || self
                .exps
                .iter()
                .zip(&other.exps)
                .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Same exponents padded with `extra` trailing zero exponents.
    pub fn extend(&self, extra: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.extend(std::iter::repeat_n(0, extra));
        Monomial {
            exps,
            degree: self.degree,
            support: self.support,
        }
    }

    /// Drops trailing variables; callers guarantee their exponents are zero.
    pub fn truncate(&self, n: usize) -> Monomial {
        let exps: Exponents = self.exps[..n].iter().copied().collect();
        Self::from_exps(exps)
    }

    pub(crate) fn grevlex_cmp(a: &[u64], b: &[u64]) -> Ordering {
        let da: u64 = a.iter().sum();
        let db: u64 = b.iter().sum();
        da.cmp(&db).then_with(|| {
            for (x, y) in a.iter().rev().zip(b.iter().rev()) {
                if x != y {
                    // smaller exponent in the last differing variable is larger
                    return y.cmp(x);
                }
            }
            Ordering::Equal
        })
    }
}
