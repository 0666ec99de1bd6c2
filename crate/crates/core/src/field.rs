//! Arithmetic in the prime field `F_p`.
//!
//! Elements are plain residues; the modulus lives in [`PrimeField`] and every
//! operation goes through it. Residues fit in 32 bits and products in 64.

use std::fmt;

use crate::error::{Error, Result};

/// A residue in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.0 == 1
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field `F_p` for a prime `p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    /// Reduces an arbitrary integer into `[0, p)`.
    #[inline]
    pub fn element(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u32)
    }

    /// Reduces a non-negative decimal literal of any length.
    pub fn from_decimal(&self, digits: &str) -> Option<FieldElement> {
        let mut acc: u64 = 0;
        for c in digits.chars() {
            let d = c.to_digit(10)? as u64;
            acc = (acc * 10 + d) % self.p as u64;
        }
        Some(FieldElement(acc as u32))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let s = a.0 as u64 + b.0 as u64;
        let p = self.p as u64;
        FieldElement(if s >= p { s - p } else { s } as u32)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if a.0 == 0 {
            a
        } else {
            FieldElement(self.p - a.0)
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
    }

    pub fn pow(&self, a: FieldElement, mut k: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: FieldElement) -> FieldElement {
        assert!(!a.is_zero(), "inverse of zero in F_{}", self.p);
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, a.0 as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        self.element(t0)
    }

    #[inline]
    pub fn div(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.mul(a, self.inv(b))
    }

    /// Signed representative in `(-p/2, p/2]`, used nowhere in arithmetic but
    /// handy for display of small negative numbers.
    pub fn symmetric(&self, a: FieldElement) -> i64 {
        let v = a.0 as i64;
        let p = self.p as i64;
        if v > p / 2 {
            v - p
        } else {
            v
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.p).map(FieldElement)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        for p in [0u64, 1, 4, 6, 9, 15, 1 << 31] {
            assert!(PrimeField::new(p).is_err(), "{p}");
        }
        for p in [2u64, 3, 5, 7, 65521, 2147483647] {
            assert!(PrimeField::new(p).is_ok(), "{p}");
        }
    }

    #[test]
    fn inverses_exhaustive_small_primes() {
        for p in [2u64, 3, 5, 7] {
            let k = PrimeField::new(p).unwrap();
            for a in k.elements().filter(|a| !a.is_zero()) {
                assert_eq!(k.mul(a, k.inv(a)), FieldElement::ONE);
            }
        }
    }

    #[test]
    fn axioms_exhaustive_small_primes() {
        for p in [2u64, 3, 5, 7] {
            let k = PrimeField::new(p).unwrap();
            for a in k.elements() {
                assert_eq!(k.add(a, k.neg(a)), FieldElement::ZERO);
                // Fermat: a^p = a
                assert_eq!(k.pow(a, p), a);
                for b in k.elements() {
                    assert_eq!(k.add(a, b), k.add(b, a));
                    assert_eq!(k.mul(a, b), k.mul(b, a));
                    for c in k.elements() {
                        assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn reduces_literals() {
        let k = PrimeField::new(7).unwrap();
        assert_eq!(k.element(-1).value(), 6);
        assert_eq!(
            k.from_decimal("100000000000000000000000").unwrap(),
            k.element(100_000_000_000_000_000_000_000i128.rem_euclid(7) as i64)
        );
        assert_eq!(k.symmetric(k.element(-2)), -2);
    }
}
