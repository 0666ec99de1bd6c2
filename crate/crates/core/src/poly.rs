//! Sparse multivariate polynomials over `F_p`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::ring::{ensure_same, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: FieldElement,
    pub mono: Monomial,
}

/// A polynomial stored as its nonzero terms, strictly decreasing in `order`.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    order: MonomialOrder,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if !self.ring.same_as(&other.ring) || self.terms.len() != other.terms.len() {
            return false;
        }
        if self.order == other.order {
            self.terms == other.terms
        } else {
            self.terms == other.with_order(self.order).terms
        }
    }
}

impl Eq for Polynomial {}

/// `a - c * m * b` on sorted term lists.
pub(crate) fn sub_scaled(
    field: &PrimeField,
    order: MonomialOrder,
    a: &[Term],
    c: FieldElement,
    m: &Monomial,
    b: &[Term],
) -> Result<Vec<Term>> {
    let negc = field.neg(c);
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut shifted = b.iter().map(|t| -> Result<Term> {
        Ok(Term {
            coeff: field.mul(negc, t.coeff),
            mono: t.mono.mul(m)?,
        })
    });
    let mut next_b = shifted.next().transpose()?;
    while let Some(tb) = next_b.take() {
        while i < a.len() && order.compare(&a[i].mono, &tb.mono) == Ordering::Greater {
            out.push(a[i].clone());
            i += 1;
        }
        if i < a.len() && a[i].mono == tb.mono {
            let s = field.add(a[i].coeff, tb.coeff);
            if !s.is_zero() {
                out.push(Term {
                    coeff: s,
                    mono: tb.mono,
                });
            }
            i += 1;
        } else {
            out.push(tb);
        }
        next_b = shifted.next().transpose()?;
    }
    out.extend_from_slice(&a[i..]);
    Ok(out)
}

fn merge_add(field: &PrimeField, order: MonomialOrder, a: &[Term], b: &[Term]) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match order.compare(&a[i].mono, &b[j].mono) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                let s = field.add(a[i].coeff, b[j].coeff);
                if !s.is_zero() {
                    out.push(Term {
                        coeff: s,
                        mono: a[i].mono.clone(),
                    });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Self::zero_in(ring, MonomialOrder::default())
    }

    pub fn zero_in(ring: &Ring, order: MonomialOrder) -> Self {
        Polynomial {
            ring: ring.clone(),
            order,
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, c: i64) -> Self {
        let c = ring.field().element(c);
        Self::monomial(ring, c, Monomial::one(ring.nvars()))
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, 1)
    }

    pub fn variable(ring: &Ring, i: usize) -> Self {
        Self::monomial(ring, FieldElement::ONE, Monomial::variable(ring.nvars(), i))
    }

    pub fn monomial(ring: &Ring, c: FieldElement, mono: Monomial) -> Self {
        let terms = if c.is_zero() {
            vec![]
        } else {
            vec![Term { coeff: c, mono }]
        };
        Polynomial {
            ring: ring.clone(),
            order: MonomialOrder::default(),
            terms,
        }
    }

    /// Builds a normalized polynomial from arbitrary terms: sorts, combines
    /// like terms and drops zeros.
    pub fn from_terms(ring: &Ring, order: MonomialOrder, mut terms: Vec<Term>) -> Self {
        let field = *ring.field();
        terms.sort_by(|a, b| order.compare(&b.mono, &a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => {
                    last.coeff = field.add(last.coeff, t.coeff);
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        Polynomial {
            ring: ring.clone(),
            order,
            terms: out,
        }
    }

    /// Wraps terms already sorted in `order` with no zeros or duplicates.
    pub(crate) fn from_sorted(ring: &Ring, order: MonomialOrder, terms: Vec<Term>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| order.compare(&w[0].mono, &w[1].mono) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        Polynomial {
            ring: ring.clone(),
            order,
            terms,
        }
    }

    #[inline]
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        self.ring.field()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mono.is_one()
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn leading_coeff(&self) -> Option<FieldElement> {
        self.terms.first().map(|t| t.coeff)
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    /// Whether all terms share one total degree, together with that degree.
    /// The zero polynomial is homogeneous with no degree.
    pub fn is_homogeneous(&self) -> (bool, Option<u64>) {
        match self.terms.first() {
            None => (true, None),
            Some(t) => {
                let d = t.mono.degree();
                if self.terms.iter().all(|s| s.mono.degree() == d) {
                    (true, Some(d))
                } else {
                    (false, None)
                }
            }
        }
    }

    /// Same polynomial sorted for another order.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        if order == self.order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.compare(&b.mono, &a.mono));
        Polynomial {
            ring: self.ring.clone(),
            order,
            terms,
        }
    }

    fn aligned<'b>(&self, other: &'b Polynomial) -> Result<std::borrow::Cow<'b, [Term]>> {
        ensure_same(&self.ring, &other.ring)?;
        Ok(if other.order == self.order {
            std::borrow::Cow::Borrowed(&other.terms)
        } else {
            std::borrow::Cow::Owned(other.with_order(self.order).terms)
        })
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        let rhs = self.aligned(other)?;
        let terms = merge_add(self.field(), self.order, &self.terms, &rhs);
        Ok(Polynomial::from_sorted(&self.ring, self.order, terms))
    }

    pub fn neg(&self) -> Polynomial {
        let field = *self.field();
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: field.neg(t.coeff),
                mono: t.mono.clone(),
            })
            .collect();
        Polynomial::from_sorted(&self.ring, self.order, terms)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        let rhs = self.aligned(other)?;
        let one = Monomial::one(self.ring.nvars());
        let terms = sub_scaled(
            self.field(),
            self.order,
            &self.terms,
            FieldElement::ONE,
            &one,
            &rhs,
        )?;
        Ok(Polynomial::from_sorted(&self.ring, self.order, terms))
    }

    pub fn scale(&self, c: FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero_in(&self.ring, self.order);
        }
        let field = *self.field();
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: field.mul(c, t.coeff),
                mono: t.mono.clone(),
            })
            .collect();
        Polynomial::from_sorted(&self.ring, self.order, terms)
    }

    /// `c * m * self`; multiplication by a monomial preserves term order.
    pub fn mul_term(&self, c: FieldElement, m: &Monomial) -> Result<Polynomial> {
        if c.is_zero() {
            return Ok(Polynomial::zero_in(&self.ring, self.order));
        }
        let field = *self.field();
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(Term {
                    coeff: field.mul(c, t.coeff),
                    mono: t.mono.mul(m)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_sorted(&self.ring, self.order, terms))
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        let rhs = self.aligned(other)?;
        let (small, large) = if rhs.len() < self.terms.len() {
            (&rhs[..], &self.terms[..])
        } else {
            (&self.terms[..], &rhs[..])
        };
        let field = *self.field();
        let mut acc: Vec<Term> = Vec::new();
        for t in small {
            let negc = field.neg(t.coeff);
            acc = sub_scaled(&field, self.order, &acc, negc, &t.mono, large)?;
        }
        Ok(Polynomial::from_sorted(&self.ring, self.order, acc))
    }

    pub fn pow(&self, k: u64) -> Result<Polynomial> {
        let mut acc = Polynomial::one(&self.ring).with_order(self.order);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `self^(p^e)`. Over `F_p` this raises every monomial to the `p^e`-th
    /// power and leaves coefficients fixed.
    pub fn frobenius_pow(&self, e: u32) -> Result<Polynomial> {
        let p = self.ring.characteristic();
        let q = p.checked_pow(e).ok_or(Error::ExponentOverflow {
            limit: crate::monomial::MAX_EXPONENT,
        })?;
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(Term {
                    coeff: t.coeff,
                    mono: t.mono.pow(q)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        // m -> m^q is strictly monotone for every monomial order
        Ok(Polynomial::from_sorted(&self.ring, self.order, terms))
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(self.field().inv(c)),
        }
    }

    /// Exact quotient `self / divisor`; fails when the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Polynomial> {
        let d = self.aligned(divisor)?;
        let Some(lead) = d.first() else {
            return Err(Error::InexactDivision);
        };
        let field = *self.field();
        let inv = field.inv(lead.coeff);
        let mut rest = self.terms.clone();
        let mut quotient = Vec::new();
        while let Some(t) = rest.first() {
            let Some(m) = lead.mono.quotient_of(&t.mono) else {
                return Err(Error::InexactDivision);
            };
            let c = field.mul(t.coeff, inv);
            rest = sub_scaled(&field, self.order, &rest, c, &m, &d)?;
            quotient.push(Term { coeff: c, mono: m });
        }
        Ok(Polynomial::from_sorted(&self.ring, self.order, quotient))
    }

    /// Re-embeds into `target`, a ring with the same leading variables and
    /// possibly more trailing ones.
    pub fn embed(&self, target: &Ring, order: MonomialOrder) -> Polynomial {
        let extra = target.nvars() - self.ring.nvars();
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff,
                mono: t.mono.extend(extra),
            })
            .collect();
        Polynomial::from_terms(target, order, terms)
    }

    /// Restricts to the first `target.nvars()` variables. Terms involving the
    /// dropped variables must not occur.
    pub fn project(&self, target: &Ring, order: MonomialOrder) -> Polynomial {
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|t| {
                debug_assert!(t.mono.exponents()[n..].iter().all(|&a| a == 0));
                Term {
                    coeff: t.coeff,
                    mono: t.mono.truncate(n),
                }
            })
            .collect();
        Polynomial::from_terms(target, order, terms)
    }

    /// Whether the polynomial involves a variable with index `>= split`.
    pub fn involves_from(&self, split: usize) -> bool {
        self.terms
            .iter()
            .any(|t| t.mono.exponents()[split..].iter().any(|&a| a > 0))
    }

    /// The homogeneous component of degree `d`.
    pub fn component(&self, d: u64) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.mono.degree() == d)
            .cloned()
            .collect();
        Polynomial::from_sorted(&self.ring, self.order, terms)
    }
}

impl fmt::Display for Polynomial {
    /// Canonical text: terms in order, joined by `+`, coefficients as residues
    /// in `[1, p)`, unit coefficients omitted, variables joined by `*`,
    /// exponents above one written with `^`. Zero prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let vars = self.ring.vars();
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            let mut first = true;
            if !t.coeff.is_one() || t.mono.is_one() {
                write!(f, "{}", t.coeff)?;
                first = false;
            }
            for (i, &a) in t.mono.exponents().iter().enumerate() {
                if a == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", vars[i])?;
                if a > 1 {
                    write!(f, "^{a}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
