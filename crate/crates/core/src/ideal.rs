//! Ideals of `F_p[x_1, ..., x_n]` and the operations built on Groebner bases.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::groebner::{self, buchberger, buchberger_truncated, reduces_to_zero, GroebnerBasis};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::parse::parse_polynomial_in;
use crate::poly::{Polynomial, Term};
use crate::ring::{ensure_same, Ring};

/// An ideal given by generators, with Groebner bases cached per order.
///
/// `order` is the working order: membership, equality tests and Hilbert
/// functions use bases for it, and derived ideals inherit it.
pub struct Ideal {
    ring: Ring,
    order: MonomialOrder,
    gens: Vec<Polynomial>,
    gb_cache: RwLock<HashMap<MonomialOrder, Arc<GroebnerBasis>>>,
    homogeneous: OnceLock<bool>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            order: self.order,
            gens: self.gens.clone(),
            gb_cache: RwLock::new(self.gb_cache.read().unwrap().clone()),
            homogeneous: self.homogeneous.clone(),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        if self.gens.is_empty() {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

impl Ideal {
    /// The ideal generated by `gens`, working order grevlex. Zero generators
    /// are dropped.
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Ideal> {
        Self::with_order(ring, gens, MonomialOrder::default())
    }

    pub fn with_order(ring: &Ring, gens: Vec<Polynomial>, order: MonomialOrder) -> Result<Ideal> {
        for g in &gens {
            ensure_same(ring, g.ring())?;
        }
        let gens = gens
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.with_order(order))
            .collect();
        Ok(Ideal {
            ring: ring.clone(),
            order,
            gens,
            gb_cache: RwLock::new(HashMap::new()),
            homogeneous: OnceLock::new(),
        })
    }

    pub fn parse<S: AsRef<str>>(ring: &Ring, gens: &[S]) -> Result<Ideal> {
        let gens = gens
            .iter()
            .map(|s| parse_polynomial_in(ring, s.as_ref(), MonomialOrder::default()))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![]).expect("same ring")
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![Polynomial::one(ring)]).expect("same ring")
    }

    pub fn principal(f: &Polynomial) -> Ideal {
        Ideal::with_order(f.ring(), vec![f.clone()], f.order()).expect("same ring")
    }

    /// The homogeneous maximal ideal `(x_1, ..., x_n)`.
    pub fn maximal(ring: &Ring) -> Ideal {
        let gens = (0..ring.nvars())
            .map(|i| Polynomial::variable(ring, i))
            .collect();
        Ideal::new(ring, gens).expect("same ring")
    }

    /// Same generators under another working order.
    pub fn reordered(&self, order: MonomialOrder) -> Ideal {
        let mut out = Ideal::with_order(&self.ring, self.gens.clone(), order).expect("same ring");
        out.gb_cache = RwLock::new(self.gb_cache.read().unwrap().clone());
        out
    }

    /// The same ideal with another generating set; cached bases carry over.
    /// The caller guarantees that `gens` generates `self`.
    pub(crate) fn regenerated(&self, gens: Vec<Polynomial>) -> Ideal {
        let mut out = self.derived(gens);
        out.gb_cache = RwLock::new(self.gb_cache.read().unwrap().clone());
        out
    }

    fn derived(&self, gens: Vec<Polynomial>) -> Ideal {
        Ideal::with_order(&self.ring, gens, self.order).expect("same ring")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        *self
            .homogeneous
            .get_or_init(|| self.gens.iter().all(|g| g.is_homogeneous().0))
    }

    fn require_homogeneous(&self) -> Result<()> {
        match self.gens.iter().find(|g| !g.is_homogeneous().0) {
            Some(g) => Err(Error::NotHomogeneous(g.to_string())),
            None => Ok(()),
        }
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit(&self) -> Result<bool> {
        if self.gens.iter().any(|g| g.is_unit()) {
            return Ok(true);
        }
        if self.is_homogeneous() {
            // a proper homogeneous generating set cannot produce a unit
            return Ok(false);
        }
        Ok(self.groebner_basis()?.is_unit())
    }

    /// Reduced Groebner basis for the working order.
    pub fn groebner_basis(&self) -> Result<Arc<GroebnerBasis>> {
        self.groebner_basis_in(self.order)
    }

    pub fn groebner_basis_in(&self, order: MonomialOrder) -> Result<Arc<GroebnerBasis>> {
        if let Some(gb) = self.gb_cache.read().unwrap().get(&order) {
            if gb.truncation().is_none() {
                return Ok(gb.clone());
            }
        }
        let gb = match self
            .ring
            .store()
            .and_then(|s| s.load(&self.ring, order, &self.gens))
        {
            Some(elements) => GroebnerBasis::from_reduced_elements(&self.ring, order, elements),
            None => {
                let gb = buchberger(&self.ring, &self.gens, order)?;
                if let Some(store) = self.ring.store() {
                    store.save(&self.ring, order, &self.gens, gb.elements());
                }
                gb
            }
        };
        let gb = Arc::new(gb);
        self.gb_cache.write().unwrap().insert(order, gb.clone());
        Ok(gb)
    }

    /// A basis valid at least through degree `max_degree` (homogeneous
    /// ideals only). Reuses a cached full or deeper basis when present.
    pub fn truncated_basis(&self, max_degree: u64) -> Result<Arc<GroebnerBasis>> {
        self.require_homogeneous()?;
        if let Some(gb) = self.gb_cache.read().unwrap().get(&self.order) {
            if gb.covers_degree(max_degree) {
                return Ok(gb.clone());
            }
        }
        let gb = Arc::new(buchberger_truncated(
            &self.ring, &self.gens, self.order, max_degree,
        )?);
        self.gb_cache
            .write()
            .unwrap()
            .insert(self.order, gb.clone());
        Ok(gb)
    }

    /// Ideal membership: `f` reduces to zero modulo the Groebner basis.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        ensure_same(&self.ring, f.ring())?;
        if f.is_zero() {
            return Ok(true);
        }
        if self.is_homogeneous() && f.is_homogeneous().0 {
            let d = f.total_degree().unwrap();
            return self.truncated_basis(d)?.contains(f);
        }
        self.groebner_basis()?.contains(f)
    }

    /// Whether every generator of `other` lies in `self`; returns the first
    /// generator that does not.
    pub fn first_outside(&self, other: &Ideal) -> Result<Option<Polynomial>> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(Some(g.clone()));
            }
        }
        Ok(None)
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        Ok(self.first_outside(other)?.is_none())
    }

    /// Equality of ideals: the reduced grevlex bases coincide.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        ensure_same(&self.ring, &other.ring)?;
        let a = self.groebner_basis_in(MonomialOrder::Grevlex)?;
        let b = other.groebner_basis_in(MonomialOrder::Grevlex)?;
        Ok(a.elements() == b.elements())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        ensure_same(&self.ring, &other.ring)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(self.derived(gens))
    }

    /// Generated by pairwise products of generators, with redundant products
    /// (multiples of a single earlier product) removed.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        ensure_same(&self.ring, &other.ring)?;
        let mut prods = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                prods.push(f.mul(g)?);
            }
        }
        Ok(self.derived(dedupe_principal(prods)))
    }

    /// `I^n`, with `I^0 = (1)`.
    pub fn power(&self, n: u64) -> Result<Ideal> {
        if n == 0 {
            return Ok(self.derived(vec![Polynomial::one(&self.ring)]));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// The Frobenius (bracket) power `I^[p^e]`, generated by the `p^e`-th
    /// powers of the generators.
    pub fn bracket_power(&self, e: u32) -> Result<Ideal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.frobenius_pow(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.derived(gens))
    }

    /// `I ∩ J` by eliminating `t` from `t·I + (1 - t)·J`.
    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        ensure_same(&self.ring, &other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.derived(vec![]));
        }
        if self.gens.iter().any(|g| g.is_unit()) {
            return Ok(self.derived(other.gens.clone()));
        }
        if other.gens.iter().any(|g| g.is_unit()) {
            return Ok(self.clone());
        }
        let n = self.ring.nvars();
        let ext = self.ring.with_auxiliary_variable();
        let elim = MonomialOrder::Elimination { split: n };
        let t = Polynomial::variable(&ext, n).with_order(elim);
        let one_minus_t = Polynomial::one(&ext).with_order(elim).sub(&t)?;
        let mut gens = Vec::with_capacity(self.gens.len() + other.gens.len());
        for f in &self.gens {
            gens.push(f.embed(&ext, elim).mul(&t)?);
        }
        for g in &other.gens {
            gens.push(g.embed(&ext, elim).mul(&one_minus_t)?);
        }
        let lifted = Ideal::with_order(&ext, gens, elim)?;
        let gb = lifted.groebner_basis()?;
        let gens = gb
            .elements()
            .iter()
            .filter(|g| !g.involves_from(n))
            .map(|g| g.project(&self.ring, self.order))
            .collect();
        Ok(self.derived(gens))
    }

    /// `(I : J)`, intersecting `(I : f) = (I ∩ (f)) / f` over the generators
    /// `f` of `J`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        ensure_same(&self.ring, &other.ring)?;
        if other.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        if self.is_zero() {
            return Ok(self.derived(vec![]));
        }
        let mut acc: Option<Ideal> = None;
        for f in &other.gens {
            let quotient = if f.is_unit() {
                self.clone()
            } else if self.contains(f)? {
                self.derived(vec![Polynomial::one(&self.ring)])
            } else {
                let meet = self.intersection(&Ideal::principal(f))?;
                let gens = meet
                    .gens
                    .iter()
                    .map(|g| g.div_exact(f))
                    .collect::<Result<Vec<_>>>()?;
                self.derived(gens)
            };
            acc = Some(match acc {
                None => quotient,
                Some(prev) => prev.intersection(&quotient)?,
            });
        }
        Ok(acc.expect("nonzero J"))
    }

    /// A minimal homogeneous generating set drawn from the given generators,
    /// scanned by (degree, position). Its size is `dim_k I / mI`.
    pub fn minimal_generators(&self) -> Result<Vec<Polynomial>> {
        self.require_homogeneous()?;
        if self.gens.iter().any(|g| g.is_unit()) {
            return Err(Error::UnitIdeal);
        }
        let mut cands: Vec<(u64, usize, &Polynomial)> = self
            .gens
            .iter()
            .enumerate()
            .map(|(i, g)| (g.total_degree().unwrap(), i, g))
            .collect();
        cands.sort_by_key(|&(d, i, _)| (d, i));

        let field = *self.ring.field();
        let mut kept: Vec<Polynomial> = Vec::new();
        let mut k = 0;
        while k < cands.len() {
            let d = cands[k].0;
            let below = buchberger_truncated(&self.ring, &kept, self.order, d)?;
            // echelon rows of degree-d normal forms, keyed by leading monomial
            let mut rows: Vec<Vec<Term>> = Vec::new();
            while k < cands.len() && cands[k].0 == d {
                let g = cands[k].2;
                let mut r = below.normal_form(g)?.into_terms();
                for row in &rows {
                    if let Some(pos) = r.iter().position(|t| t.mono == row[0].mono) {
                        let c = r[pos].coeff;
                        let one = Monomial::one(self.ring.nvars());
                        r = crate::poly::sub_scaled(&field, self.order, &r, c, &one, row)?;
                    }
                }
                if !r.is_empty() {
                    let inv = field.inv(r[0].coeff);
                    for t in r.iter_mut() {
                        t.coeff = field.mul(t.coeff, inv);
                    }
                    let pos = rows
                        .iter()
                        .position(|row| self.order.compare(&row[0].mono, &r[0].mono).is_lt())
                        .unwrap_or(rows.len());
                    rows.insert(pos, r);
                    kept.push(g.clone());
                }
                k += 1;
            }
        }
        Ok(kept)
    }

    /// The largest degree in a minimal homogeneous generating set.
    pub fn generating_degree(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let gens = self.minimal_generators()?;
        Ok(gens
            .iter()
            .filter_map(|g| g.total_degree())
            .max()
            .unwrap_or(0))
    }

    /// `dim_k (S/I)_d`.
    pub fn hilbert_function(&self, d: u64) -> Result<u64> {
        self.truncated_basis(d)?.hilbert_function(d)
    }

    /// Hilbert function values for degrees `0..=max_degree`.
    pub fn hilbert_values(&self, max_degree: u64) -> Result<Vec<u64>> {
        let gb = self.truncated_basis(max_degree)?;
        (0..=max_degree).map(|d| gb.hilbert_function(d)).collect()
    }

    /// Krull dimension of `S/I`.
    pub fn krull_dimension(&self) -> Result<usize> {
        self.require_homogeneous()?;
        self.groebner_basis()?.krull_dimension()
    }

    /// The monomial ideal of leading monomials for the working order.
    pub fn leading_term_ideal(&self) -> Result<Ideal> {
        let gb = self.groebner_basis()?;
        let gens = gb
            .leading_monomials()
            .into_iter()
            .map(|m| Polynomial::monomial(&self.ring, FieldElement::ONE, m))
            .collect();
        Ok(self.derived(gens))
    }
}

/// Drops every generator lying in the principal ideal of an earlier kept
/// generator, scanning by (degree, position).
fn dedupe_principal(gens: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut indexed: Vec<(u64, usize, Polynomial)> = gens
        .into_iter()
        .filter(|g| !g.is_zero())
        .enumerate()
        .map(|(i, g)| (g.total_degree().unwrap(), i, g.monic()))
        .collect();
    indexed.sort_by_key(|(d, i, _)| (*d, *i));
    let mut kept: Vec<Polynomial> = Vec::new();
    for (_, _, g) in indexed {
        let redundant = kept.iter().any(|h| {
            let field = *h.field();
            h.leading_monomial()
                .zip(g.leading_monomial())
                .is_some_and(|(a, b)| a.divides(b))
                && reduces_to_zero(&field, h.order(), g.terms().to_vec(), &[h.terms()])
                    .unwrap_or(false)
        });
        if !redundant {
            kept.push(g);
        }
    }
    kept
}

/// Hilbert function of a monomial ideal given by its generators.
pub fn monomial_hilbert_function(gens: &[Monomial], n: usize, d: u64) -> u64 {
    groebner::hilbert_function_of_monomials(gens, n, d)
}
