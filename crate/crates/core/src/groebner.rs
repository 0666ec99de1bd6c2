//! Buchberger's algorithm, normal forms, and the invariants that only need
//! leading-term ideals: Hilbert functions and Krull dimension.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::{sub_scaled, Polynomial, Term};
use crate::ring::{ensure_same, Ring};

/// Persistent lookup of reduced Groebner bases, keyed by ring, order and
/// generators. Implementations must only return bases they have validated.
pub trait BasisStore: Send + Sync {
    fn load(
        &self,
        ring: &Ring,
        order: MonomialOrder,
        gens: &[Polynomial],
    ) -> Option<Vec<Polynomial>>;
    fn save(&self, ring: &Ring, order: MonomialOrder, gens: &[Polynomial], basis: &[Polynomial]);
}

/// A Groebner basis of monic polynomials.
///
/// A truncated basis (`truncation = Some(D)`) comes from homogeneous input and
/// is only guaranteed to be a Groebner basis in degrees `<= D`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
    reduced: bool,
    truncation: Option<u64>,
}

impl GroebnerBasis {
    /// Wraps elements claimed to form a reduced basis (e.g. read from a cache).
    /// Use [`GroebnerBasis::is_groebner`] before trusting them.
    pub fn from_reduced_elements(
        ring: &Ring,
        order: MonomialOrder,
        elements: Vec<Polynomial>,
    ) -> Self {
        let mut elements: Vec<Polynomial> = elements
            .into_iter()
            .map(|f| f.with_order(order).monic())
            .collect();
        sort_elements(&mut elements, order);
        GroebnerBasis {
            ring: ring.clone(),
            order,
            elements,
            reduced: true,
            truncation: None,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn truncation(&self) -> Option<u64> {
        self.truncation
    }

    /// Whether this basis is valid through degree `d`.
    pub fn covers_degree(&self, d: u64) -> bool {
        self.truncation.is_none_or(|t| d <= t)
    }

    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| g.is_unit())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .filter_map(|g| g.leading_monomial().cloned())
            .collect()
    }

    /// Remainder of `f` on division by the basis; no term of the result is
    /// divisible by a leading monomial of the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        ensure_same(&self.ring, f.ring())?;
        let f = f.with_order(self.order);
        let reducers: Vec<&[Term]> = self.elements.iter().map(|g| g.terms()).collect();
        let terms = reduce_full(self.ring.field(), self.order, f.into_terms(), &reducers)?;
        Ok(Polynomial::from_sorted(&self.ring, self.order, terms))
    }

    /// Ideal membership. For a truncated basis `f` must be homogeneous of
    /// degree within the truncation.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if let (Some(t), Some(d)) = (self.truncation, f.total_degree()) {
            if d > t {
                return Err(Error::InvalidSpec(format!(
                    "membership of a degree-{d} element against a basis truncated at degree {t}"
                )));
            }
        }
        ensure_same(&self.ring, f.ring())?;
        let f = f.with_order(self.order);
        let reducers: Vec<&[Term]> = self.elements.iter().map(|g| g.terms()).collect();
        reduces_to_zero(self.ring.field(), self.order, f.into_terms(), &reducers)
    }

    /// Buchberger's criterion: every S-polynomial reduces to zero. Pairs with
    /// coprime leading monomials are skipped (they always reduce to zero).
    pub fn is_groebner(&self) -> Result<bool> {
        let reducers: Vec<&[Term]> = self.elements.iter().map(|g| g.terms()).collect();
        let field = self.ring.field();
        for i in 0..self.elements.len() {
            for j in (i + 1)..self.elements.len() {
                let (a, b) = (&self.elements[i], &self.elements[j]);
                let (la, lb) = (a.leading_monomial().unwrap(), b.leading_monomial().unwrap());
                if la.is_coprime(lb) {
                    continue;
                }
                let l = la.lcm(lb);
                if !self.covers_degree(l.degree()) {
                    continue;
                }
                let s = s_polynomial(field, self.order, a.terms(), b.terms(), &l)?;
                if !reduce_full(field, self.order, s, &reducers)?.is_empty() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `dim_k (S/I)_d`: the number of degree-`d` monomials outside the
    /// leading-term ideal.
    pub fn hilbert_function(&self, d: u64) -> Result<u64> {
        if !self.covers_degree(d) {
            return Err(Error::InvalidSpec(format!(
                "Hilbert function in degree {d} needs a basis truncated at degree >= {d}"
            )));
        }
        Ok(hilbert_function_of_monomials(
            &self.leading_monomials(),
            self.ring.nvars(),
            d,
        ))
    }

    /// Krull dimension of `S/I`: the largest set of variables supporting no
    /// leading monomial.
    pub fn krull_dimension(&self) -> Result<usize> {
        if self.truncation.is_some() {
            return Err(Error::InvalidSpec(
                "Krull dimension needs a full Groebner basis".into(),
            ));
        }
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        Ok(max_independent_set(
            &self.leading_monomials(),
            self.ring.nvars(),
        ))
    }
}

fn sort_elements(elements: &mut [Polynomial], order: MonomialOrder) {
    elements.sort_by(|a, b| {
        order.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
}

fn find_reducer<'a>(reducers: &[&'a [Term]], m: &Monomial) -> Option<&'a [Term]> {
    reducers.iter().copied().find(|g| g[0].mono.divides(m))
}

/// Full reduction of `f` by monic `reducers`.
pub(crate) fn reduce_full(
    field: &PrimeField,
    order: MonomialOrder,
    mut f: Vec<Term>,
    reducers: &[&[Term]],
) -> Result<Vec<Term>> {
    let mut rem = Vec::new();
    let mut start = 0;
    while start < f.len() {
        match find_reducer(reducers, &f[start].mono) {
            Some(g) => {
                let m = g[0].mono.quotient_of(&f[start].mono).expect("divides");
                let c = f[start].coeff;
                f = sub_scaled(field, order, &f[start + 1..], c, &m, &g[1..])?;
                start = 0;
            }
            None => {
                rem.push(f[start].clone());
                start += 1;
            }
        }
    }
    Ok(rem)
}

/// Top-reduces until the leading term is irreducible; valid as a membership
/// test when `reducers` form a Groebner basis.
pub(crate) fn reduces_to_zero(
    field: &PrimeField,
    order: MonomialOrder,
    mut f: Vec<Term>,
    reducers: &[&[Term]],
) -> Result<bool> {
    while let Some(t) = f.first() {
        match find_reducer(reducers, &t.mono) {
            Some(g) => {
                let m = g[0].mono.quotient_of(&t.mono).expect("divides");
                let c = t.coeff;
                f = sub_scaled(field, order, &f[1..], c, &m, &g[1..])?;
            }
            None => return Ok(false),
        }
    }
    Ok(true)
}

/// S-polynomial of monic `a`, `b` with `lcm` of their leading monomials.
fn s_polynomial(
    field: &PrimeField,
    order: MonomialOrder,
    a: &[Term],
    b: &[Term],
    lcm: &Monomial,
) -> Result<Vec<Term>> {
    let ma = a[0].mono.quotient_of(lcm).expect("lcm");
    let mb = b[0].mono.quotient_of(lcm).expect("lcm");
    let left = a[1..]
        .iter()
        .map(|t| {
            Ok(Term {
                coeff: t.coeff,
                mono: t.mono.mul(&ma)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    sub_scaled(
        field,
        order,
        &left,
        crate::field::FieldElement::ONE,
        &mb,
        &b[1..],
    )
}

fn make_monic(field: &PrimeField, terms: &mut [Term]) {
    if let Some(lead) = terms.first() {
        if !lead.coeff.is_one() {
            let inv = field.inv(lead.coeff);
            for t in terms.iter_mut() {
                t.coeff = field.mul(t.coeff, inv);
            }
        }
    }
}

/// Queue key: (degree, kind, i, j). Kind 0 is an input generator, kind 1 an
/// S-pair; smaller keys are processed first (normal selection strategy).
type Key = (u64, u8, usize, usize);

struct Engine<'a> {
    field: &'a PrimeField,
    polys: Vec<Vec<Term>>,
    active: Vec<bool>,
    queue: BTreeMap<Key, Monomial>,
}

impl<'a> Engine<'a> {
    fn lm(&self, i: usize) -> &Monomial {
        &self.polys[i][0].mono
    }

    fn active_reducers(&self) -> Vec<&[Term]> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p.as_slice())
            .collect()
    }

    /// Gebauer-Moeller update: applies the coprime criterion and the chain
    /// criterion while adding the new basis element `h`.
    fn update(&mut self, h: usize) {
        let lh = self.lm(h).clone();
        let candidates: Vec<(usize, Monomial)> = (0..h)
            .filter(|&g| self.active[g])
            .map(|g| (g, lh.lcm(self.lm(g))))
            .collect();

        let mut pending = candidates;
        pending.reverse();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        while let Some((g1, l1)) = pending.pop() {
            let coprime = lh.is_coprime(self.lm(g1));
            if coprime
                || (!pending.iter().any(|(_, l2)| l2.divides(&l1))
                    && !kept.iter().any(|(_, l2, _)| l2.divides(&l1)))
            {
                kept.push((g1, l1, coprime));
            }
        }

        // chain criterion on old pairs
        let lms: Vec<Monomial> = self.polys.iter().map(|p| p[0].mono.clone()).collect();
        self.queue.retain(|&(_, kind, i, j), l| {
            if kind == 0 {
                return true;
            }
            !(lh.divides(l) && lh.lcm(&lms[i]) != *l && lh.lcm(&lms[j]) != *l)
        });

        for (g, l, coprime) in kept {
            if !coprime {
                self.queue.insert((l.degree(), 1, g, h), l);
            }
        }

        for g in 0..h {
            if self.active[g] && lh.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
        self.active.push(true);
    }

    fn insert(&mut self, mut terms: Vec<Term>) {
        make_monic(self.field, &mut terms);
        self.polys.push(terms);
        let h = self.polys.len() - 1;
        self.update(h);
    }
}

fn prepare(ring: &Ring, gens: &[Polynomial], order: MonomialOrder) -> Result<Vec<Polynomial>> {
    for g in gens {
        ensure_same(ring, g.ring())?;
    }
    Ok(gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.with_order(order))
        .collect())
}

fn run(
    ring: &Ring,
    gens: Vec<Polynomial>,
    order: MonomialOrder,
    max_degree: Option<u64>,
) -> Result<GroebnerBasis> {
    let field = ring.field();
    let unit = Polynomial::one(ring).with_order(order);
    if gens.iter().any(|g| g.is_unit()) {
        return Ok(GroebnerBasis {
            ring: ring.clone(),
            order,
            elements: vec![unit],
            reduced: true,
            truncation: max_degree,
        });
    }

    let mut engine = Engine {
        field,
        polys: Vec::new(),
        active: Vec::new(),
        queue: BTreeMap::new(),
    };
    let mut inputs: Vec<Option<Vec<Term>>> = Vec::with_capacity(gens.len());
    for (i, g) in gens.into_iter().enumerate() {
        let d = g.total_degree().unwrap();
        engine
            .queue
            .insert((d, 0, i, 0), Monomial::one(ring.nvars()));
        inputs.push(Some(g.into_terms()));
    }

    while let Some((&key, _)) = engine.queue.iter().next() {
        let lcm = engine.queue.remove(&key).unwrap();
        let (deg, kind, i, j) = key;
        if max_degree.is_some_and(|m| deg > m) {
            break;
        }
        let candidate = if kind == 0 {
            inputs[i].take().unwrap()
        } else {
            s_polynomial(field, order, &engine.polys[i], &engine.polys[j], &lcm)?
        };
        let reducers = engine.active_reducers();
        let h = reduce_full(field, order, candidate, &reducers)?;
        if h.is_empty() {
            continue;
        }
        if h[0].mono.is_one() {
            return Ok(GroebnerBasis {
                ring: ring.clone(),
                order,
                elements: vec![unit],
                reduced: true,
                truncation: max_degree,
            });
        }
        engine.insert(h);
    }

    // interreduce the minimal basis
    let minimal: Vec<Vec<Term>> = engine
        .polys
        .iter()
        .zip(&engine.active)
        .filter(|(_, a)| **a)
        .map(|(p, _)| p.clone())
        .collect();
    let mut elements = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let others: Vec<&[Term]> = minimal
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, p)| p.as_slice())
            .collect();
        let mut tail = reduce_full(field, order, g[1..].to_vec(), &others)?;
        let mut terms = Vec::with_capacity(tail.len() + 1);
        terms.push(g[0].clone());
        terms.append(&mut tail);
        elements.push(Polynomial::from_sorted(ring, order, terms));
    }
    sort_elements(&mut elements, order);
    Ok(GroebnerBasis {
        ring: ring.clone(),
        order,
        elements,
        reduced: true,
        truncation: max_degree,
    })
}

/// Reduced Groebner basis of the ideal generated by `gens`.
pub fn buchberger(ring: &Ring, gens: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis> {
    let gens = prepare(ring, gens, order)?;
    run(ring, gens, order, None)
}

/// Reduced Groebner basis valid through degree `max_degree`, for homogeneous
/// generators. Pairs and generators above that degree are never touched.
pub fn buchberger_truncated(
    ring: &Ring,
    gens: &[Polynomial],
    order: MonomialOrder,
    max_degree: u64,
) -> Result<GroebnerBasis> {
    let gens = prepare(ring, gens, order)?;
    if let Some(g) = gens.iter().find(|g| !g.is_homogeneous().0) {
        return Err(Error::NotHomogeneous(g.to_string()));
    }
    run(ring, gens, order, Some(max_degree))
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n.saturating_sub(k));
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of degree-`d` monomials in `n` variables.
pub fn monomial_count(n: usize, d: u64) -> u64 {
    if n == 0 {
        return u64::from(d == 0);
    }
    binomial(d + n as u64 - 1, n as u64 - 1)
}

/// Number of degree-`d` monomials in `n` variables divisible by none of `gens`.
pub fn hilbert_function_of_monomials(gens: &[Monomial], n: usize, d: u64) -> u64 {
    let exps: Vec<&[u64]> = gens.iter().map(|g| g.exponents()).collect();
    count_standard(&exps, 0, n, d)
}

fn count_standard(gens: &[&[u64]], var: usize, n: usize, d: u64) -> u64 {
    // generators whose remaining requirement fits in degree d
    let live: Vec<&[u64]> = gens
        .iter()
        .copied()
        .filter(|g| g[var..].iter().sum::<u64>() <= d)
        .collect();
    if live.iter().any(|g| g[var..].iter().all(|&a| a == 0)) {
        return 0;
    }
    if live.is_empty() {
        return monomial_count(n - var, d);
    }
    if var + 1 == n {
        // only x_{n-1}^d remains and some live generator divides it
        return 0;
    }
    (0..=d)
        .map(|a| {
            let next: Vec<&[u64]> = live.iter().copied().filter(|g| g[var] <= a).collect();
            count_standard(&next, var + 1, n, d - a)
        })
        .sum()
}

/// Largest set of variable indices containing the support of no generator.
pub fn max_independent_set(gens: &[Monomial], n: usize) -> usize {
    let supports: Vec<Vec<usize>> = gens
        .iter()
        .map(|g| {
            g.exponents()
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let mut chosen = vec![false; n];
    let mut best = 0;
    search_independent(&supports, &mut chosen, 0, 0, &mut best);
    best
}

fn search_independent(
    supports: &[Vec<usize>],
    chosen: &mut Vec<bool>,
    var: usize,
    size: usize,
    best: &mut usize,
) {
    let n = chosen.len();
    if size + (n - var) <= *best {
        return;
    }
    if var == n {
        *best = size;
        return;
    }
    chosen[var] = true;
    let ok = supports
        .iter()
        .all(|s| !s.iter().all(|&i| i <= var && chosen[i]));
    if ok {
        search_independent(supports, chosen, var + 1, size + 1, best);
    }
    chosen[var] = false;
    search_independent(supports, chosen, var + 1, size, best);
}
