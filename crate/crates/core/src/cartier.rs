//! Cartier subalgebras through their level ideals.
//!
//! A degree-`e` Cartier operator on `R = S/I` is `Tr(s · -)` for some
//! `s ∈ (I^[q] : I)`, `q = p^e`, unique modulo `I^[q]`. A Cartier subalgebra is
//! therefore described by its level ideals `I^[q] ⊆ L_e ⊆ (I^[q] : I)`.
//! Composition of operators corresponds to `L_a · L_b^[p^a] ⊆ L_{a+b}`, so the
//! part of level `e` generated by lower levels is
//!
//! ```text
//! K_e = Σ_{0<a<e} L_a · L_{e-a}^[p^a] + I^[p^e]
//! ```
//!
//! Left multiplication by `r` acts on `s` as `r·s`, right multiplication as
//! `r^q·s`; both send `m·L_e` into itself. With graded Nakayama the number of
//! new degree-`e` algebra generators is
//!
//! ```text
//! c_e = dim_k L_e / (K_e + m·L_e)
//! ```
//!
//! which is a finite sum of Hilbert function differences in degrees up to the
//! generating degree `d(L_e)`: above it `L_e` and `m·L_e` agree.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};
use std::time::Instant;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{ensure_same, Ring};

/// Default allowance added to the degree bound to absorb finite-`e` effects.
pub const DEFAULT_SLACK: f64 = 0.25;

/// How the levels `a_e` of the subalgebra are given.
#[derive(Clone, Debug)]
pub enum CartierKind {
    /// The total Cartier algebra: `a_e = (1)`.
    Total,
    /// `a_e = a^⌈t(p^e - 1)⌉` for a homogeneous ideal `a` and rational `t ≥ 0`.
    Pair { a: Ideal, t: Ratio<u64> },
    /// Explicit ideals `a_e` for `1 ≤ e ≤ E`; `a_0 = (1)` is implied.
    Explicit { levels: BTreeMap<u32, Ideal> },
}

/// `L_e = J_e`, together with its generating degree.
#[derive(Clone, Debug)]
pub struct LevelIdeal {
    pub e: u32,
    /// Generated by a minimal homogeneous generating set.
    pub ideal: Ideal,
    /// Largest degree of a minimal generator; `0` for the unit ideal and for
    /// the zero ideal.
    pub generating_degree: u64,
}

/// A Cartier subalgebra of `R = S/I`, with cached level ideals.
pub struct CartierSpec {
    base: Ideal,
    kind: CartierKind,
    levels: RwLock<HashMap<u32, Arc<LevelIdeal>>>,
}

/// Result of one complexity term computation.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexityTerm {
    pub e: u32,
    pub c: u64,
    pub generating_degree: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LevelRecord {
    pub e: u32,
    pub c: u64,
    pub d: u64,
    pub millis: u64,
}

/// Inputs and outcome of the check `estimate ≤ max{l, 2^(n-2)}·dim R + slack`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundVerdict {
    /// Empirical degree-growth exponent `max_e log_p(d_e)/e`.
    pub l: f64,
    pub n: usize,
    pub dim: usize,
    /// `max{l, 2^(n-2)}·dim R`.
    pub rhs: f64,
    pub slack: f64,
    pub estimate: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexityReport {
    pub p: u64,
    pub n: usize,
    pub dim: usize,
    pub records: Vec<LevelRecord>,
    /// `log_p(c_e)/e` per computed level; `-inf` where `c_e = 0`.
    pub per_level_estimates: Vec<f64>,
    /// Estimate of the Frobenius exponent; `-inf` when no level `e ≥ 2`
    /// contributes generators.
    pub exponent_estimate: f64,
    pub bound: BoundVerdict,
}

/// `⌈t(p^e - 1)⌉` in exact integer arithmetic.
pub fn pair_exponent(t: Ratio<u64>, p: u64, e: u32) -> Result<u64> {
    let q = (p as u128)
        .checked_pow(e)
        .ok_or_else(|| Error::InvalidSpec(format!("p^{e} overflows")))?;
    let num = *t.numer() as u128 * (q - 1);
    let den = *t.denom() as u128;
    let v = num.div_ceil(den);
    u64::try_from(v).map_err(|_| Error::InvalidSpec(format!("exponent {v} too large")))
}

/// `(I^[p^e] : I)`, with `(0 : 0)` read as the unit ideal.
pub fn total_cartier_level(base: &Ideal, e: u32) -> Result<LevelIdeal> {
    if e == 0 {
        return Err(Error::InvalidSpec("levels start at e = 1".into()));
    }
    if !base.is_homogeneous() {
        return Err(Error::NotHomogeneous(base.to_string()));
    }
    if base.is_unit()? {
        return Err(Error::UnitIdeal);
    }
    let ideal = if base.is_zero() {
        Ideal::unit(base.ring()).reordered(base.order())
    } else {
        base.bracket_power(e)?.colon(base)?
    };
    finish_level(e, ideal)
}

fn finish_level(e: u32, ideal: Ideal) -> Result<LevelIdeal> {
    if ideal.is_zero() {
        return Ok(LevelIdeal {
            e,
            ideal,
            generating_degree: 0,
        });
    }
    if ideal.is_unit()? {
        let unit = Ideal::unit(ideal.ring()).reordered(ideal.order());
        return Ok(LevelIdeal {
            e,
            ideal: unit,
            generating_degree: 0,
        });
    }
    let mins = ideal.minimal_generators()?;
    let generating_degree = mins
        .iter()
        .filter_map(|g| g.total_degree())
        .max()
        .unwrap_or(0);
    Ok(LevelIdeal {
        e,
        ideal: ideal.regenerated(mins),
        generating_degree,
    })
}

/// Fedder's criterion: `R = S/I` is F-pure iff `(I^[q] : I) ⊄ m^[q]`.
pub fn fedder_fpure(base: &Ideal, e: u32) -> Result<bool> {
    let level = total_cartier_level(base, e)?;
    let mq = Ideal::maximal(base.ring())
        .reordered(base.order())
        .bracket_power(e)?;
    for g in level.ideal.gens() {
        if !mq.contains(g)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The first violated containment found by [`validate_fgraded`].
#[derive(Clone, Debug, PartialEq)]
pub struct FGradedWitness {
    pub e: u32,
    pub e_prime: u32,
    /// Generator of `a_e · a_{e'}^[p^e]` outside `a_{e+e'}`; `None` when the
    /// failure is `a_0 ≠ (1)`.
    pub generator: Option<String>,
}

/// Checks `a_0 = (1)` and `a_e · a_{e'}^[p^e] ⊆ a_{e+e'}` for `e + e' ≤ horizon`.
/// Triples are scanned by `e + e'`, then by `e`. A missing `a_0` means `(1)`.
pub fn validate_fgraded(
    levels: &BTreeMap<u32, Ideal>,
    horizon: u32,
) -> Result<Option<FGradedWitness>> {
    let Some(any) = levels.values().next() else {
        return Err(Error::InvalidSpec("no levels given".into()));
    };
    let ring = any.ring().clone();
    for a in levels.values() {
        ensure_same(&ring, a.ring())?;
    }
    let unit = Ideal::unit(&ring);
    let level = |e: u32| -> Result<&Ideal> {
        match levels.get(&e) {
            Some(a) => Ok(a),
            None if e == 0 => Ok(&unit),
            None => Err(Error::MissingLevel(e)),
        }
    };
    if !level(0)?.is_unit()? {
        return Ok(Some(FGradedWitness {
            e: 0,
            e_prime: 0,
            generator: None,
        }));
    }
    for total in 0..=horizon {
        let target = level(total)?;
        for e in 0..=total {
            let e_prime = total - e;
            let lhs = level(e)?.product(&level(e_prime)?.bracket_power(e)?)?;
            if let Some(g) = target.first_outside(&lhs)? {
                return Ok(Some(FGradedWitness {
                    e,
                    e_prime,
                    generator: Some(g.to_string()),
                }));
            }
        }
    }
    Ok(None)
}

/// Estimated Frobenius exponent from `c_1, ..., c_E`: `-inf` when every
/// `c_e` with `e ≥ 2` vanishes, otherwise `log_p(c_e)/e` at the last `e` with
/// `c_e > 0`. With a single level the estimate is `log_p(c_1)`.
pub fn exponent_estimate(p: u64, cs: &[u64]) -> f64 {
    let lp = (p as f64).ln();
    let rate = |e: usize, c: u64| (c as f64).ln() / lp / e as f64;
    match cs.len() {
        0 => f64::NEG_INFINITY,
        1 if cs[0] > 0 => rate(1, cs[0]),
        1 => f64::NEG_INFINITY,
        _ => cs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .find(|(_, &c)| c > 0)
            .map_or(f64::NEG_INFINITY, |(i, &c)| rate(i + 1, c)),
    }
}

/// `log_p(c)/e`, `-inf` for `c = 0`.
pub fn level_estimate(p: u64, e: u32, c: u64) -> f64 {
    if c == 0 {
        f64::NEG_INFINITY
    } else {
        (c as f64).ln() / (p as f64).ln() / e as f64
    }
}

/// Checks the estimate in `report` against `max{l, 2^(n-2)}·dim R + slack`.
pub fn bound_check(report: &ComplexityReport, slack: f64) -> BoundVerdict {
    let p = report.p as f64;
    let l = report
        .records
        .iter()
        .filter(|r| r.d > 0)
        .map(|r| (r.d as f64).ln() / p.ln() / r.e as f64)
        .fold(0.0f64, f64::max);
    let regularity_exponent = 2f64.powi(report.n as i32 - 2);
    let rhs = l.max(regularity_exponent) * report.dim as f64;
    let estimate = report.exponent_estimate;
    BoundVerdict {
        l,
        n: report.n,
        dim: report.dim,
        rhs,
        slack,
        estimate,
        ok: estimate <= rhs + slack,
    }
}

impl CartierSpec {
    pub fn total(base: Ideal) -> Result<Self> {
        Self::new(base, CartierKind::Total)
    }

    pub fn pair(base: Ideal, a: Ideal, t: Ratio<u64>) -> Result<Self> {
        Self::new(base, CartierKind::Pair { a, t })
    }

    pub fn explicit(base: Ideal, levels: BTreeMap<u32, Ideal>) -> Result<Self> {
        Self::new(base, CartierKind::Explicit { levels })
    }

    /// Validates the description; all ideals are moved to the base ideal's
    /// working order.
    pub fn new(base: Ideal, kind: CartierKind) -> Result<Self> {
        if !base.is_homogeneous() {
            return Err(Error::NotHomogeneous(base.to_string()));
        }
        if base.is_unit()? {
            return Err(Error::UnitIdeal);
        }
        let order = base.order();
        let kind = match kind {
            CartierKind::Total => CartierKind::Total,
            CartierKind::Pair { a, t } => {
                ensure_same(base.ring(), a.ring())?;
                if !a.is_homogeneous() {
                    return Err(Error::NotHomogeneous(a.to_string()));
                }
                CartierKind::Pair {
                    a: a.reordered(order),
                    t,
                }
            }
            CartierKind::Explicit { levels } => {
                let mut out = BTreeMap::new();
                for (e, a) in levels {
                    ensure_same(base.ring(), a.ring())?;
                    if e == 0 {
                        if !a.is_unit()? {
                            return Err(Error::InvalidSpec(
                                "explicit level a_0 must be the unit ideal".into(),
                            ));
                        }
                        continue;
                    }
                    if !a.is_homogeneous() {
                        return Err(Error::NotHomogeneous(a.to_string()));
                    }
                    out.insert(e, a.reordered(order));
                }
                CartierKind::Explicit { levels: out }
            }
        };
        Ok(CartierSpec {
            base,
            kind,
            levels: RwLock::new(HashMap::new()),
        })
    }

    pub fn base(&self) -> &Ideal {
        &self.base
    }

    pub fn kind(&self) -> &CartierKind {
        &self.kind
    }

    pub fn ring(&self) -> &Ring {
        self.base.ring()
    }

    pub fn order(&self) -> MonomialOrder {
        self.base.order()
    }

    pub fn characteristic(&self) -> u64 {
        self.ring().characteristic()
    }

    /// The same subalgebra computed under another monomial order.
    pub fn reordered(&self, order: MonomialOrder) -> Result<CartierSpec> {
        CartierSpec::new(self.base.reordered(order), self.kind.clone())
    }

    /// The ideal `a_e` of the F-graded system.
    pub fn system_level(&self, e: u32) -> Result<Ideal> {
        let unit = || Ideal::unit(self.ring()).reordered(self.order());
        match &self.kind {
            CartierKind::Total => Ok(unit()),
            CartierKind::Pair { a, t } => a.power(pair_exponent(*t, self.characteristic(), e)?),
            CartierKind::Explicit { levels } => {
                if e == 0 {
                    return Ok(unit());
                }
                levels.get(&e).cloned().ok_or(Error::MissingLevel(e))
            }
        }
    }

    /// `L_e = a_e·(I^[q] : I) + I^[q]`; cached.
    pub fn level_ideal(&self, e: u32) -> Result<Arc<LevelIdeal>> {
        if e == 0 {
            return Err(Error::InvalidSpec("levels start at e = 1".into()));
        }
        if let Some(l) = self.levels.read().unwrap().get(&e) {
            return Ok(l.clone());
        }
        let total = total_cartier_level(&self.base, e)?;
        let level = match &self.kind {
            CartierKind::Total => total,
            _ => {
                let a = self.system_level(e)?;
                let bracket = self.base.bracket_power(e)?;
                finish_level(e, a.product(&total.ideal)?.sum(&bracket)?)?
            }
        };
        let level = Arc::new(level);
        self.levels.write().unwrap().insert(e, level.clone());
        Ok(level)
    }

    /// `K_e = Σ_{0<a<e} L_a · L_{e-a}^[p^a] + I^[p^e]`, the part of level `e`
    /// generated by lower levels. Summands are computed in parallel.
    pub fn subring_piece(&self, e: u32) -> Result<Ideal> {
        if e == 0 {
            return Err(Error::InvalidSpec("levels start at e = 1".into()));
        }
        for a in 1..e {
            self.level_ideal(a)?;
        }
        let summands = (1..e)
            .into_par_iter()
            .map(|a| -> Result<Ideal> {
                let left = self.level_ideal(a)?;
                let right = self.level_ideal(e - a)?;
                left.ideal.product(&right.ideal.bracket_power(a)?)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut acc = self.base.bracket_power(e)?;
        for s in &summands {
            acc = acc.sum(s)?;
        }
        Ok(acc)
    }

    /// `c_e = dim_k L_e / (K_e + m·L_e)`.
    pub fn complexity_term(&self, e: u32) -> Result<ComplexityTerm> {
        let level = self.level_ideal(e)?;
        self.complexity_term_to_degree(e, level.generating_degree)
    }

    /// Like [`CartierSpec::complexity_term`] but sums Hilbert function
    /// differences through `max_degree`, which must be at least `d(L_e)`.
    pub fn complexity_term_to_degree(&self, e: u32, max_degree: u64) -> Result<ComplexityTerm> {
        let level = self.level_ideal(e)?;
        if max_degree < level.generating_degree {
            return Err(Error::InvalidSpec(format!(
                "truncation degree {max_degree} is below d(L_{e}) = {}",
                level.generating_degree
            )));
        }
        let piece = self.subring_piece(e)?;
        if let Some(g) = level.ideal.first_outside(&piece)? {
            return Err(Error::ClosureViolation {
                e,
                witness: g.to_string(),
            });
        }
        let m = Ideal::maximal(self.ring()).reordered(self.order());
        let lower = piece.sum(&m.product(&level.ideal)?)?;
        let upper = lower.truncated_basis(max_degree)?;
        let inner = level.ideal.truncated_basis(max_degree)?;
        let mut c = 0u64;
        for d in 0..=max_degree {
            let (hl, hu) = (upper.hilbert_function(d)?, inner.hilbert_function(d)?);
            debug_assert!(hl >= hu);
            c += hl - hu;
        }
        Ok(ComplexityTerm {
            e,
            c,
            generating_degree: level.generating_degree,
        })
    }

    /// `c_1, ..., c_emax` with timings, the exponent estimate and the bound check
    /// at [`DEFAULT_SLACK`].
    pub fn complexity_sequence(&self, emax: u32) -> Result<ComplexityReport> {
        if emax == 0 {
            return Err(Error::InvalidSpec("emax must be at least 1".into()));
        }
        let p = self.characteristic();
        let mut records = Vec::with_capacity(emax as usize);
        for e in 1..=emax {
            let start = Instant::now();
            let term = self.complexity_term(e)?;
            records.push(LevelRecord {
                e,
                c: term.c,
                d: term.generating_degree,
                millis: start.elapsed().as_millis() as u64,
            });
        }
        let dim = self.base.krull_dimension()?;
        Ok(assemble_report(
            p,
            self.ring().nvars(),
            dim,
            records,
            DEFAULT_SLACK,
        ))
    }
}

/// Builds a report from per-level records.
pub fn assemble_report(
    p: u64,
    n: usize,
    dim: usize,
    records: Vec<LevelRecord>,
    slack: f64,
) -> ComplexityReport {
    let cs: Vec<u64> = records.iter().map(|r| r.c).collect();
    let per_level_estimates = records
        .iter()
        .map(|r| level_estimate(p, r.e, r.c))
        .collect();
    let mut report = ComplexityReport {
        p,
        n,
        dim,
        records,
        per_level_estimates,
        exponent_estimate: exponent_estimate(p, &cs),
        bound: BoundVerdict {
            l: 0.0,
            n,
            dim,
            rhs: 0.0,
            slack,
            estimate: 0.0,
            ok: false,
        },
    };
    report.bound = bound_check(&report, slack);
    report
}

impl Ideal {
    /// Sandwich check `I^[q] ⊆ L ⊆ (I^[q] : I)` for a level ideal of `self`.
    pub fn sandwiches(&self, level: &LevelIdeal) -> Result<bool> {
        let bracket = self.bracket_power(level.e)?;
        if !level.ideal.contains_ideal(&bracket)? {
            return Ok(false);
        }
        let total = total_cartier_level(self, level.e)?;
        total.ideal.contains_ideal(&level.ideal)
    }
}

/// Generators of `L_e` as text, in minimal-generator order.
pub fn level_generators(level: &LevelIdeal) -> Vec<String> {
    level
        .ideal
        .gens()
        .iter()
        .map(Polynomial::to_string)
        .collect()
}
