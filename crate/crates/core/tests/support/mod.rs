//! Reference computations that do not go through Groebner bases: monomial
//! combinatorics, linear algebra in a single degree, and closed forms for the
//! small Cartier examples.
#![allow(dead_code)]

use std::collections::BTreeSet;

use frobex_core::Polynomial;

pub type Exps = Vec<u64>;
pub type DensePoly = Vec<(u64, Exps)>;

pub fn divides(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn degree(a: &[u64]) -> u64 {
    a.iter().sum()
}

/// Sorted minimal monomial generators.
pub fn minimize(gens: &[Exps]) -> Vec<Exps> {
    let uniq: BTreeSet<Exps> = gens.iter().cloned().collect();
    let uniq: Vec<Exps> = uniq.into_iter().collect();
    uniq.iter()
        .filter(|g| !uniq.iter().any(|h| h != *g && divides(h, g)))
        .cloned()
        .collect()
}

pub fn member(gens: &[Exps], m: &[u64]) -> bool {
    gens.iter().any(|g| divides(g, m))
}

pub fn product(a: &[Exps], b: &[Exps]) -> Vec<Exps> {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            out.push(x.iter().zip(y).map(|(u, v)| u + v).collect());
        }
    }
    minimize(&out)
}

pub fn power(a: &[Exps], n: usize, k: u64) -> Vec<Exps> {
    let mut acc = vec![vec![0; n]];
    for _ in 0..k {
        acc = product(&acc, a);
    }
    acc
}

pub fn bracket(a: &[Exps], q: u64) -> Vec<Exps> {
    a.iter()
        .map(|g| g.iter().map(|x| x * q).collect())
        .collect()
}

pub fn sum(a: &[Exps], b: &[Exps]) -> Vec<Exps> {
    minimize(&[a, b].concat())
}

pub fn intersection(a: &[Exps], b: &[Exps]) -> Vec<Exps> {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            out.push(x.iter().zip(y).map(|(u, v)| *u.max(v)).collect());
        }
    }
    minimize(&out)
}

/// `(a : b)` for monomial ideals, `b` nonzero.
pub fn colon(a: &[Exps], b: &[Exps]) -> Vec<Exps> {
    let mut acc: Option<Vec<Exps>> = None;
    for m in b {
        let part: Vec<Exps> = minimize(
            &a.iter()
                .map(|g| g.iter().zip(m).map(|(u, v)| u.saturating_sub(*v)).collect())
                .collect::<Vec<_>>(),
        );
        acc = Some(match acc {
            None => part,
            Some(prev) => intersection(&prev, &part),
        });
    }
    acc.expect("nonzero divisor ideal")
}

pub fn same_ideal(a: &[Exps], b: &[Exps]) -> bool {
    minimize(a) == minimize(b)
}

pub fn monomials_of_degree(n: usize, d: u64) -> Vec<Exps> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials_of_degree(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Largest set of variables carrying no generator.
pub fn independent_dimension(gens: &[Exps], n: usize) -> usize {
    (0u32..1 << n)
        .filter(|mask| {
            gens.iter().all(|g| {
                g.iter()
                    .enumerate()
                    .any(|(i, &x)| x > 0 && mask & (1 << i) == 0)
            })
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// `a > b` in graded reverse lexicographic order.
pub fn grevlex_greater(a: &[u64], b: &[u64]) -> bool {
    if degree(a) != degree(b) {
        return degree(a) > degree(b);
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return a[i] < b[i];
        }
    }
    false
}

pub fn dense(f: &Polynomial) -> DensePoly {
    f.terms()
        .iter()
        .map(|t| (t.coeff.value() as u64, t.mono.exponents().to_vec()))
        .collect()
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let (mut base, mut k) = (a % p, p - 2);
    while k > 0 {
        if k & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        k >>= 1;
    }
    result
}

/// Rank over `F_p` by Gaussian elimination.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][c].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][c], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rows `m·g` of degree `d` for homogeneous generators, over the monomial basis
/// of degree `d`.
fn macaulay_rows(gens: &[DensePoly], n: usize, d: u64, p: u64) -> (Vec<Exps>, Vec<Vec<u64>>) {
    let basis = monomials_of_degree(n, d);
    let index = |m: &Exps| basis.iter().position(|b| b == m).unwrap();
    let mut rows = Vec::new();
    for g in gens {
        let Some((_, lead)) = g.first() else { continue };
        let dg = degree(lead);
        if dg > d {
            continue;
        }
        for m in monomials_of_degree(n, d - dg) {
            let mut row = vec![0u64; basis.len()];
            for (c, e) in g {
                let prod: Exps = e.iter().zip(&m).map(|(a, b)| a + b).collect();
                let i = index(&prod);
                row[i] = (row[i] + c) % p;
            }
            rows.push(row);
        }
    }
    (basis, rows)
}

/// `dim_k (S/I)_d` from the rank of the degree-`d` Macaulay matrix.
pub fn macaulay_hilbert(gens: &[DensePoly], n: usize, d: u64, p: u64) -> u64 {
    let (basis, rows) = macaulay_rows(gens, n, d, p);
    (basis.len() - rank_mod_p(rows, p)) as u64
}

/// Membership of a homogeneous `f` in the ideal of homogeneous `gens`.
pub fn macaulay_member(gens: &[DensePoly], f: &DensePoly, n: usize, p: u64) -> bool {
    let Some((_, lead)) = f.first() else {
        return true;
    };
    let d = degree(lead);
    let (basis, mut rows) = macaulay_rows(gens, n, d, p);
    let before = rank_mod_p(rows.clone(), p);
    let mut row = vec![0u64; basis.len()];
    for (c, e) in f {
        let i = basis.iter().position(|b| b == e).unwrap();
        row[i] = (row[i] + c) % p;
    }
    rows.push(row);
    rank_mod_p(rows, p) == before
}

/// `⌈(num/den)·(q - 1)⌉`.
pub fn ceil_exponent(num: u64, den: u64, q: u64) -> u64 {
    (num * (q - 1)).div_ceil(den)
}

/// How the staircase oracle builds level ideals.
#[derive(Clone, Debug)]
pub enum MonomialSystem {
    Total,
    Pair { a: Vec<Exps>, num: u64, den: u64 },
}

/// Level ideal `a_e·(I^[q] : I) + I^[q]` for a monomial ideal `I`.
pub fn staircase_level(i: &[Exps], n: usize, p: u64, e: u32, system: &MonomialSystem) -> Vec<Exps> {
    let q = p.pow(e);
    let unit = vec![vec![0; n]];
    let colon_part = if i.is_empty() {
        unit.clone()
    } else {
        colon(&bracket(i, q), i)
    };
    let a_e = match system {
        MonomialSystem::Total => unit,
        MonomialSystem::Pair { a, num, den } => power(a, n, ceil_exponent(*num, *den, q)),
    };
    sum(&product(&a_e, &colon_part), &bracket(i, q))
}

/// `c_e = dim_k L_e / (K_e + m·L_e)` by listing every monomial up to the largest
/// generator degree of `L_e`.
pub fn staircase_complexity(i: &[Exps], n: usize, p: u64, e: u32, system: &MonomialSystem) -> u64 {
    let levels: Vec<Vec<Exps>> = (1..=e)
        .map(|k| staircase_level(i, n, p, k, system))
        .collect();
    let l = &levels[e as usize - 1];
    let mut k = bracket(i, p.pow(e));
    for a in 1..e {
        let left = &levels[a as usize - 1];
        let right = bracket(&levels[(e - a) as usize - 1], p.pow(a));
        k = sum(&k, &product(left, &right));
    }
    let top = l.iter().map(|g| degree(g)).max().unwrap_or(0);
    let mut count = 0;
    for d in 0..=top {
        for m in monomials_of_degree(n, d) {
            if !member(l, &m) || member(&k, &m) {
                continue;
            }
            let in_ml = (0..n).any(|v| {
                m[v] > 0 && {
                    let mut below = m.clone();
                    below[v] -= 1;
                    member(l, &below)
                }
            });
            if !in_ml {
                count += 1;
            }
        }
    }
    count
}

/// Closed form for `I = (x^a)` in one variable: `L_e = (x^{a(q-1)})`,
/// `K_1 = (x^{ap})`, and `K_e = L_e` for `e ≥ 2`. Returns the exponents of the
/// generators of `L_e` and `K_e` and the resulting `c_e`.
pub fn univariate(a: u64, p: u64, e: u32) -> (u64, u64, u64) {
    let q = p.pow(e);
    let l = a * (q - 1);
    let k = if e == 1 {
        a * q
    } else {
        (1..e)
            .map(|s| a * (p.pow(s) - 1) + a * (p.pow(e - s) - 1) * p.pow(s))
            .chain([a * q])
            .min()
            .unwrap()
    };
    (l, k, u64::from(k > l))
}

/// Complexity sequence of the total Cartier algebra of the Segre product of
/// `k[x_1, x_2, x_3]` and `k[y_1, y_2]` (2×2 minors of a generic 3×2 matrix).
/// Degree-`e` operators are generated by the `x`-monomials of degree `p^e - 1`
/// and composition sends `(s, s')` at levels `(a, b)` to `s^{p^b}·s'`; `c_e`
/// counts the monomials not reached by composition.
pub fn segre_complexity(p: u64, emax: u32) -> Vec<u64> {
    let mut levels: Vec<BTreeSet<Exps>> = vec![BTreeSet::new()];
    let mut out = Vec::new();
    for e in 1..=emax {
        let all: BTreeSet<Exps> = monomials_of_degree(3, p.pow(e) - 1).into_iter().collect();
        let mut reached = BTreeSet::new();
        for a in 1..e {
            let b = e - a;
            let qb = p.pow(b);
            for s in &levels[a as usize] {
                for t in &levels[b as usize] {
                    reached.insert(s.iter().zip(t).map(|(x, y)| qb * x + y).collect::<Exps>());
                }
            }
        }
        out.push(all.difference(&reached).count() as u64);
        levels.push(all);
    }
    out
}

pub mod random {
    use frobex_core::{FieldElement, Ideal, Monomial, MonomialOrder, Polynomial, Ring, Term};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::{minimize, monomials_of_degree, Exps};

    pub fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    pub fn monomial_ideal(
        rng: &mut ChaCha8Rng,
        n: usize,
        max_degree: u64,
        count: usize,
    ) -> Vec<Exps> {
        let gens: Vec<Exps> = (0..count)
            .map(|_| {
                let d = rng.random_range(1..=max_degree);
                let all = monomials_of_degree(n, d);
                all[rng.random_range(0..all.len())].clone()
            })
            .collect();
        minimize(&gens)
    }

    pub fn to_ideal(ring: &Ring, gens: &[Exps]) -> Ideal {
        let polys = gens
            .iter()
            .map(|g| Polynomial::monomial(ring, FieldElement::ONE, Monomial::new(g).unwrap()))
            .collect();
        Ideal::new(ring, polys).unwrap()
    }

    /// A nonzero homogeneous polynomial of degree `d` with up to `terms` terms.
    pub fn homogeneous(rng: &mut ChaCha8Rng, ring: &Ring, d: u64, terms: usize) -> Polynomial {
        let p = ring.characteristic();
        let all = monomials_of_degree(ring.nvars(), d);
        let picked = rand::seq::index::sample(rng, all.len(), terms.min(all.len()));
        let ts: Vec<Term> = picked
            .iter()
            .map(|k| Term {
                coeff: ring.field().element(rng.random_range(1..p) as i64),
                mono: Monomial::new(&all[k]).unwrap(),
            })
            .collect();
        Polynomial::from_terms(ring, MonomialOrder::Grevlex, ts)
    }

    /// A proper nonzero homogeneous ideal.
    pub fn homogeneous_ideal(
        rng: &mut ChaCha8Rng,
        ring: &Ring,
        max_degree: u64,
        count: usize,
    ) -> Ideal {
        let gens = (0..count)
            .map(|_| {
                let d = rng.random_range(1..=max_degree);
                let t = rng.random_range(1..=3);
                homogeneous(rng, ring, d, t)
            })
            .collect();
        Ideal::new(ring, gens).unwrap()
    }
}
