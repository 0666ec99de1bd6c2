use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::monomial::Monomial;

/// Monomial orders. Variables are ranked `x_0 > x_1 > ... > x_{n-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic.
    #[default]
    Grevlex,
    /// Pure lexicographic.
    Lex,
    /// Block order eliminating the variables with index `>= split`.
    ///
    /// Monomials are compared first by grevlex on the eliminated block
    /// `x_split, ..., x_{n-1}`, then by grevlex on `x_0, ..., x_{split-1}`.
    /// Any monomial involving an eliminated variable exceeds every monomial
    /// free of them.
    Elimination { split: usize },
}

impl MonomialOrder {
    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => a.degree().cmp(&b.degree()).then_with(|| {
                let (x, y) = (a.exponents(), b.exponents());
                for (u, v) in x.iter().rev().zip(y.iter().rev()) {
                    if u != v {
                        return v.cmp(u);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Lex => a.exponents().cmp(b.exponents()),
            MonomialOrder::Elimination { split } => {
                let (x, y) = (a.exponents(), b.exponents());
                let s = split.min(x.len());
                Monomial::grevlex_cmp(&x[s..], &y[s..])
                    .then_with(|| Monomial::grevlex_cmp(&x[..s], &y[..s]))
            }
        }
    }

    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Grevlex => write!(f, "grevlex"),
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Elimination { split } => write!(f, "elim{split}"),
        }
    }
}

impl FromStr for MonomialOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "grevlex" | "degrevlex" | "drl" => Ok(MonomialOrder::Grevlex),
            "lex" | "plex" => Ok(MonomialOrder::Lex),
            other => other
                .strip_prefix("elim")
                .and_then(|k| k.parse().ok())
                .map(|split| MonomialOrder::Elimination { split })
                .ok_or_else(|| format!("unknown monomial order `{other}`")),
        }
    }
}
