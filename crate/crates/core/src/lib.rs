//! Computer algebra over prime fields for Frobenius complexity computations.
//!
//! The crate is layered bottom-up:
//!
//! * [`field`], [`monomial`], [`order`], [`poly`], [`parse`]: exact arithmetic
//!   in `F_p[x_1, ..., x_n]` and its text syntax;
//! * [`groebner`]: Buchberger's algorithm, normal forms, Hilbert functions and
//!   Krull dimension;
//! * [`ideal`]: sums, products, intersections, colon ideals, Frobenius
//!   (bracket) powers, minimal generators and generating degree;
//! * [`cartier`]: level ideals of Cartier subalgebras, complexity sequences
//!   and the Frobenius exponent estimate.

pub mod cartier;
pub mod error;
pub mod field;
pub mod groebner;
pub mod ideal;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;
pub mod ring;

pub use cartier::{CartierKind, CartierSpec, ComplexityReport, LevelIdeal};
pub use error::{Error, Result};
pub use field::{FieldElement, PrimeField};
pub use groebner::{buchberger, buchberger_truncated, BasisStore, GroebnerBasis};
pub use ideal::Ideal;
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use parse::{parse_polynomial, parse_polynomial_in};
pub use poly::{Polynomial, Term};
pub use ring::{Ring, RingContext};
