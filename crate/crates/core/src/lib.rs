//! Modular computation of Gröbner bases, radicals, associated primes and
//! primary decompositions of ideals over the rationals.
//!
//! Every heavy computation is done modulo many word-sized primes in
//! parallel, lifted back to ℚ by Chinese remaindering and Farey rational
//! reconstruction, and then verified.

pub mod assprimes;
pub mod engine;
mod error;
pub mod groebner;
pub mod modstd;
pub mod numth;
pub mod unifactor;
pub mod zerodim;
pub mod poly;

pub use error::{Error, Result};
pub use groebner::GroebnerBasis;
pub use numth::{PrimePool, Rational};
pub use poly::{Ideal, LinearForm, Monomial, MonomialOrder, Poly, PolyRing};
