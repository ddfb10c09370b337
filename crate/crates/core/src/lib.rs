//! Factor-prime factorization of multivariate polynomial matrices over the
//! rationals.
//!
//! Given a matrix `F` of polynomials without full row rank, this crate
//! decides whether `F` admits factor-left-prime factorizations
//! `F = G * F1` and computes all of them, together with every algebraic
//! primitive the decision needs: exact polynomial arithmetic, Gröbner bases
//! for ideals and row modules, module quotients, minor invariants, divisor
//! enumeration and freeness certificates.

pub mod divisors;
pub mod error;
pub mod flp;
pub mod grobner;
pub mod io;
pub mod matrix;
pub mod poly;
pub mod quotient;

pub use error::{Error, Result};
pub use flp::{flp_factorize, frp_factorize, FlpFactorization};
pub use matrix::PolyMatrix;
pub use poly::{Monomial, MonomialOrder, Polynomial, Vars};
