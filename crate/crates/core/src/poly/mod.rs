//! Exact sparse multivariate polynomial arithmetic over the rationals:
//! monomial orders, division, gcd and square-free testing.

mod gcd;
mod monomial;
mod polynomial;
mod vars;

pub use gcd::{gcd, is_squarefree, lcm2};
pub use monomial::{Monomial, MonomialOrder};
pub use polynomial::{Coeff, Polynomial};
pub use vars::Vars;

pub(crate) use monomial::grevlex as monomial_grevlex;
