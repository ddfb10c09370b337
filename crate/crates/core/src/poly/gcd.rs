use crate::error::{Error, Result};
use crate::grobner::ideal_intersect;

use super::monomial::MonomialOrder;
use super::polynomial::Polynomial;

/// Least common multiple of two nonzero polynomials: the monic generator of
/// the (principal) intersection of the two principal ideals.
pub fn lcm2(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    let order = MonomialOrder::DegRevLex;
    let gens = ideal_intersect(
        std::slice::from_ref(a),
        std::slice::from_ref(b),
        order,
    )?;
    if gens.len() != 1 {
        return Err(Error::Internal(format!(
            "intersection of principal ideals returned {} generators",
            gens.len()
        )));
    }
    Ok(gens.into_iter().next().unwrap().monic(order))
}

fn gcd2(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    let order = MonomialOrder::DegRevLex;
    if a.is_zero() {
        return Ok(b.monic(order));
    }
    if b.is_zero() {
        return Ok(a.monic(order));
    }
    if a.is_constant() || b.is_constant() {
        return Ok(Polynomial::one(a.vars()));
    }
    if b.divisible_by(a) {
        return Ok(a.monic(order));
    }
    if a.divisible_by(b) {
        return Ok(b.monic(order));
    }
    let l = lcm2(a, b)?;
    let prod = a.checked_mul(b)?;
    Ok(prod.div_exact(&l, order)?.monic(order))
}

/// Greatest common divisor of a list of polynomials, monic under the
/// canonical order. At least one input must be nonzero.
pub fn gcd(ps: &[Polynomial]) -> Result<Polynomial> {
    // drop zeros and duplicates up to constants, fold simplest first so the
    // accumulator collapses early
    let mut inputs: Vec<&Polynomial> = Vec::new();
    for p in ps {
        if p.is_zero() {
            continue;
        }
        if inputs.iter().any(|q| q.associate_of(p)) {
            continue;
        }
        inputs.push(p);
    }
    inputs.sort_by_key(|p| (p.total_degree().unwrap_or(0), p.terms().len()));
    let mut acc: Option<Polynomial> = None;
    for p in inputs {
        acc = Some(match acc {
            None => p.monic(MonomialOrder::DegRevLex),
            Some(g) => {
                if g.is_one() {
                    g // gcd can only stay 1
                } else {
                    gcd2(&g, p)?
                }
            }
        });
    }
    acc.ok_or(Error::AllInputsZero)
}

/// Square-freeness test in characteristic zero:
/// `gcd(p, dp/dz_1, ..., dp/dz_n)` is constant iff no irreducible factor of
/// `p` repeats.
pub fn is_squarefree(p: &Polynomial) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(true);
    }
    let mut list = vec![p.clone()];
    for v in 0..p.vars().len() {
        list.push(p.partial_derivative(v)?);
    }
    Ok(gcd(&list)?.is_constant())
}
