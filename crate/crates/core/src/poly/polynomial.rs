use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::monomial::{Monomial, MonomialOrder};
use super::vars::Vars;

/// Exact coefficient type: arbitrary-precision rationals.
pub type Coeff = BigRational;

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are kept in canonical form: no zero coefficients, no duplicate
/// monomials, sorted descending under the canonical (grevlex) order.
#[derive(Clone, Debug)]
pub struct Polynomial {
    vars: Vars,
    terms: Vec<(Monomial, Coeff)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.vars.same(&other.vars) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(vars: &Vars) -> Self {
        Polynomial { vars: vars.clone(), terms: Vec::new() }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Coeff::one())
    }

    pub fn constant(vars: &Vars, c: Coeff) -> Self {
        let mut terms = Vec::new();
        if !c.is_zero() {
            terms.push((Monomial::one(vars.len()), c));
        }
        Polynomial { vars: vars.clone(), terms }
    }

    pub fn constant_i64(vars: &Vars, c: i64) -> Self {
        Self::constant(vars, Coeff::from_integer(BigInt::from(c)))
    }

    pub fn variable(vars: &Vars, index: usize) -> Result<Self> {
        if index >= vars.len() {
            return Err(Error::IndexOutOfRange { index, len: vars.len() });
        }
        Ok(Polynomial {
            vars: vars.clone(),
            terms: vec![(Monomial::variable(vars.len(), index), Coeff::one())],
        })
    }

    /// Builds a polynomial from arbitrary (monomial, coefficient) pairs,
    /// merging duplicates and dropping zeros.
    pub fn from_terms(vars: &Vars, pairs: Vec<(Monomial, Coeff)>) -> Self {
        let mut map: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (m, c) in pairs {
            debug_assert_eq!(m.nvars(), vars.len());
            let entry = map.entry(m).or_insert_with(Coeff::zero);
            *entry += c;
        }
        let mut terms: Vec<(Monomial, Coeff)> = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        terms.reverse(); // BTreeMap ascends; canonical form descends
        Polynomial { vars: vars.clone(), terms }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.deg(var)).max().unwrap_or(0)
    }

    fn check_vars(&self, other: &Polynomial) -> Result<()> {
        if self.vars.same(&other.vars) {
            Ok(())
        } else {
            Err(Error::VariableMismatch {
                left: self.vars.to_string(),
                right: other.vars.to_string(),
            })
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_vars(other)?;
        Ok(self.add_raw(other))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_vars(other)?;
        Ok(self.add_raw(&other.neg_raw()))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_vars(other)?;
        Ok(self.mul_raw(other))
    }

    fn add_raw(&self, other: &Polynomial) -> Polynomial {
        // merge two descending term lists
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                Ordering::Greater => {
                    terms.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    terms.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca + cb;
                    if !c.is_zero() {
                        terms.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend(other.terms[j..].iter().cloned());
        Polynomial { vars: self.vars.clone(), terms }
    }

    fn neg_raw(&self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn neg(&self) -> Polynomial {
        self.neg_raw()
    }

    fn mul_raw(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        let mut map: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let entry = map.entry(m).or_insert_with(Coeff::zero);
                *entry += ca * cb;
            }
        }
        let mut terms: Vec<(Monomial, Coeff)> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.reverse();
        Polynomial { vars: self.vars.clone(), terms }
    }

    /// Multiplies by a single term `c * x^m`.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(ma, ca)| (ma.mul(m), ca * c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.vars);
        for _ in 0..e {
            acc = acc.mul_raw(self);
        }
        acc
    }

    /// Leading term under the given order.
    pub fn leading(&self, order: MonomialOrder) -> Option<(&Monomial, &Coeff)> {
        match order {
            MonomialOrder::DegRevLex => self.terms.first().map(|(m, c)| (m, c)),
            _ => self
                .terms
                .iter()
                .max_by(|(a, _), (b, _)| order.cmp(a, b))
                .map(|(m, c)| (m, c)),
        }
    }

    /// Scales the polynomial so the leading coefficient under `order` is 1.
    pub fn monic(&self, order: MonomialOrder) -> Polynomial {
        match self.leading(order) {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    /// Scales to coprime integer coefficients with positive leading
    /// coefficient under the canonical order. Keeps intermediate Buchberger
    /// results small.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut denom_lcm = BigInt::one();
        for (_, c) in &self.terms {
            denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
        }
        let mut numer_gcd = BigInt::zero();
        for (_, c) in &self.terms {
            let scaled = c.numer() * (&denom_lcm / c.denom());
            numer_gcd = num_integer::gcd(numer_gcd, scaled);
        }
        let mut factor = Coeff::new(denom_lcm, numer_gcd);
        if self.terms[0].1.clone() * &factor < Coeff::zero() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial_derivative(&self, var: usize) -> Result<Polynomial> {
        if var >= self.vars.len() {
            return Err(Error::IndexOutOfRange { index: var, len: self.vars.len() });
        }
        let pairs = self
            .terms
            .iter()
            .filter(|(m, _)| m.deg(var) > 0)
            .map(|(m, c)| {
                let e = m.deg(var);
                let mut exps = m.exps().to_vec();
                exps[var] = e - 1;
                (
                    Monomial::from_exps(exps),
                    c * Coeff::from_integer(BigInt::from(e)),
                )
            })
            .collect();
        Ok(Polynomial::from_terms(&self.vars, pairs))
    }

    /// Multivariate division: returns `(quotients, remainder)` with
    /// `self = sum(quotients[i] * divisors[i]) + remainder` and no remainder
    /// term divisible by any divisor's leading monomial.
    pub fn divrem(
        &self,
        divisors: &[Polynomial],
        order: MonomialOrder,
    ) -> Result<(Vec<Polynomial>, Polynomial)> {
        if divisors.is_empty() {
            return Err(Error::EmptyDivisorList);
        }
        for d in divisors {
            self.check_vars(d)?;
            if d.is_zero() {
                return Err(Error::ZeroDivisor);
            }
        }
        let leads: Vec<(Monomial, Coeff)> = divisors
            .iter()
            .map(|d| {
                let (m, c) = d.leading(order).unwrap();
                (m.clone(), c.clone())
            })
            .collect();
        let mut quotients = vec![Polynomial::zero(&self.vars); divisors.len()];
        let mut work = self.clone();
        'outer: while !work.is_zero() {
            // largest term of `work` divisible by some divisor lead
            let mut best: Option<(usize, &Monomial, &Coeff)> = None;
            for (m, c) in &work.terms {
                for (k, (lm, _)) in leads.iter().enumerate() {
                    if lm.divides(m) {
                        match best {
                            Some((_, bm, _)) if order.cmp(m, bm) != Ordering::Greater => {}
                            _ => best = Some((k, m, c)),
                        }
                        break;
                    }
                }
            }
            match best {
                None => break 'outer,
                Some((k, m, c)) => {
                    let qm = leads[k].0.try_div(m).unwrap();
                    let qc = c / &leads[k].1;
                    let t = Polynomial {
                        vars: self.vars.clone(),
                        terms: vec![(qm, qc)],
                    };
                    work = work.add_raw(&divisors[k].mul_raw(&t).neg_raw());
                    quotients[k] = quotients[k].add_raw(&t);
                }
            }
        }
        Ok((quotients, work))
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Polynomial, order: MonomialOrder) -> Result<Polynomial> {
        let (mut q, r) = self.divrem(std::slice::from_ref(divisor), order)?;
        if r.is_zero() {
            Ok(q.pop().unwrap())
        } else {
            Err(Error::Internal(format!(
                "expected exact division, got remainder {r}"
            )))
        }
    }

    /// True when `divisor` divides `self` exactly.
    pub fn divisible_by(&self, divisor: &Polynomial) -> bool {
        if divisor.is_zero() {
            return self.is_zero();
        }
        self.divrem(std::slice::from_ref(divisor), MonomialOrder::DegRevLex)
            .map(|(_, r)| r.is_zero())
            .unwrap_or(false)
    }

    /// Equality up to a nonzero rational constant.
    pub fn associate_of(&self, other: &Polynomial) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        if self.terms.len() != other.terms.len() {
            return false;
        }
        let ratio = &self.terms[0].1 / &other.terms[0].1;
        self.terms.iter().zip(&other.terms).all(|((ma, ca), (mb, cb))| {
            ma == mb && *ca == cb * &ratio
        })
    }

    /// Maps this polynomial into a wider variable set (one extra trailing
    /// variable, used by elimination computations).
    pub fn widened(&self, wide: &Vars) -> Polynomial {
        debug_assert_eq!(wide.len(), self.vars.len() + 1);
        Polynomial {
            vars: wide.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.widened(), c.clone()))
                .collect(),
        }
    }

    /// Inverse of `widened`; every term must be free of the last variable.
    pub fn narrowed(&self, narrow: &Vars) -> Polynomial {
        debug_assert_eq!(narrow.len() + 1, self.vars.len());
        Polynomial {
            vars: narrow.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.narrowed(), c.clone()))
                .collect(),
        }
    }

    /// True when no term involves the last variable.
    pub fn free_of_last_var(&self) -> bool {
        let last = self.vars.len() - 1;
        self.terms.iter().all(|(m, _)| m.deg(last) == 0)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // canonical descending order; sign folded into the separator
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut wrote_factor = false;
            if !abs.is_one() || m.is_one() {
                if abs.denom().is_one() {
                    write!(f, "{}", abs.numer())?;
                } else {
                    write!(f, "{}/{}", abs.numer(), abs.denom())?;
                }
                wrote_factor = true;
            }
            for (v, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote_factor {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.vars.name(v))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                wrote_factor = true;
            }
        }
        Ok(())
    }
}
