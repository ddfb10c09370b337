use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Coeff, Monomial, MonomialOrder, Polynomial, Vars};

/// Row vector in the free module `k[z]^(1 x m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleElement {
    coords: Vec<Polynomial>,
}

impl ModuleElement {
    pub fn new(coords: Vec<Polynomial>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Precondition("module element needs at least one coordinate".into()));
        }
        for c in &coords[1..] {
            if !c.vars().same(coords[0].vars()) {
                return Err(Error::VariableMismatch {
                    left: coords[0].vars().to_string(),
                    right: c.vars().to_string(),
                });
            }
        }
        Ok(ModuleElement { coords })
    }

    pub fn zero(vars: &Vars, m: usize) -> Self {
        ModuleElement { coords: vec![Polynomial::zero(vars); m] }
    }

    pub fn unit(vars: &Vars, m: usize, pos: usize) -> Self {
        let mut e = Self::zero(vars, m);
        e.coords[pos] = Polynomial::one(vars);
        e
    }

    pub fn coords(&self) -> &[Polynomial] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn vars(&self) -> &Vars {
        self.coords[0].vars()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, other: &ModuleElement) -> ModuleElement {
        debug_assert_eq!(self.len(), other.len());
        ModuleElement {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.checked_add(b).expect("vars checked"))
                .collect(),
        }
    }

    pub fn sub(&self, other: &ModuleElement) -> ModuleElement {
        debug_assert_eq!(self.len(), other.len());
        ModuleElement {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.checked_sub(b).expect("vars checked"))
                .collect(),
        }
    }

    /// Scales every coordinate by the term `c * x^m`.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> ModuleElement {
        ModuleElement {
            coords: self.coords.iter().map(|p| p.mul_term(m, c)).collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> ModuleElement {
        ModuleElement {
            coords: self.coords.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> ModuleElement {
        ModuleElement {
            coords: self
                .coords
                .iter()
                .map(|q| q.checked_mul(p).expect("vars checked"))
                .collect(),
        }
    }

    /// Leading term `(position, monomial, coefficient)` under the module
    /// extension of `order`.
    pub fn leading(&self, order: MonomialOrder) -> Option<(usize, &Monomial, &Coeff)> {
        let mut best: Option<(usize, &Monomial, &Coeff)> = None;
        for (pos, p) in self.coords.iter().enumerate() {
            if let Some((m, c)) = p.leading(order) {
                best = match best {
                    None => Some((pos, m, c)),
                    Some((bp, bm, bc)) => {
                        if cmp_module_terms(order, (pos, m), (bp, bm)) == Ordering::Greater {
                            Some((pos, m, c))
                        } else {
                            Some((bp, bm, bc))
                        }
                    }
                };
            }
        }
        best
    }

    pub fn monic(&self, order: MonomialOrder) -> ModuleElement {
        match self.leading(order) {
            None => self.clone(),
            Some((_, _, lc)) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    /// Integer-coprime rescaling across all coordinates, positive leading
    /// coefficient.
    pub fn primitive(&self, order: MonomialOrder) -> ModuleElement {
        let mut denom_lcm = BigInt::one();
        let mut numer_gcd = BigInt::zero();
        for p in &self.coords {
            for (_, c) in p.terms() {
                denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
            }
        }
        for p in &self.coords {
            for (_, c) in p.terms() {
                let scaled = c.numer() * (&denom_lcm / c.denom());
                numer_gcd = num_integer::gcd(numer_gcd, scaled);
            }
        }
        if numer_gcd.is_zero() {
            return self.clone();
        }
        let mut factor = Coeff::new(denom_lcm, numer_gcd);
        if let Some((_, _, lc)) = self.leading(order) {
            if (lc * &factor).is_negative() {
                factor = -factor;
            }
        }
        self.scale(&factor)
    }

    pub fn widened(&self, wide: &Vars) -> ModuleElement {
        ModuleElement {
            coords: self.coords.iter().map(|p| p.widened(wide)).collect(),
        }
    }

    pub fn narrowed(&self, narrow: &Vars) -> ModuleElement {
        ModuleElement {
            coords: self.coords.iter().map(|p| p.narrowed(narrow)).collect(),
        }
    }

    pub fn free_of_last_var(&self) -> bool {
        self.coords.iter().all(Polynomial::free_of_last_var)
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Compares module terms `(position, monomial)`.
///
/// For `Lex`/`DegRevLex` this is the position-over-term extension with
/// `e_0 > e_1 > ...`. For `Elimination` the eliminated block is compared
/// before the position so that terms involving an eliminated variable
/// dominate every term free of them (the property elimination needs).
pub fn cmp_module_terms(
    order: MonomialOrder,
    a: (usize, &Monomial),
    b: (usize, &Monomial),
) -> Ordering {
    match order {
        MonomialOrder::Elimination { split } => {
            let tail = crate::poly::monomial_grevlex(&a.1.exps()[split..], &b.1.exps()[split..]);
            if tail != Ordering::Equal {
                return tail;
            }
            match a.0.cmp(&b.0) {
                Ordering::Less => Ordering::Greater,
                Ordering::Greater => Ordering::Less,
                Ordering::Equal => {
                    crate::poly::monomial_grevlex(&a.1.exps()[..split], &b.1.exps()[..split])
                }
            }
        }
        _ => match a.0.cmp(&b.0) {
            Ordering::Less => Ordering::Greater,
            Ordering::Greater => Ordering::Less,
            Ordering::Equal => order.cmp(a.1, b.1),
        },
    }
}
