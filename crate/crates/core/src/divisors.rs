//! Irreducible factorization of square-free polynomials over the rationals,
//! divisor-lattice enumeration and multiple sets.
//!
//! Factorization reduces to one variable by Kronecker substitution and
//! factors the univariate image by rational-root extraction plus bounded
//! trial of integer-coefficient factor candidates. The bounds are generous
//! for the intended matrix sizes; exceeding them raises
//! [`Error::FactorizationIncomplete`] so callers can supply factors
//! externally instead.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{is_squarefree, Coeff, Monomial, MonomialOrder, Polynomial, Vars};

const MAX_IMAGE_DEGREE: u64 = 48;
const MAX_SUBSET_CANDIDATES: u64 = 4096;
const MAX_TUPLE_CANDIDATES: u64 = 100_000;
const MAX_DIVISOR_MAGNITUDE: u64 = 1_000_000_000_000;
const MAX_LATTICE_FACTORS: usize = 16;

/// Irreducible factors (t of them) of a square-free polynomial together
/// with all `2^t` divisors in factor-subset bitmask order.
#[derive(Clone, Debug)]
pub struct DivisorLattice {
    d: Polynomial,
    factors: Vec<Polynomial>,
    divisors: Vec<Polynomial>,
}

impl DivisorLattice {
    pub fn d(&self) -> &Polynomial {
        &self.d
    }

    pub fn factors(&self) -> &[Polynomial] {
        &self.factors
    }

    pub fn divisors(&self) -> &[Polynomial] {
        &self.divisors
    }

    pub fn len(&self) -> usize {
        self.divisors.len()
    }

    pub fn is_empty(&self) -> bool {
        false // always contains 1
    }

    pub fn member_index(&self, f: &Polynomial) -> Option<usize> {
        self.divisors.iter().position(|g| g.associate_of(f))
    }

    /// All lattice members divisible by `f` (which must be a member).
    pub fn multiples_of(&self, f: &Polynomial) -> Result<MultipleSet> {
        let idx = self
            .member_index(f)
            .ok_or_else(|| Error::Precondition(format!("{f} is not a divisor in the lattice")))?;
        let members = self
            .divisors
            .iter()
            .enumerate()
            .filter(|(mask, _)| mask & idx == idx)
            .map(|(_, g)| g.clone())
            .collect();
        Ok(MultipleSet { base: self.divisors[idx].clone(), members })
    }
}

/// The divisors of `d` that are multiples of a fixed base divisor.
#[derive(Clone, Debug)]
pub struct MultipleSet {
    pub base: Polynomial,
    pub members: Vec<Polynomial>,
}

/// Builds the divisor lattice of pairwise non-associate irreducible
/// factors. The first divisor is always 1 and the last is the full product.
pub fn enumerate_divisors(vars: &Vars, factors: &[Polynomial]) -> Result<DivisorLattice> {
    let order = MonomialOrder::DegRevLex;
    let mut monic: Vec<Polynomial> = Vec::with_capacity(factors.len());
    for f in factors {
        if f.is_zero() || f.is_constant() {
            return Err(Error::Precondition("lattice factors must be nonconstant".into()));
        }
        let fm = f.monic(order);
        if monic.iter().any(|g| g.associate_of(&fm)) {
            return Err(Error::Precondition("lattice factors must be pairwise non-associate".into()));
        }
        monic.push(fm);
    }
    if monic.len() > MAX_LATTICE_FACTORS {
        return Err(Error::Precondition(format!(
            "too many irreducible factors ({}) for divisor enumeration",
            monic.len()
        )));
    }
    let mut divisors = Vec::with_capacity(1 << monic.len());
    for mask in 0usize..(1 << monic.len()) {
        let mut p = Polynomial::one(vars);
        for (i, f) in monic.iter().enumerate() {
            if mask & (1 << i) != 0 {
                p = p.checked_mul(f)?;
            }
        }
        divisors.push(p.monic(order));
    }
    let d = divisors.last().unwrap().clone();
    Ok(DivisorLattice { d, factors: monic, divisors })
}

/// Validates an externally supplied factor list for `d`: every factor must
/// divide `d` exactly, the product must equal `d` up to a constant, and the
/// factors must be pairwise non-associate. Irreducibility is not checked.
pub fn validate_factors(d: &Polynomial, supplied: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let order = MonomialOrder::DegRevLex;
    let mut out = Vec::with_capacity(supplied.len());
    let mut product = Polynomial::one(d.vars());
    for f in supplied {
        if f.is_zero() || f.is_constant() {
            return Err(Error::InvalidFactors(format!("factor `{f}` is constant")));
        }
        let fm = f.monic(order);
        if !d.divisible_by(&fm) {
            return Err(Error::InvalidFactors(format!("factor `{f}` does not divide the target")));
        }
        if out.iter().any(|g: &Polynomial| g.associate_of(&fm)) {
            return Err(Error::InvalidFactors(format!("factor `{f}` repeats")));
        }
        product = product.checked_mul(&fm)?;
        out.push(fm);
    }
    if !product.associate_of(d) {
        return Err(Error::InvalidFactors(
            "product of supplied factors does not equal the target".into(),
        ));
    }
    Ok(out)
}

/// Irreducible factorization over the rationals of a nonzero square-free
/// polynomial. A nonzero constant has no factors.
pub fn irreducible_factors(d: &Polynomial) -> Result<Vec<Polynomial>> {
    if d.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !is_squarefree(d)? {
        return Err(Error::Precondition("factorization input must be square-free".into()));
    }
    let order = MonomialOrder::DegRevLex;
    let vars = d.vars().clone();
    let mut factors: Vec<Polynomial> = Vec::new();
    let mut work = d.monic(order);

    // single-variable factors come straight off the exponent vectors
    for v in 0..vars.len() {
        let min_exp = work.terms().iter().map(|(m, _)| m.deg(v)).min().unwrap_or(0);
        for _ in 0..min_exp {
            let zv = Polynomial::variable(&vars, v)?;
            work = work.div_exact(&zv, order)?;
            factors.push(zv);
        }
    }

    loop {
        if work.is_constant() {
            break;
        }
        let support: Vec<usize> = (0..vars.len()).filter(|&v| work.degree_in(v) > 0).collect();
        if support.len() == 1 {
            let var = support[0];
            let dense = to_univariate_dense(&work, var);
            for (coeffs, mult) in factor_univariate(&dense)? {
                debug_assert_eq!(mult, 1);
                let f = univariate_to_multivariate(&coeffs, &vars, var).monic(order);
                factors.push(f);
            }
            break;
        }

        let base = 1 + support.iter().map(|&v| work.degree_in(v)).max().unwrap() as u64;
        let image = kronecker_image(&work, &support, base)?;
        let image_factors = factor_univariate(&image)?;
        match minimal_kronecker_factor(&work, &image_factors, &support, base)? {
            Some(h) => {
                work = work.div_exact(&h, order)?;
                factors.push(h.monic(order));
            }
            None => {
                factors.push(work.monic(order));
                break;
            }
        }
    }
    Ok(factors)
}

fn to_univariate_dense(p: &Polynomial, var: usize) -> Vec<Coeff> {
    let deg = p.degree_in(var) as usize;
    let mut out = vec![Coeff::zero(); deg + 1];
    for (m, c) in p.terms() {
        debug_assert!(m.exps().iter().enumerate().all(|(v, &e)| v == var || e == 0));
        out[m.deg(var) as usize] += c;
    }
    out
}

fn univariate_to_multivariate(coeffs: &[BigInt], vars: &Vars, var: usize) -> Polynomial {
    let pairs = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| {
            let mut exps = vec![0u32; vars.len()];
            exps[var] = e as u32;
            (Monomial::from_exps(exps), Coeff::from_integer(c.clone()))
        })
        .collect();
    Polynomial::from_terms(vars, pairs)
}

fn kronecker_image(p: &Polynomial, support: &[usize], base: u64) -> Result<Vec<Coeff>> {
    let mut max_e: u64 = 0;
    let mut weight = 1u64;
    for &v in support {
        max_e += p.degree_in(v) as u64 * weight;
        weight = weight.saturating_mul(base);
    }
    if max_e > MAX_IMAGE_DEGREE {
        return Err(Error::FactorizationIncomplete(format!(
            "Kronecker image degree {max_e} exceeds bound {MAX_IMAGE_DEGREE}"
        )));
    }
    let mut out = vec![Coeff::zero(); max_e as usize + 1];
    for (m, c) in p.terms() {
        let mut e = 0u64;
        let mut w = 1u64;
        for &v in support {
            e += m.deg(v) as u64 * w;
            w *= base;
        }
        out[e as usize] += c;
    }
    Ok(out)
}

fn inverse_kronecker(coeffs: &[BigInt], support: &[usize], base: u64, vars: &Vars) -> Polynomial {
    let pairs = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| {
            let mut exps = vec![0u32; vars.len()];
            let mut rem = e as u64;
            for &v in support {
                exps[v] = (rem % base) as u32;
                rem /= base;
            }
            (Monomial::from_exps(exps), Coeff::from_integer(c.clone()))
        })
        .collect();
    Polynomial::from_terms(vars, pairs)
}

/// Finds the smallest product of image factors that maps back to a divisor
/// of `work`; by minimality that divisor is irreducible.
fn minimal_kronecker_factor(
    work: &Polynomial,
    image_factors: &[(Vec<BigInt>, u32)],
    support: &[usize],
    base: u64,
) -> Result<Option<Polynomial>> {
    let mut total: u64 = 1;
    for (_, m) in image_factors {
        total = total.saturating_mul(*m as u64 + 1);
    }
    if total > MAX_SUBSET_CANDIDATES {
        return Err(Error::FactorizationIncomplete(format!(
            "{total} image factor combinations exceed bound {MAX_SUBSET_CANDIDATES}"
        )));
    }
    // counters over the distinct image factors; skip the empty and the full
    // selection, order by ascending mapped degree for the minimality argument
    let mut selections: Vec<(u64, Vec<u32>)> = Vec::new();
    let radix: Vec<u32> = image_factors.iter().map(|(_, m)| m + 1).collect();
    let mut counter = vec![0u32; image_factors.len()];
    loop {
        // advance odometer
        let mut i = 0;
        loop {
            if i == counter.len() {
                break;
            }
            counter[i] += 1;
            if counter[i] < radix[i] {
                break;
            }
            counter[i] = 0;
            i += 1;
        }
        if counter.iter().all(|&c| c == 0) {
            break; // wrapped around
        }
        if counter
            .iter()
            .zip(image_factors)
            .all(|(&c, (_, m))| c == *m)
        {
            continue; // full selection reproduces the input
        }
        let deg: u64 = counter
            .iter()
            .zip(image_factors)
            .map(|(&c, (f, _))| c as u64 * (f.len() as u64 - 1))
            .sum();
        selections.push((deg, counter.clone()));
    }
    selections.sort();

    for (_, sel) in selections {
        let mut prod: Vec<BigInt> = vec![BigInt::one()];
        for (i, (f, _)) in image_factors.iter().enumerate() {
            for _ in 0..sel[i] {
                prod = int_mul(&prod, f);
            }
        }
        let cand = inverse_kronecker(&prod, support, base, work.vars());
        if cand.is_constant() {
            continue;
        }
        if work.divisible_by(&cand) {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}

// --- dense univariate arithmetic over the rationals / integers ---

fn utrim(p: &mut Vec<Coeff>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn uderiv(p: &[Coeff]) -> Vec<Coeff> {
    let mut out: Vec<Coeff> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Coeff::from_integer(BigInt::from(i)))
        .collect();
    utrim(&mut out);
    out
}

fn umul(a: &[Coeff], b: &[Coeff]) -> Vec<Coeff> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Coeff::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    utrim(&mut out);
    out
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn udivrem(a: &[Coeff], b: &[Coeff]) -> (Vec<Coeff>, Vec<Coeff>) {
    assert!(!b.is_empty());
    let mut rem: Vec<Coeff> = a.to_vec();
    utrim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quo = vec![Coeff::zero(); rem.len() - db];
    while rem.len() > db {
        let da = rem.len() - 1;
        let c = rem[da].clone() / lead;
        quo[da - db] = c.clone();
        for i in 0..=db {
            let t = &b[i] * &c;
            rem[da - db + i] -= t;
        }
        utrim(&mut rem);
        if rem.is_empty() {
            break;
        }
        if rem.len() - 1 < db {
            break;
        }
    }
    (quo, rem)
}

fn ugcd(a: &[Coeff], b: &[Coeff]) -> Vec<Coeff> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    utrim(&mut x);
    utrim(&mut y);
    while !y.is_empty() {
        let (_, r) = udivrem(&x, &y);
        x = y;
        y = r;
    }
    // monic
    if let Some(lead) = x.last().cloned() {
        for c in &mut x {
            *c = c.clone() / &lead;
        }
    }
    x
}

/// Clears denominators and divides by the integer content; leading
/// coefficient made positive.
fn uprimitive(p: &[Coeff]) -> Vec<BigInt> {
    let mut denom_lcm = BigInt::one();
    for c in p {
        denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
    }
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&denom_lcm / c.denom())).collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = num_integer::gcd(content, c.clone());
    }
    if content.is_zero() {
        return ints;
    }
    if ints.last().map(Signed::is_negative).unwrap_or(false) {
        content = -content;
    }
    ints.into_iter().map(|c| c / &content).collect()
}

fn to_rational(p: &[BigInt]) -> Vec<Coeff> {
    p.iter().map(|c| Coeff::from_integer(c.clone())).collect()
}

fn ueval_int(p: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Yun square-free decomposition: returns pairwise coprime square-free
/// parts `(g_i, i)` with the input associate to `prod g_i^i`.
fn yun(p: &[Coeff]) -> Vec<(Vec<Coeff>, u32)> {
    let mut out = Vec::new();
    if p.len() <= 1 {
        return out;
    }
    let dp = uderiv(p);
    let a = ugcd(p, &dp);
    if a.len() <= 1 {
        out.push((p.to_vec(), 1));
        return out;
    }
    let (mut b, _) = udivrem(p, &a);
    let (c0, _) = udivrem(&dp, &a);
    let mut c = c0;
    let mut i = 1u32;
    while b.len() > 1 {
        let db = uderiv(&b);
        let mut d: Vec<Coeff> = vec![Coeff::zero(); c.len().max(db.len())];
        for (k, x) in c.iter().enumerate() {
            d[k] += x;
        }
        for (k, x) in db.iter().enumerate() {
            d[k] -= x;
        }
        utrim(&mut d);
        let g = ugcd(&b, &d);
        if g.len() > 1 {
            out.push((g.clone(), i));
        }
        let (b2, _) = udivrem(&b, &g);
        let (c2, _) = udivrem(&d, &g);
        b = b2;
        c = c2;
        i += 1;
    }
    out
}

fn divisors_with_signs(v: &BigInt) -> Result<Vec<BigInt>> {
    let mag = v.magnitude();
    let cap = BigInt::from(MAX_DIVISOR_MAGNITUDE);
    if v.abs() > cap {
        return Err(Error::FactorizationIncomplete(format!(
            "coefficient value {v} exceeds divisor-enumeration bound"
        )));
    }
    let m: u64 = mag.try_into().map_err(|_| {
        Error::FactorizationIncomplete("coefficient does not fit the divisor bound".into())
    })?;
    let mut ds: Vec<u64> = Vec::new();
    let mut i = 1u64;
    while i * i <= m {
        if m.is_multiple_of(i) {
            ds.push(i);
            if i != m / i {
                ds.push(m / i);
            }
        }
        i += 1;
    }
    ds.sort_unstable();
    let mut out = Vec::with_capacity(ds.len() * 2);
    for d in ds {
        out.push(BigInt::from(d));
        out.push(-BigInt::from(d));
    }
    Ok(out)
}

/// Extracts all rational roots `p/q` as primitive linear factors.
fn rational_root_factors(v: &mut Vec<BigInt>) -> Result<Vec<Vec<BigInt>>> {
    let mut out = Vec::new();
    'outer: loop {
        if v.len() <= 2 {
            return Ok(out);
        }
        let c0 = v[0].clone();
        let cl = v.last().unwrap().clone();
        debug_assert!(!c0.is_zero());
        for p in divisors_with_signs(&c0)? {
            for q in divisors_with_signs(&cl)? {
                if q.is_negative() {
                    continue; // sign carried by p
                }
                if num_integer::gcd(p.clone(), q.clone()) != BigInt::one() {
                    continue;
                }
                let root = Coeff::new(p.clone(), q.clone());
                let rq = to_rational(v);
                let mut acc = Coeff::zero();
                for c in rq.iter().rev() {
                    acc = acc * &root + c;
                }
                if acc.is_zero() {
                    // divide by (q*y - p)
                    let lin = vec![Coeff::from_integer(-p.clone()), Coeff::from_integer(q.clone())];
                    let (quo, rem) = udivrem(&rq, &lin);
                    debug_assert!(rem.is_empty());
                    out.push(uprimitive(&lin));
                    *v = uprimitive(&quo);
                    continue 'outer;
                }
            }
        }
        return Ok(out);
    }
}

/// Interpolation-based search for a nontrivial factor of a square-free
/// primitive integer polynomial with no rational roots.
fn kronecker_factor_search(v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    let deg = v.len() - 1;
    let vq = to_rational(v);
    for f_deg in 2..=deg / 2 {
        let points: Vec<BigInt> = sample_points(f_deg + 1);
        let values: Vec<BigInt> = points.iter().map(|x| ueval_int(v, x)).collect();
        debug_assert!(values.iter().all(|val| !val.is_zero()));
        let div_lists: Vec<Vec<BigInt>> = values
            .iter()
            .map(divisors_with_signs)
            .collect::<Result<_>>()?;
        let total: u64 = div_lists.iter().map(|l| l.len() as u64).product();
        if total > MAX_TUPLE_CANDIDATES {
            return Err(Error::FactorizationIncomplete(format!(
                "{total} interpolation candidates exceed bound {MAX_TUPLE_CANDIDATES}"
            )));
        }
        let mut idx = vec![0usize; div_lists.len()];
        loop {
            let tuple: Vec<Coeff> = idx
                .iter()
                .zip(&div_lists)
                .map(|(&i, l)| Coeff::from_integer(l[i].clone()))
                .collect();
            if let Some(cand) = interpolate(&points, &tuple) {
                if cand.len() == f_deg + 1 {
                    let (_, rem) = udivrem(&vq, &cand);
                    if rem.is_empty() {
                        return Ok(Some(uprimitive(&cand)));
                    }
                }
            }
            // odometer
            let mut k = 0;
            loop {
                if k == idx.len() {
                    break;
                }
                idx[k] += 1;
                if idx[k] < div_lists[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if idx.iter().all(|&i| i == 0) {
                break;
            }
        }
    }
    Ok(None)
}

fn sample_points(count: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(count);
    out.push(BigInt::zero());
    let mut k = 1i64;
    while out.len() < count {
        out.push(BigInt::from(k));
        if out.len() < count {
            out.push(BigInt::from(-k));
        }
        k += 1;
    }
    out
}

/// Lagrange interpolation through `(points[i], values[i])`.
fn interpolate(points: &[BigInt], values: &[Coeff]) -> Option<Vec<Coeff>> {
    let n = points.len();
    let mut acc: Vec<Coeff> = Vec::new();
    for i in 0..n {
        // numerator basis polynomial and denominator scalar
        let mut num: Vec<Coeff> = vec![Coeff::one()];
        let mut den = Coeff::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            num = umul(
                &num,
                &[Coeff::from_integer(-points[j].clone()), Coeff::one()],
            );
            den *= Coeff::from_integer(&points[i] - &points[j]);
        }
        let scale = &values[i] / den;
        if acc.len() < num.len() {
            acc.resize(num.len(), Coeff::zero());
        }
        for (k, c) in num.iter().enumerate() {
            acc[k] += c * &scale;
        }
    }
    utrim(&mut acc);
    if acc.is_empty() {
        None
    } else {
        Some(acc)
    }
}

fn factor_squarefree_int(v: Vec<BigInt>) -> Result<Vec<Vec<BigInt>>> {
    let mut v = v;
    let mut out = rational_root_factors(&mut v)?;
    loop {
        match v.len() {
            0 | 1 => return Ok(out),
            2 => {
                out.push(v);
                return Ok(out);
            }
            3 | 4 => {
                // no rational roots left, so degree 2 and 3 are irreducible
                out.push(v);
                return Ok(out);
            }
            _ => match kronecker_factor_search(&v)? {
                None => {
                    out.push(v);
                    return Ok(out);
                }
                Some(f) => {
                    let (quo, rem) = udivrem(&to_rational(&v), &to_rational(&f));
                    debug_assert!(rem.is_empty());
                    out.push(f);
                    v = uprimitive(&quo);
                }
            },
        }
    }
}

/// Full univariate factorization over the rationals: primitive integer
/// irreducible factors with multiplicities.
fn factor_univariate(p: &[Coeff]) -> Result<Vec<(Vec<BigInt>, u32)>> {
    let mut work = p.to_vec();
    utrim(&mut work);
    if work.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out: Vec<(Vec<BigInt>, u32)> = Vec::new();
    let shift = work.iter().take_while(|c| c.is_zero()).count();
    if shift > 0 {
        work.drain(..shift);
        out.push((vec![BigInt::zero(), BigInt::one()], shift as u32));
    }
    if work.len() <= 1 {
        return Ok(out);
    }
    for (part, mult) in yun(&work) {
        let ints = uprimitive(&part);
        for f in factor_squarefree_int(ints)? {
            out.push((f, mult));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_polynomial;

    fn vars3() -> Vars {
        Vars::new(["z1", "z2", "z3"]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &vars3()).unwrap()
    }

    fn factor_set(d: &str) -> Vec<Polynomial> {
        let mut fs = irreducible_factors(&p(d)).unwrap();
        fs.sort_by_key(|f| f.to_string());
        fs
    }

    #[test]
    fn factors_of_golden_targets() {
        let fs = factor_set("(z1-1)*z2");
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().any(|f| f.associate_of(&p("z1-1"))));
        assert!(fs.iter().any(|f| f.associate_of(&p("z2"))));

        let fs = factor_set("z1*z2*z3");
        assert_eq!(fs.len(), 3);
        for v in ["z1", "z2", "z3"] {
            assert!(fs.iter().any(|f| f.associate_of(&p(v))));
        }

        assert!(irreducible_factors(&p("5")).unwrap().is_empty());
    }

    #[test]
    fn factors_of_multilinear_products() {
        let fs = factor_set("(z1+z2)*(z2+z3)");
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().any(|f| f.associate_of(&p("z1+z2"))));
        assert!(fs.iter().any(|f| f.associate_of(&p("z2+z3"))));

        // irreducible over the rationals even though it splits over C
        let fs = factor_set("z1^2+z2^2");
        assert_eq!(fs.len(), 1);
        assert!(fs[0].associate_of(&p("z1^2+z2^2")));
    }

    #[test]
    fn factors_of_univariate_targets() {
        let fs = factor_set("z1^2-1");
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().any(|f| f.associate_of(&p("z1-1"))));
        assert!(fs.iter().any(|f| f.associate_of(&p("z1+1"))));

        // irreducible quadratic
        let fs = factor_set("z1^2-2");
        assert_eq!(fs.len(), 1);
    }

    #[test]
    fn round_trip_product() {
        for d in ["(z1-1)*z2*(z3+1)", "(z1+z2)*(z1-z2)", "(z1+2)*(z2+3)*(z1+z3)"] {
            let target = p(d);
            let fs = irreducible_factors(&target).unwrap();
            let mut prod = Polynomial::one(&vars3());
            for f in &fs {
                assert!(target.divisible_by(f), "{f} should divide {d}");
                prod = prod.checked_mul(f).unwrap();
            }
            assert!(prod.associate_of(&target));
        }
    }

    #[test]
    fn quartic_splits_into_irreducible_quadratics() {
        // no rational roots; the interpolation search must find z1^2+1
        let fs = factor_set("(z1^2+1)*(z1^2+4)");
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().any(|f| f.associate_of(&p("z1^2+1"))));
        assert!(fs.iter().any(|f| f.associate_of(&p("z1^2+4"))));

        // mixed: linear factors plus an irreducible quadratic
        let fs = factor_set("(z1-1)*(z1+3)*(z1^2+z1+1)");
        assert_eq!(fs.len(), 3);
        assert!(fs.iter().any(|f| f.associate_of(&p("z1^2+z1+1"))));
    }

    #[test]
    fn degree_bound_reported_as_incomplete() {
        let big = p("z1^4+z2^4+z3^4+z1+1");
        assert!(matches!(
            irreducible_factors(&big),
            Err(Error::FactorizationIncomplete(_))
        ));
    }

    #[test]
    fn non_squarefree_rejected() {
        assert!(irreducible_factors(&p("z1^2")).is_err());
    }

    #[test]
    fn lattice_enumeration() {
        let vars = vars3();
        let lat = enumerate_divisors(&vars, &[p("z1-1"), p("z2")]).unwrap();
        assert_eq!(lat.len(), 4);
        assert!(lat.divisors()[0].is_one());
        assert!(lat.divisors()[3].associate_of(&p("(z1-1)*z2")));

        let lat8 = enumerate_divisors(&vars, &[p("z1"), p("z2"), p("z3")]).unwrap();
        assert_eq!(lat8.len(), 8);
        assert!(lat8.divisors()[7].associate_of(&p("z1*z2*z3")));

        let trivial = enumerate_divisors(&vars, &[]).unwrap();
        assert_eq!(trivial.len(), 1);
        assert!(trivial.divisors()[0].is_one());
    }

    #[test]
    fn lattice_multiples() {
        let vars = vars3();
        let lat = enumerate_divisors(&vars, &[p("z1-1"), p("z2")]).unwrap();
        let m = lat.multiples_of(&p("z1-1")).unwrap();
        assert_eq!(m.members.len(), 2);
        assert!(m.members.iter().any(|h| h.associate_of(&p("z1-1"))));
        assert!(m.members.iter().any(|h| h.associate_of(&p("(z1-1)*z2"))));

        let all = lat.multiples_of(&Polynomial::one(&vars)).unwrap();
        assert_eq!(all.members.len(), 4);

        let top = lat.multiples_of(&p("(z1-1)*z2")).unwrap();
        assert_eq!(top.members.len(), 1);

        assert!(lat.multiples_of(&p("z3")).is_err());
    }

    #[test]
    fn supplied_factor_validation() {
        let d = p("(z1-1)*z2");
        let ok = validate_factors(&d, &[p("z1-1"), p("z2")]).unwrap();
        assert_eq!(ok.len(), 2);
        assert!(validate_factors(&d, &[p("z1-1")]).is_err()); // product short
        assert!(validate_factors(&d, &[p("z1-1"), p("z3")]).is_err()); // non-divisor
        assert!(validate_factors(&d, &[p("z1-1"), p("2*z1-2")]).is_err()); // associates
    }
}
