use std::cmp::Ordering;

use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{Coeff, Monomial, MonomialOrder, Polynomial, Vars};

use super::element::{cmp_module_terms, ModuleElement};

/// Gröbner basis of a submodule of `k[z]^(1 x m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubmoduleGB {
    vars: Vars,
    m: usize,
    order: MonomialOrder,
    gens: Vec<ModuleElement>,
    reduced: bool,
}

impl SubmoduleGB {
    /// Wraps a caller-claimed basis without completing it. Used for
    /// certification and for assembling known bases in tests.
    pub fn new_unchecked(
        vars: &Vars,
        m: usize,
        order: MonomialOrder,
        gens: Vec<ModuleElement>,
        reduced: bool,
    ) -> Self {
        SubmoduleGB { vars: vars.clone(), m, order, gens, reduced }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    /// Rank `m` of the ambient free module `k[z]^(1 x m)`.
    pub fn ambient_rank(&self) -> usize {
        self.m
    }

    pub fn is_empty_module(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> &[ModuleElement] {
        &self.gens
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn contains(&self, v: &ModuleElement) -> Result<bool> {
        Ok(normal_form(v, self)?.is_zero())
    }
}

/// Gröbner basis of an ideal of `k[z]` (the `m = 1` case).
#[derive(Clone, Debug, PartialEq)]
pub struct IdealGB {
    order: MonomialOrder,
    gens: Vec<Polynomial>,
    reduced: bool,
}

impl IdealGB {
    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// True when the basis is `{1}`, i.e. the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        if self.gens.is_empty() {
            return Ok(p.is_zero());
        }
        let (_, r) = p.divrem(&self.gens, self.order)?;
        Ok(r.is_zero())
    }
}

fn check_lengths(gens: &[ModuleElement]) -> Result<usize> {
    let m = gens[0].len();
    for g in gens {
        if g.len() != m {
            return Err(Error::LengthMismatch { left: m, right: g.len() });
        }
    }
    Ok(m)
}

struct Tracked {
    elem: ModuleElement,
    /// Expression of `elem` as a combination of the original generators.
    expr: Vec<Polynomial>,
}

impl Tracked {
    fn scale(&mut self, c: &Coeff) {
        self.elem = self.elem.scale(c);
        for e in &mut self.expr {
            *e = e.scale(c);
        }
    }
}

/// Full reduction of `v` by `basis`: no term of the result is divisible by
/// any basis leading term. Returns the remainder and, when `track` is set,
/// the quotients over the basis elements.
fn reduce_full(
    v: &ModuleElement,
    basis: &[&ModuleElement],
    order: MonomialOrder,
    track: bool,
) -> (ModuleElement, Vec<Polynomial>) {
    let vars = v.vars().clone();
    let leads: Vec<Option<(usize, Monomial, Coeff)>> = basis
        .iter()
        .map(|g| g.leading(order).map(|(p, m, c)| (p, m.clone(), c.clone())))
        .collect();
    let mut quotients = if track {
        vec![Polynomial::zero(&vars); basis.len()]
    } else {
        Vec::new()
    };
    let mut work = v.clone();
    loop {
        // the largest reducible term of `work` under the module order
        let mut best: Option<(usize, usize, Monomial, Coeff)> = None; // (basis idx, pos, mono, coeff)
        for (pos, p) in work.coords().iter().enumerate() {
            for (m, c) in p.terms() {
                let better = match &best {
                    Some((_, bp, bm, _)) => {
                        cmp_module_terms(order, (pos, m), (*bp, bm)) == Ordering::Greater
                    }
                    None => true,
                };
                if !better {
                    continue;
                }
                for (k, lead) in leads.iter().enumerate() {
                    if let Some((lp, lm, _)) = lead {
                        if *lp == pos && lm.divides(m) {
                            best = Some((k, pos, m.clone(), c.clone()));
                            break;
                        }
                    }
                }
            }
        }
        match best {
            None => break,
            Some((k, _, m, c)) => {
                let (_, lm, lc) = leads[k].as_ref().unwrap();
                let qm = lm.try_div(&m).unwrap();
                let qc = &c / lc;
                work = work.sub(&basis[k].mul_term(&qm, &qc));
                if track {
                    let t = Polynomial::from_terms(&vars, vec![(qm, qc)]);
                    quotients[k] = quotients[k].checked_add(&t).expect("vars");
                }
            }
        }
    }
    (work, quotients)
}

/// Buchberger completion with optional cofactor tracking, followed by
/// minimization, tail reduction and monic normalization. The result is the
/// unique reduced Gröbner basis, sorted descending by leading term.
fn buchberger(
    gens_in: &[ModuleElement],
    order: MonomialOrder,
    track: bool,
) -> Result<(Vec<ModuleElement>, Vec<Vec<Polynomial>>)> {
    let vars = gens_in[0].vars().clone();
    let n_orig = gens_in.len();
    let unit_expr = |i: usize| -> Vec<Polynomial> {
        (0..n_orig)
            .map(|j| {
                if i == j {
                    Polynomial::one(&vars)
                } else {
                    Polynomial::zero(&vars)
                }
            })
            .collect()
    };

    let mut basis: Vec<Tracked> = Vec::new();
    for (i, g) in gens_in.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let mut t = Tracked { elem: g.clone(), expr: if track { unit_expr(i) } else { Vec::new() } };
        // primitive rescaling keeps coefficients small
        let prim = t.elem.primitive(order);
        if track {
            let (_, _, lc_old) = t.elem.leading(order).unwrap();
            let (_, _, lc_new) = prim.leading(order).unwrap();
            let factor = lc_new / lc_old;
            for e in &mut t.expr {
                *e = e.scale(&factor);
            }
        }
        t.elem = prim;
        basis.push(t);
    }

    let mut pending: Vec<(usize, usize)> = Vec::new();

    let lead_of = |b: &Tracked| -> (usize, Monomial, Coeff) {
        let (p, m, c) = b.elem.leading(order).unwrap();
        (p, m.clone(), c.clone())
    };

    macro_rules! push_pairs {
        ($new_idx:expr) => {{
            let (np, nm, _) = lead_of(&basis[$new_idx]);
            for k in 0..$new_idx {
                let (kp, km, _) = lead_of(&basis[k]);
                if kp != np {
                    continue;
                }
                // product criterion, valid here only for single-component
                // elements in the same position
                let single = basis[$new_idx]
                    .elem
                    .coords()
                    .iter()
                    .enumerate()
                    .all(|(i, c)| i == np || c.is_zero())
                    && basis[k]
                        .elem
                        .coords()
                        .iter()
                        .enumerate()
                        .all(|(i, c)| i == kp || c.is_zero());
                if single && nm.coprime(&km) {
                    continue;
                }
                pending.push((k, $new_idx));
            }
        }};
    }

    for i in 0..basis.len() {
        push_pairs!(i);
    }

    while !pending.is_empty() {
        // normal selection: smallest lcm under the module order, then index
        let mut best = 0;
        let mut best_key: Option<(usize, Monomial)> = None;
        for (idx, &(i, j)) in pending.iter().enumerate() {
            let (p, mi, _) = lead_of(&basis[i]);
            let (_, mj, _) = lead_of(&basis[j]);
            let l = mi.lcm(&mj);
            let better = match &best_key {
                None => true,
                Some((bp, bl)) => {
                    match cmp_module_terms(order, (p, &l), (*bp, bl)) {
                        Ordering::Less => true,
                        Ordering::Greater => false,
                        Ordering::Equal => pending[idx] < pending[best],
                    }
                }
            };
            if better {
                best = idx;
                best_key = Some((p, l));
            }
        }
        let (i, j) = pending.swap_remove(best);

        let (pi, mi, ci) = lead_of(&basis[i]);
        let (_, mj, cj) = lead_of(&basis[j]);
        let l = mi.lcm(&mj);

        // chain criterion: some k with LT dividing the lcm and both pairs
        // already handled
        let mut skip = false;
        for (k, b) in basis.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            let (kp, km, _) = lead_of(b);
            if kp == pi && km.divides(&l) {
                let pair_ik = (i.min(k), i.max(k));
                let pair_jk = (j.min(k), j.max(k));
                if !pending.contains(&pair_ik) && !pending.contains(&pair_jk) {
                    skip = true;
                    break;
                }
            }
        }
        if skip {
            continue;
        }

        let ti = mi.try_div(&l).unwrap();
        let tj = mj.try_div(&l).unwrap();
        let inv_ci = ci.recip();
        let inv_cj = cj.recip();
        let s = basis[i]
            .elem
            .mul_term(&ti, &inv_ci)
            .sub(&basis[j].elem.mul_term(&tj, &inv_cj));
        let refs: Vec<&ModuleElement> = basis.iter().map(|t| &t.elem).collect();
        let (rem, quot) = reduce_full(&s, &refs, order, track);
        if rem.is_zero() {
            continue;
        }
        let expr = if track {
            let vars_one = Polynomial::from_terms(&vars, vec![(ti.clone(), inv_ci.clone())]);
            let vars_two = Polynomial::from_terms(&vars, vec![(tj.clone(), inv_cj.clone())]);
            let mut expr: Vec<Polynomial> = (0..n_orig).map(|_| Polynomial::zero(&vars)).collect();
            for (t, e) in basis[i].expr.iter().enumerate() {
                expr[t] = expr[t].checked_add(&e.checked_mul(&vars_one)?)?;
            }
            for (t, e) in basis[j].expr.iter().enumerate() {
                expr[t] = expr[t].checked_sub(&e.checked_mul(&vars_two)?)?;
            }
            for (k, q) in quot.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                for (t, e) in expr.iter_mut().enumerate() {
                    *e = e.checked_sub(&basis[k].expr[t].checked_mul(q)?)?;
                }
            }
            expr
        } else {
            Vec::new()
        };
        let mut tracked = Tracked { elem: rem, expr };
        let prim = tracked.elem.primitive(order);
        if track {
            let (_, _, lc_old) = tracked.elem.leading(order).unwrap();
            let (_, _, lc_new) = prim.leading(order).unwrap();
            let factor = lc_new / lc_old;
            for e in &mut tracked.expr {
                *e = e.scale(&factor);
            }
        }
        tracked.elem = prim;
        basis.push(tracked);
        let new_idx = basis.len() - 1;
        push_pairs!(new_idx);
    }

    // minimize: drop elements whose leading term is divisible by another's
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let (pi, mi, _) = lead_of(&basis[i]);
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (pj, mj, _) = lead_of(&basis[j]);
            if pi == pj && mj.divides(&mi) && (mj != mi || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut reduced: Vec<Tracked> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(t, k)| if k { Some(t) } else { None })
        .collect();

    // tail reduction to the unique reduced basis
    loop {
        let mut changed = false;
        for i in 0..reduced.len() {
            let others: Vec<&ModuleElement> = reduced
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, t)| &t.elem)
                .collect();
            if others.is_empty() {
                break;
            }
            let (rem, quot) = reduce_full(&reduced[i].elem, &others, order, track);
            if rem != reduced[i].elem {
                changed = true;
                if track {
                    let mut expr = reduced[i].expr.clone();
                    let other_idx: Vec<usize> = (0..reduced.len()).filter(|j| *j != i).collect();
                    for (k, q) in quot.iter().enumerate() {
                        if q.is_zero() {
                            continue;
                        }
                        let src = other_idx[k];
                        for (t, e) in expr.iter_mut().enumerate() {
                            *e = e.checked_sub(&reduced[src].expr[t].checked_mul(q)?)?;
                        }
                    }
                    reduced[i].expr = expr;
                }
                reduced[i].elem = rem;
            }
        }
        if !changed {
            break;
        }
    }

    // monic normalization
    for t in reduced.iter_mut() {
        if let Some((_, _, lc)) = t.elem.leading(order) {
            let inv = lc.recip();
            if !inv.is_one() {
                t.scale(&inv);
            }
        }
    }

    // canonical descending order by leading term
    reduced.sort_by(|a, b| {
        let (pa, ma, _) = a.elem.leading(order).unwrap();
        let (pb, mb, _) = b.elem.leading(order).unwrap();
        cmp_module_terms(order, (pb, mb), (pa, ma))
    });

    let exprs = reduced.iter().map(|t| t.expr.clone()).collect();
    let elems = reduced.into_iter().map(|t| t.elem).collect();
    Ok((elems, exprs))
}

/// Unique reduced Gröbner basis of the submodule generated by `gens`.
pub fn module_reduced_gb(gens: &[ModuleElement], order: MonomialOrder) -> Result<SubmoduleGB> {
    if gens.is_empty() {
        return Err(Error::Precondition("module needs an ambient rank; pass at least a zero generator".into()));
    }
    let m = check_lengths(gens)?;
    let vars = gens[0].vars().clone();
    let (elems, _) = buchberger(gens, order, false)?;
    Ok(SubmoduleGB { vars, m, order, gens: elems, reduced: true })
}

/// Reduced Gröbner basis plus, for each basis element, its expression as a
/// combination of the input generators.
pub fn module_reduced_gb_tracked(
    gens: &[ModuleElement],
    order: MonomialOrder,
) -> Result<(SubmoduleGB, Vec<Vec<Polynomial>>)> {
    if gens.is_empty() {
        return Err(Error::Precondition("module needs an ambient rank; pass at least a zero generator".into()));
    }
    let m = check_lengths(gens)?;
    let vars = gens[0].vars().clone();
    let (elems, exprs) = buchberger(gens, order, true)?;
    Ok((SubmoduleGB { vars, m, order, gens: elems, reduced: true }, exprs))
}

/// Remainder of `v` modulo the basis; zero iff `v` lies in the module.
pub fn normal_form(v: &ModuleElement, gb: &SubmoduleGB) -> Result<ModuleElement> {
    if v.len() != gb.m {
        return Err(Error::LengthMismatch { left: v.len(), right: gb.m });
    }
    let refs: Vec<&ModuleElement> = gb.gens.iter().collect();
    let (rem, _) = reduce_full(v, &refs, gb.order, false);
    Ok(rem)
}

/// Precomputed tracked basis for repeated lifts against the same generators.
pub struct LiftContext {
    gens: Vec<ModuleElement>,
    gb: SubmoduleGB,
    exprs: Vec<Vec<Polynomial>>,
}

impl LiftContext {
    pub fn new(gens: &[ModuleElement], order: MonomialOrder) -> Result<Self> {
        let (gb, exprs) = module_reduced_gb_tracked(gens, order)?;
        Ok(LiftContext { gens: gens.to_vec(), gb, exprs })
    }

    /// Coefficients `lambda` with `v = sum(lambda[i] * gens[i])`; errors
    /// when `v` is not a member of the generated module.
    pub fn lift(&self, v: &ModuleElement) -> Result<Vec<Polynomial>> {
        let vars = v.vars().clone();
        if v.is_zero() {
            return Ok(vec![Polynomial::zero(&vars); self.gens.len()]);
        }
        if v.len() != self.gb.m {
            return Err(Error::LengthMismatch { left: v.len(), right: self.gb.m });
        }
        let refs: Vec<&ModuleElement> = self.gb.gens.iter().collect();
        let (rem, quot) = reduce_full(v, &refs, self.gb.order, true);
        if !rem.is_zero() {
            return Err(Error::NotInModule);
        }
        let mut lambda = vec![Polynomial::zero(&vars); self.gens.len()];
        for (j, q) in quot.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            for (i, l) in lambda.iter_mut().enumerate() {
                *l = l.checked_add(&self.exprs[j][i].checked_mul(q)?)?;
            }
        }
        debug_assert!({
            let mut acc = ModuleElement::zero(&vars, v.len());
            for (i, g) in self.gens.iter().enumerate() {
                acc = acc.add(&g.mul_poly(&lambda[i]));
            }
            acc == *v
        });
        Ok(lambda)
    }
}

/// Coefficients `lambda` with `v = sum(lambda[i] * gens[i])`; errors when
/// `v` is not a member of the generated module.
pub fn lift(v: &ModuleElement, gens: &[ModuleElement]) -> Result<Vec<Polynomial>> {
    lift_with_order(v, gens, MonomialOrder::DegRevLex)
}

pub fn lift_with_order(
    v: &ModuleElement,
    gens: &[ModuleElement],
    order: MonomialOrder,
) -> Result<Vec<Polynomial>> {
    LiftContext::new(gens, order)?.lift(v)
}

/// Intersection of two submodules via a tag variable appended as the most
/// significant variable of an elimination order.
pub fn module_intersect(a: &SubmoduleGB, b: &SubmoduleGB) -> Result<SubmoduleGB> {
    if a.m != b.m {
        return Err(Error::LengthMismatch { left: a.m, right: b.m });
    }
    if !a.vars.same(&b.vars) {
        return Err(Error::VariableMismatch { left: a.vars.to_string(), right: b.vars.to_string() });
    }
    let vars = a.vars.clone();
    let n = vars.len();
    let wide = vars.extended("#t");
    let t = Polynomial::variable(&wide, n).expect("tag index");
    let one_minus_t = Polynomial::one(&wide).checked_sub(&t)?;

    let mut gens: Vec<ModuleElement> = Vec::new();
    for g in &a.gens {
        gens.push(g.widened(&wide).mul_poly(&t));
    }
    for g in &b.gens {
        gens.push(g.widened(&wide).mul_poly(&one_minus_t));
    }
    if gens.is_empty() {
        return Ok(SubmoduleGB { vars, m: a.m, order: a.order, gens: Vec::new(), reduced: true });
    }
    let elim = MonomialOrder::Elimination { split: n };
    let (elems, _) = buchberger(&gens, elim, false)?;
    let kept: Vec<ModuleElement> = elems
        .into_iter()
        .filter(ModuleElement::free_of_last_var)
        .map(|e| e.narrowed(&vars))
        .collect();
    if kept.is_empty() {
        return Ok(SubmoduleGB { vars, m: a.m, order: a.order, gens: Vec::new(), reduced: true });
    }
    module_reduced_gb(&kept, a.order)
}

/// True iff every S-vector of the basis reduces to zero against it.
pub fn buchberger_certify(gb: &SubmoduleGB) -> bool {
    let refs: Vec<&ModuleElement> = gb.gens.iter().collect();
    for i in 0..gb.gens.len() {
        for j in (i + 1)..gb.gens.len() {
            let (pi, mi, ci) = match gb.gens[i].leading(gb.order) {
                Some(l) => l,
                None => continue,
            };
            let (pj, mj, cj) = match gb.gens[j].leading(gb.order) {
                Some(l) => l,
                None => continue,
            };
            if pi != pj {
                continue;
            }
            let l = mi.lcm(mj);
            let ti = mi.try_div(&l).unwrap();
            let tj = mj.try_div(&l).unwrap();
            let s = gb.gens[i]
                .mul_term(&ti, &ci.recip())
                .sub(&gb.gens[j].mul_term(&tj, &cj.recip()));
            let (rem, _) = reduce_full(&s, &refs, gb.order, false);
            if !rem.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Subset test: every generator of `a` reduces to zero against `b`.
pub fn module_subset(a: &SubmoduleGB, b: &SubmoduleGB) -> Result<bool> {
    if a.m != b.m {
        return Err(Error::LengthMismatch { left: a.m, right: b.m });
    }
    for g in &a.gens {
        if !normal_form(g, b)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Module equality; reduced bases are unique, so equality of two reduced
/// bases is plain structural equality.
pub fn module_equal(a: &SubmoduleGB, b: &SubmoduleGB) -> Result<bool> {
    if a.m != b.m {
        return Err(Error::LengthMismatch { left: a.m, right: b.m });
    }
    if a.reduced && b.reduced && a.order == b.order {
        return Ok(a.gens == b.gens);
    }
    Ok(module_subset(a, b)? && module_subset(b, a)?)
}

pub fn module_proper_subset(a: &SubmoduleGB, b: &SubmoduleGB) -> Result<bool> {
    Ok(module_subset(a, b)? && !module_equal(a, b)?)
}

fn to_module(p: &Polynomial) -> ModuleElement {
    ModuleElement::new(vec![p.clone()]).expect("singleton")
}

/// Unique reduced Gröbner basis of the ideal generated by `gens`.
pub fn ideal_reduced_gb(gens: &[Polynomial], order: MonomialOrder) -> Result<IdealGB> {
    let nonzero: Vec<ModuleElement> = gens.iter().map(to_module).collect();
    if nonzero.is_empty() {
        return Ok(IdealGB { order, gens: Vec::new(), reduced: true });
    }
    let (elems, _) = buchberger(&nonzero, order, false)?;
    Ok(IdealGB {
        order,
        gens: elems.into_iter().map(|e| e.coords()[0].clone()).collect(),
        reduced: true,
    })
}

/// Generators of the intersection of two ideals (tag-variable elimination).
pub fn ideal_intersect(
    a: &[Polynomial],
    b: &[Polynomial],
    order: MonomialOrder,
) -> Result<Vec<Polynomial>> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let ga = module_reduced_gb(&a.iter().map(to_module).collect::<Vec<_>>(), order)?;
    let gb = module_reduced_gb(&b.iter().map(to_module).collect::<Vec<_>>(), order)?;
    let inter = module_intersect(&ga, &gb)?;
    Ok(inter.gens.iter().map(|e| e.coords()[0].clone()).collect())
}
