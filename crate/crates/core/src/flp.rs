//! Decides whether a polynomial matrix without full row rank admits
//! factor-left-prime factorizations and computes all of them.
//!
//! The pipeline: compute the rank `r`, the monic gcd `d` of the `r x r`
//! minors (which must be square-free), the divisor lattice of `d` and the
//! column reduced minors `c_1..c_xi`. When the `c_j` generate the unit
//! ideal, a divisor `f` admits a factorization iff `rho(F):f` is free of
//! rank `r`, and the FLP factorizations are the divisibility-maximal
//! survivors. Otherwise candidates come from `rho(F):(f*G)` with `G` the
//! reduced basis of the minor ideal, and maximality is by module inclusion.

use crate::divisors::{enumerate_divisors, irreducible_factors, validate_factors, DivisorLattice};
use crate::error::{Error, Result};
use crate::grobner::{module_proper_subset, module_reduced_gb, SubmoduleGB};
use crate::matrix::PolyMatrix;
use crate::poly::{is_squarefree, MonomialOrder, Polynomial};
use crate::quotient::{
    free_basis, freeness_check, quotient_by_ideal, quotient_by_poly, solve_left_factor,
    FreenessCertificate,
};

/// One factorization `F = G * F1` with `d_r(G) = f`.
#[derive(Clone, Debug)]
pub struct FlpFactorization {
    pub g: PolyMatrix,
    pub f1: PolyMatrix,
    /// `d_r(G)`, the divisor the factorization is taken with respect to.
    pub f: Polynomial,
    /// The lattice divisor whose quotient produced this entry. In the
    /// general branch this may differ from `f`.
    pub requested_divisor: Polynomial,
    pub d_r_of_g: Polynomial,
    pub verified: bool,
}

/// Per-divisor candidate: the quotient's generator matrix, its module and
/// the freeness certificate.
#[derive(Clone, Debug)]
pub struct CandidateEntry {
    pub divisor: Polynomial,
    pub generator_matrix: PolyMatrix,
    pub module: SubmoduleGB,
    pub certificate: FreenessCertificate,
}

/// Which quotient family drove the run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// Minor ideal is the unit ideal: quotients by the bare divisors,
    /// maximality by divisor divisibility.
    UnitMinorIdeal,
    /// Quotients by the divisor-scaled minor ideal, maximality by proper
    /// module inclusion.
    General,
}

#[derive(Clone, Debug, Default)]
pub struct FactorizeOptions {
    /// Return every certified factorization instead of only the maximal
    /// (factor-left-prime) ones.
    pub all_factorizations: bool,
    /// Run the general branch even when the minor ideal is the unit ideal.
    /// The two branches must agree there; exposed for cross-checking.
    pub force_general_branch: bool,
    /// Externally supplied irreducible factors of `d_r(F)`; validated, then
    /// trusted for the lattice.
    pub supplied_factors: Option<Vec<Polynomial>>,
    pub order: Option<MonomialOrder>,
}

/// Everything a run computes, in computation order.
#[derive(Clone, Debug)]
pub struct FactorizeReport {
    pub rank: usize,
    pub d_r: Polynomial,
    pub column_reduced_minors: Vec<Polynomial>,
    pub minor_ideal_gb: Vec<Polynomial>,
    pub branch: Branch,
    pub lattice: DivisorLattice,
    pub candidates: Vec<CandidateEntry>,
    /// Indices into `candidates` that survived the maximality filter.
    pub kept: Vec<usize>,
    pub factorizations: Vec<FlpFactorization>,
}

/// All factor-left-prime factorizations of `F` (which must have rank
/// `1 <= r < rows` and square-free `d_r`).
pub fn flp_factorize(f: &PolyMatrix) -> Result<Vec<FlpFactorization>> {
    Ok(flp_factorize_full(f, &FactorizeOptions::default())?.factorizations)
}

pub fn flp_factorize_full(f: &PolyMatrix, opts: &FactorizeOptions) -> Result<FactorizeReport> {
    let order = opts.order.unwrap_or(MonomialOrder::DegRevLex);
    let l = f.rows();
    let r = f.rank();
    if r == 0 {
        return Err(Error::Precondition("the zero matrix has no factorization".into()));
    }
    if r == l {
        return Err(Error::Precondition(format!(
            "matrix has full row rank {r}; its column reduced minors degenerate to the constant 1 \
             and the non-full-rank factorization theory does not apply"
        )));
    }
    let d = f.d_i(r)?;
    if !is_squarefree(&d)? {
        return Err(Error::Precondition(format!(
            "d_{r} = {d} is not square-free"
        )));
    }

    let factors = match &opts.supplied_factors {
        Some(supplied) => validate_factors(&d, supplied)?,
        None => irreducible_factors(&d)?,
    };
    let lattice = enumerate_divisors(f.vars(), &factors)?;

    let crm = f.column_reduced_minors(r)?;
    let minor_gb = crate::grobner::ideal_reduced_gb(&crm.values, order)?;
    let branch = if minor_gb.is_unit() && !opts.force_general_branch {
        Branch::UnitMinorIdeal
    } else {
        Branch::General
    };

    let k = module_reduced_gb(&f.row_elements(), order)?;

    let mut candidates: Vec<CandidateEntry> = Vec::new();
    for divisor in lattice.divisors() {
        let quotient = match branch {
            Branch::UnitMinorIdeal => quotient_by_poly(&k, divisor)?,
            Branch::General => {
                let scaled: Vec<Polynomial> = minor_gb
                    .generators()
                    .iter()
                    .map(|g| g.checked_mul(divisor))
                    .collect::<Result<_>>()?;
                quotient_by_ideal(&k, &scaled)?
            }
        };
        let matrix = quotient.generator_matrix()?;
        let certificate = freeness_check(&matrix, r)?;
        candidates.push(CandidateEntry {
            divisor: divisor.clone(),
            generator_matrix: matrix,
            module: quotient.module,
            certificate,
        });
    }

    let free_idx: Vec<usize> = candidates
        .iter()
        .enumerate()
        .filter(|(_, c)| c.certificate.free)
        .map(|(i, _)| i)
        .collect();

    let kept = if opts.all_factorizations {
        free_idx.clone()
    } else {
        match branch {
            Branch::UnitMinorIdeal => filter_by_divisibility(&candidates, &free_idx),
            Branch::General => filter_by_inclusion(&candidates, &free_idx)?,
        }
    };

    let mut factorizations = Vec::with_capacity(kept.len());
    for &i in &kept {
        let cand = &candidates[i];
        let basis = free_basis(&cand.generator_matrix, r, &cand.certificate)?;
        let g = solve_left_factor(f, &basis)?;
        let d_r_of_g = g.d_i(r)?;
        let product_ok = g.mat_mul(&basis.matrix)? == *f;
        let d1 = basis.matrix.d_i(r)?;
        let multiplicative_ok = d_r_of_g.checked_mul(&d1)?.associate_of(&d);
        let label_ok = match branch {
            // guaranteed equal to the requested divisor in this branch
            Branch::UnitMinorIdeal => d_r_of_g.associate_of(&cand.divisor),
            Branch::General => true,
        };
        factorizations.push(FlpFactorization {
            g,
            f1: basis.matrix,
            f: d_r_of_g.clone(),
            requested_divisor: cand.divisor.clone(),
            d_r_of_g,
            verified: product_ok && multiplicative_ok && label_ok,
        });
    }

    Ok(FactorizeReport {
        rank: r,
        d_r: d,
        column_reduced_minors: crm.values,
        minor_ideal_gb: minor_gb.generators().to_vec(),
        branch,
        lattice,
        candidates,
        kept,
        factorizations,
    })
}

/// Keep candidates whose divisor has no proper multiple among the others
/// (processing the work list in lattice order, deleting divisors of each
/// selected element, the selected one included).
fn filter_by_divisibility(candidates: &[CandidateEntry], free_idx: &[usize]) -> Vec<usize> {
    let mut alive: Vec<usize> = free_idx.to_vec();
    let mut kept = Vec::new();
    while let Some(&i) = alive.first() {
        let fi = &candidates[i].divisor;
        let maximal = !alive.iter().any(|&j| {
            j != i && candidates[j].divisor.divisible_by(fi)
        });
        if maximal {
            kept.push(i);
        }
        alive.retain(|&t| !fi.divisible_by(&candidates[t].divisor));
    }
    kept
}

/// Keep candidates whose module is not properly contained in another
/// candidate's module, with the same work-list deletion scheme (containees
/// of each selected element are dropped alongside it).
fn filter_by_inclusion(candidates: &[CandidateEntry], free_idx: &[usize]) -> Result<Vec<usize>> {
    let mut alive: Vec<usize> = free_idx.to_vec();
    let mut kept = Vec::new();
    while let Some(&i) = alive.first() {
        let mut maximal = true;
        for &j in &alive {
            if j != i && module_proper_subset(&candidates[i].module, &candidates[j].module)? {
                maximal = false;
                break;
            }
        }
        if maximal {
            kept.push(i);
        }
        let mut next = Vec::with_capacity(alive.len());
        for &t in &alive {
            if !crate::grobner::module_subset(&candidates[t].module, &candidates[i].module)? {
                next.push(t);
            }
        }
        alive = next;
    }
    Ok(kept)
}

/// Whether a candidate is maximal within a candidate set: no other entry's
/// module properly contains it (general branch) and no other surviving
/// divisor is a proper multiple (unit-ideal branch).
pub fn is_maximal_candidate(
    entry: &CandidateEntry,
    all: &[CandidateEntry],
    branch: Branch,
) -> Result<bool> {
    for other in all {
        if other.divisor == entry.divisor {
            continue;
        }
        if !other.certificate.free {
            continue;
        }
        match branch {
            Branch::UnitMinorIdeal => {
                if other.divisor.divisible_by(&entry.divisor) {
                    return Ok(false);
                }
            }
            Branch::General => {
                if module_proper_subset(&entry.module, &other.module)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Single-divisor query: a factorization of `F` with respect to `f`, when
/// one exists along this pipeline.
pub fn factorize_wrt(f: &PolyMatrix, divisor: &Polynomial) -> Result<Option<FlpFactorization>> {
    let order = MonomialOrder::DegRevLex;
    let l = f.rows();
    let r = f.rank();
    if r == 0 || r == l {
        return Err(Error::Precondition("matrix must have rank 1 <= r < rows".into()));
    }
    let d = f.d_i(r)?;
    if !d.divisible_by(divisor) {
        return Err(Error::Precondition(format!("{divisor} does not divide d_{r} = {d}")));
    }
    let crm = f.column_reduced_minors(r)?;
    let minor_gb = crate::grobner::ideal_reduced_gb(&crm.values, order)?;
    let k = module_reduced_gb(&f.row_elements(), order)?;
    let quotient = if minor_gb.is_unit() {
        quotient_by_poly(&k, divisor)?
    } else {
        let scaled: Vec<Polynomial> = minor_gb
            .generators()
            .iter()
            .map(|g| g.checked_mul(divisor))
            .collect::<Result<_>>()?;
        quotient_by_ideal(&k, &scaled)?
    };
    let matrix = quotient.generator_matrix()?;
    let certificate = freeness_check(&matrix, r)?;
    if !certificate.free {
        return Ok(None);
    }
    let basis = free_basis(&matrix, r, &certificate)?;
    let g = solve_left_factor(f, &basis)?;
    let d_r_of_g = g.d_i(r)?;
    if !minor_gb.is_unit() && !d_r_of_g.associate_of(&divisor.monic(order)) {
        // freeness was only necessary here; the factorization obtained is
        // with respect to a different divisor
        return Ok(None);
    }
    let product_ok = g.mat_mul(&basis.matrix)? == *f;
    let d1 = basis.matrix.d_i(r)?;
    let multiplicative_ok = d_r_of_g.checked_mul(&d1)?.associate_of(&d);
    Ok(Some(FlpFactorization {
        g,
        f1: basis.matrix,
        f: d_r_of_g.clone(),
        requested_divisor: divisor.clone(),
        d_r_of_g,
        verified: product_ok && multiplicative_ok,
    }))
}

/// Factor-right-prime factorizations via the transpose: the returned
/// entries satisfy `F = G * F1` where `G` is the (FRP) left factor and `f`
/// is `d_r` of the right factor `F1`.
pub fn frp_factorize(f: &PolyMatrix) -> Result<Vec<FlpFactorization>> {
    Ok(frp_factorize_full(f, &FactorizeOptions::default())?.factorizations)
}

pub fn frp_factorize_full(f: &PolyMatrix, opts: &FactorizeOptions) -> Result<FactorizeReport> {
    let mut report = flp_factorize_full(&f.transpose(), opts)?;
    for entry in &mut report.factorizations {
        let g = entry.f1.transpose();
        let f1 = entry.g.transpose();
        entry.g = g;
        entry.f1 = f1;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grobner::module_equal;
    use crate::io::{parse_matrix, parse_polynomial};
    use crate::poly::Vars;

    fn vars3() -> Vars {
        Vars::new(["z1", "z2", "z3"]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &vars3()).unwrap()
    }

    fn mat(rows: &[&[&str]]) -> PolyMatrix {
        let rows: Vec<Vec<String>> = rows
            .iter()
            .map(|r| r.iter().map(|s| s.to_string()).collect())
            .collect();
        parse_matrix(&rows, &vars3()).unwrap()
    }

    fn case_a() -> PolyMatrix {
        mat(&[
            &["z1*z2-z2", "0", "z3+1"],
            &["0", "z1*z2-z2", "z1^2-2*z1+1"],
            &["z1^2*z2-z1*z2", "z1*z2^2-z2^2", "z1^2*z2-2*z1*z2+z1*z3+z1+z2"],
        ])
    }

    fn case_b() -> PolyMatrix {
        mat(&[
            &["z1*z2^2", "z1*z3^2", "z2^2*z3+z3^3"],
            &["z1*z2", "0", "z2*z3"],
            &["0", "z1^2*z3", "z1*z3^2"],
        ])
    }

    fn gb_of(m: &PolyMatrix) -> crate::grobner::SubmoduleGB {
        module_reduced_gb(&m.row_elements(), MonomialOrder::DegRevLex).unwrap()
    }

    #[test]
    fn factorizes_case_a() {
        let report = flp_factorize_full(&case_a(), &FactorizeOptions::default()).unwrap();
        assert_eq!(report.branch, Branch::UnitMinorIdeal);
        assert_eq!(report.rank, 2);
        assert!(report.d_r.associate_of(&p("z1*z2-z2")));
        assert_eq!(report.lattice.len(), 4);
        assert_eq!(report.factorizations.len(), 1);
        let w = &report.factorizations[0];
        assert!(w.f.associate_of(&p("z1-1")));
        assert!(w.verified);
        assert_eq!(w.g.mat_mul(&w.f1).unwrap(), case_a());
        let expected_f1 = mat(&[&["0", "z2", "z1-1"], &["z1*z2-z2", "0", "z3+1"]]);
        assert!(module_equal(&gb_of(&w.f1), &gb_of(&expected_f1)).unwrap());
    }

    #[test]
    fn factorizes_case_b() {
        let report = flp_factorize_full(&case_b(), &FactorizeOptions::default()).unwrap();
        assert_eq!(report.branch, Branch::General);
        assert_eq!(report.rank, 2);
        assert!(report.d_r.associate_of(&p("z1*z2*z3")));
        assert_eq!(report.lattice.len(), 8);
        assert_eq!(report.factorizations.len(), 1);
        let w = &report.factorizations[0];
        assert!(w.f.associate_of(&p("z1*z2*z3")));
        assert!(w.verified);
        assert_eq!(w.g.mat_mul(&w.f1).unwrap(), case_b());
        let expected_f1 = mat(&[&["0", "z1", "z3"], &["-1", "1", "0"]]);
        assert!(module_equal(&gb_of(&w.f1), &gb_of(&expected_f1)).unwrap());
        assert!(w.d_r_of_g.associate_of(&p("z1*z2*z3")));
    }

    #[test]
    fn case_b_candidate_verdicts() {
        // seven of the eight scaled-ideal quotients are free; the one for
        // divisor z1 is not
        let report = flp_factorize_full(&case_b(), &FactorizeOptions::default()).unwrap();
        let mut free = 0;
        for cand in &report.candidates {
            if cand.divisor.associate_of(&p("z1")) {
                assert!(!cand.certificate.free, "divisor z1 must fail the freeness test");
            } else {
                assert!(cand.certificate.free, "divisor {} should be free", cand.divisor);
            }
            if cand.certificate.free {
                free += 1;
            }
        }
        assert_eq!(free, 7);
    }

    #[test]
    fn maximality_of_candidates_case_b() {
        let report = flp_factorize_full(&case_b(), &FactorizeOptions::default()).unwrap();
        let top = report
            .candidates
            .iter()
            .find(|c| c.divisor.associate_of(&p("z1*z2*z3")))
            .unwrap();
        assert!(is_maximal_candidate(top, &report.candidates, report.branch).unwrap());
        let low = report
            .candidates
            .iter()
            .find(|c| c.divisor.is_one())
            .unwrap();
        assert!(!is_maximal_candidate(low, &report.candidates, report.branch).unwrap());
        // a singleton candidate set is trivially maximal
        assert!(is_maximal_candidate(top, std::slice::from_ref(top), report.branch).unwrap());
    }

    #[test]
    fn factorize_wrt_cases() {
        assert!(factorize_wrt(&case_a(), &p("z2")).unwrap().is_none());
        let some = factorize_wrt(&case_a(), &p("z1-1")).unwrap().unwrap();
        assert!(some.f.associate_of(&p("z1-1")));
        assert_eq!(some.g.mat_mul(&some.f1).unwrap(), case_a());
        let trivial = factorize_wrt(&case_a(), &p("1")).unwrap().unwrap();
        assert!(trivial.f.is_constant());
        assert!(factorize_wrt(&case_a(), &p("z3")).is_err()); // not a divisor of d_2
    }

    #[test]
    fn rank_one_input_with_zero_row() {
        let f = mat(&[&["z1", "z1*z2"], &["0", "0"]]);
        let report = flp_factorize_full(&f, &FactorizeOptions::default()).unwrap();
        assert_eq!(report.rank, 1);
        assert!(report.d_r.associate_of(&p("z1")));
        assert_eq!(report.lattice.len(), 2);
        assert_eq!(report.factorizations.len(), 1);
        let w = &report.factorizations[0];
        assert!(w.f.associate_of(&p("z1")));
        assert_eq!(w.g.mat_mul(&w.f1).unwrap(), f);
        assert_eq!(w.f1.rows(), 1);
        assert!(w.verified);
    }

    #[test]
    fn rejects_degenerate_inputs() {
        // full row rank
        let frr = mat(&[&["1", "0", "z1"], &["0", "1", "z2"]]);
        assert!(matches!(
            flp_factorize(&frr),
            Err(Error::Precondition(_))
        ));
        // rank zero
        let zero = PolyMatrix::zero(&vars3(), 2, 3);
        assert!(matches!(flp_factorize(&zero), Err(Error::Precondition(_))));
        // d_r not square-free: [[z1^2, 0], [z1^2, 0], [0, 0]] has d_1 = z1^2
        let sq = mat(&[&["z1^2", "0"], &["z1^2", "0"], &["0", "0"]]);
        assert!(matches!(flp_factorize(&sq), Err(Error::Precondition(_))));
    }

    #[test]
    fn forced_general_branch_agrees_on_case_a() {
        let a = flp_factorize_full(&case_a(), &FactorizeOptions::default()).unwrap();
        let b = flp_factorize_full(
            &case_a(),
            &FactorizeOptions { force_general_branch: true, ..Default::default() },
        )
        .unwrap();
        assert_eq!(a.branch, Branch::UnitMinorIdeal);
        assert_eq!(b.branch, Branch::General);
        assert_eq!(a.factorizations.len(), b.factorizations.len());
        for (wa, wb) in a.factorizations.iter().zip(&b.factorizations) {
            assert_eq!(wa.g, wb.g);
            assert_eq!(wa.f1, wb.f1);
            assert!(wa.f.associate_of(&wb.f));
        }
    }

    #[test]
    fn all_factorizations_flag_keeps_non_maximal_entries() {
        let report = flp_factorize_full(
            &case_a(),
            &FactorizeOptions { all_factorizations: true, ..Default::default() },
        )
        .unwrap();
        // divisors 1 and z1-1 both admit factorizations
        assert_eq!(report.factorizations.len(), 2);
        for w in &report.factorizations {
            assert!(w.verified);
            assert_eq!(w.g.mat_mul(&w.f1).unwrap(), case_a());
        }
    }

    #[test]
    fn deterministic_output() {
        let a = flp_factorize_full(&case_b(), &FactorizeOptions::default()).unwrap();
        let b = flp_factorize_full(&case_b(), &FactorizeOptions::default()).unwrap();
        assert_eq!(a.factorizations.len(), b.factorizations.len());
        for (wa, wb) in a.factorizations.iter().zip(&b.factorizations) {
            assert_eq!(wa.g, wb.g);
            assert_eq!(wa.f1, wb.f1);
            assert_eq!(wa.f, wb.f);
        }
    }

    #[test]
    fn frp_transposes_back() {
        let ft = case_a().transpose();
        let ws = frp_factorize(&ft).unwrap();
        assert_eq!(ws.len(), 1);
        let w = &ws[0];
        assert_eq!(w.g.mat_mul(&w.f1).unwrap(), ft);
        assert!(w.f.associate_of(&p("z1-1")));
        // right factor carries the divisor: d_2 of F1 is f
        assert!(w.f1.d_i(2).unwrap().associate_of(&p("z1-1")));
    }

    #[test]
    fn frp_on_second_case_transpose() {
        let ft = case_b().transpose();
        let ws = frp_factorize(&ft).unwrap();
        assert_eq!(ws.len(), 1);
        let w = &ws[0];
        assert_eq!(w.g.mat_mul(&w.f1).unwrap(), ft);
        assert!(w.f.associate_of(&p("z1*z2*z3")));
    }

    #[test]
    fn frp_rejects_full_column_rank() {
        let m = mat(&[&["1", "0"], &["0", "1"], &["z1", "z2"]]);
        assert!(matches!(frp_factorize(&m), Err(Error::Precondition(_))));
    }
}
