//! Drives the factorization pipeline from a job document and independently
//! re-checks emitted results.

use crate::error::Result;
use crate::flp::{flp_factorize_full, frp_factorize_full, Branch, FactorizeOptions};
use crate::grobner::{ideal_reduced_gb, module_equal, module_reduced_gb};
use crate::poly::{MonomialOrder, Polynomial};
use crate::quotient::{quotient_by_ideal, quotient_by_poly};

use super::doc::{
    matrix_to_strings, polys_to_strings, DivisorTrace, FactorizationDoc, JobSpec, ResultDoc,
};
use super::parse::parse_matrix;

/// Runs the full pipeline for a job and assembles the result document.
pub fn run_factorize(job: &JobSpec) -> Result<ResultDoc> {
    let matrix = job.parse_matrix()?;
    let supplied = job.parse_factors()?;
    let opts = FactorizeOptions {
        all_factorizations: job.options.all_factorizations,
        force_general_branch: false,
        supplied_factors: supplied,
        order: Some(job.options.order.clone().into()),
    };
    let report = if job.options.frp {
        frp_factorize_full(&matrix, &opts)?
    } else {
        flp_factorize_full(&matrix, &opts)?
    };

    let trace = report
        .candidates
        .iter()
        .map(|c| DivisorTrace {
            divisor: c.divisor.to_string(),
            quotient_generators: matrix_to_strings(&c.generator_matrix),
            column_reduced_minors: polys_to_strings(&c.certificate.column_reduced_minors),
            minor_ideal_gb: polys_to_strings(&c.certificate.minor_ideal_gb),
            free: c.certificate.free,
        })
        .collect();

    let factorizations = report
        .factorizations
        .iter()
        .map(|w| FactorizationDoc {
            divisor: w.requested_divisor.to_string(),
            f: w.f.to_string(),
            g: matrix_to_strings(&w.g),
            f1: matrix_to_strings(&w.f1),
            d_r_of_g: w.d_r_of_g.to_string(),
            verified: w.verified,
        })
        .collect();

    Ok(ResultDoc {
        job: job.clone(),
        mode: if job.options.frp { "frp".into() } else { "flp".into() },
        rank: report.rank,
        d_r: report.d_r.to_string(),
        column_reduced_minors: polys_to_strings(&report.column_reduced_minors),
        minor_ideal_gb: polys_to_strings(&report.minor_ideal_gb),
        branch: match report.branch {
            Branch::UnitMinorIdeal => "unit_minor_ideal".into(),
            Branch::General => "general".into(),
        },
        divisors: polys_to_strings(report.lattice.divisors()),
        trace,
        factorizations,
    })
}

/// Re-checks a result document from scratch: for every factorization entry,
/// the exact product `F = G * F1`, the multiplicativity
/// `d_r(G) * d_r(F1) = d_r(F)` up to a constant, and module equality of
/// `rho(F1)` with the freshly recomputed quotient for the entry's divisor.
pub fn run_verify(doc: &ResultDoc) -> Result<bool> {
    let vars = doc.job.ambient_vars()?;
    let order: MonomialOrder = doc.job.options.order.clone().into();
    let input = doc.job.parse_matrix()?;

    // in frp mode the pipeline ran on the transpose; map everything there
    let frp = doc.mode == "frp";
    let matrix = if frp { input.transpose() } else { input };

    let r = matrix.rank();
    if r == 0 || r == matrix.rows() {
        return Ok(false);
    }
    let d = matrix.d_i(r)?;
    let crm = matrix.column_reduced_minors(r)?;
    let minor_gb = ideal_reduced_gb(&crm.values, order)?;
    let k = module_reduced_gb(&matrix.row_elements(), order)?;

    for entry in &doc.factorizations {
        let g_doc = parse_matrix(&entry.g, &vars)?;
        let f1_doc = parse_matrix(&entry.f1, &vars)?;
        let divisor = super::parse::parse_polynomial(&entry.divisor, &vars)?;

        // orient as a left factorization of `matrix`
        let (g, f1) = if frp {
            (f1_doc.transpose(), g_doc.transpose())
        } else {
            (g_doc, f1_doc)
        };

        if g.mat_mul(&f1)? != matrix {
            return Ok(false);
        }
        let dg = g.d_i(r)?;
        let d1 = f1.d_i(r)?;
        if !dg.checked_mul(&d1)?.associate_of(&d) {
            return Ok(false);
        }
        let quotient = if minor_gb.is_unit() {
            quotient_by_poly(&k, &divisor)?
        } else {
            let scaled: Vec<Polynomial> = minor_gb
                .generators()
                .iter()
                .map(|p| p.checked_mul(&divisor))
                .collect::<Result<_>>()?;
            quotient_by_ideal(&k, &scaled)?
        };
        let f1_module = module_reduced_gb(&f1.row_elements(), order)?;
        if !module_equal(&f1_module, &quotient.module)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Convenience wrapper: factorize and immediately re-verify.
pub fn run_factorize_verified(job: &JobSpec) -> Result<(ResultDoc, bool)> {
    let doc = run_factorize(job)?;
    let ok = run_verify(&doc)?;
    Ok((doc, ok))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grobner::LiftContext;
    use crate::io::doc::matrix_to_strings;
    use crate::io::JobSpec;
    use crate::poly::MonomialOrder;

    fn job_a() -> JobSpec {
        serde_json::from_str(
            r#"{
                "vars": ["z1", "z2", "z3"],
                "matrix": [
                    ["z1*z2-z2", "0", "z3+1"],
                    ["0", "z1*z2-z2", "z1^2-2*z1+1"],
                    ["z1^2*z2-z1*z2", "z1*z2^2-z2^2", "z1^2*z2-2*z1*z2+z1*z3+z1+z2"]
                ]
            }"#,
        )
        .unwrap()
    }

    fn job_b() -> JobSpec {
        serde_json::from_str(
            r#"{
                "vars": ["z1", "z2", "z3"],
                "matrix": [
                    ["z1*z2^2", "z1*z3^2", "z2^2*z3+z3^3"],
                    ["z1*z2", "0", "z2*z3"],
                    ["0", "z1^2*z3", "z1*z3^2"]
                ]
            }"#,
        )
        .unwrap()
    }

    #[test]
    fn factorize_job_a() {
        let doc = run_factorize(&job_a()).unwrap();
        assert_eq!(doc.rank, 2);
        assert_eq!(doc.branch, "unit_minor_ideal");
        assert_eq!(doc.factorizations.len(), 1);
        let w = &doc.factorizations[0];
        let vars = job_a().ambient_vars().unwrap();
        let f = super::super::parse::parse_polynomial(&w.f, &vars).unwrap();
        let want = super::super::parse::parse_polynomial("z1-1", &vars).unwrap();
        assert!(f.associate_of(&want));
        assert!(w.verified);
        assert!(run_verify(&doc).unwrap());
    }

    #[test]
    fn factorize_job_b() {
        let doc = run_factorize(&job_b()).unwrap();
        assert_eq!(doc.branch, "general");
        assert_eq!(doc.divisors.len(), 8);
        assert_eq!(doc.factorizations.len(), 1);
        let vars = job_b().ambient_vars().unwrap();
        let f = super::super::parse::parse_polynomial(&doc.factorizations[0].f, &vars).unwrap();
        let want = super::super::parse::parse_polynomial("z1*z2*z3", &vars).unwrap();
        assert!(f.associate_of(&want));
        assert!(run_verify(&doc).unwrap());
    }

    #[test]
    fn rejects_full_row_rank_jobs() {
        let job: JobSpec = serde_json::from_str(
            r#"{"vars": ["z1", "z2", "z3"],
                "matrix": [["1", "0", "z1"], ["0", "1", "z2"]]}"#,
        )
        .unwrap();
        match run_factorize(&job) {
            Err(e @ crate::error::Error::Precondition(_)) => assert_eq!(e.exit_code(), 2),
            other => panic!("expected precondition rejection, got {other:?}"),
        }
    }

    #[test]
    fn verify_detects_perturbed_left_factor() {
        let mut doc = run_factorize(&job_a()).unwrap();
        assert!(run_verify(&doc).unwrap());
        // +1 on one entry of G breaks the product identity
        let old = doc.factorizations[0].g[0][0].clone();
        doc.factorizations[0].g[0][0] = format!("({old})+1");
        assert!(!run_verify(&doc).unwrap());
    }

    #[test]
    fn verify_accepts_equivalent_permuted_basis() {
        let mut doc = run_factorize(&job_a()).unwrap();
        let vars = doc.job.ambient_vars().unwrap();
        let f1 = parse_matrix(&doc.factorizations[0].f1, &vars).unwrap();
        // permute the basis rows and recompute the left factor by lifting
        let permuted = crate::matrix::PolyMatrix::from_rows(vec![
            (0..f1.cols()).map(|c| f1.entry(1, c).clone()).collect(),
            (0..f1.cols()).map(|c| f1.entry(0, c).clone()).collect(),
        ])
        .unwrap();
        let input = doc.job.parse_matrix().unwrap();
        let ctx = LiftContext::new(&permuted.row_elements(), MonomialOrder::DegRevLex).unwrap();
        let g_rows: Vec<Vec<crate::poly::Polynomial>> = (0..input.rows())
            .map(|i| ctx.lift(&input.row(i)).unwrap())
            .collect();
        let g = crate::matrix::PolyMatrix::from_rows(g_rows).unwrap();
        doc.factorizations[0].f1 = matrix_to_strings(&permuted);
        doc.factorizations[0].g = matrix_to_strings(&g);
        assert!(run_verify(&doc).unwrap());
    }

    #[test]
    fn result_doc_round_trips_through_json() {
        let doc = run_factorize(&job_a()).unwrap();
        let json = doc.to_json().unwrap();
        let back = ResultDoc::from_json(&json).unwrap();
        assert_eq!(doc, back);
        assert!(run_verify(&back).unwrap());
    }

    #[test]
    fn unknown_option_keys_rejected() {
        let text = r#"{"vars": ["z1"], "matrix": [["z1"]],
                       "options": {"order": "lex", "bogus": true}}"#;
        assert!(serde_json::from_str::<JobSpec>(text).is_err());
        let text2 = r#"{"vars": ["z1"], "matrix": [["z1"]], "frp": true}"#;
        assert!(serde_json::from_str::<JobSpec>(text2).is_err());
    }

    #[test]
    fn supplied_factors_are_used_after_validation() {
        let mut job = job_a();
        job.d_factors = Some(vec!["z1-1".into(), "z2".into()]);
        let doc = run_factorize(&job).unwrap();
        assert_eq!(doc.divisors.len(), 4);
        assert!(run_verify(&doc).unwrap());

        job.d_factors = Some(vec!["z3".into()]);
        assert!(matches!(
            run_factorize(&job),
            Err(crate::error::Error::InvalidFactors(_))
        ));
    }

    #[test]
    fn duplicate_variables_rejected() {
        let job: JobSpec = serde_json::from_str(
            r#"{"vars": ["z1", "z1"], "matrix": [["z1", "0"]]}"#,
        )
        .unwrap();
        assert!(run_factorize(&job).is_err());
    }

    #[test]
    fn serialized_output_is_deterministic() {
        let a = run_factorize(&job_b()).unwrap().to_json().unwrap();
        let b = run_factorize(&job_b()).unwrap().to_json().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn frp_mode_round_trip() {
        let mut job = job_a();
        // transpose the matrix in the job and flip the mode
        let vars = job.ambient_vars().unwrap();
        let m = job.parse_matrix().unwrap().transpose();
        job.matrix = matrix_to_strings(&m);
        job.options.frp = true;
        let _ = vars;
        let doc = run_factorize(&job).unwrap();
        assert_eq!(doc.mode, "frp");
        assert_eq!(doc.factorizations.len(), 1);
        assert!(run_verify(&doc).unwrap());
    }

    #[test]
    fn lex_order_option_agrees_on_results() {
        let mut job = job_a();
        job.options.order = crate::io::OrderChoice::Lex;
        let doc = run_factorize(&job).unwrap();
        assert_eq!(doc.factorizations.len(), 1);
        assert!(run_verify(&doc).unwrap());
    }
}
