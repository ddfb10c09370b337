//! Shared fixtures for the integration suites.

#![allow(dead_code)]

use polymat::grobner::{module_reduced_gb, SubmoduleGB};
use polymat::io::{parse_matrix, parse_polynomial};
use polymat::poly::MonomialOrder;
use polymat::{PolyMatrix, Polynomial, Vars};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn vars3() -> Vars {
    Vars::new(["z1", "z2", "z3"]).unwrap()
}

pub fn p(s: &str) -> Polynomial {
    parse_polynomial(s, &vars3()).unwrap()
}

pub fn mat(rows: &[&[&str]]) -> PolyMatrix {
    let rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(|s| s.to_string()).collect())
        .collect();
    parse_matrix(&rows, &vars3()).unwrap()
}

/// 3x3 rank-2 reference input with unit minor ideal and d_2 = (z1-1)*z2.
pub fn case_a() -> PolyMatrix {
    mat(&[
        &["z1*z2-z2", "0", "z3+1"],
        &["0", "z1*z2-z2", "z1^2-2*z1+1"],
        &["z1^2*z2-z1*z2", "z1*z2^2-z2^2", "z1^2*z2-2*z1*z2+z1*z3+z1+z2"],
    ])
}

/// The two-row left-prime factor of `case_a` and its left cofactor.
pub fn case_a_f1() -> PolyMatrix {
    mat(&[&["0", "z2", "z1-1"], &["z1*z2-z2", "0", "z3+1"]])
}

/// 3x3 rank-2 reference input with non-unit minor ideal and d_2 = z1*z2*z3.
pub fn case_b() -> PolyMatrix {
    mat(&[
        &["z1*z2^2", "z1*z3^2", "z2^2*z3+z3^3"],
        &["z1*z2", "0", "z2*z3"],
        &["0", "z1^2*z3", "z1*z3^2"],
    ])
}

pub fn case_b_f1() -> PolyMatrix {
    mat(&[&["0", "z1", "z3"], &["-1", "1", "0"]])
}

pub fn gb_of(m: &PolyMatrix) -> SubmoduleGB {
    module_reduced_gb(&m.row_elements(), MonomialOrder::DegRevLex).unwrap()
}

/// Multiset comparison up to a per-element sign and one global constant.
pub fn eq_up_to_signs_and_constant(got: &[Polynomial], want: &[Polynomial]) -> bool {
    fn matches_under(
        got: &[Polynomial],
        want: &[Polynomial],
        w0: &Polynomial,
        g0: &Polynomial,
    ) -> bool {
        let mut used = vec![false; got.len()];
        for w in want {
            let found = got.iter().enumerate().position(|(i, g)| {
                if used[i] {
                    return false;
                }
                if w.is_zero() || g.is_zero() {
                    return w.is_zero() && g.is_zero();
                }
                let lhs = g.checked_mul(w0).unwrap();
                let rhs = g0.checked_mul(w).unwrap();
                lhs == rhs || lhs == rhs.neg()
            });
            match found {
                Some(i) => used[i] = true,
                None => return false,
            }
        }
        true
    }
    if got.len() != want.len() {
        return false;
    }
    let Some(w0) = want.iter().find(|w| !w.is_zero()) else {
        return got.iter().all(Polynomial::is_zero);
    };
    got.iter()
        .filter(|g| !g.is_zero())
        .any(|g0| matches_under(got, want, w0, g0))
}

/// Random polynomial of total degree at most `max_deg` with small integer
/// coefficients; may be zero.
pub fn random_poly(rng: &mut ChaCha8Rng, vars: &Vars, max_deg: u32, terms: usize) -> Polynomial {
    let mut acc = Polynomial::zero(vars);
    for _ in 0..terms {
        let c: i64 = rng.gen_range(-3..=3);
        if c == 0 {
            continue;
        }
        let mut term = Polynomial::constant_i64(vars, c);
        let mut budget = max_deg;
        for v in 0..vars.len() {
            let e: u32 = rng.gen_range(0..=budget);
            budget -= e;
            for _ in 0..e {
                term = term
                    .checked_mul(&Polynomial::variable(vars, v).unwrap())
                    .unwrap();
            }
        }
        acc = acc.checked_add(&term).unwrap();
    }
    acc
}
