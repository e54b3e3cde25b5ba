//! The symmetrized polynomial identity with its Vandermonde denominator
//! cleared, checked exactly and by random evaluation in a prime field.
//!
//! For `n = m + 1` variables the cleared left-hand side is
//!
//! ```text
//!   Σ_{σ∈S_n} sign(σ) σ.( Σ_{r=0}^{n} [n over r] Π_{i≤r}(w - q^m z_i) Π_{i>r}(z_i - q^m w)
//!                          · Π_{i<j}(z_i - q^2 z_j) )
//! ```
//!
//! which must be the zero polynomial.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::laurent::{symmetrize, symmetrize_by_enumeration, LaurentPoly, Permutation, VarId};
use crate::modp;
use crate::qnum::{q_binomial_row, QScalar};
use crate::report::VerifyReport;

pub const IDENTITY_TAG: &str = "combinatorial";

/// One instance of the identity: `m` fixes the variables `q, w, z_1..z_{m+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdentityInstance {
    m: u32,
}

impl IdentityInstance {
    pub fn new(m: u32) -> Self {
        IdentityInstance { m }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of z-variables.
    pub fn n(&self) -> usize {
        self.m as usize + 1
    }

    /// Number of `(σ, r)` summands, `(m+1)! (m+2)`.
    pub fn summand_count(&self) -> u64 {
        (1..=self.n() as u64).product::<u64>() * (self.n() as u64 + 1)
    }

    /// Bound on the total degree of the cleared left-hand side after
    /// multiplying through by the lowest power of `q` needed to make it a polynomial.
    pub fn degree_bound(&self) -> u64 {
        let m = self.m as u64;
        let n = m + 1;
        n + m * n / 2 + 2 * (n * n / 4) + 2 * m * n
    }
}

fn z(i: usize) -> VarId {
    VarId::Z(i)
}

/// `Π_{i<j≤n}(z_i - q^2 z_j)`.
pub fn pair_product(n: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::one(n);
    for i in 1..=n {
        for j in i + 1..=n {
            let f = LaurentPoly::binomial(n, 1, &[(z(i), 1)], -1, &[(VarId::Q, 2), (z(j), 1)])
                .expect("indices in range");
            acc = &acc * &f;
        }
    }
    acc
}

/// `Π_{i<j≤n}(z_i - z_j)`.
pub fn vandermonde(n: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::one(n);
    for i in 1..=n {
        for j in i + 1..=n {
            let f = LaurentPoly::binomial(n, 1, &[(z(i), 1)], -1, &[(z(j), 1)])
                .expect("indices in range");
            acc = &acc * &f;
        }
    }
    acc
}

/// `Π_{i≤r}(w - q^m z_i) Π_{r<i≤m+1}(z_i - q^m w)`.
fn linear_factors(m: u32, r: usize) -> LaurentPoly {
    let n = m as usize + 1;
    let qm = m as i32;
    let mut acc = LaurentPoly::one(n);
    for i in 1..=n {
        let f = if i <= r {
            LaurentPoly::binomial(n, 1, &[(VarId::W, 1)], -1, &[(VarId::Q, qm), (z(i), 1)])
        } else {
            LaurentPoly::binomial(n, 1, &[(z(i), 1)], -1, &[(VarId::Q, qm), (VarId::W, 1)])
        }
        .expect("indices in range");
        acc = &acc * &f;
    }
    acc
}

/// The `r`-th summand with the denominator cleared:
/// `[m+1 over r] Π_{i≤r}(w - q^m z_i) Π_{i>r}(z_i - q^m w) Π_{i<j}(z_i - q^2 z_j)`.
pub fn build_summand(m: u32, r: i64) -> Result<LaurentPoly> {
    let n = m as usize + 1;
    if r < 0 || r > n as i64 {
        return Err(Error::Argument(format!("r = {r} outside 0..={n}")));
    }
    let coeff = crate::qnum::q_binomial(n as u32, r);
    Ok(summand_with(m, r as usize, &coeff, &pair_product(n)))
}

fn summand_with(m: u32, r: usize, coeff: &QScalar, pairs: &LaurentPoly) -> LaurentPoly {
    let n = m as usize + 1;
    let lin = &coeff.to_poly(n) * &linear_factors(m, r);
    &lin * pairs
}

/// `Σ_r c_r Π_{i≤r}(...) Π_{i>r}(...) Π_{i<j}(z_i - q^2 z_j)` before symmetrization.
pub fn unsymmetrized_sum(m: u32, coeffs: &[QScalar]) -> Result<LaurentPoly> {
    let n = m as usize + 1;
    if coeffs.len() != n + 1 {
        return Err(Error::Argument(format!(
            "expected {} coefficients, got {}",
            n + 1,
            coeffs.len()
        )));
    }
    let mut lin = LaurentPoly::zero(n);
    for (r, c) in coeffs.iter().enumerate() {
        lin.add_assign_ref(&(&c.to_poly(n) * &linear_factors(m, r)))?;
    }
    Ok(&lin * &pair_product(n))
}

/// The cleared left-hand side with the q-binomials replaced by `coeffs`
/// (used for mutation checks).
pub fn build_lhs_cleared_with(m: u32, coeffs: &[QScalar]) -> Result<LaurentPoly> {
    let p = unsymmetrized_sum(m, coeffs)?;
    symmetrize(&p, m as usize + 1, true)
}

/// Signed symmetrization of the summed summands; equals (LHS) · Π_{i<j}(z_i - z_j).
pub fn build_lhs_cleared(m: u32) -> LaurentPoly {
    build_lhs_cleared_with(m, &q_binomial_row(m + 1)).expect("coefficient row has m+2 entries")
}

/// Same polynomial as [`build_lhs_cleared`], applying every permutation explicitly.
pub fn build_lhs_cleared_by_enumeration(m: u32) -> LaurentPoly {
    let p = unsymmetrized_sum(m, &q_binomial_row(m + 1)).expect("coefficient row has m+2 entries");
    symmetrize_by_enumeration(&p, m as usize + 1, true).expect("n >= 1")
}

/// Exact zero test of the cleared identity.
pub fn verify_identity(m: u32) -> VerifyReport {
    let start = Instant::now();
    let inst = IdentityInstance::new(m);
    let p = unsymmetrized_sum(m, &q_binomial_row(m + 1)).expect("coefficient row has m+2 entries");
    let term_count = p.len();
    let lhs = symmetrize(&p, inst.n(), true).expect("n >= 1");
    let mut report = VerifyReport::new(IDENTITY_TAG, m, "exact");
    report.summand_count = inst.summand_count();
    report.term_count = Some(term_count);
    report.set_residual(residual_strings(&lhs));
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

/// Canonically ordered `<coef> <monomial>` strings of a residual polynomial.
pub fn residual_strings(p: &LaurentPoly) -> Vec<String> {
    p.sorted_terms()
        .into_iter()
        .map(|(e, c)| {
            let mut s = c.to_string();
            for (v, x) in e.pairs() {
                s.push_str(&format!(" {v}^{x}"));
            }
            s
        })
        .collect()
}

/// The `m + 2` coefficients of `w^0, ..., w^{m+1}` in the cleared left-hand side.
pub fn w_coefficient_identities(m: u32) -> Vec<LaurentPoly> {
    let lhs = build_lhs_cleared(m);
    (0..=m as i32 + 1)
        .map(|e| lhs.coeff_of_power(VarId::W, e).expect("w exists"))
        .collect()
}

/// Random-evaluation zero test in `GF(p)`, one evaluation per trial.
pub fn verify_identity_modp(m: u32, trials: u32, p: u64, seed: u64) -> Result<VerifyReport> {
    verify_identity_modp_with(m, &q_binomial_row(m + 1), trials, p, seed)
}

/// [`verify_identity_modp`] with the q-binomials replaced by `coeffs`.
pub fn verify_identity_modp_with(
    m: u32,
    coeffs: &[QScalar],
    trials: u32,
    p: u64,
    seed: u64,
) -> Result<VerifyReport> {
    let start = Instant::now();
    let inst = IdentityInstance::new(m);
    let n = inst.n();
    if trials == 0 {
        return Err(Error::Argument("at least one trial is required".into()));
    }
    if coeffs.len() != n + 1 {
        return Err(Error::Argument(format!("expected {} coefficients", n + 1)));
    }
    if !modp::is_prime(p) {
        return Err(Error::Argument(format!("{p} is not prime")));
    }
    if p <= inst.degree_bound() {
        return Err(Error::Argument(format!(
            "prime {p} does not exceed the degree bound {}",
            inst.degree_bound()
        )));
    }
    let perms = Permutation::all(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut residual = Vec::new();
    for trial in 0..trials {
        let qv = rng.gen_range(1..p);
        let wv = rng.gen_range(1..p);
        let zs: Vec<u64> = (0..n).map(|_| rng.gen_range(1..p)).collect();
        let value = eval_cleared_at(m, coeffs, &perms, qv, wv, &zs, p)?;
        if value != 0 {
            residual.push(format!(
                "trial {trial}: q={qv} w={wv} z={zs:?} value={value}"
            ));
        }
    }
    let mut report = VerifyReport::new(IDENTITY_TAG, m, "modular");
    report.summand_count = inst.summand_count();
    report.prime = Some(p);
    report.trials = Some(trials);
    report.seed = Some(seed);
    report.set_residual(residual);
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Value of the cleared left-hand side at one point, summing every `(σ, r)`
/// product directly in the field.
fn eval_cleared_at(
    m: u32,
    coeffs: &[QScalar],
    perms: &[Permutation],
    qv: u64,
    wv: u64,
    zs: &[u64],
    p: u64,
) -> Result<u64> {
    let n = zs.len();
    let mut asg = BTreeMap::new();
    asg.insert(VarId::Q, qv);
    let coeff_vals: Vec<u64> = coeffs
        .iter()
        .map(|c| c.as_poly().eval_mod_p(&asg, p))
        .collect::<Result<_>>()?;
    let qm = modp::pow_mod(qv, m as u64, p);
    let q2 = modp::mul_mod(qv, qv, p);
    let qm_w = modp::mul_mod(qm, wv, p);
    let chunk = (perms.len() / 64).max(1);
    let total = perms
        .par_chunks(chunk)
        .map(|ps| {
            let mut acc = 0u64;
            let mut x = vec![0u64; n];
            let mut suffix = vec![1u64; n + 1];
            for s in ps {
                // σ.f evaluated at z is f evaluated at z_i <- z_{σ(i)}.
                for (i, xi) in x.iter_mut().enumerate() {
                    *xi = zs[s.images_zero_based()[i]];
                }
                let mut pairs = 1u64;
                for i in 0..n {
                    for j in i + 1..n {
                        let f = modp::sub_mod(x[i], modp::mul_mod(q2, x[j], p), p);
                        pairs = modp::mul_mod(pairs, f, p);
                    }
                }
                suffix[n] = 1;
                for i in (0..n).rev() {
                    suffix[i] = modp::mul_mod(suffix[i + 1], modp::sub_mod(x[i], qm_w, p), p);
                }
                let mut prefix = 1u64;
                let mut inner = 0u64;
                for (r, &c) in coeff_vals.iter().enumerate() {
                    if r > 0 {
                        let f = modp::sub_mod(wv, modp::mul_mod(qm, x[r - 1], p), p);
                        prefix = modp::mul_mod(prefix, f, p);
                    }
                    let t = modp::mul_mod(c, modp::mul_mod(prefix, suffix[r], p), p);
                    inner = modp::add_mod(inner, t, p);
                }
                let term = modp::mul_mod(pairs, inner, p);
                acc = if s.sign() > 0 {
                    modp::add_mod(acc, term, p)
                } else {
                    modp::sub_mod(acc, term, p)
                };
            }
            acc
        })
        .reduce(|| 0, |a, b| modp::add_mod(a, b, p));
    Ok(total)
}

/// `[n over r] + 1` in position `r`, unchanged elsewhere.
pub fn mutated_row(m: u32, r: usize) -> Vec<QScalar> {
    let mut row = q_binomial_row(m + 1);
    row[r] = &row[r] + &QScalar::constant(BigInt::from(1));
    row
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qnum::q_int;

    fn p(s: &str, nz: usize) -> LaurentPoly {
        LaurentPoly::parse(s, nz).unwrap()
    }

    #[test]
    fn summands_for_small_m() {
        assert_eq!(build_summand(0, 0).unwrap(), p("1 z1^1 + -1 w^1", 1));
        assert_eq!(build_summand(0, 1).unwrap(), p("1 w^1 + -1 z1^1", 1));
        let expected = {
            let a = p("1 w^1 + -1 q^1 z1^1", 2);
            let b = p("1 z2^1 + -1 q^1 w^1", 2);
            let c = p("1 z1^1 + -1 q^2 z2^1", 2);
            &(&(&q_int(2).to_poly(2) * &a) * &b) * &c
        };
        assert_eq!(build_summand(1, 1).unwrap(), expected);
        assert!(build_summand(1, 3).is_err());
        assert!(build_summand(1, -1).is_err());
    }

    #[test]
    fn cleared_lhs_vanishes_for_m0_m1() {
        assert!(build_lhs_cleared(0).is_zero());
        assert!(build_lhs_cleared(1).is_zero());
    }

    #[test]
    fn mutated_coefficient_survives() {
        let mut row = q_binomial_row(2);
        row[1] = &row[1] + &QScalar::one();
        assert!(!build_lhs_cleared_with(1, &row).unwrap().is_zero());
    }

    #[test]
    fn single_summand_w2_coefficient_is_nonzero() {
        let s = build_summand(1, 0).unwrap();
        assert!(!s.coeff_of_power(VarId::W, 2).unwrap().is_zero());
    }

    #[test]
    fn modular_rejects_small_primes() {
        assert!(verify_identity_modp(3, 1, 7, 0).is_err());
        assert!(verify_identity_modp(3, 1, 100, 0).is_err());
        assert!(verify_identity_modp(3, 0, modp::MERSENNE_61, 0).is_err());
    }

    #[test]
    fn modular_matches_exact_evaluation() {
        // The field evaluation of the mutated polynomial equals eval_mod_p of
        // the symbolic polynomial at the same point.
        let m = 1;
        let row = mutated_row(m, 1);
        let poly = build_lhs_cleared_with(m, &row).unwrap();
        let pr = 1_000_003u64;
        let perms = Permutation::all(2);
        let (qv, wv, zs) = (5u64, 7u64, vec![11u64, 13]);
        let fast = eval_cleared_at(m, &row, &perms, qv, wv, &zs, pr).unwrap();
        let mut asg = BTreeMap::new();
        asg.insert(VarId::Q, qv);
        asg.insert(VarId::W, wv);
        asg.insert(VarId::Z(1), zs[0]);
        asg.insert(VarId::Z(2), zs[1]);
        assert_eq!(fast, poly.eval_mod_p(&asg, pr).unwrap());
        assert_ne!(fast, 0);
    }
}
