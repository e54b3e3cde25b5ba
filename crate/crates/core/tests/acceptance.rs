//! Acceptance suite. Each criterion prints one PASS/FAIL line to stderr,
//! outside the test harness capture, and then asserts its outcome.

use std::io::Write;

use num_bigint::BigInt;
use qident::dist::{
    build_dist_rhs, coeff_of_term, delta_property_check, expand_delta, expand_inverse, naive_product, proof_replay,
    reexpand_split, verify_distribution_identity, verify_residue_vanishing, DeltaFactor, DirectedInverse, DistTerm,
    MonomialRef, TermPlan, TruncationSpec,
};
use qident::ident::{build_lhs_cleared, verify_identity, verify_identity_modp, w_coefficient_identities};
use qident::modp::MERSENNE_61;
use qident::qnum::{alternating_sum, q_binomial, q_factorial, q_int};
use qident::{Error, ExponentVector, LaurentPoly, QScalar, VarId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_2024;

fn report(n: u32, name: &str, ok: bool, detail: &str) {
    let status = if ok { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "[{status}] criterion {n:>2}: {name}: {detail}");
    assert!(ok, "criterion {n} ({name}) failed: {detail}");
}

fn spec(m: u32, n: i32, t: u32) -> TruncationSpec {
    TruncationSpec::uniform(m as usize + 1, n, t).unwrap()
}

#[test]
fn c01_exact_identity() {
    let bad: Vec<u32> = (0..=5).filter(|&m| !verify_identity(m).is_zero()).collect();
    report(1, "exact cleared identity, m = 0..5", bad.is_empty(), &format!("nonzero at {bad:?}"));
}

#[test]
fn c02_modular_identity() {
    let bad: Vec<u32> =
        [6, 7].into_iter().filter(|&m| !verify_identity_modp(m, 20, MERSENNE_61, SEED).unwrap().is_zero()).collect();
    report(2, "modular identity, m = 6, 7, 20 trials", bad.is_empty(), &format!("nonzero at {bad:?}"));
}

#[test]
fn c03_w_coefficients() {
    let mut bad = Vec::new();
    for m in 0..=4u32 {
        let parts = w_coefficient_identities(m);
        if parts.len() != m as usize + 2 || parts.iter().any(|p| !p.is_zero()) {
            bad.push(format!("m={m} nonzero"));
        }
        if m <= 3 {
            let n = m as usize + 1;
            let mut sum = LaurentPoly::zero(n);
            for (e, part) in parts.iter().enumerate() {
                let w = LaurentPoly::monomial(n, 1, &[(VarId::W, e as i32)]).unwrap();
                sum = &sum + &(part * &w);
            }
            if sum != build_lhs_cleared(m) {
                bad.push(format!("m={m} reassembly"));
            }
        }
    }
    report(3, "w-coefficient identities and reassembly", bad.is_empty(), &format!("{bad:?}"));
}

#[test]
fn c04_q_combinatorics() {
    let mut bad = Vec::new();
    for n in 0..=12u32 {
        for r in 0..=n {
            let b = q_binomial(n, r as i64);
            if &(&q_factorial(r) * &q_factorial(n - r)) * &b != q_factorial(n) {
                bad.push(format!("division n={n} r={r}"));
            }
            if b.mirror() != b {
                bad.push(format!("palindrome n={n} r={r}"));
            }
            let ordinary = (0..r as u64).fold(BigInt::from(1), |a, i| a * (n as u64 - i) / (i + 1));
            if b.at_one() != ordinary {
                bad.push(format!("q=1 n={n} r={r}"));
            }
        }
        if q_int(n).at_one() != BigInt::from(n) {
            bad.push(format!("[n] at q=1 n={n}"));
        }
    }
    for n in (1..=11).step_by(2) {
        if !alternating_sum(n).is_zero() {
            bad.push(format!("alternating n={n}"));
        }
    }
    let two = alternating_sum(2);
    if two != QScalar::from_coeffs([(0, 2.into()), (1, (-1).into()), (-1, (-1).into())]) {
        bad.push("alternating n=2".into());
    }
    report(4, "q-combinatorics, n ≤ 12", bad.is_empty(), &format!("alternating_sum(2) = {two}; failures {bad:?}"));
}

#[test]
fn c05_delta_property() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let window = TruncationSpec::uniform(1, 8, 8).unwrap();
    let mut bad = 0;
    for _ in 0..50 {
        let lo = rng.gen_range(-4..=0);
        let span = rng.gen_range(0..=4);
        let mut f = LaurentPoly::zero(1);
        for e in lo..=lo + span {
            let c: i64 = rng.gen_range(-9..=9);
            f.add_term(ExponentVector::from_pairs(1, &[(VarId::Z(1), e)]).unwrap(), c.into());
        }
        if !delta_property_check(&f, &window).unwrap() {
            bad += 1;
        }
    }
    report(5, "delta property, 50 random f, N = 8", bad == 0, &format!("{bad} failures"));
}

#[test]
fn c06_split_identity() {
    let window = TruncationSpec::uniform(2, 6, 10).unwrap();
    let r = MonomialRef::new;
    let (w, z1, z2) = (VarId::W, VarId::Z(1), VarId::Z(2));
    let mut bad = Vec::new();
    let mut checked = 0;
    for m in 0..=3i32 {
        let shapes = [
            DirectedInverse::new(r(-m, z1), r(0, w)),
            DirectedInverse::new(r(-m, w), r(0, z2)),
            DirectedInverse::new(r(2, z1), r(0, z2)),
            DirectedInverse::new(r(0, z1), r(-2, z2)),
            DirectedInverse::new(r(-2 * m, z1), r(0, z2)),
            DirectedInverse::new(r(-m, z1), r(-m, z2)),
        ];
        for f in shapes {
            let (flipped, delta) = reexpand_split(&f).unwrap();
            let sum = expand_inverse(&f, &window).unwrap().add(&expand_inverse(&flipped, &window).unwrap());
            checked += 1;
            if !sum.agrees_on(&expand_delta(&delta, &window).unwrap(), &window) {
                bad.push(f.to_string());
            }
        }
    }
    report(6, "split identity, m ≤ 3, N = 6, T = 10", bad.is_empty(), &format!("{checked} shapes, failures {bad:?}"));
}

#[test]
fn c07_distribution_identity() {
    let mut detail = Vec::new();
    let mut ok = true;
    for (m, n) in [(1u32, 6), (2, 5)] {
        let r = verify_distribution_identity(m, &spec(m, n, 8)).unwrap();
        ok &= r.is_zero();
        detail.push(format!(
            "m={m}: {} of {} targets differ, LHS = {}·RHS with {} mismatches",
            r.residual_terms.len(),
            r.targets_checked.unwrap_or(0),
            r.fitted_scalar.as_deref().unwrap_or("?"),
            r.fitted_mismatches.map_or("?".into(), |x| x.to_string()),
        ));
    }
    report(7, "truncated distribution identity, m = 1, 2, T = 8", ok, &detail.join("; "));
}

#[test]
fn c08_m0_diagnostic() {
    let r = verify_distribution_identity(0, &spec(0, 6, 8)).unwrap();
    let fitted = !r.is_zero() && r.fitted_scalar.as_deref() == Some("q^1") && r.fitted_mismatches == Some(0);
    let with = qident::cli::run(["qident", "verify-dist", "--m", "0", "--diagnostic"]);
    let without = qident::cli::run(["qident", "verify-dist", "--m", "0"]);
    report(
        8,
        "m = 0 diagnostic",
        fitted && with == 0 && without != 0,
        &format!("fitted {:?}, exit {with} with --diagnostic, {without} without", r.fitted_scalar),
    );
}

#[test]
fn c09_residue_vanishing() {
    let bad: Vec<u32> = [1, 2].into_iter().filter(|&m| !verify_residue_vanishing(m).unwrap().is_zero()).collect();
    report(9, "residue vanishing, m = 1, 2", bad.is_empty(), &format!("nonzero at {bad:?}"));
}

#[test]
fn c10_proof_replay() {
    let mut ok = true;
    let mut detail = Vec::new();
    for (m, n) in [(1u32, 6), (2, 5)] {
        let out = proof_replay(m, &spec(m, n, 8)).unwrap();
        let (last, steps) = out.stages.split_last().unwrap();
        let steps_ok = steps.iter().all(|s| s.residual.is_empty() && s.split_mismatches.unwrap_or(0) == 0);
        let final_ok = last.residual.is_empty();
        ok &= steps_ok && final_ok && out.reassembly_mismatches == 0;
        detail.push(format!(
            "m={m}: delta-free stages {}, reassembly mismatches {}, final vs RHS {} differing targets (fitted {})",
            if steps_ok { "zero" } else { "nonzero" },
            out.reassembly_mismatches,
            last.residual.len(),
            out.report.fitted_scalar.as_deref().unwrap_or("none"),
        ));
    }
    report(10, "proof replay, m = 1, 2", ok, &detail.join("; "));
}

fn random_ref(rng: &mut ChaCha8Rng, avoid: Option<VarId>) -> MonomialRef {
    loop {
        let v = match rng.gen_range(0..3) {
            0 => VarId::W,
            i => VarId::Z(i),
        };
        if Some(v) != avoid {
            return MonomialRef::new(rng.gen_range(-2..=2), v);
        }
    }
}

fn random_term(rng: &mut ChaCha8Rng) -> DistTerm {
    let mut inverses = Vec::new();
    let mut deltas = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let a = random_ref(rng, None);
        let b = random_ref(rng, Some(a.var));
        if rng.gen_bool(0.4) {
            deltas.push(DeltaFactor::new(a, b));
        } else {
            inverses.push(DirectedInverse::new(a, b));
        }
    }
    let numerator = match rng.gen_range(0..3) {
        0 => LaurentPoly::one(2),
        1 => LaurentPoly::parse("1 z1^1 + -1 q^2 z2^1", 2).unwrap(),
        _ => LaurentPoly::parse("3 q^-1 w^1 + 1 z1^-1", 2).unwrap(),
    };
    DistTerm::new(QScalar::from_coeffs([(0, 1.into()), (1, (-2).into())]), inverses, numerator, deltas)
}

#[test]
fn c11_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut checked, mut divergent, mut bad) = (0, 0, Vec::new());
    while checked < 200 {
        let term = random_term(&mut rng);
        let t = rng.gen_range(0..=12);
        let e = ExponentVector::from_slice(&[0, rng.gen_range(-3..=3), rng.gen_range(-3..=3), rng.gen_range(-3..=3)]);
        match TermPlan::new(&term) {
            Err(Error::Divergent(_)) => {
                divergent += 1;
                continue;
            }
            r => r.unwrap(),
        };
        let naive = naive_product(&term, &TruncationSpec::uniform(2, 30, t).unwrap()).unwrap();
        if coeff_of_term(&term, &e, t).unwrap() != naive.coeff(&e) {
            bad.push(format!("{term} at {e}"));
        }
        checked += 1;
    }
    report(
        11,
        "oracle equivalence, 200 random targets",
        bad.is_empty(),
        &format!("{checked} checked, {divergent} divergent products skipped, failures {bad:?}"),
    );
}

fn all_reports() -> String {
    let mut lines = Vec::new();
    for m in 0..=4 {
        lines.push(verify_identity(m).without_timing().to_json_line());
    }
    lines.push(verify_identity_modp(6, 4, MERSENNE_61, SEED).unwrap().without_timing().to_json_line());
    for (m, n) in [(0u32, 6), (1, 6), (2, 5)] {
        lines.push(verify_distribution_identity(m, &spec(m, n, 8)).unwrap().without_timing().to_json_line());
    }
    for m in [1, 2] {
        lines.push(verify_residue_vanishing(m).unwrap().without_timing().to_json_line());
    }
    for (m, n) in [(1u32, 6), (2, 5)] {
        lines.push(proof_replay(m, &spec(m, n, 8)).unwrap().report.without_timing().to_json_line());
    }
    let rhs: Vec<String> = build_dist_rhs(2).iter().map(|t| t.to_string()).collect();
    lines.push(rhs.join(" + "));
    lines.join("\n")
}

#[test]
fn c12_determinism() {
    let outputs: Vec<(usize, String)> = [1, 2, 8]
        .into_iter()
        .map(|threads| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            (threads, pool.install(all_reports))
        })
        .collect();
    let differing: Vec<usize> = outputs.iter().filter(|(_, o)| *o != outputs[0].1).map(|(t, _)| *t).collect();
    report(
        12,
        "byte-identical reports at 1, 2, 8 threads",
        differing.is_empty(),
        &format!("{} bytes per run, differing thread counts {differing:?}", outputs[0].1.len()),
    );
}
