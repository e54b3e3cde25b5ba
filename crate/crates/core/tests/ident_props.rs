use std::collections::BTreeMap;

use qident::ident::{
    build_lhs_cleared, build_lhs_cleared_by_enumeration, build_lhs_cleared_with, mutated_row,
    unsymmetrized_sum, vandermonde, verify_identity, verify_identity_modp, w_coefficient_identities,
};
use qident::modp::MERSENNE_61;
use qident::qnum::q_binomial_row;
use qident::{LaurentPoly, Permutation, VarId};

#[test]
fn exact_zero_up_to_four() {
    for m in 0..=4 {
        let r = verify_identity(m);
        assert!(r.is_zero(), "m={m}: {:?}", r.residual_terms);
    }
}

#[test]
fn modular_zero_up_to_five() {
    for m in 0..=5 {
        let r = verify_identity_modp(m, 20, MERSENNE_61, 11).unwrap();
        assert!(r.is_zero(), "m={m}");
    }
}

#[test]
fn w_coefficients_reassemble() {
    for m in 0..=3 {
        let parts = w_coefficient_identities(m);
        assert_eq!(parts.len(), m as usize + 2);
        let n = m as usize + 1;
        let mut sum = LaurentPoly::zero(n);
        for (e, part) in parts.iter().enumerate() {
            assert!(part.is_zero(), "m={m} w^{e}");
            let w = LaurentPoly::monomial(n, 1, &[(VarId::W, e as i32)]).unwrap();
            sum = &sum + &(part * &w);
        }
        assert_eq!(sum, build_lhs_cleared(m));
    }
}

/// Σ_σ σ.(S · V) with the Vandermonde permuted explicitly equals V · (cleared sum).
#[test]
fn antisymmetry_trick_matches_explicit_permutation() {
    for m in 0..=2u32 {
        for row in [q_binomial_row(m + 1), mutated_row(m, 0)] {
            let n = m as usize + 1;
            let summand = unsymmetrized_sum(m, &row).unwrap();
            let v = vandermonde(n);
            let with_v = &summand * &v;
            let mut explicit = LaurentPoly::zero(n);
            for s in Permutation::all(n) {
                explicit = &explicit + &with_v.apply_permutation(&s).unwrap();
            }
            let cleared = build_lhs_cleared_with(m, &row).unwrap();
            assert_eq!(explicit, &v * &cleared, "m={m}");
        }
    }
}

#[test]
fn orbit_and_enumeration_agree() {
    for m in 0..=3 {
        assert_eq!(build_lhs_cleared(m), build_lhs_cleared_by_enumeration(m));
    }
}

#[test]
fn mutated_sums_are_antisymmetric() {
    for m in 1..=3u32 {
        let n = m as usize + 1;
        let p = build_lhs_cleared_with(m, &mutated_row(m, 1)).unwrap();
        assert!(!p.is_zero());
        for i in 1..=n {
            for j in i + 1..=n {
                let t = Permutation::transposition(n, i, j).unwrap();
                assert_eq!(p.apply_permutation(&t).unwrap(), -&p, "m={m} ({i} {j})");
            }
        }
    }
}

#[test]
fn every_single_mutation_is_detected() {
    for m in 1..=2u32 {
        for r in 0..=m as usize + 1 {
            let p = build_lhs_cleared_with(m, &mutated_row(m, r)).unwrap();
            assert!(!p.is_zero(), "m={m} r={r}");
        }
    }
}

#[test]
fn modular_detects_mutation() {
    use qident::ident::verify_identity_modp_with;
    let r = verify_identity_modp_with(2, &mutated_row(2, 1), 5, MERSENNE_61, 3).unwrap();
    assert!(!r.is_zero());
}

#[test]
fn reports_identical_across_thread_counts() {
    let mut seen: BTreeMap<usize, String> = BTreeMap::new();
    for threads in [1, 2, 8] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let (a, b) = pool.install(|| {
            (
                verify_identity(3).without_timing().to_json_line(),
                verify_identity_modp(5, 4, MERSENNE_61, 9).unwrap().without_timing().to_json_line(),
            )
        });
        seen.insert(threads, format!("{a}\n{b}"));
    }
    let first = seen[&1].clone();
    assert!(seen.values().all(|s| *s == first));
}
