//! Cross-module invariants that only make sense end to end: chosen-factor
//! independence of residues, modular powering against naive products, degree
//! bookkeeping in factorizations, and randomized consistency properties.

use frobenian::corpus::corpus;
use frobenian::exact_arith::{
    factor_mod_p, factor_over_q, matrix_pow_mod, primes_up_to, rat_from_i64, rat_mod_p, PolyFp,
    PolyQ, Rat,
};
use frobenian::recurrence::Recurrence;
use frobenian::Error;
use proptest::prelude::*;

/// Residues of a class function at Frobenius must not depend on which
/// irreducible factor of the minimal polynomial represents the residue field.
#[test]
fn residues_independent_of_chosen_factor() {
    for e in corpus() {
        let spectral = e.recurrence.spectral_data().unwrap();
        let g = spectral.class_function().unwrap();
        let mut used = 0;
        for p in primes_up_to(500) {
            if used >= 20 {
                break;
            }
            let datas = match spectral.group.local_data_all_factors(p) {
                Ok(d) => d,
                Err(Error::Ramified(_)) | Err(Error::BadPrime { .. }) => continue,
                Err(err) => panic!("{}: {}", e.name, err),
            };
            let values: Vec<_> = datas
                .iter()
                .map(|d| g.eval_at_frobenius_with(d))
                .collect();
            let first = match &values[0] {
                Ok(v) => *v,
                Err(_) => continue,
            };
            for v in &values {
                assert_eq!(
                    *v.as_ref().unwrap(),
                    first,
                    "{}: residue depends on the factor at p = {}",
                    e.name,
                    p
                );
            }
            used += 1;
        }
        assert!(used >= 10, "{}: too few usable primes", e.name);
    }
}

/// Modular matrix powers agree with naive repeated multiplication.
#[test]
fn matrix_powers_match_naive_products() {
    let fib = Recurrence::from_i64(&[1, 1], &[0, 1]).unwrap();
    let m = fib.companion_matrix();
    let tri = Recurrence::from_i64(&[1, 1, 1], &[0, 0, 1]).unwrap();
    let m3 = tri.companion_matrix();
    for mat in [&m, &m3] {
        for p in [3u64, 101, 9973] {
            let reduced = matrix_pow_mod(mat, 1, p).unwrap();
            let mut naive = matrix_pow_mod(mat, 0, p).unwrap();
            for n in 0..=64u64 {
                assert_eq!(matrix_pow_mod(mat, n, p).unwrap(), naive, "n = {}", n);
                naive = naive.mul(&reduced);
            }
        }
    }
}

/// Factor multiplicities weighted by degree sum to the degree of the input,
/// over Q and over F_p.
#[test]
fn factor_degrees_sum_to_input_degree() {
    let polys = [
        PolyQ::from_i64(&[-1, 0, 0, 0, 0, 0, 1]),
        PolyQ::from_i64(&[2, 0, 3, 0, 1]),
        PolyQ::from_i64(&[0, 0, 1, 2, 1]),
        PolyQ::from_i64(&[-6, 11, -6, 1]),
    ];
    for f in &polys {
        let total: usize = factor_over_q(f)
            .unwrap()
            .iter()
            .map(|(g, m)| g.degree() * m)
            .sum();
        assert_eq!(total, f.degree());
        for p in [2u64, 5, 13, 101] {
            let fbar = PolyFp::from_int_coeffs(
                p,
                &f.coeffs()
                    .iter()
                    .map(|c| c.numer().clone())
                    .collect::<Vec<_>>(),
            )
            .unwrap();
            if fbar.is_zero() || fbar.is_constant() {
                continue;
            }
            let total: usize = factor_mod_p(&fbar)
                .unwrap()
                .iter()
                .map(|(g, m)| g.degree() * m)
                .sum();
            assert_eq!(total, fbar.degree(), "p = {}", p);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Modular term evaluation agrees with exact evaluation reduced mod p.
    #[test]
    fn term_mod_p_matches_exact_terms(
        coeffs in proptest::collection::vec(-6i64..=6, 1..=3),
        init in proptest::collection::vec(-6i64..=6, 3),
        n in 0u64..40,
        pidx in 0usize..5,
    ) {
        let p = [3u64, 5, 7, 101, 9973][pidx];
        prop_assume!(*coeffs.last().unwrap() != 0);
        let k = coeffs.len();
        let r = Recurrence::from_i64(&coeffs, &init[..k]).unwrap();
        let exact = r.term_at(n as i64);
        let reduced = rat_mod_p(&exact, p);
        prop_assume!(reduced.is_ok());
        prop_assert_eq!(r.term_mod_p(n, p).unwrap(), reduced.unwrap());
    }

    /// Factoring over Q reconstructs the polynomial as the product of its
    /// factors with multiplicity, up to the leading coefficient.
    #[test]
    fn rational_factorizations_multiply_back(
        coeffs in proptest::collection::vec(-5i64..=5, 2..=6),
    ) {
        let f = PolyQ::from_i64(&coeffs);
        prop_assume!(!f.is_zero() && !f.is_constant());
        let factors = factor_over_q(&f).unwrap();
        let mut product = PolyQ::from_i64(&[1]);
        for (g, m) in &factors {
            for _ in 0..*m {
                product = product.mul(g);
            }
        }
        let lead = f.coeff(f.degree()) / product.coeff(product.degree());
        let scaled = product.scale(&lead);
        prop_assert_eq!(scaled, f);
    }
}

/// Small sanity glue: the proptest reductions above use i64 coefficients, so
/// spot-check one rational case by hand.
#[test]
fn rational_coefficients_round_through_terms() {
    let r = Recurrence::new(
        vec![Rat::new(1.into(), 2.into()), Rat::new(1.into(), 2.into())],
        vec![rat_from_i64(0), rat_from_i64(1)],
    )
    .unwrap();
    assert_eq!(r.term_at(3), Rat::new(3.into(), 4.into()));
    assert_eq!(r.term_mod_p(3, 5).unwrap(), 3 * 4 % 5);
}
