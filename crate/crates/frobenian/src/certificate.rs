//! Frobenian certificates: from a recurrence to the splitting-field
//! description of its zero set {p : a_p ≡ 0 mod p}, with an effective bound
//! separating the finitely many directly-checked primes from the guaranteed
//! range, and the reverse construction from conjugacy data.

use crate::class_function::ClassFunction;
use crate::exact_arith::{
    primes_up_to, rat_str, rat_valuation, trial_factor, Int, PolyQ, Rat,
};
use crate::number_field::galois::GaloisGroup;
use crate::number_field::NumberField;
use crate::recurrence::{jordan_chevalley, Recurrence, SpectralData};
use crate::{Error, Result};
use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Largest bound for which exceptional primes are enumerated one by one.
const ENUMERATION_CAP: u64 = 10_000_000;
/// Trial-division limit when collecting prime contributions to the bound.
const FACTOR_LIMIT: u64 = 1_000_000;

/// Serializable description of the zero set of a recurrence: the splitting
/// field, the conjugacy classes where the class function vanishes, the
/// Chebotarev density, and the exceptional-prime data.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FrobenianCertificate {
    /// integer coefficients of the splitting field generator, constant first
    pub min_poly: Vec<String>,
    pub group_order: usize,
    pub class_sizes: Vec<usize>,
    /// θ-coordinates of the class function at each class representative
    pub class_values: Vec<Vec<String>>,
    /// classes on which the class function vanishes
    pub zero_classes: Vec<usize>,
    /// |zero classes| / |group|, as an exact rational
    pub density: String,
    /// all primes violating the Frobenian description are ≤ this bound
    pub exceptional_bound: String,
    /// primes ≤ the bound that belong to the zero set, checked directly
    pub exceptional_primes: Vec<u64>,
    /// sources of the contributions to the bound
    pub provenance: Vec<String>,
}

/// A certificate together with the exact objects it was computed from.
pub struct Certified {
    pub recurrence: Recurrence,
    pub spectral: SpectralData,
    pub class_function: ClassFunction,
    pub certificate: FrobenianCertificate,
}

/// Result of sweeping a certificate against direct membership tests.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EmpiricalReport {
    pub limit: u64,
    pub primes_checked: usize,
    pub members_found: usize,
    pub mismatches_at_or_below_bound: usize,
    pub empirical_density: String,
    pub certificate_density: String,
}

/// Build the full certificate for a recurrence.
pub fn certify(r: &Recurrence) -> Result<Certified> {
    let spectral = r.spectral_data()?;
    let g = spectral.class_function()?;
    let (bound, provenance) = bad_prime_bound(r, &spectral, &g)?;

    let group = g.group();
    let zero_classes: Vec<usize> = g
        .class_values()
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_zero())
        .map(|(c, _)| c)
        .collect();
    let class_sizes: Vec<usize> = (0..group.class_count())
        .map(|c| group.class_members(c).len())
        .collect();
    let zero_size: usize = zero_classes.iter().map(|&c| class_sizes[c]).sum();
    let density = Rat::new(Int::from(zero_size as u64), Int::from(group.order() as u64));

    let bound_u64 = bound_to_u64(&bound)?;
    let mut exceptional_primes = Vec::new();
    for p in primes_up_to(bound_u64) {
        if term_divisible(r, p)? {
            exceptional_primes.push(p);
        }
    }

    let certificate = FrobenianCertificate {
        min_poly: spectral
            .field
            .min_poly_int()
            .iter()
            .map(|c| c.to_string())
            .collect(),
        group_order: group.order(),
        class_sizes,
        class_values: g
            .class_values()
            .iter()
            .map(|v| v.coords().iter().map(rat_str).collect())
            .collect(),
        zero_classes,
        density: rat_str(&density),
        exceptional_bound: bound.to_string(),
        exceptional_primes,
        provenance,
    };
    Ok(Certified {
        recurrence: r.clone(),
        spectral,
        class_function: g,
        certificate,
    })
}

/// A bound B such that every prime p > B satisfies the certified equivalence
/// (a_p ≡ 0 mod p) ⟺ (Frobenius class of p lies in the zero classes).
///
/// B is the maximum over the explicit hypotheses of the congruence proofs:
/// the order of the recurrence, primes dividing denominators of the matrix
/// data and initial terms, primes dividing the field discriminant, primes
/// dividing denominators of the spectral pairs and class values, and primes
/// dividing the norm of each non-zero class value (so vanishing mod p forces
/// vanishing exactly).
pub fn bad_prime_bound(
    r: &Recurrence,
    spectral: &SpectralData,
    g: &ClassFunction,
) -> Result<(Int, Vec<String>)> {
    let mut contributions: Vec<(Int, String)> = Vec::new();
    contributions.push((
        Int::from(r.order() as u64),
        format!("recurrence order {}", r.order()),
    ));

    let m = r.companion_matrix();
    let (ss, uni) = jordan_chevalley(&m)?;
    push_denominators(&mut contributions, m.entries(), "companion matrix denominator");
    push_denominators(&mut contributions, ss.entries(), "semisimple part denominator");
    push_denominators(&mut contributions, uni.entries(), "unipotent part denominator");
    push_denominators(&mut contributions, r.init(), "initial term denominator");
    push_denominators(&mut contributions, r.coeffs(), "coefficient denominator");

    push_integer(
        &mut contributions,
        spectral.field.disc(),
        "field discriminant factor",
    );

    for (lam, b) in &spectral.pairs {
        push_denominators(&mut contributions, lam.coords(), "eigenvalue denominator");
        push_denominators(&mut contributions, b.coords(), "spectral weight denominator");
    }
    for v in g.class_values() {
        push_denominators(&mut contributions, v.coords(), "class value denominator");
        if !v.is_zero() {
            let norm = spectral
                .field
                .min_poly()
                .resultant(&PolyQ::new(v.coords().to_vec()));
            push_integer(
                &mut contributions,
                norm.numer(),
                "norm of non-zero class value",
            );
        }
    }

    let mut bound = Int::one();
    let mut provenance = Vec::new();
    for (value, source) in contributions {
        if value > bound {
            bound = value.clone();
        }
        provenance.push(format!("{}: {}", source, value));
    }
    provenance.sort();
    provenance.dedup();
    Ok((bound, provenance))
}

fn push_denominators(out: &mut Vec<(Int, String)>, values: &[Rat], source: &str) {
    for v in values {
        if !v.denom().is_one() {
            push_integer(out, v.denom(), source);
        }
    }
}

fn push_integer(out: &mut Vec<(Int, String)>, value: &Int, source: &str) {
    let a = value.abs();
    if a.is_one() || a.is_zero() {
        return;
    }
    let (primes, cofactor) = trial_factor(&a, FACTOR_LIMIT);
    for p in primes {
        out.push((Int::from(p), source.to_string()));
    }
    if let Some(c) = cofactor {
        // unfactored part: all its prime divisors are at most the part itself
        out.push((c, format!("{} (unfactored part)", source)));
    }
}

fn bound_to_u64(bound: &Int) -> Result<u64> {
    let b: u64 = bound
        .try_into()
        .map_err(|_| Error::BudgetExceeded("exceptional bound does not fit in 64 bits".into()))?;
    if b > ENUMERATION_CAP {
        return Err(Error::BudgetExceeded(format!(
            "exceptional bound {} exceeds the enumeration cap {}",
            b, ENUMERATION_CAP
        )));
    }
    Ok(b)
}

/// Whether p divides a_p, by modular arithmetic when p is invertible on the
/// data and by an exact valuation otherwise.
fn term_divisible(r: &Recurrence, p: u64) -> Result<bool> {
    match r.term_mod_p(p, p) {
        Ok(v) => Ok(v == 0),
        Err(Error::BadPrime { .. }) => {
            let a = r.term_at(p as i64);
            Ok(rat_valuation(&a, p) >= 1)
        }
        Err(e) => Err(e),
    }
}

/// A recurrence whose zero set matches the given union of conjugacy classes
/// up to finitely many primes: apply the inverse construction to one minus
/// the characteristic function of the classes.
pub fn from_conjugacy_data(
    field: &Arc<NumberField>,
    classes: &[usize],
) -> Result<Recurrence> {
    let group = GaloisGroup::new(field)?;
    for &c in classes {
        if c >= group.class_count() {
            return Err(Error::Input(format!(
                "class index {} out of range (field has {} classes)",
                c,
                group.class_count()
            )));
        }
    }
    let values = (0..group.class_count())
        .map(|c| {
            let chi = if classes.contains(&c) { 1 } else { 0 };
            field.from_rat(Rat::from_integer(BigInt::from(1 - chi)))
        })
        .collect();
    let g = ClassFunction::new(&group, values)?;
    g.to_recurrence()
}

/// Sweep all primes up to X and compare direct membership in the zero set
/// against the certificate's prediction. A mismatch above the bound is an
/// invariant violation; mismatches at or below the bound cannot occur because
/// those primes were decided directly.
pub fn verify_empirical(cert: &Certified, limit: u64) -> Result<EmpiricalReport> {
    let bound: u64 = bound_to_u64(&cert.certificate.exceptional_bound.parse::<Int>().map_err(
        |_| Error::Input("malformed exceptional bound".into()),
    )?)?;
    let zero_classes = &cert.certificate.zero_classes;
    let group = cert.class_function.group();
    let mut checked = 0usize;
    let mut members = 0usize;
    let mut mismatches_low = 0usize;
    for p in primes_up_to(limit) {
        let actual = term_divisible(&cert.recurrence, p)?;
        checked += 1;
        if actual {
            members += 1;
        }
        let predicted = if p <= bound {
            cert.certificate.exceptional_primes.binary_search(&p).is_ok()
        } else {
            zero_classes.contains(&group.frobenius_class(p)?)
        };
        if predicted != actual {
            if p > bound {
                return Err(Error::Invariant(format!(
                    "membership mismatch at p = {} above the bound {}",
                    p, bound
                )));
            }
            mismatches_low += 1;
        }
    }
    let empirical = if checked == 0 {
        Rat::zero()
    } else {
        Rat::new(Int::from(members as u64), Int::from(checked as u64))
    };
    Ok(EmpiricalReport {
        limit,
        primes_checked: checked,
        members_found: members,
        mismatches_at_or_below_bound: mismatches_low,
        empirical_density: rat_str(&empirical),
        certificate_density: cert.certificate.density.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat_from_i64;

    #[test]
    fn fibonacci_certificate() {
        let r = Recurrence::from_i64(&[1, 1], &[0, 1]).unwrap();
        let cert = certify(&r).unwrap();
        assert!(cert.certificate.zero_classes.is_empty());
        assert_eq!(cert.certificate.density, "0");
        assert_eq!(cert.certificate.exceptional_bound, "5");
        // F_5 = 5 is the only zero at small primes
        assert_eq!(cert.certificate.exceptional_primes, vec![5]);
        let report = verify_empirical(&cert, 2000).unwrap();
        assert_eq!(report.mismatches_at_or_below_bound, 0);
        assert_eq!(report.members_found, 1);
    }

    #[test]
    fn fermat_little_certificate() {
        // a(n) = 2^n - 2 vanishes mod every prime
        let r = Recurrence::from_i64(&[3, -2], &[-1, 0]).unwrap();
        let cert = certify(&r).unwrap();
        assert_eq!(cert.certificate.group_order, 1);
        assert_eq!(cert.certificate.zero_classes, vec![0]);
        assert_eq!(cert.certificate.density, "1");
        let report = verify_empirical(&cert, 1000).unwrap();
        assert_eq!(report.members_found, report.primes_checked);
    }

    #[test]
    fn gaussian_conjugation_class_gives_three_mod_four() {
        let field = NumberField::new(&PolyQ::from_i64(&[1, 0, 1])).unwrap();
        let r = from_conjugacy_data(&field, &[1]).unwrap();
        let cert = certify(&r).unwrap();
        let bound: u64 = cert.certificate.exceptional_bound.parse().unwrap();
        for p in primes_up_to(500) {
            if p <= bound {
                continue;
            }
            let in_zero_set = term_divisible(&r, p).unwrap();
            assert_eq!(in_zero_set, p % 4 == 3, "prime {}", p);
        }
        verify_empirical(&cert, 2000).unwrap();
    }

    #[test]
    fn scaling_preserves_zero_classes() {
        let r = Recurrence::from_i64(&[1, 1], &[0, 1]).unwrap();
        let scaled = Recurrence::new(
            r.coeffs().to_vec(),
            r.init()
                .iter()
                .map(|a| a * Rat::new(Int::from(3), Int::from(7)))
                .collect(),
        )
        .unwrap();
        // the scaled sequence is 3/7 times Fibonacci; F_1 = 1 scales to 3/7
        assert_eq!(
            scaled.term_at(1),
            Rat::new(Int::from(3), Int::from(7))
        );
        let c1 = certify(&r).unwrap();
        let c2 = certify(&scaled).unwrap();
        assert_eq!(
            c1.certificate.zero_classes,
            c2.certificate.zero_classes
        );
        // 7 now appears among the bound contributions
        let b2: u64 = c2.certificate.exceptional_bound.parse().unwrap();
        assert!(b2 >= 7);
    }

    #[test]
    fn certificate_json_round_trips() {
        let r = Recurrence::from_i64(&[1, 1], &[0, 1]).unwrap();
        let cert = certify(&r).unwrap().certificate;
        let s1 = serde_json::to_string_pretty(&cert).unwrap();
        let back: FrobenianCertificate = serde_json::from_str(&s1).unwrap();
        let s2 = serde_json::to_string_pretty(&back).unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn trivial_zero_sequence() {
        let r = Recurrence::new(vec![rat_from_i64(1)], vec![Rat::zero()]).unwrap();
        let cert = certify(&r).unwrap();
        assert_eq!(cert.certificate.density, "1");
        let report = verify_empirical(&cert, 1000).unwrap();
        assert_eq!(report.members_found, report.primes_checked);
    }
}
