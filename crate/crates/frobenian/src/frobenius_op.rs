//! The p-power map on 𝒪_L/p as an explicit matrix over F_p, its entry
//! sequences across primes, trace-form class functions, and the two-way span
//! check relating matrix entries to class function residues.

use crate::class_function::ClassFunction;
use crate::exact_arith::{rat_mod_p, MatQ, PolyFp, Rat};
use crate::number_field::galois::GaloisGroup;
use crate::number_field::{NFElement, NumberField};
use crate::{Error, Result};
use num::Zero;
use serde::Serialize;
use std::sync::Arc;

/// Matrix of x ↦ x^p on F_p[x]/(min_poly mod p) in the power basis
/// 1, θ, ..., θ^{n-1}; invertible exactly when p is unramified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusMatrix {
    p: u64,
    n: usize,
    /// row-major n×n entries over F_p; column j holds θ^{jp}
    entries: Vec<u64>,
}

impl FrobeniusMatrix {
    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    /// Image of an element given by its coordinate vector mod p.
    pub fn apply_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                let mut acc = 0u128;
                for j in 0..self.n {
                    acc += self.entry(i, j) as u128 * v[j] as u128;
                }
                (acc % self.p as u128) as u64
            })
            .collect()
    }

    /// Multiplicative order as an invertible map, or None if singular.
    pub fn order(&self) -> Option<usize> {
        let id: Vec<u64> = {
            let mut e = vec![0u64; self.n * self.n];
            for i in 0..self.n {
                e[i * self.n + i] = 1;
            }
            e
        };
        let mut cur = self.clone();
        for k in 1..=64 {
            if cur.entries == id {
                return Some(k);
            }
            cur = self.compose(&cur);
        }
        None
    }

    fn compose(&self, other: &Self) -> Self {
        let mut entries = vec![0u64; self.n * self.n];
        for i in 0..self.n {
            for l in 0..self.n {
                let a = self.entry(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..self.n {
                    let t = &mut entries[i * self.n + j];
                    *t = ((*t as u128 + a as u128 * other.entry(l, j) as u128)
                        % self.p as u128) as u64;
                }
            }
        }
        FrobeniusMatrix {
            p: self.p,
            n: self.n,
            entries,
        }
    }
}

/// The Frobenius matrix of a field at p: column j is θ^{jp} reduced mod
/// (p, min_poly), computed by binary powering.
pub fn frobenius_matrix(field: &Arc<NumberField>, p: u64) -> Result<FrobeniusMatrix> {
    if !crate::exact_arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let n = field.degree();
    let mbar = PolyFp::from_int_coeffs(p, field.min_poly_int())?;
    let theta_p = PolyFp::x_pow_p_mod(&mbar);
    let mut entries = vec![0u64; n * n];
    let mut col = PolyFp::one(p);
    for j in 0..n {
        for i in 0..n {
            entries[i * n + j] = col.coeff(i);
        }
        if j + 1 < n {
            col = col.mul(&theta_p).rem(&mbar);
        }
    }
    Ok(FrobeniusMatrix { p, n, entries })
}

/// The (i,j) entry of the Frobenius matrix at each listed prime: one
/// representative of an element of the big residue ring.
pub fn entry_sequence(
    field: &Arc<NumberField>,
    i: usize,
    j: usize,
    primes: &[u64],
) -> Result<Vec<u64>> {
    let n = field.degree();
    if i >= n || j >= n {
        return Err(Error::Input(format!(
            "entry ({}, {}) out of range for a degree-{} field",
            i, j, n
        )));
    }
    primes
        .iter()
        .map(|&p| Ok(frobenius_matrix(field, p)?.entry(i, j)))
        .collect()
}

/// The class function σ ↦ Σ_τ τ(x)·(στ)(y), the image of the symmetrized
/// tensor x⊗y under the trace-form correspondence. Its value at a Frobenius
/// element reduces to Tr(x·y^p) mod p.
pub fn trace_form_class_function(
    group: &Arc<GaloisGroup>,
    x: &NFElement,
    y: &NFElement,
) -> Result<ClassFunction> {
    let ord = group.order();
    let mut values = Vec::with_capacity(group.class_count());
    for cid in 0..group.class_count() {
        let rep = group.class_rep(cid);
        let mut acc = group.field().zero();
        for tau in 0..ord {
            let tx = group.apply(tau, x);
            let sty = group.apply(group.compose(rep, tau), y);
            acc = acc.add(&tx.mul(&sty));
        }
        values.push(acc);
    }
    ClassFunction::new(group, values)
}

/// Dual basis of 1, θ, ..., θ^{n-1} under the trace form, via the inverse of
/// the Gram matrix Tr(θ^{i+j}).
pub fn trace_dual_basis(field: &Arc<NumberField>) -> Result<Vec<NFElement>> {
    let n = field.degree();
    let sums = field.power_sums(2 * n - 2);
    let mut gram = MatQ::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            *gram.at_mut(i, j) = sums[i + j].clone();
        }
    }
    let inv = gram.inverse()?;
    Ok((0..n)
        .map(|l| {
            let coords: Vec<Rat> = (0..n).map(|m| inv.at(l, m).clone()).collect();
            field.element(coords)
        })
        .collect())
}

/// Outcome of the two-way span verification over a list of primes.
#[derive(Clone, Debug, Serialize)]
pub struct SpanReport {
    pub primes_requested: usize,
    pub good_primes: usize,
    pub skipped: Vec<u64>,
    pub forward_checked: usize,
    pub converse_checked: usize,
}

/// Verify both inclusions of the span correspondence, prime by prime:
/// forward, the residues of g at Frobenius equal a fixed rational combination
/// of Frobenius-matrix entries; converse, every matrix entry sequence equals
/// the residues of the trace-form class function built from the dual basis.
/// Any disagreement at an unramified good prime is an invariant violation.
pub fn span_check(g: &ClassFunction, primes: &[u64]) -> Result<SpanReport> {
    let group = g.group();
    let field = group.field();
    let n = field.degree();

    // forward: coefficient tensor c with g(φ_p) = Σ c[l][j]·F[l][j] mod p,
    // from the Γ-stable pairs g(σ) = Σ_i b_i σ(λ_i)
    let pairs = g.invariant_pairs()?;
    let mut coeff = vec![vec![Rat::zero(); n]; n];
    let mut mult_mats = Vec::new();
    for (b, lam) in &pairs {
        mult_mats.push((b.mult_matrix(), lam.coords().to_vec()));
    }
    for (bm, lam_coords) in &mult_mats {
        for l in 0..n {
            for j in 0..n {
                coeff[l][j] += &bm[l] * &lam_coords[j];
            }
        }
    }

    // converse: trace-form class functions for every entry
    let duals = trace_dual_basis(field)?;
    let theta = field.theta();
    let mut entry_cfs = Vec::with_capacity(n * n);
    for d in duals.iter().take(n) {
        let mut theta_j = field.one();
        for _ in 0..n {
            entry_cfs.push(trace_form_class_function(group, d, &theta_j)?);
            theta_j = theta_j.mul(&theta);
        }
    }

    let mut good = 0usize;
    let mut skipped = Vec::new();
    let mut forward_checked = 0usize;
    let mut converse_checked = 0usize;
    for &p in primes {
        let data = group.prime_local_data(p)?;
        if data.ramified
            || !prime_clears_denominators(p, g, &coeff, &duals)
            || !pairs_clear(p, &pairs)
            || !entry_cfs_clear(p, &entry_cfs)
        {
            skipped.push(p);
            continue;
        }
        good += 1;
        let fm = frobenius_matrix(field, p)?;

        let expected = g.eval_at_frobenius_with(&data)?;
        let mut predicted = 0u128;
        for l in 0..n {
            for j in 0..n {
                if !coeff[l][j].is_zero() {
                    let c = rat_mod_p(&coeff[l][j], p)?;
                    predicted += c as u128 * fm.entry(l, j) as u128;
                }
            }
        }
        if (predicted % p as u128) as u64 != expected {
            return Err(Error::Invariant(format!(
                "span mismatch at p = {}: entries predict {}, class function gives {}",
                p,
                (predicted % p as u128) as u64,
                expected
            )));
        }
        // the non-constant coordinate rows of Σ_i mult(b_i)·F·λ_i must vanish
        let mut row_sums = vec![0u128; n];
        for (bm, lam_coords) in &mult_mats {
            let v: Result<Vec<u64>> = lam_coords.iter().map(|c| rat_mod_p(c, p)).collect();
            let fv = fm.apply_vec(&v?);
            for (row, sum) in row_sums.iter_mut().enumerate() {
                for l in 0..n {
                    *sum += rat_mod_p(&bm[row * n + l], p)? as u128 * fv[l] as u128;
                }
            }
        }
        if row_sums[1..].iter().any(|s| s % p as u128 != 0) {
            return Err(Error::Invariant(format!(
                "irrational residue in the span expansion at p = {}",
                p
            )));
        }
        forward_checked += 1;

        for l in 0..n {
            for j in 0..n {
                let cf = &entry_cfs[l * n + j];
                if cf.eval_at_frobenius_with(&data)? != fm.entry(l, j) {
                    return Err(Error::Invariant(format!(
                        "entry ({}, {}) disagrees with its trace form at p = {}",
                        l, j, p
                    )));
                }
            }
        }
        converse_checked += 1;
    }
    Ok(SpanReport {
        primes_requested: primes.len(),
        good_primes: good,
        skipped,
        forward_checked,
        converse_checked,
    })
}

/// A prime is good for the span check when it divides no denominator of the
/// involved rational data.
fn prime_clears_denominators(
    p: u64,
    g: &ClassFunction,
    coeff: &[Vec<Rat>],
    duals: &[NFElement],
) -> bool {
    let rat_ok = |r: &Rat| rat_mod_p(r, p).is_ok();
    g.class_values()
        .iter()
        .all(|v| v.coords().iter().all(rat_ok))
        && coeff.iter().all(|row| row.iter().all(rat_ok))
        && duals.iter().all(|d| d.coords().iter().all(rat_ok))
}

/// Whether every coordinate of the Γ-stable pairs reduces mod p.
fn pairs_clear(p: u64, pairs: &[(NFElement, NFElement)]) -> bool {
    pairs.iter().all(|(b, lam)| {
        b.coords()
            .iter()
            .chain(lam.coords())
            .all(|r| rat_mod_p(r, p).is_ok())
    })
}

/// Whether every class value of the per-entry trace forms reduces mod p.
fn entry_cfs_clear(p: u64, cfs: &[ClassFunction]) -> bool {
    cfs.iter().all(|cf| {
        cf.class_values()
            .iter()
            .all(|v| v.coords().iter().all(|r| rat_mod_p(r, p).is_ok()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{legendre, primes_up_to, rat_from_i64, PolyQ};
    use crate::number_field::splitting_field;
    use crate::recurrence::Recurrence;
    use rand::Rng;
    use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

    fn sqrt5_field() -> Arc<NumberField> {
        NumberField::new(&PolyQ::from_i64(&[-5, 0, 1])).unwrap()
    }

    fn flat(m: &FrobeniusMatrix) -> Vec<u64> {
        let n = m.dim();
        (0..n * n).map(|k| m.entry(k / n, k % n)).collect()
    }

    #[test]
    fn frobenius_matrix_of_sqrt5() {
        let k = sqrt5_field();
        assert_eq!(flat(&frobenius_matrix(&k, 11).unwrap()), vec![1, 0, 0, 1]);
        assert_eq!(flat(&frobenius_matrix(&k, 7).unwrap()), vec![1, 0, 0, 6]);
        // ramified prime: singular matrix
        let m5 = frobenius_matrix(&k, 5).unwrap();
        assert_eq!(flat(&m5), vec![1, 0, 0, 0]);
        assert_eq!(m5.order(), None);
    }

    #[test]
    fn entry_sequence_tracks_legendre_symbol() {
        let k = sqrt5_field();
        // odd primes away from 2 and 5 (2 divides the index of Z[√5])
        let primes: Vec<u64> = primes_up_to(200)
            .into_iter()
            .filter(|&p| p != 2 && p != 5)
            .collect();
        let seq = entry_sequence(&k, 1, 1, &primes).unwrap();
        for (&p, &e) in primes.iter().zip(&seq) {
            let expected = match legendre(5, p) {
                1 => 1,
                -1 => p - 1,
                _ => unreachable!("5 is a unit for p != 5"),
            };
            assert_eq!(e, expected, "prime {}", p);
        }
        // first column is always (1, 0, ...)
        let ones = entry_sequence(&k, 0, 0, &primes).unwrap();
        assert!(ones.iter().all(|&e| e == 1));
        let zeros = entry_sequence(&k, 1, 0, &primes).unwrap();
        assert!(zeros.iter().all(|&e| e == 0));
    }

    #[test]
    fn matrix_order_equals_residue_degree() {
        let (field, _) = splitting_field(&PolyQ::from_i64(&[-2, 0, 0, 1])).unwrap();
        let group = GaloisGroup::new(&field).unwrap();
        for p in [5u64, 7, 11, 13, 31] {
            let data = group.prime_local_data(p).unwrap();
            let fm = frobenius_matrix(&field, p).unwrap();
            assert_eq!(fm.order(), Some(data.chosen_factor.degree()));
        }
    }

    #[test]
    fn frobenius_matrix_is_multiplicative() {
        let (field, _) = splitting_field(&PolyQ::from_i64(&[-2, 0, 0, 1])).unwrap();
        let n = field.degree();
        let mbar_of = |p: u64| PolyFp::from_int_coeffs(p, field.min_poly_int()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [7u64, 11, 13] {
            let fm = frobenius_matrix(&field, p).unwrap();
            let mbar = mbar_of(p);
            for _ in 0..50 {
                let u: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
                let v: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
                let prod = PolyFp::new_unchecked(p, u.clone())
                    .mul(&PolyFp::new_unchecked(p, v.clone()))
                    .rem(&mbar);
                let mut prod_coords = vec![0u64; n];
                for (i, c) in prod.coeffs().iter().enumerate() {
                    prod_coords[i] = *c;
                }
                let lhs = fm.apply_vec(&prod_coords);
                let fu = PolyFp::new_unchecked(p, fm.apply_vec(&u));
                let fv = PolyFp::new_unchecked(p, fm.apply_vec(&v));
                let rhs = fu.mul(&fv).rem(&mbar);
                let mut rhs_coords = vec![0u64; n];
                for (i, c) in rhs.coeffs().iter().enumerate() {
                    rhs_coords[i] = *c;
                }
                assert_eq!(lhs, rhs_coords);
            }
        }
    }

    #[test]
    fn trace_form_values_on_sqrt5() {
        let (field, _) = splitting_field(&PolyQ::from_i64(&[-5, 0, 1])).unwrap();
        let group = GaloisGroup::new(&field).unwrap();
        let sqrt5 = field.theta();
        let g = trace_form_class_function(&group, &sqrt5, &sqrt5).unwrap();
        let vals: Vec<Rat> = (0..2)
            .map(|i| g.value_at(i).as_rational().unwrap())
            .collect();
        assert_eq!(vals, vec![rat_from_i64(10), rat_from_i64(-10)]);

        let one = field.one();
        let c = trace_form_class_function(&group, &one, &one).unwrap();
        for i in 0..2 {
            assert_eq!(c.value_at(i).as_rational().unwrap(), rat_from_i64(2));
        }
        let z = trace_form_class_function(&group, &field.zero(), &sqrt5).unwrap();
        assert!(z.class_values().iter().all(|v| v.is_zero()));
    }

    #[test]
    fn span_check_fibonacci() {
        let g = Recurrence::from_i64(&[1, 1], &[0, 1])
            .unwrap()
            .spectral_data()
            .unwrap()
            .class_function()
            .unwrap();
        let primes = primes_up_to(300);
        let report = span_check(&g, &primes).unwrap();
        assert!(report.good_primes > 50);
        assert_eq!(report.forward_checked, report.good_primes);
        assert_eq!(report.converse_checked, report.good_primes);
    }

    #[test]
    fn span_check_trivial_field() {
        let r = Recurrence::from_i64(&[2], &[1]).unwrap();
        let g = r.spectral_data().unwrap().class_function().unwrap();
        let report = span_check(&g, &primes_up_to(100)).unwrap();
        assert_eq!(report.good_primes, report.primes_requested);
    }
}
