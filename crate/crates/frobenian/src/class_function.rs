//! Conjugation-equivariant class functions on a Galois group, evaluation at
//! Frobenius elements, annihilating polynomials, and the inverse passage back
//! to a linear recurrence.

use crate::exact_arith::{rat_mod_p, PolyFp, PolyQ, Rat};
use crate::number_field::galois::GaloisGroup;
use crate::number_field::NFElement;
use crate::recurrence::{Recurrence, SpectralData};
use crate::{Error, Result};
use num::{One, Zero};
use std::sync::Arc;

/// A function g on the Galois group satisfying g(στσ⁻¹) = σ(g(τ)), stored by
/// its values at the conjugacy class representatives.
#[derive(Clone)]
pub struct ClassFunction {
    group: Arc<GaloisGroup>,
    values: Vec<NFElement>,
}

impl ClassFunction {
    /// Build from one value per conjugacy class. Each value must be fixed by
    /// the centralizer of its class representative, otherwise no equivariant
    /// extension exists.
    pub fn new(group: &Arc<GaloisGroup>, values: Vec<NFElement>) -> Result<Self> {
        if values.len() != group.class_count() {
            return Err(Error::Input(format!(
                "expected {} class values, got {}",
                group.class_count(),
                values.len()
            )));
        }
        for (cid, v) in values.iter().enumerate() {
            if !v.field().same(group.field()) {
                return Err(Error::FieldMismatch);
            }
            for &w in group.centralizer_of_rep(cid) {
                if group.apply(w, v) != *v {
                    return Err(Error::Input(format!(
                        "value at class {} is not fixed by the centralizer",
                        cid
                    )));
                }
            }
        }
        Ok(ClassFunction {
            group: Arc::clone(group),
            values,
        })
    }

    /// The constant function with a rational value.
    pub fn constant(group: &Arc<GaloisGroup>, c: Rat) -> Self {
        let v = group.field().from_rat(c);
        ClassFunction {
            group: Arc::clone(group),
            values: vec![v; group.class_count()],
        }
    }

    pub fn group(&self) -> &Arc<GaloisGroup> {
        &self.group
    }

    pub fn class_values(&self) -> &[NFElement] {
        &self.values
    }

    /// Value at an arbitrary group element, via a conjugating witness.
    pub fn value_at(&self, i: usize) -> NFElement {
        let cid = self.group.class_of(i);
        let w = self.group.conjugating_witness(i);
        self.group.apply(w, &self.values[cid])
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group)
            || (self.group.field().same(other.group.field())
                && self.group.order() == other.group.order())
        {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn cf_add(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        Ok(ClassFunction {
            group: Arc::clone(&self.group),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn cf_mul(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        Ok(ClassFunction {
            group: Arc::clone(&self.group),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.mul(b))
                .collect(),
        })
    }

    pub fn cf_eq(&self, other: &Self) -> bool {
        self.same_group(other).is_ok() && self.values == other.values
    }

    /// Reduce the value at the Frobenius element of p into F_p. Fails with
    /// `Ramified` at ramified primes and `BadPrime` when p divides a
    /// denominator of the stored data.
    pub fn eval_at_frobenius(&self, p: u64) -> Result<u64> {
        let data = self.group.prime_local_data(p)?;
        self.eval_at_frobenius_with(&data)
    }

    /// Same as `eval_at_frobenius`, reusing precomputed local data so sweeps
    /// can factor the minimal polynomial once per prime.
    pub fn eval_at_frobenius_with(
        &self,
        data: &crate::number_field::galois::PrimeLocalData,
    ) -> Result<u64> {
        let p = data.p;
        let frob = data.frobenius.ok_or(Error::Ramified(p))?;
        let v = self.value_at(frob);
        let mut coeffs = Vec::with_capacity(v.coords().len());
        for c in v.coords() {
            coeffs.push(rat_mod_p(c, p)?);
        }
        let reduced = PolyFp::new_unchecked(p, coeffs).rem(&data.chosen_factor);
        if !reduced.is_zero() && !reduced.is_constant() {
            return Err(Error::Invariant(format!(
                "Frobenius value at p = {} does not land in the prime field",
                p
            )));
        }
        Ok(reduced.coeff(0))
    }

    /// Monic polynomial of least degree vanishing on every value of g.
    pub fn annihilator(&self) -> PolyQ {
        let mut acc = PolyQ::one();
        for v in &self.values {
            let m = v.minimal_polynomial();
            let g = acc.gcd(&m);
            acc = acc.mul(&m.divrem(&g).0).monic();
        }
        acc
    }

    /// Express g(σ) = Σ_τ b_τ · σ(τ(θ₀)) over a normal basis {τ(θ₀)}. The
    /// resulting pair set {(b_τ, τ(θ₀))} is stable under the Galois action.
    pub fn invariant_pairs(&self) -> Result<Vec<(NFElement, NFElement)>> {
        let ord = self.group.order();
        let (_, images) = self.group.normal_basis_generator()?;
        // rows: one equation per group element sigma
        let rows: Vec<Vec<NFElement>> = (0..ord)
            .map(|s| images.iter().map(|t| self.group.apply(s, t)).collect())
            .collect();
        let rhs: Vec<NFElement> = (0..ord).map(|s| self.value_at(s)).collect();
        let sol = solve_field_system(rows, rhs)?;
        let pairs: Vec<(NFElement, NFElement)> = sol
            .into_iter()
            .zip(images)
            .filter(|(b, _)| !b.is_zero())
            .collect();
        // stability under every automorphism (uniqueness of the solution
        // makes this automatic; check anyway)
        for a in 0..ord {
            for (b, lam) in &pairs {
                let ib = self.group.apply(a, b);
                let il = self.group.apply(a, lam);
                if !pairs.iter().any(|(b2, l2)| *b2 == ib && *l2 == il) {
                    return Err(Error::Invariant(
                        "normal basis pairs are not stable under the Galois action".into(),
                    ));
                }
            }
        }
        Ok(pairs)
    }

    /// Reconstruct a recurrence whose terms at primes reduce to the values of
    /// g at Frobenius: characteristic polynomial the minimal polynomial of a
    /// normal basis generator, initial terms Σ b_τ (τθ₀)^n.
    pub fn to_recurrence(&self) -> Result<Recurrence> {
        let (theta0, _) = self.group.normal_basis_generator()?;
        let pairs = self.invariant_pairs()?;
        let chi = theta0.minimal_polynomial();
        let k = chi.degree();
        let mut coeffs = Vec::with_capacity(k);
        for i in 1..=k {
            coeffs.push(-chi.coeff(k - i));
        }
        let mut init = Vec::with_capacity(k);
        for n in 0..k {
            let mut acc = self.group.field().zero();
            for (b, lam) in &pairs {
                acc = acc.add(&b.mul(&lam.pow(n)));
            }
            let r = acc.as_rational().ok_or_else(|| {
                Error::Invariant("reconstructed initial term is irrational".into())
            })?;
            init.push(r);
        }
        Recurrence::new(coeffs, init)
    }
}

impl SpectralData {
    /// The class function g(σ) = Σ_i b_i · σ(λ_i) attached to the spectral
    /// pairs of a recurrence.
    pub fn class_function(&self) -> Result<ClassFunction> {
        let mut values = Vec::with_capacity(self.group.class_count());
        for cid in 0..self.group.class_count() {
            let rep = self.group.class_rep(cid);
            let mut acc = self.field.zero();
            for (lam, b) in &self.pairs {
                acc = acc.add(&b.mul(&self.group.apply(rep, lam)));
            }
            values.push(acc);
        }
        ClassFunction::new(&self.group, values)
    }
}

/// A random class function: each class value is a small random rational
/// combination of a basis of the subspace fixed by the centralizer of the
/// class representative.
pub fn random_class_function<R: rand::Rng>(
    group: &Arc<GaloisGroup>,
    rng: &mut R,
) -> Result<ClassFunction> {
    let n = group.field().degree();
    let mut values = Vec::with_capacity(group.class_count());
    for cid in 0..group.class_count() {
        let basis = centralizer_fixed_basis(group, cid);
        let mut coords = vec![Rat::zero(); n];
        for b in &basis {
            let c = crate::exact_arith::rat_from_i64(rng.gen_range(-3i64..=3));
            for (dst, src) in coords.iter_mut().zip(b) {
                *dst += src * &c;
            }
        }
        values.push(group.field().element(coords));
    }
    ClassFunction::new(group, values)
}

/// Basis (as coordinate vectors) of {v : σ(v) = v for all σ in the
/// centralizer of the representative of class `cid`}.
fn centralizer_fixed_basis(group: &Arc<GaloisGroup>, cid: usize) -> Vec<Vec<Rat>> {
    let n = group.field().degree();
    // stack (A_w - I) for every centralizer element and compute the nullspace
    let cent = group.centralizer_of_rep(cid);
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for &w in cent {
        let theta = group.field().theta();
        let mut pow = group.field().one();
        let mut cols: Vec<Vec<Rat>> = Vec::new();
        for _ in 0..n {
            cols.push(group.apply(w, &pow).coords().to_vec());
            pow = pow.mul(&theta);
        }
        for i in 0..n {
            let mut row: Vec<Rat> = (0..n).map(|j| cols[j][i].clone()).collect();
            row[i] -= Rat::one();
            rows.push(row);
        }
    }
    nullspace(rows, n)
}

fn nullspace(mut rows: Vec<Vec<Rat>>, width: usize) -> Vec<Vec<Rat>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for c in 0..width {
        let Some(pr) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let pv = rows[rank][c].clone();
        for j in c..width {
            rows[rank][j] = &rows[rank][j] / &pv;
        }
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..width {
                    let v = &rows[rank][j] * &f;
                    rows[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    let mut basis = Vec::new();
    for free in 0..width {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); width];
        v[free] = Rat::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solve a square linear system with entries in a number field by Gaussian
/// elimination.
fn solve_field_system(
    mut rows: Vec<Vec<NFElement>>,
    mut rhs: Vec<NFElement>,
) -> Result<Vec<NFElement>> {
    let n = rows.len();
    for r in &rows {
        if r.len() != n {
            return Err(Error::Input("system is not square".into()));
        }
    }
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !rows[r][col].is_zero())
            .ok_or(Error::SingularMatrix)?;
        rows.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = rows[col][col].inv()?;
        for j in col..n {
            rows[col][j] = rows[col][j].mul(&inv);
        }
        rhs[col] = rhs[col].mul(&inv);
        for r in 0..n {
            if r == col || rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for j in col..n {
                let v = rows[col][j].mul(&f);
                rows[r][j] = rows[r][j].sub(&v);
            }
            let v = rhs[col].mul(&f);
            rhs[r] = rhs[r].sub(&v);
        }
    }
    Ok(rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat_from_i64;
    use crate::number_field::splitting_field;

    fn fib_class_function() -> ClassFunction {
        Recurrence::from_i64(&[1, 1], &[0, 1])
            .unwrap()
            .spectral_data()
            .unwrap()
            .class_function()
            .unwrap()
    }

    #[test]
    fn fibonacci_class_function_values() {
        let g = fib_class_function();
        assert_eq!(g.group().order(), 2);
        let vals: Vec<Rat> = (0..2)
            .map(|i| g.value_at(i).as_rational().unwrap())
            .collect();
        assert_eq!(vals, vec![rat_from_i64(1), rat_from_i64(-1)]);
        assert_eq!(g.annihilator(), PolyQ::from_i64(&[-1, 0, 1]));
    }

    #[test]
    fn frobenius_values_match_fibonacci_mod_p() {
        let r = Recurrence::from_i64(&[1, 1], &[0, 1]).unwrap();
        let g = fib_class_function();
        // a(p) mod p equals the class function at Frobenius for unramified p
        for p in [3u64, 7, 11, 13, 17, 19, 23, 29] {
            assert_eq!(g.eval_at_frobenius(p).unwrap(), r.term_mod_p(p, p).unwrap());
        }
        assert!(matches!(g.eval_at_frobenius(5), Err(Error::Ramified(5))));
    }

    #[test]
    fn round_trip_through_recurrence() {
        let g = fib_class_function();
        let r = g.to_recurrence().unwrap();
        let g2 = r.spectral_data().unwrap().class_function().unwrap();
        // both describe sequences with the same residues at Frobenius
        for p in [3u64, 7, 11, 13, 17, 19] {
            assert_eq!(
                g.eval_at_frobenius(p).unwrap(),
                g2.eval_at_frobenius(p).unwrap()
            );
            assert_eq!(g.eval_at_frobenius(p).unwrap(), r.term_mod_p(p, p).unwrap());
        }
    }

    #[test]
    fn rational_class_function_on_s3() {
        let (field, _) = splitting_field(&PolyQ::from_i64(&[-2, 0, 0, 1])).unwrap();
        let group = GaloisGroup::new(&field).unwrap();
        let values: Vec<NFElement> = (0..group.class_count())
            .map(|c| field.from_rat(rat_from_i64(c as i64 + 1)))
            .collect();
        let g = ClassFunction::new(&group, values).unwrap();
        // residues select the value on the Frobenius class
        let class_size =
            |p: u64| group.class_members(group.frobenius_class(p).unwrap()).len();
        for p in [5u64, 7, 31] {
            let v = g.eval_at_frobenius(p).unwrap();
            let cid = group.frobenius_class(p).unwrap();
            assert_eq!(v, (cid as u64 + 1) % p);
            let _ = class_size(p);
        }
    }

    #[test]
    fn equivariance_violation_is_rejected() {
        let (field, roots) = splitting_field(&PolyQ::from_i64(&[-2, 0, 0, 1])).unwrap();
        let group = GaloisGroup::new(&field).unwrap();
        // a root of x^3 - 2 is not fixed by the centralizer of every class
        let bad: Vec<NFElement> = (0..group.class_count())
            .map(|_| roots[0].clone())
            .collect();
        assert!(ClassFunction::new(&group, bad).is_err());
    }

    #[test]
    fn pointwise_algebra() {
        let g = fib_class_function();
        let sum = g.cf_add(&g).unwrap();
        let prod = g.cf_mul(&g).unwrap();
        for p in [7u64, 11, 13] {
            let v = g.eval_at_frobenius(p).unwrap();
            assert_eq!(sum.eval_at_frobenius(p).unwrap(), (2 * v) % p);
            assert_eq!(prod.eval_at_frobenius(p).unwrap(), (v * v) % p);
        }
    }
}
