//! Linear recurrent sequences over Q: exact and modular terms, the
//! multiplicative Jordan decomposition of the companion matrix, and the
//! spectral data (eigenvalues with weights) living in a splitting field.

use crate::exact_arith::{
    matrix_pow_mod, rat_mod_p, squarefree_part, MatQ, PolyQ, Rat,
};
use crate::number_field::galois::GaloisGroup;
use crate::number_field::{splitting_field, NFElement, NumberField, PolyNF};
use crate::{Error, Result};
use num::{One, Zero};
use std::sync::Arc;

/// A sequence satisfying a(n) = c_1 a(n-1) + ... + c_k a(n-k), determined by
/// the coefficients and the initial terms a(0), ..., a(k-1).
///
/// The trailing coefficient c_k must be non-zero, so the sequence extends
/// uniquely to negative indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    coeffs: Vec<Rat>,
    init: Vec<Rat>,
}

impl Recurrence {
    pub fn new(coeffs: Vec<Rat>, init: Vec<Rat>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Input("recurrence must have order at least 1".into()));
        }
        if coeffs.len() != init.len() {
            return Err(Error::Input(format!(
                "order {} needs {} initial terms, got {}",
                coeffs.len(),
                coeffs.len(),
                init.len()
            )));
        }
        if coeffs.last().unwrap().is_zero() {
            return Err(Error::Input(
                "trailing coefficient is zero; restate the recurrence at lower order".into(),
            ));
        }
        Ok(Recurrence { coeffs, init })
    }

    pub fn from_i64(coeffs: &[i64], init: &[i64]) -> Result<Self> {
        Recurrence::new(
            coeffs.iter().map(|&c| crate::exact_arith::rat_from_i64(c)).collect(),
            init.iter().map(|&a| crate::exact_arith::rat_from_i64(a)).collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn init(&self) -> &[Rat] {
        &self.init
    }

    /// Companion matrix M with a(n) = (M^n · init)[0]: ones on the
    /// superdiagonal and the reversed coefficients in the last row.
    pub fn companion_matrix(&self) -> MatQ {
        let k = self.order();
        let mut m = MatQ::zero(k, k);
        for i in 0..k.saturating_sub(1) {
            *m.at_mut(i, i + 1) = Rat::one();
        }
        for j in 0..k {
            *m.at_mut(k - 1, j) = self.coeffs[k - 1 - j].clone();
        }
        m
    }

    /// Characteristic polynomial x^k - c_1 x^{k-1} - ... - c_k.
    pub fn char_poly(&self) -> PolyQ {
        let k = self.order();
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = Rat::one();
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[k - 1 - i] = -c.clone();
        }
        PolyQ::new(coeffs)
    }

    /// Exact term at any integer index, negative indices included.
    pub fn term_at(&self, n: i64) -> Rat {
        let k = self.order();
        if n >= 0 && (n as usize) < k {
            return self.init[n as usize].clone();
        }
        let mut window = self.init.clone();
        if n >= 0 {
            for _ in 0..(n as usize - k + 1) {
                let next: Rat = self
                    .coeffs
                    .iter()
                    .zip(window.iter().rev())
                    .map(|(c, a)| c * a)
                    .sum();
                window.rotate_left(1);
                window[k - 1] = next;
            }
            window[k - 1].clone()
        } else {
            // a(n-k) = (a(n) - sum_{i<k} c_i a(n-i)) / c_k
            let ck = self.coeffs[k - 1].clone();
            for _ in 0..(-n) {
                let partial: Rat = self.coeffs[..k - 1]
                    .iter()
                    .zip(window.iter().rev().skip(1))
                    .map(|(c, a)| c * a)
                    .sum();
                let prev = (window[k - 1].clone() - partial) / &ck;
                window.rotate_right(1);
                window[0] = prev;
            }
            window[0].clone()
        }
    }

    /// Term at a non-negative index reduced mod p, by modular matrix powers.
    /// Fails with `BadPrime` when p divides a denominator of the data.
    pub fn term_mod_p(&self, n: u64, p: u64) -> Result<u64> {
        let m = matrix_pow_mod(&self.companion_matrix(), n, p)?;
        let v: Result<Vec<u64>> = self.init.iter().map(|a| rat_mod_p(a, p)).collect();
        Ok(m.apply(&v?)[0])
    }

    /// Spectral data of the semisimple part: eigenvalues of the companion
    /// matrix in a splitting field, each with its (non-zero) weight.
    pub fn spectral_data(&self) -> Result<SpectralData> {
        let m = self.companion_matrix();
        let (ss, _uni) = jordan_chevalley(&m)?;
        let q = squarefree_part(&m.charpoly())?;
        let (field, roots) = splitting_field(&q)?;
        let group = GaloisGroup::new(&field)?;

        // s_j = (S^j · init)[0] is rational, so the weight of each eigenvalue
        // is a combination of these scalars through its Lagrange polynomial
        let d = q.degree();
        let mut scalars = Vec::with_capacity(d);
        let mut w: Vec<Rat> = self.init.clone();
        for j in 0..d {
            scalars.push(w[0].clone());
            if j + 1 < d {
                let mut next = vec![Rat::zero(); w.len()];
                for (i, item) in next.iter_mut().enumerate() {
                    for (l, wl) in w.iter().enumerate() {
                        if !ss.at(i, l).is_zero() {
                            *item += ss.at(i, l) * wl;
                        }
                    }
                }
                w = next;
            }
        }

        let mut pairs = Vec::new();
        for (i, lam) in roots.iter().enumerate() {
            let mut num = PolyNF::from_polyq(&field, &PolyQ::one());
            let mut den = field.one();
            for (j, other) in roots.iter().enumerate() {
                if j == i {
                    continue;
                }
                num = num.mul(&PolyNF::new(
                    &field,
                    vec![other.neg(), field.one()],
                ));
                den = den.mul(&lam.sub(other));
            }
            let ell = num.scale(&den.inv()?);
            let mut b = field.zero();
            for (j, s) in scalars.iter().enumerate() {
                if !s.is_zero() {
                    b = b.add(&ell.coeff(j).scale(s));
                }
            }
            if !b.is_zero() {
                pairs.push((lam.clone(), b));
            }
        }

        let data = SpectralData {
            field,
            group,
            pairs,
        };
        data.check_invariants(self, &ss)?;
        Ok(data)
    }
}

/// Eigenvalue/weight pairs of the semisimple part of a recurrence, together
/// with the splitting field and its automorphism group.
pub struct SpectralData {
    pub field: Arc<NumberField>,
    pub group: Arc<GaloisGroup>,
    /// (eigenvalue, weight) with all weights non-zero
    pub pairs: Vec<(NFElement, NFElement)>,
}

impl SpectralData {
    /// Σ b_i λ_i^n, the term of the semisimple part (rational by symmetry).
    pub fn semisimple_term(&self, n: usize) -> Result<Rat> {
        let mut acc = self.field.zero();
        for (lam, b) in &self.pairs {
            acc = acc.add(&b.mul(&lam.pow(n)));
        }
        acc.as_rational()
            .ok_or_else(|| Error::Invariant("semisimple term is irrational".into()))
    }

    fn check_invariants(&self, rec: &Recurrence, ss: &MatQ) -> Result<()> {
        // terms of the semisimple part must match (S^n · init)[0]
        let k = rec.order();
        let mut w: Vec<Rat> = rec.init().to_vec();
        for n in 0..=k {
            let expected = w[0].clone();
            if self.semisimple_term(n)? != expected {
                return Err(Error::Invariant(format!(
                    "spectral expansion disagrees with the semisimple part at n = {}",
                    n
                )));
            }
            let mut next = vec![Rat::zero(); w.len()];
            for (i, item) in next.iter_mut().enumerate() {
                for (l, wl) in w.iter().enumerate() {
                    *item += ss.at(i, l) * wl;
                }
            }
            w = next;
        }
        // every automorphism must permute the (eigenvalue, weight) pairs
        for a in 0..self.group.order() {
            for (lam, b) in &self.pairs {
                let il = self.group.apply(a, lam);
                let ib = self.group.apply(a, b);
                if !self.pairs.iter().any(|(l2, b2)| *l2 == il && *b2 == ib) {
                    return Err(Error::Invariant(
                        "spectral pairs are not stable under the Galois action".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Multiplicative Jordan decomposition M = S · U with S semisimple, U
/// unipotent, and S U = U S. Fails with `SingularMatrix` when M is singular.
pub fn jordan_chevalley(m: &MatQ) -> Result<(MatQ, MatQ)> {
    assert!(m.is_square());
    let k = m.rows();
    let chi = m.charpoly();
    if chi.coeff(0).is_zero() {
        return Err(Error::SingularMatrix);
    }
    let q = squarefree_part(&chi)?;
    let mut s = m.clone();
    let iters = (usize::BITS - k.leading_zeros()) as usize + 1;
    let dq = q.derivative();
    for _ in 0..iters {
        let qs = s.eval_poly(&q);
        if qs.is_zero() {
            break;
        }
        let correction = s.eval_poly(&dq).inverse()?.mul(&qs);
        s = s.sub(&correction);
    }
    if !s.eval_poly(&q).is_zero() {
        return Err(Error::Invariant(
            "semisimple part iteration did not converge".into(),
        ));
    }
    if !s.mul(m).sub(&m.mul(&s)).is_zero() {
        return Err(Error::Invariant(
            "semisimple part does not commute with the matrix".into(),
        ));
    }
    let u = s.inverse()?.mul(m);
    let mut nil = u.sub(&MatQ::identity(k));
    for _ in 0..k {
        nil = nil.mul(&u.sub(&MatQ::identity(k)));
    }
    // (U - I)^{k+1}; nilpotency of index <= k means this is zero
    if !nil.is_zero() {
        return Err(Error::Invariant("unipotent part is not unipotent".into()));
    }
    Ok((s, u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat_from_i64;

    fn fib() -> Recurrence {
        Recurrence::from_i64(&[1, 1], &[0, 1]).unwrap()
    }

    #[test]
    fn fibonacci_terms() {
        let r = fib();
        let known = [0i64, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55];
        for (n, &f) in known.iter().enumerate() {
            assert_eq!(r.term_at(n as i64), rat_from_i64(f));
        }
        // extension to negative indices: F(-n) = (-1)^{n+1} F(n)
        assert_eq!(r.term_at(-1), rat_from_i64(1));
        assert_eq!(r.term_at(-2), rat_from_i64(-1));
        assert_eq!(r.term_at(-5), rat_from_i64(5));
    }

    #[test]
    fn fibonacci_companion_matrix() {
        let m = fib().companion_matrix();
        assert_eq!(m, MatQ::from_i64(2, 2, &[0, 1, 1, 1]));
        assert_eq!(fib().char_poly(), PolyQ::from_i64(&[-1, -1, 1]));
    }

    #[test]
    fn modular_terms_match_exact() {
        let r = fib();
        for p in [7u64, 11, 13] {
            for n in 0..30u64 {
                let exact = r.term_at(n as i64);
                assert_eq!(r.term_mod_p(n, p).unwrap(), rat_mod_p(&exact, p).unwrap());
            }
        }
        // a(p) mod p for the Fibonacci numbers tracks the quadratic character
        assert_eq!(r.term_mod_p(7, 7).unwrap(), 6);
        assert_eq!(r.term_mod_p(11, 11).unwrap(), 1);
    }

    #[test]
    fn zero_trailing_coefficient_rejected() {
        assert!(matches!(
            Recurrence::from_i64(&[1, 0], &[0, 1]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn jordan_decomposition_of_defective_matrix() {
        // a(n) = 2a(n-1) - a(n-2): single eigenvalue 1 with a Jordan block
        let r = Recurrence::from_i64(&[2, -1], &[1, 2]).unwrap();
        let m = r.companion_matrix();
        let (s, u) = jordan_chevalley(&m).unwrap();
        assert_eq!(s, MatQ::identity(2));
        assert_eq!(u, m);
        assert_eq!(s.mul(&u), m);
    }

    #[test]
    fn jordan_decomposition_of_semisimple_matrix() {
        let m = fib().companion_matrix();
        let (s, u) = jordan_chevalley(&m).unwrap();
        assert_eq!(s, m);
        assert_eq!(u, MatQ::identity(2));
    }

    #[test]
    fn singular_companion_is_rejected_upstream() {
        let m = MatQ::from_i64(2, 2, &[1, 0, 0, 0]);
        assert!(matches!(jordan_chevalley(&m), Err(Error::SingularMatrix)));
    }

    #[test]
    fn fibonacci_spectral_data() {
        let data = fib().spectral_data().unwrap();
        assert_eq!(data.field.degree(), 2);
        assert_eq!(data.pairs.len(), 2);
        for n in 0..10 {
            assert_eq!(
                data.semisimple_term(n).unwrap(),
                fib().term_at(n as i64)
            );
        }
    }

    #[test]
    fn polynomial_sequence_drops_to_constant_semisimple_part() {
        // a(n) = n + 1 has companion eigenvalue 1 twice; the semisimple part
        // is the constant sequence a(0) = 1
        let r = Recurrence::from_i64(&[2, -1], &[1, 2]).unwrap();
        let data = r.spectral_data().unwrap();
        assert!(data.field.is_rational());
        assert_eq!(data.pairs.len(), 1);
        assert_eq!(data.pairs[0].0.as_rational().unwrap(), rat_from_i64(1));
        assert_eq!(data.pairs[0].1.as_rational().unwrap(), rat_from_i64(1));
    }

    #[test]
    fn split_exponentials() {
        // a(n) = 2^n + 3^n
        let r = Recurrence::from_i64(&[5, -6], &[2, 5]).unwrap();
        let data = r.spectral_data().unwrap();
        assert!(data.field.is_rational());
        let mut lams: Vec<Rat> = data
            .pairs
            .iter()
            .map(|(l, _)| l.as_rational().unwrap())
            .collect();
        lams.sort();
        assert_eq!(lams, vec![rat_from_i64(2), rat_from_i64(3)]);
        for (_, b) in &data.pairs {
            assert_eq!(b.as_rational().unwrap(), rat_from_i64(1));
        }
    }
}
