//! Dense univariate polynomials over F_p and their factorization.

use super::{inv_mod_u64, is_prime, mul_mod_u64, Int};
use crate::{Error, Result};
use num::{BigUint, Integer, One};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use std::fmt;

/// Polynomial over F_p, coefficients lowest degree first, reduced to [0, p).
#[derive(Clone, PartialEq, Eq)]
pub struct PolyFp {
    p: u64,
    coeffs: Vec<u64>,
}

impl PolyFp {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self::new_unchecked(p, coeffs))
    }

    /// Caller guarantees p is prime.
    pub fn new_unchecked(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyFp { p, coeffs }
    }

    /// Reduce an integer polynomial (lowest first) modulo p.
    pub fn from_int_coeffs(p: u64, coeffs: &[Int]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let pb = Int::from(p);
        let red: Vec<u64> = coeffs
            .iter()
            .map(|c| {
                use num::ToPrimitive;
                c.mod_floor(&pb).to_u64().unwrap()
            })
            .collect();
        Ok(PolyFp::new_unchecked(p, red))
    }

    pub fn zero(p: u64) -> Self {
        PolyFp { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        PolyFp { p, coeffs: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        PolyFp { p, coeffs: vec![0, 1] }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        PolyFp::new_unchecked(p, vec![c])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> usize {
        assert!(!self.is_zero(), "degree of zero polynomial");
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn lc(&self) -> u64 {
        *self.coeffs.last().expect("lc of zero polynomial")
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push((self.coeff(i) + other.coeff(i)) % self.p);
        }
        PolyFp::new_unchecked(self.p, out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push((self.coeff(i) + self.p - other.coeff(i)) % self.p);
        }
        PolyFp::new_unchecked(self.p, out)
    }

    pub fn scale(&self, s: u64) -> Self {
        let s = s % self.p;
        PolyFp::new_unchecked(
            self.p,
            self.coeffs.iter().map(|&c| mul_mod_u64(c, s, self.p)).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        if self.is_zero() || other.is_zero() {
            return PolyFp::zero(self.p);
        }
        let mut out = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        let pp = self.p as u128;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let v = &mut out[i + j];
                *v = (*v + a as u128 * b as u128) % pp;
            }
        }
        PolyFp::new_unchecked(self.p, out.into_iter().map(|c| c as u64).collect())
    }

    pub fn monic(&self) -> Self {
        assert!(!self.is_zero());
        self.scale(inv_mod_u64(self.lc(), self.p))
    }

    pub fn divrem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "division by zero polynomial");
        if self.is_zero() || self.degree() < div.degree() {
            return (PolyFp::zero(self.p), self.clone());
        }
        let p = self.p;
        let mut rem = self.coeffs.clone();
        let dd = div.degree();
        let dlc_inv = inv_mod_u64(div.lc(), p);
        let qlen = rem.len() - dd;
        let mut q = vec![0u64; qlen];
        for i in (0..qlen).rev() {
            let c = mul_mod_u64(rem[i + dd], dlc_inv, p);
            if c == 0 {
                continue;
            }
            q[i] = c;
            for (j, &dc) in div.coeffs.iter().enumerate() {
                let sub = mul_mod_u64(c, dc, p);
                rem[i + j] = (rem[i + j] + p - sub) % p;
            }
        }
        (PolyFp::new_unchecked(p, q), PolyFp::new_unchecked(p, rem))
    }

    pub fn rem(&self, div: &Self) -> Self {
        self.divrem(div).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Extended gcd: (g, s, t) with s*self + t*other = g, g monic.
    pub fn extended_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = PolyFp::one(p);
        let mut s1 = PolyFp::zero(p);
        let mut t0 = PolyFp::zero(p);
        let mut t1 = PolyFp::one(p);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = inv_mod_u64(r0.lc(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return PolyFp::zero(self.p);
        }
        PolyFp::new_unchecked(
            self.p,
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| mul_mod_u64(c, (i as u64 + 1) % self.p, self.p))
                .collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (mul_mod_u64(acc, x, self.p) + c) % self.p;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        assert!(!self.is_zero());
        if self.is_constant() {
            return true;
        }
        let d = self.derivative();
        if d.is_zero() {
            return false;
        }
        self.gcd(&d).is_constant()
    }

    /// self^exp modulo `m`.
    pub fn pow_mod(&self, exp: &BigUint, m: &Self) -> Self {
        let mut acc = PolyFp::one(self.p);
        let mut base = self.rem(m);
        let bits = exp.bits();
        for i in 0..bits {
            if exp.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
            if i + 1 < bits {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn pow_mod_u64(&self, exp: u64, m: &Self) -> Self {
        self.pow_mod(&BigUint::from(exp), m)
    }

    /// x^p mod m (Frobenius image of x).
    pub fn x_pow_p_mod(m: &Self) -> Self {
        PolyFp::x(m.p).pow_mod_u64(m.p, m)
    }

    /// Canonical ordering: degree, then coefficients from constant upward.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        match self.coeffs.len().cmp(&other.coeffs.len()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
            match a.cmp(b) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Roots in F_p (with multiplicity stripped).
    pub fn roots(&self) -> Vec<u64> {
        let mut out: Vec<u64> = factor_mod_p_seeded(self, 0)
            .unwrap_or_default()
            .into_iter()
            .filter(|(f, _)| f.degree() == 1)
            .map(|(f, _)| (self.p - f.coeff(0)) % self.p)
            .collect();
        out.sort_unstable();
        out
    }
}

/// Factor a non-zero polynomial over F_p into monic irreducibles with
/// multiplicity, sorted canonically. The product times lc reconstructs the input.
pub fn factor_mod_p(f: &PolyFp) -> Result<Vec<(PolyFp, usize)>> {
    factor_mod_p_seeded(f, 0)
}

pub fn factor_mod_p_seeded(f: &PolyFp, seed: u64) -> Result<Vec<(PolyFp, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out: Vec<(PolyFp, usize)> = Vec::new();
    let mut stack: Vec<(PolyFp, usize)> = vec![(f.monic(), 1)];
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15 ^ f.p);
    while let Some((g, mult)) = stack.pop() {
        if g.is_constant() {
            continue;
        }
        let d = g.derivative();
        if d.is_zero() {
            // g(x) = h(x^p) = h1(x)^p over F_p
            let p = g.p as usize;
            let mut h = Vec::new();
            for i in (0..g.coeffs().len()).step_by(p) {
                h.push(g.coeff(i));
            }
            stack.push((PolyFp::new_unchecked(g.p, h), mult * p));
            continue;
        }
        let sq = g.gcd(&d);
        if !sq.is_constant() {
            let part = g.divrem(&sq).0;
            stack.push((part, mult));
            stack.push((sq, mult));
            continue;
        }
        // g squarefree: distinct-degree then equal-degree splitting
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, &mut rng) {
                merge(&mut out, irr, mult);
            }
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(out)
}

fn merge(out: &mut Vec<(PolyFp, usize)>, f: PolyFp, mult: usize) {
    for (g, m) in out.iter_mut() {
        if *g == f {
            *m += mult;
            return;
        }
    }
    out.push((f, mult));
}

/// Split a monic squarefree polynomial into products of irreducibles of equal degree.
fn distinct_degree(f: &PolyFp) -> Vec<(PolyFp, usize)> {
    let p = f.modulus();
    let mut out = Vec::new();
    let mut g = f.clone();
    let mut h = PolyFp::x(p).rem(&g);
    let mut d = 0usize;
    while !g.is_constant() {
        d += 1;
        if 2 * d > g.degree() {
            out.push((g.clone(), g.degree()));
            break;
        }
        h = h.pow_mod_u64(p, &g);
        let diff = h.sub(&PolyFp::x(p));
        let factor = g.gcd(&diff);
        if !factor.is_constant() {
            out.push((factor.clone(), d));
            g = g.divrem(&factor).0;
            h = h.rem(&g);
        }
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting: f is monic squarefree, a product
/// of irreducibles all of degree d.
fn equal_degree(f: &PolyFp, d: usize, rng: &mut ChaCha8Rng) -> Vec<PolyFp> {
    let p = f.modulus();
    if f.degree() == d {
        return vec![f.clone()];
    }
    loop {
        let deg = f.degree();
        let a = PolyFp::new_unchecked(p, (0..deg).map(|_| rng.gen_range(0..p)).collect());
        if a.is_constant() {
            continue;
        }
        let split = if p == 2 {
            // trace map T(a) = a + a^2 + ... + a^{2^{d-1}}
            let mut t = a.clone();
            let mut pow = a.clone();
            for _ in 1..d {
                pow = pow.mul(&pow).rem(f);
                t = t.add(&pow);
            }
            f.gcd(&t)
        } else {
            let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            let b = a.pow_mod(&e, f);
            f.gcd(&b.sub(&PolyFp::one(p)))
        };
        if split.is_constant() || split.degree() == f.degree() {
            continue;
        }
        let rest = f.divrem(&split).0;
        let mut out = equal_degree(&split, d, rng);
        out.extend(equal_degree(&rest, d, rng));
        return out;
    }
}

impl fmt::Debug for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyFp(p={}, {:?})", self.p, self.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_golden_ratio_poly_mod_11() {
        // x^2 - x - 1 mod 11: roots 4 and 8 by exhaustive search
        let f = PolyFp::new(11, vec![10, 10, 1]).unwrap();
        let roots: Vec<u64> = (0..11).filter(|&x| f.eval(x) == 0).collect();
        assert_eq!(roots, vec![4, 8]);
        let factors = factor_mod_p(&f).unwrap();
        assert_eq!(factors.len(), 2);
        // (x - 4) = x + 7, (x - 8) = x + 3
        assert_eq!(factors[0].0.coeffs(), &[3, 1]);
        assert_eq!(factors[1].0.coeffs(), &[7, 1]);
    }

    #[test]
    fn irreducible_mod_7() {
        // no root among 0..6
        let f = PolyFp::new(7, vec![6, 6, 1]).unwrap();
        assert!((0..7).all(|x| f.eval(x) != 0));
        let factors = factor_mod_p(&f).unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].1, 1);
        assert_eq!(factors[0].0.degree(), 2);
    }

    #[test]
    fn monomial_power() {
        let f = PolyFp::new(5, vec![0, 0, 1]).unwrap();
        let factors = factor_mod_p(&f).unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].0.coeffs(), &[0, 1]);
        assert_eq!(factors[0].1, 2);
    }

    #[test]
    fn nonprime_modulus_rejected() {
        assert!(PolyFp::new(10, vec![1, 1]).is_err());
    }

    #[test]
    fn factor_mod_2() {
        // x^3 + x + 1 irreducible mod 2; (x^2+x+1)(x+1) = x^3 + 1 mod 2
        let f = PolyFp::new(2, vec![1, 1, 0, 1]).unwrap();
        assert_eq!(factor_mod_p(&f).unwrap().len(), 1);
        let g = PolyFp::new(2, vec![1, 0, 0, 1]).unwrap();
        let fs = factor_mod_p(&g).unwrap();
        let degs: Vec<usize> = fs.iter().map(|(f, _)| f.degree()).collect();
        assert_eq!(degs, vec![1, 2]);
    }

    #[test]
    fn inseparable_power() {
        // (x+1)^5 mod 5 has zero derivative
        let xp1 = PolyFp::new(5, vec![1, 1]).unwrap();
        let mut f = PolyFp::one(5);
        for _ in 0..5 {
            f = f.mul(&xp1);
        }
        let fs = factor_mod_p(&f).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].0.coeffs(), &[1, 1]);
        assert_eq!(fs[0].1, 5);
    }
}
