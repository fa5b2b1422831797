//! Dense matrices over Q and over F_p.

use super::{mul_mod_u64, rat_mod_p, PolyQ, Rat};
use crate::{Error, Result};
use num::{One, Zero};

/// Row-major dense rational matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatQ {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl MatQ {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Self {
        assert!(rows > 0 && cols > 0);
        assert_eq!(entries.len(), rows * cols);
        MatQ { rows, cols, entries }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        MatQ::new(
            rows,
            cols,
            entries.iter().map(|&e| super::rat_from_i64(e)).collect(),
        )
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        MatQ::new(rows, cols, vec![Rat::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatQ::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.rows == other.rows && self.cols == other.cols);
        MatQ::new(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(self.rows == other.rows && self.cols == other.cols);
        MatQ::new(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, s: &Rat) -> Self {
        MatQ::new(
            self.rows,
            self.cols,
            self.entries.iter().map(|e| e * s).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = MatQ::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    *out.at_mut(i, j) += a * other.at(k, j);
                }
            }
        }
        out
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn trace(&self) -> Rat {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.at(i, i).clone()).sum()
    }

    /// Characteristic polynomial (monic) via the Faddeev-LeVerrier recursion.
    pub fn charpoly(&self) -> PolyQ {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = Rat::one();
        let mut aux = MatQ::identity(n);
        for i in 1..=n {
            let m = self.mul(&aux);
            let c = -m.trace() / Rat::from_integer(num::BigInt::from(i as u64));
            coeffs[n - i] = c.clone();
            aux = m;
            for d in 0..n {
                *aux.at_mut(d, d) += &c;
            }
        }
        PolyQ::new(coeffs)
    }

    pub fn inverse(&self) -> Result<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = MatQ::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.at(r, col).is_zero())
                .ok_or(Error::SingularMatrix)?;
            if pivot != col {
                for j in 0..n {
                    let tmp = a.at(pivot, j).clone();
                    *a.at_mut(pivot, j) = a.at(col, j).clone();
                    *a.at_mut(col, j) = tmp;
                    let tmp = inv.at(pivot, j).clone();
                    *inv.at_mut(pivot, j) = inv.at(col, j).clone();
                    *inv.at_mut(col, j) = tmp;
                }
            }
            let pv = a.at(col, col).clone();
            for j in 0..n {
                *a.at_mut(col, j) /= &pv;
                *inv.at_mut(col, j) /= &pv;
            }
            for r in 0..n {
                if r == col || a.at(r, col).is_zero() {
                    continue;
                }
                let f = a.at(r, col).clone();
                for j in 0..n {
                    let v = a.at(col, j) * &f;
                    *a.at_mut(r, j) -= v;
                    let v = inv.at(col, j) * &f;
                    *inv.at_mut(r, j) -= v;
                }
            }
        }
        Ok(inv)
    }

    /// Evaluate a rational polynomial at this matrix (Horner).
    pub fn eval_poly(&self, f: &PolyQ) -> MatQ {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = MatQ::zero(n, n);
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self);
            for d in 0..n {
                *acc.at_mut(d, d) += c;
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Reduce modulo p; fails if p divides a denominator.
    pub fn reduce_mod(&self, p: u64) -> Result<MatFp> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(rat_mod_p(e, p)?);
        }
        Ok(MatFp {
            p,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }
}

/// Row-major dense matrix over F_p.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatFp {
    p: u64,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl MatFp {
    pub fn identity(p: u64, n: usize) -> Self {
        let mut entries = vec![0u64; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        MatFp { p, rows: n, cols: n, entries }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.p, other.p);
        let mut entries = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let t = &mut entries[i * other.cols + j];
                    *t = (*t + mul_mod_u64(a, other.at(k, j), self.p)) % self.p;
                }
            }
        }
        MatFp {
            p: self.p,
            rows: self.rows,
            cols: other.cols,
            entries,
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut acc = MatFp::identity(self.p, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for j in 0..self.cols {
                    acc = (acc + mul_mod_u64(self.at(i, j), v[j], self.p)) % self.p;
                }
                acc
            })
            .collect()
    }
}

/// M^n with entries reduced mod p, by binary powering.
pub fn matrix_pow_mod(m: &MatQ, n: u64, p: u64) -> Result<MatFp> {
    if !super::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    assert!(m.is_square());
    Ok(m.reduce_mod(p)?.pow(n))
}
