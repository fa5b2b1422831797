//! Dense univariate polynomials over Q.

use super::{rat_str, Int, Rat};
use crate::{Error, Result};
use num::{Integer, One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Polynomial over Q, coefficients stored lowest degree first.
///
/// The zero polynomial is the empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyQ {
    coeffs: Vec<Rat>,
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyQ::constant(Rat::one())
    }

    pub fn x() -> Self {
        PolyQ::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn constant(c: Rat) -> Self {
        PolyQ::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        PolyQ::new(coeffs.iter().map(|&c| super::rat_from_i64(c)).collect())
    }

    pub fn from_int(coeffs: &[Int]) -> Self {
        PolyQ::new(coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; panics on the zero polynomial.
    pub fn degree(&self) -> usize {
        assert!(!self.is_zero(), "degree of zero polynomial");
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn lc(&self) -> Rat {
        self.coeffs.last().cloned().expect("lc of zero polynomial")
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.lc().is_one()
    }

    pub fn neg(&self) -> Self {
        PolyQ::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        PolyQ::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return PolyQ::zero();
        }
        PolyQ::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return PolyQ::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyQ::new(out)
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = PolyQ::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn monic(&self) -> Self {
        assert!(!self.is_zero());
        let lc = self.lc();
        self.scale(&(Rat::one() / lc))
    }

    /// Quotient and remainder; panics if `div` is zero.
    pub fn divrem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "division by zero polynomial");
        if self.is_zero() || self.degree() < div.degree() {
            return (PolyQ::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dd = div.degree();
        let dlc = div.lc();
        let qlen = rem.len() - dd;
        let mut q = vec![Rat::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = rem[i + dd].clone() / dlc.clone();
            if c.is_zero() {
                continue;
            }
            q[i] = c.clone();
            for (j, dc) in div.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
        }
        (PolyQ::new(q), PolyQ::new(rem))
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

    /// Extended gcd: returns (g, s, t) with s*self + t*other = g, g monic (or zero).
    pub fn extended_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = PolyQ::one();
        let mut s1 = PolyQ::zero();
        let mut t0 = PolyQ::zero();
        let mut t1 = PolyQ::one();
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
        let inv = Rat::one() / r0.lc();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return PolyQ::zero();
        }
        PolyQ::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Rat::from_integer(Int::from(i as u64 + 1)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// f(a*x + b)
    pub fn compose_linear(&self, a: &Rat, b: &Rat) -> Self {
        let lin = PolyQ::new(vec![b.clone(), a.clone()]);
        let mut acc = PolyQ::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&PolyQ::constant(c.clone()));
        }
        acc
    }

    /// Write f = s * F with F a primitive integer polynomial (positive lc) and s rational.
    pub fn to_int_primitive(&self) -> (Vec<Int>, Rat) {
        assert!(!self.is_zero());
        let mut den = Int::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<Int> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut content = Int::zero();
        for c in &ints {
            content = content.gcd(c);
        }
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        let prim: Vec<Int> = ints.iter().map(|c| c / &content).collect();
        (prim, Rat::new(content, den))
    }

    /// Resultant of self and other.
    pub fn resultant(&self, other: &Self) -> Rat {
        if self.is_zero() || other.is_zero() {
            return Rat::zero();
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = Rat::one();
        loop {
            if b.is_constant() {
                let c = b.coeff(0);
                if a.is_constant() {
                    return acc;
                }
                return acc * pow_rat(&c, a.degree() as u32);
            }
            if a.is_constant() {
                let c = a.coeff(0);
                // res(c, b) = c^deg b, and swap sign is trivial for constants
                return acc * pow_rat(&c, b.degree() as u32);
            }
            if a.degree() < b.degree() {
                let sign = if (a.degree() * b.degree()) % 2 == 1 {
                    -Rat::one()
                } else {
                    Rat::one()
                };
                acc *= sign;
                std::mem::swap(&mut a, &mut b);
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return Rat::zero();
            }
            // res(a,b) = (-1)^{deg a deg b} lc(b)^{deg a - deg r} res(b, r)
            let sign = if (a.degree() * b.degree()) % 2 == 1 {
                -Rat::one()
            } else {
                Rat::one()
            };
            acc *= sign * pow_rat(&b.lc(), (a.degree() - r.degree()) as u32);
            a = b;
            b = r;
        }
    }

    /// Discriminant: (-1)^{n(n-1)/2} res(f, f') / lc(f).
    pub fn discriminant(&self) -> Rat {
        assert!(!self.is_constant());
        let n = self.degree();
        let res = self.resultant(&self.derivative());
        let sign = if (n * (n - 1) / 2) % 2 == 1 {
            -Rat::one()
        } else {
            Rat::one()
        };
        sign * res / self.lc()
    }

    /// Yun's squarefree decomposition: returns [(g_1,1),(g_2,2),...] with
    /// f = lc * prod g_i^i, each g_i monic squarefree, pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(PolyQ, usize)> {
        assert!(!self.is_zero());
        let f = self.monic();
        if f.is_constant() {
            return Vec::new();
        }
        let fp = f.derivative();
        let mut out = Vec::new();
        let a = f.gcd(&fp);
        let mut b = f.divrem(&a).0;
        let mut c = fp.divrem(&a).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1usize;
        loop {
            if b.is_constant() {
                break;
            }
            let g = b.gcd(&d);
            if !g.is_constant() {
                out.push((g.clone(), i));
            }
            b = b.divrem(&g).0;
            c = d.divrem(&g).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Lagrange interpolation through (points[i], values[i]).
    pub fn interpolate(points: &[Rat], values: &[Rat]) -> PolyQ {
        assert_eq!(points.len(), values.len());
        let mut acc = PolyQ::zero();
        for (i, (xi, yi)) in points.iter().zip(values).enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut basis = PolyQ::one();
            let mut denom = Rat::one();
            for (j, xj) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                basis = basis.mul(&PolyQ::new(vec![-xj.clone(), Rat::one()]));
                denom *= xi - xj;
            }
            acc = acc.add(&basis.scale(&(yi / &denom)));
        }
        acc
    }

    /// Canonical ordering: by degree, then lexicographic on coefficients
    /// from the constant term upward.
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
}

fn pow_rat(r: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

/// f / gcd(f, f'), monic: same roots as f, each with multiplicity one.
pub fn squarefree_part(f: &PolyQ) -> Result<PolyQ> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(PolyQ::one());
    }
    let g = f.gcd(&f.derivative());
    Ok(f.divrem(&g).0.monic())
}

impl fmt::Debug for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = if first {
                c.clone()
            } else if c.is_negative() {
                write!(f, " - ")?;
                -c
            } else {
                write!(f, " + ")?;
                c.clone()
            };
            first = false;
            match i {
                0 => write!(f, "{}", rat_str(&mag))?,
                _ => {
                    if mag.is_one() {
                        write!(f, "x")?;
                    } else if (-&mag).is_one() {
                        write!(f, "-x")?;
                    } else {
                        write!(f, "{}*x", rat_str(&mag))?;
                    }
                    if i > 1 {
                        write!(f, "^{}", i)?;
                    }
                }
            }
        }
        Ok(())
    }
}
