//! Factorization over Q: squarefree split, then Zassenhaus (factor mod p,
//! Hensel lift, recombine) on monic integer polynomials.

use super::poly::PolyQ;
use super::polyfp::{factor_mod_p_seeded, PolyFp};
use super::{is_prime, trial_factor, Int, Rat};
use crate::{Error, Result};
use num::{Integer, One, Signed, Zero};

/// Factor a non-zero rational polynomial into monic irreducibles with
/// multiplicity, sorted canonically.
pub fn factor_over_q(f: &PolyQ) -> Result<Vec<(PolyQ, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(Vec::new());
    }
    let mut out: Vec<(PolyQ, usize)> = Vec::new();
    for (g, mult) in f.squarefree_decomposition() {
        for irr in factor_squarefree_monic(&g)? {
            out.push((irr, mult));
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(out)
}

fn factor_squarefree_monic(g: &PolyQ) -> Result<Vec<PolyQ>> {
    debug_assert!(g.is_monic());
    if g.degree() == 1 {
        return Ok(vec![g.clone()]);
    }
    // Substitute x -> x/D to get a monic integer polynomial.
    let mut den = Int::one();
    for c in g.coeffs() {
        den = den.lcm(c.denom());
    }
    let n = g.degree();
    let mut ints: Vec<Int> = Vec::with_capacity(n + 1);
    for (j, c) in g.coeffs().iter().enumerate() {
        let scale = pow_int(&den, (n - j) as u32);
        ints.push(c.numer() * scale / c.denom());
    }
    let factors = factor_monic_int_squarefree(ints)?;
    let d_rat = Rat::from_integer(den.clone());
    Ok(factors
        .into_iter()
        .map(|h| {
            let hq = PolyQ::from_int(&h);
            if den.is_one() {
                hq
            } else {
                hq.compose_linear(&d_rat, &Rat::zero()).monic()
            }
        })
        .collect())
}

fn pow_int(b: &Int, e: u32) -> Int {
    let mut acc = Int::one();
    for _ in 0..e {
        acc *= b;
    }
    acc
}

/// Zassenhaus on a monic squarefree integer polynomial. Returns monic integer
/// irreducible factors.
fn factor_monic_int_squarefree(mut f: Vec<Int>) -> Result<Vec<Vec<Int>>> {
    let mut out: Vec<Vec<Int>> = Vec::new();
    // strip a root at zero
    if f[0].is_zero() {
        out.push(vec![Int::zero(), Int::one()]);
        f.remove(0);
    }
    if f.len() <= 1 {
        return Ok(out);
    }
    if f.len() == 2 {
        out.push(f);
        return Ok(out);
    }
    // rational (here: integer) root fast path
    integer_root_strip(&mut f, &mut out);
    if f.len() <= 2 {
        if f.len() == 2 {
            out.push(f);
        }
        return Ok(out);
    }

    // pick a prime where f stays squarefree, preferring few modular factors
    let mut best: Option<(u64, Vec<PolyFp>)> = None;
    let mut tried = 0usize;
    let mut p = 2u64;
    while tried < 6 {
        if is_prime(p) {
            let fp = PolyFp::from_int_coeffs(p, &f)?;
            if !fp.is_zero() && fp.degree() == f.len() - 1 && fp.is_squarefree() {
                tried += 1;
                let factors: Vec<PolyFp> = factor_mod_p_seeded(&fp, 1)?
                    .into_iter()
                    .map(|(h, _)| h)
                    .collect();
                if factors.len() == 1 {
                    out.push(f);
                    return Ok(out);
                }
                if best.as_ref().map_or(true, |(_, b)| factors.len() < b.len()) {
                    best = Some((p, factors));
                }
            }
        }
        p += 1;
        if p > 1000 {
            return Err(Error::Invariant(
                "no squarefree reduction found below 1000".into(),
            ));
        }
    }
    let (p, modular) = best.unwrap();

    // Landau-Mignotte style bound on factor coefficients: 2^n * ||f||_2
    let norm_sq: Int = f.iter().map(|c| c * c).sum();
    let bound = (Int::one() << f.len()) * (norm_sq.sqrt() + 1);
    let target = &bound * 2 + 1;
    let lifted = lift_factors(&f, &modular, p, &target)?;
    let modulus = lift_modulus(p, &target);
    let found = recombine(f, lifted, &modulus)?;
    out.extend(found);
    Ok(out)
}

fn integer_root_strip(f: &mut Vec<Int>, out: &mut Vec<Vec<Int>>) {
    let (small, leftover) = trial_factor(&f[0], 100_000);
    if leftover.is_some() {
        return;
    }
    let mut divisors: Vec<Int> = vec![Int::one()];
    for q in small {
        let mut next = Vec::new();
        let mut power = f[0].abs();
        let qb = Int::from(q);
        let mut e = 0;
        while power.mod_floor(&qb).is_zero() {
            power /= &qb;
            e += 1;
        }
        for d in &divisors {
            let mut acc = d.clone();
            for _ in 0..=e {
                next.push(acc.clone());
                acc *= &qb;
            }
        }
        next.sort();
        next.dedup();
        divisors = next;
        if divisors.len() > 512 {
            return;
        }
    }
    let mut changed = true;
    while changed && f.len() > 2 {
        changed = false;
        'search: for d in &divisors {
            for sign in [1i64, -1] {
                let root = d * Int::from(sign);
                if eval_int(f, &root).is_zero() {
                    *f = divide_linear(f, &root);
                    out.push(vec![-root, Int::one()]);
                    changed = true;
                    break 'search;
                }
            }
        }
    }
}

fn eval_int(f: &[Int], x: &Int) -> Int {
    let mut acc = Int::zero();
    for c in f.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Divide a monic integer polynomial by (x - root), assuming root is a root.
fn divide_linear(f: &[Int], root: &Int) -> Vec<Int> {
    let mut q = vec![Int::zero(); f.len() - 1];
    let mut carry = Int::zero();
    for i in (0..f.len() - 1).rev() {
        carry = &f[i + 1] + &carry * root;
        q[i] = carry.clone();
    }
    q
}

fn lift_modulus(p: u64, target: &Int) -> Int {
    let mut m = Int::from(p);
    while &m < target {
        m = &m * &m;
    }
    m
}

/// Hensel-lift the modular factorization of f (monic) from mod p to mod
/// p^{2^j} >= target, via a balanced factor tree.
fn lift_factors(f: &[Int], factors: &[PolyFp], p: u64, target: &Int) -> Result<Vec<Vec<Int>>> {
    if factors.len() == 1 {
        let m = lift_modulus(p, target);
        return Ok(vec![mod_sym_vec(f, &m)]);
    }
    let mid = factors.len() / 2;
    let (ls, rs) = factors.split_at(mid);
    let prod = |fs: &[PolyFp]| -> PolyFp {
        let mut acc = PolyFp::one(p);
        for f in fs {
            acc = acc.mul(f);
        }
        acc
    };
    let g0 = prod(ls);
    let h0 = prod(rs);
    let (gcd, s0, t0) = g0.extended_gcd(&h0);
    if !(gcd.is_constant() && gcd.coeff(0) == 1) {
        return Err(Error::Invariant("modular factors not coprime".into()));
    }
    let mut g = fp_to_int_sym(&g0);
    let mut h = fp_to_int_sym(&h0);
    let mut s = fp_to_int_sym(&s0);
    let mut t = fp_to_int_sym(&t0);
    let mut m = Int::from(p);
    while &m < target {
        hensel_step(f, &mut g, &mut h, &mut s, &mut t, &m);
        m = &m * &m;
    }
    let mut out = lift_factors(&g, ls, p, target)?;
    out.extend(lift_factors(&h, rs, p, target)?);
    Ok(out)
}

/// One quadratic Hensel step: from mod m to mod m^2.
///
/// Invariants: f ≡ g·h, s·g + t·h ≡ 1 (mod m); f, g, h monic;
/// deg s < deg h, deg t < deg g. All preserved at modulus m^2.
fn hensel_step(
    f: &[Int],
    g: &mut Vec<Int>,
    h: &mut Vec<Int>,
    s: &mut Vec<Int>,
    t: &mut Vec<Int>,
    m: &Int,
) {
    let m2 = m * m;
    let e = mod_sym_vec(&ip_sub(f, &ip_mul(g, h)), &m2);
    let (q, r) = ip_divrem_monic(&ip_mul(s, &e), h);
    let g1 = mod_sym_vec(&ip_add(&ip_add(g, &ip_mul(t, &e)), &ip_mul(&q, g)), &m2);
    let h1 = mod_sym_vec(&ip_add(h, &r), &m2);
    let b = mod_sym_vec(
        &ip_sub(&ip_add(&ip_mul(s, &g1), &ip_mul(t, &h1)), &[Int::one()]),
        &m2,
    );
    let (c, d) = ip_divrem_monic(&ip_mul(s, &b), &h1);
    let s1 = mod_sym_vec(&ip_sub(s, &d), &m2);
    let t1 = mod_sym_vec(&ip_sub(&ip_sub(t, &ip_mul(t, &b)), &ip_mul(&c, &g1)), &m2);
    debug_assert!(trimmed_len(&g1) == trimmed_len(g) && g1[trimmed_len(g) - 1].is_one());
    debug_assert!(trimmed_len(&h1) == trimmed_len(h) && h1[trimmed_len(h) - 1].is_one());
    *g = g1;
    *h = h1;
    *s = s1;
    *t = t1;
}

fn recombine(mut f: Vec<Int>, mut avail: Vec<Vec<Int>>, m: &Int) -> Result<Vec<Vec<Int>>> {
    let mut out = Vec::new();
    let mut trials = 0u64;
    let mut size = 1usize;
    while 2 * size <= avail.len() {
        let mut found = false;
        let mut combo = Combinations::new(avail.len(), size);
        'combos: while let Some(idx) = combo.next() {
            trials += 1;
            if trials > 5_000_000 {
                return Err(Error::BudgetExceeded("factor recombination".into()));
            }
            let mut cand = vec![Int::one()];
            for &i in idx {
                cand = mod_sym_vec(&ip_mul(&cand, &avail[i]), m);
            }
            // cheap divisibility test on constant terms
            if !f[0].is_zero() && !cand[0].is_zero() && !f[0].mod_floor(&cand[0].abs()).is_zero()
            {
                continue 'combos;
            }
            let (q, r) = ip_divrem_monic(&f, &cand);
            if r.iter().all(|c| c.is_zero()) {
                out.push(cand);
                f = q;
                for &i in idx.iter().rev() {
                    avail.remove(i);
                }
                found = true;
                break 'combos;
            }
        }
        if !found {
            size += 1;
        }
    }
    if f.len() > 1 {
        out.push(f);
    }
    Ok(out)
}

struct Combinations {
    n: usize,
    idx: Vec<usize>,
    started: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            started: false,
        }
    }

    fn next(&mut self) -> Option<&[usize]> {
        let k = self.idx.len();
        if k == 0 || k > self.n {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.idx);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if self.idx[i] != i + self.n - k {
                break;
            }
        }
        self.idx[i] += 1;
        for j in i + 1..k {
            self.idx[j] = self.idx[j - 1] + 1;
        }
        Some(&self.idx)
    }
}

// -- small integer-polynomial helpers (lowest degree first) --

fn trimmed_len(f: &[Int]) -> usize {
    let mut n = f.len();
    while n > 0 && f[n - 1].is_zero() {
        n -= 1;
    }
    n
}

fn ip_add(a: &[Int], b: &[Int]) -> Vec<Int> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            a.get(i).cloned().unwrap_or_else(Int::zero) + b.get(i).cloned().unwrap_or_else(Int::zero)
        })
        .collect()
}

fn ip_sub(a: &[Int], b: &[Int]) -> Vec<Int> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            a.get(i).cloned().unwrap_or_else(Int::zero) - b.get(i).cloned().unwrap_or_else(Int::zero)
        })
        .collect()
}

fn ip_mul(a: &[Int], b: &[Int]) -> Vec<Int> {
    let an = trimmed_len(a);
    let bn = trimmed_len(b);
    if an == 0 || bn == 0 {
        return Vec::new();
    }
    let mut out = vec![Int::zero(); an + bn - 1];
    for i in 0..an {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..bn {
            out[i + j] += &a[i] * &b[j];
        }
    }
    out
}

/// Division with remainder by a monic divisor.
fn ip_divrem_monic(a: &[Int], div: &[Int]) -> (Vec<Int>, Vec<Int>) {
    let dn = trimmed_len(div);
    assert!(dn > 0 && div[dn - 1].is_one(), "divisor must be monic");
    let an = trimmed_len(a);
    if an < dn {
        return (Vec::new(), a[..an].to_vec());
    }
    let mut rem: Vec<Int> = a[..an].to_vec();
    let qlen = an - dn + 1;
    let mut q = vec![Int::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn - 1].clone();
        if c.is_zero() {
            continue;
        }
        for j in 0..dn {
            rem[i + j] -= &c * &div[j];
        }
        q[i] = c;
    }
    rem.truncate(dn - 1);
    (q, rem)
}

/// Reduce coefficients into the symmetric range (-m/2, m/2].
fn mod_sym_vec(f: &[Int], m: &Int) -> Vec<Int> {
    let half = m / 2;
    let mut out: Vec<Int> = f
        .iter()
        .map(|c| {
            let mut r = c.mod_floor(m);
            if r > half {
                r -= m;
            }
            r
        })
        .collect();
    while out.last().map_or(false, |c| c.is_zero()) {
        out.pop();
    }
    out
}

fn fp_to_int_sym(f: &PolyFp) -> Vec<Int> {
    let p = f.modulus();
    let half = p / 2;
    f.coeffs()
        .iter()
        .map(|&c| {
            if c > half {
                Int::from(c) - Int::from(p)
            } else {
                Int::from(c)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat_from_i64;

    fn poly(coeffs: &[i64]) -> PolyQ {
        PolyQ::from_i64(coeffs)
    }

    #[test]
    fn difference_of_squares() {
        let f = poly(&[-1, 0, 1]);
        let fs = factor_over_q(&f).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].0, poly(&[-1, 1]));
        assert_eq!(fs[1].0, poly(&[1, 1]));
        assert_eq!((fs[0].1, fs[1].1), (1, 1));
    }

    #[test]
    fn golden_ratio_poly_irreducible() {
        // rational root test: candidate roots ±1 both fail
        let f = poly(&[-1, -1, 1]);
        assert!(!f.eval(&rat_from_i64(1)).is_zero());
        assert!(!f.eval(&rat_from_i64(-1)).is_zero());
        let fs = factor_over_q(&f).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0], (f, 1));
    }

    #[test]
    fn perfect_square() {
        let f = poly(&[-1, 1]).mul(&poly(&[-1, 1]));
        let fs = factor_over_q(&f).unwrap();
        assert_eq!(fs, vec![(poly(&[-1, 1]), 2)]);
    }

    #[test]
    fn zero_rejected() {
        assert!(factor_over_q(&PolyQ::zero()).is_err());
    }

    #[test]
    fn bigger_product_with_hensel() {
        // (x^2-x-1)(x^3-2)(x^2+1), no rational roots
        let f = poly(&[-1, -1, 1])
            .mul(&poly(&[-2, 0, 0, 1]))
            .mul(&poly(&[1, 0, 1]));
        let fs = factor_over_q(&f).unwrap();
        let degs: Vec<usize> = fs.iter().map(|(g, _)| g.degree()).collect();
        assert_eq!(degs, vec![2, 2, 3]);
        let mut prod = PolyQ::one();
        for (g, m) in &fs {
            prod = prod.mul(&g.pow(*m));
        }
        assert_eq!(prod, f);
    }

    #[test]
    fn non_monic_rational_coefficients() {
        // 6x^2 - 5x + 1 = 6(x - 1/2)(x - 1/3)
        let f = poly(&[1, -5, 6]);
        let fs = factor_over_q(&f).unwrap();
        assert_eq!(fs.len(), 2);
        let mut prod = PolyQ::one();
        for (g, m) in &fs {
            assert!(g.is_monic());
            prod = prod.mul(&g.pow(*m));
        }
        assert_eq!(prod.scale(&rat_from_i64(6)), f);
    }
}
