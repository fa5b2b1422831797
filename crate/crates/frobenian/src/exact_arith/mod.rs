//! Exact arithmetic: big rationals, polynomials over Q and F_p, dense rational
//! matrices, and factorization.

mod factorq;
mod matq;
mod poly;
mod polyfp;

pub use factorq::factor_over_q;
pub use matq::{matrix_pow_mod, MatFp, MatQ};
pub use poly::{squarefree_part, PolyQ};
pub use polyfp::{factor_mod_p, PolyFp};

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Deterministic Miller-Rabin for u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p`.
pub fn inv_mod_u64(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod_u64(a % p, p - 2, p)
}

/// All primes up to and including `x`.
pub fn primes_up_to(x: u64) -> Vec<u64> {
    if x < 2 {
        return Vec::new();
    }
    let n = x as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
}

/// Legendre symbol (a/p) for odd prime p, in {-1, 0, 1}.
pub fn legendre(a: i64, p: u64) -> i64 {
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    let e = pow_mod_u64(r, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        -1
    }
}

/// Reduce a rational modulo a prime; fails when p divides the denominator.
pub fn rat_mod_p(r: &Rat, p: u64) -> crate::Result<u64> {
    let pb = Int::from(p);
    let den = r.denom().mod_floor(&pb);
    if den.is_zero() {
        return Err(crate::Error::BadPrime {
            p,
            reason: "prime divides a denominator".into(),
        });
    }
    let num = r.numer().mod_floor(&pb);
    let den_u = int_to_u64(&den);
    let num_u = int_to_u64(&num);
    Ok(mul_mod_u64(num_u, inv_mod_u64(den_u, p), p))
}

fn int_to_u64(i: &Int) -> u64 {
    use num::ToPrimitive;
    i.to_u64().expect("residue fits in u64")
}

/// Prime factors of |n| found by trial division up to `limit`, plus any
/// unfactored cofactor (> limit^2 would be needed to split it further).
pub fn trial_factor(n: &Int, limit: u64) -> (Vec<u64>, Option<Int>) {
    let mut m = n.abs();
    let mut out = Vec::new();
    if m.is_zero() || m.is_one() {
        return (out, None);
    }
    let mut d = 2u64;
    while d <= limit {
        let db = Int::from(d);
        if (&db * &db) > m {
            break;
        }
        if m.mod_floor(&db).is_zero() {
            out.push(d);
            while m.mod_floor(&db).is_zero() {
                m /= &db;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m.is_one() {
        (out, None)
    } else {
        use num::ToPrimitive;
        match m.to_u64() {
            Some(v) if is_prime(v) => {
                out.push(v);
                (out, None)
            }
            Some(_) | None => (out, Some(m)),
        }
    }
}

/// Canonical string form of a rational: "n" or "n/d".
pub fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse "n" or "n/d" into a rational.
pub fn parse_rat(s: &str) -> crate::Result<Rat> {
    let s = s.trim();
    let mk_err = || crate::Error::Input(format!("cannot parse rational '{s}'"));
    if let Some((a, b)) = s.split_once('/') {
        let num: Int = a.trim().parse().map_err(|_| mk_err())?;
        let den: Int = b.trim().parse().map_err(|_| mk_err())?;
        if den.is_zero() {
            return Err(mk_err());
        }
        Ok(Rat::new(num, den))
    } else {
        let num: Int = s.parse().map_err(|_| mk_err())?;
        Ok(Rat::from_integer(num))
    }
}

pub fn rat_from_i64(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// p-adic valuation of a non-zero rational.
pub fn rat_valuation(r: &Rat, p: u64) -> i64 {
    assert!(!r.is_zero());
    let pb = Int::from(p);
    let count = |mut n: Int| {
        let mut v = 0i64;
        while n.mod_floor(&pb).is_zero() {
            n /= &pb;
            v += 1;
        }
        v
    };
    count(r.numer().abs()) - count(r.denom().clone())
}

