//! Small exact-integer helpers shared by the backends.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub(crate) fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Extended gcd with a nonnegative gcd: returns `(g, s, t)` with `s*a + t*b = g`.
pub(crate) fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

pub(crate) fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

pub(crate) fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    a.lcm(b)
}

/// Least nonnegative residue.
pub(crate) fn modp(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

/// Solve `x = r1 (mod m1)`, `x = r2 (mod m2)` for positive moduli that need not be coprime.
pub(crate) fn crt(r1: &BigInt, m1: &BigInt, r2: &BigInt, m2: &BigInt) -> Option<(BigInt, BigInt)> {
    let (g, s, _) = ext_gcd(m1, m2);
    let diff = r2 - r1;
    if !diff.is_multiple_of(&g) {
        return None;
    }
    let m = m1 / &g * m2;
    let m2g = m2 / &g;
    let k = modp(&(&diff / &g * s), &m2g);
    Some((modp(&(r1 + m1 * k), &m), m))
}

/// Exact square root when `n` is a perfect square.
pub(crate) fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Trial-division factorization. Norms stay desk scale, so `u64` input is enough.
pub(crate) fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(crate) fn to_u64(n: &BigInt, what: &'static str) -> Result<u64> {
    n.to_u64().ok_or(Error::BoundExceeded {
        what,
        value: n.to_string(),
        cap: u64::MAX.to_string(),
    })
}

pub(crate) fn prime_divisors(n: &BigInt) -> Result<Vec<u64>> {
    let n = to_u64(&n.abs(), "integer to factor")?;
    Ok(factor_u64(n).into_iter().map(|(p, _)| p).collect())
}

/// All positive divisors in increasing order.
pub(crate) fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = to_u64(&n.abs(), "integer to factor")?;
    let mut ds = vec![1u64];
    for (p, e) in factor_u64(n) {
        let cur = ds.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            ds.extend(cur.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    Ok(ds.into_iter().map(BigInt::from).collect())
}

pub(crate) fn is_squarefree(d: i64) -> bool {
    if d == 0 {
        return false;
    }
    factor_u64(d.unsigned_abs()).iter().all(|&(_, e)| e == 1)
}

pub(crate) fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crt_non_coprime() {
        let (x, m) = crt(&big(1), &big(4), &big(3), &big(6)).unwrap();
        assert_eq!(m, big(12));
        assert_eq!(x, big(9));
        assert!(crt(&big(0), &big(4), &big(1), &big(6)).is_none());
    }

    #[test]
    fn divisor_lists() {
        let ds: Vec<i64> = divisors(&big(12)).unwrap().iter().map(|d| d.to_i64().unwrap()).collect();
        assert_eq!(ds, vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(factor_u64(360), vec![(2, 3), (3, 2), (5, 1)]);
    }

    #[test]
    fn squarefree() {
        assert!(is_squarefree(-5));
        assert!(is_squarefree(-1));
        assert!(!is_squarefree(12));
        assert!(!is_squarefree(-8));
    }

    #[test]
    fn sqrt_exactness() {
        assert_eq!(exact_sqrt(&big(49)), Some(big(7)));
        assert_eq!(exact_sqrt(&big(50)), None);
        assert_eq!(exact_sqrt(&big(-4)), None);
    }
}
