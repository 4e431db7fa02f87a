//! Elementary arithmetic: factorization, characters, Hilbert symbols.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;
use crate::{Error, Result};

/// Trial-division factorization of `|n|` into `(prime, exponent)` pairs.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
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

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).len() == 1 && factorize(n)[0].1 == 1
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| is_prime(p)).collect()
}

pub fn ord_p(n: i128, p: u64) -> u32 {
    assert!(n != 0, "ord_p(0)");
    let p = p as i128;
    let mut n = n;
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

pub fn ord_p_big(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero(), "ord_p(0)");
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return e;
        }
        n = q;
        e += 1;
    }
}

/// Signed squarefree part: `n = s * t^2` with `s` squarefree.
pub fn squarefree_part(n: i64) -> (i64, u64) {
    assert!(n != 0);
    let mut s: i64 = n.signum();
    let mut t: u64 = 1;
    for (p, e) in factorize(n.unsigned_abs()) {
        if e % 2 == 1 {
            s *= p as i64;
        }
        t *= p.pow(e / 2);
    }
    (s, t)
}

pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 1 {
        return true;
    }
    if d == 0 {
        return false;
    }
    let m4 = d.rem_euclid(4);
    if m4 == 1 {
        return squarefree_part(d).1 == 1;
    }
    if m4 == 0 {
        let m = d / 4;
        let r = m.rem_euclid(4);
        return (r == 2 || r == 3) && squarefree_part(m).1 == 1;
    }
    false
}

/// Splits a discriminant `n ≡ 0,1 (mod 4)` as `n = d f^2` with `d` fundamental.
pub fn fundamental_split(n: i64) -> Result<(i64, u64)> {
    if n == 0 || !(n.rem_euclid(4) == 0 || n.rem_euclid(4) == 1) {
        return Err(Error::Domain(format!("{n} is not a discriminant")));
    }
    let (s, t) = squarefree_part(n);
    if s.rem_euclid(4) == 1 {
        Ok((s, t))
    } else {
        debug_assert!(t % 2 == 0);
        Ok((4 * s, t / 2))
    }
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: i64, p: u64) -> i32 {
    let p_i = p as i64;
    let a = a.rem_euclid(p_i) as u64;
    if a == 0 {
        return 0;
    }
    let r = pow_mod(a, (p - 1) / 2, p);
    if r == 1 {
        1
    } else {
        -1
    }
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u128;
    let mut b128 = (b % m) as u128;
    let m128 = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b128 % m128;
        }
        b128 = b128 * b128 % m128;
        e >>= 1;
    }
    b = r as u64;
    b
}

/// Kronecker symbol `(d/n)` for a fundamental discriminant `d` (or `d = 1`).
pub fn kronecker(d: i64, n: i64) -> Result<i32> {
    if !is_fundamental_discriminant(d) {
        return Err(Error::NotFundamental(d));
    }
    Ok(kronecker_unchecked(d, n))
}

pub(crate) fn kronecker_unchecked(d: i64, n: i64) -> i32 {
    if d == 1 {
        return 1;
    }
    if n == 0 {
        return if d.abs() == 1 { 1 } else { 0 };
    }
    let mut out = 1;
    if n < 0 && d < 0 {
        out = -out;
    }
    for (p, e) in factorize(n.unsigned_abs()) {
        let v = if p == 2 {
            match d.rem_euclid(8) {
                1 | 7 => 1,
                3 | 5 => -1,
                _ => 0,
            }
        } else {
            legendre(d, p)
        };
        if v == 0 {
            return 0;
        }
        if v == -1 && e % 2 == 1 {
            out = -out;
        }
    }
    out
}

/// Hilbert symbol `(a, b)_p` for nonzero rationals.
pub fn hilbert_symbol(a: &Rational, b: &Rational, p: u64) -> i32 {
    assert!(!a.is_zero() && !b.is_zero());
    // Replace a = n/d by n*d (same square class).
    let a = a.numer() * a.denom();
    let b = b.numer() * b.denom();
    let (alpha, u) = split_p(&a, p);
    let (beta, v) = split_p(&b, p);
    if p == 2 {
        // (x-1)/2 and (x^2-1)/8 mod 2 for odd x.
        let eps = |x: &BigInt| -> u32 { u32::from(mod_small(x, 4) != 1) };
        let omega = |x: &BigInt| -> u32 {
            match mod_small(x, 8) {
                1 | 7 => 0,
                _ => 1,
            }
        };
        let e = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        let eps_p = ((p - 1) / 2) as u32;
        let mut s = if (alpha * beta * eps_p).is_multiple_of(2) { 1 } else { -1 };
        let leg = |x: &BigInt| -> i32 { legendre(mod_small(x, p) as i64, p) };
        if beta % 2 == 1 {
            s *= leg(&u);
        }
        if alpha % 2 == 1 {
            s *= leg(&v);
        }
        s
    }
}

fn split_p(n: &BigInt, p: u64) -> (u32, BigInt) {
    let e = ord_p_big(n, p);
    let u = n / BigInt::from(p).pow(e);
    (e, u)
}

fn mod_small(x: &BigInt, m: u64) -> u64 {
    x.mod_floor(&BigInt::from(m)).to_u64().expect("small residue")
}

pub fn sigma(k: u32, n: u64) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// `Γ(n) = (n-1)!` for positive integers.
pub fn gamma_int(n: i64) -> BigInt {
    assert!(n >= 1, "Gamma at nonpositive integer");
    factorial((n - 1) as u64)
}

/// Integer square root when `n` is a perfect square.
pub fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;

    #[test]
    fn kronecker_basic() {
        assert_eq!(kronecker(1, 7).unwrap(), 1);
        assert_eq!(kronecker(-4, 2).unwrap(), 0);
        assert_eq!(kronecker(8, 3).unwrap(), -1);
        assert_eq!(kronecker(5, 2).unwrap(), -1);
        assert!(kronecker(12, 5).is_ok());
        assert!(matches!(kronecker(3, 5), Err(Error::NotFundamental(3))));
    }

    #[test]
    fn kronecker_eight_matches_squares_mod_24() {
        // (8/n) for odd n is +1 iff 2 is a square mod n, i.e. n ≡ ±1 (mod 8).
        for n in (1..200i64).step_by(2) {
            let expected = if n % 8 == 1 || n % 8 == 7 { 1 } else { -1 };
            let g = num_integer::gcd(n, 8);
            if g == 1 {
                assert_eq!(kronecker(8, n).unwrap(), expected, "n = {n}");
            }
        }
        // 3 has no solution of x^2 ≡ 2 (mod 3); brute over residues mod 24.
        let squares: Vec<i64> = (0..24).map(|x| x * x % 3).collect();
        assert!(!squares.contains(&2));
        assert_eq!(kronecker(8, 3).unwrap(), -1);
    }

    #[test]
    fn fundamental_split_cases() {
        assert_eq!(fundamental_split(-4).unwrap(), (-4, 1));
        assert_eq!(fundamental_split(8).unwrap(), (8, 1));
        assert_eq!(fundamental_split(4).unwrap(), (1, 2));
        assert_eq!(fundamental_split(-16).unwrap(), (-4, 2));
        assert_eq!(fundamental_split(-27).unwrap(), (-3, 3));
        assert_eq!(fundamental_split(-32).unwrap(), (-8, 2));
        assert!(fundamental_split(3).is_err());
    }

    #[test]
    fn hilbert_symbol_product_formula() {
        // Product over all places (including infinity) is 1.
        let vals = [-7i64, -3, -2, -1, 2, 3, 5, 6, 10, 15, 18, 21];
        for &a in &vals {
            for &b in &vals {
                let ra = rat(a, 1);
                let rb = rat(b, 1);
                let mut prod = if a < 0 && b < 0 { -1 } else { 1 };
                for p in primes_up_to(50) {
                    prod *= hilbert_symbol(&ra, &rb, p);
                }
                assert_eq!(prod, 1, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn hilbert_symbol_known_values() {
        assert_eq!(hilbert_symbol(&rat(-1, 1), &rat(-1, 1), 2), -1);
        assert_eq!(hilbert_symbol(&rat(2, 1), &rat(3, 1), 3), -1);
        assert_eq!(hilbert_symbol(&rat(3, 1), &rat(-1, 1), 3), -1);
        assert_eq!(hilbert_symbol(&rat(5, 1), &rat(2, 1), 2), -1);
    }

    #[test]
    fn small_helpers() {
        assert_eq!(sigma(3, 2), BigInt::from(9));
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(gamma_int(5), BigInt::from(24));
        assert_eq!(squarefree_part(-36), (-1, 6));
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
    }
}
