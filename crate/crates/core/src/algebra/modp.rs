//! Word-sized prime field arithmetic used by the modular gcd.

use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};

/// Primes just below 2^62, largest first.
pub(crate) fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(512);
        let mut candidate = (1u64 << 62) - 1;
        while out.len() < 512 {
            if is_prime(candidate) {
                out.push(candidate);
            }
            candidate -= 2;
        }
        out
    })
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % small == 0 {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // Deterministic for all 64-bit n with these bases.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn reduce(value: &BigInt, p: u64) -> u64 {
    let r = value
        .magnitude()
        .iter_u64_digits()
        .rev()
        .fold(0u128, |acc, digit| ((acc << 64) | digit as u128) % p as u128) as u64;
    if value.sign() == Sign::Minus && r != 0 {
        p - r
    } else {
        r
    }
}

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn make_monic(a: &mut [u64], p: u64) {
    if let Some(&lc) = a.last() {
        if lc != 1 {
            let inv = inv_mod(lc, p);
            for c in a.iter_mut() {
                *c = mul_mod(*c, inv, p);
            }
        }
    }
}

/// `a mod b` in place, `b` monic and nonzero.
fn rem_monic(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    while a.len() > db {
        let top = a.len() - 1;
        let c = a[top];
        if c != 0 {
            let shift = top - db;
            let neg = p - c;
            for (i, &bi) in b[..db].iter().enumerate() {
                if bi != 0 {
                    a[shift + i] = add_mod(a[shift + i], mul_mod(neg, bi, p), p);
                }
            }
        }
        a.pop();
    }
    trim(a);
}

/// Monic gcd over GF(p). Both inputs are consumed.
pub(crate) fn gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        make_monic(&mut b, p);
        rem_monic(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    make_monic(&mut a, p);
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_table_is_prime_and_descending() {
        let ps = primes();
        assert_eq!(ps.len(), 512);
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(ps[0] < 1 << 62);
        assert!(!is_prime(ps[0] - 2) || ps[1] == ps[0] - 2);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007u64 * 998_244_353));
    }

    #[test]
    fn reduces_signed_bigints() {
        let p = 1_000_000_007u64;
        let big = BigInt::from(p) * BigInt::from(p) * 3 + 5;
        assert_eq!(reduce(&big, p), 5);
        assert_eq!(reduce(&(-big), p), p - 5);
        assert_eq!(reduce(&BigInt::from(0), p), 0);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let p = 101;
        // (x+1)(x+2) and (x+1)(x+3)
        let a = vec![2, 3, 1];
        let b = vec![3, 4, 1];
        assert_eq!(gcd(a, b, p), vec![1, 1]);
        assert_eq!(gcd(vec![1, 1], vec![2, 1], p), vec![1]);
    }
}
