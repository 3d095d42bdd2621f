//! Integer factorization and primality testing for exact rational arithmetic.
//!
//! Trial division up to 10^6, then deterministic Miller-Rabin (for inputs
//! below 2^64) and Brent's variant of Pollard rho. Inputs coming from the
//! rest of the crate are tiny; the 64-bit fast path covers everything that
//! occurs in practice, with a bignum fallback for completeness.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const TRIAL_LIMIT: u64 = 1_000_000;

/// Deterministic Miller-Rabin witnesses for all n < 2^64.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for &a in &MR_BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent-Pollard rho; returns a nontrivial factor of composite odd n.
fn pollard_rho_u64(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_u64_into(mut n: u64, out: &mut BTreeMap<BigUint, u64>) {
    let push = |p: u64, out: &mut BTreeMap<BigUint, u64>| {
        *out.entry(BigUint::from(p)).or_insert(0) += 1;
    };
    for d in [2u64, 3, 5] {
        while n.is_multiple_of(d) {
            push(d, out);
            n /= d;
        }
    }
    let mut d = 7u64;
    while d <= TRIAL_LIMIT && d as u128 * d as u128 <= n as u128 {
        while n.is_multiple_of(d) {
            push(d, out);
            n /= d;
        }
        d += 2;
    }
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        push(n, out);
        return;
    }
    // No factor <= 10^6 and composite: split recursively.
    let f = pollard_rho_u64(n);
    factor_u64_into(f, out);
    factor_u64_into(n / f, out);
}

/// Miller-Rabin on BigUint with the fixed witness set (probabilistic
/// beyond 2^64, which never occurs for inputs this crate produces).
fn is_probable_prime_big(n: &BigUint) -> bool {
    if let Some(n64) = n.to_u64() {
        return is_prime_u64(n64);
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &MR_BASES {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho_big(n: &BigUint) -> BigUint {
    let two = BigUint::from(2u32);
    if n.is_even() {
        return two;
    }
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = two.clone();
        let mut y = two.clone();
        let mut d = BigUint::one();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            d = diff.gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1u32;
    }
}

fn factor_big_into(n: BigUint, out: &mut BTreeMap<BigUint, u64>) {
    if let Some(n64) = n.to_u64() {
        factor_u64_into(n64, out);
        return;
    }
    let mut n = n;
    let mut d = 2u64;
    while d <= TRIAL_LIMIT {
        let db = BigUint::from(d);
        while (&n % &db).is_zero() {
            *out.entry(db.clone()).or_insert(0) += 1;
            n /= &db;
        }
        if let Some(n64) = n.to_u64() {
            factor_u64_into(n64, out);
            return;
        }
        d = if d == 2 { 3 } else { d + 2 };
    }
    if n.is_one() {
        return;
    }
    if is_probable_prime_big(&n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let f = pollard_rho_big(&n);
    let q = &n / &f;
    factor_big_into(f, out);
    factor_big_into(q, out);
}

/// Prime factorization of n >= 1 as prime -> multiplicity.
pub fn factor(n: &BigUint) -> BTreeMap<BigUint, u64> {
    let mut out = BTreeMap::new();
    if n.is_zero() || n.is_one() {
        return out;
    }
    factor_big_into(n.clone(), &mut out);
    out
}

/// Prime factorization of a u64.
pub fn factor_u64(n: u64) -> BTreeMap<u64, u64> {
    let mut big = BTreeMap::new();
    if n > 1 {
        factor_u64_into(n, &mut big);
    }
    big.into_iter()
        .map(|(p, e)| (p.to_u64().expect("factor of a u64 fits in u64"), e))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..100).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]
        );
    }

    #[test]
    fn primality_large() {
        assert!(is_prime_u64(2_147_483_647)); // 2^31 - 1
        assert!(!is_prime_u64(2_147_483_649));
        assert!(is_prime_u64(18_446_744_073_709_551_557)); // largest u64 prime
    }

    #[test]
    fn factor_roundtrip() {
        for n in [1u64, 2, 12, 360, 1_000_003, 2 * 3 * 5 * 7 * 11 * 13, 1_000_003u64 * 999_983] {
            let f = factor(&BigUint::from(n));
            let mut back = BigUint::one();
            for (p, e) in &f {
                assert!(is_probable_prime_big(p));
                back *= p.pow(*e as u32);
            }
            if n == 1 {
                assert!(f.is_empty());
            } else {
                assert_eq!(back, BigUint::from(n));
            }
        }
    }
}
