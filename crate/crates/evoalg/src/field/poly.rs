//! Dense univariate polynomial arithmetic over a prime field F_p,
//! just enough to define extension fields F_{p^k} and test the defining
//! polynomial for irreducibility.
//!
//! Polynomials are coefficient vectors, index = degree, entries reduced
//! mod p, no trailing zeros (the zero polynomial is the empty vector).

use crate::field::factor::factor_u64;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn degree(a: &[u64]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + y) % p;
    }
    trim(out)
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + p - y) % p;
    }
    trim(out)
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(out)
}

fn inv_mod_p(a: u64, p: u64) -> u64 {
    // p prime, a != 0: Fermat.
    pow_mod_p(a, p - 2, p)
}

fn pow_mod_p(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Remainder of a modulo the monic polynomial m.
pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    debug_assert_eq!(*m.last().expect("nonzero modulus"), 1, "modulus must be monic");
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = i + shift;
                r[idx] = (r[idx] + p - mulmod(lead, c, p)) % p;
            }
        }
        r.pop();
        r = trim(r);
        if r.len() <= dm {
            break;
        }
    }
    trim(r)
}

pub fn mulrem(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), m, p)
}

/// a^e mod m with a u128 exponent (covers p^k for p < 2^31, k <= 4).
pub fn powrem(a: &[u64], mut e: u128, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut base = rem(a, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulrem(&acc, &base, m, p);
        }
        base = mulrem(&base, &base, m, p);
        e >>= 1;
    }
    acc
}

fn make_monic(a: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() {
        return Vec::new();
    }
    let inv = inv_mod_p(*a.last().unwrap(), p);
    a.iter().map(|&c| mulmod(c, inv, p)).collect()
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let bm = make_monic(&b, p);
        let r = rem(&a, &bm, p);
        a = b;
        b = r;
    }
    make_monic(&a, p)
}

/// Rabin irreducibility test: monic f of degree k >= 1 is irreducible over
/// F_p iff x^(p^k) = x (mod f) and gcd(x^(p^(k/r)) - x, f) = 1 for every
/// prime r dividing k. For the small degrees used here this amounts to a
/// root / quadratic-factor search expressed through Frobenius powers.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = match degree(f) {
        Some(k) if k >= 1 => k,
        _ => return false,
    };
    debug_assert_eq!(*f.last().unwrap(), 1);
    if k == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let pk = (p as u128).pow(k as u32);
    if sub(&powrem(&x, pk, f, p), &rem(&x, f, p), p) != Vec::<u64>::new() {
        return false;
    }
    for &r in factor_u64(k as u64).keys() {
        let e = (p as u128).pow((k as u64 / r) as u32);
        let diff = sub(&powrem(&x, e, f, p), &rem(&x, f, p), p);
        let g = gcd(&diff, f, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}
