//! Dense univariate polynomials over a prime field, stored low degree first.
//! Used for extension-field reduction and irreducibility testing.

use alloc::vec;
use alloc::vec::Vec;

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn invmod(a: u64, p: u64) -> Option<u64> {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

pub(crate) fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
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
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero `m`.
pub(crate) fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    trim(&mut r);
    let dm = degree(m).expect("nonzero modulus");
    let lead_inv = invmod(m[dm], p).expect("unit leading coefficient");
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let c = mulmod(r[dr], lead_inv, p);
        let shift = dr - dm;
        for (i, &mi) in m.iter().enumerate().take(dm + 1) {
            r[shift + i] = (r[shift + i] + p - mulmod(c, mi, p)) % p;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mulmod_poly(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn powmod_poly(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1 % p];
    trim(&mut result);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod_poly(&result, &b, m, p);
        }
        b = mulmod_poly(&b, &b, m, p);
        e >>= 1;
    }
    result
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(d) = degree(&x) {
        let inv = invmod(x[d], p).unwrap();
        for c in x.iter_mut() {
            *c = mulmod(*c, inv, p);
        }
    }
    x
}

fn prime_factors(mut k: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= k {
        if k.is_multiple_of(d) {
            out.push(d);
            while k.is_multiple_of(d) {
                k /= d;
            }
        }
        d += 1;
    }
    if k > 1 {
        out.push(k);
    }
    out
}

/// `x^(p^d) mod m`, by iterated p-th powering.
fn frobenius_iterate(d: u32, m: &[u64], p: u64) -> Vec<u64> {
    let mut x = vec![0, 1 % p];
    trim(&mut x);
    let mut cur = rem(&x, m, p);
    for _ in 0..d {
        cur = powmod_poly(&cur, p, m, p);
    }
    cur
}

/// Rabin's test: `m` of degree `k` is irreducible over F_p iff `x^(p^k) = x mod m`
/// and `gcd(x^(p^(k/r)) - x, m) = 1` for every prime `r | k`.
pub(crate) fn is_irreducible(m: &[u64], p: u64) -> bool {
    let Some(k) = degree(m) else { return false };
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x = vec![0, 1];
    let full = frobenius_iterate(k as u32, m, p);
    if sub(&full, &rem(&x, m, p), p) != Vec::<u64>::new() {
        return false;
    }
    for r in prime_factors(k as u32) {
        let h = frobenius_iterate(k as u32 / r, m, p);
        let diff = sub(&h, &rem(&x, m, p), p);
        let g = gcd(&diff, m, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
    }

    #[test]
    fn irreducibility() {
        // x^2 + 1 over F_3 has no roots.
        assert!(is_irreducible(&[1, 0, 1], 3));
        // x^2 - 1 = (x-1)(x+1).
        assert!(!is_irreducible(&[2, 0, 1], 3));
        // x^4 + x + 1 over F_2 is irreducible, (x^2+x+1)^2 = x^4+x^2+1 is not.
        assert!(is_irreducible(&[1, 1, 0, 0, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2));
    }

    #[test]
    fn inverse_mod() {
        for a in 1..13 {
            let inv = invmod(a, 13).unwrap();
            assert_eq!(mulmod(a, inv, 13), 1);
        }
        assert_eq!(invmod(0, 13), None);
    }
}
