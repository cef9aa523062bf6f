//! Small integer helpers: modular arithmetic on `u64`, trial-division
//! factoring, square-free decomposition.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo `m` by the extended Euclidean algorithm.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Euler's criterion. `a` must be nonzero mod the odd prime `p`.
pub fn is_qr(a: u64, p: u64) -> bool {
    pow_mod(a, (p - 1) / 2, p) == 1
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
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

/// Prime factorization by trial division, ascending.
pub fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Prime factorization of `|n|` by trial division. Intended for the
/// small parameters handled at desk scale.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    if let Some(small) = n.to_u64() {
        return factorize_u64(small)
            .into_iter()
            .map(|(p, e)| (BigInt::from(p), e))
            .collect();
    }
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            let mut e = 0;
            while n.is_multiple_of(&d) {
                n /= &d;
                e += 1;
            }
            out.push((d.clone(), e));
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// Splits a positive integer as `a · s²` with `a` square-free; returns `(a, s)`.
pub fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut core = BigInt::one();
    let mut root = BigInt::one();
    for (p, e) in factorize(n) {
        if e % 2 == 1 {
            core *= &p;
        }
        root *= num_traits::pow(p, (e / 2) as usize);
    }
    (core, root)
}

/// All positive divisors of `|n|`, ascending. `n` must be nonzero.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    assert!(!n.is_zero());
    let mut divs = vec![BigInt::one()];
    for (p, e) in factorize(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Positive divisors of `n`, ascending.
pub fn divisors_u64(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize_u64(n) {
        let mut next = Vec::new();
        for &d in &divs {
            let mut pk = 1;
            for _ in 0..=e {
                next.push(d * pk);
                pk *= p;
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    divs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_inverse() {
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(0, 7), None);
        assert_eq!(inv_mod(6, 9), None);
        for a in 1..101u64 {
            let inv = inv_mod(a, 101).unwrap();
            assert_eq!(mul_mod(a, inv, 101), 1);
        }
    }

    #[test]
    fn euler_criterion_matches_squares() {
        for p in [3u64, 7, 11, 13, 101] {
            let squares: std::collections::HashSet<u64> = (1..p).map(|x| x * x % p).collect();
            for a in 1..p {
                assert_eq!(is_qr(a, p), squares.contains(&a), "a={a} p={p}");
            }
        }
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
    }

    #[test]
    fn factoring() {
        assert_eq!(factorize_u64(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize_u64(1), vec![]);
        let (a, s) = squarefree_split(&BigInt::from(72));
        assert_eq!((a, s), (BigInt::from(2), BigInt::from(6)));
        assert_eq!(divisors_u64(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(
            divisors(&BigInt::from(-12)),
            [1, 2, 3, 4, 6, 12].map(BigInt::from).to_vec()
        );
    }
}
