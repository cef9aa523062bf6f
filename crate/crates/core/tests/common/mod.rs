//! Brute-force oracles and random generators shared by the integration tests.
//! The oracles use plain `u128` arithmetic and none of the library's mod-p code.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use seqgroup::{GroupElement, ParamPair, Rational, RingElement};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, b, p);
        }
        b = mulm(b, b, p);
        e >>= 1;
    }
    acc
}

fn big_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// `num · den^(p-2) mod p`, or `None` when `p` divides the denominator.
pub fn residue(r: &Rational, p: u64) -> Option<u64> {
    let d = big_mod(r.denom(), p);
    if d == 0 {
        return None;
    }
    Some(mulm(big_mod(r.numer(), p), powm(d, p - 2, p), p))
}

pub fn trial_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..hi).filter(|&n| trial_prime(n)).collect()
}

/// Odd prime avoiding numerator and denominator of `t` and `t² - 4`.
pub fn admissible(t: &Rational, p: u64) -> bool {
    if p == 2 || !trial_prime(p) {
        return false;
    }
    let delta = t * t - Rational::from(4);
    [t.numer(), t.denom(), delta.numer(), delta.denom()]
        .iter()
        .all(|n| big_mod(n, p) != 0)
}

/// Terms of the sequence of `x` mod `p`, scanning one full period of the
/// companion matrix (its order divides `p - 1` or `p + 1`).
pub fn scan_divides(x: &GroupElement, p: u64) -> bool {
    let t = residue(x.context().trace(), p).unwrap();
    let (mut prev, mut cur) = (big_mod(x.a0(), p), big_mod(x.a1(), p));
    if prev == 0 {
        return true;
    }
    for _ in 0..p + 2 {
        if cur == 0 {
            return true;
        }
        let next = (mulm(t, cur, p) + p - prev) % p;
        prev = cur;
        cur = next;
    }
    false
}

fn det_mod(a0: u64, a1: u64, t: u64, p: u64) -> u64 {
    (mulm(a1, a1, p) + mulm(a0, a0, p) + p - mulm(t, mulm(a0, a1, p), p)) % p
}

/// Number of nonsingular projective classes `[a0 : a1]` mod `p`.
pub fn brute_group_order(t: &Rational, p: u64) -> u64 {
    let tp = residue(t, p).unwrap();
    // [1 : 0] has determinant 1
    1 + (0..p).filter(|&a0| det_mod(a0, 1, tp, p) != 0).count() as u64
}

fn proj_mul(x: (u64, u64), y: (u64, u64), t: u64, p: u64) -> (u64, u64) {
    let x0y0 = mulm(x.0, y.0, p);
    let z0 = (mulm(x.1, y.0, p) + mulm(x.0, y.1, p) + p - mulm(t, x0y0, p)) % p;
    let z1 = (mulm(x.1, y.1, p) + p - x0y0) % p;
    (z0, z1)
}

fn proj_eq(x: (u64, u64), y: (u64, u64), p: u64) -> bool {
    mulm(x.0, y.1, p) == mulm(x.1, y.0, p)
}

/// Order of `[a0 : a1]` by repeated multiplication.
pub fn brute_order(a0: u64, a1: u64, t: &Rational, p: u64) -> u64 {
    let tp = residue(t, p).unwrap();
    let x = (a0 % p, a1 % p);
    let mut acc = x;
    let mut n = 1;
    while !proj_eq(acc, (0, 1), p) {
        acc = proj_mul(acc, x, tp, p);
        n += 1;
        assert!(n <= 2 * p + 2, "runaway order");
    }
    n
}

/// `Γ_X` on the primes of `window` admissible for the context of `x`.
pub fn scan_gamma(x: &GroupElement, window: &[u64]) -> Vec<u64> {
    let t = x.context().trace().clone();
    window
        .iter()
        .copied()
        .filter(|&p| admissible(&t, p))
        .filter(|&p| {
            let tp = residue(&t, p).unwrap();
            det_mod(big_mod(x.a0(), p), big_mod(x.a1(), p), tp, p) != 0 && scan_divides(x, p)
        })
        .collect()
}

pub fn euler_qr(a: u64, p: u64) -> bool {
    powm(a, (p - 1) / 2, p) == 1
}

/// A random nonsingular class with small integer entries.
pub fn random_element<R: Rng>(rng: &mut R, ctx: &ParamPair, bound: i64) -> GroupElement {
    loop {
        let a0 = rng.gen_range(-bound..=bound);
        let a1 = rng.gen_range(-bound..=bound);
        if let Ok(g) = GroupElement::from_ints(ctx, a0, a1) {
            return g;
        }
    }
}

pub fn random_ring<R: Rng>(rng: &mut R, ctx: &ParamPair, bound: i64) -> RingElement {
    loop {
        let x = RingElement::from_ints(
            ctx.clone(),
            rng.gen_range(-bound..=bound),
            rng.gen_range(-bound..=bound),
        );
        if !x.det().is_zero() {
            return x;
        }
    }
}

fn admissible_t(t: &Rational) -> bool {
    ![-2i64, -1, 0, 1, 2].iter().any(|v| *t == *v)
}

/// Random admissible `t = n/d` with small height.
pub fn random_t<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let t = q(rng.gen_range(-30..=30), rng.gen_range(1..=9));
        if admissible_t(&t) {
            return t;
        }
    }
}

/// `(t, a)` with `t² + a² = 4`, from the rational parametrization of the circle.
pub fn random_circular<R: Rng>(rng: &mut R) -> (Rational, Rational) {
    loop {
        let m = q(rng.gen_range(1..=12), rng.gen_range(1..=12));
        let one = Rational::one();
        let den = &one + &m * &m;
        let t = Rational::from(2) * (&one - &m * &m) / &den;
        let a = Rational::from(4) * &m / den;
        if admissible_t(&t) {
            return (t, a);
        }
    }
}

/// `(t, a)` with `t² + t a + a² = 3`, through the rational point `(1, 1)`.
pub fn random_cubic<R: Rng>(rng: &mut R) -> (Rational, Rational) {
    loop {
        let m = q(rng.gen_range(-12..=12), rng.gen_range(1..=12));
        let one = Rational::one();
        let s = Rational::from(-3) * (&one + &m) / (&one + &m + &m * &m);
        let t = &one + &s;
        let a = &one + &m * &s;
        if admissible_t(&t) && !a.is_zero() {
            return (t, a);
        }
    }
}
