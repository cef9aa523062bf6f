//! The sequence group modulo an odd prime `p`.
//!
//! For `p` outside the primes dividing the numerator or denominator of `t`
//! and of `δ = t² - 4`, the projective classes of nonsingular sequences mod
//! `p` form a cyclic group of order `N = p - 1` when `δ` is a quadratic
//! residue and `N = p + 1` otherwise. Element orders come from descending
//! through the prime factors of `N`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::{factorize_u64, inv_mod, is_prime, is_qr, mul_mod};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::rational::Rational;
use crate::ring::ensure_admissible;

/// `p` is an odd prime avoiding the numerators and denominators of `t`
/// and `t² - 4`.
pub fn in_pi_t(t: &Rational, p: u64) -> bool {
    if p == 2 || !is_prime(p) {
        return false;
    }
    let delta = t * t - Rational::from(4);
    let pb = BigInt::from(p);
    [t.numer(), t.denom(), delta.numer(), delta.denom()]
        .iter()
        .all(|n| !n.is_multiple_of(&pb))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModpContext {
    pub p: u64,
    pub t_p: u64,
    pub delta_p: u64,
    /// The group order, `p - 1` or `p + 1`.
    pub n: u64,
    pub n_factors: Vec<(u64, u32)>,
}

/// A projective class mod `p`, normalized to `[a0, 1]` or `[1, 0]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModpElement {
    pub a0: u64,
    pub a1: u64,
}

pub fn modp_context(t: &Rational, p: u64) -> Result<ModpContext> {
    ensure_admissible(t)?;
    if p < 3 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if !in_pi_t(t, p) {
        return Err(Error::ExcludedPrime { p, t: t.clone() });
    }
    let t_p = t.residue(p).expect("p does not divide the denominator");
    let delta_p = (mul_mod(t_p, t_p, p) + p - 4 % p) % p;
    let n = if is_qr(delta_p, p) { p - 1 } else { p + 1 };
    Ok(ModpContext {
        p,
        t_p,
        delta_p,
        n,
        n_factors: factorize_u64(n),
    })
}

fn big_residue(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

impl ModpContext {
    /// `a1² - t a1 a0 + a0²`
    pub fn det(&self, a0: u64, a1: u64) -> u64 {
        let p = self.p;
        let s = mul_mod(a1, a1, p) + mul_mod(a0, a0, p);
        let m = mul_mod(self.t_p, mul_mod(a1, a0, p), p);
        (s % p + p - m) % p
    }

    /// The class of `[a0, a1]`; singular classes are rejected.
    pub fn element(&self, a0: u64, a1: u64) -> Result<ModpElement> {
        let (a0, a1) = (a0 % self.p, a1 % self.p);
        if self.det(a0, a1) == 0 {
            return Err(Error::SingularModP(self.p));
        }
        Ok(self.normalize(a0, a1))
    }

    fn normalize(&self, a0: u64, a1: u64) -> ModpElement {
        if a1 == 0 {
            ModpElement { a0: 1, a1: 0 }
        } else {
            let inv = inv_mod(a1, self.p).expect("p is prime");
            ModpElement {
                a0: mul_mod(a0, inv, self.p),
                a1: 1,
            }
        }
    }

    /// Reduction of a class of the sequence group at the same `t`.
    pub fn reduce(&self, x: &GroupElement) -> Result<ModpElement> {
        if !x.context().is_one_param() {
            return Err(Error::NotOneParameter);
        }
        self.element(big_residue(x.a0(), self.p), big_residue(x.a1(), self.p))
    }

    /// Determinant of a reduced representative mod `p`.
    pub fn det_of(&self, x: &GroupElement) -> u64 {
        self.det(big_residue(x.a0(), self.p), big_residue(x.a1(), self.p))
    }

    pub fn identity(&self) -> ModpElement {
        ModpElement { a0: 0, a1: 1 }
    }

    pub fn companion(&self) -> ModpElement {
        self.normalize(1, self.t_p)
    }

    /// `W = [-1, 1]`
    pub fn w(&self) -> ModpElement {
        ModpElement {
            a0: self.p - 1,
            a1: 1,
        }
    }

    /// `V = [1, 1]`
    pub fn v(&self) -> ModpElement {
        ModpElement { a0: 1, a1: 1 }
    }

    /// `C = [2, t]`
    pub fn c(&self) -> ModpElement {
        self.normalize(2, self.t_p)
    }

    pub fn mul(&self, x: ModpElement, y: ModpElement) -> ModpElement {
        let p = self.p;
        let x0y0 = mul_mod(x.a0, y.a0, p);
        let z0 = (mul_mod(x.a1, y.a0, p) + mul_mod(x.a0, y.a1, p)) % p;
        let z0 = (z0 + p - mul_mod(self.t_p, x0y0, p)) % p;
        let z1 = (mul_mod(x.a1, y.a1, p) + p - x0y0) % p;
        self.normalize(z0, z1)
    }

    pub fn pow(&self, x: ModpElement, mut e: u64) -> ModpElement {
        let mut acc = self.identity();
        let mut b = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// The multiplicative order, dividing `N`.
    pub fn order(&self, x: ModpElement) -> u64 {
        let id = self.identity();
        let mut ord = self.n;
        for &(q, _) in &self.n_factors {
            while ord.is_multiple_of(q) && self.pow(x, ord / q) == id {
                ord /= q;
            }
        }
        debug_assert_eq!(self.pow(x, ord), id);
        ord
    }
}

fn context_for(x: &GroupElement, p: u64) -> Result<ModpContext> {
    if !x.context().is_one_param() {
        return Err(Error::NotOneParameter);
    }
    modp_context(x.context().trace(), p)
}

/// `p` divides some term of the sequence of `x`: the order of `x` mod `p`
/// divides that of `D`. False when the determinant vanishes mod `p`.
pub fn is_divisor(x: &GroupElement, p: u64) -> Result<bool> {
    let ctx = context_for(x, p)?;
    is_divisor_in(&ctx, x)
}

/// [`is_divisor`] with a prepared context.
pub fn is_divisor_in(ctx: &ModpContext, x: &GroupElement) -> Result<bool> {
    if ctx.det_of(x) == 0 {
        return Ok(false);
    }
    let e = ctx.reduce(x)?;
    let d = ctx.order(ctx.companion());
    Ok(d.is_multiple_of(ctx.order(e)))
}

/// The index of appearance: the order of `W` mod `p`.
pub fn xi(t: &Rational, p: u64) -> Result<u64> {
    let ctx = modp_context(t, p)?;
    Ok(ctx.order(ctx.w()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Trichotomy {
    W,
    V,
    C,
}

/// The one class among `W, V, C` whose sequence `p` divides, read off
/// from the index of appearance mod 4.
pub fn trichotomy_class(t: &Rational, p: u64) -> Result<Trichotomy> {
    Ok(trichotomy_from_xi(xi(t, p)?))
}

pub fn trichotomy_from_xi(xi: u64) -> Trichotomy {
    match xi % 4 {
        1 | 3 => Trichotomy::W,
        2 => Trichotomy::V,
        _ => Trichotomy::C,
    }
}

/// Euler test of the determinant of the reduced representative mod `p`.
/// Every prime divisor of the sequence passes it.
pub fn qr_filter(x: &GroupElement, p: u64) -> Result<bool> {
    let ctx = context_for(x, p)?;
    let det = ctx.det_of(x);
    if det == 0 {
        return Err(Error::SingularModP(p));
    }
    Ok(is_qr(det, p))
}
