//! The sequence group: ring elements up to a rational factor, with the
//! singular ones removed.
//!
//! Each class is stored through its reduced representative: coprime
//! integers `[a0, a1]` with `a1 > 0`, or `a1 = 0` and `a0 > 0`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::divisors;
use crate::error::{Error, Result};
use crate::primes::primes_below;
use crate::rational::{exact_nth_root, Rational};
use crate::ring::{chebyshev_c, ensure_admissible, ParamPair, RingElement};
use crate::transforms::{classify_cyclotomic, CyclotomicClass};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    context: ParamPair,
    #[serde(with = "crate::serde_int")]
    a0: BigInt,
    #[serde(with = "crate::serde_int")]
    a1: BigInt,
}

/// The reduced representative of the class of `x`.
pub fn reduce(x: &RingElement) -> Result<GroupElement> {
    if x.det().is_zero() {
        return Err(Error::Singular);
    }
    let l = x.x0().denom().lcm(x.x1().denom());
    let mut a0 = x.x0().numer() * (&l / x.x0().denom());
    let mut a1 = x.x1().numer() * (&l / x.x1().denom());
    let g = a0.gcd(&a1);
    a0 /= &g;
    a1 /= &g;
    if a1.is_negative() || (a1.is_zero() && a0.is_negative()) {
        a0 = -a0;
        a1 = -a1;
    }
    Ok(GroupElement {
        context: x.ctx().clone(),
        a0,
        a1,
    })
}

impl GroupElement {
    pub fn from_ints(ctx: &ParamPair, a0: i64, a1: i64) -> Result<Self> {
        reduce(&RingElement::from_ints(ctx.clone(), a0, a1))
    }

    pub fn from_ring(x: &RingElement) -> Result<Self> {
        reduce(x)
    }

    pub fn identity(ctx: &ParamPair) -> Self {
        reduce(&RingElement::identity(ctx)).expect("det I = 1")
    }

    pub fn companion(ctx: &ParamPair) -> Self {
        reduce(&RingElement::companion(ctx)).expect("det D = Q != 0")
    }

    /// `D^k`
    pub fn companion_pow(ctx: &ParamPair, k: i64) -> Self {
        reduce(&RingElement::companion_pow(ctx, k)).expect("det D = Q != 0")
    }

    pub fn c(ctx: &ParamPair) -> Result<Self> {
        reduce(&RingElement::c(ctx))
    }

    pub fn w(ctx: &ParamPair) -> Result<Self> {
        reduce(&RingElement::w(ctx))
    }

    pub fn v(ctx: &ParamPair) -> Result<Self> {
        reduce(&RingElement::v(ctx))
    }

    pub fn context(&self) -> &ParamPair {
        &self.context
    }

    pub fn a0(&self) -> &BigInt {
        &self.a0
    }

    pub fn a1(&self) -> &BigInt {
        &self.a1
    }

    pub fn pair(&self) -> [BigInt; 2] {
        [self.a0.clone(), self.a1.clone()]
    }

    pub fn to_ring(&self) -> RingElement {
        RingElement::new(
            self.context.clone(),
            Rational::from(self.a0.clone()),
            Rational::from(self.a1.clone()),
        )
    }

    /// Determinant of the reduced representative. Rational when the
    /// parameters are.
    pub fn det(&self) -> Rational {
        self.to_ring().det()
    }

    /// `max(|a0|, |a1|)`
    pub fn height(&self) -> BigInt {
        self.a0.abs().max(self.a1.abs())
    }

    pub fn is_identity(&self) -> bool {
        self.a0.is_zero()
    }

    pub fn mul(&self, other: &GroupElement) -> Result<Self> {
        reduce(&self.to_ring().mul(&other.to_ring())?)
    }

    /// Through `[x0, Q x_{-1}]`, since `[x0, x1]·[x0, Q x_{-1}] = -(det X) I`.
    pub fn inv(&self) -> Self {
        let x = self.to_ring();
        let z = RingElement::new(
            self.context.clone(),
            x.x0().clone(),
            self.context.norm() * x.x_minus1(),
        );
        reduce(&z).expect("inverse of a nonsingular class is nonsingular")
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut acc = RingElement::identity(&self.context);
        let mut b = base.to_ring();
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = reduce(&acc.mul_unchecked(&b)).unwrap().to_ring();
            }
            e >>= 1;
            if e > 0 {
                b = reduce(&b.mul_unchecked(&b)).unwrap().to_ring();
            }
        }
        reduce(&acc).unwrap()
    }

    /// `X D^k`
    pub fn shift(&self, k: i64) -> Self {
        reduce(&self.to_ring().shift(k)).expect("shift preserves nonsingularity")
    }

    /// The order of the class when it is one of the orders a torsion class
    /// can have (1, 2, 3, 4, 6); `None` means infinite order.
    pub fn finite_order(&self) -> Option<u32> {
        [1u32, 2, 3, 4, 6]
            .into_iter()
            .find(|&n| self.pow(n as i64).is_identity())
    }

    /// The square roots of the class: empty, or exactly two classes.
    pub fn sqrt(&self) -> Vec<GroupElement> {
        let Some(lambda) = self.det().sqrt() else {
            return Vec::new();
        };
        let ctx = &self.context;
        let y0 = Rational::from(self.a0.clone());
        let y1 = Rational::from(self.a1.clone());
        // Row eigenvectors of [[-y1, Q y0 - T y1], [y0, y1]].
        let b = ctx.norm() * &y0 - ctx.trace() * &y1;
        let mut roots = Vec::with_capacity(2);
        for lam in [lambda.clone(), -lambda] {
            let first = RingElement::new(ctx.clone(), y0.clone(), &y1 + &lam);
            let cand = if first.is_zero() {
                RingElement::new(ctx.clone(), &y1 - &lam, -b.clone())
            } else {
                first
            };
            let Ok(x) = reduce(&cand) else { continue };
            debug_assert!(x.pow(2) == *self);
            if !roots.contains(&x) {
                roots.push(x);
            }
        }
        roots
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}]", self.a0, self.a1)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}]@{:?}", self.a0, self.a1, self.context)
    }
}

/// Named torsion class of the sequence group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TorsionName {
    I,
    C,
    G,
    H,
    S,
    R,
    Y,
    Z,
}

impl fmt::Display for TorsionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionEntry {
    pub name: TorsionName,
    pub element: GroupElement,
    pub order: u32,
}

fn bracket(t: &Rational, second: Rational) -> GroupElement {
    reduce(&RingElement::new(ParamPair::one_param(t.clone()), Rational::from(2), second))
        .expect("torsion classes are nonsingular")
}

/// The elements of finite order of the sequence group at `t`, identity
/// excluded. `C` always; `G, H` in the circular case; `S, R, Y, Z` in the
/// cubic case.
pub fn torsion_l(t: &Rational) -> Result<Vec<TorsionEntry>> {
    ensure_admissible(t)?;
    let entry = |name, element, order| TorsionEntry {
        name,
        element,
        order,
    };
    let mut out = vec![entry(TorsionName::C, bracket(t, t.clone()), 2)];
    match classify_cyclotomic(t)? {
        CyclotomicClass::Generic => {}
        CyclotomicClass::Circular { a } => {
            out.push(entry(TorsionName::G, bracket(t, t + &a), 4));
            out.push(entry(TorsionName::H, bracket(t, t - &a), 4));
        }
        CyclotomicClass::Cubic { f, .. } => {
            let three_f = Rational::from(3) * &f;
            out.push(entry(TorsionName::S, bracket(t, t + &f), 3));
            out.push(entry(TorsionName::R, bracket(t, t - &f), 3));
            out.push(entry(TorsionName::Y, bracket(t, t + &three_f), 6));
            out.push(entry(TorsionName::Z, bracket(t, t - three_f), 6));
        }
    }
    Ok(out)
}

/// `t = sign · C_r(u)`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitivityWitness {
    pub r: u32,
    pub u: Rational,
    pub sign: i8,
}

impl PrimitivityWitness {
    pub fn holds(&self, t: &Rational) -> bool {
        let c = chebyshev_c(&self.u, self.r as i64);
        if self.sign < 0 {
            -c == *t
        } else {
            c == *t
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitivityReport {
    pub t: Rational,
    pub is_primitive: bool,
    pub witnesses: Vec<PrimitivityWitness>,
    /// Present for circular `t`: primitive and `2(2+t)` not a square.
    pub circular_primitive: Option<bool>,
    /// Largest prime `r` examined; no witness can exist beyond it.
    pub r_bound: u32,
}

/// Witnesses `t = ±C_r(u)` for every prime `r`.
///
/// For `r = 2` this is a square test on `2 ± t`. For odd `r`, `C_r` is odd so
/// only `t = C_r(u)` is needed; `C_r(p/q)` has denominator exactly `q^r`, so
/// `q` is the `r`-th root of the denominator of `t` and the numerator `p`
/// divides that of `t`. Integer `u` with `|u| >= 3` has `|C_r(u)| > 2^r`,
/// which bounds `r` by the bit length of the numerator.
pub fn primitivity(t: &Rational) -> Result<PrimitivityReport> {
    ensure_admissible(t)?;
    let num = t.numer().clone();
    let den = t.denom().clone();
    let r_bound = (num.bits().max(den.bits()) + 2) as u32;
    let mut witnesses = Vec::new();
    let two = Rational::from(2);
    if let Some(u) = (&two + t).sqrt() {
        witnesses.push(PrimitivityWitness { r: 2, u, sign: 1 });
    }
    if let Some(u) = (&two - t).sqrt() {
        witnesses.push(PrimitivityWitness { r: 2, u, sign: -1 });
    }
    for r in primes_below(r_bound as u64 + 1).into_iter().skip(1) {
        let r = r as u32;
        let Some(q) = exact_nth_root(&den, r) else {
            continue;
        };
        for d in divisors(&num) {
            for p in [d.clone(), -d] {
                if !p.gcd(&q).is_one() {
                    continue;
                }
                let u = Rational::new(p, q.clone());
                if chebyshev_c(&u, r as i64) == *t {
                    witnesses.push(PrimitivityWitness { r, u, sign: 1 });
                }
            }
        }
    }
    debug_assert!(witnesses.iter().all(|w| w.holds(t)));
    let is_primitive = witnesses.is_empty();
    let circular_primitive = match classify_cyclotomic(t)? {
        CyclotomicClass::Circular { .. } => {
            Some(is_primitive && !(Rational::from(2) * (&two + t)).is_square())
        }
        _ => None,
    };
    Ok(PrimitivityReport {
        t: t.clone(),
        is_primitive,
        witnesses,
        circular_primitive,
        r_bound,
    })
}

/// `t = sign · C_m(u)` with `u` primitive and `m` maximal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub m: u64,
    pub u: Rational,
    pub sign: i8,
}

/// Chains primitivity witnesses down to a primitive base, using
/// `C_a(C_b(u)) = C_{ab}(u)` and `C_m(-x) = (-1)^m C_m(x)`.
pub fn decompose(t: &Rational) -> Result<Decomposition> {
    let report = primitivity(t)?;
    let mut best = Decomposition {
        m: 1,
        u: t.clone(),
        sign: 1,
    };
    for w in &report.witnesses {
        // t = w.sign · C_r(u) and u = s · C_m(v) give
        // t = w.sign · s^r · C_{rm}(v).
        let inner = decompose(&w.u)?;
        let s_r = if inner.sign < 0 && w.r % 2 == 1 { -1 } else { 1 };
        let cand = Decomposition {
            m: inner.m * w.r as u64,
            u: inner.u,
            sign: w.sign * s_r,
        };
        if cand.m > best.m {
            best = cand;
        }
    }
    Ok(best)
}

/// Largest `l` with `x = ±C_{2^l}(v)`, by repeated `w² = x + 2`.
pub fn two_power_depth(x: &Rational) -> u32 {
    fn depth(x: &Rational) -> u32 {
        if [-2i64, -1, 0, 1, 2].iter().any(|&v| *x == v) {
            return 0;
        }
        match (x + Rational::from(2)).sqrt() {
            Some(w) => 1 + depth(&w).max(depth(&-w)),
            None => 0,
        }
    }
    depth(x).max(depth(&-x))
}
