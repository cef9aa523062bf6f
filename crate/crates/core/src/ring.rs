//! The commutative ring of 2×2 rational matrices commuting with the
//! companion matrix `D = [[0, -Q], [1, T]]`.
//!
//! Every element is determined by its second row `[x0, x1]`, and that row
//! seeds the two-sided sequence `x_{n+1} = T x_n - Q x_{n-1}`:
//!
//! ```text
//!   X = [[-Q x_{-1}, -Q x0],
//!        [   x0,        x1]]        x_{-1} = (T x0 - x1) / Q
//! ```
//!
//! `X · D^n` has second row `[x_n, x_{n+1}]`, which is how terms are
//! evaluated.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A parameter pair `(T, Q)`. One-parameter contexts are stored as `(t, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParamPair {
    #[serde(rename = "T")]
    trace: Rational,
    #[serde(rename = "Q")]
    norm: Rational,
}

impl ParamPair {
    /// A two-parameter context; both `T` and `Q` must be nonzero.
    pub fn new(trace: Rational, norm: Rational) -> Result<Self> {
        if trace.is_zero() || norm.is_zero() {
            return Err(Error::InvalidContext);
        }
        Ok(ParamPair { trace, norm })
    }

    /// The one-parameter context `(t, 1)`. Any rational `t` is accepted here;
    /// the excluded values only matter to the group and divisor layers.
    pub fn one_param(t: Rational) -> Self {
        ParamPair {
            trace: t,
            norm: Rational::one(),
        }
    }

    pub fn from_ints(trace: i64, norm: i64) -> Result<Self> {
        Self::new(trace.into(), norm.into())
    }

    /// `T`
    pub fn trace(&self) -> &Rational {
        &self.trace
    }

    /// `Q = det D`
    pub fn norm(&self) -> &Rational {
        &self.norm
    }

    pub fn is_one_param(&self) -> bool {
        self.norm.is_one()
    }

    /// `Δ = T² - 4Q`
    pub fn discriminant(&self) -> Rational {
        &self.trace * &self.trace - Rational::from(4) * &self.norm
    }

    /// `t = T²/Q - 2`, the similarity invariant.
    pub fn t(&self) -> Rational {
        &self.trace * &self.trace / &self.norm - Rational::from(2)
    }

    pub(crate) fn check_same(&self, other: &ParamPair) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for ParamPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one_param() {
            write!(f, "t={}", self.trace)
        } else {
            write!(f, "({},{})", self.trace, self.norm)
        }
    }
}

impl fmt::Debug for ParamPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.trace, self.norm)
    }
}

/// An element `[x0, x1]` of the ring for a fixed parameter context.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingElement {
    ctx: ParamPair,
    x0: Rational,
    x1: Rational,
}

impl RingElement {
    pub fn new(ctx: ParamPair, x0: Rational, x1: Rational) -> Self {
        RingElement { ctx, x0, x1 }
    }

    pub fn from_ints(ctx: ParamPair, x0: i64, x1: i64) -> Self {
        RingElement::new(ctx, x0.into(), x1.into())
    }

    /// `I = [0, 1]`, the sequence `U_n` in the one-parameter case.
    pub fn identity(ctx: &ParamPair) -> Self {
        RingElement::new(ctx.clone(), Rational::zero(), Rational::one())
    }

    /// The companion matrix `D = [1, T]`.
    pub fn companion(ctx: &ParamPair) -> Self {
        RingElement::new(ctx.clone(), Rational::one(), ctx.trace.clone())
    }

    /// `C = [2, T]`, the trace-free element with `C² = Δ·I`.
    pub fn c(ctx: &ParamPair) -> Self {
        RingElement::new(ctx.clone(), Rational::from(2), ctx.trace.clone())
    }

    /// `W = [-1, 1]`
    pub fn w(ctx: &ParamPair) -> Self {
        RingElement::from_ints(ctx.clone(), -1, 1)
    }

    /// `V = [1, 1]`
    pub fn v(ctx: &ParamPair) -> Self {
        RingElement::from_ints(ctx.clone(), 1, 1)
    }

    pub fn ctx(&self) -> &ParamPair {
        &self.ctx
    }

    pub fn x0(&self) -> &Rational {
        &self.x0
    }

    pub fn x1(&self) -> &Rational {
        &self.x1
    }

    pub fn with_ctx(self, ctx: ParamPair) -> Self {
        RingElement { ctx, ..self }
    }

    /// `x_{-1} = (T x0 - x1) / Q`
    pub fn x_minus1(&self) -> Rational {
        (&self.ctx.trace * &self.x0 - &self.x1) / &self.ctx.norm
    }

    /// The full matrix, rows first.
    pub fn matrix(&self) -> [[Rational; 2]; 2] {
        let q = &self.ctx.norm;
        [
            [-(q * self.x_minus1()), -(q * &self.x0)],
            [self.x0.clone(), self.x1.clone()],
        ]
    }

    /// `x1² - T x1 x0 + Q x0²`
    pub fn det(&self) -> Rational {
        let (t, q) = (&self.ctx.trace, &self.ctx.norm);
        &self.x1 * &self.x1 - t * &self.x1 * &self.x0 + q * &self.x0 * &self.x0
    }

    /// `2 x1 - T x0`
    pub fn trace(&self) -> Rational {
        Rational::from(2) * &self.x1 - &self.ctx.trace * &self.x0
    }

    pub fn is_zero(&self) -> bool {
        self.x0.is_zero() && self.x1.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RingElement::new(self.ctx.clone(), c * &self.x0, c * &self.x1)
    }

    /// `XY = [x1 y0 + x0 y1 - T x0 y0, x1 y1 - Q x0 y0]`
    pub fn mul(&self, other: &RingElement) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &RingElement) -> Self {
        let (t, q) = (&self.ctx.trace, &self.ctx.norm);
        let x0y0 = &self.x0 * &other.x0;
        let z0 = &self.x1 * &other.x0 + &self.x0 * &other.x1 - t * &x0y0;
        let z1 = &self.x1 * &other.x1 - q * &x0y0;
        RingElement::new(self.ctx.clone(), z0, z1)
    }

    pub fn add(&self, other: &RingElement) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        Ok(RingElement::new(
            self.ctx.clone(),
            &self.x0 + &other.x0,
            &self.x1 + &other.x1,
        ))
    }

    /// `X^{-1} = [-x0, -Q x_{-1}] / det X`
    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::Singular);
        }
        Ok(self.conjugate_unchecked().scale(&det.recip()))
    }

    /// The field conjugation `X ↦ (det X) X^{-1} = [-x0, -Q x_{-1}]`,
    /// representing the sequence `-Q^n x_{-n}`.
    pub fn conjugate(&self) -> Result<Self> {
        if self.det().is_zero() {
            return Err(Error::Singular);
        }
        Ok(self.conjugate_unchecked())
    }

    fn conjugate_unchecked(&self) -> Self {
        let y1 = -(&self.ctx.norm * self.x_minus1());
        RingElement::new(self.ctx.clone(), -&self.x0, y1)
    }

    /// `X^k`; negative `k` requires an invertible element.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        Ok(pow_nonneg(&base, k.unsigned_abs()))
    }

    /// `D^n` for the given context.
    pub fn companion_pow(ctx: &ParamPair, n: i64) -> Self {
        RingElement::companion(ctx)
            .pow(n)
            .expect("companion matrix is invertible since Q != 0")
    }

    /// `x_n`, via `[x_n, x_{n+1}] = [x0, x1] · D^n` with `D^n` built by
    /// binary exponentiation.
    pub fn term(&self, n: i64) -> Rational {
        match n {
            0 => self.x0.clone(),
            1 => self.x1.clone(),
            _ => self
                .mul_unchecked(&RingElement::companion_pow(&self.ctx, n))
                .x0,
        }
    }

    /// The shifted element `X·D^n = [x_n, x_{n+1}]`.
    pub fn shift(&self, n: i64) -> Self {
        self.mul_unchecked(&RingElement::companion_pow(&self.ctx, n))
    }

    /// Terms `x_from ..= x_to` by stepping the scalar recursion both ways.
    pub fn terms(&self, from: i64, to: i64) -> Vec<Rational> {
        if from > to {
            return Vec::new();
        }
        let (t, q) = (&self.ctx.trace, &self.ctx.norm);
        // Walk to the start index, then forward.
        let (mut a, mut b) = (self.x0.clone(), self.x1.clone()); // (x_i, x_{i+1})
        let mut i = 0i64;
        while i > from {
            let prev = (t * &a - &b) / q;
            b = a;
            a = prev;
            i -= 1;
        }
        while i < from {
            let next = t * &b - q * &a;
            a = b;
            b = next;
            i += 1;
        }
        let mut out = Vec::with_capacity((to - from + 1) as usize);
        out.push(a.clone());
        while i < to {
            let next = t * &b - q * &a;
            a = b;
            b = next;
            out.push(a.clone());
            i += 1;
        }
        out
    }

    /// Equality up to a nonzero rational factor.
    pub fn proj_eq(&self, other: &RingElement) -> bool {
        self.ctx == other.ctx && &self.x0 * &other.x1 == &self.x1 * &other.x0
    }
}

fn pow_nonneg(base: &RingElement, mut e: u64) -> RingElement {
    let mut acc = RingElement::identity(&base.ctx);
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul_unchecked(&b);
        }
        e >>= 1;
        if e > 0 {
            b = b.mul_unchecked(&b);
        }
    }
    acc
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}]", self.x0, self.x1)
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}]@{:?}", self.x0, self.x1, self.ctx)
    }
}

/// Rejects the parameters `t ∈ {0, ±1, ±2}`, the only rational zeros of the
/// `U_n`. The group and divisor layers work only away from these.
pub fn ensure_admissible(t: &Rational) -> Result<()> {
    let excluded = [-2i64, -1, 0, 1, 2].iter().any(|&v| *t == v);
    if excluded {
        Err(Error::ExcludedParameter(t.clone()))
    } else {
        Ok(())
    }
}

/// `U_n(t)` with `U_0 = 0`, `U_1 = 1`, `U_{n+1} = t U_n - U_{n-1}`, any integer `n`.
pub fn chebyshev_u(t: &Rational, n: i64) -> Rational {
    RingElement::companion_pow(&ParamPair::one_param(t.clone()), n).x0
}

/// `C_n(t) = tr D_t^n` (monic: `C_0 = 2`, `C_1 = t`).
pub fn chebyshev_c(t: &Rational, n: i64) -> Rational {
    RingElement::companion_pow(&ParamPair::one_param(t.clone()), n).trace()
}

/// Integer coefficients of `C_r(u)`, lowest degree first.
pub fn chebyshev_c_coeffs(r: usize) -> Vec<BigInt> {
    let mut prev = vec![BigInt::from(2)];
    if r == 0 {
        return prev;
    }
    let mut cur = vec![BigInt::zero(), BigInt::one()];
    for _ in 1..r {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}
