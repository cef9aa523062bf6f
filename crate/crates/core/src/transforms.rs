//! Ring isomorphisms between sequence rings and the recombination of
//! sequences they induce.
//!
//! - [`phi`]: `R(T,Q) → R(t)`, splitting a sequence into its even and odd terms.
//! - [`psi`]: `R(t) → R(-t)`, transposition.
//! - [`phi_r`]: `R(t) → R(C_r(t))`, the `r`-fold split.
//! - [`theta_circular`], [`theta_cubic`]: `R(t) → R(a)` for associate parameters.
//!
//! Recombination goes the other way: interleaving sequences for `t` into one
//! sequence for a related parameter.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, squarefree_split};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::ring::{chebyshev_c, chebyshev_u, ensure_admissible, ParamPair, RingElement};

fn require_one_param(x: &RingElement) -> Result<Rational> {
    if x.ctx().is_one_param() {
        Ok(x.ctx().trace().clone())
    } else {
        Err(Error::NotOneParameter)
    }
}

fn sign(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `Φ(X) = T^{-1} [Q x0, x2]` in `R(t)`, `t = T²/Q - 2`.
pub fn phi(x: &RingElement) -> Result<RingElement> {
    let ctx = x.ctx();
    if ctx.trace().is_zero() {
        return Err(Error::InvalidContext);
    }
    let target = ParamPair::one_param(ctx.t());
    let inv_t = ctx.trace().recip();
    Ok(RingElement::new(
        target,
        &inv_t * ctx.norm() * x.x0(),
        inv_t * x.term(2),
    ))
}

/// Inverse of [`phi`] onto the given pair: `Φ^{-1}[y0, y1] = [T y0 / Q, y0 + y1]`.
pub fn phi_inverse(y: &RingElement, target: &ParamPair) -> Result<RingElement> {
    let t = require_one_param(y)?;
    if target.t() != t {
        return Err(Error::ParameterRelation(format!(
            "T²/Q - 2 = {} for {target:?}, expected {t}",
            target.t()
        )));
    }
    Ok(RingElement::new(
        target.clone(),
        target.trace() * y.x0() / target.norm(),
        y.x0() + y.x1(),
    ))
}

/// Transposition `R(t) → R(-t)`: `[x0, x1] ↦ [-x0, x1]`, the sequence `(-1)^{n+1} x_n`.
pub fn psi(x: &RingElement) -> Result<RingElement> {
    let t = require_one_param(x)?;
    Ok(RingElement::new(
        ParamPair::one_param(-t),
        -x.x0(),
        x.x1().clone(),
    ))
}

/// `Φ_r(X) = U_r(t)^{-1} [x0, x_r]` in `R(C_r(t))`.
pub fn phi_r(x: &RingElement, r: u32) -> Result<RingElement> {
    let t = require_one_param(x)?;
    if r == 0 {
        return Err(Error::Degenerate("r must be positive".into()));
    }
    let u_r = chebyshev_u(&t, r as i64);
    if u_r.is_zero() {
        return Err(Error::Degenerate(format!("U_{r}({t}) = 0")));
    }
    let target = ParamPair::one_param(chebyshev_c(&t, r as i64));
    let inv = u_r.recip();
    Ok(RingElement::new(
        target,
        &inv * x.x0(),
        inv * x.term(r as i64),
    ))
}

/// `(T1,Q1)` and `(T2,Q2)` are similar when `T1² Q2 = T2² Q1`.
pub fn similar(a: &ParamPair, b: &ParamPair) -> bool {
    a.trace() * a.trace() * b.norm() == b.trace() * b.trace() * a.norm()
}

/// Integer `T, Q` with no prime `p | T` such that `p² | Q`.
pub fn is_simple(pair: &ParamPair) -> bool {
    if !pair.trace().is_integer() || !pair.norm().is_integer() {
        return false;
    }
    let q = pair.norm().numer();
    factorize(pair.trace().numer()).iter().all(|(p, _)| {
        let p2 = p * p;
        !q.is_multiple_of(&p2)
    })
}

/// The two simple pairs `(±aP, aR)` similar to `(T, Q)`, positive `T` first.
///
/// Obtained by writing `T²/Q = aP²/R` in lowest terms with `a` square-free.
pub fn simple_reduce(pair: &ParamPair) -> (ParamPair, ParamPair) {
    let ratio = pair.trace() * pair.trace() / pair.norm();
    // ratio = num/den in lowest terms, den > 0; Q carries the sign.
    let num = ratio.numer().abs();
    let mut den = ratio.denom().clone();
    if ratio.is_negative() {
        den = -den;
    }
    let (a, p) = squarefree_split(&num);
    let trace = Rational::from(&a * &p);
    let norm = Rational::from(&a * &den);
    let plus = ParamPair::new(trace.clone(), norm.clone()).expect("nonzero by construction");
    let minus = ParamPair::new(-trace, norm).expect("nonzero by construction");
    debug_assert!(is_simple(&plus) && similar(&plus, pair));
    (plus, minus)
}

/// `(Δ, -ΔQ)`, a pair whose `t` is the negative of the original.
pub fn twin_pair(pair: &ParamPair) -> Result<ParamPair> {
    let delta = pair.discriminant();
    if delta.is_zero() {
        return Err(Error::Degenerate("discriminant T² - 4Q is zero".into()));
    }
    let norm = -(&delta * pair.norm());
    ParamPair::new(delta, norm)
}

/// Classification of `t` by the rational solutions of `C_r(t) = ±C_r(a)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CyclotomicClass {
    Generic,
    /// `t² + a² = 4`, `a > 0`; both `a` and `-a` are associates.
    Circular { a: Rational },
    /// `t² - 4 = -3f²`, `f > 0`. The associates are `(-t + 3f)/2` and
    /// `(-t - 3f)/2`, in that order.
    Cubic { f: Rational, associates: [Rational; 2] },
}

impl CyclotomicClass {
    pub fn kind(&self) -> &'static str {
        match self {
            CyclotomicClass::Generic => "generic",
            CyclotomicClass::Circular { .. } => "circular",
            CyclotomicClass::Cubic { .. } => "cubic",
        }
    }
}

pub fn classify_cyclotomic(t: &Rational) -> Result<CyclotomicClass> {
    ensure_admissible(t)?;
    let four_minus = Rational::from(4) - t * t;
    if let Some(a) = four_minus.sqrt() {
        return Ok(CyclotomicClass::Circular { a });
    }
    if let Some(f) = (&four_minus / Rational::from(3)).sqrt() {
        let three_f = Rational::from(3) * &f;
        let half = Rational::new(1, 2);
        let associates = [
            (-t + &three_f) * &half,
            (-t - &three_f) * &half,
        ];
        return Ok(CyclotomicClass::Cubic { f, associates });
    }
    Ok(CyclotomicClass::Generic)
}

/// The element with determinant 1 and trace `a`, if it exists:
/// `x0² = (a² - 4)/(t² - 4)`, `2 x1 = t x0 + a`. The returned root has
/// `x0 >= 0`; the other solution is its inverse.
pub fn element_with_trace(t: &Rational, a: &Rational) -> Result<Option<RingElement>> {
    let four = Rational::from(4);
    let disc = t * t - &four;
    if disc.is_zero() {
        return Err(Error::Degenerate(format!("t = {t} has t² = 4")));
    }
    let Some(x0) = ((a * a - &four) / disc).sqrt() else {
        return Ok(None);
    };
    let x1 = (t * &x0 + a) / Rational::from(2);
    Ok(Some(RingElement::new(ParamPair::one_param(t.clone()), x0, x1)))
}

fn circular_check(t: &Rational, a: &Rational) -> Result<()> {
    ensure_admissible(t)?;
    if t * t + a * a != 4 || a.is_zero() {
        return Err(Error::NotAssociate(a.clone(), t.clone()));
    }
    Ok(())
}

fn cubic_check(t: &Rational, a: &Rational) -> Result<()> {
    ensure_admissible(t)?;
    if !matches!(classify_cyclotomic(t)?, CyclotomicClass::Cubic { .. }) {
        return Err(Error::WrongCyclotomicKind {
            t: t.clone(),
            expected: "cubic",
        });
    }
    // associates are the roots of t² + ta + a² - 3 = 0
    if t * t + t * a + a * a != 3 {
        return Err(Error::NotAssociate(a.clone(), t.clone()));
    }
    Ok(())
}

/// `Θ(X) = t^{-1} [-a x0, t x1 - 2 x0]` in `R(a)`, for `t² + a² = 4`.
pub fn theta_circular(x: &RingElement, a: &Rational) -> Result<RingElement> {
    let t = require_one_param(x)?;
    circular_check(&t, a)?;
    let inv = t.recip();
    let y0 = -(a * x.x0()) * &inv;
    let y1 = (&t * x.x1() - Rational::from(2) * x.x0()) * inv;
    Ok(RingElement::new(ParamPair::one_param(a.clone()), y0, y1))
}

/// `(t² - 1) Θ(X) = [(a² - 1) x0, (a - t) x0 + (t² - 1) x1]` in `R(a)`,
/// for an associate `a` in the cubic case.
pub fn theta_cubic(x: &RingElement, a: &Rational) -> Result<RingElement> {
    let t = require_one_param(x)?;
    cubic_check(&t, a)?;
    let one = Rational::one();
    let t2m1 = &t * &t - &one;
    let inv = t2m1.recip();
    let y0 = (a * a - &one) * x.x0() * &inv;
    let y1 = ((a - &t) * x.x0() + &t2m1 * x.x1()) * inv;
    Ok(RingElement::new(ParamPair::one_param(a.clone()), y0, y1))
}

/// The `f` paired with associate `a` in the cubic case: `a = (-t + 3f)/2`.
pub fn cubic_f_for(t: &Rational, a: &Rational) -> Rational {
    (Rational::from(2) * a + t) / Rational::from(3)
}

/// The unit of order 3, `S = -(2f)^{-1} [2, t + f]`, with `det S = 1`, `tr S = -1`.
pub fn cubic_unit_s(t: &Rational, f: &Rational) -> RingElement {
    let c = -(Rational::from(2) * f).recip();
    RingElement::new(
        ParamPair::one_param(t.clone()),
        &c * Rational::from(2),
        c * (t + f),
    )
}

/// `R = (2f)^{-1} [2, t - f]`, the inverse of [`cubic_unit_s`].
pub fn cubic_unit_r(t: &Rational, f: &Rational) -> RingElement {
    let c = (Rational::from(2) * f).recip();
    RingElement::new(
        ParamPair::one_param(t.clone()),
        &c * Rational::from(2),
        c * (t - f),
    )
}

/// One of the four interleaved sequences produced by [`recombine`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strand {
    /// Interleaves `X` (even terms) with `WX` (odd terms), over `(T, Q)`.
    Primary,
    /// Interleaves `CX` with `VX`, over `(T, Q)`.
    Polar,
    /// Interleaves `X` with `VX`, over the twin pair.
    TwinPrimary,
    /// Interleaves `CX` with `WX`, over the twin pair.
    TwinPolar,
}

/// Recombination of a sequence `x` over `t` into sequences over a pair
/// `(T, Q)` with `T²/Q - 2 = t`, and over its twin `(T', Q')` with
/// `T'²/Q' - 2 = -t`.
#[derive(Debug, Clone)]
pub struct Recombination {
    x: RingElement,
    pair: ParamPair,
    twin: ParamPair,
}

/// Builds the recombination; the twin pair is the simple pair with positive
/// `T` similar to `(Δ, -ΔQ)`.
pub fn recombine(x: &RingElement, pair: &ParamPair) -> Result<Recombination> {
    let t = require_one_param(x)?;
    if pair.t() != t {
        return Err(Error::ParameterRelation(format!(
            "T²/Q - 2 = {} for {pair:?}, expected {t}",
            pair.t()
        )));
    }
    let twin = simple_reduce(&twin_pair(pair)?).0;
    Ok(Recombination {
        x: x.clone(),
        pair: pair.clone(),
        twin,
    })
}

impl Recombination {
    pub fn pair(&self) -> &ParamPair {
        &self.pair
    }

    pub fn twin(&self) -> &ParamPair {
        &self.twin
    }

    pub fn context(&self, strand: Strand) -> &ParamPair {
        match strand {
            Strand::Primary | Strand::Polar => &self.pair,
            Strand::TwinPrimary | Strand::TwinPolar => &self.twin,
        }
    }

    pub fn term(&self, strand: Strand, n: i64) -> Rational {
        let x = |k: i64| self.x.term(k);
        let ctx = self.context(strand);
        let (big_t, big_q) = (ctx.trace(), ctx.norm());
        if n.rem_euclid(2) == 0 {
            let k = n.div_euclid(2);
            let qk = big_q.pow(k - 1);
            match strand {
                Strand::Primary => qk * x(k),
                Strand::Polar => qk * (x(k + 1) - x(k - 1)),
                Strand::TwinPrimary => sign(k) * qk * x(k),
                Strand::TwinPolar => sign(k + 1) * qk * (x(k + 1) - x(k - 1)),
            }
        } else {
            // n = 2k - 1
            let k = (n + 1).div_euclid(2);
            match strand {
                Strand::Primary => big_t.recip() * big_q.pow(k - 1) * (x(k) + x(k - 1)),
                Strand::Polar => big_t * big_q.pow(k - 2) * (x(k) - x(k - 1)),
                Strand::TwinPrimary => {
                    sign(k) * big_t.recip() * big_q.pow(k - 1) * (x(k) - x(k - 1))
                }
                Strand::TwinPolar => sign(k) * big_t * big_q.pow(k - 2) * (x(k) + x(k - 1)),
            }
        }
    }

    pub fn window(&self, strand: Strand, from: i64, to: i64) -> Vec<Rational> {
        (from..=to).map(|n| self.term(strand, n)).collect()
    }

    /// The ring element `[w0, w1]` of a strand over its own context.
    pub fn element(&self, strand: Strand) -> RingElement {
        RingElement::new(
            self.context(strand).clone(),
            self.term(strand, 0),
            self.term(strand, 1),
        )
    }
}

/// Circular recombination onto the associate `a`:
/// `x̂_{2k} = (-1)^{k-1} x_{2k}`, `x̂_{2k+1} = (-1)^k a^{-1} (x_{2k+2} - x_{2k})`.
#[derive(Debug, Clone)]
pub struct CircularRecombination {
    x: RingElement,
    a: Rational,
}

pub fn recombine_circular(x: &RingElement, a: &Rational) -> Result<CircularRecombination> {
    let t = require_one_param(x)?;
    circular_check(&t, a)?;
    Ok(CircularRecombination {
        x: x.clone(),
        a: a.clone(),
    })
}

impl CircularRecombination {
    pub fn term(&self, n: i64) -> Rational {
        let k = n.div_euclid(2);
        if n.rem_euclid(2) == 0 {
            sign(k - 1) * self.x.term(2 * k)
        } else {
            sign(k) * self.a.recip() * (self.x.term(2 * k + 2) - self.x.term(2 * k))
        }
    }

    pub fn window(&self, from: i64, to: i64) -> Vec<Rational> {
        (from..=to).map(|n| self.term(n)).collect()
    }

    pub fn element(&self) -> RingElement {
        RingElement::new(ParamPair::one_param(self.a.clone()), self.term(0), self.term(1))
    }
}

/// Cubic recombination onto the associate `a`:
/// `x̂_{3k} = x_{3k}`, `x̂_{3k+1} = (a x_{3k} + x_{3k+3})/(a² - 1)`,
/// `x̂_{3k-1} = (x_{3k-3} + a x_{3k})/(a² - 1)`.
#[derive(Debug, Clone)]
pub struct CubicRecombination {
    x: RingElement,
    a: Rational,
}

pub fn recombine_cubic(x: &RingElement, a: &Rational) -> Result<CubicRecombination> {
    let t = require_one_param(x)?;
    cubic_check(&t, a)?;
    Ok(CubicRecombination {
        x: x.clone(),
        a: a.clone(),
    })
}

impl CubicRecombination {
    pub fn term(&self, n: i64) -> Rational {
        let a = &self.a;
        let inv = (a * a - Rational::one()).recip();
        match n.rem_euclid(3) {
            0 => self.x.term(n),
            1 => {
                let k = (n - 1) / 3;
                (a * self.x.term(3 * k) + self.x.term(3 * k + 3)) * inv
            }
            _ => {
                let k = (n + 1) / 3;
                (self.x.term(3 * k - 3) + a * self.x.term(3 * k)) * inv
            }
        }
    }

    pub fn window(&self, from: i64, to: i64) -> Vec<Rational> {
        (from..=to).map(|n| self.term(n)).collect()
    }

    pub fn element(&self) -> RingElement {
        RingElement::new(ParamPair::one_param(self.a.clone()), self.term(0), self.term(1))
    }
}

/// `true` when `a` is the square of an integer; helper for tests and reports.
pub fn is_integer_square(a: &BigInt) -> bool {
    crate::rational::exact_isqrt(a).is_some()
}
