//! The Laxton group: the sequence group modulo the powers of `D`, so that
//! sequences differing by a scalar or by an index shift are identified.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{decompose, primitivity, two_power_depth, GroupElement};
use crate::rational::Rational;
use crate::ring::{ensure_admissible, ParamPair, RingElement};
use crate::transforms::{classify_cyclotomic, phi_inverse, phi_r, psi, CyclotomicClass};

/// Upper limit on `|k|` in the shift search.
pub const SHIFT_SEARCH_CAP: i64 = 10_000;

/// `X = λ · Y · D^k` for the reduced representatives of `X` and `Y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftWitness {
    pub k: i64,
    pub lambda: Rational,
}

fn check_params(ctx: &ParamPair) -> Result<()> {
    ensure_admissible(&ctx.t())
}

/// Finds `k` with `z ≐ D^k`, if any.
///
/// A determinant prefilter rules out most classes: `det D^k = Q^k`, so the
/// determinant of the reduced `z` must be a square times `Q^k`. The search
/// then walks `k = 0, ±1, ±2, ...`; the reduced heights of `D^{±k}` grow
/// once past their minimum, and equality forces equal heights, so the walk
/// stops when both directions exceed the height of `z` while increasing.
fn shift_exponent(z: &GroupElement) -> Option<i64> {
    let ctx = z.context();
    let det = z.det();
    let even_ok = det.is_square();
    let odd_ok = (&det / ctx.norm()).is_square();
    if !even_ok && !odd_ok {
        return None;
    }
    let target_h = z.height();
    let d = GroupElement::companion(ctx);
    let d_inv = d.inv();
    let mut fwd = GroupElement::identity(ctx);
    let mut bwd = fwd.clone();
    let (mut prev_f, mut prev_b) = (fwd.height(), bwd.height());
    for k in 0..=SHIFT_SEARCH_CAP {
        let parity_ok = if k % 2 == 0 { even_ok } else { odd_ok };
        if parity_ok {
            if fwd == *z {
                return Some(k);
            }
            if bwd == *z {
                return Some(-k);
            }
        }
        let (hf, hb) = (fwd.height(), bwd.height());
        if k > 1 && hf > target_h && hb > target_h && hf > prev_f && hb > prev_b {
            return None;
        }
        prev_f = hf;
        prev_b = hb;
        fwd = fwd.mul(&d).expect("same context");
        bwd = bwd.mul(&d_inv).expect("same context");
    }
    None
}

/// Decides whether `X ≐ Y·D^k` for some `k`, returning the witness.
pub fn laxton_eq(x: &GroupElement, y: &GroupElement) -> Result<Option<ShiftWitness>> {
    x.context().check_same(y.context())?;
    check_params(x.context())?;
    let z = x.mul(&y.inv())?;
    let Some(k) = shift_exponent(&z) else {
        return Ok(None);
    };
    let yd = y.to_ring().shift(k);
    let xr = x.to_ring();
    let lambda = if yd.x0().is_zero() {
        xr.x1() / yd.x1()
    } else {
        xr.x0() / yd.x0()
    };
    debug_assert_eq!(yd.scale(&lambda), xr);
    Ok(Some(ShiftWitness { k, lambda }))
}

/// A coset of `⟨D⟩`, held through a canonical representative: the shift of
/// least height, ties broken by the integer pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaxtonElement {
    representative: GroupElement,
}

impl LaxtonElement {
    pub fn new(x: &GroupElement) -> Result<Self> {
        check_params(x.context())?;
        Ok(LaxtonElement {
            representative: canonical_shift(x),
        })
    }

    pub fn identity(ctx: &ParamPair) -> Result<Self> {
        Self::new(&GroupElement::identity(ctx))
    }

    pub fn representative(&self) -> &GroupElement {
        &self.representative
    }

    pub fn mul(&self, other: &LaxtonElement) -> Result<Self> {
        Self::new(&self.representative.mul(&other.representative)?)
    }

    pub fn inv(&self) -> Self {
        LaxtonElement {
            representative: canonical_shift(&self.representative.inv()),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        LaxtonElement {
            representative: canonical_shift(&self.representative.pow(k)),
        }
    }

    pub fn is_identity(&self) -> bool {
        shift_exponent(&self.representative).is_some()
    }

    /// Equality through the shift search, independent of representatives.
    pub fn equiv(&self, other: &LaxtonElement) -> Result<bool> {
        Ok(laxton_eq(&self.representative, &other.representative)?.is_some())
    }

    /// The least `n <= max` with `X^n ≐ D^k`, with that `k`.
    pub fn order(&self, max: u32) -> Option<(u32, i64)> {
        coset_order(&self.representative, max)
    }
}

/// The least `n <= max` with `x^n ≐ D^k`, with that `k`.
pub fn coset_order(x: &GroupElement, max: u32) -> Option<(u32, i64)> {
    let mut acc = x.clone();
    for n in 1..=max {
        if let Some(k) = shift_exponent(&acc) {
            return Some((n, k));
        }
        acc = acc.mul(x).expect("same context");
    }
    None
}

fn shift_key(g: &GroupElement) -> (BigInt, BigInt, BigInt) {
    (g.height(), g.a1().clone(), g.a0().clone())
}

fn canonical_shift(x: &GroupElement) -> GroupElement {
    let mut best = x.clone();
    let start_h = x.height();
    for dir in [1i64, -1] {
        let step = GroupElement::companion_pow(x.context(), dir);
        let mut cur = x.clone();
        let mut prev_h = cur.height();
        let mut rising = 0;
        for _ in 0..SHIFT_SEARCH_CAP {
            cur = cur.mul(&step).expect("same context");
            let h = cur.height();
            if shift_key(&cur) < shift_key(&best) {
                best = cur.clone();
            }
            rising = if h > prev_h { rising + 1 } else { 0 };
            if rising >= 3 && h > start_h {
                break;
            }
            prev_h = h;
        }
    }
    best
}

/// Isomorphism type of a finite abelian group as a product of cyclic
/// factors, written `Z_2 x Z_4`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupType(pub Vec<u64>);

impl GroupType {
    pub fn order(&self) -> u64 {
        self.0.iter().product()
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|n| format!("Z_{n}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl FromStr for GroupType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split('x')
            .map(|part| {
                part.trim()
                    .strip_prefix("Z_")
                    .and_then(|n| n.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("invalid group type {s:?}")))
            })
            .collect::<Result<Vec<u64>>>()
            .map(GroupType)
    }
}

impl Serialize for GroupType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionRow {
    #[serde(with = "crate::serde_int::pair")]
    pub element: [BigInt; 2],
    pub order: u32,
    /// `element^order ≐ D^k`
    pub coset_witness_k: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionTable {
    pub t: Rational,
    pub group_type: GroupType,
    /// `false` when only the structure is known.
    pub enumerated: bool,
    /// `t = sign · C_m(u)` with `u` primitive; `m = 1` for primitive `t`.
    pub m: u64,
    pub base: Rational,
    pub elements: Vec<TorsionRow>,
}

/// Torsion classes of the Laxton group at a primitive `s`, as ring elements
/// over `s`, with the second cyclic factor. `None` for the case where only
/// the structure is known.
fn primitive_torsion(s: &Rational) -> Result<Option<(Vec<RingElement>, u64)>> {
    let ctx = ParamPair::one_param(s.clone());
    let two = Rational::from(2);
    let bracket = |second: Rational| RingElement::new(ctx.clone(), two.clone(), second);
    let (base, factor) = match classify_cyclotomic(s)? {
        CyclotomicClass::Generic => (vec![RingElement::identity(&ctx), RingElement::c(&ctx)], 2),
        CyclotomicClass::Cubic { f, .. } => {
            let three_f = Rational::from(3) * &f;
            (
                vec![
                    RingElement::identity(&ctx),
                    RingElement::c(&ctx),
                    bracket(s + &f),
                    bracket(s - &f),
                    bracket(s + &three_f),
                    bracket(s - three_f),
                ],
                6,
            )
        }
        CyclotomicClass::Circular { a } => {
            if (&two * (&two + s)).is_square() {
                return Ok(None);
            }
            (
                vec![
                    RingElement::identity(&ctx),
                    RingElement::c(&ctx),
                    bracket(s + &a),
                    bracket(s - &a),
                ],
                4,
            )
        }
    };
    let w = RingElement::w(&ctx);
    let mut all = base.clone();
    for b in &base {
        all.push(w.mul(b)?);
    }
    Ok(Some((all, factor)))
}

/// Elements of finite order of the Laxton group at `t`.
///
/// For `t = ±C_m(u)` with `u` primitive, the classes are `Φ_m(X D_u^k)` for
/// torsion `X` at `u` and `0 <= k < m`, moved to `t` by transposition when
/// the sign is negative.
pub fn laxton_torsion(t: &Rational) -> Result<TorsionTable> {
    ensure_admissible(t)?;
    let dec = decompose(t)?;
    let report = primitivity(&dec.u)?;
    debug_assert!(report.is_primitive);
    let ctx = ParamPair::one_param(t.clone());

    let Some((base, factor)) = primitive_torsion(&dec.u)? else {
        if dec.m != 1 {
            return Err(Error::Unsupported(format!(
                "t = ±C_{}({}) with a base that is circular but not circular primitive",
                dec.m, dec.u
            )));
        }
        let a = match classify_cyclotomic(t)? {
            CyclotomicClass::Circular { a } => a,
            _ => unreachable!("only the circular case lacks an enumeration"),
        };
        let l = two_power_depth(&a);
        return Ok(TorsionTable {
            t: t.clone(),
            group_type: GroupType(vec![1u64 << (l + 2), 2]),
            enumerated: false,
            m: 1,
            base: t.clone(),
            elements: Vec::new(),
        });
    };

    let u_ctx = ParamPair::one_param(dec.u.clone());
    let mut classes = Vec::new();
    for k in 0..dec.m as i64 {
        let dk = RingElement::companion_pow(&u_ctx, k);
        for x in &base {
            let mut y = x.mul(&dk)?;
            if dec.m > 1 {
                y = phi_r(&y, dec.m as u32)?;
            }
            if dec.sign < 0 {
                y = psi(&y)?;
            }
            debug_assert_eq!(y.ctx(), &ctx);
            classes.push(GroupElement::from_ring(&y)?);
        }
    }

    let group_type = if dec.m == 1 {
        GroupType(vec![2, factor])
    } else {
        GroupType(vec![2 * dec.m, factor])
    };
    let max_order = group_type.order() as u32;
    let mut elements = Vec::with_capacity(classes.len());
    for g in classes {
        let (order, k) = coset_order(&g, max_order)
            .ok_or_else(|| Error::Degenerate(format!("torsion class {g} has no finite order")))?;
        elements.push(TorsionRow {
            element: g.pair(),
            order,
            coset_witness_k: k,
        });
    }
    Ok(TorsionTable {
        t: t.clone(),
        group_type,
        enumerated: true,
        m: dec.m,
        base: dec.u,
        elements,
    })
}

/// The 2-to-1 homomorphism from the Laxton group at `t` onto the one at a
/// pair `(T, Q)` with `T²/Q - 2 = t`; its kernel is `{I, W}`.
pub fn xi_hom(x: &GroupElement, target: &ParamPair) -> Result<LaxtonElement> {
    if !x.context().is_one_param() {
        return Err(Error::NotOneParameter);
    }
    let y = phi_inverse(&x.to_ring(), target)?;
    LaxtonElement::new(&GroupElement::from_ring(&y)?)
}

/// The kernel of the map from the Laxton group at `C_n(t)` onto the one at
/// `t`: the classes `Φ_n(D_t^k)`, `0 <= k < n`.
pub fn xi_n_kernel(t: &Rational, n: u32) -> Result<Vec<GroupElement>> {
    ensure_admissible(t)?;
    let ctx = ParamPair::one_param(t.clone());
    (0..n as i64)
        .map(|k| GroupElement::from_ring(&phi_r(&RingElement::companion_pow(&ctx, k), n)?))
        .collect()
}
