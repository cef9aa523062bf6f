mod common;

use common::{random_circular, random_cubic, random_ring, random_t, rng};
use rand::Rng;
use seqgroup::ring::chebyshev_c;
use seqgroup::transforms::*;
use seqgroup::{ParamPair, Rational, RingElement};

fn random_pair<R: Rng>(r: &mut R) -> ParamPair {
    loop {
        let (a, b) = (r.gen_range(-9i64..=9), r.gen_range(-9i64..=9));
        if a == 0 || b == 0 {
            continue;
        }
        let Ok(p) = ParamPair::from_ints(a, b) else { continue };
        let t = p.t();
        if ![-2i64, -1, 0, 1, 2].iter().any(|v| t == *v) {
            return p;
        }
    }
}

fn check_mul<F>(x: &RingElement, y: &RingElement, f: F)
where
    F: Fn(&RingElement) -> RingElement,
{
    let lhs = f(&x.mul(y).unwrap());
    let rhs = f(x).mul(&f(y)).unwrap();
    assert_eq!(lhs, rhs, "x={x:?} y={y:?}");
}

#[test]
fn phi_is_multiplicative_and_inverted() {
    let mut r = rng(31);
    for _ in 0..60 {
        let pair = random_pair(&mut r);
        let x = random_ring(&mut r, &pair, 12);
        let y = random_ring(&mut r, &pair, 12);
        check_mul(&x, &y, |z| phi(z).unwrap());
        assert_eq!(phi_inverse(&phi(&x).unwrap(), &pair).unwrap(), x);
    }
}

#[test]
fn psi_and_phi_r_are_multiplicative() {
    let mut r = rng(32);
    for _ in 0..40 {
        let ctx = ParamPair::one_param(random_t(&mut r));
        let x = random_ring(&mut r, &ctx, 12);
        let y = random_ring(&mut r, &ctx, 12);
        check_mul(&x, &y, |z| psi(z).unwrap());
        for k in 1..=5 {
            check_mul(&x, &y, |z| phi_r(z, k).unwrap());
        }
    }
}

#[test]
fn theta_is_multiplicative() {
    let mut r = rng(33);
    for _ in 0..40 {
        let (t, a) = random_circular(&mut r);
        let ctx = ParamPair::one_param(t);
        let x = random_ring(&mut r, &ctx, 12);
        let y = random_ring(&mut r, &ctx, 12);
        check_mul(&x, &y, |z| theta_circular(z, &a).unwrap());
        check_mul(&x, &y, |z| theta_circular(z, &-&a).unwrap());
        let (t, a) = random_cubic(&mut r);
        let ctx = ParamPair::one_param(t);
        let x = random_ring(&mut r, &ctx, 12);
        let y = random_ring(&mut r, &ctx, 12);
        check_mul(&x, &y, |z| theta_cubic(z, &a).unwrap());
    }
}

#[test]
fn anchor_identities() {
    let mut r = rng(34);
    for _ in 0..20 {
        let pair = random_pair(&mut r);
        let t = pair.t();
        let d_t = RingElement::companion(&ParamPair::one_param(t.clone()));
        let d2 = RingElement::companion(&pair).pow(2).unwrap();
        assert_eq!(phi(&d2).unwrap(), d_t.scale(pair.norm()));

        let ctx = ParamPair::one_param(t.clone());
        let v_neg = RingElement::v(&ParamPair::one_param(-t.clone()));
        assert_eq!(psi(&RingElement::w(&ctx)).unwrap(), v_neg);
        for k in 1..=5u32 {
            let dk = RingElement::companion_pow(&ctx, k as i64);
            let target = ParamPair::one_param(chebyshev_c(&t, k as i64));
            assert_eq!(phi_r(&dk, k).unwrap(), RingElement::companion(&target));
        }
    }
    for _ in 0..20 {
        let (t, a) = random_circular(&mut r);
        let ctx = ParamPair::one_param(t);
        let dc = RingElement::companion(&ctx).mul(&RingElement::c(&ctx)).unwrap();
        let d_a = RingElement::companion(&ParamPair::one_param(a.clone()));
        assert_eq!(theta_circular(&dc, &a).unwrap(), d_a.scale(&-&a));

        let (t, a) = random_cubic(&mut r);
        let ctx = ParamPair::one_param(t.clone());
        let s = cubic_unit_s(&t, &cubic_f_for(&t, &a));
        let ds = RingElement::companion(&ctx).mul(&s).unwrap();
        let d_a = RingElement::companion(&ParamPair::one_param(a.clone()));
        assert_eq!(theta_cubic(&ds, &a).unwrap(), d_a);
    }
}

fn follows(terms: &[Rational], ctx: &ParamPair) -> bool {
    terms
        .windows(3)
        .all(|w| w[2] == ctx.trace() * &w[1] - ctx.norm() * &w[0])
}

#[test]
fn recombined_strands_follow_their_recursions() {
    let mut r = rng(35);
    for _ in 0..30 {
        let pair = random_pair(&mut r);
        let ctx = ParamPair::one_param(pair.t());
        let x = random_ring(&mut r, &ctx, 12);
        let rec = recombine(&x, &pair).unwrap();
        for strand in [Strand::Primary, Strand::Polar, Strand::TwinPrimary, Strand::TwinPolar] {
            let w = rec.window(strand, -10, 10);
            assert!(follows(&w, rec.context(strand)), "{strand:?} {pair:?} x={x:?}");
            assert_eq!(rec.element(strand).terms(-10, 10), w);
        }
        assert_eq!(rec.twin().t(), -pair.t());
        // even terms carry x_k up to a power of Q
        for k in -4..=4i64 {
            assert_eq!(rec.term(Strand::Primary, 2 * k), pair.norm().pow(k - 1) * x.term(k));
        }
    }
}

#[test]
fn circular_recombination() {
    let mut r = rng(36);
    for _ in 0..30 {
        let (t, a) = random_circular(&mut r);
        let ctx = ParamPair::one_param(t);
        let x = random_ring(&mut r, &ctx, 12);
        let rec = recombine_circular(&x, &a).unwrap();
        let w = rec.window(-10, 10);
        assert!(follows(&w, &ParamPair::one_param(a.clone())));
        assert!(rec.element().proj_eq(&theta_circular(&x, &a).unwrap()));
        for k in -4..=4i64 {
            let sign = if (k - 1).rem_euclid(2) == 0 { 1 } else { -1 };
            assert_eq!(rec.term(2 * k), Rational::from(sign) * x.term(2 * k));
        }
    }
}

#[test]
fn cubic_recombination() {
    let mut r = rng(37);
    for _ in 0..30 {
        let (t, a) = random_cubic(&mut r);
        let ctx = ParamPair::one_param(t.clone());
        let x = random_ring(&mut r, &ctx, 12);
        let rec = recombine_cubic(&x, &a).unwrap();
        let w = rec.window(-10, 10);
        assert!(follows(&w, &ParamPair::one_param(a.clone())));
        assert!(rec.element().proj_eq(&theta_cubic(&x, &a).unwrap()));
        let f = cubic_f_for(&t, &a);
        let sx = cubic_unit_s(&t, &f).mul(&x).unwrap();
        let rx = cubic_unit_r(&t, &f).mul(&x).unwrap();
        for k in -3..=3i64 {
            assert_eq!(rec.term(3 * k), x.term(3 * k));
            assert_eq!(rec.term(3 * k + 1), sx.term(3 * k + 1));
            assert_eq!(rec.term(3 * k - 1), rx.term(3 * k - 1));
            let one = Rational::from(1);
            assert_eq!((&t * &t - one) * x.term(3 * k + 1), &t * x.term(3 * k) + x.term(3 * k + 3));
        }
    }
}

#[test]
fn simple_pairs_are_similar_and_minimal() {
    let mut r = rng(38);
    for _ in 0..50 {
        let pair = random_pair(&mut r);
        let (plus, minus) = simple_reduce(&pair);
        assert!(is_simple(&plus) && is_simple(&minus));
        assert!(similar(&plus, &pair) && similar(&minus, &pair));
        assert_eq!(plus.t(), pair.t());
        assert!(plus.trace().is_positive() && minus.trace().is_negative());
    }
}

#[test]
fn twin_strands_exchange_odd_subsequences() {
    // the twin primary strand takes its even terms from the primary strand and
    // its odd terms from the polar one; the twin polar strand the other way
    // round. Each term agrees up to a sign and powers of the two norms.
    let mut r = rng(39);
    for _ in 0..30 {
        let pair = random_pair(&mut r);
        let x = random_ring(&mut r, &ParamPair::one_param(pair.t()), 12);
        let rec = recombine(&x, &pair).unwrap();
        let (bt, bq) = (pair.trace(), pair.norm());
        let (ht, hq) = (rec.twin().trace(), rec.twin().norm());
        for k in -4..=4i64 {
            let s = Rational::from(if k.rem_euclid(2) == 0 { 1 } else { -1 });
            let y = |n| rec.term(Strand::Primary, n);
            let z = |n| rec.term(Strand::Polar, n);
            let yh = |n| rec.term(Strand::TwinPrimary, n);
            let zh = |n| rec.term(Strand::TwinPolar, n);
            assert_eq!(yh(2 * k) * bq.pow(k - 1), &s * hq.pow(k - 1) * y(2 * k));
            assert_eq!(yh(2 * k - 1) * ht * bt * bq.pow(k - 2), &s * hq.pow(k - 1) * z(2 * k - 1));
            assert_eq!(zh(2 * k) * bq.pow(k - 1), -&s * hq.pow(k - 1) * z(2 * k));
            assert_eq!(zh(2 * k - 1) * bq.pow(k - 1), &s * ht * bt * hq.pow(k - 2) * y(2 * k - 1));
        }
    }
}
