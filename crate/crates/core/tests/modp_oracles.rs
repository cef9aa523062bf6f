mod common;

use common::{admissible, brute_group_order, brute_order, euler_qr, primes_in, q, random_element, residue, rng, scan_divides};
use seqgroup::modp::{in_pi_t, qr_filter, trichotomy_class, xi};
use seqgroup::{is_divisor, modp_context, GroupElement, ParamPair, Trichotomy};

#[test]
fn admissible_sets_agree() {
    for t in [q(3, 1), q(-3, 1), q(19, 3), q(6, 5), q(11, 7)] {
        for p in primes_in(3, 1500) {
            assert_eq!(in_pi_t(&t, p), admissible(&t, p), "t={t} p={p}");
        }
    }
}

#[test]
fn group_order_matches_enumeration() {
    for t in [q(3, 1), q(-3, 1), q(19, 3), q(6, 5), q(11, 7), q(5, 2)] {
        for p in primes_in(3, 800).into_iter().filter(|&p| admissible(&t, p)) {
            let ctx = modp_context(&t, p).unwrap();
            assert_eq!(ctx.n, brute_group_order(&t, p), "t={t} p={p}");
            let delta = (residue(&t, p).unwrap().pow(2) + p * p - 4) % p;
            assert_eq!(ctx.n == p - 1, euler_qr(delta, p));
        }
    }
}

#[test]
fn orders_match_repeated_multiplication() {
    let mut r = rng(3);
    for t in [q(3, 1), q(19, 3), q(11, 7)] {
        let g = ParamPair::one_param(t.clone());
        for p in primes_in(3, 400).into_iter().filter(|&p| admissible(&t, p)) {
            let ctx = modp_context(&t, p).unwrap();
            for _ in 0..5 {
                let x = random_element(&mut r, &g, 50);
                if ctx.det_of(&x) == 0 {
                    continue;
                }
                let e = ctx.reduce(&x).unwrap();
                assert_eq!(ctx.order(e), brute_order(e.a0, e.a1, &t, p), "t={t} p={p} x={x}");
            }
        }
    }
}

#[test]
fn divisor_criterion_matches_scan() {
    let mut r = rng(5);
    for t in [q(3, 1), q(-3, 1), q(19, 3), q(6, 5), q(7, 2)] {
        let g = ParamPair::one_param(t.clone());
        for _ in 0..4 {
            let x = random_element(&mut r, &g, 40);
            for p in primes_in(3, 700).into_iter().filter(|&p| admissible(&t, p)) {
                let det_zero = seqgroup::modp_context(&t, p).unwrap().det_of(&x) == 0;
                let want = !det_zero && scan_divides(&x, p);
                assert_eq!(is_divisor(&x, p).unwrap(), want, "t={t} p={p} x={x}");
            }
        }
    }
}

#[test]
fn divisors_pass_the_qr_filter() {
    let t = q(19, 3);
    let x = GroupElement::from_ints(&ParamPair::one_param(t.clone()), 51, 4).unwrap();
    let mut checked = 0;
    for p in primes_in(3, 4000).into_iter().filter(|&p| admissible(&t, p)) {
        if modp_context(&t, p).unwrap().det_of(&x) == 0 {
            assert!(qr_filter(&x, p).is_err());
            continue;
        }
        if is_divisor(&x, p).unwrap() {
            assert!(qr_filter(&x, p).unwrap(), "p={p}");
        }
        checked += 1;
    }
    assert!(checked >= 500);
}

#[test]
fn trichotomy_matches_divisibility() {
    for t in [q(3, 1), q(19, 3), q(-7, 4)] {
        let g = ParamPair::one_param(t.clone());
        let w = GroupElement::w(&g).unwrap();
        let v = GroupElement::v(&g).unwrap();
        let c = GroupElement::c(&g).unwrap();
        for p in primes_in(3, 2000).into_iter().filter(|&p| admissible(&t, p)) {
            let class = trichotomy_class(&t, p).unwrap();
            let hits = [
                (Trichotomy::W, scan_divides(&w, p)),
                (Trichotomy::V, scan_divides(&v, p)),
                (Trichotomy::C, scan_divides(&c, p)),
            ];
            assert_eq!(hits.iter().filter(|h| h.1).count(), 1, "t={t} p={p}");
            assert!(hits.iter().any(|h| h.0 == class && h.1), "t={t} p={p}");
            // ξ is the index of the first zero of W's sequence [-1, 1]
            let ctx = modp_context(&t, p).unwrap();
            assert_eq!(xi(&t, p).unwrap(), ctx.order(ctx.w()));
        }
    }
}

#[test]
fn excluded_primes_are_rejected() {
    let t = q(19, 3);
    for p in [3u64, 5, 13, 19] {
        assert!(modp_context(&t, p).is_err(), "p={p}");
    }
    assert!(modp_context(&t, 15).is_err());
    assert!(modp_context(&t, 2).is_err());
}
