//! Property suites: algebraic laws for the ordered ε-exponent ring, sign
//! determination against dense sampling, root isolation against planted
//! roots, equivalence and fixed-point laws for rational functions, checker
//! monotonicity and symmetry, and the exact geometric behavior of both
//! bootstrap traces.

use std::cmp::Ordering;

use proptest::prelude::*;

use expcalc_core::coulomb;
use expcalc_core::eps::{eps_compare, EpsExponent};
use expcalc_core::interval::{sign_on_interval, ClosedInterval, SignVerdict};
use expcalc_core::lorenz;
use expcalc_core::poly::PolynomialInS;
use expcalc_core::product_laws::{
    afs_check, afs_feasible, AfsExponentSextuple, AfsPartial, AfsSlot,
};
use expcalc_core::ratfn::{affine_fixed_point, ratfn_equal, RationalFnInS};
use expcalc_core::rational::{decimal_string, parse_rational, rat, Rational};
use expcalc_core::roots::isolate_and_refine_roots;
use expcalc_core::spaces::conjugate_inv;
use expcalc_core::sym::{SDomain, SymExponent};

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-24i64..=24, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn arb_eps_exponent() -> impl Strategy<Value = EpsExponent> {
    (arb_rational(), -8i64..=8).prop_map(|(base, k)| EpsExponent::with_order(base, k))
}

fn arb_poly(max_degree: usize) -> impl Strategy<Value = PolynomialInS> {
    prop::collection::vec((-12i64..=12, 1i64..=6), 1..=max_degree + 1)
        .prop_map(|pairs| PolynomialInS::new(pairs.into_iter().map(|(n, d)| rat(n, d)).collect()))
}

proptest! {
    #[test]
    fn eps_order_is_total_and_antisymmetric(a in arb_eps_exponent(), b in arb_eps_exponent()) {
        let ab = eps_compare(&a, &b);
        let ba = eps_compare(&b, &a);
        prop_assert_eq!(ab, ba.reverse());
        // Exactly one of <, =, > holds.
        let states = [ab == Ordering::Less, ab == Ordering::Equal, ab == Ordering::Greater];
        prop_assert_eq!(states.iter().filter(|&&x| x).count(), 1);
        if ab == Ordering::Equal {
            prop_assert_eq!(&a, &b);
        }
    }

    #[test]
    fn eps_order_is_transitive(
        a in arb_eps_exponent(),
        b in arb_eps_exponent(),
        c in arb_eps_exponent(),
    ) {
        let mut v = [a, b, c];
        v.sort();
        prop_assert!(eps_compare(&v[0], &v[1]) != Ordering::Greater);
        prop_assert!(eps_compare(&v[1], &v[2]) != Ordering::Greater);
        prop_assert!(eps_compare(&v[0], &v[2]) != Ordering::Greater);
    }

    #[test]
    fn eps_order_respects_addition(
        a in arb_eps_exponent(),
        b in arb_eps_exponent(),
        c in arb_eps_exponent(),
    ) {
        if eps_compare(&a, &b) == Ordering::Less {
            prop_assert_eq!(eps_compare(&(&a + &c), &(&b + &c)), Ordering::Less);
        }
    }

    #[test]
    fn eps_reciprocal_is_involutive(a in arb_eps_exponent()) {
        if let Some(inv) = a.recip() {
            prop_assert_eq!(inv.recip().unwrap(), a);
        }
    }

    #[test]
    fn conjugation_is_involutive_on_sym_exponents(base in arb_rational(), k in -4i64..=4) {
        let v = SymExponent::with_order(RationalFnInS::constant(base), k);
        prop_assert!(conjugate_inv(&conjugate_inv(&v)).identical_to(&v));
    }

    #[test]
    fn decimal_rendering_is_within_half_ulp(x in arb_rational(), sig in 1usize..=18) {
        let rendered = decimal_string(&x, sig);
        let back = parse_rational(&rendered).unwrap();
        if x == Rational::from_integer(0.into()) {
            prop_assert_eq!(back, x);
        } else {
            // |back - x| <= 10^(e - sig + 1) / 2 where 10^e <= |x| < 10^(e+1).
            let mut bound = rat(1, 2);
            let ten = rat(10, 1);
            let one = rat(1, 1);
            let mut mag = num_traits::Signed::abs(&x);
            // Scale so mag lands in [1, 10); adjust the bound alongside.
            while mag >= ten { mag /= &ten; bound *= &ten; }
            while mag < one { mag *= &ten; bound /= &ten; }
            for _ in 1..sig { bound /= &ten; }
            prop_assert!(num_traits::Signed::abs(&(&back - &x)) <= bound,
                "{} rendered {} at {} digits", x, rendered, sig);
        }
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sign_verdicts_agree_with_dense_sampling(p in arb_poly(4)) {
        let i = ClosedInterval::new(rat(3, 4), rat(1, 1)).unwrap();
        let strict = sign_on_interval(&p, &i, true);
        let lo = i.lo().clone();
        let width = i.width();
        let samples: Vec<Rational> =
            (0..=50).map(|k| &lo + &width * rat(k, 50)).collect();
        match strict {
            SignVerdict::Positive => {
                for x in &samples {
                    prop_assert!(p.sign_at(x) > 0);
                }
            }
            SignVerdict::Negative => {
                for x in &samples {
                    prop_assert!(p.sign_at(x) < 0);
                }
            }
            SignVerdict::Zero => prop_assert!(p.is_zero()),
            SignVerdict::Mixed { witness } => {
                // The witness marks the failure point of a strict verdict.
                prop_assert!(i.contains(&witness));
            }
        }
    }

    #[test]
    fn planted_roots_are_isolated_exactly(
        roots in prop::collection::btree_set((1i64..=39, 40i64..=40), 1..=3),
        double in any::<bool>(),
    ) {
        // Product of (s - k/40) factors, optionally squaring the first.
        let planted: Vec<Rational> = roots.iter().map(|&(n, d)| rat(n, d)).collect();
        let mut p = PolynomialInS::one();
        for (idx, r) in planted.iter().enumerate() {
            let lin = PolynomialInS::new(vec![-r.clone(), Rational::from_integer(1.into())]);
            p = &p * &lin;
            if double && idx == 0 {
                p = &p * &lin;
            }
        }
        let i = ClosedInterval::new(rat(0, 1), rat(1, 1)).unwrap();
        let tol = rat(1, 1 << 20);
        let found = isolate_and_refine_roots(&p, &i, &tol).unwrap();
        prop_assert_eq!(found.len(), planted.len());
        for (f, expected) in found.iter().zip(planted.iter()) {
            prop_assert!(num_traits::Signed::abs(&(&f.approx - expected)) <= tol);
            prop_assert!(f.bracket.contains(expected));
        }
        // Brackets pairwise disjoint.
        for w in found.windows(2) {
            prop_assert!(w[0].bracket.hi() < w[1].bracket.lo());
        }
    }

    #[test]
    fn ratfn_equality_is_stable_under_rescaling(
        num in arb_poly(2),
        den in arb_poly(2).prop_filter("nonzero", |p| !p.is_zero()),
        scale in arb_poly(1).prop_filter("nonzero", |p| !p.is_zero()),
    ) {
        let f = RationalFnInS::new(num.clone(), den.clone()).unwrap();
        let g = RationalFnInS::new(&num * &scale, &den * &scale).unwrap();
        prop_assert!(ratfn_equal(&f, &g));
        prop_assert_eq!(f, g);
    }

    #[test]
    fn affine_fixed_point_satisfies_its_equation(
        a in arb_poly(1),
        b in arb_poly(1),
    ) {
        let a = RationalFnInS::from_poly(a);
        let b = RationalFnInS::from_poly(b);
        if (&RationalFnInS::one() - &a).is_zero() {
            prop_assert!(affine_fixed_point(&a, &b).is_err());
        } else {
            let fp = affine_fixed_point(&a, &b).unwrap();
            prop_assert!(ratfn_equal(&(&(&a * &fp) + &b), &fp));
        }
    }
}

fn arb_sym_constant() -> impl Strategy<Value = SymExponent> {
    (arb_rational(), -4i64..=4)
        .prop_map(|(base, k)| SymExponent::with_order(RationalFnInS::constant(base), k))
}

fn arb_sextuple() -> impl Strategy<Value = AfsExponentSextuple> {
    (
        arb_sym_constant(),
        arb_sym_constant(),
        arb_sym_constant(),
        arb_sym_constant(),
        arb_sym_constant(),
        arb_sym_constant(),
    )
        .prop_map(|(s0, s1, s2, b0, b1, b2)| AfsExponentSextuple::new(s0, s1, s2, b0, b1, b2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn afs_swap_symmetry(x in arb_sextuple()) {
        let dom = SDomain::Point(rat(9, 10));
        let a = afs_check(&x, &dom).unwrap().pass();
        let b = afs_check(&x.swapped(), &dom).unwrap().pass();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn afs_monotone_in_every_slot(
        x in arb_sextuple(),
        slot in 0usize..6,
        bump_base in 0i64..=3,
        bump_eps in 0i64..=3,
    ) {
        let dom = SDomain::Point(rat(9, 10));
        let before = afs_check(&x, &dom).unwrap().pass();
        if before {
            let mut y = x.clone();
            let bump = SymExponent::with_order(
                RationalFnInS::constant(rat(bump_base, 4)),
                bump_eps,
            );
            let slots = [
                &mut y.s0, &mut y.s1, &mut y.s2, &mut y.b0, &mut y.b1, &mut y.b2,
            ];
            let chosen = slots.into_iter().nth(slot).unwrap();
            *chosen = &*chosen + &bump;
            prop_assert!(afs_check(&y, &dom).unwrap().pass(), "raising a slot broke a pass");
        }
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn afs_feasible_agrees_with_brute_force(
        b0_base in -2i64..=2,
        b1_base in -1i64..=2,
        s_bases in (0i64..=2, 0i64..=2, 0i64..=2),
    ) {
        // Two free slots over a small range; exhaustive enumeration is the
        // oracle for both feasibility and lexicographic minimality.
        let range = (-2i64, 2i64);
        let partial = AfsPartial {
            slots: [
                AfsSlot::fixed(SymExponent::from_rational(rat(s_bases.0, 2))),
                AfsSlot::fixed(SymExponent::from_rational(rat(s_bases.1, 2))),
                AfsSlot::fixed(SymExponent::from_rational(rat(s_bases.2, 2))),
                AfsSlot::Free { base: RationalFnInS::constant(rat(b0_base, 4)), lo: range.0, hi: range.1 },
                AfsSlot::Free { base: RationalFnInS::constant(rat(b1_base, 4)), lo: range.0, hi: range.1 },
                AfsSlot::fixed(SymExponent::from_rational(rat(3, 4))),
            ],
        };
        let dom = SDomain::Point(rat(9, 10));
        let found = afs_feasible(&partial, &dom).unwrap();

        let mut brute: Option<(i64, i64)> = None;
        'outer: for i in range.0..=range.1 {
            for j in range.0..=range.1 {
                let x = AfsExponentSextuple::new(
                    SymExponent::from_rational(rat(s_bases.0, 2)),
                    SymExponent::from_rational(rat(s_bases.1, 2)),
                    SymExponent::from_rational(rat(s_bases.2, 2)),
                    SymExponent::with_order(RationalFnInS::constant(rat(b0_base, 4)), i),
                    SymExponent::with_order(RationalFnInS::constant(rat(b1_base, 4)), j),
                    SymExponent::from_rational(rat(3, 4)),
                );
                if afs_check(&x, &dom).unwrap().pass() {
                    brute = Some((i, j));
                    break 'outer;
                }
            }
        }
        match (found, brute) {
            (None, None) => {}
            (Some(a), Some((i, j))) => {
                prop_assert_eq!(a.orders[0].1, i);
                prop_assert_eq!(a.orders[1].1, j);
                prop_assert!(afs_check(&a.sextuple, &dom).unwrap().pass());
            }
            (got, want) => prop_assert!(false, "feasibility mismatch: got {:?}, brute {:?}", got.map(|a| a.orders), want),
        }
    }
}

#[test]
fn coulomb_trace_laws_on_a_grid() {
    // 100-point grid over (3/4, 1]: exact geometric decay, monotone
    // decrease, and the standing bounds 1-s < t_k <= 1/2.
    for k in 1..=100u32 {
        let s = rat(3, 4) + rat(1, 4) * rat(k as i64, 100);
        let tr = coulomb::trace(&s, 12).unwrap();
        let a = tr.contraction_factor.clone();
        for w in tr.rows.windows(2) {
            assert_eq!(&w[1].gap / &w[0].gap, a);
            assert!(
                w[1].inv_r < w[0].inv_r,
                "strict decrease for s < 1 at s = {s}"
            );
        }
        let one_minus_s = rat(1, 1) - &s;
        for row in &tr.rows {
            assert!(row.inv_r > one_minus_s, "1-s < t_k at s = {s}");
            assert!(row.inv_r <= rat(1, 2));
        }
    }
    // At s = 1 the decrease is still strict (ratio 1/2, positive gaps).
    let tr = coulomb::trace(&rat(1, 1), 12).unwrap();
    for w in tr.rows.windows(2) {
        assert!(w[1].inv_r < w[0].inv_r);
    }
}

#[test]
fn lorenz_trace_laws_on_grids() {
    // Monotone decrease of all four sequences on [9/10, 1], and the q-bound
    // 1/q_k < 5/6 on [3/4, 1].
    for k in 0..=10u32 {
        let s = rat(9, 10) + rat(1, 10) * rat(k as i64, 10);
        let tr = lorenz::trace(&s, 12).unwrap();
        for w in tr.rows.windows(2) {
            assert!(w[1].inv_r <= w[0].inv_r, "r at s = {s}");
            assert!(w[1].inv_q <= w[0].inv_q, "q at s = {s}");
            assert!(w[1].inv_rtilde <= w[0].inv_rtilde, "r~ at s = {s}");
            assert!(w[1].inv_qtilde <= w[0].inv_qtilde, "q~ at s = {s}");
        }
    }
    for k in 0..=25u32 {
        let s = rat(3, 4) + rat(1, 4) * rat(k as i64, 25);
        let tr = lorenz::trace(&s, 12).unwrap();
        for row in &tr.rows {
            assert!(row.inv_q < rat(5, 6), "q-bound at s = {s}, k = {}", row.k);
        }
    }
}

#[test]
fn artifact_polynomials_agree_with_1000_point_sampling() {
    // Every polynomial the sign engine is invoked on by name, checked
    // against dense rational sampling of its interval.
    let p = PolynomialInS::from_pairs;
    let i34 = ("3/4", "1");
    let i23 = ("2/3", "1");
    let i910 = ("9/10", "23/25");
    // (poly, interval, strict, expected verdict sign: +1, -1, 0 = mixed)
    let cases: Vec<(PolynomialInS, (&str, &str), bool, i32)> = vec![
        (p(&[(-1, 12), (1, 2), (-1, 1), (2, 3)]), i34, true, 1),
        (
            &(&p(&[(-3, 4), (1, 1)]) * &p(&[(-3, 4), (1, 1)])) + &p(&[(1, 48)]),
            i34,
            true,
            1,
        ),
        (
            &(&p(&[(-3, 4), (1, 1)]) * &p(&[(-3, 4), (1, 1)])) + &p(&[(3, 16)]),
            i34,
            true,
            1,
        ),
        (p(&[(-3, 4), (1, 1), (1, 1)]), i34, true, 1),
        (p(&[(4, 1), (-4, 1)]), i34, false, 1),
        (
            &p(&[(1, 1), (-1, 1)]) * &p(&[(-2, 1), (4, 1)]),
            i34,
            false,
            1,
        ),
        (p(&[(-1, 1), (7, 2), (-3, 1)]), i23, false, -1),
        (p(&[(5, 2), (-2, 1), (-2, 1)]), i34, true, -1),
        (p(&[(39, 1), (-50, 1), (8, 1)]), i34, true, 0),
        (p(&[(5, 1), (106, 1), (-152, 1), (32, 1)]), i910, true, 0),
        (
            &(&p(&[(-5, 6), (1, 1)]) * &p(&[(-5, 6), (1, 1)])) - &p(&[(1, 36)]),
            i34,
            false,
            -1,
        ),
        (p(&[(-1, 2), (1, 1)]), i34, true, 1),
        (p(&[(3, 1), (-2, 1)]), i34, true, 1),
        (p(&[(0, 1), (9, 1), (-6, 1)]), i34, true, 1),
        (
            &p(&[(-1, 1), (2, 1)]) * &p(&[(-2, 1), (3, 1)]),
            i34,
            true,
            1,
        ),
        (p(&[(0, 1), (9, 2), (-3, 1)]), i34, true, 1),
        (p(&[(1, 4), (1, 1)]), i34, true, 1),
    ];
    for (poly, (lo, hi), strict, expect) in cases {
        let interval =
            ClosedInterval::new(parse_rational(lo).unwrap(), parse_rational(hi).unwrap()).unwrap();
        let verdict = sign_on_interval(&poly, &interval, strict);
        let start = interval.lo().clone();
        let width = interval.width();
        let signs: Vec<i32> = (0..=1000)
            .map(|k| poly.sign_at(&(&start + &width * rat(k, 1000))))
            .collect();
        match expect {
            1 => {
                assert_eq!(verdict, SignVerdict::Positive, "{poly} on {interval}");
                if strict {
                    assert!(signs.iter().all(|&s| s > 0), "{poly}");
                } else {
                    assert!(signs.iter().all(|&s| s >= 0), "{poly}");
                }
            }
            -1 => {
                assert_eq!(verdict, SignVerdict::Negative, "{poly} on {interval}");
                if strict {
                    assert!(signs.iter().all(|&s| s < 0), "{poly}");
                } else {
                    assert!(signs.iter().all(|&s| s <= 0), "{poly}");
                }
            }
            _ => {
                assert!(
                    matches!(verdict, SignVerdict::Mixed { .. }),
                    "{poly} on {interval}"
                );
                assert!(
                    signs.iter().any(|&s| s > 0) && signs.iter().any(|&s| s < 0),
                    "{poly} truly changes sign"
                );
            }
        }
    }
}

#[test]
fn fixture_embedding_margins_are_nonnegative_on_their_intervals() {
    // Every fixture that runs the embedding checker must report its scaling
    // margin as satisfied interval-wide (zero margin allowed).
    let suite = expcalc_core::fixtures::run_suite(None).unwrap();
    for outcome in suite.outcomes.iter().filter(|o| o.checker == "embedding") {
        let scaling = outcome
            .conditions
            .iter()
            .find(|c| c.id == "scaling")
            .expect("embedding fixture reports a scaling margin");
        assert!(scaling.satisfied, "{}", outcome.id);
    }
}
