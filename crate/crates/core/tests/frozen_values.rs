//! Frozen spot values, each checked against an oracle that is independent of
//! the implementation path it exercises: square roots by pure-rational
//! bisection written here in the test, limits and margins recomputed with
//! plain rational arithmetic rather than the symbolic layer.

use expcalc_core::coulomb;
use expcalc_core::expr::parse_sym_exponent;
use expcalc_core::interval::ClosedInterval;
use expcalc_core::lorenz;
use expcalc_core::product_laws::{afs_check, AfsExponentSextuple};
use expcalc_core::ratfn::ratfn_equal;
use expcalc_core::rational::{rat, Rational};
use expcalc_core::roots::isolate_and_refine_roots;
use expcalc_core::sym::SDomain;
use expcalc_core::PolynomialInS;
use num_traits::Signed;

/// Oracle: sqrt(n) by bisection over rationals, to within `tol`.
fn sqrt_oracle(n: i64, tol: &Rational) -> Rational {
    let n = Rational::from_integer(n.into());
    let mut lo = Rational::from_integer(0.into());
    let mut hi = if n > Rational::from_integer(1.into()) {
        n.clone()
    } else {
        Rational::from_integer(1.into())
    };
    let two = Rational::from_integer(2.into());
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / &two;
        if &mid * &mid <= n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (&lo + &hi) / &two
}

fn tol_pow10(e: u32) -> Rational {
    Rational::new(1.into(), num_bigint::BigInt::from(10u8).pow(e))
}

#[test]
fn coulomb_threshold_matches_closed_form_oracle() {
    let tol = tol_pow10(12);
    let th = coulomb::threshold(&tol).unwrap();
    // Oracle: (25 - sqrt(313))/8 with sqrt by independent bisection.
    let oracle = (rat(25, 1) - sqrt_oracle(313, &tol_pow10(15))) / rat(8, 1);
    assert!(
        (&th.approx - &oracle).abs() <= tol,
        "approx {} vs oracle {}",
        th.approx,
        oracle
    );
}

#[test]
fn quadratic_example_root_isolated_within_tolerance() {
    // 8s^2 - 50s + 39 on [0, 1], tol 10^-12.
    let p = PolynomialInS::from_pairs(&[(39, 1), (-50, 1), (8, 1)]);
    let tol = tol_pow10(12);
    let i = ClosedInterval::new(rat(0, 1), rat(1, 1)).unwrap();
    let roots = isolate_and_refine_roots(&p, &i, &tol).unwrap();
    assert_eq!(roots.len(), 1);
    let oracle = (rat(25, 1) - sqrt_oracle(313, &tol_pow10(15))) / rat(8, 1);
    assert!((&roots[0].approx - &oracle).abs() <= tol);
}

#[test]
fn lorenz_cubic_root_matches_bisection_oracle() {
    // Oracle: bisect the cubic by direct evaluation, independent of the
    // isolation machinery.
    let eval = |s: &Rational| -> Rational {
        rat(32, 1) * s * s * s - rat(152, 1) * s * s + rat(106, 1) * s + rat(5, 1)
    };
    let mut lo = rat(9, 10);
    let mut hi = rat(23, 25);
    assert!(eval(&lo).is_positive() && eval(&hi).is_negative());
    let tol = tol_pow10(12);
    let two = rat(2, 1);
    while &hi - &lo > tol {
        let mid = (&lo + &hi) / &two;
        if eval(&mid).is_positive() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let oracle = (&lo + &hi) / &two;

    let th = lorenz::threshold(&tol_pow10(10)).unwrap();
    assert!((&th.approx - &oracle).abs() <= tol_pow10(10));
    assert!(th.certified_bracket.lo() > &rat(906, 1000));
    assert!(th.certified_bracket.hi() < &rat(907, 1000));
}

#[test]
fn coulomb_s_infinity_spot_values_by_direct_arithmetic() {
    let f = coulomb::s_infinity_fn().unwrap();
    // Oracle at s = 19/20: u = 1/q∞ from the limit values computed with
    // plain rational arithmetic.
    let s = rat(19, 20);
    let t_inf = (rat(7, 3) - rat(2, 3) * &s) * (rat(1, 1) - &s) / (rat(3, 1) - rat(2, 1) * &s);
    let u = &t_inf + rat(1, 2) - (rat(1, 1) - &s) / rat(3, 1);
    let oracle = &s - rat(3, 4) * (rat(2, 1) * &u - rat(1, 1)) / (rat(3, 2) - &u);
    assert_eq!(f.eval(&s).unwrap(), oracle);
    assert_eq!(f.eval(&s).unwrap(), &s - rat(3, 31));
}

#[test]
fn lorenz_s_infinity_spot_value_by_direct_arithmetic() {
    let s = rat(19, 20);
    // 1/q∞ evaluated straight from its printed closed form.
    let u =
        (rat(5, 6) + rat(37, 12) * &s - rat(19, 6) * &s * &s) / (&s * (rat(9, 2) - rat(3, 1) * &s));
    let oracle = &s - rat(1, 2) * (rat(2, 1) * &u - rat(1, 1)) / (rat(3, 2) - &u);
    let f = lorenz::s_infinity_fn().unwrap();
    assert_eq!(f.eval(&s).unwrap(), oracle);
    assert_eq!(oracle, rat(7521, 8680));
    assert!(oracle > rat(3, 4));
    // And on the other side of the threshold.
    assert!(f.eval(&rat(9, 10)).unwrap() < rat(3, 4));
}

#[test]
fn coulomb_limits_by_direct_arithmetic() {
    for s in [rat(4, 5), rat(9, 10), rat(19, 20), rat(1, 1)] {
        let (r, q) = coulomb::limit(&s).unwrap();
        let oracle_r =
            (rat(7, 3) - rat(2, 3) * &s) * (rat(1, 1) - &s) / (rat(3, 1) - rat(2, 1) * &s);
        assert_eq!(r, oracle_r);
        assert_eq!(q, &r + rat(1, 2) - (rat(1, 1) - &s) / rat(3, 1));
    }
}

#[test]
fn lorenz_limits_by_direct_arithmetic() {
    let lim = lorenz::limits_fn().unwrap();
    for s in [rat(4, 5), rat(23, 25), rat(19, 20), rat(1, 1)] {
        // Printed r-limit evaluated with plain rational arithmetic.
        let num = (rat(7, 3) - rat(3, 1) * &s + rat(2, 3) * &s * &s) * (rat(1, 1) + &s)
            + (rat(2, 1) * &s - rat(1, 1)) * (rat(19, 6) - rat(25, 6) * &s + &s * &s);
        let den = rat(2, 1) * (rat(1, 1) + &s)
            - (rat(3, 1) * &s - rat(2, 1)) * (rat(2, 1) * &s - rat(1, 1));
        assert_eq!(lim.inv_r_inf.eval(&s).unwrap(), num / den);
        // Printed q-limit likewise.
        let qn = rat(5, 6) + rat(37, 12) * &s - rat(19, 6) * &s * &s;
        let qd = &s * (rat(9, 2) - rat(3, 1) * &s);
        assert_eq!(lim.inv_q_inf.eval(&s).unwrap(), qn / qd);
    }
}

#[test]
fn coulomb_seed_walk_cross_checked_against_fractional_form() {
    // Walk ten steps at s = 19/20 through both forms of the recurrence.
    let s = rat(19, 20);
    let mut t = coulomb::seed(&s).unwrap();
    for _ in 0..10 {
        let a = coulomb::step_value(&t, &s);
        let b = coulomb::step_value_fractional_form(&t, &s);
        assert_eq!(a, b);
        t = a;
    }
}

#[test]
fn lorenz_walk_matches_composed_map_from_k2() {
    // The composed map only claims the r-subsequence from k >= 2.
    let s = rat(23, 25);
    let tr = lorenz::trace(&s, 10).unwrap();
    let m = lorenz::composed_r_map().unwrap();
    for w in tr.rows.windows(2).skip(1) {
        assert_eq!(w[1].inv_r, m.apply(&w[0].inv_r, &s));
    }
}

#[test]
fn afs_margins_at_a_point_recomputed_by_hand() {
    // The cubic-term first application at s = 19/20; two margins recomputed
    // with bare rational arithmetic from the condition definitions.
    let x = AfsExponentSextuple::new(
        parse_sym_exponent("1-s").unwrap(),
        parse_sym_exponent("0+e").unwrap(),
        parse_sym_exponent("s").unwrap(),
        parse_sym_exponent("1/4-2*e").unwrap(),
        parse_sym_exponent("1/4+3*e").unwrap(),
        parse_sym_exponent("3/4+e").unwrap(),
    );
    let s = rat(19, 20);
    let report = afs_check(&x, &SDomain::Point(s.clone())).unwrap();
    assert!(report.pass());

    let find = |id: &str| {
        report
            .conditions
            .iter()
            .find(|c| c.id == id)
            .unwrap_or_else(|| panic!("missing condition {id}"))
    };
    let margin_of = |id: &str| -> Rational {
        let c = find(id);
        let num: num_bigint::BigInt = c.margin_num.as_deref().unwrap().parse().unwrap();
        let den: num_bigint::BigInt = c.margin_den.as_deref().unwrap().parse().unwrap();
        Rational::new(num, den)
    };
    // s0+s1+s2 - 1 = 0 with ε order +1.
    assert_eq!(margin_of("s-sum-1"), rat(0, 1));
    assert_eq!(find("s-sum-1").eps_order.as_deref(), Some("1"));
    // (s0+s1+s2)+(s1+s2+b0) - 3/2 = s - 1/4 = 7/10 at s = 19/20; the ε
    // orders (+1) + (+1) + (-2) cancel exactly.
    assert_eq!(margin_of("combined-b0"), &s - rat(1, 4));
    assert_eq!(find("combined-b0").eps_order.as_deref(), Some("0"));
}

#[test]
fn symbolic_identities_between_modules() {
    // The two s∞ routes and the two recurrence limits are distinct
    // derivations; their agreement is the headline symbolic check.
    let coulomb_sinf = coulomb::s_infinity_fn().unwrap();
    let closed = {
        // s - 6(1-s)/(3(3-2s) - 4(1-s)) built from parsed pieces.
        expcalc_core::expr::parse_ratfn("s-6*(1-s)/(3*(3-2*s)-4*(1-s))").unwrap()
    };
    assert!(ratfn_equal(&coulomb_sinf, &closed));

    let lim = lorenz::limits_fn().unwrap();
    assert!(ratfn_equal(
        &lim.inv_r_inf,
        &lorenz::printed_r_limit().unwrap()
    ));
    assert!(ratfn_equal(
        &lim.inv_q_inf,
        &lorenz::printed_q_limit().unwrap()
    ));
}

#[test]
fn step3_interpolation_reproduces_the_seed_membership() {
    use expcalc_core::spaces::{interpolate, solve_theta, SpaceMembership};
    use expcalc_core::sym::SymExponent;
    // Interpolate H^{s,0} with H^{5s/3-1, s/3+1/2-}, choosing θ so the
    // modulation lands at 1/2 - 1/r₁ +; the Sobolev index then lands at
    // 2 - s - 2/r₁ by construction of r₁.
    let dom = expcalc_core::product_laws::standard_domain();
    let a = SpaceMembership::wave_sobolev(parse_sym_exponent("s").unwrap(), SymExponent::zero());
    let b = SpaceMembership::wave_sobolev(
        parse_sym_exponent("5*s/3-1").unwrap(),
        parse_sym_exponent("s/3+1/2-e").unwrap(),
    );
    let r1 = coulomb::seed_fn();
    let target = SymExponent::with_order(&expcalc_core::expr::parse_ratfn("1/2").unwrap() - &r1, 1);
    let theta = solve_theta(&a, &b, &target, &dom).unwrap();
    // θ's base is (1/2 - 1/r₁)/(1/2 + s/3); at s = 1 it equals 1/2.
    let theta_base = expcalc_core::expr::parse_ratfn("(1/2-(3/4-s/3-s^2/3))/(1/2+s/3)").unwrap();
    assert!(ratfn_equal(&theta.base, &theta_base));
    assert_eq!(theta.base.eval(&rat(1, 1)).unwrap(), rat(1, 2));

    let step = interpolate(&a, &b, &theta, &dom).unwrap();
    assert!(step.result.modulation.unwrap().identical_to(&target));
    let expected_sobolev = expcalc_core::expr::parse_ratfn("2-s-2*(3/4-s/3-s^2/3)").unwrap();
    assert!(ratfn_equal(&step.result.sobolev.base, &expected_sobolev));
    // At s = 1 the Sobolev index is 5/6 = 2 - 1 - 2/12.
    assert_eq!(
        step.result.sobolev.base.eval(&rat(1, 1)).unwrap(),
        rat(5, 6)
    );
}

#[test]
fn s_infinity_interpolations_via_solve_theta() {
    use expcalc_core::spaces::{interpolate, solve_theta, SpaceMembership};
    use expcalc_core::sym::SymExponent;
    let dom = expcalc_core::product_laws::standard_domain();

    // Coulomb: interpolate H^{s,0} with H^{s+1-2/q∞, 3/2-1/q∞-} choosing
    // θ(3/2 - 1/q∞ -) = 3/4+; the resulting Sobolev index is the Coulomb s∞.
    let (_, u) = coulomb::limit_fn().unwrap();
    let a = SpaceMembership::wave_sobolev(parse_sym_exponent("s").unwrap(), SymExponent::zero());
    let two_u = &expcalc_core::ratfn::RationalFnInS::constant(rat(2, 1)) * &u;
    let sob_b = &(&expcalc_core::ratfn::RationalFnInS::var()
        + &expcalc_core::ratfn::RationalFnInS::one())
        - &two_u;
    let mod_b = SymExponent::with_order(
        &expcalc_core::ratfn::RationalFnInS::constant(rat(3, 2)) - &u,
        -1,
    );
    let b = SpaceMembership::wave_sobolev(SymExponent::from_ratfn(sob_b.clone()), mod_b.clone());
    let target =
        SymExponent::with_order(expcalc_core::ratfn::RationalFnInS::constant(rat(3, 4)), 1);
    let theta = solve_theta(&a, &b, &target, &dom).unwrap();
    let expected_theta = &expcalc_core::ratfn::RationalFnInS::constant(rat(3, 4))
        / &(&expcalc_core::ratfn::RationalFnInS::constant(rat(3, 2)) - &u);
    assert!(ratfn_equal(&theta.base, &expected_theta));
    let step = interpolate(&a, &b, &theta, &dom).unwrap();
    assert!(step.result.modulation.unwrap().identical_to(&target));
    assert!(ratfn_equal(
        &step.result.sobolev.base,
        &coulomb::s_infinity_fn().unwrap()
    ));

    // Lorenz: the same construction with target 1/2+ and the Lorenz q-limit
    // lands on the Lorenz s∞.
    let lim = lorenz::limits_fn().unwrap();
    let u = lim.inv_q_inf;
    let two_u = &expcalc_core::ratfn::RationalFnInS::constant(rat(2, 1)) * &u;
    let sob_b = &(&expcalc_core::ratfn::RationalFnInS::var()
        + &expcalc_core::ratfn::RationalFnInS::one())
        - &two_u;
    let mod_b = SymExponent::with_order(
        &expcalc_core::ratfn::RationalFnInS::constant(rat(3, 2)) - &u,
        -1,
    );
    let b = SpaceMembership::wave_sobolev(SymExponent::from_ratfn(sob_b), mod_b);
    let target =
        SymExponent::with_order(expcalc_core::ratfn::RationalFnInS::constant(rat(1, 2)), 1);
    let theta = solve_theta(&a, &b, &target, &dom).unwrap();
    let expected_theta = &expcalc_core::ratfn::RationalFnInS::constant(rat(1, 2))
        / &(&expcalc_core::ratfn::RationalFnInS::constant(rat(3, 2)) - &u);
    assert!(ratfn_equal(&theta.base, &expected_theta));
    let step = interpolate(&a, &b, &theta, &dom).unwrap();
    assert!(ratfn_equal(
        &step.result.sobolev.base,
        &lorenz::s_infinity_fn().unwrap()
    ));
}

#[test]
fn forward_shift_symbolic_at_the_iteration_membership() {
    use expcalc_core::spaces::{strichartz_forward_shift, SpaceFamily, SpaceMembership};
    use expcalc_core::sym::SymExponent;
    // σ = 2 - s - 2/r₁, b = 1/2 - 1/r₁ +, r = r₁ lands in L²_t H^{1-s, r₁}.
    let dom = expcalc_core::product_laws::standard_domain();
    let r1 = coulomb::seed_fn();
    let two = expcalc_core::ratfn::RationalFnInS::constant(rat(2, 1));
    let sob = &(&two - &expcalc_core::ratfn::RationalFnInS::var()) - &(&two * &r1);
    let modulation = SymExponent::with_order(
        &expcalc_core::ratfn::RationalFnInS::constant(rat(1, 2)) - &r1,
        1,
    );
    let m = SpaceMembership::wave_sobolev(SymExponent::from_ratfn(sob), modulation);
    let inv_r = SymExponent::from_ratfn(r1);
    let out = strichartz_forward_shift(&m, &inv_r, &dom).unwrap();
    assert_eq!(out.family, SpaceFamily::MixedNorm);
    assert!(ratfn_equal(
        &out.sobolev.base,
        &expcalc_core::expr::parse_ratfn("1-s").unwrap()
    ));
}

#[test]
fn shared_q_shift_between_gauges() {
    // Both gauges define 1/q from a spatial index by the same shift.
    let shift = coulomb::inv_q_shift();
    let s = rat(17, 20);
    assert_eq!(
        shift.eval(&s).unwrap(),
        rat(1, 2) - (rat(1, 1) - &s) / rat(3, 1)
    );
    let (_, q) = coulomb::limit(&s).unwrap();
    let (r, _) = coulomb::limit(&s).unwrap();
    assert_eq!(q, &r + shift.eval(&s).unwrap());
    let lim = lorenz::limits_fn().unwrap();
    assert_eq!(
        lim.inv_q_inf.eval(&s).unwrap(),
        lim.inv_rtilde_inf.eval(&s).unwrap() + shift.eval(&s).unwrap()
    );
}
