//! Validated real-root isolation and refinement.
//!
//! Square-free reduction plus Sturm-chain counting isolates every distinct
//! real root of a polynomial in a closed interval into pairwise disjoint
//! brackets, each certified to contain exactly one root (by sign change of
//! the square-free part, or exactly when the root is rational). Bisection
//! then refines a bracket to any requested rational tolerance. Floating
//! point is never consulted.

use num_traits::{Signed, Zero};

use crate::interval::ClosedInterval;
use crate::poly::PolynomialInS;
use crate::rational::{int, Rational};
use crate::{Error, Result};

/// A certified bracket for one distinct real root.
#[derive(Debug, Clone)]
pub struct RootBracket {
    pub bracket: ClosedInterval,
    /// Exact when the root is rational; then the bracket is the point itself.
    pub approx: Rational,
    pub exact: bool,
}

/// Isolate the distinct real roots of `p` in `i`, in increasing order.
///
/// The returned brackets are pairwise disjoint subsets of `i`. For a bracket
/// with `exact = false` the square-free part of `p` changes sign across it.
pub fn isolate_roots(p: &PolynomialInS, i: &ClosedInterval) -> Vec<RootBracket> {
    if p.is_zero() {
        return Vec::new();
    }
    let q = p.squarefree_part().monic();
    if q.is_constant() {
        return Vec::new();
    }
    if i.is_point() {
        if q.sign_at(i.lo()) == 0 {
            return vec![exact_root(i.lo().clone())];
        }
        return Vec::new();
    }

    let mut at_lo = None;
    let mut at_hi = None;
    let mut reduced = q;
    if reduced.sign_at(i.lo()) == 0 {
        at_lo = Some(exact_root(i.lo().clone()));
        reduced = deflate(&reduced, i.lo());
    }
    if reduced.sign_at(i.hi()) == 0 {
        at_hi = Some(exact_root(i.hi().clone()));
        reduced = deflate(&reduced, i.hi());
    }

    let mut out = Vec::new();
    if let Some(b) = at_lo {
        out.push(b);
    }

    if !reduced.is_constant() {
        let chain = reduced.sturm_chain();
        // Shrink away from any endpoint that was a root so the interior
        // search runs between non-roots of `reduced`.
        let lo = shrink_from(&reduced, &chain, i.lo(), i.hi(), !out.is_empty());
        let hi_needs_gap = reduced.sign_at(i.hi()) == 0 || at_hi.is_some();
        let hi = if hi_needs_gap {
            shrink_from(&reduced, &chain, i.hi(), &lo, true)
        } else {
            i.hi().clone()
        };
        if lo < hi {
            let mut interior = Vec::new();
            isolate_between(&reduced, &chain, &lo, &hi, &mut interior);
            separate_touching(&reduced, &mut interior);
            out.extend(interior);
        }
    }

    if let Some(b) = at_hi {
        out.push(b);
    }
    out
}

/// Isolate and refine: one entry per distinct real root of `p` in `i`, each
/// bracket narrowed to width at most `tol` (so the approximation is within
/// `tol` of the true root).
pub fn isolate_and_refine_roots(
    p: &PolynomialInS,
    i: &ClosedInterval,
    tol: &Rational,
) -> Result<Vec<RootBracket>> {
    if p.is_zero() {
        return Err(Error::Domain(
            "cannot isolate roots of the zero polynomial".into(),
        ));
    }
    if !tol.is_positive() {
        return Err(Error::Domain(
            "root refinement tolerance must be positive".into(),
        ));
    }
    let q = p.squarefree_part().monic();
    Ok(isolate_roots(p, i)
        .into_iter()
        .map(|b| refine_bracket(&q, b, tol))
        .collect())
}

/// Bisect a certified bracket until its width is at most `tol`.
pub fn refine_bracket(squarefree: &PolynomialInS, b: RootBracket, tol: &Rational) -> RootBracket {
    if b.exact {
        return b;
    }
    let two = int(2);
    let mut lo = b.bracket.lo().clone();
    let mut hi = b.bracket.hi().clone();
    let sign_lo = squarefree.sign_at(&lo);
    while &(&hi - &lo) > tol {
        let mid = (&lo + &hi) / &two;
        let sign_mid = squarefree.sign_at(&mid);
        if sign_mid == 0 {
            return exact_root(mid);
        }
        if sign_mid == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let bracket = ClosedInterval::new(lo, hi).expect("bisection preserves order");
    let approx = bracket.midpoint();
    RootBracket {
        bracket,
        approx,
        exact: false,
    }
}

fn exact_root(x: Rational) -> RootBracket {
    RootBracket {
        bracket: ClosedInterval::point(x.clone()),
        approx: x,
        exact: true,
    }
}

/// Exact division by (s - r) for a known rational root r.
fn deflate(q: &PolynomialInS, r: &Rational) -> PolynomialInS {
    let lin = PolynomialInS::new(vec![-r.clone(), Rational::from_integer(1.into())]);
    let (quot, rem) = q.div_rem(&lin);
    debug_assert!(rem.is_zero());
    quot
}

fn sign_variations(chain: &[PolynomialInS], x: &Rational) -> usize {
    let mut last = 0i32;
    let mut changes = 0;
    for p in chain {
        let s = p.sign_at(x);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Number of distinct roots in the open interval (a, b); requires q(a) and
/// q(b) nonzero, q square-free.
fn count_open(chain: &[PolynomialInS], a: &Rational, b: &Rational) -> usize {
    sign_variations(chain, a).saturating_sub(sign_variations(chain, b))
}

/// Walk from `from` towards `towards` until the prefix contains no root of
/// `q` and ends at a non-root; used to step off a root at an endpoint.
fn shrink_from(
    q: &PolynomialInS,
    chain: &[PolynomialInS],
    from: &Rational,
    towards: &Rational,
    force_step: bool,
) -> Rational {
    if !force_step && q.sign_at(from) != 0 {
        return from.clone();
    }
    let two = int(2);
    let mut step = (towards - from) / &two;
    loop {
        let candidate = from + &step;
        if q.sign_at(&candidate) != 0 {
            let (a, b) = if from < towards {
                (from, &candidate)
            } else {
                (&candidate, from)
            };
            // Root-free prefix: the only admissible root is the endpoint one.
            let count = count_open(chain, a, b);
            if count == 0 {
                return candidate;
            }
        }
        step = &step / &two;
        if step.is_zero() {
            return from.clone();
        }
    }
}

/// Recursive Sturm bisection; q(a) != 0, q(b) != 0.
fn isolate_between(
    q: &PolynomialInS,
    chain: &[PolynomialInS],
    a: &Rational,
    b: &Rational,
    out: &mut Vec<RootBracket>,
) {
    let n = count_open(chain, a, b);
    match n {
        0 => {}
        1 => {
            let bracket = ClosedInterval::new(a.clone(), b.clone()).expect("ordered");
            let approx = bracket.midpoint();
            out.push(RootBracket {
                bracket,
                approx,
                exact: false,
            });
        }
        _ => {
            let m = nonroot_split(q, a, b);
            isolate_between(q, chain, a, &m, out);
            isolate_between(q, chain, &m, b, out);
        }
    }
}

/// A subdivision point strictly inside (a, b) that is not a root of q.
fn nonroot_split(q: &PolynomialInS, a: &Rational, b: &Rational) -> Rational {
    let width = b - a;
    for den in 2i64.. {
        for num in 1..den {
            let c = a + &(&width * &crate::rational::rat(num, den));
            if q.sign_at(&c) != 0 {
                return c;
            }
        }
    }
    unreachable!("a nonzero polynomial has finitely many roots")
}

/// Interior brackets come out of the bisection sharing endpoints; shrink the
/// left one of each touching pair until all brackets are pairwise disjoint.
fn separate_touching(q: &PolynomialInS, brackets: &mut [RootBracket]) {
    let two = int(2);
    for idx in 0..brackets.len().saturating_sub(1) {
        let boundary = brackets[idx + 1].bracket.lo().clone();
        if brackets[idx].bracket.hi() < &boundary {
            continue;
        }
        // The shared endpoint is a non-root split point, so the left root
        // lies strictly below it and bisection eventually excludes it.
        let mut lo = brackets[idx].bracket.lo().clone();
        let mut hi = brackets[idx].bracket.hi().clone();
        let sign_lo = q.sign_at(&lo);
        loop {
            let mid = (&lo + &hi) / &two;
            let sign_mid = q.sign_at(&mid);
            if sign_mid == 0 {
                brackets[idx] = exact_root(mid);
                break;
            }
            if sign_mid == sign_lo {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi < boundary {
                let bracket = ClosedInterval::new(lo, hi).expect("ordered");
                let approx = bracket.midpoint();
                brackets[idx] = RootBracket {
                    bracket,
                    approx,
                    exact: false,
                };
                break;
            }
        }
    }
}
