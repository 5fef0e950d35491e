//! Checkers for the bilinear wave-Sobolev estimate and the Sobolev
//! multiplication law, plus a feasibility search over ε orders.
//!
//! The bilinear checker decides the full displayed condition list for
//! ‖uv‖_{H^{-s0,-b0}} ≲ ‖u‖_{H^{s1,b1}} ‖v‖_{H^{s2,b2}}. The source prints
//! the pairwise positivity line as "b0+b1 > 0, b0+b1 > 0" — a visible
//! duplication; by the symmetry of the estimate the second entry is taken to
//! be b0+b2 > 0, and the report carries an editorial note on that condition.
//!
//! Every condition is monotone non-decreasing in each of the six exponents,
//! and the list is invariant under swapping (s1,b1) ↔ (s2,b2); both facts are
//! exercised by the property suite.

use crate::ratfn::{ratfn_equal, RationalFnInS};
use crate::rational::rat;
use crate::report::{ConditionRecord, ConditionReport};
use crate::sym::{check_sign, SDomain, Strictness, SymExponent};
use crate::{Error, Result};

/// The six exponents (s0, s1, s2, b0, b1, b2) of a bilinear-estimate
/// instance. Validity is the checker's output, not an invariant.
#[derive(Debug, Clone)]
pub struct AfsExponentSextuple {
    pub s0: SymExponent,
    pub s1: SymExponent,
    pub s2: SymExponent,
    pub b0: SymExponent,
    pub b1: SymExponent,
    pub b2: SymExponent,
}

impl AfsExponentSextuple {
    pub fn new(
        s0: SymExponent,
        s1: SymExponent,
        s2: SymExponent,
        b0: SymExponent,
        b1: SymExponent,
        b2: SymExponent,
    ) -> Self {
        Self {
            s0,
            s1,
            s2,
            b0,
            b1,
            b2,
        }
    }

    pub fn slots(&self) -> [&SymExponent; 6] {
        [&self.s0, &self.s1, &self.s2, &self.b0, &self.b1, &self.b2]
    }

    /// Swap the (s1,b1) and (s2,b2) slots.
    pub fn swapped(&self) -> Self {
        Self {
            s0: self.s0.clone(),
            s1: self.s2.clone(),
            s2: self.s1.clone(),
            b0: self.b0.clone(),
            b1: self.b2.clone(),
            b2: self.b1.clone(),
        }
    }
}

pub const AFS_SLOT_NAMES: [&str; 6] = ["s0", "s1", "s2", "b0", "b1", "b2"];

fn is_affine(e: &SymExponent) -> bool {
    let affine_fn = |f: &RationalFnInS| f.as_polynomial().is_some_and(|p| p.degree() <= 1);
    affine_fn(&e.base) && affine_fn(&e.eps)
}

fn require_affine_for_interval(
    slots: &[&SymExponent],
    names: &[&str],
    domain: &SDomain,
) -> Result<()> {
    if matches!(domain, SDomain::Interval(_)) {
        for (name, e) in names.iter().zip(slots) {
            if !is_affine(e) {
                return Err(Error::UnsupportedShape(format!(
                    "interval-parametric check needs exponents affine in s; {name} = {e} is not"
                )));
            }
        }
    }
    Ok(())
}

fn c(n: i64, d: i64) -> SymExponent {
    SymExponent::from_rational(rat(n, d))
}

/// Decide the full condition list on a point or interval domain. Exact
/// throughout: pointwise via ε-exponent comparison, interval-wise via
/// polynomial sign determination on each margin.
pub fn afs_check(x: &AfsExponentSextuple, domain: &SDomain) -> Result<ConditionReport> {
    require_affine_for_interval(&x.slots(), &AFS_SLOT_NAMES, domain)?;
    let s_sum = &(&x.s0 + &x.s1) + &x.s2;
    let b_sum = &(&x.b0 + &x.b1) + &x.b2;
    let s12 = &x.s1 + &x.s2;
    let s02 = &x.s0 + &x.s2;
    let s01 = &x.s0 + &x.s1;
    let b01 = &x.b0 + &x.b1;
    let b02 = &x.b0 + &x.b2;
    let b12 = &x.b1 + &x.b2;

    struct Cond {
        id: &'static str,
        text: String,
        margin: SymExponent,
        strict: Strictness,
        note: Option<&'static str>,
    }
    let strict = Strictness::Strict;
    let non_strict = Strictness::NonStrict;
    let conds = [
        Cond {
            id: "b-sum",
            text: format!("b0+b1+b2 = {b_sum} > 1/2"),
            margin: &b_sum - &c(1, 2),
            strict,
            note: None,
        },
        Cond {
            id: "b01-pos",
            text: format!("b0+b1 = {b01} > 0"),
            margin: b01.clone(),
            strict,
            note: None,
        },
        Cond {
            id: "b02-pos",
            text: format!("b0+b2 = {b02} > 0"),
            margin: b02.clone(),
            strict,
            note: Some("source prints b0+b1 twice; b0+b2 assumed by symmetry"),
        },
        Cond {
            id: "b12-pos",
            text: format!("b1+b2 = {b12} > 0"),
            margin: b12.clone(),
            strict,
            note: None,
        },
        Cond {
            id: "s-sum-bsum",
            text: format!("s0+s1+s2 = {s_sum} > 2-(b0+b1+b2)"),
            margin: &(&s_sum + &b_sum) - &c(2, 1),
            strict,
            note: None,
        },
        Cond {
            id: "s-sum-b01",
            text: format!("s0+s1+s2 = {s_sum} > 3/2-(b0+b1)"),
            margin: &(&s_sum + &b01) - &c(3, 2),
            strict,
            note: None,
        },
        Cond {
            id: "s-sum-b02",
            text: format!("s0+s1+s2 = {s_sum} > 3/2-(b0+b2)"),
            margin: &(&s_sum + &b02) - &c(3, 2),
            strict,
            note: None,
        },
        Cond {
            id: "s-sum-b12",
            text: format!("s0+s1+s2 = {s_sum} > 3/2-(b1+b2)"),
            margin: &(&s_sum + &b12) - &c(3, 2),
            strict,
            note: None,
        },
        Cond {
            id: "s-sum-b0",
            text: format!("s0+s1+s2 = {s_sum} > 1-b0"),
            margin: &(&s_sum + &x.b0) - &c(1, 1),
            strict,
            note: None,
        },
        Cond {
            id: "s-sum-b1",
            text: format!("s0+s1+s2 = {s_sum} > 1-b1"),
            margin: &(&s_sum + &x.b1) - &c(1, 1),
            strict,
            note: None,
        },
        Cond {
            id: "s-sum-b2",
            text: format!("s0+s1+s2 = {s_sum} > 1-b2"),
            margin: &(&s_sum + &x.b2) - &c(1, 1),
            strict,
            note: None,
        },
        Cond {
            id: "s-sum-1",
            text: format!("s0+s1+s2 = {s_sum} > 1"),
            margin: &s_sum - &c(1, 1),
            strict,
            note: None,
        },
        Cond {
            id: "combined-b0",
            text: "(s0+s1+s2)+(s1+s2+b0) > 3/2".to_string(),
            margin: &(&(&s_sum + &s12) + &x.b0) - &c(3, 2),
            strict,
            note: None,
        },
        Cond {
            id: "combined-b1",
            text: "(s0+s1+s2)+(s0+s2+b1) > 3/2".to_string(),
            margin: &(&(&s_sum + &s02) + &x.b1) - &c(3, 2),
            strict,
            note: None,
        },
        Cond {
            id: "combined-b2",
            text: "(s0+s1+s2)+(s0+s1+b2) > 3/2".to_string(),
            margin: &(&(&s_sum + &s01) + &x.b2) - &c(3, 2),
            strict,
            note: None,
        },
        Cond {
            id: "pair12-b0",
            text: format!("s1+s2 = {s12} > -b0"),
            margin: &s12 + &x.b0,
            strict,
            note: None,
        },
        Cond {
            id: "pair02-b1",
            text: format!("s0+s2 = {s02} > -b1"),
            margin: &s02 + &x.b1,
            strict,
            note: None,
        },
        Cond {
            id: "pair01-b2",
            text: format!("s0+s1 = {s01} > -b2"),
            margin: &s01 + &x.b2,
            strict,
            note: None,
        },
        Cond {
            id: "pair12-nonneg",
            text: format!("s1+s2 = {s12} ≥ 0"),
            margin: s12.clone(),
            strict: non_strict,
            note: None,
        },
        Cond {
            id: "pair02-nonneg",
            text: format!("s0+s2 = {s02} ≥ 0"),
            margin: s02.clone(),
            strict: non_strict,
            note: None,
        },
        Cond {
            id: "pair01-nonneg",
            text: format!("s0+s1 = {s01} ≥ 0"),
            margin: s01.clone(),
            strict: non_strict,
            note: None,
        },
    ];

    let mut report = ConditionReport::new();
    for cond in conds {
        let chk = check_sign(&cond.margin, domain, cond.strict)?;
        let mut rec = ConditionRecord::from_check(cond.id, cond.text, cond.strict, &chk);
        if let Some(n) = cond.note {
            rec = rec.with_note(n);
        }
        report.push(rec);
    }
    Ok(report)
}

/// One slot of a partially specified sextuple: either pinned, or a base with
/// a free integer ε order to be searched.
#[derive(Debug, Clone)]
pub enum AfsSlot {
    Fixed(SymExponent),
    Free {
        base: RationalFnInS,
        lo: i64,
        hi: i64,
    },
}

impl AfsSlot {
    pub fn fixed(e: SymExponent) -> Self {
        AfsSlot::Fixed(e)
    }

    /// Free order over the default range -8..=8.
    pub fn free(base: RationalFnInS) -> Self {
        AfsSlot::Free {
            base,
            lo: -8,
            hi: 8,
        }
    }

    /// A `+`-decorated slot: order in 1..=8.
    pub fn free_plus(base: RationalFnInS) -> Self {
        AfsSlot::Free { base, lo: 1, hi: 8 }
    }

    /// A `-`-decorated slot: order in -8..=-1.
    pub fn free_minus(base: RationalFnInS) -> Self {
        AfsSlot::Free {
            base,
            lo: -8,
            hi: -1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct AfsPartial {
    pub slots: [AfsSlot; 6],
}

#[derive(Debug, Clone)]
pub struct AfsAssignment {
    /// Chosen ε order per free slot, as (slot index, order), in slot order.
    pub orders: Vec<(usize, i64)>,
    pub sextuple: AfsExponentSextuple,
}

fn instantiate(partial: &AfsPartial, choice: &[i64]) -> AfsExponentSextuple {
    let mut filled: Vec<SymExponent> = Vec::with_capacity(6);
    let mut next = 0usize;
    for slot in &partial.slots {
        match slot {
            AfsSlot::Fixed(e) => filled.push(e.clone()),
            AfsSlot::Free { base, .. } => {
                filled.push(SymExponent::with_order(base.clone(), choice[next]));
                next += 1;
            }
        }
    }
    AfsExponentSextuple::new(
        filled[0].clone(),
        filled[1].clone(),
        filled[2].clone(),
        filled[3].clone(),
        filled[4].clone(),
        filled[5].clone(),
    )
}

/// Search integer ε orders for the free slots, lexicographically in slot
/// order, and return the smallest assignment on which [`afs_check`] passes.
/// Returns `None` when no assignment in range works.
pub fn afs_feasible(partial: &AfsPartial, domain: &SDomain) -> Result<Option<AfsAssignment>> {
    let free: Vec<(usize, i64, i64)> = partial
        .slots
        .iter()
        .enumerate()
        .filter_map(|(i, s)| match s {
            AfsSlot::Free { lo, hi, .. } => Some((i, *lo, *hi)),
            AfsSlot::Fixed(_) => None,
        })
        .collect();

    let mut choice: Vec<i64> = free.iter().map(|&(_, lo, _)| lo).collect();
    loop {
        let sextuple = instantiate(partial, &choice);
        if afs_check(&sextuple, domain)?.pass() {
            let orders = free
                .iter()
                .map(|&(i, _, _)| i)
                .zip(choice.iter().copied())
                .collect();
            return Ok(Some(AfsAssignment { orders, sextuple }));
        }
        if free.is_empty() {
            return Ok(None);
        }
        let mut pos = free.len();
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            if choice[pos] < free[pos].2 {
                choice[pos] += 1;
                for slot in choice
                    .iter_mut()
                    .skip(pos + 1)
                    .zip(free.iter().skip(pos + 1))
                {
                    *slot.0 = slot.1 .1;
                }
                break;
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductLawVariant {
    /// Strict sum s0+s1+s2 > 3/2, non-strict pairwise sums.
    InhomogeneousA,
    /// Exact sum s0+s1+s2 = 3/2 (polynomial identity), strict pairwise sums.
    HomogeneousB,
}

/// The Sobolev multiplication law ‖uv‖_{H^{-s0}} ≲ ‖u‖_{H^{s1}} ‖v‖_{H^{s2}}.
pub fn sobolev_product_check(
    s0: &SymExponent,
    s1: &SymExponent,
    s2: &SymExponent,
    variant: ProductLawVariant,
    domain: &SDomain,
) -> Result<ConditionReport> {
    require_affine_for_interval(&[s0, s1, s2], &["s0", "s1", "s2"], domain)?;

    let sum = &(s0 + s1) + s2;
    let pairs = [
        ("pair01", format!("s0+s1 = {}", s0 + s1), s0 + s1),
        ("pair02", format!("s0+s2 = {}", s0 + s2), s0 + s2),
        ("pair12", format!("s1+s2 = {}", s1 + s2), s1 + s2),
    ];
    let mut report = ConditionReport::new();
    match variant {
        ProductLawVariant::InhomogeneousA => {
            let chk = check_sign(&(&sum - &c(3, 2)), domain, Strictness::Strict)?;
            report.push(ConditionRecord::from_check(
                "sum",
                format!("s0+s1+s2 = {sum} > 3/2"),
                Strictness::Strict,
                &chk,
            ));
            for (id, text, margin) in pairs {
                let chk = check_sign(&margin, domain, Strictness::NonStrict)?;
                report.push(ConditionRecord::from_check(
                    id,
                    format!("{text} ≥ 0"),
                    Strictness::NonStrict,
                    &chk,
                ));
            }
        }
        ProductLawVariant::HomogeneousB => {
            let diff = &sum - &c(3, 2);
            let holds = ratfn_equal(&diff.base, &RationalFnInS::zero()) && diff.eps.is_zero();
            report.push(ConditionRecord::identity(
                "sum-exact",
                format!("s0+s1+s2 = {sum} = 3/2 identically"),
                holds,
            ));
            for (id, text, margin) in pairs {
                let chk = check_sign(&margin, domain, Strictness::Strict)?;
                report.push(ConditionRecord::from_check(
                    id,
                    format!("{text} > 0"),
                    Strictness::Strict,
                    &chk,
                ));
            }
        }
    }
    Ok(report)
}

/// The s-domain on which nearly every instantiation is checked:
/// `s ∈ (3/4, 1]`, realized as `[3/4 + 10^-6, 1]` per the open-endpoint
/// convention.
pub fn standard_domain() -> SDomain {
    let lo = rat(3, 4) + rat(1, 1_000_000);
    SDomain::Interval(crate::interval::ClosedInterval::new(lo, rat(1, 1)).expect("ordered"))
}
