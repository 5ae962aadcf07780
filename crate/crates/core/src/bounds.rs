//! Upper bounds for the Chebyshev functional G(x, y) = ⟨x, y⟩ − ⟨x, e⟩⟨e, y⟩.
//!
//! Every evaluator returns a [`BoundReport`] carrying the functional, the
//! quantity the bound constrains (|G|, Re G or |Re G|), the bound value, their
//! ratio, and the admissibility slacks of the hypotheses it checked. A report
//! with `applicable == false` means a hypothesis failed on this data; the
//! numbers are still filled in for inspection, but no inequality is claimed.
//!
//! The five bounds, with (lo, hi) boxes written (a, A), (b, B) or (γ, Γ):
//!
//! ```text
//! t1   |G| ≤ ¼·|A − a|·|B − b|                 x, y box-admissible
//! t2   |G| ≤ ¼·M(a,A)·M(b,B)·|⟨x,e⟩⟨e,y⟩|     x, y box-admissible, Re(āA) > 0
//! c3   |G| ≤ ¼·(A−a)(B−b)/√(abAB)·|⟨x,e⟩⟨e,y⟩|  real boxes with A > a > 0
//! t3   Re G ≤ (1/16)·(1/(λ(1−λ)))·|Γ − γ|²    λx + (1−λ)y admissible
//! c4   |Re G| ≤ same                          both λx ± (1−λ)y admissible
//! ```
//!
//! plus the unconditional Schwartz baseline |G|² ≤ (‖x‖²−|⟨x,e⟩|²)(‖y‖²−|⟨y,e⟩|²).

use serde::{Deserialize, Serialize};

use crate::conditions::{self, Bracket, Combination, ConditionReport, Sign};
use crate::error::Error;
use crate::scalar::Scalar;
use crate::space::{Vector, WeightedSpace};

/// Bounds with values below this are treated as degenerate: the ratio is
/// reported as not-applicable instead of risking an overflow.
pub const RATIO_FLOOR: f64 = 1e-300;

/// The relative-deviation denominator ⟨x,e⟩⟨e,y⟩ must exceed
/// `DENOM_FLOOR · ‖x‖·‖y‖` in magnitude, otherwise the deviation is
/// not-applicable (never an infinity).
pub const DENOM_FLOOR: f64 = 1e-12;

/// Identifier tags for the bounds, shared with CLI flags and report files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundId {
    T1,
    T2,
    C3,
    T3,
    C4,
    Schwartz,
}

impl BoundId {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::T1 => "t1",
            BoundId::T2 => "t2",
            BoundId::C3 => "c3",
            BoundId::T3 => "t3",
            BoundId::C4 => "c4",
            BoundId::Schwartz => "schwartz",
        }
    }
}

/// Outcome of one bound evaluation on one instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub bound_id: BoundId,
    /// G(x, y) itself.
    pub functional: Scalar,
    pub functional_abs: f64,
    pub functional_re: f64,
    /// The quantity this bound constrains: |G| (t1/t2/c3/schwartz),
    /// Re G (t3) or |Re G| (c4).
    pub measured: f64,
    pub bound_value: f64,
    /// measured / bound_value, or `None` when the bound is degenerate.
    pub ratio: Option<f64>,
    /// True when every hypothesis of the bound held on this data.
    pub applicable: bool,
    /// Why the bound is not applicable, when it is not.
    pub reason: Option<String>,
    /// Admissibility slacks of the checked hypotheses, in documented order.
    pub conditions: Vec<ConditionReport>,
}

fn make_report(
    bound_id: BoundId,
    g: Scalar,
    measured: f64,
    bound_value: f64,
    conditions: Vec<ConditionReport>,
    reason: Option<String>,
) -> BoundReport {
    let ratio = if bound_value > RATIO_FLOOR {
        Some(measured / bound_value)
    } else {
        None
    };
    BoundReport {
        bound_id,
        functional: g,
        functional_abs: g.abs(),
        functional_re: g.re,
        measured,
        bound_value,
        ratio,
        applicable: reason.is_none(),
        reason,
        conditions,
    }
}

fn inadmissible_reason(parts: &[(&str, &ConditionReport)]) -> Option<String> {
    let failed: Vec<String> = parts
        .iter()
        .filter(|(_, c)| !c.admissible)
        .map(|(name, c)| format!("condition on {name} violated (slack_re = {:e})", c.slack_re))
        .collect();
    if failed.is_empty() {
        None
    } else {
        Some(failed.join("; "))
    }
}

/// G(x, y) = ⟨x, y⟩ − ⟨x, e⟩⟨e, y⟩ for a unit reference vector `e`.
///
/// Equivalently ⟨x − ⟨x,e⟩e, y − ⟨y,e⟩e⟩: the covariance of x and y once
/// their components along `e` are removed.
pub fn gruss_functional(
    space: &WeightedSpace,
    x: &Vector,
    y: &Vector,
    e: &Vector,
) -> Result<Scalar, Error> {
    space.require_unit(e)?;
    let xy = space.inner(x, y)?;
    let xe = space.inner(x, e)?;
    let ey = space.inner(e, y)?;
    Ok(xy - xe * ey)
}

/// The two Schwartz gaps ‖x‖² − |⟨x,e⟩|² and ‖y‖² − |⟨y,e⟩|², whose product
/// bounds |G|² unconditionally.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchwartzGap {
    pub gap_x: f64,
    pub gap_y: f64,
    pub product: f64,
}

pub fn schwartz_gap(
    space: &WeightedSpace,
    x: &Vector,
    y: &Vector,
    e: &Vector,
) -> Result<SchwartzGap, Error> {
    space.require_unit(e)?;
    let gap_x = space.norm_sq(x)? - space.inner(x, e)?.abs_sq();
    let gap_y = space.norm_sq(y)? - space.inner(y, e)?.abs_sq();
    Ok(SchwartzGap {
        gap_x,
        gap_y,
        product: gap_x * gap_y,
    })
}

/// The box shape factor
///
/// ```text
/// M(lo, hi) = √( [ (|hi| − |lo|)² + 4·(|hi·conj(lo)| − Re(hi·conj(lo))) ] / Re(conj(lo)·hi) )
/// ```
///
/// defined when Re(conj(lo)·hi) > 0, i.e. when the box does not straddle the
/// origin too widely. For real 0 < lo < hi it reduces to (hi − lo)/√(lo·hi);
/// the reduction is exact here because |hi·conj(lo)| and Re(hi·conj(lo)) are
/// then the same floating-point product.
pub fn m_factor(b: &Bracket) -> Result<f64, Error> {
    let p = b.hi * b.lo.conj();
    let denom = p.re;
    if denom <= 0.0 {
        return Err(Error::MFactorPrecondition { re_product: denom });
    }
    let diff = b.hi.abs() - b.lo.abs();
    // Rounding can push the bracketed term a few ulp below zero for degenerate
    // complex boxes; clamp before the square root.
    let num = (diff * diff + 4.0 * (b.hi.abs() * b.lo.abs() - p.re)).max(0.0);
    Ok((num / denom).sqrt())
}

/// |G| ≤ ¼·|A − a|·|B − b| when x is (a, A)-admissible and y is (b, B)-admissible.
///
/// Conditions are reported in the order [x, y].
pub fn bound_t1(
    space: &WeightedSpace,
    x: &Vector,
    y: &Vector,
    e: &Vector,
    box_x: &Bracket,
    box_y: &Bracket,
    tol: f64,
) -> Result<BoundReport, Error> {
    let cx = conditions::check(space, x, e, box_x, tol)?;
    let cy = conditions::check(space, y, e, box_y, tol)?;
    let g = gruss_functional(space, x, y, e)?;
    let bound = 0.25 * box_x.width_abs() * box_y.width_abs();
    let reason = inadmissible_reason(&[("x", &cx), ("y", &cy)]);
    Ok(make_report(BoundId::T1, g, g.abs(), bound, vec![cx, cy], reason))
}

/// |G| ≤ ¼·M(a,A)·M(b,B)·|⟨x,e⟩⟨e,y⟩| under the same admissibility
/// hypotheses, with both boxes satisfying the M-factor precondition.
///
/// Tighter than `t1` when the components along `e` are small relative to the
/// box constants. Conditions are reported in the order [x, y].
pub fn bound_t2(
    space: &WeightedSpace,
    x: &Vector,
    y: &Vector,
    e: &Vector,
    box_x: &Bracket,
    box_y: &Bracket,
    tol: f64,
) -> Result<BoundReport, Error> {
    let m_x = m_factor(box_x)?;
    let m_y = m_factor(box_y)?;
    let cx = conditions::check(space, x, e, box_x, tol)?;
    let cy = conditions::check(space, y, e, box_y, tol)?;
    let g = gruss_functional(space, x, y, e)?;
    let pivot = (space.inner(x, e)? * space.inner(e, y)?).abs();
    let bound = 0.25 * m_x * m_y * pivot;
    let reason = inadmissible_reason(&[("x", &cx), ("y", &cy)]);
    Ok(make_report(BoundId::T2, g, g.abs(), bound, vec![cx, cy], reason))
}

fn positive_real_box(b: &Bracket, name: &str) -> Result<(f64, f64), Error> {
    if !b.is_real() {
        return Err(Error::InvalidBox {
            reason: format!("box {name} must be real for this bound"),
        });
    }
    let (lo, hi) = (b.lo.re, b.hi.re);
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::InvalidBox {
            reason: format!("box {name} must satisfy hi > lo > 0, got ({lo}, {hi})"),
        });
    }
    Ok((lo, hi))
}

/// The real-box specialization of `t2`:
/// |G| ≤ ¼·(A−a)(B−b)/√(abAB)·|⟨x,e⟩⟨e,y⟩| for real boxes with A > a > 0.
///
/// Agrees with `bound_t2` to rounding on the same inputs; kept separate
/// because the closed form is what parameter sweeps rearrange.
pub fn bound_c3(
    space: &WeightedSpace,
    x: &Vector,
    y: &Vector,
    e: &Vector,
    box_x: &Bracket,
    box_y: &Bracket,
    tol: f64,
) -> Result<BoundReport, Error> {
    let (a, big_a) = positive_real_box(box_x, "x")?;
    let (b, big_b) = positive_real_box(box_y, "y")?;
    let cx = conditions::check(space, x, e, box_x, tol)?;
    let cy = conditions::check(space, y, e, box_y, tol)?;
    let g = gruss_functional(space, x, y, e)?;
    let pivot = (space.inner(x, e)? * space.inner(e, y)?).abs();
    let bound = 0.25 * (big_a - a) * (big_b - b) / (a * b * big_a * big_b).sqrt() * pivot;
    let reason = inadmissible_reason(&[("x", &cx), ("y", &cy)]);
    Ok(make_report(BoundId::C3, g, g.abs(), bound, vec![cx, cy], reason))
}

/// ⟨x,y⟩ / (⟨x,e⟩⟨e,y⟩) − 1: how far the inner product deviates, relatively,
/// from the rank-one surrogate built from the components along `e`.
///
/// Returns `None` when the denominator is negligible against ‖x‖·‖y‖.
/// On admissible data its magnitude is bounded by ¼·M(a,A)·M(b,B).
pub fn relative_deviation(
    space: &WeightedSpace,
    x: &Vector,
    y: &Vector,
    e: &Vector,
) -> Result<Option<Scalar>, Error> {
    space.require_unit(e)?;
    let den = space.inner(x, e)? * space.inner(e, y)?;
    let scale = space.norm(x)? * space.norm(y)?;
    if den.abs() <= DENOM_FLOOR * scale {
        return Ok(None);
    }
    Ok(Some(space.inner(x, y)? / den - Scalar::ONE))
}

fn combination_bound_value(b: &Bracket, comb: Combination) -> f64 {
    // (1/16)·(1/(λ(1−λ)))·|hi − lo|², via gain() = 1/(4λ(1−λ)).
    0.25 * comb.gain() * (b.hi - b.lo).abs_sq()
}

/// Re G ≤ (1/16)·(1/(λ(1−λ)))·|Γ − γ|² when λx + (1−λ)y is (γ, Γ)-admissible.
///
/// The combination must carry the plus sign. The single condition reported is
/// the one on λx + (1−λ)y.
pub fn bound_t3(
    space: &WeightedSpace,
    x: &Vector,
    y: &Vector,
    e: &Vector,
    b: &Bracket,
    comb: Combination,
    tol: f64,
) -> Result<BoundReport, Error> {
    if comb.sign() != Sign::Plus {
        return Err(Error::InvalidCombination {
            reason: "this bound constrains the + combination; use the two-sided variant for ±"
                .to_string(),
        });
    }
    let z = conditions::combine(x, y, comb)?;
    let cz = conditions::check(space, &z, e, b, tol)?;
    let g = gruss_functional(space, x, y, e)?;
    let bound = combination_bound_value(b, comb);
    let reason = inadmissible_reason(&[("combination", &cz)]);
    Ok(make_report(BoundId::T3, g, g.re, bound, vec![cz], reason))
}

/// |Re G| ≤ (1/16)·(1/(λ(1−λ)))·|Γ − γ|² when both λx ± (1−λ)y are
/// (γ, Γ)-admissible.
///
/// `comb_plus` and `comb_minus` must share λ and carry the + and − signs
/// respectively. Conditions are reported in the order [plus, minus].
// The argument list mirrors bound_t3 plus the second combination; bundling
// them into a struct would hide the symmetry with the one-sided form.
#[allow(clippy::too_many_arguments)]
pub fn bound_c4(
    space: &WeightedSpace,
    x: &Vector,
    y: &Vector,
    e: &Vector,
    b: &Bracket,
    comb_plus: Combination,
    comb_minus: Combination,
    tol: f64,
) -> Result<BoundReport, Error> {
    if comb_plus.sign() != Sign::Plus || comb_minus.sign() != Sign::Minus {
        return Err(Error::InvalidCombination {
            reason: "two-sided bound needs one + and one − combination".to_string(),
        });
    }
    if comb_plus.lambda() != comb_minus.lambda() {
        return Err(Error::InvalidCombination {
            reason: format!(
                "both combinations must share lambda, got {} and {}",
                comb_plus.lambda(),
                comb_minus.lambda()
            ),
        });
    }
    let zp = conditions::combine(x, y, comb_plus)?;
    let zm = conditions::combine(x, y, comb_minus)?;
    let cp = conditions::check(space, &zp, e, b, tol)?;
    let cm = conditions::check(space, &zm, e, b, tol)?;
    let g = gruss_functional(space, x, y, e)?;
    let bound = combination_bound_value(b, comb_plus);
    let reason = inadmissible_reason(&[("plus combination", &cp), ("minus combination", &cm)]);
    Ok(make_report(
        BoundId::C4,
        g,
        g.re.abs(),
        bound,
        vec![cp, cm],
        reason,
    ))
}

/// The unconditional baseline |G| ≤ √(gap_x·gap_y) from the Schwartz
/// inequality on the residuals. Needs no box and is always applicable.
pub fn bound_schwartz(
    space: &WeightedSpace,
    x: &Vector,
    y: &Vector,
    e: &Vector,
) -> Result<BoundReport, Error> {
    let gaps = schwartz_gap(space, x, y, e)?;
    let g = gruss_functional(space, x, y, e)?;
    let bound = gaps.product.max(0.0).sqrt();
    Ok(make_report(BoundId::Schwartz, g, g.abs(), bound, vec![], None))
}

/// Verified instance of the refined Schwartz inequality
///
/// ```text
/// ‖u‖²‖v‖² − |⟨u,v⟩|² ≤ ¼·M(lo,hi)²·|⟨u,v⟩|²
/// ```
///
/// valid when Re ⟨hi·v − u, u − lo·v⟩ ≥ 0. Unlike the bounds above, `v` is an
/// arbitrary nonzero vector, not a unit one — this is the workhorse behind
/// `t2` (used once per factor with v = e).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchwartzRefinement {
    /// The Gram gap ‖u‖²‖v‖² − |⟨u,v⟩|².
    pub gram_gap: f64,
    /// ¼·M²·|⟨u,v⟩|².
    pub bound: f64,
    pub ratio: Option<f64>,
    /// Re ⟨hi·v − u, u − lo·v⟩.
    pub slack: f64,
    pub admissible: bool,
}

pub fn schwartz_refinement(
    space: &WeightedSpace,
    u: &Vector,
    v: &Vector,
    b: &Bracket,
    tol: f64,
) -> Result<SchwartzRefinement, Error> {
    let m = m_factor(b)?;
    let p = v.scaled(b.hi).sub(u)?;
    let q = u.sub(&v.scaled(b.lo))?;
    let slack = space.inner(&p, &q)?.re;
    let uv = space.inner(u, v)?.abs_sq();
    let gram_gap = space.norm_sq(u)? * space.norm_sq(v)? - uv;
    let bound = 0.25 * m * m * uv;
    let ratio = if bound > RATIO_FLOOR {
        Some(gram_gap / bound)
    } else {
        None
    };
    Ok(SchwartzRefinement {
        gram_gap,
        bound,
        ratio,
        slack,
        admissible: slack >= -tol,
    })
}

/// The elementary pairing estimate behind the combination bounds:
///
/// ```text
/// Re ⟨p, q⟩ ≤ (1/(4λ(1−λ)))·‖λp + (1−λ)q‖²
/// ```
///
/// with equality iff λp = (1−λ)q. Holds for every p, q and λ ∈ (0, 1).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvexPairBound {
    pub lhs: f64,
    pub rhs: f64,
}

pub fn convex_pair_bound(
    space: &WeightedSpace,
    p: &Vector,
    q: &Vector,
    lambda: f64,
) -> Result<ConvexPairBound, Error> {
    let comb = Combination::plus(lambda)?;
    let lhs = space.inner(p, q)?.re;
    let z = conditions::combine(p, q, comb)?;
    let rhs = comb.gain() * space.norm_sq(&z)?;
    Ok(ConvexPairBound { lhs, rhs })
}
