//! Tightness certificates for the bounds: closed-form extremal instances,
//! sweeps that read off the best possible constants, and a seeded random
//! search for near-violations.
//!
//! The two-valued construction used throughout puts the reference direction at
//! e = (1/√2, 1/√2) and the test vector at x = (lo·e₁, hi·e₂). Each entry of x
//! is stored as the floating-point product with the matching entry of e, so
//! the admissibility slack evaluates to exactly 0.0: the instance sits on the
//! boundary of its box in floating point, not merely near it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, BoundId, BoundReport};
use crate::conditions::{self, Bracket, Combination, ConditionReport, DEFAULT_TOL};
use crate::error::Error;
use crate::scalar::Scalar;
use crate::space::{Mode, Vector, WeightedSpace};

/// Ratios above `1 + VIOLATION_TOL` are counted as violations by the search.
pub const VIOLATION_TOL: f64 = 1e-9;

/// One point of a constant sweep: the measured quantity, the normalizer that
/// multiplies the sharp constant in the inequality, the constant this instance
/// actually attains, and the closed-form value it should attain.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    /// Sweep coordinate: the box eccentricity (hi−lo)/(hi+lo) for standalone
    /// extremal instances, or the sweep's own parameter (q, λ) inside a sweep.
    pub parameter: f64,
    pub measured: f64,
    /// The inequality reads `measured ≤ constant · bound_normalizer`.
    pub bound_normalizer: f64,
    /// measured / bound_normalizer — the constant this instance forces.
    pub implied_constant: f64,
    /// What the closed form says the instance attains.
    pub analytic_prediction: f64,
}

impl SweepResult {
    /// |implied − predicted|.
    pub fn abs_error(&self) -> f64 {
        (self.implied_constant - self.analytic_prediction).abs()
    }
}

/// A concrete boundary instance together with its sweep numbers, so callers
/// can re-verify every claim against the evaluation layer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremalInstance {
    pub space: WeightedSpace,
    pub e: Vector,
    pub x: Vector,
    pub bracket: Bracket,
    pub condition: ConditionReport,
    pub result: SweepResult,
}

fn two_valued_entries(e: &Vector, lo: Scalar, hi: Scalar) -> Vec<Scalar> {
    e.entries()
        .iter()
        .enumerate()
        .map(|(i, &c)| if i % 2 == 0 { lo * c } else { hi * c })
        .collect()
}

fn positive_pair(lo: f64, hi: f64) -> Result<(f64, f64), Error> {
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && hi > lo) {
        return Err(Error::InvalidBox {
            reason: format!("extremal construction needs hi > lo > 0, got ({lo}, {hi})"),
        });
    }
    Ok((lo, hi))
}

fn boundary_pair() -> (WeightedSpace, Vector) {
    let space = WeightedSpace::standard(2).expect("two points");
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let e = Vector::from_reals(&[s, s]).expect("finite");
    (space, e)
}

/// The two-point instance x = (a·e₁, A·e₂) that attains the closed-form ratio
/// of the real-box bound with x = y. Its implied constant is the gap ratio
///
/// ```text
/// (‖x‖² − ⟨x,e⟩²) / ( (A−a)²/(aA) · ⟨x,e⟩² )  =  aA/(a+A)²,
/// ```
///
/// which approaches the sharp 1/4 as the box tightens (A → a).
pub fn extremal_c3(lo: f64, hi: f64) -> Result<ExtremalInstance, Error> {
    let (a, big_a) = positive_pair(lo, hi)?;
    let (space, e) = boundary_pair();
    let bracket = Bracket::real(a, big_a)?;
    let x = Vector::new(two_valued_entries(&e, bracket.lo, bracket.hi))?;
    let condition = conditions::check(&space, &x, &e, &bracket, 0.0)?;

    let pivot = space.inner(&x, &e)?.abs_sq();
    // The residual form of the gap avoids the cancellation that ‖x‖² − pivot
    // suffers on tight boxes; the implied constant stays accurate to ~1e-13
    // even at eccentricity 1e-3.
    let measured = space.norm_sq(&space.residual(&x, &e)?)?;
    let width = big_a - a;
    let bound_normalizer = width * width / (a * big_a) * pivot;
    let result = SweepResult {
        parameter: width / (big_a + a),
        measured,
        bound_normalizer,
        implied_constant: measured / bound_normalizer,
        analytic_prediction: a * big_a / ((a + big_a) * (a + big_a)),
    };
    Ok(ExtremalInstance {
        space,
        e,
        x,
        bracket,
        condition,
        result,
    })
}

/// Sweeps `extremal_c3` over the one-parameter family a = 1−q, A = 1+q, where
/// the implied constant is (1−q²)/4. The supremum 1/4 is approached as q → 0
/// and never attained: the constant in the real-box bound is sharp but the
/// inequality is strict on nondegenerate boxes.
pub fn sweep_q(qs: &[f64]) -> Result<Vec<SweepResult>, Error> {
    qs.iter()
        .map(|&q| {
            if !(q.is_finite() && q > 0.0 && q < 1.0) {
                return Err(Error::InvalidConfig {
                    reason: format!("sweep parameter q must lie in (0, 1), got {q}"),
                });
            }
            let inst = extremal_c3(1.0 - q, 1.0 + q)?;
            Ok(SweepResult {
                parameter: q,
                analytic_prediction: (1.0 - q * q) / 4.0,
                ..inst.result
            })
        })
        .collect()
}

/// The boundary instance for the one-sided combination bound with x = y, where
/// the combination λx + (1−λ)x = x itself sits on the box boundary. Measured
/// against the normalizer |Γ−γ|²/(λ(1−λ)), the implied constant is exactly
/// λ(1−λ)/4 — independent of the box, maximal (1/16) at λ = 1/2.
pub fn extremal_t3(lo: f64, hi: f64, lambda: f64) -> Result<ExtremalInstance, Error> {
    if !(lo.is_finite() && hi.is_finite() && hi > lo) {
        return Err(Error::InvalidBox {
            reason: format!("extremal construction needs hi > lo, got ({lo}, {hi})"),
        });
    }
    let comb = Combination::plus(lambda)?;
    let (space, e) = boundary_pair();
    let bracket = Bracket::real(lo, hi)?;
    let x = Vector::new(two_valued_entries(&e, bracket.lo, bracket.hi))?;
    // With x = y the combination is x again, bitwise.
    let z = conditions::combine(&x, &x, comb)?;
    let condition = conditions::check(&space, &z, &e, &bracket, 0.0)?;

    // Re G(x, x) is the Schwartz gap of x; the residual form is the
    // cancellation-free way to measure it.
    let measured = space.norm_sq(&space.residual(&x, &e)?)?;
    let width = hi - lo;
    let gain = comb.lambda() * (1.0 - comb.lambda());
    let bound_normalizer = width * width / gain;
    let result = SweepResult {
        parameter: lambda,
        measured,
        bound_normalizer,
        implied_constant: measured / bound_normalizer,
        analytic_prediction: gain / 4.0,
    };
    Ok(ExtremalInstance {
        space,
        e,
        x,
        bracket,
        condition,
        result,
    })
}

/// Sweeps `extremal_t3` over λ for a fixed box. The implied constant traces
/// λ(1−λ)/4, certifying that 1/16 — reached only at λ = 1/2 — is the best
/// constant uniform in λ.
pub fn sweep_lambda(lo: f64, hi: f64, lambdas: &[f64]) -> Result<Vec<SweepResult>, Error> {
    lambdas
        .iter()
        .map(|&lambda| Ok(extremal_t3(lo, hi, lambda)?.result))
        .collect()
}

/// Configuration for the randomized tightness search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub bound: BoundId,
    pub mode: Mode,
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    pub box_x: Bracket,
    /// Box for the second vector; defaults to `box_x`.
    pub box_y: Option<Bracket>,
    /// Required for the combination bounds, ignored otherwise.
    pub lambda: Option<f64>,
}

impl SearchConfig {
    fn validate(&self) -> Result<(Bracket, Option<Combination>), Error> {
        if self.dim < 2 {
            return Err(Error::InvalidConfig {
                reason: "search needs dim ≥ 2: on one point the functional is identically zero"
                    .to_string(),
            });
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig {
                reason: "search needs at least one trial".to_string(),
            });
        }
        let box_y = self.box_y.unwrap_or(self.box_x);
        if self.mode == Mode::Real && !(self.box_x.is_real() && box_y.is_real()) {
            return Err(Error::InvalidConfig {
                reason: "real mode requires real boxes".to_string(),
            });
        }
        let comb = match self.bound {
            BoundId::T3 | BoundId::C4 => {
                let lambda = self.lambda.ok_or_else(|| Error::InvalidConfig {
                    reason: "the combination bounds need lambda".to_string(),
                })?;
                Some(Combination::plus(lambda)?)
            }
            BoundId::T1 | BoundId::T2 | BoundId::C3 => None,
            BoundId::Schwartz => {
                return Err(Error::InvalidConfig {
                    reason: "the baseline bound is unconditional; there is nothing to search"
                        .to_string(),
                })
            }
        };
        Ok((box_y, comb))
    }
}

/// The trial that currently attains the largest ratio.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BestTrial {
    pub trial: usize,
    pub ratio: f64,
    pub measured: f64,
    pub bound_value: f64,
    pub x: Vector,
    pub y: Vector,
}

/// Outcome of a search run. Equality of two results certifies bitwise
/// reproducibility for a fixed configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub bound: BoundId,
    pub trials: usize,
    pub seed: u64,
    /// Largest ratio over applicable trials; ties resolve to the lowest trial.
    pub max_ratio: Option<f64>,
    pub best: Option<BestTrial>,
    /// Trials with ratio > 1 + `VIOLATION_TOL`. A sound bound keeps this at 0.
    pub violations: usize,
    /// Trials whose generated instance failed applicability or had no ratio.
    pub not_applicable: usize,
}

/// Searches for near-violations of one bound on the standard space of the
/// given dimension, with e = (1, …, 1)/√n. Each trial draws from stream
/// `trial` of a generator keyed only by `seed`, so any single trial can be
/// replayed without rerunning its predecessors, distinct seeds share no
/// streams, and the whole run is reproducible bit for bit.
///
/// Trial 0 injects the two-valued boundary instance (when the dimension is
/// even and the instance is admissible for the configuration) so the reported
/// maximum starts at the analytic extremal rather than at a random point.
pub fn random_search(config: &SearchConfig) -> Result<SearchResult, Error> {
    let (box_y, comb) = config.validate()?;
    let space = WeightedSpace::standard(config.dim)?;
    let e = space.normalize(&Vector::from_reals(&vec![1.0; config.dim])?)?;

    let mut best: Option<BestTrial> = None;
    let mut violations = 0usize;
    let mut not_applicable = 0usize;

    for trial in 0..config.trials {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(trial as u64);
        let pair = if trial == 0 {
            extremal_injection(config, &space, &e, &box_y, comb)?
        } else {
            None
        };
        let (x, y) = match pair {
            Some(p) => p,
            None => sample_pair(config, &space, &e, &box_y, comb, &mut rng)?,
        };
        let report = evaluate(config, &space, &x, &y, &e, &box_y, comb)?;
        if !report.applicable {
            not_applicable += 1;
            continue;
        }
        let ratio = match report.ratio {
            Some(r) => r,
            None => {
                not_applicable += 1;
                continue;
            }
        };
        if ratio > 1.0 + VIOLATION_TOL {
            violations += 1;
        }
        let improves = best.as_ref().is_none_or(|b| ratio > b.ratio);
        if improves {
            best = Some(BestTrial {
                trial,
                ratio,
                measured: report.measured,
                bound_value: report.bound_value,
                x,
                y,
            });
        }
    }

    Ok(SearchResult {
        bound: config.bound,
        trials: config.trials,
        seed: config.seed,
        max_ratio: best.as_ref().map(|b| b.ratio),
        best,
        violations,
        not_applicable,
    })
}

/// The deterministic trial-0 instance: x two-valued on box_x, y two-valued on
/// box_y. Returns `None` when the construction does not fit the configuration
/// (odd dimension, or a combination instance that is not admissible).
fn extremal_injection(
    config: &SearchConfig,
    space: &WeightedSpace,
    e: &Vector,
    box_y: &Bracket,
    comb: Option<Combination>,
) -> Result<Option<(Vector, Vector)>, Error> {
    if !config.dim.is_multiple_of(2) {
        return Ok(None);
    }
    let x = Vector::new(two_valued_entries(e, config.box_x.lo, config.box_x.hi))?;
    let y = Vector::new(two_valued_entries(e, box_y.lo, box_y.hi))?;
    match (config.bound, comb) {
        (BoundId::T3, Some(c)) => {
            let z = conditions::combine(&x, &y, c)?;
            if !conditions::check(space, &z, e, &config.box_x, DEFAULT_TOL)?.admissible {
                return Ok(None);
            }
        }
        (BoundId::C4, Some(c)) => {
            for sign in [c, Combination::minus(c.lambda())?] {
                let z = conditions::combine(&x, &y, sign)?;
                if !conditions::check(space, &z, e, &config.box_x, DEFAULT_TOL)?.admissible {
                    return Ok(None);
                }
            }
        }
        _ => {}
    }
    Ok(Some((x, y)))
}

fn sample_pair(
    config: &SearchConfig,
    space: &WeightedSpace,
    e: &Vector,
    box_y: &Bracket,
    comb: Option<Combination>,
    rng: &mut ChaCha8Rng,
) -> Result<(Vector, Vector), Error> {
    match config.bound {
        BoundId::T1 | BoundId::T2 | BoundId::C3 => {
            let x = conditions::sample_one(space, e, &config.box_x, config.mode, rng)?;
            let y = conditions::sample_one(space, e, box_y, config.mode, rng)?;
            Ok((x, y))
        }
        BoundId::T3 => {
            // Sample the admissible combination z, pick x freely, solve for y.
            let c = comb.expect("validated");
            let z = conditions::sample_one(space, e, &config.box_x, config.mode, rng)?;
            let x = free_vector(space, e, &config.box_x, config.mode, rng)?;
            let y = z.sub(&x.scaled(Scalar::real(c.lambda())))?
                .scaled(Scalar::real(1.0 / (1.0 - c.lambda())));
            Ok((x, y))
        }
        BoundId::C4 => {
            // Sample both admissible combinations and invert the linear map.
            let c = comb.expect("validated");
            let z_plus = conditions::sample_one(space, e, &config.box_x, config.mode, rng)?;
            let z_minus = conditions::sample_one(space, e, &config.box_x, config.mode, rng)?;
            let x = z_plus
                .add(&z_minus)?
                .scaled(Scalar::real(0.5 / c.lambda()));
            let y = z_plus
                .sub(&z_minus)?
                .scaled(Scalar::real(0.5 / (1.0 - c.lambda())));
            Ok((x, y))
        }
        BoundId::Schwartz => unreachable!("rejected by validate"),
    }
}

/// A free (unconstrained) vector on the scale of the box, used for the x-leg
/// of combination trials.
fn free_vector(
    space: &WeightedSpace,
    e: &Vector,
    b: &Bracket,
    mode: Mode,
    rng: &mut ChaCha8Rng,
) -> Result<Vector, Error> {
    let scale = b.center().abs().max(b.radius()).max(1.0);
    let dir = conditions::random_unit_direction(space, mode, rng)?;
    e.scaled(b.center()).add(&dir.scaled(Scalar::real(scale)))
}

fn evaluate(
    config: &SearchConfig,
    space: &WeightedSpace,
    x: &Vector,
    y: &Vector,
    e: &Vector,
    box_y: &Bracket,
    comb: Option<Combination>,
) -> Result<BoundReport, Error> {
    match config.bound {
        BoundId::T1 => bounds::bound_t1(space, x, y, e, &config.box_x, box_y, DEFAULT_TOL),
        BoundId::T2 => bounds::bound_t2(space, x, y, e, &config.box_x, box_y, DEFAULT_TOL),
        BoundId::C3 => bounds::bound_c3(space, x, y, e, &config.box_x, box_y, DEFAULT_TOL),
        BoundId::T3 => bounds::bound_t3(
            space,
            x,
            y,
            e,
            &config.box_x,
            comb.expect("validated"),
            DEFAULT_TOL,
        ),
        BoundId::C4 => {
            let c = comb.expect("validated");
            let minus = Combination::minus(c.lambda())?;
            bounds::bound_c4(space, x, y, e, &config.box_x, c, minus, DEFAULT_TOL)
        }
        BoundId::Schwartz => unreachable!("rejected by validate"),
    }
}
