//! Admissibility conditions: when is a vector "bracketed" by a box of
//! constants relative to a unit reference vector?
//!
//! For a box (lo, hi) and unit `e`, the two equivalent formulations are
//!
//! ```text
//! slack_re   = Re ⟨hi·e − x, x − lo·e⟩
//! slack_ball = ¼|hi − lo|² − ‖x − ((lo + hi)/2)·e‖²
//! ```
//!
//! They are algebraically equal (the cross terms are purely imaginary), which
//! makes the pair a cheap internal consistency check: the module computes both
//! from their definitions and reports both.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::scalar::Scalar;
use crate::space::{Mode, Vector, WeightedSpace};

/// Default admissibility tolerance: a vector counts as admissible when
/// `slack_re ≥ −DEFAULT_TOL`, so exact boundary cases are included.
pub const DEFAULT_TOL: f64 = 1e-9;

/// λ values closer than this to 0 or 1 are rejected outright; the bounds they
/// feed blow up like 1/(λ(1−λ)).
pub const LAMBDA_EDGE: f64 = 1e-12;

/// An ordered pair of constants (lo, hi) bracketing a vector relative to the
/// reference vector. Degenerate boxes (lo == hi) are allowed and pin the
/// vector to lo·e exactly.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub lo: Scalar,
    pub hi: Scalar,
}

impl Bracket {
    pub fn new(lo: Scalar, hi: Scalar) -> Result<Self, Error> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::NonFinite {
                context: "box constant",
            });
        }
        Ok(Bracket { lo, hi })
    }

    pub fn real(lo: f64, hi: f64) -> Result<Self, Error> {
        Bracket::new(Scalar::real(lo), Scalar::real(hi))
    }

    /// Midpoint (lo + hi)/2.
    pub fn center(self) -> Scalar {
        (self.lo + self.hi).scale(0.5)
    }

    /// Half-width |hi − lo|/2: the radius of the admissible ball around `center·e`.
    pub fn radius(self) -> f64 {
        (self.hi - self.lo).abs() * 0.5
    }

    /// |hi − lo|.
    pub fn width_abs(self) -> f64 {
        (self.hi - self.lo).abs()
    }

    pub fn is_real(self) -> bool {
        self.lo.is_real() && self.hi.is_real()
    }
}

/// Which way the second vector enters a two-vector combination.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// A validated convex-combination parameter: λ strictly inside (0, 1)
/// together with the sign applied to the second vector.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Combination {
    lambda: f64,
    sign: Sign,
}

impl Combination {
    pub fn new(lambda: f64, sign: Sign) -> Result<Self, Error> {
        if !lambda.is_finite() || lambda <= LAMBDA_EDGE || lambda >= 1.0 - LAMBDA_EDGE {
            return Err(Error::InvalidLambda { lambda });
        }
        Ok(Combination { lambda, sign })
    }

    pub fn plus(lambda: f64) -> Result<Self, Error> {
        Combination::new(lambda, Sign::Plus)
    }

    pub fn minus(lambda: f64) -> Result<Self, Error> {
        Combination::new(lambda, Sign::Minus)
    }

    pub fn lambda(self) -> f64 {
        self.lambda
    }

    pub fn sign(self) -> Sign {
        self.sign
    }

    /// 1/(4λ(1−λ)), the factor the combination bounds carry.
    pub fn gain(self) -> f64 {
        1.0 / (4.0 * self.lambda * (1.0 - self.lambda))
    }
}

/// Outcome of an admissibility check: both slack formulations plus the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub slack_re: f64,
    pub slack_ball: f64,
    pub admissible: bool,
    pub tolerance: f64,
}

fn validate_tol(tol: f64) -> Result<(), Error> {
    if !tol.is_finite() || tol < 0.0 {
        return Err(Error::InvalidTolerance { tol });
    }
    Ok(())
}

/// Re ⟨hi·e − x, x − lo·e⟩, straight from the definition.
pub fn slack_re(
    space: &WeightedSpace,
    x: &Vector,
    e: &Vector,
    b: &Bracket,
) -> Result<f64, Error> {
    space.require_unit(e)?;
    let u = e.scaled(b.hi).sub(x)?;
    let v = x.sub(&e.scaled(b.lo))?;
    Ok(space.inner(&u, &v)?.re)
}

/// ¼|hi − lo|² − ‖x − center·e‖², the ball formulation of the same condition.
pub fn slack_ball(
    space: &WeightedSpace,
    x: &Vector,
    e: &Vector,
    b: &Bracket,
) -> Result<f64, Error> {
    space.require_unit(e)?;
    let r = b.radius();
    let d = x.sub(&e.scaled(b.center()))?;
    Ok(r * r - space.norm_sq(&d)?)
}

/// Evaluates both slacks and applies the verdict `slack_re ≥ −tol`.
pub fn check(
    space: &WeightedSpace,
    x: &Vector,
    e: &Vector,
    b: &Bracket,
    tol: f64,
) -> Result<ConditionReport, Error> {
    validate_tol(tol)?;
    let re = slack_re(space, x, e, b)?;
    let ball = slack_ball(space, x, e, b)?;
    Ok(ConditionReport {
        slack_re: re,
        slack_ball: ball,
        admissible: re >= -tol,
        tolerance: tol,
    })
}

/// λ·x ± (1−λ)·y.
pub fn combine(x: &Vector, y: &Vector, comb: Combination) -> Result<Vector, Error> {
    let l = comb.lambda();
    let xs = x.scaled(Scalar::real(l));
    let ys = y.scaled(Scalar::real(comb.sign().factor() * (1.0 - l)));
    xs.add(&ys)
}

/// Draws `count` vectors admissible for `(e, b)` with a fresh generator seeded
/// from `seed`. See [`sample_admissible_with`] for the construction.
pub fn sample_admissible(
    space: &WeightedSpace,
    e: &Vector,
    b: &Bracket,
    mode: Mode,
    seed: u64,
    count: usize,
) -> Result<Vec<Vector>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_admissible_with(space, e, b, mode, &mut rng, count)
}

/// Samples x = center·e + ρ·u with ‖u‖ = 1 and ρ ≤ radius, which satisfies the
/// ball condition by construction.
///
/// Directions are weighted-norm-uniform (Gaussian coordinates divided by √wᵢ);
/// the radius is radius·U^(1/d) with d the real degrees of freedom (dim in
/// real mode, 2·dim in complex mode), so draws concentrate near the boundary
/// where the bounds are tight. A degenerate box returns center·e exactly.
pub fn sample_admissible_with<R: Rng>(
    space: &WeightedSpace,
    e: &Vector,
    b: &Bracket,
    mode: Mode,
    rng: &mut R,
    count: usize,
) -> Result<Vec<Vector>, Error> {
    space.require_unit(e)?;
    let center = e.scaled(b.center());
    let radius = b.radius();
    let dof = match mode {
        Mode::Real => space.dim(),
        Mode::Complex => 2 * space.dim(),
    };
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let dir = random_unit_direction(space, mode, rng)?;
        let u: f64 = rng.random();
        let rho = radius * u.powf(1.0 / dof as f64);
        out.push(center.add(&dir.scaled(Scalar::real(rho)))?);
    }
    Ok(out)
}

/// Draws a single admissible vector from an existing generator.
pub fn sample_one<R: Rng>(
    space: &WeightedSpace,
    e: &Vector,
    b: &Bracket,
    mode: Mode,
    rng: &mut R,
) -> Result<Vector, Error> {
    Ok(sample_admissible_with(space, e, b, mode, rng, 1)?
        .pop()
        .expect("one sample requested"))
}

/// A weighted-norm unit vector in a uniformly random direction.
pub(crate) fn random_unit_direction<R: Rng>(
    space: &WeightedSpace,
    mode: Mode,
    rng: &mut R,
) -> Result<Vector, Error> {
    loop {
        let entries: Vec<Scalar> = space
            .weights()
            .iter()
            .map(|&w| {
                let s = w.sqrt();
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = match mode {
                    Mode::Real => 0.0,
                    Mode::Complex => rng.sample(StandardNormal),
                };
                Scalar::new(re / s, im / s)
            })
            .collect();
        let v = Vector::new(entries)?;
        let n = space.norm(&v)?;
        if n > 1e-150 {
            return space.normalize(&v);
        }
        // An all-zero Gaussian draw is astronomically unlikely; just redraw.
    }
}
