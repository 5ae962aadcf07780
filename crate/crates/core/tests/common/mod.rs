//! Shared randomized-instance builders for the integration suites.
#![allow(dead_code)]

use gruss_core::{Bracket, Mode, Scalar, Vector, WeightedSpace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_space<R: Rng>(rng: &mut R, dim: usize) -> WeightedSpace {
    let weights: Vec<f64> = (0..dim).map(|_| rng.random_range(0.25..2.0)).collect();
    WeightedSpace::new(weights).expect("positive weights")
}

/// Entries uniform in [−scale, scale] per real component.
pub fn random_vector<R: Rng>(rng: &mut R, dim: usize, mode: Mode, scale: f64) -> Vector {
    let entries: Vec<Scalar> = (0..dim)
        .map(|_| {
            let re = rng.random_range(-scale..scale);
            let im = match mode {
                Mode::Real => 0.0,
                Mode::Complex => rng.random_range(-scale..scale),
            };
            Scalar::new(re, im)
        })
        .collect();
    Vector::new(entries).expect("finite entries")
}

/// A unit vector in a haphazard direction (rejection keeps the norm away from 0).
pub fn random_unit<R: Rng>(rng: &mut R, space: &WeightedSpace, mode: Mode) -> Vector {
    loop {
        let v = random_vector(rng, space.dim(), mode, 1.0);
        if space.norm(&v).expect("finite") > 1e-3 {
            return space.normalize(&v).expect("nonzero");
        }
    }
}

/// A real box with hi > lo > 0, as the positive-box forms require.
pub fn random_positive_box<R: Rng>(rng: &mut R) -> Bracket {
    let lo = rng.random_range(0.2..1.5);
    let hi = lo + rng.random_range(0.05..2.0);
    Bracket::real(lo, hi).expect("finite")
}

/// A box satisfying the shape-factor precondition Re(conj(lo)·hi) > 0: in
/// complex mode, two rays inside a common half-plane sector.
pub fn random_sector_box<R: Rng>(rng: &mut R, mode: Mode) -> Bracket {
    match mode {
        Mode::Real => random_positive_box(rng),
        Mode::Complex => {
            let theta = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
            let phi = rng.random_range(-1.0..1.0); // |φ| < π/3 keeps cos(φ) > 1/2
            let r_lo = rng.random_range(0.3..1.5);
            let r_hi = rng.random_range(0.3..2.5);
            let lo = Scalar::new(r_lo * theta.cos(), r_lo * theta.sin());
            let hi = Scalar::new(
                r_hi * (theta + phi).cos(),
                r_hi * (theta + phi).sin(),
            );
            Bracket::new(lo, hi).expect("finite")
        }
    }
}

/// An unconstrained finite box (components in [−2, 2]).
pub fn random_box<R: Rng>(rng: &mut R, mode: Mode) -> Bracket {
    let part = |r: &mut R| match mode {
        Mode::Real => Scalar::real(r.random_range(-2.0..2.0)),
        Mode::Complex => Scalar::new(r.random_range(-2.0..2.0), r.random_range(-2.0..2.0)),
    };
    let lo = part(rng);
    let hi = part(rng);
    Bracket::new(lo, hi).expect("finite")
}

/// |a − b| ≤ tol · max(1, scale).
pub fn close_abs_or_rel(a: f64, b: f64, tol: f64, scale: f64) -> bool {
    (a - b).abs() <= tol * scale.abs().max(1.0)
}
