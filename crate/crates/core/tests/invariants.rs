//! Property-based invariants of the evaluation layers: algebraic identities,
//! exact symmetries, agreement of equivalent formulations, and soundness of
//! the randomized samplers.

mod common;

use gruss_core::bounds::{self, BoundId};
use gruss_core::conditions::{self, Bracket, Combination, DEFAULT_TOL};
use gruss_core::measures::{self, MeasureSample, PointwiseTarget};
use gruss_core::{Mode, Scalar, Vector, WeightedSpace};
use proptest::prelude::*;

/// Entries for one vector: (re, im) pairs, with im zeroed in real mode.
fn entries(dim: usize, mode: Mode) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(
        (-3.0f64..3.0, -3.0f64..3.0).prop_map(move |(re, im)| match mode {
            Mode::Real => Scalar::real(re),
            Mode::Complex => Scalar::new(re, im),
        }),
        dim,
    )
}

fn weights(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.25f64..2.0, dim)
}

fn modes() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::Real), Just(Mode::Complex)]
}

/// (space, x, y, raw-e-candidate) over a strategy-chosen dimension.
fn instance(
    max_dim: usize,
) -> impl Strategy<Value = (Mode, WeightedSpace, Vector, Vector, Vector)> {
    (1..=max_dim, modes()).prop_flat_map(move |(dim, mode)| {
        (
            Just(mode),
            weights(dim),
            entries(dim, mode),
            entries(dim, mode),
            entries(dim, mode),
        )
            .prop_map(|(mode, w, x, y, e_raw)| {
                (
                    mode,
                    WeightedSpace::new(w).unwrap(),
                    Vector::new(x).unwrap(),
                    Vector::new(y).unwrap(),
                    Vector::new(e_raw).unwrap(),
                )
            })
    })
}

proptest! {
    /// The product form and the ball form of the admissibility slack are the
    /// same number up to rounding, for any data — admissible or not.
    #[test]
    fn slack_formulations_agree(
        (_, space, x, _, e_raw) in instance(12),
        (lo_re, lo_im, hi_re, hi_im) in (-2.0f64..2.0, -2.0f64..2.0, -2.0f64..2.0, -2.0f64..2.0),
    ) {
        prop_assume!(space.norm(&e_raw).unwrap() >= 1e-3);
        let e = space.normalize(&e_raw).unwrap();
        let b = Bracket::new(Scalar::new(lo_re, lo_im), Scalar::new(hi_re, hi_im)).unwrap();
        let re = conditions::slack_re(&space, &x, &e, &b).unwrap();
        let ball = conditions::slack_ball(&space, &x, &e, &b).unwrap();
        let scale = space.norm_sq(&x).unwrap().max(b.hi.abs_sq()).max(b.lo.abs_sq());
        prop_assert!(common::close_abs_or_rel(re, ball, 1e-12, scale),
            "re {re} vs ball {ball}");
    }

    /// ⟨x, y⟩ = conj(⟨y, x⟩) holds bit for bit: both sides perform the same
    /// multiplications in the same index order.
    #[test]
    fn inner_product_conjugate_symmetry_is_exact(
        (_, space, x, y, _) in instance(12),
    ) {
        let a = space.inner(&x, &y).unwrap();
        let b = space.inner(&y, &x).unwrap();
        prop_assert_eq!(a, b.conj());
    }

    /// ⟨x, x⟩ has an exactly-zero imaginary part and a nonnegative real part.
    #[test]
    fn self_inner_product_is_real_nonnegative(
        (_, space, x, _, _) in instance(12),
    ) {
        let s = space.inner(&x, &x).unwrap();
        prop_assert_eq!(s.im, 0.0);
        prop_assert!(s.re >= 0.0);
        prop_assert!(space.norm_sq(&x).unwrap() >= 0.0);
    }

    /// G(x, y) equals the inner product of the residuals of x and y.
    #[test]
    fn functional_factors_through_residuals(
        (_, space, x, y, e_raw) in instance(12),
    ) {
        prop_assume!(space.norm(&e_raw).unwrap() >= 1e-3);
        let e = space.normalize(&e_raw).unwrap();
        let g = bounds::gruss_functional(&space, &x, &y, &e).unwrap();
        let rx = space.residual(&x, &e).unwrap();
        let ry = space.residual(&y, &e).unwrap();
        let h = space.inner(&rx, &ry).unwrap();
        let scale = space.norm(&x).unwrap() * space.norm(&y).unwrap();
        prop_assert!((g - h).abs() <= 1e-12 * scale.max(1.0));
    }

    /// The residual is orthogonal to the reference direction.
    #[test]
    fn residual_is_orthogonal_to_e(
        (_, space, x, _, e_raw) in instance(12),
    ) {
        prop_assume!(space.norm(&e_raw).unwrap() >= 1e-3);
        let e = space.normalize(&e_raw).unwrap();
        let r = space.residual(&x, &e).unwrap();
        let along = space.inner(&r, &e).unwrap().abs();
        prop_assert!(along <= 1e-12 * space.norm(&x).unwrap().max(1.0));
    }

    /// For real boxes 0 < a < A the shape factor is (A−a)/√(aA) up to rounding.
    #[test]
    fn m_factor_reduces_on_positive_real_boxes(
        a in 0.05f64..2.0,
        gap in 0.01f64..3.0,
    ) {
        let big = a + gap;
        let m = bounds::m_factor(&Bracket::real(a, big).unwrap()).unwrap();
        let closed = (big - a) / (a * big).sqrt();
        prop_assert!((m - closed).abs() <= 1e-13 * closed);
    }

    /// The shape-factor bound and its real-box closed form price the same
    /// instance identically.
    #[test]
    fn t2_and_c3_agree_on_positive_real_boxes(
        (_, space, x, y, e_raw) in instance(8),
        (a1, g1, a2, g2) in (0.2f64..1.5, 0.05f64..2.0, 0.2f64..1.5, 0.05f64..2.0),
    ) {
        prop_assume!(space.norm(&e_raw).unwrap() >= 1e-3);
        let e = space.normalize(&e_raw).unwrap();
        let bx = Bracket::real(a1, a1 + g1).unwrap();
        let by = Bracket::real(a2, a2 + g2).unwrap();
        let t2 = bounds::bound_t2(&space, &x, &y, &e, &bx, &by, DEFAULT_TOL).unwrap();
        let c3 = bounds::bound_c3(&space, &x, &y, &e, &bx, &by, DEFAULT_TOL).unwrap();
        prop_assert_eq!(t2.measured, c3.measured);
        prop_assert!(common::close_abs_or_rel(t2.bound_value, c3.bound_value, 1e-12, t2.bound_value));
    }

    /// The combination bound treats λ and 1−λ symmetrically.
    #[test]
    fn combination_bound_is_lambda_symmetric(
        (_, space, x, y, e_raw) in instance(8),
        lambda in 0.05f64..0.95,
        (lo, gap) in (-2.0f64..2.0, 0.1f64..3.0),
    ) {
        prop_assume!(space.norm(&e_raw).unwrap() >= 1e-3);
        let e = space.normalize(&e_raw).unwrap();
        let b = Bracket::real(lo, lo + gap).unwrap();
        let r1 = bounds::bound_t3(&space, &x, &y, &e, &b,
            Combination::plus(lambda).unwrap(), DEFAULT_TOL).unwrap();
        let r2 = bounds::bound_t3(&space, &y, &x, &e, &b,
            Combination::plus(1.0 - lambda).unwrap(), DEFAULT_TOL).unwrap();
        // Same combination vector, so the same bound (up to rounding in λ(1−λ)).
        prop_assert!(common::close_abs_or_rel(r1.bound_value, r2.bound_value, 1e-12, r1.bound_value));
        // And the admissibility verdict agrees: λx+(1−λ)y = (1−λ')y+λ'x.
        prop_assert!(common::close_abs_or_rel(
            r1.conditions[0].slack_re, r2.conditions[0].slack_re, 1e-9, 1.0));
    }

    /// Draws from the admissible sampler really are admissible, stay real in
    /// real mode, and reproduce bitwise for a fixed seed.
    #[test]
    fn sampler_respects_its_contract(
        (mode, space, _, _, e_raw) in instance(8),
        seed in any::<u64>(),
        (lo, gap) in (-1.5f64..1.5, 0.0f64..2.5),
    ) {
        prop_assume!(space.norm(&e_raw).unwrap() >= 1e-3);
        let e = space.normalize(&e_raw).unwrap();
        let b = Bracket::real(lo, lo + gap).unwrap();
        let xs = conditions::sample_admissible(&space, &e, &b, mode, seed, 5).unwrap();
        for x in &xs {
            let c = conditions::check(&space, x, &e, &b, DEFAULT_TOL).unwrap();
            prop_assert!(c.admissible, "slack {}", c.slack_re);
            if mode == Mode::Real {
                prop_assert!(x.is_real());
            }
        }
        let again = conditions::sample_admissible(&space, &e, &b, mode, seed, 5).unwrap();
        prop_assert_eq!(xs, again);
    }

    /// Scalars and vectors survive a JSON round trip bit for bit.
    #[test]
    fn serde_round_trip_is_exact(
        (_, _, x, _, _) in instance(8),
        (lo_re, hi_re, hi_im) in (-2.0f64..2.0, -2.0f64..2.0, -2.0f64..2.0),
    ) {
        let json = serde_json::to_string(&x).unwrap();
        let back: Vector = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&back, &x);

        let b = Bracket::new(Scalar::real(lo_re), Scalar::new(hi_re, hi_im)).unwrap();
        let json = serde_json::to_string(&b).unwrap();
        let back: Bracket = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, b);
    }

    /// The two signed combinations invert back to the pair that formed them.
    #[test]
    fn combinations_invert_linearly(
        (_, _, x, y, _) in instance(8),
        lambda in 0.05f64..0.95,
    ) {
        let zp = conditions::combine(&x, &y, Combination::plus(lambda).unwrap()).unwrap();
        let zm = conditions::combine(&x, &y, Combination::minus(lambda).unwrap()).unwrap();
        let x_back = zp.add(&zm).unwrap().scaled(Scalar::real(0.5 / lambda));
        let y_back = zp.sub(&zm).unwrap().scaled(Scalar::real(0.5 / (1.0 - lambda)));
        for (orig, back) in [(&x, &x_back), (&y, &y_back)] {
            for (a, b) in orig.entries().iter().zip(back.entries()) {
                prop_assert!((*a - *b).abs() <= 1e-12 * a.abs().max(1.0));
            }
        }
    }

    /// When the relative deviation is defined it satisfies its defining
    /// identity ⟨x,y⟩ = (1 + dev)·⟨x,e⟩⟨e,y⟩.
    #[test]
    fn relative_deviation_identity(
        (_, space, x, y, e_raw) in instance(8),
    ) {
        prop_assume!(space.norm(&e_raw).unwrap() >= 1e-3);
        let e = space.normalize(&e_raw).unwrap();
        if let Some(dev) = bounds::relative_deviation(&space, &x, &y, &e).unwrap() {
            let den = space.inner(&x, &e).unwrap() * space.inner(&e, &y).unwrap();
            let lhs = space.inner(&x, &y).unwrap();
            let rhs = (Scalar::ONE + dev) * den;
            let scale = space.norm(&x).unwrap() * space.norm(&y).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-9 * scale.max(1.0));
        }
    }

    /// A pointwise-admissible sample is integrated-admissible: the integrated
    /// slack is a mass-weighted sum of the pointwise slacks.
    #[test]
    fn pointwise_admissibility_integrates(
        dim in 1usize..8,
        mode in modes(),
        seed in any::<u64>(),
        (lo, gap) in (-1.5f64..1.5, 0.2f64..2.5),
    ) {
        let mut rng = common::rng(seed);
        let space = common::random_space(&mut rng, dim);
        let h = common::random_unit(&mut rng, &space, mode);
        let b = Bracket::real(lo, lo + gap).unwrap();
        // f(s) = center·h(s) + δ(s) with |δ(s)| ≤ ½·width·|h(s)|.
        let f: Vec<Scalar> = h.entries().iter().map(|&hs| {
            let dir = common::random_vector(&mut rng, 1, mode, 1.0).entries()[0];
            let cap = 0.5 * b.width_abs() * hs.abs();
            let delta = if dir.abs() > 1.0 { dir.scale(cap / (2.0 * dir.abs())) } else { dir.scale(cap / 2.0) };
            b.center() * hs + delta
        }).collect();
        let sample = MeasureSample::new(
            space.weights().to_vec(),
            f.clone(),
            f,
            Some(h.entries().to_vec()),
        ).unwrap();
        let pw = measures::pointwise_sufficient(&sample, &b, PointwiseTarget::F, 1e-12).unwrap();
        prop_assert!(pw.holds);
        let integrated = conditions::check(&space, &sample.f_vector(), &h, &b, DEFAULT_TOL).unwrap();
        prop_assert!(integrated.slack_re >= -1e-12, "slack {}", integrated.slack_re);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Soundness chain for admissible data: the functional obeys the baseline
    /// gap bound, and each gap obeys its shape-factor refinement.
    #[test]
    fn soundness_chain_on_admissible_pairs(
        dim in 2usize..8,
        mode in modes(),
        seed in any::<u64>(),
    ) {
        let mut rng = common::rng(seed);
        let space = common::random_space(&mut rng, dim);
        let e = common::random_unit(&mut rng, &space, mode);
        let bx = common::random_sector_box(&mut rng, mode);
        let by = common::random_sector_box(&mut rng, mode);
        let x = conditions::sample_one(&space, &e, &bx, mode, &mut rng).unwrap();
        let y = conditions::sample_one(&space, &e, &by, mode, &mut rng).unwrap();

        let g = bounds::gruss_functional(&space, &x, &y, &e).unwrap();
        let gaps = bounds::schwartz_gap(&space, &x, &y, &e).unwrap();
        prop_assert!(g.abs_sq() <= gaps.product * (1.0 + 1e-9) + 1e-9);

        let t2 = bounds::bound_t2(&space, &x, &y, &e, &bx, &by, DEFAULT_TOL).unwrap();
        prop_assert!(t2.applicable, "{:?}", t2.reason);
        prop_assert!(t2.measured <= t2.bound_value * (1.0 + 1e-9) + 1e-9);

        let mx = bounds::m_factor(&bx).unwrap();
        let pivot_x = space.inner(&x, &e).unwrap().abs_sq();
        prop_assert!(gaps.gap_x <= 0.25 * mx * mx * pivot_x * (1.0 + 1e-9) + 1e-9);
    }

    /// The one-sided and two-sided combination bounds hold on instances
    /// constructed to have admissible combinations.
    #[test]
    fn combination_bounds_hold_on_constructed_instances(
        dim in 2usize..8,
        mode in modes(),
        seed in any::<u64>(),
        lambda in 0.1f64..0.9,
        (lo, gap) in (-1.5f64..1.5, 0.2f64..2.5),
    ) {
        let mut rng = common::rng(seed);
        let space = common::random_space(&mut rng, dim);
        let e = common::random_unit(&mut rng, &space, mode);
        let b = Bracket::real(lo, lo + gap).unwrap();

        // One-sided: sample the + combination, solve for y given a free x.
        let z = conditions::sample_one(&space, &e, &b, mode, &mut rng).unwrap();
        let x = common::random_vector(&mut rng, dim, mode, 2.0);
        let y = z.sub(&x.scaled(Scalar::real(lambda))).unwrap()
            .scaled(Scalar::real(1.0 / (1.0 - lambda)));
        let r = bounds::bound_t3(&space, &x, &y, &e, &b,
            Combination::plus(lambda).unwrap(), DEFAULT_TOL).unwrap();
        prop_assert!(r.applicable, "{:?}", r.reason);
        prop_assert!(r.measured <= r.bound_value * (1.0 + 1e-9) + 1e-9);

        // Two-sided: sample both combinations, invert.
        let zp = conditions::sample_one(&space, &e, &b, mode, &mut rng).unwrap();
        let zm = conditions::sample_one(&space, &e, &b, mode, &mut rng).unwrap();
        let x = zp.add(&zm).unwrap().scaled(Scalar::real(0.5 / lambda));
        let y = zp.sub(&zm).unwrap().scaled(Scalar::real(0.5 / (1.0 - lambda)));
        let r = bounds::bound_c4(&space, &x, &y, &e, &b,
            Combination::plus(lambda).unwrap(),
            Combination::minus(lambda).unwrap(), DEFAULT_TOL).unwrap();
        prop_assert!(r.applicable, "{:?}", r.reason);
        prop_assert!(r.measured <= r.bound_value * (1.0 + 1e-9) + 1e-9);
        prop_assert_eq!(r.bound_id, BoundId::C4);
    }
}
