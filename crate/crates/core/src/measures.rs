//! Discrete weighted measures as exact instances of the vector layer.
//!
//! A [`MeasureSample`] is a finite measure space: point masses μᵢ plus the
//! sampled values of two functions f, g and optionally a carrier h with
//! Σ μᵢ|hᵢ|² = 1. Since the integrals are weighted sums, every statement
//! about ∫ f·conj(g) dμ − ∫ f·conj(h) dμ · ∫ h·conj(g) dμ *is* the vector-layer
//! statement on the space with weights μ and reference vector e = h — so this
//! module validates, delegates and rescales, and adds no inequality arithmetic
//! of its own.
//!
//! The uniform-carrier operations (`check_c5`, `ratio_r5`, `check_c6`) take
//! h = 1/√μ(Ω) constant; their conclusions then read in mean-value form, which
//! is the vector-layer form divided by the total mass.

use serde::{Deserialize, Serialize};

use crate::bounds::{self, BoundReport, RATIO_FLOOR};
use crate::conditions::{self, Bracket, Combination};
use crate::error::Error;
use crate::scalar::Scalar;
use crate::space::{Vector, WeightedSpace};

/// Tolerance on the carrier normalization: |Σ μᵢ|hᵢ|² − 1| ≤ `CARRIER_TOL`.
pub const CARRIER_TOL: f64 = 1e-9;

/// A finite discrete measure with sampled functions.
///
/// Problems posed on an interval enter pre-sampled: the quadrature rule that
/// produced the masses is the caller's business, and once the masses are fixed
/// the results here are exact statements about the discrete measure, not
/// approximations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureSample {
    weights: Vec<f64>,
    f: Vec<Scalar>,
    g: Vec<Scalar>,
    h: Option<Vec<Scalar>>,
}

impl MeasureSample {
    /// Builds a sample; all sequences must share one length ≥ 1, the masses
    /// must be positive and every value finite.
    pub fn new(
        weights: Vec<f64>,
        f: Vec<Scalar>,
        g: Vec<Scalar>,
        h: Option<Vec<Scalar>>,
    ) -> Result<Self, Error> {
        let space = WeightedSpace::new(weights)?; // validates mass positivity
        let n = space.dim();
        for (name, values) in [("f", &f), ("g", &g)] {
            if values.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: values.len(),
                });
            }
            if values.iter().any(|z| !z.is_finite()) {
                return Err(Error::NonFinite {
                    context: match name {
                        "f" => "sample values f",
                        _ => "sample values g",
                    },
                });
            }
        }
        if let Some(hv) = &h {
            if hv.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: hv.len(),
                });
            }
            if hv.iter().any(|z| !z.is_finite()) {
                return Err(Error::NonFinite {
                    context: "carrier values h",
                });
            }
        }
        Ok(MeasureSample {
            weights: space.weights().to_vec(),
            f,
            g,
            h,
        })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees at least one point
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn f_values(&self) -> &[Scalar] {
        &self.f
    }

    pub fn g_values(&self) -> &[Scalar] {
        &self.g
    }

    pub fn h_values(&self) -> Option<&[Scalar]> {
        self.h.as_deref()
    }

    /// Total mass μ(Ω) = Σ μᵢ.
    pub fn mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn space(&self) -> WeightedSpace {
        WeightedSpace::new(self.weights.clone()).expect("weights validated at construction")
    }

    pub fn f_vector(&self) -> Vector {
        Vector::new(self.f.clone()).expect("entries validated at construction")
    }

    pub fn g_vector(&self) -> Vector {
        Vector::new(self.g.clone()).expect("entries validated at construction")
    }

    /// The carrier as a vector, if present.
    pub fn h_vector(&self) -> Result<Vector, Error> {
        match &self.h {
            Some(hv) => Ok(Vector::new(hv.clone()).expect("entries validated at construction")),
            None => Err(Error::MissingCarrier),
        }
    }

    /// Σ μᵢ|hᵢ|², which must be ≈ 1 for the carrier to act as a unit vector.
    pub fn carrier_norm_sq(&self) -> Result<f64, Error> {
        let hv = self.h_vector()?;
        self.space().norm_sq(&hv)
    }

    fn checked_carrier(&self) -> Result<Vector, Error> {
        let norm_sq = self.carrier_norm_sq()?;
        if (norm_sq - 1.0).abs() > CARRIER_TOL {
            return Err(Error::UnnormalizedCarrier { norm_sq });
        }
        self.h_vector()
    }

    /// A copy of the sample with the constant carrier hᵢ = 1/√μ(Ω), which is
    /// normalized by construction.
    pub fn uniform_h(&self) -> MeasureSample {
        let c = Scalar::real(1.0 / self.mass().sqrt());
        MeasureSample {
            weights: self.weights.clone(),
            f: self.f.clone(),
            g: self.g.clone(),
            h: Some(vec![c; self.len()]),
        }
    }
}

/// Outcome of a pointwise hypothesis scan.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointwiseCheck {
    pub holds: bool,
    /// Index of the first violated point, when any.
    pub first_violation: Option<usize>,
}

/// What to test pointwise against the box.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PointwiseTarget {
    F,
    G,
    /// λf ± (1−λ)g.
    Combined(Combination),
}

/// Scans `|t(s) − center·h(s)| ≤ ½·|hi − lo|·|h(s)|` at every point, where t
/// is the selected target. This pointwise condition implies the integrated
/// admissibility of t relative to (box, h): the integrated slack is the
/// mass-weighted sum of the pointwise slacks.
pub fn pointwise_sufficient(
    sample: &MeasureSample,
    b: &Bracket,
    target: PointwiseTarget,
    tol: f64,
) -> Result<PointwiseCheck, Error> {
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::InvalidTolerance { tol });
    }
    let hv = sample.h_vector()?;
    let values = target_values(sample, target)?;
    let center = b.center();
    let quarter_width_sq = 0.25 * (b.hi - b.lo).abs_sq();
    for (i, (&t, &h)) in values.iter().zip(hv.entries()).enumerate() {
        let slack = quarter_width_sq * h.abs_sq() - (t - center * h).abs_sq();
        if slack < -tol {
            return Ok(PointwiseCheck {
                holds: false,
                first_violation: Some(i),
            });
        }
    }
    Ok(PointwiseCheck {
        holds: true,
        first_violation: None,
    })
}

fn target_values(sample: &MeasureSample, target: PointwiseTarget) -> Result<Vec<Scalar>, Error> {
    Ok(match target {
        PointwiseTarget::F => sample.f.clone(),
        PointwiseTarget::G => sample.g.clone(),
        PointwiseTarget::Combined(comb) => {
            let z = conditions::combine(&sample.f_vector(), &sample.g_vector(), comb)?;
            z.entries().to_vec()
        }
    })
}

/// Pointwise `|t(s) − (lo+hi)/2| ≤ ½|hi − lo|` against raw constants — the
/// hypothesis form used by the uniform-carrier mean-value ops, where the constant
/// carrier cancels exactly.
fn pointwise_against_constants(values: &[Scalar], b: &Bracket, tol: f64) -> PointwiseCheck {
    let center = b.center();
    let quarter_width_sq = 0.25 * (b.hi - b.lo).abs_sq();
    for (i, &t) in values.iter().enumerate() {
        if quarter_width_sq - (t - center).abs_sq() < -tol {
            return PointwiseCheck {
                holds: false,
                first_violation: Some(i),
            };
        }
    }
    PointwiseCheck {
        holds: true,
        first_violation: None,
    }
}

/// Multiplies the size-bearing fields of a report by `factor` (used to restate
/// vector-layer conclusions in mean-value form). The ratio is untouched: both
/// sides scale together.
fn rescale_report(mut r: BoundReport, factor: f64) -> BoundReport {
    r.functional = r.functional.scale(factor);
    r.functional_abs *= factor;
    r.functional_re *= factor;
    r.measured *= factor;
    r.bound_value *= factor;
    r
}

fn prepend_reason(r: &mut BoundReport, extra: Option<String>) {
    if let Some(msg) = extra {
        r.applicable = false;
        r.reason = match r.reason.take() {
            Some(old) => Some(format!("{msg}; {old}")),
            None => Some(msg),
        };
    }
}

/// The M-factor bound for the integral functional
/// ∫f·conj(g) dμ − ∫f·conj(h) dμ·∫h·conj(g) dμ, with boxes tying f and g to the
/// carrier h. Exactly `bound_t2` on the weight space with e = h.
///
/// Conditions are reported in the order [f, g].
pub fn check_p1(
    sample: &MeasureSample,
    box_f: &Bracket,
    box_g: &Bracket,
    tol: f64,
) -> Result<BoundReport, Error> {
    let h = sample.checked_carrier()?;
    bounds::bound_t2(
        &sample.space(),
        &sample.f_vector(),
        &sample.g_vector(),
        &h,
        box_f,
        box_g,
        tol,
    )
}

/// The mean-value form of `check_p1` under pointwise boxes: when
/// z ≤-style constants bracket f and g at every point,
///
/// ```text
/// |mean(f·conj(g)) − mean(f)·mean(conj(g))| ≤ ¼·M(z,Z)·M(t,T)·|mean(f)·mean(conj(g))|
/// ```
///
/// Implemented by delegating to `bound_t2` with the uniform carrier and boxes
/// scaled by √μ(Ω), then dividing the conclusion by the mass.
pub fn check_c5(
    sample: &MeasureSample,
    box_f: &Bracket,
    box_g: &Bracket,
    tol: f64,
) -> Result<BoundReport, Error> {
    let pw_f = pointwise_against_constants(&sample.f, box_f, tol);
    let pw_g = pointwise_against_constants(&sample.g, box_g, tol);
    let uniform = sample.uniform_h();
    let mass = sample.mass();
    let scale = mass.sqrt();
    let sbox_f = Bracket::new(box_f.lo.scale(scale), box_f.hi.scale(scale))?;
    let sbox_g = Bracket::new(box_g.lo.scale(scale), box_g.hi.scale(scale))?;
    let report = check_p1(&uniform, &sbox_f, &sbox_g, tol)?;
    let mut report = rescale_report(report, 1.0 / mass);
    prepend_reason(&mut report, pointwise_failure("f", &pw_f));
    prepend_reason(&mut report, pointwise_failure("g", &pw_g));
    Ok(report)
}

fn pointwise_failure(name: &str, check: &PointwiseCheck) -> Option<String> {
    check
        .first_violation
        .map(|i| format!("pointwise condition on {name} fails at sample index {i}"))
}

/// Left and right side of the mean-ratio estimate for real positive data:
///
/// ```text
/// | μ(Ω)·∫fg dμ / (∫f dμ·∫g dμ) − 1 | ≤ ¼·(Z−z)(T−t)/√(z·t·Z·T)
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeanRatioReport {
    pub left: f64,
    pub right: f64,
    pub ratio: Option<f64>,
    pub applicable: bool,
    pub reason: Option<String>,
}

/// Evaluates the mean-ratio estimate. Requires real f, g with positive real
/// boxes `z ≤ f ≤ Z`, `t ≤ g ≤ T` pointwise; the left side is the magnitude of
/// the relative deviation under the uniform carrier.
pub fn ratio_r5(
    sample: &MeasureSample,
    box_f: &Bracket,
    box_g: &Bracket,
) -> Result<MeanRatioReport, Error> {
    if !sample.f_vector().is_real() || !sample.g_vector().is_real() {
        return Err(Error::NotReal {
            context: "sample values",
        });
    }
    let (z, big_z) = positive_real_pair(box_f, "f")?;
    let (t, big_t) = positive_real_pair(box_g, "g")?;

    let mut reason = None;
    for (name, values, lo, hi) in [("f", &sample.f, z, big_z), ("g", &sample.g, t, big_t)] {
        if let Some(i) = values
            .iter()
            .position(|v| !(lo <= v.re && v.re <= hi))
        {
            reason = Some(format!(
                "pointwise containment of {name} in [{lo}, {hi}] fails at sample index {i}"
            ));
            break;
        }
    }

    let uniform = sample.uniform_h();
    let dev = bounds::relative_deviation(
        &uniform.space(),
        &uniform.f_vector(),
        &uniform.g_vector(),
        &uniform.h_vector()?,
    )?
    .ok_or(Error::DegenerateDenominator {
        context: "mean integrals of f and g",
    })?;
    let left = dev.abs();
    let right = 0.25 * (big_z - z) * (big_t - t) / (z * t * big_z * big_t).sqrt();
    let ratio = if right > RATIO_FLOOR {
        Some(left / right)
    } else {
        None
    };
    Ok(MeanRatioReport {
        left,
        right,
        ratio,
        applicable: reason.is_none(),
        reason,
    })
}

fn positive_real_pair(b: &Bracket, name: &str) -> Result<(f64, f64), Error> {
    if !b.is_real() {
        return Err(Error::InvalidBox {
            reason: format!("box {name} must be real for this estimate"),
        });
    }
    let (lo, hi) = (b.lo.re, b.hi.re);
    if !(lo > 0.0 && hi >= lo) {
        return Err(Error::InvalidBox {
            reason: format!("box {name} must satisfy hi ≥ lo > 0, got ({lo}, {hi})"),
        });
    }
    Ok((lo, hi))
}

/// The combination bound for the real part of the integral functional:
/// one-sided (I ≤ bound, delegating to `bound_t3`) or two-sided
/// (|I| ≤ bound, delegating to `bound_c4`) depending on `two_sided`.
pub fn check_p2(
    sample: &MeasureSample,
    b: &Bracket,
    comb: Combination,
    two_sided: bool,
    tol: f64,
) -> Result<BoundReport, Error> {
    let h = sample.checked_carrier()?;
    let space = sample.space();
    let f = sample.f_vector();
    let g = sample.g_vector();
    if two_sided {
        let minus = Combination::minus(comb.lambda())?;
        bounds::bound_c4(&space, &f, &g, &h, b, comb, minus, tol)
    } else {
        bounds::bound_t3(&space, &f, &g, &h, b, comb, tol)
    }
}

/// The mean-value form of `check_p2` under a pointwise box on
/// λf ± (1−λ)g: bounds J = mean(Re f·conj(g)) − Re(mean f · mean conj(g)) by
/// (1/16)·(1/(λ(1−λ)))·|Z − z|². Delegates with the uniform carrier and the
/// box scaled by √μ(Ω), then divides by the mass.
pub fn check_c6(
    sample: &MeasureSample,
    b: &Bracket,
    comb: Combination,
    two_sided: bool,
    tol: f64,
) -> Result<BoundReport, Error> {
    let plus_values = target_values(sample, PointwiseTarget::Combined(comb))?;
    let pw_plus = pointwise_against_constants(&plus_values, b, tol);
    let pw_minus = if two_sided {
        let minus = Combination::minus(comb.lambda())?;
        let minus_values = target_values(sample, PointwiseTarget::Combined(minus))?;
        Some(pointwise_against_constants(&minus_values, b, tol))
    } else {
        None
    };

    let uniform = sample.uniform_h();
    let mass = sample.mass();
    let scale = mass.sqrt();
    let sbox = Bracket::new(b.lo.scale(scale), b.hi.scale(scale))?;
    let report = check_p2(&uniform, &sbox, comb, two_sided, tol)?;
    let mut report = rescale_report(report, 1.0 / mass);
    prepend_reason(
        &mut report,
        pointwise_failure("the + combination", &pw_plus),
    );
    if let Some(pw) = pw_minus {
        prepend_reason(&mut report, pointwise_failure("the − combination", &pw));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditions::DEFAULT_TOL;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn sr(values: &[f64]) -> Vec<Scalar> {
        values.iter().map(|&v| Scalar::real(v)).collect()
    }

    #[test]
    fn construction_validates_shapes_and_masses() {
        assert!(MeasureSample::new(vec![], vec![], vec![], None).is_err());
        assert!(MeasureSample::new(vec![1.0, -1.0], sr(&[1.0, 2.0]), sr(&[1.0, 2.0]), None).is_err());
        assert!(matches!(
            MeasureSample::new(vec![1.0], sr(&[1.0, 2.0]), sr(&[1.0]), None),
            Err(Error::DimensionMismatch { .. })
        ));
        // Single-point samples are fine.
        assert!(MeasureSample::new(vec![2.0], sr(&[1.0]), sr(&[1.0]), None).is_ok());
    }

    #[test]
    fn uniform_carrier_is_normalized() {
        let s = MeasureSample::new(vec![2.0, 3.0], sr(&[1.0, 2.0]), sr(&[0.0, 1.0]), None).unwrap();
        let u = s.uniform_h();
        let expected = 1.0 / 5.0_f64.sqrt();
        for h in u.h_values().unwrap() {
            assert_eq!(*h, Scalar::real(expected));
        }
        assert!((u.carrier_norm_sq().unwrap() - 1.0).abs() < 1e-12);

        // Mass 1 gives the constant carrier 1.
        let s = MeasureSample::new(vec![0.5, 0.5], sr(&[1.0, 2.0]), sr(&[1.0, 2.0]), None).unwrap();
        assert_eq!(
            s.uniform_h().h_values().unwrap(),
            &[Scalar::ONE, Scalar::ONE]
        );
    }

    #[test]
    fn p1_reproduces_the_vector_layer_equality_instance() {
        let h = sr(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]);
        let f = sr(&[FRAC_1_SQRT_2, 3.0 * FRAC_1_SQRT_2]);
        let s = MeasureSample::new(vec![1.0, 1.0], f, sr(&[FRAC_1_SQRT_2, 3.0 * FRAC_1_SQRT_2]), Some(h)).unwrap();
        let b = Bracket::real(1.0, 3.0).unwrap();
        let r = check_p1(&s, &b, &b, DEFAULT_TOL).unwrap();
        assert!(r.applicable);
        assert!((r.measured - 1.0).abs() < 1e-12);
        assert!((r.bound_value - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn p1_rejects_an_unnormalized_carrier() {
        let s = MeasureSample::new(
            vec![1.0, 1.0],
            sr(&[1.0, 2.0]),
            sr(&[1.0, 2.0]),
            Some(sr(&[1.0, 1.0])), // Σ μ|h|² = 2
        )
        .unwrap();
        let b = Bracket::real(1.0, 3.0).unwrap();
        assert!(matches!(
            check_p1(&s, &b, &b, DEFAULT_TOL),
            Err(Error::UnnormalizedCarrier { .. })
        ));
        assert!(matches!(
            check_p1(
                &MeasureSample::new(vec![1.0], sr(&[1.0]), sr(&[1.0]), None).unwrap(),
                &b,
                &b,
                DEFAULT_TOL
            ),
            Err(Error::MissingCarrier)
        ));
    }

    #[test]
    fn c5_mean_form_on_the_two_point_instance() {
        // f = g = (1, 3), unit masses: mean(fg) = 5, mean(f)·mean(g) = 4.
        let s = MeasureSample::new(vec![1.0, 1.0], sr(&[1.0, 3.0]), sr(&[1.0, 3.0]), None).unwrap();
        let b = Bracket::real(1.0, 3.0).unwrap();
        let r = check_c5(&s, &b, &b, DEFAULT_TOL).unwrap();
        assert!(r.applicable, "{:?}", r.reason);
        assert!((r.measured - 1.0).abs() < 1e-12);
        assert!((r.bound_value - 4.0 / 3.0).abs() < 1e-12);
        assert!((r.ratio.unwrap() - 0.75).abs() < 1e-12);
    }

    #[test]
    fn c5_reports_the_first_pointwise_violation() {
        let s = MeasureSample::new(
            vec![1.0, 1.0, 1.0],
            sr(&[1.0, 5.0, 3.0]), // 5 escapes the (1, 3) box at index 1
            sr(&[1.0, 2.0, 3.0]),
            None,
        )
        .unwrap();
        let b = Bracket::real(1.0, 3.0).unwrap();
        let r = check_c5(&s, &b, &b, DEFAULT_TOL).unwrap();
        assert!(!r.applicable);
        assert!(r.reason.as_deref().unwrap().contains("index 1"));
    }

    #[test]
    fn r5_two_point_values() {
        let s = MeasureSample::new(vec![1.0, 1.0], sr(&[1.0, 3.0]), sr(&[1.0, 3.0]), None).unwrap();
        let b = Bracket::real(1.0, 3.0).unwrap();
        let r = ratio_r5(&s, &b, &b).unwrap();
        assert!(r.applicable);
        assert!((r.left - 0.25).abs() < 1e-12); // 2·10/16 − 1
        assert!((r.right - 1.0 / 3.0).abs() < 1e-12);
        assert!(r.left <= r.right);

        // Anticorrelated g reverses the sign of the deviation, not the magnitude.
        let s = MeasureSample::new(vec![1.0, 1.0], sr(&[1.0, 3.0]), sr(&[3.0, 1.0]), None).unwrap();
        let r = ratio_r5(&s, &b, &b).unwrap();
        assert!((r.left - 0.25).abs() < 1e-12);
    }

    #[test]
    fn r5_validates_its_hypotheses() {
        let b = Bracket::real(1.0, 3.0).unwrap();
        let s = MeasureSample::new(
            vec![1.0, 1.0],
            vec![Scalar::new(1.0, 0.5), Scalar::real(2.0)],
            sr(&[1.0, 2.0]),
            None,
        )
        .unwrap();
        assert!(matches!(ratio_r5(&s, &b, &b), Err(Error::NotReal { .. })));

        let s = MeasureSample::new(vec![1.0, 1.0], sr(&[1.0, 3.0]), sr(&[1.0, 3.0]), None).unwrap();
        let bad = Bracket::real(-1.0, 3.0).unwrap();
        assert!(matches!(ratio_r5(&s, &bad, &b), Err(Error::InvalidBox { .. })));

        // f ⊥ g in the mean sense: denominator degenerates.
        let s = MeasureSample::new(vec![1.0, 1.0], sr(&[1.0, -1.0]), sr(&[1.0, 3.0]), None).unwrap();
        let wide = Bracket::real(1.0, 3.0).unwrap();
        assert!(matches!(
            ratio_r5(&s, &wide, &wide),
            Err(Error::DegenerateDenominator { .. })
        ));
    }

    #[test]
    fn p2_transports_the_combination_equality_instance() {
        let h = sr(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]);
        let two = 2.0 * FRAC_1_SQRT_2;
        let s = MeasureSample::new(vec![1.0, 1.0], sr(&[0.0, two]), sr(&[0.0, two]), Some(h)).unwrap();
        let b = Bracket::real(0.0, 2.0).unwrap();
        let half = Combination::plus(0.5).unwrap();
        let r = check_p2(&s, &b, half, false, DEFAULT_TOL).unwrap();
        assert!(r.applicable);
        assert!((r.measured - 1.0).abs() < 1e-12);
        assert!((r.bound_value - 1.0).abs() < 1e-12);

        // The two-sided variant also applies here: the − combination vanishes
        // and the zero vector is admissible for the (0, 2) box.
        let r = check_p2(&s, &b, half, true, DEFAULT_TOL).unwrap();
        assert!(r.applicable, "{:?}", r.reason);
        assert!((r.measured - 1.0).abs() < 1e-12);
    }

    #[test]
    fn c6_equality_instance_in_mean_form() {
        // f = g = (0, 2), λ = 1/2, box (0, 2): J = 1 meets the bound 1.
        let s = MeasureSample::new(vec![1.0, 1.0], sr(&[0.0, 2.0]), sr(&[0.0, 2.0]), None).unwrap();
        let b = Bracket::real(0.0, 2.0).unwrap();
        let half = Combination::plus(0.5).unwrap();
        let r = check_c6(&s, &b, half, false, DEFAULT_TOL).unwrap();
        assert!(r.applicable, "{:?}", r.reason);
        assert!((r.measured - 1.0).abs() < 1e-12);
        assert!((r.bound_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn c6_flags_pointwise_escapes_of_the_combination() {
        let s = MeasureSample::new(vec![1.0, 1.0], sr(&[0.0, 4.0]), sr(&[0.0, 4.0]), None).unwrap();
        let b = Bracket::real(0.0, 2.0).unwrap(); // λf+(1−λ)g hits 4 > 2
        let half = Combination::plus(0.5).unwrap();
        let r = check_c6(&s, &b, half, false, DEFAULT_TOL).unwrap();
        assert!(!r.applicable);
        assert!(r.reason.as_deref().unwrap().contains("+ combination"));
    }

    #[test]
    fn pointwise_scan_finds_the_first_bad_index() {
        let h = sr(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]);
        let f = sr(&[2.0 * FRAC_1_SQRT_2, 5.0]);
        let s = MeasureSample::new(vec![1.0, 1.0], f, sr(&[1.0, 1.0]), Some(h)).unwrap();
        let b = Bracket::real(1.0, 3.0).unwrap();
        // f₁ = 2·h₁ sits at the box center; f₂ = 5 is far outside |·|·h₂.
        let r = pointwise_sufficient(&s, &b, PointwiseTarget::F, 0.0).unwrap();
        assert!(!r.holds);
        assert_eq!(r.first_violation, Some(1));

        // f = center·h everywhere passes with slack.
        let f = vec![Scalar::real(2.0 * FRAC_1_SQRT_2); 2];
        let s = MeasureSample::new(vec![1.0, 1.0], f, sr(&[1.0, 1.0]), Some(sr(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]))).unwrap();
        let r = pointwise_sufficient(&s, &b, PointwiseTarget::F, 0.0).unwrap();
        assert!(r.holds && r.first_violation.is_none());
    }

    #[test]
    fn mass_rescaling_leaves_reports_invariant() {
        // μ → c·μ with f, g, h → /√c is the exact refinement symmetry.
        let c: f64 = 3.0;
        let h = sr(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]);
        let f = sr(&[FRAC_1_SQRT_2, 3.0 * FRAC_1_SQRT_2]);
        let g = sr(&[2.0 * FRAC_1_SQRT_2, FRAC_1_SQRT_2]);
        let b = Bracket::real(0.5, 3.5).unwrap();
        let base = MeasureSample::new(vec![1.0, 1.0], f.clone(), g.clone(), Some(h.clone())).unwrap();
        let shrink = |v: &[Scalar]| -> Vec<Scalar> {
            v.iter().map(|z| z.scale(1.0 / c.sqrt())).collect()
        };
        let scaled = MeasureSample::new(
            vec![c, c],
            shrink(&f),
            shrink(&g),
            Some(shrink(&h)),
        )
        .unwrap();
        let r0 = check_p1(&base, &b, &b, DEFAULT_TOL).unwrap();
        let r1 = check_p1(&scaled, &b, &b, DEFAULT_TOL).unwrap();
        assert!((r0.measured - r1.measured).abs() <= 1e-12 * r0.measured.abs().max(1.0));
        assert!((r0.bound_value - r1.bound_value).abs() <= 1e-12 * r0.bound_value.max(1.0));
        assert_eq!(r0.applicable, r1.applicable);
    }
}
