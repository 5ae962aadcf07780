//! Weighted inner-product spaces over ℝ and ℂ, with the handful of vector
//! operations everything else is built from.
//!
//! The inner product on a space with weights `w` is
//!
//! ```text
//! ⟨x, y⟩ = Σᵢ wᵢ · xᵢ · conj(yᵢ)        (conjugate-linear in the second slot)
//! ```
//!
//! summed in ascending index order so results are reproducible bit for bit.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::scalar::Scalar;

/// Tolerance for accepting a vector as "unit": |‖e‖ − 1| ≤ `UNIT_TOL`.
pub const UNIT_TOL: f64 = 1e-9;

/// Whether an instance lives over the real or the complex field.
///
/// Real data is represented with zero imaginary parts; the mode matters for
/// input validation and for how many degrees of freedom samplers use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Real,
    Complex,
}

/// A finite-dimensional vector with finite complex entries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector {
    entries: Vec<Scalar>,
}

impl Vector {
    /// Builds a vector, rejecting NaN or infinite entries up front.
    pub fn new(entries: Vec<Scalar>) -> Result<Self, Error> {
        if entries.iter().any(|z| !z.is_finite()) {
            return Err(Error::NonFinite {
                context: "vector entry",
            });
        }
        Ok(Vector { entries })
    }

    pub fn from_reals(values: &[f64]) -> Result<Self, Error> {
        Vector::new(values.iter().map(|&v| Scalar::real(v)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Vector {
            entries: vec![Scalar::ZERO; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    /// Entry-wise multiplication by a scalar.
    pub fn scaled(&self, c: Scalar) -> Vector {
        Vector {
            entries: self.entries.iter().map(|&z| z * c).collect(),
        }
    }

    pub fn add(&self, other: &Vector) -> Result<Vector, Error> {
        self.check_same_dim(other)?;
        Ok(Vector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector, Error> {
        self.check_same_dim(other)?;
        Ok(Vector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a - b)
                .collect(),
        })
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.is_real())
    }

    fn check_same_dim(&self, other: &Vector) -> Result<(), Error> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

/// A finite weighted space: dimension ≥ 1 and strictly positive weights.
///
/// Also the exact carrier for discrete measures: the weights play the role of
/// the point masses μᵢ, so every measure-level statement delegates here
/// without any re-derivation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedSpace {
    weights: Vec<f64>,
}

impl WeightedSpace {
    pub fn new(weights: Vec<f64>) -> Result<Self, Error> {
        if weights.is_empty() {
            return Err(Error::EmptySpace);
        }
        for (index, &value) in weights.iter().enumerate() {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidWeight { index, value });
            }
        }
        Ok(WeightedSpace { weights })
    }

    /// ℝⁿ/ℂⁿ with all weights 1.
    pub fn standard(dim: usize) -> Result<Self, Error> {
        WeightedSpace::new(vec![1.0; dim])
    }

    /// The n-point mean space: all weights 1/n, so ⟨x, (1,…,1)⟩ is the mean of x.
    pub fn uniform(dim: usize) -> Result<Self, Error> {
        if dim == 0 {
            return Err(Error::EmptySpace);
        }
        WeightedSpace::new(vec![1.0 / dim as f64; dim])
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    fn check_dim(&self, v: &Vector) -> Result<(), Error> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.dim(),
            });
        }
        Ok(())
    }

    /// ⟨x, y⟩ = Σᵢ wᵢ xᵢ conj(yᵢ), ascending index order.
    pub fn inner(&self, x: &Vector, y: &Vector) -> Result<Scalar, Error> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let mut acc = Scalar::ZERO;
        for ((&w, &xi), &yi) in self.weights.iter().zip(x.entries()).zip(y.entries()) {
            acc = acc + (xi * yi.conj()).scale(w);
        }
        Ok(acc)
    }

    /// ‖x‖² = Re ⟨x, x⟩, a sum of nonnegative terms.
    pub fn norm_sq(&self, x: &Vector) -> Result<f64, Error> {
        self.check_dim(x)?;
        let mut acc = 0.0;
        for (&w, &xi) in self.weights.iter().zip(x.entries()) {
            acc += w * xi.abs_sq();
        }
        Ok(acc)
    }

    pub fn norm(&self, x: &Vector) -> Result<f64, Error> {
        Ok(self.norm_sq(x)?.sqrt())
    }

    /// x / ‖x‖; rejects the zero vector. Entries are divided rather than
    /// multiplied by the reciprocal: one rounding per component, so e.g.
    /// (3, 4) on the standard plane normalizes to exactly (0.6, 0.8).
    pub fn normalize(&self, x: &Vector) -> Result<Vector, Error> {
        let n = self.norm(x)?;
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        let entries = x
            .entries()
            .iter()
            .map(|z| Scalar::new(z.re / n, z.im / n))
            .collect();
        Vector::new(entries)
    }

    /// Checks |‖e‖ − 1| ≤ [`UNIT_TOL`]; most operations require a unit reference vector.
    pub fn require_unit(&self, e: &Vector) -> Result<(), Error> {
        let n = self.norm(e)?;
        if (n - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotUnit { norm: n });
        }
        Ok(())
    }

    /// The component of `m` orthogonal to a unit vector `e`: m − ⟨m, e⟩ e.
    ///
    /// Its squared norm equals ‖m‖² − |⟨m, e⟩|², which is the gap every
    /// Grüss-type bound controls.
    pub fn residual(&self, m: &Vector, e: &Vector) -> Result<Vector, Error> {
        self.require_unit(e)?;
        let coeff = self.inner(m, e)?;
        m.sub(&e.scaled(coeff))
    }
}
