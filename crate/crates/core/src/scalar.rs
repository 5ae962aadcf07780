//! Complex scalars with explicitly finite parts.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A complex number with 64-bit floating-point real and imaginary parts.
///
/// Real data is the `im == 0` special case, so every operation downstream is
/// written once for the complex field. Values entering the library through a
/// [`Vector`](crate::space::Vector), a box or a sample are checked to be
/// finite at construction, so arithmetic never has to branch on NaN.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Scalar {
    pub re: f64,
    pub im: f64,
}

impl Scalar {
    pub const ZERO: Scalar = Scalar { re: 0.0, im: 0.0 };
    pub const ONE: Scalar = Scalar { re: 1.0, im: 0.0 };
    pub const I: Scalar = Scalar { re: 0.0, im: 1.0 };

    pub fn new(re: f64, im: f64) -> Self {
        Scalar { re, im }
    }

    /// A purely real scalar.
    pub fn real(re: f64) -> Self {
        Scalar { re, im: 0.0 }
    }

    pub fn conj(self) -> Self {
        Scalar {
            re: self.re,
            im: -self.im,
        }
    }

    /// |z|², computed as `re·re + im·im`.
    pub fn abs_sq(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    /// |z| via `hypot`, which is exact for values on the real or imaginary axis.
    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_real(self) -> bool {
        self.im == 0.0
    }

    /// Multiplication by a real factor.
    pub fn scale(self, t: f64) -> Self {
        Scalar {
            re: self.re * t,
            im: self.im * t,
        }
    }

    fn c(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    fn from_c(z: Complex64) -> Self {
        Scalar { re: z.re, im: z.im }
    }
}

impl From<f64> for Scalar {
    fn from(re: f64) -> Self {
        Scalar::real(re)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        Scalar::from_c(self.c() * rhs.c())
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        Scalar::from_c(self.c() / rhs.c())
    }
}

impl Mul<f64> for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: f64) -> Scalar {
        self.scale(rhs)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            write!(f, "{}", self.re)
        } else if self.im < 0.0 {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Serialized as the two-element array `[re, im]`.
impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        (self.re, self.im).serialize(serializer)
    }
}

/// Accepts either a plain number (taken as real) or a `[re, im]` pair.
impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Real(f64),
            Pair(f64, f64),
        }
        let z = match Repr::deserialize(deserializer)? {
            Repr::Real(re) => Scalar::real(re),
            Repr::Pair(re, im) => Scalar::new(re, im),
        };
        if !z.is_finite() {
            return Err(D::Error::custom("scalar parts must be finite"));
        }
        Ok(z)
    }
}
