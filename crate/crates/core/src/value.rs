//! Complex values carrying an absolute error estimate.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A complex number together with a non-negative absolute error budget.
///
/// Sums add budgets; products propagate them to first order. Rounding is not
/// tracked here; functions that produce values fold their own rounding
/// estimate into `err`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize, Default)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
    pub err: f64,
}

impl ComplexValue {
    pub const ZERO: ComplexValue = ComplexValue { re: 0.0, im: 0.0, err: 0.0 };
    pub const ONE: ComplexValue = ComplexValue { re: 1.0, im: 0.0, err: 0.0 };
    pub const I: ComplexValue = ComplexValue { re: 0.0, im: 1.0, err: 0.0 };

    pub const fn new(re: f64, im: f64) -> Self {
        ComplexValue { re, im, err: 0.0 }
    }

    pub const fn real(re: f64) -> Self {
        ComplexValue { re, im: 0.0, err: 0.0 }
    }

    pub fn from_complex(z: Complex64, err: f64) -> Self {
        ComplexValue { re: z.re, im: z.im, err: err.abs() }
    }

    pub fn with_err(self, err: f64) -> Self {
        ComplexValue { err: err.abs(), ..self }
    }

    /// Adds `extra` to the error budget.
    pub fn widen(self, extra: f64) -> Self {
        ComplexValue { err: self.err + extra.abs(), ..self }
    }

    pub fn z(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn abs(&self) -> f64 {
        self.z().norm()
    }

    pub fn conj(&self) -> Self {
        ComplexValue { re: self.re, im: -self.im, err: self.err }
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    /// Distance to another value, ignoring error budgets.
    pub fn dist(&self, other: impl Into<ComplexValue>) -> f64 {
        (self.z() - other.into().z()).norm()
    }

    pub fn scale(self, k: f64) -> Self {
        ComplexValue { re: self.re * k, im: self.im * k, err: self.err * k.abs() }
    }
}

impl From<f64> for ComplexValue {
    fn from(x: f64) -> Self {
        ComplexValue::real(x)
    }
}

impl From<Complex64> for ComplexValue {
    fn from(z: Complex64) -> Self {
        ComplexValue::new(z.re, z.im)
    }
}

impl From<(f64, f64)> for ComplexValue {
    fn from(p: (f64, f64)) -> Self {
        ComplexValue::new(p.0, p.1)
    }
}

impl From<ComplexValue> for Complex64 {
    fn from(v: ComplexValue) -> Self {
        v.z()
    }
}

impl Add for ComplexValue {
    type Output = ComplexValue;
    fn add(self, o: ComplexValue) -> ComplexValue {
        ComplexValue { re: self.re + o.re, im: self.im + o.im, err: self.err + o.err }
    }
}

impl Sub for ComplexValue {
    type Output = ComplexValue;
    fn sub(self, o: ComplexValue) -> ComplexValue {
        ComplexValue { re: self.re - o.re, im: self.im - o.im, err: self.err + o.err }
    }
}

impl Neg for ComplexValue {
    type Output = ComplexValue;
    fn neg(self) -> ComplexValue {
        ComplexValue { re: -self.re, im: -self.im, err: self.err }
    }
}

impl Mul for ComplexValue {
    type Output = ComplexValue;
    fn mul(self, o: ComplexValue) -> ComplexValue {
        let p = self.z() * o.z();
        let err = self.abs() * o.err + o.abs() * self.err + self.err * o.err;
        ComplexValue { re: p.re, im: p.im, err }
    }
}

impl Div for ComplexValue {
    type Output = ComplexValue;
    fn div(self, o: ComplexValue) -> ComplexValue {
        let q = self.z() / o.z();
        let d = o.abs();
        // first order: |δ(a/b)| ≤ δa/|b| + |a| δb/|b|²
        let err = self.err / d + self.abs() * o.err / (d * d);
        ComplexValue { re: q.re, im: q.im, err }
    }
}

impl fmt::Display for ComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.15e}{:+.15e}i (±{:.1e})", self.re, self.im, self.err)
    }
}
