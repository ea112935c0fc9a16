use super::SpecFunError;
use crate::value::ComplexValue;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Rising factorial (a)_k as a plain complex number.
pub fn pochhammer_c(a: Complex64, k: usize) -> Complex64 {
    let mut p = Complex64::new(1.0, 0.0);
    for n in 0..k {
        p *= a + n as f64;
    }
    p
}

/// Rising factorial (a)_k = a(a+1)…(a+k−1) with error budget.
pub fn pochhammer(a: impl Into<ComplexValue>, k: usize) -> ComplexValue {
    let a = a.into();
    let mut p = ComplexValue::ONE;
    for n in 0..k {
        p = p * (a + ComplexValue::real(n as f64));
    }
    let rounding = p.abs() * f64::EPSILON * k as f64;
    p.widen(rounding)
}

/// The coefficients H_k(a, m) of (a+δ)_k = (a)_k Σ_m H_k(a,m) δ^m.
#[derive(Debug, Clone, PartialEq)]
pub struct PochhammerExpansion {
    pub base: ComplexValue,
    pub k: usize,
    pub coeffs: Vec<ComplexValue>,
    /// The same coefficients as exact rationals.
    pub exact: Vec<BigRational>,
}

impl PochhammerExpansion {
    /// Evaluates (a+δ)_k / (a)_k = Σ_m H_k(a,m) δ^m exactly.
    pub fn eval_exact(&self, delta: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.exact.iter().rev() {
            acc = acc * delta + c;
        }
        acc
    }
}

/// Expands (a+δ)(a+1+δ)…(a+k−1+δ) by exact polynomial multiplication and
/// divides by (a)_k.
pub fn pochhammer_expansion(a: &BigRational, k: usize) -> Result<PochhammerExpansion, SpecFunError> {
    // poly[m] = coefficient of δ^m
    let mut poly = vec![BigRational::one()];
    for n in 0..k {
        let root = a + BigRational::from_integer(BigInt::from(n));
        if root.is_zero() {
            return Err(SpecFunError::ZeroFactor(n));
        }
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (m, c) in poly.iter().enumerate() {
            next[m] += c * &root;
            next[m + 1] += c;
        }
        poly = next;
    }
    let lead = poly[0].clone();
    let exact: Vec<BigRational> = poly.into_iter().map(|c| c / &lead).collect();
    let coeffs = exact.iter().map(|c| ComplexValue::real(c.to_f64().unwrap_or(f64::NAN))).collect();
    Ok(PochhammerExpansion { base: ComplexValue::real(a.to_f64().unwrap_or(f64::NAN)), k, coeffs, exact })
}

/// The harmonic number H_k as an exact rational.
pub fn harmonic(k: usize) -> BigRational {
    (1..=k).fold(BigRational::zero(), |acc, n| acc + BigRational::new(BigInt::one(), BigInt::from(n)))
}
