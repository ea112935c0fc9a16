use super::{bernoulli_even, factorial, near_nonpositive_integer, SpecFunError};
use crate::value::ComplexValue;
use num_complex::Complex64;

const ASYMPTOTIC_RADIUS: f64 = 14.0;

/// Shifts `z` upward until the asymptotic expansion is accurate and returns
/// (shifted point, number of shifts).
fn shift_up(z: Complex64) -> (Complex64, usize) {
    let mut w = z;
    let mut n = 0;
    while w.re < 0.5 || w.norm() < ASYMPTOTIC_RADIUS {
        w += 1.0;
        n += 1;
    }
    (w, n)
}

/// Ψ(z) for complex z.
pub fn digamma_c(z: Complex64) -> Result<Complex64, SpecFunError> {
    if let Some(n) = near_nonpositive_integer(z) {
        return Err(SpecFunError::PoleAtNonPositiveInteger(n));
    }
    let (w, n) = shift_up(z);
    let mut corr = Complex64::new(0.0, 0.0);
    for k in 0..n {
        corr += 1.0 / (z + k as f64);
    }
    let b = bernoulli_even();
    let winv = 1.0 / w;
    let w2 = winv * winv;
    let mut term = w2;
    let mut series = w.ln() - 0.5 * winv;
    for k in 1..=10 {
        series -= b[k] / (2.0 * k as f64) * term;
        term *= w2;
    }
    Ok(series - corr)
}

/// ψ^{(m)}(z), the m-th derivative of the digamma function (m = 0 is Ψ).
pub fn polygamma_c(m: usize, z: Complex64) -> Result<Complex64, SpecFunError> {
    if m == 0 {
        return digamma_c(z);
    }
    if let Some(n) = near_nonpositive_integer(z) {
        return Err(SpecFunError::PoleAtNonPositiveInteger(n));
    }
    let (w, n) = shift_up(z);
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 }; // (−1)^{m+1}
    let mfact = factorial(m);
    let mut corr = Complex64::new(0.0, 0.0);
    for k in 0..n {
        corr += (z + k as f64).powi(-(m as i32) - 1);
    }
    let b = bernoulli_even();
    let winv = 1.0 / w;
    let mut series = factorial(m - 1) * winv.powi(m as i32) + 0.5 * mfact * winv.powi(m as i32 + 1);
    let w2 = winv * winv;
    let mut term = winv.powi(m as i32 + 2);
    for k in 1..=10 {
        let coef = b[k] * factorial(2 * k + m - 1) / factorial(2 * k);
        series += coef * term;
        term *= w2;
    }
    Ok(sign * (series + mfact * corr))
}

/// Ψ(z) with error budget.
pub fn digamma(z: impl Into<ComplexValue>) -> Result<ComplexValue, SpecFunError> {
    let z = z.into();
    let v = digamma_c(z.z())?;
    let mut err = 1e-15 * (1.0 + v.norm());
    if z.err > 0.0 {
        err += polygamma_c(1, z.z())?.norm() * z.err;
    }
    Ok(ComplexValue::from_complex(v, err))
}
