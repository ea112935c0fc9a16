use super::{bernoulli_even, near_nonpositive_integer, sin_pi_c, SpecFunError};
use crate::value::ComplexValue;
use num_complex::Complex64;
use std::f64::consts::PI;

// Lanczos coefficients for g = 7.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_right(z: Complex64) -> Complex64 {
    // valid for Re z >= 1/2
    let zm = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (zm + i as f64);
    }
    let t = zm + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * ((zm + 0.5) * t.ln() - t).exp() * x
}

/// Γ(z) for complex z.
pub fn gamma_c(z: Complex64) -> Result<Complex64, SpecFunError> {
    if let Some(n) = near_nonpositive_integer(z) {
        return Err(SpecFunError::PoleAtNonPositiveInteger(n));
    }
    if z.re >= 0.5 {
        Ok(lanczos_right(z))
    } else {
        Ok(PI / (sin_pi_c(z) * lanczos_right(1.0 - z)))
    }
}

/// 1/Γ(z), entire; exact zeros at the non-positive integers.
pub fn rgamma_c(z: Complex64) -> Complex64 {
    if z.re >= 0.5 {
        1.0 / lanczos_right(z)
    } else {
        sin_pi_c(z) * lanczos_right(1.0 - z) / PI
    }
}

/// log Γ(z) by the Stirling series after an upward shift. The branch is
/// continuous on Re z > 0, which is what the Riemann–Siegel phase needs.
pub fn ln_gamma_c(z: Complex64) -> Result<Complex64, SpecFunError> {
    if let Some(n) = near_nonpositive_integer(z) {
        return Err(SpecFunError::PoleAtNonPositiveInteger(n));
    }
    if z.re <= 0.0 {
        let refl = ln_gamma_c(1.0 - z)?;
        return Ok(Complex64::new(PI.ln(), 0.0) - sin_pi_c(z).ln() - refl);
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.norm() < 14.0 {
        shift += w.ln();
        w += 1.0;
    }
    let b = bernoulli_even();
    let winv = 1.0 / w;
    let w2 = winv * winv;
    let mut term = winv;
    let mut series = Complex64::new(0.0, 0.0);
    for k in 1..=10 {
        let kk = k as f64;
        series += b[k] / (2.0 * kk * (2.0 * kk - 1.0)) * term;
        term *= w2;
    }
    Ok((w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series - shift)
}

/// Γ(z) with error budget.
pub fn gamma(z: impl Into<ComplexValue>) -> Result<ComplexValue, SpecFunError> {
    let z = z.into();
    let g = gamma_c(z.z())?;
    let mut err = g.norm() * 2e-15 * (1.0 + z.abs());
    if z.err > 0.0 {
        let psi = super::digamma_c(z.z())?;
        err += (g * psi).norm() * z.err;
    }
    Ok(ComplexValue::from_complex(g, err))
}

/// Γ_R(s) = π^{−s/2} Γ(s/2) as a plain complex number.
pub fn gamma_r_c(s: Complex64) -> Result<Complex64, SpecFunError> {
    let g = gamma_c(s / 2.0)?;
    Ok((-(s / 2.0) * PI.ln()).exp() * g)
}

/// Γ_R(s) = π^{−s/2} Γ(s/2).
pub fn gamma_r(s: impl Into<ComplexValue>) -> Result<ComplexValue, SpecFunError> {
    let s = s.into();
    let g = gamma(ComplexValue { re: s.re / 2.0, im: s.im / 2.0, err: s.err / 2.0 })?;
    let p = (-(s.z() / 2.0) * PI.ln()).exp();
    let err = g.err * p.norm() + (g.z() * p).norm() * (0.5 * PI.ln() * s.err + 1e-16);
    Ok(ComplexValue::from_complex(p * g.z(), err))
}
