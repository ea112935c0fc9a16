use super::ConverseError;
use crate::lfun::{CoefficientSeries, FunctionalEquationData, PolarPart};
use crate::specfun::bessel_k0_scaled;
use crate::value::ComplexValue;
use num_complex::Complex64;
use std::f64::consts::PI;

/// A point z = x + iy of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaassEvalPoint {
    pub x: f64,
    pub y: f64,
}

impl MaassEvalPoint {
    pub fn new(x: f64, y: f64) -> Result<Self, ConverseError> {
        if !(y > 0.0) || !x.is_finite() || !y.is_finite() {
            return Err(ConverseError::Invalid(format!("z = {x} + {y}i is not in the upper half-plane")));
        }
        Ok(MaassEvalPoint { x, y })
    }

    pub fn z(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    /// −1/(Nz).
    pub fn fricke(&self, level: u64) -> Self {
        let w = -1.0 / (self.z() * level as f64);
        MaassEvalPoint { x: w.re, y: w.im }
    }
}

/// Coefficients, parity and the principal parts of the completed L-function
/// at s = 0 that fix the constant term.
#[derive(Debug, Clone, PartialEq)]
pub struct MaassData {
    pub series: CoefficientSeries,
    pub parity: u8,
    pub polar_parts: Vec<PolarPart>,
}

impl MaassData {
    pub fn f_side(series: &CoefficientSeries, fe: &FunctionalEquationData) -> Self {
        MaassData { series: series.clone(), parity: fe.parity, polar_parts: fe.polar_parts.clone() }
    }

    /// The paired form with b_n = root·c_n.
    pub fn g_side(fe: &FunctionalEquationData) -> Result<Self, ConverseError> {
        let polar_parts = if fe.dual.structure.is_some() { fe.g_polar_parts()? } else { Vec::new() };
        Ok(MaassData { series: fe.g_series(), parity: fe.parity, polar_parts })
    }
}

/// Smallest truncation with 2π·T·y ≥ 45.
pub fn default_truncation(y: f64) -> usize {
    (45.0 / (2.0 * PI * y)).ceil() as usize
}

/// f₀(z) = (1/4)(−Res_{s=0}Λ · √y + Res_{s=0} sΛ · √y log y).
pub fn constant_term(polar_parts: &[PolarPart], y: f64) -> Complex64 {
    let Some(p) = polar_parts.iter().find(|p| p.point == 0.0) else {
        return Complex64::new(0.0, 0.0);
    };
    0.25 * y.sqrt() * (-p.residue() + p.second() * y.ln())
}

/// f̃(z) = ½Σ_{n≠0} a_n √y K(2πny) e^{2πinx} with a_{−n} = (−1)^ε a_n, that
/// is Σ_{n≥1} a_n √y K(2πny) times cos(2πnx) for ε = 0 and i·sin(2πnx) for
/// ε = 1. The error budget is a geometric bound on the omitted terms.
pub fn whittaker_nonconstant(
    data: &MaassData,
    z: MaassEvalPoint,
    truncation: usize,
) -> Result<ComplexValue, ConverseError> {
    if 2.0 * PI * truncation as f64 * z.y < 40.0 {
        return Err(ConverseError::TruncationInsufficient(format!(
            "2π·{truncation}·{} < 40; need at least {} terms",
            z.y,
            default_truncation(z.y)
        )));
    }
    if truncation > data.series.len() {
        return Err(ConverseError::TruncationInsufficient(format!(
            "{truncation} terms requested, {} available",
            data.series.len()
        )));
    }
    let sy = z.y.sqrt();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for n in 1..=truncation {
        let u = 2.0 * PI * n as f64 * z.y;
        let k = bessel_k0_scaled(u).expect("u > 0") * (-u).exp();
        let a = data.series.coeffs[n - 1];
        let th = 2.0 * PI * n as f64 * z.x;
        let phase = if data.parity == 0 { Complex64::new(th.cos(), 0.0) } else { Complex64::new(0.0, th.sin()) };
        acc += a.z() * sy * k * phase;
        err += a.err * sy * k + 4.0 * f64::EPSILON * a.abs() * sy * k;
    }
    let next = (truncation + 1) as f64;
    let u = 2.0 * PI * next * z.y;
    let bound = data.series.growth_constant()
        * next.powf(data.series.growth_sigma)
        * sy
        * bessel_k0_scaled(u).expect("u > 0")
        * (-u).exp();
    err += bound / (1.0 - (-2.0 * PI * z.y).exp());
    Ok(ComplexValue::from_complex(acc, err))
}

/// f(z) = f₀(z) + f̃(z).
pub fn whittaker_series(data: &MaassData, z: MaassEvalPoint, truncation: usize) -> Result<ComplexValue, ConverseError> {
    let tilde = whittaker_nonconstant(data, z, truncation)?;
    let c0 = constant_term(&data.polar_parts, z.y);
    let perr: f64 =
        data.polar_parts.iter().filter(|p| p.point == 0.0).flat_map(|p| p.coeffs.iter().map(|c| c.err)).sum();
    Ok(ComplexValue::from_complex(tilde.z() + c0, tilde.err + perr * z.y.sqrt() * (1.0 + z.y.ln().abs())))
}

/// max over the points of |f(z) − g(−1/(Nz))|, each side truncated at
/// [`default_truncation`].
pub fn check_modularity(
    f: &MaassData,
    g: &MaassData,
    level: u64,
    points: &[MaassEvalPoint],
) -> Result<f64, ConverseError> {
    let mut worst: f64 = 0.0;
    for &z in points {
        let w = z.fricke(level);
        let a = whittaker_series(f, z, default_truncation(z.y))?;
        let b = whittaker_series(g, w, default_truncation(w.y))?;
        worst = worst.max(a.dist(b));
    }
    Ok(worst)
}
