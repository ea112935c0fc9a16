use super::eval::gamma_factor;
use super::fe::FunctionalEquationData;
use super::series::CoefficientSeries;
use super::LfunError;
use crate::value::ComplexValue;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Quadrature parameters for [`smoothed_eval`]. The vertical line sits at
/// Re z = `c`; when `c` is `None` it is placed just right of both
/// half-planes of absolute convergence. The test function is e^{δz²}; a small
/// δ keeps the kernel decaying quickly in n. When `t_max` is `None` the line
/// is cut where δt² reaches 40, offset by |Im s|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothedParams {
    pub c: Option<f64>,
    pub h: f64,
    pub delta: f64,
    pub t_max: Option<f64>,
    /// Largest acceptable truncated tail, relative to the summed magnitude.
    pub tol: f64,
}

impl Default for SmoothedParams {
    fn default() -> Self {
        SmoothedParams { c: None, h: 0.1, delta: 0.1, t_max: None, tol: 1e-10 }
    }
}

/// Σ_n a_n φ(n) with φ(n) = (1/2πi)∫ γ(u+z) (√N/n)^{u+z} e^{δz²}/z dz along
/// Re z = c, and the magnitude of the last few terms as a tail proxy.
struct SideSum {
    value: Complex64,
    coarse: Complex64,
    magnitude: f64,
    tail: f64,
}

fn side_sum(
    series: &CoefficientSeries,
    shifts: &[i64],
    level: u64,
    u: Complex64,
    params: &SmoothedParams,
    c: f64,
    t_max: f64,
) -> Result<SideSum, LfunError> {
    let steps = (t_max / params.h).ceil() as i64;
    let ln_n = (level as f64).ln();
    // per-node kernel γ(u+z) N^{(u+z)/2} e^{δz²}/z · h/(2π)
    let mut nodes = Vec::with_capacity((2 * steps + 1) as usize);
    for j in -steps..=steps {
        let z = Complex64::new(c, j as f64 * params.h);
        let g = gamma_factor(shifts, ComplexValue::from(u + z))?.z();
        let k = g * (0.5 * (u + z) * ln_n).exp() * (params.delta * z * z).exp() / z * (params.h / (2.0 * PI));
        nodes.push((j, u + z, k));
    }
    let m = series.len();
    let mut value = Complex64::new(0.0, 0.0);
    let mut coarse = Complex64::new(0.0, 0.0);
    let mut magnitude = 0.0;
    let mut tail: f64 = 0.0;
    let growth = series.growth_constant().max(1.0);
    for n in 1..=m {
        let a = series.get(n as u64);
        let ln = (n as f64).ln();
        let mut phi = Complex64::new(0.0, 0.0);
        let mut phi2 = Complex64::new(0.0, 0.0);
        for &(j, w, k) in &nodes {
            let t = k * (-w * ln).exp();
            phi += t;
            if j % 2 == 0 {
                phi2 += t;
            }
        }
        value += a * phi;
        coarse += a * phi2 * 2.0;
        magnitude += (a * phi).norm();
        if n + 10 > m {
            // the omitted tail is dominated by terms just past M
            tail = tail.max(growth * (n as f64).powf(series.growth_sigma) * phi.norm() * n as f64);
        }
    }
    Ok(SideSum { value, coarse, magnitude, tail })
}

/// Λ(s) from the smoothed identity
///
/// N^{s/2}Λ(s) = I_f(s) + (−1)^ε·root·I_c(1−s) − Σ_ρ Res_{z=ρ−s} N^{(s+z)/2}Λ(s+z)e^{δz²}/z,
///
/// where I_f, I_c are coefficient sums against the inverse-Mellin kernel of
/// the gamma product and ρ runs over the poles listed in `fe.polar_parts`.
/// The truncation and quadrature estimates are heuristic.
pub fn smoothed_eval(
    series: &CoefficientSeries,
    fe: &FunctionalEquationData,
    s: ComplexValue,
    params: SmoothedParams,
) -> Result<ComplexValue, LfunError> {
    if s.im.abs() > 30.0 {
        return Err(LfunError::TruncationInsufficient(format!("|Im s| = {} exceeds 30", s.im.abs())));
    }
    if series.is_empty() || fe.dual.is_empty() {
        return Err(LfunError::TruncationInsufficient("no coefficients".into()));
    }
    let sz = s.z();
    let u = 1.0 - sz;
    let sigma = series.growth_sigma.max(fe.dual.growth_sigma);
    let c = params.c.unwrap_or_else(|| (1.5 + sigma - sz.re).max(0.5 + sigma + sz.re).max(0.5));
    if !(params.h > 0.0 && params.delta > 0.0) {
        return Err(LfunError::Invalid("step and δ must be positive".into()));
    }
    let t_max = params.t_max.unwrap_or_else(|| (40.0 / params.delta).sqrt() + sz.im.abs());
    let f = side_sum(series, &fe.gamma_shifts, fe.level, sz, &params, c, t_max)?;
    let g = side_sum(&fe.dual, &fe.gamma_shifts, fe.level, u, &params, c, t_max)?;
    let tail = f.tail + g.tail;
    if tail > params.tol * (f.magnitude + g.magnitude) {
        return Err(LfunError::TruncationInsufficient(format!(
            "estimated tail {tail:.3e} with {} coefficients exceeds {:.1e} relative",
            series.len(),
            params.tol
        )));
    }
    let sgn = fe.sign() * fe.root_constant.z();
    let mut star = f.value + sgn * g.value;
    let coarse = f.coarse + sgn * g.coarse;

    let ln_n = (fe.level as f64).ln();
    for part in &fe.polar_parts {
        let z0 = Complex64::new(part.point, 0.0) - sz;
        if z0.norm() < 1e-8 {
            return Err(LfunError::Invalid(format!("s = {s} sits on a pole")));
        }
        let h0 = (0.5 * (sz + z0) * ln_n).exp() * (params.delta * z0 * z0).exp() / z0;
        let h1 = h0 * (0.5 * ln_n + 2.0 * params.delta * z0 - 1.0 / z0);
        let res = part.residue() * h0 + part.second() * h1;
        star -= res;
    }
    let value = (-0.5 * sz * ln_n).exp() * star;
    let scale = (-0.5 * sz.re * ln_n).exp();
    let quad = (f.value + sgn * g.value - coarse).norm();
    let err = scale * (quad + tail + 1e-14 * (f.magnitude + g.magnitude));
    Ok(ComplexValue::from_complex(value, err))
}
