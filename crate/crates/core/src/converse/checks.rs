use super::{j_factor, jg_product, residue_integrals, ConverseError, GJFactors};
use crate::hyp2f1::{hyp_degenerate, SeriesBudget};
use crate::lfun::{eval_completed, CoefficientSeries, FunctionalEquationData, PolarPart};
use crate::quad::{exp_sinh, rectangle_contour, tanh_sinh};
use crate::specfun::{bessel_k0_scaled, gamma_r_c};
use crate::value::ComplexValue;
use num_complex::Complex64;
use std::f64::consts::PI;

/// |4∫₀^∞ K(2παy) y^s dy/y − α^{−s}Γ_R(s)²|, by tanh-sinh on [0, 1/α] and
/// exp-sinh on the tail.
pub fn check_bessel_mellin(alpha: f64, s: Complex64) -> Result<f64, ConverseError> {
    if !(alpha > 0.0) || !(s.re > 0.0) {
        return Err(ConverseError::Invalid(format!("need α > 0 and Re s > 0, got α = {alpha}, s = {s}")));
    }
    let f = |y: f64| {
        let u = 2.0 * PI * alpha * y;
        let k = bessel_k0_scaled(u).unwrap_or(0.0) * (-u).exp();
        4.0 * k * ((s - 1.0) * y.ln()).exp()
    };
    let cut = 1.0 / alpha;
    let head = tanh_sinh(f, 0.0, cut, 1e-13);
    let tail = exp_sinh(f, cut, 1e-13);
    if !head.converged || !tail.converged {
        return Err(ConverseError::QuadratureFailure(format!("Mellin transform at α = {alpha}, s = {s}")));
    }
    let gr = gamma_r_c(s).map_err(|e| ConverseError::Invalid(e.to_string()))?;
    let exact = (-s * alpha.ln()).exp() * gr * gr;
    Ok((head.value + tail.value - exact).norm())
}

/// (2/y)^ε ₂F₁((s+ε)/2, (s+ε)/2; 1/2+ε; −y^{−2}) (αy)^{1/2−s}.
fn expansion_lhs(eps: u8, s: Complex64, alpha: f64, y: f64) -> Result<Complex64, ConverseError> {
    let e = eps as f64;
    let a = (s + e) / 2.0;
    let f = hyp_degenerate(
        ComplexValue::from_complex(a, 0.0),
        ComplexValue::real(0.5 + e),
        -1.0 / (y * y),
        SeriesBudget::default(),
    )?;
    Ok((2.0 / y).powf(e) * f.z() * ((0.5 - s) * (alpha * y).ln()).exp())
}

/// √π α^{1/2−s} y^{2k+1/2} (−1)^k/(k!)² G_k(s)(−2 log y + J_k(s)).
fn expansion_term(eps: u8, k: usize, s: Complex64, alpha: f64, y: f64) -> Complex64 {
    let gj = GJFactors { epsilon: eps, k };
    let fact: f64 = (1..=k).map(|j| j as f64).product();
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let g = super::g_factor(gj, s);
    let bracket = -2.0 * y.ln() * g + jg_product(gj, s);
    PI.sqrt() * ((0.5 - s) * alpha.ln()).exp() * y.powf(2.0 * k as f64 + 0.5) * sign / (fact * fact) * bracket
}

/// The truncated right side Σ_{k<ℓ₀} of the small-y expansion.
pub fn expansion_sum(eps: u8, s: Complex64, alpha: f64, y: f64, ell0: usize) -> Complex64 {
    (0..ell0).map(|k| expansion_term(eps, k, s, alpha, y)).sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionReport {
    pub residuals: Vec<f64>,
    /// Size of the first omitted term, the leading O(y^{2ℓ₀+1/2} log y) part.
    pub remainder_bounds: Vec<f64>,
    pub max_residual: f64,
}

/// Compares (2/y)^ε ₂F₁(…; −y^{−2})(αy)^{1/2−s} with its expansion to ℓ₀
/// terms at each y. Only the parity of `gj` is used.
pub fn check_expansion_identity(
    gj: GJFactors,
    s: Complex64,
    alpha: f64,
    y_values: &[f64],
    ell0: usize,
) -> Result<ExpansionReport, ConverseError> {
    let mut residuals = Vec::new();
    let mut remainder_bounds = Vec::new();
    for &y in y_values {
        if !(y > 0.0 && y < 1.0) {
            return Err(ConverseError::Invalid(format!("y = {y} must lie in (0, 1)")));
        }
        let lhs = expansion_lhs(gj.epsilon, s, alpha, y)?;
        residuals.push((lhs - expansion_sum(gj.epsilon, s, alpha, y, ell0)).norm());
        remainder_bounds.push(expansion_term(gj.epsilon, ell0, s, alpha, y).norm());
    }
    let max_residual = residuals.iter().cloned().fold(0.0, f64::max);
    Ok(ExpansionReport { residuals, remainder_bounds, max_residual })
}

/// The exponent p in residual(y) ≈ C y^p |−2 log y + J_{ℓ₀}(s)|, fitted from
/// y and y/2.
pub fn remainder_exponent(gj: GJFactors, s: Complex64, alpha: f64, y: f64, ell0: usize) -> Result<f64, ConverseError> {
    let rep = check_expansion_identity(gj, s, alpha, &[y, y / 2.0], ell0)?;
    let j = j_factor(GJFactors { epsilon: gj.epsilon, k: ell0 }, s)?;
    let shape = |t: f64| (-2.0 * t.ln() + j).norm();
    Ok((rep.residuals[0] / shape(y) / (rep.residuals[1] / shape(y / 2.0))).log2())
}

/// (2/y)^ε (1/2πi)∮ Λ_f(s) ₂F₁((s+ε)/2, (s+ε)/2; 1/2+ε; −y^{−2}) (αy)^{1/2−s} ds
/// around [−1/2, 3/2]×[−2, 2]. For the pair with z = α(1+iy) and N = 1 this
/// is four times f̃(z) − g̃(−1/z).
pub fn contour_integral(
    series: &CoefficientSeries,
    fe: &FunctionalEquationData,
    alpha: f64,
    y: f64,
    nodes: usize,
) -> Result<Complex64, ConverseError> {
    let failure = std::cell::RefCell::new(None);
    let f = |s: Complex64| {
        let v = eval_completed(series, fe, None, ComplexValue::from_complex(s, 0.0))
            .map_err(ConverseError::from)
            .and_then(|l| Ok(l.z() * expansion_lhs(fe.parity, s, alpha, y)?));
        v.unwrap_or_else(|e| {
            failure.borrow_mut().get_or_insert(e);
            Complex64::new(0.0, 0.0)
        })
    };
    let v = rectangle_contour(&f, -0.5, 1.5, -2.0, 2.0, nodes);
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok(v),
    }
}

/// Σ_{k<ℓ₀} (−2 log y · 𝓘_k(α) + 𝓘̃_k(α)) y^{2k+1/2}.
pub fn residue_expansion(
    fe: &FunctionalEquationData,
    alpha: f64,
    y: f64,
    ell0: usize,
    pole_data: &[PolarPart],
) -> Result<Complex64, ConverseError> {
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..ell0 {
        let (i, it) = residue_integrals(fe, GJFactors { epsilon: fe.parity, k }, alpha, pole_data)?;
        acc += (-2.0 * y.ln() * i.z() + it.z()) * y.powf(2.0 * k as f64 + 0.5);
    }
    Ok(acc)
}
