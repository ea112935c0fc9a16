use super::gj::{alpha_jet, jets};
use super::{g_factor, jg_product, ConverseError, GJFactors};
use crate::lfun::{eval_completed, CoefficientSeries, FunctionalEquationData, PolarPart};
use crate::quad::rectangle_contour;
use crate::value::ComplexValue;
use num_complex::Complex64;
use std::f64::consts::PI;

/// (−1)^k √π/(k!)².
fn prefactor(k: usize) -> f64 {
    let fact: f64 = (1..=k).map(|j| j as f64).product();
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * PI.sqrt() / (fact * fact)
}

/// (𝓘_k(α), 𝓘̃_k(α)): the contour integrals (−1)^k√π/(k!)² (1/2πi)∮ Λ_f(s)
/// H(s) α^{1/2−s} ds with H = G_k resp. J_kG_k, as residue sums. At a pole
/// of order at most two, Res[Λ_f·F] = Res Λ_f · F(p) + Res (s−p)Λ_f · F'(p).
///
/// `pole_data` must list every pole of Λ_f recorded in `fe`.
pub fn residue_integrals(
    fe: &FunctionalEquationData,
    gj: GJFactors,
    alpha: f64,
    pole_data: &[PolarPart],
) -> Result<(ComplexValue, ComplexValue), ConverseError> {
    if !(alpha > 0.0) {
        return Err(ConverseError::Invalid(format!("α = {alpha} must be positive")));
    }
    if gj.epsilon != fe.parity {
        return Err(ConverseError::Invalid(format!(
            "ε = {} but the functional equation has parity {}",
            gj.epsilon, fe.parity
        )));
    }
    for p in &fe.polar_parts {
        if !pole_data.iter().any(|q| q.point == p.point) {
            return Err(ConverseError::IncompletePoleData(p.point));
        }
    }
    let mut total = [Complex64::new(0.0, 0.0); 2];
    let mut err = 0.0;
    for part in pole_data {
        if part.coeffs.len() > 2 {
            return Err(ConverseError::Invalid(format!("pole of order {} at s = {}", part.coeffs.len(), part.point)));
        }
        let p = Complex64::new(part.point, 0.0);
        let (g, jg) = jets(gj, p);
        let a = alpha_jet(alpha, p);
        for (slot, h) in [g.mul(&a), jg.mul(&a)].iter().enumerate() {
            if h.val < 0 {
                return Err(ConverseError::Invalid(format!("unexpected pole of the kernel at s = {}", part.point)));
            }
            total[slot] += part.residue() * h.coeff(0) + part.second() * h.coeff(1);
            err += part.coeffs.iter().map(|c| c.err).sum::<f64>() * (h.coeff(0).norm() + h.coeff(1).norm());
        }
    }
    let pre = prefactor(gj.k);
    Ok((
        ComplexValue::from_complex(total[0] * pre, err * pre.abs() + 1e-15 * total[0].norm()),
        ComplexValue::from_complex(total[1] * pre, err * pre.abs() + 1e-15 * total[1].norm()),
    ))
}

/// The same pair by Gauss–Legendre quadrature around [−1/2, 3/2]×[−2, 2].
pub fn residue_integrals_by_quadrature(
    series: &CoefficientSeries,
    fe: &FunctionalEquationData,
    gj: GJFactors,
    alpha: f64,
    nodes: usize,
) -> Result<(Complex64, Complex64), ConverseError> {
    let lam = |s: Complex64| eval_completed(series, fe, None, ComplexValue::from_complex(s, 0.0)).map(|v| v.z());
    let failure = std::cell::RefCell::new(None);
    let mut out = [Complex64::new(0.0, 0.0); 2];
    for (slot, o) in out.iter_mut().enumerate() {
        let f = |s: Complex64| {
            let l = match lam(s) {
                Ok(v) => v,
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    return Complex64::new(0.0, 0.0);
                }
            };
            let h = if slot == 0 { g_factor(gj, s) } else { jg_product(gj, s) };
            l * h * (alpha.ln() * (0.5 - s)).exp()
        };
        *o = rectangle_contour(&f, -0.5, 1.5, -2.0, 2.0, nodes) * prefactor(gj.k);
    }
    if let Some(e) = failure.into_inner() {
        return Err(e.into());
    }
    Ok((out[0], out[1]))
}
