use super::fe::FunctionalEquationData;
use super::series::{CoefficientSeries, EisensteinStructure, TwistKind, TwistSpec};
use super::{parity_bracket, LfunError};
use crate::dirichlet::{enumerate_characters, gauss_sum, is_prime, DirichletCharacter};
use crate::specfun::{digamma_c, gamma_r, hurwitz_zeta_c};
use crate::value::ComplexValue;
use num_complex::Complex64;

/// L(s, ψ) = q^{−s} Σ_{a=1}^{q} ψ(a) ζ(s, a/q).
#[allow(non_snake_case)]
pub fn eval_dirichlet_L(psi: &DirichletCharacter, s: ComplexValue) -> Result<ComplexValue, LfunError> {
    let q = psi.modulus;
    let sz = s.z();
    if (sz - 1.0).norm() < 1e-12 {
        if psi.is_principal() {
            return Err(LfunError::PoleAtOne);
        }
        // the poles of the Hurwitz terms cancel; what is left is −(1/q) Σ ψ(a)Ψ(a/q)
        let mut acc = Complex64::new(0.0, 0.0);
        let mut mag = 0.0;
        for a in 1..=q {
            let v = psi.at(a as i64);
            if v.norm() == 0.0 {
                continue;
            }
            let t = v * digamma_c(Complex64::new(a as f64 / q as f64, 0.0)).expect("positive argument");
            mag += t.norm();
            acc += t;
        }
        let val = -acc / q as f64;
        return Ok(ComplexValue::from_complex(val, 4.0 * f64::EPSILON * mag / q as f64 + 1e-15 * val.norm()));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut mag = 0.0;
    for a in 1..=q {
        let v = psi.at(a as i64);
        if v.norm() == 0.0 {
            continue;
        }
        let (h, e) = hurwitz_zeta_c(sz, a as f64 / q as f64).map_err(|_| LfunError::PoleAtOne)?;
        acc += v * h;
        err += e;
        mag += h.norm();
    }
    let qs = (-sz * (q as f64).ln()).exp();
    let val = qs * acc;
    let mut total = qs.norm() * (err + 2.0 * f64::EPSILON * mag);
    if s.err > 0.0 {
        // |dL/ds| by a one-sided difference
        let h = 1e-6;
        let up = eval_dirichlet_L(psi, ComplexValue::from_complex(sz + h, 0.0))?;
        total += ((up.z() - val) / h).norm() * s.err;
    }
    Ok(ComplexValue::from_complex(val, total))
}

/// Π_i Γ_R(s + μ_i).
pub fn gamma_factor(shifts: &[i64], s: ComplexValue) -> Result<ComplexValue, LfunError> {
    let mut acc = ComplexValue::ONE;
    for &mu in shifts {
        let g = gamma_r(s + ComplexValue::real(mu as f64)).map_err(|_| LfunError::GammaPole(s))?;
        acc = acc * g;
    }
    Ok(acc)
}

/// Gamma shifts after a twist of parity r: each μ becomes [μ + r].
pub fn twisted_shifts(shifts: &[i64], r: u8) -> Vec<i64> {
    let mut out: Vec<i64> = shifts.iter().map(|&m| parity_bracket(m + r as i64) as i64).collect();
    out.sort_unstable();
    out
}

fn eisenstein_l(st: &EisensteinStructure, s: ComplexValue) -> Result<ComplexValue, LfunError> {
    let l1 = eval_dirichlet_L(&st.chi1, s)?;
    let l2 = eval_dirichlet_L(&st.chi2, s)?;
    Ok(st.scale * l1 * l2)
}

/// Σ a_n n^{−s} with the tail bounded by C Σ_{n>M} n^{σ−Re s}.
fn direct_l(series: &CoefficientSeries, s: ComplexValue) -> Result<ComplexValue, LfunError> {
    let sigma = series.growth_sigma;
    let excess = s.re - 1.0 - sigma;
    if excess <= 0.0 {
        return Err(LfunError::UnsupportedLane(format!(
            "Re s = {} is not in the half-plane of absolute convergence",
            s.re
        )));
    }
    let sz = s.z();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    let mut coeff_err = 0.0;
    for (i, a) in series.coeffs.iter().enumerate() {
        let n = (i + 1) as f64;
        let t = a.z() * (-sz * n.ln()).exp();
        acc += t;
        mag += t.norm();
        coeff_err += a.err * n.powf(-s.re);
    }
    let m = series.len().max(1) as f64;
    let tail = series.growth_constant().max(1.0) * m.powf(-excess) / excess;
    Ok(ComplexValue::from_complex(acc, tail + coeff_err + 2.0 * f64::EPSILON * mag))
}

/// Λ of a twisted or untwisted series, choosing the exact Eisenstein lane
/// when the factorization is known.
fn completed_plain(series: &CoefficientSeries, shifts: &[i64], s: ComplexValue) -> Result<ComplexValue, LfunError> {
    let gam = gamma_factor(shifts, s)?;
    if let Some(st) = &series.structure {
        return Ok(gam * eisenstein_l(st, s)?);
    }
    if s.re > 1.0 + series.growth_sigma {
        return Ok(gam * direct_l(series, s)?);
    }
    Err(LfunError::UnsupportedLane(format!("no exact lane at s = {s}")))
}

fn character_twist(series: &CoefficientSeries, psi: &DirichletCharacter) -> Result<CoefficientSeries, LfunError> {
    Ok(super::twist_coefficients(series, &TwistSpec::character(psi.clone())))
}

/// Λ_f(s), Λ_f(s, ψ), or the completed additive twist Λ_f(s, a/q, cos^{(r)}).
///
/// Additive twists by a/q with q prime are assembled from character twists:
/// (i^r/(q−1)) Σ_{ψ≠ψ₀, ψ(−1)=(−1)^r} ψ(a)τ(ψ̄)Λ_f(s,ψ), plus for even r the
/// correction Λ_f(s) − (q/(q−1))Λ_f(s,ψ₀).
pub fn eval_completed(
    series: &CoefficientSeries,
    fe: &FunctionalEquationData,
    twist: Option<&TwistSpec>,
    s: ComplexValue,
) -> Result<ComplexValue, LfunError> {
    let Some(t) = twist else {
        if s.re < -series.growth_sigma && series.structure.is_none() {
            return reflected(fe, s);
        }
        return completed_plain(series, &fe.gamma_shifts, s);
    };
    t.validate()?;
    match t.kind {
        TwistKind::Character => {
            let psi = t.character.as_ref().expect("validated");
            let tw = character_twist(series, psi)?;
            completed_plain(&tw, &twisted_shifts(&fe.gamma_shifts, psi.parity), s)
        }
        TwistKind::Sin => {
            let cos1 = TwistSpec { kind: TwistKind::Cos(1), ..t.clone() };
            Ok(-eval_completed(series, fe, Some(&cos1), s)?)
        }
        TwistKind::Cos(r) => {
            let shifts = twisted_shifts(&fe.gamma_shifts, (r % 2) as u8);
            let q = t.denominator;
            if q == 1 {
                // cos^{(r)}(2πn·a) = cos^{(r)}(0)
                let w = crate::dirichlet::cos_deriv(r, 0.0);
                if w == 0.0 {
                    return Ok(ComplexValue::ZERO);
                }
                return Ok(completed_plain(series, &shifts, s)?.scale(w));
            }
            if series.structure.is_none() || !is_prime(q) {
                let tw = super::twist_coefficients(series, t);
                return completed_plain(&tw, &shifts, s);
            }
            let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
            let mut acc = ComplexValue::ZERO;
            for psi in enumerate_characters(q)?.into_iter().skip(1) {
                if psi.sign() != sign {
                    continue;
                }
                let coef = psi.value(t.numerator) * gauss_sum(&psi.conj());
                let tw = character_twist(series, &psi)?;
                acc = acc + coef * completed_plain(&tw, &shifts, s)?;
            }
            let ir = ComplexValue::I.z().powu(r % 4);
            let mut total = ComplexValue::from_complex(acc.z() * ir / (q - 1) as f64, acc.err / (q - 1) as f64);
            if r % 2 == 0 {
                let base = completed_plain(series, &shifts, s)?;
                let psi0 = DirichletCharacter::principal(q);
                let p0 = completed_plain(&character_twist(series, &psi0)?, &shifts, s)?;
                let corr = base - p0.scale(q as f64 / (q - 1) as f64);
                total = total + if r % 4 == 2 { -corr } else { corr };
            }
            Ok(total)
        }
    }
}

/// Λ_f(s) = (−1)^ε · root · N^{1/2−s} · Λ_c(1−s) with Λ_c summed directly.
fn reflected(fe: &FunctionalEquationData, s: ComplexValue) -> Result<ComplexValue, LfunError> {
    let u = ComplexValue::ONE - s;
    if u.re <= 1.0 + fe.dual.growth_sigma {
        return Err(LfunError::UnsupportedLane(format!("no lane at s = {s}")));
    }
    let lc = gamma_factor(&fe.gamma_shifts, u)? * direct_l(&fe.dual, u)?;
    let npow = (Complex64::new(0.5, 0.0) - s.z()) * (fe.level as f64).ln();
    let factor = fe.root_constant.z() * fe.sign() * npow.exp();
    Ok(ComplexValue::from_complex(lc.z() * factor, lc.err * factor.norm()))
}
