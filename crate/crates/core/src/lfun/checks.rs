use super::eval::{eval_completed, eval_dirichlet_L, gamma_factor};
use super::fe::FunctionalEquationData;
use super::series::{CoefficientSeries, TwistKind, TwistSpec};
use super::LfunError;
use crate::dirichlet::{enumerate_characters, gauss_sum, is_prime, DirichletCharacter};
use crate::value::ComplexValue;
use num_complex::Complex64;
use num_integer::Integer;

fn cpow_real(base: f64, e: Complex64) -> Complex64 {
    (e * base.ln()).exp()
}

/// Residual of Λ(s,ψ) = τ(ψ)/(i^ε √q) · q^{1/2−s} · Λ(1−s,ψ̄), Λ(s,ψ) = Γ_R(s+ε)L(s,ψ),
/// maximized over `samples`.
pub fn check_fed_residual(psi: &DirichletCharacter, samples: &[ComplexValue]) -> Result<f64, LfunError> {
    if !psi.primitive {
        return Err(LfunError::Character(crate::dirichlet::DirichletError::NotPrimitive(psi.modulus)));
    }
    let q = psi.modulus as f64;
    let eps = psi.parity as i64;
    let tau = gauss_sum(psi).z();
    let root = tau / (Complex64::i().powi(eps as i32) * q.sqrt());
    let bar = psi.conj();
    let mut worst: f64 = 0.0;
    for &s in samples {
        let lhs = gamma_factor(&[eps], s)? * eval_dirichlet_L(psi, s)?;
        let u = ComplexValue::ONE - s;
        let rhs = gamma_factor(&[eps], u)? * eval_dirichlet_L(&bar, u)?;
        let rhs = rhs.z() * root * cpow_real(q, Complex64::new(0.5, 0.0) - s.z());
        worst = worst.max((lhs.z() - rhs).norm());
    }
    Ok(worst)
}

/// The two sides of the twisted functional equation at s.
fn fe_sides(
    series: &CoefficientSeries,
    fe: &FunctionalEquationData,
    dual_fe: &FunctionalEquationData,
    psi: &DirichletCharacter,
    s: ComplexValue,
) -> Result<(Complex64, Complex64), LfunError> {
    let q = psi.modulus;
    let n = fe.level;
    let lhs = eval_completed(series, fe, Some(&TwistSpec::character(psi.clone())), s)?;
    let dual_val = eval_completed(&fe.dual, dual_fe, Some(&TwistSpec::character(psi.conj())), ComplexValue::ONE - s)?;
    let sign = if (fe.parity + psi.parity).is_multiple_of(2) { 1.0 } else { -1.0 };
    let tau = gauss_sum(psi).z();
    let pre = sign * fe.nebentypus.at(q as i64) * psi.at(n as i64) * tau * tau / q as f64
        * cpow_real((q * q * n) as f64, Complex64::new(0.5, 0.0) - s.z());
    // Λ_g = root · Λ_c
    Ok((lhs.z(), pre * fe.root_constant.z() * dual_val.z()))
}

/// max over samples of |Λ_f(s,ψ) − (−1)^{ε−ε_ψ}χ(q)ψ(N)(τ(ψ)²/q)(q²N)^{1/2−s}Λ_g(1−s,ψ̄)|.
pub fn check_fe_residual(
    series: &CoefficientSeries,
    fe: &FunctionalEquationData,
    psi: &DirichletCharacter,
    samples: &[ComplexValue],
) -> Result<f64, LfunError> {
    if !psi.primitive {
        return Err(LfunError::Character(crate::dirichlet::DirichletError::NotPrimitive(psi.modulus)));
    }
    if psi.modulus.gcd(&fe.level) != 1 {
        return Err(LfunError::Invalid(format!("twist modulus {} not coprime to level {}", psi.modulus, fe.level)));
    }
    let dual_fe = fe.dual_data(series)?;
    let mut worst: f64 = 0.0;
    for &s in samples {
        let (l, r) = fe_sides(series, fe, &dual_fe, psi, s)?;
        worst = worst.max((l - r).norm());
    }
    Ok(worst)
}

/// Both sides of the additive-twist functional equation at s, for α = a/q.
///
/// Left: Λ_f(s, a/q, cos^{(r)}) as assembled from character twists.
/// Right: (−1)^ε i^r (q²N)^{1/2−s} χ(q)/(q−1) Σ_{ψ≠ψ₀, ψ(−1)=(−1)^r} ψ(Na)τ(ψ)Λ_g(1−s,ψ̄)
/// plus, for even r, Λ_f(s) − (q/(q−1))Λ_f(s,ψ₀).
pub fn prop34_sides(
    series: &CoefficientSeries,
    fe: &FunctionalEquationData,
    a: i64,
    q: u64,
    r: u32,
    s: ComplexValue,
) -> Result<(Complex64, Complex64), LfunError> {
    let n = fe.level;
    let twist = TwistSpec::additive(a, q, TwistKind::Cos(r))?;
    let lhs = eval_completed(series, fe, Some(&twist), s)?.z();
    let dual_fe = fe.dual_data(series)?;
    if q == 1 {
        if r % 2 == 1 {
            return Ok((lhs, Complex64::new(0.0, 0.0)));
        }
        let (_, rhs) = fe_sides(series, fe, &dual_fe, &DirichletCharacter::trivial(), s)?;
        return Ok((lhs, rhs));
    }
    if !is_prime(q) {
        return Err(LfunError::Invalid(format!("additive twists need a prime denominator, got {q}")));
    }
    if q.gcd(&n) != 1 {
        return Err(LfunError::Invalid(format!("q = {q} not coprime to level {n}")));
    }
    let sign = if r.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut sum = Complex64::new(0.0, 0.0);
    for psi in enumerate_characters(q)?.into_iter().skip(1) {
        if psi.sign() != sign {
            continue;
        }
        let dual_val =
            eval_completed(&fe.dual, &dual_fe, Some(&TwistSpec::character(psi.conj())), ComplexValue::ONE - s)?;
        sum += psi.at(n as i64 * a) * gauss_sum(&psi).z() * dual_val.z();
    }
    let pre = fe.sign()
        * Complex64::i().powu(r % 4)
        * cpow_real((q * q * n) as f64, Complex64::new(0.5, 0.0) - s.z())
        * fe.nebentypus.at(q as i64)
        / (q - 1) as f64;
    let mut rhs = pre * fe.root_constant.z() * sum;
    if r.is_multiple_of(2) {
        let base = eval_completed(series, fe, None, s)?;
        let p0 = eval_completed(series, fe, Some(&TwistSpec::character(DirichletCharacter::principal(q))), s)?;
        let corr = base.z() - p0.z() * (q as f64 / (q - 1) as f64);
        rhs += if r % 4 == 2 { -corr } else { corr };
    }
    Ok((lhs, rhs))
}

/// max over samples of the additive-twist functional-equation residual.
pub fn check_prop34_residual(
    series: &CoefficientSeries,
    fe: &FunctionalEquationData,
    a: i64,
    q: u64,
    r: u32,
    samples: &[ComplexValue],
) -> Result<f64, LfunError> {
    let mut worst: f64 = 0.0;
    for &s in samples {
        let (l, r) = prop34_sides(series, fe, a, q, r, s)?;
        worst = worst.max((l - r).norm());
    }
    Ok(worst)
}
