//! Gauss hypergeometric ₂F₁: the defining series, the two-series continuation
//! to |w| > 1, and the logarithmic series for the degenerate case b = a.

use crate::specfun::{digamma_c, gamma_c, near_nonpositive_integer, rgamma_c, EULER_GAMMA};
use crate::value::ComplexValue;
use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HypError {
    #[error("argument outside the domain of this evaluation path: {0}")]
    DomainError(String),
    #[error("series did not converge within {0} terms")]
    NoConvergence(usize),
    #[error("a − b = {0} is (nearly) an integer; use the degenerate formula")]
    DegenerateParameters(i64),
    #[error("parameter pole: {0}")]
    ParameterPole(String),
    #[error("invalid series budget: {0}")]
    InvalidBudget(String),
}

/// Parameters of ₂F₁(a, b; c; w).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypArgs {
    pub a: ComplexValue,
    pub b: ComplexValue,
    pub c: ComplexValue,
    pub w: ComplexValue,
}

impl HypArgs {
    pub fn new(
        a: impl Into<ComplexValue>,
        b: impl Into<ComplexValue>,
        c: impl Into<ComplexValue>,
        w: impl Into<ComplexValue>,
    ) -> Self {
        HypArgs { a: a.into(), b: b.into(), c: c.into(), w: w.into() }
    }

    pub fn swapped(&self) -> Self {
        HypArgs { a: self.b, b: self.a, ..*self }
    }
}

/// Truncation policy shared by every series in this module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesBudget {
    pub tol: f64,
    pub k_min: usize,
    pub k_max: usize,
}

impl Default for SeriesBudget {
    fn default() -> Self {
        SeriesBudget { tol: 1e-17, k_min: 16, k_max: 100_000 }
    }
}

impl SeriesBudget {
    fn validate(&self) -> Result<(), HypError> {
        if !(self.tol > 0.0) || self.k_min < 8 || self.k_max < self.k_min {
            return Err(HypError::InvalidBudget(format!("{self:?}")));
        }
        Ok(())
    }
}

/// Running sum with the module's stopping rule: stop once k ≥ k_min and the
/// last k_min/2 terms were each below tol·|partial sum|.
struct Accumulator {
    sum: Complex64,
    abs_sum: f64,
    quiet: usize,
    window: usize,
    last: f64,
    prev: f64,
}

impl Accumulator {
    fn new(budget: &SeriesBudget) -> Self {
        Accumulator {
            sum: Complex64::new(0.0, 0.0),
            abs_sum: 0.0,
            quiet: 0,
            window: budget.k_min / 2,
            last: 0.0,
            prev: 0.0,
        }
    }

    /// Adds one term (index k); returns true when the series may stop.
    fn push(&mut self, k: usize, term: Complex64, budget: &SeriesBudget) -> bool {
        self.sum += term;
        let t = term.norm();
        self.abs_sum += t;
        self.prev = self.last;
        self.last = t;
        if t < budget.tol * self.sum.norm() || t == 0.0 {
            self.quiet += 1;
        } else {
            self.quiet = 0;
        }
        k + 1 >= budget.k_min && self.quiet >= self.window
    }

    /// Geometric tail estimate with ratio `r` plus accumulated rounding.
    fn err(&self, r: f64) -> f64 {
        let r = r.min(0.999);
        self.last * r / (1.0 - r) + 2.0 * f64::EPSILON * self.abs_sum
    }
}

/// Σ_k w^k (a)_k(b)_k/(k!(c)_k) for |w| < 1, returned with its error estimate.
pub(crate) fn gauss_series(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    w: Complex64,
    budget: &SeriesBudget,
) -> Result<(Complex64, f64), HypError> {
    let mut acc = Accumulator::new(budget);
    let mut term = Complex64::new(1.0, 0.0);
    for k in 0..budget.k_max {
        if acc.push(k, term, budget) {
            return Ok((acc.sum, acc.err(w.norm())));
        }
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * w;
    }
    Err(HypError::NoConvergence(budget.k_max))
}

fn check_c(c: Complex64) -> Result<(), HypError> {
    if let Some(n) = near_nonpositive_integer(c) {
        return Err(HypError::ParameterPole(format!("c = {n}")));
    }
    Ok(())
}

fn input_err(args: &HypArgs) -> f64 {
    args.a.err + args.b.err + args.c.err + args.w.err
}

/// ₂F₁ by its defining series, |w| < 1.
pub fn hyp_series(args: HypArgs, budget: SeriesBudget) -> Result<ComplexValue, HypError> {
    budget.validate()?;
    let w = args.w.z();
    if w.norm() >= 1.0 {
        return Err(HypError::DomainError(format!("|w| = {} ≥ 1", w.norm())));
    }
    check_c(args.c.z())?;
    let (v, err) = gauss_series(args.a.z(), args.b.z(), args.c.z(), w, &budget)?;
    Ok(ComplexValue::from_complex(v, err + input_err(&args) * v.norm()))
}

/// (−w)^{−p} with the principal logarithm of −w.
fn neg_pow(w: Complex64, p: Complex64) -> Complex64 {
    (-p * (-w).ln()).exp()
}

/// Distance of z to the nearest integer, and that integer.
fn nearest_integer(z: Complex64) -> (f64, i64) {
    let n = z.re.round();
    ((z - n).norm(), n as i64)
}

/// ₂F₁ for |w| > 1 by the two-series connection formula (a − b ∉ Z).
pub fn hyp_continuation(args: HypArgs, budget: SeriesBudget) -> Result<ComplexValue, HypError> {
    budget.validate()?;
    let (a, b, c, w) = (args.a.z(), args.b.z(), args.c.z(), args.w.z());
    if w.norm() <= 1.0 {
        return Err(HypError::DomainError(format!("|w| = {} ≤ 1", w.norm())));
    }
    if w.im == 0.0 && w.re > 1.0 {
        return Err(HypError::DomainError("w on the branch cut (1, ∞)".into()));
    }
    check_c(c)?;
    let (dist, n) = nearest_integer(a - b);
    if dist < 1e-8 {
        return Err(HypError::DegenerateParameters(n));
    }
    let winv = 1.0 / w;
    let gc = gamma_c(c).map_err(|e| HypError::ParameterPole(e.to_string()))?;
    let g_ba = gamma_c(b - a).map_err(|e| HypError::ParameterPole(e.to_string()))?;
    let g_ab = gamma_c(a - b).map_err(|e| HypError::ParameterPole(e.to_string()))?;
    let pre1 = neg_pow(w, a) * g_ba * gc * rgamma_c(b) * rgamma_c(c - a);
    let pre2 = neg_pow(w, b) * g_ab * gc * rgamma_c(a) * rgamma_c(c - b);
    let (s1, e1) = if pre1.norm() == 0.0 {
        (Complex64::new(0.0, 0.0), 0.0)
    } else {
        gauss_series(a, a - c + 1.0, a - b + 1.0, winv, &budget)?
    };
    let (s2, e2) = if pre2.norm() == 0.0 {
        (Complex64::new(0.0, 0.0), 0.0)
    } else {
        gauss_series(b, b - c + 1.0, b - a + 1.0, winv, &budget)?
    };
    let t1 = pre1 * s1;
    let t2 = pre2 * s2;
    let v = t1 + t2;
    // rounding in each branch is relative to its own size, not to the sum
    let err = pre1.norm() * e1 + pre2.norm() * e2 + 1e-15 * (t1.norm() + t2.norm());
    Ok(ComplexValue::from_complex(v, err + input_err(&args) * (t1.norm() + t2.norm())))
}

/// Ψ(x)/Γ(x), entire; at x = −n it equals (−1)^{n+1} n!.
pub(crate) fn psi_over_gamma(x: Complex64) -> Complex64 {
    if let Some(n) = near_nonpositive_integer(x) {
        let n = (-n) as u32;
        let fact: f64 = (1..=n).map(|k| k as f64).product();
        let sign = if n.is_multiple_of(2) { -1.0 } else { 1.0 };
        return Complex64::new(sign * fact, 0.0);
    }
    digamma_c(x).expect("checked above") * rgamma_c(x)
}

/// ₂F₁(a, a; c; w) for real w < −1 by the logarithmic series
///
/// (−w)^{−a} Γ(c)/(Γ(a)Γ(c−a)) Σ_k w^{−k} (a)_k(a−c+1)_k/(k!)²
///   · [2Ψ(k+1) − Ψ(a+k) − Ψ(a−c+1+k) + Ψ(a−c+1) − Ψ(c−a) + log(−w)].
///
/// When c − a is a non-positive integer the factor Ψ(c−a)/Γ(c−a) is taken at
/// its finite limit; likewise when a − c + 1 is, the series terminates in its
/// polynomial part and the Ψ difference is read as a derivative.
pub fn hyp_degenerate(
    a: impl Into<ComplexValue>,
    c: impl Into<ComplexValue>,
    w: f64,
    budget: SeriesBudget,
) -> Result<ComplexValue, HypError> {
    budget.validate()?;
    let (av, cv) = (a.into(), c.into());
    let (a, c) = (av.z(), cv.z());
    if !(w < -1.0) {
        return Err(HypError::DomainError(format!("degenerate series needs w < −1, got {w}")));
    }
    check_c(c)?;
    let a1 = a - c + 1.0;
    if let Some(n) = near_nonpositive_integer(a) {
        return Err(HypError::ParameterPole(format!("a = {n}")));
    }
    let lw = (-w).ln();
    let winv = 1.0 / w;
    let mut psi_ak = digamma_c(a).expect("checked");
    let mut psi_k1 = -EULER_GAMMA; // Ψ(k+1)

    // (a−c+1)_k [Ψ(a−c+1) − Ψ(a−c+1+k)] = −∂/∂x (x)_k at x = a−c+1, which
    // stays finite when a−c+1 is a non-positive integer.
    let mut p = Complex64::new(1.0, 0.0); // (a−c+1)_k
    let mut dp = Complex64::new(0.0, 0.0); // ∂(a−c+1)_k
    let mut t = Complex64::new(1.0, 0.0); // w^{−k}(a)_k/(k!)²

    let mut main = Accumulator::new(&budget);
    let mut plain = Accumulator::new(&budget);
    let mut done = false;
    for k in 0..budget.k_max {
        let bracket = p * (2.0 * psi_k1 - psi_ak + lw) - dp;
        let stop_main = main.push(k, t * bracket, &budget);
        let stop_plain = plain.push(k, t * p, &budget);
        if stop_main && stop_plain {
            done = true;
            break;
        }
        let kf = k as f64;
        t *= (a + kf) / ((kf + 1.0) * (kf + 1.0)) * winv;
        dp = dp * (a1 + kf) + p;
        p *= a1 + kf;
        psi_ak += 1.0 / (a + kf);
        psi_k1 += 1.0 / (kf + 1.0);
    }
    if !done {
        return Err(HypError::NoConvergence(budget.k_max));
    }
    let gc = gamma_c(c).map_err(|e| HypError::ParameterPole(e.to_string()))?;
    let pre = neg_pow(Complex64::new(w, 0.0), a) * gc * rgamma_c(a);
    let r_ca = rgamma_c(c - a);
    let pg_ca = psi_over_gamma(c - a);
    let v = pre * (r_ca * main.sum - pg_ca * plain.sum);
    let ratio = winv.abs();
    let err = pre.norm() * (r_ca.norm() * main.err(ratio) + pg_ca.norm() * plain.err(ratio));
    let scale = pre.norm() * (r_ca.norm() * main.abs_sum + pg_ca.norm() * plain.abs_sum);
    Ok(ComplexValue::from_complex(v, err + 4.0 * f64::EPSILON * scale + (av.err + cv.err) * v.norm()))
}

/// ₂F₁ via the Pfaff transformation (1−w)^{−a} ₂F₁(a, c−b; c; w/(w−1)),
/// for real w ≤ 0. Independent of both continuation paths.
pub fn hyp_oracle(args: HypArgs, budget: SeriesBudget) -> Result<ComplexValue, HypError> {
    budget.validate()?;
    let w = args.w.z();
    if w.im != 0.0 || w.re > 0.0 {
        return Err(HypError::DomainError(format!("oracle needs real w ≤ 0, got {w}")));
    }
    let (a, b, c) = (args.a.z(), args.b.z(), args.c.z());
    check_c(c)?;
    let x = w / (w - 1.0);
    let (s, e) = gauss_series(a, c - b, c, x, &budget)?;
    let pre = (-a * (1.0 - w).ln()).exp();
    let v = pre * s;
    Ok(ComplexValue::from_complex(v, pre.norm() * e + input_err(&args) * v.norm()))
}

/// The pair (A_k(δ), B_k(δ)) whose sums give ₂F₁(a, a+δ; c; w) through
/// Σ_k [Γ(δ)A_k(δ) + Γ(−δ)B_k(δ)], for real w < −1.
pub fn ab_terms(
    a: impl Into<ComplexValue>,
    c: impl Into<ComplexValue>,
    w: f64,
    delta: impl Into<ComplexValue>,
    k: usize,
) -> Result<(ComplexValue, ComplexValue), HypError> {
    let (a, c, d) = (a.into().z(), c.into().z(), delta.into().z());
    if !(w < -1.0) {
        return Err(HypError::DomainError(format!("w = {w} must be < −1")));
    }
    if d.norm() >= 0.5 {
        return Err(HypError::DomainError(format!("|δ| = {} must be < 1/2", d.norm())));
    }
    check_c(c)?;
    let gc = gamma_c(c).map_err(|e| HypError::ParameterPole(e.to_string()))?;
    let wc = Complex64::new(w, 0.0);
    let a1 = a - c + 1.0;
    let mut pa = Complex64::new(1.0, 0.0);
    let mut pb = Complex64::new(1.0, 0.0);
    for n in 0..k {
        let nf = n as f64;
        // A: (a)_k (a−c+1)_k / (k! (1−δ)_k) · w^{−1} per step
        pa *= (a + nf) * (a1 + nf) / ((nf + 1.0) * (1.0 - d + nf) * w);
        pb *= (a + d + nf) * (a1 + d + nf) / ((nf + 1.0) * (1.0 + d + nf) * w);
    }
    let ak = pa * neg_pow(wc, a) * gc * rgamma_c(a + d) * rgamma_c(c - a);
    let bk = pb * neg_pow(wc, d + a) * gc * rgamma_c(a) * rgamma_c(c - a - d);
    let e = 1e-15 * (1.0 + k as f64);
    Ok((ComplexValue::from_complex(ak, e * ak.norm()), ComplexValue::from_complex(bk, e * bk.norm())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn b() -> SeriesBudget {
        SeriesBudget::default()
    }

    #[test]
    fn series_closed_forms() {
        assert_eq!(hyp_series(HypArgs::new(0.3, 0.4, 1.5, 0.0), b()).unwrap().re, 1.0);
        let v = hyp_series(HypArgs::new(1.0, 1.0, 2.0, 0.5), b()).unwrap();
        assert!((v.re - 2.0 * LN_2).abs() < 1e-15, "{v}");
        assert!(v.err < 1e-14);
        assert!(matches!(hyp_series(HypArgs::new(1.0, 1.0, 2.0, 1.0), b()), Err(HypError::DomainError(_))));
    }

    #[test]
    fn degenerate_log_case() {
        let v = hyp_degenerate(1.0, 2.0, -3.0, b()).unwrap();
        assert!((v.re - 4f64.ln() / 3.0).abs() < 1e-14, "{v}");
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn continuation_rejects_degenerate() {
        let r = hyp_continuation(HypArgs::new(0.5, 1.5 + 1e-9, 2.0, -3.0), b());
        assert_eq!(r, Err(HypError::DegenerateParameters(-1)));
    }

    #[test]
    fn c_minus_a_at_a_pole() {
        // c − a = 0: only the Ψ/Γ limit survives
        let v = hyp_degenerate(1.5, 1.5, -4.0, b()).unwrap();
        let o = hyp_oracle(HypArgs::new(1.5, 1.5, 1.5, -4.0), b()).unwrap();
        assert!((v.z() - o.z()).norm() < 1e-13, "{v} {o}");
        // ₂F₁(a,a;a;w) = (1−w)^{−a}
        assert!((v.re - 5f64.powf(-1.5)).abs() < 1e-13);
    }

    #[test]
    fn budget_validation() {
        let bad = SeriesBudget { tol: 1e-10, k_min: 4, k_max: 100 };
        assert!(matches!(hyp_series(HypArgs::new(1.0, 1.0, 2.0, 0.5), bad), Err(HypError::InvalidBudget(_))));
        let tiny = SeriesBudget { tol: 1e-16, k_min: 8, k_max: 10 };
        assert_eq!(hyp_series(HypArgs::new(1.0, 1.0, 2.0, 0.9), tiny), Err(HypError::NoConvergence(10)));
    }

    #[test]
    fn psi_over_gamma_limits() {
        for n in 0..5 {
            let x = Complex64::new(-(n as f64), 0.0);
            let h = 1e-7;
            let num = digamma_c(x + h).unwrap() * rgamma_c(x + h);
            assert!((psi_over_gamma(x) - num).norm() < 1e-5 * (1.0 + num.norm()), "n={n}");
        }
    }
}
