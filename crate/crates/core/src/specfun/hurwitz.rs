use super::{bernoulli_even, factorial, SpecFunError, POLE_TOL};
use crate::value::ComplexValue;
use num_complex::Complex64;

const EM_ORDER: usize = 10; // Bernoulli numbers up to B_20

/// ζ(s, x) by Euler–Maclaurin summation, returning (value, error estimate).
pub fn hurwitz_zeta_c(s: Complex64, x: f64) -> Result<(Complex64, f64), SpecFunError> {
    if (s - 1.0).norm() < POLE_TOL {
        return Err(SpecFunError::PoleAtOne);
    }
    assert!(x > 0.0 && x <= 1.0, "hurwitz_zeta: x must lie in (0, 1], got {x}");
    let n_shift = (s.norm().ceil() as usize) + 20;

    let mut head = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    for n in 0..n_shift {
        let t = (-s * (n as f64 + x).ln()).exp();
        mag += t.norm();
        head += t;
    }
    let big = n_shift as f64 + x;
    let lnb = big.ln();
    let pw = (-s * lnb).exp(); // big^{-s}
    let mut tail = pw * big / (s - 1.0) + 0.5 * pw;

    let b = bernoulli_even();
    // term_k = B_{2k}/(2k)! · (s)_{2k−1} · big^{−s−2k+1}
    let mut poch = s; // (s)_{2k−1}
    let mut powk = pw / big; // big^{−s−1}
    let mut last = 0.0;
    for k in 1..=EM_ORDER {
        let term = b[k] / factorial(2 * k) * poch * powk;
        tail += term;
        last = term.norm();
        poch *= (s + (2 * k - 1) as f64) * (s + (2 * k) as f64);
        powk /= big * big;
    }
    let value = head + tail;
    let err = last + 4.0 * f64::EPSILON * (mag + tail.norm());
    Ok((value, err))
}

/// ζ(s, x) for x ∈ (0, 1].
pub fn hurwitz_zeta(s: impl Into<ComplexValue>, x: f64) -> Result<ComplexValue, SpecFunError> {
    let s = s.into();
    let (v, err) = hurwitz_zeta_c(s.z(), x)?;
    let mut total = err;
    if s.err > 0.0 {
        // |∂_s ζ(s,x)| is bounded crudely by a finite difference
        let h = 1e-6;
        let (v2, _) = hurwitz_zeta_c(s.z() + h, x)?;
        total += ((v2 - v) / h).norm() * s.err;
    }
    Ok(ComplexValue::from_complex(v, total))
}
