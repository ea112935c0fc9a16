//! Scalar special functions: gamma, digamma and polygamma, Pochhammer symbols,
//! Γ_R, the Hurwitz zeta function and the K-Bessel function K₀.

mod bessel;
mod gamma;
mod hurwitz;
mod pochhammer;
mod polygamma;

pub use bessel::{bessel_k0, bessel_k0_scaled};
pub use gamma::{gamma, gamma_c, gamma_r, gamma_r_c, ln_gamma_c, rgamma_c};
pub use hurwitz::{hurwitz_zeta, hurwitz_zeta_c};
pub use pochhammer::{harmonic, pochhammer, pochhammer_c, pochhammer_expansion, PochhammerExpansion};
pub use polygamma::{digamma, digamma_c, polygamma_c};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Absolute distance below which an argument is treated as sitting on a pole.
pub const POLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecFunError {
    #[error("pole of the gamma function at non-positive integer {0}")]
    PoleAtNonPositiveInteger(i64),
    #[error("Pochhammer factor a+{0} vanishes")]
    ZeroFactor(usize),
    #[error("pole of the Hurwitz zeta function at s = 1")]
    PoleAtOne,
    #[error("K-Bessel function evaluated at zero")]
    ZeroArgument,
}

/// Returns `Some(n)` when `z` lies within [`POLE_TOL`] of the non-positive integer `n`.
pub fn near_nonpositive_integer(z: Complex64) -> Option<i64> {
    let n = z.re.round();
    if n <= 0.0 && (z - Complex64::new(n, 0.0)).norm() < POLE_TOL {
        Some(n as i64)
    } else {
        None
    }
}

/// sin(πx) for real x with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round(); // r in [-1, 1]
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        -(PI * (1.0 + r)).sin()
    } else {
        (PI * r).sin()
    }
}

/// cos(πx) for real x with exact zeros at the half-integers.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

/// sin(πz) for complex z.
pub fn sin_pi_c(z: Complex64) -> Complex64 {
    let (sh, ch) = ((PI * z.im).sinh(), (PI * z.im).cosh());
    Complex64::new(sin_pi(z.re) * ch, cos_pi(z.re) * sh)
}

/// cos(πz) for complex z.
pub fn cos_pi_c(z: Complex64) -> Complex64 {
    let (sh, ch) = ((PI * z.im).sinh(), (PI * z.im).cosh());
    Complex64::new(cos_pi(z.re) * ch, -sin_pi(z.re) * sh)
}

/// Exact Bernoulli numbers B_0 … B_n with B_1 = −1/2.
pub fn bernoulli_exact(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        // Σ_{k=0}^{m} C(m+1,k) B_k = 0
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bk;
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// B_{2k} for k = 0..=25 as doubles, built once.
pub(crate) fn bernoulli_even() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let b = bernoulli_exact(50);
        (0..=25).map(|k| b[2 * k].to_f64().unwrap()).collect()
    })
}

/// n! for n = 0..=170 as doubles, built once.
pub(crate) fn factorial(n: usize) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let t = TABLE.get_or_init(|| {
        let mut v = vec![1.0f64; 171];
        for i in 1..171 {
            v[i] = v[i - 1] * i as f64;
        }
        v
    });
    t[n]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_small() {
        let b = bernoulli_exact(12);
        let r = |p: i64, q: i64| BigRational::new(BigInt::from(p), BigInt::from(q));
        assert_eq!(b[1], r(-1, 2));
        assert_eq!(b[2], r(1, 6));
        assert_eq!(b[4], r(-1, 30));
        assert_eq!(b[12], r(-691, 2730));
        assert!(b[11].is_zero());
    }

    #[test]
    fn sin_pi_exact_zeros() {
        for n in -6..=6 {
            assert_eq!(sin_pi(n as f64), 0.0);
            assert_eq!(cos_pi(n as f64 + 0.5), 0.0);
        }
        assert!((sin_pi(0.25) - (PI / 4.0).sin()).abs() < 1e-16);
        assert!((sin_pi(-2.75) - (-2.75 * PI).sin()).abs() < 1e-15);
    }
}
