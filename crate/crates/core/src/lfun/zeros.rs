use super::LfunError;
use crate::specfun::{hurwitz_zeta_c, ln_gamma_c};
use num_complex::Complex64;
use std::f64::consts::PI;

/// θ(t) = Im log Γ(1/4 + it/2) − (t/2) log π.
pub fn riemann_siegel_theta(t: f64) -> f64 {
    let lg = ln_gamma_c(Complex64::new(0.25, 0.5 * t)).expect("no poles on Re = 1/4");
    lg.im - 0.5 * t * PI.ln()
}

/// Z(t) = e^{iθ(t)} ζ(1/2 + it), real for real t.
pub fn hardy_z(t: f64) -> f64 {
    let (z, _) = hurwitz_zeta_c(Complex64::new(0.5, t), 1.0).expect("off the pole");
    (Complex64::from_polar(1.0, riemann_siegel_theta(t)) * z).re
}

/// Ordinates in [t_min, t_max] where Z changes sign on a grid of the given
/// step, each refined by bisection to 1e-8.
pub fn zeta_zeros(t_min: f64, t_max: f64, step: f64) -> Result<Vec<f64>, LfunError> {
    if !(0.0..=100.0).contains(&t_min) || !(0.0..=100.0).contains(&t_max) || t_min > t_max {
        return Err(LfunError::Invalid(format!("range [{t_min}, {t_max}] must lie in [0, 100]")));
    }
    if !(step > 0.0) {
        return Err(LfunError::Invalid("step must be positive".into()));
    }
    let mut out = Vec::new();
    let n = ((t_max - t_min) / step).ceil() as usize;
    let mut a = t_min;
    let mut za = hardy_z(a);
    for i in 1..=n {
        let b = (t_min + i as f64 * step).min(t_max);
        let zb = hardy_z(b);
        if za == 0.0 {
            out.push(a);
        } else if za * zb < 0.0 {
            let (mut lo, mut hi, mut zlo) = (a, b, za);
            while hi - lo > 1e-9 {
                let mid = 0.5 * (lo + hi);
                let zm = hardy_z(mid);
                if zm * zlo <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    zlo = zm;
                }
            }
            out.push(0.5 * (lo + hi));
        }
        a = b;
        za = zb;
    }
    if za == 0.0 && out.last() != Some(&a) {
        out.push(a);
    }
    Ok(out)
}
