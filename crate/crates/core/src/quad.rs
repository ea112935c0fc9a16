//! Quadrature rules: Gauss–Legendre nodes and double-exponential rules for
//! finite intervals and half-lines, all for complex-valued integrands.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on [−1, 1], by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p0 = 1.0;
                p1 = z;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Integral of `f` along the straight segment from `a` to `b` in the complex plane.
pub fn segment_integral<F>(f: &F, a: Complex64, b: Complex64, nodes: &(Vec<f64>, Vec<f64>)) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
{
    let half = (b - a) * 0.5;
    let mid = (a + b) * 0.5;
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, w) in nodes.0.iter().zip(nodes.1.iter()) {
        acc += *w * f(mid + half * *x);
    }
    acc * half
}

/// (1/2πi)∮ f(s) ds counter-clockwise around the rectangle [x0,x1]×[y0,y1],
/// with an n-point Gauss–Legendre rule on each side.
pub fn rectangle_contour<F>(f: &F, x0: f64, x1: f64, y0: f64, y1: f64, n: usize) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
{
    let nodes = gauss_legendre(n);
    let c = [Complex64::new(x0, y0), Complex64::new(x1, y0), Complex64::new(x1, y1), Complex64::new(x0, y1)];
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..4 {
        total += segment_integral(f, c[i], c[(i + 1) % 4], &nodes);
    }
    total / Complex64::new(0.0, 2.0 * PI)
}

/// Result of an adaptive quadrature: value and the difference between the
/// last two refinement levels.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: Complex64,
    pub err: f64,
    pub converged: bool,
}

/// tanh-sinh rule on [a, b]; tolerant of integrable endpoint singularities.
pub fn tanh_sinh<F>(f: F, a: f64, b: f64, tol: f64) -> QuadResult
where
    F: Fn(f64) -> Complex64,
{
    let d = 0.5 * (b - a);
    let t_max = 6.0;
    // node at parameter t: x = c + d·tanh(π/2 sinh t), measured from the
    // nearer endpoint to avoid cancellation
    let eval = |t: f64| -> Complex64 {
        let u = 0.5 * PI * t.sinh();
        let ch = u.cosh();
        let w = 0.5 * PI * t.cosh() / (ch * ch);
        // distance of the node from the endpoint it approaches
        let gap = d / ((2.0 * u.abs()).exp() + 1.0) * 2.0;
        let x = if t >= 0.0 { b - gap } else { a + gap };
        if gap <= 0.0 || !(x > a && x < b) {
            return Complex64::new(0.0, 0.0);
        }
        f(x) * (w * d)
    };
    let mut h = 0.5;
    let mut sum = eval(0.0);
    let mut k = 1;
    while k as f64 * h <= t_max {
        let t = k as f64 * h;
        sum += eval(t) + eval(-t);
        k += 1;
    }
    let mut prev = sum * h;
    for _ in 0..8 {
        let mut k = 0;
        loop {
            let t = (k as f64 + 0.5) * h;
            if t > t_max {
                break;
            }
            sum += eval(t) + eval(-t);
            k += 1;
        }
        h *= 0.5;
        let cur = sum * h;
        let diff = (cur - prev).norm();
        if diff <= tol * cur.norm().max(1e-300) || diff < 1e-300 {
            return QuadResult { value: cur, err: diff, converged: true };
        }
        prev = cur;
    }
    QuadResult { value: prev, err: f64::INFINITY, converged: false }
}

/// exp-sinh rule on [a, ∞) for integrands decaying at infinity.
pub fn exp_sinh<F>(f: F, a: f64, tol: f64) -> QuadResult
where
    F: Fn(f64) -> Complex64,
{
    // x = a + exp(π/2 sinh t), dx = π/2 cosh t · exp(π/2 sinh t) dt
    let eval = |t: f64| -> Complex64 {
        let e = (0.5 * PI * t.sinh()).exp();
        if !e.is_finite() || e == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let v = f(a + e);
        if v.re == 0.0 && v.im == 0.0 {
            return v;
        }
        v * (0.5 * PI * t.cosh() * e)
    };
    let (t_lo, t_hi): (f64, f64) = (-4.5, 4.0);
    let mut h = 0.5;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut k = (t_lo / h).ceil() as i64;
    while k as f64 * h <= t_hi {
        sum += eval(k as f64 * h);
        k += 1;
    }
    let mut prev = sum * h;
    for _ in 0..8 {
        let mut k = ((t_lo / h) - 0.5).ceil() as i64;
        loop {
            let t = (k as f64 + 0.5) * h;
            if t > t_hi {
                break;
            }
            if t >= t_lo {
                sum += eval(t);
            }
            k += 1;
        }
        h *= 0.5;
        let cur = sum * h;
        let diff = (cur - prev).norm();
        if diff <= tol * cur.norm().max(1e-300) {
            return QuadResult { value: cur, err: diff, converged: true };
        }
        prev = cur;
    }
    QuadResult { value: prev, err: f64::INFINITY, converged: false }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(7);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(12)).sum();
        assert!((s - 2.0 / 13.0).abs() < 1e-15);
        let (x, w) = gauss_legendre(2000);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.cos()).sum();
        assert!((s - 2.0 * 1f64.sin()).abs() < 1e-13);
    }

    #[test]
    fn contour_picks_up_residue() {
        let f = |s: Complex64| 3.0 / (s - 0.5) + (s * s).exp();
        let v = rectangle_contour(&f, -0.5, 1.5, -2.0, 2.0, 200);
        assert!((v - Complex64::new(3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn tanh_sinh_endpoint_singularity() {
        let r = tanh_sinh(|x| Complex64::new(x.ln() / x.sqrt(), 0.0), 0.0, 1.0, 1e-12);
        assert!((r.value.re + 4.0).abs() < 1e-10, "{:?}", r);
    }

    #[test]
    fn exp_sinh_half_line() {
        let r = exp_sinh(|x| Complex64::new((-x).exp() * x.powf(1.5), 0.0), 0.0, 1e-12);
        // Γ(5/2) = 3√π/4
        assert!((r.value.re - 0.75 * PI.sqrt()).abs() < 1e-10, "{:?}", r);
    }
}
