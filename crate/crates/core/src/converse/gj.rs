use super::ConverseError;
use crate::specfun::{digamma_c, near_nonpositive_integer, pochhammer_c, polygamma_c, rgamma_c, EULER_GAMMA};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GJFactors {
    pub epsilon: u8,
    pub k: usize,
}

impl GJFactors {
    pub fn new(epsilon: u8, k: usize) -> Result<Self, ConverseError> {
        if epsilon > 1 {
            return Err(ConverseError::Invalid(format!("ε = {epsilon} must be 0 or 1")));
        }
        Ok(GJFactors { epsilon, k })
    }

    /// The three arguments (s+ε)/2, (s−ε+1)/2, (1−s+ε)/2.
    fn args(&self, s: Complex64) -> (Complex64, Complex64, Complex64) {
        let e = self.epsilon as f64;
        ((s + e) / 2.0, (s - e + 1.0) / 2.0, (1.0 - s + e) / 2.0)
    }

    /// Arguments of the Ψ terms of J_k.
    fn psi_args(&self, s: Complex64) -> [Complex64; 4] {
        let (a, b, c) = self.args(s);
        let k = self.k as f64;
        [a + k, b + k, b, c]
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// G_k(s) = ((s+ε)/2)_k ((s−ε+1)/2)_k / (Γ((s+ε)/2) Γ((1−s+ε)/2)), entire.
pub fn g_factor(gj: GJFactors, s: Complex64) -> Complex64 {
    let (a, b, cc) = gj.args(s);
    pochhammer_c(a, gj.k) * pochhammer_c(b, gj.k) * rgamma_c(a) * rgamma_c(cc)
}

/// J_k(s) = 2Ψ(k+1) − Ψ((s+ε)/2+k) − Ψ((s−ε+1)/2+k) + Ψ((s−ε+1)/2) − Ψ((1+ε−s)/2).
pub fn j_factor(gj: GJFactors, s: Complex64) -> Result<Complex64, ConverseError> {
    let args = gj.psi_args(s);
    let mut vals = [c(0.0); 4];
    for (v, x) in vals.iter_mut().zip(args) {
        if (x - x.re.round()).norm() < 1e-10 && x.re.round() <= 0.0 {
            return Err(ConverseError::DigammaPole(s.to_string()));
        }
        *v = digamma_c(x).map_err(|_| ConverseError::DigammaPole(s.to_string()))?;
    }
    Ok(2.0 * harmonic_psi(gj.k) - vals[0] - vals[1] + vals[2] - vals[3])
}

/// Ψ(k+1) = H_k − γ.
fn harmonic_psi(k: usize) -> Complex64 {
    c((1..=k).map(|j| 1.0 / j as f64).sum::<f64>() - EULER_GAMMA)
}

/// J_k(s)G_k(s). Near an integer where one of the Ψ terms has a pole, the
/// product is evaluated from Laurent expansions at that integer, where the
/// pole cancels against the zero of G_k.
pub fn jg_product(gj: GJFactors, s: Complex64) -> Complex64 {
    let m = s.re.round();
    let h = s - m;
    if h.norm() < 1e-4 && gj.psi_args(c(m)).iter().any(|x| near_nonpositive_integer(*x).is_some()) {
        return jets(gj, c(m)).1.eval(h);
    }
    j_factor(gj, s).expect("no Ψ pole away from the integers") * g_factor(gj, s)
}

const ORDER: usize = 4;

/// Truncated Laurent series Σ_j c[j] h^{val+j}.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Laurent {
    pub val: i32,
    pub c: [Complex64; ORDER],
}

impl Laurent {
    fn new(val: i32, c: [Complex64; ORDER]) -> Self {
        Laurent { val, c }
    }

    fn constant(x: Complex64) -> Self {
        let mut cs = [c(0.0); ORDER];
        cs[0] = x;
        Laurent::new(0, cs)
    }

    /// Coefficient of h^p.
    pub fn coeff(&self, p: i32) -> Complex64 {
        let j = p - self.val;
        if (0..ORDER as i32).contains(&j) {
            self.c[j as usize]
        } else {
            c(0.0)
        }
    }

    pub fn eval(&self, h: Complex64) -> Complex64 {
        // term by term, so that a cancelled pole part is harmless at h = 0
        let mut acc = c(0.0);
        for (j, &cj) in self.c.iter().enumerate() {
            if cj != c(0.0) {
                acc += cj * h.powi(self.val + j as i32);
            }
        }
        acc
    }

    pub(crate) fn mul(&self, o: &Laurent) -> Laurent {
        let mut cs = [c(0.0); ORDER];
        for i in 0..ORDER {
            for j in 0..ORDER - i {
                cs[i + j] += self.c[i] * o.c[j];
            }
        }
        Laurent::new(self.val + o.val, cs)
    }

    fn add(&self, o: &Laurent, sign: f64) -> Laurent {
        let val = self.val.min(o.val);
        let mut cs = [c(0.0); ORDER];
        for (j, v) in cs.iter_mut().enumerate() {
            let p = val + j as i32;
            *v = self.coeff(p) + sign * o.coeff(p);
        }
        Laurent::new(val, cs)
    }

    fn scale(&self, k: Complex64) -> Laurent {
        Laurent::new(self.val, self.c.map(|x| x * k))
    }

    /// Substitutes t = σh.
    fn stretch(&self, sigma: f64) -> Laurent {
        let mut cs = self.c;
        for (j, v) in cs.iter_mut().enumerate() {
            *v *= sigma.powi(self.val + j as i32);
        }
        Laurent::new(self.val, cs)
    }
}

/// exp of d₁t + d₂t² + d₃t³, by E' = D'E.
fn exp_series(d: [Complex64; ORDER]) -> [Complex64; ORDER] {
    let mut e = [c(0.0); ORDER];
    e[0] = c(1.0);
    for n in 1..ORDER {
        let mut acc = c(0.0);
        for k in 1..=n {
            acc += k as f64 * d[k] * e[n - k];
        }
        e[n] = acc / n as f64;
    }
    e
}

fn pg(m: usize, x: Complex64) -> Complex64 {
    polygamma_c(m, x).expect("regular point")
}

/// 1/Γ(x₀ + σh).
fn rgamma_jet(x0: Complex64, sigma: f64) -> Laurent {
    let t = match near_nonpositive_integer(x0) {
        Some(n) => {
            // 1/Γ(−n+t) = (−1)^n (sin πt/π) Γ(n+1−t)
            let n1 = c((1 - n) as f64);
            let fact: f64 = (1..=-n).map(|k| k as f64).product();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let g = exp_series([c(0.0), -pg(0, n1), pg(1, n1) / 2.0, -pg(2, n1) / 6.0]);
            let sin = Laurent::new(1, [c(1.0), c(0.0), c(-PI * PI / 6.0), c(0.0)]);
            sin.mul(&Laurent::new(0, g)).scale(c(sign * fact))
        }
        None => {
            let e = exp_series([c(0.0), -pg(0, x0), -pg(1, x0) / 2.0, -pg(2, x0) / 6.0]);
            Laurent::new(0, e).scale(rgamma_c(x0))
        }
    };
    t.stretch(sigma)
}

/// Ψ(x₀ + σh).
fn digamma_jet(x0: Complex64, sigma: f64) -> Laurent {
    let t = match near_nonpositive_integer(x0) {
        Some(n) => {
            // Ψ(−n+t) = Ψ(n+1−t) − π cot πt
            let n1 = c((1 - n) as f64);
            Laurent::new(-1, [c(-1.0), pg(0, n1), PI * PI / 3.0 - pg(1, n1), pg(2, n1) / 2.0])
        }
        None => Laurent::new(0, [pg(0, x0), pg(1, x0), pg(2, x0) / 2.0, pg(3, x0) / 6.0]),
    };
    t.stretch(sigma)
}

/// (x₀ + σh)_k, with exact zero factors given valuation one.
fn pochhammer_jet(x0: Complex64, sigma: f64, k: usize) -> Laurent {
    let mut acc = Laurent::constant(c(1.0));
    for j in 0..k {
        let x = x0 + j as f64;
        let f = if x.norm() < 1e-14 {
            Laurent::new(1, [c(sigma), c(0.0), c(0.0), c(0.0)])
        } else {
            Laurent::new(0, [x, c(sigma), c(0.0), c(0.0)])
        };
        acc = acc.mul(&f);
    }
    acc
}

/// Laurent expansions of G_k and J_kG_k in h = s − p.
pub(crate) fn jets(gj: GJFactors, p: Complex64) -> (Laurent, Laurent) {
    let (a, b, cc) = gj.args(p);
    let k = gj.k as f64;
    let g = pochhammer_jet(a, 0.5, gj.k)
        .mul(&pochhammer_jet(b, 0.5, gj.k))
        .mul(&rgamma_jet(a, 0.5))
        .mul(&rgamma_jet(cc, -0.5));
    let j = Laurent::constant(2.0 * harmonic_psi(gj.k))
        .add(&digamma_jet(a + k, 0.5), -1.0)
        .add(&digamma_jet(b + k, 0.5), -1.0)
        .add(&digamma_jet(b, 0.5), 1.0)
        .add(&digamma_jet(cc, -0.5), -1.0);
    (g, j.mul(&g))
}

/// α^{1/2−s} expanded at s = p.
pub(crate) fn alpha_jet(alpha: f64, p: Complex64) -> Laurent {
    let la = alpha.ln();
    let base = (la * (0.5 - p)).exp();
    let e = exp_series([c(0.0), c(-la), c(0.0), c(0.0)]);
    Laurent::new(0, e).scale(base)
}
