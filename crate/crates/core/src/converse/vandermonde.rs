use super::{ConverseError, TBetaSet};
use crate::value::ComplexValue;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Weights c_λ with Σ c_λ λ^{−t} = δ_{t0}(t) for t = 0..M−1.
///
/// When extended by a node λ₀ the full weight vector is the rational
/// particular solution (zero at λ₀) plus κ times a rational null vector of the
/// M Kronecker equations, so those stay exact while κ fixes the log constraint.
#[derive(Debug, Clone, PartialEq)]
pub struct VandermondeWeights {
    pub lambdas: Vec<BigRational>,
    pub t0: usize,
    pub weights: Vec<BigRational>,
    pub extension: Option<LogExtension>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogExtension {
    pub lambda0: BigRational,
    /// Indexed like `lambdas` followed by λ₀.
    pub null_vector: Vec<BigRational>,
    pub kappa: Complex64,
    pub target: ComplexValue,
    /// |Σ n_λ λ^{−t0} log λ| over Σ |n_λ λ^{−t0} log λ|, the normalized
    /// determinant of the extended system.
    pub determinant: f64,
}

fn inv_powers(lambda: &BigRational, m: usize) -> Vec<BigRational> {
    let inv = lambda.recip();
    let mut out = Vec::with_capacity(m);
    let mut cur = BigRational::one();
    for _ in 0..m {
        out.push(cur.clone());
        cur *= &inv;
    }
    out
}

fn check_nodes(lambdas: &[BigRational], t0: usize) -> Result<(), ConverseError> {
    if t0 >= lambdas.len() {
        return Err(ConverseError::T0OutOfRange { t0, m: lambdas.len() });
    }
    for (i, l) in lambdas.iter().enumerate() {
        if l.is_zero() {
            return Err(ConverseError::Invalid("λ = 0".into()));
        }
        if lambdas[..i].contains(l) {
            return Err(ConverseError::DuplicateNode(l.to_string()));
        }
    }
    Ok(())
}

/// Exact Gaussian elimination; the matrix is nonsingular for distinct nodes.
fn solve_exact(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Vec<BigRational> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("distinct nodes give a nonsingular system");
        a.swap(col, piv);
        b.swap(col, piv);
        let p = a[col][col].clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
            let v = &f * &b[col];
            b[r] -= v;
        }
    }
    let mut x = vec![BigRational::zero(); n];
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for c in r + 1..n {
            acc -= &a[r][c] * &x[c];
        }
        x[r] = acc / &a[r][r];
    }
    x
}

pub fn solve_vandermonde(lambdas: &[BigRational], t0: usize) -> Result<VandermondeWeights, ConverseError> {
    check_nodes(lambdas, t0)?;
    let m = lambdas.len();
    let cols: Vec<Vec<BigRational>> = lambdas.iter().map(|l| inv_powers(l, m)).collect();
    let a = (0..m).map(|t| (0..m).map(|i| cols[i][t].clone()).collect()).collect();
    let b = (0..m).map(|t| if t == t0 { BigRational::one() } else { BigRational::zero() }).collect();
    Ok(VandermondeWeights { lambdas: lambdas.to_vec(), t0, weights: solve_exact(a, b), extension: None })
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Working precision, in bits, of the fixed-point logarithms.
const LOG_BITS: u64 = 288;

/// atanh(p/q)·2^LOG_BITS for 0 ≤ p/q ≤ 1/3, truncated.
fn atanh_scaled(p: &BigInt, q: &BigInt) -> BigInt {
    let y = (p << LOG_BITS) / q;
    let y2 = (&y * &y) >> LOG_BITS;
    let (mut term, mut acc, mut k) = (y, BigInt::zero(), 0u32);
    while !term.is_zero() {
        acc += &term / BigInt::from(2 * k + 1);
        term = (term * &y2) >> LOG_BITS;
        k += 1;
    }
    acc
}

/// ln n·2^LOG_BITS for n ≥ 1, from n = 2^e·m with m ∈ [1, 2) and
/// ln m = 2 atanh((m−1)/(m+1)), ln 2 = 2 atanh(1/3).
fn ln_integer_scaled(n: &BigInt) -> BigInt {
    let e = n.bits() - 1;
    let pow = BigInt::one() << e;
    let ln2 = atanh_scaled(&BigInt::one(), &BigInt::from(3)) * 2;
    atanh_scaled(&(n - &pow), &(n + &pow)) * 2 + ln2 * BigInt::from(e)
}

/// ln λ for λ > 0, accurate to about 2^{−280}.
fn ln_rational(lambda: &BigRational) -> BigRational {
    let num = ln_integer_scaled(lambda.numer()) - ln_integer_scaled(lambda.denom());
    BigRational::new(num, BigInt::one() << LOG_BITS)
}

/// (Σ v_i λ_i^{−t0} log λ_i, Σ |v_i λ_i^{−t0} log λ_i|), summed exactly over
/// the high-precision logarithms and rounded once at the end.
fn log_functional(nodes: &[BigRational], v: &[BigRational], t0: usize) -> (f64, f64) {
    let mut acc = BigRational::zero();
    let mut mag = BigRational::zero();
    for (l, c) in nodes.iter().zip(v) {
        let p = inv_powers(l, t0 + 1).pop().expect("t0 + 1 ≥ 1 powers");
        let term = c * p * ln_rational(l);
        mag += term.abs();
        acc += term;
    }
    (to_f64(&acc), to_f64(&mag))
}

/// n_i = 1/Π_{j≠i}(x_i − x_j) with x = 1/λ: the divided-difference weights,
/// which annihilate every polynomial of degree < M on M+1 nodes.
fn null_vector(nodes: &[BigRational]) -> Vec<BigRational> {
    let x: Vec<BigRational> = nodes.iter().map(|l| l.recip()).collect();
    (0..x.len())
        .map(|i| {
            let mut prod = BigRational::one();
            for j in 0..x.len() {
                if j != i {
                    prod *= &x[i] - &x[j];
                }
            }
            prod.recip()
        })
        .collect()
}

/// Adds a node λ₀ from the pool so that additionally
/// Σ c_λ λ^{−t0} log λ = z. Pool members equal to 1 or already among the
/// nodes are skipped.
pub fn solve_vandermonde_extended(
    lambdas: &[BigRational],
    t0: usize,
    z: ComplexValue,
    pool: &TBetaSet,
) -> Result<VandermondeWeights, ConverseError> {
    let base = solve_vandermonde(lambdas, t0)?;
    if lambdas.iter().any(|l| !l.is_positive()) {
        return Err(ConverseError::Invalid("the log constraint needs positive nodes".into()));
    }
    let (lp, _) = log_functional(lambdas, &base.weights, t0);
    for l0 in &pool.members {
        if l0.is_one() || !l0.is_positive() || lambdas.contains(l0) {
            continue;
        }
        let mut nodes = lambdas.to_vec();
        nodes.push(l0.clone());
        let n = null_vector(&nodes);
        let (ln, mag) = log_functional(&nodes, &n, t0);
        let det = ln.abs() / mag;
        if !(det > 1e-12) {
            continue;
        }
        let kappa = (z.z() - lp) / ln;
        return Ok(VandermondeWeights {
            extension: Some(LogExtension { lambda0: l0.clone(), null_vector: n, kappa, target: z, determinant: det }),
            ..base
        });
    }
    Err(ConverseError::PoolExhausted)
}

impl VandermondeWeights {
    pub fn m(&self) -> usize {
        self.lambdas.len()
    }

    /// All nodes, λ₀ last when extended.
    pub fn nodes(&self) -> Vec<BigRational> {
        let mut v = self.lambdas.clone();
        if let Some(e) = &self.extension {
            v.push(e.lambda0.clone());
        }
        v
    }

    /// Σ c_λ λ^{−t} − δ_{t0}(t) for t = 0..M−1, in exact arithmetic, for the
    /// particular solution and (when extended) the null vector separately.
    pub fn kronecker_residuals(&self) -> Vec<BigRational> {
        let m = self.m();
        let mut out = Vec::new();
        let cols: Vec<Vec<BigRational>> = self.nodes().iter().map(|l| inv_powers(l, m)).collect();
        for t in 0..m {
            let mut acc = if t == self.t0 { -BigRational::one() } else { BigRational::zero() };
            for (i, c) in self.weights.iter().enumerate() {
                acc += c * &cols[i][t];
            }
            out.push(acc);
        }
        if let Some(e) = &self.extension {
            for t in 0..m {
                let mut acc = BigRational::zero();
                for (i, c) in e.null_vector.iter().enumerate() {
                    acc += c * &cols[i][t];
                }
                out.push(acc);
            }
        }
        out
    }

    pub fn is_exact(&self) -> bool {
        self.kronecker_residuals().iter().all(|r| r.is_zero())
    }

    /// The weights as complex numbers, including c_{λ₀} when extended.
    pub fn complex_weights(&self) -> Vec<Complex64> {
        let mut w: Vec<Complex64> = self.weights.iter().map(|c| Complex64::new(to_f64(c), 0.0)).collect();
        if let Some(e) = &self.extension {
            w.push(Complex64::new(0.0, 0.0));
            for (wi, n) in w.iter_mut().zip(&e.null_vector) {
                *wi += e.kappa * to_f64(n);
            }
        }
        w
    }

    /// |Σ c_λ λ^{−t0} log λ − z| when extended, for the weights c = c_p + κn
    /// with c_p and n exact. Rounding c to floating point first would lose
    /// about max|c|·ε to cancellation.
    pub fn log_residual(&self) -> Option<f64> {
        let e = self.extension.as_ref()?;
        let (lp, _) = log_functional(&self.lambdas, &self.weights, self.t0);
        let (ln, _) = log_functional(&self.nodes(), &e.null_vector, self.t0);
        Some((lp + e.kappa * ln - e.target.z()).norm())
    }

    /// Largest |c_λ|, a conditioning indicator.
    pub fn max_weight(&self) -> f64 {
        self.weights.iter().map(|c| to_f64(&c.abs())).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_point_logs() {
        for (p, q) in [(1i64, 1i64), (2, 1), (3, 1), (7, 3), (1, 5), (1009, 1), (97, 1024)] {
            let x = BigRational::new(BigInt::from(p), BigInt::from(q));
            let v = to_f64(&ln_rational(&x));
            assert!((v - (p as f64 / q as f64).ln()).abs() <= 4e-16 * (1.0 + v.abs()), "{p}/{q}: {v}");
        }
        // ln 8 − 3 ln 2 vanishes to the working precision
        let d = ln_rational(&BigRational::from_integer(8.into()))
            - ln_rational(&BigRational::from_integer(2.into())) * BigRational::from_integer(3.into());
        assert!(to_f64(&d.abs()) < 1e-80);
    }
}
