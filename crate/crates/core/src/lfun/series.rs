use super::LfunError;
use crate::dirichlet::{cos_deriv_frac, primitive_characters, DirichletCharacter};
use crate::value::ComplexValue;
use num_complex::Complex64;
use num_integer::Integer;

/// a_n = scale · Σ_{de=n} χ₁(d)χ₂(e), i.e. L(s) = scale · L(s,χ₁)L(s,χ₂).
#[derive(Debug, Clone, PartialEq)]
pub struct EisensteinStructure {
    pub chi1: DirichletCharacter,
    pub chi2: DirichletCharacter,
    pub scale: ComplexValue,
}

impl EisensteinStructure {
    pub fn new(chi1: DirichletCharacter, chi2: DirichletCharacter, scale: impl Into<ComplexValue>) -> Self {
        EisensteinStructure { chi1, chi2, scale: scale.into() }
    }

    pub fn coeff(&self, n: u64) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for d in 1..=n {
            if n.is_multiple_of(d) {
                s += self.chi1.at(d as i64) * self.chi2.at((n / d) as i64);
            }
        }
        self.scale.z() * s
    }

    /// The structure with conjugated characters and unit scale: the shape of
    /// the dual series.
    pub fn dual_shape(&self) -> Self {
        EisensteinStructure { chi1: self.chi1.conj(), chi2: self.chi2.conj(), scale: ComplexValue::ONE }
    }

    pub fn level(&self) -> u64 {
        self.chi1.modulus * self.chi2.modulus
    }

    pub fn is_primitive(&self) -> bool {
        self.chi1.primitive && self.chi2.primitive
    }
}

/// Coefficients a_1..a_M of a Dirichlet series with |a_n| = O(n^σ).
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSeries {
    pub coeffs: Vec<ComplexValue>,
    pub growth_sigma: f64,
    /// Known factorization into two Dirichlet L-functions, when there is one.
    pub structure: Option<EisensteinStructure>,
}

impl CoefficientSeries {
    pub fn new(coeffs: Vec<ComplexValue>, growth_sigma: f64) -> Self {
        CoefficientSeries { coeffs, growth_sigma, structure: None }
    }

    pub fn from_fn(length: usize, growth_sigma: f64, f: impl Fn(u64) -> Complex64) -> Self {
        let coeffs = (1..=length as u64).map(|n| ComplexValue::from_complex(f(n), 0.0)).collect();
        Self::new(coeffs, growth_sigma)
    }

    /// The series L(s,χ₁)L(s,χ₂)·scale, with its structure attached.
    pub fn eisenstein(structure: EisensteinStructure, length: usize) -> Self {
        let mut s = Self::from_fn(length, 0.1, |n| structure.coeff(n));
        s.structure = Some(structure);
        s
    }

    /// a_n = d(n), the coefficients of ζ(s)².
    pub fn zeta_pair(length: usize) -> Self {
        let one = DirichletCharacter::trivial();
        Self::eisenstein(EisensteinStructure::new(one.clone(), one, 1.0), length)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// a_n for n ≥ 1; zero beyond the stored range.
    pub fn get(&self, n: u64) -> Complex64 {
        if n == 0 || n as usize > self.coeffs.len() {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs[n as usize - 1].z()
    }

    /// Multiplies every coefficient by `c`.
    pub fn scaled(&self, c: Complex64) -> Self {
        let coeffs = self.coeffs.iter().map(|a| ComplexValue::from_complex(a.z() * c, a.err * c.norm())).collect();
        let structure = self
            .structure
            .as_ref()
            .map(|st| EisensteinStructure { scale: ComplexValue::from(st.scale.z() * c), ..st.clone() });
        CoefficientSeries { coeffs, growth_sigma: self.growth_sigma, structure }
    }

    /// A copy with a_n shifted by `delta`; the factorization no longer holds,
    /// so it is dropped.
    pub fn perturbed(&self, n: u64, delta: Complex64) -> Self {
        let mut out = self.clone();
        if n >= 1 && n as usize <= out.coeffs.len() {
            let a = out.coeffs[n as usize - 1];
            out.coeffs[n as usize - 1] = ComplexValue::from_complex(a.z() + delta, a.err);
        }
        out.structure = None;
        out
    }

    /// Smallest C with |a_n| ≤ C n^σ over the stored range.
    pub fn growth_constant(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a.abs() / ((i + 1) as f64).powf(self.growth_sigma))
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistKind {
    /// cos^{(r)}(2πnα).
    Cos(u32),
    /// sin(2πnα).
    Sin,
    /// Multiplication by a Dirichlet character.
    Character,
}

/// Either an additive twist by α = a/q or a multiplicative twist by ψ.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistSpec {
    pub numerator: i64,
    pub denominator: u64,
    pub kind: TwistKind,
    pub character: Option<DirichletCharacter>,
}

impl TwistSpec {
    pub fn additive(numerator: i64, denominator: u64, kind: TwistKind) -> Result<Self, LfunError> {
        let t = TwistSpec { numerator, denominator, kind, character: None };
        t.validate()?;
        Ok(t)
    }

    pub fn character(psi: DirichletCharacter) -> Self {
        TwistSpec { numerator: 0, denominator: psi.modulus, kind: TwistKind::Character, character: Some(psi) }
    }

    pub fn validate(&self) -> Result<(), LfunError> {
        match (self.kind, &self.character) {
            (TwistKind::Character, Some(_)) => Ok(()),
            (TwistKind::Character, None) => Err(LfunError::Invalid("character twist without a character".into())),
            (_, Some(_)) => Err(LfunError::Invalid("additive twist carrying a character".into())),
            (_, None) => {
                if self.denominator == 0 {
                    return Err(LfunError::Invalid("zero denominator".into()));
                }
                if self.denominator > 1 && self.numerator.gcd(&(self.denominator as i64)) != 1 {
                    return Err(LfunError::Invalid(format!(
                        "{}/{} not in lowest terms",
                        self.numerator, self.denominator
                    )));
                }
                Ok(())
            }
        }
    }

    /// The r in Γ_R(s + [ε + r]) for the completed twist.
    pub fn parity(&self) -> u8 {
        match self.kind {
            TwistKind::Cos(r) => (r % 2) as u8,
            TwistKind::Sin => 1,
            TwistKind::Character => self.character.as_ref().map_or(0, |c| c.parity),
        }
    }

    /// The multiplier applied to a_n.
    pub fn weight(&self, n: u64) -> Complex64 {
        let q = self.denominator;
        let m = (n % q.max(1)) as i64 * self.numerator.rem_euclid(q.max(1) as i64);
        match self.kind {
            TwistKind::Cos(r) => Complex64::new(cos_deriv_frac(r, m, q.max(1)), 0.0),
            TwistKind::Sin => Complex64::new(-cos_deriv_frac(1, m, q.max(1)), 0.0),
            TwistKind::Character => self.character.as_ref().expect("validated").at(n as i64),
        }
    }
}

/// Coefficient-wise product of the series with the twist weights.
pub fn twist_coefficients(series: &CoefficientSeries, spec: &TwistSpec) -> CoefficientSeries {
    let coeffs = series
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let w = spec.weight(i as u64 + 1);
            ComplexValue::from_complex(a.z() * w, a.err * w.norm())
        })
        .collect();
    let structure = match (&series.structure, spec.kind) {
        (Some(st), TwistKind::Character) => {
            let psi = spec.character.as_ref().expect("validated");
            Some(EisensteinStructure { chi1: st.chi1.product(psi), chi2: st.chi2.product(psi), scale: st.scale })
        }
        _ => None,
    };
    CoefficientSeries { coeffs, growth_sigma: series.growth_sigma, structure }
}

/// a_n = Σ_{d|n} μ(d) b_{n/d}: the coefficients of L(s)/ζ(s).
pub fn dirichlet_divide(numer: &CoefficientSeries) -> CoefficientSeries {
    let m = numer.len();
    let mut a: Vec<Complex64> = numer.coeffs.iter().map(|c| c.z()).collect();
    // b = 1 * a, so a_n = b_n − Σ_{d|n, d<n} a_d; subtract each a_d from its multiples
    for d in 1..=m {
        let ad = a[d - 1];
        let mut k = 2 * d;
        while k <= m {
            a[k - 1] -= ad;
            k += d;
        }
    }
    let coeffs = a.into_iter().zip(&numer.coeffs).map(|(v, c)| ComplexValue::from_complex(v, c.err)).collect();
    CoefficientSeries::new(coeffs, numer.growth_sigma)
}

/// b_n = Σ_{d|n} a_d: the coefficients of ζ(s)L(s).
pub fn dirichlet_multiply_zeta(series: &CoefficientSeries) -> CoefficientSeries {
    let m = series.len();
    let mut b = vec![Complex64::new(0.0, 0.0); m];
    for d in 1..=m {
        let ad = series.coeffs[d - 1].z();
        let mut k = d;
        while k <= m {
            b[k - 1] += ad;
            k += d;
        }
    }
    CoefficientSeries::new(b.into_iter().map(|v| ComplexValue::from_complex(v, 0.0)).collect(), series.growth_sigma)
}

/// Looks for primitive χ₁ mod q₁, χ₂ mod q₂ with q₁q₂ = level, both of parity
/// ε, such that a_n = a_1 Σ_{de=n} χ₁(d)χ₂(e) on the stored range.
pub fn identify_eisenstein_pair(series: &CoefficientSeries, level: u64, parity: u8) -> Option<EisensteinStructure> {
    if series.is_empty() {
        return None;
    }
    let scale = series.coeffs[0];
    if scale.abs() < 1e-12 {
        return None;
    }
    let check_len = series.len().min(200) as u64;
    for q1 in 1..=level {
        if !level.is_multiple_of(q1) || q1 > level / q1 {
            continue;
        }
        let q2 = level / q1;
        let (Ok(c1), Ok(c2)) = (primitive_characters(q1), primitive_characters(q2)) else { continue };
        for x1 in c1.iter().filter(|c| c.parity == parity) {
            for x2 in c2.iter().filter(|c| c.parity == parity) {
                let st = EisensteinStructure::new(x1.clone(), x2.clone(), scale);
                if (1..=check_len).all(|n| (st.coeff(n) - series.get(n)).norm() <= 1e-8 * (1.0 + series.get(n).norm()))
                {
                    return Some(st);
                }
            }
        }
    }
    None
}
