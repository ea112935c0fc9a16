use super::series::{identify_eisenstein_pair, CoefficientSeries, EisensteinStructure};
use super::{eval_dirichlet_L, LfunError};
use crate::dirichlet::{gauss_sum, DirichletCharacter};
use crate::specfun::EULER_GAMMA;
use crate::value::ComplexValue;
use num_complex::Complex64;
use serde_json::{json, Value};
use std::f64::consts::PI;

/// Principal part of Λ at a pole ρ: coeffs[j] multiplies (s − ρ)^{−(j+1)}.
/// So coeffs[0] = Res_{s=ρ} Λ and coeffs[1] = Res_{s=ρ} (s − ρ)Λ.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarPart {
    pub point: f64,
    pub coeffs: Vec<ComplexValue>,
}

impl PolarPart {
    pub fn residue(&self) -> Complex64 {
        self.coeffs.first().map_or(Complex64::new(0.0, 0.0), |c| c.z())
    }

    /// Res (s − ρ)Λ(s), the coefficient of the double pole.
    pub fn second(&self) -> Complex64 {
        self.coeffs.get(1).map_or(Complex64::new(0.0, 0.0), |c| c.z())
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        PolarPart {
            point: self.point,
            coeffs: self.coeffs.iter().map(|v| ComplexValue::from_complex(v.z() * c, v.err * c.norm())).collect(),
        }
    }
}

/// Data of Λ_f(s) = (−1)^ε · root · N^{1/2−s} · Λ_c(1−s), where Λ = Π Γ_R(s+μ_i) L
/// and c is the dual series. The series g of the paired form has b_n = root·c_n.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionalEquationData {
    pub level: u64,
    pub nebentypus: DirichletCharacter,
    pub parity: u8,
    pub gamma_shifts: Vec<i64>,
    pub root_constant: ComplexValue,
    pub dual: CoefficientSeries,
    /// Principal parts of Λ_f at its poles (empty for entire Λ_f).
    pub polar_parts: Vec<PolarPart>,
}

impl FunctionalEquationData {
    pub fn validate(&self) -> Result<(), LfunError> {
        if self.level == 0 {
            return Err(LfunError::Invalid("level must be positive".into()));
        }
        if (self.root_constant.abs() - 1.0).abs() > 1e-10 {
            return Err(LfunError::Invalid(format!("|root constant| = {} ≠ 1", self.root_constant.abs())));
        }
        if self.gamma_shifts.windows(2).any(|w| w[0] > w[1]) {
            return Err(LfunError::Invalid("gamma shifts must be sorted".into()));
        }
        if self.parity > 1 {
            return Err(LfunError::Invalid("parity must be 0 or 1".into()));
        }
        Ok(())
    }

    /// (−1)^ε as a float.
    pub fn sign(&self) -> f64 {
        if self.parity == 1 {
            -1.0
        } else {
            1.0
        }
    }

    /// FE data for a pair L(s,χ₁)L(s,χ₂) with χ₁, χ₂ primitive of equal parity.
    pub fn eisenstein(series: &CoefficientSeries) -> Result<Self, LfunError> {
        let st = series
            .structure
            .as_ref()
            .ok_or_else(|| LfunError::UnsupportedLane("series has no known factorization".into()))?;
        if !st.is_primitive() {
            return Err(LfunError::Invalid("characters must be primitive".into()));
        }
        if st.chi1.parity != st.chi2.parity {
            return Err(LfunError::Invalid("characters must share their parity".into()));
        }
        let n = st.level();
        let eps = st.chi1.parity;
        let w = gauss_sum(&st.chi1).z() * gauss_sum(&st.chi2).z() / (n as f64).sqrt();
        let root = st.scale.z() * w;
        let dual = CoefficientSeries::eisenstein(st.dual_shape(), series.len());
        Ok(FunctionalEquationData {
            level: n,
            nebentypus: st.chi1.product(&st.chi2).lift(n),
            parity: eps,
            gamma_shifts: vec![eps as i64, eps as i64],
            root_constant: ComplexValue::from_complex(root, 1e-14),
            dual,
            polar_parts: eisenstein_polar_parts(st)?,
        })
    }

    /// FE data of the dual side: Λ_c(s) = (−1)^ε · conj(root) · N^{1/2−s} · Λ_f(1−s).
    pub fn dual_data(&self, f: &CoefficientSeries) -> Result<Self, LfunError> {
        let polar_parts = match &self.dual.structure {
            Some(st) => eisenstein_polar_parts(st)?,
            None => Vec::new(),
        };
        Ok(FunctionalEquationData {
            level: self.level,
            nebentypus: self.nebentypus.conj(),
            parity: self.parity,
            gamma_shifts: self.gamma_shifts.clone(),
            root_constant: self.root_constant.conj(),
            dual: f.clone(),
            polar_parts,
        })
    }

    /// The series b_n = root·c_n of the paired form.
    pub fn g_series(&self) -> CoefficientSeries {
        self.dual.scaled(self.root_constant.z())
    }

    /// Principal parts of Λ_g = root·Λ_c.
    pub fn g_polar_parts(&self) -> Result<Vec<PolarPart>, LfunError> {
        let base = match &self.dual.structure {
            Some(st) => eisenstein_polar_parts(st)?,
            None => return Err(LfunError::UnsupportedLane("dual series has no known factorization".into())),
        };
        Ok(base.iter().map(|p| p.scaled(self.root_constant.z())).collect())
    }

    pub fn to_json(&self, name: &str, series: &CoefficientSeries) -> Value {
        let pairs = |s: &CoefficientSeries| s.coeffs.iter().map(|c| json!([c.re, c.im])).collect::<Vec<_>>();
        json!({
            "name": name,
            "level": self.level,
            "parity": self.parity,
            "gamma_shifts": self.gamma_shifts,
            "root_constant": [self.root_constant.re, self.root_constant.im],
            "nebentypus": self.nebentypus.to_json(),
            "coefficients": pairs(series),
            "dual_coefficients": pairs(&self.dual),
        })
    }

    /// Parses an functional-equation document. Factorizations into Dirichlet L-functions
    /// are recognized from the coefficients so the exact lanes apply.
    pub fn from_json(v: &Value) -> Result<(String, CoefficientSeries, FunctionalEquationData), LfunError> {
        let bad = |what: &str| LfunError::Invalid(format!("FE document: bad or missing field {what}"));
        let name = v["name"].as_str().unwrap_or("").to_string();
        let level = v["level"].as_u64().ok_or_else(|| bad("level"))?;
        let parity = v["parity"].as_u64().filter(|p| *p <= 1).ok_or_else(|| bad("parity"))? as u8;
        let gamma_shifts: Vec<i64> = v["gamma_shifts"]
            .as_array()
            .ok_or_else(|| bad("gamma_shifts"))?
            .iter()
            .map(|x| x.as_i64().ok_or_else(|| bad("gamma_shifts")))
            .collect::<Result<_, _>>()?;
        let root_constant = pair(&v["root_constant"]).ok_or_else(|| bad("root_constant"))?;
        let nebentypus = DirichletCharacter::from_json(&v["nebentypus"])?;
        let coeffs = pair_list(&v["coefficients"]).ok_or_else(|| bad("coefficients"))?;
        let dual = pair_list(&v["dual_coefficients"]).ok_or_else(|| bad("dual_coefficients"))?;
        let mut series = CoefficientSeries::new(coeffs, 0.1);
        let mut dual = CoefficientSeries::new(dual, 0.1);
        series.structure = identify_eisenstein_pair(&series, level, parity);
        dual.structure = identify_eisenstein_pair(&dual, level, parity);
        let polar_parts = match &series.structure {
            Some(st) => eisenstein_polar_parts(st)?,
            None => Vec::new(),
        };
        let fe = FunctionalEquationData { level, nebentypus, parity, gamma_shifts, root_constant, dual, polar_parts };
        fe.validate()?;
        Ok((name, series, fe))
    }
}

fn pair(v: &Value) -> Option<ComplexValue> {
    let a = v.as_array()?;
    if a.len() != 2 {
        return None;
    }
    Some(ComplexValue::new(a[0].as_f64()?, a[1].as_f64()?))
}

fn pair_list(v: &Value) -> Option<Vec<ComplexValue>> {
    v.as_array()?.iter().map(pair).collect()
}

/// ξ(s) = Γ_R(s)ζ(s) = 1/(s−1) + c + O(s−1) with this c.
pub(crate) fn xi_constant_at_one() -> f64 {
    EULER_GAMMA / 2.0 - 0.5 * (4.0 * PI).ln()
}

/// Principal parts of scale·Λ(s,χ₁)Λ(s,χ₂) at s ∈ {0, 1}, from exact Laurent
/// data of ξ and special values of the Dirichlet factor.
pub(crate) fn eisenstein_polar_parts(st: &EisensteinStructure) -> Result<Vec<PolarPart>, LfunError> {
    let t1 = st.chi1.modulus == 1;
    let t2 = st.chi2.modulus == 1;
    let scale = st.scale.z();
    let cv = |z: Complex64, e: f64| ComplexValue::from_complex(z * scale, e * scale.norm());
    match (t1, t2) {
        (true, true) => {
            // ξ(s)² = 1/(s−1)² + 2c/(s−1) + …, and ξ(s) = ξ(1−s)
            let c = xi_constant_at_one();
            let one = Complex64::new(1.0, 0.0);
            Ok(vec![
                PolarPart { point: 0.0, coeffs: vec![cv(Complex64::new(-2.0 * c, 0.0), 1e-15), cv(one, 0.0)] },
                PolarPart { point: 1.0, coeffs: vec![cv(Complex64::new(2.0 * c, 0.0), 1e-15), cv(one, 0.0)] },
            ])
        }
        (true, false) | (false, true) => {
            // ξ(s)·Λ(s,χ) with Λ(s,χ) = Γ_R(s)L(s,χ) entire and even χ:
            // Λ(1,χ) = L(1,χ), Λ(0,χ) = τ(χ)L(1,χ̄).
            let chi = if t1 { &st.chi2 } else { &st.chi1 };
            if chi.parity != 0 {
                return Ok(Vec::new());
            }
            let l1 = eval_dirichlet_L(chi, ComplexValue::ONE)?;
            let l1bar = eval_dirichlet_L(&chi.conj(), ComplexValue::ONE)?;
            let tau = gauss_sum(chi);
            let at0 = -(tau.z() * l1bar.z());
            Ok(vec![
                PolarPart { point: 0.0, coeffs: vec![cv(at0, l1bar.err * tau.abs() + 1e-15)] },
                PolarPart { point: 1.0, coeffs: vec![cv(l1.z(), l1.err)] },
            ])
        }
        (false, false) => Ok(Vec::new()),
    }
}
