//! Euler-factor tables of Artin L-functions and the quotient L(s,φ)/ζ(s).

use crate::dirichlet::{enumerate_characters, is_prime, DirichletCharacter};
use crate::lfun::{
    dirichlet_divide, identify_eisenstein_pair, CoefficientSeries, FunctionalEquationData, LfunError, PolarPart,
};
use crate::value::ComplexValue;
use num_complex::Complex64;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

/// Tolerance for |α| = 1 on reciprocal roots and for F_p(1) = 0.
pub const ROOT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ArtinError {
    #[error("schema error: {0}")]
    SchemaError(String),
    #[error("invariant violated at {0}")]
    InvariantViolation(String),
    #[error("network error: {0}")]
    NetworkError(String),
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("no cached table for {0}")]
    CacheMiss(String),
    #[error("no Euler factor for the prime {0}")]
    MissingPrime(u64),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("|root constant| = {0}, expected 1")]
    NotUnitModulus(f64),
    #[error(transparent)]
    Lfun(#[from] LfunError),
}

/// Local factors Π_{𝔭|p} L_𝔭(s,φ)^{−1} as polynomials in x = p^{−s},
/// constant term first.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerFactorTable {
    pub dimension: usize,
    pub conductor: u64,
    pub p_plus: usize,
    pub m_minus: usize,
    pub factors: BTreeMap<u64, Vec<Complex64>>,
    pub bad_primes: Vec<u64>,
    /// Optional provenance carried through from the source document.
    pub label: Option<String>,
    /// The global root number W(φ) if the source supplied it.
    pub root_number: Option<Complex64>,
}

impl EulerFactorTable {
    pub fn is_bad(&self, p: u64) -> bool {
        self.bad_primes.contains(&p)
    }

    pub fn good_primes(&self) -> Vec<u64> {
        self.factors.keys().copied().filter(|&p| !self.is_bad(p)).collect()
    }

    /// F_p(1), the local polynomial evaluated at x = 1.
    pub fn value_at_one(&self, p: u64) -> Option<Complex64> {
        self.factors.get(&p).map(|f| f.iter().sum())
    }

    /// The table of the contragredient: conjugate local polynomials.
    pub fn contragredient(&self) -> Self {
        let mut t = self.clone();
        for f in t.factors.values_mut() {
            for c in f.iter_mut() {
                *c = c.conj();
            }
        }
        t.root_number = self.root_number.map(|w| w.conj());
        t
    }

    /// The document form read by [`ingest_euler_factors`], keys sorted.
    pub fn to_json(&self) -> Value {
        let mut factors = Map::new();
        for (p, f) in &self.factors {
            factors.insert(p.to_string(), Value::Array(f.iter().map(|c| json!([c.re, c.im])).collect()));
        }
        let mut doc = json!({
            "dimension": self.dimension,
            "conductor": self.conductor,
            "p_plus": self.p_plus,
            "m_minus": self.m_minus,
            "bad_primes": self.bad_primes,
            "factors": Value::Object(factors),
        });
        if let Some(l) = &self.label {
            doc["label"] = json!(l);
        }
        if let Some(w) = self.root_number {
            doc["root_number"] = json!([w.re, w.im]);
        }
        doc
    }

    /// A copy keeping only the primes up to `bound`.
    pub fn truncated(&self, bound: u64) -> Self {
        let mut t = self.clone();
        t.factors.retain(|&p, _| p <= bound);
        t
    }
}

fn schema(msg: impl Into<String>) -> ArtinError {
    ArtinError::SchemaError(msg.into())
}

fn get_uint(doc: &Value, key: &str) -> Result<u64, ArtinError> {
    doc.get(key).and_then(Value::as_u64).ok_or_else(|| schema(format!("missing or non-integer field {key:?}")))
}

fn parse_pair(v: &Value) -> Option<Complex64> {
    let a = v.as_array()?;
    if a.len() != 2 {
        return None;
    }
    Some(Complex64::new(a[0].as_f64()?, a[1].as_f64()?))
}

/// Roots of Σ c_k x^k by Aberth iteration. Clusters of numerically
/// coincident roots are treated as one multiple root, since the individual
/// members are only accurate to about ε^{1/m}.
fn poly_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.len() > 1 && c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    let d = c.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &a in c.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    };
    let radius = 1.0 + c[..d].iter().map(|a| a.norm()).fold(0.0, f64::max) / c[d].norm();
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(0.5 * radius, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / d as f64))
        .collect();
    for _ in 0..500 {
        let mut moved: f64 = 0.0;
        for i in 0..d {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..d).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm());
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    // a cluster of m roots is refined as a simple root of P^{(m−1)}
    let mut out = Vec::with_capacity(d);
    let mut used = vec![false; d];
    for i in 0..d {
        if used[i] {
            continue;
        }
        let members: Vec<usize> = (i..d).filter(|&j| !used[j] && (z[j] - z[i]).norm() < 1e-4).collect();
        let mut centre = members.iter().map(|&j| z[j]).sum::<Complex64>() / members.len() as f64;
        let mut deriv = c.clone();
        for _ in 1..members.len() {
            deriv = deriv.iter().enumerate().skip(1).map(|(k, a)| a * k as f64).collect();
        }
        for _ in 0..20 {
            let (mut p, mut dp) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            for &a in deriv.iter().rev() {
                dp = dp * centre + p;
                p = p * centre + a;
            }
            if dp.norm() == 0.0 || p.norm() == 0.0 {
                break;
            }
            centre -= p / dp;
        }
        for &j in &members {
            used[j] = true;
            out.push(centre);
        }
    }
    out
}

/// Parses and validates an Euler-factor document.
pub fn ingest_euler_factors(document: &[u8]) -> Result<EulerFactorTable, ArtinError> {
    let doc: Value = serde_json::from_slice(document).map_err(|e| schema(e.to_string()))?;
    if !doc.is_object() {
        return Err(schema("document must be a JSON object"));
    }
    let dimension = get_uint(&doc, "dimension")? as usize;
    let conductor = get_uint(&doc, "conductor")?;
    let p_plus = get_uint(&doc, "p_plus")? as usize;
    let m_minus = get_uint(&doc, "m_minus")? as usize;
    if dimension == 0 || conductor == 0 {
        return Err(schema("dimension and conductor must be positive"));
    }
    let bad_primes: Vec<u64> = doc
        .get("bad_primes")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("missing field \"bad_primes\""))?
        .iter()
        .map(|v| v.as_u64().ok_or_else(|| schema("bad_primes must be integers")))
        .collect::<Result<_, _>>()?;
    let raw = doc.get("factors").and_then(Value::as_object).ok_or_else(|| schema("missing field \"factors\""))?;
    let label = match doc.get("label") {
        None | Some(Value::Null) => None,
        Some(v) => Some(v.as_str().ok_or_else(|| schema("label must be a string"))?.to_string()),
    };
    let root_number = match doc.get("root_number") {
        None | Some(Value::Null) => None,
        Some(v) => Some(parse_pair(v).ok_or_else(|| schema("root_number must be [re, im]"))?),
    };

    if p_plus + m_minus != dimension {
        return Err(ArtinError::InvariantViolation(format!(
            "p_plus + m_minus = {} ≠ dimension {dimension}",
            p_plus + m_minus
        )));
    }
    for &p in &bad_primes {
        if !is_prime(p) || conductor % p != 0 {
            return Err(ArtinError::InvariantViolation(format!("bad prime {p} does not divide the conductor")));
        }
    }
    let mut factors = BTreeMap::new();
    for (key, poly) in raw {
        let p: u64 = key.parse().map_err(|_| schema(format!("factor key {key:?} is not an integer")))?;
        if !is_prime(p) {
            return Err(schema(format!("factor key {p} is not prime")));
        }
        let coeffs: Vec<Complex64> = poly
            .as_array()
            .ok_or_else(|| schema(format!("factor at {p} must be a list")))?
            .iter()
            .map(|v| parse_pair(v).ok_or_else(|| schema(format!("coefficient at {p} must be [re, im]"))))
            .collect::<Result<_, _>>()?;
        if coeffs.first() != Some(&Complex64::new(1.0, 0.0)) {
            return Err(ArtinError::InvariantViolation(p.to_string()));
        }
        let mut degree = coeffs.len() - 1;
        while degree > 0 && coeffs[degree].norm() == 0.0 {
            degree -= 1;
        }
        let bad = bad_primes.contains(&p);
        if (!bad && degree != dimension) || (bad && degree >= dimension) {
            return Err(ArtinError::InvariantViolation(p.to_string()));
        }
        if poly_roots(&coeffs[..=degree]).iter().any(|r| (r.norm() - 1.0).abs() > ROOT_TOL) {
            return Err(ArtinError::InvariantViolation(p.to_string()));
        }
        factors.insert(p, coeffs[..=degree].to_vec());
    }
    Ok(EulerFactorTable { dimension, conductor, p_plus, m_minus, factors, bad_primes, label, root_number })
}

/// Coefficients of L(s,φ) = Σ b_n n^{−s} for n ≤ length, from the local
/// power series 1/F_p(p^{−s}).
pub fn expand_coefficients(table: &EulerFactorTable, length: usize) -> Result<CoefficientSeries, ArtinError> {
    let mut spf = vec![0usize; length + 1];
    for i in 2..=length {
        if spf[i] == 0 {
            for j in (i..=length).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i;
                }
            }
        }
    }
    // local series per prime, to the highest power not exceeding length
    let mut local: BTreeMap<usize, Vec<Complex64>> = BTreeMap::new();
    for p in (2..=length).filter(|&i| spf[i] == i) {
        let f = table.factors.get(&(p as u64)).ok_or(ArtinError::MissingPrime(p as u64))?;
        let mut kmax = 0;
        let mut pk = 1usize;
        while pk <= length / p {
            pk *= p;
            kmax += 1;
        }
        let mut e = vec![Complex64::new(1.0, 0.0)];
        for k in 1..=kmax {
            let mut v = Complex64::new(0.0, 0.0);
            for j in 1..f.len().min(k + 1) {
                v -= f[j] * e[k - j];
            }
            e.push(v);
        }
        local.insert(p, e);
    }
    let mut b = vec![Complex64::new(0.0, 0.0); length + 1];
    if length >= 1 {
        b[1] = Complex64::new(1.0, 0.0);
    }
    for n in 2..=length {
        let p = spf[n];
        let (mut m, mut k) = (n, 0);
        while m % p == 0 {
            m /= p;
            k += 1;
        }
        b[n] = local[&p][k] * b[m];
    }
    Ok(CoefficientSeries::new(b.into_iter().skip(1).map(|v| ComplexValue::from_complex(v, 0.0)).collect(), 0.1))
}

/// The quotient L(s,φ)/ζ(s) with the gamma factor left after cancelling Γ_R(s).
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientProfile {
    pub quotient_gamma: Vec<i64>,
    pub epsilon: Option<u8>,
    pub coefficients: CoefficientSeries,
}

/// Divides L(s,φ) by ζ(s) for a 3-dimensional φ with p ≥ 1. When the
/// quotient matches a product of two Dirichlet L-functions on the stored
/// range, that factorization is attached so exact evaluation is available.
pub fn quotient_profile(table: &EulerFactorTable, length: usize) -> Result<QuotientProfile, ArtinError> {
    if table.dimension != 3 {
        return Err(ArtinError::HypothesisViolation(format!("dimension {} ≠ 3", table.dimension)));
    }
    if table.p_plus == 0 {
        return Err(ArtinError::HypothesisViolation("p = 0: Γ_R(s) does not divide the gamma factor".into()));
    }
    if length == 0 {
        return Err(ArtinError::HypothesisViolation("length must be at least 1".into()));
    }
    let quotient_gamma = match table.p_plus {
        3 => vec![0, 0],
        2 => vec![0, 1],
        _ => vec![1, 1],
    };
    let epsilon = table.m_minus.is_multiple_of(2).then_some((table.m_minus / 2) as u8);
    let mut coefficients = dirichlet_divide(&expand_coefficients(table, length)?);
    if let Some(eps) = epsilon {
        coefficients.structure = identify_eisenstein_pair(&coefficients, table.conductor, eps);
    }
    Ok(QuotientProfile { quotient_gamma, epsilon, coefficients })
}

/// Searches good primes up to `prime_bound` for one whose local polynomial
/// is not divisible by 1 − x. Such a prime rules out φ containing the
/// trivial representation.
pub fn primitivity_proxy(table: &EulerFactorTable, prime_bound: u64) -> (bool, Option<u64>) {
    for p in table.good_primes() {
        if p > prime_bound {
            break;
        }
        if table.value_at_one(p).is_some_and(|v| v.norm() > ROOT_TOL) {
            return (true, Some(p));
        }
    }
    (false, None)
}

/// FE data for the quotient pair: f has the coefficients of L(s,φ)/ζ(s),
/// the dual those of L(s,φ̃)/ζ(s), parity ε = m/2 and root constant w_{<∞}(φ).
///
/// The finite root constant relates to the global root number by
/// W(φ) = i^m·w_{<∞}(φ).
pub fn assemble_fe(
    table: &EulerFactorTable,
    length: usize,
    root_constant_finite: ComplexValue,
    nebentypus: &DirichletCharacter,
) -> Result<FunctionalEquationData, ArtinError> {
    let modulus = root_constant_finite.abs();
    if (modulus - 1.0).abs() > 1e-9 {
        return Err(ArtinError::NotUnitModulus(modulus));
    }
    if !table.conductor.is_multiple_of(nebentypus.modulus) {
        return Err(ArtinError::HypothesisViolation(format!(
            "nebentypus modulus {} does not divide the conductor {}",
            nebentypus.modulus, table.conductor
        )));
    }
    let f_profile = quotient_profile(table, length)?;
    let Some(eps) = f_profile.epsilon else {
        return Err(ArtinError::HypothesisViolation(format!(
            "m = {} is odd, so the quotient has no parity",
            table.m_minus
        )));
    };
    let dual = quotient_profile(&table.contragredient(), length)?.coefficients;
    // poles are only known when the quotient factors into Dirichlet L-functions
    let polar_parts = match &f_profile.coefficients.structure {
        Some(st) => crate::lfun::fe::eisenstein_polar_parts(st)?,
        None => Vec::new(),
    };
    let fe = FunctionalEquationData {
        level: table.conductor,
        nebentypus: nebentypus.lift(table.conductor),
        parity: eps,
        gamma_shifts: f_profile.quotient_gamma,
        root_constant: root_constant_finite,
        dual,
        polar_parts,
    };
    fe.validate()?;
    Ok(fe)
}

/// The Dirichlet character mod N agreeing with det φ(Frob_p) = (−1)^d·c_d
/// at every good prime of the table, c_d being the top coefficient of F_p.
pub fn determinant_character(table: &EulerFactorTable) -> Result<DirichletCharacter, ArtinError> {
    let dets: Vec<(u64, Complex64)> = table
        .good_primes()
        .into_iter()
        .filter_map(|p| {
            let f = &table.factors[&p];
            let sign = if table.dimension.is_multiple_of(2) { 1.0 } else { -1.0 };
            f.get(table.dimension).map(|c| (p, sign * c))
        })
        .collect();
    let chars = enumerate_characters(table.conductor).map_err(LfunError::from)?;
    chars
        .into_iter()
        .find(|chi| dets.iter().all(|&(p, d)| (chi.at(p as i64) - d).norm() < ROOT_TOL))
        .ok_or_else(|| ArtinError::HypothesisViolation(format!("no character mod {} matches det φ", table.conductor)))
}

/// FE data for Λ(s,φ) itself: gamma shifts 0 (p times) and 1 (m times),
/// parity 0 and root constant W(φ). When φ contains the trivial
/// representation and the quotient factors as L(s,χ₁)L(s,χ₂), the poles of
/// ξ(s)Λ(s,χ₁)Λ(s,χ₂) at 0 and 1 are attached; otherwise Λ is taken entire.
pub fn artin_fe(
    table: &EulerFactorTable,
    length: usize,
    root_number: ComplexValue,
    nebentypus: &DirichletCharacter,
) -> Result<(CoefficientSeries, FunctionalEquationData), ArtinError> {
    let modulus = root_number.abs();
    if (modulus - 1.0).abs() > 1e-9 {
        return Err(ArtinError::NotUnitModulus(modulus));
    }
    let series = expand_coefficients(table, length)?;
    let dual = expand_coefficients(&table.contragredient(), length)?;
    let mut gamma_shifts = vec![0; table.p_plus];
    gamma_shifts.extend(std::iter::repeat_n(1, table.m_minus));
    let mut polar_parts = Vec::new();
    if !primitivity_proxy(table, table.factors.keys().copied().max().unwrap_or(0)).0 {
        let q = quotient_profile(table, length)?;
        if q.coefficients.structure.is_none() {
            return Err(ArtinError::HypothesisViolation(
                "φ contains the trivial representation but its quotient is not a known product".into(),
            ));
        }
        let qfe = FunctionalEquationData {
            level: table.conductor,
            nebentypus: nebentypus.lift(table.conductor),
            parity: q.epsilon.unwrap_or(0),
            gamma_shifts: q.quotient_gamma.clone(),
            root_constant: ComplexValue::ONE,
            dual: q.coefficients.clone(),
            polar_parts: Vec::new(),
        };
        let at = |s: f64| crate::lfun::eval_completed(&q.coefficients, &qfe, None, ComplexValue::real(s));
        // ξ(s) = −1/s + … at 0 and 1/(s−1) + … at 1
        let (v0, v1) = (at(0.0)?, at(1.0)?);
        polar_parts.push(PolarPart { point: 0.0, coeffs: vec![-v0] });
        polar_parts.push(PolarPart { point: 1.0, coeffs: vec![v1] });
    }
    let fe = FunctionalEquationData {
        level: table.conductor,
        nebentypus: nebentypus.lift(table.conductor),
        parity: 0,
        gamma_shifts,
        root_constant: root_number,
        dual,
        polar_parts,
    };
    fe.validate()?;
    Ok((series, fe))
}

/// Where Euler-factor documents come from.
#[derive(Debug, Clone, PartialEq)]
pub struct LmfdbClient {
    pub base_url: String,
    pub cache_dir: PathBuf,
    pub offline: bool,
}

pub const DEFAULT_LMFDB_URL: &str = "https://www.lmfdb.org";

impl LmfdbClient {
    /// Reads TWISTLAB_LMFDB_URL and TWISTLAB_CACHE_DIR, defaulting to the
    /// public site and ./data/cache.
    pub fn from_env(offline: bool) -> Self {
        LmfdbClient {
            base_url: std::env::var("TWISTLAB_LMFDB_URL").unwrap_or_else(|_| DEFAULT_LMFDB_URL.to_string()),
            cache_dir: std::env::var("TWISTLAB_CACHE_DIR")
                .map(PathBuf::from)
                .unwrap_or_else(|_| PathBuf::from("data/cache")),
            offline,
        }
    }

    pub fn cache_path(&self, label: &str) -> PathBuf {
        self.cache_dir.join(format!("{label}.json"))
    }

    /// The Euler-factor document for `label`, restricted to primes up to
    /// `prime_bound`. Online fetches are converted and written to the cache;
    /// offline mode reads only the cache. Both paths serialize the same way.
    pub fn fetch(&self, label: &str, prime_bound: u64) -> Result<Vec<u8>, ArtinError> {
        if !valid_label(label) {
            return Err(ArtinError::UnknownLabel(label.to_string()));
        }
        let path = self.cache_path(label);
        let full = if self.offline {
            let bytes = std::fs::read(&path).map_err(|_| ArtinError::CacheMiss(label.to_string()))?;
            ingest_euler_factors(&bytes)?
        } else {
            let table = self.download(label)?;
            write_cache(&path, &table)?;
            table
        };
        serialize(&full.truncated(prime_bound))
    }

    fn download(&self, label: &str) -> Result<EulerFactorTable, ArtinError> {
        let url = format!(
            "{}/api/lfunc_lfunctions/?origin=ArtinRepresentation/{}&_format=json",
            self.base_url.trim_end_matches('/'),
            label
        );
        let body = match ureq::get(&url).call() {
            Ok(resp) => resp.into_string().map_err(|e| ArtinError::NetworkError(e.to_string()))?,
            Err(ureq::Error::Status(404, _)) => return Err(ArtinError::UnknownLabel(label.to_string())),
            Err(e) => return Err(ArtinError::NetworkError(e.to_string())),
        };
        let raw: Value = serde_json::from_str(&body).map_err(|e| schema(format!("LMFDB response: {e}")))?;
        convert_lmfdb(label, &raw)
    }
}

/// Labels look like dim.conductor.NtK.a.b, e.g. 3.229.4t5.a.a.
pub fn valid_label(label: &str) -> bool {
    let parts: Vec<&str> = label.split('.').collect();
    if parts.len() != 5 {
        return false;
    }
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let letters = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_lowercase());
    let group = parts[2].split_once('t').is_some_and(|(n, t)| digits(n) && digits(t));
    digits(parts[0]) && digits(parts[1]) && group && letters(parts[3]) && letters(parts[4])
}

/// Converts an LMFDB L-function record into our schema. Reads `degree`,
/// `conductor`, `mu_real` (0 per Γ_R(s), 1 per Γ_R(s+1)), `bad_primes`,
/// `euler_factors` (integer polynomials for consecutive primes) and, when
/// present, `sign_arg` (root number as a fraction of a turn).
pub fn convert_lmfdb(label: &str, raw: &Value) -> Result<EulerFactorTable, ArtinError> {
    let rec = raw
        .get("data")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("LMFDB response has no data list"))?
        .first()
        .ok_or_else(|| ArtinError::UnknownLabel(label.to_string()))?;
    let dimension = get_uint(rec, "degree")? as usize;
    let conductor = get_uint(rec, "conductor")?;
    let mu: Vec<u64> = rec
        .get("mu_real")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("missing mu_real"))?
        .iter()
        .map(|v| v.as_u64().ok_or_else(|| schema("mu_real must be integers")))
        .collect::<Result<_, _>>()?;
    let p_plus = mu.iter().filter(|&&m| m == 0).count();
    let m_minus = mu.len() - p_plus;
    let bad_primes: Vec<u64> = rec
        .get("bad_primes")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("missing bad_primes"))?
        .iter()
        .map(|v| v.as_u64().ok_or_else(|| schema("bad_primes must be integers")))
        .collect::<Result<_, _>>()?;
    let polys = rec.get("euler_factors").and_then(Value::as_array).ok_or_else(|| schema("missing euler_factors"))?;
    let mut doc_factors = Map::new();
    let mut p = 1u64;
    for poly in polys {
        p += 1;
        while !is_prime(p) {
            p += 1;
        }
        let coeffs = poly
            .as_array()
            .ok_or_else(|| schema("euler factor must be a list"))?
            .iter()
            .map(|c| {
                c.as_f64().map(|x| json!([x, 0.0])).ok_or_else(|| schema("euler factor coefficients must be numbers"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        doc_factors.insert(p.to_string(), Value::Array(coeffs));
    }
    let mut doc = json!({
        "dimension": dimension,
        "conductor": conductor,
        "p_plus": p_plus,
        "m_minus": m_minus,
        "bad_primes": bad_primes,
        "factors": Value::Object(doc_factors),
        "label": label,
    });
    if let Some(arg) = rec.get("sign_arg").and_then(Value::as_f64) {
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * arg);
        doc["root_number"] = json!([w.re, w.im]);
    }
    ingest_euler_factors(doc.to_string().as_bytes())
}

fn serialize(table: &EulerFactorTable) -> Result<Vec<u8>, ArtinError> {
    serde_json::to_vec(&table.to_json()).map_err(|e| schema(e.to_string()))
}

fn write_cache(path: &Path, table: &EulerFactorTable) -> Result<(), ArtinError> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| ArtinError::NetworkError(format!("cache: {e}")))?;
    }
    std::fs::write(path, serialize(table)?).map_err(|e| ArtinError::NetworkError(format!("cache: {e}")))
}

/// [`LmfdbClient::fetch`] with the client configured from the environment.
pub fn fetch_lmfdb(label: &str, prime_bound: u64, offline: bool) -> Result<Vec<u8>, ArtinError> {
    LmfdbClient::from_env(offline).fetch(label, prime_bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_repeated_factor() {
        // (1 − x)³ has a triple root at 1
        let c: Vec<Complex64> = [1.0, -3.0, 3.0, -1.0].iter().map(|&x| Complex64::new(x, 0.0)).collect();
        for r in poly_roots(&c) {
            assert!((r - 1.0).norm() < 1e-10, "{r}");
        }
        let c: Vec<Complex64> = [1.0, 0.0, 0.0, -8.0].iter().map(|&x| Complex64::new(x, 0.0)).collect();
        for r in poly_roots(&c) {
            assert!((r.norm() - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn labels() {
        assert!(valid_label("3.229.4t5.a.a"));
        assert!(!valid_label("xyz"));
        assert!(!valid_label("3.229.4x5.a.a"));
    }
}
