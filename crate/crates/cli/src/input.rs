use crate::report::CliError;
use serde_json::Value;
use std::path::{Path, PathBuf};
use twistlab::artin::{ingest_euler_factors, valid_label, EulerFactorTable, LmfdbClient};
use twistlab::dirichlet::enumerate_characters;
use twistlab::lfun::{CoefficientSeries, EisensteinStructure, FunctionalEquationData, TwistKind, TwistSpec};
use twistlab::ComplexValue;

/// "re" or "re,im".
pub fn parse_complex(s: &str) -> Result<ComplexValue, String> {
    let bad = || format!("expected a number or re,im, got {s:?}");
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|_| bad());
    match parts.as_slice() {
        [re] => Ok(ComplexValue::real(num(re)?)),
        [re, im] => Ok(ComplexValue::new(num(re)?, num(im)?)),
        _ => Err(bad()),
    }
}

/// Comma-separated unsigned integers.
pub fn parse_list(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| CliError::usage(format!("bad integer {t:?} in {s:?}"))))
        .collect()
}

/// A named series with its functional-equation data. Accepted forms:
/// `zeta` (a_n = d(n)), `pair:Q1:I1:Q2:I2` (L(s,χ₁)L(s,χ₂) with χ_k the
/// I_k-th character mod Q_k in enumeration order), or a path to a functional-equation
/// JSON document.
pub fn load_series(spec: &str, length: usize) -> Result<(String, CoefficientSeries, FunctionalEquationData), CliError> {
    if spec == "zeta" {
        let s = CoefficientSeries::zeta_pair(length);
        let fe = FunctionalEquationData::eisenstein(&s)?;
        return Ok(("zeta".into(), s, fe));
    }
    if let Some(rest) = spec.strip_prefix("pair:") {
        let nums = rest
            .split(':')
            .map(|t| t.parse::<u64>().map_err(|_| CliError::usage(format!("bad pair spec {spec:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let [q1, i1, q2, i2] = nums[..] else {
            return Err(CliError::usage(format!("pair spec needs Q1:I1:Q2:I2, got {spec:?}")));
        };
        let pick = |q: u64, i: u64| {
            enumerate_characters(q)?
                .into_iter()
                .nth(i as usize)
                .ok_or_else(|| CliError::usage(format!("no character of index {i} mod {q}")))
        };
        let st = EisensteinStructure::new(pick(q1, i1)?, pick(q2, i2)?, 1.0);
        let s = CoefficientSeries::eisenstein(st, length);
        let fe = FunctionalEquationData::eisenstein(&s)?;
        return Ok((spec.to_string(), s, fe));
    }
    let bytes = std::fs::read(spec).map_err(|e| CliError::new("IoError", format!("{spec}: {e}")))?;
    let doc: Value =
        serde_json::from_slice(&bytes).map_err(|e| CliError::new("SchemaError", format!("{spec}: {e}")))?;
    Ok(FunctionalEquationData::from_json(&doc)?)
}

/// `char:Q:I`, `cos:A:Q:R` or `sin:A:Q`.
pub fn parse_twist(spec: &str) -> Result<TwistSpec, CliError> {
    let bad = || CliError::usage(format!("bad twist spec {spec:?}"));
    let parts: Vec<&str> = spec.split(':').collect();
    let int = |t: &str| t.parse::<i64>().map_err(|_| bad());
    let uint = |t: &str| t.parse::<u64>().map_err(|_| bad());
    match parts.as_slice() {
        ["char", q, i] => {
            let (q, i) = (uint(q)?, uint(i)?);
            let psi = enumerate_characters(q)?.into_iter().nth(i as usize).ok_or_else(bad)?;
            Ok(TwistSpec::character(psi))
        }
        ["cos", a, q, r] => Ok(TwistSpec::additive(int(a)?, uint(q)?, TwistKind::Cos(uint(r)? as u32))?),
        ["sin", a, q] => Ok(TwistSpec::additive(int(a)?, uint(q)?, TwistKind::Sin)?),
        _ => Err(bad()),
    }
}

pub struct Source {
    pub offline: bool,
    pub cache_dir: Option<PathBuf>,
}

impl Source {
    fn client(&self) -> LmfdbClient {
        let mut c = LmfdbClient::from_env(self.offline);
        if let Some(d) = &self.cache_dir {
            c.cache_dir = d.clone();
        }
        c
    }

    /// Reads an Euler-factor table from a file, or fetches it by LMFDB label
    /// through the cache.
    pub fn table(&self, artin: &str, prime_bound: u64) -> Result<EulerFactorTable, CliError> {
        let path = Path::new(artin);
        if path.is_file() {
            let bytes = std::fs::read(path).map_err(|e| CliError::new("IoError", format!("{artin}: {e}")))?;
            return Ok(ingest_euler_factors(&bytes)?.truncated(prime_bound));
        }
        if !valid_label(artin) {
            return Err(CliError::new("IoError", format!("{artin}: no such file, and not an LMFDB label")));
        }
        let bytes = self.client().fetch(artin, prime_bound)?;
        Ok(ingest_euler_factors(&bytes)?)
    }
}

/// Zero ordinates from a JSON array, an object with a "zeros" array, or a
/// report of the zeros command.
pub fn load_zeros(path: &str) -> Result<Vec<f64>, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::new("IoError", format!("{path}: {e}")))?;
    let doc: Value =
        serde_json::from_slice(&bytes).map_err(|e| CliError::new("SchemaError", format!("{path}: {e}")))?;
    let arr = doc
        .as_array()
        .or_else(|| doc.get("zeros").and_then(Value::as_array))
        .or_else(|| doc.pointer("/results/zeros").and_then(Value::as_array))
        .ok_or_else(|| CliError::new("SchemaError", format!("{path}: no zeros array")))?;
    arr.iter()
        .map(|v| v.as_f64().ok_or_else(|| CliError::new("SchemaError", format!("{path}: non-numeric zero {v}"))))
        .collect()
}
