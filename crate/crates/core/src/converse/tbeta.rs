use super::ConverseError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

/// The first primes p ≡ u mod v (odd, p ∤ N) and the rationals p/u.
#[derive(Debug, Clone, PartialEq)]
pub struct TBetaSet {
    pub beta_num: i64,
    pub beta_den: u64,
    pub level: u64,
    pub primes: Vec<u64>,
    pub members: Vec<BigRational>,
}

impl TBetaSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn sieve(limit: usize) -> Vec<bool> {
    let mut is_p = vec![true; limit + 1];
    is_p[0] = false;
    if limit >= 1 {
        is_p[1] = false;
    }
    let mut i = 2;
    while i * i <= limit {
        if is_p[i] {
            for j in (i * i..=limit).step_by(i) {
                is_p[j] = false;
            }
        }
        i += 1;
    }
    is_p
}

/// Requires u > 0 so that the members come out increasing.
pub fn build_tbeta(u: i64, v: u64, level: u64, count: usize) -> Result<TBetaSet, ConverseError> {
    if u <= 0 || v == 0 || level == 0 || count == 0 {
        return Err(ConverseError::Invalid(format!(
            "need u > 0, v > 0, N > 0, count ≥ 1; got u={u}, v={v}, N={level}, count={count}"
        )));
    }
    if (u as u64).gcd(&v) != 1 {
        return Err(ConverseError::Invalid(format!("gcd({u}, {v}) ≠ 1")));
    }
    let r = (u as u64) % v;
    let mut limit = 1024usize;
    loop {
        let is_p = sieve(limit);
        let primes: Vec<u64> = (3..=limit as u64)
            .step_by(2)
            .filter(|&p| is_p[p as usize] && p % v == r && !level.is_multiple_of(p))
            .take(count)
            .collect();
        if primes.len() == count {
            let members = primes.iter().map(|&p| BigRational::new(BigInt::from(p), BigInt::from(u))).collect();
            return Ok(TBetaSet { beta_num: u, beta_den: v, level, primes, members });
        }
        limit *= 2;
    }
}
