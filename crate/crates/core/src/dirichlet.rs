//! Dirichlet characters as explicit value tables, Gauss sums, and the finite
//! identities relating additive twists to multiplicative ones.

use crate::value::ComplexValue;
use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::f64::consts::PI;

/// Largest modulus accepted by [`enumerate_characters`].
pub const MAX_MODULUS: u64 = 10_000;

const TABLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DirichletError {
    #[error("character mod {0} is not primitive")]
    NotPrimitive(u64),
    #[error("residue {0} is not a unit mod {1}")]
    BadResidue(i64, u64),
    #[error("modulus {0} is not supported here: {1}")]
    BadModulus(u64, String),
    #[error("invalid character table: {0}")]
    InvalidTable(String),
}

/// A Dirichlet character mod q, stored as its table of values on 0..q−1.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCharacter {
    pub modulus: u64,
    pub values: Vec<ComplexValue>,
    pub primitive: bool,
    /// 0 for even characters, 1 for odd ones.
    pub parity: u8,
}

fn unit_root(num: u64, den: u64) -> ComplexValue {
    // exact values at the quarter turns keep real characters real
    let r = num % den;
    if r == 0 {
        return ComplexValue::ONE;
    }
    if 2 * r == den {
        return ComplexValue::real(-1.0);
    }
    if 4 * r == den {
        return ComplexValue::I;
    }
    if 4 * r == 3 * den {
        return ComplexValue::new(0.0, -1.0);
    }
    let t = 2.0 * PI * r as f64 / den as f64;
    ComplexValue::new(t.cos(), t.sin())
}

/// e^{2πi a/q}.
pub fn e_frac(a: i64, q: u64) -> Complex64 {
    unit_root(a.rem_euclid(q as i64) as u64, q).z()
}

/// cos^{(r)}, the r-th derivative of cos.
pub fn cos_deriv(r: u32, x: f64) -> f64 {
    match r % 4 {
        0 => x.cos(),
        1 => -x.sin(),
        2 => -x.cos(),
        _ => x.sin(),
    }
}

/// cos^{(r)}(2π a/q) with exact zeros and signs at the quarter turns.
pub fn cos_deriv_frac(r: u32, a: i64, q: u64) -> f64 {
    let e = e_frac(a, q);
    match r % 4 {
        0 => e.re,
        1 => -e.im,
        2 => -e.re,
        _ => e.im,
    }
}

pub(crate) fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factor(n) == vec![(n, 1)]
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn primitive_root_prime_power(p: u64, k: u32) -> u64 {
    let phi_p = p - 1;
    let ls: Vec<u64> = factor(phi_p).into_iter().map(|(l, _)| l).collect();
    let g = (2..p).find(|&g| ls.iter().all(|&l| pow_mod(g, phi_p / l, p) != 1)).unwrap_or(1);
    if k == 1 {
        return g;
    }
    let p2 = p * p;
    if pow_mod(g, phi_p, p2) != 1 {
        g
    } else {
        g + p
    }
}

/// x ≡ r (mod m), x ≡ 1 (mod q/m), for coprime m and q/m.
fn crt_lift(r: u64, m: u64, q: u64) -> u64 {
    let rest = q / m;
    (0..m).map(|t| 1 + t * rest).find(|x| x % m == r % m).unwrap_or(1) % q
}

/// Generators of (Z/q)^× with their orders, one cyclic factor each.
fn unit_group_generators(q: u64) -> Vec<(u64, u64)> {
    let mut gens = Vec::new();
    for (p, k) in factor(q) {
        let pk = p.pow(k);
        if p == 2 {
            if k >= 2 {
                gens.push((crt_lift(pk - 1, pk, q), 2));
            }
            if k >= 3 {
                gens.push((crt_lift(5, pk, q), pk / 4));
            }
        } else {
            let g = primitive_root_prime_power(p, k);
            gens.push((crt_lift(g, pk, q), pk / p * (p - 1)));
        }
    }
    gens
}

/// Exponent vector of every unit mod q with respect to `gens`; `None` for non-units.
fn discrete_log_table(q: u64, gens: &[(u64, u64)]) -> Vec<Option<Vec<u64>>> {
    let mut table = vec![None; q as usize];
    // walk the product of cyclic groups in mixed radix
    let mut elems: Vec<(u64, Vec<u64>)> = vec![(1 % q, vec![0; gens.len()])];
    for (i, &(g, ord)) in gens.iter().enumerate() {
        let mut next = Vec::with_capacity(elems.len() * ord as usize);
        for (x, ex) in &elems {
            let mut y = *x;
            for e in 0..ord {
                let mut ev = ex.clone();
                ev[i] = e;
                next.push((y, ev));
                y = y * g % q;
            }
        }
        elems = next;
    }
    for (x, ex) in elems {
        table[x as usize] = Some(ex);
    }
    table
}

impl DirichletCharacter {
    /// Builds a character from its value table, checking the invariants.
    pub fn from_values(values: Vec<ComplexValue>) -> Result<Self, DirichletError> {
        let q = values.len() as u64;
        if q == 0 {
            return Err(DirichletError::InvalidTable("empty table".into()));
        }
        for (n, v) in values.iter().enumerate() {
            let unit = (n as u64).gcd(&q) == 1;
            if unit && (v.abs() - 1.0).abs() > TABLE_TOL {
                return Err(DirichletError::InvalidTable(format!("|ψ({n})| ≠ 1")));
            }
            if !unit && v.abs() > TABLE_TOL {
                return Err(DirichletError::InvalidTable(format!("ψ({n}) ≠ 0 at a non-unit")));
            }
        }
        for m in 0..q as usize {
            for n in m..q as usize {
                let lhs = values[m * n % q as usize].z();
                let rhs = values[m].z() * values[n].z();
                if (lhs - rhs).norm() > TABLE_TOL {
                    return Err(DirichletError::InvalidTable(format!("not multiplicative at ({m}, {n})")));
                }
            }
        }
        Ok(Self::assemble(q, values))
    }

    fn assemble(q: u64, values: Vec<ComplexValue>) -> Self {
        let last = values[(q - 1) as usize];
        let parity = if q > 2 && last.re < 0.0 { 1 } else { 0 };
        let mut c = DirichletCharacter { modulus: q, values, primitive: false, parity };
        c.primitive = c.conductor() == q;
        c
    }

    pub fn principal(q: u64) -> Self {
        let values = (0..q).map(|n| if n.gcd(&q) == 1 { ComplexValue::ONE } else { ComplexValue::ZERO }).collect();
        Self::assemble(q, values)
    }

    pub fn trivial() -> Self {
        Self::principal(1)
    }

    /// ψ(n) for any integer n.
    pub fn value(&self, n: i64) -> ComplexValue {
        self.values[n.rem_euclid(self.modulus as i64) as usize]
    }

    pub fn at(&self, n: i64) -> Complex64 {
        self.value(n).z()
    }

    pub fn conj(&self) -> Self {
        DirichletCharacter { values: self.values.iter().map(|v| v.conj()).collect(), ..self.clone() }
    }

    pub fn is_principal(&self) -> bool {
        self.values.iter().all(|v| v.abs() < TABLE_TOL || (v.z() - 1.0).norm() < TABLE_TOL)
    }

    /// ψ(−1) as ±1.
    pub fn sign(&self) -> f64 {
        if self.parity == 1 {
            -1.0
        } else {
            1.0
        }
    }

    /// Smallest d | q such that ψ is trivial on units ≡ 1 mod d.
    pub fn conductor(&self) -> u64 {
        let q = self.modulus;
        let mut divisors: Vec<u64> = (1..=q).filter(|d| q.is_multiple_of(*d)).collect();
        divisors.sort_unstable();
        for d in divisors {
            let induced = (0..q)
                .filter(|n| n % d == 1 % d && n.gcd(&q) == 1)
                .all(|n| (self.values[n as usize].z() - 1.0).norm() < TABLE_TOL);
            if induced {
                return d;
            }
        }
        q
    }

    /// The primitive character inducing this one.
    pub fn primitive_part(&self) -> Self {
        let d = self.conductor();
        if d == self.modulus {
            return self.clone();
        }
        let q = self.modulus;
        let values = (0..d)
            .map(|r| {
                if r.gcd(&d) != 1 {
                    return ComplexValue::ZERO;
                }
                // any unit mod q reducing to r mod d
                let n = (0..q / d).map(|t| r + t * d).find(|n| n.gcd(&q) == 1).expect("unit lift exists");
                self.values[n as usize]
            })
            .collect();
        Self::assemble(d, values)
    }

    /// The character n ↦ ψ(n)φ(n) modulo lcm of the two moduli.
    pub fn product(&self, other: &Self) -> Self {
        let q = self.modulus.lcm(&other.modulus);
        let values = (0..q as i64).map(|n| self.value(n) * other.value(n)).map(|v| v.with_err(0.0)).collect();
        Self::assemble(q, values)
    }

    /// The same character viewed modulo a multiple `m` of its modulus.
    pub fn lift(&self, m: u64) -> Self {
        assert!(m.is_multiple_of(self.modulus), "lift target {m} not a multiple of {}", self.modulus);
        let values = (0..m).map(|n| if n.gcd(&m) == 1 { self.value(n as i64) } else { ComplexValue::ZERO }).collect();
        Self::assemble(m, values)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("character serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, DirichletError> {
        Self::deserialize(v).map_err(|e| DirichletError::InvalidTable(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct CharacterWire {
    modulus: u64,
    values: Vec<[f64; 2]>,
}

impl Serialize for DirichletCharacter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CharacterWire { modulus: self.modulus, values: self.values.iter().map(|v| [v.re, v.im]).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DirichletCharacter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = CharacterWire::deserialize(d)?;
        if w.values.len() as u64 != w.modulus {
            return Err(serde::de::Error::custom(format!("{} values for modulus {}", w.values.len(), w.modulus)));
        }
        DirichletCharacter::from_values(w.values.into_iter().map(|[re, im]| ComplexValue::new(re, im)).collect())
            .map_err(serde::de::Error::custom)
    }
}

/// All φ(q) characters mod q, principal character first.
pub fn enumerate_characters(q: u64) -> Result<Vec<DirichletCharacter>, DirichletError> {
    if q == 0 || q > MAX_MODULUS {
        return Err(DirichletError::BadModulus(q, format!("must lie in 1..={MAX_MODULUS}")));
    }
    let gens = unit_group_generators(q);
    let logs = discrete_log_table(q, &gens);
    let total: u64 = gens.iter().map(|g| g.1).product();
    let mut out = Vec::with_capacity(total as usize);
    for idx in 0..total {
        // mixed-radix digits j_i of idx select the character
        let mut rest = idx;
        let js: Vec<u64> = gens
            .iter()
            .map(|&(_, ord)| {
                let j = rest % ord;
                rest /= ord;
                j
            })
            .collect();
        let values = logs
            .iter()
            .map(|l| match l {
                None => ComplexValue::ZERO,
                Some(ex) => {
                    // Σ j_i e_i / ord_i as a single fraction over lcm of orders
                    let big = gens.iter().fold(1u64, |acc, g| acc.lcm(&g.1));
                    let num: u64 = js.iter().zip(ex).zip(&gens).map(|((j, e), g)| j * e % g.1 * (big / g.1)).sum();
                    unit_root(num % big, big)
                }
            })
            .collect();
        out.push(DirichletCharacter::assemble(q, values));
    }
    Ok(out)
}

/// Primitive characters mod q.
pub fn primitive_characters(q: u64) -> Result<Vec<DirichletCharacter>, DirichletError> {
    Ok(enumerate_characters(q)?.into_iter().filter(|c| c.primitive).collect())
}

/// τ(ψ) = Σ_a ψ(a) e^{2πi a/q}.
pub fn gauss_sum(psi: &DirichletCharacter) -> ComplexValue {
    let q = psi.modulus;
    let mut s = Complex64::new(0.0, 0.0);
    for a in 0..q {
        s += psi.values[a as usize].z() * e_frac(a as i64, q);
    }
    ComplexValue::from_complex(s, 4.0 * f64::EPSILON * q as f64)
}

/// The n-th coefficient of (−i)^{ε_ψ}(τ(ψ)/q) Σ_b ψ̄(−b) cos^{(ε_ψ)}(2πnb/q),
/// which reproduces ψ(n) for primitive ψ.
pub fn coeff_char_from_additive(psi: &DirichletCharacter, n: i64) -> Result<ComplexValue, DirichletError> {
    if !psi.primitive {
        return Err(DirichletError::NotPrimitive(psi.modulus));
    }
    let q = psi.modulus;
    let r = psi.parity as u32;
    let mut s = Complex64::new(0.0, 0.0);
    for b in 0..q as i64 {
        let v = psi.at(-b).conj();
        if v.norm() == 0.0 {
            continue;
        }
        s += v * cos_deriv_frac(r, n.rem_euclid(q as i64) * b, q);
    }
    let pre = Complex64::new(0.0, -1.0).powu(r) * gauss_sum(psi).z() / q as f64;
    Ok(ComplexValue::from_complex(pre * s, 8.0 * f64::EPSILON * q as f64))
}

/// The n-th coefficient of the expansion of cos^{(r)}(2πn a/q) over characters
/// mod a prime q:
///
/// (i^r/(q−1)) Σ_{ψ≠ψ₀, ψ(−1)=(−1)^r} ψ(a)τ(ψ̄)ψ(n) + [r even]·(1 − q/(q−1)·ψ₀(n)).
pub fn coeff_additive_from_char(alpha_num: i64, q: u64, r: u32, n: i64) -> Result<ComplexValue, DirichletError> {
    if q <= 1 || !is_prime(q) {
        return Err(DirichletError::BadModulus(q, "additive-to-character expansion needs a prime modulus".into()));
    }
    if alpha_num.rem_euclid(q as i64) == 0 {
        return Err(DirichletError::BadResidue(alpha_num, q));
    }
    let want_sign = if r.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut s = Complex64::new(0.0, 0.0);
    for psi in enumerate_characters(q)?.into_iter().skip(1) {
        if psi.sign() != want_sign {
            continue;
        }
        s += psi.at(alpha_num) * gauss_sum(&psi.conj()).z() * psi.at(n);
    }
    let mut v = Complex64::new(0.0, 1.0).powu(r % 2) * s / (q - 1) as f64;
    if r.is_multiple_of(2) {
        let p0 = if n.rem_euclid(q as i64) == 0 { 0.0 } else { 1.0 };
        v += 1.0 - q as f64 / (q - 1) as f64 * p0;
        if r % 4 == 2 {
            v = -v;
        }
    } else if r % 4 == 3 {
        v = -v;
    }
    Ok(ComplexValue::from_complex(v, 16.0 * f64::EPSILON * q as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_groups() {
        assert_eq!(enumerate_characters(1).unwrap().len(), 1);
        let c5 = enumerate_characters(5).unwrap();
        assert_eq!(c5.len(), 4);
        assert_eq!(c5.iter().filter(|c| c.primitive).count(), 3);
        assert!(c5[0].is_principal());
        assert_eq!(enumerate_characters(8).unwrap().len(), 4);
        assert_eq!(enumerate_characters(8).unwrap().iter().filter(|c| c.primitive).count(), 2);
        assert_eq!(enumerate_characters(24).unwrap().len(), 8);
        assert_eq!(
            enumerate_characters(0),
            Err(DirichletError::BadModulus(0, format!("must lie in 1..={MAX_MODULUS}")))
        );
    }

    #[test]
    fn quadratic_gauss_sum_mod_5() {
        let chi = enumerate_characters(5).unwrap().into_iter().find(|c| c.values[2].re == -1.0).unwrap();
        let t = gauss_sum(&chi);
        assert!((t.re - 5f64.sqrt()).abs() < 1e-14 && t.im.abs() < 1e-14);
        assert_eq!(gauss_sum(&DirichletCharacter::trivial()).re, 1.0);
        assert_eq!(coeff_char_from_additive(&chi, 2).unwrap().re.round(), -1.0);
    }

    #[test]
    fn json_round_trip() {
        let chi = enumerate_characters(7).unwrap()[3].clone();
        let j = chi.to_json();
        assert_eq!(j["modulus"], 7);
        let back = DirichletCharacter::from_json(&j).unwrap();
        assert_eq!(back, chi);
        let bad = serde_json::json!({"modulus": 3, "values": [[0.0, 0.0], [1.0, 0.0], [0.5, 0.0]]});
        assert!(DirichletCharacter::from_json(&bad).is_err());
    }

    #[test]
    fn primitive_part_of_lift() {
        let chi = primitive_characters(5).unwrap()[0].clone();
        let lifted = chi.lift(15);
        assert!(!lifted.primitive);
        assert_eq!(lifted.conductor(), 5);
        assert_eq!(lifted.primitive_part(), chi);
    }

    #[test]
    fn additive_examples() {
        let v = coeff_additive_from_char(1, 5, 0, 1).unwrap();
        assert!((v.re - (2.0 * PI / 5.0).cos()).abs() < 1e-14);
        let v = coeff_additive_from_char(1, 3, 1, 1).unwrap();
        assert!((v.re + (2.0 * PI / 3.0).sin()).abs() < 1e-14);
        assert!(coeff_additive_from_char(1, 3, 1, 6).unwrap().abs() < 1e-15);
        assert!(coeff_additive_from_char(3, 3, 0, 1).is_err());
        assert!(coeff_additive_from_char(1, 4, 0, 1).is_err());
    }
}
