use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use std::f64::consts::PI;
use twistlab::converse::*;
use twistlab::dirichlet::*;
use twistlab::lfun::*;
use twistlab::quad::rectangle_contour;
use twistlab::specfun::{gamma_r_c, hurwitz_zeta_c, EULER_GAMMA};
use twistlab::ComplexValue;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn odd_mod5() -> DirichletCharacter {
    enumerate_characters(5).unwrap().into_iter().find(|c| (c.at(2) - Complex64::i()).norm() < 1e-12).unwrap()
}

fn level25_pair(len: usize) -> CoefficientSeries {
    let chi = odd_mod5();
    CoefficientSeries::eisenstein(EisensteinStructure::new(chi.clone(), chi.conj(), 1.0), len)
}

fn trial_division_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn fact(k: usize) -> f64 {
    (1..=k).map(|j| j as f64).product()
}

/// (1/2)_j.
fn half_poch(j: usize) -> f64 {
    (0..j).map(|i| 0.5 + i as f64).product()
}

/// Ψ at positive integers and half-integers by the recurrence Ψ(x+1) = Ψ(x) + 1/x
/// from Ψ(1) = −γ and Ψ(1/2) = −γ − 2 log 2, also stepping down to negative
/// half-integers.
fn psi_recurrence(x2: i64) -> f64 {
    // x = x2 / 2
    let (mut x, mut v) = if x2 % 2 == 0 { (1.0, -EULER_GAMMA) } else { (0.5, -EULER_GAMMA - 2.0 * 2f64.ln()) };
    let target = x2 as f64 / 2.0;
    while x < target {
        v += 1.0 / x;
        x += 1.0;
    }
    while x > target {
        x -= 1.0;
        v -= 1.0 / x;
    }
    v
}

/// c_j = [x^{t0}] L_j(x) for the Lagrange basis on x_i = 1/λ_i.
fn lagrange_weights(lambdas: &[BigRational], t0: usize) -> Vec<BigRational> {
    let x: Vec<BigRational> = lambdas.iter().map(|l| l.recip()).collect();
    (0..x.len())
        .map(|j| {
            let mut poly = vec![BigRational::one()];
            let mut denom = BigRational::one();
            for (i, xi) in x.iter().enumerate() {
                if i == j {
                    continue;
                }
                let mut next = vec![BigRational::zero(); poly.len() + 1];
                for (k, p) in poly.iter().enumerate() {
                    next[k + 1] += p;
                    next[k] -= p * xi;
                }
                poly = next;
                denom *= &x[j] - xi;
            }
            &poly[t0] / denom
        })
        .collect()
}

// ---------- T_β ----------

#[test]
fn tbeta_examples() {
    let t = build_tbeta(1, 4, 1, 3).unwrap();
    assert_eq!(t.primes, vec![5, 13, 17]);
    assert_eq!(t.members, vec![rat(5, 1), rat(13, 1), rat(17, 1)]);
    let t = build_tbeta(2, 5, 1, 2).unwrap();
    assert_eq!(t.primes, vec![7, 17]);
    assert_eq!(t.members, vec![rat(7, 2), rat(17, 2)]);
}

#[test]
fn tbeta_matches_trial_division() {
    for &(u, v, n) in &[(1i64, 4u64, 1u64), (3, 4, 15), (2, 7, 35), (1, 1, 6), (5, 12, 11)] {
        let t = build_tbeta(u, v, n, 40).unwrap();
        let expected: Vec<u64> =
            (3u64..).filter(|&p| trial_division_prime(p) && p % v == (u as u64) % v && n % p != 0).take(40).collect();
        assert_eq!(t.primes, expected, "u={u} v={v} N={n}");
        assert!(t.members.windows(2).all(|w| w[0] < w[1]));
    }
    // a long sieve run
    let t = build_tbeta(1, 97, 1, 300).unwrap();
    assert!(t.primes.iter().all(|&p| trial_division_prime(p) && p % 97 == 1));
    assert!(build_tbeta(2, 4, 1, 3).is_err());
    assert!(build_tbeta(1, 4, 1, 0).is_err());
}

#[test]
fn lambda_scaling_preserves_additive_twists() {
    // λβ = (p/u)(u/v) = p/v ≡ u/v mod 1, so the twisted coefficients agree
    let series = CoefficientSeries::zeta_pair(100);
    for &(u, v) in &[(1i64, 4u64), (3, 7), (2, 5)] {
        let t = build_tbeta(u, v, 1, 6).unwrap();
        for kind in [TwistKind::Cos(0), TwistKind::Cos(1), TwistKind::Cos(2), TwistKind::Sin] {
            let base = twist_coefficients(&series, &TwistSpec::additive(u, v, kind).unwrap());
            for &p in &t.primes {
                let scaled = twist_coefficients(&series, &TwistSpec::additive(p as i64, v, kind).unwrap());
                for n in 0..100 {
                    assert!(base.coeffs[n].dist(scaled.coeffs[n]) < 1e-12, "u={u} v={v} p={p} n={}", n + 1);
                }
            }
        }
    }
}

// ---------- Vandermonde ----------

#[test]
fn vandermonde_examples() {
    let w = solve_vandermonde(&[rat(2, 1), rat(3, 1)], 0).unwrap();
    assert_eq!(w.weights, vec![rat(-2, 1), rat(3, 1)]);
    let w = solve_vandermonde(&[rat(7, 3)], 0).unwrap();
    assert_eq!(w.weights, vec![rat(1, 1)]);
    assert!(matches!(solve_vandermonde(&[rat(2, 1), rat(2, 1)], 0), Err(ConverseError::DuplicateNode(_))));
    assert!(matches!(solve_vandermonde(&[rat(2, 1), rat(3, 1)], 2), Err(ConverseError::T0OutOfRange { t0: 2, m: 2 })));
}

#[test]
fn vandermonde_exact_and_matches_lagrange() {
    for m in 1..=12 {
        let t = build_tbeta(2, 5, 3, m).unwrap();
        for t0 in 0..m {
            let w = solve_vandermonde(&t.members, t0).unwrap();
            assert!(w.is_exact(), "M={m} t0={t0}");
            assert_eq!(w.weights, lagrange_weights(&t.members, t0), "M={m} t0={t0}");
        }
    }
}

#[test]
fn extended_vandermonde_hits_log_target() {
    let pool = build_tbeta(1, 4, 1, 20).unwrap();
    let lambdas: Vec<BigRational> = pool.members[..6].to_vec();
    let rest = TBetaSet { members: pool.members[6..].to_vec(), primes: pool.primes[6..].to_vec(), ..pool.clone() };
    for z in [ComplexValue::ZERO, ComplexValue::new(1.0, 2.0)] {
        for t0 in 0..4 {
            let w = solve_vandermonde_extended(&lambdas, t0, z, &rest).unwrap();
            assert!(w.is_exact());
            let e = w.extension.as_ref().unwrap();
            assert!(e.determinant > 1e-12);
            assert!(!lambdas.contains(&e.lambda0));
            let res = w.log_residual().unwrap();
            assert!(res <= 1e-10, "z={z} t0={t0} residual {res}");
            // direct substitution oracle
            let cw = w.complex_weights();
            let nodes = w.nodes();
            for t in 0..lambdas.len() {
                let s: Complex64 = nodes
                    .iter()
                    .zip(&cw)
                    .map(|(l, c)| c * (1.0 / num_traits::ToPrimitive::to_f64(l).unwrap()).powi(t as i32))
                    .sum();
                let target = if t == t0 { 1.0 } else { 0.0 };
                assert!((s - target).norm() < 1e-8 * (1.0 + w.max_weight()), "t={t} sum {s}");
            }
        }
    }
    let empty = TBetaSet { members: vec![rat(1, 1)], primes: vec![], ..pool };
    assert!(matches!(
        solve_vandermonde_extended(&lambdas, 0, ComplexValue::ONE, &empty),
        Err(ConverseError::PoolExhausted)
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn vandermonde_residual_exactly_zero(nums in proptest::collection::btree_set(1i64..200, 1..8), den in 1i64..9, t0_seed in 0usize..8) {
        let lambdas: Vec<BigRational> = nums.iter().map(|&n| rat(n, den)).collect();
        let mut uniq = lambdas.clone();
        uniq.sort();
        uniq.dedup();
        prop_assume!(uniq.len() == lambdas.len());
        let t0 = t0_seed % lambdas.len();
        let w = solve_vandermonde(&lambdas, t0).unwrap();
        prop_assert!(w.is_exact());
    }
}

// ---------- G_k, J_k ----------

#[test]
fn g_factor_examples() {
    let g = g_factor(GJFactors::new(1, 0).unwrap(), c(1.0, 0.0));
    assert!((g - 1.0 / PI.sqrt()).norm() < 1e-15);
    for j in 0..6 {
        assert!(g_factor(GJFactors::new(0, j).unwrap(), c(1.0, 0.0)).norm() < 1e-15);
    }
    // G_j(s) ≈ (1/2)_j (j−1)!/(2√π) · s near 0 for ε = 1
    for j in 1..6 {
        let h = 1e-7;
        let slope = g_factor(GJFactors::new(1, j).unwrap(), c(h, 0.0)) / h;
        let expected = half_poch(j) * fact(j - 1) / (2.0 * PI.sqrt());
        assert!((slope - expected).norm() < 1e-5 * expected, "j={j}: {slope} vs {expected}");
    }
    assert!(GJFactors::new(2, 0).is_err());
}

#[test]
fn g_factor_finite_on_grid() {
    for eps in 0..2 {
        for k in [0, 1, 3, 6] {
            let gj = GJFactors::new(eps, k).unwrap();
            let mut count = 0;
            for i in 0..20 {
                for j in 0..10 {
                    let s = c(-6.0 + 12.0 * i as f64 / 19.0, -6.0 + 12.0 * j as f64 / 9.0);
                    assert!(g_factor(gj, s).is_finite(), "ε={eps} k={k} s={s}");
                    count += 1;
                }
            }
            assert_eq!(count, 200);
            // the integer points where Γ has poles
            for n in -6..=6 {
                assert!(g_factor(gj, c(n as f64, 0.0)).is_finite());
            }
        }
    }
}

#[test]
fn j_factor_examples() {
    let j = j_factor(GJFactors::new(1, 0).unwrap(), c(1.0, 0.0)).unwrap();
    assert!((j - 2.0 * 2f64.ln()).norm() < 1e-14);
    assert!(matches!(j_factor(GJFactors::new(0, 0).unwrap(), c(1.0, 0.0)), Err(ConverseError::DigammaPole(_))));
    // ε = 1, k = 2, s = 3: arguments 4, 7/2, 3/2, −1/2
    let expected =
        2.0 * psi_recurrence(6) - psi_recurrence(8) - psi_recurrence(7) + psi_recurrence(3) - psi_recurrence(-1);
    let j = j_factor(GJFactors::new(1, 2).unwrap(), c(3.0, 0.0)).unwrap();
    assert!((j - expected).norm() < 1e-13, "{j} vs {expected}");
}

#[test]
fn jg_product_examples() {
    for j in 0..6 {
        let v = jg_product(GJFactors::new(0, j).unwrap(), c(1.0, 0.0)) * PI.sqrt();
        let expected = half_poch(j) * fact(j);
        assert!((v - expected).norm() < 1e-13 * expected.max(1.0), "j={j}: {v} vs {expected}");
    }
    let v = jg_product(GJFactors::new(1, 0).unwrap(), c(1.0, 0.0));
    assert!((v - 2.0 * 2f64.ln() / PI.sqrt()).norm() < 1e-14);
}

/// Richardson extrapolation of J_kG_k along s = p + 10^{−h}, h = 3, 4, 5.
fn numeric_limit(gj: GJFactors, p: f64) -> Complex64 {
    let d = |h: i32| {
        let s = c(p + 10f64.powi(-h), 0.0);
        j_factor(gj, s).unwrap() * g_factor(gj, s)
    };
    let (d3, d4, d5) = (d(3), d(4), d(5));
    let r1 = (10.0 * d4 - d3) / 9.0;
    let r2 = (10.0 * d5 - d4) / 9.0;
    (100.0 * r2 - r1) / 99.0
}

#[test]
fn jg_product_removable_points_match_numeric_limits() {
    let mut checked = 0;
    for eps in 0..2u8 {
        for k in 0..4 {
            let gj = GJFactors::new(eps, k).unwrap();
            for p in -4..=2 {
                if j_factor(gj, c(p as f64, 0.0)).is_ok() {
                    continue;
                }
                let lim = numeric_limit(gj, p as f64);
                let v = jg_product(gj, c(p as f64, 0.0));
                assert!((v - lim).norm() <= 1e-7 * (1.0 + lim.norm()), "ε={eps} k={k} p={p}: {v} vs {lim}");
                // and just off the point, where the jets are also used
                let off = jg_product(gj, c(p as f64 + 3e-5, 2e-5));
                let s = c(p as f64 + 3e-5, 2e-5);
                let direct = j_factor(gj, s).unwrap() * g_factor(gj, s);
                assert!((off - direct).norm() <= 1e-7 * (1.0 + direct.norm()));
                checked += 1;
            }
        }
    }
    assert!(checked >= 10, "only {checked} removable points");
}

// ---------- residue engine ----------

fn zeta_pair_fe(len: usize) -> (CoefficientSeries, FunctionalEquationData) {
    let s = CoefficientSeries::zeta_pair(len);
    let fe = FunctionalEquationData::eisenstein(&s).unwrap();
    (s, fe)
}

#[test]
fn residues_vanish_for_entire_pair() {
    let s = level25_pair(50);
    let fe = FunctionalEquationData::eisenstein(&s).unwrap();
    assert!(fe.polar_parts.is_empty());
    for k in 0..4 {
        let (i, it) = residue_integrals(&fe, GJFactors::new(1, k).unwrap(), 0.7, &[]).unwrap();
        assert_eq!(i.z(), c(0.0, 0.0));
        assert_eq!(it.z(), c(0.0, 0.0));
    }
}

#[test]
fn zeta_pair_residues_match_contour_quadrature() {
    let (s, fe) = zeta_pair_fe(10);
    for &(k, alpha) in &[(0usize, 1.0), (1, 1.0), (2, 1.0 / 3.0), (3, 2.5)] {
        let gj = GJFactors::new(0, k).unwrap();
        let (i, it) = residue_integrals(&fe, gj, alpha, &fe.polar_parts).unwrap();
        let (qi, qit) = residue_integrals_by_quadrature(&s, &fe, gj, alpha, 2000).unwrap();
        assert!((i.z() - qi).norm() <= 1e-7, "k={k} α={alpha}: 𝓘 {} vs {qi}", i.z());
        assert!((it.z() - qit).norm() <= 1e-7, "k={k} α={alpha}: 𝓘̃ {} vs {qit}", it.z());
    }
}

#[test]
fn residue_engine_requires_every_pole() {
    let (_, fe) = zeta_pair_fe(10);
    let only_one: Vec<PolarPart> = fe.polar_parts.iter().filter(|p| p.point == 1.0).cloned().collect();
    let r = residue_integrals(&fe, GJFactors::new(0, 0).unwrap(), 1.0, &only_one);
    assert!(matches!(r, Err(ConverseError::IncompletePoleData(p)) if p == 0.0));
    assert!(residue_integrals(&fe, GJFactors::new(1, 0).unwrap(), 1.0, &fe.polar_parts).is_err());
}

/// FE data carrying only the given principal parts and parity; the residue
/// engine reads nothing else.
fn synthetic_fe(parity: u8, parts: Vec<PolarPart>) -> FunctionalEquationData {
    let s = level25_pair(5);
    let mut fe = FunctionalEquationData::eisenstein(&s).unwrap();
    fe.parity = parity;
    fe.polar_parts = parts;
    fe
}

#[test]
fn simple_pole_residues_match_quadrature() {
    // Λ_f = 1/(s−1) with ε = 1: the residue theorem gives
    // 𝓘_j(α) = (−1)^j √π/(j!)² G_j(1) α^{−1/2}
    let part = PolarPart { point: 1.0, coeffs: vec![ComplexValue::ONE] };
    let fe = synthetic_fe(1, vec![part.clone()]);
    for j in 0..5 {
        for alpha in [1.0, 0.4] {
            let gj = GJFactors::new(1, j).unwrap();
            let (i, _) = residue_integrals(&fe, gj, alpha, std::slice::from_ref(&part)).unwrap();
            let f = |s: Complex64| g_factor(gj, s) * (alpha.ln() * (0.5 - s)).exp() / (s - 1.0);
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            let quad = rectangle_contour(&f, -0.5, 1.5, -2.0, 2.0, 400) * sign * PI.sqrt() / (fact(j) * fact(j));
            assert!((i.z() - quad).norm() < 1e-12, "j={j}: {} vs {quad}", i.z());
            let closed = sign * PI.sqrt() * g_factor(gj, c(1.0, 0.0)) / (fact(j) * fact(j)) / alpha.sqrt();
            assert!((i.z() - closed).norm() < 1e-14);
        }
    }
}

#[test]
fn double_pole_residue_for_even_parity() {
    // ε = 0 and a double pole at 1 only: 𝓘_j(α) = (−1)^{j+1}(1/2)_j/(2·j!) α^{−1/2} Res (s−1)Λ
    let part = PolarPart { point: 1.0, coeffs: vec![ComplexValue::new(0.3, -0.2), ComplexValue::new(1.5, 0.5)] };
    let fe = synthetic_fe(0, vec![part.clone()]);
    for j in 0..5 {
        let alpha = 1.0 / 3.0;
        let (i, it) =
            residue_integrals(&fe, GJFactors::new(0, j).unwrap(), alpha, std::slice::from_ref(&part)).unwrap();
        let sign = if j % 2 == 0 { -1.0 } else { 1.0 };
        let expected = sign * half_poch(j) / (2.0 * fact(j)) / alpha.sqrt() * part.coeffs[1].z();
        assert!((i.z() - expected).norm() < 1e-13, "j={j}: {} vs {expected}", i.z());
        // 𝓘̃ against a quadrature of the same Laurent tail
        let gj = GJFactors::new(0, j).unwrap();
        let f = |s: Complex64| {
            let lam = part.coeffs[0].z() / (s - 1.0) + part.coeffs[1].z() / ((s - 1.0) * (s - 1.0));
            lam * jg_product(gj, s) * (alpha.ln() * (0.5 - s)).exp()
        };
        let quad = rectangle_contour(&f, 0.5, 1.5, -0.5, 0.5, 200) * -sign * PI.sqrt() / (fact(j) * fact(j));
        assert!((it.z() - quad).norm() < 1e-11, "j={j}: {} vs {quad}", it.z());
    }
}

// ---------- Whittaker series and modularity ----------

/// Res_{s=0} ξ(s)² = −2c with c = lim_{s→1} (ξ(s) − 1/(s−1)), the limit taken
/// from symmetric differences and Richardson extrapolation.
fn xi_square_residue_at_zero() -> f64 {
    let xi = |s: f64| (gamma_r_c(c(s, 0.0)).unwrap() * hurwitz_zeta_c(c(s, 0.0), 1.0).unwrap().0).re;
    let avg = |h: f64| 0.5 * (xi(1.0 + h) + xi(1.0 - h));
    let (a1, a2) = (avg(2e-3), avg(1e-3));
    let cst = (4.0 * a2 - a1) / 3.0;
    -2.0 * cst
}

#[test]
fn whittaker_examples() {
    let zero = MaassData {
        series: CoefficientSeries::new(vec![ComplexValue::ZERO; 100], 0.0),
        parity: 0,
        polar_parts: vec![],
    };
    let z = MaassEvalPoint::new(0.1, 0.7).unwrap();
    assert_eq!(whittaker_series(&zero, z, 100).unwrap().z(), c(0.0, 0.0));

    // constant term at z = i: the log y part vanishes
    let (s, fe) = zeta_pair_fe(50);
    let f = MaassData::f_side(&s, &fe);
    let c0 = constant_term(&f.polar_parts, 1.0);
    let oracle = -0.25 * xi_square_residue_at_zero();
    assert!((c0 - oracle).norm() < 1e-8, "{c0} vs {oracle}");

    // parity fold: ½(a₁e^{iθ} + (−1)^ε a₁e^{−iθ})
    for eps in 0..2u8 {
        let mut coeffs = vec![ComplexValue::ZERO; 40];
        coeffs[0] = ComplexValue::new(0.7, 0.2);
        coeffs[2] = ComplexValue::new(-1.1, 0.0);
        let d = MaassData { series: CoefficientSeries::new(coeffs.clone(), 0.0), parity: eps, polar_parts: vec![] };
        let z = MaassEvalPoint::new(0.23, 0.4).unwrap();
        let v = whittaker_series(&d, z, 40).unwrap().z();
        let sign = if eps == 0 { 1.0 } else { -1.0 };
        let mut expected = c(0.0, 0.0);
        for (n, a) in [(1.0, coeffs[0].z()), (3.0, coeffs[2].z())] {
            let k = twistlab::specfun::bessel_k0(2.0 * PI * n * z.y, 1e-16).unwrap();
            let e = Complex64::from_polar(1.0, 2.0 * PI * n * z.x);
            expected += 0.5 * a * z.y.sqrt() * k * (e + sign * e.conj());
        }
        assert!((v - expected).norm() < 1e-14, "ε={eps}");
    }
    let short = MaassEvalPoint::new(0.0, 0.05).unwrap();
    assert!(matches!(whittaker_series(&f, short, 50), Err(ConverseError::TruncationInsufficient(_))));
    assert!(matches!(whittaker_series(&f, z, 51), Err(ConverseError::TruncationInsufficient(_))));
    assert!(MaassEvalPoint::new(0.0, -1.0).is_err());
}

fn zeta_points() -> Vec<MaassEvalPoint> {
    [
        (0.1, 0.8),
        (0.3, 0.6),
        (-0.2, 1.1),
        (0.45, 0.9),
        (0.0, 0.5),
        (0.25, 1.7),
        (-0.4, 0.7),
        (0.05, 2.5),
        (0.5, 0.2),
        (-0.15, 1.3),
    ]
    .iter()
    .map(|&(x, y)| MaassEvalPoint::new(x, y).unwrap())
    .collect()
}

fn level25_points() -> Vec<MaassEvalPoint> {
    [
        (0.0, 0.2),
        (0.02, 0.19),
        (-0.03, 0.21),
        (0.05, 0.2),
        (-0.05, 0.18),
        (0.01, 0.23),
        (0.04, 0.17),
        (-0.02, 0.2),
        (0.06, 0.22),
        (-0.06, 0.19),
    ]
    .iter()
    .map(|&(x, y)| MaassEvalPoint::new(x, y).unwrap())
    .collect()
}

#[test]
fn modularity_zeta_pair() {
    let (s, fe) = zeta_pair_fe(400);
    let f = MaassData::f_side(&s, &fe);
    let g = MaassData::g_side(&fe).unwrap();
    let r = check_modularity(&f, &g, 1, &zeta_points()).unwrap();
    assert!(r <= 1e-7, "residual {r}");
    let bad = MaassData { series: s.perturbed(2, c(0.1, 0.0)), ..f };
    let r = check_modularity(&bad, &g, 1, &zeta_points()).unwrap();
    assert!(r >= 1e-3, "negative control residual {r}");
}

#[test]
fn modularity_level25_pair() {
    let s = level25_pair(400);
    let fe = FunctionalEquationData::eisenstein(&s).unwrap();
    let f = MaassData::f_side(&s, &fe);
    let g = MaassData::g_side(&fe).unwrap();
    let r = check_modularity(&f, &g, 25, &level25_points()).unwrap();
    assert!(r <= 1e-6, "residual {r}");
    let bad = MaassData { series: s.perturbed(2, c(0.1, 0.0)), ..f };
    let r = check_modularity(&bad, &g, 25, &level25_points()).unwrap();
    assert!(r >= 1e-3, "negative control residual {r}");
}

// ---------- expansion identity, Mellin transform, contour ----------

#[test]
fn expansion_identity_examples() {
    let rep = check_expansion_identity(GJFactors::new(0, 0).unwrap(), c(0.6, 0.0), 1.0, &[0.2], 6).unwrap();
    assert!(rep.max_residual <= 1e-8, "{rep:?}");
    let rep = check_expansion_identity(GJFactors::new(1, 0).unwrap(), c(0.5, 1.0), 1.0, &[0.2], 6).unwrap();
    assert!(rep.max_residual <= 1e-7, "{rep:?}");
    assert!(rep.max_residual <= 10.0 * rep.remainder_bounds[0]);
    let rep = check_expansion_identity(GJFactors::new(1, 0).unwrap(), c(0.3, -0.7), 2.0, &[0.1, 0.3], 4).unwrap();
    for (r, b) in rep.residuals.iter().zip(&rep.remainder_bounds) {
        assert!(r <= &(2.0 * b), "{rep:?}");
    }
    assert!(check_expansion_identity(GJFactors::new(0, 0).unwrap(), c(0.6, 0.0), 1.0, &[1.5], 6).is_err());
}

#[test]
fn expansion_remainder_order() {
    for (eps, s) in [(0u8, c(0.6, 0.0)), (1, c(0.5, 1.0))] {
        let p = remainder_exponent(GJFactors::new(eps, 0).unwrap(), s, 1.0, 0.2, 6).unwrap();
        assert!((p - 12.5).abs() <= 0.5, "ε={eps}: fitted exponent {p}");
    }
}

#[test]
fn expansion_lhs_matches_pfaff_oracle() {
    use twistlab::hyp2f1::{hyp_oracle, HypArgs, SeriesBudget};
    // the left side for ε = 0 and α = 1 is ₂F₁(s/2, s/2; 1/2; −y^{−2}) y^{1/2−s}
    let (s, y) = (c(0.6, 0.0), 0.2);
    let a = ComplexValue::from_complex(s / 2.0, 0.0);
    let f = hyp_oracle(HypArgs::new(a, a, 0.5, -1.0 / (y * y)), SeriesBudget::default()).unwrap();
    let lhs = f.z() * ((0.5 - s) * y.ln()).exp();
    let rhs = expansion_sum(0, s, 1.0, y, 8);
    assert!((lhs - rhs).norm() < 1e-9, "{lhs} vs {rhs}");
}

#[test]
fn bessel_mellin_identity() {
    assert!(check_bessel_mellin(1.0, c(2.0, 0.0)).unwrap() <= 1e-8);
    for alpha in [1.0, 3.0] {
        for s in [c(2.0, 0.0), c(0.5, 0.0), c(1.0, 1.0)] {
            let r = check_bessel_mellin(alpha, s).unwrap();
            assert!(r <= 1e-7, "α={alpha} s={s}: {r}");
        }
    }
    assert!(check_bessel_mellin(1.0, c(-0.5, 0.0)).is_err());
}

#[test]
fn contour_identity_for_zeta_pair() {
    let (s, fe) = zeta_pair_fe(400);
    let f = MaassData::f_side(&s, &fe);
    let g = MaassData::g_side(&fe).unwrap();
    for y in [0.3, 0.5] {
        let z = MaassEvalPoint::new(1.0, y).unwrap();
        let w = z.fricke(1);
        let lhs = whittaker_nonconstant(&f, z, default_truncation(z.y)).unwrap().z()
            - whittaker_nonconstant(&g, w, default_truncation(w.y)).unwrap().z();
        let integral = contour_integral(&s, &fe, 1.0, y, 2000).unwrap();
        assert!((0.25 * integral - lhs).norm() <= 1e-6, "y={y}: {} vs {lhs}", 0.25 * integral);
        let ell0 = 6;
        let expansion = residue_expansion(&fe, 1.0, y, ell0, &fe.polar_parts).unwrap();
        let next = residue_expansion(&fe, 1.0, y, ell0 + 1, &fe.polar_parts).unwrap() - expansion;
        let envelope = 4.0 * next.norm() + 1e-9;
        assert!((integral - expansion).norm() <= envelope, "y={y}: {integral} vs {expansion}, envelope {envelope}");
    }
}
