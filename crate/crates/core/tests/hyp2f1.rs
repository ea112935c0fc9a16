use num_complex::Complex64;
use proptest::prelude::*;
use twistlab::hyp2f1::*;
use twistlab::specfun::{digamma_c, gamma_c};
use twistlab::ComplexValue;

fn budget() -> SeriesBudget {
    SeriesBudget::default()
}

fn close(x: ComplexValue, y: ComplexValue, rel: f64) -> bool {
    (x.z() - y.z()).norm() <= rel * (1.0 + y.abs())
}

/// Two rounds of Richardson extrapolation over δ, δ/2, δ/4 for a quantity
/// with an expansion in integer powers of δ.
fn richardson(f: impl Fn(f64) -> Complex64, d: f64) -> Complex64 {
    let (f0, f1, f2) = (f(d), f(d / 2.0), f(d / 4.0));
    let r0 = 2.0 * f1 - f0;
    let r1 = 2.0 * f2 - f1;
    (4.0 * r1 - r0) / 3.0
}

#[test]
fn series_against_pfaff() {
    let args = HypArgs::new(0.3, 0.7, 1.1, -0.4);
    let s = hyp_series(args, budget()).unwrap();
    let o = hyp_oracle(args, budget()).unwrap();
    assert!(close(s, o, 1e-14), "{s} {o}");
}

#[test]
fn continuation_against_pfaff() {
    let args = HypArgs::new(0.3, 0.8, 1.2, -5.0);
    let c = hyp_continuation(args, budget()).unwrap();
    let o = hyp_oracle(args, budget()).unwrap();
    assert!((c.z() - o.z()).norm() < 1e-9, "{c} {o}");
    let sw = hyp_continuation(args.swapped(), budget()).unwrap();
    assert!((sw.z() - c.z()).norm() < 1e-12 * (1.0 + c.abs()));
}

#[test]
fn continuation_reduction_formula() {
    // ₂F₁(1,b;2;w) = ((1−w)^{1−b} − 1)/((b−1)w)
    let (b, w) = (1.5, -4.0);
    let exact = ((1.0f64 - w).powf(1.0 - b) - 1.0) / ((1.0 - b) * -w);
    let v = hyp_continuation(HypArgs::new(1.0, b, 2.0, w), budget()).unwrap();
    assert!((v.re - exact).abs() < 1e-12, "{v} {exact}");
    assert!(v.err < 1e-10);
}

#[test]
fn continuation_rejects_small_w() {
    assert!(matches!(hyp_continuation(HypArgs::new(0.3, 0.8, 1.2, -0.5), budget()), Err(HypError::DomainError(_))));
}

#[test]
fn degenerate_closed_form_and_oracles() {
    let v = hyp_degenerate(1.0, 2.0, -3.0, budget()).unwrap();
    assert!((v.re - 4f64.ln() / 3.0).abs() < 1e-10);

    let (a, c, w) = (0.4, 1.3, -2.5);
    let d = hyp_degenerate(a, c, w, budget()).unwrap();
    let o = hyp_oracle(HypArgs::new(a, a, c, w), budget()).unwrap();
    assert!(close(d, o, 1e-12), "{d} {o}");
    let lim = richardson(|dl| hyp_continuation(HypArgs::new(a, a + dl, c, w), budget()).unwrap().z(), 1e-3);
    assert!((lim - d.z()).norm() < 1e-8, "{lim} {d}");
}

#[test]
fn delta_limit_is_first_order() {
    let (a, c, w) = (0.7, 1.9, -3.0);
    let exact = hyp_degenerate(a, c, w, budget()).unwrap().z();
    let e1 = (hyp_continuation(HypArgs::new(a, a + 1e-3, c, w), budget()).unwrap().z() - exact).norm();
    let e2 = (hyp_continuation(HypArgs::new(a, a + 5e-4, c, w), budget()).unwrap().z() - exact).norm();
    let order = (e1 / e2).log2();
    assert!(order > 0.9, "observed order {order}");
}

#[test]
fn ab_terms_agree_at_zero() {
    for k in 0..=20 {
        let (ak, bk) = ab_terms(0.4, 1.3, -2.0, 0.0, k).unwrap();
        assert!((ak.z() - bk.z()).norm() <= 1e-15 * ak.abs().max(1e-300), "k={k}");
    }
}

#[test]
fn ab_sum_reproduces_continuation() {
    let (a, c, w, d) = (0.4, 1.3, -2.0, 0.1);
    let gp = gamma_c(Complex64::new(d, 0.0)).unwrap();
    let gm = gamma_c(Complex64::new(-d, 0.0)).unwrap();
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..80 {
        let (ak, bk) = ab_terms(a, c, w, d, k).unwrap();
        sum += gp * ak.z() + gm * bk.z();
    }
    let cont = hyp_continuation(HypArgs::new(a, a + d, c, w), budget()).unwrap();
    assert!((sum - cont.z()).norm() < 1e-9, "{sum} {cont}");
}

#[test]
fn b_slope_is_second_order() {
    // B_k'(0) = C_k(−H_k + Ψ(a+k) + Ψ(a−c+1+k) − Ψ(a−c+1) + Ψ(c−a) − Ψ(a) − log(−w))
    let (a, c, w, k) = (0.4, 1.3, -2.0, 5usize);
    let ck = ab_terms(a, c, w, 0.0, k).unwrap().0.z();
    let ps = |x: f64| digamma_c(Complex64::new(x, 0.0)).unwrap();
    let hk: f64 = (1..=k).map(|n| 1.0 / n as f64).sum();
    let kf = k as f64;
    let slope = ck * (-hk + ps(a + kf) + ps(a - c + 1.0 + kf) - ps(a - c + 1.0) + ps(c - a) - ps(a) - (-w).ln());
    let resid = |d: f64| (ab_terms(a, c, w, d, k).unwrap().1.z() - ck - d * slope).norm();
    let (r1, r2) = (resid(1e-3), resid(5e-4));
    assert!((r1 / r2).log2() > 1.8, "{r1} {r2}");
}

#[test]
fn a_tail_decays_geometrically() {
    // tail beyond K shrinks like |w|^{−K} up to a polynomial factor in K
    let (a, c, w) = (0.6, 1.7, -3.0);
    let tail = |kk: usize| -> f64 {
        (0..16)
            .map(|j| {
                let d = Complex64::from_polar(0.4, j as f64 * std::f64::consts::PI / 8.0);
                (kk + 1..kk + 60).map(|k| ab_terms(a, c, w, ComplexValue::from(d), k).unwrap().0.abs()).sum::<f64>()
            })
            .fold(0.0, f64::max)
    };
    let (t20, t40) = (tail(20), tail(40));
    let bound = 3f64.powi(-20) * 2f64.powi(4);
    assert!(t40 / t20 <= bound, "{t20} {t40}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn degenerate_matches_oracle(a in 0.05f64..2.0, c in 0.5f64..3.0, wi in 0usize..4) {
        let w = [-1.5, -2.0, -5.0, -10.0][wi];
        prop_assume!((c - a - (c - a).round()).abs() > 1e-3 || (c - a).round() > 0.0);
        let d = hyp_degenerate(a, c, w, budget()).unwrap();
        let o = hyp_oracle(HypArgs::new(a, a, c, w), budget()).unwrap();
        prop_assert!(close(d, o, 1e-8), "{} {}", d, o);
    }

    #[test]
    fn continuation_matches_oracle(a in 0.05f64..2.0, gap in 0.1f64..0.9, c in 0.5f64..3.0, wi in 0usize..4) {
        let w = [-1.5, -2.0, -5.0, -10.0][wi];
        let b = a + gap;
        let args = HypArgs::new(a, b, c, w);
        let v = hyp_continuation(args, budget()).unwrap();
        let o = hyp_oracle(args, budget()).unwrap();
        prop_assert!(close(v, o, 1e-8), "{} {}", v, o);
        let s = hyp_continuation(args.swapped(), budget()).unwrap();
        prop_assert!((s.z() - v.z()).norm() <= 1e-12 * (1.0 + v.abs()));
    }

    #[test]
    fn series_symmetric(a in -1.5f64..2.0, b in -1.5f64..2.0, c in 0.5f64..3.0, w in -0.9f64..0.9) {
        let args = HypArgs::new(a, b, c, w);
        let x = hyp_series(args, budget()).unwrap();
        let y = hyp_series(args.swapped(), budget()).unwrap();
        prop_assert!((x.z() - y.z()).norm() <= 1e-12 * (1.0 + x.abs()));
    }
}
