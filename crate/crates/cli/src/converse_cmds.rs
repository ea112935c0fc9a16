use crate::input::load_series;
use crate::report::{complex_json, value_json, CliError, Report};
use crate::{ConverseCheckArgs, VandermondeArgs};
use num_complex::Complex64;
use serde_json::{json, Value};
use twistlab::converse::{
    build_tbeta, check_bessel_mellin, check_expansion_identity, check_modularity, contour_integral, default_truncation,
    remainder_exponent, residue_integrals, residue_integrals_by_quadrature, solve_vandermonde,
    solve_vandermonde_extended, whittaker_nonconstant, GJFactors, MaassData, MaassEvalPoint,
};

const LOG_CONSTRAINT_TOL: f64 = 1e-10;
const EXPANSION_TOL: f64 = 1e-7;
const EXPONENT_TOL: f64 = 0.5;
const MELLIN_TOL: f64 = 1e-7;
const RESIDUE_TOL: f64 = 1e-7;
const CONTOUR_TOL: f64 = 1e-6;
const QUADRATURE_NODES: usize = 2000;

pub fn vandermonde(args: &VandermondeArgs, tol: Option<f64>) -> Result<Report, CliError> {
    let mut rep = Report::new("converse-vandermonde", tol);
    rep.input("u", args.u);
    rep.input("v", args.v);
    rep.input("level", args.level);
    rep.input("m", args.m);
    rep.input("t0", args.t0);
    rep.input("z", args.z.map(value_json));
    rep.input("pool", args.pool);
    let set = build_tbeta(args.u, args.v, args.level, args.m)?;
    let sol = match args.z {
        None => solve_vandermonde(&set.members, args.t0)?,
        Some(z) => {
            let pool = build_tbeta(args.u, args.v, args.level, args.m + args.pool)?;
            solve_vandermonde_extended(&set.members, args.t0, z, &pool)?
        }
    };
    rep.result("primes", set.primes.clone());
    rep.result("nodes", sol.nodes().iter().map(ToString::to_string).collect::<Vec<_>>());
    rep.result("weights", sol.weights.iter().map(ToString::to_string).collect::<Vec<_>>());
    rep.result("max_weight", sol.max_weight());
    let nonzero = sol.kronecker_residuals().iter().filter(|r| r.to_string() != "0").count();
    rep.check("kronecker_nonzero_rows", nonzero as f64, 0.0);
    if let Some(ext) = &sol.extension {
        rep.result(
            "extension",
            json!({
                "lambda0": ext.lambda0.to_string(),
                "kappa": complex_json(ext.kappa),
                "determinant": ext.determinant,
                "complex_weights": sol.complex_weights().into_iter().map(complex_json).collect::<Vec<_>>(),
            }),
        );
        rep.check("log_constraint", sol.log_residual().unwrap_or(f64::INFINITY), LOG_CONSTRAINT_TOL);
    }
    Ok(rep)
}

/// Points spread around the Fricke fixed point i/√N.
fn modularity_points(level: u64) -> Result<Vec<MaassEvalPoint>, CliError> {
    const NEAR_I: [(f64, f64); 10] = [
        (0.0, 1.0),
        (0.1, 0.95),
        (-0.15, 1.05),
        (0.25, 1.0),
        (-0.25, 0.9),
        (0.05, 1.15),
        (0.2, 0.85),
        (-0.1, 1.0),
        (0.3, 1.1),
        (-0.3, 0.95),
    ];
    const WIDE: [(f64, f64); 10] = [
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
    ];
    let (pts, scale) = if level == 1 { (WIDE, 1.0) } else { (NEAR_I, (level as f64).sqrt()) };
    pts.iter().map(|&(x, y)| Ok(MaassEvalPoint::new(x / scale, y / scale)?)).collect()
}

pub fn check(args: &ConverseCheckArgs, tol: Option<f64>) -> Result<Report, CliError> {
    let mut rep = Report::new("converse-check", tol);
    rep.input("series", args.series.as_str());
    rep.input("alpha", args.alpha);
    rep.input("ell0", args.ell0);
    rep.input("length", args.length);
    let (name, series, fe) = load_series(&args.series, args.length)?;
    rep.result("name", name);
    rep.result("level", fe.level);
    rep.result("parity", fe.parity);

    let f = MaassData::f_side(&series, &fe);
    let g = MaassData::g_side(&fe)?;
    let points = modularity_points(fe.level)?;
    rep.result("modularity_points", points.iter().map(|p| json!([p.x, p.y])).collect::<Vec<_>>());
    let r = check_modularity(&f, &g, fe.level, &points)?;
    rep.check("modularity", r, if fe.level == 1 { 1e-7 } else { 1e-6 });
    let bad = MaassData { series: series.perturbed(2, Complex64::new(0.1, 0.0)), ..f.clone() };
    let r_bad = check_modularity(&bad, &g, fe.level, &points)?;
    rep.result("modularity_negative_control_residual", r_bad);
    rep.check_fixed("modularity_negative_control_inverse", 1e-3 / r_bad, 1.0);

    let target = 2.0 * args.ell0 as f64 + 0.5;
    for (eps, s) in [(0u8, Complex64::new(0.6, 0.0)), (1, Complex64::new(0.5, 1.0))] {
        let gj = GJFactors::new(eps, 0)?;
        let e = check_expansion_identity(gj, s, args.alpha, &[0.2], args.ell0)?;
        rep.check(format!("expansion_identity[eps={eps}]"), e.max_residual, EXPANSION_TOL);
        let p = remainder_exponent(gj, s, args.alpha, 0.2, args.ell0)?;
        rep.result(&format!("remainder_exponent_eps{eps}"), p);
        rep.check(format!("remainder_exponent[eps={eps}]"), (p - target).abs(), EXPONENT_TOL);
    }

    for alpha in [1.0, 3.0] {
        for s in [Complex64::new(2.0, 0.0), Complex64::new(0.5, 0.0), Complex64::new(1.0, 1.0)] {
            let r = check_bessel_mellin(alpha, s)?;
            rep.check(format!("bessel_mellin[alpha={alpha},s={}{:+}i]", s.re, s.im), r, MELLIN_TOL);
        }
    }

    if !fe.polar_parts.is_empty() {
        let mut table = Vec::new();
        for k in 0..2 {
            let gj = GJFactors::new(fe.parity, k)?;
            let (i, it) = residue_integrals(&fe, gj, args.alpha, &fe.polar_parts)?;
            let (qi, qit) = residue_integrals_by_quadrature(&series, &fe, gj, args.alpha, QUADRATURE_NODES)?;
            rep.check(format!("residue_I[k={k}]"), (i.z() - qi).norm(), RESIDUE_TOL);
            rep.check(format!("residue_I_tilde[k={k}]"), (it.z() - qit).norm(), RESIDUE_TOL);
            table.push(json!({ "k": k, "I": value_json(i), "I_tilde": value_json(it) }));
        }
        rep.result("residue_integrals", table);
    }

    if fe.level == 1 {
        let mut rows: Vec<Value> = Vec::new();
        for y in [0.3, 0.5] {
            let z = MaassEvalPoint::new(args.alpha, args.alpha * y)?;
            let w = z.fricke(1);
            let lhs = whittaker_nonconstant(&f, z, default_truncation(z.y))?.z()
                - whittaker_nonconstant(&g, w, default_truncation(w.y))?.z();
            // the contour integral carries four times the difference
            let integral = 0.25 * contour_integral(&series, &fe, args.alpha, y, QUADRATURE_NODES)?;
            rep.check(format!("contour_identity[y={y}]"), (integral - lhs).norm(), CONTOUR_TOL);
            rows.push(json!({ "y": y, "difference": complex_json(lhs), "integral": complex_json(integral) }));
        }
        rep.result("contour_identity", rows);
    }
    Ok(rep)
}
