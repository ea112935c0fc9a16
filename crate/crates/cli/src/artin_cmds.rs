use crate::input::{load_zeros, Source};
use crate::report::{value_json, CliError, Report};
use crate::{ArtinIngestArgs, ArtinQuotientArgs, DemoArgs};
use serde_json::{json, Value};
use twistlab::artin::{
    artin_fe, determinant_character, expand_coefficients, primitivity_proxy, quotient_profile, EulerFactorTable,
};
use twistlab::lfun::{dirichlet_multiply_zeta, smoothed_eval, LfunError, SmoothedParams};
use twistlab::ComplexValue;

/// Kernel widths of the two smoothed evaluations compared per zero.
const DEMO_DELTAS: [f64; 2] = [0.1, 0.05];
const PROXY_BOUND: u64 = 50;

fn table_summary(t: &EulerFactorTable) -> Value {
    json!({
        "label": t.label,
        "dimension": t.dimension,
        "conductor": t.conductor,
        "p_plus": t.p_plus,
        "m_minus": t.m_minus,
        "bad_primes": t.bad_primes,
        "root_number": t.root_number.map(|w| json!([w.re, w.im])),
        "prime_count": t.factors.len(),
        "max_prime": t.factors.keys().max(),
    })
}

pub fn ingest(args: &ArtinIngestArgs, source: &Source, tol: Option<f64>) -> Result<Report, CliError> {
    let mut rep = Report::new("artin-ingest", tol);
    rep.input("artin", args.artin.as_str());
    rep.input("prime_bound", args.prime_bound);
    let table = source.table(&args.artin, args.prime_bound)?;
    rep.result("table", table_summary(&table));
    let (primitive, witness) = primitivity_proxy(&table, args.prime_bound);
    let margins: Vec<Value> = table
        .good_primes()
        .into_iter()
        .filter(|&p| p <= args.prime_bound)
        .filter_map(|p| table.value_at_one(p).map(|v| json!([p, v.norm()])))
        .collect();
    rep.result(
        "primitivity_proxy",
        json!({
            "primitive": primitive,
            "witness": witness,
            "witness_margin": witness.and_then(|p| table.value_at_one(p)).map(|v| v.norm()),
            "margins": margins,
        }),
    );
    Ok(rep)
}

pub fn quotient(args: &ArtinQuotientArgs, source: &Source, tol: Option<f64>) -> Result<Report, CliError> {
    let mut rep = Report::new("artin-quotient", tol);
    rep.input("artin", args.artin.as_str());
    rep.input("length", args.length);
    let table = source.table(&args.artin, args.length as u64)?;
    let q = quotient_profile(&table, args.length)?;
    rep.result("table", table_summary(&table));
    rep.result("quotient_gamma", q.quotient_gamma.clone());
    rep.result("epsilon", q.epsilon);
    let structure = q.coefficients.structure.as_ref().map(|st| {
        json!({
            "chi1": { "modulus": st.chi1.modulus, "conductor": st.chi1.conductor(), "parity": st.chi1.parity },
            "chi2": { "modulus": st.chi2.modulus, "conductor": st.chi2.conductor(), "parity": st.chi2.parity },
            "scale": value_json(st.scale),
        })
    });
    rep.result("structure", structure);
    let lead: Vec<Value> = q.coefficients.coeffs.iter().take(20).map(|c| json!([c.re, c.im])).collect();
    rep.result("leading_coefficients", lead);
    let back = dirichlet_multiply_zeta(&q.coefficients);
    let orig = expand_coefficients(&table, args.length)?;
    let worst = back.coeffs.iter().zip(&orig.coeffs).map(|(a, b)| a.dist(*b)).fold(0.0, f64::max);
    rep.check("round_trip", worst, 0.0);
    Ok(rep)
}

/// Per-zero outcome of the demo: a value with an error estimate inflated by
/// the disagreement between two kernel widths, or a skip marker.
fn demo_point(
    series: &twistlab::lfun::CoefficientSeries,
    fe: &twistlab::lfun::FunctionalEquationData,
    t: f64,
) -> Result<Value, CliError> {
    let s = ComplexValue::new(0.5, t);
    let mut vals = Vec::new();
    for delta in DEMO_DELTAS {
        match smoothed_eval(series, fe, s, SmoothedParams { delta, ..SmoothedParams::default() }) {
            Ok(v) => vals.push(v),
            Err(LfunError::TruncationInsufficient(why)) => {
                return Ok(json!({ "t": t, "status": "skipped", "reason": why, "delta": delta }));
            }
            Err(e) => return Err(e.into()),
        }
    }
    let (coarse, fine) = (vals[0], vals[1]);
    let err = coarse.err.max(fine.err) + coarse.dist(fine);
    let status = if fine.abs() > 3.0 * err { "non_shared" } else { "inconclusive" };
    Ok(json!({
        "t": t,
        "status": status,
        "value": { "re": fine.re, "im": fine.im, "err": err },
        "magnitude": fine.abs(),
    }))
}

pub fn demo(args: &DemoArgs, source: &Source, tol: Option<f64>) -> Result<Report, CliError> {
    let mut rep = Report::new("cancellation-demo", tol);
    rep.input("artin", args.artin.as_str());
    rep.input("zeros", args.zeros.as_str());
    rep.input("coeff_length", args.coeff_length);
    let zeros = load_zeros(&args.zeros)?;
    let table = source.table(&args.artin, args.coeff_length as u64)?;
    let w = args
        .root_number
        .or_else(|| table.root_number.map(|w| ComplexValue::new(w.re, w.im)))
        .ok_or_else(|| CliError::usage("the table has no root number; pass --root-number"))?;
    let nebentypus = determinant_character(&table)?;
    let (series, fe) = artin_fe(&table, args.coeff_length, w, &nebentypus)?;
    let (primitive, witness) = primitivity_proxy(&table, PROXY_BOUND);

    rep.result("label", "HEURISTIC");
    rep.result(
        "note",
        "HEURISTIC: smoothed evaluation of a degree-3 completed L-function on Re s = 1/2 without certified truncation",
    );
    rep.result("table", table_summary(&table));
    rep.result("root_number", value_json(w));
    rep.result("nebentypus_modulus", nebentypus.modulus);
    rep.result("nebentypus_conductor", nebentypus.conductor());
    rep.result("primitivity_proxy", json!({ "primitive": primitive, "witness": witness, "prime_bound": PROXY_BOUND }));
    rep.result("deltas", DEMO_DELTAS.to_vec());
    let points = zeros.iter().map(|&t| demo_point(&series, &fe, t)).collect::<Result<Vec<_>, _>>()?;
    let count = |status: &str| points.iter().filter(|p| p["status"] == status).count();
    rep.result("non_shared_count", count("non_shared"));
    rep.result("inconclusive_count", count("inconclusive"));
    rep.result("skipped_count", count("skipped"));
    rep.result("points", points);
    Ok(rep)
}
