// SPDX-License-Identifier: Apache-2.0

//! One function per subcommand. Each returns the rendered report and the
//! exit code to use after writing it.

use std::path::Path;

use hartogs_core::algebra::{format_rational, Rational};
use hartogs_core::cartan::{
    load_catalog, make_params, parse_catalog, validate_catalog, CartanParams, GenericNormEvaluator,
};
use hartogs_core::classify::{
    classify_with, default_alphas, dual_positivity_bound_with, ClassificationReport,
};
use hartogs_core::genfun::{build_chi, cross_validate, f_rational};
use hartogs_core::geometry::{
    dual_disc_curvature_formula, dual_kernel_eval, fiber_axis_limit, kernel_eval, kernel_eval_series,
    ke_residual_with, ode_residual, sectional_curvature_with, CurvatureConvention, FdConfig, PotentialField,
    PotentialKind,
};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{CliError, EXIT_INTERNAL};
use crate::report::{csv_table, exact, exact_list, exact_opt, float, float_cell, Report};

/// Rendered output plus the exit code that goes with it.
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

type CmdResult = Result<Outcome, CliError>;

/// The catalog shipped with the binary, used when no path is given.
pub const BUILTIN_CATALOG: &str = include_str!("../../../data/cartan_catalog.json");

/// Samples of `v` on the fiber axis used by `curvature` when none are given.
pub fn default_curvature_samples() -> Vec<f64> {
    let mut v: Vec<f64> = (0..20).map(|k| k as f64 / 20.0).collect();
    v.extend([0.98, 0.99]);
    v
}

/// `mu` for the geometry commands: exact, or a float taken at its binary value.
#[derive(Debug, Clone)]
pub enum Mu {
    Exact(Rational),
    Float(f64),
}

impl Mu {
    fn echo(&self) -> Value {
        match self {
            Mu::Exact(q) => exact(q),
            Mu::Float(x) => float(*x),
        }
    }

    fn exact(&self) -> Option<&Rational> {
        match self {
            Mu::Exact(q) => Some(q),
            Mu::Float(_) => None,
        }
    }
}

fn echo_domain(r: &mut Report, p: &CartanParams) {
    r.input("r", p.r).input("a", p.a).input("b", p.b);
}

fn echo_invariants(r: &mut Report, p: &CartanParams) {
    r.exact("gamma", p.gamma, "genus (r-1)a + b + 2");
    r.exact("n", p.n, "dimension r + r(r-1)a/2 + rb");
}

/// The generic norm of a base: built in for balls, type I and the Lie ball.
fn norm_for(params: &CartanParams) -> Result<GenericNormEvaluator, CliError> {
    if params.is_rank_one() {
        return Ok(GenericNormEvaluator::rank_one(params.clone())?);
    }
    if params.a == 2 {
        return Ok(GenericNormEvaluator::type_one(params.r, params.r + params.b)?);
    }
    if params.r == 2 && params.b == 0 {
        return Ok(GenericNormEvaluator::lie_ball(params.a + 2)?);
    }
    Err(CliError::invalid(format!(
        "no generic norm is built in for {params}; geometry needs a ball, type I or Lie ball base"
    )))
}

fn field(kind: PotentialKind, params: &CartanParams, mu: &Mu) -> Result<PotentialField, CliError> {
    let norm = norm_for(params)?;
    Ok(match mu {
        Mu::Exact(q) => PotentialField::with_norm(kind, norm, q)?,
        Mu::Float(x) => PotentialField::with_norm_f64(kind, norm, *x)?,
    })
}

fn kind_name(kind: PotentialKind) -> &'static str {
    match kind {
        PotentialKind::BergmanLog => "bergman",
        PotentialKind::DualBergmanLog => "dual",
        PotentialKind::KobLog => "kob",
    }
}

pub fn chi(params: &CartanParams) -> CmdResult {
    let data = build_chi(params);
    let mut r = Report::new("chi");
    echo_domain(&mut r, params);
    echo_invariants(&mut r, params);
    r.exact("chi", serde_json::to_value(&data.chi).expect("poly"), "product over the rank and the multiplicities");
    r.exact("p", serde_json::to_value(&data.p).expect("poly"), "P(t) = t chi(t)");
    r.exact("a_coeffs", exact_list(&data.a_coeffs), "coefficients of P");
    r.exact("big_d", data.big_d, "degree of P");
    Ok(Outcome::ok(r.render()))
}

pub fn fgen(params: &CartanParams, mu: &Rational, order: usize) -> CmdResult {
    let rep = f_rational(params, mu)?;
    let check_order = order.max(rep.big_d + 2);
    let cv = cross_validate(&rep, check_order)?;
    let mut r = Report::new("fgen");
    echo_domain(&mut r, params);
    r.input("mu", exact(mu)).input("order", order);
    echo_invariants(&mut r, params);
    r.exact("coefficients", exact_list(&rep.series_definition(order)), "series of F from its product definition");
    r.exact("q", serde_json::to_value(&rep.q_poly).expect("poly"), "numerator of F = Q / (1-X)^(D+1)");
    r.exact("big_d", rep.big_d, "degree of P");
    r.exact("pole_order", rep.pole_order(), "D + 1");
    r.exact("partial_fractions", exact_list(&rep.c_coeffs), "c_i of F = sum c_i (1-X)^-i, i = 1..D+1");
    r.exact(
        "stirling_terms",
        Value::Array(
            rep.stirling_terms
                .iter()
                .map(|(c, q)| json!({"q": q, "s": format_rational(c)}))
                .collect(),
        ),
        "F = sum s_q X^(q-1) / (1-X)^(q+1)",
    );
    r.exact(
        "representations_agree",
        cv.agree,
        &format!("product, Stirling and rational views compared to order {check_order}"),
    );
    let code = if cv.agree { 0 } else { EXIT_INTERNAL };
    Ok(Outcome { text: r.render(), code })
}

fn classification_results(r: &mut Report, c: &ClassificationReport) {
    r.exact("is_ball", c.is_ball, "F = (n+1)! / (1-X)^(n+2) with mu = 1");
    r.exact("q_constant", c.q_constant, "degree of Q");
    r.exact("q", serde_json::to_value(&c.q_poly).expect("poly"), "numerator of F = Q / (1-X)^(D+1)");
    r.exact("big_d", c.big_d, "degree of P");
    r.exact("ke_identity", c.ke_identity_holds, "polynomial form of the Kähler-Einstein equation");
    r.exact("delta", exact_opt(c.delta.as_ref()), "constant of the Kähler-Einstein identity");
    r.exact(
        "ke_certificate",
        serde_json::to_value(&c.ke_certificate).expect("certificate"),
        "first failed check of the identity",
    );
    r.exact(
        "proj_induced",
        serde_json::to_value(&c.proj_induced).expect("map"),
        "polynomiality of (1+X)^((D+1) alpha) / Q(-X)^alpha",
    );
    r.exact("alpha_kob", exact_opt(c.kob_alpha.as_ref()), "single partial-fraction term of F");
    r.exact("verdicts_agree", c.verdicts_agree(), "ball test against the three other criteria");
}

pub fn classify(params: &CartanParams, mu: &Rational, alphas: &[Rational]) -> CmdResult {
    let rep = f_rational(params, mu)?;
    // disagreement only signals an inconsistency for the default exponents
    let defaulted = alphas.is_empty();
    let alphas = if defaulted { default_alphas(&rep) } else { alphas.to_vec() };
    let c = classify_with(&rep, &alphas)?;
    let mut r = Report::new("classify");
    echo_domain(&mut r, params);
    r.input("mu", exact(mu)).input("alpha", exact_list(&alphas));
    echo_invariants(&mut r, params);
    classification_results(&mut r, &c);
    r.numeric(
        "dual_bound",
        c.dual_bound.as_f64(),
        hartogs_core::classify::DUAL_BOUND_TOLERANCE,
        "smallest positive root of Q(-Y) by exact isolation and bisection",
    );
    let code = if c.verdicts_agree() || !defaulted { 0 } else { EXIT_INTERNAL };
    Ok(Outcome { text: r.render(), code })
}

pub fn dual_bound(params: &CartanParams, mu: &Rational, tolerance: f64) -> CmdResult {
    if !(tolerance > 0.0) {
        return Err(CliError::invalid(format!("tolerance must be positive, got {tolerance}")));
    }
    let b = dual_positivity_bound_with(params, mu, tolerance)?;
    let mut r = Report::new("dual-bound");
    echo_domain(&mut r, params);
    r.input("mu", exact(mu)).input("tolerance", float(tolerance));
    r.numeric(
        "dual_bound",
        b.as_f64(),
        tolerance,
        "smallest positive root of Q(-Y) by exact isolation and bisection",
    );
    Ok(Outcome::ok(r.render()))
}

fn split_point(point: &[f64]) -> (Vec<Complex64>, Complex64) {
    let m = point.len();
    let z = point[..m - 2]
        .chunks(2)
        .map(|c| Complex64::new(c[0], c[1]))
        .collect();
    (z, Complex64::new(point[m - 2], point[m - 1]))
}

fn check_dimension(field: &PotentialField, point: &[f64]) -> Result<(), CliError> {
    let m = field.real_dim();
    if point.len() != m {
        return Err(CliError::invalid(format!(
            "a point needs {m} real coordinates (base then fiber), got {}",
            point.len()
        )));
    }
    Ok(())
}

pub fn kernel(params: &CartanParams, mu: &Mu, point: &[f64], dual: bool, terms: Option<usize>) -> CmdResult {
    let kind = if dual { PotentialKind::DualBergmanLog } else { PotentialKind::BergmanLog };
    let f = field(kind, params, mu)?;
    check_dimension(&f, point)?;
    let (z, w) = split_point(point);
    let mut r = Report::new("kernel");
    echo_domain(&mut r, params);
    r.input("mu", mu.echo()).input("point", point.iter().map(|&x| float(x)).collect::<Vec<_>>());
    r.input("dual", dual);
    let shape = f.potential(point)?;
    let log_shape = if dual { -shape } else { shape };
    r.numeric(
        "log_kernel_shape",
        log_shape,
        1e-12,
        "log F minus (gamma + mu) log N, without the normalizing constant",
    );
    if f.kernel_constant().is_some() {
        let k = if dual { dual_kernel_eval(&f, &z, w)? } else { kernel_eval(&f, &z, w)? };
        let name = if dual { "dual_kernel" } else { "kernel" };
        r.numeric(name, k, 1e-12 * k.abs(), "closed form of the kernel on the diagonal");
        if let (Some(t), false) = (terms, dual) {
            r.input("terms", t);
            let s = kernel_eval_series(&f, &z, w, t)?;
            r.numeric("kernel_series", s, (s - k).abs(), "truncated power series of F");
        }
    } else if terms.is_some() {
        return Err(CliError::invalid("the kernel series needs a base with known volume"));
    }
    Ok(Outcome::ok(r.render()))
}

/// Five interior points at growing distance from the origin.
pub fn default_points(params: &CartanParams) -> Vec<Vec<f64>> {
    let nb = params.n as usize;
    (0..5)
        .map(|k| {
            let t = (k + 1) as f64 / 5.0;
            let s = 0.3 * t / ((2 * nb) as f64).sqrt();
            let mut p: Vec<f64> = (0..2 * nb).map(|j| if j % 2 == 0 { s } else { -s }).collect();
            let a = k as f64;
            p.push(0.2 * t * a.cos());
            p.push(0.2 * t * a.sin());
            p
        })
        .collect()
}

pub fn ke_check(
    params: &CartanParams,
    mu: &Mu,
    kind: PotentialKind,
    points: &[Vec<f64>],
    step: f64,
    tolerance: f64,
) -> CmdResult {
    if !(step > 0.0) {
        return Err(CliError::invalid(format!("step must be positive, got {step}")));
    }
    let f = field(kind, params, mu)?;
    let points = if points.is_empty() { default_points(params) } else { points.to_vec() };
    for p in &points {
        check_dimension(&f, p)?;
    }
    let cfg = FdConfig::ricci(step);
    let ke = ke_residual_with(&f, &points, &cfg)?;
    let mut r = Report::new("ke-check");
    echo_domain(&mut r, params);
    r.input("mu", mu.echo()).input("kind", kind_name(kind)).input("step", float(step));
    r.input("tolerance", float(tolerance));
    r.input(
        "points",
        points.iter().map(|p| p.iter().map(|&x| float(x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
    );
    let fd = format!("finite differences of the potential, step {step}, outer factor {}", cfg.outer_factor);
    r.numeric("lambda", ke.lambda, tolerance, &format!("trace of Ricci over trace of the metric; {fd}"));
    r.numeric("residual", ke.residual, tolerance, &format!("largest |Ric - lambda g| over the points; {fd}"));
    r.exact("einstein", ke.residual < tolerance, "residual below the tolerance");
    if let (Some(q), PotentialKind::BergmanLog) = (mu.exact(), kind) {
        let samples: Vec<f64> = (1..10).map(|k| k as f64 / 10.0).collect();
        let ode = ode_residual(params, q, &samples)?;
        r.numeric(
            "ode_residual",
            ode.residual,
            0.0,
            "radial Kähler-Einstein equation in exact arithmetic at X = 0.1, ..., 0.9, then rounded",
        );
        r.numeric("ode_delta", ode.delta, 0.0, "constant fitted at X = 0.1 in exact arithmetic, then rounded");
    }
    Ok(Outcome::ok(r.render()))
}

pub fn curvature(
    params: &CartanParams,
    mu: &Mu,
    kind: PotentialKind,
    samples: &[f64],
    step: f64,
    convention: Option<CurvatureConvention>,
    csv: bool,
) -> CmdResult {
    if !(step > 0.0) {
        return Err(CliError::invalid(format!("step must be positive, got {step}")));
    }
    let f = field(kind, params, mu)?;
    let convention = convention.unwrap_or(match kind {
        PotentialKind::DualBergmanLog => CurvatureConvention::ClosedFormDual,
        _ => CurvatureConvention::Standard,
    });
    let samples = if samples.is_empty() { default_curvature_samples() } else { samples.to_vec() };
    let limit = fiber_axis_limit(&f);
    if let Some(v) = samples.iter().find(|v| !(v.abs() < limit)) {
        return Err(CliError::domain(format!("v = {v} is outside the fiber-axis limit {limit}")));
    }
    let closed_form = kind == PotentialKind::DualBergmanLog
        && convention == CurvatureConvention::ClosedFormDual
        && params.r == 1
        && params.n == 1
        && mu.exact().is_some_and(|q| *q == Rational::from_integer(2.into()));

    let m = f.real_dim();
    let mut ex = vec![0.0; m];
    ex[0] = 1.0;
    let mut ev = vec![0.0; m];
    ev[m - 1] = 1.0;
    let mut rows = Vec::with_capacity(samples.len());
    for &v in &samples {
        let mut point = vec![0.0; m];
        point[m - 1] = v;
        let cfg = FdConfig::curvature_with_margin(step, limit - v.abs());
        let k = sectional_curvature_with(&f, &point, (&ex, &ev), &cfg, convention)?;
        let kf = closed_form.then(|| dual_disc_curvature_formula(v));
        rows.push((v, kf, k));
    }

    if csv {
        let table: Vec<Vec<String>> = rows
            .iter()
            .map(|&(v, kf, k)| {
                vec![
                    float_cell(v),
                    kf.map(float_cell).unwrap_or_default(),
                    float_cell(k),
                    kf.map(|kf| float_cell((k - kf).abs())).unwrap_or_default(),
                ]
            })
            .collect();
        return Ok(Outcome::ok(csv_table(&["v", "K_formula", "K_numeric", "abs_err"], &table)));
    }

    let mut r = Report::new("curvature");
    echo_domain(&mut r, params);
    r.input("mu", mu.echo()).input("kind", kind_name(kind)).input("step", float(step));
    r.input(
        "convention",
        match convention {
            CurvatureConvention::Standard => "standard",
            CurvatureConvention::ClosedFormDual => "closed-form-dual",
        },
    );
    r.input("v", samples.iter().map(|&v| float(v)).collect::<Vec<_>>());
    r.numeric("fiber_axis_limit", limit, 1e-12, "metric degeneracy or positivity bound on z = 0");
    r.numeric_value(
        "k_numeric",
        Value::Array(rows.iter().map(|r| float(r.2)).collect()),
        1e-3,
        "sectional curvature of the plane d/dx, d/dv at (0, iv) from finite-difference Christoffel symbols",
    );
    if closed_form {
        r.exact(
            "k_formula",
            Value::Array(rows.iter().map(|r| float(r.1.expect("closed form"))).collect()),
            "closed form for the disc base at mu = 2, rounded",
        );
    }
    Ok(Outcome::ok(r.render()))
}

/// Inclusive integer range `lo..=hi`; empty when `lo > hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntRange {
    pub lo: u32,
    pub hi: u32,
}

impl std::str::FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("not a non-negative integer: {t:?}"));
        match s.split_once("..") {
            Some((lo, hi)) => Ok(IntRange { lo: parse(lo)?, hi: parse(hi)? }),
            None => {
                let v = parse(s)?;
                Ok(IntRange { lo: v, hi: v })
            }
        }
    }
}

impl IntRange {
    fn values(self) -> std::ops::RangeInclusive<u32> {
        self.lo..=self.hi
    }
}

pub const SWEEP_HEADER: [&str; 15] = [
    "r",
    "a",
    "b",
    "mu",
    "gamma",
    "n",
    "big_d",
    "is_ball",
    "q_constant",
    "ke_identity",
    "delta",
    "proj_induced",
    "dual_bound",
    "alpha_kob",
    "verdicts_agree",
];

/// Valid `(r, a, b)` inside the ranges, in lexicographic order.
pub fn sweep_params(r: IntRange, a: IntRange, b: IntRange) -> Vec<CartanParams> {
    let mut out = Vec::new();
    for r in r.values() {
        for a in a.values() {
            for b in b.values() {
                if let Ok(p) = make_params(r, a, b) {
                    out.push(p);
                }
            }
        }
    }
    out
}

pub fn sweep(params: &[CartanParams], mus: &[Rational], csv: bool) -> CmdResult {
    let reports = hartogs_core::classify::sweep(params, mus)
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let code = if reports.iter().all(|c| c.verdicts_agree()) { 0 } else { EXIT_INTERNAL };
    if csv {
        let rows: Vec<Vec<String>> = reports
            .iter()
            .map(|c| {
                let p = &c.params;
                vec![
                    p.r.to_string(),
                    p.a.to_string(),
                    p.b.to_string(),
                    format_rational(&c.mu),
                    p.gamma.to_string(),
                    p.n.to_string(),
                    c.big_d.to_string(),
                    c.is_ball.to_string(),
                    c.q_constant.to_string(),
                    c.ke_identity_holds.to_string(),
                    c.delta.as_ref().map(format_rational).unwrap_or_else(|| "none".into()),
                    c.proj_induced_some().to_string(),
                    float_cell(c.dual_bound.as_f64()),
                    c.kob_alpha.as_ref().map(format_rational).unwrap_or_else(|| "none".into()),
                    c.verdicts_agree().to_string(),
                ]
            })
            .collect();
        return Ok(Outcome { text: csv_table(&SWEEP_HEADER, &rows), code });
    }
    let mut r = Report::new("sweep");
    r.input("domains", params.iter().map(|p| json!([p.r, p.a, p.b])).collect::<Vec<_>>());
    r.input("mu", exact_list(mus));
    let rows: Vec<Value> = reports
        .iter()
        .map(|c| {
            json!({
                "r": c.params.r,
                "a": c.params.a,
                "b": c.params.b,
                "mu": format_rational(&c.mu),
                "is_ball": c.is_ball,
                "ke_identity": c.ke_identity_holds,
                "delta": exact_opt(c.delta.as_ref()),
                "proj_induced": c.proj_induced_some(),
                "dual_bound": float(c.dual_bound.as_f64()),
                "alpha_kob": exact_opt(c.kob_alpha.as_ref()),
                "verdicts_agree": c.verdicts_agree(),
            })
        })
        .collect();
    r.exact("rows", Value::Array(rows), "classification of every (r, a, b, mu); dual_bound is numeric");
    Ok(Outcome { text: r.render(), code })
}

pub fn catalog(path: Option<&Path>) -> CmdResult {
    let (source, entries) = match path {
        Some(p) => (p.display().to_string(), load_catalog(p)?),
        None => ("built-in".to_string(), parse_catalog(BUILTIN_CATALOG)?),
    };
    let check = validate_catalog(&entries);
    let mut r = Report::new("catalog");
    r.input("catalog", source);
    r.exact("valid", check.valid, "every entry has valid invariants matching its expectations");
    r.exact("entries", serde_json::to_value(&check.entries).expect("entries"), "invariants derived from (r, a, b)");
    let code = if check.valid { 0 } else { crate::error::EXIT_INVALID };
    Ok(Outcome { text: r.render(), code })
}
