// SPDX-License-Identifier: Apache-2.0

//! Finite-difference error against closed forms as the step shrinks.
//!
//! Over the disc base with `mu = 1` the Hartogs domain is the unit ball of
//! `C^2`, whose Bergman metric is `3 (I / s + conj(p) p^T / s^2)` with
//! `s = 1 - |p|^2`. The dual metric over the disc with `mu = 2` has a
//! closed-form sectional curvature along the fiber axis; its stencil is
//! capped by the distance to the metric degeneracy, so large steps shrink.

use hartogs_core::algebra::int;
use hartogs_core::cartan::CartanParams;
use hartogs_core::geometry::{
    dual_disc_curvature_formula, fiber_axis_limit, ke_residual, metric_tensor, sectional_curvature_with,
    CurvatureConvention, FdConfig, PotentialField, PotentialKind,
};
use num_complex::Complex64;

fn main() {
    let ball = PotentialField::new(PotentialKind::BergmanLog, CartanParams::ball(1).unwrap(), &int(1)).unwrap();
    let point = [0.2, -0.1, 0.3, 0.15];
    let p = [Complex64::new(point[0], point[1]), Complex64::new(point[2], point[3])];
    let s = 1.0 - p.iter().map(|c| c.norm_sqr()).sum::<f64>();
    let points: Vec<Vec<f64>> = (0..5).map(|k| point.iter().map(|t| t * (0.5 + 0.25 * k as f64)).collect()).collect();

    let dual = PotentialField::new(PotentialKind::DualBergmanLog, CartanParams::ball(1).unwrap(), &int(2)).unwrap();
    let ex = [1.0, 0.0, 0.0, 0.0];
    let ev = [0.0, 0.0, 0.0, 1.0];
    let v = 0.5;
    let k_exact = dual_disc_curvature_formula(v);
    let limit = fiber_axis_limit(&dual);

    println!("| step | metric max abs err | KE residual (ball) | curvature rel err (v = 0.5) |");
    println!("|------|--------------------|--------------------|-----------------------------|");
    for step in [1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4] {
        let h = metric_tensor(&ball, &point, step).unwrap().h_complex;
        let mut err: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let delta = if i == j { 1.0 } else { 0.0 };
                let exact = 3.0 * (delta / s + p[i].conj() * p[j] / (s * s));
                err = err.max((h[(i, j)] - exact).norm());
            }
        }
        let ke = ke_residual(&ball, &points, step).map(|r| format!("{:.1e}", r.residual)).unwrap_or_else(|_| "stencil leaves the domain".into());
        let cfg = FdConfig::curvature_with_margin(step, limit - v);
        let curv = sectional_curvature_with(&dual, &[0.0, 0.0, 0.0, v], (&ex, &ev), &cfg, CurvatureConvention::ClosedFormDual)
            .map(|k| format!("{:.1e}", ((k - k_exact) / k_exact).abs()))
            .unwrap_or_else(|e| e.to_string());
        println!("| {step:.0e} | {err:.1e} | {ke} | {curv} |");
    }
}
