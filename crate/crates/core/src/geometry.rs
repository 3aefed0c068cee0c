// SPDX-License-Identifier: Apache-2.0

//! Floating-point Kähler geometry of Cartan-Hartogs domains: kernels, their
//! log-potentials, and finite-difference metric, Ricci and sectional
//! curvature.
//!
//! Points are real vectors `(x_1, y_1, ..., x_n, y_n, u, v)` with
//! `z_k = x_k + i y_k` on the base and `w = u + i v` on the fiber.

use nalgebra::{Cholesky, DMatrix, SymmetricEigen};
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::algebra::{f64_to_rational, int, parse_rational, rational_pow, rational_to_f64, Rational};
use crate::cartan::{CartanError, CartanParams, ConjSign, GenericNormEvaluator};
use crate::classify::{dual_positivity_bound, DualBound};
use crate::genfun::{f_rational, FRepresentation, GenfunError};

/// Inner finite-difference step used when none is given.
pub const DEFAULT_STEP: f64 = 1e-3;
/// Outer step of the Ricci tensor, as a multiple of the inner step.
pub const RICCI_OUTER_FACTOR: f64 = 10.0;
/// Outer step of Christoffel symbols and their derivatives, as a multiple of the inner step.
pub const CURVATURE_OUTER_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("point outside the domain: {0}")]
    DomainViolation(String),
    #[error("dual kernel is not positive: {0}")]
    PositivityViolation(String),
    #[error("metric is not positive definite (eigenvalues {eigenvalues:?})")]
    NotPositiveDefinite { eigenvalues: Vec<f64> },
    #[error("the tangent vectors do not span a plane")]
    DegeneratePlane,
    #[error("need at least {needed} sample points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("sample {0} is not in (0, 1)")]
    InvalidSample(f64),
    #[error("the domain volume is unknown, so the kernel constant is undefined")]
    MissingVolume,
    #[error("expected a point with {expected} real coordinates, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("operation needs a {expected} field")]
    WrongKind { expected: &'static str },
    #[error("mu must be positive and finite, got {0}")]
    InvalidMu(f64),
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Genfun(#[from] GenfunError),
}

type GResult<T> = Result<T, GeometryError>;

/// Which potential a field differentiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialKind {
    /// `log K`.
    BergmanLog,
    /// `-log K*`, with `K*(z, w) = K(z, -conj z, w, -conj w)`.
    DualBergmanLog,
    /// `-log(N^mu - |w|^2)`.
    KobLog,
}

/// A Kähler potential on a Cartan-Hartogs domain `{|w|^2 < N^mu}`.
///
/// The additive constant of the log-kernel is kept apart from its shape and
/// never enters a finite difference.
#[derive(Debug, Clone)]
pub struct PotentialField {
    kind: PotentialKind,
    params: CartanParams,
    norm: GenericNormEvaluator,
    mu: f64,
    mu_exact: bool,
    rep: FRepresentation,
    q: Vec<f64>,
    pole: i32,
    y_star: f64,
    kernel_scale: f64,
    log_const: f64,
}

impl PotentialField {
    /// Field over a rank-one base with rational `mu`.
    pub fn new(kind: PotentialKind, params: CartanParams, mu: &Rational) -> GResult<Self> {
        let norm = GenericNormEvaluator::rank_one(params)?;
        Self::build(kind, norm, mu.clone(), true)
    }

    /// Field over a rank-one base with floating-point `mu`, taken as the exact
    /// binary value of the float.
    pub fn new_f64(kind: PotentialKind, params: CartanParams, mu: f64) -> GResult<Self> {
        let norm = GenericNormEvaluator::rank_one(params)?;
        let exact = mu_to_rational(mu)?;
        Self::build(kind, norm, exact, false)
    }

    /// Field over any base whose generic norm is supplied by `norm`.
    pub fn with_norm(kind: PotentialKind, norm: GenericNormEvaluator, mu: &Rational) -> GResult<Self> {
        Self::build(kind, norm, mu.clone(), true)
    }

    pub fn with_norm_f64(kind: PotentialKind, norm: GenericNormEvaluator, mu: f64) -> GResult<Self> {
        let exact = mu_to_rational(mu)?;
        Self::build(kind, norm, exact, false)
    }

    fn build(kind: PotentialKind, norm: GenericNormEvaluator, mu: Rational, mu_exact: bool) -> GResult<Self> {
        let params = norm.params().clone();
        let rep = f_rational(&params, &mu)?;
        let y_star = match dual_positivity_bound(&params, &mu) {
            Ok(DualBound::Finite(y)) => y,
            Ok(DualBound::Infinity) => f64::INFINITY,
            Err(e) => return Err(GeometryError::DomainViolation(e.to_string())),
        };
        let mu_f = rational_to_f64(&mu);
        let mut field = PotentialField {
            kind,
            q: rep.q_poly.to_f64_coeffs(),
            pole: rep.pole_order() as i32,
            params,
            norm,
            mu: mu_f,
            mu_exact,
            rep,
            y_star,
            kernel_scale: 1.0,
            log_const: 0.0,
        };
        field.log_const = field.kernel_constant().map(f64::ln).unwrap_or(0.0);
        Ok(field)
    }

    /// Multiplies the kernel by `scale > 0`.
    pub fn with_kernel_scale(mut self, scale: f64) -> Self {
        self.kernel_scale = scale;
        self.log_const = self.kernel_constant().map(f64::ln).unwrap_or(scale.ln());
        self
    }

    pub fn kind(&self) -> PotentialKind {
        self.kind
    }

    pub fn params(&self) -> &CartanParams {
        &self.params
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// False when `mu` came from a float, so classification verdicts do not apply.
    pub fn mu_is_exact(&self) -> bool {
        self.mu_exact
    }

    pub fn rep(&self) -> &FRepresentation {
        &self.rep
    }

    /// Supremum of `Y` on the dual domain.
    pub fn y_star(&self) -> f64 {
        self.y_star
    }

    pub fn kernel_scale(&self) -> f64 {
        self.kernel_scale
    }

    /// Complex dimension `n + 1` of the Hartogs domain.
    pub fn complex_dim(&self) -> usize {
        self.params.n as usize + 1
    }

    pub fn real_dim(&self) -> usize {
        2 * self.complex_dim()
    }

    /// `kernel_scale / (mu chi(0) V)`, or `None` without a volume.
    pub fn kernel_constant(&self) -> Option<f64> {
        let v = self.params.volume?;
        let chi0 = rational_to_f64(&self.rep.chi.chi.coeff(0));
        Some(self.kernel_scale / (self.mu * chi0 * v))
    }

    fn q_eval(&self, x: f64) -> f64 {
        self.q.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    fn split(&self, point: &[f64]) -> GResult<(Vec<Complex64>, Complex64)> {
        let m = self.real_dim();
        if point.len() != m {
            return Err(GeometryError::WrongDimension { expected: m, got: point.len() });
        }
        let z = point[..m - 2]
            .chunks(2)
            .map(|c| Complex64::new(c[0], c[1]))
            .collect();
        Ok((z, Complex64::new(point[m - 2], point[m - 1])))
    }

    fn fiber_ratio(&self, z: &[Complex64], w: Complex64, sign: ConjSign) -> GResult<(f64, f64)> {
        let n = self.norm.generic_norm(z, sign)?;
        if !(n > 0.0) {
            return Err(GeometryError::DomainViolation(format!("generic norm {n} is not positive")));
        }
        Ok((n, w.norm_sqr() / n.powf(self.mu)))
    }

    /// `log F(X) - (gamma + mu) log N`, the non-constant part of `log K`.
    fn bergman_shape(&self, z: &[Complex64], w: Complex64) -> GResult<f64> {
        let (n, x) = self.fiber_ratio(z, w, ConjSign::Plus)?;
        if x >= 1.0 {
            return Err(GeometryError::DomainViolation(format!("|w|^2 / N^mu = {x} is not below 1")));
        }
        let gm = self.params.gamma as f64 + self.mu;
        Ok(self.q_eval(x).ln() - self.pole as f64 * (1.0 - x).ln() - gm * n.ln())
    }

    /// `log F(-Y) - (gamma + mu) log N*`, the non-constant part of `log K*`.
    fn dual_shape(&self, z: &[Complex64], w: Complex64) -> GResult<f64> {
        let (n, y) = self.fiber_ratio(z, w, ConjSign::Minus)?;
        let qy = self.q_eval(-y);
        if y >= self.y_star || !(qy > 0.0) {
            return Err(GeometryError::PositivityViolation(format!(
                "Y = {y}, Q(-Y) = {qy}, bound {}",
                self.y_star
            )));
        }
        let gm = self.params.gamma as f64 + self.mu;
        Ok(qy.ln() - self.pole as f64 * (1.0 + y).ln() - gm * n.ln())
    }

    fn kob_shape(&self, z: &[Complex64], w: Complex64) -> GResult<f64> {
        let n = self.norm.generic_norm(z, ConjSign::Plus)?;
        let gap = n.powf(self.mu) - w.norm_sqr();
        if !(gap > 0.0) {
            return Err(GeometryError::DomainViolation(format!("N^mu - |w|^2 = {gap} is not positive")));
        }
        Ok(-gap.ln())
    }

    /// The potential whose complex Hessian is the metric, up to an additive constant.
    pub fn potential(&self, point: &[f64]) -> GResult<f64> {
        let (z, w) = self.split(point)?;
        match self.kind {
            PotentialKind::BergmanLog => self.bergman_shape(&z, w),
            PotentialKind::DualBergmanLog => self.dual_shape(&z, w).map(|s| -s),
            PotentialKind::KobLog => self.kob_shape(&z, w),
        }
    }

    /// The full potential, including the log of the kernel constant.
    pub fn log_potential(&self, point: &[f64]) -> GResult<f64> {
        let shape = self.potential(point)?;
        Ok(match self.kind {
            PotentialKind::BergmanLog => shape + self.log_const,
            PotentialKind::DualBergmanLog => shape - self.log_const,
            PotentialKind::KobLog => shape,
        })
    }
}

fn mu_to_rational(mu: f64) -> GResult<Rational> {
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(GeometryError::InvalidMu(mu));
    }
    f64_to_rational(mu).ok_or(GeometryError::InvalidMu(mu))
}

/// Packs base coordinates `z` and fiber `w` into a real point.
pub fn point_from_complex(z: &[Complex64], w: Complex64) -> Vec<f64> {
    let mut p: Vec<f64> = z.iter().flat_map(|c| [c.re, c.im]).collect();
    p.push(w.re);
    p.push(w.im);
    p
}

// ---------------------------------------------------------------------------
// kernels

/// `K(z, w) = (1/(mu chi(0) V)) F(X) N^(-gamma-mu)`, scaled by the field's kernel scale.
pub fn kernel_eval(field: &PotentialField, z: &[Complex64], w: Complex64) -> GResult<f64> {
    if field.kind != PotentialKind::BergmanLog {
        return Err(GeometryError::WrongKind { expected: "BergmanLog" });
    }
    let c = field.kernel_constant().ok_or(GeometryError::MissingVolume)?;
    Ok(c * field.bergman_shape(z, w)?.exp())
}

/// The kernel from the first `terms` terms of `sum_m f_m X^m`.
pub fn kernel_eval_series(field: &PotentialField, z: &[Complex64], w: Complex64, terms: usize) -> GResult<f64> {
    if field.kind != PotentialKind::BergmanLog {
        return Err(GeometryError::WrongKind { expected: "BergmanLog" });
    }
    let c = field.kernel_constant().ok_or(GeometryError::MissingVolume)?;
    let (n, x) = field.fiber_ratio(z, w, ConjSign::Plus)?;
    if x >= 1.0 {
        return Err(GeometryError::DomainViolation(format!("|w|^2 / N^mu = {x} is not below 1")));
    }
    let coeffs = field.rep.series_definition(terms);
    let f: f64 = coeffs.iter().rev().fold(0.0, |acc, fm| acc * x + rational_to_f64(fm));
    Ok(c * f * n.powf(-(field.params.gamma as f64 + field.mu)))
}

/// `K*(z, w) = (1/(mu chi(0) V)) F(-Y) N*^(-gamma-mu)` with `N* = N(z, -conj z)`.
pub fn dual_kernel_eval(field: &PotentialField, z: &[Complex64], w: Complex64) -> GResult<f64> {
    if field.kind != PotentialKind::DualBergmanLog {
        return Err(GeometryError::WrongKind { expected: "DualBergmanLog" });
    }
    let c = field.kernel_constant().ok_or(GeometryError::MissingVolume)?;
    Ok(c * field.dual_shape(z, w)?.exp())
}

/// `-log((1 - |z|^2)^mu - |w|^2)` over the ball.
pub fn kob_potential_eval(params: &CartanParams, mu: f64, z: &[Complex64], w: Complex64) -> GResult<f64> {
    let norm = GenericNormEvaluator::rank_one(params.clone())?;
    let n = norm.generic_norm(z, ConjSign::Plus)?;
    let gap = n.powf(mu) - w.norm_sqr();
    if !(gap > 0.0) {
        return Err(GeometryError::DomainViolation(format!("N^mu - |w|^2 = {gap} is not positive")));
    }
    Ok(-gap.ln())
}

// ---------------------------------------------------------------------------
// finite differences

// fourth-order central first-derivative weights at offsets -2, -1, 1, 2
const D1: [(f64, f64); 4] = [(-2.0, 1.0 / 12.0), (-1.0, -8.0 / 12.0), (1.0, 8.0 / 12.0), (2.0, -1.0 / 12.0)];

fn shifted(p: &[f64], dir: &[f64], t: f64) -> Vec<f64> {
    p.iter().zip(dir).map(|(a, d)| a + t * d).collect()
}

fn unit(m: usize, k: usize) -> Vec<f64> {
    let mut e = vec![0.0; m];
    e[k] = 1.0;
    e
}

/// Fourth-order central derivative of a vector-valued `f` along `dir`.
fn fd_first<F>(f: &F, p: &[f64], dir: &[f64], h: f64) -> GResult<Vec<f64>>
where
    F: Fn(&[f64]) -> GResult<Vec<f64>>,
{
    let mut acc: Option<Vec<f64>> = None;
    for (off, wgt) in D1 {
        let v = f(&shifted(p, dir, off * h))?;
        let a = acc.get_or_insert_with(|| vec![0.0; v.len()]);
        for (s, x) in a.iter_mut().zip(&v) {
            *s += wgt * x / h;
        }
    }
    Ok(acc.expect("stencil is nonempty"))
}

/// Real Hessian of a scalar function by fourth-order central differences.
fn real_hessian<F>(f: &F, p: &[f64], h: f64) -> GResult<DMatrix<f64>>
where
    F: Fn(&[f64]) -> GResult<f64>,
{
    let m = p.len();
    let f0 = f(p)?;
    let mut hess = DMatrix::zeros(m, m);
    let mut q = p.to_vec();
    for a in 0..m {
        let mut at = |t: f64| -> GResult<f64> {
            q[a] = p[a] + t;
            let v = f(&q);
            q[a] = p[a];
            v
        };
        let (f1, fm1, f2, fm2) = (at(h)?, at(-h)?, at(2.0 * h)?, at(-2.0 * h)?);
        hess[(a, a)] = (-f2 + 16.0 * f1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
    }
    for a in 0..m {
        for b in (a + 1)..m {
            let mut s = 0.0;
            for (oa, wa) in D1 {
                for (ob, wb) in D1 {
                    q[a] = p[a] + oa * h;
                    q[b] = p[b] + ob * h;
                    s += wa * wb * f(&q)?;
                }
            }
            q[a] = p[a];
            q[b] = p[b];
            let v = s / (h * h);
            hess[(a, b)] = v;
            hess[(b, a)] = v;
        }
    }
    Ok(hess)
}

/// `h_{i jbar} = d^2 f / dz_i dzbar_j` from the real Hessian.
fn complex_hessian(hess: &DMatrix<f64>) -> DMatrix<Complex64> {
    let m = hess.nrows() / 2;
    DMatrix::from_fn(m, m, |i, j| {
        let re = hess[(2 * i, 2 * j)] + hess[(2 * i + 1, 2 * j + 1)];
        let im = hess[(2 * i, 2 * j + 1)] - hess[(2 * i + 1, 2 * j)];
        Complex64::new(re / 4.0, im / 4.0)
    })
}

/// The Riemannian metric `Re(h_{i jbar} dz_i dzbar_j)` in real coordinates.
pub fn real_metric(h: &DMatrix<Complex64>) -> DMatrix<f64> {
    let m = h.nrows();
    let mut g = DMatrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        for j in 0..m {
            let c = h[(i, j)];
            g[(2 * i, 2 * j)] = c.re;
            g[(2 * i + 1, 2 * j + 1)] = c.re;
            g[(2 * i, 2 * j + 1)] = c.im;
            g[(2 * i + 1, 2 * j)] = -c.im;
        }
    }
    g
}

/// Eigenvalues of a Hermitian matrix, each listed once, ascending.
pub fn hermitian_eigenvalues(h: &DMatrix<Complex64>) -> Vec<f64> {
    let herm = (h + h.adjoint()).map(|c| c * 0.5);
    let g = real_metric(&herm);
    let mut ev: Vec<f64> = SymmetricEigen::new(g).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    // the real form repeats every eigenvalue twice
    ev.into_iter().step_by(2).collect()
}

fn complex_metric_raw(field: &PotentialField, point: &[f64], step: f64, richardson: bool) -> GResult<DMatrix<Complex64>> {
    let f = |q: &[f64]| field.potential(q);
    let coarse = real_hessian(&f, point, step)?;
    let hess = if richardson {
        let fine = real_hessian(&f, point, step / 2.0)?;
        (fine * 16.0 - coarse) / 15.0
    } else {
        coarse
    };
    Ok(complex_hessian(&hess))
}

// ---------------------------------------------------------------------------
// metric and Ricci

#[derive(Debug, Clone, PartialEq)]
pub struct MetricSample {
    pub point: Vec<f64>,
    /// Real symmetric `2(n+1) x 2(n+1)` metric.
    pub g: DMatrix<f64>,
    /// Hermitian `(n+1) x (n+1)` matrix `g_{i jbar}`.
    pub h_complex: DMatrix<Complex64>,
}

/// Finite-difference options.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdConfig {
    pub step: f64,
    /// Outer step over inner step for nested differences.
    pub outer_factor: f64,
    /// Combine steps `h` and `h/2` to cancel the leading error term of the metric.
    pub richardson: bool,
}

impl FdConfig {
    pub fn ricci(step: f64) -> Self {
        FdConfig { step, outer_factor: RICCI_OUTER_FACTOR, richardson: false }
    }

    pub fn curvature(step: f64) -> Self {
        FdConfig { step, outer_factor: CURVATURE_OUTER_FACTOR, richardson: false }
    }

    /// Curvature stencil that stays within `margin` of the point: the
    /// default when it fits inside a quarter of the margin, otherwise outer
    /// factor 5 with the inner step shrunk to fit.
    pub fn curvature_with_margin(step: f64, margin: f64) -> Self {
        let default = FdConfig::curvature(step);
        if default.half_width() <= margin / 4.0 {
            return default;
        }
        let mut cfg = FdConfig { step, outer_factor: 5.0, richardson: false };
        cfg.step = step.min(margin / (4.0 * cfg.half_width() / step));
        cfg
    }

    /// Reach of the nested curvature stencil along one axis.
    pub fn half_width(&self) -> f64 {
        2.0 * self.step * (1.0 + 2.0 * self.outer_factor)
    }

    pub fn outer_step(&self) -> f64 {
        self.step * self.outer_factor
    }
}

impl Default for FdConfig {
    fn default() -> Self {
        FdConfig::ricci(DEFAULT_STEP)
    }
}

/// Complex Hessian of the potential by fourth-order differences, checked
/// for positive definiteness.
pub fn metric_tensor(field: &PotentialField, point: &[f64], step: f64) -> GResult<MetricSample> {
    metric_tensor_with(field, point, &FdConfig { step, outer_factor: 1.0, richardson: false })
}

pub fn metric_tensor_with(field: &PotentialField, point: &[f64], cfg: &FdConfig) -> GResult<MetricSample> {
    let h = complex_metric_raw(field, point, cfg.step, cfg.richardson)?;
    let ev = hermitian_eigenvalues(&h);
    if ev.iter().any(|&e| !(e > 0.0)) {
        return Err(GeometryError::NotPositiveDefinite { eigenvalues: ev });
    }
    Ok(MetricSample { point: point.to_vec(), g: real_metric(&h), h_complex: h })
}

fn log_det(h: &DMatrix<Complex64>) -> GResult<f64> {
    let herm = (h + h.adjoint()).map(|c| c * 0.5);
    match Cholesky::new(herm) {
        Some(ch) => Ok(ch.l().diagonal().iter().map(|d| 2.0 * d.re.ln()).sum()),
        None => Err(GeometryError::NotPositiveDefinite { eigenvalues: hermitian_eigenvalues(h) }),
    }
}

/// `Ric_{i jbar} = -d^2 log det h / dz_i dzbar_j`, with the outer Hessian
/// taken at [`RICCI_OUTER_FACTOR`] times the inner step.
pub fn ricci_tensor(field: &PotentialField, point: &[f64], step: f64) -> GResult<DMatrix<Complex64>> {
    ricci_tensor_with(field, point, &FdConfig::ricci(step))
}

pub fn ricci_tensor_with(field: &PotentialField, point: &[f64], cfg: &FdConfig) -> GResult<DMatrix<Complex64>> {
    let f = |q: &[f64]| log_det(&complex_metric_raw(field, q, cfg.step, cfg.richardson)?);
    let hess = real_hessian(&f, point, cfg.outer_step())?;
    Ok(-complex_hessian(&hess))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeResidual {
    pub lambda: f64,
    /// Largest operator norm of `Ric - lambda h` over the samples.
    pub residual: f64,
}

fn operator_norm(m: &DMatrix<Complex64>) -> f64 {
    hermitian_eigenvalues(m).iter().fold(0.0, |a, e| a.max(e.abs()))
}

/// Fits `lambda` from trace ratio at the first point and reports the
/// largest deviation of `Ric` from `lambda h`.
pub fn ke_residual(field: &PotentialField, points: &[Vec<f64>], step: f64) -> GResult<KeResidual> {
    ke_residual_with(field, points, &FdConfig::ricci(step))
}

pub fn ke_residual_with(field: &PotentialField, points: &[Vec<f64>], cfg: &FdConfig) -> GResult<KeResidual> {
    if points.len() < 2 {
        return Err(GeometryError::TooFewPoints { needed: 2, got: points.len() });
    }
    let mut lambda = None;
    let mut residual: f64 = 0.0;
    for p in points {
        let h = metric_tensor_with(field, p, &FdConfig { outer_factor: 1.0, ..*cfg })?.h_complex;
        let ric = ricci_tensor_with(field, p, cfg)?;
        let l = *lambda.get_or_insert_with(|| ric.trace().re / h.trace().re);
        residual = residual.max(operator_norm(&(ric - h * Complex64::new(l, 0.0))));
    }
    Ok(KeResidual { lambda: lambda.expect("two or more points"), residual })
}

// ---------------------------------------------------------------------------
// ODE residual

#[derive(Debug, Clone, PartialEq)]
pub struct OdeResidual {
    pub delta: f64,
    pub residual: f64,
}

/// Residual of `(mu X h' + (gamma+mu)/(n+2))^n (h' + X h'') = delta e^((n+2)h)` with
/// `h = log F / (n+2)`, `delta` fitted at the first sample.
///
/// Derivatives of `h` come from the exact derivatives of `Q`; each sample is
/// taken at its exact binary value and everything is evaluated in rational
/// arithmetic before the residual is rounded.
pub fn ode_residual(params: &CartanParams, mu: &Rational, x_samples: &[f64]) -> GResult<OdeResidual> {
    if x_samples.is_empty() {
        return Err(GeometryError::TooFewPoints { needed: 1, got: 0 });
    }
    let rep = f_rational(params, mu)?;
    let q = &rep.q_poly;
    let dq = q.derivative();
    let ddq = dq.derivative();
    let n = params.n as usize;
    let n2 = int(n as i64 + 2);
    let pole = int(rep.pole_order() as i64);
    let gm = (int(params.gamma as i64) + mu) / &n2;

    let mut delta: Option<Rational> = None;
    let mut worst = Rational::zero();
    for &xf in x_samples {
        if !(xf > 0.0 && xf < 1.0) {
            return Err(GeometryError::InvalidSample(xf));
        }
        // shortest round-trip decimal keeps denominators small
        let x = parse_rational(&format!("{xf}"))
            .ok()
            .or_else(|| f64_to_rational(xf))
            .ok_or(GeometryError::InvalidSample(xf))?;
        let omx = Rational::one() - &x;
        let (q0, q1, q2) = (q.eval(&x), dq.eval(&x), ddq.eval(&x));
        let l1 = &q1 / &q0;
        // (n+2) h' and (n+2) h''
        let h1 = (&l1 + &pole / &omx) / &n2;
        let h2 = (&q2 / &q0 - &l1 * &l1 + &pole / (&omx * &omx)) / &n2;
        let lhs = rational_pow(&(mu * &x * &h1 + &gm), n) * (&h1 + &x * &h2);
        let f = q0 / rational_pow(&omx, rep.pole_order());
        let d = delta.get_or_insert_with(|| &lhs / &f).clone();
        let r = lhs - d * f;
        let r = if r < Rational::zero() { -r } else { r };
        if r > worst {
            worst = r;
        }
    }
    Ok(OdeResidual {
        delta: rational_to_f64(&delta.expect("nonempty samples")),
        residual: rational_to_f64(&worst),
    })
}

// ---------------------------------------------------------------------------
// sectional curvature

/// Normalization of the metric whose curvature is reported.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurvatureConvention {
    /// The metric `Re h` of the field itself.
    Standard,
    /// `-2` times the field's metric. For the dual field this is the metric
    /// `2 Re dd̄ log K*`, the normalization under which the closed form of
    /// [`dual_disc_curvature_formula`] holds.
    ClosedFormDual,
}

impl CurvatureConvention {
    pub fn metric_scale(self) -> f64 {
        match self {
            CurvatureConvention::Standard => 1.0,
            CurvatureConvention::ClosedFormDual => -2.0,
        }
    }
}

fn raw_real_metric(field: &PotentialField, p: &[f64], step: f64, richardson: bool) -> GResult<DMatrix<f64>> {
    Ok(real_metric(&complex_metric_raw(field, p, step, richardson)?))
}

fn invert(g: &DMatrix<f64>) -> GResult<DMatrix<f64>> {
    g.clone().try_inverse().ok_or_else(|| GeometryError::NotPositiveDefinite {
        eigenvalues: SymmetricEigen::new(g.clone()).eigenvalues.iter().copied().collect(),
    })
}

/// `Gamma^a_{bc}` flattened as `a * m^2 + b * m + c`, from differences of `g`.
fn christoffel(field: &PotentialField, p: &[f64], cfg: &FdConfig) -> GResult<Vec<f64>> {
    let m = p.len();
    let g = raw_real_metric(field, p, cfg.step, cfg.richardson)?;
    let ginv = invert(&g)?;
    let gflat = |q: &[f64]| -> GResult<Vec<f64>> {
        Ok(raw_real_metric(field, q, cfg.step, cfg.richardson)?.as_slice().to_vec())
    };
    // dg[k][(i, j)] = d_k g_ij, column-major like nalgebra
    let mut dg = Vec::with_capacity(m);
    for k in 0..m {
        dg.push(DMatrix::from_column_slice(m, m, &fd_first(&gflat, p, &unit(m, k), cfg.outer_step())?));
    }
    let mut gamma = vec![0.0; m * m * m];
    for b in 0..m {
        for c in 0..m {
            for d in 0..m {
                let lower = 0.5 * (dg[b][(d, c)] + dg[c][(d, b)] - dg[d][(b, c)]);
                if lower == 0.0 {
                    continue;
                }
                for a in 0..m {
                    gamma[a * m * m + b * m + c] += ginv[(a, d)] * lower;
                }
            }
        }
    }
    Ok(gamma)
}

/// Real sectional curvature of the plane spanned by `e1, e2` at `point`, in
/// the field's own metric.
pub fn sectional_curvature(field: &PotentialField, point: &[f64], plane: (&[f64], &[f64]), step: f64) -> GResult<f64> {
    sectional_curvature_with(field, point, plane, &FdConfig::curvature(step), CurvatureConvention::Standard)
}

/// Christoffel symbols from differences of `g`, their derivatives along the
/// plane from differences of the symbols, then
/// `K = <R(X,Y)Y, X> / (|X|^2 |Y|^2 - <X,Y>^2)` with
/// `R^a_{bcd} = d_c G^a_{db} - d_d G^a_{cb} + G^a_{ce} G^e_{db} - G^a_{de} G^e_{cb}`.
pub fn sectional_curvature_with(
    field: &PotentialField,
    point: &[f64],
    plane: (&[f64], &[f64]),
    cfg: &FdConfig,
    convention: CurvatureConvention,
) -> GResult<f64> {
    let m = field.real_dim();
    let (x, y) = plane;
    if point.len() != m || x.len() != m || y.len() != m {
        return Err(GeometryError::WrongDimension { expected: m, got: point.len().min(x.len()).min(y.len()) });
    }
    let g = raw_real_metric(field, point, cfg.step, cfg.richardson)?;
    let ip = |a: &[f64], b: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..m {
            for j in 0..m {
                s += a[i] * g[(i, j)] * b[j];
            }
        }
        s
    };
    let area = ip(x, x) * ip(y, y) - ip(x, y).powi(2);
    let xn = x.iter().map(|t| t * t).sum::<f64>().sqrt();
    let yn = y.iter().map(|t| t * t).sum::<f64>().sqrt();
    if !(area.abs() > 1e-14 * (ip(x, x) * ip(y, y)).abs().max(f64::MIN_POSITIVE)) || xn == 0.0 || yn == 0.0 {
        return Err(GeometryError::DegeneratePlane);
    }

    let gam = |q: &[f64]| christoffel(field, q, cfg);
    let g0 = gam(point)?;
    let xu: Vec<f64> = x.iter().map(|t| t / xn).collect();
    let yu: Vec<f64> = y.iter().map(|t| t / yn).collect();
    let dx: Vec<f64> = fd_first(&gam, point, &xu, cfg.outer_step())?.iter().map(|t| t * xn).collect();
    let dy: Vec<f64> = fd_first(&gam, point, &yu, cfg.outer_step())?.iter().map(|t| t * yn).collect();
    let idx = |a: usize, b: usize, c: usize| a * m * m + b * m + c;

    // (R(X,Y)Y)^a
    let mut ryy = vec![0.0; m];
    for (a, out) in ryy.iter_mut().enumerate() {
        let mut s = 0.0;
        for b in 0..m {
            for d in 0..m {
                // d_X G^a_{db} Y^d Y^b
                s += dx[idx(a, d, b)] * y[d] * y[b];
                // d_Y G^a_{cb} X^c Y^b, with c summed via d
                s -= dy[idx(a, d, b)] * x[d] * y[b];
            }
        }
        for e in 0..m {
            let mut gx = 0.0; // G^a_{ce} X^c
            let mut gy = 0.0; // G^a_{de} Y^d
            let mut ey = 0.0; // G^e_{db} Y^d Y^b
            let mut ex = 0.0; // G^e_{cb} X^c Y^b
            for c in 0..m {
                gx += g0[idx(a, c, e)] * x[c];
                gy += g0[idx(a, c, e)] * y[c];
                for b in 0..m {
                    ey += g0[idx(e, c, b)] * y[c] * y[b];
                    ex += g0[idx(e, c, b)] * x[c] * y[b];
                }
            }
            s += gx * ey - gy * ex;
        }
        *out = s;
    }
    let numer = ip(&ryy, x);
    Ok(numer / area / convention.metric_scale())
}

/// Smallest `Y = |w|^2` at which the dual metric of a rank-one field
/// degenerates on the fiber axis `z = 0`, if any below the positivity bound.
///
/// With `g(Y) = -log F(-Y)`, the metric at `z = 0` is diagonal with entries
/// `gamma + mu - mu Y g'(Y)` on the base and `g'(Y) + Y g''(Y)` on the fiber.
pub fn dual_axis_degeneracy(field: &PotentialField) -> Option<f64> {
    if field.kind != PotentialKind::DualBergmanLog || !field.params.is_rank_one() {
        return None;
    }
    let qp = field.rep.q_poly.derivative();
    let qpp = qp.derivative();
    let (q1, q2) = (qp.to_f64_coeffs(), qpp.to_f64_coeffs());
    let horner = |c: &[f64], x: f64| c.iter().rev().fold(0.0, |acc, a| acc * x + a);
    let pole = field.pole as f64;
    let gm = field.params.gamma as f64 + field.mu;
    let worst = |y: f64| -> f64 {
        let q0 = field.q_eval(-y);
        let l = horner(&q1, -y) / q0;
        let g1 = l + pole / (1.0 + y);
        let g2 = -horner(&q2, -y) / q0 + l * l - pole / (1.0 + y).powi(2);
        (gm - field.mu * y * g1).min(g1 + y * g2)
    };
    let top = if field.y_star.is_finite() { field.y_star } else { 1e6 };
    let samples = 4000;
    let mut prev = 0.0;
    for k in 1..=samples {
        let y = top * k as f64 / samples as f64 * (1.0 - 1e-9);
        if worst(y) <= 0.0 {
            let (mut lo, mut hi) = (prev, y);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if worst(mid) <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Some(0.5 * (lo + hi));
        }
        prev = y;
    }
    None
}

/// Largest `|w|` for which the field's metric is defined and positive on the
/// fiber axis `z = 0`: the square root of the smaller of the degeneracy and
/// the positivity bound for the dual field, `1` otherwise.
pub fn fiber_axis_limit(field: &PotentialField) -> f64 {
    match field.kind {
        PotentialKind::DualBergmanLog => {
            let y = dual_axis_degeneracy(field).unwrap_or(f64::INFINITY).min(field.y_star);
            y.sqrt()
        }
        _ => 1.0,
    }
}

/// Closed-form curvature of the dual metric over the disc with `mu = 2` at
/// `(z, w) = (0, i v)` on the plane of `d/dx` and `d/dv`.
pub fn dual_disc_curvature_formula(v: f64) -> f64 {
    let v2 = v * v;
    let v4 = v2 * v2;
    let num = v4 * v4 + 12.0 * v4 * v2 - 26.0 * v4 + 12.0 * v2 - 15.0;
    let den = 12.0 * (v2 - 1.0).powi(2) * (v4 - 2.0 * v2 + 5.0);
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::cartan::make_params;
    use std::f64::consts::PI;

    fn disc() -> CartanParams {
        make_params(1, 0, 0).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kernel_at_origin() {
        let f = PotentialField::new(PotentialKind::BergmanLog, disc(), &int(1)).unwrap();
        assert!((kernel_eval(&f, &[c(0.0, 0.0)], c(0.0, 0.0)).unwrap() - 2.0 / PI).abs() < 1e-15);
        let f = PotentialField::new(PotentialKind::BergmanLog, disc(), &int(2)).unwrap();
        assert!((kernel_eval(&f, &[c(0.0, 0.0)], c(0.0, 0.0)).unwrap() - 3.0 / PI).abs() < 1e-15);
        let d = PotentialField::new(PotentialKind::DualBergmanLog, disc(), &int(2)).unwrap();
        let k0 = dual_kernel_eval(&d, &[c(0.0, 0.0)], c(0.0, 0.0)).unwrap();
        assert!((k0 - 3.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn kernel_blows_up_at_the_base_boundary() {
        let f = PotentialField::new(PotentialKind::BergmanLog, disc(), &int(2)).unwrap();
        let k0 = kernel_eval(&f, &[c(0.0, 0.0)], c(0.0, 0.0)).unwrap();
        for t in [0.9, 0.99, 0.999] {
            let k = kernel_eval(&f, &[c(t, 0.0)], c(0.0, 0.0)).unwrap();
            let expected = k0 * (1.0 - t * t).powf(-4.0);
            assert!((k / expected - 1.0).abs() < 1e-12);
        }
        assert!(matches!(
            kernel_eval(&f, &[c(1.0, 0.0)], c(0.0, 0.0)),
            Err(GeometryError::Cartan(CartanError::DomainViolation(_)))
        ));
        assert!(kernel_eval(&f, &[c(0.0, 0.0)], c(1.0, 0.0)).is_err());
    }

    #[test]
    fn ball_kernel_closed_form() {
        // 2/pi (1 - |z|^2 - |w|^2)^-3 on the two-ball
        let f = PotentialField::new(PotentialKind::BergmanLog, disc(), &int(1)).unwrap();
        for (z, w) in [(c(0.3, 0.1), c(0.2, -0.4)), (c(-0.5, 0.2), c(0.1, 0.1))] {
            let k = kernel_eval(&f, &[z], w).unwrap();
            let expected = 2.0 / PI * (1.0 - z.norm_sqr() - w.norm_sqr()).powi(-3);
            assert!((k / expected - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn series_matches_closed_form() {
        for mu in [rat(1, 2), int(2), rat(3, 2)] {
            let f = PotentialField::new(PotentialKind::BergmanLog, make_params(1, 0, 1).unwrap(), &mu).unwrap();
            let zs = [c(0.1, 0.2), c(-0.3, 0.05)];
            for w in [c(0.3, 0.1), c(-0.2, 0.4), c(0.0, 0.0)] {
                let a = kernel_eval(&f, &zs, w).unwrap();
                let b = kernel_eval_series(&f, &zs, w, 200).unwrap();
                assert!((a / b - 1.0).abs() < 1e-12, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn dual_kernel_positivity() {
        let d = PotentialField::new(PotentialKind::DualBergmanLog, disc(), &int(2)).unwrap();
        assert!((d.y_star() - 3.0).abs() < 1e-12);
        assert!(dual_kernel_eval(&d, &[c(0.0, 0.0)], c(1.0, 0.0)).unwrap() > 0.0);
        assert!(matches!(
            dual_kernel_eval(&d, &[c(0.0, 0.0)], c(1.75, 0.0)),
            Err(GeometryError::PositivityViolation(_))
        ));
        // the dual base is all of C
        assert!(dual_kernel_eval(&d, &[c(5.0, 0.0)], c(1.0, 0.0)).unwrap() > 0.0);
    }

    #[test]
    fn wrong_kind_and_volume() {
        let f = PotentialField::new(PotentialKind::KobLog, disc(), &int(1)).unwrap();
        assert!(matches!(
            kernel_eval(&f, &[c(0.0, 0.0)], c(0.0, 0.0)),
            Err(GeometryError::WrongKind { .. })
        ));
        let p = make_params(2, 1, 0).unwrap();
        let norm = GenericNormEvaluator::user_supplied(p, |_, _| 1.0);
        let g = PotentialField::with_norm(PotentialKind::BergmanLog, norm, &int(1)).unwrap();
        let z = vec![c(0.0, 0.0); 3];
        assert_eq!(kernel_eval(&g, &z, c(0.0, 0.0)), Err(GeometryError::MissingVolume));
    }

    #[test]
    fn kob_potential_values() {
        assert_eq!(kob_potential_eval(&disc(), 1.0, &[c(0.0, 0.0)], c(0.0, 0.0)).unwrap(), 0.0);
        let v = kob_potential_eval(&disc(), 1.0, &[c(0.5, 0.0)], c(0.0, 0.5)).unwrap();
        assert!((v + 0.5f64.ln()).abs() < 1e-15);
        assert!(kob_potential_eval(&disc(), 1.0, &[c(0.5, 0.0)], c(0.0, 0.9)).is_err());
    }

    #[test]
    fn ball_metric_at_origin() {
        let f = PotentialField::new(PotentialKind::BergmanLog, disc(), &int(1)).unwrap();
        let s = metric_tensor(&f, &[0.0; 4], DEFAULT_STEP).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let expected = if i == j { 3.0 } else { 0.0 };
                assert!((s.h_complex[(i, j)] - c(expected, 0.0)).norm() < 1e-7);
            }
        }
        assert!((s.g[(0, 0)] - 3.0).abs() < 1e-7);
    }

    /// Bergman metric of the two-ball, `3 dd̄(-log(1 - |p|^2))`.
    fn ball_metric_exact(p: &[f64]) -> DMatrix<Complex64> {
        let zs = [c(p[0], p[1]), c(p[2], p[3])];
        let s = 1.0 - zs[0].norm_sqr() - zs[1].norm_sqr();
        DMatrix::from_fn(2, 2, |i, j| {
            let delta = if i == j { 1.0 } else { 0.0 };
            (c(delta, 0.0) / s + zs[i].conj() * zs[j] / (s * s)) * 3.0
        })
    }

    #[test]
    fn metric_matches_closed_form_and_converges() {
        let f = PotentialField::new(PotentialKind::BergmanLog, disc(), &int(1)).unwrap();
        let pts = [
            [0.1, 0.2, 0.0, 0.1],
            [-0.3, 0.1, 0.2, -0.2],
            [0.0, 0.0, 0.4, 0.1],
            [0.2, -0.2, -0.1, 0.3],
            [0.05, 0.1, 0.1, 0.05],
        ];
        for p in &pts {
            let exact = ball_metric_exact(p);
            let h0 = 0.04;
            let e1 = (metric_tensor(&f, p, h0).unwrap().h_complex - &exact).norm();
            let e2 = (metric_tensor(&f, p, h0 / 2.0).unwrap().h_complex - &exact).norm();
            assert!(e1 / e2 >= 8.0, "ratio {}", e1 / e2);
            let fine = metric_tensor(&f, p, DEFAULT_STEP).unwrap().h_complex;
            let h_adj = fine.adjoint();
            assert!((&fine - &exact).norm() < 1e-7);
            assert!((&fine - h_adj).norm() < 1e-9);
        }
    }

    #[test]
    fn richardson_improves_coarse_steps() {
        let f = PotentialField::new(PotentialKind::BergmanLog, disc(), &int(1)).unwrap();
        let p = [0.2, 0.1, -0.1, 0.3];
        let exact = ball_metric_exact(&p);
        let plain = metric_tensor(&f, &p, 0.05).unwrap().h_complex;
        let cfg = FdConfig { step: 0.05, outer_factor: 1.0, richardson: true };
        let rich = metric_tensor_with(&f, &p, &cfg).unwrap().h_complex;
        assert!((rich - &exact).norm() < (plain - &exact).norm() / 10.0);
    }

    #[test]
    fn dual_metric_is_positive_definite_at_origin() {
        let d = PotentialField::new(PotentialKind::DualBergmanLog, disc(), &int(2)).unwrap();
        let s = metric_tensor(&d, &[0.0; 4], DEFAULT_STEP).unwrap();
        // -log K* = (gamma + mu) log(1 + |z|^2) - log Q(-Y) + 3 log(1 + Y):
        // h_zz = 4, h_ww = 1/3 + 3 = 10/3 at the origin
        assert!((s.h_complex[(0, 0)].re - 4.0).abs() < 1e-7);
        assert!((s.h_complex[(1, 1)].re - 10.0 / 3.0).abs() < 1e-7);
    }

    #[test]
    fn not_positive_definite_is_reported() {
        // past Y = 1 the dual metric over the disc with mu = 2 degenerates
        let d = PotentialField::new(PotentialKind::DualBergmanLog, disc(), &int(2)).unwrap();
        let err = metric_tensor(&d, &[0.0, 0.0, 0.0, 1.2], DEFAULT_STEP).unwrap_err();
        assert!(matches!(err, GeometryError::NotPositiveDefinite { .. }));
    }

    #[test]
    fn ball_is_einstein() {
        let f = PotentialField::new(PotentialKind::BergmanLog, disc(), &int(1)).unwrap();
        let ric = ricci_tensor(&f, &[0.0; 4], DEFAULT_STEP).unwrap();
        for i in 0..2 {
            assert!((ric[(i, i)].re + 3.0).abs() < 1e-5);
        }
        let pts = vec![vec![0.0; 4], vec![0.1, 0.2, -0.1, 0.0], vec![0.2, 0.0, 0.1, 0.3]];
        let r = ke_residual(&f, &pts, DEFAULT_STEP).unwrap();
        assert!((r.lambda + 1.0).abs() < 1e-5);
        assert!(r.residual < 1e-4);
        assert!(ke_residual(&f, &pts[..1], DEFAULT_STEP).is_err());
    }

    #[test]
    fn ode_examples() {
        let xs: Vec<f64> = (1..10).map(|k| k as f64 / 10.0).collect();
        let r = ode_residual(&disc(), &int(1), &xs).unwrap();
        assert!((r.delta - 0.5).abs() < 1e-15);
        assert!(r.residual < 1e-12);
        let r = ode_residual(&CartanParams::ball(2).unwrap(), &int(1), &xs).unwrap();
        assert!((r.delta - 1.0 / 6.0).abs() < 1e-15);
        assert!(r.residual < 1e-12);
        let r = ode_residual(&disc(), &int(2), &xs).unwrap();
        assert!(r.residual > 1e-3);
        assert_eq!(ode_residual(&disc(), &int(1), &[0.0]), Err(GeometryError::InvalidSample(0.0)));
        assert!(ode_residual(&disc(), &int(1), &[1.0]).is_err());
    }

    #[test]
    fn curvature_of_ball_planes() {
        // normalized to h = 3 dd̄(-log(1-|p|^2)): holomorphic planes -4/3, totally real -1/3
        let f = PotentialField::new(PotentialKind::BergmanLog, disc(), &int(1)).unwrap();
        let p = [0.0; 4];
        let ex = [1.0, 0.0, 0.0, 0.0];
        let ey = [0.0, 1.0, 0.0, 0.0];
        let eu = [0.0, 0.0, 1.0, 0.0];
        let k_hol = sectional_curvature(&f, &p, (&ex, &ey), DEFAULT_STEP).unwrap();
        let k_real = sectional_curvature(&f, &p, (&ex, &eu), DEFAULT_STEP).unwrap();
        assert!((k_hol + 4.0 / 3.0).abs() < 1e-3, "{k_hol}");
        assert!((k_real + 1.0 / 3.0).abs() < 1e-3, "{k_real}");
        assert_eq!(
            sectional_curvature(&f, &p, (&ex, &ex), DEFAULT_STEP),
            Err(GeometryError::DegeneratePlane)
        );
    }

    #[test]
    fn dual_curvature_at_origin() {
        let d = PotentialField::new(PotentialKind::DualBergmanLog, disc(), &int(2)).unwrap();
        let ex = [1.0, 0.0, 0.0, 0.0];
        let ev = [0.0, 0.0, 0.0, 1.0];
        let cfg = FdConfig::curvature(DEFAULT_STEP);
        let k = sectional_curvature_with(&d, &[0.0; 4], (&ex, &ev), &cfg, CurvatureConvention::ClosedFormDual).unwrap();
        assert!((k + 0.25).abs() < 1e-3 * 0.25, "{k}");
        assert_eq!(dual_disc_curvature_formula(0.0), -0.25);
    }

    #[test]
    fn dual_axis_degenerates_at_one_for_mu_two() {
        let d = PotentialField::new(PotentialKind::DualBergmanLog, disc(), &int(2)).unwrap();
        let y = dual_axis_degeneracy(&d).unwrap();
        assert!((y - 1.0).abs() < 1e-12, "{y}");
        let b = PotentialField::new(PotentialKind::DualBergmanLog, disc(), &int(1)).unwrap();
        assert_eq!(dual_axis_degeneracy(&b), None);
        let f = PotentialField::new(PotentialKind::BergmanLog, disc(), &int(2)).unwrap();
        assert_eq!(dual_axis_degeneracy(&f), None);
    }

    #[test]
    fn margin_aware_config() {
        let c = FdConfig::curvature_with_margin(DEFAULT_STEP, 1.0);
        assert_eq!(c, FdConfig::curvature(DEFAULT_STEP));
        let c = FdConfig::curvature_with_margin(DEFAULT_STEP, 0.01);
        assert!(c.half_width() <= 0.01 / 4.0 + 1e-15);
        assert_eq!(c.outer_factor, 5.0);
    }

    #[test]
    fn float_mu_matches_rational_mu() {
        let a = PotentialField::new(PotentialKind::BergmanLog, disc(), &rat(3, 2)).unwrap();
        let b = PotentialField::new_f64(PotentialKind::BergmanLog, disc(), 1.5).unwrap();
        assert!(a.mu_is_exact() && !b.mu_is_exact());
        let p = [0.1, 0.2, 0.3, -0.1];
        assert_eq!(a.potential(&p).unwrap(), b.potential(&p).unwrap());
        let s = PotentialField::new_f64(PotentialKind::BergmanLog, disc(), std::f64::consts::SQRT_2).unwrap();
        assert!(metric_tensor(&s, &p, DEFAULT_STEP).is_ok());
        assert!(PotentialField::new_f64(PotentialKind::BergmanLog, disc(), -1.0).is_err());
    }

    #[test]
    fn kernel_scale_does_not_move_the_metric() {
        let f = PotentialField::new(PotentialKind::BergmanLog, disc(), &int(2)).unwrap();
        let g = f.clone().with_kernel_scale(1e3);
        let p = [0.1, -0.2, 0.3, 0.1];
        assert!((g.log_potential(&p).unwrap() - f.log_potential(&p).unwrap() - 1e3f64.ln()).abs() < 1e-12);
        let a = metric_tensor(&f, &p, DEFAULT_STEP).unwrap();
        let b = metric_tensor(&g, &p, DEFAULT_STEP).unwrap();
        assert!((a.g - b.g).norm() <= 1e-10);
        let k0 = kernel_eval(&f, &[c(0.1, -0.2)], c(0.3, 0.1)).unwrap();
        let k1 = kernel_eval(&g, &[c(0.1, -0.2)], c(0.3, 0.1)).unwrap();
        assert!((k1 / k0 - 1e3).abs() < 1e-9);
    }
}
