// SPDX-License-Identifier: Apache-2.0

//! Exact decision procedures on `Q(X)`: unit-ball detection, the
//! Kähler-Einstein polynomial identity, projective inducedness of the dual
//! metric, the positivity bound of the dual kernel, and proportionality of
//! the Bergman potential to the Kobayashi-type potential.
//!
//! Every verdict here is exact; `mu` must be rational.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::algebra::{
    factorial, format_rational, int, poly_smallest_positive_root, rational_pow, Poly, Rational,
};
use crate::cartan::{make_params, CartanError, CartanParams};
use crate::genfun::{f_rational, ser_rational, FRepresentation, GenfunError};

/// Root tolerance used for [`dual_positivity_bound`].
pub const DUAL_BOUND_TOLERANCE: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ClassifyError {
    #[error("alpha must be positive, got {0}")]
    NonPositiveAlpha(String),
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
    #[error(transparent)]
    Genfun(#[from] GenfunError),
    #[error(transparent)]
    Cartan(#[from] CartanError),
}

fn big(n: num_bigint::BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn ser_opt_rational<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&format_rational(q)),
        None => s.serialize_str("none"),
    }
}

// ---------------------------------------------------------------------------
// unit ball

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnitBallWitness {
    pub is_ball: bool,
    pub q_constant: bool,
    /// `D + 1`.
    pub pole_order: usize,
    /// Verdict of [`condchi_identity`] at `d = n + 2`, `c = (n+1)!`.
    pub condchi: bool,
}

/// True iff `Q` is constant and `D + 1 = n + 2`. A positive answer must
/// coincide with `(r,a,b) = (1,0,n-1)`, `mu = 1`, `Q = (n+1)!` and with the
/// product identity; any disagreement is an internal-consistency error.
pub fn is_unit_ball(params: &CartanParams, mu: &Rational) -> Result<UnitBallWitness, ClassifyError> {
    let rep = f_rational(params, mu)?;
    unit_ball_from(&rep)
}

fn unit_ball_from(rep: &FRepresentation) -> Result<UnitBallWitness, ClassifyError> {
    let params = &rep.params;
    let n = params.n as usize;
    let q_constant = rep.q_poly.is_constant();
    let pole_order = rep.pole_order();
    let is_ball = q_constant && pole_order == n + 2;
    let c = big(factorial(n + 1));
    let condchi = condchi_identity(params, &rep.mu, n + 2, &c);

    if is_ball {
        let shape = params.r == 1 && params.a == 0 && params.b + 1 == params.n;
        if !shape || !rep.mu.is_one() || rep.q_poly.coeff(0) != c {
            return Err(ClassifyError::InternalConsistency(format!(
                "{params}, mu = {}: Q is constant ({}) but the instance is not the ball with mu = 1 and Q = (n+1)!",
                format_rational(&rep.mu),
                rep.q_poly
            )));
        }
    }
    if condchi != is_ball {
        return Err(ClassifyError::InternalConsistency(format!(
            "{params}, mu = {}: ball test says {is_ball} but the product identity says {condchi}",
            format_rational(&rep.mu)
        )));
    }
    Ok(UnitBallWitness {
        is_ball,
        q_constant,
        pole_order,
        condchi,
    })
}

/// Whether `prod_i prod_l [s mu + 1 + (i-1)a/2 + l] = c (s+1)...(s+d-2) / ((d-1)! mu)`
/// as polynomials in `s`. Returns false for `d = 1`, where the right side
/// is undefined.
pub fn condchi_identity(params: &CartanParams, mu: &Rational, d: usize, c: &Rational) -> bool {
    if d < 2 || mu.is_zero() {
        return false;
    }
    let mut lhs = Poly::one();
    for i in 1..=params.r {
        for l in 0..=(params.b + (params.r - i) * params.a) {
            let shift = Rational::new(
                BigInt::from(2 + (i as i64 - 1) * params.a as i64 + 2 * l as i64),
                BigInt::from(2),
            );
            lhs = lhs * Poly::new(vec![shift, mu.clone()]);
        }
    }
    let mut rhs = Poly::constant(c / (big(factorial(d - 1)) * mu));
    for l in 1..=(d - 2) {
        rhs = rhs * Poly::from_ints(&[l as i64, 1]);
    }
    lhs == rhs
}

// ---------------------------------------------------------------------------
// Kähler-Einstein identity

/// Why `U^n V (1-X)^(D+1)` is not a constant multiple of `Q W`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NonProportionality {
    DegreeMismatch { lhs_degree: usize, rhs_degree: usize },
    EvaluationMismatch {
        #[serde(serialize_with = "ser_rational")]
        x: Rational,
        #[serde(serialize_with = "ser_rational")]
        lhs: Rational,
        #[serde(serialize_with = "ser_rational")]
        rhs: Rational,
    },
    CoefficientMismatch { index: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KEWitness {
    pub u: Poly,
    pub v: Poly,
    /// `Q`, from which `W` is built on demand.
    pub q: Poly,
    pub n: u32,
    /// The proportionality constant, if one exists.
    #[serde(serialize_with = "ser_opt_rational")]
    pub delta: Option<Rational>,
    /// `delta` fitted from leading coefficients, whether or not it verifies.
    #[serde(serialize_with = "ser_opt_rational")]
    pub fitted_delta: Option<Rational>,
    /// `U^n V (1-X)^(D+1) - delta Q W` when the full expansion was carried out.
    pub residual: Option<Poly>,
    pub certificate: Option<NonProportionality>,
}

impl KEWitness {
    pub fn holds(&self) -> bool {
        self.delta.is_some()
    }

    /// `W = (n+2)^(n+1) Q^(n+2) (1-X)^(n+2)`, expanded.
    pub fn w(&self) -> Poly {
        w_expanded(&self.q, self.n)
    }
}

fn w_scale(n: u32) -> Rational {
    rational_pow(&int(n as i64 + 2), n as usize + 1)
}

fn w_expanded(q: &Poly, n: u32) -> Poly {
    (q.pow(n + 2) * Poly::one_minus_x().pow(n + 2)).scale(&w_scale(n))
}

fn w_eval(q: &Poly, n: u32, x: &Rational) -> Rational {
    let k = n as usize + 2;
    w_scale(n) * rational_pow(&q.eval(x), k) * rational_pow(&(Rational::one() - x), k)
}

struct KeParts {
    u: Poly,
    v: Poly,
    q: Poly,
    n: u32,
    pole: u32,
}

fn ke_parts(rep: &FRepresentation) -> KeParts {
    let p = &rep.params;
    let q = rep.q_poly.clone();
    let dq = q.derivative();
    let ddq = dq.derivative();
    let x = Poly::x();
    let omx = Poly::one_minus_x();
    let mu = rep.mu.clone();
    let d1 = int(rep.pole_order() as i64);
    let gm = int(p.gamma as i64) + &mu;

    let u = (&x * &omx * &dq).scale(&mu) + (&x * &q).scale(&(&mu * &d1)) + (&omx * &q).scale(&gm);
    let v = ((&dq + &(&x * &ddq)) * &q - &x * &(&dq * &dq)) * omx.pow(2) + (&q * &q).scale(&d1);
    KeParts {
        u,
        v,
        q,
        n: p.n,
        pole: rep.pole_order() as u32,
    }
}

/// Sample points for the exact evaluation pre-check.
fn probe_points() -> [Rational; 3] {
    [Rational::new(1.into(), 3.into()), Rational::new((-2).into(), 7.into()), int(2)]
}

/// Tests `U^n V (1-X)^(D+1) = delta Q W` for a constant `delta`, where
/// `U = mu X (1-X) Q' + mu X (D+1) Q + (gamma+mu)(1-X) Q`,
/// `V = [(Q' + X Q'') Q - X Q'^2](1-X)^2 + (D+1) Q^2` and
/// `W = (n+2)^(n+1) Q^(n+2) (1-X)^(n+2)`.
///
/// `delta` comes from leading coefficients. A degree count or exact evaluation
/// at a few rational points usually refutes the identity without expanding
/// `U^n`; otherwise all coefficients are compared.
pub fn ke_identity(params: &CartanParams, mu: &Rational) -> Result<KEWitness, ClassifyError> {
    let rep = f_rational(params, mu)?;
    Ok(ke_identity_from(&rep, false))
}

/// Like [`ke_identity`] but always expands both sides and fills the residual.
pub fn ke_identity_expanded(params: &CartanParams, mu: &Rational) -> Result<KEWitness, ClassifyError> {
    let rep = f_rational(params, mu)?;
    Ok(ke_identity_from(&rep, true))
}

fn ke_identity_from(rep: &FRepresentation, expand: bool) -> KEWitness {
    let KeParts { u, v, q, n, pole } = ke_parts(rep);
    let omx = Poly::one_minus_x();

    let du = u.degree().unwrap_or(0);
    let dv = v.degree().unwrap_or(0);
    let lhs_degree = n as usize * du + dv + pole as usize;
    let dq = q.degree().unwrap_or(0);
    let rhs_degree = dq + (n as usize + 2) * (dq + 1);
    // (1-X)^k has leading coefficient (-1)^k
    let sign = if pole % 2 == 1 { -int(1) } else { int(1) };
    let lhs_lc = rational_pow(u.leading_coeff().expect("U != 0"), n as usize)
        * v.leading_coeff().expect("V != 0")
        * sign;
    let q_lc = q.leading_coeff().expect("Q != 0");
    let w_sign = if n % 2 == 1 { -int(1) } else { int(1) };
    let w_lc = w_scale(n) * rational_pow(q_lc, n as usize + 2) * w_sign;
    let rhs_lc = q_lc * w_lc;
    let fitted = &lhs_lc / &rhs_lc;

    let mut witness = KEWitness {
        u,
        v,
        q: q.clone(),
        n,
        delta: None,
        fitted_delta: Some(fitted.clone()),
        residual: None,
        certificate: None,
    };

    let mut refuted = None;
    if lhs_degree != rhs_degree {
        refuted = Some(NonProportionality::DegreeMismatch { lhs_degree, rhs_degree });
    } else {
        for x in probe_points() {
            let lhs = rational_pow(&witness.u.eval(&x), n as usize)
                * witness.v.eval(&x)
                * rational_pow(&(Rational::one() - &x), pole as usize);
            let rhs = &fitted * q.eval(&x) * w_eval(&q, n, &x);
            if lhs != rhs {
                refuted = Some(NonProportionality::EvaluationMismatch { x, lhs, rhs });
                break;
            }
        }
    }

    if refuted.is_none() || expand {
        let lhs = witness.u.pow(n) * &witness.v * omx.pow(pole);
        let residual = lhs - (&q * &w_expanded(&q, n)).scale(&fitted);
        if refuted.is_none() {
            if residual.is_zero() {
                witness.delta = Some(fitted);
            } else {
                let index = residual
                    .coeffs()
                    .iter()
                    .position(|c| !c.is_zero())
                    .expect("nonzero residual");
                refuted = Some(NonProportionality::CoefficientMismatch { index });
            }
        }
        witness.residual = Some(residual);
    }
    witness.certificate = refuted;
    witness
}

// ---------------------------------------------------------------------------
// projective inducedness of the dual metric

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProjCertificate {
    /// `(1+X)^((D+1) alpha) / Q(-X)^alpha` equals this polynomial.
    Quotient { quotient: Poly },
    /// Non-integral `alpha` with constant `Q(-X) = q0`: the quotient is
    /// `(1+X)^k` times the real scalar `q0^(-alpha)`.
    ScaledPower {
        k: u64,
        #[serde(serialize_with = "ser_rational")]
        q0: Rational,
    },
    /// `(D+1) alpha` is not a positive integer.
    NonIntegralExponent {
        #[serde(serialize_with = "ser_rational")]
        exponent: Rational,
    },
    /// Non-integral `alpha` and non-constant `Q(-X)`.
    NonConstantRoot,
    /// Exact division left this remainder.
    Remainder { remainder: Poly },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjInduced {
    #[serde(serialize_with = "ser_rational")]
    pub alpha: Rational,
    pub induced: bool,
    pub certificate: ProjCertificate,
}

/// Whether `(1+X)^((D+1) alpha) / Q(-X)^alpha` is a polynomial.
pub fn proj_induced_dual(
    params: &CartanParams,
    mu: &Rational,
    alpha: &Rational,
) -> Result<ProjInduced, ClassifyError> {
    let rep = f_rational(params, mu)?;
    proj_induced_from(&rep, alpha)
}

fn proj_induced_from(rep: &FRepresentation, alpha: &Rational) -> Result<ProjInduced, ClassifyError> {
    if !alpha.is_positive() {
        return Err(ClassifyError::NonPositiveAlpha(format_rational(alpha)));
    }
    let exponent = alpha * int(rep.pole_order() as i64);
    let done = |induced, certificate| ProjInduced {
        alpha: alpha.clone(),
        induced,
        certificate,
    };
    if !exponent.is_integer() {
        return Ok(done(false, ProjCertificate::NonIntegralExponent { exponent }));
    }
    let k = exponent.to_integer().to_u64().expect("exponent fits in u64");
    let q_neg = rep.q_poly.reflect();
    let numerator = Poly::from_ints(&[1, 1]).pow(k as u32);

    if !alpha.is_integer() {
        if q_neg.is_constant() {
            let q0 = q_neg.coeff(0);
            return Ok(done(true, ProjCertificate::ScaledPower { k, q0 }));
        }
        return Ok(done(false, ProjCertificate::NonConstantRoot));
    }
    let e = alpha.to_integer().to_u32().expect("alpha fits in u32");
    let (quotient, remainder) = numerator
        .div_rem(&q_neg.pow(e))
        .map_err(|err| ClassifyError::InternalConsistency(err.to_string()))?;
    if remainder.is_zero() {
        Ok(done(true, ProjCertificate::Quotient { quotient }))
    } else {
        Ok(done(false, ProjCertificate::Remainder { remainder }))
    }
}

// ---------------------------------------------------------------------------
// dual positivity bound

/// Supremum of `Y` on which the dual kernel stays positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DualBound {
    Finite(f64),
    Infinity,
}

impl DualBound {
    pub fn as_f64(self) -> f64 {
        match self {
            DualBound::Finite(y) => y,
            DualBound::Infinity => f64::INFINITY,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, DualBound::Infinity)
    }
}

impl Serialize for DualBound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            DualBound::Finite(y) => s.serialize_f64(*y),
            DualBound::Infinity => s.serialize_str("infinity"),
        }
    }
}

/// Smallest positive root of `Q(-Y)`, or infinity if there is none.
pub fn dual_positivity_bound(params: &CartanParams, mu: &Rational) -> Result<DualBound, ClassifyError> {
    let rep = f_rational(params, mu)?;
    Ok(dual_bound_from(&rep))
}

/// [`dual_positivity_bound`] with the root refined to width `tol`.
pub fn dual_positivity_bound_with(params: &CartanParams, mu: &Rational, tol: f64) -> Result<DualBound, ClassifyError> {
    let rep = f_rational(params, mu)?;
    Ok(dual_bound_tol(&rep, tol))
}

fn dual_bound_from(rep: &FRepresentation) -> DualBound {
    dual_bound_tol(rep, DUAL_BOUND_TOLERANCE)
}

fn dual_bound_tol(rep: &FRepresentation, tol: f64) -> DualBound {
    match poly_smallest_positive_root(&rep.q_poly.reflect(), tol) {
        Some(y) => DualBound::Finite(y),
        None => DualBound::Infinity,
    }
}

// ---------------------------------------------------------------------------
// proportionality to the Kobayashi-type potential

/// `Some(alpha)` iff `F = c_alpha (1-X)^-alpha` has a single partial-fraction
/// term; then `alpha = (gamma + mu) / mu` must hold.
pub fn kob_proportionality(params: &CartanParams, mu: &Rational) -> Result<Option<Rational>, ClassifyError> {
    let rep = f_rational(params, mu)?;
    kob_from(&rep)
}

fn kob_from(rep: &FRepresentation) -> Result<Option<Rational>, ClassifyError> {
    let terms = rep.nonzero_partial_fractions();
    if terms.len() != 1 {
        return Ok(None);
    }
    let alpha = int(terms[0] as i64);
    let expected = (int(rep.params.gamma as i64) + &rep.mu) / &rep.mu;
    if alpha != expected {
        return Err(ClassifyError::InternalConsistency(format!(
            "{}, mu = {}: single partial fraction of order {} but (gamma+mu)/mu = {}",
            rep.params,
            format_rational(&rep.mu),
            format_rational(&alpha),
            format_rational(&expected)
        )));
    }
    Ok(Some(alpha))
}

// ---------------------------------------------------------------------------
// full report and sweep

/// The `alpha` values tried by [`classify`]: `1/(D+1)` and `1/3, 1/2, 1, 2`.
pub fn default_alphas(rep: &FRepresentation) -> Vec<Rational> {
    let mut v = vec![
        Rational::new(1.into(), BigInt::from(rep.pole_order())),
        Rational::new(1.into(), 3.into()),
        Rational::new(1.into(), 2.into()),
        int(1),
        int(2),
    ];
    v.sort();
    v.dedup();
    v
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub params: CartanParams,
    #[serde(serialize_with = "ser_rational")]
    pub mu: Rational,
    pub is_ball: bool,
    pub q_constant: bool,
    pub q_poly: Poly,
    pub big_d: usize,
    pub ke_identity_holds: bool,
    #[serde(serialize_with = "ser_opt_rational")]
    pub delta: Option<Rational>,
    pub ke_certificate: Option<NonProportionality>,
    /// Keyed by the rendered `alpha`.
    pub proj_induced: BTreeMap<String, ProjInduced>,
    pub dual_bound: DualBound,
    #[serde(serialize_with = "ser_opt_rational")]
    pub kob_alpha: Option<Rational>,
}

impl ClassificationReport {
    pub fn proj_induced_some(&self) -> bool {
        self.proj_induced.values().any(|p| p.induced)
    }

    /// The four ball criteria give the same answer.
    pub fn verdicts_agree(&self) -> bool {
        let b = self.is_ball;
        b == self.ke_identity_holds && b == self.proj_induced_some() && b == self.kob_alpha.is_some()
    }
}

/// Runs every predicate with [`default_alphas`].
pub fn classify(params: &CartanParams, mu: &Rational) -> Result<ClassificationReport, ClassifyError> {
    let rep = f_rational(params, mu)?;
    let alphas = default_alphas(&rep);
    classify_with(&rep, &alphas)
}

pub fn classify_with(rep: &FRepresentation, alphas: &[Rational]) -> Result<ClassificationReport, ClassifyError> {
    let ball = unit_ball_from(rep)?;
    let ke = ke_identity_from(rep, false);
    let mut proj_induced = BTreeMap::new();
    for alpha in alphas {
        proj_induced.insert(format_rational(alpha), proj_induced_from(rep, alpha)?);
    }
    Ok(ClassificationReport {
        params: rep.params.clone(),
        mu: rep.mu.clone(),
        is_ball: ball.is_ball,
        q_constant: ball.q_constant,
        q_poly: rep.q_poly.clone(),
        big_d: rep.big_d,
        ke_identity_holds: ke.holds(),
        delta: ke.delta,
        ke_certificate: ke.certificate,
        proj_induced,
        dual_bound: dual_bound_from(rep),
        kob_alpha: kob_from(rep)?,
    })
}

/// All valid `(r, a, b)` with `1 <= r <= max_r`, `a <= max_a`, `b <= max_b`.
/// Rank one contributes only `a = 0`.
pub fn parameter_grid(max_r: u32, max_a: u32, max_b: u32) -> Vec<CartanParams> {
    let mut out = Vec::new();
    for r in 1..=max_r {
        for a in 0..=max_a {
            for b in 0..=max_b {
                if let Ok(p) = make_params(r, a, b) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// The `mu` values of the standard sweep: `1/2, 1, 3/2, 2, 3`.
pub fn standard_mus() -> Vec<Rational> {
    vec![
        Rational::new(1.into(), 2.into()),
        int(1),
        Rational::new(3.into(), 2.into()),
        int(2),
        int(3),
    ]
}

/// Classifies every `(params, mu)` pair in parallel, in input order
/// (params outer, mu inner).
pub fn sweep(params: &[CartanParams], mus: &[Rational]) -> Vec<Result<ClassificationReport, ClassifyError>> {
    let jobs: Vec<(&CartanParams, &Rational)> =
        params.iter().flat_map(|p| mus.iter().map(move |m| (p, m))).collect();
    jobs.par_iter().map(|(p, m)| classify(p, m)).collect()
}

/// `(n+1)!`, the constant numerator of `F` on the ball.
pub fn ball_numerator(n: u32) -> Rational {
    big(factorial(n as usize + 1))
}

/// `1/(n+1)!`, the KE constant of the ball.
pub fn ball_delta(n: u32) -> Rational {
    ball_numerator(n).recip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn params(r: u32, a: u32, b: u32) -> CartanParams {
        make_params(r, a, b).unwrap()
    }

    #[test]
    fn unit_ball_examples() {
        let w = is_unit_ball(&params(1, 0, 0), &int(1)).unwrap();
        assert!(w.is_ball && w.q_constant && w.condchi);
        assert_eq!(w.pole_order, 3);
        assert!(!is_unit_ball(&params(1, 0, 0), &int(2)).unwrap().is_ball);
        assert!(!is_unit_ball(&params(2, 1, 0), &int(1)).unwrap().is_ball);
        for n in 1..=4 {
            assert!(is_unit_ball(&CartanParams::ball(n).unwrap(), &int(1)).unwrap().is_ball);
        }
    }

    #[test]
    fn condchi_examples() {
        for n in 1..=3u32 {
            let p = CartanParams::ball(n).unwrap();
            assert!(condchi_identity(&p, &int(1), n as usize + 2, &ball_numerator(n)));
            assert!(!condchi_identity(&p, &int(1), n as usize + 2, &int(1)));
            assert!(!condchi_identity(&p, &int(1), n as usize + 1, &ball_numerator(n)));
        }
        for d in 1..6 {
            for c in [int(1), int(2), int(6), rat(1, 2)] {
                assert!(!condchi_identity(&params(1, 0, 0), &int(2), d, &c));
                assert!(!condchi_identity(&params(2, 2, 0), &int(1), d, &c));
            }
        }
    }

    #[test]
    fn ke_identity_ball() {
        let w = ke_identity(&params(1, 0, 0), &int(1)).unwrap();
        assert_eq!(w.u, Poly::from_ints(&[6]));
        assert_eq!(w.v, Poly::from_ints(&[12]));
        assert_eq!(w.delta, Some(rat(1, 2)));
        assert!(w.residual.unwrap().is_zero());
        assert!(w.certificate.is_none());

        for n in 1..=3 {
            let w = ke_identity(&CartanParams::ball(n).unwrap(), &int(1)).unwrap();
            assert_eq!(w.delta, Some(ball_delta(n)));
        }
    }

    #[test]
    fn ke_identity_fails_off_ball() {
        let w = ke_identity(&params(1, 0, 0), &int(2)).unwrap();
        assert!(!w.holds());
        assert!(w.certificate.is_some());
        let full = ke_identity_expanded(&params(1, 0, 0), &int(2)).unwrap();
        assert!(!full.residual.unwrap().is_zero());
        assert!(!ke_identity(&params(2, 1, 0), &int(1)).unwrap().holds());
    }

    #[test]
    fn ke_prefilter_agrees_with_full_expansion() {
        for (r, a, b) in [(1, 0, 0), (1, 0, 1), (2, 1, 0), (2, 2, 1)] {
            for mu in standard_mus() {
                let quick = ke_identity(&params(r, a, b), &mu).unwrap();
                let full = ke_identity_expanded(&params(r, a, b), &mu).unwrap();
                assert_eq!(quick.holds(), full.residual.as_ref().unwrap().is_zero());
                assert_eq!(quick.fitted_delta, full.fitted_delta);
            }
        }
    }

    #[test]
    fn proj_induced_examples() {
        let p = params(1, 0, 0);
        let res = proj_induced_dual(&p, &int(1), &int(1)).unwrap();
        assert!(res.induced);
        let expected = Poly::from_ints(&[1, 3, 3, 1]).scale(&rat(1, 2));
        assert_eq!(res.certificate, ProjCertificate::Quotient { quotient: expected });

        let res = proj_induced_dual(&p, &int(2), &int(1)).unwrap();
        assert!(!res.induced);
        assert!(matches!(res.certificate, ProjCertificate::Remainder { .. }));

        let res = proj_induced_dual(&p, &int(1), &rat(1, 2)).unwrap();
        assert!(!res.induced);
        assert_eq!(
            res.certificate,
            ProjCertificate::NonIntegralExponent { exponent: rat(3, 2) }
        );

        let res = proj_induced_dual(&p, &int(1), &rat(1, 3)).unwrap();
        assert!(res.induced);
        assert_eq!(res.certificate, ProjCertificate::ScaledPower { k: 1, q0: int(2) });

        assert!(proj_induced_dual(&p, &int(1), &int(0)).is_err());
        assert!(proj_induced_dual(&p, &int(1), &int(-1)).is_err());
    }

    #[test]
    fn dual_bound_examples() {
        let p = params(1, 0, 0);
        assert_eq!(dual_positivity_bound(&p, &int(1)).unwrap(), DualBound::Infinity);
        for (mu, expected) in [(int(2), 3.0), (int(3), 2.0), (int(4), 5.0 / 3.0)] {
            let y = dual_positivity_bound(&p, &mu).unwrap().as_f64();
            assert!((y - expected).abs() < 1e-10, "{y} vs {expected}");
        }
    }

    #[test]
    fn kob_examples() {
        assert_eq!(kob_proportionality(&params(1, 0, 0), &int(1)).unwrap(), Some(int(3)));
        assert_eq!(kob_proportionality(&params(1, 0, 0), &int(2)).unwrap(), None);
        assert_eq!(kob_proportionality(&params(2, 1, 0), &int(1)).unwrap(), None);
    }

    #[test]
    fn report_for_the_disc() {
        let rep = classify(&params(1, 0, 0), &int(1)).unwrap();
        assert!(rep.is_ball && rep.verdicts_agree());
        assert_eq!(rep.delta, Some(rat(1, 2)));
        assert_eq!(rep.kob_alpha, Some(int(3)));
        assert!(rep.dual_bound.is_infinite());
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["delta"], "1/2");
        assert_eq!(json["kob_alpha"], "3");
        assert_eq!(json["dual_bound"], "infinity");

        let rep = classify(&params(1, 0, 0), &int(2)).unwrap();
        assert!(!rep.is_ball && rep.verdicts_agree());
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["delta"], "none");
        assert_eq!(json["dual_bound"], 3.0);
    }

    #[test]
    fn small_sweep_agrees() {
        let grid = parameter_grid(2, 2, 2);
        let mus = [int(1), int(2)];
        for res in sweep(&grid, &mus) {
            let rep = res.unwrap();
            assert!(rep.verdicts_agree(), "{} mu={}", rep.params, rep.mu);
            let expect_ball = rep.params.r == 1 && rep.mu.is_one();
            assert_eq!(rep.is_ball, expect_ball);
        }
    }

    #[test]
    fn grid_shape() {
        let g = parameter_grid(3, 4, 4);
        assert_eq!(g.len(), 55);
        assert!(g.iter().all(|p| p.r != 1 || p.a == 0));
    }
}
