// SPDX-License-Identifier: Apache-2.0

//! The fiber generating function `F(X) = sum_m P(mu(m+1)) X^m` of a
//! Cartan-Hartogs Bergman kernel, with `P(t) = t chi(t)`.
//!
//! `F` is available in three exact views that must agree: the defining
//! series, the Stirling-number closed form, and the rational form
//! `Q(X) / (1-X)^(D+1)`. A fourth view, partial fractions in `(1-X)^-i`,
//! is derived from `Q`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{
    binomial, factorial, format_rational, int, monomial_to_falling, rational_pow, rational_to_f64,
    stirling2_table, AlgebraError, Poly, Rational, RationalFn,
};
use crate::cartan::CartanParams;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GenfunError {
    #[error("mu must be a positive rational, got {0}")]
    NonPositiveMu(String),
    #[error("degree collapse: P(mu(m+1)) has degree {got} in m, expected {expected}")]
    DegreeCollapse { expected: usize, got: usize },
    #[error("internal consistency: {0}")]
    Inconsistent(String),
    #[error("F has a pole at X = 1")]
    Pole,
    #[error("cross-validation needs order >= {min}, got {order}")]
    OrderTooSmall { order: usize, min: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn big(n: num_bigint::BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `chi(s)` together with `P(t) = t chi(t)` and its degree `D`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChiData {
    pub chi: Poly,
    pub p: Poly,
    /// Coefficients `a_0..a_D` of `P`; `a_0 = 0`.
    #[serde(serialize_with = "ser_rationals")]
    pub a_coeffs: Vec<Rational>,
    pub big_d: usize,
}

/// Expands `chi(s) = prod_{i=1}^r prod_{l=0}^{b+(r-i)a} (s + 1 + (i-1)a/2 + l)`.
pub fn build_chi(params: &CartanParams) -> ChiData {
    let mut chi = Poly::one();
    for i in 1..=params.r {
        let upper = params.b + (params.r - i) * params.a;
        for l in 0..=upper {
            // 1 + (i-1)a/2 + l, exact when a is odd
            let shift = Rational::new(
                BigInt::from(2 + (i as i64 - 1) * params.a as i64 + 2 * l as i64),
                BigInt::from(2),
            );
            chi = chi * Poly::linear_root(shift);
        }
    }
    let p = &chi * &Poly::x();
    let big_d = p.degree().expect("nonzero");
    ChiData {
        chi,
        a_coeffs: p.coeffs().to_vec(),
        p,
        big_d,
    }
}

fn check_mu(mu: &Rational) -> Result<(), GenfunError> {
    if !mu.is_positive() {
        return Err(GenfunError::NonPositiveMu(format_rational(mu)));
    }
    Ok(())
}

/// `f_m = mu(m+1) chi(mu(m+1))` for `m < order`.
pub fn f_series(params: &CartanParams, mu: &Rational, order: usize) -> Result<Vec<Rational>, GenfunError> {
    check_mu(mu)?;
    let chi = build_chi(params);
    Ok((0..order)
        .map(|m| chi.p.eval(&(mu * int(m as i64 + 1))))
        .collect())
}

/// `F` in every exact view, for one `(params, mu)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FRepresentation {
    pub params: CartanParams,
    #[serde(serialize_with = "ser_rational")]
    pub mu: Rational,
    pub chi: ChiData,
    /// Numerator of `F = Q(X) / (1-X)^(D+1)`.
    pub q_poly: Poly,
    pub big_d: usize,
    /// `P(mu(m+1)) = sum_k b_k m!/(m-k)!`.
    #[serde(serialize_with = "ser_rationals")]
    pub b_coeffs: Vec<Rational>,
    /// `(s_q, q)` with `F = sum_q s_q X^(q-1) / (1-X)^(q+1)`, where
    /// `s_q = q! sum_m a_m mu^m S(m,q)`.
    #[serde(serialize_with = "ser_terms")]
    pub stirling_terms: Vec<(Rational, usize)>,
    /// `c_1..c_(D+1)` with `F = sum_i c_i (1-X)^-i`.
    #[serde(serialize_with = "ser_rationals")]
    pub c_coeffs: Vec<Rational>,
}

pub(crate) fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

pub(crate) fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for q in v {
        seq.serialize_element(&format_rational(q))?;
    }
    seq.end()
}

fn ser_terms<S: serde::Serializer>(v: &[(Rational, usize)], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (c, q) in v {
        seq.serialize_element(&(format_rational(c), q))?;
    }
    seq.end()
}

/// Builds every exact view of `F` and checks `Q(1) = b_D D! != 0` and `Q(0) = b_0 != 0`.
pub fn f_rational(params: &CartanParams, mu: &Rational) -> Result<FRepresentation, GenfunError> {
    check_mu(mu)?;
    let chi = build_chi(params);
    let big_d = chi.big_d;

    // P(mu(m+1)) as a polynomial in m
    let in_m = chi.p.compose(&Poly::new(vec![mu.clone(), mu.clone()]));
    let got = in_m.degree().unwrap_or(0);
    if got != big_d {
        return Err(GenfunError::DegreeCollapse { expected: big_d, got });
    }
    let b_coeffs = monomial_to_falling(&in_m)?;

    let one_minus_x = Poly::one_minus_x();
    let mut q_poly = Poly::zero();
    for (k, bk) in b_coeffs.iter().enumerate() {
        if bk.is_zero() {
            continue;
        }
        let term = Poly::monomial(bk * big(factorial(k)), k) * one_minus_x.pow((big_d - k) as u32);
        q_poly = q_poly + term;
    }

    let q_at_one = q_poly.eval(&Rational::one());
    if q_at_one != &b_coeffs[big_d] * big(factorial(big_d)) || q_at_one.is_zero() {
        return Err(GenfunError::Inconsistent(format!(
            "Q(1) = {} but b_D D! = {}",
            format_rational(&q_at_one),
            format_rational(&(&b_coeffs[big_d] * big(factorial(big_d))))
        )));
    }
    let q_at_zero = q_poly.coeff(0);
    if q_at_zero != b_coeffs[0] || q_at_zero.is_zero() {
        return Err(GenfunError::Inconsistent(format!(
            "Q(0) = {} but b_0 = {}",
            format_rational(&q_at_zero),
            format_rational(&b_coeffs[0])
        )));
    }

    let stirling = stirling2_table(big_d);
    let mut stirling_terms = Vec::with_capacity(big_d);
    for q in 1..=big_d {
        let mut s = Rational::zero();
        for (m, am) in chi.a_coeffs.iter().enumerate().skip(q) {
            if am.is_zero() {
                continue;
            }
            s += am * rational_pow(mu, m) * big(stirling[m][q].clone());
        }
        stirling_terms.push((s * big(factorial(q)), q));
    }

    let c_coeffs = partial_fractions(&q_poly, big_d + 1);

    Ok(FRepresentation {
        params: params.clone(),
        mu: mu.clone(),
        chi,
        q_poly,
        big_d,
        b_coeffs,
        stirling_terms,
        c_coeffs,
    })
}

/// `c_1..c_pole` with `Q(X)/(1-X)^pole = sum_i c_i (1-X)^-i`, read off the
/// Taylor expansion of `Q` at `X = 1` (repeated synthetic division).
fn partial_fractions(q: &Poly, pole: usize) -> Vec<Rational> {
    let at_one = q.taylor_shift(&Rational::one());
    // Q = sum_j t_j (X-1)^j = sum_j (-1)^j t_j (1-X)^j
    let mut c = vec![Rational::zero(); pole];
    for (j, t) in at_one.coeffs().iter().enumerate() {
        let e = if j % 2 == 1 { -t } else { t.clone() };
        // (1-X)^(j - pole) = (1-X)^-i with i = pole - j
        c[pole - j - 1] = e;
    }
    c
}

impl FRepresentation {
    /// `D + 1`, the order of the pole at `X = 1`.
    pub fn pole_order(&self) -> usize {
        self.big_d + 1
    }

    pub fn rational_fn(&self) -> RationalFn {
        RationalFn::new(self.q_poly.clone(), Poly::one_minus_x().pow(self.pole_order() as u32))
            .expect("nonzero denominator")
    }

    /// The Stirling closed form assembled over the common denominator.
    pub fn stirling_rational_fn(&self) -> RationalFn {
        let pole = self.pole_order();
        let mut num = Poly::zero();
        for (s, q) in &self.stirling_terms {
            // X^(q-1) / (1-X)^(q+1) = X^(q-1) (1-X)^(pole-q-1) / (1-X)^pole
            num = num + Poly::monomial(s.clone(), q - 1) * Poly::one_minus_x().pow((pole - q - 1) as u32);
        }
        RationalFn::new(num, Poly::one_minus_x().pow(pole as u32)).expect("nonzero denominator")
    }

    pub fn partial_fraction_fn(&self) -> RationalFn {
        let pole = self.pole_order();
        let mut num = Poly::zero();
        for (idx, c) in self.c_coeffs.iter().enumerate() {
            let i = idx + 1;
            num = num + Poly::constant(c.clone()) * Poly::one_minus_x().pow((pole - i) as u32);
        }
        RationalFn::new(num, Poly::one_minus_x().pow(pole as u32)).expect("nonzero denominator")
    }

    /// Indices `i` with `c_i != 0`.
    pub fn nonzero_partial_fractions(&self) -> Vec<usize> {
        self.c_coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(idx, _)| idx + 1)
            .collect()
    }

    pub fn series_definition(&self, order: usize) -> Vec<Rational> {
        (0..order)
            .map(|m| self.chi.p.eval(&(&self.mu * int(m as i64 + 1))))
            .collect()
    }

    /// Coefficient of `X^j` is `sum_q s_q binom(j+1, q)`.
    pub fn series_stirling(&self, order: usize) -> Vec<Rational> {
        (0..order)
            .map(|j| {
                self.stirling_terms
                    .iter()
                    .map(|(s, q)| s * big(binomial(j + 1, *q)))
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect()
    }

    /// Coefficient of `X^j` is `sum_i Q_i binom(j - i + D, D)`.
    pub fn series_rational(&self, order: usize) -> Vec<Rational> {
        let d = self.big_d;
        (0..order)
            .map(|j| {
                self.q_poly
                    .coeffs()
                    .iter()
                    .enumerate()
                    .take(j + 1)
                    .map(|(i, qi)| qi * big(binomial(j - i + d, d)))
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect()
    }

    pub fn f_eval(&self, x: &Rational) -> Result<Rational, GenfunError> {
        let base = Rational::one() - x;
        if base.is_zero() {
            return Err(GenfunError::Pole);
        }
        Ok(self.q_poly.eval(x) / rational_pow(&base, self.pole_order()))
    }

    pub fn f_eval_f64(&self, x: f64) -> Result<f64, GenfunError> {
        if x == 1.0 {
            return Err(GenfunError::Pole);
        }
        Ok(self.q_poly.eval_f64(x) / (1.0 - x).powi(self.pole_order() as i32))
    }

    /// The Stirling closed form evaluated directly, `X != 1`.
    pub fn f_eval_stirling_f64(&self, x: f64) -> Result<f64, GenfunError> {
        if x == 1.0 {
            return Err(GenfunError::Pole);
        }
        Ok(self
            .stirling_terms
            .iter()
            .map(|(s, q)| rational_to_f64(s) * x.powi(*q as i32 - 1) / (1.0 - x).powi(*q as i32 + 1))
            .sum())
    }
}

pub fn f_eval(rep: &FRepresentation, x: &Rational) -> Result<Rational, GenfunError> {
    rep.f_eval(x)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientMismatch {
    pub index: usize,
    #[serde(serialize_with = "ser_rational")]
    pub series: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub stirling: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub rational: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossValidation {
    pub order: usize,
    pub agree: bool,
    /// Largest absolute coefficient difference between any two views.
    #[serde(serialize_with = "ser_rational")]
    pub max_discrepancy: Rational,
    pub first_mismatch: Option<CoefficientMismatch>,
}

/// Expands the three views to `order` terms and compares them exactly.
pub fn cross_validate(rep: &FRepresentation, order: usize) -> Result<CrossValidation, GenfunError> {
    let min = rep.big_d + 2;
    if order < min {
        return Err(GenfunError::OrderTooSmall { order, min });
    }
    let series = rep.series_definition(order);
    let stirling = rep.series_stirling(order);
    let rational = rep.series_rational(order);
    let mut max = Rational::zero();
    let mut first = None;
    for j in 0..order {
        let d1 = (&series[j] - &stirling[j]).abs();
        let d2 = (&series[j] - &rational[j]).abs();
        let d3 = (&stirling[j] - &rational[j]).abs();
        for d in [d1, d2, d3] {
            if d > max {
                max = d;
            }
        }
        if first.is_none() && (series[j] != stirling[j] || series[j] != rational[j]) {
            first = Some(CoefficientMismatch {
                index: j,
                series: series[j].clone(),
                stirling: stirling[j].clone(),
                rational: rational[j].clone(),
            });
        }
    }
    Ok(CrossValidation {
        order,
        agree: first.is_none(),
        max_discrepancy: max,
        first_mismatch: first,
    })
}
