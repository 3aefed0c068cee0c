// SPDX-License-Identifier: Apache-2.0

//! Exact rational arithmetic and dense univariate polynomials.
//!
//! Everything downstream (generating functions, classification predicates)
//! is built on [`Poly`] over [`Rational`]. Values are immutable once built
//! and every operation is a pure function, so they can be shared freely
//! across threads.

mod combinatorics;
mod poly;
mod ratfn;
mod roots;

pub use combinatorics::{
    binomial, factorial, falling_factorial_poly, falling_to_monomial, monomial_to_falling,
    stirling2, stirling2_table,
};
pub use poly::Poly;
pub use ratfn::RationalFn;
pub use roots::{
    isolate_positive_roots, poly_smallest_positive_root, sign_variations, DEFAULT_ROOT_TOLERANCE,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always stored reduced with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("empty decomposition: the zero polynomial has no falling-factorial expansion")]
    EmptyDecomposition,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("invalid rational literal {0:?}")]
    ParseRational(String),
    #[error("{0}")]
    InvalidArgument(String),
}

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, an integer, or a terminating decimal such as `"1.5"`.
pub fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let err = || AlgebraError::ParseRational(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let digits: BigInt = format!("{whole_digits}{frac}").parse().map_err(|_| err())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let value = Rational::new(digits, scale);
        return Ok(if negative { -value } else { value });
    }
    let n: BigInt = t.parse().map_err(|_| err())?;
    Ok(Rational::from_integer(n))
}

/// Renders as `"p/q"`, or `"p"` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Nearest `f64`, robust to numerators and denominators beyond `f64` range.
pub fn rational_to_f64(q: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Scale both parts down to at most ~1000 bits before dividing.
    let nbits = q.numer().bits() as i64;
    let dbits = q.denom().bits() as i64;
    let shift_n = (nbits - 1000).max(0) as usize;
    let shift_d = (dbits - 1000).max(0) as usize;
    let n = (q.numer().abs() >> shift_n).to_f64().unwrap_or(f64::INFINITY);
    let d = (q.denom() >> shift_d).to_f64().unwrap_or(f64::INFINITY);
    let mag = n / d * 2f64.powi((shift_n as i64 - shift_d as i64) as i32);
    if q.is_negative() {
        -mag
    } else {
        mag
    }
}

/// Exact conversion of a finite `f64` to a rational.
pub fn f64_to_rational(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub(crate) fn rational_pow(base: &Rational, exp: usize) -> Rational {
    let mut result = Rational::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    result
}
