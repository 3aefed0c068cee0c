// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use num_traits::Zero;

use super::{AlgebraError, Poly, Rational};

/// Ratio of polynomials kept in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
}

impl RationalFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFn { num, den: Poly::one() });
        }
        let g = num.gcd(&den);
        let (mut num, _) = num.div_rem(&g)?;
        let (mut den, _) = den.div_rem(&g)?;
        let lc = den.leading_coeff().expect("nonzero").clone();
        if lc != Rational::from_integer(1.into()) {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RationalFn { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFn { num: p, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational, AlgebraError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(AlgebraError::InvalidArgument(format!(
                "pole of rational function at {x}"
            )));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn add(&self, other: &RationalFn) -> RationalFn {
        RationalFn::new(
            &self.num * &other.den + &other.num * &self.den,
            &self.den * &other.den,
        )
        .expect("product of nonzero denominators")
    }

    pub fn mul(&self, other: &RationalFn) -> RationalFn {
        RationalFn::new(&self.num * &other.num, &self.den * &other.den)
            .expect("product of nonzero denominators")
    }

    /// First `order` Taylor coefficients at `X = 0`; requires `den(0) != 0`.
    pub fn series(&self, order: usize) -> Result<Vec<Rational>, AlgebraError> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(AlgebraError::InvalidArgument(
                "denominator vanishes at the expansion point".into(),
            ));
        }
        let inv = d0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(order);
        for k in 0..order {
            let mut acc = self.num.coeff(k);
            for (j, dj) in self.den.coeffs().iter().enumerate().skip(1) {
                if j > k {
                    break;
                }
                if !dj.is_zero() {
                    acc -= dj * &out[k - j];
                }
            }
            out.push(acc * &inv);
        }
        Ok(out)
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
