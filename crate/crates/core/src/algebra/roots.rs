// SPDX-License-Identifier: Apache-2.0

//! Positive real-root isolation by Descartes' rule of signs with exact
//! bisection (Vincent-Collins-Akritas style).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{f64_to_rational, int, rational_to_f64, Poly, Rational};

pub const DEFAULT_ROOT_TOLERANCE: f64 = 1e-12;

/// Number of sign changes in the coefficient sequence, zeros skipped.
pub fn sign_variations(p: &Poly) -> usize {
    let mut last: Option<bool> = None;
    let mut count = 0;
    for c in p.coeffs() {
        if c.is_zero() {
            continue;
        }
        let positive = c.is_positive();
        if last.is_some_and(|l| l != positive) {
            count += 1;
        }
        last = Some(positive);
    }
    count
}

/// Integer coefficients, ascending.
type IntPoly = Vec<BigInt>;

fn to_int_poly(p: &Poly) -> IntPoly {
    p.primitive_part()
        .coeffs()
        .iter()
        .map(|c| c.to_integer())
        .collect()
}

fn int_sign_variations(p: &[BigInt]) -> usize {
    let mut last: Option<bool> = None;
    let mut count = 0;
    for c in p.iter().filter(|c| !c.is_zero()) {
        let positive = c.is_positive();
        if last.is_some_and(|l| l != positive) {
            count += 1;
        }
        last = Some(positive);
    }
    count
}

/// `p(x + 1)` by repeated synthetic division.
fn shift_one(p: &[BigInt]) -> IntPoly {
    let mut a = p.to_vec();
    let d = a.len();
    for i in 0..d {
        for j in (i..d - 1).rev() {
            let t = a[j + 1].clone();
            a[j] += t;
        }
    }
    a
}

/// `2^d p(x / 2)`.
fn halve(p: &[BigInt]) -> IntPoly {
    let d = p.len() - 1;
    p.iter()
        .enumerate()
        .map(|(i, c)| c << (d - i))
        .collect()
}

/// Descartes bound for the roots of `p` in `(0, 1)`: sign variations of
/// `(1+x)^d p(1/(1+x))`.
fn unit_variations(p: &[BigInt]) -> usize {
    let mut rev = p.to_vec();
    rev.reverse();
    int_sign_variations(&shift_one(&rev))
}

/// Smallest `e` with `2^e` above every root modulus (Cauchy bound).
fn bound_exponent(p: &Poly) -> u64 {
    let lc = p.leading_coeff().expect("nonzero").abs();
    let deg = p.degree().unwrap_or(0);
    let max = p.coeffs()[..deg]
        .iter()
        .map(|c| c.abs() / &lc)
        .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    let bound = max + Rational::one();
    let mut e = 0u64;
    let mut pow = Rational::one();
    while pow <= bound {
        pow *= int(2);
        e += 1;
    }
    e
}

/// Prepares `p` for isolation: square-free, with roots at zero removed.
fn reduced(p: &Poly) -> Poly {
    let mut s = p.square_free();
    while !s.is_zero() && s.coeff(0).is_zero() {
        s = Poly::new(s.coeffs()[1..].to_vec());
    }
    s
}

/// Dyadic `c / 2^k` times `2^e`.
fn dyadic(c: &BigInt, k: u64, e: u64) -> Rational {
    let num = c << e;
    Rational::new(num, BigInt::one() << k)
}

/// Interval `(c/2^k, (c+1)/2^k)` of the scaled polynomial, or the exact root `c/2^k`.
enum Found {
    Interval(BigInt, u64),
    Point(BigInt, u64),
}

/// Vincent-Collins-Akritas bisection on `p` with roots in `(0, 1)`; intervals
/// are reported left to right. Stops after `limit` roots.
fn vca(p: IntPoly, c: BigInt, k: u64, out: &mut Vec<Found>, limit: usize) {
    if out.len() >= limit {
        return;
    }
    match unit_variations(&p) {
        0 => {}
        1 => out.push(Found::Interval(c, k)),
        _ => {
            let left = halve(&p);
            let mut right = shift_one(&left);
            let c2: BigInt = &c << 1;
            vca(left, c2.clone(), k + 1, out, limit);
            if right[0].is_zero() {
                if out.len() < limit {
                    out.push(Found::Point(&c2 + 1, k + 1));
                }
                right.remove(0);
            }
            vca(right, c2 + 1, k + 1, out, limit);
        }
    }
}

fn isolate(p: &Poly, limit: usize) -> (Poly, Vec<(Rational, Rational)>) {
    if p.is_constant() {
        return (p.clone(), Vec::new());
    }
    let s = reduced(p);
    if s.is_constant() {
        return (s, Vec::new());
    }
    let e = bound_exponent(&s);
    // q(x) = s(2^e x) has its positive roots in (0, 1)
    let scaled: IntPoly = to_int_poly(&s)
        .into_iter()
        .enumerate()
        .map(|(i, c)| c << (e as usize * i))
        .collect();
    let mut found = Vec::new();
    vca(scaled, BigInt::zero(), 0, &mut found, limit);
    let intervals = found
        .into_iter()
        .map(|f| match f {
            Found::Interval(c, k) => {
                let hi = &c + 1;
                (dyadic(&c, k, e), dyadic(&hi, k, e))
            }
            Found::Point(c, k) => {
                let x = dyadic(&c, k, e);
                (x.clone(), x)
            }
        })
        .collect();
    (s, intervals)
}

/// Disjoint open intervals (or exact points, as `(r, r)`) each containing
/// exactly one distinct positive root of `p`, sorted left to right.
pub fn isolate_positive_roots(p: &Poly) -> Vec<(Rational, Rational)> {
    isolate(p, usize::MAX).1
}

/// Smallest positive real root of `p`, refined by exact bisection until the
/// bracketing interval is narrower than `tol`; `None` if there is none.
pub fn poly_smallest_positive_root(p: &Poly, tol: f64) -> Option<f64> {
    let (s, roots) = isolate(p, 1);
    let (mut lo, mut hi) = roots.into_iter().next()?;
    if lo == hi {
        return Some(rational_to_f64(&lo));
    }
    let tol = f64_to_rational(tol.abs().max(f64::MIN_POSITIVE)).expect("finite tolerance");
    let sign_lo = s.eval(&lo).is_positive();
    while &hi - &lo > tol {
        let mid = (&lo + &hi) / int(2);
        let v = s.eval(&mid);
        if v.is_zero() {
            return Some(rational_to_f64(&mid));
        }
        if v.is_positive() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(rational_to_f64(&((lo + hi) / int(2))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use proptest::prelude::*;

    #[test]
    fn linear_root() {
        let p = Poly::from_ints(&[6, -2]);
        let r = poly_smallest_positive_root(&p, DEFAULT_ROOT_TOLERANCE).unwrap();
        assert!((r - 3.0).abs() < 1e-12);
    }

    #[test]
    fn constant_has_no_root() {
        assert_eq!(poly_smallest_positive_root(&Poly::from_ints(&[2]), 1e-12), None);
        assert_eq!(poly_smallest_positive_root(&Poly::from_ints(&[1, 1]), 1e-12), None);
        assert_eq!(poly_smallest_positive_root(&Poly::from_ints(&[1, 0, 1]), 1e-12), None);
    }

    #[test]
    fn sqrt_two() {
        let p = Poly::from_ints(&[-2, 0, 1]);
        let r = poly_smallest_positive_root(&p, 1e-12).unwrap();
        assert!((r - std::f64::consts::SQRT_2).abs() < 2e-12);
    }

    #[test]
    fn picks_smallest_of_several_and_handles_multiplicity() {
        // (X-1/3)^2 (X-2)(X-5)(X+1)
        let p = Poly::linear_root(rat(-1, 3)).pow(2)
            * Poly::from_ints(&[-2, 1])
            * Poly::from_ints(&[-5, 1])
            * Poly::from_ints(&[1, 1]);
        let roots = isolate_positive_roots(&p);
        assert_eq!(roots.len(), 3);
        let r = poly_smallest_positive_root(&p, 1e-12).unwrap();
        assert!((r - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn root_exactly_on_bisection_point() {
        // Cauchy bound of X^2 - 3X + 2 is 4, so the first probe is the root 2.
        let p = Poly::from_ints(&[2, -3, 1]);
        let roots = isolate_positive_roots(&p);
        assert_eq!(roots.len(), 2);
        assert!(roots[0].0 < int(1) && int(1) < roots[0].1);
        assert_eq!(roots[1], (int(2), int(2)));
        let r = poly_smallest_positive_root(&p, 1e-12).unwrap();
        assert!((r - 1.0).abs() < 1e-12);
        let q = Poly::from_ints(&[-2, 1]) * Poly::from_ints(&[1, 0, 1]);
        let r = poly_smallest_positive_root(&q, 1e-12).unwrap();
        assert!((r - 2.0).abs() < 1e-12);
    }

    #[test]
    fn zero_root_is_not_positive() {
        let p = Poly::from_ints(&[0, -3, 1]);
        let r = poly_smallest_positive_root(&p, 1e-12).unwrap();
        assert!((r - 3.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn recovers_planted_smallest_root(
            roots in prop::collection::vec((1i64..40, 1i64..9), 1..5),
            negative in prop::collection::vec(1i64..20, 0..3),
        ) {
            let mut p = Poly::one();
            let mut smallest = f64::INFINITY;
            for (n, d) in &roots {
                p = p * Poly::linear_root(-rat(*n, *d));
                smallest = smallest.min(*n as f64 / *d as f64);
            }
            for n in &negative {
                p = p * Poly::from_ints(&[*n, 1]);
            }
            let tol = 1e-10;
            let r = poly_smallest_positive_root(&p, tol).unwrap();
            prop_assert!((r - smallest).abs() <= tol, "{} vs {}", r, smallest);
            // |p(r)| within the local Lipschitz bound times tol, plus rounding
            let lipschitz = p.derivative().eval_f64(r).abs() * 2.0;
            let rounding: f64 = p.to_f64_coeffs().iter().enumerate()
                .map(|(i, c)| c.abs() * r.powi(i as i32)).sum::<f64>() * 1e-13;
            prop_assert!(p.eval_f64(r).abs() <= lipschitz * tol + rounding);
            // no sign change of p on (0, r - tol)
            let below = r - tol;
            if below > 0.0 {
                let grid = 50;
                let s0 = p.eval_f64(1e-9).signum();
                for i in 1..grid {
                    let x = below * i as f64 / grid as f64;
                    prop_assert_eq!(p.eval_f64(x).signum(), s0);
                }
            }
        }
    }
}
