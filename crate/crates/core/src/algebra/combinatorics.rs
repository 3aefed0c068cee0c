// SPDX-License-Identifier: Apache-2.0

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::{AlgebraError, Poly, Rational};

/// Stirling numbers of the second kind `S(m, q)` for `0 <= q <= m <= max_m`.
///
/// Row `m` has length `m + 1`. Built from `S(m,q) = q S(m-1,q) + S(m-1,q-1)`
/// with `S(0,0) = 1` and `S(m,0) = 0` for `m >= 1`.
pub fn stirling2_table(max_m: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max_m + 1);
    rows.push(vec![BigUint::one()]);
    for m in 1..=max_m {
        let prev = &rows[m - 1];
        let mut row = vec![BigUint::zero(); m + 1];
        for (q, slot) in row.iter_mut().enumerate().skip(1) {
            let stay = if q < m { &prev[q] * BigUint::from(q) } else { BigUint::zero() };
            *slot = stay + &prev[q - 1];
        }
        rows.push(row);
    }
    rows
}

/// `S(m, q)`; zero when `q > m`.
pub fn stirling2(m: usize, q: usize) -> BigUint {
    if q > m {
        return BigUint::zero();
    }
    let mut row = vec![BigUint::one()];
    for i in 1..=m {
        let mut next = vec![BigUint::zero(); i + 1];
        for (k, slot) in next.iter_mut().enumerate().skip(1) {
            let stay = if k < i { &row[k] * BigUint::from(k) } else { BigUint::zero() };
            *slot = stay + &row[k - 1];
        }
        row = next;
    }
    row.swap_remove(q)
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// `binom(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// The falling factorial `m (m-1) ... (m-k+1)` as a polynomial in `m`.
pub fn falling_factorial_poly(k: usize) -> Poly {
    (0..k).fold(Poly::one(), |acc, i| {
        acc * Poly::linear_root(Rational::from_integer(-BigInt::from(i)))
    })
}

/// Coefficients `b_0..b_D` with `p(m) = sum_k b_k m!/(m-k)!`, where `D = deg p`.
///
/// Uses `m^j = sum_k S(j,k) m!/(m-k)!`, so `b_k = sum_j p_j S(j,k)`.
pub fn monomial_to_falling(p: &Poly) -> Result<Vec<Rational>, AlgebraError> {
    let d = p.degree().ok_or(AlgebraError::EmptyDecomposition)?;
    let table = stirling2_table(d);
    let mut b = vec![Rational::zero(); d + 1];
    for (j, pj) in p.coeffs().iter().enumerate() {
        if pj.is_zero() {
            continue;
        }
        for (k, s) in table[j].iter().enumerate() {
            if !s.is_zero() {
                b[k] += pj * Rational::from_integer(BigInt::from(s.clone()));
            }
        }
    }
    Ok(b)
}

/// Inverse of [`monomial_to_falling`]: expands `sum_k b_k m!/(m-k)!`.
pub fn falling_to_monomial(b: &[Rational]) -> Poly {
    let mut acc = Poly::zero();
    let mut falling = Poly::one();
    for (k, bk) in b.iter().enumerate() {
        if k > 0 {
            falling = falling * Poly::linear_root(Rational::from_integer(-BigInt::from(k - 1)));
        }
        acc = acc + falling.scale(bk);
    }
    acc
}
