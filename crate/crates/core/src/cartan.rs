// SPDX-License-Identifier: Apache-2.0

//! Cartan domains described by their invariants `(r, a, b)`.
//!
//! Only rank one (the unit ball) has a hardcoded generic norm. Higher-rank
//! norms are supplied by the caller; none of the exact algebra needs them.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CartanError {
    #[error("rank must be at least 1")]
    NonPositiveRank,
    #[error("r(r-1)a = {0} is odd, so the dimension is not an integer")]
    ParityViolation(u64),
    #[error("rank-one domains are balls and require a = 0 (got a = {0})")]
    RankOneRequiresZeroA(u32),
    #[error("generic norm evaluated outside the domain: {0}")]
    DomainViolation(String),
    #[error("the rank-one ball norm needs (r, a, b) = (1, 0, n-1)")]
    NotRankOne,
    #[error("expected {expected} complex coordinates, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("malformed catalog: {0}")]
    MalformedCatalog(String),
}

/// Numerical invariants of a Cartan domain.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CartanParams {
    pub r: u32,
    pub a: u32,
    pub b: u32,
    /// Genus `(r-1)a + b + 2`.
    pub gamma: u32,
    /// Complex dimension `r + r(r-1)a/2 + rb`.
    pub n: u32,
    /// Euclidean volume; only known in closed form for rank one.
    pub volume: Option<f64>,
}

pub fn genus(r: u32, a: u32, b: u32) -> u64 {
    (r as u64 - 1) * a as u64 + b as u64 + 2
}

impl CartanParams {
    pub fn new(r: u32, a: u32, b: u32) -> Result<Self, CartanError> {
        make_params(r, a, b)
    }

    /// The unit ball of `C^n`, i.e. `(1, 0, n-1)`.
    pub fn ball(n: u32) -> Result<Self, CartanError> {
        if n == 0 {
            return Err(CartanError::NonPositiveRank);
        }
        make_params(1, 0, n - 1)
    }

    pub fn is_rank_one(&self) -> bool {
        self.r == 1
    }

    pub fn with_volume(mut self, volume: f64) -> Self {
        self.volume = Some(volume);
        self
    }
}

impl fmt::Display for CartanParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(r,a,b)=({},{},{})", self.r, self.a, self.b)
    }
}

/// Derives genus and dimension from `(r, a, b)`; sets the ball volume
/// `pi^n / n!` for rank one and leaves it unset otherwise.
pub fn make_params(r: u32, a: u32, b: u32) -> Result<CartanParams, CartanError> {
    if r == 0 {
        return Err(CartanError::NonPositiveRank);
    }
    let pairing = r as u64 * (r as u64 - 1) * a as u64;
    if pairing % 2 != 0 {
        return Err(CartanError::ParityViolation(pairing));
    }
    if r == 1 && a != 0 {
        return Err(CartanError::RankOneRequiresZeroA(a));
    }
    let gamma = genus(r, a, b);
    let n = r as u64 + pairing / 2 + r as u64 * b as u64;
    let volume = (r == 1).then(|| ball_volume(n as u32));
    Ok(CartanParams {
        r,
        a,
        b,
        gamma: gamma as u32,
        n: n as u32,
        volume,
    })
}

/// Euclidean volume of the unit ball in `C^n`.
pub fn ball_volume(n: u32) -> f64 {
    let mut v = 1.0;
    for k in 1..=n {
        v *= std::f64::consts::PI / k as f64;
    }
    v
}

/// Whether `conj(z)` enters as is or negated (the dual substitution).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConjSign {
    Plus,
    Minus,
}

impl ConjSign {
    pub fn as_f64(self) -> f64 {
        match self {
            ConjSign::Plus => 1.0,
            ConjSign::Minus => -1.0,
        }
    }
}

pub type NormFn = dyn Fn(&[Complex64], ConjSign) -> f64 + Send + Sync;

#[derive(Clone)]
pub enum NormKind {
    RankOneBall,
    UserSupplied(Arc<NormFn>),
}

impl fmt::Debug for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormKind::RankOneBall => write!(f, "RankOneBall"),
            NormKind::UserSupplied(_) => write!(f, "UserSupplied(..)"),
        }
    }
}

/// Evaluates `N(z, conj z)` or `N(z, -conj z)`.
#[derive(Debug, Clone)]
pub struct GenericNormEvaluator {
    params: CartanParams,
    kind: NormKind,
}

impl GenericNormEvaluator {
    pub fn rank_one(params: CartanParams) -> Result<Self, CartanError> {
        if params.r != 1 || params.a != 0 || params.b + 1 != params.n {
            return Err(CartanError::NotRankOne);
        }
        Ok(GenericNormEvaluator {
            params,
            kind: NormKind::RankOneBall,
        })
    }

    /// `f(z, sign)` must return `N(z, sign * conj z)`; it is trusted as is.
    pub fn user_supplied<F>(params: CartanParams, f: F) -> Self
    where
        F: Fn(&[Complex64], ConjSign) -> f64 + Send + Sync + 'static,
    {
        GenericNormEvaluator {
            params,
            kind: NormKind::UserSupplied(Arc::new(f)),
        }
    }

    /// Type `I_{p,q}` (`p <= q`): `N(Z, s conj Z) = det(I - s Z Z^*)` for a
    /// `p x q` matrix `Z` given row by row.
    pub fn type_one(p: u32, q: u32) -> Result<Self, CartanError> {
        if p == 0 || q < p {
            return Err(CartanError::DomainViolation(format!("type I needs 1 <= p <= q, got p = {p}, q = {q}")));
        }
        let params = if p == 1 { make_params(1, 0, q - 1)? } else { make_params(p, 2, q - p)? };
        let (rows, cols) = (p as usize, q as usize);
        Ok(Self::user_supplied(params, move |z, sign| {
            let zm = DMatrix::from_row_slice(rows, cols, z);
            let m = DMatrix::<Complex64>::identity(rows, rows) - (&zm * zm.adjoint()) * Complex64::new(sign.as_f64(), 0.0);
            m.determinant().re
        }))
    }

    /// Type `IV_n` (`n >= 3`), the Lie ball:
    /// `N(z, s conj z) = 1 - 2 s |z|^2 + |z . z|^2`.
    pub fn lie_ball(n: u32) -> Result<Self, CartanError> {
        if n < 3 {
            return Err(CartanError::DomainViolation(format!("type IV needs n >= 3, got {n}")));
        }
        let params = make_params(2, n - 2, 0)?;
        Ok(Self::user_supplied(params, |z, sign| {
            let r2: f64 = z.iter().map(|c| c.norm_sqr()).sum();
            if sign == ConjSign::Plus && r2 >= 1.0 {
                return 0.0;
            }
            let zz: Complex64 = z.iter().map(|c| c * c).sum();
            1.0 - 2.0 * sign.as_f64() * r2 + zz.norm_sqr()
        }))
    }

    pub fn params(&self) -> &CartanParams {
        &self.params
    }

    pub fn kind(&self) -> &NormKind {
        &self.kind
    }

    pub fn generic_norm(&self, z: &[Complex64], sign: ConjSign) -> Result<f64, CartanError> {
        let dim = self.params.n as usize;
        if z.len() != dim {
            return Err(CartanError::WrongDimension {
                expected: dim,
                got: z.len(),
            });
        }
        let value = match &self.kind {
            NormKind::RankOneBall => {
                let r2: f64 = z.iter().map(|c| c.norm_sqr()).sum();
                if sign == ConjSign::Plus && r2 >= 1.0 {
                    return Err(CartanError::DomainViolation(format!(
                        "|z|^2 = {r2} is not below 1"
                    )));
                }
                1.0 - sign.as_f64() * r2
            }
            NormKind::UserSupplied(f) => f(z, sign),
        };
        if sign == ConjSign::Plus && !(value > 0.0) {
            return Err(CartanError::DomainViolation(format!(
                "generic norm {value} is not positive"
            )));
        }
        Ok(value)
    }
}

/// Catalog row: a named Cartan domain with optional expected invariants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub r: u32,
    pub a: u32,
    pub b: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_gamma: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_n: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntryCheck {
    pub name: String,
    pub valid: bool,
    pub gamma: Option<u32>,
    pub n: Option<u32>,
    pub issues: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalogReport {
    pub valid: bool,
    pub entries: Vec<EntryCheck>,
}

impl CatalogReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &EntryCheck> {
        self.entries.iter().filter(|e| !e.valid)
    }
}

pub fn parse_catalog(json: &str) -> Result<Vec<CatalogEntry>, CartanError> {
    serde_json::from_str(json).map_err(|e| CartanError::MalformedCatalog(e.to_string()))
}

pub fn load_catalog(path: &Path) -> Result<Vec<CatalogEntry>, CartanError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CartanError::MalformedCatalog(format!("{}: {e}", path.display())))?;
    parse_catalog(&text)
}

pub fn validate_catalog(entries: &[CatalogEntry]) -> CatalogReport {
    let checks: Vec<EntryCheck> = entries
        .iter()
        .map(|e| match make_params(e.r, e.a, e.b) {
            Ok(p) => {
                let mut issues = Vec::new();
                if let Some(g) = e.expected_gamma.filter(|&g| g != p.gamma) {
                    issues.push(format!("gamma: expected {g}, derived {}", p.gamma));
                }
                if let Some(n) = e.expected_n.filter(|&n| n != p.n) {
                    issues.push(format!("n: expected {n}, derived {}", p.n));
                }
                EntryCheck {
                    name: e.name.clone(),
                    valid: issues.is_empty(),
                    gamma: Some(p.gamma),
                    n: Some(p.n),
                    issues,
                }
            }
            Err(err) => EntryCheck {
                name: e.name.clone(),
                valid: false,
                gamma: None,
                n: None,
                issues: vec![err.to_string()],
            },
        })
        .collect();
    CatalogReport {
        valid: checks.iter().all(|c| c.valid),
        entries: checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn derived_invariants() {
        let p = make_params(1, 0, 0).unwrap();
        assert_eq!((p.gamma, p.n), (2, 1));
        assert!((p.volume.unwrap() - std::f64::consts::PI).abs() < 1e-15);
        for n in 1..6 {
            let p = make_params(1, 0, n - 1).unwrap();
            assert_eq!((p.gamma, p.n), (n + 1, n));
        }
        let p = make_params(2, 1, 0).unwrap();
        assert_eq!((p.gamma, p.n), (3, 3));
        assert_eq!(p.volume, None);
    }

    #[test]
    fn invalid_parameters() {
        assert_eq!(make_params(0, 0, 0), Err(CartanError::NonPositiveRank));
        assert_eq!(make_params(1, 2, 0), Err(CartanError::RankOneRequiresZeroA(2)));
        // r(r-1)a is always even for integers; parity only bites through the check itself
        assert!(make_params(3, 1, 0).is_ok());
    }

    #[test]
    fn classical_norms() {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let one = GenericNormEvaluator::type_one(2, 2).unwrap();
        assert_eq!((one.params().r, one.params().a, one.params().b), (2, 2, 0));
        assert_eq!(one.params().gamma, 4);
        assert!((one.generic_norm(&[c(0.0, 0.0); 4], ConjSign::Plus).unwrap() - 1.0).abs() < 1e-15);
        // diagonal Z = diag(t1, t2): (1 - t1^2)(1 - t2^2)
        let z = [c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.3)];
        assert!((one.generic_norm(&z, ConjSign::Plus).unwrap() - 0.75 * 0.91).abs() < 1e-14);
        assert!((one.generic_norm(&z, ConjSign::Minus).unwrap() - 1.25 * 1.09).abs() < 1e-14);
        let disc = GenericNormEvaluator::type_one(1, 1).unwrap();
        assert_eq!(disc.params(), &make_params(1, 0, 0).unwrap());
        assert!(GenericNormEvaluator::type_one(3, 2).is_err());

        let lie = GenericNormEvaluator::lie_ball(3).unwrap();
        assert_eq!((lie.params().r, lie.params().a, lie.params().gamma), (2, 1, 3));
        // real z: N = (1 - |z|^2)^2
        let z = [c(0.3, 0.0), c(0.2, 0.0), c(0.0, 0.0)];
        assert!((lie.generic_norm(&z, ConjSign::Plus).unwrap() - 0.87f64.powi(2)).abs() < 1e-14);
        assert!(lie.generic_norm(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], ConjSign::Plus).is_err());
        assert!(GenericNormEvaluator::lie_ball(2).is_err());
    }

    #[test]
    fn rank_one_norm_values() {
        let ev = GenericNormEvaluator::rank_one(make_params(1, 0, 0).unwrap()).unwrap();
        let origin = [Complex64::new(0.0, 0.0)];
        assert_eq!(ev.generic_norm(&origin, ConjSign::Plus).unwrap(), 1.0);
        let z = [Complex64::new(0.5, 0.5)];
        assert!((ev.generic_norm(&z, ConjSign::Plus).unwrap() - 0.5).abs() < 1e-15);
        assert!((ev.generic_norm(&z, ConjSign::Minus).unwrap() - 1.5).abs() < 1e-15);
        let out = [Complex64::new(1.0, 0.0)];
        assert!(matches!(
            ev.generic_norm(&out, ConjSign::Plus),
            Err(CartanError::DomainViolation(_))
        ));
        assert!(ev.generic_norm(&out, ConjSign::Minus).is_ok());
        assert!(ev.generic_norm(&[], ConjSign::Plus).is_err());
    }

    #[test]
    fn rank_one_evaluator_rejects_higher_rank() {
        assert_eq!(
            GenericNormEvaluator::rank_one(make_params(2, 1, 0).unwrap()).unwrap_err(),
            CartanError::NotRankOne
        );
    }

    #[test]
    fn user_supplied_norm_is_called() {
        let params = make_params(2, 2, 0).unwrap();
        let ev = GenericNormEvaluator::user_supplied(params, |z, s| {
            1.0 - s.as_f64() * z.iter().map(|c| c.norm_sqr()).sum::<f64>()
        });
        let z = vec![Complex64::new(0.1, 0.0); 4];
        assert!((ev.generic_norm(&z, ConjSign::Plus).unwrap() - 0.96).abs() < 1e-15);
    }

    #[test]
    fn catalog_validation() {
        let entries = parse_catalog(
            r#"[{"name":"disc","r":1,"a":0,"b":0,"expected_gamma":2,"expected_n":1},
                {"name":"bad","r":2,"a":1,"b":0,"expected_gamma":4,"expected_n":3},
                {"name":"no-expectations","r":3,"a":1,"b":0}]"#,
        )
        .unwrap();
        let report = validate_catalog(&entries);
        assert!(!report.valid);
        assert!(report.entries[0].valid);
        assert!(!report.entries[1].valid);
        assert_eq!(report.entries[1].gamma, Some(3));
        assert!(report.entries[2].valid);
        assert_eq!(report.mismatches().count(), 1);

        let empty = validate_catalog(&parse_catalog("[]").unwrap());
        assert!(empty.valid && empty.entries.is_empty());

        assert!(matches!(parse_catalog("{"), Err(CartanError::MalformedCatalog(_))));
        assert!(matches!(
            parse_catalog(r#"[{"name":"x","r":1}]"#),
            Err(CartanError::MalformedCatalog(_))
        ));
    }

    proptest! {
        #[test]
        fn invariants_rederive(r in 1u32..6, a in 0u32..9, b in 0u32..9) {
            let a = if r == 1 { 0 } else { a };
            let p = make_params(r, a, b).unwrap();
            prop_assert_eq!(p.gamma, (r - 1) * a + b + 2);
            prop_assert_eq!(2 * p.n, 2 * r + r * (r - 1) * a + 2 * r * b);
            prop_assert_eq!(make_params(p.r, p.a, p.b).unwrap(), p);
        }

        #[test]
        fn rank_one_norm_identities(n in 1u32..4, re in prop::collection::vec(-0.5f64..0.5, 4), im in prop::collection::vec(-0.5f64..0.5, 4)) {
            let ev = GenericNormEvaluator::rank_one(CartanParams::ball(n).unwrap()).unwrap();
            let z: Vec<Complex64> = (0..n as usize).map(|i| Complex64::new(re[i], im[i]) * 0.5).collect();
            let plus = ev.generic_norm(&z, ConjSign::Plus).unwrap();
            let minus = ev.generic_norm(&z, ConjSign::Minus).unwrap();
            prop_assert!(minus >= 1.0);
            prop_assert!((plus + minus - 2.0).abs() < 1e-14);
        }
    }
}
