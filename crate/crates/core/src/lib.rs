// SPDX-License-Identifier: Apache-2.0

//! Exact generating functions, classification tests and Kähler geometry
//! for Cartan-Hartogs domains over bounded symmetric domains.

pub mod algebra;
pub mod cartan;
pub mod genfun;
pub mod classify;
pub mod geometry;

pub use algebra::{parse_rational, Poly, Rational, RationalFn};
pub use cartan::{make_params, CartanError, CartanParams, GenericNormEvaluator};
pub use classify::{classify, ClassificationReport, ClassifyError, DualBound, KEWitness};
pub use genfun::{f_rational, ChiData, FRepresentation, GenfunError};
pub use geometry::{GeometryError, PotentialField, PotentialKind};
