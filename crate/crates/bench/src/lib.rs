// SPDX-License-Identifier: Apache-2.0

//! Fixed inputs shared by the benchmarks.

use hartogs_core::algebra::{rat, Rational};
use hartogs_core::cartan::{make_params, CartanParams};

/// `(r, a, b, mu)` from small to large `D`.
pub fn instances() -> Vec<(&'static str, CartanParams, Rational)> {
    vec![
        ("disc", make_params(1, 0, 0).expect("valid"), rat(2, 1)),
        ("I22", make_params(2, 2, 0).expect("valid"), rat(3, 2)),
        ("r3a4b4", make_params(3, 4, 4).expect("valid"), rat(3, 2)),
    ]
}

/// A point of the disc-base Hartogs domain away from the origin.
pub const DISC_POINT: [f64; 4] = [0.2, -0.1, 0.15, 0.05];
