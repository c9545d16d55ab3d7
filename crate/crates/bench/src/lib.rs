//! Fixtures shared by the benchmarks.

use klstab_core::oracle::SweepSpec;
use klstab_core::{BundleType, CurveParams, Result};

/// `(n, d, g)` instances swept over the default `n*g` window.
pub const SWEEP_CASES: [(i64, i64, i64); 4] = [(2, 1, 4), (3, 1, 3), (3, 2, 4), (4, 1, 3)];

pub fn square_spec(n: i64, d: i64, g: i64) -> Result<SweepSpec> {
    SweepSpec::square(BundleType::new(n, d)?, CurveParams::new(g)?, n * g)
}
