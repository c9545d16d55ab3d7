//! Exact `(k,l)`-stability computations for vector bundles on a curve of
//! genus `g >= 2`.
//!
//! A bundle is modeled by its type `(n, d)` and its Segre profile
//! `(s_1, ..., s_{n-1})`. A bundle is `(k,l)`-stable when every proper
//! subbundle `F` satisfies `(deg F + k)/rk F < (d + k - l)/n`, which in terms
//! of the profile reads `s_m > k(n-m) + m*l` for every `m`. Everything in this
//! crate is integer arithmetic on that inequality.
//!
//! * [`segre`]: bounds on Segre invariants and dimensions of Segre strata.
//! * [`klregions`]: the predicate, non-emptiness, regions of the `(k,l)`
//!   plane, and the dimension of the non-`(k,l)`-stable locus.
//! * [`lowrank`]: rank 2 and rank 3 classifications and Jordan-Hölder types.
//! * [`brillnoether`]: exclusions forced by Brill-Noether regions.
//! * [`oracle`]: brute-force recomputation used to cross-check the above.

pub mod brillnoether;
pub mod error;
pub mod klregions;
pub mod lowrank;
pub mod oracle;
pub mod rational;
pub mod segre;
pub mod types;

pub use error::{Error, Result};
pub use rational::Rational;
pub use types::{k_slope, segre_invariant, BundleType, CurveParams, SegreProfile, KL};
