//! The `(k,l)`-stability predicate and everything derived from it: the
//! non-emptiness criterion, the regions of the `(k,l)` plane, and the
//! dimension of the locus of stable bundles that fail to be `(k,l)`-stable.
//!
//! A bundle of rank `n` is `(k,l)`-stable exactly when every Segre invariant
//! clears its threshold, `s_m > k(n-m) + m*l` for `m = 1..n-1`. All region
//! tests below are integer inequalities.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::segre::{delta_m, generic_segre_bound, stratum_ceiling};
use crate::types::{BundleType, CurveParams, SegreProfile, KL};

/// True iff `s_m > k(n-m) + m*l` for every `m`. Rank one bundles are always stable.
pub fn is_kl_stable(p: &SegreProfile, kl: KL) -> bool {
    let n = p.rank();
    p.iter().all(|(m, s)| s > kl.threshold(n, m))
}

/// Ranks `m` whose Segre invariant does not clear the `(k,l)` threshold.
pub fn violating_ranks(p: &SegreProfile, kl: KL) -> Vec<i64> {
    let n = p.rank();
    p.iter()
        .filter(|&(m, s)| s <= kl.threshold(n, m))
        .map(|(m, _)| m)
        .collect()
}

/// One row of the non-emptiness test: `k(n-m)+ml < m(n-m)(g-1) + delta_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonemptyRow {
    pub m: i64,
    pub threshold: i64,
    pub delta: i64,
    pub bound: i64,
    pub holds: bool,
}

pub fn nonempty_rows(b: BundleType, curve: CurveParams, kl: KL) -> Result<Vec<NonemptyRow>> {
    b.require_rank_at_least(2)?;
    let (n, d, g) = (b.rank(), b.degree(), curve.genus());
    (1..n)
        .map(|m| {
            let threshold = kl.threshold(n, m);
            let delta = delta_m(n, d, g, m)?;
            let bound = generic_segre_bound(n, d, g, m)?;
            Ok(NonemptyRow {
                m,
                threshold,
                delta,
                bound,
                holds: threshold < bound,
            })
        })
        .collect()
}

/// Whether `A_(k,l)(n,d)` is nonempty: every threshold sits strictly below the
/// generic Segre bound.
pub fn nonempty(b: BundleType, curve: CurveParams, kl: KL) -> Result<bool> {
    Ok(nonempty_rows(b, curve, kl)?.iter().all(|r| r.holds))
}

/// Membership of a lattice point in the regions of the `(k,l)` plane.
///
/// Regions overlap on their boundaries, so several flags may be set. `R1`
/// includes its upper edge, where `A_(k,l)(n,d)` can still be empty; use
/// [`nonempty`] for the exact answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct RegionFlags {
    #[serde(rename = "in_R0")]
    pub in_r0: bool,
    #[serde(rename = "in_R1")]
    pub in_r1: bool,
    #[serde(rename = "in_R2")]
    pub in_r2: bool,
    #[serde(rename = "in_R3k")]
    pub in_r3k: bool,
    #[serde(rename = "in_R3l")]
    pub in_r3l: bool,
}

impl RegionFlags {
    pub fn in_r3(&self) -> bool {
        self.in_r3k || self.in_r3l
    }

    pub fn is_empty(&self) -> bool {
        *self == RegionFlags::default()
    }
}

fn check_n_g(n: i64, g: i64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidRank { rank: n, min: 2 });
    }
    if g < 2 {
        return Err(Error::InvalidGenus(g));
    }
    Ok(())
}

/// Evaluates the defining inequalities of `R0, R1, R2, R3k, R3l`.
///
/// With `a = k(n-1)+l`, `b = k+l(n-1)` and `c = (n-1)(g-1)`:
/// * `R0`: `a >= (n-1)g` or `b >= (n-1)g`
/// * `R1`: `0 <= a <= c` and `0 <= b <= c`
/// * `R2`: `a <= 0` and `b <= 0`
/// * `R3k`: `0 < a < c` and `b < 0`
/// * `R3l`: `0 < b < c` and `a < 0`
pub fn classify_region(n: i64, g: i64, kl: KL) -> Result<RegionFlags> {
    check_n_g(n, g)?;
    let a = kl.k * (n - 1) + kl.l;
    let b = kl.k + kl.l * (n - 1);
    let c = (n - 1) * (g - 1);
    let top = (n - 1) * g;
    Ok(RegionFlags {
        in_r0: a >= top || b >= top,
        in_r1: (0..=c).contains(&a) && (0..=c).contains(&b),
        in_r2: a <= 0 && b <= 0,
        in_r3k: 0 < a && a < c && b < 0,
        in_r3l: 0 < b && b < c && a < 0,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionReport {
    pub kl: KL,
    pub bundle: BundleType,
    pub genus: i64,
    pub flags: RegionFlags,
    pub nonempty: bool,
}

pub fn region_report(b: BundleType, curve: CurveParams, kl: KL) -> Result<RegionReport> {
    let flags = classify_region(b.rank(), curve.genus(), kl)?;
    Ok(RegionReport {
        kl,
        bundle: b,
        genus: curve.genus(),
        flags,
        nonempty: nonempty(b, curve, kl)?,
    })
}

/// Largest `s <= k(n-m)+ml` with `s = m*d (mod n)`, or `None` when it is not
/// positive (no stratum of stable bundles fails the threshold).
pub fn s_tilde(b: BundleType, kl: KL, m: i64) -> Result<Option<i64>> {
    b.check_subrank(m)?;
    let n = b.rank();
    let c = kl.threshold(n, m);
    let s = c - (c - m * b.degree()).rem_euclid(n);
    Ok((s > 0).then_some(s))
}

/// Dimension data for the complement of `A_(k,l)(n,d)` inside `M(n,d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementReport {
    pub kl: KL,
    pub bundle: BundleType,
    pub genus: i64,
    pub s_tilde: Vec<Option<i64>>,
    pub s_delta: Option<i64>,
    pub dim_complement: Option<i64>,
    pub codim: Option<i64>,
}

impl ComplementReport {
    pub fn is_empty(&self) -> bool {
        self.dim_complement.is_none()
    }
}

/// For `(k,l)` in `R1`: `s_delta = min_m (m(n-m)(g-1) - s~_m)` over the ranks
/// with a positive `s~_m`, `dim = n^2(g-1)+1 - s_delta`, `codim = s_delta`.
///
/// When no rank has a positive `s~_m` every stable bundle is `(k,l)`-stable,
/// the complement is empty and the dimensions are `None`.
pub fn complement_dims(b: BundleType, curve: CurveParams, kl: KL) -> Result<ComplementReport> {
    let (n, g) = (b.rank(), curve.genus());
    if !classify_region(n, g, kl)?.in_r1 {
        return Err(Error::NotInR1 { kl, n, g });
    }
    let s_tilde = (1..n)
        .map(|m| s_tilde(b, kl, m))
        .collect::<Result<Vec<_>>>()?;
    let s_delta = (1..n)
        .zip(&s_tilde)
        .filter_map(|(m, s)| s.map(|s| stratum_ceiling(n, g, m) - s))
        .min();
    let dim_complement = s_delta.map(|sd| b.moduli_dimension(curve) - sd);
    Ok(ComplementReport {
        kl,
        bundle: b,
        genus: g,
        s_tilde,
        s_delta,
        dim_complement,
        codim: s_delta,
    })
}

/// Lower bound on the codimension of the complement for `(k,l)` in `R1`:
/// `min{(n-1)(g-1) - k(n-1) - l, (n-1)(g-1) - k - l(n-1)}`.
pub fn codim_lower_bound(n: i64, g: i64, kl: KL) -> i64 {
    let c = (n - 1) * (g - 1);
    (c - kl.k * (n - 1) - kl.l).min(c - kl.k - kl.l * (n - 1))
}

/// Duality sends `A_(k,l)(n,d)` to `A_(l,k)(n,-d)`.
pub fn dual_kl(b: BundleType, kl: KL) -> (BundleType, KL) {
    (
        BundleType::new(b.rank(), -b.degree()).expect("rank unchanged"),
        KL::new(kl.l, kl.k),
    )
}

/// Profile of the dual bundle: type `(n, -d)` and `s'_m = s_{n-m}`.
pub fn dual_profile(p: &SegreProfile) -> SegreProfile {
    let (b, _) = dual_kl(p.bundle(), KL::new(0, 0));
    let segre = p.entries().iter().rev().copied().collect();
    SegreProfile::new(b, segre).expect("reversal preserves the congruence")
}

/// Type of `E (x) L` for a line bundle `L` of degree `d_l`.
pub fn tensor_shift(b: BundleType, kl: KL, d_l: i64) -> (BundleType, KL) {
    (
        BundleType::new(b.rank(), b.degree() + b.rank() * d_l).expect("rank unchanged"),
        kl,
    )
}

/// Profile of `E (x) L`: the Segre entries do not change.
pub fn tensor_profile(p: &SegreProfile, d_l: i64) -> SegreProfile {
    let (b, _) = tensor_shift(p.bundle(), KL::new(0, 0), d_l);
    SegreProfile::new(b, p.entries().to_vec()).expect("degree shift by a multiple of n")
}

/// Worst-case profile of an elementary transform `0 -> E' -> E -> O_x -> 0`:
/// type `(n, d-1)` and `s'_m = s_m - m`. If `p` is `(k,l)`-stable the result
/// is `(k,l-1)`-stable.
pub fn elementary_transform_bound(p: &SegreProfile) -> SegreProfile {
    let b = BundleType::new(p.rank(), p.degree() - 1).expect("rank unchanged");
    let segre = p.iter().map(|(m, s)| s - m).collect();
    SegreProfile::new(b, segre).expect("s_m - m = m(d-1) (mod n)")
}
