//! Brute-force recomputation of the closed-form results.
//!
//! Nothing here calls the formulas it checks. Profiles are enumerated
//! exhaustively, upper bounds are found by scanning down from the Hirschowitz
//! bound, and non-emptiness and complement dimensions are decided by trying
//! every profile or stratum.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::klregions::{classify_region, is_kl_stable};
use crate::segre::{hirschowitz_bound, stratum_ceiling, stratum_dimension, StratumSpec};
use crate::types::{BundleType, CurveParams, SegreProfile, KL};

/// Largest rank `enumerate_profiles` accepts.
pub const MAX_ENUMERATION_RANK: i64 = 5;

/// Default cap on the number of lattice points in a sweep.
pub const DEFAULT_SWEEP_LIMIT: u64 = 10_000;

/// Attainable values of `s_m`: the congruence class of `m*d` between
/// `-n*g` and the largest such value not above the Hirschowitz bound.
pub fn segre_values(b: BundleType, curve: CurveParams, m: i64) -> Result<Vec<i64>> {
    let n = b.rank();
    let hi = hirschowitz_bound(n, curve.genus(), m)?;
    let lo = -n * curve.genus();
    let on_class = |s: &i64| (s - m * b.degree()).rem_euclid(n) == 0;
    let top = (lo..=hi)
        .rev()
        .find(on_class)
        .expect("window spans a full residue system");
    Ok((lo..=top).filter(on_class).collect())
}

/// Every profile whose entries are independently drawn from [`segre_values`].
pub fn enumerate_profiles(
    b: BundleType,
    curve: CurveParams,
) -> Result<impl Iterator<Item = SegreProfile>> {
    let n = b.rank();
    if n > MAX_ENUMERATION_RANK {
        return Err(Error::RankGuard {
            rank: n,
            limit: MAX_ENUMERATION_RANK,
        });
    }
    b.require_rank_at_least(2)?;
    let columns = (1..n)
        .map(|m| segre_values(b, curve, m))
        .collect::<Result<Vec<_>>>()?;
    let total: usize = columns.iter().map(Vec::len).product();
    Ok((0..total).map(move |mut idx| {
        // mixed-radix decode, last rank varies fastest
        let mut segre = vec![0; columns.len()];
        for (slot, col) in segre.iter_mut().zip(&columns).rev() {
            *slot = col[idx % col.len()];
            idx /= col.len();
        }
        SegreProfile::new(b, segre).expect("entries chosen on their residue class")
    }))
}

/// A rectangle of lattice points for one bundle type and genus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    pub bundle: BundleType,
    pub curve: CurveParams,
    pub k_range: RangeInclusive<i64>,
    pub l_range: RangeInclusive<i64>,
    pub limit: u64,
}

impl SweepSpec {
    pub fn new(
        bundle: BundleType,
        curve: CurveParams,
        k_range: RangeInclusive<i64>,
        l_range: RangeInclusive<i64>,
    ) -> Result<Self> {
        for r in [&k_range, &l_range] {
            if r.is_empty() {
                return Err(Error::EmptyRange {
                    lo: *r.start(),
                    hi: *r.end(),
                });
            }
        }
        Ok(SweepSpec {
            bundle,
            curve,
            k_range,
            l_range,
            limit: DEFAULT_SWEEP_LIMIT,
        })
    }

    /// The square window `|k|, |l| <= radius`.
    pub fn square(bundle: BundleType, curve: CurveParams, radius: i64) -> Result<Self> {
        Self::new(bundle, curve, -radius..=radius, -radius..=radius)
    }

    pub fn with_limit(mut self, limit: u64) -> Self {
        self.limit = limit;
        self
    }

    pub fn point_count(&self) -> u64 {
        let width = |r: &RangeInclusive<i64>| (r.end() - r.start() + 1) as u64;
        width(&self.k_range) * width(&self.l_range)
    }

    fn points(&self) -> Result<Vec<KL>> {
        let points = self.point_count();
        if points > self.limit {
            return Err(Error::SweepTooLarge {
                points,
                limit: self.limit,
            });
        }
        Ok(self
            .k_range
            .clone()
            .flat_map(|k| self.l_range.clone().map(move |l| KL::new(k, l)))
            .collect())
    }
}

/// For each lattice point, whether some enumerated profile is `(k,l)`-stable.
pub fn sweep_nonempty(spec: &SweepSpec) -> Result<BTreeMap<KL, bool>> {
    let points = spec.points()?;
    let profiles: Vec<SegreProfile> = enumerate_profiles(spec.bundle, spec.curve)?.collect();
    Ok(points
        .into_par_iter()
        .map(|kl| (kl, profiles.iter().any(|p| is_kl_stable(p, kl))))
        .collect::<Vec<_>>()
        .into_iter()
        .collect())
}

/// For each lattice point in `R1`, the largest dimension of a stratum
/// `M(n,d,m,s)` with `0 < s <= k(n-m)+ml`, or `None` if no stratum qualifies.
/// Points outside `R1` are left out of the map.
pub fn sweep_complement_dim(spec: &SweepSpec) -> Result<BTreeMap<KL, Option<i64>>> {
    let (b, curve) = (spec.bundle, spec.curve);
    let (n, g) = (b.rank(), curve.genus());
    let columns = (1..n)
        .map(|m| segre_values(b, curve, m))
        .collect::<Result<Vec<_>>>()?;
    let mut in_r1 = Vec::new();
    for kl in spec.points()? {
        if classify_region(n, g, kl)?.in_r1 {
            in_r1.push(kl);
        }
    }
    let rows = in_r1
        .into_par_iter()
        .map(|kl| {
            let mut best: Option<i64> = None;
            for (m, values) in (1..n).zip(&columns) {
                let cap = kl.threshold(n, m).min(stratum_ceiling(n, g, m));
                for &s in values.iter().filter(|&&s| 0 < s && s <= cap) {
                    let dim = stratum_dimension(StratumSpec::new(b, curve, m, s)?)?;
                    best = Some(best.map_or(dim, |cur| cur.max(dim)));
                }
            }
            Ok((kl, best))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(rows.into_iter().collect())
}

/// Re-keys a sweep by `"k,l"` strings, the shape used for JSON output.
pub fn keyed_by_kl<V: Clone>(map: &BTreeMap<KL, V>) -> BTreeMap<String, V> {
    map.iter()
        .map(|(kl, v)| (format!("{},{}", kl.k, kl.l), v.clone()))
        .collect()
}

/// The printed rank 3 non-emptiness table, as offsets from `2g`.
///
/// Entry `[d mod 3][g mod 3]` is `(a, b)` for the cell
/// `2k+l < 2g+a, k+2l < 2g+b`.
pub const PRINTED_RANK3_OFFSETS: [[(i64, i64); 3]; 3] = [
    [(0, 0), (-2, -2), (-1, -1)],
    [(-2, -1), (-1, 0), (0, -2)],
    [(-1, -2), (0, -1), (-2, 0)],
];

/// Printed bounds `(B1, B2)` for genus `g` and `d mod 3`.
pub fn printed_rank3_bounds(g: i64, d_mod_3: i64) -> (i64, i64) {
    let (a, b) = PRINTED_RANK3_OFFSETS[d_mod_3.rem_euclid(3) as usize][g.rem_euclid(3) as usize];
    (2 * g + a, 2 * g + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64, d: i64) -> BundleType {
        BundleType::new(n, d).unwrap()
    }

    fn curve(g: i64) -> CurveParams {
        CurveParams::new(g).unwrap()
    }

    fn first_entries(n: i64, d: i64, g: i64) -> Vec<i64> {
        enumerate_profiles(b(n, d), curve(g))
            .unwrap()
            .map(|p| p.entries()[0])
            .collect()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(first_entries(2, 0, 2), vec![-4, -2, 0, 2]);
        assert_eq!(first_entries(2, 1, 2), vec![-3, -1, 1]);
        assert_eq!(enumerate_profiles(b(3, 0), curve(2)).unwrap().count(), 16);
        assert!(matches!(
            enumerate_profiles(b(6, 0), curve(2)),
            Err(Error::RankGuard { .. })
        ));
    }

    #[test]
    fn enumeration_covers_product() {
        let all: Vec<_> = enumerate_profiles(b(3, 1), curve(2)).unwrap().collect();
        let firsts = segre_values(b(3, 1), curve(2), 1).unwrap();
        let seconds = segre_values(b(3, 1), curve(2), 2).unwrap();
        assert_eq!(all.len(), firsts.len() * seconds.len());
        assert_eq!(firsts.last(), Some(&4));
        assert_eq!(seconds.last(), Some(&2));
        let distinct: std::collections::BTreeSet<_> =
            all.iter().map(|p| p.entries().to_vec()).collect();
        assert_eq!(distinct.len(), all.len());
    }

    #[test]
    fn sweep_nonempty_examples() {
        let spec = SweepSpec::square(b(2, 1), curve(2), 2).unwrap();
        let map = sweep_nonempty(&spec).unwrap();
        for (kl, v) in &map {
            assert_eq!(*v, kl.k + kl.l < 1, "{kl:?}");
        }
        let spec = SweepSpec::square(b(3, 0), curve(2), 2).unwrap();
        let map = sweep_nonempty(&spec).unwrap();
        assert!(!map[&KL::new(1, 1)]);
        assert!(map[&KL::new(0, 0)]);
    }

    #[test]
    fn sweep_complement_examples() {
        let spec = SweepSpec::square(b(2, 0), curve(5), 4).unwrap();
        let map = sweep_complement_dim(&spec).unwrap();
        assert_eq!(map[&KL::new(2, 0)], Some(15));
        assert_eq!(map[&KL::new(1, 0)], None);
        assert!(!map.contains_key(&KL::new(4, 4)));
        let spec = SweepSpec::square(b(2, 0), curve(2), 1).unwrap();
        assert_eq!(sweep_complement_dim(&spec).unwrap()[&KL::new(0, 0)], None);
    }

    #[test]
    fn sweep_guard() {
        let spec = SweepSpec::square(b(2, 0), curve(2), 60).unwrap();
        assert_eq!(spec.point_count(), 121 * 121);
        assert!(matches!(
            sweep_nonempty(&spec),
            Err(Error::SweepTooLarge { .. })
        ));
        assert!(sweep_nonempty(&spec.clone().with_limit(20_000)).is_ok());
        let (lo, hi) = (1, 0);
        assert!(SweepSpec::new(b(2, 0), curve(2), lo..=hi, 0..=0).is_err());
    }

    #[test]
    fn sweeps_are_deterministic() {
        let spec = SweepSpec::square(b(3, 1), curve(3), 9).unwrap();
        assert_eq!(
            sweep_nonempty(&spec).unwrap(),
            sweep_nonempty(&spec).unwrap()
        );
        assert_eq!(
            sweep_complement_dim(&spec).unwrap(),
            sweep_complement_dim(&spec).unwrap()
        );
    }

    #[test]
    fn printed_table_genus_two() {
        assert_eq!(printed_rank3_bounds(2, 0), (3, 3));
        assert_eq!(printed_rank3_bounds(2, 1), (4, 2));
        assert_eq!(printed_rank3_bounds(2, 2), (2, 4));
        assert_eq!(printed_rank3_bounds(3, 0), (6, 6));
    }
}
