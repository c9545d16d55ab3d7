//! Rank 2 and rank 3 classifications.
//!
//! In rank 2 the predicate depends only on `t = k + l`: a profile `(s_1)` is
//! `t`-stable iff `s_1 > t`. In rank 3 the regions `R3k` and `R3l` detect the
//! shape of the Jordan-Hölder filtration of a strictly semistable bundle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::klregions::{classify_region, is_kl_stable};
use crate::segre::generic_segre_bound;
use crate::types::{CurveParams, SegreProfile, KL};

fn require_rank(p: &SegreProfile, n: i64) -> Result<()> {
    if p.rank() != n {
        return Err(Error::RankMismatch {
            expected: n,
            found: p.rank(),
        });
    }
    Ok(())
}

/// Rank 2 stability with parameter `t = k + l`.
pub fn t_stable(p: &SegreProfile, t: i64) -> Result<bool> {
    require_rank(p, 2)?;
    Ok(p.entries()[0] > t)
}

/// `A_t(2,d)` is nonempty iff `t < g-1` when `g` and `d` have different
/// parity, and iff `t <= g-1` when they agree.
pub fn rank2_nonempty(d: i64, curve: CurveParams, t: i64) -> bool {
    let g = curve.genus();
    if (g - d).rem_euclid(2) == 0 {
        t < g
    } else {
        t < g - 1
    }
}

/// How `A_t(2,d)` sits over `A_{t+1}(2,d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainRelation {
    /// `A_t = A_{t+1}`: no bundle has `s_1 = t+1`, by parity or because both are empty.
    Equal,
    /// `A_t` strictly contains `A_{t+1}`.
    StrictlyContains,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainMarker {
    /// First `t` (from below) with `A_t` empty.
    FirstEmpty,
    /// `A_t = M(2,d)`.
    EqualsModuli,
    /// `t <= 1-2g`: every indecomposable bundle is `t`-stable.
    IndecomposableFloor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainLink {
    pub t: i64,
    pub nonempty: bool,
    /// Relation to `A_{t+1}`; absent at the top of the chain.
    pub relation: Option<ChainRelation>,
    pub markers: Vec<ChainMarker>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rank2Chain {
    pub degree: i64,
    pub genus: i64,
    pub links: Vec<ChainLink>,
}

/// The filtration `A_g(2,d) ⊆ ... ⊆ A_{1-2g}(2,d)`, listed from `t = g` down.
pub fn rank2_chain(d: i64, curve: CurveParams) -> Rank2Chain {
    let g = curve.genus();
    let floor = rank2_indecomposable_floor(curve);
    let first_empty = (floor..=g)
        .find(|&t| !rank2_nonempty(d, curve, t))
        .expect("A_g(2,d) is empty");
    let links = (floor..=g)
        .rev()
        .map(|t| {
            let nonempty = rank2_nonempty(d, curve, t);
            let relation = (t < g).then(|| {
                // A_t \ A_{t+1} consists of bundles with s_1 = t+1 = d (mod 2)
                if nonempty && (t + 1 - d).rem_euclid(2) == 0 {
                    ChainRelation::StrictlyContains
                } else {
                    ChainRelation::Equal
                }
            });
            let mut markers = Vec::new();
            if t == first_empty {
                markers.push(ChainMarker::FirstEmpty);
            }
            // s_1 > t agrees with s_1 > 0 on integers of d's parity
            if t == 0 || (t == 1 && d.rem_euclid(2) == 0) || (t == -1 && d.rem_euclid(2) == 1) {
                markers.push(ChainMarker::EqualsModuli);
            }
            if t == floor {
                markers.push(ChainMarker::IndecomposableFloor);
            }
            ChainLink {
                t,
                nonempty,
                relation,
                markers,
            }
        })
        .collect();
    Rank2Chain {
        degree: d,
        genus: g,
        links,
    }
}

/// `1 - 2g`: every indecomposable rank 2 bundle is `t`-stable for `t` at or
/// below this value, since its Segre invariant is at least `2 - 2g`.
pub fn rank2_indecomposable_floor(curve: CurveParams) -> i64 {
    1 - 2 * curve.genus()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rank2Dims {
    pub dim: i64,
    pub codim: i64,
}

/// Closed form for the complement of `A_t(2,d)` in `M(2,d)`, `0 <= t <= g-1`:
/// `dim = 3g+t-2` when `t = d (mod 2)`, `3g+t-3` otherwise, and
/// `codim = (4g-3) - dim`.
///
/// `None` when the complement is empty, which happens when the largest
/// Segre value `<= t` of the right parity is not positive.
pub fn rank2_complement_dims(d: i64, curve: CurveParams, t: i64) -> Result<Option<Rank2Dims>> {
    let g = curve.genus();
    if !(0..=g - 1).contains(&t) {
        return Err(Error::NotInR1 {
            kl: KL::new(t, 0),
            n: 2,
            g,
        });
    }
    let same_parity = (t - d).rem_euclid(2) == 0;
    let s_max = if same_parity { t } else { t - 1 };
    if s_max <= 0 {
        return Ok(None);
    }
    let dim = if same_parity {
        3 * g + t - 2
    } else {
        3 * g + t - 3
    };
    Ok(Some(Rank2Dims {
        dim,
        codim: 4 * g - 3 - dim,
    }))
}

/// Strict bounds `(B1, B2)`: `A_(k,l)(3,d)` is nonempty iff `2k+l < B1` and `k+2l < B2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rank3Row {
    pub d_mod_3: i64,
    pub bound_2k_plus_l: i64,
    pub bound_k_plus_2l: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rank3Table {
    pub genus: i64,
    pub rows: Vec<Rank3Row>,
}

pub fn rank3_table(curve: CurveParams) -> Rank3Table {
    let g = curve.genus();
    let rows = (0..3)
        .map(|d| Rank3Row {
            d_mod_3: d,
            bound_2k_plus_l: generic_segre_bound(3, d, g, 1).expect("m = 1 is in range"),
            bound_k_plus_2l: generic_segre_bound(3, d, g, 2).expect("m = 2 is in range"),
        })
        .collect();
    Rank3Table { genus: g, rows }
}

/// Shape of the Jordan-Hölder filtration of a strictly semistable rank 3 bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum JHType {
    /// `0 ⊂ L ⊂ E`
    LineFirst,
    /// `0 ⊂ F ⊂ E` with `F` of rank 2
    PlaneFirst,
    /// `0 ⊂ L ⊂ F ⊂ E`
    FullFlag,
}

pub fn jh_classify(p: &SegreProfile) -> Result<JHType> {
    require_rank(p, 3)?;
    if p.degree().rem_euclid(3) != 0 {
        return Err(Error::DegreeNotDivisible {
            n: 3,
            d: p.degree(),
        });
    }
    match p.entries() {
        [0, 0] => Ok(JHType::FullFlag),
        [0, s2] if *s2 > 0 => Ok(JHType::LineFirst),
        [s1, 0] if *s1 > 0 => Ok(JHType::PlaneFirst),
        _ => Err(Error::NotStrictlySemistable),
    }
}

/// Which half of `R3` to search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum R3Side {
    K,
    L,
}

/// Lattice points with `|k|, |l| <= radius`, ordered by `|k|+|l|`, then `k`, then `l`.
pub fn lattice_by_norm(radius: i64) -> impl Iterator<Item = KL> {
    (0..=2 * radius).flat_map(move |norm| {
        (-radius..=radius).flat_map(move |k| {
            (-radius..=radius)
                .filter(move |&l| k.abs() + l.abs() == norm)
                .map(move |l| KL::new(k, l))
        })
    })
}

/// First point of `R3k` or `R3l` within `|k|, |l| <= 3g` at which `p` is stable.
pub fn r3_witness(p: &SegreProfile, curve: CurveParams, side: R3Side) -> Option<KL> {
    let g = curve.genus();
    lattice_by_norm(3 * g).find(|&kl| {
        let flags = classify_region(p.rank(), g, kl).expect("n >= 2 and g >= 2");
        let in_side = match side {
            R3Side::K => flags.in_r3k,
            R3Side::L => flags.in_r3l,
        };
        in_side && is_kl_stable(p, kl)
    })
}

/// A point of the `R3` half matching the filtration type at which `p` is
/// `(k,l)`-stable. Full flags have no such point.
pub fn jh_region_witness(p: &SegreProfile, curve: CurveParams) -> Result<Option<KL>> {
    Ok(match jh_classify(p)? {
        JHType::LineFirst => r3_witness(p, curve, R3Side::L),
        JHType::PlaneFirst => r3_witness(p, curve, R3Side::K),
        JHType::FullFlag => {
            r3_witness(p, curve, R3Side::K).or_else(|| r3_witness(p, curve, R3Side::L))
        }
    })
}

/// `(k,l)`-stability of two strictly semistable profiles of the same type.
/// Differing answers mean `(k,l)`-stability separates the S-equivalence class.
pub fn s_equivalence_split(p: &SegreProfile, q: &SegreProfile, kl: KL) -> Result<(bool, bool)> {
    if p.bundle() != q.bundle() {
        return Err(Error::MismatchedBundles(p.bundle(), q.bundle()));
    }
    if !p.is_strictly_semistable() || !q.is_strictly_semistable() {
        return Err(Error::NotStrictlySemistable);
    }
    Ok((is_kl_stable(p, kl), is_kl_stable(q, kl)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::BundleType;

    fn curve(g: i64) -> CurveParams {
        CurveParams::new(g).unwrap()
    }

    fn prof(n: i64, d: i64, s: &[i64]) -> SegreProfile {
        SegreProfile::new(BundleType::new(n, d).unwrap(), s.to_vec()).unwrap()
    }

    #[test]
    fn t_stable_examples() {
        assert_eq!(t_stable(&prof(2, 0, &[2]), 1), Ok(true));
        assert_eq!(t_stable(&prof(2, 0, &[0]), 0), Ok(false));
        assert_eq!(t_stable(&prof(2, 1, &[1]), 0), Ok(true));
        assert!(t_stable(&prof(3, 0, &[0, 0]), 0).is_err());
    }

    #[test]
    fn t_stable_agrees_with_kl() {
        let p = prof(2, 1, &[3]);
        for t in -6..6 {
            for k in -6..6 {
                assert_eq!(
                    t_stable(&p, t).unwrap(),
                    is_kl_stable(&p, KL::new(k, t - k))
                );
            }
        }
    }

    #[test]
    fn rank2_nonempty_examples() {
        assert!(rank2_nonempty(1, curve(2), 0));
        assert!(!rank2_nonempty(1, curve(2), 1));
        assert!(rank2_nonempty(0, curve(2), 1));
        assert!(!rank2_nonempty(0, curve(2), 2));
    }

    #[test]
    fn chain_even_degree() {
        let chain = rank2_chain(0, curve(4));
        let ts: Vec<i64> = chain.links.iter().map(|c| c.t).collect();
        assert_eq!(ts.first(), Some(&4));
        assert_eq!(ts.last(), Some(&-7));
        let link = |t: i64| chain.links.iter().find(|c| c.t == t).unwrap();
        assert_eq!(link(4).relation, None);
        // A_{2r} = A_{2r+1}
        assert_eq!(link(0).relation, Some(ChainRelation::Equal));
        assert_eq!(link(2).relation, Some(ChainRelation::Equal));
        assert_eq!(link(1).relation, Some(ChainRelation::StrictlyContains));
        assert_eq!(link(-1).relation, Some(ChainRelation::StrictlyContains));
        assert!(link(4).markers.contains(&ChainMarker::FirstEmpty));
        assert!(link(0).markers.contains(&ChainMarker::EqualsModuli));
        assert!(link(1).markers.contains(&ChainMarker::EqualsModuli));
        assert!(!link(-1).markers.contains(&ChainMarker::EqualsModuli));
        assert!(link(-7).markers.contains(&ChainMarker::IndecomposableFloor));
    }

    #[test]
    fn chain_odd_degree() {
        let chain = rank2_chain(1, curve(4));
        let link = |t: i64| chain.links.iter().find(|c| c.t == t).unwrap();
        // A_{2r+1} = A_{2r+2}; g=4, d odd: A_3 is empty
        assert_eq!(link(1).relation, Some(ChainRelation::Equal));
        assert_eq!(link(0).relation, Some(ChainRelation::StrictlyContains));
        assert!(link(3).markers.contains(&ChainMarker::FirstEmpty));
        assert!(link(-1).markers.contains(&ChainMarker::EqualsModuli));
        assert!(!link(1).markers.contains(&ChainMarker::EqualsModuli));
    }

    #[test]
    fn floor_examples() {
        assert_eq!(rank2_indecomposable_floor(curve(2)), -3);
        assert_eq!(rank2_indecomposable_floor(curve(3)), -5);
        for g in 2..8 {
            let p = prof(2, 0, &[2 - 2 * g]);
            for t in (1 - 2 * g - 5)..=(1 - 2 * g) {
                assert!(t_stable(&p, t).unwrap());
            }
        }
    }

    #[test]
    fn rank2_dims_examples() {
        assert_eq!(
            rank2_complement_dims(0, curve(5), 2).unwrap().unwrap().dim,
            15
        );
        assert_eq!(
            rank2_complement_dims(0, curve(5), 2)
                .unwrap()
                .unwrap()
                .codim,
            2
        );
        assert_eq!(
            rank2_complement_dims(1, curve(5), 2).unwrap().unwrap(),
            Rank2Dims { dim: 14, codim: 3 }
        );
        assert_eq!(rank2_complement_dims(0, curve(5), 1).unwrap(), None);
        assert_eq!(
            rank2_complement_dims(0, curve(5), 3).unwrap().unwrap().dim,
            15
        );
        assert!(rank2_complement_dims(0, curve(5), 5).is_err());
        assert!(rank2_complement_dims(0, curve(5), -1).is_err());
    }

    #[test]
    fn rank3_table_genus_two() {
        let t = rank3_table(curve(2));
        let pairs: Vec<(i64, i64)> = t
            .rows
            .iter()
            .map(|r| (r.bound_2k_plus_l, r.bound_k_plus_2l))
            .collect();
        assert_eq!(pairs, vec![(3, 3), (4, 2), (2, 4)]);
    }

    #[test]
    fn jh_examples() {
        assert_eq!(jh_classify(&prof(3, 0, &[0, 3])), Ok(JHType::LineFirst));
        assert_eq!(jh_classify(&prof(3, 0, &[3, 0])), Ok(JHType::PlaneFirst));
        assert_eq!(jh_classify(&prof(3, 0, &[0, 0])), Ok(JHType::FullFlag));
        assert_eq!(
            jh_classify(&prof(3, 0, &[3, 3])),
            Err(Error::NotStrictlySemistable)
        );
        assert!(jh_classify(&prof(3, 1, &[1, 2])).is_err());
        assert!(jh_classify(&prof(2, 0, &[0])).is_err());

        let g2 = curve(2);
        assert_eq!(
            jh_region_witness(&prof(3, 0, &[3, 0]), g2),
            Ok(Some(KL::new(1, -1)))
        );
        assert_eq!(
            jh_region_witness(&prof(3, 0, &[0, 3]), g2),
            Ok(Some(KL::new(-1, 1)))
        );
        for g in 2..6 {
            assert_eq!(jh_region_witness(&prof(3, 0, &[0, 0]), curve(g)), Ok(None));
        }
    }

    #[test]
    fn lattice_order() {
        let pts: Vec<KL> = lattice_by_norm(1).collect();
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0], KL::new(0, 0));
        assert_eq!(
            pts[1..5],
            [KL::new(-1, 0), KL::new(0, -1), KL::new(0, 1), KL::new(1, 0)]
        );
    }

    #[test]
    fn split_examples() {
        let p = prof(3, 0, &[3, 0]);
        let q = prof(3, 0, &[0, 3]);
        assert_eq!(
            s_equivalence_split(&p, &q, KL::new(1, -1)),
            Ok((true, false))
        );
        assert_eq!(
            s_equivalence_split(&p, &p, KL::new(1, -1)),
            Ok((true, true))
        );
        assert_eq!(
            s_equivalence_split(&p, &q, KL::new(0, 0)),
            Ok((false, false))
        );
        assert!(s_equivalence_split(&p, &prof(3, 3, &[3, 0]), KL::new(0, 0)).is_err());
        assert!(s_equivalence_split(&p, &prof(3, 0, &[3, 3]), KL::new(0, 0)).is_err());
    }
}
