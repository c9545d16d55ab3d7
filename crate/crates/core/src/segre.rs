//! Upper bounds on Segre invariants and dimensions of the strata `M(n,d,m,s)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{check_subrank, BundleType, CurveParams, SegreProfile};

fn check_genus(g: i64) -> Result<()> {
    if g < 2 {
        return Err(Error::InvalidGenus(g));
    }
    Ok(())
}

/// `m(n-m)(g-1)`, the top of the range covered by the stratum dimension formula.
pub fn stratum_ceiling(n: i64, g: i64, m: i64) -> i64 {
    m * (n - m) * (g - 1)
}

/// Hirschowitz's bound `m(n-m)(g-1) + (n-1)`, valid for every bundle.
pub fn hirschowitz_bound(n: i64, g: i64, m: i64) -> Result<i64> {
    check_subrank(n, m)?;
    check_genus(g)?;
    Ok(stratum_ceiling(n, g, m) + (n - 1))
}

/// The unique `delta` in `0..n` with `m(n-m)(g-1) + delta = m*d (mod n)`.
pub fn delta_m(n: i64, d: i64, g: i64, m: i64) -> Result<i64> {
    check_subrank(n, m)?;
    check_genus(g)?;
    Ok((m * d - stratum_ceiling(n, g, m)).rem_euclid(n))
}

/// Maximal `m`-Segre invariant of a rank `n`, degree `d` bundle; attained by
/// the general bundle.
pub fn generic_segre_bound(n: i64, d: i64, g: i64, m: i64) -> Result<i64> {
    Ok(stratum_ceiling(n, g, m) + delta_m(n, d, g, m)?)
}

/// Segre profile of the general bundle of type `b`.
pub fn generic_profile(b: BundleType, curve: CurveParams) -> Result<SegreProfile> {
    b.require_rank_at_least(2)?;
    let n = b.rank();
    let segre = (1..n)
        .map(|m| generic_segre_bound(n, b.degree(), curve.genus(), m))
        .collect::<Result<Vec<_>>>()?;
    SegreProfile::with_curve(b, segre, curve)
}

/// A stratum `M(n,d,m,s)`: stable bundles whose `m`-Segre invariant is `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StratumSpec {
    pub bundle: BundleType,
    pub genus: i64,
    pub m: i64,
    pub s: i64,
}

impl StratumSpec {
    pub fn new(bundle: BundleType, curve: CurveParams, m: i64, s: i64) -> Result<Self> {
        let n = bundle.rank();
        check_subrank(n, m)?;
        if (s - m * bundle.degree()).rem_euclid(n) != 0 {
            return Err(Error::Congruence {
                m,
                s,
                n,
                d: bundle.degree(),
            });
        }
        Ok(StratumSpec {
            bundle,
            genus: curve.genus(),
            m,
            s,
        })
    }
}

/// `dim M(n,d,m,s) = n^2(g-1) + 1 + s - m(n-m)(g-1)` for `0 < s <= m(n-m)(g-1)`.
///
/// Values of `s` in the band just above `m(n-m)(g-1)` are rejected rather than
/// extrapolated.
pub fn stratum_dimension(spec: StratumSpec) -> Result<i64> {
    let StratumSpec {
        bundle,
        genus,
        m,
        s,
    } = spec;
    let n = bundle.rank();
    check_subrank(n, m)?;
    check_genus(genus)?;
    let ceiling = stratum_ceiling(n, genus, m);
    if s <= 0 || s > ceiling {
        return Err(Error::OutsideStratumHypotheses { s, max: ceiling });
    }
    Ok(n * n * (genus - 1) + 1 + s - ceiling)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn curve(g: i64) -> CurveParams {
        CurveParams::new(g).unwrap()
    }

    fn b(n: i64, d: i64) -> BundleType {
        BundleType::new(n, d).unwrap()
    }

    #[test]
    fn hirschowitz_examples() {
        assert_eq!(hirschowitz_bound(2, 2, 1), Ok(2));
        assert_eq!(hirschowitz_bound(3, 2, 1), Ok(4));
        assert_eq!(hirschowitz_bound(2, 3, 1), Ok(3));
        assert!(hirschowitz_bound(2, 2, 2).is_err());
        assert!(hirschowitz_bound(2, 1, 1).is_err());
    }

    #[test]
    fn delta_examples() {
        // rank 3, genus 2: bounds 3/3 for d=0 mod 3, 4/2 for d=1 mod 3
        assert_eq!(delta_m(3, 0, 2, 1), Ok(1));
        assert_eq!(generic_segre_bound(3, 0, 2, 1), Ok(3));
        assert_eq!(generic_segre_bound(3, 0, 2, 2), Ok(3));
        assert_eq!(delta_m(3, 1, 2, 1), Ok(2));
        assert_eq!(generic_segre_bound(3, 1, 2, 1), Ok(4));
        assert_eq!(delta_m(3, 1, 2, 2), Ok(0));
        assert_eq!(generic_segre_bound(3, 1, 2, 2), Ok(2));
        assert_eq!(generic_segre_bound(3, 2, 2, 1), Ok(2));
        assert_eq!(generic_segre_bound(3, 2, 2, 2), Ok(4));
        // rank 2, genus 2, odd degree
        assert_eq!(delta_m(2, 1, 2, 1), Ok(0));
        assert_eq!(delta_m(2, -3, 2, 1), Ok(0));
    }

    #[test]
    fn generic_bound_examples() {
        assert_eq!(generic_segre_bound(2, 0, 2, 1), Ok(2));
        assert_eq!(generic_segre_bound(2, 1, 2, 1), Ok(1));
    }

    #[test]
    fn generic_profile_examples() {
        assert_eq!(generic_profile(b(2, 1), curve(2)).unwrap().entries(), &[1]);
        assert_eq!(
            generic_profile(b(3, 1), curve(2)).unwrap().entries(),
            &[4, 2]
        );
        assert_eq!(generic_profile(b(2, 0), curve(5)).unwrap().entries(), &[4]);
        assert!(generic_profile(b(1, 0), curve(2)).is_err());
    }

    #[test]
    fn stratum_dimension_examples() {
        let spec = StratumSpec::new(b(2, 0), curve(5), 1, 2).unwrap();
        // 2^2*4 + 1 + 2 - 4
        assert_eq!(stratum_dimension(spec), Ok(15));
        // s at the ceiling gives the full moduli dimension
        let top = StratumSpec::new(b(2, 1), curve(2), 1, 1).unwrap();
        assert_eq!(stratum_dimension(top), Ok(5));
        let over = StratumSpec::new(b(3, 0), curve(2), 1, 3).unwrap();
        assert_eq!(
            stratum_dimension(over),
            Err(Error::OutsideStratumHypotheses { s: 3, max: 2 })
        );
        let zero = StratumSpec::new(b(2, 0), curve(3), 1, 0).unwrap();
        assert!(stratum_dimension(zero).is_err());
        assert!(StratumSpec::new(b(2, 0), curve(3), 1, 1).is_err());
    }

    proptest! {
        #[test]
        fn generic_bound_within_hirschowitz(n in 2i64..8, d in -50i64..50, g in 2i64..12, m_off in 0i64..8) {
            let m = 1 + m_off % (n - 1);
            let gen = generic_segre_bound(n, d, g, m).unwrap();
            let hir = hirschowitz_bound(n, g, m).unwrap();
            prop_assert!(gen <= hir);
            prop_assert!(hir - gen < n);
            prop_assert_eq!((gen - m * d).rem_euclid(n), 0);
        }

        #[test]
        fn delta_invisible_to_degree_shift(n in 2i64..8, d in -50i64..50, g in 2i64..12, m_off in 0i64..8) {
            let m = 1 + m_off % (n - 1);
            prop_assert_eq!(delta_m(n, d, g, m), delta_m(n, d + n, g, m));
        }

        #[test]
        fn generic_profile_is_valid(n in 2i64..8, d in -50i64..50, g in 2i64..12) {
            let p = generic_profile(b(n, d), curve(g)).unwrap();
            prop_assert!(p.check_bound(curve(g)).is_ok());
            let again = SegreProfile::new(p.bundle(), p.entries().to_vec()).unwrap();
            prop_assert_eq!(again, p);
        }

        #[test]
        fn stratum_dimension_steps_by_n(n in 2i64..6, d in -20i64..20, g in 2i64..8, m_off in 0i64..6) {
            let m = 1 + m_off % (n - 1);
            let ceiling = stratum_ceiling(n, g, m);
            let valid: Vec<i64> = (1..=ceiling).filter(|s| (s - m * d).rem_euclid(n) == 0).collect();
            for w in valid.windows(2) {
                let lo = stratum_dimension(StratumSpec::new(b(n, d), curve(g), m, w[0]).unwrap()).unwrap();
                let hi = stratum_dimension(StratumSpec::new(b(n, d), curve(g), m, w[1]).unwrap()).unwrap();
                prop_assert_eq!(hi - lo, w[1] - w[0]);
            }
        }
    }
}
