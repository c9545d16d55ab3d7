//! Domain types shared by every module.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::segre::hirschowitz_bound;

/// Genus of the base curve; the only geometric input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCurve", into = "RawCurve")]
pub struct CurveParams {
    genus: i64,
}

#[derive(Serialize, Deserialize)]
struct RawCurve {
    genus: i64,
}

impl TryFrom<RawCurve> for CurveParams {
    type Error = Error;
    fn try_from(raw: RawCurve) -> Result<Self> {
        CurveParams::new(raw.genus)
    }
}

impl From<CurveParams> for RawCurve {
    fn from(c: CurveParams) -> Self {
        RawCurve { genus: c.genus }
    }
}

impl CurveParams {
    pub fn new(genus: i64) -> Result<Self> {
        if genus < 2 {
            return Err(Error::InvalidGenus(genus));
        }
        Ok(CurveParams { genus })
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }
}

/// Discrete type (rank, degree) of a vector bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawBundle", into = "RawBundle")]
pub struct BundleType {
    rank: i64,
    degree: i64,
}

#[derive(Serialize, Deserialize)]
struct RawBundle {
    rank: i64,
    degree: i64,
}

impl TryFrom<RawBundle> for BundleType {
    type Error = Error;
    fn try_from(raw: RawBundle) -> Result<Self> {
        BundleType::new(raw.rank, raw.degree)
    }
}

impl From<BundleType> for RawBundle {
    fn from(b: BundleType) -> Self {
        RawBundle {
            rank: b.rank,
            degree: b.degree,
        }
    }
}

impl BundleType {
    pub fn new(rank: i64, degree: i64) -> Result<Self> {
        if rank < 1 {
            return Err(Error::InvalidRank { rank, min: 1 });
        }
        Ok(BundleType { rank, degree })
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// The slope `d/n`.
    pub fn slope(&self) -> Rational {
        k_slope(*self, 0)
    }

    /// Dimension `n^2(g-1)+1` of the moduli space of stable bundles of this type.
    pub fn moduli_dimension(&self, curve: CurveParams) -> i64 {
        self.rank * self.rank * (curve.genus() - 1) + 1
    }

    pub(crate) fn require_rank_at_least(&self, min: i64) -> Result<()> {
        if self.rank < min {
            return Err(Error::InvalidRank {
                rank: self.rank,
                min,
            });
        }
        Ok(())
    }

    pub(crate) fn check_subrank(&self, m: i64) -> Result<()> {
        check_subrank(self.rank, m)
    }
}

pub(crate) fn check_subrank(n: i64, m: i64) -> Result<()> {
    if m < 1 || m > n - 1 {
        return Err(Error::SubbundleRank { m, max: n - 1 });
    }
    Ok(())
}

/// A stability parameter `(k, l)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KL {
    pub k: i64,
    pub l: i64,
}

impl KL {
    pub const fn new(k: i64, l: i64) -> Self {
        KL { k, l }
    }

    /// `k(n-m) + m*l`, the threshold a rank-`m` Segre invariant must exceed.
    pub fn threshold(&self, n: i64, m: i64) -> i64 {
        self.k * (n - m) + m * self.l
    }
}

/// The `k`-slope `(d+k)/n`.
pub fn k_slope(b: BundleType, k: i64) -> Rational {
    Rational::new(b.degree + k, b.rank).expect("rank is positive")
}

/// `s_m = m*d - n*deg F` for a rank-`m` subbundle `F` of maximal degree.
pub fn segre_invariant(d: i64, n: i64, m: i64, deg_f: i64) -> Result<i64> {
    check_subrank(n, m)?;
    Ok(m * d - n * deg_f)
}

/// Segre profile `(s_1, ..., s_{n-1})` of a bundle.
///
/// Construction checks the length and the congruence `s_m = m*d (mod n)`.
/// The Hirschowitz upper bound depends on the genus and is checked by
/// [`SegreProfile::check_bound`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawProfile", into = "RawProfile")]
pub struct SegreProfile {
    bundle: BundleType,
    segre: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct RawProfile {
    rank: i64,
    degree: i64,
    segre: Vec<i64>,
}

impl TryFrom<RawProfile> for SegreProfile {
    type Error = Error;
    fn try_from(raw: RawProfile) -> Result<Self> {
        SegreProfile::new(BundleType::new(raw.rank, raw.degree)?, raw.segre)
    }
}

impl From<SegreProfile> for RawProfile {
    fn from(p: SegreProfile) -> Self {
        RawProfile {
            rank: p.bundle.rank,
            degree: p.bundle.degree,
            segre: p.segre,
        }
    }
}

impl SegreProfile {
    pub fn new(bundle: BundleType, segre: Vec<i64>) -> Result<Self> {
        let n = bundle.rank;
        let expected = (n - 1) as usize;
        if segre.len() != expected {
            return Err(Error::ProfileLength {
                rank: n,
                expected,
                found: segre.len(),
            });
        }
        for (m, &s) in (1..).zip(&segre) {
            if (s - m * bundle.degree).rem_euclid(n) != 0 {
                return Err(Error::Congruence {
                    m,
                    s,
                    n,
                    d: bundle.degree,
                });
            }
        }
        Ok(SegreProfile { bundle, segre })
    }

    /// Builds the profile and checks the Hirschowitz bound for `curve`.
    pub fn with_curve(bundle: BundleType, segre: Vec<i64>, curve: CurveParams) -> Result<Self> {
        let p = Self::new(bundle, segre)?;
        p.check_bound(curve)?;
        Ok(p)
    }

    /// `s_m <= m(n-m)(g-1) + (n-1)` for every `m`.
    pub fn check_bound(&self, curve: CurveParams) -> Result<()> {
        let n = self.bundle.rank;
        for (m, s) in self.iter() {
            let bound = hirschowitz_bound(n, curve.genus(), m)?;
            if s > bound {
                return Err(Error::HirschowitzBound { m, s, bound });
            }
        }
        Ok(())
    }

    pub fn bundle(&self) -> BundleType {
        self.bundle
    }

    pub fn rank(&self) -> i64 {
        self.bundle.rank
    }

    pub fn degree(&self) -> i64 {
        self.bundle.degree
    }

    pub fn entries(&self) -> &[i64] {
        &self.segre
    }

    /// `s_m`, indexed from 1.
    pub fn get(&self, m: i64) -> Option<i64> {
        if m < 1 {
            return None;
        }
        self.segre.get((m - 1) as usize).copied()
    }

    /// `(m, s_m)` pairs in increasing `m`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (1..).zip(self.segre.iter().copied())
    }

    pub fn is_stable(&self) -> bool {
        self.segre.iter().all(|&s| s > 0)
    }

    pub fn is_semistable(&self) -> bool {
        self.segre.iter().all(|&s| s >= 0)
    }

    pub fn is_strictly_semistable(&self) -> bool {
        self.is_semistable() && self.segre.contains(&0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64, d: i64) -> BundleType {
        BundleType::new(n, d).unwrap()
    }

    #[test]
    fn k_slope_examples() {
        assert_eq!(k_slope(b(2, 0), 0), Rational::new(0, 1).unwrap());
        assert_eq!(k_slope(b(3, 1), 2), Rational::from_integer(1));
        assert_eq!(k_slope(b(2, 3), -1), Rational::from_integer(1));
        assert_eq!(k_slope(b(2, 0), 0).to_string(), "0/1");
    }

    #[test]
    fn segre_invariant_examples() {
        assert_eq!(segre_invariant(0, 2, 1, 0), Ok(0));
        assert_eq!(segre_invariant(3, 3, 2, 2), Ok(0));
        assert_eq!(segre_invariant(1, 2, 1, 0), Ok(1));
        assert!(matches!(
            segre_invariant(1, 2, 2, 0),
            Err(Error::SubbundleRank { m: 2, max: 1 })
        ));
        assert!(segre_invariant(1, 2, 0, 0).is_err());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(BundleType::new(0, 1).is_err());
        assert_eq!(CurveParams::new(1), Err(Error::InvalidGenus(1)));
        assert!(SegreProfile::new(b(3, 0), vec![3]).is_err());
        assert!(matches!(
            SegreProfile::new(b(3, 1), vec![1, 1]),
            Err(Error::Congruence { m: 2, .. })
        ));
        // rank one has an empty profile
        assert!(SegreProfile::new(b(1, 5), vec![]).is_ok());
    }

    #[test]
    fn hirschowitz_bound_enforced_only_with_curve() {
        let g2 = CurveParams::new(2).unwrap();
        // bound for n=2, g=2 is 2
        assert!(SegreProfile::with_curve(b(2, 0), vec![2], g2).is_ok());
        let p = SegreProfile::new(b(2, 0), vec![4]).unwrap();
        assert_eq!(
            p.check_bound(g2),
            Err(Error::HirschowitzBound {
                m: 1,
                s: 4,
                bound: 2
            })
        );
        // negative entries are allowed
        assert!(SegreProfile::with_curve(b(2, 0), vec![-6], g2).is_ok());
    }

    #[test]
    fn stability_classes() {
        let stable = SegreProfile::new(b(3, 0), vec![3, 3]).unwrap();
        let strict = SegreProfile::new(b(3, 0), vec![3, 0]).unwrap();
        let unstable = SegreProfile::new(b(3, 0), vec![-3, 3]).unwrap();
        assert!(stable.is_stable() && !stable.is_strictly_semistable());
        assert!(strict.is_semistable() && strict.is_strictly_semistable() && !strict.is_stable());
        assert!(!unstable.is_semistable());
    }

    #[test]
    fn json_shapes() {
        let p = SegreProfile::new(b(3, 1), vec![4, 2]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"rank":3,"degree":1,"segre":[4,2]}"#);
        assert_eq!(serde_json::from_str::<SegreProfile>(&s).unwrap(), p);
        assert!(
            serde_json::from_str::<SegreProfile>(r#"{"rank":3,"degree":1,"segre":[3,2]}"#).is_err()
        );
        assert_eq!(
            serde_json::to_string(&b(2, -3)).unwrap(),
            r#"{"rank":2,"degree":-3}"#
        );
        assert_eq!(
            serde_json::to_string(&KL::new(1, -1)).unwrap(),
            r#"{"k":1,"l":-1}"#
        );
    }
}
