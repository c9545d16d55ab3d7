//! Brill-Noether regions in the `(mu, lambda)` plane and the `(k,l)`
//! exclusions they force.
//!
//! Only the one-sided statements are modeled: a point in BGN or M rules out
//! `(k,l)`-stability for certain `(k,l)`; nothing here asserts membership.
//! The BGN exclusion rests on the existence of a trivial subbundle
//! `O -> E`, which is taken as given for points in that region.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::types::{BundleType, CurveParams, KL};

/// A bundle type with at least `r` independent sections on a genus `g` curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BNPoint {
    pub bundle: BundleType,
    pub sections: i64,
    pub genus: i64,
}

impl BNPoint {
    pub fn new(bundle: BundleType, sections: i64, curve: CurveParams) -> Result<Self> {
        if sections < 0 {
            return Err(Error::NegativeSections(sections));
        }
        Ok(BNPoint {
            bundle,
            sections,
            genus: curve.genus(),
        })
    }

    /// `mu = d/n`
    pub fn mu(&self) -> Rational {
        self.bundle.slope()
    }

    /// `lambda = r/n`
    pub fn lambda(&self) -> Rational {
        Rational::new(self.sections, self.bundle.rank()).expect("rank is positive")
    }

    // 1 <= mu + (1 - lambda) g  <=>  n <= d + (n - r) g
    fn below_bn_line(&self) -> bool {
        let (n, d, r, g) = (
            self.bundle.rank(),
            self.bundle.degree(),
            self.sections,
            self.genus,
        );
        n <= d + (n - r) * g
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BnRegion {
    #[serde(rename = "BGN")]
    Bgn,
    M,
    #[serde(rename = "BMNO_applicable")]
    BmnoApplicable,
    #[serde(rename = "none")]
    None,
}

/// `d = n d' + d''` with `0 < d'' < 2n`, `d' >= 0` and `(d'', r) != (n, n)`.
pub fn bmno_applicable(p: &BNPoint) -> bool {
    let (n, d, r) = (p.bundle.rank(), p.bundle.degree(), p.sections);
    (0..=d.max(0) / n).any(|dp| {
        let dpp = d - n * dp;
        0 < dpp && dpp < 2 * n && (dpp, r) != (n, n)
    })
}

/// BGN: `0 < mu <= 1`, `1 <= mu + (1-lambda)g`, `(mu, lambda) != (1, 1)`.
/// M: `1 < mu < 2`, `1 <= mu + (1-lambda)g`.
/// Otherwise BMNO when its degree decomposition exists.
pub fn bn_region(p: &BNPoint) -> BnRegion {
    let (n, d, r) = (p.bundle.rank(), p.bundle.degree(), p.sections);
    if 0 < d && d <= n && p.below_bn_line() && !(d == n && r == n) {
        BnRegion::Bgn
    } else if n < d && d < 2 * n && p.below_bn_line() {
        BnRegion::M
    } else if bmno_applicable(p) {
        BnRegion::BmnoApplicable
    } else {
        BnRegion::None
    }
}

/// Whether a bundle at `p` is forced out of `A_(k,l)(n,d)`:
/// BGN with `k >= 1, l >= 0`, or M with `k >= 2, l >= 0, d != 2n-1`.
/// In rank 2 only `t = k+l` matters, so `(k,l)` is read as `(t,0)`.
/// `false` only means no exclusion applies.
pub fn bn_kl_excluded(p: &BNPoint, kl: KL) -> bool {
    let (n, d) = (p.bundle.rank(), p.bundle.degree());
    let kl = if n == 2 { KL::new(kl.k + kl.l, 0) } else { kl };
    match bn_region(p) {
        BnRegion::Bgn => kl.k >= 1 && kl.l >= 0,
        BnRegion::M => kl.k >= 2 && kl.l >= 0 && d != 2 * n - 1,
        BnRegion::BmnoApplicable | BnRegion::None => false,
    }
}

/// `E (x) L` for a line bundle with `deg L = d_l` and `h0(L) = s`.
pub fn bn_tensor(p: &BNPoint, d_l: i64, s: i64) -> Result<BNPoint> {
    if s < 1 {
        return Err(Error::InvalidTwist(s));
    }
    let n = p.bundle.rank();
    Ok(BNPoint {
        bundle: BundleType::new(n, p.bundle.degree() + n * d_l)?,
        sections: p.sections * s,
        genus: p.genus,
    })
}

/// Exclusion for `E (x) L`: twisting preserves `(k,l)`-stability, so it is
/// inherited from the untwisted point.
pub fn bn_twisted_excluded(base: &BNPoint, kl: KL) -> bool {
    bn_kl_excluded(base, kl)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StratumConstraint {
    /// `s_m = s`
    Equal { m: i64, s: i64 },
    /// `s_m >= s`
    AtLeast { m: i64, s: i64 },
}

impl StratumConstraint {
    pub fn rank(&self) -> i64 {
        match *self {
            StratumConstraint::Equal { m, .. } | StratumConstraint::AtLeast { m, .. } => m,
        }
    }

    pub fn admits(&self, s_m: i64) -> bool {
        match *self {
            StratumConstraint::Equal { s, .. } => s_m == s,
            StratumConstraint::AtLeast { s, .. } => s_m >= s,
        }
    }
}

/// Segre strata forced on a `(k,l)`-stable bundle with a section, for the
/// two families worked out by hand:
/// * `B(2,3,1)`, `t = 1`: `s_1 = 3`
/// * `B(3,d,1)`, `d in {3,4,5}`, `(k,l) = (1,0)`: `s_1 = d`, `s_2 >= 2`
pub fn bn_forced_stratum(p: &BNPoint, kl: KL) -> Option<Vec<StratumConstraint>> {
    let (n, d, r) = (p.bundle.rank(), p.bundle.degree(), p.sections);
    match (n, d, r) {
        (2, 3, 1) if kl.k + kl.l == 1 => Some(vec![StratumConstraint::Equal { m: 1, s: 3 }]),
        (3, 3..=5, 1) if kl == KL::new(1, 0) => Some(vec![
            StratumConstraint::Equal { m: 1, s: d },
            StratumConstraint::AtLeast { m: 2, s: 2 },
        ]),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BnReport {
    pub point: BNPoint,
    pub mu: Rational,
    pub lambda: Rational,
    pub kl: KL,
    pub region: BnRegion,
    pub bmno_applicable: bool,
    pub excluded_kl: bool,
    pub forced_strata: Vec<StratumConstraint>,
}

pub fn bn_report(p: &BNPoint, kl: KL) -> BnReport {
    BnReport {
        point: *p,
        mu: p.mu(),
        lambda: p.lambda(),
        kl,
        region: bn_region(p),
        bmno_applicable: bmno_applicable(p),
        excluded_kl: bn_kl_excluded(p, kl),
        forced_strata: bn_forced_stratum(p, kl).unwrap_or_default(),
    }
}
