//! Arithmetic of the π-orbifold group of a 2-bridge knot.
//!
//! For a knot with slope `q/p` the double branched cover has
//! `H_1 ≅ Z/p`, and the π-orbifold group is dihedral of order `2p`.
//! The homology class of the lift of a slope-`u/v` arc is `v` times a
//! generator. These geometric facts are taken as input; this module
//! implements only the arithmetic that follows from them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::slope::Fraction;

/// An element `ρ^rotation σ^flip` of the dihedral group of order `2p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DihedralElement {
    pub rotation: u64,
    pub flip: bool,
    pub p: u64,
}

impl DihedralElement {
    pub fn new(rotation: u64, flip: bool, p: u64) -> Self {
        assert!(p >= 1, "dihedral group needs p >= 1");
        DihedralElement { rotation: rotation % p, flip, p }
    }

    pub fn identity(p: u64) -> Self {
        Self::new(0, false, p)
    }

    pub fn rotation(k: u64, p: u64) -> Self {
        Self::new(k, false, p)
    }

    pub fn reflection(p: u64) -> Self {
        Self::new(0, true, p)
    }

    pub fn inverse(self) -> Self {
        if self.flip {
            self
        } else {
            Self::new((self.p - self.rotation) % self.p, false, self.p)
        }
    }

    pub fn order(self) -> u64 {
        if self.flip {
            2
        } else {
            self.p / self.rotation.gcd(&self.p)
        }
    }
}

/// `(r1, f1)·(r2, f2) = (r1 + (−1)^{f1} r2, f1 xor f2)`.
impl std::ops::Mul for DihedralElement {
    type Output = Self;

    fn mul(self, o: Self) -> Self {
        assert_eq!(self.p, o.p, "elements of different dihedral groups");
        let r2 = if self.flip { (self.p - o.rotation) % self.p } else { o.rotation };
        Self::new((self.rotation + r2) % self.p, self.flip ^ o.flip, self.p)
    }
}

/// A class in `Z/p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct HomologyClass {
    pub value: u64,
    pub p: u64,
}

impl HomologyClass {
    /// Order of the class in `Z/p`.
    pub fn order(self) -> u64 {
        self.p / self.value.gcd(&self.p)
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.p)
    }
}

/// `p` for a knot slope `q/p` with `0 < q ≤ p`.
pub fn homology_order(f: &Fraction) -> Result<u64> {
    match f.to_u64_pair() {
        Some((q, p)) if q > 0 && q <= p => Ok(p),
        _ => Err(Error::InvalidSlope { num: f.num().to_string(), den: f.den().to_string() }),
    }
}

/// Class of the lifted arc of slope `u/v`: `v mod p` (`∞ = 1/0` gives 0).
pub fn arc_class(s: &Fraction, p: u64) -> HomologyClass {
    let v = s.den().mod_floor(&BigInt::from(p)).to_u64().expect("reduced below p");
    HomologyClass { value: v, p }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupVerdict {
    pub slope: Fraction,
    pub knot_slope: Fraction,
    pub class: HomologyClass,
    pub order_in_homology: u64,
    pub dihedral_image_order: u64,
    pub proper: bool,
}

/// Image of the meridian pair of the slope-`s` arc in the π-orbifold group
/// of `K(f)`: the class generates a cyclic subgroup of order `p / gcd(p, v)`,
/// extended by the meridian reflection.
pub fn subgroup_verdict(s: &Fraction, f: &Fraction) -> Result<SubgroupVerdict> {
    let p = homology_order(f)?;
    let class = arc_class(s, p);
    let order = class.order();
    Ok(SubgroupVerdict {
        slope: s.clone(),
        knot_slope: f.clone(),
        class,
        order_in_homology: order,
        dihedral_image_order: 2 * order,
        proper: order < p,
    })
}

/// The two verdicts for `r = 2m/(4m²−1)` with `s_1 = 1/(2m−1)` and `s_2 = 1/(2m+1)`.
pub fn theorem2_verdicts(m: u64) -> Result<(SubgroupVerdict, SubgroupVerdict)> {
    if m < 2 {
        return Err(Error::Unsupported(format!("m = {m}: the [2m, -2m] family needs m >= 2")));
    }
    let r = Fraction::new(2 * m, 4 * m * m - 1)?;
    let s1 = Fraction::new(1, 2 * m - 1)?;
    let s2 = Fraction::new(1, 2 * m + 1)?;
    Ok((subgroup_verdict(&s1, &r)?, subgroup_verdict(&s2, &r)?))
}

pub fn theorem2_holds_at(m: u64) -> bool {
    match theorem2_verdicts(m) {
        Ok((v1, v2)) => {
            v1.proper
                && v2.proper
                && v1.order_in_homology == 2 * m + 1
                && v2.order_in_homology == 2 * m - 1
        }
        Err(_) => false,
    }
}

/// Checks every `m` in `2..=m_max`.
pub fn theorem2_sweep(m_max: u64) -> Result<bool> {
    if m_max < 2 {
        return Err(Error::Unsupported("theorem2_sweep needs m_max >= 2".into()));
    }
    Ok((2..=m_max).all(theorem2_holds_at))
}

/// Verdicts for caller-supplied arc slopes of a general knot slope. No
/// formula for the slopes is known here, so none is guessed.
pub fn verdicts_for_slopes(f: &Fraction, slopes: &[Fraction]) -> Result<Vec<SubgroupVerdict>> {
    slopes.iter().map(|s| subgroup_verdict(s, f)).collect()
}
