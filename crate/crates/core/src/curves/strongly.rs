use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{IsoMap, WeierstrassModel};
use crate::arith::val;
use crate::{Error, Result};

/// The two shapes of a 2-strongly-minimal model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwoAdicPattern {
    /// a1 odd, 4 | a3, and a4 even with a6 odd.
    OddA1EvenA4,
    /// a1 odd, 4 | a3, and a4 odd with a6 even.
    OddA1OddA4,
    /// a1 and a2 even, a3 odd.
    EvenA1,
}

impl TwoAdicPattern {
    /// The 2-adic valuation of c6 forced by the pattern.
    pub fn c6_valuation(self) -> u32 {
        match self {
            Self::OddA1EvenA4 | Self::OddA1OddA4 => 0,
            Self::EvenA1 => 3,
        }
    }

    /// Classifies a model, if it matches one of the patterns.
    pub fn of(e: &WeierstrassModel) -> Option<Self> {
        let two = BigInt::from(2);
        let v = |n: &BigInt| val(n, &two);
        if v(e.a1()) == 0 && v(e.a3()) >= 2 {
            if v(e.a4()) >= 1 && v(e.a6()) == 0 {
                return Some(Self::OddA1EvenA4);
            }
            if v(e.a4()) == 0 && v(e.a6()) >= 1 {
                return Some(Self::OddA1OddA4);
            }
        }
        if v(e.a1()) >= 1 && v(e.a2()) >= 1 && v(e.a3()) == 0 {
            return Some(Self::EvenA1);
        }
        None
    }
}

/// A 2-strongly-minimal model of `e` and the (u = 1) map reaching it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StronglyMinimal {
    pub model: WeierstrassModel,
    pub map: IsoMap,
    pub pattern: TwoAdicPattern,
}

/// Searches the maps `[1, r, s, w]` with `0 <= r, s, w < 16` for a model in
/// one of the 2-strongly-minimal shapes; the first hit in (r, s, w) order wins.
///
/// `e` must be globally minimal with odd discriminant.
pub fn two_strongly_minimal(e: &WeierstrassModel) -> Result<StronglyMinimal> {
    if e.discriminant().is_even() {
        return Err(Error::BadReduction(BigInt::from(2)));
    }
    if !super::is_globally_minimal(e)? {
        return Err(Error::NotMinimal);
    }
    let base = e.to_rational();
    for r in 0..16 {
        for s in 0..16 {
            for w in 0..16 {
                let map = IsoMap::from_integers(1, r, s, w)?;
                let model = base.apply_iso(&map).to_integral()?;
                if let Some(pattern) = TwoAdicPattern::of(&model) {
                    debug_assert!(!model.discriminant().is_zero());
                    return Ok(StronglyMinimal {
                        model,
                        map,
                        pattern,
                    });
                }
            }
        }
    }
    Err(Error::NoStronglyMinimal)
}
