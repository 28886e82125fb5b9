use core::fmt;
use core::str::FromStr;

use crate::Error;

/// Kodaira symbol of the special fibre.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kodaira {
    /// `I_n`; `I(0)` is good reduction.
    I(u32),
    II,
    III,
    IV,
    /// `I_n^*`.
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl Kodaira {
    /// Number of irreducible components of the special fibre of the
    /// minimal regular model (with multiplicity ignored).
    pub fn components(self) -> u32 {
        match self {
            Kodaira::I(0) => 1,
            Kodaira::I(n) => n,
            Kodaira::II => 1,
            Kodaira::III => 2,
            Kodaira::IV => 3,
            Kodaira::IStar(n) => n + 5,
            Kodaira::IVStar => 7,
            Kodaira::IIIStar => 8,
            Kodaira::IIStar => 9,
        }
    }
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I(n) => write!(f, "I{n}"),
            Kodaira::II => f.write_str("II"),
            Kodaira::III => f.write_str("III"),
            Kodaira::IV => f.write_str("IV"),
            Kodaira::IStar(n) => write!(f, "I{n}*"),
            Kodaira::IVStar => f.write_str("IV*"),
            Kodaira::IIIStar => f.write_str("III*"),
            Kodaira::IIStar => f.write_str("II*"),
        }
    }
}

impl FromStr for Kodaira {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Precondition(alloc::format!("unknown Kodaira symbol {s:?}"));
        let (body, star) = match s.strip_suffix('*') {
            Some(b) => (b, true),
            None => (s, false),
        };
        let k = match (body, star) {
            ("II", false) => Kodaira::II,
            ("III", false) => Kodaira::III,
            ("IV", false) => Kodaira::IV,
            ("II", true) => Kodaira::IIStar,
            ("III", true) => Kodaira::IIIStar,
            ("IV", true) => Kodaira::IVStar,
            _ => {
                let digits = body.strip_prefix('I').ok_or_else(bad)?;
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                let n = digits.parse().map_err(|_| bad())?;
                if star {
                    Kodaira::IStar(n)
                } else {
                    Kodaira::I(n)
                }
            }
        };
        Ok(k)
    }
}

/// Reduction type of a curve at a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReductionKind {
    Good,
    SplitMultiplicative,
    NonsplitMultiplicative,
    Additive,
}

impl ReductionKind {
    pub fn is_multiplicative(self) -> bool {
        matches!(
            self,
            Self::SplitMultiplicative | Self::NonsplitMultiplicative
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Good => "good",
            Self::SplitMultiplicative => "split",
            Self::NonsplitMultiplicative => "nonsplit",
            Self::Additive => "additive",
        }
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ReductionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "good" => Self::Good,
            "split" => Self::SplitMultiplicative,
            "nonsplit" => Self::NonsplitMultiplicative,
            "additive" => Self::Additive,
            _ => {
                return Err(Error::Precondition(alloc::format!(
                    "unknown reduction kind {s:?}"
                )))
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn symbols_round_trip() {
        let all = [
            Kodaira::I(0),
            Kodaira::I(5),
            Kodaira::I(12),
            Kodaira::II,
            Kodaira::III,
            Kodaira::IV,
            Kodaira::IStar(0),
            Kodaira::IStar(8),
            Kodaira::IVStar,
            Kodaira::IIIStar,
            Kodaira::IIStar,
        ];
        for k in all {
            assert_eq!(k.to_string().parse::<Kodaira>(), Ok(k));
        }
        assert_eq!(Kodaira::IStar(4).to_string(), "I4*");
        for bad in ["", "I", "V", "I*x", "Ix", "IIII"] {
            assert!(bad.parse::<Kodaira>().is_err(), "{bad}");
        }
    }

    #[test]
    fn component_counts() {
        assert_eq!(Kodaira::I(0).components(), 1);
        assert_eq!(Kodaira::I(7).components(), 7);
        assert_eq!(Kodaira::IStar(0).components(), 5);
        assert_eq!(Kodaira::IIStar.components(), 9);
    }
}
