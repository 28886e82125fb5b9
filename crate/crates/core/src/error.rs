use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("zero has no factorization or valuation")]
    Zero,
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("the Kronecker symbol (0/0) is undefined")]
    KroneckerUndefined,
    #[error("{0} is not a positive fundamental discriminant")]
    NotFundamental(BigInt),
    #[error("singular Weierstrass model (discriminant is zero)")]
    Singular,
    #[error("isomorphism scaling u must be nonzero")]
    ZeroScaling,
    #[error("twist parameter must be nonzero")]
    ZeroTwist,
    #[error("Weierstrass model is not integral")]
    NotIntegral,
    #[error("Weierstrass model is not globally minimal")]
    NotMinimal,
    #[error("curve has bad reduction at {0}")]
    BadReduction(BigInt),
    #[error("{0} is not a prime of multiplicative reduction")]
    NotMultiplicative(BigInt),
    #[error("no 2-strongly-minimal model found among [1, r, s, w] with 0 <= r, s, w < 16")]
    NoStronglyMinimal,
    #[error("invalid twist setup: {}", ViolationList(.0))]
    InvalidSetup(Vec<SetupViolation>),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("no auxiliary discriminant up to {0}")]
    SearchExhausted(BigInt),
}

/// One failed clause of a twist setup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetupViolation {
    CurveNotMinimal,
    NotFundamental(BigInt),
    /// `N_+ * N_-` differs from the conductor.
    ConductorMismatch {
        conductor: BigInt,
        product: BigInt,
    },
    FactorsNotCoprime,
    NMinusNotSquarefree,
    NMinusNotMultiplicative(BigInt),
    DiscriminantNotCoprimeToConductor(BigInt),
    DiscriminantsNotCoprime,
    BothTrivial,
    NotSplit(BigInt),
    NotInert(BigInt),
    /// A prime where one of the characters is -1 divides the conductor more than once.
    ConditionStar(BigInt),
}

impl fmt::Display for SetupViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::CurveNotMinimal => write!(f, "curve is not a global minimal model"),
            Self::NotFundamental(d) => write!(f, "{d} is not a positive fundamental discriminant"),
            Self::ConductorMismatch { conductor, product } => {
                write!(f, "N+ * N- = {product} but the conductor is {conductor}")
            }
            Self::FactorsNotCoprime => write!(f, "N+ and N- are not coprime"),
            Self::NMinusNotSquarefree => write!(f, "N- is not squarefree"),
            Self::NMinusNotMultiplicative(q) => {
                write!(
                    f,
                    "prime {q} of N- is not a prime of multiplicative reduction"
                )
            }
            Self::DiscriminantNotCoprimeToConductor(d) => {
                write!(f, "discriminant {d} is not coprime to the conductor")
            }
            Self::DiscriminantsNotCoprime => write!(f, "D1 and D2 are not coprime"),
            Self::BothTrivial => write!(f, "D1 and D2 are both 1"),
            Self::NotSplit(l) => write!(f, "prime {l} of N+ does not split"),
            Self::NotInert(q) => write!(f, "prime {q} of N- is not inert"),
            Self::ConditionStar(l) => write!(
                f,
                "prime {l} has a character value -1 but divides the conductor more than once"
            ),
        }
    }
}

struct ViolationList<'a>(&'a [SetupViolation]);

impl fmt::Display for ViolationList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
