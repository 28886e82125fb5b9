use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::setup::TwistSetup;
use crate::arith::{is_fundamental_discriminant, kronecker, FundamentalDiscriminant};
use crate::{Error, Result};

/// Default upper bound for the auxiliary discriminant scan.
pub const DEFAULT_SEARCH_BOUND: u64 = 1_000_000;

/// Prescribed values `(D/l) = ±1` at finitely many primes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignPattern {
    constraints: Vec<(BigInt, i8)>,
}

impl SignPattern {
    pub fn new(constraints: impl IntoIterator<Item = (BigInt, i8)>) -> Result<Self> {
        let mut constraints: Vec<_> = constraints.into_iter().collect();
        if let Some((_, s)) = constraints.iter().find(|(_, s)| s.abs() != 1) {
            return Err(Error::Precondition(alloc::format!("sign {s} is not ±1")));
        }
        constraints.sort();
        constraints.dedup();
        if constraints.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Precondition("conflicting signs at one prime".into()));
        }
        Ok(Self { constraints })
    }

    /// The characters of `D1` at every prime of `N`, with the sign at `p` flipped.
    pub fn auxiliary(setup: &TwistSetup, p: &BigInt) -> Result<Self> {
        let lr = setup
            .reduction()
            .at(p)
            .ok_or_else(|| Error::NotMultiplicative(p.clone()))?;
        if !lr.kind.is_multiplicative() {
            return Err(Error::NotMultiplicative(p.clone()));
        }
        let d1 = &setup.discriminants()[0];
        Self::new(setup.conductor_primes().map(|l| {
            let chi = d1.chi(l);
            (l.clone(), if l == p { -chi } else { chi })
        }))
    }

    pub fn constraints(&self) -> &[(BigInt, i8)] {
        &self.constraints
    }

    pub fn matches(&self, d: &BigInt) -> Result<bool> {
        for (l, s) in &self.constraints {
            if kronecker(d, l)? != *s {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Smallest fundamental discriminant `1 < D <= bound`, coprime to `avoid`,
/// whose characters follow `pattern`.
pub fn search_discriminant(
    pattern: &SignPattern,
    avoid: &BigInt,
    bound: u64,
) -> Result<FundamentalDiscriminant> {
    for d in 2..=bound {
        let d = BigInt::from(d);
        if d.gcd(avoid).is_one() && is_fundamental_discriminant(&d) && pattern.matches(&d)? {
            return FundamentalDiscriminant::new(&d);
        }
    }
    Err(Error::SearchExhausted(BigInt::from(bound)))
}

/// An auxiliary discriminant `D3` coprime to `N D` agreeing with `D1` at every
/// prime of `N` except `p`, where its character has the opposite sign.
/// Nonvanishing of the associated L-value is not checked.
pub fn find_auxiliary_discriminant(
    setup: &TwistSetup,
    p: &BigInt,
    bound: u64,
) -> Result<FundamentalDiscriminant> {
    let pattern = SignPattern::auxiliary(setup, p)?;
    search_discriminant(
        &pattern,
        &(setup.conductor() * setup.combined_discriminant()),
        bound,
    )
}
