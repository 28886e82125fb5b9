//! Local reduction data: Tate's algorithm and the shortcuts available at
//! twisting and multiplicative primes.

mod kodaira;
mod tate;

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

pub use kodaira::{Kodaira, ReductionKind};
pub use tate::tate_local;

use crate::arith::{count_roots_mod_p, factorize, is_prime, FundamentalDiscriminant};
use crate::curves::WeierstrassModel;
use crate::{Error, Result};

/// Output of Tate's algorithm at one prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalReduction {
    pub prime: BigInt,
    pub kodaira: Kodaira,
    /// The Tamagawa number `c_p`.
    pub tamagawa: u32,
    /// `v_p` of the minimal discriminant.
    pub disc_valuation: u32,
    pub conductor_exponent: u32,
    pub kind: ReductionKind,
}

/// Conductor and local data at every bad prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalReduction {
    pub conductor: BigInt,
    /// One entry per prime of bad reduction, in increasing order.
    pub local: Vec<LocalReduction>,
}

impl GlobalReduction {
    pub fn at(&self, p: &BigInt) -> Option<&LocalReduction> {
        self.local.iter().find(|l| &l.prime == p)
    }

    /// Product of the Tamagawa numbers.
    pub fn tamagawa_product(&self) -> BigInt {
        self.local
            .iter()
            .map(|l| BigInt::from(l.tamagawa))
            .product()
    }
}

/// Runs Tate's algorithm at every prime dividing the discriminant.
pub fn global_reduction(e: &WeierstrassModel) -> Result<GlobalReduction> {
    let mut conductor = BigInt::one();
    let mut local = Vec::new();
    for p in factorize(e.discriminant())?.primes() {
        let lr = tate_local(e, p)?;
        if lr.kind != ReductionKind::Good {
            conductor *= num_traits::pow(p.clone(), lr.conductor_exponent as usize);
            local.push(lr);
        }
    }
    Ok(GlobalReduction { conductor, local })
}

/// The conductor of `e`.
pub fn conductor(e: &WeierstrassModel) -> Result<BigInt> {
    Ok(global_reduction(e)?.conductor)
}

/// `c_l` of the twist by `D` at an odd prime `l | D` where `e` has good
/// reduction: one plus the number of roots mod `l` of
/// `4x^3 + b2 x^2 + 2 b4 x + b6`.
pub fn twist_prime_tamagawa_odd(
    e: &WeierstrassModel,
    l: &BigInt,
    d: &FundamentalDiscriminant,
) -> Result<u32> {
    if !l.is_positive() || !is_prime(l.magnitude()) {
        return Err(Error::NotPrime(l.clone()));
    }
    if *l == BigInt::from(2) || !d.value().is_multiple_of(l) {
        return Err(Error::Precondition(alloc::format!(
            "{l} must be an odd prime dividing {d}"
        )));
    }
    if e.discriminant().is_multiple_of(l) {
        return Err(Error::BadReduction(l.clone()));
    }
    let inv = e.invariants();
    let f = [
        inv.b6.clone(),
        &inv.b4 * 2u32,
        inv.b2.clone(),
        BigInt::from(4),
    ];
    let roots = count_roots_mod_p(&f, l);
    let roots = u32::try_from(&roots).map_err(|_| Error::Invariant("root count".into()))?;
    Ok(1 + roots)
}

fn multiplicative(e: &WeierstrassModel, q: &BigInt) -> Result<LocalReduction> {
    let lr = tate_local(e, q)?;
    if !lr.kind.is_multiplicative() {
        return Err(Error::NotMultiplicative(q.clone()));
    }
    Ok(lr)
}

/// `2 - (v_q(Δ_min) mod 2)` at a prime of multiplicative reduction.
pub fn c_tilde(e: &WeierstrassModel, q: &BigInt) -> Result<u32> {
    let lr = multiplicative(e, q)?;
    Ok(2 - lr.disc_valuation % 2)
}

/// Tamagawa number at `q` over a quadratic field in which `q` is inert: the
/// reduction becomes split there, so it equals `v_q(Δ_min)`.
pub fn inert_base_change_tamagawa(e: &WeierstrassModel, q: &BigInt) -> Result<u32> {
    Ok(multiplicative(e, q)?.disc_valuation)
}
