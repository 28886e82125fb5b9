//! Exact integer arithmetic: factorization, valuations, Kronecker symbols
//! and fundamental discriminants.

mod factor;
mod kronecker;
mod polymod;

pub use factor::{factorize, is_prime, Factorization};
pub use kronecker::{kronecker, kronecker_i64};
pub use polymod::{count_roots_mod_p, quadratic_has_root};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Stand-in for the valuation of zero in internal routines.
pub(crate) const VAL_INF: u32 = u32::MAX;

/// `v_p(n)` with `v_p(0) = VAL_INF`. `p` is assumed prime.
pub(crate) fn val(n: &BigInt, p: &BigInt) -> u32 {
    if n.is_zero() {
        return VAL_INF;
    }
    if *p == BigInt::from(2) {
        return n.trailing_zeros().unwrap_or(0) as u32;
    }
    let mut k = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return k;
        }
        m = q;
        k += 1;
    }
}

/// The exponent of the prime `p` in the nonzero integer `n`.
pub fn valuation(n: &BigInt, p: &BigInt) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    if !p.is_positive() || !is_prime(p.magnitude()) {
        return Err(Error::NotPrime(p.clone()));
    }
    Ok(val(n, p))
}

/// Number of distinct prime divisors of `n >= 1`.
pub fn omega(n: &BigInt) -> Result<usize> {
    if !n.is_positive() {
        return Err(Error::Precondition(
            "omega needs a positive argument".into(),
        ));
    }
    Ok(factorize(n)?.factors().len())
}

/// The unique squarefree integer `s` (keeping the sign of `n`) with
/// `n / s` a perfect square.
pub fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    let f = factorize(n)?;
    let mut s = BigInt::from(f.sign());
    for (p, e) in f.factors() {
        if e % 2 == 1 {
            s *= p;
        }
    }
    Ok(s)
}

/// Whether `a/b` is the square of a nonzero rational.
pub fn is_rational_square(a: &BigInt, b: &BigInt) -> Result<bool> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Zero);
    }
    Ok(squarefree_part(&(a * b))?.is_one())
}

/// Whether `n` is (up to sign) a squarefree integer. Zero is not.
pub fn is_squarefree(n: &BigInt) -> bool {
    match factorize(n) {
        Ok(f) => f.is_squarefree(),
        Err(_) => false,
    }
}

/// A positive fundamental discriminant `D = 2^a m` with `m` odd and
/// squarefree, `a` in {0, 2, 3}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FundamentalDiscriminant {
    value: BigInt,
    odd_part: BigInt,
    two_exponent: u32,
}

impl FundamentalDiscriminant {
    pub fn new(d: &BigInt) -> Result<Self> {
        if !d.is_positive() {
            return Err(Error::NotFundamental(d.clone()));
        }
        let a = d.trailing_zeros().unwrap_or(0) as u32;
        let odd: BigInt = d >> a;
        if !is_fundamental_discriminant(d) {
            return Err(Error::NotFundamental(d.clone()));
        }
        Ok(Self {
            value: d.clone(),
            odd_part: odd,
            two_exponent: a,
        })
    }

    pub fn from_i64(d: i64) -> Result<Self> {
        Self::new(&BigInt::from(d))
    }

    /// The trivial discriminant 1.
    pub fn one() -> Self {
        Self {
            value: BigInt::one(),
            odd_part: BigInt::one(),
            two_exponent: 0,
        }
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn odd_part(&self) -> &BigInt {
        &self.odd_part
    }

    pub fn two_exponent(&self) -> u32 {
        self.two_exponent
    }

    pub fn is_trivial(&self) -> bool {
        self.value.is_one()
    }

    /// Primes dividing D, in increasing order.
    pub fn primes(&self) -> alloc::vec::Vec<BigInt> {
        factorize(&self.value)
            .expect("fundamental discriminants are nonzero")
            .primes()
            .cloned()
            .collect()
    }

    /// The quadratic character attached to D evaluated at `n`.
    pub fn chi(&self, n: &BigInt) -> i8 {
        kronecker(&self.value, n).expect("D is nonzero")
    }
}

impl core::fmt::Display for FundamentalDiscriminant {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        self.value.fmt(f)
    }
}

/// True iff `d` is 1 or the discriminant of a quadratic field.
pub fn is_fundamental_discriminant(d: &BigInt) -> bool {
    if d.is_one() {
        return true;
    }
    if d.is_zero() {
        return false;
    }
    let r4 = d.mod_floor(&BigInt::from(4)).to_u8().unwrap();
    match r4 {
        1 => is_squarefree(d),
        0 => {
            let m: BigInt = d / 4;
            let rm = m.mod_floor(&BigInt::from(4)).to_u8().unwrap();
            (rm == 2 || rm == 3) && is_squarefree(&m)
        }
        _ => false,
    }
}
