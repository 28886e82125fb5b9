use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// `(2/n)` for odd n, indexed by n mod 8.
const TAB2: [i8; 8] = [0, 1, 0, -1, 0, -1, 0, 1];

fn mod8(n: &BigInt) -> usize {
    n.mod_floor(&BigInt::from(8)).to_usize().unwrap()
}

/// The Kronecker symbol `(a/n)`, defined for every pair except `(0, 0)`.
///
/// Follows the usual extension of the Jacobi symbol: `(a/2)` is 0 for even
/// `a`, +1 for `a = ±1 mod 8` and -1 for `a = ±3 mod 8`, and
/// `(a/-1)` is the sign of `a`.
pub fn kronecker(a: &BigInt, n: &BigInt) -> Result<i8> {
    if a.is_zero() && n.is_zero() {
        return Err(Error::KroneckerUndefined);
    }
    if n.is_zero() {
        return Ok(if a.abs().is_one() { 1 } else { 0 });
    }
    if a.is_even() && n.is_even() {
        return Ok(0);
    }
    let mut k: i8 = 1;
    let v = n.trailing_zeros().unwrap_or(0);
    let mut b: BigInt = n >> v;
    if v % 2 == 1 {
        k = TAB2[mod8(a)];
    }
    if b.is_negative() {
        b = -b;
        if a.is_negative() {
            k = -k;
        }
    }
    // b is now odd and positive; reduce to the Jacobi symbol.
    let mut a = a.mod_floor(&b);
    while !a.is_zero() {
        let v = a.trailing_zeros().unwrap_or(0);
        a >>= v;
        if v % 2 == 1 {
            k *= TAB2[mod8(&b)];
        }
        if mod8(&a) & mod8(&b) & 2 != 0 {
            k = -k;
        }
        let r = a;
        a = b.mod_floor(&r);
        b = r;
    }
    Ok(if b.is_one() { k } else { 0 })
}

/// Convenience wrapper for small arguments.
pub fn kronecker_i64(a: i64, n: i64) -> Result<i8> {
    kronecker(&BigInt::from(a), &BigInt::from(n))
}
