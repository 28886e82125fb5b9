use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::minimal::integral_scaling;
use super::{RationalModel, WeierstrassModel};
use crate::{Error, Result};

/// The explicit quadratic twist of `e` by `d` over Q:
/// `[a1, a2 d + a1^2 (d-1)/4, a3, a4 d^2 + a1 a3 (d^2-1)/2, a6 d^3 + a3^2 (d^3-1)/4]`.
pub fn quadratic_twist_rational(e: &WeierstrassModel, d: &BigInt) -> Result<RationalModel> {
    if d.is_zero() {
        return Err(Error::ZeroTwist);
    }
    let q = |n: &BigInt| BigRational::from_integer(n.clone());
    let [a1, a2, a3, a4, a6] = e.coefficients().clone().map(BigRational::from_integer);
    let d = q(d);
    let one = BigRational::one();
    let d2 = &d * &d;
    let d3 = &d2 * &d;
    let frac = |n: i64| BigRational::new(BigInt::one(), BigInt::from(n));
    let n2 = &a2 * &d + &a1 * &a1 * (&d - &one) * frac(4);
    let n4 = &a4 * &d2 + &a1 * &a3 * (&d2 - &one) * frac(2);
    let n6 = &a6 * &d3 + &a3 * &a3 * (&d3 - &one) * frac(4);
    Ok(RationalModel::new([a1, n2, a3, n4, n6]))
}

/// An integral model of the quadratic twist by `d`: the explicit model,
/// rescaled by `u = 1/2` when its coefficients are not integers.
/// The result is not minimized.
pub fn quadratic_twist(e: &WeierstrassModel, d: &BigInt) -> Result<WeierstrassModel> {
    let model = quadratic_twist_rational(e, d)?;
    let scale = integral_scaling(&model);
    model.apply_iso(&scale).to_integral()
}
