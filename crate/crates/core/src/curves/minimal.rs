use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::model::exact_div;
use super::{IsoMap, RationalModel, WeierstrassModel};
use crate::arith::{factorize, val};
use crate::{Error, Result};

/// A global minimal model together with the map that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalModelResult {
    pub minimal: WeierstrassModel,
    /// Carries the input model onto `minimal`.
    pub map: IsoMap,
    /// `|u|` of `map`; `Δ_minimal = u^-12 Δ_input`.
    pub u_value: BigRational,
}

/// Global minimal model of an integral curve by the Laska-Kraus-Connell
/// procedure, normalized so that a1, a3 lie in {0, 1} and a2 in {-1, 0, 1}.
pub fn minimal_model(e: &WeierstrassModel) -> Result<MinimalModelResult> {
    let inv = e.invariants();
    let (c4, c6, disc) = (&inv.c4, &inv.c6, &inv.disc);
    let g = (c6 * c6).gcd(disc);
    let mut u = BigInt::one();
    for (p, _) in factorize(&g)?.factors() {
        let vg = val(&g, p);
        if vg < 12 {
            continue;
        }
        let mut d = vg / 12;
        if *p == BigInt::from(2) {
            let a = c4 >> (4 * d);
            let b = c6 >> (6 * d);
            let b_mod4 = b.mod_floor(&BigInt::from(4));
            let a_mod16 = a.mod_floor(&BigInt::from(16));
            let b_mod32 = b.mod_floor(&BigInt::from(32)).to_u8().unwrap();
            let ok =
                b_mod4 == BigInt::from(3) || (a_mod16.is_zero() && (b_mod32 == 0 || b_mod32 == 8));
            if !ok {
                d -= 1;
            }
        } else if *p == BigInt::from(3) && val(c6, p) == 6 * d + 2 {
            d -= 1;
        }
        u *= num_traits::pow(p.clone(), d as usize);
    }
    let u2 = &u * &u;
    let u4 = &u2 * &u2;
    let c4m = exact_div(c4, &u4)?;
    let c6m = exact_div(c6, &(&u4 * &u2))?;

    let twelve = BigInt::from(12);
    let mut b2 = (-&c6m).mod_floor(&twelve);
    if b2 > BigInt::from(6) {
        b2 -= &twelve;
    }
    let b4 = exact_div(&(&b2 * &b2 - &c4m), &BigInt::from(24))?;
    let b6 = exact_div(
        &(BigInt::from(36) * &b2 * &b4 - &b2 * &b2 * &b2 - &c6m),
        &BigInt::from(216),
    )?;
    let two = BigInt::from(2);
    let a1 = b2.mod_floor(&two);
    let a3 = b6.mod_floor(&two);
    let a2 = exact_div(&(&b2 - &a1), &BigInt::from(4))?;
    let a4 = exact_div(&(&b4 - &a1 * &a3), &two)?;
    let a6 = exact_div(&(&b6 - &a3), &BigInt::from(4))?;
    let minimal = WeierstrassModel::new(a1, a2, a3, a4, a6)?;

    let map = recover_map(
        &e.to_rational(),
        &minimal.to_rational(),
        &BigRational::from_integer(u.clone()),
    )?;
    Ok(MinimalModelResult {
        minimal,
        map,
        u_value: BigRational::from_integer(u),
    })
}

/// Minimal model of a curve given over Q. The input is first scaled to an
/// integral model with the smallest possible integer `k` (`u = 1/k`).
pub fn minimal_model_rational(e: &RationalModel) -> Result<MinimalModelResult> {
    let scale = integral_scaling(e);
    let integral = e.apply_iso(&scale).to_integral()?;
    let inner = minimal_model(&integral)?;
    let map = scale.then(&inner.map);
    let u_value = map.abs_u();
    let check = e.apply_iso(&map);
    if check != inner.minimal.to_rational() {
        return Err(Error::Invariant(
            "composed map does not reach the minimal model".into(),
        ));
    }
    Ok(MinimalModelResult {
        minimal: inner.minimal,
        map,
        u_value,
    })
}

/// `[1/k, 0, 0, 0]` with `k` the least positive integer making `k^i a_i` integral.
pub(crate) fn integral_scaling(e: &RationalModel) -> IsoMap {
    let weights = [1u32, 2, 3, 4, 6];
    let mut den_lcm = BigInt::one();
    for c in e.coefficients() {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let mut k = BigInt::one();
    if !den_lcm.is_one() {
        for (p, _) in factorize(&den_lcm)
            .expect("denominators are nonzero")
            .factors()
        {
            let need = e
                .coefficients()
                .iter()
                .zip(weights)
                .map(|(c, w)| val(c.denom(), p).div_ceil(w))
                .max()
                .unwrap_or(0);
            k *= num_traits::pow(p.clone(), need as usize);
        }
    }
    IsoMap::scaling(BigRational::new(BigInt::one(), k)).expect("k is nonzero")
}

/// Finds `[u, r, s, w]` with the given `u` carrying `from` onto `to`.
fn recover_map(from: &RationalModel, to: &RationalModel, u: &BigRational) -> Result<IsoMap> {
    let [a1, a2, a3, _, _] = from.coefficients();
    let [b1, b2, b3, _, _] = to.coefficients();
    let two = BigRational::from_integer(2.into());
    let three = BigRational::from_integer(3.into());
    let s = (u * b1 - a1) / &two;
    let r = (u * u * b2 - a2 + &s * a1 + &s * &s) / &three;
    let w = (u * u * u * b3 - a3 - &r * a1) / &two;
    let map = IsoMap::new(u.clone(), r, s, w)?;
    if from.apply_iso(&map) != *to {
        return Err(Error::Invariant(
            "models are not isomorphic with the given scaling".into(),
        ));
    }
    Ok(map)
}

/// Whether the integral model is minimal at every prime.
pub fn is_globally_minimal(e: &WeierstrassModel) -> Result<bool> {
    Ok(minimal_model(e)?.u_value.is_one())
}

impl MinimalModelResult {
    /// `u_value` as an integer, when it is one.
    pub fn u_integer(&self) -> Option<BigInt> {
        self.u_value.is_integer().then(|| self.u_value.to_integer())
    }

    pub fn u_is_positive(&self) -> bool {
        self.u_value.is_positive()
    }
}
