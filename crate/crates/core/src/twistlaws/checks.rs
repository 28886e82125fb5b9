use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::case3::{C2_PROFILE, C4_PROFILE};
use super::quantities::{c_hat, two_exponent, TwistData};
use super::setup::TwistSetup;
use crate::arith::{kronecker, val, FundamentalDiscriminant};
use crate::curves::{two_strongly_minimal, TwoAdicPattern, WeierstrassModel};
use crate::localred::{twist_prime_tamagawa_odd, Kodaira};
use crate::{BigRational, Error, Result};

/// Both sides of an identity between positive integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub holds: bool,
}

fn require_pair(setup: &TwistSetup) -> Result<&[TwistData]> {
    if !setup.is_pair() {
        return Err(Error::Precondition(
            "expected a pair of discriminants".into(),
        ));
    }
    setup.twists()
}

/// `ĉ_q(E) · c_q(E/F) = c_q(E^{D1}) · c_q(E^{D2})` at a prime `q | N-`, where
/// `c_q(E/F) = v_q(Δ)` is the Tamagawa number over the biquadratic field.
pub fn lemma32_check(setup: &TwistSetup, q: &BigInt) -> Result<IdentityCheck> {
    let twists = require_pair(setup)?;
    if !setup.n_minus().is_multiple_of(q) || setup.reduction().at(q).is_none() {
        return Err(Error::Precondition(alloc::format!(
            "{q} does not divide N-"
        )));
    }
    let lr = setup.reduction().at(q).expect("checked above");
    let lhs = BigInt::from(c_hat(setup, q)?) * lr.disc_valuation;
    let rhs = BigInt::from(twists[0].tamagawa_at(q)?) * twists[1].tamagawa_at(q)?;
    Ok(IdentityCheck {
        holds: lhs == rhs,
        lhs,
        rhs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareClassCheck {
    /// `∏_{l|N} c_l(E^{D1}) · ∏_{l|N} c_l(E^{D2})`.
    pub lhs: BigInt,
    /// `∏_{q|N-} ĉ_q(E) · c_q(E/F)`.
    pub rhs: BigInt,
    /// `lhs / rhs` is a rational square.
    pub holds: bool,
    /// Primes `l | N+` where the two twists have different `c_l`.
    pub n_plus_mismatches: Vec<BigInt>,
}

/// The inert-prime identity multiplied over `N-`, compared with the
/// Tamagawa product of both twists over all of `N`, modulo squares.
pub fn lemma33_check(setup: &TwistSetup) -> Result<SquareClassCheck> {
    let twists = require_pair(setup)?;
    let mut lhs = BigInt::one();
    let mut n_plus_mismatches = Vec::new();
    for l in setup.conductor_primes() {
        let (c1, c2) = (twists[0].tamagawa_at(l)?, twists[1].tamagawa_at(l)?);
        lhs *= c1 * c2;
        if !setup.n_minus().is_multiple_of(l) && c1 != c2 {
            n_plus_mismatches.push(l.clone());
        }
    }
    let mut rhs = BigInt::one();
    for q in setup.n_minus_primes() {
        let v = setup
            .reduction()
            .at(&q)
            .map(|lr| lr.disc_valuation)
            .unwrap_or(0);
        rhs *= c_hat(setup, &q)? * v;
    }
    let holds = crate::arith::is_rational_square(&lhs, &rhs)?;
    Ok(SquareClassCheck {
        lhs,
        rhs,
        holds,
        n_plus_mismatches,
    })
}

/// `b = Σ_{p | N-} v_p(Δ)`.
pub fn quadrec_exponent(setup: &TwistSetup) -> u32 {
    setup
        .n_minus_primes()
        .iter()
        .map(|p| val(setup.curve().discriminant(), p))
        .sum()
}

/// The closed form for `(Δ/m)`, `D = 2^a m`, under the modified Heegner
/// hypothesis, with `b = Σ_{p|N-} v_p(Δ)`.
pub fn quadrec_symbol(disc: &BigInt, d: &FundamentalDiscriminant, b: u32) -> Result<i8> {
    let sign = |k: u32| if k.is_multiple_of(2) { 1 } else { -1 };
    let a = d.two_exponent();
    if a == 0 {
        return Ok(sign(b));
    }
    if disc.is_even() {
        return Err(Error::Precondition(
            "an even D needs an odd discriminant".into(),
        ));
    }
    let r8 = disc
        .mod_floor(&BigInt::from(8))
        .to_u8()
        .expect("residue mod 8");
    if a == 2 {
        return Ok(if r8 % 4 == 1 { sign(b) } else { sign(b + 1) });
    }
    let m4 = d
        .odd_part()
        .mod_floor(&BigInt::from(4))
        .to_u8()
        .expect("residue mod 4");
    let flip = match (r8, m4) {
        (1, _) | (3, 3) | (7, 1) => false,
        (5, _) | (3, 1) | (7, 3) => true,
        _ => return Err(Error::Precondition("m must be odd".into())),
    };
    Ok(sign(b + flip as u32))
}

/// Tamagawa numbers of a twist at the odd primes of the discriminant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TamRecRelCheck {
    /// `∏_{l|m} c_l(E^D)`.
    pub product: BigInt,
    pub is_power_of_two: bool,
    pub is_square: bool,
    /// `(Δ/m)`.
    pub symbol: i8,
    /// Primes where root counting disagrees with Tate's algorithm.
    pub fast_path_mismatches: Vec<BigInt>,
    pub holds: bool,
}

/// Checks that `∏_{l|m} c_l(E^D)` is a power of two that is a square exactly
/// when `(Δ/m) = 1`, using precomputed twist data.
pub fn tamrecrel_check_with(e: &WeierstrassModel, twist: &TwistData) -> Result<TamRecRelCheck> {
    let d = &twist.discriminant;
    let mut product = BigInt::one();
    let mut fast_path_mismatches = Vec::new();
    for l in d.primes().into_iter().filter(|l| l.is_odd()) {
        let c = twist.tamagawa_at(&l)?;
        if twist_prime_tamagawa_odd(e, &l, d)? != c {
            fast_path_mismatches.push(l.clone());
        }
        product *= c;
    }
    let exponent = two_exponent(&BigRational::from_integer(product.clone()));
    let is_power_of_two = exponent.is_some();
    let is_square = exponent.is_some_and(|k| k % 2 == 0);
    let symbol = kronecker(e.discriminant(), d.odd_part())?;
    let holds = is_power_of_two && is_square == (symbol == 1) && fast_path_mismatches.is_empty();
    Ok(TamRecRelCheck {
        product,
        is_power_of_two,
        is_square,
        symbol,
        fast_path_mismatches,
        holds,
    })
}

/// `tamrecrel_check_with` on a freshly computed twist.
pub fn tamrecrel_check(
    e: &WeierstrassModel,
    d: &FundamentalDiscriminant,
) -> Result<TamRecRelCheck> {
    let twist = TwistData::compute(e, d, &[])?;
    tamrecrel_check_with(e, &twist)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwoAdicCase {
    /// `v2(D) = 2`.
    One,
    /// `v2(D) = 3`, `v2(c6) = 3`.
    Two,
    /// `v2(D) = 3`, `v2(c6) = 0`.
    Three,
}

/// Predicted and measured reduction of `E^D` at 2 for even `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoAdicCaseCheck {
    pub case: TwoAdicCase,
    pub pattern: TwoAdicPattern,
    /// The 2-strongly-minimal model the prediction is read from.
    pub model: WeierstrassModel,
    pub predicted_kodaira: Kodaira,
    pub predicted_tamagawa: u32,
    pub kodaira: Kodaira,
    pub tamagawa: u32,
    /// Case 3: whether `(Δ mod 8, m mod 4)` lies in the residue profile of
    /// the measured `c2`.
    pub residue_profile_agrees: Option<bool>,
    pub holds: bool,
}

fn mod_small(n: &BigInt, m: u32) -> u32 {
    n.mod_floor(&BigInt::from(m))
        .to_u32()
        .expect("small residue")
}

/// Compares Tate's algorithm at 2 on `E^D` with the tabulated types and
/// Tamagawa numbers. Returns `None` for odd `D`.
pub fn two_adic_case_check(
    e: &WeierstrassModel,
    twist: &TwistData,
) -> Result<Option<TwoAdicCaseCheck>> {
    let d = &twist.discriminant;
    if d.two_exponent() == 0 {
        return Ok(None);
    }
    let sm = two_strongly_minimal(e)?;
    let a = sm.model.coefficients();
    let case = match (d.two_exponent(), sm.pattern.c6_valuation()) {
        (2, _) => TwoAdicCase::One,
        (3, 3) => TwoAdicCase::Two,
        (3, 0) => TwoAdicCase::Three,
        _ => unreachable!("v2(D) in {{2, 3}} and v2(c6) in {{0, 3}}"),
    };
    let m = d.odd_part();
    let mut residue_profile_agrees = None;
    let (predicted_kodaira, predicted_tamagawa) = match case {
        TwoAdicCase::One => match sm.pattern {
            TwoAdicPattern::EvenA1 => (Kodaira::IIStar, 1),
            _ => (
                Kodaira::IStar(4),
                if matches!(mod_small(&a[4], 4), 1 | 2) {
                    2
                } else {
                    4
                },
            ),
        },
        TwoAdicCase::Two => (Kodaira::II, 1),
        TwoAdicCase::Three => {
            let [_, a2, a3, a4, a6] = a;
            let p = if a6.is_odd() {
                BigInt::from(4) + a2 * 16 + a4 * 8 + a6 * 4 - m * 2 - m * a6 * a6 * 2 - m * a6 * 4
            } else {
                a3 * a3 - m * a6 * a6 * 2 + a6 * 4
            };
            let c = match val(&p, &BigInt::from(2)) {
                4 => 2,
                v if v >= 5 => 4,
                v => {
                    return Err(Error::Invariant(alloc::format!(
                        "v2(P) = {v} below 4 for {}",
                        d
                    )))
                }
            };
            (Kodaira::IStar(8), c)
        }
    };
    let measured = twist.at(&BigInt::from(2))?;
    if case == TwoAdicCase::Three {
        let key = (mod_small(e.discriminant(), 8) as u8, mod_small(m, 4) as u8);
        let profile = if measured.tamagawa == 2 {
            &C2_PROFILE
        } else {
            &C4_PROFILE
        };
        residue_profile_agrees = Some(profile.contains(&key));
    }
    let holds = measured.kodaira == predicted_kodaira
        && measured.tamagawa == predicted_tamagawa
        && residue_profile_agrees.unwrap_or(true);
    Ok(Some(TwoAdicCaseCheck {
        case,
        pattern: sm.pattern,
        model: sm.model.clone(),
        predicted_kodaira,
        predicted_tamagawa,
        kodaira: measured.kodaira,
        tamagawa: measured.tamagawa,
        residue_profile_agrees,
        holds,
    }))
}
