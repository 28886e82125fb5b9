use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::setup::{decompose, validate_setup, TwistSetup};
use crate::arith::{val, FundamentalDiscriminant};
use crate::curves::{
    minimal_model_rational, quadratic_twist_rational, MinimalModelResult, RationalModel,
    WeierstrassModel,
};
use crate::localred::{tate_local, LocalReduction};
use crate::{Error, Result};

/// A quadratic twist together with its minimal model and local data at the
/// primes of `N D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistData {
    pub discriminant: FundamentalDiscriminant,
    /// The explicit rational model of `E^D`.
    pub model: RationalModel,
    pub minimal: MinimalModelResult,
    /// Tate's algorithm on the minimal model, one entry per prime of `N D`,
    /// in increasing order.
    pub local: Vec<LocalReduction>,
}

impl TwistData {
    /// Twists `e` by `d` and runs Tate at the given primes and at the primes of `d`.
    pub fn compute(
        e: &WeierstrassModel,
        d: &FundamentalDiscriminant,
        primes: &[BigInt],
    ) -> Result<Self> {
        let model = quadratic_twist_rational(e, d.value())?;
        let minimal = minimal_model_rational(&model)?;
        let mut ps: Vec<BigInt> = primes.iter().cloned().chain(d.primes()).collect();
        ps.sort();
        ps.dedup();
        let local = ps
            .iter()
            .map(|p| tate_local(&minimal.minimal, p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            discriminant: d.clone(),
            model,
            minimal,
            local,
        })
    }

    /// `|u|` of the map from the explicit twist model to the minimal model.
    pub fn u(&self) -> BigRational {
        self.minimal.u_value.abs()
    }

    pub fn at(&self, l: &BigInt) -> Result<&LocalReduction> {
        self.local.iter().find(|lr| &lr.prime == l).ok_or_else(|| {
            Error::Precondition(alloc::format!("no local data for the twist at {l}"))
        })
    }

    pub fn tamagawa_at(&self, l: &BigInt) -> Result<u32> {
        Ok(self.at(l)?.tamagawa)
    }
}

/// The closed form for `u_D`: 2 exactly when `v2(D) = 3` and `v2(c6) = 3`.
pub fn u_of_discriminant(e: &WeierstrassModel, d: &FundamentalDiscriminant) -> Result<u32> {
    if !d.value().gcd(e.discriminant()).is_one() {
        return Err(Error::Precondition(alloc::format!(
            "{d} is not coprime to the discriminant"
        )));
    }
    match d.two_exponent() {
        0 | 2 => Ok(1),
        3 => match val(e.c6(), &BigInt::from(2)) {
            0 => Ok(1),
            3 => Ok(2),
            v => Err(Error::Invariant(alloc::format!(
                "v2(c6) = {v} on a minimal model good at 2"
            ))),
        },
        _ => unreachable!("fundamental discriminants have v2 in {{0, 2, 3}}"),
    }
}

/// The factors entering a power-of-two quantity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantityTerms {
    /// `(D, u_D)` for each discriminant.
    pub u: Vec<(BigInt, BigRational)>,
    pub omega_n_minus: usize,
    /// `(D, l, c_l(E^D))` for every prime `l | D`.
    pub twist_tamagawa: Vec<(BigInt, BigInt, u32)>,
    /// `(q, ĉ_q(E))` for every prime `q | N-`.
    pub c_hat: Vec<(BigInt, u32)>,
}

/// A rational quantity that the theory predicts to be an even power of two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentVerdict {
    pub quantity: BigRational,
    /// `k` with `quantity = 2^k`, when there is one.
    pub exponent: Option<i64>,
    pub is_power_of_two: bool,
    pub is_even_exponent: bool,
    pub terms: QuantityTerms,
}

impl ExponentVerdict {
    fn from_terms(terms: QuantityTerms) -> Self {
        let mut q = BigRational::new(BigInt::one(), BigInt::one() << terms.omega_n_minus);
        for (_, u) in &terms.u {
            q *= u;
        }
        for (_, _, c) in &terms.twist_tamagawa {
            q *= BigInt::from(*c);
        }
        for (_, c) in &terms.c_hat {
            q *= BigInt::from(*c);
        }
        let exponent = two_exponent(&q);
        Self {
            quantity: q,
            exponent,
            is_power_of_two: exponent.is_some(),
            is_even_exponent: exponent.is_some_and(|k| k % 2 == 0),
            terms,
        }
    }
}

fn power_of_two_log(n: &BigInt) -> Option<u64> {
    let k = n.trailing_zeros()?;
    (n.is_positive() && (n >> k).is_one()).then_some(k)
}

/// `k` with `q = 2^k`, or `None`.
pub(crate) fn two_exponent(q: &BigRational) -> Option<i64> {
    let a = power_of_two_log(q.numer())?;
    let b = power_of_two_log(q.denom())?;
    Some(a as i64 - b as i64)
}

/// `ĉ_q` from the curve's own local data.
pub(crate) fn c_hat(setup: &TwistSetup, q: &BigInt) -> Result<u32> {
    let lr = setup
        .reduction()
        .at(q)
        .ok_or_else(|| Error::NotMultiplicative(q.clone()))?;
    if !lr.kind.is_multiplicative() {
        return Err(Error::NotMultiplicative(q.clone()));
    }
    Ok(2 - lr.disc_valuation % 2)
}

fn terms(setup: &TwistSetup) -> Result<QuantityTerms> {
    let twists = setup.twists()?;
    let mut u = Vec::new();
    let mut twist_tamagawa = Vec::new();
    for t in twists {
        let d = t.discriminant.value().clone();
        u.push((d.clone(), t.u()));
        for l in t.discriminant.primes() {
            let c = t.tamagawa_at(&l)?;
            twist_tamagawa.push((d.clone(), l, c));
        }
    }
    let n_minus = setup.n_minus_primes();
    let c_hat = n_minus
        .iter()
        .map(|q| Ok((q.clone(), c_hat(setup, q)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(QuantityTerms {
        u,
        omega_n_minus: n_minus.len(),
        twist_tamagawa,
        c_hat,
    })
}

/// `u_D / 2^ω(N-) · ∏_{l|D} c_l(E^D) · ∏_{q|N-} ĉ_q(E)` for a single discriminant.
pub fn theorem13_quantity(setup: &TwistSetup) -> Result<ExponentVerdict> {
    if setup.is_pair() {
        return Err(Error::Precondition("expected a single discriminant".into()));
    }
    Ok(ExponentVerdict::from_terms(terms(setup)?))
}

/// The pair quantity together with the bookkeeping that reduces it to two
/// single-discriminant quantities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairVerdict {
    pub verdict: ExponentVerdict,
    /// The single-discriminant quantity of `D_i` with respect to `(N_{i,+}, N_{i,-})`.
    pub partials: [ExponentVerdict; 2],
    /// `ω(N_{1,-}) + ω(N_{2,-}) ≡ ω(N-) mod 2`.
    pub omega_parity_holds: bool,
    /// `∏_{q|N_{1,-}} ĉ_q · ∏_{q|N_{2,-}} ĉ_q / ∏_{q|N-} ĉ_q`, as a power of two.
    pub c_hat_ratio_exponent: Option<i64>,
    pub c_hat_ratio_holds: bool,
    /// The pair quantity over the product of the partials is an even power of two.
    pub matches_partials: bool,
}

impl PairVerdict {
    pub fn holds(&self) -> bool {
        self.verdict.is_even_exponent
            && self.partials.iter().all(|p| p.is_even_exponent)
            && self.omega_parity_holds
            && self.c_hat_ratio_holds
            && self.matches_partials
    }
}

fn c_hat_product(setup: &TwistSetup, n: &BigInt) -> Result<BigInt> {
    let mut prod = BigInt::one();
    for q in setup.conductor_primes().filter(|q| n.is_multiple_of(q)) {
        prod *= c_hat(setup, q)?;
    }
    Ok(prod)
}

/// `u_{D1} u_{D2} / 2^ω(N-) · ∏_{l|D1} c_l(E^{D1}) · ∏_{l|D2} c_l(E^{D2}) · ∏_{q|N-} ĉ_q(E)`.
pub fn theorem31_quantity(setup: &TwistSetup) -> Result<PairVerdict> {
    let dec = decompose(setup)?;
    let verdict = ExponentVerdict::from_terms(terms(setup)?);
    let twists = setup.twists()?;
    let sides = [&dec.first, &dec.second];

    let mut partials = Vec::with_capacity(2);
    for (side, t) in sides.iter().zip(twists) {
        let single = validate_setup(
            setup.curve(),
            &side.plus(),
            &side.minus(),
            &[t.discriminant.value().clone()],
        )
        .map_err(|e| {
            Error::Invariant(alloc::format!(
                "partial setup for {} rejected: {e}",
                t.discriminant
            ))
        })?
        .with_twists(alloc::vec![t.clone()])?;
        partials.push(theorem13_quantity(&single)?);
    }
    let partials: [ExponentVerdict; 2] = partials
        .try_into()
        .map_err(|_| Error::Invariant("two partials".into()))?;

    let omega = |n: &BigInt| {
        setup
            .conductor_primes()
            .filter(|q| n.is_multiple_of(q))
            .count()
    };
    let omega_parity_holds =
        (omega(&dec.first.minus()) + omega(&dec.second.minus())) % 2 == omega(setup.n_minus()) % 2;

    let lhs =
        c_hat_product(setup, &dec.first.minus())? * c_hat_product(setup, &dec.second.minus())?;
    let rhs = c_hat_product(setup, setup.n_minus())?;
    let c_hat_ratio_exponent = two_exponent(&BigRational::new(lhs, rhs));
    let c_hat_ratio_holds = c_hat_ratio_exponent.is_some_and(|k| k % 2 == 0);

    let denom = &partials[0].quantity * &partials[1].quantity;
    let matches_partials =
        !denom.is_zero() && two_exponent(&(&verdict.quantity / denom)).is_some_and(|k| k % 2 == 0);

    Ok(PairVerdict {
        verdict,
        partials,
        omega_parity_holds,
        c_hat_ratio_exponent,
        c_hat_ratio_holds,
        matches_partials,
    })
}
