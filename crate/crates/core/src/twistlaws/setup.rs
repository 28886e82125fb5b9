use alloc::vec::Vec;
use core::cell::OnceCell;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::TwistData;
use crate::arith::{factorize, kronecker, Factorization, FundamentalDiscriminant};
use crate::curves::{is_globally_minimal, WeierstrassModel};
use crate::localred::{global_reduction, GlobalReduction};
use crate::{Error, Result, SetupViolation};

/// A curve, a splitting `N = N+ N-` of its conductor, and one or two
/// fundamental discriminants satisfying the modified Heegner hypothesis.
#[derive(Clone, Debug)]
pub struct TwistSetup {
    curve: WeierstrassModel,
    reduction: GlobalReduction,
    conductor_factorization: Factorization,
    n_plus: BigInt,
    n_minus: BigInt,
    discriminants: Vec<FundamentalDiscriminant>,
    twists: OnceCell<Vec<TwistData>>,
}

impl TwistSetup {
    pub fn curve(&self) -> &WeierstrassModel {
        &self.curve
    }

    pub fn reduction(&self) -> &GlobalReduction {
        &self.reduction
    }

    pub fn conductor(&self) -> &BigInt {
        &self.reduction.conductor
    }

    pub fn conductor_factorization(&self) -> &Factorization {
        &self.conductor_factorization
    }

    pub fn n_plus(&self) -> &BigInt {
        &self.n_plus
    }

    pub fn n_minus(&self) -> &BigInt {
        &self.n_minus
    }

    /// The one or two discriminants, in the order given.
    pub fn discriminants(&self) -> &[FundamentalDiscriminant] {
        &self.discriminants
    }

    pub fn is_pair(&self) -> bool {
        self.discriminants.len() == 2
    }

    /// `D`, or `D1 D2` for a pair.
    pub fn combined_discriminant(&self) -> BigInt {
        self.discriminants
            .iter()
            .map(|d| d.value().clone())
            .product()
    }

    /// Primes dividing the conductor, in increasing order.
    pub fn conductor_primes(&self) -> impl Iterator<Item = &BigInt> + '_ {
        self.conductor_factorization.primes()
    }

    pub fn n_plus_primes(&self) -> Vec<BigInt> {
        self.conductor_primes()
            .filter(|p| self.n_plus.is_multiple_of(p))
            .cloned()
            .collect()
    }

    pub fn n_minus_primes(&self) -> Vec<BigInt> {
        self.conductor_primes()
            .filter(|p| self.n_minus.is_multiple_of(p))
            .cloned()
            .collect()
    }

    /// Twist data for each discriminant, computed on first use.
    pub fn twists(&self) -> Result<&[TwistData]> {
        if let Some(t) = self.twists.get() {
            return Ok(t);
        }
        let primes: Vec<BigInt> = self.conductor_primes().cloned().collect();
        let data = self
            .discriminants
            .iter()
            .map(|d| TwistData::compute(&self.curve, d, &primes))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.twists.get_or_init(|| data))
    }

    /// Supplies precomputed twist data (one entry per discriminant, same order).
    pub fn with_twists(self, twists: Vec<TwistData>) -> Result<Self> {
        let ok = twists.len() == self.discriminants.len()
            && twists
                .iter()
                .zip(&self.discriminants)
                .all(|(t, d)| &t.discriminant == d);
        if !ok {
            return Err(Error::Precondition(
                "twist data does not match the discriminants".into(),
            ));
        }
        let cell = OnceCell::new();
        let _ = cell.set(twists);
        Ok(Self {
            twists: cell,
            ..self
        })
    }
}

fn parse_discriminants(
    ds: &[BigInt],
    violations: &mut Vec<SetupViolation>,
) -> Result<Vec<FundamentalDiscriminant>> {
    if ds.is_empty() || ds.len() > 2 {
        return Err(Error::Precondition(
            "a setup takes one or two discriminants".into(),
        ));
    }
    let mut out = Vec::new();
    for d in ds {
        match FundamentalDiscriminant::new(d) {
            Ok(fd) => out.push(fd),
            Err(_) => violations.push(SetupViolation::NotFundamental(d.clone())),
        }
    }
    Ok(out)
}

/// Checks every hypothesis on `(E, N+, N-, D)` or `(E, N+, N-, D1, D2)` and
/// reports all violated clauses together.
pub fn validate_setup(
    curve: &WeierstrassModel,
    n_plus: &BigInt,
    n_minus: &BigInt,
    discriminants: &[BigInt],
) -> Result<TwistSetup> {
    let mut violations = Vec::new();
    let discs = parse_discriminants(discriminants, &mut violations)?;
    if !n_plus.is_positive() || !n_minus.is_positive() {
        return Err(Error::Precondition("N+ and N- must be positive".into()));
    }
    if !is_globally_minimal(curve)? {
        violations.push(SetupViolation::CurveNotMinimal);
    }
    let reduction = global_reduction(curve)?;
    let conductor = reduction.conductor.clone();
    let conductor_factorization = factorize(&conductor)?;

    let product = n_plus * n_minus;
    if product != conductor {
        violations.push(SetupViolation::ConductorMismatch {
            conductor: conductor.clone(),
            product,
        });
    }
    if !n_plus.gcd(n_minus).is_one() {
        violations.push(SetupViolation::FactorsNotCoprime);
    }
    let n_minus_fact = factorize(n_minus)?;
    if !n_minus_fact.is_squarefree() {
        violations.push(SetupViolation::NMinusNotSquarefree);
    }
    for q in n_minus_fact.primes() {
        let multiplicative = reduction
            .at(q)
            .is_some_and(|lr| lr.kind.is_multiplicative());
        if !multiplicative {
            violations.push(SetupViolation::NMinusNotMultiplicative(q.clone()));
        }
    }

    for d in &discs {
        if !d.value().gcd(&conductor).is_one() {
            violations.push(SetupViolation::DiscriminantNotCoprimeToConductor(
                d.value().clone(),
            ));
        }
    }
    if discs.len() == 2 {
        if !discs[0].value().gcd(discs[1].value()).is_one() {
            violations.push(SetupViolation::DiscriminantsNotCoprime);
        }
        if discs[0].is_trivial() && discs[1].is_trivial() {
            violations.push(SetupViolation::BothTrivial);
        }
    }

    if discs.len() == discriminants.len() {
        let d: BigInt = discs.iter().map(|d| d.value().clone()).product();
        for l in factorize(n_plus)?.primes() {
            if kronecker(&d, l)? == -1 {
                violations.push(SetupViolation::NotSplit(l.clone()));
            }
        }
        for q in n_minus_fact.primes() {
            if kronecker(&d, q)? == 1 {
                violations.push(SetupViolation::NotInert(q.clone()));
            }
        }
        if discs.len() == 2 {
            for (l, e) in conductor_factorization.factors() {
                let inert_somewhere = discs.iter().any(|d| d.chi(l) == -1);
                if inert_somewhere && *e > 1 {
                    violations.push(SetupViolation::ConditionStar(l.clone()));
                }
            }
        }
    }

    if !violations.is_empty() {
        return Err(Error::InvalidSetup(violations));
    }
    Ok(TwistSetup {
        curve: curve.clone(),
        reduction,
        conductor_factorization,
        n_plus: n_plus.clone(),
        n_minus: n_minus.clone(),
        discriminants: discs,
        twists: OnceCell::new(),
    })
}

/// The splitting of `N` forced by the discriminant(s): `N-` collects the
/// primes inert for `D` (or `D1 D2`), `N+` everything else.
pub fn canonical_split(
    curve: &WeierstrassModel,
    discriminants: &[BigInt],
) -> Result<(BigInt, BigInt)> {
    let conductor = global_reduction(curve)?.conductor;
    let d: BigInt = discriminants.iter().product();
    let mut n_plus = BigInt::one();
    let mut n_minus = BigInt::one();
    for (l, e) in factorize(&conductor)?.factors() {
        let pe = num_traits::pow(l.clone(), *e as usize);
        if kronecker(&d, l)? == -1 {
            n_minus *= pe;
        } else {
            n_plus *= pe;
        }
    }
    Ok((n_plus, n_minus))
}

/// `validate_setup` with `N+` and `N-` derived by `canonical_split`.
pub fn canonical_setup(curve: &WeierstrassModel, discriminants: &[BigInt]) -> Result<TwistSetup> {
    let (n_plus, n_minus) = canonical_split(curve, discriminants)?;
    validate_setup(curve, &n_plus, &n_minus, discriminants)
}

/// One half (`i = 1` or `2`) of the splitting of `N` by the characters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecompositionSide {
    /// `prod l^{n_l}` over `l | N+` with `chi_i(l) = 1`.
    pub plus_i: BigInt,
    /// `prod l` over `l | N+` with `chi_i(l) = -1`.
    pub minus_i: BigInt,
    /// `prod l` over `l | N-` with `chi_i(l) = 1`.
    pub plus_ii: BigInt,
    /// `prod l` over `l | N-` with `chi_i(l) = -1`.
    pub minus_ii: BigInt,
}

impl DecompositionSide {
    /// `N_{i,+}`.
    pub fn plus(&self) -> BigInt {
        &self.plus_i * &self.plus_ii
    }

    /// `N_{i,-}`.
    pub fn minus(&self) -> BigInt {
        &self.minus_i * &self.minus_ii
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub first: DecompositionSide,
    pub second: DecompositionSide,
}

fn side(setup: &TwistSetup, d: &FundamentalDiscriminant) -> DecompositionSide {
    let mut s = DecompositionSide {
        plus_i: BigInt::one(),
        minus_i: BigInt::one(),
        plus_ii: BigInt::one(),
        minus_ii: BigInt::one(),
    };
    for (l, e) in setup.conductor_factorization.factors() {
        let chi = d.chi(l);
        if setup.n_minus.is_multiple_of(l) {
            if chi == 1 {
                s.plus_ii *= l;
            } else {
                s.minus_ii *= l;
            }
        } else if chi == 1 {
            s.plus_i *= num_traits::pow(l.clone(), *e as usize);
        } else {
            s.minus_i *= l;
        }
    }
    s
}

/// The `N^{I/II}_{i,±}` splitting of a pair setup, with its identities checked.
pub fn decompose(setup: &TwistSetup) -> Result<Decomposition> {
    if !setup.is_pair() {
        return Err(Error::Precondition(
            "decompose needs a pair of discriminants".into(),
        ));
    }
    let dec = Decomposition {
        first: side(setup, &setup.discriminants[0]),
        second: side(setup, &setup.discriminants[1]),
    };
    let coprime = |xs: [&BigInt; 4]| (0..4).all(|i| (i + 1..4).all(|j| xs[i].gcd(xs[j]).is_one()));
    let n = setup.conductor();
    let (a, b) = (&dec.first, &dec.second);
    let checks = [
        (
            "side 1 pairwise coprime",
            coprime([&a.plus_i, &a.minus_i, &a.plus_ii, &a.minus_ii]),
        ),
        (
            "side 2 pairwise coprime",
            coprime([&b.plus_i, &b.minus_i, &b.plus_ii, &b.minus_ii]),
        ),
        ("N^I_+ agree", a.plus_i == b.plus_i),
        ("N^I_- agree", a.minus_i == b.minus_i),
        ("N^II_{1,+} = N^II_{2,-}", a.plus_ii == b.minus_ii),
        ("N^II_{1,-} = N^II_{2,+}", a.minus_ii == b.plus_ii),
        ("N = N_{1,+} N_{1,-}", &(a.plus() * a.minus()) == n),
        ("N = N_{2,+} N_{2,-}", &(b.plus() * b.minus()) == n),
        (
            "N- = N^II_{1,-} N^II_{2,-}",
            &a.minus_ii * &b.minus_ii == setup.n_minus,
        ),
    ];
    if let Some((what, _)) = checks.iter().find(|(_, ok)| !ok) {
        return Err(Error::Invariant(alloc::format!(
            "decomposition identity failed: {what}"
        )));
    }
    Ok(dec)
}
