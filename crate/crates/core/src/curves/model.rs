use alloc::string::ToString;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, Zero};

use crate::{Error, Result};

/// The b, c and discriminant invariants of a Weierstrass equation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Invariants<T> {
    pub b2: T,
    pub b4: T,
    pub b6: T,
    pub b8: T,
    pub c4: T,
    pub c6: T,
    pub disc: T,
}

impl<T> Invariants<T>
where
    T: Clone + Num + FromPrimitive,
{
    pub fn from_coefficients(a1: &T, a2: &T, a3: &T, a4: &T, a6: &T) -> Self {
        let k = |n: i64| T::from_i64(n).unwrap();
        let b2 = a1.clone() * a1.clone() + k(4) * a2.clone();
        let b4 = k(2) * a4.clone() + a1.clone() * a3.clone();
        let b6 = a3.clone() * a3.clone() + k(4) * a6.clone();
        let b8 = a1.clone() * a1.clone() * a6.clone() + k(4) * a2.clone() * a6.clone()
            - a1.clone() * a3.clone() * a4.clone()
            + a2.clone() * a3.clone() * a3.clone()
            - a4.clone() * a4.clone();
        let c4 = b2.clone() * b2.clone() - k(24) * b4.clone();
        let c6 = k(36) * b2.clone() * b4.clone()
            - b2.clone() * b2.clone() * b2.clone()
            - k(216) * b6.clone();
        let disc = k(9) * b2.clone() * b4.clone() * b6.clone()
            - b2.clone() * b2.clone() * b8.clone()
            - k(8) * b4.clone() * b4.clone() * b4.clone()
            - k(27) * b6.clone() * b6.clone();
        Self {
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            disc,
        }
    }
}

/// An integral Weierstrass equation `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`
/// with nonzero discriminant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeierstrassModel {
    a: [BigInt; 5],
    inv: Invariants<BigInt>,
}

impl WeierstrassModel {
    pub fn new(a1: BigInt, a2: BigInt, a3: BigInt, a4: BigInt, a6: BigInt) -> Result<Self> {
        let inv = Invariants::from_coefficients(&a1, &a2, &a3, &a4, &a6);
        if inv.disc.is_zero() {
            return Err(Error::Singular);
        }
        Ok(Self {
            a: [a1, a2, a3, a4, a6],
            inv,
        })
    }

    pub fn from_i64s(a: [i64; 5]) -> Result<Self> {
        let [a1, a2, a3, a4, a6] = a.map(BigInt::from);
        Self::new(a1, a2, a3, a4, a6)
    }

    pub fn from_array(a: [BigInt; 5]) -> Result<Self> {
        let [a1, a2, a3, a4, a6] = a;
        Self::new(a1, a2, a3, a4, a6)
    }

    /// Coefficients in the order a1, a2, a3, a4, a6.
    pub fn coefficients(&self) -> &[BigInt; 5] {
        &self.a
    }

    pub fn a1(&self) -> &BigInt {
        &self.a[0]
    }
    pub fn a2(&self) -> &BigInt {
        &self.a[1]
    }
    pub fn a3(&self) -> &BigInt {
        &self.a[2]
    }
    pub fn a4(&self) -> &BigInt {
        &self.a[3]
    }
    pub fn a6(&self) -> &BigInt {
        &self.a[4]
    }

    pub fn invariants(&self) -> &Invariants<BigInt> {
        &self.inv
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.inv.disc
    }

    pub fn c4(&self) -> &BigInt {
        &self.inv.c4
    }

    pub fn c6(&self) -> &BigInt {
        &self.inv.c6
    }

    pub fn j_invariant(&self) -> BigRational {
        let c4 = &self.inv.c4;
        BigRational::new(c4 * c4 * c4, self.inv.disc.clone())
    }

    pub fn to_rational(&self) -> RationalModel {
        RationalModel {
            a: self.a.clone().map(BigRational::from_integer),
        }
    }

    pub fn apply_iso(&self, map: &IsoMap) -> RationalModel {
        self.to_rational().apply_iso(map)
    }
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4, a6] = &self.a;
        write!(f, "[{a1},{a2},{a3},{a4},{a6}]")
    }
}

/// Parses `a1,a2,a3,a4,a6`, optionally wrapped in square brackets.
impl FromStr for WeierstrassModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts: alloc::vec::Vec<&str> = body.split(',').map(str::trim).collect();
        if parts.len() != 5 {
            return Err(Error::Precondition(
                "expected five comma-separated coefficients".to_string(),
            ));
        }
        let mut a: [BigInt; 5] = Default::default();
        for (slot, part) in a.iter_mut().zip(&parts) {
            *slot = part
                .parse()
                .map_err(|_| Error::Precondition(alloc::format!("not an integer: {part:?}")))?;
        }
        Self::from_array(a)
    }
}

/// A Weierstrass equation over Q. Singular equations are allowed here.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalModel {
    a: [BigRational; 5],
}

impl RationalModel {
    pub fn new(a: [BigRational; 5]) -> Self {
        Self { a }
    }

    pub fn coefficients(&self) -> &[BigRational; 5] {
        &self.a
    }

    pub fn invariants(&self) -> Invariants<BigRational> {
        let [a1, a2, a3, a4, a6] = &self.a;
        Invariants::from_coefficients(a1, a2, a3, a4, a6)
    }

    pub fn j_invariant(&self) -> Result<BigRational> {
        let inv = self.invariants();
        if inv.disc.is_zero() {
            return Err(Error::Singular);
        }
        Ok(&inv.c4 * &inv.c4 * &inv.c4 / &inv.disc)
    }

    pub fn is_integral(&self) -> bool {
        self.a.iter().all(|c| c.is_integer())
    }

    /// The integral model, if every coefficient is an integer.
    pub fn to_integral(&self) -> Result<WeierstrassModel> {
        if !self.is_integral() {
            return Err(Error::NotIntegral);
        }
        WeierstrassModel::from_array(self.a.clone().map(|c| c.to_integer()))
    }

    /// The model obtained by the substitution `x = u^2 x' + r`,
    /// `y = u^3 y' + s u^2 x' + w`.
    pub fn apply_iso(&self, map: &IsoMap) -> RationalModel {
        let [a1, a2, a3, a4, a6] = &self.a;
        let (u, r, s, t) = (&map.u, &map.r, &map.s, &map.w);
        let two = BigRational::from_integer(2.into());
        let three = BigRational::from_integer(3.into());
        let ui = u.recip();
        let ui2 = &ui * &ui;
        let ui3 = &ui2 * &ui;
        let ui4 = &ui2 * &ui2;
        let ui6 = &ui3 * &ui3;
        let n1 = a1 + &two * s;
        let n2 = a2 - s * a1 + &three * r - s * s;
        let n3 = a3 + r * a1 + &two * t;
        let n4 = a4 - s * a3 + &two * r * a2 - (t + r * s) * a1 + &three * r * r - &two * s * t;
        let n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        RationalModel {
            a: [n1 * ui, n2 * ui2, n3 * ui3, n4 * ui4, n6 * ui6],
        }
    }
}

impl fmt::Display for RationalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4, a6] = &self.a;
        write!(f, "[{a1},{a2},{a3},{a4},{a6}]")
    }
}

/// A change of variables `[u, r, s, w]`:
/// `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IsoMap {
    u: BigRational,
    r: BigRational,
    s: BigRational,
    w: BigRational,
}

impl IsoMap {
    pub fn new(u: BigRational, r: BigRational, s: BigRational, w: BigRational) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::ZeroScaling);
        }
        Ok(Self { u, r, s, w })
    }

    pub fn from_integers(u: i64, r: i64, s: i64, w: i64) -> Result<Self> {
        let q = |n: i64| BigRational::from_integer(n.into());
        Self::new(q(u), q(r), q(s), q(w))
    }

    pub fn identity() -> Self {
        Self {
            u: BigRational::one(),
            r: BigRational::zero(),
            s: BigRational::zero(),
            w: BigRational::zero(),
        }
    }

    /// Pure scaling `[u, 0, 0, 0]`.
    pub fn scaling(u: BigRational) -> Result<Self> {
        Self::new(
            u,
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        )
    }

    pub fn u(&self) -> &BigRational {
        &self.u
    }
    pub fn r(&self) -> &BigRational {
        &self.r
    }
    pub fn s(&self) -> &BigRational {
        &self.s
    }
    pub fn w(&self) -> &BigRational {
        &self.w
    }

    /// The map that applies `self` first and then `next`.
    pub fn then(&self, next: &IsoMap) -> IsoMap {
        let (u1, r1, s1, t1) = (&self.u, &self.r, &self.s, &self.w);
        let (u2, r2, s2, t2) = (&next.u, &next.r, &next.s, &next.w);
        let u1sq = u1 * u1;
        IsoMap {
            u: u1 * u2,
            r: r1 + &u1sq * r2,
            s: s1 + u1 * s2,
            w: t1 + &u1sq * u1 * t2 + &u1sq * s1 * r2,
        }
    }

    pub fn inverse(&self) -> IsoMap {
        let (u, r, s, t) = (&self.u, &self.r, &self.s, &self.w);
        let ui = u.recip();
        let ui2 = &ui * &ui;
        IsoMap {
            r: -(r * &ui2),
            s: -(s * &ui),
            w: (r * s - t) * &ui2 * &ui,
            u: ui,
        }
    }

    /// Whether u, r, s, w are all integers (the map preserves integrality).
    pub fn is_integral(&self) -> bool {
        [&self.u, &self.r, &self.s, &self.w]
            .iter()
            .all(|c| c.is_integer())
    }

    pub(crate) fn abs_u(&self) -> BigRational {
        self.u.abs()
    }
}

/// Exact quotient helper: `n / d` as an integer when it divides, else an error.
pub(crate) fn exact_div(n: &BigInt, d: &BigInt) -> Result<BigInt> {
    let (q, r) = n.div_rem(d);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::Invariant(alloc::format!("{d} does not divide {n}")))
    }
}
