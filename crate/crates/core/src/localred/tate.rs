//! Tate's algorithm, valid at every prime including 2 and 3.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Kodaira, LocalReduction, ReductionKind};
use crate::arith::{count_roots_mod_p, is_prime, quadratic_has_root, val};
use crate::curves::{Invariants, WeierstrassModel};
use crate::{Error, Result};

/// Working model: integral coefficients plus the prime.
struct State<'a> {
    p: &'a BigInt,
    a: [BigInt; 5],
}

impl State<'_> {
    fn inv(&self) -> Invariants<BigInt> {
        let [a1, a2, a3, a4, a6] = &self.a;
        Invariants::from_coefficients(a1, a2, a3, a4, a6)
    }

    fn v(&self, n: &BigInt) -> u32 {
        val(n, self.p)
    }

    fn divides(&self, n: &BigInt) -> bool {
        n.is_multiple_of(self.p)
    }

    fn reduce(&self, n: &BigInt) -> BigInt {
        n.mod_floor(self.p)
    }

    fn inverse(&self, n: &BigInt) -> Result<BigInt> {
        self.reduce(n)
            .modinv(self.p)
            .ok_or_else(|| Error::Invariant(alloc::format!("{n} is not invertible mod {}", self.p)))
    }

    fn is_two(&self) -> bool {
        *self.p == BigInt::from(2)
    }

    fn is_three(&self) -> bool {
        *self.p == BigInt::from(3)
    }

    /// Inverse of 2 modulo an odd prime.
    fn half(&self) -> BigInt {
        (self.p + 1u32) / 2u32
    }

    /// Integral change of variables `[1, r, s, t]`.
    fn rst(&mut self, r: &BigInt, s: &BigInt, t: &BigInt) {
        let [a1, a2, a3, a4, a6] = &self.a;
        let n1 = a1 + s * 2u32;
        let n2 = a2 - s * a1 + r * 3u32 - s * s;
        let n3 = a3 + r * a1 + t * 2u32;
        let n4 = a4 - s * a3 + r * a2 * 2u32 - (t + r * s) * a1 + r * r * 3u32 - s * t * 2u32;
        let n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        self.a = [n1, n2, n3, n4, n6];
    }

    fn div(&self, n: &BigInt, d: &BigInt) -> Result<BigInt> {
        let (q, r) = n.div_rem(d);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Invariant(alloc::format!(
                "Tate step expected {d} | {n}"
            )))
        }
    }
}

/// Local reduction data of an integral model at the prime `p`. The model
/// need not be minimal at `p`.
pub fn tate_local(e: &WeierstrassModel, p: &BigInt) -> Result<LocalReduction> {
    if !p.is_positive() || !is_prime(p.magnitude()) {
        return Err(Error::NotPrime(p.clone()));
    }
    let mut st = State {
        p,
        a: e.coefficients().clone(),
    };
    let zero = BigInt::zero();
    let pp = p * p;

    loop {
        let inv = st.inv();
        let vd = st.v(&inv.disc);
        let done =
            |kodaira: Kodaira, tamagawa: u32, conductor_exponent: u32, kind: ReductionKind| {
                Ok(LocalReduction {
                    prime: p.clone(),
                    kodaira,
                    tamagawa,
                    disc_valuation: vd,
                    conductor_exponent,
                    kind,
                })
            };
        if vd == 0 {
            return done(Kodaira::I(0), 1, 0, ReductionKind::Good);
        }

        // Move the singular point of the reduction to (0, 0).
        let [a1, a2, a3, a4, _] = st.a.clone();
        let (b2, b4, b6, c4, c6) = (&inv.b2, &inv.b4, &inv.b6, &inv.c4, &inv.c6);
        let (r, t) = if st.is_two() {
            if st.divides(b2) {
                let r = st.reduce(&a4);
                let t = st.reduce(&(&r * (BigInt::one() + &a2 + &a4) + &st.a[4]));
                (r, t)
            } else {
                let r = st.reduce(&a3);
                let t = st.reduce(&(&r + &a4));
                (r, t)
            }
        } else if st.is_three() {
            let r = if st.divides(b2) {
                st.reduce(&-b6)
            } else {
                st.reduce(&-(b2 * b4))
            };
            let t = st.reduce(&(&a1 * &r + &a3));
            (r, t)
        } else {
            let r = if st.divides(c4) {
                st.reduce(&(-st.inverse(&BigInt::from(12))? * b2))
            } else {
                st.reduce(&(-st.inverse(&(c4 * 12u32))? * (c6 + b2 * c4)))
            };
            let t = st.reduce(&(-st.half() * (&a1 * &r + &a3)));
            (r, t)
        };
        st.rst(&r, &zero, &t);
        let inv = st.inv();
        let [a1, a2, a3, a4, a6] = st.a.clone();
        if !(st.divides(&a3) && st.divides(&a4) && st.divides(&a6)) {
            return Err(Error::Invariant(
                "singular point not moved to the origin".into(),
            ));
        }

        // Multiplicative reduction.
        if !st.divides(&inv.b2) {
            let split = quadratic_has_root(&BigInt::one(), &a1, &-&a2, p);
            let (c, kind) = if split {
                (vd, ReductionKind::SplitMultiplicative)
            } else {
                (2 - vd % 2, ReductionKind::NonsplitMultiplicative)
            };
            return done(Kodaira::I(vd), c, 1, kind);
        }

        // Additive reduction.
        if st.v(&a6) < 2 {
            return done(Kodaira::II, 1, vd, ReductionKind::Additive);
        }
        if st.v(&inv.b8) < 3 {
            return done(Kodaira::III, 2, vd - 1, ReductionKind::Additive);
        }
        if st.v(&inv.b6) < 3 {
            let c = if quadratic_has_root(&BigInt::one(), &st.div(&a3, p)?, &-st.div(&a6, &pp)?, p)
            {
                3
            } else {
                1
            };
            return done(Kodaira::IV, c, vd - 2, ReductionKind::Additive);
        }

        // Arrange p | a1, a2; p^2 | a3, a4; p^3 | a6.
        let (s, t) = if st.is_two() {
            (st.reduce(&a2), p * st.reduce(&st.div(&a6, &pp)?))
        } else {
            (-&a1 * st.half(), -&a3 * st.half())
        };
        st.rst(&zero, &s, &t);
        let [_, a2, _, a4, a6] = st.a.clone();

        // Roots of T^3 + b T^2 + c T + d mod p.
        let b = st.div(&a2, p)?;
        let c = st.div(&a4, &pp)?;
        let d = st.div(&a6, &(&pp * p))?;
        let w = BigInt::from(27) * &d * &d - &b * &b * &c * &c
            + BigInt::from(4) * &b * &b * &b * &d
            - BigInt::from(18) * &b * &c * &d
            + BigInt::from(4) * &c * &c * &c;
        let x = BigInt::from(3) * &c - &b * &b;

        if !st.divides(&w) {
            // Three distinct roots.
            let roots = count_roots_mod_p(&[d, c, b, BigInt::one()], p);
            let n = u32::try_from(roots).map_err(|_| Error::Invariant("root count".into()))?;
            return done(Kodaira::IStar(0), 1 + n, vd - 4, ReductionKind::Additive);
        }

        if !st.divides(&x) {
            // One double root: move it to 0, then sharpen divisibility.
            let r0 = if st.is_two() {
                st.reduce(&c)
            } else if st.is_three() {
                st.reduce(&(&b * &c))
            } else {
                st.reduce(&((&b * &c - BigInt::from(9) * &d) * st.inverse(&(&x * 2u32))?))
            };
            st.rst(&(p * r0), &zero, &zero);
            let mut m: u32 = 1;
            let mut mx = pp.clone();
            let mut my = pp.clone();
            let c = loop {
                let [_, _, a3, _, a6] = st.a.clone();
                let a3t = st.div(&a3, &my)?;
                let a6t = st.div(&a6, &(&mx * &my))?;
                if !st.divides(&(&a3t * &a3t + &a6t * 4u32)) {
                    break if quadratic_has_root(&BigInt::one(), &a3t, &-&a6t, p) {
                        4
                    } else {
                        2
                    };
                }
                let t = if st.is_two() {
                    &my * st.reduce(&a6t)
                } else {
                    &my * st.reduce(&(-&a3t * st.half()))
                };
                st.rst(&zero, &zero, &t);
                my *= p;
                m += 1;
                let [_, a2, _, a4, a6] = st.a.clone();
                let a2t = st.div(&a2, p)?;
                let a4t = st.div(&a4, &(p * &mx))?;
                let a6t = st.div(&a6, &(&mx * &my))?;
                if !st.divides(&(&a4t * &a4t - &a6t * &a2t * 4u32)) {
                    break if quadratic_has_root(&a2t, &a4t, &a6t, p) {
                        4
                    } else {
                        2
                    };
                }
                let r = if st.is_two() {
                    &mx * st.reduce(&(&a6t * &a2t))
                } else {
                    &mx * st.reduce(&(-&a4t * st.inverse(&(&a2t * 2u32))?))
                };
                st.rst(&r, &zero, &zero);
                mx *= p;
                m += 1;
            };
            return done(Kodaira::IStar(m), c, vd - m - 4, ReductionKind::Additive);
        }

        // Triple root: move it to 0.
        let r0 = if st.is_two() {
            st.reduce(&b)
        } else if st.is_three() {
            st.reduce(&-&d)
        } else {
            st.reduce(&(-&b * st.inverse(&BigInt::from(3))?))
        };
        st.rst(&(p * r0), &zero, &zero);
        let [_, _, a3, _, a6] = st.a.clone();
        let p4 = &pp * &pp;
        let a3t = st.div(&a3, &pp)?;
        let a6t = st.div(&a6, &p4)?;
        if !st.divides(&(&a3t * &a3t + &a6t * 4u32)) {
            let c = if quadratic_has_root(&BigInt::one(), &a3t, &-&a6t, p) {
                3
            } else {
                1
            };
            return done(Kodaira::IVStar, c, vd - 6, ReductionKind::Additive);
        }
        let t = if st.is_two() {
            -(&pp * st.reduce(&a6t))
        } else {
            &pp * st.reduce(&(-&a3t * st.half()))
        };
        st.rst(&zero, &zero, &t);
        let [a1, a2, a3, a4, a6] = st.a.clone();
        if st.v(&a4) < 4 {
            return done(Kodaira::IIIStar, 2, vd - 7, ReductionKind::Additive);
        }
        if st.v(&a6) < 6 {
            return done(Kodaira::IIStar, 1, vd - 8, ReductionKind::Additive);
        }
        // Not minimal at p: scale down and start again.
        let p3 = &pp * p;
        st.a = [
            st.div(&a1, p)?,
            st.div(&a2, &pp)?,
            st.div(&a3, &p3)?,
            st.div(&a4, &p4)?,
            st.div(&a6, &(&p3 * &p3))?,
        ];
    }
}
