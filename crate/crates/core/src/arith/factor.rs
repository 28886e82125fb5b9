//! Factorization of nonzero integers.
//!
//! Trial division runs up to 10^6 (stopping early once the cofactor is known
//! prime or smaller than the square of the divisor), then Brent's variant of
//! Pollard rho splits whatever composite is left.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

const TRIAL_LIMIT: u32 = 1_000_000;

/// Below this bound, Miller-Rabin with the first 13 prime bases is a proof
/// of primality.
const MR_DETERMINISTIC_BOUND: &str = "3317044064679887385961981";

const SMALL_PRIMES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// A nonzero integer written as `sign * prod p^e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    sign: i8,
    factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    /// Builds a factorization from arbitrary (prime, exponent) pairs, merging
    /// repeated primes and dropping zero exponents.
    pub fn from_factors<I>(sign: i8, factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigInt, u32)>,
    {
        let mut merged: BTreeMap<BigInt, u32> = BTreeMap::new();
        for (p, e) in factors {
            if !p.is_positive() || !is_prime(p.magnitude()) {
                return Err(Error::NotPrime(p));
            }
            if e > 0 {
                *merged.entry(p).or_insert(0) += e;
            }
        }
        let sign = if sign < 0 { -1 } else { 1 };
        Ok(Self {
            sign,
            factors: merged.into_iter().collect(),
        })
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// Prime factors in increasing order with their exponents.
    pub fn factors(&self) -> &[(BigInt, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> + '_ {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn exponent_of(&self, p: &BigInt) -> u32 {
        self.factors
            .binary_search_by(|(q, _)| q.cmp(p))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// The product `sign * prod p^e`.
    pub fn value(&self) -> BigInt {
        let mut v = BigInt::one();
        for (p, e) in &self.factors {
            v *= num_traits::pow(p.clone(), *e as usize);
        }
        if self.sign < 0 {
            -v
        } else {
            v
        }
    }
}

/// Factors a nonzero integer completely.
pub fn factorize(n: &BigInt) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    let sign = if n.sign() == Sign::Minus { -1 } else { 1 };
    let mut found: BTreeMap<BigUint, u32> = BTreeMap::new();
    factor_magnitude(n.magnitude().clone(), &mut found);
    let factors = found
        .into_iter()
        .map(|(p, e)| (BigInt::from_biguint(Sign::Plus, p), e))
        .collect();
    Ok(Factorization { sign, factors })
}

fn factor_magnitude(mut m: BigUint, out: &mut BTreeMap<BigUint, u32>) {
    if m.is_one() {
        return;
    }
    let tz = m.trailing_zeros().unwrap_or(0);
    if tz > 0 {
        *out.entry(BigUint::from(2u32)).or_insert(0) += tz as u32;
        m >>= tz;
    }
    let trial_bound = |m: &BigUint| {
        m.sqrt()
            .to_u32()
            .map_or(TRIAL_LIMIT, |r| r.min(TRIAL_LIMIT))
    };
    let mut limit = trial_bound(&m);
    let mut d: u32 = 3;
    let mut checked_prime = false;
    while d <= limit {
        if (&m % d).is_zero() {
            let mut e = 0;
            while (&m % d).is_zero() {
                m /= d;
                e += 1;
            }
            *out.entry(BigUint::from(d)).or_insert(0) += e;
            limit = trial_bound(&m);
            checked_prime = false;
        }
        if d > 1000 && !checked_prime {
            if is_prime(&m) {
                break;
            }
            checked_prime = true;
        }
        d += 2;
    }
    if m.is_one() {
        return;
    }
    split_large(m, out);
}

fn split_large(m: BigUint, out: &mut BTreeMap<BigUint, u32>) {
    if m.is_one() {
        return;
    }
    if is_prime(&m) {
        *out.entry(m).or_insert(0) += 1;
        return;
    }
    if let Some(r) = perfect_square_root(&m) {
        let mut sub = BTreeMap::new();
        split_large(r, &mut sub);
        for (p, e) in sub {
            *out.entry(p).or_insert(0) += 2 * e;
        }
        return;
    }
    let mut c = 1u32;
    loop {
        if let Some(f) = brent_rho(&m, c) {
            let g = m / &f;
            split_large(f, out);
            split_large(g, out);
            return;
        }
        c += 1;
    }
}

fn perfect_square_root(m: &BigUint) -> Option<BigUint> {
    let r = m.sqrt();
    if &r * &r == *m {
        Some(r)
    } else {
        None
    }
}

/// Brent's cycle-finding variant of Pollard rho on `x -> x^2 + c`.
fn brent_rho(n: &BigUint, c: u32) -> Option<BigUint> {
    let c = BigUint::from(c);
    let one = BigUint::one();
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    const BATCH: u64 = 64;
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..BATCH.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += BATCH;
        }
        r *= 2;
        if r > 1 << 26 {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if g != one {
                break;
            }
        }
    }
    if &g == n || g.is_one() {
        None
    } else {
        Some(g)
    }
}

/// Primality test.
///
/// Below 3.3 * 10^24 this is deterministic Miller-Rabin; above it the strong
/// base-2 test is combined with a strong Lucas test (Baillie-PSW).
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return false;
        }
        for &p in &SMALL_PRIMES {
            if small == u64::from(p) {
                return true;
            }
            if small % u64::from(p) == 0 {
                return false;
            }
        }
        if small < 43 * 43 {
            return true;
        }
    } else {
        for &p in &SMALL_PRIMES {
            if (n % p).is_zero() {
                return false;
            }
        }
    }
    let bound: BigUint = MR_DETERMINISTIC_BOUND.parse().unwrap();
    if *n < bound {
        SMALL_PRIMES
            .iter()
            .all(|&b| strong_probable_prime(n, &BigUint::from(b)))
    } else {
        strong_probable_prime(n, &BigUint::from(2u32)) && strong_lucas_probable_prime(n)
    }
}

fn strong_probable_prime(n: &BigUint, base: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    let mut x = base.modpow(&d, n);
    if x == one || x == n_minus_one {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_one {
            return true;
        }
        if x == one {
            return false;
        }
    }
    false
}

/// Strong Lucas probable-prime test with Selfridge's parameter choice.
/// Assumes `n` is odd, greater than 41 and not a perfect square multiple of
/// a small prime.
fn strong_lucas_probable_prime(n: &BigUint) -> bool {
    if perfect_square_root(n).is_some() {
        return false;
    }
    let ni = BigInt::from(n.clone());
    // Selfridge: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    let mut d = BigInt::from(5);
    loop {
        match super::kronecker(&d, &ni) {
            Ok(-1) => break,
            Ok(0) if d.magnitude() != n => return false,
            _ => {}
        }
        d = if d.is_positive() {
            -(d + 2u32)
        } else {
            -d + 2u32
        };
    }
    let q: BigInt = (BigInt::one() - &d) / 4u32;
    let modn = |x: BigInt| x.mod_floor(&ni);
    let np1: BigInt = &ni + 1u32;
    let s = np1.trailing_zeros().unwrap_or(0);
    let k = &np1 >> s;
    // Binary Lucas chain for U_k, V_k with P = 1.
    let mut u = BigInt::zero();
    let mut v = BigInt::from(2);
    let mut qk = BigInt::one();
    let inv2: BigInt = (&ni + 1u32) / 2u32;
    let bits = k.bits();
    for i in (0..bits).rev() {
        // double
        u = modn(&u * &v);
        v = modn(&v * &v - &qk * 2);
        qk = modn(&qk * &qk);
        if k.bit(i) {
            let nu = modn((&u + &v) * &inv2);
            let nv = modn((&d * &u + &v) * &inv2);
            u = nu;
            v = nv;
            qk = modn(&qk * &q);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = modn(&v * &v - &qk * 2);
        qk = modn(&qk * &qk);
        if v.is_zero() {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac(n: i64) -> Factorization {
        factorize(&BigInt::from(n)).unwrap()
    }

    fn pairs(f: &Factorization) -> Vec<(i64, u32)> {
        f.factors()
            .iter()
            .map(|(p, e)| (p.to_i64().unwrap(), *e))
            .collect()
    }

    #[test]
    fn small_examples() {
        let one = fac(1);
        assert_eq!(one.sign(), 1);
        assert!(one.factors().is_empty());

        let f = fac(-161051);
        assert_eq!(f.sign(), -1);
        assert_eq!(pairs(&f), [(11, 5)]);

        assert_eq!(pairs(&fac(20008)), [(2, 3), (41, 1), (61, 1)]);
    }

    #[test]
    fn zero_is_rejected() {
        assert_eq!(factorize(&BigInt::zero()), Err(Error::Zero));
    }

    #[test]
    fn large_semiprime_and_prime_power() {
        // (10^9 + 7) * (10^9 + 9): both factors are beyond trial division.
        let p: BigInt = BigInt::from(1_000_000_007u64);
        let q: BigInt = BigInt::from(1_000_000_009u64);
        let f = factorize(&(&p * &q)).unwrap();
        assert_eq!(f.factors(), &[(p.clone(), 1), (q.clone(), 1)]);

        let cube = &p * &p * &p * BigInt::from(12);
        let f = factorize(&cube).unwrap();
        assert_eq!(
            f.factors(),
            &[(BigInt::from(2), 2), (BigInt::from(3), 1), (p, 3)]
        );
    }

    #[test]
    fn primality() {
        let primes = [
            2u64,
            3,
            5,
            41,
            43,
            1_000_003,
            2_147_483_647,
            1_000_000_000_000_000_003,
        ];
        for p in primes {
            assert!(is_prime(&BigUint::from(p)), "{p}");
        }
        // Carmichael numbers and strong pseudoprimes to small bases.
        let composites = [1u64, 561, 1105, 2047, 3215031751, 3825123056546413051];
        for c in composites {
            assert!(!is_prime(&BigUint::from(c)), "{c}");
        }
        // 2^89 - 1 is a Mersenne prime above the deterministic Miller-Rabin range.
        let m89 = (BigUint::one() << 89u32) - 1u32;
        assert!(is_prime(&m89));
        assert!(!is_prime(&(&m89 * 3u32)));
        let m89_sq = &m89 * &m89;
        assert!(!is_prime(&m89_sq));
    }
}
