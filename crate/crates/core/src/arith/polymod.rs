//! Polynomials over F_p with arbitrary-precision p, used to count roots.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Primes up to this size are handled by direct evaluation.
const BRUTE_FORCE_LIMIT: u64 = 1000;

/// Coefficients in increasing degree, reduced into [0, p), no trailing zeros.
type Poly = Vec<BigInt>;

fn normalize(mut f: Poly) -> Poly {
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    f
}

fn reduce(coeffs: &[BigInt], p: &BigInt) -> Poly {
    normalize(coeffs.iter().map(|c| c.mod_floor(p)).collect())
}

fn inverse(a: &BigInt, p: &BigInt) -> BigInt {
    // p is prime, so a^(p-2) is the inverse.
    a.modpow(&(p - 2u32), p)
}

fn poly_mul_mod(f: &Poly, g: &Poly, m: &Poly, p: &BigInt) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    poly_rem(&reduce(&out, p), m, p)
}

fn poly_rem(f: &Poly, m: &Poly, p: &BigInt) -> Poly {
    let mut r = f.clone();
    let dm = m.len() - 1;
    let lead_inv = inverse(m.last().unwrap(), p);
    while r.len() > dm {
        let top = r.len() - 1;
        let q = (r[top].clone() * &lead_inv).mod_floor(p);
        let shift = top - dm;
        for (i, c) in m.iter().enumerate() {
            r[shift + i] = (&r[shift + i] - &q * c).mod_floor(p);
        }
        r = normalize(r);
    }
    r
}

fn poly_gcd(mut a: Poly, mut b: Poly, p: &BigInt) -> Poly {
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Number of distinct roots in F_p of the polynomial with the given
/// coefficients (increasing degree). The zero polynomial returns p.
pub fn count_roots_mod_p(coeffs: &[BigInt], p: &BigInt) -> BigInt {
    let f = reduce(coeffs, p);
    if f.is_empty() {
        return p.clone();
    }
    if f.len() == 1 {
        return BigInt::zero();
    }
    if let Some(small) = p.to_u64().filter(|&q| q <= BRUTE_FORCE_LIMIT) {
        let fs: Vec<u64> = f.iter().map(|c| c.to_u64().unwrap()).collect();
        let n = (0..small)
            .filter(|&x| fs.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % small) == 0)
            .count();
        return BigInt::from(n);
    }
    // gcd(f, x^p - x) is the product of the distinct linear factors of f.
    let x: Poly = vec![BigInt::zero(), BigInt::one()];
    let mut acc: Poly = vec![BigInt::one()];
    let mut base = poly_rem(&x, &f, p);
    let mut e = p.clone();
    while !e.is_zero() {
        if e.is_odd() {
            acc = poly_mul_mod(&acc, &base, &f, p);
        }
        base = poly_mul_mod(&base, &base, &f, p);
        e >>= 1;
    }
    let mut xp_minus_x = acc;
    xp_minus_x.resize(xp_minus_x.len().max(2), BigInt::zero());
    xp_minus_x[1] = (&xp_minus_x[1] - 1u32).mod_floor(p);
    let g = poly_gcd(f, normalize(xp_minus_x), p);
    BigInt::from(g.len() - 1)
}

/// Whether `a x^2 + b x + c` has a root in F_p.
pub fn quadratic_has_root(a: &BigInt, b: &BigInt, c: &BigInt, p: &BigInt) -> bool {
    let (a, b, c) = (a.mod_floor(p), b.mod_floor(p), c.mod_floor(p));
    if a.is_zero() {
        return !b.is_zero() || c.is_zero();
    }
    if *p == BigInt::from(2) {
        // x^2 + bx + c over F_2: b = 0 always has a root; b = 1 needs c = 0.
        return b.is_zero() || c.is_zero();
    }
    let disc = (&b * &b - BigInt::from(4) * &a * &c).mod_floor(p);
    disc.is_zero() || super::kronecker(&disc, p).unwrap() == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots(coeffs: &[i64], p: i64) -> i64 {
        let c: Vec<BigInt> = coeffs.iter().map(|&x| BigInt::from(x)).collect();
        count_roots_mod_p(&c, &BigInt::from(p)).to_i64().unwrap()
    }

    #[test]
    fn brute_force_range() {
        assert_eq!(roots(&[-1, 0, 1], 7), 2);
        assert_eq!(roots(&[1, 0, 1], 7), 0);
        assert_eq!(roots(&[0, 0, 0, 1], 5), 1);
        assert_eq!(roots(&[0], 5), 5);
    }

    #[test]
    fn gcd_path_matches_brute_force() {
        // x^3 - x splits completely; x^2 + 1 splits iff p = 1 mod 4.
        let p = 1_000_003; // 3 mod 4
        assert_eq!(roots(&[0, -1, 0, 1], p), 3);
        assert_eq!(roots(&[1, 0, 1], p), 0);
        let q = 1_000_033; // 1 mod 4
        assert_eq!(roots(&[1, 0, 1], q), 2);
        // (x - 5)^2 (x + 7) has two distinct roots.
        assert_eq!(roots(&[175, -45, -3, 1], q), 2);
    }

    #[test]
    fn quadratic_roots_small_fields() {
        let t = |a: i64, b: i64, c: i64, p: i64| {
            quadratic_has_root(&a.into(), &b.into(), &c.into(), &p.into())
        };
        for p in [2i64, 3, 5, 7, 11] {
            for a in 0..p {
                for b in 0..p {
                    for c in 0..p {
                        let brute = (0..p).any(|x| (a * x * x + b * x + c) % p == 0);
                        assert_eq!(t(a, b, c, p), brute, "{a} {b} {c} mod {p}");
                    }
                }
            }
        }
    }
}
