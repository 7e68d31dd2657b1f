//! Arbitrary-precision helpers shared by every other module.
//!
//! Everything here is exact. Square roots and other irrational quantities are
//! never approximated in floating point; they are bracketed between two
//! integers instead, and callers carry both ends of the bracket.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A non-negative multiple of one half, stored as its doubled value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt {
    twice: u64,
}

impl HalfInt {
    pub const fn from_twice(twice: u64) -> Self {
        HalfInt { twice }
    }

    pub const fn whole(n: u64) -> Self {
        HalfInt { twice: 2 * n }
    }

    /// The numerator over a denominator of exactly two.
    pub const fn numerator(self) -> u64 {
        self.twice
    }

    pub const fn floor(self) -> u64 {
        self.twice / 2
    }

    pub const fn is_integral(self) -> bool {
        self.twice.is_multiple_of(2)
    }

    pub const fn scale(self, k: u64) -> Self {
        HalfInt { twice: self.twice * k }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.floor())
        } else {
            write!(f, "{}.5", self.floor())
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Which end of an integer bracket to return.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bracket {
    Lower,
    Upper,
}

pub fn isqrt_floor(n: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::Negative("isqrt_floor"));
    }
    Ok(n.sqrt())
}

pub fn isqrt_ceil(n: &BigInt) -> Result<BigInt> {
    let r = isqrt_floor(n)?;
    if &(&r * &r) == n {
        Ok(r)
    } else {
        Ok(r + 1)
    }
}

/// Floor of the `k`-th root of a non-negative integer.
pub fn iroot_floor(n: &BigInt, k: u32) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::Negative("iroot_floor"));
    }
    assert!(k >= 1, "root index must be positive");
    Ok(n.nth_root(k))
}

pub fn iroot_ceil(n: &BigInt, k: u32) -> Result<BigInt> {
    let r = iroot_floor(n, k)?;
    if &r.pow(k) == n {
        Ok(r)
    } else {
        Ok(r + 1)
    }
}

/// `base^exp` for a half-integer exponent, bracketed by integers.
///
/// An odd half contributes one factor of `sqrt(base)`, replaced by its floor
/// (`Lower`) or ceiling (`Upper`). Integral exponents are exact.
pub fn pow_half(base: &BigInt, exp: HalfInt, mode: Bracket) -> BigInt {
    assert!(base >= &BigInt::one(), "pow_half needs base >= 1");
    let whole = base.pow(exp.floor() as u32);
    if exp.is_integral() {
        return whole;
    }
    let root = match mode {
        Bracket::Lower => isqrt_floor(base),
        Bracket::Upper => isqrt_ceil(base),
    }
    .expect("base is positive");
    whole * root
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime divisors of `n`, ascending. Trial division; fine up to ~10^12.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Number of distinct prime divisors; `div_count(1) == 0`.
pub fn div_count(n: u64) -> u32 {
    assert!(n >= 1, "div_count needs n >= 1");
    prime_factors(n).len() as u32
}

/// `p` if `p | n`, otherwise 0.
pub fn d_p(n: u64, p: u64) -> u64 {
    if n.is_multiple_of(p) {
        p
    } else {
        0
    }
}

/// Decomposes `n = r^m` with `r` prime, or returns `None`.
///
/// Bases are found either by trial division (small prime factor) or by
/// perfect-power detection followed by a 64-bit primality test, so any prime
/// power whose base fits in a `u64` is recognised.
pub fn prime_power(n: &BigInt) -> Option<(BigInt, u32)> {
    if n < &BigInt::from(2) {
        return None;
    }
    const TRIAL: u64 = 1 << 16;
    for p in 2..TRIAL {
        let pb = BigInt::from(p);
        if (n % &pb).is_zero() {
            let mut rest = n.clone();
            let mut m = 0u32;
            while (&rest % &pb).is_zero() {
                rest /= &pb;
                m += 1;
            }
            return rest.is_one().then_some((pb, m));
        }
        if &(&pb * &pb) > n {
            // No factor below sqrt(n): n is prime.
            return Some((n.clone(), 1));
        }
    }
    // Every prime factor exceeds TRIAL, so the exponent is bounded by log_TRIAL(n).
    let bits = n.bits() as u32;
    for m in (1..=bits / 16).rev() {
        let r = n.nth_root(m);
        if &r.pow(m) == n {
            if let Some(r64) = r.to_u64() {
                if is_prime_u64(r64) {
                    return Some((r, m));
                }
            }
            return None;
        }
    }
    None
}

pub fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

/// True iff `n` is a perfect square (n >= 0).
pub fn is_square(n: &BigInt) -> bool {
    n.sign() != Sign::Minus && {
        let r = n.sqrt();
        &(&r * &r) == n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt_floor(&big(0)).unwrap(), big(0));
        assert_eq!(isqrt_floor(&big(49)).unwrap(), big(7));
        assert_eq!(isqrt_ceil(&big(49)).unwrap(), big(7));
        // 4^2 = 16 <= 23 < 25 = 5^2
        assert_eq!(isqrt_floor(&big(23)).unwrap(), big(4));
        assert_eq!(isqrt_ceil(&big(23)).unwrap(), big(5));
        assert_eq!(isqrt_floor(&BigInt::from(-1)), Err(Error::Negative("isqrt_floor")));
        assert!(isqrt_ceil(&BigInt::from(-4)).is_err());
    }

    #[test]
    fn pow_half_examples() {
        assert_eq!(pow_half(&big(9), HalfInt::whole(3), Bracket::Lower), big(729));
        assert_eq!(pow_half(&big(9), HalfInt::whole(3), Bracket::Upper), big(729));
        let up = pow_half(&big(7), HalfInt::from_twice(9), Bracket::Upper);
        let lo = pow_half(&big(7), HalfInt::from_twice(9), Bracket::Lower);
        assert_eq!(up, big(7203));
        assert_eq!(lo, big(4802));
        let seven9 = big(7).pow(9);
        assert!(&up * &up >= seven9);
        assert!(&lo * &lo <= seven9);
        // perfect-square base: exact either way
        assert_eq!(pow_half(&big(9), HalfInt::from_twice(3), Bracket::Lower), big(27));
        assert_eq!(pow_half(&big(9), HalfInt::from_twice(3), Bracket::Upper), big(27));
    }

    #[test]
    fn prime_power_examples() {
        assert_eq!(prime_power(&big(121)), Some((big(11), 2)));
        assert_eq!(prime_power(&big(12)), None);
        assert_eq!(prime_power(&big(7)), Some((big(7), 1)));
        assert_eq!(prime_power(&big(1)), None);
        assert_eq!(prime_power(&big(2)), Some((big(2), 1)));
        // base above the trial-division range
        let r = 1_000_003u64;
        assert_eq!(prime_power(&big(r).pow(3)), Some((big(r), 3)));
        assert_eq!(prime_power(&(big(r) * big(1_000_033))), None);
    }

    #[test]
    fn div_and_indicator() {
        assert_eq!(div_count(1), 0);
        assert_eq!(div_count(12), 2);
        assert_eq!(div_count(30), 3);
        assert_eq!(d_p(10, 3), 0);
        assert_eq!(d_p(9, 3), 3);
    }

    #[test]
    fn half_int_display() {
        assert_eq!(HalfInt::from_twice(9).to_string(), "4.5");
        assert_eq!(HalfInt::whole(6).to_string(), "6");
        assert_eq!(HalfInt::from_twice(3).scale(2), HalfInt::whole(3));
    }

    #[test]
    fn prime_powers_of_small_primes() {
        for r in (2..=100u64).filter(|&r| is_prime_u64(r)) {
            for m in 1..=10u32 {
                assert_eq!(prime_power(&big(r).pow(m)), Some((big(r), m)), "{r}^{m}");
            }
        }
    }

    #[test]
    fn miller_rabin_matches_trial_division() {
        for n in 0..20_000u64 {
            let trial = n >= 2 && prime_factors(n) == vec![n];
            assert_eq!(is_prime_u64(n), trial, "{n}");
        }
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007 * 998_244_353));
    }

    proptest! {
        #[test]
        fn isqrt_brackets(n in 0u64..=1_000_000_000_000_000_000) {
            let nb = big(n);
            let r = isqrt_floor(&nb).unwrap();
            prop_assert!(&r * &r <= nb);
            prop_assert!((&r + 1u32) * (&r + 1u32) > nb);
            let c = isqrt_ceil(&nb).unwrap();
            prop_assert!(&c * &c >= nb);
            prop_assert!(c.is_zero() || (&c - 1u32) * (&c - 1u32) < nb);
        }

        #[test]
        fn pow_half_ordered(base in 1u64..10_000, twice in 0u64..20) {
            let b = big(base);
            let e = HalfInt::from_twice(twice);
            let lo = pow_half(&b, e, Bracket::Lower);
            let hi = pow_half(&b, e, Bracket::Upper);
            prop_assert!(lo <= hi);
            prop_assert_eq!(lo == hi, e.is_integral() || is_square(&b));
            // lo^2 <= base^twice <= hi^2
            prop_assert!(&lo * &lo <= b.pow(twice as u32));
            prop_assert!(&hi * &hi >= b.pow(twice as u32));
        }

        #[test]
        fn iroot_brackets(n in 0u64..1_000_000_000_000, k in 1u32..6) {
            let nb = big(n);
            let f = iroot_floor(&nb, k).unwrap();
            let c = iroot_ceil(&nb, k).unwrap();
            prop_assert!(f.pow(k) <= nb && (&f + 1u32).pow(k) > nb);
            prop_assert!(c.pow(k) >= nb && (c.clone() - &f) <= BigInt::one());
        }
    }
}
