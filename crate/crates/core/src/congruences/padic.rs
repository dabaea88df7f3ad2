//! Morita's p-adic gamma function to finite precision.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::primes::{is_prime, mul_mod};
use crate::error::{Error, Result};

/// Working modulus `p^m` together with the guard digits used when lifting
/// rational arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PAdicContext {
    pub p: u64,
    pub m: u32,
    pub guard: u32,
}

impl PAdicContext {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        Self::with_guard(p, m, 2)
    }

    pub fn with_guard(p: u64, m: u32, guard: u32) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::Config(format!("p-adic context needs an odd prime, got {p}")));
        }
        if m == 0 {
            return Err(Error::Config("p-adic precision must be at least 1".into()));
        }
        let bits = 64 - p.leading_zeros();
        if bits as u64 * (m + guard) as u64 > 63 {
            return Err(Error::Config(format!("p^(m+guard) overflows for p = {p}, m = {m}")));
        }
        Ok(PAdicContext { p, m, guard })
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.m)
    }

    /// Representative of `x` modulo `p^(m+guard)` in `[0, p^(m+guard))`.
    pub fn lift(&self, x: &BigRational) -> Result<u64> {
        let big = BigInt::from(self.p.pow(self.m + self.guard));
        let den = x.denom().mod_floor(&big);
        if (x.denom() % BigInt::from(self.p)).is_zero() {
            return Err(Error::DenominatorDivisibleByP(self.p));
        }
        let inv = den.modpow(&(totient_pow(self.p, self.m + self.guard) - 1u32), &big);
        let r = (x.numer().mod_floor(&big) * inv).mod_floor(&big);
        Ok(r.to_u64().expect("reduced below a u64 modulus"))
    }
}

fn totient_pow(p: u64, e: u32) -> BigInt {
    BigInt::from(p - 1) * BigInt::from(p).pow(e - 1)
}

/// `Gamma_p(n) mod p^m` for a non-negative integer `n`, straight from
/// `(-1)^n prod_{0<j<n, p not dividing j} j`.
pub fn padic_gamma_int(n: u64, p: u64, m: u32) -> u64 {
    let q = p.pow(m);
    let mut acc = 1 % q;
    for j in 1..n {
        if j % p != 0 {
            acc = mul_mod(acc, j % q, q);
        }
    }
    if n % 2 == 1 && acc != 0 {
        q - acc
    } else {
        acc
    }
}

/// `Gamma_p(x) mod p^m` for a rational `x` with denominator prime to `p`.
///
/// `x` is lifted to an integer mod `p^(m+guard)`; continuity then gives the
/// value mod `p^m`, and `Gamma_p(n + p^m) = Gamma_p(n) (mod p^m)` lets the
/// product run over `n mod p^m` only.
pub fn padic_gamma(x: &BigRational, ctx: &PAdicContext) -> Result<u64> {
    let n = ctx.lift(x)?;
    Ok(padic_gamma_int(n % ctx.modulus(), ctx.p, ctx.m))
}

/// Residue of a rational in `[0, p^m)`, for denominators prime to `p`.
pub fn rational_residue(x: &BigRational, ctx: &PAdicContext) -> Result<u64> {
    Ok(ctx.lift(x)? % ctx.modulus())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruences::primes::{pow_mod, primes_between};

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn integer_values_match_restricted_factorial() {
        for p in primes_between(3, 50) {
            let q = p * p;
            let mut fact = 1u64;
            for n in 0..=2000u64 {
                if n >= 2 && (n - 1) % p != 0 {
                    fact = mul_mod(fact, (n - 1) % q, q);
                }
                let want = if n % 2 == 1 { (q - fact) % q } else { fact };
                let ctx = PAdicContext::new(p, 2).unwrap();
                assert_eq!(padic_gamma(&rat(n as i64, 1), &ctx).unwrap(), want, "p = {p}, n = {n}");
            }
        }
    }

    #[test]
    fn gamma_one_is_minus_one() {
        for p in [3u64, 5, 7, 11] {
            let ctx = PAdicContext::new(p, 1).unwrap();
            assert_eq!(padic_gamma(&rat(1, 1), &ctx).unwrap(), p - 1);
        }
    }

    #[test]
    fn half_squared() {
        for p in [5u64, 7, 11, 13] {
            for m in 1..=3 {
                let ctx = PAdicContext::new(p, m).unwrap();
                let q = ctx.modulus();
                let g = padic_gamma(&rat(1, 2), &ctx).unwrap();
                let want = if p.div_ceil(2) % 2 == 0 { 1 } else { q - 1 };
                assert_eq!(mul_mod(g, g, q), want, "p = {p}, m = {m}");
            }
        }
    }

    #[test]
    fn reflection_is_a_sign() {
        for p in primes_between(3, 50) {
            let ctx = PAdicContext::new(p, 2).unwrap();
            let q = ctx.modulus();
            for (a, b) in [(1, 3), (1, 4), (2, 5), (-7, 12), (5, 8)] {
                if (b as u64).is_multiple_of(p) {
                    continue;
                }
                let x = rat(a, b);
                let one_minus = rat(b - a, b);
                let g = mul_mod(padic_gamma(&x, &ctx).unwrap(), padic_gamma(&one_minus, &ctx).unwrap(), q);
                // (-1)^{a0} with a0 the representative of x mod p in 1..=p
                let r = rational_residue(&x, &ctx).unwrap() % p;
                let a0 = if r == 0 { p } else { r };
                let want = if a0 % 2 == 0 { 1 } else { q - 1 };
                assert_eq!(g, want, "p = {p}, x = {a}/{b}");
            }
        }
    }

    #[test]
    fn denominator_divisible_by_p() {
        let ctx = PAdicContext::new(5, 2).unwrap();
        assert!(matches!(padic_gamma(&rat(1, 10), &ctx), Err(Error::DenominatorDivisibleByP(5))));
        assert!(PAdicContext::new(9, 2).is_err());
        assert_eq!(pow_mod(2, 10, 1000), 24);
    }
}
