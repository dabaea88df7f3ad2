use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};

use super::BigFloat;

/// Real scalar used by the numeric kernels.
///
/// `prec` arguments are in bits. `f64` ignores them. For [`BigFloat`] a
/// precision of `0` produces an exact value where the operation allows it.
pub trait Real:
    Clone + fmt::Debug + fmt::Display + PartialOrd + Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn prec(&self) -> u32;
    fn from_i64(v: i64, prec: u32) -> Self;
    fn from_f64(v: f64, prec: u32) -> Self;
    fn from_bigint(v: &BigInt, prec: u32) -> Self;
    fn from_ratio(n: &BigInt, d: &BigInt, prec: u32) -> Self;
    fn pi(prec: u32) -> Self;
    fn with_prec(&self, prec: u32) -> Self;
    fn to_f64(&self) -> f64;
    fn log2_abs(&self) -> f64;
    fn abs(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sin_cos(&self) -> (Self, Self);
    fn atan2(y: &Self, x: &Self) -> Self;
    fn mul_2exp(&self, k: i64) -> Self;
    /// The value as an integer, if it is one.
    fn as_integer(&self) -> Option<BigInt>;

    fn from_rational(q: &BigRational, prec: u32) -> Self {
        Self::from_ratio(q.numer(), q.denom(), prec)
    }

    fn is_neg(&self) -> bool {
        *self < Self::zero()
    }

    fn powi(&self, n: i64) -> Self {
        if n < 0 {
            return Self::one() / self.powi(-n);
        }
        let mut base = self.clone();
        let mut acc = Self::from_i64(1, self.prec());
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base.clone();
            }
            k >>= 1;
            if k > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    fn powf(&self, y: &Self) -> Self {
        (y.clone() * self.ln()).exp()
    }

    /// log2 of a unit in the last place relative to the value's magnitude.
    fn ulp_log2(&self) -> f64 {
        self.log2_abs() - self.prec() as f64
    }
}

impl Real for BigFloat {
    fn prec(&self) -> u32 {
        self.work_prec()
    }
    fn from_i64(v: i64, prec: u32) -> Self {
        BigFloat::from_i64(v, prec)
    }
    fn from_f64(v: f64, prec: u32) -> Self {
        BigFloat::from_f64(v, prec)
    }
    fn from_bigint(v: &BigInt, prec: u32) -> Self {
        BigFloat::from_bigint(v, prec)
    }
    fn from_ratio(n: &BigInt, d: &BigInt, prec: u32) -> Self {
        BigFloat::from_ratio(n, d, prec)
    }
    fn pi(prec: u32) -> Self {
        BigFloat::pi(prec)
    }
    fn with_prec(&self, prec: u32) -> Self {
        BigFloat::with_prec(self, prec)
    }
    fn to_f64(&self) -> f64 {
        BigFloat::to_f64(self)
    }
    fn log2_abs(&self) -> f64 {
        BigFloat::log2_abs(self)
    }
    fn abs(&self) -> Self {
        BigFloat::abs(self)
    }
    fn sqrt(&self) -> Self {
        BigFloat::sqrt(self)
    }
    fn exp(&self) -> Self {
        BigFloat::exp(self)
    }
    fn ln(&self) -> Self {
        BigFloat::ln(self)
    }
    fn sin_cos(&self) -> (Self, Self) {
        BigFloat::sin_cos(self)
    }
    fn atan2(y: &Self, x: &Self) -> Self {
        BigFloat::atan2(y, x)
    }
    fn mul_2exp(&self, k: i64) -> Self {
        BigFloat::mul_2exp(self, k)
    }
    fn as_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.round_to_bigint())
    }
    fn powi(&self, n: i64) -> Self {
        BigFloat::powi(self, n)
    }
}

impl Real for f64 {
    fn prec(&self) -> u32 {
        53
    }
    fn from_i64(v: i64, _: u32) -> Self {
        v as f64
    }
    fn from_f64(v: f64, _: u32) -> Self {
        v
    }
    fn from_bigint(v: &BigInt, _: u32) -> Self {
        v.to_f64().unwrap_or(f64::NAN)
    }
    fn from_ratio(n: &BigInt, d: &BigInt, _: u32) -> Self {
        BigFloat::from_ratio(n, d, 64).to_f64()
    }
    fn pi(_: u32) -> Self {
        std::f64::consts::PI
    }
    fn with_prec(&self, _: u32) -> Self {
        *self
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn log2_abs(&self) -> f64 {
        f64::abs(*self).log2()
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn sin_cos(&self) -> (Self, Self) {
        f64::sin_cos(*self)
    }
    fn atan2(y: &Self, x: &Self) -> Self {
        f64::atan2(*y, *x)
    }
    fn mul_2exp(&self, k: i64) -> Self {
        super::bigfloat::ldexp(*self, k)
    }
    fn as_integer(&self) -> Option<BigInt> {
        (self.is_finite() && self.fract() == 0.0).then(|| BigInt::from(*self as i128))
    }
    fn powi(&self, n: i64) -> Self {
        f64::powi(*self, n as i32)
    }
}
