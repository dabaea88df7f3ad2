//! Binary floating point on top of `BigInt`.
//!
//! A value is `mant * 2^exp`. A precision of `0` marks an exact value: sums,
//! differences and products of exact values stay exact, while division and the
//! transcendental functions fall back to [`DEFAULT_PRECISION`]. Mixed operations
//! round to the larger of the two precisions.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

pub const DEFAULT_PRECISION: u32 = 192;

#[derive(Clone)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

fn bits(m: &BigInt) -> i64 {
    m.bits() as i64
}

fn combine(a: u32, b: u32) -> u32 {
    a.max(b)
}

fn round_mag(mag: BigUint, sh: u64) -> BigUint {
    if sh == 0 {
        return mag;
    }
    let half = BigUint::one() << (sh - 1);
    (mag + half) >> sh
}

/// Round `m * 2^(-sh)` to the nearest integer.
fn shr_round(m: &BigInt, sh: u64) -> BigInt {
    if sh == 0 {
        return m.clone();
    }
    let neg = m.is_negative();
    let r = round_mag(m.magnitude().clone(), sh);
    let r = BigInt::from_biguint(Sign::Plus, r);
    if neg {
        -r
    } else {
        r
    }
}

impl BigFloat {
    fn from_parts(mant: BigInt, exp: i64, prec: u32) -> Self {
        let mut x = BigFloat { mant, exp, prec };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        if self.prec > 0 {
            let b = bits(&self.mant);
            let p = self.prec as i64;
            if b > p {
                let sh = (b - p) as u64;
                let neg = self.mant.is_negative();
                let mut mag = round_mag(self.mant.magnitude().clone(), sh);
                let mut e = self.exp + sh as i64;
                if mag.bits() as i64 > p {
                    mag >>= 1u32;
                    e += 1;
                }
                let m = BigInt::from_biguint(Sign::Plus, mag);
                self.mant = if neg { -m } else { m };
                self.exp = e;
            }
        }
        if let Some(tz) = self.mant.trailing_zeros() {
            if tz > 0 {
                self.mant >>= tz;
                self.exp += tz as i64;
            }
        }
    }

    pub fn zero_prec(prec: u32) -> Self {
        BigFloat { mant: BigInt::zero(), exp: 0, prec }
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::from_parts(BigInt::from(v), 0, prec)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        Self::from_parts(v.clone(), 0, prec)
    }

    pub fn from_f64(v: f64, prec: u32) -> Self {
        assert!(v.is_finite(), "non-finite f64");
        if v == 0.0 {
            return Self::zero_prec(prec);
        }
        let (m, e, s) = num_traits::Float::integer_decode(v);
        let mant = BigInt::from(m) * BigInt::from(s);
        Self::from_parts(mant, e as i64, prec)
    }

    /// `num / den` rounded to `prec` bits; `prec == 0` means the default.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let prec = if prec == 0 { DEFAULT_PRECISION } else { prec };
        let a = Self::from_bigint(num, 0);
        let b = Self::from_bigint(den, 0);
        a.div_prec(&b, prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        Self::from_ratio(q.numer(), q.denom(), prec)
    }

    /// Parse a decimal literal such as `-0.125`, `3e-5` or `17`.
    pub fn parse_decimal(s: &str, prec: u32) -> Option<Self> {
        let s = s.trim();
        let (neg, body) = match s.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (mant_part, exp_part) = match body.find(['e', 'E']) {
            Some(i) => (&body[..i], Some(&body[i + 1..])),
            None => (body, None),
        };
        let mut e10: i64 = match exp_part {
            Some(e) => e.parse().ok()?,
            None => 0,
        };
        let (ip, fp) = match mant_part.find('.') {
            Some(i) => (&mant_part[..i], &mant_part[i + 1..]),
            None => (mant_part, ""),
        };
        if ip.is_empty() && fp.is_empty() {
            return None;
        }
        let digits = format!("{ip}{fp}");
        if !digits.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        e10 -= fp.len() as i64;
        let mut n: BigInt = digits.parse().ok()?;
        if neg {
            n = -n;
        }
        let ten = BigInt::from(10);
        if e10 >= 0 {
            let v = n * num_traits::pow(ten, e10 as usize);
            Some(Self::from_parts(v, 0, prec))
        } else {
            let d = num_traits::pow(ten, (-e10) as usize);
            Some(Self::from_ratio(&n, &d, prec))
        }
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Working precision: the stored precision, or the default for exact values.
    pub fn work_prec(&self) -> u32 {
        if self.prec == 0 {
            DEFAULT_PRECISION
        } else {
            self.prec
        }
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self::from_parts(self.mant.clone(), self.exp, prec)
    }

    pub fn is_zero_value(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn signum_i32(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    pub fn mul_2exp(&self, k: i64) -> Self {
        if self.mant.is_zero() {
            return self.clone();
        }
        BigFloat { mant: self.mant.clone(), exp: self.exp + k, prec: self.prec }
    }

    /// Position of the leading bit: `2^(top-1) <= |x| < 2^top`.
    pub fn top(&self) -> i64 {
        if self.mant.is_zero() {
            i64::MIN / 4
        } else {
            self.exp + bits(&self.mant)
        }
    }

    pub fn is_integer(&self) -> bool {
        self.mant.is_zero() || self.exp >= 0
    }

    /// Exact value as a rational number.
    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << (self.exp as u64))
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << ((-self.exp) as u64))
        }
    }

    pub fn round_to_bigint(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << (self.exp as u64)
        } else {
            shr_round(&self.mant, (-self.exp) as u64)
        }
    }

    pub fn floor_to_bigint(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << (self.exp as u64)
        } else {
            // arithmetic shift floors
            &self.mant >> ((-self.exp) as u64)
        }
    }

    /// `round(x * 2^w)`.
    pub fn to_fixed(&self, w: i64) -> BigInt {
        let e = self.exp + w;
        if e >= 0 {
            &self.mant << (e as u64)
        } else {
            shr_round(&self.mant, (-e) as u64)
        }
    }

    pub fn from_fixed(v: BigInt, w: i64, prec: u32) -> Self {
        Self::from_parts(v, -w, prec)
    }

    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let b = bits(&self.mant);
        let (top, e) = if b > 64 {
            (shr_round(&self.mant, (b - 64) as u64), self.exp + b - 64)
        } else {
            (self.mant.clone(), self.exp)
        };
        ldexp(top.to_f64().unwrap_or(0.0), e)
    }

    /// `log2 |x|`, usable for values far outside the f64 range.
    pub fn log2_abs(&self) -> f64 {
        if self.mant.is_zero() {
            return f64::NEG_INFINITY;
        }
        let b = bits(&self.mant);
        let sh = (b - 60).max(0);
        let top = (self.mant.abs() >> (sh as u64)).to_f64().unwrap_or(1.0);
        top.log2() + (self.exp + sh) as f64
    }

    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        match (self.mant.is_zero(), other.mant.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (ta, tb) = (self.top(), other.top());
        if ta != tb {
            return ta.cmp(&tb);
        }
        let e = self.exp.min(other.exp);
        let a = self.mant.magnitude() << ((self.exp - e) as u64);
        let b = other.mant.magnitude() << ((other.exp - e) as u64);
        a.cmp(&b)
    }

    fn cmp_value(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum_i32(), other.signum_i32());
        if sa != sb {
            return sa.cmp(&sb);
        }
        match sa {
            0 => Ordering::Equal,
            1 => self.cmp_abs(other),
            _ => other.cmp_abs(self),
        }
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let prec = combine(self.prec, other.prec);
        if other.mant.is_zero() {
            return self.with_prec(prec);
        }
        let b_mant = if negate { -&other.mant } else { other.mant.clone() };
        if self.mant.is_zero() {
            return Self::from_parts(b_mant, other.exp, prec);
        }
        if prec > 0 {
            let (ta, tb) = (self.top(), other.top());
            let gap = prec as i64 + 3;
            if ta > tb + gap {
                return self.with_prec(prec);
            }
            if tb > ta + gap {
                return Self::from_parts(b_mant, other.exp, prec);
            }
        }
        let e = self.exp.min(other.exp);
        let m = (&self.mant << ((self.exp - e) as u64)) + (b_mant << ((other.exp - e) as u64));
        Self::from_parts(m, e, prec)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let prec = combine(self.prec, other.prec);
        Self::from_parts(&self.mant * &other.mant, self.exp + other.exp, prec)
    }

    pub fn div_prec(&self, other: &Self, prec: u32) -> Self {
        assert!(!other.mant.is_zero(), "BigFloat division by zero");
        if self.mant.is_zero() {
            return Self::zero_prec(prec);
        }
        let sh = (prec as i64 + 3 + bits(&other.mant) - bits(&self.mant)).max(0);
        let num = &self.mant << (sh as u64);
        let q = &num / &other.mant;
        let r = &num % &other.mant;
        // sticky bit keeps round-to-nearest honest
        let (q, sh) = if r.is_zero() {
            (q, sh)
        } else {
            let s = if q.is_negative() { -1 } else { 1 };
            ((q << 1u32) + s, sh + 1)
        };
        Self::from_parts(q, self.exp - other.exp - sh, prec)
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.mant.is_negative(), "sqrt of negative BigFloat");
        let prec = self.work_prec();
        if self.mant.is_zero() {
            return Self::zero_prec(prec);
        }
        let mut sh = (2 * prec as i64 + 4 - bits(&self.mant)).max(0);
        if (self.exp - sh).rem_euclid(2) != 0 {
            sh += 1;
        }
        let m = self.mant.magnitude() << (sh as u64);
        let r = m.sqrt();
        Self::from_parts(BigInt::from_biguint(Sign::Plus, r), (self.exp - sh) / 2, prec)
    }

    pub fn recip(&self) -> Self {
        Self::from_i64(1, 0).div_prec(self, self.work_prec())
    }

    pub fn powi(&self, n: i64) -> Self {
        let prec = self.work_prec();
        if n < 0 {
            return self.powi(-n).with_prec(prec + 8).recip().with_prec(prec);
        }
        let wp = if self.prec == 0 { 0 } else { prec + 2 * (64 - (n as u64).leading_zeros()) };
        let mut base = self.with_prec(wp);
        let mut acc = Self::from_i64(1, wp);
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc.with_prec(self.prec)
    }

    pub fn pi(prec: u32) -> Self {
        let w = prec as i64 + 16;
        Self::from_fixed(cached_const(&PI_CACHE, w, pi_fixed), w, prec)
    }

    pub fn ln2(prec: u32) -> Self {
        let w = prec as i64 + 16;
        Self::from_fixed(cached_const(&LN2_CACHE, w, ln2_fixed), w, prec)
    }

    pub fn exp(&self) -> Self {
        let prec = self.work_prec();
        if self.mant.is_zero() {
            return Self::from_i64(1, prec);
        }
        let xf = self.to_f64();
        assert!(xf.abs() < 1e12, "exp argument out of range");
        let k = (xf / std::f64::consts::LN_2).round() as i64;
        let kbits = 64 - k.unsigned_abs().leading_zeros();
        let s: i64 = 12;
        let wp = prec + 40 + kbits + s as u32;
        let r = self.with_prec(wp + kbits) - Self::ln2(wp + kbits) * Self::from_i64(k, 0);
        let w = wp as i64;
        let rf = r.to_fixed(w - s);
        let one = BigInt::one() << (w as u64);
        let mut sum = one.clone();
        let mut term = one;
        let mut n = 1u64;
        loop {
            term = shr_round(&(&term * &rf), w as u64);
            term /= n;
            if term.is_zero() {
                break;
            }
            sum += &term;
            n += 1;
        }
        for _ in 0..s {
            sum = shr_round(&(&sum * &sum), w as u64);
        }
        Self::from_parts(sum, k - w, prec)
    }

    pub fn ln(&self) -> Self {
        assert!(self.mant.is_positive(), "ln of non-positive BigFloat");
        let prec = self.work_prec();
        let b = bits(&self.mant);
        let mut e = self.exp + b;
        let mut m = BigFloat { mant: self.mant.clone(), exp: -b, prec: 0 };
        if m.to_f64() < std::f64::consts::FRAC_1_SQRT_2 {
            m = m.mul_2exp(1);
            e -= 1;
        }
        let ebits = 64 - e.unsigned_abs().leading_zeros();
        let wp = prec + 40 + ebits;
        let one = Self::from_i64(1, 0);
        let z = (&m - &one).div_prec(&(&m + &one), wp);
        if z.mant.is_zero() {
            return (Self::ln2(wp) * Self::from_i64(e, 0)).with_prec(prec);
        }
        let w = wp as i64 + (-z.top()).max(0);
        let zf = z.to_fixed(w);
        let z2 = shr_round(&(&zf * &zf), w as u64);
        let mut term = zf.clone();
        let mut sum = zf;
        let mut k = 1u64;
        loop {
            term = shr_round(&(&term * &z2), w as u64);
            if term.is_zero() {
                break;
            }
            sum += &term / (2 * k + 1);
            k += 1;
        }
        let lnm = Self::from_fixed(sum << 1u32, w, wp);
        (lnm + Self::ln2(wp) * Self::from_i64(e, 0)).with_prec(prec)
    }

    pub fn sin_cos(&self) -> (Self, Self) {
        let prec = self.work_prec();
        if self.mant.is_zero() {
            return (Self::zero_prec(prec), Self::from_i64(1, prec));
        }
        let xf = self.to_f64();
        assert!(xf.abs() < 1e12, "sin/cos argument out of range");
        let k = (xf / std::f64::consts::FRAC_PI_2).round() as i64;
        let kbits = 64 - k.unsigned_abs().leading_zeros();
        let wp = prec + 40 + kbits;
        let r = if k == 0 {
            self.with_prec(wp)
        } else {
            self.with_prec(wp + kbits) - Self::pi(wp + kbits).mul_2exp(-1) * Self::from_i64(k, 0)
        };
        let w = wp as i64 + (-r.top()).max(0);
        let rf = r.to_fixed(w);
        let r2 = shr_round(&(&rf * &rf), w as u64);
        let mut term = rf.clone();
        let mut s = rf;
        let mut n = 1u64;
        loop {
            term = -(shr_round(&(&term * &r2), w as u64)) / ((2 * n) * (2 * n + 1));
            if term.is_zero() {
                break;
            }
            s += &term;
            n += 1;
        }
        let one = BigInt::one() << (w as u64);
        let mut term = one.clone();
        let mut c = one;
        let mut n = 1u64;
        loop {
            term = -(shr_round(&(&term * &r2), w as u64)) / ((2 * n - 1) * (2 * n));
            if term.is_zero() {
                break;
            }
            c += &term;
            n += 1;
        }
        let s = Self::from_fixed(s, w, prec);
        let c = Self::from_fixed(c, w, prec);
        match k.rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }

    pub fn atan(&self) -> Self {
        let prec = self.work_prec();
        if self.mant.is_zero() {
            return Self::zero_prec(prec);
        }
        let wp = prec + 40;
        let neg = self.is_negative();
        let mut x = self.abs().with_prec(wp);
        let one = Self::from_i64(1, 0);
        let invert = x > one;
        if invert {
            x = x.recip();
        }
        let halvings = 4;
        for _ in 0..halvings {
            let t = (&one + &(&x * &x)).sqrt();
            x = x.div_prec(&(&one + &t), wp);
        }
        let x2 = &x * &x;
        let mut pow = x.clone();
        let mut sum = x.clone();
        let eps = -(wp as i64) - 4;
        let mut k = 1i64;
        loop {
            pow = -(&pow * &x2);
            let t = pow.div_prec(&Self::from_i64(2 * k + 1, 0), wp);
            if t.is_zero_value() || t.top() < eps + sum.top() {
                break;
            }
            sum = sum + t;
            k += 1;
        }
        let mut r = sum.mul_2exp(halvings);
        if invert {
            r = Self::pi(wp).mul_2exp(-1) - r;
        }
        if neg {
            r = -r;
        }
        r.with_prec(prec)
    }

    /// Angle of the point `(x, y)` in `(-pi, pi]`.
    pub fn atan2(y: &Self, x: &Self) -> Self {
        let prec = combine(y.work_prec(), x.work_prec());
        if x.mant.is_zero() {
            let hp = Self::pi(prec).mul_2exp(-1);
            return match y.signum_i32() {
                1 => hp,
                -1 => -hp,
                _ => Self::zero_prec(prec),
            };
        }
        let a = y.with_prec(prec + 8).div_prec(x, prec + 8).atan();
        if x.is_negative() {
            let pi = Self::pi(prec + 8);
            if y.is_negative() {
                (a - pi).with_prec(prec)
            } else {
                (a + pi).with_prec(prec)
            }
        } else {
            a.with_prec(prec)
        }
    }

    pub fn powf(&self, y: &Self) -> Self {
        (y * &self.ln()).exp()
    }

    /// Fixed-point decimal string with `digits` digits after the point.
    pub fn to_fixed_string(&self, digits: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10), digits);
        let v = BigFloat { mant: &self.mant * scale, exp: self.exp, prec: 0 }.round_to_bigint();
        let neg = v.is_negative();
        let mut s = v.abs().to_string();
        if s.len() <= digits {
            s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
        }
        let (ip, fp) = s.split_at(s.len() - digits);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{ip}")
        } else {
            format!("{sign}{ip}.{fp}")
        }
    }

    /// Scientific notation with `sig` significant digits.
    pub fn to_sci_string(&self, sig: usize) -> String {
        if self.mant.is_zero() {
            return "0".to_string();
        }
        let sig = sig.max(1);
        let mut e10 = (self.log2_abs() * std::f64::consts::LOG10_2).floor() as i64;
        for _ in 0..3 {
            let d = sig as i64 - 1 - e10;
            let ten = BigInt::from(10);
            let scaled = if d >= 0 {
                BigFloat { mant: &self.mant * num_traits::pow(ten, d as usize), exp: self.exp, prec: 0 }
                    .round_to_bigint()
            } else {
                let den = num_traits::pow(ten, (-d) as usize);
                let q = BigFloat { mant: self.mant.clone(), exp: self.exp, prec: 0 };
                let num = q.to_rational() / BigRational::from_integer(den);
                let r = num.round();
                r.to_integer()
            };
            let digits = scaled.abs().to_string();
            if digits.len() > sig {
                e10 += 1;
                continue;
            }
            if digits.len() < sig {
                e10 -= 1;
                continue;
            }
            let sign = if scaled.is_negative() { "-" } else { "" };
            let (a, b) = digits.split_at(1);
            return if b.is_empty() {
                format!("{sign}{a}e{e10}")
            } else {
                format!("{sign}{a}.{b}e{e10}")
            };
        }
        format!("{:e}", self.to_f64())
    }

    pub fn decimal_digits(&self) -> usize {
        ((self.work_prec() as f64) * std::f64::consts::LOG10_2).floor() as usize
    }
}

pub(crate) fn ldexp(x: f64, mut e: i64) -> f64 {
    let mut x = x;
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e as i32)
}

type ConstCache = Mutex<Option<(i64, BigInt)>>;
static PI_CACHE: ConstCache = Mutex::new(None);
static LN2_CACHE: ConstCache = Mutex::new(None);

fn cached_const(cache: &ConstCache, w: i64, f: fn(i64) -> BigInt) -> BigInt {
    let mut g = cache.lock().unwrap_or_else(|e| e.into_inner());
    if let Some((cw, v)) = g.as_ref() {
        if *cw >= w {
            return shr_round(v, (cw - w) as u64);
        }
    }
    let nw = w.max(g.as_ref().map(|c| c.0 * 2).unwrap_or(0)).max(512);
    let v = f(nw);
    let out = shr_round(&v, (nw - w) as u64);
    *g = Some((nw, v));
    out
}

/// `atan(1/n) * 2^w`.
fn atan_inv_fixed(n: u64, w: i64) -> BigInt {
    let one = BigInt::one() << (w as u64);
    let mut term = one / n;
    let n2 = n * n;
    let mut sum = term.clone();
    let mut k = 1u64;
    loop {
        term /= n2;
        if term.is_zero() {
            break;
        }
        let t = &term / (2 * k + 1);
        if k % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
        k += 1;
    }
    sum
}

fn pi_fixed(w: i64) -> BigInt {
    let g = w + 20;
    let v = atan_inv_fixed(5, g) * 16 - atan_inv_fixed(239, g) * 4;
    shr_round(&v, 20)
}

fn ln2_fixed(w: i64) -> BigInt {
    let g = w + 20;
    let one = BigInt::one() << (g as u64);
    let mut term = one / 3u32;
    let mut sum = term.clone();
    let mut k = 1u64;
    loop {
        term /= 9u32;
        if term.is_zero() {
            break;
        }
        sum += &term / (2 * k + 1);
        k += 1;
    }
    shr_round(&(sum << 1u32), 20)
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci_string(self.decimal_digits().min(40)))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prec == 0 && self.is_integer() {
            return write!(f, "{}", self.round_to_bigint());
        }
        let d = f.precision().unwrap_or_else(|| self.decimal_digits());
        write!(f, "{}", self.to_sci_string(d))
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat { mant: -self.mant, exp: self.exp, prec: self.prec }
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat { mant: -&self.mant, exp: self.exp, prec: self.prec }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&BigFloat> for &BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: &BigFloat) -> BigFloat {
                let f: fn(&BigFloat, &BigFloat) -> BigFloat = $body;
                f(self, rhs)
            }
        }
        impl $tr<BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: BigFloat) -> BigFloat {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: &BigFloat) -> BigFloat {
                (&self).$m(rhs)
            }
        }
        impl $tr<BigFloat> for &BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: BigFloat) -> BigFloat {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_impl(b, false));
binop!(Sub, sub, |a, b| a.add_impl(b, true));
binop!(Mul, mul, |a, b| a.mul_impl(b));
binop!(Div, div, |a, b| {
    let p = combine(a.prec, b.prec);
    a.div_prec(b, if p == 0 { DEFAULT_PRECISION } else { p })
});
binop!(Rem, rem, |a, b| {
    let p = combine(a.work_prec(), b.work_prec());
    let q = a.div_prec(b, p + 64);
    let t = if q.is_negative() { -(-&q).floor_to_bigint() } else { q.floor_to_bigint() };
    a - &(BigFloat::from_bigint(&t, 0) * b)
});

impl Zero for BigFloat {
    fn zero() -> Self {
        Self::zero_prec(0)
    }
    fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }
}

impl One for BigFloat {
    fn one() -> Self {
        Self::from_i64(1, 0)
    }
}

impl Num for BigFloat {
    type FromStrRadixErr = String;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, String> {
        if radix != 10 {
            return Err("only radix 10 is supported".into());
        }
        BigFloat::parse_decimal(s, 0).ok_or_else(|| format!("bad decimal literal {s:?}"))
    }
}

impl ToPrimitive for BigFloat {
    fn to_i64(&self) -> Option<i64> {
        self.round_to_bigint().to_i64()
    }
    fn to_u64(&self) -> Option<u64> {
        self.round_to_bigint().to_u64()
    }
    fn to_f64(&self) -> Option<f64> {
        Some(BigFloat::to_f64(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bf(s: &str, p: u32) -> BigFloat {
        BigFloat::parse_decimal(s, p).unwrap()
    }

    const PI_60: &str = "3.14159265358979323846264338327950288419716939937510582097494";
    const E_60: &str = "2.71828182845904523536028747135266249775724709369995957496697";
    const LN2_60: &str = "0.693147180559945309417232121458176568075500134360255254120680";

    fn close(a: &BigFloat, b: &BigFloat, tol_log2: i64) -> bool {
        let d = (a - b).abs();
        d.is_zero_value() || d.top() < tol_log2
    }

    #[test]
    fn constants() {
        assert!(close(&BigFloat::pi(200), &bf(PI_60, 220), -190));
        assert!(close(&BigFloat::ln2(200), &bf(LN2_60, 220), -190));
        assert!(close(&BigFloat::from_i64(1, 200).exp(), &bf(E_60, 220), -190));
    }

    #[test]
    fn arithmetic_exact() {
        let a = BigFloat::from_i64(3, 0);
        let b = BigFloat::parse_decimal("0.5", 0).unwrap();
        assert_eq!((&a * &b).to_rational(), BigRational::new(3.into(), 2.into()));
        assert_eq!((&a - &b).to_f64(), 2.5);
        assert_eq!(BigFloat::from_i64(1, 0) / BigFloat::from_i64(4, 0), BigFloat::from_f64(0.25, 0));
    }

    #[test]
    fn roundtrip_functions() {
        let x = bf("0.7345", 256);
        assert!(close(&x.exp().ln(), &x, -250));
        let (s, c) = bf("12.5", 256).sin_cos();
        assert!(close(&(&s * &s + &c * &c), &BigFloat::from_i64(1, 0), -250));
        let t = bf("1.25", 256);
        let a = t.atan();
        let (s, c) = a.sin_cos();
        assert!(close(&(s / c), &t, -248));
        let two = BigFloat::from_i64(2, 256);
        let r = two.sqrt();
        assert!(close(&(&r * &r), &two, -252));
        assert!(close(&(BigFloat::from_i64(1, 256).atan() * BigFloat::from_i64(4, 0)), &BigFloat::pi(256), -250));
    }

    #[test]
    fn atan2_quadrants() {
        let one = BigFloat::from_i64(1, 128);
        let m = -one.clone();
        let pi = BigFloat::pi(128);
        assert!(close(&BigFloat::atan2(&one, &m), &(&pi * &BigFloat::from_f64(0.75, 0)), -120));
        assert!(close(&BigFloat::atan2(&m, &m), &(-(&pi * &BigFloat::from_f64(0.75, 0))), -120));
    }

    #[test]
    fn decimal_output() {
        assert_eq!(bf("-0.125", 64).to_fixed_string(4), "-0.1250");
        assert_eq!(BigFloat::pi(128).to_fixed_string(10), "3.1415926536");
        assert_eq!(BigFloat::pi(128).to_sci_string(5), "3.1416e0");
        assert_eq!(bf("0.000123456", 128).to_sci_string(3), "1.23e-4");
    }

    #[test]
    fn small_and_huge_arguments() {
        let tiny = bf("1e-40", 200);
        assert!(close(&tiny.sin(), &tiny, -300));
        let big = bf("1000.5", 200);
        assert!(close(&big.exp().ln(), &big, -180));
        assert!(close(&bf("1e-30", 200).ln().exp(), &bf("1e-30", 200), -280));
    }
}
