//! Elementary functions on `Complex<R>`. Branch cuts are the principal ones.

use num_complex::Complex;
use num_traits::Zero;

use super::Real;

pub fn real<R: Real>(x: R) -> Complex<R> {
    let z = R::from_i64(0, x.prec());
    Complex::new(x, z)
}

pub fn from_i64<R: Real>(v: i64, prec: u32) -> Complex<R> {
    Complex::new(R::from_i64(v, prec), R::from_i64(0, prec))
}

pub fn prec_of<R: Real>(z: &Complex<R>) -> u32 {
    z.re.prec().max(z.im.prec())
}

pub fn with_prec<R: Real>(z: &Complex<R>, prec: u32) -> Complex<R> {
    Complex::new(z.re.with_prec(prec), z.im.with_prec(prec))
}

pub fn abs<R: Real>(z: &Complex<R>) -> R {
    if z.im.is_zero() {
        return z.re.abs();
    }
    if z.re.is_zero() {
        return z.im.abs();
    }
    (z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone()).sqrt()
}

/// log2 |z|, also for magnitudes outside the f64 range.
pub fn log2_abs<R: Real>(z: &Complex<R>) -> f64 {
    let a = z.re.log2_abs();
    let b = z.im.log2_abs();
    let m = a.max(b);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + 0.5 * (1.0 + (2f64).powf(2.0 * (a.min(b) - m))).log2()
}

pub fn abs_f64<R: Real>(z: &Complex<R>) -> f64 {
    let l = log2_abs(z);
    if l < -1070.0 {
        0.0
    } else {
        l.exp2()
    }
}

pub fn arg<R: Real>(z: &Complex<R>) -> R {
    R::atan2(&z.im, &z.re)
}

pub fn exp<R: Real>(z: &Complex<R>) -> Complex<R> {
    let m = z.re.exp();
    if z.im.is_zero() {
        return real(m);
    }
    let (s, c) = z.im.sin_cos();
    Complex::new(m.clone() * c, m * s)
}

pub fn ln<R: Real>(z: &Complex<R>) -> Complex<R> {
    if z.im.is_zero() && !z.re.is_neg() {
        return real(z.re.ln());
    }
    Complex::new(abs(z).ln(), arg(z))
}

pub fn sqrt<R: Real>(z: &Complex<R>) -> Complex<R> {
    let p = prec_of(z);
    if z.im.is_zero() {
        if z.re.is_neg() {
            return Complex::new(R::from_i64(0, p), (-z.re.clone()).sqrt());
        }
        return real(z.re.sqrt());
    }
    let r = abs(z);
    let two = R::from_i64(2, 0);
    if !z.re.is_neg() {
        let t = ((r + z.re.clone()) / two.clone()).sqrt();
        let im = z.im.clone() / (t.clone() * two);
        Complex::new(t, im)
    } else {
        let t = ((r - z.re.clone()) / two.clone()).sqrt();
        let re = z.im.abs() / (t.clone() * two);
        let im = if z.im.is_neg() { -t } else { t };
        Complex::new(re, im)
    }
}

/// Principal `z^w`; `0^w = 0` for `Re w > 0`.
pub fn pow<R: Real>(z: &Complex<R>, w: &Complex<R>) -> Complex<R> {
    if z.is_zero() {
        return from_i64(0, prec_of(z));
    }
    if w.im.is_zero() {
        if let Some(n) = w.re.as_integer() {
            if let Ok(k) = i64::try_from(n) {
                return powi(z, k);
            }
        }
    }
    exp(&(w.clone() * ln(z)))
}

pub fn powi<R: Real>(z: &Complex<R>, n: i64) -> Complex<R> {
    let p = prec_of(z);
    if n < 0 {
        return from_i64::<R>(1, p) / powi(z, -n);
    }
    let mut base = z.clone();
    let mut acc = from_i64::<R>(1, p);
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

pub fn sin<R: Real>(z: &Complex<R>) -> Complex<R> {
    let (s, c) = z.re.sin_cos();
    if z.im.is_zero() {
        return real(s);
    }
    let (ch, sh) = cosh_sinh(&z.im);
    Complex::new(s * ch, c * sh)
}

pub fn cos<R: Real>(z: &Complex<R>) -> Complex<R> {
    let (s, c) = z.re.sin_cos();
    if z.im.is_zero() {
        return real(c);
    }
    let (ch, sh) = cosh_sinh(&z.im);
    Complex::new(c * ch, -(s * sh))
}

fn cosh_sinh<R: Real>(x: &R) -> (R, R) {
    let e = x.exp();
    let ei = R::from_i64(1, 0) / e.clone();
    let two = R::from_i64(2, 0);
    ((e.clone() + ei.clone()) / two.clone(), (e - ei) / two)
}

/// `sin(pi z)`, exact zero at integers.
pub fn sin_pi<R: Real>(z: &Complex<R>) -> Complex<R> {
    let p = prec_of(z);
    if z.im.is_zero() && z.re.as_integer().is_some() {
        return from_i64(0, p);
    }
    let pi = R::pi(p + 8);
    sin(&Complex::new(z.re.clone() * pi.clone(), z.im.clone() * pi))
}

/// Distance of `|a - b|` as f64.
pub fn dist_f64<R: Real>(a: &Complex<R>, b: &Complex<R>) -> f64 {
    abs_f64(&(a.clone() - b.clone()))
}

/// Magnitude-limited equality used in tests.
pub fn close<R: Real>(a: &Complex<R>, b: &Complex<R>, tol: f64) -> bool {
    dist_f64(a, b) <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::float::BigFloat;

    fn c(re: f64, im: f64) -> Complex<BigFloat> {
        Complex::new(BigFloat::from_f64(re, 160), BigFloat::from_f64(im, 160))
    }

    #[test]
    fn exp_log_sqrt() {
        let z = c(-0.75, 1.5);
        assert!(close(&exp(&ln(&z)), &z, 1e-45));
        let s = sqrt(&z);
        assert!(close(&(s.clone() * s.clone()), &z, 1e-45));
        assert!(s.re > BigFloat::from_i64(0, 0));
        let r = sqrt(&c(-4.0, 0.0));
        assert!(close(&r, &c(0.0, 2.0), 1e-45));
    }

    #[test]
    fn trig_and_pow() {
        let z = c(0.3, -0.7);
        let s = sin(&z);
        let co = cos(&z);
        assert!(close(&(s.clone() * s + co.clone() * co), &c(1.0, 0.0), 1e-45));
        let w = c(0.5, 0.25);
        let p = pow(&z, &w);
        assert!(close(&p, &exp(&(w * ln(&z))), 1e-45));
        assert!(close(&powi(&z, -3), &(c(1.0, 0.0) / (z.clone() * z.clone() * z)), 1e-44));
    }
}
