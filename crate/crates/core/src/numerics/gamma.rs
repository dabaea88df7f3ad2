//! Complex gamma function and binomial coefficients with complex entries.

use num_complex::Complex;

use super::bernoulli::bernoulli;
use crate::error::{Error, Result};
use crate::float::{complex as cx, ApproxComplex, Real};

/// Nonpositive integer value of `z`, if any.
fn nonpositive_integer<R: Real>(z: &Complex<R>) -> Option<i64> {
    if !z.im.is_zero() {
        return None;
    }
    let n = z.re.as_integer()?;
    let n: i64 = n.try_into().ok()?;
    (n <= 0).then_some(n)
}

fn c<R: Real>(v: i64, prec: u32) -> Complex<R> {
    cx::from_i64(v, prec)
}

/// `ln Gamma(w)` by Stirling's series, for `Re w >= |w| / 2` and `|w|` large
/// enough for `prec` bits. Only used under `exp`, so the branch is immaterial.
fn stirling<R: Real>(w: &Complex<R>, prec: u32) -> Complex<R> {
    let half = Complex::new(R::from_ratio(&1.into(), &2.into(), prec), R::from_i64(0, prec));
    let two_pi = R::pi(prec).mul_2exp(1);
    let mut s = (w.clone() - half.clone()) * cx::ln(w) - w.clone() + cx::real(two_pi.ln()) * half;
    let inv = c::<R>(1, prec) / w.clone();
    let inv2 = inv.clone() * inv.clone();
    let mut pw = inv;
    let target = -(prec as f64) - 8.0;
    for k in 1..400usize {
        let b = bernoulli(2 * k);
        let coef = R::from_ratio(b.numer(), &(b.denom() * (2 * k * (2 * k - 1))), prec);
        let term = pw.clone() * cx::real(coef);
        let lt = cx::log2_abs(&term);
        s = s + term;
        // Stirling remainder under |arg w| <= pi/3 is below 2^k times the first omitted term
        if lt + k as f64 <= target {
            break;
        }
        pw = pw * inv2.clone();
    }
    s
}

/// `Gamma(z)` to `prec` bits; `PoleError` at nonpositive integers.
pub fn gamma<R: Real>(z: &Complex<R>, prec: u32) -> Result<ApproxComplex<R>> {
    if let Some(n) = nonpositive_integer(z) {
        return Err(Error::PoleError(format!("Gamma has a pole at {n}")));
    }
    let wp = prec + 32;
    let z = cx::with_prec(z, wp);
    let v = gamma_raw(&z, wp);
    let r = cx::abs_f64(&v) * (-(prec as f64) - 4.0).exp2();
    Ok(ApproxComplex::new(cx::with_prec(&v, prec + 8), r))
}

fn gamma_raw<R: Real>(z: &Complex<R>, wp: u32) -> Complex<R> {
    let half = R::from_ratio(&1.into(), &2.into(), 0);
    if z.re < half {
        // reflection: Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
        let one_minus = c::<R>(1, wp) - z.clone();
        let g = gamma_raw(&one_minus, wp);
        let pi = cx::real(R::pi(wp));
        return pi / (cx::sin_pi(z) * g);
    }
    let extra = (cx::log2_abs(z).max(0.0) as u32) / 4;
    let wp = wp + 8 + extra;
    let need = wp as f64 * 0.3 + 10.0;
    let need_re = (cx::abs_f64(z) * 0.9).max(need);
    let shift = if z.re.to_f64() >= need_re { 0 } else { (need_re - z.re.to_f64()).ceil() as i64 };
    let w = z.clone() + c::<R>(shift, wp);
    let lg = stirling(&w, wp);
    let mut prod = c::<R>(1, wp);
    for j in 0..shift {
        prod = prod * (z.clone() + c::<R>(j, wp));
    }
    cx::exp(&lg) / prod
}

/// `1 / Gamma(z)`, entire; exact zero at the poles of `Gamma`.
pub fn rgamma<R: Real>(z: &Complex<R>, prec: u32) -> ApproxComplex<R> {
    if nonpositive_integer(z).is_some() {
        return ApproxComplex::new(c(0, prec), 0.0);
    }
    let wp = prec + 32;
    let v = c::<R>(1, wp) / gamma_raw(&cx::with_prec(z, wp), wp);
    let r = cx::abs_f64(&v) * (-(prec as f64) - 4.0).exp2();
    ApproxComplex::new(cx::with_prec(&v, prec + 8), r)
}

/// `binom(x, k) = x (x-1) ... (x-k+1) / k!` for integer `k >= 0`.
pub fn gen_binomial<R: Real>(x: &Complex<R>, k: u64, prec: u32) -> ApproxComplex<R> {
    let wp = prec + 16 + (64 - k.leading_zeros());
    let x = cx::with_prec(x, wp);
    let mut v = c::<R>(1, wp);
    for j in 0..k {
        let j = j as i64;
        v = v * (x.clone() - c::<R>(j, wp)) / c::<R>(j + 1, wp);
    }
    let r = cx::abs_f64(&v) * (-(prec as f64) - 4.0).exp2();
    ApproxComplex::new(v, r)
}

/// `binom(x, y) = Gamma(x+1) / (Gamma(y+1) Gamma(x-y+1))` for complex `x`, `y`.
/// Zero where only a denominator gamma has a pole; `PoleAt` where `x + 1`
/// is a nonpositive integer.
pub fn binomial_general<R: Real>(x: &Complex<R>, y: &Complex<R>, prec: u32) -> Result<ApproxComplex<R>> {
    let one = c::<R>(1, prec);
    let xp = x.clone() + one.clone();
    if nonpositive_integer(&xp).is_some() {
        return Err(Error::PoleAt(format!("binomial({}, {}) with x + 1 a pole of Gamma", x.re, y.re)));
    }
    let g = gamma(&xp, prec + 8)?;
    let a = rgamma(&(y.clone() + one.clone()), prec + 8);
    let b = rgamma(&(x.clone() - y.clone() + one), prec + 8);
    let v = g.value * a.value * b.value;
    let r = cx::abs_f64(&v) * (-(prec as f64) - 2.0).exp2();
    Ok(ApproxComplex::new(v, r))
}

/// Rising factorial `(a)_n`.
pub fn pochhammer<R: Real>(a: &Complex<R>, n: u64) -> Complex<R> {
    let p = cx::prec_of(a);
    let mut v = c::<R>(1, p);
    for j in 0..n {
        v = v * (a.clone() + c::<R>(j as i64, p));
    }
    v
}

/// `Gamma` at a positive rational `num / den`, real-valued.
pub fn gamma_rational<R: Real>(num: i64, den: i64, prec: u32) -> R {
    let z = Complex::new(R::from_ratio(&num.into(), &den.into(), prec + 32), R::zero());
    gamma(&z, prec).expect("positive rational argument").value.re
}
