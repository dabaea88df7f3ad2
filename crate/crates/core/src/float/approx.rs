use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

use super::{complex as cx, Real};

/// A value with an absolute error bound.
#[derive(Clone, Debug)]
pub struct Approx<T> {
    pub value: T,
    pub radius: f64,
}

pub type ApproxReal<R = super::BigFloat> = Approx<R>;
pub type ApproxComplex<R = super::BigFloat> = Approx<Complex<R>>;

/// Magnitude and working precision of a scalar, as seen by radius bookkeeping.
pub trait Measured {
    fn log2_mag(&self) -> f64;
    fn bits(&self) -> u32;
    fn mag(&self) -> f64 {
        let l = self.log2_mag();
        if l < -1070.0 {
            0.0
        } else {
            l.exp2()
        }
    }
    /// Rounding error of one operation producing a value of this size.
    fn ulp(&self) -> f64 {
        let l = self.log2_mag() - self.bits() as f64 + 1.0;
        if l < -1070.0 {
            0.0
        } else {
            l.exp2()
        }
    }
}

impl<R: Real> Measured for R {
    fn log2_mag(&self) -> f64 {
        self.log2_abs()
    }
    fn bits(&self) -> u32 {
        self.prec()
    }
}

impl<R: Real> Measured for Complex<R> {
    fn log2_mag(&self) -> f64 {
        cx::log2_abs(self)
    }
    fn bits(&self) -> u32 {
        cx::prec_of(self)
    }
}

fn up(x: f64) -> f64 {
    x * (1.0 + 1e-12)
}

impl<T: Measured + Clone> Approx<T> {
    pub fn new(value: T, radius: f64) -> Self {
        Approx { value, radius }
    }

    /// Value known up to its own rounding.
    pub fn rounded(value: T) -> Self {
        let r = value.ulp();
        Approx { value, radius: r }
    }

    pub fn widen(mut self, extra: f64) -> Self {
        self.radius = up(self.radius + extra);
        self
    }

    /// Relative radius, or infinity at zero.
    pub fn rel_radius(&self) -> f64 {
        self.radius / self.value.mag()
    }
}

impl<R: Real> Approx<R> {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// `|self - other|` plus both radii: a bound on the distance of the true values.
    pub fn distance_bound(&self, other: &Self) -> f64 {
        let d = (self.value.clone() - other.value.clone()).abs();
        up(d.mag() + self.radius + other.radius)
    }

    pub fn abs_diff(&self, other: &Self) -> f64 {
        (self.value.clone() - other.value.clone()).abs().mag()
    }

    /// True when the two enclosures certify agreement to within `tol`.
    pub fn agrees_with(&self, other: &Self, tol: f64) -> bool {
        self.distance_bound(other) < tol
    }

    pub fn to_complex(&self) -> ApproxComplex<R> {
        Approx { value: cx::real(self.value.clone()), radius: self.radius }
    }
}

impl<R: Real> Approx<Complex<R>> {
    pub fn distance_bound(&self, other: &Self) -> f64 {
        up(cx::dist_f64(&self.value, &other.value) + self.radius + other.radius)
    }

    pub fn re(&self) -> Approx<R> {
        Approx { value: self.value.re.clone(), radius: self.radius }
    }

    /// The real part, when the imaginary part is within the radius of zero.
    pub fn real_part_if_real(&self) -> Option<Approx<R>> {
        let im = self.value.im.abs().mag();
        (im <= self.radius.max(self.value.ulp()) * 4.0 + f64::MIN_POSITIVE).then(|| self.re())
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let b = rhs.value.mag();
        let v = self.value.clone() / rhs.value.clone();
        let q = v.mag();
        let r = if rhs.radius >= b {
            f64::INFINITY
        } else {
            up((self.radius + q * rhs.radius) / (b - rhs.radius) + 2.0 * v.ulp())
        };
        Approx { value: v, radius: r }
    }

    pub fn scale(&self, c: &Complex<R>) -> Self {
        let v = self.value.clone() * c.clone();
        Approx { value: v.clone(), radius: up(self.radius * c.mag() + 2.0 * v.ulp()) }
    }
}

impl<T: Measured + Clone + Add<Output = T>> Add for Approx<T> {
    type Output = Approx<T>;
    fn add(self, rhs: Self) -> Self {
        let v = self.value + rhs.value;
        let r = up(self.radius + rhs.radius + v.ulp());
        Approx { value: v, radius: r }
    }
}

impl<T: Measured + Clone + Sub<Output = T>> Sub for Approx<T> {
    type Output = Approx<T>;
    fn sub(self, rhs: Self) -> Self {
        let v = self.value - rhs.value;
        let r = up(self.radius + rhs.radius + v.ulp());
        Approx { value: v, radius: r }
    }
}

impl<T: Measured + Clone + Mul<Output = T>> Mul for Approx<T> {
    type Output = Approx<T>;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (self.value.mag(), rhs.value.mag());
        let v = self.value * rhs.value;
        let r = up(a * rhs.radius + b * self.radius + self.radius * rhs.radius + v.ulp());
        Approx { value: v, radius: r }
    }
}

impl<T: Neg<Output = T>> Neg for Approx<T> {
    type Output = Approx<T>;
    fn neg(self) -> Self {
        Approx { value: -self.value, radius: self.radius }
    }
}

impl<R: Real> Approx<R> {
    pub fn div(&self, rhs: &Self) -> Self {
        let b = rhs.value.mag();
        let v = self.value.clone() / rhs.value.clone();
        let q = v.mag();
        let r = if rhs.radius >= b {
            f64::INFINITY
        } else {
            up((self.radius + q * rhs.radius) / (b - rhs.radius) + v.ulp())
        };
        Approx { value: v, radius: r }
    }

    pub fn scale(&self, c: &R) -> Self {
        let v = self.value.clone() * c.clone();
        Approx { value: v.clone(), radius: up(self.radius * c.mag() + v.ulp()) }
    }
}

impl<R: Real> fmt::Display for Approx<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} +/- {:.1e}", self.value, self.radius)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::float::BigFloat;

    #[test]
    fn radius_propagates() {
        let a = Approx::new(BigFloat::from_f64(1.5, 128), 1e-20);
        let b = Approx::new(BigFloat::from_f64(-2.0, 128), 1e-21);
        let p = a.clone() * b.clone();
        assert!(p.radius >= 2.0 * 1e-20 && p.radius < 3.3e-20);
        let s = a.clone() + b.clone();
        assert!(s.radius >= 1.1e-20);
        let q = a.div(&b);
        assert!(q.radius > 5e-21 && q.radius < 6e-21);
        assert!(a.agrees_with(&Approx::new(BigFloat::from_f64(1.5, 128), 0.0), 1e-19));
        assert!(!a.agrees_with(&b, 1.0));
    }
}
