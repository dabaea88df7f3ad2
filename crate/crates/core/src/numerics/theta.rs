//! Jacobi theta constants and the modular lambda function.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::float::{complex as cx, ApproxComplex, Real};

/// Truncation `N` and certified tail for `sum_{n > N} 2 |q|^(n^2)`, `|q| = r < 1`.
fn tail(r: f64, n: u64) -> f64 {
    let n = n as f64;
    2.0 * r.powf((n + 1.0) * (n + 1.0)) / (1.0 - r.powf(2.0 * n + 3.0))
}

fn nome<R: Real>(tau: &Complex<R>, wp: u32) -> Result<(Complex<R>, f64)> {
    if tau.im <= R::from_i64(0, 0) {
        return Err(Error::OutOfDomain("theta constants need Im tau > 0".into()));
    }
    let pi = R::pi(wp);
    let q = cx::exp(&(Complex::new(R::from_i64(0, wp), pi) * cx::with_prec(tau, wp)));
    let r = (-std::f64::consts::PI * tau.im.to_f64()).exp();
    Ok((q, r))
}

/// `theta3(tau) = sum_n exp(pi i tau n^2)`.
pub fn theta3<R: Real>(tau: &Complex<R>, prec: u32) -> Result<ApproxComplex<R>> {
    let wp = prec + 20;
    let (q, r) = nome(tau, wp)?;
    let eps = (-(prec as f64) - 8.0).exp2();
    let mut sum = cx::from_i64::<R>(1, wp);
    // q^(n^2) built from q^((n-1)^2) q^(2n-1)
    let q2 = q.clone() * q.clone();
    let mut step = q.clone();
    let mut pw = cx::from_i64::<R>(1, wp);
    let two = cx::from_i64::<R>(2, wp);
    let mut n = 0u64;
    loop {
        n += 1;
        pw = pw * step.clone();
        step = step * q2.clone();
        sum = sum + two.clone() * pw.clone();
        let t = tail(r, n);
        if t < eps || n > 100_000 {
            let rad = t + (n as f64 + 2.0) * (-(wp as f64)).exp2() * cx::abs_f64(&sum).max(1.0);
            return Ok(ApproxComplex::new(sum, rad));
        }
    }
}

/// `theta2(tau) = sum_n exp(pi i tau (n + 1/2)^2) = 2 q^(1/4) sum_{m >= 0} q^(m(m+1))`.
pub fn theta2<R: Real>(tau: &Complex<R>, prec: u32) -> Result<ApproxComplex<R>> {
    let wp = prec + 20;
    let (q, r) = nome(tau, wp)?;
    let pi = R::pi(wp);
    let quarter = R::from_ratio(&1.into(), &4.into(), wp);
    let q4 = cx::exp(&(Complex::new(R::from_i64(0, wp), pi * quarter) * cx::with_prec(tau, wp)));
    let eps = (-(prec as f64) - 8.0).exp2();
    let mut sum = cx::from_i64::<R>(1, wp);
    let q2 = q.clone() * q.clone();
    // q^(m(m+1)) from q^((m-1)m) q^(2m)
    let mut step = q2.clone();
    let mut pw = cx::from_i64::<R>(1, wp);
    let mut m = 0u64;
    loop {
        m += 1;
        pw = pw * step.clone();
        step = step * q2.clone();
        sum = sum + pw.clone();
        // remaining m' > m: |q|^(m'(m'+1)) <= |q|^(m'^2), half of `tail`
        let t = tail(r, m) / 2.0;
        if t < eps || m > 100_000 {
            let v = cx::from_i64::<R>(2, wp) * q4.clone() * sum;
            let scale = 2.0 * cx::abs_f64(&q4);
            let rad = scale * t + (m as f64 + 2.0) * (-(wp as f64)).exp2() * cx::abs_f64(&v).max(1.0);
            return Ok(ApproxComplex::new(v, rad));
        }
    }
}

/// `lambda(tau) = (theta2 / theta3)^4`.
pub fn modular_lambda<R: Real>(tau: &Complex<R>, prec: u32) -> Result<ApproxComplex<R>> {
    let t2 = theta2(tau, prec + 16)?;
    let t3 = theta3(tau, prec + 16)?;
    let ratio = t2.div(&t3);
    let sq = ratio.clone() * ratio;
    Ok(sq.clone() * sq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::float::BigFloat;
    use super::super::hyper::hyp2f1;

    const P: u32 = 200;

    #[test]
    fn theta_at_i() {
        // theta3(i) = pi^(1/4) / Gamma(3/4), lambda(i) = 1/2
        let tau = Complex::new(BigFloat::from_i64(0, P), BigFloat::from_i64(1, P));
        let t3 = theta3(&tau, P).unwrap();
        let pi = BigFloat::pi(P);
        let g = super::super::gamma::gamma_rational::<BigFloat>(3, 4, P);
        let want = pi.sqrt().sqrt() / g;
        assert!((t3.value.re.clone() - want).abs().to_f64() < 1e-55);
        let l = modular_lambda(&tau, P).unwrap();
        assert!((l.value.re - BigFloat::from_ratio(&1.into(), &2.into(), P)).abs().to_f64() < 1e-55);
    }

    #[test]
    fn inversion_of_lambda() {
        // theta3(tau)^2 = 2F1(1/2, 1/2; 1; lambda(tau)) near tau = i
        let tau = Complex::new(BigFloat::parse_decimal("0.2", P).unwrap(), BigFloat::parse_decimal("1.3", P).unwrap());
        let l = modular_lambda(&tau, P).unwrap();
        let t3 = theta3(&tau, P).unwrap().value;
        let h = BigFloat::from_ratio(&1.into(), &2.into(), P);
        let f = hyp2f1(&cx::real(h.clone()), &cx::real(h), &cx::from_i64(1, P), &l.value, P).unwrap();
        assert!(cx::dist_f64(&f.value, &(t3.clone() * t3)) < 1e-50);
        assert!(l.radius < 1e-50);
    }

    #[test]
    fn rejects_lower_half_plane() {
        let tau = Complex::new(BigFloat::from_i64(0, P), BigFloat::from_i64(-1, P));
        assert!(theta3(&tau, P).is_err());
    }
}
