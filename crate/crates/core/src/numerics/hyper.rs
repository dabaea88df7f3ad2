//! Generalized hypergeometric series and the principal branch of `2F1`.

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::gamma::{gamma, rgamma};
use crate::error::{Error, Result};
use crate::float::{complex as cx, ApproxComplex, Real};

fn c<R: Real>(v: i64, prec: u32) -> Complex<R> {
    cx::from_i64(v, prec)
}

fn nonpositive_int<R: Real>(z: &Complex<R>) -> Option<i64> {
    if !z.im.is_zero() {
        return None;
    }
    let n: i64 = z.re.as_integer()?.try_into().ok()?;
    (n <= 0).then_some(n)
}

/// `pFq(a; b; z)` by its power series.
///
/// Terminates when some `a_i` is a nonpositive integer; otherwise needs
/// `p <= q` or `p = q + 1` with `|z| < 1`. The tail is bounded geometrically
/// once the term ratio is provably below one.
pub fn pfq<R: Real>(a: &[Complex<R>], b: &[Complex<R>], z: &Complex<R>, prec: u32) -> Result<ApproxComplex<R>> {
    let wp = prec + 24;
    let a: Vec<_> = a.iter().map(|x| cx::with_prec(x, wp)).collect();
    let b: Vec<_> = b.iter().map(|x| cx::with_prec(x, wp)).collect();
    let z = cx::with_prec(z, wp);
    let terminating = a.iter().filter_map(nonpositive_int).map(|n| -n).min();
    let zabs = cx::abs_f64(&z);
    if terminating.is_none() {
        for (j, bj) in b.iter().enumerate() {
            if nonpositive_int(bj).is_some() {
                return Err(Error::PoleError(format!("lower parameter b_{j} is a nonpositive integer")));
            }
        }
        if a.len() > b.len() + 1 || (a.len() == b.len() + 1 && zabs >= 1.0) {
            return Err(Error::OutOfDomain(format!("{}F{} series diverges at |z| = {zabs}", a.len(), b.len())));
        }
    }
    let amax = a.iter().map(cx::abs_f64).fold(0.0, f64::max);
    let bmax = b.iter().map(cx::abs_f64).fold(0.0, f64::max);
    let mut sum = c::<R>(0, wp);
    let mut term = c::<R>(1, wp);
    let mut k: u64 = 0;
    let mut smax = 0f64;
    loop {
        sum = sum + term.clone();
        let tabs = cx::abs_f64(&term);
        smax = smax.max(cx::abs_f64(&sum));
        if let Some(n) = terminating {
            if k as i64 >= n {
                break;
            }
        } else if tabs == 0.0 && k > 0 {
            break;
        } else if (k as f64) > 2.0 * bmax + 1.0 {
            // ratio bound for all later terms
            let kf = k as f64 + 1.0;
            let mut rho = zabs / (kf + 1.0);
            for _ in &a {
                rho *= kf + amax;
            }
            for _ in &b {
                rho /= kf - bmax;
            }
            if rho < 0.5 {
                let tail = tabs * rho / (1.0 - rho);
                if tail <= smax * (-(prec as f64) - 8.0).exp2() {
                    let r = tail + smax * (k as f64 + 4.0) * (-(wp as f64)).exp2();
                    return Ok(ApproxComplex::new(sum, r));
                }
            }
        }
        if k > 5_000_000 {
            return Err(Error::PrecisionUnreachable(prec));
        }
        let kk = c::<R>(k as i64, wp);
        let mut num = z.clone();
        for ai in &a {
            num = num * (ai.clone() + kk.clone());
        }
        let mut den = c::<R>(k as i64 + 1, wp);
        for bi in &b {
            den = den * (bi.clone() + kk.clone());
        }
        term = term * num / den;
        k += 1;
    }
    let r = smax * (k as f64 + 4.0) * (-(wp as f64)).exp2();
    Ok(ApproxComplex::new(sum, r))
}

/// Side of the cut `(1, oo)` from which `z` is approached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Above,
    Below,
}

/// Principal branch of `2F1(a, b; c; z)`; `BranchCutAmbiguous` on `(1, oo)`.
pub fn hyp2f1<R: Real>(a: &Complex<R>, b: &Complex<R>, cc: &Complex<R>, z: &Complex<R>, prec: u32) -> Result<ApproxComplex<R>> {
    hyp2f1_side(a, b, cc, z, None, prec)
}

pub fn hyp2f1_side<R: Real>(
    a: &Complex<R>,
    b: &Complex<R>,
    cc: &Complex<R>,
    z: &Complex<R>,
    side: Option<Side>,
    prec: u32,
) -> Result<ApproxComplex<R>> {
    let wp = prec + 16;
    let one = c::<R>(1, wp);
    if z.is_zero() {
        return Ok(ApproxComplex::new(one, 0.0));
    }
    let p = [a.clone(), b.clone()];
    let q = [cc.clone()];
    if nonpositive_int(a).is_some() || nonpositive_int(b).is_some() {
        return pfq(&p, &q, z, prec);
    }
    let on_cut = z.im.is_zero() && z.re > R::from_i64(1, 0);
    if on_cut && side.is_none() {
        return Err(Error::BranchCutAmbiguous);
    }
    if z.im.is_zero() && z.re == R::from_i64(1, 0) {
        return gauss_at_one(a, b, cc, prec);
    }
    let zabs = cx::abs_f64(z);
    if zabs <= 0.75 {
        return pfq(&p, &q, z, prec);
    }
    let w = z.clone() / (z.clone() - one.clone());
    if cx::abs_f64(&w) <= 0.75 {
        // Pfaff: (1-z)^(-a) 2F1(a, c-b; c; z/(z-1))
        let f = pfq(&[a.clone(), cc.clone() - b.clone()], &q, &w, prec + 8)?;
        let pre = cx::pow(&(one - z.clone()), &(-a.clone()));
        let v = pre.clone() * f.value;
        let r = cx::abs_f64(&pre) * f.radius + cx::abs_f64(&v) * (-(prec as f64) - 4.0).exp2();
        return Ok(ApproxComplex::new(v, r));
    }
    ode_continuation(a, b, cc, z, side, prec)
}

/// Gauss: `Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b))` for `Re(c-a-b) > 0`.
pub fn gauss_at_one<R: Real>(a: &Complex<R>, b: &Complex<R>, cc: &Complex<R>, prec: u32) -> Result<ApproxComplex<R>> {
    let wp = prec + 16;
    let s = cc.clone() - a.clone() - b.clone();
    if s.re <= R::from_i64(0, 0) {
        return Err(Error::OutOfDomain("2F1 at z = 1 needs Re(c - a - b) > 0".into()));
    }
    let g1 = gamma(cc, wp)?;
    let g2 = gamma(&s, wp)?;
    let r1 = rgamma(&(cc.clone() - a.clone()), wp);
    let r2 = rgamma(&(cc.clone() - b.clone()), wp);
    let v = g1.value * g2.value * r1.value * r2.value;
    let r = cx::abs_f64(&v) * (-(prec as f64) - 2.0).exp2();
    Ok(ApproxComplex::new(v, r))
}

/// One Taylor step of the hypergeometric equation
/// `z(1-z) w'' + (c - (a+b+1) z) w' - a b w = 0` from `zc` to `zc + h`.
fn taylor_step<R: Real>(
    a: &Complex<R>,
    b: &Complex<R>,
    cc: &Complex<R>,
    zc: &Complex<R>,
    w: &Complex<R>,
    dw: &Complex<R>,
    h: &Complex<R>,
    wp: u32,
) -> (Complex<R>, Complex<R>, usize) {
    let one = c::<R>(1, wp);
    let p0 = zc.clone() * (one.clone() - zc.clone());
    let p1 = one.clone() - zc.clone() * c::<R>(2, wp);
    let s1 = a.clone() + b.clone() + one;
    let q0 = cc.clone() - s1.clone() * zc.clone();
    let q1 = -s1;
    let ab = a.clone() * b.clone();
    let mut cs = vec![w.clone(), dw.clone()];
    let mut val = w.clone() + dw.clone() * h.clone();
    let mut dval = dw.clone();
    let mut hp = h.clone();
    let scale = cx::abs_f64(w).max(cx::abs_f64(dw) * cx::abs_f64(h)).max(1e-300);
    let tiny = (-(wp as f64) - 4.0).exp2() * scale;
    let mut small_run = 0;
    let mut n = 0usize;
    loop {
        let nn = c::<R>(n as i64, wp);
        let n1 = c::<R>(n as i64 + 1, wp);
        let n2 = c::<R>(n as i64 + 2, wp);
        let t1 = (p1.clone() * nn.clone() + q0.clone()) * n1.clone() * cs[n + 1].clone();
        let t0 = (-(nn.clone() * (nn.clone() - c::<R>(1, wp))) + q1.clone() * nn.clone() - ab.clone()) * cs[n].clone();
        let next = -(t1 + t0) / (p0.clone() * n2.clone() * n1.clone());
        // derivative term uses h^(n+1) before the next power is formed
        let dterm = next.clone() * n2 * hp.clone();
        hp = hp * h.clone();
        let term = next.clone() * hp.clone();
        val = val + term.clone();
        dval = dval + dterm.clone();
        cs.push(next);
        n += 1;
        if cx::abs_f64(&term) < tiny && cx::abs_f64(&dterm) * cx::abs_f64(h) < tiny {
            small_run += 1;
            if small_run >= 4 {
                return (val, dval, n);
            }
        } else {
            small_run = 0;
        }
        if n > 20 * wp as usize {
            return (val, dval, n);
        }
    }
}

fn ode_continuation<R: Real>(
    a: &Complex<R>,
    b: &Complex<R>,
    cc: &Complex<R>,
    z: &Complex<R>,
    side: Option<Side>,
    prec: u32,
) -> Result<ApproxComplex<R>> {
    let wp = prec + 40;
    let (a, b, cc, z) = (cx::with_prec(a, wp), cx::with_prec(b, wp), cx::with_prec(cc, wp), cx::with_prec(z, wp));
    let half = R::from_ratio(&1.into(), &2.into(), wp);
    let zabs = cx::abs(&z);
    // waypoints: a start inside |z| = 1/2, then (for a declared side of the
    // cut) a detour through the chosen half plane
    let mut pts: Vec<Complex<R>> = Vec::new();
    match side {
        Some(s) if z.im.is_zero() => {
            let im = if s == Side::Above { half.clone() } else { -half.clone() };
            pts.push(Complex::new(half.clone() * half.clone(), R::from_i64(0, wp)));
            pts.push(Complex::new(R::from_i64(1, wp), im));
            pts.push(z.clone());
        }
        _ => {
            let start = z.clone() * cx::real(half.clone() / zabs);
            pts.push(start);
            pts.push(z.clone());
        }
    }
    let z0 = pts[0].clone();
    let p = [a.clone(), b.clone()];
    let w0 = pfq(&p, std::slice::from_ref(&cc), &z0, wp)?;
    let one = c::<R>(1, wp);
    let dp = [a.clone() + one.clone(), b.clone() + one.clone()];
    let d0 = pfq(&dp, &[cc.clone() + one.clone()], &z0, wp)?;
    let mut w = w0.value;
    let mut dw = d0.value * a.clone() * b.clone() / cc.clone();
    let mut zc = z0;
    let mut steps = 0usize;
    for target in &pts[1..] {
        loop {
            let rem = target.clone() - zc.clone();
            let dist = cx::abs_f64(&rem);
            if dist == 0.0 {
                break;
            }
            let rho = cx::abs_f64(&zc).min(cx::abs_f64(&(one.clone() - zc.clone())));
            let step = rho / 2.5;
            let h = if dist <= step { rem } else { rem * cx::real(R::from_f64(step / dist, wp)) };
            let (nw, ndw, _) = taylor_step(&a, &b, &cc, &zc, &w, &dw, &h, wp);
            w = nw;
            dw = ndw;
            zc = if dist <= step { target.clone() } else { zc + h };
            steps += 1;
            if steps > 10_000 {
                return Err(Error::PrecisionUnreachable(prec));
            }
        }
    }
    let r = cx::abs_f64(&w).max(1.0) * (steps as f64 + 2.0) * (-(prec as f64) - 8.0).exp2();
    Ok(ApproxComplex::new(cx::with_prec(&w, prec + 8), r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::float::BigFloat;

    const P: u32 = 200;

    fn r(x: f64) -> Complex<BigFloat> {
        cx::real(BigFloat::from_f64(x, P))
    }

    fn q(a: i64, b: i64) -> Complex<BigFloat> {
        cx::real(BigFloat::from_ratio(&a.into(), &b.into(), P))
    }

    fn dec(re: &str, im: &str) -> Complex<BigFloat> {
        Complex::new(BigFloat::parse_decimal(re, P).unwrap(), BigFloat::parse_decimal(im, P).unwrap())
    }

    #[test]
    fn trivial_and_terminating() {
        let v = hyp2f1(&q(1, 3), &q(2, 5), &q(7, 4), &r(0.0), P).unwrap();
        assert!(cx::close(&v.value, &r(1.0), 0.0));
        // 2F1(-2, 1; 1; z) = (1 - z)^2
        let v = hyp2f1(&r(-2.0), &r(1.0), &r(1.0), &r(3.0), P).unwrap();
        assert!(cx::close(&v.value, &r(4.0), 1e-55));
    }

    #[test]
    fn elementary_identities() {
        // 2F1(1, 1; 2; z) = -ln(1 - z) / z, across all three regimes
        for z in [dec("0.3", "0.2"), dec("-3.5", "0.5"), dec("0.9", "0.6"), dec("1.5", "-0.01"), dec("-40", "3")] {
            let v = hyp2f1(&r(1.0), &r(1.0), &r(2.0), &z, P).unwrap();
            let one = r(1.0);
            let want = -cx::ln(&(one - z.clone())) / z.clone();
            let d = cx::dist_f64(&v.value, &want);
            assert!(d < 1e-55, "z = {:?}: {d:e}", z);
            assert!(v.radius < 1e-50);
        }
    }

    #[test]
    fn gauss_value_and_lemniscate() {
        // 2F1(1/2, 1/2; 1; 1/2) = Gamma(1/4)^2 / (2 pi^(3/2))
        let v = hyp2f1(&q(1, 2), &q(1, 2), &r(1.0), &q(1, 2), P).unwrap();
        let g = super::super::gamma::gamma_rational::<BigFloat>(1, 4, P);
        let pi = BigFloat::pi(P);
        let want = g.clone() * g / (BigFloat::from_i64(2, 0) * pi.clone() * pi.sqrt());
        assert!((v.value.re - want).abs().to_f64() < 1e-55);
        // Gauss: 2F1(1/2, 1/2; 2; 1) = 4 / pi
        let v = hyp2f1(&q(1, 2), &q(1, 2), &r(2.0), &r(1.0), P).unwrap();
        let want = BigFloat::from_i64(4, 0) / BigFloat::pi(P);
        assert!((v.value.re - want).abs().to_f64() < 1e-55);
    }

    #[test]
    fn continuation_matches_reference() {
        // values from an independent multiprecision library
        let s3 = BigFloat::from_i64(3, P).sqrt() / BigFloat::from_i64(2, 0);
        let z = Complex::new(BigFloat::from_ratio(&1.into(), &2.into(), P), -s3);
        let v = hyp2f1(&q(1, 2), &q(1, 2), &r(1.0), &z, P).unwrap();
        let want = dec("0.98274143349164123997896663266809715152677834707593", "-0.26332477347268915557587566572954339250285565168103");
        assert!(cx::dist_f64(&v.value, &want) < 1e-45, "{:?}", v.value);
    }

    #[test]
    fn branch_cut_needs_a_side() {
        let z = r(3.0);
        assert!(matches!(hyp2f1(&q(1, 2), &q(1, 2), &r(1.0), &z, P), Err(Error::BranchCutAmbiguous)));
        let up = hyp2f1_side(&r(1.0), &r(1.0), &r(2.0), &z, Some(Side::Above), P).unwrap();
        let dn = hyp2f1_side(&r(1.0), &r(1.0), &r(2.0), &z, Some(Side::Below), P).unwrap();
        // -ln(1 - z)/z with 1 - z = -2 -/+ i0
        let pi = BigFloat::pi(P);
        let want_im = pi / BigFloat::from_i64(3, 0);
        let ln2 = BigFloat::ln2(P);
        let want_re = -ln2 / BigFloat::from_i64(3, 0);
        assert!((up.value.re.clone() - want_re.clone()).abs().to_f64() < 1e-50);
        assert!((up.value.im.clone() - want_im.clone()).abs().to_f64() < 1e-50);
        assert!((dn.value.im.clone() + want_im).abs().to_f64() < 1e-50);
    }

    #[test]
    fn pfq_domain() {
        assert!(matches!(pfq(&[r(0.5), r(0.5), r(0.5)], &[r(1.0), r(1.0)], &r(1.0), P), Err(Error::OutOfDomain(_))));
        assert!(matches!(pfq(&[r(0.5)], &[r(-2.0)], &r(0.5), P), Err(Error::PoleError(_))));
        // 0F0(;;z) = e^z
        let v = pfq::<BigFloat>(&[], &[], &r(2.0), P).unwrap();
        let want = BigFloat::from_i64(2, P).exp();
        assert!((v.value.re - want).abs().to_f64() < 1e-55);
    }
}
