//! Exact r/s tables, the constants alpha_k, Hurwitz numbers, Eisenstein
//! series at `i` and `2i` and the lemniscate constant.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::float::{complex as cx, ApproxComplex, ApproxReal, BigFloat, Real};
use crate::numerics::checks::NUMERIC_TOLERANCE;
use crate::numerics::{bernoulli, gamma_rational, theta3};
use crate::report::{ClaimClass, Report};
use crate::sequences::binomial;

fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// `r_n` (n >= 2) and `s_n` (n >= 1) from
/// `(2n+1)(n-3) u_n = 3 sum_{k=2}^{n-2} u_k u_{n-k}` for `n >= 4`.
#[derive(Clone, Debug, PartialEq)]
pub struct RSTables {
    /// `r[n]`, entries 0 and 1 unused (zero)
    pub r: Vec<BigRational>,
    /// `s[n]`, entry 0 unused
    pub s: Vec<BigRational>,
    pub n_max: usize,
}

impl RSTables {
    pub fn r(&self, n: usize) -> Result<&BigRational> {
        if !(2..=self.n_max).contains(&n) {
            return Err(Error::OutOfDomain(format!("r_{n} outside 2..={}", self.n_max)));
        }
        Ok(&self.r[n])
    }

    pub fn s(&self, n: usize) -> Result<&BigRational> {
        if !(1..=self.n_max).contains(&n) {
            return Err(Error::OutOfDomain(format!("s_{n} outside 1..={}", self.n_max)));
        }
        Ok(&self.s[n])
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("n\tr_n\ts_n\n");
        for n in 1..=self.n_max {
            let r = if n >= 2 { self.r[n].to_string() } else { "-".into() };
            let _ = writeln!(out, "{n}\t{r}\t{}", self.s[n]);
        }
        out
    }
}

fn extend(u: &mut [BigRational], n_max: usize) {
    for n in 4..=n_max {
        let mut acc = BigRational::zero();
        for k in 2..=n - 2 {
            acc += &u[k] * &u[n - k];
        }
        let den = BigInt::from((2 * n as i64 + 1) * (n as i64 - 3));
        u[n] = acc * BigInt::from(3) / den;
    }
}

pub fn build_rs(n_max: usize) -> Result<RSTables> {
    if n_max < 4 {
        return Err(Error::OutOfDomain("build_rs needs n_max >= 4".into()));
    }
    let mut r = vec![BigRational::zero(); n_max + 1];
    r[2] = rat(1, 5);
    extend(&mut r, n_max);
    let mut s = vec![BigRational::zero(); n_max + 1];
    s[1] = rat(1, 4);
    s[2] = rat(11, 80);
    s[3] = rat(1, 32);
    extend(&mut s, n_max);
    Ok(RSTables { r, s, n_max })
}

/// `alpha_k = 2^((k+1)/2) (k-2) * (2 / r_((k-1)/2)` if `k = 1 mod 4`,
/// `1 / s_((k-1)/2)` if `k = 3 mod 4)`.
pub fn alpha(k: u32) -> Result<BigRational> {
    if k < 3 || k.is_multiple_of(2) {
        return Err(Error::OutOfDomain(format!("alpha_k needs odd k >= 3, got {k}")));
    }
    let h = ((k - 1) / 2) as usize;
    let t = build_rs(h.max(4))?;
    let inv = if k % 4 == 1 {
        let r = t.r(h)?;
        if r.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        BigRational::from_integer(2.into()) / r
    } else {
        let s = t.s(h)?;
        if s.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        BigRational::one() / s
    };
    let pow2 = BigInt::one() << k.div_ceil(2);
    Ok(inv * BigRational::from_integer(pow2 * BigInt::from(k - 2)))
}

/// Hurwitz numbers `E_1 .. E_lmax`.
#[derive(Clone, Debug, PartialEq)]
pub struct HurwitzTable {
    /// `e[l]`, entry 0 unused
    pub e: Vec<BigRational>,
}

/// `E_1 = 1/10`, `E_n = 3/((2n-3)(16n^2-1)) sum_{k=1}^{n-1} (4k-1)(4n-4k-1) C(4n,4k) E_k E_{n-k}`.
pub fn hurwitz_numbers(l_max: usize) -> Result<HurwitzTable> {
    if l_max < 1 {
        return Err(Error::OutOfDomain("hurwitz_numbers needs l_max >= 1".into()));
    }
    let mut e = vec![BigRational::zero(); l_max + 1];
    e[1] = rat(1, 10);
    for n in 2..=l_max {
        let mut acc = BigRational::zero();
        for k in 1..n {
            let c = BigInt::from((4 * k as i64 - 1) * (4 * (n - k) as i64 - 1)) * binomial(4 * n as u64, 4 * k as u64);
            acc += &e[k] * &e[n - k] * c;
        }
        let ni = n as i64;
        e[n] = acc * BigInt::from(3) / BigInt::from((2 * ni - 3) * (16 * ni * ni - 1));
    }
    Ok(HurwitzTable { e })
}

/// `(4n)! / 2^(4n) * r_(2n) / (4n - 1)`.
pub fn hurwitz_from_r(n: usize, t: &RSTables) -> Result<BigRational> {
    let r = t.r(2 * n)?;
    let mut f = BigInt::one();
    for j in 1..=(4 * n) as u64 {
        f *= j;
    }
    let den = (BigInt::one() << (4 * n)) * BigInt::from(4 * n as i64 - 1);
    Ok(r * BigRational::new(f, den))
}

/// The two CM points used here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CmPoint {
    I,
    TwoI,
}

impl CmPoint {
    fn imag(self) -> i64 {
        match self {
            CmPoint::I => 1,
            CmPoint::TwoI => 2,
        }
    }
}

/// `G_l(tau) = sum' 1/(n + m tau)^l` for even `l >= 4` from the Lipschitz
/// expansion `2 zeta(l) + 2 (2 pi i)^l / (l-1)! sum sigma_(l-1)(n) q^n`.
pub fn eisenstein_value(l: u32, tau: CmPoint, prec: u32) -> Result<ApproxReal<BigFloat>> {
    if l < 4 || l % 2 == 1 {
        return Err(Error::OutOfDomain(format!("G_l needs even l >= 4, got {l}")));
    }
    let wp = prec + 32;
    let pi = BigFloat::pi(wp);
    let two_pi = pi.mul_2exp(1);
    // 2 zeta(l) = (-1)^(l/2+1) B_l (2 pi)^l / l!
    let b = bernoulli(l as usize);
    let mut lf = BigInt::one();
    for j in 1..=l as u64 {
        lf *= j;
    }
    let tp = two_pi.powi(l as i64);
    let mut zeta2 = BigFloat::from_rational(&(b.abs() / BigRational::from_integer(lf.clone())), wp) * tp.clone();
    if zeta2.is_neg() {
        zeta2 = -zeta2;
    }
    // (2 pi i)^l = (-1)^(l/2) (2 pi)^l
    let lf1 = BigFloat::from_bigint(&(lf / BigInt::from(l)), wp);
    let mut coef = tp.mul_2exp(1) / lf1;
    if (l / 2) % 2 == 1 {
        coef = -coef;
    }
    let y = tau.imag();
    let qf = (-(two_pi.clone() * BigFloat::from_i64(y, wp))).exp();
    let qd = qf.to_f64();
    let eps = (-(prec as f64) - 10.0).exp2();
    let mut sum = BigFloat::from_i64(0, wp);
    let mut qn = BigFloat::from_i64(1, wp);
    let mut n: u64 = 0;
    loop {
        n += 1;
        qn = qn * qf.clone();
        let sig = sigma(n, l - 1);
        sum = sum + BigFloat::from_bigint(&sig, wp) * qn.clone();
        // sigma_(l-1)(m) <= zeta(l-1) m^(l-1) <= 2 m^(l-1); the tail is geometric past its peak
        let nf = n as f64 + 1.0;
        let tail_term = 2.0 * nf.powi(l as i32 - 1) * qd.powf(nf);
        let rho = qd * ((nf + 1.0) / nf).powi(l as i32 - 1);
        if rho < 0.5 && tail_term / (1.0 - rho) < eps {
            let tail = tail_term / (1.0 - rho);
            let v = zeta2 + coef.clone() * sum;
            let r = coef.abs().to_f64() * tail + v.abs().to_f64().max(1.0) * (-(wp as f64) + 8.0).exp2();
            return Ok(ApproxReal::new(v.with_prec(prec + 16), r));
        }
    }
}

fn sigma(n: u64, e: u32) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += BigInt::from(d).pow(e);
            let o = n / d;
            if o != d {
                s += BigInt::from(o).pow(e);
            }
        }
        d += 1;
    }
    s
}

/// Truncated lattice sum over `max(|n|, |m|) <= radius` in `f64`, with the
/// shell bound `8 R^(2-l) / (l-2)` (valid since `|n + m tau| >= max(|n|,|m|)`).
pub fn eisenstein_lattice_f64(l: u32, tau: CmPoint, radius: i64) -> (f64, f64) {
    let y = tau.imag() as f64;
    let mut s = Complex::new(0.0f64, 0.0);
    for m in -radius..=radius {
        for n in -radius..=radius {
            if n == 0 && m == 0 {
                continue;
            }
            let w = Complex::new(n as f64, m as f64 * y);
            s += w.powi(-(l as i32));
        }
    }
    let tail = 8.0 * (radius as f64).powi(2 - l as i32) / (l as f64 - 2.0);
    (s.re, tail + 1e-13 * s.norm().max(1.0))
}

/// Lattice sum with `R` chosen so that the shell bound is below `tol`.
pub fn eisenstein_lattice(l: u32, tau: CmPoint, tol: f64) -> Result<(f64, f64)> {
    if l < 4 || l % 2 == 1 {
        return Err(Error::OutOfDomain(format!("G_l needs even l >= 4, got {l}")));
    }
    let r = (8.0 / ((l as f64 - 2.0) * tol)).powf(1.0 / (l as f64 - 2.0)).ceil() as i64;
    Ok(eisenstein_lattice_f64(l, tau, r.max(1)))
}

/// `H_n(tau) = (2n-1) G_(2n)(tau)` numerically, `n >= 2`.
pub fn h_value(n: u32, tau: CmPoint, prec: u32) -> Result<ApproxReal<BigFloat>> {
    let g = eisenstein_value(2 * n, tau, prec)?;
    Ok(g.scale(&BigFloat::from_i64(2 * n as i64 - 1, 0)))
}

/// The exact ratio `H_n(tau) / omega^(2n)`: `r_n` at `i`, `s_n` at `2i`.
pub fn exact_ratio_to_omega(n: usize, tau: CmPoint) -> Result<BigRational> {
    let t = build_rs(n.max(4))?;
    match tau {
        CmPoint::I => t.r(n).cloned(),
        CmPoint::TwoI => t.s(n).cloned(),
    }
}

/// Lemniscate constant `omega = Gamma(1/4)^2 / (2 sqrt(2 pi))`.
pub fn lemniscate(prec: u32) -> ApproxReal<BigFloat> {
    let wp = prec + 16;
    let g = gamma_rational::<BigFloat>(1, 4, wp);
    let v = g.clone() * g / (BigFloat::from_i64(2, wp) * (BigFloat::pi(wp).mul_2exp(1)).sqrt());
    let r = v.to_f64() * (-(prec as f64) - 4.0).exp2();
    ApproxReal::new(v.with_prec(prec + 8), r)
}

/// `2 int_0^1 dx / sqrt(1 - x^4)` by tanh-sinh quadrature; the radius is
/// the change from halving the step.
pub fn lemniscate_quadrature(prec: u32) -> ApproxReal<BigFloat> {
    let wp = prec + 32;
    // x = tanh(pi/2 sinh t): integrand dx = (pi/2) cosh t sech u / sqrt(1 + tanh^2 u)
    let half_pi = BigFloat::pi(wp).mul_2exp(-1);
    let f = |t: &BigFloat| -> BigFloat {
        let et = t.exp();
        let iet = BigFloat::from_i64(1, wp) / et.clone();
        let sinh = (et.clone() - iet.clone()).mul_2exp(-1);
        let cosh = (et + iet).mul_2exp(-1);
        let u = half_pi.clone() * sinh;
        let eu = u.exp();
        let ieu = BigFloat::from_i64(1, wp) / eu.clone();
        let sech = BigFloat::from_i64(2, wp) / (eu.clone() + ieu.clone());
        let tanh = (eu.clone() - ieu.clone()) / (eu + ieu);
        let den = (BigFloat::from_i64(1, wp) + tanh.clone() * tanh).sqrt();
        half_pi.clone() * cosh * sech / den
    };
    let eps = -(wp as f64);
    let trap = |h: &BigFloat| -> BigFloat {
        // integrand is even in t only after folding; here t runs over [0, oo)
        let mut s = f(&BigFloat::from_i64(0, wp)).mul_2exp(-1);
        let mut j = 1i64;
        loop {
            let t = h.clone() * BigFloat::from_i64(j, wp);
            let v = f(&t);
            let small = v.log2_abs() < eps;
            s = s + v;
            if small {
                break;
            }
            j += 1;
        }
        s * h.clone()
    };
    // h = 2^-level; the error roughly squares with each halving
    let level = ((prec as f64 / 16.0).log2().ceil() as i64 + 2).max(3);
    let h1 = BigFloat::from_i64(1, wp).mul_2exp(-level);
    let h2 = h1.mul_2exp(-1);
    let a = trap(&h1).mul_2exp(1);
    let b = trap(&h2).mul_2exp(1);
    let d = (a - b.clone()).abs().to_f64();
    ApproxReal::new(b.with_prec(prec + 8), d + (-(prec as f64)).exp2())
}

/// `L(f_k, k-1) = omega^(k-1) / (4(k-2)) * (r_(2l)` for `k = 4l+1`, `2 s_(2l+1)` for `k = 4l+3)`.
pub fn l_value_from_eisenstein(k: u32, prec: u32) -> Result<ApproxReal<BigFloat>> {
    if k < 5 || k.is_multiple_of(2) {
        return Err(Error::OutOfDomain(format!("the Eisenstein bridge needs odd k >= 5, got {k}")));
    }
    let h = ((k - 1) / 2) as usize;
    let t = build_rs(h.max(4))?;
    let c = if k % 4 == 1 { t.r(h)?.clone() } else { t.s(h)? * BigInt::from(2) };
    let c = c / BigInt::from(4 * (k as i64 - 2));
    let w = lemniscate(prec + 16);
    let wk = w.value.powi(k as i64 - 1);
    let v = BigFloat::from_rational(&c, prec + 16) * wk;
    let r = v.abs().to_f64() * (-(prec as f64) - 2.0).exp2() * k as f64;
    Ok(ApproxReal::new(v, r))
}

/// As [`l_value_from_eisenstein`] but from the numeric Eisenstein series:
/// `G_(k-1)(i) / 4` or `(2 G_(k-1)(2i) - G_(k-1)(i)) / 4`.
pub fn l_value_from_lattice(k: u32, prec: u32) -> Result<ApproxReal<BigFloat>> {
    if k < 5 || k.is_multiple_of(2) {
        return Err(Error::OutOfDomain(format!("the Eisenstein bridge needs odd k >= 5, got {k}")));
    }
    let gi = eisenstein_value(k - 1, CmPoint::I, prec)?;
    let v = if k % 4 == 1 {
        gi
    } else {
        let g2 = eisenstein_value(k - 1, CmPoint::TwoI, prec)?;
        g2.scale(&BigFloat::from_i64(2, 0)) - gi
    };
    Ok(v.scale(&BigFloat::from_ratio(&1.into(), &4.into(), 0)))
}

/// `sqrt(2) omega / pi` against `theta3(i)^2`; both equal `Gamma(1/4)^2 / (2 pi^(3/2))`.
pub fn omega_theta_gap(prec: u32) -> Result<f64> {
    let w = lemniscate(prec + 16).value;
    let lhs = BigFloat::from_i64(2, prec + 16).sqrt() * w / BigFloat::pi(prec + 16);
    let i = Complex::new(BigFloat::from_i64(0, prec + 16), BigFloat::from_i64(1, prec + 16));
    let t = theta3(&i, prec + 16)?.value;
    let t2 = t.clone() * t;
    Ok((lhs - t2.re).abs().to_f64() + t2.im.abs().to_f64())
}

fn ratio_report(claim: &str, statement: &str, num: BigFloat, want: &BigRational, prec: u32) -> Report {
    let w = BigFloat::from_rational(want, prec + 16);
    let d = (num.clone() - w).abs().to_f64();
    Report::new(claim, ClaimClass::Theorem, statement)
        .sides(format!("{num:.40}"), want)
        .diff(d)
        .tolerance(NUMERIC_TOLERANCE)
        .prec(prec)
        .method("Lipschitz q-expansion")
        .pass(d < NUMERIC_TOLERANCE)
}

fn exact_report(claim: &str, statement: &str, got: &BigRational, want: &BigRational) -> Report {
    Report::new(claim, ClaimClass::Theorem, statement).sides(got, want).modulus("exact").pass(got == want)
}

/// The exact tables, alpha list and the numeric Eisenstein ratios.
pub fn hurwitz_reports(prec: u32) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    let t = build_rs(40)?;
    out.push(exact_report("hurwitz-r4", "9 r_4 = 3 r_2^2", t.r(4)?, &rat(1, 75)));
    let e = hurwitz_numbers(20)?;
    out.push(exact_report("hurwitz-E1", "E_1 = 1/10", &e.e[1], &rat(1, 10)));
    let bad: Vec<usize> = (1..=10).filter(|&n| hurwitz_from_r(n, &t).map(|v| v != e.e[n]).unwrap_or(true)).collect();
    out.push(
        Report::new("hurwitz-E-r", ClaimClass::Theorem, "E_n = (4n)!/2^(4n) r_(2n)/(4n-1), n <= 10")
            .sides(format!("mismatches {bad:?}"), "[]")
            .modulus("exact")
            .pass(bad.is_empty()),
    );
    let pos = e.e[1..].iter().all(|x| x.is_positive());
    out.push(Report::new("hurwitz-E-positive", ClaimClass::Property, "E_l > 0 for l <= 20").sides(pos, true).modulus("exact").pass(pos));
    let want = [(3, rat(16, 1)), (5, rat(240, 1)), (7, rat(2560, 1)), (9, rat(33600, 1)), (11, rat(491520, 1)), (13, rat(6864000, 1)), (15, rat(1022361600, 11))];
    for (k, a) in want {
        out.push(exact_report(&format!("alpha-{k}"), &format!("alpha_{k} from the r/s tables"), &alpha(k)?, &a).param("k", k));
    }
    let w = lemniscate(prec + 16).value;
    let g4i = eisenstein_value(4, CmPoint::I, prec)?.value;
    let g4t = eisenstein_value(4, CmPoint::TwoI, prec)?.value;
    let g6t = eisenstein_value(6, CmPoint::TwoI, prec)?.value;
    let g6i = eisenstein_value(6, CmPoint::I, prec)?;
    let three = BigFloat::from_i64(3, 0);
    out.push(ratio_report("hurwitz-G4i", "3 G_4(i) / omega^4 = 1/5", three.clone() * g4i / w.powi(4), &rat(1, 5), prec));
    out.push(ratio_report("hurwitz-G4-2i", "3 G_4(2i) / omega^4 = 11/80", three * g4t / w.powi(4), &rat(11, 80), prec));
    out.push(ratio_report("hurwitz-G6-2i", "5 G_6(2i) / omega^6 = 1/32", BigFloat::from_i64(5, 0) * g6t / w.powi(6), &rat(1, 32), prec));
    let z = g6i.value.abs().to_f64() + g6i.radius;
    out.push(
        Report::new("hurwitz-G6i", ClaimClass::Theorem, "G_6(i) = 0")
            .sides(format!("{:.3e}", g6i.value.to_f64()), 0)
            .diff(z)
            .tolerance(NUMERIC_TOLERANCE)
            .prec(prec)
            .pass(z < NUMERIC_TOLERANCE),
    );
    let a = lemniscate(prec);
    let b = lemniscate_quadrature(prec);
    let d = (a.value.clone() - b.value.clone()).abs().to_f64();
    out.push(
        Report::new("hurwitz-omega", ClaimClass::Property, "Gamma(1/4)^2/(2 sqrt(2 pi)) = 2 int_0^1 dx/sqrt(1-x^4)")
            .sides(format!("{:.40}", a.value), format!("{:.40}", b.value))
            .diff(d)
            .tolerance(NUMERIC_TOLERANCE)
            .prec(prec)
            .method("gamma form vs tanh-sinh quadrature")
            .pass(d < NUMERIC_TOLERANCE && b.radius < NUMERIC_TOLERANCE),
    );
    Ok(out)
}

/// `omega` from `G_4(i) = omega^4 / 15`, as a loose consistency handle.
pub fn omega_from_g4(prec: u32) -> Result<ApproxComplex<BigFloat>> {
    let g = eisenstein_value(4, CmPoint::I, prec)?;
    let w4 = g.value * BigFloat::from_i64(15, 0);
    Ok(ApproxComplex::new(cx::real(w4.sqrt().sqrt()), g.radius * 15.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 200;

    #[test]
    fn seeds_and_r4() {
        let t = build_rs(12).unwrap();
        assert_eq!(t.r(2).unwrap(), &rat(1, 5));
        assert_eq!(t.r(3).unwrap(), &rat(0, 1));
        assert_eq!(t.r(4).unwrap(), &rat(1, 75));
        assert_eq!(t.s(3).unwrap(), &rat(1, 32));
        assert!(build_rs(3).is_err());
    }

    #[test]
    fn alpha_list() {
        let want = [(3, rat(16, 1)), (5, rat(240, 1)), (7, rat(2560, 1)), (9, rat(33600, 1)), (11, rat(491520, 1)), (13, rat(6864000, 1)), (15, rat(1022361600, 11))];
        for (k, a) in want {
            assert_eq!(alpha(k).unwrap(), a, "k = {k}");
        }
        assert!(alpha(4).is_err());
    }

    #[test]
    fn hurwitz_relation() {
        let e = hurwitz_numbers(20).unwrap();
        assert_eq!(e.e[1], rat(1, 10));
        let t = build_rs(40).unwrap();
        for n in 1..=10 {
            assert_eq!(e.e[n], hurwitz_from_r(n, &t).unwrap(), "n = {n}");
        }
        assert!(e.e[1..].iter().all(|x| x.is_positive()));
    }

    #[test]
    fn eisenstein_at_cm_points() {
        let w = lemniscate(P).value;
        let g4 = eisenstein_value(4, CmPoint::I, P).unwrap();
        let r = g4.value.clone() * BigFloat::from_i64(3, 0) / w.powi(4);
        assert!((r - BigFloat::from_rational(&rat(1, 5), P)).abs().to_f64() < 1e-50);
        let g6 = eisenstein_value(6, CmPoint::I, P).unwrap();
        assert!(g6.value.abs().to_f64() < 1e-50);
        let g4b = eisenstein_value(4, CmPoint::TwoI, P).unwrap();
        let r = g4b.value * BigFloat::from_i64(3, 0) / w.powi(4);
        assert!((r - BigFloat::from_rational(&rat(11, 80), P)).abs().to_f64() < 1e-50);
        let g6b = eisenstein_value(6, CmPoint::TwoI, P).unwrap();
        let r = g6b.value * BigFloat::from_i64(5, 0) / w.powi(6);
        assert!((r - BigFloat::from_rational(&rat(1, 32), P)).abs().to_f64() < 1e-50);
        // crude lattice sum agrees within its bound
        let (lat, bound) = eisenstein_lattice_f64(4, CmPoint::I, 300);
        assert!((lat - g4.value.to_f64()).abs() <= bound);
    }

    #[test]
    fn h_recurrence_and_ratios() {
        let w = lemniscate(P).value;
        for tau in [CmPoint::I, CmPoint::TwoI] {
            let h: Vec<BigFloat> = (0..=8).map(|n| if n < 2 { BigFloat::from_i64(0, 0) } else { h_value(n, tau, P).unwrap().value }).collect();
            for n in 4..=8usize {
                let mut s = BigFloat::from_i64(0, P);
                for k in 2..=n - 2 {
                    s = s + h[k].clone() * h[n - k].clone();
                }
                let lhs = h[n].clone() * BigFloat::from_i64(((2 * n + 1) * (n - 3)) as i64, 0);
                let rhs = s * BigFloat::from_i64(3, 0);
                assert!((lhs.clone() - rhs).abs().to_f64() <= 1e-45 * lhs.abs().to_f64().max(1.0), "n = {n}");
            }
            for n in 2..=8usize {
                let ex = exact_ratio_to_omega(n, tau).unwrap();
                let num = h[n].clone() / w.powi(2 * n as i64);
                assert!((num - BigFloat::from_rational(&ex, P)).abs().to_f64() < 1e-45, "n = {n}");
            }
        }
    }

    #[test]
    fn lattice_radius_from_bound() {
        let g = eisenstein_value(6, CmPoint::TwoI, P).unwrap().value.to_f64();
        let (lat, bound) = eisenstein_lattice(6, CmPoint::TwoI, 1e-6).unwrap();
        assert!(bound < 2e-6 && (lat - g).abs() <= bound);
    }

    #[test]
    fn omega_and_theta() {
        assert!(omega_theta_gap(P).unwrap() < 1e-50);
        assert!(lemniscate(64).value.to_f64() > 0.0);
    }

    #[test]
    fn reports_pass() {
        for r in hurwitz_reports(192).unwrap() {
            assert!(r.pass, "{}", r.to_human());
        }
    }

    #[test]
    fn lemniscate_two_ways() {
        let a = lemniscate(P);
        let b = lemniscate_quadrature(P);
        let d = (a.value - b.value).abs().to_f64();
        assert!(d < 1e-50, "d = {d:e}, radius {:e}", b.radius);
        assert!(b.radius < 1e-30);
    }
}
