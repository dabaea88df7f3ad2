//! Numeric identity checks packaged as [`Report`]s.

use num_complex::Complex;

use super::accel::AccelScheme;
use super::gamma::{gamma, rgamma};
use super::hyper::{hyp2f1, pfq};
use super::interp::{
    apery_functional_residual, default_scheme, interp_eval, interp_eval_with, interp_partial_sum,
    label_functional_residual, residue_E, residue_E_closed_form, residue_E_limit, AccelMethod, InterpLabel,
};
use crate::congruences::is_prime;
use crate::error::{Error, Result};
use crate::float::{complex as cx, ApproxComplex, BigFloat};
use crate::report::{ClaimClass, Report};

/// Tolerance of the numeric acceptance checks.
pub const NUMERIC_TOLERANCE: f64 = 1e-30;

/// `C_F(-1/2)` to 50 places, as published with the acceleration scheme.
pub const F_MINUS_HALF_50: &str = "0.50546201971732600605200405322714025998512901481742";

fn q(a: i64, b: i64, prec: u32) -> Complex<BigFloat> {
    cx::real(BigFloat::from_ratio(&a.into(), &b.into(), prec))
}

fn show(v: &Complex<BigFloat>) -> String {
    if v.im.to_f64() == 0.0 {
        format!("{:.50}", v.re)
    } else {
        format!("{:.40} + {:.40}i", v.re, v.im)
    }
}

/// Clausen: `3F2(1/2, s, 1-s; 1, 1; 4x(1-x)) = 2F1(s, 1-s; 1; x)^2` for `0 <= x < 1/2`.
pub fn clausen_check(s: &BigFloat, x: &BigFloat, prec: u32) -> Result<Report> {
    let zero = BigFloat::from_i64(0, 0);
    let half = BigFloat::from_ratio(&1.into(), &2.into(), 0);
    if *x < zero || *x >= half {
        return Err(Error::OutOfDomain("Clausen check samples 0 <= x < 1/2".into()));
    }
    let wp = prec + 16;
    let one = cx::from_i64::<BigFloat>(1, wp);
    let s = cx::real(s.with_prec(wp));
    let xc = cx::real(x.with_prec(wp));
    let z = xc.clone() * (one.clone() - xc.clone()) * cx::from_i64(4, wp);
    let lhs = pfq(&[q(1, 2, wp), s.clone(), one.clone() - s.clone()], &[one.clone(), one.clone()], &z, wp)?;
    let f = hyp2f1(&s, &(one.clone() - s.clone()), &one, &xc, wp)?;
    let rhs = f.clone() * f;
    let d = cx::dist_f64(&lhs.value, &rhs.value);
    let tol = (-(prec as f64) * 0.85).exp2().max(1e-300);
    Ok(Report::new("clausen", ClaimClass::Theorem, "3F2(1/2,s,1-s;1,1;4x(1-x)) = 2F1(s,1-s;1;x)^2")
        .param("s", format!("{:.20}", s.re))
        .param("x", format!("{:.20}", x))
        .sides(show(&lhs.value), show(&rhs.value))
        .diff(d)
        .tolerance(tol)
        .prec(prec)
        .method("series vs series squared")
        .pass(d < tol && lhs.radius + rhs.radius < tol))
}

/// Apery's inhomogeneous equation, the `C_D` recurrence and `A(x) = A(-x-1)` at `x`.
pub fn functional_eq_checks(x: &Complex<BigFloat>, prec: u32) -> Result<Report> {
    let tol = NUMERIC_TOLERANCE;
    let ap = apery_functional_residual(x, prec)?;
    let mut worst = cx::abs_f64(&ap.value) + ap.radius;
    let mut rep = Report::new(
        "functional-eq",
        ClaimClass::Theorem,
        "P(x,S_x) A(x) = 8/pi^2 (2x+3) sin^2(pi x); C_D recurrence (11,3,-1); A(x) = A(-x-1)",
    )
    .param("x", show(x))
    .param("apery_residual", format!("{:.3e}", cx::abs_f64(&ap.value)));
    if x.re.to_f64() > -1.0 {
        let d = label_functional_residual(InterpLabel::D, x, prec)?;
        worst = worst.max(cx::abs_f64(&d.value) + d.radius);
        rep = rep.param("d_residual", format!("{:.3e}", cx::abs_f64(&d.value)));
    }
    let a = interp_eval(InterpLabel::ZagierA, x, prec)?;
    let mirror = -x.clone() - cx::from_i64(1, prec);
    let b = interp_eval(InterpLabel::ZagierA, &mirror, prec)?;
    let sym = cx::dist_f64(&a.value, &b.value);
    worst = worst.max(sym + a.radius + b.radius);
    rep = rep.param("symmetry_diff", format!("{sym:.3e}"));
    Ok(rep.sides(format!("{worst:.3e}"), "0").diff(worst).tolerance(tol).prec(prec).method("three interp_eval calls").pass(worst < tol))
}

/// Second-order recurrence of a label evaluated at non-integer `x`.
pub fn label_functional_report(label: InterpLabel, x: &Complex<BigFloat>, prec: u32) -> Result<Report> {
    let r = label_functional_residual(label, x, prec)?;
    let d = cx::abs_f64(&r.value);
    let class = if label == InterpLabel::F { ClaimClass::Observation } else { ClaimClass::Theorem };
    Ok(Report::new("label-functional-eq", class, "(x+2)^2 u(x+2) - (a(x+1)^2+a(x+1)+b) u(x+1) + c(x+1)^2 u(x) = 0")
        .param("label", label)
        .param("x", show(x))
        .sides(format!("{d:.3e}"), "0")
        .diff(d)
        .tolerance(NUMERIC_TOLERANCE)
        .prec(prec)
        .pass(d + r.radius < NUMERIC_TOLERANCE))
}

/// Watson's closed form of the terminating `3F2` in floating point, with
/// `1/Gamma` vanishing at the poles.
pub fn watson_numeric(p: u64, prec: u32) -> Result<Report> {
    if p < 5 || !is_prime(p) {
        return Err(Error::OutOfDomain(format!("need a prime p >= 5, got {p}")));
    }
    let wp = prec + 16;
    let pi = p as i64;
    let top = [q(1 - pi, 6, wp), q(3 - pi, 6, wp), q(5 - pi, 6, wp)];
    let bot = [q(6 - pi, 6, wp), q(3 - pi, 3, wp)];
    let lhs = pfq(&top, &bot, &cx::from_i64(1, wp), wp)?;
    let g = gamma(&q(1, 2, wp), wp)?.value * gamma(&q(6 - pi, 6, wp), wp)?.value;
    let r = g * rgamma(&q(7 - pi, 12, wp), wp).value * rgamma(&q(11 - pi, 12, wp), wp).value;
    let rhs = r.clone() * r;
    let scale = cx::abs_f64(&rhs).max(1.0);
    let d = cx::dist_f64(&lhs.value, &rhs);
    let tol = NUMERIC_TOLERANCE * scale;
    Ok(Report::new("watson-numeric", ClaimClass::Theorem, "3F2((1-p)/6,(3-p)/6,(5-p)/6; 1-p/6,1-p/3; 1) = (G(1/2)G(1-p/6)/(G((7-p)/12)G((11-p)/12)))^2")
        .param("p", p)
        .sides(show(&lhs.value), show(&rhs))
        .diff(d)
        .tolerance(tol)
        .prec(prec)
        .method("float terminating sum vs rgamma")
        .pass(d < tol))
}

/// `C_F(-1/2)` against the published 50 digits.
pub fn f_value_check(prec: u32) -> Result<Report> {
    let scheme = default_scheme(InterpLabel::F, prec);
    let v = interp_eval_with(InterpLabel::F, &q(-1, 2, prec), prec, &scheme, Some(AccelMethod::Salzer))?;
    let want = BigFloat::parse_decimal(F_MINUS_HALF_50, prec + 16).expect("literal");
    let d = (v.value.re.clone() - want).abs().to_f64();
    Ok(Report::new("interp-F", ClaimClass::Observation, "C_F(-1/2) = 0.50546201971732600605200405322714025998512901481742...")
        .sides(format!("{:.50}", v.value.re), F_MINUS_HALF_50)
        .diff(d)
        .tolerance(NUMERIC_TOLERANCE)
        .prec(prec)
        .terms(scheme.max_index() as u64)
        .method(&format!("Salzer m={} n0={} on N=n^2", scheme.m, scheme.n0))
        .pass(d < NUMERIC_TOLERANCE && v.radius < NUMERIC_TOLERANCE))
}

/// Salzer at orders `m` and `m + 1` agree within the reported error; the
/// Richardson route agrees too.
pub fn accel_consistency(label: InterpLabel, x: &Complex<BigFloat>, prec: u32) -> Result<Report> {
    let s = default_scheme(label, prec);
    let s1 = AccelScheme::new(s.m + 1, s.n0, s.node_map)?;
    let a = interp_eval_with(label, x, prec, &s, Some(AccelMethod::Salzer))?;
    let b = interp_eval_with(label, x, prec, &s1, Some(AccelMethod::Salzer))?;
    let c = interp_eval_with(label, x, prec, &s, Some(AccelMethod::Richardson))?;
    let d = cx::dist_f64(&a.value, &b.value);
    let d2 = cx::dist_f64(&a.value, &c.value);
    let bound = a.radius + b.radius;
    Ok(Report::new("accel-consistency", ClaimClass::Property, "orders m and m+1 agree within the error estimate")
        .param("label", label)
        .param("x", show(x))
        .param("m", s.m)
        .param("richardson_diff", format!("{d2:.3e}"))
        .sides(show(&a.value), show(&b.value))
        .diff(d)
        .tolerance(bound)
        .prec(prec)
        .pass(d <= bound && d2 <= a.radius + c.radius && bound < NUMERIC_TOLERANCE))
}

/// `res_{x=-1/2} C_E` by three routes: `C_A(-1/2)/(2pi)`, the gamma closed
/// form and the limit of `(x+1/2) C_E(x)`.
pub fn residue_check(prec: u32) -> Result<Report> {
    let a = residue_E::<BigFloat>(prec)?;
    let b = residue_E_closed_form::<BigFloat>(prec);
    let h0 = BigFloat::parse_decimal("0.00001", prec + 16).expect("literal");
    let c = residue_E_limit(&h0, 8, prec)?;
    let d1 = (a.value.clone() - b.clone()).abs().to_f64();
    let d2 = (c.value.clone() - b.clone()).abs().to_f64();
    let tol = NUMERIC_TOLERANCE;
    Ok(Report::new("residue-E", ClaimClass::Theorem, "res C_E(-1/2) = 3F2(1/2,1/2,1/2;1,1;-1)/(2pi) = G(1/8)^2 G(3/8)^2/(16 sqrt2 pi^4)")
        .param("limit_diff", format!("{d2:.3e}"))
        .sides(format!("{:.50}", a.value), format!("{:.50}", b))
        .diff(d1)
        .tolerance(tol)
        .prec(prec)
        .method("series / closed form / limit h -> 0 from h0 = 1e-5")
        .pass(d1 < tol && d2 < tol))
}

/// Digits obtained by plain summation of `n_terms` terms of `C_F(-1/2)`.
pub fn f_direct_digits(n_terms: usize, prec: u32) -> Result<(Complex<BigFloat>, f64)> {
    let v = interp_partial_sum(InterpLabel::F, &q(-1, 2, prec), n_terms, prec)?;
    let want = BigFloat::parse_decimal(F_MINUS_HALF_50, prec).expect("literal");
    let d = (v.re.clone() - want).abs().to_f64();
    Ok((v, -d.log10()))
}

/// Recompute at `prec + 64` bits and confirm the shift stays inside the radius.
pub fn radius_soundness(label: InterpLabel, x: &Complex<BigFloat>, prec: u32) -> Result<(ApproxComplex<BigFloat>, f64)> {
    let a = interp_eval(label, x, prec)?;
    let b = interp_eval(label, x, prec + 64)?;
    let d = cx::dist_f64(&a.value, &b.value);
    Ok((a, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 200;

    fn dec(s: &str) -> BigFloat {
        BigFloat::parse_decimal(s, P).unwrap()
    }

    #[test]
    fn clausen_samples() {
        for (s, x) in [("0.5", "0.3"), ("0.3333333333333333333333333333333333333333333333333333333333333", "0.1"), ("0.5", "0")] {
            let r = clausen_check(&dec(s), &dec(x), P).unwrap();
            assert!(r.pass, "{}", r.to_human());
        }
        assert!(clausen_check(&dec("0.5"), &dec("0.6"), P).is_err());
    }

    #[test]
    fn functional_equations() {
        let x = cx::real(dec("0.3"));
        let r = functional_eq_checks(&x, 170).unwrap();
        assert!(r.pass, "{}", r.to_human());
        let r = functional_eq_checks(&cx::real(dec("-0.3")), 170).unwrap();
        assert!(r.pass, "{}", r.to_human());
        for l in [InterpLabel::A, InterpLabel::B, InterpLabel::E, InterpLabel::F] {
            let r = label_functional_report(l, &x, 170).unwrap();
            assert!(r.pass, "{}", r.to_human());
        }
    }

    #[test]
    fn watson_endpoints() {
        let r = watson_numeric(5, P).unwrap();
        assert!(r.pass && r.lhs.starts_with("1.0000"), "{}", r.to_human());
        let r = watson_numeric(7, P).unwrap();
        assert!(r.pass && r.rhs.starts_with("0"), "{}", r.to_human());
        for p in [11, 13, 17, 29, 37] {
            assert!(watson_numeric(p, P).unwrap().pass, "p = {p}");
        }
    }

    #[test]
    fn f_value_and_consistency() {
        let r = f_value_check(192).unwrap();
        assert!(r.pass, "{}", r.to_human());
        let r = accel_consistency(InterpLabel::F, &q(-1, 2, 192), 192).unwrap();
        assert!(r.pass, "{}", r.to_human());
    }

    #[test]
    fn residue_three_ways() {
        let r = residue_check(192).unwrap();
        assert!(r.pass, "{}", r.to_human());
    }
}
