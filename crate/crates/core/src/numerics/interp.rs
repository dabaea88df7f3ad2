//! Analytic interpolations of the sporadic sequences and of the Apery numbers.
//!
//! Each series is summed through its term ratio `t_{k+1} / t_k`; for integer
//! `x` the ratio hits an exact zero and the sum is finite. Otherwise partial
//! sums at `N = n^2` (or `2 n^2` for alternating series) are extrapolated,
//! by Salzer's transform when the tail is in integer powers of `1/n` and by
//! Richardson with the known exponents otherwise.

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::accel::{partial_sums_at, AccelScheme, NodeMap};
use super::gamma::gamma;
use super::hyper::hyp2f1;
use crate::error::{Error, Result};
use crate::float::{complex as cx, ApproxComplex, ApproxReal, Real};
use crate::sequences::{sporadic_term, SporadicLabel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InterpLabel {
    /// `A(x) = sum_k binom(x,k)^2 binom(x+k,k)^2`
    ZagierA,
    A,
    B,
    D,
    E,
    F,
}

impl InterpLabel {
    pub const ALL: [InterpLabel; 6] = [Self::ZagierA, Self::A, Self::B, Self::D, Self::E, Self::F];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::ZagierA => "apery",
            Self::A => "A",
            Self::B => "B",
            Self::D => "D",
            Self::E => "E",
            Self::F => "F",
        }
    }

    pub fn sporadic(self) -> Option<SporadicLabel> {
        match self {
            Self::ZagierA => None,
            Self::A => Some(SporadicLabel::A),
            Self::B => Some(SporadicLabel::B),
            Self::D => Some(SporadicLabel::D),
            Self::E => Some(SporadicLabel::E),
            Self::F => Some(SporadicLabel::F),
        }
    }

    fn node_map(self) -> NodeMap {
        match self {
            Self::A | Self::E => NodeMap::TwiceSquare,
            _ => NodeMap::Square,
        }
    }

    /// Leading exponent `e` of the truncation error `N^(-e)`.
    fn tail_exponent<R: Real>(self, x: &Complex<R>) -> Complex<R> {
        let p = cx::prec_of(x);
        let one = cx::from_i64::<R>(1, p);
        match self {
            Self::ZagierA => one,
            Self::A => x.clone() * cx::from_i64(3, p) + cx::from_i64(3, p),
            Self::E => x.clone() + cx::from_i64(2, p),
            Self::B | Self::D | Self::F => x.clone() + one,
        }
    }
}

impl std::str::FromStr for InterpLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "apery" | "Apery" | "ZagierA" | "zagier" => Ok(Self::ZagierA),
            other => match other.parse::<SporadicLabel>()? {
                SporadicLabel::A => Ok(Self::A),
                SporadicLabel::B => Ok(Self::B),
                SporadicLabel::D => Ok(Self::D),
                SporadicLabel::E => Ok(Self::E),
                SporadicLabel::F => Ok(Self::F),
                SporadicLabel::C => Err(Error::UnsupportedLabel("C has no series interpolation; use interp_eval_C".into())),
            },
        }
    }
}

impl std::fmt::Display for InterpLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Acceleration method used for a non-integer argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AccelMethod {
    Salzer,
    Richardson,
}

/// Default scheme for `prec` bits: `m = n0`, about `0.21 prec`.
pub fn default_scheme(label: InterpLabel, prec: u32) -> AccelScheme {
    let m = ((prec as f64) * 0.21).ceil().max(12.0) as usize;
    AccelScheme::new(m, m, label.node_map()).expect("default scheme within the cap")
}

fn exact_integer<R: Real>(x: &Complex<R>) -> Option<i64> {
    if !x.im.is_zero() {
        return None;
    }
    x.re.as_integer()?.try_into().ok()
}

fn is_half_integer<R: Real>(x: &Complex<R>) -> Option<i64> {
    exact_integer(&(x.clone() * cx::from_i64(2, 0))).filter(|n| n % 2 != 0)
}

/// Franel numbers `C_A(0..=n)` from `(k+1)^2 u_{k+1} = (7k^2+7k+2) u_k + 8 k^2 u_{k-1}`.
fn franel(n: usize) -> Vec<BigInt> {
    let mut u = vec![BigInt::from(1), BigInt::from(2)];
    for k in 1..n as i64 {
        let next = (BigInt::from(7 * k * k + 7 * k + 2) * &u[k as usize] + BigInt::from(8 * k * k) * &u[k as usize - 1])
            / BigInt::from((k + 1) * (k + 1));
        u.push(next);
    }
    u.truncate(n + 1);
    u
}

/// Term generator `k -> t_k` for the series at `x`, working at `wp` bits.
struct Terms<R: Real> {
    label: InterpLabel,
    x: Complex<R>,
    wp: u32,
    k: usize,
    t: Complex<R>,
    // F only: binom(x,k)(-1)^k and C_A(k)/8^k
    b: Complex<R>,
    franel: Vec<BigInt>,
}

impl<R: Real> Terms<R> {
    fn new(label: InterpLabel, x: &Complex<R>, wp: u32, n_max: usize) -> Result<Self> {
        let x = cx::with_prec(x, wp);
        let t0 = match label {
            InterpLabel::B => {
                let ln3 = R::from_i64(3, wp).ln();
                cx::exp(&(x.clone() * cx::real(ln3)))
            }
            InterpLabel::E => {
                if let Some(n) = exact_integer(&x).filter(|&n| n >= 0) {
                    cx::real(R::from_bigint(&crate::sequences::binomial(2 * n as u64, n as u64), wp))
                } else {
                    let one = cx::from_i64::<R>(1, wp);
                    let g2 = gamma(&(x.clone() * cx::from_i64(2, wp) + one.clone()), wp)?.value;
                    let g1 = gamma(&(x.clone() + one), wp)?.value;
                    g2 / (g1.clone() * g1)
                }
            }
            InterpLabel::F => {
                let ln8 = R::from_i64(8, wp).ln();
                cx::exp(&(x.clone() * cx::real(ln8)))
            }
            _ => cx::from_i64(1, wp),
        };
        let franel = if label == InterpLabel::F { franel(n_max + 1) } else { Vec::new() };
        Ok(Terms { label, x, wp, k: 0, t: t0, b: cx::from_i64(1, wp), franel })
    }

    /// Current term, then advance.
    fn next_term(&mut self) -> Complex<R> {
        let wp = self.wp;
        let k = self.k as i64;
        let i = |v: i64| cx::from_i64::<R>(v, wp);
        let x = &self.x;
        let xk = x.clone() - i(k);
        let k1 = i(k + 1);
        let out;
        match self.label {
            InterpLabel::F => {
                let ca = R::from_bigint(&self.franel[self.k], wp).mul_2exp(-3 * k);
                out = self.t.clone() * self.b.clone() * cx::real(ca);
                self.b = self.b.clone() * (i(k) - x.clone()) / k1;
            }
            _ => {
                out = self.t.clone();
                let ratio = match self.label {
                    InterpLabel::ZagierA => {
                        let r = xk.clone() * (x.clone() + i(k + 1)) / (k1.clone() * k1);
                        r.clone() * r
                    }
                    InterpLabel::A => {
                        let r = xk / k1;
                        r.clone() * r.clone() * r
                    }
                    InterpLabel::B => {
                        let x3 = x.clone() - i(3 * k);
                        let num = x3.clone() * (x3.clone() - i(1)) * (x3 - i(2));
                        -(num / (k1.clone() * k1.clone() * k1 * i(27)))
                    }
                    InterpLabel::D => {
                        let r = xk / k1.clone();
                        r.clone() * r * (x.clone() + i(k + 1)) / k1
                    }
                    InterpLabel::E => {
                        let den = k1.clone() * k1 * (x.clone() * i(2) - i(2 * k + 1));
                        xk.clone() * xk * i(2 * k + 1) / den
                    }
                    InterpLabel::F => unreachable!(),
                };
                self.t = self.t.clone() * ratio;
            }
        }
        self.k += 1;
        out
    }

    /// Whether every later term is exactly zero.
    fn exhausted(&self) -> bool {
        match self.label {
            InterpLabel::F => self.b.is_zero(),
            _ => self.t.is_zero(),
        }
    }
}

fn check_domain<R: Real>(label: InterpLabel, x: &Complex<R>) -> Result<()> {
    if label == InterpLabel::E {
        if let Some(n2) = is_half_integer(x) {
            if n2 >= -1 {
                return Err(Error::PoleAt(format!("C_E has a pole at x = {n2}/2")));
            }
        }
    }
    if label != InterpLabel::ZagierA && x.re.to_f64() <= -1.0 && exact_integer(x).is_none() {
        return Err(Error::OutOfDomain(format!("the {label} series needs Re x > -1")));
    }
    Ok(())
}

/// Finite sum when the series terminates within `cap` terms.
fn try_finite<R: Real>(label: InterpLabel, x: &Complex<R>, wp: u32, cap: usize) -> Result<Option<ApproxComplex<R>>> {
    let Some(n) = exact_integer(x) else { return Ok(None) };
    if label != InterpLabel::ZagierA && n < 0 {
        return Err(Error::OutOfDomain(format!("the {label} series needs Re x > -1")));
    }
    let mut terms = Terms::new(label, x, wp, n.unsigned_abs() as usize + 2)?;
    let mut s = cx::from_i64::<R>(0, wp);
    let mut big = 0f64;
    for _ in 0..cap {
        let t = terms.next_term();
        big = big.max(cx::abs_f64(&t));
        s = s + t;
        if terms.exhausted() {
            let r = big * (terms.k as f64 + 4.0) * (-(wp as f64) + 2.0).exp2();
            return Ok(Some(ApproxComplex::new(s, r)));
        }
    }
    Ok(None)
}

/// `C_*(x)` (or Apery's `A(x)`) to `prec` bits with the default scheme.
pub fn interp_eval<R: Real>(label: InterpLabel, x: &Complex<R>, prec: u32) -> Result<ApproxComplex<R>> {
    interp_eval_with(label, x, prec, &default_scheme(label, prec), None)
}

/// As [`interp_eval`] with an explicit scheme; `method` overrides the
/// automatic choice between Salzer and Richardson.
pub fn interp_eval_with<R: Real>(
    label: InterpLabel,
    x: &Complex<R>,
    prec: u32,
    scheme: &AccelScheme,
    method: Option<AccelMethod>,
) -> Result<ApproxComplex<R>> {
    scheme.validate()?;
    let mut x = x.clone();
    if label == InterpLabel::ZagierA && x.re.to_f64() < -0.5 {
        // A(x) = A(-x-1)
        let p = cx::prec_of(&x);
        x = -x - cx::from_i64(1, p);
    }
    check_domain(label, &x)?;
    let wp = prec + scheme.guard_bits() + 48;
    if let Some(v) = try_finite(label, &x, wp, scheme.partial_sum_cap)? {
        return Ok(round_out(v, prec));
    }
    let nodes = scheme.nodes();
    let mut terms = Terms::new(label, &x, wp, *nodes.last().expect("nonempty nodes"))?;
    let (c, big) = partial_sums_at(&nodes, |_| terms.next_term(), wp);
    let e = label.tail_exponent(&x);
    let two_e = exact_integer(&(e.clone() * cx::from_i64(2, 0)));
    let method = method.unwrap_or(if two_e.is_some() { AccelMethod::Salzer } else { AccelMethod::Richardson });
    let est = match method {
        AccelMethod::Salzer => scheme.salzer_with_error(&c),
        AccelMethod::Richardson => {
            let exps: Vec<_> = (0..scheme.m).map(|j| e.clone() + cx::from_i64(j as i64, wp)).collect();
            scheme.richardson_with_error(&c, &exps)?
        }
    };
    // rounding in the sums, amplified by the transform weights
    let amp = (scheme.guard_bits() as f64).exp2();
    let round = big * (*nodes.last().unwrap() as f64) * amp * (-(wp as f64)).exp2();
    Ok(round_out(ApproxComplex::new(est.value, est.radius + round), prec))
}

/// Round to `prec + 16` bits, charging the rounding to the radius.
fn round_out<R: Real>(v: ApproxComplex<R>, prec: u32) -> ApproxComplex<R> {
    let r = v.radius + cx::abs_f64(&v.value) * (-(prec as f64) - 14.0).exp2();
    ApproxComplex::new(cx::with_prec(&v.value, prec + 16), r)
}

/// Plain partial sum `sum_{k < n_terms}` with no acceleration.
pub fn interp_partial_sum<R: Real>(label: InterpLabel, x: &Complex<R>, n_terms: usize, prec: u32) -> Result<Complex<R>> {
    check_domain(label, x)?;
    let wp = prec + 32;
    let mut terms = Terms::new(label, x, wp, n_terms)?;
    let (c, _) = partial_sums_at(&[n_terms], |_| terms.next_term(), wp);
    Ok(c.into_iter().next().expect("one node"))
}

/// The summand of the series at index `k`.
pub fn interp_term<R: Real>(label: InterpLabel, x: &Complex<R>, k: usize, prec: u32) -> Result<Complex<R>> {
    let wp = prec + 32;
    let mut terms = Terms::new(label, x, wp, k + 1)?;
    let mut t = terms.next_term();
    for _ in 0..k {
        t = terms.next_term();
    }
    Ok(t)
}

/// `C_C(x)` for `x = -1/2` and nonnegative integers.
///
/// At `-1/2`: `Re 3F2(1/2,1/2,1/2;1,1;4)` through Clausen's identity,
/// `Re [2F1(1/2,1/2;1;z0)^2]` with `z0 = (1 - i sqrt 3)/2`.
#[allow(non_snake_case)]
pub fn interp_eval_C<R: Real>(x: &R, prec: u32) -> Result<ApproxReal<R>> {
    if let Some(n) = x.as_integer() {
        let n: i64 = n.try_into().map_err(|_| Error::UnsupportedArgument("x too large".into()))?;
        if n >= 0 {
            let v = sporadic_term(SporadicLabel::C, n as u64);
            return Ok(ApproxReal::new(R::from_bigint(&v, 0), 0.0));
        }
    }
    let half = R::from_ratio(&(-1).into(), &2.into(), 0);
    if *x != half {
        return Err(Error::UnsupportedArgument(format!("C_C is only interpolated at -1/2 and n >= 0, not {x}")));
    }
    let f = clausen_2f1_at_z0::<R>(prec + 8)?;
    let sq = f.clone() * f;
    Ok(sq.re())
}

/// `2F1(1/2, 1/2; 1; (1 - i sqrt 3)/2)`.
pub fn clausen_2f1_at_z0<R: Real>(prec: u32) -> Result<ApproxComplex<R>> {
    let wp = prec + 8;
    let h = cx::real(R::from_ratio(&1.into(), &2.into(), wp));
    let s3 = R::from_i64(3, wp).sqrt();
    let z0 = Complex::new(R::from_ratio(&1.into(), &2.into(), wp), -(s3.mul_2exp(-1)));
    hyp2f1(&h, &h, &cx::from_i64(1, wp), &z0, prec)
}

/// `res_{x=-1/2} C_E(x) = (1/2pi) 3F2(1/2,1/2,1/2;1,1;-1) = C_A(-1/2) / (2 pi)`.
#[allow(non_snake_case)]
pub fn residue_E<R: Real>(prec: u32) -> Result<ApproxReal<R>> {
    let wp = prec + 8;
    let x = cx::real(R::from_ratio(&(-1).into(), &2.into(), wp));
    let ca = interp_eval(InterpLabel::A, &x, wp)?;
    let two_pi = R::pi(wp).mul_2exp(1);
    let inv = R::from_i64(1, wp) / two_pi;
    Ok(ca.re().scale(&inv))
}

/// Closed form `Gamma(1/8)^2 Gamma(3/8)^2 / (16 sqrt 2 pi^4)` of the residue.
#[allow(non_snake_case)]
pub fn residue_E_closed_form<R: Real>(prec: u32) -> R {
    let wp = prec + 16;
    let g1 = super::gamma::gamma_rational::<R>(1, 8, wp);
    let g3 = super::gamma::gamma_rational::<R>(3, 8, wp);
    let pi = R::pi(wp);
    let pi2 = pi.clone() * pi;
    g1.clone() * g1 * g3.clone() * g3 / (R::from_i64(16, wp) * R::from_i64(2, wp).sqrt() * pi2.clone() * pi2)
}

/// `lim (x + 1/2) C_E(x)` as `x -> -1/2+`, from samples at `h = j h0`,
/// `j = 1..=order`, extrapolated to `h = 0`.
#[allow(non_snake_case)]
pub fn residue_E_limit<R: Real>(h0: &R, order: usize, prec: u32) -> Result<ApproxReal<R>> {
    let wp = prec + order as u32 + 32;
    let half = R::from_ratio(&(-1).into(), &2.into(), wp);
    let mut vals = Vec::with_capacity(order);
    let mut rad = 0f64;
    for j in 1..=order {
        let h = h0.clone().with_prec(wp) * R::from_i64(j as i64, wp);
        let x = cx::real(half.clone() + h.clone());
        let v = interp_eval(InterpLabel::E, &x, wp)?;
        rad += v.radius * h.to_f64().abs();
        vals.push(v.value.re * h);
    }
    // Lagrange weights at 0 for nodes 1..=J: (-1)^(j-1) binom(J, j)
    let mut s = R::from_i64(0, wp);
    let mut wsum = 0f64;
    for (idx, v) in vals.iter().enumerate() {
        let j = idx as u64 + 1;
        let w = crate::sequences::binomial(order as u64, j);
        let wf = R::from_bigint(&w, wp);
        wsum += wf.to_f64();
        s = if j % 2 == 1 { s + v.clone() * wf } else { s - v.clone() * wf };
    }
    // extrapolation error from the gap between orders J and J-1 is left to the caller
    Ok(ApproxReal::new(s, rad * wsum))
}

/// `A(x+2)`, `A(x+1)`, `A(x)` residual of
/// `(x+2)^3 A(x+2) - (2x+3)(17x^2+51x+39) A(x+1) + (x+1)^3 A(x) = 8/pi^2 (2x+3) sin^2(pi x)`.
pub fn apery_functional_residual<R: Real>(x: &Complex<R>, prec: u32) -> Result<ApproxComplex<R>> {
    let wp = prec + 16;
    let x = cx::with_prec(x, wp);
    let i = |v: i64| cx::from_i64::<R>(v, wp);
    let a0 = interp_eval(InterpLabel::ZagierA, &x, wp)?;
    let a1 = interp_eval(InterpLabel::ZagierA, &(x.clone() + i(1)), wp)?;
    let a2 = interp_eval(InterpLabel::ZagierA, &(x.clone() + i(2)), wp)?;
    let c2 = cx::powi(&(x.clone() + i(2)), 3);
    let c1 = (x.clone() * i(2) + i(3)) * (x.clone() * x.clone() * i(17) + x.clone() * i(51) + i(39));
    let c0 = cx::powi(&(x.clone() + i(1)), 3);
    let lhs = a2 * ApproxComplex::rounded(c2) - a1 * ApproxComplex::rounded(c1) + a0 * ApproxComplex::rounded(c0);
    let pi = R::pi(wp);
    let s = cx::sin_pi(&x);
    let rhs = cx::real(R::from_i64(8, wp) / (pi.clone() * pi)) * (x.clone() * i(2) + i(3)) * s.clone() * s;
    Ok(lhs - ApproxComplex::rounded(rhs))
}

/// Residual of `(x+2)^2 u(x+2) - (a(x+1)^2 + a(x+1) + b) u(x+1) + c (x+1)^2 u(x)`
/// for `u = C_label`, with `(a, b, c)` of the label's recurrence.
pub fn label_functional_residual<R: Real>(label: InterpLabel, x: &Complex<R>, prec: u32) -> Result<ApproxComplex<R>> {
    let sl = label.sporadic().ok_or_else(|| Error::UnsupportedLabel("apery has a third-order equation".into()))?;
    let spec = crate::sequences::Recurrence2Spec::for_label(sl);
    let to_i = |v: &BigInt| -> i64 { v.try_into().expect("small recurrence coefficients") };
    let (a, b, c) = (to_i(&spec.a), to_i(&spec.b), to_i(&spec.c));
    let wp = prec + 16;
    let x = cx::with_prec(x, wp);
    let i = |v: i64| cx::from_i64::<R>(v, wp);
    let u0 = interp_eval(label, &x, wp)?;
    let u1 = interp_eval(label, &(x.clone() + i(1)), wp)?;
    let u2 = interp_eval(label, &(x.clone() + i(2)), wp)?;
    let x1 = x.clone() + i(1);
    let x2 = x.clone() + i(2);
    let c2 = x2.clone() * x2;
    let c1 = x1.clone() * x1.clone() * i(a) + x1.clone() * i(a) + i(b);
    let c0 = x1.clone() * x1 * i(c);
    Ok(u2 * ApproxComplex::rounded(c2) - u1 * ApproxComplex::rounded(c1) + u0 * ApproxComplex::rounded(c0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::float::BigFloat;

    const P: u32 = 192;

    fn q(a: i64, b: i64) -> Complex<BigFloat> {
        cx::real(BigFloat::from_ratio(&a.into(), &b.into(), P))
    }

    #[test]
    fn zagier_at_zero_and_integers() {
        let v = interp_eval(InterpLabel::ZagierA, &q(0, 1), P).unwrap();
        assert!(cx::close(&v.value, &q(1, 1), 1e-50));
        for n in [1i64, 5, 12] {
            let v = interp_eval(InterpLabel::ZagierA, &q(n, 1), P).unwrap();
            let want = BigFloat::from_bigint(&crate::sequences::apery_term(n as u64), 0);
            assert!((v.value.re - want.clone()).abs().to_f64() <= want.to_f64() * 1e-50);
        }
        // A(-1-n) = A(n)
        let v = interp_eval(InterpLabel::ZagierA, &q(-4, 1), P).unwrap();
        assert!((v.value.re.to_f64() - 1445.0).abs() < 1e-9);
    }

    #[test]
    fn f_at_minus_half() {
        let v = interp_eval(InterpLabel::F, &q(-1, 2), P).unwrap();
        let want = BigFloat::parse_decimal("0.50546201971732600605200405322714025998512901481742", P).unwrap();
        let err = (v.value.re.clone() - want).abs().to_f64();
        assert!(err < 1e-49, "err = {err:e}, radius = {:e}", v.radius);
        assert!(v.radius < 1e-30, "radius = {:e}", v.radius);
    }

    #[test]
    fn d_at_minus_half() {
        let v = interp_eval(InterpLabel::D, &q(-1, 2), P).unwrap();
        let g = super::super::gamma::gamma_rational::<BigFloat>(1, 4, P);
        let pi = BigFloat::pi(P);
        let t = g.clone() * g / (BigFloat::from_i64(2, 0) * pi.clone() * pi.sqrt());
        let err = (v.value.re.clone() - t.clone() * t).abs().to_f64();
        assert!(err < 1e-50 && err <= v.radius.max(1e-55), "err = {err:e}, radius = {:e}", v.radius);
    }

    #[test]
    fn e_pole_and_domain() {
        assert!(matches!(interp_eval(InterpLabel::E, &q(-1, 2), P), Err(Error::PoleAt(_))));
        assert!(matches!(interp_eval(InterpLabel::D, &q(-3, 2), P), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn c_values() {
        let v = interp_eval_C(&BigFloat::from_i64(2, 0), P).unwrap();
        assert_eq!(v.value.to_f64(), 15.0);
        assert_eq!(interp_eval_C(&BigFloat::from_i64(0, 0), P).unwrap().value.to_f64(), 1.0);
        let v = interp_eval_C(&BigFloat::from_ratio(&(-1).into(), &2.into(), P), P).unwrap();
        let g = super::super::gamma::gamma_rational::<BigFloat>(1, 3, P);
        let pi = BigFloat::pi(P);
        let pi2 = pi.clone() * pi;
        let two113 = BigFloat::from_ratio(&11.into(), &3.into(), P);
        let want = BigFloat::from_i64(3, 0) * g.powi(6) / (BigFloat::from_i64(2, P).powf(&two113) * pi2.clone() * pi2);
        assert!((v.value - want).abs().to_f64() < 1e-50);
        assert!(interp_eval_C(&BigFloat::from_ratio(&1.into(), &3.into(), P), P).is_err());
    }

    #[test]
    fn f_obeys_its_recurrence_off_the_integers() {
        for x in [q(3, 10), Complex::new(BigFloat::from_ratio(&1.into(), &4.into(), P), BigFloat::from_ratio(&1.into(), &2.into(), P))] {
            let r = label_functional_residual(InterpLabel::F, &x, P).unwrap();
            assert!(cx::abs_f64(&r.value) < 1e-50);
        }
    }

    #[test]
    fn residue_routes() {
        let a = residue_E::<BigFloat>(P).unwrap();
        let b = residue_E_closed_form::<BigFloat>(P);
        assert!((a.value.clone() - b.clone()).abs().to_f64() < 1e-45);
        let h0 = BigFloat::parse_decimal("0.00001", P).unwrap();
        let c = residue_E_limit(&h0, 8, P).unwrap();
        let d = (c.value - b).abs().to_f64();
        assert!(d < 1e-30, "limit route off by {d:e}");
    }

    #[test]
    fn bridge_at_integers() {
        let apery = crate::sequences::apery_table(30);
        for label in InterpLabel::ALL {
            let table = label.sporadic().map(|l| crate::sequences::sporadic_table(l, 30));
            for n in 0..=30i64 {
                let v = interp_eval(label, &q(n, 1), P).unwrap();
                let exact = match &table {
                    Some(t) => t[n as usize].clone(),
                    None => apery[n as usize].clone(),
                };
                let want = BigFloat::from_bigint(&exact, 0);
                let tol = want.abs().to_f64().max(1.0) * (-(P as f64) + 8.0).exp2();
                let d = (v.value.re.clone() - want).abs().to_f64() + v.value.im.abs().to_f64();
                assert!(d <= tol, "{label}({n}): {d:e}");
            }
        }
    }

    #[test]
    fn zagier_summand_tail() {
        // k^2 binom(x,k)^2 binom(x+k,k)^2 -> (sin(pi x)/pi)^2
        for x in [q(3, 10), q(-1, 3), q(7, 4)] {
            let k = 4000;
            let t = interp_term(InterpLabel::ZagierA, &x, k, 128).unwrap();
            let kk = BigFloat::from_i64(k as i64, 0);
            let got = t.re * kk.clone() * kk;
            let s = cx::sin_pi(&x).re / BigFloat::pi(128);
            let want = s.clone() * s;
            let rel = ((got - want.clone()) / want).abs().to_f64();
            assert!(rel < 5e-3, "rel = {rel:e}");
        }
    }

    #[test]
    fn radii_survive_more_precision() {
        for (label, x) in [(InterpLabel::F, q(-1, 2)), (InterpLabel::D, q(-1, 2)), (InterpLabel::ZagierA, q(3, 10)), (InterpLabel::B, q(1, 3)), (InterpLabel::A, q(-1, 2))] {
            let a = interp_eval(label, &x, 128).unwrap();
            let b = interp_eval(label, &x, 192).unwrap();
            let d = cx::dist_f64(&a.value, &b.value);
            assert!(d < a.radius, "{label}: shift {d:e} vs radius {:e}", a.radius);
            assert!(a.radius < 1e-30, "{label}: radius {:e}", a.radius);
        }
    }

    #[test]
    fn plain_summation_is_slow_for_f() {
        let v = interp_partial_sum(InterpLabel::F, &q(-1, 2), 100_000, 64).unwrap();
        let d = (v.re.to_f64() - 0.505462019717326).abs();
        assert!(d > 1e-5 && d < 1e-2, "d = {d:e}");
    }
}
