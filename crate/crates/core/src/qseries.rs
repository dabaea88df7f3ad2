//! Truncated q-expansions with exact coefficients.
//!
//! A series is `q^(offset24/24) * (c_0 + c_1 q + ... + c_{L-1} q^(L-1) + O(q^L))`,
//! so eta quotients with fractional leading exponents are represented
//! exactly. Operations keep track of how many coefficients are known.

use std::fmt::{self, Write as _};
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::report::{ClaimClass, Report};

/// Coefficient ring for [`QSeries`].
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = Self> {
    fn from_i64(v: i64) -> Self;
    /// Exact quotient within the ring, if it exists.
    fn try_div(&self, other: &Self) -> Option<Self>;
    /// Exact square root within the ring, if it exists.
    fn try_sqrt(&self) -> Option<Self>;
    /// Numerator and denominator as decimal strings.
    fn num_den(&self) -> (String, String);
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
}

fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl Coefficient for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn try_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(other);
        r.is_zero().then_some(q)
    }
    fn try_sqrt(&self) -> Option<Self> {
        isqrt_exact(self)
    }
    fn num_den(&self) -> (String, String) {
        (self.to_string(), "1".to_string())
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
}

impl Coefficient for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn try_div(&self, other: &Self) -> Option<Self> {
        (!other.is_zero()).then(|| self / other)
    }
    fn try_sqrt(&self) -> Option<Self> {
        Some(BigRational::new(isqrt_exact(self.numer())?, isqrt_exact(self.denom())?))
    }
    fn num_den(&self) -> (String, String) {
        (self.numer().to_string(), self.denom().to_string())
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
}

impl Coefficient for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn try_div(&self, other: &Self) -> Option<Self> {
        (*other != 0.0).then(|| self / other)
    }
    fn try_sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }
    fn num_den(&self) -> (String, String) {
        (format!("{self:e}"), "1".to_string())
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QSeries<T> {
    offset24: i64,
    coeffs: Vec<T>,
}

pub type RatSeries = QSeries<BigRational>;
pub type IntSeries = QSeries<BigInt>;

impl<T: Coefficient> QSeries<T> {
    /// Series with the given leading exponent (in units of 1/24) and known coefficients.
    pub fn new(offset24: i64, coeffs: Vec<T>) -> Self {
        QSeries { offset24, coeffs }
    }

    pub fn one(len: usize) -> Self {
        let mut c = vec![T::zero(); len.max(1)];
        c[0] = T::one();
        QSeries { offset24: 0, coeffs: c }
    }

    pub fn zero(offset24: i64, len: usize) -> Self {
        QSeries { offset24, coeffs: vec![T::zero(); len] }
    }

    /// `c q^(e24/24)` known to `len` terms.
    pub fn monomial(e24: i64, c: T, len: usize) -> Self {
        let mut v = vec![T::zero(); len.max(1)];
        v[0] = c;
        QSeries { offset24: e24, coeffs: v }
    }

    pub fn offset24(&self) -> i64 {
        self.offset24
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent (units of 1/24) of the first unknown term.
    pub fn order24(&self) -> i64 {
        self.offset24 + 24 * self.coeffs.len() as i64
    }

    /// Coefficient of `q^(e24/24)`, if known.
    pub fn coeff_at24(&self, e24: i64) -> Option<T> {
        let d = e24 - self.offset24;
        if d < 0 {
            return (e24 < self.order24()).then(T::zero);
        }
        if d % 24 != 0 {
            return (e24 < self.order24()).then(T::zero);
        }
        self.coeffs.get((d / 24) as usize).cloned()
    }

    /// Coefficient of `q^n` for integral `n`.
    pub fn coeff(&self, n: i64) -> Option<T> {
        self.coeff_at24(24 * n)
    }

    pub fn truncate(&self, len: usize) -> Self {
        QSeries { offset24: self.offset24, coeffs: self.coeffs[..len.min(self.coeffs.len())].to_vec() }
    }

    /// Drop leading zero coefficients, moving the offset.
    pub fn normalized(&self) -> Self {
        let lead = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.coeffs.len());
        if lead == self.coeffs.len() {
            return self.clone();
        }
        QSeries { offset24: self.offset24 + 24 * lead as i64, coeffs: self.coeffs[lead..].to_vec() }
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if (self.offset24 - other.offset24).rem_euclid(24) != 0 {
            return Err(Error::BadN(format!(
                "offsets {}/24 and {}/24 differ by a non-integer",
                self.offset24, other.offset24
            )));
        }
        Ok(())
    }

    fn add_impl(&self, other: &Self, sub: bool) -> Result<Self> {
        self.compatible(other)?;
        let off = self.offset24.min(other.offset24);
        let ord = self.order24().min(other.order24());
        let len = ((ord - off) / 24).max(0) as usize;
        let mut out = vec![T::zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            let j = ((self.offset24 - off) / 24) as usize + i;
            if j < len {
                out[j] = out[j].add_ref(c);
            }
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let j = ((other.offset24 - off) / 24) as usize + i;
            if j < len {
                out[j] = if sub { out[j].sub_ref(c) } else { out[j].add_ref(c) };
            }
        }
        Ok(QSeries { offset24: off, coeffs: out })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.add_impl(other, false)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add_impl(other, true)
    }

    pub fn scale(&self, c: &T) -> Self {
        QSeries { offset24: self.offset24, coeffs: self.coeffs.iter().map(|x| x.mul_ref(c)).collect() }
    }

    pub fn neg(&self) -> Self {
        QSeries { offset24: self.offset24, coeffs: self.coeffs.iter().map(|x| -x.clone()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let len = self.len().min(other.len());
        let mut out = vec![T::zero(); len];
        for (i, a) in self.coeffs.iter().take(len).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(len - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        QSeries { offset24: self.offset24 + other.offset24, coeffs: out }
    }

    /// Multiplicative inverse; the leading coefficient must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        let s = self.normalized();
        let c0 = s.coeffs.first().ok_or(Error::InsufficientOrder { needed: 1, have: 0 })?;
        if c0.is_zero() {
            return Err(Error::InsufficientOrder { needed: 1, have: 0 });
        }
        let inv0 = T::one().try_div(c0).ok_or_else(|| Error::NonRealCoefficient(format!("{c0:?} is not a unit")))?;
        let n = s.len();
        let mut out: Vec<T> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut acc = T::zero();
            for j in 1..=k {
                if !s.coeffs[j].is_zero() {
                    acc = acc.add_ref(&s.coeffs[j].mul_ref(&out[k - j]));
                }
            }
            out.push(-(acc.mul_ref(&inv0)));
        }
        Ok(QSeries { offset24: -s.offset24, coeffs: out })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.inverse()?.pow(-k);
        }
        let mut base = self.clone();
        let mut acc = QSeries::one(self.len());
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Square root with positive leading coefficient.
    pub fn sqrt(&self) -> Result<Self> {
        let s = self.normalized();
        if s.offset24 % 2 != 0 {
            return Err(Error::NotASquare);
        }
        let c0 = s.coeffs.first().ok_or(Error::NotASquare)?;
        let r0 = c0.try_sqrt().ok_or(Error::NotASquare)?;
        let two_r0 = r0.add_ref(&r0);
        let n = s.len();
        let mut r: Vec<T> = Vec::with_capacity(n);
        r.push(r0);
        for k in 1..n {
            let mut acc = s.coeffs[k].clone();
            for i in 1..k {
                acc = acc.sub_ref(&r[i].mul_ref(&r[k - i]));
            }
            let v = acc.try_div(&two_r0).ok_or(Error::NotASquare)?;
            r.push(v);
        }
        Ok(QSeries { offset24: s.offset24 / 2, coeffs: r })
    }

    /// Drop every term at or beyond `q^order`.
    pub fn truncate_below(&self, order: usize) -> Self {
        let cut = 24 * order as i64 - self.offset24;
        let keep = if cut <= 0 { 0 } else { ((cut + 23) / 24) as usize };
        self.truncate(keep.min(self.len()))
    }

    /// Substitute `tau -> d tau`.
    pub fn rescale(&self, d: u32) -> Self {
        assert!(d >= 1);
        let d = d as usize;
        // known to relative order d * L; the zeros in between are exact
        let mut out = vec![T::zero(); self.len() * d];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * d] = c.clone();
        }
        QSeries { offset24: self.offset24 * d as i64, coeffs: out }
    }

    /// `q d/dq`.
    pub fn q_derivative(&self) -> Result<Self> {
        let mut out = Vec::with_capacity(self.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let e24 = self.offset24 + 24 * i as i64;
            let v = c.mul_ref(&T::from_i64(e24)).try_div(&T::from_i64(24));
            out.push(v.ok_or_else(|| Error::NonRealCoefficient(format!("{c:?} * {e24}/24")))?);
        }
        Ok(QSeries { offset24: self.offset24, coeffs: out })
    }

    /// `sum_n outer[n] * inner^n` by Horner's scheme. `inner` must start at a
    /// positive integral power of q.
    pub fn compose(outer: &[T], inner: &Self) -> Result<Self> {
        let inner = inner.normalized();
        if inner.offset24 <= 0 || inner.offset24 % 24 != 0 {
            return Err(Error::CompositionDiverges);
        }
        let v = (inner.offset24 / 24) as usize;
        let len = inner.len() + v;
        // relative to q^0 the composite is known through q^(len-1)
        let n_needed = (len - 1) / v;
        if outer.len() <= n_needed {
            return Err(Error::InsufficientOrder { needed: n_needed + 1, have: outer.len() });
        }
        // inner as plain series from q^0
        let mut base = vec![T::zero(); len];
        for (i, c) in inner.coeffs.iter().enumerate() {
            base[v + i] = c.clone();
        }
        let mut acc = vec![T::zero(); len];
        acc[0] = outer[n_needed].clone();
        for n in (0..n_needed).rev() {
            // acc * base only needs len - v*n terms at this depth
            let keep = len - v * n;
            let mut next = vec![T::zero(); len];
            for (i, a) in acc.iter().enumerate().take(keep) {
                if a.is_zero() {
                    continue;
                }
                for j in v..keep.saturating_sub(i) {
                    let b = &base[j];
                    if !b.is_zero() {
                        next[i + j] = next[i + j].add_ref(&a.mul_ref(b));
                    }
                }
            }
            next[0] = next[0].add_ref(&outer[n]);
            acc = next;
        }
        Ok(QSeries { offset24: 0, coeffs: acc })
    }

    /// First exponent (in units of 1/24) where two series differ, comparing up
    /// to the shorter known order.
    pub fn first_difference(&self, other: &Self) -> Result<Option<i64>> {
        let d = self.sub(other)?;
        Ok(d.coeffs.iter().position(|c| !c.is_zero()).map(|i| d.offset24 + 24 * i as i64))
    }

    /// TSV lines `exponent24<TAB>numerator<TAB>denominator`.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("exponent24\tnumerator\tdenominator\n");
        for (i, c) in self.coeffs.iter().enumerate() {
            let (n, d) = c.num_den();
            let _ = writeln!(s, "{}\t{}\t{}", self.offset24 + 24 * i as i64, n, d);
        }
        s
    }

    pub fn map<U: Coefficient>(&self, f: impl Fn(&T) -> U) -> QSeries<U> {
        QSeries { offset24: self.offset24, coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl QSeries<BigInt> {
    pub fn to_rational(&self) -> RatSeries {
        self.map(|c| BigRational::from_integer(c.clone()))
    }
}

/// `prod_i eta(m_i tau)^(e_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotientSpec {
    pub factors: Vec<(u32, i32)>,
}

impl EtaQuotientSpec {
    pub fn new(factors: &[(u32, i32)]) -> Self {
        EtaQuotientSpec { factors: factors.to_vec() }
    }

    /// Leading exponent in units of 1/24.
    pub fn offset24(&self) -> i64 {
        self.factors.iter().map(|&(m, e)| m as i64 * e as i64).sum()
    }

    pub fn weight_twice(&self) -> i64 {
        self.factors.iter().map(|&(_, e)| e as i64).sum()
    }

    /// Parse `"1^4 2^2 4^4"` or `"4^6"` style specs (`m^e`, `e` may be negative).
    pub fn parse(s: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let (m, e) = tok.split_once('^').unwrap_or((tok, "1"));
            let m: u32 = m.parse().map_err(|_| Error::BadN(format!("bad eta factor {tok}")))?;
            let e: i32 = e.parse().map_err(|_| Error::BadN(format!("bad eta factor {tok}")))?;
            if m == 0 {
                return Err(Error::BadN("eta(0 tau)".into()));
            }
            factors.push((m, e));
        }
        Ok(EtaQuotientSpec { factors })
    }
}

impl fmt::Display for EtaQuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|(m, e)| format!("{m}^{e}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// `prod_a (1 - q^(m a))` as sparse `(exponent, +-1)` pairs below `len`,
/// from Euler's pentagonal number theorem.
fn euler_factor(m: usize, len: usize) -> Vec<(usize, bool)> {
    let mut out = vec![(0, true)];
    for k in 1.. {
        let p1 = m * (k * (3 * k - 1) / 2);
        if p1 >= len {
            break;
        }
        let neg = k % 2 == 1;
        out.push((p1, !neg));
        let p2 = m * (k * (3 * k + 1) / 2);
        if p2 < len {
            out.push((p2, !neg));
        }
    }
    out
}

/// Expand an eta quotient to `len` coefficients from its leading term:
/// each `eta(m tau)^(+-1)` is a multiplication or division by the sparse
/// pentagonal series, `O(len^1.5)` per factor.
pub fn eta_quotient_expand<T: Coefficient>(spec: &EtaQuotientSpec, len: usize) -> QSeries<T> {
    let mut c = vec![T::zero(); len.max(1)];
    c[0] = T::one();
    let len = c.len();
    for &(m, e) in &spec.factors {
        let f = euler_factor(m as usize, len);
        for _ in 0..e.unsigned_abs() {
            if e > 0 {
                for i in (0..len).rev() {
                    let mut acc = c[i].clone();
                    for &(p, pos) in f.iter().skip(1).take_while(|&&(p, _)| p <= i) {
                        let v = &c[i - p];
                        if !v.is_zero() {
                            acc = if pos { acc.add_ref(v) } else { acc.sub_ref(v) };
                        }
                    }
                    c[i] = acc;
                }
            } else {
                for i in 1..len {
                    let mut acc = c[i].clone();
                    for &(p, pos) in f.iter().skip(1).take_while(|&&(p, _)| p <= i) {
                        let v = &c[i - p];
                        if !v.is_zero() {
                            acc = if pos { acc.sub_ref(v) } else { acc.add_ref(v) };
                        }
                    }
                    c[i] = acc;
                }
            }
        }
    }
    QSeries { offset24: spec.offset24(), coeffs: c }
}

fn ensure_known<T: Coefficient>(s: &QSeries<T>, order: usize) -> Result<()> {
    let have = s.order24();
    let need = 24 * order as i64;
    if have < need {
        return Err(Error::InsufficientOrder { needed: order, have: (have.max(0) / 24) as usize });
    }
    Ok(())
}

/// First exponent (units of 1/24) below `q^order` where `a` and `b` differ.
pub fn first_difference_below<T: Coefficient>(a: &QSeries<T>, b: &QSeries<T>, order: usize) -> Result<Option<i64>> {
    ensure_known(a, order)?;
    ensure_known(b, order)?;
    let cut = 24 * order as i64;
    Ok(a.first_difference(b)?.filter(|&e| e < cut))
}

fn show_failure(f: Option<i64>) -> String {
    match f {
        None => "none".into(),
        Some(e) if e % 24 == 0 => format!("q^{}", e / 24),
        Some(e) => format!("q^({e}/24)"),
    }
}

/// Checks a modular parametrization `y = sum C(n) x^n` and, with
/// `x~^2 = x(2 tau)`, `y~ = x~ y(2 tau)`, the identities
/// `y~ (q/x~) dx~/dq = rhs` and `y~ = sum_{n odd} C((n-1)/2) x~^n`,
/// all to `O(q^order)`. The returned report carries the first failing
/// exponent of each check; the caller sets the claim id.
pub fn verify_parametrization_identity<T: Coefficient>(
    x: &QSeries<T>,
    y: &QSeries<T>,
    c: &[T],
    rhs: &QSeries<T>,
    order: usize,
) -> Result<Report> {
    ensure_known(x, order)?;
    ensure_known(y, order)?;
    ensure_known(rhs, order)?;
    if c.len() < order + 1 {
        return Err(Error::InsufficientOrder { needed: order + 1, have: c.len() });
    }
    let composed = QSeries::compose(&c[..=order], &x.truncate_below(order))?;
    let f_compose = first_difference_below(y, &composed, order)?;

    let xt = x.rescale(2).sqrt()?;
    let yt = xt.mul(&y.rescale(2));
    let lhs = yt.mul(&xt.q_derivative()?.div(&xt)?);
    let f_rhs = first_difference_below(&lhs, rhs, order)?;

    let mut odd = vec![T::zero(); 2 * order + 2];
    for (k, ck) in c.iter().take(order + 1).enumerate() {
        odd[2 * k + 1] = ck.clone();
    }
    let odd_sum = QSeries::compose(&odd[..=order], &xt.truncate_below(order))?;
    let f_odd = first_difference_below(&yt, &odd_sum, order)?;

    let pass = f_compose.is_none() && f_rhs.is_none() && f_odd.is_none();
    Ok(Report::new(
        "parametrization",
        ClaimClass::Theorem,
        "y = sum C(n) x^n; y~ (q/x~) dx~/dq = rhs; y~ = sum_{n odd} C((n-1)/2) x~^n",
    )
    .param("order", order)
    .sides(
        format!(
            "first failure: compose {}, rhs {}, odd part {}",
            show_failure(f_compose),
            show_failure(f_rhs),
            show_failure(f_odd)
        ),
        format!("exact to O(q^{order})"),
    )
    .modulus(format!("O(q^{order})"))
    .terms(order as u64)
    .method("truncated power series, Horner composition")
    .pass(pass))
}
