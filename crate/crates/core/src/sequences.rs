//! Exact integer sequences: the six sporadic binomial sums, the Apery numbers,
//! the second and third order recurrences, recurrence fitting and the
//! cellular-integral leading coefficients.
//!
//! Sporadic sums:
//! - A: `sum_k C(n,k)^3`
//! - B: `sum_k (-1)^k 3^(n-3k) C(n,3k) (3k)!/k!^3`
//! - C: `sum_k C(n,k)^2 C(2k,k)`
//! - D: `sum_k C(n,k)^2 C(n+k,k)`
//! - E: `sum_k C(n,k) C(2k,k) C(2(n-k),n-k)`
//! - F: `sum_k (-1)^k 8^(n-k) C(n,k) C_A(k)`

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SporadicLabel {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl SporadicLabel {
    pub const ALL: [SporadicLabel; 6] = [Self::A, Self::B, Self::C, Self::D, Self::E, Self::F];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::A => "A",
            Self::B => "B",
            Self::C => "C",
            Self::D => "D",
            Self::E => "E",
            Self::F => "F",
        }
    }
}

impl fmt::Display for SporadicLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SporadicLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Self::A),
            "B" => Ok(Self::B),
            "C" => Ok(Self::C),
            "D" => Ok(Self::D),
            "E" => Ok(Self::E),
            "F" => Ok(Self::F),
            other => Err(Error::UnsupportedLabel(other.to_string())),
        }
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for j in 0..k {
        r = r * (n - j) / (j + 1);
    }
    r
}

fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 1..=n {
        c = c * (n - k + 1) / k;
        row.push(c.clone());
    }
    row
}

fn central_binomials(n: u64) -> Vec<BigInt> {
    let mut v = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    v.push(c.clone());
    for k in 1..=n {
        c = c * (2 * (2 * k - 1)) / k;
        v.push(c.clone());
    }
    v
}

fn pow_big(base: i64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), e as usize)
}

/// `(3k)! / k!^3` for `k = 0..=n`.
fn trinomials(n: u64) -> Vec<BigInt> {
    let mut v = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    v.push(c.clone());
    for k in 0..n {
        // ratio (3k+1)(3k+2)(3k+3)/(k+1)^3
        c = c * ((3 * k + 1) * (3 * k + 2) * (3 * k + 3)) / ((k + 1) * (k + 1) * (k + 1));
        v.push(c.clone());
    }
    v
}

/// The n-th term of a sporadic sequence, straight from its binomial sum.
pub fn sporadic_term(label: SporadicLabel, n: u64) -> BigInt {
    match label {
        SporadicLabel::F => {
            let ca = sporadic_table(SporadicLabel::A, n);
            term_f(n, &ca)
        }
        _ => term_direct(label, n, &central_binomials(2 * n + 2)),
    }
}

fn term_direct(label: SporadicLabel, n: u64, central: &[BigInt]) -> BigInt {
    let row = binomial_row(n);
    let mut s = BigInt::zero();
    match label {
        SporadicLabel::A => {
            for c in &row {
                s += c * c * c;
            }
        }
        SporadicLabel::B => {
            let tri = trinomials(n / 3);
            for k in 0..=n / 3 {
                let t = pow_big(3, n - 3 * k) * &row[(3 * k) as usize] * &tri[k as usize];
                if k % 2 == 0 {
                    s += t;
                } else {
                    s -= t;
                }
            }
        }
        SporadicLabel::C => {
            for k in 0..=n as usize {
                s += &row[k] * &row[k] * &central[k];
            }
        }
        SporadicLabel::D => {
            // C(n+k,k) updated along k
            let mut up = BigInt::one();
            for k in 0..=n {
                if k > 0 {
                    up = up * (n + k) / k;
                }
                s += &row[k as usize] * &row[k as usize] * &up;
            }
        }
        SporadicLabel::E => {
            for k in 0..=n as usize {
                s += &row[k] * &central[k] * &central[n as usize - k];
            }
        }
        SporadicLabel::F => unreachable!("F needs the A table"),
    }
    s
}

fn term_f(n: u64, ca: &[BigInt]) -> BigInt {
    let row = binomial_row(n);
    let mut s = BigInt::zero();
    for k in 0..=n {
        let t = pow_big(8, n - k) * &row[k as usize] * &ca[k as usize];
        if k % 2 == 0 {
            s += t;
        } else {
            s -= t;
        }
    }
    s
}

/// Terms `0..=n_max` of a sporadic sequence from the binomial sums.
pub fn sporadic_table(label: SporadicLabel, n_max: u64) -> Vec<BigInt> {
    match label {
        SporadicLabel::F => {
            let ca = sporadic_table(SporadicLabel::A, n_max);
            (0..=n_max).map(|n| term_f(n, &ca)).collect()
        }
        _ => {
            let central = central_binomials(n_max + 1);
            (0..=n_max).map(|n| term_direct(label, n, &central)).collect()
        }
    }
}

/// Apery numbers `sum_k C(n,k)^2 C(n+k,k)^2`.
pub fn apery_term(n: u64) -> BigInt {
    let row = binomial_row(n);
    let mut up = BigInt::one();
    let mut s = BigInt::zero();
    for k in 0..=n {
        if k > 0 {
            up = up * (n + k) / k;
        }
        let t = &row[k as usize] * &up;
        s += &t * &t;
    }
    s
}

pub fn apery_table(n_max: u64) -> Vec<BigInt> {
    (0..=n_max).map(apery_term).collect()
}

/// `(n+1)^2 u_{n+1} = (a n^2 + a n + b) u_n - c n^2 u_{n-1}`, `u_{-1} = 0`, `u_0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recurrence2Spec {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl Recurrence2Spec {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        Recurrence2Spec { a: a.into(), b: b.into(), c: c.into() }
    }

    /// The recurrence satisfied by a sporadic sequence.
    pub fn for_label(label: SporadicLabel) -> Self {
        match label {
            SporadicLabel::A => Self::new(7, 2, -8),
            SporadicLabel::B => Self::new(9, 3, 27),
            SporadicLabel::C => Self::new(10, 3, 9),
            SporadicLabel::D => Self::new(11, 3, -1),
            SporadicLabel::E => Self::new(12, 4, 32),
            SporadicLabel::F => Self::new(17, 6, 72),
        }
    }

    /// Zagier's degenerate cases: `c = 0` or a repeated root of `X^2 - aX + c`.
    pub fn is_degenerate(&self) -> bool {
        self.c.is_zero() || &self.a * &self.a == BigInt::from(4) * &self.c
    }
}

/// `(n+1)^3 u_{n+1} = (2n+1)(a n^2 + a n + b) u_n - n (c n^2 + d) u_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recurrence3Spec {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Recurrence3Spec {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Recurrence3Spec { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    pub fn apery() -> Self {
        Self::new(17, 5, 1, 0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum SequenceSource {
    Sporadic(SporadicLabel),
    Apery,
    Recurrence2(Recurrence2Spec),
    Recurrence3(Recurrence3Spec),
    Cellular(u32),
    Sigma8,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SequenceTable {
    pub source: SequenceSource,
    pub terms: Vec<BigInt>,
}

impl SequenceTable {
    pub fn n_max(&self) -> u64 {
        self.terms.len() as u64 - 1
    }

    pub fn text_line(&self) -> String {
        self.terms.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")
    }
}

pub fn run_recurrence2(spec: &Recurrence2Spec, n_max: u64) -> Result<SequenceTable> {
    let mut terms = vec![BigInt::one()];
    let mut prev = BigInt::zero();
    for n in 0..n_max {
        let nb = BigInt::from(n);
        let cur = terms[n as usize].clone();
        let num = (&spec.a * &nb * &nb + &spec.a * &nb + &spec.b) * &cur - &spec.c * &nb * &nb * &prev;
        let den = BigInt::from((n + 1) * (n + 1));
        let (q, r) = num.div_rem(&den);
        if !r.is_zero() {
            return Err(Error::NonIntegralTerm(n + 1));
        }
        prev = cur;
        terms.push(q);
    }
    Ok(SequenceTable { source: SequenceSource::Recurrence2(spec.clone()), terms })
}

pub fn run_recurrence3(spec: &Recurrence3Spec, n_max: u64) -> Result<SequenceTable> {
    let mut terms = vec![BigInt::one()];
    let mut prev = BigInt::zero();
    for n in 0..n_max {
        let nb = BigInt::from(n);
        let cur = terms[n as usize].clone();
        let p = BigInt::from(2 * n + 1) * (&spec.a * &nb * &nb + &spec.a * &nb + &spec.b);
        let q = &nb * (&spec.c * &nb * &nb + &spec.d);
        let num = p * &cur - q * &prev;
        let den = BigInt::from(n + 1).pow(3);
        let (t, r) = num.div_rem(&den);
        if !r.is_zero() {
            return Err(Error::NonIntegralTerm(n + 1));
        }
        prev = cur;
        terms.push(t);
    }
    Ok(SequenceTable { source: SequenceSource::Recurrence3(spec.clone()), terms })
}

/// Outcome of [`fit_recurrence2`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceFit {
    pub spec: Recurrence2Spec,
    pub degenerate: bool,
    pub checked_terms: usize,
}

/// Solve for integral `(a, b, c)` from the first terms and confirm it on all of them.
pub fn fit_recurrence2(terms: &[BigInt]) -> Result<RecurrenceFit> {
    if terms.len() < 5 {
        return Err(Error::InsufficientOrder { needed: 5, have: terms.len() });
    }
    let q = |v: &BigInt| BigRational::from_integer(v.clone());
    let u: Vec<BigRational> = terms.iter().map(q).collect();
    if u[0].is_zero() {
        return Err(Error::NoFit);
    }
    // n = 0: u1 = b u0
    let b = &u[1] / &u[0];
    // n = 1: 4 u2 = (2a + b) u1 - c u0
    // n = 2: 9 u3 = (6a + b) u2 - 4 c u1
    let r = |v: i64| BigRational::from_integer(v.into());
    let (m11, m12, r1) = (r(2) * &u[1], -u[0].clone(), r(4) * &u[2] - &b * &u[1]);
    let (m21, m22, r2) = (r(6) * &u[2], r(-4) * &u[1], r(9) * &u[3] - &b * &u[2]);
    let det = &m11 * &m22 - &m12 * &m21;
    if det.is_zero() {
        return Err(Error::NoFit);
    }
    let a = (&r1 * &m22 - &m12 * &r2) / &det;
    let c = (&m11 * &r2 - &r1 * &m21) / &det;
    if !a.is_integer() || !b.is_integer() || !c.is_integer() {
        return Err(Error::NoFit);
    }
    let spec = Recurrence2Spec { a: a.to_integer(), b: b.to_integer(), c: c.to_integer() };
    for n in 1..terms.len() - 1 {
        let nb = BigInt::from(n as u64);
        let lhs = BigInt::from((n as u64 + 1).pow(2)) * &terms[n + 1];
        let rhs = (&spec.a * &nb * &nb + &spec.a * &nb + &spec.b) * &terms[n]
            - &spec.c * &nb * &nb * &terms[n - 1];
        if lhs != rhs {
            return Err(Error::NoFit);
        }
    }
    let degenerate = spec.is_degenerate();
    Ok(RecurrenceFit { spec, degenerate, checked_terms: terms.len() })
}

/// Leading coefficient of the cellular integral `sigma_N` for odd `N >= 5`:
/// `C_D(n)^((N-3)/2)`.
pub fn cellular_leading(big_n: u32, n: u64) -> Result<BigInt> {
    if big_n < 5 || big_n.is_multiple_of(2) {
        return Err(Error::BadN(format!("N must be odd and >= 5, got {big_n}")));
    }
    let d = term_direct(SporadicLabel::D, n, &[]);
    Ok(num_traits::pow(d, ((big_n - 3) / 2) as usize))
}

/// `sum_{k1+k2=k3+k4} prod_i C(n,k_i) C(n+k_i,k_i)`, evaluated as the sum of
/// squared self-convolutions.
pub fn cellular_sigma8(n: u64) -> BigInt {
    let w = d_weights(n);
    let mut s = BigInt::zero();
    for t in 0..=2 * n as usize {
        let lo = t.saturating_sub(n as usize);
        let hi = t.min(n as usize);
        let mut conv = BigInt::zero();
        for k in lo..=hi {
            conv += &w[k] * &w[t - k];
        }
        s += &conv * &conv;
    }
    s
}

/// `C(n,k) C(n+k,k)` for `k = 0..=n`.
pub(crate) fn d_weights(n: u64) -> Vec<BigInt> {
    let row = binomial_row(n);
    let mut up = BigInt::one();
    let mut w = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        if k > 0 {
            up = up * (n + k) / k;
        }
        w.push(&row[k as usize] * &up);
    }
    w
}

/// The odd-part sequence `u(n) = s((n-1)/2)` for odd `n`, `0` for even `n`.
pub fn odd_part(terms: &[BigInt], n: u64) -> Option<BigInt> {
    if n.is_multiple_of(2) {
        return Some(BigInt::zero());
    }
    terms.get(((n - 1) / 2) as usize).cloned()
}

/// Residue of an integer modulo `m`, in `[0, m)`.
pub fn mod_floor(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a % m;
    if r.is_negative() {
        r + m
    } else {
        r
    }
}

pub fn to_u64(v: &BigInt) -> Option<u64> {
    v.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn sporadic_prefixes() {
        assert_eq!(sporadic_table(SporadicLabel::A, 5), ints(&[1, 2, 10, 56, 346, 2252]));
        assert_eq!(sporadic_table(SporadicLabel::B, 5), ints(&[1, 3, 9, 21, 9, -297]));
        assert_eq!(sporadic_table(SporadicLabel::C, 5), ints(&[1, 3, 15, 93, 639, 4653]));
        assert_eq!(sporadic_table(SporadicLabel::D, 5), ints(&[1, 3, 19, 147, 1251, 11253]));
        assert_eq!(sporadic_table(SporadicLabel::E, 5), ints(&[1, 4, 20, 112, 676, 4304]));
        assert_eq!(sporadic_table(SporadicLabel::F, 5), ints(&[1, 6, 42, 312, 2394, 18756]));
        assert_eq!(apery_table(3), ints(&[1, 5, 73, 1445]));
    }

    #[test]
    fn recurrences_reproduce_sums() {
        for label in SporadicLabel::ALL {
            let table = run_recurrence2(&Recurrence2Spec::for_label(label), 60).unwrap();
            assert_eq!(table.terms, sporadic_table(label, 60), "label {label}");
        }
        let ap = run_recurrence3(&Recurrence3Spec::apery(), 60).unwrap();
        assert_eq!(ap.terms, apery_table(60));
    }

    #[test]
    fn fit_finds_table_parameters() {
        for label in SporadicLabel::ALL {
            let fit = fit_recurrence2(&sporadic_table(label, 30)).unwrap();
            assert_eq!(fit.spec, Recurrence2Spec::for_label(label));
            assert!(!fit.degenerate);
        }
        let ones = vec![BigInt::one(); 12];
        let fit = fit_recurrence2(&ones).unwrap();
        assert!(fit.degenerate);
        assert!(fit_recurrence2(&ints(&[1, 2, 4, 8, 16, 32, 64, 128])).unwrap().degenerate);
        assert_eq!(fit_recurrence2(&ints(&[1, 2, 3, 5, 7, 11, 13, 17])), Err(Error::NoFit));
    }

    #[test]
    fn non_integral_recurrence() {
        assert_eq!(run_recurrence2(&Recurrence2Spec::new(1, 1, 1), 5).err(), Some(Error::NonIntegralTerm(2)));
    }

    #[test]
    fn cellular() {
        let d = sporadic_table(SporadicLabel::D, 6);
        for n in 0..=6 {
            assert_eq!(cellular_leading(5, n).unwrap(), d[n as usize]);
            assert_eq!(cellular_leading(7, n).unwrap(), &d[n as usize] * &d[n as usize]);
        }
        assert!(matches!(cellular_leading(6, 1), Err(Error::BadN(_))));
        assert_eq!(cellular_sigma8(0), BigInt::from(1));
        assert_eq!(cellular_sigma8(1), BigInt::from(33));
    }

    #[test]
    fn sigma8_against_quadruple_sum() {
        for n in 0..=9u64 {
            let w = d_weights(n);
            let mut s = BigInt::zero();
            for k1 in 0..=n {
                for k2 in 0..=n {
                    for k3 in 0..=n {
                        let k4 = (k1 + k2) as i64 - k3 as i64;
                        if k4 < 0 || k4 > n as i64 {
                            continue;
                        }
                        s += &w[k1 as usize] * &w[k2 as usize] * &w[k3 as usize] * &w[k4 as usize];
                    }
                }
            }
            assert_eq!(cellular_sigma8(n), s, "n = {n}");
        }
    }
}
