//! Congruences between sequence values and Fourier coefficients.

mod padic;
mod primes;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use padic::{padic_gamma, padic_gamma_int, rational_residue, PAdicContext};
pub use primes::{is_prime, jacobi, primes_between, primes_up_to, valuation};

use crate::error::{Error, Result};
use crate::modforms::{apery_weight4_form, binary_theta_coeffs, form_coeffs, newform_coeffs, CoeffTable};
use crate::report::{ClaimClass, Report};
use crate::sequences::{
    mod_floor, run_recurrence2, run_recurrence3, sporadic_table, Recurrence2Spec, Recurrence3Spec, SporadicLabel,
};

/// Valuations beyond this are reported as "at least".
const MAX_POWER_CAP: u32 = 8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub claim: String,
    pub class: ClaimClass,
    pub label: Option<String>,
    pub p: u64,
    pub modulus: BigInt,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub pass: bool,
    /// Largest `e <= 8` with `lhs = rhs mod p^e` on the unreduced values;
    /// `None` when they are equal.
    pub max_power: Option<u32>,
}

impl CongruenceReport {
    fn build(claim: &str, class: ClaimClass, label: Option<String>, p: u64, power: u32, lhs: &BigInt, rhs: &BigInt) -> Self {
        let modulus = BigInt::from(p).pow(power);
        let diff = lhs - rhs;
        let max_power = valuation(&diff, p).map(|v| v.min(MAX_POWER_CAP));
        let pass = (&diff % &modulus).is_zero();
        CongruenceReport {
            claim: claim.to_string(),
            class,
            label,
            p,
            lhs: mod_floor(lhs, &modulus),
            rhs: mod_floor(rhs, &modulus),
            modulus,
            pass,
            max_power,
        }
    }

    pub fn to_report(&self, statement: &str) -> Report {
        let mut r = Report::new(&self.claim, self.class, statement)
            .param("p", self.p)
            .sides(&self.lhs, &self.rhs)
            .modulus(&self.modulus)
            .pass(self.pass);
        if let Some(l) = &self.label {
            r = r.param("label", l);
        }
        if let Some(e) = self.max_power {
            r = r.param("holds_to_power", e);
        }
        r
    }

    /// One JSON line `{claim, p, modulus, lhs, rhs, pass}`.
    pub fn json_line(&self) -> String {
        serde_json::json!({
            "claim": self.claim,
            "p": self.p,
            "modulus": self.modulus.to_string(),
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
            "pass": self.pass,
        })
        .to_string()
    }
}

fn half(p: u64) -> usize {
    ((p - 1) / 2) as usize
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(Error::OutOfDomain(format!("{p} is not an odd prime")));
    }
    Ok(())
}

/// Sequence values `C_*(n)` for `n <= (P-1)/2` and coefficients up to `P`,
/// shared across a prime sweep.
pub struct Weight3Tables {
    prime_max: u64,
    seqs: Vec<Vec<BigInt>>,
    gammas: Vec<CoeffTable>,
}

impl Weight3Tables {
    pub fn new(prime_max: u64) -> Result<Self> {
        let prime_max = prime_max.max(3);
        let built: Vec<Result<(Vec<BigInt>, CoeffTable)>> = SporadicLabel::ALL
            .par_iter()
            .map(|&l| Ok((sporadic_table(l, (prime_max - 1) / 2), newform_coeffs(l, prime_max)?)))
            .collect();
        let mut seqs = Vec::new();
        let mut gammas = Vec::new();
        for b in built {
            let (s, g) = b?;
            seqs.push(s);
            gammas.push(g);
        }
        Ok(Weight3Tables { prime_max, seqs, gammas })
    }

    pub fn prime_max(&self) -> u64 {
        self.prime_max
    }

    fn idx(label: SporadicLabel) -> usize {
        SporadicLabel::ALL.iter().position(|&l| l == label).expect("label listed")
    }

    pub fn term(&self, label: SporadicLabel, n: usize) -> Result<&BigInt> {
        self.seqs[Self::idx(label)].get(n).ok_or(Error::CoefficientUnavailable(n as u64))
    }

    pub fn gamma(&self, label: SporadicLabel, p: u64) -> Result<&BigInt> {
        self.gammas[Self::idx(label)].get(p)
    }
}

fn weight3_class(label: SporadicLabel) -> ClaimClass {
    if label == SporadicLabel::F {
        ClaimClass::Observation
    } else {
        ClaimClass::Theorem
    }
}

/// `C_*((p-1)/2) = gamma_{p,*} (mod p)`.
pub fn verify_weight3(star: SporadicLabel, p: u64) -> Result<CongruenceReport> {
    require_odd_prime(p)?;
    verify_weight3_in(&Weight3Tables::new(p)?, star, p)
}

pub fn verify_weight3_in(t: &Weight3Tables, star: SporadicLabel, p: u64) -> Result<CongruenceReport> {
    require_odd_prime(p)?;
    let (c, g) = (t.term(star, half(p))?, t.gamma(star, p)?);
    Ok(CongruenceReport::build("thm1", weight3_class(star), Some(star.to_string()), p, 1, c, g))
}

/// The mod `p^2` refinement, which holds only for `D`.
pub fn verify_weight3_modp2(star: SporadicLabel, p: u64) -> Result<CongruenceReport> {
    if star != SporadicLabel::D {
        return Err(Error::UnsupportedLabel(star.to_string()));
    }
    require_odd_prime(p)?;
    verify_weight3_modp2_in(&Weight3Tables::new(p)?, p)
}

pub fn verify_weight3_modp2_in(t: &Weight3Tables, p: u64) -> Result<CongruenceReport> {
    let d = SporadicLabel::D;
    let (c, g) = (t.term(d, half(p))?, t.gamma(d, p)?);
    Ok(CongruenceReport::build("thm1-modp2", ClaimClass::Theorem, Some("D".into()), p, 2, c, g))
}

/// The mod `p` sweep over odd primes: `A..E` up to `prime_max`, `F` up to `f_max`.
pub fn weight3_sweep(prime_max: u64, f_max: u64) -> Result<Vec<CongruenceReport>> {
    let t = Weight3Tables::new(prime_max.max(f_max))?;
    let mut jobs = Vec::new();
    for p in primes_between(3, prime_max.max(f_max)) {
        for &l in &SporadicLabel::ALL {
            let limit = if l == SporadicLabel::F { f_max } else { prime_max };
            if p <= limit {
                jobs.push((l, p));
            }
        }
    }
    jobs.par_iter().map(|&(l, p)| verify_weight3_in(&t, l, p)).collect()
}

pub fn modp2_sweep(prime_max: u64) -> Result<Vec<CongruenceReport>> {
    let t = Weight3Tables::new(prime_max)?;
    primes_between(5, prime_max).par_iter().map(|&p| verify_weight3_modp2_in(&t, p)).collect()
}

/// `C_D((p-1)/2)^((N-3)/2) = gamma_{N-2}(p) (mod p^2)`.
pub fn verify_supercongruence(big_n: u32, p: u64) -> Result<CongruenceReport> {
    check_n(big_n)?;
    let cd = sporadic_table(SporadicLabel::D, (p.max(5) - 1) / 2);
    let theta = binary_theta_coeffs(big_n.saturating_sub(2), p.max(1))?;
    verify_supercongruence_in(big_n, p, &cd, &theta)
}

fn check_n(big_n: u32) -> Result<()> {
    if big_n < 5 || big_n.is_multiple_of(2) {
        return Err(Error::BadN(format!("N must be odd and >= 5, got {big_n}")));
    }
    Ok(())
}

/// As [`verify_supercongruence`] with a precomputed `C_D` table and the
/// coefficient table of `f_{N-2}`.
pub fn verify_supercongruence_in(big_n: u32, p: u64, cd: &[BigInt], theta: &CoeffTable) -> Result<CongruenceReport> {
    check_n(big_n)?;
    if p < 5 || !is_prime(p) {
        return Err(Error::OutOfDomain(format!("need a prime p >= 5, got {p}")));
    }
    let d = cd.get(half(p)).ok_or(Error::CoefficientUnavailable(half(p) as u64))?;
    let q = BigInt::from(p * p);
    // the leading coefficient itself is huge; only its residue matters
    let lhs = mod_floor(d, &q).modpow(&BigInt::from((big_n - 3) / 2), &q);
    let g = theta.get(p)?;
    let mut r = CongruenceReport::build("thm3", ClaimClass::Theorem, Some(format!("N={big_n}")), p, 2, &lhs, g);
    // lhs was reduced mod p^2, so powers above 2 say nothing
    r.max_power = r.max_power.map(|v| v.min(2));
    Ok(r)
}

pub fn supercongruence_sweep(ns: &[u32], prime_max: u64) -> Result<Vec<CongruenceReport>> {
    for &n in ns {
        check_n(n)?;
    }
    let cd = sporadic_table(SporadicLabel::D, (prime_max.max(5) - 1) / 2);
    let thetas: Vec<CoeffTable> = ns.iter().map(|&n| binary_theta_coeffs(n - 2, prime_max)).collect::<Result<_>>()?;
    let jobs: Vec<(usize, u64)> =
        (0..ns.len()).flat_map(|i| primes_between(5, prime_max).into_iter().map(move |p| (i, p))).collect();
    jobs.par_iter().map(|&(i, p)| verify_supercongruence_in(ns[i], p, &cd, &thetas[i])).collect()
}

/// `u(m p^r) - gamma_p u(m p^(r-1)) + chi_p p^(k+1) u(m p^(r-2)) = 0 (mod p^r)`.
///
/// `seq[n] = u(n)`; `u` at a non-integral index is read as `0`. The
/// character value `chi_p` is supplied by the caller.
pub fn verify_three_term(
    seq: &[BigInt],
    gamma: &CoeffTable,
    chi_p: i64,
    k: u32,
    p: u64,
    m: u64,
    r: u32,
) -> Result<CongruenceReport> {
    if r == 0 {
        return Err(Error::OutOfDomain("r must be at least 1".into()));
    }
    let at = |e: i64| -> Result<BigInt> {
        // index m p^e, possibly fractional
        let idx = if e >= 0 {
            Some(m * p.pow(e as u32))
        } else {
            let d = p.pow((-e) as u32);
            m.is_multiple_of(d).then(|| m / d)
        };
        match idx {
            None => Ok(BigInt::zero()),
            Some(i) => seq.get(i as usize).cloned().ok_or(Error::CoefficientUnavailable(i)),
        }
    };
    let r_i = r as i64;
    let g = gamma.get(p)?;
    let pk = BigInt::from(p).pow(k + 1) * chi_p;
    let combo = at(r_i)? - g * at(r_i - 1)? + pk * at(r_i - 2)?;
    let mut rep = CongruenceReport::build(
        "three-term",
        ClaimClass::Theorem,
        Some(format!("{} m={m} r={r}", gamma.form.name)),
        p,
        r,
        &combo,
        &BigInt::zero(),
    );
    rep.lhs = mod_floor(&combo, &rep.modulus);
    Ok(rep)
}

/// Parametrizations for which the three-term congruence is checked. Each
/// has its odd-part sequence `u(n) = s((n-1)/2)` and the weight `k + 2`
/// eigenform attached to `y~ q/x~ dx~/dq`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThreeTermCase {
    /// `C_C` with `f_C`, character `(-3/p)`.
    C,
    /// `C_E` with `f_E + 2 f_E(2 tau)`, character `(-2/p)`.
    E,
    /// Apery numbers with `f - 9 f(3 tau)`, trivial character.
    Apery,
}

impl ThreeTermCase {
    pub const ALL: [ThreeTermCase; 3] = [ThreeTermCase::C, ThreeTermCase::E, ThreeTermCase::Apery];

    pub fn name(self) -> &'static str {
        match self {
            ThreeTermCase::C => "three-term-C",
            ThreeTermCase::E => "three-term-E",
            ThreeTermCase::Apery => "three-term-apery",
        }
    }

    /// `k` in the exponent `p^(k+1)`: the weight of `y`.
    pub fn k(self) -> u32 {
        match self {
            ThreeTermCase::Apery => 2,
            _ => 1,
        }
    }

    pub fn chi(self, p: u64) -> i64 {
        match self {
            ThreeTermCase::C => jacobi(-3, p),
            ThreeTermCase::E => jacobi(-2, p),
            ThreeTermCase::Apery => 1,
        }
    }

    /// Primes dividing the level of the parametrization.
    pub fn bad_primes(self) -> &'static [u64] {
        match self {
            ThreeTermCase::C | ThreeTermCase::Apery => &[2, 3],
            ThreeTermCase::E => &[2],
        }
    }

    /// The base sequence `s(0..=n_max)`.
    pub fn base_sequence(self, n_max: u64) -> Result<Vec<BigInt>> {
        Ok(match self {
            ThreeTermCase::C => run_recurrence2(&Recurrence2Spec::for_label(SporadicLabel::C), n_max)?.terms,
            ThreeTermCase::E => run_recurrence2(&Recurrence2Spec::for_label(SporadicLabel::E), n_max)?.terms,
            ThreeTermCase::Apery => run_recurrence3(&Recurrence3Spec::apery(), n_max)?.terms,
        })
    }

    /// The odd-part sequence `u(0..=2 n_max + 1)`.
    pub fn odd_part_sequence(self, n_max: u64) -> Result<Vec<BigInt>> {
        let base = self.base_sequence(n_max)?;
        let mut u = Vec::with_capacity(2 * base.len());
        for s in base {
            u.push(BigInt::zero());
            u.push(s);
        }
        Ok(u)
    }

    pub fn form(self, n_max: u64) -> Result<CoeffTable> {
        match self {
            ThreeTermCase::C => newform_coeffs(SporadicLabel::C, n_max),
            ThreeTermCase::E => newform_coeffs(SporadicLabel::E, n_max),
            ThreeTermCase::Apery => form_coeffs(&apery_weight4_form(), n_max),
        }
    }
}

/// Three-term checks for every good prime `p <= prime_max`, every
/// `m in ms` and `1 <= r <= r_max` with `m p^r <= index_max`.
pub fn three_term_sweep(
    case: ThreeTermCase,
    prime_max: u64,
    ms: &[u64],
    r_max: u32,
    index_max: u64,
) -> Result<Vec<CongruenceReport>> {
    let u = case.odd_part_sequence(index_max / 2)?;
    let gamma = case.form(prime_max)?;
    let mut jobs = Vec::new();
    for p in primes_between(3, prime_max) {
        if case.bad_primes().contains(&p) {
            continue;
        }
        for &m in ms {
            for r in 1..=r_max {
                if m.checked_mul(p.pow(r)).is_some_and(|i| i <= index_max) {
                    jobs.push((p, m, r));
                }
            }
        }
    }
    jobs.par_iter()
        .map(|&(p, m, r)| {
            let mut rep = verify_three_term(&u, &gamma, case.chi(p), case.k(), p, m, r)?;
            rep.claim = case.name().to_string();
            Ok(rep)
        })
        .collect()
}

/// `C_B((p-1)/2) = C_D((p-1)/2)` and `C_E((p-1)/2) = (-1)^((p-1)/2) C_A((p-1)/2)`, both mod `p`.
pub fn verify_cross_congruences(p: u64) -> Result<[CongruenceReport; 2]> {
    require_odd_prime(p)?;
    let n = (p - 1) / 2;
    let t = |l| sporadic_table(l, n).pop().expect("n + 1 terms");
    let (a, b, d, e) = (t(SporadicLabel::A), t(SporadicLabel::B), t(SporadicLabel::D), t(SporadicLabel::E));
    let sign = if n.is_multiple_of(2) { a } else { -a };
    Ok([
        CongruenceReport::build("cross-BD", ClaimClass::Theorem, None, p, 1, &b, &d),
        CongruenceReport::build("cross-AE", ClaimClass::Theorem, None, p, 1, &e, &sign),
    ])
}

pub fn cross_sweep(prime_max: u64) -> Result<Vec<CongruenceReport>> {
    let t = Weight3Tables::new(prime_max)?;
    let mut out = Vec::new();
    for p in primes_between(3, prime_max) {
        let n = half(p);
        let l = |x| t.term(x, n);
        let a = l(SporadicLabel::A)?;
        let sign = if n.is_multiple_of(2) { a.clone() } else { -a };
        out.push(CongruenceReport::build("cross-BD", ClaimClass::Theorem, None, p, 1, l(SporadicLabel::B)?, l(SporadicLabel::D)?));
        out.push(CongruenceReport::build("cross-AE", ClaimClass::Theorem, None, p, 1, l(SporadicLabel::E)?, &sign));
    }
    Ok(out)
}

fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn gp_pow(x: (i64, i64), e: u32, ctx: &PAdicContext) -> Result<BigInt> {
    let g = BigInt::from(padic_gamma(&rat(x.0, x.1), ctx)?);
    Ok(g.modpow(&BigInt::from(e), &BigInt::from(ctx.modulus())))
}

/// The `Gamma_p` evaluation of `C_B((p-1)/2)`, as a chain of reports:
///
/// - `cb-watson`: `C_B((p-1)/2) = 3^((p-1)/2) 3F2(...; 1-p/6, 1-p/3; 1) (mod p)`
/// - `cb-gamma`: the closed form `-Gamma_p(1/4)^4` or `0` (mod `p`)
/// - for `p = 1 mod 4`, `cb-gamma12`: `-3^((p-1)/2) Gamma_p(1/12)^2 Gamma_p(5/12)^2` (mod `p`)
/// - for `p = 1 mod 4`, `gamma-mult`: `Gamma_p(1/12)^2 Gamma_p(5/12)^2 = (3/p) Gamma_p(1/4)^4` (mod `p^m`)
pub fn verify_cb_closed_form(p: u64, m: u32) -> Result<Vec<CongruenceReport>> {
    if p <= 3 || !is_prime(p) {
        return Err(Error::OutOfDomain(format!("need a prime p > 3, got {p}")));
    }
    let cb = sporadic_table(SporadicLabel::B, (p - 1) / 2).pop().expect("terms");
    let ctx1 = PAdicContext::new(p, 1)?;
    let three = BigInt::from(3u32).pow(half(p) as u32);
    let mut out = Vec::new();
    let (watson, _) = watson_terminating(p)?;
    let w = BigInt::from(rational_residue(&watson, &ctx1)?) * &three;
    out.push(CongruenceReport::build("cb-watson", ClaimClass::Theorem, Some("B".into()), p, 1, &cb, &w));
    let rhs = if p % 4 == 1 { -gp_pow((1, 4), 4, &ctx1)? } else { BigInt::zero() };
    out.push(CongruenceReport::build("cb-gamma", ClaimClass::Theorem, Some("B".into()), p, 1, &cb, &rhs));
    if p % 4 == 1 {
        let g12 = gp_pow((1, 12), 2, &ctx1)? * gp_pow((5, 12), 2, &ctx1)? * &three;
        out.push(CongruenceReport::build("cb-gamma12", ClaimClass::Theorem, Some("B".into()), p, 1, &cb, &-g12));
        let ctx = PAdicContext::new(p, m)?;
        let lhs = gp_pow((1, 12), 2, &ctx)? * gp_pow((5, 12), 2, &ctx)?;
        let rhs = gp_pow((1, 4), 4, &ctx)? * jacobi(3, p);
        out.push(CongruenceReport::build("gamma-mult", ClaimClass::Theorem, None, p, m, &lhs, &rhs));
    }
    Ok(out)
}

/// `Gamma_p(1/2)^2 = (-1)^((p+1)/2) (mod p^m)`.
pub fn verify_gamma_half(p: u64, m: u32) -> Result<CongruenceReport> {
    let ctx = PAdicContext::new(p, m)?;
    let lhs = gp_pow((1, 2), 2, &ctx)?;
    let rhs = if p.div_ceil(2).is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    Ok(CongruenceReport::build("gamma-half", ClaimClass::Theorem, None, p, m, &lhs, &rhs))
}

fn pochhammer(a: &BigRational, n: u64) -> BigRational {
    let mut r = BigRational::one();
    let mut x = a.clone();
    for _ in 0..n {
        r *= &x;
        x += BigRational::one();
    }
    r
}

/// Both sides of the terminating Watson sum
/// `3F2((1-p)/6, (3-p)/6, (5-p)/6; 1-p/6, 1-p/3; 1) = (Gamma(1/2) Gamma(1-p/6) / (Gamma((7-p)/12) Gamma((11-p)/12)))^2`
/// as exact rationals, for primes `p >= 5`.
pub fn watson_terminating(p: u64) -> Result<(BigRational, BigRational)> {
    if p < 5 || !is_prime(p) {
        return Err(Error::OutOfDomain(format!("need a prime p >= 5, got {p}")));
    }
    let pi = p as i64;
    let top = [rat(1 - pi, 6), rat(3 - pi, 6), rat(5 - pi, 6)];
    let bot = [rat(6 - pi, 6), rat(3 - pi, 3)];
    let mut lhs = BigRational::zero();
    let mut term = BigRational::one();
    let mut k = 0i64;
    while !term.is_zero() {
        lhs += &term;
        let kk = BigRational::from_integer(k.into());
        let num: BigRational = top.iter().map(|a| a + &kk).product();
        let den: BigRational = bot.iter().map(|b| b + &kk).product::<BigRational>() * BigRational::from_integer((k + 1).into());
        term = term * num / den;
        k += 1;
    }
    // p = 12t + 1: Gamma(1/2)/Gamma(1/2 - t) * Gamma(5/6 - 2t)/Gamma(5/6 - t)
    // p = 12t + 5: Gamma(1/2)/Gamma(1/2 - t) * Gamma(1/6 - 2t)/Gamma(1/6 - t)
    // p = 7, 11 mod 12: a denominator gamma has a pole
    let rhs = match p % 12 {
        1 | 5 => {
            let t = (p / 12) as i64;
            let c = if p % 12 == 1 { rat(5, 6) } else { rat(1, 6) };
            let tt = BigRational::from_integer(t.into());
            let a = pochhammer(&(rat(1, 2) - &tt), t as u64);
            let b = pochhammer(&(c - &tt - &tt), t as u64);
            let v = a / b;
            &v * &v
        }
        _ => BigRational::zero(),
    };
    Ok((lhs, rhs))
}

pub fn watson_report(p: u64) -> Result<Report> {
    let (l, r) = watson_terminating(p)?;
    Ok(Report::new(
        "watson",
        ClaimClass::Theorem,
        "3F2((1-p)/6,(3-p)/6,(5-p)/6; 1-p/6,1-p/3; 1) = (G(1/2)G(1-p/6)/(G((7-p)/12)G((11-p)/12)))^2",
    )
    .param("p", p)
    .sides(&l, &r)
    .modulus("exact")
    .method("terminating sum vs Pochhammer shifts")
    .pass(l == r))
}

/// Largest exponent `e` with `a = b mod p^e`, capped; `None` if they agree
/// exactly. Convenience for callers outside the reports.
pub fn agreement_power(a: &BigInt, b: &BigInt, p: u64) -> Option<u32> {
    valuation(&(a - b), p).map(|v| v.min(MAX_POWER_CAP))
}

pub fn residue_u64(a: &BigInt, m: u64) -> u64 {
    mod_floor(a, &BigInt::from(m)).to_u64().expect("reduced")
}

pub fn sign_of(a: &BigInt) -> i32 {
    if a.is_negative() {
        -1
    } else if a.is_zero() {
        0
    } else {
        1
    }
}
