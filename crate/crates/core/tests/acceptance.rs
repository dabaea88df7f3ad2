//! One line per acceptance criterion. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;

use sporadic::claims::{self, first_failure};
use sporadic::config::RunConfig;
use sporadic::congruences::{
    modp2_sweep, padic_gamma, primes_between, rational_residue, supercongruence_sweep, weight3_sweep,
    verify_cb_closed_form, CongruenceReport, PAdicContext,
};
use sporadic::float::{complex as cx, BigFloat};
use sporadic::hurwitz::{alpha, hurwitz_reports};
use sporadic::lvalues::{
    critical_ratios, critical_value, lambda_at_cut, verify_theorem2, verify_theorem4, verify_zagier, LFunctionSpec,
    LMethod, THEOREM4_TOLERANCE,
};
use sporadic::modforms::{binary_theta_form, qcheck, sporadic_form, QCHECK_IDS};
use sporadic::numerics::checks::{f_direct_digits, f_value_check, NUMERIC_TOLERANCE};
use sporadic::numerics::{interp_eval, InterpLabel};
use sporadic::report::Report;
use sporadic::sequences::{apery_table, sporadic_table, SporadicLabel};

const PREC: u32 = 192;

struct Outcome {
    pass: bool,
    detail: String,
}

fn reports_outcome(rs: &[Report]) -> Outcome {
    match first_failure(rs) {
        None => Outcome { pass: !rs.is_empty(), detail: format!("{} checks", rs.len()) },
        Some(r) => Outcome { pass: false, detail: format!("first failure {}: {} vs {}", r.claim, r.lhs, r.rhs) },
    }
}

fn congruence_outcome(rs: &[CongruenceReport]) -> Outcome {
    match rs.iter().find(|r| !r.pass) {
        None => Outcome { pass: !rs.is_empty(), detail: format!("{} primes x labels", rs.len()) },
        Some(r) => Outcome { pass: false, detail: format!("{} {:?} fails at p = {}", r.claim, r.label, r.p) },
    }
}

fn max_diff(rs: &[Report]) -> f64 {
    rs.iter().filter_map(|r| r.abs_diff.as_deref()?.parse::<f64>().ok()).fold(0.0, f64::max)
}

fn run(n: u32, title: &str, f: impl FnOnce() -> Result<Outcome, sporadic::Error>) -> bool {
    let t = Instant::now();
    let o = f().unwrap_or_else(|e| Outcome { pass: false, detail: format!("error: {e}") });
    let mark = if o.pass { "PASS" } else { "FAIL" };
    println!("criterion {n:>2} [{mark}] {title} ({}; {:.1} s)", o.detail, t.elapsed().as_secs_f64());
    o.pass
}

fn within(o: Outcome, t: Instant, budget: Duration) -> Outcome {
    let el = t.elapsed();
    if el > budget {
        return Outcome { pass: false, detail: format!("{} but took {:.1} s > {} s", o.detail, el.as_secs_f64(), budget.as_secs()) };
    }
    o
}

fn c1() -> Result<Outcome, sporadic::Error> {
    let t = Instant::now();
    let rs = verify_zagier(PREC)?;
    let eq = rs.iter().find(|r| r.claim == "zagier-eq2").cloned().into_iter().collect::<Vec<_>>();
    let mut o = reports_outcome(&rs);
    o.detail = format!("{}, |diff| = {:.1e}", o.detail, max_diff(&eq));
    Ok(within(o, t, Duration::from_secs(30)))
}

fn c2() -> Result<Outcome, sporadic::Error> {
    let mut all = Vec::new();
    for l in SporadicLabel::ALL {
        all.extend(verify_theorem2(l, PREC)?);
    }
    let mut o = reports_outcome(&all);
    let d = max_diff(&all);
    o.pass &= d < NUMERIC_TOLERANCE;
    o.detail = format!("{}, max |diff| = {d:.1e}", o.detail);
    Ok(o)
}

fn c3() -> Result<Outcome, sporadic::Error> {
    let r = f_value_check(PREC)?;
    let (_, digits) = f_direct_digits(100_000, 64)?;
    let direct_ok = (2.0..5.0).contains(&digits);
    Ok(Outcome {
        pass: r.pass && direct_ok,
        detail: format!("accelerated |diff| = {}, direct 1e5 terms gives {digits:.1} digits", r.abs_diff.unwrap_or_default()),
    })
}

fn c4() -> Result<Outcome, sporadic::Error> {
    let t = Instant::now();
    let mut v = weight3_sweep(500, 200)?;
    v.extend(modp2_sweep(200)?);
    let f_obs = v.iter().filter(|r| r.label.as_deref() == Some("F")).all(|r| r.class == sporadic::report::ClaimClass::Observation);
    let mut o = congruence_outcome(&v);
    o.pass &= f_obs;
    Ok(within(o, t, Duration::from_secs(120)))
}

fn c5() -> Result<Outcome, sporadic::Error> {
    Ok(congruence_outcome(&supercongruence_sweep(&[5, 7, 9, 11], 200)?))
}

fn c6() -> Result<Outcome, sporadic::Error> {
    let rs: Vec<Report> = QCHECK_IDS.iter().map(|id| qcheck(id, 200)).collect::<Result<_, _>>()?;
    Ok(reports_outcome(&rs))
}

fn c7() -> Result<Outcome, sporadic::Error> {
    let want = [(3, 16, 1), (5, 240, 1), (7, 2560, 1), (9, 33600, 1), (11, 491520, 1), (13, 6864000, 1), (15, 1022361600, 11)];
    for (k, n, d) in want {
        let a = alpha(k)?;
        if a != BigRational::new(BigInt::from(n), BigInt::from(d)) {
            return Ok(Outcome { pass: false, detail: format!("alpha_{k} = {a}") });
        }
    }
    let mut rs = Vec::new();
    for n in [5, 7, 9, 11] {
        rs.extend(verify_theorem4(n, PREC)?);
    }
    let mut o = reports_outcome(&rs);
    let d = max_diff(&rs);
    o.pass &= d < THEOREM4_TOLERANCE;
    o.detail = format!("{}, alpha list exact, max |diff| = {d:.1e}", o.detail);
    Ok(o)
}

fn c8() -> Result<Outcome, sporadic::Error> {
    Ok(reports_outcome(&hurwitz_reports(PREC)?))
}

fn c9() -> Result<Outcome, sporadic::Error> {
    let mut rs = Vec::new();
    for k in [3, 5, 7, 9, 11, 13, 15] {
        rs.extend(critical_ratios(k, PREC)?);
    }
    let min_digits = rs
        .iter()
        .filter_map(|r| r.params.get("digits")?.parse::<f64>().ok())
        .fold(f64::INFINITY, f64::min);
    let mut o = reports_outcome(&rs);
    o.pass &= min_digits >= 25.0;
    let betas: Vec<String> = rs.iter().filter(|r| r.claim.starts_with("beta-")).map(|r| r.rhs.clone()).collect();
    o.detail = format!("{}, beta = [{}], >= {min_digits:.0} digits", o.detail, betas.join(", "));
    Ok(o)
}

fn interp_bridge() -> Result<Option<String>, sporadic::Error> {
    let apery = apery_table(8);
    for l in InterpLabel::ALL {
        let exact = match l.sporadic() {
            Some(s) => sporadic_table(s, 8),
            None => apery.clone(),
        };
        for (n, want) in exact.iter().enumerate() {
            let v = interp_eval(l, &cx::from_i64(n as i64, PREC), PREC)?;
            let w = BigFloat::from_bigint(want, PREC);
            let scale = 1.0 + w.abs().to_f64();
            let d = cx::dist_f64(&v.value, &cx::real(w));
            if d > v.radius.max(scale * 1e-50) || v.radius > scale * 1e-40 {
                return Ok(Some(format!("{l}({n}): |diff| = {d:.1e}, radius {:.1e}", v.radius)));
            }
        }
    }
    Ok(None)
}

fn padic_identities() -> Result<Option<String>, sporadic::Error> {
    for p in primes_between(3, 50) {
        let ctx = PAdicContext::new(p, 2)?;
        let q = ctx.modulus();
        for (a, b) in [(1i64, 2i64), (1, 3), (1, 4), (2, 5), (5, 8), (-7, 12)] {
            if (b as u64).is_multiple_of(p) {
                continue;
            }
            let x = BigRational::new(a.into(), b.into());
            let y = BigRational::new((b - a).into(), b.into());
            let g = (padic_gamma(&x, &ctx)? as u128 * padic_gamma(&y, &ctx)? as u128 % q as u128) as u64;
            let r = rational_residue(&x, &ctx)? % p;
            let a0 = if r == 0 { p } else { r };
            let want = if a0 % 2 == 0 { 1 } else { q - 1 };
            if g != want {
                return Ok(Some(format!("reflection fails at p = {p}, x = {x}")));
            }
        }
        if p >= 5 {
            if let Some(r) = verify_cb_closed_form(p, 2)?.into_iter().find(|r| !r.pass) {
                return Ok(Some(format!("{} fails at p = {p}", r.claim)));
            }
        }
    }
    Ok(None)
}

fn dual_methods() -> Result<(f64, Option<String>), sporadic::Error> {
    let mut worst = 0f64;
    // the smoothed sum needs X of order the level; A at level 32 is the largest here
    let cases = [
        (binary_theta_form(5), 4),
        (binary_theta_form(5), 2),
        (binary_theta_form(7), 6),
        (sporadic_form(SporadicLabel::E), 2),
        (sporadic_form(SporadicLabel::C), 2),
        (sporadic_form(SporadicLabel::A), 2),
    ];
    for (form, s) in cases {
        let a = critical_value(&form, s, PREC, LMethod::CompletedIncompleteGamma)?;
        let b = critical_value(&form, s, PREC, LMethod::SmoothedDirect)?;
        let d = (a.value.value.clone() - b.value.value.clone()).abs().to_f64();
        worst = worst.max(d);
        if d > a.error_radius() + b.error_radius() || d > NUMERIC_TOLERANCE {
            return Ok((worst, Some(format!("L({}, {s}): methods differ by {d:.1e}", form.name))));
        }
    }
    Ok((worst, None))
}

fn cut_invariance() -> Result<Option<String>, sporadic::Error> {
    let cuts = [(1, 1), (5, 4), (3, 2), (2, 1), (7, 3)];
    for (form, s) in [(binary_theta_form(5), 4), (sporadic_form(SporadicLabel::C), 2), (sporadic_form(SporadicLabel::F), 1)] {
        let spec = LFunctionSpec::for_form(&form, 2000)?;
        let base = lambda_at_cut(&spec, s, &BigRational::new(1.into(), 1.into()), 1, PREC)?;
        for (a, b) in cuts {
            let v = lambda_at_cut(&spec, s, &BigRational::new(a.into(), b.into()), 1, PREC)?;
            let d = (v.value.clone() - base.value.clone()).abs().to_f64();
            let scale = base.value.abs().to_f64();
            if d > v.radius + base.radius + scale * 1e-50 {
                return Ok(Some(format!("Lambda({}, {s}) moves by {d:.1e} at t = {a}/{b}", form.name)));
            }
        }
    }
    Ok(None)
}

fn c10() -> Result<Outcome, sporadic::Error> {
    let cfg = RunConfig::default();
    let mut fails = Vec::new();
    if let Some(r) = first_failure(&claims::verify("seq-recurrence", &cfg)?) {
        fails.push(format!("recurrence: {}", r.lhs));
    }
    fails.extend(interp_bridge()?);
    fails.extend(padic_identities()?);
    let (worst, dual) = dual_methods()?;
    fails.extend(dual);
    fails.extend(cut_invariance()?);
    let t = Instant::now();
    let all = claims::run_all(&cfg);
    let el = t.elapsed();
    if let Some(r) = first_failure(&all) {
        fails.push(format!("report --all: {} fails", r.claim));
    }
    if el > Duration::from_secs(600) {
        fails.push(format!("report --all took {:.0} s", el.as_secs_f64()));
    }
    Ok(Outcome {
        pass: fails.is_empty(),
        detail: if fails.is_empty() {
            let dual = if worst == 0.0 {
                "dual methods agree to the last printed bit".to_string()
            } else {
                format!("dual-method max |diff| = {worst:.1e}")
            };
            format!("{dual}, report --all: {} checks in {:.1} s", all.len(), el.as_secs_f64())
        } else {
            fails.join("; ")
        },
    })
}

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        // `cargo test -- --list` probes every target; there are no named tests here
        return ExitCode::SUCCESS;
    }
    let results = [
        run(1, "Zagier: A(-1/2) = 16/pi^2 L(eta(2t)^4 eta(4t)^4, 2) to 1e-30 in < 30 s", c1),
        run(2, "C_*(-1/2) = alpha_*/pi^2 L(f_*, 2), E residue, closed forms, to 1e-30", c2),
        run(3, "C_F(-1/2) to 50 digits accelerated, about 3 digits direct", c3),
        run(4, "C_*((p-1)/2) = gamma_p mod p (p <= 500; F p <= 200 observed), D mod p^2 (p <= 200), < 2 min", c4),
        run(5, "C_D((p-1)/2)^((N-3)/2) = gamma_{N-2}(p) mod p^2, N = 5..11, p <= 200", c5),
        run(6, "q-series identities to O(q^200), theta/eta tables to 500", c6),
        run(7, "A_sigmaN(-1/2) = alpha_k/pi^(k-1) L(f_k, k-1) to 1e-25, alpha_k exact", c7),
        run(8, "Hurwitz numbers, r/s tables and Eisenstein values at i and 2i", c8),
        run(9, "ratio ladders k = 5, 7, 9 and beta_k recognition (observation)", c9),
        run(10, "property suites and report --all under 10 min", c10),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
