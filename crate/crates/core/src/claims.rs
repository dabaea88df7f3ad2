//! Registry of verifiable claims, addressed by id.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::congruences::{
    cross_sweep, modp2_sweep, primes_between, supercongruence_sweep, weight3_sweep, three_term_sweep,
    verify_cb_closed_form, verify_gamma_half, watson_report, CongruenceReport, ThreeTermCase,
};
use crate::error::{Error, Result};
use crate::float::{complex as cx, BigFloat};
use crate::hurwitz::hurwitz_reports;
use crate::lvalues::{critical_ratios, lk_cross_checks, verify_theorem2, verify_theorem4, verify_zagier};
use crate::modforms::{qcheck, verify_ae_coeff_relation, QCHECK_IDS};
use crate::numerics::checks::{
    accel_consistency, clausen_check, f_value_check, functional_eq_checks, label_functional_report, residue_check,
    watson_numeric, NUMERIC_TOLERANCE,
};
use crate::numerics::InterpLabel;
use crate::report::{ClaimClass, Report};
use crate::sequences::{
    apery_table, fit_recurrence2, run_recurrence2, run_recurrence3, sporadic_table, Recurrence2Spec,
    Recurrence3Spec, SporadicLabel,
};

/// Largest prime for `F` in the mod `p` sweep, and for the mod `p^2` and
/// supercongruence sweeps.
pub const SECONDARY_PRIME_MAX: u64 = 200;

const THM2: [&str; 6] = ["thm2-A", "thm2-B", "thm2-C", "thm2-D", "thm2-E", "thm2-F"];
const THM4: [&str; 4] = ["thm4-5", "thm4-7", "thm4-9", "thm4-11"];
const RATIOS: [&str; 7] = ["ratios-3", "ratios-5", "ratios-7", "ratios-9", "ratios-11", "ratios-13", "ratios-15"];
const CONGRUENCES: [&str; 11] = [
    "thm1",
    "thm1-modp2",
    "thm3",
    "cross",
    "three-term-C",
    "three-term-E",
    "three-term-apery",
    "cb-gamma",
    "gamma-half",
    "watson",
    "watson-numeric",
];
const NUMERIC: [&str; 5] = ["interp-F", "residue-E", "clausen", "functional-eq", "accel-consistency"];
const OTHER: [&str; 4] = ["seq-recurrence", "seq-fit", "ae-relation", "hurwitz"];

/// Every claim id, in report order.
pub fn claim_ids() -> Vec<&'static str> {
    let mut v = vec!["zagier-eq2"];
    v.extend(THM2);
    v.extend(THM4);
    v.extend(RATIOS);
    v.push("hurwitz");
    v.extend(QCHECK_IDS);
    v.extend(CONGRUENCES);
    v.extend(NUMERIC);
    v.extend(OTHER.iter().filter(|&&id| id != "hurwitz"));
    v
}

/// Ids accepted by `congruence`.
pub fn congruence_ids() -> &'static [&'static str] {
    &CONGRUENCES
}

fn label_of(id: &str, prefix: &str) -> Option<SporadicLabel> {
    id.strip_prefix(prefix)?.parse().ok()
}

fn number_of(id: &str, prefix: &str) -> Option<u32> {
    id.strip_prefix(prefix)?.parse().ok()
}

fn congruence_reports(v: Vec<CongruenceReport>, statement: &str) -> Vec<Report> {
    v.iter().map(|c| c.to_report(statement)).collect()
}

/// A stricter configured tolerance also applies to the checks that were run at
/// the default numeric tolerance. A looser one does not relax them.
fn apply_tolerance(mut r: Report, cfg: &RunConfig) -> Report {
    let tol = cfg.tolerance();
    let default = format!("{NUMERIC_TOLERANCE:.0e}");
    if tol < NUMERIC_TOLERANCE && r.modulus_or_tolerance == default {
        if let Some(d) = r.abs_diff.as_deref().and_then(|d| d.parse::<f64>().ok()) {
            r.pass &= d < tol;
            r.modulus_or_tolerance = format!("{tol:.0e}");
        }
    }
    r
}

/// Congruence sweeps with an explicit prime bound; `mod_p2` selects the
/// `p^2` refinement of `thm1`.
pub fn congruence(id: &str, prime_max: u64, mod_p2: bool) -> Result<Vec<Report>> {
    let capped = prime_max.min(SECONDARY_PRIME_MAX);
    Ok(match (id, mod_p2) {
        ("thm1", false) => congruence_reports(
            weight3_sweep(prime_max, capped)?,
            "C_*((p-1)/2) = gamma_{p,*} (mod p)",
        ),
        ("thm1", true) | ("thm1-modp2", _) => {
            congruence_reports(modp2_sweep(capped)?, "C_D((p-1)/2) = gamma_{p,D} (mod p^2)")
        }
        ("thm3", _) => congruence_reports(
            supercongruence_sweep(&[5, 7, 9, 11], capped)?,
            "C_D((p-1)/2)^((N-3)/2) = gamma_{N-2}(p) (mod p^2)",
        ),
        ("cross", _) => congruence_reports(
            cross_sweep(prime_max)?,
            "C_B((p-1)/2) = C_D((p-1)/2) and C_E((p-1)/2) = (-1)^((p-1)/2) C_A((p-1)/2) (mod p)",
        ),
        ("three-term-C" | "three-term-E" | "three-term-apery", _) => {
            let case = match id {
                "three-term-C" => ThreeTermCase::C,
                "three-term-E" => ThreeTermCase::E,
                _ => ThreeTermCase::Apery,
            };
            congruence_reports(
                three_term_sweep(case, prime_max.min(60), &[1, 3, 5], 3, 4000)?,
                "u(m p^r) - gamma_p u(m p^(r-1)) + chi(p) p^(k+1) u(m p^(r-2)) = 0 (mod p^r)",
            )
        }
        ("cb-gamma", _) => {
            let per_p: Vec<Vec<CongruenceReport>> =
                primes_between(5, capped).par_iter().map(|&p| verify_cb_closed_form(p, 2)).collect::<Result<_>>()?;
            congruence_reports(per_p.into_iter().flatten().collect(), "C_B((p-1)/2) through Gamma_p values")
        }
        ("gamma-half", _) => {
            let v = primes_between(3, prime_max.min(50))
                .iter()
                .map(|&p| verify_gamma_half(p, 3))
                .collect::<Result<_>>()?;
            congruence_reports(v, "Gamma_p(1/2)^2 = (-1)^((p+1)/2) (mod p^3)")
        }
        ("watson", _) => primes_between(5, prime_max.min(300)).iter().map(|&p| watson_report(p)).collect::<Result<_>>()?,
        ("watson-numeric", _) => primes_between(5, 40).iter().map(|&p| watson_numeric(p, 192)).collect::<Result<_>>()?,
        _ => return Err(Error::UnknownClaim(id.to_string())),
    })
}

fn seq_recurrence() -> Result<Vec<Report>> {
    let n = 200;
    let mut out = Vec::new();
    for l in SporadicLabel::ALL {
        let rec = run_recurrence2(&Recurrence2Spec::for_label(l), n)?.terms;
        let sum = sporadic_table(l, n);
        let first = (0..=n as usize).find(|&i| rec[i] != sum[i]);
        out.push(seq_report(&format!("C_{l}"), first, n));
    }
    let rec = run_recurrence3(&Recurrence3Spec::apery(), n)?.terms;
    let first = (0..=n as usize).find(|&i| rec[i] != apery_table(n)[i]);
    out.push(seq_report("apery", first, n));
    Ok(out)
}

fn seq_report(name: &str, first: Option<usize>, n: u64) -> Report {
    Report::new("seq-recurrence", ClaimClass::Property, "recurrence terms equal the binomial sums")
        .param("sequence", name)
        .sides(
            format!("first mismatch: {}", first.map_or("none".into(), |i| format!("n = {i}"))),
            format!("n <= {n}"),
        )
        .modulus("exact")
        .terms(n)
        .pass(first.is_none())
}

fn seq_fit() -> Result<Vec<Report>> {
    SporadicLabel::ALL
        .iter()
        .map(|&l| {
            let fit = fit_recurrence2(&sporadic_table(l, 30))?;
            let want = Recurrence2Spec::for_label(l);
            Ok(Report::new("seq-fit", ClaimClass::Property, "fit (a, b, c) from the first terms")
                .param("label", l)
                .sides(
                    format!("({}, {}, {})", fit.spec.a, fit.spec.b, fit.spec.c),
                    format!("({}, {}, {})", want.a, want.b, want.c),
                )
                .modulus("exact")
                .terms(fit.checked_terms as u64)
                .pass(fit.spec == want))
        })
        .collect()
}

fn numeric(id: &str, prec: u32) -> Result<Vec<Report>> {
    let dec = |s: &str| BigFloat::parse_decimal(s, prec).expect("literal");
    Ok(match id {
        "interp-F" => vec![f_value_check(prec)?],
        "residue-E" => vec![residue_check(prec)?],
        "clausen" => vec![
            clausen_check(&dec("0.5"), &dec("0.3"), prec)?,
            clausen_check(&BigFloat::from_ratio(&BigInt::from(1), &BigInt::from(3), prec), &dec("0.1"), prec)?,
        ],
        "functional-eq" => {
            let x = cx::real(dec("0.3"));
            let mut v = vec![functional_eq_checks(&x, prec)?];
            for l in [InterpLabel::A, InterpLabel::B, InterpLabel::E, InterpLabel::F] {
                v.push(label_functional_report(l, &x, prec)?);
            }
            v
        }
        "accel-consistency" => {
            let half = cx::real(BigFloat::from_ratio(&BigInt::from(-1), &BigInt::from(2), prec));
            vec![accel_consistency(InterpLabel::F, &half, prec)?]
        }
        _ => return Err(Error::UnknownClaim(id.to_string())),
    })
}

fn ae_relation() -> Report {
    let r = verify_ae_coeff_relation(500);
    Report::new(
        "ae-relation",
        ClaimClass::Theorem,
        "(-1)^((n-1)/2) gamma_{n,A} = gamma_{n,E} + 2 gamma_{n/2,E}",
    )
    .sides(
        match &r {
            Ok(()) => "holds".to_string(),
            Err(e) => e.to_string(),
        },
        "n <= 500",
    )
    .modulus("exact")
    .terms(500)
    .pass(r.is_ok())
}

/// Run one claim under `cfg`.
pub fn verify(id: &str, cfg: &RunConfig) -> Result<Vec<Report>> {
    cfg.validate()?;
    let prec = cfg.precision_bits;
    let reports = if id == "zagier-eq2" {
        verify_zagier(prec)?
    } else if let Some(l) = label_of(id, "thm2-") {
        verify_theorem2(l, prec)?
    } else if let Some(n) = number_of(id, "thm4-").filter(|n| THM4.contains(&id) && *n >= 5) {
        let mut v = verify_theorem4(n, prec)?;
        // the Eisenstein and lattice bridges start at k = 5
        if n >= 7 {
            v.extend(lk_cross_checks(n - 2, prec)?);
        }
        v
    } else if let Some(k) = number_of(id, "ratios-").filter(|_| RATIOS.contains(&id)) {
        critical_ratios(k, prec)?
    } else if id == "hurwitz" {
        hurwitz_reports(prec)?
    } else if QCHECK_IDS.contains(&id) {
        vec![qcheck(id, cfg.qseries_order)?]
    } else if CONGRUENCES.contains(&id) {
        congruence(id, cfg.prime_max, false)?
    } else if NUMERIC.contains(&id) {
        numeric(id, prec)?
    } else {
        match id {
            "seq-recurrence" => seq_recurrence()?,
            "seq-fit" => seq_fit()?,
            "ae-relation" => vec![ae_relation()],
            _ => return Err(Error::UnknownClaim(id.to_string())),
        }
    };
    Ok(reports.into_iter().map(|r| apply_tolerance(r, cfg)).collect())
}

/// A failing report standing in for a claim that raised an error.
pub fn error_report(id: &str, e: &Error) -> Report {
    Report::new(id, ClaimClass::Property, "claim evaluation")
        .sides(format!("error: {e}"), "a completed check")
        .modulus("-")
        .pass(false)
}

/// The given claims, evaluated in parallel and returned in input order.
/// With `timings` each report carries its claim's wall time.
pub fn run_ids(ids: &[&str], cfg: &RunConfig, timings: bool) -> Vec<Report> {
    let per: Vec<Vec<Report>> = ids
        .par_iter()
        .map(|id| {
            let t = std::time::Instant::now();
            let mut v = verify(id, cfg).unwrap_or_else(|e| vec![error_report(id, &e)]);
            if timings {
                let ms = t.elapsed().as_millis() as u64;
                v.iter_mut().for_each(|r| r.runtime_ms = Some(ms));
            }
            v
        })
        .collect();
    per.into_iter().flatten().collect()
}

/// Every claim, in [`claim_ids`] order.
pub fn run_all(cfg: &RunConfig) -> Vec<Report> {
    run_ids(&claim_ids(), cfg, false)
}

pub fn first_failure(reports: &[Report]) -> Option<&Report> {
    reports.iter().find(|r| !r.pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_known() {
        let ids = claim_ids();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
        let cfg = RunConfig::default();
        assert!(matches!(verify("thm4-6", &cfg), Err(Error::UnknownClaim(_))));
        assert!(matches!(verify("thm2-G", &cfg), Err(Error::UnknownClaim(_))));
        assert!(matches!(verify("nope", &cfg), Err(Error::UnknownClaim(_))));
    }

    #[test]
    fn cheap_claims_pass() {
        let cfg = RunConfig { prime_max: 60, ..RunConfig::default() };
        for id in ["seq-recurrence", "seq-fit", "ae-relation", "thm1", "cross", "gamma-half", "watson"] {
            let rs = verify(id, &cfg).unwrap();
            assert!(!rs.is_empty() && first_failure(&rs).is_none(), "{id}");
        }
    }

    #[test]
    fn stricter_tolerance_applies() {
        let cfg = RunConfig { tolerance_exponent: 400, ..RunConfig::default() };
        let r = Report::new("x", ClaimClass::Theorem, "").diff(1e-40).tolerance(NUMERIC_TOLERANCE).pass(true);
        let r = apply_tolerance(r, &cfg);
        assert!(!r.pass);
        let loose = RunConfig { tolerance_exponent: 10, ..RunConfig::default() };
        let r = Report::new("x", ClaimClass::Theorem, "").diff(1e-20).tolerance(NUMERIC_TOLERANCE).pass(false);
        assert!(!apply_tolerance(r, &loose).pass);
    }
}
