use std::collections::BTreeMap;
use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;

use sporadic::claims::{self, congruence_ids, first_failure};
use sporadic::config::RunConfig;
use sporadic::float::{complex as cx, BigFloat};
use sporadic::lvalues::{critical_value, LMethod};
use sporadic::modforms::{apery_weight4_form, binary_theta_form, qcheck, sporadic_form, FormSpec, QCHECK_IDS};
use sporadic::numerics::{interp_eval, interp_eval_C, InterpLabel};
use sporadic::report::{render, ClaimClass, OutputFormat, Report};
use sporadic::sequences::{
    apery_table, cellular_leading, cellular_sigma8, fit_recurrence2, sporadic_table, Recurrence2Spec, SporadicLabel,
};

#[derive(Parser)]
#[command(name = "sporadic", version, about = "Verify identities, congruences and L-value evaluations for the sporadic sequences")]
struct Cli {
    /// key=value config file
    #[arg(long, env = "SPORADIC_CONFIG", global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    precision_bits: Option<u32>,
    #[arg(long, global = true)]
    qseries_order: Option<usize>,
    #[arg(long, global = true)]
    tolerance_exponent: Option<u32>,
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Add runtime_ms to each report (breaks byte-identical reruns)
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Human,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Completed,
    Smoothed,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print terms 0..=n-max: a label A-F, apery, sigma8 or `cellular N`
    Seq {
        #[arg(required = true, num_args = 1..=2)]
        target: Vec<String>,
        #[arg(long, default_value_t = 10)]
        n_max: u64,
    },
    /// Recover (a, b, c) of the three-term recurrence from the first terms
    FitRecurrence {
        label: String,
        #[arg(long, default_value_t = 30)]
        n_max: u64,
    },
    /// Check a q-series identity
    Qcheck { id: String },
    /// Run a congruence sweep
    Congruence {
        id: String,
        #[arg(long)]
        prime_max: Option<u64>,
        #[arg(long)]
        mod_p2: bool,
    },
    /// Evaluate the interpolation C_*(x) (label A-F or apery)
    Interp {
        label: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 50)]
        digits: u32,
    },
    /// Evaluate L(f, s): form A-F, f3, f5, ..., or f (eta(2t)^4 eta(4t)^4)
    Lvalue {
        form: String,
        #[arg(long)]
        s: u32,
        #[arg(long, value_enum, default_value_t = Method::Completed)]
        method: Method,
    },
    /// Verify one claim by id
    Verify { id: String },
    /// Run every registered claim
    Report {
        #[arg(long)]
        all: bool,
    },
    /// List claim ids
    List,
}

fn config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(p) if !p.as_os_str().is_empty() => RunConfig::from_file(p)?,
        _ => RunConfig::default(),
    };
    if let Some(v) = cli.precision_bits {
        cfg.precision_bits = v;
    }
    if let Some(v) = cli.qseries_order {
        cfg.qseries_order = v;
    }
    if let Some(v) = cli.tolerance_exponent {
        cfg.tolerance_exponent = v;
    }
    if let Some(f) = cli.format {
        cfg.output_format = match f {
            Format::Json => OutputFormat::Json,
            Format::Tsv => OutputFormat::Tsv,
            Format::Human => OutputFormat::Human,
        };
    }
    cfg.validate()?;
    Ok(cfg)
}

fn parse_label(s: &str) -> Result<SporadicLabel> {
    s.parse().map_err(|e| anyhow!("{e}"))
}

/// Write to stdout; a closed pipe (`| head`) ends the process quietly.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() == ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}

fn print_terms(terms: &[BigInt], fmt: OutputFormat) {
    let mut s = String::new();
    if fmt == OutputFormat::Tsv {
        s.push_str("n\tvalue\n");
        for (n, t) in terms.iter().enumerate() {
            s.push_str(&format!("{n}\t{t}\n"));
        }
    } else {
        let v: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
        s = v.join(" ") + "\n";
    }
    emit(&s);
}

fn seq(target: &[String], n_max: u64, fmt: OutputFormat) -> Result<()> {
    let terms = match target[0].as_str() {
        "apery" => apery_table(n_max),
        "sigma8" => (0..=n_max).map(cellular_sigma8).collect(),
        "cellular" => {
            let big_n: u32 = target.get(1).ok_or_else(|| anyhow!("cellular needs N"))?.parse().context("N")?;
            (0..=n_max).map(|n| cellular_leading(big_n, n)).collect::<Result<_, _>>()?
        }
        l => sporadic_table(parse_label(l)?, n_max),
    };
    print_terms(&terms, fmt);
    Ok(())
}

fn fit(label: &str, n_max: u64) -> Result<Vec<Report>> {
    let l = parse_label(label)?;
    let f = fit_recurrence2(&sporadic_table(l, n_max))?;
    let want = Recurrence2Spec::for_label(l);
    Ok(vec![Report::new("fit-recurrence", ClaimClass::Property, "(n+1)^2 u(n+1) = (a n^2 + a n + b) u(n) - c n^2 u(n-1)")
        .param("label", l)
        .param("degenerate", f.degenerate)
        .sides(format!("({}, {}, {})", f.spec.a, f.spec.b, f.spec.c), format!("({}, {}, {})", want.a, want.b, want.c))
        .modulus("exact")
        .terms(f.checked_terms as u64)
        .pass(f.spec == want)])
}

/// `a/b`, an integer, or a decimal literal.
fn parse_x(s: &str, prec: u32) -> Result<BigFloat> {
    if s.contains('/') {
        let q = BigRational::from_str(s.trim()).map_err(|e| anyhow!("bad rational {s}: {e}"))?;
        return Ok(BigFloat::from_rational(&q, prec));
    }
    BigFloat::parse_decimal(s, prec).ok_or_else(|| anyhow!("bad number {s}"))
}

fn interp(label: &str, x: &str, digits: u32, cfg: &RunConfig) -> Result<Vec<Report>> {
    let prec = cfg.precision_bits.max((digits as f64 * 3.33).ceil() as u32 + 16);
    let xv = parse_x(x, prec)?;
    let (value, radius, name) = if label == "C" {
        let v = interp_eval_C(&xv, prec)?;
        (v.value.to_fixed_string(digits as usize), v.radius, "C")
    } else {
        let l: InterpLabel = label.parse()?;
        let v = interp_eval(l, &cx::real(xv), prec)?;
        let mut s = v.value.re.to_fixed_string(digits as usize);
        if !v.value.im.is_zero_value() {
            s = format!("{s} + {}i", v.value.im.to_fixed_string(digits as usize));
        }
        (s, v.radius, l.as_str())
    };
    let ok = radius < 10f64.powi(-(digits as i32));
    Ok(vec![Report::new("interp", ClaimClass::Property, "accelerated interpolation value")
        .param("label", name)
        .param("x", x)
        .sides(value, format!("+/- {radius:.1e}"))
        .modulus(format!("{digits} digits"))
        .prec(prec)
        .pass(ok)])
}

fn parse_form(id: &str) -> Result<FormSpec> {
    if id == "f" {
        return Ok(apery_weight4_form());
    }
    if let Some(k) = id.strip_prefix('f').and_then(|k| k.parse::<u32>().ok()) {
        if k < 3 || k % 2 == 0 {
            bail!("f_k needs odd k >= 3");
        }
        return Ok(binary_theta_form(k));
    }
    Ok(sporadic_form(parse_label(id)?))
}

fn lvalue(form: &str, s: u32, method: Method, cfg: &RunConfig) -> Result<Vec<Report>> {
    let spec = parse_form(form)?;
    let m = match method {
        Method::Completed => LMethod::CompletedIncompleteGamma,
        Method::Smoothed => LMethod::SmoothedDirect,
    };
    let prec = cfg.precision_bits;
    let v = critical_value(&spec, s, prec, m)?;
    let tol = cfg.tolerance();
    Ok(vec![Report::new("lvalue", ClaimClass::Property, &format!("L({}, {s})", spec.name))
        .param("form", form)
        .param("s", s)
        .param("level", spec.level)
        .param("weight", spec.weight)
        .sides(format!("{:.50}", v.value.value), format!("+/- {:.1e}", v.error_radius()))
        .tolerance(tol)
        .prec(prec)
        .terms(v.n_max)
        .method(m.as_str())
        .pass(v.error_radius() < tol)])
}

/// Per (claim, label) counts for a congruence sweep.
fn congruence_summary(reports: &[Report]) -> String {
    let mut groups: BTreeMap<(String, String), (usize, usize, u64, u64)> = BTreeMap::new();
    for r in reports {
        let label = r.params.get("label").cloned().unwrap_or_else(|| "-".into());
        let p: u64 = r.params.get("p").and_then(|p| p.parse().ok()).unwrap_or(0);
        let g = groups.entry((r.claim.clone(), label)).or_insert((0, 0, u64::MAX, 0));
        g.0 += 1;
        g.1 += r.pass as usize;
        g.2 = g.2.min(p);
        g.3 = g.3.max(p);
    }
    let mut s = String::from("claim\tlabel\tprimes\tchecks\tpassed\n");
    for ((c, l), (n, ok, lo, hi)) in &groups {
        s.push_str(&format!("{c}\t{l}\t{lo}..{hi}\t{n}\t{ok}\n"));
    }
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{} p={}", r.claim, r.params.get("p").map(String::as_str).unwrap_or("?")))
        .collect();
    if failed.is_empty() {
        s.push_str("all pass\n");
    } else {
        s.push_str(&format!("failed: {}\n", failed.join(", ")));
    }
    s
}

fn run(cli: &Cli) -> Result<Option<Vec<Report>>> {
    let cfg = config(cli)?;
    let fmt = cfg.output_format;
    let reports = match &cli.cmd {
        Cmd::Seq { target, n_max } => {
            seq(target, *n_max, fmt)?;
            return Ok(None);
        }
        Cmd::List => {
            emit(&claims::claim_ids().iter().map(|id| format!("{id}\n")).collect::<String>());
            return Ok(None);
        }
        Cmd::FitRecurrence { label, n_max } => fit(label, *n_max)?,
        Cmd::Qcheck { id } => {
            if !QCHECK_IDS.contains(&id.as_str()) {
                bail!("unknown identity {id}; expected one of {}", QCHECK_IDS.join(", "));
            }
            vec![qcheck(id, cfg.qseries_order)?]
        }
        Cmd::Congruence { id, prime_max, mod_p2 } => {
            if !congruence_ids().contains(&id.as_str()) {
                bail!("unknown congruence {id}; expected one of {}", congruence_ids().join(", "));
            }
            let rs = claims::congruence(id, prime_max.unwrap_or(cfg.prime_max), *mod_p2)?;
            if fmt == OutputFormat::Human {
                emit(&congruence_summary(&rs));
                return Ok(Some(rs));
            }
            rs
        }
        Cmd::Interp { label, x, digits } => interp(label, x, *digits, &cfg)?,
        Cmd::Lvalue { form, s, method } => lvalue(form, *s, *method, &cfg)?,
        Cmd::Verify { id } => {
            if !claims::claim_ids().contains(&id.as_str()) {
                bail!("unknown claim {id}; see `sporadic list`");
            }
            claims::run_ids(&[id.as_str()], &cfg, cli.timings)
        }
        Cmd::Report { all } => {
            if !all {
                bail!("report needs --all");
            }
            claims::run_ids(&claims::claim_ids(), &cfg, cli.timings)
        }
    };
    emit(&render(&reports, fmt));
    Ok(Some(reports))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Some(reports)) => match first_failure(&reports) {
            Some(r) => {
                eprintln!("first failing claim: {}", r.claim);
                ExitCode::from(1)
            }
            None => ExitCode::SUCCESS,
        },
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
