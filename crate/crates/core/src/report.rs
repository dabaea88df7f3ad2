//! Verification records and their JSON / TSV / human renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimClass {
    /// A proven statement.
    Theorem,
    /// A numerically observed statement.
    Observation,
    /// An internal consistency property.
    Property,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub claim: String,
    pub class: ClaimClass,
    pub statement: String,
    pub params: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_diff: Option<String>,
    pub modulus_or_tolerance: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision_bits: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl Report {
    pub fn new(claim: &str, class: ClaimClass, statement: &str) -> Self {
        Report {
            claim: claim.to_string(),
            class,
            statement: statement.to_string(),
            params: BTreeMap::new(),
            lhs: String::new(),
            rhs: String::new(),
            abs_diff: None,
            modulus_or_tolerance: String::new(),
            pass: false,
            precision_bits: None,
            n_max: None,
            method: None,
            runtime_ms: None,
        }
    }

    pub fn param(mut self, k: &str, v: impl ToString) -> Self {
        self.params.insert(k.to_string(), v.to_string());
        self
    }

    pub fn sides(mut self, lhs: impl ToString, rhs: impl ToString) -> Self {
        self.lhs = lhs.to_string();
        self.rhs = rhs.to_string();
        self
    }

    pub fn modulus(mut self, m: impl ToString) -> Self {
        self.modulus_or_tolerance = m.to_string();
        self
    }

    pub fn tolerance(mut self, t: f64) -> Self {
        self.modulus_or_tolerance = format!("{t:.0e}");
        self
    }

    pub fn diff(mut self, d: f64) -> Self {
        self.abs_diff = Some(format!("{d:.3e}"));
        self
    }

    pub fn prec(mut self, bits: u32) -> Self {
        self.precision_bits = Some(bits);
        self
    }

    pub fn terms(mut self, n: u64) -> Self {
        self.n_max = Some(n);
        self
    }

    pub fn method(mut self, m: &str) -> Self {
        self.method = Some(m.to_string());
        self
    }

    pub fn pass(mut self, ok: bool) -> Self {
        self.pass = ok;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn tsv_header() -> &'static str {
        "claim\tclass\tparams\tlhs\trhs\tabs_diff\tmodulus_or_tolerance\tpass"
    }

    pub fn to_tsv(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!(
            "{}\t{:?}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.claim,
            self.class,
            params.join(","),
            self.lhs,
            self.rhs,
            self.abs_diff.as_deref().unwrap_or(""),
            self.modulus_or_tolerance,
            self.pass
        )
    }

    pub fn to_human(&self) -> String {
        let mut s = String::new();
        let mark = if self.pass { "PASS" } else { "FAIL" };
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = write!(s, "[{mark}] {} ({:?})", self.claim, self.class);
        if !params.is_empty() {
            let _ = write!(s, " {}", params.join(" "));
        }
        let _ = write!(s, "\n       {}\n       lhs = {}\n       rhs = {}", self.statement, self.lhs, self.rhs);
        if let Some(d) = &self.abs_diff {
            let _ = write!(s, "\n       |diff| = {d}");
        }
        let _ = write!(s, "  [{}]", self.modulus_or_tolerance);
        if let Some(m) = &self.method {
            let _ = write!(s, " via {m}");
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Tsv,
    Human,
}

impl std::str::FromStr for OutputFormat {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(Self::Json),
            "tsv" => Ok(Self::Tsv),
            "human" => Ok(Self::Human),
            o => Err(crate::Error::Config(format!("unknown output format {o}"))),
        }
    }
}

/// Render a batch of reports. Human output ends with a pass/fail summary.
pub fn render(reports: &[Report], fmt: OutputFormat) -> String {
    let mut out = String::new();
    match fmt {
        OutputFormat::Json => {
            for r in reports {
                out.push_str(&r.to_json());
                out.push('\n');
            }
        }
        OutputFormat::Tsv => {
            out.push_str(Report::tsv_header());
            out.push('\n');
            for r in reports {
                out.push_str(&r.to_tsv());
                out.push('\n');
            }
        }
        OutputFormat::Human => {
            for r in reports {
                out.push_str(&r.to_human());
                out.push('\n');
            }
            let failed = reports.iter().filter(|r| !r.pass).count();
            let _ = writeln!(out, "{} checks, {} passed, {} failed", reports.len(), reports.len() - failed, failed);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_is_stable() {
        let r = Report::new("thm1-D", ClaimClass::Theorem, "C_D((p-1)/2) = gamma_p mod p")
            .param("p", 7)
            .sides(1, 1)
            .modulus(7)
            .pass(true);
        let j = r.to_json();
        assert_eq!(j, r.clone().to_json());
        assert!(j.starts_with("{\"claim\":\"thm1-D\",\"class\":\"theorem\""));
        assert!(!j.contains("runtime_ms"));
        let back: Report = serde_json::from_str(&j).unwrap();
        assert_eq!(back, r);
    }
}
