//! Run configuration: defaults, a `key=value` file format and validation.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::OutputFormat;

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "SPORADIC_CONFIG";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub precision_bits: u32,
    pub qseries_order: usize,
    pub prime_max: u64,
    pub tolerance_exponent: u32,
    pub output_format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision_bits: 192,
            qseries_order: 200,
            prime_max: 500,
            tolerance_exponent: 30,
            output_format: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.precision_bits < 64 {
            return Err(Error::Config(format!("precision_bits must be >= 64, got {}", self.precision_bits)));
        }
        if self.qseries_order < 10 {
            return Err(Error::Config(format!("qseries_order must be >= 10, got {}", self.qseries_order)));
        }
        if self.prime_max < 5 {
            return Err(Error::Config(format!("prime_max must be >= 5, got {}", self.prime_max)));
        }
        Ok(())
    }

    /// `10^-tolerance_exponent`.
    pub fn tolerance(&self) -> f64 {
        10f64.powi(-(self.tolerance_exponent as i32))
    }

    /// Apply one `key=value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
            v.parse().map_err(|_| Error::Config(format!("bad value for {key}: {v}")))
        }
        let v = value.trim();
        match key.trim() {
            "precision_bits" => self.precision_bits = num(key, v)?,
            "qseries_order" => self.qseries_order = num(key, v)?,
            "prime_max" => self.prime_max = num(key, v)?,
            "tolerance_exponent" => self.tolerance_exponent = num(key, v)?,
            "output_format" => self.output_format = v.parse()?,
            k => return Err(Error::Config(format!("unknown key {k}"))),
        }
        Ok(())
    }

    /// Parse `key=value` lines over the defaults. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value", i + 1)))?;
            cfg.set(k, v)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// The file named by [`CONFIG_ENV`] if set, otherwise the defaults.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) if !p.is_empty() => Self::from_file(Path::new(&p)),
            _ => Ok(Self::default()),
        }
    }

    /// `key=value` lines that [`RunConfig::parse`] reads back.
    pub fn to_kv(&self) -> String {
        let fmt = match self.output_format {
            OutputFormat::Json => "json",
            OutputFormat::Tsv => "tsv",
            OutputFormat::Human => "human",
        };
        format!(
            "precision_bits={}\nqseries_order={}\nprime_max={}\ntolerance_exponent={}\noutput_format={fmt}\n",
            self.precision_bits, self.qseries_order, self.prime_max, self.tolerance_exponent
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_round_trip() {
        let d = RunConfig::default();
        assert_eq!((d.precision_bits, d.qseries_order, d.prime_max, d.tolerance_exponent), (192, 200, 500, 30));
        assert_eq!(RunConfig::parse(&d.to_kv()).unwrap(), d);
        let c = RunConfig::parse("# test\nprecision_bits = 256\n\noutput_format=human\n").unwrap();
        assert_eq!(c.precision_bits, 256);
        assert_eq!(c.output_format, OutputFormat::Human);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RunConfig::parse("precision_bits=32").is_err());
        assert!(RunConfig::parse("qseries_order=5").is_err());
        assert!(RunConfig::parse("colour=blue").is_err());
        assert!(RunConfig::parse("prime_max").is_err());
        assert!(RunConfig::parse("output_format=xml").is_err());
    }
}
