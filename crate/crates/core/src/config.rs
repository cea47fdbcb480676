//! Run configuration: a flat `key = value` file plus command-line overrides.
//!
//! Recognized keys: `n_total`, `t_bath_k`, `eps_alpha`, `tau_alpha_s`,
//! `tau_beta_s`, `tau_h_s`, `k_b`. Missing keys take the reference values.

use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{SystemParams, BOLTZMANN};

pub const KEYS: [&str; 7] = ["n_total", "t_bath_k", "eps_alpha", "tau_alpha_s", "tau_beta_s", "tau_h_s", "k_b"];

/// Physical parameters as read from the configuration, before validation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub n_total: f64,
    pub t_bath_k: f64,
    pub eps_alpha: f64,
    pub tau_alpha_s: f64,
    pub tau_beta_s: f64,
    pub tau_h_s: f64,
    pub k_b: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let p = SystemParams::reference();
        RunConfig {
            n_total: p.n_total(),
            t_bath_k: p.t_bath(),
            eps_alpha: p.eps_alpha(),
            tau_alpha_s: p.tau_alpha(),
            tau_beta_s: p.tau_beta(),
            tau_h_s: p.tau_h(),
            k_b: BOLTZMANN,
        }
    }
}

impl RunConfig {
    /// Sets one key; unknown keys are a config error naming the key.
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        let slot = match key {
            "n_total" => &mut self.n_total,
            "t_bath_k" => &mut self.t_bath_k,
            "eps_alpha" => &mut self.eps_alpha,
            "tau_alpha_s" => &mut self.tau_alpha_s,
            "tau_beta_s" => &mut self.tau_beta_s,
            "tau_h_s" => &mut self.tau_h_s,
            "k_b" => &mut self.k_b,
            _ => {
                return Err(Error::Config(format!(
                    "unknown key '{key}' (expected one of {})",
                    KEYS.join(", ")
                )))
            }
        };
        *slot = value;
        Ok(())
    }

    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        let table: toml::Table = text
            .parse()
            .map_err(|e: toml::de::Error| Error::Config(format!("malformed config: {}", e.message())))?;
        for (key, value) in &table {
            let v = match value {
                toml::Value::Float(f) => *f,
                toml::Value::Integer(i) => *i as f64,
                other => {
                    return Err(Error::Config(format!("key '{key}' needs a number, got {other}")));
                }
            };
            self.set(key, v)?;
        }
        Ok(())
    }

    /// Reads a config file on top of the current values.
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        self.apply_text(&text)
    }

    pub fn params(&self) -> Result<SystemParams> {
        SystemParams::new(
            self.n_total,
            self.t_bath_k,
            self.eps_alpha,
            1.0 - self.eps_alpha,
            self.tau_alpha_s,
            self.tau_beta_s,
            self.tau_h_s,
        )?
        .with_boltzmann(self.k_b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_reference() {
        assert_eq!(RunConfig::default().params().unwrap(), SystemParams::reference());
    }

    #[test]
    fn parses_and_overrides() {
        let mut c = RunConfig::default();
        c.apply_text("# comment\ntau_h_s = 2\neps_alpha = 0.3\nn_total = 1e3\n").unwrap();
        let p = c.params().unwrap();
        assert_eq!(p.tau_h(), 2.0);
        assert!((p.eps_beta() - 0.7).abs() < 1e-15);
        assert_eq!(p.n_total(), 1e3);
    }

    #[test]
    fn unknown_key_is_named() {
        let mut c = RunConfig::default();
        match c.apply_text("tau_x = 1.0") {
            Err(Error::Config(m)) => assert!(m.contains("tau_x")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(c.apply_text("tau_h_s = \"fast\""), Err(Error::Config(_))));
        assert!(matches!(c.apply_text("tau_h_s 1"), Err(Error::Config(_))));
    }
}
