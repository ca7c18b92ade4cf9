//! `key = value` configuration files.
//!
//! Keys are exactly `M, e, omega, Omega, B0, alpha, PhiB, lambda, xi1, xi2`
//! and `mode` (`linear` or `cornell`). `#` starts a comment. Missing keys
//! keep their defaults: `M = e = alpha = 1`, `mode = linear`, everything
//! else zero.

use std::path::Path;

use crate::model::PhysicalConfig;
use crate::{Error, Result};

pub const KEYS: [&str; 11] = ["M", "e", "omega", "Omega", "B0", "alpha", "PhiB", "lambda", "xi1", "xi2", "mode"];

pub fn load_config(path: impl AsRef<Path>) -> Result<PhysicalConfig> {
    let text = std::fs::read_to_string(path)?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<PhysicalConfig> {
    let mut cfg = PhysicalConfig::default();
    let mut alpha_line = 0;
    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: line_no,
            message: format!("expected `key = value`, got `{line}`"),
        })?;
        let key = key.trim();
        set_value(&mut cfg, key, value.trim()).map_err(|message| Error::Parse { line: line_no, message })?;
        if key == "alpha" {
            alpha_line = line_no;
        }
    }
    match cfg.validate() {
        Err(Error::InvalidAlpha(a)) if alpha_line > 0 => Err(Error::Parse {
            line: alpha_line,
            message: format!("alpha = {a} outside (0, 1]"),
        }),
        other => other.map(|_| cfg),
    }
}

/// Apply a `key=value` override.
pub fn apply_override(cfg: &mut PhysicalConfig, assignment: &str) -> Result<()> {
    let (key, value) = assignment
        .split_once('=')
        .ok_or_else(|| Error::Usage(format!("--set expects key=value, got `{assignment}`")))?;
    set_value(cfg, key.trim(), value.trim()).map_err(Error::Usage)?;
    cfg.validate()
}

pub fn set_value(cfg: &mut PhysicalConfig, key: &str, value: &str) -> std::result::Result<(), String> {
    if key == "mode" {
        cfg.coupling = value.parse()?;
        return Ok(());
    }
    let slot = field_mut(cfg, key).ok_or_else(|| format!("unknown key `{key}`"))?;
    *slot = value
        .parse::<f64>()
        .map_err(|_| format!("`{key}`: cannot parse `{value}` as a number"))?;
    Ok(())
}

pub fn field_mut<'a>(cfg: &'a mut PhysicalConfig, key: &str) -> Option<&'a mut f64> {
    Some(match key {
        "M" => &mut cfg.mass,
        "e" => &mut cfg.charge,
        "omega" => &mut cfg.omega,
        "Omega" => &mut cfg.vorticity,
        "B0" => &mut cfg.field,
        "alpha" => &mut cfg.alpha,
        "PhiB" => &mut cfg.flux,
        "lambda" => &mut cfg.coulomb,
        "xi1" => &mut cfg.xi1,
        "xi2" => &mut cfg.xi2,
        _ => return None,
    })
}

/// Render in the same `key = value` format; [`parse_config`] reads it back
/// to an identical configuration.
pub fn format_config(cfg: &PhysicalConfig) -> String {
    let mut copy = *cfg;
    let mut out = String::new();
    for key in &KEYS[..10] {
        let value = *field_mut(&mut copy, key).expect("known key");
        out.push_str(&format!("{key} = {value}\n"));
    }
    out.push_str(&format!("mode = {}\n", cfg.coupling.as_str()));
    out
}
