//! Browser front end for `kgo-core`.
//!
//! The page in `www/` passes the same `key = value` configuration text the
//! CLI reads, and gets plain `f64` arrays back for drawing on a canvas.

use wasm_bindgen::prelude::*;

use kgo_core::cli::{parse_config, run_sweep, Knob, SweepOptions, SweepSpec};
use kgo_core::model::radial_coefficients;
use kgo_core::oracle::{self, GridSpec};
use kgo_core::{heun, spectrum, QuantumNumbers};

/// A sampled curve.
#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    xs: Vec<f64>,
    ys: Vec<f64>,
    energy: f64,
}

#[wasm_bindgen]
impl Curve {
    #[wasm_bindgen(getter)]
    pub fn xs(&self) -> Vec<f64> {
        self.xs.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn ys(&self) -> Vec<f64> {
        self.ys.clone()
    }

    /// Energy the curve was computed at (NaN for spectrum curves).
    #[wasm_bindgen(getter)]
    pub fn energy(&self) -> f64 {
        self.energy
    }
}

/// Positive-branch energies along `param` for each family value, flattened
/// family-major: `steps` values per family member, NaN where no root exists.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn energy_curves(
    config: &str,
    param: &str,
    from: f64,
    to: f64,
    steps: usize,
    family: &str,
    family_values: Vec<f64>,
    n: u32,
    l: i32,
    k: f64,
) -> Result<Vec<f64>, JsError> {
    energy_curves_impl(config, param, from, to, steps, family, family_values, n, l, k).map_err(|e| JsError::new(&e))
}

/// Normalized analytic radial wavefunction `s(r)` of the positive-branch
/// state.
#[wasm_bindgen]
pub fn wavefunction(config: &str, n: u32, l: i32, k: f64, points: usize) -> Result<Curve, JsError> {
    wavefunction_impl(config, n, l, k, points).map_err(|e| JsError::new(&e))
}

/// Finite-difference eigenfunction with `nodes` radial nodes, evaluated at the
/// analytic energy of polynomial degree `2 * nodes`.
#[wasm_bindgen]
pub fn oracle_profile(config: &str, nodes: u32, l: i32, k: f64) -> Result<Curve, JsError> {
    oracle_profile_impl(config, nodes, l, k).map_err(|e| JsError::new(&e))
}

#[allow(clippy::too_many_arguments)]
fn energy_curves_impl(
    config: &str,
    param: &str,
    from: f64,
    to: f64,
    steps: usize,
    family: &str,
    family_values: Vec<f64>,
    n: u32,
    l: i32,
    k: f64,
) -> Result<Vec<f64>, String> {
    let cfg = parse_config(config).map_err(|e| e.to_string())?;
    let sweep = SweepSpec {
        parameter: Knob::parse(param).map_err(|e| e.to_string())?,
        start: from,
        stop: to,
        steps,
        family: Knob::parse(family).map_err(|e| e.to_string())?,
        family_values,
    };
    let table = run_sweep(&cfg, &QuantumNumbers::new(n, l.into(), k), &sweep, &SweepOptions::default())
        .map_err(|e| e.to_string())?;
    Ok(table.rows.iter().map(|r| r.energy.unwrap_or(f64::NAN)).collect())
}

fn wavefunction_impl(config: &str, n: u32, l: i32, k: f64, points: usize) -> Result<Curve, String> {
    let cfg = parse_config(config).map_err(|e| e.to_string())?;
    let qn = QuantumNumbers::new(n, l.into(), k);
    let level = spectrum::positive_energy(&cfg, &qn).map_err(|e| e.to_string())?;
    let rc = radial_coefficients(&cfg, &qn, level.energy).map_err(|e| e.to_string())?;
    let r_max = (2.0 * (40.0 + 2.0 * n as f64) / rc.a2()).sqrt();
    let table = heun::tabulate_wavefunction(&rc, r_max, points.max(2), true).map_err(|e| match e {
        kgo_core::Error::SeriesNotConverged { .. } => {
            format!("the series does not terminate at E = {} (polynomial states need lambda = 0 and even n)", level.energy)
        }
        other => other.to_string(),
    })?;
    let (xs, ys) = table.into_iter().unzip();
    Ok(Curve { xs, ys, energy: level.energy })
}

fn oracle_profile_impl(config: &str, nodes: u32, l: i32, k: f64) -> Result<Curve, String> {
    let cfg = parse_config(config).map_err(|e| e.to_string())?;
    let qn = QuantumNumbers::new(oracle::exact_partner_degree(nodes), l.into(), k);
    let level = spectrum::positive_energy(&cfg, &qn).map_err(|e| e.to_string())?;
    let rc = radial_coefficients(&cfg, &qn, level.energy).map_err(|e| e.to_string())?;
    let grid = GridSpec::for_coefficients(&rc, nodes).map_err(|e| e.to_string())?;
    let grid = GridSpec { points: 1500, ..grid };
    let (mu, profile) = oracle::eigenstate(&rc, &grid, nodes).map_err(|e| e.to_string())?;
    // sign convention: positive near the origin
    let sign = profile.iter().find(|p| p.1.abs() > 1e-8).map_or(1.0, |p| p.1.signum());
    let (xs, ys) = profile.into_iter().map(|(r, s)| (r, sign * s)).unzip();
    Ok(Curve { xs, ys, energy: mu })
}
