//! Parameter sweeps producing one CSV row per (swept value, family value).

use crate::cli::config::field_mut;
use crate::model::{PhysicalConfig, QuantumNumbers};
use crate::oracle::{self, OracleGrid};
use crate::spectrum::{self, positive_branch, RootSearchSpec};
use crate::{Error, Result};

pub const HEADER: &str = "swept_param,swept_value,family_param,family_value,n,l,k,E,residual,oracle_E,oracle_gap";

/// Parameters that can be swept.
pub const SWEEPABLE: [&str; 8] = ["alpha", "omega", "Omega", "lambda", "xi1", "xi2", "B0", "PhiB"];

/// Something a sweep can vary: a configuration key or a quantum number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Knob {
    Config(&'static str),
    N,
    L,
    K,
}

impl Knob {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "n" => Ok(Knob::N),
            "l" => Ok(Knob::L),
            "k" => Ok(Knob::K),
            _ => crate::cli::config::KEYS[..10]
                .iter()
                .find(|k| **k == name)
                .map(|k| Knob::Config(k))
                .ok_or_else(|| Error::Usage(format!("unknown parameter `{name}`"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Knob::Config(k) => k,
            Knob::N => "n",
            Knob::L => "l",
            Knob::K => "k",
        }
    }

    /// Apply `value` to a copy of the configuration and quantum numbers.
    pub fn apply(
        &self,
        cfg: &PhysicalConfig,
        qn: &QuantumNumbers,
        value: f64,
    ) -> Result<(PhysicalConfig, QuantumNumbers)> {
        let mut cfg = *cfg;
        let mut qn = *qn;
        match self {
            Knob::Config(key) => *field_mut(&mut cfg, key).expect("validated key") = value,
            Knob::N => {
                if value < 0.0 || value.fract() != 0.0 || value > u32::MAX as f64 {
                    return Err(Error::Usage(format!("n must be a nonnegative integer, got {value}")));
                }
                qn.n = value as u32;
            }
            Knob::L => {
                if value.fract() != 0.0 || !value.is_finite() {
                    return Err(Error::Usage(format!("l must be an integer, got {value}")));
                }
                qn.l = value as i64;
            }
            Knob::K => qn.k = value,
        }
        cfg.validate()?;
        Ok((cfg, qn))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub parameter: Knob,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub family: Knob,
    pub family_values: Vec<f64>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        match self.parameter {
            Knob::Config(key) if SWEEPABLE.contains(&key) => {}
            other => {
                return Err(Error::Usage(format!(
                    "cannot sweep `{}`; choose one of {}",
                    other.name(),
                    SWEEPABLE.join(", ")
                )))
            }
        }
        if !(self.start < self.stop) {
            return Err(Error::Usage(format!("sweep needs start < stop, got {} .. {}", self.start, self.stop)));
        }
        if self.steps < 2 {
            return Err(Error::Usage(format!("sweep needs at least 2 steps, got {}", self.steps)));
        }
        if self.family == self.parameter {
            return Err(Error::Usage("swept and family parameters must differ".into()));
        }
        if self.family_values.is_empty() {
            return Err(Error::Usage("family needs at least one value".into()));
        }
        Ok(())
    }

    pub fn swept_values(&self) -> Vec<f64> {
        let step = (self.stop - self.start) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.stop } else { self.start + step * i as f64 })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SweepOptions {
    pub with_oracle: bool,
    /// Fixed energy window; the per-state default window otherwise.
    pub window: Option<(f64, f64)>,
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub swept_value: f64,
    pub family_value: f64,
    pub n: u32,
    pub l: i64,
    pub k: f64,
    pub energy: Option<f64>,
    pub residual: Option<f64>,
    pub oracle_energy: Option<f64>,
    pub oracle_gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub swept_param: String,
    pub family_param: String,
    pub rows: Vec<SweepRow>,
}

pub fn search_spec(
    cfg: &PhysicalConfig,
    qn: &QuantumNumbers,
    window: Option<(f64, f64)>,
    tol: Option<f64>,
) -> RootSearchSpec {
    let mut spec = match window {
        Some((lo, hi)) => RootSearchSpec::new(lo, hi),
        None => RootSearchSpec::default_for(cfg, qn),
    };
    if let Some(tol) = tol {
        spec.tol = tol;
    }
    spec
}

/// Solve every grid point. Rows come out in grid order (family outer, swept
/// value inner); points without a positive root keep empty energy cells.
pub fn run_sweep(
    cfg: &PhysicalConfig,
    template: &QuantumNumbers,
    sweep: &SweepSpec,
    options: &SweepOptions,
) -> Result<SweepTable> {
    sweep.validate()?;
    let mut points = Vec::with_capacity(sweep.steps * sweep.family_values.len());
    for &fv in &sweep.family_values {
        let (fam_cfg, fam_qn) = sweep.family.apply(cfg, template, fv)?;
        for sv in sweep.swept_values() {
            let (pt_cfg, pt_qn) = sweep.parameter.apply(&fam_cfg, &fam_qn, sv)?;
            points.push((sv, fv, pt_cfg, pt_qn));
        }
    }

    let solve = |&(sv, fv, ref pcfg, ref pqn): &(f64, f64, PhysicalConfig, QuantumNumbers)| {
        solve_row(sv, fv, pcfg, pqn, options)
    };
    #[cfg(feature = "parallel")]
    let rows: Vec<SweepRow> = {
        use rayon::prelude::*;
        points.par_iter().map(solve).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<SweepRow> = points.iter().map(solve).collect();

    Ok(SweepTable {
        swept_param: sweep.parameter.name().to_string(),
        family_param: sweep.family.name().to_string(),
        rows,
    })
}

fn solve_row(
    swept_value: f64,
    family_value: f64,
    cfg: &PhysicalConfig,
    qn: &QuantumNumbers,
    options: &SweepOptions,
) -> SweepRow {
    let spec = search_spec(cfg, qn, options.window, options.tol);
    let level = spectrum::solve_energy(cfg, qn, &spec)
        .ok()
        .and_then(|levels| positive_branch(&levels));
    let oracle_energy = match (options.with_oracle, level, oracle::exact_partner_nodes(qn.n)) {
        (true, Some(_), Some(nodes)) => {
            let oqn = QuantumNumbers { n: nodes, ..*qn };
            let mut ospec = oracle::default_search(cfg, &oqn);
            if let Some((lo, hi)) = options.window {
                ospec.e_min = lo;
                ospec.e_max = hi;
            }
            oracle::oracle_energy(cfg, &oqn, &OracleGrid::default(), &ospec).ok().map(|l| l.energy)
        }
        _ => None,
    };
    SweepRow {
        swept_value,
        family_value,
        n: qn.n,
        l: qn.l,
        k: qn.k,
        energy: level.map(|l| l.energy),
        residual: level.map(|l| l.residual),
        oracle_gap: oracle_energy.zip(level).map(|(o, l)| (o - l.energy).abs()),
        oracle_energy,
    }
}

/// Recompute `|F(E)|` for every row with an energy; returns the rows whose
/// residual exceeds `tol` as `(row index, residual)`.
pub fn verify_table(
    cfg: &PhysicalConfig,
    template: &QuantumNumbers,
    table: &SweepTable,
    tol: f64,
) -> Result<Vec<(usize, f64)>> {
    let swept = Knob::parse(&table.swept_param)?;
    let family = Knob::parse(&table.family_param)?;
    let mut failures = Vec::new();
    for (i, row) in table.rows.iter().enumerate() {
        let Some(energy) = row.energy else { continue };
        let (c, q) = family.apply(cfg, template, row.family_value)?;
        let (c, q) = swept.apply(&c, &q, row.swept_value)?;
        let residual = spectrum::quantization_residual(&c, &q, energy)?.abs();
        if residual > tol {
            failures.push((i, residual));
        }
    }
    Ok(failures)
}
