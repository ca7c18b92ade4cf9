//! Finite-difference eigenvalue oracle for the radial equation.
//!
//! Independent of the Heun series: the radial operator
//!
//! ```text
//! -s'' - s'/r + [a1/r^2 + a2^2 r^2 + 2 a3/r] s = a4 s
//! ```
//!
//! is written for `v = r^-sqrt(a1) s` in self-adjoint form
//!
//! ```text
//! -(p v')' + p [a2^2 r^2 + 2 a3/r] v = mu p v,      p = r^(2 sqrt(a1) + 1)
//! ```
//!
//! and discretized on a cell-centred grid over `[r_min, r_max]` with a
//! zero-flux inner face and a Dirichlet outer face. Scaling rows by `sqrt(p)`
//! gives a symmetric tridiagonal matrix whose eigenvalues `mu_0 < mu_1 < ...`
//! approach the exact ones at second order. The `k`-th eigenvector has
//! exactly `k` sign changes.
//!
//! Energies follow from the nonlinear condition `mu_m(E) = a4(E)` for the
//! state with `m` radial nodes, solved by scan and bisection over `E`.

use crate::model::{coefficients_unchecked, PhysicalConfig, QuantumNumbers, RadialCoefficients};
use crate::roots::{bisect, sign_changes};
use crate::spectrum::{positive_branch, EnergyLevel, RootSearchSpec, Source};
use crate::tridiag::{self, SymTridiagonal};
use crate::{Error, Result};

pub const DEFAULT_POINTS: usize = 4000;
pub const MIN_POINTS: usize = 100;
/// Inner cutoff as a fraction of `r_max`.
pub const CUTOFF_RATIO: f64 = 1e-6;
/// Second cutoff used for the sensitivity check.
pub const CHECK_CUTOFF_RATIO: f64 = 1e-5;
/// Largest accepted relative eigenvalue shift between the two cutoffs.
pub const CUTOFF_AGREEMENT: f64 = 1e-5;
/// Scan resolution over `E` for the outer root search.
pub const SCAN_POINTS: usize = 400;

/// Radial grid: `points` cells between `r_min` and `r_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn new(r_min: f64, r_max: f64, points: usize) -> Self {
        Self { r_min, r_max, points }
    }

    /// Default grid for `rc` resolving states up to `nodes` radial nodes:
    /// the Gaussian tail is below `exp(-40)` at `r_max`.
    pub fn for_coefficients(rc: &RadialCoefficients, nodes: u32) -> Result<Self> {
        rc.require_confining()?;
        Ok(Self::scaled(rc, nodes, DEFAULT_POINTS, CUTOFF_RATIO))
    }

    fn scaled(rc: &RadialCoefficients, nodes: u32, points: usize, cutoff: f64) -> Self {
        let rho_max = (2.0 * rc.sqrt_a1() + 4.0 * nodes as f64 + 2.0).sqrt() + 9.0;
        let r_max = rho_max / rc.a2().sqrt();
        Self { r_min: cutoff * r_max, r_max, points }
    }

    pub fn validate(&self) -> Result<()> {
        if self.points < MIN_POINTS {
            return Err(Error::InvalidGrid(format!("{} points, need at least {MIN_POINTS}", self.points)));
        }
        if !(self.r_min > 0.0 && self.r_min < self.r_max && self.r_max.is_finite()) {
            return Err(Error::InvalidGrid(format!("need 0 < r_min < r_max, got [{}, {}]", self.r_min, self.r_max)));
        }
        Ok(())
    }

    fn with_cutoff_ratio(self, ratio: f64) -> Self {
        Self { r_min: ratio * self.r_max, ..self }
    }
}

/// How the oracle picks its grid at each trial energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleGrid {
    /// Same grid for every trial energy.
    Fixed(GridSpec),
    /// Grid rescaled with `a2(E)` so the discrete problem varies smoothly
    /// with `E`; `r_min = 1e-6 r_max`.
    Scaled { points: usize },
}

impl Default for OracleGrid {
    fn default() -> Self {
        OracleGrid::Scaled { points: DEFAULT_POINTS }
    }
}

impl OracleGrid {
    fn resolve(&self, rc: &RadialCoefficients, nodes: u32) -> GridSpec {
        match *self {
            OracleGrid::Fixed(grid) => grid,
            OracleGrid::Scaled { points } => GridSpec::scaled(rc, nodes, points, CUTOFF_RATIO),
        }
    }
}

struct Discretization {
    matrix: SymTridiagonal,
    radii: Vec<f64>,
}

fn discretize(rc: &RadialCoefficients, grid: &GridSpec) -> Discretization {
    let nu = rc.sqrt_a1();
    let power = 2.0 * nu + 1.0;
    // Below this radius the weight r^(2 nu + 1) is negligible; starting the
    // grid there keeps the matrix entries bounded for large nu.
    let floor = if nu > 0.0 {
        (nu / rc.a2()).sqrt() * (-36.0 / power).exp()
    } else {
        0.0
    };
    let r_min = grid.r_min.max(floor);
    let n = grid.points;
    let h = (grid.r_max - r_min) / n as f64;
    let h2 = h * h;

    let radii: Vec<f64> = (0..n).map(|i| r_min + (i as f64 + 0.5) * h).collect();
    let log_node: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
    let log_face = |i: usize| (r_min + i as f64 * h).ln();

    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n - 1);
    for i in 0..n {
        let left = if i == 0 { 0.0 } else { (power * (log_face(i) - log_node[i])).exp() };
        let mut right = (power * (log_face(i + 1) - log_node[i])).exp();
        if i + 1 == n {
            right *= 2.0;
        }
        let r = radii[i];
        diag.push((left + right) / h2 + rc.a2sq * r * r + 2.0 * rc.a3 / r);
        if i + 1 < n {
            let coupling = power * (log_face(i + 1) - 0.5 * (log_node[i] + log_node[i + 1]));
            off.push(-coupling.exp() / h2);
        }
    }
    Discretization { matrix: SymTridiagonal::new(diag, off), radii }
}

/// The `count` smallest eigenvalues of the discretized radial operator.
pub fn radial_operator_eigenvalues(
    rc: &RadialCoefficients,
    grid: &GridSpec,
    count: usize,
) -> Result<Vec<f64>> {
    grid.validate()?;
    rc.require_confining()?;
    let disc = discretize(rc, grid);
    Ok((0..count.min(grid.points)).map(|k| disc.matrix.eigenvalue(k)).collect())
}

/// Eigenvalue and radial function `s(r)` (unit discrete norm in `L^2(r dr)`)
/// of the state with `nodes` interior sign changes.
pub fn eigenstate(
    rc: &RadialCoefficients,
    grid: &GridSpec,
    nodes: u32,
) -> Result<(f64, Vec<(f64, f64)>)> {
    grid.validate()?;
    rc.require_confining()?;
    let disc = discretize(rc, grid);
    let (mu, vector) = matched_state(&disc.matrix, nodes)?;
    // y = sqrt(p) v and s = r^nu v, so s = y / sqrt(r)
    let h = disc.radii.get(1).map_or(1.0, |r1| r1 - disc.radii[0]);
    let profile: Vec<(f64, f64)> = disc
        .radii
        .iter()
        .zip(&vector)
        .map(|(&r, &y)| (r, y / (r.sqrt() * h.sqrt())))
        .collect();
    Ok((mu, profile))
}

/// Eigenpair whose vector has exactly `nodes` sign changes. By the discrete
/// oscillation theorem it is the eigenvalue with index `nodes`; the node
/// count is checked rather than assumed.
fn matched_state(matrix: &SymTridiagonal, nodes: u32) -> Result<(f64, Vec<f64>)> {
    let k = nodes as usize;
    if k >= matrix.len() {
        return Err(Error::NodeMismatch { nodes });
    }
    let mu = matrix.eigenvalue(k);
    let vector = matrix.eigenvector(mu);
    if tridiag::sign_changes(&vector) == k {
        Ok((mu, vector))
    } else {
        Err(Error::NodeMismatch { nodes })
    }
}

/// Window and scan resolution suitable for the oracle: the analytic default
/// window for the partner degree `2 m`, scanned at [`SCAN_POINTS`].
pub fn default_search(cfg: &PhysicalConfig, qn: &QuantumNumbers) -> RootSearchSpec {
    let partner = QuantumNumbers { n: exact_partner_degree(qn.n), ..*qn };
    RootSearchSpec::default_for(cfg, &partner).with_grid_points(SCAN_POINTS)
}

/// Polynomial degree whose termination condition is exact for the oracle
/// state with `nodes` radial nodes when the Coulomb coefficient vanishes.
pub fn exact_partner_degree(nodes: u32) -> u32 {
    2 * nodes
}

/// Radial node count of the oracle state that corresponds to polynomial
/// degree `n`; only even degrees terminate when the Coulomb coefficient
/// vanishes.
pub fn exact_partner_nodes(n: u32) -> Option<u32> {
    n.is_multiple_of(2).then_some(n / 2)
}

fn mismatch_fn<'a>(
    cfg: &'a PhysicalConfig,
    qn: &'a QuantumNumbers,
    grid: &'a OracleGrid,
    sign_only: bool,
) -> impl Fn(f64) -> Option<f64> + 'a {
    move |e| {
        let rc = coefficients_unchecked(cfg, qn, e);
        if rc.is_degenerate() {
            return None;
        }
        let spec = grid.resolve(&rc, qn.n);
        spec.validate().ok()?;
        let matrix = discretize(&rc, &spec).matrix;
        if sign_only {
            // mu_m < a4 exactly when more than m eigenvalues lie below a4
            Some(qn.n as f64 + 0.5 - matrix.count_below(rc.a4) as f64)
        } else {
            Some(matrix.eigenvalue(qn.n as usize) - rc.a4)
        }
    }
}

/// All roots of `G(E) = mu_m(E) - a4(E)` in the window, where `m = qn.n` is
/// the number of radial nodes. Sorted ascending.
pub fn oracle_energies(
    cfg: &PhysicalConfig,
    qn: &QuantumNumbers,
    grid: &OracleGrid,
    spec: &RootSearchSpec,
) -> Result<Vec<EnergyLevel>> {
    cfg.validate()?;
    spec.validate()?;
    if let OracleGrid::Fixed(g) = grid {
        g.validate()?;
    }
    if let OracleGrid::Scaled { points } = grid {
        if *points < MIN_POINTS {
            return Err(Error::InvalidGrid(format!("{points} points, need at least {MIN_POINTS}")));
        }
    }
    // brackets and bisection need only the sign of G, which one Sturm count
    // gives; the residual is evaluated once at the root
    let sign = mismatch_fn(cfg, qn, grid, true);
    let g = mismatch_fn(cfg, qn, grid, false);
    let mut levels: Vec<EnergyLevel> = sign_changes(&sign, spec.e_min, spec.e_max, spec.grid_points)
        .into_iter()
        .filter_map(|(a, b)| bisect(&sign, a, b))
        .filter_map(|(e, _)| Some(EnergyLevel::new(e, g(e)?, qn, Source::Oracle)))
        .collect();
    levels.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(levels)
}

/// Positive-branch oracle energy of the state with `qn.n` radial nodes.
///
/// The node count of the eigenvector at the root is verified, and the
/// eigenvalue must move by less than [`CUTOFF_AGREEMENT`] (relative) when the
/// inner cutoff is raised from `1e-6` to `1e-5` of `r_max`.
pub fn oracle_energy(
    cfg: &PhysicalConfig,
    qn: &QuantumNumbers,
    grid: &OracleGrid,
    spec: &RootSearchSpec,
) -> Result<EnergyLevel> {
    let levels = oracle_energies(cfg, qn, grid, spec)?;
    let level = positive_branch(&levels).ok_or(Error::NoRoot)?;
    let rc = coefficients_unchecked(cfg, qn, level.energy);
    let base = grid.resolve(&rc, qn.n);
    let (mu, _) = matched_state(&discretize(&rc, &base).matrix, qn.n)?;
    let shift = cutoff_shift(&rc, &base, qn.n, mu);
    if shift > CUTOFF_AGREEMENT {
        return Err(Error::CutoffSensitive { shift, limit: CUTOFF_AGREEMENT });
    }
    Ok(level)
}

fn cutoff_shift(rc: &RadialCoefficients, base: &GridSpec, nodes: u32, mu: f64) -> f64 {
    let ratio = base.r_min / base.r_max;
    let raised = base.with_cutoff_ratio(ratio * CHECK_CUTOFF_RATIO / CUTOFF_RATIO);
    let other = discretize(rc, &raised).matrix.eigenvalue(nodes as usize);
    (other - mu).abs() / mu.abs().max(f64::MIN_POSITIVE)
}
