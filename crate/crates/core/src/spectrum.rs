//! Energy eigenvalues from the polynomial quantization condition
//!
//! ```text
//! a4(E) = (2n + 2 + 2 sqrt(a1)) sqrt(a2^2(E))
//! ```
//!
//! which is transcendental in `E` because both sides depend on it. Roots are
//! bracketed by a uniform scan and refined by bisection.

use std::f64::consts::PI;

use crate::heun;
use crate::model::{coefficients_unchecked, PhysicalConfig, QuantumNumbers};
use crate::roots::{bisect, sign_changes};
use crate::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_GRID_POINTS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Analytic,
    Oracle,
}

/// A solved energy root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    pub energy: f64,
    pub n: u32,
    pub l: i64,
    pub k: f64,
    /// `|F(E)|` at the root, in the units of the residual function.
    pub residual: f64,
    pub branch: Branch,
    pub source: Source,
}

impl EnergyLevel {
    pub(crate) fn new(energy: f64, residual: f64, qn: &QuantumNumbers, source: Source) -> Self {
        Self {
            energy,
            n: qn.n,
            l: qn.l,
            k: qn.k,
            residual: residual.abs(),
            branch: if energy >= 0.0 { Branch::Positive } else { Branch::Negative },
            source,
        }
    }
}

/// Search window, scan resolution and tolerance for root finding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootSearchSpec {
    pub e_min: f64,
    pub e_max: f64,
    pub grid_points: usize,
    /// Largest acceptable `|F|` at a refined root. Bisection itself always
    /// runs down to adjacent floating-point numbers.
    pub tol: f64,
}

impl RootSearchSpec {
    pub fn new(e_min: f64, e_max: f64) -> Self {
        Self { e_min, e_max, grid_points: DEFAULT_GRID_POINTS, tol: DEFAULT_TOL }
    }

    /// Symmetric window `[-E_cap, E_cap]` that comfortably encloses every
    /// root for the given state.
    pub fn default_for(cfg: &PhysicalConfig, qn: &QuantumNumbers) -> Self {
        let nu = coefficients_unchecked(cfg, qn, 0.0).sqrt_a1();
        let (xi1, _) = cfg.cornell_strengths();
        let drive = cfg.vorticity.abs()
            + cfg.mass * cfg.omega.abs() * (1.0 + xi1.abs())
            + (cfg.charge * cfg.field).abs();
        let cap = 10.0
            * (cfg.mass.abs() + qn.k.abs() + (2.0 * qn.n as f64 + 4.0) * (1.0 + nu) * drive + 1.0);
        Self::new(-cap, cap)
    }

    pub fn with_tol(self, tol: f64) -> Self {
        Self { tol, ..self }
    }

    pub fn with_grid_points(self, grid_points: usize) -> Self {
        Self { grid_points, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.e_min.is_finite() && self.e_max.is_finite() && self.e_min < self.e_max) {
            return Err(Error::InvalidSearch(format!("window [{}, {}]", self.e_min, self.e_max)));
        }
        if self.grid_points < 2 {
            return Err(Error::InvalidSearch(format!("grid_points = {}", self.grid_points)));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidSearch(format!("tol = {}", self.tol)));
        }
        Ok(())
    }
}

/// `F(E) = a4(E) - (2n + 2 + 2 sqrt(a1)) sqrt(a2^2(E))`.
///
/// For linear coupling this is the right-hand side minus the left-hand side
/// of the energy condition; the Cornell form differs only through the
/// coefficients.
pub fn quantization_residual(cfg: &PhysicalConfig, qn: &QuantumNumbers, energy: f64) -> Result<f64> {
    let rc = crate::model::radial_coefficients(cfg, qn, energy)?;
    rc.require_confining()?;
    Ok(residual_of(&rc, qn.n))
}

fn residual_of(rc: &crate::model::RadialCoefficients, n: u32) -> f64 {
    rc.a4 - (2.0 * n as f64 + 2.0 + 2.0 * rc.sqrt_a1()) * rc.a2sq.sqrt()
}

fn residual_fn<'a>(cfg: &'a PhysicalConfig, qn: &'a QuantumNumbers) -> impl Fn(f64) -> Option<f64> + 'a {
    move |e| {
        let rc = coefficients_unchecked(cfg, qn, e);
        (!rc.is_degenerate()).then(|| residual_of(&rc, qn.n))
    }
}

/// Every sign-change-bracketed root of [`quantization_residual`] in the
/// window, sorted ascending. An empty list means no bound state was found in
/// the window.
pub fn solve_energy(
    cfg: &PhysicalConfig,
    qn: &QuantumNumbers,
    spec: &RootSearchSpec,
) -> Result<Vec<EnergyLevel>> {
    cfg.validate()?;
    spec.validate()?;
    if !qn.k.is_finite() {
        return Err(Error::NonFinite { name: "k", value: qn.k });
    }
    let f = residual_fn(cfg, qn);
    let mut levels: Vec<EnergyLevel> = sign_changes(&f, spec.e_min, spec.e_max, spec.grid_points)
        .into_iter()
        .filter_map(|(a, b)| bisect(&f, a, b))
        .filter(|&(_, fr)| fr.abs() <= spec.tol)
        .map(|(e, fr)| EnergyLevel::new(e, fr, qn, Source::Analytic))
        .collect();
    levels.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(levels)
}

/// The positive-branch level: the largest positive root.
pub fn positive_branch(levels: &[EnergyLevel]) -> Option<EnergyLevel> {
    levels.iter().rev().find(|l| l.branch == Branch::Positive).copied()
}

/// [`solve_energy`] on the default window, reduced to the positive branch.
pub fn positive_energy(cfg: &PhysicalConfig, qn: &QuantumNumbers) -> Result<EnergyLevel> {
    let levels = solve_energy(cfg, qn, &RootSearchSpec::default_for(cfg, qn))?;
    positive_branch(&levels).ok_or(Error::NoRoot)
}

/// Termination residuals of the Heun series at a solved level:
/// `(C(n+1), a4/a2 - 2 - 2 sqrt(a1) - 2n)`.
pub fn termination_diagnostics(cfg: &PhysicalConfig, level: &EnergyLevel) -> Result<(f64, f64)> {
    let qn = QuantumNumbers::new(level.n, level.l, level.k);
    let rc = crate::model::radial_coefficients(cfg, &qn, level.energy)?;
    heun::termination_residuals(&rc, level.n as usize)
}

/// Positive-branch energies of two configurations sharing the same
/// effective angular momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxShift {
    /// Level at flux `Phi_B + 2 pi tau / e` with angular number `l`.
    pub shifted_flux: EnergyLevel,
    /// Level at flux `Phi_B` with angular number `l - tau`.
    pub shifted_l: EnergyLevel,
    pub gap: f64,
}

/// Aharonov-Bohm periodicity: adding `tau` flux quanta `2 pi / e` is
/// equivalent to lowering `l` by `tau`. Negative `tau` gives the mirrored
/// pairing (`Phi_B - 2 pi |tau| / e` with `l + |tau|`).
///
/// Both solves use the window of the unshifted state unless `spec` is given.
pub fn ab_flux_shift_check(
    cfg: &PhysicalConfig,
    qn: &QuantumNumbers,
    tau: i64,
    spec: Option<&RootSearchSpec>,
) -> Result<FluxShift> {
    if tau == 0 || cfg.charge == 0.0 {
        return Err(Error::InvalidShift);
    }
    let spec = spec.copied().unwrap_or_else(|| RootSearchSpec::default_for(cfg, qn));
    let flux_cfg = PhysicalConfig { flux: cfg.flux + 2.0 * PI * tau as f64 / cfg.charge, ..*cfg };
    let l_qn = QuantumNumbers { l: qn.l - tau, ..*qn };

    let a = positive_branch(&solve_energy(&flux_cfg, qn, &spec)?).ok_or(Error::NoRoot)?;
    let b = positive_branch(&solve_energy(cfg, &l_qn, &spec)?).ok_or(Error::NoRoot)?;
    Ok(FluxShift { shifted_flux: a, shifted_l: b, gap: (a.energy - b.energy).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Coupling;
    use proptest::prelude::*;

    fn flat() -> PhysicalConfig {
        PhysicalConfig { mass: 1.0, omega: 1.0, ..Default::default() }
    }

    fn unit_set(alpha: f64) -> PhysicalConfig {
        PhysicalConfig {
            mass: 1.0,
            charge: 1.0,
            omega: 1.0,
            vorticity: 1.0,
            field: 1.0,
            alpha,
            flux: 1.0,
            coulomb: 1.0,
            ..Default::default()
        }
    }

    #[test]
    fn residual_examples() {
        let qn = QuantumNumbers::new(0, 0, 1.0);
        assert!(quantization_residual(&flat(), &qn, 6f64.sqrt()).unwrap().abs() < 1e-14);
        assert_eq!(quantization_residual(&flat(), &qn, 0.0).unwrap(), -6.0);
    }

    #[test]
    fn degenerate_trial_energy() {
        let cfg = PhysicalConfig { vorticity: 1.0, field: 2.0, ..Default::default() };
        assert!(matches!(
            quantization_residual(&cfg, &QuantumNumbers::new(0, 0, 0.0), -1.0),
            Err(Error::Degenerate { .. })
        ));
    }

    #[test]
    fn flat_limit_root() {
        let qn = QuantumNumbers::new(0, 0, 1.0);
        let levels = solve_energy(&flat(), &qn, &RootSearchSpec::new(0.0, 10.0)).unwrap();
        assert_eq!(levels.len(), 1);
        assert!((levels[0].energy - 6f64.sqrt()).abs() < 1e-10);
        assert!(levels[0].residual <= DEFAULT_TOL);
        assert_eq!(levels[0].source, Source::Analytic);
        // both branches on the default window
        let levels = solve_energy(&flat(), &qn, &RootSearchSpec::default_for(&flat(), &qn)).unwrap();
        assert_eq!(levels.len(), 2);
        assert!((levels[0].energy + 6f64.sqrt()).abs() < 1e-10);
        assert_eq!(levels[0].branch, Branch::Negative);
    }

    #[test]
    fn empty_window_is_not_an_error() {
        let qn = QuantumNumbers::new(0, 0, 1.0);
        assert!(solve_energy(&flat(), &qn, &RootSearchSpec::new(3.0, 10.0)).unwrap().is_empty());
        assert!(solve_energy(&flat(), &qn, &RootSearchSpec::new(3.0, 1.0)).is_err());
        assert!(solve_energy(&flat(), &qn, &RootSearchSpec::new(0.0, 1.0).with_grid_points(1)).is_err());
    }

    #[test]
    fn roots_recompute_to_small_residual() {
        for n in 1..=5 {
            let qn = QuantumNumbers::new(n, 1, 1.0);
            for level in solve_energy(&unit_set(0.5), &qn, &RootSearchSpec::default_for(&unit_set(0.5), &qn)).unwrap() {
                let f = quantization_residual(&unit_set(0.5), &qn, level.energy).unwrap();
                assert!(f.abs() <= DEFAULT_TOL);
            }
        }
    }

    #[test]
    fn energy_decreases_with_alpha() {
        for n in 1..=5 {
            let qn = QuantumNumbers::new(n, 1, 1.0);
            let energies: Vec<f64> = (0..=14)
                .map(|i| positive_energy(&unit_set(0.3 + 0.05 * i as f64), &qn).unwrap().energy)
                .collect();
            assert!(energies.windows(2).all(|w| w[1] < w[0]), "n = {n}: {energies:?}");
        }
    }

    #[test]
    fn cornell_unit_strengths_reproduce_linear_roots() {
        let cfg = unit_set(0.7);
        let cornell = PhysicalConfig { coupling: Coupling::Cornell, xi1: 1.0, xi2: 0.0, ..cfg };
        let qn = QuantumNumbers::new(2, -1, 0.3);
        let spec = RootSearchSpec::default_for(&cfg, &qn);
        assert_eq!(solve_energy(&cfg, &qn, &spec).unwrap(), solve_energy(&cornell, &qn, &spec).unwrap());
    }

    #[test]
    fn flux_shift_examples() {
        let qn = QuantumNumbers::new(1, 1, 1.0);
        for tau in [1, 2, -3] {
            let shift = ab_flux_shift_check(&unit_set(0.5), &qn, tau, None).unwrap();
            assert!(shift.gap <= 2.0 * DEFAULT_TOL, "tau = {tau}: {shift:?}");
        }
        assert!(matches!(ab_flux_shift_check(&unit_set(0.5), &qn, 0, None), Err(Error::InvalidShift)));
        let neutral = PhysicalConfig { charge: 0.0, ..unit_set(0.5) };
        assert!(ab_flux_shift_check(&neutral, &qn, 1, None).is_err());
    }

    #[test]
    fn termination_condition_holds_at_roots() {
        let cfg = PhysicalConfig { coulomb: 0.0, ..unit_set(0.6) };
        for n in 0..4 {
            let qn = QuantumNumbers::new(n, 2, 0.5);
            let level = positive_energy(&cfg, &qn).unwrap();
            let (_, gap) = termination_diagnostics(&cfg, &level).unwrap();
            assert!(gap.abs() <= 1e-8);
        }
    }

    fn arb_config() -> impl Strategy<Value = PhysicalConfig> {
        (
            (0.3f64..2.0, 0.3f64..2.0, 0.2f64..2.0, -1.5f64..1.5, -2.0f64..2.0),
            (0.2f64..=1.0, -4.0f64..4.0, -2.0f64..2.0),
        )
            .prop_map(|((mass, charge, omega, vorticity, field), (alpha, flux, coulomb))| PhysicalConfig {
                mass,
                charge,
                omega,
                vorticity,
                field,
                alpha,
                flux,
                coulomb,
                ..Default::default()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn roots_depend_on_l_and_flux_only_through_l_ef(
            cfg in arb_config(), n in 0u32..4, l in -3i64..=3, k in -1.0f64..1.0, tau in -3i64..=3,
        ) {
            let qn = QuantumNumbers::new(n, l, k);
            let moved_cfg = PhysicalConfig { flux: cfg.flux - 2.0 * PI * tau as f64 / cfg.charge, ..cfg };
            let moved_qn = QuantumNumbers { l: l - tau, ..qn };
            let spec = RootSearchSpec::default_for(&cfg, &qn);
            let a = solve_energy(&cfg, &qn, &spec).unwrap();
            let b = solve_energy(&moved_cfg, &moved_qn, &spec).unwrap();
            prop_assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                prop_assert!((x.energy - y.energy).abs() <= 2.0 * DEFAULT_TOL, "{} vs {}", x.energy, y.energy);
            }
        }

        #[test]
        fn cornell_roots_equal_linear_roots(cfg in arb_config(), n in 0u32..4, l in -3i64..=3, k in -1.0f64..1.0) {
            let qn = QuantumNumbers::new(n, l, k);
            let cornell = PhysicalConfig { coupling: Coupling::Cornell, xi1: 1.0, xi2: 0.0, ..cfg };
            let spec = RootSearchSpec::default_for(&cfg, &qn);
            prop_assert_eq!(solve_energy(&cfg, &qn, &spec).unwrap(), solve_energy(&cornell, &qn, &spec).unwrap());
        }

        #[test]
        fn positive_energy_increases_with_n(cfg in arb_config(), l in -3i64..=3, k in -1.0f64..1.0) {
            let energies: Vec<f64> = (0..5)
                .map(|n| positive_energy(&cfg, &QuantumNumbers::new(n, l, k)).unwrap().energy)
                .collect();
            prop_assert!(energies.windows(2).all(|w| w[1] > w[0]), "{:?}", energies);
        }
    }
}
