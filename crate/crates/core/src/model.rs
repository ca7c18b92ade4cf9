//! Physical configuration and the coefficients of the reduced radial equation
//!
//! ```text
//! s'' + s'/r + [a4 - a1/r^2 - a2^2 r^2 - 2 a3/r] s = 0
//! ```
//!
//! With `l_ef = l - e Phi_B / (2 pi)` the coefficients regroup as
//!
//! ```text
//! a1   = l_ef^2/alpha^2 + lambda^2 (+ (M omega xi2)^2 for Cornell coupling)
//! a2^2 = (E Omega + e B0/2)^2 + (M omega xi1)^2         (xi1 = 1 when linear)
//! a3   = M lambda
//! a4   = E^2 - l_ef (2 Omega E + e B0)/alpha - 2 M omega xi1
//!        - 2 (M omega)^2 xi1 xi2 - k^2 - M^2            (xi1 = 1, xi2 = 0 when linear)
//! ```

use std::f64::consts::PI;

use crate::{Error, Result};

/// Profile of the oscillator coupling `f(r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Coupling {
    /// `f(r) = r`, the ordinary Klein-Gordon oscillator.
    #[default]
    Linear,
    /// `f(r) = xi1 r + xi2 / r`.
    Cornell,
}

impl Coupling {
    pub fn as_str(self) -> &'static str {
        match self {
            Coupling::Linear => "linear",
            Coupling::Cornell => "cornell",
        }
    }
}

impl std::str::FromStr for Coupling {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "linear" => Ok(Coupling::Linear),
            "cornell" => Ok(Coupling::Cornell),
            other => Err(format!("unknown coupling mode `{other}` (expected linear|cornell)")),
        }
    }
}

/// All continuous model parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConfig {
    /// Particle mass `M`.
    pub mass: f64,
    /// Electric charge `e`.
    pub charge: f64,
    /// Oscillator frequency `omega`.
    pub omega: f64,
    /// Space-time vorticity `Omega`.
    pub vorticity: f64,
    /// Uniform magnetic field `B0`.
    pub field: f64,
    /// Deficit parameter `alpha` in (0, 1].
    pub alpha: f64,
    /// Aharonov-Bohm flux `Phi_B`.
    pub flux: f64,
    /// Coulomb strength `lambda` of the scalar potential.
    pub coulomb: f64,
    /// Linear Cornell strength `xi1` (ignored for linear coupling).
    pub xi1: f64,
    /// Inverse Cornell strength `xi2` (ignored for linear coupling).
    pub xi2: f64,
    pub coupling: Coupling,
}

impl Default for PhysicalConfig {
    fn default() -> Self {
        Self {
            mass: 1.0,
            charge: 1.0,
            omega: 0.0,
            vorticity: 0.0,
            field: 0.0,
            alpha: 1.0,
            flux: 0.0,
            coulomb: 0.0,
            xi1: 0.0,
            xi2: 0.0,
            coupling: Coupling::Linear,
        }
    }
}

impl PhysicalConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, value) in self.named_values() {
            if !value.is_finite() {
                return Err(Error::NonFinite { name, value });
            }
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::InvalidAlpha(self.alpha));
        }
        Ok(())
    }

    /// Effective angular momentum for angular quantum number `l`.
    pub fn effective_l(&self, l: i64) -> f64 {
        effective_angular_momentum(l, self.charge, self.flux)
    }

    /// `(xi1, xi2)` as seen by the radial equation.
    pub fn cornell_strengths(&self) -> (f64, f64) {
        match self.coupling {
            Coupling::Linear => (1.0, 0.0),
            Coupling::Cornell => (self.xi1, self.xi2),
        }
    }

    fn named_values(&self) -> [(&'static str, f64); 10] {
        [
            ("M", self.mass),
            ("e", self.charge),
            ("omega", self.omega),
            ("Omega", self.vorticity),
            ("B0", self.field),
            ("alpha", self.alpha),
            ("PhiB", self.flux),
            ("lambda", self.coulomb),
            ("xi1", self.xi1),
            ("xi2", self.xi2),
        ]
    }
}

/// Radial index `n`, angular index `l` and axial wavenumber `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumNumbers {
    pub n: u32,
    pub l: i64,
    pub k: f64,
}

impl QuantumNumbers {
    pub fn new(n: u32, l: i64, k: f64) -> Self {
        Self { n, l, k }
    }
}

/// Coefficients `(a1, a2^2, a3, a4)` of the radial equation at a trial energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialCoefficients {
    pub a1: f64,
    pub a2sq: f64,
    pub a3: f64,
    pub a4: f64,
    pub energy: f64,
}

impl RadialCoefficients {
    /// Bare coefficients not tied to a particular energy, mostly for tests and
    /// for exploring the Heun machinery directly.
    pub fn from_parts(a1: f64, a2sq: f64, a3: f64, a4: f64) -> Self {
        Self { a1, a2sq, a3, a4, energy: f64::NAN }
    }

    /// `sqrt(a1)`, nonnegative branch.
    pub fn sqrt_a1(&self) -> f64 {
        self.a1.max(0.0).sqrt()
    }

    /// `a2 = +sqrt(a2^2)`.
    pub fn a2(&self) -> f64 {
        self.a2sq.max(0.0).sqrt()
    }

    pub fn is_degenerate(&self) -> bool {
        !(self.a2sq > 0.0)
    }

    pub fn require_confining(&self) -> Result<()> {
        if self.is_degenerate() {
            Err(Error::Degenerate { energy: self.energy, a2sq: self.a2sq })
        } else {
            Ok(())
        }
    }
}

/// `l - e Phi_B / (2 pi)`.
pub fn effective_angular_momentum(l: i64, charge: f64, flux: f64) -> f64 {
    l as f64 - charge * flux / (2.0 * PI)
}

/// Radial-equation coefficients for `cfg` and `qn` at trial energy `energy`.
pub fn radial_coefficients(
    cfg: &PhysicalConfig,
    qn: &QuantumNumbers,
    energy: f64,
) -> Result<RadialCoefficients> {
    cfg.validate()?;
    if !energy.is_finite() {
        return Err(Error::NonFinite { name: "E", value: energy });
    }
    if !qn.k.is_finite() {
        return Err(Error::NonFinite { name: "k", value: qn.k });
    }
    Ok(coefficients_unchecked(cfg, qn, energy))
}

/// Same as [`radial_coefficients`] for an already validated configuration.
pub(crate) fn coefficients_unchecked(
    cfg: &PhysicalConfig,
    qn: &QuantumNumbers,
    energy: f64,
) -> RadialCoefficients {
    let m = cfg.mass;
    let w = cfg.omega;
    let lef = cfg.effective_l(qn.l);
    let centrifugal = (lef / cfg.alpha).powi(2) + cfg.coulomb.powi(2);
    let drift = energy * cfg.vorticity + 0.5 * cfg.charge * cfg.field;
    let rotation = lef * (2.0 * cfg.vorticity * energy + cfg.charge * cfg.field) / cfg.alpha;
    let rest = qn.k * qn.k + m * m;
    let e2 = energy * energy;

    let (a1, a2sq, a4) = match cfg.coupling {
        Coupling::Linear => (
            centrifugal,
            drift * drift + (m * w).powi(2),
            e2 - rotation - 2.0 * m * w - rest,
        ),
        Coupling::Cornell => (
            centrifugal + (m * w * cfg.xi2).powi(2),
            drift * drift + (m * w * cfg.xi1).powi(2),
            e2 - rotation - 2.0 * m * w * cfg.xi1 - 2.0 * (m * w).powi(2) * cfg.xi1 * cfg.xi2 - rest,
        ),
    };

    RadialCoefficients { a1, a2sq, a3: m * cfg.coulomb, a4, energy }
}
