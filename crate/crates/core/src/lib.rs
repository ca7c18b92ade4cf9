//! Bound-state spectra of the Klein-Gordon oscillator and its Cornell-coupled
//! generalization in Som-Raychaudhuri space-time, with a uniform magnetic
//! field, an Aharonov-Bohm flux tube and a Coulomb-type scalar potential.
//!
//! The crate is organised bottom-up:
//!
//! * [`model`] maps a [`PhysicalConfig`] and [`QuantumNumbers`] to the
//!   coefficients of the reduced radial equation at a trial energy.
//! * [`heun`] builds the Frobenius series of the biconfluent Heun equation and
//!   assembles radial wavefunctions.
//! * [`spectrum`] solves the transcendental energy condition by scan and
//!   bisection and checks the flux-shift identity.
//! * [`oracle`] is an independent finite-difference eigenvalue solver for the
//!   same radial equation, used to cross-check analytic energies.
//! * [`cli`] holds configuration parsing, parameter sweeps and CSV output.
//!
//! Natural units (c = ħ = 1) are used throughout.

// `!(x > 0.0)` is how NaN gets rejected along with nonpositive values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
mod error;
pub mod heun;
pub mod model;
pub mod oracle;
mod roots;
pub mod spectrum;
mod tridiag;

pub use error::{Error, Result};
pub use model::{Coupling, PhysicalConfig, QuantumNumbers, RadialCoefficients};
pub use spectrum::{Branch, EnergyLevel, RootSearchSpec, Source};
