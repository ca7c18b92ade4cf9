//! Frobenius series for the biconfluent Heun equation
//!
//! ```text
//! H'' + ((1 + 2 sqrt(a1))/rho - 2 rho) H' + [a4/a2 - 2 - 2 sqrt(a1) - (2 a3/sqrt(a2))/rho] H = 0
//! ```
//!
//! obtained from the radial equation through
//! `s(r) = exp(-a2 r^2 / 2) r^sqrt(a1) H(sqrt(a2) r)`. Only the regular
//! indicial root `j = 0` is used; with `C0 = 1` the coefficients follow the
//! three-term recurrence
//!
//! ```text
//! C1     = q / (2 nu + 1)
//! C(m+2) = [q C(m+1) + (2 + 2m + 2 nu - a4/a2) C(m)] / ((m + 2)(m + 2 + 2 nu))
//! ```
//!
//! with `nu = sqrt(a1)` and `q = 2 a3 / sqrt(a2)`. The series is a polynomial
//! of degree `n` exactly when `a4/a2 - 2 - 2 nu = 2n` and `C(n+1) = 0`.

use crate::model::RadialCoefficients;
use crate::{Error, Result};

/// Default number of series terms.
pub const DEFAULT_TERMS: usize = 200;

/// Relative tolerance for declaring the series truncated at some index.
const TRUNCATION_TOL: f64 = 1e-8;

/// Terms below this fraction of the partial sum count as converged.
const CONVERGENCE_TOL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSolution {
    /// `C0 ..= CN`, with `C0 = 1`.
    pub coeffs: Vec<f64>,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    /// Degree `n` at which both termination conditions hold, if any.
    pub truncation_index: Option<usize>,
    /// `max |Cj|` for `j > n` when truncation was detected.
    pub tail_norm: Option<f64>,
}

impl SeriesSolution {
    /// Coefficients that take part in evaluation: the polynomial part when the
    /// series truncates, the full series otherwise.
    pub fn active_coeffs(&self) -> &[f64] {
        match self.truncation_index {
            Some(n) => &self.coeffs[..=n],
            None => &self.coeffs,
        }
    }

    /// `H(rho)`, `H'(rho)` and `H''(rho)` from the active coefficients.
    pub fn evaluate(&self, rho: f64) -> (f64, f64, f64) {
        let c = self.active_coeffs();
        let (mut h, mut dh, mut d2h) = (0.0, 0.0, 0.0);
        for (j, &cj) in c.iter().enumerate().rev() {
            let jf = j as f64;
            d2h = d2h * rho + cj * jf * (jf - 1.0);
            dh = dh * rho + cj * jf;
            h = h * rho + cj;
        }
        // dh and d2h were accumulated without their rho^-1 and rho^-2 factors
        let dh = if rho == 0.0 { c.get(1).copied().unwrap_or(0.0) } else { dh / rho };
        let d2h = if rho == 0.0 { 2.0 * c.get(2).copied().unwrap_or(0.0) } else { d2h / (rho * rho) };
        (h, dh, d2h)
    }

    /// Residual of the Heun equation at `rho > 0`.
    pub fn ode_residual(&self, rho: f64) -> f64 {
        let nu = self.a1.max(0.0).sqrt();
        let q = 2.0 * self.a3 / self.a2.sqrt();
        let (h, dh, d2h) = self.evaluate(rho);
        d2h + ((1.0 + 2.0 * nu) / rho - 2.0 * rho) * dh
            + (self.a4 / self.a2 - 2.0 - 2.0 * nu - q / rho) * h
    }

    /// Number of sign changes of the polynomial part on `rho > 0`, sampled
    /// on `[0, rho_max]`.
    pub fn positive_nodes(&self, rho_max: f64, samples: usize) -> usize {
        let mut count = 0;
        let mut prev = 0.0f64;
        for i in 1..=samples {
            let h = self.evaluate(rho_max * i as f64 / samples as f64).0;
            if h != 0.0 {
                if prev != 0.0 && (h < 0.0) != (prev < 0.0) {
                    count += 1;
                }
                prev = h;
            }
        }
        count
    }
}

/// Forward recurrence for `C0 ..= C(terms)`.
pub fn series_coefficients(rc: &RadialCoefficients, terms: usize) -> Result<SeriesSolution> {
    if terms < 2 {
        return Err(Error::TooFewTerms { min: 2, got: terms });
    }
    rc.require_confining()?;
    let coeffs = recurrence(rc, terms);
    let a2 = rc.a2();
    let nu = rc.sqrt_a1();

    let mut truncation_index = None;
    let mut running_max = 0.0f64;
    for m in 0..terms {
        running_max = running_max.max(coeffs[m].abs());
        let eigen_gap = rc.a4 / a2 - 2.0 - 2.0 * nu - 2.0 * m as f64;
        let scale = (rc.a4 / a2).abs().max(1.0);
        if eigen_gap.abs() <= TRUNCATION_TOL * scale
            && coeffs[m + 1].abs() <= TRUNCATION_TOL * running_max
        {
            truncation_index = Some(m);
            break;
        }
    }
    let tail_norm = truncation_index
        .map(|n| coeffs[n + 1..].iter().fold(0.0f64, |acc, c| acc.max(c.abs())));

    Ok(SeriesSolution {
        coeffs,
        a1: rc.a1,
        a2,
        a3: rc.a3,
        a4: rc.a4,
        truncation_index,
        tail_norm,
    })
}

fn recurrence(rc: &RadialCoefficients, terms: usize) -> Vec<f64> {
    let a2 = rc.a2();
    let nu = rc.sqrt_a1();
    let q = 2.0 * rc.a3 / a2.sqrt();
    let ratio = rc.a4 / a2;
    let mut c = Vec::with_capacity(terms + 1);
    c.push(1.0);
    c.push(q / (2.0 * nu + 1.0));
    for m in 0..terms - 1 {
        let mf = m as f64;
        let denom = (mf + 2.0) * (mf + 2.0 + 2.0 * nu);
        let next = (q * c[m + 1] + (2.0 + 2.0 * mf + 2.0 * nu - ratio) * c[m]) / denom;
        c.push(next);
    }
    c
}

/// Both termination residuals for degree `n`: `C(n+1)` from the recurrence
/// and `a4/a2 - 2 - 2 sqrt(a1) - 2n`.
pub fn termination_residuals(rc: &RadialCoefficients, n: usize) -> Result<(f64, f64)> {
    rc.require_confining()?;
    let coeffs = recurrence(rc, (n + 1).max(2));
    let second = rc.a4 / rc.a2() - 2.0 - 2.0 * rc.sqrt_a1() - 2.0 * n as f64;
    Ok((coeffs[n + 1], second))
}

/// `s(r) = exp(-a2 r^2/2) r^sqrt(a1) H(sqrt(a2) r)` with `C0 = 1`.
///
/// A truncated series is evaluated as its polynomial part. Otherwise the last
/// retained term must be negligible, else `SeriesNotConverged` is returned.
pub fn radial_wavefunction(rc: &RadialCoefficients, terms: usize, r: f64) -> Result<f64> {
    let series = series_coefficients(rc, terms)?;
    wavefunction_from_series(&series, r)
}

pub fn wavefunction_from_series(series: &SeriesSolution, r: f64) -> Result<f64> {
    if r < 0.0 || r.is_nan() {
        return Err(Error::NegativeRadius(r));
    }
    let nu = series.a1.max(0.0).sqrt();
    let rho = series.a2.sqrt() * r;
    let (h, _, _) = series.evaluate(rho);
    if series.truncation_index.is_none() {
        let c = &series.coeffs;
        let last = c.len() - 1;
        let last_term = (c[last] * rho.powi(last as i32)).abs();
        if !(last_term <= CONVERGENCE_TOL * h.abs().max(1.0)) {
            return Err(Error::SeriesNotConverged { radius: r, last_term });
        }
    }
    let power = if nu == 0.0 { 1.0 } else { r.powf(nu) };
    Ok((-0.5 * series.a2 * r * r).exp() * power * h)
}

/// Tabulate `s(r)` on `points` uniformly spaced radii in `[0, r_max]`,
/// optionally rescaled to unit norm in `L^2(r dr)` (trapezoidal rule).
pub fn tabulate_wavefunction(
    rc: &RadialCoefficients,
    r_max: f64,
    points: usize,
    normalize: bool,
) -> Result<Vec<(f64, f64)>> {
    if !(r_max > 0.0) || points < 2 {
        return Err(Error::InvalidGrid(format!("r_max = {r_max}, points = {points}")));
    }
    let series = series_coefficients(rc, DEFAULT_TERMS)?;
    let step = r_max / (points - 1) as f64;
    let mut table = (0..points)
        .map(|i| {
            let r = step * i as f64;
            wavefunction_from_series(&series, r).map(|s| (r, s))
        })
        .collect::<Result<Vec<_>>>()?;
    if normalize {
        let norm_sq: f64 = table
            .windows(2)
            .map(|w| 0.5 * step * (w[0].0 * w[0].1 * w[0].1 + w[1].0 * w[1].1 * w[1].1))
            .sum();
        if norm_sq > 0.0 {
            let scale = norm_sq.sqrt().recip();
            table.iter_mut().for_each(|(_, s)| *s *= scale);
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rc(a1: f64, a2: f64, a3: f64, a4: f64) -> RadialCoefficients {
        RadialCoefficients::from_parts(a1, a2 * a2, a3, a4)
    }

    #[test]
    fn ground_state_terminates_immediately() {
        let s = series_coefficients(&rc(1.0, 1.0, 0.0, 4.0), 6).unwrap();
        assert_eq!(s.coeffs.len(), 7);
        assert_eq!(s.coeffs[0], 1.0);
        assert!(s.coeffs[1..].iter().all(|&c| c == 0.0));
        assert_eq!(s.truncation_index, Some(0));
        assert_eq!(s.tail_norm, Some(0.0));
    }

    #[test]
    fn first_coefficient() {
        let s = series_coefficients(&rc(0.25, 4.0, 1.0, 3.0), 4).unwrap();
        assert!((s.coeffs[1] - 0.5).abs() < 1e-15);
        let s = series_coefficients(&rc(2.3, 1.7, 0.0, 9.1), 4).unwrap();
        assert_eq!(s.coeffs[1], 0.0);
    }

    #[test]
    fn rejects_short_or_degenerate() {
        assert!(matches!(
            series_coefficients(&rc(1.0, 1.0, 0.0, 4.0), 1),
            Err(Error::TooFewTerms { .. })
        ));
        assert!(matches!(
            series_coefficients(&rc(1.0, 0.0, 0.0, 4.0), 10),
            Err(Error::Degenerate { .. })
        ));
    }

    #[test]
    fn termination_residual_examples() {
        assert_eq!(termination_residuals(&rc(1.0, 1.0, 0.0, 4.0), 0).unwrap(), (0.0, 0.0));
        assert_eq!(termination_residuals(&rc(1.0, 1.0, 0.0, 5.0), 0).unwrap(), (0.0, 1.0));
        // a3 = 0 and n even: the odd coefficient C(n+1) vanishes identically
        for n in [0usize, 2, 4, 6] {
            let nu = 0.7f64;
            let a2 = 1.3;
            let a4 = a2 * (2.0 * n as f64 + 2.0 + 2.0 * nu);
            let (c_next, gap) = termination_residuals(&rc(nu * nu, a2, 0.0, a4), n).unwrap();
            assert_eq!(c_next, 0.0);
            assert!(gap.abs() < 1e-13);
        }
    }

    #[test]
    fn gaussian_ground_state() {
        let coeffs = rc(0.0, 1.0, 0.0, 2.0);
        assert_eq!(radial_wavefunction(&coeffs, DEFAULT_TERMS, 0.0).unwrap(), 1.0);
        for r in [0.1, 0.5, 1.0, 2.0, 3.7, 8.0] {
            let s = radial_wavefunction(&coeffs, DEFAULT_TERMS, r).unwrap();
            assert!((s - (-0.5 * r * r).exp()).abs() < 1e-15);
        }
    }

    #[test]
    fn origin_value_with_centrifugal_barrier() {
        assert_eq!(radial_wavefunction(&rc(1.0, 1.0, 0.0, 4.0), DEFAULT_TERMS, 0.0).unwrap(), 0.0);
        assert!(radial_wavefunction(&rc(1.0, 1.0, 0.0, 4.0), DEFAULT_TERMS, -1.0).is_err());
    }

    #[test]
    fn non_terminating_series_flags_large_radius() {
        // a3 = 0 with an odd-degree condition: the even chain never terminates.
        let coeffs = rc(0.0, 1.0, 0.0, 4.0);
        let series = series_coefficients(&coeffs, DEFAULT_TERMS).unwrap();
        assert_eq!(series.truncation_index, None);
        assert!(wavefunction_from_series(&series, 1.0).is_ok());
        assert!(matches!(
            wavefunction_from_series(&series, 40.0),
            Err(Error::SeriesNotConverged { .. })
        ));
    }

    /// Recurrence checked against the ODE on a non-terminating series; the
    /// truncation error at rho <= 3 is far below the tolerance.
    #[test]
    fn series_satisfies_heun_equation() {
        let series = series_coefficients(&rc(0.8, 1.4, 0.6, 5.3), DEFAULT_TERMS).unwrap();
        for i in 1..=50 {
            let rho = 3.0 * i as f64 / 50.0;
            let (h, _, _) = series.evaluate(rho);
            assert!(series.ode_residual(rho).abs() <= 1e-8 * h.abs().max(1.0));
        }
    }

    /// Degree-one polynomial with a Coulomb term: `q^2 = 2 (2 nu + 1)` makes
    /// `C2` vanish, so both termination conditions hold at `n = 1`.
    #[test]
    fn coulomb_polynomial_of_degree_one() {
        let (nu, a2) = (0.6f64, 1.5f64);
        let q = -(2.0 * (2.0 * nu + 1.0)).sqrt();
        let a3 = q * a2.sqrt() / 2.0;
        let a4 = a2 * (2.0 + 2.0 * nu + 2.0);
        let coeffs = rc(nu * nu, a2, a3, a4);
        let (c_next, gap) = termination_residuals(&coeffs, 1).unwrap();
        assert!(c_next.abs() < 1e-15 && gap.abs() < 1e-14);
        let series = series_coefficients(&coeffs, 40).unwrap();
        assert_eq!(series.truncation_index, Some(1));
        assert!(series.tail_norm.unwrap() < 1e-14);
        // attractive a3 < 0 puts the single zero of 1 + C1 rho on the positive axis
        assert_eq!(series.positive_nodes(10.0, 4000), 1);
        for i in 1..=50 {
            assert!(series.ode_residual(0.06 * i as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn normalized_table_has_unit_norm() {
        let table = tabulate_wavefunction(&rc(1.0, 1.0, 0.0, 4.0), 10.0, 2001, true).unwrap();
        let step = table[1].0;
        let norm: f64 = table.windows(2).map(|w| 0.5 * step * (w[0].0 * w[0].1.powi(2) + w[1].0 * w[1].1.powi(2))).sum();
        assert!((norm - 1.0).abs() < 1e-12);
        assert!(tabulate_wavefunction(&rc(1.0, 1.0, 0.0, 4.0), 10.0, 1, true).is_err());
    }

    proptest! {
        /// Exactly solvable sector: a3 = 0 and an even degree. Polynomial in
        /// rho^2 of degree n/2 (a Laguerre polynomial), so n/2 positive zeros.
        #[test]
        fn even_degree_polynomials(nu in 0.0f64..4.0, a2 in 0.2f64..5.0, half in 0usize..5) {
            let n = 2 * half;
            let a4 = a2 * (2.0 * n as f64 + 2.0 + 2.0 * nu);
            let series = series_coefficients(&rc(nu * nu, a2, 0.0, a4), DEFAULT_TERMS).unwrap();
            prop_assert_eq!(series.truncation_index, Some(n));
            prop_assert!(series.tail_norm.unwrap() <= 1e-12);
            for i in 1..=50 {
                let rho = 3.0 * i as f64 / 51.0;
                let (h, _, _) = series.evaluate(rho);
                prop_assert!(series.ode_residual(rho).abs() <= 1e-8 * h.abs().max(1.0));
            }
            prop_assert_eq!(series.positive_nodes(2.0 * (n as f64 + nu + 2.0).sqrt() + 4.0, 20_000), half);
        }

        #[test]
        fn terminated_wavefunction_decays(nu in 0.0f64..3.0, a2 in 0.3f64..4.0, half in 0usize..4) {
            let n = 2 * half;
            let coeffs = rc(nu * nu, a2, 0.0, a2 * (2.0 * n as f64 + 2.0 + 2.0 * nu));
            let r_star = (80.0 / a2).sqrt();
            let peak = (0..=400)
                .map(|i| radial_wavefunction(&coeffs, DEFAULT_TERMS, r_star * i as f64 / 400.0).unwrap().abs())
                .fold(0.0f64, f64::max);
            for i in 0..20 {
                let r = r_star * (1.0 + 0.1 * i as f64);
                let s = radial_wavefunction(&coeffs, DEFAULT_TERMS, r).unwrap();
                prop_assert!(s.abs() <= 1e-10 * peak, "r = {}, s = {}, peak = {}", r, s, peak);
            }
        }
    }
}
