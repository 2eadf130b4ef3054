//! Reflection spectra of a cavity coupled to a spin ensemble, dressed-mode
//! dispersion under a DC field sweep, and dip extraction.
//!
//! The spin resonance sits at `omega_c - delta`, so the spin term of the
//! reflection coefficient is `g^2 / (i(omega - omega_c + delta) - gamma)`.
//! At `omega = omega_c` it reduces to `g^2 / (i delta - gamma)`, and the
//! cavity pull it produces is `+g^2 delta / (delta^2 + gamma^2)`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::constants::HBAR;
use crate::error::{Error, Result};

pub const DEFAULT_GRID_POINTS: usize = 4001;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectroscopyParams {
    pub omega_c: f64,
    /// Total cavity damping, rad/s.
    pub kappa: f64,
    /// External coupling ratio, `kappa_e = alpha kappa`.
    pub alpha: f64,
    pub g_c: f64,
    /// Spin half-linewidth, rad/s.
    pub gamma: f64,
    /// Spin detuning, rad/s.
    pub delta: f64,
}

impl SpectroscopyParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.kappa > 0.0) || !(self.gamma > 0.0) {
            return Err(Error::domain(format!(
                "kappa and gamma must be > 0 (got {}, {})",
                self.kappa, self.gamma
            )));
        }
        if !(self.alpha >= 0.0) {
            return Err(Error::domain(format!("alpha must be >= 0, got {}", self.alpha)));
        }
        if !self.omega_c.is_finite() || !self.g_c.is_finite() || !self.delta.is_finite() {
            return Err(Error::domain("spectroscopy parameters must be finite"));
        }
        Ok(())
    }

    pub fn with_delta(&self, delta: f64) -> Self {
        SpectroscopyParams { delta, ..*self }
    }

    /// `|S11|^2` at probe frequency `omega`.
    pub fn s11_sq(&self, omega: f64) -> f64 {
        let i = Complex64::i();
        let spin = self.g_c * self.g_c / (i * (omega - self.omega_c + self.delta) - self.gamma);
        let den = i * (omega - self.omega_c) - self.kappa + spin;
        (1.0 + self.alpha * self.kappa / den).norm_sqr()
    }

    /// Uniform grid `omega_c +- 5 max(g_c, kappa, gamma)`.
    pub fn default_grid(&self) -> Vec<f64> {
        let half = 5.0 * self.g_c.abs().max(self.kappa).max(self.gamma);
        uniform_grid(self.omega_c - half, self.omega_c + half, DEFAULT_GRID_POINTS)
    }
}

pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.5 * (lo + hi)],
        _ => (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTrace {
    pub freq: Vec<f64>,
    pub s11_sq: Vec<f64>,
    pub params: SpectroscopyParams,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DispersionTrace {
    pub b_field: Vec<f64>,
    pub dressed_freq: Vec<f64>,
    pub delta: Vec<f64>,
}

pub fn reflection_spectrum(params: &SpectroscopyParams, freq_grid: &[f64]) -> Result<SpectrumTrace> {
    params.validate()?;
    if freq_grid.is_empty() {
        return Err(Error::domain("empty frequency grid"));
    }
    Ok(SpectrumTrace {
        freq: freq_grid.to_vec(),
        s11_sq: freq_grid.iter().map(|&w| params.s11_sq(w)).collect(),
        params: *params,
    })
}

/// `m0 (b - b_r) / hbar`, rad/s.
pub fn detuning_from_field(b: f64, b_r: f64, m0: f64) -> f64 {
    m0 * (b - b_r) / HBAR
}

/// Dressed cavity frequency `omega_c + g^2 delta / (delta^2 + gamma^2)`.
pub fn dressed_mode_frequency(omega_c: f64, g_c: f64, delta: f64, gamma: f64) -> Result<f64> {
    if !(gamma > 0.0) {
        return Err(Error::domain(format!("gamma must be > 0, got {gamma}")));
    }
    Ok(omega_c + g_c * g_c * delta / (delta * delta + gamma * gamma))
}

/// Dispersion and one spectrum per field value, in grid order.
pub fn field_sweep(
    params: &SpectroscopyParams,
    b_grid: &[f64],
    b_r: f64,
    m0: f64,
    freq_grid: &[f64],
) -> Result<(DispersionTrace, Vec<SpectrumTrace>)> {
    params.validate()?;
    if b_grid.is_empty() || freq_grid.is_empty() {
        return Err(Error::domain("field and frequency grids must be non-empty"));
    }
    let delta: Vec<f64> = b_grid.iter().map(|&b| detuning_from_field(b, b_r, m0)).collect();
    let dressed = delta
        .iter()
        .map(|&d| dressed_mode_frequency(params.omega_c, params.g_c, d, params.gamma))
        .collect::<Result<Vec<_>>>()?;
    let spectra = delta
        .par_iter()
        .map(|&d| reflection_spectrum(&params.with_delta(d), freq_grid))
        .collect::<Result<Vec<_>>>()?;
    Ok((
        DispersionTrace {
            b_field: b_grid.to_vec(),
            dressed_freq: dressed,
            delta,
        },
        spectra,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub frequency: f64,
    pub depth: f64,
    pub fwhm: f64,
}

/// Dips of `|S11|^2`, found by 3-point comparison, sorted by frequency.
///
/// Depth is `1 - min`. The width is measured at `(1 + min) / 2` by linear
/// interpolation, searching outward no further than the neighbouring
/// maxima; a side that never crosses the level stops at that maximum.
pub fn extract_peaks(trace: &SpectrumTrace) -> Result<Vec<Peak>> {
    let (x, y) = (&trace.freq, &trace.s11_sq);
    if x.len() < 3 || x.len() != y.len() {
        return Err(Error::domain("peak extraction needs >= 3 aligned points"));
    }
    let n = y.len();
    let mut peaks = Vec::new();
    let mut k = 1;
    while k < n - 1 {
        if !(y[k] < y[k - 1]) {
            k += 1;
            continue;
        }
        // allow a flat bottom
        let mut end = k;
        while end + 1 < n && y[end + 1] == y[k] {
            end += 1;
        }
        if end + 1 < n && y[end + 1] > y[k] {
            let centre = 0.5 * (x[k] + x[end]);
            let level = 0.5 * (1.0 + y[k]);
            let left = crossing(x, y, k, level, false);
            let right = crossing(x, y, end, level, true);
            peaks.push(Peak {
                frequency: centre,
                depth: 1.0 - y[k],
                fwhm: right - left,
            });
        }
        k = end + 1;
    }
    Ok(peaks)
}

fn crossing(x: &[f64], y: &[f64], from: usize, level: f64, forward: bool) -> f64 {
    let mut k = from;
    loop {
        let next = if forward {
            if k + 1 >= y.len() {
                return x[k];
            }
            k + 1
        } else {
            if k == 0 {
                return x[0];
            }
            k - 1
        };
        if y[next] >= level {
            let t = (level - y[k]) / (y[next] - y[k]);
            return x[k] + t * (x[next] - x[k]);
        }
        if y[next] < y[k] {
            // passed the neighbouring maximum without reaching the level
            return x[k];
        }
        k = next;
    }
}
