//! NV spin ensembles and their coupling to a cavity mode.

use std::f64::consts::PI;
use std::fmt;

use crate::constants::{H, HBAR, MU0, MU_B};
use crate::error::{Error, Result};

pub const NV_G_FACTOR: f64 = 2.0028;
/// Zero-field splitting `D/h` of the NV ground state, Hz.
pub const NV_D_OVER_H: f64 = 2.877e9;

#[derive(Debug, Clone, PartialEq)]
pub struct SpinEnsemble {
    /// Spin number density, m^-3.
    pub rho: f64,
    /// Angular half-width, rad/s.
    pub gamma_s: f64,
    pub g_factor: f64,
    pub d_over_h: f64,
    /// m^3.
    pub sample_volume: f64,
    pub t2_star: Option<f64>,
}

impl SpinEnsemble {
    pub fn new(rho: f64, gamma_s: f64, sample_volume: f64) -> Result<Self> {
        let e = SpinEnsemble {
            rho,
            gamma_s,
            g_factor: NV_G_FACTOR,
            d_over_h: NV_D_OVER_H,
            sample_volume,
            t2_star: None,
        };
        e.validate()?;
        Ok(e)
    }

    /// Linewidth given as a full width at half maximum in Hz.
    pub fn from_fwhm_hz(rho: f64, fwhm_hz: f64, sample_volume: f64) -> Result<Self> {
        SpinEnsemble::new(rho, 2.0 * PI * fwhm_hz / 2.0, sample_volume)
    }

    /// Linewidth set by a dephasing time, `gamma_s = 2 / t2_star`.
    pub fn from_t2_star(rho: f64, t2_star: f64, sample_volume: f64) -> Result<Self> {
        if !(t2_star > 0.0) {
            return Err(Error::domain(format!("t2_star must be > 0, got {t2_star}")));
        }
        let mut e = SpinEnsemble::new(rho, 2.0 / t2_star, sample_volume)?;
        e.t2_star = Some(t2_star);
        Ok(e)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rho > 0.0 && self.rho.is_finite()) {
            return Err(Error::domain(format!("rho must be > 0, got {}", self.rho)));
        }
        if !(self.gamma_s > 0.0 && self.gamma_s.is_finite()) {
            return Err(Error::domain(format!("gamma_s must be > 0, got {}", self.gamma_s)));
        }
        if !(self.g_factor > 0.0) || !(self.d_over_h > 0.0) {
            return Err(Error::domain("g_factor and d_over_h must be > 0"));
        }
        if !(self.sample_volume >= 0.0) {
            return Err(Error::domain(format!(
                "sample_volume must be >= 0, got {}",
                self.sample_volume
            )));
        }
        if let Some(t2) = self.t2_star {
            if ((self.gamma_s * t2 - 2.0) / 2.0).abs() > 1e-12 {
                return Err(Error::domain("gamma_s must equal 2 / t2_star"));
            }
        }
        Ok(())
    }

    /// Electron magnetic moment `g mu_B`, J/T.
    pub fn m0(&self) -> f64 {
        self.g_factor * MU_B
    }
}

/// Collective coupling `(m0/2) sqrt(rho mu0 omega_c p_m / hbar)` in rad/s.
pub fn collective_coupling(ensemble: &SpinEnsemble, p_m: f64, omega_c: f64) -> Result<f64> {
    check_fraction(p_m)?;
    if !(omega_c > 0.0) {
        return Err(Error::domain(format!("omega_c must be > 0, got {omega_c}")));
    }
    Ok(0.5 * ensemble.m0() * (ensemble.rho * MU0 * omega_c * p_m / HBAR).sqrt())
}

/// Table-calibrated coupling `k_g sqrt(p_m)`; units follow `k_g`.
pub fn calibrated_coupling(p_m: f64, k_g: f64) -> Result<f64> {
    check_fraction(p_m)?;
    if !(k_g > 0.0) {
        return Err(Error::domain(format!("k_g must be > 0, got {k_g}")));
    }
    Ok(k_g * p_m.sqrt())
}

pub fn spin_count(ensemble: &SpinEnsemble) -> f64 {
    ensemble.rho * ensemble.sample_volume
}

pub fn single_spin_coupling(g_c: f64, n: f64) -> Result<f64> {
    if !(n >= 1.0) {
        return Err(Error::domain(format!("spin count must be >= 1, got {n}")));
    }
    Ok(g_c / n.sqrt())
}

/// `C = g_c^2 / (2 kappa_c gamma_s)`, all rates in the same angular units.
pub fn cooperativity(g_c: f64, kappa_c: f64, gamma_s: f64) -> Result<f64> {
    if !(kappa_c > 0.0) || !(gamma_s > 0.0) {
        return Err(Error::domain(format!(
            "kappa_c and gamma_s must be > 0 (got {kappa_c}, {gamma_s})"
        )));
    }
    Ok(g_c * g_c / (2.0 * kappa_c * gamma_s))
}

/// Table-calibrated cooperativity `k_c g_c^2 q0`.
pub fn calibrated_cooperativity(g_c: f64, q0: f64, k_c: f64) -> Result<f64> {
    if !(k_c > 0.0) || !(q0 > 0.0) {
        return Err(Error::domain(format!("k_c and q0 must be > 0 (got {k_c}, {q0})")));
    }
    Ok(k_c * g_c * g_c * q0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Weak,
    HighCooperativity,
    Strong,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::Weak => "weak",
            Regime::HighCooperativity => "high-cooperativity",
            Regime::Strong => "strong",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Strict comparisons; ties fall to the weaker class.
pub fn regime_classify(g_c: f64, kappa_c: f64, gamma_s: f64) -> Result<Regime> {
    if g_c > gamma_s && g_c > kappa_c {
        return Ok(Regime::Strong);
    }
    if cooperativity(g_c, kappa_c, gamma_s)? > 1.0 {
        Ok(Regime::HighCooperativity)
    } else {
        Ok(Regime::Weak)
    }
}

/// The four NV axes in the crystal frame, unnormalized.
pub const NV_AXES: [[f64; 3]; 4] = [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]];

/// Angles in degrees between a unit field direction and each NV axis,
/// folded into `[0, 90]`. An axis and its reverse are the same NV class, so
/// only the line through the axis matters.
pub fn nv_orientation_angles(b: [f64; 3]) -> Result<[f64; 4]> {
    let norm = (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt();
    if !((norm - 1.0).abs() <= 1e-9) {
        return Err(Error::domain(format!("field direction must be a unit vector, |b| = {norm}")));
    }
    let s = 3f64.sqrt();
    Ok(NV_AXES.map(|a| {
        let c = (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]) / s;
        c.abs().min(1.0).acos().to_degrees()
    }))
}

/// First-order Zeeman transitions `(f_minus, f_plus)` in Hz for a field of
/// `b_tesla` at `angle_deg` to the NV axis.
pub fn nv_transition_frequencies(ensemble: &SpinEnsemble, b_tesla: f64, angle_deg: f64) -> Result<(f64, f64)> {
    if !(b_tesla >= 0.0) {
        return Err(Error::domain(format!("field magnitude must be >= 0, got {b_tesla}")));
    }
    let shift = ensemble.m0() / H * b_tesla * angle_deg.to_radians().cos();
    Ok((ensemble.d_over_h - shift, ensemble.d_over_h + shift))
}

fn check_fraction(p_m: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p_m) {
        Ok(())
    } else {
        Err(Error::domain(format!("p_m must lie in [0, 1], got {p_m}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pathway {
    ExactSi,
    Calibrated,
}

impl Pathway {
    pub fn label(self) -> &'static str {
        match self {
            Pathway::ExactSi => "exact-si",
            Pathway::Calibrated => "calibrated",
        }
    }
}

/// Constants of the table-calibrated pathway: `g_c[MHz] = k_g sqrt(p_m)`,
/// `C = k_c g_c[MHz]^2 q0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Calibration {
    pub k_g: f64,
    pub k_c: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CouplingReport {
    pub pathway: Pathway,
    /// rad/s
    pub g_c: f64,
    /// rad/s
    pub g_s: Option<f64>,
    pub n_spins: f64,
    pub cooperativity: f64,
    pub regime: Regime,
    pub p_m: f64,
    pub q0: f64,
    pub frequency: f64,
    pub kappa_c: f64,
    pub gamma_s: f64,
}

impl CouplingReport {
    /// Exact-SI pathway for a mode at `frequency` with damping `kappa_c`.
    pub fn exact_si(ensemble: &SpinEnsemble, p_m: f64, frequency: f64, q0: f64) -> Result<Self> {
        ensemble.validate()?;
        let omega = 2.0 * PI * frequency;
        let kappa_c = crate::observables::cavity_damping_rate(frequency, q0)?;
        let g_c = collective_coupling(ensemble, p_m, omega)?;
        CouplingReport::assemble(Pathway::ExactSi, ensemble, g_c, p_m, q0, frequency, kappa_c)
    }

    /// Calibrated pathway. `g_c` follows `k_g sqrt(p_m)` in MHz and is
    /// stored as `2 pi g_c[MHz] 1e6` rad/s; `C` follows `k_c g_c^2 q0`.
    pub fn calibrated(ensemble: &SpinEnsemble, p_m: f64, frequency: f64, q0: f64, cal: Calibration) -> Result<Self> {
        ensemble.validate()?;
        let kappa_c = crate::observables::cavity_damping_rate(frequency, q0)?;
        let g_mhz = calibrated_coupling(p_m, cal.k_g)?;
        let mut r = CouplingReport::assemble(
            Pathway::Calibrated,
            ensemble,
            2.0 * PI * g_mhz * 1e6,
            p_m,
            q0,
            frequency,
            kappa_c,
        )?;
        r.cooperativity = calibrated_cooperativity(g_mhz, q0, cal.k_c)?;
        if r.regime != Regime::Strong {
            r.regime = if r.cooperativity > 1.0 {
                Regime::HighCooperativity
            } else {
                Regime::Weak
            };
        }
        Ok(r)
    }

    fn assemble(
        pathway: Pathway,
        ensemble: &SpinEnsemble,
        g_c: f64,
        p_m: f64,
        q0: f64,
        frequency: f64,
        kappa_c: f64,
    ) -> Result<Self> {
        let n_spins = spin_count(ensemble);
        let g_s = if n_spins >= 1.0 {
            Some(single_spin_coupling(g_c, n_spins)?)
        } else {
            None
        };
        Ok(CouplingReport {
            pathway,
            g_c,
            g_s,
            n_spins,
            cooperativity: cooperativity(g_c, kappa_c, ensemble.gamma_s)?,
            regime: regime_classify(g_c, kappa_c, ensemble.gamma_s)?,
            p_m,
            q0,
            frequency,
            kappa_c,
            gamma_s: ensemble.gamma_s,
        })
    }

    pub fn g_c_mhz(&self) -> f64 {
        self.g_c / (2.0 * PI) / 1e6
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ensemble(rho: f64) -> SpinEnsemble {
        SpinEnsemble::from_fwhm_hz(rho, 6e6, 1.35e-8).unwrap()
    }

    #[test]
    fn linewidth_conventions() {
        let e = ensemble(1e20);
        assert!((e.gamma_s - 2.0 * PI * 3e6).abs() < 1e-6);
        let t = SpinEnsemble::from_t2_star(1e20, 1e-7, 1e-9).unwrap();
        assert!((t.gamma_s - 2e7).abs() < 1e-6);
        assert!(SpinEnsemble::new(0.0, 1.0, 1.0).is_err());
        assert!(SpinEnsemble::new(1.0, 0.0, 1.0).is_err());
        assert!((e.m0() - 2.0028 * MU_B).abs() < 1e-40);
    }

    #[test]
    fn coupling_scaling() {
        let e = ensemble(1.2e18);
        let w = 2.0 * PI * 2.87e9;
        assert_eq!(collective_coupling(&e, 0.0, w).unwrap(), 0.0);
        let g1 = collective_coupling(&e, 0.084, w).unwrap();
        let g4 = collective_coupling(&ensemble(4.8e18), 0.084, w).unwrap();
        assert!((g4 / g1 - 2.0).abs() < 1e-12);
        assert!(collective_coupling(&e, 1.1, w).is_err());
        assert!(collective_coupling(&e, 0.5, 0.0).is_err());
    }

    #[test]
    fn exact_si_value() {
        // (m0/2) sqrt(rho mu0 omega p / hbar) evaluated by hand
        let e = ensemble(1.2e18);
        let g = collective_coupling(&e, 0.084, 2.0 * PI * 2.87e9).unwrap();
        assert!((g - 43_221.8).abs() < 0.5, "{g}");
    }

    #[test]
    fn calibrated_values() {
        assert_eq!(calibrated_coupling(0.0, 148.0).unwrap(), 0.0);
        let k_g = 43.0 / 0.084f64.sqrt();
        assert!((calibrated_coupling(0.100, k_g).unwrap() - 46.9).abs() < 0.05);
        assert!((calibrated_coupling(0.471, k_g).unwrap() - 101.8).abs() < 0.05);
        let k_c = 348.0 / (43.0 * 43.0 * 127_000.0);
        assert!((calibrated_cooperativity(68.0, 300_000.0, k_c).unwrap() - 2056.0).abs() < 1.0);
        assert!((calibrated_cooperativity(102.0, 500.0, k_c).unwrap() - 7.7).abs() < 0.05);
        assert_eq!(calibrated_cooperativity(0.0, 500.0, k_c).unwrap(), 0.0);
    }

    #[test]
    fn counting_and_single_spin() {
        let e = ensemble(1.2e18);
        assert!((spin_count(&e) - 1.62e10).abs() < 1e6);
        let mut z = e.clone();
        z.sample_volume = 0.0;
        assert_eq!(spin_count(&z), 0.0);
        assert_eq!(single_spin_coupling(5.0, 1.0).unwrap(), 5.0);
        assert_eq!(single_spin_coupling(5.0, 4.0).unwrap(), 2.5);
        assert!(single_spin_coupling(5.0, 0.0).is_err());
        let gs = single_spin_coupling(2.0 * PI * 43e6, 1.62e10).unwrap();
        assert!((gs / (2.0 * PI) - 337.8).abs() < 0.1);
    }

    #[test]
    fn cooperativity_values() {
        assert_eq!(cooperativity(0.0, 1.0, 1.0).unwrap(), 0.0);
        assert_eq!(cooperativity(3.0, 3.0, 3.0).unwrap(), 0.5);
        let c = cooperativity(2.0, 0.3, 0.7).unwrap();
        assert!((cooperativity(2e6, 0.3e6, 0.7e6).unwrap() - c).abs() < 1e-12);
        assert!(cooperativity(1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn regimes() {
        assert_eq!(regime_classify(100.0, 0.1, 1.0).unwrap(), Regime::Strong);
        assert_eq!(regime_classify(1.0, 1.0, 1.0).unwrap(), Regime::Weak);
        assert_eq!(regime_classify(1.0, 0.01, 2.0).unwrap(), Regime::HighCooperativity);
        let kappa = 2.0 * PI * 2.87e9 / 300_000.0;
        assert_eq!(
            regime_classify(2.0 * PI * 68e6, kappa, 2.0 * PI * 3e6).unwrap(),
            Regime::Strong
        );
    }

    #[test]
    fn orientation_angles() {
        let magic = (1.0 / 3f64.sqrt()).acos().to_degrees();
        for a in nv_orientation_angles([0.0, 0.0, 1.0]).unwrap() {
            assert!((a - magic).abs() < 1e-9);
        }
        let s = 1.0 / 3f64.sqrt();
        let a = nv_orientation_angles([s, s, s]).unwrap();
        assert!(a[0].abs() < 1e-6);
        for x in &a[1..] {
            assert!((x - 70.5288).abs() < 1e-3);
        }
        assert!(nv_orientation_angles([1.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn transitions() {
        let e = ensemble(1e20);
        assert_eq!(nv_transition_frequencies(&e, 0.0, 0.0).unwrap(), (2.877e9, 2.877e9));
        let (lo, hi) = nv_transition_frequencies(&e, 1e-3, 0.0).unwrap();
        assert!(((hi - 2.877e9) - 28.03e6).abs() < 0.01e6);
        assert!(((2.877e9 - lo) - 28.03e6).abs() < 0.01e6);
        let (lo, hi) = nv_transition_frequencies(&e, 1e-3, 90.0).unwrap();
        assert!((lo - 2.877e9).abs() < 1e-3 && (hi - 2.877e9).abs() < 1e-3);
        assert!(nv_transition_frequencies(&e, -1.0, 0.0).is_err());
    }
}
