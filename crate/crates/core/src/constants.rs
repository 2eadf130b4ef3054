//! Physical constants (CODATA 2018, SI units).

use std::f64::consts::PI;

/// The set of constants used throughout the crate.
///
/// `hbar` is derived from `h`, never stored independently.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Vacuum permeability (H/m).
    pub mu0: f64,
    /// Vacuum permittivity (F/m).
    pub eps0: f64,
    /// Reduced Planck constant (J s).
    pub hbar: f64,
    /// Planck constant (J s).
    pub h: f64,
    /// Bohr magneton (J/T).
    pub mu_b: f64,
    /// Speed of light (m/s).
    pub c: f64,
}

pub const H: f64 = 6.626_070_15e-34;
pub const HBAR: f64 = H / (2.0 * PI);
pub const MU0: f64 = 1.256_637_062_12e-6;
pub const EPS0: f64 = 8.854_187_812_8e-12;
pub const MU_B: f64 = 9.274_010_078_3e-24;
pub const C: f64 = 299_792_458.0;

/// Wave impedance of free space (ohm).
pub const ETA0: f64 = MU0 * C;

pub const CODATA2018: PhysicalConstants = PhysicalConstants {
    mu0: MU0,
    eps0: EPS0,
    hbar: HBAR,
    h: H,
    mu_b: MU_B,
    c: C,
};

impl Default for PhysicalConstants {
    fn default() -> Self {
        CODATA2018
    }
}
