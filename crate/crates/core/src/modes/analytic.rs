//! Closed-form resonances of empty metallic cavities, used as references
//! for the numerical solver.

use std::f64::consts::PI;

use crate::constants::C;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeFamily {
    Te,
    Tm,
}

/// Zeros of `J_m`, m = 0..=5, n = 1..=5.
const J_ZEROS: [[f64; 5]; 6] = [
    [2.404825557696, 5.520078110286, 8.653727912911, 11.791534439014, 14.930917708488],
    [3.831705970208, 7.015586669816, 10.173468135063, 13.323691936314, 16.470630050878],
    [5.135622301841, 8.417244140400, 11.619841172149, 14.795951782351, 17.959819494988],
    [6.380161895924, 9.761023129982, 13.015200721698, 16.223466160319, 19.409415226435],
    [7.588342434504, 11.064709488501, 14.372536671618, 17.615966049805, 20.826932956962],
    [8.771483815960, 12.338604197467, 15.700174079712, 18.980133875180, 22.217799896561],
];

/// Zeros of `J_m'`, m = 0..=5, n = 1..=5 (the trivial zero of `J_0'` excluded).
const JP_ZEROS: [[f64; 5]; 6] = [
    [3.831705970208, 7.015586669816, 10.173468135063, 13.323691936314, 16.470630050878],
    [1.841183781341, 5.331442773525, 8.536316366346, 11.706004902592, 14.863588633909],
    [3.054236928227, 6.706133194158, 9.969467823088, 13.170370856016, 16.347522318322],
    [4.201188941211, 8.015236598376, 11.345924310743, 14.585848286167, 17.788747866066],
    [5.317553126084, 9.282396285242, 12.681908442639, 15.964107037732, 19.196028800049],
    [6.415616375700, 10.519860873772, 13.987188630140, 17.312842487885, 20.575514521387],
];

/// n-th root of `J_m` (TM) or `J_m'` (TE).
pub fn bessel_root(family: ModeFamily, m: usize, n: usize) -> Result<f64> {
    if m > 5 || n == 0 || n > 5 {
        return Err(Error::domain(format!(
            "Bessel root table covers m <= 5, 1 <= n <= 5; got m={m}, n={n}"
        )));
    }
    Ok(match family {
        ModeFamily::Te => JP_ZEROS[m][n - 1],
        ModeFamily::Tm => J_ZEROS[m][n - 1],
    })
}

/// Resonance of mode (m, n, p) in an `a x b x d` rectangular box,
/// `f = (c/2) sqrt((m/a)^2 + (n/b)^2 + (p/d)^2)`.
pub fn analytic_rectangular_mode(a: f64, b: f64, d: f64, m: u32, n: u32, p: u32) -> Result<f64> {
    if !(a > 0.0 && b > 0.0 && d > 0.0) {
        return Err(Error::domain("box dimensions must be positive"));
    }
    if (m == 0 && n == 0) || p == 0 {
        return Err(Error::domain(format!("TE{m}{n}{p} is not a valid TE index triple")));
    }
    let s = (m as f64 / a).powi(2) + (n as f64 / b).powi(2) + (p as f64 / d).powi(2);
    Ok(0.5 * C * s.sqrt())
}

/// Resonance of a TE_mnp or TM_mnp mode in a closed circular cylinder.
pub fn analytic_cylindrical_mode(
    radius: f64,
    height: f64,
    family: ModeFamily,
    m: usize,
    n: usize,
    p: usize,
) -> Result<f64> {
    if !(radius > 0.0 && height > 0.0) {
        return Err(Error::domain("cylinder dimensions must be positive"));
    }
    if family == ModeFamily::Te && p == 0 {
        return Err(Error::domain("TE modes need p >= 1"));
    }
    let chi = bessel_root(family, m, n)?;
    let kz = p as f64 * PI / height;
    Ok(C / (2.0 * PI) * ((chi / radius).powi(2) + kz * kz).sqrt())
}
