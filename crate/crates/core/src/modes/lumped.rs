use std::f64::consts::PI;

use crate::constants::{EPS0, MU0};
use crate::error::{Error, Result};
use crate::geometry::{CavityGeometry, GeometryVariant};

use super::ModeResult;

/// Smallest `ln(cavity_radius / post_radius)` accepted before the coaxial
/// inductance collapses.
const MIN_LOG_RATIO: f64 = 1e-6;

/// Lumped L-C estimate for a reentrant cavity: the post gap is a
/// parallel-plate capacitor `C = eps0 pi r_post^2 / gap` (no fringing) and
/// the coaxial region an inductor `L = (mu0 h / 2 pi) ln(R / r_post)`.
pub fn reentrant_lumped(geometry: &CavityGeometry) -> Result<ModeResult> {
    let GeometryVariant::Reentrant {
        cavity_radius,
        cavity_height,
        post_radius,
        gap,
    } = geometry.variant
    else {
        return Err(Error::domain("reentrant_lumped needs a reentrant geometry"));
    };
    let positive = [cavity_radius, cavity_height, post_radius, gap]
        .iter()
        .all(|v| v.is_finite() && *v > 0.0);
    if !positive {
        return Err(Error::domain("reentrant dimensions must be positive"));
    }
    if gap >= cavity_height {
        return Err(Error::domain("gap must be smaller than cavity_height"));
    }
    if post_radius >= cavity_radius {
        return Err(Error::domain("post_radius must be smaller than cavity_radius"));
    }
    let log_ratio = (cavity_radius / post_radius).ln();
    if log_ratio < MIN_LOG_RATIO {
        return Err(Error::domain(
            "post_radius too close to cavity_radius: coaxial inductance vanishes",
        ));
    }
    let capacitance = EPS0 * PI * post_radius * post_radius / gap;
    let inductance = MU0 * cavity_height / (2.0 * PI) * log_ratio;
    let frequency = 1.0 / (2.0 * PI * (inductance * capacitance).sqrt());
    Ok(ModeResult::frequency_only("reentrant-fundamental", frequency))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::builtin_material;

    fn cavity(post_radius: f64, gap: f64) -> CavityGeometry {
        CavityGeometry {
            variant: GeometryVariant::Reentrant {
                cavity_radius: 10e-3,
                cavity_height: 5e-3,
                post_radius,
                gap,
            },
            wall_material: builtin_material("copper").unwrap(),
        }
    }

    #[test]
    fn reference_post_resonance() {
        let mode = reentrant_lumped(&cavity(2e-3, 50e-6)).unwrap();
        // L = 2e-7 * 5e-3 * ln 5, C = eps0 * pi * 4e-6 / 5e-5
        let l = 2e-7 * 5e-3 * 5f64.ln();
        let c = EPS0 * PI * 4e-6 / 5e-5;
        let expected = 1.0 / (2.0 * PI * (l * c).sqrt());
        assert!((mode.frequency - expected).abs() < 1.0);
        assert!((mode.frequency - 2.66e9).abs() < 5e6);
        assert!(mode.field.is_none() && mode.mode_volume.is_none());
        assert_eq!(mode.omega, 2.0 * PI * mode.frequency);
    }

    #[test]
    fn halving_gap_divides_by_root_two() {
        let f1 = reentrant_lumped(&cavity(2e-3, 50e-6)).unwrap().frequency;
        let f2 = reentrant_lumped(&cavity(2e-3, 25e-6)).unwrap().frequency;
        assert!((f1 / f2 - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn post_filling_cavity_is_a_domain_error() {
        assert!(reentrant_lumped(&cavity(10e-3 * (1.0 - 1e-9), 50e-6)).is_err());
        assert!(reentrant_lumped(&cavity(10e-3, 50e-6)).is_err());
    }
}
