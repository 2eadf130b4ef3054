//! Reflection spectrum of a cavity at zero spin detuning, for weak and
//! strong coupling, with the dips located by `extract_peaks`.

use std::f64::consts::PI;

use nvcavity::spectra::{extract_peaks, reflection_spectrum, SpectroscopyParams};

fn main() -> nvcavity::Result<()> {
    let omega_c = 2.0 * PI * 2.87e9;
    let kappa = omega_c / 1000.0;
    let gamma = 2.0 * PI * 3e6;
    for g_over_kappa in [0.0, 0.3, 1.0, 5.0] {
        let p = SpectroscopyParams {
            omega_c,
            kappa,
            alpha: 1.0,
            g_c: g_over_kappa * kappa,
            gamma,
            delta: 0.0,
        };
        let trace = reflection_spectrum(&p, &p.default_grid())?;
        let peaks = extract_peaks(&trace)?;
        println!("g_c = {g_over_kappa} kappa: {} dip(s)", peaks.len());
        for pk in &peaks {
            println!(
                "  {:+9.3} MHz from omega_c   depth {:.3}   fwhm {:.3} MHz",
                (pk.frequency - omega_c) / (2.0 * PI) / 1e6,
                pk.depth,
                pk.fwhm / (2.0 * PI) / 1e6
            );
        }
    }
    Ok(())
}
