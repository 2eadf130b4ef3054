//! DC-field sweep through the spin resonance with the Nb hybrid design
//! numbers; writes dispersion.csv, spectra.csv and manifest.txt.
//!
//! Usage: cargo run --example avoided_crossing [OUT_DIR]

use nvcavity::report::{cmd_sweep, resonance_field, CouplingInputs, SweepRequest};
use nvcavity::spectra::extract_peaks;
use nvcavity::spin::{Pathway, SpinEnsemble};
use nvcavity::table::default_calibration;

fn main() -> nvcavity::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "avoided_crossing_out".into());
    let inputs = CouplingInputs {
        source: "hybrid-Nb design numbers".into(),
        p_m: 0.469,
        p_e: Some(0.049),
        q0: 1000.0,
        frequency: 2.87e9,
        ensemble: SpinEnsemble::from_fwhm_hz(1.2e24, 6e6, 1.35e-8)?,
        pathway: Pathway::ExactSi,
        calibration: default_calibration(),
        alpha: 1.0,
    };
    let b_r = resonance_field(&inputs.ensemble, inputs.frequency);
    let span = 2e-3;
    let mut req = SweepRequest::new(b_r - span, b_r + span, 81);
    req.b_r = Some(b_r);
    let sweep = cmd_sweep(&inputs, req)?;
    for path in sweep.write(out.as_ref(), &inputs)? {
        println!("wrote {}", path.display());
    }

    let p = &sweep.params;
    println!("g_c = {:.3e} rad/s, kappa = {:.3e}, gamma = {:.3e}", p.g_c, p.kappa, p.gamma);
    let mid = sweep.spectra.len() / 2;
    let peaks = extract_peaks(&sweep.spectra[mid])?;
    if let [lo, .., hi] = peaks.as_slice() {
        println!(
            "at B_r = {:.4} mT the dips are {:.3e} rad/s apart (2 g_c = {:.3e})",
            b_r * 1e3,
            hi.frequency - lo.frequency,
            2.0 * p.g_c
        );
    }
    Ok(())
}
