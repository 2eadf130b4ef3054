//! NV axis angles for a few field directions, and a search for a direction
//! that puts two NV classes at 45 degrees.

use nvcavity::spin::{nv_orientation_angles, nv_transition_frequencies, SpinEnsemble};

fn unit(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    v.map(|x| x / n)
}

fn main() -> nvcavity::Result<()> {
    for (name, dir) in [("[001]", [0.0, 0.0, 1.0]), ("[111]", [1.0, 1.0, 1.0]), ("[110]", [1.0, 1.0, 0.0])] {
        let a = nv_orientation_angles(unit(dir))?;
        println!("B || {name}: {:.2?} deg", a);
    }

    // Folded angles only depend on the line through each axis, so the
    // pair to equalise can be (111) and the reverse of (1-1-1).
    let mut best = ([0.0; 3], f64::INFINITY);
    let n = 720;
    for i in 0..=n / 2 {
        let theta = std::f64::consts::PI * i as f64 / (n / 2) as f64;
        for k in 0..n {
            let phi = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            let b = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
            let a = nv_orientation_angles(b)?;
            let cost = (a[0] - 45.0).abs() + (a[1] - 45.0).abs();
            if cost < best.1 {
                best = (b, cost);
            }
        }
    }
    let b = best.0;
    let a = nv_orientation_angles(b)?;
    println!("\nbest grid direction [{:.4}, {:.4}, {:.4}]: angles {:.2?}", b[0], b[1], b[2], a);

    let ens = SpinEnsemble::from_fwhm_hz(1e24, 6e6, 1e-8)?;
    println!("transitions at 10 mT:");
    for (k, angle) in a.iter().enumerate() {
        let (lo, hi) = nv_transition_frequencies(&ens, 10e-3, *angle)?;
        println!("  axis {k}: {:6.2} deg  {:.4} / {:.4} GHz", angle, lo / 1e9, hi / 1e9);
    }
    Ok(())
}
