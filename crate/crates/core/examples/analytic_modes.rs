//! Closed-form resonances of empty rectangular and cylindrical cavities.

use nvcavity::modes::{analytic_cylindrical_mode, analytic_rectangular_mode, ModeFamily};

fn main() -> nvcavity::Result<()> {
    let (a, b, d) = (0.0739, 0.030, 0.0739);
    println!("rectangular {:.1} x {:.1} x {:.1} mm", a * 1e3, b * 1e3, d * 1e3);
    for (m, n, p) in [(1, 0, 1), (1, 0, 2), (2, 0, 1), (1, 1, 1)] {
        let f = analytic_rectangular_mode(a, b, d, m, n, p)?;
        println!("  TE{m}{n}{p}  {:.4} GHz", f / 1e9);
    }

    let (r, h) = (0.07, 0.10);
    println!("cylinder r = {:.0} mm, h = {:.0} mm", r * 1e3, h * 1e3);
    let modes = [
        ("TM010", ModeFamily::Tm, 0, 1, 0),
        ("TE111", ModeFamily::Te, 1, 1, 1),
        ("TE011", ModeFamily::Te, 0, 1, 1),
        ("TM011", ModeFamily::Tm, 0, 1, 1),
        ("TE012", ModeFamily::Te, 0, 1, 2),
    ];
    for (name, fam, m, n, p) in modes {
        let f = analytic_cylindrical_mode(r, h, fam, m, n, p)?;
        println!("  {name}  {:.4} GHz", f / 1e9);
    }
    Ok(())
}
