//! Refines the mesh of an empty cylinder and compares the lowest TE0 mode
//! against the Bessel-root value.

use nvcavity::geometry::{CavityGeometry, GeometryVariant};
use nvcavity::materials::builtin_material;
use nvcavity::mesh::build_mesh;
use nvcavity::modes::{analytic_cylindrical_mode, solve_axisymmetric_te0, ModeFamily};

fn main() -> nvcavity::Result<()> {
    let (radius, height) = (0.07, 0.10);
    let exact = analytic_cylindrical_mode(radius, height, ModeFamily::Te, 0, 1, 1)?;
    println!("TE011 exact: {:.6} GHz", exact / 1e9);

    let geometry = CavityGeometry::new(GeometryVariant::Cylindrical { radius, height }, builtin_material("copper")?)?;
    let mut prev: Option<(f64, f64)> = None;
    println!("{:>8} {:>14} {:>12} {:>7} {:>9}", "h (mm)", "f (GHz)", "rel err", "order", "time (s)");
    for h in [4e-3, 2e-3, 1e-3] {
        let t = std::time::Instant::now();
        let mesh = build_mesh(&geometry, h)?;
        let modes = solve_axisymmetric_te0(&mesh, (2.8e9, 3.2e9), 1)?;
        let err = (modes[0].frequency - exact) / exact;
        let order = prev.map(|(ph, pe)| (pe / err).abs().ln() / (ph / h).ln());
        println!(
            "{:>8.1} {:>14.6} {:>12.3e} {:>7} {:>9.3}",
            h * 1e3,
            modes[0].frequency / 1e9,
            err,
            order.map_or("-".into(), |o| format!("{o:.2}")),
            t.elapsed().as_secs_f64()
        );
        prev = Some((h, err));
    }
    Ok(())
}
