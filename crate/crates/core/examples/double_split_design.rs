//! Solves the bundled double-split resonator spec and scans the rutile disc
//! thickness around the shipped design.

use nvcavity::geometry::{CavityGeometry, GeometryVariant, Region};
use nvcavity::mesh::build_mesh;
use nvcavity::modes::solve_axisymmetric_te0;
use nvcavity::observables::{magnetic_filling_factor, QBudget};
use nvcavity::parse_spec;

const SPEC: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/specs/double_split.spec");

fn main() -> nvcavity::Result<()> {
    let spec = parse_spec(SPEC)?;
    let report = nvcavity::report::cmd_solve(&spec)?;
    print!("{}", report.to_text());

    // same stack with thicker or thinner rutile discs, centred on the diamond
    println!("\ndisc thickness scan");
    println!("{:>8} {:>10} {:>9}", "t (mm)", "f (GHz)", "p_m");
    let base = spec.geometry.regions().to_vec();
    let (radius, height) = match spec.geometry.variant {
        GeometryVariant::Axisymmetric { outer_radius, height, .. } => (outer_radius, height),
        _ => unreachable!("the bundled spec is axisymmetric"),
    };
    for t in [1.7e-3, 1.8e-3, 1.95e-3, 2.1e-3] {
        let regions = base
            .iter()
            .map(|r| {
                let (z0, z1) = if r.z_max <= 0.5 * height - 0.75e-3 + 1e-12 {
                    (0.5 * height - 0.75e-3 - t, r.z_max)
                } else if r.z_min >= 0.5 * height + 0.75e-3 - 1e-12 {
                    (r.z_min, 0.5 * height + 0.75e-3 + t)
                } else {
                    (r.z_min, r.z_max)
                };
                Region::new(&r.label, r.material.clone(), (r.r_min, r.r_max), (z0, z1))
            })
            .collect::<nvcavity::Result<Vec<_>>>()?;
        let g = CavityGeometry::new(
            GeometryVariant::Axisymmetric { outer_radius: radius, height, regions },
            spec.geometry.wall_material.clone(),
        )?;
        let modes = solve_axisymmetric_te0(&build_mesh(&g, 0.25e-3)?, (2.0e9, 4.0e9), 1)?;
        let Some(m) = modes.first() else { continue };
        let field = m.field.as_ref().expect("solver modes carry fields");
        let q = QBudget::for_mode(m, &g.wall_material)?;
        println!(
            "{:>8.2} {:>10.4} {:>9.4}   Q0 = {:.3e}",
            t * 1e3,
            m.frequency / 1e9,
            magnetic_filling_factor(field, "diamond")?,
            q.q0
        );
    }
    Ok(())
}
