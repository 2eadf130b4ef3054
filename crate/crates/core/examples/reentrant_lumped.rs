//! Lumped-element resonance of a reentrant cavity as the post gap closes.

use nvcavity::geometry::{CavityGeometry, GeometryVariant};
use nvcavity::materials::builtin_material;
use nvcavity::modes::reentrant_lumped;

fn main() -> nvcavity::Result<()> {
    let copper = builtin_material("copper")?;
    println!("radius 10 mm, height 5 mm, post radius 2 mm");
    println!("{:>10} {:>10}", "gap (um)", "f (GHz)");
    for gap_um in [200.0, 100.0, 50.0, 25.0, 12.5] {
        let g = CavityGeometry::new(
            GeometryVariant::Reentrant {
                cavity_radius: 10e-3,
                cavity_height: 5e-3,
                post_radius: 2e-3,
                gap: gap_um * 1e-6,
            },
            copper.clone(),
        )?;
        let m = reentrant_lumped(&g)?;
        println!("{:>10.1} {:>10.4}", gap_um, m.frequency / 1e9);
    }
    Ok(())
}
