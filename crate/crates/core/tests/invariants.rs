use std::sync::Arc;

use nvcavity::geometry::{CavityGeometry, GeometryVariant, Region};
use nvcavity::materials::{builtin_material, Material};
use nvcavity::mesh::{build_mesh, AxiMesh};
use nvcavity::modes::{analytic_cylindrical_mode, solve_axisymmetric_te0, FieldSolution, ModeFamily};
use nvcavity::observables::FillingFactors;
use nvcavity::specfile::{parse_spec_str, serialize_spec};
use proptest::prelude::*;

const DIELECTRICS: [&str; 4] = ["diamond", "sapphire", "fused-silica", "rutile"];

prop_compose! {
    fn loaded_cavity()(
        radius in 6e-3..14e-3f64,
        height in 6e-3..16e-3f64,
        disc_r in 0.2..0.8f64,
        disc_z in (0.1..0.45f64, 0.1..0.45f64),
        material in 0..DIELECTRICS.len(),
        second in proptest::option::of(0..DIELECTRICS.len()),
    ) -> CavityGeometry {
        let (lo, hi) = (disc_z.0 * height, height - disc_z.1 * height);
        let mut regions = vec![Region::new(
            "disc",
            builtin_material(DIELECTRICS[material]).unwrap(),
            (0.0, disc_r * radius),
            (lo, hi),
        ).unwrap()];
        if let Some(k) = second {
            regions.push(Region::new(
                "ring",
                builtin_material(DIELECTRICS[k]).unwrap(),
                (disc_r * radius, radius),
                (0.0, lo),
            ).unwrap());
        }
        CavityGeometry::new(
            GeometryVariant::Axisymmetric { outer_radius: radius, height, regions },
            builtin_material("copper").unwrap(),
        ).unwrap()
    }
}

fn empty_te011(g: &CavityGeometry) -> f64 {
    match g.variant {
        GeometryVariant::Axisymmetric { outer_radius, height, .. } => {
            analytic_cylindrical_mode(outer_radius, height, ModeFamily::Te, 0, 1, 1).unwrap()
        }
        _ => unreachable!(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn every_mode_is_equipartitioned(g in loaded_cavity()) {
        let f0 = empty_te011(&g);
        let mesh = build_mesh(&g, 0.5e-3).unwrap();
        // loading only lowers the lowest TE0 mode
        let modes = solve_axisymmetric_te0(&mesh, (0.05 * f0, 1.001 * f0), 3).unwrap();
        prop_assert!(!modes.is_empty());
        for m in &modes {
            let (we, wm) = (m.w_e.unwrap(), m.w_m.unwrap());
            prop_assert!((we - wm).abs() / (we + wm) <= 1e-6, "{}: {we} vs {wm}", m.mode_id);
            prop_assert!((we + wm - 1.0).abs() < 1e-12);
            let ff = FillingFactors::of(m.field.as_ref().unwrap()).unwrap();
            prop_assert!((ff.p_m.values().sum::<f64>() - 1.0).abs() < 1e-9);
        }
    }
}

fn nodes(start: f64, steps: &[f64]) -> Vec<f64> {
    let mut v = vec![start];
    for s in steps {
        v.push(v.last().unwrap() + s);
    }
    v
}

prop_compose! {
    fn partitioned_field()(
        dr in prop::collection::vec(1e-4..2e-3f64, 2..12),
        dz in prop::collection::vec(1e-4..2e-3f64, 2..12),
        n_labels in 1..6usize,
        seed in any::<u64>(),
        eps in prop::collection::vec(1.0..200.0f64, 1..4),
    ) -> FieldSolution {
        let base = AxiMesh::vacuum(nodes(0.0, &dr), nodes(0.0, &dz)).unwrap();
        let n = base.n_cells();
        let mut s = seed | 1;
        let mut next = move || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            s
        };
        let labels = (0..n_labels).map(|k| format!("l{k}")).collect();
        let cell_label = (0..n).map(|_| (next() % n_labels as u64) as usize).collect();
        let mut mesh = base.relabeled(labels, cell_label).unwrap();
        mesh.materials = eps.iter().enumerate()
            .map(|(k, &e)| Material::dielectric(&format!("m{k}"), e, 0.0).unwrap())
            .collect();
        mesh.cell_material = (0..n).map(|_| (next() % eps.len() as u64) as usize).collect();
        let e: Vec<f64> = (0..(mesh.nr() + 1) * (mesh.nz() + 1))
            .map(|_| (next() % 2001) as f64 / 1000.0 - 1.0)
            .collect();
        FieldSolution::from_e_phi(Arc::new(mesh), e, 1e10).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn filling_factors_close(field in partitioned_field()) {
        prop_assume!(field.e_phi.iter().any(|&v| v != 0.0));
        let ff = FillingFactors::of(&field).unwrap();
        let sm: f64 = ff.p_m.values().sum();
        let se: f64 = ff.p_e.values().sum();
        prop_assert!((sm - 1.0).abs() <= 1e-9, "sum p_m = {sm}");
        prop_assert!((se - 1.0).abs() <= 1e-9, "sum p_e = {se}");
        prop_assert!(ff.p_m.values().chain(ff.p_e.values()).all(|&p| (0.0..=1.0 + 1e-12).contains(&p)));
    }

    #[test]
    fn spec_round_trip(g in loaded_cavity(), cell in 0.1e-3..0.5e-3f64, lo in 1e9..3e9f64, n in 1..5usize) {
        let text = format!(
            "[geometry]\nvariant = axisymmetric\nradius = 1\nheight = 1\n[mesh]\ntarget_cell = {cell:e}\n[solver]\nwindow_min = {lo:e}\nwindow_max = {:e}\nn_modes = {n}\n",
            2.0 * lo
        );
        let mut spec = parse_spec_str(&text).unwrap();
        spec.geometry = g;
        let once = serialize_spec(&spec);
        let again = parse_spec_str(&once).unwrap();
        prop_assert_eq!(&again, &spec);
        prop_assert_eq!(serialize_spec(&again), once);
    }
}
