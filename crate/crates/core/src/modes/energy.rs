use crate::constants::{EPS0, MU0};
use crate::error::{Error, Result};
use crate::mesh::cell_volumes;

use super::{CellShares, FieldSolution};

/// Electric energy `(1/2) eps0 eps_r |E|^2` integrated over each cell.
/// The cell's own permittivity is used for all four of its corners.
pub fn cell_electric_energy(field: &FieldSolution) -> Vec<f64> {
    let mesh = &field.mesh;
    let (nr, nz) = (mesh.nr(), mesh.nz());
    let mut out = Vec::with_capacity(nr * nz);
    for j in 0..nz {
        for i in 0..nr {
            let s = CellShares::of(mesh, i, j);
            let eps = mesh.cell_eps_r(mesh.cell_index(i, j));
            let half = 0.5 * s.dz;
            let sum = (sq(field.e_at(i, j)) + sq(field.e_at(i, j + 1))) * s.inner * half
                + (sq(field.e_at(i + 1, j)) + sq(field.e_at(i + 1, j + 1))) * s.outer * half;
            out.push(0.5 * EPS0 * eps * sum);
        }
    }
    out
}

/// Magnetic energy `(1/2) mu0 |H|^2` integrated over each cell (mu_r = 1).
pub fn cell_magnetic_energy(field: &FieldSolution) -> Vec<f64> {
    let mesh = &field.mesh;
    let (nr, nz) = (mesh.nr(), mesh.nz());
    let mut out = Vec::with_capacity(nr * nz);
    for j in 0..nz {
        for i in 0..nr {
            let s = CellShares::of(mesh, i, j);
            let left = field.h_r[j * (nr + 1) + i];
            let right = field.h_r[j * (nr + 1) + i + 1];
            let bottom = field.h_z[j * nr + i];
            let top = field.h_z[(j + 1) * nr + i];
            let sum = sq(left) * s.inner * s.dz
                + sq(right) * s.outer * s.dz
                + (sq(bottom) + sq(top)) * s.ring() * 0.5 * s.dz;
            out.push(0.5 * MU0 * sum);
        }
    }
    out
}

/// Total stored electric and magnetic energy `(w_e, w_m)`.
pub fn mode_energies(field: &FieldSolution) -> (f64, f64) {
    (
        cell_electric_energy(field).iter().sum(),
        cell_magnetic_energy(field).iter().sum(),
    )
}

/// Effective mode volume `int eps_r |E|^2 dv / max(eps_r |E|^2)`, with the
/// maximum taken over cell averages.
pub fn mode_volume(field: &FieldSolution) -> Result<f64> {
    let energy = cell_electric_energy(field);
    let volumes = cell_volumes(&field.mesh);
    let total: f64 = energy.iter().sum();
    let peak = energy
        .iter()
        .zip(&volumes)
        .map(|(e, v)| e / v)
        .fold(0.0f64, f64::max);
    if !(peak > 0.0) {
        return Err(Error::domain("mode volume of a zero field"));
    }
    Ok(total / peak)
}

#[inline]
fn sq(v: f64) -> f64 {
    v * v
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;
    use std::sync::Arc;

    use super::*;
    use crate::mesh::AxiMesh;

    fn constant_field(mesh: AxiMesh, e: f64, h: f64) -> FieldSolution {
        FieldSolution::sample(Arc::new(mesh), 1.0, |_, _| e, |_, _| h, |_, _| h).unwrap()
    }

    #[test]
    fn zero_field_has_no_energy() {
        let f = constant_field(AxiMesh::uniform(1.0, 1.0, 4, 4).unwrap(), 0.0, 0.0);
        assert_eq!(mode_energies(&f), (0.0, 0.0));
        assert!(mode_volume(&f).is_err());
    }

    #[test]
    fn energies_scale_quadratically() {
        let mesh = Arc::new(AxiMesh::uniform(1.0, 2.0, 5, 7).unwrap());
        let f = FieldSolution::sample(
            mesh,
            3.0,
            |r, z| r * (1.0 - r) * z.sin(),
            |r, z| r + z,
            |r, z| r * z,
        )
        .unwrap();
        let (e1, m1) = mode_energies(&f);
        let (e2, m2) = mode_energies(&f.scaled(3.0));
        assert!((e2 / e1 - 9.0).abs() < 1e-12);
        assert!((m2 / m1 - 9.0).abs() < 1e-12);
    }

    #[test]
    fn uniform_field_volume_is_cavity_volume() {
        let f = constant_field(AxiMesh::uniform(0.5, 2.0, 6, 9).unwrap(), 2.0, 0.0);
        let v = mode_volume(&f).unwrap();
        let exact = PI * 0.25 * 2.0;
        assert!((v - exact).abs() < 1e-12 * exact);
        let (we, _) = mode_energies(&f);
        assert!((we - 0.5 * EPS0 * 4.0 * exact).abs() < 1e-12 * we);
    }

    #[test]
    fn half_confined_field_has_half_volume() {
        // E = 1 on every node of the upper half; only the node row on the
        // interface spills into the adjacent lower cells, at half weight.
        for nz in [8usize, 32, 128] {
            let mesh = Arc::new(AxiMesh::uniform(1.0, 2.0, 4, nz).unwrap());
            let f = FieldSolution::sample(
                mesh,
                1.0,
                |_, z| if z >= 1.0 - 1e-12 { 1.0 } else { 0.0 },
                |_, _| 0.0,
                |_, _| 0.0,
            )
            .unwrap();
            let fraction = mode_volume(&f).unwrap() / (PI * 2.0);
            let expected = 0.5 + 0.5 / nz as f64;
            assert!((fraction - expected).abs() < 1e-12, "nz={nz}: {fraction}");
        }
    }
}
