//! Cavity figures of merit derived from a field solution: filling factors,
//! geometric factor, quality-factor budget and damping rate.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::constants::MU0;
use crate::error::{Error, Result};
use crate::materials::Material;
use crate::mesh::VACUUM_LABEL;
use crate::modes::{cell_electric_energy, cell_magnetic_energy, FieldSolution, ModeResult};

#[derive(Debug, Clone, PartialEq)]
pub struct FillingFactors {
    pub p_m: BTreeMap<String, f64>,
    pub p_e: BTreeMap<String, f64>,
}

impl FillingFactors {
    /// Filling factors of every label present in the mesh.
    pub fn of(field: &FieldSolution) -> Result<Self> {
        let mesh = &field.mesh;
        let wm = label_fractions(field, &cell_magnetic_energy(field))?;
        let we = label_fractions(field, &cell_electric_energy(field))?;
        let names = |v: Vec<f64>| -> BTreeMap<String, f64> {
            mesh.labels.iter().cloned().zip(v).collect()
        };
        Ok(FillingFactors {
            p_m: names(wm),
            p_e: names(we),
        })
    }
}

fn label_fractions(field: &FieldSolution, cell_energy: &[f64]) -> Result<Vec<f64>> {
    let mesh = &field.mesh;
    let total: f64 = cell_energy.iter().sum();
    if !(total > 0.0) {
        return Err(Error::domain("filling factor of a zero field"));
    }
    let mut sums = vec![0.0; mesh.labels.len()];
    for (c, e) in cell_energy.iter().enumerate() {
        sums[mesh.cell_label[c]] += e;
    }
    Ok(sums.into_iter().map(|s| s / total).collect())
}

fn fraction_of(field: &FieldSolution, cell_energy: &[f64], label: &str) -> Result<f64> {
    let k = field.mesh.label_index(label).ok_or_else(|| {
        Error::domain(format!(
            "unknown region label `{label}` (mesh has: {})",
            field.mesh.labels.join(", ")
        ))
    })?;
    Ok(label_fractions(field, cell_energy)?[k])
}

/// Share of the magnetic energy stored in cells labeled `label` (mu_r = 1).
pub fn magnetic_filling_factor(field: &FieldSolution, label: &str) -> Result<f64> {
    fraction_of(field, &cell_magnetic_energy(field), label)
}

/// Share of the permittivity-weighted electric energy in cells labeled `label`.
pub fn electric_filling_factor(field: &FieldSolution, label: &str) -> Result<f64> {
    fraction_of(field, &cell_electric_energy(field), label)
}

/// `omega mu0 int |H|^2 dv / oint |H_tan|^2 ds` over the closed metal wall.
///
/// The wall field is taken from the magnetic samples nearest the wall: the
/// first and last rows of `h_r` for the end plates, the last column of `h_z`
/// for the side wall.
pub fn geometric_factor(field: &FieldSolution) -> Result<f64> {
    let mesh = &field.mesh;
    let (nr, nz) = (mesh.nr(), mesh.nz());
    let r = &mesh.r_nodes;
    let z = &mesh.z_nodes;
    let big_r = mesh.outer_radius();

    let mid = |k: isize| -> f64 {
        if k < 0 {
            0.0
        } else if k as usize >= nr {
            big_r
        } else {
            0.5 * (r[k as usize] + r[k as usize + 1])
        }
    };
    let mut surface = 0.0;
    for i in 0..=nr {
        let (lo, hi) = (mid(i as isize - 1), mid(i as isize));
        let area = PI * (hi * hi - lo * lo);
        let bottom = field.h_r[i];
        let top = field.h_r[(nz - 1) * (nr + 1) + i];
        surface += area * (bottom * bottom + top * top);
    }
    for j in 0..=nz {
        let lo = if j == 0 { z[0] } else { 0.5 * (z[j - 1] + z[j]) };
        let hi = if j == nz { z[nz] } else { 0.5 * (z[j] + z[j + 1]) };
        let h = field.h_z[j * nr + nr - 1];
        surface += 2.0 * PI * big_r * (hi - lo) * h * h;
    }
    if !(surface > 0.0) {
        return Err(Error::domain("no tangential magnetic field on the wall"));
    }
    let volume: f64 = cell_magnetic_energy(field).iter().sum::<f64>() * 2.0 / MU0;
    Ok(field.omega * MU0 * volume / surface)
}

/// Wall-loss quality factor `gf / r_surface`; infinite for a lossless wall.
pub fn q_metal(gf: f64, r_surface: f64) -> Result<f64> {
    if !(gf > 0.0) || !(r_surface >= 0.0) || gf.is_nan() {
        return Err(Error::domain(format!(
            "q_metal needs gf > 0 and r_surface >= 0 (got {gf}, {r_surface})"
        )));
    }
    if r_surface == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(gf / r_surface)
}

/// Dielectric-loss quality factor `1 / (p_e tan_delta)`.
pub fn q_dielectric(p_e: f64, tan_delta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p_e) {
        return Err(Error::domain(format!("p_e must lie in [0, 1], got {p_e}")));
    }
    if !(tan_delta >= 0.0) {
        return Err(Error::domain(format!("tan_delta must be >= 0, got {tan_delta}")));
    }
    let loss = p_e * tan_delta;
    Ok(if loss == 0.0 { f64::INFINITY } else { 1.0 / loss })
}

/// Harmonic combination of independent loss channels.
pub fn q_total(parts: &[f64]) -> Result<f64> {
    if parts.is_empty() {
        return Err(Error::domain("q_total of an empty list"));
    }
    let mut inv = 0.0;
    for &q in parts {
        if !(q > 0.0) {
            return Err(Error::domain(format!("quality factors must be > 0, got {q}")));
        }
        inv += 1.0 / q;
    }
    Ok(1.0 / inv)
}

/// `kappa_c = 2 pi nu_c / q0` in rad/s.
pub fn cavity_damping_rate(frequency: f64, q0: f64) -> Result<f64> {
    if !(frequency > 0.0) || !(q0 > 0.0) {
        return Err(Error::domain(format!(
            "damping rate needs frequency > 0 and q0 > 0 (got {frequency}, {q0})"
        )));
    }
    Ok(2.0 * PI * frequency / q0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct QBudget {
    pub q_met: f64,
    pub q_diel: BTreeMap<String, f64>,
    pub q0: f64,
    pub kappa_c: f64,
    pub gf: f64,
}

impl QBudget {
    /// Budget from explicit parts. `q0` and `kappa_c` follow from the parts.
    pub fn from_parts(frequency: f64, gf: f64, q_met: f64, q_diel: BTreeMap<String, f64>) -> Result<Self> {
        let parts: Vec<f64> = std::iter::once(q_met).chain(q_diel.values().copied()).collect();
        let q0 = q_total(&parts)?;
        let kappa_c = cavity_damping_rate(frequency, q0)?;
        Ok(QBudget {
            q_met,
            q_diel,
            q0,
            kappa_c,
            gf,
        })
    }

    /// Loss budget of a solved mode: wall loss from the geometric factor and
    /// one dielectric channel per labeled non-vacuum region.
    pub fn for_mode(mode: &ModeResult, wall: &Material) -> Result<Self> {
        let field = mode
            .field
            .as_ref()
            .ok_or_else(|| Error::domain("Q budget needs a field solution"))?;
        let r_s = wall
            .r_surface()
            .ok_or_else(|| Error::domain(format!("wall material `{}` is not a metal", wall.name)))?;
        let gf = geometric_factor(field)?;
        let q_met = q_metal(gf, r_s)?;

        // loss tangent weighted per cell, so a label spanning several
        // materials is still handled
        let mesh = &field.mesh;
        let we = cell_electric_energy(field);
        let total: f64 = we.iter().sum();
        let mut loss = vec![0.0; mesh.labels.len()];
        for (c, e) in we.iter().enumerate() {
            let tan = mesh.cell_material_of(c).tan_delta().unwrap_or(0.0);
            loss[mesh.cell_label[c]] += e / total * tan;
        }
        let q_diel = mesh
            .labels
            .iter()
            .zip(loss)
            .filter(|(l, _)| l.as_str() != VACUUM_LABEL)
            .map(|(l, x)| (l.clone(), if x > 0.0 { 1.0 / x } else { f64::INFINITY }))
            .collect();
        QBudget::from_parts(mode.frequency, gf, q_met, q_diel)
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::mesh::AxiMesh;

    fn half_labeled(nr: usize, nz: usize) -> AxiMesh {
        let mesh = AxiMesh::uniform(1.0, 1.0, nr, nz).unwrap();
        let cells: Vec<usize> = (0..nr * nz).map(|c| usize::from(c / nr >= nz / 2)).collect();
        mesh.relabeled(vec!["lower".into(), "upper".into()], cells).unwrap()
    }

    #[test]
    fn whole_cavity_is_one() {
        let mesh = Arc::new(AxiMesh::uniform(1.0, 1.0, 5, 5).unwrap());
        let f = FieldSolution::sample(mesh, 1.0, |r, z| r * z, |r, _| r, |_, z| z + 1.0).unwrap();
        assert!((magnetic_filling_factor(&f, VACUUM_LABEL).unwrap() - 1.0).abs() < 1e-15);
        assert!((electric_filling_factor(&f, VACUUM_LABEL).unwrap() - 1.0).abs() < 1e-15);
        assert!(magnetic_filling_factor(&f, "diamond").is_err());
    }

    #[test]
    fn uniform_h_over_half_volume() {
        let f = FieldSolution::sample(Arc::new(half_labeled(6, 8)), 1.0, |_, _| 0.0, |_, _| 1.0, |_, _| 1.0).unwrap();
        assert!((magnetic_filling_factor(&f, "upper").unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn uniform_e_over_quarter_volume() {
        let mesh = AxiMesh::uniform(1.0, 1.0, 4, 8).unwrap();
        let cells: Vec<usize> = (0..32).map(|c| usize::from(c / 4 < 2)).collect();
        let mesh = mesh.relabeled(vec!["rest".into(), "slab".into()], cells).unwrap();
        let f = FieldSolution::sample(Arc::new(mesh), 1.0, |_, _| 3.0, |_, _| 0.0, |_, _| 0.0).unwrap();
        assert!((electric_filling_factor(&f, "slab").unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn factors_are_scale_invariant() {
        let f = FieldSolution::sample(Arc::new(half_labeled(7, 6)), 2.0, |r, z| r * (1.0 - z), |r, z| r - z, |r, _| r * r)
            .unwrap();
        let g = f.scaled(-7.5);
        for l in ["lower", "upper"] {
            assert!((magnetic_filling_factor(&f, l).unwrap() - magnetic_filling_factor(&g, l).unwrap()).abs() < 1e-14);
            assert!((electric_filling_factor(&f, l).unwrap() - electric_filling_factor(&g, l).unwrap()).abs() < 1e-14);
        }
        assert!((geometric_factor(&f).unwrap() / geometric_factor(&g).unwrap() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn zero_wall_field_is_rejected() {
        let f = FieldSolution::sample(Arc::new(half_labeled(4, 4)), 1.0, |_, _| 0.0, |_, _| 0.0, |_, _| 0.0).unwrap();
        assert!(geometric_factor(&f).is_err());
    }

    #[test]
    fn q_metal_values() {
        assert!((q_metal(577.0, 5.77e-3).unwrap() - 1e5).abs() < 1e-6);
        assert!((q_metal(300.0, 5.77e-3).unwrap() - 51_993.067_590_988).abs() < 1e-6);
        assert_eq!(q_metal(300.0, 0.0).unwrap(), f64::INFINITY);
        assert!(q_metal(0.0, 1.0).is_err());
        assert!(q_metal(1.0, -1.0).is_err());
    }

    #[test]
    fn q_dielectric_values() {
        assert!((q_dielectric(1.0, 1e-6).unwrap() - 1e6).abs() < 1e-6);
        assert_eq!(q_dielectric(0.3, 0.0).unwrap(), f64::INFINITY);
        assert_eq!(q_dielectric(0.0, 0.1).unwrap(), f64::INFINITY);
        assert!(q_dielectric(1.5, 1e-3).is_err());
        assert!(q_dielectric(-0.1, 1e-3).is_err());
    }

    #[test]
    fn q_total_values() {
        assert!((q_total(&[2000.0, 2000.0]).unwrap() - 1000.0).abs() < 1e-9);
        assert_eq!(q_total(&[1234.0, f64::INFINITY, f64::INFINITY]).unwrap(), 1234.0);
        assert!(q_total(&[]).is_err());
        assert!(q_total(&[1.0, 0.0]).is_err());
    }

    #[test]
    fn damping_rate_values() {
        let k = cavity_damping_rate(2.87e9, 127_000.0).unwrap();
        assert!((k - 141_990.0).abs() < 1.0);
        assert!((cavity_damping_rate(2.87e9, 254_000.0).unwrap() - k / 2.0).abs() < 1e-9);
        let k = cavity_damping_rate(2.87e9, 500.0).unwrap();
        assert!((k / (2.0 * PI) - 5.74e6).abs() < 1.0);
        assert!(cavity_damping_rate(0.0, 1.0).is_err());
    }

    #[test]
    fn budget_identity() {
        let mut diel = BTreeMap::new();
        diel.insert("diamond".to_string(), 3.0e6);
        diel.insert("rutile".to_string(), 4.0e5);
        let b = QBudget::from_parts(2.87e9, 700.0, 1.2e5, diel).unwrap();
        let inv = 1.0 / b.q_met + b.q_diel.values().map(|q| 1.0 / q).sum::<f64>();
        assert!((1.0 / b.q0 - inv).abs() < 1e-12 * inv);
        assert!((b.kappa_c - 2.0 * PI * 2.87e9 / b.q0).abs() < 1e-12 * b.kappa_c);
        assert!(b.q0 <= 1.2e5);
    }
}
