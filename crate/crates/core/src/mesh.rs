//! Structured (r, z) tensor-product meshes snapped to material interfaces.
//!
//! Cells are indexed `j * nr + i` where `i` counts radial cells from the
//! axis and `j` counts axial cells from the bottom wall.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{CavityGeometry, GeometryVariant, Region};
use crate::materials::Material;

pub const VACUUM_LABEL: &str = "vacuum";

#[derive(Debug, Clone, PartialEq)]
pub struct AxiMesh {
    pub r_nodes: Vec<f64>,
    pub z_nodes: Vec<f64>,
    /// Distinct materials referenced by `cell_material`.
    pub materials: Vec<Material>,
    /// Distinct region labels referenced by `cell_label`.
    pub labels: Vec<String>,
    pub cell_material: Vec<usize>,
    pub cell_label: Vec<usize>,
}

impl AxiMesh {
    /// An all-vacuum mesh on explicit node arrays.
    pub fn vacuum(r_nodes: Vec<f64>, z_nodes: Vec<f64>) -> Result<Self> {
        check_nodes("r", &r_nodes)?;
        check_nodes("z", &z_nodes)?;
        if r_nodes[0] != 0.0 {
            return Err(Error::Geometry("r_nodes must start on the axis".into()));
        }
        let cells = (r_nodes.len() - 1) * (z_nodes.len() - 1);
        Ok(AxiMesh {
            r_nodes,
            z_nodes,
            materials: vec![Material::vacuum()],
            labels: vec![VACUUM_LABEL.to_string()],
            cell_material: vec![0; cells],
            cell_label: vec![0; cells],
        })
    }

    /// Uniform all-vacuum mesh with `nr` by `nz` cells.
    pub fn uniform(radius: f64, height: f64, nr: usize, nz: usize) -> Result<Self> {
        if nr == 0 || nz == 0 {
            return Err(Error::Geometry("cell counts must be positive".into()));
        }
        let r = (0..=nr).map(|k| radius * k as f64 / nr as f64).collect();
        let z = (0..=nz).map(|k| height * k as f64 / nz as f64).collect();
        AxiMesh::vacuum(r, z)
    }

    pub fn nr(&self) -> usize {
        self.r_nodes.len() - 1
    }

    pub fn nz(&self) -> usize {
        self.z_nodes.len() - 1
    }

    pub fn n_cells(&self) -> usize {
        self.nr() * self.nz()
    }

    #[inline]
    pub fn cell_index(&self, i: usize, j: usize) -> usize {
        j * self.nr() + i
    }

    pub fn outer_radius(&self) -> f64 {
        *self.r_nodes.last().unwrap()
    }

    pub fn height(&self) -> f64 {
        *self.z_nodes.last().unwrap()
    }

    pub fn cell_eps_r(&self, cell: usize) -> f64 {
        self.materials[self.cell_material[cell]].eps_r().unwrap_or(1.0)
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn cell_material_of(&self, cell: usize) -> &Material {
        &self.materials[self.cell_material[cell]]
    }

    /// Largest cell extent along r and z.
    pub fn max_cell_extent(&self) -> (f64, f64) {
        let widest = |n: &[f64]| n.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
        (widest(&self.r_nodes), widest(&self.z_nodes))
    }

    /// Returns a copy with cell labels replaced by an arbitrary partition.
    pub fn relabeled(&self, labels: Vec<String>, cell_label: Vec<usize>) -> Result<Self> {
        if cell_label.len() != self.n_cells() || cell_label.iter().any(|&l| l >= labels.len()) {
            return Err(Error::Geometry("label map does not match the mesh".into()));
        }
        Ok(AxiMesh {
            labels,
            cell_label,
            ..self.clone()
        })
    }

    /// Replaces every cell material with a single material.
    pub fn filled_with(&self, material: Material) -> Self {
        AxiMesh {
            materials: vec![material],
            cell_material: vec![0; self.n_cells()],
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_nodes("r", &self.r_nodes)?;
        check_nodes("z", &self.z_nodes)?;
        let n = self.n_cells();
        if self.cell_material.len() != n || self.cell_label.len() != n {
            return Err(Error::Geometry("per-cell arrays do not match the node arrays".into()));
        }
        if self.cell_material.iter().any(|&m| m >= self.materials.len())
            || self.cell_label.iter().any(|&l| l >= self.labels.len())
        {
            return Err(Error::Geometry("cell references an unknown material or label".into()));
        }
        Ok(())
    }
}

fn check_nodes(axis: &str, nodes: &[f64]) -> Result<()> {
    if nodes.len() < 2 || nodes.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Geometry(format!(
            "{axis} nodes must be strictly increasing with at least two entries"
        )));
    }
    Ok(())
}

/// Builds a mesh for an axisymmetric (or plain cylindrical) cavity.
///
/// Every region edge becomes a mesh line; the intervals between edges are
/// split uniformly into the fewest cells no larger than `target_cell`.
pub fn build_mesh(geometry: &CavityGeometry, target_cell: f64) -> Result<AxiMesh> {
    geometry.validate()?;
    let (outer_radius, height, regions): (f64, f64, &[Region]) = match &geometry.variant {
        GeometryVariant::Axisymmetric {
            outer_radius,
            height,
            regions,
        } => (*outer_radius, *height, regions),
        GeometryVariant::Cylindrical { radius, height } => (*radius, *height, &[]),
        other => {
            return Err(Error::Geometry(format!(
                "{} geometry cannot be meshed for the axisymmetric solver",
                other.name()
            )))
        }
    };
    if !(target_cell > 0.0) || !target_cell.is_finite() {
        return Err(Error::domain(format!("target_cell must be > 0, got {target_cell}")));
    }
    for region in regions {
        if target_cell > region.thickness() {
            return Err(Error::Refinement {
                region: region.label.clone(),
                target_cell,
                thickness: region.thickness(),
            });
        }
    }

    let r_breaks = breakpoints(outer_radius, regions.iter().flat_map(|g| [g.r_min, g.r_max]));
    let z_breaks = breakpoints(height, regions.iter().flat_map(|g| [g.z_min, g.z_max]));
    let r_nodes = subdivide(&r_breaks, target_cell);
    let z_nodes = subdivide(&z_breaks, target_cell);

    let mut materials = vec![Material::vacuum()];
    let mut labels = vec![VACUUM_LABEL.to_string()];
    let region_ids: Vec<(usize, usize)> = regions
        .iter()
        .map(|g| (intern(&mut materials, &g.material), intern_label(&mut labels, &g.label)))
        .collect();

    let nr = r_nodes.len() - 1;
    let nz = z_nodes.len() - 1;
    let mut cell_material = vec![0; nr * nz];
    let mut cell_label = vec![0; nr * nz];
    for j in 0..nz {
        let zc = 0.5 * (z_nodes[j] + z_nodes[j + 1]);
        for i in 0..nr {
            let rc = 0.5 * (r_nodes[i] + r_nodes[i + 1]);
            if let Some(k) = regions
                .iter()
                .position(|g| rc > g.r_min && rc < g.r_max && zc > g.z_min && zc < g.z_max)
            {
                cell_material[j * nr + i] = region_ids[k].0;
                cell_label[j * nr + i] = region_ids[k].1;
            }
        }
    }
    Ok(AxiMesh {
        r_nodes,
        z_nodes,
        materials,
        labels,
        cell_material,
        cell_label,
    })
}

fn intern(materials: &mut Vec<Material>, m: &Material) -> usize {
    if let Some(k) = materials.iter().position(|x| x == m) {
        k
    } else {
        materials.push(m.clone());
        materials.len() - 1
    }
}

fn intern_label(labels: &mut Vec<String>, l: &str) -> usize {
    if let Some(k) = labels.iter().position(|x| x == l) {
        k
    } else {
        labels.push(l.to_string());
        labels.len() - 1
    }
}

fn breakpoints(extent: f64, edges: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut pts: Vec<f64> = std::iter::once(0.0)
        .chain(edges)
        .chain(std::iter::once(extent))
        .collect();
    pts.sort_by(f64::total_cmp);
    let tol = 1e-12 * extent;
    let mut out: Vec<f64> = Vec::with_capacity(pts.len());
    for p in pts {
        match out.last() {
            Some(&last) if p - last <= tol => {}
            _ => out.push(p),
        }
    }
    // the enclosing extent wins over a region edge that sits within tolerance of it
    *out.last_mut().unwrap() = extent;
    out
}

fn subdivide(breaks: &[f64], target: f64) -> Vec<f64> {
    let mut nodes = vec![breaks[0]];
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let n = ((b - a) / target - 1e-9).ceil().max(1.0) as usize;
        for k in 1..n {
            nodes.push(a + (b - a) * k as f64 / n as f64);
        }
        nodes.push(b);
    }
    nodes
}

/// Annular volume of every cell, `pi (r_{i+1}^2 - r_i^2) (z_{j+1} - z_j)`.
pub fn cell_volumes(mesh: &AxiMesh) -> Vec<f64> {
    let nr = mesh.nr();
    let rings: Vec<f64> = mesh
        .r_nodes
        .windows(2)
        .map(|w| PI * (w[1] * w[1] - w[0] * w[0]))
        .collect();
    let mut out = Vec::with_capacity(mesh.n_cells());
    for dz in mesh.z_nodes.windows(2).map(|w| w[1] - w[0]) {
        out.extend((0..nr).map(|i| rings[i] * dz));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::builtin_material;

    fn copper() -> Material {
        builtin_material("copper").unwrap()
    }

    fn axi(outer_radius: f64, height: f64, regions: Vec<Region>) -> CavityGeometry {
        CavityGeometry::new(
            GeometryVariant::Axisymmetric {
                outer_radius,
                height,
                regions,
            },
            copper(),
        )
        .unwrap()
    }

    #[test]
    fn empty_cylinder_uniform_grid() {
        let mesh = build_mesh(&axi(0.05, 0.05, vec![]), 0.005).unwrap();
        assert_eq!(mesh.nr(), 10);
        assert_eq!(mesh.nz(), 10);
        assert!(mesh.cell_label.iter().all(|&l| mesh.labels[l] == VACUUM_LABEL));
        assert!(mesh.cell_material.iter().all(|&m| mesh.materials[m] == Material::vacuum()));
    }

    #[test]
    fn region_edges_are_mesh_lines() {
        let diamond = Region::new(
            "diamond",
            builtin_material("diamond").unwrap(),
            (0.0, 1.5e-3),
            (0.02, 0.0215),
        )
        .unwrap();
        let mesh = build_mesh(&axi(0.01, 0.04, vec![diamond]), 5e-4).unwrap();
        assert!(mesh.z_nodes.contains(&0.02));
        assert!(mesh.z_nodes.contains(&0.0215));
        assert!(mesh.r_nodes.contains(&1.5e-3));
        let (dr, dz) = mesh.max_cell_extent();
        assert!(dr <= 5e-4 * (1.0 + 1e-12) && dz <= 5e-4 * (1.0 + 1e-12));
    }

    #[test]
    fn oversized_target_names_region() {
        let thin = Region::new("film", Material::vacuum(), (0.0, 0.01), (0.0, 1e-4)).unwrap();
        let err = build_mesh(&axi(0.02, 0.02, vec![thin]), 1e-3).unwrap_err();
        match err {
            Error::Refinement { region, .. } => assert_eq!(region, "film"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rectangular_cannot_be_meshed() {
        let g = CavityGeometry::new(GeometryVariant::Rectangular { a: 1.0, b: 1.0, d: 1.0 }, copper()).unwrap();
        assert!(build_mesh(&g, 0.1).is_err());
    }

    #[test]
    fn single_cell_volume() {
        let mesh = AxiMesh::vacuum(vec![0.0, 1.0], vec![0.0, 1.0]).unwrap();
        assert!((cell_volumes(&mesh)[0] - PI).abs() < 1e-15);
    }

    #[test]
    fn annulus_volumes() {
        let mesh = AxiMesh::vacuum(vec![0.0, 1.0, 2.0], vec![0.0, 1.0]).unwrap();
        let v = cell_volumes(&mesh);
        assert!((v[0] - PI).abs() < 1e-14);
        assert!((v[1] - 3.0 * PI).abs() < 1e-14);
    }

    #[test]
    fn volumes_sum_to_cylinder() {
        let mesh = AxiMesh::uniform(0.07, 0.1, 37, 53).unwrap();
        let total: f64 = cell_volumes(&mesh).iter().sum();
        let exact = PI * 0.07 * 0.07 * 0.1;
        assert!(((total - exact) / exact).abs() < 1e-12);
    }

    #[test]
    fn mesh_is_deterministic() {
        let g = axi(
            0.01,
            0.012,
            vec![Region::new("d", builtin_material("diamond").unwrap(), (0.0, 1.7e-3), (5e-3, 6.5e-3)).unwrap()],
        );
        assert_eq!(build_mesh(&g, 3e-4).unwrap(), build_mesh(&g, 3e-4).unwrap());
    }
}
