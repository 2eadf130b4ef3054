//! Resonant modes: closed-form references, the axisymmetric TE0 eigenmode
//! solver and the lumped reentrant model.
//!
//! Field layout on an [`AxiMesh`] with `nr x nz` cells:
//!
//! ```text
//! e_phi  nodes             (nr+1) x (nz+1)   index j*(nr+1) + i   at (r_i, z_j)
//! h_r    vertical edges    (nr+1) x  nz      index j*(nr+1) + i   at (r_i, z_j..z_{j+1})
//! h_z    horizontal edges   nr    x (nz+1)   index j*nr + i       at (r_i..r_{i+1}, z_j)
//! ```
//!
//! Magnetic components sit on the cell edges, where the discrete curl of the
//! nodal electric field is exact. Each cell owns a fixed share of its four
//! corners and four edges, so every energy integral splits into per-cell
//! contributions with annular weights.

mod analytic;
mod axisym;
mod banded;
mod energy;
mod lanczos;
mod lumped;

use std::sync::Arc;

use crate::constants::MU0;
use crate::error::{Error, Result};
use crate::mesh::AxiMesh;

pub use analytic::{analytic_cylindrical_mode, analytic_rectangular_mode, bessel_root, ModeFamily};
pub use axisym::{solve_axisymmetric_te0, solve_axisymmetric_te0_with, SolverOptions};
pub use energy::{cell_electric_energy, cell_magnetic_energy, mode_energies, mode_volume};
pub use lumped::reentrant_lumped;

/// Time-harmonic TE0 field on a mesh. Amplitudes are real: for a lossless
/// TE0 mode `H` is in quadrature with `E`, and that phase is left implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSolution {
    pub mesh: Arc<AxiMesh>,
    pub e_phi: Vec<f64>,
    pub h_r: Vec<f64>,
    pub h_z: Vec<f64>,
    pub omega: f64,
}

impl FieldSolution {
    pub fn new(mesh: Arc<AxiMesh>, e_phi: Vec<f64>, h_r: Vec<f64>, h_z: Vec<f64>, omega: f64) -> Result<Self> {
        let (nr, nz) = (mesh.nr(), mesh.nz());
        if e_phi.len() != (nr + 1) * (nz + 1) || h_r.len() != (nr + 1) * nz || h_z.len() != nr * (nz + 1) {
            return Err(Error::domain("field arrays do not match the mesh layout"));
        }
        Ok(FieldSolution {
            mesh,
            e_phi,
            h_r,
            h_z,
            omega,
        })
    }

    /// Builds the magnetic field from a nodal `E_phi` via Faraday's law:
    /// `h_r = -(1/(omega mu0)) dE/dz`, `h_z = (1/(omega mu0)) (1/r) d(r E)/dr`
    /// (magnitudes, sign convention of `curl E`).
    pub fn from_e_phi(mesh: Arc<AxiMesh>, e_phi: Vec<f64>, omega: f64) -> Result<Self> {
        let (nr, nz) = (mesh.nr(), mesh.nz());
        if e_phi.len() != (nr + 1) * (nz + 1) {
            return Err(Error::domain("e_phi does not match the mesh node count"));
        }
        if !(omega > 0.0) {
            return Err(Error::domain("omega must be > 0"));
        }
        let k = 1.0 / (omega * MU0);
        let r = &mesh.r_nodes;
        let z = &mesh.z_nodes;
        let node = |i: usize, j: usize| e_phi[j * (nr + 1) + i];
        let mut h_r = vec![0.0; (nr + 1) * nz];
        for j in 0..nz {
            let dz = z[j + 1] - z[j];
            for i in 0..=nr {
                h_r[j * (nr + 1) + i] = -k * (node(i, j + 1) - node(i, j)) / dz;
            }
        }
        let mut h_z = vec![0.0; nr * (nz + 1)];
        for j in 0..=nz {
            for i in 0..nr {
                let dr = r[i + 1] - r[i];
                let rm = 0.5 * (r[i] + r[i + 1]);
                h_z[j * nr + i] = k * (r[i + 1] * node(i + 1, j) - r[i] * node(i, j)) / (rm * dr);
            }
        }
        FieldSolution::new(mesh, e_phi, h_r, h_z, omega)
    }

    /// Samples closed-form fields at the staggered positions of the layout.
    pub fn sample(
        mesh: Arc<AxiMesh>,
        omega: f64,
        e_phi: impl Fn(f64, f64) -> f64,
        h_r: impl Fn(f64, f64) -> f64,
        h_z: impl Fn(f64, f64) -> f64,
    ) -> Result<Self> {
        let (nr, nz) = (mesh.nr(), mesh.nz());
        let r = &mesh.r_nodes;
        let z = &mesh.z_nodes;
        let mut e = Vec::with_capacity((nr + 1) * (nz + 1));
        for &zj in z {
            e.extend(r.iter().map(|&ri| e_phi(ri, zj)));
        }
        let mut hr = Vec::with_capacity((nr + 1) * nz);
        for w in z.windows(2) {
            let zm = 0.5 * (w[0] + w[1]);
            hr.extend(r.iter().map(|&ri| h_r(ri, zm)));
        }
        let mut hz = Vec::with_capacity(nr * (nz + 1));
        for &zj in z {
            hz.extend(r.windows(2).map(|w| h_z(0.5 * (w[0] + w[1]), zj)));
        }
        FieldSolution::new(mesh, e, hr, hz, omega)
    }

    pub fn scaled(&self, s: f64) -> Self {
        FieldSolution {
            mesh: Arc::clone(&self.mesh),
            e_phi: self.e_phi.iter().map(|v| v * s).collect(),
            h_r: self.h_r.iter().map(|v| v * s).collect(),
            h_z: self.h_z.iter().map(|v| v * s).collect(),
            omega: self.omega,
        }
    }

    pub fn e_at(&self, i: usize, j: usize) -> f64 {
        self.e_phi[j * (self.mesh.nr() + 1) + i]
    }

    /// Largest `|E_phi|` over the wall and axis nodes.
    pub fn max_boundary_e(&self) -> f64 {
        let (nr, nz) = (self.mesh.nr(), self.mesh.nz());
        let mut m = 0.0f64;
        for j in 0..=nz {
            for i in 0..=nr {
                if i == 0 || i == nr || j == 0 || j == nz {
                    m = m.max(self.e_at(i, j).abs());
                }
            }
        }
        m
    }
}

/// One resonant mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeResult {
    pub mode_id: String,
    pub frequency: f64,
    pub omega: f64,
    pub field: Option<FieldSolution>,
    pub w_e: Option<f64>,
    pub w_m: Option<f64>,
    pub mode_volume: Option<f64>,
}

impl ModeResult {
    /// A mode known only by its frequency (closed-form or lumped results).
    pub fn frequency_only(mode_id: impl Into<String>, frequency: f64) -> Self {
        ModeResult {
            mode_id: mode_id.into(),
            frequency,
            omega: 2.0 * std::f64::consts::PI * frequency,
            field: None,
            w_e: None,
            w_m: None,
            mode_volume: None,
        }
    }

    /// `|w_e - w_m| / (w_e + w_m)`, when energies are known.
    pub fn equipartition_error(&self) -> Option<f64> {
        match (self.w_e, self.w_m) {
            (Some(e), Some(m)) => Some((e - m).abs() / (e + m)),
            _ => None,
        }
    }
}

/// Per-cell share of the node and edge dual volumes.
///
/// For cell `(i, j)` with radial midpoint `rm`, `inner = pi (rm^2 - r_i^2)`
/// and `outer = pi (r_{i+1}^2 - rm^2)`; each corner owns half the cell
/// height of its radial half, each vertical edge owns the full height of its
/// radial half and each horizontal edge owns half the height of the ring.
#[derive(Debug, Clone, Copy)]
pub(crate) struct CellShares {
    pub inner: f64,
    pub outer: f64,
    pub dz: f64,
}

impl CellShares {
    #[inline]
    pub fn of(mesh: &AxiMesh, i: usize, j: usize) -> Self {
        let (r0, r1) = (mesh.r_nodes[i], mesh.r_nodes[i + 1]);
        let rm = 0.5 * (r0 + r1);
        CellShares {
            inner: std::f64::consts::PI * (rm * rm - r0 * r0),
            outer: std::f64::consts::PI * (r1 * r1 - rm * rm),
            dz: mesh.z_nodes[j + 1] - mesh.z_nodes[j],
        }
    }

    pub fn ring(&self) -> f64 {
        self.inner + self.outer
    }
}
