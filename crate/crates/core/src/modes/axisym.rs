//! Axisymmetric TE0 eigenmodes on an (r, z) mesh.
//!
//! The stiffness `A` and the diagonal mass `B` are the discrete magnetic and
//! electric energy forms, so `A u = (omega/c)^2 B u` and the energies of
//! [`super::energy`] balance exactly at the Rayleigh quotient.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::constants::C;
use crate::error::{Error, Result};
use crate::mesh::AxiMesh;

use super::banded::BandMatrix;
use super::lanczos::{dot, lanczos, Verdict};
use super::{mode_energies, mode_volume, CellShares, FieldSolution, ModeResult};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Relative Ritz residual at which an eigenpair counts as converged.
    pub tol: f64,
    pub max_steps: usize,
    pub check_every: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-10,
            max_steps: 400,
            check_every: 10,
        }
    }
}

/// Lowest `n_modes` TE0 modes with frequency in `window` (Hz), ascending.
/// An empty list means the window holds no eigenfrequency.
pub fn solve_axisymmetric_te0(mesh: &AxiMesh, window: (f64, f64), n_modes: usize) -> Result<Vec<ModeResult>> {
    solve_axisymmetric_te0_with(mesh, window, n_modes, &SolverOptions::default())
}

pub fn solve_axisymmetric_te0_with(
    mesh: &AxiMesh,
    window: (f64, f64),
    n_modes: usize,
    opts: &SolverOptions,
) -> Result<Vec<ModeResult>> {
    mesh.validate()?;
    let (f_lo, f_hi) = window;
    if !(f_lo >= 0.0 && f_hi > f_lo && f_hi.is_finite()) {
        return Err(Error::domain(format!("empty frequency window {f_lo}..{f_hi} Hz")));
    }
    if n_modes == 0 {
        return Err(Error::domain("n_modes must be >= 1"));
    }
    if opts.max_steps == 0 || opts.check_every == 0 || !(opts.tol > 0.0) {
        return Err(Error::domain("invalid solver options"));
    }

    let system = System::assemble(mesh);
    if system.n == 0 {
        return Ok(Vec::new());
    }
    let to_lambda = |f: f64| (2.0 * PI * f / C).powi(2);
    let (lam_lo, lam_hi) = (to_lambda(f_lo), to_lambda(f_hi));
    let mut sigma = 0.5 * (lam_lo + lam_hi);

    let mut lu = None;
    for attempt in 0..4 {
        let mut k = system.a.clone();
        k.add_diagonal(&system.b, -sigma);
        if let Some(f) = k.factor() {
            lu = Some(f);
            break;
        }
        sigma *= 1.0 + 1e-7 * (attempt + 1) as f64;
    }
    let lu = lu.ok_or_else(|| Error::SingularShift {
        shift_hz: sigma.sqrt() * C / (2.0 * PI),
    })?;

    // T = D K^-1 D with D = sqrt(B) is symmetric; theta = 1 / (lambda - sigma)
    let d: Vec<f64> = system.b.iter().map(|v| v.sqrt()).collect();
    let in_window = |theta: f64| {
        let lam = sigma + 1.0 / theta;
        lam >= lam_lo && lam <= lam_hi
    };
    let tol = opts.tol;
    let start = start_vector(system.n);
    let outcome = lanczos(
        system.n,
        &start,
        opts.max_steps,
        opts.check_every,
        |x, y| {
            for i in 0..x.len() {
                y[i] = d[i] * x[i];
            }
            lu.solve(y);
            for i in 0..y.len() {
                y[i] *= d[i];
            }
        },
        |pairs, m| {
            if m < 20 {
                return Verdict::Continue;
            }
            let ok = |&(t, r): &(f64, f64)| r <= tol * t.abs();
            if !pairs.iter().filter(|p| in_window(p.0)).all(ok) {
                return Verdict::Continue;
            }
            // nearest Ritz value outside the window on each side
            let below = pairs
                .iter()
                .filter(|p| !in_window(p.0) && sigma + 1.0 / p.0 < lam_lo && p.0 < 0.0)
                .min_by(|a, b| a.0.total_cmp(&b.0));
            let above = pairs
                .iter()
                .filter(|p| !in_window(p.0) && p.0 > 0.0)
                .max_by(|a, b| a.0.total_cmp(&b.0));
            if below.is_none_or(ok) && above.is_none_or(ok) {
                Verdict::Stop
            } else {
                Verdict::Continue
            }
        },
    );

    let mut found: Vec<(f64, Vec<f64>)> = Vec::new();
    let mut pending = 0;
    let mut worst = 0.0f64;
    for pair in &outcome.ritz {
        if !in_window(pair.theta) {
            continue;
        }
        if !outcome.stopped && !pair.converged(tol) {
            pending += 1;
            worst = worst.max(pair.residual / pair.theta.abs());
            continue;
        }
        let u: Vec<f64> = pair.vector.iter().zip(&d).map(|(v, di)| v / di).collect();
        found.push((sigma + 1.0 / pair.theta, u));
    }
    if pending > 0 {
        return Err(Error::NoConvergence {
            iterations: outcome.steps,
            residual: worst,
            unconverged: pending,
        });
    }
    found.sort_by(|a, b| a.0.total_cmp(&b.0));
    found.truncate(n_modes);

    let mesh = Arc::new(mesh.clone());
    let loaded = (0..mesh.n_cells()).any(|c| mesh.cell_eps_r(c) != 1.0);
    let mut out = Vec::with_capacity(found.len());
    for (k, (_, u)) in found.into_iter().enumerate() {
        let lambda = system.rayleigh(&u);
        let frequency = C * lambda.sqrt() / (2.0 * PI);
        let id = if k == 0 && loaded {
            "TE01δ".to_string()
        } else {
            format!("TE0-{}", k + 1)
        };
        out.push(finish_mode(&mesh, &system, &u, id, frequency)?);
    }
    Ok(out)
}

fn finish_mode(mesh: &Arc<AxiMesh>, system: &System, u: &[f64], id: String, frequency: f64) -> Result<ModeResult> {
    let omega = 2.0 * PI * frequency;
    let mut e = vec![0.0; (mesh.nr() + 1) * (mesh.nz() + 1)];
    for (k, &node) in system.nodes.iter().enumerate() {
        e[node] = u[k];
    }
    // deterministic sign: largest entry positive
    let peak = e.iter().copied().fold(0.0f64, |m, v| if v.abs() > m.abs() { v } else { m });
    if peak < 0.0 {
        e.iter_mut().for_each(|v| *v = -*v);
    }
    let raw = FieldSolution::from_e_phi(Arc::clone(mesh), e, omega)?;
    let (we, wm) = mode_energies(&raw);
    let field = raw.scaled((we + wm).sqrt().recip());
    let (w_e, w_m) = mode_energies(&field);
    let volume = mode_volume(&field)?;
    Ok(ModeResult {
        mode_id: id,
        frequency,
        omega,
        field: Some(field),
        w_e: Some(w_e),
        w_m: Some(w_m),
        mode_volume: Some(volume),
    })
}

/// Interior-node generalized eigenproblem.
struct System {
    n: usize,
    a: BandMatrix,
    b: Vec<f64>,
    /// Mesh node index of each unknown.
    nodes: Vec<usize>,
}

impl System {
    fn assemble(mesh: &AxiMesh) -> Self {
        let (nr, nz) = (mesh.nr(), mesh.nz());
        let (ni, nj) = (nr.saturating_sub(1), nz.saturating_sub(1));
        let n = ni * nj;
        // number along the shorter direction first to keep the band narrow
        let r_fast = ni <= nj;
        let bw = if r_fast { ni } else { nj };
        let unknown = |i: usize, j: usize| -> Option<usize> {
            if i == 0 || i == nr || j == 0 || j == nz {
                None
            } else if r_fast {
                Some((j - 1) * ni + (i - 1))
            } else {
                Some((i - 1) * nj + (j - 1))
            }
        };
        let mut nodes = vec![0; n];
        for j in 1..nz {
            for i in 1..nr {
                nodes[unknown(i, j).unwrap()] = j * (nr + 1) + i;
            }
        }

        let mut a = BandMatrix::zeros(n, bw, bw);
        let mut b = vec![0.0; n];
        let r = &mesh.r_nodes;
        let z = &mesh.z_nodes;
        let mut couple = |p: Option<usize>, q: Option<usize>, cp: f64, cq: f64, w: f64| {
            // adds w * (cq u_q - cp u_p)^2 to the quadratic form
            if let Some(p) = p {
                a.add(p, p, w * cp * cp);
            }
            if let Some(q) = q {
                a.add(q, q, w * cq * cq);
            }
            if let (Some(p), Some(q)) = (p, q) {
                a.add(p, q, -w * cp * cq);
                a.add(q, p, -w * cp * cq);
            }
        };

        for j in 0..nz {
            for i in 1..nr {
                let dz = z[j + 1] - z[j];
                let w = (CellShares::of(mesh, i, j).inner + CellShares::of(mesh, i - 1, j).outer) * dz;
                couple(unknown(i, j), unknown(i, j + 1), 1.0, 1.0, w / (dz * dz));
            }
        }
        for j in 1..nz {
            for i in 0..nr {
                let below = CellShares::of(mesh, i, j - 1);
                let above = CellShares::of(mesh, i, j);
                let w = 0.5 * below.ring() * (below.dz + above.dz);
                let rm = 0.5 * (r[i] + r[i + 1]);
                let s = rm * (r[i + 1] - r[i]);
                couple(unknown(i, j), unknown(i + 1, j), r[i], r[i + 1], w / (s * s));
            }
        }

        for j in 0..nz {
            for i in 0..nr {
                let s = CellShares::of(mesh, i, j);
                let eps = mesh.cell_eps_r(mesh.cell_index(i, j));
                let half = 0.5 * s.dz * eps;
                for (ii, jj, share) in [
                    (i, j, s.inner),
                    (i, j + 1, s.inner),
                    (i + 1, j, s.outer),
                    (i + 1, j + 1, s.outer),
                ] {
                    if let Some(k) = unknown(ii, jj) {
                        b[k] += share * half;
                    }
                }
            }
        }
        System { n, a, b, nodes }
    }

    fn rayleigh(&self, u: &[f64]) -> f64 {
        let mut au = vec![0.0; self.n];
        self.a.mul_vec(u, &mut au);
        let bu: f64 = u.iter().zip(&self.b).map(|(x, m)| m * x * x).sum();
        dot(u, &au) / bu
    }
}

/// Fixed pseudo-random start vector (splitmix64).
fn start_vector(n: usize) -> Vec<f64> {
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
    (0..n)
        .map(|_| {
            state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
            let mut x = state;
            x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
            x ^= x >> 31;
            (x >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        })
        .collect()
}
