//! Command implementations behind the `nvcavity` binary: solving a spec,
//! coupling reports, DC-field sweeps, the material dump, and the files they
//! write.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::constants::H;
use crate::error::{Error, Result};
use crate::geometry::GeometryVariant;
use crate::materials::MaterialLibrary;
use crate::mesh::build_mesh;
use crate::modes::{
    analytic_rectangular_mode, reentrant_lumped, solve_axisymmetric_te0, ModeResult,
};
use crate::observables::{electric_filling_factor, magnetic_filling_factor, FillingFactors, QBudget};
use crate::spectra::{field_sweep, uniform_grid, DispersionTrace, SpectroscopyParams, SpectrumTrace, DEFAULT_GRID_POINTS};
use crate::specfile::{num, CavitySpec};
use crate::spin::{Calibration, CouplingReport, Pathway, SpinEnsemble};
use crate::table::default_calibration;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::Usage(format!("unknown format `{other}` (text, csv)"))),
        }
    }
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Text => "txt",
            OutputFormat::Csv => "csv",
        }
    }
}

/// Writes `contents` to a temporary sibling and renames it over `path`.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    std::fs::write(&tmp, contents).map_err(|e| Error::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        Error::io(path, e)
    })
}

/// Modes of a parsed cavity spec file inside its window (all variants).
pub fn solve_modes(spec: &CavitySpec) -> Result<Vec<ModeResult>> {
    let g = &spec.geometry;
    match &g.variant {
        GeometryVariant::Axisymmetric { .. } | GeometryVariant::Cylindrical { .. } => {
            let cell = spec
                .target_cell
                .ok_or_else(|| Error::Usage("spec has no [mesh] target_cell".into()))?;
            let window = spec
                .window
                .ok_or_else(|| Error::Usage("spec has no [solver] window".into()))?;
            let mesh = build_mesh(g, cell)?;
            solve_axisymmetric_te0(&mesh, window, spec.n_modes)
        }
        GeometryVariant::Rectangular { a, b, d } => {
            let (lo, hi) = spec
                .window
                .ok_or_else(|| Error::Usage("spec has no [solver] window".into()))?;
            let mut modes = Vec::new();
            for m in 0..=5 {
                for n in 0..=5 {
                    for p in 1..=5 {
                        if m == 0 && n == 0 {
                            continue;
                        }
                        let f = analytic_rectangular_mode(*a, *b, *d, m, n, p)?;
                        if f >= lo && f <= hi {
                            modes.push(ModeResult::frequency_only(format!("TE{m}{n}{p}"), f));
                        }
                    }
                }
            }
            modes.sort_by(|x, y| x.frequency.total_cmp(&y.frequency).then(x.mode_id.cmp(&y.mode_id)));
            modes.truncate(spec.n_modes);
            Ok(modes)
        }
        GeometryVariant::Reentrant { .. } => {
            let mode = reentrant_lumped(g)?;
            let inside = spec.window.is_none_or(|(lo, hi)| mode.frequency >= lo && mode.frequency <= hi);
            Ok(if inside { vec![mode] } else { Vec::new() })
        }
    }
}

#[derive(Debug, Clone)]
pub struct ModeReport {
    pub mode: ModeResult,
    pub filling: Option<FillingFactors>,
    pub budget: Option<QBudget>,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub variant: String,
    pub modes: Vec<ModeReport>,
}

/// Solves a cavity spec file and derives filling factors and the Q budget of every
/// mode that carries a field. No mode in the window is an error.
pub fn cmd_solve(spec: &CavitySpec) -> Result<SolveReport> {
    let modes = solve_modes(spec)?;
    if modes.is_empty() {
        let (lo, hi) = spec.window.unwrap_or((0.0, f64::INFINITY));
        return Err(Error::NoModeInWindow { lo_hz: lo, hi_hz: hi });
    }
    let modes = modes
        .into_iter()
        .map(|mode| {
            let (filling, budget) = match &mode.field {
                Some(field) => (
                    Some(FillingFactors::of(field)?),
                    Some(QBudget::for_mode(&mode, &spec.geometry.wall_material)?),
                ),
                None => (None, None),
            };
            Ok(ModeReport { mode, filling, budget })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SolveReport {
        variant: spec.geometry.variant.name().to_string(),
        modes,
    })
}

const NA: &str = "n/a";

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| NA.to_string(), num)
}

impl SolveReport {
    fn labels(&self) -> Vec<String> {
        let mut set = BTreeSet::new();
        for m in &self.modes {
            if let Some(f) = &m.filling {
                set.extend(f.p_m.keys().cloned());
            }
        }
        set.into_iter().collect()
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.to_text(),
            OutputFormat::Csv => self.to_csv(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "cavity: {}", self.variant);
        for m in &self.modes {
            let r = &m.mode;
            let _ = writeln!(s, "\nmode {}", r.mode_id);
            let _ = writeln!(s, "  frequency      {:.6} GHz", r.frequency / 1e9);
            let _ = writeln!(s, "  omega          {:.6e} rad/s", r.omega);
            match r.mode_volume {
                Some(v) => {
                    let _ = writeln!(s, "  mode volume    {:.4} cm^3", v * 1e6);
                }
                None => {
                    let _ = writeln!(s, "  mode volume    {NA} (no field solution)");
                }
            }
            if let (Some(we), Some(wm)) = (r.w_e, r.w_m) {
                let _ = writeln!(s, "  W_e, W_m       {we:.9} J, {wm:.9} J");
            }
            match (&m.filling, &m.budget) {
                (Some(f), Some(b)) => {
                    for (label, pm) in &f.p_m {
                        let _ = writeln!(s, "  {:<14} p_m = {:.5}  p_e = {:.5}", label, pm, f.p_e[label]);
                    }
                    let _ = writeln!(s, "  GF             {:.3} ohm", b.gf);
                    let _ = writeln!(s, "  Q_met          {:.5e}", b.q_met);
                    for (label, q) in &b.q_diel {
                        let _ = writeln!(s, "  Q_diel {:<7} {:.5e}", label, q);
                    }
                    let _ = writeln!(s, "  Q0             {:.5e}", b.q0);
                    let _ = writeln!(
                        s,
                        "  kappa_c        {:.5e} rad/s (kappa_c/2pi = {:.4} kHz)",
                        b.kappa_c,
                        b.kappa_c / (2.0 * PI) / 1e3
                    );
                }
                _ => {
                    let _ = writeln!(s, "  filling factors, GF, Q budget: {NA} (no field solution)");
                }
            }
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let labels = self.labels();
        let mut s = String::from("mode_id,frequency_hz,omega_rad_s,mode_volume_m3,w_e_j,w_m_j,gf_ohm,q_met,q0,kappa_c_rad_s");
        for l in &labels {
            let _ = write!(s, ",p_m_{l},p_e_{l},q_diel_{l}");
        }
        s.push('\n');
        for m in &self.modes {
            let r = &m.mode;
            let b = m.budget.as_ref();
            let _ = write!(
                s,
                "{},{},{},{},{},{},{},{},{},{}",
                r.mode_id,
                num(r.frequency),
                num(r.omega),
                opt(r.mode_volume),
                opt(r.w_e),
                opt(r.w_m),
                opt(b.map(|b| b.gf)),
                opt(b.map(|b| b.q_met)),
                opt(b.map(|b| b.q0)),
                opt(b.map(|b| b.kappa_c)),
            );
            for l in &labels {
                let f = m.filling.as_ref();
                let _ = write!(
                    s,
                    ",{},{},{}",
                    opt(f.and_then(|f| f.p_m.get(l).copied())),
                    opt(f.and_then(|f| f.p_e.get(l).copied())),
                    opt(b.and_then(|b| b.q_diel.get(l).copied())),
                );
            }
            s.push('\n');
        }
        s
    }
}

/// Everything the coupling report needs, whether it came from a solved spec
/// or was given directly.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingInputs {
    pub source: String,
    pub p_m: f64,
    pub p_e: Option<f64>,
    pub q0: f64,
    pub frequency: f64,
    pub ensemble: SpinEnsemble,
    pub pathway: Pathway,
    pub calibration: Calibration,
    pub alpha: f64,
}

impl CouplingInputs {
    /// Solves a cavity spec file and reads `p_m`, `p_e` of the sample region and `Q0`
    /// of the lowest in-window mode.
    pub fn from_spec(spec: &CavitySpec) -> Result<Self> {
        let ens = spec
            .ensemble
            .as_ref()
            .ok_or_else(|| Error::Usage("coupling needs an [ensemble] section (or explicit inputs)".into()))?;
        let label = ens
            .sample_label
            .clone()
            .ok_or_else(|| Error::Usage("[ensemble].sample_label is needed to read p_m from the field".into()))?;
        let modes = solve_modes(spec)?;
        let (lo, hi) = spec.window.unwrap_or((0.0, f64::INFINITY));
        let mode = modes
            .into_iter()
            .next()
            .ok_or(Error::NoModeInWindow { lo_hz: lo, hi_hz: hi })?;
        let field = mode.field.as_ref().ok_or_else(|| {
            Error::Usage(format!(
                "{} cavities have no field solution; give p_m and q0 explicitly",
                spec.geometry.variant.name()
            ))
        })?;
        let p_m = magnetic_filling_factor(field, &label)?;
        let p_e = electric_filling_factor(field, &label)?;
        let budget = QBudget::for_mode(&mode, &spec.geometry.wall_material)?;
        Ok(CouplingInputs {
            source: format!("solved {} mode {} (sample `{label}`)", spec.geometry.variant.name(), mode.mode_id),
            p_m,
            p_e: Some(p_e),
            q0: budget.q0,
            frequency: mode.frequency,
            ensemble: ens.ensemble(Some(&spec.geometry))?,
            pathway: spec.coupling.pathway,
            calibration: spec.coupling.calibration().unwrap_or_else(default_calibration),
            alpha: spec.coupling.alpha,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportOutput {
    pub inputs: CouplingInputs,
    pub exact: CouplingReport,
    pub calibrated: CouplingReport,
}

impl ReportOutput {
    pub fn selected(&self) -> &CouplingReport {
        match self.inputs.pathway {
            Pathway::ExactSi => &self.exact,
            Pathway::Calibrated => &self.calibrated,
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.to_text(),
            OutputFormat::Csv => self.to_csv(),
        }
    }

    pub fn to_text(&self) -> String {
        let i = &self.inputs;
        let mut s = String::new();
        let _ = writeln!(s, "inputs: {}", i.source);
        let _ = writeln!(s, "  p_m = {:.6}", i.p_m);
        if let Some(pe) = i.p_e {
            let _ = writeln!(s, "  p_e = {pe:.6}");
        }
        let _ = writeln!(s, "  Q0 = {:.6e}", i.q0);
        let _ = writeln!(s, "  nu_c = {:.6} GHz", i.frequency / 1e9);
        let _ = writeln!(
            s,
            "  ensemble: rho = {:.4e} m^-3, gamma_s/2pi = {:.4} MHz (half-width), V_sample = {:.4e} m^3",
            i.ensemble.rho,
            i.ensemble.gamma_s / (2.0 * PI) / 1e6,
            i.ensemble.sample_volume
        );
        let _ = writeln!(s, "selected pathway: {}", i.pathway.label());
        for r in [&self.exact, &self.calibrated] {
            let mark = if r.pathway == i.pathway { " (selected)" } else { "" };
            let _ = writeln!(s, "\n[{}]{}", r.pathway.label(), mark);
            let _ = writeln!(s, "  g_c/2pi        {:.6} MHz", r.g_c_mhz());
            match r.g_s {
                Some(gs) => {
                    let _ = writeln!(s, "  g_s/2pi        {:.6e} Hz", gs / (2.0 * PI));
                }
                None => {
                    let _ = writeln!(s, "  g_s            {NA} (fewer than one spin)");
                }
            }
            let _ = writeln!(s, "  N              {:.6e}", r.n_spins);
            let _ = writeln!(s, "  kappa_c/2pi    {:.6} kHz", r.kappa_c / (2.0 * PI) / 1e3);
            let _ = writeln!(s, "  C              {:.6}", r.cooperativity);
            let _ = writeln!(s, "  regime         {}", r.regime);
        }
        if self.exact.g_c > 0.0 {
            let _ = writeln!(
                s,
                "\nnote: calibrated / exact-SI coupling ratio = {:.6e}; the pathways differ by a constant factor",
                self.calibrated.g_c / self.exact.g_c
            );
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from(
            "pathway,selected,g_c_rad_s,g_c_mhz,g_s_rad_s,n_spins,kappa_c_rad_s,gamma_s_rad_s,cooperativity,regime,p_m,q0,frequency_hz\n",
        );
        for r in [&self.exact, &self.calibrated] {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                r.pathway.label(),
                r.pathway == self.inputs.pathway,
                num(r.g_c),
                num(r.g_c_mhz()),
                opt(r.g_s),
                num(r.n_spins),
                num(r.kappa_c),
                num(r.gamma_s),
                num(r.cooperativity),
                r.regime,
                num(r.p_m),
                num(r.q0),
                num(r.frequency)
            );
        }
        s
    }
}

/// Coupling figures of merit through both pathways.
pub fn cmd_report(inputs: &CouplingInputs) -> Result<ReportOutput> {
    let exact = CouplingReport::exact_si(&inputs.ensemble, inputs.p_m, inputs.frequency, inputs.q0)?;
    let calibrated = CouplingReport::calibrated(&inputs.ensemble, inputs.p_m, inputs.frequency, inputs.q0, inputs.calibration)?;
    Ok(ReportOutput {
        inputs: inputs.clone(),
        exact,
        calibrated,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRequest {
    pub b_start: f64,
    pub b_stop: f64,
    pub b_steps: usize,
    /// Resonance field; defaults to where the upper NV transition (field
    /// along the NV axis) meets the cavity frequency.
    pub b_r: Option<f64>,
    pub freq_points: usize,
}

impl SweepRequest {
    pub fn new(b_start: f64, b_stop: f64, b_steps: usize) -> Self {
        SweepRequest {
            b_start,
            b_stop,
            b_steps,
            b_r: None,
            freq_points: DEFAULT_GRID_POINTS,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    pub params: SpectroscopyParams,
    pub b_r: f64,
    pub m0: f64,
    pub request: SweepRequest,
    pub freq_grid: Vec<f64>,
    pub dispersion: DispersionTrace,
    pub spectra: Vec<SpectrumTrace>,
}

pub fn resonance_field(ensemble: &SpinEnsemble, frequency: f64) -> f64 {
    (frequency - ensemble.d_over_h).abs() * H / ensemble.m0()
}

/// Avoided-crossing sweep using the selected pathway's `g_c` and
/// `kappa = kappa_c`.
pub fn cmd_sweep(inputs: &CouplingInputs, req: SweepRequest) -> Result<SweepOutput> {
    if req.b_steps < 1 {
        return Err(Error::Usage("b_steps must be >= 1".into()));
    }
    if req.freq_points < 3 {
        return Err(Error::Usage("at least 3 frequency points are needed".into()));
    }
    let report = cmd_report(inputs)?;
    let r = report.selected();
    let params = SpectroscopyParams {
        omega_c: 2.0 * PI * inputs.frequency,
        kappa: r.kappa_c,
        alpha: inputs.alpha,
        g_c: r.g_c,
        gamma: inputs.ensemble.gamma_s,
        delta: 0.0,
    };
    let b_r = req.b_r.unwrap_or_else(|| resonance_field(&inputs.ensemble, inputs.frequency));
    let b_grid = if req.b_steps == 1 {
        vec![req.b_start]
    } else {
        uniform_grid(req.b_start, req.b_stop, req.b_steps)
    };
    let half = 5.0 * params.g_c.abs().max(params.kappa).max(params.gamma);
    let freq_grid = uniform_grid(params.omega_c - half, params.omega_c + half, req.freq_points);
    let m0 = inputs.ensemble.m0();
    let (dispersion, spectra) = field_sweep(&params, &b_grid, b_r, m0, &freq_grid)?;
    Ok(SweepOutput {
        params,
        b_r,
        m0,
        request: req,
        freq_grid,
        dispersion,
        spectra,
    })
}

impl SweepOutput {
    pub fn dispersion_csv(&self) -> String {
        let mut s = String::from("b_tesla,delta_rad_s,omega_rad_s\n");
        let d = &self.dispersion;
        for k in 0..d.b_field.len() {
            let _ = writeln!(s, "{},{},{}", num(d.b_field[k]), num(d.delta[k]), num(d.dressed_freq[k]));
        }
        s
    }

    pub fn spectra_csv(&self) -> String {
        let mut s = String::from("b_tesla,omega_rad_s,s11_sq\n");
        for (b, trace) in self.dispersion.b_field.iter().zip(&self.spectra) {
            let b = num(*b);
            for (w, y) in trace.freq.iter().zip(&trace.s11_sq) {
                let _ = writeln!(s, "{b},{},{}", num(*w), num(*y));
            }
        }
        s
    }

    pub fn manifest(&self, inputs: &CouplingInputs) -> String {
        let p = &self.params;
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(s, "{k} = {v}");
        };
        kv("tool", format!("nvcavity {}", env!("CARGO_PKG_VERSION")));
        kv("command", "sweep".into());
        kv("source", inputs.source.clone());
        kv("pathway", inputs.pathway.label().into());
        kv("p_m", num(inputs.p_m));
        kv("q0", num(inputs.q0));
        kv("frequency_hz", num(inputs.frequency));
        kv("omega_c_rad_s", num(p.omega_c));
        kv("kappa_rad_s", num(p.kappa));
        kv("alpha", num(p.alpha));
        kv("g_c_rad_s", num(p.g_c));
        kv("gamma_s_rad_s", num(p.gamma));
        kv("rho_m-3", num(inputs.ensemble.rho));
        kv("g_factor", num(inputs.ensemble.g_factor));
        kv("d_over_h_hz", num(inputs.ensemble.d_over_h));
        kv("m0_j_per_t", num(self.m0));
        kv("b_r_tesla", num(self.b_r));
        kv("b_start_tesla", num(self.request.b_start));
        kv("b_stop_tesla", num(self.request.b_stop));
        kv("b_steps", self.request.b_steps.to_string());
        kv("freq_points", self.freq_grid.len().to_string());
        kv("freq_min_rad_s", num(self.freq_grid[0]));
        kv("freq_max_rad_s", num(*self.freq_grid.last().unwrap()));
        kv("delta_convention", "delta = m0 (B - B_r) / hbar; spin line at omega_c - delta".into());
        kv("kappa_convention", "kappa = kappa_c = omega_c / Q0; kappa_e = alpha kappa".into());
        s
    }

    /// Writes `dispersion.csv`, `spectra.csv` and `manifest.txt` into `dir`.
    pub fn write(&self, dir: &Path, inputs: &CouplingInputs) -> Result<Vec<PathBuf>> {
        let files = [
            ("dispersion.csv", self.dispersion_csv()),
            ("spectra.csv", self.spectra_csv()),
            ("manifest.txt", self.manifest(inputs)),
        ];
        let mut written = Vec::new();
        for (name, body) in files {
            let path = dir.join(name);
            write_atomic(&path, &body)?;
            written.push(path);
        }
        Ok(written)
    }
}

/// Dump of a material library.
pub fn cmd_materials(library: &MaterialLibrary, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => library.iter().map(|m| format!("{m}\n")).collect(),
        OutputFormat::Csv => {
            let mut s = String::from("name,kind,eps_r,tan_delta,mu_r,r_surface_ohm,source\n");
            for m in library.iter() {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},\"{}\"",
                    m.name,
                    if m.is_metal() { "metal" } else { "dielectric" },
                    m.eps_r().map_or(String::new(), num),
                    m.tan_delta().map_or(String::new(), num),
                    num(m.mu_r()),
                    m.r_surface().map_or(String::new(), num),
                    m.source.replace('"', "'")
                );
            }
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfile::parse_spec_str;

    fn explicit(p_m: f64, q0: f64, pathway: Pathway) -> CouplingInputs {
        CouplingInputs {
            source: "explicit".into(),
            p_m,
            p_e: None,
            q0,
            frequency: 2.87e9,
            ensemble: SpinEnsemble::new(1.2e18, 2.0 * PI * 3e6, 1.35e-8).unwrap(),
            pathway,
            calibration: default_calibration(),
            alpha: 1.0,
        }
    }

    #[test]
    fn explicit_calibrated_report() {
        let out = cmd_report(&explicit(0.119, 1905.0, Pathway::Calibrated)).unwrap();
        let r = out.selected();
        assert!((r.g_c_mhz() - 51.18).abs() < 0.05);
        assert!((r.cooperativity - 7.40).abs() < 0.01);
        assert!(out.to_text().contains("calibrated] (selected)"));
        assert_eq!(out.to_csv().lines().count(), 3);
    }

    #[test]
    fn zero_confinement_is_weak() {
        let out = cmd_report(&explicit(0.0, 1905.0, Pathway::ExactSi)).unwrap();
        for r in [&out.exact, &out.calibrated] {
            assert_eq!(r.g_c, 0.0);
            assert_eq!(r.cooperativity, 0.0);
            assert_eq!(r.regime, crate::spin::Regime::Weak);
        }
    }

    #[test]
    fn sweep_rejects_zero_steps() {
        let inputs = explicit(0.469, 1000.0, Pathway::Calibrated);
        assert!(matches!(cmd_sweep(&inputs, SweepRequest::new(0.0, 1.0, 0)), Err(Error::Usage(_))));
    }

    #[test]
    fn one_step_sweep() {
        let inputs = explicit(0.469, 1000.0, Pathway::Calibrated);
        let mut req = SweepRequest::new(0.0, 0.0, 1);
        req.freq_points = 11;
        let b_r = resonance_field(&inputs.ensemble, inputs.frequency);
        req.b_start = b_r;
        let out = cmd_sweep(&inputs, req).unwrap();
        assert_eq!(out.dispersion.b_field.len(), 1);
        assert_eq!(out.dispersion.dressed_freq[0], out.params.omega_c);
        assert_eq!(out.dispersion_csv().lines().count(), 2);
        assert_eq!(out.spectra_csv().lines().count(), 12);
    }

    #[test]
    fn reentrant_solve_has_no_field_quantities() {
        let spec = parse_spec_str(
            "[geometry]\nvariant = reentrant\nradius = 10 mm\nheight = 5 mm\npost_radius = 2 mm\ngap = 50 um\n",
        )
        .unwrap();
        let rep = cmd_solve(&spec).unwrap();
        assert_eq!(rep.modes.len(), 1);
        assert!(rep.modes[0].filling.is_none());
        assert!(rep.to_text().contains("n/a"));
        assert!(CouplingInputs::from_spec(&spec).is_err());
    }

    #[test]
    fn rectangular_modes_in_window() {
        let spec = parse_spec_str(
            "[geometry]\nvariant = rectangular\na = 73.9 mm\nb = 30 mm\nd = 73.9 mm\n[solver]\nwindow_min = 2.8 GHz\nwindow_max = 2.9 GHz\nn_modes = 3\n",
        )
        .unwrap();
        let modes = solve_modes(&spec).unwrap();
        assert_eq!(modes.len(), 1);
        assert_eq!(modes[0].mode_id, "TE101");
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.csv");
        write_atomic(&p, "a\n").unwrap();
        write_atomic(&p, "b\n").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "b\n");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn material_dump() {
        let csv = cmd_materials(MaterialLibrary::builtin(), OutputFormat::Csv);
        assert!(csv.lines().any(|l| l.starts_with("copper,metal,,,1,0.00577")));
        assert_eq!(csv.lines().count(), 7);
    }
}
