//! Cavity spec files: a small INI-style format.
//!
//! ```text
//! # comment
//! [geometry]
//! variant = axisymmetric        # axisymmetric | cylindrical | rectangular | reentrant
//! wall    = copper
//! radius  = 10 mm
//! height  = 12 mm
//!
//! [region]                      # repeatable
//! label    = diamond
//! material = diamond
//! r_min = 0
//! r_max = 1.69 mm
//! z_min = 4.5 mm
//! z_max = 6 mm
//!
//! [mesh]
//! target_cell = 0.25 mm
//!
//! [solver]
//! window_min = 2.7 GHz
//! window_max = 3.0 GHz
//! n_modes = 1
//!
//! [ensemble]                    # optional; omit for a mode-only run
//! rho = 1.2e24                  # m^-3 unless a unit is given
//! gamma_s_over_2pi = 3 MHz      # or fwhm = ..., or t2_star = ...
//! sample_label = diamond
//!
//! [coupling]
//! pathway = exact-si            # exact-si | calibrated
//! alpha = 1
//! ```
//!
//! Numbers are SI unless followed by a unit of the right kind. Unknown
//! sections and keys are rejected, and every error carries the line and the
//! `[section].key` it concerns.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::{CavityGeometry, GeometryVariant, Region};
use crate::materials::{Material, MaterialLibrary};
use crate::spin::{Calibration, Pathway, SpinEnsemble, NV_D_OVER_H, NV_G_FACTOR};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Linewidth {
    /// `gamma_s / 2 pi` in Hz.
    HalfWidthHz(f64),
    FwhmHz(f64),
    /// Seconds.
    T2Star(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSpec {
    pub rho: f64,
    pub linewidth: Linewidth,
    pub g_factor: f64,
    pub d_over_h: f64,
    pub sample_label: Option<String>,
    /// Overrides the volume of `sample_label` when set.
    pub sample_volume: Option<f64>,
}

impl EnsembleSpec {
    /// Resolved ensemble. The sample volume is the explicit value, else the
    /// summed volume of the regions carrying `sample_label`, else zero.
    pub fn ensemble(&self, geometry: Option<&CavityGeometry>) -> Result<SpinEnsemble> {
        let volume = match (self.sample_volume, &self.sample_label, geometry) {
            (Some(v), _, _) => v,
            (None, Some(label), Some(g)) => g.regions().iter().filter(|r| &r.label == label).map(Region::volume).sum(),
            _ => 0.0,
        };
        let mut e = match self.linewidth {
            Linewidth::HalfWidthHz(hz) => SpinEnsemble::new(self.rho, 2.0 * std::f64::consts::PI * hz, volume)?,
            Linewidth::FwhmHz(hz) => SpinEnsemble::from_fwhm_hz(self.rho, hz, volume)?,
            Linewidth::T2Star(t) => SpinEnsemble::from_t2_star(self.rho, t, volume)?,
        };
        e.g_factor = self.g_factor;
        e.d_over_h = self.d_over_h;
        e.validate()?;
        Ok(e)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CouplingSpec {
    pub pathway: Pathway,
    pub alpha: f64,
    pub k_g: Option<f64>,
    pub k_c: Option<f64>,
}

impl Default for CouplingSpec {
    fn default() -> Self {
        CouplingSpec {
            pathway: Pathway::ExactSi,
            alpha: 1.0,
            k_g: None,
            k_c: None,
        }
    }
}

impl CouplingSpec {
    pub fn calibration(&self) -> Option<Calibration> {
        Some(Calibration {
            k_g: self.k_g?,
            k_c: self.k_c?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CavitySpec {
    pub geometry: CavityGeometry,
    pub target_cell: Option<f64>,
    pub window: Option<(f64, f64)>,
    pub n_modes: usize,
    pub ensemble: Option<EnsembleSpec>,
    pub coupling: CouplingSpec,
}

pub fn parse_spec(path: impl AsRef<Path>) -> Result<CavitySpec> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_spec_str(&text)
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Dim {
    Length,
    Frequency,
    Density,
    Volume,
    Time,
    Count,
}

fn unit_scale(dim: Dim, unit: &str) -> Option<f64> {
    let table: &[(&str, f64)] = match dim {
        Dim::Length => &[("m", 1.0), ("cm", 1e-2), ("mm", 1e-3), ("um", 1e-6), ("μm", 1e-6)],
        Dim::Frequency => &[("Hz", 1.0), ("kHz", 1e3), ("MHz", 1e6), ("GHz", 1e9)],
        Dim::Density => &[("m^-3", 1.0), ("cm^-3", 1e6), ("um^-3", 1e18), ("μm^-3", 1e18)],
        Dim::Volume => &[("m^3", 1.0), ("cm^3", 1e-6), ("mm^3", 1e-9)],
        Dim::Time => &[("s", 1.0), ("ms", 1e-3), ("us", 1e-6), ("μs", 1e-6), ("ns", 1e-9)],
        Dim::Count => &[],
    };
    table.iter().find(|(u, _)| *u == unit).map(|(_, s)| *s)
}

struct Entry {
    key: String,
    value: String,
    line: usize,
    used: bool,
}

struct Section {
    name: String,
    line: usize,
    entries: Vec<Entry>,
}

impl Section {
    fn err(&self, key: &str, line: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line,
            key: format!("[{}].{}", self.name, key),
            message: message.into(),
        }
    }

    fn raw(&mut self, key: &str) -> Option<(String, usize)> {
        let e = self.entries.iter_mut().find(|e| e.key == key)?;
        e.used = true;
        Some((e.value.clone(), e.line))
    }

    fn text(&mut self, key: &str) -> Result<Option<String>> {
        Ok(self.raw(key).map(|(v, _)| v))
    }

    fn required_text(&mut self, key: &str) -> Result<String> {
        let line = self.line;
        self.text(key)?
            .ok_or_else(|| self.err(key, line, "missing required key"))
    }

    fn number(&mut self, key: &str, dim: Dim) -> Result<Option<f64>> {
        let Some((raw, line)) = self.raw(key) else {
            return Ok(None);
        };
        let mut parts = raw.split_whitespace();
        let num = parts.next().unwrap_or("");
        let unit = parts.next();
        if parts.next().is_some() {
            return Err(self.err(key, line, format!("expected `number [unit]`, got `{raw}`")));
        }
        let v: f64 = num
            .parse()
            .map_err(|_| self.err(key, line, format!("`{num}` is not a number")))?;
        let scale = match unit {
            None => 1.0,
            Some(u) => unit_scale(dim, u).ok_or_else(|| {
                self.err(key, line, format!("unit `{u}` does not fit a {dim:?} quantity"))
            })?,
        };
        let v = v * scale;
        if !v.is_finite() {
            return Err(self.err(key, line, "value must be finite"));
        }
        Ok(Some(v))
    }

    fn required_number(&mut self, key: &str, dim: Dim) -> Result<f64> {
        let line = self.line;
        self.number(key, dim)?
            .ok_or_else(|| self.err(key, line, "missing required key"))
    }

    fn positive(&mut self, key: &str, dim: Dim) -> Result<f64> {
        let v = self.required_number(key, dim)?;
        let line = self.line_of(key);
        if v > 0.0 {
            Ok(v)
        } else {
            Err(self.err(key, line, format!("must be > 0, got {v}")))
        }
    }

    fn line_of(&self, key: &str) -> usize {
        self.entries.iter().find(|e| e.key == key).map_or(self.line, |e| e.line)
    }

    fn finish(&self) -> Result<()> {
        match self.entries.iter().find(|e| !e.used) {
            Some(e) => Err(self.err(&e.key, e.line, "unknown key")),
            None => Ok(()),
        }
    }
}

fn split_sections(text: &str) -> Result<Vec<Section>> {
    let mut sections: Vec<Section> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[') {
            let name = name.strip_suffix(']').ok_or_else(|| Error::Parse {
                line,
                key: content.to_string(),
                message: "unterminated section header".into(),
            })?;
            sections.push(Section {
                name: name.trim().to_string(),
                line,
                entries: Vec::new(),
            });
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(Error::Parse {
                line,
                key: content.to_string(),
                message: "expected `key = value`".into(),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        let Some(section) = sections.last_mut() else {
            return Err(Error::Parse {
                line,
                key: key.to_string(),
                message: "key outside of any section".into(),
            });
        };
        if section.entries.iter().any(|e| e.key == key) {
            return Err(section.err(key, line, "duplicate key"));
        }
        section.entries.push(Entry {
            key: key.to_string(),
            value: value.to_string(),
            line,
            used: false,
        });
    }
    Ok(sections)
}

pub fn parse_spec_str(text: &str) -> Result<CavitySpec> {
    parse_with_library(text, MaterialLibrary::builtin())
}

pub fn parse_with_library(text: &str, library: &MaterialLibrary) -> Result<CavitySpec> {
    let end_line = text.lines().count().max(1);
    let mut geometry: Option<Section> = None;
    let mut regions: Vec<Section> = Vec::new();
    let mut mesh: Option<Section> = None;
    let mut solver: Option<Section> = None;
    let mut ensemble: Option<Section> = None;
    let mut coupling: Option<Section> = None;
    for s in split_sections(text)? {
        let slot = match s.name.as_str() {
            "region" => {
                regions.push(s);
                continue;
            }
            "geometry" => &mut geometry,
            "mesh" => &mut mesh,
            "solver" => &mut solver,
            "ensemble" => &mut ensemble,
            "coupling" => &mut coupling,
            other => {
                return Err(Error::Parse {
                    line: s.line,
                    key: format!("[{other}]"),
                    message: "unknown section".into(),
                })
            }
        };
        if slot.is_some() {
            return Err(Error::Parse {
                line: s.line,
                key: format!("[{}]", s.name),
                message: "section given twice".into(),
            });
        }
        *slot = Some(s);
    }

    let mut g = geometry.ok_or_else(|| Error::Parse {
        line: end_line,
        key: "[geometry]".into(),
        message: "missing required section".into(),
    })?;
    let variant_name = g.required_text("variant")?;
    let wall_name = g.text("wall")?.unwrap_or_else(|| "copper".to_string());
    let wall = lookup(library, &mut g, "wall", &wall_name)?;
    if !wall.is_metal() {
        let line = g.line_of("wall");
        return Err(g.err("wall", line, format!("`{wall_name}` is not a metal")));
    }

    let mut region_list = Vec::new();
    for mut r in regions {
        let label = r.required_text("label")?;
        let mat_name = r.required_text("material")?;
        let material = lookup(library, &mut r, "material", &mat_name)?;
        let r_min = r.required_number("r_min", Dim::Length)?;
        let r_max = r.required_number("r_max", Dim::Length)?;
        let z_min = r.required_number("z_min", Dim::Length)?;
        let z_max = r.required_number("z_max", Dim::Length)?;
        let region = Region::new(&label, material, (r_min, r_max), (z_min, z_max))
            .map_err(|e| r.err("label", r.line, e.to_string()))?;
        r.finish()?;
        region_list.push(region);
    }

    let variant = match variant_name.as_str() {
        "axisymmetric" | "cylindrical" => {
            let radius = g.positive("radius", Dim::Length)?;
            let height = g.positive("height", Dim::Length)?;
            if variant_name == "cylindrical" {
                if !region_list.is_empty() {
                    return Err(g.err("variant", g.line_of("variant"), "cylindrical cavities take no [region] sections"));
                }
                GeometryVariant::Cylindrical { radius, height }
            } else {
                GeometryVariant::Axisymmetric {
                    outer_radius: radius,
                    height,
                    regions: std::mem::take(&mut region_list),
                }
            }
        }
        "rectangular" => GeometryVariant::Rectangular {
            a: g.positive("a", Dim::Length)?,
            b: g.positive("b", Dim::Length)?,
            d: g.positive("d", Dim::Length)?,
        },
        "reentrant" => GeometryVariant::Reentrant {
            cavity_radius: g.positive("radius", Dim::Length)?,
            cavity_height: g.positive("height", Dim::Length)?,
            post_radius: g.positive("post_radius", Dim::Length)?,
            gap: g.positive("gap", Dim::Length)?,
        },
        other => {
            return Err(g.err(
                "variant",
                g.line_of("variant"),
                format!("unknown variant `{other}` (axisymmetric, cylindrical, rectangular, reentrant)"),
            ))
        }
    };
    if !region_list.is_empty() {
        return Err(g.err("variant", g.line_of("variant"), format!("{variant_name} cavities take no [region] sections")));
    }
    let geometry = CavityGeometry::new(variant, wall).map_err(|e| g.err("variant", g.line, e.to_string()))?;
    g.finish()?;

    let meshed = matches!(
        geometry.variant,
        GeometryVariant::Axisymmetric { .. } | GeometryVariant::Cylindrical { .. }
    );
    let target_cell = match mesh {
        Some(mut m) => {
            let v = m.positive("target_cell", Dim::Length)?;
            m.finish()?;
            Some(v)
        }
        None if meshed => {
            return Err(Error::Parse {
                line: end_line,
                key: "[mesh].target_cell".into(),
                message: "missing required section [mesh]".into(),
            })
        }
        None => None,
    };

    let (window, n_modes) = match solver {
        Some(mut s) => {
            let lo = s.required_number("window_min", Dim::Frequency)?;
            let hi = s.required_number("window_max", Dim::Frequency)?;
            if !(lo >= 0.0 && hi > lo) {
                let line = s.line_of("window_max");
                return Err(s.err("window_max", line, format!("empty window {lo}..{hi} Hz")));
            }
            let n = match s.number("n_modes", Dim::Count)? {
                None => 1,
                Some(v) if v >= 1.0 && v.fract() == 0.0 => v as usize,
                Some(v) => {
                    let line = s.line_of("n_modes");
                    return Err(s.err("n_modes", line, format!("must be a whole number >= 1, got {v}")));
                }
            };
            s.finish()?;
            (Some((lo, hi)), n)
        }
        None if !matches!(geometry.variant, GeometryVariant::Reentrant { .. }) => {
            return Err(Error::Parse {
                line: end_line,
                key: "[solver].window_min".into(),
                message: "missing required section [solver]".into(),
            })
        }
        None => (None, 1),
    };

    let ensemble = match ensemble {
        Some(mut e) => Some(parse_ensemble(&mut e, &geometry)?),
        None => None,
    };

    let coupling = match coupling {
        Some(mut c) => {
            let pathway = match c.text("pathway")?.as_deref() {
                None | Some("exact-si") => Pathway::ExactSi,
                Some("calibrated") => Pathway::Calibrated,
                Some(other) => {
                    let line = c.line_of("pathway");
                    return Err(c.err("pathway", line, format!("`{other}` is not exact-si or calibrated")));
                }
            };
            let alpha = c.number("alpha", Dim::Count)?.unwrap_or(1.0);
            if !(alpha >= 0.0) {
                let line = c.line_of("alpha");
                return Err(c.err("alpha", line, "must be >= 0"));
            }
            let k_g = c.number("k_g", Dim::Count)?;
            let k_c = c.number("k_c", Dim::Count)?;
            for (key, v) in [("k_g", k_g), ("k_c", k_c)] {
                if matches!(v, Some(x) if x <= 0.0) {
                    let line = c.line_of(key);
                    return Err(c.err(key, line, "must be > 0"));
                }
            }
            if k_g.is_some() != k_c.is_some() {
                return Err(c.err("k_g", c.line, "k_g and k_c must be given together"));
            }
            c.finish()?;
            CouplingSpec {
                pathway,
                alpha,
                k_g,
                k_c,
            }
        }
        None => CouplingSpec::default(),
    };

    Ok(CavitySpec {
        geometry,
        target_cell,
        window,
        n_modes,
        ensemble,
        coupling,
    })
}

fn parse_ensemble(e: &mut Section, geometry: &CavityGeometry) -> Result<EnsembleSpec> {
    let rho = e.positive("rho", Dim::Density)?;
    let half = e.number("gamma_s_over_2pi", Dim::Frequency)?;
    let fwhm = e.number("fwhm", Dim::Frequency)?;
    let t2 = e.number("t2_star", Dim::Time)?;
    let linewidth = match (half, fwhm, t2) {
        (Some(v), None, None) => Linewidth::HalfWidthHz(v),
        (None, Some(v), None) => Linewidth::FwhmHz(v),
        (None, None, Some(v)) => Linewidth::T2Star(v),
        _ => {
            return Err(e.err(
                "gamma_s_over_2pi",
                e.line,
                "give exactly one of gamma_s_over_2pi, fwhm, t2_star",
            ))
        }
    };
    let g_factor = e.number("g_factor", Dim::Count)?.unwrap_or(NV_G_FACTOR);
    let d_over_h = e.number("d_over_h", Dim::Frequency)?.unwrap_or(NV_D_OVER_H);
    let sample_label = e.text("sample_label")?;
    let sample_volume = e.number("sample_volume", Dim::Volume)?;
    if let Some(label) = &sample_label {
        if !geometry.regions().iter().any(|r| &r.label == label) {
            let line = e.line_of("sample_label");
            return Err(e.err("sample_label", line, format!("no region labeled `{label}`")));
        }
    }
    let spec = EnsembleSpec {
        rho,
        linewidth,
        g_factor,
        d_over_h,
        sample_label,
        sample_volume,
    };
    spec.ensemble(Some(geometry))
        .map_err(|err| e.err("rho", e.line, err.to_string()))?;
    e.finish()?;
    Ok(spec)
}

fn lookup(library: &MaterialLibrary, s: &mut Section, key: &str, name: &str) -> Result<Material> {
    library.get(name).cloned().map_err(|err| {
        let line = s.line_of(key);
        s.err(key, line, err.to_string())
    })
}

/// Shortest text that parses back to the same `f64`.
pub(crate) fn num(v: f64) -> String {
    if v == 0.0 || (1e-3..1e6).contains(&v.abs()) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// Writes a spec in the canonical SI form accepted by [`parse_spec_str`].
pub fn serialize_spec(spec: &CavitySpec) -> String {
    let mut out = String::new();
    let g = &spec.geometry;
    let _ = writeln!(out, "[geometry]\nvariant = {}\nwall = {}", g.variant.name(), g.wall_material.name);
    match &g.variant {
        GeometryVariant::Axisymmetric { outer_radius, height, .. } => {
            let _ = writeln!(out, "radius = {}\nheight = {}", num(*outer_radius), num(*height));
        }
        GeometryVariant::Cylindrical { radius, height } => {
            let _ = writeln!(out, "radius = {}\nheight = {}", num(*radius), num(*height));
        }
        GeometryVariant::Rectangular { a, b, d } => {
            let _ = writeln!(out, "a = {}\nb = {}\nd = {}", num(*a), num(*b), num(*d));
        }
        GeometryVariant::Reentrant {
            cavity_radius,
            cavity_height,
            post_radius,
            gap,
        } => {
            let _ = writeln!(
                out,
                "radius = {}\nheight = {}\npost_radius = {}\ngap = {}",
                num(*cavity_radius),
                num(*cavity_height),
                num(*post_radius),
                num(*gap)
            );
        }
    }
    for r in g.regions() {
        let _ = writeln!(
            out,
            "\n[region]\nlabel = {}\nmaterial = {}\nr_min = {}\nr_max = {}\nz_min = {}\nz_max = {}",
            r.label,
            r.material.name,
            num(r.r_min),
            num(r.r_max),
            num(r.z_min),
            num(r.z_max)
        );
    }
    if let Some(c) = spec.target_cell {
        let _ = writeln!(out, "\n[mesh]\ntarget_cell = {}", num(c));
    }
    if let Some((lo, hi)) = spec.window {
        let _ = writeln!(
            out,
            "\n[solver]\nwindow_min = {}\nwindow_max = {}\nn_modes = {}",
            num(lo),
            num(hi),
            spec.n_modes
        );
    }
    if let Some(e) = &spec.ensemble {
        let _ = writeln!(out, "\n[ensemble]\nrho = {}", num(e.rho));
        let _ = match e.linewidth {
            Linewidth::HalfWidthHz(v) => writeln!(out, "gamma_s_over_2pi = {}", num(v)),
            Linewidth::FwhmHz(v) => writeln!(out, "fwhm = {}", num(v)),
            Linewidth::T2Star(v) => writeln!(out, "t2_star = {}", num(v)),
        };
        let _ = writeln!(out, "g_factor = {}\nd_over_h = {}", num(e.g_factor), num(e.d_over_h));
        if let Some(l) = &e.sample_label {
            let _ = writeln!(out, "sample_label = {l}");
        }
        if let Some(v) = e.sample_volume {
            let _ = writeln!(out, "sample_volume = {}", num(v));
        }
    }
    let c = &spec.coupling;
    let _ = writeln!(out, "\n[coupling]\npathway = {}\nalpha = {}", c.pathway.label(), num(c.alpha));
    if let (Some(k_g), Some(k_c)) = (c.k_g, c.k_c) {
        let _ = writeln!(out, "k_g = {}\nk_c = {}", num(k_g), num(k_c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "\
[geometry]
variant = axisymmetric
radius = 10 mm
height = 12mm_bad
";

    const GOOD: &str = "\
# test cavity
[geometry]
variant = axisymmetric
wall = copper
radius = 10 mm
height = 0.012

[region]
label = disc
material = sapphire
r_min = 0
r_max = 4 mm
z_min = 4 mm
z_max = 6 mm   # centred

[mesh]
target_cell = 0.5 mm

[solver]
window_min = 2 GHz
window_max = 4 GHz
n_modes = 2

[ensemble]
rho = 1.2e6 um^-3
gamma_s_over_2pi = 3 MHz
sample_label = disc

[coupling]
pathway = calibrated
alpha = 0.5
";

    fn parse_err(text: &str) -> (usize, String) {
        match parse_spec_str(text) {
            Err(Error::Parse { line, key, .. }) => (line, key),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parses_units_and_defaults() {
        let s = parse_spec_str(GOOD).unwrap();
        assert_eq!(s.geometry.variant.name(), "axisymmetric");
        assert_eq!(s.target_cell, Some(0.5e-3));
        assert_eq!(s.window, Some((2e9, 4e9)));
        assert_eq!(s.n_modes, 2);
        let e = s.ensemble.as_ref().unwrap();
        assert!((e.rho - 1.2e24).abs() < 1e9);
        assert_eq!(e.linewidth, Linewidth::HalfWidthHz(3e6));
        assert_eq!(e.g_factor, NV_G_FACTOR);
        let ens = e.ensemble(Some(&s.geometry)).unwrap();
        let vol = std::f64::consts::PI * 16e-6 * 2e-3;
        assert!((ens.sample_volume - vol).abs() < 1e-18);
        assert_eq!(s.coupling.pathway, Pathway::Calibrated);
        assert_eq!(s.coupling.alpha, 0.5);
    }

    #[test]
    fn round_trip() {
        let s = parse_spec_str(GOOD).unwrap();
        let text = serialize_spec(&s);
        assert_eq!(parse_spec_str(&text).unwrap(), s);
    }

    #[test]
    fn errors_name_key_and_line() {
        assert_eq!(parse_err(SMALL), (4, "[geometry].height".into()));
        let neg = GOOD.replace("radius = 10 mm", "radius = -10 mm");
        assert_eq!(parse_err(&neg), (5, "[geometry].radius".into()));
        let unknown = GOOD.replace("n_modes = 2", "n_modes = 2\ncolour = red");
        assert_eq!(parse_err(&unknown).1, "[solver].colour");
        let unit = GOOD.replace("window_min = 2 GHz", "window_min = 2 mm");
        assert_eq!(parse_err(&unit), (20, "[solver].window_min".into()));
        let mat = GOOD.replace("material = sapphire", "material = unobtainium");
        assert_eq!(parse_err(&mat), (10, "[region].material".into()));
        let missing = GOOD.replace("target_cell = 0.5 mm", "");
        assert_eq!(parse_err(&missing).1, "[mesh].target_cell");
    }

    #[test]
    fn ensemble_is_optional() {
        let start = GOOD.find("[ensemble]").unwrap();
        let end = GOOD.find("[coupling]").unwrap();
        let text = format!("{}{}", &GOOD[..start], &GOOD[end..]);
        let s = parse_spec_str(&text).unwrap();
        assert!(s.ensemble.is_none());
    }

    #[test]
    fn reentrant_needs_no_mesh() {
        let s = parse_spec_str(
            "[geometry]\nvariant = reentrant\nradius = 10 mm\nheight = 5 mm\npost_radius = 2 mm\ngap = 50 um\n",
        )
        .unwrap();
        assert!(s.target_cell.is_none() && s.window.is_none());
        assert_eq!(parse_spec_str(&serialize_spec(&s)).unwrap(), s);
    }
}
