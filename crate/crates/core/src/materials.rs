//! Material library.
//!
//! Properties live in a plain-text data file (`data/materials.dat`) that is
//! compiled into the crate. Other files in the same format can be loaded
//! with [`MaterialLibrary::parse`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

const BUILTIN_DATA: &str = include_str!("../data/materials.dat");

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MaterialKind {
    Dielectric { eps_r: f64, tan_delta: f64 },
    Metal { r_surface: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Material {
    pub name: String,
    pub kind: MaterialKind,
    pub source: String,
}

impl Material {
    pub fn dielectric(name: &str, eps_r: f64, tan_delta: f64) -> Result<Self> {
        if !(eps_r >= 1.0) {
            return Err(Error::domain(format!(
                "material `{name}`: eps_r must be >= 1, got {eps_r}"
            )));
        }
        if !(tan_delta >= 0.0) {
            return Err(Error::domain(format!(
                "material `{name}`: tan_delta must be >= 0, got {tan_delta}"
            )));
        }
        Ok(Material {
            name: name.to_string(),
            kind: MaterialKind::Dielectric { eps_r, tan_delta },
            source: String::new(),
        })
    }

    pub fn metal(name: &str, r_surface: f64) -> Result<Self> {
        if !(r_surface >= 0.0) {
            return Err(Error::domain(format!(
                "material `{name}`: r_surface must be >= 0, got {r_surface}"
            )));
        }
        Ok(Material {
            name: name.to_string(),
            kind: MaterialKind::Metal { r_surface },
            source: String::new(),
        })
    }

    pub fn vacuum() -> Self {
        Material {
            name: "vacuum".into(),
            kind: MaterialKind::Dielectric {
                eps_r: 1.0,
                tan_delta: 0.0,
            },
            source: "definition".into(),
        }
    }

    pub fn is_metal(&self) -> bool {
        matches!(self.kind, MaterialKind::Metal { .. })
    }

    pub fn eps_r(&self) -> Option<f64> {
        match self.kind {
            MaterialKind::Dielectric { eps_r, .. } => Some(eps_r),
            MaterialKind::Metal { .. } => None,
        }
    }

    pub fn tan_delta(&self) -> Option<f64> {
        match self.kind {
            MaterialKind::Dielectric { tan_delta, .. } => Some(tan_delta),
            MaterialKind::Metal { .. } => None,
        }
    }

    pub fn r_surface(&self) -> Option<f64> {
        match self.kind {
            MaterialKind::Metal { r_surface } => Some(r_surface),
            MaterialKind::Dielectric { .. } => None,
        }
    }

    /// Relative permeability; every material here is non-magnetic.
    pub fn mu_r(&self) -> f64 {
        1.0
    }

    fn with_source(mut self, source: &str) -> Self {
        self.source = source.to_string();
        self
    }
}

impl fmt::Display for Material {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dash = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |v| format!("{v:e}"));
        let kind = if self.is_metal() { "metal" } else { "dielectric" };
        write!(
            f,
            "{:<13}{:<11} eps_r={:<8} tan_delta={:<8} mu_r={} r_surface={:<8} [{}]",
            self.name,
            kind,
            dash(self.eps_r()),
            dash(self.tan_delta()),
            self.mu_r(),
            dash(self.r_surface()),
            self.source
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct MaterialLibrary {
    materials: BTreeMap<String, Material>,
}

impl MaterialLibrary {
    /// Parses the material data format: one record per line,
    /// `name kind eps_r tan_delta mu_r r_surface source...`, `-` for unset
    /// fields, `#` comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut materials = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let material = parse_record(content).map_err(|message| Error::MaterialData { line, message })?;
            if materials.contains_key(&material.name) {
                return Err(Error::MaterialData {
                    line,
                    message: format!("duplicate material `{}`", material.name),
                });
            }
            materials.insert(material.name.clone(), material);
        }
        Ok(MaterialLibrary { materials })
    }

    pub fn builtin() -> &'static MaterialLibrary {
        static LIB: OnceLock<MaterialLibrary> = OnceLock::new();
        LIB.get_or_init(|| MaterialLibrary::parse(BUILTIN_DATA).expect("bundled material data is valid"))
    }

    pub fn get(&self, name: &str) -> Result<&Material> {
        self.materials.get(name).ok_or_else(|| Error::UnknownMaterial {
            name: name.to_string(),
            valid: self.names().collect::<Vec<_>>().join(", "),
        })
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.materials.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Material> {
        self.materials.values()
    }
}

/// Looks up one of the bundled 4 K materials.
pub fn builtin_material(name: &str) -> Result<Material> {
    MaterialLibrary::builtin().get(name).cloned()
}

fn parse_record(content: &str) -> std::result::Result<Material, String> {
    let fields: Vec<&str> = content.split_whitespace().collect();
    if fields.len() < 7 {
        return Err(format!("expected 7 fields, found {}", fields.len()));
    }
    let opt = |s: &str, what: &str| -> std::result::Result<Option<f64>, String> {
        if s == "-" {
            Ok(None)
        } else {
            s.parse::<f64>()
                .map(Some)
                .map_err(|_| format!("{what}: `{s}` is not a number"))
        }
    };
    let name = fields[0];
    let eps_r = opt(fields[2], "eps_r")?;
    let tan_delta = opt(fields[3], "tan_delta")?;
    let mu_r = opt(fields[4], "mu_r")?;
    let r_surface = opt(fields[5], "r_surface")?;
    let source = fields[6..].join(" ");
    if mu_r.is_some_and(|m| m != 1.0) {
        return Err(format!("{name}: mu_r must be 1"));
    }
    let material = match (fields[1], eps_r, tan_delta, r_surface) {
        ("dielectric", Some(e), Some(t), None) => Material::dielectric(name, e, t),
        ("metal", None, None, Some(r)) => Material::metal(name, r),
        ("dielectric", ..) => return Err(format!("{name}: dielectric needs eps_r and tan_delta and no r_surface")),
        ("metal", ..) => return Err(format!("{name}: metal needs r_surface only")),
        (kind, ..) => return Err(format!("{name}: unknown kind `{kind}`")),
    };
    material.map(|m| m.with_source(&source)).map_err(|e| e.to_string())
}
