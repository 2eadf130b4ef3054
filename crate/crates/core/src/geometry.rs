//! Declarative cavity geometry.

use crate::error::{Error, Result};
use crate::materials::Material;

/// An axis-aligned annular block in the (r, z) half-plane.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    pub label: String,
    pub material: Material,
    pub r_min: f64,
    pub r_max: f64,
    pub z_min: f64,
    pub z_max: f64,
}

impl Region {
    pub fn new(label: &str, material: Material, r: (f64, f64), z: (f64, f64)) -> Result<Self> {
        let region = Region {
            label: label.to_string(),
            material,
            r_min: r.0,
            r_max: r.1,
            z_min: z.0,
            z_max: z.1,
        };
        region.validate()?;
        Ok(region)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.r_min, self.r_max, self.z_min, self.z_max]
            .iter()
            .all(|v| v.is_finite());
        if !finite || !(self.r_min >= 0.0) || !(self.r_min < self.r_max) || !(self.z_min < self.z_max) {
            return Err(Error::Geometry(format!(
                "region `{}` needs 0 <= r_min < r_max and z_min < z_max (got r {}..{}, z {}..{})",
                self.label, self.r_min, self.r_max, self.z_min, self.z_max
            )));
        }
        if self.material.is_metal() {
            return Err(Error::Geometry(format!(
                "region `{}`: metal regions are not supported inside the cavity",
                self.label
            )));
        }
        Ok(())
    }

    /// Smallest extent of the block, in either direction.
    pub fn thickness(&self) -> f64 {
        (self.r_max - self.r_min).min(self.z_max - self.z_min)
    }

    pub fn volume(&self) -> f64 {
        std::f64::consts::PI * (self.r_max.powi(2) - self.r_min.powi(2)) * (self.z_max - self.z_min)
    }

    fn overlaps(&self, other: &Region) -> bool {
        self.r_min < other.r_max
            && other.r_min < self.r_max
            && self.z_min < other.z_max
            && other.z_min < self.z_max
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GeometryVariant {
    Rectangular {
        a: f64,
        b: f64,
        d: f64,
    },
    Cylindrical {
        radius: f64,
        height: f64,
    },
    Axisymmetric {
        outer_radius: f64,
        height: f64,
        regions: Vec<Region>,
    },
    Reentrant {
        cavity_radius: f64,
        cavity_height: f64,
        post_radius: f64,
        gap: f64,
    },
}

impl GeometryVariant {
    pub fn name(&self) -> &'static str {
        match self {
            GeometryVariant::Rectangular { .. } => "rectangular",
            GeometryVariant::Cylindrical { .. } => "cylindrical",
            GeometryVariant::Axisymmetric { .. } => "axisymmetric",
            GeometryVariant::Reentrant { .. } => "reentrant",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CavityGeometry {
    pub variant: GeometryVariant,
    pub wall_material: Material,
}

impl CavityGeometry {
    pub fn new(variant: GeometryVariant, wall_material: Material) -> Result<Self> {
        let geometry = CavityGeometry {
            variant,
            wall_material,
        };
        geometry.validate()?;
        Ok(geometry)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.wall_material.is_metal() {
            return Err(Error::Geometry(format!(
                "wall material `{}` is not a metal",
                self.wall_material.name
            )));
        }
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::Geometry(format!("{name} must be > 0, got {v}")))
            }
        };
        match &self.variant {
            GeometryVariant::Rectangular { a, b, d } => {
                positive("a", *a)?;
                positive("b", *b)?;
                positive("d", *d)?;
            }
            GeometryVariant::Cylindrical { radius, height } => {
                positive("radius", *radius)?;
                positive("height", *height)?;
            }
            GeometryVariant::Axisymmetric {
                outer_radius,
                height,
                regions,
            } => {
                positive("outer_radius", *outer_radius)?;
                positive("height", *height)?;
                for region in regions {
                    region.validate()?;
                    if region.r_max > *outer_radius || region.z_min < 0.0 || region.z_max > *height {
                        return Err(Error::Geometry(format!(
                            "region `{}` extends outside the enclosing cylinder",
                            region.label
                        )));
                    }
                }
                for (i, a) in regions.iter().enumerate() {
                    for b in &regions[i + 1..] {
                        if a.overlaps(b) {
                            return Err(Error::Geometry(format!(
                                "regions `{}` and `{}` overlap",
                                a.label, b.label
                            )));
                        }
                    }
                }
            }
            GeometryVariant::Reentrant {
                cavity_radius,
                cavity_height,
                post_radius,
                gap,
            } => {
                positive("cavity_radius", *cavity_radius)?;
                positive("cavity_height", *cavity_height)?;
                positive("post_radius", *post_radius)?;
                positive("gap", *gap)?;
                if gap >= cavity_height {
                    return Err(Error::Geometry("gap must be smaller than cavity_height".into()));
                }
                if post_radius >= cavity_radius {
                    return Err(Error::Geometry("post_radius must be smaller than cavity_radius".into()));
                }
            }
        }
        Ok(())
    }

    pub fn regions(&self) -> &[Region] {
        match &self.variant {
            GeometryVariant::Axisymmetric { regions, .. } => regions,
            _ => &[],
        }
    }
}
